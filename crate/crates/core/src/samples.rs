//! Ready-made small examples used across the crate's tests and by the
//! command-line companion when generating fixture inputs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::projfun::Quiver;
use crate::twocat::{CompEntry, MorId, ObjectId, OneMor, Presentation};

/// Raw parts of [`presentation_fk`], for tests that perturb the data.
pub fn presentation_fk_parts() -> (Vec<ObjectId>, Vec<OneMor>, Vec<CompEntry>) {
    let objects = vec![ObjectId::new("i")];
    let onemors = vec![
        OneMor {
            id: MorId::new("1_i"),
            src: ObjectId::new("i"),
            tgt: ObjectId::new("i"),
            is_identity: true,
        },
        OneMor {
            id: MorId::new("F"),
            src: ObjectId::new("i"),
            tgt: ObjectId::new("i"),
            is_identity: false,
        },
        OneMor {
            id: MorId::new("K"),
            src: ObjectId::new("i"),
            tgt: ObjectId::new("i"),
            is_identity: false,
        },
    ];
    let comp = vec![CompEntry {
        left: MorId::new("F"),
        right: MorId::new("F"),
        result: BTreeMap::from([(MorId::new("F"), 1), (MorId::new("K"), 1)]),
    }];
    (objects, onemors, comp)
}

/// One object, indecomposables `1_i, F, K` with `F o F = F + K` and all other
/// non-identity composites zero. `F + K` is the unique non-identity weak
/// idempotent of small total multiplicity.
pub fn presentation_fk() -> Presentation {
    let (objects, onemors, comp) = presentation_fk_parts();
    Presentation::new(objects, onemors, comp)
}

/// Two objects with `j` a retract of `i`: indecomposables `1_i, 1_j`,
/// `U: i -> j`, `V: j -> i` and `W: i -> i` subject to
/// `U o V = 1_j`, `V o U = W`, `U o W = U`, `W o V = V`, `W o W = W`.
pub fn presentation_retract() -> Presentation {
    let objects = vec![ObjectId::new("i"), ObjectId::new("j")];
    let mor = |id: &str, src: &str, tgt: &str, is_identity: bool| OneMor {
        id: MorId::new(id),
        src: ObjectId::new(src),
        tgt: ObjectId::new(tgt),
        is_identity,
    };
    let onemors = vec![
        mor("1_i", "i", "i", true),
        mor("1_j", "j", "j", true),
        mor("U", "i", "j", false),
        mor("V", "j", "i", false),
        mor("W", "i", "i", false),
    ];
    let entry = |left: &str, right: &str, result: &[(&str, u64)]| CompEntry {
        left: MorId::new(left),
        right: MorId::new(right),
        result: result
            .iter()
            .map(|(id, m)| (MorId::new(*id), *m))
            .collect(),
    };
    let comp = vec![
        entry("U", "V", &[("1_j", 1)]),
        entry("V", "U", &[("W", 1)]),
        entry("U", "W", &[("U", 1)]),
        entry("W", "V", &[("V", 1)]),
        entry("W", "W", &[("W", 1)]),
    ];
    Presentation::new(objects, onemors, comp)
}

/// One object, indecomposables `1_i, F` with `F o F = F`: the minimal
/// presentation in which a non-identity indecomposable is itself weakly
/// idempotent.
pub fn presentation_f_idempotent() -> Presentation {
    let objects = vec![ObjectId::new("i")];
    let onemors = vec![
        OneMor {
            id: MorId::new("1_i"),
            src: ObjectId::new("i"),
            tgt: ObjectId::new("i"),
            is_identity: true,
        },
        OneMor {
            id: MorId::new("F"),
            src: ObjectId::new("i"),
            tgt: ObjectId::new("i"),
            is_identity: false,
        },
    ];
    let comp = vec![CompEntry {
        left: MorId::new("F"),
        right: MorId::new("F"),
        result: BTreeMap::from([(MorId::new("F"), 1)]),
    }];
    Presentation::new(objects, onemors, comp)
}

/// A single vertex with no arrows: the semisimple point.
pub fn quiver_point() -> Quiver {
    Quiver::new(&["c"], &[], &[]).expect("well-formed sample")
}

/// Two disconnected points.
pub fn quiver_two_points() -> Quiver {
    Quiver::new(&["c1", "c2"], &[], &[]).expect("well-formed sample")
}

/// One vertex with a loop `x` subject to `x.x = 0`: the dual numbers.
pub fn quiver_dual_numbers() -> Quiver {
    Quiver::new(&["v"], &[("x", "v", "v")], &[&["x", "x"]]).expect("well-formed sample")
}

/// Two vertices joined by one arrow: the smallest non-semisimple directed
/// component.
pub fn quiver_single_arrow() -> Quiver {
    Quiver::new(&["v1", "v2"], &[("a", "v1", "v2")], &[]).expect("well-formed sample")
}

/// The single-arrow quiver with an extra disconnected point.
pub fn quiver_single_arrow_plus_point() -> Quiver {
    Quiver::new(&["v1", "v2", "c"], &[("a", "v1", "v2")], &[]).expect("well-formed sample")
}

/// The dual numbers with an extra disconnected point.
pub fn quiver_dual_numbers_plus_point() -> Quiver {
    Quiver::new(&["v", "c"], &[("x", "v", "v")], &[&["x", "x"]]).expect("well-formed sample")
}
