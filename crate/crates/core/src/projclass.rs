//! Classification of projective-like generators and the retract preorder on
//! objects.
//!
//! An endo-indecomposable `G` is a *projective descriptor* when `G` occurs
//! exactly once in `G o G`, the complement `Q = G o G - G` is annihilated by
//! `G` on both sides and squares to zero, and the envelope `E = G o G` is
//! weakly idempotent. Identities qualify trivially; the interesting output is
//! every non-identity generator that does.
//!
//! Object `a` is a *retract* of object `b` when some pair of indecomposables
//! `U: b -> a`, `V: a -> b` satisfies `compose(U, V) == {1_a: 1}` exactly.
//! The relation is reflexive and transitive (composing witness pairs along a
//! chain again yields the bare identity, and by N-linearity one contributing
//! indecomposable pair must hit it exactly), so it is a preorder; its
//! mutual-retract classes and their maximal elements single out the
//! *essential objects*.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::endodecomp::{EndoError, EndoMatrix};
use crate::twocat::{MorId, MorSum, ObjectId, Presentation, TwoCatError};

/// Errors from classification queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjError {
    NotEndo { detail: String },
    Arithmetic(TwoCatError),
    Endo(EndoError),
    InvariantViolated { detail: String },
}

impl fmt::Display for ProjError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjError::NotEndo { detail } => write!(f, "NotEndo: {detail}"),
            ProjError::Arithmetic(e) => write!(f, "Arithmetic: {e}"),
            ProjError::Endo(e) => write!(f, "Endo: {e}"),
            ProjError::InvariantViolated { detail } => {
                write!(f, "InvariantViolated: {detail}")
            }
        }
    }
}

impl core::error::Error for ProjError {}

impl From<TwoCatError> for ProjError {
    fn from(e: TwoCatError) -> Self {
        ProjError::Arithmetic(e)
    }
}

impl From<EndoError> for ProjError {
    fn from(e: EndoError) -> Self {
        ProjError::Endo(e)
    }
}

/// One generator passing the projective classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveDescriptor {
    /// The object the generator lives at.
    pub object: ObjectId,
    /// The generator `G` itself.
    pub generator: MorId,
    /// `G o G - G`; zero exactly when `G` squares to itself.
    pub complement: MorSum,
    /// The weakly idempotent envelope `G o G`.
    pub envelope: MorSum,
}

/// Scans every endo-indecomposable and returns those qualifying as
/// projective descriptors, sorted by object then generator id.
pub fn classify_projectives(pres: &Presentation) -> Result<Vec<ProjectiveDescriptor>, ProjError> {
    let mut out = Vec::new();
    for mor in pres.unique_morphisms() {
        if mor.src != mor.tgt {
            continue;
        }
        let g = pres.singleton(mor.id.as_str())?;
        let g_sq = pres.compose(&g, &g)?;
        if g_sq.multiplicity(mor.id.as_str()) != 1 {
            continue;
        }
        let complement = g_sq
            .checked_sub(&g)
            .expect("multiplicity one implies the difference exists");
        let annihilated = pres.compose(&g, &complement)?.is_zero()
            && pres.compose(&complement, &g)?.is_zero()
            && pres.compose(&complement, &complement)?.is_zero();
        if !annihilated {
            continue;
        }
        if !pres.is_weakly_idempotent(&g_sq)? {
            continue;
        }
        out.push(ProjectiveDescriptor {
            object: mor.src.clone(),
            generator: mor.id.clone(),
            complement,
            envelope: g_sq,
        });
    }
    out.sort_by(|a, b| (&a.object, &a.generator).cmp(&(&b.object, &b.generator)));
    Ok(out)
}

/// The 1x1 endomorphism matrix `[E]` of a descriptor's envelope, on the
/// summand list `[object]`, re-verified to be idempotent.
pub fn retract_idempotent(
    pres: &Presentation,
    descriptor: &ProjectiveDescriptor,
) -> Result<EndoMatrix, ProjError> {
    let matrix = EndoMatrix::new(
        alloc::vec![descriptor.object.clone()],
        alloc::vec![alloc::vec![descriptor.envelope.clone()]],
    )?;
    if !matrix.is_idempotent(pres)? {
        return Err(ProjError::InvariantViolated {
            detail: format!(
                "envelope of {} at {} is not idempotent",
                descriptor.generator, descriptor.object
            ),
        });
    }
    Ok(matrix)
}

/// The decategorified local endomorphism data of a descriptor: every
/// sandwich `E o F o E` over the endo-indecomposables `F` at the object,
/// and all pairwise products of the sandwiches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEndoTable {
    pub object: ObjectId,
    /// `(F, E o F o E)` per indecomposable, in lexicographic order.
    pub sandwiches: Vec<(MorId, MorSum)>,
    /// `((F, F2), sandwich(F) o sandwich(F2))` in lexicographic pair order.
    pub products: Vec<((MorId, MorId), MorSum)>,
}

/// Tabulates the sandwiches `E o F o E` and their pairwise products; with
/// the identity descriptor this reproduces the full endo composition table.
pub fn local_endo_products(
    pres: &Presentation,
    descriptor: &ProjectiveDescriptor,
) -> Result<LocalEndoTable, ProjError> {
    let object = descriptor.object.as_str();
    let envelope = &descriptor.envelope;
    let mut sandwiches = Vec::new();
    for mor in pres.indecomposables_between(object, object)? {
        let single = pres.singleton(mor.id.as_str())?;
        let wrapped = pres.compose(envelope, &pres.compose(&single, envelope)?)?;
        sandwiches.push((mor.id.clone(), wrapped));
    }
    let mut products = Vec::new();
    for (left_id, left) in &sandwiches {
        for (right_id, right) in &sandwiches {
            products.push((
                (left_id.clone(), right_id.clone()),
                pres.compose(left, right)?,
            ));
        }
    }
    Ok(LocalEndoTable {
        object: descriptor.object.clone(),
        sandwiches,
        products,
    })
}

/// The retract preorder on the objects of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    objects: Vec<ObjectId>,
    /// `leq[a][b]` holds when `objects[a]` is a retract of `objects[b]`.
    leq: Vec<Vec<bool>>,
    /// First witness pair `(U: b -> a, V: a -> b)` in lexicographic order.
    witnesses: Vec<Vec<Option<(MorId, MorId)>>>,
}

impl Preorder {
    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    /// Whether `objects[a]` is a retract of `objects[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn witness(&self, a: usize, b: usize) -> Option<&(MorId, MorId)> {
        self.witnesses[a][b].as_ref()
    }

    /// Diagnostic: the relation is transitive by construction of the
    /// category; this re-checks it on the computed matrix.
    pub fn is_transitive(&self) -> bool {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.leq[a][b] && self.leq[b][c] && !self.leq[a][c] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Mutual-retract classes as sorted index lists, ordered by smallest
    /// member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut assigned = alloc::vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if assigned[a] {
                continue;
            }
            let members: Vec<usize> = (0..n)
                .filter(|&b| self.leq[a][b] && self.leq[b][a])
                .collect();
            for &b in &members {
                assigned[b] = true;
            }
            classes.push(members);
        }
        classes
    }

    /// Lexicographically least object name of each maximal class, sorted.
    ///
    /// A class is maximal when none of its members is a retract of an object
    /// outside the class.
    pub fn essential_objects(&self) -> Vec<ObjectId> {
        let classes = self.classes();
        let mut out = Vec::new();
        for class in &classes {
            let maximal = class.iter().all(|&a| {
                (0..self.objects.len())
                    .all(|b| !self.leq[a][b] || self.leq[b][a])
            });
            if maximal {
                let name = class
                    .iter()
                    .map(|&a| &self.objects[a])
                    .min()
                    .expect("classes are nonempty");
                out.push(name.clone());
            }
        }
        out.sort();
        out
    }
}

/// Computes the retract preorder by exhausting indecomposable witness pairs.
///
/// For objects `a` and `b`, every pair `(U: b -> a, V: a -> b)` of
/// indecomposables is tried; `a` is a retract of `b` when some pair composes
/// to exactly `{1_a: 1}`. N-linearity makes this search complete: if any
/// pair of sums composes to the bare identity, the unique contributing pair
/// of indecomposables does too.
pub fn object_preorder(pres: &Presentation) -> Result<Preorder, ProjError> {
    let objects: Vec<ObjectId> = pres.objects().to_vec();
    let n = objects.len();
    let mut leq = alloc::vec![alloc::vec![false; n]; n];
    let mut witnesses = alloc::vec![alloc::vec![None; n]; n];
    for a in 0..n {
        let Some(identity) = pres.identity_of(objects[a].as_str()) else {
            continue;
        };
        let target = pres.singleton(identity.id.as_str())?;
        for b in 0..n {
            let from_b = pres.indecomposables_between(objects[b].as_str(), objects[a].as_str())?;
            let to_b = pres.indecomposables_between(objects[a].as_str(), objects[b].as_str())?;
            'search: for u in &from_b {
                for v in &to_b {
                    let us = pres.singleton(u.id.as_str())?;
                    let vs = pres.singleton(v.id.as_str())?;
                    if pres.compose(&us, &vs)? == target {
                        leq[a][b] = true;
                        witnesses[a][b] = Some((u.id.clone(), v.id.clone()));
                        break 'search;
                    }
                }
            }
        }
    }
    Ok(Preorder {
        objects,
        leq,
        witnesses,
    })
}

/// Searches for a pair of indecomposables linking two weak idempotents:
/// `U: a -> b`, `V: b -> a` with `compose(V, U) == e_a` and
/// `compose(U, V) == e_b`. Returns the first witness pair in lexicographic
/// order, or `None`.
pub fn linked_idempotents(
    pres: &Presentation,
    e_a: &MorSum,
    e_b: &MorSum,
) -> Result<Option<(MorId, MorId)>, ProjError> {
    for (name, e) in [("first", e_a), ("second", e_b)] {
        if e.src() != e.tgt() {
            return Err(ProjError::NotEndo {
                detail: format!(
                    "the {name} idempotent has type {} -> {}",
                    e.src(),
                    e.tgt()
                ),
            });
        }
    }
    let a = e_a.src().as_str();
    let b = e_b.src().as_str();
    let forward = pres.indecomposables_between(a, b)?;
    let backward = pres.indecomposables_between(b, a)?;
    for u in &forward {
        for v in &backward {
            let us = pres.singleton(u.id.as_str())?;
            let vs = pres.singleton(v.id.as_str())?;
            if pres.compose(&vs, &us)? == *e_a && pres.compose(&us, &vs)? == *e_b {
                return Ok(Some((u.id.clone(), v.id.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::samples;
    use alloc::vec;

    #[test]
    fn retract_idempotent_splits_into_generator_and_complement() {
        let p = samples::presentation_fk();
        let descriptors = classify_projectives(&p).unwrap();
        let f_descriptor = descriptors
            .iter()
            .find(|d| d.generator.as_str() == "F")
            .expect("F qualifies");
        let matrix = retract_idempotent(&p, f_descriptor).unwrap();
        assert_eq!(matrix.size(), 1);
        assert_eq!(matrix.entry(0, 0), &p.sum("i", "i", &[("F", 1), ("K", 1)]).unwrap());
        // The decomposition of the retract idempotent is generator plus
        // complement with no nilpotent part.
        let decomposition = crate::endodecomp::gamma_theta_pi(&p, &matrix).unwrap();
        assert_eq!(
            decomposition.gamma.entry(0, 0),
            &p.sum("i", "i", &[("F", 1)]).unwrap()
        );
        assert_eq!(
            decomposition.theta.entry(0, 0),
            &p.sum("i", "i", &[("K", 1)]).unwrap()
        );
        assert!(decomposition.pi.is_zero());
        assert!(decomposition.report.all_passed());

        let identity_descriptor = descriptors
            .iter()
            .find(|d| d.generator.as_str() == "1_i")
            .expect("identity qualifies");
        let matrix = retract_idempotent(&p, identity_descriptor).unwrap();
        assert_eq!(matrix.entry(0, 0), &p.sum("i", "i", &[("1_i", 1)]).unwrap());
    }

    #[test]
    fn local_endo_products_of_the_fk_envelope() {
        let p = samples::presentation_fk();
        let descriptors = classify_projectives(&p).unwrap();
        let f_descriptor = descriptors
            .iter()
            .find(|d| d.generator.as_str() == "F")
            .unwrap();
        let table = local_endo_products(&p, f_descriptor).unwrap();
        let e = p.sum("i", "i", &[("F", 1), ("K", 1)]).unwrap();
        let zero = p.zero_sum("i", "i").unwrap();
        assert_eq!(
            table.sandwiches,
            vec![
                (MorId::new("1_i"), e.clone()),
                (MorId::new("F"), e.clone()),
                (MorId::new("K"), zero.clone()),
            ]
        );
        // E o E = E and anything against the zero sandwich vanishes.
        assert_eq!(table.products.len(), 9);
        for ((left, right), product) in &table.products {
            if left.as_str() == "K" || right.as_str() == "K" {
                assert_eq!(product, &zero);
            } else {
                assert_eq!(product, &e);
            }
        }
    }

    #[test]
    fn envelope_without_complement_is_the_generator_itself() {
        let p = samples::presentation_f_idempotent();
        let descriptors = classify_projectives(&p).unwrap();
        let f_descriptor = descriptors
            .iter()
            .find(|d| d.generator.as_str() == "F")
            .unwrap();
        let matrix = retract_idempotent(&p, f_descriptor).unwrap();
        assert_eq!(matrix.entry(0, 0), &p.sum("i", "i", &[("F", 1)]).unwrap());
        let table = local_endo_products(&p, f_descriptor).unwrap();
        let f = p.sum("i", "i", &[("F", 1)]).unwrap();
        assert_eq!(
            table.sandwiches,
            vec![(MorId::new("1_i"), f.clone()), (MorId::new("F"), f.clone())]
        );
        for ((_, _), product) in &table.products {
            assert_eq!(product, &f);
        }
    }

    #[test]
    fn identity_sandwich_reproduces_the_composition_table() {
        let p = samples::presentation_fk();
        let descriptors = classify_projectives(&p).unwrap();
        let identity_descriptor = descriptors
            .iter()
            .find(|d| d.generator.as_str() == "1_i")
            .unwrap();
        let table = local_endo_products(&p, identity_descriptor).unwrap();
        for (id, sandwich) in &table.sandwiches {
            assert_eq!(sandwich, &p.singleton(id.as_str()).unwrap());
        }
        for ((left, right), product) in &table.products {
            let expected = p
                .compose(
                    &p.singleton(left.as_str()).unwrap(),
                    &p.singleton(right.as_str()).unwrap(),
                )
                .unwrap();
            assert_eq!(product, &expected);
        }
    }

    #[test]
    fn fk_descriptors_are_identity_and_f() {
        let p = samples::presentation_fk();
        let found = classify_projectives(&p).unwrap();
        let ids: Vec<&str> = found.iter().map(|d| d.generator.as_str()).collect();
        assert_eq!(ids, vec!["1_i", "F"]);
        let f = &found[1];
        assert_eq!(f.complement, p.singleton("K").unwrap());
        assert_eq!(f.envelope, p.sum("i", "i", &[("F", 1), ("K", 1)]).unwrap());
        let identity = &found[0];
        assert!(identity.complement.is_zero());
    }

    #[test]
    fn f_idempotent_descriptors() {
        let p = samples::presentation_f_idempotent();
        let found = classify_projectives(&p).unwrap();
        let ids: Vec<&str> = found.iter().map(|d| d.generator.as_str()).collect();
        assert_eq!(ids, vec!["1_i", "F"]);
        assert!(found[1].complement.is_zero());
        assert_eq!(found[1].envelope, p.singleton("F").unwrap());
    }

    #[test]
    fn retract_sample_is_valid_and_classifies() {
        let p = samples::presentation_retract();
        let report = p.validate();
        assert!(report.is_valid(), "violations: {:?}", report.violations);
        let found = classify_projectives(&p).unwrap();
        let ids: Vec<(&str, &str)> = found
            .iter()
            .map(|d| (d.object.as_str(), d.generator.as_str()))
            .collect();
        assert_eq!(ids, vec![("i", "1_i"), ("i", "W"), ("j", "1_j")]);
    }

    #[test]
    fn preorder_of_the_retract_sample() {
        let p = samples::presentation_retract();
        let pre = object_preorder(&p).unwrap();
        // Index 0 = i, index 1 = j.
        assert!(pre.leq(0, 0) && pre.leq(1, 1));
        assert!(pre.leq(1, 0), "j is a retract of i");
        assert!(!pre.leq(0, 1), "i is not a retract of j");
        let (u, v) = pre.witness(1, 0).unwrap();
        assert_eq!((u.as_str(), v.as_str()), ("U", "V"));
        assert!(pre.is_transitive());
        assert_eq!(pre.classes(), vec![vec![0], vec![1]]);
        assert_eq!(pre.essential_objects(), vec![ObjectId::new("i")]);
    }

    #[test]
    fn one_object_preorders_are_trivial() {
        for p in [samples::presentation_fk(), samples::presentation_f_idempotent()] {
            let pre = object_preorder(&p).unwrap();
            assert!(pre.leq(0, 0));
            assert!(pre.is_transitive());
            assert_eq!(pre.classes(), vec![vec![0]]);
            assert_eq!(pre.essential_objects(), vec![ObjectId::new("i")]);
        }
    }

    #[test]
    fn linked_idempotents_across_the_retract() {
        let p = samples::presentation_retract();
        let e_i = p.sum("i", "i", &[("W", 1)]).unwrap();
        let e_j = p.singleton("1_j").unwrap();
        let link = linked_idempotents(&p, &e_i, &e_j).unwrap();
        assert_eq!(
            link.map(|(u, v)| (u.as_str().to_string(), v.as_str().to_string())),
            Some(("U".to_string(), "V".to_string()))
        );
        // The identities of i and j are not linked: V o U = W, never 1_i.
        let one_i = p.singleton("1_i").unwrap();
        assert_eq!(linked_idempotents(&p, &one_i, &e_j).unwrap(), None);
    }

    #[test]
    fn linked_idempotents_rejects_non_endo_inputs() {
        let p = samples::presentation_retract();
        let u = p.singleton("U").unwrap();
        let e_j = p.singleton("1_j").unwrap();
        assert!(matches!(
            linked_idempotents(&p, &u, &e_j),
            Err(ProjError::NotEndo { .. })
        ));
    }
}
