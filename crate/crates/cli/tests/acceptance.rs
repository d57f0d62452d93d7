//! Acceptance suite: one test per release criterion, each printing a single
//! PASS line (visible with `--nocapture`) and enforcing its time budget.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use decat::drivers;
use decat_core::coxeter::{CoxeterGroup, CoxeterMatrix, DEFAULT_CAP};
use decat_core::nnimat::FlorBlockForm;
use decat_core::projclass::{classify_projectives, object_preorder};
use decat_core::projfun::{morita_equivalent, Quiver};
use decat_core::soergel::{
    kl_basis, soergel_presentation, structure_constants, verify_soergel_idempotents, Hecke,
};
use decat_core::{samples, NniMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{name} took {elapsed:?}, over the {budget:?} budget"
    );
    println!("{name}: PASS in {elapsed:?}");
}

#[test]
fn criterion_1_flor_exhaustive_enumeration() {
    let started = Instant::now();
    let mut idempotents = 0usize;
    for code in 0..19683u32 {
        let mut digits = code;
        let rows: Vec<Vec<u64>> = (0..3)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        let d = u64::from(digits % 3);
                        digits /= 3;
                        d
                    })
                    .collect()
            })
            .collect();
        let m = NniMatrix::from_rows(rows).expect("3x3 grid");
        if m.multiply(&m).expect("no overflow at entries <= 2") != m {
            continue;
        }
        idempotents += 1;
        let form = m.flor_normal_form().expect("every idempotent has a block form");
        form.verify(&m).expect("block equations hold");
        let oracle = m.flor_oracle().expect("exhaustive search succeeds");
        assert_eq!(
            (form.a(), form.b(), form.c()),
            (oracle.a(), oracle.b(), oracle.c()),
            "block sizes disagree with the exhaustive oracle"
        );
    }
    assert!(idempotents > 2, "enumeration found too few idempotents");
    finish(
        "criterion 1 (flor exhaustive enumeration)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_2_flor_round_trip() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf10f_0002);
    for _ in 0..1000 {
        let (a, b, c) = loop {
            let a = rng.gen_range(0..=3usize);
            let b = rng.gen_range(0..=3usize);
            let c = rng.gen_range(0..=3usize);
            if a + b + c > 0 {
                break (a, b, c);
            }
        };
        let block_a =
            NniMatrix::from_fn(a, b, |_, _| rng.gen_range(0..=3u64));
        let block_b =
            NniMatrix::from_fn(b, c, |_, _| rng.gen_range(0..=3u64));
        let mut perm: Vec<usize> = (0..a + b + c).collect();
        perm.shuffle(&mut rng);
        let planted =
            FlorBlockForm::from_blocks(perm, block_a, block_b, c).expect("compatible blocks");
        let matrix = planted.scatter().expect("assembly stays in range");
        let recovered = matrix
            .flor_normal_form()
            .expect("planted instances are idempotent");
        recovered
            .verify(&matrix)
            .expect("recovered form satisfies the block equations");
    }
    finish(
        "criterion 2 (flor round trip)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_3_multiplicity_functoriality() {
    let started = Instant::now();
    let pres = samples::presentation_fk();
    let line = drivers::functoriality_driver(&pres, "i", 0x5eed_0003, 500)
        .expect("all 500 random pairs are multiplicative");
    assert!(line.contains("500"));
    finish(
        "criterion 3 (multiplicity functoriality)",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_4_idempotent_identities() {
    let started = Instant::now();
    let fk = samples::presentation_fk();
    let fk_feeders: &[&[(&str, u64)]] = &[
        &[("F", 1)],
        &[("K", 1)],
        &[("F", 2)],
        &[("F", 1), ("K", 1)],
    ];
    drivers::idempotent_driver(
        &fk,
        "i",
        &[("F", 1), ("K", 1)],
        fk_feeders,
        0x5eed_0004,
        2000,
        20,
    )
    .expect("every idempotent over the two-generator table passes all checks");
    let plain = samples::presentation_f_idempotent();
    let plain_feeders: &[&[(&str, u64)]] = &[&[("F", 1)], &[("F", 2)]];
    drivers::idempotent_driver(
        &plain,
        "i",
        &[("F", 1)],
        plain_feeders,
        0x5eed_0014,
        2000,
        20,
    )
    .expect("every idempotent over the idempotent-generator table passes all checks");
    finish(
        "criterion 4 (idempotent identities)",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_5_projective_classification() {
    let started = Instant::now();
    let fk = samples::presentation_fk();
    let descriptors = classify_projectives(&fk).expect("classification succeeds");
    let summary: Vec<(String, String, String, String)> = descriptors
        .iter()
        .map(|d| {
            (
                d.object.as_str().to_owned(),
                d.generator.as_str().to_owned(),
                d.complement.to_string(),
                d.envelope.to_string(),
            )
        })
        .collect();
    assert_eq!(
        summary,
        vec![
            ("i".into(), "1_i".into(), "0".into(), "1_i".into()),
            ("i".into(), "F".into(), "K".into(), "F + K".into()),
        ],
        "two-generator table must classify exactly the identity and F"
    );

    let plain = samples::presentation_f_idempotent();
    let descriptors = classify_projectives(&plain).expect("classification succeeds");
    let summary: Vec<(String, String, String, String)> = descriptors
        .iter()
        .map(|d| {
            (
                d.object.as_str().to_owned(),
                d.generator.as_str().to_owned(),
                d.complement.to_string(),
                d.envelope.to_string(),
            )
        })
        .collect();
    assert_eq!(
        summary,
        vec![
            ("i".into(), "1_i".into(), "0".into(), "1_i".into()),
            ("i".into(), "F".into(), "0".into(), "F".into()),
        ],
        "idempotent-generator table must classify the identity and F with no complement"
    );
    finish(
        "criterion 5 (projective classification)",
        started,
        Duration::from_secs(10),
    );
}

/// An independent Morita decision: breadth-first search over the legal
/// point moves (add or remove a one-dimensional component while a
/// one-dimensional bimodule slot remains), with the point count capped.
mod morita_oracle {
    use decat_core::projfun::Quiver;

    const POINT_CAP: usize = 4;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for rest in permutations(n - 1) {
            for slot in 0..=rest.len() {
                let mut next = rest.clone();
                next.insert(slot, n - 1);
                out.push(next);
            }
        }
        out
    }

    fn canonical_component(dims: &decat_core::NniMatrix, comp: &[usize]) -> Vec<u64> {
        permutations(comp.len())
            .into_iter()
            .map(|p| {
                let mut flat = Vec::with_capacity(comp.len() * comp.len());
                for &i in &p {
                    for &j in &p {
                        flat.push(dims.get(comp[i], comp[j]));
                    }
                }
                flat
            })
            .min()
            .expect("at least the empty permutation")
    }

    #[derive(Clone, Debug, PartialEq, Eq)]
    struct State {
        core: Vec<(usize, Vec<u64>)>,
        points: usize,
    }

    fn state_of(quiver: &Quiver) -> State {
        let dims = quiver.path_dimensions().expect("finite dimensional");
        let mut core = Vec::new();
        let mut points = 0usize;
        for comp in quiver.components() {
            if comp.len() == 1 && dims.get(comp[0], comp[0]) == 1 {
                points += 1;
            } else {
                core.push((comp.len(), canonical_component(&dims, &comp)));
            }
        }
        core.sort();
        State { core, points }
    }

    fn has_dim_one_slot(core: &[(usize, Vec<u64>)], points: usize) -> bool {
        points > 0 || core.iter().any(|(_, m)| m.contains(&1))
    }

    /// Point counts reachable by legal moves; the cores never change.
    fn reachable_counts(state: &State) -> Vec<bool> {
        let mut seen = vec![false; POINT_CAP + 1];
        let mut queue = vec![state.points];
        seen[state.points] = true;
        while let Some(n) = queue.pop() {
            if n < POINT_CAP && has_dim_one_slot(&state.core, n) && !seen[n + 1] {
                seen[n + 1] = true;
                queue.push(n + 1);
            }
            if n >= 1 && has_dim_one_slot(&state.core, n - 1) && !seen[n - 1] {
                seen[n - 1] = true;
                queue.push(n - 1);
            }
        }
        seen
    }

    pub fn equivalent(a: &Quiver, b: &Quiver) -> bool {
        let sa = state_of(a);
        let sb = state_of(b);
        if sa.core != sb.core {
            return false;
        }
        reachable_counts(&sa)[sb.points]
    }
}

#[test]
fn criterion_6_morita_verdicts_and_bfs_oracle() {
    let started = Instant::now();
    let fixtures: Vec<(&str, Quiver)> = vec![
        ("point", samples::quiver_point()),
        ("two_points", samples::quiver_two_points()),
        ("dual_numbers", samples::quiver_dual_numbers()),
        (
            "dual_numbers_plus_point",
            samples::quiver_dual_numbers_plus_point(),
        ),
        ("single_arrow", samples::quiver_single_arrow()),
        (
            "single_arrow_plus_point",
            samples::quiver_single_arrow_plus_point(),
        ),
    ];
    let by_name = |name: &str| &fixtures.iter().find(|(n, _)| *n == name).unwrap().1;

    assert!(morita_equivalent(by_name("point"), by_name("two_points")).unwrap());
    assert!(!morita_equivalent(
        by_name("dual_numbers"),
        by_name("dual_numbers_plus_point")
    )
    .unwrap());
    assert!(morita_equivalent(
        by_name("single_arrow"),
        by_name("single_arrow_plus_point")
    )
    .unwrap());

    let n = fixtures.len();
    let mut verdicts = vec![vec![false; n]; n];
    for (i, (_, a)) in fixtures.iter().enumerate() {
        for (j, (_, b)) in fixtures.iter().enumerate() {
            let verdict = morita_equivalent(a, b).unwrap();
            let oracle = morita_oracle::equivalent(a, b);
            assert_eq!(
                verdict, oracle,
                "normal form and move search disagree on ({}, {})",
                fixtures[i].0, fixtures[j].0
            );
            verdicts[i][j] = verdict;
        }
        assert!(verdicts[i][i], "reflexivity fails on {}", fixtures[i].0);
    }
    for i in 0..n {
        for j in 0..n {
            assert_eq!(verdicts[i][j], verdicts[j][i], "symmetry fails");
            for k in 0..n {
                if verdicts[i][j] && verdicts[j][k] {
                    assert!(verdicts[i][k], "transitivity fails");
                }
            }
        }
    }
    finish(
        "criterion 6 (morita verdicts and move-search oracle)",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_7_preorder_and_essential_objects() {
    let started = Instant::now();

    let two = samples::quiver_two_points().presentation().expect("builds");
    let preorder = object_preorder(&two).expect("preorder computes");
    assert_eq!(preorder.objects().len(), 2);
    assert!(preorder.leq(0, 1) && preorder.leq(1, 0), "points must be mutual retracts");
    assert!(preorder.is_transitive());
    assert_eq!(
        preorder.essential_objects().len(),
        1,
        "mutually retractable points keep exactly one essential object"
    );

    let mixed = samples::quiver_single_arrow_plus_point()
        .presentation()
        .expect("builds");
    let preorder = object_preorder(&mixed).expect("preorder computes");
    let names: Vec<&str> = preorder.objects().iter().map(|o| o.as_str()).collect();
    let point = names.iter().position(|n| *n == "c").expect("point object");
    let arrow = names.iter().position(|n| *n == "v1").expect("arrow object");
    assert!(
        preorder.leq(point, arrow) && !preorder.leq(arrow, point),
        "the one-dimensional component must sit strictly below"
    );
    let essential = preorder.essential_objects();
    assert!(essential.iter().all(|o| o.as_str() != "c"));
    assert_eq!(essential.len(), 1);
    finish(
        "criterion 7 (retract preorder and essential objects)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_8_soergel_suite() {
    let suite_start = Instant::now();
    let types: Vec<(&str, Vec<Vec<u32>>, usize)> = vec![
        ("A1", vec![vec![1]], 2),
        ("A2", vec![vec![1, 3], vec![3, 1]], 6),
        ("B2", vec![vec![1, 4], vec![4, 1]], 8),
        ("G2", vec![vec![1, 6], vec![6, 1]], 12),
        (
            "A3",
            vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]],
            24,
        ),
    ];
    for (name, m, order) in types {
        let type_start = Instant::now();
        let matrix = CoxeterMatrix::new(m).expect("valid Coxeter matrix");
        let group = CoxeterGroup::enumerate(&matrix, DEFAULT_CAP).expect("finite group");
        assert_eq!(group.order(), order, "group order for {name}");
        let hecke = Hecke::new(&group).expect("bar table builds");
        let kl = kl_basis(&hecke).expect("basis builds with verified invariants");
        for w in 0..group.order() {
            let b = kl.b(w);
            assert_eq!(
                &hecke.bar(b).expect("bar computes"),
                b,
                "b[{}] must be bar-invariant in {name}",
                group.word_name(w)
            );
        }
        for x in 0..group.order() {
            for y in 0..group.order() {
                let constants = structure_constants(&hecke, &kl, x, y).expect("expansion");
                for (z, coeff) in &constants {
                    assert!(
                        coeff.all_coeffs_nonneg(),
                        "negative coefficient at ({x}, {y}) -> {z} in {name}"
                    );
                    for (e, c) in coeff.terms() {
                        assert!(
                            c == 0 || coeff.coeff(-e) != 0,
                            "support of c at ({x}, {y}) -> {z} in {name} is not symmetric"
                        );
                    }
                }
            }
        }
        let pres = soergel_presentation(&hecke, &kl).expect("presentation builds");
        assert!(
            pres.validate().is_valid(),
            "{name} presentation must satisfy the category axioms"
        );
        let report = verify_soergel_idempotents(&pres).expect("scan succeeds");
        assert!(
            report.identity_only,
            "{name} must have only identity weak idempotents"
        );
        if name == "A3" {
            assert!(
                type_start.elapsed() < Duration::from_secs(60),
                "A3 pipeline over budget"
            );
        }
    }
    finish(
        "criterion 8 (soergel verification suite)",
        suite_start,
        Duration::from_secs(300),
    );
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .canonicalize()
        .expect("fixtures directory exists")
}

/// Runs the whole fixture battery once, returning a transcript of every
/// command's stdout, stderr and exit code.
fn fixture_battery_transcript() -> String {
    let dir = fixtures_dir();
    let path = |name: &str| dir.join(name).to_str().unwrap().to_owned();
    let fk = path("presentation_fk.json");
    let plain = path("presentation_f_idempotent.json");
    let endo = path("endo_upper_triangular.json");
    let flor = path("flor_3x3.json");
    let q_point = path("quiver_point.json");
    let q_two = path("quiver_two_points.json");
    let q_dual = path("quiver_dual_numbers.json");
    let q_dual_plus = path("quiver_dual_numbers_plus_point.json");
    let q_arrow = path("quiver_single_arrow.json");
    let q_arrow_plus = path("quiver_single_arrow_plus_point.json");
    let c_a1 = path("coxeter_a1.json");
    let c_a2 = path("coxeter_a2.json");
    let c_b2 = path("coxeter_b2.json");
    let c_g2 = path("coxeter_g2.json");

    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", &fk],
        vec!["validate", &plain],
        vec!["--format", "json", "validate", &fk],
        vec!["flor", &flor],
        vec!["--format", "json", "flor", &flor],
        vec!["decompose", &fk, &endo],
        vec!["--format", "json", "decompose", &fk, &endo],
        vec!["projectives", &fk],
        vec!["--format", "json", "projectives", &fk],
        vec!["projectives", &plain],
        vec!["essential", &fk],
        vec!["projfun", "build", &q_point],
        vec!["projfun", "build", &q_two],
        vec!["projfun", "build", &q_dual],
        vec!["projfun", "build", &q_dual_plus],
        vec!["projfun", "build", &q_arrow],
        vec!["projfun", "build", &q_arrow_plus],
        vec!["--format", "json", "projfun", "build", &q_point],
        vec!["projfun", "morita", &q_point, &q_two],
        vec!["projfun", "morita", &q_dual, &q_dual_plus],
        vec!["projfun", "morita", &q_arrow, &q_arrow_plus],
        vec!["projfun", "morita", &q_point, &q_dual],
        vec!["--format", "json", "projfun", "morita", &q_arrow, &q_arrow_plus],
        vec!["soergel", "check", &c_a1],
        vec!["soergel", "check", &c_a2],
        vec!["--format", "json", "soergel", "check", &c_a2],
        vec!["soergel", "check", &c_b2],
        vec!["soergel", "check", &c_g2],
        vec!["soergel", "kl", &c_a2],
        vec!["--format", "json", "soergel", "kl", &c_b2],
        vec!["soergel", "kl", &c_g2],
        vec!["soergel", "build", &c_a2],
        vec!["selfcheck"],
        vec!["--format", "json", "selfcheck"],
        vec!["selfcheck", "--seed", "7"],
    ];
    let mut transcript = String::new();
    for args in &commands {
        let output = Command::new(env!("CARGO_BIN_EXE_decat"))
            .args(args)
            .output()
            .expect("binary runs");
        assert_eq!(
            output.status.code(),
            Some(0),
            "fixture command {args:?} failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        transcript.push_str(&format!("$ decat {}\n", args.join(" ")));
        transcript.push_str(&String::from_utf8_lossy(&output.stdout));
        transcript.push_str(&String::from_utf8_lossy(&output.stderr));
        transcript.push_str("[exit 0]\n");
    }
    transcript
}

#[test]
fn criterion_9_cli_determinism() {
    let started = Instant::now();
    let first = fixture_battery_transcript();
    let second = fixture_battery_transcript();
    assert!(
        first == second,
        "fixture battery output changed between invocations"
    );
    assert!(!first.is_empty());
    finish(
        "criterion 9 (CLI determinism)",
        started,
        Duration::from_secs(300),
    );
}
