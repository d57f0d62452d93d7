//! Cross-validation of the Kazhdan–Lusztig table: an independent
//! construction recursing along right descents (the library recurses along
//! left descents) must reproduce every basis element.

use decat_core::coxeter::{CoxeterGroup, CoxeterMatrix, DEFAULT_CAP};
use decat_core::laurent::Laurent;
use decat_core::soergel::{kl_basis, Hecke, HeckeElt};

fn group(m: Vec<Vec<u32>>) -> CoxeterGroup {
    CoxeterGroup::enumerate(&CoxeterMatrix::new(m).unwrap(), DEFAULT_CAP).unwrap()
}

/// Rebuilds the Kazhdan–Lusztig elements by multiplying `b_{w'} * b_s` for
/// the first right descent `s` and stripping constant terms top-down.
fn right_descent_table(hecke: &Hecke) -> Vec<HeckeElt> {
    let g = hecke.group();
    let mut table: Vec<HeckeElt> = Vec::with_capacity(g.order());
    table.push(hecke.h(g.identity()));
    for w in 1..g.order() {
        let s = *g
            .right_descents(w)
            .first()
            .expect("nonidentity elements have a right descent");
        let shorter = g.right_times_gen(w, s);
        assert!(shorter < w, "w * s is discovered earlier");
        // candidate = b_shorter * (H_s + v).
        let base = &table[shorter];
        let mut candidate = hecke
            .mul_gen_right(base, s)
            .unwrap()
            .add(&base.scale(&Laurent::v()).unwrap())
            .unwrap();
        for x in (0..w).rev() {
            let mu = candidate.coeff(x).constant_term();
            if mu != 0 {
                let correction = table[x].scale(&Laurent::monomial(mu, 0)).unwrap();
                candidate = candidate.sub(&correction).unwrap();
            }
        }
        table.push(candidate);
    }
    table
}

fn assert_tables_agree(m: Vec<Vec<u32>>) {
    let g = group(m);
    let hecke = Hecke::new(&g).unwrap();
    let library = kl_basis(&hecke).unwrap();
    let independent = right_descent_table(&hecke);
    for (w, elt) in independent.iter().enumerate() {
        assert_eq!(
            library.b(w),
            elt,
            "disagreement at w = {}",
            g.word_name(w)
        );
    }
}

#[test]
fn tables_agree_on_rank_two_groups() {
    assert_tables_agree(vec![vec![1, 3], vec![3, 1]]);
    assert_tables_agree(vec![vec![1, 4], vec![4, 1]]);
    assert_tables_agree(vec![vec![1, 6], vec![6, 1]]);
}

#[test]
fn tables_agree_on_the_rank_three_chain() {
    assert_tables_agree(vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]);
}

#[test]
fn rank_three_chain_pins_the_two_term_polynomial() {
    let g = group(vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]);
    let hecke = Hecke::new(&g).unwrap();
    let independent = right_descent_table(&hecke);
    let w = g.element_of_word(&[1, 0, 2, 1]).unwrap();
    let x = g.element_of_word(&[1]).unwrap();
    let expected = Laurent::v().add(&Laurent::monomial(1, 3)).unwrap();
    assert_eq!(independent[w].coeff(x), expected);
    // The two-term coefficients sit exactly at the elements below the
    // singular point: the identity and the pinned generator.
    for (y, p) in independent[w].terms() {
        let expected_terms = if y == x || y == g.identity() { 2 } else { 1 };
        assert_eq!(p.terms().count(), expected_terms, "at y = {}", g.word_name(y));
    }
}
