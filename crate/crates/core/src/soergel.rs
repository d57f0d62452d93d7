//! Hecke algebras, Kazhdan–Lusztig bases, and decategorified Soergel
//! presentations.
//!
//! Normalization: the standard basis `H_w` satisfies
//! `H_s H_s = (v^-1 - v) H_s + H_e`, and `b_s = H_s + v H_e`, so
//! `b_s b_s = (v + v^-1) b_s`. The bar involution sends `v` to `v^-1` and
//! `H_s` to `H_s + (v - v^-1) H_e`; the Kazhdan–Lusztig element `b_w` is the
//! unique bar-invariant element `H_w + SUM_{x<w} h_{x,w} H_x` with every
//! `h_{x,w}` in `v Z[v]`. Construction multiplies `b_s b_{w'}` along a left
//! descent and strips constant terms top-down; every produced `b_w` is then
//! re-verified for unit diagonal, positivity, and bar invariance.
//!
//! At `v = 1` the basis spans a based ring presented as a one-object
//! 2-category with 1-morphisms `B[e]`, `B[s1]`, `B[s1.s2]`, ... whose
//! composition table is the specialization of the structure constants.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coxeter::CoxeterGroup;
use crate::laurent::{Laurent, LaurentOverflow};
use crate::projclass::{self, ProjError};
use crate::twocat::{CompEntry, MorId, ObjectId, OneMor, Presentation};

/// Errors from Hecke or Kazhdan–Lusztig computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SoergelError {
    Overflow,
    UnitDiagonalViolated { w: String },
    PositivityViolated { x: String, w: String },
    BarInvarianceViolated { context: String },
    CandidateMalformed { x: String, w: String },
    ConversionResidue { context: String },
    NegativeStructureConstant { x: String, y: String, z: String },
}

impl fmt::Display for SoergelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoergelError::Overflow => {
                f.write_str("Overflow: coefficient exceeds the machine word")
            }
            SoergelError::UnitDiagonalViolated { w } => {
                write!(f, "UnitDiagonalViolated: leading coefficient of b[{w}] is not 1")
            }
            SoergelError::PositivityViolated { x, w } => write!(
                f,
                "PositivityViolated: h[{x}, {w}] is not in v*Z>=0[v]"
            ),
            SoergelError::BarInvarianceViolated { context } => {
                write!(f, "BarInvarianceViolated: {context}")
            }
            SoergelError::CandidateMalformed { x, w } => write!(
                f,
                "CandidateMalformed: candidate coefficient at {x} for b[{w}] has negative exponents"
            ),
            SoergelError::ConversionResidue { context } => {
                write!(f, "ConversionResidue: {context}")
            }
            SoergelError::NegativeStructureConstant { x, y, z } => write!(
                f,
                "NegativeStructureConstant: coefficient of b[{z}] in b[{x}] * b[{y}]"
            ),
        }
    }
}

impl core::error::Error for SoergelError {}

impl From<LaurentOverflow> for SoergelError {
    fn from(_: LaurentOverflow) -> Self {
        SoergelError::Overflow
    }
}

/// An element of the Hecke algebra in the standard basis, keyed by group
/// element index; stored coefficients are nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<usize, Laurent>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        HeckeElt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `H_w` (zero when absent).
    pub fn coeff(&self, w: usize) -> Laurent {
        self.terms.get(&w).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Laurent)> {
        self.terms.iter().map(|(w, p)| (*w, p))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, w: usize, p: &Laurent) -> Result<(), LaurentOverflow> {
        if p.is_zero() {
            return Ok(());
        }
        let current = self.terms.remove(&w).unwrap_or_else(Laurent::zero);
        let next = current.add(p)?;
        if !next.is_zero() {
            self.terms.insert(w, next);
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElt) -> Result<HeckeElt, LaurentOverflow> {
        let mut out = self.clone();
        for (w, p) in other.terms() {
            out.add_term(w, p)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElt) -> Result<HeckeElt, LaurentOverflow> {
        let mut out = self.clone();
        for (w, p) in other.terms() {
            out.add_term(w, &p.neg()?)?;
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a fixed Laurent polynomial.
    pub fn scale(&self, p: &Laurent) -> Result<HeckeElt, LaurentOverflow> {
        let mut out = HeckeElt::zero();
        for (w, q) in self.terms() {
            out.add_term(w, &q.mul(p)?)?;
        }
        Ok(out)
    }
}

/// The Hecke algebra of an enumerated Coxeter group, with a precomputed
/// table of bar images of the standard basis.
pub struct Hecke<'a> {
    group: &'a CoxeterGroup,
    bar_h: Vec<HeckeElt>,
}

impl<'a> Hecke<'a> {
    pub fn new(group: &'a CoxeterGroup) -> Result<Self, SoergelError> {
        let mut hecke = Hecke {
            group,
            bar_h: Vec::new(),
        };
        let mut bar_h = Vec::with_capacity(group.order());
        bar_h.push(hecke.h(group.identity()));
        for w in 1..group.order() {
            let word = group.word(w);
            let (last, prefix) = word.split_last().expect("nonidentity elements have letters");
            let prev = group
                .element_of_word(prefix)
                .expect("letters are in range");
            debug_assert!(prev < w, "prefixes are discovered earlier");
            // bar(H_w) = bar(H_prev) * (H_s + (v - v^-1) H_e).
            let base = &bar_h[prev];
            let shifted = hecke.mul_gen_right(base, *last)?;
            let spread = base.scale(&Laurent::v().sub(&Laurent::v_inv())?)?;
            bar_h.push(shifted.add(&spread)?);
        }
        hecke.bar_h = bar_h;
        Ok(hecke)
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.group
    }

    /// The standard basis element `H_w`.
    pub fn h(&self, w: usize) -> HeckeElt {
        let mut out = HeckeElt::zero();
        out.add_term(w, &Laurent::one()).expect("one term");
        out
    }

    /// `b_s = H_s + v H_e` for a simple generator.
    pub fn b_gen(&self, s: usize) -> Result<HeckeElt, SoergelError> {
        let mut out = self.h(self.group.generator(s));
        out.add_term(self.group.identity(), &Laurent::v())?;
        Ok(out)
    }

    /// Right multiplication by `H_s`:
    /// `H_x H_s = H_xs`, plus `(v^-1 - v) H_x` when the length drops.
    pub fn mul_gen_right(&self, a: &HeckeElt, s: usize) -> Result<HeckeElt, SoergelError> {
        let mut out = HeckeElt::zero();
        let correction = Laurent::v_inv().sub(&Laurent::v())?;
        for (x, p) in a.terms() {
            let xs = self.group.right_times_gen(x, s);
            out.add_term(xs, p)?;
            if self.group.length(xs) < self.group.length(x) {
                out.add_term(x, &p.mul(&correction)?)?;
            }
        }
        Ok(out)
    }

    /// Left multiplication by `H_s`:
    /// `H_s H_x = H_sx`, plus `(v^-1 - v) H_x` when the length drops.
    pub fn mul_gen_left(&self, s: usize, a: &HeckeElt) -> Result<HeckeElt, SoergelError> {
        let mut out = HeckeElt::zero();
        let correction = Laurent::v_inv().sub(&Laurent::v())?;
        for (x, p) in a.terms() {
            let sx = self.group.gen_times_left(s, x);
            out.add_term(sx, p)?;
            if self.group.length(sx) < self.group.length(x) {
                out.add_term(x, &p.mul(&correction)?)?;
            }
        }
        Ok(out)
    }

    /// The product `a * b`, folding the reduced word of each basis term of
    /// `b` into `a` one generator at a time.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt, SoergelError> {
        let mut out = HeckeElt::zero();
        for (w, p) in b.terms() {
            let mut partial = a.clone();
            for &s in self.group.word(w) {
                partial = self.mul_gen_right(&partial, s)?;
            }
            let scaled = partial.scale(p)?;
            out = out.add(&scaled)?;
        }
        Ok(out)
    }

    /// The bar involution, expanded through the precomputed table.
    pub fn bar(&self, a: &HeckeElt) -> Result<HeckeElt, SoergelError> {
        let mut out = HeckeElt::zero();
        for (w, p) in a.terms() {
            let image = self.bar_h[w].scale(&p.bar())?;
            out = out.add(&image)?;
        }
        Ok(out)
    }
}

/// The Kazhdan–Lusztig basis of a finite Hecke algebra, fully verified at
/// construction time.
pub struct KlBasis {
    kl: Vec<HeckeElt>,
}

impl KlBasis {
    /// The basis element `b_w` in the standard basis.
    pub fn b(&self, w: usize) -> &HeckeElt {
        &self.kl[w]
    }

    /// The polynomial `h_{x,w}` (coefficient of `H_x` in `b_w`).
    pub fn h_poly(&self, x: usize, w: usize) -> Laurent {
        self.kl[w].coeff(x)
    }

    pub fn len(&self) -> usize {
        self.kl.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kl.is_empty()
    }
}

/// Computes every `b_w` by induction along first left descents, stripping
/// constant terms top-down, then re-verifies unit diagonal, positivity
/// (`h_{x,w}` in `v Z>=0[v]` for `x != w`), and bar invariance of each
/// element.
pub fn kl_basis(hecke: &Hecke) -> Result<KlBasis, SoergelError> {
    let group = hecke.group();
    let mut kl: Vec<HeckeElt> = Vec::with_capacity(group.order());
    kl.push(hecke.h(group.identity()));

    for w in 1..group.order() {
        let s = *group
            .left_descents(w)
            .first()
            .expect("nonidentity elements have a descent");
        let shorter = group.gen_times_left(s, w);
        debug_assert!(shorter < w, "s * w is discovered earlier");
        // Candidate b_s * b_shorter = (H_s + v) * b_shorter.
        let base = &kl[shorter];
        let mut candidate = hecke
            .mul_gen_left(s, base)?
            .add(&base.scale(&Laurent::v())?)?;
        // Strip constant terms in decreasing index (hence never-increasing
        // length) order; subtracting mu * b_x only touches strictly shorter
        // elements.
        for x in (0..w).rev() {
            let coeff = candidate.coeff(x);
            if coeff.is_zero() {
                continue;
            }
            if !coeff.all_exps_nonneg() {
                return Err(SoergelError::CandidateMalformed {
                    x: group.word_name(x),
                    w: group.word_name(w),
                });
            }
            let mu = coeff.constant_term();
            if mu != 0 {
                let correction = kl[x].scale(&Laurent::monomial(mu, 0))?;
                candidate = candidate.sub(&correction)?;
            }
        }
        kl.push(candidate);
    }

    // Verification pass over the finished table.
    for (w, b) in kl.iter().enumerate() {
        if b.coeff(w) != Laurent::one() {
            return Err(SoergelError::UnitDiagonalViolated {
                w: group.word_name(w),
            });
        }
        for (x, p) in b.terms() {
            if x == w {
                continue;
            }
            if !p.all_exps_positive() || !p.all_coeffs_nonneg() {
                return Err(SoergelError::PositivityViolated {
                    x: group.word_name(x),
                    w: group.word_name(w),
                });
            }
        }
        let barred = hecke.bar(b)?;
        if barred != *b {
            return Err(SoergelError::BarInvarianceViolated {
                context: alloc::format!("b[{}] is not fixed by the bar involution", group.word_name(w)),
            });
        }
    }

    Ok(KlBasis { kl })
}

/// Rewrites a Hecke element in the Kazhdan–Lusztig basis by peeling the
/// longest surviving standard term, then re-expands the result and checks it
/// reproduces the input.
pub fn to_kl_combination(
    hecke: &Hecke,
    kl: &KlBasis,
    elt: &HeckeElt,
) -> Result<BTreeMap<usize, Laurent>, SoergelError> {
    let group = hecke.group();
    let mut residue = elt.clone();
    let mut out: BTreeMap<usize, Laurent> = BTreeMap::new();
    while !residue.is_zero() {
        let (&w, _) = residue
            .terms
            .iter()
            .max_by_key(|(w, _)| (group.length(**w), **w))
            .expect("residue is nonzero");
        let c = residue.coeff(w);
        let peeled = kl.b(w).scale(&c)?;
        residue = residue.sub(&peeled)?;
        if out.insert(w, c).is_some() {
            return Err(SoergelError::ConversionResidue {
                context: alloc::format!(
                    "element {} was peeled twice",
                    group.word_name(w)
                ),
            });
        }
    }
    // Reconstruction check: the combination must re-expand to the input.
    let mut rebuilt = HeckeElt::zero();
    for (w, c) in &out {
        rebuilt = rebuilt.add(&kl.b(*w).scale(c)?)?;
    }
    if rebuilt != *elt {
        return Err(SoergelError::ConversionResidue {
            context: String::from("re-expansion does not reproduce the input"),
        });
    }
    Ok(out)
}

/// The structure constants of `b_x * b_y` in the Kazhdan–Lusztig basis,
/// verified bar-invariant and nonnegative.
pub fn structure_constants(
    hecke: &Hecke,
    kl: &KlBasis,
    x: usize,
    y: usize,
) -> Result<BTreeMap<usize, Laurent>, SoergelError> {
    let group = hecke.group();
    let product = hecke.mul(kl.b(x), kl.b(y))?;
    let comb = to_kl_combination(hecke, kl, &product)?;
    for (z, c) in &comb {
        if !c.is_bar_invariant() {
            return Err(SoergelError::BarInvarianceViolated {
                context: alloc::format!(
                    "coefficient of b[{}] in b[{}] * b[{}]",
                    group.word_name(*z),
                    group.word_name(x),
                    group.word_name(y)
                ),
            });
        }
        if !c.all_coeffs_nonneg() {
            return Err(SoergelError::NegativeStructureConstant {
                x: group.word_name(x),
                y: group.word_name(y),
                z: group.word_name(*z),
            });
        }
    }
    Ok(comb)
}

/// The 1-morphism id `B[...]` of a group element.
pub fn morphism_name(group: &CoxeterGroup, w: usize) -> String {
    alloc::format!("B[{}]", group.word_name(w))
}

/// Builds the one-object presentation whose indecomposable 1-morphisms are
/// the `B[w]` and whose composition table is the `v = 1` specialization of
/// the Kazhdan–Lusztig structure constants.
pub fn soergel_presentation(hecke: &Hecke, kl: &KlBasis) -> Result<Presentation, SoergelError> {
    let group = hecke.group();
    let star = ObjectId::new("*");
    let objects = alloc::vec![star.clone()];
    let mut onemors = Vec::with_capacity(group.order());
    for w in 0..group.order() {
        onemors.push(OneMor {
            id: MorId::new(morphism_name(group, w)),
            src: star.clone(),
            tgt: star.clone(),
            is_identity: w == group.identity(),
        });
    }
    let mut comp = Vec::new();
    for x in 0..group.order() {
        for y in 0..group.order() {
            let constants = structure_constants(hecke, kl, x, y)?;
            let mut result: BTreeMap<MorId, u64> = BTreeMap::new();
            for (z, c) in &constants {
                let at_one = c.eval_at_one().map_err(|_| SoergelError::Overflow)?;
                let mult = u64::try_from(at_one).map_err(|_| SoergelError::NegativeStructureConstant {
                    x: group.word_name(x),
                    y: group.word_name(y),
                    z: group.word_name(*z),
                })?;
                if mult > 0 {
                    result.insert(MorId::new(morphism_name(group, *z)), mult);
                }
            }
            comp.push(CompEntry {
                left: MorId::new(morphism_name(group, x)),
                right: MorId::new(morphism_name(group, y)),
                result,
            });
        }
    }
    Ok(Presentation::new(objects, onemors, comp))
}

/// Outcome of scanning a Soergel presentation for idempotent structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoergelIdempotentReport {
    /// Generators passing the projective classification.
    pub projective_generators: Vec<MorId>,
    /// Indecomposables that are weakly idempotent as singletons.
    pub weak_idempotent_singletons: Vec<MorId>,
    /// Whether both lists consist exactly of the identity 1-morphisms.
    pub identity_only: bool,
}

/// Classifies projective generators and scans singleton indecomposables for
/// weak idempotency; for Soergel presentations both should find only the
/// identity.
pub fn verify_soergel_idempotents(
    pres: &Presentation,
) -> Result<SoergelIdempotentReport, ProjError> {
    let descriptors = projclass::classify_projectives(pres)?;
    let projective_generators: Vec<MorId> =
        descriptors.into_iter().map(|d| d.generator).collect();
    let mut weak_idempotent_singletons = Vec::new();
    for mor in pres.unique_morphisms() {
        if mor.src != mor.tgt {
            continue;
        }
        let single = pres.singleton(mor.id.as_str())?;
        if pres.is_weakly_idempotent(&single)? {
            weak_idempotent_singletons.push(mor.id.clone());
        }
    }
    let identities: Vec<MorId> = pres
        .unique_morphisms()
        .filter(|m| m.is_identity)
        .map(|m| m.id.clone())
        .collect();
    let identity_only =
        projective_generators == identities && weak_idempotent_singletons == identities;
    Ok(SoergelIdempotentReport {
        projective_generators,
        weak_idempotent_singletons,
        identity_only,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterGroup, CoxeterMatrix, DEFAULT_CAP};
    use alloc::vec;

    fn group(m: Vec<Vec<u32>>) -> CoxeterGroup {
        CoxeterGroup::enumerate(&CoxeterMatrix::new(m).unwrap(), DEFAULT_CAP).unwrap()
    }

    fn a2() -> CoxeterGroup {
        group(vec![vec![1, 3], vec![3, 1]])
    }

    #[test]
    fn quadratic_relation_holds() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let s = g.generator(0);
        let hs = h.h(s);
        let sq = h.mul(&hs, &hs).unwrap();
        // H_s^2 = (v^-1 - v) H_s + H_e.
        assert_eq!(sq.coeff(g.identity()), Laurent::one());
        assert_eq!(
            sq.coeff(s),
            Laurent::v_inv().sub(&Laurent::v()).unwrap()
        );
        assert_eq!(sq.support_len(), 2);
    }

    #[test]
    fn braid_relation_holds() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let hs = h.h(g.generator(0));
        let ht = h.h(g.generator(1));
        let sts = h.mul(&h.mul(&hs, &ht).unwrap(), &hs).unwrap();
        let tst = h.mul(&h.mul(&ht, &hs).unwrap(), &ht).unwrap();
        assert_eq!(sts, tst);
        let w0 = g.longest_element();
        assert_eq!(sts, h.h(w0));
    }

    #[test]
    fn bar_involution_basics() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let e = h.h(g.identity());
        assert_eq!(h.bar(&e).unwrap(), e);
        let s = g.generator(0);
        let bar_hs = h.bar(&h.h(s)).unwrap();
        // bar(H_s) = H_s + (v - v^-1) H_e.
        assert_eq!(bar_hs.coeff(s), Laurent::one());
        assert_eq!(
            bar_hs.coeff(g.identity()),
            Laurent::v().sub(&Laurent::v_inv()).unwrap()
        );
        // bar is an involution on every standard basis element.
        for w in g.by_length() {
            let hw = h.h(w);
            assert_eq!(h.bar(&h.bar(&hw).unwrap()).unwrap(), hw);
        }
        // b_s is bar-invariant.
        let bs = h.b_gen(0).unwrap();
        assert_eq!(h.bar(&bs).unwrap(), bs);
    }

    #[test]
    fn kl_basis_of_a2_matches_the_hand_table() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let kl = kl_basis(&h).unwrap();
        let e = g.identity();
        let s = g.element_of_word(&[0]).unwrap();
        let t = g.element_of_word(&[1]).unwrap();
        let st = g.element_of_word(&[0, 1]).unwrap();
        let ts = g.element_of_word(&[1, 0]).unwrap();
        let w0 = g.longest_element();

        assert_eq!(kl.b(e), &h.h(e));
        assert_eq!(kl.b(s), &h.b_gen(0).unwrap());

        let b_st = kl.b(st);
        assert_eq!(b_st.coeff(st), Laurent::one());
        assert_eq!(b_st.coeff(s), Laurent::v());
        assert_eq!(b_st.coeff(t), Laurent::v());
        assert_eq!(b_st.coeff(e), Laurent::monomial(1, 2));
        assert_eq!(b_st.support_len(), 4);

        let b_w0 = kl.b(w0);
        assert_eq!(b_w0.coeff(w0), Laurent::one());
        assert_eq!(b_w0.coeff(st), Laurent::v());
        assert_eq!(b_w0.coeff(ts), Laurent::v());
        assert_eq!(b_w0.coeff(s), Laurent::monomial(1, 2));
        assert_eq!(b_w0.coeff(t), Laurent::monomial(1, 2));
        assert_eq!(b_w0.coeff(e), Laurent::monomial(1, 3));
        assert_eq!(b_w0.support_len(), 6);
    }

    #[test]
    fn dihedral_kl_elements_are_length_monomials() {
        // In any dihedral group, h_{x,w} = v^(l(w) - l(x)) for x <= w.
        for m in [3u32, 4, 6] {
            let g = group(vec![vec![1, m], vec![m, 1]]);
            let h = Hecke::new(&g).unwrap();
            let kl = kl_basis(&h).unwrap();
            for w in g.by_length() {
                let mut expected = HeckeElt::zero();
                for x in g.by_length() {
                    if g.bruhat_leq(x, w) {
                        let exp = i64::from(g.length(w)) - i64::from(g.length(x));
                        expected
                            .add_term(x, &Laurent::monomial(1, exp))
                            .unwrap();
                    }
                }
                assert_eq!(kl.b(w), &expected, "m = {m}, w = {}", g.word_name(w));
            }
        }
    }

    #[test]
    fn a3_has_the_first_two_term_polynomial() {
        let g = group(vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]);
        let h = Hecke::new(&g).unwrap();
        let kl = kl_basis(&h).unwrap();
        let w = g.element_of_word(&[1, 0, 2, 1]).unwrap();
        let x = g.element_of_word(&[1]).unwrap();
        let expected = Laurent::v().add(&Laurent::monomial(1, 3)).unwrap();
        assert_eq!(kl.h_poly(x, w), expected);
        let e = g.identity();
        let expected_e = Laurent::monomial(1, 2).add(&Laurent::monomial(1, 4)).unwrap();
        assert_eq!(kl.h_poly(e, w), expected_e);
    }

    #[test]
    fn structure_constants_in_a2() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let kl = kl_basis(&h).unwrap();
        let s = g.element_of_word(&[0]).unwrap();
        let t = g.element_of_word(&[1]).unwrap();
        let ts = g.element_of_word(&[1, 0]).unwrap();
        let w0 = g.longest_element();

        // b_s b_s = (v + v^-1) b_s.
        let c_ss = structure_constants(&h, &kl, s, s).unwrap();
        let round = Laurent::v().add(&Laurent::v_inv()).unwrap();
        assert_eq!(c_ss, BTreeMap::from([(s, round.clone())]));

        // b_s b_t = b_st.
        let st = g.element_of_word(&[0, 1]).unwrap();
        let c_st = structure_constants(&h, &kl, s, t).unwrap();
        assert_eq!(c_st, BTreeMap::from([(st, Laurent::one())]));

        // b_s b_ts = b_sts + b_s.
        let c = structure_constants(&h, &kl, s, ts).unwrap();
        assert_eq!(
            c,
            BTreeMap::from([(w0, Laurent::one()), (s, Laurent::one())])
        );

        // b_w0 b_w0 = (v^3 + 2v + 2v^-1 + v^-3) b_w0.
        let c00 = structure_constants(&h, &kl, w0, w0).unwrap();
        let mut big = Laurent::monomial(1, 3);
        for (c, e) in [(2, 1), (2, -1), (1, -3)] {
            big = big.add(&Laurent::monomial(c, e)).unwrap();
        }
        assert_eq!(c00, BTreeMap::from([(w0, big)]));
    }

    #[test]
    fn conversion_reconstructs_arbitrary_elements() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let kl = kl_basis(&h).unwrap();
        // A haphazard element with mixed coefficients.
        let mut elt = HeckeElt::zero();
        elt.add_term(g.longest_element(), &Laurent::monomial(2, -1)).unwrap();
        elt.add_term(g.element_of_word(&[0]).unwrap(), &Laurent::monomial(-3, 2)).unwrap();
        elt.add_term(g.identity(), &Laurent::one()).unwrap();
        let comb = to_kl_combination(&h, &kl, &elt).unwrap();
        let mut rebuilt = HeckeElt::zero();
        for (w, c) in &comb {
            rebuilt = rebuilt.add(&kl.b(*w).scale(c).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, elt);
    }

    #[test]
    fn soergel_presentation_of_a2() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let kl = kl_basis(&h).unwrap();
        let pres = soergel_presentation(&h, &kl).unwrap();
        let report = pres.validate();
        assert!(report.is_valid(), "violations: {:?}", report.violations);
        let ids: Vec<&str> = pres.unique_morphisms().map(|m| m.id.as_str()).collect();
        assert_eq!(
            ids,
            vec!["B[e]", "B[s1.s2.s1]", "B[s1.s2]", "B[s1]", "B[s2.s1]", "B[s2]"]
        );
        assert!(pres.morphism("B[e]").unwrap().is_identity);

        let bs = pres.singleton("B[s1]").unwrap();
        let sq = pres.compose(&bs, &bs).unwrap();
        assert_eq!(sq, pres.sum("*", "*", &[("B[s1]", 2)]).unwrap());

        let bt = pres.singleton("B[s2]").unwrap();
        let st = pres.compose(&bs, &bt).unwrap();
        assert_eq!(st, pres.singleton("B[s1.s2]").unwrap());
    }

    #[test]
    fn soergel_idempotent_scan_finds_identity_only() {
        let g = a2();
        let h = Hecke::new(&g).unwrap();
        let kl = kl_basis(&h).unwrap();
        let pres = soergel_presentation(&h, &kl).unwrap();
        let report = verify_soergel_idempotents(&pres).unwrap();
        assert!(report.identity_only);
        assert_eq!(report.projective_generators, vec![MorId::new("B[e]")]);
        assert_eq!(
            report.weak_idempotent_singletons,
            vec![MorId::new("B[e]")]
        );
    }
}
