//! Matrix endomorphisms of finite object families and their decomposition
//! into diagonal, square-defect and nilpotent layers.
//!
//! An [`EndoMatrix`] is a square matrix `Phi` over a fixed object list whose
//! `(r, s)` entry is a [`MorSum`] `objects[s] -> objects[r]`. Composition of
//! two such matrices is written [`endo_compose`]`(phi, psi)` and means "apply
//! `phi` first, then `psi`": entrywise,
//! `endo_compose(phi, psi)[r][t] = SUM_s compose(phi[r][s], psi[s][t])`.
//!
//! The [`multiplicity_matrix`] of `Phi` acts on the basis of pairs
//! `(block r, indecomposable X with source objects[r])` by right composition
//! with the entries of `Phi`; it is multiplicative:
//! `M(endo_compose(phi, psi)) = M(phi) * M(psi)`.
//!
//! For an idempotent `Phi`, [`gamma_theta_pi`] splits `Phi` as
//! `Gamma + Theta + Pi` where `Gamma` is the diagonal of selected local
//! units, `Theta` is the square defect `Gamma^2 - Gamma`, and `Pi` is the
//! remaining nilpotent layer; the accompanying report verifies the algebraic
//! identities this split satisfies.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::nnimat::{NniError, NniMatrix};
use crate::twocat::{MorId, MorSum, ObjectId, Presentation, TwoCatError};

/// Errors from building or combining endomorphism matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoError {
    ShapeMismatch { rows: usize, row: usize, cols: usize },
    EntryTypeMismatch { row: usize, col: usize, detail: String },
    ObjectsMismatch,
    UnknownObject { name: String },
    UnknownMorphism { row: usize, col: usize, id: String },
    Arithmetic(TwoCatError),
    Numeric(NniError),
    InternalDisagreement,
}

impl fmt::Display for EndoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoError::ShapeMismatch { rows, row, cols } => write!(
                f,
                "ShapeMismatch: matrix with {rows} rows has {cols} entries in row {row}"
            ),
            EndoError::EntryTypeMismatch { row, col, detail } => {
                write!(f, "EntryTypeMismatch: entry ({row}, {col}): {detail}")
            }
            EndoError::ObjectsMismatch => {
                f.write_str("ObjectsMismatch: the two matrices index different object lists")
            }
            EndoError::UnknownObject { name } => {
                write!(f, "UnknownObject: object '{name}' is not in the presentation")
            }
            EndoError::UnknownMorphism { row, col, id } => write!(
                f,
                "UnknownMorphism: entry ({row}, {col}) uses '{id}', not in the presentation"
            ),
            EndoError::Arithmetic(e) => write!(f, "Arithmetic: {e}"),
            EndoError::Numeric(e) => write!(f, "Numeric: {e}"),
            EndoError::InternalDisagreement => f.write_str(
                "InternalDisagreement: entrywise and multiplicity-matrix idempotency tests differ",
            ),
        }
    }
}

impl core::error::Error for EndoError {}

impl From<TwoCatError> for EndoError {
    fn from(e: TwoCatError) -> Self {
        EndoError::Arithmetic(e)
    }
}

impl From<NniError> for EndoError {
    fn from(e: NniError) -> Self {
        EndoError::Numeric(e)
    }
}

/// A square matrix of 1-morphism sums over a fixed list of objects.
///
/// Entry `(r, s)` has type `objects[s] -> objects[r]`; the object list may
/// repeat entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    objects: Vec<ObjectId>,
    entries: Vec<Vec<MorSum>>,
}

impl EndoMatrix {
    /// Builds a matrix, checking the shape is square over `objects` and every
    /// entry has type `objects[col] -> objects[row]`.
    pub fn new(objects: Vec<ObjectId>, entries: Vec<Vec<MorSum>>) -> Result<Self, EndoError> {
        let n = objects.len();
        if entries.len() != n {
            return Err(EndoError::ShapeMismatch {
                rows: entries.len(),
                row: 0,
                cols: n,
            });
        }
        for (r, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(EndoError::ShapeMismatch {
                    rows: n,
                    row: r,
                    cols: row.len(),
                });
            }
            for (s, entry) in row.iter().enumerate() {
                if *entry.src() != objects[s] || *entry.tgt() != objects[r] {
                    return Err(EndoError::EntryTypeMismatch {
                        row: r,
                        col: s,
                        detail: format!(
                            "has type {} -> {}, expected {} -> {}",
                            entry.src(),
                            entry.tgt(),
                            objects[s],
                            objects[r]
                        ),
                    });
                }
            }
        }
        Ok(EndoMatrix { objects, entries })
    }

    /// The zero matrix over `objects`.
    pub fn zero(objects: Vec<ObjectId>) -> Self {
        let entries = objects
            .iter()
            .map(|tgt| {
                objects
                    .iter()
                    .map(|src| MorSum::zero(src.clone(), tgt.clone()))
                    .collect()
            })
            .collect();
        EndoMatrix { objects, entries }
    }

    pub fn size(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn entry(&self, row: usize, col: usize) -> &MorSum {
        &self.entries[row][col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MorSum::is_zero)
    }

    /// Checks that every object and every term references the presentation.
    pub fn check_against(&self, pres: &Presentation) -> Result<(), EndoError> {
        for obj in &self.objects {
            if !pres.has_object(obj.as_str()) {
                return Err(EndoError::UnknownObject { name: obj.to_string() });
            }
        }
        for (r, row) in self.entries.iter().enumerate() {
            for (s, entry) in row.iter().enumerate() {
                for (id, _) in entry.terms() {
                    let known = pres.morphism(id.as_str()).is_some_and(|m| {
                        m.src == *entry.src() && m.tgt == *entry.tgt()
                    });
                    if !known {
                        return Err(EndoError::UnknownMorphism {
                            row: r,
                            col: s,
                            id: id.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Entrywise multiset sum; both matrices must share the object list.
    pub fn add(&self, other: &EndoMatrix) -> Result<EndoMatrix, EndoError> {
        if self.objects != other.objects {
            return Err(EndoError::ObjectsMismatch);
        }
        let mut entries = Vec::with_capacity(self.size());
        for (row_a, row_b) in self.entries.iter().zip(&other.entries) {
            let mut row = Vec::with_capacity(self.size());
            for (a, b) in row_a.iter().zip(row_b) {
                row.push(a.add(b)?);
            }
            entries.push(row);
        }
        Ok(EndoMatrix {
            objects: self.objects.clone(),
            entries,
        })
    }

    /// Entrywise multiset difference; `None` on object mismatch or when any
    /// multiplicity would go negative.
    pub fn checked_sub(&self, other: &EndoMatrix) -> Option<EndoMatrix> {
        if self.objects != other.objects {
            return None;
        }
        let mut entries = Vec::with_capacity(self.size());
        for (row_a, row_b) in self.entries.iter().zip(&other.entries) {
            let mut row = Vec::with_capacity(self.size());
            for (a, b) in row_a.iter().zip(row_b) {
                row.push(a.checked_sub(b)?);
            }
            entries.push(row);
        }
        Some(EndoMatrix {
            objects: self.objects.clone(),
            entries,
        })
    }

    /// Whether `endo_compose(self, self) == self`.
    /// Decides idempotency twice — entrywise as multisets, and numerically
    /// through the multiplicity matrix — and insists the answers agree.
    pub fn is_idempotent(&self, pres: &Presentation) -> Result<bool, EndoError> {
        let entrywise = endo_compose(pres, self, self)? == *self;
        let (m, _) = multiplicity_matrix(pres, self)?;
        let numeric = m.multiply(&m)? == m;
        if entrywise != numeric {
            return Err(EndoError::InternalDisagreement);
        }
        Ok(entrywise)
    }
}

impl fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.entries.iter().enumerate() {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (s, entry) in row.iter().enumerate() {
                if s > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{entry}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Matrix composition, "apply `phi` first, then `psi`":
/// `endo_compose(phi, psi)[r][t] = SUM_s compose(phi[r][s], psi[s][t])`.
pub fn endo_compose(
    pres: &Presentation,
    phi: &EndoMatrix,
    psi: &EndoMatrix,
) -> Result<EndoMatrix, EndoError> {
    if phi.objects != psi.objects {
        return Err(EndoError::ObjectsMismatch);
    }
    let n = phi.size();
    let mut out = EndoMatrix::zero(phi.objects.clone());
    for r in 0..n {
        for t in 0..n {
            let mut acc = MorSum::zero(phi.objects[t].clone(), phi.objects[r].clone());
            for s in 0..n {
                let product = pres.compose(phi.entry(r, s), psi.entry(s, t))?;
                acc = acc.add(&product)?;
            }
            out.entries[r][t] = acc;
        }
    }
    Ok(out)
}

/// Entrywise sum of two matrices over the same object list.
pub fn endo_add(phi: &EndoMatrix, psi: &EndoMatrix) -> Result<EndoMatrix, EndoError> {
    phi.add(psi)
}

/// One basis element of the multiplicity matrix: the indecomposable `mor`
/// with source `objects[block]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub block: usize,
    pub mor: MorId,
}

/// The integer matrix of the right-composition action of `phi` on the basis
/// of pairs `(block r, indecomposable X with source objects[r])`.
///
/// Entry at row `(r, X)`, column `(s, G)` is the multiplicity of `G` in
/// `compose(X, phi[r][s])`. Basis elements are ordered by block, then by
/// lexicographic morphism id. The assignment is multiplicative:
/// `M(endo_compose(phi, psi)) = M(phi) * M(psi)`, and `phi` is idempotent
/// exactly when its multiplicity matrix is.
pub fn multiplicity_matrix(
    pres: &Presentation,
    phi: &EndoMatrix,
) -> Result<(NniMatrix, Vec<BasisElement>), EndoError> {
    let mut basis = Vec::new();
    for (block, obj) in phi.objects.iter().enumerate() {
        let mors = pres.indecomposables_from(obj.as_str())?;
        for m in mors {
            basis.push(BasisElement {
                block,
                mor: m.id.clone(),
            });
        }
    }
    let n = basis.len();
    let mut rows = Vec::with_capacity(n);
    for row_elt in &basis {
        let x = pres.singleton(row_elt.mor.as_str())?;
        let mut row = Vec::with_capacity(n);
        for col_elt in &basis {
            let image = pres.compose(&x, phi.entry(row_elt.block, col_elt.block))?;
            row.push(image.multiplicity(col_elt.mor.as_str()));
        }
        rows.push(row);
    }
    let matrix = NniMatrix::from_rows(rows).map_err(|_| EndoError::ShapeMismatch {
        rows: n,
        row: 0,
        cols: n,
    })?;
    Ok((matrix, basis))
}

/// Errors from [`gamma_theta_pi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompError {
    NotIdempotent,
    DiagonalOutOfRange { block: usize, basis: String, value: u64 },
    UniquenessViolated { block: usize, basis: String, found: usize },
    MultiplicityViolated { block: usize, basis: String },
    SubtractionUnderflow { context: &'static str },
    Arithmetic(TwoCatError),
}

impl fmt::Display for DecompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompError::NotIdempotent => {
                f.write_str("NotIdempotent: the matrix does not square to itself")
            }
            DecompError::DiagonalOutOfRange { block, basis, value } => write!(
                f,
                "DiagonalOutOfRange: diagonal multiplicity {value} at block {block}, basis '{basis}'"
            ),
            DecompError::UniquenessViolated { block, basis, found } => write!(
                f,
                "UniquenessViolated: {found} candidate local units at block {block}, basis '{basis}'"
            ),
            DecompError::MultiplicityViolated { block, basis } => write!(
                f,
                "MultiplicityViolated: local unit at block {block}, basis '{basis}' is not simple"
            ),
            DecompError::SubtractionUnderflow { context } => {
                write!(f, "SubtractionUnderflow: while computing {context}")
            }
            DecompError::Arithmetic(e) => write!(f, "Arithmetic: {e}"),
        }
    }
}

impl core::error::Error for DecompError {}

impl From<TwoCatError> for DecompError {
    fn from(e: TwoCatError) -> Self {
        DecompError::Arithmetic(e)
    }
}

impl From<EndoError> for DecompError {
    fn from(e: EndoError) -> Self {
        match e {
            EndoError::Arithmetic(t) => DecompError::Arithmetic(t),
            other => DecompError::Arithmetic(TwoCatError::TypeMismatch {
                detail: other.to_string(),
            }),
        }
    }
}

/// The local unit selected for one fixed basis element of the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalUnit {
    /// Diagonal block index.
    pub block: usize,
    /// The basis indecomposable fixed by the diagonal action.
    pub basis: MorId,
    /// The unique diagonal summand acting as a unit on `basis`.
    pub unit: MorId,
    /// The complement `unit o unit - unit` (zero when `unit` squares to
    /// itself on the nose).
    pub complement: MorSum,
}

/// One verified identity of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Results of verifying the decomposition identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The split of an idempotent matrix into its three layers.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Diagonal matrix of distinct local units.
    pub gamma: EndoMatrix,
    /// Square defect `gamma^2 - gamma`.
    pub theta: EndoMatrix,
    /// Nilpotent remainder `phi - gamma - theta`.
    pub pi: EndoMatrix,
    /// Local unit selected for each fixed diagonal basis element.
    pub locals: Vec<LocalUnit>,
    /// Verification of the identities the layers satisfy.
    pub report: IdentityReport,
}

/// Decomposes an idempotent matrix `phi` as `gamma + theta + pi`.
///
/// For every basis pair `(r, X)` fixed by the diagonal action (multiplicity
/// of `X` in `compose(X, phi[r][r])` equal to one), the unique summand `G` of
/// `phi[r][r]` with `X` appearing in `compose(X, G)` is selected as a local
/// unit; `gamma` collects the distinct selected units on the diagonal,
/// `theta = gamma^2 - gamma`, and `pi` is the rest of `phi`. The report
/// verifies orthogonality of the units, vanishing of the mixed nilpotent
/// products, the splitting of `pi`, and that `gamma + theta + pi o gamma`
/// retracts `phi` onto `gamma + theta`.
pub fn gamma_theta_pi(pres: &Presentation, phi: &EndoMatrix) -> Result<Decomposition, DecompError> {
    if !phi.is_idempotent(pres)? {
        return Err(DecompError::NotIdempotent);
    }
    let n = phi.size();
    let mut gamma = EndoMatrix::zero(phi.objects().to_vec());
    let mut locals = Vec::new();
    let mut selected_per_block: Vec<BTreeSet<MorId>> = Vec::with_capacity(n);

    for r in 0..n {
        let mut selected = BTreeSet::new();
        let obj = &phi.objects()[r];
        let basis = pres.indecomposables_from(obj.as_str())?;
        for x_mor in basis {
            let x = pres.singleton(x_mor.id.as_str())?;
            let image = pres.compose(&x, phi.entry(r, r))?;
            let fixed = image.multiplicity(x_mor.id.as_str());
            if fixed > 1 {
                return Err(DecompError::DiagonalOutOfRange {
                    block: r,
                    basis: x_mor.id.to_string(),
                    value: fixed,
                });
            }
            if fixed == 0 {
                continue;
            }
            let mut hits = Vec::new();
            for (g_id, g_mult) in phi.entry(r, r).terms() {
                let g = pres.singleton(g_id.as_str())?;
                let through_g = pres.compose(&x, &g)?;
                let m = through_g.multiplicity(x_mor.id.as_str());
                if m > 0 {
                    hits.push((g_id.clone(), g_mult, m));
                }
            }
            if hits.len() != 1 {
                return Err(DecompError::UniquenessViolated {
                    block: r,
                    basis: x_mor.id.to_string(),
                    found: hits.len(),
                });
            }
            let (g_id, g_mult, m) = hits.into_iter().next().expect("one hit");
            if g_mult != 1 || m != 1 {
                return Err(DecompError::MultiplicityViolated {
                    block: r,
                    basis: x_mor.id.to_string(),
                });
            }
            let g = pres.singleton(g_id.as_str())?;
            let g_sq = pres.compose(&g, &g)?;
            let complement = g_sq
                .checked_sub(&g)
                .ok_or(DecompError::SubtractionUnderflow {
                    context: "the local unit complement",
                })?;
            locals.push(LocalUnit {
                block: r,
                basis: x_mor.id.clone(),
                unit: g_id.clone(),
                complement,
            });
            selected.insert(g_id);
        }
        let mut diagonal = MorSum::zero(obj.clone(), obj.clone());
        for g_id in &selected {
            diagonal = diagonal.add(&pres.singleton(g_id.as_str())?)?;
        }
        gamma.entries[r][r] = diagonal;
        selected_per_block.push(selected);
    }

    let gamma_sq = endo_compose(pres, &gamma, &gamma)?;
    let theta = gamma_sq
        .checked_sub(&gamma)
        .ok_or(DecompError::SubtractionUnderflow { context: "theta" })?;
    let pi = phi
        .checked_sub(&gamma)
        .and_then(|rest| rest.checked_sub(&theta))
        .ok_or(DecompError::SubtractionUnderflow { context: "pi" })?;

    let report = verify_identities(pres, phi, &gamma, &theta, &pi, &locals, &selected_per_block)?;

    Ok(Decomposition {
        gamma,
        theta,
        pi,
        locals,
        report,
    })
}

/// Builds the identity report. Composition order note: products written
/// below in function-application order ("x after y" means `y` acts first)
/// compile to `endo_compose(y, x)`.
fn verify_identities(
    pres: &Presentation,
    phi: &EndoMatrix,
    gamma: &EndoMatrix,
    theta: &EndoMatrix,
    pi: &EndoMatrix,
    locals: &[LocalUnit],
    selected_per_block: &[BTreeSet<MorId>],
) -> Result<IdentityReport, DecompError> {
    let mut checks = Vec::new();
    let zero = EndoMatrix::zero(phi.objects().to_vec());
    let n = phi.size();

    // Each local unit annihilates its complement on both sides, and the
    // complement is annihilated by the whole matrix row.
    let mut pass = true;
    for local in locals {
        if local.complement.is_zero() {
            continue;
        }
        let g = pres.singleton(local.unit.as_str())?;
        let q = &local.complement;
        if !pres.compose(&g, q)?.is_zero() || !pres.compose(q, &g)?.is_zero() {
            pass = false;
        }
        for s in 0..n {
            if !pres.compose(q, phi.entry(local.block, s))?.is_zero() {
                pass = false;
            }
        }
    }
    checks.push(IdentityCheck {
        name: "local_units_annihilate_complements",
        passed: pass,
    });

    // Distinct local units at the same diagonal block are orthogonal.
    let mut pass = true;
    for selected in selected_per_block {
        let units: Vec<&MorId> = selected.iter().collect();
        for (i, a) in units.iter().enumerate() {
            for b in units.iter().skip(i + 1) {
                let sa = pres.singleton(a.as_str())?;
                let sb = pres.singleton(b.as_str())?;
                if !pres.compose(&sa, &sb)?.is_zero() || !pres.compose(&sb, &sa)?.is_zero() {
                    pass = false;
                }
            }
        }
    }
    checks.push(IdentityCheck {
        name: "distinct_local_units_orthogonal",
        passed: pass,
    });

    // phi after theta vanishes.
    let phi_after_theta = endo_compose(pres, theta, phi)?;
    checks.push(IdentityCheck {
        name: "phi_after_theta_vanishes",
        passed: phi_after_theta == zero,
    });

    let pi_sq = endo_compose(pres, pi, pi)?;
    let gamma_then_pi = endo_compose(pres, gamma, pi)?; // pi after gamma
    let pi_then_gamma = endo_compose(pres, pi, gamma)?; // gamma after pi

    // Mixed products that must vanish: gamma.pi.gamma, theta after pi,
    // (pi^2 then gamma), (gamma then pi^2).
    let gpg = endo_compose(pres, &gamma_then_pi, gamma)?;
    let theta_after_pi = endo_compose(pres, pi, theta)?;
    let pisq_then_gamma = endo_compose(pres, &pi_sq, gamma)?;
    let gamma_then_pisq = endo_compose(pres, gamma, &pi_sq)?;
    checks.push(IdentityCheck {
        name: "nilpotent_mixed_products_vanish",
        passed: gpg == zero
            && theta_after_pi == zero
            && pisq_then_gamma == zero
            && gamma_then_pisq == zero,
    });

    // pi = (gamma after pi) + (pi after gamma) + pi^2.
    let split = pi_then_gamma.add(&gamma_then_pi)?.add(&pi_sq)?;
    checks.push(IdentityCheck {
        name: "pi_splits_into_mixed_and_square_parts",
        passed: split == *pi,
    });

    // pi^3 = 0.
    let pi_cubed = endo_compose(pres, pi, &pi_sq)?;
    checks.push(IdentityCheck {
        name: "pi_cubed_vanishes",
        passed: pi_cubed == zero,
    });

    // pi^2 = pi.gamma.pi (pi first, then gamma, then pi).
    let pgp = endo_compose(pres, &pi_then_gamma, pi)?;
    checks.push(IdentityCheck {
        name: "pi_squared_equals_pi_gamma_pi",
        passed: pgp == pi_sq,
    });

    // gamma + theta is idempotent.
    let gt = gamma.add(theta)?;
    let gt_sq = endo_compose(pres, &gt, &gt)?;
    checks.push(IdentityCheck {
        name: "gamma_plus_theta_idempotent",
        passed: gt_sq == gt,
    });

    // The retract r = gamma + theta + (pi after gamma) is idempotent ...
    let retract = gt.add(&gamma_then_pi)?;
    let retract_sq = endo_compose(pres, &retract, &retract)?;
    checks.push(IdentityCheck {
        name: "retract_idempotent",
        passed: retract_sq == retract,
    });

    // ... absorbs gamma + theta on either side ...
    let r_after_gt = endo_compose(pres, &gt, &retract)?;
    checks.push(IdentityCheck {
        name: "retract_after_gamma_theta_is_retract",
        passed: r_after_gt == retract,
    });
    let gt_after_r = endo_compose(pres, &retract, &gt)?;
    checks.push(IdentityCheck {
        name: "gamma_theta_after_retract_is_gamma_theta",
        passed: gt_after_r == gt,
    });

    // ... and retracts phi: phi after r gives r, r after phi gives phi.
    let phi_after_r = endo_compose(pres, &retract, phi)?;
    checks.push(IdentityCheck {
        name: "phi_after_retract_is_retract",
        passed: phi_after_r == retract,
    });
    let r_after_phi = endo_compose(pres, phi, &retract)?;
    checks.push(IdentityCheck {
        name: "retract_after_phi_is_phi",
        passed: r_after_phi == *phi,
    });

    Ok(IdentityReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::twocat::OneMor;
    use alloc::vec;

    #[test]
    fn missing_identities_can_split_the_two_idempotency_routes() {
        // Without identity 1-morphisms the multiplicity matrix cannot
        // recover the entries, so the entrywise and numeric idempotency
        // tests may disagree; the disagreement must be surfaced.
        let mor = |id: &str| OneMor {
            id: MorId::new(id),
            src: ObjectId::new("i"),
            tgt: ObjectId::new("i"),
            is_identity: false,
        };
        let pres = Presentation::new(
            vec![ObjectId::new("i")],
            vec![mor("A"), mor("B")],
            vec![],
        );
        let phi = EndoMatrix::new(
            vec![ObjectId::new("i")],
            vec![vec![pres.singleton("B").unwrap()]],
        )
        .unwrap();
        assert_eq!(
            phi.is_idempotent(&pres),
            Err(EndoError::InternalDisagreement)
        );
    }

    fn fk_matrix(pres: &Presentation, rows: &[&[&[(&str, u64)]]]) -> EndoMatrix {
        let objects: Vec<ObjectId> = (0..rows.len()).map(|_| ObjectId::new("i")).collect();
        let entries = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| pres.sum("i", "i", terms).unwrap())
                    .collect()
            })
            .collect();
        EndoMatrix::new(objects, entries).unwrap()
    }

    const E: &[(&str, u64)] = &[("F", 1), ("K", 1)];
    const Z: &[(&str, u64)] = &[];

    #[test]
    fn construction_checks_shape_and_types() {
        let p = samples::presentation_fk();
        let ok = fk_matrix(&p, &[&[E, E], &[Z, Z]]);
        assert_eq!(ok.size(), 2);
        let bad_shape = EndoMatrix::new(
            vec![ObjectId::new("i")],
            vec![vec![p.sum("i", "i", E).unwrap(), p.sum("i", "i", E).unwrap()]],
        );
        assert!(matches!(bad_shape, Err(EndoError::ShapeMismatch { .. })));
        let bad_type = EndoMatrix::new(
            vec![ObjectId::new("j")],
            vec![vec![p.sum("i", "i", E).unwrap()]],
        );
        assert!(matches!(bad_type, Err(EndoError::EntryTypeMismatch { .. })));
    }

    #[test]
    fn check_against_flags_foreign_terms() {
        let p = samples::presentation_fk();
        let phi = fk_matrix(&p, &[&[E]]);
        assert!(phi.check_against(&p).is_ok());
        let q = samples::presentation_f_idempotent();
        assert!(matches!(
            phi.check_against(&q),
            Err(EndoError::UnknownMorphism { .. })
        ));
    }

    #[test]
    fn endo_compose_applies_left_argument_first() {
        let p = samples::presentation_fk();
        let f = fk_matrix(&p, &[&[&[("F", 1)]]]);
        let e = fk_matrix(&p, &[&[E]]);
        // F acts first, then E: entrywise compose(F, E) = F o E? No: the
        // entry formula is compose(left_entry, right_entry) = left o right,
        // i.e. right entry applied first at the 1-morphism level.
        let out = endo_compose(&p, &f, &e).unwrap();
        let expected = pres_compose_entry(&p, &f, &e);
        assert_eq!(out.entry(0, 0), &expected);
        // F o F = F + K.
        let ff = endo_compose(&p, &f, &f).unwrap();
        assert_eq!(ff.entry(0, 0), &p.sum("i", "i", E).unwrap());
    }

    fn pres_compose_entry(p: &Presentation, a: &EndoMatrix, b: &EndoMatrix) -> MorSum {
        p.compose(a.entry(0, 0), b.entry(0, 0)).unwrap()
    }

    #[test]
    fn add_and_sub_are_entrywise() {
        let p = samples::presentation_fk();
        let f = fk_matrix(&p, &[&[&[("F", 1)]]]);
        let k = fk_matrix(&p, &[&[&[("K", 1)]]]);
        let e = fk_matrix(&p, &[&[E]]);
        assert_eq!(endo_add(&f, &k).unwrap(), e);
        assert_eq!(e.checked_sub(&f).unwrap(), k);
        assert!(f.checked_sub(&e).is_none());
    }

    #[test]
    fn idempotency_of_small_matrices() {
        let p = samples::presentation_fk();
        assert!(fk_matrix(&p, &[&[E]]).is_idempotent(&p).unwrap());
        assert!(fk_matrix(&p, &[&[E, E], &[Z, Z]]).is_idempotent(&p).unwrap());
        assert!(!fk_matrix(&p, &[&[&[("F", 1)]]]).is_idempotent(&p).unwrap());
        let identity = fk_matrix(&p, &[&[&[("1_i", 1)]]]);
        assert!(identity.is_idempotent(&p).unwrap());
    }

    #[test]
    fn upper_triangular_with_dangling_column_is_not_idempotent() {
        // The off-diagonal entry K is annihilated by E on both sides, so the
        // square loses it.
        let p = samples::presentation_fk();
        let phi = fk_matrix(&p, &[&[E, &[("K", 1)]], &[Z, E]]);
        assert!(!phi.is_idempotent(&p).unwrap());
        assert!(matches!(
            gamma_theta_pi(&p, &phi),
            Err(DecompError::NotIdempotent)
        ));
    }

    #[test]
    fn multiplicity_matrix_of_fk_idempotents() {
        let p = samples::presentation_fk();
        let (m, basis) = multiplicity_matrix(&p, &fk_matrix(&p, &[&[E]])).unwrap();
        let ids: Vec<&str> = basis.iter().map(|b| b.mor.as_str()).collect();
        assert_eq!(ids, vec!["1_i", "F", "K"]);
        assert_eq!(m.to_rows(), vec![vec![0, 1, 1], vec![0, 1, 1], vec![0, 0, 0]]);

        let (mf, _) = multiplicity_matrix(&p, &fk_matrix(&p, &[&[&[("F", 1)]]])).unwrap();
        assert_eq!(mf.to_rows(), vec![vec![0, 1, 0], vec![0, 1, 1], vec![0, 0, 0]]);
    }

    #[test]
    fn multiplicity_matrix_is_multiplicative() {
        let p = samples::presentation_fk();
        let phi = fk_matrix(&p, &[&[&[("F", 1)], &[("K", 2)]], &[&[("1_i", 1)], Z]]);
        let psi = fk_matrix(&p, &[&[&[("K", 1)], Z], &[&[("F", 3)], &[("1_i", 1)]]]);
        let composite = endo_compose(&p, &phi, &psi).unwrap();
        let (m_phi, _) = multiplicity_matrix(&p, &phi).unwrap();
        let (m_psi, _) = multiplicity_matrix(&p, &psi).unwrap();
        let (m_comp, _) = multiplicity_matrix(&p, &composite).unwrap();
        assert_eq!(m_phi.multiply(&m_psi).unwrap(), m_comp);
    }

    #[test]
    fn decomposition_of_the_one_by_one_idempotent() {
        let p = samples::presentation_fk();
        let phi = fk_matrix(&p, &[&[E]]);
        let d = gamma_theta_pi(&p, &phi).unwrap();
        assert_eq!(d.gamma, fk_matrix(&p, &[&[&[("F", 1)]]]));
        assert_eq!(d.theta, fk_matrix(&p, &[&[&[("K", 1)]]]));
        assert!(d.pi.is_zero());
        assert_eq!(d.locals.len(), 1);
        assert_eq!(d.locals[0].basis.as_str(), "F");
        assert_eq!(d.locals[0].unit.as_str(), "F");
        assert_eq!(d.locals[0].complement, p.singleton("K").unwrap());
        assert!(d.report.all_passed(), "failed: {:?}", d.report);
        assert_eq!(d.report.checks.len(), 13);
    }

    #[test]
    fn decomposition_of_the_identity_matrix() {
        let p = samples::presentation_fk();
        let phi = fk_matrix(&p, &[&[&[("1_i", 1)]]]);
        let d = gamma_theta_pi(&p, &phi).unwrap();
        assert_eq!(d.gamma, phi);
        assert!(d.theta.is_zero());
        assert!(d.pi.is_zero());
        // All three basis elements are fixed, all select the identity unit.
        assert_eq!(d.locals.len(), 3);
        assert!(d.locals.iter().all(|l| l.unit.as_str() == "1_i"));
        assert!(d.report.all_passed());
    }

    #[test]
    fn decomposition_with_nilpotent_layer() {
        let p = samples::presentation_fk();
        let phi = fk_matrix(&p, &[&[E, E], &[Z, Z]]);
        let d = gamma_theta_pi(&p, &phi).unwrap();
        assert_eq!(d.gamma, fk_matrix(&p, &[&[&[("F", 1)], Z], &[Z, Z]]));
        assert_eq!(d.theta, fk_matrix(&p, &[&[&[("K", 1)], Z], &[Z, Z]]));
        assert_eq!(d.pi, fk_matrix(&p, &[&[Z, E], &[Z, Z]]));
        assert!(d.report.all_passed(), "failed: {:?}", d.report);
    }

    #[test]
    fn decomposition_on_the_f_idempotent_presentation() {
        let p = samples::presentation_f_idempotent();
        let objects = vec![ObjectId::new("i")];
        let phi = EndoMatrix::new(objects, vec![vec![p.singleton("F").unwrap()]]).unwrap();
        let d = gamma_theta_pi(&p, &phi).unwrap();
        assert_eq!(d.gamma, phi);
        assert!(d.theta.is_zero());
        assert!(d.pi.is_zero());
        assert!(d.locals.iter().all(|l| l.complement.is_zero()));
        assert!(d.report.all_passed());
    }

    #[test]
    fn zero_matrix_decomposes_trivially() {
        let p = samples::presentation_fk();
        let phi = fk_matrix(&p, &[&[Z]]);
        let d = gamma_theta_pi(&p, &phi).unwrap();
        assert!(d.gamma.is_zero() && d.theta.is_zero() && d.pi.is_zero());
        assert!(d.locals.is_empty());
        assert!(d.report.all_passed());
    }
}
