//! Seeded random-search drivers behind the `selfcheck` subcommand.
//!
//! Runs are reproducible: the same seed yields the same matrices, the same
//! verdicts and the same report text.

use anyhow::{bail, Result};
use decat_core::endodecomp::{
    endo_compose, gamma_theta_pi, multiplicity_matrix, EndoMatrix,
};
use decat_core::{ObjectId, Presentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Draws a random endomatrix over the single object `obj` with `size`
/// summands; each entry holds at most `max_terms` indecomposable terms.
pub fn random_endomatrix(
    rng: &mut ChaCha8Rng,
    pres: &Presentation,
    obj: &str,
    size: usize,
    max_terms: u64,
) -> EndoMatrix {
    let mors: Vec<String> = pres
        .indecomposables_between(obj, obj)
        .expect("object exists")
        .iter()
        .map(|m| m.id.as_str().to_owned())
        .collect();
    let entries: Vec<Vec<_>> = (0..size)
        .map(|_| {
            (0..size)
                .map(|_| {
                    let mut terms: Vec<(&str, u64)> = Vec::new();
                    let mut budget = rng.gen_range(0..=max_terms);
                    while budget > 0 {
                        let pick = &mors[rng.gen_range(0..mors.len())];
                        let mult = rng.gen_range(1..=budget);
                        budget -= mult;
                        terms.push((pick, mult));
                    }
                    pres.sum(obj, obj, &terms).expect("terms come from the table")
                })
                .collect()
        })
        .collect();
    EndoMatrix::new(vec![ObjectId::new(obj); size], entries)
        .expect("square grid over a repeated object")
}

/// Draws a provably idempotent endomatrix: an idempotent diagonal (zero,
/// an identity, or a weakly idempotent envelope), one strictly triangular
/// orientation, and off-diagonal terms chosen so the diagonal absorbs on
/// one side and annihilates on the other.
pub fn random_idempotent(
    rng: &mut ChaCha8Rng,
    pres: &Presentation,
    obj: &str,
    envelope_terms: &[(&str, u64)],
    feeders: &[&[(&str, u64)]],
    size: usize,
) -> EndoMatrix {
    let identity = pres
        .identity_of(obj)
        .expect("sample presentations carry identities")
        .id
        .as_str()
        .to_owned();
    // 0 = zero, 1 = identity, 2 = envelope.
    let kinds: Vec<u8> = (0..size).map(|_| rng.gen_range(0..=2)).collect();
    let upper = rng.gen_bool(0.5);
    let zero = pres.zero_sum(obj, obj).expect("object exists");
    let entries: Vec<Vec<_>> = (0..size)
        .map(|r| {
            (0..size)
                .map(|c| {
                    if r == c {
                        match kinds[r] {
                            0 => zero.clone(),
                            1 => pres.sum(obj, obj, &[(identity.as_str(), 1)]).unwrap(),
                            _ => pres.sum(obj, obj, envelope_terms).unwrap(),
                        }
                    } else {
                        let fixing = if upper { kinds[r] } else { kinds[c] };
                        let annihilated = if upper { kinds[c] } else { kinds[r] };
                        let ordered = if upper { r < c } else { r > c };
                        if ordered && annihilated == 0 && fixing != 0 && rng.gen_bool(0.5) {
                            match fixing {
                                1 => {
                                    let choice = rng.gen_range(0..feeders.len());
                                    pres.sum(obj, obj, feeders[choice]).unwrap()
                                }
                                _ => {
                                    let scale = rng.gen_range(1..=2u64);
                                    let scaled: Vec<(&str, u64)> = envelope_terms
                                        .iter()
                                        .map(|(id, mult)| (*id, mult * scale))
                                        .collect();
                                    pres.sum(obj, obj, &scaled).unwrap()
                                }
                            }
                        } else {
                            zero.clone()
                        }
                    }
                })
                .collect()
        })
        .collect();
    EndoMatrix::new(vec![ObjectId::new(obj); size], entries)
        .expect("square grid over a repeated object")
}

/// Checks `M(compose(phi, psi)) = M(phi) * M(psi)` on random pairs.
pub fn functoriality_driver(
    pres: &Presentation,
    obj: &str,
    seed: u64,
    rounds: usize,
) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..rounds {
        let size = rng.gen_range(1..=3);
        let phi = random_endomatrix(&mut rng, pres, obj, size, 3);
        let psi = random_endomatrix(&mut rng, pres, obj, size, 3);
        let composite = endo_compose(pres, &phi, &psi).map_err(|e| anyhow::anyhow!("{e}"))?;
        let (m_phi, basis) = multiplicity_matrix(pres, &phi).map_err(|e| anyhow::anyhow!("{e}"))?;
        let (m_psi, _) = multiplicity_matrix(pres, &psi).map_err(|e| anyhow::anyhow!("{e}"))?;
        let (m_comp, basis_comp) =
            multiplicity_matrix(pres, &composite).map_err(|e| anyhow::anyhow!("{e}"))?;
        if basis != basis_comp {
            bail!("PropertyFailed: basis changed under composition in round {round}");
        }
        let product = m_phi
            .multiply(&m_psi)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        if product != m_comp {
            bail!("PropertyFailed: multiplicity matrices are not functorial in round {round}");
        }
    }
    Ok(format!(
        "functoriality: {rounds} random pairs, multiplicity matrices multiplicative on all"
    ))
}

/// Verifies one idempotent against the thirteen decomposition identities;
/// returns whether the complement or nilpotent layer is nonzero.
fn verify_idempotent(pres: &Presentation, phi: &EndoMatrix, context: &str) -> Result<bool> {
    let decomposition = gamma_theta_pi(pres, phi).map_err(|e| anyhow::anyhow!("{e}"))?;
    if !decomposition.report.all_passed() {
        let failed: Vec<&str> = decomposition
            .report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        bail!("PropertyFailed: identity checks {failed:?} failed on {context}");
    }
    Ok(!decomposition.theta.is_zero() || !decomposition.pi.is_zero())
}

/// Runs the decomposition identity suite on every idempotent found among
/// `rounds` uniformly random matrices, then tops the sample up with members
/// of the constructed block family until at least `min_nontrivial`
/// idempotents with a nonzero complement or nilpotent layer were verified.
pub fn idempotent_driver(
    pres: &Presentation,
    obj: &str,
    envelope_terms: &[(&str, u64)],
    feeders: &[&[(&str, u64)]],
    seed: u64,
    rounds: usize,
    min_nontrivial: usize,
) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0usize;
    let mut nontrivial = 0usize;
    for round in 0..rounds {
        let size = rng.gen_range(1..=3);
        let phi = random_endomatrix(&mut rng, pres, obj, size, 3);
        if !phi
            .is_idempotent(pres)
            .map_err(|e| anyhow::anyhow!("{e}"))?
        {
            continue;
        }
        found += 1;
        if verify_idempotent(pres, &phi, &format!("random round {round}"))? {
            nontrivial += 1;
        }
    }
    let mut constructed = 0usize;
    while nontrivial < min_nontrivial {
        let size = rng.gen_range(2..=3);
        let phi = random_idempotent(&mut rng, pres, obj, envelope_terms, feeders, size);
        if !phi
            .is_idempotent(pres)
            .map_err(|e| anyhow::anyhow!("{e}"))?
        {
            bail!("PropertyFailed: constructed matrix is not idempotent");
        }
        constructed += 1;
        if verify_idempotent(pres, &phi, &format!("constructed round {constructed}"))? {
            nontrivial += 1;
        }
    }
    Ok(format!(
        "idempotent identities: {rounds} random matrices, {found} idempotents verified, \
         plus {constructed} constructed; {nontrivial} had a nontrivial complement or \
         nilpotent layer"
    ))
}
