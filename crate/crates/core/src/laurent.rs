//! Laurent polynomials in one variable `v` with integer coefficients.
//!
//! Exponents and coefficients are `i64`; every operation is overflow-checked.
//! Stored coefficients are always nonzero.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Overflow in Laurent-polynomial arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentOverflow;

impl fmt::Display for LaurentOverflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Overflow: Laurent coefficient or exponent exceeds the machine word")
    }
}

impl core::error::Error for LaurentOverflow {}

/// A Laurent polynomial `SUM c_e v^e`, keyed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    coeffs: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    /// The monomial `c v^e` (zero when `c == 0`).
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        Laurent { coeffs }
    }

    pub fn v() -> Self {
        Laurent::monomial(1, 1)
    }

    pub fn v_inv() -> Self {
        Laurent::monomial(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: i64) -> Result<(), LaurentOverflow> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot = slot.checked_add(c).ok_or(LaurentOverflow)?;
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    pub fn add(&self, other: &Laurent) -> Result<Laurent, LaurentOverflow> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Laurent) -> Result<Laurent, LaurentOverflow> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.checked_neg().ok_or(LaurentOverflow)?)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Laurent, LaurentOverflow> {
        Laurent::zero().sub(self)
    }

    pub fn mul(&self, other: &Laurent) -> Result<Laurent, LaurentOverflow> {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).ok_or(LaurentOverflow)?;
                let c = c1.checked_mul(c2).ok_or(LaurentOverflow)?;
                out.add_term(e, c)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Result<Laurent, LaurentOverflow> {
        self.mul(&Laurent::monomial(c, 0))
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Laurent {
        let coeffs = self.coeffs.iter().map(|(e, c)| (-e, *c)).collect();
        Laurent { coeffs }
    }

    /// Invariant under `v -> v^-1` (palindromic around exponent zero).
    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn all_coeffs_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| *c >= 0)
    }

    /// All exponents strictly positive (so in `v Z[v]`).
    pub fn all_exps_positive(&self) -> bool {
        self.coeffs.keys().all(|e| *e > 0)
    }

    /// All exponents nonnegative (so in `Z[v]`).
    pub fn all_exps_nonneg(&self) -> bool {
        self.coeffs.keys().all(|e| *e >= 0)
    }

    /// Value at `v = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> Result<i64, LaurentOverflow> {
        let mut acc: i64 = 0;
        for c in self.coeffs.values() {
            acc = acc.checked_add(*c).ok_or(LaurentOverflow)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Laurent {
    /// Renders like `v^-1 + 2 + v^3`; the zero polynomial renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            let body = match (c, e) {
                (c, 0) => alloc::format!("{c}"),
                (1, 1) => String::from("v"),
                (-1, 1) => String::from("-v"),
                (c, 1) => alloc::format!("{c}*v"),
                (1, e) => alloc::format!("v^{e}"),
                (-1, e) => alloc::format!("-v^{e}"),
                (c, e) => alloc::format!("{c}*v^{e}"),
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn arithmetic_and_normalization() {
        let v = Laurent::v();
        let vi = Laurent::v_inv();
        let s = v.add(&vi).unwrap();
        assert_eq!(s.coeff(1), 1);
        assert_eq!(s.coeff(-1), 1);
        assert!(s.is_bar_invariant());
        assert!(v.sub(&v).unwrap().is_zero());
        // (v + v^-1)^2 = v^2 + 2 + v^-2.
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeff(2), 1);
        assert_eq!(sq.coeff(0), 2);
        assert_eq!(sq.coeff(-2), 1);
        assert_eq!(sq.eval_at_one().unwrap(), 4);
    }

    #[test]
    fn bar_and_range_predicates() {
        let p = Laurent::monomial(1, 1).add(&Laurent::monomial(1, 3)).unwrap();
        assert!(!p.is_bar_invariant());
        assert!(p.all_exps_positive());
        assert!(p.all_coeffs_nonneg());
        assert_eq!(p.bar().min_exp(), Some(-3));
        let q = Laurent::monomial(-2, 0);
        assert!(q.is_bar_invariant());
        assert!(!q.all_coeffs_nonneg());
        assert!(!q.all_exps_positive());
        assert!(q.all_exps_nonneg());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Laurent::monomial(i64::MAX, 0);
        assert_eq!(big.add(&big), Err(LaurentOverflow));
        assert_eq!(big.mul(&Laurent::monomial(2, 0)), Err(LaurentOverflow));
        let high = Laurent::monomial(1, i64::MAX);
        assert_eq!(high.mul(&Laurent::v()), Err(LaurentOverflow));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Laurent::zero().to_string(), "0");
        let p = Laurent::monomial(1, -1)
            .add(&Laurent::monomial(2, 0))
            .unwrap()
            .add(&Laurent::monomial(-1, 3))
            .unwrap();
        assert_eq!(p.to_string(), "v^-1 + 2 - v^3");
    }
}
