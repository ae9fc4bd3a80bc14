//! Truncated power series in `t` whose coefficients are Laurent polynomials
//! in `z` over the rationals.
//!
//! `exp` and `log` use the usual recurrences obtained from `f' = h' f`, which
//! only divide by positive integers and therefore work over the Laurent ring.
//! Powers with `z`-dependent exponents are formed as `exp(α(z) · log S)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::rational::{factorial, int, pow_signed, rat, render_rational, ExactRational, RenderFormat};

/// A Laurent polynomial `Σ c_l z^l` with finitely many nonzero terms.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, ExactRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · z^l`.
    pub fn monomial(c: ExactRational, l: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(l, c);
        }
        LaurentPoly { terms }
    }

    /// `c₀ + c₁ z`.
    pub fn linear(c0: ExactRational, c1: ExactRational) -> Self {
        Self::constant(c0) + Self::monomial(c1, 1)
    }

    pub fn coeff(&self, l: i64) -> ExactRational {
        self.terms.get(&l).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the polynomial has no `z` dependence.
    pub fn as_constant(&self) -> Option<ExactRational> {
        match self.terms.len() {
            0 => Some(ExactRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Nonzero terms `(l, c_l)` in increasing `l`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.terms.iter().map(|(&l, c)| (l, c))
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&l, v)| (l, v * c)).collect(),
        }
    }

    /// Value at a nonzero rational `z`.
    pub fn evaluate(&self, z: &ExactRational) -> ExactRational {
        self.terms().map(|(l, c)| c * pow_signed(z, l)).sum()
    }

    fn add_term(&mut self, l: i64, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(l).or_insert_with(ExactRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&l);
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let text: Vec<String> = self
            .terms()
            .map(|(l, c)| format!("{}*z^{l}", render_rational(c, RenderFormat::Plain)))
            .collect();
        write!(f, "{}", text.join(" + "))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (l, c) in rhs.terms {
            self.add_term(l, c);
        }
        self
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-ExactRational::one())
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.clone() + (-rhs.clone())
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (l1, c1) in self.terms() {
            for (l2, c2) in rhs.terms() {
                out.add_term(l1 + l2, c1 * c2);
            }
        }
        out
    }
}

/// `Σ_{j ≤ t_order} P_j(z) t^j`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    t_order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl BivariateSeries {
    pub fn zero(t_order: usize) -> Self {
        BivariateSeries {
            t_order,
            coeffs: vec![LaurentPoly::zero(); t_order + 1],
        }
    }

    pub fn one(t_order: usize) -> Self {
        Self::constant(t_order, LaurentPoly::one())
    }

    pub fn constant(t_order: usize, c: LaurentPoly) -> Self {
        let mut s = Self::zero(t_order);
        s.coeffs[0] = c;
        s
    }

    /// A series with `z`-free coefficients; entries past `t_order` are dropped.
    pub fn from_t_coefficients(t_order: usize, coeffs: &[ExactRational]) -> Self {
        let mut s = Self::zero(t_order);
        for (j, c) in coeffs.iter().enumerate().take(t_order + 1) {
            s.coeffs[j] = LaurentPoly::constant(c.clone());
        }
        s
    }

    /// `sin(k t/2) / (k t/2) = Σ_n (−1)^n (k/2)^{2n} t^{2n} / (2n+1)!`.
    pub fn sin_ratio(t_order: usize, k: &ExactRational) -> Self {
        let half = k * rat(1, 2);
        let mut s = Self::zero(t_order);
        for n in 0..=t_order / 2 {
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            let c = sign * pow_signed(&half, 2 * n as i64) / int(factorial(2 * n as u64 + 1));
            s.coeffs[2 * n] = LaurentPoly::constant(c);
        }
        s
    }

    pub fn t_order(&self) -> usize {
        self.t_order
    }

    /// The Laurent polynomial multiplying `t^j` (zero past the truncation).
    pub fn coeff(&self, j: usize) -> LaurentPoly {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// The coefficient of `t^j z^l`.
    pub fn coefficient(&self, j: usize, l: i64) -> ExactRational {
        self.coeffs.get(j).map(|p| p.coeff(l)).unwrap_or_else(ExactRational::zero)
    }

    /// Nonzero terms `(j, l, c)` ordered by `j`, then `l`.
    pub fn terms(&self) -> Vec<(usize, i64, ExactRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(j, p)| p.terms().map(move |(l, c)| (j, l, c.clone())))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let t_order = self.t_order.min(other.t_order);
        BivariateSeries {
            t_order,
            coeffs: (0..=t_order).map(|j| &self.coeffs[j] + &other.coeffs[j]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t_order = self.t_order.min(other.t_order);
        let mut coeffs = vec![LaurentPoly::zero(); t_order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t_order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t_order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        BivariateSeries { t_order, coeffs }
    }

    /// Multiplies every coefficient by the Laurent polynomial `p`.
    pub fn scale(&self, p: &LaurentPoly) -> Self {
        BivariateSeries {
            t_order: self.t_order,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return invalid("exp needs a series with zero constant term");
        }
        let mut out = Self::zero(self.t_order);
        out.coeffs[0] = LaurentPoly::one();
        for n in 1..=self.t_order {
            let mut acc = LaurentPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = &self.coeffs[k] * &out.coeffs[n - k];
                acc = acc + term.scale(&int(k as i64));
            }
            out.coeffs[n] = acc.scale(&rat(1, n as i64));
        }
        Ok(out)
    }

    /// `log` of a series with constant term exactly 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != LaurentPoly::one() {
            return invalid("log needs a series with constant term 1");
        }
        let mut out = Self::zero(self.t_order);
        for n in 1..=self.t_order {
            let mut acc = LaurentPoly::zero();
            for k in 1..n {
                if out.coeffs[k].is_zero() {
                    continue;
                }
                let term = &out.coeffs[k] * &self.coeffs[n - k];
                acc = acc + term.scale(&int(k as i64));
            }
            out.coeffs[n] = &self.coeffs[n] - &acc.scale(&rat(1, n as i64));
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = match self.coeffs[0].as_constant() {
            Some(c) if !c.is_zero() => c,
            _ => return invalid("inverse needs a nonzero rational constant term"),
        };
        let inv0 = c0.recip();
        let mut out = Self::zero(self.t_order);
        out.coeffs[0] = LaurentPoly::constant(inv0.clone());
        for n in 1..=self.t_order {
            let mut acc = LaurentPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc + &self.coeffs[k] * &out.coeffs[n - k];
                }
            }
            out.coeffs[n] = acc.scale(&-inv0.clone());
        }
        Ok(out)
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.t_order);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `S^{α(z)} = exp(α(z) · log S)` for `S` with constant term 1.
    pub fn pow_laurent(&self, alpha: &LaurentPoly) -> Result<Self> {
        self.log()?.scale(alpha).exp()
    }

    /// One `c * t^j * z^l` line per nonzero term.
    pub fn render(&self) -> String {
        self.terms()
            .iter()
            .map(|(j, l, c)| format!("{} * t^{j} * z^{l}", render_rational(c, RenderFormat::Plain)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariateSeries(t_order = {}) [", self.t_order)?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " t^{j}: {c:?};")?;
            }
        }
        write!(f, " ]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sin_ratio_low_terms() {
        let s = BivariateSeries::sin_ratio(6, &int(2));
        // sin t / t = 1 − t²/6 + t⁴/120 − …
        assert_eq!(s.coefficient(0, 0), int(1));
        assert_eq!(s.coefficient(2, 0), rat(-1, 6));
        assert_eq!(s.coefficient(4, 0), rat(1, 120));
        assert_eq!(s.coefficient(3, 0), int(0));
    }

    #[test]
    fn exp_log_round_trip_with_z() {
        let s = BivariateSeries::sin_ratio(8, &int(3));
        let alpha = LaurentPoly::linear(rat(-1, 3), int(-1));
        let powered = s.pow_laurent(&alpha).unwrap();
        let back = powered.log().unwrap();
        assert_eq!(back, s.log().unwrap().scale(&alpha));
        // S^{α} · S^{−α} = 1
        let inverse = s.pow_laurent(&(-alpha)).unwrap();
        assert_eq!(powered.mul(&inverse), BivariateSeries::one(8));
    }

    #[test]
    fn integer_powers_agree_with_exp_log() {
        let s = BivariateSeries::sin_ratio(10, &int(1));
        for n in -3..=3 {
            let direct = s.powi(n).unwrap();
            let via_log = s.pow_laurent(&LaurentPoly::constant(int(n))).unwrap();
            assert_eq!(direct, via_log, "n = {n}");
        }
    }

    #[test]
    fn domain_errors() {
        let s = BivariateSeries::sin_ratio(4, &int(1));
        assert!(s.exp().is_err());
        assert!(BivariateSeries::zero(4).log().is_err());
        assert!(BivariateSeries::zero(4).inverse().is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        let s = BivariateSeries::sin_ratio(2, &int(1)).pow_laurent(&LaurentPoly::linear(int(-1), int(-1))).unwrap();
        assert_eq!(s.render(), "1 * t^0 * z^0\n1/24 * t^2 * z^0\n1/24 * t^2 * z^1");
    }

    proptest! {
        #[test]
        fn log_of_product_is_sum_of_logs(k1 in 1i64..6, k2 in 1i64..6, e in -3i64..4) {
            let a = BivariateSeries::sin_ratio(8, &int(k1));
            let b = BivariateSeries::sin_ratio(8, &int(k2)).powi(e).unwrap();
            let lhs = a.mul(&b).log().unwrap();
            let rhs = a.log().unwrap().add(&b.log().unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
