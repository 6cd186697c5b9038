//! Sparse Laurent polynomials in one formal variable with numeric
//! coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numerics::{Complex, Real};

/// Which formal variable a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Beta,
    BetaHat,
}

/// Relative size below which an x^-1 coefficient is treated as rounding dust
/// instead of a genuine logarithmic term.
pub const RESIDUE_TOLERANCE: f64 = 1e-20;

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    var: Var,
    prec: u32,
    terms: BTreeMap<i32, Real>,
}

/// Relative pruning threshold for a given coefficient precision in bits:
/// 10^-(d-4) where d is the decimal precision. 1e-30 at 34 digits.
pub fn prune_threshold(prec: u32) -> f64 {
    let digits = ((prec.saturating_sub(8)) as f64 / std::f64::consts::LOG2_10).round();
    10f64.powf(-(digits - 4.0).max(1.0))
}

fn residue_threshold(prec: u32) -> f64 {
    RESIDUE_TOLERANCE.max(1e3 * prune_threshold(prec))
}

impl LaurentPoly {
    pub fn zero(var: Var, prec: u32) -> LaurentPoly {
        LaurentPoly {
            var,
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(var: Var, exp: i32, coeff: Real) -> LaurentPoly {
        let prec = coeff.prec();
        LaurentPoly::from_terms(var, prec, [(exp, coeff)])
    }

    pub fn constant(var: Var, c: Real) -> LaurentPoly {
        LaurentPoly::monomial(var, 0, c)
    }

    /// Builds from (exponent, coefficient) pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i32, Real)>>(var: Var, prec: u32, terms: I) -> LaurentPoly {
        let mut map: BTreeMap<i32, Real> = BTreeMap::new();
        for (k, c) in terms {
            let c = c.to_prec(prec);
            match map.get_mut(&k) {
                Some(v) => *v += &c,
                None => {
                    map.insert(k, c);
                }
            }
        }
        let mut p = LaurentPoly {
            var,
            prec,
            terms: map,
        };
        p.prune();
        p
    }

    /// Convenience constructor from f64 coefficients.
    pub fn from_f64(var: Var, prec: u32, terms: &[(i32, f64)]) -> LaurentPoly {
        LaurentPoly::from_terms(var, prec, terms.iter().map(|&(k, c)| (k, Real::with_prec(prec, c))))
    }

    fn prune(&mut self) {
        let max = self.max_abs();
        if max.is_zero() {
            self.terms.clear();
            return;
        }
        let cut = max * prune_threshold(self.prec);
        self.terms.retain(|_, c| !c.is_zero() && c.abs() > cut);
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Real)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, exp: i32) -> Real {
        self.terms.get(&exp).cloned().unwrap_or_else(|| Real::zero(self.prec))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Largest coefficient magnitude (zero for the zero polynomial).
    pub fn max_abs(&self) -> Real {
        self.terms
            .values()
            .map(|c| c.abs())
            .fold(Real::zero(self.prec), Real::max)
    }

    /// Some(0) if every exponent is even, Some(1) if every exponent is odd.
    pub fn parity(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|k| k.rem_euclid(2));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn check_var(&self, other: &LaurentPoly) -> Result<()> {
        if self.var != other.var {
            Err(Error::VarMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_var(other)?;
        let prec = self.prec.max(other.prec);
        Ok(LaurentPoly::from_terms(
            self.var,
            prec,
            self.terms().chain(other.terms()).map(|(k, c)| (k, c.clone())),
        ))
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.scale(&Real::with_prec(other.prec, -1.0)))
    }

    pub fn scale(&self, k: &Real) -> LaurentPoly {
        LaurentPoly::from_terms(self.var, self.prec, self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Multiplies by x^shift.
    pub fn shift(&self, shift: i32) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            prec: self.prec,
            terms: self.terms().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn multiply(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_var(other)?;
        let prec = self.prec.max(other.prec);
        let mut acc: BTreeMap<i32, Real> = BTreeMap::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let prod = a * b;
                match acc.get_mut(&(i + j)) {
                    Some(v) => *v += &prod,
                    None => {
                        acc.insert(i + j, prod);
                    }
                }
            }
        }
        Ok(LaurentPoly::from_terms(self.var, prec, acc))
    }

    pub fn differentiate(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.var,
            self.prec,
            self.terms()
                .filter(|(k, _)| *k != 0)
                .map(|(k, c)| (k - 1, c * k as f64)),
        )
    }

    /// Termwise antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Result<LaurentPoly> {
        if let Some(c) = self.terms.get(&-1) {
            let max = self.max_abs();
            let rel = (c.abs() / &max).to_f64();
            if rel > residue_threshold(self.prec) {
                return Err(Error::ResidueTerm {
                    coeff: c.to_f64(),
                    relative: rel,
                });
            }
        }
        Ok(LaurentPoly::from_terms(
            self.var,
            self.prec,
            self.terms()
                .filter(|(k, _)| *k != -1)
                .map(|(k, c)| (k + 1, c / (k + 1) as f64)),
        ))
    }

    /// Exponent map k -> -k.
    pub fn substitute_reciprocal(&self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            prec: self.prec,
            terms: self.terms().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Exact quotient self / divisor. Fails unless the remainder is at
    /// rounding level.
    pub fn divide_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_var(divisor)?;
        let prec = self.prec.max(divisor.prec);
        let (dmin, dmax) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::DomainError("division by the zero polynomial".into())),
        };
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.var, prec));
        }
        let scale = self.max_abs();
        let lead = divisor.coeff(dmax);
        let mut rem: BTreeMap<i32, Real> = self.terms().map(|(k, c)| (k, c.to_prec(prec))).collect();
        let mut quot: Vec<(i32, Real)> = Vec::new();
        let floor = self.min_exp().unwrap() - dmin;
        while let Some(&top) = rem.keys().next_back() {
            let qexp = top - dmax;
            if qexp < floor {
                break;
            }
            let q = &rem[&top] / &lead;
            for (k, c) in divisor.terms() {
                let e = k + qexp;
                let v = rem.remove(&e).unwrap_or_else(|| Real::zero(prec)) - &q * c;
                if e != top && !v.is_zero() {
                    rem.insert(e, v);
                }
            }
            quot.push((qexp, q));
        }
        let tol = &scale * (1e3 * prune_threshold(prec));
        if let Some((k, c)) = rem.iter().find(|(_, c)| c.abs() > tol) {
            return Err(Error::StructureViolation(format!(
                "inexact Laurent division: remainder x^{k} coefficient {:e}",
                c.to_f64()
            )));
        }
        Ok(LaurentPoly::from_terms(self.var, prec, quot))
    }

    /// Horner evaluation, positive and negative powers separately.
    pub fn evaluate(&self, x: &Complex) -> Result<Complex> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let prec = self.prec.max(x.prec());
        let pos = horner(self.terms.range(0..).map(|(k, c)| (*k, c)), x, prec);
        let inv = x.recip();
        let neg = horner(self.terms.range(..0).map(|(k, c)| (-*k, c)), &inv, prec);
        Ok(&pos + &neg)
    }

    pub fn evaluate_real(&self, x: &Real) -> Result<Real> {
        Ok(self.evaluate(&Complex::from_real(x.clone()))?.re)
    }

    /// Σ |c_k| r^k: scale of the individual terms at |x| = r, used to
    /// estimate cancellation.
    pub fn abs_sum(&self, r: &Real) -> Real {
        let mut s = Real::zero(self.prec.max(r.prec()));
        for (k, c) in self.terms() {
            s += c.abs() * r.powi(k);
        }
        s
    }

    /// One term per line, "exponent<TAB>coefficient", ascending exponent.
    pub fn dump(&self, digits: usize) -> String {
        let mut out = String::new();
        for (k, c) in self.terms() {
            let _ = writeln!(out, "{k}\t{}", c.to_sci(digits));
        }
        out
    }

    /// Max coefficient difference relative to the larger max-norm.
    pub fn rel_distance(&self, other: &LaurentPoly) -> Real {
        let scale = self.max_abs().max(other.max_abs());
        if scale.is_zero() {
            return Real::zero(self.prec);
        }
        let mut exps: Vec<i32> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        exps.sort_unstable();
        exps.dedup();
        let worst = exps
            .into_iter()
            .map(|k| (self.coeff(k) - other.coeff(k)).abs())
            .fold(Real::zero(self.prec), Real::max);
        worst / scale
    }
}

// Evaluates Σ c_k x^k over nonnegative k given in any order.
fn horner<'a, I: Iterator<Item = (i32, &'a Real)>>(terms: I, x: &Complex, prec: u32) -> Complex {
    let mut v: Vec<(i32, &Real)> = terms.collect();
    if v.is_empty() {
        return Complex::zero(prec);
    }
    v.sort_by_key(|(k, _)| -k);
    let mut acc = Complex::zero(prec);
    let mut cur = v[0].0;
    for (k, c) in v {
        if cur > k {
            acc = &acc * &x.powi(cur - k);
            cur = k;
        }
        acc.re += c;
    }
    if cur > 0 {
        acc = &acc * &x.powi(cur);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 120;

    fn lp(terms: &[(i32, f64)]) -> LaurentPoly {
        LaurentPoly::from_f64(Var::Beta, P, terms)
    }

    fn cr(re: f64, im: f64) -> Complex {
        Complex::new(Real::with_prec(P, re), Real::with_prec(P, im))
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[(1, 1.0), (-1, 1.0)]);
        let b = lp(&[(1, 1.0), (-1, -1.0)]);
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(2).to_f64(), 1.0);
        assert_eq!(p.coeff(-2).to_f64(), -1.0);
        assert!(p.coeff(0).is_zero());
    }

    #[test]
    fn multiply_by_one_is_identity() {
        let p = lp(&[(-3, 0.5), (0, 2.0), (4, -1.25)]);
        let one = lp(&[(0, 1.0)]);
        assert!(p.multiply(&one).unwrap().rel_distance(&p).is_zero());
    }

    #[test]
    fn var_mismatch() {
        let a = lp(&[(1, 1.0)]);
        let b = LaurentPoly::from_f64(Var::BetaHat, P, &[(1, 1.0)]);
        assert_eq!(a.multiply(&b).unwrap_err(), Error::VarMismatch);
        assert_eq!(a.add(&b).unwrap_err(), Error::VarMismatch);
    }

    #[test]
    fn square_of_alpha_zero_first_coefficient() {
        let e1 = lp(&[(1, 1.0 / 16.0), (-1, 1.0 / 16.0)]);
        let sq = e1.multiply(&e1).unwrap();
        let expect = lp(&[(2, 1.0 / 256.0), (0, 2.0 / 256.0), (-2, 1.0 / 256.0)]);
        assert!(sq.rel_distance(&expect).is_zero());
    }

    #[test]
    fn differentiate_examples() {
        let d = lp(&[(3, 1.0)]).differentiate();
        assert_eq!(d.coeff(2).to_f64(), 3.0);
        let d = lp(&[(-1, 1.0)]).differentiate();
        assert_eq!(d.coeff(-2).to_f64(), -1.0);
        assert!(lp(&[(0, 7.0)]).differentiate().is_zero());
    }

    #[test]
    fn antiderivative_examples() {
        let a = lp(&[(2, 3.0)]).antiderivative().unwrap();
        assert_eq!(a.coeff(3).to_f64(), 1.0);
        assert_eq!(a.len(), 1);
        let a = lp(&[(-3, 1.0)]).antiderivative().unwrap();
        assert_eq!(a.coeff(-2).to_f64(), -0.5);
    }

    #[test]
    fn residue_term_is_rejected() {
        assert!(matches!(
            lp(&[(-1, 1.0)]).antiderivative(),
            Err(Error::ResidueTerm { .. })
        ));
        // dust below tolerance is dropped
        let a = lp(&[(-1, 1e-25), (0, 1.0)]).antiderivative().unwrap();
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn evaluate_examples() {
        let e1 = lp(&[(1, 1.0 / 16.0), (-1, 1.0 / 16.0)]);
        assert_eq!(e1.evaluate_real(&Real::one(P)).unwrap().to_f64(), 0.125);
        let p = lp(&[(-2, 1.5), (0, -0.25), (3, 2.0)]);
        assert_eq!(p.evaluate_real(&Real::one(P)).unwrap().to_f64(), 3.25);
        let v = p.evaluate(&cr(2.0, 0.0)).unwrap();
        assert_eq!(v.re.to_f64(), 1.5 / 4.0 - 0.25 + 16.0);
        assert_eq!(p.evaluate(&Complex::zero(P)).unwrap_err(), Error::ZeroArgument);
    }

    #[test]
    fn odd_polynomial_at_imaginary_point_is_imaginary() {
        let p = lp(&[(-3, 0.3), (-1, -1.0), (1, 2.0), (5, 0.7)]);
        let v = p.evaluate(&cr(0.0, -0.3)).unwrap();
        assert!(v.re.abs() < 1e-33 * v.im.abs());
        assert!(!v.im.is_zero());
    }

    #[test]
    fn reciprocal_substitution() {
        let p = lp(&[(3, 1.0)]).substitute_reciprocal();
        assert_eq!(p.coeff(-3).to_f64(), 1.0);
        let p = lp(&[(2, 1.0), (1, 1.0)]).substitute_reciprocal();
        assert_eq!(p.min_exp(), Some(-2));
        assert_eq!(p.max_exp(), Some(-1));
        let e1 = lp(&[(1, 1.0 / 16.0), (-1, 1.0 / 16.0)]);
        assert!(e1.substitute_reciprocal().rel_distance(&e1).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(-2, 1.0), (0, -3.0), (1, 0.5)]);
        let b = lp(&[(-1, 2.0), (3, 1.0)]);
        let prod = a.multiply(&b).unwrap();
        let q = prod.divide_exact(&b).unwrap();
        assert!(q.rel_distance(&a) < 1e-34);
        assert!(matches!(
            lp(&[(0, 1.0)]).divide_exact(&lp(&[(0, 1.0), (1, 1.0)])),
            Err(Error::StructureViolation(_))
        ));
    }

    #[test]
    fn pruning_removes_dust() {
        let p = lp(&[(0, 1.0), (2, 1e-33)]);
        assert_eq!(p.len(), 1);
        assert!((prune_threshold(crate::numerics::digits_to_bits(34)) - 1e-30).abs() < 1e-40);
    }

    #[test]
    fn parity_detection() {
        assert_eq!(lp(&[(-3, 1.0), (1, 2.0)]).parity(), Some(1));
        assert_eq!(lp(&[(-2, 1.0), (0, 2.0)]).parity(), Some(0));
        assert_eq!(lp(&[(-2, 1.0), (1, 2.0)]).parity(), None);
    }

    #[test]
    fn dump_format() {
        let p = lp(&[(1, 0.0625), (-1, 0.0625)]);
        assert_eq!(p.dump(3), "-1\t6.25e-2\n1\t6.25e-2\n");
    }
}
