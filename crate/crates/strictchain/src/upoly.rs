//! Univariate polynomials over the rationals and exact real-root isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{int, Rational};

/// Dense coefficients, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UPoly {
    #[serde(with = "crate::rational::serde_str_vec")]
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `v`.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `v - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    /// `Π (v - r)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(Self::constant(Rational::one()), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * v + c)
    }

    pub fn eval_f64(&self, v: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * v + crate::rational::to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free factors `f_i` with `self = c · Π f_i^i` (Yun's algorithm).
    pub fn square_free_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            d = &nc - &nb.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.monic(), i));
            }
            b = nb;
            i += 1;
        }
        out
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let m = self.coeffs.iter().map(|c| c.abs() / &lead).max().unwrap_or_default();
        m + int(1)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*v"),
                _ => format!("{c}*v^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).cloned().unwrap_or_default() + o.coeffs.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        self + &(-o)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

/// A real root located in `[lower, upper]`, identified exactly when it is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: Option<Rational>,
}

impl RealRoot {
    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / int(2)
    }

    pub fn contains(&self, v: &Rational, slack: &Rational) -> bool {
        match &self.exact {
            Some(r) => (r - v).abs() <= *slack,
            None => &self.lower - slack <= *v && *v <= &self.upper + slack,
        }
    }
}

fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[UPoly], v: &Rational) -> usize {
    let signs: Vec<bool> = seq.iter().map(|p| p.eval(v)).filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The rational with the smallest denominator in `[a, b]`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a <= b);
    if a.is_negative() && b.is_positive() || a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    if b.is_negative() {
        return -simplest_between(&-b, &-a);
    }
    let ceil = a.ceil();
    if ceil <= *b {
        return ceil;
    }
    let fl = a.floor();
    let (fa, fb) = (a - &fl, b - &fl);
    fl + Rational::one() / simplest_between(&(Rational::one() / fb), &(Rational::one() / fa))
}

/// Isolates every real root of a square-free polynomial to width at most `tol`.
///
/// Bisection midpoints that hit a root are recorded exactly and deflated out;
/// remaining isolating intervals are probed for their simplest rational.
pub fn isolate_real_roots(p: &UPoly, tol: &Rational) -> Vec<RealRoot> {
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let original = p.clone();
    let mut current = p.clone();
    let mut seq = sturm_sequence(&current);
    let bound = p.root_bound();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        if count == 0 {
            continue;
        }
        if count == 1 && &b - &a <= *tol {
            let candidate = simplest_between(&a, &b);
            let exact = original.eval(&candidate).is_zero().then_some(candidate);
            roots.push(RealRoot { lower: a, upper: b, exact });
            continue;
        }
        let m = (&a + &b) / int(2);
        if current.eval(&m).is_zero() {
            current = current.div_rem(&UPoly::linear_root(&m)).0;
            seq = sturm_sequence(&current);
            roots.push(RealRoot { lower: m.clone(), upper: m.clone(), exact: Some(m) });
            stack.push((a, b));
            continue;
        }
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    roots.sort_by(|x, y| x.lower.cmp(&y.lower));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn poly(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[-2, 1]);
        let q = poly(&[-6, 1]);
        assert_eq!((&p * &q).coeffs(), poly(&[12, -8, 1]).coeffs());
        let (quot, rem) = poly(&[12, -8, 1]).div_rem(&p);
        assert_eq!(quot, q);
        assert!(rem.is_zero());
        assert_eq!(poly(&[1, 2, 3]).derivative(), poly(&[2, 6]));
        assert_eq!(poly(&[1, 2, 3]).eval(&int(2)), int(17));
        assert_eq!(poly(&[2, -3, 1]).gcd(&poly(&[-1, 1])), poly(&[-1, 1]));
    }

    #[test]
    fn square_free_parts() {
        // (v - 1)^3 (v + 2)
        let p = &poly(&[-1, 1]).pow(3) * &poly(&[2, 1]);
        let parts = p.square_free_decomposition();
        assert_eq!(parts, vec![(poly(&[2, 1]), 1), (poly(&[-1, 1]), 3)]);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&ratio(43, 100), &ratio(44, 100)), ratio(7, 16));
        assert_eq!(simplest_between(&ratio(7, 16), &ratio(7, 16)), ratio(7, 16));
        assert_eq!(simplest_between(&ratio(-1, 3), &ratio(1, 5)), int(0));
        assert_eq!(simplest_between(&ratio(-5, 2), &ratio(-9, 4)), ratio(-5, 2));
        assert_eq!(simplest_between(&ratio(-12, 5), &ratio(-9, 4)), ratio(-7, 3));
    }

    #[test]
    fn root_isolation() {
        let tol = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
        // roots 1, 7/16 and ±√2
        let p = &UPoly::from_roots([&int(1), &ratio(7, 16)]) * &poly(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &tol);
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[1].exact, Some(ratio(7, 16)));
        assert_eq!(roots[2].exact, Some(int(1)));
        assert!(roots[0].exact.is_none() && roots[3].exact.is_none());
        let sqrt2 = crate::rational::to_f64(&roots[3].midpoint());
        assert!((sqrt2 - 2f64.sqrt()).abs() < 1e-15);
        assert!(isolate_real_roots(&poly(&[1, 0, 1]), &tol).is_empty());
    }
}
