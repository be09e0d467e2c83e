//! The triple `E`, `F`, `H` on finitely supported functions on the Schur graph.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::diagrams::StrictPartition;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::report::VerificationReport;

use super::diagrams_upto;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Generator {
    E,
    F,
    H,
}

/// A finitely supported function `Σ c_λ ε_λ` with `|λ| ≤ cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedFun0 {
    pub cutoff: usize,
    pub alpha: Rational,
    coeffs: BTreeMap<StrictPartition, Rational>,
}

impl TruncatedFun0 {
    pub fn zero(cutoff: usize, alpha: Rational) -> Self {
        TruncatedFun0 { cutoff, alpha, coeffs: BTreeMap::new() }
    }

    /// The basis vector `ε_λ`.
    pub fn basis(lambda: &StrictPartition, cutoff: usize, alpha: Rational) -> Result<Self> {
        let mut v = Self::zero(cutoff, alpha);
        v.add(lambda, int(1))?;
        Ok(v)
    }

    pub fn get(&self, lambda: &StrictPartition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&StrictPartition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&mut self, lambda: &StrictPartition, c: Rational) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if lambda.weight() > self.cutoff {
            return Err(Error::Truncation(format!("ε_{lambda} lies beyond the cutoff weight {}", self.cutoff)));
        }
        let slot = self.coeffs.entry(lambda.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(lambda);
        }
        Ok(())
    }

    fn like(&self) -> Self {
        Self::zero(self.cutoff, self.alpha.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.like();
        for (l, v) in &self.coeffs {
            out.add(l, v * c).expect("same support");
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, v) in &other.coeffs {
            out.add(l, -v).expect("both within the cutoff");
        }
        out
    }

    /// `E ε_λ = Σ_x 2^{-δ(x,0)} (x(x+1) + α) ε_{λ+□(x)}`; overflow past the cutoff is an error.
    pub fn e(&self) -> Result<Self> {
        let mut out = self.like();
        for (lambda, c) in &self.coeffs {
            for (x, nu) in lambda.up_neighbors() {
                let mut w = int(x * (x + 1)) + &self.alpha;
                if x == 0 {
                    w /= int(2);
                }
                out.add(&nu, c * w)?;
            }
        }
        Ok(out)
    }

    /// `F ε_λ = -Σ_y ε_{λ-□(y)}`.
    pub fn f(&self) -> Self {
        let mut out = self.like();
        for (lambda, c) in &self.coeffs {
            for (_, mu) in lambda.down_neighbors() {
                out.add(&mu, -c.clone()).expect("lower weight");
            }
        }
        out
    }

    /// `H ε_λ = (α/2 + 2|λ|) ε_λ`.
    pub fn h(&self) -> Self {
        let mut out = self.like();
        for (lambda, c) in &self.coeffs {
            let w = &self.alpha / int(2) + int(2 * lambda.weight() as i64);
            out.add(lambda, c * w).expect("same support");
        }
        out
    }

    pub fn apply(&self, g: Sl2Generator) -> Result<Self> {
        match g {
            Sl2Generator::E => self.e(),
            Sl2Generator::F => Ok(self.f()),
            Sl2Generator::H => Ok(self.h()),
        }
    }

    /// `[g₁, g₂] v = g₁ g₂ v - g₂ g₁ v`.
    pub fn commutator(&self, g1: Sl2Generator, g2: Sl2Generator) -> Result<Self> {
        Ok(self.apply(g2)?.apply(g1)?.sub(&self.apply(g1)?.apply(g2)?))
    }
}

impl fmt::Display for TruncatedFun0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.coeffs.iter().map(|(l, c)| format!("{c}*e{l}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `[E,H] = -2E`, `[F,H] = 2F`, `[E,F] = H` on every `ε_λ` with `|λ| ≤ max_weight`.
pub fn verify_sl2(alpha: &Rational, max_weight: usize) -> Result<VerificationReport> {
    use Sl2Generator::*;
    let mut report =
        VerificationReport::new("sl2 relations").with_param("alpha", alpha).with_param("max_weight", max_weight);
    let cutoff = max_weight + 1;
    for lambda in diagrams_upto(max_weight) {
        let v = TruncatedFun0::basis(&lambda, cutoff, alpha.clone())?;
        let eh = v.commutator(E, H)?;
        report.check_eq(format!("[E,H] e{lambda}"), &v.e()?.scale(&int(-2)), &eh);
        let fh = v.commutator(F, H)?;
        report.check_eq(format!("[F,H] e{lambda}"), &v.f().scale(&int(2)), &fh);
        let ef = v.commutator(E, F)?;
        report.check_eq(format!("[E,F] e{lambda}"), &v.h(), &ef);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::from_parts(p)
    }

    #[test]
    fn generator_examples() {
        let alpha = ratio(5, 3);
        let empty = TruncatedFun0::basis(&StrictPartition::empty(), 3, alpha.clone()).unwrap();
        assert_eq!(empty.h(), empty.scale(&ratio(5, 6)));
        let one = TruncatedFun0::basis(&sp(&[1]), 3, alpha.clone()).unwrap();
        assert_eq!(one.f(), empty.scale(&int(-1)));
        let two = TruncatedFun0::basis(&sp(&[2]), 3, alpha.clone()).unwrap();
        let ef = two.commutator(Sl2Generator::E, Sl2Generator::F).unwrap();
        assert_eq!(ef, two.scale(&(&alpha / int(2) + int(4))));
    }

    #[test]
    fn overflow_is_reported() {
        let v = TruncatedFun0::basis(&sp(&[2, 1]), 3, int(1)).unwrap();
        assert!(matches!(v.e(), Err(Error::Truncation(_))));
        assert!(TruncatedFun0::basis(&sp(&[4]), 3, int(1)).is_err());
    }

    #[test]
    fn relations_hold() {
        for alpha in [ratio(1, 2), int(1), int(2)] {
            let r = verify_sl2(&alpha, 6).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }
}
