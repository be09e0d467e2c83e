//! The algebra `Γ = ℚ[p₁, p₃, p₅, …]` of doubly symmetric functions and its quotient `ℚ[q₂, q₄, …]`.
//!
//! Generators are filtered by `deg p_k = k`; the quotient inherits
//! `deg q_{2k} = 2k + 1` through `p₁ ↦ 1`, `p_{2k+1} ↦ q_{2k}`.

pub mod grid;
pub mod poly;
pub mod schur;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::diagrams::StrictPartition;
use crate::rational::{fmt_rational, int, Rational};
use poly::{mpoly_newtype, Exponents, MPoly};

pub use grid::{
    boldp_symbolic, expand_in_qstar, g_symbolic, schur_q_factorial_symbolic, to_monomial_basis, EvaluationGrid,
};
pub use schur::{q_one_row, schur_q, schur_q_eval_symmetrization, schur_q_factorial_eval};

/// An element of `Γ`. Variable `i` of the underlying polynomial is `p_{2i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaPoly(MPoly);

mpoly_newtype!(GammaPoly);

impl GammaPoly {
    pub fn generator_degree(i: usize) -> usize {
        2 * i + 1
    }

    /// The power sum `p_k`, `k` odd.
    pub fn p(k: usize) -> Self {
        assert!(k % 2 == 1, "only odd power sums generate Γ, got p{k}");
        GammaPoly(MPoly::var((k - 1) / 2))
    }

    /// `p_σ = Π p_{σ_i}` for a partition `σ` with odd parts.
    pub fn p_monomial(sigma: &[usize]) -> Self {
        sigma.iter().fold(Self::one(), |acc, &k| &acc * &Self::p(k))
    }

    /// Power sums `p_k(λ) = Σ λ_i^k` substituted for the generators.
    pub fn evaluate(&self, lambda: &StrictPartition) -> Rational {
        self.0.eval(|i| {
            let k = 2 * i + 1;
            lambda.parts().iter().map(|&x| num_traits::pow(int(x as i64), k)).sum()
        })
    }

    /// `∂/∂p_k`.
    pub fn partial(&self, k: usize) -> Self {
        GammaPoly(self.0.derivative((k - 1) / 2))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.0.terms()
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.0, |i| format!("p{}", 2 * i + 1))
    }
}

impl Serialize for GammaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_terms(&self.0, |i| 2 * i + 1, s)
    }
}

/// An element of `ℚ[q₂, q₄, …]`. Variable `i` is `q_{2i+2}`; `q₀ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuotientPoly(MPoly);

mpoly_newtype!(QuotientPoly);

impl QuotientPoly {
    pub fn generator_degree(i: usize) -> usize {
        2 * i + 3
    }

    /// `q_k` for even `k`; `q₀ = 1`.
    pub fn q(k: usize) -> Self {
        assert!(k % 2 == 0, "moment coordinates have even index, got q{k}");
        if k == 0 {
            Self::one()
        } else {
            QuotientPoly(MPoly::var(k / 2 - 1))
        }
    }

    pub fn q_monomial(sigma: &[usize]) -> Self {
        sigma.iter().fold(Self::one(), |acc, &k| &acc * &Self::q(k))
    }

    /// Evaluates with `q_k ↦ values(k)`.
    pub fn eval(&self, values: impl Fn(usize) -> Rational) -> Rational {
        self.0.eval(|i| values(2 * i + 2))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.0.terms()
    }
}

impl fmt::Display for QuotientPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.0, |i| format!("q{}", 2 * i + 2))
    }
}

impl Serialize for QuotientPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_terms(&self.0, |i| 2 * i + 2, s)
    }
}

/// `p₁ ↦ 1`, `p_{2k+1} ↦ q_{2k}`.
pub fn project(f: &GammaPoly) -> QuotientPoly {
    QuotientPoly(f.0.map_monomials(|e| e.iter().skip(1).copied().collect()))
}

/// The preimage free of `p₁`: `q_{2k} ↦ p_{2k+1}`.
pub fn lift(f: &QuotientPoly) -> GammaPoly {
    GammaPoly(f.0.map_monomials(|e| std::iter::once(0).chain(e.iter().copied()).collect()))
}

/// Exponent vectors over `p₁, p₃, …` of total degree at most `m`, by degree.
pub fn odd_monomials_upto(m: usize) -> Vec<Exponents> {
    fn rec(i: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        let w = 2 * i + 1;
        if w > left {
            let mut e = cur.clone();
            while e.last() == Some(&0) {
                e.pop();
            }
            out.push(e);
            return;
        }
        for k in 0..=left / w {
            cur.push(k as u32);
            rec(i + 1, left - k * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (MPoly::term_degree(e, GammaPoly::generator_degree), e.clone()));
    out
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &MPoly, name: impl Fn(usize) -> String) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, c) in p.terms() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{k}", name(i)) })
            .collect();
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match (mono.is_empty(), c.is_one()) {
            (true, _) => write!(f, "{c}")?,
            (false, true) => write!(f, "{}", mono.join("*"))?,
            (false, false) => write!(f, "{c}*{}", mono.join("*"))?,
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TermJson {
    exponents: BTreeMap<usize, u32>,
    coeff: String,
}

fn serialize_terms<S: Serializer>(p: &MPoly, index: impl Fn(usize) -> usize, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(p.num_terms()))?;
    for (e, c) in p.terms() {
        let exponents = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (index(i), k)).collect();
        seq.serialize_element(&TermJson { exponents, coeff: fmt_rational(c) })?;
    }
    seq.end()
}

impl Zero for GammaPoly {
    fn zero() -> Self {
        GammaPoly(MPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::ops::Add for GammaPoly {
    type Output = GammaPoly;
    fn add(self, o: GammaPoly) -> GammaPoly {
        &self + &o
    }
}
