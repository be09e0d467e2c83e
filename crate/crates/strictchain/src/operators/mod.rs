//! Operators on `Γ` and on its quotient `ℚ[q₂, q₄, …]`.
//!
//! `D` and `U` act diagonally (up to box removal) on the factorial basis `Q*_μ`;
//! `B` and `A` are second-order differential operators in the power sums and
//! the moment coordinates; `E`, `F`, `H` live in [`sl2`].

pub mod identities;
pub mod sl2;

use num_traits::Zero;

use crate::diagrams::{enumerate_strict, StrictPartition};
use crate::error::{domain, Result};
use crate::gamma::poly::{Exponents, MPoly};
use crate::gamma::{expand_in_qstar, odd_monomials_upto, project, schur_q, EvaluationGrid, GammaPoly, QuotientPoly};
use crate::linalg::QMatrix;
use crate::rational::{int, Rational};

pub use identities::{
    verify_b_commutes_with_p1, verify_b_tilde_top_component, verify_g_basis_leading_terms, verify_quotient_operator,
    verify_tn_on_qstar,
};
pub use sl2::{verify_sl2, Sl2Generator, TruncatedFun0};

/// A linear operator on `Γ` that "has degree ≤ r" for its declared shift `r`.
pub trait GammaOperator: Sync {
    fn name(&self) -> String;
    /// Largest input degree handled exactly; `None` when unbounded.
    fn degree_bound(&self) -> Option<usize>;
    fn degree_shift(&self) -> i64;
    fn apply(&self, f: &GammaPoly) -> Result<GammaPoly>;
}

/// `D Q*_μ = (p₁ - |μ|) Q*_μ`.
#[derive(Debug, Clone)]
pub struct DownOperator {
    pub max_degree: usize,
}

/// `U Q*_μ = (p₁ + |μ| + α/2) Q*_μ + Σ_y (y(y+1) + α) Q*_{μ-□(y)}`.
#[derive(Debug, Clone)]
pub struct UpOperator {
    pub alpha: Rational,
    pub max_degree: usize,
}

/// The differential operator `B`, homogeneous of degree 0.
#[derive(Debug, Clone)]
pub struct BOperator {
    pub alpha: Rational,
}

/// `B̃ = UD - ¼(g₁ + α)(g₁ + 2)` with `g₁ = 2p₁`.
#[derive(Debug, Clone)]
pub struct BTildeOperator {
    pub alpha: Rational,
    pub max_degree: usize,
}

impl GammaOperator for DownOperator {
    fn name(&self) -> String {
        "D".into()
    }
    fn degree_bound(&self) -> Option<usize> {
        Some(self.max_degree)
    }
    fn degree_shift(&self) -> i64 {
        1
    }
    fn apply(&self, f: &GammaPoly) -> Result<GammaPoly> {
        d_op(f, self.max_degree)
    }
}

impl GammaOperator for UpOperator {
    fn name(&self) -> String {
        format!("U(alpha={})", self.alpha)
    }
    fn degree_bound(&self) -> Option<usize> {
        Some(self.max_degree)
    }
    fn degree_shift(&self) -> i64 {
        1
    }
    fn apply(&self, f: &GammaPoly) -> Result<GammaPoly> {
        u_op(f, &self.alpha, self.max_degree)
    }
}

impl GammaOperator for BOperator {
    fn name(&self) -> String {
        format!("B(alpha={})", self.alpha)
    }
    fn degree_bound(&self) -> Option<usize> {
        None
    }
    fn degree_shift(&self) -> i64 {
        0
    }
    fn apply(&self, f: &GammaPoly) -> Result<GammaPoly> {
        Ok(b_op(f, &self.alpha))
    }
}

impl GammaOperator for BTildeOperator {
    fn name(&self) -> String {
        format!("B~(alpha={})", self.alpha)
    }
    fn degree_bound(&self) -> Option<usize> {
        Some(self.max_degree)
    }
    fn degree_shift(&self) -> i64 {
        0
    }
    fn apply(&self, f: &GammaPoly) -> Result<GammaPoly> {
        b_tilde_op(f, &self.alpha, self.max_degree)
    }
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if alpha <= &Rational::zero() {
        return domain(format!("alpha must be positive, got {alpha}"));
    }
    Ok(())
}

fn p1() -> GammaPoly {
    GammaPoly::p(1)
}

fn weight_of(mu: &StrictPartition) -> Rational {
    int(mu.weight() as i64)
}

fn box_factor(y: i64, alpha: &Rational) -> Rational {
    int(y * (y + 1)) + alpha
}

/// `D f` for `deg f ≤ m`.
pub fn d_op(f: &GammaPoly, m: usize) -> Result<GammaPoly> {
    let expansion = expand_in_qstar(f, m)?;
    let grid = EvaluationGrid::shared(m);
    let mut out = GammaPoly::zero();
    for (mu, c) in expansion {
        let q = grid.qstar(&mu).expect("μ lies on the grid");
        let factor = &p1() - &GammaPoly::constant(weight_of(&mu));
        out = &out + &(&factor * q).scale(&c);
    }
    Ok(out)
}

/// `U f` for `deg f ≤ m`.
pub fn u_op(f: &GammaPoly, alpha: &Rational, m: usize) -> Result<GammaPoly> {
    check_alpha(alpha)?;
    let expansion = expand_in_qstar(f, m)?;
    let grid = EvaluationGrid::shared(m);
    let half = alpha / int(2);
    let mut out = GammaPoly::zero();
    for (mu, c) in expansion {
        let q = grid.qstar(&mu).expect("μ lies on the grid");
        let factor = &p1() + &GammaPoly::constant(weight_of(&mu) + &half);
        let mut term = &factor * q;
        for (y, kappa) in mu.down_neighbors() {
            let lower = grid.qstar(&kappa).expect("κ ⊂ μ lies on the grid");
            term = &term + &lower.scale(&box_factor(y, alpha));
        }
        out = &out + &term.scale(&c);
    }
    Ok(out)
}

/// `B̃ f = U D f - ¼(2p₁ + α)(2p₁ + 2) f` for `deg f ≤ m`.
pub fn b_tilde_op(f: &GammaPoly, alpha: &Rational, m: usize) -> Result<GammaPoly> {
    let ud = u_op(&d_op(f, m)?, alpha, m + 1)?;
    let a = &p1().scale(&int(2)) + &GammaPoly::constant(alpha.clone());
    let b = &p1().scale(&int(2)) + &GammaPoly::constant(int(2));
    let scalar = (&a * &b).scale(&Rational::new(1.into(), 4.into()));
    Ok(&ud - &(&scalar * f))
}

/// Coefficients of `(T_n - 1)(Q*_μ)_n` in the factorial basis: `μ` first, then each `μ - □(y)`.
pub fn tn_on_qstar(mu: &StrictPartition, n: usize, alpha: &Rational) -> Result<Vec<(StrictPartition, Rational)>> {
    check_alpha(alpha)?;
    let k = mu.weight();
    if k > n {
        return domain(format!("|μ| = {k} exceeds n = {n}"));
    }
    let (k, nr) = (int(k as i64), int(n as i64));
    let denom = (&nr + int(1)) * (&nr + alpha / int(2));
    let mut out = vec![(mu.clone(), -(&k * (&k + alpha / int(2) - int(1))) / &denom)];
    for (y, kappa) in mu.down_neighbors() {
        out.push((kappa, (&nr - &k + int(1)) * box_factor(y, alpha) / &denom));
    }
    Ok(out)
}

fn var_poly(i: usize) -> MPoly {
    MPoly::var(i)
}

/// `B f`. Variable `a` of the underlying polynomial is `p_{2a+1}`.
pub fn b_op(f: &GammaPoly, alpha: &Rational) -> GammaPoly {
    let f = f.as_mpoly();
    let Some(top) = f.max_var() else {
        return GammaPoly::zero();
    };
    let p1 = var_poly(0);
    let half = alpha / int(2);
    let mut out = MPoly::zero();
    for a in 1..=top {
        let da = f.derivative(a);
        if da.is_zero() {
            continue;
        }
        let wa = int(2 * a as i64 + 1);
        let drift = (&wa * (int(2 * a as i64) + &half)).clone();
        out = &out - &(&var_poly(a) * &da).scale(&drift);

        let mut source = MPoly::zero();
        for i in 0..a {
            source = &source + &(&var_poly(i) * &var_poly(a - 1 - i));
        }
        out = &out + &(&(&p1 * &source) * &da).scale(&(int(2) * &wa));

        for b in 1..=top {
            let dab = da.derivative(b);
            if dab.is_zero() {
                continue;
            }
            let wb = int(2 * b as i64 + 1);
            let coeff = &(&p1 * &var_poly(a + b)) - &(&var_poly(a) * &var_poly(b));
            out = &out + &(&coeff * &dab).scale(&(&wa * &wb));
        }
    }
    GammaPoly::from_mpoly(out)
}

/// `q_{2i}` as a polynomial: `q₀ = 1`, otherwise variable `i - 1`.
fn q_even(i: usize) -> MPoly {
    if i == 0 {
        MPoly::one()
    } else {
        var_poly(i - 1)
    }
}

/// `A f` on `ℚ[q₂, q₄, …]`. Variable `a` of the underlying polynomial is `q_{2a+2}`.
pub fn a_op(f: &QuotientPoly, alpha: &Rational) -> QuotientPoly {
    let f = f.as_mpoly();
    let Some(top) = f.max_var() else {
        return QuotientPoly::zero();
    };
    let half = alpha / int(2);
    let mut out = MPoly::zero();
    for a in 0..=top {
        let da = f.derivative(a);
        if da.is_zero() {
            continue;
        }
        let wa = int(2 * a as i64 + 3);
        let drift = &wa * (int(2 * a as i64 + 2) + &half);
        out = &out - &(&var_poly(a) * &da).scale(&drift);

        let mut source = MPoly::zero();
        for i in 0..=a {
            source = &source + &(&q_even(i) * &q_even(a - i));
        }
        out = &out + &(&source * &da).scale(&(int(2) * &wa));

        for b in 0..=top {
            let dab = da.derivative(b);
            if dab.is_zero() {
                continue;
            }
            let wb = int(2 * b as i64 + 3);
            let coeff = &var_poly(a + b + 1) - &(&var_poly(a) * &var_poly(b));
            out = &out + &(&coeff * &dab).scale(&(&wa * &wb));
        }
    }
    QuotientPoly::from_mpoly(out)
}

/// `Q°_μ`: the image of `Q_μ` under `p₁ ↦ 1`.
pub fn q_circ(mu: &StrictPartition) -> QuotientPoly {
    project(&schur_q(mu))
}

/// `A Q°_μ = -|μ|(|μ| + α/2 - 1) Q°_μ + Σ_y (y(y+1) + α) Q°_{μ-□(y)}`.
pub fn a_on_q(mu: &StrictPartition, alpha: &Rational) -> QuotientPoly {
    let k = weight_of(mu);
    let diag = -(&k * (&k + alpha / int(2) - int(1)));
    let mut out = q_circ(mu).scale(&diag);
    for (y, kappa) in mu.down_neighbors() {
        out = &out + &q_circ(&kappa).scale(&box_factor(y, alpha));
    }
    out
}

/// The matrix of `op` from the monomials of degree `≤ m` to those of degree `≤ m + shift`.
///
/// Column `j` holds the coefficients of `op` applied to the `j`-th input monomial.
pub fn matrix_in_monomial_basis(op: &dyn GammaOperator, m: usize) -> Result<(Vec<Exponents>, Vec<Exponents>, QMatrix)> {
    let inputs = odd_monomials_upto(m);
    let target = (m as i64 + op.degree_shift()).max(0) as usize;
    let outputs = odd_monomials_upto(target);
    let mut matrix = QMatrix::zeros(outputs.len(), inputs.len());
    for (j, e) in inputs.iter().enumerate() {
        let image = op.apply(&GammaPoly::from_mpoly(MPoly::monomial(e.clone(), int(1))))?;
        for (e2, c) in image.terms() {
            let Some(i) = outputs.iter().position(|o| o == e2) else {
                return domain(format!("{} raised the degree of p^{e:?} beyond {target}", op.name()));
            };
            matrix[(i, j)] = c.clone();
        }
    }
    Ok((inputs, outputs, matrix))
}

/// Strict partitions of weight at most `m`.
pub(crate) fn diagrams_upto(m: usize) -> Vec<StrictPartition> {
    (0..=m).flat_map(enumerate_strict).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::schur_q_factorial_symbolic;
    use crate::rational::ratio;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::from_parts(p)
    }

    #[test]
    fn d_and_u_examples() {
        let q1 = schur_q_factorial_symbolic(&sp(&[1]));
        let expected = &p1().pow(2).scale(&int(2)) - &p1().scale(&int(2));
        assert_eq!(d_op(&q1, 1).unwrap(), expected);
        assert_eq!(d_op(&GammaPoly::one(), 0).unwrap(), p1());
        let alpha = ratio(3, 2);
        assert_eq!(u_op(&GammaPoly::one(), &alpha, 0).unwrap(), &p1() + &GammaPoly::constant(ratio(3, 4)));
        assert!(d_op(&GammaPoly::p(3), 2).is_err());
        assert!(u_op(&GammaPoly::one(), &int(0), 0).is_err());
    }

    #[test]
    fn b_examples() {
        for alpha in [int(1), int(2), ratio(1, 2)] {
            let b3 = b_op(&GammaPoly::p(3), &alpha);
            let expected = &p1().pow(3).scale(&int(6)) - &GammaPoly::p(3).scale(&(int(3) * (int(2) + &alpha / int(2))));
            assert_eq!(b3, expected);
            assert!(b_op(&p1(), &alpha).is_zero());
            assert_eq!(b_op(&(&p1() * &GammaPoly::p(3)), &alpha), &p1() * &b3);
        }
    }

    #[test]
    fn a_examples() {
        let alpha = int(2);
        let a2 = a_op(&QuotientPoly::q(2), &alpha);
        let expected = &QuotientPoly::constant(int(6)) - &QuotientPoly::q(2).scale(&int(9));
        assert_eq!(a2, expected);
        assert!(a_op(&QuotientPoly::one(), &alpha).is_zero());
        assert!(a_on_q(&sp(&[2]), &alpha).is_zero());
        assert!(a_on_q(&sp(&[1]), &ratio(7, 3)).is_zero());
        let q3 = &QuotientPoly::constant(ratio(4, 3)) + &QuotientPoly::q(2).scale(&ratio(2, 3));
        let alpha = int(1);
        let expected = &q3.scale(&(int(-3) * (int(2) + ratio(1, 2)))) + &QuotientPoly::constant(int(14));
        assert_eq!(a_on_q(&sp(&[3]), &alpha), expected);
        assert_eq!(a_op(&q_circ(&sp(&[3])), &alpha), expected);
    }

    #[test]
    fn tn_coefficients() {
        let c = tn_on_qstar(&sp(&[2]), 3, &int(2)).unwrap();
        // -2·2/16 on Q*_(2) and 2·4/16 on Q*_(1)
        assert_eq!(c, vec![(sp(&[2]), ratio(-1, 4)), (sp(&[1]), ratio(1, 2))]);
        assert!(tn_on_qstar(&sp(&[3, 1]), 3, &int(2)).is_err());
    }

    #[test]
    fn operator_matrices() {
        let (inputs, outputs, m) = matrix_in_monomial_basis(&DownOperator { max_degree: 3 }, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (outputs.len(), inputs.len()));
        let (_, _, b) = matrix_in_monomial_basis(&BOperator { alpha: int(2) }, 4).unwrap();
        assert_eq!(b.cols(), odd_monomials_upto(4).len());
    }
}
