//! Exact checks of the operator identities on bounded-degree pieces of `Γ`.

use crate::chains::transition_matrix;
use crate::error::Result;
use crate::gamma::poly::{mpoly_newtype, Exponents, MPoly};
use crate::gamma::{g_symbolic, lift, odd_monomials_upto, project, EvaluationGrid, GammaPoly, QuotientPoly};
use crate::measures::Alpha;
use crate::rational::{fmt_list, int, Rational};
use crate::report::VerificationReport;

use super::{a_on_q, a_op, b_op, b_tilde_op, d_op, diagrams_upto, q_circ, tn_on_qstar, u_op};

/// `(T_n - 1)(Q*_μ)_n` from the exact transition matrix against the closed combination,
/// for `|μ| ≤ min(max_mu, n)` and `1 ≤ n ≤ max_n`.
pub fn verify_tn_on_qstar(max_mu: usize, max_n: usize, alpha: &Rational) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("T_n on factorial Q-functions")
        .with_param("max_mu", max_mu)
        .with_param("max_n", max_n)
        .with_param("alpha", alpha);
    let a = Alpha::finite(alpha.clone())?;
    for n in 1..=max_n {
        let t = transition_matrix(n, &a)?;
        let grid = EvaluationGrid::shared(n);
        let states = &t.level.states;
        for mu in diagrams_upto(max_mu.min(n)) {
            let values: Vec<Rational> = states.iter().map(|l| grid.qstar_value(&mu, l).expect("on the grid")).collect();
            let tv = t.entries.mul_vec(&values);
            let lhs: Vec<Rational> = tv.iter().zip(&values).map(|(a, b)| a - b).collect();
            let combo = tn_on_qstar(&mu, n, alpha)?;
            let rhs: Vec<Rational> = states
                .iter()
                .map(|l| combo.iter().map(|(k, c)| c * grid.qstar_value(k, l).expect("on the grid")).sum())
                .collect();
            report.check_eq(format!("(T_{n} - 1) Q*_{mu}"), &fmt_list(&rhs), &fmt_list(&lhs));
        }
    }
    Ok(report)
}

/// A polynomial in `g₁, g₂, …`; variable `i` is `g_{i+1}`, of degree `2i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
struct GPoly(MPoly);

#[allow(dead_code)]
mod gpoly_ops {
    use super::*;
    mpoly_newtype!(GPoly);
}

impl GPoly {
    fn generator_degree(i: usize) -> usize {
        2 * i + 1
    }

    fn var(i: usize) -> Self {
        GPoly(MPoly::var(i))
    }

    fn to_gamma(&self, g: &[GammaPoly]) -> GammaPoly {
        GammaPoly::from_mpoly(self.0.substitute(|i| g[i].as_mpoly().clone()))
    }
}

fn second_order_part(f: &GPoly) -> GPoly {
    let Some(top) = f.0.max_var() else {
        return GPoly::zero();
    };
    let mut out = MPoly::zero();
    for a in 0..=top {
        let da = f.0.derivative(a);
        for b in 0..=top {
            let dab = da.derivative(b);
            if !dab.is_zero() {
                let w = int(((2 * a + 1) * (2 * b + 1)) as i64);
                out = &out + &(&MPoly::var(a + b) * &dab).scale(&w);
            }
        }
    }
    GPoly(out)
}

/// `Σ_a (2a+1) g_a ∂_a` with variable indices.
fn euler_part(f: &GPoly) -> GPoly {
    let mut out = MPoly::zero();
    for a in 0..=f.0.max_var().unwrap_or(0) {
        let da = f.0.derivative(a);
        out = &out + &(&MPoly::var(a) * &da).scale(&int(2 * a as i64 + 1));
    }
    GPoly(out)
}

/// `Σ_c w(c) Σ_{a+b=c-1} g_a g_b ∂_c`, variable indices, `c ≥ 1`.
fn merge_part(f: &GPoly, w: impl Fn(usize) -> i64) -> GPoly {
    let mut out = MPoly::zero();
    for c in 1..=f.0.max_var().unwrap_or(0) {
        let dc = f.0.derivative(c);
        if dc.is_zero() {
            continue;
        }
        let mut source = MPoly::zero();
        for a in 0..c {
            source = &source + &(&MPoly::var(a) * &MPoly::var(c - 1 - a));
        }
        out = &out + &(&source * &dc).scale(&int(w(c)));
    }
    GPoly(out)
}

/// The displayed terms of `D` in the `g` coordinates.
fn d_leading(f: &GPoly) -> GPoly {
    let half_g1 = (&GPoly::var(0) * f).scale(&Rational::new(1.into(), 2.into()));
    // (r + s) with g_{r+s} = variable c gives c + 1
    let merge = merge_part(f, |c| c as i64 + 1);
    &(&(&half_g1 + &second_order_part(f)) - &euler_part(f)) + &merge
}

/// The displayed terms of `U` in the `g` coordinates.
fn u_leading(f: &GPoly, alpha: &Rational) -> GPoly {
    let half_g1 = (&GPoly::var(0) * f).scale(&Rational::new(1.into(), 2.into()));
    let half_alpha = f.scale(&(alpha / int(2)));
    let d_g1 = GPoly(f.0.derivative(0)).scale(alpha);
    let merge = merge_part(f, |c| c as i64);
    let first = &(&half_g1 + &half_alpha) + &d_g1;
    &(&(&first + &second_order_part(f)) + &euler_part(f)) + &merge
}

/// The leading terms of `D` and `U` in the `g` coordinates: on every `g`-monomial `f` of
/// degree `≤ max_deg`, the remainder after subtracting the displayed terms has degree `≤ deg f - 2`.
///
/// Only `g_k` with `2k - 1 ≤ max_deg + 1` can occur, which bounds the terms that contribute.
pub fn verify_g_basis_leading_terms(alpha: &Rational, max_deg: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("leading terms of D and U in g coordinates")
        .with_param("alpha", alpha)
        .with_param("max_deg", max_deg);
    let bound = max_deg + 1;
    let g: Vec<GammaPoly> = (1..=(bound + 1) / 2).map(|k| g_symbolic(k, bound)).collect::<Result<_>>()?;
    for e in odd_monomials_upto(max_deg) {
        let fg = GPoly::from_mpoly(MPoly::monomial(e.clone(), int(1)));
        let deg = fg.degree().unwrap_or(0) as i64;
        let f = fg.to_gamma(&g);
        let label = g_monomial_label(&e);

        let d_rem = &d_op(&f, max_deg)? - &d_leading(&fg).to_gamma(&g);
        report.record(
            format!("deg(D {label} - leading) <= {}", deg - 2),
            deg - 2,
            degree_label(&d_rem),
            d_rem.degree_at_most(deg - 2),
        );
        let u_rem = &u_op(&f, alpha, max_deg)? - &u_leading(&fg, alpha).to_gamma(&g);
        report.record(
            format!("deg(U {label} - leading) <= {}", deg - 2),
            deg - 2,
            degree_label(&u_rem),
            u_rem.degree_at_most(deg - 2),
        );
    }
    Ok(report)
}

fn g_monomial_label(e: &Exponents) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("g{}", i + 1) } else { format!("g{}^{k}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn degree_label(f: &GammaPoly) -> String {
    f.degree().map_or("-inf".into(), |d| d.to_string())
}

/// `B̃ = UD - ¼(g₁+α)(g₁+2)` keeps the degree, and its top component is `B`,
/// on every power-sum monomial of degree `≤ max_deg`.
pub fn verify_b_tilde_top_component(alpha: &Rational, max_deg: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("zero-degree operator B~ and its top component B")
        .with_param("alpha", alpha)
        .with_param("max_deg", max_deg);
    for e in odd_monomials_upto(max_deg) {
        let f = GammaPoly::from_mpoly(MPoly::monomial(e, int(1)));
        let deg = f.degree().unwrap_or(0) as i64;
        let bt = b_tilde_op(&f, alpha, max_deg)?;
        report.record(format!("deg(B~ {f}) <= {deg}"), deg, degree_label(&bt), bt.degree_at_most(deg));
        let rem = &bt - &b_op(&f, alpha);
        report.record(
            format!("deg(B~ {f} - B {f}) <= {}", deg - 1),
            deg - 1,
            degree_label(&rem),
            rem.degree_at_most(deg - 1),
        );
    }
    Ok(report)
}

/// `B(p₁ f) = p₁ B(f)` on every monomial of degree `≤ max_deg`.
pub fn verify_b_commutes_with_p1(alpha: &Rational, max_deg: usize) -> VerificationReport {
    let mut report =
        VerificationReport::new("B commutes with p1").with_param("alpha", alpha).with_param("max_deg", max_deg);
    let p1 = GammaPoly::p(1);
    for e in odd_monomials_upto(max_deg) {
        let f = GammaPoly::from_mpoly(MPoly::monomial(e, int(1)));
        report.check_eq(format!("B(p1 * {f})"), &(&p1 * &b_op(&f, alpha)), &b_op(&(&p1 * &f), alpha));
    }
    report
}

/// Exponent vectors over `q₂, q₄, …` (degrees 3, 5, …) of total degree at most `m`.
fn quotient_monomials_upto(m: usize) -> Vec<Exponents> {
    odd_monomials_upto(m)
        .into_iter()
        .filter(|e| e.first().copied().unwrap_or(0) == 0)
        .map(|e| e.into_iter().skip(1).collect())
        .collect()
}

/// The two forms of `A` agree with each other and with the projection of `B`;
/// `A f = -m(m - 1 + α/2) f + lower` on monomials of degree `m ≤ max_deg`.
pub fn verify_quotient_operator(alpha: &Rational, max_mu: usize, max_deg: usize) -> VerificationReport {
    let mut report = VerificationReport::new("pre-generator A")
        .with_param("alpha", alpha)
        .with_param("max_mu", max_mu)
        .with_param("max_deg", max_deg);
    for mu in diagrams_upto(max_mu) {
        report.check_eq(format!("A Q°_{mu}"), &a_on_q(&mu, alpha), &a_op(&q_circ(&mu), alpha));
    }
    for e in quotient_monomials_upto(max_deg) {
        let f = QuotientPoly::from_mpoly(MPoly::monomial(e, int(1)));
        let af = a_op(&f, alpha);
        report.check_eq(format!("A({f}) = proj B(lift {f})"), &project(&b_op(&lift(&f), alpha)), &af);
        let m = f.degree().unwrap_or(0) as i64;
        let eigen = int(m) * (int(m - 1) + alpha / int(2));
        let rest = &af + &f.scale(&eigen);
        report.record(
            format!("deg(A({f}) + {eigen} {f}) < {m}"),
            m - 1,
            rest.degree().map_or("-inf".into(), |d| d.to_string()),
            rest.degree_at_most(m - 1),
        );
    }
    report
}
