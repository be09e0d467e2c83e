//! Rational functions attached to Kerov coordinates and the coordinates `p_m`, `g_m`, `ĝ_m`.
//!
//! With `X' = X \ {0}` and `ξ' = ξ(ξ+1)`:
//!
//! * `R↑(v) = Π_Y (v - y') / (v Π_X' (v - x')) = Σ_X θ↑_x / (v - x')`
//! * `R↓(v) = Π_X' (v - x') / Π_Y (v - y') = 1 - Σ_Y θ↓_y / (v - y')`
//! * `Φ(v) = v R↑(v)`, expanded at `v = ∞` as
//!   `log Φ = Σ p_m v^{-m}/m`, `Φ = 1 + Σ g_m v^{-m}`, `1/Φ = 1 - Σ ĝ_m v^{-m}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagrams::{enumerate_strict, StrictPartition};
use crate::error::{domain, Result};
use crate::measures::{down_prob, up_prob, Alpha};
use crate::par::Exec;
use crate::rational::{fmt_list, int, Rational};
use crate::report::VerificationReport;
use crate::upoly::UPoly;

/// `x(x+1)`.
pub fn shifted_square(x: i64) -> Rational {
    int(x * (x + 1))
}

/// A ratio of two univariate polynomials in `v`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalFunctionOneVar {
    pub num: UPoly,
    pub den: UPoly,
}

impl RationalFunctionOneVar {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return domain("rational function with zero denominator");
        }
        Ok(RationalFunctionOneVar { num, den })
    }

    pub fn one() -> Self {
        let one = UPoly::constant(Rational::one());
        RationalFunctionOneVar { num: one.clone(), den: one }
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_as(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunctionOneVar { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn eval(&self, v: &Rational) -> Option<Rational> {
        let d = self.den.eval(v);
        (!d.is_zero()).then(|| self.num.eval(v) / d)
    }
}

impl fmt::Display for RationalFunctionOneVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

fn product_over(contents: &[i64]) -> UPoly {
    let roots: Vec<Rational> = contents.iter().map(|&c| shifted_square(c)).collect();
    UPoly::from_roots(&roots)
}

/// `R↑(v; λ)`.
pub fn r_up(lambda: &StrictPartition) -> RationalFunctionOneVar {
    let k = lambda.kerov_coordinates();
    let den = &UPoly::var() * &product_over(&k.x_prime());
    RationalFunctionOneVar { num: product_over(&k.y), den }
}

/// `R↓(v; λ)`.
pub fn r_down(lambda: &StrictPartition) -> RationalFunctionOneVar {
    let k = lambda.kerov_coordinates();
    RationalFunctionOneVar { num: product_over(&k.x_prime()), den: product_over(&k.y) }
}

/// `Φ(v; λ)` in the `Y / X'` product form.
pub fn phi(lambda: &StrictPartition) -> RationalFunctionOneVar {
    let k = lambda.kerov_coordinates();
    RationalFunctionOneVar { num: product_over(&k.y), den: product_over(&k.x_prime()) }
}

/// `Φ(v; λ) = Π_i (v - λ_i(λ_i - 1)) / (v - λ_i(λ_i + 1))`, straight from the parts.
pub fn phi_from_parts(lambda: &StrictPartition) -> RationalFunctionOneVar {
    let mut out = RationalFunctionOneVar::one();
    for &p in lambda.parts() {
        let p = p as i64;
        out = out.mul(&RationalFunctionOneVar {
            num: UPoly::linear_root(&shifted_square(p - 1)),
            den: UPoly::linear_root(&shifted_square(p)),
        });
    }
    out
}

/// `(v - ξ)² / ((v - ξ)² - 2(v + ξ))` with `ξ = x(x+1)`: the ratio `Φ(λ + □(x)) / Φ(λ)`.
pub fn phi_ratio_add(x: i64) -> RationalFunctionOneVar {
    let xi = shifted_square(x);
    let sq = UPoly::linear_root(&xi).pow(2);
    let shift = UPoly::new(vec![xi * int(2), int(2)]);
    RationalFunctionOneVar { den: &sq - &shift, num: sq }
}

/// The inverse form: the ratio `Φ(λ - □(y)) / Φ(λ)`.
pub fn phi_ratio_remove(y: i64) -> RationalFunctionOneVar {
    let f = phi_ratio_add(y);
    RationalFunctionOneVar { num: f.den, den: f.num }
}

/// Partial-fraction coefficients of `R↑`, by residues at the simple poles `x(x+1)`.
pub fn theta_up(lambda: &StrictPartition) -> BTreeMap<i64, Rational> {
    let k = lambda.kerov_coordinates();
    let xp = k.x_prime();
    k.x.iter()
        .map(|&xh| {
            let v = shifted_square(xh);
            let num: Rational = k.y.iter().map(|&y| &v - shifted_square(y)).product();
            let den: Rational = if xh == 0 {
                xp.iter().map(|&x| -shifted_square(x)).product()
            } else {
                &v * xp.iter().filter(|&&x| x != xh).map(|&x| &v - shifted_square(x)).product::<Rational>()
            };
            (xh, num / den)
        })
        .collect()
}

/// Coefficients `θ↓_y` in `R↓ = 1 - Σ θ↓_y / (v - y(y+1))`; they sum to `2|λ|`.
pub fn theta_down(lambda: &StrictPartition) -> Result<BTreeMap<i64, Rational>> {
    if lambda.is_empty() {
        return domain("theta_down is undefined on the empty diagram");
    }
    let k = lambda.kerov_coordinates();
    let xp = k.x_prime();
    Ok(k.y
        .iter()
        .map(|&yh| {
            let v = shifted_square(yh);
            let num: Rational = xp.iter().map(|&x| &v - shifted_square(x)).product();
            let den: Rational = k.y.iter().filter(|&&y| y != yh).map(|&y| &v - shifted_square(y)).product();
            (yh, -num / den)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordinateKind {
    BoldP,
    G,
    GHat,
}

/// The first `M` coordinates of one kind, indexed `m = 1..M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateVector {
    pub kind: CoordinateKind,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub values: Vec<Rational>,
}

fn power(base: &Rational, e: usize) -> Rational {
    num_traits::pow(base.clone(), e)
}

/// Coordinates from the closed sums over `X`, `Y` and the θ coefficients.
pub fn coordinates(lambda: &StrictPartition, kind: CoordinateKind, m: usize) -> CoordinateVector {
    let k = lambda.kerov_coordinates();
    let values = match kind {
        CoordinateKind::BoldP => (1..=m)
            .map(|j| {
                let xs: Rational = k.x.iter().map(|&x| power(&shifted_square(x), j)).sum();
                let ys: Rational = k.y.iter().map(|&y| power(&shifted_square(y), j)).sum();
                xs - ys
            })
            .collect(),
        CoordinateKind::G => {
            let theta = theta_up(lambda);
            (1..=m).map(|j| theta.iter().map(|(&x, t)| t * power(&shifted_square(x), j)).sum()).collect()
        }
        CoordinateKind::GHat => {
            let theta = if lambda.is_empty() { BTreeMap::new() } else { theta_down(lambda).expect("nonempty") };
            (1..=m).map(|j| theta.iter().map(|(&y, t)| t * power(&shifted_square(y), j - 1)).sum()).collect()
        }
    };
    CoordinateVector { kind, values }
}

/// Power series in `w = 1/v` of `Φ`, coefficients of `w^0..=w^order`.
pub fn phi_series(lambda: &StrictPartition, order: usize) -> Vec<Rational> {
    let k = lambda.kerov_coordinates();
    // Φ = Π_Y (1 - y' w) / Π_X' (1 - x' w)
    let factor = |c: i64| UPoly::new(vec![Rational::one(), -shifted_square(c)]);
    let num = k.y.iter().fold(UPoly::constant(Rational::one()), |acc, &y| &acc * &factor(y));
    let den = k.x_prime().iter().fold(UPoly::constant(Rational::one()), |acc, &x| &acc * &factor(x));
    series_div(num.coeffs(), den.coeffs(), order)
}

fn coeff(v: &[Rational], i: usize) -> Rational {
    v.get(i).cloned().unwrap_or_default()
}

/// `a / b` as power series through `w^order`; `b(0)` must be nonzero.
pub fn series_div(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let b0 = coeff(b, 0);
    let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut c = coeff(a, i);
        for j in 1..=i {
            c -= coeff(b, j) * &q[i - j];
        }
        q.push(c / &b0);
    }
    q
}

/// `log f` through `w^order` for a series with `f(0) = 1`.
pub fn series_log(f: &[Rational], order: usize) -> Vec<Rational> {
    let mut l = vec![Rational::zero(); order + 1];
    for m in 1..=order {
        let mut c = coeff(f, m) * int(m as i64);
        for k in 1..m {
            c -= &l[k] * int(k as i64) * coeff(f, m - k);
        }
        l[m] = c / int(m as i64);
    }
    l
}

/// Coordinates read off the expansion of `Φ` at infinity.
pub fn coordinates_from_series(lambda: &StrictPartition, kind: CoordinateKind, m: usize) -> CoordinateVector {
    let phi = phi_series(lambda, m);
    let values = match kind {
        CoordinateKind::BoldP => {
            let l = series_log(&phi, m);
            (1..=m).map(|j| &l[j] * int(j as i64)).collect()
        }
        CoordinateKind::G => phi[1..=m].to_vec(),
        CoordinateKind::GHat => {
            let inv = series_div(&[Rational::one()], &phi, m);
            inv[1..=m].iter().map(|c| -c).collect()
        }
    };
    CoordinateVector { kind, values }
}

fn check_diagram(lambda: &StrictPartition, order: usize, report: &mut VerificationReport) {
    let n = lambda.weight() as i64;
    let k = lambda.kerov_coordinates();
    report.record(
        format!("interlacing {lambda}"),
        "ok",
        k.interlacing().map_or("fail", |_| "ok"),
        k.interlacing().is_ok(),
    );
    report.check_eq(format!("from_kerov {lambda}"), lambda, &k.to_partition().unwrap_or_default());

    let area: Rational = k.x.iter().map(|&x| shifted_square(x)).sum::<Rational>()
        - k.y.iter().map(|&y| shifted_square(y)).sum::<Rational>();
    report.check_eq(format!("sum x' - sum y' at {lambda}"), &int(2 * n), &area);

    let up = theta_up(lambda);
    report.check_eq(format!("sum theta_up {lambda}"), &Rational::one(), &up.values().sum());
    for (&x, t) in &up {
        let p = up_prob(lambda, x, &Alpha::Infinite).unwrap_or_default();
        report.check_eq(format!("theta_up_{x}({lambda}) = p_up"), &p, t);
    }
    if !lambda.is_empty() {
        for (&y, t) in &theta_down(lambda).expect("nonempty") {
            let mu = lambda.remove_box(y).expect("removable");
            let p = down_prob(lambda, &mu).expect("adjacent") * int(2 * n);
            report.check_eq(format!("theta_down_{y}({lambda}) = 2n p_down"), &p, t);
        }
    }

    let phi = phi(lambda);
    let from_parts = phi_from_parts(lambda);
    report.record(format!("Phi product forms {lambda}"), &phi, &from_parts, phi.same_as(&from_parts));
    let v_r_up = RationalFunctionOneVar { num: &UPoly::var() * &r_up(lambda).num, den: r_up(lambda).den };
    report.record(format!("Phi = v R_up at {lambda}"), &phi, &v_r_up, phi.same_as(&v_r_up));
    for (x, nu) in lambda.up_neighbors() {
        let ratio = phi_from_parts(&nu).div(&phi).expect("nonzero");
        report.record(format!("Phi({nu})/Phi({lambda})"), phi_ratio_add(x), &ratio, ratio.same_as(&phi_ratio_add(x)));
    }
    for (y, mu) in lambda.down_neighbors() {
        let ratio = phi_from_parts(&mu).div(&phi).expect("nonzero");
        report.record(
            format!("Phi({mu})/Phi({lambda})"),
            phi_ratio_remove(y),
            &ratio,
            ratio.same_as(&phi_ratio_remove(y)),
        );
    }

    let [p, g, gh] = [CoordinateKind::BoldP, CoordinateKind::G, CoordinateKind::GHat].map(|kind| {
        let closed = coordinates(lambda, kind, order);
        let series = coordinates_from_series(lambda, kind, order);
        report.check_eq(
            format!("{kind:?} closed sums vs expansion at {lambda}"),
            &fmt_list(&series.values),
            &fmt_list(&closed.values),
        );
        closed.values
    });
    report.check_eq(format!("g1 = 2n at {lambda}"), &int(2 * n), &g[0]);
    report.check_eq(format!("ghat1 = 2n at {lambda}"), &int(2 * n), &gh[0]);
    report.check_eq(format!("p1 = 2n at {lambda}"), &int(2 * n), &p[0]);
    for kk in 2..=order {
        let rhs: Rational = &p[kk - 1] + (1..kk).map(|j| &p[j - 1] * &g[kk - j - 1]).sum::<Rational>();
        report.check_eq(format!("{kk} g_{kk} recurrence at {lambda}"), &(&g[kk - 1] * int(kk as i64)), &rhs);
        let rhs: Rational = &g[kk - 1] - (1..kk).map(|j| &g[kk - j - 1] * &gh[j - 1]).sum::<Rational>();
        report.check_eq(format!("ghat_{kk} recurrence at {lambda}"), &gh[kk - 1], &rhs);
    }
}

/// Interlacing, the θ coefficients as transition probabilities, the forms of `Φ`,
/// and the relations among `p_m`, `g_m`, `ĝ_m` (through `m = order`) on all `|λ| ≤ max_weight`.
pub fn verify_kerov(max_weight: usize, order: usize, exec: Exec) -> VerificationReport {
    let lambdas: Vec<StrictPartition> = (0..=max_weight).flat_map(enumerate_strict).collect();
    let parts = exec.map(&lambdas, |lambda| {
        let mut r = VerificationReport::new("kerov");
        check_diagram(lambda, order, &mut r);
        r
    });
    let mut report =
        VerificationReport::new("kerov coordinates").with_param("max_weight", max_weight).with_param("order", order);
    for r in parts {
        report.extend(r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::from_parts(p)
    }

    #[test]
    fn theta_up_examples() {
        assert_eq!(theta_up(&StrictPartition::empty()), BTreeMap::from([(0, int(1))]));
        assert_eq!(theta_up(&sp(&[2])), BTreeMap::from([(0, ratio(1, 3)), (2, ratio(2, 3))]));
        assert_eq!(theta_up(&sp(&[3])), BTreeMap::from([(0, ratio(1, 2)), (3, ratio(1, 2))]));
    }

    #[test]
    fn theta_down_examples() {
        assert_eq!(theta_down(&sp(&[1])).unwrap(), BTreeMap::from([(0, int(2))]));
        assert_eq!(theta_down(&sp(&[3, 1])).unwrap(), BTreeMap::from([(0, int(4)), (2, int(4))]));
        assert_eq!(theta_down(&sp(&[2, 1])).unwrap(), BTreeMap::from([(0, int(6))]));
        assert!(theta_down(&StrictPartition::empty()).is_err());
    }

    #[test]
    fn partial_fractions_reassemble() {
        // Σ θ↑_x / (v - x') recombines to R↑, and 1 - Σ θ↓_y / (v - y') to R↓
        for lambda in [sp(&[2]), sp(&[6, 5, 1]), sp(&[4, 2, 1]), sp(&[5, 3])] {
            let up = r_up(&lambda);
            let down = r_down(&lambda);
            for v in [ratio(1, 3), int(-7), ratio(101, 2)] {
                let s: Rational = theta_up(&lambda).iter().map(|(&x, t)| t / (&v - shifted_square(x))).sum();
                assert_eq!(up.eval(&v).unwrap(), s);
                let s: Rational = theta_down(&lambda).unwrap().iter().map(|(&y, t)| t / (&v - shifted_square(y))).sum();
                assert_eq!(down.eval(&v).unwrap(), int(1) - s);
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert!(phi(&StrictPartition::empty()).same_as(&RationalFunctionOneVar::one()));
        let two = RationalFunctionOneVar::new(UPoly::linear_root(&int(2)), UPoly::linear_root(&int(6))).unwrap();
        assert!(phi(&sp(&[2])).same_as(&two));
        assert!(phi_from_parts(&sp(&[2])).same_as(&two));
        let big =
            RationalFunctionOneVar::new(UPoly::from_roots([&int(0), &int(20)]), UPoly::from_roots([&int(2), &int(42)]))
                .unwrap();
        assert!(phi(&sp(&[6, 5, 1])).same_as(&big));
        assert!(phi_from_parts(&sp(&[6, 5, 1])).same_as(&big));
        let v_r_up =
            RationalFunctionOneVar { num: &UPoly::var() * &r_up(&sp(&[6, 5, 1])).num, den: r_up(&sp(&[6, 5, 1])).den };
        assert!(v_r_up.same_as(&big));
    }

    #[test]
    fn coordinate_examples() {
        assert_eq!(coordinates(&sp(&[1]), CoordinateKind::BoldP, 1).values, vec![int(2)]);
        assert_eq!(coordinates(&sp(&[2]), CoordinateKind::G, 2).values, vec![int(4), int(24)]);
        assert_eq!(coordinates(&sp(&[3, 1]), CoordinateKind::GHat, 2).values, vec![int(8), int(24)]);
        for kind in [CoordinateKind::BoldP, CoordinateKind::G, CoordinateKind::GHat] {
            assert!(coordinates(&StrictPartition::empty(), kind, 3).values.iter().all(Zero::is_zero));
            assert_eq!(coordinates(&sp(&[5, 2, 1]), kind, 5), coordinates_from_series(&sp(&[5, 2, 1]), kind, 5));
        }
    }

    #[test]
    fn ratio_forms() {
        let lambda = sp(&[4, 1]);
        for x in lambda.addable_contents() {
            let lhs = phi(&lambda.add_box(x).unwrap()).div(&phi(&lambda)).unwrap();
            assert!(lhs.same_as(&phi_ratio_add(x)));
        }
        for y in lambda.removable_contents() {
            let lhs = phi(&lambda.remove_box(y).unwrap()).div(&phi(&lambda)).unwrap();
            assert!(lhs.same_as(&phi_ratio_remove(y)));
        }
    }

    #[test]
    fn rational_function_json() {
        let s = serde_json::to_string(&phi(&sp(&[2]))).unwrap();
        assert_eq!(s, r#"{"num":["-2","1"],"den":["-6","1"]}"#);
    }

    #[test]
    fn full_verification_small() {
        let report = verify_kerov(7, 6, Exec::Sequential);
        assert!(report.passed(), "{:?}", report.first_failure());
    }
}
