//! The simplex side: embeddings, moment coordinates, exact and Monte Carlo moments,
//! reconstruction of points from moments, and the doubling into the Thoma simplex.

use num_traits::{Num, One, Zero};
use serde::Serialize;

use crate::chains::Walker;
use crate::diagrams::StrictPartition;
use crate::error::{domain, Error, Result};
use crate::gamma::{expand_in_qstar, GammaPoly};
use crate::measures::{h_closed_form, multiplicative_measure, multiplicative_measure_with, Alpha};
use crate::par::Exec;
use crate::rational::{big, falling_factorial, int, pow2, to_f64, Rational};

/// A point of `Ω₊`: a nonincreasing, finitely supported sequence with sum at most 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexPoint<T> {
    x: Vec<T>,
}

impl<T: Num + Clone + PartialOrd> SimplexPoint<T> {
    /// Validates the ordering and the mass; trailing zeros are dropped.
    pub fn new(mut x: Vec<T>) -> Result<Self> {
        while x.last().is_some_and(|v| v.is_zero()) {
            x.pop();
        }
        if x.iter().any(|v| *v < T::zero()) {
            return domain("simplex coordinates must be nonnegative");
        }
        if x.windows(2).any(|w| w[0] < w[1]) {
            return domain("simplex coordinates must be nonincreasing");
        }
        let total = x.iter().cloned().fold(T::zero(), |a, b| a + b);
        if total > T::one() {
            return domain("simplex coordinates must sum to at most 1");
        }
        Ok(SimplexPoint { x })
    }

    pub fn zero() -> Self {
        SimplexPoint { x: Vec::new() }
    }

    /// The nonzero coordinates.
    pub fn coords(&self) -> &[T] {
        &self.x
    }

    /// `x_i` for `i ≥ 1`, zero past the support.
    pub fn coord(&self, i: usize) -> T {
        self.x.get(i - 1).cloned().unwrap_or_else(T::zero)
    }

    /// `γ = 1 - Σ x_i`.
    pub fn gamma(&self) -> T {
        self.x.iter().cloned().fold(T::one(), |a, b| a - b)
    }

    /// `q_m = Σ x_i^{m+1}`.
    pub fn moment(&self, m: usize) -> T {
        self.x.iter().map(|v| num_traits::pow(v.clone(), m + 1)).fold(T::zero(), |a, b| a + b)
    }
}

/// `ι_n(λ) = (λ₁/n, λ₂/n, …)`.
pub fn embed(lambda: &StrictPartition, n: usize) -> Result<SimplexPoint<Rational>> {
    if n == 0 || lambda.weight() != n {
        return domain(format!("{lambda} does not have weight {n}"));
    }
    let nr = int(n as i64);
    SimplexPoint::new(lambda.parts().iter().map(|&p| int(p as i64) / &nr).collect())
}

/// `q_{2k}(ι_n(λ))` in floating point.
pub fn embedded_moment_f64(lambda: &StrictPartition, k: usize) -> f64 {
    let n = lambda.weight() as f64;
    lambda.parts().iter().map(|&p| (p as f64 / n).powi(2 * k as i32 + 1)).sum()
}

/// Moment coordinates `q_m` at the listed indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentVector<T> {
    pub indices: Vec<usize>,
    pub values: Vec<T>,
}

impl<T: Num + Clone + PartialOrd> MomentVector<T> {
    /// `q_m` at every index in `indices`.
    pub fn of(p: &SimplexPoint<T>, indices: impl IntoIterator<Item = usize>) -> Self {
        let indices: Vec<usize> = indices.into_iter().collect();
        let values = indices.iter().map(|&m| p.moment(m)).collect();
        MomentVector { indices, values }
    }

    pub fn get(&self, m: usize) -> Option<&T> {
        self.indices.iter().position(|&i| i == m).map(|j| &self.values[j])
    }
}

/// `q₂, q₄, …, q_{2K}`.
pub fn moments<T: Num + Clone + PartialOrd>(p: &SimplexPoint<T>, depth: usize) -> MomentVector<T> {
    MomentVector::of(p, (1..=depth).map(|k| 2 * k))
}

/// `E_{M_n^α}[f]` by summation over `𝕊_n`.
pub fn exact_moment(n: usize, alpha: &Alpha, f: &GammaPoly) -> Result<Rational> {
    exact_moment_with(n, alpha, f, Exec::default())
}

pub fn exact_moment_with(n: usize, alpha: &Alpha, f: &GammaPoly, exec: Exec) -> Result<Rational> {
    let m = multiplicative_measure_with(n, alpha, exec)?;
    let terms = exec.map_range(0..m.level.len(), |i| &m.weights[i] * f.evaluate(&m.level.states[i]));
    Ok(terms.into_iter().sum())
}

/// `E_{M_n^α}[Q*_μ] = 2^{|μ|} n↓|μ| M_{|μ|}^α(μ) / h(μ)`.
pub fn expected_qstar(n: usize, alpha: &Alpha, mu: &StrictPartition) -> Result<Rational> {
    let k = mu.weight();
    if k > n {
        return Ok(Rational::zero());
    }
    let mk = multiplicative_measure(k, alpha)?.get(mu);
    Ok(pow2(k as i64) * big(falling_factorial(n as i64, k as u32)) * mk / big(h_closed_form(mu)))
}

/// `E_{M_n^α}[f]` through the expansion of `f` in the `Q*` basis.
pub fn exact_moment_via_qstar(n: usize, alpha: &Alpha, f: &GammaPoly) -> Result<Rational> {
    let degree = f.degree().unwrap_or(0);
    let mut total = Rational::zero();
    for (mu, c) in expand_in_qstar(f, degree)? {
        total += c * expected_qstar(n, alpha, &mu)?;
    }
    Ok(total)
}

/// `4/(α+4)`, the limiting mean of `q₂`; `1` for the Plancherel family.
pub fn limiting_mean_q2(alpha: &Alpha) -> Rational {
    match alpha {
        Alpha::Finite(a) => int(4) / (a + int(4)),
        Alpha::Infinite => Rational::one(),
    }
}

/// One row of the limit trend: `E[q₂∘ι_n] = E[p₃]/n³` and its distance to the limit.
#[derive(Debug, Clone, Serialize)]
pub struct TrendPoint {
    pub n: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub mean_q2: Rational,
    pub gap: f64,
}

pub fn limit_trend(alpha: &Alpha, ns: impl IntoIterator<Item = usize>) -> Result<Vec<TrendPoint>> {
    let limit = limiting_mean_q2(alpha);
    ns.into_iter()
        .map(|n| {
            let mean_q2 = exact_moment(n, alpha, &GammaPoly::p(3))? / int(n as i64).pow(3);
            let gap = to_f64(&(&mean_q2 - &limit)).abs();
            Ok(TrendPoint { n, mean_q2, gap })
        })
        .collect()
}

/// Settings for the stationary Monte Carlo estimator.
#[derive(Debug, Clone)]
pub struct McConfig {
    /// Recorded steps, split evenly across replicas.
    pub steps: usize,
    /// Discarded steps at the start of each replica.
    pub burn_in: usize,
    pub replicas: usize,
    /// Batches per replica for the batch-means error.
    pub batches: usize,
    /// Fixed start; `None` draws from `M_n^α`.
    pub start: Option<StrictPartition>,
    pub exec: Exec,
}

impl McConfig {
    pub fn new(steps: usize, burn_in: usize) -> Self {
        McConfig { steps, burn_in, replicas: 8, batches: 8, start: None, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
    pub alpha: Alpha,
    pub steps: usize,
    /// The estimated moment is `q_{2k}`.
    pub k: usize,
}

/// Time average of `q_{2k}∘ι_n` along the chain `T_n`, with a batch-means standard error.
pub fn stationary_moment_mc(
    n: usize,
    alpha: &Alpha,
    k: usize,
    steps: usize,
    burn_in: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    stationary_moment_mc_with(n, alpha, k, seed, &McConfig::new(steps, burn_in))
}

pub fn stationary_moment_mc_with(
    n: usize,
    alpha: &Alpha,
    k: usize,
    seed: u64,
    config: &McConfig,
) -> Result<MomentEstimate> {
    if k == 0 {
        return domain("moment index k must be at least 1");
    }
    if config.replicas == 0 || config.batches == 0 {
        return domain("need at least one replica and one batch");
    }
    let per_replica = config.steps / config.replicas;
    let batch_len = per_replica / config.batches;
    if batch_len == 0 {
        return domain(format!(
            "{} steps are too few for {} replicas of {} batches",
            config.steps, config.replicas, config.batches
        ));
    }
    let runs = config.exec.map_range(0..config.replicas, |r| -> Result<Vec<f64>> {
        let mut walker = Walker::new(n, alpha, seed, r as u64, config.start.clone())?;
        for _ in 0..config.burn_in {
            walker.next();
        }
        let mut means = Vec::with_capacity(config.batches);
        for _ in 0..config.batches {
            let sum: f64 = walker.by_ref().take(batch_len).map(|s| embedded_moment_f64(&s, k)).sum();
            means.push(sum / batch_len as f64);
        }
        Ok(means)
    });
    let batch_means: Vec<f64> = runs.into_iter().collect::<Result<Vec<_>>>()?.concat();
    let b = batch_means.len() as f64;
    let mean = batch_means.iter().sum::<f64>() / b;
    let var = if b > 1.0 { batch_means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (b - 1.0) } else { f64::NAN };
    Ok(MomentEstimate {
        mean,
        stderr: (var / b).sqrt(),
        n,
        alpha: alpha.clone(),
        steps: batch_len * batch_means.len(),
        k,
    })
}

/// One CSV row of a moment trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct MomentRow {
    pub step: usize,
    /// `step / n²`.
    pub scaled_time: f64,
    /// `q₂, q₄, …`.
    pub q: Vec<f64>,
}

pub fn moment_rows(states: &[StrictPartition], depth: usize) -> Vec<MomentRow> {
    states
        .iter()
        .enumerate()
        .map(|(step, s)| {
            let n = s.weight().max(1) as f64;
            MomentRow {
                step,
                scaled_time: step as f64 / (n * n),
                q: (1..=depth).map(|k| embedded_moment_f64(s, k)).collect(),
            }
        })
        .collect()
}

/// Sample autocorrelation at `lag`.
pub fn autocorrelation(series: &[f64], lag: usize) -> f64 {
    let len = series.len();
    if lag >= len {
        return f64::NAN;
    }
    let mean = series.iter().sum::<f64>() / len as f64;
    let var: f64 = series.iter().map(|v| (v - mean).powi(2)).sum();
    let cov: f64 = series.iter().zip(&series[lag..]).map(|(a, b)| (a - mean) * (b - mean)).sum();
    cov / var
}

/// Coordinates recovered from moments, each with the half-width of its bracket.
#[derive(Debug, Clone, Serialize)]
pub struct Reconstruction {
    pub point: Vec<f64>,
    pub error_bounds: Vec<f64>,
}

impl Reconstruction {
    pub fn max_error(&self) -> f64 {
        self.error_bounds.iter().cloned().fold(0.0, f64::max)
    }
}

/// Peels off `x₁, x₂, …` one at a time.
///
/// After removing the coordinates already found, the residual moments `r_k` satisfy
/// `(r_K / r_K')^{1/(K-K')} ≤ x_next ≤ r_K^{1/(K+1)}` for the two largest indices
/// `K > K'` whose residual is still well above rounding noise. The estimate is the
/// midpoint and the bound is the half-width.
pub fn reconstruct_point(m: &MomentVector<f64>, depth: usize) -> Result<Reconstruction> {
    let mut pairs: Vec<(usize, f64)> = m.indices.iter().cloned().zip(m.values.iter().cloned()).collect();
    pairs.sort_by_key(|p| p.0);
    if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
        return domain("repeated moment index");
    }
    for &(k, v) in &pairs {
        if !(0.0..=1.0 + 1e-12).contains(&v) {
            return Err(Error::Domain(format!("moment q_{k} = {v} lies outside [0, 1]")));
        }
    }
    if pairs.windows(2).any(|w| w[1].1 > w[0].1 * (1.0 + 1e-12)) {
        return domain("moments must be nonincreasing in the index");
    }
    let mut point = Vec::new();
    let mut error_bounds = Vec::new();
    let mut residual: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    for _ in 0..depth {
        let reliable: Vec<usize> =
            (0..pairs.len()).filter(|&i| residual[i] > 1e-10 * pairs[i].1 && residual[i] > f64::MIN_POSITIVE).collect();
        let Some(&top) = reliable.last() else { break };
        let (kk, rk) = (pairs[top].0 as f64, residual[top]);
        let upper = rk.powf(1.0 / (kk + 1.0)).min(point.last().copied().unwrap_or(1.0));
        let lower = match reliable.len() {
            1 => 0.0,
            len => {
                let below = reliable[len - 2];
                (rk / residual[below]).powf(1.0 / (kk - pairs[below].0 as f64))
            }
        }
        .min(upper);
        let x = (upper + lower) / 2.0;
        point.push(x);
        error_bounds.push((upper - lower) / 2.0);
        for (i, r) in residual.iter_mut().enumerate() {
            *r = (*r - x.powi(pairs[i].0 as i32 + 1)).max(0.0);
        }
    }
    Ok(Reconstruction { point, error_bounds })
}

/// `q̂_m(Tx)` for `m = 1..=max_m`, where `Tx` places `x/2` in both rows of the Thoma simplex:
/// `q̂_m = Σ (x_i/2)^{m+1} + (-1)^m Σ (x_i/2)^{m+1}`.
pub fn thoma_double_moments<T: Num + Clone + PartialOrd>(p: &SimplexPoint<T>, max_m: usize) -> Vec<T> {
    let two = T::one() + T::one();
    let halves: Vec<T> = p.coords().iter().map(|v| v.clone() / two.clone()).collect();
    (1..=max_m)
        .map(|m| {
            let alpha_row: T = halves.iter().map(|v| num_traits::pow(v.clone(), m + 1)).fold(T::zero(), |a, b| a + b);
            let beta_row = alpha_row.clone();
            if m % 2 == 0 {
                alpha_row + beta_row
            } else {
                alpha_row - beta_row
            }
        })
        .collect()
}
