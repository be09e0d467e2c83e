//! The up/down chains `T_n`: exact matrices, spectra, and a seeded sampler.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagrams::{count_strict, Level, StrictPartition};
use crate::error::{domain, Result};
use crate::gamma::{EvaluationGrid, GammaPoly};
use crate::linalg::QMatrix;
use crate::measures::{down_transitions, multiplicative_measure, up_transitions, Alpha};
use crate::operators::{d_op, u_op};
use crate::par::Exec;
use crate::rational::{fmt_list, int, to_f64, Rational};
use crate::report::VerificationReport;
use crate::upoly::isolate_real_roots;

/// Exact `T_n` over the canonical order of `𝕊_n`.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub n: usize,
    pub alpha: Alpha,
    pub level: Arc<Level>,
    pub entries: QMatrix,
}

impl Serialize for TransitionMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            n: usize,
            alpha: &'a Alpha,
            order: Vec<String>,
            entries: &'a QMatrix,
        }
        Json {
            n: self.n,
            alpha: &self.alpha,
            order: self.level.states.iter().map(|l| l.to_string()).collect(),
            entries: &self.entries,
        }
        .serialize(s)
    }
}

pub fn transition_matrix(n: usize, alpha: &Alpha) -> Result<TransitionMatrix> {
    transition_matrix_with(n, alpha, Exec::default())
}

/// `T_n(λ, λ̃) = Σ_ν p↑(λ, ν) p↓(ν, λ̃)`, one row per task.
pub fn transition_matrix_with(n: usize, alpha: &Alpha, exec: Exec) -> Result<TransitionMatrix> {
    if n == 0 {
        return domain("the chain T_n needs n ≥ 1");
    }
    if let Alpha::Finite(a) = alpha {
        Alpha::finite(a.clone())?;
    }
    let level = Arc::new(Level::new(n));
    let rows = exec.map(&level.states, |lambda| {
        let mut row = vec![Rational::zero(); level.len()];
        for (_, nu, p) in up_transitions(lambda, alpha) {
            for (_, mu, q) in down_transitions(&nu) {
                row[level.index_of(&mu).expect("same level")] += &p * q;
            }
        }
        row
    });
    Ok(TransitionMatrix { n, alpha: alpha.clone(), level, entries: QMatrix::from_rows(rows) })
}

/// Row sums, stationarity of `M_n^α` and detailed balance.
pub fn verify_transition_matrix(t: &TransitionMatrix) -> Result<VerificationReport> {
    let m = multiplicative_measure(t.n, &t.alpha)?;
    let mut report = VerificationReport::new("up/down chain").with_param("n", t.n).with_param("alpha", &t.alpha);
    let states = &t.level.states;
    for (i, lambda) in states.iter().enumerate() {
        let sum: Rational = t.entries.row(i).iter().sum();
        report.check_eq(format!("row sum at {lambda}"), &Rational::one(), &sum);
    }
    let moved = t.entries.vec_mul(&m.weights);
    report.check_eq("M T = M".to_string(), &fmt_list(&m.weights), &fmt_list(&moved));
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let a = &m.weights[i] * &t.entries[(i, j)];
            let b = &m.weights[j] * &t.entries[(j, i)];
            report.check_eq(format!("M({0})T({0},{1}) = M({1})T({1},{0})", states[i], states[j]), &a, &b);
        }
    }
    Ok(report)
}

/// The function-space operators `D_{n+1,n}` (rows `𝕊_{n+1}`, columns `𝕊_n`) and
/// `U_{n,n+1}` (rows `𝕊_n`, columns `𝕊_{n+1}`); `T_n = U D`.
pub fn down_up_function_ops(n: usize, alpha: &Alpha) -> Result<(QMatrix, QMatrix)> {
    let (lower, upper) = (Level::new(n), Level::new(n + 1));
    let mut d = QMatrix::zeros(upper.len(), lower.len());
    for (i, lambda) in upper.states.iter().enumerate() {
        for (_, mu, p) in down_transitions(lambda) {
            d[(i, lower.index_of(&mu).expect("level n"))] = p;
        }
    }
    let mut u = QMatrix::zeros(lower.len(), upper.len());
    for (i, nu) in lower.states.iter().enumerate() {
        if let Alpha::Finite(a) = alpha {
            Alpha::finite(a.clone())?;
        }
        for (_, kappa, p) in up_transitions(nu, alpha) {
            u[(i, upper.index_of(&kappa).expect("level n+1"))] = p;
        }
    }
    Ok((d, u))
}

/// `(D f)_{n+1} = (n+1) D_{n+1,n} f_n` and `(U f)_n = (n + α/2) U_{n,n+1} f_{n+1}`
/// for every `Q*_μ` with `|μ| ≤ max_mu`.
pub fn verify_function_operators(n: usize, alpha: &Rational, max_mu: usize) -> Result<VerificationReport> {
    let (d, u) = down_up_function_ops(n, &Alpha::finite(alpha.clone())?)?;
    let (lower, upper) = (Level::new(n), Level::new(n + 1));
    let mut report = VerificationReport::new("down and up operators on functions")
        .with_param("n", n)
        .with_param("alpha", alpha)
        .with_param("max_mu", max_mu);
    let grid = EvaluationGrid::shared(max_mu);
    for mu in grid.points.clone() {
        let f = grid.qstar(&mu).expect("on the grid");
        let on = |g: &GammaPoly, level: &Level| level.states.iter().map(|l| g.evaluate(l)).collect::<Vec<_>>();
        let df = d_op(f, max_mu)?;
        let lhs: Vec<Rational> = d.mul_vec(&on(f, &lower)).iter().map(|x| x * int(n as i64 + 1)).collect();
        report.check_eq(format!("(n+1) D Q*_{mu}"), &fmt_list(&on(&df, &upper)), &fmt_list(&lhs));
        let uf = u_op(f, alpha, max_mu)?;
        let scale = int(n as i64) + alpha / int(2);
        let lhs: Vec<Rational> = u.mul_vec(&on(f, &upper)).iter().map(|x| x * &scale).collect();
        report.check_eq(format!("(n+a/2) U Q*_{mu}"), &fmt_list(&on(&uf, &lower)), &fmt_list(&lhs));
    }
    Ok(report)
}

/// One eigenvalue with its multiplicity, exact when rational.
#[derive(Debug, Clone, Serialize)]
pub struct Eigenvalue {
    #[serde(serialize_with = "serialize_opt_rational")]
    pub value: Option<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub upper: Rational,
    pub multiplicity: usize,
}

fn serialize_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl Eigenvalue {
    /// The exact value, or the midpoint of the isolating interval.
    pub fn approx(&self) -> Rational {
        self.value.clone().unwrap_or_else(|| (&self.lower + &self.upper) / int(2))
    }

    pub fn contains(&self, v: &Rational, slack: &Rational) -> bool {
        match &self.value {
            Some(r) => (r - v).abs() <= *slack,
            None => &self.lower - slack <= *v && *v <= &self.upper + slack,
        }
    }
}

/// Eigenvalues of `T_n`, largest first.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub n: usize,
    pub alpha: Alpha,
    pub eigenvalues: Vec<Eigenvalue>,
}

impl Spectrum {
    /// Each eigenvalue repeated by multiplicity, as strings; inexact values print as decimals.
    pub fn multiset_strings(&self) -> Vec<String> {
        self.eigenvalues
            .iter()
            .flat_map(|e| {
                let s = match &e.value {
                    Some(r) => r.to_string(),
                    None => format!("{:.12}", to_f64(&e.approx())),
                };
                std::iter::repeat_n(s, e.multiplicity)
            })
            .collect()
    }
}

fn eigen_tolerance() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(10).pow(30))
}

/// Exact characteristic polynomial, square-free factorization, then Sturm isolation.
pub fn spectrum(n: usize, alpha: &Alpha) -> Result<Spectrum> {
    let t = transition_matrix(n, alpha)?;
    Ok(spectrum_of(&t))
}

pub fn spectrum_of(t: &TransitionMatrix) -> Spectrum {
    let chi = t.entries.charpoly();
    let tol = eigen_tolerance();
    let mut eigenvalues = Vec::new();
    for (factor, multiplicity) in chi.square_free_decomposition() {
        for root in isolate_real_roots(&factor, &tol) {
            eigenvalues.push(Eigenvalue { value: root.exact, lower: root.lower, upper: root.upper, multiplicity });
        }
    }
    eigenvalues.sort_by_key(|e| std::cmp::Reverse(e.approx()));
    Spectrum { n: t.n, alpha: t.alpha.clone(), eigenvalues }
}

/// `1 - m(m - 1 + α/2)/((n+1)(n + α/2))` with multiplicity `#𝕊_m - #𝕊_{m-1}`, zero multiplicities dropped.
/// For the Plancherel chain the value is `1 - m/(n+1)`.
pub fn predicted_spectrum(n: usize, alpha: &Alpha) -> Vec<(Rational, usize)> {
    let nr = int(n as i64);
    (0..=n)
        .filter_map(|m| {
            let mult = count_strict(m) - if m == 0 { 0 } else { count_strict(m - 1) };
            if mult == 0 {
                return None;
            }
            let mr = int(m as i64);
            let value = match alpha {
                Alpha::Finite(a) => {
                    let half = a / int(2);
                    Rational::one() - &mr * (&mr - int(1) + &half) / ((&nr + int(1)) * (&nr + &half))
                }
                Alpha::Infinite => Rational::one() - &mr / (&nr + int(1)),
            };
            Some((value, mult as usize))
        })
        .collect()
}

/// Computed spectrum against the predicted values and multiplicities, to within `slack`.
pub fn verify_spectrum(n: usize, alpha: &Alpha, slack: &Rational) -> Result<VerificationReport> {
    let computed = spectrum(n, alpha)?;
    let predicted = predicted_spectrum(n, alpha);
    let mut report = VerificationReport::new("spectrum of T_n")
        .with_param("n", n)
        .with_param("alpha", alpha)
        .with_param("slack", slack);
    report.check_eq("number of distinct eigenvalues".to_string(), &predicted.len(), &computed.eigenvalues.len());
    for (value, mult) in &predicted {
        let found = computed.eigenvalues.iter().find(|e| e.contains(value, slack));
        let got = found.map_or("missing".to_string(), |e| format!("{} x{}", e.approx(), e.multiplicity));
        let pass = found.is_some_and(|e| e.multiplicity == *mult);
        report.record(format!("eigenvalue {value}"), format!("{value} x{mult}"), got, pass);
    }
    Ok(report)
}

/// Seeded generator for replica `stream` of a run.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Floating-point transition weights from Kerov coordinates; one step costs `O(ℓ(λ)²)`.
#[derive(Debug, Clone)]
pub struct ChainSampler {
    alpha: Option<f64>,
}

fn sq(x: i64) -> f64 {
    (x * (x + 1)) as f64
}

impl ChainSampler {
    pub fn new(alpha: &Alpha) -> Self {
        ChainSampler { alpha: alpha.value().map(to_f64) }
    }

    /// Unnormalized up weights `(x(x+1) + α) θ↑_x`, or `θ↑_x` for the Plancherel chain.
    pub fn up_weights(&self, lambda: &StrictPartition) -> Vec<(i64, f64)> {
        let k = lambda.kerov_coordinates();
        let xp: Vec<f64> = k.x_prime().iter().map(|&x| sq(x)).collect();
        let ys: Vec<f64> = k.y.iter().map(|&y| sq(y)).collect();
        k.x.iter()
            .map(|&xh| {
                let v = sq(xh);
                // |Y| = |X'|: pair numerator and denominator factors to keep the product in range
                let theta = if xh == 0 {
                    ys.iter().zip(&xp).map(|(y, x)| y / x).product::<f64>()
                } else {
                    let den = std::iter::once(v).chain(xp.iter().filter(|&&x| x != v).map(|x| v - x));
                    ys.iter().map(|y| v - y).zip(den).map(|(a, b)| a / b).product::<f64>()
                };
                let w = match self.alpha {
                    Some(a) => theta * (v + a),
                    None => theta,
                };
                (xh, w)
            })
            .collect()
    }

    /// Down probabilities `θ↓_y / (2|λ|)`.
    pub fn down_weights(&self, lambda: &StrictPartition) -> Vec<(i64, f64)> {
        let k = lambda.kerov_coordinates();
        let xp: Vec<f64> = k.x_prime().iter().map(|&x| sq(x)).collect();
        let two_n = 2.0 * lambda.weight() as f64;
        k.y.iter()
            .map(|&yh| {
                let v = sq(yh);
                let others = k.y.iter().map(|&y| sq(y)).filter(|&y| y != v).map(|y| v - y);
                let num: Vec<f64> = xp.iter().map(|x| v - x).collect();
                let (last, paired) = num.split_last().expect("|X'| = |Y| ≥ 1");
                let theta = last * paired.iter().zip(others).map(|(a, b)| a / b).product::<f64>();
                (yh, -theta / two_n)
            })
            .collect()
    }

    fn pick<R: Rng>(weights: &[(i64, f64)], rng: &mut R) -> i64 {
        if weights.len() == 1 {
            return weights[0].0;
        }
        let dist = WeightedIndex::new(weights.iter().map(|(_, w)| w.max(0.0))).expect("positive weights");
        weights[dist.sample(rng)].0
    }

    pub fn step_up<R: Rng>(&self, lambda: &StrictPartition, rng: &mut R) -> StrictPartition {
        let x = Self::pick(&self.up_weights(lambda), rng);
        lambda.add_box(x).expect("addable content")
    }

    pub fn step_down<R: Rng>(&self, lambda: &StrictPartition, rng: &mut R) -> StrictPartition {
        let y = Self::pick(&self.down_weights(lambda), rng);
        lambda.remove_box(y).expect("removable content")
    }

    /// One step of `T_n`: up, then down.
    pub fn step<R: Rng>(&self, lambda: &StrictPartition, rng: &mut R) -> StrictPartition {
        self.step_down(&self.step_up(lambda, rng), rng)
    }

    /// A draw from `M_n^α`: inverse CDF over the level for `n ≤ 16`, otherwise `n` up moves from `∅`.
    pub fn sample_level<R: Rng>(&self, n: usize, alpha: &Alpha, rng: &mut R) -> Result<StrictPartition> {
        if n <= 16 {
            let m = multiplicative_measure(n, alpha)?;
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            for (lambda, w) in m.iter() {
                acc += to_f64(w);
                if u < acc {
                    return Ok(lambda.clone());
                }
            }
            return Ok(m.level.states.last().expect("nonempty level").clone());
        }
        let mut lambda = StrictPartition::empty();
        for _ in 0..n {
            lambda = self.step_up(&lambda, rng);
        }
        Ok(lambda)
    }
}

/// `T_n(λ, ·)` for one state, through the sampler.
pub fn step<R: Rng>(state: &StrictPartition, alpha: &Alpha, rng: &mut R) -> StrictPartition {
    ChainSampler::new(alpha).step(state, rng)
}

/// An endless seeded walk on one level.
pub struct Walker {
    sampler: ChainSampler,
    state: StrictPartition,
    rng: ChaCha8Rng,
}

impl Walker {
    /// Starts at `start`, or at a draw from `M_n^α` when `start` is `None`.
    pub fn new(n: usize, alpha: &Alpha, seed: u64, stream: u64, start: Option<StrictPartition>) -> Result<Self> {
        if n == 0 {
            return domain("the chain needs n ≥ 1");
        }
        if let Alpha::Finite(a) = alpha {
            Alpha::finite(a.clone())?;
        }
        let sampler = ChainSampler::new(alpha);
        let mut rng = rng_for(seed, stream);
        let state = match start {
            Some(s) if s.weight() != n => return domain(format!("start {s} is not on level {n}")),
            Some(s) => s,
            None => sampler.sample_level(n, alpha, &mut rng)?,
        };
        Ok(Walker { sampler, state, rng })
    }

    pub fn state(&self) -> &StrictPartition {
        &self.state
    }
}

impl Iterator for Walker {
    type Item = StrictPartition;

    fn next(&mut self) -> Option<StrictPartition> {
        self.state = self.sampler.step(&self.state, &mut self.rng);
        Some(self.state.clone())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub seed: u64,
    pub alpha: Alpha,
    pub n: usize,
    pub steps: usize,
    /// The start state followed by one state per step.
    pub states: Vec<StrictPartition>,
}

pub fn run(n: usize, alpha: &Alpha, steps: usize, seed: u64, start: Option<StrictPartition>) -> Result<Trajectory> {
    let mut walker = Walker::new(n, alpha, seed, 0, start)?;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(walker.state().clone());
    states.extend(walker.by_ref().take(steps));
    Ok(Trajectory { seed, alpha: alpha.clone(), n, steps, states })
}

/// Empirical law of one step from `start`, split over a fixed number of seeded streams.
pub fn one_step_counts(
    start: &StrictPartition,
    alpha: &Alpha,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> BTreeMap<StrictPartition, u64> {
    const CHUNKS: usize = 64;
    let sampler = ChainSampler::new(alpha);
    let parts = exec.map_range(0..CHUNKS, |c| {
        let mut rng = rng_for(seed, c as u64);
        let count = samples / CHUNKS + usize::from(c < samples % CHUNKS);
        let mut local: BTreeMap<StrictPartition, u64> = BTreeMap::new();
        for _ in 0..count {
            *local.entry(sampler.step(start, &mut rng)).or_default() += 1;
        }
        local
    });
    let mut total = BTreeMap::new();
    for local in parts {
        for (k, v) in local {
            *total.entry(k).or_default() += v;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::from_parts(p)
    }

    #[test]
    fn matrix_examples() {
        let t = transition_matrix(3, &Alpha::int(2)).unwrap();
        assert_eq!(t.level.states, vec![sp(&[3]), sp(&[2, 1])]);
        let expected = QMatrix::from_rows(vec![vec![ratio(15, 16), ratio(1, 16)], vec![ratio(1, 2), ratio(1, 2)]]);
        assert_eq!(t.entries, expected);
        for n in [1, 2] {
            assert_eq!(transition_matrix(n, &Alpha::int(5)).unwrap().entries, QMatrix::identity(1));
        }
        assert!(transition_matrix(0, &Alpha::int(1)).is_err());
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains(r#""order":["[3]","[2,1]"]"#), "{json}");
    }

    #[test]
    fn invariants_small_levels() {
        for alpha in [Alpha::finite(ratio(1, 2)).unwrap(), Alpha::int(7), Alpha::Infinite] {
            for n in 1..=6 {
                let t = transition_matrix(n, &alpha).unwrap();
                let r = verify_transition_matrix(&t).unwrap();
                assert!(r.passed(), "{:?}", r.first_failure());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_matrices_agree() {
        let a = transition_matrix_with(8, &Alpha::int(2), Exec::Sequential).unwrap();
        let b = transition_matrix_with(8, &Alpha::int(2), Exec::Parallel).unwrap();
        assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn composition_of_function_operators() {
        let alpha = Alpha::int(3);
        for n in 1..=5 {
            let (d, u) = down_up_function_ops(n, &alpha).unwrap();
            assert_eq!(u.mul(&d), transition_matrix(n, &alpha).unwrap().entries);
        }
        let (d, _) = down_up_function_ops(0, &alpha).unwrap();
        assert_eq!(d.mul_vec(&[int(1)]), vec![int(1)]);
        let r = verify_function_operators(3, &int(2), 4).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(3, &Alpha::int(2)).unwrap();
        assert_eq!(s.multiset_strings(), vec!["1", "7/16"]);
        assert_eq!(spectrum(2, &Alpha::int(4)).unwrap().multiset_strings(), vec!["1"]);
        let mults: Vec<usize> = predicted_spectrum(6, &Alpha::int(1)).iter().map(|p| p.1).collect();
        assert_eq!(mults, vec![1, 1, 1, 1]);
        let r = verify_spectrum(6, &Alpha::int(1), &ratio(1, 1_000_000_000)).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn sampler_weights_match_exact_probabilities() {
        let alpha = Alpha::finite(ratio(3, 2)).unwrap();
        let sampler = ChainSampler::new(&alpha);
        for lambda in crate::diagrams::enumerate_strict(9) {
            let up = sampler.up_weights(&lambda);
            let total: f64 = up.iter().map(|w| w.1).sum();
            for ((x, w), (x2, _, p)) in up.iter().zip(up_transitions(&lambda, &alpha)) {
                assert_eq!(*x, x2);
                assert!((w / total - to_f64(&p)).abs() < 1e-12);
            }
            for ((y, w), (y2, _, p)) in sampler.down_weights(&lambda).iter().zip(down_transitions(&lambda)) {
                assert_eq!(*y, y2);
                assert!((w - to_f64(&p)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_addable_box_is_certain() {
        let mut rng = rng_for(1, 0);
        let sampler = ChainSampler::new(&Alpha::int(2));
        for _ in 0..20 {
            assert_eq!(sampler.step_up(&sp(&[2, 1]), &mut rng), sp(&[3, 1]));
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let a = run(10, &Alpha::int(2), 200, 42, None).unwrap();
        let b = run(10, &Alpha::int(2), 200, 42, None).unwrap();
        assert_eq!(a.states, b.states);
        assert_eq!(a.states.len(), 201);
        assert!(a.states.iter().all(|s| s.weight() == 10));
        assert!(run(4, &Alpha::int(2), 1, 0, Some(sp(&[3]))).is_err());
    }
}
