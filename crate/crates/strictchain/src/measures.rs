//! Dimensions, transition probabilities and coherent measures on the Schur graph.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagrams::{edge_multiplicity, enumerate_strict, Level, StrictPartition};
use crate::error::{domain, Error, Result};
use crate::gamma::schur_q_factorial_eval;
use crate::par::Exec;
use crate::rational::{big, factorial, falling_factorial, fmt_rational, int, parse_rational, pow2, Rational};
use crate::report::VerificationReport;

/// The parameter of the multiplicative family; `Infinite` selects the Plancherel formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Alpha {
    Finite(Rational),
    Infinite,
}

impl Alpha {
    pub fn finite(a: Rational) -> Result<Self> {
        if !a.is_positive() {
            return domain(format!("alpha must be positive, got {a}"));
        }
        Ok(Alpha::Finite(a))
    }

    pub fn int(a: i64) -> Self {
        Alpha::finite(int(a)).expect("positive integer alpha")
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Alpha::Infinite)
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Alpha::Finite(a) => Some(a),
            Alpha::Infinite => None,
        }
    }

    pub fn require_finite(&self) -> Result<&Rational> {
        self.value().ok_or_else(|| Error::Domain("this operation needs a finite alpha".into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Alpha::Finite(a) => crate::rational::to_f64(a),
            Alpha::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(a) => write!(f, "{}", fmt_rational(a)),
            Alpha::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" | "plancherel" => Ok(Alpha::Infinite),
            t => Alpha::finite(parse_rational(t)?),
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `h(λ)`, the number of paths from ∅ counted with edge multiplicities, by the product formula.
pub fn h_closed_form(lambda: &StrictPartition) -> BigInt {
    let parts = lambda.parts();
    let n = lambda.weight();
    let mut value = pow2((n - parts.len()) as i64) * big(factorial(n as u64));
    for &p in parts {
        value /= big(factorial(p as u64));
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            value *= Rational::new(BigInt::from(parts[i] - parts[j]), BigInt::from(parts[i] + parts[j]));
        }
    }
    debug_assert!(value.is_integer());
    value.to_integer()
}

/// Multiplicity of the edge `λ → λ + □(x)`.
fn kappa_for_content(x: i64) -> u32 {
    if x == 0 {
        1
    } else {
        2
    }
}

/// Weighted path counts `h(μ, ·)` on all diagrams of weight at most `max_weight`.
#[derive(Debug)]
pub struct PathTable {
    pub max_weight: usize,
    counts: HashMap<StrictPartition, BigInt>,
}

impl PathTable {
    fn build(mu: &StrictPartition, max_weight: usize) -> Self {
        let mut counts = HashMap::new();
        counts.insert(mu.clone(), BigInt::one());
        let mut frontier: HashMap<StrictPartition, BigInt> = counts.clone();
        for _ in mu.weight()..max_weight {
            let mut next: HashMap<StrictPartition, BigInt> = HashMap::new();
            for (nu, c) in &frontier {
                for (x, up) in nu.up_neighbors() {
                    *next.entry(up).or_insert_with(BigInt::zero) += c * kappa_for_content(x);
                }
            }
            counts.extend(next.iter().map(|(k, v)| (k.clone(), v.clone())));
            frontier = next;
        }
        PathTable { max_weight, counts }
    }

    pub fn get(&self, lambda: &StrictPartition) -> BigInt {
        self.counts.get(lambda).cloned().unwrap_or_default()
    }
}

/// Memoized `h(μ, λ)`; tables are keyed by `μ` and grown by weight on demand.
///
/// Readers share tables through `Arc`, so concurrent lookups never block on
/// each other once a table exists.
#[derive(Debug, Default)]
pub struct PathCounter {
    tables: RwLock<HashMap<StrictPartition, Arc<PathTable>>>,
}

impl PathCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static PathCounter {
        static GLOBAL: OnceLock<PathCounter> = OnceLock::new();
        GLOBAL.get_or_init(PathCounter::new)
    }

    pub fn table(&self, mu: &StrictPartition, max_weight: usize) -> Arc<PathTable> {
        if let Some(t) = self.tables.read().expect("path cache poisoned").get(mu) {
            if t.max_weight >= max_weight {
                return t.clone();
            }
        }
        let table = Arc::new(PathTable::build(mu, max_weight));
        let mut tables = self.tables.write().expect("path cache poisoned");
        let entry = tables.entry(mu.clone()).or_insert_with(|| table.clone());
        if entry.max_weight < max_weight {
            *entry = table.clone();
        }
        entry.clone()
    }

    pub fn count(&self, mu: &StrictPartition, lambda: &StrictPartition) -> BigInt {
        if !mu.is_contained_in(lambda) {
            return BigInt::zero();
        }
        self.table(mu, lambda.weight()).get(lambda)
    }
}

/// `h(μ, λ)` using the process-wide cache.
pub fn path_count(mu: &StrictPartition, lambda: &StrictPartition) -> BigInt {
    PathCounter::global().count(mu, lambda)
}

/// `p↓(λ, μ) = h(μ)κ(μ, λ)/h(λ)`.
pub fn down_prob(lambda: &StrictPartition, mu: &StrictPartition) -> Result<Rational> {
    if lambda.weight() != mu.weight() + 1 {
        return domain(format!("down_prob needs |λ| = |μ| + 1, got {lambda} and {mu}"));
    }
    let k = edge_multiplicity(mu, lambda);
    Ok(Rational::new(h_closed_form(mu) * k, h_closed_form(lambda)))
}

/// `p↑_α(λ, λ + □(x))`.
pub fn up_prob(lambda: &StrictPartition, x: i64, alpha: &Alpha) -> Result<Rational> {
    let nu = lambda.add_box(x)?;
    let n = lambda.weight() as i64;
    let plancherel = Rational::new(h_closed_form(&nu), h_closed_form(lambda) * (n + 1));
    Ok(match alpha {
        Alpha::Infinite => plancherel,
        Alpha::Finite(a) => (int(x * (x + 1)) + a) / (int(2 * n) + a) * plancherel,
    })
}

/// All up moves from `λ` with their probabilities.
pub fn up_transitions(lambda: &StrictPartition, alpha: &Alpha) -> Vec<(i64, StrictPartition, Rational)> {
    lambda
        .up_neighbors()
        .into_iter()
        .map(|(x, nu)| {
            let p = up_prob(lambda, x, alpha).expect("addable content");
            (x, nu, p)
        })
        .collect()
}

/// All down moves from `λ` with their probabilities.
pub fn down_transitions(lambda: &StrictPartition) -> Vec<(i64, StrictPartition, Rational)> {
    lambda
        .down_neighbors()
        .into_iter()
        .map(|(y, mu)| {
            let p = down_prob(lambda, &mu).expect("adjacent levels");
            (y, mu, p)
        })
        .collect()
}

/// A probability measure on one level of the Schur graph, dense over the level.
#[derive(Debug, Clone)]
pub struct MeasureOnLevel {
    pub n: usize,
    pub alpha: Alpha,
    pub level: Arc<Level>,
    pub weights: Vec<Rational>,
}

impl MeasureOnLevel {
    pub fn get(&self, lambda: &StrictPartition) -> Rational {
        self.level.index_of(lambda).map(|i| self.weights[i].clone()).unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StrictPartition, &Rational)> {
        self.level.states.iter().zip(&self.weights)
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }
}

impl Serialize for MeasureOnLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.weights.len()))?;
        for (lambda, w) in self.iter() {
            map.serialize_entry(&lambda.to_string(), &fmt_rational(w))?;
        }
        map.end()
    }
}

/// `Pl_n(λ) = h(λ)² 2^{ℓ(λ)-n} / n!`.
pub fn plancherel_weight(lambda: &StrictPartition) -> Rational {
    let n = lambda.weight();
    let h = h_closed_form(lambda);
    pow2(lambda.len() as i64 - n as i64) * Rational::new(&h * &h, factorial(n as u64))
}

/// `Π_□ (c(c+1) + α)` over the boxes of `λ`.
pub fn box_weight_product(lambda: &StrictPartition, alpha: &Rational) -> Rational {
    lambda.contents().map(|c| int(c * (c + 1)) + alpha).product()
}

/// `Z_α(n) = α(α+2)…(α+2n-2)`.
pub fn normalizer(n: usize, alpha: &Rational) -> Rational {
    (0..n as i64).map(|k| alpha + int(2 * k)).product()
}

pub fn plancherel_measure(n: usize) -> MeasureOnLevel {
    multiplicative_measure(n, &Alpha::Infinite).expect("plancherel is always defined")
}

/// `M_n^α`; `Alpha::Infinite` gives the Plancherel measure.
pub fn multiplicative_measure(n: usize, alpha: &Alpha) -> Result<MeasureOnLevel> {
    multiplicative_measure_with(n, alpha, Exec::default())
}

pub fn multiplicative_measure_with(n: usize, alpha: &Alpha, exec: Exec) -> Result<MeasureOnLevel> {
    if let Alpha::Finite(a) = alpha {
        if !a.is_positive() {
            return domain(format!("alpha must be positive, got {a}"));
        }
    }
    let level = Level::shared(n);
    let z = alpha.value().map(|a| normalizer(n, a));
    let weights = exec.map(&level.states, |lambda| {
        let pl = plancherel_weight(lambda);
        match (alpha, &z) {
            (Alpha::Finite(a), Some(z)) => pl * box_weight_product(lambda, a) / z,
            _ => pl,
        }
    });
    Ok(MeasureOnLevel { n, alpha: alpha.clone(), level, weights })
}

/// Checks down- and up-consistency of `M_n` and `M_{n+1}` and the row sums of both transition functions.
pub fn verify_coherence(n: usize, alpha: &Alpha) -> Result<VerificationReport> {
    let lower = multiplicative_measure(n, alpha)?;
    let upper = multiplicative_measure(n + 1, alpha)?;
    let mut report = VerificationReport::new("coherence").with_param("n", n).with_param("alpha", alpha);
    report.check_eq(format!("sum M_{n}"), &int(1), &lower.total());
    report.check_eq(format!("sum M_{}", n + 1), &int(1), &upper.total());

    let mut from_above: Vec<Rational> = vec![Rational::zero(); lower.level.len()];
    for (lambda, w) in upper.iter() {
        let moves = down_transitions(lambda);
        let row: Rational = moves.iter().map(|(_, _, p)| p).sum();
        report.check_eq(format!("sum_mu p_down({lambda}, mu)"), &int(1), &row);
        for (_, mu, p) in moves {
            let i = lower.level.index_of(&mu).expect("mu in lower level");
            from_above[i] += w * p;
        }
    }
    for (i, mu) in lower.level.states.iter().enumerate() {
        report.check_eq(
            format!("M_{n}({mu}) = sum M_{}(la) p_down(la, {mu})", n + 1),
            &lower.weights[i],
            &from_above[i],
        );
    }

    let mut from_below: Vec<Rational> = vec![Rational::zero(); upper.level.len()];
    for (lambda, w) in lower.iter() {
        let moves = up_transitions(lambda, alpha);
        let row: Rational = moves.iter().map(|(_, _, p)| p).sum();
        report.check_eq(format!("sum_x p_up({lambda}, x)"), &int(1), &row);
        for (_, nu, p) in moves {
            let i = upper.level.index_of(&nu).expect("nu in upper level");
            from_below[i] += w * p;
        }
    }
    for (i, nu) in upper.level.states.iter().enumerate() {
        report.check_eq(format!("M_{}({nu}) = sum M_{n}(la) p_up(la, {nu})", n + 1), &upper.weights[i], &from_below[i]);
    }
    Ok(report)
}

/// `2^{-|μ|} Q*_μ(λ) / n↓|μ|` with `n = |λ|`, which equals `h(μ, λ)/h(λ)`.
pub fn ivanov_dimension(mu: &StrictPartition, lambda: &StrictPartition) -> Result<Rational> {
    let (k, n) = (mu.weight(), lambda.weight());
    if k > n {
        return domain(format!("ivanov_dimension needs |μ| ≤ |λ|, got {mu} and {lambda}"));
    }
    let q = schur_q_factorial_eval(mu, lambda);
    Ok(q * pow2(-(k as i64)) / big(falling_factorial(n as i64, k as u32)))
}

/// Closed-form `h(λ)` against the path-counting recurrence, all `|λ| ≤ max_weight`.
pub fn verify_dimension_formula(max_weight: usize) -> VerificationReport {
    let mut report = VerificationReport::new("dimension formula").with_param("max_weight", max_weight);
    let table = PathCounter::global().table(&StrictPartition::empty(), max_weight);
    for n in 0..=max_weight {
        for lambda in enumerate_strict(n) {
            report.check_eq(format!("h({lambda})"), &table.get(&lambda), &h_closed_form(&lambda));
        }
    }
    report
}

/// The factorial Q-function formula for `h(μ, λ)/h(λ)`, all `|μ| ≤ |λ| ≤ max_weight`.
pub fn verify_ivanov(max_weight: usize, exec: Exec) -> VerificationReport {
    let mut report = VerificationReport::new("ivanov formula").with_param("max_weight", max_weight);
    let lambdas: Vec<StrictPartition> = (0..=max_weight).flat_map(enumerate_strict).collect();
    let rows = exec.map(&lambdas, |lambda| {
        let h = h_closed_form(lambda);
        (0..=lambda.weight())
            .flat_map(enumerate_strict)
            .map(|mu| {
                let expected = Rational::new(path_count(&mu, lambda), h.clone());
                let got = ivanov_dimension(&mu, lambda).expect("weights ordered");
                (format!("h({mu},{lambda})/h({lambda})"), expected, got)
            })
            .collect::<Vec<_>>()
    });
    for (input, expected, got) in rows.into_iter().flatten() {
        report.check_eq(input, &expected, &got);
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

    /// Paths enumerated one by one, multiplying edge multiplicities.
    fn brute_paths(mu: &StrictPartition, lambda: &StrictPartition) -> BigInt {
        if mu == lambda {
            return BigInt::one();
        }
        if lambda.weight() <= mu.weight() {
            return BigInt::zero();
        }
        lambda
            .down_neighbors()
            .into_iter()
            .map(|(_, below)| brute_paths(mu, &below) * edge_multiplicity(&below, lambda))
            .sum()
    }

    #[test]
    fn path_count_examples() {
        let e = StrictPartition::empty();
        assert_eq!(path_count(&e, &sp(&[2, 1])), BigInt::from(2));
        assert_eq!(path_count(&e, &sp(&[3, 1])), BigInt::from(8));
        assert_eq!(path_count(&sp(&[2]), &sp(&[3])), BigInt::from(2));
        assert_eq!(path_count(&sp(&[3]), &sp(&[2, 1])), BigInt::zero());
        assert_eq!(path_count(&sp(&[2, 1]), &sp(&[2, 1])), BigInt::one());
        for n in 0..=8 {
            for lambda in enumerate_strict(n) {
                for k in 0..=n {
                    for mu in enumerate_strict(k) {
                        assert_eq!(path_count(&mu, &lambda), brute_paths(&mu, &lambda), "{mu} {lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(h_closed_form(&sp(&[2, 1])), BigInt::from(2));
        assert_eq!(h_closed_form(&sp(&[3])), BigInt::from(4));
        assert_eq!(h_closed_form(&sp(&[1])), BigInt::from(1));
        assert_eq!(h_closed_form(&StrictPartition::empty()), BigInt::from(1));
        assert!(verify_dimension_formula(10).passed());
    }

    #[test]
    fn probability_examples() {
        assert_eq!(down_prob(&sp(&[2, 1]), &sp(&[2])).unwrap(), int(1));
        assert_eq!(down_prob(&sp(&[3, 1]), &sp(&[3])).unwrap(), ratio(1, 2));
        assert_eq!(down_prob(&sp(&[3, 1]), &sp(&[2, 1])).unwrap(), ratio(1, 2));
        assert!(down_prob(&sp(&[3, 1]), &sp(&[1])).is_err());
        assert_eq!(up_prob(&sp(&[2]), 2, &Alpha::Infinite).unwrap(), ratio(2, 3));
        assert_eq!(up_prob(&sp(&[2]), 0, &Alpha::Infinite).unwrap(), ratio(1, 3));
        assert_eq!(up_prob(&sp(&[3]), 3, &Alpha::int(2)).unwrap(), ratio(7, 8));
        assert!(up_prob(&sp(&[1]), 0, &Alpha::int(2)).is_err());
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!("7/3".parse::<Alpha>().unwrap(), Alpha::Finite(ratio(7, 3)));
        assert_eq!("inf".parse::<Alpha>().unwrap(), Alpha::Infinite);
        assert!("0".parse::<Alpha>().is_err());
        assert!("-1/2".parse::<Alpha>().is_err());
        assert!(multiplicative_measure(3, &Alpha::Finite(int(-1))).is_err());
    }

    #[test]
    fn measure_examples() {
        let m = multiplicative_measure(3, &Alpha::int(2)).unwrap();
        assert_eq!(m.get(&sp(&[3])), ratio(8, 9));
        assert_eq!(m.get(&sp(&[2, 1])), ratio(1, 9));
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"[3]":"8/9","[2,1]":"1/9"}"#);
        let pl = plancherel_measure(3);
        assert_eq!(pl.weights, vec![ratio(2, 3), ratio(1, 3)]);
        for a in [ratio(1, 2), int(5), ratio(7, 3)] {
            let m = multiplicative_measure(1, &Alpha::Finite(a)).unwrap();
            assert_eq!(m.weights, vec![int(1)]);
        }
        let seq = multiplicative_measure_with(9, &Alpha::int(7), Exec::Sequential).unwrap();
        let par = multiplicative_measure_with(9, &Alpha::int(7), Exec::Parallel).unwrap();
        assert_eq!(seq.weights, par.weights);
    }

    #[test]
    fn coherence_examples() {
        assert!(verify_coherence(3, &Alpha::int(2)).unwrap().passed());
        assert!(verify_coherence(0, &Alpha::int(1)).unwrap().passed());
        assert!(verify_coherence(8, &Alpha::Finite(ratio(7, 3))).unwrap().passed());
        assert!(verify_coherence(6, &Alpha::Infinite).unwrap().passed());
    }

    #[test]
    fn ivanov_examples() {
        assert_eq!(ivanov_dimension(&sp(&[2]), &sp(&[3])).unwrap(), ratio(1, 2));
        for lambda in enumerate_strict(6) {
            assert_eq!(ivanov_dimension(&sp(&[1]), &lambda).unwrap(), int(1));
            assert_eq!(ivanov_dimension(&StrictPartition::empty(), &lambda).unwrap(), int(1));
        }
        assert!(ivanov_dimension(&sp(&[3]), &sp(&[2])).is_err());
        assert!(verify_ivanov(6, Exec::default()).passed());
    }
}
