//! Interpolation on diagrams: an element of `Γ` of degree at most `m` is determined by
//! its values on the strict partitions of weight at most `m`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::poly::{Exponents, MPoly};
use super::{odd_monomials_upto, GammaPoly};
use crate::diagrams::{enumerate_strict, StrictPartition};
use crate::error::{domain, Error, Result};
use crate::kerov::{coordinates, CoordinateKind};
use crate::linalg::QMatrix;
use crate::measures::{h_closed_form, PathCounter};
use crate::par::Exec;
use crate::rational::{big, falling_factorial, int, pow2, Rational};

/// Evaluation data on all diagrams of weight at most `max_weight`.
#[derive(Debug)]
pub struct EvaluationGrid {
    pub max_weight: usize,
    /// Ordered by weight, then lexicographically decreasing.
    pub points: Vec<StrictPartition>,
    point_index: HashMap<StrictPartition, usize>,
    pub monomials: Vec<Exponents>,
    monomial_index: HashMap<Exponents, usize>,
    /// Rows are points, columns monomials.
    pub monomial_matrix: QMatrix,
    inverse: QMatrix,
    /// `Q*_μ(λ)` with rows `λ` and columns `μ`, both indexed like `points`.
    qstar_values: QMatrix,
    qstar: Vec<GammaPoly>,
}

impl EvaluationGrid {
    pub fn build(max_weight: usize, exec: Exec) -> Result<Self> {
        let points: Vec<StrictPartition> = (0..=max_weight).flat_map(enumerate_strict).collect();
        let monomials = odd_monomials_upto(max_weight);
        if points.len() != monomials.len() {
            return Err(Error::Invariant(format!(
                "{} diagrams but {} monomials at weight {max_weight}",
                points.len(),
                monomials.len()
            )));
        }
        let point_index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let monomial_index = monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

        let rows = exec.map(&points, |lambda| {
            let sums: Vec<Rational> = (0..=max_weight / 2)
                .map(|i| lambda.parts().iter().map(|&x| num_traits::pow(int(x as i64), 2 * i + 1)).sum())
                .collect();
            monomials.iter().map(|e| MPoly::monomial(e.clone(), int(1)).eval(|i| sums[i].clone())).collect::<Vec<_>>()
        });
        let monomial_matrix = QMatrix::from_rows(rows);
        let inverse = monomial_matrix.inverse()?;

        // Q*_μ(λ) = 2^{|μ|} n↓|μ| h(μ, λ)/h(λ)
        let counter = PathCounter::global();
        let columns = exec.map(&points, |mu| {
            let table = counter.table(mu, max_weight);
            let k = mu.weight();
            points
                .iter()
                .map(|lambda| {
                    let paths = table.get(lambda);
                    if paths.is_zero() {
                        return Rational::zero();
                    }
                    let n = lambda.weight() as i64;
                    pow2(k as i64) * big(falling_factorial(n, k as u32)) * Rational::new(paths, h_closed_form(lambda))
                })
                .collect::<Vec<_>>()
        });
        let qstar_values = QMatrix::from_rows(columns).transpose();

        let mut grid = EvaluationGrid {
            max_weight,
            points,
            point_index,
            monomials,
            monomial_index,
            monomial_matrix,
            inverse,
            qstar_values,
            qstar: Vec::new(),
        };
        let qstar = exec.map_range(0..grid.points.len(), |j| {
            let column: Vec<Rational> = (0..grid.points.len()).map(|i| grid.qstar_values[(i, j)].clone()).collect();
            grid.interpolate(&column)
        });
        grid.qstar = qstar;
        Ok(grid)
    }

    /// Process-wide grid for `max_weight`, built on first use.
    pub fn shared(max_weight: usize) -> Arc<EvaluationGrid> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<EvaluationGrid>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().expect("grid cache poisoned").get(&max_weight) {
            return g.clone();
        }
        let grid =
            Arc::new(EvaluationGrid::build(max_weight, Exec::default()).expect("the evaluation matrix is invertible"));
        cache.lock().expect("grid cache poisoned").entry(max_weight).or_insert(grid).clone()
    }

    pub fn index_of(&self, lambda: &StrictPartition) -> Option<usize> {
        self.point_index.get(lambda).copied()
    }

    /// Values of `f` at every grid point.
    pub fn values(&self, f: &GammaPoly) -> Result<Vec<Rational>> {
        let mut coeffs = vec![Rational::zero(); self.monomials.len()];
        for (e, c) in f.terms() {
            let j = self
                .monomial_index
                .get(e)
                .ok_or_else(|| Error::Domain(format!("degree of {f} exceeds the grid weight {}", self.max_weight)))?;
            coeffs[*j] = c.clone();
        }
        Ok(self.monomial_matrix.mul_vec(&coeffs))
    }

    /// The unique element of degree at most `max_weight` with the given values.
    pub fn interpolate(&self, values: &[Rational]) -> GammaPoly {
        let coeffs = self.inverse.mul_vec(values);
        let mut p = MPoly::zero();
        for (e, c) in self.monomials.iter().zip(coeffs) {
            p.add_term(e.clone(), c);
        }
        GammaPoly::from_mpoly(p)
    }

    pub fn qstar(&self, mu: &StrictPartition) -> Option<&GammaPoly> {
        self.index_of(mu).map(|j| &self.qstar[j])
    }

    pub fn qstar_value(&self, mu: &StrictPartition, lambda: &StrictPartition) -> Option<Rational> {
        Some(self.qstar_values[(self.index_of(lambda)?, self.index_of(mu)?)].clone())
    }

    /// Coefficients `c_μ` with `f = Σ c_μ Q*_μ`, zero coefficients omitted.
    ///
    /// `Q*_μ(λ)` vanishes unless `μ ⊆ λ`, so the system is solved by forward
    /// substitution in weight order.
    pub fn expand_in_qstar(&self, f: &GammaPoly) -> Result<Vec<(StrictPartition, Rational)>> {
        let values = self.values(f)?;
        let mut coeffs: Vec<Rational> = Vec::with_capacity(self.points.len());
        for (i, lambda) in self.points.iter().enumerate() {
            let mut rest = values[i].clone();
            for (j, c) in coeffs.iter().enumerate() {
                if !c.is_zero() && self.points[j].is_contained_in(lambda) {
                    rest -= c * &self.qstar_values[(i, j)];
                }
            }
            coeffs.push(rest / &self.qstar_values[(i, i)]);
        }
        Ok(self.points.iter().cloned().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect())
    }
}

fn check_degree(f: &GammaPoly, m: usize) -> Result<()> {
    match f.degree() {
        Some(d) if d > m => domain(format!("degree {d} of {f} exceeds the bound {m}")),
        _ => Ok(()),
    }
}

/// Interpolates values given on every diagram of weight at most `m`.
pub fn to_monomial_basis(values: &BTreeMap<StrictPartition, Rational>, m: usize) -> Result<GammaPoly> {
    let grid = EvaluationGrid::shared(m);
    let v = grid
        .points
        .iter()
        .map(|p| values.get(p).cloned().ok_or_else(|| Error::Domain(format!("no value given at {p}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(grid.interpolate(&v))
}

pub fn expand_in_qstar(f: &GammaPoly, m: usize) -> Result<BTreeMap<StrictPartition, Rational>> {
    check_degree(f, m)?;
    Ok(EvaluationGrid::shared(m).expand_in_qstar(f)?.into_iter().collect())
}

/// `Q*_μ` as a polynomial in the power sums.
pub fn schur_q_factorial_symbolic(mu: &StrictPartition) -> GammaPoly {
    EvaluationGrid::shared(mu.weight()).qstar(mu).expect("μ lies on its own grid").clone()
}

fn coordinate_symbolic(kind: CoordinateKind, k: usize, degree_bound: usize) -> Result<GammaPoly> {
    if k == 0 || degree_bound < 2 * k - 1 {
        return domain(format!("coordinate {k} needs a degree bound of at least {}", 2 * k.max(1) - 1));
    }
    let grid = EvaluationGrid::shared(degree_bound);
    let values: Vec<Rational> =
        grid.points.iter().map(|lambda| coordinates(lambda, kind, k).values[k - 1].clone()).collect();
    Ok(grid.interpolate(&values))
}

/// `g_k` as an element of `Γ`.
pub fn g_symbolic(k: usize, degree_bound: usize) -> Result<GammaPoly> {
    coordinate_symbolic(CoordinateKind::G, k, degree_bound)
}

/// `ĝ_k` as an element of `Γ`.
pub fn ghat_symbolic(k: usize, degree_bound: usize) -> Result<GammaPoly> {
    coordinate_symbolic(CoordinateKind::GHat, k, degree_bound)
}

/// Bold `p_m` as an element of `Γ`.
pub fn boldp_symbolic(m: usize, degree_bound: usize) -> Result<GammaPoly> {
    coordinate_symbolic(CoordinateKind::BoldP, m, degree_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::schur_q;
    use crate::rational::ratio;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::from_parts(p)
    }

    #[test]
    fn qstar_symbolic_examples() {
        assert_eq!(schur_q_factorial_symbolic(&sp(&[1])), GammaPoly::p(1).scale(&int(2)));
        let q2 = &GammaPoly::p(1).pow(2).scale(&int(2)) - &GammaPoly::p(1).scale(&int(2));
        assert_eq!(schur_q_factorial_symbolic(&sp(&[2])), q2);
        for n in 0..=7 {
            for mu in enumerate_strict(n) {
                let star = schur_q_factorial_symbolic(&mu);
                let q = schur_q(&mu);
                assert!((&star - &q).degree_at_most(n as i64 - 1), "{mu}");
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let e = expand_in_qstar(&GammaPoly::p(1).scale(&int(2)), 1).unwrap();
        assert_eq!(e, BTreeMap::from([(sp(&[1]), int(1))]));
        let e = expand_in_qstar(&GammaPoly::p(1).pow(2), 2).unwrap();
        assert_eq!(e, BTreeMap::from([(sp(&[2]), ratio(1, 2)), (sp(&[1]), ratio(1, 2))]));
        assert!(expand_in_qstar(&GammaPoly::p(3), 2).is_err());
        let grid = EvaluationGrid::shared(3);
        let values: BTreeMap<_, _> = grid.points.iter().map(|l| (l.clone(), GammaPoly::p(3).evaluate(l))).collect();
        assert_eq!(to_monomial_basis(&values, 3).unwrap(), GammaPoly::p(3));
    }

    #[test]
    fn sequential_and_parallel_builds_agree() {
        let a = EvaluationGrid::build(6, Exec::Sequential).unwrap();
        let b = EvaluationGrid::build(6, Exec::Parallel).unwrap();
        assert_eq!(a.qstar, b.qstar);
        assert_eq!(a.monomial_matrix, b.monomial_matrix);
    }

    #[test]
    fn coordinate_polynomials() {
        assert_eq!(g_symbolic(1, 1).unwrap(), GammaPoly::p(1).scale(&int(2)));
        assert_eq!(boldp_symbolic(1, 3).unwrap(), GammaPoly::p(1).scale(&int(2)));
        let p2 = boldp_symbolic(2, 3).unwrap();
        assert_eq!(p2.leading_part(), GammaPoly::p(3).scale(&int(4)));
        assert!(g_symbolic(2, 2).is_err());
    }
}
