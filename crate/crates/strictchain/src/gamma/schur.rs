//! Schur Q-functions and their factorial analogues.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::GammaPoly;
use crate::diagrams::StrictPartition;
use crate::rational::{big, factorial, falling_factorial, int, pow2, Rational};

/// Coefficient of `tʳ` in `exp(2 Σ_{k odd} p_k tᵏ / k)`.
pub fn q_one_row(r: usize) -> GammaPoly {
    one_row_table(r).pop().expect("nonempty table")
}

/// `q_0, …, q_r` from `r q_r = 2 Σ_{k odd ≤ r} p_k q_{r-k}`.
fn one_row_table(r: usize) -> Vec<GammaPoly> {
    let mut q = vec![GammaPoly::one()];
    for m in 1..=r {
        let mut acc = GammaPoly::zero();
        for k in (1..=m).step_by(2) {
            acc = &acc + &(&GammaPoly::p(k) * &q[m - k]);
        }
        q.push(acc.scale(&Rational::new(2.into(), (m as i64).into())));
    }
    q
}

/// `Q_λ` via the two-row formula and the Pfaffian expansion along the first row.
pub fn schur_q(lambda: &StrictPartition) -> GammaPoly {
    let mut parts = lambda.parts().to_vec();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let q = one_row_table(lambda.weight());
    let mut memo = HashMap::new();
    pfaffian(&parts, &q, &mut memo)
}

/// `Q_{(r,s)} = q_r q_s + 2 Σ_{i=1}^{s} (-1)^i q_{r+i} q_{s-i}` for `r > s ≥ 0`.
fn two_row(r: usize, s: usize, q: &[GammaPoly]) -> GammaPoly {
    let mut acc = &q[r] * &q[s];
    for i in 1..=s {
        let t = (&q[r + i] * &q[s - i]).scale(&int(if i % 2 == 0 { 2 } else { -2 }));
        acc = &acc + &t;
    }
    acc
}

fn pfaffian(parts: &[usize], q: &[GammaPoly], memo: &mut HashMap<Vec<usize>, GammaPoly>) -> GammaPoly {
    match parts.len() {
        0 => return GammaPoly::one(),
        2 => return two_row(parts[0], parts[1], q),
        _ => {}
    }
    if let Some(hit) = memo.get(parts) {
        return hit.clone();
    }
    let mut acc = GammaPoly::zero();
    for j in 1..parts.len() {
        let rest: Vec<usize> = parts.iter().enumerate().filter(|&(i, _)| i != 0 && i != j).map(|(_, &p)| p).collect();
        let term = &two_row(parts[0], parts[j], q) * &pfaffian(&rest, q, memo);
        // 1-based column j+1 carries the sign (-1)^{j+1}
        acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    memo.insert(parts.to_vec(), acc.clone());
    acc
}

/// All permutations of `0..n` (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `2^ℓ/(n-ℓ)! Σ_{w ∈ S_n} Π_{i≤ℓ} power(y_{w(i)}, λ_i) Π_{i≤ℓ, i<j≤n} (y_{w(i)} + y_{w(j)})/(y_{w(i)} - y_{w(j)})`.
fn symmetrize(lambda: &StrictPartition, y: &[Rational], power: impl Fn(&Rational, usize) -> Rational) -> Rational {
    let (l, n) = (lambda.len(), y.len());
    if l > n {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for w in permutations(n) {
        let mut term = Rational::one();
        for (i, &part) in lambda.parts().iter().enumerate() {
            term *= power(&y[w[i]], part);
            if term.is_zero() {
                break;
            }
            for j in i + 1..n {
                term *= (&y[w[i]] + &y[w[j]]) / (&y[w[i]] - &y[w[j]]);
            }
        }
        total += term;
    }
    total * pow2(l as i64) / big(factorial((n - l) as u64))
}

/// `Q_λ(y_1, …, y_n)` by direct symmetrization; the `y_i` must be distinct.
pub fn schur_q_eval_symmetrization(lambda: &StrictPartition, y: &[Rational]) -> Rational {
    symmetrize(lambda, y, |x, k| num_traits::pow(x.clone(), k))
}

/// `Q*_μ(λ)`: symmetrization with falling factorial powers, in `ℓ(λ)` variables set to the parts of `λ`.
pub fn schur_q_factorial_eval(mu: &StrictPartition, lambda: &StrictPartition) -> Rational {
    let y: Vec<Rational> = lambda.parts().iter().map(|&x| int(x as i64)).collect();
    symmetrize(mu, &y, |x, k| big(falling_factorial(x.to_integer().try_into().expect("small part"), k as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::enumerate_strict;
    use crate::rational::ratio;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::from_parts(p)
    }

    #[test]
    fn one_row_examples() {
        assert_eq!(q_one_row(0), GammaPoly::one());
        assert_eq!(q_one_row(1), GammaPoly::p(1).scale(&int(2)));
        assert_eq!(q_one_row(2), GammaPoly::p(1).pow(2).scale(&int(2)));
        let q3 = &GammaPoly::p(1).pow(3).scale(&ratio(4, 3)) + &GammaPoly::p(3).scale(&ratio(2, 3));
        assert_eq!(q_one_row(3), q3);
        assert_eq!(schur_q(&sp(&[3])), q3);
        assert_eq!(schur_q(&sp(&[1])), GammaPoly::p(1).scale(&int(2)));
        assert_eq!(schur_q(&StrictPartition::empty()), GammaPoly::one());
    }

    #[test]
    fn two_row_against_symmetrization() {
        let q21 = schur_q(&sp(&[2, 1]));
        let direct = schur_q_eval_symmetrization(&sp(&[2, 1]), &[int(2), int(1)]);
        assert_eq!(direct, int(24));
        assert_eq!(q21.evaluate(&sp(&[2, 1])), direct);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        let mut all = permutations(3);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(schur_q_factorial_eval(&sp(&[2]), &sp(&[3])), int(12));
        assert_eq!(schur_q_factorial_eval(&sp(&[2]), &sp(&[2, 1])), int(12));
        assert_eq!(schur_q_factorial_eval(&sp(&[2, 1]), &sp(&[3])), int(0));
        for lambda in enumerate_strict(7) {
            assert_eq!(schur_q_factorial_eval(&sp(&[1]), &lambda), int(14));
        }
    }

    #[test]
    fn homogeneous_of_weight_degree() {
        for n in 0..=7 {
            for lambda in enumerate_strict(n) {
                let q = schur_q(&lambda);
                assert_eq!(q.degree(), Some(n));
                assert_eq!(q.leading_part(), q);
            }
        }
    }
}
