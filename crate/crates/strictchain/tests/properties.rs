use std::collections::BTreeSet;

use num_traits::{One, Zero};
use proptest::prelude::*;
use strictchain::chains::{run, transition_matrix};
use strictchain::gamma::GammaPoly;
use strictchain::kerov::{theta_down, theta_up};
use strictchain::limit::{embed, exact_moment, exact_moment_via_qstar, moments, thoma_double_moments, SimplexPoint};
use strictchain::measures::{multiplicative_measure, Alpha};
use strictchain::rational::{int, pow2, ratio, Rational};
use strictchain::StrictPartition;

fn strict_partition(max_part: usize) -> impl Strategy<Value = StrictPartition> {
    proptest::collection::btree_set(1..=max_part, 0..=max_part)
        .prop_map(|s: BTreeSet<usize>| StrictPartition::new(s.into_iter().rev().collect()).unwrap())
}

fn alpha() -> impl Strategy<Value = Alpha> {
    (1i64..=12, 1i64..=4).prop_map(|(p, q)| Alpha::finite(ratio(p, q)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kerov_coordinates_interlace_and_round_trip(lambda in strict_partition(12)) {
        let k = lambda.kerov_coordinates();
        prop_assert!(k.interlacing().is_ok());
        prop_assert_eq!(k.to_partition().unwrap(), lambda.clone());
        let sx: i64 = k.x_prime().iter().map(|x| x * (x + 1)).sum();
        let sy: i64 = k.y.iter().map(|y| y * (y + 1)).sum();
        prop_assert_eq!(sx - sy, 2 * lambda.weight() as i64);
    }

    #[test]
    fn transition_weights_sum_to_their_totals(lambda in strict_partition(10)) {
        let up: Rational = theta_up(&lambda).values().sum();
        prop_assert_eq!(up, Rational::one());
        if !lambda.is_empty() {
            let down: Rational = theta_down(&lambda).unwrap().values().sum();
            prop_assert_eq!(down, int(2 * lambda.weight() as i64));
        }
    }

    #[test]
    fn adding_then_removing_a_box_is_the_identity(lambda in strict_partition(10)) {
        for (x, nu) in lambda.up_neighbors() {
            prop_assert_eq!(nu.remove_box(x).unwrap(), lambda.clone());
            prop_assert!(nu.down_neighbors().iter().any(|(_, mu)| *mu == lambda));
        }
    }

    #[test]
    fn measures_are_probabilities(n in 0usize..=9, a in alpha()) {
        let m = multiplicative_measure(n, &a).unwrap();
        prop_assert_eq!(m.total(), Rational::one());
        prop_assert!(m.weights.iter().all(|w| *w > Rational::zero()));
    }

    #[test]
    fn chains_are_stochastic_and_reversible(n in 1usize..=7, a in alpha()) {
        let t = transition_matrix(n, &a).unwrap();
        let m = multiplicative_measure(n, &a).unwrap();
        for i in 0..t.level.len() {
            prop_assert_eq!(t.entries.row(i).iter().sum::<Rational>(), Rational::one());
            for j in 0..t.level.len() {
                prop_assert_eq!(&m.weights[i] * &t.entries[(i, j)], &m.weights[j] * &t.entries[(j, i)]);
            }
        }
    }

    #[test]
    fn sampler_stays_on_strict_partitions(n in 1usize..=40, a in alpha(), seed in any::<u64>()) {
        let traj = run(n, &a, 100, seed, None).unwrap();
        for s in &traj.states {
            prop_assert_eq!(s.weight(), n);
            prop_assert!(StrictPartition::new(s.parts().to_vec()).is_ok());
        }
        for w in traj.states.windows(2) {
            // one box up then one down: the symmetric difference has at most two boxes
            let grown = w[0].up_neighbors();
            prop_assert!(grown.iter().any(|(_, nu)| nu.down_neighbors().iter().any(|(_, mu)| *mu == w[1])));
        }
    }

    #[test]
    fn embedded_moments_are_nonincreasing(lambda in strict_partition(12)) {
        prop_assume!(!lambda.is_empty());
        let p = embed(&lambda, lambda.weight()).unwrap();
        let q = moments(&p, 5).values;
        prop_assert!(q.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(q.iter().all(|v| *v >= Rational::zero() && *v <= Rational::one()));
        prop_assert!(p.gamma() == Rational::zero());
    }

    #[test]
    fn doubling_law(raw in proptest::collection::vec(1i64..=20, 0..5)) {
        let mut xs: Vec<Rational> = raw.iter().map(|&v| ratio(v, 100)).collect();
        xs.sort_by(|a, b| b.cmp(a));
        let p = SimplexPoint::new(xs).unwrap();
        for (i, v) in thoma_double_moments(&p, 7).iter().enumerate() {
            let m = i + 1;
            let expected = if m % 2 == 1 { Rational::zero() } else { pow2(-(m as i64)) * p.moment(m) };
            prop_assert_eq!(v, &expected);
        }
    }

    #[test]
    fn exact_moment_routes_agree(n in 1usize..=9, a in alpha(), which in 0usize..5) {
        let p = GammaPoly::p;
        let f = [p(3), p(5), &p(1) * &p(3), p(1).pow(3), &p(3) + &p(1).pow(2)][which].clone();
        prop_assert_eq!(exact_moment(n, &a, &f).unwrap(), exact_moment_via_qstar(n, &a, &f).unwrap());
    }
}
