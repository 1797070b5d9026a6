use std::collections::BTreeMap;

use proptest::prelude::*;

use thermoshift::linalg::Square;
use thermoshift::measures::{
    entropy_estimate, gibbs_pre_average, mean_f1, rpf_equilibrium, CylinderMeasure,
};
use thermoshift::potential::{constants_report, DecayLaw, PotentialSeq};
use thermoshift::pressure::{transfer_pressure, truncation_curve};
use thermoshift::shift::{compact_approximation, AmbientRule, ShiftModel};
use thermoshift::zero_temp::{max_mean_cycle, max_mean_cycle_karp};
use thermoshift::Potential;

/// Square 0/1 matrices with no zero row or column.
fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    (2..=max)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u8..=1, n), n))
        .prop_filter("zero row or column", |m| {
            let n = m.len();
            (0..n).all(|i| m[i].iter().any(|&x| x == 1) && (0..n).any(|j| m[j][i] == 1))
        })
}

fn primitive(max: usize) -> impl Strategy<Value = ShiftModel> {
    matrix(max)
        .prop_map(|m| ShiftModel::from_matrix(&m).unwrap())
        .prop_filter("not primitive", |s| s.is_primitive().unwrap())
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, n)
}

fn with_weights(max: usize) -> impl Strategy<Value = (ShiftModel, Potential)> {
    primitive(max).prop_flat_map(|s| {
        let n = s.len();
        (Just(s), weights(n)).prop_map(|(s, w)| {
            let values: Vec<(usize, f64)> = w.into_iter().enumerate().collect();
            (s, PotentialSeq::symbolwise(&values).unwrap())
        })
    })
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

fn int_pow_diag(m: &[Vec<u8>], n: usize, a: usize) -> u64 {
    let k = m.len();
    let mut p: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect();
    for _ in 0..n {
        p = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| p[i][l] * m[l][j] as u64).sum()).collect())
            .collect();
    }
    p[a][a]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn periodic_points_match_matrix_powers(m in matrix(4), n in 1usize..=7) {
        let s = ShiftModel::from_matrix(&m).unwrap();
        for a in 0..m.len() {
            let count = s.periodic_points(n, a).unwrap().len() as u64;
            prop_assert_eq!(count, int_pow_diag(&m, n, a));
        }
    }

    #[test]
    fn mixing_matches_brute_force(m in matrix(5)) {
        let s = ShiftModel::from_matrix(&m).unwrap();
        let k = m.len();
        let adj: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect();
        let mut p = adj.clone();
        let mut brute = false;
        for _ in 0..(k - 1) * (k - 1) + 1 {
            if p.iter().all(|r| r.iter().all(|&x| x)) {
                brute = true;
                break;
            }
            p = bool_mul(&p, &adj);
        }
        prop_assert_eq!(s.mixing_certificate().unwrap().is_mixing(), brute);
        prop_assert_eq!(s.is_primitive().unwrap(), brute);
    }

    #[test]
    fn scaling_composes(w in weights(2), a in 0.1f64..4.0, b in 0.1f64..4.0, word in prop::collection::vec(0usize..2, 1..8)) {
        let pot = PotentialSeq::symbolwise(&[(0, w[0]), (1, w[1])]).unwrap().normalize().unwrap();
        let lhs = pot.scale(a).scale(b).eval_fn(&word).unwrap();
        let rhs = pot.scale(a * b).eval_fn(&word).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
        prop_assert!(pot.eval_fn(&word).unwrap() <= 1e-12);
    }

    #[test]
    fn cocycle_defect_within_declared(entries in prop::collection::vec(0.2f64..3.0, 8)) {
        let a = Square::from_rows(&[entries[0..2].to_vec(), entries[2..4].to_vec()]).unwrap();
        let b = Square::from_rows(&[entries[4..6].to_vec(), entries[6..8].to_vec()]).unwrap();
        let pot = PotentialSeq::matrix_cocycle(BTreeMap::from([(0, a), (1, b)])).unwrap();
        let report = constants_report(&pot, &ShiftModel::full(2), 6).unwrap();
        prop_assert!(report.c_aa_emp <= pot.c_aa() + 1e-9);
        prop_assert!(report.within_declared);
    }

    #[test]
    fn karp_matches_enumeration((s, f) in with_weights(6)) {
        let (beta, _, cycles) = max_mean_cycle(&s, &f).unwrap();
        let (karp, cycle) = max_mean_cycle_karp(&s, &f).unwrap();
        prop_assert!((beta - karp).abs() < 1e-9);
        prop_assert!((cycle.mean - beta).abs() < 1e-9);
        prop_assert!(cycles.iter().all(|c| (c.mean - beta).abs() < 1e-12));
    }

    #[test]
    fn equilibrium_measures_are_invariant((s, f) in with_weights(4), t in 1.0f64..6.0) {
        let mu = rpf_equilibrium(&s, &f, t, 6).unwrap();
        for n in 1..=6 {
            let total: f64 = mu.level(n).unwrap().values().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(mu.level(n).unwrap().values().all(|&v| v >= 0.0));
        }
        for (w, &v) in mu.level(5).unwrap() {
            let ext: f64 = mu.level(6).unwrap().iter().filter(|(u, _)| u.starts_with(w)).map(|(_, &x)| x).sum();
            prop_assert!((v - ext).abs() < 1e-15);
        }
        prop_assert!(mu.invariance_defect() < 1e-12);
        let e = entropy_estimate(&mu, 6).unwrap();
        prop_assert!(e.per_n.windows(2).all(|p| p[1] <= p[0] + 1e-9));
        let p = transfer_pressure(&s, &f, t).unwrap().value;
        prop_assert!((e.value + t * mean_f1(&mu, &f).unwrap() - p).abs() < 1e-6);
    }

    #[test]
    fn variational_inequality_on_orbits((s, f) in with_weights(4), t in 1.5f64..6.0, seed in any::<u64>()) {
        let p = transfer_pressure(&s, &f, t).unwrap().value;
        let succ = s.successor_indices().unwrap().to_vec();
        // a cycle read off a deterministic walk
        let mut v = (seed as usize) % succ.len();
        let mut seen = vec![usize::MAX; succ.len()];
        let mut path = Vec::new();
        let mut x = seed;
        while seen[v] == usize::MAX {
            seen[v] = path.len();
            path.push(v);
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            v = succ[v][(x >> 33) as usize % succ[v].len()];
        }
        let cycle = &path[seen[v]..];
        let mu = CylinderMeasure::periodic_orbit(cycle, cycle.len() + 2).unwrap();
        let h = entropy_estimate(&mu, cycle.len() + 2).unwrap().value;
        prop_assert!(h + t * mean_f1(&mu, &f).unwrap() <= p + 1e-9);
    }

    #[test]
    fn pre_average_gibbs_bound((s, f) in with_weights(4), t in 1.0f64..4.0, n in 1usize..=6) {
        let p = transfer_pressure(&s, &f, t).unwrap().value;
        let nu = gibbs_pre_average(&s, &f, t, n).unwrap();
        let tf = f.scale(t);
        let bound = (t * f.c_bv()).exp();
        for (w, &v) in nu.level(n).unwrap() {
            let ratio = v / (tf.eval_fn(w).unwrap() - n as f64 * p).exp();
            prop_assert!(ratio <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn zero_temperature_bounds((s, f) in with_weights(4), t in 2.0f64..40.0) {
        let (beta, _, _) = max_mean_cycle(&s, &f).unwrap();
        let p = transfer_pressure(&s, &f, t).unwrap().value;
        let mu = rpf_equilibrium(&s, &f, t, 1).unwrap();
        prop_assert!(mean_f1(&mu, &f).unwrap() <= beta + 1e-9);
        prop_assert!((p / t - beta).abs() <= (s.len() as f64).ln() / t + 1e-6);
    }

    #[test]
    fn truncation_pressure_is_monotone(beta in 1.2f64..3.0, t in 1.1f64..3.0) {
        let ambient = ShiftModel::truncation(AmbientRule::Renewal, 60).unwrap();
        let approx = compact_approximation(&ambient, 3, Default::default()).unwrap();
        let pot = PotentialSeq::decay(DecayLaw::NegLog { beta });
        let curve = truncation_curve(&pot, t, &approx, Default::default()).unwrap();
        prop_assert!(curve.levels.windows(2).all(|l| l[1].2 >= l[0].2 - 1e-9));
    }
}

#[test]
fn golden_mean_word_counts_are_fibonacci() {
    let g = ShiftModel::golden_mean();
    let (mut a, mut b) = (1usize, 2usize);
    for n in 1..=16 {
        (a, b) = (b, a + b);
        assert_eq!(g.admissible_words(n).unwrap().len(), a, "n = {n}");
    }
}

#[test]
fn f32_and_f64_pressures_agree() {
    let full = ShiftModel::full(2);
    let p64 = transfer_pressure(&full, &PotentialSeq::<f64>::symbolwise(&[(0, 0.0), (1, -1.0)]).unwrap(), 2.0)
        .unwrap()
        .value;
    let p32 = transfer_pressure(&full, &PotentialSeq::<f32>::symbolwise(&[(0, 0.0), (1, -1.0)]).unwrap(), 2.0f32)
        .unwrap()
        .value;
    assert!((p64 - p32 as f64).abs() < 1e-5);
}
