use coauthnet::topsis::{rank, CriteriaSpec, DecisionMatrix, Direction};
use coauthnet_oracles::topsis_reference;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_case(seed: u64) -> (Vec<Vec<f64>>, Vec<f64>, Vec<Direction>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.random_range(1..=6);
    let q = rng.random_range(1..=6);
    let d: Vec<Vec<f64>> = (0..p)
        .map(|_| {
            (0..q)
                .map(|_| match rng.random_range(0..10) {
                    0 => 0.0,
                    _ => rng.random_range(0.0..100.0),
                })
                .collect()
        })
        .collect();
    let raw: Vec<f64> = (0..q).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // Push the rounding residue into the last weight so the sum is 1.
    let head: f64 = weights[..q - 1].iter().sum();
    weights[q - 1] = 1.0 - head;
    let directions = (0..q)
        .map(|_| {
            if rng.random_bool(0.3) {
                Direction::Cost
            } else {
                Direction::Benefit
            }
        })
        .collect();
    (d, weights, directions)
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12)
}

#[test]
fn pipeline_matches_stepwise_reference() {
    for seed in 0..500 {
        let (d, w, dirs) = random_case(seed);
        let spec = CriteriaSpec::new(w.clone(), dirs.clone()).unwrap();
        let ours = rank(&DecisionMatrix::from_rows(d.clone()).unwrap(), &spec).unwrap();
        let benefit: Vec<bool> = dirs.iter().map(|&x| x == Direction::Benefit).collect();
        let r = topsis_reference(&d, &w, &benefit);
        let t = &ours.tableau;
        for i in 0..d.len() {
            assert!(close(&t.normalized[i], &r.normalized[i]), "seed {seed}");
            assert!(close(&t.weighted[i], &r.weighted[i]), "seed {seed}");
        }
        assert!(close(&t.ideal, &r.ideal), "seed {seed}");
        assert!(close(&t.anti_ideal, &r.anti_ideal), "seed {seed}");
        assert!(close(&t.s_plus, &r.s_plus), "seed {seed}");
        assert!(close(&t.s_minus, &r.s_minus), "seed {seed}");
        assert!(close(&t.closeness, &r.closeness), "seed {seed}");
    }
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(p, q)| {
        proptest::collection::vec(proptest::collection::vec(0.0f64..1000.0, q), p)
    })
}

fn equal_spec(q: usize) -> CriteriaSpec {
    CriteriaSpec::equal(q).unwrap()
}

proptest! {
    #[test]
    fn closeness_in_unit_interval(d in arb_matrix()) {
        let q = d[0].len();
        let r = rank(&DecisionMatrix::from_rows(d).unwrap(), &equal_spec(q)).unwrap();
        for c in &r.tableau.closeness {
            prop_assert!((0.0..=1.0).contains(c));
        }
        for w in r.order.windows(2) {
            prop_assert!(w[0].closeness >= w[1].closeness);
        }
        let ranks: Vec<usize> = r.order.iter().map(|a| a.rank).collect();
        prop_assert_eq!(ranks, (1..=r.order.len()).collect::<Vec<_>>());
    }

    #[test]
    fn column_scaling_leaves_closeness(d in arb_matrix(), col in 0usize..6, factor in 0.001f64..1000.0) {
        let q = d[0].len();
        let col = col % q;
        let scaled: Vec<Vec<f64>> = d
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &x)| if j == col { x * factor } else { x }).collect())
            .collect();
        let a = rank(&DecisionMatrix::from_rows(d).unwrap(), &equal_spec(q)).unwrap();
        let b = rank(&DecisionMatrix::from_rows(scaled).unwrap(), &equal_spec(q)).unwrap();
        for (x, y) in a.tableau.closeness.iter().zip(&b.tableau.closeness) {
            prop_assert!((x - y).abs() <= 1e-12, "{} vs {}", x, y);
        }
    }

    #[test]
    fn row_permutation_permutes_closeness(d in arb_matrix(), shift in 0usize..6) {
        let q = d[0].len();
        let p = d.len();
        let perm: Vec<usize> = (0..p).map(|i| (i + shift) % p).collect();
        let permuted: Vec<Vec<f64>> = perm.iter().map(|&i| d[i].clone()).collect();
        let a = rank(&DecisionMatrix::from_rows(d).unwrap(), &equal_spec(q)).unwrap();
        let b = rank(&DecisionMatrix::from_rows(permuted).unwrap(), &equal_spec(q)).unwrap();
        for (k, &i) in perm.iter().enumerate() {
            prop_assert!((b.tableau.closeness[k] - a.tableau.closeness[i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn dominance_respected(d in arb_matrix(), bumps in proptest::collection::vec(0.0f64..50.0, 6)) {
        // Append a row that weakly dominates row 0 on every benefit column.
        let q = d[0].len();
        let mut d = d;
        let better: Vec<f64> = d[0].iter().zip(&bumps).map(|(x, b)| x + b).collect();
        d.push(better);
        let last = d.len() - 1;
        let r = rank(&DecisionMatrix::from_rows(d).unwrap(), &equal_spec(q)).unwrap();
        prop_assert!(r.tableau.closeness[last] >= r.tableau.closeness[0] - 1e-12);
    }
}
