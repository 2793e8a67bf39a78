use std::sync::Arc;

use chowres::exactnum::rat;
use chowres::{DimVector, ExactMatrix, Field, Quiver, Representation, Weight};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn fixed_quivers() -> Vec<Arc<Quiver>> {
    vec![
        Arc::new(Quiver::kronecker(2)),
        Arc::new(Quiver::linear(3)),
        Arc::new(Quiver::new(["c", "a", "b", "d"], [("x", "a", "c"), ("y", "b", "c"), ("z", "d", "c")]).unwrap()),
        Arc::new(Quiver::new(["0", "1", "2"], [("a", "0", "1"), ("b", "0", "1"), ("c", "1", "2"), ("d", "0", "2")]).unwrap()),
        Arc::new(Quiver::new(["u", "v"], Vec::<(&str, &str, &str)>::new()).unwrap()),
    ]
}

fn random_rep(q: &Arc<Quiver>, dim: &DimVector, p: u64, rng: &mut StdRng) -> Representation {
    let field = Field::prime(p).unwrap();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dim[a.head] as usize, dim[a.tail] as usize);
            let vals: Vec<_> = (0..r * c).map(|_| rat(rng.random_range(0..p as i64))).collect();
            ExactMatrix::new(field, r, c, &vals).unwrap()
        })
        .collect();
    Representation::new(q.clone(), dim.clone(), field, maps).unwrap()
}

fn random_dim(q: &Quiver, rng: &mut StdRng) -> DimVector {
    DimVector((0..q.vertex_count()).map(|_| rng.random_range(0..3)).collect())
}

/// Paths `from -> to` by depth-first search.
fn dfs_paths(q: &Quiver, from: usize, to: usize) -> u64 {
    if from == to {
        return 1;
    }
    q.arrows().iter().filter(|a| a.tail == from).map(|a| dfs_paths(q, a.head, to)).sum()
}

/// `sum a_i b_i - sum_arrows a_t b_h`, written out directly.
fn euler_oracle(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    let diag: i64 = (0..q.vertex_count()).map(|i| (a[i] * b[i]) as i64).sum();
    let off: i64 = q.arrows().iter().map(|x| (a[x.tail] * b[x.head]) as i64).sum();
    diag - off
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn euler_identity_over_f5(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        for q in fixed_quivers() {
            let (da, db) = (random_dim(&q, &mut rng), random_dim(&q, &mut rng));
            let e = random_rep(&q, &da, 5, &mut rng);
            let f = random_rep(&q, &db, 5, &mut rng);
            let he = e.hom_ext(&f).unwrap();
            prop_assert_eq!(he.hom as i64 - he.ext1 as i64, euler_oracle(&q, &da, &db));
            prop_assert_eq!(q.euler_form(&da, &db).unwrap(), euler_oracle(&q, &da, &db));
        }
    }

    #[test]
    fn generated_subrep_is_closed(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        for q in fixed_quivers() {
            let dim = random_dim(&q, &mut rng);
            let e = random_rep(&q, &dim, 3, &mut rng);
            let seeds: Vec<Vec<Vec<_>>> = (0..q.vertex_count())
                .map(|v| {
                    let d = dim[v] as usize;
                    if d == 0 || rng.random_bool(0.5) {
                        vec![]
                    } else {
                        vec![(0..d).map(|_| rat(rng.random_range(0..3))).collect()]
                    }
                })
                .collect();
            let spans = e.generated_spans(&seeds).unwrap();
            let generated = e.generated_subrep(&seeds).unwrap();
            for v in 0..q.vertex_count() {
                prop_assert!(generated[v] <= dim[v]);
            }
            let again: Vec<Vec<Vec<_>>> = spans.iter().map(|s| s.to_rows()).collect();
            prop_assert_eq!(e.generated_subrep(&again).unwrap(), generated);
        }
    }

    #[test]
    fn stable_kronecker_reps_are_bricks(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = Arc::new(Quiver::kronecker(3));
        let dim = DimVector(vec![1, 2]);
        let theta = Weight::from_integers(&[-2, 1]);
        let e = random_rep(&q, &dim, 3, &mut rng);
        let f = random_rep(&q, &dim, 3, &mut rng);
        let (se, sf) = (e.is_theta_stable(&theta).unwrap(), f.is_theta_stable(&theta).unwrap());
        if se {
            prop_assert_eq!(e.hom_ext(&e).unwrap().hom, 1);
        }
        if se && sf {
            let hom = e.hom_ext(&f).unwrap().hom;
            // stable reps of equal dimension: either isomorphic or orthogonal
            prop_assert!(hom <= 1);
            if hom == 1 {
                prop_assert_eq!(f.hom_ext(&e).unwrap().hom, 1);
            }
        }
    }

    #[test]
    fn subset_checker_survives_reduction(vals in prop::collection::vec(1i64..=6, 3), sign in prop::bool::ANY, zero in 0usize..4) {
        let q = Arc::new(Quiver::kronecker(3));
        let mut entries = vals.clone();
        if zero < 3 {
            entries[zero] = 0;
        }
        let maps: Vec<ExactMatrix> = entries.iter().map(|&v| ExactMatrix::from_i64_rows(Field::Rational, &[vec![v]]).unwrap()).collect();
        let e = Representation::new(q, DimVector(vec![1, 1]), Field::Rational, maps).unwrap();
        let theta = if sign { Weight::from_integers(&[-1, 1]) } else { Weight::from_integers(&[1, -1]) };
        let over_q = e.stable_by_subsets(&theta).unwrap();
        let reduced = e.reduce_mod(7).unwrap();
        prop_assert_eq!(reduced.stable_by_subspaces(&theta).unwrap(), over_q);
        prop_assert_eq!(reduced.stable_by_subsets(&theta).unwrap(), over_q);
    }
}

#[test]
fn path_counts_match_search() {
    for q in fixed_quivers() {
        for i in 0..q.vertex_count() {
            for j in 0..q.vertex_count() {
                assert_eq!(q.path_count(i, j).unwrap(), dfs_paths(&q, i, j));
            }
        }
    }
    let long = Quiver::linear(6);
    assert_eq!(long.path_count(0, 5).unwrap(), 1);
}

/// Every representation of `K_n` with `alpha = (1, 1)` over `F_3`.
fn all_thin_kronecker(n: usize) -> Vec<Representation> {
    let field = Field::prime(3).unwrap();
    let q = Arc::new(Quiver::kronecker(n));
    (0..3u64.pow(n as u32))
        .map(|code| {
            let maps =
                (0..n).map(|i| ExactMatrix::from_i64_rows(field, &[vec![(code / 3u64.pow(i as u32) % 3) as i64]]).unwrap()).collect();
            Representation::new(q.clone(), DimVector(vec![1, 1]), field, maps).unwrap()
        })
        .collect()
}

#[test]
fn stability_checkers_agree_on_thin_kronecker() {
    for n in [2, 3] {
        let reps = all_thin_kronecker(n);
        assert_eq!(reps.len(), 3usize.pow(n as u32));
        for theta in [Weight::from_integers(&[-1, 1]), Weight::from_integers(&[1, -1]), Weight::from_integers(&[-3, 3])] {
            let mut stable = 0;
            for e in &reps {
                let subsets = e.stable_by_subsets(&theta).unwrap();
                assert_eq!(subsets, e.stable_by_subspaces(&theta).unwrap());
                stable += subsets as usize;
            }
            // with theta_0 < 0 exactly the nonzero reps are stable; the other sign admits none
            let expected = if theta.0[0] < rat(0) { reps.len() - 1 } else { 0 };
            assert_eq!(stable, expected);
        }
    }
}

#[test]
fn moduli_dimensions() {
    for n in 1..6 {
        assert_eq!(Quiver::kronecker(n + 1).moduli_dimension(&DimVector(vec![1, 1])).unwrap(), n as i64);
    }
    for (n, k) in [(4usize, 2u64), (5, 2), (5, 3), (6, 1)] {
        assert_eq!(Quiver::kronecker(n).moduli_dimension(&DimVector(vec![1, k])).unwrap(), (k * (n as u64 - k)) as i64);
    }
}
