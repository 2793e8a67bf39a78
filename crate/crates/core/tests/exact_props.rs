use chowres::exactnum::{frac, rat};
use chowres::{ExactMatrix, Field, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

/// Determinant by cofactor expansion; independent of elimination.
fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|row| [&row[..c], &row[c + 1..]].concat()).collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] as i128 * cofactor_det(&minor)
        })
        .sum()
}

/// `#{v in F_p^cols : M v = 0}` by enumeration.
fn kernel_size_mod_p(m: &[Vec<i64>], p: i64) -> u64 {
    let cols = m[0].len();
    let total = (p as u64).pow(cols as u32);
    (0..total)
        .filter(|&code| {
            let v: Vec<i64> = (0..cols).map(|i| (code / (p as u64).pow(i as u32) % p as u64) as i64).collect();
            m.iter().all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p) == 0)
        })
        .count() as u64
}

proptest! {
    #[test]
    fn rationals_are_normalized(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let x = frac(a, b);
        let y = frac(c, d);
        prop_assert!(x.denom().is_positive());
        prop_assert!(num_integer::Integer::gcd(x.numer(), x.denom()).is_one() || x.is_zero());
        // cross-multiplied integer oracle
        let sum = &x + &y;
        prop_assert_eq!(sum.numer() * BigInt::from(b * d), sum.denom() * BigInt::from(a * d + c * b));
        let prod = &x * &y;
        prop_assert_eq!(prod.numer() * BigInt::from(b * d), prod.denom() * BigInt::from(a * c));
        prop_assert_eq!(frac(-a, -b), x.clone());
        prop_assert_eq!(frac(a * 7, b * 7), x);
    }

    #[test]
    fn rank_nullity(m in small_matrix(5, 6, 4)) {
        let a = ExactMatrix::from_i64_rows(Field::Rational, &m).unwrap();
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.apply(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn finite_field_rank_counts_kernel(m in small_matrix(4, 4, 6), pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        let a = ExactMatrix::from_i64_rows(Field::prime(p).unwrap(), &m).unwrap();
        let expected = kernel_size_mod_p(&m, p as i64);
        prop_assert_eq!(p.pow((a.cols() - a.rank()) as u32), expected);
    }

    #[test]
    fn inverse_is_two_sided(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))) {
        let a = ExactMatrix::from_i64_rows(Field::Rational, &m).unwrap();
        let det = cofactor_det(&m);
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(det != 0);
                let n = a.rows();
                prop_assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(Field::Rational, n));
                prop_assert_eq!(inv.mul(&a).unwrap(), ExactMatrix::identity(Field::Rational, n));
            }
            Err(_) => prop_assert_eq!(det, 0),
        }
    }

    #[test]
    fn smith_form_properties(m in small_matrix(4, 4, 9)) {
        let a = ExactMatrix::from_i64_rows(Field::Rational, &m).unwrap();
        let snf = a.smith_normal_form().unwrap();
        let d = &snf.diagonal;
        prop_assert_eq!(d.len(), a.rows().min(a.cols()));
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        let product = snf.left.mul(&a).unwrap().mul(&snf.right).unwrap();
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let expected = if r == c { Rational::from_integer(d[r].clone()) } else { rat(0) };
                prop_assert_eq!(product.get(r, c), expected);
            }
        }
        prop_assert!(snf.left.is_integral() && snf.right.is_integral());
        prop_assert_eq!(d.iter().filter(|x| !x.is_zero()).count(), a.rank());
        if a.rows() == a.cols() {
            let det: BigInt = d.iter().product();
            prop_assert_eq!(det.abs(), BigInt::from(cofactor_det(&m).abs()));
        }
    }
}

#[test]
fn unimodular_transforms_have_unit_determinant() {
    let a = ExactMatrix::from_i64_rows(Field::Rational, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    let snf = a.smith_normal_form().unwrap();
    assert_eq!(snf.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    for t in [&snf.left, &snf.right] {
        let rows: Vec<Vec<i64>> = t.to_rows().iter().map(|r| r.iter().map(|x| x.to_integer().try_into().unwrap()).collect()).collect();
        assert_eq!(cofactor_det(&rows).abs(), 1);
    }
}
