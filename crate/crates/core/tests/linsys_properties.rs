use proptest::prelude::*;

use nullcert::linsys::{feasible, rref, solve_basic, SparseLinearSystem};
use nullcert::{Field, PrimeField, Rationals};

type Dense = Vec<Vec<i64>>;

fn arb_system() -> impl Strategy<Value = (Dense, Vec<i64>)> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        (
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r),
            proptest::collection::vec(-3i64..=3, r),
        )
    })
}

fn build<F: Field>(f: &F, a: &Dense, b: &[i64]) -> SparseLinearSystem<F, usize> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut sys = SparseLinearSystem::new(f.clone(), (0..ncols).collect());
    for (row, &rhs) in a.iter().zip(b) {
        sys.add_row(row.iter().enumerate().map(|(j, &x)| (j, f.from_i64(x))), f.from_i64(rhs));
    }
    sys
}

/// Rank by cofactor expansion over all square minors (tiny sizes only).
fn minor_rank<F: Field>(f: &F, a: &[Vec<F::Elem>]) -> usize {
    fn det<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> F::Elem {
        if m.is_empty() {
            return f.one();
        }
        let mut acc = f.zero();
        for j in 0..m.len() {
            if f.is_zero(&m[0][j]) {
                continue;
            }
            let sub: Vec<Vec<F::Elem>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = f.mul(&m[0][j], &det(f, &sub));
            acc = if j % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (k - 1..n)
            .flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            }))
            .collect()
    }
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rows| {
                subsets(c, k).iter().any(|cols| {
                    let m: Vec<Vec<F::Elem>> =
                        rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
                    !f.is_zero(&det(f, &m))
                })
            })
        })
        .unwrap_or(0)
}

fn lift<F: Field>(f: &F, a: &Dense) -> Vec<Vec<F::Elem>> {
    a.iter().map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect()
}

fn check_rank<F: Field>(f: &F, a: &Dense, b: &[i64]) -> Result<(), TestCaseError> {
    let sys = build(f, a, b);
    let ech = rref(&sys);
    let rank_a = minor_rank(f, &lift(f, a));
    let aug: Dense = a.iter().zip(b).map(|(row, &x)| row.iter().copied().chain([x]).collect()).collect();
    let rank_aug = minor_rank(f, &lift(f, &aug));
    prop_assert_eq!(ech.inconsistent, rank_aug > rank_a);
    prop_assert_eq!(ech.rank(), rank_a);
    Ok(())
}

/// System `A^T y = 0, b·y = 1`: feasible exactly when some left-null vector
/// of `A` pairs nonzero with `b`.
fn left_null_witness<F: Field>(f: &F, a: &Dense, b: &[i64]) -> SparseLinearSystem<F, usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut sys = SparseLinearSystem::new(f.clone(), (0..nrows).collect());
    for j in 0..ncols {
        sys.add_row(a.iter().enumerate().map(|(i, row)| (i, f.from_i64(row[j]))), f.zero());
    }
    sys.add_row(b.iter().enumerate().map(|(i, &x)| (i, f.from_i64(x))), f.one());
    sys
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_minors_gf7((a, b) in arb_system()) {
        let f = PrimeField::new(7).unwrap();
        check_rank(&f, &a, &b)?;
    }

    #[test]
    fn rank_matches_minors_rationals((a, b) in arb_system()) {
        check_rank(&Rationals, &a, &b)?;
    }

    #[test]
    fn rref_is_idempotent((a, b) in arb_system()) {
        let f = PrimeField::new(7).unwrap();
        let ech = rref(&build(&f, &a, &b));
        let mut again = SparseLinearSystem::new(f, (0..a[0].len()).collect::<Vec<_>>());
        for r in &ech.rows {
            again.add_row(r.row.entries().map(|(c, v)| (c, *v)), r.rhs);
        }
        let ech2 = rref(&again);
        prop_assert_eq!(&ech2.rows, &ech.rows);
    }

    #[test]
    fn basic_solutions_resubstitute((a, b) in arb_system()) {
        for_both(&a, &b)?;
    }

    #[test]
    fn fredholm_alternative((a, b) in arb_system()) {
        let f = PrimeField::new(7).unwrap();
        prop_assert_ne!(feasible(&build(&f, &a, &b)), feasible(&left_null_witness(&f, &a, &b)));
        prop_assert_ne!(
            feasible(&build(&Rationals, &a, &b)),
            feasible(&left_null_witness(&Rationals, &a, &b))
        );
    }
}

fn for_both(a: &Dense, b: &[i64]) -> Result<(), TestCaseError> {
    fn one<F: Field>(f: &F, a: &Dense, b: &[i64]) -> Result<(), TestCaseError> {
        let sys = build(f, a, b);
        if let Some(sol) = solve_basic(&sys) {
            prop_assert!(sys.is_satisfied_by(&sol.values));
            for (c, v) in sol.values.iter().enumerate() {
                prop_assert!(sol.basis.contains(&c) || f.is_zero(v));
            }
        }
        Ok(())
    }
    one(&PrimeField::new(7).unwrap(), a, b)?;
    one(&Rationals, a, b)
}
