//! Exact sparse linear systems: reduced row echelon form, feasibility and
//! basic solutions.
//!
//! The column order of a system is significant. The echelon form is reduced,
//! so its pivot columns are the lexicographically first column basis of the
//! row space under that order; with GLEX-descending monomial columns they are
//! exactly the leading monomials of the row space.

use std::fmt::Write as _;

use crate::field::Field;

/// A sparse row: strictly increasing column indices with nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRow<E> {
    cols: Vec<usize>,
    vals: Vec<E>,
}

impl<E: Clone> SparseRow<E> {
    pub fn empty() -> Self {
        Self {
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &E)> {
        self.cols.iter().copied().zip(self.vals.iter())
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn get(&self, col: usize) -> Option<&E> {
        self.cols.binary_search(&col).ok().map(|i| &self.vals[i])
    }

    fn leading(&self) -> Option<(usize, &E)> {
        self.cols.first().map(|&c| (c, &self.vals[0]))
    }
}

/// `a - s·b` on sparse rows.
fn sub_scaled<F: Field>(f: &F, a: &SparseRow<F::Elem>, s: &F::Elem, b: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut cols = Vec::with_capacity(a.cols.len() + b.cols.len());
    let mut vals = Vec::with_capacity(a.cols.len() + b.cols.len());
    let (mut i, mut j) = (0, 0);
    let neg_s = f.neg(s);
    while i < a.cols.len() || j < b.cols.len() {
        let ca = a.cols.get(i).copied().unwrap_or(usize::MAX);
        let cb = b.cols.get(j).copied().unwrap_or(usize::MAX);
        if ca < cb {
            cols.push(ca);
            vals.push(a.vals[i].clone());
            i += 1;
        } else if cb < ca {
            cols.push(cb);
            vals.push(f.mul(&neg_s, &b.vals[j]));
            j += 1;
        } else {
            let v = f.mul_add(&neg_s, &b.vals[j], &a.vals[i]);
            if !f.is_zero(&v) {
                cols.push(ca);
                vals.push(v);
            }
            i += 1;
            j += 1;
        }
    }
    SparseRow { cols, vals }
}

fn scale_row<F: Field>(f: &F, a: &SparseRow<F::Elem>, s: &F::Elem) -> SparseRow<F::Elem> {
    SparseRow {
        cols: a.cols.clone(),
        vals: a.vals.iter().map(|v| f.mul(v, s)).collect(),
    }
}

/// `A y = b` over `F`, with one label per column.
#[derive(Clone, Debug)]
pub struct SparseLinearSystem<F: Field, L> {
    field: F,
    labels: Vec<L>,
    rows: Vec<SparseRow<F::Elem>>,
    rhs: Vec<F::Elem>,
}

impl<F: Field, L> SparseLinearSystem<F, L> {
    pub fn new(field: F, labels: Vec<L>) -> Self {
        Self {
            field,
            labels,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Appends a row; repeated column indices add up and zero sums are dropped.
    ///
    /// # Panics
    /// On a column index outside the system.
    pub fn add_row(&mut self, entries: impl IntoIterator<Item = (usize, F::Elem)>, rhs: F::Elem) {
        let f = &self.field;
        let mut es: Vec<(usize, F::Elem)> = entries.into_iter().collect();
        es.sort_by_key(|e| e.0);
        let mut cols: Vec<usize> = Vec::with_capacity(es.len());
        let mut vals: Vec<F::Elem> = Vec::with_capacity(es.len());
        for (c, v) in es {
            assert!(c < self.labels.len(), "column {c} out of range");
            if cols.last() == Some(&c) {
                let last = vals.last_mut().unwrap();
                *last = f.add(last, &v);
            } else {
                cols.push(c);
                vals.push(v);
            }
        }
        let mut row = SparseRow::empty();
        for (c, v) in cols.into_iter().zip(vals) {
            if !f.is_zero(&v) {
                row.cols.push(c);
                row.vals.push(v);
            }
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn ncols(&self) -> usize {
        self.labels.len()
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> (&SparseRow<F::Elem>, &F::Elem) {
        (&self.rows[i], &self.rhs[i])
    }

    pub fn rows(&self) -> impl Iterator<Item = (&SparseRow<F::Elem>, &F::Elem)> {
        self.rows.iter().zip(self.rhs.iter())
    }

    /// Number of stored nonzeros.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseRow::len).sum()
    }

    /// Whether `values` (one per column) satisfies every row exactly.
    pub fn is_satisfied_by(&self, values: &[F::Elem]) -> bool {
        self.first_violated_row(values).is_none()
    }

    pub fn first_violated_row(&self, values: &[F::Elem]) -> Option<usize> {
        let f = &self.field;
        self.rows().position(|(row, b)| {
            let lhs = row
                .entries()
                .fold(f.zero(), |acc, (c, a)| f.mul_add(a, &values[c], &acc));
            lhs != *b
        })
    }

    /// MatrixMarket coordinate dump of `[A | b]`, for debugging.
    pub fn to_matrix_market(&self) -> String {
        let f = &self.field;
        let nnz = self.nnz() + self.rhs.iter().filter(|b| !f.is_zero(b)).count();
        let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
        let _ = writeln!(out, "% field {}", f.spec());
        let _ = writeln!(out, "{} {} {}", self.nrows(), self.ncols() + 1, nnz);
        for (i, (row, b)) in self.rows().enumerate() {
            for (c, v) in row.entries() {
                let _ = writeln!(out, "{} {} {}", i + 1, c + 1, f.format(v));
            }
            if !f.is_zero(b) {
                let _ = writeln!(out, "{} {} {}", i + 1, self.ncols() + 1, f.format(b));
            }
        }
        out
    }
}

/// One row of a reduced echelon form: leading entry 1 at `pivot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonRow<E> {
    pub pivot: usize,
    pub row: SparseRow<E>,
    pub rhs: E,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm<E> {
    /// Nonzero rows by increasing pivot column.
    pub rows: Vec<EchelonRow<E>>,
    /// Some row reduced to `0 = c` with `c ≠ 0`.
    pub inconsistent: bool,
}

impl<E> EchelonForm<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }
}

/// Gauss–Jordan elimination to the reduced row echelon form of `A`, with the
/// right-hand side carried along.
///
/// Pivots are taken leftmost-column first. The reduced form does not depend on
/// which row supplies a pivot, so rows are inserted in input order and reduced
/// against the pivots found so far, followed by one back-substitution pass.
pub fn rref<F: Field, L>(sys: &SparseLinearSystem<F, L>) -> EchelonForm<F::Elem> {
    let f = &sys.field;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; sys.ncols()];
    let mut basis: Vec<EchelonRow<F::Elem>> = Vec::new();
    let mut inconsistent = false;

    for (row, b) in sys.rows() {
        let mut r = row.clone();
        let mut rhs = b.clone();
        loop {
            let Some((c, lead)) = r.leading() else {
                if !f.is_zero(&rhs) {
                    inconsistent = true;
                }
                break;
            };
            match pivot_of_col[c] {
                Some(p) => {
                    let s = lead.clone();
                    r = sub_scaled(f, &r, &s, &basis[p].row);
                    rhs = f.sub(&rhs, &f.mul(&s, &basis[p].rhs));
                }
                None => {
                    let inv = f.inv(lead).expect("leading entry is nonzero");
                    let r = scale_row(f, &r, &inv);
                    pivot_of_col[c] = Some(basis.len());
                    basis.push(EchelonRow {
                        pivot: c,
                        row: r,
                        rhs: f.mul(&rhs, &inv),
                    });
                    break;
                }
            }
        }
    }

    // back-substitution, rightmost pivot first: rows to the right are already
    // fully reduced, so eliminating one pivot column never reintroduces another
    basis.sort_by_key(|r| r.pivot);
    let mut pivot_index: Vec<Option<usize>> = vec![None; sys.ncols()];
    for (i, r) in basis.iter().enumerate() {
        pivot_index[r.pivot] = Some(i);
    }
    for i in (0..basis.len()).rev() {
        let targets: Vec<(usize, F::Elem)> = basis[i]
            .row
            .entries()
            .skip(1)
            .filter_map(|(c, v)| pivot_index[c].map(|j| (j, v.clone())))
            .collect();
        for (j, s) in targets {
            let (lo, hi) = basis.split_at_mut(j);
            let target = &mut lo[i];
            let source = &hi[0];
            target.row = sub_scaled(f, &target.row, &s, &source.row);
            target.rhs = f.sub(&target.rhs, &f.mul(&s, &source.rhs));
        }
    }

    EchelonForm {
        rows: basis,
        inconsistent,
    }
}

/// A solution that vanishes off the basis (the pivot columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSolution<E> {
    pub values: Vec<E>,
    pub basis: Vec<usize>,
}

impl<E> BasicSolution<E> {
    pub fn value(&self, col: usize) -> &E {
        &self.values[col]
    }
}

/// Basic solution for the pivot basis of [`rref`], or `None` when infeasible.
pub fn solve_basic<F: Field, L>(sys: &SparseLinearSystem<F, L>) -> Option<BasicSolution<F::Elem>> {
    basic_solution_from(&sys.field, sys.ncols(), &rref(sys))
}

pub fn basic_solution_from<F: Field>(
    f: &F,
    ncols: usize,
    ech: &EchelonForm<F::Elem>,
) -> Option<BasicSolution<F::Elem>> {
    if ech.inconsistent {
        return None;
    }
    let mut values = vec![f.zero(); ncols];
    for r in &ech.rows {
        values[r.pivot] = r.rhs.clone();
    }
    Some(BasicSolution {
        values,
        basis: ech.pivots().collect(),
    })
}

pub fn feasible<F: Field, L>(sys: &SparseLinearSystem<F, L>) -> bool {
    !rref(sys).inconsistent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn gf7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn system(rows: &[(&[u32], u32)]) -> SparseLinearSystem<PrimeField, usize> {
        let ncols = rows.first().map_or(0, |r| r.0.len());
        let mut s = SparseLinearSystem::new(gf7(), (0..ncols).collect());
        for (coeffs, b) in rows {
            s.add_row(coeffs.iter().copied().enumerate(), *b);
        }
        s
    }

    #[test]
    fn identity_has_full_rank() {
        let e = rref(&system(&[(&[1, 0], 0), (&[0, 1], 0)]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn dependent_rows() {
        let e = rref(&system(&[(&[1, 1], 0), (&[2, 2], 0)]));
        assert_eq!(e.rank(), 1);
        assert!(!e.inconsistent);
    }

    #[test]
    fn basic_solution_zero_off_basis() {
        let s = system(&[(&[1, 1], 1)]);
        let sol = solve_basic(&s).unwrap();
        assert_eq!(sol.values, vec![1, 0]);
        assert_eq!(sol.basis, vec![0]);
        assert!(s.is_satisfied_by(&sol.values));
    }

    #[test]
    fn contradictory_rows() {
        let s = system(&[(&[1], 1), (&[1], 2)]);
        assert_eq!(solve_basic(&s), None);
        assert!(!feasible(&s));
    }

    #[test]
    fn constant_only_row() {
        let mut s = SparseLinearSystem::new(gf7(), vec!["a", "b", "one"]);
        s.add_row([(2, 1)], 1);
        let sol = solve_basic(&s).unwrap();
        assert_eq!(sol.values, vec![0, 0, 1]);
    }

    #[test]
    fn feasibility_edge_cases() {
        assert!(feasible(&system(&[(&[1, 2], 3)])));
        assert!(!feasible(&system(&[(&[0, 0], 1)])));
        assert!(feasible(&SparseLinearSystem::<_, usize>::new(gf7(), vec![])));
    }

    #[test]
    fn duplicate_entries_merge() {
        let mut s = SparseLinearSystem::new(gf7(), vec![0, 1]);
        s.add_row([(0, 3), (1, 1), (0, 4)], 0);
        assert_eq!(s.row(0).0.cols(), &[1]);
    }

    #[test]
    fn reduced_above_pivots() {
        // x + y + z = 1, y + z = 2  =>  x = -1, y + z = 2
        let s = system(&[(&[1, 1, 1], 1), (&[0, 1, 1], 2)]);
        let e = rref(&s);
        assert_eq!(e.rows[0].row.cols(), &[0]);
        assert_eq!(e.rows[0].rhs, 6);
        assert_eq!(e.rows[1].row.cols(), &[1, 2]);
    }

    #[test]
    fn matrix_market_dump() {
        let s = system(&[(&[1, 0], 3)]);
        let mm = s.to_matrix_market();
        assert!(mm.starts_with("%%MatrixMarket"));
        assert!(mm.contains("\n1 3 2\n"));
        assert!(mm.ends_with("1 1 1\n1 3 3\n"));
    }
}
