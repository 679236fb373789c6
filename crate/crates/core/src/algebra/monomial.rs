use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;
use crate::graph::{Vertex, VertexOrdering};

/// A monomial of `K[x_1..x_n] / <x_v^k - 1>`: exponents in `Z_k`, stored
/// sparsely as `(vertex, exponent)` pairs sorted by vertex, zeros omitted.
///
/// `Ord` is GLEX with `x_1 ≻ x_2 ≻ … ≻ x_n`: total degree first, then the
/// exponent of the lowest-labelled vertex where the two differ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    k: u32,
    degree: u32,
    terms: Vec<(Vertex, u32)>,
}

impl ExponentVector {
    /// The constant monomial `1`.
    pub fn one(k: u32) -> Self {
        Self {
            k,
            degree: 0,
            terms: Vec::new(),
        }
    }

    /// `x_v` (which is `1` when `k == 1`).
    pub fn var(k: u32, v: Vertex) -> Self {
        Self::from_reduced(k, [(v, 1)])
    }

    /// Checked constructor: every exponent must be below `k`.
    pub fn new(k: u32, pairs: impl IntoIterator<Item = (Vertex, u32)>) -> Result<Self, AlgebraError> {
        let mut terms: Vec<(Vertex, u32)> = Vec::new();
        for (v, e) in pairs {
            if e >= k {
                return Err(AlgebraError::ExponentOutOfRange { vertex: v, exp: e, k });
            }
            terms.push((v, e));
        }
        terms.sort_unstable();
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            let v = terms.windows(2).find(|w| w[0].0 == w[1].0).unwrap()[0].0;
            return Err(AlgebraError::ExponentOutOfRange {
                vertex: v,
                exp: terms.iter().filter(|t| t.0 == v).map(|t| t.1).sum(),
                k,
            });
        }
        terms.retain(|&(_, e)| e != 0);
        Ok(Self::from_sorted(k, terms))
    }

    /// Reduces every exponent modulo `k`; repeated vertices add up.
    pub fn from_reduced(k: u32, pairs: impl IntoIterator<Item = (Vertex, u32)>) -> Self {
        let mut terms: Vec<(Vertex, u32)> = pairs.into_iter().collect();
        terms.sort_unstable();
        let mut merged: Vec<(Vertex, u32)> = Vec::with_capacity(terms.len());
        for (v, e) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 = (last.1 + e) % k,
                _ => merged.push((v, e % k)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        Self::from_sorted(k, merged)
    }

    fn from_sorted(k: u32, terms: Vec<(Vertex, u32)>) -> Self {
        let degree = terms.iter().map(|t| t.1).sum();
        Self { k, degree, terms }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `|α|`, the sum of the exponents.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Vertex, u32)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    pub fn exponent(&self, v: Vertex) -> u32 {
        self.terms
            .binary_search_by_key(&v, |t| t.0)
            .map_or(0, |i| self.terms[i].1)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.terms.last().map(|t| t.0)
    }

    /// Product in the quotient ring: exponents add modulo `k`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            match (a, b) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    let e = (ea + eb) % k;
                    if e != 0 {
                        out.push((va, e));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    out.push((va, ea));
                    i += 1;
                }
                (Some(&(va, ea)), None) => {
                    out.push((va, ea));
                    i += 1;
                }
                (_, Some(&(vb, eb))) => {
                    out.push((vb, eb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self::from_sorted(k, out)
    }

    /// Adds `delta` (taken modulo `k`, may be negative) to the exponent of `v`.
    pub fn shifted(&self, v: Vertex, delta: i64) -> Self {
        let k = i64::from(self.k);
        let e = (i64::from(self.exponent(v)) + delta).rem_euclid(k) as u32;
        let mut terms = self.terms.clone();
        match terms.binary_search_by_key(&v, |t| t.0) {
            Ok(i) if e == 0 => {
                terms.remove(i);
            }
            Ok(i) => terms[i].1 = e,
            Err(_) if e == 0 => {}
            Err(i) => terms.insert(i, (v, e)),
        }
        Self::from_sorted(self.k, terms)
    }

    /// Renames every vertex `v` to `order.new_label(v)`.
    pub fn relabel(&self, order: &VertexOrdering) -> Self {
        Self::from_reduced(
            self.k,
            self.terms.iter().map(|&(v, e)| (order.new_label(v), e)),
        )
    }

    /// Whether `self` divides `other` as ordinary monomials (exponent-wise ≤).
    pub fn divides(&self, other: &Self) -> bool {
        self.terms.iter().all(|&(v, e)| other.exponent(v) >= e)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then(self.degree.cmp(&other.degree))
            .then_with(|| lex_cmp(&self.terms, &other.terms))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Lex with vertex 1 most significant on sparse sorted exponent lists.
fn lex_cmp(a: &[(Vertex, u32)], b: &[(Vertex, u32)]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x.0 != y.0 {
            // the list holding the smaller vertex has a positive exponent
            // where the other has zero
            return y.0.cmp(&x.0);
        }
        if x.1 != y.1 {
            return x.1.cmp(&y.1);
        }
    }
    a.len().cmp(&b.len())
}

/// GLEX comparison that refuses monomials of different quotient rings.
pub fn glex_compare(a: &ExponentVector, b: &ExponentVector) -> Result<Ordering, AlgebraError> {
    if a.k != b.k {
        return Err(AlgebraError::MismatchedColors(a.k, b.k));
    }
    Ok(a.cmp(b))
}

/// All `α ∈ Z_k^V` with `|α| ≤ max_degree`, GLEX-descending: the constant
/// monomial comes last.
pub fn enumerate_monomials(vertices: &[Vertex], k: u32, max_degree: u32) -> Vec<ExponentVector> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    extend_monomials(&vs, k, max_degree, &mut stack, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn extend_monomials(
    rest: &[Vertex],
    k: u32,
    budget: u32,
    stack: &mut Vec<(Vertex, u32)>,
    out: &mut Vec<ExponentVector>,
) {
    let Some((&v, tail)) = rest.split_first() else {
        out.push(ExponentVector::from_sorted(k, stack.clone()));
        return;
    };
    extend_monomials(tail, k, budget, stack, out);
    for e in 1..k.min(budget + 1) {
        stack.push((v, e));
        extend_monomials(tail, k, budget - e, stack, out);
        stack.pop();
    }
}

impl fmt::Display for ExponentVector {
    /// `x_5^2x_6`, or `1` for the constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("1");
        }
        for &(v, e) in &self.terms {
            if e == 1 {
                write!(f, "x_{v}")?;
            } else {
                write!(f, "x_{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the `x_5^2x_6` notation (with `k` supplied separately) into raw
/// `(vertex, exponent)` pairs.
pub fn parse_monomial_pairs(s: &str) -> Option<Vec<(Vertex, u32)>> {
    let s = s.trim();
    if s == "1" {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for chunk in s.split("x_").skip(1) {
        let chunk = chunk.trim_end_matches('*');
        let (v, e) = match chunk.split_once('^') {
            Some((v, e)) => (v.parse().ok()?, e.parse().ok()?),
            None => (chunk.parse().ok()?, 1),
        };
        out.push((v, e));
    }
    if !s.starts_with("x_") || out.is_empty() {
        return None;
    }
    Some(out)
}

/// A monomial written as `k:x_1^2x_3`, for command-line and test convenience.
impl FromStr for ExponentVector {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Json(format!("cannot parse monomial `{s}`"));
        let (k, body) = s.split_once(':').ok_or_else(bad)?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let pairs = parse_monomial_pairs(body).ok_or_else(bad)?;
        Self::new(k, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(k: u32, pairs: &[(u32, u32)]) -> ExponentVector {
        ExponentVector::new(k, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn glex_examples() {
        use Ordering::*;
        assert_eq!(glex_compare(&ev(3, &[(1, 1)]), &ev(3, &[(2, 1)])), Ok(Greater));
        assert_eq!(glex_compare(&ev(3, &[(3, 2)]), &ev(3, &[(1, 1)])), Ok(Greater));
        assert_eq!(
            glex_compare(&ev(3, &[(1, 1), (3, 1)]), &ev(3, &[(2, 2)])),
            Ok(Greater)
        );
        assert_eq!(
            glex_compare(&ev(3, &[(1, 1)]), &ev(4, &[(1, 1)])),
            Err(AlgebraError::MismatchedColors(3, 4))
        );
    }

    #[test]
    fn enumerate_two_vertices() {
        let got: Vec<String> = enumerate_monomials(&[1, 2], 3, 2)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(got, ["x_1^2", "x_1x_2", "x_2^2", "x_1", "x_2", "1"]);
    }

    #[test]
    fn enumerate_degree_zero_and_squarefree() {
        assert_eq!(enumerate_monomials(&[1, 2, 3, 4], 5, 0), vec![ExponentVector::one(5)]);
        // subsets of {1,2,3} of size <= 3
        assert_eq!(enumerate_monomials(&[1, 2, 3], 2, 3).len(), 8);
    }

    #[test]
    fn exponent_range_checked() {
        assert!(matches!(
            ExponentVector::new(3, [(1, 3)]),
            Err(AlgebraError::ExponentOutOfRange { vertex: 1, exp: 3, k: 3 })
        ));
    }

    #[test]
    fn shifted_wraps() {
        let m = ev(3, &[(2, 2)]);
        assert_eq!(m.shifted(2, 1), ExponentVector::one(3));
        assert_eq!(m.shifted(2, -1), ev(3, &[(2, 1)]));
        assert_eq!(m.shifted(5, -1), ev(3, &[(2, 2), (5, 2)]));
    }

    #[test]
    fn display_and_parse() {
        let m = ev(3, &[(5, 2), (6, 1), (7, 1), (8, 2), (9, 1)]);
        assert_eq!(m.to_string(), "x_5^2x_6x_7x_8^2x_9");
        assert_eq!("3:x_5^2x_6x_7x_8^2x_9".parse::<ExponentVector>().unwrap(), m);
        assert_eq!("3:1".parse::<ExponentVector>().unwrap(), ExponentVector::one(3));
        assert!("3:y_1".parse::<ExponentVector>().is_err());
    }
}
