use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ExponentVector;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::graph::{Graph, Vertex};

/// An element of `R_{V,k} = K[x_v : v ∈ V] / <x_v^k - 1>` with `V = {1..n}`.
///
/// Terms are kept in a GLEX-ordered map without zero coefficients, so the
/// leading monomial is the last key.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientPolynomial<F: Field> {
    field: F,
    k: u32,
    n: u32,
    terms: BTreeMap<ExponentVector, F::Elem>,
}

impl<F: Field> QuotientPolynomial<F> {
    pub fn zero(field: F, k: u32, n: u32) -> Self {
        Self {
            field,
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, k: u32, n: u32, c: F::Elem) -> Self {
        Self::monomial(field, k, n, ExponentVector::one(k), c)
    }

    pub fn one(field: F, k: u32, n: u32) -> Self {
        let c = field.one();
        Self::constant(field, k, n, c)
    }

    pub fn monomial(field: F, k: u32, n: u32, m: ExponentVector, c: F::Elem) -> Self {
        let mut p = Self::zero(field, k, n);
        p.add_term(m, c);
        p
    }

    /// Builds from `(monomial, coefficient)` pairs, combining repeats.
    pub fn from_terms(
        field: F,
        k: u32,
        n: u32,
        terms: impl IntoIterator<Item = (ExponentVector, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(field, k, n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c · x^m` in place.
    pub fn add_term(&mut self, m: ExponentVector, c: F::Elem) {
        debug_assert_eq!(m.k(), self.k, "monomial from another quotient ring");
        debug_assert!(m.max_vertex().is_none_or(|v| v <= self.n));
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && self.field.is_one(c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in GLEX-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &F::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &ExponentVector) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_monomial(&self) -> Option<&ExponentVector> {
        self.terms.keys().next_back()
    }

    /// Largest total degree among the terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.k != other.k {
            return Err(AlgebraError::MismatchedColors(self.k, other.k));
        }
        if self.n != other.n {
            return Err(AlgebraError::MismatchedAmbient(self.n, other.n));
        }
        Ok(())
    }

    /// # Panics
    /// When the operands live in different quotient rings.
    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("incompatible operands");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// # Panics
    /// When the operands live in different quotient rings.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.k, self.n);
        if self.field.is_zero(c) {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &ExponentVector) -> Self {
        let mut out = Self::zero(self.field.clone(), self.k, self.n);
        for (t, c) in &self.terms {
            out.add_term(t.mul(m), c.clone());
        }
        out
    }

    /// Product in `R_{V,k}`: exponents add modulo `k`.
    ///
    /// # Panics
    /// When the operands live in different quotient rings.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("incompatible operands");
        let mut out = Self::zero(self.field.clone(), self.k, self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    /// Value at `point`; every vertex in the support needs an assignment.
    ///
    /// Exponents are the stored representatives in `0..k`, so this is a ring
    /// homomorphism only at points whose coordinates are k-th roots of unity.
    pub fn evaluate(&self, point: &HashMap<Vertex, F::Elem>) -> Result<F::Elem, AlgebraError> {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.terms() {
                let x = point.get(&v).ok_or(AlgebraError::MissingAssignment(v))?;
                term = f.mul(&term, &f.pow(x, u64::from(e)));
            }
            acc = f.add(&acc, &term);
        }
        Ok(acc)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = PolyJson {
            k: self.k,
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exps: m.terms().iter().map(|&(v, e)| (v.to_string(), e)).collect(),
                    coeff: self.field.format(c),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("polynomial serializes")
    }

    pub fn from_json_value(field: F, n: u32, value: &serde_json::Value) -> Result<Self, AlgebraError> {
        let doc: PolyJson =
            serde_json::from_value(value.clone()).map_err(|e| AlgebraError::Json(e.to_string()))?;
        let mut p = Self::zero(field.clone(), doc.k, n);
        for t in doc.terms {
            let mut pairs = Vec::with_capacity(t.exps.len());
            for (v, e) in t.exps {
                let v: Vertex = v
                    .parse()
                    .map_err(|_| AlgebraError::Json(format!("bad vertex key `{v}`")))?;
                if v == 0 || v > n {
                    return Err(AlgebraError::VertexOutOfRange(v));
                }
                pairs.push((v, e));
            }
            let m = ExponentVector::new(doc.k, pairs)?;
            p.add_term(m, field.parse(&t.coeff)?);
        }
        Ok(p)
    }
}

impl<F: Field> fmt::Debug for QuotientPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for QuotientPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{}", self.field.format(c))?;
            } else if self.field.is_one(c) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", self.field.format(c))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    k: u32,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: BTreeMap<String, u32>,
    coeff: String,
}

/// `q_uv = (x_u^k - x_v^k) / (x_u - x_v) = Σ_{r=0}^{k-1} x_u^{k-1-r} x_v^r`.
pub fn edge_polynomial<F: Field>(field: &F, k: u32, n: u32, u: Vertex, v: Vertex) -> QuotientPolynomial<F> {
    let mut q = QuotientPolynomial::zero(field.clone(), k, n);
    for r in 0..k {
        q.add_term(
            ExponentVector::from_reduced(k, [(u, k - 1 - r), (v, r)]),
            field.one(),
        );
    }
    q
}

/// The generators of the k-colouring encoding of `g`.
///
/// The vertex generators `x_u^k - 1` vanish identically in `R_{V,k}`, so only
/// their vertices are recorded.
pub struct BayerGenerators<F: Field> {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<((Vertex, Vertex), QuotientPolynomial<F>)>,
}

pub fn bayer_generators<F: Field>(field: &F, g: &Graph, k: u32) -> Result<BayerGenerators<F>, AlgebraError> {
    if k < 2 {
        return Err(AlgebraError::TooFewColors(k));
    }
    Ok(BayerGenerators {
        vertices: g.vertices().collect(),
        edges: g
            .edges()
            .iter()
            .map(|&(u, v)| ((u, v), edge_polynomial(field, k, g.n(), u, v)))
            .collect(),
    })
}
