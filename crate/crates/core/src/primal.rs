//! Degree-d Nullstellensatz certificates in the quotient ring.
//!
//! A certificate is a family `r_uv` of polynomials of degree at most `d` with
//! `Σ r_uv · q_uv = 1` in `R_{V,k}`; the vertex generators `x_u^k - 1` are
//! absorbed by working in the quotient. Finding one is a linear system whose
//! unknowns are the coefficients of the `r_uv`.

use std::collections::HashMap;

use num::BigUint;
use serde_json::json;

use crate::algebra::{edge_polynomial, enumerate_monomials, ExponentVector, QuotientPolynomial};
use crate::error::{AlgebraError, FieldError, GraphError};
use crate::field::Field;
use crate::graph::{Graph, Vertex};
use crate::linsys::{solve_basic, SparseLinearSystem};

/// Everything that defines one certificate search.
#[derive(Clone, Debug)]
pub struct CertificateQuery<F: Field> {
    graph: Graph,
    k: u32,
    d: u32,
    field: F,
    edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl<F: Field> CertificateQuery<F> {
    /// Query over all edges of `graph`.
    pub fn new(graph: &Graph, k: u32, d: u32, field: F) -> Result<Self, QueryError> {
        if k < 2 {
            return Err(AlgebraError::TooFewColors(k).into());
        }
        if !field.admits_colors(k) {
            return Err(FieldError::CharacteristicDividesColors {
                field: field.spec(),
                k,
            }
            .into());
        }
        Ok(Self {
            graph: graph.clone(),
            k,
            d,
            edges: graph.edges().to_vec(),
            field,
        })
    }

    /// Restricts the multipliers to an edge subset `F ⊆ E`.
    pub fn with_edges(mut self, edges: &[(Vertex, Vertex)]) -> Result<Self, QueryError> {
        let mut es = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if !self.graph.has_edge(u, v) {
                return Err(GraphError::UnknownEdge(u, v).into());
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        es.dedup();
        self.edges = es;
        Ok(self)
    }

    pub fn with_degree(mut self, d: u32) -> Self {
        self.d = d;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }
}

/// Column label of the primal system: coefficient of `x^monomial` in `r_edge`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplierCoefficient {
    pub edge: (Vertex, Vertex),
    pub monomial: ExponentVector,
}

pub struct PrimalSystem<F: Field> {
    pub system: SparseLinearSystem<F, MultiplierCoefficient>,
    /// Monomial `γ` whose coefficient row `i` pins down.
    pub row_monomials: Vec<ExponentVector>,
}

/// One unknown per (edge, `|β| ≤ d`), edge-major, monomials GLEX-descending;
/// one equation per `|γ| ≤ d + k - 1` (GLEX-descending) stating that the
/// coefficient of `x^γ` in `Σ r_uv q_uv` is `[γ = 0]`.
pub fn build_primal_system<F: Field>(q: &CertificateQuery<F>) -> PrimalSystem<F> {
    let k = q.k;
    let vertices: Vec<Vertex> = q.graph.vertices().collect();
    let multipliers = enumerate_monomials(&vertices, k, q.d);
    let row_monomials = enumerate_monomials(&vertices, k, q.d + k - 1);
    let row_of: HashMap<&ExponentVector, usize> =
        row_monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut labels = Vec::with_capacity(q.edges.len() * multipliers.len());
    let mut entries: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); row_monomials.len()];
    for &(u, v) in &q.edges {
        for beta in &multipliers {
            let col = labels.len();
            labels.push(MultiplierCoefficient {
                edge: (u, v),
                monomial: beta.clone(),
            });
            for r in 0..k {
                let gamma = beta.mul(&ExponentVector::from_reduced(k, [(u, k - 1 - r), (v, r)]));
                entries[row_of[&gamma]].push((col, q.field.one()));
            }
        }
    }
    let one = ExponentVector::one(k);
    let mut system = SparseLinearSystem::new(q.field.clone(), labels);
    for (gamma, row) in row_monomials.iter().zip(entries) {
        let rhs = if *gamma == one { q.field.one() } else { q.field.zero() };
        system.add_row(row, rhs);
    }
    PrimalSystem {
        system,
        row_monomials,
    }
}

/// Multipliers `r_uv` with `Σ r_uv q_uv = 1` in `R_{V,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullstellensatzCertificate<F: Field> {
    pub k: u32,
    pub multipliers: Vec<((Vertex, Vertex), QuotientPolynomial<F>)>,
    field: F,
    n: u32,
}

impl<F: Field> NullstellensatzCertificate<F> {
    pub fn new(
        field: F,
        k: u32,
        n: u32,
        multipliers: Vec<((Vertex, Vertex), QuotientPolynomial<F>)>,
    ) -> Self {
        Self {
            k,
            multipliers,
            field,
            n,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Largest degree among the multipliers (0 when all vanish).
    pub fn degree(&self) -> u32 {
        self.multipliers
            .iter()
            .filter_map(|(_, r)| r.degree())
            .max()
            .unwrap_or(0)
    }

    /// `Σ r_uv q_uv` in `R_{V,k}`.
    pub fn combination(&self) -> QuotientPolynomial<F> {
        let mut acc = QuotientPolynomial::zero(self.field.clone(), self.k, self.n);
        for &((u, v), ref r) in &self.multipliers {
            acc = acc.add(&r.mul(&edge_polynomial(&self.field, self.k, self.n, u, v)));
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "k": self.k,
            "field": self.field.spec().to_string(),
            "degree": self.degree(),
            "edges": self.multipliers.iter().map(|((u, v), r)| json!({
                "u": u,
                "v": v,
                "poly": r.to_json_value(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Solves the degree-d system; `None` when no certificate of that degree exists.
pub fn find_certificate<F: Field>(q: &CertificateQuery<F>) -> Option<NullstellensatzCertificate<F>> {
    let ps = build_primal_system(q);
    let sol = solve_basic(&ps.system)?;
    let n = q.graph.n();
    let mut multipliers: Vec<((Vertex, Vertex), QuotientPolynomial<F>)> = q
        .edges
        .iter()
        .map(|&e| (e, QuotientPolynomial::zero(q.field.clone(), q.k, n)))
        .collect();
    let slot: HashMap<(Vertex, Vertex), usize> =
        q.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    for (label, value) in ps.system.labels().iter().zip(&sol.values) {
        if !q.field.is_zero(value) {
            multipliers[slot[&label.edge]]
                .1
                .add_term(label.monomial.clone(), value.clone());
        }
    }
    let cert = NullstellensatzCertificate::new(q.field.clone(), q.k, n, multipliers);
    assert!(
        verify_certificate(&cert, q),
        "solver returned a certificate that does not verify"
    );
    Some(cert)
}

/// Expands `Σ r_uv q_uv` by polynomial multiplication and compares with 1;
/// also checks the degree bound and that every multiplier sits on an edge of
/// the query.
pub fn verify_certificate<F: Field>(cert: &NullstellensatzCertificate<F>, q: &CertificateQuery<F>) -> bool {
    if cert.k != q.k || cert.n != q.graph.n() || cert.field.spec() != q.field.spec() {
        return false;
    }
    let edges_ok = cert
        .multipliers
        .iter()
        .all(|((u, v), _)| q.edges.binary_search(&(*u.min(v), *u.max(v))).is_ok());
    edges_ok && cert.degree() <= q.d && cert.combination().is_one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinDegree {
    Found(u32),
    NotFoundUpTo(u32),
}

/// Smallest `d ≤ d_max` admitting a certificate.
pub fn min_certificate_degree<F: Field>(
    g: &Graph,
    k: u32,
    field: F,
    d_max: u32,
) -> Result<MinDegree, QueryError> {
    let q = CertificateQuery::new(g, k, 0, field)?;
    for d in 0..=d_max {
        if find_certificate(&q.clone().with_degree(d)).is_some() {
            return Ok(MinDegree::Found(d));
        }
    }
    Ok(MinDegree::NotFoundUpTo(d_max))
}

/// A-priori degree bounds for the full-ring formulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBounds {
    pub kollar: BigUint,
    pub lazard: u64,
}

/// Kollár: `max(3, k)^min(n, m)` with `m = |V| + |E|` generators of degree at
/// most `k`; Lazard: `n (k - 1)`.
pub fn degree_bounds(g: &Graph, k: u32) -> DegreeBounds {
    let n = u64::from(g.n());
    let m = n + g.edge_count() as u64;
    let base = BigUint::from(k.max(3));
    DegreeBounds {
        kollar: num::pow(base, n.min(m) as usize),
        lazard: n * u64::from(k.saturating_sub(1)),
    }
}
