//! Dual Nullstellensatz certificates.
//!
//! A dual certificate of degree `d` is a linear functional `λ` on monomials of
//! degree at most `d + k - 1` with `λ(1) = 1` that vanishes on every product
//! `x^α q_uv` with `|α| ≤ d`. Its existence rules out a primal certificate of
//! degree `d`. Written out, the row for `(α, uv)` reads
//!
//! ```text
//! Σ_{r ∈ Z_k} λ(α + r·e_u − (r+1)·e_v) = 0
//! ```
//!
//! with indices taken in `Z_k^V`; repeated indices add up.
//!
//! Besides the global system this module builds the local systems of
//! essential subgraphs and assembles a global certificate from their basic
//! solutions ([`patch_dual_certificate`]).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::json;

use crate::algebra::{enumerate_monomials, ExponentVector};
use crate::error::{AlgebraError, FieldError, PatchError};
use crate::exec::{self, Execution};
use crate::field::Field;
use crate::graph::{
    essential_graph_ordered, girth, greedy_coloring, is_forest, ordering_from_coloring,
    Girth, Graph, SubgraphEdgeSet, Vertex, VertexOrdering,
};
use crate::linsys::{rref, solve_basic, SparseLinearSystem};

/// Column indices hit by the DCOL row of `(α, uv)`, one per `r ∈ Z_k`.
pub fn dcol_row_monomials(alpha: &ExponentVector, u: Vertex, v: Vertex) -> Vec<ExponentVector> {
    let k = i64::from(alpha.k());
    (0..k)
        .map(|r| alpha.shifted(u, r).shifted(v, -(r + 1)))
        .collect()
}

/// The DCOL system `Â λ = ĉ` for an edge set over the vertex set `{1..n}`.
pub struct DualSystem<F: Field> {
    pub system: SparseLinearSystem<F, ExponentVector>,
    pub k: u32,
    pub d: u32,
    pub n: u32,
    pub edges: Vec<(Vertex, Vertex)>,
    index: HashMap<ExponentVector, usize>,
}

impl<F: Field> DualSystem<F> {
    pub fn column_of(&self, m: &ExponentVector) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn check_params<F: Field>(field: &F, k: u32) -> Result<(), AlgebraError> {
    if k < 2 {
        return Err(AlgebraError::TooFewColors(k));
    }
    if !field.admits_colors(k) {
        return Err(FieldError::CharacteristicDividesColors {
            field: field.spec(),
            k,
        }
        .into());
    }
    Ok(())
}

/// DCOL system of the whole graph.
pub fn build_dual_system<F: Field>(g: &Graph, k: u32, d: u32, field: F) -> Result<DualSystem<F>, AlgebraError> {
    build_dual_system_on(g.n(), g.edges(), k, d, field)
}

/// DCOL system of an edge subset; columns are all `α ∈ Z_k^V`, `|α| ≤ d + k − 1`,
/// GLEX-descending. Rows run over `α` (GLEX-descending) then edges, and end
/// with `λ_0 = 1`.
pub fn build_dual_system_on<F: Field>(
    n: u32,
    edges: &[(Vertex, Vertex)],
    k: u32,
    d: u32,
    field: F,
) -> Result<DualSystem<F>, AlgebraError> {
    check_params(&field, k)?;
    let vertices: Vec<Vertex> = (1..=n).collect();
    let columns = enumerate_monomials(&vertices, k, d + k - 1);
    Ok(assemble(n, edges, k, d, field, columns))
}

// Local systems only need the columns their rows touch, plus `1` and the
// monomial being patched. Other columns are identically zero: they are never
// pivots and carry 0 in every basic solution, so dropping them does not change
// any retained coordinate.
fn build_compact_dual_system<F: Field>(
    n: u32,
    edges: &[(Vertex, Vertex)],
    k: u32,
    d: u32,
    field: F,
    extra: &ExponentVector,
) -> DualSystem<F> {
    let vertices: Vec<Vertex> = (1..=n).collect();
    let mut cols: BTreeSet<ExponentVector> = BTreeSet::new();
    cols.insert(ExponentVector::one(k));
    cols.insert(extra.clone());
    if !edges.is_empty() {
        for alpha in enumerate_monomials(&vertices, k, d) {
            for &(u, v) in edges {
                cols.extend(dcol_row_monomials(&alpha, u, v));
            }
        }
    }
    let columns: Vec<ExponentVector> = cols.into_iter().rev().collect();
    assemble(n, edges, k, d, field, columns)
}

fn assemble<F: Field>(
    n: u32,
    edges: &[(Vertex, Vertex)],
    k: u32,
    d: u32,
    field: F,
    columns: Vec<ExponentVector>,
) -> DualSystem<F> {
    let mut edges: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    let index: HashMap<ExponentVector, usize> =
        columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let vertices: Vec<Vertex> = (1..=n).collect();
    let mut system = SparseLinearSystem::new(field.clone(), columns);
    if !edges.is_empty() {
        for alpha in enumerate_monomials(&vertices, k, d) {
            for &(u, v) in &edges {
                let row = dcol_row_monomials(&alpha, u, v)
                    .into_iter()
                    .map(|m| (index[&m], field.one()));
                system.add_row(row, field.zero());
            }
        }
    }
    system.add_row([(index[&ExponentVector::one(k)], field.one())], field.one());
    DualSystem {
        system,
        k,
        d,
        n,
        edges,
        index,
    }
}

/// A functional on monomials of degree at most `d + k − 1`; coordinates not
/// stored are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate<F: Field> {
    pub k: u32,
    pub d: u32,
    pub n: u32,
    field: F,
    values: BTreeMap<ExponentVector, F::Elem>,
}

impl<F: Field> DualCertificate<F> {
    pub fn new(field: F, k: u32, d: u32, n: u32) -> Self {
        Self {
            k,
            d,
            n,
            field,
            values: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn get(&self, m: &ExponentVector) -> F::Elem {
        self.values.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, m: ExponentVector, value: F::Elem) {
        if self.field.is_zero(&value) {
            self.values.remove(&m);
        } else {
            self.values.insert(m, value);
        }
    }

    /// Nonzero coordinates, GLEX-descending.
    pub fn entries(&self) -> impl Iterator<Item = (&ExponentVector, &F::Elem)> {
        self.values.iter().rev()
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn to_json(&self, verified: bool) -> serde_json::Value {
        json!({
            "k": self.k,
            "d": self.d,
            "field": self.field.spec().to_string(),
            "entries": self.entries().map(|(m, c)| json!({
                "exps": m.terms().iter().map(|&(v, e)| (v.to_string(), e)).collect::<BTreeMap<_, _>>(),
                "value": self.field.format(c),
            })).collect::<Vec<_>>(),
            "verified": verified,
        })
    }
}

/// Basic solution of the global DCOL system, if it is feasible.
pub fn find_dual_certificate<F: Field>(
    g: &Graph,
    k: u32,
    d: u32,
    field: F,
) -> Result<Option<DualCertificate<F>>, AlgebraError> {
    let ds = build_dual_system(g, k, d, field.clone())?;
    let Some(sol) = solve_basic(&ds.system) else {
        return Ok(None);
    };
    let mut cert = DualCertificate::new(field, k, d, g.n());
    for (m, v) in ds.system.labels().iter().zip(sol.values) {
        cert.set(m.clone(), v);
    }
    Ok(Some(cert))
}

/// First DCOL row violated by `λ` as `(α, u, v)`, checking `λ_0 = 1` first
/// (reported with `α = 1` and `u = v = 0`).
pub fn first_dual_violation<F: Field>(
    lambda: &DualCertificate<F>,
    g: &Graph,
    k: u32,
    d: u32,
) -> Option<(ExponentVector, Vertex, Vertex)> {
    let f = &lambda.field;
    if lambda.k != k || !f.is_one(&lambda.get(&ExponentVector::one(k))) {
        return Some((ExponentVector::one(k), 0, 0));
    }
    if let Some(bad) = lambda
        .values
        .keys()
        .find(|m| m.degree() > d + k - 1 || m.max_vertex().is_some_and(|v| v > g.n()))
    {
        return Some((bad.clone(), 0, 0));
    }
    let vertices: Vec<Vertex> = g.vertices().collect();
    for alpha in enumerate_monomials(&vertices, k, d) {
        for &(u, v) in g.edges() {
            let sum = dcol_row_monomials(&alpha, u, v)
                .iter()
                .fold(f.zero(), |acc, m| f.add(&acc, &lambda.get(m)));
            if !f.is_zero(&sum) {
                return Some((alpha, u, v));
            }
        }
    }
    None
}

/// Checks `λ_0 = 1` and every DCOL row by direct substitution.
pub fn verify_dual_certificate<F: Field>(lambda: &DualCertificate<F>, g: &Graph, k: u32, d: u32, field: &F) -> bool {
    lambda.field.spec() == field.spec()
        && lambda.d == d
        && lambda.n == g.n()
        && first_dual_violation(lambda, g, k, d).is_none()
}

/// Pivot-column monomials of the DCOL matrix of `F`: `B_{F,d} ∪ {1}`.
pub fn leading_basis<F: Field>(
    n: u32,
    f: &SubgraphEdgeSet,
    k: u32,
    d: u32,
    field: F,
) -> Result<BTreeSet<ExponentVector>, AlgebraError> {
    let ds = build_dual_system_on(n, f.edges(), k, d, field)?;
    let labels = ds.system.labels();
    Ok(rref(&ds.system).pivots().map(|c| labels[c].clone()).collect())
}

/// Basic solution `μ` of the local system of one monomial's essential graph.
#[derive(Clone, Debug)]
pub struct LocalSolution<F: Field> {
    pub essential: SubgraphEdgeSet,
    pub basis: Vec<ExponentVector>,
    values: HashMap<ExponentVector, F::Elem>,
    zero: F::Elem,
}

impl<F: Field> LocalSolution<F> {
    pub fn value(&self, m: &ExponentVector) -> &F::Elem {
        self.values.get(m).unwrap_or(&self.zero)
    }
}

/// Computes the essential graph `H_m` under `order`, requires it to be a
/// forest, and returns the basic solution of the DCOL system of its edges for
/// the pivot basis. Monomials and subgraphs are in the caller's labels.
pub fn local_basic_solution<F: Field>(
    g: &Graph,
    order: &VertexOrdering,
    k: u32,
    d: u32,
    field: F,
    m: &ExponentVector,
) -> Result<LocalSolution<F>, PatchError> {
    check_params(&field, k)?;
    let h = g.relabel(order);
    let m_new = m.relabel(order);
    let inverse = order.inverse();
    let local = solve_local_ordered(&h, k, d, &field, &m_new).map_err(|e| match e {
        PatchError::EssentialGraphNotForest(_) => PatchError::EssentialGraphNotForest(m.clone()),
        PatchError::LocalInfeasible(_) => PatchError::LocalInfeasible(m.clone()),
        other => other,
    })?;
    let essential = SubgraphEdgeSet::induced(
        g,
        local.essential.vertices().iter().map(|&v| inverse.new_label(v)),
    );
    let labels = local.ds.system.labels();
    let basis = local.basis.iter().map(|&c| labels[c].relabel(&inverse)).collect();
    let values = labels
        .iter()
        .zip(local.values)
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(m, v)| (m.relabel(&inverse), v))
        .collect();
    Ok(LocalSolution {
        essential,
        basis,
        values,
        zero: field.zero(),
    })
}

struct OrderedLocal<F: Field> {
    essential: SubgraphEdgeSet,
    ds: DualSystem<F>,
    basis: Vec<usize>,
    values: Vec<F::Elem>,
}

fn solve_local_ordered<F: Field>(
    h: &Graph,
    k: u32,
    d: u32,
    field: &F,
    m: &ExponentVector,
) -> Result<OrderedLocal<F>, PatchError> {
    let support: Vec<Vertex> = m.support().collect();
    let essential = essential_graph_ordered(h, &support);
    if !is_forest(&essential) {
        return Err(PatchError::EssentialGraphNotForest(m.clone()));
    }
    let ds = build_compact_dual_system(h.n(), essential.edges(), k, d, field.clone(), m);
    let sol = solve_basic(&ds.system).ok_or_else(|| PatchError::LocalInfeasible(m.clone()))?;
    Ok(OrderedLocal {
        essential,
        ds,
        basis: sol.basis,
        values: sol.values,
    })
}

/// Output of the patching construction.
#[derive(Clone, Debug)]
pub struct PatchedCertificate<F: Field> {
    pub certificate: DualCertificate<F>,
    pub ordering: VertexOrdering,
    /// Whether `2(d + k − 1) < g / (2k) − 1`, the girth condition under which
    /// the construction is guaranteed to succeed. Informational only.
    pub girth_condition_holds: bool,
    pub local_systems: usize,
}

/// Girth hypothesis `2(d+k−1) < g/(2k) − 1`, in integers: `4k(d+k−1) + 2k < g`.
pub fn girth_condition(g: Girth, k: u32, d: u32) -> bool {
    match g {
        Girth::Infinite => true,
        Girth::Finite(g) => 4 * u64::from(k) * u64::from(d + k - 1) + 2 * u64::from(k) < u64::from(g),
    }
}

/// Default ordering: DSATUR colouring, then classes in order.
pub fn default_ordering(g: &Graph) -> VertexOrdering {
    ordering_from_coloring(g, &greedy_coloring(g)).expect("greedy colouring is proper")
}

/// Assembles `λ_α := μ^{(α)}_α` over all `|α| ≤ d + k − 1`, where `μ^{(α)}` is
/// the basic solution of the local system of the essential graph of `α`,
/// then verifies `λ` against the full DCOL system.
///
/// Local systems are independent and run under `exec`; a failing monomial is
/// reported as the GLEX-smallest offender.
pub fn patch_dual_certificate<F: Field>(
    g: &Graph,
    k: u32,
    d: u32,
    field: F,
    order: Option<&VertexOrdering>,
    exec: Execution,
) -> Result<PatchedCertificate<F>, PatchError> {
    check_params(&field, k)?;
    let ordering = order.cloned().unwrap_or_else(|| default_ordering(g));
    let h = g.relabel(&ordering);
    let inverse = ordering.inverse();
    let vertices: Vec<Vertex> = (1..=g.n()).collect();
    let mut monomials = enumerate_monomials(&vertices, k, d + k - 1);
    monomials.reverse();

    let coords = exec::try_map(exec, &monomials, |m| {
        let local = solve_local_ordered(&h, k, d, &field, m)
            .map_err(|e| relabel_patch_error(e, &inverse))?;
        let col = local.ds.column_of(m).expect("patched monomial is a column");
        Ok::<_, PatchError>(local.values[col].clone())
    })?;

    let mut certificate = DualCertificate::new(field.clone(), k, d, g.n());
    for (m, value) in monomials.iter().zip(coords) {
        certificate.set(m.relabel(&inverse), value);
    }
    match first_dual_violation(&certificate, g, k, d) {
        None => {}
        Some((m, 0, 0)) if m.is_one() => return Err(PatchError::ConstantNotOne),
        Some((monomial, u, v)) => return Err(PatchError::PatchVerificationFailed { monomial, u, v }),
    }
    Ok(PatchedCertificate {
        certificate,
        ordering,
        girth_condition_holds: girth_condition(girth(g), k, d),
        local_systems: monomials.len(),
    })
}

fn relabel_patch_error(e: PatchError, inverse: &VertexOrdering) -> PatchError {
    match e {
        PatchError::EssentialGraphNotForest(m) => PatchError::EssentialGraphNotForest(m.relabel(inverse)),
        PatchError::LocalInfeasible(m) => PatchError::LocalInfeasible(m.relabel(inverse)),
        other => other,
    }
}
