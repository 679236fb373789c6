//! Gröbner bases of colouring ideals in the full polynomial ring.
//!
//! Unlike [`crate::algebra`], exponents here are not reduced mod `k`: the
//! ring is `K[x_1, …, x_n]` with GLEX order, `x_1` most significant.
//! [`ColoringIdeal`] adjoins `x_v^k − 1` for every vertex by default;
//! [`ColoringIdeal::edges_only`] keeps just the edge polynomials, which makes
//! the ideal homogeneous.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{parse_monomial_pairs, QuotientPolynomial};
use crate::error::AlgebraError;
use crate::field::Field;
use crate::graph::{SubgraphEdgeSet, Vertex};

/// A monomial of `K[x_1, …, x_n]`, dense exponents `exps[i]` of `x_{i+1}`.
///
/// `Ord` is GLEX: total degree, then the exponent of the lowest-indexed
/// variable where the two differ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    pub fn var(n: usize, v: Vertex) -> Self {
        let mut m = Self::one(n);
        m.exps[v as usize - 1] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    /// From `(vertex, exponent)` pairs in an `n`-variable ring.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Vertex, u32)>) -> Result<Self, AlgebraError> {
        let mut m = Self::one(n);
        for (v, e) in pairs {
            if v == 0 || v as usize > n {
                return Err(AlgebraError::VertexOutOfRange(v));
            }
            m.exps[v as usize - 1] += e;
        }
        Ok(m)
    }

    /// Parses `x_1x_5^2`-style notation (or `1`).
    pub fn parse(n: usize, s: &str) -> Result<Self, AlgebraError> {
        let pairs = parse_monomial_pairs(s).ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
        Self::from_pairs(n, pairs)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`; caller guarantees divisibility.
    fn div(&self, other: &Self) -> Self {
        Self {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "x_{}", i + 1)?,
                _ => write!(f, "x_{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial in `K[x_1, …, x_n]` with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FullRingPolynomial<F: Field> {
    field: F,
    n: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> FullRingPolynomial<F> {
    pub fn zero(field: F, n: usize) -> Self {
        Self {
            field,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, n: usize, c: F::Elem) -> Self {
        Self::from_terms(field, n, [(Monomial::one(n), c)])
    }

    pub fn one(field: F, n: usize) -> Self {
        let c = field.one();
        Self::constant(field, n, c)
    }

    pub fn var(field: F, n: usize, v: Vertex) -> Self {
        let c = field.one();
        Self::from_terms(field, n, [(Monomial::var(n, v), c)])
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms(field: F, n: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, n);
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial has wrong number of variables");
            p.add_term(m, &c);
        }
        p
    }

    /// Lifts a quotient-ring polynomial using exponent representatives `0..k`.
    pub fn from_quotient(q: &QuotientPolynomial<F>) -> Self {
        let n = q.n() as usize;
        Self::from_terms(
            q.field().clone(),
            n,
            q.terms().map(|(m, c)| {
                let mono = Monomial::from_pairs(n, m.terms().iter().copied()).expect("vertex in range");
                (mono, c.clone())
            }),
        )
    }

    fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), c);
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

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms, GLEX-descending.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.n);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect();
        Self {
            field: self.field.clone(),
            n: self.n,
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field.clone(), self.n);
        for (m, a) in &self.terms {
            for (w, b) in &other.terms {
                out.add_term(m.mul(w), &self.field.mul(a, b));
            }
        }
        out
    }

    /// `self −= c · m · g`.
    fn sub_multiple(&mut self, c: &F::Elem, m: &Monomial, g: &Self) {
        for (w, b) in &g.terms {
            let t = self.field.mul(c, b);
            self.add_term(m.mul(w), &self.field.neg(&t));
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Evaluates at `point[i] = x_{i+1}`.
    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.n, "point has wrong dimension");
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            let v = m
                .exps
                .iter()
                .zip(point)
                .fold(c.clone(), |t, (&e, x)| f.mul(&t, &f.pow(x, u64::from(e))));
            f.add(&acc, &v)
        })
    }
}

impl<F: Field> fmt::Display for FullRingPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let cs = self.field.format(c);
            match (m.is_one(), self.field.is_one(c)) {
                (true, _) => f.write_str(&cs)?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "({cs}){m}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for FullRingPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `q_uv = Σ_{r<k} x_u^{k−1−r} x_v^r` in the full ring.
pub fn full_edge_polynomial<F: Field>(field: &F, n: usize, k: u32, u: Vertex, v: Vertex) -> FullRingPolynomial<F> {
    let terms = (0..k).map(|r| {
        let m = Monomial::from_pairs(n, [(u, k - 1 - r), (v, r)]).expect("edge endpoints in range");
        (m, field.one())
    });
    FullRingPolynomial::from_terms(field.clone(), n, terms)
}

/// `x_v^k − 1`.
pub fn vertex_polynomial<F: Field>(field: &F, n: usize, k: u32, v: Vertex) -> FullRingPolynomial<F> {
    let m = Monomial::from_pairs(n, [(v, k)]).expect("vertex in range");
    FullRingPolynomial::from_terms(field.clone(), n, [(m, field.one()), (Monomial::one(n), field.neg(&field.one()))])
}

/// Generators `{x_v^k − 1} ∪ {q_uv : uv ∈ F}` for a subgraph edge set.
#[derive(Clone, Debug)]
pub struct ColoringIdeal<F: Field> {
    pub n: usize,
    pub k: u32,
    pub edges: Vec<(Vertex, Vertex)>,
    generators: Vec<FullRingPolynomial<F>>,
}

impl<F: Field> ColoringIdeal<F> {
    /// Vertex polynomials for every `v ∈ 1..=n`, then edge polynomials.
    pub fn new(field: F, n: usize, k: u32, f: &SubgraphEdgeSet) -> Result<Self, AlgebraError> {
        Self::build(field, n, k, f, true)
    }

    /// Only the edge polynomials; the resulting ideal is homogeneous.
    pub fn edges_only(field: F, n: usize, k: u32, f: &SubgraphEdgeSet) -> Result<Self, AlgebraError> {
        Self::build(field, n, k, f, false)
    }

    fn build(field: F, n: usize, k: u32, f: &SubgraphEdgeSet, vertex_eqs: bool) -> Result<Self, AlgebraError> {
        if k < 2 {
            return Err(AlgebraError::TooFewColors(k));
        }
        if let Some(&v) = f.vertices().iter().find(|&&v| v == 0 || v as usize > n) {
            return Err(AlgebraError::VertexOutOfRange(v));
        }
        let mut generators = Vec::new();
        if vertex_eqs {
            generators.extend((1..=n as Vertex).map(|v| vertex_polynomial(&field, n, k, v)));
        }
        generators.extend(f.edges().iter().map(|&(u, v)| full_edge_polynomial(&field, n, k, u, v)));
        Ok(Self {
            n,
            k,
            edges: f.edges().to_vec(),
            generators,
        })
    }

    pub fn generators(&self) -> &[FullRingPolynomial<F>] {
        &self.generators
    }
}

/// Reduced GLEX Gröbner basis, monic, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    polys: Vec<FullRingPolynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn polynomials(&self) -> &[FullRingPolynomial<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Leading monomials in ascending GLEX order (so ascending degree first).
    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.polys.iter().filter_map(|p| p.leading_monomial()).collect()
    }

    /// One leading monomial per line, ascending degree and GLEX-ascending
    /// within a degree, the layout Macaulay2 prints.
    pub fn leading_monomial_report(&self) -> String {
        self.leading_monomials().iter().map(|m| format!("{m}\n")).collect()
    }

    pub fn normal_form(&self, f: &FullRingPolynomial<F>) -> FullRingPolynomial<F> {
        reduce(f, &self.polys)
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.polys
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
    }

    pub fn ideal_membership(&self, f: &FullRingPolynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn is_groebner(&self) -> bool {
        (0..self.polys.len())
            .flat_map(|i| (i + 1..self.polys.len()).map(move |j| (i, j)))
            .all(|(i, j)| reduce(&s_polynomial(&self.polys[i], &self.polys[j]), &self.polys).is_zero())
    }
}

/// Full multivariate division remainder of `f` by `basis`.
fn reduce<F: Field>(f: &FullRingPolynomial<F>, basis: &[FullRingPolynomial<F>]) -> FullRingPolynomial<F> {
    let field = f.field.clone();
    let mut p = f.clone();
    let mut rem = FullRingPolynomial::zero(field.clone(), f.n);
    while let Some((lm, lc)) = p.terms.pop_last() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|glm| glm.divides(&lm)));
        match divisor {
            None => {
                rem.terms.insert(lm, lc);
            }
            Some(g) => {
                let (glm, glc) = g.leading_term().expect("nonzero divisor");
                let c = field.mul(&lc, &field.inv(glc).expect("nonzero leading coefficient"));
                let shift = lm.div(glm);
                // the leading term cancels exactly; subtract the tail only
                for (w, b) in g.terms.iter().rev().skip(1) {
                    let t = field.mul(&c, b);
                    p.add_term(shift.mul(w), &field.neg(&t));
                }
            }
        }
    }
    rem
}

fn s_polynomial<F: Field>(f: &FullRingPolynomial<F>, g: &FullRingPolynomial<F>) -> FullRingPolynomial<F> {
    let field = f.field();
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let mut s = FullRingPolynomial::zero(field.clone(), f.n);
    s.sub_multiple(&field.neg(&field.inv(fc).expect("nonzero")), &l.div(fm), f);
    s.sub_multiple(&field.inv(gc).expect("nonzero"), &l.div(gm), g);
    s
}

/// Buchberger's algorithm on the ideal's generators.
pub fn buchberger<F: Field>(ideal: &ColoringIdeal<F>) -> GroebnerBasis<F> {
    groebner_basis(ideal.generators())
}

/// Reduced GLEX Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by smallest lcm degree, ties broken first-in first-out.
/// Pairs with coprime leading monomials are skipped, as are pairs covered by
/// the chain criterion.
pub fn groebner_basis<F: Field>(gens: &[FullRingPolynomial<F>]) -> GroebnerBasis<F> {
    let mut basis: Vec<FullRingPolynomial<F>> = Vec::new();
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let push = |basis: &mut Vec<FullRingPolynomial<F>>, pairs: &mut VecDeque<(usize, usize)>, p: FullRingPolynomial<F>| {
        let j = basis.len();
        basis.push(p.monic());
        pairs.extend((0..j).map(|i| (i, j)));
    };
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            push(&mut basis, &mut pairs, r);
        }
    }

    while let Some(pos) = select_pair(&basis, &pairs) {
        let (i, j) = pairs.remove(pos).expect("valid index");
        let lmi = basis[i].leading_monomial().expect("nonzero").clone();
        let lmj = basis[j].leading_monomial().expect("nonzero").clone();
        done.insert((i, j));
        if lmi.is_coprime(&lmj) || chain_criterion(&basis, &done, i, j, &lmi.lcm(&lmj)) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            push(&mut basis, &mut pairs, r);
        }
    }
    GroebnerBasis {
        polys: interreduce(basis),
    }
}

fn select_pair<F: Field>(basis: &[FullRingPolynomial<F>], pairs: &VecDeque<(usize, usize)>) -> Option<usize> {
    let deg = |&(i, j): &(usize, usize)| {
        let a = basis[i].leading_monomial().expect("nonzero");
        let b = basis[j].leading_monomial().expect("nonzero");
        a.lcm(b).degree()
    };
    pairs
        .iter()
        .enumerate()
        .min_by_key(|(pos, p)| (deg(p), *pos))
        .map(|(pos, _)| pos)
}

// (i, j) is redundant if some l has LM_l | lcm(LM_i, LM_j) and both (i, l) and
// (j, l) have already been handled.
fn chain_criterion<F: Field>(
    basis: &[FullRingPolynomial<F>],
    done: &BTreeSet<(usize, usize)>,
    i: usize,
    j: usize,
    lcm: &Monomial,
) -> bool {
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    (0..basis.len()).any(|l| {
        l != i
            && l != j
            && basis[l].leading_monomial().is_some_and(|m| m.divides(lcm))
            && done.contains(&key(i, l))
            && done.contains(&key(j, l))
    })
}

fn interreduce<F: Field>(basis: Vec<FullRingPolynomial<F>>) -> Vec<FullRingPolynomial<F>> {
    // minimal basis: drop elements whose LM is divisible by another's
    let mut minimal: Vec<FullRingPolynomial<F>> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for p in sorted {
        let lm = p.leading_monomial().expect("nonzero");
        if !minimal
            .iter()
            .any(|q| q.leading_monomial().expect("nonzero").divides(lm))
        {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let (lm, lc) = minimal[idx].leading_term().expect("nonzero");
        let lead = FullRingPolynomial::from_terms(minimal[idx].field.clone(), minimal[idx].n, [(lm.clone(), lc.clone())]);
        let tail = minimal[idx].sub(&lead);
        let others: Vec<FullRingPolynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(o, _)| o != idx)
            .map(|(_, q)| q.clone())
            .collect();
        out.push(lead.add(&reduce(&tail, &others)).monic());
    }
    out
}

impl FromStr for Monomial {
    type Err = AlgebraError;

    /// `n:x_1x_5^2`, like [`crate::algebra::ExponentVector`]'s `k:` prefix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, rest) = s.split_once(':').ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
        let n: usize = n.trim().parse().map_err(|_| AlgebraError::Parse(s.to_string()))?;
        Self::parse(n, rest.trim())
    }
}
