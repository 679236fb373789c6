//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so each result is printed as it lands.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nullcert::algebra::{enumerate_monomials, ExponentVector};
use nullcert::dual::{
    default_ordering, find_dual_certificate, patch_dual_certificate, verify_dual_certificate,
};
use nullcert::graph::{
    descendant_graph_ordered, essential_graph, greedy_coloring, is_forest, longest_increasing_path, ordering_from_coloring,
    Graph, SubgraphEdgeSet,
};
use nullcert::groebner::{buchberger, ColoringIdeal, FullRingPolynomial, GroebnerBasis, Monomial};
use nullcert::linsys::{rref, solve_basic, SparseLinearSystem};
use nullcert::primal::{find_certificate, verify_certificate, CertificateQuery};
use nullcert::{exec, Execution, Field, PatchError, PrimeField, Rationals};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sample_tree() -> Graph {
    Graph::new(
        10,
        [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8), (4, 9), (4, 10)],
    )
    .unwrap()
}

fn sample_subgraph(removed: (u32, u32)) -> SubgraphEdgeSet {
    SubgraphEdgeSet::from_edges(sample_tree().edges().iter().copied().filter(|&e| e != removed))
}

const REMOVED: [(u32, u32); 4] = [(1, 4), (2, 6), (3, 8), (4, 10)];

fn alpha_full() -> Monomial {
    Monomial::parse(10, "x_5^2x_6x_7x_8^2x_9").unwrap()
}

fn golden(i: usize) -> Vec<String> {
    let path = format!("{}/tests/golden/f{i}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .expect("golden file")
        .lines()
        .map(str::to_string)
        .collect()
}

fn report_lines(gb: &GroebnerBasis<Rationals>) -> Vec<String> {
    gb.leading_monomial_report().lines().map(str::to_string).collect()
}

fn criterion_1() -> Outcome {
    let mut sizes = Vec::new();
    for (i, &removed) in REMOVED.iter().enumerate() {
        let ideal = ColoringIdeal::edges_only(Rationals, 10, 3, &sample_subgraph(removed)).unwrap();
        let gb = buchberger(&ideal);
        let got: BTreeSet<String> = report_lines(&gb).into_iter().collect();
        let want: BTreeSet<String> = golden(i + 1).into_iter().collect();
        ensure(got == want, || {
            format!(
                "F{}: missing {:?}, extra {:?}",
                i + 1,
                want.difference(&got).collect::<Vec<_>>(),
                got.difference(&want).collect::<Vec<_>>()
            )
        })?;
        sizes.push(got.len().to_string());
    }
    Ok(format!("leading-monomial sets match ({})", sizes.join("/")))
}

fn poly(spec: &[(&str, i64)]) -> FullRingPolynomial<Rationals> {
    let q = Rationals;
    FullRingPolynomial::from_terms(
        q,
        10,
        spec.iter().map(|&(m, c)| (Monomial::parse(10, m).unwrap(), q.from_i64(c))),
    )
}

fn diff(a: &str, b: &str) -> FullRingPolynomial<Rationals> {
    poly(&[(a, 1), (b, -1)])
}

fn criterion_2() -> Outcome {
    let alpha = alpha_full();
    let full = buchberger(&ColoringIdeal::new(Rationals, 10, 3, &SubgraphEdgeSet::from_edges(sample_tree().edges().iter().copied())).unwrap());
    ensure(full.is_reducible(&alpha), || "x^alpha irreducible modulo I_E".into())?;
    for (i, &removed) in REMOVED.iter().enumerate() {
        let f = sample_subgraph(removed);
        for (label, ideal) in [
            ("with vertex equations", ColoringIdeal::new(Rationals, 10, 3, &f).unwrap()),
            ("edges only", ColoringIdeal::edges_only(Rationals, 10, 3, &f).unwrap()),
        ] {
            let gb = buchberger(&ideal);
            ensure(!gb.is_reducible(&alpha), || format!("x^alpha reducible modulo I_F{} ({label})", i + 1))?;
        }
    }
    let f1 = diff("x_8", "x_9").mul(&diff("x_8", "x_10")).mul(&diff("x_9", "x_10"));
    let f2 = diff("x_5", "x_7").mul(&diff("x_6", "x_7")).mul(&diff("x_7", "x_8"));
    let f3 = diff("x_5", "x_6");
    let f = f1.mul(&f2).mul(&f3);
    ensure(f.leading_monomial() == Some(&alpha), || {
        format!("LM(f1 f2 f3) = {:?}", f.leading_monomial())
    })?;
    ensure(full.ideal_membership(&f), || "f1 f2 f3 not in I_E".into())?;
    Ok("x^alpha reducible mod I_E, irreducible mod I_F1..I_F4; f1 f2 f3 in I_E with LM x^alpha".into())
}

fn small_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K_2", Graph::path(2)),
        ("P_4", Graph::path(4)),
        ("C_4", Graph::cycle(4)),
        ("C_5", Graph::cycle(5)),
        ("C_7", Graph::cycle(7)),
        ("K_3", Graph::complete(3)),
        ("K_4", Graph::complete(4)),
        ("tree", sample_tree()),
    ]
}

fn duality_case(g: &Graph, k: u32, d: u32, field: PrimeField) -> Result<bool, String> {
    let q = CertificateQuery::new(g, k, d, field).map_err(|e| e.to_string())?;
    let primal = find_certificate(&q);
    let dual = find_dual_certificate(g, k, d, field).map_err(|e| e.to_string())?;
    if let Some(c) = &primal {
        ensure(verify_certificate(c, &q), || "primal certificate fails verification".into())?;
    }
    if let Some(l) = &dual {
        ensure(verify_dual_certificate(l, g, k, d, &field), || "dual certificate fails verification".into())?;
    }
    ensure(primal.is_some() != dual.is_some(), || {
        format!("primal={} dual={}", primal.is_some(), dual.is_some())
    })?;
    Ok(primal.is_some())
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    let mut infeasible = 0;
    for (name, g) in small_graphs() {
        for k in [2, 3] {
            for p in [2, 5, 7] {
                if k % p == 0 {
                    continue;
                }
                let field = PrimeField::new(p).unwrap();
                for d in 0..=3 {
                    let found = duality_case(&g, k, d, field)
                        .map_err(|e| format!("{name}, k={k}, GF({p}), d={d}: {e}"))?;
                    cases += 1;
                    infeasible += usize::from(found);
                }
            }
        }
    }
    Ok(format!("{cases} cases, {infeasible} with a primal certificate, the rest with a dual"))
}

fn criterion_4() -> Outcome {
    let gf7 = PrimeField::new(7).unwrap();
    let c41 = Graph::cycle(41);

    let t = Instant::now();
    let patched = patch_dual_certificate(&c41, 3, 1, gf7, None, Execution::default()).map_err(|e| format!("(a) {e}"))?;
    let lambda = &patched.certificate;
    ensure(lambda.get(&ExponentVector::one(3)) == 1, || "(a) lambda_0 != 1".into())?;
    ensure(verify_dual_certificate(lambda, &c41, 3, 1, &gf7), || "(a) DCOL verification failed".into())?;
    let elapsed_a = t.elapsed();
    ensure(elapsed_a < Duration::from_secs(120), || format!("(a) took {elapsed_a:?}"))?;

    let err = patch_dual_certificate(&Graph::complete(3), 3, 0, gf7, None, Execution::default()).unwrap_err();
    ensure(err == PatchError::EssentialGraphNotForest(ExponentVector::var(3, 1)), || {
        format!("(b) unexpected error {err}")
    })?;

    let order = default_ordering(&c41);
    let vertices: Vec<u32> = c41.vertices().collect();
    let monomials = enumerate_monomials(&vertices, 3, 4);
    if let Some(m) = monomials.iter().find(|m| !is_forest(&essential_graph(&c41, &order, m))) {
        return Err(format!("(c) essential graph of {m} has a cycle"));
    }
    Ok(format!(
        "(a) C_41 patched in {elapsed_a:.1?} over {} local systems, support {}; (b) K_3 fails at x_1; (c) {} essential graphs are forests",
        patched.local_systems,
        lambda.support_size(),
        monomials.len()
    ))
}

fn random_graph(rng: &mut ChaCha8Rng, n: u32, p: f64) -> Graph {
    let edges: Vec<(u32, u32)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

fn random_forest(rng: &mut ChaCha8Rng, n: u32) -> Graph {
    let mut edges = Vec::new();
    for v in 2..=n {
        if rng.gen_bool(0.8) {
            edges.push((rng.gen_range(1..v), v));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// `G × K_2`: vertex `v` becomes `v` and `v + n`, each edge `uv` becomes
/// `u(v+n)` and `(u+n)v`.
fn bipartite_double(g: &Graph) -> Graph {
    let n = g.n();
    Graph::new(2 * n, g.edges().iter().flat_map(|&(u, v)| [(u, v + n), (u + n, v)])).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut primal_found = 0;
    let mut dual_found = 0;
    let mut colorable = 0;
    for trial in 0..500 {
        let k = rng.gen_range(2..=3u32);
        let primes: Vec<u32> = [2, 5, 7].into_iter().filter(|p| k % p != 0).collect();
        let field = PrimeField::new(primes[rng.gen_range(0..primes.len())]).unwrap();
        if trial % 2 == 0 {
            let n = rng.gen_range(2..=6);
            let g = random_graph(&mut rng, n, 0.5);
            let d = rng.gen_range(0..=2);
            let q = CertificateQuery::new(&g, k, d, field).unwrap();
            if let Some(c) = find_certificate(&q) {
                ensure(verify_certificate(&c, &q), || format!("trial {trial}: {g:?} certificate fails"))?;
                primal_found += 1;
            }
            if let Some(l) = find_dual_certificate(&g, k, d, field).unwrap() {
                ensure(verify_dual_certificate(&l, &g, k, d, &field), || format!("trial {trial}: {g:?} dual fails"))?;
                dual_found += 1;
            }
        } else {
            let g = match trial % 6 {
                1 => {
                    let n = rng.gen_range(2..=7);
                    random_forest(&mut rng, n)
                }
                3 => Graph::cycle(2 * rng.gen_range(2..=4)),
                _ => {
                    let n = rng.gen_range(2..=4);
                    bipartite_double(&random_graph(&mut rng, n, 0.6))
                }
            };
            let d = rng.gen_range(0..=3);
            let q = CertificateQuery::new(&g, k, d, field).unwrap();
            ensure(find_certificate(&q).is_none(), || format!("trial {trial}: colourable {g:?} has a certificate"))?;
            colorable += 1;
        }
    }
    Ok(format!(
        "500 trials: {primal_found} certificates and {dual_found} duals verified, {colorable} colourable graphs without certificates"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for trial in 0..200 {
        let n = rng.gen_range(1..=20);
        let p = rng.gen_range(0.05..0.6);
        let g = random_graph(&mut rng, n, p);
        let coloring = greedy_coloring(&g);
        let order = ordering_from_coloring(&g, &coloring).map_err(|e| e.to_string())?;
        let longest = longest_increasing_path(&g, &order);
        ensure(longest < coloring.color_count().max(1), || {
            format!("trial {trial}: path of length {longest} with {} colours", coloring.color_count())
        })?;
    }
    let mut checked = 0usize;
    for girth in (3..=41u32).step_by(2) {
        let g = Graph::cycle(girth);
        let order = default_ordering(&g);
        // |alpha| < g/6 - 1  <=>  6|alpha| + 6 < g
        let Some(max_deg) = (0..=girth).take_while(|a| 6 * a + 6 < girth).last() else {
            continue;
        };
        let vertices: Vec<u32> = g.vertices().collect();
        let monomials = enumerate_monomials(&vertices, 3, max_deg);
        let h = g.relabel(&order);
        let cyclic = exec::find_first(Execution::default(), &monomials, |m| {
            let support: Vec<u32> = m.support().map(|v| order.new_label(v)).collect();
            !is_forest(&descendant_graph_ordered(&h, &support))
        });
        if let Some(m) = cyclic {
            return Err(format!("C_{girth}: descendant graph of {m} has a cycle"));
        }
        checked += monomials.len();
    }
    Ok(format!("200 random orderings respect the colour bound; {checked} descendant graphs on odd cycles are forests"))
}

fn dense_rank<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][c]).unwrap();
        let pivot: Vec<F::Elem> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !f.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn rank_trial<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let nr = rng.gen_range(1..=8);
    let nc = rng.gen_range(1..=8);
    let density = rng.gen_range(0.2..0.9);
    let mut dense = Vec::new();
    let mut sys = SparseLinearSystem::new(f.clone(), (0..nc).collect::<Vec<usize>>());
    for _ in 0..nr {
        let row: Vec<F::Elem> = (0..nc)
            .map(|_| if rng.gen_bool(density) { f.from_i64(rng.gen_range(-3..=3)) } else { f.zero() })
            .collect();
        let rhs = f.from_i64(rng.gen_range(-3..=3));
        sys.add_row(row.iter().cloned().enumerate(), rhs.clone());
        let mut aug = row.clone();
        aug.push(rhs);
        dense.push((row, aug));
    }
    let rank_a = dense_rank(f, dense.iter().map(|(r, _)| r.clone()).collect());
    let rank_aug = dense_rank(f, dense.iter().map(|(_, a)| a.clone()).collect());
    let ech = rref(&sys);
    ensure(ech.rank() == rank_a || (ech.inconsistent && ech.rank() == rank_aug), || {
        format!("rank {} vs dense {rank_a}/{rank_aug}", ech.rank())
    })?;
    ensure(ech.inconsistent == (rank_aug > rank_a), || "consistency disagrees with dense ranks".into())?;
    if let Some(sol) = solve_basic(&sys) {
        ensure(sys.is_satisfied_by(&sol.values), || "basic solution does not re-substitute".into())?;
        ensure(
            (0..nc).all(|c| sol.basis.contains(&c) || f.is_zero(&sol.values[c])),
            || "nonzero value off the basis".into(),
        )?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let gf7 = PrimeField::new(7).unwrap();
    for trial in 0..200 {
        rank_trial(&gf7, &mut rng).map_err(|e| format!("GF(7) trial {trial}: {e}"))?;
        rank_trial(&Rationals, &mut rng).map_err(|e| format!("QQ trial {trial}: {e}"))?;
    }
    Ok("200 systems each over GF(7) and QQ agree with dense elimination".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("golden Groebner bases", criterion_1, 10),
        ("example tree reducibility", criterion_2, 10),
        ("primal/dual alternative", criterion_3, 120),
        ("local patching", criterion_4, 120),
        ("soundness round-trips", criterion_5, 180),
        ("orderings and forests", criterion_6, 60),
        ("linear algebra oracle", criterion_7, 30),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("exceeded {budget}s budget: {msg}"))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {} [{name}]: PASS ({elapsed:.2?}) {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {} [{name}]: FAIL ({elapsed:.2?}) {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
