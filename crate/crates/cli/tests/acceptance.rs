//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed:
//! `cargo test -p nbkc-cli --test acceptance`.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use nbkc::compose::{embed_in_nbkc, unequal_classes};
use nbkc::families::{
    circulant_arith_nbc, complete_multipartite, complete_multipartite_nbc, cycle_nbc, hamming_nbc, hypercube_nbc,
    CirculantSpec, HammingSpec,
};
use nbkc::io::{read_coloring, read_graph};
use nbkc::reduction::{decode, ess_brute_force, flawed_gadget, reduce_ess_to_nbc, EssInstance};
use nbkc::solver::{brute_force, solve, SolveConfig, SolveStatus, BRUTE_FORCE_BITS};
use nbkc::unions::{cycle_union_nbc, union_congruence, union_over_set, UnionSpec};
use nbkc::verify::{check_necessary, is_balanced};
use nbkc::{Coloring, ColoredGraph, Error, Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Balanced colorings seen while running the other criteria.
#[derive(Default)]
struct Corpus(Vec<(Graph, Coloring)>);

impl Corpus {
    fn add(&mut self, g: &Graph, c: &Coloring) {
        self.0.push((g.clone(), c.clone()));
    }

    fn add_cg(&mut self, cg: &ColoredGraph) {
        self.add(&cg.graph, &cg.coloring);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sat(g: &Graph, k: usize) -> Result<Option<Coloring>, String> {
    let out = solve(g, k, &SolveConfig::default()).map_err(|e| e.to_string())?;
    match out.status {
        SolveStatus::Sat(c) => Ok(Some(c)),
        SolveStatus::Unsat => Ok(None),
        SolveStatus::BudgetExceeded => Err("budget exceeded".into()),
    }
}

fn within_brute_force(n: usize, k: usize) -> bool {
    (k as f64).powi(n as i32) <= f64::from(1u32 << BRUTE_FORCE_BITS)
}

fn is_refusal<T>(r: &nbkc::Result<T>) -> bool {
    matches!(r, Err(Error::Refused(_)))
}

fn criterion_1(corpus: &mut Corpus) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_nbkc");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases: [(&[&str], &str); 3] = [
        (&["cycle", "8"], "c8"),
        (&["circulant", "18", "1,3,5", "-k", "3"], "c18"),
        (&["circulant", "24", "1,4,7,10", "-k", "4"], "c24"),
    ];
    let mut worst = Duration::ZERO;
    for (args, prefix) in cases {
        let start = Instant::now();
        let built = Command::new(bin)
            .current_dir(dir.path())
            .arg("construct")
            .args(args)
            .args(["-o", prefix])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(built.status.success(), || format!("construct {args:?} exited {:?}", built.status.code()))?;
        let graph = format!("{prefix}.graph");
        let coloring = format!("{prefix}.coloring");
        let checked = Command::new(bin)
            .current_dir(dir.path())
            .args(["verify", &graph, &coloring])
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        worst = worst.max(elapsed);
        let stdout = String::from_utf8_lossy(&checked.stdout);
        ensure(checked.status.success() && stdout.contains("BALANCED"), || format!("verify {prefix}: {stdout}"))?;
        ensure(elapsed < Duration::from_secs(1), || format!("{prefix} took {elapsed:?}"))?;
        let g = read_graph(&std::fs::read_to_string(dir.path().join(&graph)).unwrap()).map_err(|e| e.to_string())?;
        let c = read_coloring(&std::fs::read_to_string(dir.path().join(&coloring)).unwrap()).map_err(|e| e.to_string())?;
        corpus.add(&g, &c);
    }
    Ok(format!("3 figures, slowest {worst:?}"))
}

fn criterion_2(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let spec = HammingSpec::new(4, 4).map_err(|e| e.to_string())?;
    let h44 = hamming_nbc(spec).map_err(|e| e.to_string())?;
    ensure(is_balanced(&h44.graph, &h44.coloring), || "H(4,4) unbalanced".into())?;
    for c4 in 1..=4 {
        let got = h44.coloring.color(spec.index_of(&[1, 1, 1, c4]));
        ensure(got == c4, || format!("cell (1,1,1,{c4}) has color {got}"))?;
    }
    corpus.add_cg(&h44);
    for (d, k) in [(3, 3), (4, 2), (8, 2)] {
        let cg = hamming_nbc(HammingSpec::new(d, k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(is_balanced(&cg.graph, &cg.coloring), || format!("H({d},{k}) unbalanced"))?;
        corpus.add_cg(&cg);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("H(4,4) and 3 more in {elapsed:?}"))
}

/// Edge counts between color classes, by direct tally.
fn class_edges(g: &Graph, c: &Coloring) -> Vec<Vec<usize>> {
    let k = c.k();
    let mut e = vec![vec![0; k]; k];
    for &(u, v) in g.edges() {
        let (a, b) = (c.color(u) - 1, c.color(v) - 1);
        e[a.min(b)][a.max(b)] += 1;
    }
    e
}

fn criterion_3(corpus: &Corpus) -> Outcome {
    for (idx, (g, c)) in corpus.0.iter().enumerate() {
        ensure(is_balanced(g, c), || format!("corpus entry {idx} is not balanced"))?;
        let k = c.k();
        let m = g.size();
        let e = class_edges(g, c);
        for i in 0..k {
            for j in i..k {
                let (lhs, rhs) = if i == j { (k * k * e[i][i], m) } else { (k * k * e[i][j], 2 * m) };
                ensure(lhs == rhs, || {
                    format!("entry {idx} ({} vertices, k={k}): E[V{},V{}] = {}, |E| = {m}", g.order(), i + 1, j + 1, e[i][j])
                })?;
            }
        }
    }
    Ok(format!("{} balanced colorings, exact", corpus.0.len()))
}

/// Canonical code of a graph on at most 8 vertices: the least adjacency
/// bitmask over relabelings that list vertices by nondecreasing degree.
fn canonical(n: usize, adj: &[u8]) -> u64 {
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let j = (i..n).find(|&j| deg[order[j]] != deg[order[i]]).unwrap_or(n);
        blocks.push((i, j));
        i = j;
    }
    let mut best = u64::MAX;
    permute_blocks(&mut order, &blocks, 0, adj, &mut best);
    best
}

fn permute_blocks(order: &mut Vec<usize>, blocks: &[(usize, usize)], b: usize, adj: &[u8], best: &mut u64) {
    if b == blocks.len() {
        let n = order.len();
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[order[i]] >> order[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let (lo, hi) = blocks[b];
    heap_permute(order, lo, hi - lo, &mut |o| permute_blocks(o, blocks, b + 1, adj, best));
}

fn heap_permute(order: &mut Vec<usize>, lo: usize, len: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if len <= 1 {
        f(order);
        return;
    }
    for i in 0..len {
        heap_permute(order, lo, len - 1, f);
        if len % 2 == 0 {
            order.swap(lo + i, lo + len - 1);
        } else {
            order.swap(lo, lo + len - 1);
        }
    }
}

/// All graphs on `1..=max_n` vertices up to isomorphism, each as an
/// adjacency bitmask list. Every graph on `n` vertices is a graph on
/// `n - 1` vertices plus one vertex, so extension then dedup is complete.
fn graphs_up_to_iso(max_n: usize) -> Vec<Vec<Vec<u8>>> {
    let mut levels = vec![vec![vec![0u8]]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &levels[n - 2] {
            for mask in 0u8..(1 << (n - 1)) {
                let mut adj = g.clone();
                for (v, a) in adj.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *a |= 1 << (n - 1);
                    }
                }
                adj.push(mask);
                if seen.insert(canonical(n, &adj)) {
                    next.push(adj);
                }
            }
        }
        levels.push(next);
    }
    levels
}

fn to_graph(adj: &[u8]) -> Graph {
    let n = adj.len();
    let pairs = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)));
    Graph::from_edges(n, pairs).unwrap()
}

fn agree(g: &Graph, k: usize, corpus: &mut Corpus) -> Result<bool, String> {
    let fast = sat(g, k)?;
    let slow = brute_force(g, k).map_err(|e| e.to_string())?;
    ensure(fast.is_some() == slow.status.is_sat(), || {
        format!("solve {} but brute force {} on {:?}, k={k}", fast.is_some(), slow.status.is_sat(), g.edges())
    })?;
    if let Some(c) = &fast {
        ensure(is_balanced(g, c), || format!("unbalanced witness on {:?}", g.edges()))?;
        corpus.add(g, c);
    }
    Ok(fast.is_some())
}

fn criterion_4(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let levels = graphs_up_to_iso(7);
    let totals: Vec<usize> = levels.iter().map(Vec::len).collect();
    ensure(totals == [1, 2, 4, 11, 34, 156, 1044], || format!("graph counts {totals:?}"))?;
    let mut connected = Vec::new();
    let mut sat_count = 0;
    for level in &levels {
        let mut count = 0;
        for adj in level {
            let g = to_graph(adj);
            if !g.is_connected() {
                continue;
            }
            count += 1;
            sat_count += usize::from(agree(&g, 2, corpus)?);
        }
        connected.push(count);
    }
    ensure(connected == [1, 1, 2, 6, 21, 112, 853], || format!("connected counts {connected:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let n = rng.gen_range(2..=9);
        let k = 2 + i % 2;
        let p: f64 = rng.gen_range(0.2..0.9);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, pairs).unwrap();
        sat_count += usize::from(agree(&g, k, corpus)?);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} connected graphs + 200 random, {sat_count} SAT, {elapsed:?}", connected.iter().sum::<usize>()))
}

/// Generator success must coincide with solver (and, where small enough,
/// brute-force) satisfiability.
fn biconditional(name: &str, g: &Graph, k: usize, built: nbkc::Result<ColoredGraph>, corpus: &mut Corpus) -> Result<(), String> {
    let refused = is_refusal(&built);
    if let Err(e) = &built {
        ensure(refused, || format!("{name}: error {e}"))?;
    }
    let solvable = sat(g, k)?;
    if within_brute_force(g.order(), k) {
        let oracle = brute_force(g, k).map_err(|e| e.to_string())?.status.is_sat();
        ensure(oracle == solvable.is_some(), || format!("{name}: solver and brute force disagree"))?;
    }
    ensure(refused == solvable.is_none(), || format!("{name}: refused={refused}, solver SAT={}", solvable.is_some()))?;
    if let Ok(cg) = built {
        ensure(cg.graph == *g && is_balanced(&cg.graph, &cg.coloring), || format!("{name}: bad construction"))?;
        corpus.add_cg(&cg);
    }
    Ok(())
}

fn criterion_5(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for p in 2..=3 {
        let mut sizes = vec![1; p];
        loop {
            for k in 2..=3 {
                let g = complete_multipartite(&sizes);
                biconditional(&format!("K{sizes:?} k={k}"), &g, k, complete_multipartite_nbc(&sizes, k), corpus)?;
                cases += 1;
            }
            // next nondecreasing tuple with entries in 1..=6
            match (0..p).rev().find(|&i| sizes[i] < 6) {
                Some(i) => {
                    let v = sizes[i] + 1;
                    sizes[i..].iter_mut().for_each(|s| *s = v);
                }
                None => break,
            }
        }
    }
    for m in 3..=16 {
        biconditional(&format!("C{m}"), &Graph::cycle(m).unwrap(), 2, cycle_nbc(m), corpus)?;
        cases += 1;
    }
    for d in 1..=6 {
        let g = HammingSpec::new(d, 2).unwrap().graph();
        biconditional(&format!("Q{d}"), &g, 2, hypercube_nbc(d), corpus)?;
        cases += 1;
    }
    Ok(format!("{cases} family members, {:?}", start.elapsed()))
}

/// Equal-sum split by trying every assignment of elements to parts.
fn naive_ess(t: &[u64], k: usize) -> bool {
    let total: u64 = t.iter().sum();
    if total % k as u64 != 0 {
        return false;
    }
    let count = k.pow(t.len() as u32);
    (0..count).any(|mut code| {
        let mut sums = vec![0; k];
        for &x in t {
            sums[code % k] += x;
            code /= k;
        }
        sums.iter().all(|&s| s * k as u64 == total)
    })
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let (mut yes, mut total) = (0, 0);
    for len in 1..=5 {
        let mut t = vec![1u64; len];
        loop {
            for k in 2..=3 {
                let inst = EssInstance::new(t.clone(), k, None).map_err(|e| e.to_string())?;
                let expected = naive_ess(&t, k);
                let found = ess_brute_force(&inst).map_err(|e| e.to_string())?;
                ensure(found.is_some() == expected, || format!("ess_brute_force wrong on {t:?}, k={k}"))?;
                let r = reduce_ess_to_nbc(&inst).map_err(|e| e.to_string())?;
                let witness = sat(&r.graph, k)?;
                ensure(witness.is_some() == expected, || format!("reduction of {t:?}, k={k}: SAT={}", witness.is_some()))?;
                if let Some(c) = witness {
                    let p = decode(&r, &c).map_err(|e| e.to_string())?;
                    ensure(p.is_equal_sum(), || format!("decode of {t:?}, k={k} gave sums {:?}", p.sums))?;
                    yes += 1;
                }
                total += 1;
            }
            match (0..len).rev().find(|&i| t[i] < 6) {
                Some(i) => {
                    let v = t[i] + 1;
                    t[i..].iter_mut().for_each(|s| *s = v);
                }
                None => break,
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} instances, {yes} YES, {elapsed:?}"))
}

fn criterion_7(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bases: Vec<Graph> = (4..=10).map(|m| Graph::cycle(m).unwrap()).collect();
    bases.push(Graph::petersen());
    bases.push(complete_multipartite(&[2, 3, 3]));
    for _ in 0..20 {
        let n = rng.gen_range(4..=10);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.4)).collect();
        bases.push(Graph::from_edges(n, pairs).unwrap());
    }
    let mut checks = 0;
    for g in &bases {
        for &(u, v) in g.edges() {
            let s: VertexSet = [u, v].into_iter().collect();
            for k in 2..=4 {
                let r = union_congruence(g, &s, k).map_err(|e| e.to_string())?;
                ensure(r.modulus == k * k, || format!("one-edge glue on {:?}, k={k}: modulus {}", g.edges(), r.modulus))?;
                checks += 1;
            }
        }
    }
    // on C_8 glued along an edge, the copy counts the congruence excludes are UNSAT
    let c8 = Graph::cycle(8).unwrap();
    let edge: VertexSet = [0, 1].into_iter().collect();
    for n in 2..=4 {
        let u = union_over_set(&UnionSpec::new(c8.clone(), edge.clone(), n).unwrap()).unwrap();
        ensure(sat(&u.graph, 2)?.is_none(), || format!("8C_{{0,1}} with {n} copies is SAT"))?;
    }
    let s3: VertexSet = [0, 1, 2].into_iter().collect();
    let cu = cycle_union_nbc(8, &s3, 3).map_err(|e| e.to_string())?;
    ensure(is_balanced(&cu.graph, &cu.coloring), || "cycle_union_nbc(8, {0,1,2}, 3) unbalanced".into())?;
    corpus.add_cg(&cu);
    let u5 = union_over_set(&UnionSpec::new(c8, edge, 5).unwrap()).unwrap();
    ensure(u5.graph.order() == 32, || format!("union has {} vertices", u5.graph.order()))?;
    ensure(sat(&u5.graph, 2)?.is_none(), || "m=8, S={0,1}, n=5 is SAT".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} one-edge congruences, union checks, {elapsed:?}"))
}

fn criterion_8(corpus: &mut Corpus) -> Outcome {
    let k4 = Graph::complete(4);
    let e = embed_in_nbkc(&k4, 2).map_err(|e| e.to_string())?;
    ensure(is_balanced(&e.host.graph, &e.host.coloring), || "host unbalanced".into())?;
    let image: VertexSet = e.map.iter().copied().collect();
    ensure(image.len() == 4, || "map not injective".into())?;
    ensure(e.host.graph.induced_subgraph(&image).unwrap().graph.size() == 6, || "K_4 not induced".into())?;
    let report = check_necessary(&k4, 2).map_err(|e| e.to_string())?;
    ensure(report.is_uncolorable(), || "K_4 not flagged uncolorable".into())?;
    ensure(brute_force(&k4, 2).unwrap().status == SolveStatus::Unsat, || "K_4 has a coloring".into())?;
    corpus.add_cg(&e.host);
    Ok(format!("host on {} vertices, K_4 refused by {}", e.host.graph.order(), report.failed_rule().unwrap()))
}

fn criterion_9(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let fg = flawed_gadget(&[4, 3, 1]).map_err(|e| e.to_string())?;
    let free = sat(&fg.graph, 2)?.ok_or("flawed gadget is UNSAT")?;
    corpus.add(&fg.graph, &free);
    let cfg = SolveConfig { fixed: vec![(fg.b[0], 1), (fg.b[1], 1)], ..SolveConfig::default() };
    let out = solve(&fg.graph, 2, &cfg).map_err(|e| e.to_string())?;
    let c = out.status.witness().ok_or("UNSAT with c(u1) = c(u2)")?.clone();
    ensure(is_balanced(&fg.graph, &c) && c.color(fg.b[0]) == c.color(fg.b[1]), || "bad constrained witness".into())?;
    corpus.add(&fg.graph, &c);
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{} vertices, SAT with u1 and u2 both color {}, {elapsed:?}", fg.graph.order(), c.color(fg.b[0])))
}

fn criterion_10(corpus: &mut Corpus) -> Outcome {
    let k22 = complete_multipartite_nbc(&[2, 2], 2).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for t in 0..=3 {
        let out = unequal_classes(&k22.graph, &k22.coloring, t).map_err(|e| e.to_string())?;
        ensure(is_balanced(&out.graph, &out.coloring), || format!("t={t} unbalanced"))?;
        let cs = out.coloring.class_sizes();
        ensure(cs[1..].iter().all(|&s| s == cs[0] + t), || format!("t={t}: class sizes {cs:?}"))?;
        corpus.add_cg(&out);
        sizes = cs;
    }
    Ok(format!("class sizes after 3 steps {sizes:?}"))
}

fn main() {
    let mut corpus = Corpus::default();
    // the remaining corpus entries: the arithmetic circulants used in the figures
    for (n, conn) in [(8, vec![1]), (18, vec![1, 3, 5]), (24, vec![1, 4, 7, 10]), (12, vec![1, 3])] {
        if let Ok(cg) = circulant_arith_nbc(&CirculantSpec::new(n, conn).unwrap()) {
            corpus.add_cg(&cg);
        }
    }
    let mut results: Vec<(usize, Outcome, Duration)> = Vec::new();
    let mut run = |id: usize, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let r = f();
        results.push((id, r, start.elapsed()));
    };
    run(1, &mut || criterion_1(&mut corpus));
    run(2, &mut || criterion_2(&mut corpus));
    run(4, &mut || criterion_4(&mut corpus));
    run(5, &mut || criterion_5(&mut corpus));
    run(6, &mut criterion_6);
    run(7, &mut || criterion_7(&mut corpus));
    run(8, &mut || criterion_8(&mut corpus));
    run(9, &mut || criterion_9(&mut corpus));
    run(10, &mut || criterion_10(&mut corpus));
    run(3, &mut || criterion_3(&corpus));
    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (id, r, t) in &results {
        match r {
            Ok(msg) => println!("criterion {id:>2}: PASS ({msg}; {t:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL ({msg}; {t:.2?})");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
