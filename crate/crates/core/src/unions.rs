//! `nG_S`: `n` copies of a graph glued along a vertex subset `S`.

use serde::Serialize;

use crate::error::{Error, Refusal, Result, Rule};
use crate::graph::{Graph, VertexSet};
use crate::verify::{is_nbkc, Coloring, ColoredGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionSpec {
    pub base: Graph,
    pub glue: VertexSet,
    pub copies: usize,
}

impl UnionSpec {
    pub fn new(base: Graph, glue: VertexSet, copies: usize) -> Result<Self> {
        if glue.is_empty() || glue.len() >= base.order() {
            return Err(Error::InvalidArgument("glue set must be nonempty and proper".into()));
        }
        if let Some(m) = glue.max() {
            base.check_vertex(m)?;
        }
        if copies == 0 {
            return Err(Error::InvalidArgument("need at least one copy".into()));
        }
        Ok(UnionSpec { base, glue, copies })
    }
}

/// The glued graph with `maps[j][v]` the vertex playing `v` in copy `j`.
/// Copy 0 keeps the base numbering; each later copy appends its vertices
/// outside `S` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionGraph {
    pub graph: Graph,
    pub maps: Vec<Vec<usize>>,
}

pub fn union_over_set(spec: &UnionSpec) -> Result<UnionGraph> {
    let g = &spec.base;
    let n = g.order();
    let mut maps = vec![(0..n).collect::<Vec<_>>()];
    let mut next = n;
    for _ in 1..spec.copies {
        let map = (0..n)
            .map(|v| {
                if spec.glue.contains(v) {
                    v
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        maps.push(map);
    }
    let pairs = maps.iter().flat_map(|m| g.edges().iter().map(move |&(u, v)| (m[u], m[v])));
    let graph = Graph::from_edges(next, pairs)?;
    Ok(UnionGraph { graph, maps })
}

/// Colors every copy by `c`. Requires `S` independent and `c` balanced.
pub fn union_nbc_independent(g: &Graph, c: &Coloring, s: &VertexSet, copies: usize) -> Result<ColoredGraph> {
    let spec = UnionSpec::new(g.clone(), s.clone(), copies)?;
    if !g.is_independent(s) {
        return Err(Error::InvalidArgument("glue set is not independent".into()));
    }
    if !is_nbkc(g, c)?.balanced {
        return Err(Error::NotBalanced);
    }
    let u = union_over_set(&spec)?;
    let mut colors = vec![0; u.graph.order()];
    for map in &u.maps {
        for (v, &x) in map.iter().enumerate() {
            colors[x] = c.color(v);
        }
    }
    let coloring = Coloring::new(c.k(), colors)?;
    verified(u.graph, coloring)
}

fn verified(graph: Graph, coloring: Coloring) -> Result<ColoredGraph> {
    let report = is_nbkc(&graph, &coloring)?;
    if !report.balanced {
        return Err(Refusal::new(
            Rule::VerificationFailed,
            format!("union coloring unbalanced at vertex {}", report.violations[0].vertex),
        )
        .into());
    }
    Ok(ColoredGraph { graph, coloring })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Necessary condition on the copy count for a dependent glue set:
/// a balanced `k`-coloring of `nG_S` forces `n ≡ 1 (mod lcm(L, M))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub k: usize,
    /// Degrees in `G<S>`, in increasing vertex order of `S`.
    pub q: Vec<usize>,
    /// `|E(G<S>)|`.
    pub p: usize,
    /// `lcm` of `k / gcd(q_i, k)`.
    pub l: usize,
    /// `k² / gcd(p, k²)`.
    pub m: usize,
    pub modulus: usize,
}

impl CongruenceReport {
    pub fn admissible(&self, n: usize) -> bool {
        n % self.modulus == 1 % self.modulus
    }
}

pub fn union_congruence(g: &Graph, s: &VertexSet, k: usize) -> Result<CongruenceReport> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    let sub = g.induced_subgraph(s)?;
    let p = sub.graph.size();
    if p == 0 {
        return Err(Error::InvalidArgument("glue set is independent".into()));
    }
    let q = sub.graph.degrees();
    let l = q.iter().fold(1, |acc, &qi| lcm(acc, k / gcd(qi, k)));
    let m = k * k / gcd(p, k * k);
    Ok(CongruenceReport { k, q, p, l, m, modulus: lcm(l, m) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealCheck {
    pub ideal: bool,
    pub reason: Option<String>,
}

/// Maximal runs of `S` along the cycle as `(start, len)`, in increasing
/// cyclic order starting from the first run that begins after a gap.
fn arcs(m: usize, s: &VertexSet) -> Vec<(usize, usize)> {
    let start = (0..m).find(|&v| s.contains(v) && !s.contains((v + m - 1) % m)).expect("proper nonempty set");
    let mut out = Vec::new();
    let mut i = 0;
    while i < m {
        let v = (start + i) % m;
        if s.contains(v) {
            let mut len = 0;
            while len + i < m && s.contains((v + len) % m) {
                len += 1;
            }
            out.push((v, len));
            i += len;
        } else {
            i += 1;
        }
    }
    out.sort_unstable();
    out
}

fn check_cycle_set(m: usize, s: &VertexSet) -> Result<()> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs at least 3 vertices, got {m}")));
    }
    if let Some(x) = s.max() {
        if x >= m {
            return Err(Error::VertexOutOfRange { vertex: x, n: m });
        }
    }
    if s.is_empty() || s.len() >= m {
        return Err(Error::InvalidArgument("glue set must be nonempty and proper".into()));
    }
    if s.iter().all(|v| !s.contains((v + 1) % m)) {
        return Err(Error::InvalidArgument("glue set is independent".into()));
    }
    Ok(())
}

/// Gaps along the cycle are counted in vertices strictly between
/// consecutive components; a lone component is its own successor.
pub fn is_ideal_dependent_set(m: usize, s: &VertexSet) -> Result<IdealCheck> {
    check_cycle_set(m, s)?;
    let arcs = arcs(m, s);
    let fail = |r: String| Ok(IdealCheck { ideal: false, reason: Some(r) });
    if let Some(&(v, _)) = arcs.iter().find(|a| a.1 == 1) {
        return fail(format!("vertex {v} is a trivial component"));
    }
    if arcs.len() == 1 && (arcs[0].1 - 1) % 2 == 1 {
        return fail(format!("lone component is a path of odd length {}", arcs[0].1 - 1));
    }
    for (i, &(start, len)) in arcs.iter().enumerate() {
        let next = arcs[(i + 1) % arcs.len()].0;
        let gap = (next + m - (start + len) % m) % m;
        if gap % 2 == 0 {
            return fail(format!("{gap} vertices between components at {start} and {next}"));
        }
    }
    Ok(IdealCheck { ideal: true, reason: None })
}

/// Balanced 2-coloring of `n` copies of `C_m` glued along an ideal
/// dependent set `S`, for `m ≡ 0 (mod 4)` and odd `n`.
///
/// Base coloring `c(i) = 1` for `i mod 4 ∈ {0, 1}`, else 2; `S` keeps `c`.
/// In the gap after a component ending at `α`, position `s = 1..t` takes
/// `c(α + s)` except when `s` is odd and the copy index (1-based) exceeds
/// `(n + 1) / 2`, where it takes the swapped color.
///
/// A single copy is just `C_m` and is colored by `c` whatever `S` is.
pub fn cycle_union_nbc(m: usize, s: &VertexSet, n: usize) -> Result<ColoredGraph> {
    check_cycle_set(m, s)?;
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    if m % 4 != 0 {
        return Err(Refusal::new(Rule::Hypothesis, format!("cycle order {m} is not a multiple of 4")).into());
    }
    if n % 2 == 0 {
        return Err(Refusal::new(
            Rule::DegreeDivisibility,
            format!("component endpoints of S have degree n + 1 = {}, odd", n + 1),
        )
        .into());
    }
    let check = is_ideal_dependent_set(m, s)?;
    if !check.ideal && n > 1 {
        return Err(Refusal::with_reasons(Rule::NotIdeal, check.reason.into_iter().collect()).into());
    }
    let spec = UnionSpec::new(Graph::cycle(m)?, s.clone(), n)?;
    let u = union_over_set(&spec)?;
    let base = |i: usize| if i % 4 < 2 { 1 } else { 2 };
    let mut colors = vec![0; u.graph.order()];
    for v in s.iter() {
        colors[v] = base(v);
    }
    for &(start, len) in &arcs(m, s) {
        let alpha = start + len - 1;
        let mut pos = 1;
        while !s.contains((alpha + pos) % m) {
            let v = (alpha + pos) % m;
            for (j, map) in u.maps.iter().enumerate() {
                let swapped = pos % 2 == 1 && j + 1 > (n + 1) / 2;
                colors[map[v]] = if swapped { 3 - base(v) } else { base(v) };
            }
            pos += 1;
        }
    }
    verified(u.graph, Coloring::new(2, colors)?)
}
