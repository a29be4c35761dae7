//! Products, joins, the induced-subgraph embedding and vertex addition,
//! each carrying balanced colorings from the inputs to the result.

use crate::error::{Error, Refusal, Result, Rule};
use crate::graph::Graph;
use crate::verify::{cyclic_shift, is_nbkc, Coloring, ColoredGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Cartesian,
    Direct,
    Strong,
    Lexicographic,
}

impl std::str::FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartesian" => Ok(ProductKind::Cartesian),
            "direct" | "tensor" => Ok(ProductKind::Direct),
            "strong" => Ok(ProductKind::Strong),
            "lexicographic" | "lex" => Ok(ProductKind::Lexicographic),
            other => Err(Error::InvalidArgument(format!("unknown product kind `{other}`"))),
        }
    }
}

/// Bijection between product vertices and pairs `(u, v)`, `u ∈ V(G)`,
/// `v ∈ V(H)`: vertex `(u, v)` has index `u * |H| + v`, so `H`-layers are
/// contiguous rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexPairIndex {
    pub g_order: usize,
    pub h_order: usize,
}

impl VertexPairIndex {
    pub fn index(&self, u: usize, v: usize) -> usize {
        u * self.h_order + v
    }

    pub fn pair(&self, index: usize) -> (usize, usize) {
        (index / self.h_order, index % self.h_order)
    }

    /// `H_u = {(u, v) : v ∈ V(H)}`.
    pub fn h_layer(&self, u: usize) -> Vec<usize> {
        (0..self.h_order).map(|v| self.index(u, v)).collect()
    }

    /// `G_v = {(u, v) : u ∈ V(G)}`.
    pub fn g_layer(&self, v: usize) -> Vec<usize> {
        (0..self.g_order).map(|u| self.index(u, v)).collect()
    }
}

/// One of the four standard products of `g` and `h`.
pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> Result<(Graph, VertexPairIndex)> {
    if g.order() == 0 || h.order() == 0 {
        return Err(Error::InvalidArgument("product factors must be nonempty".into()));
    }
    let idx = VertexPairIndex { g_order: g.order(), h_order: h.order() };
    let mut pairs = Vec::new();
    let cartesian = matches!(kind, ProductKind::Cartesian | ProductKind::Strong);
    let direct = matches!(kind, ProductKind::Direct | ProductKind::Strong);
    if cartesian {
        for u in 0..g.order() {
            pairs.extend(h.edges().iter().map(|&(v, w)| (idx.index(u, v), idx.index(u, w))));
        }
        for v in 0..h.order() {
            pairs.extend(g.edges().iter().map(|&(u, x)| (idx.index(u, v), idx.index(x, v))));
        }
    }
    if direct {
        for &(u, x) in g.edges() {
            for &(v, w) in h.edges() {
                pairs.push((idx.index(u, v), idx.index(x, w)));
                pairs.push((idx.index(u, w), idx.index(x, v)));
            }
        }
    }
    if kind == ProductKind::Lexicographic {
        for u in 0..g.order() {
            pairs.extend(h.edges().iter().map(|&(v, w)| (idx.index(u, v), idx.index(u, w))));
        }
        for &(u, x) in g.edges() {
            for v in 0..h.order() {
                for w in 0..h.order() {
                    pairs.push((idx.index(u, v), idx.index(x, w)));
                }
            }
        }
    }
    Ok((Graph::from_edges(idx.g_order * idx.h_order, pairs)?, idx))
}

fn require_balanced(g: &Graph, c: &Coloring, what: &str) -> Result<()> {
    if !is_nbkc(g, c)?.balanced {
        return Err(Error::InvalidArgument(format!("coloring of {what} is not neighborhood-balanced")));
    }
    Ok(())
}

fn self_verify(graph: Graph, coloring: Coloring) -> Result<ColoredGraph> {
    let report = is_nbkc(&graph, &coloring)?;
    if !report.balanced {
        return Err(Refusal::new(
            Rule::VerificationFailed,
            format!("transferred coloring unbalanced at vertex {}", report.violations[0].vertex),
        )
        .into());
    }
    Ok(ColoredGraph { graph, coloring })
}

fn missing(what: &str) -> Error {
    Error::InvalidArgument(format!("missing coloring: {what}"))
}

/// Builds the product and a balanced coloring of it.
///
/// - cartesian, strong: both colorings required. Every `H`-layer is colored
///   by a cyclic shift of `ch`, chosen so that the `G`-layer of vertex 0 of
///   `H` reproduces `cg`.
/// - direct: either coloring suffices; every layer of the colored factor
///   copies it.
/// - lexicographic: with both colorings, `H_u` gets `ch` shifted by
///   `cg(u) - 1`; with only `ch`, its classes must be equal in size and
///   every layer copies it.
pub fn product_nbc(
    kind: ProductKind,
    g: &Graph,
    cg: Option<&Coloring>,
    h: &Graph,
    ch: Option<&Coloring>,
) -> Result<ColoredGraph> {
    if let Some(c) = cg {
        require_balanced(g, c, "G")?;
    }
    if let Some(c) = ch {
        require_balanced(h, c, "H")?;
    }
    if let (Some(a), Some(b)) = (cg, ch) {
        if a.k() != b.k() {
            return Err(Error::ColorCountMismatch(a.k(), b.k()));
        }
    }
    let (graph, idx) = product(kind, g, h)?;
    let n = graph.order();
    let coloring = match kind {
        ProductKind::Cartesian | ProductKind::Strong => {
            let (cg, ch) = match (cg, ch) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(missing("cartesian and strong products need colorings of both factors")),
            };
            let k = ch.k();
            let anchor = ch.color(0);
            let colors = (0..n)
                .map(|i| {
                    let (u, v) = idx.pair(i);
                    let shift = (cg.color(u) + k - anchor) % k;
                    1 + (ch.color(v) - 1 + shift) % k
                })
                .collect();
            Coloring::new(k, colors)?
        }
        ProductKind::Direct => match (cg, ch) {
            (Some(cg), _) => Coloring::new(cg.k(), (0..n).map(|i| cg.color(idx.pair(i).0)).collect())?,
            (None, Some(ch)) => Coloring::new(ch.k(), (0..n).map(|i| ch.color(idx.pair(i).1)).collect())?,
            (None, None) => return Err(missing("direct product needs a coloring of at least one factor")),
        },
        ProductKind::Lexicographic => match (cg, ch) {
            (Some(cg), Some(ch)) => {
                let k = ch.k();
                let shifts: Vec<Coloring> = (0..k).map(|s| cyclic_shift(ch, s)).collect();
                Coloring::new(
                    k,
                    (0..n)
                        .map(|i| {
                            let (u, v) = idx.pair(i);
                            shifts[cg.color(u) - 1].color(v)
                        })
                        .collect(),
                )?
            }
            (None, Some(ch)) => {
                if !ch.has_equal_classes() {
                    return Err(Refusal::new(
                        Rule::Hypothesis,
                        format!("H color classes {:?} are not of equal size", ch.class_sizes()),
                    )
                    .into());
                }
                Coloring::new(ch.k(), (0..n).map(|i| ch.color(idx.pair(i).1)).collect())?
            }
            _ => return Err(missing("lexicographic product needs a coloring of H")),
        },
    };
    self_verify(graph, coloring)
}

/// `G + H` colored by `cg ∪ ch`. Both colorings must be balanced with all
/// `k` classes of equal size.
pub fn join_nbc(g: &Graph, cg: &Coloring, h: &Graph, ch: &Coloring) -> Result<ColoredGraph> {
    require_balanced(g, cg, "G")?;
    require_balanced(h, ch, "H")?;
    if cg.k() != ch.k() {
        return Err(Error::ColorCountMismatch(cg.k(), ch.k()));
    }
    let mut reasons = Vec::new();
    for (name, c) in [("G", cg), ("H", ch)] {
        if !c.has_equal_classes() {
            reasons.push(format!("{name} color classes {:?} are not of equal size", c.class_sizes()));
        }
    }
    if !reasons.is_empty() {
        return Err(Refusal::with_reasons(Rule::Hypothesis, reasons).into());
    }
    let off = g.order();
    let mut pairs: Vec<(usize, usize)> = g.edges().to_vec();
    pairs.extend(h.edges().iter().map(|&(u, v)| (u + off, v + off)));
    for u in 0..off {
        pairs.extend((0..h.order()).map(|v| (u, v + off)));
    }
    let graph = Graph::from_edges(off + h.order(), pairs)?;
    let colors = cg.colors().iter().chain(ch.colors()).copied().collect();
    self_verify(graph, Coloring::new(cg.k(), colors)?)
}

/// A balanced host graph containing the input as an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub host: ColoredGraph,
    /// `map[i]` is the host vertex playing `v_i`.
    pub map: Vec<usize>,
}

/// `k` copies `v_i^1..v_i^k` of every vertex (host index `(j-1)n + i`), with
/// `v_i^p ~ v_j^q` for every edge `v_i v_j` and every `p, q`. Copy `j` is
/// colored `j`, and copy 1 induces `g`.
pub fn embed_in_nbkc(g: &Graph, k: usize) -> Result<Embedding> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    let n = g.order();
    let mut pairs = Vec::with_capacity(g.size() * k * k);
    for &(a, b) in g.edges() {
        for p in 0..k {
            for q in 0..k {
                pairs.push((p * n + a, q * n + b));
            }
        }
    }
    let graph = Graph::from_edges(k * n, pairs)?;
    let colors = (0..k * n).map(|x| 1 + x / n.max(1)).collect();
    let host = self_verify(graph, Coloring::new(k, colors)?)?;
    let map: Vec<usize> = (0..n).collect();
    let induced = host.graph.induced_subgraph(&map.iter().copied().collect())?;
    if induced.graph != *g {
        return Err(Error::Invariant("first copy does not induce the input graph".into()));
    }
    Ok(Embedding { host, map })
}

/// Adds `w, a_1, b_1, .., a_{k-1}, b_{k-1}`: `w` joined to every `u_i` and
/// `v_i` and colored `k`, `a_i` joined to all `u`, `b_i` joined to all `v`,
/// both colored `i`. New vertices are numbered `n` (`w`), then the `a_i`,
/// then the `b_i`.
///
/// `us` and `vs` must be disjoint, `us` must be a rainbow, and `u_i` must
/// share its color with `v_i`.
pub fn vertex_addition(g: &Graph, c: &Coloring, us: &[usize], vs: &[usize]) -> Result<ColoredGraph> {
    let k = c.k();
    let n = g.order();
    if us.len() != k || vs.len() != k {
        return Err(Error::InvalidArgument(format!("need exactly {k} u and {k} v vertices")));
    }
    for &x in us.iter().chain(vs) {
        g.check_vertex(x)?;
    }
    let mut seen = vec![false; n];
    for &x in us.iter().chain(vs) {
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidArgument(format!("vertex {x} chosen twice")));
        }
    }
    if !is_nbkc(g, c)?.balanced {
        return Err(Error::NotBalanced);
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::InvalidArgument(format!("vertex {v} is isolated")));
    }
    let mut reasons: Vec<String> = (0..k)
        .filter(|&i| c.color(us[i]) != c.color(vs[i]))
        .map(|i| format!("u_{} has color {} but v_{} has color {}", i + 1, c.color(us[i]), i + 1, c.color(vs[i])))
        .collect();
    if !c.is_rainbow(us) {
        reasons.push("u vertices are not a rainbow".into());
    }
    if !reasons.is_empty() {
        return Err(Refusal::with_reasons(Rule::Hypothesis, reasons).into());
    }

    let w = n;
    let a = |i: usize| n + i;
    let b = |i: usize| n + k - 1 + i;
    let mut pairs: Vec<(usize, usize)> = g.edges().to_vec();
    for &x in us.iter().chain(vs) {
        pairs.push((w, x));
    }
    for i in 1..k {
        pairs.extend(us.iter().map(|&u| (a(i), u)));
        pairs.extend(vs.iter().map(|&v| (b(i), v)));
    }
    let graph = Graph::from_edges(n + 2 * k - 1, pairs)?;
    let mut colors = c.colors().to_vec();
    colors.push(k);
    colors.extend(1..k);
    colors.extend(1..k);
    self_verify(graph, Coloring::new(k, colors)?)
}

/// Applies [`vertex_addition`] `times` times, each time at the two
/// lowest-indexed vertices of every color, then renames colors so the class
/// that grows by one per step is color 1. The result has color 1 smaller
/// than every other class by `times` more than in the input.
pub fn unequal_classes(g: &Graph, c: &Coloring, times: usize) -> Result<ColoredGraph> {
    let k = c.k();
    let mut cur = ColoredGraph { graph: g.clone(), coloring: c.clone() };
    for _ in 0..times {
        let mut us = Vec::with_capacity(k);
        let mut vs = Vec::with_capacity(k);
        for color in 1..=k {
            let class = cur.coloring.class(color);
            if class.len() < 2 {
                return Err(Error::InvalidArgument(format!("color {color} has fewer than two vertices")));
            }
            us.push(class[0]);
            vs.push(class[1]);
        }
        cur = vertex_addition(&cur.graph, &cur.coloring, &us, &vs)?;
    }
    let coloring = cyclic_shift(&cur.coloring, 1);
    self_verify(cur.graph, coloring)
}
