//! Balance checking, diagnostic counts and necessary conditions.
//!
//! A coloring is neighborhood-balanced when every open neighborhood contains
//! each of the `k` colors equally often. [`is_nbkc`] decides that from exact
//! counts; the signed weight is reported alongside as a diagnostic only,
//! because a zero weight does not imply balance once `k >= 3`.

use serde::Serialize;

use crate::error::{Error, Result, Rule};
use crate::graph::{Graph, VertexSet};

/// A total map from vertices to colors `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    k: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<usize>) -> Result<Coloring> {
        if k < 2 {
            return Err(Error::InvalidColorCount(k));
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(Error::ColorOutOfRange { vertex, color, k });
        }
        Ok(Coloring { k, colors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color of `v`, in `1..=k`.
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<usize> {
        self.colors
    }

    /// `|V_1|, .., |V_k|`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.colors {
            sizes[c - 1] += 1;
        }
        sizes
    }

    pub fn has_equal_classes(&self) -> bool {
        let sizes = self.class_sizes();
        sizes.iter().all(|&s| s == sizes[0])
    }

    /// Vertices carrying color `c`.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.colors[v] == c).collect()
    }

    /// Applies `f` to every color; `f` must map `1..=k` into `1..=k'`.
    pub fn map_colors(&self, k: usize, f: impl Fn(usize) -> usize) -> Result<Coloring> {
        Coloring::new(k, self.colors.iter().map(|&c| f(c)).collect())
    }

    /// True if `set` contains every color the same number of times.
    pub fn is_equally_colored(&self, set: &[usize]) -> bool {
        let counts = self.histogram(set);
        counts.iter().all(|&c| c == counts[0])
    }

    /// True if `set` contains every color exactly once.
    pub fn is_rainbow(&self, set: &[usize]) -> bool {
        set.len() == self.k && self.is_equally_colored(set)
    }

    fn histogram(&self, set: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; self.k];
        for &v in set {
            counts[self.colors[v] - 1] += 1;
        }
        counts
    }

    fn check_total(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.order() {
            return Err(Error::ColoringLength { expected: g.order(), got: self.colors.len() });
        }
        Ok(())
    }
}

/// A graph paired with a coloring of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub coloring: Coloring,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: usize,
    /// Neighbor counts per color, index `i` holding color `i + 1`.
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub k: usize,
    pub balanced: bool,
    pub violations: Vec<Violation>,
    pub class_sizes: Vec<usize>,
    /// Colors with no vertex. Any vertex of positive degree is then
    /// necessarily unbalanced.
    pub empty_classes: Vec<usize>,
    /// Symmetric `k x k` matrix: off-diagonal `|E[V_i, V_j]|`, diagonal
    /// `|E[V_i]|`.
    pub edge_class_counts: Vec<Vec<usize>>,
    pub weights: Vec<i64>,
}

impl BalanceReport {
    /// Sum of the upper triangle including the diagonal; equals `|E|`.
    pub fn edge_total(&self) -> usize {
        (0..self.k).map(|i| (i..self.k).map(|j| self.edge_class_counts[i][j]).sum::<usize>()).sum()
    }
}

/// The signed value of color `color` used by [`weight`].
///
/// Odd `k = 2t+1` maps colors `1..=k` onto `-t..=t` in order; even `k = 2t`
/// maps `1..=t` onto `-t..=-1` and `t+1..=2t` onto `1..=t`.
pub fn signed_value(k: usize, color: usize) -> i64 {
    let t = (k / 2) as i64;
    let c = color as i64;
    if k % 2 == 1 || c <= t {
        c - 1 - t
    } else {
        c - t
    }
}

/// Inverse of [`signed_value`].
pub fn color_of_signed(k: usize, value: i64) -> usize {
    let t = (k / 2) as i64;
    let c = if k % 2 == 1 || value < 0 { value + 1 + t } else { value + t };
    c as usize
}

/// Signed neighbor sum `w(v)`.
pub fn weight(g: &Graph, c: &Coloring, v: usize) -> Result<i64> {
    c.check_total(g)?;
    g.check_vertex(v)?;
    Ok(g.adj(v).iter().map(|&u| signed_value(c.k(), c.color(u))).sum())
}

fn report(g: &Graph, c: &Coloring, closed: bool) -> Result<BalanceReport> {
    c.check_total(g)?;
    let k = c.k();
    let mut violations = Vec::new();
    for v in 0..g.order() {
        let mut counts = vec![0usize; k];
        for &u in g.adj(v) {
            counts[c.color(u) - 1] += 1;
        }
        if closed {
            counts[c.color(v) - 1] += 1;
        }
        if counts.iter().any(|&x| x != counts[0]) {
            violations.push(Violation { vertex: v, counts });
        }
    }
    let mut edge_class_counts = vec![vec![0usize; k]; k];
    for &(u, v) in g.edges() {
        let (a, b) = (c.color(u) - 1, c.color(v) - 1);
        edge_class_counts[a][b] += 1;
        if a != b {
            edge_class_counts[b][a] += 1;
        }
    }
    let class_sizes = c.class_sizes();
    let empty_classes = (1..=k).filter(|&i| class_sizes[i - 1] == 0).collect();
    let weights = (0..g.order())
        .map(|v| g.adj(v).iter().map(|&u| signed_value(k, c.color(u))).sum())
        .collect();
    Ok(BalanceReport {
        k,
        balanced: violations.is_empty(),
        violations,
        class_sizes,
        empty_classes,
        edge_class_counts,
        weights,
    })
}

/// Checks that every open neighborhood `N(v)` is equally colored.
pub fn is_nbkc(g: &Graph, c: &Coloring) -> Result<BalanceReport> {
    report(g, c, false)
}

/// Checks that every closed neighborhood `N[v]` is equally colored.
pub fn is_closed_nbkc(g: &Graph, c: &Coloring) -> Result<BalanceReport> {
    report(g, c, true)
}

/// Shorthand for `is_nbkc(..).balanced`, treating malformed input as false.
pub fn is_balanced(g: &Graph, c: &Coloring) -> bool {
    is_nbkc(g, c).map(|r| r.balanced).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// No implemented necessary condition failed. This does not mean a
    /// coloring exists.
    PossiblyColorable,
    ProvablyUncolorable { rule: Rule },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegularityCheck {
    pub degree: usize,
    pub order_residue: usize,
    pub size_residue: usize,
}

impl RegularityCheck {
    pub fn ok(&self) -> bool {
        self.order_residue == 0 && self.size_residue == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessityReport {
    pub k: usize,
    pub degree_ok: bool,
    pub first_bad_vertex: Option<usize>,
    /// `None` when the graph has an isolated vertex and the bound does not apply.
    pub order_ok: Option<bool>,
    /// Present for regular graphs of positive degree: `|V| mod k` and `|E| mod k^2`.
    pub regularity: Option<RegularityCheck>,
    pub verdict: Verdict,
}

impl NecessityReport {
    pub fn is_uncolorable(&self) -> bool {
        matches!(self.verdict, Verdict::ProvablyUncolorable { .. })
    }

    pub fn failed_rule(&self) -> Option<Rule> {
        match self.verdict {
            Verdict::ProvablyUncolorable { rule } => Some(rule),
            Verdict::PossiblyColorable => None,
        }
    }
}

/// Applies the implemented necessary conditions in order: degree
/// divisibility, the `2k` order bound (only without isolated vertices), and
/// for regular graphs of positive degree the order and size congruences.
///
/// Sound but incomplete: a `PossiblyColorable` verdict proves nothing.
pub fn check_necessary(g: &Graph, k: usize) -> Result<NecessityReport> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    let first_bad_vertex = (0..g.order()).find(|&v| g.degree(v) % k != 0);
    let degree_ok = first_bad_vertex.is_none();
    let order_ok = (!g.has_isolated_vertex()).then(|| g.order() >= 2 * k);
    let regularity = g.regular_degree().filter(|&r| r > 0).map(|r| RegularityCheck {
        degree: r,
        order_residue: g.order() % k,
        size_residue: g.size() % (k * k),
    });
    let rule = if !degree_ok {
        Some(Rule::DegreeDivisibility)
    } else if order_ok == Some(false) {
        Some(Rule::OrderBound)
    } else if let Some(reg) = regularity.filter(|r| !r.ok()) {
        Some(if reg.order_residue != 0 { Rule::RegularOrder } else { Rule::RegularSize })
    } else {
        None
    };
    let verdict = match rule {
        Some(rule) => Verdict::ProvablyUncolorable { rule },
        None => Verdict::PossiblyColorable,
    };
    Ok(NecessityReport { k, degree_ok, first_bad_vertex, order_ok, regularity, verdict })
}

/// Merges colors modulo `p`: color `i` becomes `1 + (i - 1) mod p`.
/// Balance is preserved whenever `p | k`.
pub fn divisor_recolor(c: &Coloring, p: usize) -> Result<Coloring> {
    if p < 2 {
        return Err(Error::InvalidColorCount(p));
    }
    if c.k() % p != 0 {
        return Err(Error::NotDivisor { p, k: c.k() });
    }
    c.map_colors(p, |i| 1 + (i - 1) % p)
}

/// Rotates colors: `j` becomes `1 + (j - 1 + shift) mod k`.
pub fn cyclic_shift(c: &Coloring, shift: usize) -> Coloring {
    let k = c.k();
    c.map_colors(k, |j| 1 + (j - 1 + shift) % k).expect("rotation stays in range")
}

/// Renames colors by a permutation given as `perm[i - 1] = new name of i`.
pub fn permute_colors(c: &Coloring, perm: &[usize]) -> Result<Coloring> {
    if perm.len() != c.k() {
        return Err(Error::InvalidArgument(format!("permutation of length {} for k = {}", perm.len(), c.k())));
    }
    let mut seen = vec![false; c.k()];
    for &p in perm {
        if p == 0 || p > c.k() || seen[p - 1] {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of 1..={}", c.k())));
        }
        seen[p - 1] = true;
    }
    c.map_colors(c.k(), |i| perm[i - 1])
}

/// Neighbors of `v` as a [`VertexSet`] together with how many carry each color.
pub fn neighbor_color_counts(g: &Graph, c: &Coloring, v: usize) -> Result<(VertexSet, Vec<usize>)> {
    let nbrs = g.neighbors(v)?;
    let counts = c.histogram(&nbrs.to_vec());
    Ok((nbrs, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c8_blocks() -> Coloring {
        Coloring::new(2, vec![1, 1, 2, 2, 1, 1, 2, 2]).unwrap()
    }

    /// Independent oracle: balance straight from the definition, over all
    /// ordered color pairs.
    fn balanced_by_definition(g: &Graph, colors: &[usize], k: usize) -> bool {
        (0..g.order()).all(|v| {
            (1..=k).all(|i| {
                (1..=k).all(|j| {
                    let ni = g.adj(v).iter().filter(|&&u| colors[u] == i).count();
                    let nj = g.adj(v).iter().filter(|&&u| colors[u] == j).count();
                    ni == nj
                })
            })
        })
    }

    #[test]
    fn c8_block_pattern_balanced() {
        let g = Graph::cycle(8).unwrap();
        let r = is_nbkc(&g, &c8_blocks()).unwrap();
        assert!(r.balanced);
        assert!(balanced_by_definition(&g, c8_blocks().colors(), 2));
        assert_eq!(r.edge_total(), 8);
        assert_eq!(r.edge_class_counts, vec![vec![2, 4], vec![4, 2]]);
    }

    #[test]
    fn edgeless_vacuous() {
        let g = Graph::empty(4);
        let c = Coloring::new(2, vec![1, 1, 1, 2]).unwrap();
        assert!(is_nbkc(&g, &c).unwrap().balanced);
    }

    #[test]
    fn c5_no_balanced_2_coloring() {
        let g = Graph::cycle(5).unwrap();
        for mask in 0u32..32 {
            let colors: Vec<usize> = (0..5).map(|i| 1 + ((mask >> i) & 1) as usize).collect();
            assert!(!balanced_by_definition(&g, &colors, 2));
            let c = Coloring::new(2, colors).unwrap();
            assert!(!is_nbkc(&g, &c).unwrap().balanced);
        }
    }

    #[test]
    fn closed_neighborhood_examples() {
        let k2 = Graph::complete(2);
        assert!(is_closed_nbkc(&k2, &Coloring::new(2, vec![1, 2]).unwrap()).unwrap().balanced);
        let c8 = Graph::cycle(8).unwrap();
        assert!(!is_closed_nbkc(&c8, &c8_blocks()).unwrap().balanced);
        let k4 = Graph::complete(4);
        assert!(is_closed_nbkc(&k4, &Coloring::new(4, vec![1, 2, 3, 4]).unwrap()).unwrap().balanced);
    }

    #[test]
    fn malformed_colorings() {
        assert!(matches!(Coloring::new(2, vec![1, 3]), Err(Error::ColorOutOfRange { vertex: 1, color: 3, k: 2 })));
        assert!(matches!(Coloring::new(2, vec![0]), Err(Error::ColorOutOfRange { .. })));
        assert!(matches!(Coloring::new(1, vec![1]), Err(Error::InvalidColorCount(1))));
        let g = Graph::cycle(4).unwrap();
        let short = Coloring::new(2, vec![1, 2]).unwrap();
        assert!(matches!(is_nbkc(&g, &short), Err(Error::ColoringLength { expected: 4, got: 2 })));
    }

    #[test]
    fn unused_color_flagged() {
        let g = Graph::cycle(4).unwrap();
        let c = Coloring::new(3, vec![1, 2, 1, 2]).unwrap();
        let r = is_nbkc(&g, &c).unwrap();
        assert!(!r.balanced);
        assert_eq!(r.empty_classes, vec![3]);
    }

    #[test]
    fn signed_tables() {
        assert_eq!((1..=3).map(|c| signed_value(3, c)).collect::<Vec<_>>(), vec![-1, 0, 1]);
        assert_eq!((1..=4).map(|c| signed_value(4, c)).collect::<Vec<_>>(), vec![-2, -1, 1, 2]);
        assert_eq!((1..=2).map(|c| signed_value(2, c)).collect::<Vec<_>>(), vec![-1, 1]);
        for k in 2..9 {
            for c in 1..=k {
                assert_eq!(color_of_signed(k, signed_value(k, c)), c);
            }
        }
    }

    #[test]
    fn weight_examples() {
        let g = Graph::cycle(8).unwrap();
        for v in 0..8 {
            assert_eq!(weight(&g, &c8_blocks(), v).unwrap(), 0);
        }
        let p3 = Graph::path(3);
        let c = Coloring::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(weight(&p3, &c, 1).unwrap(), -2);
    }

    #[test]
    fn zero_weight_does_not_imply_balance() {
        // Star with three leaves all carrying the middle color of k = 3.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = Coloring::new(3, vec![1, 2, 2, 2]).unwrap();
        assert_eq!(weight(&g, &c, 0).unwrap(), 0);
        assert!(!is_nbkc(&g, &c).unwrap().balanced);
    }

    #[test]
    fn necessity_examples() {
        let r = check_necessary(&Graph::complete(4), 2).unwrap();
        assert_eq!(r.failed_rule(), Some(Rule::DegreeDivisibility));
        assert_eq!(r.first_bad_vertex, Some(0));

        let r = check_necessary(&Graph::petersen(), 3).unwrap();
        assert!(r.degree_ok);
        assert_eq!(r.order_ok, Some(true));
        assert_eq!(r.failed_rule(), Some(Rule::RegularOrder));

        // K_8 satisfies the regular order/size congruences but has odd degree.
        let r = check_necessary(&Graph::complete(8), 2).unwrap();
        assert!(r.regularity.unwrap().ok());
        assert_eq!(r.failed_rule(), Some(Rule::DegreeDivisibility));

        // K_{1,1,3}: every check passes, yet no balanced 2-coloring exists.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let r = check_necessary(&g, 2).unwrap();
        assert_eq!(r.verdict, Verdict::PossiblyColorable);
    }

    #[test]
    fn necessity_order_and_isolated() {
        // C_3 with k = 2: degrees even, but only 3 < 4 vertices.
        let r = check_necessary(&Graph::cycle(3).unwrap(), 2).unwrap();
        assert_eq!(r.failed_rule(), Some(Rule::OrderBound));
        // Isolated vertices switch the order bound off.
        let r = check_necessary(&Graph::empty(3), 2).unwrap();
        assert_eq!(r.order_ok, None);
        assert_eq!(r.regularity, None);
        assert_eq!(r.verdict, Verdict::PossiblyColorable);
        // C_6: regular size 6 is not a multiple of 4.
        let r = check_necessary(&Graph::cycle(6).unwrap(), 2).unwrap();
        assert_eq!(r.failed_rule(), Some(Rule::RegularSize));
    }

    #[test]
    fn divisor_and_shift() {
        let c = Coloring::new(4, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(divisor_recolor(&c, 2).unwrap().colors(), &[1, 2, 1, 2]);
        assert_eq!(divisor_recolor(&c, 4).unwrap(), c);
        assert!(matches!(divisor_recolor(&c, 3), Err(Error::NotDivisor { p: 3, k: 4 })));

        assert_eq!(cyclic_shift(&c8_blocks(), 0), c8_blocks());
        let shifted = cyclic_shift(&c8_blocks(), 1);
        assert_eq!(shifted.colors(), &[2, 2, 1, 1, 2, 2, 1, 1]);
        assert!(is_nbkc(&Graph::cycle(8).unwrap(), &shifted).unwrap().balanced);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(cyclic_shift(&cyclic_shift(&c, i), j), cyclic_shift(&c, (i + j) % 4));
            }
        }
    }

    #[test]
    fn equally_colored_sets() {
        let c = Coloring::new(3, vec![1, 2, 3, 1, 2, 3]).unwrap();
        assert!(c.is_rainbow(&[0, 1, 2]));
        assert!(!c.is_rainbow(&[0, 1, 3]));
        assert!(c.is_equally_colored(&[0, 1, 2, 3, 4, 5]));
    }
}
