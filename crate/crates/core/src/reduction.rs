//! Equal-sum subsets to balanced coloring: house gadgets, the instance
//! compiler, the decoder, a brute-force partition solver, and the older
//! pack gadget whose colorings do not yield partitions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::{is_nbkc, Coloring};

/// Split `T` into `k` parts of equal sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssInstance {
    pub elements: Vec<u64>,
    pub k: usize,
    pub sigma: Option<u64>,
}

impl EssInstance {
    pub fn new(elements: Vec<u64>, k: usize, sigma: Option<u64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidColorCount(k));
        }
        if elements.contains(&0) {
            return Err(Error::InvalidArgument("elements must be positive".into()));
        }
        if let Some(s) = sigma {
            if s.checked_mul(k as u64) != Some(elements.iter().sum()) {
                return Err(Error::InvalidArgument(format!("{k} * {s} differs from the element sum")));
            }
        }
        Ok(EssInstance { elements, k, sigma })
    }

    pub fn sum(&self) -> u64 {
        self.elements.iter().sum()
    }
}

/// The `(k, n)`-house on its own: bases `0..k-1`, then `kn` supports, then
/// `n` indices. Support `j` (counted from the first support) is joined to
/// index `j / k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HouseGadget {
    pub k: usize,
    pub n: usize,
    pub graph: Graph,
    pub bases: Vec<usize>,
    pub supports: Vec<usize>,
    pub indices: Vec<usize>,
}

fn house_edges(k: usize, n: usize, offset: usize) -> Vec<(usize, usize)> {
    let support = |j: usize| offset + k - 1 + j;
    let index = |i: usize| offset + k - 1 + k * n + i;
    let mut pairs = Vec::with_capacity(k * k * n);
    for b in 0..k - 1 {
        pairs.extend((0..k * n).map(|j| (offset + b, support(j))));
    }
    pairs.extend((0..k * n).map(|j| (support(j), index(j / k))));
    pairs
}

pub fn house(k: usize, n: usize) -> Result<HouseGadget> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("a house needs at least one index vertex".into()));
    }
    let order = (k + 1) * n + k - 1;
    let graph = Graph::from_edges(order, house_edges(k, n, 0))?;
    let gadget = HouseGadget {
        k,
        n,
        graph,
        bases: (0..k - 1).collect(),
        supports: (k - 1..k - 1 + k * n).collect(),
        indices: (k - 1 + k * n..order).collect(),
    };
    if !is_nbkc(&gadget.graph, &gadget.proof_coloring())?.balanced {
        return Err(Error::Invariant(format!("({k},{n})-house coloring is unbalanced")));
    }
    Ok(gadget)
}

impl HouseGadget {
    /// Bases `1..k-1`, indices `k`, and the `k` supports of each index one
    /// of each color.
    pub fn proof_coloring(&self) -> Coloring {
        let k = self.k;
        let mut colors = vec![0; self.graph.order()];
        for (i, &b) in self.bases.iter().enumerate() {
            colors[b] = i + 1;
        }
        for (j, &s) in self.supports.iter().enumerate() {
            colors[s] = j % k + 1;
        }
        for &x in &self.indices {
            colors[x] = k;
        }
        Coloring::new(k, colors).expect("colors within 1..=k")
    }
}

/// The common color of a set of index vertices; an error means the
/// coloring contradicts the monochromatic-index property.
pub fn index_monochromatic(indices: &[usize], c: &Coloring) -> Result<usize> {
    let first = *indices.first().ok_or_else(|| Error::InvalidArgument("no index vertices".into()))?;
    let color = c.color(first);
    if let Some(&x) = indices.iter().find(|&&x| c.color(x) != color) {
        return Err(Error::Invariant(format!(
            "index vertices {first} and {x} have colors {color} and {}",
            c.color(x)
        )));
    }
    Ok(color)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Base,
    Support,
    Index,
    Distributive,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Base => "base",
            Role::Support => "support",
            Role::Index => "index",
            Role::Distributive => "distributive",
        }
    }
}

impl std::str::FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "base" => Ok(Role::Base),
            "support" => Ok(Role::Support),
            "index" => Ok(Role::Index),
            "distributive" => Ok(Role::Distributive),
            other => Err(Error::InvalidArgument(format!("unknown role `{other}`"))),
        }
    }
}

/// A house inside a reduced instance, by global vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HousePlacement {
    pub element: u64,
    pub bases: Vec<usize>,
    pub supports: Vec<usize>,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub k: usize,
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// One house per element, in the order of `T`.
    pub houses: Vec<HousePlacement>,
    pub distributive: Vec<usize>,
}

impl ReductionInstance {
    /// Element of the house containing `v`, if any.
    pub fn element_of(&self, v: usize) -> Option<u64> {
        self.houses
            .iter()
            .find(|h| h.bases.contains(&v) || h.supports.contains(&v) || h.indices.contains(&v))
            .map(|h| h.element)
    }

    /// Rebuilds the house structure from a graph and its role labels. Houses
    /// are the components left after deleting the distributive vertices,
    /// ordered by smallest vertex.
    pub fn from_roles(graph: Graph, roles: Vec<Role>) -> Result<Self> {
        if roles.len() != graph.order() {
            return Err(Error::ColoringLength { expected: graph.order(), got: roles.len() });
        }
        let distributive: Vec<usize> = (0..graph.order()).filter(|&v| roles[v] == Role::Distributive).collect();
        let k = distributive.len();
        if k < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 distributive vertices, found {k}")));
        }
        let rest = graph.induced_subgraph(&(0..graph.order()).filter(|&v| roles[v] != Role::Distributive).collect())?;
        let mut houses = Vec::new();
        for comp in rest.graph.components() {
            let mut h = HousePlacement { element: 0, bases: Vec::new(), supports: Vec::new(), indices: Vec::new() };
            for v in comp.into_iter().map(|i| rest.origin[i]) {
                match roles[v] {
                    Role::Base => h.bases.push(v),
                    Role::Support => h.supports.push(v),
                    Role::Index => h.indices.push(v),
                    Role::Distributive => unreachable!("distributive vertices removed"),
                }
            }
            h.element = h.indices.len() as u64;
            let n = h.indices.len();
            if n == 0 || h.bases.len() != k - 1 || h.supports.len() != k * n {
                return Err(Error::InvalidArgument(format!(
                    "component with {} bases, {} supports, {} indices is not a ({k},{n})-house",
                    h.bases.len(),
                    h.supports.len(),
                    n
                )));
            }
            houses.push(h);
        }
        let inst = ReductionInstance { k, graph, roles, houses, distributive };
        inst.check_shape()?;
        Ok(inst)
    }

    fn check_shape(&self) -> Result<()> {
        let g = &self.graph;
        for h in &self.houses {
            for &x in &h.indices {
                if !self.distributive.iter().all(|&d| g.has_edge(x, d)) {
                    return Err(Error::InvalidArgument(format!("index vertex {x} misses a distributive vertex")));
                }
            }
            for &s in &h.supports {
                if g.degree(s) != self.k {
                    return Err(Error::InvalidArgument(format!("support vertex {s} does not have degree {}", self.k)));
                }
            }
        }
        for &d in &self.distributive {
            if g.adj(d).iter().any(|&u| self.roles[u] != Role::Index) {
                return Err(Error::InvalidArgument(format!("distributive vertex {d} has a non-index neighbor")));
            }
        }
        Ok(())
    }
}

/// One `(k, a)`-house per element `a` (laid out in order), then `k`
/// pairwise nonadjacent distributive vertices joined to every index vertex.
pub fn reduce_ess_to_nbc(inst: &EssInstance) -> Result<ReductionInstance> {
    let k = inst.k;
    if inst.elements.is_empty() {
        return Err(Error::InvalidArgument("empty multiset".into()));
    }
    let mut pairs = Vec::new();
    let mut roles = Vec::new();
    let mut houses = Vec::new();
    for &a in &inst.elements {
        let n = usize::try_from(a).map_err(|_| Error::TooLarge(format!("element {a}")))?;
        let off = roles.len();
        pairs.extend(house_edges(k, n, off));
        roles.extend(std::iter::repeat(Role::Base).take(k - 1));
        roles.extend(std::iter::repeat(Role::Support).take(k * n));
        roles.extend(std::iter::repeat(Role::Index).take(n));
        let sup = off + k - 1;
        let idx = sup + k * n;
        houses.push(HousePlacement {
            element: a,
            bases: (off..sup).collect(),
            supports: (sup..idx).collect(),
            indices: (idx..idx + n).collect(),
        });
    }
    let first_d = roles.len();
    let distributive: Vec<usize> = (first_d..first_d + k).collect();
    roles.extend(std::iter::repeat(Role::Distributive).take(k));
    for h in &houses {
        for &x in &h.indices {
            pairs.extend(distributive.iter().map(|&d| (x, d)));
        }
    }
    let graph = Graph::from_edges(roles.len(), pairs)?;
    Ok(ReductionInstance { k, graph, roles, houses, distributive })
}

/// `k` subsets of `T` with their sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub parts: Vec<Vec<u64>>,
    pub sums: Vec<u64>,
}

impl Partition {
    fn from_assignment(k: usize, elements: &[u64], part_of: &[usize]) -> Partition {
        let mut parts = vec![Vec::new(); k];
        for (&a, &p) in elements.iter().zip(part_of) {
            parts[p].push(a);
        }
        let sums = parts.iter().map(|p| p.iter().sum()).collect();
        Partition { parts, sums }
    }

    pub fn is_equal_sum(&self) -> bool {
        self.sums.windows(2).all(|w| w[0] == w[1])
    }

    /// Parts sorted internally and among themselves, for comparisons that
    /// ignore labels.
    pub fn normalized(&self) -> Vec<Vec<u64>> {
        let mut parts: Vec<Vec<u64>> = self
            .parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                p
            })
            .collect();
        parts.sort();
        parts
    }
}

/// Element `a` goes to part `i` when its house's index vertices have color
/// `i`.
pub fn decode(rinst: &ReductionInstance, c: &Coloring) -> Result<Partition> {
    if c.k() != rinst.k {
        return Err(Error::ColorCountMismatch(c.k(), rinst.k));
    }
    if !is_nbkc(&rinst.graph, c)?.balanced {
        return Err(Error::NotBalanced);
    }
    let elements: Vec<u64> = rinst.houses.iter().map(|h| h.element).collect();
    let part_of = rinst
        .houses
        .iter()
        .map(|h| index_monochromatic(&h.indices, c).map(|col| col - 1))
        .collect::<Result<Vec<_>>>()?;
    let partition = Partition::from_assignment(rinst.k, &elements, &part_of);
    if !partition.is_equal_sum() {
        return Err(Error::Invariant(format!("decoded sums {:?} differ", partition.sums)));
    }
    Ok(partition)
}

/// Largest `k^|T|` [`ess_brute_force`] accepts.
pub const ESS_CAP: u64 = 531_441;

/// Exhaustive search over assignments of elements to parts, trying a new
/// part only after all earlier parts are in use.
pub fn ess_brute_force(inst: &EssInstance) -> Result<Option<Partition>> {
    let (k, t) = (inst.k, &inst.elements);
    let within = u32::try_from(t.len())
        .ok()
        .and_then(|n| (k as u64).checked_pow(n))
        .is_some_and(|x| x <= ESS_CAP);
    if !within {
        return Err(Error::TooLarge(format!("{k}^{} assignments exceed {ESS_CAP}", t.len())));
    }
    let total = inst.sum();
    if total % k as u64 != 0 {
        return Ok(None);
    }
    let sigma = total / k as u64;

    fn go(i: usize, t: &[u64], sigma: u64, sums: &mut [u64], part_of: &mut [usize], opened: usize) -> bool {
        if i == t.len() {
            return sums.iter().all(|&s| s == sigma);
        }
        for p in 0..sums.len().min(opened + 1) {
            if sums[p] + t[i] > sigma {
                continue;
            }
            sums[p] += t[i];
            part_of[i] = p;
            if go(i + 1, t, sigma, sums, part_of, opened.max(p + 1)) {
                return true;
            }
            sums[p] -= t[i];
        }
        false
    }

    let mut sums = vec![0; k];
    let mut part_of = vec![0; t.len()];
    Ok(go(0, t, sigma, &mut sums, &mut part_of, 0).then(|| Partition::from_assignment(k, t, &part_of)))
}

/// One pack of the older gadget: a base joined to `2a` supports, and `a`
/// numeric vertices each joined to two supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pack {
    pub element: u64,
    pub base: usize,
    pub supports: Vec<usize>,
    pub numerics: Vec<usize>,
}

/// `K_{2,2}` on `A = {v1, v2}` (vertices 0, 1) and `B = {u1, u2}`
/// (vertices 2, 3), then one pack per element with every numeric vertex
/// joined to both vertices of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlawedGadget {
    pub graph: Graph,
    pub a: [usize; 2],
    pub b: [usize; 2],
    pub packs: Vec<Pack>,
}

pub fn flawed_gadget(s: &[u64]) -> Result<FlawedGadget> {
    if s.is_empty() || s.contains(&0) {
        return Err(Error::InvalidArgument("need a nonempty multiset of positive integers".into()));
    }
    let (a, b) = ([0, 1], [2, 3]);
    let mut pairs = vec![(0, 2), (0, 3), (1, 2), (1, 3)];
    let mut packs = Vec::new();
    let mut next = 4;
    for &e in s {
        let n = usize::try_from(e).map_err(|_| Error::TooLarge(format!("element {e}")))?;
        let base = next;
        let supports: Vec<usize> = (base + 1..base + 1 + 2 * n).collect();
        let numerics: Vec<usize> = (base + 1 + 2 * n..base + 1 + 3 * n).collect();
        next = base + 1 + 3 * n;
        pairs.extend(supports.iter().map(|&x| (base, x)));
        for (j, &x) in numerics.iter().enumerate() {
            pairs.push((x, supports[2 * j]));
            pairs.push((x, supports[2 * j + 1]));
            pairs.extend(a.iter().map(|&v| (x, v)));
        }
        packs.push(Pack { element: e, base, supports, numerics });
    }
    Ok(FlawedGadget { graph: Graph::from_edges(next, pairs)?, a, b, packs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn house_counts() {
        let h = house(3, 4).unwrap();
        assert_eq!((h.graph.order(), h.graph.size()), (18, 36));
        let h = house(2, 1).unwrap();
        assert_eq!((h.graph.order(), h.graph.size()), (4, 4));
        assert!(house(1, 3).is_err());
        assert!(house(3, 0).is_err());
    }

    #[test]
    fn house_shape() {
        for k in 2..=5 {
            for n in 1..=6 {
                let h = house(k, n).unwrap();
                assert_eq!(h.graph.order(), (k + 1) * n + k - 1);
                assert_eq!(h.graph.size(), k * k * n);
                for &b in &h.bases {
                    assert!(h.supports.iter().all(|&s| h.graph.has_edge(b, s)));
                }
                for &x in &h.indices {
                    assert_eq!(h.graph.degree(x), k);
                }
                for &s in &h.supports {
                    assert_eq!(h.graph.adj(s).iter().filter(|u| h.indices.contains(u)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn proof_coloring_index_color() {
        let h = house(3, 4).unwrap();
        let c = h.proof_coloring();
        assert_eq!(index_monochromatic(&h.indices, &c).unwrap(), 3);
        let mut colors = c.into_colors();
        colors[h.indices[1]] = 1;
        let bad = Coloring::new(3, colors).unwrap();
        assert!(matches!(index_monochromatic(&h.indices, &bad), Err(Error::Invariant(_))));
    }

    #[test]
    fn reduction_sizes() {
        let inst = EssInstance::new(vec![1, 2, 2, 3, 4], 3, None).unwrap();
        let r = reduce_ess_to_nbc(&inst).unwrap();
        assert_eq!(r.graph.order(), 61);
        assert_eq!(r.houses.len(), 5);
        assert_eq!(r.distributive.len(), 3);
        assert!(r.graph.is_independent(&r.distributive.iter().copied().collect()));
        assert!(reduce_ess_to_nbc(&EssInstance::new(vec![], 2, None).unwrap()).is_err());
    }

    #[test]
    fn roles_round_trip() {
        let inst = EssInstance::new(vec![3, 1, 2], 2, None).unwrap();
        let r = reduce_ess_to_nbc(&inst).unwrap();
        let back = ReductionInstance::from_roles(r.graph.clone(), r.roles.clone()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.element_of(0), Some(3));
        assert_eq!(r.element_of(r.distributive[0]), None);
    }

    #[test]
    fn ess_examples() {
        let p = ess_brute_force(&EssInstance::new(vec![1, 2, 2, 3, 4], 3, None).unwrap()).unwrap().unwrap();
        assert_eq!(p.sums, vec![4, 4, 4]);
        let paper = Partition::from_assignment(3, &[4, 3, 1, 2, 2], &[0, 1, 1, 2, 2]);
        assert!(paper.is_equal_sum());
        assert!(ess_brute_force(&EssInstance::new(vec![1, 1, 3], 2, None).unwrap()).unwrap().is_none());
        let p = ess_brute_force(&EssInstance::new(vec![4, 3, 1], 2, None).unwrap()).unwrap().unwrap();
        assert_eq!(p.normalized(), vec![vec![1, 3], vec![4]]);
        assert!(ess_brute_force(&EssInstance::new(vec![1; 13], 3, None).unwrap()).is_err());
    }

    #[test]
    fn sigma_checked() {
        assert!(EssInstance::new(vec![2, 2], 2, Some(2)).is_ok());
        assert!(EssInstance::new(vec![2, 2], 2, Some(3)).is_err());
        assert!(EssInstance::new(vec![2, 0], 2, None).is_err());
    }

    #[test]
    fn decode_rejects_unbalanced() {
        let r = reduce_ess_to_nbc(&EssInstance::new(vec![2, 2], 2, None).unwrap()).unwrap();
        let c = Coloring::new(2, vec![1; r.graph.order()]).unwrap();
        assert!(matches!(decode(&r, &c), Err(Error::NotBalanced)));
    }

    #[test]
    fn flawed_gadget_shape() {
        let f = flawed_gadget(&[4, 3, 1]).unwrap();
        assert_eq!(f.graph.order(), 4 + 13 + 10 + 4);
        let three = &f.packs[1];
        assert_eq!((three.supports.len(), three.numerics.len()), (6, 3));
        for p in &f.packs {
            for &x in &p.numerics {
                assert_eq!(f.graph.degree(x), 4);
            }
        }
        assert_eq!(f.graph.degree(f.a[0]), 2 + 8);
    }
}
