//! Graph families with explicit balanced colorings, and the families that
//! provably admit none.
//!
//! Every generator checks its own output with [`is_nbkc`] before returning,
//! so a returned [`ColoredGraph`] is always balanced.

use crate::error::{Error, Refusal, Result, Rule};
use crate::graph::Graph;
use crate::verify::{check_necessary, color_of_signed, is_nbkc, Coloring, ColoredGraph};

/// Circulant graph parameters: vertex set `Z_n`, `i ~ i ± a` for every
/// connection value `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantSpec {
    n: usize,
    connections: Vec<usize>,
}

impl CirculantSpec {
    /// Requires `1 <= a_1 < a_2 < .. < a_s < n/2`.
    pub fn new(n: usize, connections: Vec<usize>) -> Result<CirculantSpec> {
        if connections.is_empty() {
            return Err(Error::InvalidArgument("circulant needs at least one connection value".into()));
        }
        if connections[0] == 0 {
            return Err(Error::InvalidArgument("connection values must be positive".into()));
        }
        if let Some(w) = connections.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "connection values must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let last = *connections.last().unwrap();
        if 2 * last >= n {
            return Err(Error::InvalidArgument(format!("largest connection value {last} is not below n/2 = {n}/2")));
        }
        Ok(CirculantSpec { n, connections })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn connections(&self) -> &[usize] {
        &self.connections
    }

    pub fn graph(&self) -> Graph {
        let n = self.n;
        let pairs = (0..n).flat_map(|i| self.connections.iter().map(move |&a| (i, (i + a) % n)));
        Graph::from_edges(n, pairs).expect("circulant edges are valid")
    }
}

/// Hamming graph `H(d, k)`: words of length `d` over `{1..k}`, adjacent when
/// they differ in exactly one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingSpec {
    pub d: usize,
    pub k: usize,
}

impl HammingSpec {
    pub fn new(d: usize, k: usize) -> Result<HammingSpec> {
        if d < 1 {
            return Err(Error::InvalidArgument("Hamming dimension must be at least 1".into()));
        }
        if k < 2 {
            return Err(Error::InvalidColorCount(k));
        }
        Ok(HammingSpec { d, k })
    }

    pub fn order(&self) -> usize {
        self.k.pow(self.d as u32)
    }

    /// Index of a word (entries in `1..=k`); the first coordinate is the
    /// most significant digit.
    pub fn index_of(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &a| acc * self.k + (a - 1))
    }

    pub fn word_of(&self, mut index: usize) -> Vec<usize> {
        let mut word = vec![0; self.d];
        for slot in word.iter_mut().rev() {
            *slot = index % self.k + 1;
            index /= self.k;
        }
        word
    }

    pub fn graph(&self) -> Graph {
        let (d, k) = (self.d, self.k);
        let mut pairs = Vec::new();
        for v in 0..self.order() {
            let mut place = 1;
            for _ in 0..d {
                let digit = (v / place) % k;
                for other in digit + 1..k {
                    pairs.push((v, v + (other - digit) * place));
                }
                place *= k;
            }
        }
        Graph::from_edges(self.order(), pairs).expect("hamming edges are valid")
    }
}

fn verified(graph: Graph, coloring: Coloring) -> Result<ColoredGraph> {
    let report = is_nbkc(&graph, &coloring)?;
    if !report.balanced {
        let first = &report.violations[0];
        return Err(Refusal::new(
            Rule::VerificationFailed,
            format!("vertex {} sees color counts {:?}", first.vertex, first.counts),
        )
        .into());
    }
    Ok(ColoredGraph { graph, coloring })
}

/// `K_{n_1,..,n_p}` with vertices numbered part by part.
pub fn complete_multipartite(part_sizes: &[usize]) -> Graph {
    let n: usize = part_sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in part_sizes.iter().enumerate() {
        part.extend(std::iter::repeat(i).take(s));
    }
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let pairs: Vec<_> = pairs.filter(|&(u, v)| part[u] != part[v]).collect();
    Graph::from_edges(n, pairs).expect("multipartite edges are valid")
}

/// Balanced `k`-coloring of `K_{n_1,..,n_p}`, which exists exactly when every
/// part size is a multiple of `k`.
pub fn complete_multipartite_nbc(part_sizes: &[usize], k: usize) -> Result<ColoredGraph> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    if part_sizes.len() < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 parts, got {}", part_sizes.len())));
    }
    if part_sizes.contains(&0) {
        return Err(Error::InvalidArgument("part sizes must be positive".into()));
    }
    let bad: Vec<String> = part_sizes
        .iter()
        .enumerate()
        .filter(|(_, &s)| s % k != 0)
        .map(|(i, &s)| format!("part {i} has size {s}, not a multiple of {k}"))
        .collect();
    if !bad.is_empty() {
        return Err(Refusal::with_reasons(Rule::PartSizeDivisibility, bad).into());
    }
    let colors = part_sizes.iter().flat_map(|&s| (0..s).map(move |j| 1 + j % k)).collect();
    verified(complete_multipartite(part_sizes), Coloring::new(k, colors)?)
}

/// `K_n` never admits a balanced coloring: degree `n-1` and order `n` cannot
/// both be multiples of `k`. Always returns the refusal.
pub fn complete_graph_nbc(n: usize, k: usize) -> Result<Refusal> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("complete graph needs n > 1, got {n}")));
    }
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    Ok(if (n - 1) % k != 0 {
        Refusal::new(Rule::DegreeDivisibility, format!("degree {} is not a multiple of {k}", n - 1))
    } else {
        Refusal::new(Rule::RegularOrder, format!("{}-regular graph of order {n}, not a multiple of {k}", n - 1))
    })
}

/// `C_m` colored `1,1,2,2,..` from vertex 0 when `m ≡ 0 (mod 4)`.
pub fn cycle_nbc(m: usize) -> Result<ColoredGraph> {
    let g = Graph::cycle(m)?;
    if m % 4 != 0 {
        let report = check_necessary(&g, 2)?;
        let rule = report.failed_rule().unwrap_or(Rule::Hypothesis);
        return Err(Refusal::new(rule, format!("C_{m} with m not divisible by 4")).into());
    }
    let colors = (0..m).map(|i| if i % 4 < 2 { 1 } else { 2 }).collect();
    verified(g, Coloring::new(2, colors)?)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Balanced `s`-coloring of a circulant with `s` connection values in
/// arithmetic progression modulo `s`: `a_{i+1} - a_i ≡ p (mod s)`,
/// `p ≢ 0`, and `s | n`.
///
/// The color of vertex `i` depends only on `i mod s`. For odd `s = 2t+1`
/// residue `0` gets signed value `0`, residue `2j` gets `j` and residue
/// `2j-1` gets `-j`. For even `s = 2t` residue `r` gets the signed value of
/// the block index `j` with `jp + 1 ≡ r`: `j/2 + 1` for even `j`,
/// `-(j+1)/2` for odd `j`.
///
/// The residue coloring needs `gcd(p, s) = 1`; otherwise the output fails
/// verification and the call refuses with a diagnostic.
pub fn circulant_arith_nbc(spec: &CirculantSpec) -> Result<ColoredGraph> {
    let conn = spec.connections();
    let s = conn.len();
    let n = spec.n();
    let mut reasons = Vec::new();
    if s < 2 {
        reasons.push(format!("need at least 2 connection values, got {s}"));
    }
    if s >= 2 && n % s != 0 {
        reasons.push(format!("n = {n} is not a multiple of s = {s}"));
    }
    let p = if s >= 2 { (conn[1] - conn[0]) % s } else { 0 };
    if s >= 2 {
        for (i, w) in conn.windows(2).enumerate() {
            let diff = (w[1] - w[0]) % s;
            if diff != p {
                reasons.push(format!("a_{} - a_{} ≡ {diff} (mod {s}), expected {p}", i + 2, i + 1));
            }
        }
        if p == 0 {
            reasons.push(format!("common difference is ≡ 0 (mod {s})"));
        }
    }
    if !reasons.is_empty() {
        return Err(Refusal::with_reasons(Rule::Hypothesis, reasons).into());
    }

    let mut residue_color = vec![0usize; s];
    if s % 2 == 1 {
        for (r, slot) in residue_color.iter_mut().enumerate() {
            let signed = if r == 0 {
                0
            } else if r % 2 == 0 {
                (r / 2) as i64
            } else {
                -(((r + 1) / 2) as i64)
            };
            *slot = color_of_signed(s, signed);
        }
    } else {
        for (r, slot) in residue_color.iter_mut().enumerate() {
            let Some(j) = (0..s).find(|&j| (j * p + 1) % s == r) else {
                return Err(Refusal::new(
                    Rule::VerificationFailed,
                    format!("residue {r} is not the start of any block (gcd(p, s) = {})", gcd(p, s)),
                )
                .into());
            };
            let signed = if j % 2 == 0 { (j / 2 + 1) as i64 } else { -(((j + 1) / 2) as i64) };
            *slot = color_of_signed(s, signed);
        }
    }
    let colors = (0..n).map(|i| residue_color[i % s]).collect();
    verified(spec.graph(), Coloring::new(s, colors)?).map_err(|e| match e {
        Error::Refused(mut r) => {
            r.reasons.push(format!("gcd(p, s) = gcd({p}, {s}) = {}", gcd(p, s)));
            Error::Refused(r)
        }
        other => other,
    })
}

/// Balanced `k`-coloring `c(i) = 1 + (i mod k)` of a circulant whose
/// connection values fall equally into every residue class mod `k`.
pub fn circulant_residue_nbc(spec: &CirculantSpec, k: usize) -> Result<ColoredGraph> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    let s = spec.connections().len();
    let n = spec.n();
    let mut reasons = Vec::new();
    if n % k != 0 {
        reasons.push(format!("n = {n} is not a multiple of {k}"));
    }
    if s % k != 0 {
        reasons.push(format!("s = {s} is not a multiple of {k}"));
    }
    let mut per_residue = vec![0usize; k];
    for &a in spec.connections() {
        per_residue[a % k] += 1;
    }
    for (r, &cnt) in per_residue.iter().enumerate() {
        if s % k == 0 && cnt != s / k {
            reasons.push(format!("{cnt} connection values ≡ {r} (mod {k}), expected {}", s / k));
        }
    }
    if !reasons.is_empty() {
        return Err(Refusal::with_reasons(Rule::Hypothesis, reasons).into());
    }
    let colors = (0..n).map(|i| 1 + i % k).collect();
    verified(spec.graph(), Coloring::new(k, colors)?)
}

fn shifted(block: &[usize], k: usize, shift: usize) -> impl Iterator<Item = usize> + '_ {
    block.iter().map(move |&c| 1 + (c - 1 + shift) % k)
}

/// The recursive Hamming coloring as a color array indexed by
/// [`HammingSpec::index_of`]. Requires `k | d`.
///
/// Each block of `k` coordinates is added from least to most significant:
/// the first `k - 1` coordinates of the block place `k` cyclically shifted
/// copies (shift `a - 1` for coordinate value `a`), the last one places `k`
/// identical copies. Starting from the single-vertex coloring `[1]`, one
/// block yields `H(k, k)` and each further block tiles `H(k(n-1), k)` into
/// `H(kn, k)`.
fn hamming_colors(spec: HammingSpec) -> Vec<usize> {
    let k = spec.k;
    let mut colors = vec![1];
    for _block in 0..spec.d / k {
        for _level in 1..k {
            colors = (0..k).flat_map(|shift| shifted(&colors, k, shift).collect::<Vec<_>>()).collect();
        }
        colors = colors.repeat(k);
    }
    colors
}

/// Balanced `k`-coloring of `H(d, k)`, which exists exactly when `k | d`.
pub fn hamming_nbc(spec: HammingSpec) -> Result<ColoredGraph> {
    if spec.d % spec.k != 0 {
        return Err(Refusal::new(
            Rule::DegreeDivisibility,
            format!("H({}, {}) is {}-regular, not a multiple of {}", spec.d, spec.k, spec.d * (spec.k - 1), spec.k),
        )
        .into());
    }
    verified(spec.graph(), Coloring::new(spec.k, hamming_colors(spec))?)
}

/// `Q_d = H(d, 2)`; colorable exactly for even `d`.
pub fn hypercube_nbc(d: usize) -> Result<ColoredGraph> {
    hamming_nbc(HammingSpec::new(d, 2)?)
}
