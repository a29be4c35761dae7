//! Exact search for balanced colorings.
//!
//! [`solve`] is a backtracking search over a fixed vertex order with
//! domain propagation: once a vertex has its quota `deg/k` of some color,
//! that color leaves the domain of its remaining neighbors, and a vertex
//! whose remaining candidates for a color exactly cover the deficit forces
//! them. Interchangeable unused colors are tried once. [`brute_force`] and
//! [`count_colorings`] enumerate everything and serve as oracles.

mod brute;
mod cnf;

pub use brute::{brute_force, count_colorings, BRUTE_FORCE_BITS};
pub use cnf::{decode_model, to_cnf, var, Cnf};

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::{check_necessary, is_nbkc, Coloring};

/// Largest supported color count (domains are 64-bit masks).
pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMode {
    /// Stop at the first balanced coloring found.
    FirstWitness,
    /// The lexicographically smallest balanced coloring, read along the
    /// search order.
    CanonicalMin,
    /// Count all balanced colorings, colors labeled.
    Count,
}

impl std::str::FromStr for SolveMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "first-witness" => Ok(SolveMode::FirstWitness),
            "canonical" | "canonical-min" => Ok(SolveMode::CanonicalMin),
            "count" => Ok(SolveMode::Count),
            other => Err(Error::InvalidArgument(format!("unknown solve mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub mode: SolveMode,
    /// Cap on branching decisions.
    pub node_budget: Option<u64>,
    pub parallel: bool,
    /// Worker threads when `parallel`; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Try only one unused color at each branch. Ignored when counting.
    pub symmetry_breaking: bool,
    /// Precolored vertices `(vertex, color)`.
    pub fixed: Vec<(usize, usize)>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: SolveMode::FirstWitness,
            node_budget: None,
            parallel: false,
            jobs: None,
            symmetry_breaking: true,
            fixed: Vec::new(),
        }
    }
}

impl SolveConfig {
    pub fn with_mode(mode: SolveMode) -> Self {
        SolveConfig { mode, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Sat(Coloring),
    Unsat,
    BudgetExceeded,
}

impl SolveStatus {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveStatus::Sat(_))
    }

    pub fn witness(&self) -> Option<&Coloring> {
        match self {
            SolveStatus::Sat(c) => Some(c),
            _ => None,
        }
    }
}

/// How often each pruning rule fired.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PruneStats {
    /// The instance failed a necessary condition before search.
    pub necessity: u64,
    /// Branch values excluded because a neighbor already had its quota.
    pub quota: u64,
    /// Dead ends: some vertex can no longer reach its quota of a color.
    pub feasibility: u64,
    /// Branch values skipped as relabelings of an unused color.
    pub symmetry: u64,
}

impl PruneStats {
    fn add(&mut self, o: &PruneStats) {
        self.necessity += o.necessity;
        self.quota += o.quota;
        self.feasibility += o.feasibility;
        self.symmetry += o.symmetry;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub nodes_explored: u64,
    pub pruned_by: PruneStats,
    /// Number of balanced colorings, in count mode when not cut short.
    pub count: Option<u64>,
}

/// The branching order: fixed vertices first, then descending degree with
/// ties broken by index.
pub fn search_order(g: &Graph, fixed: &[(usize, usize)]) -> Vec<usize> {
    let mut is_fixed = vec![false; g.order()];
    let mut order = Vec::with_capacity(g.order());
    for &(v, _) in fixed {
        if !std::mem::replace(&mut is_fixed[v], true) {
            order.push(v);
        }
    }
    let mut rest: Vec<usize> = (0..g.order()).filter(|&v| !is_fixed[v]).collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order.extend(rest);
    order
}

pub fn solve(g: &Graph, k: usize, cfg: &SolveConfig) -> Result<SolveOutcome> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    if k > MAX_COLORS {
        return Err(Error::TooLarge(format!("at most {MAX_COLORS} colors supported, got {k}")));
    }
    if cfg.node_budget == Some(0) {
        return Err(Error::InvalidArgument("node budget must be positive".into()));
    }
    for &(v, c) in &cfg.fixed {
        g.check_vertex(v)?;
        if c == 0 || c > k {
            return Err(Error::ColorOutOfRange { vertex: v, color: c, k });
        }
    }
    let unsat = |pruned_by: PruneStats| SolveOutcome {
        status: SolveStatus::Unsat,
        nodes_explored: 0,
        pruned_by,
        count: (cfg.mode == SolveMode::Count).then_some(0),
    };
    if check_necessary(g, k)?.is_uncolorable() {
        return Ok(unsat(PruneStats { necessity: 1, ..PruneStats::default() }));
    }

    let shared = Shared {
        g,
        k,
        order: search_order(g, &cfg.fixed),
        mode: cfg.mode,
        symmetry: cfg.symmetry_breaking && cfg.mode != SolveMode::Count,
        budget: cfg.node_budget,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        best_prefix: AtomicUsize::new(usize::MAX),
        stats: Mutex::new(PruneStats::default()),
    };
    let mut root = Search::new(&shared);
    let consistent = cfg.fixed.iter().all(|&(v, c)| {
        let c = c - 1;
        if root.color[v] != 0 {
            return root.color[v] as usize == c + 1;
        }
        root.dom[v] >> c & 1 == 1 && root.assign(v, c) && root.propagate()
    });
    if !consistent {
        let mut stats = root.stats;
        stats.feasibility += 1;
        return Ok(unsat(stats));
    }

    let result = if cfg.parallel {
        let pool = {
            let mut b = rayon::ThreadPoolBuilder::new();
            if let Some(j) = cfg.jobs {
                b = b.num_threads(j.max(1));
            }
            b.build().map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
        };
        let workers = pool.current_num_threads();
        pool.install(|| run_parallel(&shared, root, workers * 8))
    } else {
        let r = run_prefix(&shared, root, 0);
        r.unwrap_or(Leaf::Unsat)
    };

    let nodes_explored = shared.nodes.load(Ordering::Relaxed);
    let pruned_by = *shared.stats.lock().expect("stats lock");
    let (status, count) = match result {
        Leaf::Sat(colors, count) => {
            let coloring = Coloring::new(k, colors)?;
            if !is_nbkc(g, &coloring)?.balanced {
                return Err(Error::Invariant("solver witness is not balanced".into()));
            }
            (SolveStatus::Sat(coloring), count)
        }
        Leaf::Unsat => (SolveStatus::Unsat, Some(0)),
        Leaf::Budget => (SolveStatus::BudgetExceeded, None),
    };
    let count = if cfg.mode == SolveMode::Count { count } else { None };
    Ok(SolveOutcome { status, nodes_explored, pruned_by, count })
}

/// Result of searching one subtree. `Sat` carries a witness and, in count
/// mode, the number of solutions found.
enum Leaf {
    Sat(Vec<usize>, Option<u64>),
    Unsat,
    Budget,
}

struct Shared<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<usize>,
    mode: SolveMode,
    symmetry: bool,
    budget: Option<u64>,
    nodes: AtomicU64,
    stop: AtomicBool,
    best_prefix: AtomicUsize,
    stats: Mutex<PruneStats>,
}

/// Splits the tree into at least `want` subtrees by breadth-first
/// expansion, in DFS order, and searches them on the rayon pool.
fn run_parallel(shared: &Shared, root: Search, want: usize) -> Leaf {
    let mut frontier: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut complete = false;
    while frontier.len() < want && !complete {
        complete = true;
        let mut next = Vec::new();
        for prefix in &frontier {
            let mut s = root.clone();
            if !s.replay(prefix) {
                continue;
            }
            match s.next_branch(0) {
                None => next.push(prefix.clone()),
                Some((_, x, values)) => {
                    complete = false;
                    for c in values {
                        let mut p = prefix.clone();
                        p.push((x, c));
                        next.push(p);
                    }
                }
            }
            shared.stats.lock().expect("stats lock").add(&s.stats);
        }
        frontier = next;
    }

    let results: Vec<(usize, Leaf)> = match shared.mode {
        SolveMode::Count => frontier
            .par_iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let mut s = root.clone();
                s.replay(p).then(|| ())?;
                run_prefix(shared, s, i).map(|r| (i, r))
            })
            .collect(),
        SolveMode::CanonicalMin => frontier
            .par_iter()
            .enumerate()
            .find_map_first(|(i, p)| {
                let mut s = root.clone();
                s.replay(p).then(|| ())?;
                match run_prefix(shared, s, i)? {
                    Leaf::Unsat => None,
                    r => Some((i, r)),
                }
            })
            .into_iter()
            .collect(),
        SolveMode::FirstWitness => frontier
            .par_iter()
            .enumerate()
            .find_map_any(|(i, p)| {
                let mut s = root.clone();
                s.replay(p).then(|| ())?;
                match run_prefix(shared, s, i)? {
                    Leaf::Unsat => None,
                    r => Some((i, r)),
                }
            })
            .into_iter()
            .collect(),
    };

    if shared.mode == SolveMode::Count {
        let mut total = 0u64;
        let mut first: Option<(usize, Vec<usize>)> = None;
        for (i, r) in results {
            match r {
                Leaf::Budget => return Leaf::Budget,
                Leaf::Unsat => {}
                Leaf::Sat(w, n) => {
                    total += n.unwrap_or(0);
                    if first.as_ref().map_or(true, |(j, _)| i < *j) {
                        first = Some((i, w));
                    }
                }
            }
        }
        return match first {
            Some((_, w)) => Leaf::Sat(w, Some(total)),
            None => Leaf::Unsat,
        };
    }
    results.into_iter().next().map_or(Leaf::Unsat, |(_, r)| r)
}

/// Searches below an already-propagated state. `None` means the search
/// was abandoned because another subtree settled the answer.
fn run_prefix(shared: &Shared, mut s: Search, index: usize) -> Option<Leaf> {
    s.prefix_index = index;
    let flow = s.dfs(0);
    shared.stats.lock().expect("stats lock").add(&s.stats);
    match flow {
        Flow::Abort => None,
        Flow::Budget => Some(Leaf::Budget),
        _ if shared.mode == SolveMode::Count => match s.first {
            Some(w) => Some(Leaf::Sat(w, Some(s.solutions))),
            None => Some(Leaf::Unsat),
        },
        Flow::Found => Some(Leaf::Sat(s.first.expect("witness recorded"), None)),
        Flow::Continue => Some(Leaf::Unsat),
    }
}

enum Flow {
    Continue,
    Found,
    Budget,
    Abort,
}

#[derive(Clone, Copy)]
enum Change {
    Color(usize),
    Remove(usize, usize),
}

/// Mutable search state. Colors are stored 1-based in `color` (0 means
/// uncolored) and 0-based everywhere else.
#[derive(Clone)]
struct Search<'a> {
    shared: &'a Shared<'a>,
    quota: Vec<u32>,
    color: Vec<u8>,
    dom: Vec<u64>,
    /// `count[v*k + c]`: colored neighbors of `v` with color `c`.
    count: Vec<u32>,
    /// `cand[v*k + c]`: uncolored neighbors of `v` that can still take `c`.
    cand: Vec<u32>,
    used: Vec<u32>,
    trail: Vec<Change>,
    queue: Vec<usize>,
    stats: PruneStats,
    first: Option<Vec<usize>>,
    solutions: u64,
    prefix_index: usize,
}

impl<'a> Search<'a> {
    fn new(shared: &'a Shared<'a>) -> Self {
        let (g, k) = (shared.g, shared.k);
        let n = g.order();
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let mut cand = vec![0; n * k];
        for v in 0..n {
            cand[v * k..(v + 1) * k].fill(g.degree(v) as u32);
        }
        Search {
            shared,
            quota: (0..n).map(|v| (g.degree(v) / k) as u32).collect(),
            color: vec![0; n],
            dom: vec![full; n],
            count: vec![0; n * k],
            cand,
            used: vec![0; k],
            trail: Vec::new(),
            queue: Vec::new(),
            stats: PruneStats::default(),
            first: None,
            solutions: 0,
            prefix_index: 0,
        }
    }

    fn k(&self) -> usize {
        self.shared.k
    }

    fn deficit(&self, v: usize, c: usize) -> u32 {
        self.quota[v] - self.count[v * self.k() + c]
    }

    /// Checks `v` after its counters changed; queues it if some color's
    /// candidates exactly cover the deficit.
    fn feasible(&mut self, v: usize) -> bool {
        let k = self.k();
        let mut tight = false;
        for c in 0..k {
            let d = self.deficit(v, c);
            let a = self.cand[v * k + c];
            if a < d {
                return false;
            }
            tight |= d > 0 && a == d;
        }
        if tight {
            self.queue.push(v);
        }
        true
    }

    /// Colors `x` with `c` (0-based). `c` must be in `dom[x]`.
    fn assign(&mut self, x: usize, c: usize) -> bool {
        let g = self.shared.g;
        let k = self.k();
        self.color[x] = c as u8 + 1;
        self.used[c] += 1;
        self.trail.push(Change::Color(x));
        let dom = self.dom[x];
        for &y in g.adj(x) {
            for c2 in bits(dom) {
                self.cand[y * k + c2] -= 1;
            }
            self.count[y * k + c] += 1;
        }
        for &y in g.adj(x) {
            if !self.feasible(y) {
                self.stats.feasibility += 1;
                return false;
            }
        }
        for &y in g.adj(x) {
            if self.count[y * k + c] == self.quota[y] {
                for &z in g.adj(y) {
                    if self.color[z] == 0 && self.dom[z] >> c & 1 == 1 && !self.remove(z, c) {
                        self.stats.feasibility += 1;
                        return false;
                    }
                }
            }
        }
        true
    }

    fn remove(&mut self, z: usize, c: usize) -> bool {
        let g = self.shared.g;
        let k = self.k();
        self.dom[z] &= !(1u64 << c);
        self.trail.push(Change::Remove(z, c));
        for &w in g.adj(z) {
            self.cand[w * k + c] -= 1;
        }
        if self.dom[z] == 0 {
            return false;
        }
        if self.dom[z].count_ones() == 1 {
            self.queue.push(z);
        }
        for &w in g.adj(z) {
            let d = self.deficit(w, c);
            let a = self.cand[w * k + c];
            if a < d {
                return false;
            }
            if d > 0 && a == d {
                self.queue.push(w);
            }
        }
        true
    }

    /// Applies forced assignments until none remain.
    fn propagate(&mut self) -> bool {
        let g = self.shared.g;
        let k = self.k();
        while let Some(v) = self.queue.pop() {
            if self.color[v] == 0 && self.dom[v].count_ones() == 1 {
                let c = self.dom[v].trailing_zeros() as usize;
                if !self.assign(v, c) {
                    self.queue.clear();
                    return false;
                }
            }
            for c in 0..k {
                let d = self.deficit(v, c);
                if d == 0 || self.cand[v * k + c] != d {
                    continue;
                }
                for &z in g.adj(v) {
                    if self.color[z] == 0 && self.dom[z] >> c & 1 == 1 && !self.assign(z, c) {
                        self.queue.clear();
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        let g = self.shared.g;
        let k = self.k();
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Change::Color(x) => {
                    let c = self.color[x] as usize - 1;
                    for &y in g.adj(x) {
                        self.count[y * k + c] -= 1;
                        for c2 in bits(self.dom[x]) {
                            self.cand[y * k + c2] += 1;
                        }
                    }
                    self.used[c] -= 1;
                    self.color[x] = 0;
                }
                Change::Remove(z, c) => {
                    self.dom[z] |= 1u64 << c;
                    for &w in g.adj(z) {
                        self.cand[w * k + c] += 1;
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// The next uncolored vertex at or after `from` in the search order,
    /// with its branch values in increasing order.
    fn next_branch(&mut self, from: usize) -> Option<(usize, usize, Vec<usize>)> {
        let order = &self.shared.order;
        let i = (from..order.len()).find(|&i| self.color[order[i]] == 0)?;
        let x = order[i];
        let k = self.k();
        let mut allowed = self.dom[x];
        self.stats.quota += (k - allowed.count_ones() as usize) as u64;
        if self.shared.symmetry {
            let mut mask = 0u64;
            let mut fresh = None;
            for c in 0..k {
                if self.used[c] > 0 {
                    mask |= 1 << c;
                } else if fresh.is_none() {
                    fresh = Some(c);
                }
            }
            if let Some(c) = fresh {
                mask |= 1 << c;
            }
            self.stats.symmetry += (allowed & !mask).count_ones() as u64;
            allowed &= mask;
        }
        Some((i, x, bits(allowed).collect()))
    }

    fn replay(&mut self, prefix: &[(usize, usize)]) -> bool {
        prefix.iter().all(|&(x, c)| self.color[x] == 0 && self.assign(x, c) && self.propagate())
    }

    fn record(&mut self) -> Flow {
        if self.first.is_none() {
            self.first = Some(self.color.iter().map(|&c| c as usize).collect());
        }
        match self.shared.mode {
            SolveMode::Count => {
                self.solutions += 1;
                Flow::Continue
            }
            SolveMode::FirstWitness => {
                self.shared.stop.store(true, Ordering::Relaxed);
                Flow::Found
            }
            SolveMode::CanonicalMin => {
                self.shared.best_prefix.fetch_min(self.prefix_index, Ordering::Relaxed);
                Flow::Found
            }
        }
    }

    fn aborted(&self) -> bool {
        match self.shared.mode {
            SolveMode::FirstWitness => self.shared.stop.load(Ordering::Relaxed),
            SolveMode::CanonicalMin => self.shared.best_prefix.load(Ordering::Relaxed) < self.prefix_index,
            SolveMode::Count => false,
        }
    }

    fn dfs(&mut self, from: usize) -> Flow {
        let Some((i, x, values)) = self.next_branch(from) else {
            return self.record();
        };
        for c in values {
            if self.aborted() {
                return Flow::Abort;
            }
            let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if self.shared.budget.is_some_and(|b| nodes > b) {
                return Flow::Budget;
            }
            let mark = self.trail.len();
            let flow = if self.assign(x, c) && self.propagate() { self.dfs(i + 1) } else { Flow::Continue };
            self.undo(mark);
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let c = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(c)
    })
}
