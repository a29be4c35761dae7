//! CNF encoding of the balance constraints, for external SAT solvers.
//!
//! Variable `x_{v,c}` (`v` 0-based, `c` in `1..=k`) is `v*k + c`. Each
//! vertex takes exactly one color, and for every vertex `v` and color `c`
//! exactly `deg(v)/k` neighbors take `c`, written as two sequential-counter
//! at-most constraints (on the literals and on their negations).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::Coloring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub comments: Vec<String>,
}

/// DIMACS variable for "vertex `v` has color `c`".
pub fn var(k: usize, v: usize, c: usize) -> i64 {
    (v * k + c) as i64
}

impl Cnf {
    fn fresh(&mut self) -> i64 {
        self.num_vars += 1;
        self.num_vars as i64
    }

    /// Sequential counter: at most `q` of `lits` are true.
    fn at_most(&mut self, lits: &[i64], q: usize) {
        let n = lits.len();
        if q >= n {
            return;
        }
        if q == 0 {
            self.clauses.extend(lits.iter().map(|&l| vec![-l]));
            return;
        }
        // s[i][j]: at least j+1 of lits[0..=i] are true
        let s: Vec<Vec<i64>> = (0..n - 1).map(|_| (0..q).map(|_| self.fresh()).collect()).collect();
        self.clauses.push(vec![-lits[0], s[0][0]]);
        for j in 1..q {
            self.clauses.push(vec![-s[0][j]]);
        }
        for i in 1..n - 1 {
            self.clauses.push(vec![-lits[i], s[i][0]]);
            self.clauses.push(vec![-s[i - 1][0], s[i][0]]);
            for j in 1..q {
                self.clauses.push(vec![-lits[i], -s[i - 1][j - 1], s[i][j]]);
                self.clauses.push(vec![-s[i - 1][j], s[i][j]]);
            }
            self.clauses.push(vec![-lits[i], -s[i - 1][q - 1]]);
        }
        self.clauses.push(vec![-lits[n - 1], -s[n - 2][q - 1]]);
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

pub fn to_cnf(g: &Graph, k: usize) -> Result<Cnf> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    let n = g.order();
    let mut cnf = Cnf { num_vars: n * k, clauses: Vec::new(), comments: Vec::new() };
    cnf.comments.push(format!("balanced {k}-coloring of a graph with {n} vertices and {} edges", g.size()));
    cnf.comments.push(format!("variable v*{k}+c means vertex v (0-based) has color c (1..={k})"));
    for v in 0..n {
        let vars: Vec<String> = (1..=k).map(|c| var(k, v, c).to_string()).collect();
        cnf.comments.push(format!("vertex {v}: {}", vars.join(" ")));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) % k != 0) {
        cnf.comments.push(format!("unsatisfiable: vertex {v} has degree {} not divisible by {k}", g.degree(v)));
        cnf.clauses.push(Vec::new());
        return Ok(cnf);
    }
    for v in 0..n {
        let lits: Vec<i64> = (1..=k).map(|c| var(k, v, c)).collect();
        cnf.clauses.push(lits.clone());
        for a in 0..k {
            for b in a + 1..k {
                cnf.clauses.push(vec![-lits[a], -lits[b]]);
            }
        }
    }
    for v in 0..n {
        let d = g.degree(v);
        if d == 0 {
            continue;
        }
        let q = d / k;
        for c in 1..=k {
            let lits: Vec<i64> = g.adj(v).iter().map(|&u| var(k, u, c)).collect();
            cnf.at_most(&lits, q);
            let neg: Vec<i64> = lits.iter().map(|l| -l).collect();
            cnf.at_most(&neg, d - q);
        }
    }
    Ok(cnf)
}

/// Reads a coloring from a model given as the set of true literals (or a
/// full signed assignment, as printed by SAT solvers).
pub fn decode_model(n: usize, k: usize, model: &[i64]) -> Result<Coloring> {
    let mut colors = vec![0; n];
    for &l in model {
        if l <= 0 || l as usize > n * k {
            continue;
        }
        let x = l as usize - 1;
        let (v, c) = (x / k, x % k + 1);
        if colors[v] != 0 {
            return Err(Error::InvalidArgument(format!("model gives vertex {v} two colors")));
        }
        colors[v] = c;
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(Error::InvalidArgument(format!("model leaves vertex {v} uncolored")));
    }
    Coloring::new(k, colors)
}
