use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::Coloring;

use super::{PruneStats, SolveOutcome, SolveStatus};

/// Enumeration cap: `k^n` may not exceed `2^BRUTE_FORCE_BITS`.
pub const BRUTE_FORCE_BITS: u32 = 24;

fn check_cap(g: &Graph, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidColorCount(k));
    }
    let fits = u32::try_from(g.order())
        .ok()
        .and_then(|n| (k as u64).checked_pow(n))
        .is_some_and(|total| total <= 1 << BRUTE_FORCE_BITS);
    if !fits {
        return Err(Error::TooLarge(format!(
            "{k}^{} assignments exceed the enumeration cap of 2^{BRUTE_FORCE_BITS}",
            g.order()
        )));
    }
    Ok(())
}

fn balanced(g: &Graph, k: usize, colors: &[usize], counts: &mut [usize]) -> bool {
    (0..g.order()).all(|v| {
        counts.fill(0);
        for &u in g.adj(v) {
            counts[colors[u]] += 1;
        }
        counts.iter().all(|&c| c * k == g.degree(v))
    })
}

/// Visits every assignment in `{0..k}^n` (last vertex fastest); stops when
/// `f` returns false.
fn enumerate(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut colors = vec![0; n];
    loop {
        if !f(&colors) {
            return;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
        }
    }
}

/// Tries every assignment in turn.
pub fn brute_force(g: &Graph, k: usize) -> Result<SolveOutcome> {
    check_cap(g, k)?;
    let mut counts = vec![0; k];
    let mut nodes = 0u64;
    let mut found = None;
    enumerate(g.order(), k, |colors| {
        nodes += 1;
        if balanced(g, k, colors, &mut counts) {
            found = Some(colors.iter().map(|c| c + 1).collect::<Vec<_>>());
            return false;
        }
        true
    });
    let status = match found {
        Some(colors) => SolveStatus::Sat(Coloring::new(k, colors)?),
        None => SolveStatus::Unsat,
    };
    Ok(SolveOutcome { status, nodes_explored: nodes, pruned_by: PruneStats::default(), count: None })
}

/// Number of balanced colorings, colors labeled.
pub fn count_colorings(g: &Graph, k: usize) -> Result<u64> {
    check_cap(g, k)?;
    let mut counts = vec![0; k];
    let mut total = 0;
    enumerate(g.order(), k, |colors| {
        if balanced(g, k, colors, &mut counts) {
            total += 1;
        }
        true
    });
    Ok(total)
}
