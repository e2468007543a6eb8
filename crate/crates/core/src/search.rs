//! Exhaustive backtracking search for distance magic labelings of small
//! graphs.
//!
//! Vertices are labeled in a fixed order (descending degree, ties by id),
//! trying labels in increasing order, so the first witness found for a
//! given magic constant is the lexicographically smallest label sequence in
//! that order. After each assignment every vertex is checked:
//!
//! - a vertex whose neighborhood is fully labeled must have weight `k`;
//! - a partially labeled neighborhood must still be able to reach `k`
//!   using the smallest and largest labels still unused.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::magic::{odd_regular_obstruction, Labeling};

/// Node limit for a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBudget {
    max_nodes: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: None }
    }

    pub fn nodes(max: u64) -> Result<Self> {
        if max == 0 {
            return Err(Error::param("budget", "node budget must be positive"));
        }
        Ok(SearchBudget {
            max_nodes: Some(max),
        })
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }
}

/// Why a search finished without exploring any labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastPath {
    /// `r`-regular with `r` odd.
    OddRegular,
    /// Regular, but `r(n+1)/2` is not an integer.
    NonIntegralConstant,
    /// The admissible range of magic constants is empty.
    NoCandidateConstant,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Label assignments tried.
    pub nodes: u64,
    /// Completed neighborhoods whose weight differed from `k`.
    pub prunes_complete: u64,
    /// Partial neighborhoods that could no longer reach `k`.
    pub prunes_bounds: u64,
    /// Magic constants searched.
    pub k_candidates: usize,
    pub fast_path: Option<FastPath>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Found { labeling: Labeling, k: u64 },
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self.result, SearchResult::Found { .. })
    }

    pub fn is_exhausted(&self) -> bool {
        self.result == SearchResult::ExhaustedNone
    }

    pub fn k(&self) -> Option<u64> {
        match self.result {
            SearchResult::Found { k, .. } => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            SearchResult::Found { k, .. } => writeln!(f, "found k={k}")?,
            SearchResult::ExhaustedNone => writeln!(f, "exhausted_none")?,
            SearchResult::BudgetExceeded => writeln!(f, "budget_exceeded")?,
        }
        let s = &self.stats;
        writeln!(f, "nodes={}", s.nodes)?;
        writeln!(f, "prunes_complete={}", s.prunes_complete)?;
        writeln!(f, "prunes_bounds={}", s.prunes_bounds)?;
        writeln!(f, "k_candidates={}", s.k_candidates)?;
        if let Some(fp) = s.fast_path {
            let name = match fp {
                FastPath::OddRegular => "odd_regular",
                FastPath::NonIntegralConstant => "non_integral_constant",
                FastPath::NoCandidateConstant => "no_candidate_constant",
            };
            writeln!(f, "fast_path={name}")?;
        }
        Ok(())
    }
}

/// The assignment order: descending degree, ties by ascending id.
pub fn vertex_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Integer magic constants not excluded by the degree sequence.
///
/// Summing all weights gives `n k = Σ d(u) ℓ(u)`, which the rearrangement
/// inequality bounds by pairing sorted degrees with sorted labels; each
/// vertex also needs `1 + .. + d(v) <= k <= (n - d(v) + 1) + .. + n`.
pub fn k_candidates(g: &Graph) -> Vec<u64> {
    let n = g.order() as u64;
    if g.edge_count() == 0 {
        return vec![0];
    }
    if (0..g.order()).any(|v| g.degree(v) == 0) {
        return Vec::new();
    }
    if let Some(r) = g.regularity() {
        let twice = r as u64 * (n + 1);
        return if twice.is_multiple_of(2) {
            vec![twice / 2]
        } else {
            Vec::new()
        };
    }
    let mut degrees: Vec<u64> = (0..g.order()).map(|v| g.degree(v) as u64).collect();
    degrees.sort_unstable();
    let min_total: u64 = degrees.iter().rev().zip(1..).map(|(d, l)| d * l).sum();
    let max_total: u64 = degrees.iter().zip(1..).map(|(d, l)| d * l).sum();
    let tri = |d: u64| d * (d + 1) / 2;
    let dmax = *degrees.last().unwrap();
    let dmin = degrees[0];
    let lo = min_total.div_ceil(n).max(tri(dmax));
    let hi = (max_total / n).min(tri(n) - tri(n - dmin));
    (lo..=hi)
        .filter(|k| max_total >= n * k && n * k >= min_total)
        .collect()
}

struct Dfs<'a> {
    g: &'a Graph,
    order: &'a [usize],
    k: u64,
    regular: bool,
    labels: Vec<usize>,
    used: Vec<bool>,
    partial: Vec<u64>,
    missing: Vec<usize>,
    prefix: Vec<u64>,
    stats: &'a mut SearchStats,
    max_nodes: Option<u64>,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Dfs<'_> {
    fn feasible(&mut self, v: usize) -> bool {
        let n = self.g.order();
        // Sums of the r smallest / r largest unused labels.
        self.prefix.clear();
        self.prefix.push(0);
        for l in 1..=n {
            if !self.used[l - 1] {
                let last = *self.prefix.last().unwrap();
                self.prefix.push(last + l as u64);
            }
        }
        let free = self.prefix.len() - 1;
        let total = self.prefix[free];
        for &u in self.g.adj(v) {
            if self.missing[u] == 0 && self.partial[u] != self.k {
                self.stats.prunes_complete += 1;
                return false;
            }
        }
        for u in 0..n {
            let r = self.missing[u];
            if r == 0 {
                continue;
            }
            let low = self.partial[u] + self.prefix[r];
            let high = self.partial[u] + total - self.prefix[free - r];
            if low > self.k || high < self.k {
                self.stats.prunes_bounds += 1;
                return false;
            }
            // One slot left: the missing label is determined and must be free.
            if r == 1 && self.used[(self.k - self.partial[u]) as usize - 1] {
                self.stats.prunes_bounds += 1;
                return false;
            }
        }
        true
    }

    /// The only label `v` can take when it is the last unlabeled neighbor
    /// of some vertex; `Err` when two such vertices disagree.
    fn forced_label(&self, v: usize) -> std::result::Result<Option<usize>, ()> {
        let mut forced = None;
        for &u in self.g.adj(v) {
            if self.missing[u] == 1 {
                let need = (self.k - self.partial[u]) as usize;
                match forced {
                    Some(f) if f != need => return Err(()),
                    _ => forced = Some(need),
                }
            }
        }
        Ok(forced)
    }

    fn assign(&mut self, v: usize, l: usize) {
        self.labels[v] = l;
        self.used[l - 1] = true;
        for &u in self.g.adj(v) {
            self.partial[u] += l as u64;
            self.missing[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, l: usize) {
        self.labels[v] = 0;
        self.used[l - 1] = false;
        for &u in self.g.adj(v) {
            self.partial[u] -= l as u64;
            self.missing[u] += 1;
        }
    }

    fn run(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let v = self.order[depth];
        let range = match self.forced_label(v) {
            Ok(Some(l)) => l..=l,
            // On a regular graph `n + 1 - ℓ` is magic whenever `ℓ` is, so
            // the first witness gives the first vertex a label in the
            // lower half.
            Ok(None) if depth == 0 && self.regular => 1..=self.g.order().div_ceil(2),
            Ok(None) => 1..=self.g.order(),
            Err(()) => {
                self.stats.prunes_complete += 1;
                return Step::Exhausted;
            }
        };
        for l in range {
            if self.used[l - 1] {
                continue;
            }
            self.stats.nodes += 1;
            if self.max_nodes.is_some_and(|m| self.stats.nodes > m) {
                return Step::OutOfBudget;
            }
            self.assign(v, l);
            if self.feasible(v) {
                match self.run(depth + 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.unassign(v, l);
        }
        Step::Exhausted
    }
}

/// Decides whether `g` has a distance magic labeling, returning the
/// lexicographically first witness (label sequence in [`vertex_order`])
/// over all admissible magic constants.
pub fn find_distance_magic(g: &Graph, budget: SearchBudget) -> SearchOutcome {
    let mut stats = SearchStats::default();
    let n = g.order();
    let exhausted = |stats, fast| SearchOutcome {
        result: SearchResult::ExhaustedNone,
        stats: SearchStats {
            fast_path: fast,
            ..stats
        },
    };

    if odd_regular_obstruction(g) {
        return exhausted(stats, Some(FastPath::OddRegular));
    }
    let candidates = k_candidates(g);
    if candidates.is_empty() {
        let why = if g.regularity().is_some() {
            FastPath::NonIntegralConstant
        } else {
            FastPath::NoCandidateConstant
        };
        return exhausted(stats, Some(why));
    }

    let order = vertex_order(g);
    let mut best: Option<(Vec<usize>, Labeling, u64)> = None;
    for k in candidates {
        stats.k_candidates += 1;
        let mut dfs = Dfs {
            g,
            order: &order,
            k,
            regular: g.regularity().is_some(),
            labels: vec![0; n],
            used: vec![false; n],
            partial: vec![0; n],
            missing: (0..n).map(|v| g.degree(v)).collect(),
            prefix: Vec::with_capacity(n + 1),
            stats: &mut stats,
            max_nodes: budget.max_nodes,
        };
        match dfs.run(0) {
            Step::Found => {
                let seq: Vec<usize> = order.iter().map(|&v| dfs.labels[v]).collect();
                let labeling = Labeling::new(dfs.labels).expect("search assigns a bijection");
                if best.as_ref().is_none_or(|(s, _, _)| seq < *s) {
                    best = Some((seq, labeling, k));
                }
            }
            Step::Exhausted => {}
            Step::OutOfBudget => {
                return SearchOutcome {
                    result: SearchResult::BudgetExceeded,
                    stats,
                };
            }
        }
    }
    match best {
        Some((_, labeling, k)) => SearchOutcome {
            result: SearchResult::Found { labeling, k },
            stats,
        },
        None => exhausted(stats, None),
    }
}

/// Runs [`find_distance_magic`] over a finite family, keeping its order.
pub fn check_family<I>(family: I, budget: SearchBudget) -> Vec<(String, SearchOutcome)>
where
    I: IntoIterator<Item = (String, Graph)>,
{
    family
        .into_iter()
        .map(|(name, g)| {
            let outcome = find_distance_magic(&g, budget);
            (name, outcome)
        })
        .collect()
}
