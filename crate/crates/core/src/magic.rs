//! Labelings, weights, and the distance magic / balanced verifiers.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Maximum number of diagnostics kept in a [`VerifyReport`].
pub const MAX_FAILURES: usize = 32;

/// A bijection from vertex ids `0..n` to labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    values: Vec<usize>,
    // positions[l - 1] is the vertex carrying label l
    positions: Vec<usize>,
}

impl Labeling {
    /// Validates `values` as a bijection onto `1..=values.len()`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut positions = vec![usize::MAX; n];
        let mut duplicates = Vec::new();
        let mut out_of_range = Vec::new();
        for (v, &l) in values.iter().enumerate() {
            if l == 0 || l > n {
                out_of_range.push(l);
            } else if positions[l - 1] != usize::MAX {
                duplicates.push(l);
            } else {
                positions[l - 1] = v;
            }
        }
        let missing: Vec<usize> = (1..=n)
            .filter(|&l| positions[l - 1] == usize::MAX)
            .collect();
        if !missing.is_empty() {
            duplicates.sort_unstable();
            duplicates.dedup();
            out_of_range.sort_unstable();
            out_of_range.dedup();
            return Err(Error::NotBijection {
                n,
                duplicates,
                missing,
                out_of_range,
            });
        }
        Ok(Labeling { values, positions })
    }

    /// The labeling `v -> v + 1`.
    pub fn identity(n: usize) -> Self {
        Labeling {
            values: (1..=n).collect(),
            positions: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.values[v]
    }

    #[inline]
    pub fn vertex_with_label(&self, label: usize) -> usize {
        self.positions[label - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Vertex holding label `n + 1 - label(v)`.
    #[inline]
    pub fn complement_vertex(&self, v: usize) -> usize {
        self.vertex_with_label(self.len() + 1 - self.values[v])
    }

    /// Exchanges the labels of `u` and `v`.
    pub fn swap_vertices(&mut self, u: usize, v: usize) {
        self.values.swap(u, v);
        self.positions[self.values[u] - 1] = u;
        self.positions[self.values[v] - 1] = v;
    }

    /// Reads the labeling file format: one line `v label` per vertex.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let n = rows.len();
        let mut values = vec![0; n];
        let mut seen_at = vec![0usize; n];
        for (line, body) in rows {
            let bad = |reason: String| Error::Parse { line, reason };
            let mut it = body.split_whitespace();
            let mut next = || -> Result<usize> {
                let tok = it
                    .next()
                    .ok_or_else(|| bad("expected `vertex label`".into()))?;
                tok.parse()
                    .map_err(|_| bad(format!("`{tok}` is not a nonnegative integer")))
            };
            let (v, l) = (next()?, next()?);
            if it.next().is_some() {
                return Err(bad("expected `vertex label`".into()));
            }
            if v >= n {
                return Err(bad(format!("vertex {v} out of range for {n} entries")));
            }
            if seen_at[v] != 0 {
                return Err(bad(format!(
                    "vertex {v} already labeled on line {}",
                    seen_at[v]
                )));
            }
            if l == 0 || l > n {
                return Err(bad(format!("label {l} outside 1..={n}")));
            }
            seen_at[v] = line;
            values[v] = l;
        }
        Labeling::new(values)
    }

    /// Writes the labeling file format, vertices ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, l) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{v} {l}");
        }
        out
    }
}

fn check_size(g: &Graph, l: &Labeling) -> Result<()> {
    if g.order() != l.len() {
        return Err(Error::SizeMismatch {
            labels: l.len(),
            vertices: g.order(),
        });
    }
    Ok(())
}

/// `w(v)`: sum of the labels on `N(v)`.
pub fn weight(g: &Graph, l: &Labeling, v: usize) -> Result<u64> {
    check_size(g, l)?;
    Ok(g.neighbors(v)?.iter().map(|&u| l.label(u) as u64).sum())
}

/// Weights of every vertex.
pub fn weights(g: &Graph, l: &Labeling) -> Result<Vec<u64>> {
    check_size(g, l)?;
    Ok((0..g.order())
        .map(|v| g.adj(v).iter().map(|&u| l.label(u) as u64).sum())
        .collect())
}

/// The constant `r(n+1)/2` forced on any distance magic labeling of an
/// `r`-regular graph; `None` for irregular graphs or when it is not an
/// integer.
pub fn theoretical_k(g: &Graph) -> Option<u64> {
    let r = g.regularity()? as u64;
    let twice = r * (g.order() as u64 + 1);
    twice.is_multiple_of(2).then_some(twice / 2)
}

/// True for `r`-regular graphs with `r` odd, which are never distance magic.
pub fn odd_regular_obstruction(g: &Graph) -> bool {
    g.regularity().is_some_and(|r| r % 2 == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// `actual` is the weight of the vertex, `expected` the target constant.
    Weight,
    /// A neighbor labeled `actual` appears in `N(vertex)` without the
    /// vertex labeled `expected = n + 1 - actual`.
    MissingTwin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub vertex: usize,
    pub expected: u64,
    pub actual: u64,
}

/// Outcome of [`verify_distance_magic`] or [`verify_balanced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub weights: Vec<u64>,
    pub magic_constant: Option<u64>,
    pub is_distance_magic: bool,
    /// Magic with `k = 0`, which only happens on edgeless graphs.
    pub degenerate: bool,
    /// Whether the balanced condition was evaluated at all.
    pub balance_checked: bool,
    pub is_balanced: bool,
    /// `twin_map[v]` is the vertex carrying `n + 1 - label(v)`; present
    /// when the labeling is balanced.
    pub twin_map: Option<Vec<usize>>,
    /// Every twin pair is non-adjacent and has identical neighborhoods.
    pub twins_share_neighborhoods: Option<bool>,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
}

impl VerifyReport {
    fn push_failure(&mut self, f: Failure) {
        self.failure_count += 1;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(f);
        }
    }

    /// Machine-readable `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "distance_magic={}", self.is_distance_magic);
        let _ = writeln!(
            out,
            "magic_constant={}",
            self.magic_constant.map_or("none".into(), |k| k.to_string())
        );
        let _ = writeln!(out, "degenerate={}", self.degenerate);
        if self.balance_checked {
            let _ = writeln!(out, "balanced={}", self.is_balanced);
            if let Some(t) = &self.twin_map {
                let _ = writeln!(
                    out,
                    "twin_map={}",
                    join(&mut t.iter().map(usize::to_string))
                );
            }
            if let Some(s) = self.twins_share_neighborhoods {
                let _ = writeln!(out, "twins_share_neighborhoods={s}");
            }
        }
        let _ = writeln!(
            out,
            "weights={}",
            join(&mut self.weights.iter().map(u64::to_string))
        );
        let _ = writeln!(out, "failure_count={}", self.failure_count);
        for f in &self.failures {
            let kind = match f.kind {
                FailureKind::Weight => "weight",
                FailureKind::MissingTwin => "missing_twin",
            };
            let _ = writeln!(
                out,
                "failure={kind}:vertex={}:expected={}:actual={}",
                f.vertex, f.expected, f.actual
            );
        }
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices:        {}", self.n)?;
        match self.magic_constant {
            Some(k) if self.degenerate => {
                writeln!(f, "distance magic:  yes (k = {k}, degenerate)")?
            }
            Some(k) => writeln!(f, "distance magic:  yes (k = {k})")?,
            None => writeln!(f, "distance magic:  no")?,
        }
        if self.balance_checked {
            writeln!(
                f,
                "balanced:        {}",
                if self.is_balanced { "yes" } else { "no" }
            )?;
            if let Some(twins) = &self.twin_map {
                let pairs: Vec<String> = twins
                    .iter()
                    .enumerate()
                    .filter(|&(v, &t)| v < t)
                    .map(|(v, t)| format!("{v}~{t}"))
                    .collect();
                writeln!(f, "twin pairs:      {}", pairs.join(" "))?;
            }
        }
        if self.failure_count > 0 {
            writeln!(f, "failures:        {}", self.failure_count)?;
            for x in &self.failures {
                match x.kind {
                    FailureKind::Weight => writeln!(
                        f,
                        "  vertex {}: weight {} (expected {})",
                        x.vertex, x.actual, x.expected
                    )?,
                    FailureKind::MissingTwin => writeln!(
                        f,
                        "  vertex {}: neighbor label {} without its twin label {}",
                        x.vertex, x.actual, x.expected
                    )?,
                }
            }
            if self.failure_count > self.failures.len() {
                writeln!(f, "  ... {} more", self.failure_count - self.failures.len())?;
            }
        }
        Ok(())
    }
}

fn weight_report(g: &Graph, l: &Labeling) -> Result<VerifyReport> {
    let weights = weights(g, l)?;
    let uniform = weights.windows(2).all(|w| w[0] == w[1]);
    let k = if uniform {
        Some(weights.first().copied().unwrap_or(0))
    } else {
        None
    };
    let mut report = VerifyReport {
        n: g.order(),
        weights,
        magic_constant: k,
        is_distance_magic: uniform,
        degenerate: k == Some(0),
        balance_checked: false,
        is_balanced: false,
        twin_map: None,
        twins_share_neighborhoods: None,
        failures: Vec::new(),
        failure_count: 0,
    };
    if !uniform {
        let expected = theoretical_k(g).unwrap_or_else(|| mode(&report.weights));
        for v in 0..report.n {
            let actual = report.weights[v];
            if actual != expected {
                report.push_failure(Failure {
                    kind: FailureKind::Weight,
                    vertex: v,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(report)
}

// Most frequent weight, ties broken toward the smaller value.
fn mode(weights: &[u64]) -> u64 {
    let mut counts = BTreeMap::new();
    for &w in weights {
        *counts.entry(w).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map_or(0, |(w, _)| w)
}

/// Checks whether `l` is a distance magic labeling of `g`.
pub fn verify_distance_magic(g: &Graph, l: &Labeling) -> Result<VerifyReport> {
    weight_report(g, l)
}

/// Checks whether `l` is a balanced distance magic labeling of `g`: the
/// order is even, `l` is distance magic, and every neighborhood containing
/// the vertex labeled `i` also contains the vertex labeled `n + 1 - i`.
pub fn verify_balanced(g: &Graph, l: &Labeling) -> Result<VerifyReport> {
    let mut report = weight_report(g, l)?;
    report.balance_checked = true;
    let n = g.order();
    let mut twin_condition = n.is_multiple_of(2);
    if twin_condition {
        for w in 0..n {
            let nbrs = g.adj(w);
            for &u in nbrs {
                let t = l.complement_vertex(u);
                if nbrs.binary_search(&t).is_err() {
                    twin_condition = false;
                    report.push_failure(Failure {
                        kind: FailureKind::MissingTwin,
                        vertex: w,
                        expected: l.label(t) as u64,
                        actual: l.label(u) as u64,
                    });
                }
            }
        }
    }
    report.is_balanced = twin_condition && report.is_distance_magic;
    if report.is_balanced {
        let twins: Vec<usize> = (0..n).map(|v| l.complement_vertex(v)).collect();
        let share = twins
            .iter()
            .enumerate()
            .all(|(v, &t)| !g.is_adjacent(v, t) && g.adj(v) == g.adj(t));
        report.twins_share_neighborhoods = Some(share);
        report.twin_map = Some(twins);
    }
    Ok(report)
}

/// One team of an equalized incomplete tournament.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamRow {
    pub team: usize,
    pub strength: usize,
    pub opponents: Vec<usize>,
    pub opponent_total: u64,
}

/// `EIT(n, r)` read off an `r`-regular distance magic labeling: every
/// team plays `r` others and faces the same total opponent strength.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub teams: usize,
    pub rounds: usize,
    pub total: u64,
    pub rows: Vec<TeamRow>,
}

pub fn eit_schedule(g: &Graph, l: &Labeling) -> Result<Schedule> {
    check_size(g, l)?;
    let rounds = g
        .regularity()
        .ok_or_else(|| Error::pre("graph is not regular, so it does not define an EIT"))?;
    let report = verify_distance_magic(g, l)?;
    let total = report
        .magic_constant
        .ok_or_else(|| Error::pre("labeling is not distance magic: opponent totals differ"))?;
    let rows = (0..g.order())
        .map(|v| {
            let mut opponents: Vec<usize> = g.adj(v).iter().map(|&u| l.label(u)).collect();
            opponents.sort_unstable();
            TeamRow {
                team: v,
                strength: l.label(v),
                opponents,
                opponent_total: report.weights[v],
            }
        })
        .collect();
    Ok(Schedule {
        teams: g.order(),
        rounds,
        total,
        rows,
    })
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "EIT({}, {}) total={}",
            self.teams, self.rounds, self.total
        )?;
        writeln!(f, "team strength opponents total")?;
        for row in &self.rows {
            let opp: Vec<String> = row.opponents.iter().map(usize::to_string).collect();
            writeln!(
                f,
                "{} {} {} {}",
                row.team,
                row.strength,
                if opp.is_empty() {
                    "-".into()
                } else {
                    opp.join(",")
                },
                row.opponent_total
            )?;
        }
        Ok(())
    }
}
