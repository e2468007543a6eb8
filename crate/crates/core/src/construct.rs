//! Explicit labeling constructions and the closed-form classifiers for
//! products of cycles.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::magic::{verify_balanced, Labeling};

/// Balanced labeling of `C_4`: labels `1, 2, 4, 3` in cycle order.
pub fn label_c4() -> Labeling {
    Labeling::new(vec![1, 2, 4, 3]).expect("fixed bijection")
}

/// Balanced labeling of `K_{2n,2n}` as produced by
/// `GraphKind::CompleteBipartite(2n, 2n)`.
///
/// With vertices `v_1..v_{4n}` and `v_i` in the first part iff
/// `i mod 4 ∈ {0, 1}`, label `v_i` with `i`. The first part's members in
/// increasing `i` occupy ids `0..2n`, the second part's ids `2n..4n`.
pub fn label_complete_bipartite(n: usize) -> Result<Labeling> {
    if n < 1 {
        return Err(Error::param("n", "K_{2n,2n} needs n >= 1"));
    }
    let (first, second): (Vec<usize>, Vec<usize>) =
        (1..=4 * n).partition(|i| matches!(i % 4, 0 | 1));
    Labeling::new(first.into_iter().chain(second).collect())
}

/// Balanced labeling of `K_{2n} - M`: the endpoints `2i, 2i+1` of the
/// `(i+1)`-th removed matching edge get labels `i + 1` and `2n - i`.
pub fn label_complete_minus_matching(n: usize) -> Result<Labeling> {
    if n < 1 {
        return Err(Error::param("n", "K_{2n} - M needs n >= 1"));
    }
    let values = (0..n).flat_map(|i| [i + 1, 2 * n - i]).collect();
    Labeling::new(values)
}

/// Checks the shared preconditions of the product constructions and
/// returns `h_j` for `j = 1..=t`, the vertex of `H` carrying label `j`.
fn normalized_factor(g: &Graph, h: &Graph, hl: &Labeling) -> Result<Vec<usize>> {
    if g.regularity().is_none() {
        return Err(Error::pre("G must be regular"));
    }
    let report = verify_balanced(h, hl)?;
    if !report.is_balanced {
        return Err(Error::pre(
            "the labeling of H is not balanced distance magic",
        ));
    }
    Ok((1..=h.order()).map(|j| hl.vertex_with_label(j)).collect())
}

/// `ℓ(g_i, h_j) = (j-1)p + i` for `j <= t/2`, `jp - i + 1` otherwise, with
/// `p = |V(G)|`, `t = |V(H)|`, 1-based `i, j`.
fn layered_labeling(p: usize, h_by_label: &[usize]) -> Labeling {
    let t = h_by_label.len();
    let mut values = vec![0; p * t];
    for (j0, &hv) in h_by_label.iter().enumerate() {
        let j = j0 + 1;
        for i in 1..=p {
            let label = if 2 * j <= t {
                (j - 1) * p + i
            } else {
                j * p - i + 1
            };
            values[(i - 1) * t + hv] = label;
        }
    }
    Labeling::new(values).expect("layered labeling is a bijection")
}

/// Balanced labeling of `G ∘ H` from a regular `G` and a balanced
/// labeling `hl` of `H`. The magic constant is
/// `(t r_G + r_H)(tp + 1) / 2`.
pub fn label_lexicographic(g: &Graph, h: &Graph, hl: &Labeling) -> Result<Labeling> {
    let order = normalized_factor(g, h, hl)?;
    Ok(layered_labeling(g.order(), &order))
}

/// Balanced labeling of `G × H` from a regular `G` and a balanced labeling
/// `hl` of `H`. The magic constant is `(r_H r_G / 2)(pt + 1)`.
pub fn label_direct(g: &Graph, h: &Graph, hl: &Labeling) -> Result<Labeling> {
    let order = normalized_factor(g, h, hl)?;
    Ok(layered_labeling(g.order(), &order))
}

/// Labels of `C_m × C_n` as an `m × n` grid, `entries[i][j] = ℓ(v_{i,j})`.
/// Vertex `v_{i,j}` is product id `i * n + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridLabeling {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<usize>>,
}

/// Line order of the grid text format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Row `m - 1` first, row 0 last, so `v_{0,0}` sits in the lower left.
    #[default]
    RowZeroLast,
    RowZeroFirst,
}

impl GridLabeling {
    pub fn new(entries: Vec<Vec<usize>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(i) = entries.iter().position(|r| r.len() != cols) {
            return Err(Error::param(
                "entries",
                format!("row {i} has {} entries, expected {cols}", entries[i].len()),
            ));
        }
        let grid = GridLabeling {
            rows,
            cols,
            entries,
        };
        grid.to_labeling()?;
        Ok(grid)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn to_labeling(&self) -> Result<Labeling> {
        Labeling::new(self.entries.concat())
    }

    pub fn from_labeling(rows: usize, cols: usize, l: &Labeling) -> Result<Self> {
        if rows * cols != l.len() {
            return Err(Error::SizeMismatch {
                labels: l.len(),
                vertices: rows * cols,
            });
        }
        let entries = l
            .values()
            .chunks(cols.max(1))
            .map(<[usize]>::to_vec)
            .collect();
        Ok(GridLabeling {
            rows,
            cols,
            entries: if rows == 0 { Vec::new() } else { entries },
        })
    }

    /// Header `m n k` followed by the rows, space separated.
    pub fn to_text(&self, k: u64, orientation: Orientation) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, k);
        let mut emit = |row: &Vec<usize>| {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        };
        match orientation {
            Orientation::RowZeroLast => self.entries.iter().rev().for_each(&mut emit),
            Orientation::RowZeroFirst => self.entries.iter().for_each(&mut emit),
        }
        out
    }

    /// Parses [`GridLabeling::to_text`] output, returning the grid and the
    /// header's `k`.
    pub fn parse(text: &str, orientation: Orientation) -> Result<(Self, u64)> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            reason: "missing header `m n k`".into(),
        })?;
        let head = parse_row(hline, header)?;
        let [m, n, k] = head[..] else {
            return Err(Error::Parse {
                line: hline,
                reason: "header must be `m n k`".into(),
            });
        };
        let mut entries = Vec::with_capacity(m);
        for (line, body) in lines {
            let row = parse_row(line, body)?;
            if row.len() != n {
                return Err(Error::Parse {
                    line,
                    reason: format!("expected {n} entries, found {}", row.len()),
                });
            }
            if entries.len() == m {
                return Err(Error::Parse {
                    line,
                    reason: format!("more than {m} rows"),
                });
            }
            entries.push(row);
        }
        if entries.len() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                reason: format!("expected {m} rows, found {}", entries.len()),
            });
        }
        if orientation == Orientation::RowZeroLast {
            entries.reverse();
        }
        Ok((GridLabeling::new(entries)?, k as u64))
    }
}

fn parse_row(line: usize, body: &str) -> Result<Vec<usize>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                line,
                reason: format!("`{tok}` is not a nonnegative integer"),
            })
        })
        .collect()
}

impl fmt::Display for GridLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.iter().rev() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            writeln!(f, "{}", cells.join(""))?;
        }
        Ok(())
    }
}

/// The five stages of the `C_m × C_n` construction, in fill order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleStage {
    /// Even columns of row 0.
    RowZero,
    /// Even columns of row 2, mirrored from row 0.
    RowTwo,
    /// Even columns of rows `4, 6, .., m - 2`.
    EvenRows,
    /// Even columns of every odd row.
    OddRows,
    /// Every odd column.
    OddColumns,
}

impl CycleStage {
    pub const ALL: [CycleStage; 5] = [
        CycleStage::RowZero,
        CycleStage::RowTwo,
        CycleStage::EvenRows,
        CycleStage::OddRows,
        CycleStage::OddColumns,
    ];

    /// The two label intervals (inclusive) a stage draws from on
    /// `C_m × C_n`.
    pub fn label_ranges(self, m: usize, n: usize) -> [(usize, usize); 2] {
        let mn = m * n;
        match self {
            CycleStage::RowZero => [(1, n / 4), (mn - n / 4 + 1, mn)],
            CycleStage::RowTwo => [(n / 4 + 1, n / 2), (mn - n / 2 + 1, mn - n / 4)],
            CycleStage::EvenRows => [(n / 2 + 1, mn / 8), (7 * mn / 8 + 1, mn - n / 2)],
            CycleStage::OddRows => [(mn / 8 + 1, mn / 4), (3 * mn / 4 + 1, 7 * mn / 8)],
            CycleStage::OddColumns => [(mn / 4 + 1, mn / 2), (mn / 2 + 1, 3 * mn / 4)],
        }
    }
}

fn check_cycle_product(m: usize, n: usize) -> Result<()> {
    for (name, x) in [("m", m), ("n", n)] {
        if x == 4 {
            return Err(Error::param(
                name,
                "C_4 factor: use label_direct with the balanced C_4 labeling instead",
            ));
        }
        if x % 4 != 0 || x < 8 {
            return Err(Error::param(
                name,
                format!("needs a multiple of 4 greater than 4, got {x}"),
            ));
        }
    }
    Ok(())
}

// Moves a label up by `step` if it lies in the lower half, down otherwise.
#[inline]
fn shift(label: usize, step: usize, half: usize) -> usize {
    if label <= half {
        label + step
    } else {
        label - step
    }
}

fn build_cycle_product(m: usize, n: usize) -> Result<(GridLabeling, Vec<Vec<CycleStage>>)> {
    check_cycle_product(m, n)?;
    let mn = m * n;
    let half = mn / 2;
    let mut grid = vec![vec![0usize; n]; m];
    let mut stage = vec![vec![CycleStage::RowZero; n]; m];

    // Row 0, columns 4j and 4j + 2.
    let (ceil8, floor8) = (n.div_ceil(8), n / 8);
    for j in 0..n / 4 {
        grid[0][4 * j] = if j < ceil8 { 2 * j + 1 } else { n / 2 - 2 * j };
        grid[0][4 * j + 2] = if j < floor8 {
            mn - 2 * j - 1
        } else {
            mn - n / 2 + 2 * j + 2
        };
    }

    // Row 2 mirrors row 0: column j reads column n - 2 - j.
    for j in (0..n).step_by(2) {
        grid[2][j] = shift(grid[0][n - 2 - j], n / 4, half);
        stage[2][j] = CycleStage::RowTwo;
    }

    // Rows 4, 6, .., m - 2 from the even row four below.
    for i in 2..m / 2 {
        for j in (0..n).step_by(2) {
            grid[2 * i][j] = shift(grid[2 * i - 4][j], n / 2, half);
            stage[2 * i][j] = CycleStage::EvenRows;
        }
    }

    // Odd rows from the even row beneath.
    for i in 0..m / 2 {
        for j in (0..n).step_by(2) {
            grid[2 * i + 1][j] = shift(grid[2 * i][j], mn / 8, half);
            stage[2 * i + 1][j] = CycleStage::OddRows;
        }
    }

    // Odd columns from the even column to their left.
    for i in 0..m {
        for c in (1..n).step_by(2) {
            grid[i][c] = shift(grid[i][c - 1], mn / 4, half);
            stage[i][c] = CycleStage::OddColumns;
        }
    }

    Ok((GridLabeling::new(grid)?, stage))
}

/// Distance magic (not balanced) labeling of `C_m × C_n` for
/// `m, n ≡ 0 (mod 4)`, both greater than 4, with magic constant
/// `2mn + 2`.
pub fn label_cycle_product(m: usize, n: usize) -> Result<GridLabeling> {
    build_cycle_product(m, n).map(|(grid, _)| grid)
}

/// Which construction stage assigned each cell of
/// [`label_cycle_product`]'s grid.
pub fn cycle_product_stages(m: usize, n: usize) -> Result<Vec<Vec<CycleStage>>> {
    build_cycle_product(m, n).map(|(_, stages)| stages)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleProductClass {
    BalancedDistanceMagic,
    DistanceMagicNotBalanced,
    NotDistanceMagic,
}

impl CycleProductClass {
    pub fn name(self) -> &'static str {
        match self {
            CycleProductClass::BalancedDistanceMagic => "balanced_distance_magic",
            CycleProductClass::DistanceMagicNotBalanced => "distance_magic_not_balanced",
            CycleProductClass::NotDistanceMagic => "not_distance_magic",
        }
    }

    pub fn is_distance_magic(self) -> bool {
        self != CycleProductClass::NotDistanceMagic
    }
}

impl fmt::Display for CycleProductClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_cycle_len(name: &'static str, x: usize) -> Result<()> {
    if x < 3 {
        return Err(Error::param(
            name,
            format!("cycle length must be >= 3, got {x}"),
        ));
    }
    Ok(())
}

/// Classifies `C_m × C_n`.
pub fn classify_cycle_direct(m: usize, n: usize) -> Result<CycleProductClass> {
    check_cycle_len("m", m)?;
    check_cycle_len("n", n)?;
    Ok(if m == 4 || n == 4 {
        CycleProductClass::BalancedDistanceMagic
    } else if m.is_multiple_of(4) && n.is_multiple_of(4) {
        CycleProductClass::DistanceMagicNotBalanced
    } else {
        CycleProductClass::NotDistanceMagic
    })
}

/// Whether `C_m □ C_n` is distance magic: iff `m = n ≡ 2 (mod 4)`.
pub fn classify_cycle_cartesian(m: usize, n: usize) -> Result<bool> {
    check_cycle_len("m", m)?;
    check_cycle_len("n", n)?;
    Ok(m == n && m % 4 == 2)
}

/// Whether `C_n` is distance magic: iff `n = 4`.
pub fn classify_cycle(n: usize) -> Result<bool> {
    check_cycle_len("n", n)?;
    Ok(n == 4)
}

/// Whether `C_n ∘ C_m` is distance magic: iff `m = 4`.
pub fn classify_lex_cycles(n: usize, m: usize) -> Result<bool> {
    check_cycle_len("n", n)?;
    check_cycle_len("m", m)?;
    Ok(m == 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::magic::{verify_balanced, verify_distance_magic};
    use crate::product::{product, ProductKind};

    #[test]
    fn c4_labels() {
        let l = label_c4();
        assert_eq!(l.values(), &[1, 2, 4, 3]);
        let r = verify_balanced(&generate(GraphKind::Cycle(4)).unwrap(), &l).unwrap();
        assert!(r.is_balanced);
        // antipodal twins
        assert_eq!(r.twin_map.unwrap(), vec![2, 3, 0, 1]);
    }

    #[test]
    fn complete_bipartite_small() {
        let l = label_complete_bipartite(1).unwrap();
        assert_eq!(l.values(), &[1, 4, 2, 3]);
        let l = label_complete_bipartite(2).unwrap();
        let g = generate(GraphKind::CompleteBipartite(4, 4)).unwrap();
        let r = verify_balanced(&g, &l).unwrap();
        assert!(r.is_balanced);
        assert_eq!(r.magic_constant, Some(18));
        assert!(label_complete_bipartite(0).is_err());
    }

    #[test]
    fn complete_minus_matching_small() {
        let l = label_complete_minus_matching(2).unwrap();
        assert_eq!(l.values(), &[1, 4, 2, 3]);
        let l = label_complete_minus_matching(3).unwrap();
        let g = generate(GraphKind::CompleteMinusPerfectMatching(6)).unwrap();
        assert_eq!(verify_balanced(&g, &l).unwrap().magic_constant, Some(14));
        let l = label_complete_minus_matching(1).unwrap();
        let r = verify_balanced(&Graph::empty(2), &l).unwrap();
        assert!(r.is_balanced && r.degenerate);
    }

    #[test]
    fn lexicographic_rejects_irregular_and_unbalanced() {
        let c4 = generate(GraphKind::Cycle(4)).unwrap();
        let p3 = generate(GraphKind::Path(3)).unwrap();
        assert!(label_lexicographic(&p3, &c4, &label_c4()).is_err());
        // odd empty H is never balanced
        let e3 = Graph::empty(3);
        assert!(label_lexicographic(&c4, &e3, &Labeling::identity(3)).is_err());
        // C4 with a non-magic labeling
        assert!(label_direct(&c4, &c4, &Labeling::identity(4)).is_err());
    }

    #[test]
    fn lexicographic_c4_formula() {
        // G ∘ C_4 with the C_4 labeling normalized: labels (j-1)p+i / jp-i+1.
        let c3 = generate(GraphKind::Cycle(3)).unwrap();
        let c4 = generate(GraphKind::Cycle(4)).unwrap();
        let l = label_lexicographic(&c3, &c4, &label_c4()).unwrap();
        let p = product(ProductKind::Lexicographic, &c3, &c4);
        let r = verify_balanced(p.base(), &l).unwrap();
        assert_eq!(r.magic_constant, Some(65));
        assert!(r.is_balanced);
    }

    #[test]
    fn starting_conditions_16() {
        let grid = label_cycle_product(16, 16).unwrap();
        assert_eq!(
            [
                grid.get(0, 0),
                grid.get(0, 4),
                grid.get(0, 8),
                grid.get(0, 12)
            ],
            [1, 3, 4, 2]
        );
        assert_eq!(
            grid.entries()[0],
            vec![1, 65, 255, 191, 3, 67, 253, 189, 4, 68, 254, 190, 2, 66, 256, 192]
        );
    }

    #[test]
    fn cycle_product_8x8() {
        let grid = label_cycle_product(8, 8).unwrap();
        let g = product(
            ProductKind::Direct,
            &generate(GraphKind::Cycle(8)).unwrap(),
            &generate(GraphKind::Cycle(8)).unwrap(),
        );
        let r = verify_distance_magic(g.base(), &grid.to_labeling().unwrap()).unwrap();
        assert_eq!(r.magic_constant, Some(130));
    }

    #[test]
    fn cycle_product_rejects_bad_sizes() {
        for (m, n, bad) in [
            (4, 8, "m"),
            (8, 4, "n"),
            (6, 8, "m"),
            (8, 10, "n"),
            (0, 8, "m"),
        ] {
            match label_cycle_product(m, n) {
                Err(Error::InvalidParameter { name, .. }) => assert_eq!(name, bad),
                other => panic!("({m},{n}): {other:?}"),
            }
        }
        let msg = label_cycle_product(4, 8).unwrap_err().to_string();
        assert!(msg.contains("label_direct"), "{msg}");
    }

    #[test]
    fn grid_text_roundtrip() {
        let grid = label_cycle_product(8, 12).unwrap();
        for o in [Orientation::RowZeroLast, Orientation::RowZeroFirst] {
            let text = grid.to_text(194, o);
            let (back, k) = GridLabeling::parse(&text, o).unwrap();
            assert_eq!((back, k), (grid.clone(), 194));
        }
        let text = grid.to_text(194, Orientation::RowZeroLast);
        assert!(text.starts_with("8 12 194\n"));
        assert!(text.ends_with(&format!(
            "{}\n",
            grid.entries()[0]
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )));
    }

    #[test]
    fn classifiers() {
        use CycleProductClass::*;
        assert_eq!(classify_cycle_direct(4, 7).unwrap(), BalancedDistanceMagic);
        assert_eq!(
            classify_cycle_direct(8, 12).unwrap(),
            DistanceMagicNotBalanced
        );
        assert_eq!(classify_cycle_direct(6, 6).unwrap(), NotDistanceMagic);
        assert_eq!(classify_cycle_direct(4, 4).unwrap(), BalancedDistanceMagic);
        assert_eq!(classify_cycle_direct(8, 6).unwrap(), NotDistanceMagic);
        assert!(classify_cycle_direct(2, 5).is_err());

        assert!(classify_cycle_cartesian(6, 6).unwrap());
        assert!(!classify_cycle_cartesian(4, 4).unwrap());
        assert!(!classify_cycle_cartesian(6, 10).unwrap());
        assert!(classify_cycle(4).unwrap());
        assert!(!classify_cycle(6).unwrap());
        assert!(classify_lex_cycles(5, 4).unwrap());
        assert!(!classify_lex_cycles(5, 6).unwrap());
    }
}
