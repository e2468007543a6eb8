//! Label swaps on balanced labelings of direct products, the H-layer
//! coupling procedure built from them, and recovery of a balanced labeling
//! of a factor.
//!
//! Throughout, a product vertex is addressed by its coordinate pair
//! `(g, h)`, and the twin of a vertex is the one carrying the complementary
//! label `|V| + 1 - ℓ`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::magic::{verify_balanced, Labeling};
use crate::product::{ProductGraph, ProductKind};

/// A product vertex as `(g, h)`.
pub type Pair = (usize, usize);

/// A balanced distance magic labeling of a direct or lexicographic
/// product. Twins are derived from the labeling on demand, so they never
/// go stale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedProductLabeling {
    product: ProductGraph,
    labeling: Labeling,
}

impl BalancedProductLabeling {
    pub fn new(product: ProductGraph, labeling: Labeling) -> Result<Self> {
        if product.kind() == ProductKind::Cartesian {
            return Err(Error::WrongProductKind {
                expected: "direct or lexicographic",
                actual: product.kind().name(),
            });
        }
        if !verify_balanced(product.base(), &labeling)?.is_balanced {
            return Err(Error::pre("labeling is not balanced distance magic"));
        }
        Ok(BalancedProductLabeling { product, labeling })
    }

    pub fn product(&self) -> &ProductGraph {
        &self.product
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn into_labeling(self) -> Labeling {
        self.labeling
    }

    /// The twin of `(g, h)`.
    pub fn twin(&self, (g, h): Pair) -> Pair {
        let v = self.product.encode(g, h);
        self.product.decode(self.labeling.complement_vertex(v))
    }

    /// `twins()[v]` is the twin of product vertex `v`.
    pub fn twins(&self) -> Vec<usize> {
        (0..self.labeling.len())
            .map(|v| self.labeling.complement_vertex(v))
            .collect()
    }

    pub fn are_twins(&self, a: Pair, b: Pair) -> bool {
        a != b && self.twin(a) == b
    }

    /// Every vertex of `^gH` has its twin in `^gH`.
    pub fn h_layer_closed(&self, g: usize) -> bool {
        (0..self.product.hsize()).all(|h| self.twin((g, h)).0 == g)
    }

    /// Every vertex of `G^h` has its twin in `G^h`.
    pub fn g_layer_closed(&self, h: usize) -> bool {
        (0..self.product.gsize()).all(|g| self.twin((g, h)).1 == h)
    }

    /// The twin of `(g, h)` is `(g2, h)` for every `h`.
    pub fn layers_coupled(&self, g: usize, g2: usize) -> bool {
        g != g2 && (0..self.product.hsize()).all(|h| self.twin((g, h)) == (g2, h))
    }

    fn union_closed(&self, g: usize, g2: usize) -> bool {
        [g, g2].iter().all(|&x| {
            (0..self.product.hsize()).all(|h| {
                let t = self.twin((x, h)).0;
                t == g || t == g2
            })
        })
    }

    fn swap(&mut self, a: Pair, b: Pair) {
        let (u, v) = (self.product.encode(a.0, a.1), self.product.encode(b.0, b.1));
        self.labeling.swap_vertices(u, v);
    }

    fn check_pair(&self, name: &'static str, (g, h): Pair) -> Result<()> {
        if g >= self.product.gsize() || h >= self.product.hsize() {
            return Err(Error::param(
                name,
                format!(
                    "({g}, {h}) outside {} x {}",
                    self.product.gsize(),
                    self.product.hsize()
                ),
            ));
        }
        Ok(())
    }
}

/// Which of the three twin-creating swaps was applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapKind {
    /// Twins `(g,h), (g',h')` with `g != g'`, `h != h'`: swap `(g',h')`
    /// and `(g',h)`.
    CrossTwin,
    /// Twins `(g,h), (g',h)` and `(g,h1), (g,h2)`: swap `(g,h2)` and
    /// `(g',h1)`.
    InLayerTwin,
    /// Twins `(g,h), (g',h)` and `(g,h'), (g'',h')`: swap `(g',h')` and
    /// `(g'',h')`.
    ThirdLayerTwin,
}

/// One label exchange performed by a swap, with the twin pair it
/// establishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapRecord {
    pub kind: SwapKind,
    pub swapped: (Pair, Pair),
    pub new_twins: (Pair, Pair),
}

fn cross_twin_pre(bl: &BalancedProductLabeling, v1: Pair, v2: Pair) -> Result<()> {
    bl.product.require(ProductKind::Direct)?;
    bl.check_pair("v1", v1)?;
    bl.check_pair("v2", v2)?;
    if !bl.are_twins(v1, v2) {
        return Err(Error::pre(format!("{v1:?} and {v2:?} are not twins")));
    }
    if v1.0 == v2.0 {
        return Err(Error::pre("twins lie in the same H-layer (g = g')"));
    }
    if v1.1 == v2.1 {
        return Err(Error::pre("twins lie in the same G-layer (h = h')"));
    }
    Ok(())
}

fn cross_twin_apply(bl: &mut BalancedProductLabeling, v1: Pair, v2: Pair) -> SwapRecord {
    let (g, h) = v1;
    let (g2, h2) = v2;
    bl.swap((g2, h2), (g2, h));
    SwapRecord {
        kind: SwapKind::CrossTwin,
        swapped: ((g2, h2), (g2, h)),
        new_twins: ((g, h), (g2, h)),
    }
}

/// Twins `(g,h)` and `(g',h')` with `g != g'` and `h != h'`: exchanging the
/// labels of `(g',h')` and `(g',h)` keeps the labeling balanced and makes
/// `(g,h), (g',h)` twins.
pub fn swap_cross_twin(
    bl: &BalancedProductLabeling,
    v1: Pair,
    v2: Pair,
) -> Result<BalancedProductLabeling> {
    cross_twin_pre(bl, v1, v2)?;
    let mut out = bl.clone();
    cross_twin_apply(&mut out, v1, v2);
    debug_assert!(out.are_twins(v1, (v2.0, v1.1)));
    Ok(out)
}

fn in_layer_twin_pre(
    bl: &BalancedProductLabeling,
    g: usize,
    g2: usize,
    h: usize,
    h1: usize,
    h2: usize,
) -> Result<()> {
    bl.product.require(ProductKind::Direct)?;
    for (name, p) in [
        ("(g,h)", (g, h)),
        ("(g',h)", (g2, h)),
        ("(g,h1)", (g, h1)),
        ("(g,h2)", (g, h2)),
    ] {
        bl.check_pair(name, p)?;
    }
    if h1 == h2 {
        return Err(Error::pre("h1 = h2: a vertex is not its own twin"));
    }
    if h == h1 || h == h2 {
        return Err(Error::pre("h must differ from h1 and h2"));
    }
    if !bl.are_twins((g, h), (g2, h)) {
        return Err(Error::pre(format!(
            "({g}, {h}) and ({g2}, {h}) are not twins"
        )));
    }
    if !bl.are_twins((g, h1), (g, h2)) {
        return Err(Error::pre(format!(
            "({g}, {h1}) and ({g}, {h2}) are not twins"
        )));
    }
    Ok(())
}

fn in_layer_twin_apply(
    bl: &mut BalancedProductLabeling,
    g: usize,
    g2: usize,
    h1: usize,
    h2: usize,
) -> SwapRecord {
    bl.swap((g, h2), (g2, h1));
    SwapRecord {
        kind: SwapKind::InLayerTwin,
        swapped: ((g, h2), (g2, h1)),
        new_twins: ((g, h1), (g2, h1)),
    }
}

/// Twins `(g,h), (g',h)` and `(g,h1), (g,h2)`: exchanging the labels of
/// `(g,h2)` and `(g',h1)` makes `(g,h1), (g',h1)` twins. Requires `h`,
/// `h1`, `h2` pairwise distinct.
pub fn swap_in_layer_twin(
    bl: &BalancedProductLabeling,
    g: usize,
    g2: usize,
    h: usize,
    h1: usize,
    h2: usize,
) -> Result<BalancedProductLabeling> {
    in_layer_twin_pre(bl, g, g2, h, h1, h2)?;
    let mut out = bl.clone();
    in_layer_twin_apply(&mut out, g, g2, h1, h2);
    debug_assert!(out.are_twins((g, h1), (g2, h1)));
    Ok(out)
}

fn third_layer_twin_pre(
    bl: &BalancedProductLabeling,
    g: usize,
    g2: usize,
    g3: usize,
    h: usize,
    h2: usize,
) -> Result<()> {
    bl.product.require(ProductKind::Direct)?;
    for (name, p) in [
        ("(g,h)", (g, h)),
        ("(g',h)", (g2, h)),
        ("(g,h')", (g, h2)),
        ("(g'',h')", (g3, h2)),
    ] {
        bl.check_pair(name, p)?;
    }
    if g3 == g2 {
        return Err(Error::pre("g'' must differ from g'"));
    }
    if !bl.are_twins((g, h), (g2, h)) {
        return Err(Error::pre(format!(
            "({g}, {h}) and ({g2}, {h}) are not twins"
        )));
    }
    if !bl.are_twins((g, h2), (g3, h2)) {
        return Err(Error::pre(format!(
            "({g}, {h2}) and ({g3}, {h2}) are not twins"
        )));
    }
    Ok(())
}

fn third_layer_twin_apply(
    bl: &mut BalancedProductLabeling,
    g: usize,
    g2: usize,
    g3: usize,
    h2: usize,
) -> SwapRecord {
    bl.swap((g2, h2), (g3, h2));
    SwapRecord {
        kind: SwapKind::ThirdLayerTwin,
        swapped: ((g2, h2), (g3, h2)),
        new_twins: ((g, h2), (g2, h2)),
    }
}

/// Twins `(g,h), (g',h)` and `(g,h'), (g'',h')` with `g'' != g'`:
/// exchanging the labels of `(g',h')` and `(g'',h')` makes `(g,h'),
/// (g',h')` twins.
pub fn swap_third_layer_twin(
    bl: &BalancedProductLabeling,
    g: usize,
    g2: usize,
    g3: usize,
    h: usize,
    h2: usize,
) -> Result<BalancedProductLabeling> {
    third_layer_twin_pre(bl, g, g2, g3, h, h2)?;
    let mut out = bl.clone();
    third_layer_twin_apply(&mut out, g, g2, g3, h2);
    debug_assert!(out.are_twins((g, h2), (g2, h2)));
    Ok(out)
}

/// Result of [`couple_layers`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoupleOutcome {
    /// `^gH` is closed under twins.
    ClosedHLayer(usize),
    /// The H-layers are paired so that the twin of `(g, h)` is `(g', h)`;
    /// the pairs partition `V(G)` and every G-layer is twin-closed.
    CoupledPairs(Vec<(usize, usize)>),
}

/// Full record of a [`couple_layers`] run.
#[derive(Debug, Clone)]
pub struct CoupleRun {
    pub labeling: BalancedProductLabeling,
    pub outcome: CoupleOutcome,
    pub swaps: Vec<SwapRecord>,
}

/// Rewrites a balanced labeling of `G × H` until either some H-layer is
/// closed under twins or all H-layers are coupled.
pub fn couple_layers(
    bl: &BalancedProductLabeling,
) -> Result<(BalancedProductLabeling, CoupleOutcome)> {
    couple_layers_traced(bl).map(|run| (run.labeling, run.outcome))
}

/// [`couple_layers`], also returning every swap in order.
///
/// Choices are deterministic: the smallest `g` left in `A`, and within a
/// layer the vertex with the smallest `h` first. Steps 4 to 6 are repeated
/// until `^gH` and `^g'H` are coupled; step 4 also treats twins of the form
/// `(g', h2)` with `h2 != h1`, which a single pass would otherwise leave
/// behind. Every swap creates one new coupled pair `(g,x), (g',x)` and
/// never breaks an existing one, so a layer pair costs at most `|V(H)|`
/// swaps.
pub fn couple_layers_traced(bl: &BalancedProductLabeling) -> Result<CoupleRun> {
    let p = bl.product();
    p.require(ProductKind::Direct)?;
    if p.base().edge_count() == 0 {
        return Err(Error::pre("product has no edges; twins are unconstrained"));
    }
    let (gsize, hsize) = (p.gsize(), p.hsize());
    let mut work = bl.clone();
    let mut swaps = Vec::new();
    let mut remaining: BTreeSet<usize> = (0..gsize).collect();
    let mut pairs = Vec::new();

    let finish = |work, outcome, swaps| {
        Ok(CoupleRun {
            labeling: work,
            outcome,
            swaps,
        })
    };

    loop {
        // Step 2.
        let Some(&g) = remaining.first() else {
            return finish(work, CoupleOutcome::CoupledPairs(pairs), swaps);
        };
        if remaining.len() == 1 {
            debug_assert!(work.h_layer_closed(g));
            return finish(work, CoupleOutcome::ClosedHLayer(g), swaps);
        }

        // Step 3.
        if work.h_layer_closed(g) {
            return finish(work, CoupleOutcome::ClosedHLayer(g), swaps);
        }
        let (h, (g2, h2)) = (0..hsize)
            .map(|h| (h, work.twin((g, h))))
            .find(|&(_, t)| t.0 != g)
            .expect("layer is not closed");
        debug_assert!(remaining.contains(&g2));
        if h2 != h {
            swaps.push(cross_twin_apply(&mut work, (g, h), (g2, h2)));
        }

        let mut skip_to_step6 = work.union_closed(g, g2);
        while !work.layers_coupled(g, g2) {
            if !skip_to_step6 {
                // Step 4: twins (g'', h2) with h2 != h1.
                while let Some((h1, t)) = (0..hsize)
                    .map(|h1| (h1, work.twin((g, h1))))
                    .find(|&(h1, t)| t.0 != g && t.1 != h1)
                {
                    swaps.push(cross_twin_apply(&mut work, (g, h1), t));
                }
                // Step 5: twins (g'', h1) with g'' outside {g, g'}.
                while let Some((h1, g3)) = (0..hsize)
                    .map(|h1| (h1, work.twin((g, h1))))
                    .find(|&(h1, t)| t.1 == h1 && t.0 != g && t.0 != g2)
                    .map(|(h1, t)| (h1, t.0))
                {
                    debug_assert!(third_layer_twin_pre(&work, g, g2, g3, h, h1).is_ok());
                    swaps.push(third_layer_twin_apply(&mut work, g, g2, g3, h1));
                }
            }
            skip_to_step6 = false;
            // Step 6: twins inside ^gH.
            while let Some((h1, h2)) = (0..hsize)
                .map(|h1| (h1, work.twin((g, h1))))
                .find(|&(h1, t)| t.0 == g && t.1 != h1)
                .map(|(h1, t)| (h1, t.1))
            {
                debug_assert!(in_layer_twin_pre(&work, g, g2, h, h1, h2).is_ok());
                swaps.push(in_layer_twin_apply(&mut work, g, g2, h1, h2));
            }
            if swaps.len() > gsize * hsize {
                return Err(Error::pre("layer coupling failed to converge"));
            }
        }

        // Step 7.
        remaining.remove(&g);
        remaining.remove(&g2);
        pairs.push((g, g2));
    }
}

/// The factor a labeling was recovered for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    G,
    H,
}

// Pairs up the twins within `layer`, listing the lower-labeled member
// first, in increasing order of that label; the i-th pair gets labels i and
// size + 1 - i on the factor.
fn labeling_from_closed_layer(
    bl: &BalancedProductLabeling,
    layer: &[usize],
    project: impl Fn(usize) -> usize,
    size: usize,
) -> Result<Labeling> {
    let mut members: Vec<(usize, usize)> =
        layer.iter().map(|&v| (bl.labeling.label(v), v)).collect();
    members.sort_unstable();
    let mut values = vec![0; size];
    let mut i = 0;
    for &(label, v) in &members {
        let t = bl.labeling.complement_vertex(v);
        if bl.labeling.label(t) > label {
            i += 1;
            values[project(v)] = i;
            values[project(t)] = size + 1 - i;
        }
    }
    Labeling::new(values)
}

fn check_outcome(bl: &BalancedProductLabeling, outcome: &CoupleOutcome) -> Result<()> {
    let gsize = bl.product.gsize();
    match outcome {
        CoupleOutcome::ClosedHLayer(g) => {
            if *g >= gsize || !bl.h_layer_closed(*g) {
                return Err(Error::pre(format!(
                    "H-layer {g} is not closed under twins for this labeling"
                )));
            }
        }
        CoupleOutcome::CoupledPairs(pairs) => {
            let mut seen = vec![false; gsize];
            for &(a, b) in pairs {
                for x in [a, b] {
                    if x >= gsize || std::mem::replace(&mut seen[x], true) {
                        return Err(Error::pre("coupled pairs do not partition V(G)"));
                    }
                }
                if !bl.layers_coupled(a, b) {
                    return Err(Error::pre(format!(
                        "H-layers {a} and {b} are not coupled for this labeling"
                    )));
                }
            }
            if seen.iter().any(|s| !s) || gsize == 0 {
                return Err(Error::pre("coupled pairs do not partition V(G)"));
            }
        }
    }
    Ok(())
}

/// Reads a balanced labeling of a factor off a coupling outcome: of `H`
/// from a twin-closed H-layer, of `G` from the twin-closed G-layer `G^0`
/// when the layers are coupled. Rejects outcomes that do not describe
/// `bl`.
pub fn extract_factor_labeling(
    bl: &BalancedProductLabeling,
    outcome: &CoupleOutcome,
) -> Result<(Factor, Labeling)> {
    check_outcome(bl, outcome)?;
    let p = &bl.product;
    let (factor, labeling) = match outcome {
        CoupleOutcome::ClosedHLayer(g) => {
            let layer = p.layer(crate::product::Axis::HLayer, *g)?;
            let l = labeling_from_closed_layer(bl, &layer, |v| p.decode(v).1, p.hsize())?;
            (Factor::H, l)
        }
        CoupleOutcome::CoupledPairs(_) => {
            let layer = p.layer(crate::product::Axis::GLayer, 0)?;
            debug_assert!(bl.g_layer_closed(0));
            let l = labeling_from_closed_layer(bl, &layer, |v| p.decode(v).0, p.gsize())?;
            (Factor::G, l)
        }
    };
    let graph = match factor {
        Factor::G => p.g(),
        Factor::H => p.h(),
    };
    if !verify_balanced(graph, &labeling)?.is_balanced {
        return Err(Error::pre("recovered factor labeling is not balanced"));
    }
    Ok((factor, labeling))
}

/// Balanced labeling of `H` recovered from a balanced labeling of `G ∘ H`.
/// For non-empty `H` every twin pair lies inside an H-layer, so `^0H` is
/// read directly; an edgeless `H` of even order takes the identity.
pub fn extract_lexicographic_factor(bl: &BalancedProductLabeling) -> Result<Labeling> {
    let p = &bl.product;
    p.require(ProductKind::Lexicographic)?;
    let t = p.hsize();
    if p.h().edge_count() == 0 {
        if t % 2 == 1 {
            return Err(Error::pre(
                "edgeless H of odd order has no balanced labeling",
            ));
        }
        return Ok(Labeling::identity(t));
    }
    let (_, l) = extract_factor_labeling(bl, &CoupleOutcome::ClosedHLayer(0))?;
    Ok(l)
}

/// Knuth's MMIX linear congruential generator; the high 32 bits of the
/// state are used as output.
#[derive(Debug, Clone)]
pub struct Lcg(u64);

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u32(&mut self) -> u32 {
        self.0 = self
            .0
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.0 >> 32) as u32
    }

    /// Uniform-ish index in `0..bound` by modulo reduction.
    pub fn below(&mut self, bound: usize) -> usize {
        self.next_u32() as usize % bound
    }
}

/// Permutes labels within every class of vertices sharing a neighborhood,
/// which preserves every weight and the twin condition.
///
/// Classes are visited by smallest member id; inside a class the labels,
/// listed by ascending vertex id, get a Fisher-Yates shuffle (`i` from the
/// top down, swap with `Lcg::below(i + 1)`) from one generator seeded with
/// `seed`.
pub fn scramble_balanced(bl: &BalancedProductLabeling, seed: u64) -> BalancedProductLabeling {
    let base = bl.product.base();
    let mut classes: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for v in 0..base.order() {
        classes.entry(base.adj(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = classes.into_values().filter(|c| c.len() > 1).collect();
    classes.sort_unstable_by_key(|c| c[0]);

    let mut rng = Lcg::new(seed);
    let mut values = bl.labeling.values().to_vec();
    for class in &classes {
        let mut labels: Vec<usize> = class.iter().map(|&v| values[v]).collect();
        for i in (1..labels.len()).rev() {
            labels.swap(i, rng.below(i + 1));
        }
        for (&v, l) in class.iter().zip(labels) {
            values[v] = l;
        }
    }
    let labeling = Labeling::new(values).expect("permutation of a bijection");
    debug_assert!(verify_balanced(base, &labeling).unwrap().is_balanced);
    BalancedProductLabeling {
        product: bl.product.clone(),
        labeling,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{label_c4, label_direct, label_lexicographic};
    use crate::graph::{generate, Graph, GraphKind};
    use crate::magic::weights;
    use crate::product::product;

    fn cycle(n: usize) -> Graph {
        generate(GraphKind::Cycle(n)).unwrap()
    }

    fn direct_with_c4(g: usize) -> BalancedProductLabeling {
        let (gg, c4) = (cycle(g), cycle(4));
        let l = label_direct(&gg, &c4, &label_c4()).unwrap();
        BalancedProductLabeling::new(product(ProductKind::Direct, &gg, &c4), l).unwrap()
    }

    fn cross_twin(bl: &BalancedProductLabeling) -> Option<(Pair, Pair)> {
        let p = bl.product();
        (0..p.base().order())
            .map(|v| p.decode(v))
            .map(|a| (a, bl.twin(a)))
            .find(|&(a, b)| a.0 != b.0 && a.1 != b.1)
    }

    fn assert_swap_sound(before: &BalancedProductLabeling, after: &BalancedProductLabeling) {
        let base = before.product().base();
        assert!(verify_balanced(base, after.labeling()).unwrap().is_balanced);
        assert_eq!(
            weights(base, before.labeling()).unwrap(),
            weights(base, after.labeling()).unwrap()
        );
        let changed = (0..base.order())
            .filter(|&v| before.labeling().label(v) != after.labeling().label(v))
            .count();
        assert_eq!(changed, 2);
    }

    #[test]
    fn rejects_unbalanced_or_cartesian() {
        let c4 = cycle(4);
        let p = product(ProductKind::Direct, &c4, &c4);
        let n = p.base().order();
        assert!(BalancedProductLabeling::new(p, Labeling::identity(n)).is_err());
        let p = product(ProductKind::Cartesian, &c4, &c4);
        assert!(matches!(
            BalancedProductLabeling::new(p, Labeling::identity(16)),
            Err(Error::WrongProductKind { .. })
        ));
    }

    #[test]
    fn cross_twin_on_scrambled_c4xc4() {
        let bl = scramble_balanced(&direct_with_c4(4), 0);
        let (a, b) = cross_twin(&bl).expect("seed 0 produces a cross twin pair");
        let out = swap_cross_twin(&bl, a, b).unwrap();
        assert_swap_sound(&bl, &out);
        assert!(out.are_twins(a, (b.0, a.1)));
    }

    #[test]
    fn cross_twin_rejects_same_g_layer_twins() {
        let bl = direct_with_c4(4);
        // label_direct puts twins inside H-layers: (g,h) ~ (g,h')
        let t = bl.twin((0, 0));
        assert_eq!(t.0, 0);
        let err = swap_cross_twin(&bl, (0, 0), t).unwrap_err();
        assert!(err.to_string().contains("g = g'"), "{err}");
        let err = swap_cross_twin(&bl, (0, 0), (1, 1)).unwrap_err();
        assert!(err.to_string().contains("not twins"), "{err}");
    }

    #[test]
    fn cross_twin_rejects_h_equal() {
        // find twins (g,h),(g',h) in some scramble
        for seed in 0..50 {
            let bl = scramble_balanced(&direct_with_c4(4), seed);
            let p = bl.product();
            if let Some((a, b)) = (0..16)
                .map(|v| p.decode(v))
                .map(|a| (a, bl.twin(a)))
                .find(|&(a, b)| a.0 != b.0 && a.1 == b.1)
            {
                let err = swap_cross_twin(&bl, a, b).unwrap_err();
                assert!(err.to_string().contains("h = h'"), "{err}");
                return;
            }
        }
        panic!("no (g,h)~(g',h) pair in 50 scrambles");
    }

    #[test]
    fn in_layer_twin_after_cross_twin() {
        // Build (g,h)~(g',h) with a cross-twin swap, then find an in-layer twin pair.
        for seed in 0..200 {
            let bl = scramble_balanced(&direct_with_c4(4), seed);
            let Some((a, b)) = cross_twin(&bl) else {
                continue;
            };
            let bl = swap_cross_twin(&bl, a, b).unwrap();
            let (g, h, g2) = (a.0, a.1, b.0);
            let found = (0..4).filter(|&h1| h1 != h).find_map(|h1| {
                let t = bl.twin((g, h1));
                (t.0 == g && t.1 != h).then_some((h1, t.1))
            });
            if let Some((h1, h2)) = found {
                let out = swap_in_layer_twin(&bl, g, g2, h, h1, h2).unwrap();
                assert_swap_sound(&bl, &out);
                assert!(out.are_twins((g, h1), (g2, h1)));
                let mut labels = out.labeling().values().to_vec();
                labels.sort_unstable();
                assert_eq!(labels, (1..=16).collect::<Vec<_>>());
                assert!(swap_in_layer_twin(&bl, g, g2, h, h1, h1).is_err());
                return;
            }
        }
        panic!("no in-layer twin instance found");
    }

    #[test]
    fn third_layer_twin_on_k44xc4() {
        // Each part of K_{4,4} shares one neighborhood, so a twin can sit in
        // any of three other H-layers.
        let (k44, c4) = (
            generate(GraphKind::CompleteBipartite(4, 4)).unwrap(),
            cycle(4),
        );
        let l = label_direct(&k44, &c4, &label_c4()).unwrap();
        let base =
            BalancedProductLabeling::new(product(ProductKind::Direct, &k44, &c4), l).unwrap();
        let mut tried = 0;
        for seed in 0..50 {
            let bl = scramble_balanced(&base, seed);
            let p = bl.product();
            for v in 0..p.base().order() {
                let (g, h) = p.decode(v);
                let (g2, hh) = bl.twin((g, h));
                if hh != h || g2 == g {
                    continue;
                }
                for h2 in 0..4 {
                    let (g3, x) = bl.twin((g, h2));
                    if x == h2 && g3 != g && g3 != g2 {
                        tried += 1;
                        let out = swap_third_layer_twin(&bl, g, g2, g3, h, h2).unwrap();
                        assert_swap_sound(&bl, &out);
                        assert!(out.are_twins((g, h2), (g2, h2)));
                        assert!(swap_third_layer_twin(&bl, g, g2, g2, h, h2).is_err());
                    }
                }
            }
        }
        assert!(tried > 0, "no third-layer twin instance found");
    }

    #[test]
    fn couple_on_constructed_labeling_is_closed_immediately() {
        let (run_bl, outcome) = couple_layers(&direct_with_c4(4)).unwrap();
        assert_eq!(outcome, CoupleOutcome::ClosedHLayer(0));
        assert_eq!(run_bl, direct_with_c4(4));
    }

    #[test]
    fn couple_rejects_edgeless_and_lexicographic() {
        let c4 = cycle(4);
        let e2 = Graph::empty(2);
        let l = label_direct(&c4, &e2, &Labeling::identity(2)).unwrap();
        let bl = BalancedProductLabeling::new(product(ProductKind::Direct, &c4, &e2), l).unwrap();
        assert!(couple_layers(&bl).is_err());

        let l = label_lexicographic(&c4, &c4, &label_c4()).unwrap();
        let bl =
            BalancedProductLabeling::new(product(ProductKind::Lexicographic, &c4, &c4), l).unwrap();
        assert!(matches!(
            couple_layers(&bl),
            Err(Error::WrongProductKind { .. })
        ));
    }

    #[test]
    fn couple_and_extract_scrambled_c3xc4() {
        for seed in 0..100 {
            let bl = scramble_balanced(&direct_with_c4(3), seed);
            let (out, outcome) = couple_layers(&bl).unwrap();
            assert!(
                verify_balanced(out.product().base(), out.labeling())
                    .unwrap()
                    .is_balanced
            );
            let (factor, l) = extract_factor_labeling(&out, &outcome).unwrap();
            assert_eq!(factor, Factor::H);
            let r = verify_balanced(&cycle(4), &l).unwrap();
            assert_eq!(r.magic_constant, Some(5));
        }
    }

    #[test]
    fn stale_outcome_is_rejected() {
        // ClosedHLayer(0) holds for the constructed labeling of C4 x C4 but
        // not after a scramble that sends a twin out of ^0H.
        let bl = direct_with_c4(4);
        let (_, outcome) = couple_layers(&bl).unwrap();
        assert_eq!(outcome, CoupleOutcome::ClosedHLayer(0));
        let stale = (0..100)
            .map(|seed| scramble_balanced(&bl, seed))
            .find(|s| !s.h_layer_closed(0))
            .expect("some scramble opens layer 0");
        assert!(extract_factor_labeling(&stale, &outcome).is_err());
        assert!(extract_factor_labeling(&bl, &CoupleOutcome::CoupledPairs(vec![(0, 1)])).is_err());
        assert!(extract_factor_labeling(&bl, &CoupleOutcome::ClosedHLayer(99)).is_err());
    }

    #[test]
    fn lexicographic_extraction() {
        let (c3, c4) = (cycle(3), cycle(4));
        let l = label_lexicographic(&c3, &c4, &label_c4()).unwrap();
        let bl =
            BalancedProductLabeling::new(product(ProductKind::Lexicographic, &c3, &c4), l).unwrap();
        let hl = extract_lexicographic_factor(&bl).unwrap();
        assert!(verify_balanced(&c4, &hl).unwrap().is_balanced);

        let e2 = Graph::empty(2);
        let l = label_lexicographic(&c4, &e2, &Labeling::identity(2)).unwrap();
        let bl =
            BalancedProductLabeling::new(product(ProductKind::Lexicographic, &c4, &e2), l).unwrap();
        assert_eq!(
            extract_lexicographic_factor(&bl).unwrap(),
            Labeling::identity(2)
        );
    }

    #[test]
    fn scramble_is_deterministic_and_sound() {
        let bl = direct_with_c4(4);
        let a = scramble_balanced(&bl, 7);
        let b = scramble_balanced(&bl, 7);
        assert_eq!(a, b);
        assert!(
            verify_balanced(a.product().base(), a.labeling())
                .unwrap()
                .is_balanced
        );
        assert_ne!(scramble_balanced(&bl, 1), scramble_balanced(&bl, 2));
    }

    #[test]
    fn scramble_stays_within_neighborhood_classes() {
        let bl = direct_with_c4(6);
        let base = bl.product().base();
        for seed in 0..20 {
            let s = scramble_balanced(&bl, seed);
            for v in 0..base.order() {
                let moved_to = s.labeling().vertex_with_label(bl.labeling().label(v));
                assert_eq!(base.adj(v), base.adj(moved_to));
            }
        }
    }

    #[test]
    fn lcg_reference_values() {
        let mut rng = Lcg::new(0);
        let first = rng.next_u32();
        // state_1 = INCREMENT
        assert_eq!(first, (Lcg::INCREMENT >> 32) as u32);
    }
}
