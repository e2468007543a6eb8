//! Cartesian, lexicographic and direct products, with row-major pair
//! encoding `(g, h) -> g * |V(H)| + h`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Cartesian,
    Lexicographic,
    Direct,
}

impl ProductKind {
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Lexicographic => "lexicographic",
            ProductKind::Direct => "direct",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which family of layers to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// `^gH`: fix the G-coordinate.
    HLayer,
    /// `G^h`: fix the H-coordinate.
    GLayer,
}

/// A product graph together with its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    base: Graph,
    g: Graph,
    h: Graph,
    kind: ProductKind,
}

/// Builds `G □ H`, `G ∘ H` or `G × H`.
pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> ProductGraph {
    let (gn, hn) = (g.order(), h.order());
    let id = |a: usize, b: usize| a * hn + b;
    let mut edges = Vec::new();
    // Each edge is emitted once, from its smaller endpoint.
    for a in 0..gn {
        for b in 0..hn {
            let u = id(a, b);
            let mut push = |a2: usize, b2: usize| {
                let v = id(a2, b2);
                if u < v {
                    edges.push((u, v));
                }
            };
            match kind {
                ProductKind::Cartesian => {
                    for &b2 in h.adj(b) {
                        push(a, b2);
                    }
                    for &a2 in g.adj(a) {
                        push(a2, b);
                    }
                }
                ProductKind::Lexicographic => {
                    for &a2 in g.adj(a) {
                        for b2 in 0..hn {
                            push(a2, b2);
                        }
                    }
                    for &b2 in h.adj(b) {
                        push(a, b2);
                    }
                }
                ProductKind::Direct => {
                    for &a2 in g.adj(a) {
                        for &b2 in h.adj(b) {
                            push(a2, b2);
                        }
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    ProductGraph {
        base: Graph::from_canonical(gn * hn, edges),
        g: g.clone(),
        h: h.clone(),
        kind,
    }
}

impl ProductGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn gsize(&self) -> usize {
        self.g.order()
    }

    pub fn hsize(&self) -> usize {
        self.h.order()
    }

    #[inline]
    pub fn encode(&self, g: usize, h: usize) -> usize {
        debug_assert!(g < self.gsize() && h < self.hsize());
        g * self.hsize() + h
    }

    #[inline]
    pub fn decode(&self, v: usize) -> (usize, usize) {
        (v / self.hsize(), v % self.hsize())
    }

    /// Vertex ids of `^gH` (in `h` order) or `G^h` (in `g` order).
    pub fn layer(&self, axis: Axis, fixed: usize) -> Result<Vec<usize>> {
        match axis {
            Axis::HLayer => {
                if fixed >= self.gsize() {
                    return Err(Error::VertexOutOfRange {
                        vertex: fixed,
                        n: self.gsize(),
                    });
                }
                Ok((0..self.hsize()).map(|h| self.encode(fixed, h)).collect())
            }
            Axis::GLayer => {
                if fixed >= self.hsize() {
                    return Err(Error::VertexOutOfRange {
                        vertex: fixed,
                        n: self.hsize(),
                    });
                }
                Ok((0..self.gsize()).map(|g| self.encode(g, fixed)).collect())
            }
        }
    }

    /// Self-test for direct products: `N(a, b) = N_G(a) × N_H(b)` for every
    /// vertex.
    pub fn neighborhood_product_check(&self) -> Result<bool> {
        self.require(ProductKind::Direct)?;
        Ok((0..self.base.order()).all(|v| {
            let (a, b) = self.decode(v);
            let mut expected: Vec<usize> = self
                .g
                .adj(a)
                .iter()
                .flat_map(|&a2| self.h.adj(b).iter().map(move |&b2| (a2, b2)))
                .map(|(a2, b2)| self.encode(a2, b2))
                .collect();
            expected.sort_unstable();
            expected == self.base.adj(v)
        }))
    }

    /// The same product with the factors exchanged, `H op G`. For
    /// Cartesian and direct products this is isomorphic via
    /// [`ProductGraph::transpose_vertex`].
    pub fn transposed(&self) -> ProductGraph {
        product(self.kind, &self.h, &self.g)
    }

    /// Image of `v = (g, h)` in [`ProductGraph::transposed`], i.e. `(h, g)`.
    pub fn transpose_vertex(&self, v: usize) -> usize {
        let (g, h) = self.decode(v);
        h * self.gsize() + g
    }

    pub(crate) fn require(&self, kind: ProductKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongProductKind {
                expected: kind.name(),
                actual: self.kind.name(),
            })
        }
    }
}
