//! Oriented multigraphs with dense vertex and edge indices.
//!
//! Vertices are `0..vertex_count`, edges are stored as `(tail, head)` pairs
//! and keep their insertion order; the edge index doubles as the column index
//! of the incidence matrix. Loops and parallel edges are allowed everywhere
//! except where a contract explicitly says otherwise (`line_graph`).

use crate::error::{Error, Result};
use std::fmt::Write as _;

/// An oriented multigraph. Cheap to clone at the scales this crate targets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// Component count, rank and nullity of the underlying undirected graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphStats {
    pub components: usize,
    pub rank: usize,
    pub nullity: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeClass {
    Bridge,
    Loop,
    Ordinary,
}

impl Multigraph {
    /// Builds a graph, validating that every endpoint is a valid vertex.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge(e))
    }

    pub fn is_loop(&self, e: usize) -> Result<bool> {
        let (u, v) = self.edge(e)?;
        Ok(u == v)
    }

    /// Degree of `v`; a loop contributes 2.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.vertex_count {
            return Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        Ok(self
            .edges
            .iter()
            .map(|&(u, w)| (u == v) as usize + (w == v) as usize)
            .sum())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|v| self.degree(v).expect("vertex in range"))
            .max()
            .unwrap_or(0)
    }

    /// Component count / rank / nullity, ignoring orientation.
    pub fn stats(&self) -> GraphStats {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let components = uf.components();
        let rank = self.vertex_count - components;
        GraphStats {
            components,
            rank,
            nullity: self.edges.len() - rank,
        }
    }

    /// Removes edge `e`, keeping the vertex set (isolated vertices persist).
    pub fn delete(&self, e: usize) -> Result<Multigraph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Multigraph {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// Contracts non-loop edge `e`: its endpoints merge into `min(tail, head)`,
    /// vertices above `max(tail, head)` shift down by one, and edges parallel
    /// to `e` become loops. Edge order is preserved.
    pub fn contract(&self, e: usize) -> Result<Multigraph> {
        let (u, v) = self.edge(e)?;
        if u == v {
            return Err(Error::ContractLoop(e));
        }
        let (lo, hi) = (u.min(v), u.max(v));
        let relabel = |w: usize| {
            if w == hi {
                lo
            } else if w > hi {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| (relabel(a), relabel(b)))
            .collect();
        Ok(Multigraph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Classifies `e` as loop, bridge, or ordinary.
    pub fn edge_class(&self, e: usize) -> Result<EdgeClass> {
        let (u, v) = self.edge(e)?;
        if u == v {
            return Ok(EdgeClass::Loop);
        }
        // Bridge iff removing e splits its component.
        let mut uf = UnionFind::new(self.vertex_count);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i != e {
                uf.union(a, b);
            }
        }
        if uf.find(u) == uf.find(v) {
            Ok(EdgeClass::Ordinary)
        } else {
            Ok(EdgeClass::Bridge)
        }
    }

    /// Signed incidence matrix, rows indexed by vertex and columns by edge:
    /// head `+1`, tail `-1`, loops give all-zero columns.
    pub fn incidence(&self) -> Vec<Vec<i8>> {
        let mut m = vec![vec![0i8; self.edges.len()]; self.vertex_count];
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if t != h {
                m[h][e] = 1;
                m[t][e] = -1;
            }
        }
        m
    }

    /// Line graph: one vertex per edge of `self` (same order), one edge for
    /// each pair of distinct edges sharing an endpoint, oriented from the
    /// lower edge index to the higher. Requires a simple input graph.
    pub fn line_graph(&self) -> Result<Multigraph> {
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                return Err(Error::NotSimple(format!("edge {i} is a loop")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotSimple(format!("edge {i} has a parallel twin")));
            }
        }
        let m = self.edges.len();
        let mut edges = Vec::new();
        for e in 0..m {
            for f in e + 1..m {
                let (a, b) = self.edges[e];
                let (c, d) = self.edges[f];
                if a == c || a == d || b == c || b == d {
                    edges.push((e, f));
                }
            }
        }
        Ok(Multigraph {
            vertex_count: m,
            edges,
        })
    }

    /// Serializes to the plain text format accepted by [`Multigraph::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices {}", self.vertex_count).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "edge {u} {v}").unwrap();
        }
        out
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # comment, blank lines allowed
    /// vertices 3
    /// edge 0 1
    /// edge 1 2
    /// ```
    ///
    /// The `vertices` line must come first; `#` starts a comment anywhere.
    /// Errors carry the 1-based line number.
    pub fn from_text(text: &str) -> Result<Multigraph> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let key = tokens.next().unwrap();
            let parse_usize = |tok: Option<&str>, what: &str| -> Result<usize> {
                let tok = tok.ok_or_else(|| Error::Parse {
                    line,
                    message: format!("missing {what}"),
                })?;
                tok.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid {what}: {tok:?}"),
                })
            };
            match key {
                "vertices" => {
                    if vertex_count.is_some() {
                        return Err(Error::Parse {
                            line,
                            message: "duplicate vertices line".into(),
                        });
                    }
                    let n = parse_usize(tokens.next(), "vertex count")?;
                    if tokens.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            message: "trailing tokens after vertex count".into(),
                        });
                    }
                    vertex_count = Some(n);
                }
                "edge" => {
                    let n = vertex_count.ok_or(Error::Parse {
                        line,
                        message: "edge before vertices line".into(),
                    })?;
                    let u = parse_usize(tokens.next(), "edge tail")?;
                    let v = parse_usize(tokens.next(), "edge head")?;
                    if tokens.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            message: "trailing tokens after edge endpoints".into(),
                        });
                    }
                    if u >= n || v >= n {
                        return Err(Error::Parse {
                            line,
                            message: format!("edge endpoint out of range: {u} {v}"),
                        });
                    }
                    edges.push((u, v));
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown directive {other:?}"),
                    });
                }
            }
        }
        let vertex_count = vertex_count.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing vertices line".into(),
        })?;
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }
}

/// The built-in parametric graph families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// `m` loops on a single vertex.
    Bouquet(usize),
    /// `m` parallel edges `(0, 1)`.
    Multiedge(usize),
    /// `n` edges `(0, 1)` followed by `m - n` edges `(1, 0)`.
    OrientedMultiedge { m: usize, n: usize },
    /// Center `0` with edges `(0, i)` to `m` leaves.
    Star(usize),
    /// Directed cycle `0 -> 1 -> ... -> m-1 -> 0`.
    Cycle(usize),
    /// Complete graph on `m` vertices, edges in lexicographic order.
    Complete(usize),
    /// Triangular prism (two triangles joined by a matching).
    Prism,
    /// Complete graph on four vertices.
    K4,
}

impl Family {
    pub fn build(self) -> Result<Multigraph> {
        let positive = |m: usize, name: &str| -> Result<usize> {
            if m == 0 {
                Err(Error::InvalidParameter(format!("{name} needs m >= 1")))
            } else {
                Ok(m)
            }
        };
        let g = match self {
            Family::Bouquet(m) => {
                let m = positive(m, "bouquet")?;
                Multigraph::new(1, vec![(0, 0); m])?
            }
            Family::Multiedge(m) => {
                let m = positive(m, "multiedge")?;
                Multigraph::new(2, vec![(0, 1); m])?
            }
            Family::OrientedMultiedge { m, n } => {
                let m = positive(m, "oriented-multiedge")?;
                if n > m {
                    return Err(Error::InvalidParameter(format!(
                        "oriented-multiedge needs n <= m, got n={n} m={m}"
                    )));
                }
                let mut edges = vec![(0, 1); n];
                edges.extend(std::iter::repeat_n((1, 0), m - n));
                Multigraph::new(2, edges)?
            }
            Family::Star(m) => {
                let m = positive(m, "star")?;
                Multigraph::new(m + 1, (1..=m).map(|i| (0, i)).collect())?
            }
            Family::Cycle(m) => {
                let m = positive(m, "cycle")?;
                Multigraph::new(m, (0..m).map(|i| (i, (i + 1) % m)).collect())?
            }
            Family::Complete(m) => {
                let m = positive(m, "complete")?;
                let mut edges = Vec::new();
                for i in 0..m {
                    for j in i + 1..m {
                        edges.push((i, j));
                    }
                }
                Multigraph::new(m, edges)?
            }
            // The edge order here is part of the contract: the line graph
            // inherits its vertex order (and hence its orientation) from it.
            Family::Prism => Multigraph::new(
                6,
                vec![
                    (1, 2),
                    (0, 1),
                    (0, 2),
                    (3, 4),
                    (4, 5),
                    (3, 5),
                    (0, 3),
                    (1, 4),
                    (2, 5),
                ],
            )?,
            Family::K4 => Family::Complete(4).build()?,
        };
        Ok(g)
    }

    /// Parses the CLI spelling `name:m[:n]`, e.g. `cycle:3`,
    /// `oriented-multiedge:3:1`, `prism`.
    pub fn parse(spec: &str) -> Result<Family> {
        let mut parts = spec.split(':');
        let name = parts.next().unwrap_or("");
        let nums: Vec<&str> = parts.collect();
        let arg = |i: usize| -> Result<usize> {
            let tok = nums.get(i).ok_or_else(|| {
                Error::InvalidParameter(format!("family {name:?} needs a size, e.g. {name}:3"))
            })?;
            tok.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad family size {tok:?}")))
        };
        let expect_args = |n: usize| -> Result<()> {
            if nums.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "family {spec:?} has {} parameter(s), expected {n}",
                    nums.len()
                )));
            }
            Ok(())
        };
        let family = match name {
            "bouquet" => {
                expect_args(1)?;
                Family::Bouquet(arg(0)?)
            }
            "multiedge" => {
                expect_args(1)?;
                Family::Multiedge(arg(0)?)
            }
            "oriented-multiedge" => {
                expect_args(2)?;
                Family::OrientedMultiedge {
                    m: arg(0)?,
                    n: arg(1)?,
                }
            }
            "star" => {
                expect_args(1)?;
                Family::Star(arg(0)?)
            }
            "cycle" => {
                expect_args(1)?;
                Family::Cycle(arg(0)?)
            }
            "complete" => {
                expect_args(1)?;
                Family::Complete(arg(0)?)
            }
            "prism" => {
                expect_args(0)?;
                Family::Prism
            }
            "k4" => {
                expect_args(0)?;
                Family::K4
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family {other:?} (expected bouquet, multiedge, oriented-multiedge, \
                     star, cycle, complete, prism, k4)"
                )))
            }
        };
        Ok(family)
    }
}

/// Array-based union-find, reused by the rank computations.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    merges: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            merges: 0,
        }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.merges = 0;
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when the union merged two components.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.merges += 1;
        true
    }

    /// Number of successful merges so far (= rank of the edge set fed in).
    pub(crate) fn rank(&self) -> usize {
        self.merges
    }

    pub(crate) fn components(&self) -> usize {
        self.parent.len() - self.merges
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Multigraph {
        Family::Complete(n).build().unwrap()
    }

    #[test]
    fn stats_basics() {
        let triangle = k(3);
        assert_eq!(
            triangle.stats(),
            GraphStats {
                components: 1,
                rank: 2,
                nullity: 1
            }
        );
        let bouquet = Family::Bouquet(2).build().unwrap();
        assert_eq!(
            bouquet.stats(),
            GraphStats {
                components: 1,
                rank: 0,
                nullity: 2
            }
        );
        let isolated = Multigraph::new(2, vec![]).unwrap();
        assert_eq!(
            isolated.stats(),
            GraphStats {
                components: 2,
                rank: 0,
                nullity: 0
            }
        );
    }

    #[test]
    fn delete_keeps_vertices() {
        let k2 = k(2);
        let deleted = k2.delete(0).unwrap();
        assert_eq!(deleted.vertex_count(), 2);
        assert_eq!(deleted.edge_count(), 0);
        assert_eq!(deleted.stats().components, 2);
        assert_eq!(k2.delete(1), Err(Error::InvalidEdge(1)));
    }

    #[test]
    fn contract_merges_and_relabels() {
        let k2 = k(2);
        let point = k2.contract(0).unwrap();
        assert_eq!(point.vertex_count(), 1);
        assert_eq!(point.edge_count(), 0);

        let triangle = k(3);
        let x2 = triangle.contract(0).unwrap();
        assert_eq!(x2.vertex_count(), 2);
        assert_eq!(x2.edges(), &[(0, 1), (0, 1)]);

        let multi = Family::Multiedge(2).build().unwrap();
        let y1 = multi.contract(0).unwrap();
        assert_eq!(y1.edges(), &[(0, 0)]);

        let bouquet = Family::Bouquet(1).build().unwrap();
        assert_eq!(bouquet.contract(0), Err(Error::ContractLoop(0)));
    }

    #[test]
    fn contract_shifts_higher_indices() {
        // edge (1,3) in a 4-vertex path-ish graph; vertex 3 merges into 1.
        let g = Multigraph::new(4, vec![(1, 3), (2, 3), (0, 2)]).unwrap();
        let c = g.contract(0).unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.edges(), &[(2, 1), (0, 2)]);
    }

    #[test]
    fn edge_classes() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        assert_eq!(g.edge_class(3).unwrap(), EdgeClass::Loop);
        assert_eq!(g.edge_class(0).unwrap(), EdgeClass::Ordinary);
        let path = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.edge_class(0).unwrap(), EdgeClass::Bridge);
        let multi = Family::Multiedge(2).build().unwrap();
        assert_eq!(multi.edge_class(0).unwrap(), EdgeClass::Ordinary);
    }

    #[test]
    fn incidence_columns() {
        let star = Family::Star(2).build().unwrap();
        let m = star.incidence();
        assert_eq!(m[0], vec![-1, -1]);
        assert_eq!(m[1], vec![1, 0]);
        assert_eq!(m[2], vec![0, 1]);
        let bouquet = Family::Bouquet(1).build().unwrap();
        assert_eq!(bouquet.incidence(), vec![vec![0]]);
        // Columns of non-loop edges sum to zero.
        let k4 = k(4);
        let inc = k4.incidence();
        for e in 0..k4.edge_count() {
            let sum: i32 = (0..4).map(|v| inc[v][e] as i32).sum();
            assert_eq!(sum, 0);
        }
    }

    #[test]
    fn families() {
        assert_eq!(
            Family::OrientedMultiedge { m: 3, n: 1 }.build().unwrap().edges(),
            &[(0, 1), (1, 0), (1, 0)]
        );
        assert_eq!(
            Family::Cycle(3).build().unwrap().edges(),
            &[(0, 1), (1, 2), (2, 0)]
        );
        assert_eq!(Family::Cycle(1).build().unwrap().edges(), &[(0, 0)]);
        assert_eq!(
            Family::Cycle(2).build().unwrap().edges(),
            &[(0, 1), (1, 0)]
        );
        assert_eq!(Family::Complete(4).build().unwrap().edge_count(), 6);
        let prism = Family::Prism.build().unwrap();
        assert_eq!(prism.vertex_count(), 6);
        assert_eq!(prism.edge_count(), 9);
        for v in 0..6 {
            assert_eq!(prism.degree(v).unwrap(), 3);
        }
        assert!(Family::Bouquet(0).build().is_err());
        assert!(Family::OrientedMultiedge { m: 2, n: 3 }.build().is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!(Family::parse("cycle:3").unwrap(), Family::Cycle(3));
        assert_eq!(
            Family::parse("oriented-multiedge:3:1").unwrap(),
            Family::OrientedMultiedge { m: 3, n: 1 }
        );
        assert_eq!(Family::parse("prism").unwrap(), Family::Prism);
        assert_eq!(Family::parse("k4").unwrap(), Family::K4);
        assert!(Family::parse("prism:2").is_err());
        assert!(Family::parse("cycle").is_err());
        assert!(Family::parse("moebius:5").is_err());
    }

    #[test]
    fn line_graph_examples() {
        let k2 = k(2);
        let l = k2.line_graph().unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (1, 0));

        let path3 = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let l = path3.line_graph().unwrap();
        assert_eq!(l.edges(), &[(0, 1)]);

        // L(K4) is the octahedron: 6 vertices, 12 edges, 4-regular,
        // non-adjacent exactly to the opposite (disjoint) edge.
        let l = k(4).line_graph().unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (6, 12));
        for v in 0..6 {
            assert_eq!(l.degree(v).unwrap(), 4);
        }
        let loops = Family::Bouquet(1).build().unwrap();
        assert!(loops.line_graph().is_err());
        let multi = Family::Multiedge(2).build().unwrap();
        assert!(multi.line_graph().is_err());
    }

    #[test]
    fn text_round_trip() {
        let graphs = [
            k(4),
            Family::Prism.build().unwrap(),
            Family::Bouquet(3).build().unwrap(),
            Multigraph::new(5, vec![]).unwrap(),
            Multigraph::new(3, vec![(2, 0), (1, 1), (0, 2)]).unwrap(),
        ];
        for g in graphs {
            let text = g.to_text();
            let back = Multigraph::from_text(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn text_parsing_details() {
        let g = Multigraph::from_text("# header\n\n vertices 2 # trailing\nedge 0 1\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);

        let err = Multigraph::from_text("edge 0 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                message: "edge before vertices line".into()
            }
        );
        let err = Multigraph::from_text("vertices 2\nedge 0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Multigraph::from_text("vertices 2\nedge 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Multigraph::from_text("# nothing\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = Multigraph::from_text("vertices 1\nvertices 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn contraction_deletion_rank_bookkeeping() {
        // For an ordinary edge: contraction drops rank by one and keeps
        // nullity; deletion keeps rank and drops nullity by one.
        let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).unwrap();
        for e in 0..g.edge_count() {
            match g.edge_class(e).unwrap() {
                EdgeClass::Ordinary => {
                    let s = g.stats();
                    let c = g.contract(e).unwrap().stats();
                    let d = g.delete(e).unwrap().stats();
                    assert_eq!(c.rank, s.rank - 1);
                    assert_eq!(c.nullity, s.nullity);
                    assert_eq!(d.rank, s.rank);
                    assert_eq!(d.nullity, s.nullity - 1);
                }
                EdgeClass::Loop => {
                    let s = g.stats();
                    let d = g.delete(e).unwrap().stats();
                    assert_eq!(d.rank, s.rank);
                    assert_eq!(d.nullity, s.nullity - 1);
                }
                EdgeClass::Bridge => {
                    let s = g.stats();
                    let c = g.contract(e).unwrap().stats();
                    assert_eq!(c.rank, s.rank - 1);
                    assert_eq!(c.nullity, s.nullity);
                }
            }
        }
    }
}
