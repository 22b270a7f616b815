//! Coboundary and boundary maps over Z_q, tensions and flows, weight
//! enumerators, and MacWilliams duality.
//!
//! The maps carry two residue parameters: `(Sd)_e = d_head - s d_tail` and
//! `(S^T b)_v = sum_(head at v) b_e - s sum_(tail at v) b_e`, with the
//! orientation taken from the stored edge direction. Tensions are `im S` at
//! `s = 1`, flows are `ker S^T` at `s = 1`; the general-`s` variants fall
//! back to brute-force enumeration because over the ring Z_q there is no
//! rank/nullity shortcut to lean on.

use crate::error::{Error, Result};
use crate::fourier::{dft, ZqFun};
use crate::graph::{Multigraph, UnionFind};
use crate::tol;
use crate::tutte::{big_to_c64, for_each_tuple, tutte_dc};
use crate::C64;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// A vertex-indexed vector over Z_q.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ColourVector {
    q: usize,
    entries: Vec<usize>,
}

/// An edge-indexed vector over Z_q, in the graph's edge order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeVector {
    q: usize,
    entries: Vec<usize>,
}

macro_rules! zq_vector_impl {
    ($name:ident) => {
        impl $name {
            pub fn new(q: usize, entries: impl IntoIterator<Item = usize>) -> Result<Self> {
                if q == 0 {
                    return Err(Error::InvalidParameter(
                        "modulus must be at least 1".into(),
                    ));
                }
                Ok($name {
                    q,
                    entries: entries.into_iter().map(|a| a % q).collect(),
                })
            }

            pub fn zero(q: usize, len: usize) -> Result<Self> {
                Self::new(q, std::iter::repeat(0).take(len))
            }

            pub fn q(&self) -> usize {
                self.q
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn entries(&self) -> &[usize] {
                &self.entries
            }

            pub fn get(&self, i: usize) -> usize {
                self.entries[i]
            }

            pub fn is_zero(&self) -> bool {
                self.entries.iter().all(|&a| a == 0)
            }

            /// Hamming weight: the number of nonzero entries.
            pub fn weight(&self) -> usize {
                self.entries.iter().filter(|&&a| a != 0).count()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, a) in self.entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    };
}

zq_vector_impl!(ColourVector);
zq_vector_impl!(EdgeVector);

/// Standard inner product mod q.
pub fn dot(a: &EdgeVector, b: &EdgeVector) -> Result<usize> {
    if a.q != b.q {
        return Err(Error::ModulusMismatch(a.q, b.q));
    }
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "vector lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .fold(0, |acc, (&x, &y)| (acc + x * y) % a.q))
}

/// The maps S, T on colour vectors and their transposes, for a fixed graph,
/// modulus, and residue parameters `s`, `t`.
#[derive(Clone, Debug)]
pub struct CoboundaryMap {
    graph: Multigraph,
    q: usize,
    s: usize,
    t: usize,
}

impl CoboundaryMap {
    pub fn new(graph: Multigraph, q: usize, s: usize, t: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("modulus must be at least 1".into()));
        }
        Ok(CoboundaryMap {
            graph,
            q,
            s: s % q,
            t: t % q,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    fn check_colour(&self, d: &ColourVector) -> Result<()> {
        if d.q != self.q {
            return Err(Error::ModulusMismatch(self.q, d.q));
        }
        if d.len() != self.graph.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "colour vector length {} does not match |V| = {}",
                d.len(),
                self.graph.vertex_count()
            )));
        }
        Ok(())
    }

    fn check_edge(&self, b: &EdgeVector) -> Result<()> {
        if b.q != self.q {
            return Err(Error::ModulusMismatch(self.q, b.q));
        }
        if b.len() != self.graph.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "edge vector length {} does not match |E| = {}",
                b.len(),
                self.graph.edge_count()
            )));
        }
        Ok(())
    }

    /// `(Sd)_e = d_v - s d_u` for the edge `(u, v)`; a loop at `v` gets
    /// `(1 - s) d_v`.
    pub fn apply_s(&self, d: &ColourVector) -> Result<EdgeVector> {
        self.check_colour(d)?;
        let q = self.q;
        let neg_s = q - self.s; // -s mod q, in 0..q
        EdgeVector::new(
            q,
            self.graph
                .edges()
                .iter()
                .map(|&(u, v)| (d.entries[v] + neg_s * d.entries[u]) % q),
        )
    }

    /// `(S^T b)_v = sum over edges with head v of b_e, minus s times the sum
    /// over edges with tail v`.
    pub fn apply_st(&self, b: &EdgeVector) -> Result<ColourVector> {
        self.check_edge(b)?;
        let q = self.q;
        let neg_s = q - self.s;
        let mut out = vec![0usize; self.graph.vertex_count()];
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            out[v] = (out[v] + b.entries[e]) % q;
            out[u] = (out[u] + neg_s * b.entries[e]) % q;
        }
        ColourVector::new(q, out)
    }

    /// `(T^T 1)_v = t * outdeg(v)`, where a loop counts once toward the
    /// outdegree of its vertex.
    pub fn ttop_one(&self) -> ColourVector {
        let q = self.q;
        let mut out = vec![0usize; self.graph.vertex_count()];
        for &(u, _) in self.graph.edges() {
            out[u] = (out[u] + self.t) % q;
        }
        ColourVector::new(q, out).expect("q validated at construction")
    }
}

fn guard(q: usize, exp: usize, what: &str) -> Result<()> {
    tol::guarded_pow(q, exp).ok_or_else(|| {
        Error::SizeGuard(format!(
            "{what} needs {q}^{exp} enumeration, limit is {}",
            tol::ENUM_GUARD
        ))
    })?;
    Ok(())
}

/// The image of `apply_s` over all colour vectors, deduplicated and sorted.
/// Guarded at `q^|V|` enumeration.
pub fn image_s(map: &CoboundaryMap) -> Result<Vec<EdgeVector>> {
    let g = &map.graph;
    guard(map.q, g.vertex_count(), "image of S")?;
    let mut seen = BTreeSet::new();
    for_each_tuple(g.vertex_count(), map.q, |c| {
        let d = ColourVector::new(map.q, c.iter().copied()).expect("q validated");
        seen.insert(map.apply_s(&d).expect("sizes match by construction"));
    });
    Ok(seen.into_iter().collect())
}

/// The kernel of `apply_st` by brute force over Z_q^E, sorted. Guarded at
/// `q^|E|` enumeration.
pub fn kernel_st(map: &CoboundaryMap) -> Result<Vec<EdgeVector>> {
    let g = &map.graph;
    guard(map.q, g.edge_count(), "kernel of S^T")?;
    let mut out = Vec::new();
    for_each_tuple(g.edge_count(), map.q, |b| {
        let v = EdgeVector::new(map.q, b.iter().copied()).expect("q validated");
        if map.apply_st(&v).expect("sizes match by construction").is_zero() {
            out.push(v);
        }
    });
    out.sort();
    Ok(out)
}

/// All Z_q-tensions of `G`: the image of the coboundary map at `s = 1`.
/// There are exactly `q^r(G)` of them.
pub fn tensions(g: &Multigraph, q: usize) -> Result<Vec<EdgeVector>> {
    let map = CoboundaryMap::new(g.clone(), q, 1, 0)?;
    image_s(&map)
}

/// All Z_q-flows of `G`: the kernel of the boundary map at `s = 1`,
/// computed by the cotree construction. Free values on the edges outside a
/// spanning forest determine the forest edges uniquely (their coefficients
/// are +-1, invertible over any Z_q), so there are exactly `q^n(G)` flows.
pub fn flows(g: &Multigraph, q: usize) -> Result<Vec<EdgeVector>> {
    if q == 0 {
        return Err(Error::InvalidParameter("modulus must be at least 1".into()));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    if m > tol::SUBSET_EDGE_GUARD {
        return Err(Error::SizeGuard(format!(
            "flow enumeration supports at most {} edges, got {m}",
            tol::SUBSET_EDGE_GUARD
        )));
    }
    let nullity = g.stats().nullity;
    guard(q, nullity, "flow set")?;

    // spanning forest: first edge joining two components wins
    let mut uf = UnionFind::new(n);
    let mut in_tree = vec![false; m];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u != v && uf.union(u, v) {
            in_tree[e] = true;
        }
    }
    let cotree: Vec<usize> = (0..m).filter(|&e| !in_tree[e]).collect();

    // orient the forest: BFS order with parent edges (loops never qualify)
    let mut adjacency = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if in_tree[e] {
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
    }
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        order.push(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent_edge[w] = Some(e);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }

    // incident non-loop edges per vertex, with sign (+1 head, -1 tail)
    let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            incident[v].push((e, true));
            incident[u].push((e, false));
        }
    }

    let mut out = BTreeSet::new();
    let mut b = vec![0usize; m];
    for_each_tuple(cotree.len(), q, |z| {
        b.iter_mut().for_each(|x| *x = 0);
        for (i, &e) in cotree.iter().enumerate() {
            b[e] = z[i];
        }
        // leaves first: the parent edge is the single unknown at each vertex
        for &v in order.iter().rev() {
            let p = match parent_edge[v] {
                Some(p) => p,
                None => continue,
            };
            let mut imbalance = 0usize; // sum of +-b over determined edges at v
            for &(e, head_here) in &incident[v] {
                if e == p {
                    continue;
                }
                imbalance = if head_here {
                    (imbalance + b[e]) % q
                } else {
                    (imbalance + q - b[e] % q) % q
                };
            }
            let head_here = g.edges()[p].1 == v;
            b[p] = if head_here {
                (q - imbalance) % q
            } else {
                imbalance
            };
        }
        out.insert(EdgeVector::new(q, b.iter().copied()).expect("q >= 1"));
    });
    Ok(out.into_iter().collect())
}

/// The flows whose entries all lie in `{0, 1, q-1}`.
pub fn q1_flows(g: &Multigraph, q: usize) -> Result<Vec<EdgeVector>> {
    Ok(flows(g, q)?
        .into_iter()
        .filter(|b| b.entries().iter().all(|&a| a == 0 || a == 1 || a == q - 1))
        .collect())
}

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients; `coeffs[k]` multiplies `x^k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Coefficients in ascending degree order, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add_term(&mut self, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c;
        self.trim();
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (k, c) in other.coeffs.iter().enumerate() {
            out.add_term(k, c);
        }
        out
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut out = UniPoly::constant(BigInt::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + big_to_c64(c);
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Divides every coefficient by `d`, failing if any division is inexact.
    pub fn div_exact(&self, d: &BigInt) -> Result<UniPoly> {
        if d.is_zero() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c % d).is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "coefficient {c} is not divisible by {d}"
                )));
            }
            coeffs.push(c / d);
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}*")?;
                    }
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Hamming weight enumerator `sum_(a in P) x^(#zero entries of a)`.
/// `edge_count` fixes the exponent scale when `P` is empty.
pub fn hamming_we(p: &[EdgeVector], edge_count: usize) -> UniPoly {
    let mut out = UniPoly::zero();
    let one = BigInt::one();
    for a in p {
        debug_assert_eq!(a.len(), edge_count);
        out.add_term(edge_count - a.weight(), &one);
    }
    out
}

/// Complete weight enumerator `sum_(a in P) prod_e weights(a_e)`.
pub fn complete_we(p: &[EdgeVector], weights: &ZqFun) -> Result<C64> {
    let zero_shift = match p.first() {
        Some(a) => EdgeVector::zero(a.q(), a.len())?,
        None => return Ok(C64::new(0.0, 0.0)),
    };
    complete_we_coset(p, &zero_shift, weights)
}

/// Coset variant: `sum_(a in P) prod_e weights(a_e + shift_e)`.
pub fn complete_we_coset(
    p: &[EdgeVector],
    shift: &EdgeVector,
    weights: &ZqFun,
) -> Result<C64> {
    if shift.q() != weights.q() {
        return Err(Error::ModulusMismatch(shift.q(), weights.q()));
    }
    let mut acc = C64::new(0.0, 0.0);
    for a in p {
        if a.q() != weights.q() {
            return Err(Error::ModulusMismatch(a.q(), weights.q()));
        }
        if a.len() != shift.len() {
            return Err(Error::InvalidParameter(format!(
                "vector length {} does not match shift length {}",
                a.len(),
                shift.len()
            )));
        }
        let mut prod = C64::new(1.0, 0.0);
        for (e, &x) in a.entries().iter().enumerate() {
            prod *= weights.at(x + shift.get(e));
        }
        acc += prod;
    }
    Ok(acc)
}

/// Both sides of the tension weight-enumerator identity:
/// lhs = Hamming enumerator of the tensions at `y`,
/// rhs = `(y-1)^r T(G; (y-1+q)/(y-1), y)`. Rejects `y = 1`.
pub fn tension_tutte_check(g: &Multigraph, q: usize, y: C64) -> Result<(C64, C64)> {
    if y == C64::new(1.0, 0.0) {
        return Err(Error::InvalidParameter("y = 1 is singular".into()));
    }
    let lhs = hamming_we(&tensions(g, q)?, g.edge_count()).eval(y);
    let s = g.stats();
    let y1 = y - 1.0;
    let rhs = y1.powu(s.rank as u32) * tutte_dc(g).eval((y1 + q as f64) / y1, y);
    Ok((lhs, rhs))
}

/// Both sides of the flow weight-enumerator identity:
/// lhs = Hamming enumerator of the flows at `x`,
/// rhs = `(x-1)^n T(G; x, (x-1+q)/(x-1))`. Rejects `x = 1`.
pub fn flow_tutte_check(g: &Multigraph, q: usize, x: C64) -> Result<(C64, C64)> {
    if x == C64::new(1.0, 0.0) {
        return Err(Error::InvalidParameter("x = 1 is singular".into()));
    }
    let lhs = hamming_we(&flows(g, q)?, g.edge_count()).eval(x);
    let s = g.stats();
    let x1 = x - 1.0;
    let rhs = x1.powu(s.nullity as u32) * tutte_dc(g).eval(x, (x1 + q as f64) / x1);
    Ok((lhs, rhs))
}

/// Both sides of MacWilliams duality for complete weight enumerators:
/// lhs = enumerator of the tensions with `weights`,
/// rhs = `|flows|^{-1}` times the enumerator of the flows with the
/// transformed weights.
pub fn macwilliams_check(g: &Multigraph, q: usize, weights: &ZqFun) -> Result<(C64, C64)> {
    if weights.q() != q {
        return Err(Error::ModulusMismatch(q, weights.q()));
    }
    let tension_set = tensions(g, q)?;
    let flow_set = flows(g, q)?;
    let lhs = if tension_set.is_empty() {
        // edgeless graph: the empty product over the single empty tension
        C64::new(1.0, 0.0)
    } else {
        complete_we(&tension_set, weights)?
    };
    let what = dft(weights);
    let rhs = if flow_set.is_empty() {
        C64::new(1.0, 0.0)
    } else {
        complete_we(&flow_set, &what)? / flow_set.len() as f64
    };
    Ok((lhs, rhs))
}

/// Exact integer form of Hamming-enumerator duality:
/// returns the tension enumerator and
/// `q^{-n} sum_(b in flows) (x+q-1)^(#zeros) (x-1)^(#nonzeros)`
/// as polynomials; they must be identical.
pub fn hamming_duality_pair(g: &Multigraph, q: usize) -> Result<(UniPoly, UniPoly)> {
    let m = g.edge_count();
    let lhs = hamming_we(&tensions(g, q)?, m);
    let flow_set = flows(g, q)?;
    let zero_dual = UniPoly::from_coeffs(vec![BigInt::from(q as i64 - 1), BigInt::one()]);
    let nonzero_dual = UniPoly::from_coeffs(vec![BigInt::from(-1), BigInt::one()]);
    let mut acc = UniPoly::zero();
    for b in &flow_set {
        let zeros = m - b.weight();
        acc = acc.add(&zero_dual.pow(zeros).mul(&nonzero_dual.pow(m - zeros)));
    }
    let rhs = acc.div_exact(&BigInt::from(flow_set.len()))?;
    Ok((lhs, rhs))
}
