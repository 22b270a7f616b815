//! Tutte polynomials and Tutte–Grothendieck partition functions.
//!
//! The polynomial is computed by two independent routes that the test suite
//! plays against each other: a rank/nullity subset expansion
//! ([`tutte_subset`]) and memoized deletion/contraction ([`tutte_dc`]).
//! On top of it sit numeric evaluations: general TG invariants
//! ([`tg_eval`]), the monochromatic-edge generating function
//! ([`monochromial`] / [`monochromial_closed`]), and vertex-colouring
//! partition functions for an arbitrary `q x q` edge kernel
//! ([`potts_partition`] / [`potts_closed`]).

use crate::error::{Error, Result};
use crate::graph::{EdgeClass, Family, Multigraph, UnionFind};
use crate::tol::{self, ABS_TOL};
use crate::C64;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Sparse bivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are keyed by `(x_degree, y_degree)` in a sorted map, so iteration,
/// display, and the JSON coefficient list are all deterministic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(xd: u32, yd: u32, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((xd, yd), coeff);
        }
        BiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, xd: u32, yd: u32) -> BigInt {
        self.terms.get(&(xd, yd)).cloned().unwrap_or_default()
    }

    /// Terms in lexicographic `(x_degree, y_degree)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn add_term(&mut self, xd: u32, yd: u32, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((xd, yd)).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(xd, yd));
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                out.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        out
    }

    /// Numeric evaluation at a complex point.
    pub fn eval(&self, x: C64, y: C64) -> C64 {
        let max_x = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let xp = power_table(x, max_x);
        let yp = power_table(y, max_y);
        let mut acc = C64::new(0.0, 0.0);
        for (i, j, c) in self.terms() {
            acc += big_to_c64(c) * xp[i as usize] * yp[j as usize];
        }
        acc
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, j, c) in self.terms() {
            acc += c * x.pow(i) * y.pow(j);
        }
        acc
    }

    /// Coefficient triples `[x_degree, y_degree, decimal string]` in
    /// lexicographic order, the JSON interchange form.
    pub fn coeff_triples(&self) -> Vec<(u32, u32, String)> {
        self.terms().map(|(i, j, c)| (i, j, c.to_string())).collect()
    }

    /// `true` when every coefficient is nonnegative.
    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, j) {
                (0, 0) => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}*")?;
                    }
                    if i > 0 {
                        write!(f, "x^{i}")?;
                    }
                    if i > 0 && j > 0 {
                        write!(f, "*")?;
                    }
                    if j > 0 {
                        write!(f, "y^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn power_table(base: C64, max: u32) -> Vec<C64> {
    let mut v = Vec::with_capacity(max as usize + 1);
    let mut acc = C64::new(1.0, 0.0);
    v.push(acc);
    for _ in 0..max {
        acc *= base;
        v.push(acc);
    }
    v
}

pub(crate) fn big_to_c64(c: &BigInt) -> C64 {
    use num_traits::ToPrimitive;
    C64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for row in 0..=n {
        let mut r = vec![BigInt::zero(); row + 1];
        r[0] = BigInt::one();
        r[row] = BigInt::one();
        for k in 1..row {
            r[k] = &t[row - 1][k - 1] + &t[row - 1][k];
        }
        t.push(r);
    }
    t
}

/// Tutte polynomial by the rank/nullity subset expansion
/// `T(G; x, y) = sum_{A subseteq E} (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))`.
///
/// Guarded at 2^24 subsets.
pub fn tutte_subset(g: &Multigraph) -> Result<BiPoly> {
    let m = g.edge_count();
    if m > tol::SUBSET_EDGE_GUARD {
        return Err(Error::SizeGuard(format!(
            "subset expansion needs 2^{m} subsets, limit is 2^{}",
            tol::SUBSET_EDGE_GUARD
        )));
    }
    let edges = g.edges();
    let r_total = g.stats().rank;
    // counts[dr][dn] = number of subsets with corank dr and nullity dn
    let mut counts = vec![vec![0u64; m + 1]; r_total + 1];
    let mut uf = UnionFind::new(g.vertex_count());
    for mask in 0u32..(1u32 << m) {
        uf.reset();
        let mut size = 0usize;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                uf.union(u, v);
                size += 1;
            }
        }
        let r_a = uf.rank();
        counts[r_total - r_a][size - r_a] += 1;
    }
    // Expand sum counts[a][b] (x-1)^a (y-1)^b exactly.
    let binom = binomial_table(m.max(r_total));
    let mut out = BiPoly::zero();
    for (a, row) in counts.iter().enumerate() {
        for (b, &cnt) in row.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            let cnt = BigInt::from(cnt);
            for i in 0..=a {
                for j in 0..=b {
                    let mut c = &cnt * &binom[a][i] * &binom[b][j];
                    if (a - i + b - j) % 2 == 1 {
                        c = -c;
                    }
                    out.add_term(i as u32, j as u32, &c);
                }
            }
        }
    }
    Ok(out)
}

/// Canonical form of a multigraph under vertex relabeling, ignoring edge
/// orientation and order: the lexicographically least sorted edge list over
/// all vertex permutations. Exhaustive, meant for small graphs.
pub type CanonicalKey = (usize, Vec<(usize, usize)>);

pub fn canonical_key(g: &Multigraph) -> CanonicalKey {
    let n = g.vertex_count();
    if n == 0 {
        return (0, Vec::new());
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    for perm in (0..n).permutations(n) {
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
    }
    (n, best.unwrap())
}

/// Tutte polynomial by deletion/contraction with memoization on canonical
/// forms (for subgraphs with at most 8 vertices).
///
/// Pivot: the lowest-indexed ordinary edge. Once only bridges and loops
/// remain the branch terminates with `x^bridges * y^loops`.
pub fn tutte_dc(g: &Multigraph) -> BiPoly {
    let mut memo = HashMap::new();
    dc_rec(g, &mut memo, &mut None)
}

/// Same recursion with a seeded random pivot among the ordinary edges.
/// The result never depends on the pivots; this exists so tests can check
/// exactly that.
pub fn tutte_dc_seeded(g: &Multigraph, seed: u64) -> BiPoly {
    let mut memo = HashMap::new();
    let mut rng = Some(ChaCha8Rng::seed_from_u64(seed));
    dc_rec(g, &mut memo, &mut rng)
}

const MEMO_VERTEX_LIMIT: usize = 8;

fn dc_rec(
    g: &Multigraph,
    memo: &mut HashMap<CanonicalKey, BiPoly>,
    rng: &mut Option<ChaCha8Rng>,
) -> BiPoly {
    let mut ordinary = Vec::new();
    let mut bridges = 0u32;
    let mut loops = 0u32;
    for e in 0..g.edge_count() {
        match g.edge_class(e).expect("edge in range") {
            EdgeClass::Ordinary => ordinary.push(e),
            EdgeClass::Bridge => bridges += 1,
            EdgeClass::Loop => loops += 1,
        }
    }
    if ordinary.is_empty() {
        return BiPoly::monomial(bridges, loops, BigInt::one());
    }
    let key = (g.vertex_count() <= MEMO_VERTEX_LIMIT).then(|| canonical_key(g));
    if let Some(k) = &key {
        if let Some(hit) = memo.get(k) {
            return hit.clone();
        }
    }
    let e = match rng {
        Some(r) => ordinary[r.gen_range(0..ordinary.len())],
        None => ordinary[0],
    };
    let contracted = g.contract(e).expect("ordinary edge contracts");
    let deleted = g.delete(e).expect("edge in range");
    let result = dc_rec(&contracted, memo, rng).add(&dc_rec(&deleted, memo, rng));
    if let Some(k) = key {
        memo.insert(k, result.clone());
    }
    result
}

/// Exact number of proper `q`-colourings, `P(G; q) = q^k (-1)^r T(G; 1-q, 0)`.
pub fn chromatic(g: &Multigraph, q: usize) -> BigInt {
    let t = tutte_dc(g);
    let s = g.stats();
    let x = BigInt::from(1i64 - q as i64);
    let value = t.eval_int(&x, &BigInt::zero());
    let sign = if s.rank % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    BigInt::from(q).pow(s.components as u32) * sign * value
}

/// Weights of a Tutte–Grothendieck recurrence: empty-graph factor `gamma`
/// per vertex, `x` per bridge, `y` per loop, and `alpha F(G/e) + beta F(G\e)`
/// on ordinary edges.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TgWeights {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub x: C64,
    pub y: C64,
}

/// Evaluates the TG invariant through the closed form
/// `gamma^k alpha^r beta^n T(G; x/alpha, y/beta)`.
///
/// Rejects the singular weights `alpha = 0` or `beta = 0`.
pub fn tg_eval(g: &Multigraph, w: &TgWeights) -> Result<C64> {
    if w.alpha == C64::new(0.0, 0.0) || w.beta == C64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter(
            "tg_eval needs alpha != 0 and beta != 0".into(),
        ));
    }
    let s = g.stats();
    let t = tutte_dc(g);
    Ok(w.gamma.powu(s.components as u32)
        * w.alpha.powu(s.rank as u32)
        * w.beta.powu(s.nullity as u32)
        * t.eval(w.x / w.alpha, w.y / w.beta))
}

fn guard_colourings(g: &Multigraph, q: usize) -> Result<usize> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    tol::guarded_pow(q, g.vertex_count()).ok_or_else(|| {
        Error::SizeGuard(format!(
            "q^|V| = {q}^{} exceeds {}",
            g.vertex_count(),
            tol::ENUM_GUARD
        ))
    })
}

/// Applies `f` to every map `{0..n} -> Z_q`, in odometer order (the first
/// coordinate varies fastest).
pub(crate) fn for_each_tuple(n: usize, q: usize, mut f: impl FnMut(&[usize])) {
    if q == 0 {
        return;
    }
    let mut c = vec![0usize; n];
    loop {
        f(&c);
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            c[pos] += 1;
            if c[pos] < q {
                break;
            }
            c[pos] = 0;
            pos += 1;
        }
    }
}

/// Monochromatic-edge generating function: `sum_c y^(# edges with c_u = c_v)`
/// over all `q^|V|` colourings. Loops are always monochromatic.
pub fn monochromial(g: &Multigraph, q: usize, y: C64) -> Result<C64> {
    guard_colourings(g, q)?;
    let m = g.edge_count();
    // exact histogram by monochromatic count, then one polynomial evaluation
    let mut hist = vec![0u64; m + 1];
    for_each_tuple(g.vertex_count(), q, |c| {
        let mono = g.edges().iter().filter(|&&(u, v)| c[u] == c[v]).count();
        hist[mono] += 1;
    });
    let yp = power_table(y, m as u32);
    Ok(hist
        .iter()
        .enumerate()
        .map(|(k, &n)| yp[k] * n as f64)
        .sum())
}

/// Closed form of [`monochromial`]:
/// `q^k (y-1)^r T(G; (y-1+q)/(y-1), y)`. Rejects `y = 1`.
pub fn monochromial_closed(g: &Multigraph, q: usize, y: C64) -> Result<C64> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    if y == C64::new(1.0, 0.0) {
        return Err(Error::InvalidParameter(
            "y = 1 is singular in the closed form".into(),
        ));
    }
    let s = g.stats();
    let t = tutte_dc(g);
    let y1 = y - 1.0;
    let x_arg = (y1 + q as f64) / y1;
    Ok((q as f64).powi(s.components as i32) * y1.powu(s.rank as u32) * t.eval(x_arg, y))
}

/// A dense `q x q` complex edge-weight matrix `W(a, b)`.
#[derive(Clone, PartialEq, Debug)]
pub struct EdgeKernel {
    q: usize,
    entries: Vec<C64>,
}

impl EdgeKernel {
    pub fn new(q: usize, entries: Vec<C64>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("kernel needs q >= 1".into()));
        }
        if entries.len() != q * q {
            return Err(Error::InvalidParameter(format!(
                "kernel needs {} entries, got {}",
                q * q,
                entries.len()
            )));
        }
        Ok(EdgeKernel { q, entries })
    }

    pub fn from_fn(q: usize, f: impl Fn(usize, usize) -> C64) -> Result<Self> {
        let entries = (0..q * q).map(|i| f(i / q, i % q)).collect();
        EdgeKernel::new(q, entries)
    }

    /// Diagonal entries `y`, off-diagonal entries `w`.
    pub fn constant_diagonal(q: usize, w: C64, y: C64) -> Result<Self> {
        EdgeKernel::from_fn(q, |a, b| if a == b { y } else { w })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn get(&self, a: usize, b: usize) -> C64 {
        self.entries[a * self.q + b]
    }

    /// Index pairs of the diagonal `{(a, a)}`.
    pub fn diagonal_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.q).map(|a| (a, a)).collect()
    }

    /// Index pairs of the antidiagonal `{(a, -a mod q)}`.
    pub fn antidiagonal_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.q)
            .map(|a| (a, (self.q - a) % self.q))
            .collect()
    }
}

/// Vertex-colouring partition function
/// `F(G) = sum_{c in Z_q^V} prod_{(u,v) in E} W(c_u, c_v)`,
/// by direct enumeration (guarded at `q^|V| <= 10^7`).
pub fn potts_partition(g: &Multigraph, kernel: &EdgeKernel) -> Result<C64> {
    guard_colourings(g, kernel.q())?;
    let mut acc = C64::new(0.0, 0.0);
    for_each_tuple(g.vertex_count(), kernel.q(), |c| {
        let mut prod = C64::new(1.0, 0.0);
        for &(u, v) in g.edges() {
            prod *= kernel.get(c[u], c[v]);
        }
        acc += prod;
    });
    Ok(acc)
}

/// Closed form of [`potts_partition`] for the constant-diagonal kernel
/// (diagonal `y`, off-diagonal `w`):
/// `q^k w^n (y-w)^r T(G; (y+(q-1)w)/(y-w), y/w)`,
/// with the degenerate cases `w = 0 -> y^|E|` and `w = y -> q^|V| y^|E|`.
pub fn potts_closed(g: &Multigraph, q: usize, w: C64, y: C64) -> Result<C64> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let m = g.edge_count() as u32;
    if w == C64::new(0.0, 0.0) {
        return Ok(y.powu(m));
    }
    if w == y {
        return Ok((q as f64).powi(g.vertex_count() as i32) * y.powu(m));
    }
    let s = g.stats();
    let t = tutte_dc(g);
    let x_arg = (y + (q as f64 - 1.0) * w) / (y - w);
    let y_arg = y / w;
    Ok((q as f64).powi(s.components as i32)
        * w.powu(s.nullity as u32)
        * (y - w).powu(s.rank as u32)
        * t.eval(x_arg, y_arg))
}

/// Tests whether a kernel has the constant-diagonal shape that makes the
/// partition function a TG invariant. Returns `(w, y)` when all diagonal
/// entries agree and all off-diagonal entries agree within `1e-9`.
/// For `q = 1` there are no off-diagonal entries and `w = y` is reported.
pub fn tg_matrix_test(kernel: &EdgeKernel) -> Option<(C64, C64)> {
    let q = kernel.q();
    let y = kernel.get(0, 0);
    for a in 0..q {
        if (kernel.get(a, a) - y).norm() > ABS_TOL {
            return None;
        }
    }
    if q == 1 {
        return Some((y, y));
    }
    let w = kernel.get(0, 1);
    for a in 0..q {
        for b in 0..q {
            if a != b && (kernel.get(a, b) - w).norm() > ABS_TOL {
                return None;
            }
        }
    }
    Some((w, y))
}

/// Outcome of probing a kernel's partition values against a TG recurrence
/// on the small test families (bouquets, multiedges with both orientations,
/// stars).
#[derive(Clone, Debug)]
pub struct FamilyProbe {
    pub q: usize,
    pub m_max: usize,
    /// Empty-graph weight per vertex (always `q` for a partition function).
    pub gamma: C64,
    /// Bridge weight fitted from the one-edge star.
    pub x: C64,
    /// Loop weight fitted from the one-loop bouquet.
    pub y: C64,
    /// Ordinary-edge weights fitted from the 2- and 3-fold multiedges.
    pub alpha: C64,
    pub beta: C64,
    /// First violated relation, in the fixed check order, if any.
    pub violation: Option<String>,
    pub relations_checked: usize,
    /// Standing caveat carried on every report.
    pub note: &'static str,
}

impl FamilyProbe {
    pub fn consistent(&self) -> bool {
        self.violation.is_none()
    }
}

const PROBE_NOTE: &str = "empirical evidence from small families only; \
passing does not prove a TG recurrence exists";

/// Probes whether `potts_partition` restricted to the test families is
/// consistent with *some* TG recurrence: fits `(gamma, x, y)` from the
/// one-edge graphs and `(alpha, beta)` from the 2- and 3-fold multiedges,
/// then validates orientation independence and the loop/bridge/ordinary
/// recurrences for all `m <= m_max`. Reports the first violation found.
///
/// Requires `3 <= m_max <= 8`; star values need `q^(m_max+1)` colourings,
/// so the usual size guard applies.
pub fn tg_family_probe(kernel: &EdgeKernel, m_max: usize) -> Result<FamilyProbe> {
    if !(3..=8).contains(&m_max) {
        return Err(Error::InvalidParameter(
            "tg_family_probe needs 3 <= m_max <= 8".into(),
        ));
    }
    let q = kernel.q();
    let value = |fam: Family| -> Result<C64> { potts_partition(&fam.build()?, kernel) };

    let f_y: Vec<C64> = (1..=m_max)
        .map(|m| value(Family::Bouquet(m)))
        .collect::<Result<_>>()?;
    let f_x: Vec<C64> = (1..=m_max)
        .map(|m| value(Family::Multiedge(m)))
        .collect::<Result<_>>()?;
    let f_z: Vec<C64> = (1..=m_max)
        .map(|m| value(Family::Star(m)))
        .collect::<Result<_>>()?;

    let gamma = C64::new(q as f64, 0.0);
    let y = f_y[0] / gamma;
    let x = f_z[0] / gamma;

    // alpha, beta from  F(X_2) = a F(Y_1) + b F(X_1)
    //                   F(X_3) = a F(Y_2) + b F(X_2)
    let det = f_y[0] * f_x[1] - f_x[0] * f_y[1];
    let scale = f64::max(1.0, f64::max((f_y[0] * f_x[1]).norm(), (f_x[0] * f_y[1]).norm()));
    let (alpha, beta) = if det.norm() > ABS_TOL * scale {
        let alpha = (f_x[1] * f_x[1] - f_x[0] * f_x[2]) / det;
        let beta = (f_y[0] * f_x[2] - f_y[1] * f_x[1]) / det;
        (alpha, beta)
    } else if f_x[0].norm() > ABS_TOL {
        (C64::new(0.0, 0.0), f_x[1] / f_x[0])
    } else if f_y[0].norm() > ABS_TOL {
        (f_x[1] / f_y[0], C64::new(0.0, 0.0))
    } else {
        (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    };

    let mut probe = FamilyProbe {
        q,
        m_max,
        gamma,
        x,
        y,
        alpha,
        beta,
        violation: None,
        relations_checked: 0,
        note: PROBE_NOTE,
    };

    let check = |lhs: C64, rhs: C64, label: String, probe: &mut FamilyProbe| -> bool {
        probe.relations_checked += 1;
        if tol::close_rel(lhs, rhs) {
            true
        } else {
            probe.violation = Some(format!("{label}: {lhs} vs {rhs}"));
            false
        }
    };

    // 1. orientation independence of the partition function
    'orient: for m in 1..=m_max {
        for n in 0..=m {
            let lhs = value(Family::OrientedMultiedge { m, n })?;
            let rhs = f_x[m - 1];
            if !check(
                lhs,
                rhs,
                format!("oriented multiedge m={m} n={n} differs from multiedge m={m}"),
                &mut probe,
            ) {
                break 'orient;
            }
        }
    }
    // 2. loop rule on bouquets
    if probe.violation.is_none() {
        for m in 2..=m_max {
            if !check(
                f_y[m - 1],
                y * f_y[m - 2],
                format!("loop rule fails on bouquet m={m}"),
                &mut probe,
            ) {
                break;
            }
        }
    }
    // 3. bridge rule on stars
    if probe.violation.is_none() {
        for m in 2..=m_max {
            if !check(
                f_z[m - 1],
                x * f_z[m - 2],
                format!("bridge rule fails on star m={m}"),
                &mut probe,
            ) {
                break;
            }
        }
    }
    // 4. ordinary rule on multiedges
    if probe.violation.is_none() {
        for m in 2..=m_max {
            if !check(
                f_x[m - 1],
                alpha * f_y[m - 2] + beta * f_x[m - 2],
                format!("ordinary rule fails on multiedge m={m}"),
                &mut probe,
            ) {
                break;
            }
        }
    }
    Ok(probe)
}
