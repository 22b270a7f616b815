//! Sparse expansion of edge-kernel graph polynomials modulo `x_v^q - 1`,
//! their norms and coefficients, and the combinatorial right-hand sides they
//! are tested against: the sine sum for list-colouring counts, the partial
//! orientation sum, flow-coset coefficients, and the two l2-norm sums.
//!
//! The polynomial attached to a graph and a `q x q` kernel `f` is
//! `F(G; x) = prod_(u,v) sum_(a,b) f(a,b) x_u^a x_v^b`, with every exponent
//! reduced mod q as the product is accumulated.

use crate::error::{Error, Result};
use crate::fourier::{crosscorr, dft, root_of_unity, ZqFun};
use crate::graph::Multigraph;
use crate::tension_flow::{
    complete_we, complete_we_coset, image_s, kernel_st, q1_flows, CoboundaryMap, ColourVector,
    EdgeVector,
};
use crate::tol::{self, ABS_TOL};
use crate::tutte::{for_each_tuple, EdgeKernel};
use crate::C64;
use std::collections::BTreeMap;

/// Sparse polynomial in `|V|` variables with exponents in Z_q, keyed by
/// exponent vector in lexicographic order.
#[derive(Clone, PartialEq, Debug)]
pub struct CoeffMap {
    q: usize,
    vertex_count: usize,
    terms: BTreeMap<Vec<usize>, C64>,
}

impl CoeffMap {
    pub fn constant(q: usize, vertex_count: usize, value: C64) -> Self {
        let mut terms = BTreeMap::new();
        if value.norm() > 0.0 {
            terms.insert(vec![0; vertex_count], value);
        }
        CoeffMap {
            q,
            vertex_count,
            terms,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], C64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// The coefficient of `x^a`, zero if absent. `a` is reduced mod q.
    pub fn coefficient(&self, a: &[usize]) -> C64 {
        if a.len() != self.vertex_count {
            return C64::new(0.0, 0.0);
        }
        let key: Vec<usize> = a.iter().map(|&x| x % self.q).collect();
        self.terms.get(&key).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// `sum_a |[x^a]F|^2`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// Number of coefficients with modulus above the zero tolerance.
    pub fn l0_norm(&self) -> usize {
        self.terms.values().filter(|c| c.norm() > ABS_TOL).count()
    }

    pub fn scale(&self, c: C64) -> CoeffMap {
        CoeffMap {
            q: self.q,
            vertex_count: self.vertex_count,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect(),
        }
    }

    pub fn add(&self, other: &CoeffMap) -> Result<CoeffMap> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.vertex_count != other.vertex_count {
            return Err(Error::InvalidParameter(format!(
                "vertex counts {} and {} differ",
                self.vertex_count, other.vertex_count
            )));
        }
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert(C64::new(0.0, 0.0));
            *entry += v;
            if entry.norm() <= tol::PRUNE_ACCUMULATE {
                terms.remove(k);
            }
        }
        Ok(CoeffMap {
            q: self.q,
            vertex_count: self.vertex_count,
            terms,
        })
    }

    pub fn max_abs_diff(&self, other: &CoeffMap) -> Result<f64> {
        let diff = self.add(&other.scale(C64::new(-1.0, 0.0)))?;
        Ok(diff
            .terms
            .values()
            .map(|c| c.norm())
            .fold(0.0, f64::max))
    }
}

/// Edge kernel supported on the line `{(a, b) : a + s b = t}` with
/// `f(t - s b, b) = g(b)`: one nonzero entry per column.
#[derive(Clone, Debug)]
pub struct RestrictedKernel {
    g: ZqFun,
    s: usize,
    t: usize,
}

impl RestrictedKernel {
    pub fn new(g: ZqFun, s: usize, t: usize) -> Self {
        let q = g.q();
        RestrictedKernel {
            g,
            s: s % q,
            t: t % q,
        }
    }

    pub fn q(&self) -> usize {
        self.g.q()
    }

    pub fn g(&self) -> &ZqFun {
        &self.g
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The dense `q x q` kernel this restriction induces.
    pub fn to_edge_kernel(&self) -> EdgeKernel {
        let q = self.q();
        EdgeKernel::from_fn(q, |a, b| {
            if (a + self.s * b) % q == self.t {
                self.g.at(b)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .expect("q validated by ZqFun")
    }

    fn coboundary_map(&self, g: &Multigraph, q: usize) -> Result<CoboundaryMap> {
        if q != self.q() {
            return Err(Error::ModulusMismatch(q, self.q()));
        }
        CoboundaryMap::new(g.clone(), q, self.s, self.t)
    }
}

fn require_q2(q: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter("kernel needs q >= 2".into()));
    }
    Ok(())
}

/// `f(1,0) = 1, f(0,1) = -1`: each edge contributes `x_u - x_v`.
pub fn petersen_kernel(q: usize) -> Result<RestrictedKernel> {
    require_q2(q)?;
    let g = ZqFun::delta(q, 0).sub(&ZqFun::delta(q, 1))?;
    Ok(RestrictedKernel::new(g, 1, 1))
}

/// `g(0) = y + (q-1)w`, `g(b) = y - w` off zero, `s = 1`, `t = 0`: the
/// kernel whose expansion is constant exactly when the partition function
/// is Tutte-Grothendieck.
pub fn prop_constant_kernel(q: usize, y: C64, w: C64) -> Result<RestrictedKernel> {
    require_q2(q)?;
    let g = ZqFun::from_fn(q, |b| if b == 0 { y + (q as f64 - 1.0) * w } else { y - w });
    Ok(RestrictedKernel::new(g, 1, 0))
}

/// `f(1,0) = f(0,1) = 1`: each edge contributes `x_u + x_v`, the generating
/// function for score vectors of orientations.
pub fn score_kernel(q: usize) -> Result<RestrictedKernel> {
    require_q2(q)?;
    let g = ZqFun::delta(q, 0).add(&ZqFun::delta(q, 1))?;
    Ok(RestrictedKernel::new(g, 1, 1))
}

/// Expands `prod_e sum_(a,b) f(a,b) x_u^a x_v^b` edge by edge, reducing
/// exponents mod q. A loop at `v` contributes `sum_(a,b) f(a,b) x_v^(a+b)`.
///
/// Guarded upfront: the smaller of `q^|V|` and the product of per-edge
/// support sizes must not exceed 10^7.
pub fn expand(g: &Multigraph, kernel: &EdgeKernel) -> Result<CoeffMap> {
    let q = kernel.q();
    let n = g.vertex_count();
    let support: Vec<(usize, usize, C64)> = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, kernel.get(a, b)))
        .filter(|&(_, _, f)| f.norm() > 0.0)
        .collect();
    let mut estimate: u128 = 1;
    for _ in 0..g.edge_count() {
        estimate = estimate.saturating_mul(support.len() as u128);
    }
    let cap = (q as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if estimate.min(cap) > tol::ENUM_GUARD as u128 {
        return Err(Error::SizeGuard(format!(
            "expansion may reach {} terms, limit is {}",
            estimate.min(cap),
            tol::ENUM_GUARD
        )));
    }

    let mut acc: BTreeMap<Vec<usize>, C64> = BTreeMap::new();
    acc.insert(vec![0; n], C64::new(1.0, 0.0));
    for &(u, v) in g.edges() {
        let mut next: BTreeMap<Vec<usize>, C64> = BTreeMap::new();
        for (exps, coeff) in &acc {
            for &(a, b, f) in &support {
                let mut e2 = exps.clone();
                e2[u] = (e2[u] + a) % q;
                e2[v] = (e2[v] + b) % q; // u == v accumulates a + b
                let entry = next.entry(e2).or_insert(C64::new(0.0, 0.0));
                *entry += coeff * f;
            }
        }
        next.retain(|_, c| c.norm() > tol::PRUNE_ACCUMULATE);
        acc = next;
    }
    acc.retain(|_, c| c.norm() > tol::PRUNE_FINAL);
    Ok(CoeffMap {
        q,
        vertex_count: n,
        terms: acc,
    })
}

/// Evaluates the unexpanded product at the root-of-unity point
/// `x_v = zeta^(d_v)`: `prod_(u,v) sum_(a,b) f(a,b) zeta^(a d_u + b d_v)`.
pub fn eval_at_roots(g: &Multigraph, kernel: &EdgeKernel, d: &ColourVector) -> Result<C64> {
    let q = kernel.q();
    if d.q() != q {
        return Err(Error::ModulusMismatch(q, d.q()));
    }
    if d.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "point has {} coordinates, graph has {} vertices",
            d.len(),
            g.vertex_count()
        )));
    }
    let mut prod = C64::new(1.0, 0.0);
    for &(u, v) in g.edges() {
        let mut factor = C64::new(0.0, 0.0);
        for a in 0..q {
            for b in 0..q {
                let f = kernel.get(a, b);
                if f.norm() > 0.0 {
                    factor += f * root_of_unity(q, (a * d.get(u) + b * d.get(v)) % q);
                }
            }
        }
        prod *= factor;
    }
    Ok(prod)
}

/// `q^{-|V|} 4^{|E|} sum_c prod_(uv) sin^2(pi (c_v - c_u) / q)`: the
/// colouring sum equal to the squared l2 norm of the `x_u - x_v` expansion.
pub fn alon_tarsi_rhs(g: &Multigraph, q: usize) -> Result<f64> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    tol::guarded_pow(q, g.vertex_count()).ok_or_else(|| {
        Error::SizeGuard(format!(
            "q^|V| = {q}^{} exceeds {}",
            g.vertex_count(),
            tol::ENUM_GUARD
        ))
    })?;
    let sin_sq: Vec<f64> = (0..q)
        .map(|k| {
            let s = (std::f64::consts::PI * k as f64 / q as f64).sin();
            s * s
        })
        .collect();
    let mut total = 0.0;
    for_each_tuple(g.vertex_count(), q, |c| {
        let mut prod = 1.0;
        for &(u, v) in g.edges() {
            prod *= sin_sq[(c[v] + q - c[u]) % q];
        }
        total += prod;
    });
    Ok((q as f64).powi(-(g.vertex_count() as i32)) * 4f64.powi(g.edge_count() as i32) * total)
}

/// `(-1)^{|E|} sum over partial orientations b of (-2)^(#unoriented edges)`,
/// summed over assignments of 0/+1/-1 to edges whose net flow at every
/// vertex is zero mod q. Equal to the same squared l2 norm.
pub fn tarsi_rhs(g: &Multigraph, q: usize) -> Result<f64> {
    let m = g.edge_count() as i32;
    if q == 1 {
        // every assignment balances mod 1; each edge sums to (-2) + 1 + 1 = 0
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    let mut total = 0.0;
    for b in q1_flows(g, q)? {
        let nonzero = b.weight() as i32;
        let mut term = (-2f64).powi(m - nonzero);
        if q == 2 {
            // 1 and -1 coincide mod 2, so each nonzero entry stands for
            // two orientations
            term *= 2f64.powi(nonzero);
        }
        total += term;
    }
    Ok(if m % 2 == 0 { total } else { -total })
}

/// First `b` in lexicographic order with `pred(b)`, over Z_q^n.
fn first_tuple_lex(n: usize, q: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut b = vec![0usize; n];
    'outer: loop {
        if pred(&b) {
            return Some(b);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            b[pos] += 1;
            if b[pos] < q {
                continue 'outer;
            }
            b[pos] = 0;
        }
    }
}

/// The coefficient of `x^a` in the expansion of a restricted kernel,
/// computed without expanding: solve `S^T b = a - T^T 1` for one `b`
/// (lexicographically first; any solution gives the same coset) and return
/// the coset weight enumerator `sum_(z in ker S^T) g^(tensor E)(z + b)`.
/// Returns 0 when no solution exists. Guarded at `q^|E|`.
pub fn coset_coeff(
    g: &Multigraph,
    q: usize,
    kernel: &RestrictedKernel,
    a: &ColourVector,
) -> Result<C64> {
    if a.q() != q {
        return Err(Error::ModulusMismatch(q, a.q()));
    }
    if a.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "exponent vector has {} coordinates, graph has {} vertices",
            a.len(),
            g.vertex_count()
        )));
    }
    let map = kernel.coboundary_map(g, q)?;
    tol::guarded_pow(q, g.edge_count()).ok_or_else(|| {
        Error::SizeGuard(format!(
            "coset search needs {q}^{} enumeration, limit is {}",
            g.edge_count(),
            tol::ENUM_GUARD
        ))
    })?;
    let shift = map.ttop_one();
    let target = ColourVector::new(
        q,
        a.entries()
            .iter()
            .zip(shift.entries())
            .map(|(&x, &y)| (x + q - y) % q),
    )?;
    let found = first_tuple_lex(g.edge_count(), q, |b| {
        let v = EdgeVector::new(q, b.iter().copied()).expect("q validated");
        map.apply_st(&v).expect("sizes match") == target
    });
    let b0 = match found {
        Some(b) => EdgeVector::new(q, b)?,
        None => return Ok(C64::new(0.0, 0.0)),
    };
    let kernel_set = kernel_st(&map)?;
    complete_we_coset(&kernel_set, &b0, kernel.g())
}

/// `sum_(b in ker S^T) (g star g)^(tensor E)(b)`: the flow-side value of
/// the squared l2 norm.
pub fn l2_flow_rhs(g: &Multigraph, q: usize, kernel: &RestrictedKernel) -> Result<C64> {
    let map = kernel.coboundary_map(g, q)?;
    let gg = crosscorr(kernel.g(), kernel.g())?;
    let kernel_set = kernel_st(&map)?;
    if kernel_set.is_empty() {
        return Ok(C64::new(1.0, 0.0));
    }
    complete_we(&kernel_set, &gg)
}

/// `|im S|^{-1} sum_(b in im S) |ghat|^2 tensored over edges`: the
/// image-side value of the same norm.
pub fn l2_image_rhs(g: &Multigraph, q: usize, kernel: &RestrictedKernel) -> Result<C64> {
    let map = kernel.coboundary_map(g, q)?;
    let ghat_sq = dft(kernel.g()).modulus_squared();
    let image = image_s(&map)?;
    if image.is_empty() {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(complete_we(&image, &ghat_sq)? / image.len() as f64)
}

/// When `s = 1` and `g star g` is constant off zero (within the absolute
/// tolerance), the squared l2 norm is a Tutte evaluation. Returns
/// `(Y, W) = ((g star g)(0), the common off-zero value)` in that case.
pub fn l2_tg_predicate(kernel: &RestrictedKernel) -> Option<(C64, C64)> {
    let q = kernel.q();
    if kernel.s() != 1 % q {
        return None;
    }
    let gg = crosscorr(kernel.g(), kernel.g()).expect("same modulus");
    let y = gg.at(0);
    if q == 1 {
        return Some((y, C64::new(0.0, 0.0)));
    }
    let w = gg.at(1);
    for b in 2..q {
        if (gg.at(b) - w).norm() > ABS_TOL {
            return None;
        }
    }
    Some((y, w))
}

/// Number of distinct score vectors of orientations of `G`: the l0 norm of
/// the `x_u + x_v` expansion. Requires `q` greater than the maximum degree
/// so that reduction mod `x^q - 1` cannot merge exponents; this count
/// equals the number of spanning forests, `T(G; 2, 1)`.
pub fn score_l0(g: &Multigraph, q: usize) -> Result<usize> {
    if q <= g.max_degree() {
        return Err(Error::InvalidParameter(format!(
            "q = {q} must exceed the maximum degree {} for an unreduced expansion",
            g.max_degree()
        )));
    }
    let kernel = score_kernel(q)?;
    Ok(expand(g, &kernel.to_edge_kernel())?.l0_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::tension_flow::flows;
    use crate::tutte::tutte_dc;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    fn cv(q: usize, entries: &[usize]) -> ColourVector {
        ColourVector::new(q, entries.iter().copied()).unwrap()
    }

    fn random_restricted(q: usize, rng: &mut ChaCha8Rng) -> RestrictedKernel {
        let g = ZqFun::from_fn(q, |_| {
            C64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU))
        });
        RestrictedKernel::new(g, rng.gen_range(0..q), rng.gen_range(0..q))
    }

    #[test]
    fn expand_difference_kernel_on_an_edge() {
        let k2 = Family::Complete(2).build().unwrap();
        let f = expand(&k2, &petersen_kernel(3).unwrap().to_edge_kernel()).unwrap();
        assert_eq!(f.len(), 2);
        assert!((f.coefficient(&[1, 0]) - c(1.0)).norm() <= ABS_TOL);
        assert!((f.coefficient(&[0, 1]) - c(-1.0)).norm() <= ABS_TOL);
        assert!(f.coefficient(&[2, 2]).norm() <= ABS_TOL);
    }

    #[test]
    fn expand_edgeless_graph() {
        let g = graph(3, &[]);
        let f = expand(&g, &petersen_kernel(4).unwrap().to_edge_kernel()).unwrap();
        assert_eq!(f.len(), 1);
        assert!((f.coefficient(&[0, 0, 0]) - c(1.0)).norm() <= ABS_TOL);
    }

    #[test]
    fn expand_squared_difference() {
        let x2 = Family::Multiedge(2).build().unwrap();
        let f = expand(&x2, &petersen_kernel(3).unwrap().to_edge_kernel()).unwrap();
        assert!((f.coefficient(&[2, 0]) - c(1.0)).norm() <= ABS_TOL);
        assert!((f.coefficient(&[1, 1]) - c(-2.0)).norm() <= ABS_TOL);
        assert!((f.coefficient(&[0, 2]) - c(1.0)).norm() <= ABS_TOL);
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn expand_loop_kills_difference_kernel() {
        let loop_g = Family::Bouquet(1).build().unwrap();
        let f = expand(&loop_g, &petersen_kernel(3).unwrap().to_edge_kernel()).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.l2_norm_sq(), 0.0);
        assert_eq!(f.l0_norm(), 0);
    }

    #[test]
    fn norms_of_difference_expansion() {
        let k2 = Family::Complete(2).build().unwrap();
        let f = expand(&k2, &petersen_kernel(3).unwrap().to_edge_kernel()).unwrap();
        assert!((f.l2_norm_sq() - 2.0).abs() <= ABS_TOL);
        assert_eq!(f.l0_norm(), 2);
    }

    #[test]
    fn eval_at_roots_examples() {
        let k2 = Family::Complete(2).build().unwrap();
        let kernel = petersen_kernel(3).unwrap().to_edge_kernel();
        // all-zero point: sum of all kernel entries per edge
        let at_zero = eval_at_roots(&k2, &kernel, &cv(3, &[0, 0])).unwrap();
        assert!(at_zero.norm() <= ABS_TOL); // 1 - 1
        let zeta = root_of_unity(3, 1);
        let got = eval_at_roots(&k2, &kernel, &cv(3, &[0, 1])).unwrap();
        assert!((got - (c(1.0) - zeta)).norm() <= ABS_TOL);
    }

    #[test]
    fn expansion_agrees_with_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let c3 = Family::Cycle(3).build().unwrap();
        for q in 2..=4 {
            let kernel = random_restricted(q, &mut rng).to_edge_kernel();
            let f = expand(&c3, &kernel).unwrap();
            for _ in 0..5 {
                let d = cv(q, &[rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q)]);
                let direct = eval_at_roots(&c3, &kernel, &d).unwrap();
                let via_terms: C64 = f
                    .terms()
                    .map(|(a, coeff)| {
                        let dot: usize = a
                            .iter()
                            .zip(d.entries())
                            .map(|(&x, &y)| x * y)
                            .sum::<usize>()
                            % q;
                        coeff * root_of_unity(q, dot)
                    })
                    .sum();
                assert!(
                    (direct - via_terms).norm() <= 1e-6 * direct.norm().max(1.0),
                    "q={q}"
                );
            }
        }
    }

    #[test]
    fn parseval_bridge() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for g in [
            Family::Cycle(3).build().unwrap(),
            Family::Multiedge(2).build().unwrap(),
            graph(3, &[(0, 1), (1, 2), (2, 2)]),
        ] {
            for q in 2..=3 {
                let kernel = random_restricted(q, &mut rng).to_edge_kernel();
                let f = expand(&g, &kernel).unwrap();
                let mut total = 0.0;
                for_each_tuple(g.vertex_count(), q, |d| {
                    let point = cv(q, d);
                    total += eval_at_roots(&g, &kernel, &point).unwrap().norm_sqr();
                });
                let mean = total / (q as f64).powi(g.vertex_count() as i32);
                assert!(
                    (f.l2_norm_sq() - mean).abs() <= 1e-6 * mean.max(1.0),
                    "q={q}"
                );
            }
        }
    }

    #[test]
    fn restricted_kernel_shapes() {
        let p = petersen_kernel(3).unwrap();
        assert_eq!(p.g().values(), &[c(1.0), c(-1.0), c(0.0)]);
        assert_eq!((p.s(), p.t()), (1, 1));
        let k = p.to_edge_kernel();
        assert!((k.get(1, 0) - c(1.0)).norm() <= ABS_TOL);
        assert!((k.get(0, 1) - c(-1.0)).norm() <= ABS_TOL);
        assert!(k.get(0, 0).norm() <= ABS_TOL);

        let pc = prop_constant_kernel(3, c(0.0), c(1.0)).unwrap();
        assert_eq!(pc.g().values(), &[c(2.0), c(-1.0), c(-1.0)]);
        assert_eq!((pc.s(), pc.t()), (1, 0));

        let sc = score_kernel(4).unwrap();
        assert_eq!(
            sc.g().values(),
            &[c(1.0), c(1.0), c(0.0), c(0.0)]
        );
        assert!(petersen_kernel(1).is_err());
    }

    #[test]
    fn constant_term_counts_colourings() {
        // the constant-shape kernel at (y, w) = (0, 1) has constant term
        // q^(|E|-|V|) P(G; q)
        let c3 = Family::Cycle(3).build().unwrap();
        let kernel = prop_constant_kernel(3, c(0.0), c(1.0)).unwrap();
        let f = expand(&c3, &kernel.to_edge_kernel()).unwrap();
        let constant = f.coefficient(&[0, 0, 0]);
        assert!((constant - c(6.0)).norm() <= 1e-9, "{constant}");
    }

    #[test]
    fn sine_sum_examples() {
        let k2 = Family::Complete(2).build().unwrap();
        assert!((alon_tarsi_rhs(&k2, 3).unwrap() - 2.0).abs() <= 1e-9);
        assert!((alon_tarsi_rhs(&k2, 2).unwrap() - 2.0).abs() <= 1e-9);
        let c3 = Family::Cycle(3).build().unwrap();
        assert!((alon_tarsi_rhs(&c3, 3).unwrap() - 6.0).abs() <= 1e-9);
    }

    #[test]
    fn orientation_sum_examples() {
        let k2 = Family::Complete(2).build().unwrap();
        for q in [2usize, 3, 5] {
            assert!((tarsi_rhs(&k2, q).unwrap() - 2.0).abs() <= 1e-9);
        }
        let c3 = Family::Cycle(3).build().unwrap();
        assert!((tarsi_rhs(&c3, 3).unwrap() - 6.0).abs() <= 1e-9);
        assert!((tarsi_rhs(&c3, 5).unwrap() - 6.0).abs() <= 1e-9);
    }

    #[test]
    fn both_rhs_match_expansion_norm() {
        for g in [
            Family::Cycle(3).build().unwrap(),
            Family::Cycle(4).build().unwrap(),
            Family::Multiedge(2).build().unwrap(),
            Family::K4.build().unwrap(),
        ] {
            for q in 2..=4 {
                let f = expand(&g, &petersen_kernel(q).unwrap().to_edge_kernel()).unwrap();
                let l2 = f.l2_norm_sq();
                let at = alon_tarsi_rhs(&g, q).unwrap();
                let ta = tarsi_rhs(&g, q).unwrap();
                assert!((l2 - at).abs() <= 1e-6 * l2.max(1.0), "q={q} {g:?}");
                assert!((l2 - ta).abs() <= 1e-6 * l2.max(1.0), "q={q} {g:?}");
            }
        }
    }

    #[test]
    fn coset_coefficient_examples() {
        let k2 = Family::Complete(2).build().unwrap();
        let p3 = petersen_kernel(3).unwrap();
        let got = coset_coeff(&k2, 3, &p3, &cv(3, &[1, 0])).unwrap();
        assert!((got - c(1.0)).norm() <= ABS_TOL);
        // no solution: the coefficient is absent from the expansion
        let got = coset_coeff(&k2, 3, &p3, &cv(3, &[0, 0])).unwrap();
        assert!(got.norm() <= ABS_TOL);
        // constant flows on the triangle cancel
        let c3 = Family::Cycle(3).build().unwrap();
        let got = coset_coeff(&c3, 3, &p3, &cv(3, &[1, 1, 1])).unwrap();
        assert!(got.norm() <= ABS_TOL);
    }

    #[test]
    fn coset_coefficients_match_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for g in [
            Family::Cycle(3).build().unwrap(),
            Family::Multiedge(2).build().unwrap(),
            graph(3, &[(0, 1), (1, 2), (2, 2)]),
        ] {
            for q in 2..=3 {
                let kernel = random_restricted(q, &mut rng);
                let f = expand(&g, &kernel.to_edge_kernel()).unwrap();
                let mut checked = 0;
                for_each_tuple(g.vertex_count(), q, |a| {
                    let point = cv(q, a);
                    let direct = coset_coeff(&g, q, &kernel, &point).unwrap();
                    let stored = f.coefficient(a);
                    assert!(
                        (direct - stored).norm() <= 1e-6 * stored.norm().max(1.0),
                        "q={q} a={a:?}: {direct} vs {stored}"
                    );
                    checked += 1;
                });
                assert_eq!(checked, q.pow(g.vertex_count() as u32));
            }
        }
    }

    #[test]
    fn l2_rhs_examples() {
        let k2 = Family::Complete(2).build().unwrap();
        let p3 = petersen_kernel(3).unwrap();
        assert!((l2_flow_rhs(&k2, 3, &p3).unwrap() - c(2.0)).norm() <= ABS_TOL);
        assert!((l2_image_rhs(&k2, 3, &p3).unwrap() - c(2.0)).norm() <= ABS_TOL);
        let c3 = Family::Cycle(3).build().unwrap();
        assert!((l2_flow_rhs(&c3, 3, &p3).unwrap() - c(6.0)).norm() <= ABS_TOL);
        assert!((l2_image_rhs(&c3, 3, &p3).unwrap() - c(6.0)).norm() <= ABS_TOL);
        let sc = score_kernel(3).unwrap();
        assert!((l2_flow_rhs(&c3, 3, &sc).unwrap() - c(10.0)).norm() <= ABS_TOL);
    }

    #[test]
    fn l2_rhs_match_expansion_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for g in [
            Family::Cycle(3).build().unwrap(),
            Family::Multiedge(3).build().unwrap(),
            graph(3, &[(0, 1), (1, 2), (1, 1)]),
        ] {
            for q in 2..=4 {
                for _ in 0..3 {
                    let kernel = random_restricted(q, &mut rng);
                    let l2 = c(expand(&g, &kernel.to_edge_kernel()).unwrap().l2_norm_sq());
                    let via_flows = l2_flow_rhs(&g, q, &kernel).unwrap();
                    let via_image = l2_image_rhs(&g, q, &kernel).unwrap();
                    assert!(
                        (l2 - via_flows).norm() <= 1e-6 * l2.norm().max(1.0),
                        "flow side, q={q} s={} t={}",
                        kernel.s(),
                        kernel.t()
                    );
                    assert!(
                        (l2 - via_image).norm() <= 1e-6 * l2.norm().max(1.0),
                        "image side, q={q} s={} t={}",
                        kernel.s(),
                        kernel.t()
                    );
                }
            }
        }
    }

    #[test]
    fn tg_predicate_examples() {
        let p3 = petersen_kernel(3).unwrap();
        let (y, w) = l2_tg_predicate(&p3).expect("q=3 difference kernel qualifies");
        assert!((y - c(2.0)).norm() <= ABS_TOL);
        assert!((w - c(-1.0)).norm() <= ABS_TOL);
        let p5 = petersen_kernel(5).unwrap();
        assert!(l2_tg_predicate(&p5).is_none());
        let leg = RestrictedKernel::new(crate::fourier::legendre_char(5).unwrap(), 1, 1);
        let (y, w) = l2_tg_predicate(&leg).expect("quadratic-residue autocorrelation is flat");
        assert!((y - c(4.0)).norm() <= ABS_TOL);
        assert!((w - c(-1.0)).norm() <= ABS_TOL);
        // s != 1 disqualifies
        let shifted = RestrictedKernel::new(p3.g().clone(), 2, 1);
        assert!(l2_tg_predicate(&shifted).is_none());
    }

    #[test]
    fn tg_predicate_gives_tutte_evaluation() {
        // when g star g is flat off zero, the norm is a flow enumerator and
        // hence a Tutte evaluation at x = Y/W
        for (kernel, g) in [
            (score_kernel(3).unwrap(), Family::Cycle(3).build().unwrap()),
            (petersen_kernel(3).unwrap(), Family::K4.build().unwrap()),
        ] {
            let q = kernel.q();
            let (y, w) = l2_tg_predicate(&kernel).unwrap();
            let l2 = c(expand(&g, &kernel.to_edge_kernel()).unwrap().l2_norm_sq());
            let gg = crosscorr(kernel.g(), kernel.g()).unwrap();
            let via_flows = complete_we(&flows(&g, q).unwrap(), &gg).unwrap();
            assert!((l2 - via_flows).norm() <= 1e-6 * l2.norm().max(1.0));
            let s = g.stats();
            let x = y / w;
            let tutte = tutte_dc(&g).eval(x, (x - 1.0 + q as f64) / (x - 1.0));
            let closed = w.powu(g.edge_count() as u32) * (x - 1.0).powu(s.nullity as u32) * tutte;
            assert!(
                (l2 - closed).norm() <= 1e-6 * l2.norm().max(1.0),
                "{l2} vs {closed}"
            );
        }
    }

    #[test]
    fn score_l0_counts_forests() {
        let k2 = Family::Complete(2).build().unwrap();
        assert_eq!(score_l0(&k2, 2).unwrap(), 2);
        let c3 = Family::Cycle(3).build().unwrap();
        assert_eq!(score_l0(&c3, 3).unwrap(), 7); // T(C3; 2, 1)
        assert!(score_l0(&c3, 2).is_err());
        for g in [
            Family::Star(3).build().unwrap(),
            Family::Cycle(4).build().unwrap(),
            Family::K4.build().unwrap(),
        ] {
            let q = g.max_degree() + 1;
            let forests = tutte_dc(&g)
                .eval_int(&BigInt::from(2), &BigInt::from(1));
            assert_eq!(BigInt::from(score_l0(&g, q).unwrap()), forests, "{g:?}");
        }
    }

    #[test]
    fn reversing_an_edge_negates_the_difference_expansion() {
        let c3 = Family::Cycle(3).build().unwrap();
        let reversed = graph(3, &[(0, 1), (2, 1), (2, 0)]); // middle edge flipped
        let kernel = petersen_kernel(3).unwrap().to_edge_kernel();
        let f = expand(&c3, &kernel).unwrap();
        let fr = expand(&reversed, &kernel).unwrap();
        assert!(f.max_abs_diff(&fr.scale(c(-1.0))).unwrap() <= ABS_TOL);
        assert!((f.l2_norm_sq() - fr.l2_norm_sq()).abs() <= ABS_TOL);
        assert_eq!(f.l0_norm(), fr.l0_norm());
    }

    #[test]
    fn expansion_guard_fires_without_allocating() {
        let long_cycle = Family::Cycle(99).build().unwrap();
        let kernel = petersen_kernel(5).unwrap().to_edge_kernel();
        assert!(matches!(
            expand(&long_cycle, &kernel),
            Err(Error::SizeGuard(_))
        ));
    }
}
