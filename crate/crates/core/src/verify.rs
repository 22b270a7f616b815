//! Named verification runs. Each check computes the two sides of one
//! identity by independent routes and packages them in a [`Report`];
//! [`check_corpus`] sweeps every check over the small-graph corpus.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fourier::ZqFun;
use crate::graph::Multigraph;
use crate::graph_poly::{
    alon_tarsi_rhs, expand, l2_flow_rhs, l2_image_rhs, petersen_kernel, prop_constant_kernel,
    tarsi_rhs, RestrictedKernel,
};
use crate::tension_flow::macwilliams_check;
use crate::tension_flow::CoboundaryMap;
use crate::tol;
use crate::tutte::{
    big_to_c64, canonical_key, chromatic, for_each_tuple, monochromial, monochromial_closed,
    potts_closed, potts_partition, tutte_dc, tutte_subset, CanonicalKey, EdgeKernel,
};
use crate::C64;

/// One side of an identity as it appears in report JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexValue {
    fn from(z: C64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

/// Outcome of one identity check. `rel_err` is `abs_err / max(1, |lhs|)`,
/// and `pass` holds exactly when it is within the identity's tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub identity: String,
    pub graph: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl Report {
    #[allow(clippy::too_many_arguments)]
    fn from_sides(
        identity: &str,
        graph: &Multigraph,
        params: BTreeMap<String, serde_json::Value>,
        lhs: C64,
        rhs: C64,
        tolerance: f64,
        seed: Option<u64>,
        start: Instant,
    ) -> Report {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / 1f64.max(lhs.norm());
        Report {
            identity: identity.to_string(),
            graph: graph_label(graph),
            params,
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_err,
            rel_err,
            pass: rel_err <= tolerance,
            seed,
            runtime: start.elapsed(),
        }
    }
}

fn graph_label(g: &Multigraph) -> String {
    let edges = g.edges().iter().map(|&(u, v)| format!("{u}-{v}")).join(" ");
    format!("{}v [{}]", g.vertex_count(), edges)
}

fn cjson(z: C64) -> serde_json::Value {
    json!({"re": z.re, "im": z.im})
}

/// Splitmix-style combination of seed components, so per-check seeds are
/// reproducible from a base seed and fixed indices.
pub fn derive_seed(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for &p in parts {
        let mut z = h ^ p.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h = z ^ (z >> 31);
    }
    h
}

/// `q` complex values with re and im uniform in [-1, 1], from a seeded
/// stream.
pub fn seeded_g(q: usize, seed: u64) -> ZqFun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ZqFun::from_fn(q, |_| C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
}

/// Kernel with seeded complex values and uniform `s`, `t`, all drawn from
/// one stream so a single seed replays the whole kernel.
pub fn seeded_kernel(q: usize, seed: u64) -> RestrictedKernel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ZqFun::from_fn(q, |_| C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)));
    let s = rng.gen_range(0..q);
    let t = rng.gen_range(0..q);
    RestrictedKernel::new(g, s, t)
}

/// Squared l2 norm of the reduced `x_u - x_v` product versus the sin^2
/// colouring sum.
pub fn check_alon_tarsi(g: &Multigraph, q: usize) -> Result<Report> {
    let start = Instant::now();
    let kernel = petersen_kernel(q)?;
    let lhs = C64::new(expand(g, &kernel.to_edge_kernel())?.l2_norm_sq(), 0.0);
    let rhs = C64::new(alon_tarsi_rhs(g, q)?, 0.0);
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    Ok(Report::from_sides(
        "alon-tarsi",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        None,
        start,
    ))
}

/// The same norm versus the partial-orientation sum.
pub fn check_tarsi(g: &Multigraph, q: usize) -> Result<Report> {
    let start = Instant::now();
    let kernel = petersen_kernel(q)?;
    let lhs = C64::new(expand(g, &kernel.to_edge_kernel())?.l2_norm_sq(), 0.0);
    let rhs = C64::new(tarsi_rhs(g, q)?, 0.0);
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    Ok(Report::from_sides(
        "tarsi",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        None,
        start,
    ))
}

/// Constant term of the constant-diagonal expansion versus
/// `(qw)^n (y-w)^r T(G; (y+(q-1)w)/(y-w), y/w)`.
pub fn check_prop_constant(g: &Multigraph, q: usize, y: C64, w: C64) -> Result<Report> {
    let start = Instant::now();
    if (y - w).norm() == 0.0 {
        return Err(Error::InvalidParameter(
            "constant-term identity needs y != w".into(),
        ));
    }
    if w.norm() == 0.0 {
        return Err(Error::InvalidParameter(
            "constant-term identity needs w != 0".into(),
        ));
    }
    let kernel = prop_constant_kernel(q, y, w)?;
    let expansion = expand(g, &kernel.to_edge_kernel())?;
    let lhs = expansion.coefficient(&vec![0; g.vertex_count()]);
    let stats = g.stats();
    let qf = q as f64;
    let rhs = (qf * w).powu(stats.nullity as u32)
        * (y - w).powu(stats.rank as u32)
        * tutte_dc(g).eval((y + (qf - 1.0) * w) / (y - w), y / w);
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    params.insert("y".into(), cjson(y));
    params.insert("w".into(), cjson(w));
    Ok(Report::from_sides(
        "prop-constant",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        None,
        start,
    ))
}

/// Every coefficient of the expansion versus the coset sum of `g` tensor
/// weights over `S^T b + T^T 1 = a`, all exponent vectors at once. The
/// report carries the worst exponent.
pub fn check_coeff_thm(
    g: &Multigraph,
    kernel: &RestrictedKernel,
    seed: Option<u64>,
) -> Result<Report> {
    let start = Instant::now();
    let q = kernel.q();
    let n = g.vertex_count();
    let m = g.edge_count();
    let bucket_count = tol::guarded_pow(q, n).ok_or_else(|| {
        Error::SizeGuard(format!(
            "coefficient sweep needs {q}^{n} buckets, limit is {}",
            tol::ENUM_GUARD
        ))
    })?;
    tol::guarded_pow(q, m).ok_or_else(|| {
        Error::SizeGuard(format!(
            "coefficient sweep needs {q}^{m} edge tuples, limit is {}",
            tol::ENUM_GUARD
        ))
    })?;
    let expansion = expand(g, &kernel.to_edge_kernel())?;

    let map = CoboundaryMap::new(g.clone(), q, kernel.s(), kernel.t())?;
    let shift = map.ttop_one();
    let g_vals: Vec<C64> = (0..q).map(|b| kernel.g().at(b)).collect();
    let neg_s = (q - kernel.s()) % q;
    let mut buckets = vec![C64::new(0.0, 0.0); bucket_count];
    let mut acc = vec![0usize; n];
    for_each_tuple(m, q, |b| {
        let mut wt = C64::new(1.0, 0.0);
        for &be in b {
            wt *= g_vals[be];
        }
        if wt.re == 0.0 && wt.im == 0.0 {
            return;
        }
        acc.copy_from_slice(shift.entries());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            acc[v] += b[e];
            acc[u] += neg_s * b[e];
        }
        let mut idx = 0usize;
        for &a in acc.iter() {
            idx = idx * q + a % q;
        }
        buckets[idx] += wt;
    });

    let mut max_rel = f64::NEG_INFINITY;
    let mut worst_a = vec![0usize; n];
    let mut worst = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for_each_tuple(n, q, |a| {
        let lhs = expansion.coefficient(a);
        let mut idx = 0usize;
        for &av in a {
            idx = idx * q + av;
        }
        let rhs = buckets[idx];
        let rel = (lhs - rhs).norm() / 1f64.max(lhs.norm());
        if rel > max_rel {
            max_rel = rel;
            worst_a = a.to_vec();
            worst = (lhs, rhs);
        }
    });

    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    params.insert("s".into(), json!(kernel.s()));
    params.insert("t".into(), json!(kernel.t()));
    params.insert("exponents".into(), json!(bucket_count));
    params.insert("worst_exponent".into(), json!(worst_a));
    let (lhs, rhs) = worst;
    Ok(Report {
        identity: "coeff-thm".into(),
        graph: graph_label(g),
        params,
        lhs: lhs.into(),
        rhs: rhs.into(),
        abs_err: (lhs - rhs).norm(),
        rel_err: max_rel,
        pass: max_rel <= tol::REL_TOL,
        seed,
        runtime: start.elapsed(),
    })
}

/// Squared l2 norm versus the flow-side sum of `g` cross-correlation
/// weights over `ker S^T`.
pub fn check_l2_thm(
    g: &Multigraph,
    kernel: &RestrictedKernel,
    seed: Option<u64>,
) -> Result<Report> {
    let start = Instant::now();
    let q = kernel.q();
    let lhs = C64::new(expand(g, &kernel.to_edge_kernel())?.l2_norm_sq(), 0.0);
    let rhs = l2_flow_rhs(g, q, kernel)?;
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    params.insert("s".into(), json!(kernel.s()));
    params.insert("t".into(), json!(kernel.t()));
    Ok(Report::from_sides(
        "l2-flow",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        seed,
        start,
    ))
}

/// Squared l2 norm versus the image-side average of `|ghat|^2` weights over
/// `im S`.
pub fn check_l2_image(
    g: &Multigraph,
    kernel: &RestrictedKernel,
    seed: Option<u64>,
) -> Result<Report> {
    let start = Instant::now();
    let q = kernel.q();
    let lhs = C64::new(expand(g, &kernel.to_edge_kernel())?.l2_norm_sq(), 0.0);
    let rhs = l2_image_rhs(g, q, kernel)?;
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    params.insert("s".into(), json!(kernel.s()));
    params.insert("t".into(), json!(kernel.t()));
    Ok(Report::from_sides(
        "l2-image",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        seed,
        start,
    ))
}

/// Complete weight enumerator of tensions versus the transformed-weight
/// enumerator of flows.
pub fn check_macwilliams(
    g: &Multigraph,
    q: usize,
    weights: &ZqFun,
    seed: Option<u64>,
) -> Result<Report> {
    let start = Instant::now();
    let (lhs, rhs) = macwilliams_check(g, q, weights)?;
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    Ok(Report::from_sides(
        "macwilliams",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        seed,
        start,
    ))
}

fn require_simple_cubic(g: &Multigraph) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &(u, v) in g.edges() {
        if u == v {
            return Err(Error::NotSimple(format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::NotSimple(format!("parallel edge {u}-{v}")));
        }
    }
    for v in 0..g.vertex_count() {
        let d = g.degree(v)?;
        if d != 3 {
            return Err(Error::NotCubic(format!("vertex {v} has degree {d}")));
        }
    }
    Ok(())
}

/// Signed proper-3-colouring sum over the line graph versus
/// `(-1)^(#line vertices) P(L; 3)`. Input must be simple and cubic; the
/// descent count `c_v - c_u = -1` follows the line graph's edge order.
pub fn check_penrose(g: &Multigraph) -> Result<Report> {
    let start = Instant::now();
    require_simple_cubic(g)?;
    let line = g.line_graph()?;
    let nl = line.vertex_count();
    tol::guarded_pow(3, nl).ok_or_else(|| {
        Error::SizeGuard(format!(
            "colouring sum needs 3^{nl} enumeration, limit is {}",
            tol::ENUM_GUARD
        ))
    })?;
    let mut total = 0i64;
    for_each_tuple(nl, 3, |c| {
        let mut descents = 0usize;
        for &(u, v) in line.edges() {
            if c[u] == c[v] {
                return; // a monochromatic edge kills the term
            }
            if (c[v] + 3 - c[u]) % 3 == 2 {
                descents += 1;
            }
        }
        total += if descents.is_multiple_of(2) { 1 } else { -1 };
    });
    let sign = if nl % 2 == 0 { 1 } else { -1 };
    let rhs = big_to_c64(&(chromatic(&line, 3) * BigInt::from(sign)));
    let lhs = C64::new(total as f64, 0.0);
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(3));
    params.insert("line_vertices".into(), json!(nl));
    Ok(Report::from_sides(
        "penrose",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        None,
        start,
    ))
}

fn tutte_oracle_report(g: &Multigraph) -> Result<Report> {
    let start = Instant::now();
    let (x, y) = (BigInt::from(2), BigInt::from(3));
    let lhs = big_to_c64(&tutte_dc(g).eval_int(&x, &y));
    let rhs = big_to_c64(&tutte_subset(g)?.eval_int(&x, &y));
    let mut params = BTreeMap::new();
    params.insert("x".into(), json!(2));
    params.insert("y".into(), json!(3));
    Ok(Report::from_sides(
        "tutte-oracle",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        None,
        start,
    ))
}

fn mono_closure_report(g: &Multigraph, q: usize, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = C64::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
    let lhs = monochromial(g, q, y)?;
    let rhs = monochromial_closed(g, q, y)?;
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    params.insert("y".into(), cjson(y));
    Ok(Report::from_sides(
        "mono-closure",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        Some(seed),
        start,
    ))
}

fn potts_closure_report(g: &Multigraph, q: usize, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = C64::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
    let y = C64::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
    let kernel = EdgeKernel::constant_diagonal(q, w, y)?;
    let lhs = potts_partition(g, &kernel)?;
    let rhs = potts_closed(g, q, w, y)?;
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    params.insert("w".into(), cjson(w));
    params.insert("y".into(), cjson(y));
    Ok(Report::from_sides(
        "potts-closure",
        g,
        params,
        lhs,
        rhs,
        tol::REL_TOL,
        Some(seed),
        start,
    ))
}

/// Connected multigraphs with at most `max_vertices` vertices and
/// `max_edges` edges, one representative per isomorphism class, in a fixed
/// order.
pub fn corpus_graphs(max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut reps: BTreeMap<CanonicalKey, Multigraph> = BTreeMap::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u..n).map(move |v| (u, v)))
            .collect();
        for m in 0..=max_edges {
            if m + 1 < n {
                continue; // connectivity needs at least n - 1 edges
            }
            for combo in (0..pairs.len()).combinations_with_replacement(m) {
                let edges: Vec<(usize, usize)> = combo.iter().map(|&i| pairs[i]).collect();
                let g = Multigraph::new(n, edges).expect("endpoints in range");
                if g.stats().components != 1 {
                    continue;
                }
                reps.entry(canonical_key(&g)).or_insert(g);
            }
        }
    }
    reps.into_values().collect()
}

/// Totals of a corpus sweep: graph count, reports produced, failures, and
/// the first failing report if any.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub graphs: usize,
    pub checks_run: usize,
    pub failures: usize,
    pub first_failure: Option<Report>,
}

/// Runs every check over the corpus: the two norm identities, the
/// constant-term identity at (y, w) = (0, 1), the coefficient and both l2
/// identities with one seeded kernel per graph and modulus, MacWilliams
/// duality with seeded weights, monochromial and Potts closures, a
/// deletion-contraction versus subset-expansion cross-check, and the
/// Penrose identity on simple cubic graphs. Reports are visited in corpus
/// order; seeds derive from `base_seed`.
pub fn check_corpus(
    q_list: &[usize],
    max_vertices: usize,
    max_edges: usize,
    base_seed: u64,
) -> Result<CorpusSummary> {
    if q_list.iter().any(|&q| q < 2) {
        return Err(Error::InvalidParameter(
            "corpus moduli must be at least 2".into(),
        ));
    }
    let graphs = corpus_graphs(max_vertices, max_edges);
    let mut summary = CorpusSummary {
        graphs: graphs.len(),
        checks_run: 0,
        failures: 0,
        first_failure: None,
    };
    let record = |summary: &mut CorpusSummary, report: Report| {
        summary.checks_run += 1;
        if !report.pass {
            summary.failures += 1;
            if summary.first_failure.is_none() {
                summary.first_failure = Some(report);
            }
        }
    };
    for (gi, g) in graphs.iter().enumerate() {
        record(&mut summary, tutte_oracle_report(g)?);
        if require_simple_cubic(g).is_ok() {
            record(&mut summary, check_penrose(g)?);
        }
        for &q in q_list {
            record(&mut summary, check_alon_tarsi(g, q)?);
            record(&mut summary, check_tarsi(g, q)?);
            record(
                &mut summary,
                check_prop_constant(g, q, C64::new(0.0, 0.0), C64::new(1.0, 0.0))?,
            );
            let kseed = derive_seed(&[base_seed, gi as u64, q as u64, 0]);
            let kernel = seeded_kernel(q, kseed);
            record(&mut summary, check_coeff_thm(g, &kernel, Some(kseed))?);
            record(&mut summary, check_l2_thm(g, &kernel, Some(kseed))?);
            record(&mut summary, check_l2_image(g, &kernel, Some(kseed))?);
            let wseed = derive_seed(&[base_seed, gi as u64, q as u64, 1]);
            record(
                &mut summary,
                check_macwilliams(g, q, &seeded_g(q, wseed), Some(wseed))?,
            );
            let mseed = derive_seed(&[base_seed, gi as u64, q as u64, 2]);
            record(&mut summary, mono_closure_report(g, q, mseed)?);
            let pseed = derive_seed(&[base_seed, gi as u64, q as u64, 3]);
            record(&mut summary, potts_closure_report(g, q, pseed)?);
        }
    }
    Ok(summary)
}

/// JSON with floats printed to 15 significant digits, so equal values
/// always serialize to identical bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(out).expect("serializer emits utf-8")
}

struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        let v = if value == 0.0 { 0.0 } else { value }; // fold -0.0 into 0.0
        write!(writer, "{v:.14e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::graph_poly::score_kernel;
    use crate::tol::close_rel;

    fn k2() -> Multigraph {
        Family::parse("complete:2").unwrap().build().unwrap()
    }

    fn c3() -> Multigraph {
        Family::parse("cycle:3").unwrap().build().unwrap()
    }

    #[test]
    fn alon_tarsi_examples() {
        let rep = check_alon_tarsi(&k2(), 3).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs.re - 2.0).abs() < 1e-9);
        assert!((rep.rhs.re - 2.0).abs() < 1e-9);

        let rep = check_alon_tarsi(&c3(), 3).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs.re - 6.0).abs() < 1e-9);

        assert!(check_alon_tarsi(&c3(), 2).unwrap().pass);
    }

    #[test]
    fn tarsi_examples() {
        let rep = check_tarsi(&k2(), 5).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs.re - 2.0).abs() < 1e-9);

        let rep = check_tarsi(&c3(), 3).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs.re - 6.0).abs() < 1e-9);

        let k4 = Family::parse("complete:4").unwrap().build().unwrap();
        let t = check_tarsi(&k4, 3).unwrap();
        let a = check_alon_tarsi(&k4, 3).unwrap();
        assert!(t.pass && a.pass);
        assert!((t.lhs.re - a.lhs.re).abs() < 1e-9);
    }

    #[test]
    fn prop_constant_examples() {
        let rep = check_prop_constant(&c3(), 3, C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs.re - 6.0).abs() < 1e-9);

        let rep = check_prop_constant(&k2(), 2, C64::new(3.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        assert!(rep.pass);

        // a loop contributes sum g = q y to the constant term, matching
        // (qw) (y/w)
        let loop_graph = Family::parse("bouquet:1").unwrap().build().unwrap();
        let y = C64::new(2.0, 1.0);
        let w = C64::new(0.5, -0.25);
        let rep = check_prop_constant(&loop_graph, 3, y, w).unwrap();
        assert!(rep.pass);
        assert!((C64::new(rep.lhs.re, rep.lhs.im) - 3.0 * y).norm() < 1e-9);

        assert!(check_prop_constant(&c3(), 3, C64::new(1.0, 0.0), C64::new(1.0, 0.0)).is_err());
        assert!(check_prop_constant(&c3(), 3, C64::new(1.0, 0.0), C64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn coeff_thm_examples() {
        let rep = check_coeff_thm(&k2(), &petersen_kernel(3).unwrap(), None).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.params["exponents"], json!(9));

        let kernel = RestrictedKernel::new(seeded_g(4, 11), 2, 1);
        assert!(check_coeff_thm(&c3(), &kernel, Some(11)).unwrap().pass);

        let rep = check_coeff_thm(&c3(), &score_kernel(5).unwrap(), None).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn l2_examples() {
        let rep = check_l2_thm(&c3(), &petersen_kernel(3).unwrap(), None).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs.re - 6.0).abs() < 1e-9);

        let kernel = RestrictedKernel::new(seeded_g(5, 7), 3, 2);
        assert!(check_l2_thm(&k2(), &kernel, Some(7)).unwrap().pass);
        assert!(check_l2_image(&k2(), &kernel, Some(7)).unwrap().pass);
    }

    #[test]
    fn macwilliams_example() {
        let weights = ZqFun::new(
            2,
            vec![C64::new(3.0, 0.0), C64::new(1.0, 0.0)],
        )
        .unwrap();
        let rep = check_macwilliams(&k2(), 2, &weights, None).unwrap();
        assert!(rep.pass);
        assert!((rep.lhs.re - 4.0).abs() < 1e-9);
        assert!((rep.rhs.re - 4.0).abs() < 1e-9);
    }

    #[test]
    fn penrose_k4_and_prism() {
        let k4 = Family::parse("complete:4").unwrap().build().unwrap();
        let rep = check_penrose(&k4).unwrap();
        assert!(rep.pass);
        assert!((rep.rhs.re - 6.0).abs() < 1e-9);

        let prism = Family::parse("prism").unwrap().build().unwrap();
        assert!(check_penrose(&prism).unwrap().pass);
    }

    #[test]
    fn penrose_rejects_bad_input() {
        assert!(matches!(
            check_penrose(&c3()),
            Err(Error::NotCubic(_))
        ));
        let looped = Multigraph::new(2, vec![(0, 0), (0, 1), (0, 1), (1, 1)]).unwrap();
        assert!(matches!(check_penrose(&looped), Err(Error::NotSimple(_))));
        let theta = Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(matches!(check_penrose(&theta), Err(Error::NotSimple(_))));
    }

    #[test]
    fn corpus_enumeration() {
        let bouquets = corpus_graphs(1, 3);
        assert_eq!(bouquets.len(), 4); // 0 through 3 loops
        assert!(bouquets.iter().all(|g| g.vertex_count() == 1));

        assert!(corpus_graphs(0, 0).is_empty());

        let corpus = corpus_graphs(4, 6);
        assert!(corpus.len() > 100, "corpus has {} graphs", corpus.len());
        assert!(corpus.iter().all(|g| g.stats().components == 1));
        let keys: BTreeSet<_> = corpus.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), corpus.len());
    }

    #[test]
    fn corpus_sweep_small() {
        let summary = check_corpus(&[2, 3], 3, 4, 42).unwrap();
        assert!(summary.graphs > 0);
        assert_eq!(summary.failures, 0, "{:?}", summary.first_failure);

        let empty = check_corpus(&[2], 0, 0, 0).unwrap();
        assert_eq!(empty.graphs, 0);
        assert_eq!(empty.checks_run, 0);
        assert_eq!(empty.failures, 0);

        assert!(check_corpus(&[1], 2, 2, 0).is_err());
    }

    #[test]
    fn canonical_json_is_stable() {
        let rep = check_alon_tarsi(&c3(), 3).unwrap();
        let a = to_canonical_json(&rep);
        let b = to_canonical_json(&check_alon_tarsi(&c3(), 3).unwrap());
        assert_eq!(a, b);
        assert!(a.contains("\"identity\":\"alon-tarsi\""));
        assert!(a.contains("6.00000000000000e0"));

        assert_eq!(to_canonical_json(&0.0f64), to_canonical_json(&-0.0f64));
    }

    #[test]
    fn seeds_replay() {
        let k1 = seeded_kernel(4, 99);
        let k2 = seeded_kernel(4, 99);
        assert_eq!(k1.s(), k2.s());
        assert_eq!(k1.t(), k2.t());
        assert!(k1.g().max_abs_diff(k2.g()).unwrap() == 0.0);
        assert_ne!(derive_seed(&[1, 2, 3]), derive_seed(&[1, 2, 4]));
    }

    #[test]
    fn report_rel_err_definition() {
        let rep = check_alon_tarsi(&c3(), 3).unwrap();
        assert!(close_rel(
            C64::new(rep.lhs.re, rep.lhs.im),
            C64::new(rep.rhs.re, rep.rhs.im)
        ));
        assert!((rep.rel_err - rep.abs_err / rep.lhs.re.abs().max(1.0)).abs() < 1e-15);
    }
}
