//! The algebra of complex-valued functions on Z_q.
//!
//! Pointwise product, convolution, cross-correlation, the discrete Fourier
//! transform and its inverse, annihilators of subgroups, Poisson summation,
//! and difference-set classification. Everything is direct O(q^2) summation;
//! the moduli of interest are small.
//!
//! Conventions, fixed once for the whole crate: `zeta = e^{2pi i/q}`,
//! characters `chi_c(a) = zeta^{ca}`, transform `fhat(b) = sum_a f(a)
//! zeta^{-ab}`. The convolution and cross-correlation index conventions are
//! pinned by the identities `delta_a * delta_b = delta_{a+b}` and
//! `delta_a star delta_b = delta_{b-a}`.

use crate::error::{Error, Result};
use crate::C64;
use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;

/// A complex-valued function on Z_q, stored densely.
#[derive(Clone, PartialEq, Debug)]
pub struct ZqFun {
    q: usize,
    values: Vec<C64>,
}

impl ZqFun {
    pub fn new(q: usize, values: Vec<C64>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("modulus must be at least 1".into()));
        }
        if values.len() != q {
            return Err(Error::InvalidParameter(format!(
                "function on Z_{q} needs {q} values, got {}",
                values.len()
            )));
        }
        Ok(ZqFun { q, values })
    }

    pub fn zero(q: usize) -> Self {
        ZqFun {
            q,
            values: vec![C64::new(0.0, 0.0); q],
        }
    }

    pub fn from_fn(q: usize, f: impl FnMut(usize) -> C64) -> Self {
        ZqFun {
            q,
            values: (0..q).map(f).collect(),
        }
    }

    /// The point mass at `a`.
    pub fn delta(q: usize, a: usize) -> Self {
        let mut f = ZqFun::zero(q);
        f.values[a % q] = C64::new(1.0, 0.0);
        f
    }

    /// The character `chi_c(a) = e^{2 pi i c a / q}`.
    pub fn character(q: usize, c: usize) -> Self {
        ZqFun::from_fn(q, |a| root_of_unity(q, c * a % q))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Value at `a`, reduced mod q.
    pub fn at(&self, a: usize) -> C64 {
        self.values[a % self.q]
    }

    pub fn set(&mut self, a: usize, v: C64) {
        let q = self.q;
        self.values[a % q] = v;
    }

    pub fn add(&self, other: &ZqFun) -> Result<ZqFun> {
        let q = same_q(self, other)?;
        Ok(ZqFun::from_fn(q, |a| self.values[a] + other.values[a]))
    }

    pub fn sub(&self, other: &ZqFun) -> Result<ZqFun> {
        let q = same_q(self, other)?;
        Ok(ZqFun::from_fn(q, |a| self.values[a] - other.values[a]))
    }

    pub fn scale(&self, c: C64) -> ZqFun {
        ZqFun::from_fn(self.q, |a| c * self.values[a])
    }

    pub fn conj(&self) -> ZqFun {
        ZqFun::from_fn(self.q, |a| self.values[a].conj())
    }

    /// Pointwise `|f(a)|^2` as a real-valued function.
    pub fn modulus_squared(&self) -> ZqFun {
        ZqFun::from_fn(self.q, |a| C64::new(self.values[a].norm_sqr(), 0.0))
    }

    /// Squared l2 norm `sum_a |f(a)|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &ZqFun) -> Result<f64> {
        same_q(self, other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &ZqFun, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    /// Parses the CLI text form: comma-separated complex literals
    /// `re`, `re+imi`, or `re-imi`, e.g. `1,-1,0` or `0.5+2i,1-1i`.
    pub fn parse_text(text: &str) -> Result<ZqFun> {
        let parts: Vec<&str> = text.split(',').collect();
        let values = parts
            .iter()
            .map(|p| parse_complex(p.trim()))
            .collect::<Result<Vec<_>>>()?;
        ZqFun::new(values.len(), values)
    }
}

impl fmt::Display for ZqFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// One complex literal: `re`, `re+imi`, `re-imi`, or a bare `i` form.
pub fn parse_complex(token: &str) -> Result<C64> {
    let bad = || Error::InvalidParameter(format!("cannot parse complex literal `{token}`"));
    let t = token.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('I')) {
        // split body into real part and signed imaginary magnitude at the
        // last +/- that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-')
                && !matches!(bytes[i - 1] as char, 'e' | 'E')
            {
                split = Some(i);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let re = if re_str.is_empty() {
            0.0
        } else {
            re_str.parse::<f64>().map_err(|_| bad())?
        };
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse::<f64>().map_err(|_| bad())?,
        };
        Ok(C64::new(re, im))
    } else {
        t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad())
    }
}

fn same_q(f: &ZqFun, g: &ZqFun) -> Result<usize> {
    if f.q != g.q {
        return Err(Error::ModulusMismatch(f.q, g.q));
    }
    Ok(f.q)
}

/// `e^{2 pi i k / q}`.
pub(crate) fn root_of_unity(q: usize, k: usize) -> C64 {
    C64::from_polar(1.0, TAU * (k % q) as f64 / q as f64)
}

/// A subset of Z_q with its modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZqSubset {
    q: usize,
    members: BTreeSet<usize>,
}

impl ZqSubset {
    pub fn new(q: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("modulus must be at least 1".into()));
        }
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&a| a >= q) {
            return Err(Error::InvalidParameter(format!(
                "residue {bad} out of range for Z_{q}"
            )));
        }
        Ok(ZqSubset { q, members })
    }

    pub fn full(q: usize) -> Result<Self> {
        ZqSubset::new(q, 0..q)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(&(a % self.q))
    }

    /// Members in increasing order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// The 0/1 indicator function of the subset.
    pub fn indicator(&self) -> ZqFun {
        let mut f = ZqFun::zero(self.q);
        for &a in &self.members {
            f.values[a] = C64::new(1.0, 0.0);
        }
        f
    }

    /// Nonempty, contains 0, closed under addition mod q.
    pub fn is_subgroup(&self) -> bool {
        self.subgroup_failure().is_none()
    }

    fn subgroup_failure(&self) -> Option<String> {
        if self.members.is_empty() {
            return Some("empty set".into());
        }
        if !self.members.contains(&0) {
            return Some("0 is missing".into());
        }
        for &a in &self.members {
            for &b in &self.members {
                if !self.members.contains(&((a + b) % self.q)) {
                    return Some(format!("{a} + {b} = {} escapes", (a + b) % self.q));
                }
            }
        }
        None
    }

    fn require_subgroup(&self) -> Result<()> {
        match self.subgroup_failure() {
            None => Ok(()),
            Some(reason) => Err(Error::NotSubgroup { q: self.q, reason }),
        }
    }
}

impl fmt::Display for ZqSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}} in Z_{}", self.q)
    }
}

/// Indicator of `S` as a function on Z_q.
pub fn indicator(s: &ZqSubset) -> ZqFun {
    s.indicator()
}

/// Pointwise product `(f.g)(a) = f(a) g(a)`.
pub fn pointwise(f: &ZqFun, g: &ZqFun) -> Result<ZqFun> {
    let q = same_q(f, g)?;
    Ok(ZqFun::from_fn(q, |a| f.values[a] * g.values[a]))
}

/// Convolution `(f*g)(a) = sum_b f(b) g(a-b)`, so that
/// `delta_a * delta_b = delta_{a+b}`.
pub fn convolve(f: &ZqFun, g: &ZqFun) -> Result<ZqFun> {
    let q = same_q(f, g)?;
    Ok(ZqFun::from_fn(q, |a| {
        (0..q)
            .map(|b| f.values[b] * g.values[(a + q - b) % q])
            .sum()
    }))
}

/// Cross-correlation `(f star g)(a) = sum_b conj(f(b)) g(b+a)`, so that
/// `delta_a star delta_b = delta_{b-a}`.
pub fn crosscorr(f: &ZqFun, g: &ZqFun) -> Result<ZqFun> {
    let q = same_q(f, g)?;
    Ok(ZqFun::from_fn(q, |a| {
        (0..q)
            .map(|b| f.values[b].conj() * g.values[(b + a) % q])
            .sum()
    }))
}

/// Hermitian inner product `<f, g> = sum_a conj(f(a)) g(a)`.
pub fn inner(f: &ZqFun, g: &ZqFun) -> Result<C64> {
    let q = same_q(f, g)?;
    Ok((0..q).map(|a| f.values[a].conj() * g.values[a]).sum())
}

/// Fourier transform `fhat(b) = sum_a f(a) e^{-2 pi i a b / q}`.
pub fn dft(f: &ZqFun) -> ZqFun {
    let q = f.q;
    ZqFun::from_fn(q, |b| {
        (0..q)
            .map(|a| f.values[a] * root_of_unity(q, a * b % q).conj())
            .sum()
    })
}

/// Inverse transform `f(a) = q^{-1} sum_b fhat(b) e^{2 pi i a b / q}`.
pub fn idft(fhat: &ZqFun) -> ZqFun {
    let q = fhat.q;
    ZqFun::from_fn(q, |a| {
        (0..q)
            .map(|b| fhat.values[b] * root_of_unity(q, a * b % q))
            .sum::<C64>()
            / q as f64
    })
}

/// Annihilator of a subgroup: `P# = {b : ab = 0 mod q for all a in P}`,
/// computed by direct enumeration. For `P = dZ_q` this is `(q/|P|)Z_q`.
pub fn annihilator(p: &ZqSubset) -> Result<ZqSubset> {
    p.require_subgroup()?;
    let q = p.q;
    ZqSubset::new(
        q,
        (0..q).filter(|&b| p.members().all(|a| a * b % q == 0)),
    )
}

/// Both sides of Poisson summation over the subgroup `P` with shift `b`:
/// `sum_{a in P} f(a+b)` and `|P#|^{-1} sum_{a in P#} fhat(a) chi_b(a)`.
pub fn poisson_check(f: &ZqFun, p: &ZqSubset, b: usize) -> Result<(C64, C64)> {
    if f.q != p.q {
        return Err(Error::ModulusMismatch(f.q, p.q));
    }
    p.require_subgroup()?;
    let q = f.q;
    let lhs: C64 = p.members().map(|a| f.at(a + b)).sum();
    let ann = annihilator(p)?;
    let fhat = dft(f);
    let rhs: C64 = ann
        .members()
        .map(|a| fhat.values[a] * root_of_unity(q, a * (b % q) % q))
        .sum::<C64>()
        / ann.len() as f64;
    Ok((lhs, rhs))
}

/// What the autocorrelation of an indicator looks like.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DiffsetClass {
    /// `delta_P star delta_P = k delta_0 + l` on all of `Z_q \ 0`.
    DifferenceSet { k: usize, l: usize },
    /// Constant `l` on `P \ 0` and constant `m` on the rest of `Z_q \ 0`.
    PartialDifferenceSet { k: usize, l: usize, m: usize },
    Neither,
}

impl fmt::Display for DiffsetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffsetClass::DifferenceSet { k, l } => {
                write!(f, "difference set (k={k}, l={l})")
            }
            DiffsetClass::PartialDifferenceSet { k, l, m } => {
                write!(f, "partial difference set (k={k}, l={l}, m={m})")
            }
            DiffsetClass::Neither => write!(f, "neither"),
        }
    }
}

/// Integer autocorrelation `c(x) = #{a in P : a + x in P}`; this is
/// `(delta_P star delta_P)(x)` computed exactly.
pub fn autocorrelation_counts(p: &ZqSubset) -> Vec<usize> {
    let q = p.q;
    (0..q)
        .map(|x| p.members().filter(|&a| p.contains(a + x)).count())
        .collect()
}

/// Classifies `P` by the shape of its indicator autocorrelation:
/// a (q,k,l) difference set, a (q,k,l,m) partial difference set, or neither.
pub fn diffset_profile(p: &ZqSubset) -> DiffsetClass {
    let q = p.q;
    let counts = autocorrelation_counts(p);
    let k = p.len();
    if q == 1 {
        return DiffsetClass::DifferenceSet { k, l: 0 };
    }
    let off_zero: Vec<usize> = (1..q).map(|x| counts[x]).collect();
    if off_zero.iter().all(|&c| c == off_zero[0]) {
        return DiffsetClass::DifferenceSet {
            k,
            l: off_zero[0],
        };
    }
    let in_p: Vec<usize> = (1..q).filter(|&x| p.contains(x)).map(|x| counts[x]).collect();
    let out_p: Vec<usize> = (1..q).filter(|&x| !p.contains(x)).map(|x| counts[x]).collect();
    let l = in_p.first().copied().unwrap_or(0);
    let m = out_p.first().copied().unwrap_or(0);
    if in_p.iter().all(|&c| c == l) && out_p.iter().all(|&c| c == m) {
        return DiffsetClass::PartialDifferenceSet { k, l, m };
    }
    DiffsetClass::Neither
}

fn check_odd_prime(q: usize) -> Result<()> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::NotOddPrime(q));
    }
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return Err(Error::NotOddPrime(q));
        }
        d += 2;
    }
    Ok(())
}

/// The nonzero quadratic residues mod an odd prime, size `(q-1)/2`.
pub fn paley_set(q: usize) -> Result<ZqSubset> {
    check_odd_prime(q)?;
    ZqSubset::new(q, (1..q).map(|a| a * a % q))
}

/// The quadratic-residue character as a function on Z_q:
/// `g(0) = 0`, `g(a) = +1` on nonzero squares, `-1` otherwise.
pub fn legendre_char(q: usize) -> Result<ZqFun> {
    let squares = paley_set(q)?;
    Ok(ZqFun::from_fn(q, |a| {
        if a == 0 {
            C64::new(0.0, 0.0)
        } else if squares.contains(a) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(-1.0, 0.0)
        }
    }))
}
