//! Functions on `Z/pZ`: L¹/L^∞ and Gowers norms, the AP₃ and Λ_S counting
//! averages, and numerical checks of the inequalities that relate them.
//!
//! Sums that run in parallel are collected per outer index first and then
//! added sequentially, so results do not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::syndetic::{is_f_syndetic_window, FiniteSet, Window};

/// Tolerance for inequality margins and for clamping Gowers averages.
pub const MARGIN_TOL: f64 = 1e-9;

/// Largest modulus for the direct `U³` sum, which costs `O(p⁴)`.
pub const DIRECT_U3_MAX_P: u64 = 101;

/// Largest modulus for the recursive `U³` evaluation, which costs `O(p³)`.
pub const RECURSIVE_U3_MAX_P: u64 = 1009;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `[N]` placed inside `Z/pZ` with `3N < p < 6N`, so that no
/// three-term progression wraps around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeEmbedding {
    n: u64,
    p: u64,
}

impl PrimeEmbedding {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("N must be at least 1".into()));
        }
        if !(3 * n < p && p < 6 * n) {
            return Err(Error::Embedding(format!("need 3N < p < 6N, got N={n}, p={p}")));
        }
        if !is_prime(p) {
            return Err(Error::Embedding(format!("{p} is not prime")));
        }
        Ok(PrimeEmbedding { n, p })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// The least prime in `(3N, 6N)`.
pub fn choose_prime(n: u64) -> Result<PrimeEmbedding> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let p = (3 * n + 1..6 * n)
        .find(|&p| is_prime(p))
        .expect("Bertrand's postulate");
    PrimeEmbedding::new(n, p)
}

/// `f: Z/pZ -> C`, stored as `values[x]` for `x = 0..p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModFunction {
    values: Vec<Complex64>,
}

impl ModFunction {
    pub fn new(p: u64, values: Vec<Complex64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Embedding(format!("{p} is not prime")));
        }
        if values.len() as u64 != p {
            return Err(Error::Dimension {
                expected: p as usize,
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("function values must be finite".into()));
        }
        Ok(ModFunction { values })
    }

    pub fn from_real(p: u64, values: &[f64]) -> Result<Self> {
        ModFunction::new(p, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(p: u64, c: Complex64) -> Result<Self> {
        ModFunction::new(p, vec![c; p as usize])
    }

    pub fn zero(p: u64) -> Result<Self> {
        ModFunction::constant(p, Complex64::new(0.0, 0.0))
    }

    pub fn point_mass(p: u64, at: u64) -> Result<Self> {
        let mut f = ModFunction::zero(p)?;
        f.values[(at % p) as usize] = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, x: u64) -> Complex64 {
        self.values[(x % self.p()) as usize]
    }

    /// `max |f| ≤ 1 + 1e-12`.
    pub fn is_one_bounded(&self) -> bool {
        self.values.iter().all(|v| v.norm() <= 1.0 + 1e-12)
    }

    /// Real-valued with values in `[0, 1]`.
    pub fn is_unit_interval_valued(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.im.abs() <= 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&v.re))
    }

    pub fn sub(&self, other: &ModFunction) -> Result<ModFunction> {
        same_modulus(&[self, other])?;
        Ok(ModFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add(&self, other: &ModFunction) -> Result<ModFunction> {
        same_modulus(&[self, other])?;
        Ok(ModFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> ModFunction {
        ModFunction {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `Δ_h f(x) = f(x)·conj(f(x+h))`.
    pub fn difference(&self, h: u64) -> ModFunction {
        let p = self.values.len();
        let h = h as usize % p;
        ModFunction {
            values: (0..p)
                .map(|x| self.values[x] * self.values[(x + h) % p].conj())
                .collect(),
        }
    }

    fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }
}

/// Text form: a `p: <prime>` header, then one value per line written as
/// `re` or `re im`. Blank lines and `#` comments are ignored.
impl fmt::Display for ModFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p: {}", self.p())?;
        for v in &self.values {
            if v.im == 0.0 {
                writeln!(f, "{:?}", v.re)?;
            } else {
                writeln!(f, "{:?} {:?}", v.re, v.im)?;
            }
        }
        Ok(())
    }
}

impl FromStr for ModFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut values = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: i + 1, msg };
            if p.is_none() {
                let rest = line
                    .strip_prefix("p:")
                    .ok_or_else(|| bad("expected header `p: <prime>`".into()))?;
                p = Some(rest.trim().parse::<u64>().map_err(|e| bad(e.to_string()))?);
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| bad(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            match nums[..] {
                [re] => values.push(Complex64::new(re, 0.0)),
                [re, im] => values.push(Complex64::new(re, im)),
                _ => return Err(bad("expected `re` or `re im`".into())),
            }
        }
        let p = p.ok_or(Error::Parse {
            line: 0,
            msg: "missing `p:` header".into(),
        })?;
        ModFunction::new(p, values)
    }
}

fn same_modulus(fs: &[&ModFunction]) -> Result<u64> {
    let p = fs[0].p();
    match fs.iter().find(|f| f.p() != p) {
        Some(f) => Err(Error::Domain(format!("modulus mismatch: {p} vs {}", f.p()))),
        None => Ok(p),
    }
}

/// `1_[N]` inside `Z/pZ`.
pub fn indicator(n: u64, p: u64) -> Result<ModFunction> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    if p <= n {
        return Err(Error::Embedding(format!("p = {p} must exceed N = {n}")));
    }
    ModFunction::new(
        p,
        (0..p)
            .map(|x| Complex64::new(if (1..=n).contains(&x) { 1.0 } else { 0.0 }, 0.0))
            .collect(),
    )
}

pub fn l1_norm(f: &ModFunction) -> f64 {
    f.values.iter().map(|v| v.norm()).sum::<f64>() / f.p() as f64
}

pub fn linf_norm(f: &ModFunction) -> f64 {
    f.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `‖f‖_{U^s}^{2^s}` by `‖f‖_{U^1}^2 = |E f|²` and
/// `‖f‖_{U^{s+1}}^{2^{s+1}} = E_h ‖Δ_h f‖_{U^s}^{2^s}`.
fn gowers_power(f: &ModFunction, s: u32) -> f64 {
    if s == 1 {
        return f.mean().norm_sqr();
    }
    let p = f.p();
    let terms: Vec<f64> = if s >= 3 {
        (0..p).into_par_iter().map(|h| gowers_power(&f.difference(h), s - 1)).collect()
    } else {
        (0..p).map(|h| gowers_power(&f.difference(h), s - 1)).collect()
    };
    terms.iter().sum::<f64>() / p as f64
}

fn root_of_average(avg: f64, s: u32) -> Result<f64> {
    if avg < -MARGIN_TOL {
        return Err(Error::NumericIntegrity(format!("Gowers average {avg:e} is negative")));
    }
    Ok(avg.max(0.0).powf(1.0 / f64::from(1u32 << s)))
}

fn check_order(s: u32) -> Result<()> {
    if !(1..=3).contains(&s) {
        return Err(Error::Domain(format!("Gowers order s = {s} outside 1..=3")));
    }
    Ok(())
}

/// `‖f‖_{U^s}` for `s ∈ {1, 2, 3}` by the recursive formula.
pub fn gowers_norm(f: &ModFunction, s: u32) -> Result<f64> {
    check_order(s)?;
    if s == 3 && f.p() > RECURSIVE_U3_MAX_P {
        return Err(Error::SizeLimit(format!(
            "U^3 at p = {} exceeds the guard p <= {RECURSIVE_U3_MAX_P}",
            f.p()
        )));
    }
    root_of_average(gowers_power(f, s), s)
}

/// `‖f‖_{U^s}` as the full average of `Δ_{h_1,…,h_s} f(x)` over
/// `x, h_1, …, h_s`.
pub fn gowers_norm_direct(f: &ModFunction, s: u32) -> Result<f64> {
    check_order(s)?;
    let p = f.p();
    if s == 3 && p > DIRECT_U3_MAX_P {
        return Err(Error::SizeLimit(format!(
            "direct U^3 sum at p = {p} exceeds the guard p <= {DIRECT_U3_MAX_P}"
        )));
    }
    let s = s as usize;
    let per_x: Vec<Complex64> = (0..p)
        .into_par_iter()
        .map(|x| {
            let mut h = vec![0u64; s];
            let mut acc = Complex64::new(0.0, 0.0);
            loop {
                let mut prod = Complex64::new(1.0, 0.0);
                for w in 0u32..1 << s {
                    let shift: u64 = (0..s).filter(|i| w >> i & 1 == 1).map(|i| h[i]).sum();
                    let v = f.at(x + shift);
                    prod *= if w.count_ones() % 2 == 1 { v.conj() } else { v };
                }
                acc += prod;
                let Some(i) = h.iter().position(|&hi| hi + 1 < p) else { break };
                h[i] += 1;
                h[..i].iter_mut().for_each(|hj| *hj = 0);
            }
            acc
        })
        .collect();
    let total: Complex64 = per_x.iter().sum();
    let avg = total / (p as f64).powi(s as i32 + 1);
    if avg.im.abs() > 1e-6 {
        return Err(Error::NumericIntegrity(format!("Gowers average has imaginary part {:e}", avg.im)));
    }
    root_of_average(avg.re, s as u32)
}

/// `E_{x,d} f₁(x) f₂(x+d) f₃(x+2d)`.
pub fn ap3(f1: &ModFunction, f2: &ModFunction, f3: &ModFunction) -> Result<Complex64> {
    let p = same_modulus(&[f1, f2, f3])?;
    let ds: Vec<u64> = (0..p).collect();
    Ok(progression_average(f1, f2, f3, &ds))
}

fn progression_average(f1: &ModFunction, f2: &ModFunction, f3: &ModFunction, ds: &[u64]) -> Complex64 {
    let p = f1.p();
    let per_d: Vec<Complex64> = ds
        .par_iter()
        .map(|&d| (0..p).map(|x| f1.at(x) * f2.at(x + d) * f3.at(x + 2 * d)).sum())
        .collect();
    per_d.iter().sum::<Complex64>() / (p as f64 * ds.len() as f64)
}

/// Distinct residues of the window's elements modulo `p`, ascending.
pub fn residues(s: &Window, p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = s.elements().iter().map(|x| x % p).collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// `E_{x ∈ Z/pZ} E_{d ∈ S} f₁(x) f₂(x+d) f₃(x+2d)`, with `S` read modulo `p`.
pub fn lambda_s(s: &Window, f1: &ModFunction, f2: &ModFunction, f3: &ModFunction) -> Result<Complex64> {
    let p = same_modulus(&[f1, f2, f3])?;
    let ds = residues(s, p);
    if ds.is_empty() {
        return Err(Error::Domain("S is empty".into()));
    }
    Ok(progression_average(f1, f2, f3, &ds))
}

fn lambda_diag(s: &Window, f: &ModFunction) -> Result<Complex64> {
    lambda_s(s, f, f, f)
}

fn require_one_bounded(fs: &[&ModFunction]) -> Result<()> {
    match fs.iter().position(|f| !f.is_one_bounded()) {
        Some(i) => Err(Error::Precondition(format!("function {} is not one-bounded", i + 1))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrauerCount {
    pub value: f64,
    pub passes: bool,
}

/// `Λ_S(1_[N])` for `S ⊆ [⌊N/3⌋]`, and whether it exceeds `1/18`.
pub fn verify_brauer_count(n: u64, s: &FiniteSet, p: u64) -> Result<BrauerCount> {
    if n < 3 {
        return Err(Error::Domain("need N >= 3".into()));
    }
    if s.max_element() > n / 3 {
        return Err(Error::Domain(format!("S must lie in [1, {}]", n / 3)));
    }
    PrimeEmbedding::new(n, p)?;
    let f = indicator(n, p)?;
    let w = Window::from_elements(s.max_element(), s.elements())?;
    let value = lambda_diag(&w, &f)?.re;
    Ok(BrauerCount {
        value,
        passes: value > 1.0 / 18.0,
    })
}

/// `min_k ‖f_k‖_{U²} − |AP₃(f₁, f₂, f₃)|`.
pub fn verify_gvn_ap3(f1: &ModFunction, f2: &ModFunction, f3: &ModFunction) -> Result<f64> {
    require_one_bounded(&[f1, f2, f3])?;
    let lhs = ap3(f1, f2, f3)?.norm();
    let mut m = f64::INFINITY;
    for f in [f1, f2, f3] {
        m = m.min(gowers_norm(f, 2)?);
    }
    Ok(m - lhs)
}

/// `(p/|S|)^{1/2} min_k ‖f_k‖_{U³} − |Λ_S(f₁, f₂, f₃)|`.
pub fn verify_gvn_lambda(s: &Window, f1: &ModFunction, f2: &ModFunction, f3: &ModFunction) -> Result<f64> {
    require_one_bounded(&[f1, f2, f3])?;
    let p = f1.p();
    let lhs = lambda_s(s, f1, f2, f3)?.norm();
    let size = residues(s, p).len() as f64;
    let mut m = f64::INFINITY;
    for f in [f1, f2, f3] {
        m = m.min(gowers_norm(f, 3)?);
    }
    Ok((p as f64 / size).sqrt() * m - lhs)
}

/// `3‖f − g‖₁ − |Λ_S(f) − Λ_S(g)|`.
pub fn verify_l1_control(s: &Window, f: &ModFunction, g: &ModFunction) -> Result<f64> {
    require_one_bounded(&[f, g])?;
    let diff = (lambda_diag(s, f)? - lambda_diag(s, g)?).norm();
    Ok(3.0 * l1_norm(&f.sub(g)?) - diff)
}

/// `18M‖f − g‖_{U³} − |Λ_{S∩[N/3]}(f) − Λ_{S∩[N/3]}(g)|` for an `[M]`-syndetic
/// window `S`, `N ≥ 18M²`, and `f, g` valued in `[0, 1]` and supported on `[N]`.
pub fn verify_u3_control(s: &Window, m: u64, n: u64, f: &ModFunction, g: &ModFunction) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("M must be at least 1".into()));
    }
    if n < 18 * m * m {
        return Err(Error::Precondition(format!("hypothesis N >= 18M^2 fails: N = {n}, M = {m}")));
    }
    let p = same_modulus(&[f, g])?;
    PrimeEmbedding::new(n, p)?;
    for (name, h) in [("f", f), ("g", g)] {
        if !h.is_unit_interval_valued() {
            return Err(Error::Precondition(format!("{name} is not valued in [0, 1]")));
        }
        if (0..p).any(|x| !(1..=n).contains(&x) && h.at(x).norm() > 1e-12) {
            return Err(Error::Precondition(format!("{name} is not supported on [N]")));
        }
    }
    let report = is_f_syndetic_window(s, &FiniteSet::interval(m)?)?;
    if !report.is_window_syndetic {
        return Err(Error::Precondition(format!(
            "S is not [M]-syndetic on its window: fails at n = {}",
            report.first_failure.unwrap()
        )));
    }
    let third = s.truncated((n / 3).min(s.n()))?;
    let diff = (lambda_diag(&third, f)? - lambda_diag(&third, g)?).norm();
    Ok(18.0 * m as f64 * gowers_norm(&f.sub(g)?, 3)? - diff)
}

/// `|Λ_S(f) − Λ_S(g) − [Λ_S(f−g,f,f) + Λ_S(g,f−g,f) + Λ_S(g,g,f−g)]|`.
pub fn telescoping_residual(s: &Window, f: &ModFunction, g: &ModFunction) -> Result<f64> {
    let h = f.sub(g)?;
    let lhs = lambda_diag(s, f)? - lambda_diag(s, g)?;
    let rhs = lambda_s(s, &h, f, f)? + lambda_s(s, g, &h, f)? + lambda_s(s, g, g, &h)?;
    Ok((lhs - rhs).norm())
}

/// Uniform sample from the closed unit disc at every point.
pub fn random_one_bounded<R: Rng>(p: u64, rng: &mut R) -> Result<ModFunction> {
    let values = (0..p)
        .map(|_| {
            let r: f64 = rng.gen::<f64>().sqrt();
            let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, theta)
        })
        .collect();
    ModFunction::new(p, values)
}

/// Values uniform in `[0, 1]` on the residues `1..=N`, zero elsewhere.
pub fn random_unit_on<R: Rng>(n: u64, p: u64, rng: &mut R) -> Result<ModFunction> {
    let values = (0..p)
        .map(|x| Complex64::new(if (1..=n).contains(&x) { rng.gen::<f64>() } else { 0.0 }, 0.0))
        .collect();
    ModFunction::new(p, values)
}

/// A non-empty random subset of `[m]` as a window.
pub fn random_window<R: Rng>(m: u64, rng: &mut R) -> Result<Window> {
    loop {
        let w = Window::from_fn(m, |_| rng.gen_bool(0.5))?;
        if w.count() > 0 {
            return Ok(w);
        }
    }
}
