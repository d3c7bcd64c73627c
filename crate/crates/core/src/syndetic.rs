//! Multiplicative syndeticity and thickness on finite windows `[N]`.
//!
//! A set `S` is multiplicatively `F`-syndetic when every dilate `n·F` meets
//! `S`. On a window only the dilates that fit entirely inside `[N]` can be
//! checked, i.e. `n <= N / max(F)`; reports carry that bound as
//! `checked_up_to` so a window certificate is never mistaken for a global
//! one.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::cover;
use crate::error::{Error, Result};
use crate::systems::Rational;

/// Non-empty, strictly increasing set of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSet(Vec<u64>);

impl FiniteSet {
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::Domain("finite set must be non-empty".into()));
        }
        if elements[0] == 0 {
            return Err(Error::Domain("finite set elements must be >= 1".into()));
        }
        Ok(FiniteSet(elements))
    }

    /// `{1, 2, ..., m}`.
    pub fn interval(m: u64) -> Result<Self> {
        FiniteSet::new((1..=m).collect())
    }

    /// `{1, a, a^2, ..., a^(k-1)}`.
    pub fn geometric(a: u64, k: u32) -> Result<Self> {
        FiniteSet::new((0..k).map(|i| a.pow(i)).collect())
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_element(&self) -> u64 {
        *self.0.last().unwrap()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for FiniteSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse { line: 1, msg: format!("bad set element `{t}`") })
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteSet::new(elements)
    }
}

/// Membership table of `S ∩ [N]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    n: u64,
    members: Vec<bool>,
}

impl Window {
    pub fn from_fn(n: u64, mut pred: impl FnMut(u64) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("window size must be positive".into()));
        }
        Ok(Window {
            n,
            members: (1..=n).map(&mut pred).collect(),
        })
    }

    /// Window holding the given elements; elements beyond `n` are dropped.
    pub fn from_elements(n: u64, elements: &[u64]) -> Result<Self> {
        let mut w = Window::from_fn(n, |_| false)?;
        for &e in elements {
            if (1..=n).contains(&e) {
                w.members[(e - 1) as usize] = true;
            }
        }
        Ok(w)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= 1 && x <= self.n && self.members[(x - 1) as usize]
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn elements(&self) -> Vec<u64> {
        (1..=self.n).filter(|&x| self.contains(x)).collect()
    }

    pub fn complement(&self) -> Window {
        Window {
            n: self.n,
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    /// The same set viewed on the smaller window `[m]`.
    pub fn truncated(&self, m: u64) -> Result<Window> {
        Window::from_fn(m.min(self.n), |x| self.contains(x))
    }
}

/// Serialized as `N:<n> ` followed by comma-separated runs `<bit>*<len>`,
/// e.g. `N:6 0*1,1*1,0*3,1*1` for `{2, 6}`.
impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N:{} ", self.n)?;
        let mut first = true;
        let mut i = 0;
        while i < self.members.len() {
            let bit = self.members[i];
            let mut j = i;
            while j < self.members.len() && self.members[j] == bit {
                j += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{}*{}", u8::from(bit), j - i)?;
            first = false;
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perr = |msg: String| Error::Parse { line: 1, msg };
        let rest = s.trim().strip_prefix("N:").ok_or_else(|| perr("window must start with `N:`".into()))?;
        let (n, runs) = rest.split_once(' ').ok_or_else(|| perr("missing run list".into()))?;
        let n: u64 = n.parse().map_err(|_| perr(format!("bad window size `{n}`")))?;
        let mut members = Vec::new();
        for run in runs.split(',') {
            let (bit, len) = run.split_once('*').ok_or_else(|| perr(format!("bad run `{run}`")))?;
            let bit = match bit {
                "0" => false,
                "1" => true,
                _ => return Err(perr(format!("bad bit `{bit}`"))),
            };
            let len: usize = len.parse().map_err(|_| perr(format!("bad run length `{len}`")))?;
            if len == 0 {
                return Err(perr("zero-length run".into()));
            }
            members.extend(std::iter::repeat(bit).take(len));
        }
        if members.len() as u64 != n || n == 0 {
            return Err(perr(format!("runs cover {} positions, header says {n}", members.len())));
        }
        Ok(Window { n, members })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SyndeticityReport {
    pub is_window_syndetic: bool,
    pub first_failure: Option<u64>,
    /// Largest `n` whose dilate `n·F` was checked; 0 when no dilate fits.
    pub checked_up_to: u64,
}

/// Largest `k` with `a^k | n`.
pub fn nu(a: u64, n: u64) -> Result<u32> {
    if a < 2 {
        return Err(Error::Domain(format!("multiplicity base must be >= 2, got {a}")));
    }
    if n < 1 {
        return Err(Error::Domain("multiplicity argument must be >= 1".into()));
    }
    let (mut n, mut k) = (n, 0);
    while n % a == 0 {
        n /= a;
        k += 1;
    }
    Ok(k)
}

/// `S(a,k) ∩ [N]` where `S(a,k) = {n : nu_a(n) ≡ k-1 (mod k)}`.
pub fn s_ak_window(a: u64, k: u32, n: u64) -> Result<Window> {
    if a < 2 || k < 2 {
        return Err(Error::Domain(format!("S(a,k) needs a,k >= 2, got a={a}, k={k}")));
    }
    Window::from_fn(n, |x| nu(a, x).unwrap() % k == k - 1)
}

/// Least `t ∈ F` with `n·t ∈ S`.
pub fn encoding_tau(s: &Window, f: &FiniteSet, n: u64) -> Result<Option<u64>> {
    if n == 0 || n.saturating_mul(f.max_element()) > s.n {
        return Err(Error::OutOfWindow(format!(
            "n·max(F) = {}·{} exceeds N = {}",
            n,
            f.max_element(),
            s.n
        )));
    }
    Ok(f.elements().iter().copied().find(|&t| s.contains(n * t)))
}

pub fn is_f_syndetic_window(s: &Window, f: &FiniteSet) -> Result<SyndeticityReport> {
    if f.max_element() > s.n {
        return Err(Error::OutOfWindow(format!("max(F) = {} exceeds N = {}", f.max_element(), s.n)));
    }
    let checked_up_to = s.n / f.max_element();
    for n in 1..=checked_up_to {
        if encoding_tau(s, f, n)?.is_none() {
            return Ok(SyndeticityReport {
                is_window_syndetic: false,
                first_failure: Some(n),
                checked_up_to,
            });
        }
    }
    Ok(SyndeticityReport {
        is_window_syndetic: true,
        first_failure: None,
        checked_up_to,
    })
}

/// Least `t` with `t·F ⊆ T` inside the window.
pub fn thick_witness(t: &Window, f: &FiniteSet) -> Option<u64> {
    (1..=t.n / f.max_element()).find(|&x| f.elements().iter().all(|&e| t.contains(x * e)))
}

/// Builds `D = ∪_{t∈F} t⁻¹S` on `[N / max(F)]` and returns a thickness
/// witness for `F_test` inside `D`.
pub fn is_piecewise_syndetic_window(s: &Window, f: &FiniteSet, f_test: &FiniteSet) -> Result<Option<u64>> {
    if f.max_element().saturating_mul(f_test.max_element()) > s.n {
        return Err(Error::OutOfWindow(format!(
            "max(F)·max(F_test) = {}·{} exceeds N = {}",
            f.max_element(),
            f_test.max_element(),
            s.n
        )));
    }
    let d = Window::from_fn(s.n / f.max_element(), |x| f.elements().iter().any(|&t| s.contains(x * t)))?;
    Ok(thick_witness(&d, f_test))
}

/// `(1/|F|)·⌊N / max(F)⌋`, the minimum size of an `F`-syndetic subset of `[N]`
/// guaranteed by the pigeonhole argument on the encoding function.
pub fn density_lower_bound(f: &FiniteSet, n: u64) -> Rational {
    Rational::new(BigInt::from(n / f.max_element()), BigInt::from(f.len()))
}

/// Dilates `n·F` for `n <= N / max(F)`: the constraints a window-syndetic
/// set must meet.
fn constraint_edges(f: &FiniteSet, n: u64) -> Vec<Vec<u64>> {
    (1..=n / f.max_element())
        .map(|x| f.elements().iter().map(|&t| x * t).collect())
        .collect()
}

/// Smallest `X ⊆ [N]` meeting every in-window dilate of `F`, with the
/// lexicographically least minimiser.
pub fn min_syndetic_size(f: &FiniteSet, n: u64) -> Result<(usize, Window)> {
    let (size, set) = cover::min_hitting_set(&constraint_edges(f, n))?;
    Ok((size, Window::from_elements(n, &set)?))
}

/// Integers `<= limit` all of whose prime factors divide some element of `F`.
pub fn smooth_numbers(f: &FiniteSet, limit: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    for &e in f.elements() {
        let (mut m, mut p) = (e, 2);
        while p * p <= m {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            primes.push(m);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out = vec![];
    if limit >= 1 {
        out.push(1u64);
    }
    for &p in &primes {
        // Newly pushed entries are revisited, which produces every power of p.
        let mut i = 0;
        while i < out.len() {
            if let Some(v) = out[i].checked_mul(p).filter(|&v| v <= limit) {
                out.push(v);
            }
            i += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Lower estimate of `g_F(k)`: the least `|X ∩ {d_1..d_k}|` over `X ⊆ [limit]`
/// meeting every in-window dilate of `F`. Dilates that contain a point
/// outside `{d_1..d_k}` are met for free, so only dilates lying entirely
/// inside the smooth prefix constrain the count.
pub fn gf_window_estimate(f: &FiniteSet, k: usize, limit: u64) -> Result<usize> {
    let smooth = smooth_numbers(f, limit);
    if k == 0 {
        return Ok(0);
    }
    if smooth.len() < k {
        return Err(Error::Precondition(format!(
            "only {} smooth numbers up to {limit}, need d_{k}",
            smooth.len()
        )));
    }
    let prefix = &smooth[..k];
    if prefix[k - 1].saturating_mul(f.max_element()) > limit {
        return Err(Error::OutOfWindow(format!(
            "d_{k}·max(F) = {}·{} exceeds limit {limit}",
            prefix[k - 1],
            f.max_element()
        )));
    }
    let residual: Vec<Vec<u64>> = constraint_edges(f, limit)
        .into_iter()
        .filter(|e| e.iter().all(|v| prefix.binary_search(v).is_ok()))
        .collect();
    Ok(cover::min_hitting_set(&residual)?.0)
}
