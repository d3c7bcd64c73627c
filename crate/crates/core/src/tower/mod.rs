//! Iterated exponentials `a₁^(a₂^(⋯^aₙ))`, kept structural once they are
//! too large to write out, with exact or certified comparison.

mod magnitude;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use magnitude::{log2_big, plus, Magnitude};

/// Levels whose value would exceed this many decimal digits stay structural.
pub const MATERIALIZE_DIGITS: u64 = 1_000_000;
const MATERIALIZE_BITS: f64 = MATERIALIZE_DIGITS as f64 * std::f64::consts::LOG2_10;

pub const DEFAULT_PRINT_DIGITS: usize = 40;

/// `levels[0]^(levels[1]^(…))`, in canonical form: the top two levels are
/// never jointly materializable under the digit threshold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerExpr {
    levels: Vec<BigUint>,
}

fn materializable(base: &BigUint, exp: &BigUint) -> bool {
    exp.to_u64()
        .is_some_and(|e| (e as f64) * log2_big(base).1 <= MATERIALIZE_BITS)
}

impl TowerExpr {
    /// Builds the tower and collapses it from the top. A level equal to 1
    /// makes everything above it irrelevant and is dropped with it.
    pub fn new(mut levels: Vec<BigUint>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Domain("a tower needs at least one level".into()));
        }
        if levels.iter().any(Zero::is_zero) {
            return Err(Error::Domain("tower levels must be positive".into()));
        }
        if let Some(i) = levels.iter().position(One::is_one) {
            if i == 0 {
                return Err(Error::Domain("tower base must be at least 2".into()));
            }
            levels.truncate(i);
        }
        while levels.len() >= 2 {
            let n = levels.len();
            if !materializable(&levels[n - 2], &levels[n - 1]) {
                break;
            }
            let e = levels.pop().unwrap().to_u32().unwrap();
            let base = levels.pop().unwrap();
            levels.push(Pow::pow(base, e));
        }
        Ok(TowerExpr { levels })
    }

    pub fn from_u64s(levels: &[u64]) -> Result<Self> {
        TowerExpr::new(levels.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn int(v: BigUint) -> Result<Self> {
        TowerExpr::new(vec![v])
    }

    pub fn levels(&self) -> &[BigUint] {
        &self.levels
    }

    /// Height of the canonical form.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// The exact integer, when the canonical form is a single level.
    pub fn value(&self) -> Option<&BigUint> {
        (self.levels.len() == 1).then(|| &self.levels[0])
    }

    fn tail(&self) -> TowerExpr {
        TowerExpr {
            levels: self.levels[1..].to_vec(),
        }
    }

    fn magnitude(&self) -> Magnitude {
        let (top, rest) = self.levels.split_last().unwrap();
        rest.iter()
            .rev()
            .fold(Magnitude::of(top), |m, a| Magnitude::power_of(a, m))
    }

    /// `a^(b^(…))` with any level of more than `max_digits` digits shortened
    /// to its leading digits and a digit count.
    pub fn render(&self, max_digits: usize) -> String {
        let parts: Vec<String> = self.levels.iter().map(|l| render_int(l, max_digits)).collect();
        let mut out = parts.last().unwrap().clone();
        for p in parts.iter().rev().skip(1) {
            out = format!("{p}^({out})");
        }
        out
    }
}

impl fmt::Display for TowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(DEFAULT_PRINT_DIGITS))
    }
}

impl Serialize for TowerExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn render_int(x: &BigUint, max_digits: usize) -> String {
    let digits = decimal_digits(x);
    if digits as usize <= max_digits {
        return x.to_string();
    }
    let lead = x / Pow::pow(BigUint::from(10u32), (digits - max_digits as u64) as u32);
    format!("{lead}...[{digits} digits]")
}

/// Exact number of decimal digits of `x >= 1`.
pub fn decimal_digits(x: &BigUint) -> u64 {
    if x.is_zero() {
        return 1;
    }
    let est = ((x.bits() - 1) as f64 * std::f64::consts::LOG10_2) as u64;
    let mut d = est.saturating_sub(1);
    let mut p = Pow::pow(BigUint::from(10u32), d as u32);
    while &p <= x {
        p *= 10u32;
        d += 1;
    }
    d
}

/// `Tow(n)`: the height-`n` tower of 2s.
pub fn tow(n: u64) -> Result<TowerExpr> {
    if n == 0 {
        return Err(Error::Domain("Tow(n) needs n >= 1".into()));
    }
    TowerExpr::new(vec![BigUint::from(2u32); n as usize])
}

/// `F(r) = T_{r+1}(2, …, 2, K r²)`.
pub fn f_func(r: u64, k: u64) -> Result<TowerExpr> {
    if r == 0 || k == 0 {
        return Err(Error::Domain("F(r) needs r, K >= 1".into()));
    }
    let mut levels = vec![BigUint::from(2u32); r as usize];
    levels.push(BigUint::from(k) * r * r);
    TowerExpr::new(levels)
}

/// Exact ordering. Equal canonical forms and equal bases are peeled
/// structurally; everything else goes through certified magnitudes and
/// fails rather than guess when those cannot separate the values.
pub fn tower_compare(x: &TowerExpr, y: &TowerExpr) -> Result<Ordering> {
    if x == y {
        return Ok(Ordering::Equal);
    }
    if let (Some(a), Some(b)) = (x.value(), y.value()) {
        return Ok(a.cmp(b));
    }
    if x.height() >= 2 && y.height() >= 2 {
        if x.levels[0] == y.levels[0] {
            return tower_compare(&x.tail(), &y.tail());
        }
        if x.levels[1..] == y.levels[1..] {
            return Ok(x.levels[0].cmp(&y.levels[0]));
        }
    }
    x.magnitude().compare(y.magnitude()).ok_or_else(|| {
        Error::ComparisonIncomplete(format!(
            "cannot separate {} and {} with certified intervals",
            x.render(12),
            y.render(12)
        ))
    })
}

/// `r³ <= Tow(r − 1)`.
pub fn verify_cube_lemma(r: u64) -> Result<bool> {
    if r < 5 {
        return Err(Error::Domain("the cube bound is stated for r >= 5".into()));
    }
    let cube = TowerExpr::int(BigUint::from(r).pow(3u32))?;
    Ok(tower_compare(&cube, &tow(r - 1)?)? != Ordering::Greater)
}

/// `a^b·k <= a^(b+k) <= a^(bk)`, exactly.
pub fn verify_lift_lemma(a: u64, b: u64, k: u64) -> Result<bool> {
    if a < 2 || b < 2 || k < 2 {
        return Err(Error::Domain("a, b, k must all be at least 2".into()));
    }
    let a_big = BigUint::from(a);
    if !materializable(&a_big, &BigUint::from(b * k)) {
        return Err(Error::SizeLimit(format!(
            "{a}^{} exceeds {MATERIALIZE_DIGITS} digits",
            b * k
        )));
    }
    let ab = Pow::pow(&a_big, b as u32);
    let mid = Pow::pow(&a_big, (b + k) as u32);
    let top = Pow::pow(&a_big, (b * k) as u32);
    Ok(ab * k <= mid && mid <= top)
}

/// `F(r)^r <= log₂ F(r+1)`.
///
/// Writing `F(r) = 2^(2^e₁)` and `log₂ F(r+1) = 2^(e₂)` with
/// `e₁ = T_{r−1}(2, …, K r²)` and `e₂ = T_{r−1}(2, …, K (r+1)²)`, the claim is
/// `r·2^e₁ <= 2^e₂`. For `r <= 3, K <= 4` both exponents are written out
/// and compared exactly; otherwise `e₁ + log₂ r <= e₂` is checked with
/// certified magnitudes.
pub fn verify_growth_corollary(r: u64, k: u64) -> Result<bool> {
    if r == 0 || k == 0 {
        return Err(Error::Domain("r and K must be at least 1".into()));
    }
    if r == 1 {
        // F(1) = 2^K and log₂ F(2) = 2^(4K).
        let rhs_bits = 4 * k;
        return Ok(rhs_bits >= 64 || k < 1u64 << rhs_bits);
    }
    let exponent = |top: u64| {
        let mut levels = vec![BigUint::from(2u32); r as usize - 2];
        levels.push(BigUint::from(k) * top * top);
        TowerExpr::new(levels)
    };
    let e1 = exponent(r)?;
    let e2 = exponent(r + 1)?;
    if r <= 3 && k <= 4 {
        let (e1, e2) = (e1.value().unwrap(), e2.value().unwrap());
        // r·2^e₁ <= 2^e₂  ⟺  r <= 2^(e₂ − e₁)
        if e2 < e1 {
            return Ok(false);
        }
        let gap = e2 - e1;
        return Ok(gap >= BigUint::from(64u32) || r <= 1u64 << gap.to_u64().unwrap());
    }
    let log_r = (r as f64).log2();
    let lhs = plus(e1.magnitude(), (log_r * (1.0 - 1e-15), log_r * (1.0 + 1e-15)));
    match lhs.compare(e2.magnitude()) {
        Some(o) => Ok(o != Ordering::Greater),
        None => Err(Error::ComparisonIncomplete(format!(
            "growth corollary at r = {r}, K = {k}"
        ))),
    }
}

/// Smallest `c` with `c³ >= r²`, i.e. `⌈r^(2/3)⌉`.
pub fn ceil_two_thirds(r: u64) -> u64 {
    let target = (r as u128) * (r as u128);
    let mut c = (r as f64).powf(2.0 / 3.0).floor() as u128;
    while c > 0 && (c - 1).pow(3) >= target {
        c -= 1;
    }
    while c.pow(3) < target {
        c += 1;
    }
    c as u64
}

/// `F(r) <= Tow(r + ⌈r^(2/3)⌉ + slack)` with `K = 1`.
pub fn verify_towf(r: u64, slack: u64) -> Result<bool> {
    let rhs = tow(r + ceil_two_thirds(r) + slack)?;
    Ok(tower_compare(&f_func(r, 1)?, &rhs)? != Ordering::Greater)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTrace {
    pub r: u64,
    pub bound: TowerExpr,
    /// `⌈C̃ ln(r+1)⌉` used to reach this step; absent for `r = 1`.
    pub exponent: Option<u64>,
    /// Height of the bound as an unsimplified tower of exponentials.
    pub height: usize,
    pub provenance: String,
}

fn ceil_c_log(c: &BigRational, m: u64) -> Result<u64> {
    let cf = c
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Domain("C~ out of floating range".into()))?;
    let ln = (m as f64).ln();
    let lo = cf * ln * (1.0 - 1e-12);
    let hi = cf * ln * (1.0 + 1e-12);
    let (a, b) = (lo.ceil(), hi.ceil());
    if a != b {
        return Err(Error::ComparisonIncomplete(format!(
            "C~ ln({m}) is too close to an integer to round up reliably"
        )));
    }
    Ok(a as u64)
}

/// The bounds `B(1) = B1` and `B(r) <= 2^(B(r−1)^e_r)` with
/// `e_r = ⌈C̃ ln(r+1)⌉`, for `r <= r_max`.
///
/// `B(2) = 2^(B1^e)` and `B(3) = 2^(2^(y·e))` are exact. From `r = 4` on
/// the bound is `T(2, …, 2, y)` and each step uses
/// `2^z·e <= 2^(z + ⌈log₂ e⌉)`, so the top level grows by `⌈log₂ e⌉`; the
/// provenance records whether that step was an equality.
pub fn propagate_recursive_bound(c_tilde: &BigRational, b1: &BigUint, r_max: u64) -> Result<Vec<BoundTrace>> {
    if !c_tilde.is_positive() {
        return Err(Error::Domain("C~ must be positive".into()));
    }
    if b1 < &BigUint::from(3u32) {
        return Err(Error::Precondition("B(1) is at least 3".into()));
    }
    if r_max == 0 {
        return Err(Error::Domain("r_max must be at least 1".into()));
    }
    let mut out = vec![BoundTrace {
        r: 1,
        bound: TowerExpr::int(b1.clone())?,
        exponent: None,
        height: 1,
        provenance: "B(1)".into(),
    }];
    // Current bound is T_h(2, …, 2, top).
    let mut top = BigUint::zero();
    for r in 2..=r_max {
        let e = ceil_c_log(c_tilde, r + 1)?;
        let prev_height = out.last().unwrap().height;
        let provenance;
        match r {
            2 => {
                if !materializable(b1, &BigUint::from(e)) {
                    return Err(Error::SizeLimit(format!("B(1)^{e} exceeds {MATERIALIZE_DIGITS} digits")));
                }
                top = Pow::pow(b1, e as u32);
                provenance = format!("2^(B(1)^{e}), exact");
            }
            3 => {
                top *= e;
                provenance = format!("2^(B(2)^{e}) = 2^(2^(y*{e})), exact");
            }
            _ => {
                let c = if e <= 1 { 0 } else { 64 - (e - 1).leading_zeros() as u64 };
                top += c;
                let exact = c == 0 || (prev_height == 3 && e.is_power_of_two());
                provenance = format!(
                    "2^(B({})^{e}) <= top level raised by ceil(log2 {e}) = {c}, {}",
                    r - 1,
                    if exact { "exact" } else { "upper bound" }
                );
            }
        }
        let height = prev_height + 1;
        let mut levels = vec![BigUint::from(2u32); height - 1];
        levels.push(top.clone());
        out.push(BoundTrace {
            r,
            bound: TowerExpr::new(levels)?,
            exponent: Some(e),
            height,
            provenance,
        });
    }
    Ok(out)
}
