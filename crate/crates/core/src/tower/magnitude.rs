//! Certified level-index intervals: a value `exp2^k(t)` with `t` known to
//! lie in `[lo, hi]`. Every floating-point step rounds outward with a
//! margin well above the error of the platform `log2`/`exp2`, so the true
//! value always lies inside the interval.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Intervals with `hi` at or above this are lifted one level.
const LIFT: f64 = 1.340_780_792_994_259_7e154; // 2^512
/// At levels `>= 1`, intervals with `hi` below this are dropped one level.
const DROP: f64 = 512.0;

fn down(x: f64) -> f64 {
    (x - x.abs() * 1e-15).next_down()
}

fn up(x: f64) -> f64 {
    (x + x.abs() * 1e-15).next_up()
}

/// Interval for `log2 x`, `x >= 1`.
pub(crate) fn log2_big(x: &BigUint) -> (f64, f64) {
    let bits = x.bits();
    if bits <= 53 {
        let v = x.to_u64().unwrap() as f64;
        return (down(v.log2()).max(0.0), up(v.log2()));
    }
    let shift = bits - 53;
    let m = (x >> shift).to_u64().unwrap() as f64;
    (down(m.log2() + shift as f64), up((m + 1.0).log2() + shift as f64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Magnitude {
    pub level: u32,
    pub lo: f64,
    pub hi: f64,
}

impl Magnitude {
    pub fn of(x: &BigUint) -> Magnitude {
        if x.bits() <= 1000 {
            let v = x.to_f64().unwrap();
            return Magnitude { level: 0, lo: down(v), hi: up(v) }.normalized();
        }
        let (lo, hi) = log2_big(x);
        Magnitude { level: 1, lo, hi }.normalized()
    }

    fn lifted(self) -> Magnitude {
        Magnitude {
            level: self.level + 1,
            lo: down(self.lo.log2()),
            hi: up(self.hi.log2()),
        }
    }

    fn dropped(self) -> Magnitude {
        Magnitude {
            level: self.level - 1,
            lo: down(self.lo.exp2()),
            hi: up(self.hi.exp2()),
        }
    }

    fn normalized(mut self) -> Magnitude {
        loop {
            if self.hi >= LIFT && self.lo > 0.0 {
                self = self.lifted();
            } else if self.level >= 1 && self.hi < DROP {
                self = self.dropped();
            } else {
                return self;
            }
        }
    }

    /// `a^self` for an integer `a >= 2`.
    pub fn power_of(a: &BigUint, v: Magnitude) -> Magnitude {
        let (la_lo, la_hi) = log2_big(a);
        if v.level == 0 {
            // a^t = 2^(t log2 a)
            return Magnitude {
                level: 1,
                lo: down(v.lo.max(0.0) * la_lo),
                hi: up(v.hi * la_hi),
            }
            .normalized();
        }
        // a^(2^y) = 2^(2^(y + log2 log2 a)) with y = exp2^(k-1)(t).
        let c = (down(la_lo.log2()).max(0.0), up(la_hi.log2()));
        let x = add_const(v.level - 1, v.lo, v.hi, c);
        Magnitude {
            level: x.level + 2,
            ..x
        }
        .normalized()
    }

    /// `Some` ordering when the intervals separate the values.
    pub fn compare(self, other: Magnitude) -> Option<Ordering> {
        let (mut a, mut b) = (self, other);
        loop {
            if a.level == b.level {
                return if a.hi < b.lo {
                    Some(Ordering::Less)
                } else if a.lo > b.hi {
                    Some(Ordering::Greater)
                } else {
                    None
                };
            }
            let a_low = a.level < b.level;
            let (low, high) = if a_low { (&mut a, &mut b) } else { (&mut b, &mut a) };
            // exp2^j(512) >= 2^512 > low.hi for every j >= 1.
            if low.hi < LIFT && high.lo >= DROP {
                return Some(if a_low { Ordering::Less } else { Ordering::Greater });
            }
            if high.hi < 1000.0 {
                *high = high.dropped();
            } else if low.lo > 0.0 {
                *low = low.lifted();
            } else {
                return None;
            }
        }
    }
}

/// `exp2^m(t) + c` for `t ∈ [lo, hi]` and `c ∈ [c.0, c.1]`, `c >= 0`.
fn add_const(m: u32, lo: f64, hi: f64, c: (f64, f64)) -> Magnitude {
    if m == 0 {
        return Magnitude {
            level: 0,
            lo: down(lo + c.0),
            hi: up(hi + c.1),
        }
        .normalized();
    }
    // 2^y + c = 2^(y + log2(1 + c 2^-y)) and log2(1 + z) <= z / ln 2, with
    // y = exp2^(m-1)(t) >= t.
    let delta_hi = up(up(c.1 * up((-lo).exp2())) / std::f64::consts::LN_2);
    let inner = add_const(m - 1, lo, hi, (0.0, delta_hi));
    Magnitude {
        level: inner.level + 1,
        ..inner
    }
    .normalized()
}

/// `exp2^m(t) + c` on a normalized magnitude.
pub(crate) fn plus(v: Magnitude, c: (f64, f64)) -> Magnitude {
    add_const(v.level, v.lo, v.hi, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn contains(m: Magnitude, x: &BigUint) -> bool {
        // Walk the exact value down to the magnitude's level.
        let mut lo = m.lo;
        let mut hi = m.hi;
        for _ in 0..m.level {
            lo = down(lo.exp2());
            hi = up(hi.exp2());
        }
        let v = x.to_f64().unwrap();
        lo <= v && v <= hi
    }

    #[test]
    fn encloses_small_values() {
        for v in [2u64, 3, 511, 512, 513, 1 << 40, u64::MAX] {
            let x = BigUint::from(v);
            assert!(contains(Magnitude::of(&x), &x));
        }
        let big = BigUint::one() << 900u32;
        assert!(contains(Magnitude::of(&big), &big));
    }

    #[test]
    fn power_levels() {
        let two = BigUint::from(2u32);
        let m = Magnitude::power_of(&two, Magnitude::of(&BigUint::from(65536u32)));
        assert_eq!(m.level, 1);
        assert!(m.lo <= 65536.0 && 65536.0 <= m.hi);
        let m2 = Magnitude::power_of(&two, m);
        assert_eq!(m2.level, 2);
        assert!(m2.lo <= 65536.0 && 65536.0 <= m2.hi);
    }

    #[test]
    fn separates_levels() {
        let a = Magnitude { level: 0, lo: 1e100, hi: 1e100 };
        let b = Magnitude { level: 2, lo: 600.0, hi: 600.0 };
        assert_eq!(a.compare(b), Some(Ordering::Less));
        assert_eq!(b.compare(a), Some(Ordering::Greater));
        let c = Magnitude { level: 1, lo: 10.0, hi: 11.0 };
        assert_eq!(c.compare(Magnitude { level: 1, lo: 10.5, hi: 12.0 }), None);
    }
}
