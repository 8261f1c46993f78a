//! Double-double arithmetic: an unevaluated sum of two f64s giving ~31
//! significant decimal digits. Margins between exponential growth rates
//! shrink to 1e-2 and smaller near their thresholds; plain f64 leaves too
//! little room between a true margin and accumulated rounding to certify
//! its sign, double-double leaves ~25 orders of magnitude.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Invariant: `lo.abs() <= ulp(hi)/2` (the pair is normalized), value = hi + lo.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

/// ln 2 to double-double precision.
pub const LN_2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_u64(x: u64) -> Dd {
        let hi = x as f64;
        // hi rounds for x > 2^53; recover the remainder exactly.
        let lo = if hi as u128 >= x as u128 {
            -(((hi as u128) - (x as u128)) as f64)
        } else {
            ((x as u128) - (hi as u128)) as f64
        };
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn from_i64(x: i64) -> Dd {
        if x >= 0 {
            Dd::from_u64(x as u64)
        } else {
            -Dd::from_u64(x.unsigned_abs())
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn mul_pow2(self, p: i32) -> Dd {
        let f = (p as f64).exp2();
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    /// Natural log by range reduction to [1,2) and the atanh series
    /// ln f = 2t(1 + t^2/3 + t^4/5 + ...) with t = (f-1)/(f+1) <= 1/3;
    /// 34 odd terms push the truncation error below 1e-33.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive value");
        let mut e = self.hi.log2().floor() as i32;
        let mut f = self.mul_pow2(-e);
        if f.hi >= 2.0 {
            e += 1;
            f = f.mul_pow2(-1);
        } else if f.hi < 1.0 {
            e -= 1;
            f = f.mul_pow2(1);
        }
        let t = (f - Dd::ONE) / (f + Dd::ONE);
        let t2 = t * t;
        let mut sum = Dd::ZERO;
        let mut pow = Dd::ONE;
        for j in 0..34 {
            sum = sum + pow / Dd::from_u64(2 * j + 1);
            pow = pow * t2;
        }
        Dd::from_i64(e as i64) * LN_2 + (t * sum).mul_pow2(1)
    }

    pub fn ln_u64(x: u64) -> Dd {
        Dd::from_u64(x).ln()
    }

    /// ln of an exact decimal given in thousandths (e.g. ln_milli(2490)
    /// is ln 2.49), so growth bases never pass through lossy f64 literals.
    pub fn ln_milli(milli: u64) -> Dd {
        Dd::ln_u64(milli) - Dd::ln_u64(1000)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q0 = self.hi / o.hi;
        let r = self - o * Dd::from_f64(q0);
        let q1 = r.hi / o.hi;
        let r = r - o * Dd::from_f64(q1);
        let q2 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q0, q1);
        Dd { hi: s, lo: e } + Dd::from_f64(q2)
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        (self.hi, self.lo).partial_cmp(&(other.hi, other.lo))
    }
}
