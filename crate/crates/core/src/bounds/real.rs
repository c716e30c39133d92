//! Outward-rounded fixed-point arithmetic for non-negative reals.
//!
//! A value is held as an interval `[lo, hi] · 2^-FRAC` of big unsigned
//! integers; every operation rounds `lo` down and `hi` up, and truncated
//! series add a bound on their tail to `hi`. Only what the display forms
//! need is provided: sums, products, quotients, logarithms of integers and
//! powers of two.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

pub(crate) const FRAC: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Real {
    pub lo: BigUint,
    pub hi: BigUint,
}

fn ceil_shr(x: &BigUint, bits: usize) -> BigUint {
    let q = x >> bits;
    if (&q << bits) == *x {
        q
    } else {
        q + 1u32
    }
}

impl Real {
    pub fn int(v: u64) -> Real {
        let x = BigUint::from(v) << FRAC;
        Real { lo: x.clone(), hi: x }
    }

    pub fn add(&self, o: &Real) -> Real {
        Real { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &Real) -> Real {
        Real { lo: (&self.lo * &o.lo) >> FRAC, hi: ceil_shr(&(&self.hi * &o.hi), FRAC) }
    }

    pub fn scale(&self, k: u64) -> Real {
        Real { lo: &self.lo * k, hi: &self.hi * k }
    }

    /// Requires a divisor bounded away from zero.
    pub fn div(&self, o: &Real) -> Real {
        assert!(!o.lo.is_zero(), "division by an interval containing zero");
        Real { lo: (&self.lo << FRAC) / &o.hi, hi: (&self.hi << FRAC).div_ceil(&o.lo) }
    }
}

/// `2·atanh(p/q)` for `0 <= p/q <= 1/3`.
fn two_atanh(p: &BigUint, q: &BigUint) -> Real {
    let z_lo = (p << FRAC) / q;
    let z_hi = (p << FRAC).div_ceil(q);
    let z2_lo = (&z_lo * &z_lo) >> FRAC;
    let z2_hi = ceil_shr(&(&z_hi * &z_hi), FRAC);
    let (mut pow_lo, mut pow_hi) = (z_lo, z_hi);
    let (mut lo, mut hi) = (BigUint::zero(), BigUint::zero());
    let mut k: u32 = 0;
    loop {
        let denom = BigUint::from(2 * k + 1);
        lo += &pow_lo / &denom;
        hi += pow_hi.div_ceil(&denom);
        if pow_hi <= BigUint::one() {
            // Remaining terms are each below one unit and shrink ninefold.
            hi += 2u32;
            break;
        }
        pow_lo = (&pow_lo * &z2_lo) >> FRAC;
        pow_hi = ceil_shr(&(&pow_hi * &z2_hi), FRAC);
        k += 1;
    }
    Real { lo: lo << 1, hi: hi << 1 }
}

pub(crate) fn ln2() -> Real {
    two_atanh(&BigUint::one(), &BigUint::from(3u32))
}

/// `log2(x)` for `x >= 1`; exact when `x` is a power of two.
pub(crate) fn log2_int(x: &BigUint) -> Real {
    assert!(!x.is_zero(), "log of zero");
    let e = x.bits() - 1;
    let base = BigUint::one() << e;
    let whole = Real::int(e);
    if *x == base {
        return whole;
    }
    // ln(x / 2^e) = 2·atanh((x - 2^e) / (x + 2^e)), argument below 1/3.
    let frac = two_atanh(&(x - &base), &(x + &base)).div(&ln2());
    whole.add(&frac)
}

pub(crate) fn log2_u(x: u128) -> Real {
    log2_int(&BigUint::from(x))
}

/// `log_3(x)` for `x >= 1`.
pub(crate) fn log3_u(x: u128) -> Real {
    if x == 1 {
        return Real::int(0);
    }
    log2_u(x).div(&log2_u(3))
}

/// Floor of the lower end and ceiling of the upper end of `2^e`.
pub(crate) fn exp2(e: &Real) -> (BigUint, BigUint) {
    let ln2 = ln2();
    let one = BigUint::one() << FRAC;
    let split = |x: &BigUint| {
        let k = x >> FRAC;
        let f = x - (&k << FRAC);
        (k, f)
    };

    let (k_lo, f_lo) = split(&e.lo);
    let y_lo = (&f_lo * &ln2.lo) >> FRAC;
    let mut sum_lo = one.clone();
    let mut term = one.clone();
    let mut j = 1u32;
    while !term.is_zero() {
        term = ((&term * &y_lo) >> FRAC) / j;
        sum_lo += &term;
        j += 1;
    }

    let (k_hi, f_hi) = split(&e.hi);
    let y_hi = ceil_shr(&(&f_hi * &ln2.hi), FRAC);
    let mut sum_hi = one.clone();
    let mut term = one;
    let mut j = 1u32;
    loop {
        term = ceil_shr(&(&term * &y_hi), FRAC).div_ceil(&BigUint::from(j));
        if term.is_zero() {
            break;
        }
        sum_hi += &term;
        if term <= BigUint::one() {
            sum_hi += 2u32;
            break;
        }
        j += 1;
    }

    let shift = |k: &BigUint| usize::try_from(k).expect("exponent fits in memory");
    let lower = (sum_lo << shift(&k_lo)) >> FRAC;
    let upper = ceil_shr(&(sum_hi << shift(&k_hi)), FRAC);
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(r: &Real) -> f64 {
        use num_traits::ToPrimitive;
        assert!(r.lo <= r.hi);
        assert!(&r.hi - &r.lo < BigUint::one() << (FRAC - 200), "interval too wide");
        r.lo.to_f64().unwrap() / 2f64.powi(FRAC as i32)
    }

    #[test]
    fn logarithms() {
        assert!((approx(&ln2()) - core::f64::consts::LN_2).abs() < 1e-15);
        assert!((approx(&log2_u(3)) - 3f64.log2()).abs() < 1e-15);
        assert!((approx(&log3_u(4)) - 4f64.ln() / 3f64.ln()).abs() < 1e-15);
        assert_eq!(log2_u(1024), Real::int(10));
        assert!((approx(&log2_u(1_000_003)) - 1_000_003f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn powers_of_two() {
        let (lo, hi) = exp2(&Real::int(39));
        assert_eq!(lo, BigUint::one() << 39);
        assert_eq!(hi, BigUint::one() << 39);
        // 2^(log2 10) brackets 10 tightly.
        let (lo, hi) = exp2(&log2_u(10));
        assert!(lo <= BigUint::from(10u32) && BigUint::from(10u32) <= hi);
        assert!(&hi - &lo <= BigUint::from(2u32));
        let (lo, hi) = exp2(&log2_u(3).scale(100));
        let three = num_traits::pow(BigUint::from(3u32), 100);
        assert!(lo <= three && three <= hi);
    }
}
