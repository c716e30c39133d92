//! Exact values of the closed-form length and height bounds, and
//! certified brackets for their real-valued display forms.
//!
//! Exact forms are integer products. Display forms raise numbers to real
//! exponents such as `3·log_3(nd)`; they are returned as an integer
//! interval `[lower, upper]` containing the real value, so `upper` is a
//! sound upper bound.

mod real;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Pow};

use crate::error::{invalid, CoreResult};
use real::{exp2, log2_u, log3_u, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadderBase {
    Two,
    Three,
}

impl LadderBase {
    pub fn radix(self) -> u128 {
        match self {
            LadderBase::Two => 2,
            LadderBase::Three => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundParams {
    pub n: u64,
    pub d: u64,
    pub l: u64,
    pub base: LadderBase,
}

/// Integers bracketing a real value: `lower <= value <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayValue {
    pub lower: BigUint,
    pub upper: BigUint,
}

impl DisplayValue {
    fn from_log2(e: &Real) -> Self {
        let (lower, upper) = exp2(e);
        DisplayValue { lower, upper }
    }

    /// Whether `x` is certainly at most the real value.
    pub fn certainly_at_least(&self, x: &BigUint) -> bool {
        x <= &self.lower
    }

    /// Whether `x` is certainly above the real value.
    pub fn certainly_below(&self, x: &BigUint) -> bool {
        x > &self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub exact: BigUint,
    /// The bound as stated for this ladder base.
    pub display: DisplayValue,
    /// The coarser closed form, where one is stated.
    pub simplified: Option<DisplayValue>,
}

/// Smallest `e` with `base^e >= x`, for `x >= 1`.
pub fn ceil_log(base: u128, x: u128) -> u32 {
    assert!(base >= 2 && x >= 1);
    let mut e = 0;
    let mut acc: u128 = 1;
    while acc < x {
        acc = acc.saturating_mul(base);
        e += 1;
    }
    e
}

/// `p_{n,d} = 4nd - 1`.
pub fn p_nd(n: u64, d: u64) -> u128 {
    4 * n as u128 * d as u128 - 1
}

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

/// `(1 + p·l) · (p^3 + p)^{⌈log_3 p⌉} · p · d · d + d`, or with
/// `(p^2 + p)^{⌈log_2 p⌉}` for the base-2 ladder.
pub fn psi_exact(n: u64, d: u64, l: u64, base: LadderBase) -> BigUint {
    let p = p_nd(n, d);
    let pb = big(p);
    let step = match base {
        LadderBase::Three => pb.clone().pow(3u32) + &pb,
        LadderBase::Two => pb.clone().pow(2u32) + &pb,
    };
    let rungs = ceil_log(base.radix(), p);
    (big(1) + &pb * l) * step.pow(rungs) * &pb * d * d + d
}

fn psi_params(p: BoundParams) -> CoreResult<()> {
    if p.n < 2 || p.d < p.n || p.l == 0 {
        return Err(invalid(alloc::format!(
            "need d >= n >= 2 and l >= 1 (n = {}, d = {}, l = {})",
            p.n,
            p.d,
            p.l
        )));
    }
    Ok(())
}

/// log2 of `4^{5+3log_3 4} l (nd)^{3log_3(nd)+5+6log_3 4} d^2`.
fn psi_display_three(n: u64, d: u64, l: u64) -> Real {
    let nd = n as u128 * d as u128;
    let l34 = log3_u(4);
    let head = Real::int(5).add(&l34.scale(3)).scale(2);
    let exponent = log3_u(nd).scale(3).add(&Real::int(5)).add(&l34.scale(6));
    head.add(&log2_u(l as u128)).add(&exponent.mul(&log2_u(nd))).add(&log2_u(d as u128).scale(2))
}

/// log2 of `2^18 l (nd)^{3log_3(nd)+13} d^2`.
fn psi_simplified(n: u64, d: u64, l: u64) -> Real {
    let nd = n as u128 * d as u128;
    let exponent = log3_u(nd).scale(3).add(&Real::int(13));
    Real::int(18).add(&log2_u(l as u128)).add(&exponent.mul(&log2_u(nd))).add(&log2_u(d as u128).scale(2))
}

/// log2 of `256 l (nd)^{2log_2(nd)+10} d^2`.
fn psi_display_two(n: u64, d: u64, l: u64) -> Real {
    let nd = n as u128 * d as u128;
    let lg = log2_u(nd);
    let exponent = lg.scale(2).add(&Real::int(10));
    Real::int(8).add(&log2_u(l as u128)).add(&exponent.mul(&lg)).add(&log2_u(d as u128).scale(2))
}

pub fn psi_bound(p: BoundParams) -> CoreResult<BoundValue> {
    psi_params(p)?;
    let exact = psi_exact(p.n, p.d, p.l, p.base);
    Ok(match p.base {
        LadderBase::Three => BoundValue {
            exact,
            display: DisplayValue::from_log2(&psi_display_three(p.n, p.d, p.l)),
            simplified: Some(DisplayValue::from_log2(&psi_simplified(p.n, p.d, p.l))),
        },
        LadderBase::Two => BoundValue {
            exact,
            display: DisplayValue::from_log2(&psi_display_two(p.n, p.d, p.l)),
            simplified: None,
        },
    })
}

/// `2 n^{3⌈log_3 n⌉ + 4} l`.
pub fn upsilon_bound(n: u64, l: u64) -> CoreResult<BigUint> {
    if n < 2 {
        return Err(invalid(alloc::format!("need n >= 2, got {n}")));
    }
    let e = 3 * ceil_log(3, n as u128) + 4;
    Ok(big(2) * big(n as u128).pow(e) * l)
}

/// Exact: `Ψ(n, 4n, l) + 5·Υ(n, l)`. Display: `E_1 l n^{E_2 + 12 log_3 n}`
/// with `E_1 = 4^{21 log_3 4 + 17}`, `E_2 = 30 log_3 4 + 10` (base 3,
/// simplified `2^87 l n^{12 log_3 n + 48}`), or `2^40 l n^{38 + 8 log_2 n}`
/// (base 2).
pub fn phi_bound(n: u64, l: u64, base: LadderBase) -> CoreResult<BoundValue> {
    if n < 2 || l == 0 {
        return Err(invalid(alloc::format!("need n >= 2 and l >= 1 (n = {n}, l = {l})")));
    }
    let exact = psi_exact(n, 4 * n, l, base) + upsilon_bound(n, l)? * 5u32;
    let lg_n = log2_u(n as u128);
    let lg_l = log2_u(l as u128);
    Ok(match base {
        LadderBase::Three => {
            let l34 = log3_u(4);
            let e1 = l34.scale(21).add(&Real::int(17)).scale(2);
            let e2 = l34.scale(30).add(&Real::int(10));
            let display = e1.add(&lg_l).add(&e2.add(&log3_u(n as u128).scale(12)).mul(&lg_n));
            let simplified = Real::int(87).add(&lg_l).add(&log3_u(n as u128).scale(12).add(&Real::int(48)).mul(&lg_n));
            BoundValue {
                exact,
                display: DisplayValue::from_log2(&display),
                simplified: Some(DisplayValue::from_log2(&simplified)),
            }
        }
        LadderBase::Two => {
            let display = Real::int(40).add(&lg_l).add(&Real::int(38).add(&lg_n.scale(8)).mul(&lg_n));
            BoundValue { exact, display: DisplayValue::from_log2(&display), simplified: None }
        }
    })
}

/// Cited bounds from the literature, at `n` generators of degree and `l`
/// letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalBounds {
    /// `4 · 2^{n/2} · l`.
    pub lopatin: DisplayValue,
    /// `(n^2 + n - 2) / 2`.
    pub kuzmin_lower: u128,
    /// `(l - 1) n^2 / 4 + 1`.
    pub gk_lower: Ratio<u128>,
}

pub fn external_bounds(n: u64, l: u64) -> CoreResult<ExternalBounds> {
    if n < 2 || l == 0 {
        return Err(invalid(alloc::format!("need n >= 2 and l >= 1 (n = {n}, l = {l})")));
    }
    let n2 = n as u128 * n as u128;
    // log2(4 · 2^{n/2} · l) = 2 + n/2 + log2 l
    let half = Real { lo: BigUint::from(n) << (real::FRAC - 1), hi: BigUint::from(n) << (real::FRAC - 1) };
    let lopatin = DisplayValue::from_log2(&Real::int(2).add(&half).add(&log2_u(l as u128)));
    Ok(ExternalBounds {
        lopatin,
        kuzmin_lower: (n2 + n as u128 - 2) / 2,
        gk_lower: Ratio::new((l as u128 - 1) * n2, 4) + Ratio::one(),
    })
}

/// `(m - 1)^{2k}`.
pub fn latyshev(m: u64, k: u32) -> BigUint {
    big(m.saturating_sub(1) as u128).pow(2 * k)
}

/// Exact test of `x < 4 · 2^{n/2} · l`, via `x^2 < 16 l^2 2^n`.
pub fn below_lopatin(x: &BigUint, n: u64, l: u64) -> bool {
    let rhs = (big(16) * big(l as u128).pow(2u32)) << usize::try_from(n).expect("n fits in usize");
    x * x < rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u64, d: u64, l: u64, base: LadderBase) -> BoundParams {
        BoundParams { n, d, l, base }
    }

    #[test]
    fn ceil_log_examples() {
        assert_eq!(ceil_log(3, 15), 3);
        assert_eq!(ceil_log(3, 27), 3);
        assert_eq!(ceil_log(3, 28), 4);
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 15), 4);
    }

    #[test]
    fn psi_exact_small() {
        // p = 15, three rungs: 31 · 3390^3 · 15 · 4 + 2
        let v = psi_bound(params(2, 2, 2, LadderBase::Three)).unwrap();
        let expected = big(31) * big(3390).pow(3u32) * 15u32 * 4u32 + 2u32;
        assert_eq!(v.exact, expected);
        // base 2: four rungs of 240
        let v2 = psi_bound(params(2, 2, 2, LadderBase::Two)).unwrap();
        assert_eq!(v2.exact, big(31) * big(240).pow(4u32) * 15u32 * 4u32 + 2u32);
    }

    #[test]
    fn psi_display_at_two() {
        let v = psi_bound(params(2, 2, 2, LadderBase::Two)).unwrap();
        let expected = BigUint::one() << 39;
        assert_eq!(v.display.lower, expected);
        assert_eq!(v.display.upper, expected);
    }

    #[test]
    fn psi_grows_with_d() {
        let a = psi_bound(params(2, 3, 2, LadderBase::Three)).unwrap();
        let b = psi_bound(params(2, 2, 2, LadderBase::Three)).unwrap();
        assert!(a.exact > b.exact);
        assert!(psi_bound(params(3, 2, 2, LadderBase::Three)).is_err());
        assert!(psi_bound(params(1, 2, 2, LadderBase::Three)).is_err());
    }

    #[test]
    fn upsilon_examples() {
        assert_eq!(upsilon_bound(3, 2).unwrap(), big(8748));
        assert_eq!(upsilon_bound(2, 1).unwrap(), big(256));
        assert_eq!(upsilon_bound(9, 1).unwrap(), big(2) * big(9).pow(10u32));
    }

    #[test]
    fn phi_forms() {
        let v = phi_bound(2, 2, LadderBase::Three).unwrap();
        assert_eq!(v.exact, psi_exact(2, 8, 2, LadderBase::Three) + upsilon_bound(2, 2).unwrap() * 5u32);
        // n = 3: exponent E_2 + 12 exactly since log_3 3 = 1.
        let v3 = phi_bound(3, 2, LadderBase::Three).unwrap();
        let l34 = 4f64.ln() / 3f64.ln();
        let log2_expected = 2.0 * (21.0 * l34 + 17.0) + 1.0 + (30.0 * l34 + 10.0 + 12.0) * 3f64.log2();
        let bits = v3.display.upper.bits() as f64;
        assert!((bits - log2_expected).abs() < 1.5);
        for n in 2..=10 {
            let two = phi_bound(n, 2, LadderBase::Two).unwrap();
            let three = phi_bound(n, 2, LadderBase::Three).unwrap();
            assert!(two.display.upper < three.display.lower, "n = {n}");
        }
    }

    #[test]
    fn external_examples() {
        let e = external_bounds(4, 2).unwrap();
        assert_eq!(e.lopatin.lower, big(32));
        assert_eq!(e.lopatin.upper, big(32));
        assert_eq!(external_bounds(3, 2).unwrap().kuzmin_lower, 5);
        assert_eq!(external_bounds(4, 3).unwrap().gk_lower, Ratio::from_integer(9));
        assert_eq!(latyshev(3, 2), big(16));
        assert!(below_lopatin(&big(31), 4, 2));
        assert!(!below_lopatin(&big(32), 4, 2));
        // odd n: 4·2^{1.5}·1 ≈ 11.31
        assert!(below_lopatin(&big(11), 3, 1));
        assert!(!below_lopatin(&big(12), 3, 1));
    }
}
