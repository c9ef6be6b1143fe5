//! Certified rational enclosures of cube roots.
//!
//! The enclosure of t = ∛m is the only approximate object in the crate, and
//! it is certified at every refinement level: the dyadic endpoints satisfy
//! lo³ < m < hi³ exactly in integer arithmetic. Sign and floor decisions on
//! field elements evaluate over the enclosure and refine it (doubling the
//! precision) until the decision is unambiguous.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// Refinement cap for sign determination. A nonzero element always decides
/// at finite precision; reaching the cap means a bug, not a hard input.
pub(crate) const MAX_SIGN_BITS: u32 = 1 << 26;

/// Floor of the real cube root of a u64.
pub(crate) fn icbrt_u64(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let mut k = (m as f64).cbrt().round() as u64;
    if k == 0 {
        k = 1;
    }
    let cube = |x: u64| -> u128 { (x as u128) * (x as u128) * (x as u128) };
    while cube(k) > m as u128 {
        k -= 1;
    }
    while cube(k + 1) <= m as u128 {
        k += 1;
    }
    k
}

pub(crate) fn is_cube(m: u64) -> bool {
    let k = icbrt_u64(m);
    (k as u128) * (k as u128) * (k as u128) == m as u128
}

/// m must be >= 2 and not a perfect cube.
pub(crate) fn validate_m(m: u64) -> Result<()> {
    if m < 2 || is_cube(m) {
        Err(Error::CubeError(m))
    } else {
        Ok(())
    }
}

/// Closed interval with exact big-rational endpoints, lo <= hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Exact translation by -n.
    pub fn sub_integer(&self, n: &BigInt) -> RationalInterval {
        let shift = BigRational::from_integer(n.clone());
        RationalInterval {
            lo: &self.lo - &shift,
            hi: &self.hi - &shift,
        }
    }

    /// Exact reciprocal [1/hi, 1/lo]; requires the interval to be strictly
    /// positive, otherwise `None` (the caller treats that as ambiguity).
    pub fn reciprocal(&self) -> Option<RationalInterval> {
        if self.lo.is_positive() {
            Some(RationalInterval {
                lo: self.hi.recip(),
                hi: self.lo.recip(),
            })
        } else {
            None
        }
    }

    /// The common floor of both endpoints, when they agree.
    pub fn unambiguous_floor(&self) -> Option<BigInt> {
        let f_lo = self.lo.numer().div_floor(self.lo.denom());
        let f_hi = self.hi.numer().div_floor(self.hi.denom());
        if f_lo == f_hi {
            Some(f_lo)
        } else {
            None
        }
    }
}

/// Dyadic enclosure of ∛m: the interval [lo/2^bits, hi/2^bits] with the
/// certification lo³ < m·2^(3·bits) < hi³ maintained exactly at every step.
#[derive(Debug, Clone)]
pub(crate) struct DyadicCbrt {
    m: u64,
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl DyadicCbrt {
    pub(crate) fn new(m: u64) -> Result<DyadicCbrt> {
        validate_m(m)?;
        let k = icbrt_u64(m);
        Ok(DyadicCbrt {
            m,
            lo: BigInt::from(k),
            hi: BigInt::from(k + 1),
            bits: 0,
        })
    }

    fn scaled_m(&self) -> BigInt {
        BigInt::from(self.m) << (3 * self.bits as usize)
    }

    /// Refine so that hi - lo <= 2^(-(target_bits + 2)). Newton from above
    /// converges quadratically; a bisection step covers the rare iteration
    /// where rounding to the dyadic grid stalls progress.
    pub(crate) fn refine(&mut self, target_bits: u32) {
        let grid = target_bits + 5;
        if self.bits < grid {
            let shift = (grid - self.bits) as usize;
            self.lo <<= shift;
            self.hi <<= shift;
            self.bits = grid;
        }
        let m_scaled = self.scaled_m();
        let threshold = BigInt::from(8); // 8/2^grid = 2^-(target_bits + 2)
        while &self.hi - &self.lo > threshold {
            let u2 = &self.hi * &self.hi;
            let u3 = &u2 * &self.hi;
            let numer: BigInt = (u3 << 1) + &m_scaled;
            let newton = Integer::div_ceil(&numer, &(u2 * 3));
            if newton < self.hi {
                // Certify before committing: (newton/2^bits)³ > m exactly.
                assert!(
                    &newton * &newton * &newton > m_scaled,
                    "upper cube-root bound lost certification"
                );
                self.hi = newton;
                let lower = m_scaled.div_floor(&(&self.hi * &self.hi));
                if lower > self.lo {
                    assert!(
                        &lower * &lower * &lower < m_scaled,
                        "lower cube-root bound lost certification"
                    );
                    self.lo = lower;
                }
            } else {
                let mid = (&self.lo + &self.hi) >> 1;
                let mid3 = &mid * &mid * &mid;
                debug_assert!(mid3 != m_scaled, "m validated noncube");
                if mid3 < m_scaled {
                    self.lo = mid;
                } else {
                    self.hi = mid;
                }
            }
        }
    }

    pub(crate) fn interval(&self) -> RationalInterval {
        let den = BigInt::one() << (self.bits as usize);
        RationalInterval::new(
            BigRational::new(self.lo.clone(), den.clone()),
            BigRational::new(self.hi.clone(), den),
        )
    }

    /// Outward-rounded copy at a coarser grid, so evaluation cost scales
    /// with the requested precision rather than the cached one. Rounding lo
    /// down and hi up preserves the cube certification.
    pub(crate) fn view(&self, bits: u32) -> (BigInt, BigInt, u32) {
        if self.bits <= bits {
            return (self.lo.clone(), self.hi.clone(), self.bits);
        }
        let shift = (self.bits - bits) as usize;
        (&self.lo >> shift, (&self.hi >> shift) + 1, bits)
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Mutex<DyadicCbrt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Mutex<DyadicCbrt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Run `f` against the shared enclosure of ∛m refined to at least
/// `target_bits`. Enclosures are memoized per m, so repeated sign and floor
/// decisions reuse prior refinement work.
pub(crate) fn with_cbrt<R>(
    m: u64,
    target_bits: u32,
    f: impl FnOnce(&DyadicCbrt) -> R,
) -> Result<R> {
    let entry = {
        let mut map = cache().lock().expect("cbrt cache poisoned");
        match map.get(&m) {
            Some(e) => Arc::clone(e),
            None => {
                let fresh = Arc::new(Mutex::new(DyadicCbrt::new(m)?));
                map.insert(m, Arc::clone(&fresh));
                fresh
            }
        }
    };
    let mut enclosure = entry.lock().expect("cbrt enclosure poisoned");
    enclosure.refine(target_bits);
    Ok(f(&enclosure))
}

/// Certified enclosure of ∛m with width at most 2^(-bits).
///
/// Refinement is monotone: asking for more bits narrows the shared enclosure,
/// it never recomputes from scratch.
pub fn cbrt_bounds(m: u64, bits: u32) -> Result<RationalInterval> {
    assert!(bits >= 1, "bits must be >= 1");
    with_cbrt(m, bits, |enclosure| enclosure.interval())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn integer_cbrt() {
        assert_eq!(icbrt_u64(1), 1);
        assert_eq!(icbrt_u64(7), 1);
        assert_eq!(icbrt_u64(8), 2);
        assert_eq!(icbrt_u64(26), 2);
        assert_eq!(icbrt_u64(27), 3);
        assert_eq!(icbrt_u64(u64::MAX), 2642245);
        assert!(is_cube(8));
        assert!(is_cube(27));
        assert!(!is_cube(2));
        assert!(!is_cube(16));
    }

    #[test]
    fn bounds_for_two_at_one_bit() {
        let iv = cbrt_bounds(2, 1).unwrap();
        // Inside (1, 3/2] and certified around ∛2.
        assert!(iv.lo() > &BigRational::from_integer(1.into()));
        assert!(iv.hi() <= &BigRational::new(3.into(), 2.into()));
        assert!(iv.width() <= BigRational::new(1.into(), 2.into()));
        let two = BigRational::from_integer(2.into());
        assert!(iv.lo().pow(3) < two && two < iv.hi().pow(3));
    }

    #[test]
    fn cube_rejected() {
        assert_eq!(cbrt_bounds(27, 8).unwrap_err(), Error::CubeError(27));
        assert_eq!(cbrt_bounds(1, 4).unwrap_err(), Error::CubeError(1));
        assert_eq!(cbrt_bounds(0, 4).unwrap_err(), Error::CubeError(0));
    }

    #[test]
    fn twenty_bit_enclosure_contains_cbrt_two() {
        let iv = cbrt_bounds(2, 20).unwrap();
        let bound = BigRational::new(1.into(), BigInt::one() << 20);
        assert!(iv.width() <= bound);
        let two = BigRational::from_integer(2.into());
        assert!(iv.lo().pow(3) < two && two < iv.hi().pow(3));
        let appr = iv.lo().to_f64().unwrap();
        assert!((appr - 1.259_921_049_894_873).abs() < 1e-5);
    }

    #[test]
    fn refinement_is_nested() {
        // m = 44 is not touched by any other test, so the shared enclosure
        // is refined exactly here.
        let coarse = cbrt_bounds(44, 4).unwrap();
        let fine = cbrt_bounds(44, 64).unwrap();
        assert!(fine.lo() >= coarse.lo());
        assert!(fine.hi() <= coarse.hi());
        assert!(fine.width() < coarse.width());
        assert!(coarse.width() <= BigRational::new(1.into(), BigInt::one() << 4));
        assert!(fine.width() <= BigRational::new(1.into(), BigInt::one() << 64));
    }

    #[test]
    fn interval_reciprocal_and_floor() {
        let iv = RationalInterval::new(
            BigRational::new(5.into(), 4.into()),
            BigRational::new(4.into(), 3.into()),
        );
        assert_eq!(iv.unambiguous_floor(), Some(BigInt::one()));
        let rec = iv.reciprocal().unwrap();
        assert_eq!(rec.lo(), &BigRational::new(3.into(), 4.into()));
        assert_eq!(rec.hi(), &BigRational::new(4.into(), 5.into()));

        let spanning = RationalInterval::new(
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        );
        assert!(spanning.reciprocal().is_none());
        assert!(spanning.unambiguous_floor().is_none());
    }
}
