//! Exact arithmetic in Q(∛m).
//!
//! Elements are stored as (a + b·t + c·t²)/d with t = ∛m and big-integer
//! coefficients in canonical form: d >= 1 and gcd(a, b, c, d) = 1. For
//! noncube m the polynomial x³ - m has no rational root, so {1, t, t²} is a
//! basis over Q and equality of canonical coefficient tuples is equality of
//! values. Sign and floor are decided by evaluating the coefficients over a
//! certified enclosure of t, refining until the decision is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{validate_m, with_cbrt, MAX_SIGN_BITS};

/// An element (a + b·t + c·t²)/d of Q(∛m), t = ∛m, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicNumber {
    m: u64,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl CubicNumber {
    /// Build (a + b·t + c·t²)/d over Q(∛m) and reduce to canonical form.
    pub fn new(
        m: u64,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<CubicNumber> {
        Self::canonical(m, a.into(), b.into(), c.into(), d.into())
    }

    fn canonical(
        m: u64,
        mut a: BigInt,
        mut b: BigInt,
        mut c: BigInt,
        mut d: BigInt,
    ) -> Result<CubicNumber> {
        validate_m(m)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        let mut g = a.gcd(&b);
        if !g.is_one() {
            g = g.gcd(&c);
        }
        if !g.is_one() {
            g = g.gcd(&d);
        }
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
            d /= &g;
        }
        Ok(CubicNumber { m, a, b, c, d })
    }

    pub fn zero(m: u64) -> Result<CubicNumber> {
        Self::canonical(
            m,
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
        )
    }

    pub fn one(m: u64) -> Result<CubicNumber> {
        Self::from_integer(m, BigInt::one())
    }

    /// The generator t = ∛m.
    pub fn root(m: u64) -> Result<CubicNumber> {
        Self::canonical(
            m,
            BigInt::zero(),
            BigInt::one(),
            BigInt::zero(),
            BigInt::one(),
        )
    }

    /// t² = ∛m².
    pub fn root_squared(m: u64) -> Result<CubicNumber> {
        Self::canonical(
            m,
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
            BigInt::one(),
        )
    }

    pub fn from_integer(m: u64, n: impl Into<BigInt>) -> Result<CubicNumber> {
        Self::canonical(m, n.into(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn from_ratio(
        m: u64,
        numer: impl Into<BigInt>,
        denom: impl Into<BigInt>,
    ) -> Result<CubicNumber> {
        Self::canonical(
            m,
            numer.into(),
            BigInt::zero(),
            BigInt::zero(),
            denom.into(),
        )
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Canonical coefficients (a, b, c, d).
    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Exact zero test: by basis independence, zero iff (a, b, c) = (0, 0, 0).
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    fn check_same_field(&self, rhs: &CubicNumber) -> Result<()> {
        if self.m != rhs.m {
            return Err(Error::MixedField(self.m, rhs.m));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &CubicNumber) -> Result<CubicNumber> {
        self.check_same_field(rhs)?;
        Self::canonical(
            self.m,
            &self.a * &rhs.d + &rhs.a * &self.d,
            &self.b * &rhs.d + &rhs.b * &self.d,
            &self.c * &rhs.d + &rhs.c * &self.d,
            &self.d * &rhs.d,
        )
    }

    pub fn sub(&self, rhs: &CubicNumber) -> Result<CubicNumber> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> CubicNumber {
        CubicNumber {
            m: self.m,
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: self.d.clone(),
        }
    }

    /// Exact product; degree-3 and degree-4 terms reduce through t³ = m and
    /// t⁴ = m·t.
    pub fn mul(&self, rhs: &CubicNumber) -> Result<CubicNumber> {
        self.check_same_field(rhs)?;
        let m = BigInt::from(self.m);
        let (a1, b1, c1) = (&self.a, &self.b, &self.c);
        let (a2, b2, c2) = (&rhs.a, &rhs.b, &rhs.c);
        let a = a1 * a2 + &m * (b1 * c2 + c1 * b2);
        let b = a1 * b2 + b1 * a2 + &m * (c1 * c2);
        let c = a1 * c2 + b1 * b2 + c1 * a2;
        Self::canonical(self.m, a, b, c, &self.d * &rhs.d)
    }

    /// Exact inverse through the cubic norm
    /// N(a, b, c) = a³ + m·b³ + m²·c³ - 3m·a·b·c, which is nonzero for any
    /// nonzero element because x³ - m is irreducible.
    pub fn invert(&self) -> Result<CubicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = BigInt::from(self.m);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        // Adjugate coefficients: (a + b·t + c·t²)(A + B·t + C·t²) = N exactly.
        let adj_a = a * a - &m * (b * c);
        let adj_b = &m * (c * c) - a * b;
        let adj_c = b * b - a * c;
        let norm = a * a * a + &m * (b * b * b) + (&m * &m) * (c * c * c)
            - BigInt::from(3) * &m * a * b * c;
        assert!(!norm.is_zero(), "cubic norm vanished on a nonzero element");
        Self::canonical(
            self.m,
            &self.d * adj_a,
            &self.d * adj_b,
            &self.d * adj_c,
            norm,
        )
    }

    /// x - n for integer n. Only the constant coefficient moves, and the
    /// canonical gcd is preserved: a prime dividing b, c, d and a - n·d
    /// would divide a.
    pub fn sub_int(&self, n: &BigInt) -> CubicNumber {
        CubicNumber {
            m: self.m,
            a: &self.a - n * &self.d,
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add_int(&self, n: &BigInt) -> CubicNumber {
        self.sub_int(&-n)
    }

    /// x · n for integer n.
    pub fn mul_int(&self, n: &BigInt) -> CubicNumber {
        Self::canonical(
            self.m,
            &self.a * n,
            &self.b * n,
            &self.c * n,
            self.d.clone(),
        )
        .expect("scaling preserves field validity")
    }

    /// |x| decided by an exact sign test.
    pub fn abs(&self) -> CubicNumber {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Interval evaluation of the numerator a + b·t + c·t² over the dyadic
    /// enclosure [L, U]/2^B of t, as an integer interval over 2^(2B). The
    /// positive denominator d never affects sign or floor grid placement
    /// beyond scaling, and t > 0 keeps squaring monotone.
    fn numerator_bounds(&self, lo_t: &BigInt, hi_t: &BigInt, bits: u32) -> (BigInt, BigInt) {
        let scale = bits as usize;
        let base = &self.a << (2 * scale);
        let (b_lo, b_hi) = if self.b.is_negative() {
            ((&self.b * hi_t) << scale, (&self.b * lo_t) << scale)
        } else {
            ((&self.b * lo_t) << scale, (&self.b * hi_t) << scale)
        };
        let lo_sq = lo_t * lo_t;
        let hi_sq = hi_t * hi_t;
        let (c_lo, c_hi) = if self.c.is_negative() {
            (&self.c * hi_sq, &self.c * lo_sq)
        } else {
            (&self.c * lo_sq, &self.c * hi_sq)
        };
        (&base + b_lo + c_lo, base + b_hi + c_hi)
    }

    /// Starting precision for interval evaluation: enough that the interval
    /// width, which scales with |b| + |c|, has a chance to resolve the value.
    fn initial_bits(&self) -> u32 {
        let coeff_bits = self.b.bits().max(self.c.bits());
        let denom_bits = self.d.bits();
        (coeff_bits.saturating_sub(denom_bits) as u32)
            .saturating_add(16)
            .max(64)
    }

    /// Exact sign in {-1, 0, +1}.
    ///
    /// The zero test is exact by basis independence; a pure rational needs no
    /// enclosure at all. Otherwise the value is irrational, hence nonzero,
    /// and interval refinement at doubling precision must eventually exclude
    /// zero.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.a.is_negative() { -1 } else { 1 };
        }
        let mut bits = self.initial_bits();
        loop {
            let decided = with_cbrt(self.m, bits, |enclosure| {
                let (lo_t, hi_t, scale) = enclosure.view(bits + 4);
                let (lo, hi) = self.numerator_bounds(&lo_t, &hi_t, scale);
                if lo.is_positive() {
                    Some(1)
                } else if hi.is_negative() {
                    Some(-1)
                } else {
                    None
                }
            })
            .expect("m validated at construction");
            if let Some(sign) = decided {
                return sign;
            }
            bits = bits.saturating_mul(2);
            assert!(
                bits <= MAX_SIGN_BITS,
                "sign refinement exceeded precision cap"
            );
        }
    }

    /// The unique integer f with f <= x < f + 1.
    ///
    /// A candidate comes from interval evaluation narrowed until both
    /// endpoints share a floor; two exact sign tests then certify it, with a
    /// bounded scan absorbing any residual offset.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.div_floor(&self.d);
        }
        let mut bits = self.initial_bits();
        let candidate = loop {
            let shared = with_cbrt(self.m, bits, |enclosure| {
                let (lo_t, hi_t, scale) = enclosure.view(bits + 4);
                let (lo, hi) = self.numerator_bounds(&lo_t, &hi_t, scale);
                let den = &self.d << (2 * scale as usize);
                let f_lo = lo.div_floor(&den);
                if f_lo == hi.div_floor(&den) {
                    Some(f_lo)
                } else {
                    None
                }
            })
            .expect("m validated at construction");
            if let Some(f) = shared {
                break f;
            }
            bits = bits.saturating_mul(2);
            assert!(
                bits <= MAX_SIGN_BITS,
                "floor refinement exceeded precision cap"
            );
        };
        let mut f = candidate;
        while self.sub_int(&(&f + 1)).sign() >= 0 {
            f += 1;
        }
        while self.sub_int(&f).sign() < 0 {
            f -= 1;
        }
        f
    }

    #[cfg(test)]
    pub(crate) fn is_canonical(&self) -> bool {
        if !self.d.is_positive() {
            return false;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c).gcd(&self.d);
        g.is_one()
    }
}

impl std::fmt::Display for CubicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({} + {}·t + {}·t²)/{} [t³ = {}]",
            self.a, self.b, self.c, self.d, self.m
        )
    }
}

/// Check the pair of exact identities that transfer the approximation error
/// of p/q against ∛m to the error of m·q/p against ∛m²:
///
///   m·q/p - t² = -(q/p)·t²·(p/q - t)
///   (m·q/p - t²)·p² = -(p/q)·t²·(p/q - t)·q²
///
/// Both hold for every p, q >= 1; the check is a regression guard on the
/// field arithmetic.
pub fn residual_identity_check(m: u64, p: &BigInt, q: &BigInt) -> Result<bool> {
    assert!(p.is_positive() && q.is_positive(), "p, q must be >= 1");
    let t = CubicNumber::root(m)?;
    let t_sq = CubicNumber::root_squared(m)?;
    let p_over_q = CubicNumber::new(m, p.clone(), 0, 0, q.clone())?;
    let q_over_p = CubicNumber::new(m, q.clone(), 0, 0, p.clone())?;
    let m_elem = CubicNumber::from_integer(m, BigInt::from(m))?;

    let residual_xi = p_over_q.sub(&t)?;
    let lhs_first = m_elem.mul(&q_over_p)?.sub(&t_sq)?;
    let rhs_first = q_over_p.mul(&t_sq)?.mul(&residual_xi)?.neg();
    if lhs_first != rhs_first {
        return Ok(false);
    }

    let lhs_second = lhs_first.mul_int(&(p * p));
    let rhs_second = p_over_q
        .mul(&t_sq)?
        .mul(&residual_xi)?
        .mul_int(&(q * q))
        .neg();
    Ok(lhs_second == rhs_second)
}
