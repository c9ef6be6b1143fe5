//! Continued-fraction expansion of ∛m and ∛m² with exact complete quotients.
//!
//! The expansion runs the classical recurrence ξₙ = 1/(ξₙ₋₁ - bₙ₋₁),
//! bₙ = ⌊ξₙ⌋ entirely in Q(∛m), so every emitted partial quotient is exact.
//! Since the surd is irrational the process never terminates and every
//! complete quotient past the first exceeds 1.
//!
//! Index convention: triplet n bundles the convergent p_{n-1}/q_{n-1}, the
//! complete quotient ξₙ and the partial quotient bₙ. Triplet 0 carries the
//! formal convergent 1/0.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cubic::CubicNumber;
use crate::error::{Error, Result};

/// Which cube root the expansion targets: ∛m or ∛m².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Power {
    One,
    Two,
}

impl Power {
    pub fn exponent(self) -> u8 {
        match self {
            Power::One => 1,
            Power::Two => 2,
        }
    }
}

impl TryFrom<u8> for Power {
    type Error = Error;

    fn try_from(value: u8) -> Result<Power> {
        match value {
            1 => Ok(Power::One),
            2 => Ok(Power::Two),
            other => Err(Error::DomainError(format!(
                "power must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// The surd ∛(m^e) for a noncube m >= 2 and e in {1, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    m: u64,
    power: Power,
}

impl Surd {
    pub fn new(m: u64, power: Power) -> Result<Surd> {
        crate::interval::validate_m(m)?;
        Ok(Surd { m, power })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn power(&self) -> Power {
        self.power
    }

    /// The surd as an exact element of Q(∛m).
    pub fn value(&self) -> CubicNumber {
        let made = match self.power {
            Power::One => CubicNumber::root(self.m),
            Power::Two => CubicNumber::root_squared(self.m),
        };
        made.expect("m validated at surd construction")
    }

    /// δ = (p/q - ξ)·q² as an exact field element.
    pub fn delta(&self, p: &BigInt, q: &BigInt) -> CubicNumber {
        assert!(q.is_positive(), "q must be >= 1");
        assert!(p.gcd(q).is_one(), "p/q must be in lowest terms");
        let q_sq = q * q;
        let made = match self.power {
            Power::One => CubicNumber::new(self.m, p * q, -q_sq, BigInt::zero(), BigInt::one()),
            Power::Two => CubicNumber::new(self.m, p * q, BigInt::zero(), -q_sq, BigInt::one()),
        };
        made.expect("m validated at surd construction")
    }

    /// |δ| < 1/2, the sufficient condition for p/q to be a convergent.
    pub fn is_convergent_sufficient(&self, p: &BigInt, q: &BigInt) -> bool {
        let twice_abs = self.delta(p, q).abs().mul_int(&BigInt::from(2));
        twice_abs.sub_int(&BigInt::one()).sign() < 0
    }

    /// For a convergent p/q with next partial quotient b:
    /// 1/(b+2) < |δ| < 1/b, both strict, decided exactly.
    pub fn delta_bounds_check(&self, p: &BigInt, q: &BigInt, next_quotient: &BigInt) -> bool {
        let abs = self.delta(p, q).abs();
        let lower = abs
            .mul_int(&(next_quotient + 2))
            .sub_int(&BigInt::one())
            .sign()
            > 0;
        let upper = abs.mul_int(next_quotient).sub_int(&BigInt::one()).sign() < 0;
        lower && upper
    }
}

/// One rung of one side of the ladder: the convergent p_{n-1}/q_{n-1}, the
/// complete quotient ξₙ and the partial quotient bₙ = ⌊ξₙ⌋.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triplet {
    pub n: usize,
    pub p_prev: BigInt,
    pub q_prev: BigInt,
    pub xi: CubicNumber,
    pub b: BigInt,
}

/// The expansion of a surd up to triplet index N, with the convergents
/// p_{-1}..p_N retained so generation can continue.
#[derive(Debug, Clone)]
pub struct Expansion {
    surd: Surd,
    triplets: Vec<Triplet>,
    // Convergent index i is stored at slot i + 1; slot 0 holds the formal
    // p_{-1}/q_{-1} = 1/0.
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

impl Expansion {
    /// Expand the surd to triplet index `n` (inclusive), so n + 1 triplets.
    pub fn compute(surd: Surd, n: usize) -> Expansion {
        let mut expansion = Expansion {
            surd,
            triplets: Vec::with_capacity(n + 1),
            p: Vec::with_capacity(n + 2),
            q: Vec::with_capacity(n + 2),
        };
        expansion.p.push(BigInt::one());
        expansion.q.push(BigInt::zero());
        expansion.extend(n);
        expansion
    }

    /// Continue the expansion up to triplet index `n` if it is longer than
    /// the current one.
    pub fn extend(&mut self, n: usize) {
        if n < self.triplets.len() {
            return;
        }
        let mut xi = match self.triplets.last() {
            Some(last) => advance(&last.xi, &last.b),
            None => self.surd.value(),
        };
        for index in self.triplets.len()..=n {
            let b = xi.floor();
            debug_assert!(
                index == 0 || b >= BigInt::one(),
                "partial quotient below 1 at n >= 1"
            );
            let p_prev = self.p.last().expect("formal convergent present").clone();
            let q_prev = self.q.last().expect("formal convergent present").clone();
            let p_prev2 = if self.p.len() >= 2 {
                self.p[self.p.len() - 2].clone()
            } else {
                BigInt::zero() // p_{-2} = 0
            };
            let q_prev2 = if self.q.len() >= 2 {
                self.q[self.q.len() - 2].clone()
            } else {
                BigInt::one() // q_{-2} = 1
            };
            self.p.push(&b * &p_prev + p_prev2);
            self.q.push(&b * &q_prev + q_prev2);
            let next_xi = if index < n {
                Some(advance(&xi, &b))
            } else {
                None
            };
            self.triplets.push(Triplet {
                n: index,
                p_prev,
                q_prev,
                xi,
                b,
            });
            if let Some(next) = next_xi {
                xi = next;
            } else {
                break;
            }
        }
    }

    pub fn surd(&self) -> &Surd {
        &self.surd
    }

    /// The largest triplet index N.
    pub fn last_index(&self) -> usize {
        self.triplets.len() - 1
    }

    pub fn triplets(&self) -> &[Triplet] {
        &self.triplets
    }

    pub fn triplet(&self, n: usize) -> &Triplet {
        &self.triplets[n]
    }

    /// Partial quotient bₙ.
    pub fn quotient(&self, n: usize) -> &BigInt {
        &self.triplets[n].b
    }

    /// Convergent (pᵢ, qᵢ) for i in -1..=N.
    pub fn convergent(&self, i: isize) -> (&BigInt, &BigInt) {
        assert!(i >= -1, "convergent index below -1");
        let slot = (i + 1) as usize;
        (&self.p[slot], &self.q[slot])
    }

    /// pᵢ - qᵢ·ξ as an exact field element.
    fn residual(&self, i: isize) -> CubicNumber {
        let (p, q) = self.convergent(i);
        let made = match self.surd.power {
            Power::One => {
                CubicNumber::new(self.surd.m, p.clone(), -q, BigInt::zero(), BigInt::one())
            }
            Power::Two => {
                CubicNumber::new(self.surd.m, p.clone(), BigInt::zero(), -q, BigInt::one())
            }
        };
        made.expect("m validated at surd construction")
    }

    /// ξₙ = -(p_{n-2} - q_{n-2}·ξ)/(p_{n-1} - q_{n-1}·ξ), exact in Q(∛m).
    /// Defined for 2 <= n <= N.
    pub fn complete_quotient_identity(&self, n: usize) -> Result<bool> {
        let last = self.last_index();
        if n < 2 || n > last {
            return Err(Error::IndexOutOfRange {
                index: n,
                min: 2,
                max: last,
            });
        }
        let numer = self.residual(n as isize - 2).neg();
        let denom = self.residual(n as isize - 1);
        let quotient = numer
            .mul(
                &denom
                    .invert()
                    .expect("residual of an irrational is nonzero"),
            )
            .expect("same field");
        Ok(self.triplets[n].xi == quotient)
    }

    /// pₙ·q_{n-1} - p_{n-1}·qₙ = (-1)^{n-1}, for 0 <= n <= N.
    pub fn determinant_identity(&self, n: usize) -> Result<bool> {
        let last = self.last_index();
        if n > last {
            return Err(Error::IndexOutOfRange {
                index: n,
                min: 0,
                max: last,
            });
        }
        let (p_n, q_n) = self.convergent(n as isize);
        let (p_prev, q_prev) = self.convergent(n as isize - 1);
        let det = p_n * q_prev - p_prev * q_n;
        let expected = if n.is_multiple_of(2) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        Ok(det == expected)
    }

    /// Even convergents below the surd, odd convergents above, over the
    /// stored convergent indices 0..=N-1. Exact sign tests.
    pub fn sandwich_check(&self) -> bool {
        (0..self.last_index()).all(|i| {
            let sign = self.residual(i as isize).sign();
            if i % 2 == 0 {
                sign < 0
            } else {
                sign > 0
            }
        })
    }

    /// The relative errors |1 - ξ/(pₙ/qₙ)| = |pₙ - qₙ·ξ|/pₙ strictly
    /// decrease over the stored convergents. Exact comparison by
    /// cross-multiplication.
    pub fn relative_error_decreasing(&self) -> bool {
        let n = self.last_index();
        (0..n.saturating_sub(1)).all(|i| {
            let current = self.residual(i as isize).abs();
            let next = self.residual(i as isize + 1).abs();
            let (p_i, _) = self.convergent(i as isize);
            let (p_next, _) = self.convergent(i as isize + 1);
            current
                .mul_int(p_next)
                .sub(&next.mul_int(p_i))
                .expect("same field")
                .sign()
                > 0
        })
    }

    /// Equivalent orderings of the convergent sequence: pₙ strictly grows,
    /// qₙ strictly grows from n = 1, and the absolute errors |pₙ/qₙ - ξ|
    /// strictly shrink.
    pub fn monotone_growth_check(&self) -> bool {
        let n = self.last_index();
        let p_grows = (0..n.saturating_sub(1)).all(|i| {
            let (p_i, _) = self.convergent(i as isize);
            let (p_next, _) = self.convergent(i as isize + 1);
            p_i < p_next
        });
        let q_grows = (1..n.saturating_sub(1)).all(|i| {
            let (_, q_i) = self.convergent(i as isize);
            let (_, q_next) = self.convergent(i as isize + 1);
            q_i < q_next
        });
        let error_shrinks = (0..n.saturating_sub(1)).all(|i| {
            let current = self.residual(i as isize).abs();
            let next = self.residual(i as isize + 1).abs();
            let (_, q_i) = self.convergent(i as isize);
            let (_, q_next) = self.convergent(i as isize + 1);
            current
                .mul_int(q_next)
                .sub(&next.mul_int(q_i))
                .expect("same field")
                .sign()
                > 0
        });
        p_grows && q_grows && error_shrinks
    }

    /// 1/(b+2) < |δ| < 1/b for every stored convergent, where b is the next
    /// partial quotient.
    pub fn delta_bounds_all(&self) -> bool {
        (0..self.last_index()).all(|i| {
            let (p, q) = self.convergent(i as isize);
            let next_b = self.quotient(i + 1);
            self.surd.delta_bounds_check(p, q, next_b)
        })
    }
}

/// ξ_{next} = 1/(ξ - b). The difference is never zero for an irrational
/// surd, so a division failure here is an internal error.
fn advance(xi: &CubicNumber, b: &BigInt) -> CubicNumber {
    xi.sub_int(b)
        .invert()
        .expect("complete quotient collided with its floor on an irrational surd")
}

/// Streaming partial quotients b₀, b₁, ... of a surd, holding only the
/// current complete quotient. Backs statistics over long expansions where
/// the convergents are not needed.
pub struct QuotientStream {
    xi: CubicNumber,
}

impl QuotientStream {
    pub fn new(surd: Surd) -> QuotientStream {
        QuotientStream { xi: surd.value() }
    }
}

impl Iterator for QuotientStream {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let b = self.xi.floor();
        self.xi = advance(&self.xi, &b);
        Some(b)
    }
}
