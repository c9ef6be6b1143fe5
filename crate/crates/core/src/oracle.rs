//! Independent cross-check path for partial quotients.
//!
//! Runs the continued-fraction recurrence over certified rational enclosures
//! of the surd instead of exact field algebra. A quotient is emitted only
//! when both interval endpoints share a floor; any ambiguity restarts the
//! whole run from a sharper root enclosure.

use num_bigint::BigInt;

use crate::cf::Power;
use crate::error::Result;
use crate::interval::{cbrt_bounds, RationalInterval};

/// Enclosure of the current complete quotient plus bookkeeping.
#[derive(Debug, Clone)]
pub struct IntervalState {
    pub enclosure: RationalInterval,
    pub bits: u32,
    pub steps_certified: usize,
}

/// First n + 1 partial quotients b₀..bₙ of ∛(m^e), every one certified.
pub fn expand(m: u64, power: Power, n: usize) -> Result<Vec<BigInt>> {
    crate::interval::validate_m(m)?;
    let radicand = match power {
        Power::One => m,
        Power::Two => m.checked_mul(m).expect("m² must fit in u64"),
    };
    let mut bits: u32 = 64;
    loop {
        if let Some(quotients) = attempt(radicand, n, bits)? {
            return Ok(quotients);
        }
        bits = bits.checked_mul(2).expect("oracle precision overflow");
    }
}

fn attempt(radicand: u64, n: usize, bits: u32) -> Result<Option<Vec<BigInt>>> {
    let mut state = IntervalState {
        enclosure: cbrt_bounds(radicand, bits)?,
        bits,
        steps_certified: 0,
    };
    let mut quotients = Vec::with_capacity(n + 1);
    for step in 0..=n {
        let b = match state.enclosure.unambiguous_floor() {
            Some(b) => b,
            None => return Ok(None),
        };
        quotients.push(b.clone());
        state.steps_certified += 1;
        if step < n {
            let shifted = state.enclosure.sub_integer(&b);
            state.enclosure = match shifted.reciprocal() {
                Some(next) => next,
                None => return Ok(None),
            };
        }
    }
    Ok(Some(quotients))
}
