//! Connections between the expansions of ∛m and ∛m².
//!
//! Triplets (p_{n-1}/q_{n-1}, ξₙ, bₙ) and (P_{k-1}/Q_{k-1}, ηₖ, Bₖ) are
//! connected when the two convergents multiply exactly to m. Every detected
//! connection carries an integer certificate (r, s, t): r = p_{n-1}/Q_{k-1}
//! and s = P_{k-1}/q_{n-1} are exact divisions with r·s = m, and
//! t = r·ξₙ - s·ηₖ is an integer in [-r+1, s-1], recomputed from the raw
//! convergents and cross-checked as an exact field identity.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cf::{Expansion, Power};
use crate::cubic::CubicNumber;
use crate::error::{Error, Result};

/// A matched pair of triplet indices with its integer certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub n: usize,
    pub k: usize,
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

/// The certificate alone, as recomputed by [`Ladder::certify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

/// Both expansions plus the ordered list of certified connections.
#[derive(Debug, Clone)]
pub struct Ladder {
    xi: Expansion,
    eta: Expansion,
    connections: Vec<Connection>,
}

/// A triplet with a large partial quotient that is not an endpoint of any
/// in-range connection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageGap {
    pub side: Power,
    pub index: usize,
    pub quotient: BigInt,
}

/// Outcome of the large-quotient coverage scan: `violations` must be empty;
/// `unresolved` lists triplets whose guaranteed partner falls beyond the
/// computed horizon.
#[derive(Debug, Clone, Default)]
pub struct CoverageReport {
    pub violations: Vec<CoverageGap>,
    pub unresolved: Vec<CoverageGap>,
}

impl Ladder {
    /// Detect all connections (n, k) with 1 <= n <= N_ξ, 1 <= k <= N_η.
    ///
    /// Every reduced η-convergent is indexed by its (numerator, denominator)
    /// pair; each ξ-convergent then probes the table with m·q/p in lowest
    /// terms. Expected O(N) probes.
    pub fn find(xi: Expansion, eta: Expansion) -> Result<Ladder> {
        if xi.surd().m() != eta.surd().m() {
            return Err(Error::MixedField(xi.surd().m(), eta.surd().m()));
        }
        assert!(
            xi.surd().power() == Power::One && eta.surd().power() == Power::Two,
            "ladder expects the ∛m expansion first and the ∛m² expansion second"
        );
        let m = BigInt::from(xi.surd().m());
        let mut table: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        for k in 1..=eta.last_index() {
            let (p, q) = eta.convergent(k as isize - 1);
            table.insert((p.clone(), q.clone()), k);
        }
        let mut connections = Vec::new();
        for n in 1..=xi.last_index() {
            let (p, q) = xi.convergent(n as isize - 1);
            let numer = &m * q;
            let g = numer.gcd(p);
            let key = (&numer / &g, p / &g);
            if let Some(&k) = table.get(&key) {
                let certificate = certify_parts(&xi, &eta, n, k)?;
                connections.push(Connection {
                    n,
                    k,
                    r: certificate.r,
                    s: certificate.s,
                    t: certificate.t,
                });
            }
        }
        Ok(Ladder {
            xi,
            eta,
            connections,
        })
    }

    pub fn xi_expansion(&self) -> &Expansion {
        &self.xi
    }

    pub fn eta_expansion(&self) -> &Expansion {
        &self.eta
    }

    pub fn connections(&self) -> &[Connection] {
        &self.connections
    }

    /// Recompute the certificate of a connection from the raw convergents,
    /// independently of the detection path.
    pub fn certify(&self, connection: &Connection) -> Result<Certificate> {
        certify_parts(&self.xi, &self.eta, connection.n, connection.k)
    }

    /// -2r+2 <= r·bₙ - s·Bₖ <= 2s-2.
    pub fn quotient_bound_check(&self, connection: &Connection) -> bool {
        let value = &connection.r * self.xi.quotient(connection.n)
            - &connection.s * self.eta.quotient(connection.k);
        let low = BigInt::from(2) - (&connection.r << 1);
        let high = (&connection.s << 1) - BigInt::from(2);
        low <= value && value <= high
    }

    /// Connected indices have different parity: (-1)^{k-1} = (-1)^n.
    pub fn parity_check(connection: &Connection) -> bool {
        (connection.n + connection.k) % 2 == 1
    }

    /// For consecutive connections (n-1, k-1) and (n, k) the certificates
    /// swap: r(c1) = s(c2) and s(c1) = r(c2).
    pub fn exchange_check(c1: &Connection, c2: &Connection) -> Result<bool> {
        if c2.n != c1.n + 1 || c2.k != c1.k + 1 {
            return Err(Error::NotConsecutive);
        }
        Ok(c1.r == c2.s && c1.s == c2.r)
    }

    /// For three consecutive connections the middle one satisfies
    /// r·bₙ - s·Bₖ = 0 exactly.
    pub fn middle_zero_check(
        &self,
        c1: &Connection,
        c2: &Connection,
        c3: &Connection,
    ) -> Result<bool> {
        let first_step = c2.n == c1.n + 1 && c2.k == c1.k + 1;
        let second_step = c3.n == c2.n + 1 && c3.k == c2.k + 1;
        if !first_step || !second_step {
            return Err(Error::NotConsecutive);
        }
        let value = &c2.r * self.xi.quotient(c2.n) - &c2.s * self.eta.quotient(c2.k);
        Ok(value == BigInt::ZERO)
    }

    /// Sorting by n must sort by k as well: connections never cross.
    pub fn noncrossing_check(&self) -> bool {
        self.connections
            .windows(2)
            .all(|pair| pair[0].n < pair[1].n && pair[0].k < pair[1].k)
    }

    /// Every triplet with partial quotient >= 2m+1 is guaranteed a partner;
    /// scan both sides and report any with no in-range connection. Partners
    /// whose convergent denominator exceeds the horizon are unresolved, not
    /// violations.
    pub fn big_quotient_coverage(&self) -> CoverageReport {
        let threshold = BigInt::from(2 * self.xi.surd().m() + 1);
        let m = BigInt::from(self.xi.surd().m());
        let connected_n: HashSet<usize> = self.connections.iter().map(|c| c.n).collect();
        let connected_k: HashSet<usize> = self.connections.iter().map(|c| c.k).collect();
        let mut report = CoverageReport::default();
        let sides = [
            (Power::One, &self.xi, &self.eta, connected_n),
            (Power::Two, &self.eta, &self.xi, connected_k),
        ];
        for (side, own, partner, connected) in sides {
            let (_, partner_max_q) = partner.convergent(partner.last_index() as isize - 1);
            for index in 1..=own.last_index() {
                if own.quotient(index) < &threshold || connected.contains(&index) {
                    continue;
                }
                let (p, q) = own.convergent(index as isize - 1);
                let numer = &m * q;
                let g = numer.gcd(p);
                let partner_denominator = p / &g;
                let gap = CoverageGap {
                    side,
                    index,
                    quotient: own.quotient(index).clone(),
                };
                if &partner_denominator > partner_max_q {
                    report.unresolved.push(gap);
                } else {
                    report.violations.push(gap);
                }
            }
        }
        report
    }
}

fn exact_div(numer: &BigInt, denom: &BigInt, what: &str) -> Result<BigInt> {
    let (quotient, remainder) = numer.div_rem(denom);
    if !remainder.is_zero() {
        return Err(Error::CertificateFailure(format!(
            "{what}: {numer}/{denom} is not an integer"
        )));
    }
    Ok(quotient)
}

fn certify_parts(xi: &Expansion, eta: &Expansion, n: usize, k: usize) -> Result<Certificate> {
    let m = BigInt::from(xi.surd().m());
    let (p1, q1) = xi.convergent(n as isize - 1);
    let (cap_p1, cap_q1) = eta.convergent(k as isize - 1);

    let r = exact_div(p1, cap_q1, "r = p_{n-1}/Q_{k-1}")?;
    let s = exact_div(cap_p1, q1, "s = P_{k-1}/q_{n-1}")?;
    if &r * &s != m {
        return Err(Error::CertificateFailure(format!("r·s = {}·{} != m", r, s)));
    }

    let (p0, q0) = xi.convergent(n as isize - 2);
    let (cap_p0, cap_q0) = eta.convergent(k as isize - 2);
    let t_first = exact_div(&(cap_p0 - &r * q0), q1, "t = (P_{k-2} - r·q_{n-2})/q_{n-1}")?;
    let t_second = exact_div(
        &(&m * cap_q0 - &r * p0),
        p1,
        "t = (m·Q_{k-2} - r·p_{n-2})/p_{n-1}",
    )?;
    if t_first != t_second {
        return Err(Error::CertificateFailure(format!(
            "two forms of t disagree: {t_first} vs {t_second}"
        )));
    }

    // r·ξₙ - s·ηₖ = t as an exact field identity.
    let xi_n = &xi.triplet(n).xi;
    let eta_k = &eta.triplet(k).xi;
    let combination = xi_n
        .mul_int(&r)
        .sub(&eta_k.mul_int(&s))
        .expect("same field");
    let t_elem = CubicNumber::from_integer(xi.surd().m(), t_first.clone())
        .expect("m validated at surd construction");
    if combination != t_elem {
        return Err(Error::CertificateFailure(format!(
            "r·ξ_{n} - s·η_{k} is not the integer {t_first}"
        )));
    }

    if t_first < BigInt::one() - &r || t_first > &s - BigInt::one() {
        return Err(Error::CertificateFailure(format!(
            "t = {t_first} outside [-r+1, s-1] = [{}, {}]",
            BigInt::one() - &r,
            &s - BigInt::one()
        )));
    }

    Ok(Certificate { r, s, t: t_first })
}
