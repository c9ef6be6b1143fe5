//! Full verification run over one m: every identity on both expansions, the
//! certified ladder checks, and quotient-for-quotient agreement with the
//! interval oracle.

use num_bigint::BigInt;
use num_traits::One;

use crate::cf::{Expansion, Power, Surd};
use crate::error::Result;
use crate::ladder::Ladder;
use crate::{cubic, oracle};

/// One named check with its case count; `detail` explains the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl CheckResult {
    fn passing(name: impl Into<String>, cases: usize) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: true,
            cases,
            detail: String::new(),
        }
    }

    fn failing(name: impl Into<String>, cases: usize, detail: String) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: false,
            cases,
            detail,
        }
    }

    fn from_first_failure(
        name: impl Into<String>,
        cases: usize,
        failure: Option<String>,
    ) -> CheckResult {
        match failure {
            None => CheckResult::passing(name, cases),
            Some(detail) => CheckResult::failing(name, cases, detail),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub m: u64,
    pub length: usize,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn side_tag(power: Power) -> &'static str {
    match power {
        Power::One => "e1",
        Power::Two => "e2",
    }
}

fn expansion_checks(
    expansion: &Expansion,
    oracle_cap: usize,
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let tag = side_tag(expansion.surd().power());
    let n = expansion.last_index();

    let mut failure = None;
    for index in 1..=n {
        let t = expansion.triplet(index);
        if t.b < BigInt::one() {
            failure = Some(format!("b_{index} = {} < 1", t.b));
            break;
        }
        if t.xi.sub_int(&BigInt::one()).sign() <= 0 {
            failure = Some(format!("ξ_{index} <= 1"));
            break;
        }
    }
    out.push(CheckResult::from_first_failure(
        format!("quotients_positive_{tag}"),
        n,
        failure,
    ));

    let mut failure = None;
    for index in 2..=n {
        if !expansion.complete_quotient_identity(index)? {
            failure = Some(format!("fails at n = {index}"));
            break;
        }
    }
    out.push(CheckResult::from_first_failure(
        format!("complete_quotient_identity_{tag}"),
        n.saturating_sub(1),
        failure,
    ));

    let mut failure = None;
    for index in 0..=n {
        if !expansion.determinant_identity(index)? {
            failure = Some(format!("fails at n = {index}"));
            break;
        }
    }
    out.push(CheckResult::from_first_failure(
        format!("determinant_identity_{tag}"),
        n + 1,
        failure,
    ));

    let sandwich = expansion.sandwich_check();
    out.push(CheckResult {
        name: format!("sandwich_{tag}"),
        passed: sandwich,
        cases: n,
        detail: if sandwich {
            String::new()
        } else {
            "an even/odd convergent crossed the surd".into()
        },
    });

    let decreasing = expansion.relative_error_decreasing();
    out.push(CheckResult {
        name: format!("relative_error_decreasing_{tag}"),
        passed: decreasing,
        cases: n.saturating_sub(1),
        detail: if decreasing {
            String::new()
        } else {
            "relative error failed to decrease".into()
        },
    });

    let monotone = expansion.monotone_growth_check();
    out.push(CheckResult {
        name: format!("monotone_growth_{tag}"),
        passed: monotone,
        cases: n,
        detail: if monotone {
            String::new()
        } else {
            "convergent ordering equivalences violated".into()
        },
    });

    let delta = expansion.delta_bounds_all();
    out.push(CheckResult {
        name: format!("delta_bounds_{tag}"),
        passed: delta,
        cases: n,
        detail: if delta {
            String::new()
        } else {
            "1/(b+2) < |δ| < 1/b violated".into()
        },
    });

    let m = expansion.surd().m();
    let mut failure = None;
    for index in 1..=n {
        let (p, q) = expansion.convergent(index as isize - 1);
        if !cubic::residual_identity_check(m, p, q)? {
            failure = Some(format!("fails at convergent index {}", index - 1));
            break;
        }
    }
    out.push(CheckResult::from_first_failure(
        format!("residual_identities_{tag}"),
        n,
        failure,
    ));

    let cap = n.min(oracle_cap);
    let oracle_quotients = oracle::expand(m, expansion.surd().power(), cap)?;
    let mut failure = None;
    for (index, expected) in oracle_quotients.iter().enumerate() {
        if expansion.quotient(index) != expected {
            failure = Some(format!(
                "b_{index}: engine {} vs oracle {expected}",
                expansion.quotient(index)
            ));
            break;
        }
    }
    out.push(CheckResult::from_first_failure(
        format!("oracle_agreement_{tag}"),
        cap + 1,
        failure,
    ));

    Ok(())
}

fn ladder_checks(ladder: &Ladder, out: &mut Vec<CheckResult>) {
    let connections = ladder.connections();
    let total = connections.len();

    let mut failure = None;
    for connection in connections {
        match ladder.certify(connection) {
            Ok(certificate) => {
                if certificate.r != connection.r
                    || certificate.s != connection.s
                    || certificate.t != connection.t
                {
                    failure = Some(format!(
                        "certificate mismatch at (n, k) = ({}, {})",
                        connection.n, connection.k
                    ));
                    break;
                }
            }
            Err(e) => {
                failure = Some(format!(
                    "(n, k) = ({}, {}): {e}",
                    connection.n, connection.k
                ));
                break;
            }
        }
    }
    out.push(CheckResult::from_first_failure(
        "connection_certificates",
        total,
        failure,
    ));

    let mut failure = None;
    for connection in connections {
        if !Ladder::parity_check(connection) {
            failure = Some(format!(
                "(n, k) = ({}, {}) share parity",
                connection.n, connection.k
            ));
            break;
        }
    }
    out.push(CheckResult::from_first_failure("parity", total, failure));

    let mut failure = None;
    for connection in connections {
        if !ladder.quotient_bound_check(connection) {
            failure = Some(format!(
                "bound violated at (n, k) = ({}, {})",
                connection.n, connection.k
            ));
            break;
        }
    }
    out.push(CheckResult::from_first_failure(
        "quotient_bound",
        total,
        failure,
    ));

    let noncrossing = ladder.noncrossing_check();
    out.push(CheckResult {
        name: "noncrossing".into(),
        passed: noncrossing,
        cases: total.saturating_sub(1),
        detail: if noncrossing {
            String::new()
        } else {
            "connections cross".into()
        },
    });

    let mut pairs = 0;
    let mut failure = None;
    for window in connections.windows(2) {
        if window[1].n == window[0].n + 1 && window[1].k == window[0].k + 1 {
            pairs += 1;
            if !Ladder::exchange_check(&window[0], &window[1]).expect("consecutive by construction")
            {
                failure = Some(format!(
                    "r, s not exchanged between (n, k) = ({}, {}) and ({}, {})",
                    window[0].n, window[0].k, window[1].n, window[1].k
                ));
                break;
            }
        }
    }
    out.push(CheckResult::from_first_failure("exchange", pairs, failure));

    let mut triples = 0;
    let mut failure = None;
    for window in connections.windows(3) {
        let consecutive = window[1].n == window[0].n + 1
            && window[1].k == window[0].k + 1
            && window[2].n == window[1].n + 1
            && window[2].k == window[1].k + 1;
        if consecutive {
            triples += 1;
            if !ladder
                .middle_zero_check(&window[0], &window[1], &window[2])
                .expect("consecutive by construction")
            {
                failure = Some(format!(
                    "r·b - s·B != 0 at the middle connection (n, k) = ({}, {})",
                    window[1].n, window[1].k
                ));
                break;
            }
        }
    }
    out.push(CheckResult::from_first_failure(
        "middle_zero",
        triples,
        failure,
    ));

    let report = ladder.big_quotient_coverage();
    let passed = report.violations.is_empty();
    out.push(CheckResult {
        name: "big_quotient_coverage".into(),
        passed,
        cases: report.violations.len() + report.unresolved.len(),
        detail: if passed {
            String::new()
        } else {
            let gap = &report.violations[0];
            format!(
                "unconnected quotient {} at index {} (side e{})",
                gap.quotient,
                gap.index,
                gap.side.exponent()
            )
        },
    });
}

/// Expand both surds of m to triplet index `length`, run every identity and
/// ladder check, and compare against the oracle up to `oracle_cap`.
pub fn run(m: u64, length: usize, oracle_cap: usize) -> Result<VerificationReport> {
    let xi = Expansion::compute(Surd::new(m, Power::One)?, length);
    let eta = Expansion::compute(Surd::new(m, Power::Two)?, length);

    let mut checks = Vec::new();
    expansion_checks(&xi, oracle_cap, &mut checks)?;
    expansion_checks(&eta, oracle_cap, &mut checks)?;

    let ladder = Ladder::find(xi, eta)?;
    ladder_checks(&ladder, &mut checks);

    Ok(VerificationReport { m, length, checks })
}
