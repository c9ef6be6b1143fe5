//! Empirical distribution of partial quotients against the Gauss–Kuzmin law
//! P(bₙ = k) = log₂((k+1)²/(k·(k+2))).
//!
//! b₀ is excluded from all statistics: it is the integer part of the surd,
//! not an output of the Gauss map.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Occurrence counts of partial quotients up to a cutoff, with a tail bucket
/// for everything above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientHistogram {
    counts: BTreeMap<u64, u64>,
    total: u64,
    tail: u64,
    cutoff: u64,
}

impl QuotientHistogram {
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn tail(&self) -> u64 {
        self.tail
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn count(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// Merge two histograms with the same cutoff. Associative and
    /// commutative, so partial histograms can be accumulated in parallel.
    pub fn merge(&self, other: &QuotientHistogram) -> QuotientHistogram {
        assert_eq!(self.cutoff, other.cutoff, "cutoffs must match to merge");
        let mut counts = self.counts.clone();
        for (&k, &v) in &other.counts {
            *counts.entry(k).or_insert(0) += v;
        }
        QuotientHistogram {
            counts,
            total: self.total + other.total,
            tail: self.tail + other.tail,
            cutoff: self.cutoff,
        }
    }
}

/// Count partial quotients from a stream. Values above `cutoff` land in the
/// tail bucket. The caller must not include b₀.
pub fn histogram<I>(stream: I, cutoff: u64) -> QuotientHistogram
where
    I: IntoIterator<Item = BigInt>,
{
    let cutoff_big = BigInt::from(cutoff);
    let mut counts = BTreeMap::new();
    let mut total = 0u64;
    let mut tail = 0u64;
    for b in stream {
        assert!(b >= BigInt::one(), "partial quotients are >= 1");
        total += 1;
        if b > cutoff_big {
            tail += 1;
        } else {
            let k = b.to_u64().expect("quotient below cutoff fits u64");
            *counts.entry(k).or_insert(0) += 1;
        }
    }
    QuotientHistogram {
        counts,
        total,
        tail,
        cutoff,
    }
}

/// The Gauss–Kuzmin probability log₂((k+1)²/(k·(k+2))) for k >= 1.
///
/// The logarithm argument is an exact rational; its numerator and
/// denominator stay well inside f64's exact-integer range for any practical
/// k, so the f64 evaluation is correct to rounding.
pub fn kuzmin_expected(k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::DomainError(format!(
            "Kuzmin law needs k >= 1, got {k}"
        )));
    }
    let k = k as f64;
    Ok((((k + 1.0) * (k + 1.0)) / (k * (k + 2.0))).log2())
}

/// Per-quotient comparison of empirical frequency against the Kuzmin law.
#[derive(Debug, Clone, PartialEq)]
pub struct KuzminRow {
    pub k: u64,
    pub count: u64,
    pub frequency: f64,
    pub expected: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KuzminComparison {
    pub rows: Vec<KuzminRow>,
    pub tail_count: u64,
    pub tail_frequency: f64,
    pub tail_expected: f64,
    pub max_deviation: f64,
    pub total_variation: f64,
}

/// Deviation of a histogram from the Kuzmin law: per-k rows over
/// 1..=cutoff, the maximum absolute deviation, and the total-variation
/// distance over the partition {1, ..., cutoff, tail}.
pub fn kuzmin_distance(histogram: &QuotientHistogram) -> Result<KuzminComparison> {
    if histogram.total() == 0 {
        return Err(Error::EmptyHistogram);
    }
    let total = histogram.total() as f64;
    let mut rows = Vec::with_capacity(histogram.cutoff() as usize);
    let mut expected_mass = 0.0;
    let mut max_deviation: f64 = 0.0;
    let mut l1 = 0.0;
    for k in 1..=histogram.cutoff() {
        let count = histogram.count(k);
        let frequency = count as f64 / total;
        let expected = kuzmin_expected(k)?;
        let deviation = frequency - expected;
        expected_mass += expected;
        max_deviation = max_deviation.max(deviation.abs());
        l1 += deviation.abs();
        rows.push(KuzminRow {
            k,
            count,
            frequency,
            expected,
            deviation,
        });
    }
    let tail_frequency = histogram.tail() as f64 / total;
    let tail_expected = (1.0 - expected_mass).max(0.0);
    l1 += (tail_frequency - tail_expected).abs();
    Ok(KuzminComparison {
        rows,
        tail_count: histogram.tail(),
        tail_frequency,
        tail_expected,
        max_deviation,
        total_variation: l1 / 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn histogram_counts_and_tail() {
        let h = histogram(stream(&[3, 1, 5, 1, 1, 4]), 5);
        assert_eq!(h.count(1), 3);
        assert_eq!(h.count(3), 1);
        assert_eq!(h.count(4), 1);
        assert_eq!(h.count(5), 1);
        assert_eq!(h.tail(), 0);
        assert_eq!(h.total(), 6);
    }

    #[test]
    fn histogram_empty() {
        let h = histogram(stream(&[]), 10);
        assert_eq!(h.total(), 0);
        assert_eq!(h.tail(), 0);
        assert!(h.counts().is_empty());
        assert_eq!(kuzmin_distance(&h).unwrap_err(), Error::EmptyHistogram);
    }

    #[test]
    fn histogram_of_first_cbrt2_quotients() {
        // b₁..b₁₂ of ∛2.
        let h = histogram(stream(&[3, 1, 5, 1, 1, 4, 1, 1, 8, 1, 14, 1]), 100);
        assert_eq!(h.count(1), 7);
        assert_eq!(h.count(3), 1);
        assert_eq!(h.count(4), 1);
        assert_eq!(h.count(5), 1);
        assert_eq!(h.count(8), 1);
        assert_eq!(h.count(14), 1);
        assert_eq!(h.total(), 12);
    }

    #[test]
    fn tail_bucket_counts_large_quotients() {
        let h = histogram(stream(&[1, 101, 7, 500]), 100);
        assert_eq!(h.tail(), 2);
        assert_eq!(h.total(), 4);
    }

    #[test]
    fn expected_values() {
        assert!((kuzmin_expected(1).unwrap() - 0.415_037_499).abs() < 1e-6);
        assert!((kuzmin_expected(2).unwrap() - 0.169_925_001).abs() < 1e-6);
        assert_eq!(
            kuzmin_expected(0).unwrap_err(),
            Error::DomainError("Kuzmin law needs k >= 1, got 0".into())
        );
    }

    #[test]
    fn expected_is_positive_and_decreasing() {
        let mut previous = f64::INFINITY;
        for k in 1..=500 {
            let value = kuzmin_expected(k).unwrap();
            assert!(value > 0.0);
            assert!(value < previous);
            previous = value;
        }
    }

    #[test]
    fn partial_sums_telescope_toward_one() {
        let mut sum = 0.0;
        let mut previous = 0.0;
        for k in 1..=1_000_000u64 {
            sum += kuzmin_expected(k).unwrap();
            if k % 100_000 == 0 {
                assert!(sum > previous && sum < 1.0);
                previous = sum;
            }
        }
        assert!(sum > 0.9999);
    }

    #[test]
    fn perfect_law_has_zero_deviation() {
        // Build counts proportional to the law itself with a large total.
        let total = 10_000_000u64;
        let mut counts = BTreeMap::new();
        let mut used = 0u64;
        for k in 1..=50 {
            let c = (kuzmin_expected(k).unwrap() * total as f64).round() as u64;
            counts.insert(k, c);
            used += c;
        }
        let h = QuotientHistogram {
            counts,
            total,
            tail: total - used,
            cutoff: 50,
        };
        let cmp = kuzmin_distance(&h).unwrap();
        assert!(
            cmp.max_deviation < 1e-7,
            "max deviation {}",
            cmp.max_deviation
        );
        assert!(cmp.total_variation < 1e-6);
    }

    #[test]
    fn single_element_histogram() {
        let h = histogram(stream(&[1]), 10);
        let cmp = kuzmin_distance(&h).unwrap();
        let expected = kuzmin_expected(1).unwrap();
        assert!((cmp.rows[0].deviation - (1.0 - expected)).abs() < 1e-12);
    }

    #[test]
    fn merge_is_commutative() {
        let a = histogram(stream(&[1, 2, 3]), 10);
        let b = histogram(stream(&[1, 200]), 10);
        let ab = a.merge(&b);
        let ba = b.merge(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.total(), 5);
        assert_eq!(ab.tail(), 1);
    }
}
