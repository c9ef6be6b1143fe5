//! CSV and JSON serialization. Big integers always travel as decimal
//! strings; JSON documents are one top-level object with `meta` and `rows`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use serde::Serialize;

use cfladder::stats::{KuzminComparison, QuotientHistogram};
use cfladder::verify::VerificationReport;
use cfladder::{Expansion, Ladder, Surd};

const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn writer(out: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        None => Box::new(io::stdout()),
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
    })
}

#[derive(Serialize)]
struct Document<M: Serialize, R: Serialize> {
    meta: M,
    rows: Vec<R>,
}

fn emit_json<M: Serialize, R: Serialize>(
    sink: &mut dyn Write,
    document: &Document<M, R>,
) -> io::Result<()> {
    serde_json::to_writer(&mut *sink, document)?;
    writeln!(sink)
}

#[derive(Serialize)]
struct TripletRow {
    n: usize,
    b: String,
    p_prev: String,
    q_prev: String,
}

fn triplet_rows(expansion: &Expansion) -> Vec<TripletRow> {
    expansion
        .triplets()
        .iter()
        .map(|t| TripletRow {
            n: t.n,
            b: t.b.to_string(),
            p_prev: t.p_prev.to_string(),
            q_prev: t.q_prev.to_string(),
        })
        .collect()
}

pub fn expand_csv(sink: &mut dyn Write, expansion: &Expansion) -> io::Result<()> {
    writeln!(sink, "n,b,p_prev,q_prev")?;
    for row in triplet_rows(expansion) {
        writeln!(sink, "{},{},{},{}", row.n, row.b, row.p_prev, row.q_prev)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ExpandMeta {
    m: u64,
    power: u8,
    length: usize,
    version: &'static str,
}

pub fn expand_json(sink: &mut dyn Write, expansion: &Expansion) -> io::Result<()> {
    let meta = ExpandMeta {
        m: expansion.surd().m(),
        power: expansion.surd().power().exponent(),
        length: expansion.last_index(),
        version: VERSION,
    };
    emit_json(
        sink,
        &Document {
            meta,
            rows: triplet_rows(expansion),
        },
    )
}

#[derive(Serialize)]
struct ConnectionRow {
    n: usize,
    k: usize,
    r: String,
    s: String,
    t: String,
    b_n: String,
    #[serde(rename = "B_k")]
    cap_b_k: String,
    r_bn_minus_s_bk: String,
}

fn connection_rows(ladder: &Ladder) -> Vec<ConnectionRow> {
    ladder
        .connections()
        .iter()
        .map(|c| {
            let b_n = ladder.xi_expansion().quotient(c.n);
            let cap_b_k = ladder.eta_expansion().quotient(c.k);
            let bound_value = &c.r * b_n - &c.s * cap_b_k;
            ConnectionRow {
                n: c.n,
                k: c.k,
                r: c.r.to_string(),
                s: c.s.to_string(),
                t: c.t.to_string(),
                b_n: b_n.to_string(),
                cap_b_k: cap_b_k.to_string(),
                r_bn_minus_s_bk: bound_value.to_string(),
            }
        })
        .collect()
}

pub fn ladder_csv(sink: &mut dyn Write, ladder: &Ladder) -> io::Result<()> {
    writeln!(sink, "n,k,r,s,t,b_n,B_k,r_bn_minus_s_Bk")?;
    for row in connection_rows(ladder) {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{}",
            row.n, row.k, row.r, row.s, row.t, row.b_n, row.cap_b_k, row.r_bn_minus_s_bk
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct LadderMeta {
    m: u64,
    length: usize,
    connections: usize,
    version: &'static str,
}

pub fn ladder_json(sink: &mut dyn Write, ladder: &Ladder) -> io::Result<()> {
    let meta = LadderMeta {
        m: ladder.xi_expansion().surd().m(),
        length: ladder.xi_expansion().last_index(),
        connections: ladder.connections().len(),
        version: VERSION,
    };
    emit_json(
        sink,
        &Document {
            meta,
            rows: connection_rows(ladder),
        },
    )
}

#[derive(Serialize)]
struct CheckRow {
    status: &'static str,
    check: String,
    cases: usize,
    detail: String,
}

fn check_rows(report: &VerificationReport) -> Vec<CheckRow> {
    report
        .checks
        .iter()
        .map(|c| CheckRow {
            status: if c.passed { "PASS" } else { "FAIL" },
            check: c.name.clone(),
            cases: c.cases,
            detail: c.detail.clone(),
        })
        .collect()
}

pub fn verify_csv(sink: &mut dyn Write, report: &VerificationReport) -> io::Result<()> {
    writeln!(sink, "status,check,cases,detail")?;
    for row in check_rows(report) {
        writeln!(
            sink,
            "{},{},{},{}",
            row.status, row.check, row.cases, row.detail
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyMeta {
    m: u64,
    length: usize,
    failures: usize,
    version: &'static str,
}

pub fn verify_json(sink: &mut dyn Write, report: &VerificationReport) -> io::Result<()> {
    let meta = VerifyMeta {
        m: report.m,
        length: report.length,
        failures: report.failures().count(),
        version: VERSION,
    };
    emit_json(
        sink,
        &Document {
            meta,
            rows: check_rows(report),
        },
    )
}

#[derive(Serialize)]
struct StatsRow {
    k: String,
    count: u64,
    frequency: f64,
    expected: f64,
    deviation: f64,
}

fn stats_rows(comparison: &KuzminComparison) -> Vec<StatsRow> {
    let mut rows: Vec<StatsRow> = comparison
        .rows
        .iter()
        .map(|r| StatsRow {
            k: r.k.to_string(),
            count: r.count,
            frequency: r.frequency,
            expected: r.expected,
            deviation: r.deviation,
        })
        .collect();
    rows.push(StatsRow {
        k: "tail".into(),
        count: comparison.tail_count,
        frequency: comparison.tail_frequency,
        expected: comparison.tail_expected,
        deviation: comparison.tail_frequency - comparison.tail_expected,
    });
    rows
}

pub fn stats_csv(sink: &mut dyn Write, comparison: &KuzminComparison) -> io::Result<()> {
    writeln!(sink, "k,count,frequency,expected,deviation")?;
    for row in stats_rows(comparison) {
        writeln!(
            sink,
            "{},{},{:.6},{:.6},{:.6}",
            row.k, row.count, row.frequency, row.expected, row.deviation
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct StatsMeta {
    m: u64,
    power: u8,
    length: usize,
    cutoff: u64,
    total: u64,
    max_deviation: f64,
    total_variation: f64,
    version: &'static str,
}

pub fn stats_json(
    sink: &mut dyn Write,
    surd: Surd,
    length: usize,
    histogram: &QuotientHistogram,
    comparison: &KuzminComparison,
) -> io::Result<()> {
    let meta = StatsMeta {
        m: surd.m(),
        power: surd.power().exponent(),
        length,
        cutoff: histogram.cutoff(),
        total: histogram.total(),
        max_deviation: comparison.max_deviation,
        total_variation: comparison.total_variation,
        version: VERSION,
    };
    emit_json(
        sink,
        &Document {
            meta,
            rows: stats_rows(comparison),
        },
    )
}

/// Figures 1 and 2: both quotient sequences as rungs plus the matched index
/// pairs.
pub fn figure_ladder_csv(sink: &mut dyn Write, ladder: &Ladder) -> io::Result<()> {
    writeln!(sink, "record,side,index,quotient,n,k")?;
    let sides = [
        ("cbrt_m", ladder.xi_expansion()),
        ("cbrt_m2", ladder.eta_expansion()),
    ];
    for (label, expansion) in sides {
        for index in 1..=expansion.last_index() {
            writeln!(sink, "rung,{label},{index},{},,", expansion.quotient(index))?;
        }
    }
    for connection in ladder.connections() {
        writeln!(sink, "connection,,,,{},{}", connection.n, connection.k)?;
    }
    Ok(())
}

/// Figure 3: the index distance n-k per connection, in ladder order.
pub fn figure_distance_csv(sink: &mut dyn Write, ladder: &Ladder) -> io::Result<()> {
    writeln!(sink, "ordinal,n,k,n_minus_k")?;
    for (ordinal, connection) in ladder.connections().iter().enumerate() {
        let distance = connection.n as i64 - connection.k as i64;
        writeln!(
            sink,
            "{},{},{},{}",
            ordinal + 1,
            connection.n,
            connection.k,
            distance
        )?;
    }
    Ok(())
}
