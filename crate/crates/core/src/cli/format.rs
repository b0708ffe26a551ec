//! Text and CSV rendering. All output uses LF line endings and
//! 15-significant-digit numbers, so equal inputs give equal bytes.

use std::fmt::Write as _;

use crate::analytic::PARSE_NOTES;
use crate::audit::{AuditRecord, AuditReport, MATCH_TOL};
use crate::channels::KrausChannel;
use crate::claims::{EsdRecord, OrderingClaim, OrderingRecord, ESD_FLOOR};

/// `%.15g`-style formatting: 15 significant digits, trailing zeros dropped,
/// exponent form outside `1e-5 ≤ |x| < 1e15`.
pub fn g15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(g15).unwrap_or_default()
}

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub label: Option<SweepLabel>,
    pub r: f64,
    pub numeric: f64,
    pub analytic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepLabel {
    pub channel: String,
    pub scenario: String,
    pub p1: f64,
    pub p2: f64,
    pub p: f64,
}

pub const SWEEP_HEADER: &str = "r,negativity_numeric,negativity_analytic,abs_gap";
pub const SWEEP_LONG_HEADER: &str =
    "channel,scenario,p1,p2,p,r,negativity_numeric,negativity_analytic,abs_gap";

pub fn sweep_csv(rows: &[SweepRow], long: bool) -> String {
    let mut out = String::new();
    out.push_str(if long {
        SWEEP_LONG_HEADER
    } else {
        SWEEP_HEADER
    });
    out.push('\n');
    for row in rows {
        if long {
            let l = row.label.as_ref().expect("long format rows carry labels");
            let _ = write!(
                out,
                "{},{},{},{},{},",
                l.channel,
                l.scenario,
                g15(l.p1),
                g15(l.p2),
                g15(l.p)
            );
        }
        let gap = row.analytic.map(|a| (a - row.numeric).abs());
        let _ = writeln!(
            out,
            "{},{},{},{}",
            g15(row.r),
            g15(row.numeric),
            opt(row.analytic),
            opt(gap)
        );
    }
    out
}

pub const AUDIT_HEADER: &str = "kind,topology,r,p1,p2,p,verdict,eig_gap,negativity_gap,\
trace_sum_analytic,negativity_numeric,negativity_analytic,analytic_negative_indices,\
designated_negative,numeric_eig_1,numeric_eig_2,numeric_eig_3,numeric_eig_4,numeric_eig_5,\
numeric_eig_6,analytic_eig_1,analytic_eig_2,analytic_eig_3,analytic_eig_4,analytic_eig_5,\
analytic_eig_6,note";

fn eig_cells(eigs: Option<&[f64]>) -> String {
    match eigs {
        Some(e) => e.iter().map(|&x| g15(x)).collect::<Vec<_>>().join(","),
        None => ",,,,,".into(),
    }
}

fn audit_row(rec: &AuditRecord) -> String {
    let sc = &rec.scenario;
    let numeric = rec.numeric.as_ref().ok();
    let analytic = rec.analytic.as_ref().ok();
    let note = match (&rec.numeric, &rec.analytic) {
        (Err(e), _) | (_, Err(e)) => e.replace(',', ";"),
        _ => String::new(),
    };
    let indices = analytic
        .map(|a| {
            a.negativity
                .negative_indices
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(";")
        })
        .unwrap_or_default();
    let designated = crate::analytic::formula_set(rec.kind, sc.topology()).designated_negative();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        rec.kind,
        sc.topology(),
        g15(rec.r),
        g15(sc.p1()),
        g15(sc.p2()),
        g15(sc.p()),
        rec.verdict,
        opt(rec.eig_gap()),
        opt(rec.negativity_gap()),
        opt(analytic.map(|a| a.trace_sum)),
        opt(numeric.map(|n| n.negativity)),
        opt(analytic.map(|a| a.negativity.value)),
        indices,
        designated,
        eig_cells(numeric.map(|n| n.eigenvalues.as_slice())),
        eig_cells(analytic.map(|a| a.eigenvalues.as_slice())),
        note
    )
}

pub fn audit_csv(report: &AuditReport) -> String {
    let mut out = String::with_capacity(256 * (report.records.len() + 1));
    out.push_str(AUDIT_HEADER);
    out.push('\n');
    for rec in &report.records {
        out.push_str(&audit_row(rec));
        out.push('\n');
    }
    out
}

/// Plain-text summary: header comments, one line per family, then findings
/// and claim checks.
pub fn audit_summary(
    report: &AuditReport,
    esd: &[EsdRecord],
    ordering: &[OrderingRecord],
) -> String {
    let mut out = String::new();
    let levels: Vec<String> = report.levels.iter().map(|&l| g15(l)).collect();
    let _ = writeln!(
        out,
        "# closed-form spectrum audit: r in [{}, {}], {} steps; p-levels {}",
        g15(report.grid.min),
        g15(report.grid.max),
        report.grid.steps,
        levels.join(",")
    );
    let _ = writeln!(
        out,
        "# MATCH when sorted eigenvalue gap <= {} and negativity gap <= {}",
        g15(MATCH_TOL),
        g15(MATCH_TOL)
    );
    for note in PARSE_NOTES {
        let _ = writeln!(out, "# parse: {note}");
    }
    for s in &report.summary {
        let _ = writeln!(
            out,
            "{} {} points={} match={} mismatch={} max_gap={}",
            s.kind,
            s.topology,
            s.points,
            s.matches,
            s.mismatches,
            g15(s.max_gap)
        );
    }
    for s in &report.summary {
        if s.max_trace_deviation > MATCH_TOL || s.designation_mismatches > 0 {
            let _ = writeln!(
                out,
                "finding {} {} max_trace_sum_deviation={} designation_mismatches={}",
                s.kind,
                s.topology,
                g15(s.max_trace_deviation),
                s.designation_mismatches
            );
        }
    }
    for e in esd {
        let status = if e.holds() { "AGREES" } else { "DISCREPANCY" };
        let _ = writeln!(
            out,
            "claim no-esd {} {} level={} status={} min_negativity={} at_r={} points_at_or_below_{}={}",
            e.kind,
            e.topology,
            g15(e.level),
            status,
            g15(e.min_negativity),
            g15(e.argmin_r),
            g15(ESD_FLOOR),
            e.dead_at.len()
        );
    }
    for o in ordering {
        let OrderingClaim::Strongest(claimed) = o.claim;
        let status = if o.holds() { "AGREES" } else { "DISCREPANCY" };
        let _ = writeln!(
            out,
            "claim strongest-{} {} level={} r={} status={} observed_strongest={} ad={} dep={} pd={}",
            claimed,
            o.topology,
            g15(o.level),
            g15(o.r),
            status,
            o.strongest(),
            g15(o.negativities[0]),
            g15(o.negativities[1]),
            g15(o.negativities[2])
        );
    }
    out
}

pub fn channel_dump(ch: &KrausChannel) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "channel {} dim={} operators={} completeness_residual={}",
        ch.label(),
        ch.dim(),
        ch.len(),
        g15(ch.completeness_residual())
    );
    for (k, e) in ch.operators().iter().enumerate() {
        let _ = writeln!(out, "E{k}:");
        for i in 0..e.rows() {
            let cells: Vec<String> = (0..e.cols())
                .map(|j| {
                    let z = e[(i, j)];
                    // Print -0 as 0 so dumps are stable.
                    let (re, im) = (z.re + 0.0, z.im + 0.0);
                    format!("{re:>9.6}{im:+.6}i")
                })
                .collect();
            let _ = writeln!(out, "  {}", cells.join("  "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g15_matches_printf_style() {
        assert_eq!(g15(0.0), "0");
        assert_eq!(g15(-0.0), "0");
        assert_eq!(g15(0.5), "0.5");
        assert_eq!(g15(0.25), "0.25");
        assert_eq!(g15(1.0), "1");
        assert_eq!(g15(-2.5), "-2.5");
        assert_eq!(g15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(g15(std::f64::consts::FRAC_PI_4), "0.785398163397448");
        assert_eq!(g15(1e-8), "1e-08");
        assert_eq!(g15(1.25e-13), "1.25e-13");
        assert_eq!(g15(0.0001), "0.0001");
        assert_eq!(g15(123456.0), "123456");
        assert_eq!(g15(1e20), "1e+20");
        assert_eq!(g15(0.1 + 0.2), "0.3");
        assert_eq!(g15(9.9999999999999999), "10");
    }

    #[test]
    fn sweep_csv_layout() {
        let rows = vec![SweepRow {
            label: None,
            r: 0.0,
            numeric: 0.5,
            analytic: Some(0.5),
        }];
        assert_eq!(
            sweep_csv(&rows, false),
            "r,negativity_numeric,negativity_analytic,abs_gap\n0,0.5,0.5,0\n"
        );
    }
}
