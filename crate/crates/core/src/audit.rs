//! Cross-checks the published closed-form spectra against direct Kraus
//! evolution followed by a numeric partial-transpose eigensolve.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::fmt;

use rayon::prelude::*;

use crate::analytic::{analytic_negativity, formula_set, AnalyticNegativity};
use crate::channels::{ChannelKind, NoiseScenario, Topology};
use crate::entanglement::{negativity_of_spectrum, partial_transpose_spectrum};
use crate::error::{Error, Result};
use crate::evolve::evolve_scenario;
use crate::state::Acceleration;

/// A record is a MATCH when both gaps are at or below this.
pub const MATCH_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl RGrid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        Acceleration::new(min)?;
        Acceleration::new(max)?;
        if min > max {
            return Err(Error::InvalidScenario(format!(
                "r range [{min}, {max}] is empty"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidScenario(format!(
                "need at least 2 r steps, got {steps}"
            )));
        }
        Ok(Self { min, max, steps })
    }

    /// `steps` points on `[0, π/4]`, endpoints included.
    pub fn full(steps: usize) -> Result<Self> {
        Self::new(0.0, FRAC_PI_4, steps)
    }

    pub fn points(&self) -> Vec<Acceleration> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                let r = if k + 1 == self.steps {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / last
                };
                Acceleration::new(r).expect("grid stays inside the validated range")
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    FormulaDomainError,
    NumericError,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::FormulaDomainError => "FORMULA_DOMAIN_ERROR",
            Verdict::NumericError => "NUMERIC_ERROR",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericSide {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub negativity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSide {
    /// Ascending; printed order is not a contract.
    pub eigenvalues: Vec<f64>,
    pub trace_sum: f64,
    pub negativity: AnalyticNegativity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRecord {
    pub kind: ChannelKind,
    pub scenario: NoiseScenario,
    pub r: f64,
    pub numeric: std::result::Result<NumericSide, String>,
    pub analytic: std::result::Result<AnalyticSide, String>,
    pub verdict: Verdict,
}

impl AuditRecord {
    pub fn topology(&self) -> Topology {
        self.scenario.topology()
    }

    /// Max absolute difference between the sorted spectra.
    pub fn eig_gap(&self) -> Option<f64> {
        let (n, a) = self.sides()?;
        Some(
            n.eigenvalues
                .iter()
                .zip(&a.eigenvalues)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn negativity_gap(&self) -> Option<f64> {
        let (n, a) = self.sides()?;
        Some((n.negativity - a.negativity.value).abs())
    }

    fn sides(&self) -> Option<(&NumericSide, &AnalyticSide)> {
        Some((self.numeric.as_ref().ok()?, self.analytic.as_ref().ok()?))
    }
}

fn numeric_side(kind: ChannelKind, acc: Acceleration, sc: &NoiseScenario) -> Result<NumericSide> {
    let rho = evolve_scenario(acc, kind, sc)?;
    let eigenvalues = partial_transpose_spectrum(&rho)?;
    let negativity = negativity_of_spectrum(&eigenvalues);
    Ok(NumericSide {
        eigenvalues,
        negativity,
    })
}

fn analytic_side(kind: ChannelKind, acc: Acceleration, sc: &NoiseScenario) -> Result<AnalyticSide> {
    let printed = formula_set(kind, sc.topology()).evaluate(acc, sc)?;
    let mut eigenvalues = printed.to_vec();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(AnalyticSide {
        eigenvalues,
        trace_sum: printed.iter().sum(),
        negativity: analytic_negativity(kind, acc, sc)?,
    })
}

pub fn audit_point(kind: ChannelKind, acc: Acceleration, sc: &NoiseScenario) -> AuditRecord {
    let numeric = numeric_side(kind, acc, sc).map_err(|e| e.to_string());
    let analytic = analytic_side(kind, acc, sc).map_err(|e| e.to_string());
    let mut record = AuditRecord {
        kind,
        scenario: *sc,
        r: acc.r(),
        numeric,
        analytic,
        verdict: Verdict::Match,
    };
    record.verdict = if record.numeric.is_err() {
        Verdict::NumericError
    } else if record.analytic.is_err() {
        Verdict::FormulaDomainError
    } else {
        let close = |g: Option<f64>| g.is_some_and(|g| g <= MATCH_TOL);
        if close(record.eig_gap()) && close(record.negativity_gap()) {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    };
    record
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub kind: ChannelKind,
    pub topology: Topology,
    pub points: usize,
    pub matches: usize,
    /// Every non-MATCH verdict, errors included.
    pub mismatches: usize,
    pub max_gap: f64,
    /// Largest |Σ printed eigenvalues − 1|.
    pub max_trace_deviation: f64,
    /// Points where the negative printed entries differ from the text's designation.
    pub designation_mismatches: usize,
}

impl FamilySummary {
    fn new(kind: ChannelKind, topology: Topology) -> Self {
        Self {
            kind,
            topology,
            points: 0,
            matches: 0,
            mismatches: 0,
            max_gap: 0.0,
            max_trace_deviation: 0.0,
            designation_mismatches: 0,
        }
    }

    fn add(&mut self, rec: &AuditRecord) {
        self.points += 1;
        if rec.verdict == Verdict::Match {
            self.matches += 1;
        } else {
            self.mismatches += 1;
        }
        for g in [rec.eig_gap(), rec.negativity_gap()].into_iter().flatten() {
            self.max_gap = self.max_gap.max(g);
        }
        if let Ok(a) = &rec.analytic {
            self.max_trace_deviation = self.max_trace_deviation.max((a.trace_sum - 1.0).abs());
            if !a.negativity.agrees_with_designation() {
                self.designation_mismatches += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub grid: RGrid,
    pub levels: Vec<f64>,
    pub records: Vec<AuditRecord>,
    pub summary: Vec<FamilySummary>,
}

impl AuditReport {
    pub fn all_match(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Match)
    }

    pub fn family(&self, kind: ChannelKind, topology: Topology) -> Option<&FamilySummary> {
        self.summary
            .iter()
            .find(|s| s.kind == kind && s.topology == topology)
    }
}

/// Cartesian product over families, noise levels and the r grid. At each
/// level every parameter the topology uses is set to that level.
///
/// Points are evaluated in parallel; records come back in input order
/// (kind, topology, level, r).
pub fn audit_grid(
    kinds: &[ChannelKind],
    topologies: &[Topology],
    grid: RGrid,
    levels: &[f64],
) -> Result<AuditReport> {
    let accs = grid.points();
    let mut jobs = Vec::new();
    for &kind in kinds {
        for &t in topologies {
            for &level in levels {
                let sc = NoiseScenario::uniform(t, level)?;
                jobs.extend(accs.iter().map(|&acc| (kind, acc, sc)));
            }
        }
    }
    let records: Vec<AuditRecord> = jobs
        .par_iter()
        .map(|(kind, acc, sc)| audit_point(*kind, *acc, sc))
        .collect();

    let mut by_family: BTreeMap<(ChannelKind, Topology), FamilySummary> = BTreeMap::new();
    for rec in &records {
        by_family
            .entry((rec.kind, rec.topology()))
            .or_insert_with(|| FamilySummary::new(rec.kind, rec.topology()))
            .add(rec);
    }
    Ok(AuditReport {
        grid,
        levels: levels.to_vec(),
        records,
        summary: by_family.into_values().collect(),
    })
}
