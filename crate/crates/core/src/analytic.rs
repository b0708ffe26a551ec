//! Published closed-form spectra of ρ^{T_A}, one set per (channel, topology).
//!
//! Each expression is transcribed exactly as typeset, including terms that
//! look wrong. Nothing here is corrected; disagreements with direct Kraus
//! evolution are surfaced by [`crate::audit`]. Where the typesetting forces a
//! parse, the choice is noted next to the expression and collected in
//! [`PARSE_NOTES`].
//!
//! Shorthand inside the formulas: `c2 = cos²r`, `s2 = sin²r`, `c4 = cos⁴r`,
//! `cos2r = cos(2r)`.

use crate::channels::{ChannelKind, NoiseScenario, Topology};
use crate::entanglement::NEGATIVE_THRESHOLD;
use crate::error::{Error, Result};
use crate::state::Acceleration;

/// Radicands in `[-RADICAND_TOL, 0)` are clamped to zero.
pub const RADICAND_TOL: f64 = 1e-12;

/// Parses imposed on formulas whose typesetting is irregular.
pub const PARSE_NOTES: &[&str] = &[
    "ad/multilocal: the outer group opens with '(' and closes with ']'; read as one group scaled by 1/8",
    "ad/global: the doubled '++' before p2*cos^2 r is read as a single '+'; the group opened by '[' is closed at the end and scaled by 1/4",
    "dep/multilocal: the radical closes after cos^4 r as typeset; the cos(2r) terms stay outside it, inside the 1/64 group",
    "dep/global (lambda_1,2): the radical closes after cos^4 r as typeset; the cos(2r) terms stay outside it, inside the 1/512 group",
    "dep/global (lambda_5,6): the 6(p(8-9p2)+8p2) sin^2 r term is inside the 1/256 group",
];

#[derive(Debug, Clone, Copy)]
struct Vars {
    p1: f64,
    p2: f64,
    p: f64,
    c2: f64,
    s2: f64,
    c4: f64,
    cos2r: f64,
}

type Spectrum = [f64; 6];

/// One published eigenvalue set.
#[derive(Clone, Copy)]
pub struct EigenFormulaSet {
    kind: ChannelKind,
    topology: Topology,
    /// 1-based position of the eigenvalue the text calls "the only possible negative" one.
    designated_negative: usize,
    eval: fn(&Vars, &Root) -> Result<Spectrum>,
}

impl std::fmt::Debug for EigenFormulaSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EigenFormulaSet")
            .field("kind", &self.kind)
            .field("topology", &self.topology)
            .field("designated_negative", &self.designated_negative)
            .finish()
    }
}

impl EigenFormulaSet {
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn designated_negative(&self) -> usize {
        self.designated_negative
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.kind, self.topology)
    }

    /// Eigenvalues in printed order.
    pub fn evaluate(&self, acc: Acceleration, sc: &NoiseScenario) -> Result<Spectrum> {
        if sc.topology() != self.topology {
            return Err(Error::InvalidScenario(format!(
                "{} formulas cannot take a {} scenario",
                self.label(),
                sc.topology()
            )));
        }
        let (s, co) = acc.r().sin_cos();
        let vars = Vars {
            p1: sc.p1(),
            p2: sc.p2(),
            p: sc.p(),
            c2: co * co,
            s2: s * s,
            c4: co.powi(4),
            cos2r: (2.0 * acc.r()).cos(),
        };
        let root = Root {
            family: self.label(),
        };
        (self.eval)(&vars, &root)
    }
}

/// Square root that clamps roundoff-negative radicands and reports the rest.
struct Root {
    family: String,
}

impl Root {
    fn sqrt(&self, x: f64) -> Result<f64> {
        if x >= 0.0 {
            Ok(x.sqrt())
        } else if x >= -RADICAND_TOL {
            Ok(0.0)
        } else {
            Err(Error::FormulaDomain {
                family: self.family.clone(),
                radicand: x,
            })
        }
    }
}

fn ad_qubit(v: &Vars, _: &Root) -> Result<Spectrum> {
    let Vars { p1, c2, s2, .. } = *v;
    Ok([
        0.5 * c2,
        0.5 * c2,
        -0.5 * (-1.0 + p1) * c2,
        0.5 * (-1.0 + p1) * c2,
        -0.5 * (-1.0 + p1) * s2,
        0.5 * (-1.0 + p1) * s2,
    ])
}

fn ad_qutrit(v: &Vars, root: &Root) -> Result<Spectrum> {
    let Vars { p2, c2, s2, c4, .. } = *v;
    let rad = root.sqrt(p2 * p2 - 4.0 * (-1.0 + p2) * c4)?;
    Ok([
        -0.5 * (-1.0 + p2) * c2,
        0.25 * (p2 - rad),
        0.25 * (p2 + rad),
        -0.5 * (-1.0 + p2) * s2,
        -0.5 * (-1.0 + p2) * s2,
        0.5 * (c2 + p2 * s2),
    ])
}

fn ad_multilocal(v: &Vars, root: &Root) -> Result<Spectrum> {
    let Vars {
        p1,
        p2,
        c2,
        s2,
        c4,
        cos2r,
        ..
    } = *v;
    let rad = root.sqrt(
        4.0 * (-1.0 + p1) * (-1.0 + p2) * c4 + ((p1 + p2) * c2 + (1.0 + p1) * p2 * s2).powi(2),
    )?;
    let base = p1 + 2.0 * p2 + p1 * p2 + p1 * cos2r - p1 * p2 * cos2r;
    Ok([
        -0.5 * (-1.0 + p2) * c2,
        0.5 * (-1.0 + p1) * (-1.0 + p2) * s2,
        -0.5 * (1.0 + p1) * (-1.0 + p2) * s2,
        -0.5 * (-1.0 + p1) * (c2 + p2 * s2),
        (base - 2.0 * rad) / 8.0,
        (base + 2.0 * rad) / 8.0,
    ])
}

fn ad_global(v: &Vars, root: &Root) -> Result<Spectrum> {
    let Vars {
        p1,
        p2,
        p,
        c2,
        s2,
        c4,
        cos2r,
    } = *v;
    let q1 = p1 * p1;
    // "++ p2 cos²r" read as "+ p2 cos²r".
    let base =
        p * c2 + 2.0 * p1 * c2 - q1 * c2 + p2 * c2 - p * p2 * c2 + p * s2 + 2.0 * p * p1 * s2
            - p * q1 * s2
            + p2 * s2
            - p * p2 * s2
            + 2.0 * p1 * p2 * s2
            - 2.0 * p * p1 * p2 * s2
            - q1 * p2 * s2
            + p * q1 * p2 * s2;
    let rad = root.sqrt(
        4.0 * (-1.0 + p) * (-1.0 + p1).powi(2) * (-1.0 + p2) * c4
            + ((-2.0 * p1 + q1 + p * (-1.0 + p2) - p2) * c2
                - (-1.0 - 2.0 * p1 + q1) * (p * (-1.0 + p2) - p2) * s2)
                .powi(2),
    )?;
    Ok([
        0.5 * (-1.0 + p) * (-1.0 + p2) * c2,
        0.25 * (-1.0 + p1).powi(2) * (1.0 + p + p2 - p * p2 + (-1.0 + p) * (-1.0 + p2) * cos2r),
        0.5 * (-1.0 + p) * (-1.0 + p1).powi(2) * (-1.0 + p2) * s2,
        -0.5 * (-1.0 + p) * (-1.0 - 2.0 * p1 + q1) * (-1.0 + p2) * s2,
        0.25 * (base - rad),
        0.25 * (base + rad),
    ])
}

fn dep_qubit(v: &Vars, _: &Root) -> Result<Spectrum> {
    let Vars { p1, c2, s2, .. } = *v;
    let triple = -0.25 * (-2.0 + p1) * c2;
    Ok([
        0.5 * s2,
        0.5 * s2,
        0.25 * (-2.0 * c2 + 3.0 * p1 * c2),
        triple,
        triple,
        triple,
    ])
}

fn dep_qutrit(v: &Vars, _: &Root) -> Result<Spectrum> {
    let Vars { p2, cos2r, .. } = *v;
    let triple = (8.0 - 3.0 * p2 + 8.0 * cos2r - 9.0 * p2 * cos2r) / 32.0;
    let pair = (8.0 - 3.0 * p2 + (-8.0 + 9.0 * p2) * cos2r) / 32.0;
    Ok([
        triple,
        triple,
        triple,
        (-8.0 + 15.0 * p2 - 8.0 * cos2r + 9.0 * p2 * cos2r) / 32.0,
        pair,
        pair,
    ])
}

fn dep_multilocal(v: &Vars, root: &Root) -> Result<Spectrum> {
    let Vars {
        p1,
        p2,
        c2,
        s2,
        c4,
        cos2r,
        ..
    } = *v;
    let first = (8.0 - 3.0 * p2 + (-8.0 + 9.0 * p2) * cos2r) / 32.0;
    let second = ((16.0 - 12.0 * p2 + p1 * (-8.0 + 9.0 * p2)) * c2 + 6.0 * p2 * s2) / 32.0;
    let rad =
        2.0 * 2f64.sqrt() * root.sqrt(2.0 * (-1.0 + p1).powi(2) * (8.0 - 9.0 * p2).powi(2) * c4)?;
    let base = 8.0 * p1 + 12.0 * p2 - 9.0 * p1 * p2 + 8.0 * p1 * cos2r - 9.0 * p1 * p2 * cos2r;
    Ok([
        first,
        first,
        second,
        second,
        (base - rad) / 64.0,
        (base + rad) / 64.0,
    ])
}

fn dep_global(v: &Vars, root: &Root) -> Result<Spectrum> {
    let Vars {
        p1,
        p2,
        p,
        c2,
        s2,
        c4,
        cos2r,
    } = *v;
    let q1 = p1 * p1;
    let base = 96.0 * p + 128.0 * p1 - 144.0 * p * p1 - 64.0 * q1 + 72.0 * p * q1 + 96.0 * p2
        - 108.0 * p * p2
        - 144.0 * p1 * p2
        + 162.0 * p * p1 * p2
        + 72.0 * q1 * p2
        - 81.0 * p * q1 * p2
        + 128.0 * p1 * cos2r
        - 144.0 * p * p1 * cos2r
        - 64.0 * q1 * cos2r
        + 72.0 * p * q1 * cos2r
        - 144.0 * p1 * p2 * cos2r
        + 162.0 * p * p1 * p2 * cos2r
        + 72.0 * q1 * p2 * cos2r
        - 81.0 * p * q1 * p2 * cos2r;
    let rad = 2.0
        * 2f64.sqrt()
        * root.sqrt(
            2.0 * (8.0 - 9.0 * p).powi(2) * (-1.0 + p1).powi(4) * (8.0 - 9.0 * p2).powi(2) * c4,
        )?;
    let middle = (64.0 - 24.0 * p2 + 3.0 * p * (-8.0 + 9.0 * p2)
        - (-8.0 + 9.0 * p) * (-8.0 + 9.0 * p2) * cos2r)
        / 256.0;
    let last = ((3.0 * p * (4.0 - 6.0 * p1 + 3.0 * q1) * (-8.0 + 9.0 * p2)
        - 8.0 * (4.0 * (-4.0 + 3.0 * p2) - 2.0 * p1 * (-8.0 + 9.0 * p2) + q1 * (-8.0 + 9.0 * p2)))
        * c2
        + 6.0 * (p * (8.0 - 9.0 * p2) + 8.0 * p2) * s2)
        / 256.0;
    Ok([
        (base - rad) / 512.0,
        (base + rad) / 512.0,
        middle,
        middle,
        last,
        last,
    ])
}

/// Shared shape of the four phase-damping sets: only the radicand differs.
fn pd_spectrum(v: &Vars, root: &Root, radicand: f64) -> Result<Spectrum> {
    let rad = root.sqrt(radicand)?;
    Ok([
        0.5 * v.c2,
        0.5 * v.c2,
        -0.5 * rad,
        0.5 * rad,
        0.5 * v.s2,
        0.5 * v.s2,
    ])
}

fn pd_qubit(v: &Vars, root: &Root) -> Result<Spectrum> {
    pd_spectrum(v, root, v.c4 - v.p1 * v.c4)
}

fn pd_qutrit(v: &Vars, root: &Root) -> Result<Spectrum> {
    let p2 = v.p2;
    pd_spectrum(v, root, (1.0 - 3.0 * p2 + 3.0 * p2 * p2) * v.c4)
}

fn pd_multilocal(v: &Vars, root: &Root) -> Result<Spectrum> {
    let (p1, p2) = (v.p1, v.p2);
    pd_spectrum(
        v,
        root,
        (-1.0 + p1) * (-1.0 + 3.0 * p2 - 3.0 * p2 * p2) * v.c4,
    )
}

fn pd_global(v: &Vars, root: &Root) -> Result<Spectrum> {
    let Vars { p1, p2, p, c4, .. } = *v;
    pd_spectrum(
        v,
        root,
        (1.0 - 3.0 * p + 3.0 * p * p) * (-1.0 + p1).powi(2) * (1.0 - 3.0 * p2 + 3.0 * p2 * p2) * c4,
    )
}

const fn set(
    kind: ChannelKind,
    topology: Topology,
    designated_negative: usize,
    eval: fn(&Vars, &Root) -> Result<Spectrum>,
) -> EigenFormulaSet {
    EigenFormulaSet {
        kind,
        topology,
        designated_negative,
        eval,
    }
}

use ChannelKind::{AmplitudeDamping as Ad, Depolarizing as Dep, PhaseDamping as Pd};
use Topology::{Global, MultiLocal, QubitLocal, QutritLocal};

pub static FORMULA_SETS: [EigenFormulaSet; 12] = [
    set(Ad, QubitLocal, 4, ad_qubit),
    set(Ad, QutritLocal, 2, ad_qutrit),
    set(Ad, MultiLocal, 5, ad_multilocal),
    set(Ad, Global, 5, ad_global),
    set(Dep, QubitLocal, 3, dep_qubit),
    set(Dep, QutritLocal, 4, dep_qutrit),
    set(Dep, MultiLocal, 5, dep_multilocal),
    set(Dep, Global, 1, dep_global),
    set(Pd, QubitLocal, 3, pd_qubit),
    set(Pd, QutritLocal, 3, pd_qutrit),
    set(Pd, MultiLocal, 3, pd_multilocal),
    set(Pd, Global, 3, pd_global),
];

pub fn formula_set(kind: ChannelKind, topology: Topology) -> &'static EigenFormulaSet {
    FORMULA_SETS
        .iter()
        .find(|s| s.kind == kind && s.topology == topology)
        .expect("every (kind, topology) pair has a formula set")
}

/// Published eigenvalues in printed order.
pub fn analytic_eigenvalues(
    kind: ChannelKind,
    acc: Acceleration,
    sc: &NoiseScenario,
) -> Result<Spectrum> {
    formula_set(kind, sc.topology()).evaluate(acc, sc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticNegativity {
    pub value: f64,
    /// 1-based printed positions of the eigenvalues below the threshold.
    pub negative_indices: Vec<usize>,
    pub designated: usize,
}

impl AnalyticNegativity {
    /// True when no eigenvalue is negative, or exactly the designated one is.
    pub fn agrees_with_designation(&self) -> bool {
        self.negative_indices.is_empty() || self.negative_indices == [self.designated]
    }
}

pub fn analytic_negativity(
    kind: ChannelKind,
    acc: Acceleration,
    sc: &NoiseScenario,
) -> Result<AnalyticNegativity> {
    let set = formula_set(kind, sc.topology());
    let eigs = set.evaluate(acc, sc)?;
    let negative_indices: Vec<usize> = eigs
        .iter()
        .enumerate()
        .filter(|(_, &x)| x < NEGATIVE_THRESHOLD)
        .map(|(i, _)| i + 1)
        .collect();
    let value = eigs
        .iter()
        .filter(|&&x| x < NEGATIVE_THRESHOLD)
        .fold(0.0, |acc, x| acc - x);
    Ok(AnalyticNegativity {
        value,
        negative_indices,
        designated: set.designated_negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn acc(r: f64) -> Acceleration {
        Acceleration::new(r).unwrap()
    }

    #[test]
    fn pd_qubit_printed_value() {
        let eigs =
            analytic_eigenvalues(Pd, acc(0.0), &NoiseScenario::qubit_local(0.2).unwrap()).unwrap();
        assert!((eigs[2] + 0.5 * 0.8_f64.sqrt()).abs() < 1e-15);
        assert!((eigs[2] + 0.44721).abs() < 1e-5);
    }

    #[test]
    fn ad_qutrit_without_noise() {
        for r in [0.0, 0.2, 0.7] {
            let eigs = analytic_eigenvalues(Ad, acc(r), &NoiseScenario::qutrit_local(0.0).unwrap())
                .unwrap();
            assert!((eigs[1] + r.cos().powi(2) / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ad_qubit_trace_sum_is_cos_squared() {
        // c2/2 + c2/2 + 0 + 0: the qubit-population factors cancel pairwise.
        for r in [0.0, 0.3, FRAC_PI_4] {
            for p1 in [0.0, 0.2, 0.9] {
                let eigs =
                    analytic_eigenvalues(Ad, acc(r), &NoiseScenario::qubit_local(p1).unwrap())
                        .unwrap();
                assert!((eigs.iter().sum::<f64>() - r.cos().powi(2)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn zero_noise_negativity() {
        for r in [0.0, 0.4, FRAC_PI_4] {
            let expected = r.cos().powi(2) / 2.0;
            let pd =
                analytic_negativity(Pd, acc(r), &NoiseScenario::qubit_local(0.0).unwrap()).unwrap();
            assert!((pd.value - expected).abs() < 1e-15);
            let pd =
                analytic_negativity(Pd, acc(r), &NoiseScenario::global(0.0, 0.0, 0.0).unwrap())
                    .unwrap();
            assert!((pd.value - expected).abs() < 1e-15);
            let ad =
                analytic_negativity(Ad, acc(r), &NoiseScenario::global(0.0, 0.0, 0.0).unwrap())
                    .unwrap();
            assert!((ad.value - expected).abs() < 1e-15);
            assert_eq!(ad.negative_indices, vec![5]);
            assert!(ad.agrees_with_designation());
        }
    }

    #[test]
    fn ad_qubit_has_a_second_negative_entry() {
        let n =
            analytic_negativity(Ad, acc(0.5), &NoiseScenario::qubit_local(0.2).unwrap()).unwrap();
        assert_eq!(n.negative_indices, vec![4, 6]);
        assert!(!n.agrees_with_designation());
        // |λ4| + |λ6| = (1 - p1)(cos²r + sin²r)/2.
        assert!((n.value - 0.4).abs() < 1e-15);
    }

    #[test]
    fn designations_hold_for_consistent_families() {
        for set in FORMULA_SETS
            .iter()
            .filter(|s| (s.kind, s.topology) != (Ad, QubitLocal))
        {
            let sc = NoiseScenario::uniform(set.topology, 0.2).unwrap();
            let n = analytic_negativity(set.kind, acc(0.3), &sc).unwrap();
            assert_eq!(
                n.negative_indices,
                vec![set.designated_negative],
                "{}",
                set.label()
            );
        }
    }

    #[test]
    fn every_set_returns_finite_values_on_a_grid() {
        for set in &FORMULA_SETS {
            for level in [0.0, 0.1, 0.5, 1.0] {
                for r in [0.0, 0.4, FRAC_PI_4] {
                    let sc = NoiseScenario::uniform(set.topology, level).unwrap();
                    let eigs = set.evaluate(acc(r), &sc).unwrap();
                    assert!(eigs.iter().all(|x| x.is_finite()), "{}", set.label());
                }
            }
        }
    }

    #[test]
    fn topology_mismatch_is_rejected() {
        let sc = NoiseScenario::qubit_local(0.1).unwrap();
        assert!(formula_set(Pd, Global).evaluate(acc(0.1), &sc).is_err());
    }

    #[test]
    fn radicand_clamping() {
        let root = Root { family: "t".into() };
        assert_eq!(root.sqrt(-1e-13).unwrap(), 0.0);
        assert_eq!(root.sqrt(4.0).unwrap(), 2.0);
        assert!(matches!(root.sqrt(-1e-6), Err(Error::FormulaDomain { .. })));
    }

    #[test]
    fn table_covers_every_pair_once() {
        for kind in ChannelKind::ALL {
            for t in Topology::ALL {
                let n = FORMULA_SETS
                    .iter()
                    .filter(|s| s.kind == kind && s.topology == t)
                    .count();
                assert_eq!(n, 1);
            }
        }
    }
}
