//! Qualitative statements about the negativity curves, checked on oracle values.
//!
//! A check that fails is returned as a discrepancy record, never as an error.

use std::f64::consts::PI;

use crate::audit::RGrid;
use crate::channels::{ChannelKind, NoiseScenario, Topology};
use crate::entanglement::negativity;
use crate::error::Result;
use crate::evolve::evolve_scenario;
use crate::state::Acceleration;

/// Negativity at or below this counts as entanglement sudden death.
pub const ESD_FLOOR: f64 = 1e-9;

/// Noise levels at which the sudden-death and ordering claims are checked.
pub const CLAIM_LEVELS: [f64; 2] = [0.2, 0.5];

pub fn numeric_negativity(kind: ChannelKind, acc: Acceleration, sc: &NoiseScenario) -> Result<f64> {
    negativity(&evolve_scenario(acc, kind, sc)?)
}

/// "Negativity stays positive over the whole r grid."
#[derive(Debug, Clone, PartialEq)]
pub struct EsdRecord {
    pub kind: ChannelKind,
    pub topology: Topology,
    pub level: f64,
    pub min_negativity: f64,
    pub argmin_r: f64,
    /// r values with negativity ≤ [`ESD_FLOOR`].
    pub dead_at: Vec<f64>,
}

impl EsdRecord {
    pub fn holds(&self) -> bool {
        self.dead_at.is_empty()
    }
}

pub fn esd_check(
    kinds: &[ChannelKind],
    topologies: &[Topology],
    levels: &[f64],
    grid: RGrid,
) -> Result<Vec<EsdRecord>> {
    let accs = grid.points();
    let mut out = Vec::new();
    for &kind in kinds {
        for &topology in topologies {
            for &level in levels {
                let sc = NoiseScenario::uniform(topology, level)?;
                let mut rec = EsdRecord {
                    kind,
                    topology,
                    level,
                    min_negativity: f64::INFINITY,
                    argmin_r: 0.0,
                    dead_at: Vec::new(),
                };
                for &acc in &accs {
                    let n = numeric_negativity(kind, acc, &sc)?;
                    if n < rec.min_negativity {
                        rec.min_negativity = n;
                        rec.argmin_r = acc.r();
                    }
                    if n <= ESD_FLOOR {
                        rec.dead_at.push(acc.r());
                    }
                }
                out.push(rec);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingClaim {
    /// The named channel leaves strictly less negativity than both others.
    Strongest(ChannelKind),
}

/// Channel-ordering comparison at one (level, r) point.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingRecord {
    pub claim: OrderingClaim,
    pub topology: Topology,
    pub level: f64,
    pub r: f64,
    /// Indexed like [`ChannelKind::ALL`].
    pub negativities: [f64; 3],
}

impl OrderingRecord {
    pub fn negativity(&self, kind: ChannelKind) -> f64 {
        let i = ChannelKind::ALL
            .iter()
            .position(|&k| k == kind)
            .expect("known kind");
        self.negativities[i]
    }

    /// Channel with the smallest negativity (first on ties).
    pub fn strongest(&self) -> ChannelKind {
        let mut best = ChannelKind::ALL[0];
        for kind in ChannelKind::ALL {
            if self.negativity(kind) < self.negativity(best) {
                best = kind;
            }
        }
        best
    }

    pub fn holds(&self) -> bool {
        let OrderingClaim::Strongest(claimed) = self.claim;
        let n = self.negativity(claimed);
        ChannelKind::ALL
            .iter()
            .filter(|&&k| k != claimed)
            .all(|&k| n < self.negativity(k))
    }
}

pub fn ordering_check(
    claim: OrderingClaim,
    topology: Topology,
    level: f64,
    acc: Acceleration,
) -> Result<OrderingRecord> {
    let sc = NoiseScenario::uniform(topology, level)?;
    let mut negativities = [0.0; 3];
    for (slot, kind) in negativities.iter_mut().zip(ChannelKind::ALL) {
        *slot = numeric_negativity(kind, acc, &sc)?;
    }
    Ok(OrderingRecord {
        claim,
        topology,
        level,
        r: acc.r(),
        negativities,
    })
}

/// Depolarizing strongest at level 0.2, amplitude damping strongest at 0.5,
/// both under global noise with p = p1 = p2, at r = π/8.
pub fn ordering_claims() -> Result<Vec<OrderingRecord>> {
    let mid = Acceleration::new(PI / 8.0)?;
    Ok(vec![
        ordering_check(
            OrderingClaim::Strongest(ChannelKind::Depolarizing),
            Topology::Global,
            0.2,
            mid,
        )?,
        ordering_check(
            OrderingClaim::Strongest(ChannelKind::AmplitudeDamping),
            Topology::Global,
            0.5,
            mid,
        )?,
    ])
}
