use crate::channels::{scenario_channel, ChannelKind, KrausChannel, NoiseScenario};
use crate::error::{Error, Result};
use crate::linalg::{adjoint, mat_mul, ComplexMatrix};
use crate::state::{initial_state, Acceleration, DensityMatrix, StateDiagnostics, DIM, STATE_TOL};

/// ρ ↦ Σ_k E_k ρ E_k†.
///
/// The output is re-validated; a violation means a malformed channel got
/// through and is reported as [`Error::Consistency`].
pub fn apply_channel(rho: &DensityMatrix, ch: &KrausChannel) -> Result<DensityMatrix> {
    if ch.dim() != DIM {
        return Err(Error::DimensionMismatch(format!(
            "channel `{}` acts on dimension {}, state has {DIM}",
            ch.label(),
            ch.dim()
        )));
    }
    let out = kraus_sum(rho.matrix(), ch)?;
    StateDiagnostics::of(&out)?
        .check(STATE_TOL)
        .map_err(|e| Error::Consistency(format!("after `{}`: {e}", ch.label())))?;
    Ok(DensityMatrix::new_unchecked(out))
}

fn kraus_sum(rho: &ComplexMatrix, ch: &KrausChannel) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for e in ch.operators() {
        let term = mat_mul(&mat_mul(e, rho)?, &adjoint(e))?;
        out.add_assign_unchecked(&term);
    }
    Ok(out)
}

pub fn evolve_scenario(
    acc: Acceleration,
    kind: ChannelKind,
    sc: &NoiseScenario,
) -> Result<DensityMatrix> {
    scenario_channel(kind, sc)?
        .iter()
        .try_fold(initial_state(acc), |rho, ch| apply_channel(&rho, ch))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{
        joint_kraus, lift_qubit, lift_qutrit, qubit_kraus, qutrit_kraus, Topology,
    };
    use crate::entanglement::negativity;
    use crate::linalg::{c, frobenius_distance};
    use proptest::prelude::*;

    fn acc(r: f64) -> Acceleration {
        Acceleration::new(r).unwrap()
    }

    #[test]
    fn identity_channel_leaves_state_unchanged() {
        let rho = initial_state(acc(0.4));
        let out = apply_channel(&rho, &KrausChannel::identity(6)).unwrap();
        assert_eq!(out, rho);
    }

    #[test]
    fn rejects_wrong_dimension_channel() {
        let rho = initial_state(acc(0.4));
        assert!(apply_channel(&rho, &KrausChannel::identity(3)).is_err());
    }

    #[test]
    fn full_qubit_dephasing_kills_entanglement_at_r0() {
        let sc = NoiseScenario::qubit_local(1.0).unwrap();
        let rho = evolve_scenario(acc(0.0), ChannelKind::PhaseDamping, &sc).unwrap();
        assert!(rho.matrix()[(1, 3)].norm() < 1e-16);
        assert!(rho.matrix()[(3, 1)].norm() < 1e-16);
        assert!(negativity(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn qubit_amplitude_damping_by_hand() {
        // E1 ⊗ I3 sends |10⟩ to |00⟩; |01⟩ is untouched.
        for p1 in [0.0, 0.2, 0.7, 1.0] {
            let sc = NoiseScenario::qubit_local(p1).unwrap();
            let rho = evolve_scenario(acc(0.0), ChannelKind::AmplitudeDamping, &sc).unwrap();
            let m = rho.matrix();
            assert!((m[(0, 0)] - c(p1 / 2.0, 0.0)).norm() < 1e-15);
            assert!((m[(1, 1)] - c(0.5, 0.0)).norm() < 1e-15);
            assert!((m[(3, 3)] - c((1.0 - p1) / 2.0, 0.0)).norm() < 1e-15);
            assert!((m[(1, 3)] - c((1.0 - p1).sqrt() / 2.0, 0.0)).norm() < 1e-15);
            assert!((m[(3, 1)] - c((1.0 - p1).sqrt() / 2.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_noise_returns_initial_state() {
        for kind in ChannelKind::ALL {
            for t in Topology::ALL {
                let sc = NoiseScenario::uniform(t, 0.0).unwrap();
                let rho = evolve_scenario(acc(0.5), kind, &sc).unwrap();
                let d = frobenius_distance(rho.matrix(), initial_state(acc(0.5)).matrix()).unwrap();
                assert!(d < 1e-15, "{kind} {t}: {d:e}");
            }
        }
    }

    #[test]
    fn global_amplitude_damping_stays_physical() {
        let sc = NoiseScenario::global(0.2, 0.2, 0.2).unwrap();
        let rho = evolve_scenario(acc(0.0), ChannelKind::AmplitudeDamping, &sc).unwrap();
        StateDiagnostics::of(rho.matrix())
            .unwrap()
            .check(1e-10)
            .unwrap();
    }

    #[test]
    fn multilocal_phase_damping_negativity_closed_form() {
        let (p1, p2, r) = (0.2_f64, 0.2_f64, 0.3_f64);
        let sc = NoiseScenario::multi_local(p1, p2).unwrap();
        let rho = evolve_scenario(acc(r), ChannelKind::PhaseDamping, &sc).unwrap();
        let expected =
            0.5 * ((1.0 - p1) * (1.0 - 3.0 * p2 + 3.0 * p2 * p2)).sqrt() * r.cos().powi(2);
        assert!((negativity(&rho).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn lifted_channels_commute() {
        for kind in ChannelKind::ALL {
            let a = lift_qubit(&qubit_kraus(kind, 0.3).unwrap()).unwrap();
            let b = lift_qutrit(&qutrit_kraus(kind, 0.6).unwrap()).unwrap();
            let rho = initial_state(acc(0.6));
            let ab = apply_channel(&apply_channel(&rho, &a).unwrap(), &b).unwrap();
            let ba = apply_channel(&apply_channel(&rho, &b).unwrap(), &a).unwrap();
            assert!(frobenius_distance(ab.matrix(), ba.matrix()).unwrap() <= 1e-12);
        }
    }

    /// Random density matrices as normalized A·A†.
    fn arb_state() -> impl Strategy<Value = DensityMatrix> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 36).prop_map(|v| {
            let a = ComplexMatrix::from_vec(6, 6, v.into_iter().map(|(x, y)| c(x, y)).collect())
                .unwrap();
            let aa = mat_mul(&a, &adjoint(&a)).unwrap();
            let tr = crate::linalg::trace(&aa).unwrap().re;
            DensityMatrix::new(aa.scaled_real(1.0 / tr)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn joint_channel_equals_sequential_lifts(
            rho in arb_state(),
            k in 0usize..3,
            p in 0.0..=1.0f64,
        ) {
            let kind = ChannelKind::ALL[k];
            let a = qubit_kraus(kind, p).unwrap();
            let b = qutrit_kraus(kind, p).unwrap();
            let joint = apply_channel(&rho, &joint_kraus(&a, &b).unwrap()).unwrap();
            let seq = apply_channel(
                &apply_channel(&rho, &lift_qubit(&a).unwrap()).unwrap(),
                &lift_qutrit(&b).unwrap(),
            ).unwrap();
            prop_assert!(frobenius_distance(joint.matrix(), seq.matrix()).unwrap() <= 1e-10);
        }

        #[test]
        fn scenarios_preserve_state_invariants(
            k in 0usize..3,
            t in 0usize..4,
            level in 0.0..=1.0f64,
            r in 0.0..=std::f64::consts::FRAC_PI_4,
        ) {
            let sc = NoiseScenario::uniform(Topology::ALL[t], level).unwrap();
            let rho = evolve_scenario(acc(r), ChannelKind::ALL[k], &sc).unwrap();
            let d = StateDiagnostics::of(rho.matrix()).unwrap();
            prop_assert!(d.check(1e-10).is_ok(), "{d:?}");
        }
    }
}
