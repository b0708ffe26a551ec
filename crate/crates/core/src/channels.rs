//! Kraus sets for the qubit, the qutrit, and their 6-dimensional composites.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{adjoint, c, kron, mat_mul, omega, ComplexMatrix};

/// Entrywise tolerance on Σ E†E = I accepted by [`KrausChannel::new`].
pub const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    AmplitudeDamping,
    Depolarizing,
    PhaseDamping,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::Depolarizing,
        ChannelKind::PhaseDamping,
    ];

    /// Short flag name: `ad`, `dep` or `pd`.
    pub fn code(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Depolarizing => "dep",
            ChannelKind::PhaseDamping => "pd",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ad" => Ok(ChannelKind::AmplitudeDamping),
            "dep" => Ok(ChannelKind::Depolarizing),
            "pd" => Ok(ChannelKind::PhaseDamping),
            other => Err(format!(
                "unknown channel `{other}` (expected ad, dep or pd)"
            )),
        }
    }
}

/// Which parts of the qubit–qutrit system couple to the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Topology {
    QubitLocal,
    QutritLocal,
    MultiLocal,
    Global,
}

impl Topology {
    pub const ALL: [Topology; 4] = [
        Topology::QubitLocal,
        Topology::QutritLocal,
        Topology::MultiLocal,
        Topology::Global,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Topology::QubitLocal => "qubit",
            Topology::QutritLocal => "qutrit",
            Topology::MultiLocal => "multilocal",
            Topology::Global => "global",
        }
    }

    pub fn uses_p1(self) -> bool {
        !matches!(self, Topology::QutritLocal)
    }

    pub fn uses_p2(self) -> bool {
        !matches!(self, Topology::QubitLocal)
    }

    pub fn uses_p(self) -> bool {
        matches!(self, Topology::Global)
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "qubit" => Ok(Topology::QubitLocal),
            "qutrit" => Ok(Topology::QutritLocal),
            "multilocal" => Ok(Topology::MultiLocal),
            "global" => Ok(Topology::Global),
            other => Err(format!(
                "unknown scenario `{other}` (expected qubit, qutrit, multilocal or global)"
            )),
        }
    }
}

/// Coupling topology plus its decoherence strengths: `p1` for the qubit's
/// own environment, `p2` for the qutrit's, `p` for the collective one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseScenario {
    topology: Topology,
    p1: f64,
    p2: f64,
    p: f64,
}

impl NoiseScenario {
    /// Parameters the topology does not use must be exactly zero.
    pub fn new(topology: Topology, p1: f64, p2: f64, p: f64) -> Result<Self> {
        check_probability("p1", p1)?;
        check_probability("p2", p2)?;
        check_probability("p", p)?;
        for (name, value, used) in [
            ("p1", p1, topology.uses_p1()),
            ("p2", p2, topology.uses_p2()),
            ("p", p, topology.uses_p()),
        ] {
            if !used && value != 0.0 {
                return Err(Error::InvalidScenario(format!(
                    "{name} = {value} is not used by the {topology} topology and must be 0"
                )));
            }
        }
        Ok(Self {
            topology,
            p1,
            p2,
            p,
        })
    }

    /// Every parameter the topology uses is set to `level`, the rest to 0.
    pub fn uniform(topology: Topology, level: f64) -> Result<Self> {
        let pick = |used: bool| if used { level } else { 0.0 };
        Self::new(
            topology,
            pick(topology.uses_p1()),
            pick(topology.uses_p2()),
            pick(topology.uses_p()),
        )
    }

    pub fn qubit_local(p1: f64) -> Result<Self> {
        Self::new(Topology::QubitLocal, p1, 0.0, 0.0)
    }

    pub fn qutrit_local(p2: f64) -> Result<Self> {
        Self::new(Topology::QutritLocal, 0.0, p2, 0.0)
    }

    pub fn multi_local(p1: f64, p2: f64) -> Result<Self> {
        Self::new(Topology::MultiLocal, p1, p2, 0.0)
    }

    pub fn global(p1: f64, p2: f64, p: f64) -> Result<Self> {
        Self::new(Topology::Global, p1, p2, p)
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        })
    }
}

#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    operators: Vec<ComplexMatrix>,
    label: String,
}

impl KrausChannel {
    /// Validates shapes and completeness within [`COMPLETENESS_TOL`].
    pub fn new(label: impl Into<String>, operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match operators.first() {
            Some(op) => op.rows(),
            None => return Err(Error::DimensionMismatch("empty Kraus set".into())),
        };
        if let Some(bad) = operators
            .iter()
            .find(|e| e.rows() != dim || e.cols() != dim)
        {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator is {}x{}, expected {dim}x{dim}",
                bad.rows(),
                bad.cols()
            )));
        }
        let ch = Self {
            dim,
            operators,
            label: label.into(),
        };
        let residual = ch.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::Incomplete { residual });
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            operators: vec![ComplexMatrix::identity(dim)],
            label: format!("id{dim}"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest entrywise deviation of Σ E†E from the identity.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.operators {
            sum.add_assign_unchecked(&mat_mul(&adjoint(e), e).expect("square operators"));
        }
        sum.sub(&ComplexMatrix::identity(self.dim))
            .expect("same shape")
            .max_abs()
    }
}

fn real(rows: &[Vec<f64>]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).expect("well-formed literal")
}

fn pauli() -> [ComplexMatrix; 3] {
    let sx = real(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let sy = ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(0.0, -1.0)],
        vec![c(0.0, 1.0), c(0.0, 0.0)],
    ])
    .expect("well-formed literal");
    let sz = real(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
    [sx, sy, sz]
}

/// Cyclic shift on the qutrit: columns of the identity rotated by one.
pub fn qutrit_shift() -> ComplexMatrix {
    real(&[
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0],
    ])
}

/// Qutrit clock operator diag(1, ω, ω²).
pub fn qutrit_clock() -> ComplexMatrix {
    let w = omega();
    ComplexMatrix::from_diag(&[c(1.0, 0.0), w, w * w])
}

pub fn qubit_kraus(kind: ChannelKind, p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    let ops = match kind {
        ChannelKind::AmplitudeDamping => vec![
            real(&[vec![1.0, 0.0], vec![0.0, (1.0 - p).sqrt()]]),
            real(&[vec![0.0, p.sqrt()], vec![0.0, 0.0]]),
        ],
        ChannelKind::PhaseDamping => vec![
            real(&[vec![1.0, 0.0], vec![0.0, (1.0 - p).sqrt()]]),
            real(&[vec![0.0, 0.0], vec![0.0, p.sqrt()]]),
        ],
        ChannelKind::Depolarizing => {
            // The leading coefficient is the scalar sqrt(1 - 3p/4) times I.
            let mut ops = vec![ComplexMatrix::identity(2).scaled_real((1.0 - 0.75 * p).sqrt())];
            ops.extend(pauli().iter().map(|s| s.scaled_real((p / 4.0).sqrt())));
            ops
        }
    };
    KrausChannel::new(format!("{kind}2(p={p})"), ops)
}

pub fn qutrit_kraus(kind: ChannelKind, p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    let ops = match kind {
        ChannelKind::AmplitudeDamping => {
            let k = (1.0 - p).sqrt();
            let s = p.sqrt();
            vec![
                real(&[vec![1.0, 0.0, 0.0], vec![0.0, k, 0.0], vec![0.0, 0.0, k]]),
                real(&[vec![0.0, s, 0.0], vec![0.0; 3], vec![0.0; 3]]),
                real(&[vec![0.0, 0.0, s], vec![0.0; 3], vec![0.0; 3]]),
            ]
        }
        ChannelKind::PhaseDamping => vec![
            ComplexMatrix::identity(3).scaled_real((1.0 - p).sqrt()),
            qutrit_clock().scaled_real(p.sqrt()),
        ],
        ChannelKind::Depolarizing => {
            let y = qutrit_shift();
            let z = qutrit_clock();
            let mul = |a: &ComplexMatrix, b: &ComplexMatrix| mat_mul(a, b).expect("3x3");
            let y2 = mul(&y, &y);
            let z2 = mul(&z, &z);
            // Order: Y, Z, Y², YZ, Y²Z, YZ², Y²Z², Z².
            let words = [
                y.clone(),
                z.clone(),
                y2.clone(),
                mul(&y, &z),
                mul(&y2, &z),
                mul(&y, &z2),
                mul(&y2, &z2),
                z2,
            ];
            let k = (p / 8.0).sqrt();
            let mut ops = vec![ComplexMatrix::identity(3).scaled_real((1.0 - p).sqrt())];
            ops.extend(words.iter().map(|m| m.scaled_real(k)));
            ops
        }
    };
    KrausChannel::new(format!("{kind}3(p={p})"), ops)
}

fn require_dim(ch: &KrausChannel, dim: usize) -> Result<()> {
    if ch.dim == dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "channel `{}` has dimension {}, expected {dim}",
            ch.label, ch.dim
        )))
    }
}

/// E ↦ E ⊗ I₃.
pub fn lift_qubit(ch: &KrausChannel) -> Result<KrausChannel> {
    require_dim(ch, 2)?;
    let i3 = ComplexMatrix::identity(3);
    Ok(KrausChannel {
        dim: 6,
        operators: ch.operators.iter().map(|e| kron(e, &i3)).collect(),
        label: format!("{}⊗I3", ch.label),
    })
}

/// E ↦ I₂ ⊗ E.
pub fn lift_qutrit(ch: &KrausChannel) -> Result<KrausChannel> {
    require_dim(ch, 3)?;
    let i2 = ComplexMatrix::identity(2);
    Ok(KrausChannel {
        dim: 6,
        operators: ch.operators.iter().map(|e| kron(&i2, e)).collect(),
        label: format!("I2⊗{}", ch.label),
    })
}

/// All products E_m ⊗ F_n, ordered by (m, n).
pub fn joint_kraus(qubit_ch: &KrausChannel, qutrit_ch: &KrausChannel) -> Result<KrausChannel> {
    require_dim(qubit_ch, 2)?;
    require_dim(qutrit_ch, 3)?;
    let operators = qubit_ch
        .operators
        .iter()
        .flat_map(|e| qutrit_ch.operators.iter().map(move |f| kron(e, f)))
        .collect();
    Ok(KrausChannel {
        dim: 6,
        operators,
        label: format!("{}⊗{}", qubit_ch.label, qutrit_ch.label),
    })
}

/// Channels to apply, in order, for a scenario.
pub fn scenario_channel(kind: ChannelKind, sc: &NoiseScenario) -> Result<Vec<KrausChannel>> {
    let qubit = || qubit_kraus(kind, sc.p1).and_then(|ch| lift_qubit(&ch));
    let qutrit = || qutrit_kraus(kind, sc.p2).and_then(|ch| lift_qutrit(&ch));
    Ok(match sc.topology {
        Topology::QubitLocal => vec![qubit()?],
        Topology::QutritLocal => vec![qutrit()?],
        Topology::MultiLocal => vec![qutrit()?, qubit()?],
        Topology::Global => vec![
            qutrit()?,
            qubit()?,
            joint_kraus(&qubit_kraus(kind, sc.p)?, &qutrit_kraus(kind, sc.p)?)?,
        ],
    })
}
