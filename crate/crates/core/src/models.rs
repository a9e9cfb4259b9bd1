//! Spin-chain model families, coupling schedules and their Trotter steps.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::algebra::su2::Axis;
use crate::algebra::tfxy::{TfxyPayload, TwoQubitTerm};
use crate::circuit::{Block, BlockIndex, BlockMapping, Zigzag};
use crate::error::{Error, Result};
use crate::sim::PauliTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Σ_{odd i} J_i X_iX_{i+1} + Σ_{even i} J_i Y_iY_{i+1}`.
    Kitaev,
    /// XX and YY on every bond.
    Xy,
    /// XX on bonds, Z fields on sites.
    Tfim,
    /// XX and YY on bonds, Z fields on sites.
    Tfxy,
    /// TFXY plus XY and YX bond terms; the most general free-fermionic chain.
    GenTfxy,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Kitaev, Family::Xy, Family::Tfim, Family::Tfxy, Family::GenTfxy];

    pub fn name(self) -> &'static str {
        match self {
            Family::Kitaev => "kitaev",
            Family::Xy => "xy",
            Family::Tfim => "tfim",
            Family::Tfxy => "tfxy",
            Family::GenTfxy => "gen-tfxy",
        }
    }

    pub fn allows(self, ch: Channel) -> bool {
        use Channel::*;
        match self {
            Family::Kitaev | Family::Xy => matches!(ch, Xx | Yy),
            Family::Tfim => matches!(ch, Xx | Z),
            Family::Tfxy => matches!(ch, Xx | Yy | Z),
            Family::GenTfxy => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidModel(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Xx,
    Yy,
    Xy,
    Yx,
    Z,
}

impl Channel {
    pub const ALL: [Channel; 5] = [Channel::Xx, Channel::Yy, Channel::Xy, Channel::Yx, Channel::Z];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Xx => "xx",
            Channel::Yy => "yy",
            Channel::Xy => "xy",
            Channel::Yx => "yx",
            Channel::Z => "z",
        }
    }
}

/// Coupling coefficients: bond channels have `n − 1` entries (entry `i − 1` is
/// bond `(i, i+1)`), the field channel has `n` entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Couplings {
    pub xx: Vec<f64>,
    pub yy: Vec<f64>,
    pub xy: Vec<f64>,
    pub yx: Vec<f64>,
    pub z: Vec<f64>,
}

impl Couplings {
    pub fn zeros(n: usize) -> Couplings {
        let b = n.saturating_sub(1);
        Couplings { xx: vec![0.0; b], yy: vec![0.0; b], xy: vec![0.0; b], yx: vec![0.0; b], z: vec![0.0; n] }
    }

    pub fn channel(&self, ch: Channel) -> &[f64] {
        match ch {
            Channel::Xx => &self.xx,
            Channel::Yy => &self.yy,
            Channel::Xy => &self.xy,
            Channel::Yx => &self.yx,
            Channel::Z => &self.z,
        }
    }

    pub fn channel_mut(&mut self, ch: Channel) -> &mut Vec<f64> {
        match ch {
            Channel::Xx => &mut self.xx,
            Channel::Yy => &mut self.yy,
            Channel::Xy => &mut self.xy,
            Channel::Yx => &mut self.yx,
            Channel::Z => &mut self.z,
        }
    }

    /// `(1 − s)·self + s·other`, channel by channel.
    pub fn lerp(&self, other: &Couplings, s: f64) -> Couplings {
        let mut out = self.clone();
        for ch in Channel::ALL {
            for (a, b) in out.channel_mut(ch).iter_mut().zip(other.channel(ch)) {
                *a += s * (b - *a);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    family: Family,
    n: usize,
    couplings: Couplings,
}

impl ModelSpec {
    pub fn new(family: Family, n: usize, couplings: Couplings) -> Result<ModelSpec> {
        validate(family, n, &couplings)?;
        Ok(ModelSpec { family, n, couplings })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn couplings(&self) -> &Couplings {
        &self.couplings
    }

    /// Same family and size with different coefficients.
    pub fn with_couplings(&self, couplings: Couplings) -> Result<ModelSpec> {
        ModelSpec::new(self.family, self.n, couplings)
    }

    /// The Hamiltonian as weighted Pauli strings (zero terms omitted).
    pub fn pauli_terms(&self) -> Vec<PauliTerm> {
        let c = &self.couplings;
        let mut terms = Vec::new();
        let pairs = [
            (&c.xx, Axis::X, Axis::X),
            (&c.yy, Axis::Y, Axis::Y),
            (&c.xy, Axis::X, Axis::Y),
            (&c.yx, Axis::Y, Axis::X),
        ];
        for (coef, p, q) in pairs {
            for (i, &j) in coef.iter().enumerate() {
                if j != 0.0 {
                    terms.push(PauliTerm { coeff: j, ops: vec![(i + 1, p), (i + 2, q)] });
                }
            }
        }
        for (i, &h) in c.z.iter().enumerate() {
            if h != 0.0 {
                terms.push(PauliTerm { coeff: h, ops: vec![(i + 1, Axis::Z)] });
            }
        }
        terms
    }
}

fn validate(family: Family, n: usize, c: &Couplings) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModel(format!("need at least 2 qubits, got {n}")));
    }
    for ch in Channel::ALL {
        let v = c.channel(ch);
        let want = if ch == Channel::Z { n } else { n - 1 };
        if v.len() != want {
            return Err(Error::InvalidModel(format!(
                "channel `{}` has {} coefficients, expected {want}",
                ch.name(),
                v.len()
            )));
        }
        if let Some(x) = v.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidModel(format!("channel `{}` has non-finite coefficient {x}", ch.name())));
        }
        if !family.allows(ch) && v.iter().any(|&x| x != 0.0) {
            return Err(Error::InvalidModel(format!(
                "family `{family}` has no `{}` terms",
                ch.name()
            )));
        }
    }
    if family == Family::Kitaev {
        for i in 1..n {
            let (bad, ch) = if i % 2 == 1 { (c.yy[i - 1], "yy") } else { (c.xx[i - 1], "xx") };
            if bad != 0.0 {
                return Err(Error::InvalidModel(format!(
                    "kitaev chain has `{ch}` coupling on bond {i}; odd bonds take xx, even bonds yy"
                )));
            }
        }
    }
    Ok(())
}

/// One Trotter step as one or more zigzags whose products commute.
#[derive(Clone, Debug, PartialEq)]
pub struct TrotterStep {
    pub chains: Vec<Zigzag>,
}

fn ix(i: usize) -> BlockIndex {
    BlockIndex::new(i as u32).expect("block indices start at 1")
}

fn rotation_chain(mapping: BlockMapping, height: usize, theta: impl Fn(usize) -> f64) -> Result<Zigzag> {
    let blocks: Vec<Block> =
        (1..=height).map(|i| Block::rotation(ix(i), mapping.kind_at(ix(i)), theta(i))).collect();
    Zigzag::from_blocks(mapping, height, &blocks)
}

/// Bond and slot (`Z1` or `Z2`) that carries the field of site `q`.
fn field_slot(n: usize, q: usize) -> (usize, TwoQubitTerm) {
    if q % 2 == 1 && q < n {
        (q, TwoQubitTerm::Z1)
    } else {
        (q - 1, TwoQubitTerm::Z2)
    }
}

fn tfxy_chain(n: usize, c: &Couplings, dt: f64) -> Result<Zigzag> {
    let mut fields = vec![(0.0, 0.0); n - 1];
    for q in 1..=n {
        let (bond, slot) = field_slot(n, q);
        let f = &mut fields[bond - 1];
        match slot {
            TwoQubitTerm::Z1 => f.0 = c.z[q - 1],
            _ => f.1 = c.z[q - 1],
        }
    }
    let blocks: Vec<Block> = (1..n)
        .map(|i| {
            let b = i - 1;
            let factors = [
                (TwoQubitTerm::Z1, fields[b].0),
                (TwoQubitTerm::Z2, fields[b].1),
                (TwoQubitTerm::XX, c.xx[b]),
                (TwoQubitTerm::YY, c.yy[b]),
                (TwoQubitTerm::XY, c.xy[b]),
                (TwoQubitTerm::YX, c.yx[b]),
            ];
            let p = factors
                .iter()
                .filter(|(_, j)| *j != 0.0)
                .fold(TfxyPayload::identity(), |acc, &(t, j)| acc.fuse(&TfxyPayload::exp_term(t, dt * j)));
            Block::tfxy(ix(i), p)
        })
        .collect();
    Zigzag::from_blocks(BlockMapping::Tfxy, n - 1, &blocks)
}

/// First-order Trotter step `exp(-iH·dt)` in the family's native block mapping.
///
/// Each bond block is the product of its term exponentials; the zigzag puts
/// odd blocks before even ones. For TFXY blocks the factor order is the two
/// field terms, then XX, YY, XY, YX. Site `q`'s field rides on the odd bond
/// that covers it, or on the last bond when `q = n` is odd.
pub fn trotter_step(model: &ModelSpec, dt: f64) -> Result<TrotterStep> {
    let (n, c) = (model.n, &model.couplings);
    let chains = match model.family {
        Family::Kitaev => {
            let m = BlockMapping::KITAEV_ODD_XX;
            vec![rotation_chain(m, n - 1, |i| dt * if i % 2 == 1 { c.xx[i - 1] } else { c.yy[i - 1] })?]
        }
        Family::Xy => vec![
            rotation_chain(BlockMapping::KITAEV_ODD_XX, n - 1, |i| {
                dt * if i % 2 == 1 { c.xx[i - 1] } else { c.yy[i - 1] }
            })?,
            rotation_chain(BlockMapping::KITAEV_ODD_YY, n - 1, |i| {
                dt * if i % 2 == 1 { c.yy[i - 1] } else { c.xx[i - 1] }
            })?,
        ],
        Family::Tfim => vec![rotation_chain(BlockMapping::Tfim, 2 * n - 1, |i| {
            dt * if i % 2 == 1 { c.z[i / 2] } else { c.xx[i / 2 - 1] }
        })?],
        Family::Tfxy | Family::GenTfxy => vec![tfxy_chain(n, c, dt)?],
    };
    Ok(TrotterStep { chains })
}

/// The same step expressed with TFXY blocks. For every family this equals the
/// native step exactly, since the regrouped factors commute.
pub fn embed_as_tfxy(model: &ModelSpec, dt: f64) -> Result<TrotterStep> {
    Ok(TrotterStep { chains: vec![tfxy_chain(model.n, &model.couplings, dt)?] })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Schedule {
    Constant(Couplings),
    /// Linear interpolation between `(time, couplings)` knots, clamped at the ends.
    PiecewiseLinear(Vec<(f64, Couplings)>),
    /// Sample-and-hold: each knot applies until the next.
    Tabulated(Vec<(f64, Couplings)>),
}

impl Schedule {
    pub fn is_constant(&self) -> bool {
        matches!(self, Schedule::Constant(_))
    }

    pub fn couplings_at(&self, t: f64) -> Couplings {
        match self {
            Schedule::Constant(c) => c.clone(),
            Schedule::Tabulated(knots) => {
                let k = knots.iter().rposition(|(tk, _)| *tk <= t).unwrap_or(0);
                knots[k].1.clone()
            }
            Schedule::PiecewiseLinear(knots) => {
                if t <= knots[0].0 {
                    return knots[0].1.clone();
                }
                for w in knots.windows(2) {
                    let ((t0, c0), (t1, c1)) = (&w[0], &w[1]);
                    if t <= *t1 {
                        return c0.lerp(c1, (t - t0) / (t1 - t0));
                    }
                }
                knots[knots.len() - 1].1.clone()
            }
        }
    }

    fn knots(&self) -> &[(f64, Couplings)] {
        match self {
            Schedule::Constant(_) => &[],
            Schedule::PiecewiseLinear(k) | Schedule::Tabulated(k) => k,
        }
    }

    /// Checks knot ordering, coefficient validity for the model, and that the
    /// knots cover every sampled time `0, dt, …, (steps−1)·dt`.
    pub fn validate(&self, model: &ModelSpec, dt: f64, steps: usize) -> Result<()> {
        if !(dt.is_finite() && dt >= 0.0) {
            return Err(Error::InvalidSchedule(format!("time step must be non-negative, got {dt}")));
        }
        if steps == 0 {
            return Err(Error::EmptySteps);
        }
        if let Schedule::Constant(c) = self {
            return model.with_couplings(c.clone()).map(|_| ());
        }
        let knots = self.knots();
        if knots.is_empty() {
            return Err(Error::InvalidSchedule(String::from("schedule has no knots")));
        }
        for w in knots.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidSchedule(format!("knot times not increasing at t = {}", w[1].0)));
            }
        }
        for (_, c) in knots {
            model.with_couplings(c.clone())?;
        }
        let t_end = dt * (steps - 1) as f64;
        let (first, last) = (knots[0].0, knots[knots.len() - 1].0);
        let covers_end = matches!(self, Schedule::Tabulated(_)) || last >= t_end - 1e-12 * t_end.max(1.0);
        if first > 0.0 || !covers_end {
            return Err(Error::InvalidSchedule(format!(
                "knots span [{first}, {last}] but steps sample [0, {t_end}]"
            )));
        }
        Ok(())
    }
}

/// Trotter steps in time order; step `k` (1-based) uses the couplings at `(k−1)·dt`.
pub fn trotter_circuit(model: &ModelSpec, schedule: &Schedule, dt: f64, steps: usize) -> Result<Vec<TrotterStep>> {
    schedule.validate(model, dt, steps)?;
    (0..steps)
        .map(|k| {
            let m = model.with_couplings(schedule.couplings_at(k as f64 * dt))?;
            trotter_step(&m, dt)
        })
        .collect()
}

/// Quadratic fermionic Hamiltonian
/// `Σ_i [α_i c_i†c_{i+1} + β_i c_i†c_{i+1}† + h.c.] + Σ_i γ_i c_i†c_i`.
///
/// Under the Jordan-Wigner map `c_i = (Π_{j<i} Z_j)(X_i + iY_i)/2` this is a
/// generalized TFXY chain, up to the constant `Σ γ_i / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeFermionSpec {
    pub hopping: Vec<Complex64>,
    pub pairing: Vec<Complex64>,
    pub chemical: Vec<f64>,
}

impl FreeFermionSpec {
    pub fn to_model(&self) -> Result<ModelSpec> {
        let n = self.chemical.len();
        if self.hopping.len() + 1 != n || self.pairing.len() + 1 != n {
            return Err(Error::InvalidModel(format!(
                "free-fermion spec needs n−1 hopping and pairing terms for {n} sites"
            )));
        }
        let mut c = Couplings::zeros(n);
        for i in 0..n - 1 {
            let (a, b) = (self.hopping[i], self.pairing[i]);
            c.xx[i] = (a.re + b.re) / 2.0;
            c.yy[i] = (a.re - b.re) / 2.0;
            c.xy[i] = (-a.im + b.im) / 2.0;
            c.yx[i] = (a.im + b.im) / 2.0;
        }
        for (z, g) in c.z.iter_mut().zip(&self.chemical) {
            *z = -g / 2.0;
        }
        ModelSpec::new(Family::GenTfxy, n, c)
    }

    pub fn from_model(m: &ModelSpec) -> FreeFermionSpec {
        let c = &m.couplings;
        let bonds = m.n - 1;
        FreeFermionSpec {
            hopping: (0..bonds).map(|i| Complex64::new(c.xx[i] + c.yy[i], c.yx[i] - c.xy[i])).collect(),
            pairing: (0..bonds).map(|i| Complex64::new(c.xx[i] - c.yy[i], c.xy[i] + c.yx[i])).collect(),
            chemical: c.z.iter().map(|z| -2.0 * z).collect(),
        }
    }

    /// The constant dropped by [`FreeFermionSpec::to_model`].
    pub fn energy_offset(&self) -> f64 {
        self.chemical.iter().sum::<f64>() / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::BlockKind;

    fn tfim(n: usize) -> ModelSpec {
        let mut c = Couplings::zeros(n);
        c.xx.iter_mut().for_each(|x| *x = -1.0);
        c.z.iter_mut().for_each(|x| *x = 0.5);
        ModelSpec::new(Family::Tfim, n, c).unwrap()
    }

    #[test]
    fn family_channel_mismatch_rejected() {
        let mut c = Couplings::zeros(3);
        c.yy[0] = 1.0;
        assert!(ModelSpec::new(Family::Tfim, 3, c.clone()).is_err());
        assert!(ModelSpec::new(Family::Kitaev, 3, c).is_err());
        let mut c = Couplings::zeros(3);
        c.yy[1] = 1.0;
        c.xx[0] = 1.0;
        assert!(ModelSpec::new(Family::Kitaev, 3, c).is_ok());
    }

    #[test]
    fn arity_checked() {
        let mut c = Couplings::zeros(3);
        c.z.push(1.0);
        assert!(matches!(ModelSpec::new(Family::Tfim, 3, c), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn field_assignment() {
        assert_eq!(field_slot(4, 1), (1, TwoQubitTerm::Z1));
        assert_eq!(field_slot(4, 2), (1, TwoQubitTerm::Z2));
        assert_eq!(field_slot(4, 4), (3, TwoQubitTerm::Z2));
        assert_eq!(field_slot(5, 5), (4, TwoQubitTerm::Z2));
        assert_eq!(field_slot(5, 3), (3, TwoQubitTerm::Z1));
    }

    #[test]
    fn step_heights() {
        let s = trotter_step(&tfim(4), 0.1).unwrap();
        assert_eq!(s.chains.len(), 1);
        assert_eq!(crate::circuit::BlockSequence::height(&s.chains[0]), 7);
        let e = embed_as_tfxy(&tfim(4), 0.1).unwrap();
        assert_eq!(crate::circuit::BlockSequence::height(&e.chains[0]), 3);
        assert_eq!(e.chains[0].block(1).kind(), BlockKind::Tfxy);
    }

    #[test]
    fn schedules() {
        let a = Couplings { z: vec![0.0, 0.0], ..Couplings::zeros(2) };
        let b = Couplings { z: vec![1.0, 2.0], ..Couplings::zeros(2) };
        let pl = Schedule::PiecewiseLinear(vec![(0.0, a.clone()), (1.0, b.clone())]);
        assert_eq!(pl.couplings_at(0.5).z, vec![0.5, 1.0]);
        assert_eq!(pl.couplings_at(3.0).z, vec![1.0, 2.0]);
        let tab = Schedule::Tabulated(vec![(0.0, a), (1.0, b)]);
        assert_eq!(tab.couplings_at(0.99).z, vec![0.0, 0.0]);
        assert_eq!(tab.couplings_at(1.0).z, vec![1.0, 2.0]);
        let m = ModelSpec::new(Family::Tfim, 2, Couplings::zeros(2)).unwrap();
        assert!(pl.validate(&m, 0.1, 11).is_ok());
        assert!(matches!(pl.validate(&m, 0.1, 12), Err(Error::InvalidSchedule(_))));
    }

    #[test]
    fn free_fermion_round_trip() {
        let f = FreeFermionSpec {
            hopping: vec![Complex64::new(0.3, -0.2), Complex64::new(1.0, 0.1)],
            pairing: vec![Complex64::new(-0.4, 0.5), Complex64::new(0.2, 0.0)],
            chemical: vec![0.1, -0.7, 0.9],
        };
        let back = FreeFermionSpec::from_model(&f.to_model().unwrap());
        let pairs = back.hopping.iter().zip(&f.hopping).chain(back.pairing.iter().zip(&f.pairing));
        for (a, b) in pairs {
            assert!((a - b).norm() < 1e-15);
        }
        for (a, b) in back.chemical.iter().zip(&f.chemical) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
