// Copyright 2026 The rsp-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense pure states over composite qudit registers.
//!
//! Subsystem 0 is the most significant digit of the flattened amplitude
//! index, so `|a b c⟩` sits at `a·d₁d₂ + b·d₂ + c`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::bases::Basis;
use crate::error::{Result, RspError};
use crate::linalg::{inner, norm_sqr, UnitaryMatrix, C64, ONE, ZERO};

/// Allowed deviation of ‖amps‖² from 1 when building a state.
pub const CONSTRUCTION_TOL: f64 = 1e-9;
/// Default tolerance for state comparisons.
pub const COMPARISON_TOL: f64 = 1e-12;
/// Branches below this probability are flagged degenerate.
pub const DEGENERATE_PROB: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl PureState {
    /// Validated constructor; the stored vector is renormalized.
    pub fn new(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        let nsq = norm_sqr(&amps);
        let state = Self::from_unnormalized(dims, amps)?;
        if (nsq - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(RspError::NotNormalized(nsq.sqrt()));
        }
        Ok(state)
    }

    /// Normalizes any nonzero vector of the right length.
    pub(crate) fn from_unnormalized(dims: Vec<usize>, mut amps: Vec<C64>) -> Result<Self> {
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(RspError::InvalidDimension(d));
        }
        let expected: usize = dims.iter().product();
        if amps.len() != expected {
            return Err(RspError::LengthMismatch {
                dims,
                expected,
                got: amps.len(),
            });
        }
        let nsq = norm_sqr(&amps);
        if nsq == 0.0 || !nsq.is_finite() {
            return Err(RspError::ZeroVector);
        }
        let n = nsq.sqrt();
        amps.iter_mut().for_each(|a| *a /= n);
        Ok(PureState { dims, amps })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total: usize = dims.iter().product();
        if index >= total {
            return Err(RspError::OutcomeOutOfRange {
                index,
                bound: total,
            });
        }
        let mut amps = vec![ZERO; total];
        amps[index] = ONE;
        Self::new(dims, amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amps).sqrt()
    }

    /// `e^{iλ}|self⟩`.
    pub fn with_global_phase(&self, lambda: f64) -> PureState {
        let phase = C64::from_polar(1.0, lambda);
        PureState {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| a * phase).collect(),
        }
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        PureState { dims, amps }
    }

    fn check_subsystem(&self, subsystem: usize) -> Result<()> {
        if subsystem >= self.dims.len() {
            return Err(RspError::SubsystemOutOfRange {
                index: subsystem,
                count: self.dims.len(),
            });
        }
        Ok(())
    }

    /// (outer, d, inner) extents around `subsystem`.
    fn split(&self, subsystem: usize) -> (usize, usize, usize) {
        let outer = self.dims[..subsystem].iter().product();
        let inner = self.dims[subsystem + 1..].iter().product();
        (outer, self.dims[subsystem], inner)
    }
}

pub fn make_state(dims: &[usize], amps: Vec<C64>) -> Result<PureState> {
    PureState::new(dims.to_vec(), amps)
}

fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    hi_inclusive: bool,
    range: &'static str,
) -> Result<()> {
    let ok = value.is_finite() && value >= lo && if hi_inclusive { value <= hi } else { value < hi };
    if ok {
        Ok(())
    } else {
        Err(RspError::InvalidAngle { name, value, range })
    }
}

/// Bloch-sphere angles of a qubit target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Angles2 {
    pub theta: f64,
    pub phi: f64,
}

impl Angles2 {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        check_range("theta", theta, 0.0, PI, true, "[0, π]")?;
        check_range("phi", phi, 0.0, TAU, false, "[0, 2π)")?;
        Ok(Angles2 { theta, phi })
    }
}

/// Hyperspherical angles of a d=4 target. The γ's fix the magnitudes, the α's the phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Angles4 {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl Angles4 {
    pub fn new(gammas: [f64; 3], alphas: [f64; 3]) -> Result<Self> {
        const G: [&str; 3] = ["gamma1", "gamma2", "gamma3"];
        const A: [&str; 3] = ["alpha1", "alpha2", "alpha3"];
        for (name, g) in G.into_iter().zip(gammas) {
            check_range(name, g, 0.0, FRAC_PI_2, true, "[0, π/2]")?;
        }
        for (name, a) in A.into_iter().zip(alphas) {
            check_range(name, a, 0.0, TAU, false, "[0, 2π)")?;
        }
        Ok(Angles4 {
            gamma1: gammas[0],
            gamma2: gammas[1],
            gamma3: gammas[2],
            alpha1: alphas[0],
            alpha2: alphas[1],
            alpha3: alphas[2],
        })
    }

    /// Real, non-negative amplitude magnitudes.
    pub fn magnitudes(&self) -> [f64; 4] {
        let (s1, c1) = self.gamma1.sin_cos();
        let (s2, c2) = self.gamma2.sin_cos();
        let (s3, c3) = self.gamma3.sin_cos();
        [c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3]
    }

    /// `(0, α₁, α₂, α₃)`.
    pub fn phases(&self) -> [f64; 4] {
        [0.0, self.alpha1, self.alpha2, self.alpha3]
    }
}

/// Magnitude angles and phases of a d=8 target; `phis[0]` is pinned to 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Angles8 {
    pub thetas: [f64; 8],
    pub phis: [f64; 8],
}

impl Angles8 {
    pub fn new(thetas: [f64; 8], phis: [f64; 8]) -> Result<Self> {
        if thetas.iter().chain(&phis).any(|x| !x.is_finite()) {
            return Err(RspError::InvalidAngle {
                name: "thetas/phis",
                value: f64::NAN,
                range: "finite reals",
            });
        }
        let nsq: f64 = thetas.iter().map(|t| t.cos().powi(2)).sum();
        if (nsq - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(RspError::NotNormalized(nsq.sqrt()));
        }
        if phis[0] != 0.0 {
            return Err(RspError::NonZeroReferencePhase(phis[0]));
        }
        Ok(Angles8 { thetas, phis })
    }

    /// Signed real magnitudes `cos θᵢ`.
    pub fn magnitudes(&self) -> [f64; 8] {
        self.thetas.map(f64::cos)
    }

    pub fn phases(&self) -> [f64; 8] {
        self.phis
    }
}

/// `cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩`.
pub fn from_angles2(a: &Angles2) -> PureState {
    let (s, c) = (a.theta / 2.0).sin_cos();
    PureState::new(vec![2], vec![C64::new(c, 0.0), C64::from_polar(s, a.phi)])
        .expect("Bloch amplitudes are unit norm")
}

pub fn from_angles4(a: &Angles4) -> PureState {
    phased_state(&a.magnitudes(), &a.phases())
}

pub fn from_angles8(a: &Angles8) -> PureState {
    phased_state(&a.magnitudes(), &a.phases())
}

fn phased_state(mags: &[f64], phases: &[f64]) -> PureState {
    let amps = mags
        .iter()
        .zip(phases)
        .map(|(&m, &p)| C64::from_polar(m, p))
        .collect();
    PureState::from_unnormalized(vec![mags.len()], amps).expect("validated magnitudes")
}

/// `(1/√d) Σ_k |k⟩^{⊗parties}`.
pub fn ghz(parties: usize, d: usize) -> Result<PureState> {
    if parties < 2 {
        return Err(RspError::InvalidDimension(parties));
    }
    if d < 2 {
        return Err(RspError::InvalidDimension(d));
    }
    let dims = vec![d; parties];
    let total: usize = dims.iter().product();
    // |k k … k⟩ sits at k·(d^{n-1} + … + d + 1).
    let stride: usize = (0..parties).map(|p| d.pow(p as u32)).sum();
    let mut amps = vec![ZERO; total];
    let a = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for k in 0..d {
        amps[k * stride] = a;
    }
    PureState::new(dims, amps)
}

/// `|0⟩₁ ⊗ (|00⟩ + |11⟩)₂₃/√2`, the register before the CNOT.
pub fn bell_with_ancilla() -> PureState {
    let zero = PureState::basis_state(vec![2], 0).expect("valid");
    zero.tensor(&ghz(2, 2).expect("valid"))
}

/// Three-qubit GHZ built from a Bell pair on particles 2,3 by a CNOT with
/// particle 2 as control and particle 1 as target.
pub fn ghz_from_bell_cnot() -> PureState {
    let s = bell_with_ancilla();
    // CNOT(control = subsystem 1, target = subsystem 0): |t c x⟩ → |t⊕c c x⟩.
    let mut amps = vec![ZERO; 8];
    for (idx, a) in s.amps().iter().enumerate() {
        let (t, c, x) = (idx >> 2 & 1, idx >> 1 & 1, idx & 1);
        amps[((t ^ c) << 2) | (c << 1) | x] = *a;
    }
    PureState::new(vec![2, 2, 2], amps).expect("permutation preserves norm")
}

/// Applies `u` to one subsystem, identity elsewhere.
pub fn apply_local(u: &UnitaryMatrix, subsystem: usize, s: &PureState) -> Result<PureState> {
    s.check_subsystem(subsystem)?;
    let (outer, d, inner) = s.split(subsystem);
    if u.dim() != d {
        return Err(RspError::DimensionMismatch {
            expected: d,
            got: u.dim(),
        });
    }
    let mut amps = vec![ZERO; s.total_dim()];
    for o in 0..outer {
        for r in 0..d {
            for i in 0..inner {
                let mut acc = ZERO;
                for c in 0..d {
                    acc += u.get(r, c) * s.amps[(o * d + c) * inner + i];
                }
                amps[(o * d + r) * inner + i] = acc;
            }
        }
    }
    Ok(PureState {
        dims: s.dims.clone(),
        amps,
    })
}

/// One outcome of a projective measurement on a single subsystem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeBranch {
    pub outcome: usize,
    pub probability: f64,
    /// Normalized state of the unmeasured subsystems; `None` when degenerate.
    pub collapsed: Option<PureState>,
}

impl OutcomeBranch {
    pub fn is_degenerate(&self) -> bool {
        self.collapsed.is_none()
    }
}

/// Enumerates every outcome of measuring `subsystem` in basis `b`.
pub fn measure_branches(s: &PureState, subsystem: usize, b: &Basis) -> Result<Vec<OutcomeBranch>> {
    s.check_subsystem(subsystem)?;
    let (outer, d, inner) = s.split(subsystem);
    if b.dim() != d {
        return Err(RspError::DimensionMismatch {
            expected: d,
            got: b.dim(),
        });
    }
    let mut rest = s.dims.clone();
    rest.remove(subsystem);
    let branches = b
        .vectors()
        .iter()
        .enumerate()
        .map(|(outcome, v)| {
            // ⟨v| ⊗ I on the remaining subsystems.
            let mut proj = vec![ZERO; outer * inner];
            for o in 0..outer {
                for i in 0..inner {
                    proj[o * inner + i] = (0..d)
                        .map(|k| v[k].conj() * s.amps[(o * d + k) * inner + i])
                        .sum();
                }
            }
            let probability = norm_sqr(&proj);
            let collapsed = if probability < DEGENERATE_PROB {
                None
            } else {
                Some(
                    PureState::from_unnormalized(rest.clone(), proj)
                        .expect("nonzero projection of valid length"),
                )
            };
            OutcomeBranch {
                outcome,
                probability,
                collapsed,
            }
        })
        .collect();
    Ok(branches)
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    if a.total_dim() != b.total_dim() {
        return Err(RspError::DimensionMismatch {
            expected: a.total_dim(),
            got: b.total_dim(),
        });
    }
    Ok(inner(&a.amps, &b.amps).norm_sqr().min(1.0))
}

pub fn equal_up_to_global_phase(a: &PureState, b: &PureState, tol: f64) -> Result<bool> {
    Ok(fidelity(a, b)? >= 1.0 - tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{alice_basis_d2, alice_basis_d4, Basis};
    use crate::corrections::{bob_intermediate_unitary, pauli_z};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn assert_amps(s: &PureState, expected: &[C64], tol: f64) {
        assert_eq!(s.amps().len(), expected.len());
        for (a, e) in s.amps().iter().zip(expected) {
            assert!((a - e).norm() <= tol, "{a} vs {e}");
        }
    }

    #[test]
    fn make_state_examples() {
        let zero = make_state(&[2], vec![ONE, ZERO]).unwrap();
        assert_amps(&zero, &[ONE, ZERO], 0.0);

        let h = c(FRAC_1_SQRT_2, 0.0);
        let bell = make_state(&[2, 2], vec![h, ZERO, ZERO, h]).unwrap();
        assert!((bell.norm() - 1.0).abs() < 1e-15);

        assert!(matches!(
            make_state(&[2], vec![ONE, ONE]),
            Err(RspError::NotNormalized(n)) if (n - 2f64.sqrt()).abs() < 1e-15
        ));
    }

    #[test]
    fn make_state_errors() {
        assert!(matches!(
            make_state(&[2, 2], vec![ONE, ZERO]),
            Err(RspError::LengthMismatch { expected: 4, got: 2, .. })
        ));
        assert_eq!(make_state(&[2], vec![ZERO, ZERO]), Err(RspError::ZeroVector));
        assert_eq!(make_state(&[1], vec![ONE]), Err(RspError::InvalidDimension(1)));
    }

    #[test]
    fn make_state_renormalizes_within_tolerance() {
        let s = make_state(&[2], vec![c(1.0 + 1e-10, 0.0), ZERO]).unwrap();
        assert_eq!(s.amps()[0], ONE);
    }

    #[test]
    fn angles2_examples() {
        let s = from_angles2(&Angles2::new(0.0, 0.0).unwrap());
        assert_amps(&s, &[ONE, ZERO], 0.0);
        let s = from_angles2(&Angles2::new(PI, 0.0).unwrap());
        assert_amps(&s, &[ZERO, ONE], 1e-16);
        let s = from_angles2(&Angles2::new(FRAC_PI_2, FRAC_PI_2).unwrap());
        assert_amps(&s, &[c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)], 1e-15);
    }

    #[test]
    fn angles_reject_out_of_range() {
        assert!(Angles2::new(-0.1, 0.0).is_err());
        assert!(Angles2::new(0.0, TAU).is_err());
        assert!(Angles2::new(f64::NAN, 0.0).is_err());
        assert!(Angles4::new([0.0, 1.6, 0.0], [0.0; 3]).is_err());
        assert!(Angles4::new([0.0; 3], [0.0, 0.0, -1.0]).is_err());
    }

    #[test]
    fn angles4_examples() {
        let s = from_angles4(&Angles4::new([0.0; 3], [0.0; 3]).unwrap());
        assert_amps(&s, &[ONE, ZERO, ZERO, ZERO], 0.0);

        let s = from_angles4(&Angles4::new([FRAC_PI_2, 0.0, 0.0], [0.0; 3]).unwrap());
        assert_amps(&s, &[ZERO, ONE, ZERO, ZERO], 1e-16);

        let a = Angles4::new([FRAC_PI_4; 3], [PI / 3.0, PI / 5.0, PI / 7.0]).unwrap();
        let s = from_angles4(&a);
        // Direct evaluation: cos(π/4) = sin(π/4) = r, so magnitudes r, r², r³, r³.
        let r = FRAC_1_SQRT_2;
        let mags = [r, r * r, r * r * r, r * r * r];
        let sum: f64 = mags.iter().map(|m| m * m).sum();
        assert!((sum - 1.0).abs() < 1e-15);
        for (amp, m) in s.amps().iter().zip(mags) {
            assert!((amp.norm() - m).abs() < 1e-15);
        }
        assert!((s.amps()[2].arg() - PI / 5.0).abs() < 1e-15);
    }

    #[test]
    fn angles8_examples() {
        let mut thetas = [FRAC_PI_2; 8];
        thetas[0] = 0.0;
        let s = from_angles8(&Angles8::new(thetas, [0.0; 8]).unwrap());
        assert!((s.amps()[0] - ONE).norm() < 1e-15);
        assert!(s.amps()[1..].iter().all(|a| a.norm() < 1e-15));

        let t = (1.0 / 8f64.sqrt()).acos();
        let s = from_angles8(&Angles8::new([t; 8], [0.0; 8]).unwrap());
        for a in s.amps() {
            assert!((a - c(1.0 / 8f64.sqrt(), 0.0)).norm() < 1e-15);
        }

        let phis: [f64; 8] = std::array::from_fn(|i| i as f64 * FRAC_PI_4);
        let s = from_angles8(&Angles8::new([t; 8], phis).unwrap());
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!((s.amps()[3].arg() - 3.0 * FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn angles8_errors() {
        assert!(matches!(
            Angles8::new([0.0; 8], [0.0; 8]),
            Err(RspError::NotNormalized(_))
        ));
        let mut thetas = [FRAC_PI_2; 8];
        thetas[0] = 0.0;
        let mut phis = [0.0; 8];
        phis[0] = 0.1;
        assert_eq!(
            Angles8::new(thetas, phis),
            Err(RspError::NonZeroReferencePhase(0.1))
        );
    }

    #[test]
    fn ghz_examples() {
        let h = FRAC_1_SQRT_2;
        let g = ghz(3, 2).unwrap();
        let mut e = vec![ZERO; 8];
        e[0] = c(h, 0.0);
        e[7] = c(h, 0.0);
        assert_amps(&g, &e, 1e-16);

        let g = ghz(3, 4).unwrap();
        let mut e = vec![ZERO; 64];
        for k in 0..4 {
            e[k * 16 + k * 4 + k] = c(0.5, 0.0);
        }
        assert_amps(&g, &e, 0.0);

        let g = ghz(2, 2).unwrap();
        assert_amps(&g, &[c(h, 0.0), ZERO, ZERO, c(h, 0.0)], 1e-16);
    }

    #[test]
    fn ghz_from_bell_matches_ghz() {
        let pre = bell_with_ancilla();
        let h = c(FRAC_1_SQRT_2, 0.0);
        // |0⟩(|00⟩+|11⟩)/√2 occupies indices 000 and 011.
        let mut e = vec![ZERO; 8];
        e[0b000] = h;
        e[0b011] = h;
        assert_amps(&pre, &e, 1e-16);

        let g = ghz_from_bell_cnot();
        assert_eq!(g, ghz(3, 2).unwrap());
        assert_eq!(fidelity(&g, &ghz(3, 2).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn sigma_z_restores_target() {
        let a = Angles2::new(FRAC_PI_3, PI / 5.0).unwrap();
        let psi = from_angles2(&a);
        let flipped = make_state(&[2], vec![psi.amps()[0], -psi.amps()[1]]).unwrap();
        let fixed = apply_local(&pauli_z(), 0, &flipped).unwrap();
        assert_amps(&fixed, psi.amps(), 1e-16);
    }

    #[test]
    fn identity_is_noop() {
        let g = ghz(3, 4).unwrap();
        for k in 0..3 {
            assert_eq!(apply_local(&UnitaryMatrix::identity(4), k, &g).unwrap(), g);
        }
    }

    #[test]
    fn bob_u1_reproduces_transformed_branch() {
        let a = Angles4::new([0.3, 0.7, 1.1], [0.0; 3]).unwrap();
        let [c0, a1, b2, e3] = a.magnitudes();
        // Branch 1: −a|00⟩ + c|11⟩ − e|22⟩ + b|33⟩.
        let mut amps = vec![ZERO; 16];
        amps[0] = c(-a1, 0.0);
        amps[5] = c(c0, 0.0);
        amps[10] = c(-e3, 0.0);
        amps[15] = c(b2, 0.0);
        let s = make_state(&[4, 4], amps).unwrap();
        let out = apply_local(&bob_intermediate_unitary(1).unwrap(), 0, &s).unwrap();
        // a|10⟩ + c|01⟩ + e|32⟩ + b|23⟩.
        let mut e = vec![ZERO; 16];
        e[4] = c(a1, 0.0);
        e[1] = c(c0, 0.0);
        e[14] = c(e3, 0.0);
        e[11] = c(b2, 0.0);
        assert_amps(&out, &e, 1e-15);
    }

    #[test]
    fn apply_local_errors() {
        let g = ghz(3, 2).unwrap();
        assert!(matches!(
            apply_local(&UnitaryMatrix::identity(4), 0, &g),
            Err(RspError::DimensionMismatch { expected: 2, got: 4 })
        ));
        assert!(matches!(
            apply_local(&UnitaryMatrix::identity(2), 3, &g),
            Err(RspError::SubsystemOutOfRange { index: 3, count: 3 })
        ));
    }

    #[test]
    fn ghz_qubit_first_measurement() {
        let theta = 1.234;
        let g = ghz(3, 2).unwrap();
        let br = measure_branches(&g, 0, &alice_basis_d2(theta).unwrap()).unwrap();
        assert_eq!(br.len(), 2);
        let (s, co) = (theta / 2.0).sin_cos();
        let psi = [c(co, 0.0), ZERO, ZERO, c(s, 0.0)];
        let psi_perp = [c(s, 0.0), ZERO, ZERO, c(-co, 0.0)];
        for (b, e) in br.iter().zip([psi, psi_perp]) {
            assert!((b.probability - 0.5).abs() < 1e-15);
            assert_amps(b.collapsed.as_ref().unwrap(), &e, 1e-15);
            assert_eq!(b.collapsed.as_ref().unwrap().dims(), &[2, 2]);
        }
    }

    #[test]
    fn ghz_d4_first_measurement() {
        let a = Angles4::new([0.4, 0.9, 1.3], [0.0; 3]).unwrap();
        let basis = alice_basis_d4(0.4, 0.9, 1.3).unwrap();
        let br = measure_branches(&ghz(3, 4).unwrap(), 0, &basis).unwrap();
        assert_eq!(br.len(), 4);
        let _ = a;
        for (i, b) in br.iter().enumerate() {
            assert!((b.probability - 0.25).abs() < 1e-15);
            let col = b.collapsed.as_ref().unwrap();
            for k in 0..4 {
                let v = basis.vectors()[i][k];
                assert!((col.amps()[k * 5] - v).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn degenerate_branch_flagged() {
        let zero = PureState::basis_state(vec![2], 0).unwrap();
        let br = measure_branches(&zero, 0, &Basis::computational(2)).unwrap();
        assert_eq!(br[0].probability, 1.0);
        assert!(!br[0].is_degenerate());
        assert_eq!(br[0].collapsed.as_ref().unwrap().dims(), &[] as &[usize]);
        assert!(br[1].is_degenerate());
    }

    #[test]
    fn measure_rejects_wrong_basis_dim() {
        let g = ghz(3, 2).unwrap();
        assert!(measure_branches(&g, 0, &Basis::computational(4)).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let a = from_angles2(&Angles2::new(1.0, 2.0).unwrap());
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        let z = PureState::basis_state(vec![2], 0).unwrap();
        let o = PureState::basis_state(vec![2], 1).unwrap();
        assert_eq!(fidelity(&z, &o).unwrap(), 0.0);
        assert!((fidelity(&a, &a.with_global_phase(0.77)).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(&a, &ghz(2, 2).unwrap()).is_err());
    }

    #[test]
    fn global_phase_examples() {
        let psi = from_angles2(&Angles2::new(FRAC_PI_3, PI / 5.0).unwrap());
        assert!(equal_up_to_global_phase(&psi.with_global_phase(PI), &psi, 1e-12).unwrap());
        assert!(equal_up_to_global_phase(&psi.with_global_phase(FRAC_PI_2), &psi, 1e-12).unwrap());
        let z = PureState::basis_state(vec![2], 0).unwrap();
        let o = PureState::basis_state(vec![2], 1).unwrap();
        assert!(!equal_up_to_global_phase(&z, &o, 1e-12).unwrap());
    }
}
