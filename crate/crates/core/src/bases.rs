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

//! Measurement bases for the magnitude (θ) and phase (φ) stages.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Result, RspError};
use crate::linalg::{inner, CMatrix, UnitaryMatrix, C64, ONE, ZERO};
use crate::sampling;

/// Gram-matrix tolerance enforced at construction.
pub const ORTHONORMAL_TOL: f64 = 1e-12;

/// Row `i` of a magnitude-stage basis is `vᵢ[k] = sign · x[source]` for the
/// `(sign, source)` pair at `[i][k]`, where `x` is the real magnitude vector.
pub type SignedPattern<const D: usize> = [[(i8, u8); D]; D];

/// The d=4 magnitude-stage basis: left multiplication by the quaternion units
/// 1, i, j and −k.
pub const THETA_PATTERN_D4: SignedPattern<4> = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(-1, 1), (1, 0), (-1, 3), (1, 2)],
    [(-1, 2), (1, 3), (1, 0), (-1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

/// The d=8 magnitude-stage basis: left multiplication by the octonion units
/// e₀…e₇ (Cayley–Dickson doubling of the quaternions).
pub const THETA_PATTERN_D8: SignedPattern<8> = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(-1, 1), (1, 0), (-1, 3), (1, 2), (-1, 5), (1, 4), (1, 7), (-1, 6)],
    [(-1, 2), (1, 3), (1, 0), (-1, 1), (-1, 6), (-1, 7), (1, 4), (1, 5)],
    [(-1, 3), (-1, 2), (1, 1), (1, 0), (-1, 7), (1, 6), (-1, 5), (1, 4)],
    [(-1, 4), (1, 5), (1, 6), (1, 7), (1, 0), (-1, 1), (-1, 2), (-1, 3)],
    [(-1, 5), (-1, 4), (1, 7), (-1, 6), (1, 1), (1, 0), (1, 3), (-1, 2)],
    [(-1, 6), (-1, 7), (-1, 4), (1, 5), (1, 2), (-1, 3), (1, 0), (1, 1)],
    [(-1, 7), (1, 6), (-1, 5), (-1, 4), (1, 3), (1, 2), (-1, 1), (1, 0)],
];

/// Fourier exponent used by each phase-basis row, per dimension.
/// The d=4 order `0, 1, 3, 2` is the one the Charlie correction table is keyed on.
fn phase_row_exponents(d: usize) -> Option<&'static [usize]> {
    match d {
        2 => Some(&[0, 1]),
        4 => Some(&[0, 1, 3, 2]),
        8 => Some(&[0, 1, 2, 3, 4, 5, 6, 7]),
        _ => None,
    }
}

/// An ordered orthonormal basis of one subsystem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Basis {
    dim: usize,
    vectors: Vec<Vec<C64>>,
}

impl Basis {
    /// Checks orthonormality within [`ORTHONORMAL_TOL`].
    pub fn new(vectors: Vec<Vec<C64>>) -> Result<Self> {
        let dim = vectors.len();
        if dim < 2 {
            return Err(RspError::InvalidDimension(dim));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(RspError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        let dev = gram_deviation(&vectors);
        if dev > ORTHONORMAL_TOL || !dev.is_finite() {
            return Err(RspError::NotOrthonormal(dev));
        }
        Ok(Basis { dim, vectors })
    }

    pub fn computational(dim: usize) -> Self {
        let id = CMatrix::identity(dim);
        Basis {
            dim,
            vectors: (0..dim).map(|r| id.row(r).to_vec()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn gram_deviation(&self) -> f64 {
        gram_deviation(&self.vectors)
    }

    pub fn is_real(&self) -> bool {
        self.vectors.iter().flatten().all(|z| z.im == 0.0)
    }

    /// Matrix whose rows are the basis vectors.
    pub fn row_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self.vectors[r][c])
    }
}

/// Largest entry of |G − I| with `G[i][j] = ⟨vᵢ|vⱼ⟩`.
pub fn gram_deviation(vectors: &[Vec<C64>]) -> f64 {
    let mut dev: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            dev = dev.max((inner(a, b) - target).norm());
        }
    }
    dev
}

fn check_angle(name: &'static str, value: f64, hi: f64, range: &'static str) -> Result<()> {
    if value.is_finite() && (0.0..=hi).contains(&value) {
        Ok(())
    } else {
        Err(RspError::InvalidAngle { name, value, range })
    }
}

/// `{cos(θ/2)|0⟩ + sin(θ/2)|1⟩, sin(θ/2)|0⟩ − cos(θ/2)|1⟩}`.
pub fn alice_basis_d2(theta: f64) -> Result<Basis> {
    check_angle("theta", theta, PI, "[0, π]")?;
    let (s, c) = (theta / 2.0).sin_cos();
    Basis::new(vec![
        vec![C64::new(c, 0.0), C64::new(s, 0.0)],
        vec![C64::new(s, 0.0), C64::new(-c, 0.0)],
    ])
}

pub fn alice_basis_d4(g1: f64, g2: f64, g3: f64) -> Result<Basis> {
    for (name, g) in [("gamma1", g1), ("gamma2", g2), ("gamma3", g3)] {
        check_angle(name, g, PI / 2.0, "[0, π/2]")?;
    }
    let (s1, c1) = g1.sin_cos();
    let (s2, c2) = g2.sin_cos();
    let (s3, c3) = g3.sin_cos();
    basis_from_pattern(&THETA_PATTERN_D4, &[c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3])
}

/// Octonion magnitude-stage basis whose first vector is `(cos θ₀, …, cos θ₇)`.
pub fn alice_basis_d8(thetas: &[f64; 8]) -> Result<Basis> {
    let mut x = thetas.map(f64::cos);
    let nsq: f64 = x.iter().map(|v| v * v).sum();
    if (nsq - 1.0).abs() > crate::state::CONSTRUCTION_TOL || !nsq.is_finite() {
        return Err(RspError::NotNormalized(nsq.sqrt()));
    }
    let n = nsq.sqrt();
    x.iter_mut().for_each(|v| *v /= n);
    basis_from_pattern(&THETA_PATTERN_D8, &x)
}

fn basis_from_pattern<const D: usize>(pattern: &SignedPattern<D>, x: &[f64; D]) -> Result<Basis> {
    let vectors = pattern
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(sign, src)| C64::new(f64::from(sign) * x[src as usize], 0.0))
                .collect()
        })
        .collect();
    Basis::new(vectors)
}

/// Signed permutation sending `|k⟩ → sign·|source⟩` for row `row` of `pattern`.
///
/// After the magnitude-stage outcome `row`, applying this to the second party's
/// particle moves magnitude `x[m]` onto index `m` of that particle.
pub fn realigning_unitary<const D: usize>(pattern: &SignedPattern<D>, row: usize) -> Result<UnitaryMatrix> {
    if row >= D {
        return Err(RspError::OutcomeOutOfRange { index: row, bound: D });
    }
    let mut m = CMatrix::zeros(D);
    for (k, &(sign, src)) in pattern[row].iter().enumerate() {
        m.set(src as usize, k, C64::new(f64::from(sign), 0.0));
    }
    UnitaryMatrix::new(m)
}

/// Row `j` is `(1/√d) Σ_k ω^{e(j)·k} e^{−i·phases[k]} |k⟩` with `ω = e^{2πi/d}`.
pub fn phase_basis(d: usize, phases: &[f64]) -> Result<Basis> {
    let exponents = phase_row_exponents(d).ok_or(RspError::UnsupportedDimension(d))?;
    if phases.len() != d {
        return Err(RspError::DimensionMismatch {
            expected: d,
            got: phases.len(),
        });
    }
    if phases[0] != 0.0 {
        return Err(RspError::NonZeroReferencePhase(phases[0]));
    }
    let norm = 1.0 / (d as f64).sqrt();
    let vectors = exponents
        .iter()
        .map(|&e| {
            (0..d)
                .map(|k| {
                    // Reduce the exponent mod d so ω-powers land on exact lattice angles.
                    let turn = TAU * ((e * k) % d) as f64 / d as f64;
                    root_of_unity(turn) * C64::from_polar(norm, -phases[k])
                })
                .collect()
        })
        .collect();
    Basis::new(vectors)
}

/// `e^{i·angle}` with exact values on the quarter turns.
fn root_of_unity(angle: f64) -> C64 {
    const QUARTERS: [C64; 4] = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, -1.0),
    ];
    let q = angle / (PI / 2.0);
    if q.fract() == 0.0 {
        QUARTERS[q as usize % 4]
    } else {
        C64::from_polar(1.0, angle)
    }
}

/// `{(|1⟩ + e^{−iφ}|0⟩)/√2, (|1⟩ − e^{−iφ}|0⟩)/√2}`.
pub fn xi_basis(phi: f64) -> Result<Basis> {
    if !(phi.is_finite() && (0.0..TAU).contains(&phi)) {
        return Err(RspError::InvalidAngle {
            name: "phi",
            value: phi,
            range: "[0, 2π)",
        });
    }
    let norm = 1.0 / 2f64.sqrt();
    let p = C64::from_polar(norm, -phi);
    let h = C64::new(norm, 0.0);
    Basis::new(vec![vec![p, h], vec![-p, h]])
}

/// Outcome of one stage of a basis property sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageCheck {
    pub stage: &'static str,
    pub samples: usize,
    pub max_deviation: f64,
    pub failures: usize,
    /// Construction error from the first failing sample, if any.
    pub first_error: Option<String>,
}

impl StageCheck {
    fn new(stage: &'static str) -> Self {
        StageCheck {
            stage,
            samples: 0,
            max_deviation: 0.0,
            failures: 0,
            first_error: None,
        }
    }

    fn record(&mut self, outcome: Result<f64>) {
        self.samples += 1;
        match outcome {
            Ok(dev) => {
                self.max_deviation = self.max_deviation.max(dev);
                if dev > ORTHONORMAL_TOL {
                    self.failures += 1;
                }
            }
            Err(e) => {
                self.failures += 1;
                self.first_error.get_or_insert_with(|| e.to_string());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisCheckReport {
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    /// Magnitude-stage checks; for d=4 also covers real orthogonality of the row matrix.
    pub theta_stage: Vec<StageCheck>,
    /// Phase-stage checks; for d=2 also covers the ξ basis and its σ_x relation to η.
    pub phase_stage: Vec<StageCheck>,
}

impl BasisCheckReport {
    pub fn theta_passed(&self) -> bool {
        self.theta_stage.iter().all(StageCheck::passed)
    }

    pub fn phase_passed(&self) -> bool {
        self.phase_stage.iter().all(StageCheck::passed)
    }
}

/// Seeded orthonormality sweep over every basis constructor used at dimension `d`.
pub fn check_bases(d: usize, samples: usize, seed: u64) -> Result<BasisCheckReport> {
    if samples == 0 {
        return Err(RspError::NoSamples);
    }
    let mut rng = sampling::seeded_rng(seed);
    let mut theta_stage = Vec::new();
    let mut phase_stage = Vec::new();
    match d {
        2 => {
            let mut alice = StageCheck::new("alice_basis_d2");
            let mut eta = StageCheck::new("phase_basis_d2");
            let mut xi = StageCheck::new("xi_basis");
            let mut swap = StageCheck::new("xi_equals_sigma_x_eta");
            for _ in 0..samples {
                let a = sampling::random_angles2(&mut rng);
                alice.record(alice_basis_d2(a.theta).map(|b| b.gram_deviation()));
                let eta_b = phase_basis(2, &[0.0, a.phi]);
                eta.record(eta_b.as_ref().map(Basis::gram_deviation).map_err(Clone::clone));
                let xi_b = xi_basis(a.phi);
                xi.record(xi_b.as_ref().map(Basis::gram_deviation).map_err(Clone::clone));
                swap.record(eta_b.and_then(|e| {
                    let x = xi_b?;
                    let dev = e
                        .vectors()
                        .iter()
                        .zip(x.vectors())
                        .flat_map(|(ev, xv)| [(ev[1] - xv[0]).norm(), (ev[0] - xv[1]).norm()])
                        .fold(0.0, f64::max);
                    Ok(dev)
                }));
            }
            theta_stage.push(alice);
            phase_stage.extend([eta, xi, swap]);
        }
        4 => {
            let mut alice = StageCheck::new("alice_basis_d4");
            let mut ortho = StageCheck::new("alice_basis_d4_real_orthogonal");
            let mut eta = StageCheck::new("phase_basis_d4");
            for _ in 0..samples {
                let a = sampling::random_angles4(&mut rng);
                let b = alice_basis_d4(a.gamma1, a.gamma2, a.gamma3);
                alice.record(b.as_ref().map(Basis::gram_deviation).map_err(Clone::clone));
                ortho.record(b.and_then(|b| {
                    if !b.is_real() {
                        return Err(RspError::NotOrthonormal(f64::INFINITY));
                    }
                    let m = b.row_matrix();
                    Ok(m.mul(&m.transpose()).max_abs_diff(&CMatrix::identity(4)))
                }));
                eta.record(phase_basis(4, &a.phases()).map(|b| b.gram_deviation()));
            }
            theta_stage.extend([alice, ortho]);
            phase_stage.push(eta);
        }
        8 => {
            let mut alice = StageCheck::new("alice_basis_d8");
            let mut eta = StageCheck::new("phase_basis_d8");
            for _ in 0..samples {
                let a = sampling::random_angles8(&mut rng);
                alice.record(alice_basis_d8(&a.thetas).map(|b| b.gram_deviation()));
                eta.record(phase_basis(8, &a.phases()).map(|b| b.gram_deviation()));
            }
            theta_stage.push(alice);
            phase_stage.push(eta);
        }
        _ => return Err(RspError::UnsupportedDimension(d)),
    }
    Ok(BasisCheckReport {
        d,
        samples,
        seed,
        theta_stage,
        phase_stage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrections::bob_intermediate_unitary;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn assert_vecs(b: &Basis, expected: &[Vec<C64>], tol: f64) {
        for (v, e) in b.vectors().iter().zip(expected) {
            for (x, y) in v.iter().zip(e) {
                assert!((x - y).norm() <= tol, "{x} vs {y}");
            }
        }
    }

    /// Direct transcription of the four d=4 magnitude-stage vectors.
    fn eq14(g1: f64, g2: f64, g3: f64) -> Vec<Vec<C64>> {
        let (s1, c1) = g1.sin_cos();
        let (s2, c2) = g2.sin_cos();
        let (s3, c3) = g3.sin_cos();
        let rows = [
            [c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3],
            [-s1 * c2, c1, -s1 * s2 * s3, s1 * s2 * c3],
            [-s1 * s2 * c3, s1 * s2 * s3, c1, -s1 * c2],
            [s1 * s2 * s3, s1 * s2 * c3, -s1 * c2, -c1],
        ];
        rows.iter().map(|r| r.iter().map(|&x| c(x, 0.0)).collect()).collect()
    }

    #[test]
    fn alice_d2_examples() {
        let b = alice_basis_d2(0.0).unwrap();
        assert_vecs(&b, &[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]], 0.0);
        let h = FRAC_1_SQRT_2;
        let b = alice_basis_d2(FRAC_PI_2).unwrap();
        assert_vecs(&b, &[vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]], 1e-15);
        for theta in [0.1, 0.5, 1.7, 3.0] {
            let b = alice_basis_d2(theta).unwrap();
            assert_eq!(inner(&b.vectors()[0], &b.vectors()[1]), ZERO);
        }
        assert!(alice_basis_d2(4.0).is_err());
    }

    #[test]
    fn alice_d4_matches_transcription() {
        for g in [(0.0, 0.0, 0.0), (FRAC_PI_4, FRAC_PI_4, FRAC_PI_4), (0.3, 1.2, 0.8), (FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)] {
            let b = alice_basis_d4(g.0, g.1, g.2).unwrap();
            assert_vecs(&b, &eq14(g.0, g.1, g.2), 1e-16);
        }
        let b = alice_basis_d4(0.0, 0.0, 0.0).unwrap();
        let one = c(1.0, 0.0);
        let z = ZERO;
        assert_vecs(
            &b,
            &[
                vec![one, z, z, z],
                vec![z, one, z, z],
                vec![z, z, one, z],
                vec![z, z, z, -one],
            ],
            0.0,
        );
        let b = alice_basis_d4(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!(b.gram_deviation() < 1e-12);
        assert!(alice_basis_d4(0.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn alice_d4_first_vector_is_target_magnitudes() {
        let a = crate::state::Angles4::new([0.2, 0.9, 1.4], [0.0; 3]).unwrap();
        let b = alice_basis_d4(0.2, 0.9, 1.4).unwrap();
        let t = crate::state::from_angles4(&a);
        for (x, y) in b.vectors()[0].iter().zip(t.amps()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    /// Independent Cayley–Dickson product on real coefficient vectors.
    fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = x.len();
        if n == 1 {
            return vec![x[0] * y[0]];
        }
        let h = n / 2;
        let conj = |v: &[f64]| {
            let mut w: Vec<f64> = v.iter().map(|a| -a).collect();
            w[0] = v[0];
            w
        };
        let (a, b) = x.split_at(h);
        let (cc, d) = y.split_at(h);
        let first: Vec<f64> = cd_mul(a, cc)
            .iter()
            .zip(cd_mul(&conj(d), b))
            .map(|(p, q)| p - q)
            .collect();
        let second: Vec<f64> = cd_mul(d, a)
            .iter()
            .zip(cd_mul(b, &conj(cc)))
            .map(|(p, q)| p + q)
            .collect();
        [first, second].concat()
    }

    fn unit(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn d8_pattern_is_octonion_left_multiplication() {
        for i in 0..8 {
            for j in 0..8 {
                let p = cd_mul(&unit(8, i), &unit(8, j));
                let k = i ^ j;
                // Entry k of row i reads x[j] with the sign of e_i·e_j.
                let (sign, src) = THETA_PATTERN_D8[i][k];
                assert_eq!(src as usize, j);
                assert_eq!(p[k], f64::from(sign));
            }
        }
    }

    #[test]
    fn d4_pattern_is_quaternion_left_multiplication() {
        for i in 0..4 {
            let flip = if i == 3 { -1.0 } else { 1.0 };
            for j in 0..4 {
                let p = cd_mul(&unit(4, i), &unit(4, j));
                let (sign, src) = THETA_PATTERN_D4[i][i ^ j];
                assert_eq!(src as usize, j);
                assert_eq!(p[i ^ j] * flip, f64::from(sign));
            }
        }
    }

    #[test]
    fn alice_d8_examples() {
        let mut t = [FRAC_PI_2; 8];
        t[0] = 0.0;
        let b = alice_basis_d8(&t).unwrap();
        assert!(CMatrix::from_fn(8, |r, c| b.vectors()[r][c]).is_monomial(1e-15));

        let u = (1.0 / 8f64.sqrt()).acos();
        let b = alice_basis_d8(&[u; 8]).unwrap();
        assert!(b.gram_deviation() < 1e-12);
        assert!(b.is_real());

        assert!(matches!(alice_basis_d8(&[0.0; 8]), Err(RspError::NotNormalized(_))));
    }

    #[test]
    fn realigning_unitary_reproduces_bob_table() {
        for i in 0..4 {
            let derived = realigning_unitary(&THETA_PATTERN_D4, i).unwrap();
            assert_eq!(derived, bob_intermediate_unitary(i).unwrap(), "outcome {i}");
        }
        assert!(realigning_unitary(&THETA_PATTERN_D8, 8).is_err());
    }

    #[test]
    fn phase_basis_d2_matches_eta() {
        let phi = 0.9;
        let b = phase_basis(2, &[0.0, phi]).unwrap();
        let h = FRAC_1_SQRT_2;
        let e = C64::from_polar(h, -phi);
        assert_vecs(&b, &[vec![c(h, 0.0), e], vec![c(h, 0.0), -e]], 1e-15);
    }

    #[test]
    fn phase_basis_d4_matches_bob_rows() {
        let (a1, a2, a3) = (0.4, 2.2, 5.1);
        let b = phase_basis(4, &[0.0, a1, a2, a3]).unwrap();
        let e = |a: f64| C64::from_polar(0.5, -a);
        let h = c(0.5, 0.0);
        let i = c(0.0, 1.0);
        let expected = vec![
            vec![h, e(a1), e(a2), e(a3)],
            vec![h, i * e(a1), -e(a2), -i * e(a3)],
            vec![h, -i * e(a1), -e(a2), i * e(a3)],
            vec![h, -e(a1), e(a2), -e(a3)],
        ];
        assert_vecs(&b, &expected, 1e-16);

        let f = phase_basis(4, &[0.0; 4]).unwrap();
        assert!(f.gram_deviation() < 1e-15);
        assert!(f.vectors().iter().flatten().all(|z| (z.norm() - 0.5).abs() < 1e-16));
    }

    #[test]
    fn phase_basis_d8_uses_component_phases() {
        let phases: Vec<f64> = (0..8).map(|k| k as f64 * 0.37).collect();
        let b = phase_basis(8, &phases).unwrap();
        for (j, v) in b.vectors().iter().enumerate() {
            for (k, z) in v.iter().enumerate() {
                let expected = C64::from_polar(
                    1.0 / 8f64.sqrt(),
                    TAU * (j * k) as f64 / 8.0 - phases[k],
                );
                assert!((z - expected).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn phase_basis_errors() {
        assert_eq!(phase_basis(3, &[0.0; 3]), Err(RspError::UnsupportedDimension(3)));
        assert_eq!(phase_basis(4, &[0.1, 0.0, 0.0, 0.0]), Err(RspError::NonZeroReferencePhase(0.1)));
        assert!(phase_basis(4, &[0.0; 2]).is_err());
    }

    #[test]
    fn xi_examples() {
        let h = FRAC_1_SQRT_2;
        let b = xi_basis(0.0).unwrap();
        assert_vecs(&b, &[vec![c(h, 0.0), c(h, 0.0)], vec![c(-h, 0.0), c(h, 0.0)]], 1e-15);
        for phi in [0.0, 0.3, 2.0, 6.0] {
            let x = xi_basis(phi).unwrap();
            assert!(inner(&x.vectors()[0], &x.vectors()[1]).norm() < 1e-15);
            let eta = phase_basis(2, &[0.0, phi]).unwrap();
            for (xv, ev) in x.vectors().iter().zip(eta.vectors()) {
                assert_eq!(xv[0], ev[1]);
                assert_eq!(xv[1], ev[0]);
            }
        }
    }

    #[test]
    fn basis_rejects_non_orthonormal() {
        let v = vec![vec![ONE, ZERO], vec![ONE, ZERO]];
        assert!(matches!(Basis::new(v), Err(RspError::NotOrthonormal(_))));
    }

    #[test]
    fn check_bases_sweeps_pass() {
        for d in [2, 4, 8] {
            let r = check_bases(d, 200, 3).unwrap();
            assert!(r.theta_passed() && r.phase_passed(), "{r:?}");
        }
        assert_eq!(check_bases(2, 0, 1), Err(RspError::NoSamples));
        assert_eq!(check_bases(3, 1, 1), Err(RspError::UnsupportedDimension(3)));
    }
}
