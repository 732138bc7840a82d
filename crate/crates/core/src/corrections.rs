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

//! Correction unitaries: the reference tables, a constructive monomial
//! oracle, and an audit that cross-checks one against the other.

use serde::Serialize;

use crate::error::{Result, RspError};
use crate::linalg::{CMatrix, C64, I, ONE, ZERO};
pub use crate::linalg::UnitaryMatrix;
use crate::protocol::{self, Parameters};
use crate::sampling;
use crate::state::{apply_local, fidelity, PureState, COMPARISON_TOL};

/// Magnitude-matching tolerance used by the oracle.
pub const MAGNITUDE_TOL: f64 = 1e-10;

fn real(dim: usize, entries: &[f64]) -> UnitaryMatrix {
    UnitaryMatrix::new(CMatrix::from_real(dim, entries)).expect("tabulated matrix is unitary")
}

fn complex(dim: usize, entries: Vec<C64>) -> UnitaryMatrix {
    UnitaryMatrix::new(CMatrix::from_row_major(dim, entries)).expect("tabulated matrix is unitary")
}

pub fn pauli_x() -> UnitaryMatrix {
    real(2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_z() -> UnitaryMatrix {
    real(2, &[1.0, 0.0, 0.0, -1.0])
}

fn check_index(index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(RspError::OutcomeOutOfRange { index, bound })
    }
}

/// Bob's qubit correction for Alice's outcomes `(a_out, b_out)`.
pub fn table1_correction(a_out: usize, b_out: usize) -> Result<UnitaryMatrix> {
    check_index(a_out, 2)?;
    check_index(b_out, 2)?;
    Ok(match (a_out, b_out) {
        (0, 0) => UnitaryMatrix::identity(2),
        (0, 1) => pauli_z(),
        // σ_x acts first.
        (1, 0) => pauli_z().compose(&pauli_x()),
        _ => pauli_x(),
    })
}

pub fn table1_name(a_out: usize, b_out: usize) -> &'static str {
    match (a_out, b_out) {
        (0, 0) => "I",
        (0, 1) => "sigma_z",
        (1, 0) => "sigma_z*sigma_x",
        _ => "sigma_x",
    }
}

/// Bob's d=4 signed permutation after Alice reports outcome `a_out`.
pub fn bob_intermediate_unitary(a_out: usize) -> Result<UnitaryMatrix> {
    check_index(a_out, 4)?;
    #[rustfmt::skip]
    let m = match a_out {
        0 => return Ok(UnitaryMatrix::identity(4)),
        1 => [ 0.0, 1.0, 0.0, 0.0,
              -1.0, 0.0, 0.0, 0.0,
               0.0, 0.0, 0.0, 1.0,
               0.0, 0.0,-1.0, 0.0],
        2 => [ 0.0, 0.0, 1.0, 0.0,
               0.0, 0.0, 0.0,-1.0,
              -1.0, 0.0, 0.0, 0.0,
               0.0, 1.0, 0.0, 0.0],
        _ => [ 0.0, 0.0, 0.0,-1.0,
               0.0, 0.0,-1.0, 0.0,
               0.0, 1.0, 0.0, 0.0,
               1.0, 0.0, 0.0, 0.0],
    };
    Ok(real(4, &m))
}

pub fn bob_intermediate_name(a_out: usize) -> String {
    if a_out == 0 {
        "I".to_string()
    } else {
        format!("U{a_out}")
    }
}

/// `[[0, A], [s·A, 0]]` for a 2×2 block `A`.
fn block_anti(a: [[C64; 2]; 2], lower_sign: f64) -> UnitaryMatrix {
    let mut m = CMatrix::zeros(4);
    for r in 0..2 {
        for c in 0..2 {
            m.set(r, c + 2, a[r][c]);
            m.set(r + 2, c, a[r][c] * lower_sign);
        }
    }
    UnitaryMatrix::new(m).expect("block form is unitary")
}

/// Charlie's reference d=4 correction for outcome pair `(a_out, b_out)`.
pub fn charlie_correction(a_out: usize, b_out: usize) -> Result<UnitaryMatrix> {
    check_index(a_out, 4)?;
    check_index(b_out, 4)?;
    let o = ONE;
    let z = ZERO;
    let diag = |v: [C64; 4]| UnitaryMatrix::new(CMatrix::diag(&v)).expect("unit diagonal");
    Ok(match (a_out, b_out) {
        (0, 0) => UnitaryMatrix::identity(4),
        (0, 1) => diag([o, I, -o, -I]),
        (0, 2) => diag([o, -I, -o, I]),
        (0, 3) => diag([o, -o, o, -o]),
        (1, b) => {
            // U_b(C): rows (0,1,0,0), (w,0,0,0), (0,0,0,u), (0,0,v,0).
            let (w, u, v) = [(o, o, o), (I, -o, -I), (-I, -o, I), (-o, o, -o)][b];
            #[rustfmt::skip]
            let e = vec![z, o, z, z,
                         w, z, z, z,
                         z, z, z, u,
                         z, z, v, z];
            complex(4, e)
        }
        (2, 0) => block_anti([[o, z], [z, o]], 1.0),
        (2, 1) => block_anti([[o, z], [z, I]], -1.0),
        (2, 2) => block_anti([[o, z], [z, -I]], -1.0),
        (2, 3) => block_anti([[o, z], [z, -o]], 1.0),
        (3, 0) => block_anti([[z, o], [o, z]], 1.0),
        (3, 1) => block_anti([[z, o], [I, z]], -1.0),
        (3, 2) => block_anti([[z, o], [-I, z]], -1.0),
        _ => block_anti([[z, o], [-o, z]], 1.0),
    })
}

pub fn charlie_name(a_out: usize, b_out: usize) -> String {
    const DIAG: [&str; 4] = ["I", "diag(1,i,-1,-i)", "diag(1,-i,-1,i)", "diag(1,-1,1,-1)"];
    const SIGN: [&str; 4] = ["", "-", "-", ""];
    match a_out {
        0 => DIAG[b_out].to_string(),
        1 => format!("U{b_out}(C)"),
        _ => {
            let block = if a_out == 2 { b_out + 1 } else { b_out + 5 };
            format!("[[0,A{block}],[{}A{block},0]]", SIGN[b_out])
        }
    }
}

/// Builds a phased permutation `M` with `M·collapsed = target`.
///
/// Target index `k` takes the lowest unused collapsed index whose magnitude
/// matches within [`MAGNITUDE_TOL`]; that entry is `target_k / collapsed_j`
/// rescaled to unit modulus, or 1 where both amplitudes vanish.
pub fn derive_monomial_correction(collapsed: &PureState, target: &PureState) -> Result<UnitaryMatrix> {
    let d = target.total_dim();
    if collapsed.total_dim() != d {
        return Err(RspError::DimensionMismatch {
            expected: d,
            got: collapsed.total_dim(),
        });
    }
    let (c, t) = (collapsed.amps(), target.amps());
    let mut used = vec![false; d];
    let mut m = CMatrix::zeros(d);
    for k in 0..d {
        let tk = t[k].norm();
        let j = (0..d)
            .find(|&j| !used[j] && (c[j].norm() - tk).abs() <= MAGNITUDE_TOL)
            .ok_or(RspError::NoMonomialCorrection)?;
        used[j] = true;
        let entry = if tk > MAGNITUDE_TOL && c[j].norm() > MAGNITUDE_TOL {
            let ratio = t[k] / c[j];
            ratio / ratio.norm()
        } else {
            ONE
        };
        m.set(k, j, entry);
    }
    let u = UnitaryMatrix::new(m)?;
    let fixed = apply_local(&u, 0, &flatten(collapsed))?;
    if fidelity(&fixed, &flatten(target))? < 1.0 - COMPARISON_TOL {
        return Err(RspError::NoMonomialCorrection);
    }
    Ok(u)
}

/// View a state as a single subsystem of its total dimension.
fn flatten(s: &PureState) -> PureState {
    PureState::new(vec![s.total_dim()], s.amps().to_vec()).expect("already normalized")
}

/// Applies `u` to a single-subsystem state and returns the fidelity with `target`.
pub fn correction_fidelity(u: &UnitaryMatrix, collapsed: &PureState, target: &PureState) -> Result<f64> {
    let fixed = apply_local(u, 0, &flatten(collapsed))?;
    fidelity(&fixed, target)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditProtocol {
    Qubit,
    D4,
}

/// Audit result for one outcome pair across all samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairAudit {
    pub a_out: usize,
    pub b_out: usize,
    pub table_name: String,
    pub table_matrix: UnitaryMatrix,
    /// Oracle correction at the first sample.
    pub oracle_matrix: UnitaryMatrix,
    /// Table matrix reached fidelity ≥ 1 − 1e-12 on every sample.
    pub agrees: bool,
    pub max_fidelity_deficit: f64,
    pub oracle_max_fidelity_deficit: f64,
    /// The oracle produced the same matrix (up to global phase) for every sample.
    pub oracle_parameter_independent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub a_out: usize,
    pub b_out: usize,
    pub parameters: Parameters,
    pub table_fidelity: f64,
    pub oracle_matrix: UnitaryMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectionReport {
    pub protocol: AuditProtocol,
    pub samples: usize,
    pub seed: u64,
    pub pairs: Vec<PairAudit>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CorrectionReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Replays every outcome branch over `samples` seeded parameter sets and
/// checks the reference correction against the oracle.
pub fn audit_tables(protocol: AuditProtocol, samples: usize, seed: u64) -> Result<CorrectionReport> {
    if samples == 0 {
        return Err(RspError::NoSamples);
    }
    let mut rng = sampling::seeded_rng(seed);
    let mut pairs: Vec<PairAudit> = Vec::new();
    let mut discrepancies = Vec::new();
    for _ in 0..samples {
        let (params, branches) = match protocol {
            AuditProtocol::Qubit => {
                let a = sampling::random_angles2(&mut rng);
                let branches = protocol::qubit_branches(&a)?
                    .into_iter()
                    .map(|b| (b.a_out, b.b_out, b.collapsed))
                    .collect::<Vec<_>>();
                (Parameters::Qubit(a), branches)
            }
            AuditProtocol::D4 => {
                let params = Parameters::D4(sampling::random_angles4(&mut rng));
                let branches = protocol::qudit_branches(&params)?
                    .into_iter()
                    .map(|b| (b.a_out, b.b_out, b.collapsed))
                    .collect::<Vec<_>>();
                (params, branches)
            }
        };
        let target = params.target();
        for (a_out, b_out, collapsed) in branches {
            let (table, name) = match protocol {
                AuditProtocol::Qubit => (table1_correction(a_out, b_out)?, table1_name(a_out, b_out).to_string()),
                AuditProtocol::D4 => (charlie_correction(a_out, b_out)?, charlie_name(a_out, b_out)),
            };
            let table_fid = correction_fidelity(&table, &collapsed, &target)?;
            let oracle = derive_monomial_correction(&collapsed, &target)?;
            let oracle_fid = correction_fidelity(&oracle, &collapsed, &target)?;
            let agrees = table_fid >= 1.0 - COMPARISON_TOL;
            if !agrees {
                discrepancies.push(Discrepancy {
                    a_out,
                    b_out,
                    parameters: params,
                    table_fidelity: table_fid,
                    oracle_matrix: oracle.clone(),
                });
            }
            match pairs.iter_mut().find(|p| p.a_out == a_out && p.b_out == b_out) {
                Some(p) => {
                    p.agrees &= agrees;
                    p.max_fidelity_deficit = p.max_fidelity_deficit.max(1.0 - table_fid);
                    p.oracle_max_fidelity_deficit = p.oracle_max_fidelity_deficit.max(1.0 - oracle_fid);
                    p.oracle_parameter_independent &= oracle.equal_up_to_phase(&p.oracle_matrix, 1e-9);
                }
                None => pairs.push(PairAudit {
                    a_out,
                    b_out,
                    table_name: name,
                    table_matrix: table,
                    oracle_matrix: oracle,
                    agrees,
                    max_fidelity_deficit: 1.0 - table_fid,
                    oracle_max_fidelity_deficit: 1.0 - oracle_fid,
                    oracle_parameter_independent: true,
                }),
            }
        }
    }
    pairs.sort_by_key(|p| (p.a_out, p.b_out));
    Ok(CorrectionReport {
        protocol,
        samples,
        seed,
        pairs,
        discrepancies,
    })
}
