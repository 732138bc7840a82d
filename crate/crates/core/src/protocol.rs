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

//! Protocol runs as parties exchanging classical messages.
//!
//! Qubit protocol: Alice holds particles 1 and 2 of a three-qubit GHZ state
//! and Bob holds particle 3. Alice measures particle 1 in the magnitude basis,
//! picks the phase basis for particle 2 from that outcome, and sends each
//! outcome to Bob as its own 1-bit message.
//!
//! Qudit protocol (d = 4 or 8): Alice holds A, Bob holds B, Charlie holds C.
//! Alice measures A and messages Bob; Bob realigns B with a signed
//! permutation keyed on her outcome, measures B in the phase basis and
//! messages Charlie, who applies the final correction.
//!
//! Receivers' final corrections come from [`derive_monomial_correction`];
//! the reference tables are only exercised by the audit.

use std::collections::VecDeque;

use rand::Rng;
use serde::Serialize;

use crate::bases::{self, alice_basis_d2, phase_basis, xi_basis, Basis, THETA_PATTERN_D8};
use crate::corrections::{
    self, bob_intermediate_name, bob_intermediate_unitary, charlie_correction, charlie_name,
    derive_monomial_correction, pauli_x, pauli_z, table1_correction, table1_name,
};
use crate::error::{Result, RspError};
use crate::linalg::UnitaryMatrix;
use crate::sampling;
use crate::state::{
    apply_local, fidelity, from_angles2, from_angles4, from_angles8, ghz, measure_branches, Angles2,
    Angles4, Angles8, OutcomeBranch, PureState, COMPARISON_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolId {
    Qubit,
    D4,
    D8,
}

impl ProtocolId {
    pub fn dim(self) -> usize {
        match self {
            ProtocolId::Qubit => 2,
            ProtocolId::D4 => 4,
            ProtocolId::D8 => 8,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolId::Qubit => "qubit",
            ProtocolId::D4 => "d4",
            ProtocolId::D8 => "d8",
        }
    }

    /// Routes the protocol's classical channel carries, in delivery order.
    fn routes(self) -> &'static [(PartyId, PartyId)] {
        match self {
            ProtocolId::Qubit => &[(PartyId::Alice, PartyId::Bob), (PartyId::Alice, PartyId::Bob)],
            _ => &[(PartyId::Alice, PartyId::Bob), (PartyId::Bob, PartyId::Charlie)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartyId {
    Alice,
    Bob,
    Charlie,
}

/// Number of bits needed to name one of `d` outcomes.
pub fn bits_for(d: usize) -> u32 {
    usize::BITS - (d.max(1) - 1).leading_zeros()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalMessage {
    pub from: PartyId,
    pub to: PartyId,
    pub outcome: usize,
    pub bit_cost: u32,
}

/// Target parameters for any of the three protocols.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Parameters {
    Qubit(Angles2),
    D4(Angles4),
    D8(Angles8),
}

impl Parameters {
    pub fn protocol(&self) -> ProtocolId {
        match self {
            Parameters::Qubit(_) => ProtocolId::Qubit,
            Parameters::D4(_) => ProtocolId::D4,
            Parameters::D8(_) => ProtocolId::D8,
        }
    }

    /// The state the receiver should end up holding.
    pub fn target(&self) -> PureState {
        match self {
            Parameters::Qubit(a) => from_angles2(a),
            Parameters::D4(a) => from_angles4(a),
            Parameters::D8(a) => from_angles8(a),
        }
    }

    fn phases(&self) -> Vec<f64> {
        match self {
            Parameters::Qubit(a) => vec![0.0, a.phi],
            Parameters::D4(a) => a.phases().to_vec(),
            Parameters::D8(a) => a.phases().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppliedCorrection {
    pub party: PartyId,
    pub name: String,
    pub matrix: UnitaryMatrix,
}

/// Full record of one protocol branch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolTrace {
    pub protocol: ProtocolId,
    pub parameters: Parameters,
    /// `[first-stage outcome, second-stage outcome]`.
    pub outcomes: Vec<usize>,
    /// Joint Born probability of the branch.
    pub probability: f64,
    pub messages: Vec<ClassicalMessage>,
    pub corrections: Vec<AppliedCorrection>,
    pub final_state: PureState,
    pub fidelity: f64,
    pub total_bits: u32,
}

impl ProtocolTrace {
    pub fn succeeded(&self) -> bool {
        self.fidelity >= 1.0 - COMPARISON_TOL
    }
}

pub fn comm_cost(t: &ProtocolTrace) -> u32 {
    t.messages.iter().map(|m| m.bit_cost).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// One branch per measurement, drawn by Born probability.
    Sample(u64),
    /// Every non-degenerate branch combination.
    Enumerate,
}

/// Ordered classical channel restricted to a protocol's routes.
#[derive(Debug, Clone)]
struct Channel {
    routes: &'static [(PartyId, PartyId)],
    d: usize,
    in_flight: VecDeque<ClassicalMessage>,
    log: Vec<ClassicalMessage>,
}

impl Channel {
    fn new(protocol: ProtocolId) -> Self {
        Channel {
            routes: protocol.routes(),
            d: protocol.dim(),
            in_flight: VecDeque::new(),
            log: Vec::new(),
        }
    }

    fn send(&mut self, from: PartyId, to: PartyId, outcome: usize) {
        assert_eq!(
            self.routes.get(self.log.len()),
            Some(&(from, to)),
            "message {} from {from:?} to {to:?} is not on the protocol's schedule",
            self.log.len()
        );
        let msg = ClassicalMessage {
            from,
            to,
            outcome,
            bit_cost: bits_for(self.d),
        };
        self.log.push(msg.clone());
        self.in_flight.push_back(msg);
    }

    fn receive(&mut self, party: PartyId) -> ClassicalMessage {
        let msg = self.in_flight.pop_front().expect("receive with nothing in flight");
        assert_eq!(msg.to, party, "message delivered to the wrong party");
        msg
    }
}

/// Picks the branches to follow at one measurement event.
fn select(branches: Vec<OutcomeBranch>, mode: RunMode, event: u64) -> Vec<OutcomeBranch> {
    let live = branches.into_iter().filter(|b| !b.is_degenerate());
    match mode {
        RunMode::Enumerate => live.collect(),
        RunMode::Sample(seed) => {
            let live: Vec<_> = live.collect();
            let total: f64 = live.iter().map(|b| b.probability).sum();
            let u = sampling::event_rng(seed, event).random::<f64>() * total;
            let mut acc = 0.0;
            let idx = live
                .iter()
                .position(|b| {
                    acc += b.probability;
                    u < acc
                })
                .unwrap_or(live.len() - 1);
            live.into_iter().skip(idx).take(1).collect()
        }
    }
}

fn collapsed(b: OutcomeBranch) -> PureState {
    b.collapsed.expect("selected branches are non-degenerate")
}

/// Bob's particle after both of Alice's qubit measurements, before correction.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitBranch {
    pub a_out: usize,
    pub b_out: usize,
    pub probability: f64,
    pub collapsed: PureState,
}

/// Alice's second-measurement basis given her first outcome.
pub fn qubit_second_basis(a: &Angles2, first_outcome: usize) -> Result<Basis> {
    if first_outcome == 0 {
        phase_basis(2, &[0.0, a.phi])
    } else {
        xi_basis(a.phi)
    }
}

fn walk_qubit(a: &Angles2, mode: RunMode, channels: &mut Vec<Channel>) -> Result<Vec<QubitBranch>> {
    let g = ghz(3, 2)?;
    let mut out = Vec::new();
    for b1 in select(measure_branches(&g, 0, &alice_basis_d2(a.theta)?)?, mode, 0) {
        let (a_out, p1) = (b1.outcome, b1.probability);
        let rest = collapsed(b1);
        let second = qubit_second_basis(a, a_out)?;
        for b2 in select(measure_branches(&rest, 0, &second)?, mode, 1) {
            let mut ch = Channel::new(ProtocolId::Qubit);
            ch.send(PartyId::Alice, PartyId::Bob, a_out);
            ch.send(PartyId::Alice, PartyId::Bob, b2.outcome);
            channels.push(ch);
            out.push(QubitBranch {
                a_out,
                b_out: b2.outcome,
                probability: p1 * b2.probability,
                collapsed: collapsed(b2),
            });
        }
    }
    Ok(out)
}

/// Every branch of the qubit protocol with Bob's uncorrected particle.
pub fn qubit_branches(a: &Angles2) -> Result<Vec<QubitBranch>> {
    walk_qubit(a, RunMode::Enumerate, &mut Vec::new())
}

pub fn run_qubit_rsp(a: &Angles2, mode: RunMode) -> Result<Vec<ProtocolTrace>> {
    let target = from_angles2(a);
    let mut channels = Vec::new();
    let branches = walk_qubit(a, mode, &mut channels)?;
    branches
        .into_iter()
        .zip(channels)
        .map(|(b, mut ch)| {
            // Bob acts only once both outcomes have arrived.
            let first = ch.receive(PartyId::Bob);
            let second = ch.receive(PartyId::Bob);
            debug_assert_eq!((first.outcome, second.outcome), (b.a_out, b.b_out));
            let u = derive_monomial_correction(&b.collapsed, &target)?;
            let table = table1_correction(first.outcome, second.outcome)?;
            let name = if u.equal_up_to_phase(&table, 1e-9) {
                table1_name(first.outcome, second.outcome).to_string()
            } else {
                "oracle".to_string()
            };
            let final_state = apply_local(&u, 0, &b.collapsed)?;
            Ok(finish(
                Parameters::Qubit(*a),
                vec![b.a_out, b.b_out],
                b.probability,
                ch.log,
                vec![AppliedCorrection {
                    party: PartyId::Bob,
                    name,
                    matrix: u,
                }],
                final_state,
                &target,
            ))
        })
        .collect()
}

fn finish(
    parameters: Parameters,
    outcomes: Vec<usize>,
    probability: f64,
    messages: Vec<ClassicalMessage>,
    corrections: Vec<AppliedCorrection>,
    final_state: PureState,
    target: &PureState,
) -> ProtocolTrace {
    let fid = fidelity(&final_state, target).expect("same dimension");
    let total_bits = messages.iter().map(|m| m.bit_cost).sum();
    ProtocolTrace {
        protocol: parameters.protocol(),
        parameters,
        outcomes,
        probability,
        messages,
        corrections,
        final_state,
        fidelity: fid,
        total_bits,
    }
}

/// One branch of the three-party protocol before Charlie's correction.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditBranch {
    pub a_out: usize,
    pub b_out: usize,
    pub probability: f64,
    /// B⊗C after Bob's realigning unitary, before his measurement.
    pub realigned: PureState,
    pub bob_unitary: UnitaryMatrix,
    /// Charlie's particle before correction.
    pub collapsed: PureState,
}

/// Alice's magnitude-stage basis for the qudit protocols.
pub fn qudit_alice_basis(params: &Parameters) -> Result<Basis> {
    match params {
        Parameters::D4(a) => bases::alice_basis_d4(a.gamma1, a.gamma2, a.gamma3),
        Parameters::D8(a) => bases::alice_basis_d8(&a.thetas)
            .map_err(|e| RspError::StageUnavailable(format!("d=8 magnitude-stage basis: {e}"))),
        Parameters::Qubit(_) => Err(RspError::UnsupportedDimension(2)),
    }
}

/// Bob's realigning unitary after Alice's outcome.
pub fn qudit_bob_unitary(protocol: ProtocolId, a_out: usize) -> Result<UnitaryMatrix> {
    match protocol {
        ProtocolId::D4 => bob_intermediate_unitary(a_out),
        ProtocolId::D8 => bases::realigning_unitary(&THETA_PATTERN_D8, a_out),
        ProtocolId::Qubit => Err(RspError::UnsupportedDimension(2)),
    }
}

fn walk_qudit(params: &Parameters, mode: RunMode, channels: &mut Vec<Channel>) -> Result<Vec<QuditBranch>> {
    let protocol = params.protocol();
    let d = protocol.dim();
    let alice = qudit_alice_basis(params)?;
    let bob_basis = phase_basis(d, &params.phases())?;
    let g = ghz(3, d)?;
    let mut out = Vec::new();
    for b1 in select(measure_branches(&g, 0, &alice)?, mode, 0) {
        let mut ch = Channel::new(protocol);
        ch.send(PartyId::Alice, PartyId::Bob, b1.outcome);
        let (p1, rest) = (b1.probability, collapsed(b1));
        let a_out = ch.receive(PartyId::Bob).outcome;
        let w = qudit_bob_unitary(protocol, a_out)?;
        let realigned = apply_local(&w, 0, &rest)?;
        for b2 in select(measure_branches(&realigned, 0, &bob_basis)?, mode, 1) {
            let mut ch = ch.clone();
            ch.send(PartyId::Bob, PartyId::Charlie, b2.outcome);
            channels.push(ch);
            out.push(QuditBranch {
                a_out,
                b_out: b2.outcome,
                probability: p1 * b2.probability,
                realigned: realigned.clone(),
                bob_unitary: w.clone(),
                collapsed: collapsed(b2),
            });
        }
    }
    Ok(out)
}

/// Every branch of the d=4 or d=8 protocol.
pub fn qudit_branches(params: &Parameters) -> Result<Vec<QuditBranch>> {
    walk_qudit(params, RunMode::Enumerate, &mut Vec::new())
}

pub fn run_qudit_rsp(params: &Parameters, mode: RunMode) -> Result<Vec<ProtocolTrace>> {
    let protocol = params.protocol();
    let target = params.target();
    let mut channels = Vec::new();
    let branches = walk_qudit(params, mode, &mut channels)?;
    branches
        .into_iter()
        .zip(channels)
        .map(|(b, mut ch)| {
            let b_out = ch.receive(PartyId::Charlie).outcome;
            let u = derive_monomial_correction(&b.collapsed, &target)?;
            let charlie_label = match protocol {
                ProtocolId::D4 if u.equal_up_to_phase(&charlie_correction(b.a_out, b_out)?, 1e-9) => {
                    charlie_name(b.a_out, b_out)
                }
                _ => "oracle".to_string(),
            };
            let bob_label = match protocol {
                ProtocolId::D4 => bob_intermediate_name(b.a_out),
                _ if b.a_out == 0 => "I".to_string(),
                _ => format!("W{}", b.a_out),
            };
            let final_state = apply_local(&u, 0, &b.collapsed)?;
            Ok(finish(
                *params,
                vec![b.a_out, b_out],
                b.probability,
                ch.log,
                vec![
                    AppliedCorrection {
                        party: PartyId::Bob,
                        name: bob_label,
                        matrix: b.bob_unitary,
                    },
                    AppliedCorrection {
                        party: PartyId::Charlie,
                        name: charlie_label,
                        matrix: u,
                    },
                ],
                final_state,
                &target,
            ))
        })
        .collect()
}

/// Dispatches on the parameter kind.
pub fn run(params: &Parameters, mode: RunMode) -> Result<Vec<ProtocolTrace>> {
    match params {
        Parameters::Qubit(a) => run_qubit_rsp(a, mode),
        _ => run_qudit_rsp(params, mode),
    }
}

/// The fixed, parameter-independent qubit correction set.
pub fn fixed_correction_set() -> [(&'static str, UnitaryMatrix); 4] {
    [
        ("I", UnitaryMatrix::identity(2)),
        ("sigma_x", pauli_x()),
        ("sigma_z", pauli_z()),
        ("sigma_z*sigma_x", pauli_z().compose(&pauli_x())),
    ]
}

/// Best fidelity reachable from `collapsed` with the fixed set, and the matrix achieving it.
pub fn best_fixed_correction(collapsed: &PureState, target: &PureState) -> Result<(&'static str, f64)> {
    let mut best = ("I", f64::NEG_INFINITY);
    for (name, u) in fixed_correction_set() {
        let f = corrections::correction_fidelity(&u, collapsed, target)?;
        if f > best.1 {
            best = (name, f);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwappedBranch {
    /// Outcome of the phase-basis measurement on particle 1.
    pub phase_outcome: usize,
    /// Outcome of the magnitude-basis measurement on particle 2.
    pub theta_outcome: usize,
    pub probability: f64,
    pub best_fixed_name: &'static str,
    pub best_fixed_fidelity: f64,
    pub oracle_fidelity: f64,
    pub oracle_matrix: Option<UnitaryMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageOrderReport {
    pub parameters: Angles2,
    pub branches: Vec<SwappedBranch>,
    pub min_best_fixed_fidelity: f64,
    /// Every branch is fixable by some member of the fixed set.
    pub fixed_set_sufficient: bool,
    /// Every branch is fixable by an oracle monomial.
    pub oracle_sufficient: bool,
}

/// Runs the qubit protocol with the two measurement stages swapped: the
/// phase basis on particle 1 first, then the magnitude basis on particle 2.
pub fn stage_order_experiment(a: &Angles2) -> Result<StageOrderReport> {
    let target = from_angles2(a);
    let g = ghz(3, 2)?;
    let mut branches = Vec::new();
    for b1 in select(measure_branches(&g, 0, &phase_basis(2, &[0.0, a.phi])?)?, RunMode::Enumerate, 0) {
        let (phase_outcome, p1) = (b1.outcome, b1.probability);
        let rest = collapsed(b1);
        for b2 in select(measure_branches(&rest, 0, &alice_basis_d2(a.theta)?)?, RunMode::Enumerate, 1) {
            let (theta_outcome, p2) = (b2.outcome, b2.probability);
            let c = collapsed(b2);
            let (best_fixed_name, best_fixed_fidelity) = best_fixed_correction(&c, &target)?;
            let oracle = derive_monomial_correction(&c, &target).ok();
            let oracle_fidelity = match &oracle {
                Some(u) => corrections::correction_fidelity(u, &c, &target)?,
                None => 0.0,
            };
            branches.push(SwappedBranch {
                phase_outcome,
                theta_outcome,
                probability: p1 * p2,
                best_fixed_name,
                best_fixed_fidelity,
                oracle_fidelity,
                oracle_matrix: oracle,
            });
        }
    }
    let min_best_fixed_fidelity = branches
        .iter()
        .map(|b| b.best_fixed_fidelity)
        .fold(f64::INFINITY, f64::min);
    Ok(StageOrderReport {
        parameters: *a,
        fixed_set_sufficient: min_best_fixed_fidelity >= 1.0 - COMPARISON_TOL,
        oracle_sufficient: branches.iter().all(|b| b.oracle_fidelity >= 1.0 - COMPARISON_TOL),
        min_best_fixed_fidelity,
        branches,
    })
}
