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

//! Exact simulation of two-step deterministic remote state preparation over
//! GHZ channels.
//!
//! Covers the two-party qubit protocol and the three-party d=4 and d=8 qudit
//! protocols, together with the measurement bases they use, the reference
//! correction tables, and a constructive monomial-correction oracle that
//! audits them.

pub mod bases;
pub mod corrections;
pub mod error;
pub mod linalg;
pub mod protocol;
pub mod sampling;
pub mod state;

pub use bases::Basis;
pub use corrections::{CorrectionReport, UnitaryMatrix};
pub use error::{Result, RspError};
pub use linalg::C64;
pub use protocol::{Parameters, ProtocolId, ProtocolTrace, RunMode};
pub use state::{Angles2, Angles4, Angles8, OutcomeBranch, PureState};
