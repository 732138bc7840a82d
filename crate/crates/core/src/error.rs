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

use thiserror::Error;

/// Errors raised by state construction, measurement, and protocol runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RspError {
    #[error("amplitude vector has length {got}, expected {expected} for dims {dims:?}")]
    LengthMismatch {
        dims: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("subsystem dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("state vector is zero")]
    ZeroVector,
    #[error("state norm {0} is outside tolerance of 1")]
    NotNormalized(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subsystem {index} out of range for a {count}-subsystem register")]
    SubsystemOutOfRange { index: usize, count: usize },
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("basis is not orthonormal (max Gram deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("{name} = {value} is outside {range}")]
    InvalidAngle {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("outcome index {index} out of range 0..{bound}")]
    OutcomeOutOfRange { index: usize, bound: usize },
    #[error("no monomial correction exists: amplitude magnitudes do not match")]
    NoMonomialCorrection,
    #[error("reference phase must be 0, got {0}")]
    NonZeroReferencePhase(f64),
    #[error("protocol stage unavailable: {0}")]
    StageUnavailable(String),
    #[error("sample count must be at least 1")]
    NoSamples,
}

pub type Result<T> = std::result::Result<T, RspError>;
