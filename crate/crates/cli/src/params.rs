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

//! Parameter sources for `rsp run`: flags or a JSON parameter file.

use std::path::Path;

use serde::Deserialize;

use rsp_core::protocol::{Parameters, ProtocolId};
use rsp_core::{Angles2, Angles4, Angles8};

use crate::CliError;

/// Parameter file contents. Only the keys for the chosen protocol are read.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub gamma3: Option<f64>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub alpha3: Option<f64>,
    pub thetas: Option<Vec<f64>>,
    pub phis: Option<Vec<f64>>,
}

impl ParamFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad parameter file {}: {e}", path.display())))
    }

    /// Keys present in `other` override ours.
    pub fn merge(self, other: ParamFile) -> ParamFile {
        ParamFile {
            theta: other.theta.or(self.theta),
            phi: other.phi.or(self.phi),
            gamma1: other.gamma1.or(self.gamma1),
            gamma2: other.gamma2.or(self.gamma2),
            gamma3: other.gamma3.or(self.gamma3),
            alpha1: other.alpha1.or(self.alpha1),
            alpha2: other.alpha2.or(self.alpha2),
            alpha3: other.alpha3.or(self.alpha3),
            thetas: other.thetas.or(self.thetas),
            phis: other.phis.or(self.phis),
        }
    }

    pub fn into_parameters(self, protocol: ProtocolId) -> Result<Parameters, CliError> {
        fn need(name: &str, v: Option<f64>) -> Result<f64, CliError> {
            v.ok_or_else(|| CliError::Usage(format!("missing parameter `{name}`")))
        }
        fn need8(name: &str, v: Option<Vec<f64>>) -> Result<[f64; 8], CliError> {
            let v = v.ok_or_else(|| CliError::Usage(format!("missing parameter `{name}`")))?;
            <[f64; 8]>::try_from(v.as_slice())
                .map_err(|_| CliError::Usage(format!("`{name}` needs exactly 8 values, got {}", v.len())))
        }
        let params = match protocol {
            ProtocolId::Qubit => {
                Parameters::Qubit(Angles2::new(need("theta", self.theta)?, need("phi", self.phi)?)?)
            }
            ProtocolId::D4 => Parameters::D4(Angles4::new(
                [
                    need("gamma1", self.gamma1)?,
                    need("gamma2", self.gamma2)?,
                    need("gamma3", self.gamma3)?,
                ],
                [
                    need("alpha1", self.alpha1)?,
                    need("alpha2", self.alpha2)?,
                    need("alpha3", self.alpha3)?,
                ],
            )?),
            ProtocolId::D8 => Parameters::D8(Angles8::new(
                need8("thetas", self.thetas)?,
                need8("phis", self.phis)?,
            )?),
        };
        Ok(params)
    }
}
