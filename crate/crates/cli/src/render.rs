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

//! Human-readable renderings.

use std::fmt::Write;

use rsp_core::bases::BasisCheckReport;
use rsp_core::protocol::{ProtocolTrace, StageOrderReport};
use rsp_core::CorrectionReport;

pub fn traces(traces: &[ProtocolTrace]) -> String {
    let mut out = String::new();
    let corr_width = traces
        .iter()
        .flat_map(|t| &t.corrections)
        .map(|c| c.name.len())
        .max()
        .unwrap_or(0)
        .max("corrections".len());
    let _ = writeln!(
        out,
        "{:<10} {:<14} {:<w$}  {:>20}  {:>4}",
        "outcomes",
        "probability",
        "corrections",
        "fidelity",
        "bits",
        w = corr_width + 8
    );
    for t in traces {
        let outcomes = t.outcomes.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",");
        let corrections = t
            .corrections
            .iter()
            .map(|c| format!("{:?}:{}", c.party, c.name).to_lowercase())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            "{:<10} {:<14.12} {:<w$}  {:>20.17}  {:>4}",
            outcomes,
            t.probability,
            corrections,
            t.fidelity,
            t.total_bits,
            w = corr_width + 8
        );
    }
    out
}

pub fn audit(r: &CorrectionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "audit {:?}: {} samples, seed {}", r.protocol, r.samples, r.seed);
    for p in &r.pairs {
        let _ = writeln!(
            out,
            "({}, {})  {:<22} {:<9} table deficit {:.1e}  oracle deficit {:.1e}",
            p.a_out,
            p.b_out,
            p.table_name,
            if p.agrees { "agrees" } else { "FLAGGED" },
            p.max_fidelity_deficit,
            p.oracle_max_fidelity_deficit,
        );
    }
    let _ = writeln!(out, "discrepancies: {}", r.discrepancies.len());
    out
}

pub fn bases(r: &BasisCheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "d = {}: {} samples, seed {}", r.d, r.samples, r.seed);
    for (stage, checks) in [("magnitude", &r.theta_stage), ("phase", &r.phase_stage)] {
        for c in checks {
            let _ = writeln!(
                out,
                "{stage:<9} {:<34} {:<4} max deviation {:.1e}{}",
                c.stage,
                if c.passed() { "ok" } else { "FAIL" },
                c.max_deviation,
                c.first_error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default(),
            );
        }
    }
    out
}

pub fn stage_order(r: &StageOrderReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "swapped order at theta = {}, phi = {}", r.parameters.theta, r.parameters.phi);
    for b in &r.branches {
        let _ = writeln!(
            out,
            "phase {} theta {}  p = {:.4}  best fixed {:<16} {:.6}  oracle {:.6}",
            b.phase_outcome, b.theta_outcome, b.probability, b.best_fixed_name, b.best_fixed_fidelity, b.oracle_fidelity
        );
    }
    let _ = writeln!(out, "fixed set sufficient: {}", r.fixed_set_sufficient);
    let _ = writeln!(out, "oracle sufficient: {}", r.oracle_sufficient);
    out
}
