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

//! Seeded parameter sampling.
//!
//! All randomness comes from ChaCha20, which is platform-stable for a given
//! seed. Protocol runs draw measurement event `k` from stream `k` of the root
//! seed (`k = 0` for the first-stage measurement, `k = 1` for the second).

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, C64};
use crate::state::{Angles2, Angles4, Angles8};

pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Generator for measurement event `event` under root seed `seed`.
pub fn event_rng(seed: u64, event: u64) -> ChaCha20Rng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(event);
    rng
}

pub fn random_angles2<R: Rng>(rng: &mut R) -> Angles2 {
    Angles2::new(rng.random_range(0.0..=PI), rng.random_range(0.0..TAU)).expect("in range")
}

pub fn random_angles4<R: Rng>(rng: &mut R) -> Angles4 {
    let gammas = std::array::from_fn(|_| rng.random_range(0.0..=FRAC_PI_2));
    let alphas = std::array::from_fn(|_| rng.random_range(0.0..TAU));
    Angles4::new(gammas, alphas).expect("in range")
}

/// Magnitudes uniform on the real 7-sphere, phases uniform with `φ₀ = 0`.
pub fn random_angles8<R: Rng>(rng: &mut R) -> Angles8 {
    let x = random_real_unit(rng, 8);
    let thetas = std::array::from_fn(|i| x[i].clamp(-1.0, 1.0).acos());
    let mut phis: [f64; 8] = std::array::from_fn(|_| rng.random_range(0.0..TAU));
    phis[0] = 0.0;
    Angles8::new(thetas, phis).expect("unit magnitudes")
}

fn random_real_unit<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Haar-ish random unit vector in ℂ^d.
pub fn random_unit_vector<R: Rng>(rng: &mut R, d: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let n = crate::linalg::norm_sqr(&v).sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Random monomial matrix. With `grid = Some(n)` every phase is a multiple of 2π/n.
pub fn random_monomial<R: Rng>(rng: &mut R, d: usize, grid: Option<usize>) -> CMatrix {
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut m = CMatrix::zeros(d);
    for (col, &row) in perm.iter().enumerate() {
        let angle = match grid {
            Some(n) => TAU * rng.random_range(0..n) as f64 / n as f64,
            None => rng.random_range(0.0..TAU),
        };
        m.set(row, col, C64::from_polar(1.0, angle));
    }
    m
}
