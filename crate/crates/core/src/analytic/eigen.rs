// SPDX-License-Identifier: Apache-2.0

//! Eigenmodes of the normalized capacitance matrix and the single-line mode
//! used by the buffered models.

use std::f64::consts::PI;

use crate::bus::BusSpec;

/// One eigenpair of `C/c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenmode {
    pub eigenvalue: f64,
    /// Unit-norm eigenvector.
    pub vector: Vec<f64>,
}

/// Eigenpairs of the `m × m` matrix `I + λ·L`, where `L` is the Laplacian of
/// a path graph (diagonal `1+λ, 1+2λ, …, 1+2λ, 1+λ`, off-diagonal `−λ`).
///
/// The path Laplacian is diagonalized by the DCT-II basis, so both the
/// eigenvalues `1 + λ(2 − 2cos(kπ/m))` and the vectors are closed form.
/// Returned in ascending eigenvalue order.
pub fn eigenmodes(m: usize, lambda: f64) -> Vec<Eigenmode> {
    (0..m)
        .map(|k| {
            let theta = k as f64 * PI / m as f64;
            let eigenvalue = 1.0 + lambda * (2.0 - 2.0 * theta.cos());
            let mut vector: Vec<f64> = (0..m).map(|j| (theta * (j as f64 + 0.5)).cos()).collect();
            let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
            vector.iter_mut().for_each(|x| *x /= norm);
            // Fix the sign so the first nonzero entry is positive.
            if let Some(first) = vector.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    vector.iter_mut().for_each(|x| *x = -*x);
                }
            }
            Eigenmode { eigenvalue, vector }
        })
        .collect()
}

/// Contribution of every mode to the swing of wire `observed`:
/// `w_k = (e_k · Δ)·e_k[observed]`. The weights sum to `Δ[observed]`.
pub fn modal_weights(modes: &[Eigenmode], delta: &[f64], observed: usize) -> Vec<f64> {
    modes
        .iter()
        .map(|mode| {
            let projection: f64 = mode.vector.iter().zip(delta).map(|(e, d)| e * d).sum();
            projection * mode.vector[observed]
        })
        .collect()
}

/// Driver and load sizes relative to the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BufferRatios {
    /// R_S / R.
    pub r_t: f64,
    /// C_L / C.
    pub c_t: f64,
    /// C_L / (p·C) for the mode being evaluated.
    pub c_t_scaled: f64,
}

impl BufferRatios {
    pub fn for_mode(spec: &BusSpec, p: f64) -> Self {
        let c_t = spec.load_capacitance() / spec.total_capacitance();
        BufferRatios { r_t: spec.driver_resistance() / spec.total_resistance(), c_t, c_t_scaled: c_t / p }
    }
}

/// Amplitude factor `B` and time constant of the slowest spatial term of a
/// driven, loaded line whose capacitance is scaled by `p`.
///
/// `B = 1.01(R_T + C_T' + 1)/(R_T + C_T' + π/4)` and
/// `τ = p·R·C·(R_T·C_T' + R_T + C_T' + (2/π)²)/1.04` with `C_T' = C_L/(pC)`.
/// The constants 1.01 and 1.04 are empirical fits.
pub fn single_line_mode(p: f64, ratios: &BufferRatios, r_total: f64, c_total: f64) -> (f64, f64) {
    let rt = ratios.r_t;
    let ct = ratios.c_t_scaled;
    let b = 1.01 * (rt + ct + 1.0) / (rt + ct + PI / 4.0);
    let tau = p * r_total * c_total * (rt * ct + rt + ct + (2.0 / PI).powi(2)) / 1.04;
    (b, tau)
}

/// [`single_line_mode`] for eigenvalue `p` of `spec`.
pub fn buffered_mode(spec: &BusSpec, p: f64) -> (f64, f64) {
    single_line_mode(p, &BufferRatios::for_mode(spec, p), spec.total_resistance(), spec.total_capacitance())
}
