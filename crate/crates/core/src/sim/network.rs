// SPDX-License-Identifier: Apache-2.0

//! Segmented RC ladder of a coupled bus.
//!
//! Every wire is cut into `N` uniform π-sections. Node `(w, j)` sits at
//! position `j ∈ 0..=N` along wire `w`; position 0 is the driver end and is
//! tied to its step source through `R_S`. Unknowns are numbered
//! position-major (`j·m + w`), so coupling capacitors are adjacent in the
//! numbering and the series resistors are `m` apart; the bandwidth is `m`.

use serde::{Deserialize, Serialize};

use super::banded::{BandCholesky, BandMatrix};
use crate::bus::BusSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Network {
    spec: BusSpec,
    /// First position with an unknown: 1 when ideal drivers pin position 0.
    first_position: usize,
    conductance: BandMatrix,
    capacitance: BandMatrix,
    /// Conductance from source `w` into its first unknown node.
    source_conductance: f64,
}

impl Network {
    pub fn spec(&self) -> &BusSpec {
        &self.spec
    }

    pub fn wire_count(&self) -> usize {
        self.spec.wire_count()
    }

    pub fn segments(&self) -> usize {
        self.spec.segments()
    }

    pub fn node_count(&self) -> usize {
        self.conductance.size()
    }

    pub fn conductance(&self) -> &BandMatrix {
        &self.conductance
    }

    pub fn capacitance(&self) -> &BandMatrix {
        &self.capacitance
    }

    /// Whether drivers are ideal and position 0 is eliminated.
    pub fn ideal_drivers(&self) -> bool {
        self.first_position == 1
    }

    /// Unknown index of node `(wire, position)`, `None` for a pinned driver node.
    pub fn node(&self, wire: usize, position: usize) -> Option<usize> {
        if wire >= self.wire_count() || position > self.segments() || position < self.first_position {
            return None;
        }
        Some((position - self.first_position) * self.wire_count() + wire)
    }

    pub fn far_end(&self, wire: usize) -> usize {
        self.node(wire, self.segments()).expect("wire in range")
    }

    /// Source current injection `B·u` for per-wire source voltages `u`.
    pub fn source_vector(&self, sources: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (w, &u) in sources.iter().enumerate() {
            out[w] = self.source_conductance * u;
        }
    }

    /// DC node voltages with the sources held at `sources`.
    pub fn dc_solution(&self, sources: &[f64]) -> Result<Vec<f64>> {
        let factor = self.conductance.cholesky()?;
        let mut v = vec![0.0; self.node_count()];
        self.source_vector(sources, &mut v);
        factor.solve_in_place(&mut v);
        Ok(v)
    }

    /// Factor of `2C/h + G`, the trapezoidal system matrix for step `h`.
    pub fn system_factor(&self, h: f64) -> Result<BandCholesky> {
        self.capacitance.combine(2.0 / h, &self.conductance, 1.0).cholesky()
    }

    pub fn summary(&self) -> NetworkSummary {
        let m = self.wire_count();
        let n = self.segments();
        let len = self.spec.length();
        NetworkSummary {
            wire_count: m,
            segments: n,
            node_count: m * (n + 1),
            unknown_count: self.node_count(),
            ideal_drivers: self.ideal_drivers(),
            resistance_per_wire_ohm: self.spec.total_resistance(),
            ground_capacitance_per_wire_farad: self.spec.total_capacitance(),
            coupling_capacitance_per_pair_farad: self.spec.cc() * len,
            driver_resistance_ohm: self.spec.driver_resistance(),
            load_capacitance_farad: self.spec.load_capacitance(),
            lambda: self.spec.lambda(),
        }
    }
}

/// JSON summary of a built network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub wire_count: usize,
    pub segments: usize,
    pub node_count: usize,
    pub unknown_count: usize,
    pub ideal_drivers: bool,
    pub resistance_per_wire_ohm: f64,
    pub ground_capacitance_per_wire_farad: f64,
    pub coupling_capacitance_per_pair_farad: f64,
    pub driver_resistance_ohm: f64,
    pub load_capacitance_farad: f64,
    pub lambda: f64,
}

/// Builds the ladder. Each section carries `c·L/N` to ground and `cc·L/N` to
/// each neighbour, split equally between its two end nodes.
pub fn build_network(spec: &BusSpec) -> Result<Network> {
    let m = spec.wire_count();
    let n = spec.segments();
    let ideal = spec.driver_resistance() == 0.0;
    let first_position = usize::from(ideal);
    let positions = n + 1 - first_position;
    let size = positions * m;
    let seg = spec.length() / n as f64;
    let g_seg = 1.0 / (spec.r() * seg);
    let cg_half = spec.c() * seg / 2.0;
    let cc_half = spec.cc() * seg / 2.0;
    if !g_seg.is_finite() {
        return Err(Error::InvalidSpec("segment conductance is not finite".into()));
    }

    let index = |w: usize, j: usize| (j - first_position) * m + w;
    let mut g = BandMatrix::zeros(size, m);
    let mut c = BandMatrix::zeros(size, 1.min(m - 1));

    for w in 0..m {
        for j in first_position..n {
            g.stamp(index(w, j), index(w, j + 1), g_seg);
        }
        if ideal {
            // Resistor from the pinned driver node: only its diagonal half
            // stays in G, the other half becomes the source term.
            g.add(index(w, 1), index(w, 1), g_seg);
        } else {
            g.add(index(w, 0), index(w, 0), 1.0 / spec.driver_resistance());
        }
    }
    for j in first_position..=n {
        let ends = if j == 0 || j == n { 1.0 } else { 2.0 };
        for w in 0..m {
            c.add(index(w, j), index(w, j), ends * cg_half);
            if w + 1 < m && cc_half > 0.0 {
                c.stamp(index(w, j), index(w + 1, j), ends * cc_half);
            }
        }
    }
    for w in 0..m {
        c.add(index(w, n), index(w, n), spec.load_capacitance());
    }

    let source_conductance = if ideal { g_seg } else { 1.0 / spec.driver_resistance() };
    Ok(Network { spec: spec.clone(), first_position, conductance: g, capacitance: c, source_conductance })
}
