// SPDX-License-Identifier: Apache-2.0

//! Symmetric band matrices and their Cholesky factorization.

use crate::error::{Error, Result};

/// Symmetric `n × n` matrix with half-bandwidth `bw`; only the lower band is
/// stored, row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, bw: usize) -> Self {
        BandMatrix { n, bw, data: vec![0.0; n * (bw + 1)] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= i && i - j <= self.bw);
        i * (self.bw + 1) + (j + self.bw - i)
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        if i - j > self.bw {
            0.0
        } else {
            self.data[self.slot(i, j)]
        }
    }

    /// Adds `v` to `(i, j)` and, by symmetry, `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        assert!(i - j <= self.bw, "entry ({i}, {j}) outside bandwidth {}", self.bw);
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    /// Stamps a two-terminal element of value `v` between `a` and `b`.
    pub fn stamp(&mut self, a: usize, b: usize, v: f64) {
        self.add(a, a, v);
        self.add(b, b, v);
        self.add(a, b, -v);
    }

    /// `self·alpha + other·beta`, bandwidth of the wider operand.
    pub fn combine(&self, alpha: f64, other: &BandMatrix, beta: f64) -> BandMatrix {
        assert_eq!(self.n, other.n);
        let bw = self.bw.max(other.bw);
        let mut out = BandMatrix::zeros(self.n, bw);
        for i in 0..self.n {
            for j in i.saturating_sub(bw)..=i {
                let v = alpha * self.get(i, j) + beta * other.get(i, j);
                let s = out.slot(i, j);
                out.data[s] = v;
            }
        }
        out
    }

    /// `y = A·x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        let bw = self.bw;
        y.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.n {
            let row = &self.data[i * (bw + 1)..(i + 1) * (bw + 1)];
            let j0 = i.saturating_sub(bw);
            let mut acc = row[bw] * x[i];
            for j in j0..i {
                let a = row[j + bw - i];
                acc += a * x[j];
                y[j] += a * x[i];
            }
            y[i] += acc;
        }
    }

    /// `x·Aᵀ·x`-free symmetry and diagonal dominance check.
    pub fn is_diagonally_dominant(&self) -> bool {
        (0..self.n).all(|i| {
            let off: f64 = (0..self.n).filter(|&j| j != i).map(|j| self.get(i, j).abs()).sum();
            self.get(i, i) >= off * (1.0 - 1e-12)
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn cholesky(&self) -> Result<BandCholesky> {
        let (n, bw) = (self.n, self.bw);
        let mut l = self.clone();
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            for j in j0..=i {
                let mut sum = l.data[l.slot(i, j)];
                let k0 = j0.max(j.saturating_sub(bw));
                for k in k0..j {
                    sum -= l.data[l.slot(i, k)] * l.data[l.slot(j, k)];
                }
                let s = l.slot(i, j);
                if i == j {
                    if sum <= 0.0 || !sum.is_finite() {
                        return Err(Error::SingularSystem { row: i, pivot: sum });
                    }
                    l.data[s] = sum.sqrt();
                } else {
                    l.data[s] = sum / l.data[l.slot(j, j)];
                }
            }
        }
        Ok(BandCholesky { l })
    }
}

/// Lower-triangular band factor `L` with `A = L·Lᵀ`.
#[derive(Debug, Clone)]
pub struct BandCholesky {
    l: BandMatrix,
}

impl BandCholesky {
    pub fn size(&self) -> usize {
        self.l.n
    }

    /// Overwrites `b` with `A⁻¹·b`.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let (n, bw) = (self.l.n, self.l.bw);
        let data = &self.l.data;
        for i in 0..n {
            let row = &data[i * (bw + 1)..(i + 1) * (bw + 1)];
            let j0 = i.saturating_sub(bw);
            let mut sum = b[i];
            for j in j0..i {
                sum -= row[j + bw - i] * b[j];
            }
            b[i] = sum / row[bw];
        }
        for i in (0..n).rev() {
            let x = b[i] / data[i * (bw + 1) + bw];
            b[i] = x;
            let j0 = i.saturating_sub(bw);
            let row = &data[i * (bw + 1)..(i + 1) * (bw + 1)];
            for j in j0..i {
                b[j] -= row[j + bw - i] * x;
            }
        }
    }
}
