use num_complex::Complex64;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Pure state of `n_sites` spins-1/2 in the product basis.
///
/// Bit `i` of a basis index encodes spin `i` along z: 0 is up, 1 is down.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    n_sites: usize,
    amplitudes: Vec<Complex64>,
}

impl SpinState {
    pub fn zeros(n_sites: usize) -> Self {
        Self {
            n_sites,
            amplitudes: vec![Complex64::new(0.0, 0.0); 1 << n_sites],
        }
    }

    /// Product basis state `|index⟩`.
    pub fn basis(n_sites: usize, index: usize) -> Self {
        let mut s = Self::zeros(n_sites);
        s.amplitudes[index] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_amplitudes(n_sites: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = 1usize << n_sites;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        Ok(Self {
            n_sites,
            amplitudes,
        })
    }

    /// Product state with every spin pointing along (theta, phi).
    pub fn polarized(n_sites: usize, theta: f64, phi: f64) -> Self {
        let up = Complex64::new((theta / 2.0).cos(), 0.0);
        let down = Complex64::from_polar((theta / 2.0).sin(), phi);
        let amplitudes = (0..1usize << n_sites)
            .map(|b| {
                let downs = b.count_ones() as i32;
                up.powi(n_sites as i32 - downs) * down.powi(downs)
            })
            .collect();
        Self {
            n_sites,
            amplitudes,
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Scales to unit norm and returns the norm before scaling.
    pub fn normalize(&mut self) -> f64 {
        let norm = self.norm();
        if norm > 0.0 {
            let inv = 1.0 / norm;
            self.amplitudes.iter_mut().for_each(|a| *a *= inv);
        }
        norm
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &SpinState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&mut self, factor: Complex64) {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: Complex64, other: &SpinState) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += factor * b;
        }
    }

    pub(crate) fn check_dim(&self, n_sites: usize) -> Result<()> {
        let expected = 1usize << n_sites;
        if self.amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.amplitudes.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }
}

impl Index<usize> for SpinState {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.amplitudes[i]
    }
}

impl IndexMut<usize> for SpinState {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.amplitudes[i]
    }
}
