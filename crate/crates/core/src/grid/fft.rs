use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::grid::GridSpec;
use crate::scalar::Real;

/// Forward/inverse transforms along every axis of a grid, with the matching
/// momentum values in FFT order.
pub struct Fourier<F: Real> {
    shape: Vec<usize>,
    forward: Vec<Arc<dyn Fft<F>>>,
    inverse: Vec<Arc<dyn Fft<F>>>,
    momenta: Vec<Vec<F>>,
}

impl<F: Real> Fourier<F> {
    pub fn new(spec: &GridSpec<F>, hbar: F) -> Self {
        let mut planner = FftPlanner::new();
        let shape = spec.shape();
        let forward = shape.iter().map(|&n| planner.plan_fft_forward(n)).collect();
        let inverse = shape.iter().map(|&n| planner.plan_fft_inverse(n)).collect();
        let momenta = spec.axes().iter().map(|ax| ax.momenta(hbar)).collect();
        Self {
            shape,
            forward,
            inverse,
            momenta,
        }
    }

    pub fn momenta(&self, axis: usize) -> &[F] {
        &self.momenta[axis]
    }

    pub fn forward(&self, data: &mut [Complex<F>]) {
        self.transform(data, &self.forward);
    }

    /// Inverse transform including the `1/N` normalisation.
    pub fn inverse(&self, data: &mut [Complex<F>]) {
        self.transform(data, &self.inverse);
        let norm = F::one() / F::from_usize(data.len()).unwrap();
        data.par_iter_mut().for_each(|z| *z = *z * norm);
    }

    fn transform(&self, data: &mut [Complex<F>], plans: &[Arc<dyn Fft<F>>]) {
        match self.shape.as_slice() {
            [_] => plans[0].process(data),
            [n0, n1] => {
                rows(data, *n1, &plans[1]);
                let mut t = transpose(data, *n0, *n1);
                rows(&mut t, *n0, &plans[0]);
                data.copy_from_slice(&transpose(&t, *n1, *n0));
            }
            _ => unreachable!("grids are one- or two-dimensional"),
        }
    }
}

fn rows<F: Real>(data: &mut [Complex<F>], len: usize, plan: &Arc<dyn Fft<F>>) {
    let per_task = (data.len() / len / rayon::current_num_threads().max(1)).max(1) * len;
    data.par_chunks_mut(per_task).for_each(|chunk| plan.process(chunk));
}

/// `n0 × n1` row-major into `n1 × n0` row-major.
pub(crate) fn transpose<F: Real>(data: &[Complex<F>], n0: usize, n1: usize) -> Vec<Complex<F>> {
    let mut out = vec![Complex::new(F::zero(), F::zero()); data.len()];
    out.par_chunks_mut(n0).enumerate().for_each(|(j, row)| {
        for (i, z) in row.iter_mut().enumerate() {
            *z = data[i * n1 + j];
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridAxis, GridSpec};

    #[test]
    fn round_trip_2d() {
        let spec = GridSpec::new(vec![GridAxis::new(-1.0, 1.0, 8).unwrap(), GridAxis::new(-2.0, 2.0, 16).unwrap()]).unwrap();
        let f = Fourier::new(&spec, 1.0);
        let orig: Vec<Complex<f64>> = (0..128).map(|k| Complex::new(k as f64, (k * k % 7) as f64)).collect();
        let mut data = orig.clone();
        f.forward(&mut data);
        f.inverse(&mut data);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn separable_plane_wave() {
        // e^{2πi(j/8 + 3k/16)} has a single nonzero coefficient at (1, 3).
        let spec = GridSpec::new(vec![GridAxis::new(0.0, 1.0, 8).unwrap(), GridAxis::new(0.0, 1.0, 16).unwrap()]).unwrap();
        let f = Fourier::new(&spec, 1.0);
        let tau = std::f64::consts::TAU;
        let mut data: Vec<Complex<f64>> = (0..128)
            .map(|idx| {
                let (j, k) = (idx / 16, idx % 16);
                Complex::from_polar(1.0, tau * (j as f64 / 8.0 + 3.0 * k as f64 / 16.0))
            })
            .collect();
        f.forward(&mut data);
        for (idx, z) in data.iter().enumerate() {
            let expected = if idx == 16 + 3 { 128.0 } else { 0.0 };
            assert!((z.norm() - expected).abs() < 1e-9, "idx {idx}: {z}");
        }
    }
}
