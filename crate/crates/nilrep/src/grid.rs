//! Floating-point realization of phase-shift operators on a sampled
//! interval, to watch unitarity survive discretization.
//!
//! The interval [-L, L) is sampled at n points u_j = -L + j h with
//! h = 2L/n, treated as a discrete circle: translations wrap around,
//! which keeps them exactly unitary for the weighted inner product
//! <f, g> = h sum f conj(g). Operators whose shift is a whole number
//! of grid steps act by permutation plus a unimodular phase, so their
//! unitarity defect is pure floating-point noise. Shifts off the
//! lattice are rejected by the exact path and handled only by a
//! spectral (FFT interpolation) demonstration route.
//!
//! Periodization has one visible cost: quadratic phases are not
//! 2L-periodic, so composing two operators on the grid matches the
//! composed operator exactly only outside the wrap window of the
//! outer shift. Unitarity, the property this layer exists to watch,
//! is unaffected.

use num::complex::Complex64;
use rand::Rng;
use rustfft::FftPlanner;

use crate::rep::PhaseShiftOp;
use crate::scalar::Scalar;
use crate::Error;

/// Sampling geometry: n points across [-half_width, half_width).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridParams {
    n: usize,
    half_width: Scalar,
}

impl GridParams {
    /// Requires n a positive power of two and a positive half-width.
    pub fn new(n: usize, half_width: Scalar) -> Result<Self, Error> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::GridSize(n));
        }
        if !half_width.is_positive() {
            return Err(Error::GridWidth);
        }
        Ok(GridParams { n, half_width })
    }

    pub fn standard() -> Self {
        GridParams::new(1024, Scalar::from_int(16)).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> &Scalar {
        &self.half_width
    }

    /// The spacing h = 2 half_width / n.
    pub fn step(&self) -> Scalar {
        &(&Scalar::from_int(2) * &self.half_width) / &Scalar::from_int(self.n as i64)
    }

    /// The sample point u_j.
    pub fn point(&self, j: usize) -> Scalar {
        -&self.half_width + &Scalar::from_int(j as i64) * &self.step()
    }

    /// How many grid steps the shift spans, if it lies on the lattice.
    pub fn lattice_steps(&self, shift: &Scalar) -> Result<i64, Error> {
        let ratio = shift / &self.step();
        ratio.to_i64().ok_or_else(|| Error::NonLatticeShift {
            shift: shift.clone(),
            step: self.step(),
        })
    }
}

/// Complex samples of a function over a grid.
#[derive(Clone, Debug)]
pub struct GridFunction {
    params: GridParams,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_values(params: GridParams, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), params.n());
        GridFunction { params, values }
    }

    /// Independent uniform [-1, 1] real and imaginary parts.
    pub fn random(params: &GridParams, rng: &mut impl Rng) -> Self {
        let values = (0..params.n())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        GridFunction {
            params: params.clone(),
            values,
        }
    }

    pub fn params(&self) -> &GridParams {
        &self.params
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// <f, g> = h sum f conj(g).
    pub fn inner(&self, other: &GridFunction) -> Complex64 {
        assert_eq!(self.params, other.params);
        let h = self.params.step().to_f64();
        let sum: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        h * sum
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn phase_factors(op: &PhaseShiftOp, params: &GridParams) -> Vec<Complex64> {
    (0..params.n())
        .map(|j| {
            let p = op.phase.eval(&params.point(j)).to_f64();
            Complex64::from_polar(1.0, p)
        })
        .collect()
}

/// Apply the operator by permutation and pointwise phase. The shift
/// must be a whole number of grid steps; wrap-around is cyclic.
pub fn apply_to_grid(op: &PhaseShiftOp, f: &GridFunction) -> Result<GridFunction, Error> {
    let params = f.params().clone();
    let steps = params.lattice_steps(&op.shift)?;
    let n = params.n() as i64;
    let phases = phase_factors(op, &params);
    let values = (0..params.n())
        .map(|j| {
            let src = (j as i64 - steps).rem_euclid(n) as usize;
            phases[j] * f.values[src]
        })
        .collect();
    Ok(GridFunction::from_values(params, values))
}

/// Apply the operator with the translation done in frequency space,
/// which accepts shifts off the lattice (band-limited interpolation
/// on the discrete circle). Demonstration route only: for lattice
/// shifts it agrees with `apply_to_grid` up to FFT round-off.
pub fn apply_to_grid_spectral(op: &PhaseShiftOp, f: &GridFunction) -> GridFunction {
    let params = f.params().clone();
    let n = params.n();
    let mut planner = FftPlanner::new();
    let mut spectrum = f.values.clone();
    planner.plan_fft_forward(n).process(&mut spectrum);
    // Translation by a multiplies bin m by exp(-2 pi i m a / (2L)),
    // with m folded to the signed range for the interpolant.
    let ratio = (&op.shift / &(&Scalar::from_int(2) * params.half_width())).to_f64();
    for (m, value) in spectrum.iter_mut().enumerate() {
        let signed = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
        *value *= Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * signed * ratio);
    }
    planner.plan_fft_inverse(n).process(&mut spectrum);
    let phases = phase_factors(op, &params);
    let scale = 1.0 / n as f64;
    let values = spectrum
        .into_iter()
        .enumerate()
        .map(|(j, v)| phases[j] * v * scale)
        .collect();
    GridFunction::from_values(params, values)
}

/// Worst relative inner-product distortion of the operator over
/// random function pairs: max |<Af, Ag> - <f, g>| / (|f| |g|).
pub fn unitarity_defect(
    op: &PhaseShiftOp,
    params: &GridParams,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = GridFunction::random(params, rng);
        let g = GridFunction::random(params, rng);
        let af = apply_to_grid(op, &f)?;
        let ag = apply_to_grid(op, &g)?;
        let defect = (af.inner(&ag) - f.inner(&g)).norm() / (f.norm() * g.norm());
        worst = worst.max(defect);
    }
    Ok(worst)
}
