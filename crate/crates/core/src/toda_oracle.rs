//! Coordinate-space checks: finite-difference Toda Hamiltonian, eigenvalues, and an
//! ODE reference for the two-particle chain.

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mellin_barnes::{whittaker_difference_table, whittaker_eval, UniformAxis, MAX_N};
use crate::report::VerificationReport;

const SUITE: &str = "eigen";
/// Nodes dropped on each face by `toda_apply`.
pub const MARGIN: usize = 2;
/// Quadrature tolerance used for wave functions sampled on grids.
pub const GRID_QUAD_TOL: f64 = 1e-10;

/// How wave functions from the integral representation are placed on the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Direct,
    /// `ψ(x) ↦ ψ(-x)`.
    Reflected,
}

/// Fixed by the two-particle ODE comparison.
pub const MB_ORIENTATION: Orientation = Orientation::Reflected;

/// Complex samples on a product of uniform axes, row-major with the last axis fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    axes: Vec<UniformAxis>,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(axes: Vec<UniformAxis>, values: Vec<Complex64>) -> Result<Self> {
        let size: usize = axes.iter().map(|a| a.count).product();
        if axes.is_empty() || size != values.len() {
            return Err(Error::Dimension(values.len()));
        }
        if axes.iter().any(|a| !(a.step > 0.0)) {
            return Err(Error::Domain("axis spacing must be positive".into()));
        }
        Ok(Self { axes, values })
    }

    pub fn from_fn<F>(axes: Vec<UniformAxis>, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        let size: usize = axes.iter().map(|a| a.count).product();
        let values = (0..size).into_par_iter().map(|i| f(&point(&axes, i))).collect();
        Self::new(axes, values)
    }

    pub fn axes(&self) -> &[UniformAxis] {
        &self.axes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        point(&self.axes, flat)
    }

    /// Discrete L2 norm (without the cell volume).
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn indices(axes: &[UniformAxis], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; axes.len()];
    for k in (0..axes.len()).rev() {
        idx[k] = flat % axes[k].count;
        flat /= axes[k].count;
    }
    idx
}

fn point(axes: &[UniformAxis], flat: usize) -> Vec<f64> {
    indices(axes, flat).iter().zip(axes).map(|(&i, a)| a.at(i)).collect()
}

/// `Σ_k e^{x_{k+1} - x_k}`.
pub fn potential(x: &[f64]) -> f64 {
    x.windows(2).map(|w| (w[1] - w[0]).exp()).sum()
}

/// `(-½Δ + Σ e^{x_{k+1}-x_k}) ψ` on the nodes at least `MARGIN` away from every face.
pub fn toda_apply(psi: &GridFunction) -> Result<GridFunction> {
    let axes = psi.axes();
    if axes.iter().any(|a| a.count <= 2 * MARGIN) {
        return Err(Error::Domain("grid interior is empty".into()));
    }
    let inner: Vec<UniformAxis> = axes
        .iter()
        .map(|a| UniformAxis { start: a.at(MARGIN), step: a.step, count: a.count - 2 * MARGIN })
        .collect();
    let strides: Vec<usize> =
        (0..axes.len()).map(|k| axes[k + 1..].iter().map(|a| a.count).product()).collect();
    let size: usize = inner.iter().map(|a| a.count).product();
    let values = (0..size)
        .into_par_iter()
        .map(|i| {
            let idx = indices(&inner, i);
            let flat: usize = idx.iter().zip(&strides).map(|(j, s)| (j + MARGIN) * s).sum();
            let centre = psi.values[flat];
            let mut lap = Complex64::zero();
            for (a, s) in axes.iter().zip(&strides) {
                lap += (psi.values[flat + s] + psi.values[flat - s] - centre * 2.0) / (a.step * a.step);
            }
            let x: Vec<f64> = idx.iter().zip(&inner).map(|(&j, a)| a.at(j)).collect();
            centre * potential(&x) - lap * 0.5
        })
        .collect();
    GridFunction::new(inner, values)
}

/// `½σ₁² - σ₂ = ½ Σ α_k²`.
pub fn eigenvalue_from_alpha(alpha: &[f64]) -> f64 {
    0.5 * alpha.iter().map(|a| a * a).sum::<f64>()
}

/// Cubic lattice `origin_k + j·step`, `j < count`, shared step on every axis.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenGrid {
    pub origin: Vec<f64>,
    pub step: f64,
    pub count: usize,
}

impl EigenGrid {
    /// Same box with half the spacing.
    pub fn refined(&self) -> Self {
        Self { origin: self.origin.clone(), step: self.step / 2.0, count: 2 * self.count - 1 }
    }

    /// Interior lattice padded by `MARGIN` nodes per face.
    fn padded_axes(&self) -> Vec<UniformAxis> {
        self.origin
            .iter()
            .map(|&o| UniformAxis {
                start: o - MARGIN as f64 * self.step,
                step: self.step,
                count: self.count + 2 * MARGIN,
            })
            .collect()
    }
}

/// Whittaker function on a padded lattice, oriented by `orientation`.
pub fn whittaker_on_grid(alpha: &[f64], grid: &EigenGrid, orientation: Orientation, tol: f64) -> Result<GridFunction> {
    let n = alpha.len();
    if n == 0 || n > MAX_N {
        return Err(Error::Dimension(n));
    }
    if grid.origin.len() != n {
        return Err(Error::Dimension(grid.origin.len()));
    }
    if grid.count == 0 || !(grid.step > 0.0) {
        return Err(Error::Domain("empty grid".into()));
    }
    let axes = grid.padded_axes();
    let sign = match orientation {
        Orientation::Direct => 1.0,
        Orientation::Reflected => -1.0,
    };
    let sigma1: f64 = alpha.iter().sum();
    if n == 1 {
        return GridFunction::from_fn(axes, |x| Complex64::new(0.0, sign * sigma1 * x[0]).exp());
    }
    let m = axes[0].count;
    let h = grid.step;
    // table coordinate sign·(x_k - x_{k+1}) at index (i_k - i_{k+1}) + m - 1, mirrored when reflected
    let diff_axes: Vec<UniformAxis> = (0..n - 1)
        .map(|k| UniformAxis {
            start: sign * (axes[k].start - axes[k + 1].start) - (m - 1) as f64 * h,
            step: h,
            count: 2 * m - 1,
        })
        .collect();
    let table = whittaker_difference_table(alpha, &diff_axes, tol)?;
    GridFunction::from_fn(axes.clone(), |x| {
        let index: Vec<usize> = (0..n - 1)
            .map(|k| {
                let offset = ((x[k] - axes[k].start) - (x[k + 1] - axes[k + 1].start)) / h;
                let j = offset.round() as i64 + m as i64 - 1;
                let j = if sign < 0.0 { 2 * m as i64 - 2 - j } else { j };
                j as usize
            })
            .collect();
        Complex64::new(0.0, sign * sigma1 * x[n - 1]).exp() * table.get(&index)
    })
}

/// `‖Hψ - Eψ‖ / ‖ψ‖` over the interior of `grid`.
pub fn eigen_residual(alpha: &[f64], grid: &EigenGrid, tol: f64) -> Result<f64> {
    let psi = whittaker_on_grid(alpha, grid, MB_ORIENTATION, tol)?;
    let h_psi = toda_apply(&psi)?;
    let e = eigenvalue_from_alpha(alpha);
    let strides: Vec<usize> =
        (0..psi.dim()).map(|k| psi.axes()[k + 1..].iter().map(|a| a.count).product()).collect();
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, hv) in h_psi.values().iter().enumerate() {
        let idx = indices(h_psi.axes(), i);
        let flat: usize = idx.iter().zip(&strides).map(|(j, s)| (j + MARGIN) * s).sum();
        let v = psi.values()[flat];
        num += (hv - v * e).norm_sqr();
        den += v.norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::Integration("wave function vanishes on the grid".into()));
    }
    Ok((num / den).sqrt())
}

/// Residual at `grid` divided by the residual at the refined grid; about 4 for a second-order stencil.
pub fn refinement_ratio(alpha: &[f64], grid: &EigenGrid, tol: f64) -> Result<(f64, f64, f64)> {
    let coarse = eigen_residual(alpha, grid, tol)?;
    let fine = eigen_residual(alpha, &grid.refined(), tol)?;
    Ok((coarse, fine, coarse / fine))
}

pub fn check_eigen(alpha: &[f64], grid: &EigenGrid, tol: f64) -> Result<VerificationReport> {
    let r = eigen_residual(alpha, grid, GRID_QUAD_TOL)?;
    Ok(VerificationReport::numeric(SUITE, alpha.len(), "H psi = E psi", r, tol)
        .with_witness(format!("h = {}, interior = {}^{}", grid.step, grid.count, alpha.len())))
}

pub fn check_refinement(alpha: &[f64], grid: &EigenGrid) -> Result<VerificationReport> {
    let (coarse, fine, ratio) = refinement_ratio(alpha, grid, GRID_QUAD_TOL)?;
    let residual = (ratio - 4.0).abs();
    Ok(VerificationReport::numeric(SUITE, alpha.len(), "residual(h) / residual(h/2) = 4", residual, 0.5)
        .with_witness(format!("residuals {coarse:.3e} -> {fine:.3e}, ratio {ratio:.4}")))
}

/// `φ'' = (e^r - E) φ`.
fn rhs(r: f64, y: [f64; 2], e: f64) -> [f64; 2] {
    [y[1], (r.exp() - e) * y[0]]
}

fn rk4(r: f64, y: [f64; 2], h: f64, e: f64) -> [f64; 2] {
    let add = |y: [f64; 2], k: [f64; 2], s: f64| [y[0] + s * k[0], y[1] + s * k[1]];
    let k1 = rhs(r, y, e);
    let k2 = rhs(r + h / 2.0, add(y, k1, h / 2.0), e);
    let k3 = rhs(r + h / 2.0, add(y, k2, h / 2.0), e);
    let k4 = rhs(r + h, add(y, k3, h), e);
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Decaying solution of `-φ'' + e^r φ = E φ` sampled at `rs`, normalized to 1 at `rs[0]`.
fn integrate_decaying(rs: &[f64], e: f64, max_step: f64) -> Vec<f64> {
    let top = rs.iter().fold(f64::NEG_INFINITY, |m, &r| m.max(r));
    let start = (top + 4.0).max(8.0).max((4.0 * e.max(1.0)).ln() + 4.0);
    let kappa = (start.exp() - e).sqrt();
    let dkappa = start.exp() / (2.0 * kappa);
    let mut y = [1.0, -kappa - dkappa / (2.0 * kappa)];
    let mut order: Vec<usize> = (0..rs.len()).collect();
    order.sort_by(|&a, &b| rs[b].total_cmp(&rs[a]));
    let mut out = vec![0.0; rs.len()];
    let mut r = start;
    let mut scale = 0.0f64;
    let mut log_at = vec![0.0; rs.len()];
    for &k in &order {
        let target = rs[k];
        let steps = ((r - target) / max_step).ceil().max(1.0) as usize;
        let h = (target - r) / steps as f64;
        for _ in 0..steps {
            y = rk4(r, y, h, e);
            r += h;
            let m = y[0].abs().max(y[1].abs());
            if m > 1e100 {
                y = [y[0] / m, y[1] / m];
                scale += m.ln();
            }
        }
        r = target;
        out[k] = y[0];
        log_at[k] = scale;
    }
    let anchor = log_at[0];
    out.iter().zip(&log_at).map(|(v, l)| v / out[0] * (l - anchor).exp()).collect()
}

/// Reference solution of the centre-of-mass equation for two particles, `r = x_2 - x_1`.
pub fn bessel_oracle_n2(alpha: &[f64], r_grid: &[f64], tol: f64) -> Result<Vec<f64>> {
    if alpha.len() != 2 {
        return Err(Error::Dimension(alpha.len()));
    }
    if r_grid.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    let e = reduced_energy(alpha);
    let mut step = 1e-3;
    let mut prev = integrate_decaying(r_grid, e, step);
    for _ in 0..6 {
        step /= 2.0;
        let next = integrate_decaying(r_grid, e, step);
        let scale = next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = next.iter().zip(&prev).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if diff <= tol * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Integration(format!("ODE tolerance {tol} not reached")))
}

/// `E - σ₁²/4 = (α_1 - α_2)²/4`.
pub fn reduced_energy(alpha: &[f64]) -> f64 {
    eigenvalue_from_alpha(alpha) - alpha.iter().sum::<f64>().powi(2) / 4.0
}

/// Relative standard deviation of `ψ(-r/2, r/2) / φ(r)` along `r_grid`.
pub fn oracle_mismatch(alpha: &[f64], r_grid: &[f64], orientation: Orientation, tol: f64) -> Result<f64> {
    let phi = bessel_oracle_n2(alpha, r_grid, tol)?;
    let sign = match orientation {
        Orientation::Direct => 1.0,
        Orientation::Reflected => -1.0,
    };
    let ratios: Vec<Complex64> = r_grid
        .iter()
        .zip(&phi)
        .map(|(&r, &p)| Ok(whittaker_eval(2, alpha, &[-sign * r / 2.0, sign * r / 2.0], tol)?.value / p))
        .collect::<Result<_>>()?;
    let n = ratios.len() as f64;
    let mean: Complex64 = ratios.iter().sum::<Complex64>() / n;
    let var = ratios.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / n;
    Ok(var.sqrt() / mean.norm())
}

pub fn check_oracle(alpha: &[f64], r_grid: &[f64], tol: f64) -> Result<VerificationReport> {
    let m = oracle_mismatch(alpha, r_grid, MB_ORIENTATION, GRID_QUAD_TOL)?;
    Ok(VerificationReport::numeric(SUITE, 2, "psi / phi_ode constant", m, tol)
        .with_witness(format!("alpha = {alpha:?}, {} points", r_grid.len())))
}
