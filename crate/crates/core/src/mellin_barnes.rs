//! Whittaker and spherical functions as iterated Mellin–Barnes integrals over a
//! triangular array of integration variables.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gz::{slot, slot_count, TriangularArray};
use crate::separation::{ln_sep_measure, ln_sep_wavefunction};
use crate::special::{ln_recip_gamma_pair, log_gamma};

pub const MAX_N: usize = 3;
pub const DEFAULT_SIGMA: f64 = 0.5;
/// Strip half-width of analyticity of the spherical kernel around the real contour.
const SPHERICAL_STRIP: f64 = 0.5;
pub const MIN_NODES: usize = 64;
/// Minimal separation of the spherical top row.
pub const COINCIDENCE_EPS: f64 = 1e-6;
const CHUNK: usize = 4096;
const MAX_LOG: f64 = 709.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Whittaker,
    Spherical,
}

/// Contour `λ_{nj} = t + i·offsets[n-1]`, `|t| ≤ half_width`, on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourSpec {
    offsets: Vec<f64>,
    half_width: f64,
    nodes_per_dim: usize,
}

impl ContourSpec {
    /// `offsets` has one entry per level `1..=N`; the last one must be 0.
    pub fn new(offsets: Vec<f64>, half_width: f64, nodes_per_dim: usize) -> Result<Self> {
        if offsets.last().copied() != Some(0.0) {
            return Err(Error::Contour("top row offset must be 0".into()));
        }
        if !(half_width > 0.0) || nodes_per_dim < 3 {
            return Err(Error::Contour(format!("bad truncation T = {half_width}, nodes = {nodes_per_dim}")));
        }
        // odd node count keeps the endpoints in the half grid
        let nodes_per_dim = nodes_per_dim | 1;
        Ok(Self { offsets, half_width, nodes_per_dim })
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn nodes_per_dim(&self) -> usize {
        self.nodes_per_dim
    }

    pub fn size(&self) -> usize {
        self.offsets.len()
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.nodes_per_dim - 1) as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.step()
    }

    /// Whittaker contour condition: offsets strictly decreasing towards the top row.
    pub fn is_nested(&self) -> bool {
        self.offsets.windows(2).all(|w| w[0] > w[1])
    }

    /// Same truncation with twice as many intervals.
    pub fn refined(&self) -> Self {
        Self { nodes_per_dim: 2 * self.nodes_per_dim - 1, ..self.clone() }
    }

    fn with_offsets(&self, offsets: Vec<f64>) -> Self {
        Self { offsets, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Neumaier-compensated complex sum.
#[derive(Clone, Copy, Debug, Default)]
struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, v: Complex64) {
        self.sum.re = neumaier(self.sum.re, v.re, &mut self.carry.re);
        self.sum.im = neumaier(self.sum.im, v.im, &mut self.carry.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn neumaier(sum: f64, v: f64, carry: &mut f64) -> f64 {
    let t = sum + v;
    *carry += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
    t
}

fn over_i(z: Complex64) -> Complex64 {
    Complex64::new(z.im, -z.re)
}

/// Log of the kernel without the exponential in `x`.
pub fn ln_mb_kernel(lam: &TriangularArray, kind: Kind) -> Result<Complex64> {
    let quarter = Complex64::new(0.25, 0.0);
    let mut acc = Complex64::zero();
    for n in 1..lam.size() {
        let lower = lam.level(n);
        for a in lower {
            for b in lam.level(n + 1) {
                acc += match kind {
                    Kind::Whittaker => log_gamma(over_i(a - b))?,
                    Kind::Spherical => {
                        let y = over_i(a - b) * 0.5;
                        log_gamma(y + quarter)? + log_gamma(quarter - y)?
                    }
                };
            }
        }
        for (s, a) in lower.iter().enumerate() {
            for b in &lower[s + 1..] {
                acc += ln_recip_gamma_pair(over_i(a - b));
            }
        }
    }
    Ok(acc)
}

/// `i Σ_n x_n (Σ_j λ_{nj} - Σ_j λ_{n-1,j})`.
pub fn ln_cartan(lam: &TriangularArray, x: &[f64]) -> Complex64 {
    let mut e = Complex64::zero();
    let mut prev = Complex64::zero();
    for (n, xn) in x.iter().enumerate() {
        let cur: Complex64 = lam.level(n + 1).iter().sum();
        e += (cur - prev) * xn;
        prev = cur;
    }
    Complex64::i() * e
}

pub fn mb_integrand(lam: &TriangularArray, x: &[f64], kind: Kind) -> Result<Complex64> {
    if x.len() != lam.size() {
        return Err(Error::Dimension(x.len()));
    }
    let e = ln_mb_kernel(lam, kind)? + ln_cartan(lam, x);
    if e.re > MAX_LOG {
        return Err(Error::Overflow(e.re));
    }
    Ok(e.exp())
}

fn truncation(scale: f64, tol: f64) -> f64 {
    scale + ((10.0 / tol).ln() + 4.0) / PI
}

fn node_count(half_width: f64, strip: f64, tol: f64) -> usize {
    let h = 2.0 * PI * strip / ((10.0 / tol).ln() + 2.0);
    ((2.0 * half_width / h).ceil() as usize + 1).max(MIN_NODES)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance {tol} outside (0, 1)")))
    }
}

/// Offsets `h_n = (N - n)σ` with truncation and spacing sized for `tol`.
pub fn whittaker_contour(n: usize, alpha: &[f64], sigma: f64, tol: f64) -> Result<ContourSpec> {
    check_tol(tol)?;
    if alpha.len() != n {
        return Err(Error::Dimension(alpha.len()));
    }
    if !(sigma > 0.0) {
        return Err(Error::Contour(format!("level spacing {sigma} must be positive")));
    }
    let scale = alpha.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let t = truncation(scale, tol);
    let offsets = (1..=n).map(|k| (n - k) as f64 * sigma).collect();
    ContourSpec::new(offsets, t, node_count(t, sigma, tol))
}

pub fn default_contour(n: usize, alpha: &[f64], tol: f64) -> Result<ContourSpec> {
    whittaker_contour(n, alpha, DEFAULT_SIGMA, tol)
}

/// Real contours for the spherical kernel.
pub fn spherical_contour(n: usize, lambda_top: &[f64], tol: f64) -> Result<ContourSpec> {
    check_tol(tol)?;
    if lambda_top.len() != n {
        return Err(Error::Dimension(lambda_top.len()));
    }
    let scale = lambda_top.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let t = truncation(scale, tol);
    ContourSpec::new(vec![0.0; n], t, node_count(t, SPHERICAL_STRIP, tol))
}

/// Kernel logarithms tabulated on every node of a contour, reusable across `x`.
#[derive(Clone, Debug)]
pub struct PreparedIntegral {
    contour: ContourSpec,
    top: Vec<Complex64>,
    ln_kernel: Vec<Complex64>,
}

impl PreparedIntegral {
    pub fn new(kind: Kind, top: &[f64], contour: ContourSpec) -> Result<Self> {
        let n = top.len();
        if n == 0 || n > MAX_N {
            return Err(Error::Dimension(n));
        }
        if contour.size() != n {
            return Err(Error::Dimension(contour.size()));
        }
        match kind {
            Kind::Whittaker if !contour.is_nested() => {
                return Err(Error::Contour(format!("offsets {:?} are not decreasing", contour.offsets())));
            }
            Kind::Spherical => {
                for (j, a) in top.iter().enumerate() {
                    if top[j + 1..].iter().any(|b| (a - b).abs() < COINCIDENCE_EPS) {
                        return Err(Error::Domain(format!("coincident spectral parameters {top:?}")));
                    }
                }
            }
            _ => {}
        }
        let top: Vec<Complex64> = top.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        let dim = slot_count(n - 1);
        let total = contour.nodes_per_dim().pow(dim as u32);
        let mut prepared = Self { contour, top, ln_kernel: Vec::new() };
        let ln_kernel: Result<Vec<Complex64>> =
            (0..total).into_par_iter().map(|i| ln_mb_kernel(&prepared.array(i), kind)).collect();
        prepared.ln_kernel = ln_kernel.map_err(|e| match e {
            Error::Pole { re, im } => Error::Contour(format!("Gamma pole at {re} + {im}i")),
            other => other,
        })?;
        Ok(prepared)
    }

    pub fn size(&self) -> usize {
        self.top.len()
    }

    pub fn evaluations(&self) -> usize {
        self.ln_kernel.len()
    }

    fn digits(&self, mut i: usize) -> Vec<usize> {
        let m = self.contour.nodes_per_dim();
        let dim = slot_count(self.size() - 1);
        let mut d = vec![0; dim];
        for k in (0..dim).rev() {
            d[k] = i % m;
            i /= m;
        }
        d
    }

    fn array(&self, i: usize) -> TriangularArray {
        let n = self.size();
        let digits = self.digits(i);
        let mut values = Vec::with_capacity(slot_count(n));
        for level in 1..n {
            let off = self.contour.offsets()[level - 1];
            for j in 1..=level {
                values.push(Complex64::new(self.contour.node(digits[slot(level, j)]), off));
            }
        }
        values.extend_from_slice(&self.top);
        TriangularArray::from_flat(n, values).expect("slot count matches")
    }

    /// Trapezoid sums on the full grid and on every other node, with max-subtraction.
    pub fn eval(&self, x: &[f64]) -> Result<QuadratureResult> {
        let n = self.size();
        if x.len() != n {
            return Err(Error::Dimension(x.len()));
        }
        if n == 1 {
            let v = (Complex64::i() * self.top[0] * x[0]).exp();
            return Ok(QuadratureResult { value: v, error_estimate: 0.0, evaluations: 1 });
        }
        let exponent = |i: usize| self.ln_kernel[i] + ln_cartan(&self.array(i), x);
        let shift = (0..self.ln_kernel.len())
            .into_par_iter()
            .map(|i| exponent(i).re)
            .filter(|r| r.is_finite())
            .reduce(|| f64::NEG_INFINITY, f64::max);
        if !shift.is_finite() {
            return Err(Error::Integration("integrand vanishes on the whole grid".into()));
        }
        let partials: Vec<(CompensatedSum, CompensatedSum)> = (0..self.ln_kernel.len())
            .collect::<Vec<_>>()
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut fine = CompensatedSum::default();
                let mut coarse = CompensatedSum::default();
                for &i in chunk {
                    let v = (exponent(i) - shift).exp();
                    fine.add(v);
                    if self.digits(i).iter().all(|d| d % 2 == 0) {
                        coarse.add(v);
                    }
                }
                (fine, coarse)
            })
            .collect();
        let mut fine = CompensatedSum::default();
        let mut coarse = CompensatedSum::default();
        for (f, c) in &partials {
            fine.add(f.value());
            coarse.add(c.value());
        }
        if shift > MAX_LOG {
            return Err(Error::Overflow(shift));
        }
        let dim = slot_count(n - 1) as i32;
        let w = self.contour.step() / (2.0 * PI);
        let scale = shift.exp();
        let value = fine.value() * w.powi(dim) * scale;
        let half = coarse.value() * (2.0 * w).powi(dim) * scale;
        Ok(QuadratureResult { value, error_estimate: (value - half).norm(), evaluations: self.evaluations() })
    }
}

fn trivial(top: f64, x: f64) -> QuadratureResult {
    QuadratureResult { value: Complex64::new(0.0, top * x).exp(), error_estimate: 0.0, evaluations: 1 }
}

fn check_size(n: usize, top: &[f64], x: &[f64]) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Dimension(n));
    }
    if top.len() != n {
        return Err(Error::Dimension(top.len()));
    }
    if x.len() != n {
        return Err(Error::Dimension(x.len()));
    }
    Ok(())
}

pub fn whittaker_with_contour(alpha: &[f64], x: &[f64], contour: ContourSpec) -> Result<QuadratureResult> {
    check_size(alpha.len(), alpha, x)?;
    PreparedIntegral::new(Kind::Whittaker, alpha, contour)?.eval(x)
}

/// Direct tensor-product quadrature over the whole triangular array.
pub fn whittaker_eval(n: usize, alpha: &[f64], x: &[f64], tol: f64) -> Result<QuadratureResult> {
    check_size(n, alpha, x)?;
    if n == 1 {
        return Ok(trivial(alpha[0], x[0]));
    }
    whittaker_with_contour(alpha, x, default_contour(n, alpha, tol)?)
}

struct Partial {
    fine: Complex64,
    coarse: Complex64,
    evaluations: usize,
}

/// `ψ_N` from `ψ_{N-1}` on the nodes of level `N-1`, weighted by the separated
/// kernel and measure; the momentum integral collapses onto `P = Σ top`.
fn recursive_sum(top: &[Complex64], x: &[f64], contour: &ContourSpec) -> Result<Partial> {
    let n = top.len();
    if n == 1 {
        let v = (Complex64::i() * top[0] * x[0]).exp();
        return Ok(Partial { fine: v, coarse: v, evaluations: 1 });
    }
    let level = n - 1;
    let m = contour.nodes_per_dim();
    let off = contour.offsets()[level - 1];
    let inner_contour = contour.with_offsets(contour.offsets()[..level].to_vec());
    let momentum: Complex64 = top.iter().sum();
    let total = m.pow(level as u32);
    let parts: Vec<(Complex64, Complex64, usize)> = (0..total)
        .into_par_iter()
        .map(|mut i| {
            let mut digits = vec![0; level];
            for k in (0..level).rev() {
                digits[k] = i % m;
                i /= m;
            }
            let lambda: Vec<Complex64> =
                digits.iter().map(|&d| Complex64::new(contour.node(d), off)).collect();
            let sum: Complex64 = lambda.iter().sum();
            let ln_w = ln_sep_wavefunction(top, &lambda)? + ln_sep_measure(&lambda)
                + Complex64::i() * (momentum - sum) * x[level];
            let w = ln_w.exp();
            let inner = recursive_sum(&lambda, &x[..level], &inner_contour)?;
            let even = digits.iter().all(|d| d % 2 == 0);
            let coarse = if even { w * inner.coarse } else { Complex64::zero() };
            Ok((w * inner.fine, coarse, inner.evaluations))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut fine = CompensatedSum::default();
    let mut coarse = CompensatedSum::default();
    let mut evaluations = 0;
    for (f, c, e) in parts {
        fine.add(f);
        coarse.add(c);
        evaluations += e;
    }
    let w = contour.step() / (2.0 * PI);
    Ok(Partial {
        fine: fine.value() * w.powi(level as i32),
        coarse: coarse.value() * (2.0 * w).powi(level as i32),
        evaluations,
    })
}

pub fn whittaker_recursive_with_contour(alpha: &[f64], x: &[f64], contour: &ContourSpec) -> Result<QuadratureResult> {
    check_size(alpha.len(), alpha, x)?;
    if contour.size() != alpha.len() {
        return Err(Error::Dimension(contour.size()));
    }
    if !contour.is_nested() {
        return Err(Error::Contour(format!("offsets {:?} are not decreasing", contour.offsets())));
    }
    let top: Vec<Complex64> = alpha.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let p = recursive_sum(&top, x, contour)?;
    Ok(QuadratureResult { value: p.fine, error_estimate: (p.fine - p.coarse).norm(), evaluations: p.evaluations })
}

/// Level-by-level evaluation through the separated representation.
pub fn whittaker_recursive(n: usize, alpha: &[f64], x: &[f64], tol: f64) -> Result<QuadratureResult> {
    check_size(n, alpha, x)?;
    if n == 1 {
        return Ok(trivial(alpha[0], x[0]));
    }
    whittaker_recursive_with_contour(alpha, x, &default_contour(n, alpha, tol)?)
}

pub fn spherical_eval(n: usize, lambda_top: &[f64], x: &[f64], tol: f64) -> Result<QuadratureResult> {
    check_size(n, lambda_top, x)?;
    if n == 1 {
        return Ok(trivial(lambda_top[0], x[0]));
    }
    PreparedIntegral::new(Kind::Spherical, lambda_top, spherical_contour(n, lambda_top, tol)?)?.eval(x)
}

/// Scan along one coordinate axis, everything else held at `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridRequest {
    pub kind: Kind,
    pub params: Vec<f64>,
    pub base: Vec<f64>,
    /// 1-based coordinate index.
    pub axis: usize,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridRow {
    pub x: Vec<f64>,
    pub value: Complex64,
    pub error_estimate: f64,
}

pub fn grid_scan(req: &GridRequest) -> Result<Vec<GridRow>> {
    let n = req.params.len();
    check_size(n, &req.params, &req.base)?;
    if req.axis == 0 || req.axis > n {
        return Err(Error::Index(format!("axis {} not in 1..={n}", req.axis)));
    }
    if req.steps == 0 {
        return Err(Error::Domain("a scan needs at least one step".into()));
    }
    let contour = match req.kind {
        Kind::Whittaker => default_contour(n, &req.params, req.tol)?,
        Kind::Spherical => spherical_contour(n, &req.params, req.tol)?,
    };
    let prepared = PreparedIntegral::new(req.kind, &req.params, contour)?;
    let width = if req.steps == 1 { 0.0 } else { (req.to - req.from) / (req.steps - 1) as f64 };
    (0..req.steps)
        .map(|k| {
            let mut x = req.base.clone();
            x[req.axis - 1] = req.from + k as f64 * width;
            let r = prepared.eval(&x)?;
            Ok(GridRow { x, value: r.value, error_estimate: r.error_estimate })
        })
        .collect()
}

/// Uniform sample points `start + k·step`, `k < count`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformAxis {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl UniformAxis {
    pub fn at(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }
}

/// `F(d)` in `ψ(x) = e^{iσ₁x_N} F(x_1 - x_2, …, x_{N-1} - x_N)`, tabulated on a
/// product of uniform axes in the difference coordinates.
#[derive(Clone, Debug)]
pub struct DifferenceTable {
    pub sigma1: f64,
    pub axes: Vec<UniformAxis>,
    values: Vec<Complex64>,
}

impl DifferenceTable {
    pub fn get(&self, index: &[usize]) -> Complex64 {
        let mut flat = 0;
        for (a, i) in self.axes.iter().zip(index) {
            flat = flat * a.count + i;
        }
        self.values[flat]
    }
}

/// Whittaker function for `N = 2, 3` on a difference-coordinate grid, with the
/// inner levels summed once per outer node.
pub fn whittaker_difference_table(alpha: &[f64], axes: &[UniformAxis], tol: f64) -> Result<DifferenceTable> {
    let n = alpha.len();
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Dimension(n));
    }
    if axes.len() != n - 1 {
        return Err(Error::Dimension(axes.len()));
    }
    let contour = default_contour(n, alpha, tol)?;
    let m = contour.nodes_per_dim();
    let w = contour.step() / (2.0 * PI);
    let top: Vec<Complex64> = alpha.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let sigma1 = alpha.iter().sum();
    let values = if n == 2 {
        let off = contour.offsets()[0];
        let outer: Vec<(Complex64, Complex64)> = (0..m)
            .map(|k| {
                let l = Complex64::new(contour.node(k), off);
                Ok((l, ln_sep_wavefunction(&top, &[l])?))
            })
            .collect::<Result<_>>()?;
        let d = axes[0];
        (0..d.count)
            .into_par_iter()
            .map(|i| {
                let mut s = CompensatedSum::default();
                for (l, ln_k) in &outer {
                    s.add((ln_k + Complex64::i() * l * d.at(i)).exp());
                }
                s.value() * w
            })
            .collect()
    } else {
        let (d1, d2) = (axes[0], axes[1]);
        let inner_off = contour.offsets()[0];
        let outer_off = contour.offsets()[1];
        let inner: Vec<Complex64> = (0..m).map(|k| Complex64::new(contour.node(k), inner_off)).collect();
        let inner_phase: Vec<Vec<Complex64>> = inner
            .iter()
            .map(|l| (0..d1.count).map(|i| (Complex64::i() * l * d1.at(i)).exp()).collect())
            .collect();
        let size = d1.count * d2.count;
        let outer_nodes: Vec<usize> = (0..m * m).collect();
        let partials: Vec<Vec<Complex64>> = outer_nodes
            .par_chunks(256)
            .map(|chunk| {
                let mut table = vec![Complex64::zero(); size];
                let mut g = vec![Complex64::zero(); d1.count];
                for &node in chunk {
                    let lambda =
                        [Complex64::new(contour.node(node / m), outer_off), Complex64::new(contour.node(node % m), outer_off)];
                    let ln_outer = ln_sep_wavefunction(&top, &lambda)? + ln_sep_measure(&lambda);
                    g.iter_mut().for_each(|v| *v = Complex64::zero());
                    for (l, phase) in inner.iter().zip(&inner_phase) {
                        let k = ln_sep_wavefunction(&lambda, std::slice::from_ref(l))?.exp();
                        for (gi, p) in g.iter_mut().zip(phase) {
                            *gi += k * p;
                        }
                    }
                    let s = lambda[0] + lambda[1];
                    for j in 0..d2.count {
                        let outer = (ln_outer + Complex64::i() * s * d2.at(j)).exp();
                        for (i, gi) in g.iter().enumerate() {
                            table[i * d2.count + j] += outer * gi;
                        }
                    }
                }
                Ok(table)
            })
            .collect::<Result<_>>()?;
        let mut acc = vec![CompensatedSum::default(); size];
        for p in &partials {
            for (a, v) in acc.iter_mut().zip(p) {
                a.add(*v);
            }
        }
        acc.iter().map(|a| a.value() * w.powi(3)).collect()
    };
    Ok(DifferenceTable { sigma1, axes: axes.to_vec(), values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_contour_offsets() {
        let c = default_contour(2, &[0.5, -0.5], 1e-6).unwrap();
        assert_eq!(c.offsets(), &[0.5, 0.0]);
        let c = default_contour(3, &[0.7, 0.0, -0.7], 1e-6).unwrap();
        assert_eq!(c.offsets(), &[1.0, 0.5, 0.0]);
        assert!(c.nodes_per_dim() >= MIN_NODES);
        let loose = default_contour(3, &[0.7, 0.0, -0.7], 1e-3).unwrap();
        assert!(loose.half_width() < c.half_width());
    }

    #[test]
    fn contour_validation() {
        assert!(ContourSpec::new(vec![0.5, 0.1], 5.0, 65).is_err());
        let flat = ContourSpec::new(vec![0.0, 0.0], 5.0, 65).unwrap();
        assert!(!flat.is_nested());
        assert!(whittaker_with_contour(&[0.3, -0.3], &[0.0, 0.0], flat).is_err());
    }

    #[test]
    fn single_variable_is_plane_wave() {
        let r = whittaker_eval(1, &[1.3], &[0.7], 1e-6).unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 1.3 * 0.7).exp());
        let lam = TriangularArray::from_real_levels(&[vec![0.4]]).unwrap();
        let v = mb_integrand(&lam, &[2.0], Kind::Whittaker).unwrap();
        assert!((v - Complex64::new(0.0, 0.8).exp()).norm() < 1e-15);
    }

    #[test]
    fn two_gamma_integrand() {
        let lam = TriangularArray::from_levels(&[
            vec![Complex64::new(0.2, 0.5)],
            vec![Complex64::new(0.6, 0.0), Complex64::new(-0.6, 0.0)],
        ])
        .unwrap();
        let x = [0.3, -0.4];
        let expected = crate::special::gamma(Complex64::new(0.5, 0.4)).unwrap()
            * crate::special::gamma(Complex64::new(0.5, -0.8)).unwrap()
            * (Complex64::i() * (lam.get(1, 1) * 0.3 + (Complex64::new(0.0, 0.0) - lam.get(1, 1)) * -0.4)).exp();
        let v = mb_integrand(&lam, &x, Kind::Whittaker).unwrap();
        assert!((v - expected).norm() < 1e-13 * expected.norm());
    }

    #[test]
    fn pole_on_contour_is_reported() {
        let lam = TriangularArray::from_real_levels(&[vec![0.6], vec![0.6, -0.6]]).unwrap();
        assert!(matches!(mb_integrand(&lam, &[0.0, 0.0], Kind::Whittaker), Err(Error::Pole { .. })));
    }

    #[test]
    fn coincident_spherical_parameters_rejected() {
        assert!(spherical_eval(2, &[0.3, 0.3], &[0.0, 0.0], 1e-6).is_err());
    }

    #[test]
    fn four_variables_rejected() {
        assert_eq!(whittaker_eval(4, &[0.0; 4], &[0.0; 4], 1e-6).unwrap_err(), Error::Dimension(4));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(Complex64::new(1e16, 0.0));
        s.add(Complex64::new(1.0, 0.0));
        s.add(Complex64::new(-1e16, 0.0));
        assert_eq!(s.value(), Complex64::new(1.0, 0.0));
    }
}
