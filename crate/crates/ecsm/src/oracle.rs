//! Independent numerical bound-state solver for the reduced radial equation
//! u″ + (2μ/ħ²)(E − V(r))u = 0 with Dirichlet ends, by finite-difference
//! Hamiltonian diagonalization (Sturm bisection + inverse iteration) and by
//! Numerov shooting with turning-point matching.
//!
//! Used to validate itself on exactly solvable cases (Coulomb, Morse) and to
//! measure how far the closed-form spectra drift from direct numerics.

use serde::Serialize;
use thiserror::Error;

use crate::molecules::MoleculeRecord;
use crate::potential::PotentialSpec;
use crate::quadrature::trapezoid_uniform;
use crate::spectrum::{self, SpectrumVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    FiniteDifference,
    NumerovShooting,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::FiniteDifference => "fd",
            Method::NumerovShooting => "numerov",
        }
    }
}

/// Grid and search settings for one solve.
///
/// `n_grid` counts all grid points including both Dirichlet ends. `r_min`
/// may be non-positive for potentials that are finite there (the Morse-type
/// domain extension); potentials that diverge at the left end need an
/// r_min inside their domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    pub r_min: f64,
    pub r_max: f64,
    pub n_grid: usize,
    pub max_levels: usize,
    /// Absolute bisection tolerance on eigenvalues for the shooting method.
    pub tol: f64,
    /// ħ² in the working units; 1 in the raw-number convention.
    pub hbar2: f64,
}

impl SolverConfig {
    pub fn fd_default(delta: f64) -> Self {
        SolverConfig {
            method: Method::FiniteDifference,
            r_min: 1e-6,
            r_max: 30f64.max(50.0 / delta),
            n_grid: 8000,
            max_levels: 11,
            tol: 1e-12,
            hbar2: 1.0,
        }
    }

    pub fn numerov_default(delta: f64) -> Self {
        SolverConfig {
            method: Method::NumerovShooting,
            n_grid: 20000,
            ..Self::fd_default(delta)
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if !(self.r_min < self.r_max) || self.n_grid < 100 || !(self.tol > 0.0) || !(self.hbar2 > 0.0) {
            return Err(OracleError::InvalidConfig(format!(
                "require r_min < r_max, n_grid >= 100, tol > 0, hbar2 > 0; got r_min={}, r_max={}, n_grid={}, tol={}, hbar2={}",
                self.r_min, self.r_max, self.n_grid, self.tol, self.hbar2
            )));
        }
        Ok(())
    }
}

/// Grid-refinement certificate: the eigenvalue at the configured grid and at
/// a doubled grid, their difference, and the Richardson-extrapolated value
/// at the method's nominal order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Convergence {
    pub e_coarse: f64,
    pub e_fine: f64,
    pub diff: f64,
    pub rel: f64,
    pub e_refined: f64,
}

#[derive(Debug, Clone)]
pub struct RadialSolution {
    pub energy: f64,
    pub grid: Vec<f64>,
    pub u: Vec<f64>,
    pub node_count: usize,
    pub method: Method,
    pub converged: Convergence,
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid solver config: {0}")]
    InvalidConfig(String),
    #[error("potential is not finite at r = {r}: V = {value}")]
    NonFinitePotential { r: f64, value: f64 },
    #[error("eigenvalue search failed for level {level} in [{lo}, {hi}]: no sign change of the matching residual")]
    Search { level: usize, lo: f64, hi: f64 },
}

pub fn solve(v: &dyn Fn(f64) -> f64, mu: f64, config: &SolverConfig) -> Result<Vec<RadialSolution>, OracleError> {
    match config.method {
        Method::FiniteDifference => solve_fd(v, mu, config),
        Method::NumerovShooting => solve_numerov(v, mu, config),
    }
}

fn sample_potential(v: &dyn Fn(f64) -> f64, grid: &[f64]) -> Result<Vec<f64>, OracleError> {
    grid.iter()
        .map(|&r| {
            let val = v(r);
            if val.is_finite() {
                Ok(val)
            } else {
                Err(OracleError::NonFinitePotential { r, value: val })
            }
        })
        .collect()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { b } else { a + h * i as f64 }).collect()
}

/// Sign changes among entries above a noise floor (relative to max|v|),
/// so solver noise in the decayed tails does not register as nodes.
fn count_sign_changes(values: &[f64]) -> usize {
    let amplitude = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-8 * amplitude;
    let mut count = 0;
    let mut last = 0.0f64;
    for &v in values {
        if v.abs() > floor {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = v;
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) below x,
/// by the Sturm/LDL sign count.
fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    let off2 = off * off;
    let mut first = true;
    for &a in diag {
        d = if first { a - x } else { a - x - off2 / d };
        first = false;
        if d == 0.0 {
            d = f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// j-th eigenvalue (ascending, 0-based) within (lo, hi), by bisecting the
/// Sturm count down to machine resolution.
fn tridiag_eigenvalue(diag: &[f64], off: f64, j: usize, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solve (T − shift·I) x = rhs for symmetric tridiagonal T with constant
/// off-diagonal, by banded LU with partial pivoting (one fill-in diagonal).
fn solve_shifted_tridiag(diag: &[f64], off: f64, shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut d: Vec<f64> = diag.iter().map(|a| a - shift).collect();
    let mut e = vec![off; n - 1]; // first superdiagonal
    let mut f = vec![0.0; n]; // second superdiagonal (fill-in), f[i] = (i, i+2)
    let mut b = rhs.to_vec();

    for i in 0..n - 1 {
        let sub = off; // (i+1, i) entry before elimination
        if sub.abs() > d[i].abs() {
            // swap rows i and i+1; row i+1 has entries (sub, d[i+1], e[i+1])
            let (old_d, old_e, old_f, old_b) = (d[i], e[i], f[i], b[i]);
            d[i] = sub;
            e[i] = d[i + 1];
            f[i] = if i + 1 < n - 1 { e[i + 1] } else { 0.0 };
            b[i] = b[i + 1];
            let pivot = if d[i] == 0.0 { f64::MIN_POSITIVE } else { d[i] };
            let m = old_d / pivot;
            d[i + 1] = old_e - m * e[i];
            if i + 1 < n - 1 {
                e[i + 1] = old_f - m * f[i];
            }
            b[i + 1] = old_b - m * b[i];
        } else {
            let pivot = if d[i] == 0.0 { f64::MIN_POSITIVE } else { d[i] };
            let m = sub / pivot;
            d[i + 1] -= m * e[i];
            if i + 1 < n - 1 {
                e[i + 1] -= m * f[i];
            }
            b[i + 1] -= m * b[i];
        }
    }

    let mut x = vec![0.0; n];
    let pivot = |v: f64| if v == 0.0 { f64::MIN_POSITIVE } else { v };
    x[n - 1] = b[n - 1] / pivot(d[n - 1]);
    if n >= 2 {
        x[n - 2] = (b[n - 2] - e[n - 2] * x[n - 1]) / pivot(d[n - 2]);
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (b[i] - e[i] * x[i + 1] - f[i] * x[i + 2]) / pivot(d[i]);
    }
    x
}

/// Eigenvector by inverse iteration at an accurately bisected eigenvalue.
fn tridiag_eigenvector(diag: &[f64], off: f64, eigenvalue: f64) -> Vec<f64> {
    let n = diag.len();
    let scale = diag.iter().fold(off.abs(), |m, a| m.max(a.abs()));
    let shift = eigenvalue + scale * 1e-14;
    let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i % 3) as f64)).collect();
    for _ in 0..4 {
        y = solve_shifted_tridiag(diag, off, shift, &y);
        let norm = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !(norm.is_finite() && norm > 0.0) {
            break;
        }
        for v in &mut y {
            *v /= norm;
        }
    }
    y
}

/// Eigenvalue with, optionally, its interior-grid eigenvector.
type Eigenpair = (f64, Option<Vec<f64>>);

/// Eigenvalues below zero of the FD Hamiltonian on a fixed grid; returns
/// (grid, eigenpairs) without the refinement certificate.
fn fd_levels(
    v: &dyn Fn(f64) -> f64,
    mu: f64,
    config: &SolverConfig,
    n_grid: usize,
    want_vectors: bool,
) -> Result<(Vec<f64>, Vec<Eigenpair>), OracleError> {
    let grid = linspace(config.r_min, config.r_max, n_grid);
    let interior = &grid[1..n_grid - 1];
    let pot = sample_potential(v, interior)?;
    let h = (config.r_max - config.r_min) / (n_grid - 1) as f64;
    let kin = config.hbar2 / (2.0 * mu * h * h);
    let diag: Vec<f64> = pot.iter().map(|&p| 2.0 * kin + p).collect();
    let off = -kin;

    let n_bound = sturm_count(&diag, off, 0.0);
    let n_levels = n_bound.min(config.max_levels);
    let lower = diag.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * off.abs();

    let mut out = Vec::with_capacity(n_levels);
    for j in 0..n_levels {
        let energy = tridiag_eigenvalue(&diag, off, j, lower, 0.0);
        let vector = want_vectors.then(|| tridiag_eigenvector(&diag, off, energy));
        out.push((energy, vector));
    }
    Ok((grid, out))
}

/// Finite-difference solve: symmetric tridiagonal −(ħ²/2μ)D₂ + diag(V) with
/// Dirichlet ends; lowest eigenpairs with E < 0, eigenvectors normalized by
/// trapezoid quadrature. A certificate from a doubled grid accompanies each
/// level.
pub fn solve_fd(v: &dyn Fn(f64) -> f64, mu: f64, config: &SolverConfig) -> Result<Vec<RadialSolution>, OracleError> {
    config.validate()?;
    let (grid, pairs) = fd_levels(v, mu, config, config.n_grid, true)?;
    let (_, fine_pairs) = fd_levels(v, mu, config, config.n_grid * 2 - 1, false)?;
    let h = (config.r_max - config.r_min) / (config.n_grid - 1) as f64;

    let mut out = Vec::with_capacity(pairs.len());
    for (j, (energy, vector)) in pairs.into_iter().enumerate() {
        let interior = vector.expect("vectors requested");
        let mut u = Vec::with_capacity(config.n_grid);
        u.push(0.0);
        u.extend(interior);
        u.push(0.0);
        let norm2 = trapezoid_uniform(&u.iter().map(|x| x * x).collect::<Vec<_>>(), h);
        let scale = 1.0 / norm2.sqrt();
        // deterministic sign: positive first lobe
        let lead = u.iter().find(|x| x.abs() > 1e-12).copied().unwrap_or(1.0);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        for x in &mut u {
            *x *= scale * sign;
        }
        let node_count = count_sign_changes(&u[1..config.n_grid - 1]);

        let e_fine = fine_pairs.get(j).map(|p| p.0).unwrap_or(energy);
        let diff = (energy - e_fine).abs();
        let e_refined = (4.0 * e_fine - energy) / 3.0;
        out.push(RadialSolution {
            energy,
            grid: grid.clone(),
            u,
            node_count,
            method: Method::FiniteDifference,
            converged: Convergence {
                e_coarse: energy,
                e_fine,
                diff,
                rel: diff / energy.abs().max(f64::MIN_POSITIVE),
                e_refined,
            },
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Numerov shooting
// ---------------------------------------------------------------------------

struct NumerovGrid {
    h: f64,
    /// f_i = (2μ/ħ²)(V_i − E) for u″ = f u, at E = 0; shift by −2μE/ħ² per energy.
    f0: Vec<f64>,
    two_mu_over_hbar2: f64,
    v_min: f64,
}

impl NumerovGrid {
    fn build(v: &dyn Fn(f64) -> f64, mu: f64, config: &SolverConfig, n_grid: usize) -> Result<Self, OracleError> {
        let grid = linspace(config.r_min, config.r_max, n_grid);
        let pot = sample_potential(v, &grid)?;
        let two_mu_over_hbar2 = 2.0 * mu / config.hbar2;
        let v_min = pot.iter().cloned().fold(f64::INFINITY, f64::min);
        let f0 = pot.iter().map(|&p| two_mu_over_hbar2 * p).collect();
        Ok(NumerovGrid {
            h: (config.r_max - config.r_min) / (n_grid - 1) as f64,
            f0,
            two_mu_over_hbar2,
            v_min,
        })
    }

    fn f_at(&self, energy: f64) -> Vec<f64> {
        let shift = self.two_mu_over_hbar2 * energy;
        self.f0.iter().map(|&f| f - shift).collect()
    }
}

const RESCALE_LIMIT: f64 = 1e200;

/// Outward Numerov pass over f, through index `last`, with the
/// singular-origin correction when f is huge or non-finite at the left end.
///
/// The three-term relation at the first interior node needs
/// P₀ = u₀ − (h²/12)(f·u)(r₀); with u₀ = 0 and f singular the product
/// (f·u)(r₀) = u″(r₀) is finite but nonzero, and dropping it costs an order
/// of accuracy. It is recovered by linear extrapolation of f·u from the
/// first two interior nodes.
fn numerov_outward(f: &[f64], h: f64, last: usize) -> Vec<f64> {
    let c = |i: usize| 1.0 - h * h * f[i] / 12.0;
    let mut u = vec![0.0; last + 2];
    u[1] = 1e-6;
    let singular = !f[0].is_finite() || h * h * f[0] < -1.0;
    let start = if singular {
        let mut fu0 = f[1] * u[1];
        for _ in 0..3 {
            let p0 = -h * h / 12.0 * fu0;
            u[2] = ((12.0 - 10.0 * c(1)) * u[1] - p0) / c(2);
            fu0 = 2.0 * f[1] * u[1] - f[2] * u[2];
        }
        2
    } else {
        1
    };
    for i in start..=last {
        u[i + 1] = ((12.0 - 10.0 * c(i)) * u[i] - c(i - 1) * u[i - 1]) / c(i + 1);
        if u[i + 1].abs() > RESCALE_LIMIT {
            let inv = 1.0 / RESCALE_LIMIT;
            for x in &mut u[..i + 2] {
                *x *= inv;
            }
        }
    }
    u
}

/// Node count of the full outward solution (Sturm oscillation count).
fn numerov_node_count(f: &[f64], h: f64) -> usize {
    numerov_outward_nodes(f, h, f.len() - 1)
}

fn numerov_outward_nodes(f: &[f64], h: f64, last: usize) -> usize {
    let c = |i: usize| 1.0 - h * h * f[i] / 12.0;
    let singular = !f[0].is_finite() || h * h * f[0] < -1.0;
    let mut nodes = 0;
    let mut u0 = 0.0f64;
    let mut u1 = 1e-6f64;
    let mut start = 1;
    if singular {
        let mut fu0 = f[1] * u1;
        let mut u2 = 0.0;
        for _ in 0..3 {
            let p0 = -h * h / 12.0 * fu0;
            u2 = ((12.0 - 10.0 * c(1)) * u1 - p0) / c(2);
            fu0 = 2.0 * f[1] * u1 - f[2] * u2;
        }
        if u2 != 0.0 && (u1 > 0.0) != (u2 > 0.0) {
            nodes += 1;
        }
        u0 = u1;
        u1 = u2;
        start = 2;
    }
    for i in start..last {
        let mut u2 = ((12.0 - 10.0 * c(i)) * u1 - c(i - 1) * u0) / c(i + 1);
        if u1 != 0.0 && u2 != 0.0 && (u1 > 0.0) != (u2 > 0.0) {
            nodes += 1;
        }
        if u2.abs() > RESCALE_LIMIT {
            let inv = 1.0 / RESCALE_LIMIT;
            u1 *= inv;
            u2 *= inv;
        }
        u0 = u1;
        u1 = u2;
    }
    nodes
}

/// Matching residual of the Numerov three-term relation at the outermost
/// classical turning point, with outward and inward pieces scaled to agree
/// there. Optionally returns the assembled solution.
fn numerov_residual(f: &[f64], h: f64, with_solution: bool) -> (f64, Option<Vec<f64>>) {
    let n = f.len();
    let c = |i: usize| 1.0 - h * h * f[i] / 12.0;
    // outermost sign change of f (classically allowed has f < 0)
    let mut m = n / 2;
    for i in (1..n).rev() {
        if f[i - 1] < 0.0 && f[i] >= 0.0 {
            m = i - 1;
            break;
        }
    }
    m = m.clamp(2, n - 3);

    let uo = numerov_outward(f, h, m);
    let mut ui = vec![0.0; n];
    ui[n - 2] = 1e-6;
    for i in (m..=n - 2).rev() {
        ui[i - 1] = ((12.0 - 10.0 * c(i)) * ui[i] - c(i + 1) * ui[i + 1]) / c(i - 1);
        if ui[i - 1].abs() > RESCALE_LIMIT {
            let inv = 1.0 / RESCALE_LIMIT;
            for x in &mut ui[i - 1..] {
                *x *= inv;
            }
        }
    }
    if uo[m] == 0.0 || ui[m] == 0.0 {
        return (f64::NAN, None);
    }
    let scale = uo[m] / ui[m];
    let mut u: Vec<f64> = Vec::with_capacity(n);
    u.extend_from_slice(&uo[..m]);
    u.extend(ui[m..].iter().map(|x| x * scale));
    let amplitude = u.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let residual = (c(m + 1) * u[m + 1] + c(m - 1) * u[m - 1] - (12.0 - 10.0 * c(m)) * u[m]) / amplitude.max(f64::MIN_POSITIVE);
    (residual, with_solution.then_some(u))
}

/// Locate the k-th bound level (0-based) on a fixed grid, or None when the
/// well holds fewer than k+1 levels.
fn numerov_level(grid: &NumerovGrid, config: &SolverConfig, k: usize) -> Result<Option<f64>, OracleError> {
    let nodes_at = |e: f64| numerov_node_count(&grid.f_at(e), grid.h);
    let res_at = |e: f64| numerov_residual(&grid.f_at(e), grid.h, false).0;

    let v_min = grid.v_min;
    // stability clamp: keep |h²f|/12 ≲ 1/4 over the search window
    let floor = -3.0 / (grid.two_mu_over_hbar2 / 2.0 * grid.h * grid.h);
    let mut lo = (v_min - v_min.abs() * 1e-3).max(floor);
    let mut hi = -1e-12;
    if nodes_at(hi) <= k || nodes_at(lo) > k {
        return Ok(None);
    }

    // narrow by node count until the residual has a sign change
    let (mut res_lo, mut res_hi) = (res_at(lo), res_at(hi));
    for _ in 0..200 {
        if res_lo.is_finite() && res_hi.is_finite() && res_lo * res_hi < 0.0 && nodes_at(lo) == k && nodes_at(hi) == k + 1 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if nodes_at(mid) <= k {
            lo = mid;
            res_lo = res_at(lo);
        } else {
            hi = mid;
            res_hi = res_at(hi);
        }
    }
    if !(res_lo.is_finite() && res_hi.is_finite() && res_lo * res_hi < 0.0) {
        // last resort: fine scan inside the node bracket
        let mut found = false;
        let scan = 64;
        for i in 0..scan {
            let a = lo + (hi - lo) * i as f64 / scan as f64;
            let b = lo + (hi - lo) * (i + 1) as f64 / scan as f64;
            let (ra, rb) = (res_at(a), res_at(b));
            if ra.is_finite() && rb.is_finite() && ra * rb < 0.0 {
                lo = a;
                hi = b;
                res_lo = ra;
                found = true;
                break;
            }
        }
        if !found {
            return Err(OracleError::Search { level: k, lo, hi });
        }
    }
    while hi - lo > config.tol.max(lo.abs() * 1e-15) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let rm = res_at(mid);
        if res_lo * rm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            res_lo = rm;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Numerov shooting solve: outward/inward integration with fourth-order
/// stencils, log-derivative matching at the outermost turning point,
/// node-count bracketing and bisection to `tol`. Levels sorted ascending.
pub fn solve_numerov(v: &dyn Fn(f64) -> f64, mu: f64, config: &SolverConfig) -> Result<Vec<RadialSolution>, OracleError> {
    config.validate()?;
    let grid_vals = linspace(config.r_min, config.r_max, config.n_grid);
    let coarse = NumerovGrid::build(v, mu, config, config.n_grid)?;
    let fine = NumerovGrid::build(v, mu, config, config.n_grid * 2 - 1)?;

    let mut out = Vec::new();
    for k in 0..config.max_levels {
        let Some(energy) = numerov_level(&coarse, config, k)? else {
            break;
        };
        let e_fine = numerov_level(&fine, config, k)?.unwrap_or(energy);
        let (_, solution) = numerov_residual(&coarse.f_at(energy), coarse.h, true);
        let mut u = solution.unwrap_or_else(|| vec![0.0; config.n_grid]);
        let h = coarse.h;
        // bring to unit amplitude first so u^2 cannot overflow
        let amplitude = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if amplitude > 0.0 {
            for x in &mut u {
                *x /= amplitude;
            }
        }
        let norm2 = trapezoid_uniform(&u.iter().map(|x| x * x).collect::<Vec<_>>(), h);
        if norm2 > 0.0 {
            let lead = u.iter().find(|x| x.abs() > 1e-12).copied().unwrap_or(1.0);
            let scale = 1.0 / norm2.sqrt() * if lead < 0.0 { -1.0 } else { 1.0 };
            for x in &mut u {
                *x *= scale;
            }
        }
        let node_count = count_sign_changes(&u[1..config.n_grid - 1]);
        let diff = (energy - e_fine).abs();
        out.push(RadialSolution {
            energy,
            grid: grid_vals.clone(),
            u,
            node_count,
            method: Method::NumerovShooting,
            converged: Convergence {
                e_coarse: energy,
                e_fine,
                diff,
                rel: diff / energy.abs().max(f64::MIN_POSITIVE),
                e_refined: (16.0 * e_fine - energy) / 15.0,
            },
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Closed-form comparison
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct LevelComparison {
    pub n: u32,
    pub e_closed: Option<f64>,
    pub e_oracle: Option<f64>,
    pub abs_dev: Option<f64>,
    pub rel_dev: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSummary {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub molecule: String,
    pub variant: String,
    pub method: String,
    pub levels: Vec<LevelComparison>,
    pub grid: GridSummary,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Compare a closed-form spectrum against the numerical solver on the
/// screened-Morse potential (cosh-of-radius form, C = Dₑδ). Deviations are
/// reported, never gated: the source offers no numerical baseline, so the
/// gap itself is the measurement.
pub fn compare_closed_form(
    molecule: &MoleculeRecord,
    variant: SpectrumVariant,
    config: &SolverConfig,
) -> Result<ComparisonReport, OracleError> {
    config.validate()?;
    let spec = PotentialSpec::ecsm(molecule.de, molecule.delta)
        .map_err(|e| OracleError::InvalidConfig(format!("potential: {e}")))?;
    let potential = move |r: f64| spec.evaluate(r).unwrap_or(f64::INFINITY);

    let mut note = None;
    let closed: Vec<f64> = match spectrum::spectrum_range(
        molecule.mu,
        molecule.de,
        molecule.delta,
        config.max_levels.saturating_sub(1) as u32,
        variant,
    ) {
        Ok(levels) => levels.into_iter().map(|l| l.energy).collect(),
        Err(e) => {
            note = Some(format!("closed form unavailable: {e}"));
            Vec::new()
        }
    };

    let solutions = solve(&potential, molecule.mu, config)?;
    let mut oracle: Vec<(f64, Convergence)> = solutions.iter().map(|s| (s.energy, s.converged)).collect();
    oracle.sort_by(|a, b| a.0.total_cmp(&b.0));

    if oracle.len() < closed.len() {
        let msg = format!("oracle found {} level(s) for {} requested", oracle.len(), closed.len());
        note = Some(match note {
            Some(prev) => format!("{prev}; {msg}"),
            None => msg,
        });
    }

    let count = closed.len().max(oracle.len());
    let mut levels = Vec::with_capacity(count);
    for n in 0..count {
        let e_closed = closed.get(n).copied();
        let e_oracle = oracle.get(n).map(|p| p.0);
        let abs_dev = e_closed.zip(e_oracle).map(|(c, o)| (c - o).abs());
        let rel_dev = e_closed
            .zip(e_oracle)
            .map(|(c, o)| (c - o).abs() / o.abs().max(f64::MIN_POSITIVE));
        levels.push(LevelComparison { n: n as u32, e_closed, e_oracle, abs_dev, rel_dev });
    }

    let converged = oracle.iter().all(|(_, c)| c.rel < 1e-4);
    Ok(ComparisonReport {
        molecule: molecule.name.clone(),
        variant: variant.as_str().to_string(),
        method: config.method.as_str().to_string(),
        levels,
        grid: GridSummary { r_min: config.r_min, r_max: config.r_max, n: config.n_grid },
        converged,
        note,
    })
}
