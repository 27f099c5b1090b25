//! Radial potential evaluation: the screened-Morse family and the
//! generalized exponential-cosine-screened Coulomb, plus equilibrium-geometry
//! helpers and uniform curve sampling.

use thiserror::Error;

/// Which functional form the cosh-corrected Morse term takes.
///
/// The two cosh readings differ in their argument: `CoshOfRadius` uses
/// cosh(δr)·e^{−2δr}, `CoshOfExponential` uses cosh(e^{−δr}). Both are kept
/// because the source tables are only reproducible from the former while the
/// defining expression prints the latter; `CoshOfRadius` is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    CoshOfRadius,
    CoshOfExponential,
    MorseOnly,
    Gecsc,
}

/// Parameters for one radial potential.
///
/// `cosh_coupling` is the independent coefficient C of the cosh term
/// (default Dₑ·δ); `gecsc_strength`/`gecsc_g` are used only by the GECSC
/// variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub de: f64,
    pub delta: f64,
    pub cosh_coupling: f64,
    pub variant: PotentialKind,
    pub gecsc_strength: f64,
    pub gecsc_g: f64,
}

#[derive(Debug, Error)]
pub enum PotentialError {
    #[error("invalid parameter {field}: {detail}")]
    InvalidParameter { field: &'static str, detail: String },
    #[error("radius must be positive, got {0}")]
    Domain(f64),
    #[error("no interior minimum on (0, {scanned_to}]: potential is monotone")]
    NoMinimum { scanned_to: f64 },
    #[error("closed-form equilibrium radius is defined only for the cosh-of-radius and Morse variants")]
    UnsupportedVariant,
    #[error("invalid sampling range: require 0 < r_min < r_max and n_points >= 2")]
    BadRange,
}

impl PotentialSpec {
    /// The screened-Morse potential with the default cosh coupling C = Dₑδ.
    pub fn ecsm(de: f64, delta: f64) -> Result<Self, PotentialError> {
        Self::new(de, delta, de * delta, PotentialKind::CoshOfRadius, 0.0, 0.0)
    }

    pub fn with_coupling(de: f64, delta: f64, cosh_coupling: f64, variant: PotentialKind) -> Result<Self, PotentialError> {
        Self::new(de, delta, cosh_coupling, variant, 0.0, 0.0)
    }

    pub fn morse(de: f64, delta: f64) -> Result<Self, PotentialError> {
        Self::new(de, delta, 0.0, PotentialKind::MorseOnly, 0.0, 0.0)
    }

    pub fn gecsc(strength: f64, g: f64, delta: f64) -> Result<Self, PotentialError> {
        Self::new(0.0, delta, 0.0, PotentialKind::Gecsc, strength, g)
    }

    fn new(
        de: f64,
        delta: f64,
        cosh_coupling: f64,
        variant: PotentialKind,
        gecsc_strength: f64,
        gecsc_g: f64,
    ) -> Result<Self, PotentialError> {
        let delta_ok = match variant {
            PotentialKind::Gecsc => delta >= 0.0,
            _ => delta > 0.0,
        };
        if !delta.is_finite() || !delta_ok {
            return Err(PotentialError::InvalidParameter {
                field: "delta",
                detail: format!("screening parameter must be positive (non-negative for GECSC), got {delta}"),
            });
        }
        for (field, v) in [("de", de), ("cosh_coupling", cosh_coupling), ("gecsc_strength", gecsc_strength), ("gecsc_g", gecsc_g)] {
            if !v.is_finite() {
                return Err(PotentialError::InvalidParameter { field, detail: format!("must be finite, got {v}") });
            }
        }
        Ok(PotentialSpec { de, delta, cosh_coupling, variant, gecsc_strength, gecsc_g })
    }

    /// Evaluate V(r). The domain is uniformly r > 0.
    pub fn evaluate(&self, r: f64) -> Result<f64, PotentialError> {
        if !r.is_finite() || r <= 0.0 {
            return Err(PotentialError::Domain(r));
        }
        let x = (-self.delta * r).exp();
        Ok(match self.variant {
            PotentialKind::MorseOnly => self.de * (x * x - 2.0 * x),
            PotentialKind::CoshOfRadius => {
                self.de * (x * x - 2.0 * x) - self.cosh_coupling * (self.delta * r).cosh() * x * x
            }
            PotentialKind::CoshOfExponential => self.de * (x * x - 2.0 * x) - self.cosh_coupling * x.cosh(),
            PotentialKind::Gecsc => {
                -(self.gecsc_strength / r) * x * (self.gecsc_g * self.delta * r).cos()
            }
        })
    }

    /// Equilibrium radius from the closed form r₀ = (1/δ)·ln(1 + C/(2Dₑ)).
    pub fn equilibrium_radius_closed(&self) -> Result<f64, PotentialError> {
        match self.variant {
            PotentialKind::CoshOfRadius | PotentialKind::MorseOnly => {}
            _ => return Err(PotentialError::UnsupportedVariant),
        }
        Ok((1.0 + self.cosh_coupling / (2.0 * self.de)).ln() / self.delta)
    }

    /// Equilibrium radius by direct minimization of V over (0, 50/δ].
    ///
    /// Scans a fine grid for an interior bracket, then refines by
    /// golden-section search to |Δr| < 10⁻¹⁰/δ. A monotone potential has no
    /// interior minimum and is reported as such.
    pub fn equilibrium_radius_numeric(&self) -> Result<f64, PotentialError> {
        match self.variant {
            PotentialKind::CoshOfRadius | PotentialKind::MorseOnly => {}
            _ => return Err(PotentialError::UnsupportedVariant),
        }
        let r_max = 50.0 / self.delta;
        let n = 4096;
        let h = r_max / n as f64;
        let v_at = |r: f64| self.evaluate(r).expect("r > 0 by construction");
        let mut bracket = None;
        let mut prev2 = v_at(h * 0.5);
        let mut prev = v_at(h);
        for i in 2..=n {
            let r = h * i as f64;
            let v = v_at(r);
            if prev < prev2 && prev < v {
                bracket = Some((h * (i as f64 - 2.0).max(0.5), r));
                break;
            }
            prev2 = prev;
            prev = v;
        }
        let (mut a, mut b) = bracket.ok_or(PotentialError::NoMinimum { scanned_to: r_max })?;
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let tol = 1e-10 / self.delta;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = v_at(c);
        let mut fd = v_at(d);
        while b - a > tol {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = v_at(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = v_at(d);
            }
        }
        Ok(0.5 * (a + b))
    }

    /// Residual |dV/dr| at a radius, by central difference. Reported alongside
    /// the closed-form r₀, which is a stationary point only approximately.
    pub fn gradient_residual(&self, r: f64) -> Result<f64, PotentialError> {
        let h = 1e-7 / self.delta.max(1e-3);
        let lo = self.evaluate((r - h).max(r * 0.5))?;
        let hi = self.evaluate(r + h)?;
        Ok(((hi - lo) / (2.0 * h)).abs())
    }

    /// Uniform samples of (r, V(r)) inclusive of both endpoints.
    pub fn sample_curve(&self, r_min: f64, r_max: f64, n_points: usize) -> Result<Vec<(f64, f64)>, PotentialError> {
        if !(r_min > 0.0 && r_min < r_max && n_points >= 2) {
            return Err(PotentialError::BadRange);
        }
        let step = (r_max - r_min) / (n_points - 1) as f64;
        (0..n_points)
            .map(|i| {
                let r = if i + 1 == n_points { r_max } else { r_min + step * i as f64 };
                Ok((r, self.evaluate(r)?))
            })
            .collect()
    }
}

/// Curve CSV with header `r,V`, one sample per row, 17 significant digits.
pub fn curve_csv(samples: &[(f64, f64)]) -> String {
    let mut out = String::from("r,V\n");
    for (r, v) in samples {
        out.push_str(&format!("{r:.16e},{v:.16e}\n"));
    }
    out
}
