//! Closed-form bound-state energies in several formula readings, the CSP and
//! Morse limiting spectra, and the quantization-trace diagnostics.
//!
//! All formulas are evaluated in the raw-number convention (ħ = 1, μ in amu,
//! Dₑ and δ as tabulated).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Which closed-form reading produced an energy.
///
/// `TableForm` is the reading that reproduces the bundled 23-molecule energy
/// tables: the inner term of the bracket is 4/(δ+2). `LiteralEq31` keeps the
/// printed inner term 8/(δ+2), exactly twice the table-consistent one, and
/// does not reproduce the tables. `NuConsistent` solves the quantization
/// condition λ = λₙ directly and is defined only for δ > 2. `CspEq32` and
/// `MorseEq33` are the printed limiting spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumVariant {
    TableForm,
    LiteralEq31,
    NuConsistent,
    CspEq32,
    MorseEq33,
}

impl SpectrumVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumVariant::TableForm => "table",
            SpectrumVariant::LiteralEq31 => "literal",
            SpectrumVariant::NuConsistent => "nu",
            SpectrumVariant::CspEq32 => "csp",
            SpectrumVariant::MorseEq33 => "morse",
        }
    }
}

impl fmt::Display for SpectrumVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpectrumVariant {
    type Err = SpectrumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(SpectrumVariant::TableForm),
            "literal" => Ok(SpectrumVariant::LiteralEq31),
            "nu" => Ok(SpectrumVariant::NuConsistent),
            "csp" => Ok(SpectrumVariant::CspEq32),
            "morse" => Ok(SpectrumVariant::MorseEq33),
            other => Err(SpectrumError::UnknownVariant(other.to_string())),
        }
    }
}

/// One (n, Eₙ) pair together with the reading that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: u32,
    pub energy: f64,
    pub variant: SpectrumVariant,
}

/// Intermediate quantities of the quantization construction, in the real
/// reparameterization b = iβ (valid for δ > 2, where β² < 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuTrace {
    pub eps2: f64,
    pub beta2: f64,
    pub gamma2: f64,
    pub b: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    /// Coefficients of the selected π(s) = pi_linear·s + pi_const.
    pub pi_linear: f64,
    pub pi_const: f64,
    pub lambda: f64,
    pub lambda_n: f64,
    pub n: u32,
    pub residual: f64,
}

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("invalid parameter {field}: {detail}")]
    InvalidParameter { field: &'static str, detail: String },
    #[error("unknown spectrum variant '{0}' (expected table, literal, nu, csp or morse)")]
    UnknownVariant(String),
    #[error("nu-consistent spectrum requires delta > 2 (got delta = {0}): beta^2 >= 0 puts the trace in the complex regime")]
    Regime(f64),
    #[error("no bound level at n = {n}: eps_n = {eps} <= 0")]
    NoBoundLevel { n: u32, eps: f64 },
    #[error("energy {energy} is at or above the reference level De*delta/2 = {threshold}: eps^2 <= 0")]
    UnboundEnergy { energy: f64, threshold: f64 },
}

fn check_params(mu: f64, de: f64, delta: f64) -> Result<(), SpectrumError> {
    for (field, v) in [("mu", mu), ("de", de), ("delta", delta)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(SpectrumError::InvalidParameter {
                field,
                detail: format!("must be a finite positive number, got {v}"),
            });
        }
    }
    Ok(())
}

/// The dimensionless reduction parameters (ε², β², γ²) at a given energy.
pub fn reduction_params(mu: f64, de: f64, delta: f64, energy: f64) -> Result<(f64, f64, f64), SpectrumError> {
    check_params(mu, de, delta)?;
    let d2 = delta * delta;
    let eps2 = -(2.0 * mu / d2) * (energy - de * delta / 2.0);
    let beta2 = -(2.0 * mu / d2) * (de * delta / 2.0 - de);
    let gamma2 = 4.0 * mu * de / d2;
    Ok((eps2, beta2, gamma2))
}

/// The real value b = iβ = √(2μ(Dₑδ/2 − Dₑ))/δ, defined for δ > 2.
fn real_beta(mu: f64, de: f64, delta: f64) -> Result<f64, SpectrumError> {
    if delta <= 2.0 {
        return Err(SpectrumError::Regime(delta));
    }
    Ok((2.0 * mu * (de * delta / 2.0 - de)).sqrt() / delta)
}

/// εₙ of the quantization condition, (γ² − (2n+1)·b)/(2b).
fn eps_n(mu: f64, de: f64, delta: f64, n: u32) -> Result<f64, SpectrumError> {
    let b = real_beta(mu, de, delta)?;
    let gamma2 = 4.0 * mu * de / (delta * delta);
    Ok((gamma2 - (2.0 * n as f64 + 1.0) * b) / (2.0 * b))
}

/// Closed-form energy of level n under the given reading.
pub fn energy(mu: f64, de: f64, delta: f64, n: u32, variant: SpectrumVariant) -> Result<EnergyLevel, SpectrumError> {
    check_params(mu, de, delta)?;
    let d2 = delta * delta;
    let shift = de * delta / 2.0;
    let e = match variant {
        SpectrumVariant::TableForm | SpectrumVariant::LiteralEq31 => {
            let q = if variant == SpectrumVariant::TableForm {
                4.0 / (delta + 2.0)
            } else {
                8.0 / (delta + 2.0)
            };
            let bracket = 1.0 + 2.0 * n as f64 + q * q;
            -(d2 / (8.0 * mu)) * bracket * bracket - shift
        }
        SpectrumVariant::CspEq32 => {
            let half = n as f64 + 0.5;
            -(d2 / (12.0 * mu)) * half * half - shift
        }
        SpectrumVariant::MorseEq33 => {
            let bracket = n as f64 + 0.5 + 2.0 * de;
            -(d2 / (2.0 * mu)) * bracket * bracket
        }
        SpectrumVariant::NuConsistent => {
            let eps = eps_n(mu, de, delta, n)?;
            if eps <= 0.0 {
                return Err(SpectrumError::NoBoundLevel { n, eps });
            }
            shift - (d2 / (2.0 * mu)) * eps * eps
        }
    };
    Ok(EnergyLevel { n, energy: e, variant })
}

/// Levels n = 0..=n_max in order. For `NuConsistent` the list is truncated at
/// the last n with εₙ > 0.
pub fn spectrum_range(
    mu: f64,
    de: f64,
    delta: f64,
    n_max: u32,
    variant: SpectrumVariant,
) -> Result<Vec<EnergyLevel>, SpectrumError> {
    check_params(mu, de, delta)?;
    let mut levels = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        match energy(mu, de, delta, n, variant) {
            Ok(level) => levels.push(level),
            Err(SpectrumError::NoBoundLevel { .. }) if variant == SpectrumVariant::NuConsistent => break,
            Err(e) => return Err(e),
        }
    }
    Ok(levels)
}

/// Evaluate the quantization trace at a given energy.
///
/// Returns the reduction parameters, the two k roots, the selected π(s)
/// branch (the other three are rejected by the τ' < 0 requirement), both
/// sides of the eigenvalue condition, and the residual |λ − λₙ| for the n
/// implied by rounding λ/(2b).
pub fn nu_trace(mu: f64, de: f64, delta: f64, energy_value: f64) -> Result<NuTrace, SpectrumError> {
    let (eps2, beta2, gamma2) = reduction_params(mu, de, delta, energy_value)?;
    let b = real_beta(mu, de, delta)?;
    if eps2 <= 0.0 {
        return Err(SpectrumError::UnboundEnergy { energy: energy_value, threshold: de * delta / 2.0 });
    }
    let eps = eps2.sqrt();
    let k_plus = gamma2 + 2.0 * b * eps;
    let k_minus = gamma2 - 2.0 * b * eps;
    let lambda = gamma2 - 2.0 * b * eps - b;
    let n = (lambda / (2.0 * b)).round().max(0.0) as u32;
    let lambda_n = 2.0 * n as f64 * b;
    Ok(NuTrace {
        eps2,
        beta2,
        gamma2,
        b,
        k_plus,
        k_minus,
        pi_linear: -b,
        pi_const: eps,
        lambda,
        lambda_n,
        n,
        residual: (lambda - lambda_n).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H2: (f64, f64, f64) = (0.5041, 4.746768, 2.993);

    fn e(mu: f64, de: f64, delta: f64, n: u32, v: SpectrumVariant) -> f64 {
        energy(mu, de, delta, n, v).unwrap().energy
    }

    #[test]
    fn table_form_anchors() {
        let (mu, de, d) = H2;
        assert!((e(mu, de, d, 0, SpectrumVariant::TableForm) - (-13.091031)).abs() < 1e-3);
        assert!((e(0.9928, 0.950352, 0.25, 0, SpectrumVariant::TableForm) - (-0.255007)).abs() < 1e-4);
        assert!((e(6.8584, 9.02616, 0.01748, 10, SpectrumVariant::TableForm) - (-0.082350)).abs() < 1e-5);
    }

    #[test]
    fn table_form_exact_case() {
        // μ=1/2, De=1, δ=2: δ²/(8μ)=1, q=1, bracket²=4, shift=1 → −5 exactly
        assert_eq!(e(0.5, 1.0, 2.0, 0, SpectrumVariant::TableForm), -5.0);
    }

    #[test]
    fn morse_limit_harmonic_like() {
        // De→0: −(δ²/2μ)(n+1/2)² → −0.25 for μ=1/2, δ=1, n=0
        let v = e(0.5, 1e-12, 1.0, 0, SpectrumVariant::MorseEq33);
        assert!((v + 0.25).abs() < 1e-9);
    }

    #[test]
    fn literal_reading_differs_from_table() {
        let (mu, de, d) = H2;
        let lit = e(mu, de, d, 0, SpectrumVariant::LiteralEq31);
        assert!((lit - (-13.091031)).abs() > 1e-2);
    }

    #[test]
    fn literal_inner_term_is_twice_table_inner_term() {
        for d in [0.001, 0.25, 1.0, 2.993, 40.0] {
            let q_table = 4.0 / (d + 2.0);
            let q_literal = 8.0 / (d + 2.0);
            assert_eq!(q_literal, 2.0 * q_table);
        }
    }

    #[test]
    fn second_differences_are_exact() {
        let (mu, de, d) = (1.7, 3.1, 0.45);
        for (variant, expect) in [
            (SpectrumVariant::TableForm, -d * d / mu),
            (SpectrumVariant::CspEq32, -d * d / (6.0 * mu)),
            (SpectrumVariant::MorseEq33, -d * d / mu),
        ] {
            for n in 0..6 {
                let dd = e(mu, de, d, n + 2, variant) - 2.0 * e(mu, de, d, n + 1, variant) + e(mu, de, d, n, variant);
                assert!((dd - expect).abs() <= 1e-12 * expect.abs(), "{variant:?} n={n}: {dd} vs {expect}");
            }
        }
    }

    #[test]
    fn de_cancellation_in_bracket() {
        // the bracket is independent of De, so doubling De changes the
        // energy only through the −Deδ/2 shift
        let (mu, de, d) = (0.93, 3.64032, 0.534);
        for variant in [SpectrumVariant::TableForm, SpectrumVariant::LiteralEq31] {
            for n in 0..5 {
                let diff = e(mu, 2.0 * de, d, n, variant) - e(mu, de, d, n, variant);
                assert!((diff - (-de * d / 2.0)).abs() < 1e-12 * (de * d).abs());
            }
        }
    }

    #[test]
    fn monotone_decreasing_in_n() {
        for variant in [SpectrumVariant::TableForm, SpectrumVariant::LiteralEq31, SpectrumVariant::CspEq32] {
            let levels = spectrum_range(2.3, 0.8, 0.07, 10, variant).unwrap();
            for w in levels.windows(2) {
                assert!(w[1].energy < w[0].energy);
            }
        }
    }

    #[test]
    fn k2_rounds_flat() {
        let levels = spectrum_range(19.488, 0.51929, 0.000219, 10, SpectrumVariant::TableForm).unwrap();
        assert_eq!(levels.len(), 11);
        for level in levels {
            assert_eq!(format!("{:.6}", level.energy), "-0.000057");
        }
    }

    #[test]
    fn nu_consistent_h2_has_exactly_one_level() {
        let (mu, de, d) = H2;
        let levels = spectrum_range(mu, de, d, 10, SpectrumVariant::NuConsistent).unwrap();
        assert_eq!(levels.len(), 1);
        // γ²/(2b) ≈ 1.037 < 1.5 cuts off n ≥ 1
        let b = (2.0 * mu * (de * d / 2.0 - de)).sqrt() / d;
        let gamma2 = 4.0 * mu * de / (d * d);
        assert!((gamma2 / (2.0 * b) - 1.037).abs() < 1e-3);
    }

    #[test]
    fn nu_consistent_rejects_small_delta() {
        assert!(matches!(
            energy(11.498, 0.73944, 0.00079, 0, SpectrumVariant::NuConsistent),
            Err(SpectrumError::Regime(_))
        ));
    }

    #[test]
    fn reduction_params_direct_substitution() {
        // μ=1/2, De=1, δ=2, E=−5: γ²=0.5, β²=0, ε² = (−0.25)(−5−1) = 1.5
        let (eps2, beta2, gamma2) = reduction_params(0.5, 1.0, 2.0, -5.0).unwrap();
        assert_eq!(gamma2, 0.5);
        assert_eq!(beta2, 0.0);
        assert!((eps2 - 1.5).abs() < 1e-15);
        // but the real-form trace is unavailable at δ = 2
        assert!(matches!(nu_trace(0.5, 1.0, 2.0, -5.0), Err(SpectrumError::Regime(_))));
    }

    #[test]
    fn nu_trace_residual_vanishes_on_nu_levels() {
        let (mu, de, d) = H2;
        let level = energy(mu, de, d, 0, SpectrumVariant::NuConsistent).unwrap();
        let trace = nu_trace(mu, de, d, level.energy).unwrap();
        assert_eq!(trace.n, 0);
        assert!(trace.residual < 1e-10, "residual {}", trace.residual);
    }

    #[test]
    fn nu_trace_residual_nonzero_on_table_levels() {
        let (mu, de, d) = H2;
        let level = energy(mu, de, d, 0, SpectrumVariant::TableForm).unwrap();
        let trace = nu_trace(mu, de, d, level.energy).unwrap();
        assert!(trace.residual > 1e-3, "printed-formula inconsistency should show: {}", trace.residual);
    }

    #[test]
    fn spectrum_range_single_element() {
        let levels = spectrum_range(1.0, 1.0, 0.5, 0, SpectrumVariant::TableForm).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].n, 0);
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("table".parse::<SpectrumVariant>().unwrap(), SpectrumVariant::TableForm);
        assert_eq!("nu".parse::<SpectrumVariant>().unwrap(), SpectrumVariant::NuConsistent);
        assert!("bogus".parse::<SpectrumVariant>().is_err());
    }
}
