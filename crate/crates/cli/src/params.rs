//! Raw state parameters as typed on the command line.

use pdsqueeze::analytic::{PdState, SectorParams};
use pdsqueeze::C;
use serde_json::{json, Value};

use crate::CliError;

/// Note attached to the metadata of every output built from `ψ_j`.
pub const PSI_CONVENTION: &str = "psi_j given directly: lambda_j = phi_beta = 0, theta_j = 2 psi_j";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    pub beta_abs: f64,
    pub beta_phase: f64,
    pub r: [f64; 2],
    pub theta: [f64; 2],
    pub lambda: [f64; 2],
    /// Set when the angles came from `ψ_j`.
    pub from_psi: bool,
}

impl Default for StateParams {
    fn default() -> Self {
        Self {
            beta_abs: 0.0,
            beta_phase: 0.0,
            r: [0.0; 2],
            theta: [0.0; 2],
            lambda: [0.0; 2],
            from_psi: false,
        }
    }
}

impl StateParams {
    /// `ψ_j` form with `λ_j = φ_β = 0` and `θ_j = 2ψ_j`.
    pub fn with_psi(beta_abs: f64, r0: f64, psi0: f64, r1: f64, psi1: f64) -> Self {
        Self {
            beta_abs,
            r: [r0, r1],
            theta: [2.0 * psi0, 2.0 * psi1],
            from_psi: true,
            ..Self::default()
        }
    }

    pub fn with_angles(beta_abs: f64, r: [f64; 2], theta: [f64; 2]) -> Self {
        Self {
            beta_abs,
            r,
            theta,
            ..Self::default()
        }
    }

    pub fn psi(&self, j: usize) -> f64 {
        self.beta_phase + self.lambda[j] + 0.5 * self.theta[j]
    }

    /// Sets `ψ_j` by adjusting `θ_j`.
    pub fn set_psi(&mut self, j: usize, psi: f64) {
        self.theta[j] = 2.0 * (psi - self.beta_phase - self.lambda[j]);
    }

    pub fn state(&self) -> Result<PdState<f64>, CliError> {
        if !(self.beta_abs >= 0.0) || !self.beta_abs.is_finite() {
            return Err(CliError::Usage(format!("--beta-abs must be finite and >= 0, got {}", self.beta_abs)));
        }
        let sector = |j: usize| SectorParams::new(self.r[j], self.theta[j], self.lambda[j]);
        let s = PdState::new(C::from_polar(self.beta_abs, self.beta_phase), sector(0)?, sector(1)?)?;
        Ok(s)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "beta_abs": self.beta_abs,
            "beta_phase": self.beta_phase,
            "r0": self.r[0],
            "theta0": self.theta[0],
            "lambda0": self.lambda[0],
            "r1": self.r[1],
            "theta1": self.theta[1],
            "lambda1": self.lambda[1],
        });
        if self.from_psi {
            v["psi0"] = json!(self.psi(0));
            v["psi1"] = json!(self.psi(1));
            v["convention"] = json!(PSI_CONVENTION);
        }
        v
    }
}

/// Parameter swept by a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScanVar {
    BetaAbs,
    BetaPhase,
    R0,
    Theta0,
    Lambda0,
    R1,
    Theta1,
    Lambda1,
    Psi0,
    Psi1,
}

impl ScanVar {
    pub fn name(self) -> &'static str {
        match self {
            ScanVar::BetaAbs => "beta_abs",
            ScanVar::BetaPhase => "beta_phase",
            ScanVar::R0 => "r0",
            ScanVar::Theta0 => "theta0",
            ScanVar::Lambda0 => "lambda0",
            ScanVar::R1 => "r1",
            ScanVar::Theta1 => "theta1",
            ScanVar::Lambda1 => "lambda1",
            ScanVar::Psi0 => "psi0",
            ScanVar::Psi1 => "psi1",
        }
    }

    pub fn apply(self, p: &StateParams, value: f64) -> StateParams {
        let mut q = *p;
        match self {
            ScanVar::BetaAbs => q.beta_abs = value,
            ScanVar::BetaPhase => q.beta_phase = value,
            ScanVar::R0 => q.r[0] = value,
            ScanVar::Theta0 => q.theta[0] = value,
            ScanVar::Lambda0 => q.lambda[0] = value,
            ScanVar::R1 => q.r[1] = value,
            ScanVar::Theta1 => q.theta[1] = value,
            ScanVar::Lambda1 => q.lambda[1] = value,
            ScanVar::Psi0 => q.set_psi(0, value),
            ScanVar::Psi1 => q.set_psi(1, value),
        }
        q
    }
}

/// Closed interval sampled at `n ≥ 2` evenly spaced points, written
/// `min:max:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self, String> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(format!("range needs finite min < max, got {min}:{max}"));
        }
        if n < 2 {
            return Err(format!("range needs at least 2 points, got {n}"));
        }
        Ok(Self { min, max, n })
    }

    pub fn value(&self, k: usize) -> f64 {
        // exact endpoints
        if k + 1 == self.n {
            self.max
        } else {
            self.min + (self.max - self.min) * k as f64 / (self.n - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.value(k)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "min": self.min, "max": self.max, "n": self.n })
    }
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected min:max:n, got '{s}'"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
        let n = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("'{}': {e}", parts[2]))?;
        Range::new(num(parts[0])?, num(parts[1])?, n)
    }
}
