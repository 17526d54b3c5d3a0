//! Conjugate-gradient parameters and search directions.
//!
//! Every method starts from steepest descent, `d_0 = -g_0`. Afterwards
//!
//! | method | direction |
//! |--------|-----------|
//! | `NEW`  | `-g + beta d_prev`, `beta = tau |g| / |d_prev|` |
//! | `FR`   | `-g + beta d_prev`, `beta = |g|^2 / |g_prev|^2` |
//! | `MFR`  | `-theta g + beta_FR d_prev`, `theta = d_prev^T y_prev / |g_prev|^2` |
//! | `HZ`   | `-g + beta d_prev`, truncated `CG_DESCENT` parameter |
//!
//! `NEW` satisfies `d^T g <= -(1 - tau) |g|^2` and `|d| <= (1 + tau) |g|` by Cauchy-Schwarz;
//! `MFR` gives `d^T g = -|g|^2`. `FR` and `HZ` carry no such guarantee under an Armijo
//! search, so a non-descent result is replaced by `-g` and flagged as a restart.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

/// Below this `|d_prev^T y_prev|` the HZ parameter is undefined.
pub const HZ_CURVATURE_EPS: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MethodId {
    #[serde(rename = "NEW")]
    New,
    #[serde(rename = "FR")]
    Fr,
    #[serde(rename = "MFR")]
    Mfr,
    #[serde(rename = "HZ")]
    Hz,
}

impl MethodId {
    pub const ALL: [MethodId; 4] = [MethodId::New, MethodId::Fr, MethodId::Mfr, MethodId::Hz];

    pub fn token(self) -> &'static str {
        match self {
            MethodId::New => "NEW",
            MethodId::Fr => "FR",
            MethodId::Mfr => "MFR",
            MethodId::Hz => "HZ",
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for MethodId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodId::ALL
            .into_iter()
            .find(|m| m.token().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown method {s:?}; expected one of NEW, FR, MFR, HZ"))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DirectionError {
    #[error("previous direction has zero norm")]
    ZeroPreviousDirection,
    #[error("previous gradient has zero norm")]
    ZeroPreviousGradient,
    #[error("degenerate curvature d_prev^T y_prev = {0:e}")]
    DegenerateCurvature(f64),
}

/// Previous-iteration data needed for `k >= 1`.
#[derive(Debug, Clone, Copy)]
pub struct History<'a> {
    pub g_prev: &'a [f64],
    pub d_prev: &'a [f64],
    /// `g_curr - g_prev`.
    pub y_prev: &'a [f64],
}

#[derive(Debug, Clone, Copy)]
pub struct DirectionState<'a> {
    pub g_curr: &'a [f64],
    /// `None` exactly at `k = 0`.
    pub history: Option<History<'a>>,
}

/// Tunables consumed by the direction rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionParams {
    pub tau: f64,
    pub hz_eta: f64,
}

impl Default for DirectionParams {
    fn default() -> Self {
        DirectionParams {
            tau: 0.002,
            hz_eta: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionStep {
    pub d: Vec<f64>,
    /// The CG parameter; 0 at `k = 0` and on restarts. For MFR this is `beta_FR`.
    pub beta: f64,
    /// The method's own direction failed to be a descent direction and `-g` was used.
    pub restarted: bool,
}

/// `tau |g| / |d_prev|`.
pub fn beta_new(g: &[f64], d_prev: &[f64], tau: f64) -> Result<f64, DirectionError> {
    let dn = linalg::norm(d_prev);
    if dn == 0.0 {
        return Err(DirectionError::ZeroPreviousDirection);
    }
    Ok(tau * linalg::norm(g) / dn)
}

/// `|g|^2 / |g_prev|^2`.
pub fn beta_fr(g: &[f64], g_prev: &[f64]) -> Result<f64, DirectionError> {
    let gp = linalg::norm_sq(g_prev);
    if gp == 0.0 {
        return Err(DirectionError::ZeroPreviousGradient);
    }
    Ok(linalg::norm_sq(g) / gp)
}

/// `d_prev^T y_prev / |g_prev|^2`.
pub fn theta_mfr(d_prev: &[f64], y_prev: &[f64], g_prev: &[f64]) -> Result<f64, DirectionError> {
    let gp = linalg::norm_sq(g_prev);
    if gp == 0.0 {
        return Err(DirectionError::ZeroPreviousGradient);
    }
    Ok(linalg::dot(d_prev, y_prev) / gp)
}

/// Truncated Hager-Zhang parameter
/// `max((y - 2 d |y|^2 / d^T y)^T g / d^T y, -1 / (|d| min(eta, |g|)))`.
pub fn beta_hz(g: &[f64], d_prev: &[f64], y_prev: &[f64], eta: f64) -> Result<f64, DirectionError> {
    let dy = linalg::dot(d_prev, y_prev);
    if !(dy.abs() >= HZ_CURVATURE_EPS) {
        return Err(DirectionError::DegenerateCurvature(dy));
    }
    let yy = linalg::norm_sq(y_prev);
    let yg = linalg::dot(y_prev, g);
    let dg = linalg::dot(d_prev, g);
    let beta = (yg - 2.0 * yy / dy * dg) / dy;
    let floor = -1.0 / (linalg::norm(d_prev) * eta.min(linalg::norm(g)));
    Ok(beta.max(floor))
}

/// Search direction for `method` at the current state.
pub fn direction(
    method: MethodId,
    state: &DirectionState<'_>,
    params: &DirectionParams,
) -> Result<DirectionStep, DirectionError> {
    let g = state.g_curr;
    let Some(h) = state.history else {
        return Ok(DirectionStep {
            d: linalg::neg(g),
            beta: 0.0,
            restarted: false,
        });
    };
    let (d, beta) = match method {
        MethodId::New => {
            let beta = beta_new(g, h.d_prev, params.tau)?;
            (combine(1.0, g, beta, h.d_prev), beta)
        }
        MethodId::Fr => {
            let beta = beta_fr(g, h.g_prev)?;
            (combine(1.0, g, beta, h.d_prev), beta)
        }
        MethodId::Mfr => {
            let beta = beta_fr(g, h.g_prev)?;
            let theta = theta_mfr(h.d_prev, h.y_prev, h.g_prev)?;
            (combine(theta, g, beta, h.d_prev), beta)
        }
        MethodId::Hz => {
            let beta = beta_hz(g, h.d_prev, h.y_prev, params.hz_eta)?;
            (combine(1.0, g, beta, h.d_prev), beta)
        }
    };
    if matches!(method, MethodId::Fr | MethodId::Hz) && !(linalg::dot(&d, g) < 0.0) {
        return Ok(DirectionStep {
            d: linalg::neg(g),
            beta: 0.0,
            restarted: true,
        });
    }
    Ok(DirectionStep {
        d,
        beta,
        restarted: false,
    })
}

/// `-theta g + beta d_prev`.
fn combine(theta: f64, g: &[f64], beta: f64, d_prev: &[f64]) -> Vec<f64> {
    g.iter()
        .zip(d_prev)
        .map(|(gi, di)| -theta * gi + beta * di)
        .collect()
}
