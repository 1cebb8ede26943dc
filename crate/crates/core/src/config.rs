//! Scenario configuration: geometry, budgets, fading parameters, solver
//! options, and the report-based validator.
//!
//! Configs serialize to JSON. All powers are stored in linear watts; dB and
//! dBm show up only when a config is constructed (see [`crate::units`]).
//! Rician factors may be infinite (pure LoS) and serialize as the string
//! `"inf"`.

use serde::{Deserialize, Serialize};

use crate::model::{NetworkDims, PhaseConstraint};
use crate::scalar::Scalar;

/// Rician K-factors per link class. `INFINITY` selects the pure LoS channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct RicianFactors<T> {
    #[serde(rename = "beta_BR", with = "maybe_inf")]
    pub beta_br: T,
    #[serde(rename = "beta_Bu", with = "maybe_inf")]
    pub beta_bu: T,
    #[serde(rename = "beta_Ru", with = "maybe_inf")]
    pub beta_ru: T,
}

/// Distance-dependent path-loss parameters: composite gains (constant times
/// antenna gains) in dB and the per-link exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossParams<T> {
    #[serde(rename = "C_dGG_dB")]
    pub c_dgg_db: T,
    #[serde(rename = "C_rGG_dB")]
    pub c_rgg_db: T,
    #[serde(rename = "kappa_Bu")]
    pub kappa_bu: T,
    #[serde(rename = "kappa_BR")]
    pub kappa_br: T,
    #[serde(rename = "kappa_Ru")]
    pub kappa_ru: T,
}

/// Solver tolerances and iteration caps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions<T> {
    /// Outer-loop stop: `|delta R_sum| / R_sum < rel_tol`.
    pub rel_tol: T,
    /// Outer-loop iteration cap.
    pub max_outer: usize,
    /// Dual (KKT surrogate) tolerance for both QCQP solvers.
    pub dual_tol: T,
    /// Ellipsoid iteration cap; `None` selects `max(10 * dim^2, 500)`.
    pub max_dual_iters: Option<usize>,
    /// Largest dual dimension solved by the ellipsoid method; beyond it the
    /// passive subproblem switches to exact cyclic coordinate ascent.
    pub ellipsoid_dim_cap: usize,
    /// Fraction of the per-BS budget spent by the initial precoder.
    pub w0_power_fraction: T,
}

impl<T: Scalar> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::of(1e-3),
            max_outer: 100,
            dual_tol: T::of(1e-7),
            max_dual_iters: None,
            ellipsoid_dim_cap: 16,
            w0_power_fraction: T::one(),
        }
    }
}

impl<T: Scalar> SolverOptions<T> {
    /// The 2% convergence-error preset used for figure-style runs.
    pub fn paper_convergence(mut self) -> Self {
        self.rel_tol = T::of(2e-2);
        self
    }
}

/// Full experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct ScenarioConfig<T = f64> {
    /// Scenario label carried into result tables.
    #[serde(default = "default_name")]
    pub name: String,
    pub dims: NetworkDims,
    /// 2-D positions in meters.
    pub bs_positions: Vec<[T; 2]>,
    pub ris_positions: Vec<[T; 2]>,
    pub user_positions: Vec<[T; 2]>,
    /// Per-BS power budget in watts (length B).
    pub p_max: Vec<T>,
    /// Noise power sigma^2 in watts.
    pub noise_power: T,
    /// User weights eta_k > 0 (length K).
    pub user_weights: Vec<T>,
    pub rician: RicianFactors<T>,
    pub pathloss: PathLossParams<T>,
    pub constraint_set: PhaseConstraint,
    /// Master RNG seed; channel and initializer substreams derive from it.
    pub seed: u64,
    pub solver: SolverOptions<T>,
}

fn default_name() -> String {
    "custom".into()
}

/// List of violated invariants; empty iff the config is runnable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport(pub Vec<String>);

impl ValidationReport {
    pub fn is_runnable(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, needle: &str) -> bool {
        self.0.iter().any(|m| m.contains(needle))
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            write!(f, "ok")
        } else {
            for m in &self.0 {
                writeln!(f, "- {m}")?;
            }
            Ok(())
        }
    }
}

fn dist2<T: Scalar>(a: &[T; 2], b: &[T; 2]) -> T {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

impl<T: Scalar> ScenarioConfig<T> {
    /// Checks every structural invariant and returns the violations.
    pub fn validate(&self) -> ValidationReport {
        let mut r = Vec::new();
        let d = &self.dims;
        if d.bs < 1 {
            r.push("B must be ≥ 1".into());
        }
        if d.users < 1 {
            r.push("K must be ≥ 1".into());
        }
        if d.bs_antennas < 1 {
            r.push("M must be ≥ 1".into());
        }
        if d.user_antennas < 1 {
            r.push("U must be ≥ 1".into());
        }
        if d.subcarriers < 1 {
            r.push("P must be ≥ 1".into());
        }
        if d.ris > 0 && d.ris_elements < 1 {
            r.push("N must be ≥ 1 when R > 0".into());
        }
        if self.bs_positions.len() != d.bs {
            r.push(format!("bs_positions must have length B = {}", d.bs));
        }
        if self.ris_positions.len() != d.ris {
            r.push(format!("ris_positions must have length R = {}", d.ris));
        }
        if self.user_positions.len() != d.users {
            r.push(format!("user_positions must have length K = {}", d.users));
        }
        if self.p_max.len() != d.bs {
            r.push(format!("p_max must have length B = {}", d.bs));
        }
        if self.user_weights.len() != d.users {
            r.push(format!("user_weights must have length K = {}", d.users));
        }
        if self.p_max.iter().any(|&p| p <= T::zero()) {
            r.push("p_max entries must be > 0".into());
        }
        if self.noise_power <= T::zero() {
            r.push("noise_power must be > 0".into());
        }
        if self.user_weights.iter().any(|&w| w <= T::zero()) {
            r.push("user_weights must be > 0".into());
        }
        for (name, beta) in [
            ("beta_BR", self.rician.beta_br),
            ("beta_Bu", self.rician.beta_bu),
            ("beta_Ru", self.rician.beta_ru),
        ] {
            if beta < T::zero() {
                r.push(format!("rician factor {name} must be ≥ 0"));
            }
        }
        for (name, kappa) in [
            ("kappa_Bu", self.pathloss.kappa_bu),
            ("kappa_BR", self.pathloss.kappa_br),
            ("kappa_Ru", self.pathloss.kappa_ru),
        ] {
            if kappa <= T::zero() {
                r.push(format!("path-loss exponent {name} must be > 0"));
            }
        }
        // every transmitter/receiver pair in use must be separated
        for (b, bp) in self.bs_positions.iter().enumerate() {
            for (k, up) in self.user_positions.iter().enumerate() {
                if dist2(bp, up) <= T::zero() {
                    r.push(format!("distance BS {b} to user {k} must be > 0"));
                }
            }
            for (ri, rp) in self.ris_positions.iter().enumerate() {
                if dist2(bp, rp) <= T::zero() {
                    r.push(format!("distance BS {b} to RIS {ri} must be > 0"));
                }
            }
        }
        for (ri, rp) in self.ris_positions.iter().enumerate() {
            for (k, up) in self.user_positions.iter().enumerate() {
                if dist2(rp, up) <= T::zero() {
                    r.push(format!("distance RIS {ri} to user {k} must be > 0"));
                }
            }
        }
        if let PhaseConstraint::F3(levels) = self.constraint_set {
            if levels < 2 {
                r.push("F3 requires L ≥ 2".into());
            }
        }
        if self.solver.rel_tol <= T::zero() {
            r.push("solver.rel_tol must be > 0".into());
        }
        if self.solver.dual_tol <= T::zero() {
            r.push("solver.dual_tol must be > 0".into());
        }
        if self.solver.max_outer < 1 {
            r.push("solver.max_outer must be ≥ 1".into());
        }
        if self.solver.w0_power_fraction <= T::zero() || self.solver.w0_power_fraction > T::one() {
            r.push("solver.w0_power_fraction must be in (0, 1]".into());
        }
        ValidationReport(r)
    }

    /// Euclidean distance helpers used by the channel generator.
    pub fn d_bs_user(&self, b: usize, k: usize) -> T {
        dist2(&self.bs_positions[b], &self.user_positions[k]).sqrt()
    }

    pub fn d_bs_ris(&self, b: usize, r: usize) -> T {
        dist2(&self.bs_positions[b], &self.ris_positions[r]).sqrt()
    }

    pub fn d_ris_user(&self, r: usize, k: usize) -> T {
        dist2(&self.ris_positions[r], &self.user_positions[k]).sqrt()
    }

    /// Copy with the RISs removed (the no-RIS baseline).
    pub fn without_ris(&self) -> Self {
        let mut c = self.clone();
        c.dims.ris = 0;
        c.ris_positions.clear();
        c
    }
}

/// Serde adapter for scalars that may be infinite: JSON has no `inf`, so the
/// value is written as the string `"inf"` instead.
mod maybe_inf {
    use super::Scalar;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Scalar + Serialize, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        if *v == T::INFINITY {
            s.serialize_str("inf")
        } else {
            v.serialize(s)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrStr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        match NumOrStr::deserialize(d)? {
            NumOrStr::Num(x) => Ok(T::of(x)),
            NumOrStr::Str(s) if s.eq_ignore_ascii_case("inf") || s == "+inf" || s == "infinity" => {
                Ok(T::INFINITY)
            }
            NumOrStr::Str(s) => Err(D::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}
