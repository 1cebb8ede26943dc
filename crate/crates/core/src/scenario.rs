//! The two reference topologies used by the experiment suite.
//!
//! Both builders are fully deterministic: the "random" user placements come
//! from a fixed internal seed, so a given `L` always yields the same
//! geometry and sweep curves stay smooth.

use rand::Rng;

use crate::channel::substream;
use crate::config::{PathLossParams, RicianFactors, ScenarioConfig, SolverOptions};
use crate::model::{NetworkDims, PhaseConstraint};
use crate::scalar::Scalar;
use crate::units::{db_to_linear, dbm_to_watts};

/// Fixed seed for deterministic user placement inside the builders.
const PLACEMENT_SEED: u64 = 0xF19_4;

fn common_pathloss<T: Scalar>() -> PathLossParams<T> {
    PathLossParams {
        c_dgg_db: T::of(-30.0),
        c_rgg_db: T::of(-40.0),
        kappa_bu: T::of(3.0),
        kappa_br: T::of(2.0),
        kappa_ru: T::of(2.0),
    }
}

fn common_rician<T: Scalar>() -> RicianFactors<T> {
    RicianFactors {
        beta_br: T::INFINITY,
        beta_bu: T::zero(),
        beta_ru: T::zero(),
    }
}

/// Uniform draw inside a disc of radius `radius` around `center`.
fn disc_point<T: Scalar, R: Rng + ?Sized>(center: [T; 2], radius: T, rng: &mut R) -> [T; 2] {
    let r = radius * T::unit_uniform(rng).sqrt();
    let phi = T::two_pi() * T::unit_uniform(rng);
    [center[0] + r * phi.cos(), center[1] + r * phi.sin()]
}

/// Two BSs at `(0, -20)` and `(80, -20)`, two 32-element RISs at `(30, 3)`
/// and `(50, 3)`, four users in a 1 m disc centered at `(L, 0)`. Per-BS
/// budget 0 dBW, noise -120 dBm, unit weights.
pub fn scenario_fig4<T: Scalar>(l: T) -> ScenarioConfig<T> {
    assert!(l > T::zero(), "user distance L must be positive");
    let mut rng = substream(PLACEMENT_SEED, &[4]);
    let user_positions = (0..4)
        .map(|_| disc_point([l, T::zero()], T::one(), &mut rng))
        .collect();
    ScenarioConfig {
        name: "fig4".into(),
        dims: NetworkDims {
            bs: 2,
            ris: 2,
            users: 4,
            bs_antennas: 8,
            user_antennas: 2,
            ris_elements: 32,
            subcarriers: 6,
        },
        bs_positions: vec![[T::zero(), T::of(-20.0)], [T::of(80.0), T::of(-20.0)]],
        ris_positions: vec![[T::of(30.0), T::of(3.0)], [T::of(50.0), T::of(3.0)]],
        user_positions,
        p_max: vec![db_to_linear(T::zero()); 2],
        noise_power: dbm_to_watts(T::of(-120.0)),
        user_weights: vec![T::one(); 4],
        rician: common_rician(),
        pathloss: common_pathloss(),
        constraint_set: PhaseConstraint::F1,
        seed: 1,
        solver: SolverOptions::default(),
    }
}

/// Two BSs at `(-10, 0)` and `(10, 0)`; eight RISs evenly spaced on a 15 m
/// circle (angles `2 pi r / 8`); four users on the same circle at angles
/// `2 pi k / 4 + pi / 8`, i.e. centered between neighboring RISs. Per-BS
/// budget -10 dBW.
pub fn scenario_fig7<T: Scalar>() -> ScenarioConfig<T> {
    let radius = T::of(15.0);
    let ris_positions = (0..8)
        .map(|r| {
            let phi = T::two_pi() * T::of(r as f64) / T::of(8.0);
            [radius * phi.cos(), radius * phi.sin()]
        })
        .collect();
    let user_positions = (0..4)
        .map(|k| {
            let phi = T::two_pi() * T::of(k as f64) / T::of(4.0) + T::pi() / T::of(8.0);
            [radius * phi.cos(), radius * phi.sin()]
        })
        .collect();
    ScenarioConfig {
        name: "fig7".into(),
        dims: NetworkDims {
            bs: 2,
            ris: 8,
            users: 4,
            bs_antennas: 8,
            user_antennas: 2,
            ris_elements: 32,
            subcarriers: 6,
        },
        bs_positions: vec![[T::of(-10.0), T::zero()], [T::of(10.0), T::zero()]],
        ris_positions,
        user_positions,
        p_max: vec![db_to_linear(T::of(-10.0)); 2],
        noise_power: dbm_to_watts(T::of(-120.0)),
        user_weights: vec![T::one(); 4],
        rician: common_rician(),
        pathloss: common_pathloss(),
        constraint_set: PhaseConstraint::F1,
        seed: 1,
        solver: SolverOptions::default(),
    }
}
