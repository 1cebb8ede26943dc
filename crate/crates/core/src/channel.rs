//! Frequency-domain channel synthesis.
//!
//! Every BS-user (`H`), BS-RIS (`G`) and RIS-user (`F`) matrix is drawn from
//! a Rician model and scaled by the square root of a distance-dependent path
//! loss. The BS-RIS-user cascade obeys the double-fading law: the composite
//! gain and the BS-RIS exponent ride on `G`, the RIS-user exponent on `F`,
//! so the product of the two squared scalings reproduces the reflected-link
//! path loss exactly once.
//!
//! Draws are deterministic: each matrix gets its own ChaCha8 substream keyed
//! by (link kind, indices) from the master seed, so enlarging the network
//! never perturbs existing links.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::ScenarioConfig;
use crate::model::{NetworkDims, PhaseConfig};
use crate::scalar::{cn01, polar, Scalar};
use crate::{CMat, Cx};

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("non-positive distance on link {0}")]
    NonPositiveDistance(String),
    #[error("Rician factor must be ≥ 0 or +inf")]
    NegativeRician,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("config is not runnable:\n{0}")]
    InvalidConfig(String),
}

/// Receiver noise: covariance `sigma^2 I_U` per user and subcarrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel<T> {
    pub sigma2: T,
}

impl<T: Scalar> NoiseModel<T> {
    pub fn new(sigma2: T) -> Self {
        assert!(sigma2 > T::zero(), "noise power must be positive");
        Self { sigma2 }
    }
}

// Substream tags; part of the determinism contract.
pub(crate) const TAG_H: u64 = 1;
pub(crate) const TAG_G: u64 = 2;
pub(crate) const TAG_F: u64 = 3;
pub(crate) const TAG_INIT_W: u64 = 4;
pub(crate) const TAG_INIT_THETA: u64 = 5;
pub(crate) const TAG_SWEEP: u64 = 6;
pub(crate) const TAG_SYMBOLS: u64 = 7;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent substream seed from the master seed and an index
/// path (SplitMix64 chaining).
pub fn derive_seed(master: u64, words: &[u64]) -> u64 {
    let mut s = splitmix64(master ^ 0x5851_F42D_4C95_7F2D);
    for &w in words {
        s = splitmix64(s ^ splitmix64(w.wrapping_add(0xD135_0000_0000_00B9)));
    }
    s
}

pub(crate) fn substream(master: u64, words: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, words))
}

/// Far-field ULA steering vector with half-wavelength spacing:
/// entry `i` is `e^{j pi i sin(angle)}`.
pub fn steering_vector<T: Scalar>(n: usize, angle: T) -> Vec<Cx<T>> {
    let s = angle.sin();
    (0..n).map(|i| polar(T::one(), T::pi() * T::of(i as f64) * s)).collect()
}

/// Deterministic unit-modulus rank-1 LoS matrix for a link from `tx` to `rx`
/// (2-D positions); rows belong to the first endpoint of the stored matrix.
pub fn los_matrix<T: Scalar>(rows: usize, cols: usize, row_pos: &[T; 2], col_pos: &[T; 2]) -> CMat<T> {
    let row_bearing = (col_pos[1] - row_pos[1]).atan2(col_pos[0] - row_pos[0]);
    let col_bearing = (row_pos[1] - col_pos[1]).atan2(row_pos[0] - col_pos[0]);
    let a_row = steering_vector(rows, row_bearing);
    let a_col = steering_vector(cols, col_bearing);
    CMat::from_fn(rows, cols, |i, j| a_row[i] * a_col[j].conj())
}

/// Direct-link path loss `C_d G_B G_u d^{-kappa_Bu}` in linear scale.
pub fn path_loss_direct<T: Scalar>(
    d_bu: T,
    cfg: &crate::config::PathLossParams<T>,
) -> Result<T, ChannelError> {
    if d_bu <= T::zero() {
        return Err(ChannelError::NonPositiveDistance("BS-user".into()));
    }
    Ok(crate::units::db_to_linear(cfg.c_dgg_db) * d_bu.powf(-cfg.kappa_bu))
}

/// Reflected-link path loss `C_r G_B G_u d_BR^{-kappa_BR} d_Ru^{-kappa_Ru}`.
pub fn path_loss_reflected<T: Scalar>(
    d_br: T,
    d_ru: T,
    cfg: &crate::config::PathLossParams<T>,
) -> Result<T, ChannelError> {
    if d_br <= T::zero() {
        return Err(ChannelError::NonPositiveDistance("BS-RIS".into()));
    }
    if d_ru <= T::zero() {
        return Err(ChannelError::NonPositiveDistance("RIS-user".into()));
    }
    Ok(crate::units::db_to_linear(cfg.c_rgg_db)
        * d_br.powf(-cfg.kappa_br)
        * d_ru.powf(-cfg.kappa_ru))
}

/// Rician small-scale fading draw around a given LoS matrix:
/// `sqrt(beta/(1+beta)) los + sqrt(1/(1+beta)) nlos` with i.i.d. unit-variance
/// circularly-symmetric Gaussian NLoS entries. `beta = +inf` returns the LoS
/// matrix exactly; `beta = 0` is pure Rayleigh fading.
pub fn rician_channel<T: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    beta: T,
    los: &CMat<T>,
    rng: &mut R,
) -> Result<CMat<T>, ChannelError> {
    if beta < T::zero() {
        return Err(ChannelError::NegativeRician);
    }
    if los.nrows() != rows || los.ncols() != cols {
        return Err(ChannelError::DimensionMismatch(format!(
            "LoS matrix is {}x{}, expected {rows}x{cols}",
            los.nrows(),
            los.ncols()
        )));
    }
    if beta == T::INFINITY {
        return Ok(los.clone());
    }
    let nlos = CMat::from_fn(rows, cols, |_, _| cn01::<T, _>(rng));
    if beta == T::zero() {
        return Ok(nlos);
    }
    let los_w = (beta / (T::one() + beta)).sqrt();
    let nlos_w = (T::one() / (T::one() + beta)).sqrt();
    Ok(los.map(|z| z * los_w) + nlos.map(|z| z * nlos_w))
}

/// All frequency-domain channels of one scenario realization.
///
/// `h[b][k][p]` is `M x U` (so `H^H` is the `U x M` BS-to-user channel),
/// `g[b][r][p]` is `N x M`, `f[r][k][p]` is `N x U`. Path loss is already
/// folded in.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet<T: Scalar> {
    pub dims: NetworkDims,
    pub h: Vec<Vec<Vec<CMat<T>>>>,
    pub g: Vec<Vec<Vec<CMat<T>>>>,
    pub f: Vec<Vec<Vec<CMat<T>>>>,
}

impl<T: Scalar> ChannelSet<T> {
    /// Stacked RIS-user channel `F_{k,p} = [F_{1,k,p}; ...; F_{R,k,p}]`
    /// (`RN x U`).
    pub fn stacked_f(&self, k: usize, p: usize) -> CMat<T> {
        let d = &self.dims;
        let mut out = CMat::zeros(d.phase_len(), d.user_antennas);
        for r in 0..d.ris {
            out.rows_mut(r * d.ris_elements, d.ris_elements)
                .copy_from(&self.f[r][k][p]);
        }
        out
    }

    /// Stacked BS-RIS channel `G_{b,p} = [G_{b,1,p}; ...; G_{b,R,p}]`
    /// (`RN x M`).
    pub fn stacked_g(&self, b: usize, p: usize) -> CMat<T> {
        let d = &self.dims;
        let mut out = CMat::zeros(d.phase_len(), d.bs_antennas);
        for r in 0..d.ris {
            out.rows_mut(r * d.ris_elements, d.ris_elements)
                .copy_from(&self.g[b][r][p]);
        }
        out
    }

    fn check_index(&self, b: usize, k: usize, p: usize) -> Result<(), ChannelError> {
        let d = &self.dims;
        if b >= d.bs || k >= d.users || p >= d.subcarriers {
            return Err(ChannelError::IndexOutOfRange(format!(
                "(b={b}, k={k}, p={p}) outside (B={}, K={}, P={})",
                d.bs, d.users, d.subcarriers
            )));
        }
        Ok(())
    }

    /// Equivalent channel `h_{b,k,p}^H = H^H + sum_r F_r^H Theta_r^H G_{b,r}`
    /// as the `U x M` matrix it acts as.
    pub fn effective_channel(
        &self,
        theta: &PhaseConfig<T>,
        b: usize,
        k: usize,
        p: usize,
    ) -> Result<CMat<T>, ChannelError> {
        self.check_index(b, k, p)?;
        if theta.len() != self.dims.phase_len() {
            return Err(ChannelError::DimensionMismatch(format!(
                "phase vector has length {}, expected {}",
                theta.len(),
                self.dims.phase_len()
            )));
        }
        let n = self.dims.ris_elements;
        let mut eff = self.h[b][k][p].adjoint();
        for r in 0..self.dims.ris {
            // Theta_r^H G scales row n of G by conj(theta_{r,n})
            let mut scaled = self.g[b][r][p].clone();
            let block = theta.ris_block(r, n);
            for (row, &t) in block.iter().enumerate() {
                let c = t.conj();
                for v in scaled.row_mut(row).iter_mut() {
                    *v *= c;
                }
            }
            eff += self.f[r][k][p].ad_mul(&scaled);
        }
        Ok(eff)
    }

    /// Stacked equivalent channel `h_{k,p} = [h_{1,k,p}; ...; h_{B,k,p}]`
    /// (`BM x U` column form).
    pub fn stacked_effective(
        &self,
        theta: &PhaseConfig<T>,
        k: usize,
        p: usize,
    ) -> Result<CMat<T>, ChannelError> {
        let d = &self.dims;
        let mut out = CMat::zeros(d.bs * d.bs_antennas, d.user_antennas);
        for b in 0..d.bs {
            let eff = self.effective_channel(theta, b, k, p)?;
            out.rows_mut(b * d.bs_antennas, d.bs_antennas).copy_from(&eff.adjoint());
        }
        Ok(out)
    }

    /// All stacked equivalent channels, indexed `[k][p]`.
    pub fn stacked_effective_all(&self, theta: &PhaseConfig<T>) -> Result<Vec<Vec<CMat<T>>>, ChannelError> {
        (0..self.dims.users)
            .map(|k| {
                (0..self.dims.subcarriers)
                    .map(|p| self.stacked_effective(theta, k, p))
                    .collect()
            })
            .collect()
    }
}

/// Generates the full channel set for a scenario. Deterministic given
/// `config.seed`; see [`generate_channel_set_seeded`] to override the seed.
pub fn generate_channel_set<T: Scalar>(config: &ScenarioConfig<T>) -> Result<ChannelSet<T>, ChannelError> {
    generate_channel_set_seeded(config, config.seed)
}

/// As [`generate_channel_set`] with an explicit master seed (sweep cells
/// derive one per trial).
pub fn generate_channel_set_seeded<T: Scalar>(
    config: &ScenarioConfig<T>,
    master: u64,
) -> Result<ChannelSet<T>, ChannelError> {
    let report = config.validate();
    if !report.is_runnable() {
        return Err(ChannelError::InvalidConfig(report.to_string()));
    }
    let d = config.dims;
    let (m, u, n) = (d.bs_antennas, d.user_antennas, d.ris_elements);

    let mut h = vec![vec![Vec::with_capacity(d.subcarriers); d.users]; d.bs];
    for b in 0..d.bs {
        for k in 0..d.users {
            let gain = path_loss_direct(config.d_bs_user(b, k), &config.pathloss)?.sqrt();
            let los = los_matrix(m, u, &config.bs_positions[b], &config.user_positions[k]);
            for p in 0..d.subcarriers {
                let mut rng = substream(master, &[TAG_H, b as u64, k as u64, p as u64]);
                let small = rician_channel(m, u, config.rician.beta_bu, &los, &mut rng)?;
                h[b][k].push(small.map(|z| z * gain));
            }
        }
    }

    let mut g = vec![vec![Vec::with_capacity(d.subcarriers); d.ris]; d.bs];
    let mut f = vec![vec![Vec::with_capacity(d.subcarriers); d.users]; d.ris];
    for b in 0..d.bs {
        for r in 0..d.ris {
            let d_br = config.d_bs_ris(b, r);
            if d_br <= T::zero() {
                return Err(ChannelError::NonPositiveDistance("BS-RIS".into()));
            }
            // BS-RIS leg: composite gain and the BR exponent
            let gain = (crate::units::db_to_linear(config.pathloss.c_rgg_db)
                * d_br.powf(-config.pathloss.kappa_br))
            .sqrt();
            let los = los_matrix(n, m, &config.ris_positions[r], &config.bs_positions[b]);
            for p in 0..d.subcarriers {
                let mut rng = substream(master, &[TAG_G, b as u64, r as u64, p as u64]);
                let small = rician_channel(n, m, config.rician.beta_br, &los, &mut rng)?;
                g[b][r].push(small.map(|z| z * gain));
            }
        }
    }
    for r in 0..d.ris {
        for k in 0..d.users {
            let d_ru = config.d_ris_user(r, k);
            if d_ru <= T::zero() {
                return Err(ChannelError::NonPositiveDistance("RIS-user".into()));
            }
            // RIS-user leg: only the Ru exponent
            let gain = d_ru.powf(-config.pathloss.kappa_ru).sqrt();
            let los = los_matrix(n, u, &config.ris_positions[r], &config.user_positions[k]);
            for p in 0..d.subcarriers {
                let mut rng = substream(master, &[TAG_F, r as u64, k as u64, p as u64]);
                let small = rician_channel(n, u, config.rician.beta_ru, &los, &mut rng)?;
                f[r][k].push(small.map(|z| z * gain));
            }
        }
    }

    Ok(ChannelSet { dims: d, h, g, f })
}

// ---------------------------------------------------------------------------
// Text dump format for regression fixtures: every complex entry is a
// `[re, im]` pair, matrices are row-major nested arrays.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
struct ChannelSetDump<T> {
    dims: NetworkDims,
    h: Vec<Vec<Vec<Vec<Vec<[T; 2]>>>>>,
    g: Vec<Vec<Vec<Vec<Vec<[T; 2]>>>>>,
    f: Vec<Vec<Vec<Vec<Vec<[T; 2]>>>>>,
}

fn matrix_to_rows<T: Scalar>(m: &CMat<T>) -> Vec<Vec<[T; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn matrix_from_rows<T: Scalar>(rows: &[Vec<[T; 2]>]) -> Result<CMat<T>, ChannelError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(ChannelError::DimensionMismatch("ragged matrix rows in dump".into()));
    }
    Ok(CMat::from_fn(nrows, ncols, |i, j| Cx::new(rows[i][j][0], rows[i][j][1])))
}

impl<T: Scalar + Serialize + for<'de> Deserialize<'de>> ChannelSet<T> {
    pub fn to_json(&self) -> String {
        let map3 = |src: &Vec<Vec<Vec<CMat<T>>>>| {
            src.iter()
                .map(|a| a.iter().map(|b| b.iter().map(matrix_to_rows).collect()).collect())
                .collect()
        };
        let dump = ChannelSetDump {
            dims: self.dims,
            h: map3(&self.h),
            g: map3(&self.g),
            f: map3(&self.f),
        };
        serde_json::to_string(&dump).expect("channel dump serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, ChannelError> {
        let dump: ChannelSetDump<T> = serde_json::from_str(text)
            .map_err(|e| ChannelError::DimensionMismatch(format!("bad channel dump: {e}")))?;
        let unmap3 = |src: &Vec<Vec<Vec<Vec<Vec<[T; 2]>>>>>| -> Result<Vec<Vec<Vec<CMat<T>>>>, ChannelError> {
            src.iter()
                .map(|a| {
                    a.iter()
                        .map(|b| b.iter().map(|m| matrix_from_rows(m)).collect())
                        .collect()
                })
                .collect()
        };
        Ok(ChannelSet {
            dims: dump.dims,
            h: unmap3(&dump.h)?,
            g: unmap3(&dump.g)?,
            f: unmap3(&dump.f)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{PathLossParams, RicianFactors, SolverOptions};
    use crate::model::PhaseConstraint;
    use approx::assert_relative_eq;

    fn pl() -> PathLossParams<f64> {
        PathLossParams {
            c_dgg_db: -30.0,
            c_rgg_db: -40.0,
            kappa_bu: 3.0,
            kappa_br: 2.0,
            kappa_ru: 2.0,
        }
    }

    fn small_config(ris: usize) -> ScenarioConfig<f64> {
        ScenarioConfig {
            name: "test".into(),
            dims: NetworkDims {
                bs: 2,
                ris,
                users: 2,
                bs_antennas: 3,
                user_antennas: 2,
                ris_elements: 4,
                subcarriers: 2,
            },
            bs_positions: vec![[0.0, 0.0], [40.0, 0.0]],
            ris_positions: (0..ris).map(|r| [10.0 + 5.0 * r as f64, 6.0]).collect(),
            user_positions: vec![[20.0, 1.0], [22.0, -2.0]],
            p_max: vec![1.0, 1.0],
            noise_power: 1e-12,
            user_weights: vec![1.0, 1.0],
            rician: RicianFactors {
                beta_br: f64::INFINITY,
                beta_bu: 0.0,
                beta_ru: 0.0,
            },
            pathloss: pl(),
            constraint_set: PhaseConstraint::F1,
            seed: 99,
            solver: SolverOptions::default(),
        }
    }

    #[test]
    fn direct_path_loss_values() {
        let p = pl();
        assert_relative_eq!(path_loss_direct(1.0, &p).unwrap(), 1e-3, max_relative = 1e-12);
        assert_relative_eq!(path_loss_direct(10.0, &p).unwrap(), 1e-6, max_relative = 1e-12);
        assert_relative_eq!(path_loss_direct(100.0, &p).unwrap(), 1e-9, max_relative = 1e-12);
        assert!(path_loss_direct(0.0, &p).is_err());
    }

    #[test]
    fn reflected_path_loss_values() {
        let p = pl();
        assert_relative_eq!(path_loss_reflected(1.0, 1.0, &p).unwrap(), 1e-4, max_relative = 1e-12);
        // 1e-4 * 30^-2 * 5^-2 = 1e-4 / 22500
        assert_relative_eq!(
            path_loss_reflected(30.0, 5.0, &p).unwrap(),
            4.444444444444445e-9,
            max_relative = 1e-9
        );
        // symmetric in its arguments when the exponents match
        assert_relative_eq!(
            path_loss_reflected(7.0, 3.0, &p).unwrap(),
            path_loss_reflected(3.0, 7.0, &p).unwrap(),
            max_relative = 1e-14
        );
        assert!(path_loss_reflected(1.0, -1.0, &p).is_err());
    }

    #[test]
    fn path_loss_monotone_in_distance() {
        let p = pl();
        let mut last = f64::INFINITY;
        for d in [1.0, 2.0, 5.0, 17.0, 120.0] {
            let v = path_loss_direct(d, &p).unwrap();
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn rician_limits() {
        let los = los_matrix::<f64>(3, 2, &[0.0, 0.0], &[10.0, 4.0]);
        let mut rng = substream(5, &[9]);
        // beta = +inf: exactly LoS, all entries unit modulus
        let h = rician_channel(3, 2, f64::INFINITY, &los, &mut rng).unwrap();
        assert_eq!(h, los);
        for z in h.iter() {
            assert_relative_eq!(z.norm_sqr(), 1.0, max_relative = 1e-12);
        }
        assert!(rician_channel(3, 2, -0.5, &los, &mut rng).is_err());
    }

    #[test]
    fn rician_moments() {
        let los = los_matrix::<f64>(2, 2, &[0.0, 0.0], &[3.0, 1.0]);
        for beta in [0.0, 1.0] {
            let mut rng = substream(11, &[beta as u64]);
            let trials = 10_000;
            let mut acc = 0.0;
            for _ in 0..trials {
                let h = rician_channel(2, 2, beta, &los, &mut rng).unwrap();
                acc += h.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
            }
            let second_moment = acc / trials as f64;
            assert!(
                (second_moment - 1.0).abs() < 0.05,
                "beta={beta}: per-entry second moment {second_moment}"
            );
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = small_config(2);
        let a = generate_channel_set(&cfg).unwrap();
        let b = generate_channel_set(&cfg).unwrap();
        assert_eq!(a, b);
        let c = generate_channel_set_seeded(&cfg, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn adding_a_user_preserves_existing_links() {
        let cfg = small_config(1);
        let mut bigger = cfg.clone();
        bigger.dims.users = 3;
        bigger.user_positions.push([25.0, 3.0]);
        bigger.user_weights.push(1.0);
        let a = generate_channel_set(&cfg).unwrap();
        let b = generate_channel_set(&bigger).unwrap();
        for bidx in 0..2 {
            for k in 0..2 {
                assert_eq!(a.h[bidx][k], b.h[bidx][k]);
            }
        }
        assert_eq!(a.f[0][0], b.f[0][0]);
    }

    #[test]
    fn distance_scaling_of_mean_power() {
        // doubling the BS-user distance with kappa = 3 drops per-entry mean
        // squared magnitude by 8x
        let mut near = small_config(0);
        near.dims = NetworkDims {
            bs: 1,
            ris: 0,
            users: 1,
            bs_antennas: 2,
            user_antennas: 2,
            ris_elements: 0,
            subcarriers: 1,
        };
        near.bs_positions = vec![[0.0, 0.0]];
        near.user_positions = vec![[10.0, 0.0]];
        near.p_max = vec![1.0];
        near.user_weights = vec![1.0];
        let mut far = near.clone();
        far.user_positions = vec![[20.0, 0.0]];
        let mut p_near = 0.0;
        let mut p_far = 0.0;
        for trial in 0..1000 {
            let mut n = near.clone();
            n.seed = trial;
            let mut f = far.clone();
            f.seed = trial;
            p_near += generate_channel_set(&n).unwrap().h[0][0][0]
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>();
            p_far += generate_channel_set(&f).unwrap().h[0][0][0]
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>();
        }
        let ratio = p_near / p_far;
        assert!((ratio - 8.0).abs() < 0.8, "power ratio {ratio}");
    }

    #[test]
    fn no_ris_channels_are_direct_only() {
        let cfg = small_config(0);
        let cs = generate_channel_set(&cfg).unwrap();
        assert!(cs.g.iter().all(|per_b| per_b.is_empty()));
        assert!(cs.f.is_empty());
        let theta = PhaseConfig::zeros(0, PhaseConstraint::F1);
        let eff = cs.effective_channel(&theta, 0, 1, 0).unwrap();
        assert_eq!(eff, cs.h[0][1][0].adjoint());
    }

    #[test]
    fn zero_phases_reduce_to_direct() {
        let cfg = small_config(2);
        let cs = generate_channel_set(&cfg).unwrap();
        let theta = PhaseConfig::zeros(cfg.dims.phase_len(), PhaseConstraint::F1);
        let eff = cs.effective_channel(&theta, 1, 0, 1).unwrap();
        assert_eq!(eff, cs.h[1][0][1].adjoint());
    }

    #[test]
    fn single_element_reflection() {
        // R=1, N=1, scalar channels H=0, F=1, G=1, theta=e^{j phi}:
        // effective channel is e^{-j phi}
        let dims = NetworkDims {
            bs: 1,
            ris: 1,
            users: 1,
            bs_antennas: 1,
            user_antennas: 1,
            ris_elements: 1,
            subcarriers: 1,
        };
        let one = CMat::from_element(1, 1, Cx::new(1.0, 0.0));
        let cs = ChannelSet {
            dims,
            h: vec![vec![vec![CMat::zeros(1, 1)]]],
            g: vec![vec![vec![one.clone()]]],
            f: vec![vec![vec![one]]],
        };
        let phi = 0.7_f64;
        let mut theta = PhaseConfig::zeros(1, PhaseConstraint::F2);
        theta.theta[0] = polar(1.0, phi);
        let eff = cs.effective_channel(&theta, 0, 0, 0).unwrap();
        assert_relative_eq!(eff[(0, 0)].re, phi.cos(), max_relative = 1e-12);
        assert_relative_eq!(eff[(0, 0)].im, -phi.sin(), max_relative = 1e-12);
    }

    #[test]
    fn effective_channel_matches_dense_oracle() {
        // brute-force oracle: build the full block-diagonal Theta and compute
        // H^H + F_kp^H Theta^H G_bp with dense products
        let cfg = small_config(2);
        let cs = generate_channel_set(&cfg).unwrap();
        let rn = cfg.dims.phase_len();
        let mut rng = substream(3, &[1, 2]);
        let mut theta = PhaseConfig::zeros(rn, PhaseConstraint::F1);
        for t in theta.theta.iter_mut() {
            *t = cn01::<f64, _>(&mut rng) * 0.5;
        }
        let big_theta = CMat::from_fn(rn, rn, |i, j| {
            if i == j {
                theta.theta[i]
            } else {
                Cx::new(0.0, 0.0)
            }
        });
        for b in 0..2 {
            for k in 0..2 {
                for p in 0..2 {
                    let dense =
                        cs.h[b][k][p].adjoint() + cs.stacked_f(k, p).adjoint() * big_theta.adjoint() * cs.stacked_g(b, p);
                    let eff = cs.effective_channel(&theta, b, k, p).unwrap();
                    let err = (dense.clone() - eff).norm() / dense.norm();
                    assert!(err < 1e-12, "relative error {err}");
                }
            }
        }
    }

    #[test]
    fn stacked_forms_are_block_concatenations() {
        let cfg = small_config(2);
        let cs = generate_channel_set(&cfg).unwrap();
        let fk = cs.stacked_f(1, 0);
        assert_eq!(fk.rows(0, 4), cs.f[0][1][0].rows(0, 4));
        assert_eq!(fk.rows(4, 4), cs.f[1][1][0].rows(0, 4));
        let gb = cs.stacked_g(1, 1);
        assert_eq!(gb.rows(0, 4), cs.g[1][0][1].rows(0, 4));
        assert_eq!(gb.rows(4, 4), cs.g[1][1][1].rows(0, 4));
    }

    #[test]
    fn index_out_of_range_is_reported() {
        let cfg = small_config(1);
        let cs = generate_channel_set(&cfg).unwrap();
        let theta = PhaseConfig::zeros(cfg.dims.phase_len(), PhaseConstraint::F1);
        assert!(matches!(
            cs.effective_channel(&theta, 5, 0, 0),
            Err(ChannelError::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn dump_roundtrip_is_exact() {
        let cfg = small_config(2);
        let cs = generate_channel_set(&cfg).unwrap();
        let text = cs.to_json();
        let back = ChannelSet::<f64>::from_json(&text).unwrap();
        assert_eq!(cs.dims, back.dims);
        assert_eq!(cs.h, back.h, "h mismatch");
        assert_eq!(cs.g, back.g, "g mismatch");
        assert_eq!(cs.f, back.f, "f mismatch");
    }
}
