//! Shared dimensional and precoding value types.
//!
//! The stacked precoder follows a fixed coordinate order: subcarrier-major,
//! then user, then base station, then antenna. With that order the per-BS
//! power selection matrices become literal Kronecker products
//! `I_{PK} (x) (e_b e_b^H (x) I_M)`, i.e. plain 0/1 diagonals.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::scalar::{arg, cnorm, polar, Scalar};
use crate::{CVec, Cx};

/// Network dimensions. Serialized field names use the conventional symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDims {
    /// Number of base stations.
    #[serde(rename = "B")]
    pub bs: usize,
    /// Number of RISs (0 selects the no-RIS baseline).
    #[serde(rename = "R")]
    pub ris: usize,
    /// Number of users.
    #[serde(rename = "K")]
    pub users: usize,
    /// Antennas per base station.
    #[serde(rename = "M")]
    pub bs_antennas: usize,
    /// Antennas per user.
    #[serde(rename = "U")]
    pub user_antennas: usize,
    /// Elements per RIS.
    #[serde(rename = "N")]
    pub ris_elements: usize,
    /// Number of subcarriers.
    #[serde(rename = "P")]
    pub subcarriers: usize,
}

impl NetworkDims {
    /// Length of the stacked precoder vector, `B*M*P*K`.
    pub fn precoder_len(&self) -> usize {
        self.bs * self.bs_antennas * self.subcarriers * self.users
    }

    /// Length of the stacked phase vector, `R*N`.
    pub fn phase_len(&self) -> usize {
        self.ris * self.ris_elements
    }
}

/// Feasible set of one RIS reflection coefficient.
///
/// `F1` is the ideal case (amplitude and phase free inside the unit disc),
/// `F2` keeps unit modulus with a continuous phase, `F3(L)` restricts the
/// phase to `L` evenly spaced values `e^{j 2 pi l / L}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseConstraint {
    F1,
    F2,
    F3(u32),
}

impl PhaseConstraint {
    /// Membership test against the closure of the feasible set.
    pub fn contains<T: Scalar>(&self, theta: Cx<T>, tol: T) -> bool {
        let one = T::one();
        match self {
            PhaseConstraint::F1 => cnorm(theta) <= one + tol,
            PhaseConstraint::F2 => (cnorm(theta) - one).abs() <= tol,
            PhaseConstraint::F3(levels) => {
                if (cnorm(theta) - one).abs() > tol {
                    return false;
                }
                let step = T::two_pi() / T::of(*levels as f64);
                let phase = arg(theta);
                // distance to the nearest multiple of 2 pi / L, on the circle
                let ratio = phase / step;
                let nearest = ratio.round();
                ((ratio - nearest) * step).abs() <= tol
            }
        }
    }

    /// Compact label used by the CLI and CSV output (`f1`, `f2`, `f3:4`).
    pub fn label(&self) -> String {
        match self {
            PhaseConstraint::F1 => "f1".into(),
            PhaseConstraint::F2 => "f2".into(),
            PhaseConstraint::F3(l) => format!("f3:{l}"),
        }
    }

    /// Parses a label produced by [`PhaseConstraint::label`].
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Some(PhaseConstraint::F1),
            "f2" => Some(PhaseConstraint::F2),
            other => {
                let levels = other.strip_prefix("f3:")?.parse().ok()?;
                Some(PhaseConstraint::F3(levels))
            }
        }
    }
}

/// Stacked active precoder `W = [w_{1,1}; w_{1,2}; ...; w_{P,K}]`, where each
/// `w_{p,k} = [w_{1,p,k}; ...; w_{B,p,k}]` holds `B*M` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecoderStack<T: Scalar> {
    data: CVec<T>,
    bs: usize,
    bs_antennas: usize,
    subcarriers: usize,
    users: usize,
}

impl<T: Scalar> PrecoderStack<T> {
    pub fn zeros(dims: &NetworkDims) -> Self {
        Self {
            data: CVec::zeros(dims.precoder_len()),
            bs: dims.bs,
            bs_antennas: dims.bs_antennas,
            subcarriers: dims.subcarriers,
            users: dims.users,
        }
    }

    /// Wraps an existing stacked vector; panics on a length mismatch.
    pub fn from_vector(dims: &NetworkDims, data: CVec<T>) -> Self {
        assert_eq!(
            data.len(),
            dims.precoder_len(),
            "stacked precoder must have length B*M*P*K"
        );
        Self {
            data,
            bs: dims.bs,
            bs_antennas: dims.bs_antennas,
            subcarriers: dims.subcarriers,
            users: dims.users,
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.len() == 0
    }

    pub fn as_vector(&self) -> &CVec<T> {
        &self.data
    }

    pub fn as_vector_mut(&mut self) -> &mut CVec<T> {
        &mut self.data
    }

    /// Start of the `(p, k)` slice of length `B*M`.
    #[inline]
    pub fn slice_offset(&self, p: usize, k: usize) -> usize {
        (p * self.users + k) * self.bs * self.bs_antennas
    }

    /// Start of `w_{b,p,k}` (length `M`).
    #[inline]
    pub fn block_offset(&self, b: usize, p: usize, k: usize) -> usize {
        self.slice_offset(p, k) + b * self.bs_antennas
    }

    /// The contiguous `M`-length block `w_{b,p,k}`.
    pub fn extract(&self, b: usize, p: usize, k: usize) -> &[Cx<T>] {
        let start = self.block_offset(b, p, k);
        &self.data.as_slice()[start..start + self.bs_antennas]
    }

    pub fn extract_mut(&mut self, b: usize, p: usize, k: usize) -> &mut [Cx<T>] {
        let start = self.block_offset(b, p, k);
        let m = self.bs_antennas;
        &mut self.data.as_mut_slice()[start..start + m]
    }

    /// The `(p, k)` slice `w_{p,k}` of length `B*M`.
    pub fn slice(&self, p: usize, k: usize) -> &[Cx<T>] {
        let start = self.slice_offset(p, k);
        &self.data.as_slice()[start..start + self.bs * self.bs_antennas]
    }

    /// `w_{p,k}` as an owned column vector.
    pub fn slice_vector(&self, p: usize, k: usize) -> CVec<T> {
        CVec::from_column_slice(self.slice(p, k))
    }

    /// Transmit power of BS `b`: `sum_{p,k} ||w_{b,p,k}||^2 = W^H D_b W`.
    pub fn bs_power(&self, b: usize) -> T {
        let mut acc = T::zero();
        for p in 0..self.subcarriers {
            for k in 0..self.users {
                for w in self.extract(b, p, k) {
                    acc += w.norm_sqr();
                }
            }
        }
        acc
    }

    /// `||W||^2` over all coordinates.
    pub fn total_power(&self) -> T {
        self.data.iter().map(|w| w.norm_sqr()).fold(T::zero(), |a, x| a + x)
    }

    pub fn num_bs(&self) -> usize {
        self.bs
    }

    pub fn bs_antennas(&self) -> usize {
        self.bs_antennas
    }

    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn users(&self) -> usize {
        self.users
    }
}

/// RIS reflection coefficients: the diagonal of the block-diagonal
/// `Theta = diag(Theta_1, ..., Theta_R)` as one `R*N` vector, tagged with the
/// feasible set it is supposed to live in.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig<T: Scalar> {
    pub theta: CVec<T>,
    pub constraint: PhaseConstraint,
}

impl<T: Scalar> PhaseConfig<T> {
    pub fn zeros(len: usize, constraint: PhaseConstraint) -> Self {
        Self {
            theta: CVec::zeros(len),
            constraint,
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.len() == 0
    }

    /// True when every entry lies in (the closure of) the constraint set.
    pub fn satisfies(&self, tol: T) -> bool {
        self.theta.iter().all(|&t| self.constraint.contains(t, tol))
    }

    /// Per-RIS diagonal `Theta_r` entries, `n` elements each.
    pub fn ris_block(&self, r: usize, elements: usize) -> &[Cx<T>] {
        &self.theta.as_slice()[r * elements..(r + 1) * elements]
    }
}

/// Uniform phase grid point `e^{j 2 pi l / L}`.
pub fn grid_phase<T: Scalar>(l: u32, levels: u32) -> Cx<T> {
    polar(T::one(), T::two_pi() * T::of(l as f64) / T::of(levels as f64))
}
