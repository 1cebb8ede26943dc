//! Scalar abstraction for the numerical core.
//!
//! All math in this crate is generic over a real scalar type implementing
//! [`Scalar`]; `f32` and `f64` are provided. Complex quantities are
//! `num_complex::Complex<T>` throughout, which nalgebra treats as a
//! `ComplexField` whenever `T: RealField`.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::Cx;

/// Real scalar usable by every module: nalgebra field ops plus conversions
/// and the RNG draws the channel generator needs.
pub trait Scalar: RealField + FromPrimitive + ToPrimitive + Copy {
    /// IEEE positive infinity (used for pure-LoS Rician factors).
    const INFINITY: Self;

    /// Lossy conversion from `f64` (exact for every constant we use).
    fn of(x: f64) -> Self;

    /// One standard normal draw.
    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One uniform draw in `[0, 1)`.
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const INFINITY: Self = <$t>::INFINITY;

            #[inline]
            fn of(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.sample(StandardNormal)
            }

            #[inline]
            fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.random::<$t>()
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

/// Circularly-symmetric complex Gaussian draw with unit variance per entry
/// (variance 1/2 per real part).
#[inline]
pub fn cn01<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Cx<T> {
    let half = T::of(0.5).sqrt();
    Cx::new(T::std_normal(rng) * half, T::std_normal(rng) * half)
}

/// Argument of a complex number via `atan2` (avoids the `Float` bound that
/// `Complex::arg` would impose).
#[inline]
pub fn arg<T: Scalar>(z: Cx<T>) -> T {
    z.im.atan2(z.re)
}

/// `r * e^{j phi}` without the `Float` bound of `Complex::from_polar`.
#[inline]
pub fn polar<T: Scalar>(r: T, phi: T) -> Cx<T> {
    Cx::new(r * phi.cos(), r * phi.sin())
}

/// Modulus of a complex number.
#[inline]
pub fn cnorm<T: Scalar>(z: Cx<T>) -> T {
    z.norm_sqr().sqrt()
}
