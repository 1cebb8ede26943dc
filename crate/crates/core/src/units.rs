//! dB / dBm boundary conversions.
//!
//! Everything inside the library works in linear watts; decibel quantities
//! appear only when configs are built or parsed.

use crate::scalar::Scalar;

/// dBm to watts: `10^((x - 30) / 10)`.
#[inline]
pub fn dbm_to_watts<T: Scalar>(x_dbm: T) -> T {
    T::of(10.0).powf((x_dbm - T::of(30.0)) / T::of(10.0))
}

/// dB to linear scale: `10^(x / 10)`.
#[inline]
pub fn db_to_linear<T: Scalar>(x_db: T) -> T {
    T::of(10.0).powf(x_db / T::of(10.0))
}
