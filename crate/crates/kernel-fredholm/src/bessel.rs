//! Exponentially scaled modified Bessel functions of integer order.

use contour_quad::Real;

/// `e^{-z} I_n(z)` for `z >= 0`.
///
/// Miller's backward recurrence `I_{k-1} = (2k/z) I_k + I_{k+1}`, normalised
/// with `1 = e^{-z} (I_0 + 2 sum_{k>=1} I_k)`.
pub fn scaled_bessel_i<T: Real>(n: u32, z: T) -> T {
    if z < T::zero() {
        return T::nan();
    }
    if z == T::zero() {
        return if n == 0 { T::one() } else { T::zero() };
    }
    let zf = z.as_f64();
    let start = n as usize + 30 + (80.0 * zf).sqrt().ceil() as usize;
    let big = T::max_value().sqrt();
    let inv_big = T::one() / big;
    let two_over_z = T::lit(2.0) / z;

    let mut y_next = T::zero();
    let mut y = T::min_positive_value().sqrt();
    let mut sum = y + y;
    let mut result = if start == n as usize { y } else { T::zero() };
    for k in (1..=start).rev() {
        let y_prev = two_over_z * T::from_usize_lossy(k) * y + y_next;
        y_next = y;
        y = y_prev;
        let idx = k - 1;
        if idx == n as usize {
            result = y;
        }
        sum += if idx == 0 { y } else { y + y };
        if y > big {
            y = y * inv_big;
            y_next = y_next * inv_big;
            sum = sum * inv_big;
            result = result * inv_big;
        }
    }
    result / sum
}

/// Unscaled `I_n(z)`; overflows for large `z`.
pub fn bessel_i<T: Real>(n: u32, z: T) -> T {
    scaled_bessel_i(n, z) * z.exp()
}
