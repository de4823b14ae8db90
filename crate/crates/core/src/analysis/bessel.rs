//! Bessel functions of the first kind of integer order.
//!
//! Values come from Miller's backward recurrence started well above both the
//! order and the argument, normalized with `J_0 + 2 Σ_k J_2k = 1`.

use alloc::vec;
use alloc::vec::Vec;

use libm::cbrt;
use num_traits::Float;

use crate::{Error, Result};

pub const MAX_ORDER: u32 = 512;
pub const MAX_ARGUMENT: f64 = 1e3;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

fn start_order(n: u32, x: f64) -> usize {
    let m = (n as f64).max(x) + 50.0 + 20.0 * cbrt(x);
    let m = m.ceil() as usize;
    m + (m & 1)
}

/// `J_0(x) … J_{n_max}(x)` for `x ≥ 0` from a single backward sweep.
fn table_nonnegative(n_max: u32, x: f64) -> Vec<f64> {
    let len = n_max as usize + 1;
    let mut out = vec![0.0; len];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let m = start_order(n_max, x);
    let two_over_x = 2.0 / x;
    let mut above = 0.0; // j_{k+1}
    let mut current = 1e-30; // j_k
    let mut norm = 0.0;
    for k in (0..=m).rev() {
        if k < len {
            out[k] = current;
        }
        if k % 2 == 0 {
            norm += if k == 0 { current } else { 2.0 * current };
        }
        if k == 0 {
            break;
        }
        let below = k as f64 * two_over_x * current - above;
        above = current;
        current = below;
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            for v in out.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

fn check_range(n: u32, x: f64) -> Result<()> {
    if n > MAX_ORDER || !(x.abs() <= MAX_ARGUMENT) {
        return Err(Error::OutOfRange { what: "bessel_j" });
    }
    Ok(())
}

fn parity(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `J_n(x)` for `|n| ≤ 512`, `|x| ≤ 1000`, accurate to about 1e-13 absolute.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    let order = n.unsigned_abs();
    check_range(order, x)?;
    let value = table_nonnegative(order, x.abs())[order as usize];
    // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
    let mut sign = 1.0;
    if n < 0 {
        sign *= parity(order);
    }
    if x < 0.0 {
        sign *= parity(order);
    }
    Ok(sign * value)
}

/// `[J_0(x), …, J_{n_max}(x)]`.
pub fn bessel_j_table(n_max: u32, x: f64) -> Result<Vec<f64>> {
    check_range(n_max, x)?;
    let mut t = table_nonnegative(n_max, x.abs());
    if x < 0.0 {
        for (k, v) in t.iter_mut().enumerate() {
            *v *= parity(k as u32);
        }
    }
    Ok(t)
}
