//! Fixed-point evaluation of cyclotomic numbers with rigorous error bounds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::CycNum;
use crate::error::{Error, Result};

/// Each cos/sin table entry is within this many units of 2^-bits.
const TABLE_ERR: u64 = 1 << 12;
const GUARD: u64 = 24;

fn atan_inv(x: u64, bits: u64) -> BigInt {
    // atan(1/x) = Σ (-1)^k / ((2k+1) x^(2k+1)).
    let one = BigInt::from(1) << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

fn pi_fixed(bits: u64) -> BigInt {
    16 * atan_inv(5, bits) - 4 * atan_inv(239, bits)
}

/// cos and sin of θ (fixed point, |θ| ≤ π + 1) by Taylor series.
fn cos_sin(theta: &BigInt, bits: u64) -> (BigInt, BigInt) {
    let one = BigInt::from(1) << bits;
    let th2 = (theta * theta) >> bits;
    let mut c = BigInt::zero();
    let mut term = one.clone();
    let mut k = 0u64;
    while !term.is_zero() {
        c += &term;
        term = -((&term * &th2) >> bits) / ((2 * k + 1) * (2 * k + 2));
        k += 1;
    }
    let mut s = BigInt::zero();
    let mut term = theta.clone();
    let mut k = 0u64;
    while !term.is_zero() {
        s += &term;
        term = -((&term * &th2) >> bits) / ((2 * k + 2) * (2 * k + 3));
        k += 1;
    }
    (c, s)
}

/// Table of (cos, sin)(2πk/L) for 0 ≤ k < L at `bits` fractional bits.
fn table(l: u32, bits: u64) -> Vec<(BigInt, BigInt)> {
    let pi = pi_fixed(bits);
    let li = l as i64;
    (0..li)
        .map(|k| {
            // Reduce to k' ∈ (-L/2, L/2] so the angle lies in (-π, π].
            let kr = if 2 * k > li { k - li } else { k };
            let theta = (&pi * BigInt::from(2 * kr)) / BigInt::from(li);
            cos_sin(&theta, bits)
        })
        .collect()
}

/// Real and imaginary parts at `bits` fractional bits, plus an error bound in ulps.
fn eval(x: &CycNum, bits: u64) -> (BigInt, BigInt, BigInt) {
    let (num, den) = x.int_parts();
    let tab = table(x.order(), bits);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut l1 = BigInt::zero();
    for (j, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        re += c * &tab[j].0;
        im += c * &tab[j].1;
        l1 += c.abs();
    }
    let err = (l1 * TABLE_ERR) / &den + 2;
    (re / &den, im / &den, err)
}

pub(super) fn sign_real(x: &CycNum) -> Result<Ordering> {
    let mut bits = 64u64;
    while bits <= 1 << 16 {
        let (re, _, err) = eval(x, bits + GUARD);
        if re > err {
            return Ok(Ordering::Greater);
        }
        if re < -err {
            return Ok(Ordering::Less);
        }
        bits *= 2;
    }
    Err(Error::Precision("sign undecided at 65536 bits".into()))
}

fn to_f64_scaled(v: &BigInt, bits: u64) -> f64 {
    // Shift down first so the integer fits comfortably in f64 range.
    let keep = 80u64;
    if bits > keep {
        (v >> (bits - keep)).to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(keep as i32))
    } else {
        v.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(bits as i32))
    }
}

pub(super) fn embed(x: &CycNum, precision: u32) -> Result<Complex64> {
    let bits = 64 + 4 * precision as u64 + GUARD;
    let (re, im, err) = eval(x, bits);
    let z = Complex64::new(to_f64_scaled(&re, bits), to_f64_scaled(&im, bits));
    // Rounding to f64 adds a relative error of about 2^-52 per component.
    let bound = (z.re.abs() + z.im.abs() + 1e-300) * 2f64.powi(-51)
        + to_f64_scaled(&err, bits)
        + 2f64.powi(-70);
    if bound >= 10f64.powi(-(precision as i32)) {
        return Err(Error::Precision(format!(
            "double precision cannot represent this value to 1e-{precision}"
        )));
    }
    Ok(z)
}
