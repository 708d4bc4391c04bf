//! Exact elements of **Z**\[ζ, 1/2\] with ζ = exp(*iπ*/4).
//!
//! A [`CycScalar`] stores `(c0 + c1 ζ + c2 ζ² + c3 ζ³) / 2^k`. The relation
//! ζ⁴ = −1 keeps the polynomial part at degree < 4, and the dyadic exponent `k`
//! is kept minimal, so the stored form is unique: two scalars are equal as
//! complex numbers exactly when their fields are equal. That is what lets
//! matrices built from these scalars be hashed and enumerated without any
//! floating-point tolerance.
//!
//! Useful constants: ζ² = *i*, √2 = ζ − ζ³ and 1/√2 = (ζ − ζ³)/2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct CycScalar {
    c: [i64; 4],
    k: u32,
}

impl CycScalar {
    pub const ZERO: Self = Self { c: [0, 0, 0, 0], k: 0 };
    pub const ONE: Self = Self { c: [1, 0, 0, 0], k: 0 };
    pub const I: Self = Self { c: [0, 0, 1, 0], k: 0 };
    pub const ZETA: Self = Self { c: [0, 1, 0, 0], k: 0 };
    pub const SQRT2: Self = Self { c: [0, 1, 0, -1], k: 0 };
    pub const INV_SQRT2: Self = Self { c: [0, 1, 0, -1], k: 1 };
    /// exp(iπ/4)/√2 = (1 + i)/2, the prefactor of a braid generator.
    pub const BRAID_PREFACTOR: Self = Self { c: [1, 0, 1, 0], k: 1 };

    /// Builds `(c0 + c1 ζ + c2 ζ² + c3 ζ³) / 2^k` and normalizes it.
    pub fn new(c: [i64; 4], k: u32) -> Self {
        let mut s = Self { c, k };
        s.normalize();
        s
    }

    pub fn from_int(v: i64) -> Self {
        Self::new([v, 0, 0, 0], 0)
    }

    /// ζ^t for any integer t.
    pub fn zeta_pow(t: i64) -> Self {
        Self::ONE.mul_zeta_pow(t)
    }

    /// i^m for any integer m.
    pub fn i_pow(m: i64) -> Self {
        Self::zeta_pow(2 * m)
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.c
    }

    pub fn denominator_exp(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0, 0, 0]
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.c.iter().all(|v| v % 2 == 0) {
            for v in &mut self.c {
                *v /= 2;
            }
            self.k -= 1;
        }
    }

    /// Rescales the coefficients to denominator `2^k` (requires `k >= self.k`).
    fn lifted(&self, k: u32) -> Result<[i64; 4]> {
        let shift = k - self.k;
        let factor = 1i64.checked_shl(shift).filter(|_| shift < 63).ok_or(Error::Overflow)?;
        let mut out = [0i64; 4];
        for (o, v) in out.iter_mut().zip(self.c) {
            *o = v.checked_mul(factor).ok_or(Error::Overflow)?;
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let k = self.k.max(rhs.k);
        let a = self.lifted(k)?;
        let b = rhs.lifted(k)?;
        let mut c = [0i64; 4];
        for i in 0..4 {
            c[i] = a[i].checked_add(b[i]).ok_or(Error::Overflow)?;
        }
        Ok(Self::new(c, k))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut c = [0i64; 4];
        for i in 0..4 {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j] == 0 {
                    continue;
                }
                let p = self.c[i].checked_mul(rhs.c[j]).ok_or(Error::Overflow)?;
                let d = i + j;
                if d < 4 {
                    c[d] = c[d].checked_add(p).ok_or(Error::Overflow)?;
                } else {
                    c[d - 4] = c[d - 4].checked_sub(p).ok_or(Error::Overflow)?;
                }
            }
        }
        let k = self.k.checked_add(rhs.k).ok_or(Error::Overflow)?;
        Ok(Self::new(c, k))
    }

    /// Complex conjugate: ζ ↦ −ζ³, ζ² ↦ −ζ², ζ³ ↦ −ζ.
    pub fn conj(&self) -> Self {
        Self { c: [self.c[0], -self.c[3], -self.c[2], -self.c[1]], k: self.k }
    }

    /// Multiplies by ζ^t. Rotations permute coefficients up to sign, so `k` is unchanged.
    pub fn mul_zeta_pow(&self, t: i64) -> Self {
        let t = t.rem_euclid(8) as usize;
        let mut c = self.c;
        for _ in 0..t {
            c = [-c[3], c[0], c[1], c[2]];
        }
        Self { c, k: self.k }
    }

    /// Halves the value exactly.
    pub fn half(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(*self);
        }
        let k = self.k.checked_add(1).ok_or(Error::Overflow)?;
        Ok(Self::new(self.c, k))
    }

    /// Splits a nonzero scalar into `ζ^t · rep` with `rep` in a fixed fundamental
    /// domain of the rotation action, returning `(t, rep)`.
    ///
    /// If one of the eight rotations ζ^{−t}·a is a positive real number that
    /// rotation is the representative. Otherwise the rotation whose coefficient
    /// tuple `(c0, c1, c2, c3)` is lexicographically largest is used.
    pub fn phase_class(&self) -> Result<(u8, Self)> {
        if self.is_zero() {
            return Err(Error::ZeroPhase);
        }
        let mut best: Option<(u8, Self)> = None;
        for t in 0..8u8 {
            let r = self.mul_zeta_pow(-(t as i64));
            if r.is_positive_real() {
                return Ok((t, r));
            }
            match &best {
                Some((_, b)) if b.c >= r.c => {}
                _ => best = Some((t, r)),
            }
        }
        Ok(best.expect("eight rotations examined"))
    }

    /// Imaginary part vanishes iff c2 = 0 and c1 = −c3.
    pub fn is_real(&self) -> bool {
        self.c[2] == 0 && self.c[1] == -self.c[3]
    }

    /// Valid for real values only: the value is c0 + c1·√2 (over 2^k).
    fn is_positive_real(&self) -> bool {
        if !self.is_real() || self.is_zero() {
            return false;
        }
        let (a, b) = (self.c[0] as i128, self.c[1] as i128);
        // sign of a + b√2
        match (a.signum(), b.signum()) {
            (1, s) if s >= 0 => true,
            (s, 1) if s <= 0 => 2 * b * b > a * a,
            (1, -1) => a * a > 2 * b * b,
            _ => false,
        }
    }

    /// Returns `Some(m)` if the value is exactly i^m.
    pub fn as_i_power(&self) -> Option<u8> {
        (0..4u8).find(|&m| *self == Self::i_pow(m as i64))
    }

    /// Returns `Some(t)` if the value is exactly ζ^t.
    pub fn as_zeta_power(&self) -> Option<u8> {
        (0..8u8).find(|&t| *self == Self::zeta_pow(t as i64))
    }

    /// Floating-point embedding, for display only.
    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for &v in &self.c {
            acc += p * v as f64;
            p *= z;
        }
        acc / 2f64.powi(self.k as i32)
    }

    /// Appends a compact zigzag-varint encoding of the normal form.
    pub(crate) fn write_key(&self, out: &mut Vec<u8>) {
        for &v in &self.c {
            let mut z = ((v << 1) ^ (v >> 63)) as u64;
            loop {
                let byte = (z & 0x7f) as u8;
                z >>= 7;
                if z == 0 {
                    out.push(byte);
                    break;
                }
                out.push(byte | 0x80);
            }
        }
        out.push(self.k as u8);
    }
}

impl Add for CycScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("CycScalar addition overflowed")
    }
}

impl Sub for CycScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("CycScalar subtraction overflowed")
    }
}

impl Mul for CycScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("CycScalar multiplication overflowed")
    }
}

impl Neg for CycScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self { c: self.c.map(|v| -v), k: self.k }
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})/2^{}", self.c[0], self.c[1], self.c[2], self.c[3], self.k)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "ζ", "ζ²", "ζ³"];
        let mut first = true;
        let mut body = String::new();
        for (i, &v) in self.c.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let sign = if v < 0 { "-" } else if first { "" } else { "+" };
            let mag = v.unsigned_abs();
            if i == 0 || mag != 1 {
                body.push_str(&format!("{sign}{mag}{}", names[i]));
            } else {
                body.push_str(&format!("{sign}{}", names[i]));
            }
            first = false;
        }
        if self.k == 0 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", 1u64 << self.k.min(63))
        }
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.c[0], self.c[1], self.c[2], self.c[3], self.k as i64].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = <[i64; 5]>::deserialize(d)?;
        let k = u32::try_from(t[4]).map_err(|_| D::Error::custom("negative denominator exponent"))?;
        Ok(Self::new([t[0], t[1], t[2], t[3]], k))
    }
}
