//! Exact arithmetic in Q(ζ_L).
//!
//! Elements are stored as an integer coefficient vector over a common positive
//! denominator, reduced modulo Φ_L, so equality is structural. Values that fit in
//! `i64` use a fast path; anything larger falls back to `BigInt`.

mod ctx;
mod embed;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::poly::QPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Coeffs {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An element of Q(ζ_L) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    c: Coeffs,
}

fn fits(x: i128) -> bool {
    x.unsigned_abs() <= i64::MAX as u128
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn zero_coeffs() -> Coeffs {
    Coeffs::Small { num: Vec::new(), den: 1 }
}

fn normalize_big(mut num: Vec<BigInt>, mut den: BigInt) -> Coeffs {
    trim(&mut num);
    if num.is_empty() {
        return zero_coeffs();
    }
    let mut g = den.abs();
    for x in &num {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if !g.is_one() {
        for x in num.iter_mut() {
            *x /= &g;
        }
        den /= &g;
    }
    if den.is_negative() {
        den = -den;
        for x in num.iter_mut() {
            *x = -&*x;
        }
    }
    let small_den = den.to_i64();
    let small_num: Option<Vec<i64>> = num
        .iter()
        .map(|x| x.to_i64().filter(|&v| v != i64::MIN))
        .collect();
    match (small_num, small_den) {
        (Some(num), Some(den)) => Coeffs::Small { num, den },
        _ => Coeffs::Big { num, den },
    }
}

fn normalize_i128(mut num: Vec<i128>, mut den: i128) -> Coeffs {
    trim(&mut num);
    if num.is_empty() {
        return zero_coeffs();
    }
    if den == i128::MIN || num.contains(&i128::MIN) {
        return normalize_big(num.into_iter().map(BigInt::from).collect(), den.into());
    }
    let mut g = den.abs();
    for &x in &num {
        if g == 1 {
            break;
        }
        g = g.gcd(&x);
    }
    if g != 1 {
        for x in num.iter_mut() {
            *x /= g;
        }
        den /= g;
    }
    if den < 0 {
        den = -den;
        for x in num.iter_mut() {
            *x = -*x;
        }
    }
    if fits(den) && num.iter().all(|&x| fits(x)) {
        Coeffs::Small { num: num.into_iter().map(|x| x as i64).collect(), den: den as i64 }
    } else {
        Coeffs::Big { num: num.into_iter().map(BigInt::from).collect(), den: den.into() }
    }
}

fn reduce_i128(cx: &ctx::Ctx, t: &mut Vec<i128>) -> Option<()> {
    let phi = cx.phi;
    for k in (phi..t.len()).rev() {
        let c = t[k];
        if c != 0 {
            t[k] = 0;
            for &(j, p) in &cx.tail {
                let idx = k - phi + j;
                t[idx] = t[idx].checked_sub(c.checked_mul(p as i128)?)?;
            }
        }
    }
    t.truncate(phi);
    Some(())
}

fn reduce_big(cx: &ctx::Ctx, t: &mut Vec<BigInt>) {
    let phi = cx.phi;
    for k in (phi..t.len()).rev() {
        if !t[k].is_zero() {
            let c = std::mem::take(&mut t[k]);
            for &(j, p) in &cx.tail {
                t[k - phi + j] -= &c * p;
            }
        }
    }
    t.truncate(phi);
}

impl Coeffs {
    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Coeffs::Small { num, den } => (num.iter().map(|&x| x.into()).collect(), (*den).into()),
            Coeffs::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Coeffs::Small { num, .. } => num.is_empty(),
            Coeffs::Big { num, .. } => num.is_empty(),
        }
    }

    fn len(&self) -> usize {
        match self {
            Coeffs::Small { num, .. } => num.len(),
            Coeffs::Big { num, .. } => num.len(),
        }
    }
}

fn mul_small(cx: &ctx::Ctx, a: &[i64], da: i64, b: &[i64], db: i64) -> Option<Coeffs> {
    let mut t = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as i128;
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                t[i + j] = t[i + j].checked_add(x * y as i128)?;
            }
        }
    }
    reduce_i128(cx, &mut t)?;
    let den = (da as i128).checked_mul(db as i128)?;
    Some(normalize_i128(t, den))
}

fn mul_big(cx: &ctx::Ctx, a: &Coeffs, b: &Coeffs) -> Coeffs {
    let (a, da) = a.big_parts();
    let (b, db) = b.big_parts();
    let mut t = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                t[i + j] += x * y;
            }
        }
    }
    reduce_big(cx, &mut t);
    normalize_big(t, da * db)
}

fn add_small(a: &[i64], da: i64, b: &[i64], db: i64) -> Option<Coeffs> {
    let g = da.gcd(&db) as i128;
    let ma = db as i128 / g;
    let mb = da as i128 / g;
    let den = (da as i128).checked_mul(ma)?;
    let n = a.len().max(b.len());
    let mut t = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).map_or(0, |&x| x as i128 * ma);
        let y = b.get(k).map_or(0, |&y| y as i128 * mb);
        t.push(x.checked_add(y)?);
    }
    Some(normalize_i128(t, den))
}

fn add_big(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let (a, da) = a.big_parts();
    let (b, db) = b.big_parts();
    let g = da.gcd(&db);
    let ma = &db / &g;
    let mb = &da / &g;
    let n = a.len().max(b.len());
    let mut t = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = BigInt::zero();
        if let Some(x) = a.get(k) {
            s += x * &ma;
        }
        if let Some(y) = b.get(k) {
            s += y * &mb;
        }
        t.push(s);
    }
    normalize_big(t, da * ma)
}

/// ζ_L^a.
pub fn zeta(l: u32, a: i64) -> CycNum {
    let cx = ctx::ctx(l);
    let k = a.rem_euclid(l as i64) as usize;
    CycNum { order: l, c: normalize_i128(cx.powers[k].iter().map(|&x| x as i128).collect(), 1) }
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        ctx::ctx(order);
        CycNum { order, c: zero_coeffs() }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_ratio(order, n, 1)
    }

    /// n/d; panics if d = 0.
    pub fn from_ratio(order: u32, n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        ctx::ctx(order);
        CycNum { order, c: normalize_i128(vec![n as i128], d as i128) }
    }

    pub fn from_rational(order: u32, r: &BigRational) -> Self {
        ctx::ctx(order);
        CycNum { order, c: normalize_big(vec![r.numer().clone()], r.denom().clone()) }
    }

    /// Σ c_k ζ^k for an arbitrary-length coefficient list, reduced modulo Φ_L.
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Self {
        let cx = ctx::ctx(order);
        let mut den = BigInt::one();
        for a in coeffs {
            den = den.lcm(a.denom());
        }
        let mut t: Vec<BigInt> = coeffs.iter().map(|a| a.numer() * (&den / a.denom())).collect();
        if t.len() < cx.phi {
            t.resize(cx.phi, BigInt::zero());
        }
        reduce_big(cx, &mut t);
        CycNum { order, c: normalize_big(t, den) }
    }

    fn from_qpoly(order: u32, p: &QPoly) -> Self {
        Self::from_coeffs(order, p.coeffs())
    }

    fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(self.coeffs())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficients, padded to length φ(L).
    pub fn coeffs(&self) -> Vec<BigRational> {
        let phi = ctx::ctx(self.order).phi;
        let (num, den) = self.c.big_parts();
        let mut out: Vec<BigRational> =
            num.into_iter().map(|x| BigRational::new(x, den.clone())).collect();
        out.resize(phi, BigRational::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.c, Coeffs::Small { num, den } if num.len() == 1 && num[0] == 1 && *den == 1)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c.len() > 1 {
            return None;
        }
        let (num, den) = self.c.big_parts();
        Some(BigRational::new(num.into_iter().next().unwrap_or_default(), den))
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.order, o.order, "cyclotomic order mismatch");
    }

    fn same_order(&self, o: &Self) -> Result<()> {
        if self.order != o.order {
            Err(Error::OrderMismatch(self.order, o.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let c = match (&self.c, &o.c) {
            (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) => {
                add_small(a, *da, b, *db).unwrap_or_else(|| add_big(&self.c, &o.c))
            }
            _ => add_big(&self.c, &o.c),
        };
        CycNum { order: self.order, c }
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return CycNum { order: self.order, c: zero_coeffs() };
        }
        let cx = ctx::ctx(self.order);
        let c = match (&self.c, &o.c) {
            (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) => {
                mul_small(cx, a, *da, b, *db).unwrap_or_else(|| mul_big(cx, &self.c, &o.c))
            }
            _ => mul_big(cx, &self.c, &o.c),
        };
        CycNum { order: self.order, c }
    }

    /// Multiply by the rational n/d.
    pub fn scale(&self, n: i64, d: i64) -> Self {
        self.mul_unchecked(&Self::from_ratio(self.order, n, d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, &r.recip()));
        }
        let (_, s) = self.to_qpoly().inverse_mod(&phi_qpoly(self.order));
        Ok(Self::from_qpoly(self.order, &s))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        Ok(self.mul_unchecked(&o.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    /// Apply ζ_L ↦ ζ_M^{k·M/L}; `target` must be a multiple of L.
    fn map_powers(&self, target: u32, k: i64) -> Self {
        let step = (target / self.order) as i64;
        let cx = ctx::ctx(target);
        let tl = target as i64;
        let small = |num: &[i64], den: i64| -> Option<Coeffs> {
            let mut t = vec![0i128; cx.phi];
            for (j, &c) in num.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let idx = (j as i64 * k * step).rem_euclid(tl) as usize;
                for (s, &p) in cx.powers[idx].iter().enumerate() {
                    if p != 0 {
                        t[s] = t[s].checked_add((c as i128).checked_mul(p as i128)?)?;
                    }
                }
            }
            Some(normalize_i128(t, den as i128))
        };
        let big = || {
            let (num, den) = self.c.big_parts();
            let mut t = vec![BigInt::zero(); cx.phi];
            for (j, c) in num.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let idx = (j as i64 * k * step).rem_euclid(tl) as usize;
                for (s, &p) in cx.powers[idx].iter().enumerate() {
                    if p != 0 {
                        t[s] += c * p;
                    }
                }
            }
            normalize_big(t, den)
        };
        let c = match &self.c {
            Coeffs::Small { num, den } => small(num, *den).unwrap_or_else(big),
            Coeffs::Big { .. } => big(),
        };
        CycNum { order: target, c }
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.map_powers(self.order, -1)
    }

    /// The automorphism ζ ↦ ζ^k, gcd(k, L) = 1.
    pub fn galois(&self, k: i64) -> Result<Self> {
        if k.gcd(&(self.order as i64)) != 1 {
            return Err(Error::Domain(format!("{k} is not a unit modulo {}", self.order)));
        }
        Ok(self.map_powers(self.order, k))
    }

    /// The same number viewed in Q(ζ_M), L | M.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.order != 0 {
            return Err(Error::Domain(format!("{} does not divide {m}", self.order)));
        }
        Ok(self.map_powers(m, 1))
    }

    /// Fast double-precision value; for exact sign decisions use `sign_real`.
    pub fn to_complex_f64(&self) -> Complex64 {
        let (num, den) = self.c.big_parts();
        let den = den.to_f64().unwrap_or(f64::INFINITY);
        let l = self.order as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (j, c) in num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * j as f64 / l;
            z += Complex64::new(t.cos(), t.sin()) * (c.to_f64().unwrap_or(f64::NAN) / den);
        }
        z
    }

    /// Complex value with absolute error below 10^(-precision).
    pub fn embed(&self, precision: u32) -> Result<Complex64> {
        embed::embed(self, precision)
    }

    /// Sign of a real element, decided exactly.
    pub fn sign_real(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if self.conj() != *self {
            return Err(Error::Domain("sign of a non-real number".into()));
        }
        embed::sign_real(self)
    }

    pub(crate) fn int_parts(&self) -> (Vec<BigInt>, BigInt) {
        self.c.big_parts()
    }
}

fn phi_qpoly(l: u32) -> QPoly {
    let cx = ctx::ctx(l);
    let mut c = vec![0i64; cx.phi + 1];
    c[cx.phi] = 1;
    for &(k, v) in &cx.tail {
        c[k] = v;
    }
    QPoly::from_ints(&c)
}

/// Φ_L with integer coefficients, low degree first.
pub fn cyclotomic_polynomial(l: u32) -> Vec<i64> {
    let cx = ctx::ctx(l);
    let mut c = vec![0i64; cx.phi + 1];
    c[cx.phi] = 1;
    for &(k, v) in &cx.tail {
        c[k] = v;
    }
    c
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.check(o);
        self.add_unchecked(o)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.check(o);
        self.add_unchecked(&-o)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.check(o);
        self.mul_unchecked(o)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let c = match &self.c {
            Coeffs::Small { num, den } => Coeffs::Small { num: num.iter().map(|x| -x).collect(), den: *den },
            Coeffs::Big { num, den } => Coeffs::Big { num: num.iter().map(|x| -x).collect(), den: den.clone() },
        };
        CycNum { order: self.order, c }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
        }
        write!(f, " [z=ζ_{}]", self.order)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycNum", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// A number of the form num/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    pub num: i64,
}

impl HalfInt {
    pub const fn from_int(k: i64) -> Self {
        HalfInt { num: 2 * k }
    }

    /// The value n/2.
    pub const fn halves(n: i64) -> Self {
        HalfInt { num: n }
    }

    pub fn is_integer(self) -> bool {
        self.num % 2 == 0
    }

    pub fn twice(self) -> i64 {
        self.num
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { num: self.num + o.num }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { num: self.num - o.num }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { num: -self.num }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.num / 2)
        } else {
            write!(f, "{}/2", self.num)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The master order 8N.
pub fn master_order(n: u32) -> u32 {
    8 * n
}

/// q = ζ_{2N} inside Q(ζ_{8N}).
pub fn q_of(n: u32) -> CycNum {
    zeta(8 * n, 4)
}

/// The q-number [x] = (q^x − q^{−x})/(q − q^{−1}) at q = e^{πi/N}, in Q(ζ_{8N}).
pub fn qnum(x: HalfInt, n: u32) -> CycNum {
    assert!(n >= 2, "qnum needs N ≥ 2");
    let l = 8 * n;
    // q^x = v^{2x} with v = ζ_{8N}^2.
    let e = 2 * x.twice();
    let top = zeta(l, e) - zeta(l, -e);
    let bottom = zeta(l, 4) - zeta(l, -4);
    top.try_div(&bottom).expect("q - q^-1 is nonzero for N ≥ 2")
}

/// Positive square root of m inside Q(ζ_L), built from Gauss sums.
pub fn sqrt_int(m: u64, order: u32) -> Result<CycNum> {
    if m == 0 {
        return Ok(CycNum::zero(order));
    }
    // m = s²·t with t squarefree.
    let mut s = 1u64;
    let mut t = 1u64;
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            t *= p;
        }
        p += 1;
    }
    t *= rest;
    let l = order as u64;
    let unsupported = || Error::Domain(format!("√{m} is not available in Q(ζ_{order})"));
    let mut r = CycNum::from_int(order, s as i64);
    let odd = if t % 2 == 0 { t / 2 } else { t };
    if t % 2 == 0 {
        if l % 8 != 0 {
            return Err(unsupported());
        }
        r = &r * &(zeta(order, (l / 8) as i64) + zeta(order, -((l / 8) as i64)));
    }
    if odd > 1 {
        if l % odd != 0 || (odd % 4 == 3 && l % 4 != 0) {
            return Err(unsupported());
        }
        let step = (l / odd) as i64;
        let mut g = CycNum::zero(order);
        for j in 0..odd as i64 {
            g = g + zeta(order, step * ((j * j) % odd as i64));
        }
        if odd % 4 == 3 {
            // G = i√t.
            g = &g * &zeta(order, -((l / 4) as i64));
        }
        r = &r * &g;
    }
    if r.sign_real()? == Ordering::Less {
        r = -r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i_unit(l: u32) -> CycNum {
        zeta(l, l as i64 / 4)
    }

    #[test]
    fn zeta_basics() {
        assert_eq!(zeta(8, 2), i_unit(8));
        assert!(zeta(12, 0).is_one());
        assert_eq!(zeta(24, 25), zeta(24, 1));
        let r2 = zeta(24, 3) + zeta(24, -3);
        assert_eq!(&r2 * &r2, CycNum::from_int(24, 2));
    }

    #[test]
    fn ring_examples() {
        let i = i_unit(16);
        assert_eq!(&i * &i, CycNum::from_int(16, -1));
        for a in -20..20 {
            assert_eq!(zeta(40, a).inv().unwrap(), zeta(40, -a));
            assert_eq!(zeta(40, a).conj(), zeta(40, -a));
        }
        assert_eq!(CycNum::zero(8).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_general_element() {
        let x = zeta(40, 1) + CycNum::from_ratio(40, 3, 7) + zeta(40, 9).scale(-5, 2);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn qnum_examples() {
        for n in 2..9 {
            assert!(qnum(HalfInt::from_int(0), n).is_zero());
            assert!(qnum(HalfInt::from_int(1), n).is_one());
            let q = q_of(n);
            assert_eq!(qnum(HalfInt::from_int(2), n), &q + &q.inv().unwrap());
            let h = HalfInt::halves(3);
            assert_eq!(qnum(-h, n), -qnum(h, n));
            assert_eq!(qnum(h, n).conj(), qnum(h, n));
        }
        let z = qnum(HalfInt::from_int(2), 3).embed(10).unwrap();
        assert!((z.re - 1.0).abs() < 1e-10 && z.im.abs() < 1e-10);
    }

    #[test]
    fn embed_examples() {
        let z = i_unit(8).embed(10).unwrap();
        assert!(z.re.abs() < 1e-10 && (z.im - 1.0).abs() < 1e-10);
        let r2 = (zeta(8, 1) + zeta(8, -1)).embed(12).unwrap();
        assert!((r2.re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(zeta(8, 1).embed(40).is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_int(2, 8).unwrap(), zeta(8, 1) + zeta(8, -1));
        assert_eq!(sqrt_int(9, 24).unwrap(), CycNum::from_int(24, 3));
        for n in 3..=12u32 {
            let l = 8 * n;
            for m in [2, n as u64, 2 * n as u64] {
                let r = sqrt_int(m, l).unwrap();
                assert_eq!(&r * &r, CycNum::from_int(l, m as i64));
                assert!(r.embed(8).unwrap().re > 0.0);
            }
        }
        assert!(sqrt_int(3, 8).is_err());
    }

    #[test]
    fn sign_of_tiny_difference() {
        // 2cos(2π/120) - 2cos(2π/121·...) style: compare two close reals exactly.
        let l = 120;
        let a = zeta(l, 1) + zeta(l, -1);
        let b = zeta(l, 2) + zeta(l, -2);
        assert_eq!((&a - &b).sign_real().unwrap(), Ordering::Greater);
        assert_eq!((&b - &a).sign_real().unwrap(), Ordering::Less);
        assert!(zeta(l, 1).sign_real().is_err());
    }

    #[test]
    fn lift_and_galois() {
        let x = zeta(24, 5) + CycNum::from_int(24, 2);
        let y = x.lift(48).unwrap();
        assert_eq!(y, zeta(48, 10) + CycNum::from_int(48, 2));
        assert_eq!(x.galois(-1).unwrap(), x.conj());
        assert!(x.galois(2).is_err());
    }

    #[test]
    fn round_trip_through_coeffs() {
        for a in 0..64 {
            let z = zeta(64, a);
            assert_eq!(CycNum::from_coeffs(64, &z.coeffs()), z);
        }
    }
}
