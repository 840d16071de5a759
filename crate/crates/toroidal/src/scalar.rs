//! Exact arithmetic in the cyclotomic field Q(ξ_N).
//!
//! Elements are stored canonically as vectors of rationals of length φ(N) in
//! the power basis {ξ_N^j : 0 ≤ j < φ(N)} of Q[x]/(Φ_N(x)), so equality is
//! coefficient-wise comparison. Reduction modulo the N-th cyclotomic
//! polynomial Φ_N (never x^N − 1, which has zero divisors) is applied after
//! every operation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Mutex;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero in Q(ξ_{0})")]
    DivisionByZero(u32),
    #[error("mismatched cyclotomic orders {0} and {1}; embed into a common order first")]
    OrderMismatch(u32, u32),
    #[error("order {0} does not divide target order {1}")]
    BadEmbedding(u32, u32),
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..=n).filter(|i| n % i == 0).collect();
    d.sort_unstable();
    d
}

/// Coefficients of Φ_N, low degree first, as big integers.
///
/// Computed by exact division of x^N − 1 by the product of Φ_d over proper
/// divisors d of N; results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static CACHE: Mutex<BTreeMap<u32, Vec<BigInt>>> = Mutex::new(BTreeMap::new());
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); (n + 1) as usize];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        let mut den = vec![BigInt::one()];
        for d in divisors(n) {
            if d < n {
                den = int_poly_mul(&den, &cyclotomic_polynomial(d));
            }
        }
        int_poly_div_exact(&num, &den)
    };
    CACHE.lock().unwrap().insert(n, poly.clone());
    poly
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// Exact division of integer polynomials (divisor monic up to sign).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / &lead;
        quot[i - dd] = q.clone();
        for j in 0..=dd {
            let t = &den[j] * &q;
            rem[i - dd + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// An exact element of Q(ξ_N), ξ_N a primitive N-th root of unity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<Rat>,
}

impl CycScalar {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: vec![Rat::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rat(order, Rat::one())
    }

    pub fn from_rat(order: u32, r: Rat) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = r;
        s
    }

    pub fn from_int(order: u32, k: i64) -> Self {
        Self::from_rat(order, Rat::from(BigInt::from(k)))
    }

    /// ξ_N^k, reduced mod Φ_N. Exponents are taken mod N.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        Self::reduce(order, poly)
    }

    /// Builds a scalar from raw power-basis coefficients of any length,
    /// reducing mod Φ_N.
    pub fn reduce(order: u32, mut poly: Vec<Rat>) -> Self {
        let phi = euler_phi(order) as usize;
        let modulus = cyclotomic_polynomial(order);
        let md = modulus.len() - 1;
        debug_assert_eq!(md, phi);
        if poly.len() > md {
            let lead_inv = Rat::from(modulus[md].clone()).recip();
            for i in (md..poly.len()).rev() {
                if poly[i].is_zero() {
                    continue;
                }
                let q = &poly[i] * &lead_inv;
                for j in 0..md {
                    let t = &q * Rat::from(modulus[j].clone());
                    poly[i - md + j] -= t;
                }
                poly[i] = Rat::zero();
            }
        }
        poly.truncate(md);
        poly.resize(phi, Rat::zero());
        Self {
            order,
            coeffs: poly,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), ScalarError> {
        if self.order != other.order {
            Err(ScalarError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.order));
        }
        let mut prod = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        Ok(Self::reduce(self.order, prod))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against Φ_N (irreducible, so any nonzero element is a unit).
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero(self.order));
        }
        let modulus: Vec<Rat> = cyclotomic_polynomial(self.order)
            .into_iter()
            .map(Rat::from)
            .collect();
        // extended gcd: s*a + t*Phi = gcd
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, r) = rat_poly_div_rem(&r0, &r1);
            let s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant gcd; inverse = s0 / r0.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone().recip();
        let inv: Vec<Rat> = s0.iter().map(|x| x * &c).collect();
        Ok(Self::reduce(self.order, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_order(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Embeds Q(ξ_m) into Q(ξ_target) for m | target via ξ_m ↦ ξ_target^{target/m}.
    pub fn embed(&self, target: u32) -> Result<Self, ScalarError> {
        if target % self.order != 0 {
            return Err(ScalarError::BadEmbedding(self.order, target));
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![Rat::zero(); self.coeffs.len() * step];
        poly.push(Rat::zero());
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[j * step] = c.clone();
            }
        }
        Ok(Self::reduce(target, poly))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Deterministic structural comparison (order, then coefficients).
    /// Not compatible with field arithmetic; used for canonical maps and
    /// lexicographic weight orderings.
    pub fn struct_cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                    let c = a.cmp(b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }

    /// Sign of the leading (lowest-index) nonzero rational coordinate;
    /// 0 for the zero element. This is a translation-invariant order on the
    /// additive group, which is all root positivity needs.
    pub fn lex_sign(&self) -> i32 {
        for c in &self.coeffs {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn rat_poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn rat_poly_div_rem(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = den[dd].clone().recip();
    if rem.len() <= dd {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rat::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] * &lead_inv;
        quot[i - dd] = q.clone();
        for j in 0..=dd {
            let t = &den[j] * &q;
            rem[i - dd + j] -= t;
        }
    }
    (trim(quot), trim(rem))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $trait<&'b CycScalar> for &'a CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &'b CycScalar) -> CycScalar {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $trait<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &'b CycScalar) -> CycScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<CycScalar> for &'a CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{j}", self.order)?;
            } else {
                write!(f, "({c})*z{}^{j}", self.order)?;
            }
        }
        Ok(())
    }
}

/// The four field operations as a data-driven dispatch, matching the JSON
/// verification interface. Division by zero and order mismatches are errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_op(a: &CycScalar, b: &CycScalar, op: FieldOp) -> Result<CycScalar, ScalarError> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

/// Parses a rational from "p", "-p" or "p/q" with arbitrary-precision parts.
pub fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    let mk = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|e| ScalarError::Malformed(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = mk(q)?;
            if den.is_zero() {
                return Err(ScalarError::Malformed("zero denominator".into()));
            }
            Ok(Rat::new(mk(p)?, den))
        }
        None => Ok(Rat::from(mk(s)?)),
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(format_rat).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(de)?;
        let phi = euler_phi(repr.order) as usize;
        if repr.coeffs.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {phi} coefficients for order {}, got {}",
                repr.order,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(CycScalar {
            order: repr.order,
            coeffs,
        })
    }
}
