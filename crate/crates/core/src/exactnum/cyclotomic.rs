use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Matrix, Rational, Scalar, Solution};
use crate::{Error, Result};

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree
/// first, computed as `(x^n - 1) / ∏_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut BTreeMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_memo(d, memo);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Quotient of `num` by the monic `den`; the division must be exact.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem: Vec<BigInt> = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

struct FieldData {
    order: u32,
    degree: usize,
    /// `powers[i]` is `x^i mod Φ_l` for `0 <= i < max(l, 2·degree - 1)`.
    powers: Vec<Vec<Rational>>,
}

/// Handle to the cyclotomic field `Q(ξ_l) = Q[x]/Φ_l(x)`; cheap to clone.
#[derive(Clone)]
pub struct CycField(Arc<FieldData>);

impl CycField {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let count = core::cmp::max(order as usize, 2 * degree - 1).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow coefficient with Φ_l (monic)
            let top = cur[degree - 1].clone();
            let mut next = vec![Rational::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in modulus.iter().take(degree).enumerate() {
                    next[i] = &next[i] - &(&top * &Rational::from_bigint(c.clone()));
                }
            }
            cur = next;
        }
        Ok(CycField(Arc::new(FieldData {
            order,
            degree,
            powers,
        })))
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// `φ(l)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> CycNum {
        CycNum {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.0.degree],
        }
    }

    pub fn one(&self) -> CycNum {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> CycNum {
        self.from_rational(Rational::from_int(n))
    }

    pub fn from_rational(&self, r: Rational) -> CycNum {
        let mut c = self.zero();
        c.coeffs[0] = r;
        c
    }

    /// `ξ_l^power`; depends only on `power mod l`.
    pub fn root(&self, power: i64) -> CycNum {
        let l = self.0.order as i64;
        let p = power.rem_euclid(l) as usize;
        CycNum {
            field: self.clone(),
            coeffs: self.0.powers[p].clone(),
        }
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Result<CycNum> {
        if coeffs.len() != self.0.degree {
            return Err(Error::Dimension(alloc::format!(
                "expected {} coordinates for order {}, got {}",
                self.0.degree,
                self.0.order,
                coeffs.len()
            )));
        }
        Ok(CycNum {
            field: self.clone(),
            coeffs,
        })
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.0.order == other.0.order
    }
}

impl Eq for CycField {}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ξ_{})", self.0.order)
    }
}

/// `ξ_l^power` as a fresh field element.
pub fn root_of_unity(order: u32, power: i64) -> Result<CycNum> {
    Ok(CycField::new(order)?.root(power))
}

/// Element of `Q(ξ_l)` in the power basis `1, x, …, x^(φ(l)-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    field: CycField,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Scalar::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.negated()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let inv = other.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_unchecked(&inv))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.field.degree();
        if n == 1 {
            return CycNum {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + &(a * b);
                }
            }
        }
        let mut out: Vec<Rational> = prod[..n].to_vec();
        for (i, c) in prod.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.field.0.powers[i]) {
                if !p.is_zero() {
                    *o = &*o + &(c * p);
                }
            }
        }
        CycNum {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// Integer power; negative exponents invert. Panics on `0^negative`.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            sq = sq.mul_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation, the automorphism `ξ_l ↦ ξ_l^{-1}`.
    pub fn conj(&self) -> Self {
        let mut out = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = self.field.root(-(i as i64));
            for (o, p) in out.coeffs.iter_mut().zip(&r.coeffs) {
                if !p.is_zero() {
                    *o = &*o + &(c * p);
                }
            }
        }
        out
    }

    /// Embeds `Q(ξ_m)` into `Q(ξ_l)` for `m | l` via `ξ_m ↦ ξ_l^{l/m}`.
    pub fn embed(&self, target: &CycField) -> Result<Self> {
        let m = self.order();
        let l = target.order();
        if l % m != 0 {
            return Err(Error::NotDivisor { k: m, ell: l });
        }
        let step = (l / m) as i64;
        let mut out = target.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = target.root(i as i64 * step);
            for (o, p) in out.coeffs.iter_mut().zip(&r.coeffs) {
                if !p.is_zero() {
                    *o = &*o + &(c * p);
                }
            }
        }
        Ok(out)
    }

    /// Multiplication-by-`self` matrix on the power basis.
    fn mul_matrix(&self) -> Matrix<Rational> {
        let n = self.field.degree();
        let mut m = Matrix::zeros(n, n, Rational::zero());
        for j in 0..n {
            let mut e = self.field.zero();
            e.coeffs[j] = Rational::one();
            let col = self.mul_unchecked(&e);
            for i in 0..n {
                m.set(i, j, col.coeffs[i].clone());
            }
        }
        m
    }
}

impl Scalar for CycNum {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("cyclotomic order mismatch")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("cyclotomic order mismatch")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("cyclotomic order mismatch")
    }
    fn negated(&self) -> Self {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.degree();
        if n == 1 {
            return Some(self.field.from_rational(self.coeffs[0].inverse()?));
        }
        let mut rhs = vec![Rational::zero(); n];
        rhs[0] = Rational::one();
        match self.mul_matrix().solve(&rhs).ok()? {
            Solution::Solved { particular, .. } => Some(CycNum {
                field: self.field.clone(),
                coeffs: particular,
            }),
            Solution::NoSolution => None,
        }
    }
}

macro_rules! cyc_binop {
    ($tr:ident, $method:ident, $via:ident) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                Scalar::$via(self, rhs)
            }
        }
    };
}

cyc_binop!(Add, add, plus);
cyc_binop!(Sub, sub, minus);
cyc_binop!(Mul, mul, times);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.negated()
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycNum {
    /// Human-readable form such as `1 - 2·ξ4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = alloc::format!("{abs:?}");
            match (i, coeff.as_str()) {
                (0, _) => f.write_str(&coeff)?,
                (_, "1") => write!(f, "ξ{}^{}", self.order(), i)?,
                _ => write!(f, "{}·ξ{}^{}", coeff, self.order(), i)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycWire {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        use alloc::string::ToString;
        CycWire {
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = CycWire::deserialize(deserializer)?;
        let field = CycField::new(wire.order).map_err(D::Error::custom)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        field.from_coeffs(coeffs).map_err(D::Error::custom)
    }
}

/// Euler's totient, used only to size-check coordinates in tests.
#[allow(dead_code)]
pub(crate) fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
    }

    #[test]
    fn roots_reduce_mod_order() {
        assert_eq!(root_of_unity(2, 1).unwrap(), CycField::new(2).unwrap().from_int(-1));
        assert_eq!(root_of_unity(4, 2).unwrap(), CycField::new(4).unwrap().from_int(-1));
        assert_eq!(root_of_unity(5, 7).unwrap(), root_of_unity(5, 2).unwrap());
        assert_eq!(root_of_unity(5, -3).unwrap(), root_of_unity(5, 2).unwrap());
        let k = CycField::new(3).unwrap();
        let sum = &(&k.root(0) + &k.root(1)) + &k.root(2);
        assert!(sum.is_zero());
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(root_of_unity(0, 1).unwrap_err(), Error::InvalidOrder(0));
    }

    #[test]
    fn inverse_of_root() {
        for l in 1..=8 {
            let k = CycField::new(l).unwrap();
            let x = k.root(1);
            assert_eq!(k.one().checked_div(&x).unwrap(), k.root(l as i64 - 1));
        }
        let k6 = CycField::new(6).unwrap();
        assert_eq!(k6.root(1).times(&k6.root(5)), k6.one());
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let k = CycField::new(3).unwrap();
        assert_eq!(k.one().checked_div(&k.zero()), Err(Error::DivisionByZero));
        let k4 = CycField::new(4).unwrap();
        assert_eq!(k.one().checked_add(&k4.one()), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn conj_and_embed() {
        let k = CycField::new(4).unwrap();
        assert_eq!(k.root(1).conj(), k.root(3));
        let k2 = CycField::new(2).unwrap();
        assert_eq!(k2.root(1).embed(&k).unwrap(), k.root(2));
        let k12 = CycField::new(12).unwrap();
        let k3 = CycField::new(3).unwrap();
        assert_eq!(k3.root(1).embed(&k12).unwrap(), k12.root(4));
        assert!(k3.one().embed(&k).is_err());
    }

    #[test]
    fn json_shape() {
        let k = CycField::new(3).unwrap();
        let x = &k.root(1) + &k.from_rational(Rational::new(1, 2));
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"order":3,"coeffs":["1/2","1/1"]}"#);
        let back: CycNum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycNum>(r#"{"order":3,"coeffs":["1/1"]}"#).is_err());
    }
}
