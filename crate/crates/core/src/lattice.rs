//! Picard lattice of the plane blown up in four (possibly infinitely near) points.
//!
//! Classes are stored in the orthogonal basis (L; ε₁..ε₄) with Gram form
//! diag(1, −1, −1, −1, −1). The basis of actual exceptional curves is only
//! used at the I/O boundary.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};

pub const RANK: usize = 5;
const NAMES: [&str; RANK] = ["l", "e1", "e2", "e3", "e4"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Standard,
    Curve,
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "standard" | "std" => Ok(Basis::Standard),
            "curve" => Ok(Basis::Curve),
            _ => Err(Error::Parse { input: s.into(), reason: "basis must be `standard` or `curve`".into() }),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    coeffs: [BigInt; RANK],
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QDivisorClass {
    coeffs: [BigRational; RANK],
}

fn gram_sign(i: usize) -> i32 {
    if i == 0 {
        1
    } else {
        -1
    }
}

impl DivisorClass {
    pub fn new(c: [i64; RANK]) -> Self {
        DivisorClass { coeffs: c.map(BigInt::from) }
    }

    pub fn from_coeffs(coeffs: [BigInt; RANK]) -> Self {
        DivisorClass { coeffs }
    }

    pub fn zero() -> Self {
        Self::new([0; RANK])
    }

    pub fn l() -> Self {
        Self::new([1, 0, 0, 0, 0])
    }

    /// Total transform εᵢ of the i-th exceptional divisor, i in 1..=4.
    pub fn e(i: usize) -> Self {
        assert!((1..=4).contains(&i), "exceptional index out of range: {i}");
        let mut c = [0; RANK];
        c[i] = 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt; RANK] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &DivisorClass) -> BigInt {
        let mut s = BigInt::zero();
        for i in 0..RANK {
            let p = &self.coeffs[i] * &other.coeffs[i];
            if gram_sign(i) > 0 {
                s += p;
            } else {
                s -= p;
            }
        }
        s
    }

    pub fn sq(&self) -> BigInt {
        self.dot(self)
    }

    /// −K·d, the anticanonical degree.
    pub fn anticanonical_degree(&self) -> BigInt {
        -self.dot(&canonical_class(Configuration::General))
    }

    pub fn to_q(&self) -> QDivisorClass {
        QDivisorClass { coeffs: self.coeffs.clone().map(BigRational::from_integer) }
    }

    pub fn to_i64(&self) -> Option<[i64; RANK]> {
        let mut out = [0i64; RANK];
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o = c.to_i64()?;
        }
        Some(out)
    }

    pub fn in_basis(&self, basis: Basis, cfg: Configuration) -> [BigInt; RANK] {
        match basis {
            Basis::Standard => self.coeffs.clone(),
            Basis::Curve => to_curve_basis(&self.coeffs, cfg),
        }
    }

    pub fn from_basis(v: [BigInt; RANK], basis: Basis, cfg: Configuration) -> Self {
        match basis {
            Basis::Standard => DivisorClass { coeffs: v },
            Basis::Curve => DivisorClass { coeffs: from_curve_basis(&v, cfg) },
        }
    }

    /// Parses a literal like `3l-e1-e2-e3-e4` given in `basis`.
    pub fn parse(s: &str, basis: Basis, cfg: Configuration) -> Result<Self> {
        let q = parse_literal(s)?;
        let mut v: [BigInt; RANK] = Default::default();
        for (out, c) in v.iter_mut().zip(q) {
            if !c.is_integer() {
                return Err(Error::Parse { input: s.into(), reason: "integral class expected".into() });
            }
            *out = c.to_integer();
        }
        Ok(Self::from_basis(v, basis, cfg))
    }

    pub fn render(&self, basis: Basis, cfg: Configuration) -> String {
        let v = self.in_basis(basis, cfg).map(BigRational::from_integer);
        render_coeffs(&v)
    }
}

impl QDivisorClass {
    pub fn from_coeffs(coeffs: [BigRational; RANK]) -> Self {
        QDivisorClass { coeffs }
    }

    pub fn zero() -> Self {
        QDivisorClass { coeffs: Default::default() }
    }

    pub fn coeffs(&self) -> &[BigRational; RANK] {
        &self.coeffs
    }

    pub fn dot(&self, other: &QDivisorClass) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..RANK {
            let p = &self.coeffs[i] * &other.coeffs[i];
            if gram_sign(i) > 0 {
                s += p;
            } else {
                s -= p;
            }
        }
        s
    }

    pub fn sq(&self) -> BigRational {
        self.dot(self)
    }

    pub fn scale(&self, r: &BigRational) -> QDivisorClass {
        QDivisorClass { coeffs: self.coeffs.clone().map(|c| c * r) }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integral(&self) -> Option<DivisorClass> {
        if !self.is_integral() {
            return None;
        }
        Some(DivisorClass { coeffs: self.coeffs.clone().map(|c| c.to_integer()) })
    }

    pub fn in_basis(&self, basis: Basis, cfg: Configuration) -> [BigRational; RANK] {
        match basis {
            Basis::Standard => self.coeffs.clone(),
            Basis::Curve => to_curve_basis(&self.coeffs, cfg),
        }
    }

    pub fn from_basis(v: [BigRational; RANK], basis: Basis, cfg: Configuration) -> Self {
        match basis {
            Basis::Standard => QDivisorClass { coeffs: v },
            Basis::Curve => QDivisorClass { coeffs: from_curve_basis(&v, cfg) },
        }
    }

    pub fn parse(s: &str, basis: Basis, cfg: Configuration) -> Result<Self> {
        Ok(Self::from_basis(parse_literal(s)?, basis, cfg))
    }

    pub fn render(&self, basis: Basis, cfg: Configuration) -> String {
        render_coeffs(&self.in_basis(basis, cfg))
    }
}

impl From<&DivisorClass> for QDivisorClass {
    fn from(d: &DivisorClass) -> Self {
        d.to_q()
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Basis::Standard, Configuration::General))
    }
}

impl fmt::Display for QDivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Basis::Standard, Configuration::General))
    }
}

macro_rules! lattice_ops {
    ($t:ident) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                let mut c = self.coeffs.clone();
                for (x, y) in c.iter_mut().zip(&o.coeffs) {
                    *x += y;
                }
                $t { coeffs: c }
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                let mut c = self.coeffs.clone();
                for (x, y) in c.iter_mut().zip(&o.coeffs) {
                    *x -= y;
                }
                $t { coeffs: c }
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t { coeffs: self.coeffs.clone().map(|x| -x) }
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl AddAssign<&$t> for $t {
            fn add_assign(&mut self, o: &$t) {
                for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
                    *x += y;
                }
            }
        }
        impl SubAssign<&$t> for $t {
            fn sub_assign(&mut self, o: &$t) {
                for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
                    *x -= y;
                }
            }
        }
    };
}

lattice_ops!(DivisorClass);
lattice_ops!(QDivisorClass);

impl Mul<&DivisorClass> for &BigInt {
    type Output = DivisorClass;
    fn mul(self, d: &DivisorClass) -> DivisorClass {
        DivisorClass { coeffs: d.coeffs.clone().map(|c| c * self) }
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: &DivisorClass) -> DivisorClass {
        &BigInt::from(self) * d
    }
}

impl std::iter::Sum for DivisorClass {
    fn sum<I: Iterator<Item = DivisorClass>>(iter: I) -> Self {
        iter.fold(DivisorClass::zero(), |a, b| a + b)
    }
}

pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> BigInt {
    a.dot(b)
}

pub fn intersect_q(a: &QDivisorClass, b: &QDivisorClass) -> BigRational {
    a.dot(b)
}

/// K = −3L + ε₁ + ε₂ + ε₃ + ε₄, the same vector for every configuration.
pub fn canonical_class(_cfg: Configuration) -> DivisorClass {
    DivisorClass::new([-3, 1, 1, 1, 1])
}

pub fn anticanonical_class() -> DivisorClass {
    DivisorClass::new([3, -1, -1, -1, -1])
}

/// χ(D) = 1 + (D² − D·K)/2.
pub fn riemann_roch_chi(d: &DivisorClass) -> Result<BigInt> {
    let k = canonical_class(Configuration::General);
    let num = d.sq() - d.dot(&k);
    if num.is_odd() {
        return Err(Error::Parity(format!("D² − D·K is odd for {d}")));
    }
    Ok(BigInt::one() + num / 2)
}

/// Coefficient of e_j is the sum of the standard coefficients of j and of every
/// point it is infinitely near to.
pub fn to_curve_basis<T>(c: &[T; RANK], cfg: Configuration) -> [T; RANK]
where
    T: Clone + for<'a> AddAssign<&'a T>,
{
    let mut v = c.clone();
    for j in 1..RANK {
        let mut p = cfg.prev(j);
        while let Some(i) = p {
            v[j] += &c[i];
            p = cfg.prev(i);
        }
    }
    v
}

pub fn from_curve_basis<T>(v: &[T; RANK], cfg: Configuration) -> [T; RANK]
where
    T: Clone + for<'a> SubAssign<&'a T>,
{
    let mut c = v.clone();
    for i in 1..RANK {
        if let Some(p) = cfg.prev(i) {
            c[i] -= &v[p];
        }
    }
    c
}

fn parse_number(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

/// Parses `3l-e1-2/3e3` (case-insensitive, `*` optional) into raw coefficients.
pub fn parse_literal(input: &str) -> Result<[BigRational; RANK]> {
    let err = |reason: &str| Error::Parse { input: input.into(), reason: reason.into() };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    let s = s.replace('−', "-");
    if s.is_empty() {
        return Err(err("empty literal"));
    }
    let mut out: [BigRational; RANK] = Default::default();
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        let mut sign = BigRational::one();
        match bytes[i] {
            b'+' => i += 1,
            b'-' => {
                sign = -sign;
                i += 1
            }
            _ if !first => return Err(err("expected `+` or `-` between terms")),
            _ => {}
        }
        first = false;
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let num = &s[start..i];
        let coeff = if num.is_empty() { BigRational::one() } else { parse_number(num).ok_or_else(|| err("bad coefficient"))? };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let slot = match bytes.get(i) {
            Some(b'l') => {
                i += 1;
                0
            }
            Some(b'e') => {
                let d = bytes.get(i + 1).ok_or_else(|| err("missing index after `e`"))?;
                i += 2;
                match d {
                    b'1'..=b'4' => (d - b'0') as usize,
                    _ => return Err(err("exceptional index must be 1..4")),
                }
            }
            None | Some(b'+') | Some(b'-') if !num.is_empty() => {
                if !coeff.is_zero() {
                    return Err(err("bare constants other than 0 are not classes"));
                }
                continue;
            }
            _ => return Err(err("expected `l` or `e1`..`e4`")),
        };
        out[slot] += sign * coeff;
    }
    Ok(out)
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn render_coeffs(v: &[BigRational; RANK]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(NAMES) {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&fmt_rat(&a));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// JSON form of a class: coefficients are integers or `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub basis: Basis,
    pub config: Configuration,
    pub coeffs: Vec<Coeff>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeff(pub BigRational);

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (self.0.is_integer(), self.0.to_integer().to_i64()) {
            (true, Some(n)) => s.serialize_i64(n),
            _ => s.serialize_str(&fmt_rat(&self.0)),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Coeff(BigRational::from_integer(n.into()))),
            Raw::Str(s) => parse_number(s.trim())
                .map(Coeff)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational coefficient `{s}`"))),
        }
    }
}

impl ClassRecord {
    pub fn from_class(d: &DivisorClass, basis: Basis, cfg: Configuration) -> Self {
        Self::from_q(&d.to_q(), basis, cfg)
    }

    pub fn from_q(d: &QDivisorClass, basis: Basis, cfg: Configuration) -> Self {
        ClassRecord { basis, config: cfg, coeffs: d.in_basis(basis, cfg).into_iter().map(Coeff).collect() }
    }

    pub fn to_q(&self) -> Result<QDivisorClass> {
        let v: [BigRational; RANK] = self
            .coeffs
            .iter()
            .map(|c| c.0.clone())
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| Error::Parse { input: format!("{:?}", self.coeffs), reason: "need exactly 5 coefficients".into() })?;
        Ok(QDivisorClass::from_basis(v, self.basis, self.config))
    }

    pub fn to_class(&self) -> Result<DivisorClass> {
        self.to_q()?.to_integral().ok_or_else(|| Error::Parse {
            input: format!("{:?}", self.coeffs),
            reason: "integral class expected".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Configuration::*;

    fn c(s: &str, cfg: Configuration) -> DivisorClass {
        DivisorClass::parse(s, Basis::Curve, cfg).unwrap()
    }

    #[test]
    fn gram_diagonal() {
        assert_eq!(DivisorClass::l().sq(), 1.into());
        assert_eq!(DivisorClass::e(1).sq(), (-1).into());
        assert_eq!(anticanonical_class().sq(), 5.into());
        assert_eq!(canonical_class(P6).sq(), 5.into());
    }

    #[test]
    fn curve_basis_renderings() {
        let minus_k = anticanonical_class();
        assert_eq!(minus_k.render(Basis::Curve, P2), "3l-e1-e2-2e3-e4");
        assert_eq!(DivisorClass::e(2).render(Basis::Curve, P2), "e2+e3");
        let line = DivisorClass::new([1, -1, -1, -1, 0]);
        assert_eq!(line.render(Basis::Curve, P2), "l-e1-e2-2e3");
        assert_eq!(line.render(Basis::Curve, P3), "l-e1-2e2-3e3");
        assert_eq!(line.render(Basis::Curve, P6), "l-e1-2e2-3e3-3e4");
        assert_eq!(c("2l-e1-e2-e3-e4", P3), DivisorClass::new([2, -1, 0, 0, -1]));
    }

    #[test]
    fn chi_values() {
        assert_eq!(riemann_roch_chi(&DivisorClass::zero()).unwrap(), 1.into());
        assert_eq!(riemann_roch_chi(&anticanonical_class()).unwrap(), 6.into());
        assert_eq!(riemann_roch_chi(&c("3l-e1-e2-e3", General)).unwrap(), 7.into());
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(DivisorClass::parse("3L - E1", Basis::Standard, General).unwrap(), DivisorClass::new([3, -1, 0, 0, 0]));
        assert_eq!(DivisorClass::parse("0", Basis::Standard, General).unwrap(), DivisorClass::zero());
        assert_eq!(DivisorClass::parse("-e1+2*e2", Basis::Standard, General).unwrap(), DivisorClass::new([0, -1, 2, 0, 0]));
        assert!(DivisorClass::parse("3l-e5", Basis::Standard, General).is_err());
        assert!(DivisorClass::parse("3l e1", Basis::Standard, General).is_err());
        assert!(DivisorClass::parse("1/2l", Basis::Standard, General).is_err());
        assert!(DivisorClass::parse("", Basis::Standard, General).is_err());
        let q = QDivisorClass::parse("4/3l-1/3e1", Basis::Standard, General).unwrap();
        assert_eq!(q.render(Basis::Standard, General), "4/3l-1/3e1");
    }

    #[test]
    fn record_round_trip() {
        let q = QDivisorClass::parse("4/3l-1/3e1-2e4", Basis::Curve, P4).unwrap();
        let rec = ClassRecord::from_q(&q, Basis::Curve, P4);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"basis":"curve","config":"P4","coeffs":["4/3","-1/3",0,0,-2]}"#);
        let back: ClassRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_q().unwrap(), q);
    }
}
