//! Exact arithmetic in the imaginary quadratic order R_{-d,f} = Z + f·ω_{-d}·Z
//! and its fraction field.
//!
//! Elements are stored as a + b·θ with θ = f·ω_{-d}, so an element lies in R
//! exactly when both coordinates are integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "n", "-n" or "p/q".
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes a rational as a bare integer when possible, else as "p/q".
pub struct SerRational<'a>(pub &'a Rational);

impl Serialize for SerRational<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(v) = self.0.numer().to_i64() {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&format_rational(self.0))
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// The order R_{-d,f}; d = 0 encodes Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    d: u64,
    f: u64,
    p: i64,
    q: i64,
}

impl RingSpec {
    pub fn new(d: u64, f: u64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        if f == 0 || (d == 0 && f != 1) {
            return Err(Error::BadConductor { d, f });
        }
        let (di, fi) = (d as i64, f as i64);
        let (p, q) = if d == 0 {
            (0, 0)
        } else if d % 4 == 3 {
            (fi, -fi * fi * (1 + di) / 4)
        } else {
            (0, -di * fi * fi)
        };
        Ok(RingSpec { d, f, p, q })
    }

    pub fn integers() -> Self {
        RingSpec::new(0, 1).unwrap()
    }

    pub fn gaussian() -> Self {
        RingSpec::new(1, 1).unwrap()
    }

    pub fn eisenstein() -> Self {
        RingSpec::new(3, 1).unwrap()
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    /// θ² = p·θ + q.
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_z(&self) -> bool {
        self.d == 0
    }

    /// True when −d ≡ 1 (mod 4), i.e. ω_{-d} = (1+√−d)/2.
    pub fn half_integral(&self) -> bool {
        self.d % 4 == 3
    }

    pub fn zero(&self) -> QuadElem {
        QuadElem::raw(*self, Rational::zero(), Rational::zero())
    }

    pub fn one(&self) -> QuadElem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> QuadElem {
        QuadElem::raw(*self, rat(n), Rational::zero())
    }

    pub fn rational(&self, a: Rational) -> QuadElem {
        QuadElem::raw(*self, a, Rational::zero())
    }

    /// a + b·θ with integer coordinates.
    pub fn elem(&self, a: i64, b: i64) -> Result<QuadElem> {
        QuadElem::new(*self, rat(a), rat(b))
    }

    pub fn theta(&self) -> Result<QuadElem> {
        self.elem(0, 1)
    }

    /// √−d as an element of the fraction field.
    pub fn sqrt_neg_d(&self) -> Result<QuadElem> {
        if self.is_z() {
            return Err(Error::UnsupportedRing(self.to_string()));
        }
        let f = self.f as i64;
        if self.half_integral() {
            QuadElem::new(*self, rat(-1), ratio(2, f))
        } else {
            QuadElem::new(*self, rat(0), ratio(1, f))
        }
    }

    /// a + c·√−d in the fraction field.
    pub fn from_surd(&self, a: Rational, c: Rational) -> Result<QuadElem> {
        if c.is_zero() {
            return Ok(self.rational(a));
        }
        let s = self.sqrt_neg_d()?;
        Ok(&self.rational(a) + &(&self.rational(c) * &s))
    }

    /// Generator of the unit group, in the order of increasing argument.
    fn unit_generator(&self) -> (QuadElem, u32) {
        match (self.d, self.f) {
            (1, 1) => (self.theta().unwrap(), 4),
            (3, 1) => (self.theta().unwrap(), 6),
            _ => (self.int(-1), 2),
        }
    }

    /// Complex embedding of θ.
    pub fn theta_complex(&self) -> (f64, f64) {
        let f = self.f as f64;
        let s = (self.d as f64).sqrt();
        if self.d == 0 {
            (0.0, 0.0)
        } else if self.half_integral() {
            (f / 2.0, f * s / 2.0)
        } else {
            (0.0, f * s)
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.d, self.f) {
            (0, _) => write!(f, "Z"),
            (1, 1) => write!(f, "Z[i]"),
            (d, 1) => write!(f, "O_{{-{}}}", d),
            (d, c) => write!(f, "R_{{-{},{}}}", d, c),
        }
    }
}

/// An element a + b·θ of R or of its fraction field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: Rational,
    b: Rational,
    ring: RingSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn arith(x: &QuadElem, y: &QuadElem, op: ArithOp) -> Result<QuadElem> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => x.add_unchecked(y),
        ArithOp::Sub => x.sub_unchecked(y),
        ArithOp::Mul => x.mul_unchecked(y),
    })
}

impl QuadElem {
    pub fn new(ring: RingSpec, a: Rational, b: Rational) -> Result<Self> {
        if ring.is_z() && !b.is_zero() {
            return Err(Error::NotInZ);
        }
        Ok(QuadElem { a, b, ring })
    }

    fn raw(ring: RingSpec, a: Rational, b: Rational) -> Self {
        QuadElem { a, b, ring }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    fn add_unchecked(&self, y: &QuadElem) -> QuadElem {
        QuadElem::raw(self.ring, &self.a + &y.a, &self.b + &y.b)
    }

    fn sub_unchecked(&self, y: &QuadElem) -> QuadElem {
        QuadElem::raw(self.ring, &self.a - &y.a, &self.b - &y.b)
    }

    fn mul_unchecked(&self, y: &QuadElem) -> QuadElem {
        let p = rat(self.ring.p);
        let q = rat(self.ring.q);
        let bb = &self.b * &y.b;
        let a = &self.a * &y.a + &bb * &q;
        let b = &self.a * &y.b + &y.a * &self.b + &bb * &p;
        QuadElem::raw(self.ring, a, b)
    }

    /// Image under √−d ↦ −√−d.
    pub fn conjugate(&self) -> QuadElem {
        let a = &self.a + &self.b * rat(self.ring.p);
        QuadElem::raw(self.ring, a, -&self.b)
    }

    pub fn norm(&self) -> Rational {
        let p = rat(self.ring.p);
        let q = rat(self.ring.q);
        &self.a * &self.a + &self.a * &self.b * p - &self.b * &self.b * q
    }

    /// Field trace x + conj(x).
    pub fn trace(&self) -> Rational {
        rat(2) * &self.a + &self.b * rat(self.ring.p)
    }

    pub fn inverse(&self) -> Option<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadElem::raw(self.ring, c.a / &n, c.b / &n))
    }

    pub fn is_unit(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        if self.ring.is_z() {
            return self.a.abs().is_one();
        }
        self.norm().is_one()
    }

    pub fn pow(&self, e: u32) -> QuadElem {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> QuadElem {
        QuadElem::raw(self.ring, &self.a * c, &self.b * c)
    }

    /// Integer coordinates (a, b); fails unless integral and small.
    pub fn int_coords(&self) -> Result<(i64, i64)> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let a = self.a.numer().to_i64().ok_or(Error::NotIntegral)?;
        let b = self.b.numer().to_i64().ok_or(Error::NotIntegral)?;
        Ok((a, b))
    }

    /// Complex embedding θ ↦ f·ω_{-d}.
    pub fn to_complex(&self) -> (f64, f64) {
        let (tr, ti) = self.ring.theta_complex();
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        (a + b * tr, b * ti)
    }
}

impl std::ops::Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, y: &QuadElem) -> QuadElem {
        assert_eq!(self.ring, y.ring, "ring mismatch");
        self.add_unchecked(y)
    }
}

impl std::ops::Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, y: &QuadElem) -> QuadElem {
        assert_eq!(self.ring, y.ring, "ring mismatch");
        self.sub_unchecked(y)
    }
}

impl std::ops::Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, y: &QuadElem) -> QuadElem {
        assert_eq!(self.ring, y.ring, "ring mismatch");
        self.mul_unchecked(y)
    }
}

impl std::ops::Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::raw(self.ring, -&self.a, -&self.b)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            format_rational(&self.b)
        };
        if self.a.is_zero() {
            write!(f, "{}θ", b)
        } else if self.b.is_positive() {
            write!(f, "{}+{}θ", format_rational(&self.a), b)
        } else {
            write!(f, "{}{}θ", format_rational(&self.a), b)
        }
    }
}

impl Serialize for QuadElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&SerRational(&self.a))?;
        seq.serialize_element(&SerRational(&self.b))?;
        seq.end()
    }
}

/// e^{2πi·k/n} in reduced form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    k: u32,
    n: u32,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u32) -> Self {
        assert!(n > 0, "root of unity of degree 0");
        let k = k.rem_euclid(n as i64) as u32;
        let g = k.gcd(&n).max(1);
        let (k, n) = if k == 0 { (0, 1) } else { (k / g, n / g) };
        RootOfUnity { k, n }
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, n: 1 }
    }

    /// e^{2πi·m/24}.
    pub fn from_24(m: i64) -> Self {
        RootOfUnity::new(m, 24)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Exponent m with value e^{2πi·m/24}, when n divides 24.
    pub fn in_24ths(&self) -> Option<u32> {
        (24 % self.n == 0).then(|| self.k * (24 / self.n))
    }

    pub fn mul(&self, o: &RootOfUnity) -> RootOfUnity {
        let n = self.n.lcm(&o.n);
        let k = self.k as i64 * (n / self.n) as i64 + o.k as i64 * (n / o.n) as i64;
        RootOfUnity::new(k, n)
    }

    pub fn pow(&self, e: i64) -> RootOfUnity {
        RootOfUnity::new(self.k as i64 * e, self.n)
    }

    pub fn conj(&self) -> RootOfUnity {
        RootOfUnity::new(-(self.k as i64), self.n)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let t = 2.0 * std::f64::consts::PI * self.k as f64 / self.n as f64;
        (t.cos(), t.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, 1) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (k, n) => write!(f, "e^(2πi·{}/{})", k, n),
        }
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RootOfUnity", 2)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.end()
    }
}

pub fn make_ring(d: u64, f: u64) -> Result<RingSpec> {
    RingSpec::new(d, f)
}

/// The full unit group, listed as successive powers of a generator.
pub fn units(ring: RingSpec) -> Vec<QuadElem> {
    let (g, n) = ring.unit_generator();
    (0..n).map(|k| g.pow(k)).collect()
}

pub fn unit_to_root(u: &QuadElem) -> Result<RootOfUnity> {
    if !u.is_unit() {
        return Err(Error::NotAUnit);
    }
    let (g, n) = u.ring.unit_generator();
    let mut acc = u.ring.one();
    for k in 0..n {
        if &acc == u {
            return Ok(RootOfUnity::new(k as i64, n));
        }
        acc = &acc * &g;
    }
    Err(Error::NotAUnit)
}

/// The element of the ring equal to a root of unity, if the ring contains it.
pub fn root_to_unit(ring: RingSpec, z: &RootOfUnity) -> Option<QuadElem> {
    units(ring).into_iter().find(|u| unit_to_root(u).ok().as_ref() == Some(z))
}
