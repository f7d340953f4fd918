//! Exact sparse bivariate polynomials over `Z` and `Q`.
//!
//! Terms are kept in a map keyed by [`Monomial`], whose `Ord` is the
//! degree-lexicographic order with `x > y`:
//!
//! ```text
//! 1 < y < x < y^2 < xy < x^2 < y^3 < xy^2 < x^2y < x^3 < y^4 < ...
//! ```
//!
//! Iteration through [`Polynomial::terms`] is always descending in that order,
//! so every reduction built on top of this module is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Power product `x^x * y^y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// `other / self`, when `self` divides `other`.
    pub fn cofactor_in(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial::new(other.x - self.x, other.y - self.y))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x.max(other.x), self.y.max(other.y))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (self.x == 0 || other.x == 0) && (self.y == 0 || other.y == 0)
    }

    pub fn swap(&self) -> Monomial {
        Monomial::new(self.y, self.x)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(2);
        match self.x {
            0 => {}
            1 => parts.push("x".to_string()),
            a => parts.push(format!("x^{a}")),
        }
        match self.y {
            0 => {}
            1 => parts.push("y".to_string()),
            b => parts.push(format!("y^{b}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Term order comparison.
pub fn cmp(m1: &Monomial, m2: &Monomial) -> Ordering {
    m1.cmp(m2)
}

/// Coefficient domain tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Domain {
    Z,
    Q,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Z => write!(f, "z"),
            Domain::Q => write!(f, "q"),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Domain::Z),
            "q" => Ok(Domain::Q),
            _ => Err(Error::parse(s, "weight domain must be `z` or `q`")),
        }
    }
}

/// Coefficient ring: the integers or the rationals, both arbitrary precision.
///
/// Each operation here is the ring-specific piece the reduction machinery
/// needs; over `Q` the Euclidean structure degenerates to exact division.
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    const DOMAIN: Domain;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// `self / divisor` if the quotient lies in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    /// `(q, r)` with `self = q * m + r`; over `Z`, `0 <= r < |m|`.
    fn div_rem_euclid(&self, m: &Self) -> (Self, Self);

    /// Nonnegative least common multiple (`1` over a field).
    fn lcm(&self, other: &Self) -> Self;

    /// `(g, s, t)` with `g = gcd(self, other) = s*self + t*other`.
    fn xgcd(&self, other: &Self) -> (Self, Self, Self);

    /// Unit `u` such that `u * self` is the normalized leading coefficient
    /// (positive over `Z`, one over `Q`).
    fn normalizing_unit(&self) -> Self;

    fn is_negative(&self) -> bool;

    fn to_rational(&self) -> BigRational;

    fn parse_coeff(s: &str) -> Result<Self>;
}

impl Coeff for BigInt {
    const DOMAIN: Domain = Domain::Z;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    fn div_rem_euclid(&self, m: &Self) -> (Self, Self) {
        let r = self.mod_floor(&m.abs());
        let q = (self - &r) / m;
        (q, r)
    }

    fn lcm(&self, other: &Self) -> Self {
        Integer::lcm(self, other)
    }

    fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let e = self.extended_gcd(other);
        (e.gcd, e.x, e.y)
    }

    fn normalizing_unit(&self) -> Self {
        if Signed::is_negative(self) {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn parse_coeff(s: &str) -> Result<Self> {
        s.parse::<BigInt>()
            .map_err(|_| Error::parse(s, "expected an integer coefficient"))
    }
}

impl Coeff for BigRational {
    const DOMAIN: Domain = Domain::Q;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| self / divisor)
    }

    fn div_rem_euclid(&self, m: &Self) -> (Self, Self) {
        (self / m, BigRational::zero())
    }

    fn lcm(&self, _other: &Self) -> Self {
        BigRational::one()
    }

    fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        if self.is_zero() {
            (BigRational::one(), BigRational::zero(), other.recip())
        } else {
            (BigRational::one(), self.recip(), BigRational::zero())
        }
    }

    fn normalizing_unit(&self) -> Self {
        self.recip()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn parse_coeff(s: &str) -> Result<Self> {
        match s.split_once('/') {
            None => s
                .parse::<BigInt>()
                .map(BigRational::from_integer)
                .map_err(|_| Error::parse(s, "expected a rational coefficient")),
            Some((num, den)) => {
                let num: BigInt = num.parse().map_err(|_| Error::parse(s, "bad numerator"))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| Error::parse(s, "bad denominator"))?;
                if den.is_zero() {
                    return Err(Error::parse(s, "zero denominator"));
                }
                Ok(BigRational::new(num, den))
            }
        }
    }
}

/// Sparse polynomial in `x, y` with coefficients in `C`.
///
/// Invariant: no stored coefficient is zero, so structural equality of the
/// term maps is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C: Coeff> {
    terms: BTreeMap<Monomial, C>,
}

pub type ZPoly = Polynomial<BigInt>;
pub type QPoly = Polynomial<BigRational>;

impl<C: Coeff> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(C::one(), m)
    }

    pub fn x() -> Self {
        Self::monomial(Monomial::new(1, 0))
    }

    pub fn y() -> Self {
        Self::monomial(Monomial::new(0, 1))
    }

    /// Builds from `(coefficient, x-exponent, y-exponent)` triples, summing repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, u32, u32)>,
    {
        let mut p = Self::zero();
        for (c, a, b) in terms {
            p.add_term(Monomial::new(a, b), C::from_i64(c));
        }
        p
    }

    pub fn domain(&self) -> Domain {
        C::DOMAIN
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// `(HT, HC)`; fails on the zero polynomial.
    pub fn leading(&self) -> Result<(Monomial, C)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (*m, c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = std::mem::replace(o.get_mut(), C::zero()) + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub(crate) fn add_scaled_shifted(&mut self, c: &C, m: Monomial, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(*om * m, oc.clone() * c);
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, C)> {
        self.terms.pop_last()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (*t * m, c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &C, m: Monomial) -> Self {
        let mut out = Self::zero();
        out.add_scaled_shifted(c, m, self);
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Normalizes the leading coefficient (positive over `Z`, monic over `Q`).
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.normalizing_unit()),
        }
    }

    /// Exchange of the variables, `p(x, y) -> p(y, x)`.
    pub fn swap_xy(&self) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.y > 0 {
                out.add_term(
                    Monomial::new(m.x, m.y - 1),
                    c.clone() * C::from_i64(i64::from(m.y)),
                );
            }
        }
        out
    }

    pub fn derivative_x(&self) -> Self {
        self.swap_xy().derivative_y().swap_xy()
    }

    pub fn evaluate(&self, x0: &C, y0: &C) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..m.x {
                v = v * x0;
            }
            for _ in 0..m.y {
                v = v * y0;
            }
            acc = acc + v;
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::<D>::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Image in `Q[x, y]`.
    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(|c| c.to_rational())
    }

    /// Content-free integer image: clears denominators and divides by the
    /// content, keeping the sign of the leading coefficient.
    pub fn primitive_integer(&self) -> ZPoly {
        let rat: Vec<(Monomial, BigRational)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.to_rational()))
            .collect();
        let den = rat
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| Integer::lcm(&acc, c.denom()));
        let ints: Vec<(Monomial, BigInt)> = rat
            .into_iter()
            .map(|(m, c)| (m, (c * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let mut out = ZPoly::zero();
        for (m, c) in ints {
            out.add_term(m, if content.is_zero() { c } else { c / &content });
        }
        out
    }
}

impl ZPoly {
    /// Integer polynomial from a rational one whose coefficients are integral.
    pub fn from_rational_integral(p: &QPoly) -> Option<ZPoly> {
        let mut out = ZPoly::zero();
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return None;
            }
            out.add_term(*m, c.to_integer());
        }
        Some(out)
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, c) in &rhs.terms {
            out.add_scaled_shifted(c, *m, self);
        }
        out
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<C: Coeff> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$f(&rhs)
            }
        }
        impl<C: Coeff> $tr<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$f(rhs)
            }
        }
        impl<C: Coeff> $tr<Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Polynomial<C>) -> Polynomial<C> {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> FromStr for Polynomial<C> {
    type Err = Error;

    /// Parses `c*x^a*y^b` terms joined by `+` / `-`, e.g. `x^2*y + x*y - x - 1`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse(s, "empty input"));
        }
        let mut out = Polynomial::zero();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(Error::parse(s, "expected `+` or `-` between terms")),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (body, tail) = rest.split_at(end);
            if body.is_empty() {
                return Err(Error::parse(s, "empty term"));
            }
            let (c, m) = parse_term::<C>(body).map_err(|e| match e {
                Error::Parse { reason, .. } => Error::parse(s, reason),
                other => other,
            })?;
            out.add_term(m, if negative { -c } else { c });
            rest = tail;
        }
        Ok(out)
    }
}

fn parse_term<C: Coeff>(body: &str) -> Result<(C, Monomial)> {
    let mut coeff = C::one();
    let mut mono = Monomial::ONE;
    let mut seen_coeff = false;
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::parse(body, "dangling `*`"));
        }
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => (
                v,
                e.parse::<u32>()
                    .map_err(|_| Error::parse(body, format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        match var {
            "x" => mono.x += exp,
            "y" => mono.y += exp,
            _ if !seen_coeff && factor == var => {
                coeff = C::parse_coeff(var)?;
                seen_coeff = true;
            }
            _ => return Err(Error::parse(body, format!("unexpected factor {factor:?}"))),
        }
    }
    Ok((coeff, mono))
}

/// Serialized as the canonical text form.
impl<C: Coeff> Serialize for Polynomial<C> {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `1 + v + ... + v^(len-1)` in the variable `x` (`in_x`) or `y`.
pub fn geometric<C: Coeff>(len: u32, in_x: bool) -> Polynomial<C> {
    let mut p = Polynomial::zero();
    for i in 0..len {
        let m = if in_x {
            Monomial::new(i, 0)
        } else {
            Monomial::new(0, i)
        };
        p.add_term(m, C::one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> ZPoly {
        s.parse().unwrap()
    }

    #[test]
    fn order_matches_chain() {
        let chain = [
            (0, 0),
            (0, 1),
            (1, 0),
            (0, 2),
            (1, 1),
            (2, 0),
            (0, 3),
            (1, 2),
            (2, 1),
            (3, 0),
            (0, 4),
        ];
        for w in chain.windows(2) {
            let a = Monomial::new(w[0].0, w[0].1);
            let b = Monomial::new(w[1].0, w[1].1);
            assert_eq!(cmp(&a, &b), Ordering::Less, "{a} < {b}");
        }
        assert_eq!(
            cmp(&Monomial::new(0, 1), &Monomial::new(1, 0)),
            Ordering::Less
        );
        assert_eq!(
            cmp(&Monomial::new(2, 0), &Monomial::new(0, 3)),
            Ordering::Less
        );
        assert_eq!(
            cmp(&Monomial::new(1, 1), &Monomial::new(1, 1)),
            Ordering::Equal
        );
    }

    #[test]
    fn ring_examples() {
        let lhs = &z("x*y + x + y + 1") * &z("y") - z("x*y^2 + x*y - y - 1");
        assert_eq!(lhs, z("y^2 + 2*y + 1"));
        let p = z("3*x^2 - y + 7");
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(&z("x - y") * &z("x + y"), z("x^2 - y^2"));
    }

    #[test]
    fn leading_examples() {
        let c3 = z("x^2*y + x*y - x - 1");
        assert_eq!(c3.leading().unwrap().0, Monomial::new(2, 1));
        let c5 = z("2*x*y - 2");
        assert_eq!(
            c5.leading().unwrap(),
            (Monomial::new(1, 1), BigInt::from(2))
        );
        assert_eq!(z("5").leading().unwrap(), (Monomial::ONE, BigInt::from(5)));
        assert_eq!(ZPoly::zero().leading(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn shifting() {
        assert_eq!(
            z("x + 1").mul_monomial(Monomial::new(2, 1)),
            z("x^3*y + x^2*y")
        );
        assert_eq!(
            z("x*y + x + y + 1").mul_monomial(Monomial::new(0, 3)),
            z("x*y^4 + x*y^3 + y^4 + y^3")
        );
        assert!(ZPoly::zero().mul_monomial(Monomial::new(4, 4)).is_zero());
    }

    #[test]
    fn derivative_and_evaluation() {
        let d = z("1 + 2*y + 3*y^2").derivative_y();
        assert_eq!(
            d.evaluate(&BigInt::from(0), &BigInt::from(-1)),
            BigInt::from(-4)
        );
        let q8: ZPoly = geometric(8, false);
        assert_eq!(
            q8.derivative_y()
                .evaluate(&BigInt::zero(), &BigInt::from(-1)),
            BigInt::from(4)
        );
        assert_eq!(
            z("x^2 - y^2").evaluate(&BigInt::from(3), &BigInt::from(3)),
            BigInt::zero()
        );
    }

    #[test]
    fn printing() {
        assert_eq!(z("-1 - x + x*y + x^2*y").to_string(), "x^2*y + x*y - x - 1");
        assert_eq!(z("0").to_string(), "0");
        assert_eq!(z("-3*y^2 + 2").to_string(), "-3*y^2 + 2");
        let q: QPoly = "1/2*x - 3/4".parse().unwrap();
        assert_eq!(q.to_string(), "1/2*x - 3/4");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<ZPoly>().is_err());
        assert!("x +".parse::<ZPoly>().is_err());
        assert!("2*z".parse::<ZPoly>().is_err());
        assert!("1/2*x".parse::<ZPoly>().is_err());
        assert!("x^a".parse::<ZPoly>().is_err());
    }

    #[test]
    fn primitive_part() {
        let q: QPoly = "1/2*x + 3/4".parse().unwrap();
        assert_eq!(q.primitive_integer(), z("2*x + 3"));
    }
}
