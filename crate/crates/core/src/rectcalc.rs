//! Univariate rectangle arithmetic for `T_n`, `n >= 8`.
//!
//! Modulo the basis, a `p x q` rectangle reduces to `P_{p,q}(y)`, the product
//! of the two geometric sums in `y`. It must be divisible by
//! `Q(y) = 1 + y + ... + y^(n-1)`, and the signed balance of the quotient
//! counts the extra `B = xy - 1` tiles still needed.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{normal_form, Mode};
use crate::polyring::{geometric, Monomial, ZPoly};

/// Parity class of the sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParityCase {
    /// `p` even, `q` odd.
    A,
    /// `p` odd, `q` even.
    B,
    /// Both even.
    C,
    /// Both odd.
    None,
}

impl ParityCase {
    pub fn of(p: u32, q: u32) -> Self {
        match (p.is_multiple_of(2), q.is_multiple_of(2)) {
            (true, false) => ParityCase::A,
            (false, true) => ParityCase::B,
            (true, true) => ParityCase::C,
            (false, false) => ParityCase::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectReport {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub remainder: ZPoly,
    pub divisible: bool,
    /// `S_1 - S_2`, the alternating coefficient sum of the quotient.
    pub s_minus: Option<i64>,
    /// `P'_{p,q}(-1)`.
    pub deriv_value: i64,
    pub b_count: Option<i64>,
    pub satisfiable: Option<bool>,
    pub case: ParityCase,
}

fn check_engine_n(n: u32) -> Result<()> {
    if !n.is_multiple_of(2) || n < 8 {
        return Err(Error::UnsupportedTileSize(n, 8));
    }
    Ok(())
}

fn check_sides(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::Precondition(
            "rectangle sides must be positive".into(),
        ));
    }
    Ok(())
}

fn small(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Precondition(format!("value {v} exceeds 64 bits")))
}

/// `P_{p,q}(y) = 1 + 2y + ... + p y^(p-1) + ... + p y^(q-1) + (p-1) y^q + ... + y^(p+q-2)`
/// for `p <= q`; symmetric in its arguments.
pub fn build_p(p: u32, q: u32) -> ZPoly {
    let (lo, hi) = (p.min(q), p.max(q));
    let mut out = ZPoly::zero();
    if lo == 0 {
        return out;
    }
    for e in 0..(lo + hi - 1) {
        let c = (e + 1).min(lo).min(lo + hi - 1 - e);
        out.add_term(Monomial::new(0, e), BigInt::from(c));
    }
    out
}

/// `Q(y) = 1 + y + ... + y^(n-1)`.
pub fn build_q(n: u32) -> ZPoly {
    geometric(n, false)
}

/// Quotient and remainder of `f` by the monic `Q(y)`, both univariate in `y`.
pub fn divide_by_q(f: &ZPoly, n: u32) -> (ZPoly, ZPoly) {
    let q = build_q(n);
    let trace = normal_form(f, std::slice::from_ref(&q), Mode::D);
    let quotient = trace
        .quotients
        .into_iter()
        .next()
        .unwrap_or_else(ZPoly::zero);
    (quotient, trace.remainder)
}

fn minus_one() -> BigInt {
    -BigInt::one()
}

/// `S(-1)` read off the coefficients: even-power sum minus odd-power sum.
pub fn alternating_sum(s: &ZPoly) -> BigInt {
    let mut acc = BigInt::zero();
    for (m, c) in s.terms() {
        if m.y % 2 == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

/// `P'_{p,q}(-1)`.
pub fn derivative_at_minus_one(p: u32, q: u32) -> BigInt {
    build_p(p, q)
        .derivative_y()
        .evaluate(&BigInt::zero(), &minus_one())
}

/// Expected `P'_{p,q}(-1)` by parity: `p/2`, `q/2`, `0`; both odd gives
/// `-(p + q - 2)/2`.
pub fn case_derivative(p: u32, q: u32) -> i64 {
    let (p, q) = (i64::from(p), i64::from(q));
    match ParityCase::of(p as u32, q as u32) {
        ParityCase::A => p / 2,
        ParityCase::B => q / 2,
        ParityCase::C => 0,
        ParityCase::None => -(p + q - 2) / 2,
    }
}

/// `(S_1 - S_2, P'(-1))`; the first entry is computed from the quotient and
/// checked against `2 P'(-1) / n`.
pub fn sign_sum_and_derivative(p: u32, q: u32, n: u32) -> Result<(i64, i64)> {
    check_engine_n(n)?;
    check_sides(p, q)?;
    let deriv = derivative_at_minus_one(p, q);
    let (quotient, rem) = divide_by_q(&build_p(p, q), n);
    if !rem.is_zero() {
        return Err(Error::Precondition(format!(
            "P_{{{p},{q}}} is not divisible by Q for n = {n}"
        )));
    }
    let direct = alternating_sum(&quotient);
    let via = BigInt::from(2) * &deriv;
    if &direct * BigInt::from(n) != via {
        return Err(Error::Precondition(format!(
            "sign sum {direct} disagrees with 2 P'(-1)/n = {via}/{n}"
        )));
    }
    Ok((small(&direct)?, small(&deriv)?))
}

/// Extra `B` tiles needed: `p(1-k)/n` (case A), `q/n` (case B), `0` (case C);
/// satisfiable iff the count is divisible by `k - 2`.
pub fn b_tile_count(p: u32, q: u32, n: u32) -> Result<(i64, bool)> {
    check_engine_n(n)?;
    check_sides(p, q)?;
    if !p.is_multiple_of(n) && !q.is_multiple_of(n) {
        return Err(Error::Precondition(format!(
            "neither {p} nor {q} is divisible by {n}"
        )));
    }
    let (pi, qi, ni) = (i64::from(p), i64::from(q), i64::from(n));
    let k = ni / 2;
    let count = match ParityCase::of(p, q) {
        ParityCase::A => pi * (1 - k) / ni,
        ParityCase::B => qi / ni,
        ParityCase::C => 0,
        ParityCase::None => {
            return Err(Error::Precondition(
                "both sides odd: no divisible configuration".into(),
            ))
        }
    };
    Ok((count, count % (k - 2) == 0))
}

/// Full report for one rectangle.
pub fn divisibility(p: u32, q: u32, n: u32) -> Result<RectReport> {
    check_engine_n(n)?;
    check_sides(p, q)?;
    let (_, remainder) = divide_by_q(&build_p(p, q), n);
    let divisible = remainder.is_zero();
    let deriv_value = small(&derivative_at_minus_one(p, q))?;
    let case = ParityCase::of(p, q);
    let (s_minus, b_count, satisfiable) = if divisible {
        let (s, _) = sign_sum_and_derivative(p, q, n)?;
        match b_tile_count(p, q, n) {
            Ok((c, ok)) => (Some(s), Some(c), Some(ok)),
            Err(Error::Precondition(_)) => (Some(s), None, None),
            Err(e) => return Err(e),
        }
    } else {
        (None, None, None)
    };
    Ok(RectReport {
        p,
        q,
        n,
        remainder,
        divisible,
        s_minus,
        deriv_value,
        b_count,
        satisfiable,
        case,
    })
}

impl RectReport {
    /// The engine's verdict: divisible, and the `B` count fits.
    pub fn predicts_tileable(&self) -> bool {
        self.divisible && self.satisfiable == Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> ZPoly {
        s.parse().unwrap()
    }

    #[test]
    fn p_polynomial() {
        assert_eq!(build_p(2, 3), z("1 + 2*y + 2*y^2 + y^3"));
        assert_eq!(build_p(1, 5), z("1 + y + y^2 + y^3 + y^4"));
        assert_eq!(
            build_p(3, 4).evaluate(&BigInt::one(), &BigInt::one()),
            BigInt::from(12)
        );
        assert_eq!(build_p(4, 2), build_p(2, 4));
        for p in 1..6 {
            for q in p..9 {
                let flat: ZPoly = geometric(q, false);
                let mut sum = ZPoly::zero();
                for i in 0..p {
                    sum = sum + flat.mul_monomial(Monomial::new(0, i));
                }
                assert_eq!(sum, build_p(p, q));
            }
        }
    }

    #[test]
    fn q_polynomial() {
        let q = build_q(8);
        assert_eq!(q.len(), 8);
        assert_eq!(q.evaluate(&BigInt::zero(), &BigInt::one()), BigInt::from(8));
        assert!(q.evaluate(&BigInt::zero(), &minus_one()).is_zero());
        assert_eq!(
            q.derivative_y().evaluate(&BigInt::zero(), &minus_one()),
            BigInt::from(4)
        );
    }

    #[test]
    fn divisibility_examples() {
        assert!(divisibility(8, 9, 8).unwrap().divisible);
        assert!(divisibility(3, 16, 8).unwrap().divisible);
        let r = divisibility(3, 10, 8).unwrap();
        assert!(!r.divisible);
        assert!(!r.remainder.is_zero());
        assert!(divisibility(3, 10, 6).is_err());
    }

    #[test]
    fn derivative_cases() {
        assert_eq!(sign_sum_and_derivative(8, 9, 8).unwrap().1, 4);
        assert_eq!(derivative_at_minus_one(4, 9), BigInt::from(2));
        assert_eq!(sign_sum_and_derivative(3, 8, 8).unwrap().1, 4);
        assert_eq!(sign_sum_and_derivative(8, 10, 8).unwrap(), (0, 0));
        assert!(sign_sum_and_derivative(3, 10, 8).is_err());
    }

    #[test]
    fn b_counts() {
        assert_eq!(b_tile_count(8, 9, 8).unwrap(), (-3, false));
        assert_eq!(b_tile_count(3, 16, 8).unwrap(), (2, true));
        assert_eq!(b_tile_count(8, 10, 8).unwrap(), (0, true));
        assert!(b_tile_count(3, 5, 8).is_err());
    }
}
