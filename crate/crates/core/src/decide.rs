//! Signed-tiling decisions by ideal membership, and the closed-form
//! predicates they are checked against.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_with, ideal_contains, normal_form, remainder, CompletionConfig, Mode, QTrace, ZTrace,
};
use crate::polyring::{Coeff, Domain, Monomial, Polynomial, QPoly, ZPoly};
use crate::tilesets::{cells_to_poly, check_n, inflated_l_region, rect_poly, CellSet, TileSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.is_yes() { "yes" } else { "no" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Groebner,
    ClosedForm,
    Oracle,
}

/// Reduction of `test_monomial * f` to zero, in the weight domain used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionTrace {
    Z(ZTrace),
    Q(QTrace),
}

impl DecisionTrace {
    pub fn steps(&self) -> usize {
        match self {
            DecisionTrace::Z(t) => t.steps.len(),
            DecisionTrace::Q(t) => t.steps.len(),
        }
    }

    pub fn remainder_is_zero(&self) -> bool {
        match self {
            DecisionTrace::Z(t) => t.remainder.is_zero(),
            DecisionTrace::Q(t) => t.remainder.is_zero(),
        }
    }
}

/// A verdict. A `No` from the Groebner method means no test monomial in
/// `[0, search_box]^2` worked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub answer: Answer,
    pub weight_domain: Domain,
    pub test_monomial: Option<Monomial>,
    pub search_box: Option<u32>,
    pub method: Method,
    #[serde(skip)]
    pub trace: Option<DecisionTrace>,
}

/// Predicate for rectangles `p x q` with integer weights.
///
/// * `T_4`: both sides even, one divisible by 4.
/// * `T_4^+`: both sides even.
/// * `T_n`, `n >= 6`: both even and one divisible by `n`, or one odd and the
///   other divisible by `n(n/2 - 2)`.
/// * `T_n^+`, `n >= 6`: both even, or one odd and the other divisible by
///   `n(n/2 - 2)`.
pub fn closed_form_rect(n: u32, plus: bool, p: u32, q: u32) -> Result<bool> {
    check_n(n, 4)?;
    let even = p.is_multiple_of(2) && q.is_multiple_of(2);
    if n == 4 {
        return Ok(if plus {
            even
        } else {
            even && (p.is_multiple_of(4) || q.is_multiple_of(4))
        });
    }
    let big = n * (n / 2 - 2);
    let odd_case = (p % 2 == 1 && q.is_multiple_of(big)) || (q % 2 == 1 && p.is_multiple_of(big));
    if plus {
        Ok(even || odd_case)
    } else {
        Ok((even && (p.is_multiple_of(n) || q.is_multiple_of(n))) || odd_case)
    }
}

/// Predicate for the L n-omino inflated by `factor`: `factor` even, or odd and
/// divisible by `n/2 - 2`.
///
/// Ideal membership and the oracle both find signed tilings for odd factors
/// this predicate rejects (factor 1 is itself a tile), so `Decider::inflated`
/// and this function disagree there.
pub fn closed_form_inflated(n: u32, factor: u32) -> Result<bool> {
    check_n(n, 6)?;
    if factor == 0 {
        return Err(Error::Precondition(
            "inflation factor must be positive".into(),
        ));
    }
    Ok(factor.is_multiple_of(2) || factor.is_multiple_of(n / 2 - 2))
}

/// Predicate for rectangles with rational (equivalently complex) weights.
///
/// * `T_n`, `n >= 6`: a side divisible by `n`.
/// * `T_n^+`, `n >= 6`: an even side.
/// * `T_4^+`: both sides even.
pub fn barnes_closed_form(n: u32, plus: bool, p: u32, q: u32) -> Result<bool> {
    check_n(n, 4)?;
    match (n, plus) {
        (4, false) => Err(Error::Unsupported("rational weights for T4".into())),
        (4, true) => Ok(p.is_multiple_of(2) && q.is_multiple_of(2)),
        (_, true) => Ok(p.is_multiple_of(2) || q.is_multiple_of(2)),
        (_, false) => Ok(p.is_multiple_of(n) || q.is_multiple_of(n)),
    }
}

/// Expected verdict for a rectangle in a given weight domain.
pub fn expected_rect(n: u32, plus: bool, domain: Domain, p: u32, q: u32) -> Result<bool> {
    match domain {
        Domain::Z => closed_form_rect(n, plus, p, q),
        Domain::Q => barnes_closed_form(n, plus, p, q),
    }
}

/// First `(a, b)` in lexicographic order with `x^a y^b r` reducing to zero,
/// where `r` is already the normal form of the region polynomial.
fn first_test_monomial<C: Coeff>(
    r: &Polynomial<C>,
    basis: &[Polynomial<C>],
    bound: u32,
) -> Option<Monomial> {
    if r.is_zero() {
        return Some(Monomial::ONE);
    }
    (0..=bound)
        .flat_map(|a| (0..=bound).map(move |b| Monomial::new(a, b)))
        .find(|m| remainder(&r.mul_monomial(*m), basis, Mode::E).is_zero())
}

type BasisCache<C> = Mutex<HashMap<(u32, bool), Arc<Vec<Polynomial<C>>>>>;

/// Caches one completed basis per `(n, plus)` and weight domain.
#[derive(Debug, Default)]
pub struct Decider {
    config: CompletionConfig,
    z_bases: BasisCache<BigInt>,
    q_bases: BasisCache<BigRational>,
}

impl Decider {
    pub fn new(config: CompletionConfig) -> Self {
        Decider {
            config,
            ..Default::default()
        }
    }

    pub fn config(&self) -> CompletionConfig {
        self.config
    }

    pub fn z_basis(&self, tiles: &TileSet) -> Result<Arc<Vec<ZPoly>>> {
        let key = (tiles.n, tiles.plus);
        if let Some(b) = self.z_bases.lock().unwrap().get(&key) {
            return Ok(Arc::clone(b));
        }
        let basis = Arc::new(buchberger_with(&tiles.polys(), self.config)?);
        Ok(Arc::clone(
            self.z_bases.lock().unwrap().entry(key).or_insert(basis),
        ))
    }

    pub fn q_basis(&self, tiles: &TileSet) -> Result<Arc<Vec<QPoly>>> {
        let key = (tiles.n, tiles.plus);
        if let Some(b) = self.q_bases.lock().unwrap().get(&key) {
            return Ok(Arc::clone(b));
        }
        let gens: Vec<QPoly> = tiles.polys().iter().map(ZPoly::to_rational).collect();
        let basis = Arc::new(buchberger_with(&gens, self.config)?);
        Ok(Arc::clone(
            self.q_bases.lock().unwrap().entry(key).or_insert(basis),
        ))
    }

    /// Completes the basis for `tiles` in `domain` ahead of a parallel run.
    pub fn warm(&self, tiles: &TileSet, domain: Domain) -> Result<()> {
        match domain {
            Domain::Z => self.z_basis(tiles).map(drop),
            Domain::Q => self.q_basis(tiles).map(drop),
        }
    }

    /// Signed tileability of `region` by translates of `tiles`, searching test
    /// monomials `x^a y^b`, `0 <= a, b <= test_bound` (default `n`).
    pub fn signed_tileable(
        &self,
        region: &CellSet,
        tiles: &TileSet,
        domain: Domain,
        test_bound: Option<u32>,
    ) -> Result<Decision> {
        if region.is_empty() {
            return Err(Error::Precondition("region is empty".into()));
        }
        self.poly_decision(&cells_to_poly(region), tiles, domain, test_bound, true)
    }

    /// Same as [`Decider::signed_tileable`] for a region given by its polynomial.
    pub fn poly_decision(
        &self,
        f: &ZPoly,
        tiles: &TileSet,
        domain: Domain,
        test_bound: Option<u32>,
        with_trace: bool,
    ) -> Result<Decision> {
        let bound = test_bound.unwrap_or(tiles.n);
        let (hit, trace) = match domain {
            Domain::Z => {
                let basis = self.z_basis(tiles)?;
                let r = remainder(f, &basis, Mode::E);
                let hit = first_test_monomial(&r, &basis, bound);
                let trace = hit
                    .filter(|_| with_trace)
                    .map(|m| DecisionTrace::Z(normal_form(&f.mul_monomial(m), &basis, Mode::E)));
                (hit, trace)
            }
            Domain::Q => {
                let basis = self.q_basis(tiles)?;
                let fq = f.to_rational();
                let r = remainder(&fq, &basis, Mode::E);
                let hit = first_test_monomial(&r, &basis, bound);
                let trace = hit
                    .filter(|_| with_trace)
                    .map(|m| DecisionTrace::Q(normal_form(&fq.mul_monomial(m), &basis, Mode::E)));
                (hit, trace)
            }
        };
        Ok(Decision {
            answer: Answer::from_bool(hit.is_some()),
            weight_domain: domain,
            test_monomial: hit,
            search_box: Some(bound),
            method: Method::Groebner,
            trace,
        })
    }

    pub fn rect(&self, n: u32, plus: bool, domain: Domain, p: u32, q: u32) -> Result<Decision> {
        let tiles = TileSet::ribbon_l(n, plus)?;
        self.poly_decision(&rect_poly(p, q), &tiles, domain, None, false)
    }

    pub fn inflated(&self, n: u32, factor: u32) -> Result<Decision> {
        let tiles = TileSet::ribbon_l(n, false)?;
        self.signed_tileable(&inflated_l_region(n, factor)?, &tiles, Domain::Z, None)
    }

    /// Whether `(n/2 - 2) f_R` lies in the integer ideal of `T_n` for a
    /// `p x q` rectangle with a side divisible by `n`.
    pub fn scaled_membership(&self, n: u32, p: u32, q: u32) -> Result<bool> {
        check_n(n, 6)?;
        if p == 0 || q == 0 || (!p.is_multiple_of(n) && !q.is_multiple_of(n)) {
            return Err(Error::Precondition(format!(
                "no side of {p}x{q} is divisible by {n}"
            )));
        }
        let tiles = TileSet::ribbon_l(n, false)?;
        let basis = self.z_basis(&tiles)?;
        let scaled = rect_poly(p, q).scale(&BigInt::from(n / 2 - 2));
        Ok(ideal_contains(&scaled, &basis))
    }

    /// Compares Groebner decisions with the closed form on `1 <= p <= p_max`,
    /// `p <= q <= q_max`. Resource failures are recorded per row.
    pub fn scan(
        &self,
        n: u32,
        plus: bool,
        domain: Domain,
        p_max: u32,
        q_max: u32,
    ) -> Result<ScanTable> {
        let tiles = TileSet::ribbon_l(n, plus)?;
        expected_rect(n, plus, domain, 1, 1)?;
        let cells: Vec<(u32, u32)> = (1..=p_max)
            .flat_map(|p| (p..=q_max).map(move |q| (p, q)))
            .collect();
        let warm = self.warm(&tiles, domain);
        let rows: Vec<ScanRow> = cells
            .par_iter()
            .map(|&(p, q)| {
                let closed = expected_rect(n, plus, domain, p, q).expect("checked above");
                let outcome = match &warm {
                    Err(e) => Err(e.clone()),
                    Ok(()) => self.poly_decision(&rect_poly(p, q), &tiles, domain, None, false),
                };
                match outcome {
                    Ok(d) => ScanRow {
                        p,
                        q,
                        groebner: Some(d.answer),
                        closed_form: Answer::from_bool(closed),
                        agree: Some(d.answer.is_yes() == closed),
                        test_monomial: d.test_monomial,
                        error: None,
                    },
                    Err(e) => ScanRow {
                        p,
                        q,
                        groebner: None,
                        closed_form: Answer::from_bool(closed),
                        agree: None,
                        test_monomial: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect();
        Ok(ScanTable {
            n,
            plus,
            domain,
            rows,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub p: u32,
    pub q: u32,
    pub groebner: Option<Answer>,
    pub closed_form: Answer,
    pub agree: Option<bool>,
    pub test_monomial: Option<Monomial>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanTable {
    pub n: u32,
    pub plus: bool,
    pub domain: Domain,
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().filter(|r| r.agree == Some(false)).count()
    }

    pub fn errors(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilesets::rect_region;

    #[test]
    fn closed_forms() {
        assert!(closed_form_rect(8, false, 16, 3).unwrap());
        assert!(!closed_form_rect(8, false, 8, 3).unwrap());
        assert!(closed_form_rect(4, true, 2, 2).unwrap());
        assert!(!closed_form_rect(6, true, 3, 4).unwrap());
        assert!(closed_form_rect(4, false, 4, 2).unwrap());
        assert!(!closed_form_rect(4, false, 2, 2).unwrap());
        assert!(closed_form_inflated(6, 5).unwrap());
        assert!(!closed_form_inflated(8, 3).unwrap());
        assert!(closed_form_inflated(8, 2).unwrap());
        assert!(closed_form_inflated(4, 2).is_err());
        assert!(barnes_closed_form(8, false, 8, 3).unwrap());
        assert!(barnes_closed_form(6, true, 2, 7).unwrap());
        assert!(!barnes_closed_form(4, true, 2, 3).unwrap());
        assert!(matches!(
            barnes_closed_form(4, false, 4, 4),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn groebner_decisions() {
        let d = Decider::default();
        let t6 = TileSet::ribbon_l(6, false).unwrap();
        let t8 = TileSet::ribbon_l(8, false).unwrap();
        let yes = d
            .signed_tileable(&rect_region(6, 2).unwrap(), &t6, Domain::Z, None)
            .unwrap();
        assert_eq!(yes.answer, Answer::Yes);
        assert!(yes.trace.as_ref().unwrap().remainder_is_zero());
        let no = d
            .signed_tileable(&rect_region(8, 3).unwrap(), &t8, Domain::Z, None)
            .unwrap();
        assert_eq!(no.answer, Answer::No);
        assert_eq!(no.search_box, Some(8));
        assert!(no.trace.is_none());
        let single = d
            .signed_tileable(&rect_region(1, 1).unwrap(), &t6, Domain::Z, None)
            .unwrap();
        assert_eq!(single.answer, Answer::No);
        assert!(d
            .signed_tileable(&CellSet::default(), &t6, Domain::Z, None)
            .is_err());
    }

    #[test]
    fn scaled() {
        let d = Decider::default();
        assert!(d.scaled_membership(8, 8, 3).unwrap());
        assert!(d.scaled_membership(8, 8, 2).unwrap());
        assert!(d.scaled_membership(10, 10, 3).unwrap());
        assert!(d.scaled_membership(8, 3, 5).is_err());
    }

    #[test]
    fn small_scan_agrees() {
        let d = Decider::default();
        let t = d.scan(4, false, Domain::Z, 8, 8).unwrap();
        assert_eq!(t.rows.len(), 36);
        assert_eq!(t.disagreements(), 0);
        assert!(d.scan(4, false, Domain::Q, 4, 4).is_err());
    }

    #[test]
    fn resource_cap_is_not_a_verdict() {
        let d = Decider::new(CompletionConfig { step_cap: 1 });
        let t = d.scan(8, false, Domain::Z, 2, 2).unwrap();
        assert_eq!(t.errors(), t.rows.len());
        assert_eq!(t.disagreements(), 0);
        let err = d.rect(8, false, Domain::Z, 2, 2).unwrap_err();
        assert!(err.is_resource());
    }
}
