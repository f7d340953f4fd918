//! Reduction, critical pairs and completion over `Z` and `Q`.
//!
//! Two reduction relations are provided. A `D` step cancels a term `a*t`
//! against `p` when `HT(p) | t` and `HC(p) | a`. An `E` step only asks for
//! `HT(p) | t` and replaces `a` by its remainder modulo `HC(p)` in
//! `[0, |HC(p)|)`. Over a field both coincide with ordinary division.
//!
//! Bases over `Z` are strong Groebner bases: every ideal element has a
//! leading monomial divisible (term and coefficient) by some basis leading
//! monomial. The completion adds reduced S-polynomials and, when neither head
//! coefficient divides the other, G-polynomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Coeff, Domain, Monomial, Polynomial};

/// Reduction relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    D,
    E,
}

/// One reduction step: `coeff * shift * basis[basis_index]` was subtracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep<C: Coeff> {
    pub basis_index: usize,
    pub coeff: C,
    pub shift: Monomial,
}

/// Full record of a normal-form computation.
///
/// `input = sum(quotients[i] * basis[i]) + remainder` holds exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace<C: Coeff> {
    pub steps: Vec<ReductionStep<C>>,
    pub remainder: Polynomial<C>,
    pub quotients: Vec<Polynomial<C>>,
}

impl<C: Coeff> ReductionTrace<C> {
    fn new(len: usize) -> Self {
        ReductionTrace {
            steps: Vec::new(),
            remainder: Polynomial::zero(),
            quotients: vec![Polynomial::zero(); len],
        }
    }

    fn record(&mut self, basis_index: usize, coeff: C, shift: Monomial) {
        self.quotients[basis_index].add_term(shift, coeff.clone());
        self.steps.push(ReductionStep {
            basis_index,
            coeff,
            shift,
        });
    }

    /// Re-expands the quotients and checks the division identity.
    pub fn identity_holds(&self, input: &Polynomial<C>, basis: &[Polynomial<C>]) -> bool {
        if basis.len() != self.quotients.len() {
            return false;
        }
        let mut acc = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(basis) {
            acc = acc + q * g;
        }
        &acc == input
    }
}

/// Quotient coefficient and shift for reducing the term `a*t` by a polynomial
/// with leading monomial `head`, if a step of the given mode exists.
fn step_for<C: Coeff>(
    a: &C,
    t: &Monomial,
    head: &(Monomial, C),
    mode: Mode,
) -> Option<(C, Monomial)> {
    let shift = head.0.cofactor_in(t)?;
    let q = match mode {
        Mode::D => a.exact_div(&head.1)?,
        Mode::E => {
            let (q, _) = a.div_rem_euclid(&head.1);
            if q.is_zero() {
                return None;
            }
            q
        }
    };
    Some((q, shift))
}

fn single_step<C: Coeff>(
    f: &Polynomial<C>,
    p: &Polynomial<C>,
    mode: Mode,
) -> Option<Polynomial<C>> {
    let head = p.leading().ok()?;
    for (t, a) in f.terms() {
        if let Some((q, shift)) = step_for(a, t, &head, mode) {
            let mut g = f.clone();
            g.add_scaled_shifted(&-q, shift, p);
            return Some(g);
        }
    }
    None
}

/// One D-reduction step of `f` modulo `p` at the largest reducible term.
pub fn d_reduce_step<C: Coeff>(f: &Polynomial<C>, p: &Polynomial<C>) -> Option<Polynomial<C>> {
    single_step(f, p, Mode::D)
}

/// One E-reduction step of `f` modulo `p` at the largest term with a nonzero quotient.
pub fn e_reduce_step<C: Coeff>(f: &Polynomial<C>, p: &Polynomial<C>) -> Option<Polynomial<C>> {
    single_step(f, p, Mode::E)
}

fn heads<C: Coeff>(basis: &[Polynomial<C>]) -> Vec<(Monomial, C)> {
    basis
        .iter()
        .map(|g| g.leading().expect("basis elements must be nonzero"))
        .collect()
}

/// Largest-term-first reduction. Returns the remainder, feeding each step to `on_step`.
fn reduce_with<C: Coeff>(
    f: &Polynomial<C>,
    basis: &[Polynomial<C>],
    heads: &[(Monomial, C)],
    mode: Mode,
    mut on_step: impl FnMut(usize, &C, Monomial),
) -> Polynomial<C> {
    let mut work = f.clone();
    let mut rem = Polynomial::zero();
    while let Some((t, mut a)) = work.pop_leading() {
        'term: loop {
            for (i, head) in heads.iter().enumerate() {
                if let Some((q, shift)) = step_for(&a, &t, head, mode) {
                    a = a - q.clone() * &head.1;
                    for (m, c) in basis[i].terms().skip(1) {
                        work.add_term(*m * shift, -(q.clone() * c));
                    }
                    on_step(i, &q, shift);
                    if a.is_zero() {
                        break 'term;
                    }
                    continue 'term;
                }
            }
            break;
        }
        if !a.is_zero() {
            rem.add_term(t, a);
        }
    }
    rem
}

/// Normal form of `f` modulo `basis` with the normal (largest term first)
/// strategy; ties between basis elements go to the lowest index.
pub fn normal_form<C: Coeff>(
    f: &Polynomial<C>,
    basis: &[Polynomial<C>],
    mode: Mode,
) -> ReductionTrace<C> {
    let heads = heads(basis);
    let mut trace = ReductionTrace::new(basis.len());
    let rem = reduce_with(f, basis, &heads, mode, |i, q, s| {
        trace.record(i, q.clone(), s)
    });
    trace.remainder = rem;
    trace
}

/// Remainder only; same result as [`normal_form`] without the bookkeeping.
pub fn remainder<C: Coeff>(
    f: &Polynomial<C>,
    basis: &[Polynomial<C>],
    mode: Mode,
) -> Polynomial<C> {
    let heads = heads(basis);
    reduce_with(f, basis, &heads, mode, |_, _, _| {})
}

/// A reducible position offered to a custom strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub term: Monomial,
    pub basis_index: usize,
}

/// Normal form under an arbitrary strategy: at every step `choose` picks one
/// of the currently available reductions.
pub fn normal_form_by<C: Coeff>(
    f: &Polynomial<C>,
    basis: &[Polynomial<C>],
    mode: Mode,
    mut choose: impl FnMut(&[Candidate]) -> usize,
) -> ReductionTrace<C> {
    let heads = heads(basis);
    let mut trace = ReductionTrace::new(basis.len());
    let mut cur = f.clone();
    loop {
        let mut candidates = Vec::new();
        for (t, a) in cur.terms() {
            for (i, head) in heads.iter().enumerate() {
                if step_for(a, t, head, mode).is_some() {
                    candidates.push(Candidate {
                        term: *t,
                        basis_index: i,
                    });
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let pick = candidates[choose(&candidates) % candidates.len()];
        let a = cur.coeff(&pick.term);
        let (q, shift) = step_for(&a, &pick.term, &heads[pick.basis_index], mode)
            .expect("candidate was reducible");
        cur.add_scaled_shifted(&-q.clone(), shift, &basis[pick.basis_index]);
        trace.record(pick.basis_index, q, shift);
    }
    trace.remainder = cur;
    trace
}

/// `b1*s1*g1 - b2*s2*g2` where `b_i * HC(g_i)` is the lcm of the head
/// coefficients and `s_i * HT(g_i)` the lcm of the head terms.
pub fn s_poly<C: Coeff>(g1: &Polynomial<C>, g2: &Polynomial<C>) -> Result<Polynomial<C>> {
    let (t1, a1) = g1.leading()?;
    let (t2, a2) = g2.leading()?;
    let (b1, b2) = lcm_cofactors(&a1, &a2);
    let t = t1.lcm(&t2);
    let s1 = t1.cofactor_in(&t).expect("lcm is a multiple");
    let s2 = t2.cofactor_in(&t).expect("lcm is a multiple");
    Ok(g1.mul_term(&b1, s1) - g2.mul_term(&b2, s2))
}

fn lcm_cofactors<C: Coeff>(a1: &C, a2: &C) -> (C, C) {
    match C::DOMAIN {
        Domain::Q => {
            let one = C::one();
            (one.exact_div(a1).unwrap(), one.exact_div(a2).unwrap())
        }
        Domain::Z => {
            let l = a1.lcm(a2);
            (l.exact_div(a1).unwrap(), l.exact_div(a2).unwrap())
        }
    }
}

/// `c1*s1*g1 + c2*s2*g2` with `gcd(a1, a2) = c1*a1 + c2*a2`; when one head
/// coefficient divides the other the cofactor of the larger one is zero.
pub fn g_poly<C: Coeff>(g1: &Polynomial<C>, g2: &Polynomial<C>) -> Result<Polynomial<C>> {
    let (t1, a1) = g1.leading()?;
    let (t2, a2) = g2.leading()?;
    let (c1, c2) = if a2.exact_div(&a1).is_some() {
        (a1.normalizing_unit(), C::zero())
    } else if a1.exact_div(&a2).is_some() {
        (C::zero(), a2.normalizing_unit())
    } else {
        let (_, c1, c2) = a1.xgcd(&a2);
        (c1, c2)
    };
    let t = t1.lcm(&t2);
    let s1 = t1.cofactor_in(&t).expect("lcm is a multiple");
    let s2 = t2.cofactor_in(&t).expect("lcm is a multiple");
    Ok(g1.mul_term(&c1, s1) + g2.mul_term(&c2, s2))
}

fn needs_g_poly<C: Coeff>(a1: &C, a2: &C) -> bool {
    C::DOMAIN == Domain::Z && a1.exact_div(a2).is_none() && a2.exact_div(a1).is_none()
}

/// Whether the leading monomial of `f` is D-divisible by a leading monomial of `basis`.
pub fn top_reducible<C: Coeff>(f: &Polynomial<C>, basis: &[Polynomial<C>]) -> bool {
    let Some((t, a)) = f.leading_term() else {
        return false;
    };
    basis.iter().any(|g| {
        g.leading_term()
            .is_some_and(|(gt, ga)| gt.divides(t) && a.exact_div(ga).is_some())
    })
}

/// Which critical-pair criterion failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairFailure {
    /// The S-polynomial has a nonzero D-normal form.
    SPolynomial,
    /// The G-polynomial is not top-D-reducible.
    GPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingPair<C: Coeff> {
    pub i: usize,
    pub j: usize,
    pub kind: PairFailure,
    /// Nonzero D-normal form of the S-polynomial, or the G-polynomial itself.
    pub witness: Polynomial<C>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport<C: Coeff> {
    pub basis: Vec<Polynomial<C>>,
    pub is_groebner: bool,
    pub failing_pair: Option<FailingPair<C>>,
}

/// Checks the critical-pair criteria: every S-polynomial D-reduces to zero
/// and, over `Z`, every G-polynomial is top-D-reducible.
pub fn is_groebner<C: Coeff>(basis: &[Polynomial<C>]) -> Result<BasisReport<C>> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    if basis.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let heads = heads(basis);
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_poly(&basis[i], &basis[j])?;
            let r = reduce_with(&s, basis, &heads, Mode::D, |_, _, _| {});
            if !r.is_zero() {
                return Ok(failed(basis, i, j, PairFailure::SPolynomial, r));
            }
            if needs_g_poly(&heads[i].1, &heads[j].1) {
                let g = g_poly(&basis[i], &basis[j])?;
                if !top_reducible(&g, basis) {
                    return Ok(failed(basis, i, j, PairFailure::GPolynomial, g));
                }
            }
        }
    }
    Ok(BasisReport {
        basis: basis.to_vec(),
        is_groebner: true,
        failing_pair: None,
    })
}

fn failed<C: Coeff>(
    basis: &[Polynomial<C>],
    i: usize,
    j: usize,
    kind: PairFailure,
    witness: Polynomial<C>,
) -> BasisReport<C> {
    BasisReport {
        basis: basis.to_vec(),
        is_groebner: false,
        failing_pair: Some(FailingPair {
            i,
            j,
            kind,
            witness,
        }),
    }
}

/// Default number of pair treatments before completion gives up.
pub const DEFAULT_STEP_CAP: usize = 100_000;

/// Completion settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionConfig {
    pub step_cap: usize,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

/// Buchberger completion with the default step cap.
pub fn buchberger<C: Coeff>(generators: &[Polynomial<C>]) -> Result<Vec<Polynomial<C>>> {
    buchberger_with(generators, CompletionConfig::default())
}

/// Buchberger completion. Pairs are treated smallest lcm of head terms first;
/// over `Q` the coprime-head product criterion skips pairs, over `Z` nothing
/// is skipped. The result is minimalized and tail-reduced.
pub fn buchberger_with<C: Coeff>(
    generators: &[Polynomial<C>],
    config: CompletionConfig,
) -> Result<Vec<Polynomial<C>>> {
    let mut basis: Vec<Polynomial<C>> = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let g = g.normalized();
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let mut heads = heads(&basis);
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((heads[i].0.lcm(&heads[j].0), i, j));
        }
    }

    let mut steps = 0usize;
    while let Some((_, i, j)) = pairs.pop_first() {
        steps += 1;
        if steps > config.step_cap {
            return Err(Error::ResourceCap {
                cap: config.step_cap,
            });
        }
        let mut fresh = Vec::new();
        if needs_g_poly(&heads[i].1, &heads[j].1) {
            let g = g_poly(&basis[i], &basis[j])?;
            if !top_reducible(&g, &basis) {
                fresh.push(g.normalized());
            }
        }
        let coprime_field_pair = C::DOMAIN == Domain::Q && heads[i].0.is_coprime(&heads[j].0);
        if !coprime_field_pair {
            let s = s_poly(&basis[i], &basis[j])?;
            let r = reduce_with(&s, &basis, &heads, Mode::E, |_, _, _| {}).normalized();
            if !r.is_zero() {
                fresh.push(r);
            }
        }
        for p in fresh {
            let (t, c) = p.leading()?;
            let k = basis.len();
            for (idx, h) in heads.iter().enumerate() {
                pairs.insert((h.0.lcm(&t), idx, k));
            }
            basis.push(p);
            heads.push((t, c));
        }
    }
    Ok(self_reduce(basis))
}

/// Drops elements whose leading monomial is D-divisible by another element's,
/// then E-reduces every tail. Preserves the ideal and the Groebner property.
pub fn self_reduce<C: Coeff>(basis: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    let mut basis: Vec<Polynomial<C>> = basis
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.normalized())
        .collect();
    let mut i = 0;
    while i < basis.len() {
        let (ti, ai) = basis[i].leading().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            if j == i {
                return false;
            }
            let (tj, aj) = g.leading().unwrap();
            let divides = tj.divides(&ti) && ai.exact_div(&aj).is_some();
            let same = tj == ti && aj.exact_div(&ai).is_some();
            // identical leading monomials: keep the earliest one
            divides && !(same && j > i)
        });
        if redundant {
            basis.remove(i);
            i = 0;
        } else {
            i += 1;
        }
    }
    for i in 0..basis.len() {
        let (t, c) = basis[i].leading().unwrap();
        let mut tail = basis[i].clone();
        tail.pop_leading();
        let others = basis.clone();
        let reduced = remainder(&tail, &others, Mode::E);
        basis[i] = Polynomial::term(c, t) + reduced;
    }
    basis.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    basis
}

/// Membership in the ideal of a Groebner basis: the E-normal form vanishes.
pub fn ideal_contains<C: Coeff>(f: &Polynomial<C>, groebner_basis: &[Polynomial<C>]) -> bool {
    remainder(f, groebner_basis, Mode::E).is_zero()
}

/// Ideal equality by mutual membership after completing both sides.
pub fn ideal_equal<C: Coeff>(g1: &[Polynomial<C>], g2: &[Polynomial<C>]) -> Result<bool> {
    ideal_equal_with(g1, g2, CompletionConfig::default())
}

pub fn ideal_equal_with<C: Coeff>(
    g1: &[Polynomial<C>],
    g2: &[Polynomial<C>],
    config: CompletionConfig,
) -> Result<bool> {
    let b1 = buchberger_with(g1, config)?;
    let b2 = buchberger_with(g2, config)?;
    Ok(g2.iter().all(|g| ideal_contains(g, &b1)) && g1.iter().all(|g| ideal_contains(g, &b2)))
}

/// Convenience aliases for the two coefficient rings.
pub type ZTrace = ReductionTrace<BigInt>;
pub type QTrace = ReductionTrace<BigRational>;
