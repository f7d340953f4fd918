//! End-to-end acceptance run: one line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::Instant;

use ltile::decide::{barnes_closed_form, closed_form_inflated, closed_form_rect, Decider};
use ltile::groebner::{ideal_contains, normal_form, normal_form_by, Mode};
use ltile::identities::verify_basis;
use ltile::oracle::{self, verify_certificate};
use ltile::polyring::{cmp, geometric, Monomial};
use ltile::rectcalc::{
    b_tile_count, case_derivative, divisibility, sign_sum_and_derivative, ParityCase,
};
use ltile::tilesets::{inflated_l_region, named, paper_basis, rect_region, TileSet};
use ltile::{Domain, ZPoly};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 0x004c_5449_4c45;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        let detail = if failures.is_empty() {
            summary
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!(
                "{summary}; {} failures, first: {}",
                failures.len(),
                shown.join(" | ")
            )
        };
        Outcome {
            pass: failures.is_empty(),
            detail,
        }
    }
}

fn grid(max: u32) -> Vec<(u32, u32)> {
    (1..=max)
        .flat_map(|p| (p..=max).map(move |q| (p, q)))
        .collect()
}

fn basis_verification() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ltile");
    let mut failures = Vec::new();
    let mut checks = 0;
    for n in [4, 6, 8, 10, 12] {
        for plus in [false, true] {
            match verify_basis(n, plus) {
                Ok(report) => {
                    checks += report.checks.len();
                    for c in report.failures() {
                        failures.push(format!("n={n} plus={plus}: {}", c.name));
                    }
                }
                Err(e) => failures.push(format!("n={n} plus={plus}: {e}")),
            }
            let mut cmd = Command::new(bin);
            cmd.args([
                "verify-basis",
                "--n",
                &n.to_string(),
                "--format",
                "json",
                "--no-timestamp",
            ]);
            if plus {
                cmd.arg("--plus");
            }
            match cmd.output() {
                Ok(out) if out.status.success() => {}
                Ok(out) => failures.push(format!(
                    "ltile verify-basis n={n} plus={plus} exited {}",
                    out.status
                )),
                Err(e) => failures.push(format!("cannot run ltile: {e}")),
            }
        }
    }
    Outcome::new(
        &failures,
        format!("10 tile sets, {checks} checks, CLI exit 0"),
    )
}

fn rect_scan(
    decider: &Decider,
    ns: &[u32],
    plus: bool,
    domain: Domain,
    mult: u32,
) -> (usize, Vec<String>) {
    let mut rows = 0;
    let mut failures = Vec::new();
    for &n in ns {
        let tiles = TileSet::ribbon_l(n, plus).expect("valid n");
        if let Err(e) = decider.warm(&tiles, domain) {
            failures.push(format!("{}: {e}", tiles.name));
            continue;
        }
        let cells = grid(mult * n);
        rows += cells.len();
        let bad: Vec<String> = cells
            .par_iter()
            .filter_map(|&(p, q)| {
                let expected = match domain {
                    Domain::Z => closed_form_rect(n, plus, p, q),
                    Domain::Q => barnes_closed_form(n, plus, p, q),
                };
                match (decider.rect(n, plus, domain, p, q), expected) {
                    (Ok(d), Ok(e)) if d.answer.is_yes() == e => None,
                    (Ok(d), Ok(e)) => Some(format!(
                        "{} {p}x{q}: groebner {} closed form {e}",
                        tiles.name, d.answer
                    )),
                    (Err(e), _) | (_, Err(e)) => Some(format!("{} {p}x{q}: {e}", tiles.name)),
                }
            })
            .collect();
        failures.extend(bad);
    }
    (rows, failures)
}

fn theorem_plain(decider: &Decider) -> Outcome {
    let (rows, failures) = rect_scan(decider, &[6, 8], false, Domain::Z, 3);
    Outcome::new(&failures, format!("{rows} rectangles"))
}

fn theorem_plus(decider: &Decider) -> Outcome {
    let (rows, failures) = rect_scan(decider, &[4, 6, 8], true, Domain::Z, 3);
    Outcome::new(&failures, format!("{rows} rectangles"))
}

fn rational_weights(decider: &Decider) -> Outcome {
    let mut rows = 0;
    let mut failures = Vec::new();
    for plus in [false, true] {
        let (r, f) = rect_scan(decider, &[6, 8], plus, Domain::Q, 3);
        rows += r;
        failures.extend(f);
    }
    let (r, f) = rect_scan(decider, &[4], true, Domain::Q, 3);
    rows += r;
    failures.extend(f);
    let mut scaled = 0;
    for n in [6, 8] {
        for (p, q) in grid(3 * n) {
            if p % n != 0 && q % n != 0 {
                continue;
            }
            scaled += 1;
            match decider.scaled_membership(n, p, q) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("T{n} {p}x{q}: (k-2) f_R not in ideal")),
                Err(e) => failures.push(format!("T{n} {p}x{q}: {e}")),
            }
        }
    }
    Outcome::new(
        &failures,
        format!("{rows} rectangles, {scaled} scaled memberships"),
    )
}

fn inflated(decider: &Decider) -> Outcome {
    let mut failures = Vec::new();
    for n in [6, 8] {
        for factor in 1..=6 {
            match (decider.inflated(n, factor), closed_form_inflated(n, factor)) {
                (Ok(d), Ok(e)) if d.answer.is_yes() == e => {}
                (Ok(d), Ok(e)) => {
                    let witness = independent_witness(n, factor);
                    failures.push(format!(
                        "T{n} factor {factor}: groebner {} closed form {e}, oracle {witness}",
                        d.answer
                    ))
                }
                (Err(e), _) | (_, Err(e)) => failures.push(format!("T{n} factor {factor}: {e}")),
            }
        }
    }
    Outcome::new(&failures, "12 inflated regions".into())
}

/// Oracle verdict on an inflated L, for diagnosing a disagreement.
fn independent_witness(n: u32, factor: u32) -> String {
    let region = match inflated_l_region(n, factor) {
        Ok(r) => r,
        Err(e) => return e.to_string(),
    };
    let tiles = TileSet::ribbon_l(n, false).expect("valid n");
    match oracle::solve(&region, &tiles, Domain::Z, oracle::default_margin(&tiles)) {
        Ok(Some(c)) if verify_certificate(&c, &region) => {
            format!("verified certificate ({} placements)", c.len())
        }
        Ok(Some(_)) => "certificate fails verification".into(),
        Ok(None) => "no certificate".into(),
        Err(e) => e.to_string(),
    }
}

fn rect_engine() -> Outcome {
    let mut failures = Vec::new();
    let mut rows = 0;
    for n in [8u32, 10] {
        let k = i64::from(n / 2);
        for (p, q) in grid(4 * n) {
            rows += 1;
            let r = match divisibility(p, q, n) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("n={n} {p}x{q}: {e}"));
                    continue;
                }
            };
            let side = p % n == 0 || q % n == 0;
            if r.divisible != side {
                failures.push(format!(
                    "n={n} {p}x{q}: divisible {} but side divisibility {side}",
                    r.divisible
                ));
            }
            if r.deriv_value != case_derivative(p, q) {
                failures.push(format!("n={n} {p}x{q}: P'(-1) = {}", r.deriv_value));
            }
            let expected_deriv = match r.case {
                ParityCase::A => Some(i64::from(p) / 2),
                ParityCase::B => Some(i64::from(q) / 2),
                ParityCase::C => Some(0),
                ParityCase::None => None,
            };
            if let Some(d) = expected_deriv {
                if r.deriv_value != d {
                    failures.push(format!(
                        "n={n} {p}x{q}: P'(-1) = {} expected {d}",
                        r.deriv_value
                    ));
                }
            }
            let predicate = if r.divisible {
                match sign_sum_and_derivative(p, q, n) {
                    Ok((s, d)) if s * i64::from(n) == 2 * d => {}
                    Ok((s, d)) => {
                        failures.push(format!("n={n} {p}x{q}: sign sum {s}, P'(-1) = {d}"))
                    }
                    Err(e) => failures.push(format!("n={n} {p}x{q}: {e}")),
                }
                match b_tile_count(p, q, n) {
                    Ok((count, _)) => count % (k - 2) == 0,
                    Err(e) => {
                        failures.push(format!("n={n} {p}x{q}: {e}"));
                        false
                    }
                }
            } else {
                false
            };
            let theorem = closed_form_rect(n, false, p, q).expect("valid n");
            if predicate != theorem || r.predicts_tileable() != theorem {
                failures.push(format!(
                    "n={n} {p}x{q}: engine {predicate} theorem {theorem}"
                ));
            }
        }
    }
    Outcome::new(&failures, format!("{rows} rectangles"))
}

fn oracle_cross_check(decider: &Decider) -> Outcome {
    let mut jobs = Vec::new();
    for n in [4u32, 6] {
        for plus in [false, true] {
            for domain in [Domain::Z, Domain::Q] {
                for (p, q) in grid(12) {
                    jobs.push((n, plus, domain, p, q));
                }
            }
        }
    }
    let results: Vec<Result<(bool, bool), String>> = jobs
        .par_iter()
        .map(|&(n, plus, domain, p, q)| {
            let tiles = TileSet::ribbon_l(n, plus).map_err(|e| e.to_string())?;
            let region = rect_region(p, q).map_err(|e| e.to_string())?;
            let groebner = decider
                .rect(n, plus, domain, p, q)
                .map_err(|e| e.to_string())?
                .answer
                .is_yes();
            let cert = oracle::solve(&region, &tiles, domain, oracle::default_margin(&tiles))
                .map_err(|e| e.to_string())?;
            if let Some(c) = &cert {
                if !verify_certificate(c, &region) {
                    return Err("certificate fails verification".into());
                }
            }
            Ok((groebner, cert.is_some()))
        })
        .collect();
    let mut failures = Vec::new();
    let mut certificates = 0;
    for (&(n, plus, domain, p, q), r) in jobs.iter().zip(results) {
        let name = format!(
            "{} {domain} {p}x{q}",
            ltile::tilesets::tile_set_name(n, plus)
        );
        match r {
            Ok((g, o)) => {
                certificates += usize::from(o);
                if g != o {
                    failures.push(format!("{name}: groebner {g} oracle {o}"));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{} instances, {certificates} verified certificates",
            jobs.len()
        ),
    )
}

fn radical_witnesses(decider: &Decider) -> Outcome {
    let mut failures = Vec::new();
    for n in [8u32, 10] {
        let k = n / 2;
        let tiles = TileSet::ribbon_l(n, false).expect("valid n");
        let basis = match decider.z_basis(&tiles) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("T{n}: {e}"));
                continue;
            }
        };
        let km2 = ZPoly::constant(BigInt::from(k - 2));
        let h = tiles.polys();
        let c5 = named::c5(k);
        for (in_x, shift, tile) in [(true, ZPoly::x(), &h[2]), (false, ZPoly::y(), &h[0])] {
            let target = &km2 * &geometric::<BigInt>(n, in_x);
            let witness = &(&(&km2 * &shift) * tile) - &c5;
            let axis = if in_x { "x" } else { "y" };
            if witness != target {
                failures.push(format!("T{n}: witness identity in {axis}"));
            }
            if !ideal_contains(&target, &basis) {
                failures.push(format!("T{n}: (k-2) F({axis}) not in ideal"));
            }
            if ideal_contains(&geometric::<BigInt>(n, in_x), &basis) {
                failures.push(format!("T{n}: F({axis}) itself in ideal"));
            }
        }
    }
    Outcome::new(&failures, "T8, T10 in both variables".into())
}

fn random_mono(rng: &mut ChaCha8Rng, max: u32) -> Monomial {
    Monomial::new(rng.gen_range(0..=max), rng.gen_range(0..=max))
}

fn random_poly(rng: &mut ChaCha8Rng, terms: usize, deg: u32, coeff: i64) -> ZPoly {
    ZPoly::from_terms((0..terms).map(|_| {
        (
            rng.gen_range(-coeff..=coeff),
            rng.gen_range(0..=deg),
            rng.gen_range(0..=deg),
        )
    }))
}

fn property_suites(decider: &Decider) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();

    for _ in 0..500 {
        let (a, b, c) = (
            random_mono(&mut rng, 8),
            random_mono(&mut rng, 8),
            random_mono(&mut rng, 8),
        );
        if cmp(&a, &b) != cmp(&b, &a).reverse() || (cmp(&a, &b).is_eq() != (a == b)) {
            failures.push(format!("order not antisymmetric on {a}, {b}"));
        }
        if a <= b && b <= c && a > c {
            failures.push(format!("order not transitive on {a}, {b}, {c}"));
        }
        if a < b && a * c >= b * c {
            failures.push(format!("order not multiplicative on {a}, {b}, {c}"));
        }
        if Monomial::ONE > a {
            failures.push(format!("1 > {a}"));
        }
    }

    for _ in 0..200 {
        let f = random_poly(&mut rng, 5, 4, 9);
        let g = random_poly(&mut rng, 5, 4, 9);
        let h = random_poly(&mut rng, 5, 4, 9);
        let zero = ZPoly::zero();
        if &f + &g != &g + &f || &f * &g != &g * &f {
            failures.push(format!("commutativity: {f}; {g}"));
        }
        if &(&f + &g) + &h != &f + &(&g + &h) || &(&f * &g) * &h != &f * &(&g * &h) {
            failures.push(format!("associativity: {f}; {g}; {h}"));
        }
        if &f * &(&g + &h) != &(&f * &g) + &(&f * &h) {
            failures.push(format!("distributivity: {f}; {g}; {h}"));
        }
        if &f + &(-f.clone()) != zero || &f + &zero != f || &f * &ZPoly::one() != f {
            failures.push(format!("identities: {f}"));
        }
        if let (Some((mf, _)), Some((mg, _))) = (f.leading_term(), g.leading_term()) {
            if (&f * &g).leading_term().map(|(m, _)| *m) != Some(*mf * *mg) {
                failures.push(format!("leading term not multiplicative: {f}; {g}"));
            }
        }
    }

    let mut strategies = 0;
    for (n, plus) in [
        (4, false),
        (4, true),
        (6, false),
        (6, true),
        (8, false),
        (8, true),
    ] {
        let basis = paper_basis(n, plus).expect("valid n");
        let f = random_poly(&mut rng, 6, n + 2, 20);
        let reference = normal_form(&f, &basis, Mode::E).remainder;
        for _ in 0..100 {
            strategies += 1;
            let trace = normal_form_by(&f, &basis, Mode::E, |c| rng.gen_range(0..c.len()));
            if trace.remainder != reference {
                failures.push(format!("T{n} plus={plus}: remainder differs for {f}"));
            }
            if !trace.identity_holds(&f, &basis) {
                failures.push(format!("T{n} plus={plus}: trace identity fails for {f}"));
            }
        }
    }

    let mut decisions = 0;
    for _ in 0..60 {
        let n = [4u32, 6, 8][rng.gen_range(0..3)];
        let plus = rng.gen_bool(0.5);
        let (p, q) = (rng.gen_range(1..=3 * n), rng.gen_range(1..=3 * n));
        let z = decider.rect(n, plus, Domain::Z, p, q).map(|d| d.answer);
        let z_swapped = decider.rect(n, plus, Domain::Z, q, p).map(|d| d.answer);
        let qd = decider.rect(n, plus, Domain::Q, p, q).map(|d| d.answer);
        let q_swapped = decider.rect(n, plus, Domain::Q, q, p).map(|d| d.answer);
        decisions += 4;
        match (z, z_swapped, qd, q_swapped) {
            (Ok(z), Ok(zs), Ok(qd), Ok(qs)) => {
                if z != zs || qd != qs {
                    failures.push(format!("T{n} plus={plus}: {p}x{q} not symmetric"));
                }
                if z.is_yes() && !qd.is_yes() {
                    failures.push(format!("T{n} plus={plus}: {p}x{q} Z yes but Q no"));
                }
            }
            _ => failures.push(format!("T{n} plus={plus}: {p}x{q} decision error")),
        }
    }
    if !normal_form(&ZPoly::zero(), &paper_basis(6, false).unwrap(), Mode::E)
        .remainder
        .is_zero()
    {
        failures.push("zero does not reduce to zero".into());
    }

    Outcome::new(
        &failures,
        format!(
            "seed {SEED:#x}: 500 order, 200 ring, {strategies} strategies, {decisions} decisions"
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let decider = Decider::default();
    let criteria: Vec<Criterion> = vec![
        ("basis verification", Box::new(basis_verification)),
        (
            "rectangles, integer weights",
            Box::new(|| theorem_plain(&decider)),
        ),
        (
            "rectangles with square, integer weights",
            Box::new(|| theorem_plus(&decider)),
        ),
        (
            "rectangles, rational weights",
            Box::new(|| rational_weights(&decider)),
        ),
        ("inflated L", Box::new(|| inflated(&decider))),
        ("rectangle divisibility engine", Box::new(rect_engine)),
        (
            "oracle cross-check",
            Box::new(|| oracle_cross_check(&decider)),
        ),
        (
            "radical witnesses",
            Box::new(|| radical_witnesses(&decider)),
        ),
        ("property suites", Box::new(|| property_suites(&decider))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.pass);
        println!(
            "criterion {}: {status} {name} ({}) [{:.1}s]",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
