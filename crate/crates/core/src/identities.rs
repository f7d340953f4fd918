//! Mechanical verification of the explicit bases: Groebner criteria, ideal
//! equality with the tile generators, and the polynomial identities used to
//! derive them.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::groebner::{
    buchberger_with, ideal_contains, is_groebner, remainder, s_poly, CompletionConfig, Mode,
};
use crate::polyring::{geometric, Monomial, ZPoly};
use crate::tilesets::{aux_tiles, check_n, named, paper_basis, ribbon_l_generators, TileSet};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// All checks for one tile family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: u32,
    pub plus: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn identity(name: &str, lhs: &ZPoly, rhs: &ZPoly) -> Check {
    let diff = lhs - rhs;
    let check = Check::new(name, diff.is_zero());
    if check.passed {
        check
    } else {
        check.with_detail(format!("lhs - rhs = {diff}"))
    }
}

fn reduces_to_zero(name: &str, f: &ZPoly, basis: &[ZPoly], mode: Mode) -> Check {
    let r = remainder(f, basis, mode);
    let check = Check::new(name, r.is_zero());
    if check.passed {
        check
    } else {
        check.with_detail(format!("remainder {r}"))
    }
}

fn c(v: i64) -> ZPoly {
    ZPoly::constant(BigInt::from(v))
}

fn mono(a: u32, b: u32) -> ZPoly {
    ZPoly::monomial(Monomial::new(a, b))
}

/// `sum_{i < len} v^(2i)`
fn even_powers(len: u32, in_x: bool) -> ZPoly {
    let mut p = ZPoly::zero();
    for i in 0..len {
        p = p + if in_x { mono(2 * i, 0) } else { mono(0, 2 * i) };
    }
    p
}

/// `y^(k-4) + y^(k-6) + ...` down to exponent 0 or 1; zero for `k < 4`.
fn descending_tail(k: u32) -> ZPoly {
    let mut p = ZPoly::zero();
    let mut e = i64::from(k) - 4;
    while e >= 0 {
        p = p + mono(0, e as u32);
        e -= 2;
    }
    p
}

fn pair(basis: &[ZPoly], i: usize, j: usize) -> ZPoly {
    s_poly(&basis[i], &basis[j]).expect("basis elements are nonzero")
}

/// Runs every check for `T_n` (or `T_n^+` when `plus`).
pub fn verify_basis(n: u32, plus: bool) -> Result<VerificationReport> {
    verify_basis_with(n, plus, CompletionConfig::default())
}

pub fn verify_basis_with(
    n: u32,
    plus: bool,
    config: CompletionConfig,
) -> Result<VerificationReport> {
    check_n(n, 4)?;
    let basis = paper_basis(n, plus)?;
    let gens = TileSet::ribbon_l(n, plus)?.polys();
    let mut checks = Vec::new();

    let report = is_groebner(&basis)?;
    let mut crit = Check::new(
        "groebner criterion (S D-reduce to 0, G top-reducible)",
        report.is_groebner,
    );
    if let Some(fp) = &report.failing_pair {
        crit = crit.with_detail(format!(
            "pair ({}, {}) {:?}: {}",
            fp.i, fp.j, fp.kind, fp.witness
        ));
    }
    checks.push(crit);

    let mut all_e = true;
    let mut detail = None;
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let r = remainder(&pair(&basis, i, j), &basis, Mode::E);
            if !r.is_zero() {
                all_e = false;
                detail.get_or_insert(format!("S({}, {}) -> {r}", i + 1, j + 1));
            }
        }
    }
    let mut ech = Check::new("every S-polynomial E-reduces to 0", all_e);
    ech.detail = detail;
    checks.push(ech);

    let completed = buchberger_with(&gens, config)?;
    let basis_in = basis.iter().all(|b| ideal_contains(b, &completed));
    let gens_in = gens.iter().all(|g| ideal_contains(g, &basis));
    checks.push(Check::new("basis lies in the ideal of the tiles", basis_in));
    checks.push(Check::new("tiles lie in the ideal of the basis", gens_in));

    let k = n / 2;
    if plus {
        checks.extend(plus_identities(k, &basis));
    } else {
        checks.extend(plain_identities(k, &basis)?);
    }
    Ok(VerificationReport { n, plus, checks })
}

fn plain_identities(k: u32, basis: &[ZPoly]) -> Result<Vec<Check>> {
    let n = 2 * k;
    let h = ribbon_l_generators(n)?;
    let mut out = vec![
        identity(
            "C3 = (xy + y - 1) H1 - y H2",
            &(&(mono(1, 1) + mono(0, 1) - c(1)) * &h[0] - &mono(0, 1) * &h[1]),
            &named::c3(),
        ),
        identity(
            "C4 = (xy + x - 1) H3 - x H4",
            &(&(mono(1, 1) + mono(1, 0) - c(1)) * &h[2] - &mono(1, 0) * &h[3]),
            &named::c4(),
        ),
        Check::new("C3 in ideal", ideal_contains(&named::c3(), basis)),
        Check::new("C4 in ideal", ideal_contains(&named::c4(), basis)),
    ];

    if k == 2 {
        let s = pair(basis, 0, 1);
        out.push(identity(
            "S(C1, C2) = (x + y + 1)(C2 - C1)",
            &s,
            &(&(mono(1, 0) + mono(0, 1) + c(1)) * &(&basis[1] - &basis[0])),
        ));
        out.push(reduces_to_zero(
            "S(C1, C2) D-reduces to 0",
            &s,
            basis,
            Mode::D,
        ));
        return Ok(out);
    }

    let aux = aux_tiles(n)?;
    out.push(identity(
        "D = y H1 - C4",
        &aux.d,
        &(&mono(0, 1) * &h[0] - named::c4()),
    ));
    out.push(Check::new("D in ideal", ideal_contains(&aux.d, basis)));
    let b_in = ideal_contains(&aux.b, basis);
    if k == 3 {
        out.push(Check::new("B = xy - 1 in ideal", b_in));
    } else {
        out.push(Check::new("B = xy - 1 not in ideal", !b_in));
    }

    // radical witnesses: (k-2) F(x), F(x) = 1 + x + ... + x^(2k-1)
    let km2 = c(i64::from(k) - 2);
    let c5 = named::c5(k);
    let fx = &km2 * &geometric::<BigInt>(2 * k, true);
    let fy = fx.swap_xy();
    out.push(identity(
        "(k-2) x H3 - C5 = (k-2) F(x)",
        &(&(&km2 * &mono(1, 0)) * &h[2] - &c5),
        &fx,
    ));
    out.push(identity(
        "(k-2) y H1 - C5 = (k-2) F(y)",
        &(&(&km2 * &mono(0, 1)) * &h[0] - &c5),
        &fy,
    ));
    out.push(Check::new(
        "(k-2) F(x) in ideal",
        ideal_contains(&fx, basis),
    ));
    out.push(Check::new(
        "(k-2) F(y) in ideal",
        ideal_contains(&fy, basis),
    ));

    if k == 3 {
        return Ok(out);
    }

    let [c1, c2, c3, c4, c5] = [&basis[0], &basis[1], &basis[2], &basis[3], &basis[4]];
    let f = c(i64::from((k - 1) / 2));
    let x = mono(1, 0);
    let y = mono(0, 1);
    let tail_y = descending_tail(k);
    let tail_x = tail_y.swap_xy();

    let s13 = pair(basis, 0, 2);
    out.push(identity(
        "S(C1, C3) = x^2 C1 - y^(k-1) C3",
        &s13,
        &(&mono(2, 0) * c1 - &mono(0, k - 1) * c3),
    ));
    out.push(identity(
        "S(C1, C3) = x C2 - y^(k-2) C4 + y^(k-2) C3 + x E(y) C4 - x C5 + f x C3",
        &s13,
        &(&x * c2 - &mono(0, k - 2) * c4 + &mono(0, k - 2) * c3 + &(&x * &tail_y) * c4 - &x * c5
            + &(&f * &x) * c3),
    ));
    let s14 = pair(basis, 0, 3);
    out.push(identity(
        "S(C1, C4) = x C1 - y^(k-2) C4",
        &s14,
        &(&x * c1 - &mono(0, k - 2) * c4),
    ));
    out.push(identity(
        "S(C1, C4) = C2 + E(y) C4 - C5 + f C3",
        &s14,
        &(c2 + &(&tail_y * c4) - c5 + &f * c3),
    ));
    let s24 = pair(basis, 1, 3);
    out.push(identity(
        "S(C2, C4) = y C1 - x^(k-2) C3 + x^(k-2) C4 + y E(x) C3 - y C5 + f y C4",
        &s24,
        &(&y * c1 - &mono(k - 2, 0) * c3 + &mono(k - 2, 0) * c4 + &(&y * &tail_x) * c3 - &y * c5
            + &(&f * &y) * c4),
    ));
    let s23 = pair(basis, 1, 2);
    out.push(identity(
        "S(C2, C3) = C1 + E(x) C3 - C5 + f C4",
        &s23,
        &(c1 + &(&tail_x * c3) - c5 + &f * c4),
    ));

    let km2i = i64::from(k) - 2;
    let even_k = if k.is_multiple_of(2) { 1 } else { 0 };
    let lift = |v: &ZPoly| -> ZPoly { &(&c(even_k) * v) - &c(2 * i64::from((k - 1) / 2)) };
    let s15 = pair(basis, 0, 4);
    out.push(identity(
        "S(C1, C5) = (k-2) x C1 - y^(k-1) C5",
        &s15,
        &(&(&km2 * &x) * c1 - &mono(0, k - 1) * c5),
    ));
    out.push(identity(
        "S(C1, C5) = (k-2) C2 + (k-2) C4 (1 + y^2 + ...) + ([k even] y^(k-2) - 2f) C5 + (k-2) f C3",
        &s15,
        &(&km2 * c2
            + &(&km2 * &even_powers((k - 3) / 2 + 1, false)) * c4
            + &lift(&mono(0, k - 2)) * c5
            + &c(km2i * i64::from((k - 1) / 2)) * c3),
    ));
    let s25 = pair(basis, 1, 4);
    out.push(identity(
        "S(C2, C5) = (k-2) C1 + (k-2) C3 (1 + x^2 + ...) + ([k even] x^(k-2) - 2f) C5 + (k-2) f C4",
        &s25,
        &(&km2 * c1
            + &(&km2 * &even_powers((k - 3) / 2 + 1, true)) * c3
            + &lift(&mono(k - 2, 0)) * c5
            + &c(km2i * i64::from((k - 1) / 2)) * c4),
    ));
    out.push(identity(
        "S(C3, C4) = -C3 + C4",
        &pair(basis, 2, 3),
        &(c4 - c3),
    ));
    out.push(identity("S(C3, C5) = C5", &pair(basis, 2, 4), c5));
    out.push(identity("S(C4, C5) = C5", &pair(basis, 3, 4), c5));
    out.push(reduces_to_zero(
        "S(C1, C2) D-reduces to 0",
        &pair(basis, 0, 1),
        basis,
        Mode::D,
    ));
    Ok(out)
}

fn plus_identities(k: u32, basis: &[ZPoly]) -> Vec<Check> {
    let n = 2 * k;
    let h = ribbon_l_generators(n).expect("n checked by caller");
    let h5 = named::h5();
    let d1 = named::d1();
    let c4 = named::c4();
    let x = mono(1, 0);
    let y = mono(0, 1);
    let ki = i64::from(k);
    let mut out = Vec::new();

    out.push(identity("y H5 - C4 = D1", &(&y * &h5 - &c4), &d1));
    let target = &(&x + &c(1)) + &(&c(ki - 1) * &(&y + &mono(0, 2)));
    let mut weights = ZPoly::zero();
    for j in 1..k.saturating_sub(1) {
        weights = weights + &c(i64::from(j)) * &mono(0, n - 3 - 2 * j);
    }
    let step = &(&c(1) - &y) * &d1;
    out.push(identity(
        "(1 - y) D1 = 1 + y - y^2 - y^3",
        &step,
        &ZPoly::from_terms([(1, 0, 0), (1, 0, 1), (-1, 0, 2), (-1, 0, 3)]),
    ));
    out.push(identity(
        "H1 + [y^(n-5) + 2 y^(n-7) + ... + (k-2) y](1 + y - y^2 - y^3) = 1 + x + (k-1)(y + y^2)",
        &(&h[0] + &(&weights * &step)),
        &target,
    ));
    out.push(identity(
        "H1 + C4 (1 + y^2 + ... + y^(n-4)) = H2",
        &(&h[0] + &(&c4 * &even_powers(k - 1, false))),
        &h[1],
    ));

    if k == 2 {
        let d2 = &basis[1];
        out.push(identity(
            "(1 + y) D2 + D1 = H5",
            &(&(&c(1) + &y) * d2 + &d1),
            &h5,
        ));
        out.push(identity(
            "D2 + D1 = 1 + x + (y + y^2)",
            &(d2 + &d1),
            &target,
        ));
        out.push(identity(
            "S(D1, D2) = y D1 + (2y + 1) D2",
            &pair(basis, 0, 1),
            &(&y * &d1 + &(&(&c(2) * &y) + &c(1)) * d2),
        ));
        return out;
    }

    let m = named::plus_coefficient(k);
    let d2 = named::d2(k);
    let d3 = named::d3(k);
    let u = &(&x - &(&c(ki - 1) * &y)) - &c(ki - 2);
    let kk2 = c(ki * (ki - 2));
    out.push(identity(
        "1 + x + (k-1)(y + y^2) - (k-1) D1 = x - (k-1) y - (k-2)",
        &(&target - &(&c(ki - 1) * &d1)),
        &u,
    ));
    out.push(identity(
        "(k-1)(x - (k-1) y - (k-2)) + (y - (k-1) x - (k-2)) = -D3",
        &(&(&c(ki - 1) * &u) + &u.swap_xy()),
        &-&d3,
    ));
    out.push(identity(
        "(x - (k-1) y - (k-2)) + k(k-2)(y + 1) = D2",
        &(&u + &d3),
        &d2,
    ));
    out.push(identity(
        "(1 + x) D2 - m H5 = swap(D1)",
        &(&(&c(1) + &x) * &d2 - &c(m) * &h5),
        &d1.swap_xy(),
    ));
    out.push(identity(
        "m D2 - (k-1)(k-3) D3 = swap(D2)",
        &(&(&c(m) * &d2) - &(&c((ki - 1) * (ki - 3)) * &d3)),
        &d2.swap_xy(),
    ));
    out.push(identity(
        "k(k-2) D2 - m D3 = swap(D3)",
        &(&(&kk2 * &d2) - &(&c(m) * &d3)),
        &d3.swap_xy(),
    ));
    out.push(identity(
        "(1 + y) D2 - m D1 = H5",
        &(&(&(&c(1) + &y) * &d2) - &(&c(m) * &d1)),
        &h5,
    ));
    out.push(identity(
        "D2 - D3 + (k-1) D1 = 1 + x + (k-1)(y + y^2)",
        &(&(&d2 - &d3) + &(&c(ki - 1) * &d1)),
        &target,
    ));
    let w = &(&(&c(ki) * &(&mono(0, 2) + &y)) + &c(1)) - &mono(1, 1);
    out.push(identity(
        "D1 + y (D3 - D2) = k (y^2 + y) + 1 - xy",
        &(&d1 + &(&y * &(&d3 - &d2))),
        &w,
    ));
    out.push(identity(
        "(y + 1)(k (y^2 + y) + 1 - xy) - k y D1 = -C4",
        &(&(&(&y + &c(1)) * &w) - &(&(&c(ki) * &y) * &d1)),
        &-&c4,
    ));
    out.push(identity("S(D1, D3) = D3", &pair(basis, 0, 2), &d3));
    out.push(reduces_to_zero(
        "S(D1, D2) D-reduces to 0",
        &pair(basis, 0, 1),
        basis,
        Mode::D,
    ));
    out.push(reduces_to_zero(
        "S(D2, D3) D-reduces to 0",
        &pair(basis, 1, 2),
        basis,
        Mode::D,
    ));
    out
}
