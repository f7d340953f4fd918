//! Brute-force signed tilings: an exact linear system over all tile
//! placements inside a finite window.
//!
//! Unknowns are placement weights, equations are window cells, the target is
//! `1` on the region and `0` elsewhere. Over `Z` the placement columns are
//! brought into Hermite (echelon) form by unimodular column operations; over
//! `Q` by fraction-free elimination. Each echelon column remembers how it was
//! built from placements, so a solution comes out as a certificate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::Domain;
use crate::tilesets::{CellSet, TileSet};

/// Axis-aligned window of cells `[col0, col0 + width) x [row0, row0 + height)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub col0: i64,
    pub row0: i64,
    pub width: i64,
    pub height: i64,
}

impl Window {
    /// Bounding box of `region` padded by `margin` on every side.
    pub fn around(region: &CellSet, margin: u32) -> Result<Window> {
        let (c0, r0) = region
            .min_corner()
            .ok_or_else(|| Error::Precondition("region is empty".into()))?;
        let (w, h) = region.bounding_box();
        let m = i64::from(margin);
        Ok(Window {
            col0: c0 - m,
            row0: r0 - m,
            width: w + 2 * m,
            height: h + 2 * m,
        })
    }

    pub fn contains(&self, (c, r): (i64, i64)) -> bool {
        c >= self.col0
            && c < self.col0 + self.width
            && r >= self.row0
            && r < self.row0 + self.height
    }

    pub fn cell_count(&self) -> usize {
        (self.width.max(0) * self.height.max(0)) as usize
    }

    /// Row-major index of a cell inside the window.
    fn index(&self, (c, r): (i64, i64)) -> usize {
        ((r - self.row0) * self.width + (c - self.col0)) as usize
    }

    fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.row0..self.row0 + self.height)
            .flat_map(move |r| (self.col0..self.col0 + self.width).map(move |c| (c, r)))
    }
}

/// Tile `tile_index` translated so that its normalized origin sits at `shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Placement {
    pub tile_index: usize,
    pub shift: (i64, i64),
}

/// Every placement of every tile fully inside `window`, ordered by tile, then
/// column shift, then row shift.
pub fn enumerate_placements(tiles: &TileSet, window: &Window) -> Vec<Placement> {
    let mut out = Vec::new();
    for (tile_index, tile) in tiles.tiles.iter().enumerate() {
        let (w, h) = tile.cells.bounding_box();
        for u in window.col0..=(window.col0 + window.width - w) {
            for v in window.row0..=(window.row0 + window.height - h) {
                out.push(Placement {
                    tile_index,
                    shift: (u, v),
                });
            }
        }
    }
    out
}

/// Weighted placements claimed to signed-tile a region. Tile cell lists are
/// stored so the certificate can be checked on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub tile_set: String,
    pub domain: Domain,
    pub window: Window,
    pub tile_cells: Vec<CellSet>,
    pub entries: Vec<(Placement, BigRational)>,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `tile_index u v weight` lines behind a comment header.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# tiles {} weights {} window {} {} {} {}\n",
            self.tile_set,
            self.domain,
            self.window.col0,
            self.window.row0,
            self.window.width,
            self.window.height
        );
        for (p, w) in &self.entries {
            out.push_str(&format!(
                "{} {} {} {}\n",
                p.tile_index, p.shift.0, p.shift.1, w
            ));
        }
        out
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Independent check: the weighted indicators sum to `1` on the region and
/// `0` everywhere else, all placed cells lie in the window, and no weight is
/// zero. Integer certificates must have integer weights.
pub fn verify_certificate(cert: &Certificate, region: &CellSet) -> bool {
    let mut sum: HashMap<(i64, i64), BigRational> = HashMap::new();
    for (placement, weight) in &cert.entries {
        if weight.is_zero() || (cert.domain == Domain::Z && !weight.is_integer()) {
            return false;
        }
        let Some(cells) = cert.tile_cells.get(placement.tile_index) else {
            return false;
        };
        for &(c, r) in cells.iter() {
            let cell = (c + placement.shift.0, r + placement.shift.1);
            if !cert.window.contains(cell) {
                return false;
            }
            *sum.entry(cell).or_insert_with(BigRational::zero) += weight;
        }
    }
    if region.iter().any(|c| !cert.window.contains(*c)) {
        return false;
    }
    for (cell, total) in &sum {
        let want = if region.contains(*cell) {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        if *total != want {
            return false;
        }
    }
    region.iter().all(|c| sum.contains_key(c))
}

type Sparse = Vec<(usize, BigInt)>;

/// `a*u + b*v` for sorted sparse vectors.
fn combine(a: &BigInt, u: &Sparse, b: &BigInt, v: &Sparse) -> Sparse {
    let mut out = Vec::with_capacity(u.len().max(v.len()));
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < v.len() {
        let (idx, val) = match (u.get(i), v.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, a * &x.1 + b * &y.1)
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                (x.0, a * &x.1)
            }
            (Some(x), None) => {
                i += 1;
                (x.0, a * &x.1)
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, b * &y.1)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

fn content(v: &Sparse) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}

fn divide(v: &mut Sparse, d: &BigInt) {
    for (_, c) in v.iter_mut() {
        *c = &*c / d;
    }
}

/// Column of the echelon form: `den * entries = A * expr`.
#[derive(Clone, Debug)]
struct Column {
    entries: Sparse,
    expr: Sparse,
    den: BigInt,
}

impl Column {
    fn pivot(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    /// Divides out the common content of `entries` (into `den`), then the
    /// common factor of `expr` and `den`. Only used over `Q`.
    fn tidy(&mut self) {
        let c = content(&self.entries);
        if !c.is_zero() && !c.is_one() {
            divide(&mut self.entries, &c);
            self.den *= &c;
        }
        let g = content(&self.expr).gcd(&self.den);
        if !g.is_zero() && !g.is_one() {
            divide(&mut self.expr, &g);
            self.den = &self.den / &g;
        }
    }
}

/// `alpha * x - beta * y` on columns, with denominators reconciled.
fn column_combination(alpha: &BigInt, x: &Column, beta: &BigInt, y: &Column) -> Column {
    let entries = combine(alpha, &x.entries, &-beta, &y.entries);
    if x.den == y.den {
        return Column {
            entries,
            expr: combine(alpha, &x.expr, &-beta, &y.expr),
            den: x.den.clone(),
        };
    }
    let l = x.den.lcm(&y.den);
    let ax = alpha * (&l / &x.den);
    let by = beta * (&l / &y.den);
    Column {
        entries,
        expr: combine(&ax, &x.expr, &-by, &y.expr),
        den: l,
    }
}

/// Echelon form of the placement columns, keyed by pivot row.
struct Echelon {
    domain: Domain,
    columns: BTreeMap<usize, Column>,
}

impl Echelon {
    fn new(domain: Domain) -> Self {
        Echelon {
            domain,
            columns: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut v: Column) {
        while let Some((r, a)) = v.pivot() {
            let a = a.clone();
            let Some(e) = self.columns.get_mut(&r) else {
                self.columns.insert(r, v);
                return;
            };
            let b = e.pivot().expect("stored columns are nonzero").1.clone();
            match self.domain {
                Domain::Z => {
                    let (q, rem) = a.div_rem(&b);
                    if rem.is_zero() {
                        v = column_combination(&BigInt::one(), &v, &q, e);
                    } else {
                        // unimodular: [e; v] -> [s e + t v; (a/g) e - (b/g) v]
                        let ext = b.extended_gcd(&a);
                        let (g, s, t) = (ext.gcd, ext.x, ext.y);
                        let new_e = column_combination(&s, e, &-t, &v);
                        let rest = column_combination(&(&a / &g), e, &(&b / &g), &v);
                        *e = new_e;
                        v = rest;
                    }
                }
                Domain::Q => {
                    let g = a.gcd(&b);
                    let mut rest = column_combination(&(&b / &g), &v, &(&a / &g), e);
                    rest.tidy();
                    v = rest;
                }
            }
        }
    }

    /// Writes `target` as a combination of placements: returns `(w, d)` with
    /// `A w = d * target`, or `None` when `target` is outside the span.
    fn solve(&self, target: Sparse) -> Option<(Sparse, BigInt)> {
        let mut res = target;
        let mut w: Sparse = Vec::new();
        let mut d = BigInt::one();
        while let Some((r, a)) = res.first().cloned() {
            let e = self.columns.get(&r)?;
            let b = e.pivot()?.1;
            match self.domain {
                Domain::Z => {
                    let q = a.div_rem(b);
                    if !q.1.is_zero() || !e.den.is_one() {
                        return None;
                    }
                    res = combine(&BigInt::one(), &res, &-&q.0, &e.entries);
                    w = combine(&BigInt::one(), &w, &q.0, &e.expr);
                }
                Domain::Q => {
                    // d * target = A w + res; clear res at r using e.
                    let g = a.gcd(b);
                    let alpha = b / &g;
                    let beta = &a / &g;
                    let scale = &alpha * &e.den;
                    res = combine(&scale, &res, &-(&beta * &e.den), &e.entries);
                    w = combine(&scale, &w, &beta, &e.expr);
                    d *= &scale;
                    let c = content(&res).gcd(&content(&w)).gcd(&d);
                    if !c.is_zero() && !c.is_one() {
                        divide(&mut res, &c);
                        divide(&mut w, &c);
                        d = &d / &c;
                    }
                }
            }
        }
        if d.is_negative() {
            d = -d;
            for (_, c) in w.iter_mut() {
                *c = -&*c;
            }
        }
        Some((w, d))
    }
}

/// Default margin: `n` cells on every side.
pub fn default_margin(tiles: &TileSet) -> u32 {
    tiles.n
}

/// Looks for a signed tiling of `region` inside the window with the given
/// margin. `None` means no solution exists within this window only.
pub fn solve(
    region: &CellSet,
    tiles: &TileSet,
    domain: Domain,
    margin: u32,
) -> Result<Option<Certificate>> {
    let window = Window::around(region, margin)?;
    solve_in_window(region, tiles, domain, &window)
}

pub fn solve_in_window(
    region: &CellSet,
    tiles: &TileSet,
    domain: Domain,
    window: &Window,
) -> Result<Option<Certificate>> {
    if region.is_empty() {
        return Err(Error::Precondition("region is empty".into()));
    }
    if region.iter().any(|c| !window.contains(*c)) {
        return Err(Error::RegionOutsideWindow);
    }
    let placements = enumerate_placements(tiles, window);
    let mut columns: Vec<(usize, Sparse)> = placements
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let cells = &tiles.tiles[p.tile_index].cells;
            let mut entries: Sparse = cells
                .iter()
                .map(|&(c, r)| (window.index((c + p.shift.0, r + p.shift.1)), BigInt::one()))
                .collect();
            entries.sort_by_key(|e| e.0);
            (j, entries)
        })
        .collect();
    // banded insertion order keeps fill-in local
    columns.sort_by_key(|(j, e)| (e[0].0, *j));
    let mut echelon = Echelon::new(domain);
    for (j, entries) in columns {
        echelon.insert(Column {
            entries,
            expr: vec![(j, BigInt::one())],
            den: BigInt::one(),
        });
    }
    let mut target: Sparse = window
        .cells()
        .filter(|c| region.contains(*c))
        .map(|c| (window.index(c), BigInt::one()))
        .collect();
    target.sort_by_key(|e| e.0);
    let Some((w, d)) = echelon.solve(target) else {
        return Ok(None);
    };
    let entries = w
        .into_iter()
        .map(|(j, c)| (placements[j], BigRational::new(c, d.clone())))
        .collect();
    Ok(Some(Certificate {
        tile_set: tiles.name.clone(),
        domain,
        window: *window,
        tile_cells: tiles.tiles.iter().map(|t| t.cells.clone()).collect(),
        entries,
    }))
}
