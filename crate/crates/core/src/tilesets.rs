//! Tile and region geometry, and the polynomials attached to them.
//!
//! A cell with lower-left corner `(col, row)` is the monomial `x^col * y^row`;
//! a finite cell set is the sum of its cells' monomials.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyring::{geometric, Monomial, Polynomial, ZPoly};

/// Finite set of lattice cells, `(column, row)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CellSet {
    cells: BTreeSet<(i64, i64)>,
}

impl CellSet {
    /// Translation-normalized set: min column and min row are zero.
    pub fn new(cells: impl IntoIterator<Item = (i64, i64)>) -> Self {
        CellSet::raw(cells).normalized()
    }

    /// Cells kept at their given coordinates.
    pub fn raw(cells: impl IntoIterator<Item = (i64, i64)>) -> Self {
        CellSet {
            cells: cells.into_iter().collect(),
        }
    }

    pub fn normalized(&self) -> Self {
        let Some((c0, r0)) = self.min_corner() else {
            return self.clone();
        };
        self.translate(-c0, -r0)
    }

    pub fn min_corner(&self) -> Option<(i64, i64)> {
        let c = self.cells.iter().map(|c| c.0).min()?;
        let r = self.cells.iter().map(|c| c.1).min()?;
        Some((c, r))
    }

    pub fn translate(&self, dc: i64, dr: i64) -> Self {
        CellSet {
            cells: self.cells.iter().map(|&(c, r)| (c + dc, r + dr)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: (i64, i64)) -> bool {
        self.cells.contains(&cell)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(i64, i64)> + '_ {
        self.cells.iter()
    }

    /// `(width, height)` of the bounding box; `(0, 0)` when empty.
    pub fn bounding_box(&self) -> (i64, i64) {
        let (Some(c0), Some(c1)) = (
            self.cells.iter().map(|c| c.0).min(),
            self.cells.iter().map(|c| c.0).max(),
        ) else {
            return (0, 0);
        };
        let r0 = self.cells.iter().map(|c| c.1).min().unwrap();
        let r1 = self.cells.iter().map(|c| c.1).max().unwrap();
        (c1 - c0 + 1, r1 - r0 + 1)
    }

    /// No two cells on a common line `row - col = const`.
    pub fn is_ribbon(&self) -> bool {
        let mut diagonals = BTreeSet::new();
        self.cells.iter().all(|&(c, r)| diagonals.insert(r - c))
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        CellSet {
            cells: self.cells.union(&other.cells).copied().collect(),
        }
    }

    /// Parses the region file format: one `col row` pair per line, `#` comments.
    pub fn parse_region_file(text: &str) -> Result<CellSet> {
        let mut cells = BTreeSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut it = body.split_whitespace();
            let parse = |s: Option<&str>| -> Result<i64> {
                s.ok_or_else(|| {
                    Error::parse(line, format!("line {}: expected `col row`", lineno + 1))
                })?
                .parse::<i64>()
                .map_err(|_| Error::parse(line, format!("line {}: bad integer", lineno + 1)))
            };
            let c = parse(it.next())?;
            let r = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::parse(
                    line,
                    format!("line {}: trailing fields", lineno + 1),
                ));
            }
            cells.insert((c, r));
        }
        if cells.is_empty() {
            return Err(Error::parse(text, "region file has no cells"));
        }
        Ok(CellSet::new(cells))
    }

    pub fn to_region_file(&self) -> String {
        let mut out = String::new();
        for (c, r) in &self.cells {
            out.push_str(&format!("{c} {r}\n"));
        }
        out
    }
}

/// `sum x^col * y^row` over the (normalized) cells.
pub fn cells_to_poly(cells: &CellSet) -> ZPoly {
    let mut p = ZPoly::zero();
    for &(c, r) in cells.normalized().iter() {
        p.add_term(Monomial::new(c as u32, r as u32), BigInt::from(1));
    }
    p
}

pub(crate) fn check_n(n: u32, min: u32) -> Result<()> {
    if !n.is_multiple_of(2) || n < min {
        return Err(Error::UnsupportedTileSize(n, min));
    }
    Ok(())
}

/// The four ribbon L orientations as explicit cell lists, in the order
/// `H_1, H_2, H_3, H_4`:
///
/// * vertical bar of `n-1` cells with a foot to the right at the bottom,
/// * vertical bar with a cap to the left at the top,
/// * horizontal bar with a cell above its left end,
/// * horizontal bar (raised) with a cell below its right end.
pub fn ribbon_l_cells(n: u32) -> Result<Vec<CellSet>> {
    check_n(n, 4)?;
    let top = i64::from(n) - 2;
    let bar = 0..=top;
    Ok(vec![
        CellSet::new(bar.clone().map(|r| (0, r)).chain([(1, 0)])),
        CellSet::new(bar.clone().map(|r| (1, r)).chain([(0, top)])),
        CellSet::new(bar.clone().map(|c| (c, 0)).chain([(0, 1)])),
        CellSet::new(bar.map(|c| (c, 1)).chain([(top, 0)])),
    ])
}

/// Closed forms of the four generators with `k = n/2`:
/// `H_1 = (y^(2k-1)-1)/(y-1) + x`, `H_2 = y^(2k-2) + x (y^(2k-1)-1)/(y-1)`,
/// and `H_3`, `H_4` their images under `x <-> y`.
pub fn closed_form_generators(n: u32) -> Result<Vec<ZPoly>> {
    check_n(n, 4)?;
    let k = n / 2;
    let bar_y: ZPoly = geometric(2 * k - 1, false);
    let h1 = &bar_y + &ZPoly::x();
    let h2 = ZPoly::monomial(Monomial::new(0, 2 * k - 2)) + &ZPoly::x() * &bar_y;
    let h3 = h1.swap_xy();
    let h4 = h2.swap_xy();
    Ok(vec![h1, h2, h3, h4])
}

/// `H_1..H_4` computed from the cell geometry.
pub fn ribbon_l_generators(n: u32) -> Result<Vec<ZPoly>> {
    let polys: Vec<ZPoly> = ribbon_l_cells(n)?.iter().map(cells_to_poly).collect();
    debug_assert_eq!(polys, closed_form_generators(n)?);
    Ok(polys)
}

/// The 2x2 square, `xy + x + y + 1`.
pub fn square_cells() -> CellSet {
    CellSet::new([(0, 0), (1, 0), (0, 1), (1, 1)])
}

/// One prototile with its polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub cells: CellSet,
    pub poly: ZPoly,
}

/// `T_n` (four ribbon L n-ominoes) or `T_n^+` (plus the 2x2 square).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSet {
    pub name: String,
    pub n: u32,
    pub k: u32,
    pub plus: bool,
    pub tiles: Vec<Tile>,
}

impl TileSet {
    pub fn ribbon_l(n: u32, plus: bool) -> Result<TileSet> {
        let mut tiles: Vec<Tile> = ribbon_l_cells(n)?
            .into_iter()
            .map(|cells| Tile {
                poly: cells_to_poly(&cells),
                cells,
            })
            .collect();
        if plus {
            let cells = square_cells();
            tiles.push(Tile {
                poly: cells_to_poly(&cells),
                cells,
            });
        }
        Ok(TileSet {
            name: tile_set_name(n, plus),
            n,
            k: n / 2,
            plus,
            tiles,
        })
    }

    pub fn polys(&self) -> Vec<ZPoly> {
        self.tiles.iter().map(|t| t.poly.clone()).collect()
    }
}

pub fn tile_set_name(n: u32, plus: bool) -> String {
    if plus {
        format!("T{n}+")
    } else {
        format!("T{n}")
    }
}

impl fmt::Display for TileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Named polynomials of the explicit bases, indexed by `k = n/2`.
pub mod named {
    use super::*;

    fn floor_half(k: u32) -> i64 {
        i64::from((k - 1) / 2)
    }

    fn xy_shift(c: i64) -> ZPoly {
        ZPoly::from_terms([(c, 1, 1), (-c, 0, 0)])
    }

    /// `(y^(k+1)-1)/(y-1) + x (x^(k-1)-1)/(x-1) + f xy - f`, `f = floor((k-1)/2)`.
    pub fn c1(k: u32) -> ZPoly {
        let ys: ZPoly = geometric(k + 1, false);
        let xs: ZPoly = geometric(k - 1, true);
        ys + &ZPoly::x() * &xs + xy_shift(floor_half(k))
    }

    pub fn c2(k: u32) -> ZPoly {
        c1(k).swap_xy()
    }

    /// `x^2 y + x y - x - 1`
    pub fn c3() -> ZPoly {
        ZPoly::from_terms([(1, 2, 1), (1, 1, 1), (-1, 1, 0), (-1, 0, 0)])
    }

    /// `x y^2 + x y - y - 1`
    pub fn c4() -> ZPoly {
        c3().swap_xy()
    }

    /// `(k-2) x y - (k-2)`
    pub fn c5(k: u32) -> ZPoly {
        xy_shift(i64::from(k) - 2)
    }

    /// The 2x2 square `xy + x + y + 1`.
    pub fn h5() -> ZPoly {
        ZPoly::from_terms([(1, 1, 1), (1, 1, 0), (1, 0, 1), (1, 0, 0)])
    }

    /// `y^2 + 2y + 1`
    pub fn d1() -> ZPoly {
        ZPoly::from_terms([(1, 0, 2), (2, 0, 1), (1, 0, 0)])
    }

    fn m(k: u32) -> i64 {
        let k = i64::from(k);
        (k - 2) * (k - 1) - 1
    }

    /// `[(k-2)(k-1) - 1] y + x + (k-2)(k-1)`
    pub fn d2(k: u32) -> ZPoly {
        let ki = i64::from(k);
        ZPoly::from_terms([(m(k), 0, 1), (1, 1, 0), ((ki - 2) * (ki - 1), 0, 0)])
    }

    /// `k (k-2) (y + 1)`
    pub fn d3(k: u32) -> ZPoly {
        let c = i64::from(k) * (i64::from(k) - 2);
        ZPoly::from_terms([(c, 0, 1), (c, 0, 0)])
    }

    /// `(k-2)(k-1) - 1`, the recurring coefficient of the `T_n^+` basis.
    pub fn plus_coefficient(k: u32) -> i64 {
        m(k)
    }
}

/// The explicit Groebner bases over `Z`.
///
/// * `T_4`: `x^2 + x + y + 1`, `y^2 + x + y + 1`
/// * `T_6`: `x^3 + x^2 + x + y^2 + y + 1`, its mirror, `xy - 1`
/// * `T_2k`, `k >= 4`: `C_1(k) .. C_5(k)`
/// * `T_4^+`: `y^2 + 2y + 1`, `x - y`
/// * `T_2k^+`, `k >= 3`: `D_1(k), D_2(k), D_3(k)`
pub fn paper_basis(n: u32, plus: bool) -> Result<Vec<ZPoly>> {
    check_n(n, 4)?;
    let k = n / 2;
    let basis = match (k, plus) {
        (2, false) => vec![
            ZPoly::from_terms([(1, 2, 0), (1, 1, 0), (1, 0, 1), (1, 0, 0)]),
            ZPoly::from_terms([(1, 0, 2), (1, 1, 0), (1, 0, 1), (1, 0, 0)]),
        ],
        (3, false) => {
            let c1 = ZPoly::from_terms([
                (1, 3, 0),
                (1, 2, 0),
                (1, 1, 0),
                (1, 0, 2),
                (1, 0, 1),
                (1, 0, 0),
            ]);
            vec![
                c1.clone(),
                c1.swap_xy(),
                ZPoly::from_terms([(1, 1, 1), (-1, 0, 0)]),
            ]
        }
        (_, false) => vec![
            named::c1(k),
            named::c2(k),
            named::c3(),
            named::c4(),
            named::c5(k),
        ],
        (2, true) => vec![named::d1(), ZPoly::from_terms([(1, 1, 0), (-1, 0, 1)])],
        (_, true) => vec![named::d1(), named::d2(k), named::d3(k)],
    };
    Ok(basis)
}

/// The signed tiles `B = xy - 1` and `D = y H_1 - C_4`, a vertical bar of
/// `n` cells glued to `-yB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxTiles {
    pub b: ZPoly,
    pub d: ZPoly,
}

pub fn aux_tiles(n: u32) -> Result<AuxTiles> {
    check_n(n, 6)?;
    let b = ZPoly::from_terms([(1, 1, 1), (-1, 0, 0)]);
    let gens = ribbon_l_generators(n)?;
    let d = &ZPoly::y() * &gens[0] - named::c4();
    debug_assert_eq!(d, geometric::<BigInt>(n, false) - &ZPoly::y() * &b);
    Ok(AuxTiles { b, d })
}

/// The L n-omino (bar along the x-axis, one cell above its left end) with
/// every cell blown up to a `factor x factor` block.
pub fn inflated_l_region(n: u32, factor: u32) -> Result<CellSet> {
    check_n(n, 4)?;
    if factor == 0 {
        return Err(Error::Precondition(
            "inflation factor must be positive".into(),
        ));
    }
    let f = i64::from(factor);
    let arm = (i64::from(n) - 1) * f;
    let mut cells = Vec::new();
    for c in 0..arm {
        for r in 0..f {
            cells.push((c, r));
        }
    }
    for c in 0..f {
        for r in f..2 * f {
            cells.push((c, r));
        }
    }
    Ok(CellSet::new(cells))
}

/// `w x h` rectangle: `w` columns, `h` rows.
pub fn rect_region(w: u32, h: u32) -> Result<CellSet> {
    if w == 0 || h == 0 {
        return Err(Error::Precondition(
            "rectangle sides must be positive".into(),
        ));
    }
    Ok(CellSet::new(
        (0..i64::from(w)).flat_map(|c| (0..i64::from(h)).map(move |r| (c, r))),
    ))
}

/// `(x^w - 1)/(x - 1) * (y^h - 1)/(y - 1)`.
pub fn rect_poly(w: u32, h: u32) -> ZPoly {
    &geometric::<BigInt>(w, true) * &geometric::<BigInt>(h, false)
}

/// Region named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionSpec {
    Rect { w: u32, h: u32 },
    InflatedL { n: u32, factor: u32 },
    File(String),
}

impl std::str::FromStr for RegionSpec {
    type Err = Error;

    /// `rect:WxH`, `inflatedL:n:factor`, `file:PATH` or a bare path.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(dims) = s.strip_prefix("rect:") {
            let (w, h) = dims
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::parse(s, "expected rect:WxH"))?;
            let w = w.parse().map_err(|_| Error::parse(s, "bad width"))?;
            let h = h.parse().map_err(|_| Error::parse(s, "bad height"))?;
            if w == 0 || h == 0 {
                return Err(Error::parse(s, "rectangle sides must be positive"));
            }
            return Ok(RegionSpec::Rect { w, h });
        }
        if let Some(rest) = s.strip_prefix("inflatedL:") {
            let (n, f) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(s, "expected inflatedL:n:factor"))?;
            let n = n.parse().map_err(|_| Error::parse(s, "bad n"))?;
            let factor = f.parse().map_err(|_| Error::parse(s, "bad factor"))?;
            if factor == 0 {
                return Err(Error::parse(s, "factor must be positive"));
            }
            return Ok(RegionSpec::InflatedL { n, factor });
        }
        let path = s.strip_prefix("file:").unwrap_or(s);
        if path.is_empty() || path.contains(':') && !std::path::Path::new(path).exists() {
            return Err(Error::parse(s, "unknown region spec"));
        }
        Ok(RegionSpec::File(path.to_string()))
    }
}

impl RegionSpec {
    pub fn cells(&self) -> Result<CellSet> {
        match self {
            RegionSpec::Rect { w, h } => rect_region(*w, *h),
            RegionSpec::InflatedL { n, factor } => inflated_l_region(*n, *factor),
            RegionSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::parse(path, format!("cannot read region file: {e}")))?;
                CellSet::parse_region_file(&text)
            }
        }
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::Rect { w, h } => write!(f, "rect:{w}x{h}"),
            RegionSpec::InflatedL { n, factor } => write!(f, "inflatedL:{n}:{factor}"),
            RegionSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

/// `Polynomial` helper used by the deciders: the region polynomial.
pub fn region_poly(region: &CellSet) -> Polynomial<BigInt> {
    cells_to_poly(region)
}
