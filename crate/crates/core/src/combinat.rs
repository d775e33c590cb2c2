use serde::Serialize;

use crate::bipoly::{bd, BiDegree};

pub fn pos_part(c: i64) -> i64 {
    c.max(0)
}

pub fn neg_part(c: i64) -> i64 {
    (-c).max(0)
}

fn dim_r(b: BiDegree) -> i64 {
    if b.is_nonneg() {
        (b.a1 + 1) * (b.a2 + 1)
    } else {
        0
    }
}

pub fn dom_d(d: BiDegree, a: BiDegree) -> i64 {
    pos_part(a.a1 - 3 * d.a1 + 1) * pos_part(3 * d.a2 - a.a2 - 1)
        + pos_part(3 * d.a1 - a.a1 - 1) * pos_part(a.a2 - 3 * d.a2 + 1)
}

pub fn cod_d(d: BiDegree, a: BiDegree) -> i64 {
    pos_part(a.a1 - 2 * d.a1 + 1) * pos_part(2 * d.a2 - a.a2 - 1)
        + pos_part(2 * d.a1 - a.a1 - 1) * pos_part(a.a2 - 2 * d.a2 + 1)
}

/// dom_d(a) - 3 cod_d(a), unclamped.
pub fn nd_signed(d: BiDegree, a: BiDegree) -> i64 {
    dom_d(d, a) - 3 * cod_d(d, a)
}

/// Expected generic dim (H1)_a: (dom_d(a) - 3 cod_d(a))_+.
pub fn nd(d: BiDegree, a: BiDegree) -> i64 {
    pos_part(nd_signed(d, a))
}

/// Euler characteristic of the degree-a strand of the Koszul complex on f,
/// by inclusion-exclusion.
pub fn chi(d: BiDegree, a: BiDegree) -> i64 {
    const BINOM: [i64; 4] = [1, 3, 3, 1];
    (0..4)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * BINOM[k as usize] * dim_r(a - k * d)
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RegionTag {
    A1,
    A2,
    A3,
    A4,
    Gap,
}

/// First matching region predicate, with its polynomial value.
pub fn chi_region(d: BiDegree, a: BiDegree) -> (RegionTag, Option<i64>) {
    let (a1, a2) = (a.a1, a.a2);
    let (d1, d2) = (d.a1, d.a2);
    let p0 = (a1 + 1) * (a2 + 1);
    let p1 = 3 * (a1 - d1 + 1) * (a2 - d2 + 1);
    let p2 = 3 * (a1 - 2 * d1 + 1) * (a2 - 2 * d2 + 1);
    if a1 < d1 || a2 < d2 {
        (RegionTag::A1, Some(p0))
    } else if (d1 <= a1 && a1 < 2 * d1 && d2 <= a2) || (d1 <= a1 && d2 <= a2 && a2 < 2 * d2) {
        (RegionTag::A2, Some(p0 - p1))
    } else if (2 * d1 <= a1 && a1 < 3 * d1 && 2 * d2 <= a2)
        || (a1 < 3 * d1 && 2 * d2 <= a2 && a2 < 3 * d2)
    {
        (RegionTag::A3, Some(p0 - p1 + p2))
    } else if 3 * d1 <= a1 && 3 * d2 <= a2 {
        (RegionTag::A4, Some(0))
    } else {
        (RegionTag::Gap, None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Pos,
    Neg,
    Zero,
}

pub fn chi_sign(d: BiDegree, a: BiDegree) -> Sign {
    match chi(d, a).signum() {
        1 => Sign::Pos,
        -1 => Sign::Neg,
        _ => Sign::Zero,
    }
}

/// Values on [0, bx], indexed by (a1, a2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid<T> {
    pub bx: BiDegree,
    data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn new(bx: BiDegree, fill: T) -> Self {
        let n = ((bx.a1 + 1) * (bx.a2 + 1)).max(0) as usize;
        Grid {
            bx,
            data: vec![fill; n],
        }
    }

    pub fn from_fn(bx: BiDegree, mut f: impl FnMut(BiDegree) -> T) -> Self {
        let mut data = Vec::new();
        for a1 in 0..=bx.a1 {
            for a2 in 0..=bx.a2 {
                data.push(f(bd(a1, a2)));
            }
        }
        Grid { bx, data }
    }

    pub fn contains(&self, a: BiDegree) -> bool {
        a.is_nonneg() && a.le(self.bx)
    }

    fn idx(&self, a: BiDegree) -> usize {
        assert!(self.contains(a), "{a} outside grid {}", self.bx);
        (a.a1 * (self.bx.a2 + 1) + a.a2) as usize
    }

    pub fn get(&self, a: BiDegree) -> T {
        self.data[self.idx(a)].clone()
    }

    pub fn set(&mut self, a: BiDegree, v: T) {
        let i = self.idx(a);
        self.data[i] = v;
    }

    pub fn points(&self) -> Vec<BiDegree> {
        self.bx.box_points()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Grid<U> {
        Grid {
            bx: self.bx,
            data: self.data.iter().map(f).collect(),
        }
    }
}

pub struct SeriesGrids {
    pub chi: Grid<i64>,
    pub plus: Grid<i64>,
    pub minus: Grid<i64>,
}

pub fn series_coeffs(d: BiDegree, bx: BiDegree) -> SeriesGrids {
    let chi = Grid::from_fn(bx, |a| chi(d, a));
    SeriesGrids {
        plus: chi.map(|&c| pos_part(c)),
        minus: chi.map(|&c| neg_part(c)),
        chi,
    }
}

pub fn nd_grid(d: BiDegree, bx: BiDegree) -> Grid<i64> {
    Grid::from_fn(bx, |a| nd(d, a))
}

/// Text layout: rows a2 descending, columns a1 ascending, each column
/// left-aligned to its widest entry.
pub fn render_grid(g: &Grid<i64>) -> String {
    let cols = (g.bx.a1 + 1).max(0) as usize;
    let cells = |a2: i64| -> Vec<String> {
        (0..cols as i64).map(|a1| g.get(bd(a1, a2)).to_string()).collect()
    };
    let mut widths = vec![0usize; cols];
    for a2 in 0..=g.bx.a2 {
        for (w, c) in widths.iter_mut().zip(cells(a2)) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    for a2 in (0..=g.bx.a2).rev() {
        let row: Vec<String> = cells(a2)
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str("      | ");
        out.push_str(&row.join(" "));
        out.push_str(" |\n");
    }
    out
}
