//! Bigraded Betti numbers and explicit syzygies.

mod hilbert_burch;
mod mcomplex;
mod resolution;
mod syzygy;
mod tor;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde::Deserialize;

use crate::bipoly::BiDegree;

pub use hilbert_burch::{hb_kernel, DEFAULT_SIGNS, degree3_syzygies, degree3_syzygies_with_report, HilbertBurchData, Degree3Syzygies};
pub use mcomplex::{
    first_betti_h1, first_betti_h1_at, h1_side_kernel, mcomplex_dims, mcomplex_sums, Var,
};
pub use resolution::{verify_resolution, ResolutionComplex, ResolutionReport};
pub use syzygy::{
    minor_syzygy, independence_rank, koszul_syzygies, minor_syzygy_matrices, MinorSyzygyMatrices, SyzygyVector,
};
pub use tor::{betti_table, tor_dims, QuotientStrand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Index i counts the i-th syzygies of I_W; index 0 holds the generators.
    Ideal,
    /// Index i is dim Tor_i(R/I_W, K).
    Quotient,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Ideal => "ideal",
            Convention::Quotient => "quotient",
        }
    }
}

/// Sparse (i, a) -> multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub convention: Convention,
    entries: BTreeMap<(usize, BiDegree), usize>,
    pub warning: Option<String>,
}

impl BettiTable {
    pub fn new(convention: Convention) -> Self {
        BettiTable {
            convention,
            entries: BTreeMap::new(),
            warning: None,
        }
    }

    pub fn add(&mut self, i: usize, a: BiDegree, m: usize) {
        if m > 0 {
            *self.entries.entry((i, a)).or_insert(0) += m;
        }
    }

    pub fn get(&self, i: usize, a: BiDegree) -> usize {
        self.entries.get(&(i, a)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, BiDegree, usize)> + '_ {
        self.entries.iter().map(|(&(i, a), &m)| (i, a, m))
    }

    /// Nonzero entries at index i, sorted by bidegree.
    pub fn row(&self, i: usize) -> BTreeMap<BiDegree, usize> {
        self.entries()
            .filter(|&(j, _, _)| j == i)
            .map(|(_, a, m)| (a, m))
            .collect()
    }

    pub fn total(&self, i: usize) -> usize {
        self.row(i).values().sum()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    pub fn to_convention(&self, c: Convention) -> BettiTable {
        let mut out = BettiTable::new(c);
        out.warning = self.warning.clone();
        match (self.convention, c) {
            (x, y) if x == y => out.entries = self.entries.clone(),
            (Convention::Quotient, Convention::Ideal) => {
                for (i, a, m) in self.entries() {
                    if i > 0 {
                        out.add(i - 1, a, m);
                    }
                }
            }
            _ => {
                out.add(0, BiDegree::ZERO, 1);
                for (i, a, m) in self.entries() {
                    out.add(i + 1, a, m);
                }
            }
        }
        out
    }

    /// First syzygies other than the three Koszul ones in degree 2d.
    pub fn non_koszul_first(&self, d: BiDegree) -> BTreeMap<BiDegree, usize> {
        let t = self.to_convention(Convention::Ideal);
        let mut row = t.row(1);
        if let Some(m) = row.get_mut(&(2 * d)) {
            *m = m.saturating_sub(3);
        }
        row.retain(|_, m| *m > 0);
        row
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<[i64; 4]> = self
            .entries()
            .map(|(i, a, m)| [i as i64, a.a1, a.a2, m as i64])
            .collect();
        let mut st = s.serialize_struct("BettiTable", 3)?;
        st.serialize_field("convention", self.convention.name())?;
        st.serialize_field("entries", &entries)?;
        if let Some(w) = &self.warning {
            st.serialize_field("warning", w)?;
        }
        st.end()
    }
}

/// One line per homological index: `i: (a1,a2)^m ...`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "convention: {}", self.convention.name())?;
        for i in 0..=self.max_index().unwrap_or(0) {
            let row = self.row(i);
            if row.is_empty() {
                continue;
            }
            let cells: Vec<String> = row
                .iter()
                .map(|(a, &m)| if m == 1 { a.to_string() } else { format!("{a}^{m}") })
                .collect();
            writeln!(f, "{i}: {}", cells.join(" "))?;
        }
        if let Some(w) = &self.warning {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
