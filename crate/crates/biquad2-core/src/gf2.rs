//! Dense linear algebra over GF(2) on bit rows.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        for (i, b) in bits.into_iter().enumerate() {
            if i % 64 == 0 {
                words.push(0);
            }
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        BitRow { words }
    }

    /// Bits from ±1 entries, with −1 ↦ 1.
    pub fn from_signs(signs: &[i8]) -> Self {
        BitRow::from_bits(signs.iter().map(|&s| s == -1))
    }

    pub fn get(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn set(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, o: &BitRow) {
        if self.words.len() < o.words.len() {
            self.words.resize(o.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Row-reduction state: pivot rows together with the combination of input
/// rows each one records.
struct Echelon {
    pivots: Vec<(usize, BitRow, BitRow)>,
}

impl Echelon {
    fn reduce(&self, mut row: BitRow, mut tag: BitRow) -> (BitRow, BitRow) {
        for (col, prow, ptag) in &self.pivots {
            if row.get(*col) {
                row.xor_with(prow);
                tag.xor_with(ptag);
            }
        }
        (row, tag)
    }
}

pub fn rank(rows: &[BitRow]) -> usize {
    let mut ech = Echelon { pivots: Vec::new() };
    for r in rows {
        let (red, _) = ech.reduce(r.clone(), BitRow::zeros(0));
        if let Some(c) = red.lowest() {
            ech.pivots.push((c, red, BitRow::zeros(0)));
        }
    }
    ech.pivots.len()
}

/// A basis of the relations Σ x_i·row_i = 0. Relation k contains a row
/// index `pivot_k` that occurs in no other returned relation.
pub fn left_kernel(rows: &[BitRow]) -> Vec<(usize, BitRow)> {
    let mut ech = Echelon { pivots: Vec::new() };
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut tag = BitRow::zeros(rows.len());
        tag.set(i);
        let (red, tag) = ech.reduce(r.clone(), tag);
        match red.lowest() {
            Some(c) => ech.pivots.push((c, red, tag)),
            None => out.push((i, tag)),
        }
    }
    out
}
