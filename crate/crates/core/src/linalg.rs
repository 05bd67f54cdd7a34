//! Exact sparse linear algebra over the rationals.
//!
//! Everything here is exact: vectors are sorted `(index, value)` lists and
//! elimination never rounds. Pivots are the first (smallest) index of a row.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::poly::Coeff;

/// Sparse vector with strictly increasing indices and nonzero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(Vec<(usize, Coeff)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Coeff::one())])
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Coeff)>) -> Self {
        let mut v: Vec<(usize, Coeff)> = entries.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Coeff)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec(out)
    }

    pub fn entries(&self) -> &[(usize, Coeff)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<(usize, &Coeff)> {
        self.0.first().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Coeff {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Coeff::zero(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Coeff) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            let ia = self.0.get(a).map(|(i, _)| *i);
            let ib = other.0.get(b).map(|(i, _)| *i);
            match (ia, ib) {
                (Some(x), Some(y)) if x == y => {
                    let s = &self.0[a].1 + &other.0[b].1 * c;
                    if !s.is_zero() {
                        out.push((x, s));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(self.0[a].clone());
                    a += 1;
                }
                (Some(_), None) => {
                    out.push(self.0[a].clone());
                    a += 1;
                }
                (_, Some(y)) => {
                    out.push((y, &other.0[b].1 * c));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec(out)
    }

    /// Linear combination `Σ coeffs[i]·vectors[i]`.
    pub fn combine(vectors: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
        coeffs.0.iter().fold(SparseVec::new(), |acc, (i, c)| {
            acc.add_scaled(&vectors[*i], c)
        })
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    hist: SparseVec,
}

/// Incremental echelon form of a span, optionally recording for every row
/// how it was obtained from the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
    inserted: usize,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: SparseVec,
    /// `v = remainder + Σ coords[t]·inserted_t`.
    pub coords: SparseVec,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Fully reduces `v`: on return no entry of the remainder sits at a pivot.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut rem = v.clone();
        let mut coords = SparseVec::new();
        let mut cursor = 0;
        loop {
            let hit = rem.0[cursor.min(rem.0.len())..]
                .iter()
                .position(|(i, _)| self.pivots.contains_key(i));
            let Some(off) = hit else { break };
            let k = cursor + off;
            let (idx, c) = rem.0[k].clone();
            let row = &self.rows[self.pivots[&idx]];
            let factor = -(c / row.vec.lead().expect("nonzero row").1);
            rem = rem.add_scaled(&row.vec, &factor);
            coords = coords.add_scaled(&row.hist, &-factor.clone());
            cursor = k;
        }
        Reduction {
            remainder: rem,
            coords,
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_zero()
    }

    /// Inserts `v` as input vector number `self.inserted()`. Returns `None`
    /// when `v` was independent, or `Some(kernel_relation)` with
    /// `Σ rel[t]·inserted_t = 0` and `rel[new] = 1` when it was dependent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        // v - Σ coords·inserted = remainder
        let hist = SparseVec::unit(id).add_scaled(&red.coords, &-Coeff::one());
        if red.remainder.is_zero() {
            return Some(hist);
        }
        let pivot = red.remainder.lead().expect("nonzero").0;
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row {
            vec: red.remainder,
            hist,
        });
        None
    }

    /// Inserts `v` only if it is independent; returns whether it was.
    pub fn try_extend(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v);
        if red.remainder.is_zero() {
            return false;
        }
        let id = self.inserted;
        self.inserted += 1;
        let hist = SparseVec::unit(id).add_scaled(&red.coords, &-Coeff::one());
        let pivot = red.remainder.lead().expect("nonzero").0;
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row {
            vec: red.remainder,
            hist,
        });
        true
    }
}

/// Kernel of the linear map sending basis vector `j` to `columns[j]`.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    columns.iter().filter_map(|c| ech.insert(c)).collect()
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.try_extend(v);
    }
    ech.rank()
}

/// Some `x` with `Σ x_j·columns[j] = target`, if one exists.
pub fn solve(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut ech = Echelon::new();
    for c in columns {
        ech.insert(c);
    }
    let red = ech.reduce(target);
    red.remainder.is_zero().then_some(red.coords)
}

/// Reduced row echelon basis of the span of `vectors`, rows sorted by pivot,
/// each pivot normalised to one.
pub fn rref(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for row in &rows {
            let (p, _) = row.lead().expect("nonzero");
            let c = r.get(p);
            if !c.is_zero() {
                r = r.add_scaled(row, &-c);
            }
        }
        if let Some((p, c)) = r.lead() {
            let c = c.clone();
            r = r.scale(&c.recip());
            rows = rows
                .into_iter()
                .map(|row| {
                    let c = row.get(p);
                    if c.is_zero() {
                        row
                    } else {
                        row.add_scaled(&r, &-c)
                    }
                })
                .collect();
            rows.push(r);
        }
    }
    rows.sort_by_key(|r| r.lead().expect("nonzero").0);
    rows
}
