//! Truncated Poincaré series of `R = S/J` and Serre's upper bound.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::{GradedPiece, QuotientRing};
use crate::linalg::{self, Echelon, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Poincare,
    SerreBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTruncation {
    pub kind: SeriesKind,
    /// Coefficients of `t^0, …, t^N`; shorter when `complete` is false.
    pub coefficients: Vec<u64>,
    /// False when a step budget stopped the computation early.
    pub complete: bool,
}

impl SeriesTruncation {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Expands `(1+t)^n / (1 - Σ_{i≥1} h_i t^{i+1})` to order `N`, where
/// `homology[i] = dim_K H_i(x; R)`. `homology[0]` is ignored.
pub fn serre_bound_series(
    nvars: usize,
    homology: &[usize],
    order: usize,
) -> Result<SeriesTruncation> {
    let overflow = || Error::Overflow("Serre bound coefficient");
    let mut numer = vec![0i128; order + 1];
    for (i, c) in numer.iter_mut().enumerate() {
        *c = binomial(nvars, i).ok_or_else(overflow)?;
    }
    // q(t) = Σ h_i t^{i+1}; P = numer + q·P
    let mut out = vec![0i128; order + 1];
    for d in 0..=order {
        let mut acc = numer[d];
        for (i, &h) in homology.iter().enumerate().skip(1) {
            if i + 1 > d {
                break;
            }
            let term = (h as i128)
                .checked_mul(out[d - i - 1])
                .ok_or_else(overflow)?;
            acc = acc.checked_add(term).ok_or_else(overflow)?;
        }
        out[d] = acc;
    }
    let coefficients = out
        .into_iter()
        .map(|c| u64::try_from(c).map_err(|_| overflow()))
        .collect::<Result<_>>()?;
    Ok(SeriesTruncation {
        kind: SeriesKind::SerreBound,
        coefficients,
        complete: true,
    })
}

fn binomial(n: usize, k: usize) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)? / (i as i128 + 1);
    }
    Some(acc)
}

/// A graded free `R`-module given by the degrees of its basis.
struct FreeR {
    shifts: Vec<u32>,
}

/// Coordinates of `(F)_d`: basis element `j` contributes the standard
/// monomials of `R_{d - shift_j}`.
struct Layout {
    blocks: Vec<(usize, usize, Arc<GradedPiece>)>,
    dim: usize,
}

impl Layout {
    fn new(q: &QuotientRing, f: &FreeR, d: u32) -> Layout {
        let mut blocks = Vec::new();
        let mut off = 0;
        for (j, &s) in f.shifts.iter().enumerate() {
            if s > d {
                continue;
            }
            let piece = q.piece(d - s);
            if piece.dim() == 0 {
                continue;
            }
            let n = piece.dim();
            blocks.push((j, off, piece));
            off += n;
        }
        Layout { blocks, dim: off }
    }

    fn block_of(&self, idx: usize) -> &(usize, usize, Arc<GradedPiece>) {
        let b = self.blocks.partition_point(|(_, off, _)| *off <= idx) - 1;
        &self.blocks[b]
    }

    fn offset(&self, j: usize) -> Option<usize> {
        self.blocks
            .binary_search_by_key(&j, |(g, _, _)| *g)
            .ok()
            .map(|b| self.blocks[b].1)
    }
}

/// `m · v` for a monomial `m`, taking `v` from `src` to `dst`.
fn mul_monomial(
    q: &QuotientRing,
    src: &Layout,
    dst: &Layout,
    v: &SparseVec,
    m: &crate::poly::Monomial,
) -> SparseVec {
    let mut entries = Vec::new();
    for (idx, c) in v.entries() {
        let (j, off, piece) = src.block_of(*idx);
        let prod = piece.basis()[idx - off].mul(m);
        let Some(dst_off) = dst.offset(*j) else {
            continue;
        };
        for (k, x) in q.monomial_coords(&prod).entries() {
            entries.push((dst_off + k, x * c));
        }
    }
    SparseVec::from_entries(entries)
}

/// Degree bound for minimal generators of `F_{i+1}` given `F_i`.
fn window(q: &QuotientRing, f: &FreeR, i: usize, top: Option<u32>) -> u32 {
    let w = q.ring().weights().iter().copied().max().unwrap_or(1);
    match top {
        // every kernel element needs a nonzero component
        Some(t) => f.shifts.iter().copied().max().unwrap_or(0) + t.max(w),
        None => {
            let g = q
                .groebner()
                .generators()
                .iter()
                .filter_map(|v| v.lead().map(|(_, m, _)| m.degree()))
                .max()
                .unwrap_or(1)
                .max(1);
            (i as u32 + 1) * w + i as u32 * (g - 1)
        }
    }
}

/// `dim_K Tor_i^R(K, K)` for `i ≤ order`, by building the minimal graded
/// free resolution of `K` over `R` one internal degree at a time.
///
/// `budget` caps the number of matrix columns processed; when it runs out
/// the result holds the coefficients finished so far and is marked
/// incomplete.
pub fn poincare_truncation(
    q: &QuotientRing,
    order: usize,
    budget: Option<u64>,
) -> SeriesTruncation {
    let top = q.top_degree();
    let mut coefficients = vec![1u64];
    let mut spent: u64 = 0;
    // F_i with the images of its basis in coordinates of (F_{i-1})_{shift}
    let mut module = FreeR { shifts: vec![0] };
    let mut images: Vec<SparseVec> = Vec::new();
    let mut previous = FreeR { shifts: Vec::new() };
    for i in 0..order {
        let max_d = window(q, &module, i, top);
        let mut kernels: Vec<Vec<SparseVec>> = Vec::with_capacity(max_d as usize + 1);
        let mut layouts: Vec<Layout> = Vec::with_capacity(max_d as usize + 1);
        let mut next_shifts = Vec::new();
        let mut next_images = Vec::new();
        let sources: HashMap<u32, Layout> = module
            .shifts
            .iter()
            .map(|&s| (s, Layout::new(q, &previous, s)))
            .collect();
        for d in 0..=max_d {
            let layout = Layout::new(q, &module, d);
            let kernel = if i == 0 {
                if d == 0 {
                    Vec::new()
                } else {
                    (0..layout.dim).map(SparseVec::unit).collect()
                }
            } else {
                let target = Layout::new(q, &previous, d);
                let columns: Vec<SparseVec> = (0..layout.dim)
                    .map(|idx| {
                        let (j, off, piece) = layout.block_of(idx);
                        let src = &sources[&module.shifts[*j]];
                        mul_monomial(q, src, &target, &images[*j], &piece.basis()[idx - off])
                    })
                    .collect();
                spent += columns.len() as u64;
                linalg::kernel(&columns)
            };
            if budget.is_some_and(|b| spent > b) {
                return SeriesTruncation {
                    kind: SeriesKind::Poincare,
                    coefficients,
                    complete: false,
                };
            }
            // decomposables: Σ_v x_v · ker_{d - a_v}
            let mut ech = Echelon::new();
            for (v, &a) in q.ring().weights().iter().enumerate() {
                if a > d {
                    continue;
                }
                let e = (d - a) as usize;
                let xv = q.ring().var_monomial(v);
                for z in &kernels[e] {
                    ech.try_extend(&mul_monomial(q, &layouts[e], &layout, z, &xv));
                }
            }
            for z in &kernel {
                if ech.try_extend(z) {
                    next_shifts.push(d);
                    next_images.push(z.clone());
                }
            }
            kernels.push(kernel);
            layouts.push(layout);
        }
        coefficients.push(next_shifts.len() as u64);
        previous = module;
        module = FreeR {
            shifts: next_shifts,
        };
        images = next_images;
    }
    SeriesTruncation {
        kind: SeriesKind::Poincare,
        coefficients,
        complete: true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesComparison {
    pub poincare: SeriesTruncation,
    pub bound: SeriesTruncation,
    pub equal: bool,
    /// First index where the two series differ.
    pub first_difference: Option<usize>,
}

impl SeriesComparison {
    pub fn new(poincare: SeriesTruncation, bound: SeriesTruncation) -> Self {
        let first_difference = poincare
            .coefficients
            .iter()
            .zip(&bound.coefficients)
            .position(|(a, b)| a != b);
        let equal = poincare.complete && first_difference.is_none();
        SeriesComparison {
            poincare,
            bound,
            equal,
            first_difference,
        }
    }
}

/// Compares the Poincaré series of `R` with Serre's bound built from the
/// total Betti numbers `β_i(S/J) = dim_K H_i(x; R)`.
pub fn golod_by_series(
    q: &QuotientRing,
    betti_totals: &[usize],
    order: usize,
    budget: Option<u64>,
) -> Result<SeriesComparison> {
    let bound = serre_bound_series(q.nvars(), betti_totals, order)?;
    let poincare = poincare_truncation(q, order, budget);
    Ok(SeriesComparison::new(poincare, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, RingSpec};

    fn quotient(names: &[&str], gens: &[&str]) -> QuotientRing {
        let r = RingSpec::standard(names);
        let g: Vec<Polynomial> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        QuotientRing::new(&r, &g).unwrap()
    }

    #[test]
    fn serre_bound_examples() {
        let s = serre_bound_series(2, &[1, 3, 2], 5).unwrap();
        assert_eq!(s.coefficients, vec![1, 2, 4, 8, 16, 32]);
        let s = serre_bound_series(2, &[1, 2, 1], 5).unwrap();
        assert_eq!(s.coefficients, vec![1, 2, 3, 5, 8, 13]);
        let s = serre_bound_series(3, &[1], 5).unwrap();
        assert_eq!(s.coefficients, vec![1, 3, 3, 1, 0, 0]);
    }

    #[test]
    fn poincare_examples() {
        let q = quotient(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(
            poincare_truncation(&q, 5, None).coefficients,
            vec![1, 2, 4, 8, 16, 32]
        );
        let q = quotient(&["x", "y"], &["x^2", "y^2"]);
        assert_eq!(
            poincare_truncation(&q, 5, None).coefficients,
            vec![1, 2, 3, 4, 5, 6]
        );
        let q = quotient(&["x", "y", "z"], &[]);
        assert_eq!(
            poincare_truncation(&q, 5, None).coefficients,
            vec![1, 3, 3, 1, 0, 0]
        );
        // hypersurface: (1+t)^2 / (1 - t^2)
        let q = quotient(&["x", "y"], &["x^2 + y^2"]);
        assert_eq!(
            poincare_truncation(&q, 4, None).coefficients,
            vec![1, 2, 2, 2, 2]
        );
    }

    #[test]
    fn comparison_reports_first_difference() {
        let q = quotient(&["x", "y"], &["x^2", "y^2"]);
        let c = golod_by_series(&q, &[1, 2, 1], 5, None).unwrap();
        assert!(!c.equal);
        assert_eq!(c.first_difference, Some(3));
    }

    #[test]
    fn budget_marks_incomplete() {
        let q = quotient(&["x", "y"], &["x^2", "y^2"]);
        let s = poincare_truncation(&q, 5, Some(3));
        assert!(!s.complete);
        assert!(s.coefficients.len() < 6);
    }
}
