//! Jacobian determinants and the Koszul cycles assembled from them.
//!
//! For a chain `j_1 → j_2 → ⋯ → j_l → 1` through the matrices of a minimal
//! resolution, the entries `α^{(l)}_{j_1 j_2}, …, α^{(1)}_{j_l 1}` give an
//! `l × l` Jacobian for every set of variables `σ`. The cycle attached to
//! the basis element `f_{l,j_1}` is
//!
//! ```text
//! z = Σ_σ a_σ Σ_chains c_chain · ∂(α…)/∂(x_σ) · e_σ
//! ```
//!
//! The chain coefficients `c` are found by solving `∂z = 0` in `K(R)`
//! degree by degree.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::{subsets, KoszulElement, QuotientRing};
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{rat, Coeff, Polynomial, RingSpec};
use crate::resolution::Resolution;

/// `det(∂ entries_s / ∂ x_{vars_t})`.
pub fn jacobian_determinant(
    ring: &RingSpec,
    entries: &[Polynomial],
    vars: &[usize],
) -> Result<Polynomial> {
    if entries.is_empty() || entries.len() != vars.len() {
        return Err(Error::SizeMismatch(format!(
            "{} entries for {} variables",
            entries.len(),
            vars.len()
        )));
    }
    if vars.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(format!(
            "variables {vars:?} not strictly increasing"
        )));
    }
    let matrix = entries
        .iter()
        .map(|f| {
            vars.iter()
                .map(|&i| ring.partial_derivative(f, i))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(determinant(ring, &matrix))
}

/// Laplace expansion along the first row; matrices here are at most `n × n`.
fn determinant(ring: &RingSpec, m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        size => {
            let mut acc = ring.zero();
            for col in 0..size {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(ring, &minor);
                acc = if col % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// One summand of the product rule for a Jacobian whose last entry is a
/// product `g_1⋯g_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRuleTerm {
    /// Which factor was differentiated.
    pub factor: usize,
    /// Jacobian with the last entry replaced by that factor.
    pub jacobian: Polynomial,
    /// Product of the remaining `k - 1` factors.
    pub cofactor: Polynomial,
}

/// Expands `∂(*,…,*, g_1⋯g_k)/∂(x_σ)` as `Σ_s ∂(*,…,*, g_s)/∂(x_σ) · Π_{t≠s} g_t`.
pub fn jacobian_product_rule_expand(
    ring: &RingSpec,
    leading: &[Polynomial],
    factors: &[Polynomial],
    vars: &[usize],
) -> Result<Vec<ProductRuleTerm>> {
    if factors.is_empty() {
        return Err(Error::ExponentTooSmall { min: 1, got: 0 });
    }
    (0..factors.len())
        .map(|s| {
            let mut entries = leading.to_vec();
            entries.push(factors[s].clone());
            let jacobian = jacobian_determinant(ring, &entries, vars)?;
            let cofactor = factors
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != s)
                .fold(ring.constant(Coeff::one()), |acc, (_, g)| &acc * g);
            Ok(ProductRuleTerm {
                factor: s,
                jacobian,
                cofactor,
            })
        })
        .collect()
}

/// Sum of the expansion, for checking against the unexpanded Jacobian.
pub fn product_rule_sum(ring: &RingSpec, terms: &[ProductRuleTerm]) -> Polynomial {
    terms
        .iter()
        .fold(ring.zero(), |acc, t| &acc + &(&t.jacobian * &t.cofactor))
}

/// How a cycle representative was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleSource {
    /// A reduced echelon solution of the chain system.
    EchelonSolution,
    /// A seeded generic combination of the echelon solutions.
    GenericCombination,
    /// No Jacobian combination was independent; a plain homology
    /// representative is used instead.
    Fallback,
}

#[derive(Clone, Debug)]
pub struct JacobianCycle {
    pub l: usize,
    /// 0-based index of the basis element of `F_l`.
    pub j1: usize,
    pub degree: u32,
    /// Nonzero chain coefficients, keyed by `(j_2, …, j_l)` (0-based).
    pub coefficients: Vec<(Vec<usize>, Coeff)>,
    pub element: KoszulElement,
    pub source: CycleSource,
}

/// The entries `α^{(l)}_{j_1 j_2}, α^{(l-1)}_{j_2 j_3}, …, α^{(1)}_{j_l 1}`.
pub fn chain_entries(res: &Resolution, j1: usize, chain: &[usize]) -> Vec<Polynomial> {
    let l = chain.len() + 1;
    let mut rows = vec![j1];
    rows.extend_from_slice(chain);
    (0..l)
        .map(|t| {
            let map = l - t;
            let col = if t + 1 < l { rows[t + 1] } else { 0 };
            res.alpha(map, rows[t], col).clone()
        })
        .collect()
}

/// All chains `(j_2, …, j_l)` from `j_1` along nonzero entries.
pub fn chains(res: &Resolution, l: usize, j1: usize) -> Vec<Vec<usize>> {
    fn rec(
        res: &Resolution,
        map: usize,
        row: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if map == 1 {
            if !res.alpha(1, row, 0).is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        let width = res.module(map - 1).rank();
        for k in 0..width {
            if res.alpha(map, row, k).is_zero() {
                continue;
            }
            cur.push(k);
            rec(res, map - 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(res, l, j1, &mut Vec::new(), &mut out);
    out
}

/// `Σ_σ a_σ ∂(entries)/∂(x_σ) e_σ` over `S`, before reduction modulo `J`.
pub fn chain_element(ring: &RingSpec, entries: &[Polynomial]) -> Result<KoszulElement> {
    let l = entries.len();
    let mut comps = Vec::new();
    for sigma in subsets(ring.nvars(), l) {
        let weight: u32 = sigma.iter().map(|&i| ring.weight(i)).product();
        let jac = jacobian_determinant(ring, entries, &sigma)?;
        if !jac.is_zero() {
            comps.push((sigma, jac.scale(&rat(i64::from(weight)))));
        }
    }
    KoszulElement::from_components(l, comps)
}

struct Candidates {
    j1: usize,
    chains: Vec<Vec<usize>>,
    /// per chain, coordinates of its reduced element in `K_{l,d}`
    chain_coords: Vec<SparseVec>,
    /// reduced echelon basis of the solution space of `∂z = 0`
    solutions: Vec<SparseVec>,
}

impl Candidates {
    fn cycle_coords(&self, c: &SparseVec) -> SparseVec {
        SparseVec::combine(&self.chain_coords, c)
    }
}

fn candidates(
    q: &QuotientRing,
    res: &Resolution,
    l: usize,
    j1: usize,
    d: u32,
) -> Result<Candidates> {
    let ring = q.ring();
    let piece = q.koszul_piece(l, d);
    let lower = q.koszul_piece(l - 1, d);
    let chains = chains(res, l, j1);
    let mut chain_coords = Vec::with_capacity(chains.len());
    let mut boundary_cols = Vec::with_capacity(chains.len());
    for chain in &chains {
        let z = q.reduce(&chain_element(ring, &chain_entries(res, j1, chain))?);
        if !z.is_zero() && z.internal_degree(ring) != Some(d) {
            return Err(Error::InhomogeneousElement);
        }
        boundary_cols.push(q.to_coords(&lower, &q.differential(&z)?));
        chain_coords.push(q.to_coords(&piece, &z));
    }
    let solutions = linalg::rref(&linalg::kernel(&boundary_cols));
    Ok(Candidates {
        j1,
        chains,
        chain_coords,
        solutions,
    })
}

/// Jacobian cycles for every basis element of `F_l` whose classes are
/// jointly independent in `H_l(R)`.
///
/// Within one internal degree the basis elements are processed in order;
/// each takes the first reduced echelon solution whose class is independent
/// of the boundaries and the classes already chosen. If that greedy pass
/// fails, a seeded generic combination of each solution space is tried
/// jointly. Anything still dependent falls back to a homology
/// representative and is marked [`CycleSource::Fallback`].
pub fn jacobian_cycles(q: &QuotientRing, res: &Resolution, l: usize) -> Result<Vec<JacobianCycle>> {
    if l == 0 || l > res.length() {
        return Err(Error::IndexOutOfRange {
            index: l,
            size: res.length(),
        });
    }
    q.check_resolution(res)?;
    let shifts = res.module(l).shifts();
    let mut degrees: Vec<u32> = shifts.to_vec();
    degrees.dedup();
    let mut out: Vec<JacobianCycle> = Vec::with_capacity(shifts.len());
    for d in degrees {
        let members: Vec<usize> = (0..shifts.len()).filter(|&j| shifts[j] == d).collect();
        let cands = members
            .iter()
            .map(|&j1| candidates(q, res, l, j1, d))
            .collect::<Result<Vec<_>>>()?;
        out.extend(choose_in_degree(q, l, d, &cands));
    }
    Ok(out)
}

fn boundary_echelon(q: &QuotientRing, l: usize, d: u32) -> Echelon {
    let mut ech = Echelon::new();
    for b in q.boundary_vectors(l, d) {
        ech.try_extend(&b);
    }
    ech
}

fn choose_in_degree(
    q: &QuotientRing,
    l: usize,
    d: u32,
    cands: &[Candidates],
) -> Vec<JacobianCycle> {
    let piece = q.koszul_piece(l, d);
    let make = |c: &Candidates, coeffs: &SparseVec, coords: &SparseVec, source| JacobianCycle {
        l,
        j1: c.j1,
        degree: d,
        coefficients: coeffs
            .entries()
            .iter()
            .map(|(i, x)| (c.chains[*i].clone(), x.clone()))
            .collect(),
        element: q.from_coords(&piece, coords),
        source,
    };

    // greedy over echelon solutions
    let mut ech = boundary_echelon(q, l, d);
    let mut greedy: Vec<Option<(SparseVec, SparseVec)>> = Vec::with_capacity(cands.len());
    for c in cands {
        let pick = c.solutions.iter().find_map(|s| {
            let z = c.cycle_coords(s);
            ech.try_extend(&z).then_some((s.clone(), z))
        });
        greedy.push(pick);
    }
    if greedy.iter().all(Option::is_some) {
        return cands
            .iter()
            .zip(greedy)
            .map(|(c, p)| {
                let (s, z) = p.expect("all chosen");
                make(c, &s, &z, CycleSource::EchelonSolution)
            })
            .collect();
    }

    // seeded generic combinations, checked jointly
    let mut rng = ChaCha8Rng::seed_from_u64(0x601d_u64 ^ (u64::from(d) << 8) ^ l as u64);
    let mut ech = boundary_echelon(q, l, d);
    let generic: Vec<(SparseVec, SparseVec)> = cands
        .iter()
        .map(|c| {
            let coeffs = c.solutions.iter().fold(SparseVec::new(), |acc, s| {
                acc.add_scaled(s, &rat(rng.gen_range(1..=97)))
            });
            let z = c.cycle_coords(&coeffs);
            (coeffs, z)
        })
        .collect();
    if generic.iter().all(|(_, z)| ech.try_extend(z)) {
        return cands
            .iter()
            .zip(generic)
            .map(|(c, (s, z))| make(c, &s, &z, CycleSource::GenericCombination))
            .collect();
    }

    // greedy result, holes filled from a homology basis
    let mut ech = boundary_echelon(q, l, d);
    for (_, z) in greedy.iter().flatten() {
        ech.try_extend(z);
    }
    let reps: Vec<SparseVec> = q
        .homology_in_degree(l, d)
        .representatives
        .iter()
        .map(|z| q.to_coords(&piece, z))
        .collect();
    cands
        .iter()
        .zip(greedy)
        .map(|(c, p)| match p {
            Some((s, z)) => make(c, &s, &z, CycleSource::EchelonSolution),
            None => {
                let z = reps
                    .iter()
                    .find(|z| ech.try_extend(z))
                    .cloned()
                    .unwrap_or_default();
                make(c, &SparseVec::new(), &z, CycleSource::Fallback)
            }
        })
        .collect()
}

/// The cycle attached to `f_{l,j_1}`; see [`jacobian_cycles`].
pub fn jacobian_chain_cycle(
    q: &QuotientRing,
    res: &Resolution,
    l: usize,
    j1: usize,
) -> Result<JacobianCycle> {
    let rank = res.module(l.min(res.length())).rank();
    if j1 >= rank {
        return Err(Error::IndexOutOfRange {
            index: j1,
            size: rank,
        });
    }
    jacobian_cycles(q, res, l)?
        .into_iter()
        .find(|c| c.j1 == j1)
        .ok_or(Error::IndexOutOfRange {
            index: j1,
            size: rank,
        })
}
