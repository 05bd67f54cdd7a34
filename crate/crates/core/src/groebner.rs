//! Gröbner bases for ideals and submodules of graded free modules.
//!
//! Monomials use the weighted degree reverse lexicographic order of
//! [`Monomial`]. Module terms are compared position over term: the first
//! nonzero component (lowest index) carries the leading term. An ideal is
//! the rank one case.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, Polynomial, RingSpec};

/// The supported orders, kept explicit so certificates can name them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TermOrder {
    /// Weighted degree reverse lexicographic on monomials; position over
    /// term on free modules, position 0 highest.
    #[default]
    WeightedDegRevLexPot,
}

/// Element of a free module `S^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    comps: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn new(comps: Vec<Polynomial>) -> Self {
        ModuleVector { comps }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        ModuleVector {
            comps: vec![Polynomial::zero(nvars); rank],
        }
    }

    pub fn unit(rank: usize, i: usize, ring: &RingSpec) -> Self {
        let mut v = Self::zero(rank, ring.nvars());
        v.comps[i] = ring.constant(Coeff::one());
        v
    }

    pub fn from_poly(f: Polynomial) -> Self {
        ModuleVector { comps: vec![f] }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<Polynomial> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn lead(&self) -> Option<(usize, &Monomial, &Coeff)> {
        self.comps
            .iter()
            .enumerate()
            .find_map(|(p, f)| f.leading_term().map(|(m, c)| (p, m, c)))
    }

    /// Common degree `deg(comp_i) + shifts[i]` over nonzero components.
    pub fn degree(&self, shifts: &[u32]) -> Option<u32> {
        let mut deg = None;
        for (f, s) in self.comps.iter().zip(shifts) {
            if f.is_zero() {
                continue;
            }
            let d = f.homogeneous_degree()? + s;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn scale(&self, c: &Coeff) -> ModuleVector {
        ModuleVector {
            comps: self.comps.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> ModuleVector {
        ModuleVector {
            comps: self.comps.iter().map(|g| g * f).collect(),
        }
    }

    pub fn sub_scaled(&self, other: &ModuleVector, m: &Monomial, c: &Coeff) -> ModuleVector {
        ModuleVector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| {
                    if b.is_zero() {
                        a.clone()
                    } else {
                        a.sub_scaled(b, m, c)
                    }
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        ModuleVector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn make_monic(&self) -> ModuleVector {
        match self.lead() {
            Some((_, _, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// `Σ_t self[t]·rows[t]`: the image of this vector under the map whose
    /// basis images are `rows`.
    pub fn apply(&self, rows: &[ModuleVector], target_rank: usize, nvars: usize) -> ModuleVector {
        let mut acc = ModuleVector::zero(target_rank, nvars);
        for (c, row) in self.comps.iter().zip(rows) {
            if !c.is_zero() {
                acc = acc.add(&row.mul_poly(c));
            }
        }
        acc
    }
}

/// Reduced Gröbner basis of a submodule of `S^rank` (an ideal when rank 1).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingSpec,
    rank: usize,
    shifts: Vec<u32>,
    order: TermOrder,
    elems: Vec<ModuleVector>,
    reduced: bool,
}

impl GroebnerBasis {
    /// Buchberger's algorithm with the normal selection strategy and both
    /// classical criteria (the coprime criterion only in rank one).
    pub fn compute(ring: &RingSpec, shifts: &[u32], gens: &[ModuleVector]) -> Result<Self> {
        let rank = shifts.len();
        for g in gens {
            if g.rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: g.rank(),
                });
            }
        }
        let elems = buchberger(ring, shifts, gens);
        Ok(GroebnerBasis {
            ring: ring.clone(),
            rank,
            shifts: shifts.to_vec(),
            order: TermOrder::default(),
            elems,
            reduced: true,
        })
    }

    pub fn ideal(ring: &RingSpec, gens: &[Polynomial]) -> Self {
        let gens: Vec<ModuleVector> = gens.iter().cloned().map(ModuleVector::from_poly).collect();
        Self::compute(ring, &[0], &gens).expect("rank one")
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn generators(&self) -> &[ModuleVector] {
        &self.elems
    }

    /// Generators of a rank one basis as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|v| v.comp(0).clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1 && self.elems.iter().any(|v| v.comp(0).as_constant().is_some())
    }

    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        normal_form(&self.elems, v)
    }

    pub fn normal_form_poly(&self, f: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.rank, 1);
        normal_form(&self.elems, &ModuleVector::from_poly(f.clone()))
            .into_comps()
            .pop()
            .expect("rank one")
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.normal_form_poly(f).is_zero()
    }

    /// Whether a monomial is divisible by a leading monomial (rank one).
    pub fn is_leading_multiple(&self, m: &Monomial) -> bool {
        self.elems
            .iter()
            .any(|g| g.lead().is_some_and(|(_, lm, _)| lm.divides(m)))
    }

    /// Monomials of degree `d` outside the leading term ideal; a vector
    /// space basis of `(S/I)_d` for rank one bases.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| !self.is_leading_multiple(m))
            .collect()
    }

    /// Re-checks that every S-pair reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        for (i, a) in self.elems.iter().enumerate() {
            for b in &self.elems[i + 1..] {
                if let Some(s) = s_vector(&self.ring, a, b) {
                    if !self.normal_form(&s).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn find_divisor<'a>(
    basis: &'a [ModuleVector],
    pos: usize,
    m: &Monomial,
) -> Option<&'a ModuleVector> {
    basis.iter().find(|g| match g.lead() {
        Some((p, lm, _)) => p == pos && lm.divides(m),
        None => false,
    })
}

fn normal_form(basis: &[ModuleVector], v: &ModuleVector) -> ModuleVector {
    let mut rem = v.clone();
    let nvars = v.comps.first().map_or(0, Polynomial::nvars);
    let mut out = ModuleVector::zero(v.rank(), nvars);
    while let Some((pos, m, c)) = rem.lead() {
        match find_divisor(basis, pos, m) {
            Some(g) => {
                let (_, lm, lc) = g.lead().expect("nonzero");
                let q = m.div(lm).expect("divides");
                let factor = c / lc;
                rem = rem.sub_scaled(g, &q, &factor);
            }
            None => {
                let (m, c) = rem.comps[pos].pop_leading().expect("lead");
                out.comps[pos].push_trailing(m, c);
            }
        }
    }
    out
}

fn s_vector(ring: &RingSpec, a: &ModuleVector, b: &ModuleVector) -> Option<ModuleVector> {
    let (pa, ma, ca) = a.lead()?;
    let (pb, mb, cb) = b.lead()?;
    if pa != pb {
        return None;
    }
    let l = ring.lcm(ma, mb);
    let qa = l.div(ma).expect("lcm");
    let qb = l.div(mb).expect("lcm");
    let left = ModuleVector::zero(a.rank(), ring.nvars()).sub_scaled(a, &qa, &-ca.recip());
    Some(left.sub_scaled(b, &qb, &cb.recip()))
}

fn buchberger(ring: &RingSpec, shifts: &[u32], gens: &[ModuleVector]) -> Vec<ModuleVector> {
    let rank = shifts.len();
    let mut basis: Vec<ModuleVector> = Vec::new();
    // (degree of lcm, j, i) with i < j
    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut sorted: Vec<&ModuleVector> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| {
        let (p, m, _) = g.lead().expect("nonzero");
        m.degree() + shifts[p]
    });

    let add = |h: ModuleVector,
               basis: &mut Vec<ModuleVector>,
               queue: &mut BinaryHeap<Reverse<(u32, usize, usize)>>,
               pending: &mut HashSet<(usize, usize)>| {
        let j = basis.len();
        let (pj, mj, _) = h.lead().expect("nonzero");
        let (pj, mj) = (pj, mj.clone());
        for (i, g) in basis.iter().enumerate() {
            let (pi, mi, _) = g.lead().expect("nonzero");
            if pi != pj {
                continue;
            }
            if rank == 1 && mi.is_coprime(&mj) {
                continue;
            }
            let deg = ring.lcm(mi, &mj).degree() + shifts[pj];
            queue.push(Reverse((deg, j, i)));
            pending.insert((i, j));
        }
        basis.push(h);
    };

    for g in sorted {
        let h = normal_form(&basis, g);
        if !h.is_zero() {
            add(h.make_monic(), &mut basis, &mut queue, &mut pending);
        }
    }

    while let Some(Reverse((_, j, i))) = queue.pop() {
        pending.remove(&(i, j));
        let lcm = {
            let (_, mi, _) = basis[i].lead().expect("nonzero");
            let (_, mj, _) = basis[j].lead().expect("nonzero");
            ring.lcm(mi, mj)
        };
        let pos = basis[i].lead().expect("nonzero").0;
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (pk, mk, _) = basis[k].lead().expect("nonzero");
            pk == pos
                && mk.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_vector(ring, &basis[i], &basis[j]).expect("same position");
        let h = normal_form(&basis, &s);
        if !h.is_zero() {
            add(h.make_monic(), &mut basis, &mut queue, &mut pending);
        }
    }

    reduce_basis(basis)
}

/// Minimal, fully interreduced, monic basis sorted by leading term.
fn reduce_basis(basis: Vec<ModuleVector>) -> Vec<ModuleVector> {
    let leads: Vec<(usize, Monomial)> = basis
        .iter()
        .map(|g| {
            let (p, m, _) = g.lead().expect("nonzero");
            (p, m.clone())
        })
        .collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && leads[j].0 == leads[i].0
                    && leads[j].1.divides(&leads[i].1)
                    && (leads[j].1 != leads[i].1 || j < i)
            })
        })
        .collect();
    let minimal: Vec<ModuleVector> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut out: Vec<ModuleVector> = (0..minimal.len())
        .map(|i| {
            let others: Vec<ModuleVector> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&others, &minimal[i]).make_monic()
        })
        .collect();
    out.sort_by(|a, b| {
        let (pa, ma, _) = a.lead().expect("nonzero");
        let (pb, mb, _) = b.lead().expect("nonzero");
        pa.cmp(&pb).then_with(|| ma.cmp(mb))
    });
    out
}

/// Prunes homogeneous generators to a minimal generating set: in order of
/// increasing degree (stable), keep a vector iff it is not in the span of
/// the vectors kept before it.
pub fn minimal_generators(
    ring: &RingSpec,
    shifts: &[u32],
    gens: &[ModuleVector],
) -> Result<Vec<usize>> {
    let mut order: Vec<(u32, usize)> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let d = g.degree(shifts).ok_or(Error::InhomogeneousElement)?;
        order.push((d, i));
    }
    order.sort();
    let mut kept: Vec<usize> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    for (_, i) in order {
        let redundant = match &gb {
            Some(gb) => gb.contains(&gens[i]),
            None => false,
        };
        if !redundant {
            kept.push(i);
            let span: Vec<ModuleVector> = kept.iter().map(|&k| gens[k].clone()).collect();
            gb = Some(GroebnerBasis::compute(ring, shifts, &span)?);
        }
    }
    Ok(kept)
}

/// Generators of `{c : Σ c_t·gens_t = 0}`, minimal and homogeneous, each
/// checked by substitution.
///
/// `shifts` are the degrees of the ambient basis; the syzygy module lives in
/// a free module whose `t`-th basis element has degree `deg(gens_t)`.
pub fn syzygy_basis(
    ring: &RingSpec,
    shifts: &[u32],
    gens: &[ModuleVector],
) -> Result<Vec<ModuleVector>> {
    let r = shifts.len();
    let m = gens.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut gen_degrees = Vec::with_capacity(m);
    for g in gens {
        if g.rank() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: g.rank(),
            });
        }
        gen_degrees.push(if g.is_zero() {
            0
        } else {
            g.degree(shifts).ok_or(Error::InhomogeneousElement)?
        });
    }
    let mut aug_shifts = shifts.to_vec();
    aug_shifts.extend_from_slice(&gen_degrees);
    let augmented: Vec<ModuleVector> = gens
        .iter()
        .enumerate()
        .map(|(t, g)| {
            let mut comps = g.comps.clone();
            comps.extend((0..m).map(|s| {
                if s == t {
                    ring.constant(Coeff::one())
                } else {
                    ring.zero()
                }
            }));
            ModuleVector { comps }
        })
        .collect();
    let gb = GroebnerBasis::compute(ring, &aug_shifts, &augmented)?;
    let syz: Vec<ModuleVector> = gb
        .generators()
        .iter()
        .filter(|v| v.comps[..r].iter().all(Polynomial::is_zero))
        .map(|v| ModuleVector {
            comps: v.comps[r..].to_vec(),
        })
        .collect();
    let keep = minimal_generators(ring, &gen_degrees, &syz)?;
    let out: Vec<ModuleVector> = keep.into_iter().map(|i| syz[i].clone()).collect();
    for s in &out {
        if !s.apply(gens, r, ring.nvars()).is_zero() {
            return Err(Error::Invalid("syzygy failed substitution check".into()));
        }
    }
    Ok(out)
}

/// A minimal generator of `I^k` together with its factorisation
/// `g_{j_1}⋯g_{j_k}` (indices into the generators of `I`, non-decreasing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerGenerator {
    pub indices: Vec<usize>,
    pub poly: Polynomial,
}

/// Minimal generators of `I^k` chosen among the `k`-fold products of the
/// generators of `I`: products are scanned by increasing degree, ties by
/// lexicographic index tuple, and kept when not in the ideal of those kept
/// before them.
pub fn ideal_power(ring: &RingSpec, gens: &[Polynomial], k: usize) -> Result<Vec<PowerGenerator>> {
    if k < 1 {
        return Err(Error::ExponentTooSmall { min: 1, got: k });
    }
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for g in gens {
        if !g.is_zero() && g.homogeneous_degree().is_none() {
            return Err(Error::NotHomogeneous(ring.format(g)));
        }
    }
    let candidates: Vec<PowerGenerator> = nondecreasing_tuples(gens.len(), k)
        .into_iter()
        .filter_map(|indices| {
            let poly = indices
                .iter()
                .fold(ring.constant(Coeff::one()), |acc, &j| &acc * &gens[j]);
            (!poly.is_zero()).then_some(PowerGenerator { indices, poly })
        })
        .collect();
    let vectors: Vec<ModuleVector> = candidates
        .iter()
        .map(|c| ModuleVector::from_poly(c.poly.clone()))
        .collect();
    let keep = minimal_generators(ring, &[0], &vectors)?;
    Ok(keep.into_iter().map(|i| candidates[i].clone()).collect())
}

/// All `k`-fold products of `gens` (not minimised); `k = 0` gives `{1}`.
pub fn power_products(ring: &RingSpec, gens: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let mut acc = vec![ring.constant(Coeff::one())];
    for _ in 0..k {
        let mut next = Vec::new();
        for g in gens {
            for a in &acc {
                next.push(a * g);
            }
        }
        next.retain(|p: &Polynomial| !p.is_zero());
        next.sort_by(|a, b| b.terms().cmp(a.terms()));
        next.dedup();
        acc = next;
    }
    acc
}

pub fn module_membership(
    ring: &RingSpec,
    shifts: &[u32],
    v: &ModuleVector,
    gens: &[ModuleVector],
) -> Result<bool> {
    if v.rank() != shifts.len() {
        return Err(Error::DimensionMismatch {
            expected: shifts.len(),
            got: v.rank(),
        });
    }
    if v.is_zero() {
        return Ok(true);
    }
    let gb = GroebnerBasis::compute(ring, shifts, gens)?;
    Ok(gb.contains(v))
}

/// `Σ_t c_t·g_t` as a polynomial; helper for ideal-level substitutions.
pub fn combine(coeffs: &[Polynomial], gens: &[Polynomial]) -> Polynomial {
    coeffs.iter().zip(gens).fold(
        Polynomial::zero(gens.first().map_or(0, Polynomial::nvars)),
        |acc, (c, g)| &acc + &(c * g),
    )
}

/// Non-decreasing index tuples of length `k` over `0..r`, lexicographic.
pub fn nondecreasing_tuples(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(r: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in from..r {
            cur.push(j);
            rec(r, k, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}
