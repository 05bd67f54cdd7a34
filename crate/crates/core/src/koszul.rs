//! The Koszul complex `K(R)` of `R = S/J` on `x_1..x_n`.
//!
//! `K_l(R)` has basis `e_σ = e_{i_1} ∧ ⋯ ∧ e_{i_l}` over `R`, and
//!
//! ```text
//! ∂(f·e_{i_1}∧⋯∧e_{i_l}) = Σ_t (-1)^{t+1} x_{i_t} f · e_{i_1}∧⋯ê_{i_t}⋯∧e_{i_l}
//! ```
//!
//! Homology is computed one internal degree at a time: the piece of `K_l(R)`
//! in internal degree `d` is the finite dimensional space spanned by
//! `m·e_σ` with `m` a standard monomial of degree `d - a_σ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{power_products, GroebnerBasis};
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{Coeff, Monomial, Polynomial, RingSpec};
use crate::resolution::Resolution;

/// Size-`l` subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, l: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, l, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l <= n {
        rec(n, l, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Sign and support of `e_σ ∧ e_τ`, or `None` when they overlap.
pub fn wedge_sign(sigma: &[usize], tau: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut inversions = 0usize;
    for s in sigma {
        for t in tau {
            if s == t {
                return None;
            }
            if s > t {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = sigma.iter().chain(tau).copied().collect();
    merged.sort_unstable();
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, merged))
}

/// An element of `K_l`, stored as `e_σ ↦ coefficient`.
///
/// Elements produced by [`QuotientRing`] have every coefficient in normal
/// form modulo `J` and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement {
    l: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

impl KoszulElement {
    pub fn zero(l: usize) -> Self {
        KoszulElement {
            l,
            comps: BTreeMap::new(),
        }
    }

    /// `f·e_σ`; `sigma` must be strictly increasing.
    pub fn monomial(sigma: Vec<usize>, f: Polynomial) -> Self {
        let l = sigma.len();
        let mut comps = BTreeMap::new();
        if !f.is_zero() {
            comps.insert(sigma, f);
        }
        KoszulElement { l, comps }
    }

    pub fn from_components(
        l: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Polynomial)>,
    ) -> Result<Self> {
        let mut out = KoszulElement::zero(l);
        for (sigma, f) in comps {
            if sigma.len() != l || sigma.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid(format!(
                    "bad wedge index set {sigma:?} for degree {l}"
                )));
            }
            out.add_component(sigma, &f);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.l
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn add_component(&mut self, sigma: Vec<usize>, f: &Polynomial) {
        if f.is_zero() {
            return;
        }
        match self.comps.get(&sigma) {
            Some(g) => {
                let s = g + f;
                if s.is_zero() {
                    self.comps.remove(&sigma);
                } else {
                    self.comps.insert(sigma, s);
                }
            }
            None => {
                self.comps.insert(sigma, f.clone());
            }
        }
    }

    pub fn add(&self, other: &KoszulElement) -> KoszulElement {
        let mut out = self.clone();
        for (s, f) in &other.comps {
            out.add_component(s.clone(), f);
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> KoszulElement {
        if c.is_zero() {
            return KoszulElement::zero(self.l);
        }
        KoszulElement {
            l: self.l,
            comps: self
                .comps
                .iter()
                .map(|(s, f)| (s.clone(), f.scale(c)))
                .collect(),
        }
    }

    /// Internal degree `deg(f_σ) + a_σ` when constant over all components.
    pub fn internal_degree(&self, ring: &RingSpec) -> Option<u32> {
        let mut deg = None;
        for (sigma, f) in &self.comps {
            let d = f.homogeneous_degree()? + sigma.iter().map(|&i| ring.weight(i)).sum::<u32>();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// `(-1)^{l+1}·z`, the sign twist in the Massey product relations.
    pub fn bar(&self) -> KoszulElement {
        if self.l % 2 == 1 {
            self.clone()
        } else {
            self.scale(&-Coeff::one())
        }
    }
}

/// Standard monomial basis of `R_d`.
#[derive(Debug)]
pub struct GradedPiece {
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `R = S/J` with a reduced Gröbner basis of `J` and cached graded pieces.
#[derive(Debug)]
pub struct QuotientRing {
    ring: RingSpec,
    gens: Vec<Polynomial>,
    gb: GroebnerBasis,
    pieces: Mutex<HashMap<u32, Arc<GradedPiece>>>,
    monomial_nf: Mutex<HashMap<Monomial, Arc<SparseVec>>>,
}

/// Basis of the piece of `K_l(R)` in internal degree `d`.
#[derive(Debug)]
pub struct KoszulPiece {
    l: usize,
    degree: u32,
    subsets: Vec<Vec<usize>>,
    /// per subset: offset into the basis and the graded piece of its coefficients
    blocks: Vec<(usize, Option<Arc<GradedPiece>>)>,
    subset_index: HashMap<Vec<usize>, usize>,
    dim: usize,
}

impl KoszulPiece {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn homological_degree(&self) -> usize {
        self.l
    }

    pub fn internal_degree(&self) -> u32 {
        self.degree
    }

    /// Basis element `idx` as `(σ, monomial)`.
    pub fn basis_element(&self, idx: usize) -> (&[usize], &Monomial) {
        let s = self
            .blocks
            .partition_point(|(off, _)| *off <= idx)
            .checked_sub(1)
            .expect("index in range");
        let (off, piece) = &self.blocks[s];
        (
            &self.subsets[s],
            &piece.as_ref().expect("nonempty block").basis[idx - off],
        )
    }

    fn offset(&self, sigma: &[usize]) -> Option<(usize, &Arc<GradedPiece>)> {
        let s = *self.subset_index.get(sigma)?;
        let (off, piece) = &self.blocks[s];
        piece.as_ref().map(|p| (*off, p))
    }
}

/// Homology of `K(R)` in one bidegree.
#[derive(Clone, Debug)]
pub struct HomologyPiece {
    pub l: usize,
    pub degree: u32,
    pub cycles_dim: usize,
    pub boundaries_dim: usize,
    /// Cycles whose classes form a basis of `H_l(R)_d`.
    pub representatives: Vec<KoszulElement>,
}

impl HomologyPiece {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub l: usize,
    pub pieces: BTreeMap<u32, HomologyPiece>,
}

impl HomologyBasis {
    pub fn dims(&self) -> BTreeMap<u32, usize> {
        self.pieces.iter().map(|(d, p)| (*d, p.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(HomologyPiece::dim).sum()
    }

    pub fn representatives(&self) -> impl Iterator<Item = (u32, &KoszulElement)> {
        self.pieces
            .iter()
            .flat_map(|(d, p)| p.representatives.iter().map(move |z| (*d, z)))
    }
}

/// Outcome of a boundary test.
#[derive(Clone, Debug)]
pub struct BoundaryCheck {
    pub is_boundary: bool,
    /// `w` with `∂w = z` when `z` is a boundary.
    pub witness: Option<KoszulElement>,
    /// Ranks backing a negative answer: `rank(B)` and `rank(B + z)`.
    pub ranks: (usize, usize),
}

impl QuotientRing {
    pub fn new(ring: &RingSpec, gens: &[Polynomial]) -> Result<Self> {
        for g in gens {
            if !g.is_zero() && g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous(ring.format(g)));
            }
        }
        let gb = GroebnerBasis::ideal(ring, gens);
        if gb.is_unit_ideal() {
            return Err(Error::UnitIdeal);
        }
        Ok(QuotientRing {
            ring: ring.clone(),
            gens: gens.to_vec(),
            gb,
            pieces: Mutex::new(HashMap::new()),
            monomial_nf: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn reduce_poly(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form_poly(f)
    }

    /// Whether `R` is Artinian: some power of every variable is a leading
    /// monomial multiple.
    pub fn is_artinian(&self) -> bool {
        let leads: Vec<Monomial> = self
            .gb
            .generators()
            .iter()
            .filter_map(|g| g.lead().map(|(_, m, _)| m.clone()))
            .collect();
        (0..self.nvars()).all(|i| {
            leads
                .iter()
                .any(|m| m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
        })
    }

    /// Largest `d` with `R_d ≠ 0`, for Artinian `R`.
    pub fn top_degree(&self) -> Option<u32> {
        if !self.is_artinian() {
            return None;
        }
        // every monomial with x_i^{e_i} ≥ pure power bound vanishes
        let bound: u32 = (0..self.nvars())
            .map(|i| {
                let e = self
                    .gb
                    .generators()
                    .iter()
                    .filter_map(|g| g.lead().map(|(_, m, _)| m.clone()))
                    .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|m| m.exps()[i])
                    .min()
                    .expect("artinian");
                (e - 1) * self.ring.weight(i)
            })
            .sum();
        (0..=bound).rev().find(|&d| self.piece(d).dim() > 0)
    }

    pub fn piece(&self, d: u32) -> Arc<GradedPiece> {
        if let Some(p) = self.pieces.lock().expect("lock").get(&d) {
            return p.clone();
        }
        let basis = self.gb.standard_monomials(d);
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let piece = Arc::new(GradedPiece {
            degree: d,
            basis,
            index,
        });
        self.pieces
            .lock()
            .expect("lock")
            .entry(d)
            .or_insert(piece)
            .clone()
    }

    /// Coordinates of the class of `m` in the standard basis of `R_{deg m}`.
    pub fn monomial_coords(&self, m: &Monomial) -> Arc<SparseVec> {
        if let Some(v) = self.monomial_nf.lock().expect("lock").get(m) {
            return v.clone();
        }
        let piece = self.piece(m.degree());
        let v = match piece.index_of(m) {
            Some(i) => SparseVec::unit(i),
            None => {
                let nf = self
                    .gb
                    .normal_form_poly(&Polynomial::from_monomial(m.clone(), Coeff::one()));
                SparseVec::from_entries(
                    nf.terms()
                        .iter()
                        .map(|(t, c)| (piece.index_of(t).expect("standard monomial"), c.clone())),
                )
            }
        };
        let v = Arc::new(v);
        self.monomial_nf
            .lock()
            .expect("lock")
            .insert(m.clone(), v.clone());
        v
    }

    /// Coordinates of a homogeneous polynomial of degree `d` in `R_d`.
    pub fn poly_coords(&self, f: &Polynomial) -> SparseVec {
        let mut acc = SparseVec::new();
        for (m, c) in f.terms() {
            acc = acc.add_scaled(&self.monomial_coords(m), c);
        }
        acc
    }

    pub fn coords_poly(&self, d: u32, v: &SparseVec) -> Polynomial {
        let piece = self.piece(d);
        Polynomial::from_terms(
            self.nvars(),
            v.entries()
                .iter()
                .map(|(i, c)| (piece.basis[*i].clone(), c.clone())),
        )
    }

    pub fn reduce(&self, z: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero(z.l);
        for (s, f) in &z.comps {
            out.add_component(s.clone(), &self.reduce_poly(f));
        }
        out
    }

    /// Builds an element from components over `S`, reducing modulo `J`.
    pub fn element(
        &self,
        l: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Polynomial)>,
    ) -> Result<KoszulElement> {
        Ok(self.reduce(&KoszulElement::from_components(l, comps)?))
    }

    pub fn differential(&self, z: &KoszulElement) -> Result<KoszulElement> {
        if z.l == 0 {
            return Err(Error::NoDifferential(0));
        }
        let mut out = KoszulElement::zero(z.l - 1);
        for (sigma, f) in &z.comps {
            for (t, &i) in sigma.iter().enumerate() {
                let mut rest = sigma.clone();
                rest.remove(t);
                let mut term = f.mul_monomial(&self.ring.var_monomial(i), &Coeff::one());
                if t % 2 == 1 {
                    term = -&term;
                }
                out.add_component(rest, &term);
            }
        }
        Ok(self.reduce(&out))
    }

    pub fn wedge(&self, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero(a.l + b.l);
        for (s, f) in &a.comps {
            for (t, g) in &b.comps {
                if let Some((sign, merged)) = wedge_sign(s, t) {
                    let mut p = f * g;
                    if sign < 0 {
                        p = -&p;
                    }
                    out.add_component(merged, &p);
                }
            }
        }
        self.reduce(&out)
    }

    pub fn koszul_piece(&self, l: usize, d: u32) -> KoszulPiece {
        let subs = subsets(self.nvars(), l);
        let mut blocks = Vec::with_capacity(subs.len());
        let mut off = 0;
        for s in &subs {
            let a: u32 = s.iter().map(|&i| self.ring.weight(i)).sum();
            if a <= d {
                let piece = self.piece(d - a);
                let dim = piece.dim();
                blocks.push((off, Some(piece)));
                off += dim;
            } else {
                blocks.push((off, None));
            }
        }
        let subset_index = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        KoszulPiece {
            l,
            degree: d,
            subsets: subs,
            blocks,
            subset_index,
            dim: off,
        }
    }

    /// Coordinates of a homogeneous element of internal degree `piece.degree`.
    pub fn to_coords(&self, piece: &KoszulPiece, z: &KoszulElement) -> SparseVec {
        let mut entries = Vec::new();
        for (sigma, f) in &z.comps {
            let Some((off, _)) = piece.offset(sigma) else {
                continue;
            };
            for (i, c) in self.poly_coords(f).entries() {
                entries.push((off + i, c.clone()));
            }
        }
        SparseVec::from_entries(entries)
    }

    pub fn from_coords(&self, piece: &KoszulPiece, v: &SparseVec) -> KoszulElement {
        let mut comps: BTreeMap<Vec<usize>, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (idx, c) in v.entries() {
            let (sigma, m) = piece.basis_element(*idx);
            comps
                .entry(sigma.to_vec())
                .or_default()
                .push((m.clone(), c.clone()));
        }
        let mut out = KoszulElement::zero(piece.l);
        for (sigma, terms) in comps {
            out.add_component(sigma, &Polynomial::from_terms(self.nvars(), terms));
        }
        out
    }

    /// Columns of `∂ : K_{l,d} → K_{l-1,d}` in the bases of the two pieces.
    pub fn differential_columns(
        &self,
        source: &KoszulPiece,
        target: &KoszulPiece,
    ) -> Vec<SparseVec> {
        (0..source.dim())
            .map(|idx| {
                let (sigma, m) = source.basis_element(idx);
                let mut entries = Vec::new();
                for (t, &i) in sigma.iter().enumerate() {
                    let mut rest = sigma.to_vec();
                    rest.remove(t);
                    let Some((off, _)) = target.offset(&rest) else {
                        continue;
                    };
                    let coords = self.monomial_coords(&m.mul(&self.ring.var_monomial(i)));
                    let sign = if t % 2 == 0 {
                        Coeff::one()
                    } else {
                        -Coeff::one()
                    };
                    for (j, c) in coords.entries() {
                        entries.push((off + j, c * &sign));
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect()
    }

    /// Boundaries `∂(K_{l+1,d})` as vectors in the piece `K_{l,d}`.
    pub fn boundary_vectors(&self, l: usize, d: u32) -> Vec<SparseVec> {
        if l + 1 > self.nvars() {
            return Vec::new();
        }
        let upper = self.koszul_piece(l + 1, d);
        let piece = self.koszul_piece(l, d);
        self.differential_columns(&upper, &piece)
    }

    /// Kernel basis of `∂ : K_{l,d} → K_{l-1,d}` (everything when `l = 0`).
    pub fn cycle_vectors(&self, l: usize, d: u32) -> Vec<SparseVec> {
        let piece = self.koszul_piece(l, d);
        if l == 0 {
            return (0..piece.dim()).map(SparseVec::unit).collect();
        }
        let lower = self.koszul_piece(l - 1, d);
        linalg::kernel(&self.differential_columns(&piece, &lower))
    }

    pub fn homology_in_degree(&self, l: usize, d: u32) -> HomologyPiece {
        let piece = self.koszul_piece(l, d);
        let cycles = self.cycle_vectors(l, d);
        let boundaries = self.boundary_vectors(l, d);
        let mut ech = Echelon::new();
        for b in &boundaries {
            ech.try_extend(b);
        }
        let boundaries_dim = ech.rank();
        let representatives = cycles
            .iter()
            .filter(|z| ech.try_extend(z))
            .map(|z| self.from_coords(&piece, z))
            .collect();
        HomologyPiece {
            l,
            degree: d,
            cycles_dim: cycles.len(),
            boundaries_dim,
            representatives,
        }
    }

    pub fn homology_dim(&self, l: usize, d: u32) -> usize {
        let cycles = self.cycle_vectors(l, d).len();
        cycles - linalg::rank(&self.boundary_vectors(l, d))
    }

    /// Confirms that `res` resolves the same ideal `J`.
    pub fn check_resolution(&self, res: &Resolution) -> Result<()> {
        if res.ring() != &self.ring {
            return Err(Error::ResolutionMismatch);
        }
        let theirs = GroebnerBasis::ideal(&self.ring, res.ideal());
        let same = res.ideal().iter().all(|g| self.gb.contains_poly(g))
            && self.gens.iter().all(|g| theirs.contains_poly(g));
        if same {
            Ok(())
        } else {
            Err(Error::ResolutionMismatch)
        }
    }

    /// Basis of `H_l(R)` supported in the internal degrees where the
    /// minimal resolution has `β_{l,d} ≠ 0`.
    pub fn homology_basis(&self, l: usize, res: &Resolution) -> Result<HomologyBasis> {
        self.check_resolution(res)?;
        let betti = res.betti_table();
        let degrees = betti.degrees(l);
        let pieces: Vec<HomologyPiece> = degrees
            .par_iter()
            .map(|&d| self.homology_in_degree(l, d))
            .collect();
        for p in &pieces {
            let want = betti.get(l, p.degree);
            if p.dim() != want {
                return Err(Error::Invalid(format!(
                    "dim H_{l}(R)_{} = {} but β_{{{l},{}}} = {want}",
                    p.degree,
                    p.dim(),
                    p.degree
                )));
            }
        }
        Ok(HomologyBasis {
            l,
            pieces: pieces.into_iter().map(|p| (p.degree, p)).collect(),
        })
    }

    /// `dim H_l(R)_d` for every `l` and every `d ≤ max_degree`, computed
    /// without reference to a resolution; nonzero entries only.
    pub fn homology_scan(&self, max_degree: u32) -> BTreeMap<(usize, u32), usize> {
        let jobs: Vec<(usize, u32)> = (0..=self.nvars())
            .flat_map(|l| (0..=max_degree).map(move |d| (l, d)))
            .collect();
        jobs.par_iter()
            .map(|&(l, d)| ((l, d), self.homology_dim(l, d)))
            .filter(|(_, dim)| *dim > 0)
            .collect()
    }

    /// Solves `∂w = z` in the internal degree of `z`.
    pub fn is_boundary(&self, z: &KoszulElement) -> Result<BoundaryCheck> {
        if z.l >= 1 && !self.differential(z)?.is_zero() {
            return Err(Error::NotACycle);
        }
        let z = self.reduce(z);
        if z.is_zero() {
            return Ok(BoundaryCheck {
                is_boundary: true,
                witness: Some(KoszulElement::zero(z.l + 1)),
                ranks: (0, 0),
            });
        }
        let d = z
            .internal_degree(&self.ring)
            .ok_or(Error::InhomogeneousElement)?;
        let piece = self.koszul_piece(z.l, d);
        let target = self.to_coords(&piece, &z);
        let columns = self.boundary_vectors(z.l, d);
        let rank_b = linalg::rank(&columns);
        match linalg::solve(&columns, &target) {
            Some(x) => {
                let upper = self.koszul_piece(z.l + 1, d);
                Ok(BoundaryCheck {
                    is_boundary: true,
                    witness: Some(self.from_coords(&upper, &x)),
                    ranks: (rank_b, rank_b),
                })
            }
            None => Ok(BoundaryCheck {
                is_boundary: false,
                witness: None,
                ranks: (rank_b, rank_b + 1),
            }),
        }
    }

    /// Whether every coefficient of `z` lies in `I^m + J`.
    pub fn membership_in_power(&self, z: &KoszulElement, ideal: &[Polynomial], m: usize) -> bool {
        let gb = self.power_plus_defining(ideal, m);
        z.comps.values().all(|f| gb.contains_poly(f))
    }

    /// Gröbner basis of `I^m + J`.
    pub fn power_plus_defining(&self, ideal: &[Polynomial], m: usize) -> GroebnerBasis {
        let mut gens = power_products(&self.ring, ideal, m);
        gens.extend(self.gens.iter().cloned());
        GroebnerBasis::ideal(&self.ring, &gens)
    }
}
