//! Minimal graded free resolutions of cyclic modules `S/J`.
//!
//! Built by iterated syzygies: each step takes the syzygy module of the rows
//! of the previous map and prunes it to a minimal homogeneous generating
//! set, so no unit entry ever appears and the result is minimal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::{minimal_generators, syzygy_basis, GroebnerBasis, ModuleVector};
use crate::poly::{Polynomial, RingSpec};

/// Graded free module `⊕_j S(-shift_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    shifts: Vec<u32>,
}

impl FreeModule {
    pub fn new(shifts: Vec<u32>) -> Self {
        FreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }
}

/// `φ_i : F_i → F_{i-1}`; row `j` is the image of the `j`-th basis element,
/// so entry `(j, k)` is `α^{(i)}_{jk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    rows: Vec<ModuleVector>,
}

impl ChainMap {
    pub fn new(rows: Vec<ModuleVector>) -> Self {
        ChainMap { rows }
    }

    pub fn rows(&self) -> &[ModuleVector] {
        &self.rows
    }

    pub fn entry(&self, j: usize, k: usize) -> &Polynomial {
        self.rows[j].comp(k)
    }

    pub fn source_rank(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    ring: RingSpec,
    ideal: Vec<Polynomial>,
    modules: Vec<FreeModule>,
    maps: Vec<ChainMap>,
}

impl Resolution {
    /// Assembles a resolution from parts without checking it; see
    /// [`verify_resolution`].
    pub fn from_parts(
        ring: RingSpec,
        ideal: Vec<Polynomial>,
        modules: Vec<FreeModule>,
        maps: Vec<ChainMap>,
    ) -> Self {
        Resolution {
            ring,
            ideal,
            modules,
            maps,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    /// Minimal generators of `J`, in the order used for `F_1`.
    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    /// Projective dimension `p`.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn module(&self, i: usize) -> &FreeModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// `φ_i` for `1 ≤ i ≤ p`.
    pub fn map(&self, i: usize) -> &ChainMap {
        &self.maps[i - 1]
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    /// `α^{(i)}_{jk}` with 0-based `j`, `k`.
    pub fn alpha(&self, i: usize, j: usize, k: usize) -> &Polynomial {
        self.maps[i - 1].entry(j, k)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    pub fn betti_table(&self) -> BettiTable {
        betti_table(self)
    }
}

/// Builds the minimal graded free resolution of `S/J`.
pub fn minimal_free_resolution(ring: &RingSpec, gens: &[Polynomial]) -> Result<Resolution> {
    for g in gens {
        if g.nvars() != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                got: g.nvars(),
            });
        }
        if !g.is_zero() && g.homogeneous_degree().is_none() {
            return Err(Error::NotHomogeneous(ring.format(g)));
        }
    }
    if GroebnerBasis::ideal(ring, gens).is_unit_ideal() {
        return Err(Error::UnitIdeal);
    }
    let as_vectors: Vec<ModuleVector> = gens.iter().cloned().map(ModuleVector::from_poly).collect();
    let keep = minimal_generators(ring, &[0], &as_vectors)?;
    let ideal: Vec<Polynomial> = keep.iter().map(|&i| gens[i].clone()).collect();

    let mut modules = vec![FreeModule::new(vec![0])];
    let mut maps: Vec<ChainMap> = Vec::new();
    if ideal.is_empty() {
        return Ok(Resolution::from_parts(ring.clone(), ideal, modules, maps));
    }
    modules.push(FreeModule::new(
        ideal
            .iter()
            .map(|g| g.homogeneous_degree().expect("homogeneous"))
            .collect(),
    ));
    maps.push(ChainMap::new(as_rows(&ideal)));

    loop {
        let last = maps.last().expect("nonempty");
        let target_shifts = modules[modules.len() - 2].shifts().to_vec();
        let syz = syzygy_basis(ring, &target_shifts, last.rows())?;
        if syz.is_empty() {
            break;
        }
        let source_shifts = modules.last().expect("nonempty").shifts().to_vec();
        let mut with_deg: Vec<(u32, ModuleVector)> = syz
            .into_iter()
            .map(|v| (v.degree(&source_shifts).expect("homogeneous syzygy"), v))
            .collect();
        with_deg.sort_by_key(|(d, _)| *d);
        modules.push(FreeModule::new(with_deg.iter().map(|(d, _)| *d).collect()));
        maps.push(ChainMap::new(
            with_deg.into_iter().map(|(_, v)| v).collect(),
        ));
        if maps.len() > ring.nvars() {
            return Err(Error::Invalid(format!(
                "resolution longer than {} steps; Hilbert's syzygy theorem violated",
                ring.nvars()
            )));
        }
    }
    Ok(Resolution::from_parts(ring.clone(), ideal, modules, maps))
}

fn as_rows(ideal: &[Polynomial]) -> Vec<ModuleVector> {
    ideal.iter().cloned().map(ModuleVector::from_poly).collect()
}

/// Graded Betti numbers `β_{i,d}` = number of shifts equal to `d` in `F_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, d: u32) -> usize {
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .map(|(_, v)| v)
            .sum()
    }

    /// Internal degrees with `β_{i,d} ≠ 0`, ascending.
    pub fn degrees(&self, i: usize) -> Vec<u32> {
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .map(|((_, d), _)| *d)
            .collect()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.entries
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.keys().map(|(_, d)| *d).max().unwrap_or(0)
    }
}

pub fn betti_table(res: &Resolution) -> BettiTable {
    let mut entries = BTreeMap::new();
    for (i, m) in res.modules.iter().enumerate() {
        for &d in m.shifts() {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
    }
    BettiTable { entries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionFailure {
    Shape {
        stage: usize,
    },
    /// A unit entry: the resolution is not minimal.
    Minimality {
        stage: usize,
        row: usize,
        col: usize,
    },
    Grading {
        stage: usize,
        row: usize,
        col: usize,
    },
    Composition {
        stage: usize,
        row: usize,
        col: usize,
    },
    /// `ker φ_stage ≠ im φ_{stage+1}`, or for stage 0 `im φ_1 ≠ J`.
    Exactness {
        stage: usize,
    },
    TooLong {
        length: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub failure: Option<ResolutionFailure>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `φφ = 0`, minimality, grading and exactness at every stage,
/// returning the first failure found.
pub fn verify_resolution(res: &Resolution) -> ResolutionReport {
    let fail = |f| ResolutionReport { failure: Some(f) };
    let ring = &res.ring;
    if res.modules.first().map(FreeModule::shifts) != Some(&[0][..])
        || res.modules.len() != res.maps.len() + 1
    {
        return fail(ResolutionFailure::Shape { stage: 0 });
    }
    if res.maps.len() > ring.nvars() {
        return fail(ResolutionFailure::TooLong {
            length: res.maps.len(),
        });
    }
    for (idx, map) in res.maps.iter().enumerate() {
        let stage = idx + 1;
        let src = &res.modules[stage];
        let tgt = &res.modules[stage - 1];
        if map.rows.len() != src.rank() || map.rows.iter().any(|r| r.rank() != tgt.rank()) {
            return fail(ResolutionFailure::Shape { stage });
        }
        for (j, row) in map.rows.iter().enumerate() {
            for (k, entry) in row.comps().iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                if entry.terms().iter().any(|(m, _)| m.is_one()) {
                    return fail(ResolutionFailure::Minimality {
                        stage,
                        row: j,
                        col: k,
                    });
                }
                let want = src.shifts[j].checked_sub(tgt.shifts[k]);
                if entry.homogeneous_degree().is_none() || entry.homogeneous_degree() != want {
                    return fail(ResolutionFailure::Grading {
                        stage,
                        row: j,
                        col: k,
                    });
                }
            }
        }
    }
    for stage in 2..=res.maps.len() {
        let upper = &res.maps[stage - 1];
        let lower = &res.maps[stage - 2];
        let target_rank = res.modules[stage - 2].rank();
        for (j, row) in upper.rows.iter().enumerate() {
            let image = row.apply(&lower.rows, target_rank, ring.nvars());
            if let Some(col) = image.comps().iter().position(|c| !c.is_zero()) {
                return fail(ResolutionFailure::Composition { stage, row: j, col });
            }
        }
    }
    // stage 0: im φ_1 = J
    let first: Vec<Polynomial> = res
        .maps
        .first()
        .map(|m| m.rows.iter().map(|r| r.comp(0).clone()).collect())
        .unwrap_or_default();
    let gb_image = GroebnerBasis::ideal(ring, &first);
    let gb_ideal = GroebnerBasis::ideal(ring, &res.ideal);
    if !res.ideal.iter().all(|g| gb_image.contains_poly(g))
        || !first.iter().all(|g| gb_ideal.contains_poly(g))
    {
        return fail(ResolutionFailure::Exactness { stage: 0 });
    }
    for stage in 1..=res.maps.len() {
        let map = &res.maps[stage - 1];
        let tgt_shifts = res.modules[stage - 1].shifts();
        let kernel = match syzygy_basis(ring, tgt_shifts, &map.rows) {
            Ok(k) => k,
            Err(_) => return fail(ResolutionFailure::Exactness { stage }),
        };
        if kernel.is_empty() {
            continue;
        }
        let next: &[ModuleVector] = res.maps.get(stage).map_or(&[], |m| &m.rows);
        let src_shifts = res.modules[stage].shifts();
        let gb = match GroebnerBasis::compute(ring, src_shifts, next) {
            Ok(gb) => gb,
            Err(_) => return fail(ResolutionFailure::Exactness { stage }),
        };
        if !kernel.iter().all(|v| gb.contains(v)) {
            return fail(ResolutionFailure::Exactness { stage });
        }
    }
    ResolutionReport { failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> RingSpec {
        RingSpec::standard(&["x", "y"])
    }

    fn ideal(r: &RingSpec, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    #[test]
    fn principal_ideal() {
        let r = xy();
        let res = minimal_free_resolution(&r, &ideal(&r, &["x^3 + y^3 - x*y^2"])).unwrap();
        assert_eq!(res.ranks(), vec![1, 1]);
        let b = res.betti_table();
        assert_eq!(b.get(1, 3), 1);
        assert!(verify_resolution(&res).passed());
        let res = minimal_free_resolution(&r, &ideal(&r, &["x^4"])).unwrap();
        assert_eq!(res.betti_table().get(1, 4), 1);
    }

    #[test]
    fn koszul_resolution_of_maximal_ideal() {
        let r = xy();
        let res = minimal_free_resolution(&r, &ideal(&r, &["x", "y"])).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert_eq!(res.module(1).shifts(), &[1, 1]);
        assert_eq!(res.module(2).shifts(), &[2]);
        // the single syzygy is ±(y, -x)
        let row = &res.map(2).rows()[0];
        let (y, mx) = (r.var(1), -&r.var(0));
        assert!(
            (row.comp(0) == &y && row.comp(1) == &mx)
                || (row.comp(0) == &-&y && row.comp(1) == &-&mx)
        );
        assert!(verify_resolution(&res).passed());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = xy();
        let res = minimal_free_resolution(&r, &ideal(&r, &["x^2", "x*y", "y^2"])).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 2]);
        assert_eq!(res.module(1).shifts(), &[2, 2, 2]);
        assert_eq!(res.module(2).shifts(), &[3, 3]);
        let b = res.betti_table();
        assert_eq!((b.get(1, 2), b.get(2, 3)), (3, 2));
        assert!(verify_resolution(&res).passed());
    }

    #[test]
    fn complete_intersection_betti() {
        let r = xy();
        let res = minimal_free_resolution(&r, &ideal(&r, &["x^2", "y^2"])).unwrap();
        let b = res.betti_table();
        assert_eq!((b.get(1, 2), b.get(2, 4)), (2, 1));
        assert_eq!(b.total(1), 2);
    }

    #[test]
    fn rejects_bad_ideals() {
        let r = xy();
        assert_eq!(
            minimal_free_resolution(&r, &ideal(&r, &["x", "3"])).unwrap_err(),
            Error::UnitIdeal
        );
        assert!(matches!(
            minimal_free_resolution(&r, &ideal(&r, &["x + y^2"])),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let r = xy();
        let res = minimal_free_resolution(&r, &ideal(&r, &["x^2", "x^2*y", "y^2", "0"])).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
    }

    #[test]
    fn tampered_unit_entry_fails_minimality() {
        let r = xy();
        let res = minimal_free_resolution(&r, &ideal(&r, &["x", "y"])).unwrap();
        let mut maps = res.maps().to_vec();
        let mut comps = maps[1].rows()[0].comps().to_vec();
        comps[0] = &comps[0] + &r.parse("1").unwrap();
        maps[1] = ChainMap::new(vec![ModuleVector::new(comps)]);
        let bad = Resolution::from_parts(
            r.clone(),
            res.ideal().to_vec(),
            res.modules().to_vec(),
            maps,
        );
        assert_eq!(
            verify_resolution(&bad).failure,
            Some(ResolutionFailure::Minimality {
                stage: 2,
                row: 0,
                col: 0
            })
        );
    }

    #[test]
    fn dropped_syzygy_fails_exactness() {
        let r = xy();
        let res = minimal_free_resolution(&r, &ideal(&r, &["x", "y"])).unwrap();
        let modules = res.modules()[..2].to_vec();
        let maps = res.maps()[..1].to_vec();
        let bad = Resolution::from_parts(r.clone(), res.ideal().to_vec(), modules, maps);
        assert_eq!(
            verify_resolution(&bad).failure,
            Some(ResolutionFailure::Exactness { stage: 1 })
        );
    }

    #[test]
    fn zero_ideal_resolution() {
        let r = xy();
        let res = minimal_free_resolution(&r, &[]).unwrap();
        assert_eq!(res.ranks(), vec![1]);
        assert!(verify_resolution(&res).passed());
    }
}
