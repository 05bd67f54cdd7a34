//! Golod certificates for `R = S/I^k`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{ideal_power, GroebnerBasis};
use crate::koszul::{KoszulElement, QuotientRing};
use crate::linalg::Echelon;
use crate::poly::{Polynomial, RingSpec};
use crate::resolution::{minimal_free_resolution, Resolution};

use super::jacobian::{jacobian_cycles, CycleSource};
use super::series::{golod_by_series, SeriesComparison};

pub const DEFAULT_TRUNCATION: usize = 5;

#[derive(Clone, Debug)]
pub struct CertificateOptions {
    /// Order `N` of the series comparison.
    pub truncation: usize,
    /// Also confirm that `H(x; R)` vanishes in every bidegree without a
    /// Betti number (Artinian `R` only).
    pub full_degree_scan: bool,
    /// Column budget for the Poincaré series computation.
    pub step_budget: Option<u64>,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            truncation: DEFAULT_TRUNCATION,
            full_degree_scan: false,
            step_budget: None,
        }
    }
}

/// A Koszul element as `(1-based subset, polynomial)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub degree: usize,
    pub components: Vec<(Vec<usize>, String)>,
}

impl ElementRecord {
    pub fn new(ring: &RingSpec, z: &KoszulElement) -> Self {
        ElementRecord {
            degree: z.degree(),
            components: z
                .components()
                .iter()
                .map(|(s, f)| (s.iter().map(|i| i + 1).collect(), ring.format(f)))
                .collect(),
        }
    }

    pub fn to_element(&self, ring: &RingSpec) -> Result<KoszulElement> {
        let comps = self
            .components
            .iter()
            .map(|(s, f)| {
                let sigma = s
                    .iter()
                    .map(|&i| {
                        i.checked_sub(1).filter(|&i| i < ring.nvars()).ok_or(
                            Error::VariableOutOfRange {
                                index: i,
                                nvars: ring.nvars(),
                            },
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((sigma, ring.parse(f)?))
            })
            .collect::<Result<Vec<_>>>()?;
        KoszulElement::from_components(self.degree, comps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub l: usize,
    /// 1-based index of the basis element of `F_l`.
    pub index: usize,
    pub internal_degree: u32,
    pub source: CycleSource,
    /// Chain `(j_2, …, j_l)` (1-based) with its coefficient.
    pub coefficients: Vec<(Vec<usize>, String)>,
    pub element: ElementRecord,
    pub is_cycle: bool,
    pub in_power: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRecord {
    /// Positions in the cycle list.
    pub left: usize,
    pub right: usize,
    pub homological_degree: usize,
    /// `l_1 + l_2 > n`, so the product vanishes for degree reasons.
    pub vacuous: bool,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRecord {
    pub l: usize,
    pub degree: u32,
    pub betti: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceRecord {
    pub l: usize,
    pub degree: u32,
    pub boundaries_rank: usize,
    pub with_cycles_rank: usize,
    pub independent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GolodCertificate {
    pub ring: RingSpec,
    pub ideal: Vec<String>,
    pub power: usize,
    /// Minimal generators of `J = I^k`, in resolution order.
    pub power_generators: Vec<String>,
    pub betti: Vec<DimensionRecord>,
    pub cycles: Vec<CycleRecord>,
    pub independence: Vec<IndependenceRecord>,
    pub products: Vec<ProductRecord>,
    /// Higher Massey products are set to zero; valid once all products vanish.
    pub higher_products_zero: bool,
    pub degree_scan: Option<bool>,
    pub series: SeriesComparison,
    pub fallback_representatives: bool,
    pub verdict: Verdict,
}

impl GolodCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn parsed_ideal(&self) -> Result<Vec<Polynomial>> {
        self.ideal.iter().map(|f| self.ring.parse(f)).collect()
    }

    pub fn parsed_power_generators(&self) -> Result<Vec<Polynomial>> {
        self.power_generators
            .iter()
            .map(|f| self.ring.parse(f))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("certificate JSON: {e}")))
    }
}

/// Certifies that `S/I^k` is Golod using Jacobian cycles.
pub fn golod_certificate(
    ring: &RingSpec,
    ideal: &[Polynomial],
    k: usize,
    options: &CertificateOptions,
) -> Result<GolodCertificate> {
    if k < 2 {
        return Err(Error::ExponentTooSmall { min: 2, got: k });
    }
    if ideal.iter().all(Polynomial::is_zero) {
        return Err(Error::EmptyGenerators);
    }
    for g in ideal {
        if !g.is_zero() && g.homogeneous_degree().is_none() {
            return Err(Error::NotHomogeneous(ring.format(g)));
        }
    }
    if GroebnerBasis::ideal(ring, ideal).is_unit_ideal() {
        return Err(Error::UnitIdeal);
    }
    let power: Vec<Polynomial> = ideal_power(ring, ideal, k)?
        .into_iter()
        .map(|g| g.poly)
        .collect();
    let res = minimal_free_resolution(ring, &power)?;
    let q = QuotientRing::new(ring, res.ideal())?;
    certify_with(&q, &res, ideal, k, options)
}

fn certify_with(
    q: &QuotientRing,
    res: &Resolution,
    ideal: &[Polynomial],
    k: usize,
    options: &CertificateOptions,
) -> Result<GolodCertificate> {
    let ring = q.ring();
    let n = ring.nvars();
    let p = res.length();
    let betti = res.betti_table();

    let mut dims = Vec::new();
    for (&(l, d), &b) in betti.entries() {
        if l == 0 {
            continue;
        }
        dims.push(DimensionRecord {
            l,
            degree: d,
            betti: b,
            homology: q.homology_dim(l, d),
        });
    }
    if let Some(bad) = dims.iter().find(|r| r.betti != r.homology) {
        return Err(Error::Invalid(format!(
            "dim H_{}(R)_{} = {} but β = {}",
            bad.l, bad.degree, bad.homology, bad.betti
        )));
    }
    let degree_scan = options
        .full_degree_scan
        .then(|| full_scan(q, &betti))
        .flatten();

    let cycles_by_l = (1..=p)
        .into_par_iter()
        .map(|l| jacobian_cycles(q, res, l))
        .collect::<Result<Vec<_>>>()?;
    let cycles: Vec<_> = cycles_by_l.into_iter().flatten().collect();
    let membership = q.power_plus_defining(ideal, k - 1);

    let records: Vec<CycleRecord> = cycles
        .par_iter()
        .map(|c| {
            let is_cycle = q
                .differential(&c.element)
                .map(|b| b.is_zero())
                .unwrap_or(false);
            let in_power = c
                .element
                .components()
                .values()
                .all(|f| membership.contains_poly(f));
            CycleRecord {
                l: c.l,
                index: c.j1 + 1,
                internal_degree: c.degree,
                source: c.source,
                coefficients: c
                    .coefficients
                    .iter()
                    .map(|(chain, x)| (chain.iter().map(|j| j + 1).collect(), x.to_string()))
                    .collect(),
                element: ElementRecord::new(ring, &c.element),
                is_cycle,
                in_power,
            }
        })
        .collect();

    let mut groups: BTreeMap<(usize, u32), Vec<&KoszulElement>> = BTreeMap::new();
    for c in &cycles {
        groups.entry((c.l, c.degree)).or_default().push(&c.element);
    }
    let independence: Vec<IndependenceRecord> = groups
        .into_par_iter()
        .map(|((l, d), zs)| independence_record(q, l, d, &zs))
        .collect();

    let pairs: Vec<(usize, usize)> = (0..cycles.len())
        .flat_map(|a| (a..cycles.len()).map(move |b| (a, b)))
        .collect();
    let products: Vec<ProductRecord> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let degree = cycles[a].l + cycles[b].l;
            let vacuous = degree > n;
            let zero = vacuous || q.wedge(&cycles[a].element, &cycles[b].element).is_zero();
            ProductRecord {
                left: a,
                right: b,
                homological_degree: degree,
                vacuous,
                zero,
            }
        })
        .collect();
    let higher_products_zero = products.iter().all(|r| r.zero);

    let totals: Vec<usize> = (0..=p).map(|i| betti.total(i)).collect();
    let series = golod_by_series(q, &totals, options.truncation, options.step_budget)?;

    let fallback_representatives = cycles.iter().any(|c| c.source == CycleSource::Fallback);
    let expected: usize = (1..=p).map(|i| betti.total(i)).sum();
    let pass = records.len() == expected
        && records.iter().all(|r| r.is_cycle && r.in_power)
        && independence.iter().all(|r| r.independent)
        && higher_products_zero
        && degree_scan != Some(false)
        && series.equal;

    Ok(GolodCertificate {
        ring: ring.clone(),
        ideal: ideal.iter().map(|f| ring.format(f)).collect(),
        power: k,
        power_generators: res.ideal().iter().map(|f| ring.format(f)).collect(),
        betti: dims,
        cycles: records,
        independence,
        products,
        higher_products_zero,
        degree_scan,
        series,
        fallback_representatives,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}

fn independence_record(
    q: &QuotientRing,
    l: usize,
    d: u32,
    zs: &[&KoszulElement],
) -> IndependenceRecord {
    let piece = q.koszul_piece(l, d);
    let mut ech = Echelon::new();
    for b in q.boundary_vectors(l, d) {
        ech.try_extend(&b);
    }
    let boundaries_rank = ech.rank();
    for z in zs {
        ech.try_extend(&q.to_coords(&piece, z));
    }
    let with_cycles_rank = ech.rank();
    IndependenceRecord {
        l,
        degree: d,
        boundaries_rank,
        with_cycles_rank,
        independent: with_cycles_rank == boundaries_rank + zs.len(),
    }
}

/// Homology outside the Betti degrees must vanish; `None` when `R` is not
/// Artinian and the scan would be unbounded.
fn full_scan(q: &QuotientRing, betti: &crate::resolution::BettiTable) -> Option<bool> {
    let top = q.top_degree()?;
    let max = top + q.ring().weights().iter().sum::<u32>();
    let scan = q.homology_scan(max);
    Some(
        scan.iter().all(|(&(l, d), &dim)| betti.get(l, d) == dim)
            && betti
                .entries()
                .iter()
                .all(|(&(l, d), &b)| l == 0 || scan.get(&(l, d)).copied().unwrap_or(0) == b),
    )
}

/// Outcome of [`trivial_multiplication_check`].
#[derive(Clone, Debug)]
pub struct TrivialMultiplication {
    pub trivial: bool,
    /// A pair of representatives whose product is not a boundary.
    pub witness: Option<(KoszulElement, KoszulElement, KoszulElement)>,
    pub pairs_checked: usize,
}

/// Tests whether all products of positive-degree homology classes vanish.
pub fn trivial_multiplication_check(
    ring: &RingSpec,
    gens: &[Polynomial],
) -> Result<TrivialMultiplication> {
    let res = minimal_free_resolution(ring, gens)?;
    let q = QuotientRing::new(ring, res.ideal())?;
    let mut reps: Vec<KoszulElement> = Vec::new();
    for l in 1..=res.length() {
        let basis = q.homology_basis(l, &res)?;
        reps.extend(basis.representatives().map(|(_, z)| z.clone()));
    }
    let n = ring.nvars();
    let mut checked = 0;
    for a in 0..reps.len() {
        for b in a..reps.len() {
            if reps[a].degree() + reps[b].degree() > n {
                continue;
            }
            checked += 1;
            let product = q.wedge(&reps[a], &reps[b]);
            if !q.is_boundary(&product)?.is_boundary {
                return Ok(TrivialMultiplication {
                    trivial: false,
                    witness: Some((reps[a].clone(), reps[b].clone(), product)),
                    pairs_checked: checked,
                });
            }
        }
    }
    Ok(TrivialMultiplication {
        trivial: true,
        witness: None,
        pairs_checked: checked,
    })
}
