//! Re-checks a stored certificate from its witnesses alone.
//!
//! Nothing here builds a resolution or a homology basis. The checks only
//! reduce polynomials modulo Gröbner bases, apply the Koszul differential
//! and multiply in the exterior algebra.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groebner::{power_products, GroebnerBasis};
use crate::koszul::{subsets, KoszulElement, QuotientRing};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{rat, Monomial, Polynomial, RingSpec};

use super::certificate::{GolodCertificate, Verdict};
use super::series::serre_bound_series;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Verifies a certificate claiming `S/I^k` is Golod.
pub fn verify_certificate(cert: &GolodCertificate) -> Result<VerificationReport> {
    let ring = RingSpec::new(cert.ring.names().to_vec(), cert.ring.weights().to_vec())?;
    let ideal = cert.parsed_ideal()?;
    let gens = cert.parsed_power_generators()?;
    let k = cert.power;
    let n = ring.nvars();
    let mut report = VerificationReport { checks: Vec::new() };

    // J and I^k agree
    let power = GroebnerBasis::ideal(&ring, &power_products(&ring, &ideal, k));
    let j_gb = GroebnerBasis::ideal(&ring, &gens);
    let same = k >= 2
        && gens.iter().all(|g| power.contains_poly(g))
        && power_products(&ring, &ideal, k)
            .iter()
            .all(|g| j_gb.contains_poly(g));
    report.push("power-ideal", same, format!("J = I^{k}"));

    let q = QuotientRing::new(&ring, &gens)?;
    let cycles = cert
        .cycles
        .iter()
        .map(|c| c.element.to_element(&ring).map(|z| q.reduce(&z)))
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    for (c, z) in cert.cycles.iter().zip(&cycles) {
        let homogeneous = z.is_zero() || z.internal_degree(&ring) == Some(c.internal_degree);
        if z.degree() != c.l || !homogeneous || !q.differential(z)?.is_zero() {
            failures.push(format!("({}, {})", c.l, c.index));
        }
    }
    report.push("cycles", failures.is_empty(), failures.join(" "));

    let membership = {
        let mut g = power_products(&ring, &ideal, k - 1);
        g.extend(gens.iter().cloned());
        GroebnerBasis::ideal(&ring, &g)
    };
    let outside: Vec<String> = cert
        .cycles
        .iter()
        .zip(&cycles)
        .filter(|(_, z)| {
            !z.components()
                .values()
                .all(|f| membership.normal_form_poly(f).is_zero())
        })
        .map(|(c, _)| format!("({}, {})", c.l, c.index))
        .collect();
    report.push("in-power", outside.is_empty(), outside.join(" "));

    let mut nonzero = Vec::new();
    let mut pairs = 0;
    for a in 0..cycles.len() {
        for b in a..cycles.len() {
            pairs += 1;
            if cycles[a].degree() + cycles[b].degree() <= n
                && !q.wedge(&cycles[a], &cycles[b]).is_zero()
            {
                nonzero.push(format!("{a}*{b}"));
            }
        }
    }
    let recorded = cert.products.len() == pairs && cert.products.iter().all(|p| p.zero);
    report.push(
        "products-zero",
        nonzero.is_empty() && recorded,
        format!("{pairs} pairs {}", nonzero.join(" ")),
    );

    // one cycle per Betti number in each bidegree, independent mod boundaries
    let mut groups: BTreeMap<(usize, u32), Vec<&KoszulElement>> = BTreeMap::new();
    for (c, z) in cert.cycles.iter().zip(&cycles) {
        groups.entry((c.l, c.internal_degree)).or_default().push(z);
    }
    let counts_match = cert.betti.len() == groups.len()
        && cert
            .betti
            .iter()
            .all(|r| groups.get(&(r.l, r.degree)).map_or(0, Vec::len) == r.betti);
    report.push("counts", counts_match, "cycles per bidegree equal β_{l,d}");

    let mut dependent = Vec::new();
    for (&(l, d), zs) in &groups {
        if !independent_mod_boundaries(&q, &ring, l, d, zs)? {
            dependent.push(format!("H_{l},{d}"));
        }
    }
    report.push("independent", dependent.is_empty(), dependent.join(" "));

    let mut totals = vec![0usize; 1 + cert.betti.iter().map(|r| r.l).max().unwrap_or(0)];
    totals[0] = 1;
    for r in &cert.betti {
        totals[r.l] += r.betti;
    }
    let bound = serre_bound_series(n, &totals, cert.series.bound.order())?;
    let series_ok = bound.coefficients == cert.series.bound.coefficients
        && cert.series.poincare.complete
        && cert.series.poincare.coefficients == bound.coefficients;
    report.push("series", series_ok, format!("{:?}", bound.coefficients));

    let all_ok = report.passed();
    report.push(
        "verdict",
        (cert.verdict == Verdict::Pass) == all_ok,
        format!("stored {:?}", cert.verdict),
    );
    Ok(report)
}

/// Builds the boundaries of `K_{l+1}` in internal degree `d` from the
/// differential of monomial basis elements and checks the rank grows by one
/// for each cycle.
fn independent_mod_boundaries(
    q: &QuotientRing,
    ring: &RingSpec,
    l: usize,
    d: u32,
    zs: &[&KoszulElement],
) -> Result<bool> {
    let mut index: HashMap<(Vec<usize>, Monomial), usize> = HashMap::new();
    let mut coords = |z: &KoszulElement| -> SparseVec {
        let mut entries = Vec::new();
        for (s, f) in z.components() {
            for (m, c) in f.terms() {
                let next = index.len();
                let i = *index.entry((s.clone(), m.clone())).or_insert(next);
                entries.push((i, c.clone()));
            }
        }
        SparseVec::from_entries(entries)
    };
    let mut ech = Echelon::new();
    if l < ring.nvars() {
        for tau in subsets(ring.nvars(), l + 1) {
            let a: u32 = tau.iter().map(|&i| ring.weight(i)).sum();
            if a > d {
                continue;
            }
            for m in q.groebner().standard_monomials(d - a) {
                let w = KoszulElement::monomial(tau.clone(), Polynomial::from_monomial(m, rat(1)));
                ech.try_extend(&coords(&q.differential(&w)?));
            }
        }
    }
    let base = ech.rank();
    for z in zs {
        ech.try_extend(&coords(z));
    }
    Ok(ech.rank() == base + zs.len())
}
