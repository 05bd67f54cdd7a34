//! Strategies and exact identity checks shared by the property suites.
#![allow(dead_code)]

pub mod oracles;

use golodlab_core::golod::{
    chain_element, jacobian_determinant, jacobian_product_rule_expand, product_rule_sum,
};
use golodlab_core::koszul::{subsets, KoszulElement, QuotientRing};
use golodlab_core::poly::{rat, Polynomial, RingSpec};
use proptest::prelude::*;

/// Small quotient rings used as coefficient rings.
pub const IDEALS: &[(&[&str], &[u32], &[&str])] = &[
    (&["x", "y", "z"], &[1, 1, 1], &[]),
    (&["x", "y", "z"], &[1, 1, 1], &["x^2", "y^2", "z^2"]),
    (&["x", "y", "z"], &[1, 1, 1], &["x*y", "y*z", "x^2 - z^2"]),
    (&["x", "y", "z"], &[1, 2, 3], &["x^3 - x*y", "y^3 - z^2"]),
    (&["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"]),
    (&["x", "y"], &[1, 2], &["x^4 + y^2", "x*y"]),
];

pub fn quotient(idx: usize) -> QuotientRing {
    let (names, weights, gens) = IDEALS[idx];
    let ring = RingSpec::new(names.to_vec(), weights.to_vec()).unwrap();
    let gens: Vec<Polynomial> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
    QuotientRing::new(&ring, &gens).unwrap()
}

/// Raw polynomial data: up to five terms with exponents at most 2.
pub fn raw_poly() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec((prop::array::uniform3(0u32..=2), -3i64..=3), 0..5)
}

pub fn build_poly(ring: &RingSpec, raw: &[([u32; 3], i64)]) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        n,
        raw.iter()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (ring.monomial(e[..n].to_vec()).unwrap(), rat(*c))),
    )
}

/// Homogeneous polynomial of weighted degree `d` from coefficient data.
pub fn build_homogeneous(ring: &RingSpec, d: u32, coeffs: &[i64]) -> Polynomial {
    Polynomial::from_terms(
        ring.nvars(),
        ring.monomials_of_degree(d)
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| **c != 0)
            .map(|(m, c)| (m, rat(*c))),
    )
}

/// Koszul element data: one raw polynomial per subset slot.
pub fn raw_element() -> impl Strategy<Value = Vec<Vec<([u32; 3], i64)>>> {
    prop::collection::vec(raw_poly(), 3)
}

pub fn build_element(q: &QuotientRing, l: usize, raw: &[Vec<([u32; 3], i64)>]) -> KoszulElement {
    let ring = q.ring();
    let subs = subsets(ring.nvars(), l);
    let comps: Vec<(Vec<usize>, Polynomial)> = subs
        .into_iter()
        .zip(raw)
        .map(|(s, r)| (s, build_poly(ring, r)))
        .collect();
    q.element(l, comps).unwrap()
}

pub fn weighted_ring(weights: &[u32]) -> RingSpec {
    let names = ["x", "y", "z"];
    RingSpec::new(names[..weights.len()].to_vec(), weights.to_vec()).unwrap()
}

/// Σ a_i x_i ∂g/∂x_i = deg(g)·g, and the same identity read as
/// `∂(Σ a_i ∂g/∂x_i e_i)` in the Koszul complex over `S`.
pub fn check_euler(weights: &[u32], d: u32, coeffs: &[i64]) -> Result<(), String> {
    let ring = weighted_ring(weights);
    let g = build_homogeneous(&ring, d, coeffs);
    let want = g.scale(&rat(i64::from(d)));
    let euler = ring.euler_apply(&g).map_err(|e| e.to_string())?;
    if euler != want {
        return Err(format!(
            "euler({}) = {}",
            ring.format(&g),
            ring.format(&euler)
        ));
    }
    if g.is_zero() {
        return Ok(());
    }
    let s = QuotientRing::new(&ring, &[]).map_err(|e| e.to_string())?;
    let z = chain_element(&ring, std::slice::from_ref(&g)).map_err(|e| e.to_string())?;
    let dz = s.differential(&z).map_err(|e| e.to_string())?;
    let expected = s.element(0, [(vec![], want)]).map_err(|e| e.to_string())?;
    if dz != expected {
        return Err(format!("∂z ≠ deg·g for g = {}", ring.format(&g)));
    }
    Ok(())
}

pub fn check_dd_zero(
    q: &QuotientRing,
    l: usize,
    raw: &[Vec<([u32; 3], i64)>],
) -> Result<(), String> {
    let l = l.clamp(2, q.nvars());
    let z = build_element(q, l, raw);
    let dd = q.differential(&q.differential(&z).unwrap()).unwrap();
    if dd.is_zero() {
        Ok(())
    } else {
        Err(format!("∂∂z ≠ 0 for {z:?}"))
    }
}

/// `∂(a∧b) = ∂a∧b − ā∧∂b` with `ā = (−1)^{i+1} a` for `a ∈ K_i`.
pub fn check_leibniz(
    q: &QuotientRing,
    la: usize,
    lb: usize,
    ra: &[Vec<([u32; 3], i64)>],
    rb: &[Vec<([u32; 3], i64)>],
) -> Result<(), String> {
    let n = q.nvars();
    let la = la.clamp(1, n);
    let lb = lb.clamp(1, n);
    let a = build_element(q, la, ra);
    let b = build_element(q, lb, rb);
    let lhs = if la + lb > n {
        KoszulElement::zero(la + lb - 1)
    } else {
        q.differential(&q.wedge(&a, &b)).unwrap()
    };
    let da = q.differential(&a).unwrap();
    let db = q.differential(&b).unwrap();
    let rhs = q.reduce(
        &q.wedge(&da, &b)
            .add(&q.wedge(&a.bar(), &db).scale(&rat(-1))),
    );
    if la + lb > n && !rhs.is_zero() {
        return Err("right side nonzero above top degree".into());
    }
    if la + lb <= n && lhs != rhs {
        return Err(format!("Leibniz fails: {lhs:?} vs {rhs:?}"));
    }
    Ok(())
}

/// `a∧b = (−1)^{|a||b|} b∧a`.
pub fn check_graded_commutative(
    q: &QuotientRing,
    la: usize,
    lb: usize,
    ra: &[Vec<([u32; 3], i64)>],
    rb: &[Vec<([u32; 3], i64)>],
) -> Result<(), String> {
    let n = q.nvars();
    let a = build_element(q, la.min(n), ra);
    let b = build_element(q, lb.min(n), rb);
    let ab = q.wedge(&a, &b);
    let sign = if (a.degree() * b.degree()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let ba = q.wedge(&b, &a).scale(&rat(sign));
    if ab == ba {
        Ok(())
    } else {
        Err(format!("{ab:?} vs {ba:?}"))
    }
}

/// `∂(*,…,*, g_1⋯g_k)/∂(x_σ) = Σ_s ∂(*,…,*, g_s)/∂(x_σ) Π_{t≠s} g_t`.
pub fn check_product_rule(
    l: usize,
    k: usize,
    vars_seed: usize,
    leading: &[Vec<([u32; 3], i64)>],
    factors: &[Vec<([u32; 3], i64)>],
) -> Result<(), String> {
    let ring = RingSpec::standard(&["x", "y", "z"]);
    let l = l.clamp(1, 3);
    let k = k.clamp(1, 3);
    let subs = subsets(3, l);
    let vars = &subs[vars_seed % subs.len()];
    let leading: Vec<Polynomial> = leading
        .iter()
        .take(l - 1)
        .map(|r| build_poly(&ring, r))
        .collect();
    let factors: Vec<Polynomial> = factors
        .iter()
        .take(k)
        .map(|r| build_poly(&ring, r))
        .collect();
    let terms =
        jacobian_product_rule_expand(&ring, &leading, &factors, vars).map_err(|e| e.to_string())?;
    if terms.len() != k {
        return Err(format!("{} summands for k = {k}", terms.len()));
    }
    let product = factors
        .iter()
        .fold(ring.constant(rat(1)), |acc, g| &acc * g);
    let mut entries = leading.clone();
    entries.push(product);
    let direct = jacobian_determinant(&ring, &entries, vars).map_err(|e| e.to_string())?;
    let sum = product_rule_sum(&ring, &terms);
    if direct == sum {
        Ok(())
    } else {
        Err(format!("{} vs {}", ring.format(&direct), ring.format(&sum)))
    }
}
