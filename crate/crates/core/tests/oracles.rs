mod support;

use golodlab_core::golod::{poincare_truncation, serre_bound_series};
use golodlab_core::koszul::QuotientRing;
use golodlab_core::poly::{Polynomial, RingSpec};
use support::oracles::*;

fn quotient(names: &[&str], gens: &[&str]) -> QuotientRing {
    let r = RingSpec::standard(names);
    let g: Vec<Polynomial> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
    QuotientRing::new(&r, &g).unwrap()
}

#[test]
fn bar_complex_oracle_values() {
    let ci = MonomialAlgebra::new(2, &[&[2, 0], &[0, 2]]);
    assert_eq!(bar_complex_tor(&ci, 5), vec![1, 2, 3, 4, 5, 6]);
    let square = MonomialAlgebra::new(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    assert_eq!(bar_complex_tor(&square, 5), vec![1, 2, 4, 8, 16, 32]);
    let cube = MonomialAlgebra::new(2, &[&[3, 0], &[0, 3]]);
    assert_eq!(bar_complex_tor(&cube, 4), vec![1, 2, 3, 4, 5]);
}

#[test]
fn series_oracle_values() {
    assert_eq!(serre_geometric(2, &[1, 3, 2], 5), vec![1, 2, 4, 8, 16, 32]);
    assert_eq!(serre_geometric(2, &[1, 2, 1], 5), vec![1, 2, 3, 5, 8, 13]);
    assert_eq!(serre_geometric(3, &[1], 5), vec![1, 3, 3, 1, 0, 0]);
}

#[test]
fn poincare_series_agrees_with_bar_complex() {
    let cases: [(&[&str], &[&[u32]]); 4] = [
        (&["x^2", "y^2"], &[&[2, 0], &[0, 2]]),
        (&["x^2", "x*y", "y^2"], &[&[2, 0], &[1, 1], &[0, 2]]),
        (&["x^3", "x*y", "y^2"], &[&[3, 0], &[1, 1], &[0, 2]]),
        (&["x^2", "y^3", "x*y^2"], &[&[2, 0], &[0, 3], &[1, 2]]),
    ];
    for (gens, exps) in cases {
        let q = quotient(&["x", "y"], gens);
        let oracle = bar_complex_tor(&MonomialAlgebra::new(2, exps), 4);
        let ours: Vec<usize> = poincare_truncation(&q, 4, None)
            .coefficients
            .iter()
            .map(|&c| c as usize)
            .collect();
        assert_eq!(ours, oracle, "{gens:?}");
    }
}

#[test]
fn serre_bound_agrees_with_geometric_expansion() {
    for (n, h) in [
        (2usize, vec![1u64, 3, 2]),
        (3, vec![1, 10, 15, 6]),
        (4, vec![1, 3, 2]),
        (2, vec![1, 1]),
    ] {
        let hs: Vec<usize> = h.iter().map(|&x| x as usize).collect();
        let ours: Vec<i128> = serre_bound_series(n, &hs, 6)
            .unwrap()
            .coefficients
            .iter()
            .map(|&c| c as i128)
            .collect();
        assert_eq!(ours, serre_geometric(n, &h, 6));
    }
}

#[test]
fn regular_ring_series_are_binomial() {
    for n in 1..=3 {
        let names = ["x", "y", "z"];
        let q = quotient(&names[..n], &[]);
        assert_eq!(
            poincare_truncation(&q, 5, None).coefficients,
            regular_poincare(n, 5)
        );
        assert_eq!(
            serre_bound_series(n, &[1], 5).unwrap().coefficients,
            regular_poincare(n, 5)
        );
    }
}
