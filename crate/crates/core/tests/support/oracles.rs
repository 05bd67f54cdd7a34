//! Reference computations that share no code with the library.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Artinian monomial algebra `K[x_1..x_n]/(monomials)`.
pub struct MonomialAlgebra {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl MonomialAlgebra {
    pub fn new(n: usize, gens: &[&[u32]]) -> Self {
        MonomialAlgebra {
            n,
            gens: gens.iter().map(|g| g.to_vec()).collect(),
        }
    }

    fn vanishes(&self, m: &[u32]) -> bool {
        self.gens
            .iter()
            .any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
    }

    /// Nonzero monomials of positive degree; finite because every variable
    /// has a pure power among the generators.
    fn positive_basis(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut stack = vec![vec![0u32; self.n]];
        while let Some(m) = stack.pop() {
            if m.iter().any(|&e| e > 0) {
                out.push(m.clone());
            }
            for i in 0..self.n {
                let mut next = m.clone();
                next[i] += 1;
                // visit each monomial once: only raise variables at or after the last raised one
                if m[i + 1..].iter().all(|&e| e == 0) && !self.vanishes(&next) {
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }
}

/// Rank of sparse rows by reduction against pivots keyed on the leading
/// column.
fn rank(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for mut row in rows {
        while let Some((&lead, c)) = row.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                let c = c.clone();
                row.values_mut().for_each(|v| *v /= &c);
                pivots.insert(lead, row);
                break;
            };
            let c = c.clone();
            for (k, v) in p {
                let e = row.entry(*k).or_insert_with(BigRational::zero);
                *e -= &c * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
    }
    pivots.len()
}

/// `dim Tor_i^R(K, K)` for `i ≤ order` from the normalized bar complex
/// `⋯ → R_+^{⊗i} → R_+^{⊗(i-1)} → ⋯`, split by internal degree.
pub fn bar_complex_tor(alg: &MonomialAlgebra, order: usize) -> Vec<usize> {
    let basis = alg.positive_basis();
    let deg = |m: &Vec<u32>| m.iter().sum::<u32>();
    // tensors[i]: all i-fold tuples, grouped by total degree
    let mut tensors: Vec<HashMap<u32, Vec<Vec<usize>>>> = vec![HashMap::from([(0, vec![vec![]])])];
    for i in 1..=order + 1 {
        let mut next: HashMap<u32, Vec<Vec<usize>>> = HashMap::new();
        for (d, ts) in &tensors[i - 1] {
            for t in ts {
                for (b, m) in basis.iter().enumerate() {
                    let mut u = t.clone();
                    u.push(b);
                    next.entry(d + deg(m)).or_default().push(u);
                }
            }
        }
        tensors.push(next);
    }
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // rank of d_i : B_i → B_{i-1} in degree d
    let rank_of = |i: usize, d: u32| -> usize {
        if i < 2 {
            return 0;
        }
        let (Some(src), Some(dst)) = (tensors[i].get(&d), tensors[i - 1].get(&d)) else {
            return 0;
        };
        let pos: HashMap<&Vec<usize>, usize> =
            dst.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let rows: Vec<BTreeMap<usize, BigRational>> = src
            .iter()
            .map(|t| {
                let mut row = BTreeMap::new();
                for j in 0..i - 1 {
                    let prod: Vec<u32> = basis[t[j]]
                        .iter()
                        .zip(&basis[t[j + 1]])
                        .map(|(a, b)| a + b)
                        .collect();
                    if alg.vanishes(&prod) {
                        continue;
                    }
                    let mut u = t[..j].to_vec();
                    u.push(index[&prod]);
                    u.extend_from_slice(&t[j + 2..]);
                    let sign = if j % 2 == 0 {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                    let e = row.entry(pos[&u]).or_insert_with(BigRational::zero);
                    *e += sign;
                    if e.is_zero() {
                        row.remove(&pos[&u]);
                    }
                }
                row
            })
            .collect();
        rank(rows)
    };
    (0..=order)
        .map(|i| {
            tensors[i]
                .iter()
                .map(|(&d, ts)| ts.len() - rank_of(i, d) - rank_of(i + 1, d))
                .sum()
        })
        .collect()
}

/// `(1+t)^n Σ_m (Σ_i h_i t^{i+1})^m`, truncated, by repeated polynomial
/// multiplication.
pub fn serre_geometric(n: usize, homology: &[u64], order: usize) -> Vec<i128> {
    let truncate = |mut p: Vec<i128>| {
        p.truncate(order + 1);
        p.resize(order + 1, 0);
        p
    };
    let mul = |a: &[i128], b: &[i128]| {
        let mut out = vec![0i128; order + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= order {
                    out[i + j] += x * y;
                }
            }
        }
        out
    };
    let mut numer = truncate(vec![1]);
    for _ in 0..n {
        numer = mul(&numer, &truncate(vec![1, 1]));
    }
    let mut q = vec![0i128; order + 1];
    for (i, &h) in homology.iter().enumerate().skip(1) {
        if i < order {
            q[i + 1] = h as i128;
        }
    }
    let mut geometric = truncate(vec![1]);
    let mut power = truncate(vec![1]);
    for _ in 0..order {
        power = mul(&power, &q);
        for (g, p) in geometric.iter_mut().zip(&power) {
            *g += p;
        }
    }
    mul(&numer, &geometric)
}

/// Poincaré series of a polynomial ring in `n` variables: binomials.
pub fn regular_poincare(n: usize, order: usize) -> Vec<u64> {
    (0..=order)
        .map(|i| {
            if i > n {
                0
            } else {
                (0..i).fold(1u64, |acc, j| acc * (n - j) as u64 / (j as u64 + 1))
            }
        })
        .collect()
}
