//! Cross-checks the finite-field census against a naive count in plain
//! integer arithmetic and an orbit count from Burnside's lemma.

use std::collections::BTreeSet;

use assoc2::moduli::{enumerate_finite_field, AlgebraClass};

type Table = [u32; 8];

fn entry(m: &Table, i: usize, j: usize, k: usize) -> u32 {
    m[4 * i + 2 * j + k]
}

fn product(m: &Table, p: u32, a: [u32; 2], b: [u32; 2]) -> [u32; 2] {
    let mut out = [0; 2];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            for (k, o) in out.iter_mut().enumerate() {
                *o = (*o + ai * bj * entry(m, i, j, k)) % p;
            }
        }
    }
    out
}

fn associative(m: &Table, p: u32) -> bool {
    let e = [[1, 0], [0, 1]];
    e.iter().all(|&a| {
        e.iter().all(|&b| {
            e.iter().all(|&c| {
                product(m, p, product(m, p, a, b), c) == product(m, p, a, product(m, p, b, c))
            })
        })
    })
}

fn tables(p: u32) -> impl Iterator<Item = Table> {
    (0..p.pow(8)).map(move |code| std::array::from_fn(|i| code / p.pow(i as u32) % p))
}

/// Invertible 2x2 matrices mod p as columns `[g e1, g e2]`.
fn group(p: u32) -> Vec<[[u32; 2]; 2]> {
    let mut g = Vec::new();
    for code in 0..p.pow(4) {
        let [a, b, c, d]: [u32; 4] = std::array::from_fn(|i| code / p.pow(i as u32) % p);
        if !(a * d + p * p - b * c).is_multiple_of(p) {
            g.push([[a, c], [b, d]]);
        }
    }
    g
}

/// Transports `m` along the basis change whose new basis vectors are the columns of `g`.
fn transport(m: &Table, p: u32, g: &[[u32; 2]; 2]) -> Table {
    let [[a, c], [b, d]] = *g;
    let det_inv = (1..p)
        .find(|x| (a * d + p * p - b * c) % p * x % p == 1)
        .unwrap();
    let solve = |v: [u32; 2]| {
        [
            det_inv * ((d * v[0] + p * p - b * v[1]) % p) % p,
            det_inv * ((a * v[1] + p * p - c * v[0]) % p) % p,
        ]
    };
    let mut out = [0; 8];
    for i in 0..2 {
        for j in 0..2 {
            let w = solve(product(m, p, g[i], g[j]));
            out[4 * i + 2 * j] = w[0];
            out[4 * i + 2 * j + 1] = w[1];
        }
    }
    out
}

fn check(p: u32) {
    let census = enumerate_finite_field(p).unwrap();
    let assoc: Vec<Table> = tables(p).filter(|m| associative(m, p)).collect();
    assert_eq!(census.total_tables, p.pow(8) as usize);
    assert_eq!(census.associative_tables, assoc.len());

    let g = group(p);
    assert_eq!(census.group_order, g.len());
    let fixed: usize = g
        .iter()
        .map(|h| assoc.iter().filter(|m| transport(m, p, h) == **m).count())
        .sum();
    assert_eq!(fixed % g.len(), 0);
    assert_eq!(census.orbit_count, fixed / g.len());

    let sizes: usize = census.orbits.iter().map(|o| o.size).sum();
    assert_eq!(sizes, assoc.len());
    for o in &census.orbits {
        let rep: Table = o.representative.clone().try_into().unwrap();
        let orbit: BTreeSet<Table> = g.iter().map(|h| transport(&rep, p, h)).collect();
        assert_eq!(orbit.len(), o.size);
        assert_eq!(g.len() % o.size, 0);
    }
    assert!(census
        .class_counts
        .keys()
        .all(|c| *c != AlgebraClass::Inconsistent));
}

#[test]
fn census_over_f2_matches_naive_count() {
    check(2);
}

#[test]
fn census_over_f3_matches_naive_count() {
    check(3);
}
