//! Generators of random inputs and independent oracles shared by the
//! integration and acceptance tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dgq_core::element::int;
use dgq_core::ginzburg::Superpotential;
use dgq_core::path::{paths_bounded, paths_of_length};
use dgq_core::{Arrow, ArrowId, Element, GradedQuiver, Path, PresentedAlgebra, QuadraticPresentation, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn word(q: &GradedQuiver, start: Vertex, ids: &[&str]) -> Element {
    let arrows: Vec<ArrowId> = ids.iter().map(|s| q.lookup(s).unwrap()).collect();
    Element::from_path(Path::from_arrows(q, start, arrows).expect("composable"))
}

fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    let c = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// Random quiver with arrows in bidegree (0, 1).
pub fn random_quiver(rng: &mut impl Rng, max_vertices: u32, max_arrows: usize) -> GradedQuiver {
    let nv = rng.gen_range(1..=max_vertices);
    let na = rng.gen_range(1..=max_arrows);
    let arrows = (0..na)
        .map(|i| Arrow::new(format!("a{i}"), rng.gen_range(0..nv), rng.gen_range(0..nv), 0, 1))
        .collect();
    GradedQuiver::new((0..nv).collect(), arrows).unwrap()
}

/// Random quadratic presentation: up to three relators, each a random
/// combination of length-2 paths between one pair of vertices.
pub fn random_quadratic(rng: &mut impl Rng) -> QuadraticPresentation {
    let q = random_quiver(rng, 2, 4);
    let mut groups: BTreeMap<(Vertex, Vertex), Vec<Path>> = BTreeMap::new();
    for p in paths_of_length(&q, 2) {
        groups.entry((p.start(), p.end())).or_default().push(p);
    }
    let groups: Vec<Vec<Path>> = groups.into_values().collect();
    let mut relators = Vec::new();
    if !groups.is_empty() {
        for _ in 0..rng.gen_range(0..=3) {
            let g = groups.choose(rng).unwrap();
            let mut r = Element::zero();
            for p in g {
                if rng.gen_bool(0.6) {
                    r.add_term(p.clone(), int(nonzero(rng, 2)));
                }
            }
            if !r.is_zero() {
                relators.push(r);
            }
        }
    }
    QuadraticPresentation::new(q, relators).unwrap()
}

/// Random potential on a random quiver, built from cycles of length <= 5.
pub fn random_potential(rng: &mut impl Rng) -> Superpotential {
    let q = random_quiver(rng, 3, 5);
    let cycles: Vec<Path> = (1..=5).flat_map(|l| paths_of_length(&q, l)).filter(|p| p.start() == p.end()).collect();
    let mut terms = Vec::new();
    if !cycles.is_empty() {
        for _ in 0..rng.gen_range(1..=4) {
            let c = cycles.choose(rng).unwrap();
            terms.push((int(nonzero(rng, 3)), c.arrows().to_vec()));
        }
    }
    Superpotential::new(q, terms).unwrap()
}

/// Random potential whose cycles all have the same length, so that it is
/// Adams-homogeneous. `None` when the random quiver has no such cycle.
pub fn random_homogeneous_potential(rng: &mut impl Rng) -> Option<Superpotential> {
    let q = random_quiver(rng, 3, 5);
    let len = rng.gen_range(2..=4);
    let cycles: Vec<Path> = paths_of_length(&q, len).into_iter().filter(|p| p.start() == p.end()).collect();
    if cycles.is_empty() {
        return None;
    }
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| (int(nonzero(rng, 3)), cycles.choose(rng).unwrap().arrows().to_vec()))
        .collect();
    Some(Superpotential::new(q, terms).unwrap())
}

/// A random element homogeneous of homological degree `h` made of paths of
/// Adams degree at most `nadams`, or `None` when there are no such paths.
pub fn random_homogeneous(rng: &mut impl Rng, q: &GradedQuiver, h: i32, nadams: u32) -> Option<Element> {
    let pool: Vec<Path> = paths_bounded(q, nadams, h, usize::MAX).unwrap().into_iter().filter(|p| p.hdeg(q) == h).collect();
    if pool.is_empty() {
        return None;
    }
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..=3) {
        e.add_term(pool.choose(rng).unwrap().clone(), int(nonzero(rng, 4)));
    }
    Some(e)
}

/// Number of monomials `x^e` in `n = weights.len()` variables with
/// `Σ e_i = deg` and `Σ e_i a_i ≡ residue (mod m)`.
pub fn weighted_monomials(weights: &[u32], m: u32, deg: u32, residue: u32) -> usize {
    fn go(weights: &[u32], m: u32, deg: u32, acc: u32, residue: u32) -> usize {
        match weights.split_first() {
            None => usize::from(deg == 0 && acc % m == residue % m),
            Some((&a, rest)) => (0..=deg).map(|e| go(rest, m, deg - e, acc + e * a, residue)).sum(),
        }
    }
    go(weights, m, deg, 0, residue)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `k[x_1..x_n] # ℤ/m` as the McKay quiver modulo commutation, with the
/// extra relator `e_0`. Arrows are named `a{j}.{i}`.
pub fn lambda_mod_e0(m: u32, weights: &[u32]) -> PresentedAlgebra {
    let n = weights.len();
    let mut arrows = Vec::new();
    for j in 0..m {
        for (i, &a) in weights.iter().enumerate() {
            arrows.push(Arrow::new(format!("a{j}.{}", i + 1), j, (j + a) % m, 0, 1));
        }
    }
    let q = GradedQuiver::new((0..m).collect(), arrows).unwrap();
    let mut relators = vec![Element::idempotent(0)];
    for j in 0..m {
        for k in 1..=n {
            for l in k + 1..=n {
                let mk = (j + weights[k - 1]) % m;
                let ml = (j + weights[l - 1]) % m;
                let r = &word(&q, j, &[&format!("a{j}.{k}"), &format!("a{mk}.{l}")])
                    - &word(&q, j, &[&format!("a{j}.{l}"), &format!("a{ml}.{k}")]);
                relators.push(r);
            }
        }
    }
    PresentedAlgebra::new(q, relators).unwrap()
}

/// Map from the degree-0 arrows of the deleted McKay model to the arrows of
/// [`lambda_mod_e0`].
pub fn lambda_map(m: u32, weights: &[u32]) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    for j in 1..m {
        for (i, &a) in weights.iter().enumerate() {
            let t = (j + a) % m;
            if t != 0 {
                map.insert(format!("x{j}:{}:{t}", i + 1), format!("a{j}.{}", i + 1));
            }
        }
    }
    map
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Nondecreasing weight vectors of length `n` in `1..m` with every weight
/// prime to `m` and sum divisible by `m`.
pub fn valid_weights(m: u32, n: usize) -> Vec<Vec<u32>> {
    fn go(m: u32, n: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if cur.iter().sum::<u32>() % m == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in min..m {
            if gcd(a, m) == 1 {
                cur.push(a);
                go(m, n, a, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, n, 1, &mut Vec::new(), &mut out);
    out
}

/// Reference `ε_{A,B}`: sort the word "A ascending, then B ascending" by
/// adjacent transpositions and count them.
pub fn bubble_sign(a: &[usize], b: &[usize]) -> i64 {
    let mut w: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut swaps = 0;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}
