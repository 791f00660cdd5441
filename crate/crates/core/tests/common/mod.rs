#![allow(dead_code)]

use primfree::bialg::{Element, Presentation};
use primfree::exactq::{q, QVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A nonzero vector with small integer entries.
pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> QVector {
    loop {
        let v: QVector = (0..len).map(|_| q(rng.gen_range(-3..=3))).collect();
        if v.iter().any(|c| *c != q(0)) {
            return v;
        }
    }
}

/// Positive-degree factors with total degree at most `N`.
pub fn random_factors(rng: &mut ChaCha8Rng, h: &Presentation) -> Vec<Element> {
    let total = rng.gen_range(1..=h.max_degree());
    let mut left = total;
    let mut out = Vec::new();
    while left > 0 {
        let d = rng.gen_range(1..=left);
        if h.dim(d) > 0 {
            out.push(Element::new(d, random_vector(rng, h.dim(d))));
            left -= d;
        } else if d == left {
            break;
        }
    }
    if out.is_empty() {
        out.push(Element::new(1, random_vector(rng, h.dim(1))));
    }
    out
}

pub fn random_permutations(rng: &mut ChaCha8Rng, h: &Presentation) -> Vec<Vec<usize>> {
    (0..=h.max_degree())
        .map(|n| {
            let mut p: Vec<usize> = (0..h.dim(n)).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}
