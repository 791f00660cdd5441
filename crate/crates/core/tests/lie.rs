mod common;

use primfree::bialg::{check_axioms, check_cocommutative, Element, Presentation};
use primfree::exactq::{q, vec_from_i64, Subspace};
use primfree::freealg::{check_free, extract_generators, word_counts};
use primfree::lie::{
    abelian_lie, all_primitives, bracket, certify_prim_free, derived_subspace, enveloping,
    free_lie_presentation, graded_witt_counts, heisenberg_lie, is_lyndon, lemma25_check,
    lie_generators, lyndon_words, pbw_series, primitives, StageStatus,
};
use primfree::models::{fqsym_model, nsym_model, tensor_model};
use proptest::prelude::*;
use rand::Rng;

fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn necklace_formula(k: i64, n: usize) -> i64 {
    let s: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * k.pow((n / d) as u32))
        .sum();
    s / n as i64
}

/// Aperiodic words strictly smaller than all their rotations.
fn lyndon_by_rotation(k: usize, n: usize) -> usize {
    let mut count = 0;
    let total = k.pow(n as u32);
    for mut code in 0..total {
        let mut w = vec![0; n];
        for c in w.iter_mut().rev() {
            *c = code % k;
            code /= k;
        }
        if (1..n).all(|r| {
            let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
            w < rot
        }) {
            count += 1;
        }
    }
    count
}

#[test]
fn tensor_primitives_have_witt_dimensions() {
    let t = tensor_model(2, 6).unwrap();
    let prims = all_primitives(&t).unwrap();
    let dims: Vec<usize> = prims[1..].iter().map(Subspace::dim).collect();
    let rotation: Vec<usize> = (1..=6).map(|n| lyndon_by_rotation(2, n)).collect();
    let formula: Vec<usize> = (1..=6).map(|n| necklace_formula(2, n) as usize).collect();
    assert_eq!(rotation, vec![2, 1, 2, 3, 6, 9]);
    assert_eq!(formula, rotation);
    assert_eq!(dims, rotation);
    let u = [0, 2];
    let lyndon: Vec<usize> = (1..=6).map(|n| lyndon_words(&u, n).len()).collect();
    assert_eq!(lyndon, rotation);
}

#[test]
fn three_letter_witt_counts() {
    let formula: Vec<usize> = (1..=5).map(|n| necklace_formula(3, n) as usize).collect();
    let counts = graded_witt_counts(&[0, 3], 5);
    assert_eq!(counts[1..], formula[..]);
    let t = tensor_model(3, 4).unwrap();
    for n in 1..=4 {
        assert_eq!(primitives(&t, n).unwrap().dim(), formula[n - 1]);
    }
}

#[test]
fn fqsym_second_lie_generator() {
    let f = fqsym_model(3).unwrap();
    // degree 2 basis is (F12, F21): the reduced coproduct sends both to F1⊗F1
    let p2 = primitives(&f, 2).unwrap();
    assert_eq!(p2, Subspace::span(2, vec![vec_from_i64(&[1, -1])]).unwrap());
    let f1 = Element::basis(&f, 1, 0);
    assert!(bracket(&f, &f1, &f1).unwrap().is_zero());
    assert!(derived_subspace(&f, 2).unwrap().is_zero());
    let u = lie_generators(&f).unwrap().multiplicities();
    assert_eq!(u[..3], [0, 1, 1]);
}

fn random_primitive(rng: &mut impl Rng, prims: &[Subspace], n: usize) -> Option<Element> {
    let basis = prims[n].basis();
    if basis.is_empty() {
        return None;
    }
    let mut v = vec![q(0); prims[n].ambient_dim()];
    for b in basis {
        let c = q(rng.gen_range(-2..=2));
        for (x, y) in v.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    Some(Element::new(n, v))
}

fn check_lie_identities(h: &Presentation, seed: u64) {
    let prims = all_primitives(h).unwrap();
    let mut rng = common::rng(seed);
    let n_max = h.max_degree();
    for _ in 0..20 {
        let a = rng.gen_range(1..=n_max);
        let b = rng.gen_range(1..=n_max);
        if a + b <= n_max {
            let (Some(x), Some(y)) = (random_primitive(&mut rng, &prims, a), random_primitive(&mut rng, &prims, b)) else {
                continue;
            };
            let xy = bracket(h, &x, &y).unwrap();
            let yx = bracket(h, &y, &x).unwrap();
            assert!(xy.coords.iter().zip(&yx.coords).all(|(s, t)| *s == -t));
            assert!(prims[a + b].contains(&xy.coords).unwrap(), "{} {a}+{b}", h.name());
        }
        let c = rng.gen_range(1..=n_max);
        if a + b + c <= n_max {
            let (Some(x), Some(y), Some(z)) = (
                random_primitive(&mut rng, &prims, a),
                random_primitive(&mut rng, &prims, b),
                random_primitive(&mut rng, &prims, c),
            ) else {
                continue;
            };
            let j1 = bracket(h, &x, &bracket(h, &y, &z).unwrap()).unwrap();
            let j2 = bracket(h, &y, &bracket(h, &z, &x).unwrap()).unwrap();
            let j3 = bracket(h, &z, &bracket(h, &x, &y).unwrap()).unwrap();
            let total: Vec<_> = (0..j1.coords.len())
                .map(|i| &j1.coords[i] + &j2.coords[i] + &j3.coords[i])
                .collect();
            assert!(total.iter().all(|c| *c == q(0)));
        }
    }
}

#[test]
fn primitives_form_a_lie_algebra() {
    check_lie_identities(&tensor_model(2, 5).unwrap(), 1);
    check_lie_identities(&nsym_model(6).unwrap(), 2);
    check_lie_identities(&fqsym_model(4).unwrap(), 3);
}

#[test]
fn certificates_of_models() {
    let cases = [
        (tensor_model(2, 5).unwrap(), vec![2, 0, 0, 0, 0]),
        (nsym_model(6).unwrap(), vec![1; 6]),
        (fqsym_model(4).unwrap(), vec![1, 1, 2, 10]),
    ];
    for (h, u) in cases {
        let c = certify_prim_free(&h).unwrap();
        assert!(c.verdict, "{}", h.name());
        let got: Vec<usize> = c.lie_multiplicities()[1..].iter().map(|m| m.unwrap()).collect();
        assert_eq!(got, u, "{}", h.name());
        // the graded pieces of the induced filtration on Prim(H) fit inside Prim(Gr H)
        assert_eq!(c.stage("gr_primitives").unwrap().status, StageStatus::Pass);
        for d in &c.degrees {
            let pf = d.prim_filtration_dims.as_ref().unwrap();
            let gp = d.gr_prim_layer_dims.as_ref().unwrap();
            for k in 0..gp.len() {
                assert!(pf[k] - pf[k + 1] <= gp[k]);
            }
        }
        // Lyndon counts in the Lie generators match Prim(H)
        let witt = graded_witt_counts(&{
            let mut v = vec![0];
            v.extend(&u);
            v
        }, h.max_degree());
        for d in c.degrees.iter().skip(1) {
            assert_eq!(d.lyndon_rank, Some(witt[d.n]));
            assert_eq!(d.dim_prim, Some(witt[d.n]));
        }
    }
}

#[test]
fn certificate_is_basis_independent() {
    let mut rng = common::rng(5);
    for h in [nsym_model(5).unwrap(), fqsym_model(4).unwrap()] {
        let a = certify_prim_free(&h).unwrap();
        let p = h.permute_basis(&common::random_permutations(&mut rng, &h)).unwrap();
        let b = certify_prim_free(&p).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.lie_multiplicities(), b.lie_multiplicities());
        for (x, y) in a.degrees.iter().zip(&b.degrees) {
            assert_eq!(x.dim_prim, y.dim_prim);
            assert_eq!(x.filtration_dims, y.filtration_dims);
            assert_eq!(x.lyndon_rank, y.lyndon_rank);
        }
    }
}

#[test]
fn enveloping_free_lie_matches_tensor_model() {
    let g = free_lie_presentation(2, 5).unwrap();
    let witt: Vec<usize> = (0..=5).map(|n| g.dim(n)).collect();
    assert_eq!(witt, vec![0, 2, 1, 2, 3, 6]);
    let u = enveloping(&g).unwrap();
    let t = tensor_model(2, 5).unwrap();
    assert_eq!(u.dim_vec(), t.dim_vec());
    let gens = extract_generators(&u).unwrap();
    assert_eq!(gens.multiplicities(), vec![0, 2, 0, 0, 0, 0]);
    let free = check_free(&u, &gens).unwrap();
    assert!(free.ok);
    assert_eq!(free.ranks, word_counts(&[0, 2], 5));
    let c = certify_prim_free(&u).unwrap();
    assert!(c.verdict);
}

#[test]
fn enveloping_algebras_of_small_lie_algebras() {
    let cases = [
        abelian_lie(&[0, 2, 1, 0, 0]).unwrap(),
        free_lie_presentation(2, 4).unwrap(),
        heisenberg_lie(4).unwrap(),
    ];
    for g in cases {
        let u = enveloping(&g).unwrap();
        assert!(check_axioms(&u).verdict, "{}", g.name());
        assert!(check_cocommutative(&u).ok, "{}", g.name());
        assert!(lemma25_check(&g).unwrap(), "{}", g.name());
        for n in 1..=g.max_degree() {
            assert_eq!(primitives(&u, n).unwrap().dim(), g.dim(n), "{} n={n}", g.name());
        }
        let c: Vec<usize> = (0..=g.max_degree()).map(|n| g.dim(n)).collect();
        let series = pbw_series(&c, g.max_degree());
        let dims: Vec<i128> = u.dim_vec().into_iter().map(|d| d as i128).collect();
        assert_eq!(series, dims);
    }
}

/// Multisets of colored parts: `c[d]` colors of part size `d`.
fn colored_partitions(c: &[usize], n: usize, max_part: usize) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for d in 1..=max_part.min(n) {
        let colors = c.get(d).copied().unwrap_or(0);
        // choose a multiset of size m >= 1 of parts of size d, then smaller parts
        for m in 1..=n / d {
            let multisets = binomial((colors + m) as i128 - 1, m as i128);
            total += multisets * colored_partitions(c, n - m * d, d - 1);
        }
    }
    total
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Weighted Lyndon count by rotation over a word alphabet with `u[d]` letters of weight `d`.
fn weighted_lyndon_by_rotation(u: &[usize], n: usize) -> usize {
    fn words(u: &[usize], left: usize, prefix: &mut Vec<(usize, usize)>, count: &mut usize) {
        if left == 0 {
            let w = prefix.clone();
            let k = w.len();
            if (1..k).all(|r| {
                let rot: Vec<_> = w[r..].iter().chain(&w[..r]).copied().collect();
                w < rot
            }) {
                *count += 1;
            }
            return;
        }
        for d in 1..=left.min(u.len() - 1) {
            for i in 0..u[d] {
                prefix.push((d, i));
                words(u, left - d, prefix, count);
                prefix.pop();
            }
        }
    }
    let mut count = 0;
    words(u, n, &mut Vec::new(), &mut count);
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pbw_series_counts_colored_partitions(c in proptest::collection::vec(0usize..4, 1..7)) {
        let n_max = 8;
        let mut c = c;
        c[0] = 0;
        let s = pbw_series(&c, n_max);
        for n in 0..=n_max {
            prop_assert_eq!(s[n], colored_partitions(&c, n, n));
        }
    }

    #[test]
    fn witt_counts_agree_with_lyndon_enumeration(u in proptest::collection::vec(0usize..3, 2..5)) {
        let mut u = u;
        u[0] = 0;
        let n_max = 6;
        let witt = graded_witt_counts(&u, n_max);
        for n in 1..=n_max {
            let words = lyndon_words(&u, n);
            prop_assert!(words.iter().all(|w| is_lyndon(w)));
            prop_assert!(words.iter().all(|w| w.iter().map(|s| s.degree).sum::<usize>() == n));
            prop_assert_eq!(words.len(), witt[n]);
            prop_assert_eq!(words.len(), weighted_lyndon_by_rotation(&u, n));
        }
        // words factor uniquely as products of Lyndon words
        let series = pbw_series(&witt, n_max);
        let w = word_counts(&u, n_max);
        for n in 0..=n_max {
            prop_assert_eq!(series[n], w[n] as i128);
        }
    }
}
