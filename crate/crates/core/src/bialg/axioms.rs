use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::presentation::Presentation;
use crate::exactq::{unit_vec, zero_vec, Rational};
use crate::par;

/// Where an axiom first failed: degrees and basis indices of the offending
/// basis elements, in the order they enter the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degrees: Vec<usize>,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub ok: bool,
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    fn from_witness(w: Option<Witness>) -> Self {
        AxiomCheck {
            ok: w.is_none(),
            witness: w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub connected: AxiomCheck,
    pub unit: AxiomCheck,
    pub associativity: AxiomCheck,
    pub coassociativity: AxiomCheck,
    pub counit: AxiomCheck,
    pub compatibility: AxiomCheck,
    pub verdict: bool,
}

impl AxiomReport {
    /// Name and witness of the first failing axiom.
    pub fn first_failure(&self) -> Option<(&'static str, &AxiomCheck)> {
        [
            ("connected", &self.connected),
            ("unit", &self.unit),
            ("associativity", &self.associativity),
            ("coassociativity", &self.coassociativity),
            ("counit", &self.counit),
            ("compatibility", &self.compatibility),
        ]
        .into_iter()
        .find(|(_, c)| !c.ok)
    }
}

fn w(degrees: &[usize], indices: &[usize]) -> Witness {
    Witness {
        degrees: degrees.to_vec(),
        indices: indices.to_vec(),
    }
}

fn first_some<T: Send>(items: Vec<Option<T>>) -> Option<T> {
    items.into_iter().flatten().next()
}

fn check_unit(h: &Presentation) -> Option<Witness> {
    for p in 0..=h.max_degree() {
        for i in 0..h.dim(p) {
            let expect = vec![(i, Rational::one())];
            if *h.product_terms(0, 0, p, i) != expect {
                return Some(w(&[0, p], &[0, i]));
            }
            if *h.product_terms(p, i, 0, 0) != expect {
                return Some(w(&[p, 0], &[i, 0]));
            }
        }
    }
    None
}

fn check_associativity(h: &Presentation) -> Option<Witness> {
    let n_max = h.max_degree();
    let mut triples = Vec::new();
    for n in 0..=n_max {
        for p in 0..=n {
            for q in 0..=n - p {
                triples.push((p, q, n - p - q));
            }
        }
    }
    first_some(par::map(triples, |(p, q, r)| {
        let n = p + q + r;
        for i in 0..h.dim(p) {
            for j in 0..h.dim(q) {
                for k in 0..h.dim(r) {
                    let mut left = zero_vec(h.dim(n));
                    for (a, c) in h.product_terms(p, i, q, j) {
                        for (b, t) in h.product_terms(p + q, *a, r, k) {
                            left[*b] += c * t;
                        }
                    }
                    let mut right = zero_vec(h.dim(n));
                    for (a, c) in h.product_terms(q, j, r, k) {
                        for (b, t) in h.product_terms(p, i, q + r, *a) {
                            right[*b] += c * t;
                        }
                    }
                    if left != right {
                        return Some(w(&[p, q, r], &[i, j, k]));
                    }
                }
            }
        }
        None
    }))
}

type Tensor3 = BTreeMap<(usize, usize, usize, usize, usize), Rational>;

fn add3(map: &mut Tensor3, key: (usize, usize, usize, usize, usize), c: Rational) {
    let e = map.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

fn check_coassociativity(h: &Presentation) -> Option<Witness> {
    let items: Vec<(usize, usize)> = (0..=h.max_degree())
        .flat_map(|n| (0..h.dim(n)).map(move |i| (n, i)))
        .collect();
    first_some(par::map(items, |(n, i)| {
        let mut left = Tensor3::new();
        let mut right = Tensor3::new();
        for t in h.coproduct_terms(n, i) {
            let p = t.left_degree;
            for s in h.coproduct_terms(p, t.left) {
                let key = (s.left_degree, p - s.left_degree, s.left, s.right, t.right);
                add3(&mut left, key, &t.coeff * &s.coeff);
            }
            for s in h.coproduct_terms(n - p, t.right) {
                let key = (p, s.left_degree, t.left, s.left, s.right);
                add3(&mut right, key, &t.coeff * &s.coeff);
            }
        }
        (left != right).then(|| w(&[n], &[i]))
    }))
}

fn check_counit(h: &Presentation) -> Option<Witness> {
    for n in 0..=h.max_degree() {
        for i in 0..h.dim(n) {
            let mut left = zero_vec(h.dim(n));
            let mut right = zero_vec(h.dim(n));
            for t in h.coproduct_terms(n, i) {
                if t.left_degree == 0 {
                    left[t.right] += &t.coeff;
                }
                if t.left_degree == n {
                    right[t.left] += &t.coeff;
                }
            }
            let e = unit_vec(h.dim(n), i);
            if left != e || right != e {
                return Some(w(&[n], &[i]));
            }
        }
    }
    None
}

type Tensor2 = BTreeMap<(usize, usize, usize), Rational>;

fn add2(map: &mut Tensor2, key: (usize, usize, usize), c: Rational) {
    let e = map.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

fn check_compatibility(h: &Presentation) -> Option<Witness> {
    let n_max = h.max_degree();
    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |p| (p, n - p)))
        .collect();
    first_some(par::map(pairs, |(p, q)| {
        for i in 0..h.dim(p) {
            for j in 0..h.dim(q) {
                let mut lhs = Tensor2::new();
                for (k, c) in h.product_terms(p, i, q, j) {
                    for t in h.coproduct_terms(p + q, *k) {
                        add2(&mut lhs, (t.left_degree, t.left, t.right), c * &t.coeff);
                    }
                }
                let mut rhs = Tensor2::new();
                for s in h.coproduct_terms(p, i) {
                    for t in h.coproduct_terms(q, j) {
                        let c = &s.coeff * &t.coeff;
                        let (p1, p2) = (s.left_degree, t.left_degree);
                        let left = h.product_terms(p1, s.left, p2, t.left);
                        let right = h.product_terms(p - p1, s.right, q - p2, t.right);
                        for (x, cx) in left {
                            for (y, cy) in right {
                                add2(&mut rhs, (p1 + p2, *x, *y), &c * cx * cy);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(w(&[p, q], &[i, j]));
                }
            }
        }
        None
    }))
}

/// Verify the graded bialgebra axioms on all basis tuples of total degree
/// `<= N`. Grading of `m` and `Δ` is guaranteed by the table layout.
pub fn check_axioms(h: &Presentation) -> AxiomReport {
    let connected = AxiomCheck::from_witness((h.dim(0) != 1).then(|| w(&[0], &[])));
    let unit = AxiomCheck::from_witness(check_unit(h));
    let associativity = AxiomCheck::from_witness(check_associativity(h));
    let coassociativity = AxiomCheck::from_witness(check_coassociativity(h));
    let counit = AxiomCheck::from_witness(check_counit(h));
    let compatibility = AxiomCheck::from_witness(check_compatibility(h));
    let verdict = connected.ok
        && unit.ok
        && associativity.ok
        && coassociativity.ok
        && counit.ok
        && compatibility.ok;
    AxiomReport {
        connected,
        unit,
        associativity,
        coassociativity,
        counit,
        compatibility,
        verdict,
    }
}
