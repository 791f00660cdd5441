use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::lyndon::{evaluate_tree, lyndon_basis, LyndonTree, Symbol};
use super::bracket;
use crate::bialg::{counital_filtration, CoTerm, Element, Presentation, PresentationBuilder};
use crate::error::{Error, Result};
use crate::exactq::{express, q, to_dense, unit_vec, zero_vec, QVector, Rational, Subspace, Terms};
use crate::freealg::GeneratorSet;
use crate::models::tensor_model;
use crate::par;

/// A positively graded Lie algebra truncated at degree `N`, by structure
/// constants `[e_{p,i}, e_{q,j}]` for `p + q <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePresentation {
    name: String,
    labels: Vec<Vec<String>>,
    brackets: BTreeMap<(usize, usize, usize, usize), Terms>,
}

impl LiePresentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_degree(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn bracket_terms(&self, p: usize, i: usize, q: usize, j: usize) -> &[(usize, Rational)] {
        self.brackets.get(&(p, i, q, j)).map_or(&[], Vec::as_slice)
    }

    /// `[x, y]` for `x ∈ g_p`, `y ∈ g_q`.
    pub fn bracket(&self, p: usize, x: &[Rational], q: usize, y: &[Rational]) -> Result<QVector> {
        if p + q > self.max_degree() {
            return Err(Error::Truncation {
                left: p,
                right: q,
                max: self.max_degree(),
            });
        }
        let mut out = zero_vec(self.dim(p + q));
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_terms(p, i, q, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    fn basis_bracket(&self, p: usize, i: usize, q: usize, j: usize) -> QVector {
        to_dense(&self.bracket_terms(p, i, q, j).to_vec(), self.dim(p + q))
    }

    fn validate(&self) -> Result<()> {
        let n_max = self.max_degree();
        let basis: Vec<(usize, usize)> = (1..=n_max)
            .flat_map(|n| (0..self.dim(n)).map(move |i| (n, i)))
            .collect();
        for &(p, i) in &basis {
            for &(q, j) in &basis {
                if p + q > n_max {
                    continue;
                }
                let xy = self.basis_bracket(p, i, q, j);
                let yx = self.basis_bracket(q, j, p, i);
                if xy.iter().zip(&yx).any(|(a, b)| !(a + b).is_zero()) {
                    return Err(Error::InvalidLie(format!(
                        "antisymmetry fails on ({p},{i}), ({q},{j})"
                    )));
                }
            }
        }
        for &(p, i) in &basis {
            for &(q, j) in &basis {
                for &(r, k) in &basis {
                    if p + q + r > n_max {
                        continue;
                    }
                    let x = unit_vec(self.dim(p), i);
                    let y = unit_vec(self.dim(q), j);
                    let z = unit_vec(self.dim(r), k);
                    let a = self.bracket(p, &x, q + r, &self.bracket(q, &y, r, &z)?)?;
                    let b = self.bracket(q, &y, r + p, &self.bracket(r, &z, p, &x)?)?;
                    let c = self.bracket(r, &z, p + q, &self.bracket(p, &x, q, &y)?)?;
                    if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !(a + b + c).is_zero()) {
                        return Err(Error::InvalidLie(format!(
                            "Jacobi fails on ({p},{i}), ({q},{j}), ({r},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`LiePresentation`].
#[derive(Clone, Debug)]
pub struct LieBuilder {
    inner: LiePresentation,
}

impl LieBuilder {
    /// `labels[n]` names the basis of `g_n`; `labels[0]` must be empty.
    pub fn new(name: impl Into<String>, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::InvalidLie("truncation degree must be at least 1".into()));
        }
        if !labels[0].is_empty() {
            return Err(Error::InvalidLie("degree 0 component must be zero".into()));
        }
        Ok(LieBuilder {
            inner: LiePresentation {
                name: name.into(),
                labels,
                brackets: BTreeMap::new(),
            },
        })
    }

    /// Set `[e_{p,i}, e_{q,j}]` only; the reverse bracket is left alone.
    pub fn set_bracket_raw(&mut self, p: usize, i: usize, q: usize, j: usize, terms: Terms) -> Result<()> {
        let g = &self.inner;
        if p + q > g.max_degree() {
            return Err(Error::Truncation {
                left: p,
                right: q,
                max: g.max_degree(),
            });
        }
        if i >= g.dim(p) || j >= g.dim(q) || terms.iter().any(|(k, _)| *k >= g.dim(p + q)) {
            return Err(Error::InvalidLie(format!("bracket index out of range at ({p},{i}), ({q},{j})")));
        }
        let terms = crate::exactq::to_terms(&to_dense(&terms, g.dim(p + q)));
        self.inner.brackets.insert((p, i, q, j), terms);
        Ok(())
    }

    /// Set `[e_{p,i}, e_{q,j}] = terms` and `[e_{q,j}, e_{p,i}] = -terms`.
    pub fn set_bracket(&mut self, p: usize, i: usize, q: usize, j: usize, terms: Terms) -> Result<()> {
        let neg: Terms = terms.iter().map(|(k, c)| (*k, -c)).collect();
        self.set_bracket_raw(p, i, q, j, terms)?;
        self.set_bracket_raw(q, j, p, i, neg)
    }

    /// Validates antisymmetry and Jacobi on all basis triples within degree `N`.
    pub fn build(self) -> Result<LiePresentation> {
        self.inner.validate()?;
        Ok(self.inner)
    }
}

fn labels_from_dims(dims: &[usize], prefix: &str) -> Vec<Vec<String>> {
    dims.iter()
        .enumerate()
        .map(|(n, &d)| (0..d).map(|i| format!("{prefix}{n}_{i}")).collect())
        .collect()
}

/// The abelian Lie algebra with `dims[n]` basis elements in degree `n`.
pub fn abelian_lie(dims: &[usize]) -> Result<LiePresentation> {
    LieBuilder::new("abelian", labels_from_dims(dims, "x"))?.build()
}

/// `x, y` in degree 1 and central `z` in degree 2 with `[x, y] = z`.
pub fn heisenberg_lie(max_degree: usize) -> Result<LiePresentation> {
    let mut labels = vec![Vec::new(), vec!["x".to_string(), "y".to_string()]];
    if max_degree >= 2 {
        labels.push(vec!["z".to_string()]);
    }
    labels.resize(max_degree + 1, Vec::new());
    let mut b = LieBuilder::new("heisenberg", labels)?;
    if max_degree >= 2 {
        b.set_bracket(1, 0, 1, 1, vec![(0, q(1))])?;
    }
    b.build()
}

/// The free Lie algebra on `letters` degree-1 generators, in the Lyndon basis.
/// Structure constants come from commutators in the tensor algebra.
pub fn free_lie_presentation(letters: usize, max_degree: usize) -> Result<LiePresentation> {
    let t = tensor_model(letters, max_degree)?;
    let mut u = vec![0; 2];
    u[1] = letters;
    let letters_set = GeneratorSet {
        generators: std::iter::once(Vec::new())
            .chain(std::iter::once((0..letters).map(|i| unit_vec(letters, i)).collect()))
            .chain((2..=max_degree).map(|_| Vec::new()))
            .collect(),
    };
    let trees: Vec<Vec<LyndonTree>> = (0..=max_degree).map(|n| lyndon_basis(&u, n)).collect();
    let images: Vec<Vec<QVector>> = trees
        .iter()
        .map(|ts| {
            ts.iter()
                .map(|tr| evaluate_tree(&t, tr, &letters_set).map(|e| e.coords))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let name = |s: Symbol| t.labels(1)[s.index].clone();
    let labels = trees
        .iter()
        .map(|ts| ts.iter().map(|tr| tr.render(&name)).collect())
        .collect();
    let mut b = LieBuilder::new(format!("free_lie(d={letters})"), labels)?;
    for p in 1..=max_degree {
        for q in 1..=max_degree - p {
            for (i, x) in images[p].iter().enumerate() {
                for (j, y) in images[q].iter().enumerate() {
                    let z = bracket(&t, &Element::new(p, x.clone()), &Element::new(q, y.clone()))?;
                    let c = express(t.dim(p + q), &images[p + q], &z.coords)?.ok_or_else(|| {
                        Error::InvalidLie("commutator leaves the span of the Lyndon images".into())
                    })?;
                    b.set_bracket_raw(p, i, q, j, crate::exactq::to_terms(&c))?;
                }
            }
        }
    }
    b.build()
}

type Sym = (usize, usize);
type Combination = BTreeMap<Vec<Sym>, Rational>;

struct Straightener<'a> {
    g: &'a LiePresentation,
    memo: HashMap<Vec<Sym>, Combination>,
}

impl<'a> Straightener<'a> {
    fn new(g: &'a LiePresentation) -> Self {
        Straightener {
            g,
            memo: HashMap::new(),
        }
    }

    /// PBW normal form of a word, by rewriting `yx -> xy + [y,x]` at the first
    /// descent. Each step lowers either the length or the number of inversions.
    fn normal_form(&mut self, w: &[Sym]) -> Combination {
        if let Some(c) = self.memo.get(w) {
            return c.clone();
        }
        let out = match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => BTreeMap::from([(w.to_vec(), Rational::from_integer(1.into()))]),
            Some(i) => {
                let (y, x) = (w[i], w[i + 1]);
                let mut swapped = w.to_vec();
                swapped.swap(i, i + 1);
                let mut acc = self.normal_form(&swapped);
                for (k, c) in self.g.bracket_terms(y.0, y.1, x.0, x.1).to_vec() {
                    let mut shorter = w[..i].to_vec();
                    shorter.push((y.0 + x.0, k));
                    shorter.extend_from_slice(&w[i + 2..]);
                    for (m, d) in self.normal_form(&shorter) {
                        let e = acc.entry(m).or_insert_with(Rational::zero);
                        *e += &c * d;
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                acc
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }
}

/// Nondecreasing words of total degree `n` in the symbols of `g`.
fn pbw_monomials(g: &LiePresentation, n: usize) -> Vec<Vec<Sym>> {
    fn go(g: &LiePresentation, left: usize, min: Sym, prefix: &mut Vec<Sym>, out: &mut Vec<Vec<Sym>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for d in min.0..=left {
            let start = if d == min.0 { min.1 } else { 0 };
            for i in start..g.dim(d) {
                prefix.push((d, i));
                go(g, left - d, (d, i), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, n, (1, 0), &mut Vec::new(), &mut out);
    out
}

/// `U(g)` in the PBW basis, with `g` primitive.
pub fn enveloping(g: &LiePresentation) -> Result<Presentation> {
    g.validate()?;
    let n_max = g.max_degree();
    let monomials: Vec<Vec<Vec<Sym>>> = (0..=n_max).map(|n| pbw_monomials(g, n)).collect();
    let index: Vec<HashMap<&[Sym], usize>> = monomials
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect())
        .collect();
    let labels = monomials
        .iter()
        .map(|ms| {
            ms.iter()
                .map(|m| {
                    if m.is_empty() {
                        "1".to_string()
                    } else {
                        m.iter()
                            .map(|&(d, i)| g.labels(d)[i].clone())
                            .collect::<Vec<_>>()
                            .join("*")
                    }
                })
                .collect()
        })
        .collect();
    let mut b = PresentationBuilder::new(format!("U({})", g.name()), labels)?;

    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|p| (0..=n_max - p).map(move |r| (p, r)))
        .collect();
    let products = par::map(pairs, |(p, r)| {
        let mut s = Straightener::new(g);
        let mut out = Vec::new();
        for (i, x) in monomials[p].iter().enumerate() {
            for (j, y) in monomials[r].iter().enumerate() {
                let nf = s.normal_form(&[x.as_slice(), y.as_slice()].concat());
                let terms: Terms = nf.into_iter().map(|(m, c)| (index[p + r][m.as_slice()], c)).collect();
                out.push((p, i, r, j, terms));
            }
        }
        out
    });
    for (p, i, r, j, terms) in products.into_iter().flatten() {
        b.set_product(p, i, r, j, terms)?;
    }

    for (n, ms) in monomials.iter().enumerate() {
        for (i, m) in ms.iter().enumerate() {
            let terms = (0u64..(1u64 << m.len()))
                .map(|mask| {
                    let (l, r): (Vec<(usize, Sym)>, Vec<(usize, Sym)>) =
                        m.iter().copied().enumerate().partition(|(k, _)| mask & (1 << k) != 0);
                    let l: Vec<Sym> = l.into_iter().map(|(_, s)| s).collect();
                    let r: Vec<Sym> = r.into_iter().map(|(_, s)| s).collect();
                    let p: usize = l.iter().map(|s| s.0).sum();
                    CoTerm::new(p, index[p][l.as_slice()], index[n - p][r.as_slice()], q(1))
                })
                .collect();
            b.set_coproduct(n, i, terms)?;
        }
    }
    b.build()
}

/// Checks `g ∩ (ker ε)² = [g, g]` inside `U(g)` in every degree up to `N`.
pub fn lemma25_check(g: &LiePresentation) -> Result<bool> {
    let u = enveloping(g)?;
    let ft = counital_filtration(&u)?;
    for n in 1..=g.max_degree() {
        let monomials = pbw_monomials(g, n);
        let position = |i: usize| {
            monomials
                .iter()
                .position(|m| m.as_slice() == [(n, i)])
                .expect("single-symbol monomial present")
        };
        let slots: Vec<usize> = (0..g.dim(n)).map(position).collect();
        let image = Subspace::coordinate(u.dim(n), &slots);
        let left = image.intersect(ft.layer(n, 2))?;
        let mut spanning = Vec::new();
        for p in 1..n {
            for i in 0..g.dim(p) {
                for j in 0..g.dim(n - p) {
                    let mut v = zero_vec(u.dim(n));
                    for (k, c) in g.bracket_terms(p, i, n - p, j) {
                        v[slots[*k]] += c;
                    }
                    spanning.push(v);
                }
            }
        }
        if left != Subspace::span(u.dim(n), spanning)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialg::{check_axioms, check_cocommutative};
    use crate::freealg::{check_free, extract_generators};

    #[test]
    fn abelian_enveloping_is_polynomial() {
        let g = abelian_lie(&[0, 1, 0, 0, 0]).unwrap();
        let u = enveloping(&g).unwrap();
        assert_eq!(u.dim_vec(), vec![1, 1, 1, 1, 1]);
        assert!(check_axioms(&u).verdict);
        assert!(lemma25_check(&g).unwrap());
    }

    #[test]
    fn free_lie_enveloping_is_tensor() {
        let g = free_lie_presentation(2, 4).unwrap();
        assert_eq!((1..=4).map(|n| g.dim(n)).collect::<Vec<_>>(), vec![2, 1, 2, 3]);
        let u = enveloping(&g).unwrap();
        assert_eq!(u.dim_vec(), vec![1, 2, 4, 8, 16]);
        assert!(check_axioms(&u).verdict);
        assert!(check_cocommutative(&u).ok);
        let gens = extract_generators(&u).unwrap();
        assert_eq!(gens.multiplicities(), vec![0, 2, 0, 0, 0]);
        assert!(check_free(&u, &gens).unwrap().ok);
        assert!(lemma25_check(&g).unwrap());
    }

    #[test]
    fn heisenberg() {
        let g = heisenberg_lie(4).unwrap();
        let u = enveloping(&g).unwrap();
        // monomials x^a y^b z^c with a + b + 2c = n
        assert_eq!(u.dim_vec(), vec![1, 2, 4, 6, 9]);
        assert!(check_axioms(&u).verdict);
        assert!(check_cocommutative(&u).ok);
        assert!(lemma25_check(&g).unwrap());
    }

    #[test]
    fn straightening_of_yx() {
        let g = heisenberg_lie(2).unwrap();
        let u = enveloping(&g).unwrap();
        // basis of U_2: x*x, x*y, y*y, z
        assert_eq!(u.labels(2), &["x*x", "x*y", "y*y", "z"]);
        let yx = u.product_terms(1, 1, 1, 0);
        assert_eq!(yx, &vec![(1, q(1)), (3, q(-1))]);
    }

    #[test]
    fn invalid_brackets_are_rejected() {
        let labels = vec![vec![], vec!["x".to_string(), "y".to_string()], vec!["z".to_string()]];
        let mut b = LieBuilder::new("bad", labels.clone()).unwrap();
        b.set_bracket_raw(1, 0, 1, 1, vec![(0, q(1))]).unwrap();
        assert!(matches!(b.build(), Err(Error::InvalidLie(_))));

        let mut b = LieBuilder::new("bad", labels).unwrap();
        b.set_bracket_raw(1, 0, 1, 0, vec![(0, q(1))]).unwrap();
        assert!(matches!(b.build(), Err(Error::InvalidLie(_))));

        assert!(LieBuilder::new("bad", vec![vec!["e".to_string()], vec![]]).is_err());
    }

    #[test]
    fn jacobi_failure_is_rejected() {
        // antisymmetric on its face: [x,y] = z and [t,z] = w
        let labels = vec![
            vec![],
            vec!["x".to_string(), "y".to_string(), "t".to_string()],
            vec!["z".to_string()],
            vec!["w".to_string()],
        ];
        let mut b = LieBuilder::new("jacobi", labels).unwrap();
        b.set_bracket(1, 0, 1, 1, vec![(0, q(1))]).unwrap();
        b.set_bracket(1, 2, 2, 0, vec![(0, q(1))]).unwrap();
        // [t,[x,y]] = w but [x,[y,t]] = [y,[t,x]] = 0
        assert!(matches!(b.build(), Err(Error::InvalidLie(m)) if m.contains("Jacobi")));
    }
}
