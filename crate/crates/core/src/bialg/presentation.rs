use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactq::{is_zero, zero_vec, QVector, Rational, Terms};
use crate::graded::{GradedDims, TensorLayout};

/// One term `coeff · e_left ⊗ e_right` of a coproduct, where `e_left` lives
/// in degree `left_degree` and `e_right` in the complementary degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoTerm {
    pub left_degree: usize,
    pub left: usize,
    pub right: usize,
    pub coeff: Rational,
}

impl CoTerm {
    pub fn new(left_degree: usize, left: usize, right: usize, coeff: Rational) -> Self {
        CoTerm {
            left_degree,
            left,
            right,
            coeff,
        }
    }
}

/// A homogeneous element: coordinates in the degree-`degree` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub degree: usize,
    pub coords: QVector,
}

impl Element {
    pub fn new(degree: usize, coords: QVector) -> Self {
        Element { degree, coords }
    }

    pub fn basis(h: &Presentation, degree: usize, index: usize) -> Self {
        let mut coords = zero_vec(h.dim(degree));
        coords[index] = Rational::from_integer(1.into());
        Element { degree, coords }
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.coords)
    }
}

/// A graded connected bialgebra truncated at degree `N`, given by structure
/// constants on a fixed basis of each `H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    max_degree: usize,
    basis: Vec<Vec<String>>,
    /// `products[p][q][i * dim_q + j]` for `p + q <= N`.
    products: Vec<Vec<Vec<Terms>>>,
    /// `coproducts[n][i]`, sorted.
    coproducts: Vec<Vec<Vec<CoTerm>>>,
}

fn normalize(mut terms: Terms) -> Terms {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: Terms = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn normalize_coterms(mut terms: Vec<CoTerm>) -> Vec<CoTerm> {
    terms.sort_by_key(|t| (t.left_degree, t.left, t.right));
    let mut out: Vec<CoTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last)
                if (last.left_degree, last.left, last.right)
                    == (t.left_degree, t.left, t.right) =>
            {
                last.coeff += t.coeff
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

/// Incremental construction of a [`Presentation`]. Entries never set are zero.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    inner: Presentation,
}

impl PresentationBuilder {
    /// `basis[n]` lists the labels of `H_n`; the truncation degree is
    /// `basis.len() - 1`.
    pub fn new(name: impl Into<String>, basis: Vec<Vec<String>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidPresentation("no degree-0 component".into()));
        }
        let max_degree = basis.len() - 1;
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let products = (0..=max_degree)
            .map(|p| {
                (0..=max_degree - p)
                    .map(|q| vec![Vec::new(); dims[p] * dims[q]])
                    .collect()
            })
            .collect();
        let coproducts = dims.iter().map(|&d| vec![Vec::new(); d]).collect();
        Ok(PresentationBuilder {
            inner: Presentation {
                name: name.into(),
                max_degree,
                basis,
                products,
                coproducts,
            },
        })
    }

    pub fn max_degree(&self) -> usize {
        self.inner.max_degree
    }

    pub fn dim(&self, n: usize) -> usize {
        self.inner.dim(n)
    }

    fn check_index(&self, n: usize, i: usize) -> Result<()> {
        if n > self.inner.max_degree {
            return Err(Error::InvalidPresentation(format!(
                "degree {n} exceeds truncation degree {}",
                self.inner.max_degree
            )));
        }
        if i >= self.inner.dim(n) {
            return Err(Error::InvalidPresentation(format!(
                "basis index {i} out of range in degree {n} (dim {})",
                self.inner.dim(n)
            )));
        }
        Ok(())
    }

    /// Set `e_i (deg p) · e_j (deg q)` to the given combination of degree `p+q`
    /// basis elements.
    pub fn set_product(&mut self, p: usize, i: usize, q: usize, j: usize, terms: Terms) -> Result<()> {
        self.check_index(p, i)?;
        self.check_index(q, j)?;
        if p + q > self.inner.max_degree {
            return Err(Error::InvalidPresentation(format!(
                "product of degrees {p} and {q} exceeds truncation degree {}",
                self.inner.max_degree
            )));
        }
        for (k, _) in &terms {
            self.check_index(p + q, *k)?;
        }
        let dq = self.inner.dim(q);
        self.inner.products[p][q][i * dq + j] = normalize(terms);
        Ok(())
    }

    /// Set `Δ(e_i)` for `e_i` in degree `n`.
    pub fn set_coproduct(&mut self, n: usize, i: usize, terms: Vec<CoTerm>) -> Result<()> {
        self.check_index(n, i)?;
        for t in &terms {
            if t.left_degree > n {
                return Err(Error::InvalidPresentation(format!(
                    "coproduct term of degree {n} has left degree {}",
                    t.left_degree
                )));
            }
            self.check_index(t.left_degree, t.left)?;
            self.check_index(n - t.left_degree, t.right)?;
        }
        self.inner.coproducts[n][i] = normalize_coterms(terms);
        Ok(())
    }

    pub fn product_terms(&self, p: usize, i: usize, q: usize, j: usize) -> &Terms {
        self.inner.product_terms(p, i, q, j)
    }

    pub fn build(self) -> Result<Presentation> {
        let d0 = self.inner.dim(0);
        if d0 != 1 {
            return Err(Error::NotConnected(d0));
        }
        Ok(self.inner)
    }
}

impl Presentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims::new(self.basis.iter().map(Vec::len).collect()).expect("degree 0 present")
    }

    pub fn dim_vec(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.basis[n]
    }

    pub fn basis_labels(&self) -> &[Vec<String>] {
        &self.basis
    }

    pub fn product_terms(&self, p: usize, i: usize, q: usize, j: usize) -> &Terms {
        &self.products[p][q][i * self.dim(q) + j]
    }

    pub fn coproduct_terms(&self, n: usize, i: usize) -> &[CoTerm] {
        &self.coproducts[n][i]
    }

    /// Builder seeded with this presentation's tables (for perturbations).
    pub fn to_builder(&self) -> PresentationBuilder {
        PresentationBuilder {
            inner: self.clone(),
        }
    }

    pub fn unit(&self) -> Element {
        Element::basis(self, 0, 0)
    }

    /// Counit: the coefficient on the unit in degree 0, zero elsewhere.
    pub fn counit(&self, x: &Element) -> Rational {
        if x.degree == 0 {
            x.coords[0].clone()
        } else {
            Rational::zero()
        }
    }

    fn check_vec(&self, n: usize, v: &[Rational]) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::Domain {
                degree: n,
                min: 0,
                max: self.max_degree,
            });
        }
        if v.len() != self.dim(n) {
            return Err(Error::LengthMismatch {
                expected: self.dim(n),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Product of `x ∈ H_p` and `y ∈ H_q`.
    pub fn mul(&self, p: usize, x: &[Rational], q: usize, y: &[Rational]) -> Result<QVector> {
        self.check_vec(p, x)?;
        self.check_vec(q, y)?;
        if p + q > self.max_degree {
            return Err(Error::Truncation {
                left: p,
                right: q,
                max: self.max_degree,
            });
        }
        let mut out = zero_vec(self.dim(p + q));
        let ys: Vec<usize> = (0..y.len()).filter(|&j| !y[j].is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ys {
                let c = xi * &y[j];
                for (k, t) in self.product_terms(p, i, q, j) {
                    out[*k] += &c * t;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_elements(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(Element::new(
            x.degree + y.degree,
            self.mul(x.degree, &x.coords, y.degree, &y.coords)?,
        ))
    }

    /// Ordered product of several elements; the empty product is the unit.
    pub fn mul_many(&self, factors: &[&Element]) -> Result<Element> {
        let mut acc = self.unit();
        for f in factors {
            acc = self.mul_elements(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn layout(&self, n: usize) -> TensorLayout {
        let d = self.dim_vec();
        TensorLayout::full(&d, &d, n)
    }

    /// `Δ(x)` for `x ∈ H_n`, in the full tensor layout of degree `n`.
    pub fn coproduct(&self, n: usize, x: &[Rational]) -> Result<QVector> {
        self.check_vec(n, x)?;
        let layout = self.layout(n);
        let mut out = zero_vec(layout.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for t in self.coproduct_terms(n, i) {
                out[layout.index(t.left_degree, t.left, t.right)] += xi * &t.coeff;
            }
        }
        Ok(out)
    }

    /// `x ⊗ y` in the full tensor layout of degree `deg x + deg y`.
    pub fn tensor(&self, x: &Element, y: &Element) -> QVector {
        let n = x.degree + y.degree;
        let layout = self.layout(n);
        let mut out = zero_vec(layout.dim());
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if !yj.is_zero() {
                    out[layout.index(x.degree, i, j)] = xi * yj;
                }
            }
        }
        out
    }

    /// Restriction to degrees `<= max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Presentation {
        let m = max_degree.min(self.max_degree);
        Presentation {
            name: self.name.clone(),
            max_degree: m,
            basis: self.basis[..=m].to_vec(),
            products: (0..=m)
                .map(|p| self.products[p][..=m - p].to_vec())
                .collect(),
            coproducts: self.coproducts[..=m].to_vec(),
        }
    }

    /// Reorder every degree's basis: `perms[n][new] = old`.
    pub fn permute_basis(&self, perms: &[Vec<usize>]) -> Result<Presentation> {
        if perms.len() != self.max_degree + 1 {
            return Err(Error::InvalidPresentation("one permutation per degree required".into()));
        }
        let mut inverse = Vec::with_capacity(perms.len());
        for (n, perm) in perms.iter().enumerate() {
            let d = self.dim(n);
            let mut inv = vec![usize::MAX; d];
            if perm.len() != d {
                return Err(Error::InvalidPresentation(format!("permutation of degree {n} has wrong length")));
            }
            for (new, &old) in perm.iter().enumerate() {
                if old >= d || inv[old] != usize::MAX {
                    return Err(Error::InvalidPresentation(format!("not a permutation in degree {n}")));
                }
                inv[old] = new;
            }
            inverse.push(inv);
        }
        let basis = perms
            .iter()
            .enumerate()
            .map(|(n, perm)| perm.iter().map(|&old| self.basis[n][old].clone()).collect())
            .collect();
        let mut b = PresentationBuilder::new(self.name.clone(), basis)?;
        for p in 0..=self.max_degree {
            for q in 0..=self.max_degree - p {
                for (ni, &oi) in perms[p].iter().enumerate() {
                    for (nj, &oj) in perms[q].iter().enumerate() {
                        let terms = self
                            .product_terms(p, oi, q, oj)
                            .iter()
                            .map(|(k, c)| (inverse[p + q][*k], c.clone()))
                            .collect();
                        b.set_product(p, ni, q, nj, terms)?;
                    }
                }
            }
        }
        for (n, perm) in perms.iter().enumerate() {
            for (ni, &oi) in perm.iter().enumerate() {
                let terms = self
                    .coproduct_terms(n, oi)
                    .iter()
                    .map(|t| {
                        CoTerm::new(
                            t.left_degree,
                            inverse[t.left_degree][t.left],
                            inverse[n - t.left_degree][t.right],
                            t.coeff.clone(),
                        )
                    })
                    .collect();
                b.set_coproduct(n, ni, terms)?;
            }
        }
        b.build()
    }

    /// Image of a vector under the basis permutation of degree `n`.
    pub fn permute_vector(perm: &[usize], v: &[Rational]) -> QVector {
        perm.iter().map(|&old| v[old].clone()).collect()
    }
}
