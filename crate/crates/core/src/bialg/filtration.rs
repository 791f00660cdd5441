use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::axioms::check_axioms;
use super::presentation::{Element, Presentation};
use crate::error::{Error, Result};
use crate::exactq::{sub, zero_vec, QMatrix, QVector, Subspace};
use crate::graded::{tensor_layer, FiltrationTable, TensorLayout};
use crate::par;

/// Matrix of `Δ̃(x) = Δ(x) - x⊗1 - 1⊗x` from `H_n` to `⊕_{0<p<n} H_p ⊗ H_{n-p}`.
pub fn reduced_coproduct_matrix(h: &Presentation, n: usize) -> Result<QMatrix> {
    if n == 0 || n > h.max_degree() {
        return Err(Error::Domain {
            degree: n,
            min: 1,
            max: h.max_degree(),
        });
    }
    let dims = h.dim_vec();
    let layout = TensorLayout::middle(&dims, &dims, n);
    let mut m = QMatrix::zeros(layout.dim(), h.dim(n));
    for i in 0..h.dim(n) {
        for t in h.coproduct_terms(n, i) {
            if layout.contains_block(t.left_degree) {
                let r = layout.index(t.left_degree, t.left, t.right);
                let v = m.get(r, i) + &t.coeff;
                m.set(r, i, v);
            }
        }
    }
    Ok(m)
}

/// `(ker ε)^k ∩ H_n` for the counital filtration; assumes the axioms hold.
///
/// Uses `H_n^(k) = Σ_{0<p<n} H_p · H_{n-p}^(k-1)` for `k >= 2`, which spans
/// the same space as all `k`-fold products of positive-degree basis elements.
pub(crate) fn counital_layers(h: &Presentation) -> Result<FiltrationTable> {
    let n_max = h.max_degree();
    let mut layers: Vec<Vec<Subspace>> = (0..=n_max)
        .map(|n| {
            let d = h.dim(n);
            if n == 0 {
                vec![Subspace::full(d), Subspace::zero(d)]
            } else {
                vec![Subspace::full(d), Subspace::full(d)]
            }
        })
        .collect();
    for k in 2..=n_max {
        let prev = &layers;
        let next: Vec<Result<Option<Subspace>>> = par::map_range(n_max + 1, |n| {
            if n < k {
                return Ok(None);
            }
            let mut spanning: Vec<QVector> = Vec::new();
            for p in 1..=n - (k - 1) {
                let inner = &prev[n - p][k - 1];
                for i in 0..h.dim(p) {
                    for v in inner.basis() {
                        let e = Element::basis(h, p, i);
                        spanning.push(h.mul(p, &e.coords, n - p, v)?);
                    }
                }
            }
            Ok(Some(Subspace::span(h.dim(n), spanning)?))
        });
        for (n, s) in next.into_iter().enumerate() {
            if let Some(s) = s? {
                layers[n].push(s);
            }
        }
    }
    for (n, ls) in layers.iter_mut().enumerate().skip(1) {
        ls.push(Subspace::zero(h.dim(n)));
    }
    FiltrationTable::new(h.dims(), layers)
}

/// The counital filtration `H^(k) = (ker ε)^k`, with `K(n) = n + 1`.
/// Refuses to run on a presentation that fails the bialgebra axioms.
pub fn counital_filtration(h: &Presentation) -> Result<FiltrationTable> {
    let report = check_axioms(h);
    if let Some((name, check)) = report.first_failure() {
        return Err(Error::AxiomFailure(format!("{name} fails at {:?}", check.witness)));
    }
    counital_layers(h)
}

/// Outcome of one residual check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eq1Outcome {
    /// `Δ(x_1⋯x_r) - Σ_I x_I ⊗ x_{I^c}` in the full tensor layout.
    pub residual: QVector,
    /// Whether the residual lies in `(H⊗H)^(r+1)`.
    pub holds: bool,
}

/// Checks that `Δ(x_1⋯x_r)` agrees with the subset-split sum modulo
/// `Σ_{k+l>r} H^(k) ⊗ H^(l)`. Tensor layers are memoised per `(n, k)`.
pub struct Eq1Checker<'a> {
    h: &'a Presentation,
    filtration: FiltrationTable,
    layers: Mutex<HashMap<(usize, usize), Arc<Subspace>>>,
}

impl<'a> Eq1Checker<'a> {
    pub fn new(h: &'a Presentation) -> Result<Self> {
        Ok(Self::with_filtration(h, counital_filtration(h)?))
    }

    pub fn with_filtration(h: &'a Presentation, filtration: FiltrationTable) -> Self {
        Eq1Checker {
            h,
            filtration,
            layers: Mutex::new(HashMap::new()),
        }
    }

    fn layer(&self, n: usize, k: usize) -> Arc<Subspace> {
        if let Some(s) = self.layers.lock().expect("layer cache").get(&(n, k)) {
            return Arc::clone(s);
        }
        let s = Arc::new(tensor_layer(&self.filtration, &self.filtration, n, k));
        self.layers
            .lock()
            .expect("layer cache")
            .entry((n, k))
            .or_insert(s)
            .clone()
    }

    pub fn check(&self, factors: &[Element]) -> Result<Eq1Outcome> {
        let h = self.h;
        for f in factors {
            if f.degree == 0 {
                return Err(Error::Precondition(
                    "factor has degree 0, so it is not in ker ε unless zero".into(),
                ));
            }
            if f.coords.len() != h.dim(f.degree) {
                return Err(Error::LengthMismatch {
                    expected: h.dim(f.degree),
                    found: f.coords.len(),
                });
            }
        }
        let n: usize = factors.iter().map(|f| f.degree).sum();
        if n > h.max_degree() {
            return Err(Error::Truncation {
                left: n,
                right: 0,
                max: h.max_degree(),
            });
        }
        let refs: Vec<&Element> = factors.iter().collect();
        let product = h.mul_many(&refs)?;
        let lhs = h.coproduct(n, &product.coords)?;
        let r = factors.len();
        let mut split = zero_vec(lhs.len());
        for mask in 0u64..(1u64 << r) {
            let mut inside = Vec::new();
            let mut outside = Vec::new();
            for (i, f) in refs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    inside.push(*f);
                } else {
                    outside.push(*f);
                }
            }
            let left = h.mul_many(&inside)?;
            let right = h.mul_many(&outside)?;
            for (a, b) in split.iter_mut().zip(h.tensor(&left, &right)) {
                *a += b;
            }
        }
        let residual = sub(&lhs, &split);
        let holds = self.layer(n, r + 1).contains(&residual)?;
        Ok(Eq1Outcome { residual, holds })
    }
}

/// One-shot residual check; builds the counital filtration first.
pub fn eq1_residual_check(h: &Presentation, factors: &[Element]) -> Result<bool> {
    Ok(Eq1Checker::new(h)?.check(factors)?.holds)
}
