use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::filtration::counital_filtration;
use super::presentation::{CoTerm, Presentation, PresentationBuilder};
use crate::error::{Error, Result};
use crate::exactq::{format_combination, QMatrix, QVector, Rational, Terms};
use crate::graded::FiltrationTable;
use crate::par;

/// Representative of one basis element of `Gr(H)_n`: an element of
/// `H_n^(layer)` whose class spans part of `H_n^(layer) / H_n^(layer+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrRepresentative {
    pub layer: usize,
    pub vector: QVector,
}

/// `Gr(H)` for the counital filtration, with the representatives that define
/// its basis.
#[derive(Clone, Debug)]
pub struct GrBialgebra {
    pub presentation: Presentation,
    pub filtration: FiltrationTable,
    /// `representatives[n][a]` backs basis element `a` of `Gr(H)_n`; ordered
    /// by layer, then by the canonical complement rule.
    pub representatives: Vec<Vec<GrRepresentative>>,
    /// Inverse of the matrix whose columns are the degree-`n` representatives.
    to_adapted: Vec<QMatrix>,
}

impl GrBialgebra {
    /// Coordinates of `x ∈ H_n` in the representative basis.
    pub fn adapted_coordinates(&self, n: usize, x: &[Rational]) -> Result<QVector> {
        self.to_adapted[n].mul_vec(x)
    }

    pub fn layer_of(&self, n: usize, a: usize) -> usize {
        self.representatives[n][a].layer
    }

    /// `π^(k)(x)` for `x ∈ H_n^(k)`, as coordinates in `Gr(H)_n`. Errors if `x`
    /// is not in layer `k`.
    pub fn class(&self, n: usize, k: usize, x: &[Rational]) -> Result<QVector> {
        let c = self.adapted_coordinates(n, x)?;
        let mut out = c.clone();
        for (a, ca) in c.iter().enumerate() {
            let l = self.layer_of(n, a);
            if l < k && !ca.is_zero() {
                return Err(Error::Precondition(format!(
                    "element of degree {n} is not in filtration layer {k}"
                )));
            }
            if l != k {
                out[a] = Rational::zero();
            }
        }
        Ok(out)
    }
}

fn representatives(ft: &FiltrationTable) -> Result<Vec<Vec<GrRepresentative>>> {
    (0..=ft.max_degree())
        .map(|n| {
            let mut reps = Vec::new();
            for k in 0..ft.bound(n) {
                let c = ft.layer(n, k + 1).complement_in(ft.layer(n, k))?;
                reps.extend(c.basis().iter().map(|v| GrRepresentative {
                    layer: k,
                    vector: v.clone(),
                }));
            }
            Ok(reps)
        })
        .collect()
}

/// The associated graded bialgebra of the counital filtration.
///
/// For representatives `x` (layer `k`) and `y` (layer `l`), `m^gr(x̄, ȳ)` is the
/// layer-`(k+l)` part of `xy` in the representative basis; `Δ^gr(x̄)` is the
/// part of `Δ(x)` on pairs of representatives with layers summing to `k`.
pub fn gr_bialgebra(h: &Presentation) -> Result<GrBialgebra> {
    let ft = counital_filtration(h)?;
    gr_bialgebra_with(h, ft)
}

/// Same as [`gr_bialgebra`] with a precomputed counital filtration.
pub fn gr_bialgebra_with(h: &Presentation, ft: FiltrationTable) -> Result<GrBialgebra> {
    let n_max = h.max_degree();
    let reps = representatives(&ft)?;
    let to_adapted: Vec<QMatrix> = par::try_map((0..=n_max).collect(), |n| {
        let cols: Vec<QVector> = reps[n].iter().map(|r| r.vector.clone()).collect();
        QMatrix::from_columns(h.dim(n), &cols)?
            .inverse()
            .ok_or_else(|| Error::Precondition(format!("representatives of degree {n} are not a basis")))
    })?;

    let labels: Vec<Vec<String>> = (0..=n_max)
        .map(|n| {
            reps[n]
                .iter()
                .map(|r| format!("gr{}({})", r.layer, format_combination(h.labels(n), &r.vector)))
                .collect()
        })
        .collect();
    let mut builder = PresentationBuilder::new(format!("Gr({})", h.name()), labels)?;

    let gr = GrBialgebra {
        presentation: h.clone(),
        filtration: ft,
        representatives: reps,
        to_adapted,
    };

    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|p| (0..=n_max - p).map(move |q| (p, q)))
        .collect();
    let products = par::try_map(pairs, |(p, q)| -> Result<Vec<(usize, usize, usize, usize, Terms)>> {
        let mut out = Vec::new();
        for (a, ra) in gr.representatives[p].iter().enumerate() {
            for (b, rb) in gr.representatives[q].iter().enumerate() {
                let xy = h.mul(p, &ra.vector, q, &rb.vector)?;
                let class = gr.class(p + q, ra.layer + rb.layer, &xy)?;
                out.push((p, a, q, b, crate::exactq::to_terms(&class)));
            }
        }
        Ok(out)
    })?;
    for (p, a, q, b, t) in products.into_iter().flatten() {
        builder.set_product(p, a, q, b, t)?;
    }

    let items: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..gr.representatives[n].len()).map(move |a| (n, a)))
        .collect();
    let coproducts = par::try_map(items, |(n, a)| -> Result<(usize, usize, Vec<CoTerm>)> {
        let rep = &gr.representatives[n][a];
        let delta = h.coproduct(n, &rep.vector)?;
        let layout = h.layout(n);
        // accumulate in the adapted ⊗ adapted basis, block by block
        let mut acc: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (idx, x) in delta.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (p, i, j) = layout.decode(idx);
            let left = &gr.to_adapted[p];
            let right = &gr.to_adapted[n - p];
            for a2 in 0..left.rows() {
                let l = left.get(a2, i);
                if l.is_zero() {
                    continue;
                }
                let lx = l * x;
                for b2 in 0..right.rows() {
                    let r = right.get(b2, j);
                    if r.is_zero() {
                        continue;
                    }
                    *acc.entry((p, a2, b2)).or_insert_with(Rational::zero) += &lx * r;
                }
            }
        }
        let mut terms = Vec::new();
        for ((p, a2, b2), c) in acc {
            if c.is_zero() {
                continue;
            }
            let layer = gr.layer_of(p, a2) + gr.layer_of(n - p, b2);
            if layer < rep.layer {
                return Err(Error::Precondition(format!(
                    "coproduct of degree-{n} representative leaves tensor layer {}",
                    rep.layer
                )));
            }
            if layer == rep.layer {
                terms.push(CoTerm::new(p, a2, b2, c));
            }
        }
        Ok((n, a, terms))
    })?;
    for (n, a, terms) in coproducts {
        builder.set_coproduct(n, a, terms)?;
    }

    Ok(GrBialgebra {
        presentation: builder.build()?,
        ..gr
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocommutativeCheck {
    pub ok: bool,
    /// First `(degree, basis index)` with `τ∘Δ ≠ Δ`.
    pub witness: Option<(usize, usize)>,
}

/// Whether `τ∘Δ = Δ` on every basis element up to the truncation degree.
pub fn check_cocommutative(h: &Presentation) -> CocommutativeCheck {
    for n in 0..=h.max_degree() {
        for i in 0..h.dim(n) {
            let terms = h.coproduct_terms(n, i);
            let map: BTreeMap<(usize, usize, usize), &Rational> = terms
                .iter()
                .map(|t| ((t.left_degree, t.left, t.right), &t.coeff))
                .collect();
            let symmetric = terms.iter().all(|t| {
                map.get(&(n - t.left_degree, t.right, t.left)) == Some(&&t.coeff)
            });
            if !symmetric {
                return CocommutativeCheck {
                    ok: false,
                    witness: Some((n, i)),
                };
            }
        }
    }
    CocommutativeCheck {
        ok: true,
        witness: None,
    }
}
