//! Generators of connected graded algebras and freeness up to the truncation degree.

use serde::Serialize;

use crate::bialg::{gr_bialgebra, Element, GrBialgebra, Presentation};
use crate::error::{Error, Result};
use crate::exactq::{QVector, Subspace};
use crate::par;

/// Homogeneous generators, `generators[n]` in degree `n` (empty for `n = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub generators: Vec<Vec<QVector>>,
}

impl GeneratorSet {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.generators.len().saturating_sub(1)
    }

    /// Generators as elements, ordered by degree and then by index.
    pub fn elements(&self) -> Vec<Element> {
        self.generators
            .iter()
            .enumerate()
            .flat_map(|(n, gs)| gs.iter().map(move |g| Element::new(n, g.clone())))
            .collect()
    }
}

/// `Σ_{p+q=n, p,q ≥ 1} H_p · H_q`.
pub fn decomposables(h: &Presentation, n: usize) -> Result<Subspace> {
    if n == 0 || n > h.max_degree() {
        return Err(Error::Domain {
            degree: n,
            min: 1,
            max: h.max_degree(),
        });
    }
    let mut spanning = Vec::new();
    for p in 1..n {
        for i in 0..h.dim(p) {
            for j in 0..h.dim(n - p) {
                let x = Element::basis(h, p, i);
                let y = Element::basis(h, n - p, j);
                spanning.push(h.mul_elements(&x, &y)?.coords);
            }
        }
    }
    Subspace::span(h.dim(n), spanning)
}

/// Canonical complement of the decomposables in each positive degree.
pub fn extract_generators(h: &Presentation) -> Result<GeneratorSet> {
    let mut generators = vec![Vec::new()];
    let rest = par::try_map((1..=h.max_degree()).collect(), |n| {
        decomposables(h, n).map(|d| d.complement().basis().to_vec())
    })?;
    generators.extend(rest);
    Ok(GeneratorSet { generators })
}

/// Images in `H_n` of all words in the generators of total degree `n`, ordered
/// by composition and then by generator index.
pub fn word_evaluations(h: &Presentation, g: &GeneratorSet) -> Result<Vec<Vec<QVector>>> {
    let n_max = h.max_degree().min(g.max_degree());
    let mut evals: Vec<Vec<QVector>> = vec![vec![h.unit().coords]];
    for n in 1..=n_max {
        let mut out = Vec::new();
        for d in 1..=n {
            for gen in &g.generators[d] {
                for w in &evals[n - d] {
                    out.push(h.mul(d, gen, n - d, w)?);
                }
            }
        }
        evals.push(out);
    }
    Ok(evals)
}

/// `Σ` over compositions `(n_1, …, n_k)` of `n` of `Π v_{n_j}`, for every `n`.
pub fn word_counts(v: &[usize], max_degree: usize) -> Vec<usize> {
    let mut c = vec![0usize; max_degree + 1];
    c[0] = 1;
    for n in 1..=max_degree {
        c[n] = (1..=n.min(v.len().saturating_sub(1)))
            .map(|d| v[d] * c[n - d])
            .sum();
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeCheck {
    pub ok: bool,
    /// First degree where the words fail to form a basis.
    pub witness_degree: Option<usize>,
    pub word_counts: Vec<usize>,
    pub ranks: Vec<usize>,
}

/// Whether the words in `g` form a basis of every `H_n`, `n <= N`.
pub fn check_free(h: &Presentation, g: &GeneratorSet) -> Result<FreeCheck> {
    if g.max_degree() < h.max_degree() {
        return Err(Error::Precondition(format!(
            "generators given up to degree {} but the presentation reaches {}",
            g.max_degree(),
            h.max_degree()
        )));
    }
    let evals = word_evaluations(h, g)?;
    let ranks = par::try_map(evals.iter().enumerate().collect(), |(n, ws)| {
        Subspace::span(h.dim(n), ws.clone()).map(|s| s.dim())
    })?;
    let word_counts: Vec<usize> = evals.iter().map(Vec::len).collect();
    let witness_degree = (0..=h.max_degree())
        .find(|&n| word_counts[n] != h.dim(n) || ranks[n] != h.dim(n));
    Ok(FreeCheck {
        ok: witness_degree.is_none(),
        witness_degree,
        word_counts,
        ranks,
    })
}

/// Lift generators of `Gr(H)` back to representatives in `H`.
pub fn lift_generators_from_gr(h: &Presentation) -> Result<GeneratorSet> {
    lift_generators_with(&gr_bialgebra(h)?)
}

/// Same as [`lift_generators_from_gr`] for an already computed `Gr(H)`.
pub fn lift_generators_with(gr: &GrBialgebra) -> Result<GeneratorSet> {
    let g = extract_generators(&gr.presentation)?;
    let check = check_free(&gr.presentation, &g)?;
    if let Some(degree) = check.witness_degree {
        return Err(Error::LiftFailed { degree });
    }
    let generators = g
        .generators
        .iter()
        .enumerate()
        .map(|(n, ws)| {
            ws.iter()
                .map(|w| {
                    let mut v = crate::exactq::zero_vec(gr.presentation.dim(n));
                    for (c, r) in w.iter().zip(&gr.representatives[n]) {
                        crate::exactq::axpy(&mut v, c, &r.vector);
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(GeneratorSet { generators })
}

/// Dimensions and generator multiplicities of a graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub a: Vec<i64>,
    pub v: Vec<i64>,
}

impl HilbertData {
    pub fn of(h: &Presentation) -> Result<Self> {
        let a: Vec<i64> = h.dim_vec().into_iter().map(|d| d as i64).collect();
        let v = invert_hilbert(&a)?;
        Ok(HilbertData { a, v })
    }
}

/// The `v` with `Σ a_n tⁿ = 1 / (1 - Σ v_n tⁿ)` modulo `t^{N+1}`.
pub fn invert_hilbert(a: &[i64]) -> Result<Vec<i64>> {
    if a.first() != Some(&1) {
        return Err(Error::Precondition("Hilbert series must start with 1".into()));
    }
    let overflow = || Error::Resource("Hilbert series coefficient overflow".into());
    let mut v = vec![0i64; a.len()];
    for n in 1..a.len() {
        let mut s = a[n];
        for k in 1..n {
            let t = v[k].checked_mul(a[n - k]).ok_or_else(overflow)?;
            s = s.checked_sub(t).ok_or_else(overflow)?;
        }
        v[n] = s;
    }
    Ok(v)
}
