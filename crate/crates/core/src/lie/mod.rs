//! Primitive elements, their Lie structure, free Lie bases and enveloping algebras.

mod certify;
mod enveloping;
mod lyndon;

pub use certify::{
    certify_prim_free, certify_with, prepare, Certificate, DegreeRecord, Prepared, Stage,
    StageStatus,
};
pub use enveloping::{
    abelian_lie, enveloping, free_lie_presentation, heisenberg_lie, lemma25_check, LieBuilder,
    LiePresentation,
};
pub use lyndon::{
    evaluate_tree, graded_witt_counts, is_lyndon, lyndon_basis, lyndon_words, LyndonTree, Symbol,
};

use crate::bialg::{reduced_coproduct_matrix, Element, Presentation};
use crate::error::{Error, Result};
use crate::exactq::{nullspace, sub, Subspace};
use crate::freealg::GeneratorSet;
use crate::par;

/// `Prim(H)_n`, the kernel of the reduced coproduct on `H_n`.
pub fn primitives(h: &Presentation, n: usize) -> Result<Subspace> {
    Ok(nullspace(&reduced_coproduct_matrix(h, n)?))
}

/// `Prim(H)_n` for every `n <= N`; degree 0 is the zero subspace.
pub fn all_primitives(h: &Presentation) -> Result<Vec<Subspace>> {
    let mut out = vec![Subspace::zero(h.dim(0))];
    out.extend(par::try_map((1..=h.max_degree()).collect(), |n| primitives(h, n))?);
    Ok(out)
}

/// The commutator `xy - yx`.
pub fn bracket(h: &Presentation, x: &Element, y: &Element) -> Result<Element> {
    let xy = h.mul_elements(x, y)?;
    let yx = h.mul_elements(y, x)?;
    Ok(Element::new(xy.degree, sub(&xy.coords, &yx.coords)))
}

/// `[g, g]_n` for `g = Prim(H)`.
pub fn derived_subspace(h: &Presentation, n: usize) -> Result<Subspace> {
    let prims = (0..n)
        .map(|m| if m == 0 { Ok(Subspace::zero(h.dim(0))) } else { primitives(h, m) })
        .collect::<Result<Vec<_>>>()?;
    derived_subspace_with(h, &prims, n)
}

/// `[g, g]_n` from precomputed `prims[m] = Prim(H)_m` for `m < n`.
pub fn derived_subspace_with(h: &Presentation, prims: &[Subspace], n: usize) -> Result<Subspace> {
    if n > h.max_degree() {
        return Err(Error::Domain {
            degree: n,
            min: 0,
            max: h.max_degree(),
        });
    }
    let mut spanning = Vec::new();
    for p in 1..n {
        let q = n - p;
        if p > q {
            break;
        }
        for (a, x) in prims[p].basis().iter().enumerate() {
            for (b, y) in prims[q].basis().iter().enumerate() {
                if p == q && b <= a {
                    continue;
                }
                let z = bracket(h, &Element::new(p, x.clone()), &Element::new(q, y.clone()))?;
                spanning.push(z.coords);
            }
        }
    }
    Subspace::span(h.dim(n), spanning)
}

/// Generators of `Prim(H)` as a Lie algebra: a canonical complement of
/// `[g, g]_n` inside `Prim(H)_n`.
pub fn lie_generators(h: &Presentation) -> Result<GeneratorSet> {
    lie_generators_with(h, &all_primitives(h)?)
}

pub fn lie_generators_with(h: &Presentation, prims: &[Subspace]) -> Result<GeneratorSet> {
    let mut generators = vec![Vec::new()];
    let rest = par::try_map((1..=h.max_degree()).collect(), |n| {
        let d = derived_subspace_with(h, prims, n)?;
        Ok::<_, Error>(d.complement_in(&prims[n])?.basis().to_vec())
    })?;
    generators.extend(rest);
    Ok(GeneratorSet { generators })
}

/// Truncated power series `Π_{n>=1} (1 - tⁿ)^{-c_n}` up to `t^N`.
pub fn pbw_series(c: &[usize], max_degree: usize) -> Vec<i128> {
    let mut s = vec![0i128; max_degree + 1];
    s[0] = 1;
    for (n, &cn) in c.iter().enumerate().skip(1) {
        if n > max_degree || cn == 0 {
            continue;
        }
        // (1 - tⁿ)^{-c} = Σ_k C(c+k-1, k) t^{nk}
        let mut factor = vec![0i128; max_degree + 1];
        let mut binom: i128 = 1;
        let mut k = 0usize;
        while n * k <= max_degree {
            factor[n * k] = binom;
            k += 1;
            binom = binom * (cn as i128 + k as i128 - 1) / k as i128;
        }
        let mut next = vec![0i128; max_degree + 1];
        for (i, a) in s.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in factor.iter().enumerate().take(max_degree + 1 - i) {
                next[i + j] += a * b;
            }
        }
        s = next;
    }
    s
}
