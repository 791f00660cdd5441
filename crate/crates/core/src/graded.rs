//! Graded and graded filtered vector spaces, the associated graded functor at
//! the level of dimensions, and filtrations on tensor products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::Subspace;
use crate::par;

/// Dimensions `dim V_n` for `0 <= n <= N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradedDims {
    dims: Vec<usize>,
}

impl GradedDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("graded dims need at least degree 0".into()));
        }
        Ok(GradedDims { dims })
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    pub fn truncate(&self, max_degree: usize) -> GradedDims {
        GradedDims {
            dims: self.dims[..=max_degree.min(self.max_degree())].to_vec(),
        }
    }
}

/// Coordinates of `(A ⊗ B)_n = ⊕_p A_p ⊗ B_{n-p}` for a chosen range of `p`,
/// ordered by `p` and then lexicographically by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLayout {
    degree: usize,
    first: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl TensorLayout {
    /// All bidegrees `0 <= p <= n`.
    pub fn full(left: &[usize], right: &[usize], n: usize) -> Self {
        Self::with_range(left, right, n, 0, n)
    }

    /// Bidegrees `1 <= p <= n-1` (the target of the reduced coproduct).
    pub fn middle(left: &[usize], right: &[usize], n: usize) -> Self {
        if n < 2 {
            return Self::with_range(left, right, n, 1, 0);
        }
        Self::with_range(left, right, n, 1, n - 1)
    }

    fn with_range(left: &[usize], right: &[usize], n: usize, first: usize, last: usize) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        let mut lv = Vec::new();
        let mut rv = Vec::new();
        if first <= last {
            for p in first..=last {
                let a = left.get(p).copied().unwrap_or(0);
                let b = right.get(n - p).copied().unwrap_or(0);
                offsets.push(total);
                lv.push(a);
                rv.push(b);
                total += a * b;
            }
        }
        TensorLayout {
            degree: n,
            first,
            left: lv,
            right: rv,
            offsets,
            total,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    /// Left degrees `p` covered by this layout.
    pub fn left_degrees(&self) -> std::ops::Range<usize> {
        self.first..self.first + self.offsets.len()
    }

    pub fn contains_block(&self, p: usize) -> bool {
        self.left_degrees().contains(&p)
    }

    pub fn offset(&self, p: usize) -> usize {
        self.offsets[p - self.first]
    }

    pub fn block_dims(&self, p: usize) -> (usize, usize) {
        (self.left[p - self.first], self.right[p - self.first])
    }

    pub fn index(&self, p: usize, i: usize, j: usize) -> usize {
        let (_, b) = self.block_dims(p);
        self.offset(p) + i * b + j
    }

    /// Inverse of [`TensorLayout::index`].
    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let slot = match self.offsets.binary_search(&idx) {
            Ok(mut s) => {
                // empty blocks share offsets with the next one
                while self.left[s] * self.right[s] == 0 {
                    s += 1;
                }
                s
            }
            Err(s) => s - 1,
        };
        let b = self.right[slot];
        let local = idx - self.offsets[slot];
        (self.first + slot, local / b, local % b)
    }
}

/// A locally finite graded filtered space: `layers[n][k]` is `V_n^(k)` for
/// `0 <= k <= K(n)`, with `V_n^(K(n)) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationTable {
    ambient: GradedDims,
    layers: Vec<Vec<Subspace>>,
}

impl FiltrationTable {
    pub fn new(ambient: GradedDims, layers: Vec<Vec<Subspace>>) -> Result<Self> {
        let ft = Self::from_layers_unchecked(ambient, layers)?;
        ft.validate()?;
        Ok(ft)
    }

    /// Shape-checked but not validated; used to build deliberately broken
    /// tables for negative tests.
    pub fn from_layers_unchecked(ambient: GradedDims, layers: Vec<Vec<Subspace>>) -> Result<Self> {
        if layers.len() != ambient.dims.len() {
            return Err(Error::Shape(format!(
                "{} layer lists for {} degrees",
                layers.len(),
                ambient.dims.len()
            )));
        }
        for (n, ls) in layers.iter().enumerate() {
            if ls.is_empty() {
                return Err(Error::InvalidFiltration {
                    degree: n,
                    layer: 0,
                    reason: "no layers".into(),
                });
            }
            for s in ls {
                if s.ambient_dim() != ambient.dim(n) {
                    return Err(Error::AmbientMismatch {
                        left: s.ambient_dim(),
                        right: ambient.dim(n),
                    });
                }
            }
        }
        Ok(FiltrationTable { ambient, layers })
    }

    /// `V^(0) = V`, `V^(1) = 0`.
    pub fn trivial(ambient: GradedDims) -> Self {
        let layers = ambient
            .dims
            .iter()
            .map(|&d| vec![Subspace::full(d), Subspace::zero(d)])
            .collect();
        FiltrationTable { ambient, layers }
    }

    pub fn validate(&self) -> Result<()> {
        for (n, ls) in self.layers.iter().enumerate() {
            let d = self.ambient.dim(n);
            if ls[0].dim() != d {
                return Err(Error::InvalidFiltration {
                    degree: n,
                    layer: 0,
                    reason: "layer 0 is not the whole space".into(),
                });
            }
            for k in 0..ls.len() - 1 {
                if !ls[k + 1].is_subspace_of(&ls[k])? {
                    return Err(Error::InvalidFiltration {
                        degree: n,
                        layer: k + 1,
                        reason: "layer not contained in the previous one".into(),
                    });
                }
            }
            if !ls.last().expect("nonempty").is_zero() {
                return Err(Error::InvalidFiltration {
                    degree: n,
                    layer: ls.len() - 1,
                    reason: "last layer is nonzero (not locally finite)".into(),
                });
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> &GradedDims {
        &self.ambient
    }

    pub fn max_degree(&self) -> usize {
        self.ambient.max_degree()
    }

    /// `K(n)`: the first layer index that is known to vanish.
    pub fn bound(&self, n: usize) -> usize {
        self.layers[n].len() - 1
    }

    /// `V_n^(k)`; layers beyond the bound are the (stored) zero layer.
    pub fn layer(&self, n: usize, k: usize) -> &Subspace {
        let ls = &self.layers[n];
        &ls[k.min(ls.len() - 1)]
    }

    pub fn layers(&self, n: usize) -> &[Subspace] {
        &self.layers[n]
    }

    /// `dim V_n^(k)` for `0 <= k <= K(n)`.
    pub fn layer_dims(&self, n: usize) -> Vec<usize> {
        self.layers[n].iter().map(Subspace::dim).collect()
    }

    /// Restriction to degrees `<= max_degree`.
    pub fn truncate(&self, max_degree: usize) -> FiltrationTable {
        let m = max_degree.min(self.max_degree());
        FiltrationTable {
            ambient: self.ambient.truncate(m),
            layers: self.layers[..=m].to_vec(),
        }
    }

    /// Successive differences `dim V_n^(k) - dim V_n^(k+1)`, signed so that a
    /// broken table still yields numbers.
    fn raw_gr_dims(&self, n: usize) -> Vec<i64> {
        let d = self.layer_dims(n);
        (0..d.len() - 1)
            .map(|k| d[k] as i64 - d[k + 1] as i64)
            .collect()
    }
}

/// Dimensions of `Gr(V)_n = ⊕_k V_n^(k) / V_n^(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrSpace {
    /// `dims[n][k]` for `0 <= k < K(n)`.
    pub dims: Vec<Vec<usize>>,
}

impl GrSpace {
    pub fn dim(&self, n: usize, k: usize) -> usize {
        self.dims
            .get(n)
            .and_then(|row| row.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self, n: usize) -> usize {
        self.dims[n].iter().sum()
    }
}

pub fn gr(ft: &FiltrationTable) -> Result<GrSpace> {
    ft.validate()?;
    let dims = (0..=ft.max_degree())
        .map(|n| {
            ft.raw_gr_dims(n)
                .into_iter()
                .map(|d| d as usize)
                .collect()
        })
        .collect();
    Ok(GrSpace { dims })
}

/// `(A ⊗ B)_n^(k) = Σ_{i+j=k} Σ_p A_p^(i) ⊗ B_{n-p}^(j)` in the full tensor
/// layout of degree `n`.
pub fn tensor_layer(a: &FiltrationTable, b: &FiltrationTable, n: usize, k: usize) -> Subspace {
    let layout = TensorLayout::full(a.ambient.as_slice(), b.ambient.as_slice(), n);
    let blocks: Vec<Subspace> = (0..=n)
        .map(|p| {
            let (da, db) = layout.block_dims(p);
            let mut spanning = Vec::new();
            for i in 0..=k {
                let la = a.layer(p, i);
                let lb = b.layer(n - p, k - i);
                if la.is_zero() || lb.is_zero() {
                    continue;
                }
                spanning.extend(la.kron(lb).basis().iter().cloned());
            }
            Subspace::span(da * db, spanning).expect("kron lengths match block")
        })
        .collect();
    let refs: Vec<(usize, &Subspace)> = (0..=n).map(|p| (layout.offset(p), &blocks[p])).collect();
    Subspace::block_sum(layout.dim(), &refs).expect("blocks are consecutive")
}

fn tensor_bound(a: &FiltrationTable, b: &FiltrationTable, n: usize) -> usize {
    (0..=n)
        .map(|p| (a.bound(p) + b.bound(n - p)).saturating_sub(1))
        .max()
        .unwrap_or(0)
        .max(1)
}

/// The induced filtration on `A ⊗ B`, truncated at the smaller degree.
pub fn tensor_filtration(a: &FiltrationTable, b: &FiltrationTable) -> FiltrationTable {
    let max = a.max_degree().min(b.max_degree());
    let dims: Vec<usize> = (0..=max)
        .map(|n| TensorLayout::full(a.ambient.as_slice(), b.ambient.as_slice(), n).dim())
        .collect();
    let layers = par::map_range(max + 1, |n| {
        (0..=tensor_bound(a, b, n))
            .map(|k| tensor_layer(a, b, n, k))
            .collect()
    });
    FiltrationTable {
        ambient: GradedDims { dims },
        layers,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrTensorCheck {
    pub ok: bool,
    /// First `(n, k)` where the two sides differ.
    pub witness: Option<(usize, usize)>,
    pub max_degree: usize,
}

/// Checks `dim Gr(A⊗B)_n^(k) = Σ_{p, i} dim Gr(A)_p^(i) · dim Gr(B)_{n-p}^(k-i)`
/// for every `(n, k)`. The left side comes from the tensor filtration, the
/// right side only from the factor tables.
pub fn check_gr_tensor_iso(a: &FiltrationTable, b: &FiltrationTable) -> GrTensorCheck {
    let t = tensor_filtration(a, b);
    let max = t.max_degree();
    for n in 0..=max {
        let lhs = t.raw_gr_dims(n);
        let top = lhs.len().max((0..=n).map(|p| a.bound(p) + b.bound(n - p)).max().unwrap_or(0));
        for k in 0..top {
            let left = lhs.get(k).copied().unwrap_or(0);
            let mut right = 0i64;
            for p in 0..=n {
                let ga = a.raw_gr_dims(p);
                let gb = b.raw_gr_dims(n - p);
                for i in 0..=k {
                    let x = ga.get(i).copied().unwrap_or(0);
                    let y = gb.get(k - i).copied().unwrap_or(0);
                    right += x * y;
                }
            }
            if left != right {
                return GrTensorCheck {
                    ok: false,
                    witness: Some((n, k)),
                    max_degree: max,
                };
            }
        }
    }
    GrTensorCheck {
        ok: true,
        witness: None,
        max_degree: max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::vec_from_i64;

    fn dims(d: &[usize]) -> GradedDims {
        GradedDims::new(d.to_vec()).unwrap()
    }

    #[test]
    fn trivial_gr() {
        let ft = FiltrationTable::trivial(dims(&[1, 2, 3]));
        let g = gr(&ft).unwrap();
        assert_eq!(g.dims, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn gr_rejects_broken_nesting() {
        let l2 = Subspace::span(2, vec![vec_from_i64(&[1, 0])]).unwrap();
        let l3 = Subspace::span(2, vec![vec_from_i64(&[0, 1])]).unwrap();
        let ft = FiltrationTable::from_layers_unchecked(
            dims(&[1, 2]),
            vec![
                vec![Subspace::full(1), Subspace::zero(1)],
                vec![Subspace::full(2), l2, l3, Subspace::zero(2)],
            ],
        )
        .unwrap();
        assert!(matches!(
            gr(&ft),
            Err(Error::InvalidFiltration { degree: 1, layer: 2, .. })
        ));
    }

    #[test]
    fn trivial_tensor_is_trivial() {
        let a = FiltrationTable::trivial(dims(&[1, 2, 1]));
        let t = tensor_filtration(&a, &a);
        for n in 0..=2 {
            assert_eq!(t.layer(n, 0).dim(), t.ambient().dim(n));
            assert!(t.layer(n, 1).is_zero());
        }
        assert!(check_gr_tensor_iso(&a, &a).ok);
    }

    #[test]
    fn unit_of_tensor() {
        let unit = FiltrationTable::trivial(dims(&[1, 0, 0]));
        let v = FiltrationTable::new(
            dims(&[1, 1, 2]),
            vec![
                vec![Subspace::full(1), Subspace::zero(1)],
                vec![Subspace::full(1), Subspace::full(1), Subspace::zero(1)],
                vec![
                    Subspace::full(2),
                    Subspace::full(2),
                    Subspace::coordinate(2, &[1]),
                    Subspace::zero(2),
                ],
            ],
        )
        .unwrap();
        let t = tensor_filtration(&unit, &v);
        for n in 0..=2 {
            for k in 0..=3 {
                assert_eq!(t.layer(n, k), v.layer(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn layout_decode_round_trip() {
        let l = TensorLayout::full(&[1, 0, 2, 3], &[1, 2, 0, 1], 3);
        for p in l.left_degrees() {
            let (a, b) = l.block_dims(p);
            for i in 0..a {
                for j in 0..b {
                    assert_eq!(l.decode(l.index(p, i, j)), (p, i, j));
                }
            }
        }
        assert_eq!(l.dim(), 1 + 0 + 4 + 3);
    }

    #[test]
    fn degree_truncation_commutes_with_gr() {
        let ft = FiltrationTable::trivial(dims(&[1, 2, 3, 4]));
        let a = gr(&ft.truncate(2)).unwrap();
        let b = gr(&ft).unwrap();
        assert_eq!(a.dims[..], b.dims[..=2]);
    }
}
