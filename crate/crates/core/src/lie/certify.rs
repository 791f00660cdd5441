use serde::Serialize;

use super::lyndon::{evaluate_tree, lyndon_basis};
use super::{all_primitives, derived_subspace_with, pbw_series};
use crate::bialg::{
    check_axioms, check_cocommutative, counital_filtration, counital_layers, gr_bialgebra_with,
    Presentation,
};
use crate::error::{Error, Result};
use crate::exactq::{QVector, Subspace};
use crate::freealg::{check_free, extract_generators, GeneratorSet};
use crate::graded::FiltrationTable;
use crate::par;

/// The counital filtration and the primitives of every degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepared {
    pub filtration: FiltrationTable,
    pub primitives: Vec<Subspace>,
}

/// Computes [`Prepared`] data, refusing presentations that fail the axioms.
pub fn prepare(h: &Presentation) -> Result<Prepared> {
    Ok(Prepared {
        filtration: counital_filtration(h)?,
        primitives: all_primitives(h)?,
    })
}

fn prepare_verified(h: &Presentation) -> Result<Prepared> {
    Ok(Prepared {
        filtration: counital_layers(h)?,
        primitives: all_primitives(h)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Pass,
    Fail,
    Skipped,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    pub status: StageStatus,
    pub witness_degree: Option<usize>,
    pub detail: Option<String>,
}

impl Stage {
    fn new(name: &str, ok: bool, witness_degree: Option<usize>, detail: Option<String>) -> Self {
        Stage {
            name: name.into(),
            status: if ok { StageStatus::Pass } else { StageStatus::Fail },
            witness_degree,
            detail,
        }
    }

    fn skipped(name: &str) -> Self {
        Stage {
            name: name.into(),
            status: StageStatus::Skipped,
            witness_degree: None,
            detail: None,
        }
    }

    pub fn ok(&self) -> bool {
        matches!(self.status, StageStatus::Pass | StageStatus::NotApplicable)
    }
}

/// Per-degree numbers. Fields of stages that did not run are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub n: usize,
    pub dim_h: usize,
    pub algebra_generators: usize,
    pub word_rank: usize,
    pub filtration_dims: Option<Vec<usize>>,
    pub dim_gr: Option<usize>,
    pub gr_algebra_generators: Option<usize>,
    pub dim_prim: Option<usize>,
    pub prim_filtration_dims: Option<Vec<usize>>,
    pub gr_prim_layer_dims: Option<Vec<usize>>,
    pub dim_derived: Option<usize>,
    pub lie_generators: Option<usize>,
    pub lyndon_count: Option<usize>,
    pub lyndon_rank: Option<usize>,
    pub spans: Option<bool>,
}

/// Evidence that `Prim(H)` is a free Lie algebra up to degree `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub model: String,
    pub max_degree: usize,
    pub stages: Vec<Stage>,
    pub degrees: Vec<DegreeRecord>,
    pub axioms_ok: bool,
    pub free_ok: bool,
    pub gr_cocommutative_ok: Option<bool>,
    pub hilbert_preserved_ok: Option<bool>,
    pub gr_free_ok: Option<bool>,
    pub gr_primitive_bound_ok: Option<bool>,
    pub lyndon_ok: Option<bool>,
    pub pbw_ok: Option<bool>,
    pub verdict: bool,
}

impl Certificate {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn lie_multiplicities(&self) -> Vec<Option<usize>> {
        self.degrees.iter().map(|d| d.lie_generators).collect()
    }
}

pub const STAGES: [&str; 8] = [
    "axioms",
    "free",
    "gr_cocommutative",
    "hilbert",
    "gr_primitives",
    "lie_generators",
    "lyndon",
    "pbw",
];

/// Runs the full pipeline with freshly computed filtration data.
pub fn certify_prim_free(h: &Presentation) -> Result<Certificate> {
    certify_with(h, prepare_verified)
}

/// Runs the full pipeline; `provider` supplies the counital filtration and
/// primitives once the axioms and freeness have been confirmed.
pub fn certify_with(
    h: &Presentation,
    provider: impl FnOnce(&Presentation) -> Result<Prepared>,
) -> Result<Certificate> {
    let n_max = h.max_degree();
    let mut stages = Vec::new();

    let axioms = check_axioms(h);
    let axioms_detail = axioms
        .first_failure()
        .map(|(name, c)| format!("{name} fails at {:?}", c.witness.as_ref().map(|w| (&w.degrees, &w.indices))));
    let axioms_degree = axioms.first_failure().and_then(|(_, c)| {
        c.witness.as_ref().map(|w| w.degrees.iter().sum::<usize>())
    });
    stages.push(Stage::new("axioms", axioms.verdict, axioms_degree, axioms_detail));

    let gens = extract_generators(h)?;
    let free = check_free(h, &gens)?;
    stages.push(Stage::new(
        "free",
        free.ok,
        free.witness_degree,
        free.witness_degree.map(|n| {
            format!("{} words of rank {} in dimension {}", free.word_counts[n], free.ranks[n], h.dim(n))
        }),
    ));
    let mut degrees: Vec<DegreeRecord> = (0..=n_max)
        .map(|n| DegreeRecord {
            n,
            dim_h: h.dim(n),
            algebra_generators: gens.generators[n].len(),
            word_rank: free.ranks[n],
            filtration_dims: None,
            dim_gr: None,
            gr_algebra_generators: None,
            dim_prim: None,
            prim_filtration_dims: None,
            gr_prim_layer_dims: None,
            dim_derived: None,
            lie_generators: None,
            lyndon_count: None,
            lyndon_rank: None,
            spans: None,
        })
        .collect();

    let mut cert = Certificate {
        model: h.name().to_string(),
        max_degree: n_max,
        stages,
        degrees,
        axioms_ok: axioms.verdict,
        free_ok: free.ok,
        gr_cocommutative_ok: None,
        hilbert_preserved_ok: None,
        gr_free_ok: None,
        gr_primitive_bound_ok: None,
        lyndon_ok: None,
        pbw_ok: None,
        verdict: false,
    };
    if !axioms.verdict || !free.ok {
        for name in &STAGES[2..] {
            cert.stages.push(Stage::skipped(name));
        }
        return Ok(cert);
    }

    let Prepared {
        filtration,
        primitives,
    } = provider(h)?;
    if filtration.max_degree() != n_max || primitives.len() != n_max + 1 {
        return Err(Error::Precondition("prepared data does not match the presentation".into()));
    }
    degrees = std::mem::take(&mut cert.degrees);
    for d in degrees.iter_mut() {
        d.filtration_dims = Some(filtration.layer_dims(d.n));
        d.dim_prim = Some(primitives[d.n].dim());
    }

    // Gr(H) is a cocommutative bialgebra
    let gr = gr_bialgebra_with(h, filtration.clone())?;
    let gr_axioms = check_axioms(&gr.presentation);
    let cocomm = check_cocommutative(&gr.presentation);
    let gr_ok = gr_axioms.verdict && cocomm.ok;
    cert.gr_cocommutative_ok = Some(gr_ok);
    cert.stages.push(Stage::new(
        "gr_cocommutative",
        gr_ok,
        cocomm.witness.map(|(n, _)| n),
        (!gr_axioms.verdict).then(|| "Gr(H) fails the bialgebra axioms".to_string()),
    ));

    // dimensions and algebra generators of Gr(H) match those of H
    let gr_gens = extract_generators(&gr.presentation)?;
    let gr_free = check_free(&gr.presentation, &gr_gens)?;
    let mismatch = (0..=n_max).find(|&n| {
        gr.presentation.dim(n) != h.dim(n) || gr_gens.generators[n].len() != gens.generators[n].len()
    });
    for d in degrees.iter_mut() {
        d.dim_gr = Some(gr.presentation.dim(d.n));
        d.gr_algebra_generators = Some(gr_gens.generators[d.n].len());
    }
    cert.hilbert_preserved_ok = Some(mismatch.is_none());
    cert.gr_free_ok = Some(gr_free.ok);
    cert.stages.push(Stage::new(
        "hilbert",
        mismatch.is_none() && gr_free.ok,
        mismatch.or(gr_free.witness_degree),
        None,
    ));

    // Gr(Prim H) sits inside Prim(Gr H), layer by layer
    let gr_prims = all_primitives(&gr.presentation)?;
    let mut bound_witness = None;
    for d in degrees.iter_mut() {
        let n = d.n;
        let bound = filtration.bound(n);
        let prim_dims: Vec<usize> = (0..=bound)
            .map(|k| primitives[n].intersect(filtration.layer(n, k)).map(|s| s.dim()))
            .collect::<Result<_>>()?;
        let gr_dims: Vec<usize> = (0..bound)
            .map(|k| {
                let slots: Vec<usize> = (0..gr.presentation.dim(n)).filter(|&a| gr.layer_of(n, a) == k).collect();
                let layer = Subspace::coordinate(gr.presentation.dim(n), &slots);
                gr_prims[n].intersect(&layer).map(|s| s.dim())
            })
            .collect::<Result<_>>()?;
        if bound_witness.is_none() && (0..bound).any(|k| prim_dims[k] - prim_dims[k + 1] > gr_dims[k]) {
            bound_witness = Some(n);
        }
        d.prim_filtration_dims = Some(prim_dims);
        d.gr_prim_layer_dims = Some(gr_dims);
    }
    cert.gr_primitive_bound_ok = Some(bound_witness.is_none());
    cert.stages.push(Stage::new("gr_primitives", bound_witness.is_none(), bound_witness, None));

    // Lie generators: a complement of [g, g] in Prim(H)
    let lie = par::try_map((0..=n_max).collect(), |n| -> Result<(usize, Vec<QVector>)> {
        let derived = derived_subspace_with(h, &primitives, n)?;
        let gens = derived.complement_in(&primitives[n])?.basis().to_vec();
        Ok((derived.dim(), gens))
    })?;
    let lie_gens = GeneratorSet {
        generators: lie.iter().map(|(_, g)| g.clone()).collect(),
    };
    for (d, (derived, g)) in degrees.iter_mut().zip(&lie) {
        d.dim_derived = Some(*derived);
        d.lie_generators = Some(g.len());
    }
    cert.stages.push(Stage::new("lie_generators", true, None, None));

    // Lyndon brackets in the Lie generators form a basis of Prim(H)
    let u = lie_gens.multiplicities();
    let lyndon = par::try_map((1..=n_max).collect(), |n| -> Result<(usize, usize, bool)> {
        let trees = lyndon_basis(&u, n);
        let images = trees
            .iter()
            .map(|t| evaluate_tree(h, t, &lie_gens).map(|e| e.coords))
            .collect::<Result<Vec<_>>>()?;
        let span = Subspace::span(h.dim(n), images)?;
        let inside = span.is_subspace_of(&primitives[n])?;
        Ok((trees.len(), span.dim(), inside && span.dim() == primitives[n].dim()))
    })?;
    let mut lyndon_witness = None;
    for (d, (count, rank, spans)) in degrees.iter_mut().skip(1).zip(&lyndon) {
        d.lyndon_count = Some(*count);
        d.lyndon_rank = Some(*rank);
        d.spans = Some(*spans);
        if lyndon_witness.is_none() && (count != rank || !spans) {
            lyndon_witness = Some(d.n);
        }
    }
    cert.lyndon_ok = Some(lyndon_witness.is_none());
    cert.stages.push(Stage::new("lyndon", lyndon_witness.is_none(), lyndon_witness, None));

    // PBW series, meaningful when H is cocommutative
    if check_cocommutative(h).ok {
        let c: Vec<usize> = primitives.iter().map(Subspace::dim).collect();
        let series = pbw_series(&c, n_max);
        let witness = (0..=n_max).find(|&n| series[n] != h.dim(n) as i128);
        cert.pbw_ok = Some(witness.is_none());
        cert.stages.push(Stage::new("pbw", witness.is_none(), witness, None));
    } else {
        cert.stages.push(Stage {
            name: "pbw".into(),
            status: StageStatus::NotApplicable,
            witness_degree: None,
            detail: Some("H is not cocommutative".into()),
        });
    }

    cert.degrees = degrees;
    cert.verdict = cert.stages.iter().all(Stage::ok);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{fqsym_model, nsym_model, square_zero_model, tensor_model};

    fn prim_dims(c: &Certificate) -> Vec<usize> {
        c.degrees.iter().skip(1).map(|d| d.dim_prim.unwrap()).collect()
    }

    #[test]
    fn tensor_certificate() {
        let c = certify_prim_free(&tensor_model(2, 5).unwrap()).unwrap();
        assert!(c.verdict);
        let ranks: Vec<usize> = c.degrees.iter().skip(1).map(|d| d.lyndon_rank.unwrap()).collect();
        assert_eq!(ranks, vec![2, 1, 2, 3, 6]);
        assert_eq!(c.pbw_ok, Some(true));
    }

    #[test]
    fn nsym_certificate() {
        let c = certify_prim_free(&nsym_model(6).unwrap()).unwrap();
        assert!(c.verdict);
        assert_eq!(prim_dims(&c), vec![1, 1, 2, 3, 6, 9]);
        assert_eq!(c.lie_multiplicities()[1..], [Some(1); 6]);
    }

    #[test]
    fn fqsym_certificate() {
        let c = certify_prim_free(&fqsym_model(4).unwrap()).unwrap();
        assert!(c.verdict);
        assert_eq!(c.gr_cocommutative_ok, Some(true));
        assert_eq!(c.stage("pbw").unwrap().status, StageStatus::NotApplicable);
        assert!(c.pbw_ok.is_none());
    }

    #[test]
    fn square_zero_stops_after_freeness() {
        let c = certify_prim_free(&square_zero_model(3).unwrap()).unwrap();
        assert!(!c.verdict);
        let free = c.stage("free").unwrap();
        assert_eq!(free.status, StageStatus::Fail);
        assert_eq!(free.witness_degree, Some(2));
        assert_eq!(c.stage("lyndon").unwrap().status, StageStatus::Skipped);
    }

    #[test]
    fn provider_mismatch_is_rejected() {
        let h = nsym_model(3).unwrap();
        let other = prepare(&nsym_model(2).unwrap()).unwrap();
        assert!(certify_with(&h, |_| Ok(other)).is_err());
    }
}
