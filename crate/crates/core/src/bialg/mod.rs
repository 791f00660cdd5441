mod axioms;
mod filtration;
mod gr;
mod presentation;

pub use axioms::{check_axioms, AxiomCheck, AxiomReport, Witness};
pub use filtration::{
    counital_filtration, eq1_residual_check, reduced_coproduct_matrix, Eq1Checker, Eq1Outcome,
};
pub(crate) use filtration::counital_layers;
pub use gr::{
    check_cocommutative, gr_bialgebra, gr_bialgebra_with, CocommutativeCheck, GrBialgebra,
    GrRepresentative,
};
pub use presentation::{CoTerm, Element, Presentation, PresentationBuilder};
