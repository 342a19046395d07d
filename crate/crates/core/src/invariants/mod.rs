//! Factorization invariants: length sets and their arithmetic structure,
//! delta sets, Betti elements and R-classes, catenary degrees, unions of
//! length sets, elasticity, omega primality, and the chain-condition
//! classification flags.

mod delta;
mod graph;
mod lengths;
mod omega;

pub use delta::{delta_semiring, DeltaReport, DeltaWitness};
pub use graph::{
    betti_elements, catenary_element, catenary_semiring, rclasses, BettiElement, CatenaryElement,
    RClassPartition,
};
pub use lengths::{
    aap_decompose, delta_element, elasticity, length_set, proven_gaps, union_k, AapStructure,
    Elasticity, LengthSet, UnionWindow,
};
pub use omega::{classify, omega, ClassificationFlags, OmegaResult, OmegaStatus};
