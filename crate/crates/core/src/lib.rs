//! Bound states of the quasi-one-dimensional hydrogen atom: position and
//! momentum wavefunctions, densities, Shannon entropies, and executable
//! checks of the relations between them.

pub mod special_functions;
pub mod states;
pub mod quadrature;
pub mod infotheory;
pub mod audit;
pub mod cli;
