//! Symbolic calculus on the twistor space `Z = N × S²` in the `μ` chart.

mod closure;
mod ebasis;
mod frame;
mod primitive;
mod realize;
mod sphere;

pub use closure::{
    check_pair, generic_bracket, pair_case, verify_bracket_closure, ClosureReport, PairCase,
};
pub use ebasis::{
    assemble, decompose_dbar_exact, e_basis, e_families, DecomposeError, Decomposition, EElement,
    EFamily,
};
pub use frame::{
    all_form_symbols, all_frame_symbols, wedge_sorted, FormSymbol, FrameSymbol, FrameVector,
    OneForm, Twistor, VectorValuedForm,
};
pub use primitive::{dbar_primitive, solve_weighted, PrimitiveError};
pub use realize::{numeric_crosscheck, CrosscheckReport};
pub use sphere::{SpherePoly, SphereScalar};
