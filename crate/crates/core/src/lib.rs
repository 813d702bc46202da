//! Exact symbolic computations for H-type hypercomplex nilmanifolds: the
//! Lie algebra and its hypercomplex structure, the twistor space frame
//! calculus, sheaf cohomology dimensions, a Maurer–Cartan power-series solver
//! for deformations, and the automorphism group bookkeeping.

pub mod exact_linalg;
pub mod poly;
pub mod lie_core;
pub mod hypercomplex;
pub mod coord_calc;
pub mod report;
pub mod twistor;
pub mod cohomology;
pub mod mc_solver;
pub mod automorphisms;
pub mod suites;
