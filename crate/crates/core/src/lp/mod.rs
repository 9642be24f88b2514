//! Factor-revealing LPs: exact model construction, a dense simplex solver,
//! text export and solution verification.

pub mod export;
pub mod factory;
pub mod model;
pub mod simplex;
pub mod verify;

pub use export::{export_model, parse_model, parse_solution, recover_rational, write_solution, Format};
pub use factory::{build, build_franking_lp, build_odd_girth_ranking_lp, build_ranking_lp, build_tightened_ranking_lp};
pub use model::{Bound, Constraint, Expr, FamilyGroup, LpModel, Sense, Tag, Variable, Variant, FAMILIES, Q};
pub use simplex::{max_violation, solve, solve_with, Solution, SolveOptions, Status};
pub use verify::{verify_solution, VerifyReport, Violation};
