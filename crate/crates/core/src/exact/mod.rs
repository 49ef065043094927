//! Exact solving: the 0-1 model with its LP text form, a branch-and-bound
//! solver, and an exhaustive reference solver.

pub mod lp;
pub mod model;
pub mod oracle;
pub mod search;

pub use lp::{emit_lp, parse_lp, parse_solution};
pub use model::{build_ilp, Constraint, Family, IlpModel, Sense, VarKind, Variable};
pub use oracle::brute_force_oracle;
pub use search::{rec_red_edges, solve_exact, solve_exact_from, SolveResult, SolveStatus};
