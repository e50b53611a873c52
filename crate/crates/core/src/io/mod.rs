//! Text input, command driver and report rendering.

pub mod dsl;
pub mod report;

pub use dsl::{parse_polynomial, parse_structure, print_structure, Expr, ExprKind, StructureDoc};
pub use report::{
    parse_samples, run, AssembleKind, AssembleParams, Format, Operation, ReportConfig, RunOutcome, Source,
};
