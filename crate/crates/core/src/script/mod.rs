//! The `cosetkit` scripting language: declarations of groups, subgroups,
//! cosets, sets and maps, followed by commands acting on them.

mod ast;
mod lexer;
mod parser;
mod run;

pub use ast::{pretty, Command, Expr, GroupKind, MapPiece, Op, Stmt, StmtKind, Vector};
pub use lexer::{Diagnostic, Pos};
pub use parser::parse;
pub use run::{
    certificate_path, check_certificate_file, run_script, Format, RunOptions, EXIT_ERROR, EXIT_OK, EXIT_VERIFY,
};
