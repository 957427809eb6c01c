//! Construction scripts: a line-oriented language of declarations,
//! ruler-and-compass constructions and checked assertions.

pub mod ast;
mod interp;
mod lexer;
mod parser;

pub use ast::{Pos, Script, Stmt, StmtKind};
pub use interp::{
    eval_poly, execute, execute_partial, run, AssertionRecord, DirectedLine, DynEnv, Env,
    FailureKind, RuntimeFailure, Shape, Value,
};
pub use parser::{is_keyword, parse, ParseError};
