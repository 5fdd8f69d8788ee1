//! Reader and printer for `.loc` problem files.

mod grammar;
mod lexer;
mod printer;

pub use grammar::{parse_task, parse_task_with, ParseOptions};
pub use lexer::{tokenize, Tok, Token};
pub use printer::print_task;
