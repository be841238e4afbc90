//! Ring-expression DSL, corpus, verification suites and example
//! reproductions on top of `ringlab-core`.

pub mod checks;
pub mod corpus;
pub mod dsl;
pub mod reproduce;
pub mod suite;
