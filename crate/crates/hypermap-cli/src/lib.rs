//! Command-line front end for the hypermap toolkit: file-level commands in
//! [`app`] and the verification suites they and the acceptance run share in
//! [`suites`].

pub mod app;
pub mod suites;
