//! Check suites, JSON documents and the command-line front end.

pub mod cli;
pub mod problem;
pub mod result;
pub mod suites;

pub use cli::cli_main;
pub use problem::{Mode, ProblemFile};
pub use result::ResultDocument;
pub use suites::{suite_characters, suite_correspondence, suite_identities, suite_identities_all, Check, Report};
