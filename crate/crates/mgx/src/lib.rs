//! Support code for the `mgx` command-line tool: file formats, JSON
//! rendering and the verification suite.

pub mod io;
pub mod output;
pub mod verify;
