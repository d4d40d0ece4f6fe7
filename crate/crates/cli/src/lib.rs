//! Library half of the CLI crate: the wire formats, shared with the
//! integration tests.

pub mod format;
