//! Exact computation in the Tits groups and torus normalizers of the
//! exceptional groups E6, E7 and E8.

// Matrix code below indexes several arrays with one loop variable.
#![allow(clippy::needless_range_loop)]

pub mod chevalley;
pub mod data;
pub mod group;
pub mod lattice;
pub mod monosolve;
pub mod permgroup;
pub mod poly;
pub mod rootsys;
pub mod sparse;
pub mod tits;
pub mod torus;
pub mod verify;
pub mod words;
