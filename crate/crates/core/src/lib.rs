//! Homotopy and homology invariants of finite posets: fundamental groups from
//! Hasse diagrams, group colorings and the coverings they induce, cellular
//! homology, second homotopy groups and asphericity certificates.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asphericity;
pub mod boards;
pub mod cellular;
pub mod coloring;
pub mod covering;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod pi1;
pub mod poset;
pub mod simplicial;

pub use homology::{simplicial_homology, ChainComplex, Homology, HomologyGroup};
pub use poset::{mapping_cylinder, MonotoneMap, Poset, PosetError, Subdiagram};
pub use simplicial::{face_poset, order_complex, SimplicialComplex};
