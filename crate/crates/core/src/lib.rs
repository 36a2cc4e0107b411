pub mod fock_rep;
pub mod hermite_basis;
pub mod metaplectic_rep;
pub mod metric;
pub mod symplectic_group;
pub mod weyl_symbolic;
