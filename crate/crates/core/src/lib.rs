//! Exact symbolic calculus for equivariant Dehn surgery and equivariant
//! contact surgery on real 3-manifolds with genus-one real Heegaard
//! splittings.
//!
//! Gluing maps are integer matrices acting on `H_1` of the Heegaard surface.
//! Real structures are factored into Dehn-twist words, words are read off as
//! leveled surgery diagrams in the standard real `S^3`, and diagrams are
//! checked for equivariant contact legality. Every step is verified by exact
//! matrix arithmetic in [`linear`].

pub mod contact;
pub mod contfrac;
pub mod lens;
pub mod linear;
pub mod rational;
pub mod surgery;
pub mod word;
