//! Relation automata, automatic structures and growth series of semigroups
//! generated by affine maps `x ↦ βx + t`, with `t` ranging over a finite
//! digit set.

pub mod automata;
pub mod numfield;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod reducer;
pub mod relations;
pub mod structure;
