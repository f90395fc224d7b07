//! Exact symbolic dynamics of symmetric shifts attached to non-integer base
//! expansions over `{0, ..., M}`: quasi-greedy expansions, admissible
//! languages and their automata, entropy and specification analysis,
//! classification of bases, and the generative constructions.

pub mod poly;
pub mod words;
pub mod classify;
pub mod construct;
pub mod expansion;
pub mod shiftlang;
