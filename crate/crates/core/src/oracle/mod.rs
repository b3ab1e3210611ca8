//! Exhaustive small-term enumeration, reduction-graph reachability, and
//! brute-force checkers for the simulation, confluence and normalization
//! properties.

mod checks;
mod enumerate;
mod graph;

pub use checks::{
    check_confluence_mod_flatten, check_simulation, check_sn, simulation_rule_seq, Failure,
    PropertyReport, SnResult,
};
pub use enumerate::{
    count_bang, count_lsc, count_sharing, enumerate_bang, enumerate_lsc, enumerate_sharing,
    stream_bang, stream_lsc, stream_sharing, Language,
};
pub use graph::{bang_graph, lsc_graph, reachable_set, sharing_graph, Caps, ReductionGraph};
