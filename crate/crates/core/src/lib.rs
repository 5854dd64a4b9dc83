//! Synthesis and analysis of locally-monotonic Boolean networks under the
//! most permissive semantics.
//!
//! The crate provides:
//!
//! - a data model for configurations, hypercubes, signed influence graphs
//!   and canonical antichain-DNF networks ([`bn`]);
//! - the exact most-permissive semantics: trap-space closures,
//!   reachability, fixpoints and attractors ([`semantics`]);
//! - complete, non-redundant enumeration of all networks compatible with
//!   an influence graph and dynamical constraints ([`synthesis`],
//!   [`candidates`]);
//! - brute-force reference implementations used as ground truth on small
//!   instances ([`oracle`]);
//! - benchmark instance generation ([`instances`]) and the JSON file
//!   formats ([`format`]).

pub mod bn;
pub mod candidates;
pub mod error;
pub mod format;
pub mod instances;
pub mod oracle;
pub mod semantics;
pub mod synthesis;

pub use bn::{
    config_diff, is_canonical, BooleanNetwork, Cell, Clause, Configuration, Hypercube,
    InfluenceGraph, MonotoneDnf, NodeIdx, SignedLiteral,
};
pub use candidates::{candidate_count, candidate_count_for, enumerate_local_candidates, ClauseBound};
pub use error::{Error, Result};
pub use semantics::{
    attractors, attractors_with_cap, eval_on_hypercube, is_fixpoint, is_reachable,
    smallest_constrained_trap_space, smallest_trap_space, trap_component_fixed, LockSet,
    NetworkContext, PossibleValues,
};
pub use synthesis::{
    check_problem, synthesize, verify_solution, Mode, Observation, SearchStats, Solution,
    SynthesisOptions, SynthesisOutcome, SynthesisProblem,
};
