//! Orthogonality hypergraphs and their classical (set) representations.

mod automaton;
mod error;
mod lattice;
mod ortho;
mod partition;
mod states;

pub use automaton::{automaton_partitions, MealyMachine};
pub use error::LogicError;
pub use lattice::{
    find_nondistributive_witness, parse_expr, ElementSet, Expr, SetLogic, MAX_CARRIER,
};
pub use ortho::{paste, paste_by_label, AtomId, BlockAtom, OrthoLogic};
pub use partition::{
    ball_types, build_partition_logic, equivalent_up_to_relabeling, BallType, PartitionLogic,
};
pub use states::{
    classify_state_set, enumerate_two_valued_states, enumerate_two_valued_states_with,
    parity_obstruction, StateSetClass, TwoValuedState,
};
