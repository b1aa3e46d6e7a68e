use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("context {context} has {len} atom(s); at least 2 are required")]
    ContextTooSmall { context: usize, len: usize },
    #[error("context {context} references atom {atom}, but the logic has {atom_count} atoms")]
    AtomOutOfRange {
        context: usize,
        atom: usize,
        atom_count: usize,
    },
    #[error("context {context} lists atom {atom} more than once")]
    RepeatedAtom { context: usize, atom: usize },
    #[error("contexts {first} and {second} contain the same atoms")]
    DuplicateContext { first: usize, second: usize },
    #[error("atom {atom} does not occur in any context")]
    OrphanAtom { atom: usize },
    #[error("expected {expected} atom labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("identification merges positions {first} and {second} of block {block}")]
    SameBlockMerge {
        block: usize,
        first: usize,
        second: usize,
    },
    #[error("block atom reference ({block}, {index}) is out of range")]
    BadBlockAtom { block: usize, index: usize },
    #[error("state has {found} values but the logic has {expected} atoms")]
    StateLength { expected: usize, found: usize },
    #[error("state assigns 1 to {ones} atom(s) of context {context}; exactly one is required")]
    InvalidState { context: usize, ones: usize },
    #[error("context index {index} is out of range ({count} contexts)")]
    ContextIndex { index: usize, count: usize },
    #[error("the logic admits no two-valued state")]
    NoStates,
    #[error("atom {atom} is 0 in every two-valued state; the state set is not unital")]
    NotUnital { atom: usize },
    #[error("carrier of size {size} exceeds the supported maximum of {max}")]
    CarrierTooLarge { size: usize, max: usize },
    #[error("element index {index} is outside the carrier of size {size}")]
    ElementOutOfCarrier { index: usize, size: usize },
    #[error("partition {partition} does not partition the carrier: {reason}")]
    NotAPartition { partition: usize, reason: String },
    #[error("malformed expression at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown element name `{0}`")]
    UnknownElement(String),
    #[error("element {0} is not part of the logic")]
    NotAnElement(String),
    #[error("invalid automaton: {0}")]
    Automaton(String),
}
