use std::fmt;

use serde::Serialize;

use super::{enumerate_two_valued_states, AtomId, LogicError, OrthoLogic, TwoValuedState};

/// A logic represented by partitions of its two-valued state indices.
///
/// Context `c` is partitioned into one block per atom, in the atom order of
/// the source logic; the block of atom `a` holds the (zero-based, canonically
/// ordered) states that assign 1 to `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionLogic {
    state_count: usize,
    blocks: Vec<Vec<Vec<usize>>>,
    block_atoms: Vec<Vec<AtomId>>,
    #[serde(skip)]
    states: Vec<TwoValuedState>,
}

/// Builds the partition logic of `logic` from all of its two-valued states.
///
/// Fails if there are no states or if some atom is false in every state.
pub fn build_partition_logic(logic: &OrthoLogic) -> Result<PartitionLogic, LogicError> {
    PartitionLogic::from_states(logic, enumerate_two_valued_states(logic))
}

impl PartitionLogic {
    /// Builds a partition logic from an explicit (ordered) state set.
    pub fn from_states(
        logic: &OrthoLogic,
        states: Vec<TwoValuedState>,
    ) -> Result<Self, LogicError> {
        if states.is_empty() {
            return Err(LogicError::NoStates);
        }
        for s in &states {
            s.validate(logic)?;
        }
        if let Some(atom) = (0..logic.atom_count()).find(|&a| !states.iter().any(|s| s.value(a))) {
            return Err(LogicError::NotUnital { atom });
        }
        let blocks = logic
            .contexts()
            .iter()
            .map(|ctx| {
                ctx.iter()
                    .map(|&a| (0..states.len()).filter(|&i| states[i].value(a)).collect())
                    .collect()
            })
            .collect();
        Ok(PartitionLogic {
            state_count: states.len(),
            blocks,
            block_atoms: logic.contexts().to_vec(),
            states,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn context_count(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks of every context, as zero-based state indices.
    pub fn blocks(&self) -> &[Vec<Vec<usize>>] {
        &self.blocks
    }

    /// The atom each block belongs to.
    pub fn block_atoms(&self) -> &[Vec<AtomId>] {
        &self.block_atoms
    }

    pub fn states(&self) -> &[TwoValuedState] {
        &self.states
    }

    /// Index of the block of `context` that contains `state`.
    pub fn block_of(&self, context: usize, state: usize) -> usize {
        self.blocks[context]
            .iter()
            .position(|b| b.contains(&state))
            .expect("blocks partition the state set")
    }

    /// Blocks with one-based state labels, as usually printed.
    pub fn one_based(&self) -> Vec<Vec<Vec<usize>>> {
        self.blocks
            .iter()
            .map(|ctx| ctx.iter().map(|b| b.iter().map(|s| s + 1).collect()).collect())
            .collect()
    }
}

/// The symbols printed on one ball of the urn model: for every color
/// (context), the index of the block that contains the ball's state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BallType(pub Vec<usize>);

impl BallType {
    pub fn colors(&self) -> usize {
        self.0.len()
    }

    pub fn symbol(&self, color: usize) -> usize {
        self.0[color]
    }
}

impl fmt::Display for BallType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// One ball type per state, in state order.
pub fn ball_types(pl: &PartitionLogic) -> Vec<BallType> {
    (0..pl.state_count)
        .map(|s| BallType((0..pl.context_count()).map(|c| pl.block_of(c, s)).collect()))
        .collect()
}

/// Whether two families of partitions agree up to a relabeling of the
/// carrier. Context order is significant; block order inside a context is
/// not.
pub fn equivalent_up_to_relabeling(a: &[Vec<Vec<usize>>], b: &[Vec<Vec<usize>>]) -> bool {
    fn labels(p: &[Vec<Vec<usize>>]) -> Option<(usize, Vec<Vec<usize>>)> {
        let n: usize = p.first().map_or(0, |ctx| ctx.iter().map(Vec::len).sum());
        let mut out = Vec::with_capacity(p.len());
        for ctx in p {
            let mut of = vec![usize::MAX; n];
            for (bi, block) in ctx.iter().enumerate() {
                for &s in block {
                    if s >= n || of[s] != usize::MAX {
                        return None;
                    }
                    of[s] = bi;
                }
            }
            if of.contains(&usize::MAX) {
                return None;
            }
            out.push(of);
        }
        Some((n, out))
    }

    fn extend(
        s: usize,
        n: usize,
        la: &[Vec<usize>],
        lb: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if s == n {
            return true;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            let consistent = (0..s).all(|prev| {
                let tp = map[prev];
                la.iter()
                    .zip(lb)
                    .all(|(ca, cb)| (ca[s] == ca[prev]) == (cb[t] == cb[tp]))
            });
            if consistent {
                used[t] = true;
                map.push(t);
                if extend(s + 1, n, la, lb, map, used) {
                    return true;
                }
                map.pop();
                used[t] = false;
            }
        }
        false
    }

    if a.len() != b.len() {
        return false;
    }
    let (Some((na, la)), Some((nb, lb))) = (labels(a), labels(b)) else {
        return false;
    };
    if na != nb {
        return false;
    }
    let sizes = |p: &[Vec<Vec<usize>>]| -> Vec<Vec<usize>> {
        p.iter()
            .map(|ctx| {
                let mut s: Vec<usize> = ctx.iter().map(Vec::len).collect();
                s.sort_unstable();
                s
            })
            .collect()
    };
    if sizes(a) != sizes(b) {
        return false;
    }
    extend(0, na, &la, &lb, &mut Vec::with_capacity(na), &mut vec![false; na])
}
