use std::cmp::Ordering;

use serde::Serialize;

use super::{AtomId, LogicError, OrthoLogic};
use crate::Execution;

/// A dispersion-free {0,1} valuation of the atoms with exactly one 1 per
/// context.
///
/// States are ordered canonically: bit vectors compared atom by atom with
/// 1 sorting before 0, which is the same as comparing the sorted lists of
/// true atoms lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwoValuedState {
    values: Vec<bool>,
}

impl TwoValuedState {
    /// Builds a state and checks it against `logic`.
    pub fn new(logic: &OrthoLogic, values: Vec<bool>) -> Result<Self, LogicError> {
        let state = TwoValuedState { values };
        state.validate(logic)?;
        Ok(state)
    }

    /// Builds a state from the atoms that are true.
    pub fn from_true_atoms(logic: &OrthoLogic, atoms: &[AtomId]) -> Result<Self, LogicError> {
        let mut values = vec![false; logic.atom_count()];
        for &a in atoms {
            if a >= logic.atom_count() {
                return Err(LogicError::StateLength {
                    expected: logic.atom_count(),
                    found: a + 1,
                });
            }
            values[a] = true;
        }
        TwoValuedState::new(logic, values)
    }

    pub fn validate(&self, logic: &OrthoLogic) -> Result<(), LogicError> {
        if self.values.len() != logic.atom_count() {
            return Err(LogicError::StateLength {
                expected: logic.atom_count(),
                found: self.values.len(),
            });
        }
        for (ci, ctx) in logic.contexts().iter().enumerate() {
            let ones = ctx.iter().filter(|&&a| self.values[a]).count();
            if ones != 1 {
                return Err(LogicError::InvalidState { context: ci, ones });
            }
        }
        Ok(())
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, atom: AtomId) -> bool {
        self.values[atom]
    }

    pub fn true_atoms(&self) -> Vec<AtomId> {
        (0..self.values.len()).filter(|&a| self.values[a]).collect()
    }

    /// The atom of `context` that this state maps to 1.
    pub fn true_atom_in(&self, logic: &OrthoLogic, context: usize) -> AtomId {
        *logic
            .context(context)
            .iter()
            .find(|&&a| self.values[a])
            .expect("validated state has one true atom per context")
    }
}

impl Ord for TwoValuedState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.values
            .iter()
            .map(|b| !b)
            .cmp(other.values.iter().map(|b| !b))
    }
}

impl PartialOrd for TwoValuedState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const UNSET: u8 = 2;

struct Search<'a> {
    logic: &'a OrthoLogic,
    values: Vec<u8>,
    found: Vec<TwoValuedState>,
}

impl Search<'_> {
    /// Sets `atom` to 1 and every atom sharing a context with it to 0.
    /// Returns the atoms changed, or `None` on conflict (changes undone).
    fn assign_true(&mut self, atom: AtomId) -> Option<Vec<AtomId>> {
        let mut changed = vec![atom];
        self.values[atom] = 1;
        for &ci in self.logic.contexts_of(atom) {
            for &other in self.logic.context(ci) {
                if other == atom {
                    continue;
                }
                match self.values[other] {
                    1 => {
                        self.undo(&changed);
                        return None;
                    }
                    UNSET => {
                        self.values[other] = 0;
                        changed.push(other);
                    }
                    _ => {}
                }
            }
        }
        Some(changed)
    }

    fn undo(&mut self, changed: &[AtomId]) {
        for &a in changed {
            self.values[a] = UNSET;
        }
    }

    /// Picks the unsatisfied context with the fewest unassigned atoms.
    /// `Err(())` means some context is all zeros; `Ok(None)` means done.
    #[allow(clippy::result_unit_err)]
    fn next_context(&self) -> Result<Option<usize>, ()> {
        let mut best: Option<(usize, usize)> = None;
        for (ci, ctx) in self.logic.contexts().iter().enumerate() {
            let mut open = 0;
            let mut satisfied = false;
            for &a in ctx {
                match self.values[a] {
                    1 => {
                        satisfied = true;
                        break;
                    }
                    UNSET => open += 1,
                    _ => {}
                }
            }
            if satisfied {
                continue;
            }
            if open == 0 {
                return Err(());
            }
            if best.is_none_or(|(_, n)| open < n) {
                best = Some((ci, open));
            }
        }
        Ok(best.map(|(ci, _)| ci))
    }

    fn run(&mut self) {
        let ci = match self.next_context() {
            Err(()) => return,
            Ok(None) => {
                let values = self.values.iter().map(|&v| v == 1).collect();
                self.found.push(TwoValuedState { values });
                return;
            }
            Ok(Some(ci)) => ci,
        };
        let open: Vec<AtomId> = self
            .logic
            .context(ci)
            .iter()
            .copied()
            .filter(|&a| self.values[a] == UNSET)
            .collect();
        for atom in open {
            if let Some(changed) = self.assign_true(atom) {
                self.run();
                self.undo(&changed);
            }
        }
    }
}

/// Enumerates every two-valued state of `logic` in canonical order.
///
/// An empty result certifies that the logic is Kochen-Specker noncolorable.
pub fn enumerate_two_valued_states(logic: &OrthoLogic) -> Vec<TwoValuedState> {
    enumerate_two_valued_states_with(logic, Execution::Sequential)
}

/// Like [`enumerate_two_valued_states`], optionally exploring the branches of
/// the smallest context in parallel. The result is identical either way.
pub fn enumerate_two_valued_states_with(
    logic: &OrthoLogic,
    execution: Execution,
) -> Vec<TwoValuedState> {
    let Some(root) = (0..logic.context_count()).min_by_key(|&ci| logic.context(ci).len()) else {
        return Vec::new();
    };
    let branches = logic.context(root).to_vec();
    let per_branch = execution.map_indices(branches.len(), |b| {
        let mut search = Search {
            logic,
            values: vec![UNSET; logic.atom_count()],
            found: Vec::new(),
        };
        // Earlier branch atoms are false here, so branches are disjoint.
        for &earlier in &branches[..b] {
            search.values[earlier] = 0;
        }
        if search.assign_true(branches[b]).is_some() {
            search.run();
        }
        search.found
    });
    let mut states: Vec<TwoValuedState> = per_branch.into_iter().flatten().collect();
    states.sort();
    states
}

/// Summary of a set of two-valued states on a logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StateSetClass {
    pub count: usize,
    /// Every atom is true in some state.
    pub unital: bool,
    /// Any two distinct atoms take different values in some state.
    pub separating: bool,
}

pub fn classify_state_set(
    logic: &OrthoLogic,
    states: &[TwoValuedState],
) -> Result<StateSetClass, LogicError> {
    for s in states {
        s.validate(logic)?;
    }
    let n = logic.atom_count();
    let unital = (0..n).all(|a| states.iter().any(|s| s.value(a)));
    let separating = !states.is_empty()
        && (0..n).all(|a| (a + 1..n).all(|b| states.iter().any(|s| s.value(a) != s.value(b))));
    Ok(StateSetClass {
        count: states.len(),
        unital,
        separating,
    })
}

/// Parity argument against two-valued states on a family of contexts.
///
/// Returns `true` when the number of chosen contexts is odd while every atom
/// they contain occurs in an even number of them: counting the true atoms
/// context by context then gives an odd number, counting them atom by atom
/// an even one, so no two-valued state exists on the sub-logic.
pub fn parity_obstruction(logic: &OrthoLogic, context_subset: &[usize]) -> Result<bool, LogicError> {
    let mut occurrences = vec![0usize; logic.atom_count()];
    for &ci in context_subset {
        if ci >= logic.context_count() {
            return Err(LogicError::ContextIndex {
                index: ci,
                count: logic.context_count(),
            });
        }
        for &a in logic.context(ci) {
            occurrences[a] += 1;
        }
    }
    Ok(context_subset.len() % 2 == 1 && occurrences.iter().all(|&k| k % 2 == 0))
}
