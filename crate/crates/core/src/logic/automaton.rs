use super::LogicError;

/// A deterministic Mealy machine with states, inputs and outputs numbered
/// from zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    states: usize,
    inputs: usize,
    outputs: usize,
    transition: Vec<Vec<usize>>,
    output: Vec<Vec<usize>>,
}

impl MealyMachine {
    /// `transition[s][i]` and `output[s][i]` must be given for every state
    /// `s` and input `i`.
    pub fn new(
        states: usize,
        inputs: usize,
        outputs: usize,
        transition: Vec<Vec<usize>>,
        output: Vec<Vec<usize>>,
    ) -> Result<Self, LogicError> {
        let shape_ok = |table: &[Vec<usize>]| {
            table.len() == states && table.iter().all(|row| row.len() == inputs)
        };
        if !shape_ok(&transition) || !shape_ok(&output) {
            return Err(LogicError::Automaton(format!(
                "tables must be {states} x {inputs}"
            )));
        }
        if transition.iter().flatten().any(|&t| t >= states) {
            return Err(LogicError::Automaton("transition leaves the state set".into()));
        }
        if output.iter().flatten().any(|&o| o >= outputs) {
            return Err(LogicError::Automaton("output outside the output alphabet".into()));
        }
        Ok(MealyMachine {
            states,
            inputs,
            outputs,
            transition,
            output,
        })
    }

    /// The four-state machine with an all-to-one transition whose outputs
    /// encode the partitions {{1,2},{3,4}} (input 0) and {{1,3},{2,4}}
    /// (input 1).
    pub fn complementarity_example() -> Self {
        MealyMachine::new(
            4,
            2,
            2,
            vec![vec![0, 0]; 4],
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        )
        .expect("tables are well formed")
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn output_count(&self) -> usize {
        self.outputs
    }

    pub fn next_state(&self, state: usize, input: usize) -> usize {
        self.transition[state][input]
    }

    pub fn output(&self, state: usize, input: usize) -> usize {
        self.output[state][input]
    }
}

/// For each input, the partition of the states by the output they emit.
/// Blocks are ordered by output symbol; empty blocks are dropped.
pub fn automaton_partitions(m: &MealyMachine) -> Vec<Vec<Vec<usize>>> {
    (0..m.inputs)
        .map(|i| {
            let mut blocks = vec![Vec::new(); m.outputs];
            for s in 0..m.states {
                blocks[m.output[s][i]].push(s);
            }
            blocks.retain(|b| !b.is_empty());
            blocks
        })
        .collect()
}
