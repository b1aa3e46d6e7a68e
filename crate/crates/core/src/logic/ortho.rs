use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::LogicError;

/// Index of an atom inside an [`OrthoLogic`].
pub type AtomId = usize;

/// An orthogonality hypergraph: atoms plus the contexts (Boolean blocks)
/// they belong to.
///
/// The order of contexts and the order of atoms within each context are
/// kept as given. They carry no semantics but fix the block order used for
/// ball-type symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLogic", into = "RawLogic")]
pub struct OrthoLogic {
    atom_count: usize,
    labels: Option<Vec<String>>,
    contexts: Vec<Vec<AtomId>>,
    #[serde(skip)]
    incidence: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawLogic {
    atoms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    contexts: Vec<Vec<AtomId>>,
}

impl TryFrom<RawLogic> for OrthoLogic {
    type Error = LogicError;

    fn try_from(raw: RawLogic) -> Result<Self, Self::Error> {
        let logic = OrthoLogic::new(raw.atoms, raw.contexts)?;
        match raw.labels {
            Some(labels) => logic.with_labels(labels),
            None => Ok(logic),
        }
    }
}

impl From<OrthoLogic> for RawLogic {
    fn from(logic: OrthoLogic) -> Self {
        RawLogic {
            atoms: logic.atom_count,
            labels: logic.labels,
            contexts: logic.contexts,
        }
    }
}

impl OrthoLogic {
    pub fn new(atom_count: usize, contexts: Vec<Vec<AtomId>>) -> Result<Self, LogicError> {
        let mut seen: HashMap<BTreeSet<AtomId>, usize> = HashMap::new();
        let mut incidence = vec![Vec::new(); atom_count];
        for (ci, ctx) in contexts.iter().enumerate() {
            if ctx.len() < 2 {
                return Err(LogicError::ContextTooSmall {
                    context: ci,
                    len: ctx.len(),
                });
            }
            let mut set = BTreeSet::new();
            for &atom in ctx {
                if atom >= atom_count {
                    return Err(LogicError::AtomOutOfRange {
                        context: ci,
                        atom,
                        atom_count,
                    });
                }
                if !set.insert(atom) {
                    return Err(LogicError::RepeatedAtom { context: ci, atom });
                }
                incidence[atom].push(ci);
            }
            if let Some(&first) = seen.get(&set) {
                return Err(LogicError::DuplicateContext { first, second: ci });
            }
            seen.insert(set, ci);
        }
        if let Some(atom) = incidence.iter().position(Vec::is_empty) {
            return Err(LogicError::OrphanAtom { atom });
        }
        Ok(OrthoLogic {
            atom_count,
            labels: None,
            contexts,
            incidence,
        })
    }

    /// Attaches display labels. Labels never affect semantics.
    pub fn with_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Result<Self, LogicError> {
        if labels.len() != self.atom_count {
            return Err(LogicError::LabelCount {
                expected: self.atom_count,
                found: labels.len(),
            });
        }
        self.labels = Some(labels.into_iter().map(Into::into).collect());
        Ok(self)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn context_count(&self) -> usize {
        self.contexts.len()
    }

    pub fn contexts(&self) -> &[Vec<AtomId>] {
        &self.contexts
    }

    pub fn context(&self, index: usize) -> &[AtomId] {
        &self.contexts[index]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `atom`, defaulting to its one-based index.
    pub fn label(&self, atom: AtomId) -> String {
        match &self.labels {
            Some(labels) => labels[atom].clone(),
            None => (atom + 1).to_string(),
        }
    }

    /// Indices of the contexts containing `atom`.
    pub fn contexts_of(&self, atom: AtomId) -> &[usize] {
        &self.incidence[atom]
    }

    /// Position of `atom` inside context `context`, if present.
    pub fn position_in(&self, context: usize, atom: AtomId) -> Option<usize> {
        self.contexts[context].iter().position(|&a| a == atom)
    }

    pub fn max_arity(&self) -> usize {
        self.contexts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Contexts with sorted atoms, listed in lexicographic order. Two logics
    /// with the same canonical contexts differ only in presentation.
    pub fn canonical_contexts(&self) -> Vec<Vec<AtomId>> {
        let mut out: Vec<Vec<AtomId>> = self
            .contexts
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort();
        out
    }

    /// The sub-logic spanned by the chosen contexts. Atoms are renumbered in
    /// increasing order of their original ids; the second element maps new
    /// ids back to the original ones.
    pub fn restrict(&self, context_subset: &[usize]) -> Result<(OrthoLogic, Vec<AtomId>), LogicError> {
        let mut used = BTreeSet::new();
        for &ci in context_subset {
            let ctx = self.contexts.get(ci).ok_or(LogicError::ContextIndex {
                index: ci,
                count: self.contexts.len(),
            })?;
            used.extend(ctx.iter().copied());
        }
        let old_ids: Vec<AtomId> = used.into_iter().collect();
        let new_id: HashMap<AtomId, AtomId> =
            old_ids.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let contexts = context_subset
            .iter()
            .map(|&ci| self.contexts[ci].iter().map(|a| new_id[a]).collect())
            .collect();
        let mut sub = OrthoLogic::new(old_ids.len(), contexts)?;
        if self.labels.is_some() {
            sub = sub.with_labels(old_ids.iter().map(|&a| self.label(a)).collect())?;
        }
        Ok((sub, old_ids))
    }
}

/// A position inside one of the blocks handed to [`paste`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockAtom {
    pub block: usize,
    pub index: usize,
}

impl BlockAtom {
    pub fn new(block: usize, index: usize) -> Self {
        BlockAtom { block, index }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Pastes Boolean blocks into an orthologic by merging the identified atoms.
///
/// Each block is a list of local atom labels. Atoms are numbered by first
/// appearance in block order and keep the label of their first occurrence.
pub fn paste<S: AsRef<str>>(
    blocks: &[Vec<S>],
    identifications: &[(BlockAtom, BlockAtom)],
) -> Result<OrthoLogic, LogicError> {
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut total = 0;
    for block in blocks {
        offsets.push(total);
        total += block.len();
    }
    let flat = |p: BlockAtom| -> Result<usize, LogicError> {
        match blocks.get(p.block) {
            Some(b) if p.index < b.len() => Ok(offsets[p.block] + p.index),
            _ => Err(LogicError::BadBlockAtom {
                block: p.block,
                index: p.index,
            }),
        }
    };
    let mut uf = UnionFind((0..total).collect());
    for &(a, b) in identifications {
        uf.union(flat(a)?, flat(b)?);
    }

    let mut class_to_atom: HashMap<usize, AtomId> = HashMap::new();
    let mut labels = Vec::new();
    let mut contexts = Vec::with_capacity(blocks.len());
    for (bi, block) in blocks.iter().enumerate() {
        let mut ctx = Vec::with_capacity(block.len());
        let mut roots: HashMap<usize, usize> = HashMap::new();
        for (pos, label) in block.iter().enumerate() {
            let root = uf.find(offsets[bi] + pos);
            if let Some(&first) = roots.get(&root) {
                return Err(LogicError::SameBlockMerge {
                    block: bi,
                    first,
                    second: pos,
                });
            }
            roots.insert(root, pos);
            let next = class_to_atom.len();
            let atom = *class_to_atom.entry(root).or_insert_with(|| {
                labels.push(label.as_ref().to_string());
                next
            });
            ctx.push(atom);
        }
        contexts.push(ctx);
    }
    OrthoLogic::new(labels.len(), contexts)?.with_labels(labels)
}

/// Pastes blocks, identifying atoms that carry the same label in different
/// blocks.
pub fn paste_by_label<S: AsRef<str>>(blocks: &[Vec<S>]) -> Result<OrthoLogic, LogicError> {
    let mut first_seen: HashMap<&str, BlockAtom> = HashMap::new();
    let mut ids = Vec::new();
    for (bi, block) in blocks.iter().enumerate() {
        let mut local: HashMap<&str, usize> = HashMap::new();
        for (pos, label) in block.iter().enumerate() {
            let label = label.as_ref();
            if let Some(&first) = local.get(label) {
                return Err(LogicError::SameBlockMerge {
                    block: bi,
                    first,
                    second: pos,
                });
            }
            local.insert(label, pos);
            let here = BlockAtom::new(bi, pos);
            match first_seen.get(label) {
                Some(&there) => ids.push((there, here)),
                None => {
                    first_seen.insert(label, here);
                }
            }
        }
    }
    paste(blocks, &ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_contexts() {
        assert!(matches!(
            OrthoLogic::new(2, vec![vec![0]]),
            Err(LogicError::ContextTooSmall { .. })
        ));
        assert!(matches!(
            OrthoLogic::new(2, vec![vec![0, 2]]),
            Err(LogicError::AtomOutOfRange { atom: 2, .. })
        ));
        assert!(matches!(
            OrthoLogic::new(2, vec![vec![0, 0, 1]]),
            Err(LogicError::RepeatedAtom { .. })
        ));
        assert!(matches!(
            OrthoLogic::new(3, vec![vec![0, 1, 2], vec![2, 1, 0]]),
            Err(LogicError::DuplicateContext { first: 0, second: 1 })
        ));
        assert!(matches!(
            OrthoLogic::new(3, vec![vec![0, 1]]),
            Err(LogicError::OrphanAtom { atom: 2 })
        ));
    }

    #[test]
    fn disjoint_blocks_paste_into_two_contexts() {
        let l = paste(&[vec!["a1", "a2"], vec!["b1", "b2"]], &[]).unwrap();
        assert_eq!(l.atom_count(), 4);
        assert_eq!(l.contexts(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(l.labels().unwrap(), &["a1", "a2", "b1", "b2"]);
    }

    #[test]
    fn single_block_paste_is_identity() {
        let l = paste(&[vec!["x", "y", "z"]], &[]).unwrap();
        assert_eq!(l.atom_count(), 3);
        assert_eq!(l.contexts(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn triangle_by_identification() {
        let blocks = vec![vec!["1", "2", "3"], vec!["3", "4", "5"], vec!["5", "6", "1"]];
        let ids = [
            (BlockAtom::new(0, 2), BlockAtom::new(1, 0)),
            (BlockAtom::new(1, 2), BlockAtom::new(2, 0)),
            (BlockAtom::new(2, 2), BlockAtom::new(0, 0)),
        ];
        let l = paste(&blocks, &ids).unwrap();
        assert_eq!(l.atom_count(), 6);
        assert_eq!(l.context_count(), 3);
        assert_eq!(l.contexts(), &[vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]);
        assert_eq!(l, paste_by_label(&blocks).unwrap());
        assert_eq!(l.contexts_of(0), &[0, 2]);
    }

    #[test]
    fn merging_inside_a_block_is_rejected() {
        let blocks = vec![vec!["a", "b", "c"], vec!["c", "d"]];
        let ids = [
            (BlockAtom::new(0, 0), BlockAtom::new(1, 0)),
            (BlockAtom::new(1, 0), BlockAtom::new(0, 2)),
        ];
        assert!(matches!(
            paste(&blocks, &ids),
            Err(LogicError::SameBlockMerge { block: 0, .. })
        ));
        assert!(paste_by_label(&[vec!["a", "a"]]).is_err());
        assert!(matches!(
            paste(&blocks, &[(BlockAtom::new(0, 9), BlockAtom::new(1, 0))]),
            Err(LogicError::BadBlockAtom { .. })
        ));
    }

    #[test]
    fn restrict_renumbers_atoms() {
        let l = OrthoLogic::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let (sub, map) = l.restrict(&[1]).unwrap();
        assert_eq!(sub.contexts(), &[vec![0, 1, 2]]);
        assert_eq!(map, vec![2, 3, 4]);
        assert!(l.restrict(&[7]).is_err());
    }

    #[test]
    fn json_round_trip_validates() {
        let l = OrthoLogic::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"{"atoms":3,"contexts":[[0,1],[1,2]]}"#);
        let back: OrthoLogic = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<OrthoLogic>(r#"{"atoms":3,"contexts":[[0,1]]}"#).is_err());
    }
}
