//! Lattice operations on logics given as families of subsets of a carrier.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::LogicError;

/// Largest supported carrier.
pub const MAX_CARRIER: usize = 128;

/// A subset of a carrier `{0, .., n-1}`, `n <= MAX_CARRIER`.
///
/// Displayed (and serialised) with one-based elements, e.g. `{1,2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(size: usize) -> ElementSet {
        if size >= 128 {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << size) - 1)
        }
    }

    pub fn from_indices(indices: &[usize], carrier: usize) -> Result<ElementSet, LogicError> {
        if carrier > MAX_CARRIER {
            return Err(LogicError::CarrierTooLarge {
                size: carrier,
                max: MAX_CARRIER,
            });
        }
        let mut bits = 0u128;
        for &i in indices {
            if i >= carrier {
                return Err(LogicError::ElementOutOfCarrier {
                    index: i,
                    size: carrier,
                });
            }
            bits |= 1 << i;
        }
        Ok(ElementSet(bits))
    }

    /// Builds a set from one-based element labels.
    pub fn from_one_based(labels: &[usize], carrier: usize) -> Result<ElementSet, LogicError> {
        let zero: Vec<usize> = labels
            .iter()
            .map(|&l| l.checked_sub(1).unwrap_or(usize::MAX))
            .collect();
        ElementSet::from_indices(&zero, carrier)
    }

    pub fn indices(self) -> Vec<usize> {
        (0..128).filter(|&i| self.0 >> i & 1 == 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.indices().iter().map(|i| i + 1).collect();
        one_based.serialize(serializer)
    }
}

/// A logic whose elements are subsets of a carrier, pasted from Boolean
/// blocks. Each block is generated by a partition of the carrier; the logic
/// consists of every union of blocks of some partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetLogic {
    carrier: usize,
    elements: Vec<ElementSet>,
}

impl SetLogic {
    /// The pasting of the Boolean algebras generated by `partitions`.
    pub fn from_partitions(
        carrier: usize,
        partitions: &[Vec<Vec<usize>>],
    ) -> Result<SetLogic, LogicError> {
        if carrier > MAX_CARRIER {
            return Err(LogicError::CarrierTooLarge {
                size: carrier,
                max: MAX_CARRIER,
            });
        }
        let full = ElementSet::full(carrier);
        let mut elements = Vec::new();
        for (pi, partition) in partitions.iter().enumerate() {
            let blocks = partition
                .iter()
                .map(|b| ElementSet::from_indices(b, carrier))
                .collect::<Result<Vec<_>, _>>()?;
            let mut seen = ElementSet::EMPTY;
            for b in &blocks {
                if !b.intersection(seen).is_empty() {
                    return Err(LogicError::NotAPartition {
                        partition: pi,
                        reason: "blocks overlap".into(),
                    });
                }
                seen = seen.union(*b);
            }
            if seen != full {
                return Err(LogicError::NotAPartition {
                    partition: pi,
                    reason: "blocks do not cover the carrier".into(),
                });
            }
            if blocks.len() > 20 {
                return Err(LogicError::NotAPartition {
                    partition: pi,
                    reason: "more than 20 blocks".into(),
                });
            }
            for mask in 0u32..1 << blocks.len() {
                let e = blocks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(ElementSet::EMPTY, |acc, (_, b)| acc.union(*b));
                elements.push(e);
            }
        }
        if elements.is_empty() {
            elements = vec![ElementSet::EMPTY, full];
        }
        elements.sort();
        elements.dedup();
        Ok(SetLogic { carrier, elements })
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn elements(&self) -> &[ElementSet] {
        &self.elements
    }

    pub fn contains(&self, e: ElementSet) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// Greatest element below both, if the logic has one.
    pub fn meet(&self, a: ElementSet, b: ElementSet) -> Option<ElementSet> {
        let bound = a.intersection(b);
        if self.contains(bound) {
            return Some(bound);
        }
        let below: Vec<ElementSet> = self
            .elements
            .iter()
            .copied()
            .filter(|e| e.is_subset(bound))
            .collect();
        below
            .iter()
            .copied()
            .find(|cand| below.iter().all(|e| e.is_subset(*cand)))
    }

    /// Least element above both, if the logic has one.
    pub fn join(&self, a: ElementSet, b: ElementSet) -> Option<ElementSet> {
        let bound = a.union(b);
        if self.contains(bound) {
            return Some(bound);
        }
        let above: Vec<ElementSet> = self
            .elements
            .iter()
            .copied()
            .filter(|e| bound.is_subset(*e))
            .collect();
        above
            .iter()
            .copied()
            .find(|cand| above.iter().all(|e| cand.is_subset(*e)))
    }

    pub fn complement(&self, a: ElementSet) -> Option<ElementSet> {
        let c = ElementSet(ElementSet::full(self.carrier).0 & !a.0);
        self.contains(c).then_some(c)
    }

    /// Evaluates `expr`. `Ok(None)` means some meet, join or complement has
    /// no value inside the logic.
    pub fn eval(&self, expr: &Expr) -> Result<Option<ElementSet>, LogicError> {
        Ok(match expr {
            Expr::Element(e) => {
                if !self.contains(*e) {
                    return Err(LogicError::NotAnElement(e.to_string()));
                }
                Some(*e)
            }
            Expr::Meet(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Some(x), Some(y)) => self.meet(x, y),
                _ => None,
            },
            Expr::Join(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Some(x), Some(y)) => self.join(x, y),
                _ => None,
            },
            Expr::Complement(a) => self.eval(a)?.and_then(|x| self.complement(x)),
        })
    }
}

/// A meet/join/complement expression over logic elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Element(ElementSet),
    Meet(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Complement(Box<Expr>),
}

impl Expr {
    pub fn meet(a: Expr, b: Expr) -> Expr {
        Expr::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Expr, b: Expr) -> Expr {
        Expr::Join(Box::new(a), Box::new(b))
    }

    pub fn complement(a: Expr) -> Expr {
        Expr::Complement(Box::new(a))
    }
}

/// Parses an expression such as `a1 & (b1 | b2)'` against named elements.
///
/// Operators: `&` or `∧` (meet), `|` or `∨` (join), prefix `~` or postfix
/// `'` (complement). Meet binds tighter than join.
pub fn parse_expr(src: &str, names: &HashMap<String, ElementSet>) -> Result<Expr, LogicError> {
    let mut p = Parser {
        chars: src.char_indices().collect(),
        pos: 0,
        names,
        len: src.len(),
    };
    let e = p.join()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a HashMap<String, ElementSet>,
    len: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn error(&self, message: &str) -> LogicError {
        LogicError::Parse {
            position: self.chars.get(self.pos).map_or(self.len, |c| c.0),
            message: message.to_string(),
        }
    }

    fn join(&mut self) -> Result<Expr, LogicError> {
        let mut lhs = self.meet()?;
        while matches!(self.peek(), Some('|' | '∨')) {
            self.pos += 1;
            lhs = Expr::join(lhs, self.meet()?);
        }
        Ok(lhs)
    }

    fn meet(&mut self) -> Result<Expr, LogicError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some('&' | '∧')) {
            self.pos += 1;
            lhs = Expr::meet(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, LogicError> {
        let mut e = match self.peek() {
            Some('~') => {
                self.pos += 1;
                Expr::complement(self.unary()?)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.join()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_alphanumeric() || c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.1.is_alphanumeric() || c.1 == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                let set = self
                    .names
                    .get(&name)
                    .ok_or_else(|| LogicError::UnknownElement(name.clone()))?;
                Expr::Element(*set)
            }
            Some(_) => return Err(self.error("expected an element, `(` or `~`")),
            None => return Err(self.error("unexpected end of expression")),
        };
        while self.peek() == Some('\'') {
            self.pos += 1;
            e = Expr::complement(e);
        }
        Ok(e)
    }
}

/// Searches for `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`, both
/// sides defined. Elements are scanned in ascending order.
pub fn find_nondistributive_witness(
    logic: &SetLogic,
) -> Option<(ElementSet, ElementSet, ElementSet)> {
    let els = logic.elements();
    for &x in els {
        for &y in els {
            let xy = logic.meet(x, y);
            for &z in els {
                let lhs = logic.join(y, z).and_then(|yz| logic.meet(x, yz));
                let rhs = match (xy, logic.meet(x, z)) {
                    (Some(a), Some(b)) => logic.join(a, b),
                    _ => None,
                };
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        return Some((x, y, z));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The set model over {1,2,3,4} with A = {{1,2},{3,4}}, B = {{1,3},{2,4}}.
    fn l_ab() -> (SetLogic, HashMap<String, ElementSet>) {
        let logic =
            SetLogic::from_partitions(4, &[vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]])
                .unwrap();
        let mut names = HashMap::new();
        for (name, set) in [
            ("a1", vec![1, 2]),
            ("a2", vec![3, 4]),
            ("b1", vec![1, 3]),
            ("b2", vec![2, 4]),
            ("S", vec![1, 2, 3, 4]),
            ("empty", vec![]),
        ] {
            names.insert(name.to_string(), ElementSet::from_one_based(&set, 4).unwrap());
        }
        (logic, names)
    }

    #[test]
    fn l_ab_has_six_elements() {
        let (l, _) = l_ab();
        assert_eq!(l.elements().len(), 6);
        let one = ElementSet::from_one_based(&[1], 4).unwrap();
        assert!(!l.contains(one));
    }

    #[test]
    fn distributivity_fails_in_l_ab() {
        let (l, names) = l_ab();
        let lhs = parse_expr("a1 & (b1 | b2)", &names).unwrap();
        let rhs = parse_expr("(a1 & b1) | (a1 & b2)", &names).unwrap();
        assert_eq!(l.eval(&lhs).unwrap(), Some(names["a1"]));
        assert_eq!(l.eval(&rhs).unwrap(), Some(ElementSet::EMPTY));
        assert_eq!(
            find_nondistributive_witness(&l),
            Some((names["a1"], names["b1"], names["b2"]))
        );
    }

    #[test]
    fn complement_and_unicode_operators() {
        let (l, names) = l_ab();
        let e = parse_expr("a1' ∧ ~b2", &names).unwrap();
        // a2 ∧ b1 = {3} is not in the logic; the greatest lower bound is ∅.
        assert_eq!(l.eval(&e).unwrap(), Some(ElementSet::EMPTY));
        assert_eq!(l.eval(&parse_expr("a1 ∨ a2", &names).unwrap()).unwrap(), Some(names["S"]));
    }

    #[test]
    fn join_is_undefined_without_least_upper_bound() {
        // Three blocks over {1..4}.
        let l = SetLogic::from_partitions(
            4,
            &[
                vec![vec![0], vec![1], vec![2, 3]],
                vec![vec![0], vec![1, 2], vec![3]],
                vec![vec![0, 1, 3], vec![2]],
            ],
        )
        .unwrap();
        let one = ElementSet::from_indices(&[0], 4).unwrap();
        let two = ElementSet::from_indices(&[1], 4).unwrap();
        assert!(l.contains(ElementSet::from_indices(&[0, 1], 4).unwrap()));
        assert_eq!(l.join(one, two), ElementSet::from_indices(&[0, 1], 4).ok());
        let three = ElementSet::from_indices(&[2], 4).unwrap();
        // {1} ∨ {3} has two minimal upper bounds, {1,2,3} and {1,3,4}.
        assert_eq!(l.join(one, three), None);
        assert_eq!(
            l.eval(&Expr::join(Expr::Element(one), Expr::Element(three))).unwrap(),
            None
        );
    }

    #[test]
    fn malformed_expressions_are_rejected() {
        let (_, names) = l_ab();
        assert!(matches!(parse_expr("a1 &", &names), Err(LogicError::Parse { .. })));
        assert!(matches!(parse_expr("(a1 | b1", &names), Err(LogicError::Parse { .. })));
        assert!(matches!(parse_expr("a1 b1", &names), Err(LogicError::Parse { .. })));
        assert!(matches!(parse_expr("c7", &names), Err(LogicError::UnknownElement(_))));
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let (l, _) = l_ab();
        let one = ElementSet::from_one_based(&[1], 4).unwrap();
        assert!(l.eval(&Expr::Element(one)).is_err());
    }

    #[test]
    fn single_boolean_block_is_distributive() {
        for n in 1..=4 {
            let singletons: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
            let l = SetLogic::from_partitions(n, &[singletons]).unwrap();
            assert_eq!(l.elements().len(), 1 << n);
            assert_eq!(find_nondistributive_witness(&l), None);
        }
    }

    #[test]
    fn bad_partitions() {
        assert!(SetLogic::from_partitions(3, &[vec![vec![0, 1], vec![1, 2]]]).is_err());
        assert!(SetLogic::from_partitions(3, &[vec![vec![0, 1]]]).is_err());
        assert!(SetLogic::from_partitions(200, &[]).is_err());
        assert!(ElementSet::from_indices(&[0], 200).is_err());
    }

    #[test]
    fn display_is_one_based() {
        let e = ElementSet::from_indices(&[0, 1], 4).unwrap();
        assert_eq!(e.to_string(), "{1,2}");
        assert_eq!(serde_json::to_string(&e).unwrap(), "[1,2]");
    }
}
