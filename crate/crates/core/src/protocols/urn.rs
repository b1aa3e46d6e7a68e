use std::collections::BTreeSet;

use serde::Serialize;

use super::ProtocolError;
use crate::logic::{ball_types, build_partition_logic, BallType, OrthoLogic};
use crate::realization::catalog;

const WEIGHT_TOLERANCE: f64 = 1e-12;

fn check_weights(weights: &[f64], what: fn(String) -> ProtocolError) -> Result<(), ProtocolError> {
    if weights.iter().any(|&w| !w.is_finite() || w <= 0.0) {
        return Err(what("weights must be positive".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(what(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

fn uniform(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// A generalized urn: ball types (one symbol per color) with draw weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UrnModel {
    ball_types: Vec<BallType>,
    weights: Vec<f64>,
}

impl UrnModel {
    pub fn new(ball_types: Vec<BallType>, weights: Vec<f64>) -> Result<Self, ProtocolError> {
        let colors = ball_types
            .first()
            .ok_or_else(|| ProtocolError::Urn("no ball types".into()))?
            .colors();
        if colors == 0 || ball_types.iter().any(|b| b.colors() != colors) {
            return Err(ProtocolError::Urn(
                "ball types must all carry the same positive number of colors".into(),
            ));
        }
        if ball_types.iter().flat_map(|b| &b.0).any(|&s| s > u8::MAX as usize) {
            return Err(ProtocolError::Urn("symbols must fit in a byte".into()));
        }
        if ball_types.iter().collect::<BTreeSet<_>>().len() != ball_types.len() {
            return Err(ProtocolError::Urn("ball types must be distinct".into()));
        }
        if weights.len() != ball_types.len() {
            return Err(ProtocolError::Urn("one weight per ball type".into()));
        }
        check_weights(&weights, ProtocolError::Urn)?;
        Ok(UrnModel { ball_types, weights })
    }

    pub fn uniform(ball_types: Vec<BallType>) -> Result<Self, ProtocolError> {
        let w = uniform(ball_types.len());
        UrnModel::new(ball_types, w)
    }

    /// The uniform urn over the ball types of a logic's partition logic.
    pub fn from_logic(logic: &OrthoLogic) -> Result<Self, ProtocolError> {
        let pl = build_partition_logic(logic)?;
        UrnModel::uniform(ball_types(&pl))
    }

    /// Four ball types with two colors, `00, 01, 10, 11`: the urn of the
    /// two-block logic `L_AB`.
    pub fn bb84() -> Self {
        let logic = catalog("L_AB").expect("L_AB is in the catalog").logic;
        UrnModel::from_logic(&logic).expect("L_AB has a unital state set")
    }

    pub fn ball_types(&self) -> &[BallType] {
        &self.ball_types
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn colors(&self) -> usize {
        self.ball_types[0].colors()
    }
}

/// A classical "singlet": weighted pairs of balls, one for each party.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairSource {
    pairs: Vec<(BallType, BallType)>,
    weights: Vec<f64>,
}

impl PairSource {
    pub fn new(pairs: Vec<(BallType, BallType)>, weights: Vec<f64>) -> Result<Self, ProtocolError> {
        let colors = pairs
            .first()
            .ok_or_else(|| ProtocolError::PairSource("no pairs".into()))?
            .0
            .colors();
        if colors == 0
            || pairs
                .iter()
                .any(|(l, r)| l.colors() != colors || r.colors() != colors)
        {
            return Err(ProtocolError::PairSource(
                "all balls must carry the same positive number of colors".into(),
            ));
        }
        if weights.len() != pairs.len() {
            return Err(ProtocolError::PairSource("one weight per pair".into()));
        }
        check_weights(&weights, ProtocolError::PairSource)?;
        Ok(PairSource { pairs, weights })
    }

    /// The four two-color pairs whose balls differ in every color,
    /// `00-11, 01-10, 10-01, 11-00`, drawn uniformly.
    pub fn anti_correlated() -> Self {
        PairSource::binary(|s| 1 - s)
    }

    /// The four two-color pairs of identical balls, drawn uniformly.
    pub fn correlated() -> Self {
        PairSource::binary(|s| s)
    }

    fn binary(partner: fn(usize) -> usize) -> Self {
        let pairs: Vec<_> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .into_iter()
            .map(|b| {
                (
                    BallType(b.to_vec()),
                    BallType(b.iter().map(|&s| partner(s)).collect()),
                )
            })
            .collect();
        PairSource::new(pairs, uniform(4)).expect("valid by construction")
    }

    pub fn pairs(&self) -> &[(BallType, BallType)] {
        &self.pairs
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn colors(&self) -> usize {
        self.pairs[0].0.colors()
    }

    /// Largest symbol appearing on any ball, plus one.
    pub fn alphabet(&self) -> usize {
        self.pairs
            .iter()
            .flat_map(|(l, r)| l.0.iter().chain(&r.0))
            .max()
            .map_or(0, |m| m + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(s: &[usize]) -> BallType {
        BallType(s.to_vec())
    }

    #[test]
    fn bb84_urn_has_all_four_two_color_balls() {
        let urn = UrnModel::bb84();
        let got: Vec<String> = urn.ball_types().iter().map(ToString::to_string).collect();
        assert_eq!(got, ["00", "01", "10", "11"]);
        assert_eq!(urn.colors(), 2);
        assert_eq!(urn.weights(), [0.25; 4]);
    }

    #[test]
    fn urn_validation() {
        assert!(UrnModel::uniform(vec![]).is_err());
        assert!(UrnModel::uniform(vec![ball(&[0, 1]), ball(&[0, 1])]).is_err());
        assert!(UrnModel::uniform(vec![ball(&[0, 1]), ball(&[0])]).is_err());
        assert!(UrnModel::new(vec![ball(&[0]), ball(&[1])], vec![0.5, 0.6]).is_err());
        assert!(UrnModel::new(vec![ball(&[0]), ball(&[1])], vec![1.0, 0.0]).is_err());
        assert!(UrnModel::new(vec![ball(&[0]), ball(&[1])], vec![0.3, 0.7]).is_ok());
    }

    #[test]
    fn anti_correlated_pairs_differ_in_every_color() {
        let src = PairSource::anti_correlated();
        for (l, r) in src.pairs() {
            assert!(l.0.iter().zip(&r.0).all(|(a, b)| a != b));
        }
        for (l, r) in PairSource::correlated().pairs() {
            assert_eq!(l, r);
        }
        assert_eq!(src.alphabet(), 2);
    }

    #[test]
    fn pair_source_validation() {
        assert!(PairSource::new(vec![], vec![]).is_err());
        assert!(PairSource::new(vec![(ball(&[0]), ball(&[0, 1]))], vec![1.0]).is_err());
        assert!(PairSource::new(vec![(ball(&[0]), ball(&[1]))], vec![0.9]).is_err());
    }
}
