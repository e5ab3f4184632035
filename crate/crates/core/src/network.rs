//! Contraction of tensor networks.
//!
//! A network is a list of tensors plus pairs of index labels to be joined.
//! The greedy order always performs the merge whose result has the smallest
//! rank; every order yields the same tensor up to index order.

use std::collections::{HashMap, HashSet};

use crate::scalar::Scalar;
use crate::tensor::{LabeledTensor, TensorError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ContractionOrder {
    /// Smallest intermediate rank first.
    #[default]
    Greedy,
    /// Absorb the tensors left to right.
    Sequential,
}

#[derive(Clone, Debug)]
pub struct Network<S> {
    tensors: Vec<LabeledTensor<S>>,
    pairs: Vec<(String, String)>,
}

impl<S: Scalar> Network<S> {
    /// Checks that labels are unique across the network and that each pair
    /// joins two existing indices of opposite sign.
    pub fn new(
        tensors: Vec<LabeledTensor<S>>,
        pairs: Vec<(String, String)>,
    ) -> Result<Self, TensorError> {
        let mut signs = HashMap::new();
        for t in &tensors {
            for idx in t.indices() {
                if signs.insert(idx.label.as_str(), idx.sign).is_some() {
                    return Err(TensorError::DuplicateLabel(idx.label.clone()));
                }
            }
        }
        let mut used = HashSet::new();
        for (a, b) in &pairs {
            let sa = signs
                .get(a.as_str())
                .ok_or_else(|| TensorError::MissingLabel(a.clone()))?;
            let sb = signs
                .get(b.as_str())
                .ok_or_else(|| TensorError::MissingLabel(b.clone()))?;
            if sa == sb || a == b {
                return Err(TensorError::OrientationMismatch(a.clone(), b.clone()));
            }
            for l in [a, b] {
                if !used.insert(l.as_str()) {
                    return Err(TensorError::DuplicateLabel(l.clone()));
                }
            }
        }
        Ok(Network { tensors, pairs })
    }

    pub fn tensors(&self) -> &[LabeledTensor<S>] {
        &self.tensors
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    /// Labels left open after contraction, in network order.
    pub fn open_labels(&self) -> Vec<&str> {
        let paired: HashSet<&str> = self
            .pairs
            .iter()
            .flat_map(|(a, b)| [a.as_str(), b.as_str()])
            .collect();
        self.tensors
            .iter()
            .flat_map(|t| t.labels())
            .filter(|l| !paired.contains(l))
            .collect()
    }

    /// Contracts every pair. Open indices come out in network order.
    pub fn contract(&self, order: ContractionOrder) -> Result<LabeledTensor<S>, TensorError> {
        let raw = match order {
            ContractionOrder::Greedy => self.contract_greedy()?,
            ContractionOrder::Sequential => self.contract_sequential()?,
        };
        raw.reorder(&self.open_labels())
    }

    fn contract_greedy(&self) -> Result<LabeledTensor<S>, TensorError> {
        let mut nodes: Vec<Option<LabeledTensor<S>>> =
            self.tensors.iter().cloned().map(Some).collect();
        let mut owner: HashMap<String, usize> = HashMap::new();
        for (n, t) in self.tensors.iter().enumerate() {
            for l in t.labels() {
                owner.insert(l.to_owned(), n);
            }
        }
        let mut pending = self.pairs.clone();

        loop {
            // Traces within a single tensor never increase rank.
            let mut i = 0;
            while i < pending.len() {
                let (a, b) = &pending[i];
                if owner[a] == owner[b] {
                    let n = owner[a];
                    let t = nodes[n].take().expect("live node");
                    nodes[n] = Some(t.contract(a, b)?);
                    pending.swap_remove(i);
                } else {
                    i += 1;
                }
            }
            if pending.is_empty() {
                break;
            }

            let mut shared: HashMap<(usize, usize), usize> = HashMap::new();
            for (a, b) in &pending {
                let (x, y) = (owner[a], owner[b]);
                *shared.entry((x.min(y), x.max(y))).or_default() += 1;
            }
            let rank = |n: usize| nodes[n].as_ref().map_or(0, LabeledTensor::rank);
            let (&(x, y), _) = shared
                .iter()
                .min_by_key(|(&(x, y), &k)| (rank(x) + rank(y) - 2 * k, x, y))
                .expect("pending pairs remain");

            let left = nodes[x].take().expect("live node");
            let right = nodes[y].take().expect("live node");
            let mut joined = Vec::new();
            pending.retain(|(a, b)| {
                let (oa, ob) = (owner[a], owner[b]);
                if oa == x && ob == y {
                    joined.push((a.clone(), b.clone()));
                    false
                } else if oa == y && ob == x {
                    joined.push((b.clone(), a.clone()));
                    false
                } else {
                    true
                }
            });
            let refs: Vec<(&str, &str)> = joined
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            let merged = left.contract_with(&right, &refs)?;
            for l in merged.labels() {
                owner.insert(l.to_owned(), x);
            }
            nodes[x] = Some(merged);
        }

        let mut result = LabeledTensor::scalar(S::one());
        for t in nodes.into_iter().flatten() {
            result = result.tensor_product(&t)?;
        }
        Ok(result)
    }

    fn contract_sequential(&self) -> Result<LabeledTensor<S>, TensorError> {
        let mut acc = LabeledTensor::scalar(S::one());
        let mut pending = self.pairs.clone();
        for t in &self.tensors {
            let mut joined = Vec::new();
            pending.retain(|(a, b)| {
                match (
                    acc.position(a).is_some(),
                    t.position(b).is_some(),
                    acc.position(b).is_some(),
                    t.position(a).is_some(),
                ) {
                    (true, true, _, _) => {
                        joined.push((a.clone(), b.clone()));
                        false
                    }
                    (_, _, true, true) => {
                        joined.push((b.clone(), a.clone()));
                        false
                    }
                    _ => true,
                }
            });
            let refs: Vec<(&str, &str)> = joined
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            acc = acc.contract_with(t, &refs)?;
            let mut i = 0;
            while i < pending.len() {
                let (a, b) = &pending[i];
                if acc.position(a).is_some() && acc.position(b).is_some() {
                    acc = acc.contract(a, b)?;
                    pending.swap_remove(i);
                } else {
                    i += 1;
                }
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::tensor::SignedIndex;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(a: [[i64; 2]; 2], i: SignedIndex, j: SignedIndex) -> LabeledTensor<Rational> {
        LabeledTensor::from_fn(2, vec![i, j], |ix| q(a[ix[0]][ix[1]])).unwrap()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_owned(), b.to_owned())
    }

    #[test]
    fn matrix_chain() {
        // A·B·C with A=[[1,2],[3,4]], B=[[0,1],[1,0]], C=[[2,0],[0,3]]
        let a = mat(
            [[1, 2], [3, 4]],
            SignedIndex::plus("i"),
            SignedIndex::plus("x"),
        );
        let b = mat(
            [[0, 1], [1, 0]],
            SignedIndex::minus("x2"),
            SignedIndex::plus("y"),
        );
        let c = mat(
            [[2, 0], [0, 3]],
            SignedIndex::minus("y2"),
            SignedIndex::plus("j"),
        );
        let net = Network::new(vec![a, b, c], vec![pair("x", "x2"), pair("y", "y2")]).unwrap();
        // A·B = [[2,1],[4,3]], then ·C = [[4,3],[8,9]]
        let expected = mat(
            [[4, 3], [8, 9]],
            SignedIndex::plus("i"),
            SignedIndex::plus("j"),
        );
        assert_eq!(net.contract(ContractionOrder::Greedy).unwrap(), expected);
        assert_eq!(
            net.contract(ContractionOrder::Sequential).unwrap(),
            expected
        );
    }

    #[test]
    fn closed_loop_is_a_trace() {
        let a = mat(
            [[1, 2], [3, 4]],
            SignedIndex::plus("i"),
            SignedIndex::minus("j"),
        );
        let net = Network::new(vec![a], vec![pair("j", "i")]).unwrap();
        assert_eq!(
            net.contract(ContractionOrder::Greedy).unwrap().as_scalar(),
            Some(&q(5))
        );
    }

    #[test]
    fn disconnected_parts_multiply() {
        let a = LabeledTensor::new(2, vec![SignedIndex::plus("a")], vec![q(1), q(2)]).unwrap();
        let b = LabeledTensor::new(2, vec![SignedIndex::plus("b")], vec![q(3), q(5)]).unwrap();
        let net = Network::new(vec![a.clone(), b.clone()], vec![]).unwrap();
        assert_eq!(
            net.contract(ContractionOrder::Greedy).unwrap(),
            a.tensor_product(&b).unwrap()
        );
        let empty = Network::<Rational>::new(vec![], vec![]).unwrap();
        assert_eq!(
            empty
                .contract(ContractionOrder::Greedy)
                .unwrap()
                .as_scalar(),
            Some(&q(1))
        );
    }

    #[test]
    fn network_checks() {
        let a = LabeledTensor::new(2, vec![SignedIndex::plus("a")], vec![q(1), q(2)]).unwrap();
        let b = LabeledTensor::new(2, vec![SignedIndex::plus("b")], vec![q(3), q(5)]).unwrap();
        assert!(matches!(
            Network::new(vec![a.clone(), b.clone()], vec![pair("a", "b")]),
            Err(TensorError::OrientationMismatch(..))
        ));
        assert!(matches!(
            Network::new(vec![a.clone(), a.clone()], vec![]),
            Err(TensorError::DuplicateLabel(..))
        ));
        assert!(matches!(
            Network::new(vec![a], vec![pair("a", "z")]),
            Err(TensorError::MissingLabel(..))
        ));
    }
}
