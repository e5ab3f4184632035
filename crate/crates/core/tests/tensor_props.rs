mod common;

use common::{matches_oracle, oracle_contract, orientation, tensor};
use proptest::prelude::*;
use tqft2d::{
    Complex, ContractionOrder, LabeledTensor, Network, Permutation, Rational, SignedIndex,
};

/// Two tensors plus `k` legal pairs joining `a{i}` to `b{i}` for `i < k`.
fn contractible() -> impl Strategy<Value = (LabeledTensor<Rational>, LabeledTensor<Rational>, usize)>
{
    (1usize..=3, 0usize..=3, 0usize..=3)
        .prop_flat_map(|(dim, ra, rb)| (tensor(dim, ra, "a"), tensor(dim, rb, "b"), 0..=ra.min(rb)))
        .prop_map(|(a, b, k)| {
            let mut indices = b.indices().to_vec();
            for (i, idx) in indices.iter_mut().enumerate().take(k) {
                idx.sign = -a.indices()[i].sign;
            }
            let b = b.with_indices(indices).unwrap();
            (a, b, k)
        })
}

fn pair_names(k: usize) -> Vec<(String, String)> {
    (0..k).map(|i| (format!("a{i}"), format!("b{i}"))).collect()
}

fn refs(pairs: &[(String, String)]) -> Vec<(&str, &str)> {
    pairs
        .iter()
        .map(|(x, y)| (x.as_str(), y.as_str()))
        .collect()
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn complex_tensor(dim: usize, rank: usize) -> impl Strategy<Value = LabeledTensor<Complex>> {
    (
        prop::collection::vec(orientation(), rank),
        prop::collection::vec((-3i32..=3, -3i32..=3), dim.pow(rank as u32)),
    )
        .prop_map(move |(signs, entries)| {
            let indices = signs
                .into_iter()
                .enumerate()
                .map(|(k, s)| SignedIndex::new(format!("z{k}"), s))
                .collect();
            let entries = entries
                .into_iter()
                .map(|(re, im)| Complex::new(re.into(), im.into()))
                .collect();
            LabeledTensor::new(dim, indices, entries).unwrap()
        })
}

proptest! {
    #[test]
    fn contraction_matches_index_loops((a, b, k) in contractible()) {
        let pairs = pair_names(k);
        let got = a.contract_with(&b, &refs(&pairs)).unwrap();
        let (labels, values) = oracle_contract(&a, &b, &refs(&pairs));
        prop_assert_eq!(got.labels(), labels.iter().map(String::as_str).collect::<Vec<_>>());
        prop_assert!(matches_oracle(&got, &labels, &values));
    }

    #[test]
    fn contraction_ignores_pair_order_and_side((a, b, k) in contractible()) {
        let pairs = pair_names(k);
        let forward = a.contract_with(&b, &refs(&pairs)).unwrap();
        let mut reversed = pairs.clone();
        reversed.reverse();
        prop_assert_eq!(&forward, &a.contract_with(&b, &refs(&reversed)).unwrap());
        let swapped: Vec<(String, String)> = pairs.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        let other_side = b.contract_with(&a, &refs(&swapped)).unwrap();
        prop_assert_eq!(forward.sorted_by_label(), other_side.sorted_by_label());
    }

    #[test]
    fn network_orders_agree((a, b, k) in contractible()) {
        let net = Network::new(vec![a.clone(), b.clone()], pair_names(k)).unwrap();
        let greedy = net.contract(ContractionOrder::Greedy).unwrap();
        let sequential = net.contract(ContractionOrder::Sequential).unwrap();
        prop_assert_eq!(&greedy, &sequential);
        prop_assert_eq!(greedy, a.contract_with(&b, &refs(&pair_names(k))).unwrap());
    }

    #[test]
    fn flip_and_conjugate_commute(t in (1usize..=3, 0usize..=3).prop_flat_map(|(d, r)| complex_tensor(d, r))) {
        prop_assert_eq!(t.flip_signs().conjugate_entries(), t.conjugate_entries().flip_signs());
        prop_assert_eq!(t.flip_signs().flip_signs(), t.clone());
        prop_assert_eq!(t.conjugate_entries().conjugate_entries(), t);
    }

    #[test]
    fn permutations_act_as_a_group(
        (t, p, r) in (1usize..=3, 0usize..=4)
            .prop_flat_map(|(d, n)| (tensor(d, n, "x"), permutation(n), permutation(n)))
    ) {
        let stepwise = t.permute_indices(&p).unwrap().permute_indices(&r).unwrap();
        prop_assert_eq!(&stepwise, &t.permute_indices(&p.then(&r).unwrap()).unwrap());
        prop_assert_eq!(&t.permute_indices(&p).unwrap().permute_indices(&p.inverse()).unwrap(), &t);
        prop_assert_eq!(&t.permute_indices(&Permutation::identity(t.rank())).unwrap(), &t);
        // Entries move with their labels.
        prop_assert_eq!(stepwise.sorted_by_label(), t.sorted_by_label());
    }

    #[test]
    fn literal_round_trip(t in (1usize..=3, 0usize..=3).prop_flat_map(|(d, r)| tensor(d, r, "k"))) {
        let back: LabeledTensor<Rational> = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }
}

#[test]
fn trace_of_identity_is_the_dimension() {
    for dim in 1..=4 {
        let id = LabeledTensor::<Rational>::from_fn(
            dim,
            vec![SignedIndex::plus("i"), SignedIndex::minus("j")],
            |ix| common::int(i64::from(ix[0] == ix[1])),
        )
        .unwrap();
        assert_eq!(
            id.contract("i", "j").unwrap().as_scalar(),
            Some(&common::int(dim as i64))
        );
    }
}
