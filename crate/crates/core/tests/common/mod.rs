//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the contraction code under test: tensors are read
//! through `get` and every sum is an explicit loop.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use num::{Integer, Zero};
use proptest::prelude::*;
use tqft2d::{
    BoundaryCircle, ConnectedSurface, LabeledTensor, Orientation, Rational, Scalar, SignedIndex,
    Surface, TqftData,
};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    q(n, 1)
}

/// Every multi-index of the given rank, last position fastest.
pub fn assignments(dim: usize, rank: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..dim).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

/// Contraction by summing over a value for every label at once. Paired
/// labels share one summation variable; the result lists the free labels of
/// `a`, then those of `b`.
pub fn oracle_contract<S: Scalar>(
    a: &LabeledTensor<S>,
    b: &LabeledTensor<S>,
    pairs: &[(&str, &str)],
) -> (Vec<String>, BTreeMap<Vec<usize>, S>) {
    let dim = a.dim().max(b.dim());
    let rename: BTreeMap<&str, &str> = pairs.iter().flat_map(|&(x, y)| [(y, x)]).collect();
    let var = |l: &str| rename.get(l).copied().unwrap_or(l).to_owned();
    let paired: BTreeSet<&str> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
    let free: Vec<String> = a
        .labels()
        .into_iter()
        .chain(b.labels())
        .filter(|l| !paired.contains(l))
        .map(str::to_owned)
        .collect();
    let vars: Vec<String> = a
        .labels()
        .into_iter()
        .chain(b.labels())
        .map(var)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out: BTreeMap<Vec<usize>, S> = assignments(dim, free.len())
        .into_iter()
        .map(|ix| (ix, S::zero()))
        .collect();
    for values in assignments(dim, vars.len()) {
        let value_of = |l: &str| values[vars.iter().position(|v| *v == var(l)).unwrap()];
        let ia: Vec<usize> = a.labels().iter().map(|l| value_of(l)).collect();
        let ib: Vec<usize> = b.labels().iter().map(|l| value_of(l)).collect();
        let key: Vec<usize> = free.iter().map(|l| value_of(l)).collect();
        let term = a.get(&ia).clone() * b.get(&ib).clone();
        let slot = out.get_mut(&key).unwrap();
        *slot = slot.clone() + term;
    }
    (free, out)
}

/// Compares a tensor against oracle output keyed by the oracle's label order.
pub fn matches_oracle<S: Scalar>(
    t: &LabeledTensor<S>,
    labels: &[String],
    values: &BTreeMap<Vec<usize>, S>,
) -> bool {
    let mine = t.labels();
    if mine.len() != labels.len() {
        return false;
    }
    let pos: Vec<usize> = match labels
        .iter()
        .map(|l| mine.iter().position(|m| m == l))
        .collect::<Option<Vec<_>>>()
    {
        Some(p) => p,
        None => return false,
    };
    values.iter().all(|(key, v)| {
        let mut ix = vec![0; key.len()];
        for (k, &p) in pos.iter().enumerate() {
            ix[p] = key[k];
        }
        t.get(&ix) == v
    })
}

/// Disk, sphere, annulus and torus values straight from the defining sums.
pub struct Table {
    pub sphere: Rational,
    pub disk: Vec<Rational>,
    pub annulus: Vec<Vec<Rational>>,
    pub torus: Rational,
}

pub fn table_oracle(d: &[Rational], p: &dyn Fn(usize, usize, usize) -> Rational) -> Table {
    let n = d.len();
    let mut sphere = Rational::zero();
    for i in 0..n {
        sphere += &d[i] * &d[i];
    }
    let mut annulus = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                annulus[i][j] += &d[k] * p(k, i, j);
            }
        }
    }
    let mut torus = Rational::zero();
    for k in 0..n {
        for i in 0..n {
            torus += &d[k] * p(k, i, i);
        }
    }
    Table {
        sphere,
        disk: d.to_vec(),
        annulus,
        torus,
    }
}

/// The closed genus-`g` invariant by summing over every labelling of the
/// cutting curves of a fixed layout: handles `a_1..a_g` on a spine
/// `s_1..s_{g-1}`, middle handles attached through `b_i`.
pub fn closed_oracle<S: Scalar>(data: &TqftData<S>, genus: u32) -> S {
    let n = data.dim();
    let mut total = S::zero();
    match genus {
        0 => {
            for i in 0..n {
                total = total + data.d_at(i).clone() * data.d_at(i).clone();
            }
        }
        1 => {
            for k in 0..n {
                for i in 0..n {
                    total = total + data.d_at(k).clone() * data.p_at(k, i, i).clone();
                }
            }
        }
        g => {
            let g = g as usize;
            // curve numbering: a_i = i-1, s_i = g + i - 1, b_i = 2g - 1 + (i - 2)
            let a = |i: usize| i - 1;
            let s = |i: usize| g + i - 1;
            let b = |i: usize| 2 * g - 1 + (i - 2);
            let mut pants = vec![[a(1), a(1), s(1)], [a(g), a(g), s(g - 1)]];
            for i in 2..g {
                pants.push([s(i - 1), b(i), s(i)]);
                pants.push([b(i), a(i), a(i)]);
            }
            let curves = 3 * g - 3;
            for values in assignments(n, curves) {
                let mut term = S::one();
                for [x, y, z] in &pants {
                    term = term * data.p_at(values[*x], values[*y], values[*z]).clone();
                }
                total = total + term;
            }
        }
    }
    total
}

/// `Σ_i t_i^(2-2g)` for the diagonal family.
pub fn diagonal_closed_form(t: &[Rational], genus: u32) -> Rational {
    let e = 2 - 2 * i32::try_from(genus).unwrap();
    t.iter().map(|x| x.pow(e)).sum()
}

/// Diagonal data in the basis rotated by the rows of `o`, which must be
/// orthogonal: `d'_a = Σ_i o_ai t_i`, `p'_abc = Σ_i o_ai o_bi o_ci / t_i`.
pub fn rotated_family(t: &[Rational], o: &[Vec<Rational>]) -> TqftData<Rational> {
    let n = t.len();
    TqftData::from_fns(
        n,
        |a| (0..n).map(|i| &o[a][i] * &t[i]).sum(),
        |a, b, c| (0..n).map(|i| &o[a][i] * &o[b][i] * &o[c][i] / &t[i]).sum(),
    )
    .unwrap()
}

pub fn rotation2() -> Vec<Vec<Rational>> {
    vec![vec![q(3, 5), q(4, 5)], vec![q(-4, 5), q(3, 5)]]
}

pub fn rotation3() -> Vec<Vec<Rational>> {
    let r = |a: i64, b: i64, c: i64| vec![q(a, 3), q(b, 3), q(c, 3)];
    vec![r(1, 2, 2), r(2, 1, -2), r(2, -2, 1)]
}

/// Reduced `(numerator, denominator)` pairs `(d, p)` with both parts of
/// height at most `h` satisfying `d² p = d` and `d p² = p`, found by
/// enumerating integer quadruples.
pub fn brute_force_dim1(h: i64) -> BTreeSet<((i64, i64), (i64, i64))> {
    let reduce = |a: i64, b: i64| {
        let g = a.gcd(&b);
        (a / g, b / g)
    };
    let mut out = BTreeSet::new();
    for a in -h..=h {
        for b in 1..=h {
            for c in -h..=h {
                for e in 1..=h {
                    // d = a/b, p = c/e
                    let r3 = a * a * c * b == a * b * b * e;
                    let r4 = a * c * c * e == c * b * e * e;
                    if r3 && r4 {
                        out.insert((reduce(a, b), reduce(c, e)));
                    }
                }
            }
        }
    }
    out
}

pub fn euler_oracle(s: &Surface) -> i64 {
    s.components
        .iter()
        .map(|c| 2 - 2 * i64::from(c.genus) - c.boundary.len() as i64)
        .sum()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::Plus), Just(Orientation::Minus)]
}

/// Surfaces with up to `components` components of genus ≤ 2 and up to three
/// circles each, labelled `c0, c1, ...`.
pub fn surface(components: usize) -> impl Strategy<Value = Surface> {
    prop::collection::vec(
        (
            0u32..=2,
            orientation(),
            prop::collection::vec(orientation(), 0..=3),
        ),
        1..=components,
    )
    .prop_map(|parts| {
        let mut next = 0;
        let comps = parts
            .into_iter()
            .map(|(genus, o, circles)| {
                let boundary = circles
                    .into_iter()
                    .map(|co| {
                        next += 1;
                        BoundaryCircle::new(format!("c{}", next - 1), co)
                    })
                    .collect();
                ConnectedSurface::new(genus, o, boundary)
            })
            .collect();
        Surface::new(comps).unwrap()
    })
}

/// A tensor of the given dimension whose labels are `prefix0, prefix1, ...`.
pub fn tensor(
    dim: usize,
    rank: usize,
    prefix: &'static str,
) -> impl Strategy<Value = LabeledTensor<Rational>> {
    (
        prop::collection::vec(orientation(), rank),
        prop::collection::vec(small_rational(), dim.pow(rank as u32)),
    )
        .prop_map(move |(signs, entries)| {
            let indices = signs
                .into_iter()
                .enumerate()
                .map(|(k, s)| SignedIndex::new(format!("{prefix}{k}"), s))
                .collect();
            LabeledTensor::new(dim, indices, entries).unwrap()
        })
}
