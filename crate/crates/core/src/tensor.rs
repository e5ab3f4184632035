//! Dense tensors with labelled, signed indices.
//!
//! A `+` index is a factor `V` and a `-` index a factor `V̄` with the same basis.
//! The only pairing is the Kronecker one: contracting a `+` index against a `-`
//! index sums the diagonal, whichever of the two is named first.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::surface::Orientation;
use crate::text::{self, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedIndex {
    pub label: String,
    pub sign: Orientation,
}

impl SignedIndex {
    pub fn new(label: impl Into<String>, sign: Orientation) -> Self {
        SignedIndex {
            label: label.into(),
            sign,
        }
    }

    pub fn plus(label: impl Into<String>) -> Self {
        Self::new(label, Orientation::Plus)
    }

    pub fn minus(label: impl Into<String>) -> Self {
        Self::new(label, Orientation::Minus)
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign, self.label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("label {0} appears twice")]
    DuplicateLabel(String),
    #[error("label {0} appears in both tensors")]
    LabelCollision(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("no index labelled {0}")]
    MissingLabel(String),
    #[error("indices {0} and {1} have the same sign")]
    OrientationMismatch(String, String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

/// A permutation of index positions. Position `k` of the result takes the
/// index at position `self[k]` of the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, TensorError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(TensorError::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Exchanges positions `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Result<Self, TensorError> {
        let mut v: Vec<usize> = (0..n).collect();
        if i >= n || j >= n {
            return Err(TensorError::InvalidPermutation(format!(
                "swap {i} {j} of {n}"
            )));
        }
        v.swap(i, j);
        Ok(Permutation(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// The permutation equal to applying `self` and then `next`.
    pub fn then(&self, next: &Permutation) -> Result<Permutation, TensorError> {
        if self.len() != next.len() {
            return Err(TensorError::InvalidPermutation(format!(
                "composing sizes {} and {}",
                self.len(),
                next.len()
            )));
        }
        Ok(Permutation(next.0.iter().map(|&k| self.0[k]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &i) in self.0.iter().enumerate() {
            inv[i] = k;
        }
        Permutation(inv)
    }
}

/// A tensor over `dim`-dimensional factors, stored row-major.
/// Equality ignores the dimension of rank-0 tensors.
#[derive(Clone, Debug)]
pub struct LabeledTensor<S> {
    dim: usize,
    indices: Vec<SignedIndex>,
    entries: Vec<S>,
}

impl<S: PartialEq> PartialEq for LabeledTensor<S> {
    fn eq(&self, other: &Self) -> bool {
        self.indices == other.indices
            && (self.indices.is_empty() || self.dim == other.dim)
            && self.entries == other.entries
    }
}

fn strides(dim: usize, rank: usize) -> Vec<usize> {
    let mut s = vec![1; rank];
    for k in (0..rank.saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dim;
    }
    s
}

/// All offsets `Σ x_m·strides[m]`, first stride most significant.
fn offsets(dim: usize, strides: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for &stride in strides {
        out = out
            .iter()
            .flat_map(|&o| (0..dim).map(move |x| o + x * stride))
            .collect();
    }
    out
}

fn multi_index(mut flat: usize, dim: usize, rank: usize) -> Vec<usize> {
    let mut idx = vec![0; rank];
    for k in (0..rank).rev() {
        idx[k] = flat % dim;
        flat /= dim;
    }
    idx
}

impl<S: Scalar> LabeledTensor<S> {
    pub fn new(
        dim: usize,
        indices: Vec<SignedIndex>,
        entries: Vec<S>,
    ) -> Result<Self, TensorError> {
        if dim == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let mut seen = HashSet::new();
        for idx in &indices {
            if !seen.insert(idx.label.as_str()) {
                return Err(TensorError::DuplicateLabel(idx.label.clone()));
            }
        }
        let expected = dim.pow(indices.len() as u32);
        if entries.len() != expected {
            return Err(TensorError::EntryCount {
                expected,
                found: entries.len(),
            });
        }
        Ok(LabeledTensor {
            dim,
            indices,
            entries,
        })
    }

    /// Builds a tensor from a function of the multi-index.
    pub fn from_fn(
        dim: usize,
        indices: Vec<SignedIndex>,
        mut f: impl FnMut(&[usize]) -> S,
    ) -> Result<Self, TensorError> {
        let rank = indices.len();
        let count = dim.pow(rank as u32);
        let entries = (0..count)
            .map(|flat| f(&multi_index(flat, dim, rank)))
            .collect();
        Self::new(dim, indices, entries)
    }

    pub fn zeros(dim: usize, indices: Vec<SignedIndex>) -> Result<Self, TensorError> {
        Self::from_fn(dim, indices, |_| S::zero())
    }

    /// A rank-0 tensor.
    pub fn scalar(value: S) -> Self {
        LabeledTensor {
            dim: 1,
            indices: Vec::new(),
            entries: vec![value],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[SignedIndex] {
        &self.indices
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices.iter().map(|i| i.label.as_str()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.indices.iter().position(|i| i.label == label)
    }

    fn require(&self, label: &str) -> Result<usize, TensorError> {
        self.position(label)
            .ok_or_else(|| TensorError::MissingLabel(label.to_owned()))
    }

    /// The single entry of a rank-0 tensor.
    pub fn as_scalar(&self) -> Option<&S> {
        if self.indices.is_empty() {
            self.entries.first()
        } else {
            None
        }
    }

    pub fn get(&self, index: &[usize]) -> &S {
        assert_eq!(index.len(), self.rank(), "index has wrong rank");
        let flat = index.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "index {i} out of range");
            acc * self.dim + i
        });
        &self.entries[flat]
    }

    fn compatible_dim(&self, other: &Self) -> Result<usize, TensorError> {
        match (self.rank(), other.rank()) {
            (0, _) => Ok(other.dim),
            (_, 0) => Ok(self.dim),
            _ if self.dim == other.dim => Ok(self.dim),
            _ => Err(TensorError::DimensionMismatch(self.dim, other.dim)),
        }
    }

    /// Outer product; indices of `self` come first.
    pub fn tensor_product(&self, other: &Self) -> Result<Self, TensorError> {
        self.contract_with(other, &[])
    }

    /// Pairs indices of `self` with indices of `other` and sums the diagonal
    /// of each pair. The result carries the remaining indices of `self`
    /// followed by those of `other`.
    pub fn contract_with(&self, other: &Self, pairs: &[(&str, &str)]) -> Result<Self, TensorError> {
        let dim = self.compatible_dim(other)?;
        let mut paired_a = Vec::with_capacity(pairs.len());
        let mut paired_b = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let pa = self.require(a)?;
            let pb = other.require(b)?;
            if self.indices[pa].sign == other.indices[pb].sign {
                return Err(TensorError::OrientationMismatch(a.to_owned(), b.to_owned()));
            }
            if paired_a.contains(&pa) {
                return Err(TensorError::DuplicateLabel(a.to_owned()));
            }
            if paired_b.contains(&pb) {
                return Err(TensorError::DuplicateLabel(b.to_owned()));
            }
            paired_a.push(pa);
            paired_b.push(pb);
        }
        let free_a: Vec<usize> = (0..self.rank()).filter(|p| !paired_a.contains(p)).collect();
        let free_b: Vec<usize> = (0..other.rank())
            .filter(|p| !paired_b.contains(p))
            .collect();
        let kept: HashSet<&str> = free_a
            .iter()
            .map(|&p| self.indices[p].label.as_str())
            .collect();
        if let Some(&p) = free_b
            .iter()
            .find(|&&p| kept.contains(other.indices[p].label.as_str()))
        {
            return Err(TensorError::LabelCollision(other.indices[p].label.clone()));
        }

        let sa = strides(dim, self.rank());
        let sb = strides(dim, other.rank());
        let out_a = offsets(dim, &free_a.iter().map(|&p| sa[p]).collect::<Vec<_>>());
        let out_b = offsets(dim, &free_b.iter().map(|&p| sb[p]).collect::<Vec<_>>());
        let summed: Vec<(usize, usize)> = (0..dim.pow(pairs.len() as u32))
            .map(|flat| {
                let x = multi_index(flat, dim, pairs.len());
                let oa = x.iter().zip(&paired_a).map(|(v, &p)| v * sa[p]).sum();
                let ob = x.iter().zip(&paired_b).map(|(v, &p)| v * sb[p]).sum();
                (oa, ob)
            })
            .collect();

        let mut entries = Vec::with_capacity(out_a.len() * out_b.len());
        for &oa in &out_a {
            for &ob in &out_b {
                let mut acc = S::zero();
                for &(da, db) in &summed {
                    let x = &self.entries[oa + da];
                    let y = &other.entries[ob + db];
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc + x.clone() * y.clone();
                    }
                }
                entries.push(acc);
            }
        }
        let indices = free_a
            .iter()
            .map(|&p| self.indices[p].clone())
            .chain(free_b.iter().map(|&p| other.indices[p].clone()))
            .collect();
        Ok(LabeledTensor {
            dim,
            indices,
            entries,
        })
    }

    /// Traces the indices `a` and `b`, which must carry opposite signs.
    pub fn contract(&self, a: &str, b: &str) -> Result<Self, TensorError> {
        let pa = self.require(a)?;
        let pb = self.require(b)?;
        if pa == pb || self.indices[pa].sign == self.indices[pb].sign {
            return Err(TensorError::OrientationMismatch(a.to_owned(), b.to_owned()));
        }
        let s = strides(self.dim, self.rank());
        let free: Vec<usize> = (0..self.rank()).filter(|&p| p != pa && p != pb).collect();
        let diagonal = s[pa] + s[pb];
        let entries = offsets(self.dim, &free.iter().map(|&p| s[p]).collect::<Vec<_>>())
            .into_iter()
            .map(|base| {
                (0..self.dim).fold(S::zero(), |acc, x| {
                    acc + self.entries[base + x * diagonal].clone()
                })
            })
            .collect();
        Ok(LabeledTensor {
            dim: self.dim,
            indices: free.iter().map(|&p| self.indices[p].clone()).collect(),
            entries,
        })
    }

    pub fn permute_indices(&self, perm: &Permutation) -> Result<Self, TensorError> {
        if perm.len() != self.rank() {
            return Err(TensorError::InvalidPermutation(format!(
                "size {} for rank {}",
                perm.len(),
                self.rank()
            )));
        }
        let s = strides(self.dim, self.rank());
        let moved: Vec<usize> = perm.images().iter().map(|&p| s[p]).collect();
        let entries = offsets(self.dim, &moved)
            .into_iter()
            .map(|o| self.entries[o].clone())
            .collect();
        Ok(LabeledTensor {
            dim: self.dim,
            indices: perm
                .images()
                .iter()
                .map(|&p| self.indices[p].clone())
                .collect(),
            entries,
        })
    }

    /// Reorders the indices to follow `labels`, which must name every index.
    pub fn reorder(&self, labels: &[&str]) -> Result<Self, TensorError> {
        if labels.len() != self.rank() {
            return Err(TensorError::InvalidPermutation(format!(
                "{} labels for rank {}",
                labels.len(),
                self.rank()
            )));
        }
        let images = labels
            .iter()
            .map(|l| self.require(l))
            .collect::<Result<Vec<_>, _>>()?;
        self.permute_indices(&Permutation::new(images)?)
    }

    /// Canonical form: indices sorted by label.
    pub fn sorted_by_label(&self) -> Self {
        let mut labels = self.labels();
        labels.sort_unstable();
        self.reorder(&labels).expect("labels are distinct")
    }

    /// Negates every index sign; entries are unchanged.
    pub fn flip_signs(&self) -> Self {
        let mut out = self.clone();
        for idx in &mut out.indices {
            idx.sign = -idx.sign;
        }
        out
    }

    /// Negates the signs of the named indices only.
    pub fn flip_labels(&self, labels: &[&str]) -> Result<Self, TensorError> {
        let mut out = self.clone();
        for l in labels {
            let p = self.require(l)?;
            out.indices[p].sign = -out.indices[p].sign;
        }
        Ok(out)
    }

    /// Replaces the index signature, keeping entries. The new signature must
    /// have the same rank.
    pub fn with_indices(&self, indices: Vec<SignedIndex>) -> Result<Self, TensorError> {
        if indices.len() != self.rank() {
            return Err(TensorError::EntryCount {
                expected: self.entries.len(),
                found: self.dim.pow(indices.len() as u32),
            });
        }
        Self::new(self.dim, indices, self.entries.clone())
    }

    pub fn conjugate_entries(&self) -> Self {
        LabeledTensor {
            dim: self.dim,
            indices: self.indices.clone(),
            entries: self.entries.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn map_entries(&self, f: impl FnMut(&S) -> S) -> Self {
        LabeledTensor {
            dim: self.dim,
            indices: self.indices.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn same_signature(&self, other: &Self) -> bool {
        self.indices == other.indices && (self.rank() == 0 || self.dim == other.dim)
    }

    /// Same signature and entries equal within `tol` (exactly, for rationals).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.same_signature(other)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Largest entrywise difference, or `None` if the signatures differ.
    pub fn max_difference(&self, other: &Self) -> Option<S::Norm> {
        if !self.same_signature(other) {
            return None;
        }
        let mut worst = S::norm_zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            let n = (a.clone() - b.clone()).norm();
            if n > worst {
                worst = n;
            }
        }
        Some(worst)
    }
}

impl<S: Scalar> fmt::Display for LabeledTensor<S> {
    /// The literal format: a header, then one `i j ... = value` line per
    /// nonzero entry with 1-based indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tensor dim={} indices=[", self.dim)?;
        for (k, idx) in self.indices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{idx}")?;
        }
        writeln!(f, "]")?;
        for (flat, value) in self.entries.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            let idx = multi_index(flat, self.dim, self.rank());
            let coords: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            if coords.is_empty() {
                writeln!(f, "= {}", value.render())?;
            } else {
                writeln!(f, "{} = {}", coords.join(" "), value.render())?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> FromStr for LabeledTensor<S> {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        let mut lines = text::content_lines(input);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, 1, "missing `tensor` header"))?;
        let toks = text::tokens(header);
        if toks[0].text != "tensor" || toks.len() != 3 {
            return Err(ParseError::new(
                line_no,
                toks[0].column,
                "expected `tensor dim=<n> indices=[...]`",
            ));
        }
        let dim_text = text::key_value(line_no, toks[1], "dim")?;
        let dim: usize = dim_text.parse().ok().filter(|&d| d > 0).ok_or_else(|| {
            ParseError::new(
                line_no,
                toks[1].column + 4,
                "dim must be a positive integer",
            )
        })?;
        let list = text::key_value(line_no, toks[2], "indices")?;
        let indices: Vec<SignedIndex> = text::signed_labels(line_no, toks[2].column + 8, list)?
            .into_iter()
            .map(|(sign, label, _)| SignedIndex::new(label, sign))
            .collect();
        let rank = indices.len();
        let mut tensor = LabeledTensor::zeros(dim, indices)
            .map_err(|e| ParseError::new(line_no, toks[2].column, e.to_string()))?;
        let mut assigned = HashSet::new();
        for (line_no, line) in lines {
            let (coords, value) = line
                .split_once('=')
                .ok_or_else(|| ParseError::new(line_no, 1, "expected `i j ... = value`"))?;
            let value_col = coords.len() + 2;
            let coord_toks = text::tokens(coords);
            if coord_toks.len() != rank {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("expected {rank} indices, found {}", coord_toks.len()),
                ));
            }
            let mut flat = 0;
            for t in &coord_toks {
                let i: usize = t
                    .text
                    .parse()
                    .ok()
                    .filter(|&i| (1..=dim).contains(&i))
                    .ok_or_else(|| {
                        ParseError::new(line_no, t.column, format!("index must be in 1..={dim}"))
                    })?;
                flat = flat * dim + (i - 1);
            }
            if !assigned.insert(flat) {
                return Err(ParseError::new(line_no, 1, "entry assigned twice"));
            }
            tensor.entries[flat] =
                S::parse(value).map_err(|m| ParseError::new(line_no, value_col, m))?;
        }
        Ok(tensor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Complex, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn matrix(
        a: [[i64; 2]; 2],
        first: SignedIndex,
        second: SignedIndex,
    ) -> LabeledTensor<Rational> {
        LabeledTensor::from_fn(2, vec![first, second], |ix| q(a[ix[0]][ix[1]])).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(
            LabeledTensor::<Rational>::new(2, vec![SignedIndex::plus("i")], vec![q(1)]),
            Err(TensorError::EntryCount {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            LabeledTensor::<Rational>::zeros(
                2,
                vec![SignedIndex::plus("i"), SignedIndex::minus("i")]
            ),
            Err(TensorError::DuplicateLabel("i".into()))
        );
        assert_eq!(
            LabeledTensor::<Rational>::zeros(0, vec![]),
            Err(TensorError::ZeroDimension)
        );
    }

    #[test]
    fn product_with_unit_and_outer_product() {
        let d = LabeledTensor::new(2, vec![SignedIndex::plus("a")], vec![q(2), q(3)]).unwrap();
        let one = LabeledTensor::scalar(q(1));
        assert_eq!(one.tensor_product(&d).unwrap(), d);
        assert_eq!(d.tensor_product(&one).unwrap(), d);
        let e = d.with_indices(vec![SignedIndex::plus("b")]).unwrap();
        let dd = d.tensor_product(&e).unwrap();
        assert_eq!(dd.entries(), &[q(4), q(6), q(6), q(9)]);
        assert_eq!(dd.labels(), vec!["a", "b"]);
        let f =
            LabeledTensor::new(3, vec![SignedIndex::plus("c")], vec![q(1), q(1), q(1)]).unwrap();
        assert_eq!(
            d.tensor_product(&f),
            Err(TensorError::DimensionMismatch(2, 3))
        );
        assert_eq!(
            d.tensor_product(&d),
            Err(TensorError::LabelCollision("a".into()))
        );
    }

    #[test]
    fn contraction_is_a_trace() {
        let c = matrix(
            [[1, 2], [3, 4]],
            SignedIndex::minus("i"),
            SignedIndex::plus("j"),
        );
        let tr = c.contract("i", "j").unwrap();
        assert_eq!(tr.as_scalar(), Some(&q(5)));
        assert_eq!(c.contract("j", "i").unwrap(), tr);
        let id = LabeledTensor::<Rational>::from_fn(
            3,
            vec![SignedIndex::minus("i"), SignedIndex::plus("j")],
            |ix| if ix[0] == ix[1] { q(1) } else { q(0) },
        )
        .unwrap();
        assert_eq!(id.contract("i", "j").unwrap().as_scalar(), Some(&q(3)));
        let same = matrix(
            [[1, 0], [0, 1]],
            SignedIndex::plus("i"),
            SignedIndex::plus("j"),
        );
        assert_eq!(
            same.contract("i", "j"),
            Err(TensorError::OrientationMismatch("i".into(), "j".into()))
        );
        assert_eq!(
            same.contract("i", "x"),
            Err(TensorError::MissingLabel("x".into()))
        );
    }

    #[test]
    fn permutation_transposes() {
        let c = matrix(
            [[1, 2], [3, 4]],
            SignedIndex::minus("i"),
            SignedIndex::plus("j"),
        );
        let t = c
            .permute_indices(&Permutation::swap(2, 0, 1).unwrap())
            .unwrap();
        assert_eq!(t.entries(), &[q(1), q(3), q(2), q(4)]);
        assert_eq!(t.labels(), vec!["j", "i"]);
        assert_eq!(c.permute_indices(&Permutation::identity(2)).unwrap(), c);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(c.permute_indices(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn three_cycle_has_order_three() {
        let t = LabeledTensor::from_fn(
            2,
            vec![
                SignedIndex::plus("a"),
                SignedIndex::minus("b"),
                SignedIndex::plus("c"),
            ],
            |ix| q((ix[0] * 4 + ix[1] * 2 + ix[2]) as i64),
        )
        .unwrap();
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        let once = t.permute_indices(&cycle).unwrap();
        assert_ne!(once, t);
        let thrice = once
            .permute_indices(&cycle)
            .unwrap()
            .permute_indices(&cycle)
            .unwrap();
        assert_eq!(thrice, t);
    }

    #[test]
    fn flips_and_conjugation() {
        let s = LabeledTensor::scalar(q(7));
        assert_eq!(s.flip_signs(), s);
        let d = LabeledTensor::new(2, vec![SignedIndex::plus("i")], vec![q(2), q(5)]).unwrap();
        let f = d.flip_signs();
        assert_eq!(f.indices()[0].sign, Orientation::Minus);
        assert_eq!(f.entries(), d.entries());
        assert_eq!(f.flip_signs(), d);
        assert_eq!(d.conjugate_entries(), d);
        let z = LabeledTensor::new(
            1,
            vec![SignedIndex::plus("i")],
            vec![Complex::new(1.0, 2.0)],
        )
        .unwrap();
        assert_eq!(z.conjugate_entries().entries(), &[Complex::new(1.0, -2.0)]);
        assert_eq!(z.conjugate_entries().conjugate_entries(), z);
    }

    #[test]
    fn tolerant_equality() {
        let idx = || vec![SignedIndex::minus("i"), SignedIndex::plus("j")];
        let c = |x: f64| Complex::new(x, 0.0);
        let a = LabeledTensor::new(2, idx(), vec![c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        let b = LabeledTensor::new(2, idx(), vec![c(1.0), c(1e-12), c(0.0), c(1.0)]).unwrap();
        assert!(a.approx_eq(&a, 1e-9));
        assert!(a.approx_eq(&b, 1e-9));
        let swapped = LabeledTensor::new(
            2,
            vec![SignedIndex::plus("j"), SignedIndex::minus("i")],
            a.entries().to_vec(),
        )
        .unwrap();
        assert!(!a.approx_eq(&swapped, 1e-9));
    }

    #[test]
    fn literal_round_trip() {
        let c = matrix(
            [[1, 0], [-3, 4]],
            SignedIndex::minus("i"),
            SignedIndex::plus("j"),
        );
        let text = c.to_string();
        assert_eq!(
            text,
            "tensor dim=2 indices=[-i,+j]\n1 1 = 1\n2 1 = -3\n2 2 = 4\n"
        );
        assert_eq!(text.parse::<LabeledTensor<Rational>>().unwrap(), c);
        let s: LabeledTensor<Rational> = "tensor dim=3 indices=[]\n= 5/10".parse().unwrap();
        assert_eq!(s.as_scalar(), Some(&Rational::new(1.into(), 2.into())));
        let z: LabeledTensor<Complex> = "tensor dim=1 indices=[+a]\n1 = 1-2i".parse().unwrap();
        assert_eq!(z.entries(), &[Complex::new(1.0, -2.0)]);
    }

    #[test]
    fn literal_errors() {
        let err = "tensor dim=2 indices=[+i]\n3 = 1"
            .parse::<LabeledTensor<Rational>>()
            .unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
        let err = "tensor dim=2 indices=[+i]\n1 = x"
            .parse::<LabeledTensor<Rational>>()
            .unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
        let err = "tensor dim=0 indices=[]"
            .parse::<LabeledTensor<Rational>>()
            .unwrap_err();
        assert_eq!(err.column, 12);
    }
}
