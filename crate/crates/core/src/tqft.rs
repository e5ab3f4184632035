//! Classification data of a two-dimensional TQFT: a disk vector `d_i` and a
//! fully symmetric pair-of-pants tensor `p_ijk`.
//!
//! Such a pair defines a TQFT exactly when the four relations hold:
//!
//! 1. `p_ijk p_klm = p_ilk p_kjm` (the two ways of building a four-holed sphere)
//! 2. `p_ijk = p_jik = p_ikj`
//! 3. `d_k p_kij d_j = d_i`
//! 4. `d_k p_kij p_jlm = p_ilm`
//!
//! Repeated indices are summed.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::{Backend, Complex, Rational, Scalar, DEFAULT_TOLERANCE};
use crate::tensor::{LabeledTensor, SignedIndex};
use crate::text::{self, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TqftError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("expected {expected} entries for {which}, found {found}")]
    EntryCount {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("p is not symmetric at ({0}, {1}, {2})")]
    Asymmetric(usize, usize, usize),
    #[error("parameter {0} of the diagonal family is zero")]
    ZeroParameter(usize),
    #[error("search height {0} exceeds the budget of {max}", max = MAX_SEARCH_HEIGHT)]
    HeightOverBudget(u32),
}

/// Largest height accepted by [`grid_search_dim1`].
pub const MAX_SEARCH_HEIGHT: u32 = 6;

/// The pair `(d, p)` over `n`-dimensional factors.
#[derive(Clone, Debug, PartialEq)]
pub struct TqftData<S> {
    dim: usize,
    d: LabeledTensor<S>,
    p: LabeledTensor<S>,
}

/// The six orderings of a triple.
fn orbit(i: usize, j: usize, k: usize) -> [[usize; 3]; 6] {
    [
        [i, j, k],
        [i, k, j],
        [j, i, k],
        [j, k, i],
        [k, i, j],
        [k, j, i],
    ]
}

impl<S: Scalar> TqftData<S> {
    /// `d` has `n` entries and `p` has `n³` entries in row-major order.
    /// Fails unless `p` is fully symmetric.
    pub fn new(d: Vec<S>, p: Vec<S>) -> Result<Self, TqftError> {
        let dim = d.len();
        if dim == 0 {
            return Err(TqftError::ZeroDimension);
        }
        if p.len() != dim.pow(3) {
            return Err(TqftError::EntryCount {
                which: "p",
                expected: dim.pow(3),
                found: p.len(),
            });
        }
        let d = LabeledTensor::new(dim, vec![SignedIndex::plus("i")], d).expect("sizes checked");
        let p = LabeledTensor::new(
            dim,
            vec![
                SignedIndex::plus("i"),
                SignedIndex::plus("j"),
                SignedIndex::plus("k"),
            ],
            p,
        )
        .expect("sizes checked");
        let data = TqftData { dim, d, p };
        for i in 0..dim {
            for j in i..dim {
                for k in j..dim {
                    let base = data.p_at(i, j, k);
                    for [a, b, c] in orbit(i, j, k) {
                        if !data.p_at(a, b, c).approx_eq(base, DEFAULT_TOLERANCE) {
                            return Err(TqftError::Asymmetric(a + 1, b + 1, c + 1));
                        }
                    }
                }
            }
        }
        Ok(data)
    }

    pub fn from_fns(
        dim: usize,
        mut d: impl FnMut(usize) -> S,
        mut p: impl FnMut(usize, usize, usize) -> S,
    ) -> Result<Self, TqftError> {
        let dv = (0..dim).map(&mut d).collect();
        let mut pv = Vec::with_capacity(dim.pow(3));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    pv.push(p(i, j, k));
                }
            }
        }
        Self::new(dv, pv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    /// The disk tensor, one `+` index labelled `i`.
    pub fn d(&self) -> &LabeledTensor<S> {
        &self.d
    }

    /// The pants tensor, `+` indices labelled `i`, `j`, `k`.
    pub fn p(&self) -> &LabeledTensor<S> {
        &self.p
    }

    pub fn d_at(&self, i: usize) -> &S {
        &self.d.entries()[i]
    }

    pub fn p_at(&self, i: usize, j: usize, k: usize) -> &S {
        &self.p.entries()[(i * self.dim + j) * self.dim + k]
    }

    pub fn check_relations(&self) -> RelationReport<S> {
        self.check_relations_with_tolerance(DEFAULT_TOLERANCE)
    }

    /// Evaluates all four relations over every free-index tuple.
    pub fn check_relations_with_tolerance(&self, tol: f64) -> RelationReport<S> {
        let n = self.dim;
        let range = || 0..n;
        let mut worst = [
            S::norm_zero(),
            S::norm_zero(),
            S::norm_zero(),
            S::norm_zero(),
        ];
        let mut note = |r: usize, lhs: S, rhs: &S| {
            let v = (lhs - rhs.clone()).norm();
            if v > worst[r] {
                worst[r] = v;
            }
        };
        let sum = |f: &dyn Fn(usize) -> S| range().fold(S::zero(), |acc, k| acc + f(k));

        for i in range() {
            for j in range() {
                for l in range() {
                    for m in range() {
                        let lhs = sum(&|k| self.p_at(i, j, k).clone() * self.p_at(k, l, m).clone());
                        let rhs = sum(&|k| self.p_at(i, l, k).clone() * self.p_at(k, j, m).clone());
                        note(0, lhs, &rhs);
                    }
                }
            }
        }
        for i in range() {
            for j in range() {
                for k in range() {
                    let base = self.p_at(i, j, k);
                    note(1, self.p_at(j, i, k).clone(), base);
                    note(1, self.p_at(i, k, j).clone(), base);
                }
            }
        }
        let annulus = self.annulus_matrix();
        for i in range() {
            let lhs = sum(&|j| annulus[i][j].clone() * self.d_at(j).clone());
            note(2, lhs, self.d_at(i));
        }
        for i in range() {
            for l in range() {
                for m in range() {
                    let lhs = sum(&|j| annulus[i][j].clone() * self.p_at(j, l, m).clone());
                    note(3, lhs, self.p_at(i, l, m));
                }
            }
        }

        let relations = worst.map(|max_violation| RelationResult {
            passed: S::negligible(&max_violation, tol),
            max_violation,
        });
        RelationReport { relations }
    }

    /// `c_ij = Σ_k d_k p_kij` as nested rows.
    fn annulus_matrix(&self) -> Vec<Vec<S>> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(S::zero(), |acc, k| {
                            acc + self.d_at(k).clone() * self.p_at(k, i, j).clone()
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// The annulus tensor `c_ij = d_k p_kij`, indices `-i`, `+j`.
    pub fn annulus_tensor(&self) -> LabeledTensor<S> {
        let c = self.annulus_matrix();
        LabeledTensor::from_fn(
            self.dim,
            vec![SignedIndex::minus("i"), SignedIndex::plus("j")],
            |ix| c[ix[0]][ix[1]].clone(),
        )
        .expect("square matrix")
    }

    /// Tensors of the surfaces that admit no pants decomposition.
    pub fn base_invariants(&self) -> BaseInvariants<S> {
        let n = self.dim;
        let sphere = (0..n).fold(S::zero(), |acc, i| {
            acc + self.d_at(i).clone() * self.d_at(i).clone()
        });
        let mut torus = S::zero();
        for k in 0..n {
            for i in 0..n {
                torus = torus + self.d_at(k).clone() * self.p_at(k, i, i).clone();
            }
        }
        BaseInvariants {
            empty: LabeledTensor::scalar(S::one()),
            sphere: LabeledTensor::scalar(sphere),
            disk: self.d.clone(),
            annulus: self.annulus_tensor(),
            torus: LabeledTensor::scalar(torus),
        }
    }

    /// Whether `d` and `p` have real entries, i.e. the TQFT is unitary.
    pub fn hermitian_check(&self) -> bool {
        self.hermitian_check_with_tolerance(DEFAULT_TOLERANCE)
    }

    pub fn hermitian_check_with_tolerance(&self, tol: f64) -> bool {
        self.d
            .entries()
            .iter()
            .chain(self.p.entries())
            .all(|x| x.is_real(tol))
    }
}

/// Direct sum of one-dimensional solutions: `d_i = t_i`, `p_iii = 1/t_i`.
pub fn diagonal_family<S: Scalar>(t: &[S]) -> Result<TqftData<S>, TqftError> {
    let inverses = t
        .iter()
        .enumerate()
        .map(|(i, x)| x.recip().ok_or(TqftError::ZeroParameter(i)))
        .collect::<Result<Vec<_>, _>>()?;
    TqftData::from_fns(
        t.len(),
        |i| t[i].clone(),
        |i, j, k| {
            if i == j && j == k {
                inverses[i].clone()
            } else {
                S::zero()
            }
        },
    )
}

/// Every rational `a/b` with `|a| ≤ height` and `1 ≤ b ≤ height`, ascending.
pub fn grid_values(height: u32) -> Vec<Rational> {
    let h = i64::from(height);
    let mut values: Vec<Rational> = (-h..=h)
        .flat_map(|a| (1..=h).map(move |b| Rational::new(a.into(), b.into())))
        .collect();
    values.sort();
    values.dedup();
    values
}

/// All one-dimensional data `(d, p)` on the height grid that satisfy the
/// relations, ordered by `d` then `p`.
pub fn grid_search_dim1(height: u32) -> Result<Vec<TqftData<Rational>>, TqftError> {
    if height > MAX_SEARCH_HEIGHT {
        return Err(TqftError::HeightOverBudget(height));
    }
    let values = grid_values(height);
    let mut found = Vec::new();
    for d in &values {
        for p in &values {
            let data = TqftData::new(vec![d.clone()], vec![p.clone()])?;
            if data.check_relations().passed() {
                found.push(data);
            }
        }
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationResult<S: Scalar> {
    pub passed: bool,
    pub max_violation: S::Norm,
}

/// Outcome of [`TqftData::check_relations`], relations numbered from 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport<S: Scalar> {
    pub relations: [RelationResult<S>; 4],
}

impl<S: Scalar> RelationReport<S> {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed)
    }

    /// Result of relation `n` (1 to 4).
    pub fn relation(&self, n: usize) -> &RelationResult<S> {
        &self.relations[n - 1]
    }

    /// `PASS`/`FAIL` per relation on one line.
    pub fn summary(&self) -> String {
        self.relations
            .iter()
            .map(|r| if r.passed { "PASS" } else { "FAIL" })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl<S: Scalar> fmt::Display for RelationReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        for (n, r) in self.relations.iter().enumerate() {
            writeln!(
                f,
                "relation{} {} max_violation={}",
                n + 1,
                if r.passed { "PASS" } else { "FAIL" },
                r.max_violation
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseInvariants<S> {
    pub empty: LabeledTensor<S>,
    pub sphere: LabeledTensor<S>,
    pub disk: LabeledTensor<S>,
    pub annulus: LabeledTensor<S>,
    pub torus: LabeledTensor<S>,
}

impl<S: Scalar> fmt::Display for TqftData<S> {
    /// The data file format; `p` is written once per symmetry orbit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tqft dim={} backend={}", self.dim, S::BACKEND)?;
        for i in 0..self.dim {
            let v = self.d_at(i);
            if !v.is_zero() {
                writeln!(f, "d {} = {}", i + 1, v.render())?;
            }
        }
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in j..self.dim {
                    let v = self.p_at(i, j, k);
                    if !v.is_zero() {
                        writeln!(f, "p {} {} {} = {}", i + 1, j + 1, k + 1, v.render())?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Data read from a file whose header selects the backend.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTqft {
    Rational(TqftData<Rational>),
    Complex(TqftData<Complex>),
}

impl AnyTqft {
    pub fn backend(&self) -> Backend {
        match self {
            AnyTqft::Rational(_) => Backend::Rational,
            AnyTqft::Complex(_) => Backend::Complex,
        }
    }
}

impl FromStr for AnyTqft {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        let (_, backend, _) = parse_header(input)?;
        match backend {
            Backend::Rational => input.parse().map(AnyTqft::Rational),
            Backend::Complex => input.parse().map(AnyTqft::Complex),
        }
    }
}

fn parse_header(input: &str) -> Result<(usize, Backend, usize), ParseError> {
    let (line_no, header) = text::content_lines(input)
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing `tqft` header"))?;
    let toks = text::tokens(header);
    if toks[0].text != "tqft" || toks.len() != 3 {
        return Err(ParseError::new(
            line_no,
            toks[0].column,
            "expected `tqft dim=<n> backend=<rational|complex>`",
        ));
    }
    let dim_text = text::key_value(line_no, toks[1], "dim")?;
    let dim = dim_text
        .parse::<usize>()
        .ok()
        .filter(|&d| d > 0)
        .ok_or_else(|| {
            ParseError::new(
                line_no,
                toks[1].column + 4,
                "dim must be a positive integer",
            )
        })?;
    let backend_text = text::key_value(line_no, toks[2], "backend")?;
    let backend = backend_text
        .parse::<Backend>()
        .map_err(|m| ParseError::new(line_no, toks[2].column + 8, m))?;
    Ok((dim, backend, line_no))
}

impl<S: Scalar> FromStr for TqftData<S> {
    type Err = ParseError;

    /// Reads `d <i> = v` and `p <i> <j> <k> = v` lines (1-based, omitted
    /// entries zero). A `p` entry also fills its symmetric images; two
    /// supplied entries of one orbit must agree.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let (dim, backend, header_line) = parse_header(input)?;
        if backend != S::BACKEND {
            return Err(ParseError::new(
                header_line,
                1,
                format!("expected backend {}, found {backend}", S::BACKEND),
            ));
        }
        let mut d = vec![S::zero(); dim];
        let mut d_set = vec![false; dim];
        let mut p = vec![S::zero(); dim.pow(3)];
        let mut p_set: HashMap<[usize; 3], usize> = HashMap::new();
        for (line_no, line) in text::content_lines(input).skip(1) {
            let (lhs, value) = line.split_once('=').ok_or_else(|| {
                ParseError::new(line_no, 1, "expected `d i = v` or `p i j k = v`")
            })?;
            let value_col = lhs.len() + 2;
            let value = S::parse(value).map_err(|m| ParseError::new(line_no, value_col, m))?;
            let toks = text::tokens(lhs);
            let arity = match toks.first().map(|t| t.text) {
                Some("d") => 1,
                Some("p") => 3,
                _ => return Err(ParseError::new(line_no, 1, "expected `d` or `p`")),
            };
            if toks.len() != arity + 1 {
                return Err(ParseError::new(
                    line_no,
                    toks[0].column,
                    format!("`{}` takes {arity} indices", toks[0].text),
                ));
            }
            let mut idx = [0usize; 3];
            for (slot, t) in toks[1..].iter().enumerate() {
                idx[slot] = t
                    .text
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| (1..=dim).contains(&i))
                    .ok_or_else(|| {
                        ParseError::new(line_no, t.column, format!("index must be in 1..={dim}"))
                    })?
                    - 1;
            }
            if arity == 1 {
                if std::mem::replace(&mut d_set[idx[0]], true) {
                    return Err(ParseError::new(line_no, 1, "entry assigned twice"));
                }
                d[idx[0]] = value;
                continue;
            }
            let mut key = idx;
            key.sort_unstable();
            if let Some(prev) = p_set.get(&key) {
                let existing = &p[(key[0] * dim + key[1]) * dim + key[2]];
                if !existing.approx_eq(&value, DEFAULT_TOLERANCE) {
                    return Err(ParseError::new(
                        line_no,
                        value_col,
                        format!("p is not symmetric: conflicts with the entry on line {prev}"),
                    ));
                }
            }
            p_set.insert(key, line_no);
            for [a, b, c] in orbit(idx[0], idx[1], idx[2]) {
                p[(a * dim + b) * dim + c] = value.clone();
            }
        }
        TqftData::new(d, p).map_err(|e| ParseError::new(header_line, 1, e.to_string()))
    }
}

impl<S: Scalar> TqftData<S> {
    /// `d = (t)`, `p = (1/t)`.
    pub fn one_dimensional(t: S) -> Result<Self, TqftError> {
        diagonal_family(&[t])
    }

    /// The trivial theory: `d = (1)`, `p = (1)`.
    pub fn unit() -> Self {
        TqftData::new(vec![S::one()], vec![S::one()]).expect("symmetric")
    }
}
