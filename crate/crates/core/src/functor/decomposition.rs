//! Pants decompositions and the moves between them.
//!
//! A decomposition is recorded by its dual graph: one node per pair of pants,
//! each with three legs naming circles. An external circle appears on exactly
//! one leg; an internal (cutting) circle on exactly two, possibly both on the
//! same pants, which then forms a one-holed torus around a handle.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pants {
    pub legs: [String; 3],
}

impl Pants {
    pub fn new(a: impl Into<String>, b: impl Into<String>, c: impl Into<String>) -> Self {
        Pants {
            legs: [a.into(), b.into(), c.into()],
        }
    }

    fn sorted(&self) -> [String; 3] {
        let mut legs = self.legs.clone();
        legs.sort();
        legs
    }
}

impl fmt::Display for Pants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.legs[0], self.legs[1], self.legs[2])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Boundary legs hang off a linear spine; handles sit at the end.
    #[default]
    Chain,
    /// The chain after one Type I move on its first circle between two pants.
    Alternate,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("genus {0} with {1} boundary circles has no pants decomposition")]
    Exceptional(u32, usize),
    #[error("external circle {0} must appear exactly once")]
    External(String),
    #[error("internal circle {0} must appear exactly twice")]
    Internal(String),
    #[error("circle {0} is neither external nor internal")]
    Unknown(String),
    #[error("the pants do not form a connected surface")]
    Disconnected,
    #[error("circle {0} does not join two distinct pants")]
    NotBetweenPants(String),
    #[error("circle {0} is not a handle curve")]
    NotHandle(String),
}

/// Prefix of generated cutting-circle names. Boundary labels never contain it.
pub const INTERNAL_PREFIX: &str = "~k";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PantsDecomposition {
    pants: Vec<Pants>,
    external: Vec<String>,
    internal: Vec<String>,
}

impl PantsDecomposition {
    pub fn new(
        pants: Vec<Pants>,
        external: Vec<String>,
        internal: Vec<String>,
    ) -> Result<Self, DecompositionError> {
        let d = PantsDecomposition {
            pants,
            external,
            internal,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), DecompositionError> {
        let mut count: HashMap<&str, usize> = HashMap::new();
        for p in &self.pants {
            for leg in &p.legs {
                *count.entry(leg.as_str()).or_default() += 1;
            }
        }
        for e in &self.external {
            if count.remove(e.as_str()) != Some(1) {
                return Err(DecompositionError::External(e.clone()));
            }
        }
        for i in &self.internal {
            if count.remove(i.as_str()) != Some(2) {
                return Err(DecompositionError::Internal(i.clone()));
            }
        }
        if let Some((l, _)) = count.into_iter().next() {
            return Err(DecompositionError::Unknown(l.to_owned()));
        }
        if self.pants.is_empty() || !self.is_connected() {
            return Err(DecompositionError::Disconnected);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let mut reached = vec![false; self.pants.len()];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(n) = stack.pop() {
            for leg in &self.pants[n].legs {
                for (m, q) in self.pants.iter().enumerate() {
                    if !reached[m] && q.legs.contains(leg) {
                        reached[m] = true;
                        stack.push(m);
                    }
                }
            }
        }
        reached.into_iter().all(|r| r)
    }

    pub fn pants(&self) -> &[Pants] {
        &self.pants
    }

    pub fn external(&self) -> &[String] {
        &self.external
    }

    pub fn internal(&self) -> &[String] {
        &self.internal
    }

    /// Genus of the decomposed surface: the first Betti number of the dual graph.
    pub fn genus(&self) -> u32 {
        (self.internal.len() + 1 - self.pants.len()) as u32
    }

    /// The pants as a sorted multiset of sorted leg triples.
    pub fn shape(&self) -> Vec<[String; 3]> {
        let mut s: Vec<_> = self.pants.iter().map(Pants::sorted).collect();
        s.sort();
        s
    }

    /// The positions `(pants, slot)` where `curve` occurs.
    fn occurrences(&self, curve: &str) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (n, p) in self.pants.iter().enumerate() {
            for (slot, leg) in p.legs.iter().enumerate() {
                if leg == curve {
                    out.push((n, slot));
                }
            }
        }
        out
    }

    /// Internal circles that join two distinct pants.
    pub fn curves_between_pants(&self) -> Vec<&str> {
        self.internal
            .iter()
            .filter(|c| {
                let occ = self.occurrences(c);
                occ.len() == 2 && occ[0].0 != occ[1].0
            })
            .map(String::as_str)
            .collect()
    }

    /// Internal circles bounding a handle inside a single pants.
    pub fn handle_curves(&self) -> Vec<&str> {
        self.internal
            .iter()
            .filter(|c| {
                let occ = self.occurrences(c);
                occ.len() == 2 && occ[0].0 == occ[1].0
            })
            .map(String::as_str)
            .collect()
    }

    /// Type I move across `curve`, which joins pants `P = (curve, x0, x1)` and
    /// `Q = (curve, y0, y1)`: exchanges leg `x[from_first]` with leg
    /// `y[from_second]`. On the dual graph this is the Whitehead move of the
    /// edge `curve`.
    pub fn type_one_move(
        &self,
        curve: &str,
        from_first: usize,
        from_second: usize,
    ) -> Result<Self, DecompositionError> {
        let occ = self.occurrences(curve);
        if occ.len() != 2 || occ[0].0 == occ[1].0 || !self.internal.iter().any(|c| c == curve) {
            return Err(DecompositionError::NotBetweenPants(curve.to_owned()));
        }
        let others = |(n, slot): (usize, usize)| -> Vec<(usize, usize)> {
            (0..3).filter(|&s| s != slot).map(|s| (n, s)).collect()
        };
        let (pn, ps) = others(occ[0])[from_first % 2];
        let (qn, qs) = others(occ[1])[from_second % 2];
        let mut next = self.clone();
        let moved = next.pants[pn].legs[ps].clone();
        next.pants[pn].legs[ps] = std::mem::replace(&mut next.pants[qn].legs[qs], moved);
        Ok(next)
    }

    /// A Type I move chosen uniformly among circles between two pants and leg choices.
    pub fn random_type_one_move<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Self> {
        let curves = self.curves_between_pants();
        if curves.is_empty() {
            return None;
        }
        let curve = curves[rng.gen_range(0..curves.len())];
        let (a, b) = (rng.gen_range(0..2), rng.gen_range(0..2));
        self.type_one_move(curve, a, b).ok()
    }

    /// Type II move on a handle curve: the cut is replaced by the other
    /// generator of the one-holed torus. The dual graph is unchanged, so only
    /// the curve's name changes.
    pub fn type_two_move(&self, curve: &str) -> Result<Self, DecompositionError> {
        if !self.handle_curves().contains(&curve) {
            return Err(DecompositionError::NotHandle(curve.to_owned()));
        }
        let renamed = format!("{curve}'");
        let mut next = self.clone();
        for p in &mut next.pants {
            for leg in &mut p.legs {
                if leg == curve {
                    *leg = renamed.clone();
                }
            }
        }
        for c in &mut next.internal {
            if c == curve {
                *c = renamed.clone();
            }
        }
        Ok(next)
    }
}

impl fmt::Display for PantsDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.pants.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Whether a connected surface of this type has a pants decomposition.
pub fn is_exceptional(genus: u32, boundary: usize) -> bool {
    matches!((genus, boundary), (0, 0) | (0, 1) | (0, 2) | (1, 0))
}

/// Decomposition of the genus-`genus` surface with boundary `b0, b1, ...`.
pub fn pants_decomposition(
    genus: u32,
    boundary: usize,
    strategy: Strategy,
) -> Result<PantsDecomposition, DecompositionError> {
    let labels: Vec<String> = (0..boundary).map(|i| format!("b{i}")).collect();
    decompose(genus, &labels, strategy)
}

/// Decomposition whose external circles carry the given labels.
pub fn decompose(
    genus: u32,
    external: &[String],
    strategy: Strategy,
) -> Result<PantsDecomposition, DecompositionError> {
    let n = external.len();
    if is_exceptional(genus, n) {
        return Err(DecompositionError::Exceptional(genus, n));
    }
    let chain = chain(genus, external);
    match strategy {
        Strategy::Chain => Ok(chain),
        Strategy::Alternate => Ok(alternate(chain)),
    }
}

fn chain(genus: u32, external: &[String]) -> PantsDecomposition {
    let mut internal = Vec::new();
    let mut fresh = || {
        let name = format!("{INTERNAL_PREFIX}{}", internal.len());
        internal.push(name.clone());
        name
    };
    let mut pants = Vec::new();
    let handles = genus as usize;
    let leaves = external.len() + handles;

    // The circle each handle pants offers to the spine.
    let attach: Vec<String> = if leaves == 2 && handles == 1 {
        vec![external[0].clone()]
    } else if leaves == 2 {
        let shared = fresh();
        vec![shared.clone(), shared]
    } else {
        (0..handles).map(|_| fresh()).collect()
    };
    for a in &attach {
        let s = fresh();
        pants.push(Pants::new(a.clone(), s.clone(), s));
    }

    if leaves >= 3 {
        let legs: Vec<String> = external.iter().cloned().chain(attach).collect();
        if leaves == 3 {
            pants.insert(
                0,
                Pants::new(legs[0].clone(), legs[1].clone(), legs[2].clone()),
            );
        } else {
            let mut spine = Vec::new();
            let mut edge = fresh();
            spine.push(Pants::new(legs[0].clone(), legs[1].clone(), edge.clone()));
            for leg in &legs[2..leaves - 2] {
                let next = fresh();
                spine.push(Pants::new(edge, leg.clone(), next.clone()));
                edge = next;
            }
            spine.push(Pants::new(
                edge,
                legs[leaves - 2].clone(),
                legs[leaves - 1].clone(),
            ));
            spine.extend(pants);
            pants = spine;
        }
    }

    PantsDecomposition::new(pants, external.to_vec(), internal)
        .expect("chain construction is a valid decomposition")
}

fn alternate(chain: PantsDecomposition) -> PantsDecomposition {
    let Some(curve) = chain.curves_between_pants().first().map(|c| c.to_string()) else {
        return chain;
    };
    for (a, b) in [(1, 0), (0, 0), (1, 1), (0, 1)] {
        let moved = chain
            .type_one_move(&curve, a, b)
            .expect("curve between pants");
        if moved.shape() != chain.shape() {
            return moved;
        }
    }
    chain
}

/// Random sequence of Type I moves starting from `start`.
pub fn random_rewrite<R: Rng + ?Sized>(
    start: &PantsDecomposition,
    moves: usize,
    rng: &mut R,
) -> PantsDecomposition {
    let mut current = start.clone();
    for _ in 0..moves {
        match current.random_type_one_move(rng) {
            Some(next) => current = next,
            None => break,
        }
    }
    current
}
