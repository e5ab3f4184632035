//! Randomised verification suites.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! reports do not depend on how rayon schedules the trials.
//!
//! Independence of the pants decomposition is checked through Type I moves
//! only. Any two decompositions are related by Type I and Type II moves, and a
//! Type II move leaves the dual graph (and with it the contracted network)
//! unchanged, so Type I coverage is sufficient.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::decomposition::{self, random_rewrite, PantsDecomposition, Strategy};
use super::{apply_gluing, FunctorError, Tqft};
use crate::scalar::Scalar;
use crate::surface::{BoundaryCircle, ConnectedSurface, GlueSpec, Orientation, Surface};
use crate::tensor::LabeledTensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub passed: bool,
    pub name: String,
    pub detail: String,
}

impl CheckLine {
    fn new(passed: bool, name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckLine {
            passed,
            name: name.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{verdict} {}", self.name)
        } else {
            write!(f, "{verdict} {} {}", self.name, self.detail)
        }
    }
}

/// One line per check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Generator for a trial, independent of every other trial.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random valid surfaces with bounded size.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceSampler {
    pub max_components: usize,
    pub max_genus: u32,
    /// Bound on the total number of boundary circles.
    pub max_circles: usize,
}

impl Default for SurfaceSampler {
    fn default() -> Self {
        SurfaceSampler {
            max_components: 3,
            max_genus: 2,
            max_circles: 6,
        }
    }
}

fn random_orientation<R: Rng + ?Sized>(rng: &mut R) -> Orientation {
    if rng.gen_bool(0.5) {
        Orientation::Plus
    } else {
        Orientation::Minus
    }
}

impl SurfaceSampler {
    /// Boundary labels are `<prefix>0`, `<prefix>1`, ...
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, prefix: &str) -> Surface {
        let count = rng.gen_range(1..=self.max_components.max(1));
        let mut next_label = 0;
        let mut components = Vec::with_capacity(count);
        for _ in 0..count {
            let genus = rng.gen_range(0..=self.max_genus);
            let room = self.max_circles - next_label;
            let circles = rng.gen_range(0..=room.min(4));
            let boundary = (0..circles)
                .map(|k| {
                    BoundaryCircle::new(
                        format!("{prefix}{}", next_label + k),
                        random_orientation(rng),
                    )
                })
                .collect();
            next_label += circles;
            components.push(ConnectedSurface::new(
                genus,
                random_orientation(rng),
                boundary,
            ));
        }
        Surface::new(components).expect("generated labels are distinct")
    }
}

/// A random legal gluing of at most `max_pairs` pairs, each joining a `+`
/// circle to a `-` circle.
pub fn random_glue_spec<R: Rng + ?Sized>(
    rng: &mut R,
    surface: &Surface,
    max_pairs: usize,
) -> GlueSpec {
    let mut plus: Vec<&str> = Vec::new();
    let mut minus: Vec<&str> = Vec::new();
    for c in surface.circles() {
        match c.orientation {
            Orientation::Plus => plus.push(&c.label),
            Orientation::Minus => minus.push(&c.label),
        }
    }
    plus.shuffle(rng);
    minus.shuffle(rng);
    let k = rng.gen_range(0..=plus.len().min(minus.len()).min(max_pairs));
    let pairs =
        plus.into_iter().zip(minus).take(k).map(
            |(a, b)| {
                if rng.gen_bool(0.5) {
                    (a, b)
                } else {
                    (b, a)
                }
            },
        );
    GlueSpec::new(pairs.collect::<Vec<_>>()).expect("labels are distinct")
}

fn one_line(surface: &Surface) -> String {
    surface
        .components
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn same<S: Scalar>(a: &LabeledTensor<S>, b: &LabeledTensor<S>, tol: f64) -> bool {
    a.sorted_by_label().approx_eq(&b.sorted_by_label(), tol)
}

fn outcome(
    name: String,
    result: Result<Option<String>, FunctorError>,
    context: String,
) -> CheckLine {
    match result {
        Ok(None) => CheckLine::new(true, name, String::new()),
        Ok(Some(why)) => CheckLine::new(false, name, format!("{why} {context}")),
        Err(e) => CheckLine::new(false, name, format!("error=\"{e}\" {context}")),
    }
}

/// Compares the chain decomposition against the alternate one and against
/// `trials` random Type I rewrites, for every `(g, n)` in range with at least
/// two pants.
pub fn verify_decomposition_invariance<S: Scalar>(
    tqft: &Tqft<S>,
    max_genus: u32,
    max_boundary: usize,
    trials: usize,
    seed: u64,
) -> Report {
    let mut cases = Vec::new();
    for g in 0..=max_genus {
        for n in 0..=max_boundary {
            if 2 * g as usize + n >= 4 {
                cases.push((g, n));
            }
        }
    }
    let lines = cases
        .into_par_iter()
        .flat_map_iter(|(g, n)| decomposition_case(tqft, g, n, trials, seed))
        .collect();
    Report { lines }
}

fn decomposition_case<S: Scalar>(
    tqft: &Tqft<S>,
    genus: u32,
    boundary: usize,
    trials: usize,
    seed: u64,
) -> Vec<CheckLine> {
    let circles = (0..boundary)
        .map(|k| {
            let o = if k % 2 == 0 {
                Orientation::Plus
            } else {
                Orientation::Minus
            };
            BoundaryCircle::new(format!("b{k}"), o)
        })
        .collect();
    let component = ConnectedSurface::positive(genus, circles);
    let labels: Vec<String> = component.boundary.iter().map(|c| c.label.clone()).collect();
    let context = format!("surface=\"{component}\"");
    let tol = tqft.tolerance();

    let chain = decomposition::decompose(genus, &labels, Strategy::Chain).expect("not exceptional");
    let reference = match tqft.decomposition_invariant(&chain, &component) {
        Ok(t) => t,
        Err(e) => {
            return vec![CheckLine::new(
                false,
                format!("moves g={genus} n={boundary} chain"),
                format!("error=\"{e}\" {context}"),
            )]
        }
    };
    let compare = |d: &PantsDecomposition| -> Result<Option<String>, FunctorError> {
        let t = tqft.decomposition_invariant(d, &component)?;
        Ok((!same(&t, &reference, tol)).then(|| format!("decomposition={d} reference={chain}")))
    };

    let mut lines = Vec::with_capacity(trials + 2);
    let alternate =
        decomposition::decompose(genus, &labels, Strategy::Alternate).expect("not exceptional");
    lines.push(outcome(
        format!("moves g={genus} n={boundary} alternate"),
        compare(&alternate),
        context.clone(),
    ));
    if let Some(handle) = chain.handle_curves().first() {
        let moved = chain.type_two_move(handle).expect("handle curve");
        lines.push(outcome(
            format!("moves g={genus} n={boundary} type2"),
            compare(&moved),
            context.clone(),
        ));
    }
    let stream_base = (u64::from(genus) << 40) | ((boundary as u64) << 24);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, stream_base | trial as u64);
        let steps = rng.gen_range(1..=2 * chain.pants().len());
        let rewritten = random_rewrite(&chain, steps, &mut rng);
        lines.push(outcome(
            format!("moves g={genus} n={boundary} trial={trial}"),
            compare(&rewritten),
            context.clone(),
        ));
    }
    lines
}

/// Gluing in two stages, gluing the composite in one stage, and the tensor
/// of the glued surface must all agree.
pub fn verify_functoriality<S: Scalar>(tqft: &Tqft<S>, trials: usize, seed: u64) -> Report {
    verify_functoriality_with(tqft, SurfaceSampler::default(), trials, seed)
}

pub fn verify_functoriality_with<S: Scalar>(
    tqft: &Tqft<S>,
    sampler: SurfaceSampler,
    trials: usize,
    seed: u64,
) -> Report {
    let tol = tqft.tolerance();
    let lines = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let surface = sampler.sample(&mut rng, "c");
            let first = random_glue_spec(&mut rng, &surface, 2);
            let middle = surface.glue(&first).expect("legal spec");
            let second = random_glue_spec(&mut rng, &middle, 2);
            let context = format!(
                "surface=\"{}\" first={first} second={second}",
                one_line(&surface)
            );
            let result = (|| {
                let composite = first.compose(&second)?;
                let z = tqft.invariant(&surface)?;
                let staged = apply_gluing(&apply_gluing(&z, &first)?, &second)?;
                let at_once = apply_gluing(&z, &composite)?;
                let glued_staged = tqft.invariant(&middle.glue(&second)?)?;
                let glued_at_once = tqft.invariant(&surface.glue(&composite)?)?;
                let mut why = Vec::new();
                if !same(&staged, &at_once, tol) {
                    why.push("staged!=composite");
                }
                if !same(&staged, &glued_staged, tol) {
                    why.push("evaluation!=glued");
                }
                if !same(&glued_staged, &glued_at_once, tol) {
                    why.push("glued_staged!=glued_composite");
                }
                Ok((!why.is_empty()).then(|| format!("mismatch={}", why.join(","))))
            })();
            outcome(format!("functor trial={trial}"), result, context)
        })
        .collect();
    Report { lines }
}

/// The tensor of a glued surface equals the contraction of the unglued one.
pub fn verify_gluing<S: Scalar>(tqft: &Tqft<S>, trials: usize, seed: u64) -> Report {
    let sampler = SurfaceSampler::default();
    let tol = tqft.tolerance();
    let lines = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let surface = sampler.sample(&mut rng, "c");
            let spec = random_glue_spec(&mut rng, &surface, 3);
            let context = format!("surface=\"{}\" spec={spec}", one_line(&surface));
            let result = (|| {
                let glued = tqft.invariant(&surface.glue(&spec)?)?;
                let evaluated = apply_gluing(&tqft.invariant(&surface)?, &spec)?;
                Ok((!same(&glued, &evaluated, tol))
                    .then(|| "mismatch=evaluation!=glued".to_owned()))
            })();
            outcome(format!("gluing trial={trial}"), result, context)
        })
        .collect();
    Report { lines }
}

/// The tensor of a disjoint union is the tensor product, index order included.
pub fn verify_monoidal<S: Scalar>(tqft: &Tqft<S>, trials: usize, seed: u64) -> Report {
    let sampler = SurfaceSampler {
        max_components: 2,
        max_genus: 2,
        max_circles: 3,
    };
    let tol = tqft.tolerance();
    let check = |left: &Surface, right: &Surface| -> Result<Option<String>, FunctorError> {
        let union = tqft.invariant(&left.disjoint_union(right)?)?;
        let product = tqft
            .invariant(left)?
            .tensor_product(&tqft.invariant(right)?)?;
        Ok((!union.approx_eq(&product, tol)).then(|| "mismatch=union!=product".to_owned()))
    };
    let mut lines: Vec<CheckLine> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let left = sampler.sample(&mut rng, "l");
            let right = sampler.sample(&mut rng, "r");
            let context = format!(
                "left=\"{}\" right=\"{}\"",
                one_line(&left),
                one_line(&right)
            );
            outcome(
                format!("monoidal trial={trial}"),
                check(&left, &right),
                context,
            )
        })
        .collect();
    let mut rng = trial_rng(seed, trials as u64);
    let left = sampler.sample(&mut rng, "l");
    lines.push(outcome(
        "monoidal unit".to_owned(),
        check(&left, &Surface::empty()),
        format!("left=\"{}\"", one_line(&left)),
    ));
    Report { lines }
}

/// Reversing orientation conjugates the tensor, on random surfaces.
pub fn verify_hermitian<S: Scalar>(tqft: &Tqft<S>, trials: usize, seed: u64) -> Report {
    let sampler = SurfaceSampler::default();
    let lines = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let surface = sampler.sample(&mut rng, "c");
            let context = format!("surface=\"{}\"", one_line(&surface));
            let result = tqft
                .hermitian_condition(&surface)
                .map(|ok| (!ok).then(|| "mismatch=reversed!=conjugate".to_owned()));
            outcome(format!("hermitian trial={trial}"), result, context)
        })
        .collect();
    Report { lines }
}

/// The first surface among disk, sphere, annulus, pants and small closed
/// surfaces on which the hermitian condition fails.
pub fn hermitian_witness<S: Scalar>(tqft: &Tqft<S>) -> Result<Option<Surface>, FunctorError> {
    let candidates = [
        "component orient=+ genus=0 boundary=[+a]",
        "component orient=+ genus=0 boundary=[]",
        "component orient=+ genus=0 boundary=[-a,+b]",
        "component orient=+ genus=0 boundary=[+a,+b,+c]",
        "component orient=+ genus=1 boundary=[]",
        "component orient=+ genus=1 boundary=[+a]",
        "component orient=+ genus=2 boundary=[]",
    ];
    for text in candidates {
        let s: Surface = text.parse().expect("valid literal");
        if !tqft.hermitian_condition(&s)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
