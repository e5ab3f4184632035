//! Combinatorial oriented surfaces with labelled boundary circles.
//!
//! A connected surface is recorded by its genus, its own orientation and its
//! ordered boundary circles. Nothing about an embedding is stored: the tensor
//! assigned to a surface depends only on this data. Gluing two circles either
//! adds a handle (both circles on one component) or merges two components.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use thiserror::Error;

use crate::text::{self, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn symbol(self) -> char {
        match self {
            Orientation::Plus => '+',
            Orientation::Minus => '-',
        }
    }
}

impl Neg for Orientation {
    type Output = Orientation;

    fn neg(self) -> Orientation {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryCircle {
    pub label: String,
    pub orientation: Orientation,
}

impl BoundaryCircle {
    pub fn new(label: impl Into<String>, orientation: Orientation) -> Self {
        BoundaryCircle {
            label: label.into(),
            orientation,
        }
    }

    pub fn plus(label: impl Into<String>) -> Self {
        Self::new(label, Orientation::Plus)
    }

    pub fn minus(label: impl Into<String>) -> Self {
        Self::new(label, Orientation::Minus)
    }
}

impl fmt::Display for BoundaryCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.orientation, self.label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectedSurface {
    pub genus: u32,
    pub orientation: Orientation,
    pub boundary: Vec<BoundaryCircle>,
}

/// Sorted description of a component, used to compare surfaces up to the
/// order of components and of boundary circles.
pub type ComponentSignature = (u32, Orientation, Vec<(String, Orientation)>);

impl ConnectedSurface {
    pub fn new(genus: u32, orientation: Orientation, boundary: Vec<BoundaryCircle>) -> Self {
        ConnectedSurface {
            genus,
            orientation,
            boundary,
        }
    }

    /// Positively oriented surface with the given boundary.
    pub fn positive(genus: u32, boundary: Vec<BoundaryCircle>) -> Self {
        Self::new(genus, Orientation::Plus, boundary)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.boundary.len() as i64
    }

    pub fn signature(&self) -> ComponentSignature {
        let mut circles: Vec<_> = self
            .boundary
            .iter()
            .map(|c| (c.label.clone(), c.orientation))
            .collect();
        circles.sort();
        (self.genus, self.orientation, circles)
    }

    fn position(&self, label: &str) -> Option<usize> {
        self.boundary.iter().position(|c| c.label == label)
    }
}

impl fmt::Display for ConnectedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component orient={} genus={} boundary=[",
            self.orientation, self.genus
        )?;
        for (i, c) in self.boundary.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// A finite disjoint union of connected surfaces. The empty union is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Surface {
    pub components: Vec<ConnectedSurface>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateLabel(String),
    InvalidLabel(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLabel(l) => write!(f, "duplicate label {l}"),
            Violation::InvalidLabel(l) => write!(f, "invalid label `{l}`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid surface: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("label {0} occurs on both surfaces")]
    LabelCollision(String),
    #[error("unknown boundary label {0}")]
    UnknownLabel(String),
    #[error("circles {0} and {1} have the same orientation")]
    OrientationMismatch(String, String),
    #[error("label {0} is used twice in the gluing pairs")]
    LabelReused(String),
    #[error("label {0} was already consumed by the first gluing")]
    LabelConsumed(String),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl Surface {
    pub fn empty() -> Self {
        Surface::default()
    }

    pub fn new(components: Vec<ConnectedSurface>) -> Result<Self, SurfaceError> {
        let s = Surface { components };
        s.check()?;
        Ok(s)
    }

    pub fn connected(component: ConnectedSurface) -> Result<Self, SurfaceError> {
        Self::new(vec![component])
    }

    /// Every invariant violation, in order of discovery.
    pub fn validate(&self) -> Vec<Violation> {
        let mut seen = HashSet::new();
        let mut reported = HashSet::new();
        let mut out = Vec::new();
        for circle in self.circles() {
            if !text::is_label(&circle.label) {
                out.push(Violation::InvalidLabel(circle.label.clone()));
            }
            if !seen.insert(circle.label.as_str()) && reported.insert(circle.label.as_str()) {
                out.push(Violation::DuplicateLabel(circle.label.clone()));
            }
        }
        out
    }

    pub fn check(&self) -> Result<(), SurfaceError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(SurfaceError::Invalid(violations))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn circles(&self) -> impl Iterator<Item = &BoundaryCircle> {
        self.components.iter().flat_map(|c| c.boundary.iter())
    }

    pub fn labels(&self) -> Vec<&str> {
        self.circles().map(|c| c.label.as_str()).collect()
    }

    pub fn circle(&self, label: &str) -> Option<&BoundaryCircle> {
        self.circles().find(|c| c.label == label)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components
            .iter()
            .map(ConnectedSurface::euler_characteristic)
            .sum()
    }

    pub fn disjoint_union(&self, other: &Surface) -> Result<Surface, SurfaceError> {
        let mine: HashSet<&str> = self.labels().into_iter().collect();
        if let Some(clash) = other.labels().into_iter().find(|l| mine.contains(l)) {
            return Err(SurfaceError::LabelCollision(clash.to_owned()));
        }
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(Surface { components })
    }

    /// Negates the orientation of every component and every boundary circle.
    pub fn reverse_orientation(&self) -> Surface {
        let components = self
            .components
            .iter()
            .map(|c| ConnectedSurface {
                genus: c.genus,
                orientation: -c.orientation,
                boundary: c
                    .boundary
                    .iter()
                    .map(|b| BoundaryCircle::new(b.label.clone(), -b.orientation))
                    .collect(),
            })
            .collect();
        Surface { components }
    }

    /// Glues the circles of each pair, one pair at a time.
    ///
    /// Two circles on the same component add a handle. Circles on different
    /// components merge them into one component that takes the position and
    /// orientation of the earlier component, with the earlier component's
    /// remaining circles first.
    pub fn glue(&self, spec: &GlueSpec) -> Result<Surface, SurfaceError> {
        self.check()?;
        self.check_spec(spec)?;
        let mut components = self.components.clone();
        for (a, b) in spec.pairs() {
            let (ca, pa) = locate(&components, a)?;
            let (cb, pb) = locate(&components, b)?;
            if ca == cb {
                let comp = &mut components[ca];
                comp.genus += 1;
                let (hi, lo) = (pa.max(pb), pa.min(pb));
                comp.boundary.remove(hi);
                comp.boundary.remove(lo);
            } else {
                let (first, second) = if ca < cb { (ca, cb) } else { (cb, ca) };
                let removed = components.remove(second);
                let consumed = [a.as_str(), b.as_str()];
                let comp = &mut components[first];
                comp.genus += removed.genus;
                comp.boundary
                    .retain(|c| !consumed.contains(&c.label.as_str()));
                comp.boundary.extend(
                    removed
                        .boundary
                        .into_iter()
                        .filter(|c| !consumed.contains(&c.label.as_str())),
                );
            }
        }
        Ok(Surface { components })
    }

    /// Checks that every pair names two existing circles of opposite sign.
    pub fn check_spec(&self, spec: &GlueSpec) -> Result<(), SurfaceError> {
        for (a, b) in spec.pairs() {
            let ca = self
                .circle(a)
                .ok_or_else(|| SurfaceError::UnknownLabel(a.clone()))?;
            let cb = self
                .circle(b)
                .ok_or_else(|| SurfaceError::UnknownLabel(b.clone()))?;
            if ca.orientation == cb.orientation {
                return Err(SurfaceError::OrientationMismatch(a.clone(), b.clone()));
            }
        }
        Ok(())
    }

    /// Components as a sorted multiset of signatures.
    pub fn canonical(&self) -> Vec<ComponentSignature> {
        let mut sigs: Vec<_> = self
            .components
            .iter()
            .map(ConnectedSurface::signature)
            .collect();
        sigs.sort();
        sigs
    }
}

fn locate(components: &[ConnectedSurface], label: &str) -> Result<(usize, usize), SurfaceError> {
    components
        .iter()
        .enumerate()
        .find_map(|(ci, c)| c.position(label).map(|p| (ci, p)))
        .ok_or_else(|| SurfaceError::UnknownLabel(label.to_owned()))
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Surface {
    type Err = ParseError;

    /// Parses one `component orient=+ genus=1 boundary=[+a,-b]` line per
    /// component. Blank input is the empty surface.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let mut components = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (line_no, line) in text::content_lines(input) {
            let toks = text::tokens(line);
            let head = toks[0];
            if head.text != "component" {
                return Err(ParseError::new(
                    line_no,
                    head.column,
                    format!("expected `component`, found `{}`", head.text),
                ));
            }
            if toks.len() != 4 {
                let column = toks.get(4).map_or(line.len() + 1, |t| t.column);
                return Err(ParseError::new(
                    line_no,
                    column,
                    "expected `component orient=<+|-> genus=<n> boundary=[...]`",
                ));
            }
            let orient = text::key_value(line_no, toks[1], "orient")?;
            let orientation = match orient {
                "+" => Orientation::Plus,
                "-" => Orientation::Minus,
                other => {
                    return Err(ParseError::new(
                        line_no,
                        toks[1].column + 7,
                        format!("orientation must be `+` or `-`, found `{other}`"),
                    ))
                }
            };
            let genus_text = text::key_value(line_no, toks[2], "genus")?;
            let genus: u32 = genus_text.parse().map_err(|_| {
                ParseError::new(
                    line_no,
                    toks[2].column + 6,
                    format!("genus must be a non-negative integer, found `{genus_text}`"),
                )
            })?;
            let list = text::key_value(line_no, toks[3], "boundary")?;
            let mut boundary = Vec::new();
            for (sign, label, column) in text::signed_labels(line_no, toks[3].column + 9, list)? {
                if let Some(prev) = seen.insert(label.clone(), line_no) {
                    return Err(ParseError::new(
                        line_no,
                        column,
                        format!("duplicate label {label} (first used on line {prev})"),
                    ));
                }
                boundary.push(BoundaryCircle::new(label, sign));
            }
            components.push(ConnectedSurface::new(genus, orientation, boundary));
        }
        Ok(Surface { components })
    }
}

/// Pairs of boundary labels to be glued, each label used at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GlueSpec {
    pairs: Vec<(String, String)>,
}

impl GlueSpec {
    pub fn empty() -> Self {
        GlueSpec::default()
    }

    pub fn new<A, B>(pairs: impl IntoIterator<Item = (A, B)>) -> Result<Self, SurfaceError>
    where
        A: Into<String>,
        B: Into<String>,
    {
        let pairs: Vec<(String, String)> = pairs
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        let mut seen = HashSet::new();
        for (a, b) in &pairs {
            for l in [a, b] {
                if !seen.insert(l.as_str()) {
                    return Err(SurfaceError::LabelReused(l.clone()));
                }
            }
        }
        Ok(GlueSpec { pairs })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.pairs
            .iter()
            .flat_map(|(a, b)| [a.as_str(), b.as_str()])
    }

    /// The gluing that performs `self` and then `second` in one step.
    pub fn compose(&self, second: &GlueSpec) -> Result<GlueSpec, SurfaceError> {
        let consumed: HashSet<&str> = self.labels().collect();
        if let Some(l) = second.labels().find(|l| consumed.contains(l)) {
            return Err(SurfaceError::LabelConsumed(l.to_owned()));
        }
        let mut pairs = self.pairs.clone();
        pairs.extend(second.pairs.iter().cloned());
        Ok(GlueSpec { pairs })
    }
}

impl fmt::Display for GlueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}:{b}")?;
        }
        Ok(())
    }
}

impl FromStr for GlueSpec {
    type Err = ParseError;

    /// Parses `a:b,c:d`; the column in errors is relative to the argument.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let input = input.trim();
        if input.is_empty() {
            return Ok(GlueSpec::empty());
        }
        let mut pairs = Vec::new();
        let mut column = 1;
        for item in input.split(',') {
            let (a, b) = item
                .split_once(':')
                .filter(|(a, b)| text::is_label(a) && text::is_label(b))
                .ok_or_else(|| {
                    ParseError::new(1, column, format!("expected `label:label`, found `{item}`"))
                })?;
            pairs.push((a.to_owned(), b.to_owned()));
            column += item.len() + 1;
        }
        GlueSpec::new(pairs).map_err(|e| ParseError::new(1, 1, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(label: &str, o: Orientation) -> ConnectedSurface {
        ConnectedSurface::new(0, o, vec![BoundaryCircle::new(label, o)])
    }

    fn surf(text: &str) -> Surface {
        text.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(Surface::empty().validate().is_empty());
        assert!(surf("component orient=+ genus=0 boundary=[+a]")
            .validate()
            .is_empty());
        let bad = Surface {
            components: vec![disk("a", Orientation::Plus), disk("a", Orientation::Minus)],
        };
        let v = bad.validate();
        assert_eq!(v, vec![Violation::DuplicateLabel("a".into())]);
        assert_eq!(v[0].to_string(), "duplicate label a");
        let odd = Surface {
            components: vec![disk("a b", Orientation::Plus)],
        };
        assert_eq!(odd.validate(), vec![Violation::InvalidLabel("a b".into())]);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(
            surf("component orient=+ genus=0 boundary=[+a]").euler_characteristic(),
            1
        );
        assert_eq!(
            surf("component orient=+ genus=1 boundary=[]").euler_characteristic(),
            0
        );
        assert_eq!(
            surf("component orient=+ genus=0 boundary=[+a,+b,+c]").euler_characteristic(),
            -1
        );
    }

    #[test]
    fn unions() {
        let d = Surface::connected(disk("a", Orientation::Plus)).unwrap();
        assert_eq!(Surface::empty().disjoint_union(&d).unwrap(), d);
        assert_eq!(d.disjoint_union(&Surface::empty()).unwrap(), d);
        let e = Surface::connected(disk("b", Orientation::Minus)).unwrap();
        assert_eq!(d.disjoint_union(&e).unwrap().components.len(), 2);
        assert_eq!(
            d.disjoint_union(&d),
            Err(SurfaceError::LabelCollision("a".into()))
        );
        let ann = surf("component orient=+ genus=0 boundary=[-a,+b]");
        let pants = surf("component orient=+ genus=0 boundary=[+c,+d,+e]");
        let u = ann.disjoint_union(&pants).unwrap();
        assert_eq!(u.components, [ann.components, pants.components].concat());
    }

    #[test]
    fn reversal() {
        let d = surf("component orient=+ genus=0 boundary=[+a]");
        assert_eq!(
            d.reverse_orientation(),
            surf("component orient=- genus=0 boundary=[-a]")
        );
        assert_eq!(Surface::empty().reverse_orientation(), Surface::empty());
        let s = surf(
            "component orient=- genus=2 boundary=[+a,-b]\ncomponent orient=+ genus=0 boundary=[]",
        );
        assert_eq!(s.reverse_orientation().reverse_orientation(), s);
    }

    #[test]
    fn two_disks_make_a_sphere() {
        let s = surf(
            "component orient=- genus=0 boundary=[-a]\ncomponent orient=+ genus=0 boundary=[+b]",
        );
        let g = s.glue(&GlueSpec::new([("a", "b")]).unwrap()).unwrap();
        assert_eq!(g, surf("component orient=- genus=0 boundary=[]"));
    }

    #[test]
    fn annulus_closes_to_a_torus() {
        let s = surf("component orient=+ genus=0 boundary=[-a,+b]");
        let g = s.glue(&GlueSpec::new([("a", "b")]).unwrap()).unwrap();
        assert_eq!(g, surf("component orient=+ genus=1 boundary=[]"));
    }

    #[test]
    fn disk_into_pants_is_an_annulus() {
        let s = surf("component orient=+ genus=0 boundary=[+a]\ncomponent orient=+ genus=0 boundary=[-b,+c,+d]");
        let g = s.glue(&GlueSpec::new([("a", "b")]).unwrap()).unwrap();
        assert_eq!(g, surf("component orient=+ genus=0 boundary=[+c,+d]"));
    }

    #[test]
    fn gluing_errors() {
        let s = surf("component orient=+ genus=0 boundary=[+a,+b,-c]");
        let spec = |p: &[(&str, &str)]| GlueSpec::new(p.iter().copied()).unwrap();
        assert_eq!(
            s.glue(&spec(&[("a", "z")])),
            Err(SurfaceError::UnknownLabel("z".into()))
        );
        assert_eq!(
            s.glue(&spec(&[("a", "b")])),
            Err(SurfaceError::OrientationMismatch("a".into(), "b".into()))
        );
        assert_eq!(
            GlueSpec::new([("a", "c"), ("c", "b")]),
            Err(SurfaceError::LabelReused("c".into()))
        );
    }

    #[test]
    fn merged_component_keeps_first_orientation() {
        let s = surf("component orient=- genus=1 boundary=[+a,+x]\ncomponent orient=+ genus=2 boundary=[+y,-b]");
        let g = s.glue(&GlueSpec::new([("b", "a")]).unwrap()).unwrap();
        assert_eq!(g, surf("component orient=- genus=3 boundary=[+x,+y]"));
    }

    #[test]
    fn composition_of_gluings() {
        let s = surf("component orient=+ genus=0 boundary=[+a]\ncomponent orient=+ genus=0 boundary=[-b,+c,-d]");
        let first = GlueSpec::new([("a", "b")]).unwrap();
        let second = GlueSpec::new([("c", "d")]).unwrap();
        let both = first.compose(&second).unwrap();
        assert_eq!(both.pairs().len(), 2);
        let torus = surf("component orient=+ genus=1 boundary=[]");
        assert_eq!(s.glue(&both).unwrap(), torus);
        assert_eq!(s.glue(&first).unwrap().glue(&second).unwrap(), torus);
        assert_eq!(GlueSpec::empty().compose(&second).unwrap(), second);
        assert_eq!(
            first.compose(&GlueSpec::new([("a", "c")]).unwrap()),
            Err(SurfaceError::LabelConsumed("a".into()))
        );
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = "component orient=+ genus=-1 boundary=[]"
            .parse::<Surface>()
            .unwrap_err();
        assert_eq!((err.line, err.column), (1, 26));
        let err =
            "\ncomponent orient=+ genus=0 boundary=[+a]\ncomponent orient=+ genus=0 boundary=[-a]"
                .parse::<Surface>()
                .unwrap_err();
        assert_eq!((err.line, err.column), (3, 39));
        assert!(err.message.contains("duplicate label a"));
        let err = "compnent".parse::<Surface>().unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = "component orient=x genus=0 boundary=[]"
            .parse::<Surface>()
            .unwrap_err();
        assert_eq!(err.column, 18);
    }

    #[test]
    fn glue_spec_text() {
        let spec: GlueSpec = "a:b,c:d".parse().unwrap();
        assert_eq!(spec.to_string(), "a:b,c:d");
        assert_eq!("a:b,cd".parse::<GlueSpec>().unwrap_err().column, 5);
        assert!("a:b,b:c".parse::<GlueSpec>().is_err());
    }
}
