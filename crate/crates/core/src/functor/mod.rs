//! The functor assigning tensors to surfaces.
//!
//! Disk, annulus, sphere and torus take their tensors from the data directly.
//! Every other connected surface is cut into pairs of pants: each pants gets a
//! copy of `p`, each cutting circle becomes one `+` and one `-` index that are
//! contracted, and each boundary circle leaves one open index carrying that
//! circle's orientation. Components multiply.

pub mod decomposition;
pub mod verify;

use std::collections::HashMap;

use thiserror::Error;

use crate::network::{ContractionOrder, Network};
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};
use crate::surface::{ConnectedSurface, GlueSpec, Surface, SurfaceError};
use crate::tensor::{LabeledTensor, Permutation, SignedIndex, TensorError};
use crate::tqft::TqftData;

pub use decomposition::{
    decompose, is_exceptional, pants_decomposition, random_rewrite, DecompositionError, Pants,
    PantsDecomposition, Strategy,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum FunctorError {
    #[error("the data fails the relations: {0}")]
    RelationsFailed(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// A TQFT functor determined by its data.
#[derive(Clone, Debug)]
pub struct Tqft<S> {
    data: TqftData<S>,
    tolerance: f64,
}

impl<S: Scalar> Tqft<S> {
    /// Fails unless the data satisfies all four relations.
    pub fn new(data: TqftData<S>) -> Result<Self, FunctorError> {
        let report = data.check_relations();
        if !report.passed() {
            return Err(FunctorError::RelationsFailed(report.summary()));
        }
        Ok(Tqft {
            data,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    /// Skips the relation check. The assignment is then generally not well
    /// defined; this exists to exhibit exactly that.
    pub fn new_unchecked(data: TqftData<S>) -> Self {
        Tqft {
            data,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn data(&self) -> &TqftData<S> {
        &self.data
    }

    /// The tensor of `surface`, indices in boundary order.
    pub fn invariant(&self, surface: &Surface) -> Result<LabeledTensor<S>, FunctorError> {
        self.invariant_with(surface, Strategy::Chain)
    }

    pub fn invariant_with(
        &self,
        surface: &Surface,
        strategy: Strategy,
    ) -> Result<LabeledTensor<S>, FunctorError> {
        surface.check()?;
        let mut result = LabeledTensor::scalar(S::one());
        for c in &surface.components {
            result = result.tensor_product(&self.component_invariant(c, strategy)?)?;
        }
        Ok(result)
    }

    pub fn component_invariant(
        &self,
        component: &ConnectedSurface,
        strategy: Strategy,
    ) -> Result<LabeledTensor<S>, FunctorError> {
        let indices: Vec<SignedIndex> = component
            .boundary
            .iter()
            .map(|c| SignedIndex::new(c.label.clone(), c.orientation))
            .collect();
        let base = || self.data.base_invariants();
        match (component.genus, indices.len()) {
            (0, 0) => Ok(base().sphere),
            (1, 0) => Ok(base().torus),
            (0, 1) | (0, 2) => {
                let t = if indices.len() == 1 {
                    self.data.d().clone()
                } else {
                    self.data.annulus_tensor()
                };
                Ok(t.with_indices(indices)?)
            }
            (g, _) => {
                let labels: Vec<String> = indices.iter().map(|i| i.label.clone()).collect();
                let d = decomposition::decompose(g, &labels, strategy)?;
                self.decomposition_invariant(&d, component)
            }
        }
    }

    /// Contracts the pants network of `decomposition`, whose external circles
    /// must be the boundary circles of `component`.
    pub fn decomposition_invariant(
        &self,
        decomposition: &PantsDecomposition,
        component: &ConnectedSurface,
    ) -> Result<LabeledTensor<S>, FunctorError> {
        let network = self.pants_network(decomposition, component)?;
        let order: Vec<&str> = component
            .boundary
            .iter()
            .map(|c| c.label.as_str())
            .collect();
        Ok(network
            .contract(ContractionOrder::Greedy)?
            .reorder(&order)?)
    }

    /// The tensor network of a decomposition, before contraction.
    pub fn pants_network(
        &self,
        decomposition: &PantsDecomposition,
        component: &ConnectedSurface,
    ) -> Result<Network<S>, FunctorError> {
        let signs: HashMap<&str, _> = component
            .boundary
            .iter()
            .map(|c| (c.label.as_str(), c.orientation))
            .collect();
        for e in decomposition.external() {
            if !signs.contains_key(e.as_str()) {
                return Err(SurfaceError::UnknownLabel(e.clone()).into());
            }
        }
        if decomposition.external().len() != signs.len() {
            return Err(DecompositionError::External(
                component
                    .boundary
                    .iter()
                    .find(|c| !decomposition.external().contains(&c.label))
                    .map(|c| c.label.clone())
                    .unwrap_or_default(),
            )
            .into());
        }
        let mut seen: HashMap<&str, usize> = HashMap::new();
        let mut tensors = Vec::with_capacity(decomposition.pants().len());
        for pants in decomposition.pants() {
            let indices = pants
                .legs
                .iter()
                .map(|leg| match signs.get(leg.as_str()) {
                    Some(&sign) => SignedIndex::new(leg.clone(), sign),
                    None => {
                        let n = seen.entry(leg.as_str()).or_default();
                        *n += 1;
                        if *n == 1 {
                            SignedIndex::plus(format!("{leg}.0"))
                        } else {
                            SignedIndex::minus(format!("{leg}.1"))
                        }
                    }
                })
                .collect();
            tensors.push(self.data.p().with_indices(indices)?);
        }
        let pairs = decomposition
            .internal()
            .iter()
            .map(|c| (format!("{c}.0"), format!("{c}.1")))
            .collect();
        Ok(Network::new(tensors, pairs)?)
    }

    /// The scalar of the closed genus-`genus` surface.
    pub fn closed_invariant(&self, genus: u32) -> Result<S, FunctorError> {
        let surface = Surface::connected(ConnectedSurface::positive(genus, Vec::new()))?;
        let t = self.invariant(&surface)?;
        Ok(t.as_scalar().expect("closed surfaces give scalars").clone())
    }

    /// Whether reversing the orientation of `surface` conjugates its tensor:
    /// `Z(reversed) = conj(Z)` with every index moved to the conjugate space.
    pub fn hermitian_condition(&self, surface: &Surface) -> Result<bool, FunctorError> {
        let z = self.invariant(surface)?;
        let reversed = self.invariant(&surface.reverse_orientation())?;
        Ok(reversed.approx_eq(&z.conjugate_entries().flip_signs(), self.tolerance))
    }
}

/// The image of a gluing: contracts each pair with the Kronecker pairing.
pub fn apply_gluing<S: Scalar>(
    tensor: &LabeledTensor<S>,
    spec: &GlueSpec,
) -> Result<LabeledTensor<S>, TensorError> {
    spec.pairs()
        .iter()
        .try_fold(tensor.clone(), |t, (a, b)| t.contract(a, b))
}

/// The image of an isomorphism: permutes the indices, then moves the named
/// indices to the conjugate space with unchanged components.
pub fn apply_isomorphism<S: Scalar>(
    tensor: &LabeledTensor<S>,
    perm: &Permutation,
    flips: &[&str],
) -> Result<LabeledTensor<S>, TensorError> {
    tensor.permute_indices(perm)?.flip_labels(flips)
}
