//! Tensor calculus for two-dimensional topological quantum field theories.
//!
//! A theory is fixed by a vector `d_i` (the disk) and a symmetric 3-tensor
//! `p_ijk` (the pair of pants). Every oriented surface with labelled boundary
//! circles gets a tensor with one index per circle, and gluing two circles
//! contracts the matching indices. [`TqftData::check_relations`] decides
//! whether `(d, p)` actually defines a theory.
//!
//! ```
//! use tqft2d::{Rational, Surface, Tqft, TqftData};
//!
//! let data = TqftData::one_dimensional(Rational::from_integer(2.into())).unwrap();
//! let z = Tqft::new(data).unwrap();
//! let genus_two: Surface = "component orient=+ genus=2 boundary=[]".parse().unwrap();
//! let value = z.invariant(&genus_two).unwrap();
//! assert_eq!(value.as_scalar(), Some(&Rational::new(1.into(), 4.into())));
//! ```

pub mod cli;
pub mod functor;
pub mod network;
pub mod scalar;
pub mod surface;
pub mod tensor;
mod text;
pub mod tqft;

pub use functor::verify;
pub use functor::{apply_gluing, apply_isomorphism, FunctorError, Tqft};
pub use network::{ContractionOrder, Network};
pub use scalar::{Backend, Complex, Rational, Scalar, DEFAULT_TOLERANCE};
pub use surface::{BoundaryCircle, ConnectedSurface, GlueSpec, Orientation, Surface, SurfaceError};
pub use tensor::{LabeledTensor, Permutation, SignedIndex, TensorError};
pub use text::ParseError;
pub use tqft::{
    diagonal_family, grid_search_dim1, AnyTqft, BaseInvariants, RelationReport, TqftData, TqftError,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/tensors.md")]
    mod tensors {}
    #[doc = include_str!("../../../book/src/data.md")]
    mod data {}
    #[doc = include_str!("../../../book/src/functor.md")]
    mod functor {}
    #[doc = include_str!("../../../book/src/hermitian.md")]
    mod hermitian {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
