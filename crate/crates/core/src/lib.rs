//! Exact linear algebra and tensor products of finite-dimensional spaces.
//!
//! The exact layer is generic over [`Field`]; [`Rational`] and the prime
//! fields [`Fp`] are provided. The cross-norm layer works over `f32`/`f64`.
//! JSON literals for all of these live in [`io`].

pub mod bilinear;
pub mod crossnorm;
pub mod error;
pub mod field;
pub mod free;
pub mod io;
pub mod kron;
pub mod linalg;
pub mod realizations;
pub mod space;
pub mod tensor;

pub use bilinear::{extend_bilinear, matrix_unit_bilinear, BilinearMap};
pub use crossnorm::{
    crossnorm_certify, form_norm, hilbert_inner, injective_norm, injective_witness,
    projective_certificate, projective_norm, CertifyReport, InjectiveWitness, Method, NormResult,
    NormedFactor, ProjectiveCertificate, RealTensor, Tag,
};
pub use error::{Error, Result};
pub use field::{field_arith, is_prime, ArithOp, Field, FieldSpec, Fp, Rational, Scalar};
pub use free::{free_combine, free_embed, CarrierKey, FreeTerm, FreeVector};
pub use kron::{
    adjoint, kron, map_tensor_factorize, shuffle_permutation, KronMap, MapSpaceRealization,
};
pub use linalg::Matrix;
pub use realizations::{
    free_linearization, product_form, DualRealization, DualTensor, QuotientRealization,
    RelationGenerator,
};
pub use space::{
    complement, coordinate_functionals, factor_through_quotient, image_basis, kernel_basis,
    quotient, LinearMap, QuotientSpace, Subspace, Vector, VectorSpace,
};
pub use tensor::{
    associator, basis_tensors, canonical_iso, check_axioms, commute_iso, factorize,
    iterated_product, minimal_regular_cover, natural_map, single_tensor, sub_tensor, AxiomReport,
    IteratedProduct, RegularCover, SubTensor, TensorElement, TensorRealization,
};

pub type Gf2 = Fp<2>;
pub type Gf7 = Fp<7>;
pub type QMatrix = Matrix<Rational>;
pub type QVector = Vector<Rational>;
pub type RealTensor32 = RealTensor<f32>;
pub type RealTensor64 = RealTensor<f64>;
