//! Exact polynomial arithmetic: prime fields, quadratic extensions,
//! homogeneous binary forms, bihomogeneous forms on ruled surfaces, gcds,
//! resultants, and root enumeration.

pub mod bihom;
pub mod field;
pub mod form;
pub mod poly;

pub use bihom::{common_zeros_bihom, BihomError, BihomForm, BihomPoint};
pub use field::{Field, FieldError, PrimeField, QuadElem, QuadExtField};
pub use form::{
    det_form_matrix, gcd_list, projective_roots_fp2, BinaryForm, FormError, ProjectiveRoots,
};
pub use poly::{
    distinct_irreducible_factors, roots_in_base, roots_up_to_quadratic, Poly, QuotientField,
};
