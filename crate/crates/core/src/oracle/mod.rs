//! Independent verification machinery: Gaussian quadrature, a symmetric
//! tridiagonal eigensolver, numerical overlaps and normalizations. Everything
//! here is closed-form-free on the wavefunction side, so it can sit in
//! judgement over the closed forms.

mod eigen;
mod integrals;
mod quadrature;

pub use eigen::{sturm_count, symtri_eigen, EigenDecomposition, SymTriMatrix};
pub use integrals::{
    angular_overlap, hypermomentum_matrix, matrix_element_numeric, normalize_numeric,
    overlap_polar_euler, polar_mode_overlap, radial_overlap, w_table_quadrature, Basis,
    NormalizeKind, Operator, Overlap, PolarAxis, CONVERGENCE_TOL,
};
pub use quadrature::{golub_welsch, QuadratureKind, QuadratureRule};

pub(crate) use integrals::{congruence_columns, congruence_rows};
