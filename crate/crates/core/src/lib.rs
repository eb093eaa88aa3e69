//! Hodge filtered generalized cohomology of spaces presented by
//! cohomological data.

pub mod abel_jacobi;
pub mod checks;
pub mod cli;
pub mod coefficients;
pub mod engine;
pub mod error;
pub mod io;
pub mod linalg;
pub mod numeric;
pub mod ring;
pub mod space;

pub use abel_jacobi::{periods, CurvePoint, Divisor, EllipticCurveData, LatticePoint};
pub use checks::{
    a1_invariance_check, grothendieck_check, mv_consistency, pbf_check, rational_splitting_check,
    transfer_normalization_check, Comparison, TransferReport,
};
pub use coefficients::{mu_rank, CoefficientField, CoefficientTheory};
pub use engine::{
    e_rank, filtered_dim, hfc_group, hodge_group, jacobian, point_table, Exactness,
    HFGroupDescriptor, Notation, PointTable, Variant,
};
pub use error::{Error, Result};
pub use linalg::{cokernel_of, kernel_rank, smith_normal_form, FgAbelianGroup, IntMatrix};
pub use numeric::{Cx, Real};
pub use ring::{Poly, RingModel};
pub use space::{KahlerModel, QuasiProjModel, Space};
