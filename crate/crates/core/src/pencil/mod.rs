//! Spectral classification of the affinor `L = g̃ g^{-1}`, isometries of the
//! first metric, solvers for the admissible linear parts of the second
//! metric, and Lie-series normal forms of single-Jordan-block pencils.

mod complexify;
mod families;
mod killing;
mod normalize;
mod segre;

pub use complexify::{complexify, ComplexLinearMetric};
pub use families::{jordan_g0, mu, p_coeff, solve_jordan_family, solve_linear_conditions, x_field, SolutionFamily};
pub use killing::{killing_bivector_space, killing_vector_basis, same_span, symmetrized_products, KillingBasis};
pub use normalize::{
    lie_flow_normalize, lie_flow_normalize_constant_eig, lie_series, scaling_action, FlowStep, JordanFamilyCoeffs,
    NormalForm,
};
pub use segre::{default_points, segre_at, segre_symbol, segre_type, EigenBlocks, SegreReport, SegreShape, SEGRE_POINTS};

use crate::error::Result;
use crate::tensor::{Affinor, LinearMetric};

/// `L^i_j = g̃^{ik} g_{kj}` for a constant non-degenerate `g`.
pub fn affinor(g: &LinearMetric, h: &LinearMetric) -> Result<Affinor> {
    Affinor::of_pencil(g, h)
}
