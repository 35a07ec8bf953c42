//! Metrics, connections, curvature, Nijenhuis torsion, Killing conditions,
//! the obstruction tensor, and the Hamiltonianity verifiers.

mod arr;
pub mod backend;
mod conditions;
pub mod geometry;
mod lie;
mod metric;
mod operator;
mod report;

pub use arr::{first_nonzero, Arr};
pub use conditions::{
    affinor_matrix, is_flat, killing_residual, linearity_residual, mokhov_conditions, nijenhuis_killing_conditions,
    nondegenerate_basis, verify_operator,
};
pub use lie::{exactness, exactness_check, lie_derivative_bivector, Exactness};
pub use metric::{block_diagonal, LinearMetric, MetricSerial};
pub use operator::OperatorSpec;
pub use report::{
    ConditionResult, Mode, VerificationReport, VerifyOptions, Witness, DEFAULT_SEED, MAX_REJECTIONS, SAMPLE_POINTS,
    SAMPLE_RANGE,
};

use backend::{Frac, Scalar, SymbolicBackend};
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, PolyMatrix, RationalFunction};

/// A mixed (1,1) tensor `L^i_j`, typically `h g^{-1}` for a pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affinor {
    entries: PolyMatrix,
}

impl Affinor {
    pub fn new(entries: PolyMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch(format!("affinor is {}x{}", entries.rows(), entries.cols())));
        }
        Ok(Affinor { entries })
    }

    /// `L = h g^{-1}` for a constant, non-degenerate `g`.
    pub fn of_pencil(g: &LinearMetric, h: &LinearMetric) -> Result<Self> {
        Ok(Affinor { entries: affinor_matrix(g, h)? })
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        self.entries.get(i, j)
    }

    /// `L g` is symmetric, i.e. `L` is self-adjoint for `g`.
    pub fn is_self_adjoint(&self, g: &LinearMetric) -> Result<bool> {
        Ok(self.entries.mul(g.matrix())?.is_symmetric())
    }
}

/// `N^k_{ij}` of an affinor, indexed `[k][i][j]`.
pub fn nijenhuis_torsion(l: &Affinor) -> Arr<MultiPoly> {
    geometry::nijenhuis(&l.entries, &MultiPoly::zero(l.entries.nvars()))
}

/// Levi-Civita connection with exact rational-function entries.
#[derive(Clone, Debug)]
pub struct Connection {
    /// `Γ^i_{jk}` at `[i][j][k]`.
    pub gamma: Arr<RationalFunction>,
    /// `b^{ij}_k = -g^{is}Γ^j_{sk}` at `[i][j][k]`.
    pub b_upper: Arr<RationalFunction>,
}

fn to_ratfun(a: &Arr<Frac>) -> Arr<RationalFunction> {
    a.map(|f| f.reduce().to_rational_function())
}

fn symbolic_for(g: &LinearMetric, others: &[&LinearMetric]) -> Result<SymbolicBackend> {
    let mut mats = vec![g.matrix()];
    mats.extend(others.iter().map(|m| m.matrix()));
    SymbolicBackend::new(g.n(), g.nvars(), &mats)
}

pub fn levi_civita(g: &LinearMetric) -> Result<Connection> {
    let be = symbolic_for(g, &[])?;
    let c = geometry::connection(&be, g.matrix())?;
    Ok(Connection { gamma: to_ratfun(&c.gamma), b_upper: to_ratfun(&c.b) })
}

/// `R^i_{jkl}` at `[i][j][k][l]`.
pub fn riemann_curvature(g: &LinearMetric) -> Result<Arr<RationalFunction>> {
    let be = symbolic_for(g, &[])?;
    let c = geometry::connection(&be, g.matrix())?;
    Ok(to_ratfun(&geometry::riemann(&be, &c)))
}

/// Obstruction tensor of a pair of metrics.
#[derive(Clone, Debug)]
pub struct ObstructionTensor {
    /// `T^i_{jk} = Γ̃^i_{jk} - Γ^i_{jk}`.
    pub t: Arr<RationalFunction>,
    /// `T^{ijk} = g^{ir} g̃^{ks} T^j_{rs}`.
    pub t_raised: Arr<RationalFunction>,
}

impl ObstructionTensor {
    pub fn is_zero(&self) -> bool {
        self.t.values().iter().all(RationalFunction::is_zero)
    }
}

pub fn obstruction_tensor(g: &LinearMetric, h: &LinearMetric) -> Result<ObstructionTensor> {
    let be = symbolic_for(g, &[h])?;
    let cg = geometry::connection(&be, g.matrix())?;
    let ch = geometry::connection(&be, h.matrix())?;
    let ob = geometry::obstruction(&be, g.matrix(), h.matrix(), &cg, &ch);
    Ok(ObstructionTensor { t: to_ratfun(&ob.t_mixed), t_raised: to_ratfun(&ob.t_raised) })
}

/// Whether every entry of a symbolic array vanishes.
fn all_zero<S: Scalar>(a: &Arr<S>) -> bool {
    a.values().iter().all(Scalar::is_zero)
}

/// Flatness via the classical Riemann tensor; slower than [`is_flat`], kept
/// as an independent cross-check.
pub fn is_flat_classical(g: &LinearMetric) -> Result<bool> {
    let be = symbolic_for(g, &[])?;
    let c = geometry::connection(&be, g.matrix())?;
    Ok(all_zero(&geometry::riemann(&be, &c)))
}
