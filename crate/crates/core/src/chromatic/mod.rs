//! Chromatic numbers of Heuberger matrices of rank at most two.
//!
//! Every answer carries a [`Certificate`] naming the case that produced it;
//! [`crate::oracle::verify_certificate`] re-checks certificates from scratch.

mod four;
mod small;
mod three;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cayley::{CayleyError, CirculantParams};
use crate::intmat::{
    drop_dependent_columns, has_loops, is_bipartite, serialize_int, serialize_ints,
    serialize_opt_int, IntMatError, IntMatrix, LoopWitness, Overflow, SignedPermWitness,
    UnimodularWitness,
};

pub use four::{chi_4x2, chi_mx2_main, three_div_row_bound, FOUR_BY_TWO_TARGET};
pub use small::{
    chi_2x2, chi_circulant, chi_one_column, chi_one_row, circulant_case, triangularize_2x2,
};
pub use three::{chi_3x2, chi_l_shaped, is_mhnf, to_mhnf, ExceptionalFamily, MhnfForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChromaticError {
    #[error(transparent)]
    IntMat(#[from] IntMatError),
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error("invalid circulant: {0}")]
    Circulant(#[from] CayleyError),
    #[error("expected a {expected} matrix, got {rows}x{cols}")]
    Shape {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("no modified Hermite normal form found for a rank-two 3x2 matrix")]
    NoMhnf,
    /// A case analysis disagreed with a direct lattice computation. Never
    /// expected; reported, never hidden.
    #[error("internal inconsistency: {0}")]
    Inconsistent(&'static str),
}

pub type Result<T, E = ChromaticError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChromaticResult {
    /// Some `e_i` lies in the column lattice: the graph has loops.
    Uncolorable {
        witness: LoopWitness,
    },
    Chi {
        k: u32,
        certificate: Certificate,
    },
    /// Rank three or more: no exact formula is known.
    BeyondRankTwo {
        rows: usize,
        rank: usize,
    },
}

impl ChromaticResult {
    pub(crate) fn chi(k: u32, certificate: Certificate) -> Self {
        ChromaticResult::Chi { k, certificate }
    }

    pub fn value(&self) -> Option<u32> {
        match self {
            ChromaticResult::Chi { k, .. } => Some(*k),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ChromaticResult::Chi { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn is_uncolorable(&self) -> bool {
        matches!(self, ChromaticResult::Uncolorable { .. })
    }

    /// Same outcome ignoring certificates: both uncolorable, both `Chi(k)`
    /// with equal `k`, or both beyond rank two.
    pub fn same_outcome(&self, other: &ChromaticResult) -> bool {
        match (self, other) {
            (ChromaticResult::Uncolorable { .. }, ChromaticResult::Uncolorable { .. }) => true,
            (ChromaticResult::Chi { k: a, .. }, ChromaticResult::Chi { k: b, .. }) => a == b,
            (
                ChromaticResult::BeyondRankTwo { rank: a, .. },
                ChromaticResult::BeyondRankTwo { rank: b, .. },
            ) => a == b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// A matrix with no rows: the graph is a single vertex.
    Edgeless,
    Bipartite {
        #[serde(serialize_with = "serialize_ints")]
        column_sums: Vec<BigInt>,
    },
    TomatoCage {
        odd_entries: usize,
    },
    OneRowGcd {
        #[serde(serialize_with = "serialize_int")]
        e: BigInt,
    },
    TwoByTwoCase(Box<TwoByTwoCertificate>),
    CirculantCase(CirculantCertificate),
    LShaped {
        case: u8,
    },
    ThreeByTwoCase(Box<ThreeByTwoCertificate>),
    FourByTwo(Box<FourByTwoWitness>),
    FourByTwoNegative {
        permutations_checked: usize,
    },
    MainTheorem {
        rows: usize,
    },
    ZeroRowReduction {
        deleted_rows: Vec<usize>,
        inner: Box<Certificate>,
    },
    DependentColumnReduction {
        basis: IntMatrix,
        inner: Box<Certificate>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantCertificate {
    pub case: u8,
    #[serde(flatten)]
    pub params: CirculantParams,
}

/// `triangular = M·transform`, lower triangular with nonnegative diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoByTwoCertificate {
    pub case: u8,
    pub triangular: IntMatrix,
    pub transform: UnimodularWitness,
    #[serde(serialize_with = "serialize_int")]
    pub d: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub e: BigInt,
    #[serde(serialize_with = "serialize_opt_int")]
    pub q: Option<BigInt>,
    pub circulant: Option<CirculantCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeByTwoCertificate {
    pub case: u8,
    pub mhnf: MhnfForm,
    pub family: Option<ExceptionalFamily>,
}

/// `P·M·U` has rows `(1, a), (1, b), (1, c), (0, 1)` with `3 | a + b + c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourByTwoWitness {
    pub p: SignedPermWitness,
    pub u: UnimodularWitness,
    #[serde(serialize_with = "serialize_int")]
    pub a: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub b: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub c: BigInt,
}

fn shape_check(m: &IntMatrix, rows: usize, cols: usize, expected: &'static str) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(ChromaticError::Shape {
            expected,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

fn no_zero_rows(m: &IntMatrix) -> Result<()> {
    if (0..m.rows()).any(|i| m.is_zero_row(i)) {
        return Err(ChromaticError::Precondition("matrix has a zero row"));
    }
    Ok(())
}

/// Loop witness for a matrix the case analysis declared looped.
fn confirmed_loop(m: &IntMatrix) -> Result<ChromaticResult> {
    match has_loops(m)? {
        Some(witness) => Ok(ChromaticResult::Uncolorable { witness }),
        None => Err(ChromaticError::Inconsistent(
            "loop case reached but no e_i lies in the lattice",
        )),
    }
}

/// The dispatcher: chromatic number of the graph of any integer matrix.
///
/// Loops and bipartiteness are decided on `m` itself. Otherwise zero rows
/// are deleted, a single remaining row goes to the gcd rule, dependent
/// columns are replaced by a lattice basis, and the shape selects the
/// theorem. Errors only signal internal inconsistencies.
pub fn chi(m: &IntMatrix) -> Result<ChromaticResult> {
    if m.rows() == 0 {
        return Ok(ChromaticResult::chi(1, Certificate::Edgeless));
    }
    if let Some(witness) = has_loops(m)? {
        return Ok(ChromaticResult::Uncolorable { witness });
    }
    if is_bipartite(m)? {
        return Ok(ChromaticResult::chi(
            2,
            Certificate::Bipartite {
                column_sums: m.column_sums()?,
            },
        ));
    }
    let kept: Vec<usize> = (0..m.rows()).filter(|&i| !m.is_zero_row(i)).collect();
    if kept.len() == m.rows() {
        return chi_reduced(m);
    }
    let deleted_rows = (0..m.rows()).filter(|&i| m.is_zero_row(i)).collect();
    let inner = chi_reduced(&m.select_rows(&kept)?)?;
    Ok(wrap(inner, |inner| Certificate::ZeroRowReduction {
        deleted_rows,
        inner,
    }))
}

fn wrap(
    result: ChromaticResult,
    f: impl FnOnce(Box<Certificate>) -> Certificate,
) -> ChromaticResult {
    match result {
        ChromaticResult::Chi { k, certificate } => {
            ChromaticResult::chi(k, f(Box::new(certificate)))
        }
        other => other,
    }
}

/// No zero rows, loop-free, not bipartite.
fn chi_reduced(m: &IntMatrix) -> Result<ChromaticResult> {
    if m.rows() == 1 {
        return chi_one_row(m);
    }
    let basis = drop_dependent_columns(m)?;
    let dropped = basis.cols() < m.cols();
    let work = if dropped { &basis } else { m };
    let result = match work.shape() {
        (_, 1) => chi_one_column(work)?,
        (2, 2) => chi_2x2(work)?,
        (3, 2) => chi_3x2(work)?,
        (4, 2) => chi_4x2(work)?,
        (_, 2) => chi_mx2_main(work)?,
        (rows, rank) => return Ok(ChromaticResult::BeyondRankTwo { rows, rank }),
    };
    if !dropped {
        return Ok(result);
    }
    Ok(wrap(result, |inner| {
        Certificate::DependentColumnReduction { basis, inner }
    }))
}
