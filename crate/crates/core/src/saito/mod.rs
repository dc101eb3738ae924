//! Coefficient matrices `M(ν|ε)`, their determinants and freeness certificates.

mod families;
pub(crate) mod search;

pub use families::{braid_certificate, braid_polynomial, cone_extension, hypercube_certificate, invariant_divisor_certificate};
pub use search::{saito_search, SearchOptions};

use crate::cox::{Rational, SparsePolynomial};
use crate::jacobian::{euler_vector, PolyVector, SyzygyKind, SyzygyVector};
use crate::poly_matrix::PolyMatrix;
use crate::toric::{ClassElement, Effectivity, ToricData};
use crate::{Error, Result};
use num_traits::Zero;

/// What a column of the coefficient matrix is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnRole {
    Syzygy { degree: ClassElement, kind: SyzygyKind },
    /// `ε_j` for the `j`-th Euler functional (0-based).
    Euler { functional: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoColumn {
    pub entries: PolyVector,
    pub role: ColumnRole,
}

/// Square matrix whose columns are syzygies and Euler vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoMatrix {
    pub columns: Vec<SaitoColumn>,
}

impl SaitoMatrix {
    pub fn to_poly_matrix(&self) -> PolyMatrix {
        let rows = self.columns.first().map_or(0, |c| c.entries.len());
        let nvars = self.columns.first().and_then(|c| c.entries.first()).map_or(0, SparsePolynomial::nvars);
        let cols: Vec<PolyVector> = self.columns.iter().map(|c| c.entries.clone()).collect();
        PolyMatrix::from_columns(nvars, rows, &cols)
    }

    pub fn determinant(&self) -> SparsePolynomial {
        self.to_poly_matrix().determinant()
    }

    pub fn syzygy_degrees(&self) -> Vec<ClassElement> {
        self.columns
            .iter()
            .filter_map(|c| match &c.role {
                ColumnRole::Syzygy { degree, .. } => Some(degree.clone()),
                ColumnRole::Euler { .. } => None,
            })
            .collect()
    }

    pub fn euler_count(&self) -> usize {
        self.columns
            .iter()
            .filter(|c| matches!(c.role, ColumnRole::Euler { .. }))
            .count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Free,
    NotCertified,
}

/// Effectivity of `β₀ + Σκ_j − β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionII {
    NotEffective,
    Effective { witness: Vec<u32> },
    /// The variety is not flagged complete.
    Skipped,
    /// The graded piece turned out to be infinite.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoCertificate {
    pub divisor: SparsePolynomial,
    pub divisor_class: ClassElement,
    pub matrix: SaitoMatrix,
    pub determinant: SparsePolynomial,
    /// `c` with `det = c·f`, when it exists.
    pub scalar: Option<Rational>,
    pub verdict: Verdict,
    /// A zero class per Euler column, then the syzygy degrees in column order.
    pub exponents: Vec<ClassElement>,
    pub condition_ii: ConditionII,
    /// `H⁰(O(−κ_i)) = 0` per syzygy column; `None` when not evaluated.
    pub condition_iii: Vec<Option<bool>>,
    /// Classes `−κ_i` of the summands of `T_X⟨D⟩` when the splitting follows.
    pub induced_splitting: Option<Vec<ClassElement>>,
    pub notes: Vec<String>,
}

impl SaitoCertificate {
    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::Free
    }

    pub fn kappas(&self) -> Vec<ClassElement> {
        self.matrix.syzygy_degrees()
    }
}

/// `M(ν|ε)`: the `n` syzygies followed by `ε_1, …, ε_ρ`.
pub fn coefficient_matrix(td: &ToricData, nu: &[SyzygyVector]) -> Result<SaitoMatrix> {
    let n = td.nvars() - td.rho();
    if nu.len() != n || n == 0 {
        return Err(Error::WrongSyzygyCount {
            expected: n.to_string(),
            got: nu.len(),
        });
    }
    let mut columns: Vec<SaitoColumn> = nu
        .iter()
        .map(|v| SaitoColumn {
            entries: v.entries.clone(),
            role: ColumnRole::Syzygy {
                degree: v.degree.clone(),
                kind: v.kind,
            },
        })
        .collect();
    columns.extend((0..td.rho()).map(|j| euler_column(td, j)));
    Ok(SaitoMatrix { columns })
}

pub(crate) fn euler_column(td: &ToricData, j: usize) -> SaitoColumn {
    SaitoColumn {
        entries: euler_vector(td, j),
        role: ColumnRole::Euler { functional: j },
    }
}

/// First Euler functional that does not vanish on `β`.
pub(crate) fn nondegenerate_functional(td: &ToricData, beta: &ClassElement) -> Result<usize> {
    (0..td.rho())
        .find(|&j| !td.euler_value(j, beta).is_zero())
        .ok_or(Error::EulerCoefficientDegenerate)
}

/// Checks the Saito criterion for `f` and the given syzygies.
///
/// `n = r − ρ` syzygies give `M(ν|ε)`. When `ρ ≥ 2`, `r − 1` syzygies are
/// also accepted and completed by a single Euler column `ε_j` for the first
/// `φ_j` with `φ_j(β) ≠ 0`. Each vector may be a plain or an extended
/// syzygy; its degree is read off its entries.
pub fn saito_verify(td: &ToricData, f: &SparsePolynomial, nu: &[PolyVector]) -> Result<SaitoCertificate> {
    let beta = f.homogeneous_degree(td)?;
    let (r, rho) = (td.nvars(), td.rho());
    let n = r - rho;
    let single_euler = rho >= 2 && nu.len() == r - 1;
    if nu.len() != n && !single_euler {
        let expected = if rho >= 2 { format!("{n} or {}", r - 1) } else { n.to_string() };
        return Err(Error::WrongSyzygyCount { expected, got: nu.len() });
    }
    let mut columns = Vec::with_capacity(r);
    for (j, entries) in nu.iter().enumerate() {
        columns.push(syzygy_column(td, f, entries.clone(), j + 1)?);
    }
    let mut notes = Vec::new();
    if single_euler {
        let j = nondegenerate_functional(td, &beta)?;
        columns.push(euler_column(td, j));
        notes.push(format!("single Euler column phi_{}", j + 1));
    } else {
        columns.extend((0..rho).map(|j| euler_column(td, j)));
    }
    certify(td, f, SaitoMatrix { columns }, notes)
}

/// Classifies a user vector, numbering failures from 1.
pub(crate) fn syzygy_column(td: &ToricData, f: &SparsePolynomial, entries: PolyVector, index: usize) -> Result<SaitoColumn> {
    if entries.len() != td.nvars() {
        return Err(Error::NotASyzygy {
            index,
            reason: format!("has {} entries, expected {}", entries.len(), td.nvars()),
        });
    }
    let degree = SyzygyVector::infer_degree(td, &entries).map_err(|e| match e {
        Error::NotASyzygy { reason, .. } => Error::NotASyzygy { index, reason },
        other => Error::NotASyzygy {
            index,
            reason: other.to_string(),
        },
    })?;
    let v = SyzygyVector::classify(td, f, entries, degree).map_err(|reason| Error::NotASyzygy { index, reason })?;
    Ok(SaitoColumn {
        entries: v.entries,
        role: ColumnRole::Syzygy {
            degree: v.degree,
            kind: v.kind,
        },
    })
}

/// Evaluates the determinant and the side conditions of an assembled matrix.
pub(crate) fn certify(
    td: &ToricData,
    f: &SparsePolynomial,
    matrix: SaitoMatrix,
    mut notes: Vec<String>,
) -> Result<SaitoCertificate> {
    let beta = f.homogeneous_degree(td)?;
    let kappas = matrix.syzygy_degrees();
    let kappa_sum = td.sum(&kappas);
    let det = matrix.determinant();
    if !det.is_zero() {
        let det_class = det.homogeneous_degree(td)?;
        debug_assert_eq!(det_class, td.add(&td.anticanonical, &kappa_sum));
    }
    let scalar = proportionality(&det, f);
    let verdict = if scalar.is_some() { Verdict::Free } else { Verdict::NotCertified };

    let excess = td.sub(&td.add(&td.anticanonical, &kappa_sum), &beta);
    let condition_ii = if !td.complete {
        ConditionII::Skipped
    } else {
        match td.is_effective(&excess) {
            Ok(Effectivity::NotEffective) => ConditionII::NotEffective,
            Ok(Effectivity::Effective(witness)) => ConditionII::Effective { witness },
            Err(_) => ConditionII::Undetermined,
        }
    };
    let condition_iii: Vec<Option<bool>> = kappas
        .iter()
        .map(|k| {
            if td.complete {
                td.h0_vanishes(&td.neg(k)).ok()
            } else {
                None
            }
        })
        .collect();
    let euler_count = matrix.euler_count();
    let induced_splitting = (verdict == Verdict::Free
        && euler_count == td.rho()
        && condition_iii.iter().all(|v| *v == Some(true)))
    .then(|| kappas.iter().map(|k| td.neg(k)).collect());

    let mut exponents = vec![td.zero_class(); euler_count];
    exponents.extend(kappas.iter().cloned());
    notes.insert(0, "reduced: user-asserted".to_string());
    Ok(SaitoCertificate {
        divisor: f.clone(),
        divisor_class: beta,
        matrix,
        determinant: det,
        scalar,
        verdict,
        exponents,
        condition_ii,
        condition_iii,
        induced_splitting,
        notes,
    })
}

/// `c` with `p = c·q` and `c ≠ 0`.
pub(crate) fn proportionality(p: &SparsePolynomial, q: &SparsePolynomial) -> Option<Rational> {
    let (pm, pc) = p.leading_term()?;
    let (qm, qc) = q.leading_term()?;
    if pm != qm {
        return None;
    }
    let c = pc / qc;
    (q.scale(&c) == *p).then_some(c)
}

#[cfg(test)]
mod tests;
