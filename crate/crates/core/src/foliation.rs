//! Foliations induced by tuples of homogeneous polynomials.
//!
//! [`foliation_check`] evaluates whether a tuple `f = (f_1, …, f_k)` on a
//! projective simplicial toric variety meets the hypotheses under which
//! the kernel of the induced map on the tangent sheaf is a foliation of
//! codimension `k − q`, `q` being the rank of the degree map `Z^k → Cl(X)`.
//! Here `n` is the number of Cox variables.

use crate::cox::{gcd, Rational, SparsePolynomial};
use crate::jacobian::{jacobian, syzygy_basis, SyzygySpace};
use crate::lattice::{integer_solve, smith_normal_form, IntMatrix};
use crate::saito::search::combinations;
use crate::toric::{ClassElement, ToricData};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Degrees of a tuple and the free part of the degree map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<ClassElement>,
    /// `ρ × k`; column `i` holds the free coordinates of `β_i`.
    pub matrix: IntMatrix,
}

impl DegreeProfile {
    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    fn subset_rank(&self, idx: &[usize]) -> usize {
        let cols: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.matrix.column(i)).collect();
        IntMatrix::from_columns(&cols, self.matrix.rows()).rank()
    }
}

/// Rank degree `q`, the profile, and the `k × q` matrix `A` of coordinates
/// of each `β_i` in a basis of the lattice spanned by the degrees.
pub fn degree_rank(td: &ToricData, fs: &[SparsePolynomial]) -> Result<(usize, DegreeProfile, IntMatrix)> {
    let mut degrees = Vec::with_capacity(fs.len());
    for (i, f) in fs.iter().enumerate() {
        let beta = f.homogeneous_degree(td)?;
        if td.projective && beta.free_is_zero() {
            return Err(Error::ZeroFreePart { index: i + 1 });
        }
        degrees.push(beta);
    }
    let cols: Vec<Vec<BigInt>> = degrees.iter().map(|b| b.free.clone()).collect();
    let matrix = IntMatrix::from_columns(&cols, td.rho());
    let k = fs.len();

    // M = U⁻¹ S V⁻¹, so the first q rows of V⁻¹ are the coordinates
    let snf = smith_normal_form(&matrix);
    let q = snf.rank();
    let mut a = IntMatrix::zeros(k, q);
    for j in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[j] = BigInt::one();
        let column = integer_solve(&snf.v, &e).expect("unimodular transform");
        for (t, value) in column.into_iter().take(q).enumerate() {
            a[(j, t)] = value;
        }
    }
    Ok((q, DegreeProfile { degrees, matrix }, a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyBacharach {
    pub holds: bool,
    /// 0-based indices of `k − 1` degrees lying in a hyperplane.
    pub offending: Option<Vec<usize>>,
}

/// No `k − 1` of the points `[β_i] ∈ P^{q−1}` lie on a hyperplane.
pub fn cayley_bacharach(profile: &DegreeProfile) -> CayleyBacharach {
    let q = profile.rank();
    let k = profile.k();
    if q <= 1 || k == 0 {
        return CayleyBacharach {
            holds: true,
            offending: None,
        };
    }
    let offending = combinations(k, k - 1)
        .into_iter()
        .find(|subset| profile.subset_rank(subset) < q);
    CayleyBacharach {
        holds: offending.is_none(),
        offending,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coprimality {
    pub coprime: bool,
    /// First pair `(i, j)`, 0-based, with a nonconstant common factor.
    pub witness: Option<(usize, usize, SparsePolynomial)>,
}

pub fn pairwise_coprime(fs: &[SparsePolynomial]) -> Coprimality {
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let g = gcd(&fs[i], &fs[j]);
            if !(g.is_constant() && !g.is_zero()) {
                return Coprimality {
                    coprime: false,
                    witness: Some((i, j, g)),
                };
            }
        }
    }
    Coprimality {
        coprime: true,
        witness: None,
    }
}

/// Jacobian criterion: the `f_i` are algebraically independent iff their
/// Jacobian matrix has full rank `k`.
pub fn algebraically_independent(td: &ToricData, fs: &[SparsePolynomial]) -> Result<bool> {
    if fs.len() > td.nvars() {
        return Ok(false);
    }
    Ok(jacobian(td, fs)?.symbolic_rank() == fs.len())
}

/// Degree-`κ` sections of the logarithmic tangent sheaf of the tuple.
pub fn tangent_sections(td: &ToricData, fs: &[SparsePolynomial], kappa: &ClassElement) -> Result<SyzygySpace> {
    syzygy_basis(td, fs, kappa)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FoliationFailure {
    TooManyPolynomials,
    RankWindow,
    NotCoprime,
    NotIndependent,
    CayleyBacharach,
}

impl FoliationFailure {
    pub fn code(self) -> &'static str {
        match self {
            FoliationFailure::TooManyPolynomials => "k_below_n",
            FoliationFailure::RankWindow => "rank_window",
            FoliationFailure::NotCoprime => "coprime",
            FoliationFailure::NotIndependent => "independent",
            FoliationFailure::CayleyBacharach => "cayley_bacharach",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoliationVerdict {
    Applies,
    /// First failing hypothesis in check order.
    DoesNotApply(FoliationFailure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationVerdicts {
    /// `k < n`.
    pub k_below_n: bool,
    /// `k − n < q < k`.
    pub rank_window: bool,
    pub coprime: bool,
    pub independent: bool,
    pub cayley_bacharach: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationReport {
    pub q: usize,
    pub k: usize,
    pub n: usize,
    pub profile: DegreeProfile,
    pub verdicts: FoliationVerdicts,
    pub coprime_witness: Option<(usize, usize, SparsePolynomial)>,
    pub cayley_bacharach_offending: Option<Vec<usize>>,
    /// `k − q`; meaningful when the verdict is `Applies`.
    pub codimension: usize,
    pub phi_image_rank: usize,
    pub phi_kernel_rank: usize,
    pub a_matrix: IntMatrix,
    /// Whether the maximal minors of `diag(f)·A` have no common factor.
    /// `None` when an earlier hypothesis failed.
    pub minor_gcd_trivial: Option<bool>,
    pub overall: FoliationVerdict,
    pub notes: Vec<String>,
}

impl FoliationReport {
    pub fn applies(&self) -> bool {
        self.overall == FoliationVerdict::Applies
    }
}

/// gcd of `det(A_I)·Π_{i∈I} f_i` over all `q`-subsets `I`.
fn minor_gcd(fs: &[SparsePolynomial], a: &IntMatrix, q: usize) -> SparsePolynomial {
    let nvars = fs[0].nvars();
    let mut g = SparsePolynomial::zero(nvars);
    for rows in combinations(fs.len(), q) {
        let det = a.select_rows(&rows).determinant();
        if det.is_zero() {
            continue;
        }
        let minor = rows
            .iter()
            .fold(SparsePolynomial::constant(nvars, Rational::from_integer(det)), |acc, &i| acc.mul(&fs[i]));
        g = if g.is_zero() { minor.primitive_normalized() } else { gcd(&g, &minor) };
    }
    g
}

pub fn foliation_check(td: &ToricData, fs: &[SparsePolynomial]) -> Result<FoliationReport> {
    if !td.projective {
        return Err(Error::RequiresProjective);
    }
    if fs.len() < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 polynomials, got {}", fs.len())));
    }
    let (q, profile, a_matrix) = degree_rank(td, fs)?;
    let k = fs.len();
    let n = td.nvars();
    let cb = cayley_bacharach(&profile);
    let coprimality = pairwise_coprime(fs);
    let verdicts = FoliationVerdicts {
        k_below_n: k < n,
        rank_window: k < n + q && q < k,
        coprime: coprimality.coprime,
        independent: algebraically_independent(td, fs)?,
        cayley_bacharach: cb.holds,
    };
    let failure = [
        (verdicts.k_below_n, FoliationFailure::TooManyPolynomials),
        (verdicts.rank_window, FoliationFailure::RankWindow),
        (verdicts.coprime, FoliationFailure::NotCoprime),
        (verdicts.independent, FoliationFailure::NotIndependent),
        (verdicts.cayley_bacharach, FoliationFailure::CayleyBacharach),
    ]
    .into_iter()
    .find_map(|(ok, why)| (!ok).then_some(why));

    let mut notes = Vec::new();
    let minor_gcd_trivial = match failure {
        Some(_) => None,
        None => {
            let g = minor_gcd(fs, &a_matrix, q);
            Some(g.is_constant() && !g.is_zero())
        }
    };
    if failure.is_none() && q == td.rho() {
        notes.push("q = rho: T_Σ⟨f⟩₀ = T_f".to_string());
    }
    if q == k {
        notes.push(format!("q = k = {k}"));
    }
    Ok(FoliationReport {
        q,
        k,
        n,
        profile,
        verdicts,
        coprime_witness: coprimality.witness,
        cayley_bacharach_offending: cb.offending,
        codimension: k.saturating_sub(q),
        phi_image_rank: q,
        phi_kernel_rank: td.rho() - q,
        a_matrix,
        minor_gcd_trivial,
        overall: match failure {
            Some(why) => FoliationVerdict::DoesNotApply(why),
            None => FoliationVerdict::Applies,
        },
        notes,
    })
}
