//! Certificates for structured families of free divisors.

use super::search::combinations;
use super::{certify, euler_column, nondegenerate_functional, syzygy_column, ColumnRole, SaitoCertificate, SaitoColumn, SaitoMatrix};
use crate::cox::SparsePolynomial;
use crate::jacobian::SyzygyKind;
use crate::lattice::IntMatrix;
use crate::toric::{build_variety, ClassElement, Fan, ToricData};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Variables grouped by degree, groups in order of first appearance.
fn degree_groups(td: &ToricData) -> Vec<(ClassElement, Vec<usize>)> {
    let mut groups: Vec<(ClassElement, Vec<usize>)> = Vec::new();
    for (i, d) in td.degrees.iter().enumerate() {
        match groups.iter_mut().find(|(c, _)| c == d) {
            Some((_, members)) => members.push(i),
            None => groups.push((d.clone(), vec![i])),
        }
    }
    groups
}

/// `Π_groups Π_{i<j} (x_i − x_j)`.
pub fn braid_polynomial(td: &ToricData) -> SparsePolynomial {
    let r = td.nvars();
    let mut b = SparsePolynomial::one(r);
    for (_, members) in degree_groups(td) {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                b = b.mul(&SparsePolynomial::variable(r, i).sub(&SparsePolynomial::variable(r, j)));
            }
        }
    }
    b
}

/// Braid divisor of the degree groups with its Vandermonde certificate.
///
/// Each group of size `m` contributes the columns `(x_i^p)_{i ∈ group}` for
/// `p < m`, a syzygy of degree `(p − 1)·deg`. The `p = 1` columns of `ρ`
/// groups with invertible Euler values are traded for `ε_1, …, ε_ρ`; when
/// too few groups exist a single Euler column is used instead.
pub fn braid_certificate(td: &ToricData) -> Result<(SparsePolynomial, SaitoCertificate)> {
    let r = td.nvars();
    let rho = td.rho();
    let groups = degree_groups(td);
    let large: Vec<usize> = (0..groups.len()).filter(|&g| groups[g].1.len() >= 2).collect();
    if large.is_empty() {
        return Err(Error::InvalidInput("every degree group has a single variable".into()));
    }
    let b = braid_polynomial(td);

    let mut replaced: Vec<usize> = Vec::new();
    let mut eulers: Vec<usize> = (0..rho).collect();
    let mut notes = Vec::new();
    let values = |k: &[usize]| {
        let rows: Vec<Vec<BigInt>> = (0..rho)
            .map(|j| k.iter().map(|&g| td.euler_value(j, &groups[large[g]].0)).collect())
            .collect();
        IntMatrix::from_rows_with_cols(&rows, k.len())
    };
    if large.len() >= rho {
        let k = combinations(large.len(), rho)
            .into_iter()
            .find(|k| !values(k).determinant().is_zero())
            .ok_or(Error::EulerCoefficientDegenerate)?;
        replaced = k.iter().map(|&g| large[g]).collect();
    } else {
        let (g, j) = large
            .iter()
            .find_map(|&g| (0..rho).find(|&j| !td.euler_value(j, &groups[g].0).is_zero()).map(|j| (g, j)))
            .ok_or(Error::EulerCoefficientDegenerate)?;
        replaced.push(g);
        eulers = vec![j];
        notes.push(format!("single Euler column phi_{}", j + 1));
    }

    let mut columns = Vec::with_capacity(r);
    for (g, (_, members)) in groups.iter().enumerate() {
        for p in 0..members.len() as u32 {
            if p == 1 && replaced.contains(&g) {
                continue;
            }
            let mut entries = vec![SparsePolynomial::zero(r); r];
            for &i in members {
                entries[i] = SparsePolynomial::variable(r, i).pow(p);
            }
            columns.push(syzygy_column(td, &b, entries, columns.len() + 1)?);
        }
    }
    columns.extend(eulers.into_iter().map(|j| euler_column(td, j)));
    notes.push(
        "braid: per degree group d of size m the summands are O((2-j)*d) for j = 1..m, \
         the shift that makes their classes add up to beta_0 - beta"
            .into(),
    );
    let cert = certify(td, &b, SaitoMatrix { columns }, notes)?;
    Ok((b, cert))
}

fn unit_column(td: &ToricData, i: usize) -> SaitoColumn {
    let r = td.nvars();
    let mut entries = vec![SparsePolynomial::zero(r); r];
    entries[i] = SparsePolynomial::one(r);
    SaitoColumn {
        entries,
        role: ColumnRole::Syzygy {
            degree: td.neg(&td.degrees[i]),
            kind: SyzygyKind::Plain,
        },
    }
}

/// Certificate for `x_1⋯x_s` (1-based `s`).
///
/// Columns: the chain `−x_j e_j + x_{j+1} e_{j+1}` for `j < s`, one Euler
/// column `ε_φ`, then the unit vectors `e_{s+1}, …, e_r`. The determinant is
/// `(−1)^{s−1} c_φ x_1⋯x_s` with `c_φ = φ(deg(x_1⋯x_s))`, using the first
/// basis functional with `c_φ ≠ 0`. Without Euler functionals the columns
/// are `x_i e_i` for `i ≤ s` and the unit vectors, with determinant `x_1⋯x_s`.
pub fn invariant_divisor_certificate(td: &ToricData, s: usize) -> Result<SaitoCertificate> {
    let r = td.nvars();
    if s == 0 || s > r {
        return Err(Error::InvalidInput(format!("s must lie in 1..={r}, got {s}")));
    }
    let x = |i: usize| SparsePolynomial::variable(r, i);
    let f = (0..s).fold(SparsePolynomial::one(r), |acc, i| acc.mul(&x(i)));
    let mut notes = Vec::new();
    let mut columns = Vec::with_capacity(r);
    for i in 0..s - 1 {
        let mut entries = vec![SparsePolynomial::zero(r); r];
        entries[i] = x(i).neg();
        entries[i + 1] = x(i + 1);
        columns.push(syzygy_column(td, &f, entries, i + 1)?);
    }
    if td.rho() == 0 {
        // no Euler functional; x_1 e_1 is an extended syzygy and plays its role with c = 1
        let mut entries = vec![SparsePolynomial::zero(r); r];
        entries[0] = x(0);
        columns.push(syzygy_column(td, &f, entries, s)?);
        notes.push("no Euler functionals: x_1 e_1 replaces the Euler column, c = 1".into());
    } else {
        let beta = f.homogeneous_degree(td)?;
        let j = nondegenerate_functional(td, &beta)?;
        columns.push(euler_column(td, j));
        notes.push(format!(
            "c_phi = {} for phi_{}; T_Sigma<D>_0 has rank r-1: O^(s-1) plus O(D_i) for i > s",
            td.euler_value(j, &beta),
            j + 1
        ));
    }
    columns.extend((s..r).map(|i| unit_column(td, i)));
    certify(td, &f, SaitoMatrix { columns }, notes)
}

/// Hypercube divisor `f_1⋯f_n` on a product of lines, `f_i` a binary form in
/// the `i`-th pair of variables of degree `d_i ≥ 1`. Columns are
/// `ν_n, …, ν_1, ε_1, …, ε_n` with `ν_i = (∂f_i/∂y_i, −∂f_i/∂x_i)` on the
/// `i`-th pair, so that `det = (Π d_i)·f`.
pub fn hypercube_certificate(td: &ToricData, factors: &[SparsePolynomial]) -> Result<SaitoCertificate> {
    let r = td.nvars();
    let groups = degree_groups(td);
    let shape_ok = groups.len() == td.rho()
        && td.class_group.invariant_factors.is_empty()
        && groups.iter().all(|(_, m)| m.len() == 2)
        && factors.len() == groups.len();
    if !shape_ok {
        return Err(Error::InvalidInput(
            "expected a product of projective lines and one factor per line".into(),
        ));
    }
    let mut nus = Vec::with_capacity(factors.len());
    let mut f = SparsePolynomial::one(r);
    for (k, (fi, (_, pair))) in factors.iter().zip(&groups).enumerate() {
        let (xi, yi) = (pair[0], pair[1]);
        fi.homogeneous_degree(td)?;
        let foreign = (0..r).any(|v| v != xi && v != yi && fi.degree_in(v) > 0);
        if foreign || fi.is_constant() {
            return Err(Error::InvalidInput(format!(
                "factor {} must be a nonconstant form in its own pair of variables",
                k + 1
            )));
        }
        let mut entries = vec![SparsePolynomial::zero(r); r];
        entries[xi] = fi.partial_derivative(yi);
        entries[yi] = fi.partial_derivative(xi).neg();
        nus.push(entries);
        f = f.mul(fi);
    }
    let mut columns = Vec::with_capacity(r);
    for (k, entries) in nus.into_iter().enumerate().rev() {
        columns.push(syzygy_column(td, &f, entries, k + 1)?);
    }
    columns.extend((0..td.rho()).map(|j| euler_column(td, j)));
    let notes = vec![
        "hypercube: computed summands are O((2-d_i)F_i), not O(-d_i F_i)".to_string(),
    ];
    certify(td, &f, SaitoMatrix { columns }, notes)
}

/// Cone over a free divisor of a weighted projective space: the variety
/// gains a variable of weight `new_weight` and the certificate gains the
/// unit syzygy `e_{r+1}` as its last column, so the determinant is unchanged.
pub fn cone_extension(
    td: &ToricData,
    cert: &SaitoCertificate,
    new_weight: u64,
) -> Result<(ToricData, SaitoCertificate)> {
    if !cert.is_free() {
        return Err(Error::InvalidInput("certificate is not Free".into()));
    }
    let weighted = td.rho() == 1 && td.class_group.invariant_factors.is_empty() && td.nvars() == td.dim() + 1;
    let weights: Option<Vec<u64>> = td.degrees.iter().map(|d| d.free[0].to_u64().filter(|&w| w > 0)).collect();
    let (Some(mut weights), true) = (weights, weighted) else {
        return Err(Error::InvalidInput("variety is not a weighted projective space".into()));
    };
    if new_weight == 0 {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    weights.push(new_weight);
    let cone = build_variety(Fan::weighted_projective(&weights), td.complete)?.with_projective(td.projective);
    let expected: Vec<BigInt> = weights.iter().map(|&w| BigInt::from(w)).collect();
    let got: Vec<BigInt> = cone.degrees.iter().map(|d| d.free[0].clone()).collect();
    if !cone.class_group.invariant_factors.is_empty() || got != expected {
        return Err(Error::InvalidInput("weights do not give a well-formed weighted projective space".into()));
    }
    let r = cone.nvars();
    let lift = |v: &[SparsePolynomial]| {
        let mut out: Vec<SparsePolynomial> = v.iter().map(|p| p.with_nvars(r)).collect();
        out.push(SparsePolynomial::zero(r));
        out
    };
    let mut columns: Vec<SaitoColumn> = cert
        .matrix
        .columns
        .iter()
        .map(|c| match &c.role {
            ColumnRole::Syzygy { degree, kind } => SaitoColumn {
                entries: lift(&c.entries),
                role: ColumnRole::Syzygy {
                    degree: cone.free_class(&degree.free),
                    kind: *kind,
                },
            },
            ColumnRole::Euler { functional } => euler_column(&cone, *functional),
        })
        .collect();
    columns.push(unit_column(&cone, r - 1));
    let f = cert.divisor.with_nvars(r);
    let notes = vec![format!("cone: the new unit syzygy has degree -{new_weight}")];
    let lifted = certify(&cone, &f, SaitoMatrix { columns }, notes)?;
    Ok((cone, lifted))
}
