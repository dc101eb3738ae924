//! Gradients, Jacobians and homogeneous syzygies computed one degree at a time.

pub(crate) mod linalg;

use crate::cox::{Monomial, Rational, SparsePolynomial};
use crate::poly_matrix::PolyMatrix;
use crate::toric::{ClassElement, ToricData};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

pub type PolyVector = Vec<SparsePolynomial>;

/// Plain syzygies satisfy `Σ μ_i ∂f/∂x_i = 0`; extended ones only need the
/// sum to be a multiple of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SyzygyKind {
    Plain,
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVector {
    pub entries: PolyVector,
    /// `κ` with `deg μ_i = κ + deg x_i` for every nonzero entry.
    pub degree: ClassElement,
    pub kind: SyzygyKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygySpace {
    pub degree: ClassElement,
    pub kind: SyzygyKind,
    pub targets: Vec<SparsePolynomial>,
    pub basis: Vec<SyzygyVector>,
}

impl SyzygySpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Whether `v` lies in the rational span of the basis.
    pub fn contains(&self, v: &[SparsePolynomial]) -> bool {
        let mut vectors: Vec<&[SparsePolynomial]> = self.basis.iter().map(|b| &b.entries[..]).collect();
        let (flat, width) = flatten(&vectors);
        let before = linalg::rank(&flat, width);
        vectors.push(v);
        let (flat, width) = flatten(&vectors);
        linalg::rank(&flat, width) == before
    }

    /// Basis of the common subspace, found by solving `Σ a_k u_k = Σ b_l w_l`.
    pub fn intersection(&self, other: &SyzygySpace) -> SyzygySpace {
        let vectors: Vec<&[SparsePolynomial]> = self
            .basis
            .iter()
            .chain(&other.basis)
            .map(|b| &b.entries[..])
            .collect();
        let (flat, width) = flatten(&vectors);
        let p = self.basis.len();
        // columns are the flattened vectors, with the second family negated
        let rows: Vec<Vec<Rational>> = (0..width)
            .map(|c| {
                flat.iter()
                    .enumerate()
                    .map(|(k, v)| if k < p { v[c].clone() } else { -v[c].clone() })
                    .collect()
            })
            .collect();
        let nvars = self.degree_nvars(other);
        let basis = linalg::nullspace(&rows, vectors.len())
            .into_iter()
            .map(|coeffs| {
                let mut entries = vec![SparsePolynomial::zero(nvars); nvars];
                for (k, c) in coeffs.iter().take(p).enumerate() {
                    for (e, u) in entries.iter_mut().zip(&self.basis[k].entries) {
                        *e = e.add(&u.scale(c));
                    }
                }
                SyzygyVector {
                    entries,
                    degree: self.degree.clone(),
                    kind: self.kind,
                }
            })
            .collect();
        let mut targets = self.targets.clone();
        targets.extend(other.targets.iter().cloned());
        SyzygySpace {
            degree: self.degree.clone(),
            kind: self.kind,
            targets,
            basis,
        }
    }

    fn degree_nvars(&self, other: &SyzygySpace) -> usize {
        self.targets
            .iter()
            .chain(&other.targets)
            .map(SparsePolynomial::nvars)
            .next()
            .expect("a syzygy space has a target")
    }
}

/// Coefficient vectors of polynomial vectors over a shared index of
/// `(coordinate, monomial)` pairs.
fn flatten(vectors: &[&[SparsePolynomial]]) -> (Vec<Vec<Rational>>, usize) {
    let keys: BTreeSet<(usize, Monomial)> = vectors
        .iter()
        .flat_map(|v| {
            v.iter()
                .enumerate()
                .flat_map(|(i, p)| p.terms().map(move |(m, _)| (i, m.clone())))
        })
        .collect();
    let index: BTreeMap<(usize, Monomial), usize> = keys.into_iter().enumerate().map(|(k, key)| (key, k)).collect();
    let width = index.len();
    let flat = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Rational::default(); width];
            for (i, p) in v.iter().enumerate() {
                for (m, c) in p.terms() {
                    row[index[&(i, m.clone())]] = c.clone();
                }
            }
            row
        })
        .collect();
    (flat, width)
}

/// `(∂f/∂x_1, …, ∂f/∂x_r)` for homogeneous `f`.
pub fn gradient(td: &ToricData, f: &SparsePolynomial) -> Result<PolyVector> {
    if !f.is_zero() {
        f.homogeneous_degree(td)?;
    } else if f.nvars() != td.nvars() {
        return Err(Error::VariableCount {
            got: f.nvars(),
            expected: td.nvars(),
        });
    }
    Ok((0..td.nvars()).map(|i| f.partial_derivative(i)).collect())
}

/// `k × r` matrix whose rows are the gradients of the `f_i`.
pub fn jacobian(td: &ToricData, fs: &[SparsePolynomial]) -> Result<PolyMatrix> {
    let rows = fs.iter().map(|f| gradient(td, f)).collect::<Result<Vec<_>>>()?;
    Ok(PolyMatrix::from_rows(td.nvars(), rows))
}

/// Rank of a polynomial matrix over the fraction field.
pub fn symbolic_rank(m: &PolyMatrix) -> usize {
    m.symbolic_rank()
}

/// `ε_j = (φ_j([D_i])·x_i)_i`.
pub fn euler_vector(td: &ToricData, j: usize) -> PolyVector {
    let r = td.nvars();
    (0..r)
        .map(|i| {
            let c = Rational::from_integer(td.euler_rows[(j, i)].clone());
            SparsePolynomial::variable(r, i).scale(&c)
        })
        .collect()
}

/// `Σ μ_i ∂f/∂x_i`.
pub fn apply(mu: &[SparsePolynomial], grad: &[SparsePolynomial]) -> SparsePolynomial {
    let n = grad.first().map_or(0, SparsePolynomial::nvars);
    mu.iter()
        .zip(grad)
        .fold(SparsePolynomial::zero(n), |acc, (m, g)| acc.add(&m.mul(g)))
}

/// Whether `Σ φ_j([D_i]) x_i ∂f/∂x_i = φ_j(β)·f` holds exactly.
pub fn euler_relation_check(td: &ToricData, f: &SparsePolynomial, j: usize) -> Result<bool> {
    if j >= td.rho() {
        return Err(Error::InvalidInput(format!(
            "Euler functional {} requested but the free rank is {}",
            j + 1,
            td.rho()
        )));
    }
    let beta = f.homogeneous_degree(td)?;
    let lhs = apply(&euler_vector(td, j), &gradient(td, f)?);
    let rhs = f.scale(&Rational::from_integer(td.euler_value(j, &beta)));
    Ok(lhs == rhs)
}

impl SyzygyVector {
    /// Checks the degree bookkeeping and the defining relation of `kind`
    /// against every target.
    pub fn verify(&self, td: &ToricData, targets: &[SparsePolynomial]) -> std::result::Result<(), String> {
        if self.entries.len() != td.nvars() {
            return Err(format!("has {} entries, expected {}", self.entries.len(), td.nvars()));
        }
        for (i, p) in self.entries.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let expected = td.add(&self.degree, &td.degrees[i]);
            match p.homogeneous_degree(td) {
                Ok(d) if d == expected => {}
                Ok(d) => return Err(format!("entry {} has degree {d}, expected {expected}", i + 1)),
                Err(e) => return Err(format!("entry {}: {e}", i + 1)),
            }
        }
        for f in targets {
            let grad: PolyVector = (0..td.nvars()).map(|i| f.partial_derivative(i)).collect();
            let value = apply(&self.entries, &grad);
            let ok = match self.kind {
                SyzygyKind::Plain => value.is_zero(),
                SyzygyKind::Extended => value.is_zero() || value.exact_divide(f).is_ok(),
            };
            if !ok {
                return Err(match self.kind {
                    SyzygyKind::Plain => "Σ μ_i ∂f/∂x_i is not zero".to_string(),
                    SyzygyKind::Extended => "Σ μ_i ∂f/∂x_i is not a multiple of f".to_string(),
                });
            }
        }
        Ok(())
    }

    /// Classifies an arbitrary vector as a plain or extended syzygy of `f`
    /// of the given degree.
    pub fn classify(
        td: &ToricData,
        f: &SparsePolynomial,
        entries: PolyVector,
        degree: ClassElement,
    ) -> std::result::Result<SyzygyVector, String> {
        let mut v = SyzygyVector {
            entries,
            degree,
            kind: SyzygyKind::Plain,
        };
        if v.verify(td, std::slice::from_ref(f)).is_ok() {
            return Ok(v);
        }
        v.kind = SyzygyKind::Extended;
        v.verify(td, std::slice::from_ref(f))?;
        Ok(v)
    }

    /// Degree `κ` read off the entries, if they agree.
    pub fn infer_degree(td: &ToricData, entries: &[SparsePolynomial]) -> Result<ClassElement> {
        let mut found: Option<ClassElement> = None;
        for (i, p) in entries.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let k = td.sub(&p.homogeneous_degree(td)?, &td.degrees[i]);
            match &found {
                Some(prev) if *prev != k => {
                    return Err(Error::NotASyzygy {
                        index: 0,
                        reason: format!("entries give degrees {prev} and {k}"),
                    })
                }
                _ => found = Some(k),
            }
        }
        found.ok_or_else(|| Error::NotASyzygy {
            index: 0,
            reason: "zero vector".into(),
        })
    }
}

/// Plain homogeneous syzygies of degree `κ` of the tuple `fs`.
pub fn syzygy_basis(td: &ToricData, fs: &[SparsePolynomial], kappa: &ClassElement) -> Result<SyzygySpace> {
    solve(td, fs, kappa, SyzygyKind::Plain)
}

/// Degree-`κ` sections of the extended sheaf: `μ` with `Σ μ_i ∂f/∂x_i + g f = 0`
/// for some `g` of class `κ`.
pub fn extended_syzygy_basis(td: &ToricData, f: &SparsePolynomial, kappa: &ClassElement) -> Result<SyzygySpace> {
    solve(td, std::slice::from_ref(f), kappa, SyzygyKind::Extended)
}

fn solve(td: &ToricData, fs: &[SparsePolynomial], kappa: &ClassElement, kind: SyzygyKind) -> Result<SyzygySpace> {
    td.check_class(kappa)?;
    let r = td.nvars();
    for f in fs {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        f.homogeneous_degree(td)?;
    }
    let grads: Vec<PolyVector> = fs
        .iter()
        .map(|f| (0..r).map(|i| f.partial_derivative(i)).collect())
        .collect();

    // unknowns: monomials of each μ_i, then of g for the extended kind
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for i in 0..r {
        let class = td.add(kappa, &td.degrees[i]);
        for m in td.monomial_basis(&class)?.monomials {
            unknowns.push((i, Monomial(m)));
        }
    }
    let mu_count = unknowns.len();
    if kind == SyzygyKind::Extended {
        for m in td.monomial_basis(kappa)?.monomials {
            unknowns.push((r, Monomial(m)));
        }
    }

    let mut equations: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(unknowns.len());
    for (i, m) in &unknowns {
        let mut col = Vec::new();
        for (j, f) in fs.iter().enumerate() {
            let source = if *i < r { &grads[j][*i] } else { f };
            for (tm, c) in source.mul_term(m, &Rational::from_integer(1.into())).terms() {
                let next = equations.len();
                let row = *equations.entry((j, tm.clone())).or_insert(next);
                col.push((row, c.clone()));
            }
        }
        columns.push(col);
    }
    let mut matrix = vec![vec![Rational::default(); unknowns.len()]; equations.len()];
    for (k, col) in columns.iter().enumerate() {
        for (row, c) in col {
            matrix[*row][k] = c.clone();
        }
    }
    let basis = linalg::nullspace(&matrix, unknowns.len())
        .into_iter()
        .filter_map(|v| {
            let mut entries = vec![SparsePolynomial::zero(r); r];
            for (k, (i, m)) in unknowns.iter().take(mu_count).enumerate() {
                entries[*i].add_term(m.clone(), v[k].clone());
            }
            // g alone cannot be nonzero since g·f = 0 forces g = 0
            entries.iter().any(|p| !p.is_zero()).then(|| SyzygyVector {
                entries,
                degree: kappa.clone(),
                kind,
            })
        })
        .collect();
    Ok(SyzygySpace {
        degree: kappa.clone(),
        kind,
        targets: fs.to_vec(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::parse_polynomial;
    use crate::toric::examples::*;

    fn poly(td: &ToricData, text: &str) -> SparsePolynomial {
        let names: Vec<String> = match td.nvars() {
            3 => ["x", "y", "z"].iter().map(|s| s.to_string()).collect(),
            4 => ["x0", "x1", "y0", "y1"].iter().map(|s| s.to_string()).collect(),
            n => (0..n).map(|i| format!("x{i}")).collect(),
        };
        parse_polynomial(text, &names).unwrap()
    }

    #[test]
    fn gradients() {
        let td = p2();
        let g = gradient(&td, &poly(&td, "x*y*z")).unwrap();
        assert_eq!(g, vec![poly(&td, "y*z"), poly(&td, "x*z"), poly(&td, "x*y")]);
        let g = gradient(&td, &poly(&td, "x^3+y^3+z^3")).unwrap();
        assert_eq!(g, vec![poly(&td, "3*x^2"), poly(&td, "3*y^2"), poly(&td, "3*z^2")]);
        assert_eq!(gradient(&td, &poly(&td, "x^2+y")).unwrap_err().code(), "NotHomogeneous");
        let td = p1xp1();
        let j = jacobian(&td, &[poly(&td, "x0*y0"), poly(&td, "x1*y1"), poly(&td, "5")]).unwrap();
        assert_eq!(j.rows(), 3);
        assert_eq!((0..4).filter(|&c| !j.get(0, c).is_zero()).count(), 2);
        assert!(j.row(2).iter().all(SparsePolynomial::is_zero));
        assert_eq!(symbolic_rank(&j), 2);
    }

    #[test]
    fn euler_relations() {
        let td = p2();
        assert!(euler_relation_check(&td, &poly(&td, "x^3+y^3+z^3"), 0).unwrap());
        let td = p1xp1();
        let f = poly(&td, "x0^2*y0*y1");
        assert!(euler_relation_check(&td, &f, 0).unwrap());
        assert!(euler_relation_check(&td, &f, 1).unwrap());
    }

    #[test]
    fn braid_translation_syzygy() {
        let td = p2();
        let b = poly(&td, "(x-y)*(y-z)*(x-z)");
        let s = syzygy_basis(&td, std::slice::from_ref(&b), &td.free_class(&[-1])).unwrap();
        assert_eq!(s.dimension(), 1);
        assert_eq!(s.basis[0].entries, vec![poly(&td, "1"); 3]);
        s.basis[0].verify(&td, std::slice::from_ref(&b)).unwrap();
        let empty = syzygy_basis(&td, &[b], &td.free_class(&[-2])).unwrap();
        assert_eq!(empty.dimension(), 0);
    }

    #[test]
    fn hypercube_blocks() {
        let td = p1xp1();
        let f1 = poly(&td, "x0^2 + 3*x0*x1 - x1^2");
        let f2 = poly(&td, "y0^2 - 2*y1^2 + y0*y1");
        let f = f1.mul(&f2);
        let s = syzygy_basis(&td, std::slice::from_ref(&f), &td.zero_class()).unwrap();
        assert!(s.dimension() >= 2);
        let zero = SparsePolynomial::zero(4);
        let block = vec![f1.partial_derivative(1), f1.partial_derivative(0).neg(), zero.clone(), zero.clone()];
        let mirror = vec![zero.clone(), zero, f2.partial_derivative(3), f2.partial_derivative(2).neg()];
        assert!(s.contains(&block));
        assert!(s.contains(&mirror));
        for b in &s.basis {
            b.verify(&td, std::slice::from_ref(&f)).unwrap();
        }
    }

    #[test]
    fn extended_spaces() {
        let td = p2();
        let f = poly(&td, "x*y*z");
        let ext = extended_syzygy_basis(&td, &f, &td.zero_class()).unwrap();
        assert_eq!(ext.dimension(), 3);
        assert!(ext.contains(&[poly(&td, "x"), poly(&td, "0"), poly(&td, "0")]));
        assert!(ext.contains(&euler_vector(&td, 0)));
        let plain = syzygy_basis(&td, std::slice::from_ref(&f), &td.zero_class()).unwrap();
        assert_eq!(ext.dimension() - plain.dimension(), 1);
        for b in &ext.basis {
            b.verify(&td, std::slice::from_ref(&f)).unwrap();
        }
        let td = p1xp1();
        let g = poly(&td, "x0*x1*y0^2 + x1^2*y1^2");
        let ext = extended_syzygy_basis(&td, &g, &td.zero_class()).unwrap();
        for j in 0..2 {
            assert!(ext.contains(&euler_vector(&td, j)));
        }
    }

    #[test]
    fn intersections() {
        let td = p2();
        let f1 = poly(&td, "x^2 - y*z");
        let f2 = poly(&td, "x*y + z^2");
        for k in [0, 1, 2] {
            let kappa = td.free_class(&[k]);
            let a = syzygy_basis(&td, std::slice::from_ref(&f1), &kappa).unwrap();
            let b = syzygy_basis(&td, std::slice::from_ref(&f2), &kappa).unwrap();
            let both = syzygy_basis(&td, &[f1.clone(), f2.clone()], &kappa).unwrap();
            let meet = a.intersection(&b);
            assert_eq!(both.dimension(), meet.dimension());
            for v in &both.basis {
                assert!(meet.contains(&v.entries));
            }
        }
    }
}
