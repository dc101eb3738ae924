//! Simplicial fans, their class groups and graded monomial bases.

mod class;
mod fan;
mod monomials;

pub use class::ClassElement;
pub use fan::Fan;
pub use monomials::MonomialBasis;

use crate::lattice::{cokernel, AbelianGroupData, Cokernel, IntMatrix};
use crate::{Error, Result};
use monomials::Tower;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// A validated fan together with its class group, degree map and flags.
#[derive(Clone, Debug)]
pub struct ToricData {
    pub fan: Fan,
    pub class_group: AbelianGroupData,
    /// `deg[D_i]` for every ray.
    pub degrees: Vec<ClassElement>,
    /// Row `j` is `(φ_j([D_1]), …, φ_j([D_r]))`.
    pub euler_rows: IntMatrix,
    pub anticanonical: ClassElement,
    pub complete: bool,
    pub projective: bool,
    cokernel: Cokernel,
    tower: Option<Tower>,
}

/// Outcome of an effectivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Effectivity {
    /// Lexicographically first monomial of the class.
    Effective(Vec<u32>),
    NotEffective,
}

/// Validates `fan` and computes its class group data.
pub fn build_variety(fan: Fan, complete: bool) -> Result<ToricData> {
    fan.validate()?;
    let pairing = fan.ray_matrix();
    let cokernel = cokernel(&pairing);
    let group = cokernel.group.clone();
    let r = fan.rays.len();
    debug_assert_eq!(group.free_rank, r - fan.dim);

    let degrees: Vec<ClassElement> = (0..r)
        .map(|i| {
            let mut e = vec![BigInt::zero(); r];
            e[i] = 1.into();
            let (free, torsion) = cokernel.project(&e);
            ClassElement { free, torsion }
        })
        .collect();
    let euler_rows = cokernel.free_projection();
    let anticanonical = degrees
        .iter()
        .fold(ClassElement::zero(&group), |acc, d| acc.add(d, &group));
    let tower = complete.then(|| Tower::new(&pairing));
    Ok(ToricData {
        fan,
        class_group: group,
        degrees,
        euler_rows,
        anticanonical,
        complete,
        projective: false,
        cokernel,
        tower,
    })
}

impl ToricData {
    pub fn with_projective(mut self, projective: bool) -> Self {
        self.projective = projective;
        self
    }

    /// Number of rays, i.e. Cox variables.
    pub fn nvars(&self) -> usize {
        self.fan.rays.len()
    }

    pub fn dim(&self) -> usize {
        self.fan.dim
    }

    /// Free rank of the class group.
    pub fn rho(&self) -> usize {
        self.class_group.free_rank
    }

    pub fn zero_class(&self) -> ClassElement {
        ClassElement::zero(&self.class_group)
    }

    /// Builds a class from coordinates, reducing torsion residues.
    pub fn class(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<ClassElement> {
        let g = &self.class_group;
        if free.len() != g.free_rank || torsion.len() != g.invariant_factors.len() {
            return Err(Error::ClassShape {
                got: free.len(),
                got_torsion: torsion.len(),
                expected: g.free_rank,
                expected_torsion: g.invariant_factors.len(),
            });
        }
        let torsion = torsion
            .iter()
            .zip(&g.invariant_factors)
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        Ok(ClassElement { free, torsion })
    }

    /// Class with free coordinates only; panics on a group with torsion.
    pub fn free_class<T: Clone + Into<BigInt>>(&self, free: &[T]) -> ClassElement {
        assert!(self.class_group.invariant_factors.is_empty());
        self.class(free.iter().cloned().map(Into::into).collect(), vec![])
            .expect("free rank mismatch")
    }

    pub fn add(&self, a: &ClassElement, b: &ClassElement) -> ClassElement {
        a.add(b, &self.class_group)
    }

    pub fn sub(&self, a: &ClassElement, b: &ClassElement) -> ClassElement {
        a.add(&b.neg(&self.class_group), &self.class_group)
    }

    pub fn neg(&self, a: &ClassElement) -> ClassElement {
        a.neg(&self.class_group)
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a ClassElement>) -> ClassElement {
        items
            .into_iter()
            .fold(self.zero_class(), |acc, c| self.add(&acc, c))
    }

    pub fn scale(&self, k: i64, a: &ClassElement) -> ClassElement {
        a.scale(&BigInt::from(k), &self.class_group)
    }

    /// Checks the shape of a class supplied from outside.
    pub fn check_class(&self, a: &ClassElement) -> Result<()> {
        self.class(a.free.clone(), a.torsion.clone()).map(|_| ())
    }

    /// Class of the divisor `Σ a_i D_i`; entries may be negative.
    pub fn divisor_class(&self, a: &[BigInt]) -> ClassElement {
        let (free, torsion) = self.cokernel.project(a);
        ClassElement { free, torsion }
    }

    /// Class of the monomial `x^a`.
    pub fn monomial_class(&self, a: &[u32]) -> ClassElement {
        let v: Vec<BigInt> = a.iter().map(|&e| BigInt::from(e)).collect();
        self.divisor_class(&v)
    }

    /// Value of `φ_j` on a class (torsion contributes nothing).
    pub fn euler_value(&self, j: usize, a: &ClassElement) -> BigInt {
        a.free[j].clone()
    }

    /// `free_rank × r` matrix of the free part of the degree map.
    pub fn degree_matrix(&self) -> IntMatrix {
        self.cokernel.free_projection()
    }

    /// Rows of the torsion part of the degree map; row `k` is read modulo
    /// the `k`-th invariant factor.
    pub fn torsion_matrix(&self) -> IntMatrix {
        self.cokernel.torsion_projection()
    }

    /// All `a ≥ 0` with `deg(x^a) = α`, sorted lexicographically.
    pub fn monomial_basis(&self, alpha: &ClassElement) -> Result<MonomialBasis> {
        self.check_class(alpha)?;
        let tower = self.tower.as_ref().ok_or(Error::RequiresComplete)?;
        let base = self.cokernel.lift(&alpha.free, &alpha.torsion);
        let monomials = tower.enumerate(&base, &self.fan.ray_matrix()).ok_or_else(|| {
            Error::UnboundedGradedPiece {
                class: alpha.to_string(),
            }
        })?;
        Ok(MonomialBasis {
            class: alpha.clone(),
            monomials,
        })
    }

    pub fn is_effective(&self, alpha: &ClassElement) -> Result<Effectivity> {
        let basis = self.monomial_basis(alpha)?;
        Ok(match basis.monomials.into_iter().next() {
            Some(m) => Effectivity::Effective(m),
            None => Effectivity::NotEffective,
        })
    }

    /// Whether `H⁰(O(α)) = 0`.
    pub fn h0_vanishes(&self, alpha: &ClassElement) -> Result<bool> {
        Ok(self.monomial_basis(alpha)?.monomials.is_empty())
    }
}

#[cfg(test)]
pub(crate) mod examples {
    use super::*;

    pub fn fan(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
        Fan::new(
            dim,
            rays.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn p2() -> ToricData {
        build_variety(Fan::projective_space(2), true).unwrap().with_projective(true)
    }

    pub fn p1xp1() -> ToricData {
        let f = fan(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
        );
        build_variety(f, true).unwrap().with_projective(true)
    }

    pub fn p112() -> ToricData {
        let f = fan(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]]);
        build_variety(f, true).unwrap().with_projective(true)
    }

    pub fn quotient() -> ToricData {
        let f = fan(2, &[&[1, 1], &[1, -1]], &[&[0, 1]]);
        build_variety(f, false).unwrap()
    }

    /// `P^{n_1} × … × P^{n_k}`, variables grouped by factor.
    pub fn product(dims: &[usize]) -> ToricData {
        let fan = dims
            .iter()
            .map(|&n| Fan::projective_space(n))
            .reduce(|a, b| a.product(&b))
            .unwrap();
        build_variety(fan, true).unwrap().with_projective(true)
    }

    /// Hirzebruch surface with rays (1,0),(0,1),(−1,a),(0,−1).
    pub fn hirzebruch(a: i64) -> ToricData {
        let f = fan(
            2,
            &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
        );
        build_variety(f, true).unwrap().with_projective(true)
    }
}
