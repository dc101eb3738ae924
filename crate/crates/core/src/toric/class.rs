use crate::lattice::AbelianGroupData;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// Element of the class group: free coordinates followed by torsion
/// residues, each reduced modulo its invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl ClassElement {
    pub fn zero(group: &AbelianGroupData) -> Self {
        ClassElement {
            free: vec![BigInt::zero(); group.free_rank],
            torsion: vec![BigInt::zero(); group.invariant_factors.len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    pub fn free_is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }

    pub(crate) fn add(&self, other: &Self, group: &AbelianGroupData) -> Self {
        ClassElement {
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .zip(&group.invariant_factors)
                .map(|((a, b), d)| (a + b).mod_floor(d))
                .collect(),
        }
    }

    pub(crate) fn neg(&self, group: &AbelianGroupData) -> Self {
        self.scale(&BigInt::from(-1), group)
    }

    pub(crate) fn scale(&self, k: &BigInt, group: &AbelianGroupData) -> Self {
        ClassElement {
            free: self.free.iter().map(|a| a * k).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&group.invariant_factors)
                .map(|(a, d)| (a * k).mod_floor(d))
                .collect(),
        }
    }
}

/// Free coordinates separated by commas, then `|` and the torsion residues
/// when there are any: `1,0` or `1|1`.
impl fmt::Display for ClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(&self.free))?;
        if !self.torsion.is_empty() {
            write!(f, "|{}", join(&self.torsion))?;
        }
        Ok(())
    }
}
