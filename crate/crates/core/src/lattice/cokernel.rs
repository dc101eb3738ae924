use super::{integer_solve, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with `d_1 | d_2 | … | d_t`, all `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupData {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupData {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Unit,
    Torsion(usize),
    Free(usize),
}

/// Presentation of `Z^rows / im(A)` together with the quotient map.
///
/// Classes are written as free coordinates followed by torsion residues.
/// The free basis is normalized so that the images of the standard basis
/// vectors, read as a `free_rank × rows` matrix, are in row Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub group: AbelianGroupData,
    transform: IntMatrix,
    slots: Vec<Slot>,
}

impl Cokernel {
    pub fn ambient_rank(&self) -> usize {
        self.transform.cols()
    }

    /// Free coordinates and reduced torsion residues of the class of `v`.
    pub fn project(&self, v: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let w = self.transform.mul_vec(v);
        let mut free = vec![BigInt::zero(); self.group.free_rank];
        let mut torsion = vec![BigInt::zero(); self.group.invariant_factors.len()];
        for (value, slot) in w.into_iter().zip(&self.slots) {
            match *slot {
                Slot::Unit => {}
                Slot::Free(k) => free[k] = value,
                Slot::Torsion(k) => torsion[k] = value.mod_floor(&self.group.invariant_factors[k]),
            }
        }
        (free, torsion)
    }

    /// Some vector of `Z^rows` whose class has the given coordinates.
    pub fn lift(&self, free: &[BigInt], torsion: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(free.len(), self.group.free_rank);
        assert_eq!(torsion.len(), self.group.invariant_factors.len());
        let w: Vec<BigInt> = self
            .slots
            .iter()
            .map(|slot| match *slot {
                Slot::Unit => BigInt::zero(),
                Slot::Free(k) => free[k].clone(),
                Slot::Torsion(k) => torsion[k].clone(),
            })
            .collect();
        integer_solve(&self.transform, &w).expect("transform is unimodular")
    }

    /// `free_rank × rows` matrix sending a vector to its free coordinates.
    pub fn free_projection(&self) -> IntMatrix {
        let idx = self.slot_rows(|s| matches!(s, Slot::Free(_)));
        self.transform.select_rows(&idx)
    }

    /// `t × rows` matrix of torsion projections; reduce row `k` modulo
    /// the `k`-th invariant factor.
    pub fn torsion_projection(&self) -> IntMatrix {
        let idx = self.slot_rows(|s| matches!(s, Slot::Torsion(_)));
        self.transform.select_rows(&idx)
    }

    fn slot_rows(&self, pred: impl Fn(&Slot) -> bool) -> Vec<usize> {
        let mut idx: Vec<(usize, usize)> = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, s)| pred(s))
            .map(|(i, s)| match *s {
                Slot::Free(k) | Slot::Torsion(k) => (k, i),
                Slot::Unit => unreachable!(),
            })
            .collect();
        idx.sort();
        idx.into_iter().map(|(_, i)| i).collect()
    }
}

/// Row Hermite form `g * m = h`: pivots positive, entries above each
/// pivot reduced into `[0, pivot)`. Returns `(h, g)`.
fn row_hermite(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let mut h = m.clone();
    let mut g = IntMatrix::identity(rows);
    let mut row = 0;
    for col in 0..m.cols() {
        if row == rows {
            break;
        }
        loop {
            let pivot = (row..rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            g.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &q);
                g.add_row_multiple(i, row, &q);
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            g.negate_row(row);
        }
        for i in 0..row {
            let q = -h[(i, col)].div_floor(&h[(row, col)]);
            if !q.is_zero() {
                h.add_row_multiple(i, row, &q);
                g.add_row_multiple(i, row, &q);
            }
        }
        row += 1;
    }
    (h, g)
}

/// Cokernel of `a : Z^cols → Z^rows`.
pub fn cokernel(a: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let mut slots = Vec::with_capacity(a.rows());
    let mut invariant_factors = Vec::new();
    let mut free_rank = 0;
    for i in 0..a.rows() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_one() {
            slots.push(Slot::Unit);
        } else if d.is_zero() {
            slots.push(Slot::Free(free_rank));
            free_rank += 1;
        } else {
            slots.push(Slot::Torsion(invariant_factors.len()));
            invariant_factors.push(d);
        }
    }
    let mut transform = snf.u;

    // normalize the free basis
    let free_rows: Vec<usize> = (0..a.rows())
        .filter(|&i| matches!(slots[i], Slot::Free(_)))
        .collect();
    if !free_rows.is_empty() {
        let (h, _) = row_hermite(&transform.select_rows(&free_rows));
        for (k, &i) in free_rows.iter().enumerate() {
            for j in 0..transform.cols() {
                transform[(i, j)] = h[(k, j)].clone();
            }
        }
    }
    Cokernel {
        group: AbelianGroupData {
            free_rank,
            invariant_factors,
        },
        transform,
        slots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn projective_plane() {
        let a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        let c = cokernel(&a);
        assert_eq!(c.group.free_rank, 1);
        assert!(c.group.invariant_factors.is_empty());
        for i in 0..3 {
            let mut e = ints(&[0, 0, 0]);
            e[i] = BigInt::one();
            assert_eq!(c.project(&e).0, ints(&[1]));
        }
    }

    #[test]
    fn quotient_by_two() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        let c = cokernel(&a);
        assert_eq!(c.group.free_rank, 0);
        assert_eq!(c.group.invariant_factors, ints(&[2]));
    }

    #[test]
    fn zero_matrix() {
        let c = cokernel(&IntMatrix::zeros(2, 3));
        assert_eq!(c.group.free_rank, 2);
        assert!(c.group.invariant_factors.is_empty());
    }

    #[test]
    fn projection_kills_image_and_lift_inverts() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 6], vec![1, 3], vec![0, 0]]);
        let c = cokernel(&a);
        for j in 0..a.cols() {
            let (f, t) = c.project(&a.column(j));
            assert!(f.iter().all(Zero::is_zero));
            assert!(t.iter().all(Zero::is_zero));
        }
        let free = vec![BigInt::from(-3); c.group.free_rank];
        let tors: Vec<BigInt> = c.group.invariant_factors.iter().map(|d| d - 1).collect();
        let v = c.lift(&free, &tors);
        assert_eq!(c.project(&v), (free, tors));
    }
}
