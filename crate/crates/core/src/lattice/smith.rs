use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `s[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Position of the smallest nonzero absolute value in the block
/// `[t.., t..]`, ties broken by lowest `(row, col)`.
fn smallest_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with a fixed pivot rule, so the transforms are
/// reproducible for a given input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_pivot(&s, t) else {
                return SmithDecomposition { u, v, s };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: pull in a row holding an entry the pivot does not divide
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)]))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, v, s }
}

/// Columns form a basis of `{x : a x = 0}` over the integers.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let cols: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| snf.v.column(j)).collect();
    IntMatrix::from_columns(&cols, a.cols())
}

/// An integer solution of `a x = b`, or `None` when none exists.
pub fn integer_solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            _ => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntMatrix, d: &SmithDecomposition) {
        assert_eq!(d.u.mul(a).mul(&d.v), d.s);
        assert_eq!(d.u.determinant().abs(), BigInt::from(1));
        assert_eq!(d.v.determinant().abs(), BigInt::from(1));
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must come last");
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn identity_is_its_own_form() {
        let a = IntMatrix::identity(2);
        let d = smith_normal_form(&a);
        assert_eq!(d.u, IntMatrix::identity(2));
        assert_eq!(d.v, IntMatrix::identity(2));
        assert_eq!(d.s, IntMatrix::identity(2));
    }

    #[test]
    fn already_diagonal() {
        let a = m(&[vec![1, 0], vec![0, 0]]);
        let d = smith_normal_form(&a);
        assert_eq!(d.diagonal(), ints(&[1, 0]));
    }

    #[test]
    fn two_by_two_example() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let d = smith_normal_form(&a);
        check(&a, &d);
        assert_eq!(d.diagonal(), ints(&[2, 4]));
    }

    #[test]
    fn kernels() {
        let k = kernel_basis(&m(&[vec![1, 1]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert!(col == ints(&[1, -1]) || col == ints(&[-1, 1]));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let p2 = m(&[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert_eq!(kernel_basis(&p2).cols(), 0);
    }

    #[test]
    fn solving() {
        assert_eq!(integer_solve(&IntMatrix::identity(2), &ints(&[3, 5])), Some(ints(&[3, 5])));
        assert_eq!(integer_solve(&m(&[vec![2]]), &ints(&[1])), None);
        assert_eq!(
            integer_solve(&m(&[vec![1, 1], vec![0, 2]]), &ints(&[1, 2])),
            Some(ints(&[0, 1]))
        );
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn snf_invariants(a in small_matrix()) {
            let d = smith_normal_form(&a);
            check(&a, &d);
            prop_assert_eq!(smith_normal_form(&a), d);
        }

        #[test]
        fn kernel_vectors_are_killed(a in small_matrix()) {
            let k = kernel_basis(&a);
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.cols() + a.rank(), a.cols());
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn solve_agrees_with_bounded_search(
            v in proptest::collection::vec(-3i64..=3, 9),
            b in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let rows: Vec<Vec<i64>> = v.chunks(3).map(<[i64]>::to_vec).collect();
            let a = IntMatrix::from_rows(&rows);
            let b = ints(&b);
            match integer_solve(&a, &b) {
                Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
                None => {
                    let range = -12i64..=12;
                    for x0 in range.clone() {
                        for x1 in range.clone() {
                            for x2 in range.clone() {
                                prop_assert_ne!(a.mul_vec(&ints(&[x0, x1, x2])), b.clone());
                            }
                        }
                    }
                }
            }
        }
    }
}
