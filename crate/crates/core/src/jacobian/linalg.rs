//! Dense exact linear algebra over the rationals.

use crate::cox::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn row_reduce(a: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Rational::one() / &a[row][col];
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i == row || a[i][col].is_zero() {
                continue;
            }
            let k = a[i][col].clone();
            let (top, bottom) = a.split_at_mut(i.max(row));
            let (target, source) = if i < row {
                (&mut top[i], &bottom[0])
            } else {
                (&mut bottom[0], &top[row])
            };
            for (t, s) in target.iter_mut().zip(source.iter()) {
                if !s.is_zero() {
                    *t -= &k * s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{x : a x = 0}`, one vector per non-pivot column, each scaled
/// to coprime integers.
pub(crate) fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = row_reduce(&mut m, ncols);
    let mut out = Vec::new();
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        out.push(primitive_integer(v));
    }
    out
}

pub(crate) fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

/// Positive rational multiple with coprime integer entries.
pub(crate) fn primitive_integer(v: Vec<Rational>) -> Vec<Rational> {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let num = v.iter().fold(BigInt::zero(), |acc, x| {
        num_integer::gcd(acc, (x * Rational::from_integer(den.clone())).to_integer())
    });
    if num.is_zero() {
        return v;
    }
    let k = Rational::new(den, num);
    v.into_iter().map(|x| x * &k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn kernel_of_a_line() {
        let k = nullspace(&[q(&[1, 1, 1])], 3);
        assert_eq!(k, vec![q(&[-1, 1, 0]), q(&[-1, 0, 1])]);
        assert_eq!(rank(&[q(&[1, 2]), q(&[2, 4])], 2), 1);
        assert!(nullspace(&[q(&[1, 0]), q(&[0, 1])], 2).is_empty());
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(primitive_integer(vec![half.clone(), half * Rational::from_integer(3.into())]), q(&[1, 3]));
    }
}
