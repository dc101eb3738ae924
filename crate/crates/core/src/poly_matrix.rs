//! Matrices over the Cox ring: exact determinants and ranks.

use crate::cox::SparsePolynomial;
use std::collections::HashMap;

/// Dense row-major matrix of polynomials in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<SparsePolynomial>,
}

/// Largest size handled by memoized cofactor expansion.
const EXPANSION_LIMIT: usize = 12;

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            data: vec![SparsePolynomial::zero(nvars); rows * cols],
        }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<SparsePolynomial>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nvars, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn from_columns(nvars: usize, rows: usize, columns: &[Vec<SparsePolynomial>]) -> Self {
        let mut m = Self::zeros(nvars, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix columns");
            for (i, p) in col.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePolynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SparsePolynomial) {
        assert_eq!(p.nvars(), self.nvars, "entry lives in a different ring");
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[SparsePolynomial] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<SparsePolynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Exact determinant. Cofactor expansion memoized on row subsets up to
    /// size 12, fraction-free elimination beyond. Panics if not square.
    pub fn determinant(&self) -> SparsePolynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows <= EXPANSION_LIMIT {
            self.expansion_determinant()
        } else {
            self.bareiss_determinant()
        }
    }

    fn expansion_determinant(&self) -> SparsePolynomial {
        let n = self.rows;
        // sparsest columns first
        let mut order: Vec<usize> = (0..n).collect();
        let zeros = |j: usize| (0..n).filter(|&i| self.get(i, j).is_zero()).count();
        order.sort_by_key(|&j| std::cmp::Reverse(zeros(j)));
        let permuted = PolyMatrix::from_columns(
            self.nvars,
            n,
            &order.iter().map(|&j| self.column(j)).collect::<Vec<_>>(),
        );
        let mut memo = HashMap::new();
        let det = permuted.minor((1u32 << n) - 1, &mut memo);
        if permutation_is_odd(&order) {
            det.neg()
        } else {
            det
        }
    }

    /// Determinant of the rows in `mask` against the last `popcount(mask)` columns.
    fn minor(&self, mask: u32, memo: &mut HashMap<u32, SparsePolynomial>) -> SparsePolynomial {
        let size = mask.count_ones() as usize;
        if size == 0 {
            return SparsePolynomial::one(self.nvars);
        }
        if let Some(d) = memo.get(&mask) {
            return d.clone();
        }
        let col = self.cols - size;
        let mut acc = SparsePolynomial::zero(self.nvars);
        let mut position = 0;
        for i in 0..self.rows {
            if mask & (1 << i) == 0 {
                continue;
            }
            let entry = self.get(i, col);
            if !entry.is_zero() {
                let sub = self.minor(mask & !(1 << i), memo);
                if !sub.is_zero() {
                    let term = entry.mul(&sub);
                    acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
            }
            position += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    fn bareiss_determinant(&self) -> SparsePolynomial {
        let n = self.rows;
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = SparsePolynomial::one(self.nvars);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return SparsePolynomial::zero(self.nvars);
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            a.eliminate_below(k, k, &prev);
            prev = a.get(k, k).clone();
        }
        if negate {
            prev.neg()
        } else {
            prev
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// One fraction-free step with pivot `(k, col)`: every entry below and
    /// to the right becomes a bordered minor of the original matrix.
    fn eliminate_below(&mut self, k: usize, col: usize, prev: &SparsePolynomial) {
        let pivot = self.get(k, col).clone();
        for i in k + 1..self.rows {
            let lead = self.get(i, col).clone();
            for j in col + 1..self.cols {
                let v = pivot
                    .mul(self.get(i, j))
                    .sub(&lead.mul(self.get(k, j)))
                    .exact_divide(prev)
                    .expect("fraction-free division is exact");
                self.set(i, j, v);
            }
            self.set(i, col, SparsePolynomial::zero(self.nvars));
        }
    }

    /// Rank over the fraction field of the polynomial ring.
    pub fn symbolic_rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = SparsePolynomial::one(self.nvars);
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            a.eliminate_below(rank, col, &prev);
            prev = a.get(rank, col).clone();
            rank += 1;
        }
        rank
    }
}

fn permutation_is_odd(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    let mut odd = false;
    for start in 0..order.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = order[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}
