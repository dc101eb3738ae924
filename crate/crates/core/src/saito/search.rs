//! Exhaustive search for a freeness certificate inside a box of degrees.

use super::{certify, euler_column, nondegenerate_functional, ColumnRole, SaitoCertificate, SaitoColumn, SaitoMatrix};
use crate::cox::SparsePolynomial;
use crate::jacobian::{extended_syzygy_basis, SyzygyVector};
use crate::toric::{ClassElement, ToricData};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Free coordinates of each `κ` range over `[−max_box, max_box]`.
    pub max_box: u32,
    /// Cap on determinant evaluations over the whole search.
    pub combination_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_box: 3,
            combination_limit: 10_000,
        }
    }
}

/// Sort key: total of the free coordinates, then the coordinates, then torsion.
fn graded_key(c: &ClassElement) -> (BigInt, &[BigInt], &[BigInt]) {
    (c.free.iter().sum(), &c.free, &c.torsion)
}

fn box_classes(td: &ToricData, bound: u32) -> Vec<ClassElement> {
    let b = i64::from(bound);
    let mut frees: Vec<Vec<BigInt>> = vec![vec![]];
    for _ in 0..td.rho() {
        frees = frees
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x.into());
                    w
                })
            })
            .collect();
    }
    let mut torsions: Vec<Vec<BigInt>> = vec![vec![]];
    for d in &td.class_group.invariant_factors {
        let d = d.clone();
        torsions = torsions
            .into_iter()
            .flat_map(|v| {
                num_iter(&d).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let mut out: Vec<ClassElement> = frees
        .iter()
        .flat_map(|f| {
            torsions.iter().map(move |t| ClassElement {
                free: f.clone(),
                torsion: t.clone(),
            })
        })
        .collect();
    out.sort_by(|a, b| graded_key(a).cmp(&graded_key(b)));
    out
}

fn num_iter(d: &BigInt) -> impl Iterator<Item = BigInt> {
    let d = d.clone();
    let mut k = BigInt::zero();
    std::iter::from_fn(move || {
        if k < d {
            let out = k.clone();
            k += 1;
            Some(out)
        } else {
            None
        }
    })
}

struct Search<'a> {
    td: &'a ToricData,
    f: &'a SparsePolynomial,
    spaces: Vec<(ClassElement, Vec<SyzygyVector>)>,
    eulers: Vec<SaitoColumn>,
    notes: Vec<String>,
    limit: u64,
    evaluations: u64,
}

/// Looks for syzygies `κ_1 ≤ … ≤ κ_n` inside the box with
/// `Σκ_j = β − β₀` and basis vectors of the degree-`κ_j` extended syzygy
/// spaces giving `det = c·f`. The standard layout with all Euler columns is
/// tried first; when `ρ ≥ 2` the layout with `r − 1` syzygies and a single
/// Euler column follows. Returns the first certificate found.
pub fn saito_search(td: &ToricData, f: &SparsePolynomial, options: &SearchOptions) -> Result<Option<SaitoCertificate>> {
    if !td.complete {
        return Err(Error::RequiresComplete);
    }
    let beta = f.homogeneous_degree(td)?;
    let mut spaces = Vec::new();
    for kappa in box_classes(td, options.max_box) {
        let space = extended_syzygy_basis(td, f, &kappa)?;
        if space.dimension() > 0 {
            spaces.push((kappa, space.basis));
        }
    }
    let target = td.sub(&beta, &td.anticanonical);
    let (r, rho) = (td.nvars(), td.rho());
    let mut search = Search {
        td,
        f,
        spaces,
        eulers: (0..rho).map(|j| euler_column(td, j)).collect(),
        notes: Vec::new(),
        limit: options.combination_limit,
        evaluations: 0,
    };
    if let Some(cert) = search.run(r - rho, &target)? {
        return Ok(Some(cert));
    }
    if rho >= 2 {
        let j = nondegenerate_functional(td, &beta)?;
        search.eulers = vec![euler_column(td, j)];
        search.notes = vec![format!("single Euler column phi_{}", j + 1)];
        return search.run(r - 1, &target);
    }
    Ok(None)
}

impl Search<'_> {
    fn run(&mut self, count: usize, target: &ClassElement) -> Result<Option<SaitoCertificate>> {
        let mut chosen = Vec::with_capacity(count);
        self.multisets(0, count, target.clone(), &mut chosen)
    }

    /// Nondecreasing index sequences into `spaces` whose degrees sum to `rest`.
    fn multisets(
        &mut self,
        start: usize,
        count: usize,
        rest: ClassElement,
        chosen: &mut Vec<usize>,
    ) -> Result<Option<SaitoCertificate>> {
        if count == 0 {
            return if rest.is_zero() { self.try_multiset(chosen) } else { Ok(None) };
        }
        if count == 1 {
            let Some(idx) = (start..self.spaces.len()).find(|&i| self.spaces[i].0 == rest) else {
                return Ok(None);
            };
            chosen.push(idx);
            let out = self.try_multiset(chosen);
            chosen.pop();
            return out;
        }
        for i in start..self.spaces.len() {
            let next = self.td.sub(&rest, &self.spaces[i].0);
            chosen.push(i);
            let out = self.multisets(i, count - 1, next, chosen)?;
            chosen.pop();
            if out.is_some() {
                return Ok(out);
            }
        }
        Ok(None)
    }

    fn try_multiset(&mut self, chosen: &[usize]) -> Result<Option<SaitoCertificate>> {
        // runs of equal degrees take distinct basis vectors
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &i in chosen {
            match runs.last_mut() {
                Some((j, m)) if *j == i => *m += 1,
                _ => runs.push((i, 1)),
            }
        }
        if runs.iter().any(|&(i, m)| self.spaces[i].1.len() < m) {
            return Ok(None);
        }
        let choices: Vec<Vec<Vec<usize>>> = runs
            .iter()
            .map(|&(i, m)| combinations(self.spaces[i].1.len(), m))
            .collect();
        let mut cursor = vec![0usize; runs.len()];
        loop {
            let mut columns = Vec::with_capacity(self.td.nvars());
            for (k, &(i, _)) in runs.iter().enumerate() {
                for &b in &choices[k][cursor[k]] {
                    let v = &self.spaces[i].1[b];
                    columns.push(SaitoColumn {
                        entries: v.entries.clone(),
                        role: ColumnRole::Syzygy {
                            degree: v.degree.clone(),
                            kind: v.kind,
                        },
                    });
                }
            }
            columns.extend(self.eulers.iter().cloned());
            let matrix = SaitoMatrix { columns };
            self.evaluations += 1;
            if self.evaluations > self.limit {
                return Err(Error::SearchLimitExceeded { limit: self.limit });
            }
            if !matrix.determinant().is_zero() {
                let cert = certify(self.td, self.f, matrix, self.notes.clone())?;
                if cert.is_free() {
                    return Ok(Some(cert));
                }
            }
            // advance the mixed-radix cursor
            let mut k = runs.len();
            loop {
                if k == 0 {
                    return Ok(None);
                }
                k -= 1;
                cursor[k] += 1;
                if cursor[k] < choices[k].len() {
                    break;
                }
                cursor[k] = 0;
            }
        }
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
