use crate::lattice::{smith_normal_form, IntMatrix};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A fan given by its rays and maximal cones. Cone entries are 0-based
/// ray indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Self {
        Fan {
            dim,
            rays,
            max_cones,
        }
    }

    /// `P^n` with rays `e_1, …, e_n, −Σe_i`.
    pub fn projective_space(n: usize) -> Self {
        let weights = vec![1u64; n + 1];
        Self::weighted_projective(&weights)
    }

    /// Weighted projective space `P[w_0, …, w_n]`. The rays are the images
    /// of the standard basis under `Z^{n+1} → Z^{n+1}/Z·w`, written in a
    /// basis of the quotient; the maximal cones are all `n`-subsets.
    pub fn weighted_projective(weights: &[u64]) -> Self {
        let m = weights.len();
        assert!(m >= 2, "need at least two weights");
        let w = IntMatrix::from_rows(&[weights.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()]);
        let snf = smith_normal_form(&w.transpose());
        // u * w = (g, 0, …, 0); rows 1.. of u give the quotient coordinates
        let rays: Vec<Vec<BigInt>> = (0..m)
            .map(|i| (1..m).map(|k| snf.u[(k, i)].clone()).collect())
            .collect();
        let max_cones = (0..m)
            .map(|skip| (0..m).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(m - 1, rays, max_cones)
    }

    /// Product fan: rays of `self` padded with zeros, then rays of `other`;
    /// maximal cones are unions of one maximal cone from each factor.
    pub fn product(&self, other: &Fan) -> Fan {
        let dim = self.dim + other.dim;
        let mut rays = Vec::with_capacity(self.rays.len() + other.rays.len());
        for ray in &self.rays {
            let mut v = ray.clone();
            v.resize(dim, BigInt::zero());
            rays.push(v);
        }
        for ray in &other.rays {
            let mut v = vec![BigInt::zero(); self.dim];
            v.extend(ray.iter().cloned());
            rays.push(v);
        }
        let shift = self.rays.len();
        let max_cones = self
            .max_cones
            .iter()
            .flat_map(|a| {
                other.max_cones.iter().map(move |b| {
                    a.iter().copied().chain(b.iter().map(|&i| i + shift)).collect()
                })
            })
            .collect();
        Fan::new(dim, rays, max_cones)
    }

    /// `r × dim` matrix whose rows are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows_with_cols(&self.rays, self.dim)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, ray) in self.rays.iter().enumerate() {
            if ray.len() != self.dim {
                return Err(Error::InvalidFan(format!(
                    "ray {} has {} coordinates, expected {}",
                    i + 1,
                    ray.len(),
                    self.dim
                )));
            }
        }
        if self.rays.is_empty() {
            return Err(Error::InvalidFan("no rays".into()));
        }
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.is_empty() {
                return Err(Error::InvalidFan(format!("cone {} is empty", c + 1)));
            }
            if let Some(&bad) = cone.iter().find(|&&i| i >= self.rays.len()) {
                return Err(Error::InvalidFan(format!(
                    "cone {} refers to ray {} but there are {}",
                    c + 1,
                    bad + 1,
                    self.rays.len()
                )));
            }
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cone.len() {
                return Err(Error::InvalidFan(format!("cone {} repeats a ray", c + 1)));
            }
        }
        for (i, ray) in self.rays.iter().enumerate() {
            let g = ray.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if !g.is_one() {
                return Err(Error::NonPrimitiveRay {
                    index: i + 1,
                    gcd: g.to_string(),
                });
            }
        }
        for i in 0..self.rays.len() {
            for j in i + 1..self.rays.len() {
                if self.rays[i] == self.rays[j] {
                    return Err(Error::DuplicateRay {
                        first: i + 1,
                        second: j + 1,
                    });
                }
            }
        }
        let m = self.ray_matrix();
        for (c, cone) in self.max_cones.iter().enumerate() {
            if m.select_rows(cone).rank() < cone.len() {
                return Err(Error::NonSimplicialCone { cone: c + 1 });
            }
        }
        let rank = m.rank();
        if rank < self.dim {
            return Err(Error::TorusFactor {
                rank,
                dim: self.dim,
            });
        }
        Ok(())
    }
}
