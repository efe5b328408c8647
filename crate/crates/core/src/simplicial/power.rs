use rustc_hash::FxHashMap;

use super::chains::ChainComplex;
use super::set::FiniteSimplicialSet;
use super::word::{SimplexRef, MAX_DIM};
use crate::error::{Error, Result};
use crate::fp_linalg::{MatrixFp, PrimeField};

/// Default cap on the number of product simplices in a single degree.
pub const DEFAULT_PRODUCT_LIMIT: usize = 2_000_000;

/// Environment variable overriding [`DEFAULT_PRODUCT_LIMIT`].
pub const PRODUCT_LIMIT_ENV: &str = "STEENROD_PRODUCT_LIMIT";

pub fn product_limit_from_env() -> usize {
    std::env::var(PRODUCT_LIMIT_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_PRODUCT_LIMIT)
}

/// The p-fold power `X^p` through a given degree, with its normalized chains.
///
/// An `m`-simplex is a `p`-tuple of `m`-simplices of `X`; it is nondegenerate
/// unless one `s_i` divides every coordinate, i.e. unless the degeneracy words
/// of all coordinates share an index. Tuples are ordered lexicographically.
#[derive(Clone, Debug)]
pub struct PowerSpace {
    p: usize,
    m_max: usize,
    /// flattened tuples per degree, stride `p`
    tuples: Vec<Vec<SimplexRef>>,
    index: Vec<FxHashMap<Box<[SimplexRef]>, u32>>,
    chains: ChainComplex,
    complete: bool,
}

impl PowerSpace {
    pub fn build(
        x: &FiniteSimplicialSet,
        field: PrimeField,
        m_max: usize,
        limit: usize,
    ) -> Result<Self> {
        let p = field.p() as usize;
        if m_max > MAX_DIM {
            return Err(Error::DimensionTooLarge(m_max));
        }
        let mut tuples = Vec::with_capacity(m_max + 1);
        let mut index = Vec::with_capacity(m_max + 1);
        for m in 0..=m_max {
            let coords = x.simplices_of_dim(m);
            let count = count_nondegenerate(&coords, p, m);
            if count > limit {
                return Err(Error::ResourceGuard {
                    what: format!("degree {m} of the {p}-fold power"),
                    size: count,
                    limit,
                });
            }
            let mut flat = Vec::with_capacity(count * p);
            let mut stack = Vec::with_capacity(p);
            enumerate(&coords, p, full_mask(m), &mut stack, &mut flat);
            let mut map = FxHashMap::default();
            map.reserve(count);
            for (k, t) in flat.chunks_exact(p).enumerate() {
                map.insert(t.to_vec().into_boxed_slice(), k as u32);
            }
            tuples.push(flat);
            index.push(map);
        }
        let complete = m_max >= p * x.cap();
        let mut this = Self {
            p,
            m_max,
            tuples,
            index,
            chains: ChainComplex::new(field, vec![1], vec![MatrixFp::zero(field, 0, 1)], false),
            complete,
        };
        this.chains = this.build_chains(x, field);
        Ok(this)
    }

    fn build_chains(&self, x: &FiniteSimplicialSet, field: PrimeField) -> ChainComplex {
        let dims: Vec<usize> = (0..=self.m_max).map(|m| self.count(m)).collect();
        let mut boundaries = vec![MatrixFp::zero(field, 0, dims[0])];
        let mut face_cache: FxHashMap<(SimplexRef, u8), SimplexRef> = FxHashMap::default();
        let mut buf = vec![SimplexRef::nondegenerate(0, 0); self.p];
        for m in 1..=self.m_max {
            let mut triplets = Vec::with_capacity(dims[m] * (m + 1));
            for (col, t) in self.tuples[m].chunks_exact(self.p).enumerate() {
                for i in 0..=m {
                    let mut common = full_mask(m - 1);
                    for (slot, &s) in buf.iter_mut().zip(t) {
                        let f = *face_cache
                            .entry((s, i as u8))
                            .or_insert_with(|| x.face(s, i));
                        common &= f.word.mask();
                        *slot = f;
                    }
                    if common != 0 {
                        continue;
                    }
                    let row = self.index[m - 1][buf.as_slice()];
                    triplets.push((row as usize, col, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            boundaries.push(MatrixFp::from_triplets(field, dims[m - 1], dims[m], triplets));
        }
        ChainComplex::new(field, dims, boundaries, self.complete)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn count(&self, m: usize) -> usize {
        self.tuples.get(m).map_or(0, |t| t.len() / self.p)
    }

    pub fn tuple(&self, m: usize, k: usize) -> &[SimplexRef] {
        &self.tuples[m][k * self.p..(k + 1) * self.p]
    }

    /// Basis index of a nondegenerate tuple.
    pub fn index_of(&self, m: usize, tuple: &[SimplexRef]) -> Option<usize> {
        self.index.get(m)?.get(tuple).map(|&k| k as usize)
    }

    pub fn chains(&self) -> &ChainComplex {
        &self.chains
    }

    /// Matrix of the cyclic shift `(x_1, ..., x_p) -> (x_p, x_1, ..., x_{p-1})` on `C_m(X^p)`.
    pub fn rotation_chain(&self, m: usize) -> MatrixFp {
        let field = self.chains.field();
        let n = self.count(m);
        let mut rotated = vec![SimplexRef::nondegenerate(0, 0); self.p];
        let mut triplets = Vec::with_capacity(n);
        for k in 0..n {
            let t = self.tuple(m, k);
            rotated[0] = t[self.p - 1];
            rotated[1..].copy_from_slice(&t[..self.p - 1]);
            let image = self.index[m][rotated.as_slice()];
            triplets.push((image as usize, k, 1));
        }
        MatrixFp::from_triplets(field, n, n, triplets)
    }

    /// The diagonal `σ -> (σ, ..., σ)` as a matrix `C_m(X) -> C_m(X^p)`.
    pub fn diagonal_chain(&self, x: &FiniteSimplicialSet, m: usize) -> MatrixFp {
        let field = self.chains.field();
        let triplets = x.generators_of_dim(m).iter().enumerate().map(|(col, &g)| {
            let t = vec![x.simplex(g); self.p];
            (self.index[m][t.as_slice()] as usize, col, 1)
        });
        MatrixFp::from_triplets(field, self.count(m), x.count(m), triplets)
    }
}

fn full_mask(m: usize) -> u32 {
    if m == 0 {
        0
    } else {
        (1u32 << m) - 1
    }
}

fn enumerate(
    coords: &[SimplexRef],
    p: usize,
    common: u32,
    stack: &mut Vec<SimplexRef>,
    out: &mut Vec<SimplexRef>,
) {
    if stack.len() == p {
        if common == 0 {
            out.extend_from_slice(stack);
        }
        return;
    }
    for &s in coords {
        stack.push(s);
        enumerate(coords, p, common & s.word.mask(), stack, out);
        stack.pop();
    }
}

/// Number of jointly nondegenerate `p`-tuples, by dynamic programming over masks.
fn count_nondegenerate(coords: &[SimplexRef], p: usize, m: usize) -> usize {
    let size = 1usize << m;
    let mut by_mask = vec![0usize; size];
    for s in coords {
        by_mask[s.word.mask() as usize] += 1;
    }
    let nonzero: Vec<(usize, usize)> = by_mask
        .iter()
        .enumerate()
        .filter(|(_, &b)| b != 0)
        .map(|(mask, &b)| (mask, b))
        .collect();
    let mut dist = vec![0usize; size];
    dist[full_mask(m) as usize] = 1;
    for _ in 0..p {
        let mut next = vec![0usize; size];
        for (acc, &a) in dist.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(mask, b) in &nonzero {
                let slot = &mut next[acc & mask];
                *slot = slot.saturating_add(a.saturating_mul(b));
            }
        }
        dist = next;
    }
    dist[0]
}

/// `X^p` through degree `m_max` with the default resource guard.
pub fn power_space(x: &FiniteSimplicialSet, field: PrimeField, m_max: usize) -> Result<PowerSpace> {
    PowerSpace::build(x, field, m_max, product_limit_from_env())
}

/// Chain map `C_m(X) -> C_m(X^p)` for every `m ≤ m_max`.
pub fn diagonal_chain(x: &FiniteSimplicialSet, power: &PowerSpace, m_max: usize) -> Vec<MatrixFp> {
    (0..=m_max).map(|m| power.diagonal_chain(x, m)).collect()
}
