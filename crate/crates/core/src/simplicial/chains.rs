use super::set::FiniteSimplicialSet;
use crate::error::{Error, Result};
use crate::fp_linalg::{image, kernel, MatrixFp, PrimeField, Quotient, SparseVec};

/// A nonnegatively graded chain complex of finite-dimensional F_p vector spaces.
///
/// `boundary(d)` is `∂_d : C_d -> C_{d-1}` as a `dim(d-1) x dim(d)` matrix. The
/// complex is stored through degree `top`; when `complete` is set every higher
/// chain group is zero, otherwise higher degrees are simply unknown.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: PrimeField,
    dims: Vec<usize>,
    boundaries: Vec<MatrixFp>,
    complete: bool,
}

impl ChainComplex {
    /// `boundaries[d]` must be `dims[d-1] x dims[d]`; `boundaries[0]` is ignored.
    pub fn new(field: PrimeField, dims: Vec<usize>, mut boundaries: Vec<MatrixFp>, complete: bool) -> Self {
        assert_eq!(dims.len(), boundaries.len());
        if let Some(first) = boundaries.first_mut() {
            *first = MatrixFp::zero(field, 0, dims[0]);
        }
        for d in 1..dims.len() {
            assert_eq!(
                (boundaries[d].rows(), boundaries[d].cols()),
                (dims[d - 1], dims[d]),
                "boundary in degree {d} has the wrong shape"
            );
        }
        Self {
            field,
            dims,
            boundaries,
            complete,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Highest stored degree.
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Whether degree `d` is known (stored, or zero by completeness).
    pub fn knows(&self, d: usize) -> bool {
        d < self.dims.len() || self.complete
    }

    pub fn require(&self, d: usize) -> Result<()> {
        if self.knows(d) {
            Ok(())
        } else {
            Err(Error::Truncated {
                built: self.top(),
                needed: d,
            })
        }
    }

    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_d`; zero matrices outside the stored range.
    pub fn boundary(&self, d: usize) -> MatrixFp {
        if d == 0 {
            return MatrixFp::zero(self.field, 0, self.dim(0));
        }
        match self.boundaries.get(d) {
            Some(m) => m.clone(),
            None => MatrixFp::zero(self.field, self.dim(d - 1), self.dim(d)),
        }
    }

    pub fn boundary_ref(&self, d: usize) -> Option<&MatrixFp> {
        if d == 0 {
            None
        } else {
            self.boundaries.get(d)
        }
    }

    /// Check `∂_{d-1} ∂_d = 0` in every stored degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.dims.len()).all(|d| self.boundaries[d - 1].mul(&self.boundaries[d]).is_zero())
    }

    /// Coboundary `δ^d = ∂_{d+1}^T : C^d -> C^{d+1}`.
    pub fn coboundary(&self, d: usize) -> MatrixFp {
        self.boundary(d + 1).transpose()
    }

    /// Truncate to degrees `0..=d` (no longer complete unless nothing was dropped).
    pub fn truncated(&self, d: usize) -> ChainComplex {
        if d >= self.top() {
            return self.clone();
        }
        ChainComplex {
            field: self.field,
            dims: self.dims[..=d].to_vec(),
            boundaries: self.boundaries[..=d].to_vec(),
            complete: false,
        }
    }

    /// Direct sum; summand `k` occupies a contiguous block in each degree.
    pub fn direct_sum(parts: &[&ChainComplex]) -> ChainComplex {
        let field = parts[0].field;
        let top = parts.iter().map(|c| c.top()).max().unwrap_or(0);
        let complete = parts.iter().all(|c| c.complete);
        let dims: Vec<usize> = (0..=top).map(|d| parts.iter().map(|c| c.dim(d)).sum()).collect();
        let mut boundaries = vec![MatrixFp::zero(field, 0, dims[0])];
        for d in 1..=top {
            let mut triplets = Vec::new();
            let (mut r0, mut c0) = (0, 0);
            for c in parts {
                let b = c.boundary(d);
                for r in 0..b.rows() {
                    for (col, v) in b.row(r).iter() {
                        triplets.push((r0 + r, c0 + col, v as i64));
                    }
                }
                r0 += c.dim(d - 1);
                c0 += c.dim(d);
            }
            boundaries.push(MatrixFp::from_triplets(field, dims[d - 1], dims[d], triplets));
        }
        ChainComplex::new(field, dims, boundaries, complete)
    }
}

/// `H^n` of a chain complex with a fixed deterministic basis of cocycle representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    quotient: Quotient,
}

impl Cohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cocycle representatives of the basis classes.
    pub fn basis(&self) -> &[SparseVec] {
        self.quotient.representatives()
    }

    /// Coordinates of the class of a cocycle; `None` if it is not a cocycle.
    pub fn coordinates(&self, cocycle: &SparseVec) -> Option<Vec<u8>> {
        self.quotient.coordinates(cocycle)
    }

    /// Cocycle representing the class with the given coordinates.
    pub fn representative(&self, coords: &[u8]) -> SparseVec {
        self.quotient.lift(coords)
    }

    pub fn coboundaries(&self) -> &crate::fp_linalg::SubspaceFp {
        self.quotient.sub()
    }
}

/// `H^n(C; F_p)`: the rref complement of coboundaries inside cocycles.
pub fn chain_cohomology(c: &ChainComplex, n: usize) -> Result<Cohomology> {
    c.require(n + 1)?;
    let cocycles = kernel(&c.coboundary(n));
    let coboundaries = if n == 0 {
        crate::fp_linalg::SubspaceFp::zero(c.field(), c.dim(0))
    } else {
        image(&c.coboundary(n - 1))
    };
    Ok(Cohomology {
        degree: n,
        quotient: Quotient::new(&cocycles, &coboundaries),
    })
}

/// Normalized chains: basis = nondegenerate simplices, `∂ = Σ (-1)^i d_i` with
/// degenerate faces dropped.
pub fn chain_complex(x: &FiniteSimplicialSet, field: PrimeField, m_max: usize) -> ChainComplex {
    let top = m_max.min(x.cap());
    let dims: Vec<usize> = (0..=top).map(|d| x.count(d)).collect();
    let mut boundaries = vec![MatrixFp::zero(field, 0, dims[0])];
    for d in 1..=top {
        let mut triplets = Vec::new();
        for (col, &g) in x.generators_of_dim(d).iter().enumerate() {
            let s = x.simplex(g);
            for i in 0..=d {
                let face = x.face(s, i);
                if !face.is_degenerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    triplets.push((x.position(face.gen), col, sign));
                }
            }
        }
        boundaries.push(MatrixFp::from_triplets(field, dims[d - 1], dims[d], triplets));
    }
    ChainComplex::new(field, dims, boundaries, m_max >= x.cap())
}

/// `H^n(X; F_p)` with fixed cocycle representatives.
pub fn cohomology(x: &FiniteSimplicialSet, field: PrimeField, n: usize) -> Result<Cohomology> {
    chain_cohomology(&chain_complex(x, field, n + 1), n)
}
