use super::matrix::echelonize;
use super::{MatrixFp, PrimeField, SparseVec};

/// A subspace of F_p^n stored as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFp {
    field: PrimeField,
    ambient_dim: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SubspaceFp {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(SparseVec::unit).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<I>(field: PrimeField, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let rows: Vec<SparseVec> = vectors.into_iter().collect();
        debug_assert!(rows
            .iter()
            .all(|r| r.last().is_none_or(|(i, _)| i < ambient_dim)));
        let (pivot_rows, _) = echelonize(field, ambient_dim, rows, ambient_dim);
        let basis: Vec<SparseVec> = pivot_rows.into_iter().map(|(_, r)| r).collect();
        let pivots = basis.iter().map(|r| r.first().unwrap().0).collect();
        Self {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduce `v` modulo this subspace: the result vanishes on every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let coef = out.get(c);
            if coef != 0 {
                out.axpy(self.field, self.field.neg(coef), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<u8>> {
        let coords: Vec<u8> = self.pivots.iter().map(|&c| v.get(c)).collect();
        let mut rest = v.clone();
        for (row, &coef) in self.basis.iter().zip(&coords) {
            if coef != 0 {
                rest.axpy(self.field, self.field.neg(coef), row);
            }
        }
        rest.is_zero().then_some(coords)
    }

    pub fn contains_subspace(&self, other: &SubspaceFp) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceFp) -> SubspaceFp {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "ambient dimensions differ"
        );
        SubspaceFp::span(
            self.field,
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &SubspaceFp) -> SubspaceFp {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // kernel of [A^T | -B^T] gives pairs (x, y) with x A = y B
        let f = self.field;
        let a = self.dim();
        let rows: Vec<SparseVec> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| v.scaled(f, f.neg(1))))
            .collect();
        let stacked = MatrixFp::from_rows(f, self.ambient_dim, rows).transpose();
        let ker = kernel(&stacked);
        let self_matrix = MatrixFp::from_rows(f, self.ambient_dim, self.basis.clone());
        SubspaceFp::span(
            f,
            self.ambient_dim,
            ker.basis
                .iter()
                .map(|k| self_matrix.left_mul_vec(&k.slice(0, a))),
        )
    }

    pub fn as_matrix(&self) -> MatrixFp {
        MatrixFp::from_rows(self.field, self.ambient_dim, self.basis.clone())
    }
}

/// Null space `{x : M x = 0}` as a subspace of F_p^cols.
pub fn kernel(m: &MatrixFp) -> SubspaceFp {
    let f = m.field();
    let (pivot_rows, _) = echelonize(f, m.cols(), m.row_vecs().to_vec(), m.cols());
    let mut is_pivot = vec![false; m.cols()];
    let pivots: Vec<usize> = pivot_rows.iter().map(|(_, r)| r.first().unwrap().0).collect();
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let vectors = (0..m.cols()).filter(|&c| !is_pivot[c]).map(|free| {
        let mut entries = vec![(free, 1i64)];
        for ((_, row), &pc) in pivot_rows.iter().zip(&pivots) {
            let v = row.get(free);
            if v != 0 {
                entries.push((pc, -(v as i64)));
            }
        }
        SparseVec::from_entries(f, entries)
    });
    SubspaceFp::span(f, m.cols(), vectors)
}

/// Column space of `M` as a subspace of F_p^rows.
pub fn image(m: &MatrixFp) -> SubspaceFp {
    SubspaceFp::span(m.field(), m.rows(), m.columns())
}

/// A quotient `S / T` for `T ⊆ S`, with a fixed complement basis.
///
/// The complement is the echelon basis of `S` reduced modulo `T`; its pivots are
/// disjoint from the pivots of `T`, so coordinates are read off directly.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: SubspaceFp,
    complement: SubspaceFp,
}

impl Quotient {
    pub fn new(whole: &SubspaceFp, sub: &SubspaceFp) -> Self {
        assert_eq!(whole.ambient_dim, sub.ambient_dim, "ambient dimensions differ");
        debug_assert!(whole.contains_subspace(sub), "quotient by a non-subspace");
        let complement = SubspaceFp::span(
            whole.field,
            whole.ambient_dim,
            whole.basis.iter().map(|v| sub.reduce(v)),
        );
        Self {
            sub: sub.clone(),
            complement,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    /// Representatives of the quotient basis.
    pub fn representatives(&self) -> &[SparseVec] {
        self.complement.basis()
    }

    pub fn sub(&self) -> &SubspaceFp {
        &self.sub
    }

    /// Coordinates of the coset `v + T`; `None` if `v` is not in `S`.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<u8>> {
        self.complement.coordinates(&self.sub.reduce(v))
    }

    /// The representative `Σ c_k q_k` of the coset with coordinates `coords`.
    pub fn lift(&self, coords: &[u8]) -> SparseVec {
        let f = self.sub.field;
        let mut out = SparseVec::new();
        for (q, &c) in self.complement.basis().iter().zip(coords) {
            out.axpy(f, c, q);
        }
        out
    }
}

/// Coordinates of `v` in `S / T`: the deterministic complement described on [`Quotient`].
pub fn quotient_coordinates(s: &SubspaceFp, t: &SubspaceFp, v: &SparseVec) -> Option<Vec<u8>> {
    Quotient::new(s, t).coordinates(v)
}
