//! Column reduction of coboundary matrices, in the style of persistent cohomology.
//!
//! For large cochain complexes we never form the cocycle space explicitly. Instead
//! the incoming coboundary `δ^{m-1}` is reduced to get a basis of `B^m` with
//! distinct low indices, and the outgoing coboundary `δ^m` is reduced with
//! clearing: columns whose index is a low of `B^m` are known to reduce to zero and
//! are skipped. The remaining columns that reduce to zero carry, through the
//! recorded transform, cocycles whose classes form a basis of `H^m`.

use rustc_hash::FxHashMap;

use super::{PrimeField, SparseVec};

/// Reduce `columns` left to right so that all nonzero columns have distinct lows
/// (largest nonzero index). Columns listed in `skip` are left untouched and
/// treated as zero. When `track` is set, the transform column `V_j` (with
/// `δ V_j = R_j`) is kept for every column.
pub struct ColumnReduction {
    field: PrimeField,
    pub reduced: Vec<SparseVec>,
    pub transform: Vec<SparseVec>,
    pub low_to_column: FxHashMap<u32, u32>,
}

impl ColumnReduction {
    pub fn run(
        field: PrimeField,
        columns: Vec<SparseVec>,
        skip: &dyn Fn(usize) -> bool,
        track: bool,
    ) -> Self {
        let mut low_to_column: FxHashMap<u32, u32> = FxHashMap::default();
        let mut reduced: Vec<SparseVec> = Vec::with_capacity(columns.len());
        let mut transform: Vec<SparseVec> = Vec::with_capacity(if track { columns.len() } else { 0 });
        for (j, mut col) in columns.into_iter().enumerate() {
            let mut v = if track { SparseVec::unit(j) } else { SparseVec::new() };
            if skip(j) {
                col = SparseVec::new();
            }
            while let Some((low, val)) = col.last() {
                let Some(&other) = low_to_column.get(&(low as u32)) else {
                    break;
                };
                let other = other as usize;
                let pivot_val = reduced[other].last().unwrap().1;
                let coef = field.neg(field.mul(val, field.inv(pivot_val)));
                col.axpy(field, coef, &reduced[other]);
                if track {
                    v.axpy(field, coef, &transform[other]);
                }
            }
            if let Some((low, _)) = col.last() {
                low_to_column.insert(low as u32, j as u32);
            }
            reduced.push(col);
            if track {
                transform.push(v);
            }
        }
        Self {
            field,
            reduced,
            transform,
            low_to_column,
        }
    }

    pub fn rank(&self) -> usize {
        self.low_to_column.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
}

/// `H^m = ker δ^m / im δ^{m-1}` for one degree of a cochain complex over F_p.
#[derive(Clone, Debug)]
pub struct CocycleQuotient {
    field: PrimeField,
    dim: usize,
    /// basis of `B^m` with distinct lows
    boundaries: Vec<SparseVec>,
    boundary_low: FxHashMap<u32, u32>,
    /// cocycle representatives, one per cohomology basis element
    representatives: Vec<SparseVec>,
    representative_low: FxHashMap<u32, u32>,
}

impl CocycleQuotient {
    /// `incoming`: columns of `δ^{m-1}` (vectors in the degree-`m` cochain space of
    /// dimension `dim`); `outgoing`: the `dim` columns of `δ^m`.
    pub fn compute(
        field: PrimeField,
        dim: usize,
        incoming: Vec<SparseVec>,
        outgoing: Vec<SparseVec>,
    ) -> Self {
        assert_eq!(outgoing.len(), dim, "outgoing coboundary must have one column per cochain");
        let inc = ColumnReduction::run(field, incoming, &|_| false, false);
        let mut boundaries = Vec::with_capacity(inc.rank());
        let mut boundary_low = FxHashMap::default();
        for col in inc.reduced.into_iter().filter(|c| !c.is_zero()) {
            let low = col.last().unwrap().0 as u32;
            boundary_low.insert(low, boundaries.len() as u32);
            boundaries.push(col);
        }
        let cleared = |j: usize| boundary_low.contains_key(&(j as u32));
        let out = ColumnReduction::run(field, outgoing, &cleared, true);
        let mut representatives = Vec::new();
        let mut representative_low = FxHashMap::default();
        for (j, (r, v)) in out.reduced.iter().zip(out.transform).enumerate() {
            if r.is_zero() && !cleared(j) {
                debug_assert_eq!(v.last().map(|e| e.0), Some(j));
                representative_low.insert(j as u32, representatives.len() as u32);
                representatives.push(v);
            }
        }
        Self {
            field,
            dim,
            boundaries,
            boundary_low,
            representatives,
            representative_low,
        }
    }

    pub fn cochain_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundaries.len()
    }

    /// Coordinates of the class of `z`; `None` when `z` is not a cocycle.
    pub fn coordinates(&self, z: &SparseVec) -> Option<Vec<u8>> {
        let f = self.field;
        let mut coords = vec![0u8; self.dim()];
        let mut rest = z.clone();
        while let Some((low, val)) = rest.last() {
            let key = low as u32;
            if let Some(&b) = self.boundary_low.get(&key) {
                let row = &self.boundaries[b as usize];
                let coef = f.neg(f.mul(val, f.inv(row.last().unwrap().1)));
                rest.axpy(f, coef, row);
            } else if let Some(&r) = self.representative_low.get(&key) {
                let row = &self.representatives[r as usize];
                let c = f.mul(val, f.inv(row.last().unwrap().1));
                coords[r as usize] = f.add(coords[r as usize], c);
                rest.axpy(f, f.neg(c), row);
            } else {
                return None;
            }
        }
        Some(coords)
    }

    pub fn is_coboundary(&self, z: &SparseVec) -> bool {
        self.coordinates(z).is_some_and(|c| c.iter().all(|&x| x == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_linalg::MatrixFp;

    #[test]
    fn circle_cohomology() {
        // triangle boundary with vertices 0,1,2 and edges 01, 02, 12
        let f = PrimeField::new(3).unwrap();
        let d1 = MatrixFp::from_dense(f, 3, &[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        // δ^0 = d1^T: columns indexed by vertices, entries in edges
        let delta0 = d1.transpose().columns();
        let h0 = CocycleQuotient::compute(f, 3, vec![], delta0.clone());
        assert_eq!(h0.dim(), 1);
        let h1 = CocycleQuotient::compute(f, 3, delta0, vec![SparseVec::new(); 3]);
        assert_eq!(h1.dim(), 1);
        assert_eq!(h1.boundary_rank(), 2);
        // the cochain dual to any one edge generates H^1
        for e in 0..3 {
            let c = h1.coordinates(&SparseVec::unit(e)).unwrap();
            assert_ne!(c[0], 0);
        }
    }
}
