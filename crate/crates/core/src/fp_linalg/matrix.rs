use super::{PrimeField, SparseVec};

/// Sparse row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl MatrixFp {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.last().is_none_or(|(i, _)| i < cols)));
        Self {
            field,
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Build from columns; column `j` becomes the `j`-th column.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[SparseVec]) -> Self {
        MatrixFp::from_rows(field, rows, columns.to_vec()).transpose()
    }

    pub fn from_triplets<I>(field: PrimeField, rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut buckets: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        Self {
            field,
            rows,
            cols,
            data: buckets
                .into_iter()
                .map(|b| SparseVec::from_entries(field, b))
                .collect(),
        }
    }

    pub fn from_dense(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_triplets(
            field,
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), cols);
                row.iter().enumerate().map(move |(c, &v)| (r, c, v))
            }),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut buckets: Vec<Vec<(u32, u8)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row.entries() {
                buckets[c as usize].push((r as u32, v));
            }
        }
        MatrixFp {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut acc = vec![0u32; other.cols];
        let mut touched: Vec<u32> = Vec::new();
        let data = self
            .data
            .iter()
            .map(|row| {
                for &(k, a) in row.entries() {
                    for &(c, b) in other.data[k as usize].entries() {
                        let slot = &mut acc[c as usize];
                        if *slot == 0 {
                            touched.push(c);
                        }
                        // keep the slot nonzero while touched so bookkeeping stays simple
                        *slot = (*slot + a as u32 * b as u32) % f.p() + f.p();
                    }
                }
                touched.sort_unstable();
                let out: Vec<(u32, u8)> = touched
                    .iter()
                    .filter_map(|&c| {
                        let v = (acc[c as usize] % f.p()) as u8;
                        acc[c as usize] = 0;
                        (v != 0).then_some((c, v))
                    })
                    .collect();
                touched.clear();
                SparseVec::from_sorted(out)
            })
            .collect();
        MatrixFp {
            field: f,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let dense = x.to_dense(self.cols);
        let mut entries = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let v = row.dot_dense(self.field, &dense);
            if v != 0 {
                entries.push((r as u32, v));
            }
        }
        SparseVec::from_sorted(entries)
    }

    /// `x^T M`, i.e. the linear combination of rows with coefficients `x`.
    pub fn left_mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, c) in x.iter() {
            out.axpy(self.field, c, &self.data[r]);
        }
        out
    }

    pub fn add(&self, other: &MatrixFp) -> MatrixFp {
        self.combine(1, other)
    }

    pub fn sub(&self, other: &MatrixFp) -> MatrixFp {
        self.combine(self.field.neg(1), other)
    }

    /// `self + c * other`.
    pub fn combine(&self, c: u8, other: &MatrixFp) -> MatrixFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.axpy(self.field, c, b);
        }
        out
    }

    pub fn scale(&self, c: u8) -> MatrixFp {
        let mut out = self.clone();
        for r in &mut out.data {
            r.scale(self.field, c);
        }
        out
    }

    pub fn pow(&self, e: usize) -> MatrixFp {
        assert_eq!(self.rows, self.cols);
        let mut acc = MatrixFp::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Place `block` with its top-left corner at `(row_off, col_off)` inside a zero matrix.
    pub fn embed(&self, rows: usize, cols: usize, row_off: usize, col_off: usize) -> MatrixFp {
        assert!(row_off + self.rows <= rows && col_off + self.cols <= cols);
        let mut data = vec![SparseVec::new(); rows];
        for (r, row) in self.data.iter().enumerate() {
            data[r + row_off] = row.shifted(col_off);
        }
        MatrixFp {
            field: self.field,
            rows,
            cols,
            data,
        }
    }
}

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: MatrixFp,
    pub pivots: Vec<usize>,
    /// Invertible `rows x rows` matrix with `transform * M = reduced`.
    pub transform: MatrixFp,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduce `rows` (each of length `width`) in place into RREF order.
///
/// Pivoting is deterministic: rows are processed in order and each new pivot is the
/// first nonzero column of the reduced row. Returns the pivot rows sorted by pivot
/// column together with the indices of the originating rows, and the zero rows.
pub(crate) fn echelonize(
    field: PrimeField,
    width: usize,
    rows: Vec<SparseVec>,
    pivot_limit: usize,
) -> (Vec<(usize, SparseVec)>, Vec<usize>) {
    // pivot_of[c] = slot of the pivot row owning column c
    let mut pivot_of: Vec<Option<usize>> = vec![None; width];
    let mut pivot_rows: Vec<(usize, SparseVec)> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut zero_rows = Vec::new();
    let mut dense = vec![0u8; width];
    for (origin, row) in rows.into_iter().enumerate() {
        // dense accumulation of row minus its projection onto existing pivots
        for (c, v) in row.iter() {
            dense[c] = v;
        }
        for (c, _) in row.iter() {
            if c >= pivot_limit {
                continue;
            }
            if let Some(slot) = pivot_of[c] {
                let coef = dense[c];
                if coef != 0 {
                    let neg = field.neg(coef);
                    for (k, w) in pivot_rows[slot].1.iter() {
                        dense[k] = field.add(dense[k], field.mul(neg, w));
                    }
                }
            }
        }
        let mut touched: Vec<usize> = row.iter().map(|(c, _)| c).collect();
        for (c, _) in row.iter() {
            if c < pivot_limit {
                if let Some(slot) = pivot_of[c] {
                    touched.extend(pivot_rows[slot].1.iter().map(|(k, _)| k));
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut reduced: Vec<(u32, u8)> = Vec::with_capacity(touched.len());
        for &k in &touched {
            if dense[k] != 0 {
                reduced.push((k as u32, dense[k]));
                dense[k] = 0;
            }
        }
        let mut reduced = SparseVec::from_sorted(reduced);
        let lead = reduced.first().filter(|&(c, _)| c < pivot_limit);
        let Some((c, v)) = lead else {
            zero_rows.push(origin);
            continue;
        };
        reduced.scale(field, field.inv(v));
        // back-substitute so the new pivot column is clear in all earlier pivot rows
        for (_, prow) in pivot_rows.iter_mut() {
            let coef = prow.get(c);
            if coef != 0 {
                prow.axpy(field, field.neg(coef), &reduced);
            }
        }
        pivot_of[c] = Some(pivot_rows.len());
        pivot_cols.push(c);
        pivot_rows.push((origin, reduced));
    }
    let mut order: Vec<usize> = (0..pivot_rows.len()).collect();
    order.sort_by_key(|&s| pivot_cols[s]);
    let mut slots: Vec<Option<(usize, SparseVec)>> = pivot_rows.into_iter().map(Some).collect();
    let sorted = order
        .into_iter()
        .map(|s| slots[s].take().unwrap())
        .collect();
    (sorted, zero_rows)
}

/// Reduced row-echelon form with the recorded row transform.
pub fn rref(m: &MatrixFp) -> Rref {
    let f = m.field;
    let width = m.cols + m.rows;
    let augmented: Vec<SparseVec> = m
        .data
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.axpy(f, 1, &SparseVec::unit(m.cols + r));
            v
        })
        .collect();
    let (pivot_rows, zero_rows) = echelonize(f, width, augmented, m.cols);
    let mut reduced = Vec::with_capacity(m.rows);
    let mut transform = Vec::with_capacity(m.rows);
    let mut pivots = Vec::new();
    for (_, row) in &pivot_rows {
        pivots.push(row.first().unwrap().0);
        reduced.push(row.slice(0, m.cols));
        transform.push(row.slice(m.cols, width));
    }
    // zero rows: re-run their combination through the same elimination to recover it
    if !zero_rows.is_empty() {
        let basis: Vec<SparseVec> = pivot_rows.iter().map(|(_, r)| r.clone()).collect();
        for origin in zero_rows {
            let mut v = m.data[origin].clone();
            v.axpy(f, 1, &SparseVec::unit(m.cols + origin));
            for row in &basis {
                let (c, _) = row.first().unwrap();
                let coef = v.get(c);
                if coef != 0 {
                    v.axpy(f, f.neg(coef), row);
                }
            }
            debug_assert!(v.slice(0, m.cols).is_zero());
            reduced.push(SparseVec::new());
            transform.push(v.slice(m.cols, width));
        }
    }
    Rref {
        reduced: MatrixFp::from_rows(f, m.cols, reduced),
        pivots,
        transform: MatrixFp::from_rows(f, m.rows, transform),
    }
}

/// Deterministic solution of `M x = b`: free variables are set to zero.
/// Returns `None` when `b` is not in the column space.
pub fn solve(m: &MatrixFp, b: &SparseVec) -> Option<SparseVec> {
    assert!(
        b.last().is_none_or(|(i, _)| i < m.rows),
        "right-hand side longer than the matrix"
    );
    let f = m.field;
    let r = rref(m);
    let tb = r.transform.mul_vec(b);
    if tb.iter().any(|(i, _)| i >= r.rank()) {
        return None;
    }
    let entries = tb
        .iter()
        .map(|(i, v)| (r.pivots[i], v as i64))
        .collect::<Vec<_>>();
    Some(SparseVec::from_entries(f, entries))
}

pub fn rank(m: &MatrixFp) -> usize {
    let (pivots, _) = echelonize(m.field, m.cols, m.data.clone(), m.cols);
    pivots.len()
}
