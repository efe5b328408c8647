use super::PrimeField;

/// A sparse vector over F_p: sorted `(index, value)` pairs, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    entries: Vec<(u32, u8)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i as u32, 1)],
        }
    }

    /// Build from unsorted, possibly repeated entries; values are taken mod p.
    pub fn from_entries<I>(field: PrimeField, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut raw: Vec<(u32, i64)> = entries
            .into_iter()
            .map(|(i, v)| (i as u32, v))
            .collect();
        raw.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, u8)> = Vec::with_capacity(raw.len());
        let mut iter = raw.into_iter().peekable();
        while let Some((i, v)) = iter.next() {
            let mut acc = v.rem_euclid(field.p() as i64);
            while let Some(&(j, w)) = iter.peek() {
                if j != i {
                    break;
                }
                acc = (acc + w).rem_euclid(field.p() as i64);
                iter.next();
            }
            if acc != 0 {
                out.push((i, acc as u8));
            }
        }
        Self { entries: out }
    }

    /// Build from already sorted, deduplicated, nonzero entries.
    pub fn from_sorted(entries: Vec<(u32, u8)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        Self { entries }
    }

    pub fn from_dense(values: &[u8]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i as u32, v))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        for &(i, v) in &self.entries {
            out[i as usize] = v;
        }
        out
    }

    pub fn entries(&self) -> &[(u32, u8)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.entries.iter().map(|&(i, v)| (i as usize, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        match self.entries.binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    /// Largest index with a nonzero entry.
    pub fn last(&self) -> Option<(usize, u8)> {
        self.entries.last().map(|&(i, v)| (i as usize, v))
    }

    pub fn first(&self) -> Option<(usize, u8)> {
        self.entries.first().map(|&(i, v)| (i as usize, v))
    }

    pub fn scale(&mut self, field: PrimeField, c: u8) {
        if c == 0 {
            self.entries.clear();
            return;
        }
        for e in &mut self.entries {
            e.1 = field.mul(e.1, c);
        }
    }

    pub fn scaled(&self, field: PrimeField, c: u8) -> Self {
        let mut out = self.clone();
        out.scale(field, c);
        out
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, field: PrimeField, c: u8, other: &SparseVec) {
        if c == 0 || other.is_zero() {
            return;
        }
        let a = std::mem::take(&mut self.entries);
        let b = &other.entries;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ia, va) = a[i];
            let (ib, vb) = b[j];
            if ia < ib {
                out.push((ia, va));
                i += 1;
            } else if ib < ia {
                out.push((ib, field.mul(c, vb)));
                j += 1;
            } else {
                let s = field.add(va, field.mul(c, vb));
                if s != 0 {
                    out.push((ia, s));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(ib, vb)| (ib, field.mul(c, vb))));
        self.entries = out;
    }

    pub fn add(&self, field: PrimeField, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(field, 1, other);
        out
    }

    pub fn sub(&self, field: PrimeField, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(field, field.neg(1), other);
        out
    }

    pub fn dot_dense(&self, field: PrimeField, dense: &[u8]) -> u8 {
        let mut acc: u64 = 0;
        for &(i, v) in &self.entries {
            acc += v as u64 * dense[i as usize] as u64;
        }
        (acc % field.p() as u64) as u8
    }

    pub fn dot(&self, field: PrimeField, other: &SparseVec) -> u8 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc: u64 = 0;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a[i].1 as u64 * b[j].1 as u64;
                    i += 1;
                    j += 1;
                }
            }
        }
        (acc % field.p() as u64) as u8
    }

    /// Shift every index by `offset` (used to place a block inside a larger vector).
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|&(i, v)| (i + offset as u32, v))
                .collect(),
        }
    }

    /// The entries with index in `start..end`, re-based to start at zero.
    pub fn slice(&self, start: usize, end: usize) -> SparseVec {
        let lo = self.entries.partition_point(|e| (e.0 as usize) < start);
        let hi = self.entries.partition_point(|e| (e.0 as usize) < end);
        SparseVec {
            entries: self.entries[lo..hi]
                .iter()
                .map(|&(i, v)| (i - start as u32, v))
                .collect(),
        }
    }

    /// Concatenate blocks whose lengths are given by `lens`.
    pub fn concat(blocks: &[SparseVec], lens: &[usize]) -> SparseVec {
        let mut entries = Vec::new();
        let mut offset = 0u32;
        for (b, &len) in blocks.iter().zip(lens) {
            entries.extend(b.entries.iter().map(|&(i, v)| (i + offset, v)));
            offset += len as u32;
        }
        SparseVec { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let f = PrimeField::new(3).unwrap();
        let mut a = SparseVec::from_entries(f, [(0, 1), (2, 2), (5, 1)]);
        let b = SparseVec::from_entries(f, [(2, 1), (3, 1)]);
        a.axpy(f, 1, &b);
        assert_eq!(a.entries(), &[(0, 1), (3, 1), (5, 1)]);
        a.axpy(f, 2, &a.clone());
        assert!(a.is_zero());
    }

    #[test]
    fn from_entries_combines_duplicates() {
        let f = PrimeField::new(5).unwrap();
        let v = SparseVec::from_entries(f, [(4, 3), (1, 1), (4, 2), (1, -1)]);
        assert!(v.is_zero());
    }

    #[test]
    fn slicing_and_concat() {
        let f = PrimeField::new(2).unwrap();
        let v = SparseVec::from_entries(f, [(0, 1), (3, 1), (4, 1)]);
        assert_eq!(v.slice(2, 5).entries(), &[(1, 1), (2, 1)]);
        let c = SparseVec::concat(&[v.slice(0, 2), v.slice(2, 5)], &[2, 3]);
        assert_eq!(c, v);
    }
}
