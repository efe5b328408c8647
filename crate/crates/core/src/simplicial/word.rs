use crate::error::{Error, Result};

/// Largest simplex dimension representable by a [`DegeneracyWord`].
pub const MAX_DIM: usize = 31;

/// A canonical degeneracy operator `s_{i_k} ... s_{i_1}` with `i_k > ... > i_1`.
///
/// Stored as the set of indices. Applied to an `n`-simplex it produces an
/// `(n + k)`-simplex whose vertices `i` and `i + 1` coincide exactly for the
/// indices `i` in the word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyWord {
    mask: u32,
}

impl DegeneracyWord {
    pub const IDENTITY: DegeneracyWord = DegeneracyWord { mask: 0 };

    /// From indices written left to right, i.e. strictly decreasing.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSimplicialSet(format!(
                "degeneracy word {indices:?} is not strictly decreasing"
            )));
        }
        let mut mask = 0u32;
        for &i in indices {
            if i >= MAX_DIM {
                return Err(Error::DimensionTooLarge(i));
            }
            mask |= 1 << i;
        }
        Ok(Self { mask })
    }

    pub fn from_mask(mask: u32) -> Self {
        Self { mask }
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// The indices in canonical (strictly decreasing) order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).rev().filter(|&i| self.mask >> i & 1 == 1).collect()
    }

    /// The monotone surjection `[dim] -> [dim - len]` this word acts by.
    pub fn surjection(self, dim: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(dim + 1);
        let mut v = 0u8;
        out.push(0);
        for k in 0..dim {
            if self.mask >> k & 1 == 0 {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    /// Canonical word of a monotone surjection given by its values.
    pub fn from_surjection(map: &[u8]) -> Self {
        let mut mask = 0u32;
        for k in 0..map.len().saturating_sub(1) {
            if map[k] == map[k + 1] {
                mask |= 1 << k;
            }
        }
        Self { mask }
    }
}

impl std::fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in self.indices() {
            write!(f, "s{i} ")?;
        }
        Ok(())
    }
}

/// Index of a nondegenerate generator inside its simplicial set.
pub type GenId = u32;

/// A simplex `s_I σ` with `σ` a nondegenerate generator and `I` canonical.
///
/// The derived order is lexicographic on `(dim, generator, word)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub dim: u8,
    pub gen: GenId,
    pub word: DegeneracyWord,
}

impl SimplexRef {
    pub fn nondegenerate(gen: GenId, dim: usize) -> Self {
        Self {
            dim: dim as u8,
            gen,
            word: DegeneracyWord::IDENTITY,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Dimension of the underlying generator.
    pub fn base_dim(&self) -> usize {
        self.dim() - self.word.len()
    }
}

/// The coface map `δ_i : [dim - 1] -> [dim]` skipping `i`.
pub fn coface(dim: usize, i: usize) -> Vec<u8> {
    (0..dim).map(|k| if k < i { k as u8 } else { k as u8 + 1 }).collect()
}

/// The codegeneracy `σ_i : [dim + 1] -> [dim]` hitting `i` twice.
pub fn codegeneracy(dim: usize, i: usize) -> Vec<u8> {
    (0..=dim + 1)
        .map(|k| if k <= i { k as u8 } else { k as u8 - 1 })
        .collect()
}

/// Composite `outer ∘ inner` of monotone maps given by their values.
pub fn compose(outer: &[u8], inner: &[u8]) -> Vec<u8> {
    inner.iter().map(|&k| outer[k as usize]).collect()
}
