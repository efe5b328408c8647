use std::collections::HashMap;

use super::word::{codegeneracy, coface, compose, DegeneracyWord, GenId, SimplexRef, MAX_DIM};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dim: usize,
}

/// A face or degeneracy operator in a formal composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplicialOp {
    Face(usize),
    Degeneracy(usize),
}

/// A finite simplicial set given by its nondegenerate simplices and their faces.
///
/// Generators are numbered by dimension first, then in insertion order. Every
/// simplex is addressed canonically as a [`SimplexRef`]; the face calculus is
/// carried out on monotone maps and normalized by epi-mono factorization.
#[derive(Clone, Debug)]
pub struct FiniteSimplicialSet {
    cap: usize,
    gens: Vec<Generator>,
    by_dim: Vec<Vec<GenId>>,
    /// position of each generator within its dimension
    position: Vec<usize>,
    faces: Vec<Vec<SimplexRef>>,
    names: HashMap<String, GenId>,
}

/// Incremental construction; generators may only reference earlier generators.
#[derive(Clone, Debug, Default)]
pub struct SimplicialSetBuilder {
    gens: Vec<Generator>,
    faces: Vec<Vec<SimplexRef>>,
    names: HashMap<String, usize>,
}

impl SimplicialSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Handle of a previously added generator by name.
    pub fn id(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        self.simplex(name, 0, Vec::new())
    }

    /// Add a nondegenerate simplex; `faces[i]` is `d_i` given as
    /// `(builder handle, degeneracy word)`.
    pub fn simplex(
        &mut self,
        name: impl Into<String>,
        dim: usize,
        faces: Vec<(usize, DegeneracyWord)>,
    ) -> Result<usize> {
        let name = name.into();
        if self.names.contains_key(&name) {
            return Err(Error::InvalidSimplicialSet(format!(
                "duplicate generator name {name:?}"
            )));
        }
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::InvalidSimplicialSet(format!(
                "generator {name:?} of dimension {dim} needs {expected} faces, got {}",
                faces.len()
            )));
        }
        let mut refs = Vec::with_capacity(faces.len());
        for (i, (handle, word)) in faces.into_iter().enumerate() {
            let Some(g) = self.gens.get(handle) else {
                return Err(Error::InvalidSimplicialSet(format!(
                    "face d{i} of {name:?} references an unknown generator"
                )));
            };
            if g.dim + word.len() != dim - 1 {
                return Err(Error::InvalidSimplicialSet(format!(
                    "face d{i} of {name:?} has dimension {} instead of {}",
                    g.dim + word.len(),
                    dim - 1
                )));
            }
            if word.indices().first().is_some_and(|&top| top >= dim - 1) {
                return Err(Error::InvalidSimplicialSet(format!(
                    "face d{i} of {name:?} has an out-of-range degeneracy word"
                )));
            }
            // builder handles are renumbered at build time
            refs.push(SimplexRef {
                dim: (dim - 1) as u8,
                gen: handle as GenId,
                word,
            });
        }
        self.names.insert(name.clone(), self.gens.len());
        self.gens.push(Generator { name, dim });
        self.faces.push(refs);
        Ok(self.gens.len() - 1)
    }

    pub fn build(self) -> Result<FiniteSimplicialSet> {
        let cap = self.gens.iter().map(|g| g.dim).max().unwrap_or(0);
        let mut order: Vec<usize> = (0..self.gens.len()).collect();
        order.sort_by_key(|&h| self.gens[h].dim);
        let mut new_id = vec![0 as GenId; self.gens.len()];
        for (id, &h) in order.iter().enumerate() {
            new_id[h] = id as GenId;
        }
        let gens: Vec<Generator> = order.iter().map(|&h| self.gens[h].clone()).collect();
        let faces: Vec<Vec<SimplexRef>> = order
            .iter()
            .map(|&h| {
                self.faces[h]
                    .iter()
                    .map(|r| SimplexRef {
                        gen: new_id[r.gen as usize],
                        ..*r
                    })
                    .collect()
            })
            .collect();
        FiniteSimplicialSet::from_parts(cap, gens, faces)
    }
}

impl FiniteSimplicialSet {
    fn from_parts(cap: usize, gens: Vec<Generator>, faces: Vec<Vec<SimplexRef>>) -> Result<Self> {
        let mut by_dim = vec![Vec::new(); cap + 1];
        let mut position = Vec::with_capacity(gens.len());
        let mut names = HashMap::new();
        for (id, g) in gens.iter().enumerate() {
            position.push(by_dim[g.dim].len());
            by_dim[g.dim].push(id as GenId);
            names.insert(g.name.clone(), id as GenId);
        }
        let set = Self {
            cap,
            gens,
            by_dim,
            position,
            faces,
            names,
        };
        set.check_identities()?;
        Ok(set)
    }

    /// Maximal dimension of a generator.
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.names.get(name).copied()
    }

    /// Nondegenerate simplices of dimension `d`, in basis order.
    pub fn generators_of_dim(&self, d: usize) -> &[GenId] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, d: usize) -> usize {
        self.generators_of_dim(d).len()
    }

    /// Basis position of a generator within its dimension.
    pub fn position(&self, id: GenId) -> usize {
        self.position[id as usize]
    }

    pub fn generator_faces(&self, id: GenId) -> &[SimplexRef] {
        &self.faces[id as usize]
    }

    pub fn simplex(&self, id: GenId) -> SimplexRef {
        SimplexRef::nondegenerate(id, self.gens[id as usize].dim)
    }

    /// `θ^* x` for a monotone map `θ : [r] -> [dim x]`.
    pub fn apply(&self, x: SimplexRef, theta: &[u8]) -> SimplexRef {
        debug_assert!(theta.iter().all(|&k| (k as usize) <= x.dim()));
        let eta = x.word.surjection(x.dim());
        let phi = compose(&eta, theta);
        self.apply_to_generator(x.gen, &phi)
    }

    /// `φ^* σ` for a generator `σ` and a monotone `φ : [r] -> [dim σ]`.
    fn apply_to_generator(&self, gen: GenId, phi: &[u8]) -> SimplexRef {
        let n = self.gens[gen as usize].dim;
        let mut hit = vec![false; n + 1];
        for &k in phi {
            hit[k as usize] = true;
        }
        match hit.iter().position(|&h| !h) {
            None => SimplexRef {
                dim: (phi.len() - 1) as u8,
                gen,
                word: DegeneracyWord::from_surjection(phi),
            },
            Some(j) => {
                // factor through d_j: φ = δ_j ∘ φ'
                let reduced: Vec<u8> = phi.iter().map(|&k| if k > j as u8 { k - 1 } else { k }).collect();
                let face = self.faces[gen as usize][j];
                self.apply(face, &reduced)
            }
        }
    }

    pub fn face(&self, x: SimplexRef, i: usize) -> SimplexRef {
        assert!(x.dim() > 0 && i <= x.dim(), "face d{i} of a {}-simplex", x.dim());
        self.apply(x, &coface(x.dim(), i))
    }

    pub fn degeneracy(&self, x: SimplexRef, i: usize) -> SimplexRef {
        assert!(i <= x.dim(), "degeneracy s{i} of a {}-simplex", x.dim());
        self.apply(x, &codegeneracy(x.dim(), i))
    }

    /// The `k`-th vertex of `x`.
    pub fn vertex(&self, x: SimplexRef, k: usize) -> SimplexRef {
        self.apply(x, &[k as u8])
    }

    /// Normalize a formal composite `ops[0] ops[1] ... ops[last] σ`
    /// (the rightmost operator is applied first).
    pub fn normalize(&self, gen: GenId, ops: &[SimplicialOp]) -> Result<SimplexRef> {
        let mut x = self.simplex(gen);
        for op in ops.iter().rev() {
            x = match *op {
                SimplicialOp::Face(i) if x.dim() > 0 && i <= x.dim() => self.face(x, i),
                SimplicialOp::Degeneracy(i) if i <= x.dim() && x.dim() < MAX_DIM => {
                    self.degeneracy(x, i)
                }
                _ => {
                    return Err(Error::InvalidSimplicialSet(format!(
                        "operator {op:?} cannot act on a {}-simplex",
                        x.dim()
                    )))
                }
            };
        }
        Ok(x)
    }

    /// All `m`-simplices (degenerate ones included) in canonical order.
    pub fn simplices_of_dim(&self, m: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for n in 0..=m.min(self.cap) {
            let k = m - n;
            let masks = subsets_of_size(m, k);
            for &gen in self.generators_of_dim(n) {
                for &mask in &masks {
                    out.push(SimplexRef {
                        dim: m as u8,
                        gen,
                        word: DegeneracyWord::from_mask(mask),
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Check `d_i d_j = d_{j-1} d_i` for `i < j` on every generator.
    fn check_identities(&self) -> Result<()> {
        for (id, g) in self.gens.iter().enumerate() {
            let x = self.simplex(id as GenId);
            if g.dim < 2 {
                continue;
            }
            for j in 0..=g.dim {
                for i in 0..j {
                    let left = self.face(self.face(x, j), i);
                    let right = self.face(self.face(x, i), j - 1);
                    if left != right {
                        return Err(Error::InvalidSimplicialSet(format!(
                            "simplicial identity d{i} d{j} = d{} d{i} fails on {:?}",
                            j - 1,
                            g.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Generators of dimension at most `d` (a sub-simplicial set, since faces only go down).
    pub fn skeleton(&self, d: usize) -> FiniteSimplicialSet {
        let keep = self.gens.iter().take_while(|g| g.dim <= d).count();
        let cap = self.gens[..keep].iter().map(|g| g.dim).max().unwrap_or(0);
        Self::from_parts(cap, self.gens[..keep].to_vec(), self.faces[..keep].to_vec())
            .expect("a skeleton of a valid simplicial set is valid")
    }

    /// Human-readable rendering such as `s1 s0 a`.
    pub fn render(&self, x: SimplexRef) -> String {
        format!("{}{}", x.word, self.gens[x.gen as usize].name)
    }
}

/// Bitmasks of `k`-element subsets of `{0, ..., n - 1}` in increasing order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out.sort_unstable();
    out
}
