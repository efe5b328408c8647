//! Equivariant cohomology `h^*_{C_p}(A)` through the total complex
//! `Hom_{C_p}(W ⊗ A, F_p)` built on the periodic resolution.
//!
//! A total cochain of degree `m` is a family `f_j` of functionals on
//! `A_{m-j}`, `0 ≤ j ≤ m`, stored as consecutive blocks. Its coboundary is
//! `(δf)_j(a) = T_j(a) + (-1)^j f_j(∂a)` with `T_j = f_{j-1} ∘ (t^{-1} - 1)` for
//! odd `j`, `T_j = f_{j-1} ∘ N` for even `j > 0`, and `T_0 = 0`.

use crate::error::{Error, Result};
use crate::fp_linalg::{CocycleQuotient, MatrixFp, PrimeField, Quotient, SparseVec, SubspaceFp};
use crate::simplicial::{chain_cohomology, ChainComplex, Cohomology, PowerSpace};

/// A chain complex with an action of the cyclic generator `t`.
#[derive(Clone, Debug)]
pub struct CpComplex {
    chains: ChainComplex,
    action: Vec<MatrixFp>,
    inverse: Vec<MatrixFp>,
    norm: Vec<MatrixFp>,
    trivial: bool,
}

impl CpComplex {
    /// Validates that `t` is a chain map with `t^p = 1` in every stored degree.
    pub fn new(chains: ChainComplex, action: Vec<MatrixFp>) -> Result<Self> {
        let f = chains.field();
        let p = f.p() as usize;
        if action.len() != chains.top() + 1 {
            return Err(Error::InvalidChainMap(format!(
                "action given in {} degrees, complex has {}",
                action.len(),
                chains.top() + 1
            )));
        }
        for (d, t) in action.iter().enumerate() {
            let n = chains.dim(d);
            if t.rows() != n || t.cols() != n {
                return Err(Error::InvalidChainMap(format!("action in degree {d} has the wrong shape")));
            }
            if t.pow(p) != MatrixFp::identity(f, n) {
                return Err(Error::InvalidChainMap(format!("t^{p} ≠ 1 in degree {d}")));
            }
            if d > 0 {
                let b = chains.boundary(d);
                if b.mul(t) != action[d - 1].mul(&b) {
                    return Err(Error::InvalidChainMap(format!(
                        "action does not commute with the boundary in degree {d}"
                    )));
                }
            }
        }
        let trivial = action.iter().enumerate().all(|(d, t)| *t == MatrixFp::identity(f, chains.dim(d)));
        Ok(Self::assemble(chains, action, trivial))
    }

    fn assemble(chains: ChainComplex, action: Vec<MatrixFp>, trivial: bool) -> Self {
        let p = chains.field().p() as usize;
        let inverse: Vec<MatrixFp> = action.iter().map(|t| t.pow(p - 1)).collect();
        let norm = inverse
            .iter()
            .map(|ti| {
                let mut acc = MatrixFp::identity(ti.field(), ti.rows());
                let mut power = acc.clone();
                for _ in 1..p {
                    power = power.mul(ti);
                    acc = acc.add(&power);
                }
                acc
            })
            .collect();
        Self {
            chains,
            action,
            inverse,
            norm,
            trivial,
        }
    }

    /// The trivial action.
    pub fn trivial(chains: ChainComplex) -> Self {
        let f = chains.field();
        let action = (0..=chains.top()).map(|d| MatrixFp::identity(f, chains.dim(d))).collect();
        Self::assemble(chains, action, true)
    }

    /// `A ⊗ F_p C_p` with `t` acting on the group-ring factor; basis `(x, k)` at `x·p + k`.
    pub fn free(base: &ChainComplex) -> Self {
        let f = base.field();
        let p = f.p() as usize;
        let dims: Vec<usize> = base.dims().iter().map(|&n| n * p).collect();
        let mut boundaries = vec![MatrixFp::zero(f, 0, dims[0])];
        for d in 1..dims.len() {
            let b = base.boundary(d);
            let triplets = (0..b.rows()).flat_map(|r| {
                b.row(r)
                    .iter()
                    .flat_map(move |(c, v)| (0..p).map(move |k| (r * p + k, c * p + k, v as i64)))
                    .collect::<Vec<_>>()
            });
            boundaries.push(MatrixFp::from_triplets(f, dims[d - 1], dims[d], triplets));
        }
        let action = dims
            .iter()
            .map(|&n| {
                MatrixFp::from_triplets(f, n, n, (0..n).map(|i| (i - i % p + (i % p + 1) % p, i, 1)))
            })
            .collect();
        let chains = ChainComplex::new(f, dims, boundaries, base.is_complete());
        Self::assemble(chains, action, false)
    }

    /// Chains of `X^p` with the rotation.
    pub fn power(space: &PowerSpace) -> Self {
        let chains = space.chains().clone();
        let action = (0..=chains.top()).map(|m| space.rotation_chain(m)).collect();
        Self::assemble(chains, action, space.p() == 1)
    }

    pub fn chains(&self) -> &ChainComplex {
        &self.chains
    }

    pub fn field(&self) -> PrimeField {
        self.chains.field()
    }

    pub fn action(&self, d: usize) -> &MatrixFp {
        &self.action[d]
    }

    pub fn norm(&self, d: usize) -> &MatrixFp {
        &self.norm[d]
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn layout(&self, m: usize) -> TotalLayout {
        TotalLayout::new(m, |d| self.chains.dim(d))
    }

    /// Columns of `δ^m : Tot^m -> Tot^{m+1}`, one per total cochain basis element.
    pub fn total_coboundary_columns(&self, m: usize) -> Result<Vec<SparseVec>> {
        self.chains.require(m + 1)?;
        let f = self.field();
        let src = self.layout(m);
        let dst = self.layout(m + 1);
        let mut cols = Vec::with_capacity(src.total());
        for j in 0..=m {
            let d = m - j;
            let boundary = self.chains.boundary_ref(d + 1);
            let twist = if (j + 1) % 2 == 1 {
                self.inverse.get(d)
            } else {
                self.norm.get(d)
            };
            let odd_next = (j + 1) % 2 == 1;
            for x in 0..self.chains.dim(d) {
                let mut entries: Vec<(u32, u8)> = Vec::new();
                if let Some(b) = boundary {
                    let sign = f.sign(j);
                    let off = dst.offset(j);
                    entries.extend(b.row(x).iter().map(|(c, v)| ((off + c) as u32, f.mul(sign, v))));
                }
                if let Some(s) = twist {
                    let off = dst.offset(j + 1);
                    let row = s.row(x);
                    let mut tail: Vec<(usize, i64)> = row.iter().map(|(c, v)| (c, v as i64)).collect();
                    if odd_next {
                        tail.push((x, -1));
                    }
                    let tail = SparseVec::from_entries(f, tail);
                    entries.extend(tail.iter().map(|(c, v)| ((off + c) as u32, v)));
                }
                cols.push(SparseVec::from_sorted(entries));
            }
        }
        Ok(cols)
    }

    /// `δ^m` as a `dim Tot^{m+1} x dim Tot^m` matrix.
    pub fn total_differential(&self, m: usize) -> Result<MatrixFp> {
        let cols = self.total_coboundary_columns(m)?;
        Ok(MatrixFp::from_columns(self.field(), self.layout(m + 1).total(), &cols))
    }

    /// The transfer of a cocycle `υ` of degree `m`: the total cochain with
    /// `f_0 = υ ∘ N` and all other components zero.
    pub fn transfer(&self, m: usize, cocycle: &SparseVec) -> EquivariantCochain {
        let lay = self.layout(m);
        let mut components: Vec<SparseVec> = (0..=m).map(|_| SparseVec::new()).collect();
        components[0] = self.norm[m].left_mul_vec(cocycle);
        EquivariantCochain { degree: m, components }.checked(&lay)
    }
}

/// Block layout of `Tot^m`: block `j` holds the dual of `A_{m-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalLayout {
    m: usize,
    offsets: Vec<usize>,
    lens: Vec<usize>,
}

impl TotalLayout {
    pub fn new(m: usize, dim: impl Fn(usize) -> usize) -> Self {
        let lens: Vec<usize> = (0..=m).map(|j| dim(m - j)).collect();
        let mut offsets = Vec::with_capacity(m + 1);
        let mut acc = 0;
        for &l in &lens {
            offsets.push(acc);
            acc += l;
        }
        Self { m, offsets, lens }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn offset(&self, j: usize) -> usize {
        self.offsets.get(j).copied().unwrap_or_else(|| self.total())
    }

    pub fn len(&self, j: usize) -> usize {
        self.lens.get(j).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.lens.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }
}

/// A total cochain: `components[j]` is the functional `f_j` on `A_{m-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantCochain {
    pub degree: usize,
    pub components: Vec<SparseVec>,
}

impl EquivariantCochain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            components: vec![SparseVec::new(); degree + 1],
        }
    }

    fn checked(self, lay: &TotalLayout) -> Self {
        debug_assert_eq!(self.components.len(), lay.degree() + 1);
        debug_assert!(self
            .components
            .iter()
            .enumerate()
            .all(|(j, c)| c.last().is_none_or(|(i, _)| i < lay.len(j))));
        self
    }

    pub fn flatten(&self, lay: &TotalLayout) -> SparseVec {
        SparseVec::concat(&self.components, &lay.lens)
    }

    pub fn unflatten(v: &SparseVec, lay: &TotalLayout) -> Self {
        let components = (0..=lay.m)
            .map(|j| v.slice(lay.offset(j), lay.offset(j) + lay.len(j)))
            .collect();
        Self {
            degree: lay.m,
            components,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SparseVec::is_zero)
    }

    pub fn add(&self, field: PrimeField, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self {
            degree: self.degree,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(field, b))
                .collect(),
        }
    }

    pub fn scaled(&self, field: PrimeField, c: u8) -> Self {
        Self {
            degree: self.degree,
            components: self.components.iter().map(|a| a.scaled(field, c)).collect(),
        }
    }
}

/// `h^m_{C_p}(A)` with deterministic cocycle representatives.
#[derive(Clone, Debug)]
pub struct EquivariantCohomology {
    layout: TotalLayout,
    quotient: CocycleQuotient,
}

impl EquivariantCohomology {
    pub fn degree(&self) -> usize {
        self.layout.m
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn layout(&self) -> &TotalLayout {
        &self.layout
    }

    pub fn representative(&self, k: usize) -> EquivariantCochain {
        EquivariantCochain::unflatten(&self.quotient.representatives()[k], &self.layout)
    }

    pub fn representatives(&self) -> impl Iterator<Item = EquivariantCochain> + '_ {
        (0..self.dim()).map(|k| self.representative(k))
    }

    /// Coordinates of the class of a cochain; `None` if it is not a cocycle.
    pub fn coordinates(&self, c: &EquivariantCochain) -> Option<Vec<u8>> {
        self.quotient.coordinates(&c.flatten(&self.layout))
    }

    pub fn is_coboundary(&self, c: &EquivariantCochain) -> bool {
        self.quotient.is_coboundary(&c.flatten(&self.layout))
    }
}

/// `h^m_{C_p}(A)`; needs `A` through degree `m + 1`.
pub fn equivariant_cohomology(a: &CpComplex, m: usize) -> Result<EquivariantCohomology> {
    let incoming = if m == 0 {
        Vec::new()
    } else {
        a.total_coboundary_columns(m - 1)?
    };
    let outgoing = a.total_coboundary_columns(m)?;
    let layout = a.layout(m);
    let quotient = CocycleQuotient::compute(a.field(), layout.total(), incoming, outgoing);
    Ok(EquivariantCohomology { layout, quotient })
}

/// An equivariant chain map `A -> B`, one matrix per degree.
#[derive(Clone, Debug)]
pub struct EquivariantChainMap {
    maps: Vec<MatrixFp>,
}

impl EquivariantChainMap {
    /// Rejects maps that fail to commute with `∂` or with `t`.
    pub fn new(source: &CpComplex, target: &CpComplex, maps: Vec<MatrixFp>) -> Result<Self> {
        for (d, f) in maps.iter().enumerate() {
            if f.cols() != source.chains.dim(d) || f.rows() != target.chains.dim(d) {
                return Err(Error::InvalidChainMap(format!("map in degree {d} has the wrong shape")));
            }
            if d < source.action.len() && d < target.action.len() && f.mul(&source.action[d]) != target.action[d].mul(f) {
                return Err(Error::InvalidChainMap(format!("map is not equivariant in degree {d}")));
            }
            if d > 0 && target.chains.boundary(d).mul(f) != maps[d - 1].mul(&source.chains.boundary(d)) {
                return Err(Error::InvalidChainMap(format!(
                    "map does not commute with the boundary in degree {d}"
                )));
            }
        }
        Ok(Self { maps })
    }

    /// Wraps matrices already known to be an equivariant chain map.
    pub fn trusted(maps: Vec<MatrixFp>) -> Self {
        Self { maps }
    }

    pub fn degree_map(&self, d: usize) -> &MatrixFp {
        &self.maps[d]
    }

    pub fn top(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }

    /// Precomposition: `(f^*φ)_j = φ_j ∘ f_{m-j}`.
    pub fn pullback(&self, c: &EquivariantCochain) -> EquivariantCochain {
        let m = c.degree;
        EquivariantCochain {
            degree: m,
            components: c
                .components
                .iter()
                .enumerate()
                .map(|(j, phi)| self.maps[m - j].left_mul_vec(phi))
                .collect(),
        }
    }

    /// The induced map `h^m(B) -> h^m(A)` as a matrix in the given bases.
    pub fn induced_map(&self, target: &EquivariantCohomology, source: &EquivariantCohomology) -> Result<MatrixFp> {
        let f = self.maps[0].field();
        let cols = target
            .representatives()
            .map(|z| {
                let coords = source.coordinates(&self.pullback(&z)).ok_or_else(|| {
                    Error::Consistency("pullback of a cocycle is not a cocycle".into())
                })?;
                Ok(SparseVec::from_dense(&coords))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixFp::from_columns(f, source.dim(), &cols))
    }
}

/// The cochain `e_j × υ` of degree `i + j`: the single component `υ` at index `j`.
pub fn cross_product(j: usize, cocycle: &SparseVec, i: usize) -> EquivariantCochain {
    let mut c = EquivariantCochain::zero(i + j);
    c.components[j] = cocycle.clone();
    c
}

/// A class `Σ_i e_{m-i} × v_i` over a trivially acted complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethVector {
    pub degree: usize,
    /// `v[i]`: coordinates of `v_i` in the basis of `H^i`
    pub v: Vec<Vec<u8>>,
}

impl KunnethVector {
    pub fn is_zero(&self) -> bool {
        self.v.iter().all(|c| c.iter().all(|&x| x == 0))
    }
}

/// Künneth coordinates for `h^m` of a trivially acted complex, built from the
/// ordinary cohomology bases `H^0, ..., H^m`.
#[derive(Clone, Debug)]
pub struct KunnethBasis {
    m: usize,
    cohomology: Vec<Cohomology>,
    offsets: Vec<usize>,
}

impl KunnethBasis {
    pub fn new(chains: &ChainComplex, m: usize) -> Result<Self> {
        let cohomology = (0..=m).map(|i| chain_cohomology(chains, i)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_cohomology(m, cohomology))
    }

    /// Reuses precomputed `H^0..H^m` (entries past `m` are ignored).
    pub fn from_cohomology(m: usize, mut cohomology: Vec<Cohomology>) -> Self {
        cohomology.truncate(m + 1);
        assert_eq!(cohomology.len(), m + 1, "need H^i for every i ≤ m");
        let mut offsets = Vec::with_capacity(m + 2);
        let mut acc = 0;
        for h in &cohomology {
            offsets.push(acc);
            acc += h.dim();
        }
        offsets.push(acc);
        Self {
            m,
            cohomology,
            offsets,
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// `Σ_{i ≤ m} dim H^i`.
    pub fn dim(&self) -> usize {
        self.offsets[self.m + 1]
    }

    pub fn cohomology(&self, i: usize) -> &Cohomology {
        &self.cohomology[i]
    }

    /// Coordinate range of `v_i` inside the flattened vector.
    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// `v_i` = class of the component `f_{m-i}`, each a cocycle by the grading.
    pub fn extract(&self, c: &EquivariantCochain) -> Result<KunnethVector> {
        assert_eq!(c.degree, self.m);
        let v = (0..=self.m)
            .map(|i| {
                self.cohomology[i].coordinates(&c.components[self.m - i]).ok_or_else(|| {
                    Error::Consistency(format!("component {} is not a cocycle", self.m - i))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KunnethVector { degree: self.m, v })
    }

    /// `Σ_i e_{m-i} × v_i` using the fixed representatives.
    pub fn assemble(&self, kv: &KunnethVector) -> EquivariantCochain {
        let mut c = EquivariantCochain::zero(self.m);
        for (i, coords) in kv.v.iter().enumerate() {
            c.components[self.m - i] = self.cohomology[i].representative(coords);
        }
        c
    }

    pub fn flatten(&self, kv: &KunnethVector) -> SparseVec {
        let dense: Vec<u8> = kv.v.iter().flatten().copied().collect();
        SparseVec::from_dense(&dense)
    }

    pub fn unflatten(&self, v: &SparseVec) -> KunnethVector {
        let dense = v.to_dense(self.dim());
        KunnethVector {
            degree: self.m,
            v: (0..=self.m).map(|i| dense[self.range(i)].to_vec()).collect(),
        }
    }
}

/// `h^m` of a trivially acted complex in Künneth coordinates: `v_i` = class of `f_{m-i}`.
pub fn kunneth_extract(basis: &KunnethBasis, c: &EquivariantCochain) -> Result<KunnethVector> {
    basis.extract(c)
}

/// `h̃^m = coker(transfer : H^m(A) -> h^m_{C_p}(A))`.
#[derive(Clone, Debug)]
pub struct ReducedCohomology {
    pub equivariant: EquivariantCohomology,
    pub transfer_image: SubspaceFp,
    quotient: Quotient,
}

impl ReducedCohomology {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cocycles representing the quotient basis.
    pub fn basis_cochains(&self) -> Vec<EquivariantCochain> {
        let f = self.quotient.sub().field();
        self.quotient
            .representatives()
            .iter()
            .map(|coords| {
                coords.iter().fold(EquivariantCochain::zero(self.equivariant.degree()), |acc, (k, c)| {
                    acc.add(f, &self.equivariant.representative(k).scaled(f, c))
                })
            })
            .collect()
    }

    /// Coordinates in `h̃^m` of an equivariant cocycle.
    pub fn coordinates(&self, c: &EquivariantCochain) -> Option<Vec<u8>> {
        let v = self.equivariant.coordinates(c)?;
        self.quotient.coordinates(&SparseVec::from_dense(&v))
    }
}

pub fn reduced_cohomology(a: &CpComplex, m: usize) -> Result<ReducedCohomology> {
    let f = a.field();
    let equivariant = equivariant_cohomology(a, m)?;
    let plain = chain_cohomology(a.chains(), m)?;
    let images = plain
        .basis()
        .iter()
        .map(|u| {
            let t = a.transfer(m, u);
            equivariant
                .coordinates(&t)
                .map(|c| SparseVec::from_dense(&c))
                .ok_or_else(|| Error::Consistency("transfer of a cocycle is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let transfer_image = SubspaceFp::span(f, equivariant.dim(), images);
    let quotient = Quotient::new(&SubspaceFp::full(f, equivariant.dim()), &transfer_image);
    Ok(ReducedCohomology {
        equivariant,
        transfer_image,
        quotient,
    })
}
