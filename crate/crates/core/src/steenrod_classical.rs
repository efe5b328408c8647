//! The tensor-power construction of `Σ^k`, used as an independent cross-check.
//!
//! `θ(u)` lives on `(C_*X)^{⊗p}` with the signed cyclic action. The shuffle map
//! `ξ : (C_*X)^{⊗p} -> C_*(X^p)` transports it to the power space, where it is
//! pulled back along the diagonal and read in Künneth coordinates.

use rand::Rng;
use rustc_hash::FxHashMap;

use crate::equivariant::{
    equivariant_cohomology, reduced_cohomology, CpComplex, EquivariantChainMap, EquivariantCochain,
    KunnethVector,
};
use crate::error::{Error, Result};
use crate::fp_linalg::{kernel, rank, solve, MatrixFp, PrimeField, SparseVec};
use crate::simplicial::{ChainComplex, DegeneracyWord, FiniteSimplicialSet, PowerSpace, SimplexRef};
use crate::steenrod_diagonal::SteenrodContext;

/// One summand `A_{d_1} ⊗ ... ⊗ A_{d_p}` of a tensor power.
#[derive(Clone, Debug)]
struct Block {
    degrees: Vec<usize>,
    offset: usize,
    size: usize,
}

/// `A^{⊗p}` through degree `m_max` with the Koszul-signed rotation
/// `a_1 ⊗ ... ⊗ a_p -> (-1)^{|a_p|(|a_1| + ... + |a_{p-1}|)} a_p ⊗ a_1 ⊗ ... ⊗ a_{p-1}`.
#[derive(Clone, Debug)]
pub struct TensorPower {
    base: ChainComplex,
    p: usize,
    m_max: usize,
    blocks: Vec<Vec<Block>>,
    lookup: Vec<FxHashMap<Vec<usize>, usize>>,
    complex: CpComplex,
}

impl TensorPower {
    pub fn build(base: &ChainComplex, m_max: usize, limit: usize) -> Result<Self> {
        let p = base.field().p() as usize;
        let top = base.top();
        if !base.is_complete() && m_max > top {
            base.require(m_max)?;
        }
        let mut blocks = Vec::with_capacity(m_max + 1);
        let mut lookup = Vec::with_capacity(m_max + 1);
        for m in 0..=m_max {
            let mut list = Vec::new();
            let mut map = FxHashMap::default();
            let mut offset = 0usize;
            for degrees in compositions(m, p, top) {
                let size = degrees.iter().map(|&d| base.dim(d)).product::<usize>();
                if size == 0 {
                    continue;
                }
                map.insert(degrees.clone(), list.len());
                list.push(Block { degrees, offset, size });
                offset += size;
            }
            if offset > limit {
                return Err(Error::ResourceGuard {
                    what: format!("degree {m} of the {p}-fold tensor power"),
                    size: offset,
                    limit,
                });
            }
            blocks.push(list);
            lookup.push(map);
        }
        let mut this = Self {
            base: base.clone(),
            p,
            m_max,
            blocks,
            lookup,
            complex: CpComplex::trivial(ChainComplex::new(base.field(), vec![0], vec![MatrixFp::zero(base.field(), 0, 0)], false)),
        };
        this.complex = this.assemble()?;
        Ok(this)
    }

    fn assemble(&self) -> Result<CpComplex> {
        let f = self.base.field();
        let dims: Vec<usize> = (0..=self.m_max).map(|m| self.dim(m)).collect();
        let mut boundaries = vec![MatrixFp::zero(f, 0, dims[0])];
        let base_boundaries: Vec<MatrixFp> =
            (0..=self.base.top()).map(|d| self.base.boundary(d)).collect();
        let base_columns: Vec<Vec<SparseVec>> = base_boundaries.iter().map(|b| b.columns()).collect();
        for m in 1..=self.m_max {
            let mut triplets = Vec::new();
            for block in &self.blocks[m] {
                for local in 0..block.size {
                    let idx = self.unrank(block, local);
                    let col = block.offset + local;
                    let mut before = 0usize;
                    for i in 0..self.p {
                        let d = block.degrees[i];
                        if d > 0 {
                            let mut target = block.degrees.clone();
                            target[i] -= 1;
                            if let Some(&tb) = self.lookup[m - 1].get(&target) {
                                let tblock = &self.blocks[m - 1][tb];
                                let sign = if before.is_multiple_of(2) { 1 } else { -1 };
                                let mut tidx = idx.clone();
                                for (r, v) in base_columns[d][idx[i]].iter() {
                                    tidx[i] = r;
                                    let row = tblock.offset + self.rank_in(tblock, &tidx);
                                    triplets.push((row, col, sign * v as i64));
                                }
                            }
                        }
                        before += d;
                    }
                }
            }
            boundaries.push(MatrixFp::from_triplets(f, dims[m - 1], dims[m], triplets));
        }
        let complete = self.base.is_complete() && self.m_max >= self.p * self.base.top();
        let chains = ChainComplex::new(f, dims.clone(), boundaries, complete);
        let action = (0..=self.m_max)
            .map(|m| {
                let mut triplets = Vec::with_capacity(dims[m]);
                for block in &self.blocks[m] {
                    let last = block.degrees[self.p - 1];
                    let rest: usize = block.degrees[..self.p - 1].iter().sum();
                    let sign = if (last * rest).is_multiple_of(2) { 1 } else { -1 };
                    let mut rotated = vec![last];
                    rotated.extend_from_slice(&block.degrees[..self.p - 1]);
                    let tblock = &self.blocks[m][self.lookup[m][&rotated]];
                    for local in 0..block.size {
                        let idx = self.unrank(block, local);
                        let mut ridx = vec![idx[self.p - 1]];
                        ridx.extend_from_slice(&idx[..self.p - 1]);
                        let row = tblock.offset + self.rank_in(tblock, &ridx);
                        triplets.push((row, block.offset + local, sign));
                    }
                }
                MatrixFp::from_triplets(f, dims[m], dims[m], triplets)
            })
            .collect();
        CpComplex::new(chains, action)
    }

    fn unrank(&self, block: &Block, mut local: usize) -> Vec<usize> {
        let mut idx = vec![0; self.p];
        for i in (0..self.p).rev() {
            let n = self.base.dim(block.degrees[i]);
            idx[i] = local % n;
            local /= n;
        }
        idx
    }

    fn rank_in(&self, block: &Block, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&block.degrees)
            .fold(0, |acc, (&x, &d)| acc * self.base.dim(d) + x)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn base(&self) -> &ChainComplex {
        &self.base
    }

    pub fn dim(&self, m: usize) -> usize {
        self.blocks
            .get(m)
            .and_then(|b| b.last())
            .map_or(0, |b| b.offset + b.size)
    }

    pub fn complex(&self) -> &CpComplex {
        &self.complex
    }

    /// Basis index of `x_1 ⊗ ... ⊗ x_p`, each `(degree, index in A_degree)`.
    pub fn index_of(&self, factors: &[(usize, usize)]) -> Option<usize> {
        let degrees: Vec<usize> = factors.iter().map(|f| f.0).collect();
        let m: usize = degrees.iter().sum();
        let block = &self.blocks.get(m)?[*self.lookup[m].get(&degrees)?];
        let idx: Vec<usize> = factors.iter().map(|f| f.1).collect();
        Some(block.offset + self.rank_in(block, &idx))
    }

    /// Factors `(degree, index)` of a basis element of degree `m`.
    pub fn factors(&self, m: usize, k: usize) -> Vec<(usize, usize)> {
        let b = self.blocks[m].partition_point(|b| b.offset + b.size <= k);
        let block = &self.blocks[m][b];
        let idx = self.unrank(block, k - block.offset);
        block.degrees.iter().copied().zip(idx).collect()
    }

    /// `θ(u)` for a cocycle `f` of degree `n`: the total cochain of degree `pn`
    /// whose only component is `a_1 ⊗ ... ⊗ a_p -> (-1)^{np(p-1)/2} Π f(a_i)`.
    pub fn theta(&self, n: usize, cocycle: &SparseVec) -> EquivariantCochain {
        let f = self.base.field();
        let m = self.p * n;
        let mut c = EquivariantCochain::zero(m);
        let degrees = vec![n; self.p];
        let Some(&b) = self.lookup.get(m).and_then(|l| l.get(&degrees)) else {
            return c;
        };
        let block = &self.blocks[m][b];
        let sign = f.sign(n * self.p * (self.p - 1) / 2);
        let values: Vec<(usize, u8)> = cocycle.iter().collect();
        if values.is_empty() {
            return c;
        }
        let mut entries = Vec::new();
        let mut choice = vec![0usize; self.p];
        loop {
            let idx: Vec<usize> = choice.iter().map(|&k| values[k].0).collect();
            let prod = choice.iter().fold(sign, |acc, &k| f.mul(acc, values[k].1));
            entries.push((block.offset + self.rank_in(block, &idx), prod as i64));
            if !advance(&mut choice, values.len()) {
                break;
            }
        }
        c.components[0] = SparseVec::from_entries(f, entries);
        c
    }

    /// The chain map `B^{⊗p} -> A^{⊗p}` induced by `g : B -> A` (one matrix per degree).
    pub fn tensor_map(&self, source: &TensorPower, g: &[MatrixFp]) -> Vec<MatrixFp> {
        let f = self.base.field();
        let cols: Vec<Vec<SparseVec>> = g.iter().map(MatrixFp::columns).collect();
        (0..=self.m_max.min(source.m_max))
            .map(|m| {
                let mut triplets = Vec::new();
                for k in 0..source.dim(m) {
                    let factors = source.factors(m, k);
                    let mut partial: Vec<(Vec<(usize, usize)>, u8)> = vec![(Vec::new(), 1)];
                    for &(d, x) in &factors {
                        let image = cols.get(d).map(|c| c[x].clone()).unwrap_or_default();
                        partial = partial
                            .into_iter()
                            .flat_map(|(pre, c)| {
                                image.iter().map(move |(y, v)| {
                                    let mut next = pre.clone();
                                    next.push((d, y));
                                    (next, f.mul(c, v))
                                }).collect::<Vec<_>>()
                            })
                            .collect();
                    }
                    for (fac, c) in partial {
                        let row = self.index_of(&fac).expect("image factor in the tensor basis");
                        triplets.push((row, k, c as i64));
                    }
                }
                MatrixFp::from_triplets(f, self.dim(m), source.dim(m), triplets)
            })
            .collect()
    }
}

fn advance(choice: &mut [usize], base: usize) -> bool {
    for slot in choice.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Ordered `p`-tuples of degrees `≤ top` summing to `m`, lexicographically.
fn compositions(m: usize, p: usize, top: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, top: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for d in 0..=rest.min(top) {
            if rest - d > (slots - 1) * top {
                continue;
            }
            acc.push(d);
            rec(rest - d, slots - 1, top, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, p, top, &mut Vec::new(), &mut out);
    out
}

/// Ordered partitions `S_1, ..., S_p` of `{0, ..., m - 1}` with `|S_k| = sizes[k]`,
/// each as bitmasks together with the sign of the permutation listing `S_1, ..., S_p`.
pub fn shuffles(sizes: &[usize]) -> Vec<(Vec<u32>, i64)> {
    let m: usize = sizes.iter().sum();
    let mut out = Vec::new();
    fn rec(k: usize, free: u32, sizes: &[usize], acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == sizes.len() {
            acc.push(free);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        let slots: Vec<usize> = (0..32).filter(|&i| free >> i & 1 == 1).collect();
        for pick in crate::simplicial::subsets_of_size(slots.len(), sizes[k]) {
            let mut mask = 0u32;
            for (t, &s) in slots.iter().enumerate() {
                if pick >> t & 1 == 1 {
                    mask |= 1 << s;
                }
            }
            acc.push(mask);
            rec(k + 1, free & !mask, sizes, acc, out);
            acc.pop();
        }
    }
    let full = if m == 0 { 0 } else { (1u32 << m) - 1 };
    let mut parts = Vec::new();
    if sizes.is_empty() {
        return out;
    }
    rec(0, full, sizes, &mut Vec::new(), &mut parts);
    for masks in parts {
        let order: Vec<usize> = masks
            .iter()
            .flat_map(|&mk| (0..m).filter(move |&i| mk >> i & 1 == 1))
            .collect();
        let mut inversions = 0;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                if order[a] > order[b] {
                    inversions += 1;
                }
            }
        }
        out.push((masks, if inversions % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// The shuffle map `ξ : (C_*X)^{⊗p} -> C_*(X^p)` in degrees `0..=m_max`:
/// `x_1 ⊗ ... ⊗ x_p -> Σ sign · (s_{S_1^c} x_1, ..., s_{S_p^c} x_p)`.
pub fn shuffle_cross(x: &FiniteSimplicialSet, tensor: &TensorPower, power: &PowerSpace, m_max: usize) -> Vec<MatrixFp> {
    let f = tensor.base.field();
    let p = tensor.p;
    (0..=m_max)
        .map(|m| {
            let full = if m == 0 { 0 } else { (1u32 << m) - 1 };
            let mut triplets = Vec::new();
            for block in tensor.blocks.get(m).into_iter().flatten() {
                let parts = shuffles(&block.degrees);
                for local in 0..block.size {
                    let idx = tensor.unrank(block, local);
                    let gens: Vec<u32> = idx
                        .iter()
                        .zip(&block.degrees)
                        .map(|(&i, &d)| x.generators_of_dim(d)[i])
                        .collect();
                    for (masks, sign) in &parts {
                        let tuple: Vec<SimplexRef> = (0..p)
                            .map(|k| SimplexRef {
                                dim: m as u8,
                                gen: gens[k],
                                word: DegeneracyWord::from_mask(full & !masks[k]),
                            })
                            .collect();
                        let row = power.index_of(m, &tuple).expect("shuffled tuples are nondegenerate");
                        triplets.push((row, block.offset + local, *sign));
                    }
                }
            }
            MatrixFp::from_triplets(f, power.count(m), tensor.dim(m), triplets)
        })
        .collect()
}

/// `a_p(n)`: `1` for `p = 2`, `(-1)^{qn(n+1)/2} (q!)^n` for `p = 2q + 1`.
pub fn steenrod_number(p: u32, n: usize) -> u8 {
    let field = PrimeField::new(p).expect("supported prime");
    if p == 2 {
        return 1;
    }
    let q = (p as usize - 1) / 2;
    let fact = (1..=q).fold(1u8, |acc, i| field.mul(acc, field.reduce(i as i64)));
    field.mul(field.sign(q * n * (n + 1) / 2), field.pow(fact, n as u64))
}

/// The classical `Φ(u)` for one class, with intermediate data.
#[derive(Clone, Debug)]
pub struct ClassicalSolve {
    pub n: usize,
    pub class: Vec<u8>,
    /// coefficients of `Ψ(u)` on the cocycle basis of `h^{pn}_{C_p}(X^p)`
    pub psi: Vec<u8>,
    pub phi: KunnethVector,
}

/// `Ψ(u)` and `Φ(u)` for `u ∈ H^n(X)`, asserting `φ_i = 0` for `i < n` and `φ_n = u`.
pub fn classical_solve(ctx: &SteenrodContext, n: usize, class: &[u8]) -> Result<ClassicalSolve> {
    let field = ctx.field();
    let p = ctx.p();
    let m = p * n;
    let hn = ctx.cohomology(n)?;
    if class.len() != hn.dim() {
        return Err(Error::InvalidClass(format!(
            "H^{n} has dimension {}, class has {} coordinates",
            hn.dim(),
            class.len()
        )));
    }
    let data = ctx.power_data(m)?;
    let tensor = TensorPower::build(ctx.chains(), m, ctx.limit())?;
    let xi = EquivariantChainMap::trusted(shuffle_cross(ctx.space(), &tensor, &data.space, m));
    let lay = tensor.complex().layout(m);

    let target = tensor
        .theta(n, &hn.representative(class))
        .scaled(field, field.inv(steenrod_number(p as u32, n)));
    let reps: Vec<EquivariantCochain> = data.cohomology.representatives().collect();
    let mut columns: Vec<SparseVec> = reps.iter().map(|z| xi.pullback(z).flatten(&lay)).collect();
    let k = columns.len();
    if m > 0 {
        columns.extend(tensor.complex().total_coboundary_columns(m - 1)?);
    }
    let system = MatrixFp::from_columns(field, lay.total(), &columns);
    let boundary_rank = rank(&MatrixFp::from_columns(field, lay.total(), &columns[k..]));
    if rank(&system) != k + boundary_rank {
        return Err(Error::Consistency(
            "the shuffle map is not injective on equivariant cohomology".into(),
        ));
    }
    let sol = solve(&system, &target.flatten(&lay)).ok_or_else(|| {
        Error::Consistency(format!("θ of a class in H^{n} is not in the image of the shuffle map"))
    })?;
    let psi: Vec<u8> = (0..k).map(|i| sol.get(i)).collect();
    let mut cochain = EquivariantCochain::zero(m);
    for (z, &c) in reps.iter().zip(&psi) {
        if c != 0 {
            cochain = cochain.add(field, &z.scaled(field, c));
        }
    }
    let basis = ctx.kunneth_basis(m)?;
    let phi = basis.extract(&ctx.diagonal_map(&data.space, m).pullback(&cochain))?;
    for i in 0..n {
        if phi.v[i].iter().any(|&c| c != 0) {
            return Err(Error::Consistency(format!("φ_{i} of a class in H^{n} is nonzero")));
        }
    }
    if phi.v[n] != class {
        return Err(Error::Consistency(format!(
            "φ_{n} = {:?} differs from the input class {class:?}",
            phi.v[n]
        )));
    }
    Ok(ClassicalSolve {
        n,
        class: class.to_vec(),
        psi,
        phi,
    })
}

/// `Σ^k u = φ_{n+k}(u)`, zero past the unstable range.
pub fn classical_sigma(ctx: &SteenrodContext, n: usize, class: &[u8], k: usize) -> Result<Vec<u8>> {
    if n + k > ctx.p() * n {
        return Ok(vec![0; ctx.cohomology(n + k)?.dim()]);
    }
    Ok(classical_solve(ctx, n, class)?.phi.v[n + k].clone())
}

/// Coordinates of `θ̃(u)` in `h̃^{pn}_{C_p}(A^{⊗p})`.
pub fn reduced_theta(tensor: &TensorPower, n: usize, cocycle: &SparseVec) -> Result<Vec<u8>> {
    let red = reduced_cohomology(tensor.complex(), tensor.p * n)?;
    red.coordinates(&tensor.theta(n, cocycle))
        .ok_or_else(|| Error::Consistency("θ of a cocycle is not a cocycle".into()))
}

/// `θ(f)` and `θ(f + δg)` agree in `h^{pn}_{C_p}(A^{⊗p})`.
pub fn check_theta_representative_independence(
    a: &ChainComplex,
    n: usize,
    cocycle: &SparseVec,
    cochain: &SparseVec,
) -> Result<bool> {
    let f = a.field();
    let p = f.p() as usize;
    let tensor = TensorPower::build(a, p * n + 1, usize::MAX)?;
    let shifted = cocycle.add(f, &a.coboundary(n - 1).mul_vec(cochain));
    let h = equivariant_cohomology(tensor.complex(), p * n)?;
    let diff = tensor.theta(n, &shifted).add(f, &tensor.theta(n, cocycle).scaled(f, f.neg(1)));
    Ok(h.is_coboundary(&diff))
}

/// `h̃^m(A ⊗ F_p C_p) = 0` for every `m ≤ m_max`.
pub fn check_free_reduced_vanishes(a: &ChainComplex, m_max: usize) -> Result<bool> {
    let free = CpComplex::free(a);
    for m in 0..=m_max {
        if reduced_cohomology(&free, m)?.dim() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// On a trivially acted complex every transfer is a coboundary.
pub fn check_transfer_vanishes(a: &ChainComplex, m_max: usize) -> Result<bool> {
    let trivial = CpComplex::trivial(a.clone());
    for m in 0..=m_max {
        let h = equivariant_cohomology(&trivial, m)?;
        let plain = crate::simplicial::chain_cohomology(a, m)?;
        for u in plain.basis() {
            if !h.is_coboundary(&trivial.transfer(m, u)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `h̃^m((⊕ A_i)^{⊗p}) -> Π h̃^m(A_i^{⊗p})` is an isomorphism.
pub fn check_sum_to_product(family: &[ChainComplex], m: usize) -> Result<bool> {
    let parts: Vec<&ChainComplex> = family.iter().collect();
    let sum = ChainComplex::direct_sum(&parts);
    let f = sum.field();
    let big = TensorPower::build(&sum, m + 1, usize::MAX)?;
    let big_red = reduced_cohomology(big.complex(), m)?;
    let mut rows: Vec<Vec<u8>> = vec![Vec::new(); big_red.dim()];
    let mut total = 0;
    let mut offsets = vec![0usize; sum.top() + 1];
    let big_reps = big_red.basis_cochains();
    for part in family {
        let small = TensorPower::build(part, m + 1, usize::MAX)?;
        let small_red = reduced_cohomology(small.complex(), m)?;
        let inclusion: Vec<MatrixFp> = (0..=sum.top())
            .map(|d| {
                let off = offsets[d];
                MatrixFp::from_triplets(f, sum.dim(d), part.dim(d), (0..part.dim(d)).map(|c| (off + c, c, 1)))
            })
            .collect();
        for d in 0..=sum.top() {
            offsets[d] += part.dim(d);
        }
        let lifted = EquivariantChainMap::trusted(big.tensor_map(&small, &inclusion));
        for (r, z) in big_reps.iter().enumerate() {
            let coords = small_red
                .coordinates(&lifted.pullback(z))
                .ok_or_else(|| Error::Consistency("restriction of a cocycle is not a cocycle".into()))?;
            rows[r].extend(coords);
        }
        total += small_red.dim();
    }
    if total != big_red.dim() {
        return Ok(false);
    }
    let m_rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&c| c as i64).collect()).collect();
    let matrix = MatrixFp::from_dense(f, total, &m_rows);
    Ok(rank(&matrix) == total)
}

/// `θ̃(u + v) = θ̃(u) + θ̃(v)` in `h̃^{pn}_{C_p}(A^{⊗p})`.
pub fn check_reduced_theta_linearity(a: &ChainComplex, n: usize, u: &SparseVec, v: &SparseVec) -> Result<bool> {
    let f = a.field();
    let p = f.p() as usize;
    let tensor = TensorPower::build(a, p * n + 1, usize::MAX)?;
    let red = reduced_cohomology(tensor.complex(), p * n)?;
    let coords = |c: &SparseVec| {
        red.coordinates(&tensor.theta(n, c))
            .ok_or_else(|| Error::Consistency("θ of a cocycle is not a cocycle".into()))
    };
    let lhs = coords(&u.add(f, v))?;
    let cu = coords(u)?;
    let cv = coords(v)?;
    let rhs: Vec<u8> = cu.iter().zip(&cv).map(|(&x, &y)| f.add(x, y)).collect();
    Ok(lhs == rhs)
}

/// A random finite chain complex with `∂∂ = 0`, concentrated in degrees `0..=top`.
pub fn random_complex<R: Rng>(field: PrimeField, rng: &mut R, top: usize, max_dim: usize) -> ChainComplex {
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(1..=max_dim)).collect();
    let mut boundaries = vec![MatrixFp::zero(field, 0, dims[0])];
    for d in 1..=top {
        let cycles = if d == 1 {
            crate::fp_linalg::SubspaceFp::full(field, dims[0])
        } else {
            kernel(&boundaries[d - 1])
        };
        let cols: Vec<SparseVec> = (0..dims[d])
            .map(|_| {
                let mut v = SparseVec::new();
                for b in cycles.basis() {
                    let c = rng.gen_range(0..field.p()) as u8;
                    v.axpy(field, c, b);
                }
                v
            })
            .collect();
        boundaries.push(MatrixFp::from_columns(field, dims[d - 1], &cols));
    }
    ChainComplex::new(field, dims, boundaries, true)
}

/// A random cocycle of degree `n` (possibly zero).
pub fn random_cocycle<R: Rng>(a: &ChainComplex, rng: &mut R, n: usize) -> SparseVec {
    let f = a.field();
    let z = kernel(&a.coboundary(n));
    let mut v = SparseVec::new();
    for b in z.basis() {
        v.axpy(f, rng.gen_range(0..f.p()) as u8, b);
    }
    v
}

/// A random cochain of degree `n`.
pub fn random_cochain<R: Rng>(a: &ChainComplex, rng: &mut R, n: usize) -> SparseVec {
    let f = a.field();
    SparseVec::from_entries(f, (0..a.dim(n)).map(|i| (i, rng.gen_range(0..f.p()) as i64)))
}

/// Pass counts for the randomized lemma drivers over one field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub prime: u32,
    pub trials: usize,
    pub representative_independence: usize,
    pub free_reduced_vanishes: usize,
    pub transfer_vanishes: usize,
    pub sum_to_product_two: usize,
    pub sum_to_product_three: usize,
    pub theta_linearity: usize,
    /// `(lemma, trial index)` for every failed check; the trial replays from the seed.
    pub failures: Vec<(&'static str, usize)>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        [
            self.representative_independence,
            self.free_reduced_vanishes,
            self.transfer_vanishes,
            self.sum_to_product_two,
            self.sum_to_product_three,
            self.theta_linearity,
        ]
        .iter()
        .all(|&c| c == self.trials)
    }
}

/// Runs every lemma driver on `trials` random complexes drawn from a seeded stream.
/// Cochain degrees run up to `n_max`.
pub fn run_lemma_suite(field: PrimeField, seed: u64, trials: usize, n_max: usize) -> Result<LemmaReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = LemmaReport {
        prime: field.p(),
        trials,
        ..LemmaReport::default()
    };
    let n_max = n_max.max(1);
    for t in 0..trials {
        let n = 1 + t % n_max;
        let a = random_complex(field, &mut rng, n + 1, 2);
        let u = random_cocycle(&a, &mut rng, n);
        let v = random_cocycle(&a, &mut rng, n);
        let g = random_cochain(&a, &mut rng, n - 1);
        let outcomes = [
            ("theta representative independence", check_theta_representative_independence(&a, n, &u, &g)?),
            ("reduced theta linearity", check_reduced_theta_linearity(&a, n, &u, &v)?),
            ("free reduced cohomology vanishes", check_free_reduced_vanishes(&a, 4)?),
            ("transfer vanishes on trivial complexes", check_transfer_vanishes(&a, 3)?),
        ];
        let family: Vec<ChainComplex> = (0..3).map(|_| random_complex(field, &mut rng, 1, 2)).collect();
        let products = [
            ("sum to product, two summands", check_sum_to_product(&family[..2], 2)?),
            ("sum to product, three summands", check_sum_to_product(&family, 2)?),
        ];
        for (name, ok) in outcomes.into_iter().chain(products) {
            if !ok {
                report.failures.push((name, t));
            }
        }
        report.representative_independence += outcomes[0].1 as usize;
        report.theta_linearity += outcomes[1].1 as usize;
        report.free_reduced_vanishes += outcomes[2].1 as usize;
        report.transfer_vanishes += outcomes[3].1 as usize;
        report.sum_to_product_two += products[0].1 as usize;
        report.sum_to_product_three += products[1].1 as usize;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steenrod_numbers() {
        assert!((0..6).all(|n| steenrod_number(2, n) == 1));
        assert_eq!(steenrod_number(3, 1), 2);
        assert_eq!(steenrod_number(3, 2), 2);
        assert!((0..6).all(|n| steenrod_number(5, n) != 0));
    }

    #[test]
    fn binary_shuffles_have_expected_signs() {
        let s = shuffles(&[1, 1]);
        assert_eq!(s, vec![(vec![0b01, 0b10], 1), (vec![0b10, 0b01], -1)]);
        assert_eq!(shuffles(&[2, 1, 1]).len(), 12);
        assert_eq!(shuffles(&[0, 0]), vec![(vec![0, 0], 1)]);
    }

    #[test]
    fn compositions_respect_top() {
        assert_eq!(compositions(3, 2, 2), vec![vec![1, 2], vec![2, 1]]);
    }
}
