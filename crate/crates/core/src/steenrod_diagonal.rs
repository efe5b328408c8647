//! Steenrod operations read off the diagonal `X -> X^p` and the cyclic action.
//!
//! For `u ∈ H^n(X)` the image of `h^{pn}_{C_p}(X^p) -> h^{pn}_{C_p}(X)` under the
//! diagonal contains exactly one class `w = Σ e_{pn-i} × v_i` with `v_i = 0` for
//! `i < n` and `v_n = u`; then `Σ^k u = v_{n+k}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::equivariant::{
    equivariant_cohomology, CpComplex, EquivariantChainMap, EquivariantCochain, EquivariantCohomology,
    KunnethBasis, KunnethVector,
};
use crate::error::{Error, Result};
use crate::fp_linalg::{kernel, MatrixFp, PrimeField, SparseVec, SubspaceFp};
use crate::simplicial::{
    chain_cohomology, chain_complex, ChainComplex, Cohomology, FiniteSimplicialSet, PowerSpace,
    SimplicialMorphism,
};

/// The symbolic name of `Σ^k` at the prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperationName {
    pub p: u32,
    pub k: usize,
}

impl OperationName {
    pub fn new(p: u32, k: usize) -> Self {
        Self { p, k }
    }

    /// Whether `Σ^k` can be nonzero at all: always for `p = 2`, otherwise only
    /// for `k ≡ 0, 1 mod 2(p - 1)`.
    pub fn is_admissible(&self) -> bool {
        self.p == 2 || (self.k % (2 * (self.p as usize - 1))) <= 1
    }
}

impl fmt::Display for OperationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 2 {
            return write!(f, "Sq^{}", self.k);
        }
        let period = 2 * (self.p as usize - 1);
        let s = self.k / period;
        match self.k % period {
            0 => write!(f, "{}P^{s}", if s.is_multiple_of(2) { "" } else { "-" }),
            1 => write!(f, "{}βP^{s}", if s % 2 == 1 { "" } else { "-" }),
            _ => write!(f, "0"),
        }
    }
}

/// Power space, its equivariant chains and `h^m_{C_p}(X^p)` for one total degree.
pub struct PowerData {
    pub degree: usize,
    pub space: PowerSpace,
    pub complex: CpComplex,
    pub cohomology: EquivariantCohomology,
}

/// The image of the diagonal in total degree `m`, in Künneth coordinates.
#[derive(Clone, Debug)]
pub struct DiagonalImage {
    pub degree: usize,
    pub basis: KunnethBasis,
    pub image: SubspaceFp,
}

impl DiagonalImage {
    pub fn dim(&self) -> usize {
        self.image.dim()
    }
}

/// The unique solution `w` for a class `u ∈ H^n`.
#[derive(Clone, Debug)]
pub struct SteenrodSolve {
    pub n: usize,
    pub class: Vec<u8>,
    pub solution: KunnethVector,
}

impl SteenrodSolve {
    /// `v_{n+k}`; zero past the unstable range.
    pub fn component(&self, k: usize) -> Option<&[u8]> {
        self.solution.v.get(self.n + k).map(Vec::as_slice)
    }
}

/// Shared, read-only state for one space and one prime.
pub struct SteenrodContext {
    space: Arc<FiniteSimplicialSet>,
    field: PrimeField,
    chains: ChainComplex,
    limit: usize,
    power_cache: Option<Mutex<HashMap<usize, Arc<PowerData>>>>,
    image_cache: Option<Mutex<HashMap<usize, Arc<DiagonalImage>>>>,
}

impl SteenrodContext {
    pub fn new(space: Arc<FiniteSimplicialSet>, field: PrimeField, limit: usize) -> Self {
        let chains = chain_complex(&space, field, space.cap());
        Self {
            space,
            field,
            chains,
            limit,
            power_cache: None,
            image_cache: None,
        }
    }

    /// Keep power-space data and images across calls (memory over speed otherwise).
    pub fn with_cache(mut self) -> Self {
        self.power_cache = Some(Mutex::new(HashMap::new()));
        self.image_cache = Some(Mutex::new(HashMap::new()));
        self
    }

    pub fn space(&self) -> &Arc<FiniteSimplicialSet> {
        &self.space
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> usize {
        self.field.p() as usize
    }

    pub fn chains(&self) -> &ChainComplex {
        &self.chains
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn cohomology(&self, i: usize) -> Result<Cohomology> {
        chain_cohomology(&self.chains, i)
    }

    pub fn betti(&self, n_max: usize) -> Result<Vec<usize>> {
        (0..=n_max).map(|i| Ok(self.cohomology(i)?.dim())).collect()
    }

    pub fn kunneth_basis(&self, m: usize) -> Result<KunnethBasis> {
        KunnethBasis::new(&self.chains, m)
    }

    /// `X^p` through degree `m + 1` and `h^m_{C_p}(X^p)`.
    pub fn power_data(&self, m: usize) -> Result<Arc<PowerData>> {
        if let Some(cache) = &self.power_cache {
            if let Some(hit) = cache.lock().expect("cache lock").get(&m) {
                return Ok(hit.clone());
            }
        }
        let space = PowerSpace::build(&self.space, self.field, m + 1, self.limit)?;
        let complex = CpComplex::power(&space);
        let cohomology = equivariant_cohomology(&complex, m)?;
        let data = Arc::new(PowerData {
            degree: m,
            space,
            complex,
            cohomology,
        });
        if let Some(cache) = &self.power_cache {
            cache.lock().expect("cache lock").insert(m, data.clone());
        }
        Ok(data)
    }

    /// The diagonal `C_d(X) -> C_d(X^p)` for `d ≤ m`, as an equivariant chain map
    /// from the trivially acted chains of `X`.
    pub fn diagonal_map(&self, power: &PowerSpace, m: usize) -> EquivariantChainMap {
        EquivariantChainMap::trusted((0..=m).map(|d| power.diagonal_chain(&self.space, d)).collect())
    }

    /// `Im h^m_{C_p}(d#)` in Künneth coordinates.
    pub fn diagonal_image(&self, m: usize) -> Result<Arc<DiagonalImage>> {
        if let Some(cache) = &self.image_cache {
            if let Some(hit) = cache.lock().expect("cache lock").get(&m) {
                return Ok(hit.clone());
            }
        }
        let data = self.power_data(m)?;
        let basis = self.kunneth_basis(m)?;
        let diag = self.diagonal_map(&data.space, m);
        let vectors = data
            .cohomology
            .representatives()
            .map(|z| Ok(basis.flatten(&basis.extract(&diag.pullback(&z))?)))
            .collect::<Result<Vec<_>>>()?;
        let image = SubspaceFp::span(self.field, basis.dim(), vectors);
        let result = Arc::new(DiagonalImage {
            degree: m,
            basis,
            image,
        });
        if let Some(cache) = &self.image_cache {
            cache.lock().expect("cache lock").insert(m, result.clone());
        }
        Ok(result)
    }

    fn check_class(&self, n: usize, class: &[u8]) -> Result<()> {
        let dim = self.cohomology(n)?.dim();
        if class.len() != dim {
            return Err(Error::InvalidClass(format!(
                "H^{n} has dimension {dim}, class has {} coordinates",
                class.len()
            )));
        }
        if class.iter().any(|&c| c as u32 >= self.field.p()) {
            return Err(Error::InvalidClass("coordinates must be residues mod p".into()));
        }
        Ok(())
    }

    /// Solves `w ∈ Im, v_{<n}(w) = 0, v_n(w) = u`, insisting on a unique solution.
    pub fn solve_class(&self, n: usize, class: &[u8]) -> Result<SteenrodSolve> {
        self.check_class(n, class)?;
        let p = self.p();
        let img = self.diagonal_image(p * n)?;
        let constrained = img.basis.range(0).start..img.basis.range(n).end;
        let system = restrict(&img.image, constrained.clone());
        let mut rhs = vec![0u8; constrained.len()];
        rhs[img.basis.range(n)].copy_from_slice(class);
        let null = kernel(&system);
        if !null.is_zero() {
            let witness = combine(self.field, img.image.basis(), &null.basis()[0]);
            return Err(Error::Consistency(format!(
                "multiple solutions for a class in H^{n}: nonzero image vector {:?} has vanishing low components",
                img.basis.unflatten(&witness).v
            )));
        }
        let coeffs = crate::fp_linalg::solve(&system, &SparseVec::from_dense(&rhs)).ok_or_else(|| {
            Error::Consistency(format!(
                "no class in the diagonal image restricts to {class:?} in H^{n}"
            ))
        })?;
        let w = combine(self.field, img.image.basis(), &coeffs);
        let solution = img.basis.unflatten(&w);
        if p != 2 {
            for k in 0..=(p - 1) * n {
                let name = OperationName::new(p as u32, k);
                if !name.is_admissible() && solution.v[n + k].iter().any(|&c| c != 0) {
                    return Err(Error::Consistency(format!(
                        "component v_{} is nonzero although Σ^{k} vanishes at p = {p}",
                        n + k
                    )));
                }
            }
        }
        Ok(SteenrodSolve {
            n,
            class: class.to_vec(),
            solution,
        })
    }

    /// `Σ^k u` as coordinates in `H^{n+k}`.
    pub fn sigma(&self, n: usize, class: &[u8], k: usize) -> Result<Vec<u8>> {
        if n + k > self.p() * n {
            self.check_class(n, class)?;
            return Ok(vec![0; self.cohomology(n + k)?.dim()]);
        }
        let solve = self.solve_class(n, class)?;
        Ok(solve.solution.v[n + k].clone())
    }

    /// Whether every image vector with `v_i = 0` for all `i ≤ m / p` is zero.
    pub fn uniqueness_check(&self, m: usize) -> Result<bool> {
        let img = self.diagonal_image(m)?;
        let low = m / self.p();
        let system = restrict(&img.image, img.basis.range(0).start..img.basis.range(low).end);
        Ok(kernel(&system).is_zero())
    }

    /// Every `Σ^k` on every basis class of `H^n`, `n ≤ n_max`, within the unstable range.
    pub fn operation_table(&self, n_max: usize) -> Result<Vec<OperationRow>> {
        let p = self.p();
        let mut rows = Vec::new();
        for n in 0..=n_max {
            let dim = self.cohomology(n)?.dim();
            for index in 0..dim {
                let mut class = vec![0u8; dim];
                class[index] = 1;
                let solve = self.solve_class(n, &class)?;
                for k in 0..=(p - 1) * n {
                    rows.push(OperationRow {
                        n,
                        index,
                        k,
                        name: OperationName::new(p as u32, k),
                        result: solve.solution.v[n + k].clone(),
                    });
                }
            }
        }
        Ok(rows)
    }
}

/// One entry of an operation table: `Σ^k` of the basis class `index` of `H^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationRow {
    pub n: usize,
    pub index: usize,
    pub k: usize,
    pub name: OperationName,
    pub result: Vec<u8>,
}

/// Matrix whose columns are the image basis vectors cut down to `range`.
fn restrict(image: &SubspaceFp, range: std::ops::Range<usize>) -> MatrixFp {
    let cols: Vec<SparseVec> = image.basis().iter().map(|b| b.slice(range.start, range.end)).collect();
    MatrixFp::from_columns(image.field(), range.len(), &cols)
}

fn combine(field: PrimeField, vectors: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in coeffs.iter() {
        out.axpy(field, c, &vectors[k]);
    }
    out
}

/// Outcome of [`naturality_check`].
#[derive(Clone, Debug, Default)]
pub struct NaturalityReport {
    pub diagram_commutes: bool,
    pub equivariant: bool,
    /// `(index of u in H^n(Y), f^*Σ^k u, Σ^k f^*u)`
    pub classes: Vec<(usize, Vec<u8>, Vec<u8>)>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.diagram_commutes && self.equivariant && self.classes.iter().all(|(_, a, b)| a == b)
    }
}

/// `f^*` on `H^i` for the chain map `f = Σ λ a#`.
fn pullback_on_cohomology(
    maps: &[MatrixFp],
    i: usize,
    target: &Cohomology,
    source: &Cohomology,
    class: &[u8],
) -> Result<Vec<u8>> {
    let rep = target.representative(class);
    let pulled = match maps.get(i) {
        Some(f) => f.left_mul_vec(&rep),
        None => SparseVec::new(),
    };
    source
        .coordinates(&pulled)
        .ok_or_else(|| Error::Consistency("pullback of a cocycle is not a cocycle".into()))
}

/// Checks `f^* Σ^k = Σ^k f^*` on `H^n(Y)` for `f = Σ λ a#`, `F = Σ λ (a^p)#`,
/// after confirming `F ∘ d_X# = d_Y# ∘ f` and that `F` commutes with the rotation.
pub fn naturality_check(
    x: &SteenrodContext,
    y: &SteenrodContext,
    terms: &[(SimplicialMorphism, i64)],
    n: usize,
    k: usize,
) -> Result<NaturalityReport> {
    let field = x.field();
    let p = x.p();
    if terms.is_empty() {
        return Err(Error::InvalidMorphism("empty linear combination".into()));
    }
    for (a, _) in terms {
        if a.source().generators() != x.space().generators() || a.target().generators() != y.space().generators() {
            return Err(Error::InvalidMorphism("map does not go between the given spaces".into()));
        }
    }
    let top = (p * n + 1).max(n + k);
    let lin = |make: &dyn Fn(&SimplicialMorphism) -> Vec<MatrixFp>| -> Vec<MatrixFp> {
        let mut acc: Option<Vec<MatrixFp>> = None;
        for (a, w) in terms {
            let c = field.reduce(*w);
            let mats: Vec<MatrixFp> = make(a).iter().map(|m| m.scale(c)).collect();
            acc = Some(match acc {
                None => mats,
                Some(prev) => prev.iter().zip(&mats).map(|(u, v)| u.add(v)).collect(),
            });
        }
        acc.expect("nonempty")
    };
    let f = lin(&|a| a.induced_chain_map(field, top));

    let px = PowerSpace::build(x.space(), field, p * n + 1, x.limit())?;
    let py = PowerSpace::build(y.space(), field, p * n + 1, y.limit())?;
    let big_f = lin(&|a| {
        let power = a.cartesian_power(p);
        (0..=p * n + 1).map(|m| power.chain_map(&px, &py, m)).collect()
    });
    let mut report = NaturalityReport {
        diagram_commutes: true,
        equivariant: true,
        classes: Vec::new(),
    };
    for m in 0..=p * n + 1 {
        let lhs = big_f[m].mul(&px.diagonal_chain(x.space(), m));
        let rhs = py.diagonal_chain(y.space(), m).mul(&f[m]);
        report.diagram_commutes &= lhs == rhs;
        report.equivariant &= big_f[m].mul(&px.rotation_chain(m)) == py.rotation_chain(m).mul(&big_f[m]);
        if m > 0 {
            report.diagram_commutes &=
                py.chains().boundary(m).mul(&big_f[m]) == big_f[m - 1].mul(&px.chains().boundary(m));
        }
    }
    if !(report.diagram_commutes && report.equivariant) {
        return Ok(report);
    }
    let hy_n = y.cohomology(n)?;
    let hx_n = x.cohomology(n)?;
    let hy_nk = y.cohomology(n + k)?;
    let hx_nk = x.cohomology(n + k)?;
    for index in 0..hy_n.dim() {
        let mut u = vec![0u8; hy_n.dim()];
        u[index] = 1;
        let sigma_u = y.sigma(n, &u, k)?;
        let lhs = pullback_on_cohomology(&f, n + k, &hy_nk, &hx_nk, &sigma_u)?;
        let fu = pullback_on_cohomology(&f, n, &hy_n, &hx_n, &u)?;
        let rhs = x.sigma(n, &fu, k)?;
        report.classes.push((index, lhs, rhs));
    }
    Ok(report)
}

/// Pullback of an equivariant cocycle along the diagonal, for callers holding power data.
pub fn diagonal_pullback(ctx: &SteenrodContext, data: &PowerData, z: &EquivariantCochain) -> EquivariantCochain {
    ctx.diagonal_map(&data.space, data.degree).pullback(z)
}
