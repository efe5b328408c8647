//! The periodic free resolution of `F_p` over `F_p C_p` and the basis `e_i` of `H^*(C_p)`.

use crate::error::{Error, Result};
use crate::fp_linalg::{image, kernel, MatrixFp, PrimeField, SparseVec, SubspaceFp};

/// An element `Σ c_k t^k` of the group ring `F_p C_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    field: PrimeField,
    coeffs: Vec<u8>,
}

impl GroupRingElement {
    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: vec![0; field.p() as usize],
        }
    }

    /// `c·t^k`.
    pub fn monomial(field: PrimeField, k: usize, c: i64) -> Self {
        let mut e = Self::zero(field);
        let p = e.coeffs.len();
        e.coeffs[k % p] = field.reduce(c);
        e
    }

    pub fn one(field: PrimeField) -> Self {
        Self::monomial(field, 0, 1)
    }

    /// The generator `t`.
    pub fn t(field: PrimeField) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn norm(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: vec![1; field.p() as usize],
        }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Self {
            field: self.field,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u8) -> Self {
        Self {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }

    /// Product in the group ring: cyclic convolution.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.coeffs.len();
        let mut out = Self::zero(self.field);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let slot = &mut out.coeffs[(i + j) % p];
                *slot = self.field.add(*slot, self.field.mul(a, b));
            }
        }
        out
    }

    /// The augmentation `ε(Σ c_k t^k) = Σ c_k`.
    pub fn augmentation(&self) -> u8 {
        self.coeffs.iter().fold(0, |acc, &c| self.field.add(acc, c))
    }

    /// Matrix of multiplication by this element on the regular representation,
    /// in the basis `1, t, ..., t^{p-1}`.
    pub fn regular_matrix(&self) -> MatrixFp {
        let p = self.coeffs.len();
        let triplets = (0..p).flat_map(|col| {
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(move |(k, &c)| ((col + k) % p, col, c as i64))
        });
        MatrixFp::from_triplets(self.field, p, p, triplets)
    }
}

/// The norm element `M = 1 + t + ... + t^{p-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormElement(GroupRingElement);

impl NormElement {
    pub fn new(field: PrimeField) -> Self {
        Self(GroupRingElement::norm(field))
    }

    pub fn element(&self) -> &GroupRingElement {
        &self.0
    }

    /// `t·M = M`.
    pub fn is_invariant(&self) -> bool {
        GroupRingElement::t(self.0.field).mul(&self.0) == self.0
    }
}

/// The class `e_i ∈ H^i(C_p)`, dual to the generator `w_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardBasisClass {
    pub index: usize,
}

/// `... -> W_2 -> W_1 -> W_0 -> F_p` with `W_j = F_p C_p · w_j`,
/// `∂w_{odd} = (t - 1) w` and `∂w_{even} = N w`.
#[derive(Clone, Debug)]
pub struct PeriodicResolution {
    field: PrimeField,
    cap: usize,
}

/// Outcome of [`PeriodicResolution::verify_exactness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub cap: usize,
    pub squares_to_zero: bool,
    pub augmentation_exact: bool,
    /// degrees `j` in `1..cap` where `ker ∂_j ≠ im ∂_{j+1}`
    pub failures: Vec<usize>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.squares_to_zero && self.augmentation_exact && self.failures.is_empty()
    }
}

impl PeriodicResolution {
    pub fn new(field: PrimeField, cap: usize) -> Self {
        Self { field, cap }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The coefficient `c_j` with `∂w_j = c_j·w_{j-1}`.
    pub fn boundary_coefficient(&self, j: usize) -> Result<GroupRingElement> {
        if j == 0 || j > self.cap {
            return Err(Error::Consistency(format!(
                "resolution degree {j} outside 1..={}",
                self.cap
            )));
        }
        Ok(boundary_coefficient(self.field, j))
    }

    /// `∂_j` on the regular representation.
    pub fn boundary_matrix(&self, j: usize) -> Result<MatrixFp> {
        Ok(self.boundary_coefficient(j)?.regular_matrix())
    }

    /// Checks `∂∂ = 0`, `ker ε = im ∂_1`, and `ker ∂_j = im ∂_{j+1}` for `1 ≤ j < cap`.
    pub fn verify_exactness(&self) -> ExactnessReport {
        let f = self.field;
        let p = f.p() as usize;
        let mut squares_to_zero = true;
        let mut failures = Vec::new();
        for j in 1..self.cap {
            let lower = boundary_coefficient(f, j).regular_matrix();
            let upper = boundary_coefficient(f, j + 1).regular_matrix();
            if !lower.mul(&upper).is_zero() {
                squares_to_zero = false;
            }
            if !same_subspace(&kernel(&lower), &image(&upper)) {
                failures.push(j);
            }
        }
        let eps = MatrixFp::from_rows(f, p, vec![SparseVec::from_entries(f, (0..p).map(|k| (k, 1)))]);
        let augmentation_exact = self.cap == 0
            || same_subspace(&kernel(&eps), &image(&boundary_coefficient(f, 1).regular_matrix()));
        ExactnessReport {
            cap: self.cap,
            squares_to_zero,
            augmentation_exact,
            failures,
        }
    }

    /// Differential of `Hom_{C_p}(W, F_p)` from degree `j - 1` to `j`: the
    /// invariant functionals are multiples of `ε`, and `ε ∘ c_j = ε(c_j)·ε`.
    pub fn cochain_differential(&self, j: usize) -> Result<u8> {
        Ok(self.boundary_coefficient(j)?.augmentation())
    }

    /// `dim H^i(C_p)` for `i < cap`, read off the invariant cochain complex.
    pub fn group_cohomology_dims(&self) -> Vec<usize> {
        (0..self.cap)
            .map(|i| {
                let incoming_zero = i == 0 || boundary_coefficient(self.field, i).augmentation() == 0;
                let outgoing_zero = boundary_coefficient(self.field, i + 1).augmentation() == 0;
                usize::from(incoming_zero && outgoing_zero)
            })
            .collect()
    }
}

fn same_subspace(a: &SubspaceFp, b: &SubspaceFp) -> bool {
    a.contains_subspace(b) && b.contains_subspace(a)
}

/// `t - 1` for odd `j`, the norm for even `j > 0`.
pub fn boundary_coefficient(field: PrimeField, j: usize) -> GroupRingElement {
    assert!(j > 0, "w_0 has no boundary coefficient");
    if j % 2 == 1 {
        GroupRingElement::t(field).sub(&GroupRingElement::one(field))
    } else {
        GroupRingElement::norm(field)
    }
}

/// The structure constant in `e_i e_j = c_p(i, j) e_{i+j}`: zero exactly when `p`
/// is odd and both degrees are odd.
pub fn product_rule(p: u32, i: usize, j: usize) -> u8 {
    if p != 2 && i % 2 == 1 && j % 2 == 1 {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn coefficients_mod_two_coincide() {
        let r = PeriodicResolution::new(f(2), 6);
        let one_plus_t = GroupRingElement::one(f(2)).add(&GroupRingElement::t(f(2)));
        for j in 1..=6 {
            assert_eq!(r.boundary_coefficient(j).unwrap(), one_plus_t);
        }
        assert!(r.boundary_coefficient(0).is_err());
        assert!(r.boundary_coefficient(7).is_err());
    }

    #[test]
    fn composite_vanishes_mod_three() {
        let r = PeriodicResolution::new(f(3), 4);
        assert_eq!(r.boundary_coefficient(2).unwrap().coeffs(), &[1, 1, 1]);
        let c = r.boundary_coefficient(1).unwrap().mul(&r.boundary_coefficient(2).unwrap());
        assert!(c.is_zero());
        assert!(NormElement::new(f(3)).is_invariant());
    }

    #[test]
    fn exact_through_degree_eight() {
        for p in [2, 3, 5] {
            let report = PeriodicResolution::new(f(p), 8).verify_exactness();
            assert!(report.passed(), "{report:?}");
            assert_eq!(PeriodicResolution::new(f(p), 8).group_cohomology_dims(), vec![1; 8]);
        }
    }

    #[test]
    fn product_rule_values() {
        assert!((0..6).all(|i| (0..6).all(|j| product_rule(2, i, j) == 1)));
        assert_eq!(product_rule(3, 1, 1), 0);
        assert_eq!(product_rule(3, 1, 2), 1);
        assert_eq!(product_rule(3, 2, 2), 1);
    }
}
