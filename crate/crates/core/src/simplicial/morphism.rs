use std::sync::Arc;

use super::power::PowerSpace;
use super::set::FiniteSimplicialSet;
use super::word::SimplexRef;
use crate::error::{Error, Result};
use crate::fp_linalg::{MatrixFp, PrimeField};

/// A simplicial map, determined by the images of the generators.
#[derive(Clone, Debug)]
pub struct SimplicialMorphism {
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    images: Vec<SimplexRef>,
}

impl SimplicialMorphism {
    /// Validates dimensions and compatibility with every face map.
    pub fn new(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        images: Vec<SimplexRef>,
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidMorphism(format!(
                "expected {} generator images, got {}",
                source.generators().len(),
                images.len()
            )));
        }
        for (id, (g, img)) in source.generators().iter().zip(&images).enumerate() {
            if img.dim() != g.dim {
                return Err(Error::InvalidMorphism(format!(
                    "image of {:?} has dimension {} instead of {}",
                    g.name,
                    img.dim(),
                    g.dim
                )));
            }
            if img.gen as usize >= target.generators().len()
                || target.generator(img.gen).dim != img.base_dim()
            {
                return Err(Error::InvalidMorphism(format!(
                    "image of {:?} is not a simplex of the target",
                    g.name
                )));
            }
            let _ = id;
        }
        let map = Self {
            source,
            target,
            images,
        };
        for (id, g) in map.source.generators().iter().enumerate() {
            let s = map.source.simplex(id as u32);
            for i in 0..=g.dim {
                if g.dim == 0 {
                    break;
                }
                let lhs = map.target.face(map.image(s), i);
                let rhs = map.image(map.source.face(s, i));
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!(
                        "d{i} does not commute with the map on {:?}",
                        g.name
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(x: Arc<FiniteSimplicialSet>) -> Self {
        let images = (0..x.generators().len() as u32).map(|g| x.simplex(g)).collect();
        Self {
            source: x.clone(),
            target: x,
            images,
        }
    }

    pub fn source(&self) -> &Arc<FiniteSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSimplicialSet> {
        &self.target
    }

    /// Image of an arbitrary (possibly degenerate) simplex: `a(s_I σ) = s_I a(σ)`.
    pub fn image(&self, x: SimplexRef) -> SimplexRef {
        let img = self.images[x.gen as usize];
        self.target.apply(img, &x.word.surjection(x.dim()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMorphism) -> Result<SimplicialMorphism> {
        if !Arc::ptr_eq(&self.target, &other.source)
            && self.target.generators() != other.source.generators()
        {
            return Err(Error::InvalidMorphism(
                "composite of maps with mismatched spaces".into(),
            ));
        }
        let images = self.images.iter().map(|&s| other.image(s)).collect();
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    /// Induced map on normalized chains `C_m(X) -> C_m(Y)`, `m ≤ m_max`.
    pub fn induced_chain_map(&self, field: PrimeField, m_max: usize) -> Vec<MatrixFp> {
        (0..=m_max)
            .map(|m| {
                let triplets = self
                    .source
                    .generators_of_dim(m)
                    .iter()
                    .enumerate()
                    .filter_map(|(col, &g)| {
                        let img = self.image(self.source.simplex(g));
                        (!img.is_degenerate()).then(|| (self.target.position(img.gen), col, 1))
                    });
                MatrixFp::from_triplets(field, self.target.count(m), self.source.count(m), triplets)
            })
            .collect()
    }

    pub fn cartesian_power(&self, p: usize) -> CartesianPower<'_> {
        CartesianPower { base: self, p }
    }
}

/// The coordinatewise map `a^p : X^p -> Y^p`.
pub struct CartesianPower<'a> {
    base: &'a SimplicialMorphism,
    p: usize,
}

impl CartesianPower<'_> {
    /// Chain map `C_m(X^p) -> C_m(Y^p)` between built power spaces.
    pub fn chain_map(&self, source: &PowerSpace, target: &PowerSpace, m: usize) -> MatrixFp {
        assert_eq!(source.p(), self.p);
        assert_eq!(target.p(), self.p);
        let field = source.chains().field();
        let mut buf = Vec::with_capacity(self.p);
        let mut triplets = Vec::new();
        for k in 0..source.count(m) {
            buf.clear();
            let mut common = u32::MAX;
            for &s in source.tuple(m, k) {
                let img = self.base.image(s);
                common &= img.word.mask();
                buf.push(img);
            }
            if m > 0 && common != 0 {
                continue;
            }
            let row = target
                .index_of(m, &buf)
                .expect("nondegenerate image tuple is in the target basis");
            triplets.push((row, k, 1));
        }
        MatrixFp::from_triplets(field, target.count(m), source.count(m), triplets)
    }
}
