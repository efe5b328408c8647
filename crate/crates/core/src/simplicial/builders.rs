use std::collections::BTreeSet;
use std::sync::Arc;

use super::morphism::SimplicialMorphism;
use super::set::{FiniteSimplicialSet, SimplicialSetBuilder};
use super::word::{DegeneracyWord, SimplexRef};
use crate::error::{Error, Result};

/// A single vertex.
pub fn point() -> FiniteSimplicialSet {
    let mut b = SimplicialSetBuilder::new();
    b.vertex("*").expect("fresh builder");
    b.build().expect("a point is a valid simplicial set")
}

fn bar_name(word: &[u32]) -> String {
    if word.is_empty() {
        return "*".to_string();
    }
    let parts: Vec<String> = word.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join("|"))
}

/// Splits a bar word into its nonzero entries and the degeneracy word given by the zeros.
fn bar_normal_form(word: &[u32]) -> (Vec<u32>, DegeneracyWord) {
    let mut mask = 0u32;
    let mut kept = Vec::with_capacity(word.len());
    for (k, &g) in word.iter().enumerate() {
        if g == 0 {
            mask |= 1 << k;
        } else {
            kept.push(g);
        }
    }
    (kept, DegeneracyWord::from_mask(mask))
}

fn all_bar_words(q: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..q).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out
}

/// The `dim`-skeleton of the reduced bar construction of `Z/q`.
///
/// The nondegenerate `n`-simplices are the words `[g_1|...|g_n]` with every
/// `g_i ≠ 0`. Faces drop an end letter or add two neighbours; a zero letter in
/// slot `k` is the degeneracy `s_{k-1}`.
pub fn bar_skeleton(q: u32, dim: usize) -> Result<FiniteSimplicialSet> {
    if q < 2 {
        return Err(Error::InvalidSimplicialSet(format!("bar model needs q ≥ 2, got {q}")));
    }
    let mut b = SimplicialSetBuilder::new();
    b.vertex("*")?;
    for n in 1..=dim {
        for word in all_bar_words(q, n) {
            let faces = (0..=n)
                .map(|i| {
                    let face: Vec<u32> = if i == 0 {
                        word[1..].to_vec()
                    } else if i == n {
                        word[..n - 1].to_vec()
                    } else {
                        let mut f = word[..i - 1].to_vec();
                        f.push((word[i - 1] + word[i]) % q);
                        f.extend_from_slice(&word[i + 1..]);
                        f
                    };
                    let (kept, w) = bar_normal_form(&face);
                    (b.id(&bar_name(&kept)).expect("lower faces exist"), w)
                })
                .collect();
            b.simplex(bar_name(&word), n, faces)?;
        }
    }
    b.build()
}

/// `Δ^n / ∂Δ^n`: one vertex and one `n`-simplex (two points when `n = 0`).
pub fn sphere(n: usize) -> Result<FiniteSimplicialSet> {
    let mut b = SimplicialSetBuilder::new();
    let v = b.vertex("*")?;
    if n == 0 {
        b.vertex("o")?;
    } else {
        let collapsed = DegeneracyWord::from_mask(if n == 1 { 0 } else { (1 << (n - 1)) - 1 });
        b.simplex("sigma", n, vec![(v, collapsed); n + 1])?;
    }
    b.build()
}

/// A circle subdivided into `d ≥ 1` edges `e_i : v_i -> v_{i+1}`.
pub fn circle(d: usize) -> Result<FiniteSimplicialSet> {
    if d == 0 {
        return Err(Error::InvalidSimplicialSet("a circle needs at least one edge".into()));
    }
    let mut b = SimplicialSetBuilder::new();
    let verts: Vec<usize> = (0..d).map(|i| b.vertex(format!("v{i}"))).collect::<Result<_>>()?;
    for i in 0..d {
        let faces = vec![
            (verts[(i + 1) % d], DegeneracyWord::IDENTITY),
            (verts[i], DegeneracyWord::IDENTITY),
        ];
        b.simplex(format!("e{i}"), 1, faces)?;
    }
    b.build()
}

fn simplex_name(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(usize::to_string).collect();
    format!("<{}>", parts.join(","))
}

/// The simplicial set of an ordered simplicial complex on vertices `0..vertices`.
///
/// Every facet is closed under faces; vertices of a simplex are ordered by index.
pub fn from_simplicial_complex(vertices: usize, facets: &[Vec<usize>]) -> Result<FiniteSimplicialSet> {
    let mut simplices: BTreeSet<(usize, Vec<usize>)> = (0..vertices).map(|v| (0, vec![v])).collect();
    for facet in facets {
        let mut f = facet.clone();
        f.sort_unstable();
        if f.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplicialSet(format!("facet {facet:?} repeats a vertex")));
        }
        if f.is_empty() || f.iter().any(|&v| v >= vertices) {
            return Err(Error::InvalidSimplicialSet(format!(
                "facet {facet:?} is empty or uses a vertex outside 0..{vertices}"
            )));
        }
        if f.len() > super::word::MAX_DIM {
            return Err(Error::DimensionTooLarge(f.len() - 1));
        }
        let k = f.len();
        for mask in 1u32..(1u32 << k) {
            let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            simplices.insert((sub.len() - 1, sub));
        }
    }
    let mut b = SimplicialSetBuilder::new();
    for (dim, vs) in &simplices {
        let faces = if *dim == 0 {
            Vec::new()
        } else {
            (0..=*dim)
                .map(|i| {
                    let mut face = vs.clone();
                    face.remove(i);
                    (b.id(&simplex_name(&face)).expect("faces come first"), DegeneracyWord::IDENTITY)
                })
                .collect()
        };
        b.simplex(simplex_name(vs), *dim, faces)?;
    }
    b.build()
}

/// Disjoint union; generator names are prefixed with the summand index.
pub fn disjoint_union(parts: &[&FiniteSimplicialSet]) -> Result<FiniteSimplicialSet> {
    let mut b = SimplicialSetBuilder::new();
    for (k, x) in parts.iter().enumerate() {
        let mut handle = Vec::with_capacity(x.generators().len());
        for (id, g) in x.generators().iter().enumerate() {
            let faces = x
                .generator_faces(id as u32)
                .iter()
                .map(|f| (handle[f.gen as usize], f.word))
                .collect();
            handle.push(b.simplex(format!("{k}:{}", g.name), g.dim, faces)?);
        }
    }
    b.build()
}

/// The map of bar skeletons induced by the homomorphism `Z/q -> Z/r, g -> multiplier·g`.
pub fn bar_homomorphism(
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    q: u32,
    r: u32,
    multiplier: u32,
) -> Result<SimplicialMorphism> {
    if !(q as u64 * multiplier as u64).is_multiple_of(r as u64) {
        return Err(Error::InvalidMorphism(format!(
            "g -> {multiplier}g is not a homomorphism Z/{q} -> Z/{r}"
        )));
    }
    let mut images = Vec::with_capacity(source.generators().len());
    for g in source.generators() {
        let word = parse_bar_name(&g.name)
            .ok_or_else(|| Error::InvalidMorphism(format!("{:?} is not a bar word", g.name)))?;
        let mapped: Vec<u32> = word.iter().map(|&x| (x * multiplier) % r).collect();
        let (kept, w) = bar_normal_form(&mapped);
        let gen = target.lookup(&bar_name(&kept)).ok_or_else(|| {
            Error::InvalidMorphism(format!("target has no simplex {}", bar_name(&kept)))
        })?;
        images.push(SimplexRef {
            dim: g.dim as u8,
            gen,
            word: w,
        });
    }
    SimplicialMorphism::new(source, target, images)
}

fn parse_bar_name(name: &str) -> Option<Vec<u32>> {
    if name == "*" {
        return Some(Vec::new());
    }
    let inner = name.strip_prefix('[')?.strip_suffix(']')?;
    inner.split('|').map(|s| s.parse().ok()).collect()
}

/// The map `circle(d) -> circle(1)` wrapping each edge of the source around the
/// target. Edges listed in `collapse` go to the degenerate edge instead, so the
/// degree is `d - collapse.len()`.
pub fn circle_wrap(d: usize, collapse: &[usize]) -> Result<SimplicialMorphism> {
    let source = Arc::new(circle(d)?);
    let target = Arc::new(circle(1)?);
    let v = target.lookup("v0").expect("circle vertex");
    let e = target.lookup("e0").expect("circle edge");
    let images = source
        .generators()
        .iter()
        .map(|g| {
            if g.dim == 0 {
                SimplexRef::nondegenerate(v, 0)
            } else if collapse.iter().any(|&c| g.name == format!("e{c}")) {
                SimplexRef {
                    dim: 1,
                    gen: v,
                    word: DegeneracyWord::from_mask(1),
                }
            } else {
                SimplexRef::nondegenerate(e, 1)
            }
        })
        .collect();
    SimplicialMorphism::new(source, target, images)
}
