//! JSON documents describing spaces and maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builders;
use super::morphism::SimplicialMorphism;
use super::set::{FiniteSimplicialSet, SimplicialSetBuilder};
use super::word::{DegeneracyWord, SimplexRef};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRef {
    #[serde(default)]
    pub word: Vec<usize>,
    pub gen: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "builtin", rename_all = "snake_case")]
pub enum Builtin {
    Point,
    BarSkeleton { q: u32, dim: usize },
    Sphere { n: usize },
    Circle { d: usize },
}

/// Any accepted space description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceDocument {
    Builtin(Builtin),
    Complex {
        vertices: usize,
        facets: Vec<Vec<usize>>,
    },
    Raw {
        cap: usize,
        generators: Vec<Vec<String>>,
        faces: BTreeMap<String, Vec<FaceRef>>,
    },
}

impl SpaceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(format!("unrecognised space document: {e}")))
    }

    pub fn build(&self) -> Result<FiniteSimplicialSet> {
        match self {
            SpaceDocument::Builtin(Builtin::Point) => Ok(builders::point()),
            SpaceDocument::Builtin(Builtin::BarSkeleton { q, dim }) => builders::bar_skeleton(*q, *dim),
            SpaceDocument::Builtin(Builtin::Sphere { n }) => builders::sphere(*n),
            SpaceDocument::Builtin(Builtin::Circle { d }) => builders::circle(*d),
            SpaceDocument::Complex { vertices, facets } => {
                builders::from_simplicial_complex(*vertices, facets)
            }
            SpaceDocument::Raw {
                cap,
                generators,
                faces,
            } => build_raw(*cap, generators, faces),
        }
    }

    /// The raw form of an existing simplicial set.
    pub fn from_set(x: &FiniteSimplicialSet) -> Self {
        let mut generators = vec![Vec::new(); x.cap() + 1];
        let mut faces = BTreeMap::new();
        for (id, g) in x.generators().iter().enumerate() {
            generators[g.dim].push(g.name.clone());
            if g.dim > 0 {
                let list = x
                    .generator_faces(id as u32)
                    .iter()
                    .map(|f| FaceRef {
                        word: f.word.indices(),
                        gen: x.generator(f.gen).name.clone(),
                    })
                    .collect();
                faces.insert(g.name.clone(), list);
            }
        }
        SpaceDocument::Raw {
            cap: x.cap(),
            generators,
            faces,
        }
    }
}

fn build_raw(
    cap: usize,
    generators: &[Vec<String>],
    faces: &BTreeMap<String, Vec<FaceRef>>,
) -> Result<FiniteSimplicialSet> {
    if generators.len() > cap + 1 {
        return Err(Error::InvalidSimplicialSet(format!(
            "generators listed in dimension {} above the cap {cap}",
            generators.len() - 1
        )));
    }
    let mut b = SimplicialSetBuilder::new();
    for (dim, names) in generators.iter().enumerate() {
        for name in names {
            let list: &[FaceRef] = match faces.get(name) {
                Some(l) => l,
                None if dim == 0 => &[],
                None => {
                    return Err(Error::InvalidSimplicialSet(format!("no faces given for {name:?}")))
                }
            };
            let resolved = list
                .iter()
                .map(|f| {
                    let h = b.id(&f.gen).ok_or_else(|| {
                        Error::InvalidSimplicialSet(format!(
                            "face of {name:?} references {:?}, which is not of lower dimension",
                            f.gen
                        ))
                    })?;
                    Ok((h, DegeneracyWord::from_indices(&f.word)?))
                })
                .collect::<Result<Vec<_>>>()?;
            b.simplex(name.clone(), dim, resolved)?;
        }
    }
    for name in faces.keys() {
        if b.id(name).is_none() {
            return Err(Error::InvalidSimplicialSet(format!("faces given for unknown generator {name:?}")));
        }
    }
    b.build()
}

/// One simplicial map `X -> Y` with an `F_p` weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedMapDocument {
    #[serde(default = "one")]
    pub weight: i64,
    pub images: BTreeMap<String, FaceRef>,
}

fn one() -> i64 {
    1
}

/// A linear combination of simplicial maps, or a single map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapDocument {
    Combination { maps: Vec<WeightedMapDocument> },
    Single(WeightedMapDocument),
}

impl MapDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(format!("unrecognised map document: {e}")))
    }

    pub fn build(
        &self,
        source: &Arc<FiniteSimplicialSet>,
        target: &Arc<FiniteSimplicialSet>,
    ) -> Result<Vec<(SimplicialMorphism, i64)>> {
        let maps: Vec<&WeightedMapDocument> = match self {
            MapDocument::Combination { maps } => maps.iter().collect(),
            MapDocument::Single(m) => vec![m],
        };
        maps.into_iter()
            .map(|m| Ok((build_map(m, source, target)?, m.weight)))
            .collect()
    }
}

fn build_map(
    doc: &WeightedMapDocument,
    source: &Arc<FiniteSimplicialSet>,
    target: &Arc<FiniteSimplicialSet>,
) -> Result<SimplicialMorphism> {
    let mut images = Vec::with_capacity(source.generators().len());
    for g in source.generators() {
        let f = doc
            .images
            .get(&g.name)
            .ok_or_else(|| Error::InvalidMorphism(format!("no image given for {:?}", g.name)))?;
        let gen = target
            .lookup(&f.gen)
            .ok_or_else(|| Error::InvalidMorphism(format!("target has no generator {:?}", f.gen)))?;
        images.push(SimplexRef {
            dim: (target.generator(gen).dim + f.word.len()) as u8,
            gen,
            word: DegeneracyWord::from_indices(&f.word)?,
        });
    }
    SimplicialMorphism::new(source.clone(), target.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_and_roundtrip() {
        let doc = SpaceDocument::parse(r#"{"builtin":"bar_skeleton","q":2,"dim":3}"#).unwrap();
        let x = doc.build().unwrap();
        let raw = SpaceDocument::from_set(&x);
        let text = serde_json::to_string(&raw).unwrap();
        let y = SpaceDocument::parse(&text).unwrap().build().unwrap();
        assert_eq!(x.generators(), y.generators());
    }

    #[test]
    fn rejects_bad_faces() {
        let text = r#"{"cap":1,"generators":[["a","b"],["e"]],"faces":{"e":[{"gen":"a"}]}}"#;
        assert!(SpaceDocument::parse(text).unwrap().build().is_err());
        let text = r#"{"cap":1,"generators":[["a","b"],["e"]],"faces":{"e":[{"gen":"b"},{"gen":"a"}]}}"#;
        assert!(SpaceDocument::parse(text).unwrap().build().is_ok());
    }

    #[test]
    fn map_document() {
        let x = Arc::new(builders::circle(2).unwrap());
        let y = Arc::new(builders::circle(1).unwrap());
        let text = r#"{"maps":[
            {"weight":1,"images":{"v0":{"gen":"v0"},"v1":{"gen":"v0"},"e0":{"gen":"e0"},"e1":{"gen":"e0"}}},
            {"weight":2,"images":{"v0":{"gen":"v0"},"v1":{"gen":"v0"},"e0":{"gen":"e0"},"e1":{"gen":"v0","word":[0]}}}
        ]}"#;
        let maps = MapDocument::parse(text).unwrap().build(&x, &y).unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[1].1, 2);
    }
}
