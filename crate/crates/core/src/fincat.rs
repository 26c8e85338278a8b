//! Finite categories given by total composition tables, functors between
//! them and natural transformations between functors.
//!
//! Validation is exhaustive: every composable pair, unit law instance and
//! composable triple is checked, and all violations are reported together.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod catalog;

/// Serialized form of a category.
///
/// Composites involving an identity may be omitted; they are inferred from
/// the unit laws. Every other composable pair must be listed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDescription {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDescription>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<CompositeDescription>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDescription {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `result = g ∘ f`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeDescription {
    pub g: String,
    pub f: String,
    pub result: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitSide {
    /// `id_tgt ∘ f`
    Left,
    /// `f ∘ id_src`
    Right,
}

impl fmt::Display for UnitSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitSide::Left => "left",
            UnitSide::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CategoryViolation {
    DuplicateObject(String),
    DuplicateMorphism(String),
    UnknownObject {
        context: String,
        id: String,
    },
    UnknownMorphism {
        context: String,
        id: String,
    },
    MissingIdentity(String),
    IdentityNotEndomorphism {
        object: String,
        morphism: String,
    },
    NonComposableEntry {
        g: String,
        f: String,
    },
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
    MissingComposite {
        g: String,
        f: String,
    },
    UnitLawViolation {
        f: String,
        side: UnitSide,
        found: String,
    },
    AssociativityViolation {
        h: String,
        g: String,
        f: String,
    },
    SrcTgtMismatch {
        g: String,
        f: String,
        result: String,
    },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CategoryViolation::*;
        match self {
            DuplicateObject(x) => write!(out, "duplicate object id {x:?}"),
            DuplicateMorphism(m) => write!(out, "duplicate morphism id {m:?}"),
            UnknownObject { context, id } => write!(out, "unknown object {id:?} in {context}"),
            UnknownMorphism { context, id } => write!(out, "unknown morphism {id:?} in {context}"),
            MissingIdentity(x) => write!(out, "object {x:?} has no identity"),
            IdentityNotEndomorphism { object, morphism } => {
                write!(
                    out,
                    "identity {morphism:?} of {object:?} is not an endomorphism of it"
                )
            }
            NonComposableEntry { g, f } => {
                write!(out, "composite {g} ∘ {f} listed but src({g}) ≠ tgt({f})")
            }
            ConflictingComposite {
                g,
                f,
                first,
                second,
            } => {
                write!(
                    out,
                    "composite {g} ∘ {f} listed twice ({first} and {second})"
                )
            }
            MissingComposite { g, f } => write!(out, "missing composite {g} ∘ {f}"),
            UnitLawViolation { f, side, found } => {
                write!(out, "{side} unit law fails for {f}: composite is {found}")
            }
            AssociativityViolation { h, g, f } => {
                write!(out, "({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})")
            }
            SrcTgtMismatch { g, f, result } => {
                write!(
                    out,
                    "composite {g} ∘ {f} = {result} has the wrong source or target"
                )
            }
        }
    }
}

fn join_lines<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| format!("  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("invalid category ({} violation(s)):\n{}", .violations.len(), join_lines(.violations))]
pub struct CategoryError {
    pub violations: Vec<CategoryViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A validated finite category. Objects and morphisms are addressed by
/// their position in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    /// `table[g * m + f] = g ∘ f` when composable.
    table: Vec<Option<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

/// Checks a category description against the category axioms.
pub fn validate_category(raw: &CategoryDescription) -> Result<FinCategory, CategoryError> {
    FinCategory::from_description(raw)
}

impl FinCategory {
    pub fn from_description(raw: &CategoryDescription) -> Result<Self, CategoryError> {
        let mut v = Vec::new();

        let mut object_index = HashMap::new();
        for (k, x) in raw.objects.iter().enumerate() {
            if object_index.insert(x.clone(), k).is_some() {
                v.push(CategoryViolation::DuplicateObject(x.clone()));
            }
        }
        let mut morphisms = Vec::new();
        let mut morphism_index = HashMap::new();
        for m in &raw.morphisms {
            let ctx = || format!("morphism {:?}", m.id);
            let src = object_index.get(&m.src).copied();
            let tgt = object_index.get(&m.tgt).copied();
            if src.is_none() {
                v.push(CategoryViolation::UnknownObject {
                    context: ctx(),
                    id: m.src.clone(),
                });
            }
            if tgt.is_none() {
                v.push(CategoryViolation::UnknownObject {
                    context: ctx(),
                    id: m.tgt.clone(),
                });
            }
            if morphism_index.contains_key(&m.id) {
                v.push(CategoryViolation::DuplicateMorphism(m.id.clone()));
                continue;
            }
            if let (Some(src), Some(tgt)) = (src, tgt) {
                morphism_index.insert(m.id.clone(), morphisms.len());
                morphisms.push(Morphism {
                    id: m.id.clone(),
                    src,
                    tgt,
                });
            }
        }

        let mut identity = vec![usize::MAX; raw.objects.len()];
        for (x, m) in &raw.identities {
            let ctx = || format!("identities[{x:?}]");
            let Some(&xi) = object_index.get(x) else {
                v.push(CategoryViolation::UnknownObject {
                    context: ctx(),
                    id: x.clone(),
                });
                continue;
            };
            let Some(&mi) = morphism_index.get(m) else {
                v.push(CategoryViolation::UnknownMorphism {
                    context: ctx(),
                    id: m.clone(),
                });
                continue;
            };
            if morphisms[mi].src != xi || morphisms[mi].tgt != xi {
                v.push(CategoryViolation::IdentityNotEndomorphism {
                    object: x.clone(),
                    morphism: m.clone(),
                });
            }
            identity[xi] = mi;
        }
        for (k, x) in raw.objects.iter().enumerate() {
            if identity[k] == usize::MAX && !raw.identities.contains_key(x) {
                v.push(CategoryViolation::MissingIdentity(x.clone()));
            }
        }

        let n = morphisms.len();
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for c in &raw.compose {
            let ctx = || format!("composite {} ∘ {}", c.g, c.f);
            let look = |id: &String, v: &mut Vec<CategoryViolation>| {
                let r = morphism_index.get(id).copied();
                if r.is_none() {
                    v.push(CategoryViolation::UnknownMorphism {
                        context: ctx(),
                        id: id.clone(),
                    });
                }
                r
            };
            let (g, f, r) = (
                look(&c.g, &mut v),
                look(&c.f, &mut v),
                look(&c.result, &mut v),
            );
            let (Some(g), Some(f), Some(r)) = (g, f, r) else {
                continue;
            };
            if morphisms[g].src != morphisms[f].tgt {
                v.push(CategoryViolation::NonComposableEntry {
                    g: c.g.clone(),
                    f: c.f.clone(),
                });
                continue;
            }
            match table[g * n + f] {
                Some(prev) if prev != r => v.push(CategoryViolation::ConflictingComposite {
                    g: c.g.clone(),
                    f: c.f.clone(),
                    first: morphisms[prev].id.clone(),
                    second: c.result.clone(),
                }),
                _ => table[g * n + f] = Some(r),
            }
        }
        if !v.is_empty() {
            return Err(CategoryError { violations: v });
        }

        // Unit laws; omitted identity composites are inferred.
        for (f, m) in morphisms.iter().enumerate() {
            for (side, id) in [
                (UnitSide::Right, identity[m.src]),
                (UnitSide::Left, identity[m.tgt]),
            ] {
                let slot = match side {
                    UnitSide::Right => f * n + id,
                    UnitSide::Left => id * n + f,
                };
                match table[slot] {
                    None => table[slot] = Some(f),
                    Some(r) if r != f => v.push(CategoryViolation::UnitLawViolation {
                        f: m.id.clone(),
                        side,
                        found: morphisms[r].id.clone(),
                    }),
                    Some(_) => {}
                }
            }
        }

        let name = |k: usize| morphisms[k].id.clone();
        for g in 0..n {
            for f in 0..n {
                if morphisms[g].src != morphisms[f].tgt {
                    continue;
                }
                match table[g * n + f] {
                    None => v.push(CategoryViolation::MissingComposite {
                        g: name(g),
                        f: name(f),
                    }),
                    Some(r) => {
                        if morphisms[r].src != morphisms[f].src
                            || morphisms[r].tgt != morphisms[g].tgt
                        {
                            v.push(CategoryViolation::SrcTgtMismatch {
                                g: name(g),
                                f: name(f),
                                result: name(r),
                            });
                        }
                    }
                }
            }
        }
        for h in 0..n {
            for g in (0..n).filter(|&g| morphisms[h].src == morphisms[g].tgt) {
                for f in (0..n).filter(|&f| morphisms[g].src == morphisms[f].tgt) {
                    let left =
                        table[g * n + f].and_then(|gf| table.get(h * n + gf).copied().flatten());
                    let right =
                        table[h * n + g].and_then(|hg| table.get(hg * n + f).copied().flatten());
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            v.push(CategoryViolation::AssociativityViolation {
                                h: name(h),
                                g: name(g),
                                f: name(f),
                            });
                        }
                    }
                }
            }
        }
        if !v.is_empty() {
            return Err(CategoryError { violations: v });
        }
        Ok(Self {
            objects: raw.objects.clone(),
            morphisms,
            identity,
            table,
            object_index,
            morphism_index,
        })
    }

    pub fn to_description(&self) -> CategoryDescription {
        let mut compose = Vec::new();
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                if let Some(r) = self.compose(g, f) {
                    if self.is_identity(g) || self.is_identity(f) {
                        continue;
                    }
                    compose.push(CompositeDescription {
                        g: self.morphisms[g].id.clone(),
                        f: self.morphisms[f].id.clone(),
                        result: self.morphisms[r].id.clone(),
                    });
                }
            }
        }
        CategoryDescription {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismDescription {
                    id: m.id.clone(),
                    src: self.objects[m.src].clone(),
                    tgt: self.objects[m.tgt].clone(),
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .enumerate()
                .map(|(k, x)| (x.clone(), self.morphisms[self.identity[k]].id.clone()))
                .collect(),
            compose,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<usize> {
        self.morphism_index.get(name).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.morphisms[f].src] == f
    }

    /// `g ∘ f`, defined iff `src(g) = tgt(f)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.morphisms.len() + f]
    }

    /// Morphisms with the given source, in declaration order.
    pub fn out_morphisms(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| self.morphisms[f].src == x)
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].src == x && self.morphisms[f].tgt == y)
            .collect()
    }

    pub fn composite_count(&self) -> usize {
        self.table.iter().filter(|e| e.is_some()).count()
    }

    /// Independent re-check of associativity over every composable triple.
    pub fn brute_force_associative(&self) -> bool {
        let n = self.morphisms.len();
        (0..n).all(|h| {
            (0..n).all(|g| {
                (0..n).all(|f| match (self.compose(h, g), self.compose(g, f)) {
                    (Some(hg), Some(gf)) => self.compose(hg, f) == self.compose(h, gf),
                    _ => true,
                })
            })
        })
    }
}

/// Serialized functor: object and morphism maps by id. Identities may be
/// omitted from `morphisms`; they map to the identity of the image object.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDescription {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FunctorViolation {
    UnmappedObject(String),
    UnmappedMorphism(String),
    UnknownTargetObject {
        source: String,
        target: String,
    },
    UnknownTargetMorphism {
        source: String,
        target: String,
    },
    UnknownSourceObject(String),
    UnknownSourceMorphism(String),
    SourceNotPreserved(String),
    TargetNotPreserved(String),
    IdentityNotPreserved(String),
    CompositePreservationViolation {
        g: String,
        f: String,
        image_of_composite: String,
        composite_of_images: String,
    },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorViolation::*;
        match self {
            UnmappedObject(x) => write!(out, "object {x:?} is not mapped"),
            UnmappedMorphism(f) => write!(out, "morphism {f:?} is not mapped"),
            UnknownTargetObject { source, target } => {
                write!(out, "{source:?} maps to unknown object {target:?}")
            }
            UnknownTargetMorphism { source, target } => {
                write!(out, "{source:?} maps to unknown morphism {target:?}")
            }
            UnknownSourceObject(x) => write!(out, "map mentions unknown source object {x:?}"),
            UnknownSourceMorphism(f) => write!(out, "map mentions unknown source morphism {f:?}"),
            SourceNotPreserved(f) => write!(out, "image of {f:?} has the wrong source"),
            TargetNotPreserved(f) => write!(out, "image of {f:?} has the wrong target"),
            IdentityNotPreserved(x) => write!(out, "identity of {x:?} is not sent to an identity"),
            CompositePreservationViolation {
                g,
                f,
                image_of_composite,
                composite_of_images,
            } => write!(
                out,
                "F({g} ∘ {f}) = {image_of_composite} but F({g}) ∘ F({f}) = {composite_of_images}"
            ),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FunctorError {
    #[error("invalid functor ({} violation(s)):\n{}", .0.len(), join_lines(.0))]
    Invalid(Vec<FunctorViolation>),
    #[error("cannot compose: target of the inner functor differs from source of the outer one")]
    BoundaryMismatch,
}

/// A validated functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

pub fn validate_functor(
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    raw: &FunctorDescription,
) -> Result<Functor, FunctorError> {
    Functor::from_description(source, target, raw)
}

impl Functor {
    pub fn from_description(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        raw: &FunctorDescription,
    ) -> Result<Self, FunctorError> {
        let mut v = Vec::new();
        for x in raw.objects.keys() {
            if source.object_id(x).is_none() {
                v.push(FunctorViolation::UnknownSourceObject(x.clone()));
            }
        }
        for f in raw.morphisms.keys() {
            if source.morphism_id(f).is_none() {
                v.push(FunctorViolation::UnknownSourceMorphism(f.clone()));
            }
        }
        let mut obj_map = Vec::with_capacity(source.object_count());
        for x in source.objects() {
            match raw.objects.get(x) {
                None => v.push(FunctorViolation::UnmappedObject(x.clone())),
                Some(y) => match target.object_id(y) {
                    None => v.push(FunctorViolation::UnknownTargetObject {
                        source: x.clone(),
                        target: y.clone(),
                    }),
                    Some(yi) => obj_map.push(yi),
                },
            }
        }
        if !v.is_empty() {
            return Err(FunctorError::Invalid(v));
        }
        let mut mor_map = Vec::with_capacity(source.morphism_count());
        for (fi, m) in source.morphisms().iter().enumerate() {
            match raw.morphisms.get(&m.id) {
                None if source.is_identity(fi) => mor_map.push(target.identity(obj_map[m.src])),
                None => v.push(FunctorViolation::UnmappedMorphism(m.id.clone())),
                Some(g) => match target.morphism_id(g) {
                    None => v.push(FunctorViolation::UnknownTargetMorphism {
                        source: m.id.clone(),
                        target: g.clone(),
                    }),
                    Some(gi) => mor_map.push(gi),
                },
            }
        }
        if !v.is_empty() {
            return Err(FunctorError::Invalid(v));
        }
        Self::from_maps(source, target, obj_map, mor_map)
    }

    /// Builds a functor from index maps, checking every functor law.
    pub fn from_maps(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self, FunctorError> {
        let mut v = Vec::new();
        if obj_map.len() != source.object_count()
            || obj_map.iter().any(|&y| y >= target.object_count())
        {
            v.push(FunctorViolation::UnmappedObject(
                "<object map has wrong shape>".into(),
            ));
        }
        if mor_map.len() != source.morphism_count()
            || mor_map.iter().any(|&g| g >= target.morphism_count())
        {
            v.push(FunctorViolation::UnmappedMorphism(
                "<morphism map has wrong shape>".into(),
            ));
        }
        if !v.is_empty() {
            return Err(FunctorError::Invalid(v));
        }
        for (fi, m) in source.morphisms().iter().enumerate() {
            let img = mor_map[fi];
            if target.src(img) != obj_map[m.src] {
                v.push(FunctorViolation::SourceNotPreserved(m.id.clone()));
            }
            if target.tgt(img) != obj_map[m.tgt] {
                v.push(FunctorViolation::TargetNotPreserved(m.id.clone()));
            }
        }
        for x in 0..source.object_count() {
            if mor_map[source.identity(x)] != target.identity(obj_map[x]) {
                v.push(FunctorViolation::IdentityNotPreserved(
                    source.object_name(x).to_string(),
                ));
            }
        }
        if v.is_empty() {
            let n = source.morphism_count();
            for g in 0..n {
                for f in 0..n {
                    let Some(gf) = source.compose(g, f) else {
                        continue;
                    };
                    let lhs = mor_map[gf];
                    if let Some(rhs) = target.compose(mor_map[g], mor_map[f]) {
                        if lhs != rhs {
                            v.push(FunctorViolation::CompositePreservationViolation {
                                g: source.morphism_name(g).into(),
                                f: source.morphism_name(f).into(),
                                image_of_composite: target.morphism_name(lhs).into(),
                                composite_of_images: target.morphism_name(rhs).into(),
                            });
                        }
                    }
                }
            }
        }
        if !v.is_empty() {
            return Err(FunctorError::Invalid(v));
        }
        Ok(Self {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let obj_map = (0..c.object_count()).collect();
        let mor_map = (0..c.morphism_count()).collect();
        Self {
            source: c.clone(),
            target: c,
            obj_map,
            mor_map,
        }
    }

    /// The functor sending everything to `object` and its identity.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, object: usize) -> Self {
        let id = target.identity(object);
        let obj_map = vec![object; source.object_count()];
        let mor_map = vec![id; source.morphism_count()];
        Self {
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn map_object(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn map_morphism(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn to_description(&self) -> FunctorDescription {
        FunctorDescription {
            objects: (0..self.source.object_count())
                .map(|x| {
                    (
                        self.source.object_name(x).into(),
                        self.target.object_name(self.obj_map[x]).into(),
                    )
                })
                .collect(),
            morphisms: (0..self.source.morphism_count())
                .map(|f| {
                    (
                        self.source.morphism_name(f).into(),
                        self.target.morphism_name(self.mor_map[f]).into(),
                    )
                })
                .collect(),
        }
    }
}

fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `g ∘ f` as functors.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor, FunctorError> {
    if !same_category(&f.target, &g.source) {
        return Err(FunctorError::BoundaryMismatch);
    }
    let obj_map = f.obj_map.iter().map(|&y| g.obj_map[y]).collect();
    let mor_map = f.mor_map.iter().map(|&m| g.mor_map[m]).collect();
    Functor::from_maps(f.source.clone(), g.target.clone(), obj_map, mor_map)
}

/// Serialized natural transformation: one component per source object.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatTransfDescription {
    pub components: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NatTransfViolation {
    FunctorsNotParallel,
    MissingComponent(String),
    UnknownComponent {
        object: String,
        morphism: String,
    },
    UnknownObject(String),
    ComponentBoundary {
        object: String,
        morphism: String,
    },
    NaturalityViolation {
        f: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for NatTransfViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NatTransfViolation::*;
        match self {
            FunctorsNotParallel => write!(out, "functors do not share source and target"),
            MissingComponent(x) => write!(out, "no component at {x:?}"),
            UnknownComponent { object, morphism } => write!(
                out,
                "component at {object:?} is unknown morphism {morphism:?}"
            ),
            UnknownObject(x) => write!(out, "component given at unknown object {x:?}"),
            ComponentBoundary { object, morphism } => {
                write!(
                    out,
                    "component {morphism:?} at {object:?} does not run F({object}) → G({object})"
                )
            }
            NaturalityViolation { f, left, right } => {
                write!(
                    out,
                    "naturality fails at {f:?}: G(f) ∘ α = {left} but α ∘ F(f) = {right}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("invalid natural transformation ({} violation(s)):\n{}", .violations.len(), join_lines(.violations))]
pub struct NatTransfError {
    pub violations: Vec<NatTransfViolation>,
}

/// A validated natural transformation `from ⇒ to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransf {
    from: Functor,
    to: Functor,
    components: Vec<usize>,
}

pub fn validate_nat_transf(
    from: Functor,
    to: Functor,
    raw: &NatTransfDescription,
) -> Result<NatTransf, NatTransfError> {
    NatTransf::from_description(from, to, raw)
}

impl NatTransf {
    pub fn from_description(
        from: Functor,
        to: Functor,
        raw: &NatTransfDescription,
    ) -> Result<Self, NatTransfError> {
        let c = from.source.clone();
        let d = from.target.clone();
        let mut v = Vec::new();
        for x in raw.components.keys() {
            if c.object_id(x).is_none() {
                v.push(NatTransfViolation::UnknownObject(x.clone()));
            }
        }
        let mut comps = Vec::with_capacity(c.object_count());
        for x in c.objects() {
            match raw.components.get(x) {
                None => v.push(NatTransfViolation::MissingComponent(x.clone())),
                Some(m) => match d.morphism_id(m) {
                    None => v.push(NatTransfViolation::UnknownComponent {
                        object: x.clone(),
                        morphism: m.clone(),
                    }),
                    Some(mi) => comps.push(mi),
                },
            }
        }
        if !v.is_empty() {
            return Err(NatTransfError { violations: v });
        }
        Self::from_components(from, to, comps)
    }

    pub fn from_components(
        from: Functor,
        to: Functor,
        components: Vec<usize>,
    ) -> Result<Self, NatTransfError> {
        if !same_category(&from.source, &to.source) || !same_category(&from.target, &to.target) {
            return Err(NatTransfError {
                violations: vec![NatTransfViolation::FunctorsNotParallel],
            });
        }
        let c = &from.source;
        let d = &from.target;
        if components.len() != c.object_count()
            || components.iter().any(|&m| m >= d.morphism_count())
        {
            return Err(NatTransfError {
                violations: vec![NatTransfViolation::MissingComponent(
                    "<component list has wrong shape>".into(),
                )],
            });
        }
        let mut v = Vec::new();
        for x in 0..c.object_count() {
            let a = components[x];
            if d.src(a) != from.map_object(x) || d.tgt(a) != to.map_object(x) {
                v.push(NatTransfViolation::ComponentBoundary {
                    object: c.object_name(x).into(),
                    morphism: d.morphism_name(a).into(),
                });
            }
        }
        if v.is_empty() {
            for (fi, m) in c.morphisms().iter().enumerate() {
                let left = d.compose(to.map_morphism(fi), components[m.src]);
                let right = d.compose(components[m.tgt], from.map_morphism(fi));
                if left != right {
                    let name = |r: Option<usize>| {
                        r.map_or("<undefined>".to_string(), |k| {
                            d.morphism_name(k).to_string()
                        })
                    };
                    v.push(NatTransfViolation::NaturalityViolation {
                        f: m.id.clone(),
                        left: name(left),
                        right: name(right),
                    });
                }
            }
        }
        if !v.is_empty() {
            return Err(NatTransfError { violations: v });
        }
        Ok(Self {
            from,
            to,
            components,
        })
    }

    pub fn identity(f: Functor) -> Self {
        let components = (0..f.source.object_count())
            .map(|x| f.target.identity(f.map_object(x)))
            .collect();
        Self {
            from: f.clone(),
            to: f,
            components,
        }
    }

    /// `β · α : F ⇒ H` for `α : F ⇒ G` and `β : G ⇒ H`.
    pub fn vertical_compose(
        beta: &NatTransf,
        alpha: &NatTransf,
    ) -> Result<NatTransf, NatTransfError> {
        if alpha.to != beta.from {
            return Err(NatTransfError {
                violations: vec![NatTransfViolation::FunctorsNotParallel],
            });
        }
        let d = &alpha.from.target;
        let components = (0..alpha.components.len())
            .map(|x| {
                d.compose(beta.components[x], alpha.components[x])
                    .expect("components are composable")
            })
            .collect();
        Self::from_components(alpha.from.clone(), beta.to.clone(), components)
    }

    pub fn from(&self) -> &Functor {
        &self.from
    }

    pub fn to(&self) -> &Functor {
        &self.to
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn desc(json: &str) -> CategoryDescription {
        serde_json::from_str(json).unwrap()
    }

    const WALKING_ARROW: &str = r#"{
        "objects": ["x", "y"],
        "morphisms": [{"id": "id_x", "src": "x", "tgt": "x"},
                      {"id": "id_y", "src": "y", "tgt": "y"},
                      {"id": "f", "src": "x", "tgt": "y"}],
        "identities": {"x": "id_x", "y": "id_y"},
        "compose": []
    }"#;

    #[test]
    fn walking_arrow_validates() {
        let c = validate_category(&desc(WALKING_ARROW)).unwrap();
        assert_eq!(c.morphism_count(), 3);
        // id_x∘id_x, id_y∘id_y, f∘id_x, id_y∘f
        assert_eq!(c.composite_count(), 4);
        assert!(c.brute_force_associative());
    }

    #[test]
    fn altered_unit_composite_is_rejected() {
        let mut d = desc(WALKING_ARROW);
        d.compose.push(CompositeDescription {
            g: "f".into(),
            f: "id_x".into(),
            result: "id_x".into(),
        });
        let err = validate_category(&d).unwrap_err();
        assert!(err
            .violations
            .iter()
            .any(|v| matches!(v, CategoryViolation::UnitLawViolation { f, side: UnitSide::Right, .. } if f == "f")));
    }

    #[test]
    fn idempotent_monoid_and_missing_composite() {
        let ok = r#"{"objects": ["*"],
            "morphisms": [{"id": "e", "src": "*", "tgt": "*"}, {"id": "g", "src": "*", "tgt": "*"}],
            "identities": {"*": "e"},
            "compose": [{"g": "g", "f": "g", "result": "g"}]}"#;
        assert!(validate_category(&desc(ok)).is_ok());
        let mut d = desc(ok);
        d.compose.clear();
        let err = validate_category(&d).unwrap_err();
        assert_eq!(
            err.violations,
            vec![CategoryViolation::MissingComposite {
                g: "g".into(),
                f: "g".into()
            }]
        );
    }

    #[test]
    fn collects_every_violation() {
        let bad = r#"{"objects": ["a", "a", "b"],
            "morphisms": [{"id": "id_a", "src": "a", "tgt": "a"}, {"id": "k", "src": "q", "tgt": "b"}],
            "identities": {"a": "id_a"},
            "compose": []}"#;
        let err = validate_category(&desc(bad)).unwrap_err();
        assert!(err
            .violations
            .contains(&CategoryViolation::DuplicateObject("a".into())));
        assert!(err
            .violations
            .contains(&CategoryViolation::MissingIdentity("b".into())));
        assert!(err
            .violations
            .iter()
            .any(|v| matches!(v, CategoryViolation::UnknownObject { id, .. } if id == "q")));
    }

    #[test]
    fn associativity_failure_is_reported() {
        // (a∘a)∘b = b∘b = a but a∘(a∘b) = a∘a = b.
        let bad = r#"{"objects": ["*"],
            "morphisms": [{"id": "e", "src": "*", "tgt": "*"}, {"id": "a", "src": "*", "tgt": "*"},
                          {"id": "b", "src": "*", "tgt": "*"}],
            "identities": {"*": "e"},
            "compose": [{"g": "a", "f": "a", "result": "b"}, {"g": "a", "f": "b", "result": "a"},
                        {"g": "b", "f": "a", "result": "a"}, {"g": "b", "f": "b", "result": "a"}]}"#;
        let err = validate_category(&desc(bad)).unwrap_err();
        assert!(err
            .violations
            .iter()
            .all(|v| matches!(v, CategoryViolation::AssociativityViolation { .. })));
        assert!(!err.violations.is_empty());
    }

    #[test]
    fn non_composable_entry() {
        let mut d = desc(WALKING_ARROW);
        d.compose.push(CompositeDescription {
            g: "f".into(),
            f: "f".into(),
            result: "f".into(),
        });
        let err = validate_category(&d).unwrap_err();
        assert_eq!(
            err.violations,
            vec![CategoryViolation::NonComposableEntry {
                g: "f".into(),
                f: "f".into()
            }]
        );
    }

    #[test]
    fn description_round_trip() {
        for c in [
            walking_arrow(),
            commutative_square(),
            cyclic_group(3),
            discrete(2),
        ] {
            let back = validate_category(&c.to_description()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn identity_functor_and_transformation() {
        let c = Arc::new(walking_arrow());
        let id = Functor::identity(c.clone());
        let raw = id.to_description();
        assert_eq!(validate_functor(c.clone(), c.clone(), &raw).unwrap(), id);
        let nt = NatTransf::identity(id.clone());
        let raw = NatTransfDescription {
            components: [
                ("x".to_string(), "id_x".to_string()),
                ("y".into(), "id_y".into()),
            ]
            .into(),
        };
        assert_eq!(validate_nat_transf(id.clone(), id, &raw).unwrap(), nt);
    }

    #[test]
    fn square_transformations() {
        let arrow = Arc::new(walking_arrow());
        let sq = Arc::new(commutative_square());
        let (top, bottom) = square_path_functors(&arrow, &sq);
        let good = NatTransfDescription {
            components: [("x".into(), "c".into()), ("y".into(), "b".into())].into(),
        };
        assert!(validate_nat_transf(top.clone(), bottom.clone(), &good).is_ok());
        // a: 0→1 does not reach G(x) = 2.
        let wrong = NatTransfDescription {
            components: [("x".into(), "a".into()), ("y".into(), "b".into())].into(),
        };
        let err = validate_nat_transf(top, bottom, &wrong).unwrap_err();
        assert_eq!(
            err.violations,
            vec![NatTransfViolation::ComponentBoundary {
                object: "x".into(),
                morphism: "a".into()
            }]
        );
    }

    #[test]
    fn naturality_violation_on_parallel_pair() {
        // The square is thin, so naturality can only fail where parallel arrows differ.
        let par = Arc::new(parallel_pair());
        let id = Functor::identity(par.clone());
        let flip = Functor::from_description(
            par.clone(),
            par.clone(),
            &FunctorDescription {
                objects: [("s".into(), "s".into()), ("t".into(), "t".into())].into(),
                morphisms: [("u".into(), "v".into()), ("v".into(), "u".into())].into(),
            },
        )
        .unwrap();
        let ids = NatTransfDescription {
            components: [("s".into(), "id_s".into()), ("t".into(), "id_t".into())].into(),
        };
        let err = validate_nat_transf(id, flip, &ids).unwrap_err();
        assert_eq!(
            err.violations[0],
            NatTransfViolation::NaturalityViolation {
                f: "u".into(),
                left: "v".into(),
                right: "u".into()
            }
        );
    }

    #[test]
    fn functor_composition_laws() {
        let arrow = Arc::new(walking_arrow());
        let sq = Arc::new(commutative_square());
        let (top, _) = square_path_functors(&arrow, &sq);
        let id_a = Functor::identity(arrow.clone());
        let id_s = Functor::identity(sq.clone());
        assert_eq!(compose_functors(&top, &id_a).unwrap(), top);
        assert_eq!(compose_functors(&id_s, &top).unwrap(), top);
        let k = Functor::constant(sq.clone(), arrow.clone(), 1);
        let composite = compose_functors(&k, &top).unwrap();
        assert_eq!(
            composite,
            Functor::constant(arrow.clone(), arrow.clone(), 1)
        );
        assert_eq!(
            compose_functors(&top, &top),
            Err(FunctorError::BoundaryMismatch)
        );
    }

    #[test]
    fn functor_violations() {
        let arrow = Arc::new(walking_arrow());
        let sq = Arc::new(commutative_square());
        let bad = FunctorDescription {
            objects: [("x".into(), "0".into()), ("y".into(), "1".into())].into(),
            morphisms: [("f".into(), "c".into())].into(),
        };
        let err = validate_functor(arrow.clone(), sq.clone(), &bad).unwrap_err();
        assert_eq!(
            err,
            FunctorError::Invalid(vec![FunctorViolation::TargetNotPreserved("f".into())])
        );

        let z2 = Arc::new(cyclic_group(2));
        let z3 = Arc::new(cyclic_group(3));
        let not_hom = FunctorDescription {
            objects: [("*".into(), "*".into())].into(),
            morphisms: [("g".into(), "g".into())].into(),
        };
        let err = validate_functor(z2, z3, &not_hom).unwrap_err();
        assert!(
            matches!(&err, FunctorError::Invalid(v) if matches!(v[0], FunctorViolation::CompositePreservationViolation { .. }))
        );
    }

    #[test]
    fn vertical_composition() {
        let arrow = Arc::new(walking_arrow());
        let sq = Arc::new(commutative_square());
        let (top, bottom) = square_path_functors(&arrow, &sq);
        let alpha = square_transformation(&top, &bottom);
        let id = NatTransf::identity(bottom.clone());
        let comp = NatTransf::vertical_compose(&id, &alpha).unwrap();
        assert_eq!(comp, alpha);
    }
}
