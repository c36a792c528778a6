//! Explicitly presented finite categories, functors and natural
//! transformations, together with the exhaustive validation and enumeration
//! machinery everything else is built on.
//!
//! A [`FiniteCategory`] stores its objects and morphisms as ordered lists and
//! its composition as a total table over composable pairs. All laws are
//! checked by exhaustive scan at construction time; after validation every
//! value is immutable and safe to share.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const NONE: u32 = u32::MAX;

/// A morphism record: a globally unique name plus explicit endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

impl Morphism {
    pub fn new(name: impl Into<String>, dom: usize, cod: usize) -> Self {
        Morphism { name: name.into(), dom, cod }
    }
}

/// One violated category law, with the offending morphism names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryViolation {
    #[error("composition entry ({g}, {f}) mistyped: {detail}")]
    TypeMismatch { g: String, f: String, detail: String },
    #[error("object {object} has no valid identity morphism")]
    MissingIdentity { object: String },
    #[error("identity law fails at {f} ({side} unit)")]
    IdentityLawFailure { f: String, side: String },
    #[error("associativity fails on triple ({h}, {g}, {f})")]
    AssociativityFailure { h: String, g: String, f: String },
    #[error("no composite declared for composable pair ({g}, {f})")]
    MissingComposite { g: String, f: String },
    #[error("{0}")]
    Malformed(String),
}

/// Every violated law found during validation, in deterministic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<CategoryViolation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Errors from operations on already-validated data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("functor source/target categories do not match")]
    SourceTargetMismatch,
    #[error("search space of size {bound} exceeds cap {cap}")]
    SearchSpaceExceeded { bound: u128, cap: u128 },
    #[error("the given data is not an equivalence")]
    NotAnEquivalence,
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
}

/// A finite category: ordered object and morphism lists, per-object
/// identities, and a total composition table over composable pairs.
///
/// Composition is stored in diagrammatic-pair form: `compose(g, f)` means
/// "g after f" and is defined exactly when `cod(f) = dom(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// Dense table, row `g`, column `f`; `NONE` where not composable.
    table: Vec<u32>,
    /// Two-sided inverse of each morphism, if any.
    inverses: Vec<u32>,
}

impl FiniteCategory {
    /// Validates raw category data, returning a report that lists every
    /// violated law. Composites with an identity factor may be omitted and
    /// are filled in from the identity laws.
    pub fn validate(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self, ValidationReport> {
        let mut violations = Vec::new();
        let n_obj = objects.len();
        let n_mor = morphisms.len();

        for m in &morphisms {
            if m.dom >= n_obj || m.cod >= n_obj {
                violations.push(CategoryViolation::Malformed(format!(
                    "morphism {} has out-of-range endpoints",
                    m.name
                )));
            }
        }
        if identities.len() != n_obj {
            violations.push(CategoryViolation::Malformed(format!(
                "expected {} identity entries, got {}",
                n_obj,
                identities.len()
            )));
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= n_mor || morphisms[i].dom != x || morphisms[i].cod != x {
                violations.push(CategoryViolation::MissingIdentity {
                    object: objects[x].clone(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        let mut table = vec![NONE; n_mor * n_mor];
        let name = |i: usize| morphisms[i].name.clone();

        for &(g, f, gf) in composites {
            if g >= n_mor || f >= n_mor || gf >= n_mor {
                violations.push(CategoryViolation::Malformed(format!(
                    "composition entry ({g}, {f}) = {gf} out of range"
                )));
                continue;
            }
            if morphisms[f].cod != morphisms[g].dom {
                violations.push(CategoryViolation::TypeMismatch {
                    g: name(g),
                    f: name(f),
                    detail: format!(
                        "cod({}) = {} but dom({}) = {}",
                        name(f),
                        objects[morphisms[f].cod],
                        name(g),
                        objects[morphisms[g].dom]
                    ),
                });
                continue;
            }
            if morphisms[gf].dom != morphisms[f].dom || morphisms[gf].cod != morphisms[g].cod {
                violations.push(CategoryViolation::TypeMismatch {
                    g: name(g),
                    f: name(f),
                    detail: format!("declared composite {} lands in the wrong hom-set", name(gf)),
                });
                continue;
            }
            let slot = &mut table[g * n_mor + f];
            if *slot != NONE && *slot != gf as u32 {
                violations.push(CategoryViolation::Malformed(format!(
                    "conflicting composites declared for ({}, {})",
                    name(g),
                    name(f)
                )));
            }
            *slot = gf as u32;
        }

        // Identity laws: check declared entries, fill omitted ones.
        for f in 0..n_mor {
            let il = identities[morphisms[f].cod];
            let ir = identities[morphisms[f].dom];
            for (u, comp, side) in [(il, il * n_mor + f, "left"), (ir, f * n_mor + ir, "right")] {
                let _ = u;
                let slot = &mut table[comp];
                if *slot == NONE {
                    *slot = f as u32;
                } else if *slot != f as u32 {
                    violations.push(CategoryViolation::IdentityLawFailure {
                        f: name(f),
                        side: side.into(),
                    });
                }
            }
        }

        // Totality over composable pairs.
        for g in 0..n_mor {
            for f in 0..n_mor {
                if morphisms[f].cod == morphisms[g].dom && table[g * n_mor + f] == NONE {
                    violations.push(CategoryViolation::MissingComposite { g: name(g), f: name(f) });
                }
            }
        }

        if violations.is_empty() {
            // Associativity, exhaustively over composable triples.
            for h in 0..n_mor {
                for g in 0..n_mor {
                    if morphisms[g].cod != morphisms[h].dom {
                        continue;
                    }
                    let hg = table[h * n_mor + g] as usize;
                    for f in 0..n_mor {
                        if morphisms[f].cod != morphisms[g].dom {
                            continue;
                        }
                        let gf = table[g * n_mor + f] as usize;
                        if table[h * n_mor + gf] != table[hg * n_mor + f] {
                            violations.push(CategoryViolation::AssociativityFailure {
                                h: name(h),
                                g: name(g),
                                f: name(f),
                            });
                        }
                    }
                }
            }
        }

        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        Ok(Self::from_parts(objects, morphisms, identities, table))
    }

    /// Assembles a category from parts already known to satisfy the laws
    /// (e.g. a completion whose composition is inherited from a validated
    /// base). Only inverse caching happens here.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<u32>,
    ) -> Self {
        let mut cat = FiniteCategory { objects, morphisms, identities, table, inverses: Vec::new() };
        cat.inverses = (0..cat.morphisms.len())
            .map(|f| cat.find_inverse(f).map(|g| g as u32).unwrap_or(NONE))
            .collect();
        cat
    }

    fn find_inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom(m.cod, m.dom).find(|&g| {
            self.compose(g, f) == Some(self.identities[m.dom])
                && self.compose(f, g) == Some(self.identities[m.cod])
        })
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].dom] == f
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// `compose(g, f)` = "g after f"; `None` when not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.table[g * self.morphisms.len() + f];
        (v != NONE).then_some(v as usize)
    }

    /// Composes a chain written in "last applied first" order.
    pub fn compose_chain(&self, chain: &[usize]) -> Option<usize> {
        let (&last, rest) = chain.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.morphisms
            .iter()
            .enumerate()
            .filter(move |(_, m)| m.dom == x && m.cod == y)
            .map(|(i, _)| i)
    }

    pub fn hom_vec(&self, x: usize, y: usize) -> Vec<usize> {
        self.hom(x, y).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let v = self.inverses[f];
        (v != NONE).then_some(v as usize)
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverses[f] != NONE
    }

    /// The opposite category: same identifiers, endpoints swapped,
    /// composition table transposed. An involution on the nose.
    /// Same category with new names; shapes must match.
    pub fn renamed(&self, objects: Vec<String>, morphisms: Vec<Morphism>) -> FiniteCategory {
        assert_eq!(objects.len(), self.objects.len());
        assert_eq!(morphisms.len(), self.morphisms.len());
        for (m, old) in morphisms.iter().zip(&self.morphisms) {
            assert_eq!((m.dom, m.cod), (old.dom, old.cod));
        }
        FiniteCategory {
            objects,
            morphisms,
            identities: self.identities.clone(),
            table: self.table.clone(),
            inverses: self.inverses.clone(),
        }
    }

    pub fn opposite(&self) -> FiniteCategory {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), dom: m.cod, cod: m.dom })
            .collect();
        let mut table = vec![NONE; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        FiniteCategory {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            table,
            inverses: self.inverses.clone(),
        }
    }

    /// Partition of objects under existence of an isomorphism; the canonical
    /// representative of each class is its least object index.
    pub fn iso_classes(&self) -> Partition {
        let mut dsu = Dsu::new(self.objects.len());
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.is_iso(f) {
                dsu.union(m.dom, m.cod);
            }
        }
        dsu.into_partition()
    }

    /// Full subcategory on the given objects (indices in ascending order).
    pub fn full_subcategory(&self, keep: &[usize]) -> (FiniteCategory, Vec<usize>) {
        let obj_new: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut mor_keep = Vec::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if obj_new.contains_key(&m.dom) && obj_new.contains_key(&m.cod) {
                mor_keep.push(f);
            }
        }
        let mor_new: HashMap<usize, usize> =
            mor_keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms: Vec<Morphism> = mor_keep
            .iter()
            .map(|&f| {
                let m = &self.morphisms[f];
                Morphism { name: m.name.clone(), dom: obj_new[&m.dom], cod: obj_new[&m.cod] }
            })
            .collect();
        let identities = keep.iter().map(|&x| mor_new[&self.identities[x]]).collect();
        let n = morphisms.len();
        let mut table = vec![NONE; n * n];
        for (gi, &g) in mor_keep.iter().enumerate() {
            for (fi, &f) in mor_keep.iter().enumerate() {
                if let Some(gf) = self.compose(g, f) {
                    table[gi * n + fi] = mor_new[&gf] as u32;
                }
            }
        }
        let objects = keep.iter().map(|&x| self.objects[x].clone()).collect();
        (FiniteCategory::from_parts(objects, morphisms, identities, table), mor_keep)
    }
}

/// A partition of `0..n` with least-index canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Classes sorted by representative; members ascending.
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn class_of(&self, x: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&x)).expect("element outside partition")
    }

    pub fn representative(&self, x: usize) -> usize {
        self.classes[self.class_of(x)][0]
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the least index as root so representatives are canonical
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..n {
            let r = self.find(x);
            groups.entry(r).or_default().push(x);
        }
        let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_by_key(|c| c[0]);
        Partition { classes }
    }
}

/// A functor presented by explicit object and morphism maps.
///
/// Equality is on-the-nose equality of both maps (and of the endpoint
/// categories); strict triangle identities are checked against this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorData {
    pub source: FiniteCategory,
    pub target: FiniteCategory,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

/// One violated functor law.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorViolation {
    #[error("morphism map sends {f} outside Hom(F dom, F cod)")]
    EndpointMismatch { f: String },
    #[error("identity of {object} is not sent to an identity")]
    IdentityNotPreserved { object: String },
    #[error("composition not preserved on ({g}, {f})")]
    CompositionNotPreserved { g: String, f: String },
    #[error("{0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl fmt::Display for FunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for FunctorReport {}

impl FunctorData {
    /// Validates the functor laws exhaustively.
    pub fn validate(
        source: FiniteCategory,
        target: FiniteCategory,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self, FunctorReport> {
        let mut violations = Vec::new();
        if object_map.len() != source.n_objects() || morphism_map.len() != source.n_morphisms() {
            violations.push(FunctorViolation::Malformed("map length mismatch".into()));
            return Err(FunctorReport { violations });
        }
        if object_map.iter().any(|&x| x >= target.n_objects())
            || morphism_map.iter().any(|&f| f >= target.n_morphisms())
        {
            violations.push(FunctorViolation::Malformed("map value out of range".into()));
            return Err(FunctorReport { violations });
        }
        for (f, m) in source.morphisms().iter().enumerate() {
            let fm = target.morphism(morphism_map[f]);
            if fm.dom != object_map[m.dom] || fm.cod != object_map[m.cod] {
                violations.push(FunctorViolation::EndpointMismatch { f: m.name.clone() });
            }
        }
        for x in 0..source.n_objects() {
            if morphism_map[source.identity(x)] != target.identity(object_map[x]) {
                violations.push(FunctorViolation::IdentityNotPreserved {
                    object: source.object_name(x).to_string(),
                });
            }
        }
        if violations.is_empty() {
            for g in 0..source.n_morphisms() {
                for f in 0..source.n_morphisms() {
                    if let Some(gf) = source.compose(g, f) {
                        if target.compose(morphism_map[g], morphism_map[f]) != Some(morphism_map[gf])
                        {
                            violations.push(FunctorViolation::CompositionNotPreserved {
                                g: source.morphism(g).name.clone(),
                                f: source.morphism(f).name.clone(),
                            });
                        }
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(FunctorReport { violations });
        }
        Ok(FunctorData { source, target, object_map, morphism_map })
    }

    pub fn identity(cat: &FiniteCategory) -> FunctorData {
        FunctorData {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.n_objects()).collect(),
            morphism_map: (0..cat.n_morphisms()).collect(),
        }
    }

    pub fn apply_obj(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn apply_mor(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    /// Whether every hom-map `Hom(x, y) -> Hom(Fx, Fy)` is a bijection.
    pub fn is_fully_faithful(&self) -> bool {
        for x in 0..self.source.n_objects() {
            for y in 0..self.source.n_objects() {
                let hom = self.source.hom_vec(x, y);
                let mut image: Vec<usize> = hom.iter().map(|&f| self.morphism_map[f]).collect();
                image.sort_unstable();
                image.dedup();
                if image.len() != hom.len() {
                    return false;
                }
                let hom_target =
                    self.target.hom_vec(self.object_map[x], self.object_map[y]);
                if image.len() != hom_target.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Preimage of a target morphism under the hom-bijection; requires full
    /// faithfulness on that hom-set.
    pub fn hom_preimage(&self, x: usize, y: usize, target_mor: usize) -> Option<usize> {
        self.source.hom(x, y).find(|&f| self.morphism_map[f] == target_mor)
    }
}

/// Pointwise composition `G ∘ F`.
pub fn compose_functors(g: &FunctorData, f: &FunctorData) -> Result<FunctorData, CatError> {
    if f.target != g.source {
        return Err(CatError::SourceTargetMismatch);
    }
    Ok(FunctorData {
        source: f.source.clone(),
        target: g.target.clone(),
        object_map: f.object_map.iter().map(|&x| g.object_map[x]).collect(),
        morphism_map: f.morphism_map.iter().map(|&m| g.morphism_map[m]).collect(),
    })
}

/// A natural transformation presented by its component family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransData {
    pub source_functor: FunctorData,
    pub target_functor: FunctorData,
    /// Component at each source object, a morphism of the target category.
    pub components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatTransViolation {
    #[error("component at {object} is not a morphism F(x) -> G(x)")]
    ComponentMistyped { object: String },
    #[error("naturality fails at {f}")]
    NaturalityFailure { f: String },
    #[error("{0}")]
    Malformed(String),
}

impl NatTransData {
    pub fn validate(
        source_functor: FunctorData,
        target_functor: FunctorData,
        components: Vec<usize>,
    ) -> Result<Self, Vec<NatTransViolation>> {
        let mut violations = Vec::new();
        if source_functor.source != target_functor.source
            || source_functor.target != target_functor.target
        {
            violations.push(NatTransViolation::Malformed("functors are not parallel".into()));
            return Err(violations);
        }
        let cat = &source_functor.source;
        let tgt = &source_functor.target;
        if components.len() != cat.n_objects() {
            violations.push(NatTransViolation::Malformed("component count mismatch".into()));
            return Err(violations);
        }
        for x in 0..cat.n_objects() {
            let c = tgt.morphism(components[x]);
            if c.dom != source_functor.object_map[x] || c.cod != target_functor.object_map[x] {
                violations.push(NatTransViolation::ComponentMistyped {
                    object: cat.object_name(x).to_string(),
                });
            }
        }
        if violations.is_empty() {
            for (f, m) in cat.morphisms().iter().enumerate() {
                let lhs = tgt.compose(target_functor.morphism_map[f], components[m.dom]);
                let rhs = tgt.compose(components[m.cod], source_functor.morphism_map[f]);
                if lhs != rhs || lhs.is_none() {
                    violations.push(NatTransViolation::NaturalityFailure { f: m.name.clone() });
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        Ok(NatTransData { source_functor, target_functor, components })
    }

    pub fn identity(functor: &FunctorData) -> NatTransData {
        let components = functor
            .object_map
            .iter()
            .map(|&x| functor.target.identity(x))
            .collect();
        NatTransData {
            source_functor: functor.clone(),
            target_functor: functor.clone(),
            components,
        }
    }

    pub fn is_componentwise_iso(&self) -> bool {
        self.components.iter().all(|&c| self.source_functor.target.is_iso(c))
    }

    /// Componentwise inverse; panics if some component is not an iso.
    pub fn inverse(&self) -> NatTransData {
        let tgt = &self.source_functor.target;
        NatTransData {
            source_functor: self.target_functor.clone(),
            target_functor: self.source_functor.clone(),
            components: self
                .components
                .iter()
                .map(|&c| tgt.inverse(c).expect("component is not invertible"))
                .collect(),
        }
    }

    /// Vertical composite `self ∘ other` (other first).
    pub fn vertical(&self, other: &NatTransData) -> NatTransData {
        let tgt = &self.source_functor.target;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(&a, &b)| tgt.compose(a, b).expect("components not composable"))
            .collect();
        NatTransData {
            source_functor: other.source_functor.clone(),
            target_functor: self.target_functor.clone(),
            components,
        }
    }
}

fn functor_search_bound(source: &FiniteCategory, target: &FiniteCategory) -> u128 {
    let obj_maps = (target.n_objects() as u128)
        .checked_pow(source.n_objects() as u32)
        .unwrap_or(u128::MAX);
    let max_hom = (0..target.n_objects())
        .flat_map(|x| (0..target.n_objects()).map(move |y| (x, y)))
        .map(|(x, y)| target.hom(x, y).count() as u128)
        .max()
        .unwrap_or(1)
        .max(1);
    let non_id = source.n_morphisms().saturating_sub(source.n_objects()) as u32;
    obj_maps.saturating_mul(max_hom.checked_pow(non_id).unwrap_or(u128::MAX))
}

/// Enumerates every functor `source -> target`, in lexicographic order of
/// `(object_map, morphism_map)`.
pub fn enumerate_functors(
    source: &FiniteCategory,
    target: &FiniteCategory,
    cap: u128,
) -> Result<Vec<FunctorData>, CatError> {
    let bound = functor_search_bound(source, target);
    if bound > cap {
        return Err(CatError::SearchSpaceExceeded { bound, cap });
    }
    if source.n_objects() == 0 {
        return Ok(vec![FunctorData {
            source: source.clone(),
            target: target.clone(),
            object_map: Vec::new(),
            morphism_map: Vec::new(),
        }]);
    }
    if target.n_objects() == 0 {
        return Ok(Vec::new());
    }

    let n_src_obj = source.n_objects();
    let n_tgt_obj = target.n_objects();
    let total = (n_tgt_obj as u128).pow(n_src_obj as u32);
    let object_maps: Vec<Vec<usize>> = (0..total)
        .map(|code| {
            let mut code = code;
            let mut map = vec![0usize; n_src_obj];
            for slot in map.iter_mut().rev() {
                *slot = (code % n_tgt_obj as u128) as usize;
                code /= n_tgt_obj as u128;
            }
            map
        })
        .collect();

    let per_map = |object_map: &Vec<usize>| -> Vec<FunctorData> {
        let mut out = Vec::new();
        let mut assignment = vec![usize::MAX; source.n_morphisms()];
        for x in 0..n_src_obj {
            assignment[source.identity(x)] = target.identity(object_map[x]);
        }
        let free: Vec<usize> =
            (0..source.n_morphisms()).filter(|&f| !source.is_identity(f)).collect();
        backtrack_morphisms(source, target, object_map, &free, 0, &mut assignment, &mut out);
        out
    };

    #[cfg(feature = "parallel")]
    let chunks: Vec<Vec<FunctorData>> = object_maps.par_iter().map(per_map).collect();
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Vec<FunctorData>> = object_maps.iter().map(per_map).collect();

    Ok(chunks.into_iter().flatten().collect())
}

fn backtrack_morphisms(
    source: &FiniteCategory,
    target: &FiniteCategory,
    object_map: &[usize],
    free: &[usize],
    pos: usize,
    assignment: &mut Vec<usize>,
    out: &mut Vec<FunctorData>,
) {
    if pos == free.len() {
        out.push(FunctorData {
            source: source.clone(),
            target: target.clone(),
            object_map: object_map.to_vec(),
            morphism_map: assignment.clone(),
        });
        return;
    }
    let f = free[pos];
    let m = source.morphism(f);
    for cand in target.hom(object_map[m.dom], object_map[m.cod]).collect::<Vec<_>>() {
        assignment[f] = cand;
        if composition_consistent(source, target, assignment, f) {
            backtrack_morphisms(source, target, object_map, free, pos + 1, assignment, out);
        }
        assignment[f] = usize::MAX;
    }
}

/// Checks every composition constraint in which `just_set` participates and
/// whose other morphisms are already assigned.
fn composition_consistent(
    source: &FiniteCategory,
    target: &FiniteCategory,
    assignment: &[usize],
    just_set: usize,
) -> bool {
    let n = source.n_morphisms();
    for other in 0..n {
        if assignment[other] == usize::MAX {
            continue;
        }
        for (g, f) in [(just_set, other), (other, just_set)] {
            if let Some(gf) = source.compose(g, f) {
                if assignment[gf] == usize::MAX {
                    continue;
                }
                if target.compose(assignment[g], assignment[f]) != Some(assignment[gf]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Enumerates every natural transformation `F => G`, in lexicographic order
/// of the component family.
pub fn enumerate_nat_transformations(
    f: &FunctorData,
    g: &FunctorData,
) -> Result<Vec<NatTransData>, CatError> {
    if f.source != g.source || f.target != g.target {
        return Err(CatError::SourceTargetMismatch);
    }
    let cat = &f.source;
    let tgt = &f.target;
    let mut out = Vec::new();
    let mut components = vec![usize::MAX; cat.n_objects()];
    fn rec(
        cat: &FiniteCategory,
        tgt: &FiniteCategory,
        f: &FunctorData,
        g: &FunctorData,
        x: usize,
        components: &mut Vec<usize>,
        out: &mut Vec<NatTransData>,
    ) {
        if x == cat.n_objects() {
            out.push(NatTransData {
                source_functor: f.clone(),
                target_functor: g.clone(),
                components: components.clone(),
            });
            return;
        }
        for cand in tgt.hom(f.object_map[x], g.object_map[x]).collect::<Vec<_>>() {
            components[x] = cand;
            let ok = cat.morphisms().iter().enumerate().all(|(m, mm)| {
                let (a, b) = (mm.dom, mm.cod);
                if components[a] == usize::MAX || components[b] == usize::MAX {
                    return true;
                }
                tgt.compose(g.morphism_map[m], components[a])
                    == tgt.compose(components[b], f.morphism_map[m])
            });
            if ok {
                rec(cat, tgt, f, g, x + 1, components, out);
            }
            components[x] = usize::MAX;
        }
    }
    rec(cat, tgt, f, g, 0, &mut components, &mut out);
    Ok(out)
}

/// Result of the equivalence check, with a constructed quasi-inverse when
/// the verdict is positive.
#[derive(Debug, Clone)]
pub struct EquivalenceVerdict {
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    /// `(G, alpha: F∘G => Id, beta: G∘F => Id)` when F is an equivalence.
    pub quasi_inverse: Option<(FunctorData, NatTransData, NatTransData)>,
}

impl EquivalenceVerdict {
    pub fn is_equivalence(&self) -> bool {
        self.fully_faithful && self.essentially_surjective
    }
}

/// Checks full faithfulness and essential surjectivity; on success builds a
/// quasi-inverse by picking, per target object, the lexicographically least
/// preimage object and least witnessing isomorphism.
pub fn is_equivalence(f: &FunctorData) -> EquivalenceVerdict {
    let ff = f.is_fully_faithful();
    let src = &f.source;
    let tgt = &f.target;

    // For each target object, the least (preimage, iso F(c) -> d) witness.
    let mut witnesses: Vec<Option<(usize, usize)>> = vec![None; tgt.n_objects()];
    for d in 0..tgt.n_objects() {
        'search: for c in 0..src.n_objects() {
            for iso in tgt.hom(f.object_map[c], d) {
                if tgt.is_iso(iso) {
                    witnesses[d] = Some((c, iso));
                    break 'search;
                }
            }
        }
    }
    let es = witnesses.iter().all(Option::is_some);
    if !(ff && es) {
        return EquivalenceVerdict { fully_faithful: ff, essentially_surjective: es, quasi_inverse: None };
    }

    let g_obj: Vec<usize> = witnesses.iter().map(|w| w.unwrap().0).collect();
    let alpha_comp: Vec<usize> = witnesses.iter().map(|w| w.unwrap().1).collect();
    // G(m: d1 -> d2) = the unique preimage of alpha_{d2}^{-1} ∘ m ∘ alpha_{d1}.
    let mut g_mor = vec![0usize; tgt.n_morphisms()];
    for (m, mm) in tgt.morphisms().iter().enumerate() {
        let conj = tgt
            .compose_chain(&[tgt.inverse(alpha_comp[mm.cod]).unwrap(), m, alpha_comp[mm.dom]])
            .expect("conjugation composable");
        g_mor[m] = f
            .hom_preimage(g_obj[mm.dom], g_obj[mm.cod], conj)
            .expect("fully faithful functor has a preimage");
    }
    let g = FunctorData::validate(tgt.clone(), src.clone(), g_obj.clone(), g_mor)
        .expect("quasi-inverse passes functor validation");

    let fg = compose_functors(f, &g).unwrap();
    let alpha = NatTransData::validate(fg, FunctorData::identity(tgt), alpha_comp.clone())
        .expect("alpha is natural");
    // beta_c = preimage of alpha_{F(c)} under the hom-bijection.
    let beta_comp: Vec<usize> = (0..src.n_objects())
        .map(|c| {
            f.hom_preimage(g_obj[f.object_map[c]], c, alpha_comp[f.object_map[c]])
                .expect("beta component exists")
        })
        .collect();
    let gf = compose_functors(&g, f).unwrap();
    let beta = NatTransData::validate(gf, FunctorData::identity(src), beta_comp)
        .expect("beta is natural");

    EquivalenceVerdict {
        fully_faithful: true,
        essentially_surjective: true,
        quasi_inverse: Some((g, alpha, beta)),
    }
}

/// An equivalence whose unit and counit satisfy both snake identities.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointEquivalence {
    pub forward: FunctorData,
    pub backward: FunctorData,
    /// forward ∘ backward => Id (counit).
    pub alpha: NatTransData,
    /// backward ∘ forward => Id (inverse of the unit).
    pub beta: NatTransData,
}

impl AdjointEquivalence {
    /// Verifies both snake identities componentwise.
    pub fn snake_identities_hold(&self) -> bool {
        snake_identities_hold(&self.forward, &self.backward, &self.alpha, &self.beta)
    }
}

fn snake_identities_hold(
    f: &FunctorData,
    g: &FunctorData,
    alpha: &NatTransData,
    beta: &NatTransData,
) -> bool {
    let src = &f.source;
    let tgt = &f.target;
    // eta = beta^{-1}: Id => G∘F
    let eta: Vec<usize> = beta.components.iter().map(|&b| src.inverse(b).unwrap()).collect();
    // 1: alpha_{Fc} ∘ F(eta_c) = id_{Fc}
    let one = (0..src.n_objects()).all(|c| {
        tgt.compose(alpha.components[f.object_map[c]], f.morphism_map[eta[c]])
            == Some(tgt.identity(f.object_map[c]))
    });
    // 2: G(alpha_d) ∘ eta_{Gd} = id_{Gd}
    let two = (0..tgt.n_objects()).all(|d| {
        src.compose(g.morphism_map[alpha.components[d]], eta[g.object_map[d]])
            == Some(src.identity(g.object_map[d]))
    });
    one && two
}

/// Adjusts `alpha` by the standard replacement so that both snake identities
/// hold; the result is verified exhaustively before being returned.
pub fn promote_to_adjoint_equivalence(
    forward: FunctorData,
    backward: FunctorData,
    alpha: NatTransData,
    beta: NatTransData,
) -> Result<AdjointEquivalence, CatError> {
    if !alpha.is_componentwise_iso() || !beta.is_componentwise_iso() {
        return Err(CatError::NotAnEquivalence);
    }
    let src = &forward.source;
    let tgt = &forward.target;
    if alpha.components.len() != tgt.n_objects() || beta.components.len() != src.n_objects() {
        return Err(CatError::NotAnEquivalence);
    }

    // Keep beta; replace alpha_d by alpha_d ∘ F(beta_{Gd}) ∘ alpha^{-1}_{FGd}.
    // (With eta = beta^{-1} this is the classical alpha' = alpha ∘ F(eta^{-1}) ∘ alpha^{-1}.)
    let g_obj = &backward.object_map;
    let new_alpha: Vec<usize> = (0..tgt.n_objects())
        .map(|d| {
            let fg_d = forward.object_map[g_obj[d]];
            tgt.compose_chain(&[
                alpha.components[d],
                forward.morphism_map[beta.components[g_obj[d]]],
                tgt.inverse(alpha.components[fg_d]).unwrap(),
            ])
            .expect("replacement composable")
        })
        .collect();

    let fg = compose_functors(&forward, &backward).map_err(|_| CatError::NotAnEquivalence)?;
    let alpha = NatTransData::validate(fg, FunctorData::identity(tgt), new_alpha)
        .map_err(|_| CatError::NotAnEquivalence)?;
    let adj = AdjointEquivalence { forward, backward, alpha, beta };
    if !adj.snake_identities_hold() {
        return Err(CatError::NotAnEquivalence);
    }
    Ok(adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn terminal_category_is_valid() {
        let one = fixtures::one();
        assert_eq!(one.n_objects(), 1);
        assert_eq!(one.n_morphisms(), 1);
    }

    #[test]
    fn z3_delooping_matches_group_axioms() {
        // Independent oracle: the Z/3 Cayley table.
        let b3 = fixtures::delooping_zn(3);
        for a in 0..3usize {
            for b in 0..3usize {
                assert_eq!(b3.compose(a, b), Some((a + b) % 3));
            }
        }
    }

    #[test]
    fn mistyped_composition_entry_is_rejected() {
        // Two objects a, b; f: a -> b; g: b -> b declared to compose with a
        // morphism it cannot meet.
        let objects = vec!["a".into(), "b".into()];
        let morphisms = vec![
            Morphism::new("id_a", 0, 0),
            Morphism::new("id_b", 1, 1),
            Morphism::new("f", 0, 1),
            Morphism::new("g", 0, 0),
        ];
        let err = FiniteCategory::validate(
            objects,
            morphisms,
            vec![0, 1],
            &[(3, 2, 2)], // compose(g: a->a, f: a->b) is not composable
        )
        .unwrap_err();
        assert!(err
            .violations
            .iter()
            .any(|v| matches!(v, CategoryViolation::TypeMismatch { .. })));
    }

    #[test]
    fn opposite_is_an_involution_on_the_nose() {
        for cat in [fixtures::delooping_zn(4), fixtures::walking_isomorphism(), fixtures::one()] {
            assert_eq!(cat.opposite().opposite(), cat);
        }
    }

    #[test]
    fn opposite_reverses_endpoints_and_table() {
        let walk = fixtures::walking_isomorphism();
        let f = walk.morphism_index("f").unwrap();
        let op = walk.opposite();
        assert_eq!(op.morphism(f).dom, walk.morphism(f).cod);
        assert_eq!(op.morphism(f).cod, walk.morphism(f).dom);
        let b3 = fixtures::delooping_zn(3);
        let op3 = b3.opposite();
        for g in 0..3 {
            for h in 0..3 {
                assert_eq!(op3.compose(g, h), b3.compose(h, g));
            }
        }
    }

    #[test]
    fn functor_composition() {
        let b4 = fixtures::delooping_zn(4);
        let id = FunctorData::identity(&b4);
        assert_eq!(compose_functors(&id, &id).unwrap(), id);

        // g -> 2g, composed with itself, is the constant-on-morphisms functor.
        let double = FunctorData::validate(
            b4.clone(),
            b4.clone(),
            vec![0],
            (0..4).map(|g| (2 * g) % 4).collect(),
        )
        .unwrap();
        let comp = compose_functors(&double, &double).unwrap();
        assert_eq!(comp.morphism_map, vec![0, 0, 0, 0]);

        let one = fixtures::one();
        let to_one = FunctorData::validate(
            fixtures::delooping_zn(3),
            one.clone(),
            vec![0],
            vec![0, 0, 0],
        )
        .unwrap();
        let id3 = FunctorData::identity(&fixtures::delooping_zn(3));
        assert_eq!(compose_functors(&to_one, &id3).unwrap(), to_one);
    }

    #[test]
    fn functor_enumeration_counts() {
        let one = fixtures::one();
        let b3 = fixtures::delooping_zn(3);
        assert_eq!(enumerate_functors(&one, &b3, 1 << 20).unwrap().len(), 1);
        // group endomorphisms of Z/3: g -> kg for k in {0,1,2}
        assert_eq!(enumerate_functors(&b3, &b3, 1 << 20).unwrap().len(), 3);
        let d2 = fixtures::discrete(2);
        assert_eq!(enumerate_functors(&d2, &d2, 1 << 20).unwrap().len(), 4);
    }

    #[test]
    fn functor_enumeration_is_closed_under_larger_caps() {
        let b3 = fixtures::delooping_zn(3);
        let small = enumerate_functors(&b3, &b3, 1 << 20).unwrap();
        let large = enumerate_functors(&b3, &b3, u128::MAX).unwrap();
        assert_eq!(small, large);
    }

    #[test]
    fn functor_enumeration_cap() {
        let d = fixtures::discrete(4);
        let err = enumerate_functors(&d, &d, 2).unwrap_err();
        assert!(matches!(err, CatError::SearchSpaceExceeded { .. }));
    }

    #[test]
    fn nat_trans_enumeration_counts() {
        let one = fixtures::one();
        let id_one = FunctorData::identity(&one);
        assert_eq!(enumerate_nat_transformations(&id_one, &id_one).unwrap().len(), 1);

        let b4 = fixtures::delooping_zn(4);
        let f = enumerate_functors(&one, &b4, 1 << 20).unwrap().remove(0);
        // naturality is vacuous; components range over Z/4
        assert_eq!(enumerate_nat_transformations(&f, &f).unwrap().len(), 4);

        let d2 = fixtures::discrete(2);
        let const_a =
            FunctorData::validate(d2.clone(), d2.clone(), vec![0, 0], vec![0, 0]).unwrap();
        let const_b =
            FunctorData::validate(d2.clone(), d2.clone(), vec![1, 1], vec![1, 1]).unwrap();
        assert!(enumerate_nat_transformations(&const_a, &const_b).unwrap().is_empty());
    }

    #[test]
    fn equivalence_verdicts() {
        let b4 = fixtures::delooping_zn(4);
        let v = is_equivalence(&FunctorData::identity(&b4));
        assert!(v.is_equivalence());

        let b3 = fixtures::delooping_zn(3);
        let one = fixtures::one();
        let to_one =
            FunctorData::validate(b3.clone(), one.clone(), vec![0], vec![0, 0, 0]).unwrap();
        let v = is_equivalence(&to_one);
        assert!(!v.fully_faithful);

        let walk = fixtures::walking_isomorphism();
        let walk_to_one = FunctorData::validate(
            walk.clone(),
            one.clone(),
            vec![0, 0],
            vec![0; walk.n_morphisms()],
        )
        .unwrap();
        let v = is_equivalence(&walk_to_one);
        assert!(v.is_equivalence());
        let (g, alpha, beta) = v.quasi_inverse.unwrap();
        assert!(alpha.is_componentwise_iso() && beta.is_componentwise_iso());
        // quasi-inverse passes functor validation by construction; re-check
        FunctorData::validate(g.source.clone(), g.target.clone(), g.object_map.clone(), g.morphism_map.clone())
            .unwrap();
    }

    #[test]
    fn promote_identity_equivalence_is_unchanged() {
        let b4 = fixtures::delooping_zn(4);
        let id = FunctorData::identity(&b4);
        let alpha = NatTransData::identity(&id);
        let beta = alpha.clone();
        let adj =
            promote_to_adjoint_equivalence(id.clone(), id.clone(), alpha.clone(), beta.clone())
                .unwrap();
        assert_eq!(adj.alpha, alpha);
        assert!(adj.snake_identities_hold());
    }

    #[test]
    fn promote_walk_and_b3_equivalences() {
        // Walk <-> One with an arbitrary iso choice.
        let walk = fixtures::walking_isomorphism();
        let one = fixtures::one();
        let fwd = FunctorData::validate(
            walk.clone(),
            one.clone(),
            vec![0, 0],
            vec![0; walk.n_morphisms()],
        )
        .unwrap();
        let v = is_equivalence(&fwd);
        let (bwd, alpha, beta) = v.quasi_inverse.unwrap();
        let adj = promote_to_adjoint_equivalence(fwd, bwd, alpha, beta).unwrap();
        assert!(adj.snake_identities_hold());

        // B3 <-> B3 via g -> 2g with beta the zero component.
        let b3 = fixtures::delooping_zn(3);
        let double = FunctorData::validate(
            b3.clone(),
            b3.clone(),
            vec![0],
            (0..3).map(|g| (2 * g) % 3).collect(),
        )
        .unwrap();
        let comp = compose_functors(&double, &double).unwrap();
        assert_eq!(comp, FunctorData::identity(&b3));
        let alpha = NatTransData::validate(comp.clone(), FunctorData::identity(&b3), vec![0])
            .unwrap();
        let beta = NatTransData::validate(comp, FunctorData::identity(&b3), vec![0]).unwrap();
        let adj = promote_to_adjoint_equivalence(double.clone(), double, alpha, beta).unwrap();
        assert!(adj.snake_identities_hold());
    }

    #[test]
    fn promote_rejects_non_equivalence_data() {
        let b4 = fixtures::delooping_zn(4);
        let id = FunctorData::identity(&b4);
        let mut alpha = NatTransData::identity(&id);
        alpha.components = vec![2]; // 2 is not invertible under composition? it is (group); use discrete instead
        let d2 = fixtures::discrete(2);
        let idd = FunctorData::identity(&d2);
        let bad = NatTransData {
            source_functor: idd.clone(),
            target_functor: idd.clone(),
            components: vec![0, 1],
        };
        // make a non-iso by pointing at a non-invertible morphism: discrete
        // categories have only identities, so instead check the mismatch path
        let _ = bad;
        let poset = fixtures::poset_chain(2).0;
        let idp = FunctorData::identity(&poset);
        let le = poset.morphism_index("le_c0_c1").unwrap();
        let alpha_bad = NatTransData {
            source_functor: idp.clone(),
            target_functor: idp.clone(),
            components: vec![le, poset.identity(1)],
        };
        let beta = NatTransData::identity(&idp);
        let err = promote_to_adjoint_equivalence(idp.clone(), idp, alpha_bad, beta).unwrap_err();
        assert_eq!(err, CatError::NotAnEquivalence);
    }

    #[test]
    fn iso_class_partitions() {
        assert_eq!(fixtures::discrete(2).iso_classes().classes.len(), 2);
        assert_eq!(fixtures::walking_isomorphism().iso_classes().classes.len(), 1);
        let m2 = fixtures::matrix_category(2, 2);
        assert_eq!(m2.iso_classes().classes.len(), 3);
    }
}
