//! Dagger structures: identity-on-objects contravariant involutions,
//! morphism classification, dagger functors and equivalences,
//! indefiniteness, unitary isomorphism classes, canonical positivity.

use std::fmt;

use thiserror::Error;

use crate::cat::{
    compose_functors, enumerate_functors, enumerate_nat_transformations, CatError, Dsu,
    FiniteCategory, FunctorData, NatTransData, Partition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DaggerViolation {
    #[error("dag({f}) does not reverse endpoints (dagger must be identity on objects)")]
    NotIdentityOnObjects { f: String },
    #[error("dag(compose({g}, {f})) != compose(dag({f}), dag({g}))")]
    NotContravariant { g: String, f: String },
    #[error("involution fails at {f}: dag(dag({f})) != {f} or dag of an identity moved")]
    NotInvolutive { f: String },
    #[error("{0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaggerReport {
    pub violations: Vec<DaggerViolation>,
}

impl fmt::Display for DaggerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for DaggerReport {}

/// A dagger category: a finite category with a validated
/// identity-on-objects contravariant involution on morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaggerStructure {
    base: FiniteCategory,
    dag: Vec<usize>,
}

impl DaggerStructure {
    pub fn validate(base: FiniteCategory, dag: Vec<usize>) -> Result<Self, DaggerReport> {
        let mut violations = Vec::new();
        let n = base.n_morphisms();
        if dag.len() != n || dag.iter().any(|&f| f >= n) {
            violations.push(DaggerViolation::Malformed("dagger map malformed".into()));
            return Err(DaggerReport { violations });
        }
        for f in 0..n {
            let m = base.morphism(f);
            let dm = base.morphism(dag[f]);
            if dm.dom != m.cod || dm.cod != m.dom {
                violations
                    .push(DaggerViolation::NotIdentityOnObjects { f: m.name.clone() });
            }
            if dag[dag[f]] != f || (base.is_identity(f) && dag[f] != f) {
                violations.push(DaggerViolation::NotInvolutive { f: m.name.clone() });
            }
        }
        if violations.is_empty() {
            for g in 0..n {
                for f in 0..n {
                    if let Some(gf) = base.compose(g, f) {
                        if base.compose(dag[f], dag[g]) != Some(dag[gf]) {
                            violations.push(DaggerViolation::NotContravariant {
                                g: base.morphism(g).name.clone(),
                                f: base.morphism(f).name.clone(),
                            });
                        }
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(DaggerReport { violations });
        }
        Ok(DaggerStructure { base, dag })
    }

    pub fn base(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn dag(&self, f: usize) -> usize {
        self.dag[f]
    }

    pub fn dag_map(&self) -> &[usize] {
        &self.dag
    }

    pub fn is_isometry(&self, f: usize) -> bool {
        let m = self.base.morphism(f);
        self.base.compose(self.dag[f], f) == Some(self.base.identity(m.dom))
    }

    pub fn is_unitary(&self, f: usize) -> bool {
        let m = self.base.morphism(f);
        self.is_isometry(f)
            && self.base.compose(f, self.dag[f]) == Some(self.base.identity(m.cod))
    }

    pub fn is_self_adjoint(&self, f: usize) -> bool {
        self.dag[f] == f
    }
}

/// Flags for one morphism; see [`classify_morphism`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismClassification {
    pub self_adjoint: bool,
    pub isometry: bool,
    pub unitary: bool,
    /// f = dag(a) ∘ a for some invertible a.
    pub positive_automorphism: bool,
    /// f = dag(a) ∘ a for some (possibly non-invertible) a.
    pub positive_endomorphism: bool,
}

/// Classifies `f` by brute force over the relevant hom-sets.
pub fn classify_morphism(
    d: &DaggerStructure,
    f: usize,
) -> Result<MorphismClassification, CatError> {
    let base = d.base();
    if f >= base.n_morphisms() {
        return Err(CatError::UnknownMorphism(format!("#{f}")));
    }
    let m = base.morphism(f);
    let mut positive_automorphism = false;
    let mut positive_endomorphism = false;
    if m.dom == m.cod {
        for y in 0..base.n_objects() {
            for a in base.hom(m.dom, y) {
                if base.compose(d.dag(a), a) == Some(f) {
                    positive_endomorphism = true;
                    if base.is_iso(a) {
                        positive_automorphism = true;
                    }
                }
            }
        }
    }
    Ok(MorphismClassification {
        self_adjoint: d.is_self_adjoint(f),
        isometry: d.is_isometry(f),
        unitary: d.is_unitary(f),
        positive_automorphism: positive_automorphism && base.is_iso(f),
        positive_endomorphism,
    })
}

/// F(f†) = F(f)‡ for every morphism.
pub fn is_dagger_functor(d1: &DaggerStructure, d2: &DaggerStructure, f: &FunctorData) -> bool {
    f.source == *d1.base()
        && f.target == *d2.base()
        && (0..d1.base().n_morphisms())
            .all(|m| f.apply_mor(d1.dag(m)) == d2.dag(f.apply_mor(m)))
}

/// Every component of `alpha` is an isometry in `d2`.
pub fn is_isometric_nat_trans(d2: &DaggerStructure, alpha: &NatTransData) -> bool {
    alpha.source_functor.target == *d2.base()
        && alpha.components.iter().all(|&c| d2.is_isometry(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DaggerEquivalenceVerdict {
    pub fully_faithful: bool,
    pub surjective_up_to_unitaries: bool,
}

impl DaggerEquivalenceVerdict {
    pub fn holds(&self) -> bool {
        self.fully_faithful && self.surjective_up_to_unitaries
    }
}

/// Dagger equivalence criterion: fully faithful and every object of the
/// target unitarily isomorphic to something in the image (brute-force
/// unitary search).
pub fn is_dagger_equivalence(
    d1: &DaggerStructure,
    d2: &DaggerStructure,
    f: &FunctorData,
) -> Result<DaggerEquivalenceVerdict, CatError> {
    if !is_dagger_functor(d1, d2, f) {
        return Err(CatError::SourceTargetMismatch);
    }
    let tgt = d2.base();
    let fully_faithful = f.is_fully_faithful();
    let surjective_up_to_unitaries = (0..tgt.n_objects()).all(|y| {
        (0..d1.base().n_objects())
            .any(|c| tgt.hom(f.apply_obj(c), y).any(|u| d2.is_unitary(u)))
    });
    Ok(DaggerEquivalenceVerdict { fully_faithful, surjective_up_to_unitaries })
}

/// Cross-check of the equivalent characterization: existence of a dagger
/// quasi-inverse with unitary natural isomorphisms, by exhaustive functor
/// enumeration under `cap`.
pub fn has_dagger_quasi_inverse(
    d1: &DaggerStructure,
    d2: &DaggerStructure,
    f: &FunctorData,
    cap: u128,
) -> Result<bool, CatError> {
    let candidates = enumerate_functors(d2.base(), d1.base(), cap)?;
    for g in candidates {
        if !is_dagger_functor(d2, d1, &g) {
            continue;
        }
        let fg = compose_functors(f, &g)?;
        let gf = compose_functors(&g, f)?;
        let id2 = FunctorData::identity(d2.base());
        let id1 = FunctorData::identity(d1.base());
        let alphas = enumerate_nat_transformations(&fg, &id2)?;
        let betas = enumerate_nat_transformations(&gf, &id1)?;
        let ok_alpha = alphas.iter().any(|a| a.components.iter().all(|&c| d2.is_unitary(c)));
        let ok_beta = betas.iter().any(|b| b.components.iter().all(|&c| d1.is_unitary(c)));
        if ok_alpha && ok_beta {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Indefiniteness verdict with the least counterexample when negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndefiniteVerdict {
    pub indefinite: bool,
    /// Least (object, self-adjoint automorphism) not of the form dag(f)∘f.
    pub counterexample: Option<(usize, usize)>,
}

/// Every self-adjoint automorphism a: x → x factors as dag(f)∘f with f an
/// isomorphism out of x.
pub fn is_indefinite(d: &DaggerStructure) -> IndefiniteVerdict {
    let base = d.base();
    for x in 0..base.n_objects() {
        for a in base.hom(x, x) {
            if !d.is_self_adjoint(a) || !base.is_iso(a) {
                continue;
            }
            let covered = (0..base.n_objects()).any(|y| {
                base.hom(x, y).any(|f| base.is_iso(f) && base.compose(d.dag(f), f) == Some(a))
            });
            if !covered {
                return IndefiniteVerdict { indefinite: false, counterexample: Some((x, a)) };
            }
        }
    }
    IndefiniteVerdict { indefinite: true, counterexample: None }
}

/// Partition of objects under existence of a unitary isomorphism.
pub fn unitary_iso_classes(d: &DaggerStructure) -> Partition {
    let base = d.base();
    let mut dsu = Dsu::new(base.n_objects());
    for f in 0..base.n_morphisms() {
        if d.is_unitary(f) {
            let m = base.morphism(f);
            dsu.union(m.dom, m.cod);
        }
    }
    dsu.into_partition()
}

/// Canonical positivity: P_c = { dag(a)∘a : a an isomorphism out of c }.
/// Transfer-closed by construction; wrapped into a validated
/// [`crate::herm::PositivityNotion`] over T(D) by the caller via
/// [`crate::herm::validate_positivity`]. Returns the raw per-object sets.
pub fn canonical_positivity_sets(d: &DaggerStructure) -> Vec<Vec<usize>> {
    let base = d.base();
    (0..base.n_objects())
        .map(|c| {
            let mut set: Vec<usize> = (0..base.n_objects())
                .flat_map(|y| base.hom_vec(c, y))
                .filter(|&a| base.is_iso(a))
                .filter_map(|a| base.compose(d.dag(a), a))
                .collect();
            set.sort_unstable();
            set.dedup();
            set
        })
        .collect()
}

/// Canonical positivity as a validated positivity notion on T(D).
pub fn canonical_positivity(
    d: &DaggerStructure,
) -> Result<crate::herm::PositivityNotion, crate::herm::PositivityReport> {
    let t = crate::involutive::T_on_category(d);
    crate::herm::validate_positivity(&t, canonical_positivity_sets(d))
}
