//! Anti-involutive categories (C, d, η), involutive functors and natural
//! transformations with all coherence squares, the 2-functor T from dagger
//! categories, the constructive involutive inverse of an equivalence, and
//! the functor-category anti-involution.
//!
//! Contravariance is funneled through [`FiniteCategory::opposite`]: d is a
//! functor out of the opposite category, which shares morphism indices with
//! the base, so d can be applied to a base morphism index directly.

use std::fmt;

use thiserror::Error;

use crate::cat::{
    compose_functors, enumerate_functors, enumerate_nat_transformations, AdjointEquivalence,
    CatError, FiniteCategory, FunctorData, Morphism, NatTransData,
};
use crate::dagger::{is_dagger_functor, is_isometric_nat_trans, DaggerStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutiveViolation {
    #[error("d is not a functor opposite(C) -> C: {0}")]
    NotAFunctor(String),
    #[error("eta is not natural at {f}")]
    EtaNotNatural { f: String },
    #[error("eta component at {object} is not an isomorphism")]
    EtaNotIso { object: String },
    #[error("coherence fails at {object}: eta_d(c) and d(eta_c) are not mutually inverse")]
    CoherenceFailure { object: String },
    #[error("phi component at {object} is mistyped or not an isomorphism")]
    PhiMalformed { object: String },
    #[error("phi is not natural at {f}")]
    PhiNotNatural { f: String },
    #[error("eta-compatibility square fails at {object}")]
    EtaSquareFailure { object: String },
    #[error("involutive naturality square fails at {object}")]
    NatTransSquareFailure { object: String },
    #[error("{0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveReport {
    pub violations: Vec<InvolutiveViolation>,
}

impl fmt::Display for InvolutiveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for InvolutiveReport {}

/// (C, d, η): a finite category with a contravariant involution d and a
/// coherent natural isomorphism η: Id ⇒ d ∘ d^op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiInvolutiveCategory {
    base: FiniteCategory,
    /// d as a functor opposite(base) → base (same morphism index space).
    d: FunctorData,
    /// η_c: c → d(d(c)) per object.
    eta: Vec<usize>,
}

impl AntiInvolutiveCategory {
    pub fn validate(
        base: FiniteCategory,
        d: FunctorData,
        eta: Vec<usize>,
    ) -> Result<Self, InvolutiveReport> {
        let mut violations = Vec::new();
        if d.source != base.opposite() || d.target != base {
            violations.push(InvolutiveViolation::NotAFunctor(
                "endpoints are not opposite(C) and C".into(),
            ));
            return Err(InvolutiveReport { violations });
        }
        if eta.len() != base.n_objects() {
            violations.push(InvolutiveViolation::Malformed("eta length mismatch".into()));
            return Err(InvolutiveReport { violations });
        }
        let dd_obj = |x: usize| d.object_map[d.object_map[x]];
        let dd_mor = |f: usize| d.morphism_map[d.morphism_map[f]];
        for x in 0..base.n_objects() {
            let e = base.morphism(eta[x]);
            if e.dom != x || e.cod != dd_obj(x) {
                violations.push(InvolutiveViolation::Malformed(format!(
                    "eta at {} is not a morphism c -> dd(c)",
                    base.object_name(x)
                )));
            } else if !base.is_iso(eta[x]) {
                violations.push(InvolutiveViolation::EtaNotIso {
                    object: base.object_name(x).to_string(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(InvolutiveReport { violations });
        }
        for (f, m) in base.morphisms().iter().enumerate() {
            if base.compose(dd_mor(f), eta[m.dom]) != base.compose(eta[m.cod], f) {
                violations.push(InvolutiveViolation::EtaNotNatural { f: m.name.clone() });
            }
        }
        for x in 0..base.n_objects() {
            // eta_{d(x)}: d(x) -> ddd(x) and d(eta_x): ddd(x) -> d(x)
            let dx = d.object_map[x];
            let de = d.morphism_map[eta[x]];
            let ok = base.compose(de, eta[dx]) == Some(base.identity(dx))
                && base.compose(eta[dx], de) == Some(base.identity(dd_obj(dx)));
            if !ok {
                violations.push(InvolutiveViolation::CoherenceFailure {
                    object: base.object_name(x).to_string(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(InvolutiveReport { violations });
        }
        Ok(AntiInvolutiveCategory { base, d, eta })
    }

    pub fn base(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn d_functor(&self) -> &FunctorData {
        &self.d
    }

    pub fn d_obj(&self, x: usize) -> usize {
        self.d.object_map[x]
    }

    pub fn d_mor(&self, f: usize) -> usize {
        self.d.morphism_map[f]
    }

    pub fn eta(&self, x: usize) -> usize {
        self.eta[x]
    }

    pub fn eta_map(&self) -> &[usize] {
        &self.eta
    }
}

/// T on categories: a dagger structure viewed as an anti-involution with
/// d identity on objects, d = dag on morphisms, η = id.
#[allow(non_snake_case)]
pub fn T_on_category(d: &DaggerStructure) -> AntiInvolutiveCategory {
    let base = d.base().clone();
    let functor = FunctorData::validate(
        base.opposite(),
        base.clone(),
        (0..base.n_objects()).collect(),
        d.dag_map().to_vec(),
    )
    .expect("a dagger is a functor out of the opposite");
    let eta = (0..base.n_objects()).map(|x| base.identity(x)).collect();
    AntiInvolutiveCategory::validate(base, functor, eta)
        .expect("T of a dagger category is anti-involutive")
}

/// An involutive functor (F, φ) between anti-involutive categories, with
/// φ_x: F(d₁x) → d₂(Fx).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveFunctor {
    pub source: AntiInvolutiveCategory,
    pub target: AntiInvolutiveCategory,
    pub functor: FunctorData,
    pub phi: Vec<usize>,
}

/// Validates the coherence of (F, φ): typing and invertibility of φ,
/// naturality of φ: F ∘ d₁ ⇒ d₂ ∘ F^op, and the η-compatibility square
/// φ_{d₁x} ∘ F(η₁_x) = d₂(φ_x) ∘ η₂_{Fx}.
pub fn validate_involutive_functor(
    source: &AntiInvolutiveCategory,
    target: &AntiInvolutiveCategory,
    functor: FunctorData,
    phi: Vec<usize>,
) -> Result<InvolutiveFunctor, InvolutiveReport> {
    let mut violations = Vec::new();
    let (c1, c2) = (source.base(), target.base());
    if functor.source != *c1 || functor.target != *c2 {
        violations.push(InvolutiveViolation::Malformed(
            "functor endpoints do not match the given categories".into(),
        ));
        return Err(InvolutiveReport { violations });
    }
    if phi.len() != c1.n_objects() {
        violations.push(InvolutiveViolation::Malformed("phi length mismatch".into()));
        return Err(InvolutiveReport { violations });
    }
    for x in 0..c1.n_objects() {
        let p = c2.morphism(phi[x]);
        let ok = p.dom == functor.object_map[source.d_obj(x)]
            && p.cod == target.d_obj(functor.object_map[x])
            && c2.is_iso(phi[x]);
        if !ok {
            violations.push(InvolutiveViolation::PhiMalformed {
                object: c1.object_name(x).to_string(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(InvolutiveReport { violations });
    }
    for (f, m) in c1.morphisms().iter().enumerate() {
        // square over f: x -> y, read in the opposite category
        let lhs = c2.compose(phi[m.dom], functor.morphism_map[source.d_mor(f)]);
        let rhs = c2.compose(target.d_mor(functor.morphism_map[f]), phi[m.cod]);
        if lhs != rhs || lhs.is_none() {
            violations.push(InvolutiveViolation::PhiNotNatural { f: m.name.clone() });
        }
    }
    for x in 0..c1.n_objects() {
        let lhs = c2.compose(phi[source.d_obj(x)], functor.morphism_map[source.eta(x)]);
        let rhs = c2.compose(target.d_mor(phi[x]), target.eta(functor.object_map[x]));
        if lhs != rhs || lhs.is_none() {
            violations.push(InvolutiveViolation::EtaSquareFailure {
                object: c1.object_name(x).to_string(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(InvolutiveReport { violations });
    }
    Ok(InvolutiveFunctor { source: source.clone(), target: target.clone(), functor, phi })
}

/// The identity involutive functor (Id, φ = id).
pub fn identity_involutive(a: &AntiInvolutiveCategory) -> InvolutiveFunctor {
    let phi = (0..a.base().n_objects()).map(|x| a.base().identity(a.d_obj(x))).collect();
    validate_involutive_functor(a, a, FunctorData::identity(a.base()), phi)
        .expect("identity involutive functor is coherent")
}

/// T on functors: a dagger functor with the trivial datum φ = id.
#[allow(non_snake_case)]
pub fn T_on_functor(
    d1: &DaggerStructure,
    d2: &DaggerStructure,
    f: &FunctorData,
) -> Result<InvolutiveFunctor, InvolutiveReport> {
    if !is_dagger_functor(d1, d2, f) {
        return Err(InvolutiveReport {
            violations: vec![InvolutiveViolation::Malformed("not a dagger functor".into())],
        });
    }
    let (a1, a2) = (T_on_category(d1), T_on_category(d2));
    let phi = (0..d1.base().n_objects())
        .map(|x| d2.base().identity(f.object_map[x]))
        .collect();
    validate_involutive_functor(&a1, &a2, f.clone(), phi)
}

/// An involutive natural transformation between involutive functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveNatTrans {
    pub alpha: NatTransData,
}

/// Checks the compatibility square φ_x = d₂(α_x) ∘ ψ_x ∘ α_{d₁x} for
/// α: (F, φ) ⇒ (G, ψ).
pub fn validate_involutive_nat_trans(
    f: &InvolutiveFunctor,
    g: &InvolutiveFunctor,
    alpha: NatTransData,
) -> Result<InvolutiveNatTrans, InvolutiveReport> {
    let mut violations = Vec::new();
    if alpha.source_functor != f.functor || alpha.target_functor != g.functor {
        violations.push(InvolutiveViolation::Malformed(
            "transformation endpoints do not match the involutive functors".into(),
        ));
        return Err(InvolutiveReport { violations });
    }
    let c1 = f.source.base();
    let c2 = f.target.base();
    for x in 0..c1.n_objects() {
        let rhs = c2.compose_chain(&[
            f.target.d_mor(alpha.components[x]),
            g.phi[x],
            alpha.components[f.source.d_obj(x)],
        ]);
        if rhs != Some(f.phi[x]) {
            violations.push(InvolutiveViolation::NatTransSquareFailure {
                object: c1.object_name(x).to_string(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(InvolutiveReport { violations });
    }
    Ok(InvolutiveNatTrans { alpha })
}

/// T on natural transformations: an isometric transformation between dagger
/// functors, with the trivial data on both sides.
#[allow(non_snake_case)]
pub fn T_on_nat_trans(
    d1: &DaggerStructure,
    d2: &DaggerStructure,
    f: &FunctorData,
    g: &FunctorData,
    alpha: NatTransData,
) -> Result<InvolutiveNatTrans, InvolutiveReport> {
    if !is_isometric_nat_trans(d2, &alpha) {
        return Err(InvolutiveReport {
            violations: vec![InvolutiveViolation::Malformed("not isometric".into())],
        });
    }
    let fi = T_on_functor(d1, d2, f)?;
    let gi = T_on_functor(d1, d2, g)?;
    validate_involutive_nat_trans(&fi, &gi, alpha)
}

/// Composite involutive functor (G, φ_G) ∘ (F, φ_F), with datum
/// φ_x = φ_G at F(x), after G(φ_F at x).
pub fn compose_involutive_functors(
    g: &InvolutiveFunctor,
    f: &InvolutiveFunctor,
) -> Result<InvolutiveFunctor, CatError> {
    if f.target != g.source {
        return Err(CatError::SourceTargetMismatch);
    }
    let functor = compose_functors(&g.functor, &f.functor)?;
    let c3 = g.target.base();
    let phi: Vec<usize> = (0..f.source.base().n_objects())
        .map(|x| {
            c3.compose(g.phi[f.functor.object_map[x]], g.functor.morphism_map[f.phi[x]])
                .expect("composite coherence datum is composable")
        })
        .collect();
    Ok(validate_involutive_functor(&f.source, &g.target, functor, phi)
        .expect("composite of involutive functors is involutive"))
}

/// Constructive involutive inverse of an equivalence:
/// given (F, φ) and an adjoint equivalence (F, G, α, β), equips G with
/// ψ_y = β_{d₁(Gy)} ∘ G(φ⁻¹_{Gy}) ∘ G(d₂(α_y)), and certifies that
/// (G, ψ), α and β all pass the involutive validations.
pub fn involutive_inverse_of_equivalence(
    f_inv: &InvolutiveFunctor,
    adj: &AdjointEquivalence,
) -> Result<(InvolutiveFunctor, InvolutiveNatTrans, InvolutiveNatTrans), InvolutiveReport> {
    if adj.forward != f_inv.functor || !adj.snake_identities_hold() {
        return Err(InvolutiveReport {
            violations: vec![InvolutiveViolation::Malformed(
                "adjoint data does not certify an adjoint equivalence of F".into(),
            )],
        });
    }
    let c = &f_inv.source; // source anti-involutive category
    let d = &f_inv.target;
    let (cb, db) = (c.base(), d.base());
    let g = &adj.backward;
    let psi: Vec<usize> = (0..db.n_objects())
        .map(|y| {
            let gy = g.object_map[y];
            cb.compose_chain(&[
                adj.beta.components[c.d_obj(gy)],
                g.morphism_map[db.inverse(f_inv.phi[gy]).expect("phi is iso")],
                g.morphism_map[d.d_mor(adj.alpha.components[y])],
            ])
            .expect("psi formula is composable")
        })
        .collect();
    let g_inv = validate_involutive_functor(d, c, g.clone(), psi)?;
    let fg = compose_involutive_functors(f_inv, &g_inv)
        .map_err(|e| InvolutiveReport { violations: vec![InvolutiveViolation::Malformed(e.to_string())] })?;
    let gf = compose_involutive_functors(&g_inv, f_inv)
        .map_err(|e| InvolutiveReport { violations: vec![InvolutiveViolation::Malformed(e.to_string())] })?;
    let alpha = validate_involutive_nat_trans(&fg, &identity_involutive(d), adj.alpha.clone())?;
    let beta = validate_involutive_nat_trans(&gf, &identity_involutive(c), adj.beta.clone())?;
    Ok((g_inv, alpha, beta))
}

/// The functor category Fun(C, D) materialized with its anti-involution.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub involution: AntiInvolutiveCategory,
    /// Objects, in enumeration order.
    pub functors: Vec<FunctorData>,
    /// Morphisms, in the order used by the materialized category.
    pub nat_transes: Vec<NatTransData>,
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &FunctorData) -> Option<usize> {
        self.functors.iter().position(|g| g == f)
    }

    pub fn nat_trans_index(&self, a: &NatTransData) -> Option<usize> {
        self.nat_transes.iter().position(|b| b == a)
    }

    /// Converts a Hermitian fixed point ψ: F ⇒ d(F) of the functor category
    /// into the involutive structure φ_x = d_D(F(η_{C,x})) ∘ ψ_{d_C(x)} on F.
    pub fn fixed_point_to_involutive(
        &self,
        c_inv: &AntiInvolutiveCategory,
        d_inv: &AntiInvolutiveCategory,
        functor: usize,
        psi: usize,
    ) -> Result<InvolutiveFunctor, InvolutiveReport> {
        let f = &self.functors[functor];
        let psi = &self.nat_transes[psi];
        let db = d_inv.base();
        let phi: Vec<usize> = (0..c_inv.base().n_objects())
            .map(|x| {
                db.compose(
                    d_inv.d_mor(f.morphism_map[c_inv.eta(x)]),
                    psi.components[c_inv.d_obj(x)],
                )
                .expect("conversion composable")
            })
            .collect();
        validate_involutive_functor(c_inv, d_inv, f.clone(), phi)
    }
}

/// Materializes Fun(C, D) as a finite category (objects = functors,
/// morphisms = natural transformations) with d(F) = d_D ∘ F ∘ d_C,
/// (dα)_c = d_D(α_{d_C c}), and η whiskered from the two units.
pub fn functor_category_involution(
    c_inv: &AntiInvolutiveCategory,
    d_inv: &AntiInvolutiveCategory,
    cap: u128,
) -> Result<FunctorCategory, CatError> {
    let (cb, db) = (c_inv.base(), d_inv.base());
    let functors = enumerate_functors(cb, db, cap)?;
    let n_fun = functors.len();

    let mut nat_transes: Vec<NatTransData> = Vec::new();
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut identities = vec![0usize; n_fun];
    for i in 0..n_fun {
        for j in 0..n_fun {
            for alpha in enumerate_nat_transformations(&functors[i], &functors[j])? {
                let name = format!(
                    "nt{}_{}_{}",
                    i,
                    j,
                    alpha
                        .components
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join("_")
                );
                if i == j && alpha == NatTransData::identity(&functors[i]) {
                    identities[i] = morphisms.len();
                }
                morphisms.push(Morphism::new(name, i, j));
                nat_transes.push(alpha);
            }
        }
    }
    let objects: Vec<String> = (0..n_fun).map(|i| format!("F{i}")).collect();
    let index_of = |a: &NatTransData, dom: usize, cod: usize| -> usize {
        (0..nat_transes.len())
            .find(|&k| {
                morphisms[k].dom == dom
                    && morphisms[k].cod == cod
                    && nat_transes[k].components == a.components
            })
            .expect("composite transformation is in the enumeration")
    };
    let mut composites = Vec::new();
    for g in 0..nat_transes.len() {
        for f in 0..nat_transes.len() {
            if morphisms[f].cod != morphisms[g].dom {
                continue;
            }
            let v = nat_transes[g].vertical(&nat_transes[f]);
            composites.push((g, f, index_of(&v, morphisms[f].dom, morphisms[g].cod)));
        }
    }
    let fun_cat = FiniteCategory::validate(objects, morphisms.clone(), identities, &composites)
        .expect("functor category satisfies the category laws");

    // d on objects: F ↦ d_D ∘ F ∘ d_C
    let d_obj: Vec<usize> = functors
        .iter()
        .map(|f| {
            let object_map: Vec<usize> =
                (0..cb.n_objects()).map(|x| d_inv.d_obj(f.object_map[c_inv.d_obj(x)])).collect();
            let morphism_map: Vec<usize> = (0..cb.n_morphisms())
                .map(|m| d_inv.d_mor(f.morphism_map[c_inv.d_mor(m)]))
                .collect();
            functors
                .iter()
                .position(|g| g.object_map == object_map && g.morphism_map == morphism_map)
                .expect("d of a functor is in the enumeration")
        })
        .collect();
    // d on morphisms: (dα)_c = d_D(α_{d_C c}), from d(cod α) to d(dom α)
    let d_mor: Vec<usize> = (0..nat_transes.len())
        .map(|k| {
            let a = &nat_transes[k];
            let comps: Vec<usize> = (0..cb.n_objects())
                .map(|x| d_inv.d_mor(a.components[c_inv.d_obj(x)]))
                .collect();
            (0..nat_transes.len())
                .find(|&l| {
                    morphisms[l].dom == d_obj[morphisms[k].cod]
                        && morphisms[l].cod == d_obj[morphisms[k].dom]
                        && nat_transes[l].components == comps
                })
                .expect("d of a transformation is in the enumeration")
        })
        .collect();
    let d_fun = FunctorData::validate(fun_cat.opposite(), fun_cat.clone(), d_obj.clone(), d_mor)
        .expect("conjugation is a functor out of the opposite");

    // η at F, component at c: η_{D, F(d_C d_C c)} ∘ F(η_{C, c})
    let eta: Vec<usize> = (0..n_fun)
        .map(|i| {
            let f = &functors[i];
            let comps: Vec<usize> = (0..cb.n_objects())
                .map(|x| {
                    let ddx = c_inv.d_obj(c_inv.d_obj(x));
                    db.compose(d_inv.eta(f.object_map[ddx]), f.morphism_map[c_inv.eta(x)])
                        .expect("eta whiskering composable")
                })
                .collect();
            (0..nat_transes.len())
                .find(|&l| {
                    morphisms[l].dom == i
                        && morphisms[l].cod == d_obj[d_obj[i]]
                        && nat_transes[l].components == comps
                })
                .expect("whiskered unit is a natural transformation")
        })
        .collect();

    let involution = AntiInvolutiveCategory::validate(fun_cat, d_fun, eta)
        .expect("functor category with conjugation is anti-involutive");
    Ok(FunctorCategory { involution, functors, nat_transes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn t_of_b4_validates_and_eta_one_variant() {
        let t = fixtures::t_b4();
        assert_eq!(t.d_mor(1), 3);
        assert_eq!(t.eta(0), 0);
        // (B4, -, eta = 1): coherence 1 + d(1) = 1 - 1 = 0
        let a = fixtures::b4_eta_one();
        assert_eq!(a.eta(0), 1);
    }

    #[test]
    fn every_eta_coheres_with_negation_but_not_with_the_trivial_d() {
        // with d(g) = -g on B4, d(eta) + eta = 0 for every eta
        let b4 = fixtures::delooping_zn(4);
        let d_neg = fixtures::t_b4().d_functor().clone();
        for eta in 0..4 {
            assert!(AntiInvolutiveCategory::validate(b4.clone(), d_neg.clone(), vec![eta]).is_ok());
        }
        // with d(g) = g, eta = 1 fails: d(eta) + eta = 2
        let d_id = FunctorData::validate(b4.opposite(), b4.clone(), vec![0], (0..4).collect())
            .unwrap();
        let err = AntiInvolutiveCategory::validate(b4, d_id, vec![1]).unwrap_err();
        assert!(err
            .violations
            .iter()
            .any(|v| matches!(v, InvolutiveViolation::CoherenceFailure { .. })));
    }

    #[test]
    fn swap2_involution_validates() {
        let s = fixtures::swap2();
        assert_eq!(s.d_obj(0), 1);
        assert_eq!(s.eta(0), s.base().identity(0));
    }

    #[test]
    fn t_on_category_matches_dagger() {
        for d in fixtures::dagger_fixtures() {
            let t = T_on_category(&d);
            for f in 0..d.base().n_morphisms() {
                assert_eq!(t.d_mor(f), d.dag(f));
            }
        }
    }

    #[test]
    fn t_on_functor_trivial_data() {
        let b4 = fixtures::b4_dagger();
        let t = T_on_functor(&b4, &b4, &FunctorData::identity(b4.base())).unwrap();
        assert_eq!(t.phi, vec![0]);

        let b3 = fixtures::b3_dagger();
        let double = FunctorData::validate(
            b3.base().clone(),
            b3.base().clone(),
            vec![0],
            vec![0, 2, 1],
        )
        .unwrap();
        let t = T_on_functor(&b3, &b3, &double).unwrap();
        assert_eq!(t.phi, vec![0]);
    }

    #[test]
    fn t_is_faithful_into_involutive_data() {
        // F is a dagger functor iff (F, id) passes involutive validation.
        let b4 = fixtures::b4_dagger();
        let trivial =
            DaggerStructure::validate(b4.base().clone(), (0..4).collect()).unwrap();
        let id = FunctorData::identity(b4.base());
        let (a_neg, a_triv) = (T_on_category(&b4), T_on_category(&trivial));
        let phi = vec![b4.base().identity(0)];
        assert!(validate_involutive_functor(&a_neg, &a_neg, id.clone(), phi.clone()).is_ok());
        assert!(validate_involutive_functor(&a_neg, &a_triv, id.clone(), phi).is_err());
        assert!(!is_dagger_functor(&b4, &trivial, &id));
    }

    #[test]
    fn phi_two_on_t_b4_is_involutive_and_squares_to_identity_datum() {
        let t = fixtures::t_b4();
        let id = FunctorData::identity(t.base());
        let f2 = validate_involutive_functor(&t, &t, id.clone(), vec![2]).unwrap();
        let comp = compose_involutive_functors(&f2, &f2).unwrap();
        assert_eq!(comp.phi, vec![0]);
        let f0 = identity_involutive(&t);
        let c0 = compose_involutive_functors(&f0, &f0).unwrap();
        assert_eq!(c0.phi, vec![0]);
    }

    #[test]
    fn eta_square_rejects_mismatched_units() {
        // Id between (B4, -, eta=0) and (B4, -, eta=2)... eta=2 fails
        // coherence, so use eta=1 vs eta=3 (both cohere) with phi = 0:
        // square reads 0 + 1 vs 3 + 0, i.e. 1 != 3.
        let e1 = fixtures::b4_eta_one();
        let b4 = fixtures::delooping_zn(4);
        let e3 =
            AntiInvolutiveCategory::validate(b4.clone(), e1.d_functor().clone(), vec![3]).unwrap();
        let id = FunctorData::identity(&b4);
        let err = validate_involutive_functor(&e1, &e3, id, vec![0]).unwrap_err();
        assert!(err
            .violations
            .iter()
            .any(|v| matches!(v, InvolutiveViolation::EtaSquareFailure { .. })));
    }

    #[test]
    fn involutive_nat_trans_square() {
        // alpha = 1 between (F, 0) and (F, 2) on One -> T(B4):
        // rejected since 0 != -1 + 2 + 1 = 2.
        let t = fixtures::t_b4();
        let one = fixtures::one();
        let t_one = T_on_category(&fixtures::one_dagger());
        let f = enumerate_functors(&one, t.base(), 1 << 20).unwrap().remove(0);
        let f0 = validate_involutive_functor(&t_one, &t, f.clone(), vec![0]).unwrap();
        let f2 = validate_involutive_functor(&t_one, &t, f.clone(), vec![2]).unwrap();
        let alpha = NatTransData::validate(f.clone(), f.clone(), vec![1]).unwrap();
        assert!(validate_involutive_nat_trans(&f0, &f2, alpha.clone()).is_err());
        // identity transformation between equal data is involutive
        let id = NatTransData::identity(&f);
        assert!(validate_involutive_nat_trans(&f0, &f0, id).is_ok());
        // alpha = 1 from (F, 0) to (F, 0): square 0 = -1 + 0 + 1 holds
        assert!(validate_involutive_nat_trans(&f0, &f0, alpha).is_ok());
    }

    #[test]
    fn involutive_inverse_identity_and_twisted() {
        let t = fixtures::t_b4();
        let id = FunctorData::identity(t.base());
        let alpha = NatTransData::identity(&id);
        let adj = AdjointEquivalence {
            forward: id.clone(),
            backward: id.clone(),
            alpha: alpha.clone(),
            beta: alpha.clone(),
        };
        let f0 = identity_involutive(&t);
        let (g, _, _) = involutive_inverse_of_equivalence(&f0, &adj).unwrap();
        assert_eq!(g.phi, vec![0]);

        let f2 = validate_involutive_functor(&t, &t, id, vec![2]).unwrap();
        let (g2, _, _) = involutive_inverse_of_equivalence(&f2, &adj).unwrap();
        // psi = beta + (-phi^{-1}) + d(alpha) = 0 - 2 + 0 = 2
        assert_eq!(g2.phi, vec![2]);
    }

    #[test]
    fn involutive_inverse_m1_f4_scaling() {
        // Identity on M1(F4) equipped with phi_1 = omega^2 · omega = 1?
        // Model: alpha_V = omega scaling as the counit of a self-equivalence.
        let m1 = fixtures::m1_f4_dagger();
        let t = T_on_category(&m1);
        let base = t.base().clone();
        let id = FunctorData::identity(&base);
        let omega = fixtures::m1_f4_scalar(2);
        let omega2 = fixtures::m1_f4_scalar(3);
        let mk = |c: usize| {
            let comps: Vec<usize> =
                (0..base.n_objects()).map(|x| if x == 1 { c } else { base.identity(x) }).collect();
            NatTransData::validate(id.clone(), id.clone(), comps).unwrap()
        };
        // alpha = omega, beta = omega with both snakes: need beta = alpha^{-1}
        // as a self-equivalence of Id; snake: alpha ∘ beta^{-1}... use
        // promote to fix it up.
        let adj = crate::cat::promote_to_adjoint_equivalence(
            id.clone(),
            id.clone(),
            mk(omega),
            mk(omega2),
        )
        .unwrap();
        assert!(adj.snake_identities_hold());
        let f_triv = identity_involutive(&t);
        let (g, _, _) = involutive_inverse_of_equivalence(&f_triv, &adj).unwrap();
        // psi_1 = beta · id · conj(alpha) = omega^2 · omega^2? evaluate: the
        // formula yields conj(a)·a-type composites landing back at a scalar;
        // the validator is the real assertion here.
        assert!(g.phi.iter().all(|&p| base.is_iso(p)));
    }

    #[test]
    fn functor_category_one_to_tb4() {
        let t_one = T_on_category(&fixtures::one_dagger());
        let t = fixtures::t_b4();
        let fc = functor_category_involution(&t_one, &t, 1 << 20).unwrap();
        assert_eq!(fc.functors.len(), 1);
        assert_eq!(fc.nat_transes.len(), 4);
        // d(alpha) = -alpha
        for k in 0..4 {
            let a = &fc.nat_transes[k];
            let da = fc.involution.d_mor(k);
            assert_eq!(fc.nat_transes[da].components[0], (4 - a.components[0]) % 4);
        }
    }

    #[test]
    fn functor_category_swap2_fixed_functors() {
        let s = fixtures::swap2();
        let fc = functor_category_involution(&s, &s, 1 << 20).unwrap();
        assert_eq!(fc.functors.len(), 4);
        // d fixes exactly Id and swap; the two constants are exchanged
        let fixed: Vec<usize> =
            (0..4).filter(|&i| fc.involution.d_obj(i) == i).collect();
        let names: Vec<&[usize]> =
            fixed.iter().map(|&i| fc.functors[i].object_map.as_slice()).collect();
        assert!(names.contains(&[0, 1].as_slice()));
        assert!(names.contains(&[1, 0].as_slice()));
        assert_eq!(fixed.len(), 2);
    }
}
