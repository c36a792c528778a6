//! The named fixture suite used across the test battery: small categories
//! with daggers and anti-involutions, each well under 300 morphisms.
//!
//! Expensive fixtures (the matrix categories) are built once per process.

use std::sync::OnceLock;

use crate::cat::{FiniteCategory, FunctorData, Morphism};
use crate::dagger::DaggerStructure;
use crate::gens::{self, Gf, Mat};
use crate::involutive::{AntiInvolutiveCategory, T_on_category};

/// Terminal category: one object, one morphism.
pub fn one() -> FiniteCategory {
    FiniteCategory::validate(
        vec!["*".into()],
        vec![Morphism::new("id", 0, 0)],
        vec![0],
        &[],
    )
    .unwrap()
}

pub fn one_dagger() -> DaggerStructure {
    DaggerStructure::validate(one(), vec![0]).unwrap()
}

/// Walking isomorphism: objects a, b with mutually inverse f, g.
pub fn walking_isomorphism() -> FiniteCategory {
    FiniteCategory::validate(
        vec!["a".into(), "b".into()],
        vec![
            Morphism::new("id_a", 0, 0),
            Morphism::new("id_b", 1, 1),
            Morphism::new("f", 0, 1),
            Morphism::new("g", 1, 0),
        ],
        vec![0, 1],
        &[(3, 2, 0), (2, 3, 1)],
    )
    .unwrap()
}

/// Delooping of ℤ/n; morphism index = group element, element 0 = identity.
pub fn delooping_zn(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    gens::delooping(&refs, &gens::zn_table(n)).unwrap()
}

/// Delooping of S₃ (see [`gens::s3_table`] for the element order).
pub fn delooping_s3() -> FiniteCategory {
    let names: Vec<String> = (0..6).map(|i| format!("s{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    gens::delooping(&refs, &gens::s3_table()).unwrap()
}

pub fn discrete(n: usize) -> FiniteCategory {
    gens::discrete(n)
}

/// Chain poset c0 < … < c(n-1) with the order-reversing object map.
pub fn poset_chain(n: usize) -> (FiniteCategory, Vec<usize>) {
    gens::poset_chain(n)
}

/// (B3, g ↦ −g).
pub fn b3_dagger() -> DaggerStructure {
    DaggerStructure::validate(delooping_zn(3), (0..3).map(|g| (3 - g) % 3).collect()).unwrap()
}

/// (B4, g ↦ −g).
pub fn b4_dagger() -> DaggerStructure {
    DaggerStructure::validate(delooping_zn(4), (0..4).map(|g| (4 - g) % 4).collect()).unwrap()
}

/// B(S₃) with g ↦ g⁻¹.
pub fn s3_dagger() -> DaggerStructure {
    let t = gens::s3_table();
    let dag = (0..6).map(|g| gens::group_inverse(&t, g)).collect();
    DaggerStructure::validate(delooping_s3(), dag).unwrap()
}

fn matrix_bundle(q: usize, maxdim: usize) -> (FiniteCategory, Vec<usize>) {
    gens::matrix_category(q, maxdim).unwrap()
}

/// Plain matrix category M_{≤maxdim}(F_{q²}).
pub fn matrix_category(q: usize, maxdim: usize) -> FiniteCategory {
    if (q, maxdim) == (2, 2) {
        return m2_f4_dagger().base().clone();
    }
    matrix_bundle(q, maxdim).0
}

/// M₁(F₄) with conjugate transpose (objects: dimensions 0 and 1).
pub fn m1_f4_dagger() -> DaggerStructure {
    static CELL: OnceLock<DaggerStructure> = OnceLock::new();
    CELL.get_or_init(|| {
        let (cat, dag) = matrix_bundle(2, 1);
        DaggerStructure::validate(cat, dag).unwrap()
    })
    .clone()
}

/// M₂(F₄) with conjugate transpose (objects: dimensions 0, 1, 2).
pub fn m2_f4_dagger() -> DaggerStructure {
    static CELL: OnceLock<DaggerStructure> = OnceLock::new();
    CELL.get_or_init(|| {
        let (cat, dag) = matrix_bundle(2, 2);
        DaggerStructure::validate(cat, dag).unwrap()
    })
    .clone()
}

/// The field F₄ used by the matrix fixtures.
pub fn f4() -> Gf {
    Gf::new(4).unwrap()
}

/// Morphism index of the 1×1 matrix [code] in M₁(F₄).
pub fn m1_f4_scalar(code: usize) -> usize {
    let d = m1_f4_dagger();
    gens::matrix_index(d.base(), &f4(), &Mat { rows: 1, cols: 1, entries: vec![code] })
}

/// T(B4) = (B4, −, η = 0).
pub fn t_b4() -> AntiInvolutiveCategory {
    T_on_category(&b4_dagger())
}

/// T(B3).
pub fn t_b3() -> AntiInvolutiveCategory {
    T_on_category(&b3_dagger())
}

/// (B4, −, η = 1): a coherent anti-involution whose η is not the identity.
pub fn b4_eta_one() -> AntiInvolutiveCategory {
    let b4 = delooping_zn(4);
    let d = FunctorData::validate(
        b4.opposite(),
        b4.clone(),
        vec![0],
        (0..4).map(|g| (4 - g) % 4).collect(),
    )
    .unwrap();
    AntiInvolutiveCategory::validate(b4, d, vec![1]).unwrap()
}

/// Discrete two-object category with the swap anti-involution, η = id.
pub fn swap2() -> AntiInvolutiveCategory {
    gens::generate(&gens::GeneratorSpec::DiscreteInvolution { perm: vec![1, 0] })
        .unwrap()
        .involution
        .unwrap()
}

/// Discrete category on n objects with a given involutive permutation.
pub fn discrete_involution(perm: Vec<usize>) -> AntiInvolutiveCategory {
    gens::generate(&gens::GeneratorSpec::DiscreteInvolution { perm })
        .unwrap()
        .involution
        .unwrap()
}

/// 3-chain poset with the antitone involution.
pub fn poset_antitone_3() -> AntiInvolutiveCategory {
    gens::generate(&gens::GeneratorSpec::PosetAntitone { n: 3 })
        .unwrap()
        .involution
        .unwrap()
}

/// Product Swap2 × T(B3) with the componentwise anti-involution.
pub fn product_swap2_tb3() -> AntiInvolutiveCategory {
    let (s, t) = (swap2(), t_b3());
    let (sb, tb) = (s.base().clone(), t.base().clone());
    let prod = gens::product(&sb, &tb).unwrap();
    let obj = |x: usize, y: usize| x * tb.n_objects() + y;
    let mor = |f: usize, g: usize| f * tb.n_morphisms() + g;
    let d_obj: Vec<usize> = (0..sb.n_objects())
        .flat_map(|x| (0..tb.n_objects()).map(move |y| (x, y)))
        .map(|(x, y)| obj(s.d_obj(x), t.d_obj(y)))
        .collect();
    let d_mor: Vec<usize> = (0..sb.n_morphisms())
        .flat_map(|f| (0..tb.n_morphisms()).map(move |g| (f, g)))
        .map(|(f, g)| mor(s.d_mor(f), t.d_mor(g)))
        .collect();
    let eta: Vec<usize> = (0..sb.n_objects())
        .flat_map(|x| (0..tb.n_objects()).map(move |y| (x, y)))
        .map(|(x, y)| mor(s.eta(x), t.eta(y)))
        .collect();
    let d = FunctorData::validate(prod.opposite(), prod.clone(), d_obj, d_mor).unwrap();
    AntiInvolutiveCategory::validate(prod, d, eta).unwrap()
}

/// All dagger fixtures, small first.
pub fn dagger_fixtures() -> Vec<DaggerStructure> {
    vec![one_dagger(), b3_dagger(), b4_dagger(), s3_dagger(), m1_f4_dagger(), m2_f4_dagger()]
}

/// All anti-involutive fixtures with stable names.
pub fn anti_involutive_fixtures() -> Vec<(&'static str, AntiInvolutiveCategory)> {
    vec![
        ("T(One)", T_on_category(&one_dagger())),
        ("T(B3)", t_b3()),
        ("T(B4)", t_b4()),
        ("(B4,-,eta=1)", b4_eta_one()),
        ("Swap2", swap2()),
        ("T(B(S3))", T_on_category(&s3_dagger())),
        ("T(M1(F4))", T_on_category(&m1_f4_dagger())),
        ("T(M2(F4))", T_on_category(&m2_f4_dagger())),
        ("poset-antitone-3", poset_antitone_3()),
        ("discrete-3-swap", discrete_involution(vec![1, 0, 2])),
        ("Swap2 x T(B3)", product_swap2_tb3()),
    ]
}
