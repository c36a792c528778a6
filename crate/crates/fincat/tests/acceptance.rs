//! Acceptance gate: one test (and one pass/fail line) per criterion.

use fincat::cat::{FunctorData, NatTransData};
use fincat::dagger;
use fincat::dsl;
use fincat::fixtures;
use fincat::herm;
use fincat::involutive::{self, T_on_category};

fn pass(n: usize, what: &str) {
    println!("[PASS] criterion {n}: {what}");
}

#[test]
fn criterion_01_completions_satisfy_the_dagger_axioms() {
    for (name, a) in fixtures::anti_involutive_fixtures() {
        herm::herm_completion(&a)
            .validate_dagger_axioms()
            .unwrap_or_else(|e| panic!("[FAIL] criterion 1 on {name}: {e}"));
    }
    pass(1, "herm_completion passes the dagger axioms on every fixture");
}

#[test]
fn criterion_02_completions_are_indefinite() {
    for (name, a) in fixtures::anti_involutive_fixtures() {
        let v = herm::herm_completion(&a).is_indefinite();
        assert!(v.indefinite, "[FAIL] criterion 2 on {name}: {:?}", v.counterexample);
    }
    pass(2, "is_indefinite holds on every completion");
}

#[test]
fn criterion_03_unit_is_an_equivalence_iff_indefinite() {
    let expected = [
        ("One", true),
        ("B3", true),
        ("B4", false),
        ("B(S3)", false),
        ("M1(F4)", true),
        ("M2(F4)", true),
    ];
    for (d, (name, want)) in fixtures::dagger_fixtures().into_iter().zip(expected) {
        let indefinite = dagger::is_indefinite(&d).indefinite;
        let h = herm::herm_completion(&T_on_category(&d));
        let unit_equiv = herm::unit_verdict(&d, &h).holds();
        assert_eq!(indefinite, want, "[FAIL] criterion 3: indefiniteness of {name}");
        assert_eq!(unit_equiv, want, "[FAIL] criterion 3: unit verdict on {name}");
        // cross-check through the materialized completion where feasible
        if h.n_morphisms() <= 2048 {
            let mat = h.to_finite(2048).unwrap();
            let u = herm::unit_U_finite(&d, &h, &mat);
            let v = dagger::is_dagger_equivalence(&d, &mat.dagger, &u).unwrap();
            assert_eq!(v.holds(), want, "[FAIL] criterion 3: materialized unit on {name}");
        }
    }
    pass(3, "U is a dagger equivalence exactly on the indefinite fixtures");
}

#[test]
fn criterion_04_counit_is_an_equivalence_onto_the_restriction() {
    for (name, a) in fixtures::anti_involutive_fixtures() {
        let h = herm::herm_completion(&a);
        assert!(herm::counit_checks(&a, &h), "[FAIL] criterion 4 on {name}: coherence");
        assert!(
            herm::counit_is_equivalence_onto_restriction(&a, &h),
            "[FAIL] criterion 4 on {name}: equivalence onto restriction"
        );
        if h.n_morphisms() <= 2048 {
            let mat = h.to_finite(2048).unwrap();
            herm::counit_K_finite(&a, &h, &mat)
                .unwrap_or_else(|e| panic!("[FAIL] criterion 4 on {name}: {e}"));
        }
    }
    // the two empty-image cases really are empty
    assert_eq!(herm::herm_completion(&fixtures::swap2()).n_points(), 0);
    assert_eq!(herm::herm_completion(&fixtures::b4_eta_one()).n_points(), 0);
    pass(4, "K validates and is an equivalence onto restrict_exists_fix everywhere");
}

#[test]
fn criterion_05_triangle_identities_hold_strictly() {
    for (name, a) in fixtures::anti_involutive_fixtures() {
        assert!(herm::check_triangle_anti(&a), "[FAIL] criterion 5 on {name}");
    }
    for d in fixtures::dagger_fixtures() {
        assert!(herm::check_triangle_dagger(&d), "[FAIL] criterion 5 (dagger side)");
    }
    // materialized, field-level functor equality on the small fixtures
    for a in [
        T_on_category(&fixtures::one_dagger()),
        fixtures::t_b3(),
        fixtures::t_b4(),
        fixtures::poset_antitone_3(),
    ] {
        assert!(herm::check_triangle_anti_finite(&a, 4096).unwrap());
    }
    pass(5, "both triangle composites equal the identity on the nose");
}

#[test]
fn criterion_06_transfer_orbits_equal_unitary_classes() {
    for (name, a) in fixtures::anti_involutive_fixtures() {
        let h = herm::herm_completion(&a);
        assert!(h.n_points() <= 60);
        assert_eq!(
            h.transfer_classes(),
            h.brute_force_unitary_classes(),
            "[FAIL] criterion 6 on {name}"
        );
    }
    pass(6, "transfer orbits match brute-force unitary classes on every completion");
}

// Independent F4 arithmetic for criterion 7, written against a different
// representation (bit pairs x = b0 + b1*w with w^2 = w + 1) than the
// table-driven field in the library.
mod f4_oracle {
    pub fn mul(a: u8, b: u8) -> u8 {
        let (a0, a1) = (a & 1, a >> 1);
        let (b0, b1) = (b & 1, b >> 1);
        let c0 = (a0 & b0) ^ (a1 & b1);
        let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        c0 | (c1 << 1)
    }
    pub fn add(a: u8, b: u8) -> u8 {
        a ^ b
    }
    pub fn conj(a: u8) -> u8 {
        mul(a, a) // Frobenius x -> x^2
    }
    pub type M2 = [u8; 4]; // row major [a b; c d]
    pub fn mat_mul(x: &M2, y: &M2) -> M2 {
        [
            add(mul(x[0], y[0]), mul(x[1], y[2])),
            add(mul(x[0], y[1]), mul(x[1], y[3])),
            add(mul(x[2], y[0]), mul(x[3], y[2])),
            add(mul(x[2], y[1]), mul(x[3], y[3])),
        ]
    }
    pub fn conj_transpose(x: &M2) -> M2 {
        [conj(x[0]), conj(x[2]), conj(x[1]), conj(x[3])]
    }
    pub fn det(x: &M2) -> u8 {
        add(mul(x[0], x[3]), mul(x[1], x[2]))
    }
    pub fn all_matrices() -> Vec<M2> {
        let mut out = Vec::with_capacity(256);
        for code in 0..256u32 {
            out.push([
                (code & 3) as u8,
                ((code >> 2) & 3) as u8,
                ((code >> 4) & 3) as u8,
                ((code >> 6) & 3) as u8,
            ]);
        }
        out
    }
}

#[test]
fn criterion_07_hermitian_matrix_counts_over_f4() {
    use f4_oracle::*;
    // oracle side
    let invertible_hermitian: Vec<M2> = all_matrices()
        .into_iter()
        .filter(|m| conj_transpose(m) == *m && det(m) != 0)
        .collect();
    assert_eq!(invertible_hermitian.len(), 10, "[FAIL] criterion 7: oracle count");
    let invertibles: Vec<M2> =
        all_matrices().into_iter().filter(|m| det(m) != 0).collect();
    // one transfer class: every H is A^dagger * A^dagger-free congruent to
    // every other via H' = A^H H A
    let h0 = invertible_hermitian[0];
    for h in &invertible_hermitian {
        assert!(
            invertibles
                .iter()
                .any(|a| mat_mul(&mat_mul(&conj_transpose(a), &h0), a) == *h),
            "[FAIL] criterion 7: oracle finds a second congruence class"
        );
    }
    // engine side
    let t = T_on_category(&fixtures::m2_f4_dagger());
    let h = herm::herm_completion(&t);
    let dim2: Vec<usize> = (0..h.n_points()).filter(|&i| h.points()[i].object == 2).collect();
    assert_eq!(dim2.len(), 10, "[FAIL] criterion 7: engine count");
    let classes = h.transfer_classes();
    let dim2_classes: std::collections::HashSet<usize> =
        dim2.iter().map(|&i| classes.class_of(i)).collect();
    assert_eq!(dim2_classes.len(), 1, "[FAIL] criterion 7: transfer classes");
    assert_eq!(classes.classes.len(), 3, "[FAIL] criterion 7: pi0^U");
    pass(7, "10 invertible Hermitian 2x2 matrices over F4, 1 transfer class, 3 unitary classes");
}

#[test]
fn criterion_08_b4_fixed_point_ledger() {
    let b4 = fixtures::b4_dagger();
    let t = fixtures::t_b4();
    let fps = herm::enumerate_fixed_points(&t);
    assert_eq!(
        fps.iter().map(|p| p.h).collect::<Vec<_>>(),
        vec![0, 2],
        "[FAIL] criterion 8: fixed points"
    );
    let p = herm::validate_positivity(&t, dagger::canonical_positivity_sets(&b4)).unwrap();
    assert_eq!(p.sets, vec![vec![0]], "[FAIL] criterion 8: canonical positivity");
    assert_eq!(herm::herm_P(&t, &p).n_points(), 1, "[FAIL] criterion 8: herm_P size");
    let v = herm::check_Tp_biequivalence(&b4);
    assert!(v.holds(), "[FAIL] criterion 8: {v:?}");
    pass(8, "B4 ledger: fixed points {0,2}, positivity {0}, herm_P 1 object, T_P passes");
}

#[test]
fn criterion_09_constructive_involutive_inverse() {
    // identity equivalences on every fixture
    for (name, a) in fixtures::anti_involutive_fixtures() {
        let id = involutive::identity_involutive(&a);
        let adj = fincat::promote_to_adjoint_equivalence(
            id.functor.clone(),
            id.functor.clone(),
            NatTransData::identity(&id.functor),
            NatTransData::identity(&id.functor),
        )
        .unwrap();
        let (g, alpha, beta) = involutive::involutive_inverse_of_equivalence(&id, &adj)
            .unwrap_or_else(|e| panic!("[FAIL] criterion 9 on {name}: {e:?}"));
        let _ = (g, alpha, beta);
    }
    // twisted self-equivalence of T(B4) with phi = 2
    let t = fixtures::t_b4();
    let idf = FunctorData::identity(t.base());
    let f2 = involutive::validate_involutive_functor(&t, &t, idf.clone(), vec![2]).unwrap();
    let adj = fincat::promote_to_adjoint_equivalence(
        idf.clone(),
        idf.clone(),
        NatTransData::identity(&idf),
        NatTransData::identity(&idf),
    )
    .unwrap();
    let (g, _, _) = involutive::involutive_inverse_of_equivalence(&f2, &adj).unwrap();
    assert_eq!(g.phi, vec![2]);

    // the F4 scaling instance: identity functor on T(M1(F4)) promoted along
    // the natural isomorphism with component omega
    let m1 = fixtures::m1_f4_dagger();
    let tm1 = T_on_category(&m1);
    let idm = FunctorData::identity(tm1.base());
    let omega = fixtures::m1_f4_scalar(2);
    let omega2 = fixtures::m1_f4_scalar(3);
    let mk = |c: usize| {
        NatTransData::validate(
            idm.clone(),
            idm.clone(),
            vec![tm1.base().identity(0), c],
        )
        .unwrap()
    };
    let adj =
        fincat::promote_to_adjoint_equivalence(idm.clone(), idm.clone(), mk(omega), mk(omega2))
            .unwrap();
    let f_inv = involutive::validate_involutive_functor(
        &tm1,
        &tm1,
        idm.clone(),
        (0..tm1.base().n_objects()).map(|x| tm1.base().identity(x)).collect(),
    )
    .unwrap();
    let (g, alpha, beta) = involutive::involutive_inverse_of_equivalence(&f_inv, &adj).unwrap();
    let _ = (g, alpha, beta);
    pass(9, "involutive inverses of equivalences validate, including the F4 scaling case");
}

#[test]
fn criterion_10_functor_category_corollary() {
    let one = fixtures::one_dagger();
    let b4 = fixtures::b4_dagger();
    let rep = herm::dagger_functors_vs_fixed_points(&one, &b4, 1 << 20).unwrap();
    assert_eq!(rep.fixed_points.len(), 2, "[FAIL] criterion 10: fixed points");
    assert_eq!(rep.dagger_functors.len(), 1, "[FAIL] criterion 10: dagger functors");
    assert!(rep.embedding_fully_faithful, "[FAIL] criterion 10: embedding");
    assert_eq!(
        rep.essential_image, rep.positivity_preserving,
        "[FAIL] criterion 10: image vs positivity"
    );
    assert_eq!(rep.essential_image.len(), 1);
    let k = rep.essential_image[0];
    let psi = &rep.functor_category.nat_transes[rep.fixed_points[k].h];
    assert_eq!(psi.components, vec![0], "[FAIL] criterion 10: survivor is (F, 0)");
    pass(10, "on (One, B4): 2 fixed points, 1 dagger functor, image = positivity-preserving = {(F,0)}");
}

#[test]
fn criterion_11_dsl_roundtrip_is_the_identity() {
    let mut docs: Vec<dsl::Document> = Vec::new();
    for (cat, name) in [
        (dsl::sanitize_names(&fixtures::one()), "One"),
        (fixtures::walking_isomorphism(), "Walk"),
        (fixtures::delooping_zn(3), "B3"),
        (fixtures::delooping_zn(4), "B4"),
        (fixtures::delooping_s3(), "BS3"),
        (dsl::sanitize_names(fixtures::m1_f4_dagger().base()), "M1F4"),
        (fixtures::poset_chain(3).0, "P3"),
        (fixtures::discrete(3), "D3"),
        (dsl::sanitize_names(fixtures::product_swap2_tb3().base()), "Prod"),
    ] {
        docs.push(dsl::Document {
            categories: vec![(name.to_string(), cat)],
            ..Default::default()
        });
    }
    // a document with every block kind
    let b3 = fixtures::delooping_zn(3);
    let b3d = fixtures::b3_dagger();
    let t = fixtures::t_b3();
    let p = herm::validate_positivity(&t, dagger::canonical_positivity_sets(&b3d)).unwrap();
    docs.push(dsl::Document {
        categories: vec![("B3".into(), b3.clone())],
        daggers: vec![("neg".into(), "B3".into(), b3d)],
        involutions: vec![("T".into(), "B3".into(), t)],
        positivities: vec![("P".into(), "T".into(), p)],
        functors: vec![(
            "sq".into(),
            "B3".into(),
            "B3".into(),
            FunctorData::validate(b3.clone(), b3, vec![0], vec![0, 2, 1]).unwrap(),
        )],
    });
    for doc in &docs {
        let printed = dsl::print(doc);
        let reparsed = dsl::parse(&printed)
            .unwrap_or_else(|e| panic!("[FAIL] criterion 11: reparse failed: {e}\n{printed}"));
        assert_eq!(&reparsed, doc, "[FAIL] criterion 11: parse . print is not the identity");
        assert_eq!(dsl::print(&reparsed), printed, "[FAIL] criterion 11: printer not stable");
    }
    pass(11, "parse . print is the identity and the printer is byte-stable");
}
