//! Coalgebra/algebra layer: the whole catalog satisfies its axioms, duality
//! is an exact transpose, the antipode solver reproduces stored antipodes,
//! and deliberately broken structures are caught with witnesses.

use twistlab::zoo::{self, ZooItem};
use twistlab::{
    compute_antipode, dual_algebra, dual_coalgebra, is_algebra_morphism, is_coalgebra_morphism,
    opposite_algebra, opposite_coalgebra, tensor_algebra, tensor_coalgebra, Coalgebra, Field,
    LinMap, PrimeField, Rationals,
};

fn q() -> Rationals {
    Rationals
}

#[test]
fn every_catalog_item_satisfies_its_axioms_over_q_and_f7() {
    for (name, _) in zoo::list() {
        for field_name in ["Q", "F7"] {
            let report = match field_name {
                "Q" => match zoo::build(q(), name).unwrap() {
                    ZooItem::Coalg(c) => c.check(),
                    ZooItem::Hopf(h) => h.check(),
                    ZooItem::Pair(p) => {
                        let mut r = p.left.check();
                        r.merge(p.right.check());
                        r.merge(p.check());
                        r
                    }
                },
                _ => match zoo::build(PrimeField::new(7).unwrap(), name).unwrap() {
                    ZooItem::Coalg(c) => c.check(),
                    ZooItem::Hopf(h) => h.check(),
                    ZooItem::Pair(p) => {
                        let mut r = p.left.check();
                        r.merge(p.right.check());
                        r.merge(p.check());
                        r
                    }
                },
            };
            assert!(
                report.passed(),
                "catalog item {name} over {field_name} failed: {:?}",
                report.checks.iter().find(|c| !c.passed)
            );
        }
    }
}

#[test]
fn sweedler_is_rejected_in_characteristic_two() {
    let f2 = PrimeField::new(2).unwrap();
    assert!(
        zoo::sweedler_h4(f2, "H4").is_err(),
        "the 4-dimensional example must reject characteristic 2"
    );
}

#[test]
fn sweedler_antipode_squared_is_not_the_identity() {
    let h = zoo::sweedler_h4(q(), "H4").unwrap();
    let s2 = h.antipode.compose(&h.antipode).unwrap();
    let id = h.bialgebra.coalgebra.id();
    assert_ne!(s2, id, "this Hopf algebra has antipode of order 4, not 2");
    let s4 = s2.compose(&s2).unwrap();
    assert_eq!(s4, id, "the antipode must have order exactly 4");
}

#[test]
fn sweedler_is_neither_commutative_nor_cocommutative() {
    let h = zoo::sweedler_h4(q(), "H4").unwrap();
    assert!(!h.bialgebra.algebra.is_commutative());
    assert!(!h.bialgebra.coalgebra.is_cocommutative());
}

#[test]
fn matrix_coalgebra_is_not_cocommutative_but_group_algebras_are() {
    assert!(!zoo::matrix_coalgebra(q(), "M2", 2).unwrap().is_cocommutative());
    let kc3 = zoo::group_algebra(q(), "C", &zoo::cyclic_table(3)).unwrap();
    assert!(kc3.bialgebra.coalgebra.is_cocommutative());
    let fnc3 = zoo::function_algebra(q(), "D", &zoo::cyclic_table(3)).unwrap();
    assert!(
        fnc3.bialgebra.coalgebra.is_cocommutative(),
        "functions on an abelian group are cocommutative"
    );
}

#[test]
fn non_group_tables_are_rejected_with_reasons() {
    // Not associative: a 2x2 table with no structure.
    let bad = vec![vec![0, 1], vec![1, 1]];
    let err = zoo::group_algebra(q(), "G", &bad).unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("associativity") || msg.contains("inverse") || msg.contains("identity"),
        "unexpected rejection reason: {msg}"
    );
    // Out-of-range entry.
    let bad = vec![vec![0, 1], vec![1, 5]];
    assert!(zoo::group_algebra(q(), "G", &bad).is_err());
}

#[test]
fn antipode_solver_reproduces_stored_antipodes() {
    for name in ["kc3", "kc4", "kv4", "fnc3", "sweedler"] {
        let ZooItem::Hopf(h) = zoo::build(q(), name).unwrap() else {
            panic!("{name} should be a Hopf algebra");
        };
        let solved = compute_antipode(&h.bialgebra).unwrap();
        assert_eq!(solved, h.antipode, "solver disagrees with {name}");
    }
}

#[test]
fn antipode_solver_fails_on_a_bialgebra_without_one() {
    // The monoid algebra of the two-element monoid {1, s} with s^2 = s is a
    // bialgebra (s group-like) but has no antipode: s would need an inverse.
    let field = q();
    let table = vec![vec![0, 1], vec![1, 1]];
    let space = twistlab::TensorSpace::single("M", 2);
    let square = space.tensor(&space);
    let one = field.one();
    let mut mul_entries = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            mul_entries.push((table[i][j], i * 2 + j, one.clone()));
        }
    }
    let mul = LinMap::from_entries(field.clone(), &square, &space, &mul_entries).unwrap();
    let unit = LinMap::from_entries(
        field.clone(),
        &twistlab::TensorSpace::unit(),
        &space,
        &[(0, 0, one.clone())],
    )
    .unwrap();
    let algebra = twistlab::Algebra::new(field.clone(), space.clone(), mul, unit).unwrap();
    let delta = LinMap::from_entries(
        field.clone(),
        &space,
        &square,
        &[(0, 0, one.clone()), (3, 1, one.clone())],
    )
    .unwrap();
    let eps = LinMap::from_entries(
        field.clone(),
        &space,
        &twistlab::TensorSpace::unit(),
        &[(0, 0, one.clone()), (0, 1, one.clone())],
    )
    .unwrap();
    let coalgebra = Coalgebra::new(field.clone(), space, delta, eps).unwrap();
    let b = twistlab::Bialgebra::new(coalgebra, algebra).unwrap();
    assert!(b.check().passed(), "the monoid bialgebra itself is valid");
    assert!(
        compute_antipode(&b).is_err(),
        "an idempotent group-like cannot have an antipode"
    );
}

#[test]
fn broken_coassociativity_yields_a_witness() {
    // Corrupt the matrix coalgebra's coproduct in one entry.
    let mut c = zoo::matrix_coalgebra(q(), "M2", 2).unwrap();
    let mut mat = c.delta.mat.clone();
    mat.set(0, 1, q().one());
    c.delta = LinMap::new(q(), c.delta.domain.clone(), c.delta.codomain.clone(), mat).unwrap();
    let report = c.check();
    assert!(!report.passed());
    let failing = report.checks.iter().find(|ch| !ch.passed).unwrap();
    let w = failing.witness.as_ref().expect("failure carries a witness");
    assert_eq!(w.row_multi.len(), failing_witness_arity(&failing.name));
    // The witness must point at an actual discrepancy: both values differ.
    assert_ne!(w.left_value, w.right_value);
}

fn failing_witness_arity(name: &str) -> usize {
    match name {
        "coassociativity" => 3,
        "counit-left" | "counit-right" => 1,
        other => panic!("unexpected failing check {other}"),
    }
}

#[test]
fn dual_of_matrix_coalgebra_is_the_matrix_algebra() {
    // The dual algebra of the 2x2 matrix coalgebra has e_(i,j) * e_(k,l) =
    // [j = k] e_(i,l): verify by checking structure constants.
    let c = zoo::matrix_coalgebra(q(), "M2", 2).unwrap();
    let a = dual_algebra(&c);
    assert!(a.check().passed());
    let n = 2;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let left = twistlab::basis_vec(&q(), &a.space, i * n + j);
                    let right = twistlab::basis_vec(&q(), &a.space, k * n + l);
                    let prod = a.product(&left, &right).unwrap();
                    for (idx, v) in prod.iter().enumerate() {
                        let expect = if j == k && idx == i * n + l {
                            q().one()
                        } else {
                            q().zero()
                        };
                        assert_eq!(*v, expect, "e({i}{j}) e({k}{l}) coefficient {idx}");
                    }
                }
            }
        }
    }
    assert!(!a.is_commutative(), "2x2 matrix algebra is noncommutative");
}

#[test]
fn double_dual_returns_the_original_matrices() {
    let c = zoo::matrix_coalgebra(q(), "M2", 2).unwrap();
    let cdd = dual_coalgebra(&dual_algebra(&c));
    assert_eq!(cdd.delta.mat, c.delta.mat);
    assert_eq!(cdd.eps.mat, c.eps.mat);
}

#[test]
fn dual_exchanges_group_algebra_and_function_algebra() {
    // The dual algebra of the kC3 coalgebra is pointwise multiplication
    // (diagonal), i.e. the function-algebra product; and dually.
    let kc3 = zoo::group_algebra(q(), "C", &zoo::cyclic_table(3)).unwrap();
    let fnc3 = zoo::function_algebra(q(), "C'", &zoo::cyclic_table(3)).unwrap();
    let dual = dual_algebra(&kc3.bialgebra.coalgebra);
    assert_eq!(dual.mul.mat, fnc3.bialgebra.algebra.mul.mat);
    assert_eq!(dual.unit.mat, fnc3.bialgebra.algebra.unit.mat);
    let dual_co = dual_coalgebra(&kc3.bialgebra.algebra);
    assert_eq!(dual_co.delta.mat, fnc3.bialgebra.coalgebra.delta.mat);
    assert_eq!(dual_co.eps.mat, fnc3.bialgebra.coalgebra.eps.mat);
}

#[test]
fn tensor_coalgebra_with_the_trivial_factor_is_the_original() {
    let c = zoo::matrix_coalgebra(q(), "M2", 2).unwrap();
    let triv = zoo::trivial_coalgebra(q(), "I");
    let left = tensor_coalgebra(&triv, &c).unwrap();
    assert!(left.check().passed());
    assert_eq!(left.delta.mat, c.delta.mat, "k (x) C should carry the same matrices");
    let right = tensor_coalgebra(&c, &triv).unwrap();
    assert_eq!(right.delta.mat, c.delta.mat, "C (x) k should carry the same matrices");
}

#[test]
fn tensor_coalgebra_of_catalog_pairs_is_a_coalgebra() {
    let kc2 = zoo::group_algebra(q(), "C", &zoo::cyclic_table(2)).unwrap();
    let fnc2 = zoo::function_algebra(q(), "D", &zoo::cyclic_table(2)).unwrap();
    let t = tensor_coalgebra(&kc2.bialgebra.coalgebra, &fnc2.bialgebra.coalgebra).unwrap();
    assert!(t.check().passed());
    let m2 = zoo::matrix_coalgebra(q(), "M2", 2).unwrap();
    let u = tensor_coalgebra(&m2, &m2).unwrap();
    assert!(u.check().passed());
    // And the algebra side.
    let ta = tensor_algebra(&kc2.bialgebra.algebra, &fnc2.bialgebra.algebra).unwrap();
    assert!(ta.check().passed());
}

#[test]
fn opposites_are_involutive_and_valid() {
    let m2 = zoo::matrix_coalgebra(q(), "M2", 2).unwrap();
    let op = opposite_coalgebra(&m2);
    assert!(op.check().passed());
    assert_ne!(op.delta.mat, m2.delta.mat, "non-cocommutative: flip changes the coproduct");
    let opop = opposite_coalgebra(&op);
    assert_eq!(opop.delta.mat, m2.delta.mat);

    let h = zoo::sweedler_h4(q(), "H4").unwrap();
    let aop = opposite_algebra(&h.bialgebra.algebra);
    assert!(aop.check().passed());
    let aopop = opposite_algebra(&aop);
    assert_eq!(aopop.mul.mat, h.bialgebra.algebra.mul.mat);
}

#[test]
fn antipode_is_a_morphism_into_the_opposites() {
    // S: H -> H^op as algebras, and H -> H^cop as coalgebras.
    let h = zoo::sweedler_h4(q(), "H4").unwrap();
    let alg = &h.bialgebra.algebra;
    let coalg = &h.bialgebra.coalgebra;
    let r = is_algebra_morphism(&h.antipode, alg, &opposite_algebra(alg));
    assert!(r.passed(), "antipode must reverse products");
    let r = is_coalgebra_morphism(&h.antipode, coalg, &opposite_coalgebra(coalg));
    assert!(r.passed(), "antipode must reverse coproducts");
    // But S is NOT an algebra morphism H -> H (noncommutative case).
    let r = is_algebra_morphism(&h.antipode, alg, alg);
    assert!(!r.passed());
}

#[test]
fn identity_is_a_morphism_and_a_swapped_basis_map_is_not() {
    let kc3 = zoo::group_algebra(q(), "C", &zoo::cyclic_table(3)).unwrap();
    let c = &kc3.bialgebra.coalgebra;
    assert!(is_coalgebra_morphism(&c.id(), c, c).passed());
    // Swapping two group-likes IS a coalgebra morphism (any bijection of the
    // group-like basis is); but a map sending a group-like to a sum is not.
    let f = LinMap::from_entries(
        q(),
        &c.space,
        &c.space,
        &[
            (0, 0, q().one()),
            (1, 1, q().one()),
            (1, 2, q().one()),
            (2, 2, q().one()),
        ],
    )
    .unwrap();
    assert!(!is_coalgebra_morphism(&f, c, c).passed());
}
