//! Tests for twist equivalence: witness validation, the intertwining
//! verdict and its transported consequences, strong isomorphism, witness
//! transport for conormality certificates, and the two witness searches.

use twistlab::zoo::{cyclic_table, function_algebra, group_algebra, group_dual_pairing};
use twistlab::{
    are_equivalent, compose_with_tw, conv_inverse, f_inv, flip, is_conormal, is_z_conormal,
    search_theta, smash_twist, solve_counit, strongly_isomorphic, transport_z, twisted_coproduct,
    Bialgebra, Coalgebra, Error, Field, Functional, LinMap, PrimeField, Rationals,
    ThetaSearchSpace, Twist, TwistedCoalgebra,
};

/// kC2 and the functions on C2, with the canonical pairing `<e_x, d_y> = [x = y]`.
fn pairing_c2() -> (Bialgebra<Rationals>, Bialgebra<Rationals>, Functional<Rationals>) {
    let pair = group_dual_pairing(Rationals, &cyclic_table(2), "C", "D")
        .expect("the canonical pairing is well-formed");
    let phi = Functional::from_linmap(&pair.form).expect("the form lands in the ground field");
    (pair.left, pair.right, phi)
}

/// Two copies of the group coalgebra kC2 under different labels.
fn two_group_coalgebras() -> (Coalgebra<Rationals>, Coalgebra<Rationals>) {
    let c = group_algebra(Rationals, "C", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;
    let d = group_algebra(Rationals, "D", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;
    (c, d)
}

/// A functional on kC2 (x) kC2 given by its four basis values.
fn group_functional(
    c: &Coalgebra<Rationals>,
    d: &Coalgebra<Rationals>,
    values: [i64; 4],
) -> Functional<Rationals> {
    let coeffs: Vec<_> = values.iter().map(|&v| Rationals.from_i64(v)).collect();
    Functional::new(Rationals, c.space.tensor(&d.space), coeffs).expect("four coefficients")
}

/// H = kC2 acting on kC3 by inversion, functions on C2 coacting by their
/// grading, and the smash twist they induce.
fn smash_fixture() -> (Twist<Rationals>, Coalgebra<Rationals>, Coalgebra<Rationals>) {
    let h = group_algebra(Rationals, "H", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra;
    let c = group_algebra(Rationals, "C", &cyclic_table(3))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;
    let d = function_algebra(Rationals, "D", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;

    // x <| e = x, x <| g = x^-1.
    let mut act_entries = Vec::new();
    for x in 0..3 {
        act_entries.push((x, x * 2, Rationals.one()));
        act_entries.push(((3 - x) % 3, x * 2 + 1, Rationals.one()));
    }
    let act = LinMap::from_entries(
        Rationals,
        &c.space.tensor(&h.coalgebra.space),
        &c.space,
        &act_entries,
    )
    .expect("in range");

    // d_t -> d_t (x) t.
    let coact_entries: Vec<_> = (0..2).map(|t| (t * 2 + t, t, Rationals.one())).collect();
    let coact = LinMap::from_entries(
        Rationals,
        &d.space,
        &d.space.tensor(&h.coalgebra.space),
        &coact_entries,
    )
    .expect("in range");

    let chi = smash_twist(&h, &c, &act, &d, &coact).expect("the fixture satisfies all axioms");
    (chi, c, d)
}

/// The map sending basis vector `i` of the coalgebra to basis vector `perm[i]`.
fn perm_map<F: Field>(c: &Coalgebra<F>, perm: &[usize]) -> LinMap<F> {
    let entries: Vec<_> = perm
        .iter()
        .enumerate()
        .map(|(i, &pi)| (pi, i, c.field.one()))
        .collect();
    LinMap::from_entries(c.field.clone(), &c.space, &c.space, &entries).expect("in range")
}

/// The diagonal map with the given basis scalings.
fn diag_map(c: &Coalgebra<Rationals>, values: &[i64]) -> LinMap<Rationals> {
    let entries: Vec<_> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| (i, i, Rationals.from_i64(v)))
        .collect();
    LinMap::from_entries(Rationals, &c.space, &c.space, &entries).expect("in range")
}

/// Conjugate a twist by the factorwise automorphism `alpha (x) beta`:
/// returns the twist with middle-leg action
/// `(beta (x) alpha) o psi' o (beta (x) alpha)^-1` together with the
/// witness `theta = alpha (x) beta` that makes the two twists equivalent
/// by construction.
fn conjugate<F: Field>(
    t: &Twist<F>,
    alpha: &LinMap<F>,
    beta: &LinMap<F>,
) -> (Twist<F>, LinMap<F>) {
    let mid = beta.tensor(alpha).expect("same field");
    let mid_inv = mid.inverse().expect("factor automorphisms are invertible");
    let psi2 = mid
        .compose(&t.psi_prime())
        .and_then(|m| m.compose(&mid_inv))
        .expect("shapes agree");
    let planted =
        Twist::from_psi_prime(t.c.clone(), t.d.clone(), psi2).expect("shapes agree");
    let theta = alpha.tensor(beta).expect("same field");
    (planted, theta)
}

#[test]
fn the_identity_witnesses_every_twist_as_equivalent_to_itself() {
    let (kg, kgd, phi) = pairing_c2();
    let c = kg.coalgebra;
    let d = kgd.coalgebra;
    let t = f_inv(&c, &d, &phi).expect("the pairing is grouplike on both legs").twist;
    let id = c.id().tensor(&d.id()).expect("same field");

    let report = are_equivalent(&t, &t, &id).expect("the identity is a valid witness");
    assert!(report.passed(), "the identity intertwines a twist with itself");
    assert!(
        report.check("twist-intertwining").is_some(),
        "the verdict must be recorded under its documented name"
    );

    let strong = strongly_isomorphic(&t, &t, &id).expect("the identity is a valid witness");
    assert!(strong.passed(), "the identity is a strong isomorphism onto itself");
    for name in [
        "twisted-coproduct-intertwining",
        "twisted-counit-intertwining",
        "twist-intertwining",
    ] {
        assert!(
            strong.check(name).is_some(),
            "strong isomorphism must record the {name} check"
        );
    }
}

#[test]
fn conjugating_by_a_factorized_automorphism_plants_an_equivalence() {
    let (chi, c, d) = smash_fixture();
    // A cyclic shift permutes the group-likes of kC3; the sign flip on the
    // degree-one function is a coalgebra automorphism of the dual.
    let alpha = perm_map(&c, &[1, 2, 0]);
    let beta = diag_map(&d, &[1, -1]);
    let (planted, theta) = conjugate(&chi, &alpha, &beta);
    assert_ne!(planted.psi, chi.psi, "the conjugate must be a genuinely different twist");

    let report = are_equivalent(&chi, &planted, &theta).expect("valid witness");
    assert!(report.passed(), "the conjugating automorphism witnesses the equivalence");

    let theta_inv = theta.inverse().expect("automorphisms invert");
    let back = are_equivalent(&planted, &chi, &theta_inv).expect("valid witness");
    assert!(back.passed(), "equivalence is symmetric through the inverse witness");

    // A second plant on top of the first composes to a witness from the
    // original twist.
    let alpha2 = perm_map(&c, &[2, 0, 1]);
    let id_d = d.id();
    let (planted2, theta2) = conjugate(&planted, &alpha2, &id_d);
    let through = theta2.compose(&theta).expect("same space");
    let far = are_equivalent(&chi, &planted2, &through).expect("valid witness");
    assert!(far.passed(), "equivalence is transitive through composed witnesses");

    let id = c.id().tensor(&d.id()).expect("same field");
    let wrong = are_equivalent(&chi, &planted, &id).expect("valid witness");
    assert!(
        !wrong.passed(),
        "the identity cannot intertwine two distinct twists"
    );
    assert!(
        wrong.check("twist-intertwining").map(|ch| ch.witness.is_some()) == Some(true),
        "a failed intertwining must carry a first-difference witness"
    );
}

#[test]
fn equivalence_transports_counit_existence_and_absence() {
    let (c, d) = two_group_coalgebras();
    let swap_c = perm_map(&c, &[1, 0]);
    let swap_d = perm_map(&d, &[1, 0]);

    // A functional vanishing at a pair of group-likes gives a twist with
    // no counit; its conjugates must have none either.
    let singular = group_functional(&c, &d, [1, 1, 1, 0]);
    let t = f_inv(&c, &d, &singular).expect("grouplike legs").twist;
    let (planted, theta) = conjugate(&t, &swap_c, &swap_d);
    assert!(
        solve_counit(&twisted_coproduct(&t)).is_none(),
        "the singular functional's twist has no counit"
    );
    assert!(
        solve_counit(&twisted_coproduct(&planted)).is_none(),
        "counit absence must be shared by the conjugate"
    );
    let report = are_equivalent(&t, &planted, &theta).expect("valid witness");
    assert!(report.passed(), "conjugation witnesses the equivalence without counits");

    // An invertible functional gives a twist with a counit on both sides;
    // the equivalence check asserts the counits match through the witness.
    let invertible = group_functional(&c, &d, [1, 2, 3, 5]);
    let t = f_inv(&c, &d, &invertible).expect("grouplike legs").twist;
    let (planted, theta) = conjugate(&t, &swap_c, &swap_d);
    assert!(
        solve_counit(&twisted_coproduct(&planted)).is_some(),
        "counit existence must be shared by the conjugate"
    );
    let report = are_equivalent(&t, &planted, &theta).expect("valid witness");
    assert!(report.passed(), "conjugation witnesses the equivalence with counits");
}

#[test]
fn strong_isomorphism_agrees_with_equivalence_on_every_witness() {
    let (chi, c, d) = smash_fixture();
    let alpha = perm_map(&c, &[1, 2, 0]);
    let beta = diag_map(&d, &[1, -1]);
    let (planted, theta) = conjugate(&chi, &alpha, &beta);

    let id = c.id().tensor(&d.id()).expect("same field");
    let other = perm_map(&c, &[2, 0, 1])
        .tensor(&diag_map(&d, &[1, 1]))
        .expect("same field");
    let squared = theta.compose(&theta).expect("same space");

    for (t1, t2) in [(&chi, &planted), (&chi, &chi), (&planted, &chi)] {
        for candidate in [&id, &theta, &other, &squared] {
            let eq = are_equivalent(t1, t2, candidate).expect("valid witness");
            let strong = strongly_isomorphic(t1, t2, candidate).expect("valid witness");
            assert_eq!(
                eq.passed(),
                strong.passed(),
                "the equivalence and strong-isomorphism verdicts must agree"
            );
        }
    }
}

#[test]
fn witness_transport_is_trivial_for_the_identity_and_fixes_the_flip() {
    let (chi, c, d) = smash_fixture();
    let tc = TwistedCoalgebra::new(chi.clone());
    let (_, z) = tc.counit.clone().expect("the smash twist has a counit");
    let z = z.expect("a witness is synthesized alongside the counit");

    let id = c.id().tensor(&d.id()).expect("same field");
    assert_eq!(
        transport_z(&z, &id).expect("the identity is a valid witness"),
        z,
        "transport along the identity must not move the witness"
    );

    // The flip is the witness of the untwisted structure; it is fixed by
    // transport along any automorphism.
    let tau = flip(Rationals, &c.space, &d.space);
    let alpha = perm_map(&c, &[1, 2, 0]);
    let beta = diag_map(&d, &[1, -1]);
    let theta = alpha.tensor(&beta).expect("same field");
    assert_eq!(
        transport_z(&tau, &theta).expect("valid witness"),
        tau,
        "the flip witness is invariant under conjugation transport"
    );
}

#[test]
fn witness_transport_carries_z_conormality_to_the_conjugate_twist() {
    let (chi, c, d) = smash_fixture();
    // An invariant functional composes with the smash twist to a twist
    // that is z-conormal but not conormal.
    let coeffs: Vec<_> = [1i64, 2, 1, 3, 1, 3]
        .iter()
        .map(|&v| Rationals.from_i64(v))
        .collect();
    let phi = Functional::new(Rationals, c.space.tensor(&d.space), coeffs).expect("six values");
    let tw = f_inv(&c, &d, &phi).expect("grouplike legs");
    let chi_phi = compose_with_tw(&chi, &tw).expect("compatible bases");

    let counit = conv_inverse(&c, &d, &phi)
        .expect("spaces match")
        .expect("the invariant functional inverts");
    let z1 = twistlab::synthesize_z(&chi_phi, &counit).expect("shapes agree");
    assert_eq!(
        is_z_conormal(&chi_phi, &z1).expect("shapes agree"),
        (true, true),
        "the composed twist is z-conormal for the synthesized witness"
    );
    assert_eq!(
        is_conormal(&chi_phi),
        (false, false),
        "the composed twist is not plainly conormal"
    );

    let alpha = perm_map(&c, &[1, 2, 0]);
    let beta = diag_map(&d, &[1, -1]);
    let (planted, theta) = conjugate(&chi_phi, &alpha, &beta);
    let z2 = transport_z(&z1, &theta).expect("valid witness");
    assert_eq!(
        is_z_conormal(&planted, &z2).expect("shapes agree"),
        (true, true),
        "transporting the witness preserves z-conormality on the conjugate"
    );
    assert_eq!(
        is_conormal(&planted),
        (false, false),
        "conjugation does not create plain conormality"
    );
}

#[test]
fn factorized_search_recovers_a_planted_witness() {
    let (chi, c, d) = smash_fixture();
    let alpha = perm_map(&c, &[1, 2, 0]);
    let id_d = d.id();
    let (planted, _) = conjugate(&chi, &alpha, &id_d);

    let found = search_theta(&chi, &planted, ThetaSearchSpace::Factorized, 100)
        .expect("twelve candidates fit the budget")
        .expect("the planted conjugation is reachable by a basis permutation");
    let report = are_equivalent(&chi, &planted, &found).expect("the search returns valid witnesses");
    assert!(report.passed(), "the recovered witness must actually intertwine the twists");
}

#[test]
fn factorized_search_finds_no_witness_between_conormal_and_nonconormal_twists() {
    let (kg, kgd, phi) = pairing_c2();
    let c = kg.coalgebra;
    let d = kgd.coalgebra;
    let t = f_inv(&c, &d, &phi).expect("grouplike legs").twist;
    let tau = Twist::tau(c.clone(), d.clone()).expect("shapes agree");
    assert_eq!(is_conormal(&tau), (true, true), "the flip is conormal");
    assert_eq!(
        is_conormal(&t),
        (false, false),
        "the pairing twist is not conormal"
    );

    let found = search_theta(&t, &tau, ThetaSearchSpace::Factorized, 100)
        .expect("four candidates fit the budget");
    assert!(
        found.is_none(),
        "no factorized automorphism can relate a conormal twist to a non-conormal one"
    );
}

#[test]
fn general_search_over_f2_certifies_the_flip_is_equivalent_only_to_itself() {
    let p2 = PrimeField::new(2).expect("2 is prime");
    let c = group_algebra(p2.clone(), "C", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;
    let d = group_algebra(p2.clone(), "D", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;
    let coeffs = vec![p2.one(), p2.one(), p2.one(), p2.zero()];
    let phi = Functional::new(p2.clone(), c.space.tensor(&d.space), coeffs).expect("four values");
    let t = f_inv(&c, &d, &phi).expect("grouplike legs").twist;
    let tau = Twist::tau(c.clone(), d.clone()).expect("shapes agree");
    assert_ne!(t.psi, tau.psi, "the singular functional twist differs from the flip");

    // 2^16 candidate matrices on the four-dimensional square.
    let found = search_theta(&t, &tau, ThetaSearchSpace::General, 1 << 16)
        .expect("the full enumeration fits the budget");
    assert!(
        found.is_none(),
        "an exhaustive search proves the flip is equivalent only to the flip"
    );

    let reflexive = search_theta(&tau, &tau, ThetaSearchSpace::General, 1 << 16)
        .expect("the full enumeration fits the budget")
        .expect("the flip is equivalent to itself");
    let report = are_equivalent(&tau, &tau, &reflexive).expect("valid witness");
    assert!(report.passed(), "the found witness intertwines the flip with itself");
}

#[test]
fn searches_report_budget_overruns_before_enumerating() {
    let (chi, c, d) = smash_fixture();
    match search_theta(&chi, &chi, ThetaSearchSpace::Factorized, 5) {
        Err(Error::BudgetExceeded { needed, budget }) => {
            assert_eq!(needed, 12, "3! * 2! candidate permutation pairs");
            assert_eq!(budget, 5, "the refused budget is echoed back");
        }
        other => panic!("expected a budget error, got {other:?}"),
    }

    let p2 = PrimeField::new(2).expect("2 is prime");
    let cf = group_algebra(p2.clone(), "C", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;
    let df = group_algebra(p2.clone(), "D", &cyclic_table(2))
        .expect("cyclic tables are groups")
        .bialgebra
        .coalgebra;
    let tau = Twist::tau(cf, df).expect("shapes agree");
    match search_theta(&tau, &tau, ThetaSearchSpace::General, 100) {
        Err(Error::BudgetExceeded { needed, budget }) => {
            assert_eq!(needed, 1 << 16, "2^(4*4) candidate matrices");
            assert_eq!(budget, 100, "the refused budget is echoed back");
        }
        other => panic!("expected a budget error, got {other:?}"),
    }

    let tau_q = Twist::tau(c, d).expect("shapes agree");
    assert!(
        matches!(
            search_theta(&tau_q, &tau_q, ThetaSearchSpace::General, u64::MAX),
            Err(Error::Validation(_))
        ),
        "the general search refuses infinite scalar fields outright"
    );
}

#[test]
fn invalid_witnesses_are_rejected_before_any_verdict() {
    let (kg, kgd, phi) = pairing_c2();
    let c = kg.coalgebra;
    let d = kgd.coalgebra;
    let t = f_inv(&c, &d, &phi).expect("grouplike legs").twist;
    let id = c.id().tensor(&d.id()).expect("same field");

    let (chi, _, _) = smash_fixture();
    assert!(
        matches!(are_equivalent(&t, &chi, &id), Err(Error::Validation(_))),
        "twists on different coalgebra pairs cannot be compared"
    );
    assert!(
        matches!(strongly_isomorphic(&t, &chi, &id), Err(Error::Validation(_))),
        "strong isomorphism shares the pairing requirement"
    );
    assert!(
        matches!(
            search_theta(&t, &chi, ThetaSearchSpace::Factorized, 100),
            Err(Error::Validation(_))
        ),
        "the search shares the pairing requirement"
    );

    assert!(
        matches!(are_equivalent(&t, &t, &c.id()), Err(Error::ThetaInvalid(_))),
        "a witness must be an endomorphism of the tensor square"
    );

    let square = c.space.tensor(&d.space);
    let zero = LinMap::from_entries(Rationals, &square, &square, &[]).expect("empty entries");
    assert!(
        matches!(are_equivalent(&t, &t, &zero), Err(Error::ThetaInvalid(_))),
        "a witness must be invertible"
    );

    let scale = LinMap::from_entries(
        Rationals,
        &square,
        &square,
        &[
            (0, 0, Rationals.from_i64(2)),
            (1, 1, Rationals.one()),
            (2, 2, Rationals.one()),
            (3, 3, Rationals.one()),
        ],
    )
    .expect("in range");
    assert!(
        matches!(are_equivalent(&t, &t, &scale), Err(Error::ThetaInvalid(_))),
        "an invertible non-morphism is still not a witness"
    );

    let z = flip(Rationals, &c.space, &d.space);
    assert!(
        matches!(transport_z(&z, &c.id()), Err(Error::ThetaInvalid(_))),
        "transport requires an endomorphism of the witness domain"
    );
    assert!(
        matches!(transport_z(&z, &zero), Err(Error::ThetaInvalid(_))),
        "transport requires an invertible map"
    );
    let one_factor = c.id();
    assert!(
        matches!(transport_z(&one_factor, &c.id()), Err(Error::SpaceMismatch { .. })),
        "transport requires a two-factor witness"
    );
}
