//! Tests for the structured-text spec/report layer: exact scalar literals,
//! document round-trips, reference validation, task execution with witnesses
//! and derived artifacts, verb filtering, determinism, and catalog exports.

use twistlab::specfile::{
    elem_to_scalar, field_choice, parse_report, parse_spec, report_to_toml, resolve,
    run_spec_text, run_tasks, scalar_to_elem, spec_to_toml, export_zoo, FieldChoice, Scalar,
    ALGEBRA_CHECKS, EQUIVALENCE_CHECKS,
};
use twistlab::zoo;
use twistlab::{Error, Field, PrimeField, Rationals};

const KC2_HEADER: &str = r#"
version = 1

[field]
kind = "rational"

[[coalgebra]]
name = "C"
dim = 2
delta = [[0, 0, 0, 1], [1, 1, 1, 1]]
eps = [[0, 1], [1, 1]]

[[algebra]]
name = "C"
dim = 2
mul = [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]]
unit = [[0, 1]]

[[twist]]
name = "tau"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = [[0, 0, 1], [2, 1, 1], [1, 2, 1], [3, 3, 1]]
"#;

fn kc2_spec(tail: &str) -> String {
    format!("{KC2_HEADER}\n{tail}")
}

#[test]
fn scalar_literals_parse_exactly() {
    let q = Rationals;
    let three = scalar_to_elem(&q, &Scalar::Int(3), "t").unwrap();
    assert_eq!(three, q.from_i64(3));

    let frac = scalar_to_elem(&q, &Scalar::Text("3/4".into()), "t").unwrap();
    let four_inv = q.inv(&q.from_i64(4)).unwrap();
    assert_eq!(frac, q.mul(&q.from_i64(3), &four_inv));

    // Signs and non-reduced fractions evaluate to the same element.
    let a = scalar_to_elem(&q, &Scalar::Text("-5/10".into()), "t").unwrap();
    let b = scalar_to_elem(&q, &Scalar::Text("-1/2".into()), "t").unwrap();
    let c = scalar_to_elem(&q, &Scalar::Text("1/-2".into()), "t").unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
    let spaced = scalar_to_elem(&q, &Scalar::Text(" 1 / 2 ".into()), "t").unwrap();
    assert_eq!(spaced, q.inv(&q.from_i64(2)).unwrap());

    // Over F_7, 1/2 is the residue 4.
    let f7 = PrimeField::new(7).unwrap();
    assert_eq!(
        scalar_to_elem(&f7, &Scalar::Text("1/2".into()), "t").unwrap(),
        4
    );
    assert_eq!(scalar_to_elem(&f7, &Scalar::Int(-1), "t").unwrap(), 6);

    // Degenerate denominators are rejected, naming the context.
    for (field_err, scalar) in [
        (
            scalar_to_elem(&q, &Scalar::Text("1/0".into()), "ctx"),
            "1/0",
        ),
        (
            scalar_to_elem(
                &PrimeField::new(2).unwrap(),
                &Scalar::Text("1/2".into()),
                "ctx",
            )
            .map(|_| q.from_i64(0)),
            "1/2",
        ),
    ] {
        let err = field_err.unwrap_err().to_string();
        assert!(err.contains("ctx") && err.contains(scalar), "{err}");
    }

    // Garbage and oversized literals are rejected.
    for bad in ["x", "1/2/3", "99999999999999999999999", ""] {
        assert!(scalar_to_elem(&q, &Scalar::Text(bad.into()), "t").is_err());
    }

    // Formatting is the inverse of parsing.
    let e = scalar_to_elem(&q, &Scalar::Text("22/7".into()), "t").unwrap();
    let s = elem_to_scalar(&q, &e);
    assert_eq!(s, Scalar::Text("22/7".into()));
    assert_eq!(scalar_to_elem(&q, &s, "t").unwrap(), e);
    assert_eq!(elem_to_scalar(&q, &q.from_i64(5)), Scalar::Int(5));
}

#[test]
fn documents_round_trip_through_toml() {
    let text = kc2_spec(
        r#"
[[functional]]
name = "phi"
on = ["C", "C"]
coeffs = [1, 0, 0, "1/2"]

[[task]]
check = "octagon"
twist = "tau"

[[task]]
check = "equivalent"
left = "tau"
right = "tau"
space = "general"
budget = 70000
"#,
    );
    let doc = parse_spec(&text).unwrap();
    assert_eq!(doc.version, 1);
    assert_eq!(doc.coalgebras.len(), 1);
    assert_eq!(doc.twists.len(), 1);
    assert_eq!(doc.functionals[0].coeffs[3], Scalar::Text("1/2".into()));
    assert_eq!(doc.tasks[1].budget, Some(70000));

    let serialized = spec_to_toml(&doc).unwrap();
    let reparsed = parse_spec(&serialized).unwrap();
    assert_eq!(doc, reparsed);
}

#[test]
fn version_gate_and_field_selectors() {
    let err = parse_spec("version = 2\n[field]\nkind = \"rational\"\n").unwrap_err();
    assert!(err.to_string().contains("version 2"), "{err}");

    let doc = parse_spec("version = 1\n[field]\nkind = \"rational\"\n").unwrap();
    assert_eq!(field_choice(&doc).unwrap(), FieldChoice::Rational);

    let doc = parse_spec("version = 1\n[field]\nkind = \"prime\"\np = 5\n").unwrap();
    assert_eq!(field_choice(&doc).unwrap(), FieldChoice::Prime(5));

    for (text, needle) in [
        (
            "version = 1\n[field]\nkind = \"prime\"\n",
            "requires a modulus",
        ),
        (
            "version = 1\n[field]\nkind = \"rational\"\np = 3\n",
            "does not take",
        ),
        ("version = 1\n[field]\nkind = \"real\"\n", "unknown field kind"),
    ] {
        let doc = parse_spec(text).unwrap();
        let err = field_choice(&doc).unwrap_err().to_string();
        assert!(err.contains(needle), "{err}");
    }

    // Syntax errors carry a line/column position.
    let err = parse_spec("version = 1\n[field\n").unwrap_err();
    match err {
        Error::Parse { location, .. } => assert!(location.contains("line 2"), "{location}"),
        other => panic!("expected a parse error, got {other}"),
    }

    // Unknown keys are schema errors, not silently ignored.
    assert!(parse_spec("version = 1\nbogus = 3\n[field]\nkind = \"rational\"\n").is_err());
}

#[test]
fn resolution_validates_structure() {
    let cases: &[(&str, &str)] = &[
        // Out-of-range structure-constant index.
        (
            r#"
[[coalgebra]]
name = "C"
dim = 2
delta = [[0, 0, 5, 1]]
eps = []
"#,
            "index 5 out of range (dim 2)",
        ),
        // Conflicting dimensions across the two faces of one object.
        (
            r#"
[[coalgebra]]
name = "C"
dim = 2
delta = []
eps = []

[[algebra]]
name = "C"
dim = 3
mul = []
unit = []
"#,
            "conflicting dimensions",
        ),
        // Duplicate declarations in one section.
        (
            r#"
[[coalgebra]]
name = "C"
dim = 1
delta = []
eps = []

[[coalgebra]]
name = "C"
dim = 1
delta = []
eps = []
"#,
            "duplicate coalgebra \"C\"",
        ),
        // Twist over an undeclared object.
        (
            r#"
[[twist]]
name = "t"
domain = ["X", "X"]
codomain = ["X", "X"]
entries = []
"#,
            "unknown domain object \"X\"",
        ),
        // Twist codomain must reverse the domain.
        (
            r#"
[[coalgebra]]
name = "C"
dim = 1
delta = [[0, 0, 0, 1]]
eps = [[0, 1]]

[[coalgebra]]
name = "D"
dim = 2
delta = []
eps = []

[[twist]]
name = "t"
domain = ["C", "D"]
codomain = ["C", "D"]
entries = []
"#,
            "reversed domain pair",
        ),
        // Exactly one matrix form.
        (
            r#"
[[coalgebra]]
name = "C"
dim = 1
delta = []
eps = []

[[twist]]
name = "t"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = [[0, 0, 1]]
dense = [[1]]
"#,
            "not both",
        ),
        (
            r#"
[[coalgebra]]
name = "C"
dim = 1
delta = []
eps = []

[[twist]]
name = "t"
domain = ["C", "C"]
codomain = ["C", "C"]
"#,
            "missing matrix",
        ),
        // Dense shape enforcement.
        (
            r#"
[[coalgebra]]
name = "C"
dim = 2
delta = []
eps = []

[[twist]]
name = "t"
domain = ["C", "C"]
codomain = ["C", "C"]
dense = [[1, 0, 0, 0]]
"#,
            "1 rows, expected 4",
        ),
        // Functional coefficient count.
        (
            r#"
[[coalgebra]]
name = "C"
dim = 2
delta = []
eps = []

[[functional]]
name = "phi"
on = ["C", "C"]
coeffs = [1, 0]
"#,
            "2 coefficients given, expected 4",
        ),
        // Zero-dimensional objects are rejected.
        (
            r#"
[[algebra]]
name = "A"
dim = 0
mul = []
unit = []
"#,
            "dim must be positive",
        ),
    ];
    for (body, needle) in cases {
        let text = format!("version = 1\n[field]\nkind = \"rational\"\n{body}");
        let doc = parse_spec(&text).unwrap();
        let err = resolve(&doc, Rationals).unwrap_err().to_string();
        assert!(err.contains(needle), "expected {needle:?} in {err:?}");
    }
}

#[test]
fn task_validation_catches_bad_references() {
    let cases: &[(&str, &str)] = &[
        (
            "[[task]]\ncheck = \"heptagon\"\ntwist = \"tau\"\n",
            "unknown check \"heptagon\"",
        ),
        ("[[task]]\ncheck = \"octagon\"\n", "missing twist reference"),
        (
            "[[task]]\ncheck = \"octagon\"\ntwist = \"rho\"\n",
            "unknown twist \"rho\"",
        ),
        (
            "[[task]]\ncheck = \"coalgebra-axioms\"\nobject = \"Z\"\n",
            "unknown coalgebra \"Z\"",
        ),
        (
            "[[task]]\ncheck = \"conv-inverse\"\nfunctional = \"phi\"\n",
            "unknown functional \"phi\"",
        ),
        (
            "[[task]]\ncheck = \"equivalent\"\nleft = \"tau\"\n",
            "missing right twist reference",
        ),
        (
            "[[task]]\ncheck = \"equivalent\"\nleft = \"tau\"\nright = \"tau\"\nspace = \"full\"\n",
            "unknown search space \"full\"",
        ),
    ];
    for (tail, needle) in cases {
        let err = run_spec_text(&kc2_spec(tail), 1 << 16, None)
            .unwrap_err()
            .to_string();
        assert!(err.contains(needle), "expected {needle:?} in {err:?}");
    }

    // A twist used through a structure its objects don't declare is caught
    // up front: here "D" exists only as a coalgebra, so algebra-side checks
    // on a twist touching it cannot run.
    let text = r#"
version = 1

[field]
kind = "rational"

[[coalgebra]]
name = "D"
dim = 1
delta = [[0, 0, 0, 1]]
eps = [[0, 1]]

[[twist]]
name = "t"
domain = ["D", "D"]
codomain = ["D", "D"]
dense = [[1]]

[[task]]
check = "assoc"
twist = "t"
"#;
    let err = run_spec_text(text, 1 << 16, None).unwrap_err().to_string();
    assert!(
        err.contains("needs a algebra structure on \"D\"")
            || err.contains("needs an algebra structure on \"D\""),
        "{err}"
    );
}

#[test]
fn flip_spec_runs_all_checks_green() {
    let text = kc2_spec(
        r#"
[[task]]
check = "coalgebra-axioms"
object = "C"

[[task]]
check = "algebra-axioms"
object = "C"

[[task]]
check = "octagon"
twist = "tau"

[[task]]
check = "pentagons"
twist = "tau"

[[task]]
check = "conormal"
twist = "tau"

[[task]]
check = "counit"
twist = "tau"

[[task]]
check = "tw"
twist = "tau"

[[task]]
check = "assoc"
twist = "tau"

[[task]]
check = "product-pentagons"
twist = "tau"

[[task]]
check = "normal"
twist = "tau"

[[task]]
check = "unit"
twist = "tau"

[[task]]
check = "tw-alg"
twist = "tau"
"#,
    );
    let report = run_spec_text(&text, 1 << 16, None).unwrap();
    assert_eq!(report.field, "rational");
    assert_eq!(report.tasks.len(), 12);
    assert!(report.all_pass());
    assert!(!report.any_error());

    // Task records keep spec order and name their targets.
    assert_eq!(report.tasks[0].name, "coalgebra-axioms(C)");
    assert_eq!(report.tasks[2].name, "octagon(tau)");

    // The flip's counit is the product of the two counits, and the unit of
    // the flipped product is the basis vector e_0 (x) e_0.
    let counit = &report.tasks[5];
    assert_eq!(counit.derived["counit"], vec!["1", "1", "1", "1"]);
    let unit = &report.tasks[10];
    assert_eq!(unit.derived["unit"], vec!["1", "0", "0", "0"]);

    // Passing report-backed checks carry no witnesses and no failure list.
    for task in &report.tasks {
        assert!(task.witnesses.is_empty(), "{}", task.name);
        assert!(!task.derived.contains_key("failed"), "{}", task.name);
    }
}

#[test]
fn failing_checks_carry_witnesses_and_failure_lists() {
    // Twice the flip: still coassociative on group-likes and still a
    // membership solution, but the one-sided factorization identities fail
    // with a 4-vs-2 scaling mismatch, and it is counit-incompatible.
    let text = kc2_spec(
        r#"
[[twist]]
name = "doubled"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = [[0, 0, 2], [2, 1, 2], [1, 2, 2], [3, 3, 2]]

[[task]]
check = "octagon"
twist = "doubled"

[[task]]
check = "tw"
twist = "doubled"

[[task]]
check = "pentagons"
twist = "doubled"

[[task]]
check = "conormal"
twist = "doubled"

[[task]]
check = "counit"
twist = "doubled"
"#,
    );
    let report = run_spec_text(&text, 1 << 16, None).unwrap();
    let verdicts: Vec<&str> = report.tasks.iter().map(|t| t.verdict.as_str()).collect();
    assert_eq!(verdicts, ["pass", "pass", "fail", "fail", "pass"]);

    let pentagons = &report.tasks[2];
    assert_eq!(
        pentagons.derived["failed"],
        vec!["pentagon-right-coproduct", "pentagon-left-coproduct"]
    );
    assert_eq!(pentagons.witnesses.len(), 2);
    let w = &pentagons.witnesses[0];
    assert_eq!(w.check, "pentagon-right-coproduct");
    assert_eq!((w.row, w.col), (0, 0));
    assert_eq!(w.row_multi, vec![0, 0, 0]);
    assert_eq!(w.col_multi, vec![0, 0]);
    assert_eq!((w.left.as_str(), w.right.as_str()), ("4", "2"));

    let conormal = &report.tasks[3];
    assert_eq!(
        conormal.derived["sides"],
        vec!["left=false", "right=false"]
    );
    assert!(conormal.witnesses.is_empty());

    // Doubling the flip halves the counit: the twisted coproduct is still
    // counital, with exact fractional coefficients in the report.
    let counit = &report.tasks[4];
    assert_eq!(counit.verdict, "pass");
    assert_eq!(
        counit.derived["counit"],
        vec!["1/2", "1/2", "1/2", "1/2"]
    );
}

#[test]
fn equivalence_tasks_search_and_report_the_intertwiner() {
    let text = kc2_spec(
        r#"
[[twist]]
name = "zero"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = []

[[task]]
check = "octagon"
twist = "zero"

[[task]]
check = "equivalent"
left = "tau"
right = "tau"

[[task]]
check = "equivalent"
left = "tau"
right = "zero"

[[task]]
check = "equivalent"
left = "tau"
right = "zero"
space = "general"
"#,
    );
    // `equiv` filtering drops the octagon task; the reflexive pair finds an
    // intertwiner, the zero pair has none (an intertwiner is invertible and
    // would force equal ranks). The exhaustive search space needs a finite
    // scalar field, so requesting it over the rationals is a task error.
    let report = run_spec_text(&text, 1 << 16, Some(EQUIVALENCE_CHECKS)).unwrap();
    assert_eq!(report.tasks.len(), 3);
    assert_eq!(report.tasks[0].verdict, "pass");
    assert_eq!(report.tasks[0].name, "equivalent(tau, tau)");
    let theta = &report.tasks[0].derived["theta"];
    assert_eq!(theta.len(), 16);
    assert_eq!(report.tasks[1].verdict, "fail");
    assert!(report.tasks[1].derived.is_empty());
    assert_eq!(report.tasks[2].verdict, "error");
    assert!(
        report.tasks[2]
            .error
            .as_ref()
            .unwrap()
            .contains("finite scalar field"),
        "{:?}",
        report.tasks[2].error
    );

    // A task-level budget that cannot cover the general enumeration is a
    // runtime error for that task, not a process failure.
    let text = r#"
version = 1

[field]
kind = "prime"
p = 2

[[coalgebra]]
name = "C"
dim = 2
delta = [[0, 0, 0, 1], [1, 1, 1, 1]]
eps = [[0, 1], [1, 1]]

[[twist]]
name = "tau"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = [[0, 0, 1], [2, 1, 1], [1, 2, 1], [3, 3, 1]]

[[task]]
check = "equivalent"
left = "tau"
right = "tau"
space = "general"
budget = 3
"#;
    let report = run_spec_text(text, 1 << 16, None).unwrap();
    assert_eq!(report.tasks[0].verdict, "error");
    let msg = report.tasks[0].error.as_ref().unwrap();
    assert!(msg.contains("budget"), "{msg}");
    assert!(report.any_error());
    assert!(!report.all_pass());
}

#[test]
fn verb_filters_select_task_subsets() {
    let text = kc2_spec(
        r#"
[[task]]
check = "octagon"
twist = "tau"

[[task]]
check = "assoc"
twist = "tau"

[[task]]
check = "algebra-axioms"
object = "C"

[[task]]
check = "equivalent"
left = "tau"
right = "tau"
"#,
    );
    let all = run_spec_text(&text, 1 << 16, None).unwrap();
    assert_eq!(all.tasks.len(), 4);

    let alg = run_spec_text(&text, 1 << 16, Some(ALGEBRA_CHECKS)).unwrap();
    let names: Vec<&str> = alg.tasks.iter().map(|t| t.check.as_str()).collect();
    assert_eq!(names, ["assoc", "algebra-axioms"]);

    let equiv = run_spec_text(&text, 1 << 16, Some(EQUIVALENCE_CHECKS)).unwrap();
    assert_eq!(equiv.tasks.len(), 1);
    assert_eq!(equiv.tasks[0].check, "equivalent");
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let text = kc2_spec(
        r#"
[[task]]
check = "counit"
twist = "tau"

[[task]]
check = "conormal"
twist = "tau"

[[task]]
check = "equivalent"
left = "tau"
right = "tau"
"#,
    );
    let mut a = run_spec_text(&text, 1 << 16, None).unwrap();
    let mut b = run_spec_text(&text, 1 << 16, None).unwrap();
    for t in a.tasks.iter_mut().chain(b.tasks.iter_mut()) {
        t.millis = 0;
    }
    assert_eq!(a, b);
    assert_eq!(report_to_toml(&a).unwrap(), report_to_toml(&b).unwrap());

    let round = parse_report(&report_to_toml(&a).unwrap()).unwrap();
    assert_eq!(round, a);
}

#[test]
fn dense_and_sparse_twists_resolve_identically() {
    let sparse = kc2_spec("");
    let dense = sparse.replace(
        "entries = [[0, 0, 1], [2, 1, 1], [1, 2, 1], [3, 3, 1]]",
        "dense = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]",
    );
    assert_ne!(sparse, dense);
    let s = resolve(&parse_spec(&sparse).unwrap(), Rationals).unwrap();
    let d = resolve(&parse_spec(&dense).unwrap(), Rationals).unwrap();
    assert_eq!(s.twists["tau"].1.mat, d.twists["tau"].1.mat);

    // Repeated sparse entries accumulate (here: 1 + 1 = 0 over F_2).
    let text = r#"
version = 1

[field]
kind = "prime"
p = 2

[[coalgebra]]
name = "C"
dim = 1
delta = [[0, 0, 0, 1]]
eps = [[0, 1]]

[[twist]]
name = "t"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = [[0, 0, 1], [0, 0, 1]]
"#;
    let doc = parse_spec(text).unwrap();
    let spec = resolve(&doc, PrimeField::new(2).unwrap()).unwrap();
    assert_eq!(*spec.twists["t"].1.mat.get(0, 0), 0);
}

#[test]
fn prime_field_specs_dispatch_and_run() {
    let text = r#"
version = 1

[field]
kind = "prime"
p = 2

[[coalgebra]]
name = "C"
dim = 2
delta = [[0, 0, 0, 1], [1, 1, 1, 1]]
eps = [[0, 1], [1, 1]]

[[twist]]
name = "tau"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = [[0, 0, 1], [2, 1, 1], [1, 2, 1], [3, 3, 1]]

[[task]]
check = "octagon"
twist = "tau"

[[task]]
check = "counit"
twist = "tau"
"#;
    let report = run_spec_text(text, 1 << 16, None).unwrap();
    assert_eq!(report.field, "gf(2)");
    assert!(report.all_pass());
    assert_eq!(report.tasks[1].derived["counit"], vec!["1", "1", "1", "1"]);

    // Non-prime moduli are rejected at resolution.
    let bad = text.replace("p = 2", "p = 6");
    let err = run_spec_text(&bad, 1 << 16, None).unwrap_err().to_string();
    assert!(err.contains("6"), "{err}");
}

#[test]
fn zoo_exports_reimport_and_pass_their_axiom_checks() {
    for (name, _) in zoo::list() {
        let doc = export_zoo(name, FieldChoice::Rational).unwrap();
        let text = spec_to_toml(&doc).unwrap();
        let reparsed = parse_spec(&text).unwrap();
        assert_eq!(doc, reparsed, "{name}: export did not round-trip");
        let report = run_spec_text(&text, 1 << 16, None).unwrap();
        assert!(!report.tasks.is_empty(), "{name}: export has no tasks");
        assert!(
            report.all_pass(),
            "{name}: {:?}",
            report
                .tasks
                .iter()
                .filter(|t| t.verdict != "pass")
                .map(|t| &t.name)
                .collect::<Vec<_>>()
        );
    }

    // Prime-field exports work where the characteristic allows; the
    // 4-dimensional noncommutative item needs 2 invertible.
    for name in ["kc2", "fnc3", "sweedler", "pair-c2"] {
        let doc = export_zoo(name, FieldChoice::Prime(3)).unwrap();
        let report = run_spec_text(&spec_to_toml(&doc).unwrap(), 1 << 16, None).unwrap();
        assert!(report.all_pass(), "{name} over gf(3)");
    }
    assert!(export_zoo("sweedler", FieldChoice::Prime(2)).is_err());
    assert!(export_zoo("nonesuch", FieldChoice::Rational).is_err());
}

#[test]
fn resolved_specs_expose_structured_objects() {
    let text = kc2_spec(
        r#"
[[functional]]
name = "phi"
on = ["C", "C"]
coeffs = [1, 1, 1, "1/3"]

[[task]]
check = "conv-inverse"
functional = "phi"
"#,
    );
    let doc = parse_spec(&text).unwrap();
    let spec = resolve(&doc, Rationals).unwrap();
    assert_eq!(spec.coalgebras["C"].space.total_dim(), 2);
    assert_eq!(spec.algebras["C"].space.total_dim(), 2);
    assert_eq!(spec.functionals["phi"].1.coeffs.len(), 4);

    let report = run_tasks(&spec, 1 << 16, None);
    assert_eq!(report.tasks.len(), 1);
    // The inverse, when it exists, comes back as exact coefficients that
    // feed straight back into a spec file.
    if report.tasks[0].verdict == "pass" {
        let inv = &report.tasks[0].derived["inverse"];
        assert_eq!(inv.len(), 4);
        for c in inv {
            let s = Scalar::Text(c.clone());
            scalar_to_elem(&Rationals, &s, "round").unwrap();
        }
    }
}
