//! Finite-dimensional coalgebras, algebras, bialgebras, Hopf algebras, and
//! dual pairings, all given by explicit structure matrices.
//!
//! Constructors only validate shapes; the axioms themselves are verified by
//! the `check` methods, which return [`Report`]s with basis-index witnesses
//! so that deliberately broken structures can be examined rather than
//! rejected.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linmap::{flip, permute, LinMap};
use crate::report::Report;
use crate::space::TensorSpace;

/// A coalgebra `(C, delta, eps)`: `delta: C -> C (x) C`, `eps: C -> k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra<F: Field> {
    pub field: F,
    pub space: TensorSpace,
    pub delta: LinMap<F>,
    pub eps: LinMap<F>,
}

impl<F: Field> Coalgebra<F> {
    pub fn new(field: F, space: TensorSpace, delta: LinMap<F>, eps: LinMap<F>) -> Result<Self> {
        let square = space.tensor(&space);
        if !delta.domain.same_shape(&space) || !delta.codomain.same_shape(&square) {
            return Err(Error::SpaceMismatch {
                context: "coproduct shape".into(),
                left: format!("{} -> {}", delta.domain, delta.codomain),
                right: format!("{} -> {}", space, square),
            });
        }
        if !eps.domain.same_shape(&space) || !eps.codomain.same_shape(&TensorSpace::unit()) {
            return Err(Error::SpaceMismatch {
                context: "counit shape".into(),
                left: format!("{} -> {}", eps.domain, eps.codomain),
                right: format!("{} -> k", space),
            });
        }
        Ok(Coalgebra {
            field,
            space,
            delta,
            eps,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn id(&self) -> LinMap<F> {
        LinMap::identity(self.field.clone(), &self.space)
    }

    /// Coassociativity and both counit identities.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let id = self.id();
        let left = self
            .delta
            .tensor(&id)
            .and_then(|m| m.compose(&self.delta))
            .expect("shapes validated at construction");
        let right = id
            .tensor(&self.delta)
            .and_then(|m| m.compose(&self.delta))
            .expect("shapes validated at construction");
        report.eq_check("coassociativity", &left, &right);

        let eps_left = self
            .eps
            .tensor(&id)
            .and_then(|m| m.compose(&self.delta))
            .expect("shapes validated at construction");
        report.eq_check("counit-left", &eps_left, &id);
        let eps_right = id
            .tensor(&self.eps)
            .and_then(|m| m.compose(&self.delta))
            .expect("shapes validated at construction");
        report.eq_check("counit-right", &eps_right, &id);
        report
    }

    /// Whether the coproduct is invariant under the flip.
    pub fn is_cocommutative(&self) -> bool {
        let tau = flip(self.field.clone(), &self.space, &self.space);
        let flipped = tau.compose(&self.delta).expect("shapes validated");
        flipped.mat == self.delta.mat
    }
}

/// An algebra `(A, mul, unit)`: `mul: A (x) A -> A`, `unit: k -> A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F: Field> {
    pub field: F,
    pub space: TensorSpace,
    pub mul: LinMap<F>,
    pub unit: LinMap<F>,
}

impl<F: Field> Algebra<F> {
    pub fn new(field: F, space: TensorSpace, mul: LinMap<F>, unit: LinMap<F>) -> Result<Self> {
        let square = space.tensor(&space);
        if !mul.domain.same_shape(&square) || !mul.codomain.same_shape(&space) {
            return Err(Error::SpaceMismatch {
                context: "product shape".into(),
                left: format!("{} -> {}", mul.domain, mul.codomain),
                right: format!("{} -> {}", square, space),
            });
        }
        if !unit.domain.same_shape(&TensorSpace::unit()) || !unit.codomain.same_shape(&space) {
            return Err(Error::SpaceMismatch {
                context: "unit shape".into(),
                left: format!("{} -> {}", unit.domain, unit.codomain),
                right: format!("k -> {}", space),
            });
        }
        Ok(Algebra {
            field,
            space,
            mul,
            unit,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn id(&self) -> LinMap<F> {
        LinMap::identity(self.field.clone(), &self.space)
    }

    /// The unit as an element (column vector) of the algebra.
    pub fn unit_elem(&self) -> Vec<F::Elem> {
        self.unit.apply(&[self.field.one()]).expect("unit has domain k")
    }

    /// Product of two elements.
    pub fn product(&self, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let ab = crate::linmap::vec_kron(&self.field, a, b);
        self.mul.apply(&ab)
    }

    /// Associativity and both unit identities.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let id = self.id();
        let left = self
            .mul
            .compose(&self.mul.tensor(&id).expect("shapes validated"))
            .expect("shapes validated");
        let right = self
            .mul
            .compose(&id.tensor(&self.mul).expect("shapes validated"))
            .expect("shapes validated");
        report.eq_check("associativity", &left, &right);

        let unit_left = self
            .mul
            .compose(&self.unit.tensor(&id).expect("shapes validated"))
            .expect("shapes validated");
        report.eq_check("unit-left", &unit_left, &id);
        let unit_right = self
            .mul
            .compose(&id.tensor(&self.unit).expect("shapes validated"))
            .expect("shapes validated");
        report.eq_check("unit-right", &unit_right, &id);
        report
    }

    pub fn is_commutative(&self) -> bool {
        let tau = flip(self.field.clone(), &self.space, &self.space);
        let flipped = self.mul.compose(&tau).expect("shapes validated");
        flipped.mat == self.mul.mat
    }
}

/// A bialgebra: coalgebra and algebra structures on the same space whose
/// compatibility is verified by [`Bialgebra::check`].
#[derive(Clone, Debug, PartialEq)]
pub struct Bialgebra<F: Field> {
    pub coalgebra: Coalgebra<F>,
    pub algebra: Algebra<F>,
}

impl<F: Field> Bialgebra<F> {
    pub fn new(coalgebra: Coalgebra<F>, algebra: Algebra<F>) -> Result<Self> {
        if !coalgebra.space.same_shape(&algebra.space) {
            return Err(Error::SpaceMismatch {
                context: "bialgebra underlying space".into(),
                left: coalgebra.space.to_string(),
                right: algebra.space.to_string(),
            });
        }
        if coalgebra.field != algebra.field {
            return Err(Error::FieldMismatch {
                left: coalgebra.field.name(),
                right: algebra.field.name(),
            });
        }
        Ok(Bialgebra { coalgebra, algebra })
    }

    pub fn field(&self) -> &F {
        &self.coalgebra.field
    }

    pub fn space(&self) -> &TensorSpace {
        &self.coalgebra.space
    }

    /// Coalgebra axioms, algebra axioms, and the four compatibility
    /// identities making the coproduct and counit algebra maps.
    pub fn check(&self) -> Report {
        let mut report = self.coalgebra.check();
        report.merge(self.algebra.check());
        let field = self.field().clone();
        let delta = &self.coalgebra.delta;
        let eps = &self.coalgebra.eps;
        let mul = &self.algebra.mul;
        let unit = &self.algebra.unit;

        // delta o mul = (mul (x) mul) o (id (x) tau (x) id) o (delta (x) delta)
        let lhs = delta.compose(mul).expect("shapes validated");
        let dd = delta.tensor(delta).expect("shapes validated");
        let mid = permute(field.clone(), &dd.codomain, &[0, 2, 1, 3]);
        let rhs = mul
            .tensor(mul)
            .and_then(|mm| mm.compose(&mid))
            .and_then(|m| m.compose(&dd))
            .expect("shapes validated");
        report.eq_check("coproduct-is-multiplicative", &lhs, &rhs);

        // eps o mul = eps (x) eps
        let lhs = eps.compose(mul).expect("shapes validated");
        let rhs = eps.tensor(eps).expect("shapes validated");
        report.eq_check("counit-is-multiplicative", &lhs, &rhs);

        // delta o unit = unit (x) unit
        let lhs = delta.compose(unit).expect("shapes validated");
        let rhs = unit.tensor(unit).expect("shapes validated");
        report.eq_check("coproduct-is-unital", &lhs, &rhs);

        // eps o unit = id_k
        let lhs = eps.compose(unit).expect("shapes validated");
        let rhs = LinMap::identity(field, &TensorSpace::unit());
        report.eq_check("counit-is-unital", &lhs, &rhs);
        report
    }
}

/// A Hopf algebra: a bialgebra with a verified antipode.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra<F: Field> {
    pub bialgebra: Bialgebra<F>,
    pub antipode: LinMap<F>,
}

impl<F: Field> HopfAlgebra<F> {
    pub fn new(bialgebra: Bialgebra<F>, antipode: LinMap<F>) -> Result<Self> {
        let space = bialgebra.space();
        if !antipode.domain.same_shape(space) || !antipode.codomain.same_shape(space) {
            return Err(Error::SpaceMismatch {
                context: "antipode shape".into(),
                left: format!("{} -> {}", antipode.domain, antipode.codomain),
                right: format!("{space} -> {space}"),
            });
        }
        Ok(HopfAlgebra {
            bialgebra,
            antipode,
        })
    }

    pub fn field(&self) -> &F {
        self.bialgebra.field()
    }

    pub fn space(&self) -> &TensorSpace {
        self.bialgebra.space()
    }

    /// Bialgebra axioms plus both antipode identities.
    pub fn check(&self) -> Report {
        let mut report = self.bialgebra.check();
        let id = self.bialgebra.coalgebra.id();
        let delta = &self.bialgebra.coalgebra.delta;
        let mul = &self.bialgebra.algebra.mul;
        let unit_eps = self
            .bialgebra
            .algebra
            .unit
            .compose(&self.bialgebra.coalgebra.eps)
            .expect("shapes validated");

        let left = mul
            .compose(&self.antipode.tensor(&id).expect("shapes validated"))
            .and_then(|m| m.compose(delta))
            .expect("shapes validated");
        report.eq_check("antipode-left", &left, &unit_eps);
        let right = mul
            .compose(&id.tensor(&self.antipode).expect("shapes validated"))
            .and_then(|m| m.compose(delta))
            .expect("shapes validated");
        report.eq_check("antipode-right", &right, &unit_eps);
        report
    }
}

/// Solve the antipode identities as a linear system in the unknown matrix
/// `S`, requiring both `mul o (S (x) id) o delta = unit o eps` and
/// `mul o (id (x) S) o delta = unit o eps`. Errors if no solution exists.
/// When a solution exists it is unique (a two-sided convolution inverse of
/// the identity is unique), and the solver asserts that.
pub fn compute_antipode<F: Field>(b: &Bialgebra<F>) -> Result<LinMap<F>> {
    let field = b.field().clone();
    let n = b.space().total_dim();
    let delta = &b.coalgebra.delta.mat; // n^2 x n, rows indexed (a, c)
    let mul = &b.algebra.mul.mat; // n x n^2, cols indexed (s, c)
    let unit = b.algebra.unit_elem();
    let eps = &b.coalgebra.eps.mat; // 1 x n

    // Unknowns S[s, a] flattened as s * n + a. Equations indexed by
    // (side, r, j): sum over the leg carrying S.
    let mut sys = crate::linmap::Mat::zeros(&field, 2 * n * n, n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for r in 0..n {
        for j in 0..n {
            // Left identity at output r, input j:
            //   sum_{a,c,s} delta[(a,c),j] * S[s,a] * mul[r,(s,c)] = unit[r]*eps[j]
            let row = r * n + j;
            for a in 0..n {
                for c in 0..n {
                    let d = delta.get(a * n + c, j);
                    if field.is_zero(d) {
                        continue;
                    }
                    for s in 0..n {
                        let m = mul.get(r, s * n + c);
                        if field.is_zero(m) {
                            continue;
                        }
                        let cur = sys.get(row, s * n + a);
                        let v = field.add(cur, &field.mul(d, m));
                        sys.set(row, s * n + a, v);
                    }
                }
            }
        }
    }
    for r in 0..n {
        for j in 0..n {
            // Right identity:
            //   sum_{a,c,s} delta[(a,c),j] * S[s,c] * mul[r,(a,s)] = unit[r]*eps[j]
            let row = n * n + r * n + j;
            for a in 0..n {
                for c in 0..n {
                    let d = delta.get(a * n + c, j);
                    if field.is_zero(d) {
                        continue;
                    }
                    for s in 0..n {
                        let m = mul.get(r, a * n + s);
                        if field.is_zero(m) {
                            continue;
                        }
                        let cur = sys.get(row, s * n + c);
                        let v = field.add(cur, &field.mul(d, m));
                        sys.set(row, s * n + c, v);
                    }
                }
            }
        }
    }
    for side in 0..2 {
        for r in 0..n {
            for j in 0..n {
                let _ = side;
                rhs.push(field.mul(&unit[r], eps.get(0, j)));
            }
        }
    }

    let sol = sys
        .solve(&field, &rhs)?
        .ok_or_else(|| Error::NotInvertible("no antipode satisfies both identities".into()))?;
    assert!(
        sys.kernel(&field).is_empty(),
        "antipode solution space must be a single point"
    );
    let mut entries = Vec::new();
    for s in 0..n {
        for a in 0..n {
            let v = sol[s * n + a].clone();
            if !field.is_zero(&v) {
                entries.push((s, a, v));
            }
        }
    }
    LinMap::from_entries(field, b.space(), b.space(), &entries)
}

/// A dual pairing `form: C (x) D -> k` between two bialgebras, exchanging
/// products on one side with coproducts on the other.
#[derive(Clone, Debug)]
pub struct Pairing<F: Field> {
    pub left: Bialgebra<F>,
    pub right: Bialgebra<F>,
    pub form: LinMap<F>,
}

impl<F: Field> Pairing<F> {
    pub fn new(left: Bialgebra<F>, right: Bialgebra<F>, form: LinMap<F>) -> Result<Self> {
        let expect = left.space().tensor(right.space());
        if !form.domain.same_shape(&expect) || !form.codomain.same_shape(&TensorSpace::unit()) {
            return Err(Error::SpaceMismatch {
                context: "pairing form shape".into(),
                left: format!("{} -> {}", form.domain, form.codomain),
                right: format!("{expect} -> k"),
            });
        }
        Ok(Pairing { left, right, form })
    }

    /// The four pairing axioms:
    /// product on the left pairs against coproduct on the right (with the
    /// left arguments pairing in reversed order), product on the right pairs
    /// against coproduct on the left, and the units pair to the counits.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let field = self.left.field().clone();
        let id_l = self.left.coalgebra.id();
        let id_r = self.right.coalgebra.id();
        let form = &self.form;

        // form o (mul_L (x) id_R): first left argument pairs with the first
        // coproduct leg of the right side:
        //   <c' c, d> = <c', d_(1)> <c, d_(2)>
        let lhs = form
            .compose(
                &self
                    .left
                    .algebra
                    .mul
                    .tensor(&id_r)
                    .expect("shapes validated"),
            )
            .expect("shapes validated");
        let spread = id_l
            .tensor(&id_l)
            .and_then(|m| m.tensor(&self.right.coalgebra.delta))
            .expect("shapes validated");
        let mid = permute(field.clone(), &spread.codomain, &[0, 2, 1, 3]);
        let rhs = form
            .tensor(form)
            .and_then(|ff| ff.compose(&mid))
            .and_then(|m| m.compose(&spread))
            .expect("shapes validated");
        report.eq_check("pairing-left-product", &lhs, &rhs);

        // form o (id_L (x) mul_R): <c, d d'> = <c_(1), d> <c_(2), d'>
        let lhs = form
            .compose(
                &id_l
                    .tensor(&self.right.algebra.mul)
                    .expect("shapes validated"),
            )
            .expect("shapes validated");
        let spread = self
            .left
            .coalgebra
            .delta
            .tensor(&id_r)
            .and_then(|m| m.tensor(&id_r))
            .expect("shapes validated");
        let mid = permute(field.clone(), &spread.codomain, &[0, 2, 1, 3]);
        let rhs = form
            .tensor(form)
            .and_then(|ff| ff.compose(&mid))
            .and_then(|m| m.compose(&spread))
            .expect("shapes validated");
        report.eq_check("pairing-right-product", &lhs, &rhs);

        // form o (unit_L (x) id_R) = eps_R
        let lhs = form
            .compose(
                &self
                    .left
                    .algebra
                    .unit
                    .tensor(&id_r)
                    .expect("shapes validated"),
            )
            .expect("shapes validated");
        report.eq_check("pairing-left-unit", &lhs, &self.right.coalgebra.eps);

        // form o (id_L (x) unit_R) = eps_L
        let lhs = form
            .compose(
                &id_l
                    .tensor(&self.right.algebra.unit)
                    .expect("shapes validated"),
            )
            .expect("shapes validated");
        report.eq_check("pairing-right-unit", &lhs, &self.left.coalgebra.eps);
        report
    }
}

/// The tensor product coalgebra `C (x) D` with
/// `delta = (id (x) tau (x) id) o (delta_C (x) delta_D)` and
/// `eps = eps_C (x) eps_D`.
pub fn tensor_coalgebra<F: Field>(c: &Coalgebra<F>, d: &Coalgebra<F>) -> Result<Coalgebra<F>> {
    if c.field != d.field {
        return Err(Error::FieldMismatch {
            left: c.field.name(),
            right: d.field.name(),
        });
    }
    let field = c.field.clone();
    let dd = c.delta.tensor(&d.delta)?;
    let n_c = c.space.num_factors();
    let n_d = d.space.num_factors();
    // Middle swap: (C C D D) -> (C D C D), moving whole space blocks.
    let perm: Vec<usize> = (0..n_c)
        .chain(2 * n_c..2 * n_c + n_d)
        .chain(n_c..2 * n_c)
        .chain(2 * n_c + n_d..2 * n_c + 2 * n_d)
        .collect();
    let mid = permute(field.clone(), &dd.codomain, &perm);
    let delta = mid.compose(&dd)?;
    let eps = c.eps.tensor(&d.eps)?;
    Coalgebra::new(field, c.space.tensor(&d.space), delta, eps)
}

/// The tensor product algebra `A (x) B` with componentwise product
/// `(a (x) b)(a' (x) b') = aa' (x) bb'`.
pub fn tensor_algebra<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Result<Algebra<F>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch {
            left: a.field.name(),
            right: b.field.name(),
        });
    }
    let field = a.field.clone();
    let mm = a.mul.tensor(&b.mul)?;
    let n_a = a.space.num_factors();
    let n_b = b.space.num_factors();
    let domain = a
        .space
        .tensor(&b.space)
        .tensor(&a.space)
        .tensor(&b.space);
    // (A B A B) -> (A A B B) feeding mul_A (x) mul_B.
    let perm: Vec<usize> = (0..n_a)
        .chain(n_a + n_b..2 * n_a + n_b)
        .chain(n_a..n_a + n_b)
        .chain(2 * n_a + n_b..2 * (n_a + n_b))
        .collect();
    let mid = permute(field.clone(), &domain, &perm);
    let mul = mm.compose(&mid)?;
    let unit = a.unit.tensor(&b.unit)?;
    Algebra::new(field, a.space.tensor(&b.space), mul, unit)
}

/// The co-opposite coalgebra: coproduct postcomposed with the flip.
pub fn opposite_coalgebra<F: Field>(c: &Coalgebra<F>) -> Coalgebra<F> {
    let tau = flip(c.field.clone(), &c.space, &c.space);
    let delta = tau.compose(&c.delta).expect("shapes validated");
    Coalgebra {
        field: c.field.clone(),
        space: c.space.clone(),
        delta,
        eps: c.eps.clone(),
    }
}

/// The opposite algebra: product precomposed with the flip.
pub fn opposite_algebra<F: Field>(a: &Algebra<F>) -> Algebra<F> {
    let tau = flip(a.field.clone(), &a.space, &a.space);
    let mul = a.mul.compose(&tau).expect("shapes validated");
    Algebra {
        field: a.field.clone(),
        space: a.space.clone(),
        mul,
        unit: a.unit.clone(),
    }
}

/// Append a prime to every factor label: the dual-space naming convention.
pub fn primed_space(space: &TensorSpace) -> TensorSpace {
    TensorSpace::from_factors(
        space
            .factors()
            .iter()
            .map(|(l, d)| (format!("{l}'"), *d))
            .collect(),
    )
}

/// The dual algebra of a coalgebra: product = transpose of the coproduct,
/// unit = transpose of the counit, on the primed space. Row-major basis
/// order makes the identification `(C (x) C)' = C' (x) C'` the plain matrix
/// transpose.
pub fn dual_algebra<F: Field>(c: &Coalgebra<F>) -> Algebra<F> {
    let dual = primed_space(&c.space);
    let mul = c
        .delta
        .transpose()
        .with_spaces(dual.tensor(&dual), dual.clone())
        .expect("transpose dims match");
    let unit = c
        .eps
        .transpose()
        .with_spaces(TensorSpace::unit(), dual.clone())
        .expect("transpose dims match");
    Algebra {
        field: c.field.clone(),
        space: dual,
        mul,
        unit,
    }
}

/// The dual coalgebra of an algebra (finite dimension makes this exact):
/// coproduct = transpose of the product, counit = transpose of the unit.
pub fn dual_coalgebra<F: Field>(a: &Algebra<F>) -> Coalgebra<F> {
    let dual = primed_space(&a.space);
    let delta = a
        .mul
        .transpose()
        .with_spaces(dual.clone(), dual.tensor(&dual))
        .expect("transpose dims match");
    let eps = a
        .unit
        .transpose()
        .with_spaces(dual.clone(), TensorSpace::unit())
        .expect("transpose dims match");
    Coalgebra {
        field: a.field.clone(),
        space: dual,
        delta,
        eps,
    }
}

/// Is `f` a morphism of coalgebras `from -> to`?
pub fn is_coalgebra_morphism<F: Field>(
    f: &LinMap<F>,
    from: &Coalgebra<F>,
    to: &Coalgebra<F>,
) -> Report {
    let mut report = Report::new();
    let ff = f.tensor(f).expect("tensor square");
    match (ff.compose(&from.delta), to.delta.compose(f)) {
        (Ok(lhs), Ok(rhs)) => report.eq_check("morphism-respects-coproduct", &lhs, &rhs),
        _ => report.push(crate::report::Check {
            name: "morphism-respects-coproduct".into(),
            passed: false,
            witness: None,
        }),
    }
    match (from.eps.clone(), to.eps.compose(f)) {
        (lhs, Ok(rhs)) => report.eq_check("morphism-respects-counit", &rhs, &lhs),
        _ => report.push(crate::report::Check {
            name: "morphism-respects-counit".into(),
            passed: false,
            witness: None,
        }),
    }
    report
}

/// Is `f` a morphism of unital algebras `from -> to`?
pub fn is_algebra_morphism<F: Field>(
    f: &LinMap<F>,
    from: &Algebra<F>,
    to: &Algebra<F>,
) -> Report {
    let mut report = Report::new();
    let ff = f.tensor(f).expect("tensor square");
    match (f.compose(&from.mul), to.mul.compose(&ff)) {
        (Ok(lhs), Ok(rhs)) => report.eq_check("morphism-respects-product", &lhs, &rhs),
        _ => report.push(crate::report::Check {
            name: "morphism-respects-product".into(),
            passed: false,
            witness: None,
        }),
    }
    match f.compose(&from.unit) {
        Ok(lhs) => report.eq_check("morphism-respects-unit", &lhs, &to.unit),
        _ => report.push(crate::report::Check {
            name: "morphism-respects-unit".into(),
            passed: false,
            witness: None,
        }),
    }
    report
}
