//! A catalog of small, fully explicit structures used as fixtures and as
//! exportable starting points for the CLI: group algebras, their function
//! algebra duals, the 4-dimensional non-commutative non-cocommutative Hopf
//! algebra, matrix coalgebras, and the canonical group/function pairings.

use crate::coalg::{Algebra, Bialgebra, Coalgebra, HopfAlgebra, Pairing};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linmap::LinMap;
use crate::space::TensorSpace;

/// Multiplication table of the cyclic group of order `n` (identity is 0).
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Multiplication table of the Klein four-group (bitwise xor on 0..4).
pub fn klein_table() -> Vec<Vec<usize>> {
    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()
}

/// Group-table sanity: closure, associativity, two-sided identity, and
/// two-sided inverses. Returns the identity index and the inverse table.
fn validate_group(table: &[Vec<usize>]) -> Result<(usize, Vec<usize>)> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty multiplication table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {i} has length {}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::NotAGroup(format!("entry ({i},{j}) = {v} out of range")));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
        .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
    let mut inverse = vec![0usize; n];
    for i in 0..n {
        let inv = (0..n)
            .find(|&j| table[i][j] == identity && table[j][i] == identity)
            .ok_or_else(|| Error::NotAGroup(format!("element {i} has no inverse")))?;
        inverse[i] = inv;
    }
    Ok((identity, inverse))
}

/// The group algebra kG: basis indexed by group elements, product from the
/// table, group-like coproduct, antipode from inversion.
pub fn group_algebra<F: Field>(field: F, label: &str, table: &[Vec<usize>]) -> Result<HopfAlgebra<F>> {
    let (identity, inverse) = validate_group(table)?;
    let n = table.len();
    let space = TensorSpace::single(label, n);
    let square = space.tensor(&space);
    let one = field.one();

    let mul_entries: Vec<(usize, usize, F::Elem)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (table[i][j], i * n + j, one.clone()))
        .collect();
    let mul = LinMap::from_entries(field.clone(), &square, &space, &mul_entries)?;
    let unit = LinMap::from_entries(
        field.clone(),
        &TensorSpace::unit(),
        &space,
        &[(identity, 0, one.clone())],
    )?;
    let algebra = Algebra::new(field.clone(), space.clone(), mul, unit)?;

    let delta_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|i| (i * n + i, i, one.clone())).collect();
    let delta = LinMap::from_entries(field.clone(), &space, &square, &delta_entries)?;
    let eps_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|i| (0, i, one.clone())).collect();
    let eps = LinMap::from_entries(field.clone(), &space, &TensorSpace::unit(), &eps_entries)?;
    let coalgebra = Coalgebra::new(field.clone(), space.clone(), delta, eps)?;

    let antipode_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|i| (inverse[i], i, one.clone())).collect();
    let antipode = LinMap::from_entries(field, &space, &space, &antipode_entries)?;
    HopfAlgebra::new(Bialgebra::new(coalgebra, algebra)?, antipode)
}

/// The function algebra k^G on a finite group: pointwise product on delta
/// functions, coproduct dual to the group product, counit = evaluation at
/// the identity, antipode from inversion.
pub fn function_algebra<F: Field>(
    field: F,
    label: &str,
    table: &[Vec<usize>],
) -> Result<HopfAlgebra<F>> {
    let (identity, inverse) = validate_group(table)?;
    let n = table.len();
    let space = TensorSpace::single(label, n);
    let square = space.tensor(&space);
    let one = field.one();

    let mul_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|i| (i, i * n + i, one.clone())).collect();
    let mul = LinMap::from_entries(field.clone(), &square, &space, &mul_entries)?;
    let unit_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|i| (i, 0, one.clone())).collect();
    let unit = LinMap::from_entries(field.clone(), &TensorSpace::unit(), &space, &unit_entries)?;
    let algebra = Algebra::new(field.clone(), space.clone(), mul, unit)?;

    // delta(d_x) = sum over factorizations ab = x of d_a (x) d_b.
    let mut delta_entries: Vec<(usize, usize, F::Elem)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            delta_entries.push((a * n + b, table[a][b], one.clone()));
        }
    }
    let delta = LinMap::from_entries(field.clone(), &space, &square, &delta_entries)?;
    let eps = LinMap::from_entries(
        field.clone(),
        &space,
        &TensorSpace::unit(),
        &[(0, identity, one.clone())],
    )?;
    let coalgebra = Coalgebra::new(field.clone(), space.clone(), delta, eps)?;

    let antipode_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|i| (inverse[i], i, one.clone())).collect();
    let antipode = LinMap::from_entries(field, &space, &space, &antipode_entries)?;
    HopfAlgebra::new(Bialgebra::new(coalgebra, algebra)?, antipode)
}

/// The 4-dimensional Hopf algebra generated by a group-like `g` and a
/// skew-primitive `x` with `g^2 = 1`, `x^2 = 0`, `xg = -gx`. Basis order:
/// `1, g, x, gx`. Not defined in characteristic 2 (it degenerates there),
/// so fields where 2 = 0 are rejected.
pub fn sweedler_h4<F: Field>(field: F, label: &str) -> Result<HopfAlgebra<F>> {
    if field.is_zero(&field.from_i64(2)) {
        return Err(Error::BadCharacteristic(
            "the 4-dimensional example needs 2 invertible; characteristic 2 is degenerate".into(),
        ));
    }
    let space = TensorSpace::single(label, 4);
    let square = space.tensor(&space);
    let one = field.one();
    let neg = field.neg(&one);

    // Indices: 0 = 1, 1 = g, 2 = x, 3 = gx.
    // Products: rows are left factor, columns right factor; entries are
    // (result index, sign); None = 0.
    let table: [[Option<(usize, bool)>; 4]; 4] = [
        [Some((0, false)), Some((1, false)), Some((2, false)), Some((3, false))],
        [Some((1, false)), Some((0, false)), Some((3, false)), Some((2, false))],
        [Some((2, false)), Some((3, true)), None, None],
        [Some((3, false)), Some((2, true)), None, None],
    ];
    let mut mul_entries: Vec<(usize, usize, F::Elem)> = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if let Some((k, negate)) = cell {
                let coeff = if *negate { neg.clone() } else { one.clone() };
                mul_entries.push((*k, i * 4 + j, coeff));
            }
        }
    }
    let mul = LinMap::from_entries(field.clone(), &square, &space, &mul_entries)?;
    let unit = LinMap::from_entries(field.clone(), &TensorSpace::unit(), &space, &[(0, 0, one.clone())])?;
    let algebra = Algebra::new(field.clone(), space.clone(), mul, unit)?;

    // Coproducts: 1 and g group-like; x skew-primitive; gx forced by
    // multiplicativity.
    let pair = |a: usize, b: usize| a * 4 + b;
    let delta_entries: Vec<(usize, usize, F::Elem)> = vec![
        (pair(0, 0), 0, one.clone()),
        (pair(1, 1), 1, one.clone()),
        (pair(2, 0), 2, one.clone()),
        (pair(1, 2), 2, one.clone()),
        (pair(3, 1), 3, one.clone()),
        (pair(0, 3), 3, one.clone()),
    ];
    let delta = LinMap::from_entries(field.clone(), &space, &square, &delta_entries)?;
    let eps = LinMap::from_entries(
        field.clone(),
        &space,
        &TensorSpace::unit(),
        &[(0, 0, one.clone()), (0, 1, one.clone())],
    )?;
    let coalgebra = Coalgebra::new(field.clone(), space.clone(), delta, eps)?;

    // Antipode: S(1) = 1, S(g) = g, S(x) = -gx, S(gx) = x; S^2 != id.
    let antipode = LinMap::from_entries(
        field.clone(),
        &space,
        &space,
        &[
            (0, 0, one.clone()),
            (1, 1, one.clone()),
            (3, 2, neg),
            (2, 3, one),
        ],
    )?;
    HopfAlgebra::new(Bialgebra::new(coalgebra, algebra)?, antipode)
}

/// The matrix coalgebra of size `n`: basis `e_(i,j)` indexed `i * n + j`,
/// coproduct `e_(i,j) -> sum_k e_(i,k) (x) e_(k,j)`, counit `[i = j]`.
/// Not cocommutative for `n >= 2`.
pub fn matrix_coalgebra<F: Field>(field: F, label: &str, n: usize) -> Result<Coalgebra<F>> {
    let dim = n * n;
    let space = TensorSpace::single(label, dim);
    let square = space.tensor(&space);
    let one = field.one();
    let mut delta_entries: Vec<(usize, usize, F::Elem)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = i * n + k;
                let right = k * n + j;
                delta_entries.push((left * dim + right, i * n + j, one.clone()));
            }
        }
    }
    let delta = LinMap::from_entries(field.clone(), &space, &square, &delta_entries)?;
    let eps_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|i| (0, i * n + i, one.clone())).collect();
    let eps = LinMap::from_entries(field.clone(), &space, &TensorSpace::unit(), &eps_entries)?;
    Coalgebra::new(field, space, delta, eps)
}

/// The one-dimensional coalgebra on the ground field.
pub fn trivial_coalgebra<F: Field>(field: F, label: &str) -> Coalgebra<F> {
    let space = TensorSpace::single(label, 1);
    let square = space.tensor(&space);
    let one = field.one();
    let delta = LinMap::from_entries(field.clone(), &space, &square, &[(0, 0, one.clone())])
        .expect("1-dimensional shapes");
    let eps = LinMap::from_entries(field.clone(), &space, &TensorSpace::unit(), &[(0, 0, one)])
        .expect("1-dimensional shapes");
    Coalgebra::new(field, space, delta, eps).expect("trivial coalgebra is well-shaped")
}

/// The canonical pairing between kG and k^G: `<e_x, d_y> = [x = y]`.
pub fn group_dual_pairing<F: Field>(
    field: F,
    table: &[Vec<usize>],
    group_label: &str,
    dual_label: &str,
) -> Result<Pairing<F>> {
    let kg = group_algebra(field.clone(), group_label, table)?;
    let kgd = function_algebra(field.clone(), dual_label, table)?;
    let n = table.len();
    let domain = kg.space().tensor(kgd.space());
    let one = field.one();
    let form_entries: Vec<(usize, usize, F::Elem)> =
        (0..n).map(|x| (0, x * n + x, one.clone())).collect();
    let form = LinMap::from_entries(field, &domain, &TensorSpace::unit(), &form_entries)?;
    Pairing::new(kg.bialgebra, kgd.bialgebra, form)
}

/// One exportable catalog item.
pub enum ZooItem<F: Field> {
    Coalg(Coalgebra<F>),
    Hopf(HopfAlgebra<F>),
    Pair(Pairing<F>),
}

/// Names and one-line descriptions of everything in the catalog.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("kc2", "group algebra of the cyclic group of order 2"),
        ("kc3", "group algebra of the cyclic group of order 3"),
        ("kc4", "group algebra of the cyclic group of order 4"),
        ("kv4", "group algebra of the Klein four-group"),
        ("fnc2", "functions on the cyclic group of order 2"),
        ("fnc3", "functions on the cyclic group of order 3"),
        ("fnv4", "functions on the Klein four-group"),
        ("sweedler", "4-dimensional non-commutative non-cocommutative Hopf algebra"),
        ("mc2", "2x2 matrix coalgebra"),
        ("mc3", "3x3 matrix coalgebra"),
        ("trivial", "one-dimensional coalgebra on the ground field"),
        ("pair-c2", "canonical pairing of kC2 with functions on C2"),
        ("pair-c3", "canonical pairing of kC3 with functions on C3"),
    ]
}

/// Build a catalog item by name over the given field.
pub fn build<F: Field>(field: F, name: &str) -> Result<ZooItem<F>> {
    match name {
        "kc2" => Ok(ZooItem::Hopf(group_algebra(field, "C", &cyclic_table(2))?)),
        "kc3" => Ok(ZooItem::Hopf(group_algebra(field, "C", &cyclic_table(3))?)),
        "kc4" => Ok(ZooItem::Hopf(group_algebra(field, "C", &cyclic_table(4))?)),
        "kv4" => Ok(ZooItem::Hopf(group_algebra(field, "V", &klein_table())?)),
        "fnc2" => Ok(ZooItem::Hopf(function_algebra(field, "D", &cyclic_table(2))?)),
        "fnc3" => Ok(ZooItem::Hopf(function_algebra(field, "D", &cyclic_table(3))?)),
        "fnv4" => Ok(ZooItem::Hopf(function_algebra(field, "W", &klein_table())?)),
        "sweedler" => Ok(ZooItem::Hopf(sweedler_h4(field, "H4")?)),
        "mc2" => Ok(ZooItem::Coalg(matrix_coalgebra(field, "M2", 2)?)),
        "mc3" => Ok(ZooItem::Coalg(matrix_coalgebra(field, "M3", 3)?)),
        "trivial" => Ok(ZooItem::Coalg(trivial_coalgebra(field, "I"))),
        "pair-c2" => Ok(ZooItem::Pair(group_dual_pairing(
            field,
            &cyclic_table(2),
            "C",
            "D",
        )?)),
        "pair-c3" => Ok(ZooItem::Pair(group_dual_pairing(
            field,
            &cyclic_table(3),
            "C",
            "D",
        )?)),
        other => Err(Error::Validation(format!("unknown catalog name: {other}"))),
    }
}
