//! Equivalence of twists and strong isomorphism of the coalgebras they
//! induce.
//!
//! Two twists on the same pair of coalgebras are equivalent when an
//! invertible automorphism of the untwisted tensor coalgebra intertwines
//! their middle-leg actions on the fourfold tensor space. Equivalence
//! transports coproducts, counits, and counit witness maps; the search
//! helpers look for a witnessing automorphism at desk scale.

use crate::coalg::{is_coalgebra_morphism, tensor_coalgebra, Coalgebra};
use crate::cotwist::{solve_counit, twisted_coproduct, Twist};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functionals::Functional;
use crate::linmap::{flip, LinMap, Mat};
use crate::report::{eq_check, Check, Report};
use crate::space::TensorSpace;

/// Validate that `theta` can witness an equivalence between `t1` and `t2`:
/// both twists live on the same coalgebra pair, and `theta` is an
/// invertible coalgebra automorphism of the untwisted tensor coalgebra.
fn validate_witness<F: Field>(
    t1: &Twist<F>,
    t2: &Twist<F>,
    theta: &LinMap<F>,
) -> Result<Coalgebra<F>> {
    if t1.c != t2.c || t1.d != t2.d {
        return Err(Error::Validation(
            "equivalence requires twists on the same pair of coalgebras".into(),
        ));
    }
    let square = t1.c.space.tensor(&t1.d.space);
    if !theta.domain.same_shape(&square) || !theta.codomain.same_shape(&square) {
        return Err(Error::ThetaInvalid(format!(
            "theta must be an endomorphism of {square}, got {} -> {}",
            theta.domain, theta.codomain
        )));
    }
    if !theta.is_invertible() {
        return Err(Error::ThetaInvalid("theta is not invertible".into()));
    }
    let tensor = tensor_coalgebra(&t1.c, &t1.d)?;
    if !is_coalgebra_morphism(theta, &tensor, &tensor).passed() {
        return Err(Error::ThetaInvalid(
            "theta is not a coalgebra automorphism of the tensor coalgebra".into(),
        ));
    }
    Ok(tensor)
}

/// The two sides of the intertwining identity
/// `(id_C (x) psi2' (x) id_D)(theta (x) theta)
///   = (theta (x) theta)(id_C (x) psi1' (x) id_D)`.
fn intertwining_sides<F: Field>(
    t1: &Twist<F>,
    t2: &Twist<F>,
    theta: &LinMap<F>,
) -> Result<(LinMap<F>, LinMap<F>)> {
    let id_c = t1.c.id();
    let id_d = t1.d.id();
    let mid1 = id_c.tensor(&t1.psi_prime())?.tensor(&id_d)?;
    let mid2 = id_c.tensor(&t2.psi_prime())?.tensor(&id_d)?;
    let th2 = theta.tensor(theta)?;
    Ok((mid2.compose(&th2)?, th2.compose(&mid1)?))
}

/// Whether `theta` witnesses an equivalence of the two twists. On a pass,
/// the consequences are asserted: `theta` intertwines the twisted
/// coproducts, and the counits exist on both sides or neither, matching
/// through `theta` — both follow from the checked identity together with
/// the automorphism property, with no further hypotheses.
pub fn are_equivalent<F: Field>(
    t1: &Twist<F>,
    t2: &Twist<F>,
    theta: &LinMap<F>,
) -> Result<Report> {
    validate_witness(t1, t2, theta)?;
    let (lhs, rhs) = intertwining_sides(t1, t2, theta)?;
    let mut report = Report::new();
    report.push(eq_check("twist-intertwining", &lhs, &rhs));

    if report.passed() {
        let delta1 = twisted_coproduct(t1);
        let delta2 = twisted_coproduct(t2);
        let transported = theta.tensor(theta)?.compose(&delta1)?;
        assert_eq!(
            transported,
            delta2.compose(theta)?,
            "an equivalence witness must intertwine the twisted coproducts"
        );
        let eps1 = solve_counit(&delta1);
        let eps2 = solve_counit(&delta2);
        match (&eps1, &eps2) {
            (Some(e1), Some(e2)) => {
                let pulled = Functional::from_linmap(&e2.to_linmap().compose(theta)?)
                    .expect("a functional precomposed with theta is a functional");
                assert_eq!(
                    e1, &pulled,
                    "an equivalence witness must transport the counits"
                );
            }
            (None, None) => {}
            _ => panic!("equivalent twists have counits on both sides or neither"),
        }
    }
    Ok(report)
}

/// Whether `theta` makes the two twisted coalgebras strongly isomorphic:
/// it must intertwine the twisted coproducts, the counits (when they
/// exist), and the twist maps themselves. The witness precondition is the
/// same as for [`are_equivalent`]; the two verdicts agree for every valid
/// witness.
pub fn strongly_isomorphic<F: Field>(
    t1: &Twist<F>,
    t2: &Twist<F>,
    theta: &LinMap<F>,
) -> Result<Report> {
    validate_witness(t1, t2, theta)?;
    let mut report = Report::new();

    let delta1 = twisted_coproduct(t1);
    let delta2 = twisted_coproduct(t2);
    let lhs = theta.tensor(theta)?.compose(&delta1)?;
    let rhs = delta2.compose(theta)?;
    report.push(eq_check("twisted-coproduct-intertwining", &lhs, &rhs));

    match (solve_counit(&delta1), solve_counit(&delta2)) {
        (Some(e1), Some(e2)) => {
            let pulled = e2.to_linmap().compose(theta)?;
            report.push(eq_check(
                "twisted-counit-intertwining",
                &e1.to_linmap(),
                &pulled,
            ));
        }
        (None, None) => report.push(Check::pass("twisted-counit-intertwining")),
        _ => report.push(Check {
            name: "twisted-counit-intertwining".into(),
            passed: false,
            witness: None,
        }),
    }

    let (lhs, rhs) = intertwining_sides(t1, t2, theta)?;
    report.push(eq_check("twist-intertwining", &lhs, &rhs));
    Ok(report)
}

/// Transport a counit witness map along `theta`:
/// `z2 = theta_hat o z1 o theta^-1` with `theta_hat = tau o theta o tau`.
/// A twist is witness-conormal for `z1` exactly when an equivalent twist is
/// for `z2`.
pub fn transport_z<F: Field>(z1: &LinMap<F>, theta: &LinMap<F>) -> Result<LinMap<F>> {
    if z1.domain.num_factors() != 2 || z1.codomain.num_factors() != 2 {
        return Err(Error::SpaceMismatch {
            context: "witness transport".into(),
            left: format!("{} -> {}", z1.domain, z1.codomain),
            right: "a two-factor witness C (x) D -> D (x) C".into(),
        });
    }
    if !theta.domain.same_shape(&z1.domain) || !theta.codomain.same_shape(&z1.domain) {
        return Err(Error::ThetaInvalid(format!(
            "theta must be an endomorphism of {}, got {} -> {}",
            z1.domain, theta.domain, theta.codomain
        )));
    }
    let theta_inv = theta
        .inverse()
        .ok_or_else(|| Error::ThetaInvalid("theta is not invertible".into()))?;
    let factors = z1.domain.factors();
    let space_c = TensorSpace::from_factors(vec![factors[0].clone()]);
    let space_d = TensorSpace::from_factors(vec![factors[1].clone()]);
    let flip_cd = flip(theta.field.clone(), &space_c, &space_d);
    let flip_dc = flip(theta.field.clone(), &space_d, &space_c);
    let theta_hat = flip_cd.compose(theta)?.compose(&flip_dc)?;
    theta_hat.compose(z1)?.compose(&theta_inv)
}

/// Which family of candidate witnesses [`search_theta`] enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaSearchSpace {
    /// Automorphisms that factor as `alpha (x) beta`, with each tensorand
    /// ranging over the basis permutations that are coalgebra
    /// automorphisms of its factor. Works over any field; exhaustive for
    /// its class.
    Factorized,
    /// Every matrix on the tensor square over a finite scalar field,
    /// filtered to invertible coalgebra automorphisms. Exhaustive, so
    /// `None` is a proof of inequivalence; only feasible at tiny
    /// dimensions.
    General,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product::<u128>().max(1)
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // Lexicographic successor.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// The linear map sending basis vector `i` to basis vector `perm[i]`.
fn permutation_map<F: Field>(field: F, space: &TensorSpace, perm: &[usize]) -> LinMap<F> {
    let entries: Vec<(usize, usize, F::Elem)> = perm
        .iter()
        .enumerate()
        .map(|(i, &pi)| (pi, i, field.one()))
        .collect();
    LinMap::from_entries(field, space, space, &entries).expect("permutation entries are in range")
}

/// Basis permutations of a coalgebra that are coalgebra automorphisms.
fn permutation_automorphisms<F: Field>(c: &Coalgebra<F>) -> Vec<LinMap<F>> {
    permutations(c.space.total_dim())
        .into_iter()
        .map(|p| permutation_map(c.field.clone(), &c.space, &p))
        .filter(|m| is_coalgebra_morphism(m, c, c).passed())
        .collect()
}

/// Search for a witness to the equivalence of two twists within the given
/// candidate family. Returns the first witness in enumeration order, or
/// `None` once the family is exhausted. Errors with `BudgetExceeded`
/// before enumerating if the family has more candidates than `budget`,
/// and refuses the general search over an infinite scalar field.
pub fn search_theta<F: Field>(
    t1: &Twist<F>,
    t2: &Twist<F>,
    space: ThetaSearchSpace,
    budget: u64,
) -> Result<Option<LinMap<F>>> {
    if t1.c != t2.c || t1.d != t2.d {
        return Err(Error::Validation(
            "equivalence requires twists on the same pair of coalgebras".into(),
        ));
    }
    match space {
        ThetaSearchSpace::Factorized => {
            let needed = factorial(t1.c.space.total_dim()) * factorial(t1.d.space.total_dim());
            if needed > u128::from(budget) {
                return Err(Error::BudgetExceeded {
                    needed,
                    budget: u128::from(budget),
                });
            }
            let alphas = permutation_automorphisms(&t1.c);
            let betas = permutation_automorphisms(&t1.d);
            for alpha in &alphas {
                for beta in &betas {
                    let theta = alpha.tensor(beta)?;
                    let (lhs, rhs) = intertwining_sides(t1, t2, &theta)?;
                    if lhs == rhs {
                        return Ok(Some(theta));
                    }
                }
            }
            Ok(None)
        }
        ThetaSearchSpace::General => {
            let field = t1.field().clone();
            let Some(elems) = field.elements() else {
                return Err(Error::Validation(
                    "the general witness search needs a finite scalar field".into(),
                ));
            };
            let square = t1.c.space.tensor(&t1.d.space);
            let n = square.total_dim();
            let cells = n * n;
            let q = elems.len() as u128;
            let needed = (0..cells).try_fold(1u128, |acc, _| acc.checked_mul(q));
            match needed {
                Some(total) if total <= u128::from(budget) => {}
                _ => {
                    return Err(Error::BudgetExceeded {
                        needed: needed.unwrap_or(u128::MAX),
                        budget: u128::from(budget),
                    })
                }
            }
            let tensor = tensor_coalgebra(&t1.c, &t1.d)?;
            // Odometer over all matrices: the entry at row 0, column 0
            // varies fastest, row-major after that.
            let mut digits = vec![0usize; cells];
            loop {
                let mut mat = Mat::zeros(&field, n, n);
                for (k, &dk) in digits.iter().enumerate() {
                    mat.set(k / n, k % n, elems[dk].clone());
                }
                let theta = LinMap::new(field.clone(), square.clone(), square.clone(), mat)
                    .expect("square shape");
                if theta.is_invertible()
                    && is_coalgebra_morphism(&theta, &tensor, &tensor).passed()
                {
                    let (lhs, rhs) = intertwining_sides(t1, t2, &theta)?;
                    if lhs == rhs {
                        return Ok(Some(theta));
                    }
                }
                let mut k = 0;
                while k < cells {
                    digits[k] += 1;
                    if digits[k] < elems.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == cells {
                    return Ok(None);
                }
            }
        }
    }
}
