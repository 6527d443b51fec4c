//! Brute-force enumeration of twisting-map candidates over a prime field.
//!
//! A search fixes two group-like coalgebras `C` and `D` of the requested
//! dimensions (coproduct `b -> b (x) b`, counit `b -> 1` on every basis
//! vector), then walks **every** matrix `C (x) D -> D (x) C` over `F_p` in a
//! fixed order: candidate `k` is the base-`p` expansion of `k`, least
//! significant digit first, filling the matrix row-major. Candidates that
//! satisfy the requested constraints are emitted in index order, each with a
//! full classification record; everything is exact, so a hit is a theorem
//! about those structure constants.
//!
//! The search space has `p^(N^2)` candidates for `N = dim C * dim D`, which
//! is gated by an explicit budget before any work starts. Sharded runs split
//! candidates by `index mod jobs` and merge back into index order, so the
//! emitted stream does not depend on the number of workers.

use serde::{Deserialize, Serialize};

use crate::coalg::Coalgebra;
use crate::cotwist::{
    check_octagon, check_pentagons, is_conormal, is_z_conormal, solve_counit, synthesize_z,
    twisted_coproduct, Twist,
};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::functionals::is_in_tw;
use crate::linmap::{LinMap, Mat};
use crate::space::TensorSpace;
use crate::zoo::{cyclic_table, group_algebra};

/// Default candidate budget: covers both factors 2-dimensional over F_2.
pub const DEFAULT_BUDGET: u64 = 1 << 16;

/// Environment variable that overrides the default budget.
pub const BUDGET_ENV_VAR: &str = "TWISTLAB_BUDGET";

/// The default budget, honoring [`BUDGET_ENV_VAR`] when set to a number.
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Which conditions an emitted candidate must satisfy. Every flag defaults
/// to off (emit everything).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchConstraints {
    pub octagon: bool,
    pub pentagons: bool,
    pub conormal: bool,
    pub counit: bool,
    pub tw: bool,
}

impl SearchConstraints {
    /// Parse constraint names as they appear on the command line.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut out = SearchConstraints::default();
        for name in names {
            match name.as_ref() {
                "octagon" => out.octagon = true,
                "pentagons" => out.pentagons = true,
                "conormal" => out.conormal = true,
                "counit" => out.counit = true,
                "tw" => out.tw = true,
                other => {
                    return Err(Error::Validation(format!(
                        "unknown constraint \"{other}\" (expected octagon, pentagons, \
                         conormal, counit, or tw)"
                    )));
                }
            }
        }
        Ok(out)
    }
}

/// One emitted candidate with its full classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Candidate index in the deterministic enumeration.
    pub index: u64,
    /// The matrix, row-major, as canonical residues.
    pub entries: Vec<u64>,
    /// Does the twisted coproduct satisfy the coassociativity condition?
    pub octagon: bool,
    /// Do both one-sided factorization conditions hold?
    pub pentagons: bool,
    pub conormal_left: bool,
    pub conormal_right: bool,
    /// When the twisted coproduct has a counit and the induced candidate `z`
    /// makes the twist z-conormal on both sides, the entries of that `z`.
    pub z_conormal: Option<Vec<u64>>,
    /// Does the twist satisfy the left/right coaction membership conditions?
    pub in_tw: bool,
    /// Counit coefficients of the twisted coproduct, when one exists.
    pub counit: Option<Vec<u64>>,
    /// Is the candidate invertible as a linear map?
    pub invertible: bool,
}

/// A validated search: coalgebras built, budget checked, ready to enumerate.
pub struct Search {
    field: PrimeField,
    c: Coalgebra<PrimeField>,
    d: Coalgebra<PrimeField>,
    domain: TensorSpace,
    codomain: TensorSpace,
    p: u64,
    n: usize,
    total: u64,
    constraints: SearchConstraints,
}

/// Plan a search over all `p^((dim_c * dim_d)^2)` matrices on the tensor
/// square of group-like coalgebras with the given dimensions. Fails with
/// [`Error::BudgetExceeded`] when the candidate count is over `budget`.
pub fn plan(
    dims: (usize, usize),
    p: u64,
    constraints: SearchConstraints,
    budget: u64,
) -> Result<Search> {
    let field = PrimeField::new(p)?;
    if dims.0 == 0 || dims.1 == 0 {
        return Err(Error::Validation("search dimensions must be positive".into()));
    }
    let c = group_algebra(field.clone(), "C", &cyclic_table(dims.0))?
        .bialgebra
        .coalgebra;
    let d = group_algebra(field.clone(), "D", &cyclic_table(dims.1))?
        .bialgebra
        .coalgebra;
    let n = dims.0 * dims.1;
    let digits = (n * n) as u32;
    let total = (p as u128)
        .checked_pow(digits)
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: budget as u128,
        });
    }
    let domain = c.space.tensor(&d.space);
    let codomain = d.space.tensor(&c.space);
    Ok(Search {
        field,
        c,
        d,
        domain,
        codomain,
        p,
        n,
        total: total as u64,
        constraints,
    })
}

impl Search {
    /// Number of candidates the enumeration walks.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The twist for candidate `k` (base-`p` digits of `k`, least significant
    /// first, row-major).
    pub fn candidate(&self, k: u64) -> Result<Twist<PrimeField>> {
        let mut mat = Mat::zeros(&self.field, self.n, self.n);
        let mut acc = k;
        for r in 0..self.n {
            for c in 0..self.n {
                mat.set(r, c, acc % self.p);
                acc /= self.p;
            }
        }
        let map = LinMap::new(
            self.field.clone(),
            self.domain.clone(),
            self.codomain.clone(),
            mat,
        )?;
        Twist::new(self.c.clone(), self.d.clone(), map)
    }

    /// Classify candidate `k`; `None` when it misses a requested constraint.
    /// Constrained conditions are evaluated first so rejected candidates do
    /// as little work as possible.
    pub fn classify(&self, k: u64) -> Option<SearchHit> {
        let t = self.candidate(k).expect("candidate shapes are fixed");
        let entries = {
            let mat = &t.psi.mat;
            let mut out = Vec::with_capacity(self.n * self.n);
            for r in 0..self.n {
                for c in 0..self.n {
                    out.push(*mat.get(r, c));
                }
            }
            out
        };

        // Gate on the requested constraints first so a rejected candidate
        // computes nothing beyond its first failing condition; fill in the
        // remaining classification fields only for survivors.
        let mut octagon = None;
        let mut pentagons = None;
        let mut conormal = None;
        let mut counit = None;
        let mut in_tw = None;
        if self.constraints.octagon {
            let v = check_octagon(&t).passed();
            if !v {
                return None;
            }
            octagon = Some(v);
        }
        if self.constraints.pentagons {
            let v = check_pentagons(&t).passed();
            if !v {
                return None;
            }
            pentagons = Some(v);
        }
        if self.constraints.conormal {
            let v = is_conormal(&t);
            if !(v.0 && v.1) {
                return None;
            }
            conormal = Some(v);
        }
        if self.constraints.counit {
            let v = solve_counit(&twisted_coproduct(&t));
            if v.is_none() {
                return None;
            }
            counit = Some(v);
        }
        if self.constraints.tw {
            let v = is_in_tw(&t).passed();
            if !v {
                return None;
            }
            in_tw = Some(v);
        }

        let octagon = octagon.unwrap_or_else(|| check_octagon(&t).passed());
        let pentagons = pentagons.unwrap_or_else(|| check_pentagons(&t).passed());
        let (conormal_left, conormal_right) = conormal.unwrap_or_else(|| is_conormal(&t));
        let counit = counit.unwrap_or_else(|| solve_counit(&twisted_coproduct(&t)));
        let in_tw = in_tw.unwrap_or_else(|| is_in_tw(&t).passed());

        let z_conormal = counit.as_ref().and_then(|eps| {
            let z = synthesize_z(&t, eps).ok()?;
            match is_z_conormal(&t, &z) {
                Ok((true, true)) => {
                    let mut out = Vec::with_capacity(z.mat.rows * z.mat.cols);
                    for r in 0..z.mat.rows {
                        for c in 0..z.mat.cols {
                            out.push(*z.mat.get(r, c));
                        }
                    }
                    Some(out)
                }
                _ => None,
            }
        });
        let invertible = t.psi.is_invertible();

        Some(SearchHit {
            index: k,
            entries,
            octagon,
            pentagons,
            conormal_left,
            conormal_right,
            z_conormal,
            in_tw,
            counit: counit.map(|f| f.coeffs),
            invertible,
        })
    }

    /// Lazily walk all candidates in index order, emitting the hits. Suitable
    /// for streaming output that can be interrupted at any point.
    pub fn iter(&self) -> impl Iterator<Item = SearchHit> + '_ {
        (0..self.total).filter_map(move |k| self.classify(k))
    }

    /// Run the search on `jobs` worker threads, candidate `k` going to worker
    /// `k mod jobs`, then reassemble the hits in index order on this thread.
    /// The result is identical to collecting [`Search::iter`].
    pub fn run_sharded(&self, jobs: usize) -> Vec<SearchHit> {
        let jobs = jobs.max(1);
        if jobs == 1 {
            return self.iter().collect();
        }
        let mut hits: Vec<SearchHit> = std::thread::scope(|scope| {
            let workers: Vec<_> = (0..jobs)
                .map(|j| {
                    scope.spawn(move || {
                        (0..self.total)
                            .skip(j)
                            .step_by(jobs)
                            .filter_map(|k| self.classify(k))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            workers
                .into_iter()
                .flat_map(|w| w.join().expect("search worker panicked"))
                .collect()
        });
        hits.sort_by_key(|h| h.index);
        hits
    }
}
