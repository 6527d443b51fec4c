//! twistlab: exact linear algebra for twisted tensor products of
//! finite-dimensional coalgebras and algebras.
//!
//! Everything is computed over an exact field (arbitrary-precision rationals
//! or a prime field with p <= 2^31), so every verdict produced by a checker
//! is a theorem about the given structure constants, not a numerical
//! approximation. Structure maps are dense matrices between labeled tensor
//! spaces; all higher-level identities (coassociativity of a twisted
//! coproduct, normality of a twisting map, convolution invertibility of a
//! functional, ...) reduce to entrywise equality of composite matrices and
//! report basis-index witnesses on failure.

pub mod algtwist;
pub mod cli;
pub mod coalg;
pub mod cotwist;
pub mod equiv;
pub mod error;
pub mod field;
pub mod functionals;
pub mod linmap;
pub mod report;
pub mod search;
pub mod space;
pub mod specfile;
pub mod zoo;

pub use algtwist::{
    check_assoc, check_assoc_pentagons, compose_alg, dualize, element_map, g_inv, g_map,
    inclusions, is_in_tw_alg, is_normal, is_z_normal, mu_alg, normalize, solve_unit,
    twisted_product, unit_from_z, universal_omega_alg, zero_divisor_witness, AlgTwist,
    TwistedAlgebra,
};
pub use coalg::{
    compute_antipode, dual_algebra, dual_coalgebra, is_algebra_morphism, is_coalgebra_morphism,
    opposite_algebra, opposite_coalgebra, tensor_algebra, tensor_coalgebra, Algebra, Bialgebra,
    Coalgebra, HopfAlgebra, Pairing,
};
pub use cotwist::{
    check_octagon, check_pentagons, conormalize, counit_from_z, factorization_twist, is_conormal,
    is_z_conormal, mu_map, projections, solve_counit, synthesize_z, twisted_coproduct,
    universal_omega, Twist, TwistedCoalgebra,
};
pub use equiv::{
    are_equivalent, search_theta, strongly_isomorphic, transport_z, ThetaSearchSpace,
};
pub use cli::cli_main;
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use functionals::{
    check_action, check_h_invariance, check_twisted_module_coalgebra, compose_with_tw,
    conv_inverse, conv_mul, counit_of_functional_twist, delta_phi, eps_tensor, f_inv, f_map,
    is_in_tw, lambda_phi, nu_sigma, q_projections, smash_twist, star_inverse, star_mul,
    Functional, TwTwist,
};
pub use linmap::{basis_vec, flip, permute, vec_kron, LinMap, Mat};
pub use report::{eq_check, Check, Report, Witness};
pub use search::{default_budget, plan, Search, SearchConstraints, SearchHit, DEFAULT_BUDGET};
pub use specfile::{
    export_zoo, field_choice, parse_report, parse_spec, report_to_toml, resolve, run_spec_text,
    run_tasks, spec_to_toml, FieldChoice, ReportFile, ResolvedSpec, Scalar, SpecDoc, TaskDecl,
    TaskReport, WitnessRecord, ALGEBRA_CHECKS, ALL_CHECKS, COALGEBRA_CHECKS, EQUIVALENCE_CHECKS,
};
pub use space::TensorSpace;
