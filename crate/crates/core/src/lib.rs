//! The hit problem for the polynomial algebra `P_k = F2[x1, ..., xk]` over
//! the mod-2 Steenrod algebra: admissible bases of `QP_k`, weight
//! subquotients, and invariants under `Sigma_k` and `GL_k`.

pub mod cache;
pub mod equivariance;
pub mod error;
pub mod fixtures;
pub mod hit;
pub mod linalg;
pub mod poly;
pub mod steenrod;
pub mod verify;

pub use error::{Error, Result};
pub use hit::{
    admissible_basis, admissible_basis_with_order, hit_space, occurring_weights, singer_filter,
    weight_quotient_basis, ClassCoordinates, FullBasis, MonomialIndex, QuotientBasis,
};
pub use linalg::{kernel, stack, BitVector, EchelonSpace, F2Matrix};
pub use poly::{
    compare, enumerate_monomials, minimal_spike, mu, Monomial, MonomialOrder, Polynomial, WeightVector,
};
pub use steenrod::{binom_parity, hit_generators, sq, sq_monomial, HitGenerator, HitGeneratorStream};
pub use equivariance::{
    action_matrix, apply_substitution, gl_invariants, invariants, p_map, rho, sf_tilde, sigma_invariants,
    Group, InvariantReport, LinearSubstitution,
};
pub use fixtures::{load_fixtures, Fixture, FixtureKind};
pub use cache::BasisCache;
