//! Polyhedral side of the classification: the scrollar polytope, the
//! region of realizable pairs with its four pieces, lattice points,
//! monoid generators and the limiting density.

mod density;
mod lattice;
mod region;
mod vertices;

pub use density::{objective, pi_geo_finite, rho_geo, EBox};
pub use lattice::{
    decompose, irreducible_generators, irreducible_in_box, lift_scrollar, p_points, projection_report, q_points,
    verify_projection, LevelCheck, GENERATOR_LIFTS,
};
pub use region::{
    d_bar, in_q_prime, q_region, scaled_point, scrollar_cone, scrollar_polytope, Constraint, ConditionalRegion,
    LinearRegion, Piece, Relation,
};
pub use vertices::{is_bounded, vertices};
