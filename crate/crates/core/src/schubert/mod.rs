//! Schubert cells, the Wronski map, and spaces of polynomials seen through
//! their fundamental differential operators.

pub mod chart;
pub mod fiber;
pub mod normalize;
pub mod operator;

pub use chart::{polynomial_from_coefficients, symbolic_basis, symbolic_wronskian, wronski_map, CellChart, SchubertPoint};
pub use fiber::{
    brute_force_fiber_n2, family_for, fiber_from_spectrum, fiber_via_bethe, same_fiber, spectrum_for, FiberMode, FiberPoint, FiberResult};
pub use normalize::{normalize_fuchsian_data, FuchsianData, Normalized, SpherePoint};
pub use operator::{
    expected_exponents_at_infinity, expected_exponents_at_point, exponents, exponents_of, fundamental_operator,
    local_valuations, membership, monic_wronskian, reconstruct_point_from_operator, LocalExpansionFrame,
    MembershipWitness, PointOperator,
};
