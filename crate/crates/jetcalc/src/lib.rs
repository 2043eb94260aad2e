//! Exact intersection theory on the jet tower over a family of
//! hypersurfaces in projective space.
//!
//! The crate computes, with arbitrary-precision rational arithmetic
//! throughout:
//!
//! * sparse parameter polynomials in the closed variable set
//!   `r, d, chi, x, y, z, eps` ([`scalar`]);
//! * binomial and alternating-binomial tables and the Segre classes of the
//!   relative bundles along the tower ([`segre`]);
//! * the graded ring of each tower level, pushforwards down the tower and
//!   exact top intersection numbers ([`chow`]);
//! * nef weight chains, cone bounds, section-count bounds and
//!   Morse-inequality bigness certificates ([`positivity`]);
//! * the differential algebra of jet coordinates with the total-derivative
//!   operator, commutator and Wronskian identities ([`jetdiff`]).

pub mod chow;
pub mod error;
pub mod jetdiff;
pub mod positivity;
pub mod scalar;
pub mod segre;

pub use chow::{class_of, divisor_class, BundleWeights, ChowClass, Gen, TowerContext};
pub use error::{Error, Result};
pub use jetdiff::{
    commutator_check, determinant, leibniz_check, pole_orders, wronskian_closed_form,
    wronskian_det, wronskian_matrix, Derivation, JetPoly, JetVar, PoleOrders,
};
pub use positivity::{
    final_argument, h0_lower_bound, height_bound, morse_certificate, nef_cone_bounds,
    nef_lk, nef_recursion_check, pushforward_lk_expansion, schwarz_min_lambda,
    weights_satisfy_recursion, ConeBounds, FinalArgumentReport, MorseOptions, MorseReport,
};
pub use scalar::{rat, ratio, Assignment, ParamScalar, Rational, Sign, Var};
pub use segre::{binomial, l_number, segre_f0, segre_twist, LTable, SegreTable};
