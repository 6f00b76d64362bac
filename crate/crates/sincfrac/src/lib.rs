#![forbid(unsafe_code)]

//! A fractional derivative built on the normalized sinc kernel, which stays
//! bounded at coincidence, together with its Fourier, Laplace, and Sumudu
//! images and transform-domain solvers for one-dimensional anomalous heat
//! diffusion on the half line.
//!
//! Layout:
//! - [`kernel`]: the normalized sinc, the scaled operator kernel, the
//!   fractional order type, and the delta-mollifier integral.
//! - [`special`]: sine integral and complementary error function, the
//!   closed-form oracles used across the crate.
//! - [`quad`]: adaptive Gauss--Legendre quadrature with panel splitting.
//! - [`operator`]: the fractional derivative, its integer-order extension,
//!   the identity-map closed form, and the endpoint-limit probe.
//! - [`transforms`]: closed-form transform images and numerical forward
//!   transforms.
//! - [`inversion`]: Gaver--Stehfest and fixed-Talbot inverse Laplace, and
//!   inverse Sumudu through the duality.
//! - [`heat`]: the time-fractional, space-fractional, and classical
//!   diffusion solvers with grid output.
//!
//! Everything is a pure function of its arguments; concurrent evaluation
//! over grids of (mu, tau) or (mu, varpi) needs no synchronization.

pub mod error;
pub mod heat;
pub mod inversion;
pub mod kernel;
pub mod operator;
pub mod quad;
pub mod special;
pub mod transforms;

pub use error::{Error, Result};
pub use heat::{
    classical_closed_form, classical_laplace_solution, compare_models, h_factor,
    invert_sumudu_laplace, solve, solve_classical, solve_spacefrac, solve_timefrac,
    spacefrac_coefficient, spacefrac_sumudu_solution, timefrac_laplace_solution, BoundarySpec,
    DiffusionProblem, FlagKind, ModelComparison, ModelKind, PointFlag, SolutionGrid, SolveMeta,
};
pub use inversion::{
    laplace_invert, stehfest_weight_identity_residuals, stehfest_weights, sumudu_invert,
    InversionConfig, InversionMethod,
};
pub use kernel::{mollifier_integral, nsinc, scaled_kernel, FracOrder};
pub use operator::{
    frac_derivative, frac_derivative_higher, limit_probe, linear_case_closed_form, FunctionSpec,
    LimitProbe, LimitProbeRow,
};
pub use quad::{adaptive_integrate, PanelStrategy, Quadrature, QuadratureConfig};
pub use special::{erfc, sine_integral};
pub use transforms::{
    fourier_image_kernel, fourier_image_operator, laplace_image_kernel,
    laplace_image_kernel_complex, laplace_image_operator, laplace_image_operator_complex,
    numerical_laplace, numerical_sumudu, sumudu_image_kernel, sumudu_image_operator,
    ForwardTransform, FourierImage, FourierMode, LaplaceImage, SumuduImage,
};

#[cfg(test)]
mod tests {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn shared_types_are_safe_to_send_across_threads() {
        assert_send_sync::<crate::FracOrder>();
        assert_send_sync::<crate::FunctionSpec>();
        assert_send_sync::<crate::LaplaceImage>();
        assert_send_sync::<crate::SumuduImage>();
        assert_send_sync::<crate::FourierImage>();
        assert_send_sync::<crate::DiffusionProblem>();
        assert_send_sync::<crate::SolutionGrid>();
        assert_send_sync::<crate::InversionConfig>();
    }
}
