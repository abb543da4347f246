//! Startup flow of a viscoelastic fluid over a constantly accelerating
//! plate: exact Fourier-integral solutions for velocity and shear stress,
//! the energetic balance (wall power, dissipation, kinetic energy,
//! boundary-layer thickness), small-relaxation-time approximations, and a
//! verification suite that checks the whole stack against closed forms and
//! independent quadrature.
//!
//! Four constitutive models are covered by one parameter pair: Oldroyd-B
//! (relaxation time `lambda`, retardation time `lambda_r`), Maxwell
//! (`lambda_r = 0`), second grade (`lambda = 0`) and Newtonian
//! (`lambda = lambda_r`).

pub mod asymptotics;
pub mod energetics;
pub mod error;
pub mod fields;
pub mod model;
pub mod quad;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use fields::{FieldPoint, FieldValue, PdeResidual};
pub use model::{classify, FluidModel, FluidParams, FlowConfig, SpectralRoots};
pub use quad::{OscKind, QuadratureResult, QuadratureSpec, TailCut};
