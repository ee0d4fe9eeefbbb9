pub mod error;
pub mod numfmt;
pub mod ode;
pub mod quad;
pub mod scalar;
pub mod scattering;
pub mod specfun;
pub mod spectrum;
pub mod verdict;
pub mod verify;
pub mod xi;
pub mod zeros;

pub use error::{LabError, Result};
pub use scalar::{ComplexValue, Real};
pub use verdict::{Metric, Verdict};

/// Double-precision aliases.
pub type Complex64 = ComplexValue<f64>;
pub type Zero = zeros::CriticalZero<f64>;
pub type Coupling = spectrum::CouplingConstant<f64>;
pub type PhaseShift = scattering::PhaseShiftResult<f64>;
pub type SpecFunConfig64 = specfun::SpecFunConfig<f64>;
