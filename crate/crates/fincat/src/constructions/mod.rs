//! Executable derived constructions on top of the Kan engine: limits as
//! right extensions, the two-condition adjunction criterion, codensity
//! monads, Yoneda/coYoneda checks, density of representables, the
//! nerve/realization bijection, and monotone order extensions.

mod adjunction;
mod codensity;
mod density;
mod limit_as_ran;
mod nerve;
mod order;
mod yoneda;

pub use adjunction::{adjunction_check, AdjunctionReport, ConditionVerdict, TriangleReport};
pub use codensity::{codensity, CodensityMonad, MonadLaws, ProbeTable};
pub use density::{density_check, DensityReport};
pub use limit_as_ran::{limit_as_ran, LimitAsRanReport};
pub use nerve::{nerve_realization, NerveReport};
pub use order::{order_extension, OrderExtensionReport, OrderValue};
pub use yoneda::{coyoneda_check, yoneda_check, CoyonedaReport, YonedaProbe, YonedaReport};
