//! Circles of partition over configurable base sets.
//!
//! * [`baseset`]: naturals, primes, odds and custom subsets of ℕ
//! * [`cop`]: classical circles of partition C(n, M), their axes and ν
//! * [`ccop`]: complex circles of partition, conjugates, ν°, chords
//! * [`region`]: embedding circles and interior/exterior classification
//! * [`expansion`]: expansion certificates and their verification
//! * [`render`], [`export`]: SVG figures, JSON and CSV output
//!
//! All identities are decided in exact integer or rational arithmetic.
//! Floats appear only in rendered output and in [`ccop::chord_float`].

pub mod baseset;
pub mod ccop;
pub mod cop;
pub mod error;
pub mod expansion;
pub mod export;
pub mod region;
pub mod registry;
pub mod render;
pub mod surd;

pub use baseset::{load_custom, parse_custom, BaseKind, BaseSet, GeneratorFilter};
pub use ccop::{
    caxes, ccop_points, chord_float, chord_gamma, conjugate, diameter_of, nu_complex, CAxis, CCoP,
    CPoint, Sign,
};
pub use cop::{axes, axis_partner, cop_build, least_generator, nu, Axis, AxisSet, CoP};
pub use error::{Error, Result};
pub use expansion::{
    axial_ordering_check, expand, scan, verify_certificates, ExpansionCertificate, ExpansionQuery,
    GeneratorRange, Parity, Principle, ScanRow, VerificationReport,
};
pub use region::{
    classify_region, interior_points_filter, ComplexRational, EmbeddingCircle, Rational,
    RegionClass, RegionPartition,
};
pub use registry::{BaseSetRegistry, BaseSetSource};
pub use render::{render_svg, FigureKind, FigureRenderer, FigureSpec, RendererRegistry};
pub use surd::{SurdLength, SurdOp};
