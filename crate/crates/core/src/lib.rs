//! Nonwindowed `L^q` wavelet scattering on periodic grids.
//!
//! The crate is organized bottom-up:
//!
//! * [`signal`]: grids, sampled signals, Fourier transforms, convolution and
//!   `L^q` norms.
//! * [`wavelet`]: mother wavelets, dilations, scale grids, filter banks and
//!   admissibility checks.
//! * [`harmonic`]: Hilbert and Riesz transforms, the Hardy norm and
//!   Littlewood–Paley square functions.
//! * [`scattering`]: scattering paths, the coefficient cascade, norms and
//!   file formats.
//! * [`deform`]: dilations, warps and stability experiments.
//! * [`rotation`]: rotation grids, rotated signals and rotation-equivariant
//!   and invariant scattering.
//! * [`synth`]: seeded synthetic test signals.
//!
//! See the guide in `book/` for a walk-through with runnable examples.

pub mod deform;
pub mod error;
pub mod harmonic;
pub mod rotation;
pub mod scattering;
pub mod signal;
pub mod synth;
pub mod wavelet;

pub use error::{Result, ScatterError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/signals.md")]
    mod signals {}
    #[doc = include_str!("../../../book/src/wavelets.md")]
    mod wavelets {}
    #[doc = include_str!("../../../book/src/harmonic.md")]
    mod harmonic {}
    #[doc = include_str!("../../../book/src/scattering.md")]
    mod scattering {}
    #[doc = include_str!("../../../book/src/deformations.md")]
    mod deformations {}
    #[doc = include_str!("../../../book/src/rotations.md")]
    mod rotations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
