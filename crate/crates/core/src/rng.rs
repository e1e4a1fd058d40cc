//! Deterministic random streams.
//!
//! Reproducibility contract: every random quantity in this crate is a pure
//! function of `(global seed, dim, matrix index, stream tag)`. Substreams
//! are derived statelessly with the SplitMix64 finalizer, so partitioning
//! work across threads cannot change any result. One stream feeds one
//! matrix draw completely before the next begins.
//!
//! Normal variates come from the trigonometric Box–Muller transform over a
//! SplitMix64 uniform stream. Box–Muller consumes exactly two uniforms per
//! pair of normals, which keeps stream consumption deterministic and easy
//! to document.

use num_complex::Complex64;

/// SplitMix64 finalizer: a 64-bit avalanche mix.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Distinguishes independent substreams drawn against the same
/// `(seed, dim, index)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamTag {
    /// Ginibre entries for one matrix draw.
    Matrix,
    /// The random spacing index j for the "delta_rand" statistic.
    GapIndex,
    /// The uniform point on the circle for size-biased gap selection.
    CirclePoint,
}

impl StreamTag {
    fn code(self) -> u64 {
        match self {
            StreamTag::Matrix => 1,
            StreamTag::GapIndex => 2,
            StreamTag::CirclePoint => 3,
        }
    }
}

/// Uniform 64-bit generator (SplitMix64).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Stateless substream derivation. The key is
    /// `mix64(mix64(mix64(seed) ^ (tag << 48 | dim)) ^ index)`.
    pub fn substream(seed: u64, dim: usize, index: u64, tag: StreamTag) -> Self {
        let k = mix64(seed);
        let k = mix64(k ^ ((tag.code() << 48) | dim as u64));
        Self::new(mix64(k ^ index))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)`, 53-bit resolution.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe to pass to `ln`.
    #[inline]
    fn next_f64_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)` by rejection, bias-free.
    pub fn next_below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }
}

/// Source of standard normal variates. Production code uses [`GaussianStream`];
/// tests may script exact sequences.
pub trait NormalSource {
    fn next_normal(&mut self) -> f64;

    /// Standard complex Gaussian with independent N(0,1) real and
    /// imaginary parts (so E|z|^2 = 2). Consumes two normals: real first.
    fn next_complex_gaussian(&mut self) -> Complex64 {
        let re = self.next_normal();
        let im = self.next_normal();
        Complex64::new(re, im)
    }
}

/// Box–Muller normal generator over SplitMix64.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    uniform: SplitMix64,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(uniform: SplitMix64) -> Self {
        Self {
            uniform,
            spare: None,
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        Self::new(SplitMix64::new(seed))
    }

    /// Stream for one matrix draw; see [`SplitMix64::substream`].
    pub fn for_matrix(seed: u64, dim: usize, index: u64) -> Self {
        Self::new(SplitMix64::substream(seed, dim, index, StreamTag::Matrix))
    }
}

impl NormalSource for GaussianStream {
    fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform.next_f64_open();
        let u2 = self.uniform.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}
