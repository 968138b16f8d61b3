//! Small deterministic pseudo-random source.
//!
//! Sampling (random parameter draws, random window vectors) must be
//! reproducible from a seed so that identical runs produce byte-identical
//! output; this fixes the generator rather than depending on an external
//! one.

use crate::scalar::Scalar;

/// SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    /// Random rational with numerator in `-max_num..=max_num` and
    /// denominator in `1..=max_den`.
    pub fn rational<S: Scalar>(&mut self, max_num: i64, max_den: i64) -> S {
        let n = self.range_i64(-max_num, max_num);
        let d = self.range_i64(1, max_den);
        S::from_fraction(n, d)
    }

    /// Like [`Self::rational`] but never zero.
    pub fn nonzero_rational<S: Scalar>(&mut self, max_num: i64, max_den: i64) -> S {
        loop {
            let x: S = self.rational(max_num, max_den);
            if !x.is_zero() {
                return x;
            }
        }
    }
}
