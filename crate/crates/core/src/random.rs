//! Seeded randomness shared by the samplers and law checks.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{Rational, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform integer in `lo..=hi`.
pub fn int_in(rng: &mut impl RngCore, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

pub fn index_below(rng: &mut impl RngCore, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

pub fn coin(rng: &mut impl RngCore) -> bool {
    rng.next_u32() & 1 == 1
}

/// Rational with numerator in `-bound..=bound` and denominator in `1..=4`.
pub fn small_rational(rng: &mut impl RngCore, bound: i64) -> Rational {
    Rational::new(int_in(rng, -bound, bound), int_in(rng, 1, 4)).expect("nonzero denominator")
}

/// Gaussian rational with both parts drawn by [`small_rational`].
pub fn small_scalar(rng: &mut impl RngCore, bound: i64) -> Scalar {
    Scalar::new(small_rational(rng, bound), small_rational(rng, bound))
}

pub fn small_real(rng: &mut impl RngCore, bound: i64) -> Scalar {
    Scalar::real(small_rational(rng, bound))
}

/// Deterministic small Gaussian rational from 64 hash bits.
pub fn small_scalar_from_bits(bits: u64) -> Scalar {
    let field = |shift: u32, modulus: u64| ((bits >> shift) & 0xffff) % modulus;
    let re = Rational::new(field(0, 7) as i64 - 3, field(16, 3) as i64 + 1).expect("nonzero");
    let im = Rational::new(field(32, 7) as i64 - 3, field(48, 3) as i64 + 1).expect("nonzero");
    Scalar::new(re, im)
}
