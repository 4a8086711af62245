//! Reproducible random numbers for the simulator.
//!
//! The generator is xoshiro256** (Blackman and Vigna), with its 256-bit state
//! filled from four consecutive SplitMix64 outputs of the 64-bit seed.
//! Bounded integers use Lemire's multiply-and-reject method, so a draw from
//! `[0, n)` is exactly uniform and the number of raw outputs consumed
//! depends only on the generator stream. The whole pipeline is specified
//! bit for bit and reproducible in any language.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::probability::Distribution;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64, used only to expand seeds.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Xoshiro256StarStar { s: [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()] }
    }

    pub fn from_state(s: [u64; 4]) -> Self {
        Xoshiro256StarStar { s }
    }

    pub fn state(&self) -> [u64; 4] {
        self.s
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform integer in `[0, bound)`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut m = (self.next_u64() as u128) * (bound as u128);
        if (m as u64) < bound {
            let threshold = bound.wrapping_neg() % bound;
            while (m as u64) < threshold {
                m = (self.next_u64() as u128) * (bound as u128);
            }
        }
        (m >> 64) as u64
    }

    /// Uniform integer in `[0, bound)` for arbitrary-precision bounds.
    pub fn below_big(&mut self, bound: &BigUint) -> BigUint {
        assert!(!bound.is_zero(), "empty range");
        if let Some(b) = bound.to_u64() {
            return BigUint::from(self.below(b));
        }
        let bits = bound.bits();
        let words = bits.div_ceil(64) as usize;
        let top_bits = bits - 64 * (words as u64 - 1);
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            if top_bits < 64 {
                digits[words - 1] &= (1u64 << top_bits) - 1;
            }
            let candidate = BigUint::from_slice(
                &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>(),
            );
            if &candidate < bound {
                return candidate;
            }
        }
    }

    /// Draws a label from `dist` exactly: one uniform integer below the
    /// common denominator, then a walk over the cumulative numerators.
    pub fn sample<'a>(&mut self, dist: &'a Distribution) -> &'a str {
        let denominator = dist
            .probabilities()
            .fold(BigUint::one(), |acc, p| acc.lcm(&p.value().denom().magnitude().clone()));
        let u = self.below_big(&denominator);
        let mut cumulative = BigUint::zero();
        for (label, p) in dist.entries() {
            let numerator = p.value().numer().magnitude() * (&denominator / p.value().denom().magnitude());
            cumulative += numerator;
            if u < cumulative {
                return label;
            }
        }
        unreachable!("distribution sums to one")
    }

    /// Uniform float in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
