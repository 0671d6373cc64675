//! Deterministic pseudo-random generator for all instance sampling.
//!
//! The generator is xoshiro256++ (Blackman & Vigna) seeded through
//! splitmix64, implemented here so that campaigns are reproducible
//! bit-for-bit across platforms and toolchains. Sampling orders are part of
//! the contract: every generator draws from a single stream in documented
//! code order, and per-trial streams are derived as `campaign_seed XOR
//! trial_index`, further salted per suite.
//!
//! Scalar draws:
//! - `next_f64` takes the top 53 bits of `next_u64`, uniform in [0, 1).
//! - `uniform(lo, hi)` is an affine map of `next_f64`.
//! - `log_uniform(lo, hi)` exponentiates a uniform draw of ln t.
//! - `gauss` is a Box–Muller transform consuming exactly two uniforms per
//!   value (no caching, so the stream position is predictable).

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 step; also used standalone to derive sub-seeds.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(SPLITMIX_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a decorrelated sub-seed from a base seed and a stream index.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut s = base ^ stream.wrapping_mul(SPLITMIX_GAMMA);
    splitmix64(&mut s)
}

/// xoshiro256++ generator.
#[derive(Debug, Clone)]
pub struct Prng {
    s: [u64; 4],
}

impl Prng {
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in [0, 1), 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Log-uniform in [lo, hi]; requires 0 < lo ≤ hi. Degenerates to the
    /// constant lo when lo == hi.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo > 0.0 && hi >= lo);
        (self.uniform(lo.ln(), hi.ln())).exp()
    }

    /// Standard normal via Box–Muller; consumes two uniforms.
    pub fn gauss(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64(); // (0, 1]: safe under ln
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let mut a = Prng::from_seed(42);
        let mut b = Prng::from_seed(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = Prng::from_seed(43);
        assert_ne!(Prng::from_seed(42).next_u64(), c.next_u64());
    }

    #[test]
    fn frozen_stream_head() {
        // Locks the exact output stream: any change to seeding or the
        // generator breaks report reproducibility. Reference values from
        // the published splitmix64 + xoshiro256++ algorithms.
        let expected_state = [
            0xE220A8397B1DCDAFu64,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
            0xF88BB8A8724C81EC,
        ];
        let mut check = 0u64;
        for e in expected_state {
            assert_eq!(splitmix64(&mut check), e);
        }
        let p = Prng::from_seed(0);
        assert_eq!(p.s, expected_state);
    }

    #[test]
    fn uniform_in_range() {
        let mut p = Prng::from_seed(7);
        for _ in 0..1000 {
            let v = p.next_f64();
            assert!((0.0..1.0).contains(&v));
            let u = p.log_uniform(0.1, 10.0);
            assert!((0.1..=10.0 * (1.0 + 1e-12)).contains(&u));
        }
    }

    #[test]
    fn gauss_moments_sane() {
        let mut p = Prng::from_seed(11);
        let n = 20_000;
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..n {
            let g = p.gauss();
            sum += g;
            sq += g * g;
        }
        let mean = sum / n as f64;
        let var = sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.03, "mean = {mean}");
        assert!((var - 1.0).abs() < 0.05, "var = {var}");
    }

    #[test]
    fn derive_seed_decorrelates() {
        let s1 = derive_seed(42, 0);
        let s2 = derive_seed(42, 1);
        assert_ne!(s1, s2);
        assert_eq!(derive_seed(42, 1), s2);
    }
}
