//! Deterministic sampling of "general" choices and the two-seed stability
//! policy shared by every generic computation.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::Rational;

/// Default coefficient height.
pub const DEFAULT_HEIGHT: u64 = 101;

/// Doublings of the height tried after a disagreement.
pub const MAX_ESCALATIONS: u32 = 3;

/// A seed and a coefficient height; the stream is fixed by both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sampler {
    pub seed: u64,
    pub height: u64,
}

impl Sampler {
    pub fn new(seed: u64, height: u64) -> Sampler {
        Sampler { seed, height: height.max(1) }
    }

    pub fn stream(&self) -> SampleStream {
        SampleStream { rng: ChaCha8Rng::seed_from_u64(self.seed), height: self.height }
    }

    /// An independent sampler for sub-task `k`.
    pub fn derive(&self, k: u64) -> Sampler {
        Sampler { seed: splitmix64(self.seed ^ splitmix64(k.wrapping_add(0x5851_f42d_4c95_7f2d))), height: self.height }
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(0, DEFAULT_HEIGHT)
    }
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub struct SampleStream {
    rng: ChaCha8Rng,
    height: u64,
}

impl SampleStream {
    /// Uniform in `[-H, H] \ {0}`.
    pub fn nonzero_int(&mut self) -> i64 {
        let h = self.height as i64;
        let k = self.rng.gen_range(0..2 * h);
        if k < h {
            k - h
        } else {
            k - h + 1
        }
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        Rational::from_integer(BigInt::from(self.nonzero_int()))
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.nonzero_rational()).collect()
    }
}

/// Which samples agreed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub seeds: [u64; 2],
    pub height: u64,
    pub escalations: u32,
}

/// A generic value confirmed by two independent samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stable<T> {
    pub value: T,
    pub certificate: Certificate,
}

/// Runs `f` on two independent samplers and accepts the value only if both
/// agree. On disagreement the height doubles and both rerun, up to
/// [`MAX_ESCALATIONS`] times; then the result is inconclusive. Resource
/// errors abort at once, and a failure both samples share is returned as is.
pub fn two_seed<T, F>(sampler: &Sampler, mut f: F) -> Result<Stable<T>>
where
    T: PartialEq,
    F: FnMut(&Sampler) -> Result<T>,
{
    let mut last_err = None;
    for level in 0..=MAX_ESCALATIONS {
        let height = sampler.height.saturating_mul(1 << level);
        let a = Sampler::new(sampler.derive(2 * level as u64).seed, height);
        let b = Sampler::new(sampler.derive(2 * level as u64 + 1).seed, height);
        let va = f(&a);
        if let Err(e) = &va {
            if e.is_resource() {
                return Err(e.clone());
            }
        }
        let vb = f(&b);
        match (va, vb) {
            (Ok(x), Ok(y)) if x == y => {
                return Ok(Stable {
                    value: x,
                    certificate: Certificate { seeds: [a.seed, b.seed], height, escalations: level },
                })
            }
            (Err(e), Err(e2)) if e == e2 => {
                if e.is_resource() {
                    return Err(e);
                }
                last_err = Some(e);
                break;
            }
            (_, Err(e)) | (Err(e), _) if e.is_resource() => return Err(e),
            _ => {}
        }
    }
    match last_err {
        Some(e) => Err(e),
        None => Err(Error::Inconclusive(format!(
            "generic samples disagree after {MAX_ESCALATIONS} escalations"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_nonzero() {
        let s = Sampler::new(7, 3);
        let a: Vec<i64> = (0..50).scan(s.stream(), |st, _| Some(st.nonzero_int())).collect();
        let b: Vec<i64> = (0..50).scan(s.stream(), |st, _| Some(st.nonzero_int())).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|&v| v != 0 && (-3..=3).contains(&v)));
        assert!(a.iter().any(|&v| v < 0) && a.iter().any(|&v| v > 0));
    }

    #[test]
    fn agreement_certifies() {
        let st = two_seed(&Sampler::default(), |_| Ok(5u32)).unwrap();
        assert_eq!(st.value, 5);
        assert_eq!(st.certificate.escalations, 0);
        assert_ne!(st.certificate.seeds[0], st.certificate.seeds[1]);
    }

    #[test]
    fn persistent_disagreement_is_inconclusive() {
        let r = two_seed(&Sampler::default(), |s| Ok(s.seed));
        assert!(matches!(r, Err(Error::Inconclusive(_))));
    }

    #[test]
    fn escalation_ladder_doubles_height() {
        let mut seen = Vec::new();
        let st = two_seed(&Sampler::new(1, 10), |s| {
            seen.push(s.height);
            Ok(if s.height >= 40 { 0 } else { s.seed })
        })
        .unwrap();
        assert_eq!(st.value, 0);
        assert_eq!(st.certificate.escalations, 2);
        assert_eq!(seen, vec![10, 10, 20, 20, 40, 40]);
    }
}
