use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::qcore::{DiscreteLaw, Signature};

/// Samples per RNG stream; fixed so results do not depend on thread count.
pub const CHUNK: usize = 4096;

/// Aggregated draws of a signature-valued statistic.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub counts: BTreeMap<Signature, u64>,
    pub samples: u64,
    /// Largest auxiliary value reported by the sampler (e.g. top singular number).
    pub max_aux: i64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.samples += other.samples;
        self.max_aux = self.max_aux.max(other.max_aux);
        self
    }

    pub fn law(&self, length: usize) -> Result<DiscreteLaw> {
        DiscreteLaw::from_counts(length, self.counts.clone(), self.samples)
    }
}

/// RNG for chunk `chunk` of stream family `family`.
pub fn stream_rng(seed: u64, family: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((family << 40) | chunk);
    rng
}

/// Draws `samples` values of `f` in parallel, one counter-based stream per chunk.
pub fn tally<F>(samples: usize, seed: u64, family: u64, f: F) -> Result<Tally>
where
    F: Fn(&mut ChaCha8Rng) -> Result<(Signature, i64)> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Result<Tally>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, family, c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut out = Tally { max_aux: i64::MIN, ..Tally::default() };
            for _ in 0..count {
                let (sig, aux) = f(&mut rng)?;
                *out.counts.entry(sig).or_insert(0) += 1;
                out.max_aux = out.max_aux.max(aux);
            }
            out.samples = count as u64;
            Ok(out)
        })
        .collect();
    let mut total = Tally { max_aux: i64::MIN, ..Tally::default() };
    for p in parts {
        total = total.merge(p?);
    }
    Ok(total)
}

/// `max_σ sqrt(p̂(1-p̂)(1/n_a + 1/n_b))` with `p̂` pooled over both samples.
pub fn two_sample_stderr(a: &Tally, b: &Tally) -> f64 {
    let (na, nb) = (a.samples as f64, b.samples as f64);
    let mut worst: f64 = 0.0;
    let keys = a.counts.keys().chain(b.counts.keys());
    for k in keys {
        let c = a.counts.get(k).copied().unwrap_or(0) + b.counts.get(k).copied().unwrap_or(0);
        let p = c as f64 / (na + nb);
        worst = worst.max((p * (1.0 - p) * (1.0 / na + 1.0 / nb)).sqrt());
    }
    worst
}

/// Binomial standard error `sqrt(p(1-p)/n)` at the largest-variance atom of `law`.
pub fn one_sample_stderr(law: &DiscreteLaw, samples: u64) -> f64 {
    let p = law.support.values().fold(0.0f64, |m, &p| if (p - 0.5).abs() < (m - 0.5).abs() { p } else { m });
    (p * (1.0 - p) / samples as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn reproducible_and_chunked() {
        let f = |rng: &mut ChaCha8Rng| Ok((Signature::new(vec![rng.gen_range(0..5)]).unwrap(), 0));
        let a = tally(10_000, 11, 1, f).unwrap();
        let b = tally(10_000, 11, 1, f).unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.samples, 10_000);
        let c = tally(10_000, 11, 2, f).unwrap();
        assert_ne!(a.counts, c.counts);
    }
}
