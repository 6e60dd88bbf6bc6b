use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::partition::Signature;
use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};

/// Finite law on `Sig_length`.
///
/// `exact` marks probabilities converted from exact rationals; `complete`
/// marks laws whose support is the whole support of the underlying measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteLaw {
    pub length: usize,
    #[serde(serialize_with = "ser_support", deserialize_with = "de_support")]
    pub support: BTreeMap<Signature, f64>,
    pub total_mass: f64,
    pub exact: bool,
    pub complete: bool,
}

fn ser_support<S: Serializer>(m: &BTreeMap<Signature, f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<(&Signature, &f64)> = m.iter().collect();
    v.serialize(s)
}

fn de_support<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Signature, f64>, D::Error> {
    let v: Vec<(Signature, f64)> = Vec::deserialize(d)?;
    Ok(v.into_iter().collect())
}

impl DiscreteLaw {
    pub fn new(length: usize) -> Self {
        DiscreteLaw { length, support: BTreeMap::new(), total_mass: 0.0, exact: false, complete: false }
    }

    pub fn point_mass(sig: Signature) -> Self {
        let mut law = DiscreteLaw::new(sig.len());
        law.support.insert(sig, 1.0);
        law.total_mass = 1.0;
        law.complete = true;
        law
    }

    /// Empirical law from counts out of `total` draws.
    pub fn from_counts<I>(length: usize, counts: I, total: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (Signature, u64)>,
    {
        let mut law = DiscreteLaw::new(length);
        for (sig, c) in counts {
            if sig.len() != length {
                return Err(Error::LengthMismatch(length, sig.len()));
            }
            *law.support.entry(sig).or_insert(0.0) += c as f64 / total as f64;
        }
        law.total_mass = law.support.values().sum();
        law.complete = true;
        Ok(law)
    }

    /// Law from exact rational probabilities.
    pub fn from_exact(length: usize, probs: &BTreeMap<Signature, Rational>, complete: bool) -> Result<Self> {
        let mut law = DiscreteLaw::new(length);
        for (sig, p) in probs {
            if sig.len() != length {
                return Err(Error::LengthMismatch(length, sig.len()));
            }
            law.support.insert(sig.clone(), to_f64(p));
        }
        law.total_mass = law.support.values().sum();
        law.exact = true;
        law.complete = complete;
        Ok(law)
    }

    /// Adds `p` to the mass at `sig`.
    pub fn add(&mut self, sig: Signature, p: f64) -> Result<()> {
        if sig.len() != self.length {
            return Err(Error::LengthMismatch(self.length, sig.len()));
        }
        *self.support.entry(sig).or_insert(0.0) += p;
        self.total_mass += p;
        Ok(())
    }

    pub fn prob(&self, sig: &Signature) -> f64 {
        self.support.get(sig).copied().unwrap_or(0.0)
    }

    /// Pushforward under a map of signatures (possibly changing length).
    pub fn map<F: Fn(&Signature) -> Signature>(&self, length: usize, f: F) -> Result<Self> {
        let mut out = DiscreteLaw::new(length);
        for (sig, &p) in &self.support {
            out.add(f(sig), p)?;
        }
        out.exact = self.exact;
        out.complete = self.complete;
        Ok(out)
    }
}

/// `sup_x |M1{x} - M2{x}|` over the union of the supports.
pub fn dinf(a: &DiscreteLaw, b: &DiscreteLaw) -> Result<f64> {
    if a.length != b.length {
        return Err(Error::LengthMismatch(a.length, b.length));
    }
    let mut d: f64 = 0.0;
    for (sig, &p) in &a.support {
        d = d.max((p - b.prob(sig)).abs());
    }
    for (sig, &p) in &b.support {
        if !a.support.contains_key(sig) {
            d = d.max(p.abs());
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    fn law(pairs: &[(&[i64], f64)]) -> DiscreteLaw {
        let mut l = DiscreteLaw::new(pairs[0].0.len());
        for (k, p) in pairs {
            l.add(s(k), *p).unwrap();
        }
        l
    }

    #[test]
    fn point_masses() {
        let a = DiscreteLaw::point_mass(s(&[0]));
        let b = DiscreteLaw::point_mass(s(&[1]));
        assert_eq!(dinf(&a, &a).unwrap(), 0.0);
        assert_eq!(dinf(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn three_point_laws() {
        let a = law(&[(&[0], 0.5), (&[1], 0.3), (&[2], 0.2)]);
        let b = law(&[(&[0], 0.4), (&[1], 0.5), (&[3], 0.1)]);
        // |0.1|, |-0.2|, |0.2|, |-0.1|
        assert!((dinf(&a, &b).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch() {
        let a = DiscreteLaw::point_mass(s(&[0]));
        let b = DiscreteLaw::point_mass(s(&[0, 0]));
        assert!(dinf(&a, &b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = law(&[(&[2, -1], 0.25), (&[0, 0], 0.75)]);
        let txt = serde_json::to_string(&a).unwrap();
        let back: DiscreteLaw = serde_json::from_str(&txt).unwrap();
        assert_eq!(a, back);
    }
}
