use serde::{Deserialize, Serialize};

use super::matrix::MatModPK;
use crate::error::{Error, Result};
use crate::qcore::{Partition, Signature};

/// Singular numbers of a matrix over `ℤ/p^K`.
///
/// When `saturated`, some pivots had valuation at least `K`; those parts are
/// reported as `K` and are only lower bounds for the true `ℤ_p` values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularNumbers {
    pub parts: Signature,
    pub saturated: bool,
}

impl SingularNumbers {
    /// Conjugate partition `(SN'_1, SN'_2, …)`.
    pub fn conjugate(&self) -> Partition {
        self.parts.to_partition().expect("singular numbers are nonnegative").conjugate()
    }

    pub fn ensure_unsaturated(&self, k: u32) -> Result<&Self> {
        if self.saturated {
            Err(Error::Saturated(k))
        } else {
            Ok(self)
        }
    }
}

/// Smith normal form exponents by minimal-valuation pivoting.
///
/// Rectangular inputs yield `min(rows, cols)` parts.
pub fn snf(a: &MatModPK) -> SingularNumbers {
    let ring = a.ring();
    let k = ring.k();
    let (rows, cols) = (a.n_rows(), a.n_cols());
    let mut m: Vec<u128> = a.entries().to_vec();
    let dim = rows.min(cols);
    let mut parts: Vec<i64> = Vec::with_capacity(dim);
    let mut saturated = false;
    for r in 0..dim {
        // first minimal-valuation entry in row-major order
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for i in r..rows {
            for j in r..cols {
                let e = m[i * cols + j];
                if e == 0 {
                    continue;
                }
                let v = ring.valuation(e);
                if best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            saturated = true;
            parts.extend(std::iter::repeat(k as i64).take(dim - r));
            break;
        };
        if pi != r {
            for j in 0..cols {
                m.swap(pi * cols + j, r * cols + j);
            }
        }
        if pj != r {
            for i in 0..rows {
                m.swap(i * cols + pj, i * cols + r);
            }
        }
        let pv = ring.pow_p(v);
        let unit = m[r * cols + r] / pv;
        let uinv = ring.inverse(unit).expect("cofactor of minimal valuation is a unit");
        for j in r..cols {
            m[r * cols + j] = ring.mul(m[r * cols + j], uinv);
        }
        // every entry is divisible by p^v, so quotients are exact
        for i in r + 1..rows {
            let c = m[i * cols + r] / pv;
            if c == 0 {
                continue;
            }
            for j in r..cols {
                let s = ring.mul(c, m[r * cols + j]);
                m[i * cols + j] = ring.sub(m[i * cols + j], s);
            }
        }
        for j in r + 1..cols {
            m[r * cols + j] = 0;
        }
        parts.push(v as i64);
    }
    parts.sort_unstable_by(|x, y| y.cmp(x));
    SingularNumbers { parts: Signature::new(parts).expect("sorted"), saturated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padicmat::ModRing;

    #[test]
    fn diagonal() {
        let r = ModRing::new(3, 5).unwrap();
        let sn = snf(&MatModPK::diag_p_powers(r, &[0, 2, 1]));
        assert_eq!(sn.parts.parts(), &[2, 1, 0]);
        assert!(!sn.saturated);
        assert_eq!(sn.conjugate().parts(), &[2, 1]);
    }

    #[test]
    fn zero_is_saturated() {
        let r = ModRing::new(2, 4).unwrap();
        let sn = snf(&MatModPK::zeros(r, 3, 3));
        assert!(sn.saturated);
        assert_eq!(sn.parts.parts(), &[4, 4, 4]);
        assert_eq!(sn.ensure_unsaturated(4), Err(Error::Saturated(4)));
    }

    #[test]
    fn small_example() {
        // [[2, 4], [6, 8]] over ℤ/2^6: gcd 2, det -8 → (2, 1)
        let r = ModRing::new(2, 6).unwrap();
        let sn = snf(&MatModPK::from_entries(r, 2, 2, vec![2, 4, 6, 8]).unwrap());
        assert_eq!(sn.parts.parts(), &[2, 1]);
    }

    #[test]
    fn rectangular() {
        let r = ModRing::new(5, 3).unwrap();
        let sn = snf(&MatModPK::from_entries(r, 2, 3, vec![5, 0, 25, 0, 0, 10]).unwrap());
        assert_eq!(sn.parts.parts(), &[1, 1]);
    }
}
