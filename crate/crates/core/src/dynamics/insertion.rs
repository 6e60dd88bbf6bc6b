use crate::error::{Error, Result};
use crate::qcore::Signature;

fn padded(a: &[u64], lambda: &Signature) -> Result<Vec<i64>> {
    let mut lam = lambda.parts().to_vec();
    if a.len() > lam.len() {
        if lam.last().is_some_and(|&x| x < 0) {
            return Err(Error::LengthMismatch(a.len(), lam.len()));
        }
        lam.resize(a.len(), 0);
    }
    Ok(lam)
}

/// `ι(a; λ)_i = min(λ_{i-1}, max_{j ≥ i}(λ_j + a_i + … + a_j))` with `λ_0 = ∞`.
///
/// Impulses beyond `a.len()` are zero. A longer `a` pads `λ` with zeros,
/// which requires `λ` to be a partition.
pub fn insertion(a: &[u64], lambda: &Signature) -> Result<Signature> {
    let lam = padded(a, lambda)?;
    let n = lam.len();
    let mut out = lam.clone();
    // m = max_{j ≥ i}(λ_j + a_i + … + a_j), built from the bottom
    let mut m = i64::MIN;
    for i in (0..n).rev() {
        let ai = a.get(i).copied().unwrap_or(0) as i64;
        m = ai + m.max(lam[i]);
        out[i] = if i == 0 { m } else { m.min(lam[i - 1]) };
    }
    Signature::new(out)
}

/// The same map by moving particles from the bottom with impulse donation.
pub fn insertion_particles(a: &[u64], lambda: &Signature) -> Result<Signature> {
    let lam = padded(a, lambda)?;
    let mut pos = lam.clone();
    let Some(last) = a.iter().rposition(|&x| x > 0) else {
        return Signature::new(pos);
    };
    let mut carry = 0i64;
    for j in (0..=last).rev() {
        let impulse = a[j] as i64 + carry;
        let room = if j == 0 { i64::MAX } else { lam[j - 1] - lam[j] };
        if impulse <= room {
            pos[j] += impulse;
            carry = 0;
        } else {
            pos[j] += room;
            carry = impulse - room;
        }
    }
    Signature::new(pos)
}
