use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ring::ModRing;
use crate::error::{Error, Result};

/// Dense matrix over `ℤ/p^K`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatRepr", into = "MatRepr")]
pub struct MatModPK {
    ring: ModRing,
    n_rows: usize,
    n_cols: usize,
    entries: Vec<u128>,
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    p: u64,
    #[serde(rename = "K")]
    k: u32,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_cols: Option<usize>,
    entries: Vec<u128>,
}

impl TryFrom<MatRepr> for MatModPK {
    type Error = Error;
    fn try_from(r: MatRepr) -> Result<Self> {
        MatModPK::from_entries(ModRing::new(r.p, r.k)?, r.n, r.n_cols.unwrap_or(r.n), r.entries)
    }
}

impl From<MatModPK> for MatRepr {
    fn from(m: MatModPK) -> Self {
        MatRepr {
            p: m.ring.p(),
            k: m.ring.k(),
            n: m.n_rows,
            n_cols: (m.n_cols != m.n_rows).then_some(m.n_cols),
            entries: m.entries,
        }
    }
}

impl MatModPK {
    pub fn from_entries(ring: ModRing, n_rows: usize, n_cols: usize, entries: Vec<u128>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::OutOfRange("matrix dimensions must be positive".into()));
        }
        if entries.len() != n_rows * n_cols {
            return Err(Error::LengthMismatch(entries.len(), n_rows * n_cols));
        }
        if let Some(e) = entries.iter().find(|&&e| e >= ring.modulus()) {
            return Err(Error::OutOfRange(format!("entry {e} is not reduced mod p^K")));
        }
        Ok(MatModPK { ring, n_rows, n_cols, entries })
    }

    pub fn zeros(ring: ModRing, n_rows: usize, n_cols: usize) -> Self {
        MatModPK { ring, n_rows, n_cols, entries: vec![0; n_rows * n_cols] }
    }

    pub fn identity(ring: ModRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// `diag(p^{e_1}, …, p^{e_n})`.
    pub fn diag_p_powers(ring: ModRing, exps: &[u32]) -> Self {
        let n = exps.len();
        let mut m = Self::zeros(ring, n, n);
        for (i, &e) in exps.iter().enumerate() {
            m.entries[i * n + i] = ring.pow_p(e);
        }
        m
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn entries(&self) -> &[u128] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u128 {
        self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u128) {
        self.entries[i * self.n_cols + j] = v % self.ring.modulus();
    }

    pub fn mul(&self, other: &MatModPK) -> Result<MatModPK> {
        if self.n_cols != other.n_rows {
            return Err(Error::LengthMismatch(self.n_cols, other.n_rows));
        }
        if self.ring != other.ring {
            return Err(Error::OutOfRange("matrices over different rings".into()));
        }
        let r = self.ring;
        let (n, m) = (self.n_rows, other.n_cols);
        let mut out = vec![0u128; n * m];
        for i in 0..n {
            let row = &mut out[i * m..(i + 1) * m];
            for l in 0..self.n_cols {
                let a = self.entries[i * self.n_cols + l];
                if a == 0 {
                    continue;
                }
                for (o, &b) in row.iter_mut().zip(&other.entries[l * m..(l + 1) * m]) {
                    *o = r.add(*o, r.mul(a, b));
                }
            }
        }
        Ok(MatModPK { ring: r, n_rows: n, n_cols: m, entries: out })
    }

    /// Top-left `rows × cols` block.
    pub fn corner(&self, rows: usize, cols: usize) -> Result<MatModPK> {
        if rows == 0 || cols == 0 || rows > self.n_rows || cols > self.n_cols {
            return Err(Error::OutOfRange(format!("corner {rows}x{cols} of {}x{}", self.n_rows, self.n_cols)));
        }
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| self.get(i, j)).collect();
        Ok(MatModPK { ring: self.ring, n_rows: rows, n_cols: cols, entries })
    }

    /// Multiplies row `i` by `p`.
    pub fn scale_row_by_p(&mut self, i: usize) {
        let (r, p) = (self.ring, self.ring.p() as u128);
        for e in &mut self.entries[i * self.n_cols..(i + 1) * self.n_cols] {
            *e = r.mul(*e, p);
        }
    }

    /// Whether the reduction mod `p` is invertible (square matrices only).
    pub fn invertible_mod_p(&self) -> bool {
        if self.n_rows != self.n_cols {
            return false;
        }
        let p = self.ring.p() as u128;
        let n = self.n_rows;
        let mut a: Vec<u128> = self.entries.iter().map(|&e| e % p).collect();
        let inv = |x: u128| -> u128 {
            // x^{p-2} mod p
            let (mut b, mut e, mut r) = (x, p - 2, 1u128);
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            r
        };
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return false;
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
            }
            let ip = inv(a[c * n + c]);
            for r in c + 1..n {
                let f = a[r * n + c] * ip % p;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = (a[r * n + j] + (p - f) * a[c * n + j]) % p;
                }
            }
        }
        true
    }
}

fn uniform_entries<R: Rng + ?Sized>(ring: ModRing, len: usize, rng: &mut R) -> Vec<u128> {
    (0..len).map(|_| rng.gen_range(0..ring.modulus())).collect()
}

/// `N × N` matrix with iid entries uniform on `ℤ/p^K`.
pub fn sample_additive_haar<R: Rng + ?Sized>(n: usize, p: u64, k: u32, rng: &mut R) -> Result<MatModPK> {
    let ring = ModRing::new(p, k)?;
    MatModPK::from_entries(ring, n, n, uniform_entries(ring, n * n, rng))
}

pub const GL_REJECTION_BUDGET: usize = 1000;

/// Haar (uniform) element of `GL_n(ℤ/p^K)` by rejection.
pub fn sample_haar_gl<R: Rng + ?Sized>(n: usize, ring: ModRing, rng: &mut R) -> Result<MatModPK> {
    for _ in 0..GL_REJECTION_BUDGET {
        let m = MatModPK::from_entries(ring, n, n, uniform_entries(ring, n * n, rng))?;
        if m.invertible_mod_p() {
            return Ok(m);
        }
    }
    Err(Error::RejectionBudget(GL_REJECTION_BUDGET))
}

/// Top-left `N × N` corner of a Haar element of `GL_{N+D}(ℤ/p^K)`.
pub fn sample_haar_gl_corner<R: Rng + ?Sized>(n: usize, d: usize, p: u64, k: u32, rng: &mut R) -> Result<MatModPK> {
    if d == 0 {
        return Err(Error::OutOfRange("corner codimension D must be at least 1".into()));
    }
    sample_haar_gl(n + d, ModRing::new(p, k)?, rng)?.corner(n, n)
}
