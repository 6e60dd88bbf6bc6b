use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::series::{LimitLawParams, Method, PmfRecord};
use crate::error::{Error, Result};
use crate::hallittlewood::qw_laurent_monomials;
use crate::qcore::{binom2, qbinom_f64, qpoch_c64, qpoch_inf, Extent, Signature};

const PROD_TOL: f64 = 1e-18;

/// Quadrature controls for the truncated contour.
///
/// The contour is two rays `Im w = ±r` joined by the right half circle of
/// radius `r`; all poles lie on `(-∞, 0]`, so any `r > 0` gives the same
/// integral, and `r ≈ 1/(χ t^{L_k})` keeps `e^{χ t^{L_k} w}` bounded.
/// Panels are graded: near each pole abscissa `-t^{j}` they have width
/// `panel_width · r`, elsewhere up to `grading` times the distance to the
/// nearest pole, capped at `max_panel`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContourSpec {
    /// `X_max`; `None` selects `max(50, 40 / (χ t^{L_k}))`.
    pub ray_cutoff: Option<f64>,
    /// `r`; `None` selects `min(1, 2 / (χ t^{L_k}))`.
    pub radius: Option<f64>,
    pub panel_width: f64,
    pub nodes_per_panel: usize,
    pub grading: f64,
    pub max_panel: f64,
    /// Largest accepted difference between the base and refined meshes.
    pub tolerance: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            ray_cutoff: None,
            radius: None,
            panel_width: 1.0,
            nodes_per_panel: 10,
            grading: 1.0,
            max_panel: 32.0,
            tolerance: 1e-7,
        }
    }
}

impl ContourSpec {
    pub fn default_cutoff(chi: f64, t: f64, lk: i64) -> f64 {
        (40.0 / (chi * t.powi(lk as i32))).max(50.0)
    }

    pub fn default_radius(chi: f64, t: f64, lk: i64) -> f64 {
        (2.0 / (chi * t.powi(lk as i32))).min(1.0)
    }

    fn validate(&self) -> Result<()> {
        if let Some(x) = self.ray_cutoff {
            if !(x > 1.0) {
                return Err(Error::OutOfRange(format!("ray cutoff {x} must exceed 1")));
            }
        }
        if let Some(r) = self.radius {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::OutOfRange(format!("radius {r} must lie in (0, 1]")));
            }
        }
        if !(self.panel_width > 0.0) || self.nodes_per_panel < 2 || !(self.max_panel >= self.panel_width) {
            return Err(Error::OutOfRange("invalid panel controls".into()));
        }
        Ok(())
    }
}

/// Quadrature nodes `z` with complex weights `dz` along the oriented contour.
struct Mesh {
    z: Vec<Complex64>,
    w: Vec<Complex64>,
}

fn ray_breakpoints(x_max: f64, r: f64, t: f64, spec: &ContourSpec) -> Vec<f64> {
    let mut poles = vec![];
    let mut p = 1.0;
    while p > 0.25 * r {
        poles.push(p);
        p *= t;
    }
    p = 1.0 / t;
    while p <= 2.0 * x_max + 2.0 {
        poles.push(p);
        p /= t;
    }
    let dist = |u: f64| {
        let d = poles.iter().map(|&q| (u - q).abs()).fold(u, f64::min);
        (d * d + r * r).sqrt()
    };
    let min_w = spec.panel_width * r;
    let mut out = vec![0.0];
    let mut b = 0.0;
    while b < x_max {
        let h = (spec.grading * dist(b) / (1.0 + spec.grading)).clamp(min_w, spec.max_panel);
        b = (b + h).min(x_max);
        if x_max - b < 0.25 * min_w {
            b = x_max;
        }
        out.push(b);
    }
    out
}

fn build_mesh(x_max: f64, r: f64, t: f64, spec: &ContourSpec, split: usize) -> Mesh {
    let gl = GaussLegendre::new(spec.nodes_per_panel).expect("at least two nodes");
    let rule: Vec<(f64, f64)> = gl.nodes().copied().zip(gl.weights().copied()).collect();
    let mut z = vec![];
    let mut w = vec![];
    let mut panel = |a: f64, b: f64, param: &dyn Fn(f64) -> (Complex64, Complex64)| {
        for s in 0..split {
            let lo = a + (b - a) * s as f64 / split as f64;
            let hi = a + (b - a) * (s + 1) as f64 / split as f64;
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            for &(x, wt) in &rule {
                let (zz, dz) = param(mid + half * x);
                z.push(zz);
                w.push(dz * wt * half);
            }
        }
    };
    let breaks = ray_breakpoints(x_max, r, t, spec);
    // bottom ray, -X - ir → -ir
    for pair in breaks.windows(2).rev() {
        panel(-pair[1], -pair[0], &|s| (Complex64::new(s, -r), Complex64::new(1.0, 0.0)));
    }
    // right half circle, -ir → r → ir
    let n_arc = (PI / spec.panel_width).ceil().max(2.0) as usize;
    for k in 0..n_arc {
        let a = -PI / 2.0 + PI * k as f64 / n_arc as f64;
        let b = -PI / 2.0 + PI * (k + 1) as f64 / n_arc as f64;
        panel(a, b, &|th| {
            let e = Complex64::from_polar(r, th);
            (e, Complex64::i() * e)
        });
    }
    // top ray, ir → -X + ir
    for pair in breaks.windows(2).rev() {
        let (a, b) = (-pair[1], -pair[0]);
        panel(a, b, &|s| (Complex64::new(a + b - s, r), Complex64::new(-1.0, 0.0)));
    }
    Mesh { z, w }
}

/// `(r; t)_∞ (1/r; t)_∞ = (1 - r)(1 - 1/r) ∏_{i≥1} (1 + t^{2i} - t^i (r + 1/r))`.
fn cross_factor(r: Complex64, t: f64) -> Complex64 {
    let s = r + r.inv();
    let scale = r.norm().max(r.inv().norm());
    let mut acc = (1.0 - r) * (1.0 - r.inv());
    let mut ti = t;
    while ti * scale > PROD_TOL {
        acc *= 1.0 + ti * ti - s * ti;
        ti *= t;
    }
    acc
}

struct Level {
    mesh: Mesh,
    /// `dz / (z (-1/z; t)_∞ (-tz; t)_∞)` per node.
    base: Vec<Complex64>,
    /// `(-t/z; t)_∞` per node.
    k1_extra: Vec<Complex64>,
}

impl Level {
    fn new(mesh: Mesh, t: f64) -> Self {
        let inf = Extent::Infinite;
        let mut base = Vec::with_capacity(mesh.z.len());
        let mut k1_extra = Vec::with_capacity(mesh.z.len());
        for (&z, &w) in mesh.z.iter().zip(&mesh.w) {
            let a = qpoch_c64(-z.inv(), t, inf, PROD_TOL).expect("t < 1");
            let b = qpoch_c64(-z * t, t, inf, PROD_TOL).expect("t < 1");
            base.push(w / (z * a * b));
            k1_extra.push(qpoch_c64(-z.inv() * t, t, inf, PROD_TOL).expect("t < 1"));
        }
        Level { mesh, base, k1_extra }
    }

    fn k1(&self, chi_tl: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&z, &b), &e) in self.mesh.z.iter().zip(&self.base).zip(&self.k1_extra) {
            acc += b * e * (z * chi_tl).exp();
        }
        acc / (2.0 * PI * Complex64::i())
    }

    /// `Pr(𝓛_2 = (L2 + A, L2))` for `A = 0..=a_max`, unnormalized by nothing.
    fn k2_row(&self, t: f64, chi_tl: f64, a_max: usize) -> Result<Vec<f64>> {
        let n = self.mesh.z.len();
        let z = &self.mesh.z;
        let f: Vec<Complex64> = z.iter().zip(&self.base).map(|(&z, &b)| b * (z * chi_tl).exp()).collect();
        let max_e = 2 * a_max;
        let v: Vec<Vec<Complex64>> =
            (0..=max_e).map(|e| (0..n).map(|i| f[i] * z[i].powi(-(e as i32))).collect()).collect();
        // y_e = K v_e with the symmetric cross kernel formed on the fly
        let mut y = vec![vec![Complex64::new(0.0, 0.0); n]; max_e + 1];
        for a in 0..n {
            for b in a + 1..n {
                let k = cross_factor(z[a] / z[b], t);
                for (ye, ve) in y.iter_mut().zip(&v) {
                    ye[a] += k * ve[b];
                    ye[b] += k * ve[a];
                }
            }
        }
        let dot = |e1: usize, e2: usize| -> Complex64 {
            v[e1].iter().zip(&y[e2]).fold(Complex64::new(0.0, 0.0), |s, (a, b)| s + a * b)
        };
        let tinf = qpoch_inf(t, t);
        let two_pi_i = 2.0 * PI * Complex64::i();
        let mut out = Vec::with_capacity(a_max + 1);
        for a in 0..=a_max {
            let mut total = Complex64::new(0.0, 0.0);
            for j in 0..=a {
                let c = t.powi(binom2(j as i64 + 1) as i32) * qbinom_f64(a, j as i64, t);
                let mu = Signature::new(vec![a as i64, j as i64]).expect("a >= j");
                for (e, coef) in qw_laurent_monomials(&mu, t)? {
                    total += dot(e[0] as usize, e[1] as usize) * (c * coef);
                }
            }
            let tfa: f64 = (1..=a).map(|i| 1.0 - t.powi(i as i32)).product();
            let pref = tinf / 2.0 * t.powi(binom2(a as i64) as i32) / tfa;
            out.push((total * pref / (two_pi_i * two_pi_i)).re);
        }
        Ok(out)
    }
}

/// Contour evaluator reusing nodes and the two-variable cross kernel
/// across many `L` at fixed `(t, χ)`.
pub struct ContourEvaluator {
    t: f64,
    chi: f64,
    spec: ContourSpec,
    levels: [Level; 2],
}

impl ContourEvaluator {
    /// Evaluator tuned for probabilities with last coordinate near `lk`;
    /// `spec` overrides the cutoff and radius when set.
    pub fn new(t: f64, chi: f64, lk: i64, spec: ContourSpec) -> Result<Self> {
        spec.validate()?;
        if !(t > 0.0 && t < 1.0) || !(chi > 0.0) {
            return Err(Error::OutOfRange("need 0 < t < 1 and chi > 0".into()));
        }
        let x_max = spec.ray_cutoff.unwrap_or_else(|| ContourSpec::default_cutoff(chi, t, lk));
        let r = spec.radius.unwrap_or_else(|| ContourSpec::default_radius(chi, t, lk));
        let coarse = Level::new(build_mesh(x_max, r, t, &spec, 1), t);
        let fine = Level::new(build_mesh(x_max, r, t, &spec, 2), t);
        Ok(ContourEvaluator { t, chi, spec, levels: [coarse, fine] })
    }

    pub fn nodes(&self) -> (usize, usize) {
        (self.levels[0].mesh.z.len(), self.levels[1].mesh.z.len())
    }

    fn finish(&self, l: Signature, coarse: f64, fine: f64, terms: usize) -> Result<PmfRecord> {
        let diff = (coarse - fine).abs();
        if !(diff <= self.spec.tolerance) {
            return Err(Error::QuadratureNonConvergence { estimate: fine, difference: diff });
        }
        Ok(PmfRecord { l, pmf: fine, method: Method::Contour, terms_used: terms, est_error: diff })
    }

    /// `Pr(𝓛_{1,t,χ} = L)`.
    pub fn pmf_k1(&self, l: i64) -> Result<PmfRecord> {
        let c = self.chi * self.t.powi(l as i32);
        let coarse = self.levels[0].k1(c).re;
        let fine = self.levels[1].k1(c).re;
        self.finish(Signature::new(vec![l])?, coarse, fine, self.levels[1].mesh.z.len())
    }

    /// Cross-check form `(1/2πi) ∫ e^{χ t^L w} / (-w; t)_∞ dw` on the fine mesh.
    pub fn pmf_k1_simplified(&self, l: i64) -> f64 {
        let c = self.chi * self.t.powi(l as i32);
        let lv = &self.levels[1];
        let mut acc = Complex64::new(0.0, 0.0);
        for (&z, &w) in lv.mesh.z.iter().zip(&lv.mesh.w) {
            acc += w * (z * c).exp() / qpoch_c64(-z, self.t, Extent::Infinite, PROD_TOL).expect("t < 1");
        }
        (acc / (2.0 * PI * Complex64::i())).re
    }

    /// `Pr(𝓛_{2,t,χ} = (L2 + A, L2))` for `A = 0..=a_max`.
    pub fn pmf_k2_row(&self, l2: i64, a_max: usize) -> Result<Vec<PmfRecord>> {
        let c = self.chi * self.t.powi(l2 as i32);
        let t = self.t;
        let coarse = self.levels[0].k2_row(t, c, a_max)?;
        let fine = self.levels[1].k2_row(t, c, a_max)?;
        let n = self.levels[1].mesh.z.len();
        (0..=a_max)
            .map(|a| self.finish(Signature::new(vec![l2 + a as i64, l2])?, coarse[a], fine[a], n * n))
            .collect()
    }

    pub fn pmf(&self, l: &Signature) -> Result<PmfRecord> {
        match l.parts() {
            [x] => self.pmf_k1(*x),
            [l1, l2] => {
                let a = (l1 - l2) as usize;
                Ok(self.pmf_k2_row(*l2, a)?.swap_remove(a))
            }
            _ => Err(Error::OutOfRange("contour formula implemented for k <= 2".into())),
        }
    }
}

/// `Pr(𝓛_{k,t,χ} = L)` for `k ≤ 2` by contour quadrature.
pub fn pmf_contour(params: &LimitLawParams, l: &Signature, spec: &ContourSpec) -> Result<PmfRecord> {
    params.validate()?;
    if l.len() != params.k {
        return Err(Error::LengthMismatch(params.k, l.len()));
    }
    if params.k > 2 {
        return Err(Error::OutOfRange("contour formula implemented for k <= 2".into()));
    }
    let lk = *l.parts().last().expect("k >= 1");
    let ev = ContourEvaluator::new(params.t_f64(), params.chi, lk, spec.clone())?;
    ev.pmf(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limitlaw::{pmf_k1, pmf_series};
    use crate::qcore::rat;

    #[test]
    fn k1_matches_series() {
        for l in -5..=5 {
            let ev = ContourEvaluator::new(0.5, 1.0, l, ContourSpec::default()).unwrap();
            let c = ev.pmf_k1(l).unwrap();
            let s = pmf_k1(0.5, 1.0, l);
            assert!((c.pmf - s).abs() < 1e-9, "L={l}: {} vs {s}", c.pmf);
            assert!((ev.pmf_k1_simplified(l) - s).abs() < 1e-9);
        }
    }

    #[test]
    fn k2_single_point() {
        let p = LimitLawParams::new(2, rat(1, 2), 1.0).unwrap();
        let l = Signature::new(vec![1, 0]).unwrap();
        let c = pmf_contour(&p, &l, &ContourSpec::default()).unwrap();
        let s = pmf_series(&p, &l).unwrap();
        assert!((c.pmf - s.pmf).abs() < 1e-6, "{} vs {}", c.pmf, s.pmf);
    }

    #[test]
    fn k2_grid_matches_series() {
        let p = LimitLawParams::new(2, rat(1, 2), 1.0).unwrap();
        for l2 in [-2, 1] {
            let ev = ContourEvaluator::new(0.5, 1.0, l2, ContourSpec::default()).unwrap();
            let row = ev.pmf_k2_row(l2, 3).unwrap();
            for r in row {
                let s = pmf_series(&p, &r.l).unwrap();
                assert!((r.pmf - s.pmf).abs() < 1e-6, "{}: {} vs {}", r.l, r.pmf, s.pmf);
            }
        }
    }
}
