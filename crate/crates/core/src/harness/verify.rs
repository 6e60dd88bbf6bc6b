use num_traits::{One, Zero};
use serde::Serialize;

use crate::dynamics::{cauchy_pmf_hl, exact_cauchy_pmf, insertion, insertion_particles};
use crate::hallittlewood::pieri_transition;
use crate::limitlaw::series_coefficients;
use crate::qcore::{
    binom2, format_rational, qbinom, qpoch, rat, rpow, tfact, to_f64, Extent, Partition, Rational, Signature,
};

/// Outcome of one identity family.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

/// One power of `y = t^{L-m} χ` in one exponential term of `Pr(𝓛_3 = (L+2,L,L))`.
#[derive(Clone, Debug, Serialize)]
pub struct K3Item {
    pub t: String,
    #[serde(rename = "L")]
    pub l: i64,
    pub m: usize,
    pub power: usize,
    pub computed: String,
    pub printed: String,
    pub matches: bool,
    /// Value assembled from the worked tableau expansions (`m ≤ 1` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worked: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_worked: Option<bool>,
}

/// Term-by-term comparison against the printed expansion of `Pr(𝓛_3 = (L+2,L,L))`.
#[derive(Clone, Debug, Serialize)]
pub struct K3Comparison {
    /// Every printed coefficient of the `m = 0, 1` terms agrees and the full terms agree at all sample `χ`.
    pub pass: bool,
    /// As `pass`, against the worked tableau expansions of the three `Q` polynomials.
    pub pass_worked: bool,
    pub items: Vec<K3Item>,
    /// `m ≤ 1` items disagreeing with the printed polynomial.
    pub printed_mismatches: Vec<K3Item>,
    /// Disagreements in the `m = 2` term, which the acceptance criterion does not cover.
    pub informational_mismatches: Vec<K3Item>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub t: String,
    pub pass: bool,
    pub checks: Vec<IdentityCheck>,
    pub k3: K3Comparison,
}

struct Tracker {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Tracker { name, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck { name: self.name.into(), pass: self.failures.is_empty(), cases: self.cases, failures: self.failures }
    }
}

/// Partitions of size at most `max_size` with at most `max_len` parts.
pub fn partitions_up_to(max_size: usize, max_len: usize) -> Vec<Partition> {
    fn rec(rem: usize, cap: usize, len_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()).expect("decreasing"));
        if len_left == 0 {
            return;
        }
        for v in 1..=cap.min(rem) {
            cur.push(v);
            rec(rem - v, v, len_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_size, max_size, max_len, &mut Vec::new(), &mut out);
    out
}

fn one_box_extensions(mu: &Partition, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for i in 0..=mu.len().min(n.saturating_sub(1)) {
        let mut v = mu.parts().to_vec();
        if i == v.len() {
            v.push(1);
        } else {
            v[i] += 1;
        }
        if let Ok(p) = Partition::new(v) {
            out.push(p);
        }
    }
    out
}

fn pieri_rows(t: &Rational) -> IdentityCheck {
    let mut tr = Tracker::new("pieri_rows_sum_to_one");
    for n in 1..=3 {
        for mu in partitions_up_to(5, n) {
            let total: Rational = one_box_extensions(&mu, n).iter().map(|nu| pieri_transition(&mu, nu, n, t)).sum();
            tr.check(total.is_one(), || format!("n={n} mu={:?}: {}", mu.parts(), format_rational(&total)));
        }
    }
    tr.finish()
}

fn insertion_equivalence() -> IdentityCheck {
    let mut tr = Tracker::new("insertion_closed_form_equals_particles");
    for n in 1..=3usize {
        let lams: Vec<Signature> = partitions_up_to(6, n)
            .into_iter()
            .filter(|p| p.parts().first().map_or(true, |&x| x <= 3))
            .map(|p| p.to_signature(n).expect("fits"))
            .collect();
        let impulses = (0..4usize.pow(n as u32)).map(|code| {
            (0..n).map(|i| ((code / 4usize.pow(i as u32)) % 4) as u64).collect::<Vec<u64>>()
        });
        for a in impulses {
            for lam in &lams {
                let x = insertion(&a, lam);
                let y = insertion_particles(&a, lam);
                tr.check(x.is_ok() && x == y, || format!("a={a:?} lambda={:?}: {x:?} vs {y:?}", lam.parts()));
            }
        }
    }
    tr.finish()
}

fn sampler_identity(t: &Rational) -> IdentityCheck {
    let mut tr = Tracker::new("exact_sampler_equals_hl_expression");
    for x in [rat(1, 3), rat(1, 4), rat(2, 7)] {
        for n in 1..=3 {
            let parts = partitions_up_to(5, n);
            for lam in &parts {
                for nu in &parts {
                    let a = exact_cauchy_pmf(
                        &lam.to_signature(n).expect("fits"),
                        &nu.to_signature(n).expect("fits"),
                        &x,
                        Extent::Finite(n),
                        t,
                    );
                    let b = cauchy_pmf_hl(lam, nu, &x, Extent::Finite(n), t);
                    tr.check(b.as_ref() == Ok(&a), || {
                        format!("x={} n={n} {:?}->{:?}: {} vs {b:?}", format_rational(&x), lam.parts(), nu.parts(), format_rational(&a))
                    });
                }
            }
        }
    }
    tr.finish()
}

/// Mass of the box `ν_1 ≤ λ_1 + M` under the exact Cauchy step; the remaining
/// mass is `Pr(first impulse > M)`, below `x^{M+1}/(1-x)`.
fn cauchy_mass(t: &Rational) -> IdentityCheck {
    const M: i64 = 40;
    let mut tr = Tracker::new("cauchy_step_mass_closure");
    let x = rat(1, 4);
    for n in 1..=3usize {
        for lam in partitions_up_to(4, n) {
            let ls = lam.to_signature(n).expect("fits");
            let l = ls.parts();
            let mut total = Rational::zero();
            let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
            while let Some(prefix) = stack.pop() {
                let i = prefix.len();
                if i == n {
                    let nu = Signature::new(prefix).expect("interlacing");
                    total += exact_cauchy_pmf(&ls, &nu, &x, Extent::Finite(n), t);
                    continue;
                }
                let hi = if i == 0 { l[0] + M } else { l[i - 1] };
                for v in l[i]..=hi {
                    let mut p = prefix.clone();
                    p.push(v);
                    stack.push(p);
                }
            }
            let deficit = 1.0 - to_f64(&total);
            let bound = 0.25f64.powi(M as i32 + 1) / 0.75;
            tr.check((0.0..=bound + 1e-16).contains(&deficit), || format!("n={n} lambda={:?}: deficit {deficit:e}", l));
        }
    }
    tr.finish()
}

fn qbinom_identities(t: &Rational) -> IdentityCheck {
    let mut tr = Tracker::new("qbinom_identities");
    for a in 0..=9usize {
        for b in 0..=a as i64 {
            let v = qbinom(a, b, t);
            tr.check(v == qbinom(a, a as i64 - b, t), || format!("symmetry a={a} b={b}"));
            tr.check(v == tfact(t, a) / (tfact(t, b as usize) * tfact(t, a - b as usize)), || format!("factorial form a={a} b={b}"));
            if a >= 1 {
                let pascal = qbinom(a - 1, b - 1, t) + rpow(t, b) * qbinom(a - 1, b, t);
                tr.check(v == pascal, || format!("pascal a={a} b={b}"));
            }
        }
        tr.check(qbinom(a, -1, t).is_zero() && qbinom(a, a as i64 + 1, t).is_zero(), || format!("range a={a}"));
        for z in [rat(1, 3), rat(-2, 5), rat(7, 2)] {
            let lhs = qpoch(&z, t, a);
            let rhs: Rational = (0..=a as i64)
                .map(|b| {
                    let s = if b % 2 == 0 { Rational::one() } else { -Rational::one() };
                    s * rpow(t, binom2(b)) * qbinom(a, b, t) * rpow(&z, b)
                })
                .sum();
            tr.check(lhs == rhs, || format!("binomial theorem a={a} z={}", format_rational(&z)));
        }
    }
    tr.finish()
}

/// Printed coefficient of `y^j`, `y = t^{L-m} χ`, in the `m`-th exponential term.
pub fn k3_printed_coefficients(t: &Rational, m: usize) -> Vec<Rational> {
    let one = Rational::one();
    let u = &one - t;
    let v = &one + t;
    let tt2 = qpoch(t, t, 2);
    let pw = |x: &Rational, e: i64| rpow(x, e);
    let poly = |cs: &[i64]| -> Rational {
        let mut acc = Rational::zero();
        for c in cs.iter().rev() {
            acc = acc * t + rat(*c, 1);
        }
        acc
    };
    let fact = |n: i64| rat((1..=n).product::<i64>(), 1);
    match m {
        0 => {
            let pre = t / &tt2;
            vec![pw(t, 2) * &pre, -(t * (&one - pw(t, 2))) * &pre, &tt2 / fact(2) * &pre]
        }
        1 => {
            let pre = -(pw(t, 3) / (&u * &tt2));
            vec![
                &u * &pre,
                -(pw(&u, 2) * t) * &pre,
                pw(&u, 2) * t * poly(&[-1, 1, 1]) / fact(2) * &pre,
                pw(&u, 3) * &v * pw(t, 3) * poly(&[1, -2, -1, -1]) / fact(3) * &pre,
                pw(&u, 4) * &v * poly(&[3, 2, 1]) / fact(4) * &pre,
            ]
        }
        2 => {
            let pre = pw(t, 8) / (&tt2 * &tt2);
            vec![
                Rational::zero(),
                Rational::zero(),
                pw(&u, 3) * &u / fact(2) * &pre,
                // Printed as (t^L χ)^3 = t^6 y^3.
                pw(&u, 4) * &v * t * poly(&[-2, -1]) * pw(t, 6) / fact(3) * &pre,
                pw(&u, 4) * &u * t * poly(&[-3, 0, 3, 2, 1]) / fact(4) * &pre,
                pw(&u, 5) * pw(&v, 2) * poly(&[4, -2, -4, -6, -4, -2, -1]) / fact(5) * &pre,
                pw(&u, 6) * pw(&v, 2) * poly(&[9, 13, 12, 7, 3, 1]) / fact(6) * &pre,
            ]
        }
        _ => Vec::new(),
    }
}

/// `m`-th term assembled from the worked expansions of `Q_{(m+2,m)'}`,
/// `Q_{(m+1,m)'}`, `Q_{(m,m)'}` as `±t^{(3m^2+m)/2+1}/((t;t)_2 (t;t)_m) (Q - (1+t)Q + Q)`,
/// coefficients of `y^j`.
pub fn k3_worked_coefficients(t: &Rational, m: usize) -> Vec<Rational> {
    let one = Rational::one();
    let u = &one - t;
    let v = &one + t;
    let tt2 = qpoch(t, t, 2);
    let fact = |n: i64| rat((1..=n).product::<i64>(), 1);
    let pw = |x: &Rational, e: i64| rpow(x, e);
    let z = Rational::zero;
    let (big, mid, small): (Vec<Rational>, Vec<Rational>, Vec<Rational>) = match m {
        0 => (vec![z(), tt2.clone(), &tt2 / fact(2)], vec![u.clone(), u.clone()], vec![one.clone()]),
        1 => {
            let a = pw(&u, 3) * (&one - pw(t, 2))
                + pw(&u, 2) * pw(&(&one - pw(t, 2)), 2)
                + pw(&u, 2) * (&one - pw(t, 2)) * (&one - pw(t, 3));
            let b = pw(&u, 3) * (rat(2, 1) + t);
            (
                vec![z(), z(), pw(&u, 2) * (&one - pw(t, 2)) / fact(2), &a / fact(3), &a / fact(4)],
                vec![z(), pw(&u, 2), &b / fact(2), &b / fact(3)],
                vec![u.clone(), pw(&u, 2), pw(&u, 2) / fact(2)],
            )
        }
        _ => return Vec::new(),
    };
    let mm = m as i64;
    let sign = if m % 2 == 0 { one.clone() } else { -one.clone() };
    let pre = sign * rpow(t, (3 * mm * mm + mm) / 2 + 1) / (&tt2 * tfact(t, m));
    (0..big.len())
        .map(|j| {
            let g = |w: &Vec<Rational>| w.get(j).cloned().unwrap_or_else(Rational::zero);
            (g(&big) - &v * g(&mid) + g(&small)) * &pre
        })
        .collect()
}

/// Computed coefficient of `y^j`, `y = t^{L-m} χ`, in the `m`-th term for `(L+2, L, L)`.
pub fn k3_computed_coefficients(t: &Rational, l: i64, m: usize) -> Vec<Rational> {
    let sig = Signature::new(vec![l + 2, l, l]).expect("decreasing");
    let term = series_coefficients(t, &sig, m);
    let scale = rpow(t, -term.d);
    let mut f = Rational::one();
    term.coeffs
        .iter()
        .map(|c| {
            let out = c * &f;
            f *= &scale;
            out
        })
        .collect()
}

fn eval(cs: &[Rational], y: &Rational) -> Rational {
    cs.iter().rev().fold(Rational::zero(), |acc, c| acc * y + c)
}

pub fn compare_k3() -> K3Comparison {
    let mut items = Vec::new();
    let mut informational = Vec::new();
    let mut pass = true;
    let mut pass_worked = true;
    for t in [rat(1, 2), rat(1, 3), rat(2, 5)] {
        for l in [-2i64, 0, 3] {
            for m in 0..=2usize {
                let ours = k3_computed_coefficients(&t, l, m);
                let printed = k3_printed_coefficients(&t, m);
                let worked = k3_worked_coefficients(&t, m);
                let len = ours.len().max(printed.len()).max(worked.len());
                let get = |v: &[Rational], j: usize| v.get(j).cloned().unwrap_or_else(Rational::zero);
                for j in 0..len {
                    let (a, b, w) = (get(&ours, j), get(&printed, j), get(&worked, j));
                    let item = K3Item {
                        t: format_rational(&t),
                        l,
                        m,
                        power: j,
                        computed: format_rational(&a),
                        printed: format_rational(&b),
                        matches: a == b,
                        worked: (m < 2).then(|| format_rational(&w)),
                        matches_worked: (m < 2).then(|| a == w),
                    };
                    if m < 2 {
                        pass &= item.matches;
                        pass_worked &= a == w;
                        items.push(item);
                    } else if !item.matches {
                        informational.push(item);
                    }
                }
                if m < 2 {
                    let td = rpow(&t, l - m as i64);
                    for chi in [rat(1, 1), rat(5, 2), rat(1, 7)] {
                        let y = &td * &chi;
                        pass &= eval(&ours, &y) == eval(&printed, &y);
                        pass_worked &= eval(&ours, &y) == eval(&worked, &y);
                    }
                }
            }
        }
    }
    let printed_mismatches = items.iter().filter(|i| !i.matches).cloned().collect();
    K3Comparison { pass, pass_worked, items, printed_mismatches, informational_mismatches: informational }
}

/// Runs every exact identity suite at `t`. The `k = 3` part passes when the
/// computed terms agree with the worked tableau expansions; disagreements with
/// the printed polynomials are itemized in `k3.printed_mismatches`.
pub fn verify_identities(t: &Rational) -> VerifyReport {
    let checks = vec![pieri_rows(t), insertion_equivalence(), sampler_identity(t), cauchy_mass(t), qbinom_identities(t)];
    let k3 = compare_k3();
    let pass = checks.iter().all(|c| c.pass) && k3.pass_worked;
    VerifyReport { t: format_rational(t), pass, checks, k3 }
}
