use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::qcore::{qbinom, rpow, tfact, Partition, Rational, Signature};

fn one_minus_pow(t: &Rational, e: usize) -> Rational {
    Rational::one() - num_traits::pow(t.clone(), e)
}

/// `ψ_{λ/μ}(0, t) = ∏_{i: m_i(μ) = m_i(λ) + 1} (1 - t^{m_i(μ)})` over all `i ∈ ℤ`.
///
/// `len(μ)` must be `len(λ) - 1` or `len(λ)`; zero unless `μ ≺ λ`.
pub fn psi_hl(lambda: &Signature, mu: &Signature, t: &Rational) -> Rational {
    if !mu.interlaces(lambda) {
        return Rational::zero();
    }
    let values: BTreeSet<i64> = lambda.parts().iter().chain(mu.parts()).copied().collect();
    let mut acc = Rational::one();
    for i in values {
        let (ml, mm) = (lambda.multiplicity(i), mu.multiplicity(i));
        if mm == ml + 1 {
            acc *= one_minus_pow(t, mm);
        }
    }
    acc
}

/// Partition form of [`psi_hl`]; the product runs over `i > 0`.
pub fn psi_hl_partition(lambda: &Partition, mu: &Partition, t: &Rational) -> Rational {
    if !mu.interlaces(lambda) {
        return Rational::zero();
    }
    let values: BTreeSet<usize> = lambda.parts().iter().chain(mu.parts()).copied().collect();
    let mut acc = Rational::one();
    for i in values {
        let (ml, mm) = (lambda.multiplicity(i), mu.multiplicity(i));
        if mm == ml + 1 {
            acc *= one_minus_pow(t, mm);
        }
    }
    acc
}

/// `φ_{λ/μ}(0, t) = ∏_{i > 0: m_i(λ) = m_i(μ) + 1} (1 - t^{m_i(λ)})`; zero unless `μ ≺ λ`.
pub fn phi_hl(lambda: &Partition, mu: &Partition, t: &Rational) -> Rational {
    if !mu.interlaces(lambda) {
        return Rational::zero();
    }
    let values: BTreeSet<usize> = lambda.parts().iter().chain(mu.parts()).copied().collect();
    let mut acc = Rational::one();
    for i in values {
        let (ml, mm) = (lambda.multiplicity(i), mu.multiplicity(i));
        if ml == mm + 1 {
            acc *= one_minus_pow(t, ml);
        }
    }
    acc
}

/// q-Whittaker `ψ_{λ/μ}(q, 0) = ∏_{i ≤ len μ} [λ_i - λ_{i+1} choose λ_i - μ_i]_q`
/// for `λ ∈ Sig_n`, `μ ∈ Sig_{n-1}`.
pub fn psi_qw(lambda: &Signature, mu: &Signature, q: &Rational) -> Rational {
    if mu.len() + 1 != lambda.len() || !mu.interlaces(lambda) {
        return Rational::zero();
    }
    let (l, m) = (lambda.parts(), mu.parts());
    let mut acc = Rational::one();
    for i in 0..m.len() {
        acc *= qbinom((l[i] - l[i + 1]) as usize, l[i] - m[i], q);
    }
    acc
}

/// Partition form of [`psi_qw`].
pub fn psi_qw_partition(lambda: &Partition, mu: &Partition, q: &Rational) -> Rational {
    if !mu.interlaces(lambda) {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 1..=mu.len() {
        let (li, lj, mi) = (lambda.part(i), lambda.part(i + 1), mu.part(i));
        acc *= qbinom(li - lj, (li - mi) as i64, q);
    }
    acc
}

/// q-Whittaker `φ_{λ/μ}(q, 0) = 1/(q;q)_{λ_1-μ_1} ∏_{i<len λ} [μ_i - μ_{i+1} choose μ_i - λ_{i+1}]_q`.
pub fn phi_qw(lambda: &Partition, mu: &Partition, q: &Rational) -> Rational {
    if !mu.interlaces(lambda) {
        return Rational::zero();
    }
    let mut acc = tfact(q, lambda.part(1) - mu.part(1)).recip();
    for i in 1..lambda.len() {
        let (mi, mj, lj) = (mu.part(i), mu.part(i + 1), lambda.part(i + 1));
        acc *= qbinom(mi - mj, mi as i64 - lj as i64, q);
    }
    acc
}

/// `b_λ(q, 0) = ∏_i 1/(q;q)_{λ_i - λ_{i+1}}`.
pub fn b_lam_qw(lambda: &Partition, q: &Rational) -> Rational {
    let mut acc = Rational::one();
    for i in 1..=lambda.len() {
        acc /= tfact(q, lambda.part(i) - lambda.part(i + 1));
    }
    acc
}

/// `b_λ(0, t) = ∏_{i>0} (t;t)_{m_i(λ)}`.
pub fn b_lam_hl(lambda: &Partition, t: &Rational) -> Rational {
    let values: BTreeSet<usize> = lambda.parts().iter().copied().collect();
    values.into_iter().map(|i| tfact(t, lambda.multiplicity(i))).fold(Rational::one(), |a, b| a * b)
}

/// All `μ ≺ λ` with `len(μ) ≤ max_len`.
pub(crate) fn interlacing_below(lambda: &Partition, max_len: usize) -> Vec<Partition> {
    let n = lambda.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(lambda: &Partition, i: usize, n: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i > n {
            let p = Partition::new(cur.clone()).expect("interlacing parts decrease");
            if p.len() <= max_len {
                out.push(p);
            }
            return;
        }
        for v in lambda.part(i + 1)..=lambda.part(i) {
            cur.push(v);
            rec(lambda, i + 1, n, max_len, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 1, n, max_len, &mut cur, &mut out);
    out
}

fn branch_eval<W>(lambda: &Partition, xs: &[Rational], weight: &W) -> Rational
where
    W: Fn(&Partition, &Partition) -> Rational,
{
    let mut memo: HashMap<(Partition, usize), Rational> = HashMap::new();
    fn rec<W: Fn(&Partition, &Partition) -> Rational>(
        lambda: &Partition,
        n: usize,
        xs: &[Rational],
        weight: &W,
        memo: &mut HashMap<(Partition, usize), Rational>,
    ) -> Rational {
        if lambda.len() > n {
            return Rational::zero();
        }
        if n == 0 {
            return Rational::one();
        }
        if let Some(v) = memo.get(&(lambda.clone(), n)) {
            return v.clone();
        }
        let mut acc = Rational::zero();
        for mu in interlacing_below(lambda, n - 1) {
            let w = weight(lambda, &mu);
            if w.is_zero() {
                continue;
            }
            let e = (lambda.size() - mu.size()) as i64;
            acc += w * rpow(&xs[n - 1], e) * rec(&mu, n - 1, xs, weight, memo);
        }
        memo.insert((lambda.clone(), n), acc.clone());
        acc
    }
    rec(lambda, xs.len(), xs, weight, &mut memo)
}

/// `P_λ(x; 0, t)` by the branching rule.
pub fn hl_p(lambda: &Partition, xs: &[Rational], t: &Rational) -> Rational {
    branch_eval(lambda, xs, &|l, m| psi_hl_partition(l, m, t))
}

/// `Q_λ(x; 0, t)` by the branching rule.
pub fn hl_q(lambda: &Partition, xs: &[Rational], t: &Rational) -> Rational {
    branch_eval(lambda, xs, &|l, m| phi_hl(l, m, t))
}

/// `P_λ(x; q, 0)` by the branching rule.
pub fn qw_p(lambda: &Partition, xs: &[Rational], q: &Rational) -> Rational {
    branch_eval(lambda, xs, &|l, m| psi_qw_partition(l, m, q))
}

/// `Q_λ(x; q, 0)` by the branching rule.
pub fn qw_q(lambda: &Partition, xs: &[Rational], q: &Rational) -> Rational {
    branch_eval(lambda, xs, &|l, m| phi_qw(l, m, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn s(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    #[test]
    fn psi_examples() {
        let t = rat(1, 3);
        assert_eq!(psi_hl(&s(&[1]), &s(&[]), &t), rat(1, 1));
        assert_eq!(psi_hl(&s(&[1, 1]), &s(&[1]), &t), rat(1, 1));
        assert_eq!(psi_hl(&s(&[2, 0]), &s(&[1]), &t), rat(2, 3));
        assert_eq!(psi_hl(&s(&[2, 0]), &s(&[3]), &t), rat(0, 1));
    }

    #[test]
    fn phi_examples() {
        let t = rat(1, 3);
        assert_eq!(phi_hl(&p(&[1]), &p(&[]), &t), rat(2, 3));
        for c in 1..6 {
            assert_eq!(phi_hl(&p(&[c]), &p(&[]), &t), rat(2, 3));
        }
        assert_eq!(phi_hl(&p(&[1, 1]), &p(&[1]), &t), rat(8, 9));
    }

    #[test]
    fn qw_examples() {
        let q = rat(1, 2);
        assert_eq!(psi_qw(&s(&[4]), &s(&[]), &q), rat(1, 1));
        assert_eq!(psi_qw(&s(&[2, 1]), &s(&[2]), &q), rat(1, 1));
        assert_eq!(psi_qw(&s(&[2, 0]), &s(&[1]), &q), rat(3, 2));
        assert_eq!(b_lam_qw(&p(&[]), &q), rat(1, 1));
        assert_eq!(b_lam_qw(&p(&[1]), &q), rat(2, 1));
    }

    #[test]
    fn b_lam_qw_matches_arm_formula() {
        // at t = 0 only boxes at the bottom of their column contribute 1/(1 - q^{a+1})
        let q = rat(1, 3);
        for lam in [p(&[2, 1]), p(&[3, 3, 1]), p(&[4, 2, 2, 1])] {
            let conj = lam.conjugate();
            let mut expect = rat(1, 1);
            for (i, &row) in lam.parts().iter().enumerate() {
                for j in 0..row {
                    if conj.parts()[j] == i + 1 {
                        let arm = row - j - 1;
                        expect /= rat(1, 1) - num_traits::pow(q.clone(), arm + 1);
                    }
                }
            }
            assert_eq!(b_lam_qw(&lam, &q), expect, "{lam}");
        }
    }

    #[test]
    fn q_equals_b_times_p() {
        let t = rat(1, 3);
        let xs = [rat(2, 5), rat(-1, 7), rat(3, 4)];
        for lam in [p(&[1]), p(&[2, 1]), p(&[1, 1, 1]), p(&[3, 1])] {
            assert_eq!(hl_q(&lam, &xs, &t), b_lam_hl(&lam, &t) * hl_p(&lam, &xs, &t));
            assert_eq!(qw_q(&lam, &xs, &t), b_lam_qw(&lam, &t) * qw_p(&lam, &xs, &t));
        }
        // Q_(c)(a) = (1 - t) a^c for one variable
        let a = rat(5, 2);
        for c in 1..5 {
            let v = hl_q(&p(&[c]), &[a.clone()], &t);
            assert_eq!(v, (rat(1, 1) - &t) * rpow(&a, c as i64));
        }
    }

    #[test]
    fn qw_two_variables() {
        let q = rat(1, 2);
        let (x, y) = (rat(3, 1), rat(5, 1));
        // P_(2) = m_2 + (1 + q) m_11 at t = 0
        let expect = &x * &x + &y * &y + (rat(1, 1) + &q) * &x * &y;
        assert_eq!(qw_p(&p(&[2]), &[x.clone(), y.clone()], &q), expect);
        assert_eq!(qw_p(&p(&[1, 1]), &[x.clone(), y.clone()], &q), &x * &y);
    }
}
