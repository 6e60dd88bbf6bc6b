use num_traits::{One, Zero};
use padic_hl::hallittlewood::{b_lam_hl, hl_p, hl_q, pieri_transition, principal_p};
use padic_hl::harness::partitions_up_to;
use padic_hl::qcore::{rat, rpow};
use padic_hl::{Extent, Partition, Rational};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Symmetrization formula with the normalization making `x^λ` monic.
fn hl_by_symmetrization(lam: &Partition, xs: &[Rational], t: &Rational) -> Rational {
    let n = xs.len();
    let parts: Vec<i64> = (0..n).map(|i| lam.part(i + 1) as i64).collect();
    let mut total = Rational::zero();
    for perm in permutations(n) {
        let y: Vec<&Rational> = perm.iter().map(|&i| &xs[i]).collect();
        let mut term = Rational::one();
        for i in 0..n {
            term *= rpow(y[i], parts[i]);
            for j in i + 1..n {
                term *= (y[i] - t * y[j]) / (y[i] - y[j]);
            }
        }
        total += term;
    }
    let mut v = Rational::one();
    let mut i = 0;
    while i < n {
        let m = (i..n).take_while(|&j| parts[j] == parts[i]).count();
        for j in 1..=m as i64 {
            v *= (Rational::one() - rpow(t, j)) / (Rational::one() - t);
        }
        i += m;
    }
    total / v
}

/// Schur polynomial as a ratio of alternants.
fn schur(lam: &Partition, xs: &[Rational]) -> Rational {
    let n = xs.len();
    let det = |exps: &dyn Fn(usize) -> i64| -> Rational {
        permutations(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                let sign = if inversions % 2 == 0 { Rational::one() } else { -Rational::one() };
                (0..n).fold(sign, |acc, i| acc * rpow(&xs[p[i]], exps(i)))
            })
            .sum()
    };
    det(&|i| lam.part(i + 1) as i64 + (n - 1 - i) as i64) / det(&|i| (n - 1 - i) as i64)
}

#[test]
fn hall_littlewood_matches_symmetrization() {
    let xs = [rat(2, 3), rat(-1, 5), rat(7, 4)];
    for t in [rat(1, 2), rat(1, 3), rat(-2, 7)] {
        for n in 1..=3 {
            for lam in partitions_up_to(6, n) {
                assert_eq!(hl_p(&lam, &xs[..n], &t), hl_by_symmetrization(&lam, &xs[..n], &t), "{:?} n={n}", lam.parts());
            }
        }
    }
}

#[test]
fn hall_littlewood_at_zero_is_schur() {
    let xs = [rat(3, 2), rat(1, 7), rat(-2, 3)];
    for n in 1..=3 {
        for lam in partitions_up_to(6, n) {
            assert_eq!(hl_p(&lam, &xs[..n], &Rational::zero()), schur(&lam, &xs[..n]));
        }
    }
}

#[test]
fn q_is_b_times_p() {
    let xs = [rat(1, 2), rat(2, 5), rat(3, 7)];
    let t = rat(1, 3);
    for lam in partitions_up_to(5, 3) {
        assert_eq!(hl_q(&lam, &xs, &t), b_lam_hl(&lam, &t) * hl_p(&lam, &xs, &t));
    }
}

#[test]
fn principal_specialization_matches_evaluation() {
    let t = rat(1, 2);
    for n in 1..=3usize {
        let xs: Vec<Rational> = (0..n as i64).map(|i| rpow(&t, i)).collect();
        for lam in partitions_up_to(5, n) {
            let p = principal_p(&lam, &Rational::one(), Extent::Finite(n), &t).unwrap();
            assert_eq!(p, hl_by_symmetrization(&lam, &xs, &t));
        }
    }
}

#[test]
fn pieri_rows_sum_to_one() {
    for t in [rat(1, 2), rat(1, 5)] {
        for n in 1..=5usize {
            for mu in partitions_up_to(8, n) {
                let mut total = Rational::zero();
                for i in 0..=mu.len().min(n - 1) {
                    let mut v = mu.parts().to_vec();
                    if i == v.len() {
                        v.push(1);
                    } else {
                        v[i] += 1;
                    }
                    if let Ok(nu) = Partition::new(v) {
                        total += pieri_transition(&mu, &nu, n, &t);
                    }
                }
                assert!(total.is_one(), "n={n} mu={:?}", mu.parts());
            }
        }
    }
}
