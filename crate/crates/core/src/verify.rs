//! Formula-versus-oracle harness: every closed form, structural invariant,
//! enumerator and generating function is checked on small degrees.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::blocks::{profile, verify_characterization, Profile};
use crate::constructor::{generate_fpf, generate_single_cycle};
use crate::error::Error;
use crate::formulas::{self, c4_211, c4_22, c4_31, c4_single, c_fpf_involution, c_lambda_k1, t_from_f};
use crate::oracle::{f_brute, Census, Oracle, F_BRUTE_MAX};
use crate::perm::{CycleType, Permutation};
use crate::series::{a_egf_check, f_egf_check, fpf_table, tkn_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub jobs: usize,
    /// Adds one to `f(3)` before evaluating `T(k, n)`; for exercising the harness.
    pub corrupt_f: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_max: 5,
            jobs: 1,
            corrupt_f: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Accumulates comparisons for one named check, keeping the first failure.
struct Check {
    name: String,
    cases: usize,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            counterexample: None,
        }
    }

    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn error(&mut self, e: Error) {
        self.expect(false, || format!("error: {e}"));
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.counterexample.is_none(),
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

fn f_table(len: usize, corrupt: bool) -> Vec<BigUint> {
    let mut t: Vec<BigUint> = (0..len)
        .map(|k| if k <= F_BRUTE_MAX { f_brute(k).expect("within bound") } else { formulas::f(k) })
        .collect();
    if corrupt && t.len() > 3 {
        t[3] += 1u32;
    }
    t
}

/// Runs every check for degrees up to `opts.n_max`.
pub fn run_verify(opts: &VerifyOptions) -> Report {
    let n_max = opts.n_max.max(1);
    let oracle = Oracle::new().with_max_n(n_max).with_jobs(opts.jobs);
    let ft = f_table(n_max.max(10) + 1, opts.corrupt_f);
    let mut report = Report::default();

    for n in 1..=n_max {
        let reps: Vec<(CycleType, Permutation)> = CycleType::all(n)
            .into_iter()
            .map(|t| {
                let r = t.representative();
                (t, r)
            })
            .collect();
        let mut censuses: Vec<Census> = Vec::with_capacity(reps.len());
        let mut census_check = Check::new(format!("oracle census (n={n})"));
        for (_, beta) in &reps {
            match oracle.census(beta) {
                Ok(c) => censuses.push(c),
                Err(e) => {
                    census_check.error(e);
                    censuses.push(Census::default());
                }
            }
        }
        census_check.cases += reps.len();
        report.checks.push(census_check.finish());

        report.checks.push(closed_forms(n, &reps, &censuses));
        if n >= 2 {
            report.checks.push(n_cycle(n, &oracle, &ft));
        }
        report.checks.push(single_cycle_profiles(n, &reps, &censuses));
        if n <= 7 {
            report.checks.push(c4_components(n, &reps, &censuses));
        }
        report.checks.push(profile_structure(n, &reps, &censuses));
        if n <= 7 {
            report.checks.push(characterization(n, &reps));
        }
        if (3..=6).contains(&n) {
            report.checks.push(single_cycle_enumerator(n, &reps, &oracle));
        }
        if n % 2 == 0 && (4..=6).contains(&n) {
            report.checks.push(fpf_enumerator(n, &oracle));
        }
    }

    report.checks.push(tkn_series(n_max.clamp(1, 10), &ft));
    report.checks.push(fpf_series(n_max.clamp(2, 8)));
    let mut a_check = Check::new("A053871 exponential generating function (order 7)");
    a_check.expect(a_egf_check(7), || "A(x) exp(x) sqrt(1-2x) != 1".into());
    report.checks.push(a_check.finish());
    let mut f_check = Check::new("A000757 exponential generating function (order 9)");
    f_check.expect(f_egf_check(9), || "F(x) != exp(-x)(1 - log(1-x))".into());
    report.checks.push(f_check.finish());
    report
}

fn closed_forms(n: usize, reps: &[(CycleType, Permutation)], censuses: &[Census]) -> CheckResult {
    let mut check = Check::new(format!("closed forms against the oracle (n={n})"));
    let nf = crate::arith::factorial(n);
    for ((t, _), census) in reps.iter().zip(censuses) {
        let total: BigUint = census.by_k.iter().map(|&c| BigUint::from(c)).sum();
        check.expect(total == nf, || format!("beta of type {t}: distribution sums to {total}, not {n}!"));
        for k in 0..=n {
            let brute = BigUint::from(census.by_k.get(k).copied().unwrap_or(0));
            match formulas::count(t, k) {
                Ok(r) => check.expect(r.value == brute, || {
                    format!("type {t}, k={k}: {} gives {}, oracle {brute}", r.provenance, r.value)
                }),
                Err(Error::NoClosedForm { .. }) => {}
                Err(e) => check.error(e),
            }
        }
    }
    check.finish()
}

fn n_cycle(n: usize, oracle: &Oracle, ft: &[BigUint]) -> CheckResult {
    let mut check = Check::new(format!("T(k,n) for the n-cycle against the oracle (n={n})"));
    let beta = CycleType::from_partition(&[n]).expect("valid").representative();
    match oracle.distribution(&beta) {
        Ok(d) => {
            for k in 0..=n {
                let value = t_from_f(k, n, &ft[k]);
                let brute = d.get(k);
                check.expect(value == brute, || format!("T({k},{n}): formula {value}, oracle {brute}"));
            }
        }
        Err(e) => check.error(e),
    }
    check.finish()
}

fn single_cycle_profiles(n: usize, reps: &[(CycleType, Permutation)], censuses: &[Census]) -> CheckResult {
    let mut check = Check::new(format!("single-cycle profile counts (n={n})"));
    for ((t, _), census) in reps.iter().zip(censuses) {
        for k in 3..=n {
            let p = Profile::new(vec![k]).expect("nonzero part");
            let brute = BigUint::from(census.by_profile.get(&p).copied().unwrap_or(0));
            match c_lambda_k1(t, k) {
                Ok(v) => check.expect(v == brute, || format!("type {t}, profile [{k}]: formula {v}, oracle {brute}")),
                Err(e) => check.error(e),
            }
        }
    }
    check.finish()
}

fn c4_components(n: usize, reps: &[(CycleType, Permutation)], censuses: &[Census]) -> CheckResult {
    let mut check = Check::new(format!("profile components of c(4) (n={n})"));
    for ((t, _), census) in reps.iter().zip(censuses) {
        let parts: [(&[usize], BigUint); 4] = [
            (&[4], c4_single(t)),
            (&[3, 1], c4_31(t)),
            (&[2, 2], c4_22(t)),
            (&[2, 1, 1], c4_211(t)),
        ];
        for (shape, value) in parts {
            let p = Profile::new(shape.to_vec()).expect("nonzero parts");
            let brute = BigUint::from(census.by_profile.get(&p).copied().unwrap_or(0));
            check.expect(value == brute, || format!("type {t}, profile {p}: formula {value}, oracle {brute}"));
        }
        let other: u64 = census
            .by_profile
            .iter()
            .filter(|(p, _)| p.total() == 4 && ![&[4][..], &[3, 1], &[2, 2], &[2, 1, 1]].contains(&p.parts()))
            .map(|(_, c)| c)
            .sum();
        check.expect(other == 0, || format!("type {t}: {other} permutations with another profile of 4"));
    }
    check.finish()
}

fn profile_structure(n: usize, reps: &[(CycleType, Permutation)], censuses: &[Census]) -> CheckResult {
    let mut check = Check::new(format!("profile structure, divisibility and parity (n={n})"));
    for ((t, _), census) in reps.iter().zip(censuses) {
        let bound = 2 * t.support_size();
        let z = t.centralizer_order();
        for (p, _) in census.by_profile.iter().filter(|(p, _)| !p.is_empty()) {
            let parts = p.parts();
            check.expect(parts.iter().any(|&x| x >= 2), || format!("type {t}: profile {p} is all ones"));
            check.expect(p.total() <= bound, || format!("type {t}: profile {p} exceeds 2|supp|"));
        }
        for (k, &c) in census.by_k.iter().enumerate() {
            check.expect((BigUint::from(c) % &z).is_zero(), || {
                format!("type {t}, k={k}: count {c} not divisible by centralizer order {z}")
            });
            if !t.is_cdoi() && c > 0 {
                let even = census.even_by_k[k];
                check.expect(2 * even == c, || format!("type {t}, k={k}: {even} even of {c}"));
            }
        }
    }
    check.finish()
}

fn characterization(n: usize, reps: &[(CycleType, Permutation)]) -> CheckResult {
    let mut check = Check::new(format!("block characterization on every alpha (n={n})"));
    for (t, beta) in reps {
        let all = match crate::oracle::enumerate_sn(n, n) {
            Ok(it) => it,
            Err(e) => {
                check.error(e);
                continue;
            }
        };
        for alpha in all {
            check.expect(verify_characterization(&alpha, beta), || format!("alpha = {alpha}, beta of type {t}"));
        }
    }
    check.finish()
}

fn single_cycle_enumerator(n: usize, reps: &[(CycleType, Permutation)], oracle: &Oracle) -> CheckResult {
    let mut check = Check::new(format!("single-cycle constructor against the oracle (n={n})"));
    for (t, beta) in reps {
        for k in 3..=n {
            if t.partition()[0] < k {
                continue;
            }
            let generated = match generate_single_cycle(beta, k) {
                Ok(g) => g,
                Err(e) => {
                    check.error(e);
                    continue;
                }
            };
            let set: BTreeSet<Permutation> = generated.iter().cloned().collect();
            check.expect(set.len() == generated.len(), || {
                format!("type {t}, k={k}: {} choices gave {} permutations", generated.len(), set.len())
            });
            match oracle.single_cycle_set(beta, k) {
                Ok(want) => check.expect(set == want, || {
                    let diff = set.symmetric_difference(&want).next().cloned();
                    format!("type {t}, k={k}: sets differ, e.g. at {}", diff.map(|d| d.to_string()).unwrap_or_default())
                }),
                Err(e) => check.error(e),
            }
        }
    }
    check.finish()
}

fn fpf_enumerator(n: usize, oracle: &Oracle) -> CheckResult {
    let m = n / 2;
    let mut check = Check::new(format!("fixed-point-free involution constructor against the oracle (n={n})"));
    let beta = CycleType::from_partition(&vec![2; m]).expect("valid").representative();
    for j in 0..=m {
        let generated = match generate_fpf(&beta, j) {
            Ok(g) => g,
            Err(e) => {
                check.error(e);
                continue;
            }
        };
        let set: BTreeSet<Permutation> = generated.iter().cloned().collect();
        check.expect(set.len() == generated.len(), || format!("j={j}: duplicates generated"));
        match oracle.k_commuting(&beta, 2 * j) {
            Ok(want) => check.expect(set == want, || format!("j={j}: set differs from the oracle")),
            Err(e) => check.error(e),
        }
        for alpha in set.iter().take(1) {
            if let Ok(p) = profile(alpha, &beta) {
                check.expect(p.total() == 2 * j, || format!("j={j}: {alpha} has profile {p}"));
            }
        }
    }
    check.finish()
}

fn tkn_series(order: usize, ft: &[BigUint]) -> CheckResult {
    let mut check = Check::new(format!("T(k,n) bivariate generating function (order {order})"));
    match tkn_table(order) {
        Ok(table) => {
            for n in 1..=order {
                for k in 0..=n {
                    let want = BigInt::from(t_from_f(k, n, &ft[k]));
                    check.expect(table[n][k] == want, || {
                        format!("n={n}, k={k}: coefficient {}, formula {want}", table[n][k])
                    });
                }
            }
        }
        Err(e) => check.error(e),
    }
    check.finish()
}

fn fpf_series(order: usize) -> CheckResult {
    let mut check = Check::new(format!("fixed-point-free involution generating function (order {order})"));
    match fpf_table(order) {
        Ok(table) => {
            for m in 2..=order {
                for j in 0..=m {
                    match c_fpf_involution(2 * j, m) {
                        Ok(v) => {
                            let want = BigInt::from(v);
                            check.expect(table[m][j] == want, || {
                                format!("m={m}, j={j}: coefficient {}, formula {want}", table[m][j])
                            });
                        }
                        Err(e) => check.error(e),
                    }
                }
            }
        }
        Err(e) => check.error(e),
    }
    check.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = run_verify(&VerifyOptions { n_max: 5, jobs: 2, corrupt_f: false });
        for c in &report.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.counterexample);
        }
    }

    #[test]
    fn corrupted_f_is_caught() {
        let report = run_verify(&VerifyOptions { n_max: 4, jobs: 1, corrupt_f: true });
        assert!(!report.all_passed());
        let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
        assert!(failed.iter().any(|n| n.starts_with("T(k,n)")), "{failed:?}");
        assert!(report
            .failures()
            .any(|c| c.counterexample.as_deref().unwrap_or("").starts_with("T(3,")));
    }
}
