//! Exhaustive ground truth over `S_n`.
//!
//! `S_n` is walked in lexicographic order of one-line notation. Work is split
//! into contiguous index ranges, one per worker; partial tallies are merged by
//! addition, so results do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::thread;

use num_bigint::BigUint;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::blocks::{cycle_ids, profile_unchecked, Profile};
use crate::error::{Error, Result};
use crate::perm::{kdist_unchecked, Parity, Permutation};

/// Default exhaustive bound on the degree.
pub const DEFAULT_MAX_N: usize = 8;
/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "KOMMUTE_MAX_BRUTE_N";
/// `n!` must fit the `u64` index space.
const HARD_MAX_N: usize = 20;
pub const F_BRUTE_MAX: usize = 10;
pub const A_BRUTE_MAX: usize = 8;

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Iterator over a contiguous index range of `S_n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct SymmetricGroupRange {
    current: Vec<usize>,
    remaining: u64,
}

impl SymmetricGroupRange {
    /// Permutations with lexicographic rank in `start..end`.
    pub fn new(n: usize, start: u64, end: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > HARD_MAX_N {
            return Err(Error::TooLarge { n, bound: HARD_MAX_N });
        }
        let total = factorial_u64(n);
        let end = end.min(total);
        let start = start.min(end);
        Ok(Self {
            current: unrank(n, start),
            remaining: end - start,
        })
    }

    /// Advances in place and hands the 0-based image table to `f`.
    pub fn for_each_raw(mut self, mut f: impl FnMut(&[usize])) {
        while self.remaining > 0 {
            f(&self.current);
            self.remaining -= 1;
            if self.remaining > 0 {
                next_permutation(&mut self.current);
            }
        }
    }
}

impl Iterator for SymmetricGroupRange {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let out = Permutation::from_zero_based_unchecked(self.current.clone());
        self.remaining -= 1;
        if self.remaining > 0 {
            next_permutation(&mut self.current);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

pub(crate) fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial_u64(i);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order; fails when `n > bound`.
pub fn enumerate_sn(n: usize, bound: usize) -> Result<SymmetricGroupRange> {
    if n > bound.min(HARD_MAX_N) {
        return Err(Error::TooLarge { n, bound: bound.min(HARD_MAX_N) });
    }
    SymmetricGroupRange::new(n, 0, u64::MAX)
}

/// Splits `0..n!` into `parts` contiguous ranges.
pub fn shard_ranges(n: usize, parts: usize) -> Vec<(u64, u64)> {
    let total = factorial_u64(n);
    let parts = parts.max(1) as u64;
    (0..parts)
        .map(|i| (total * i / parts, total * (i + 1) / parts))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Exact distribution `k -> c(k, beta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KDistribution {
    pub n: usize,
    pub beta: Permutation,
    /// `counts[k]` for `k` in `0..=n`.
    pub counts: Vec<BigUint>,
}

impl KDistribution {
    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

impl Serialize for KDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a [BigUint]);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let nonzero: Vec<_> = self
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != BigUint::default())
                    .collect();
                let mut map = s.serialize_map(Some(nonzero.len()))?;
                for (k, c) in nonzero {
                    map.serialize_entry(&k.to_string(), &c.to_string())?;
                }
                map.end()
            }
        }
        let mut st = serializer.serialize_struct("KDistribution", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("beta", &self.beta.to_string())?;
        st.serialize_field("counts", &Counts(&self.counts))?;
        st.end()
    }
}

/// Everything the oracle records in one pass over `S_n` for a fixed `beta`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    /// `by_k[k]`
    pub by_k: Vec<u64>,
    /// Even permutations per `k`.
    pub even_by_k: Vec<u64>,
    pub by_profile: BTreeMap<Profile, u64>,
}

impl Census {
    fn empty(n: usize) -> Self {
        Self {
            by_k: vec![0; n + 1],
            even_by_k: vec![0; n + 1],
            by_profile: BTreeMap::new(),
        }
    }

    fn merge(mut self, other: Census) -> Census {
        for (a, b) in self.by_k.iter_mut().zip(other.by_k) {
            *a += b;
        }
        for (a, b) in self.even_by_k.iter_mut().zip(other.even_by_k) {
            *a += b;
        }
        for (p, c) in other.by_profile {
            *self.by_profile.entry(p).or_default() += c;
        }
        self
    }
}

fn parity_of(images: &[usize]) -> Parity {
    let mut seen: u32 = 0;
    let mut cycles = 0;
    for start in 0..images.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        cycles += 1;
        let mut p = start;
        while seen & (1 << p) == 0 {
            seen |= 1 << p;
            p = images[p];
        }
    }
    if (images.len() - cycles) % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Exhaustive counter with a degree bound and a worker count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    max_n: usize,
    jobs: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            jobs: 1,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads the bound from `KOMMUTE_MAX_BRUTE_N` when set.
    pub fn from_env() -> Self {
        let mut oracle = Self::default();
        if let Some(n) = std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            oracle.max_n = n;
        }
        oracle
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    fn check(&self, n: usize) -> Result<()> {
        let bound = self.max_n.min(HARD_MAX_N);
        if n > bound {
            return Err(Error::TooLarge { n, bound });
        }
        Ok(())
    }

    /// Folds every permutation of `S_n` into per-shard accumulators and merges them.
    pub fn fold<A, M, V, R>(&self, n: usize, make: M, visit: V, merge: R) -> Result<A>
    where
        A: Send,
        M: Fn() -> A + Sync,
        V: Fn(&mut A, &[usize]) + Sync,
        R: Fn(A, A) -> A,
    {
        self.check(n)?;
        let ranges = shard_ranges(n, self.jobs);
        let run = |(start, end): (u64, u64)| -> Result<A> {
            let mut acc = make();
            SymmetricGroupRange::new(n, start, end)?.for_each_raw(|a| visit(&mut acc, a));
            Ok(acc)
        };
        let partials: Vec<Result<A>> = if ranges.len() <= 1 {
            ranges.into_iter().map(run).collect()
        } else {
            thread::scope(|s| {
                let handles: Vec<_> = ranges
                    .into_iter()
                    .map(|r| s.spawn(move || run(r)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("oracle worker panicked"))
                    .collect()
            })
        };
        let mut out = make();
        for p in partials {
            out = merge(out, p?);
        }
        Ok(out)
    }

    /// One pass recording the k-distribution, the even counts and the profile histogram.
    pub fn census(&self, beta: &Permutation) -> Result<Census> {
        let n = beta.degree();
        let b = beta.as_zero_based();
        let ids = cycle_ids(beta);
        self.fold(
            n,
            || Census::empty(n),
            |acc, a| {
                let k = kdist_unchecked(a, b);
                acc.by_k[k] += 1;
                if parity_of(a) == Parity::Even {
                    acc.even_by_k[k] += 1;
                }
                *acc.by_profile.entry(profile_unchecked(a, b, &ids)).or_default() += 1;
            },
            Census::merge,
        )
    }

    pub fn distribution(&self, beta: &Permutation) -> Result<KDistribution> {
        let n = beta.degree();
        let b = beta.as_zero_based();
        let counts = self.fold(
            n,
            || vec![0u64; n + 1],
            |acc, a| acc[kdist_unchecked(a, b)] += 1,
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(p, q)| *p += q);
                x
            },
        )?;
        Ok(KDistribution {
            n,
            beta: beta.clone(),
            counts: counts.into_iter().map(BigUint::from).collect(),
        })
    }

    /// `c(lambda, beta)` for every profile `lambda` of `k`.
    pub fn count_by_profile(&self, beta: &Permutation, k: usize) -> Result<BTreeMap<Profile, BigUint>> {
        Ok(self
            .census(beta)?
            .by_profile
            .into_iter()
            .filter(|(p, _)| p.total() == k)
            .map(|(p, c)| (p, BigUint::from(c)))
            .collect())
    }

    /// `(even, odd)` counts among the permutations that k-commute with `beta`.
    pub fn even_odd_split(&self, beta: &Permutation, k: usize) -> Result<(BigUint, BigUint)> {
        let census = self.census(beta)?;
        let total = census.by_k.get(k).copied().unwrap_or(0);
        let even = census.even_by_k.get(k).copied().unwrap_or(0);
        Ok((BigUint::from(even), BigUint::from(total - even)))
    }

    /// Every `alpha` in `S_n` accepted by `keep`, as a sorted set.
    pub fn collect_where<F>(&self, n: usize, keep: F) -> Result<BTreeSet<Permutation>>
    where
        F: Fn(&[usize]) -> bool + Sync,
    {
        self.fold(
            n,
            BTreeSet::new,
            |acc, a| {
                if keep(a) {
                    acc.insert(Permutation::from_zero_based_unchecked(a.to_vec()));
                }
            },
            |mut x, y| {
                x.extend(y);
                x
            },
        )
    }

    /// `{alpha : kdist(alpha, beta) = k}`.
    pub fn k_commuting(&self, beta: &Permutation, k: usize) -> Result<BTreeSet<Permutation>> {
        let b = beta.as_zero_based();
        self.collect_where(beta.degree(), |a| kdist_unchecked(a, b) == k)
    }

    /// `{alpha : profile(alpha, beta) = [k]}`: all bad points inside one cycle.
    pub fn single_cycle_set(&self, beta: &Permutation, k: usize) -> Result<BTreeSet<Permutation>> {
        let b = beta.as_zero_based();
        let ids = cycle_ids(beta);
        self.collect_where(beta.degree(), |a| {
            kdist_unchecked(a, b) == k && profile_unchecked(a, b, &ids).parts() == [k]
        })
    }
}

/// Number of `k`-cycles `sigma` of `{1..k}` with `sigma(i) != i + 1 mod k`
/// for every `i` (residues taken in `1..=k`), by direct enumeration.
/// `k = 0` counts the empty permutation.
pub fn f_brute(k: usize) -> Result<BigUint> {
    if k > F_BRUTE_MAX {
        return Err(Error::TooLarge { n: k, bound: F_BRUTE_MAX });
    }
    if k == 0 {
        return Ok(BigUint::from(1u32));
    }
    // Every k-cycle is (0 r_1 ... r_{k-1}) for an arrangement r of 1..k-1.
    let mut count = 0u64;
    SymmetricGroupRange::new(k, 0, u64::MAX)?.for_each_raw(|arr| {
        if arr[0] != 0 {
            return;
        }
        let mut sigma = vec![0usize; k];
        for i in 0..k {
            sigma[arr[i]] = arr[(i + 1) % k];
        }
        if (0..k).all(|i| sigma[i] != (i + 1) % k) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Perfect matchings of `2j` points avoiding the `j` couples `{2i-1, 2i}`,
/// by direct enumeration.
pub fn a_brute(j: usize) -> Result<BigUint> {
    if j > A_BRUTE_MAX {
        return Err(Error::TooLarge { n: j, bound: A_BRUTE_MAX });
    }
    fn rec(free: &mut [usize]) -> u64 {
        let Some(&first) = free.first() else {
            return 1;
        };
        let mut total = 0;
        for idx in 1..free.len() {
            let other = free[idx];
            if other / 2 == first / 2 {
                continue;
            }
            let mut rest: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != 0 && i != idx)
                .map(|(_, &p)| p)
                .collect();
            total += rec(&mut rest);
        }
        total
    }
    let mut points: Vec<usize> = (0..2 * j).collect();
    Ok(BigUint::from(rec(&mut points)))
}
