//! Explicit generators: the transition map `psi`, the single-cycle
//! construction and the fixed-point-free involution construction.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::oracle::unrank;
use crate::perm::{Permutation, Point};

/// Canonical cycle notation (largest point first in each cycle, cycles by
/// increasing first point) with the parentheses dropped.
pub fn psi(pi: &Permutation) -> Vec<Point> {
    let mut cycles: Vec<Vec<Point>> = pi
        .cycle_decomposition()
        .cycles()
        .iter()
        .map(|c| {
            let top = (0..c.len()).max_by_key(|&i| c[i]).unwrap();
            let mut c = c.clone();
            c.rotate_left(top);
            c
        })
        .collect();
    cycles.sort_by_key(|c| c[0]);
    cycles.concat()
}

/// Inverse of [`psi`]: every left-to-right maximum opens a new cycle.
pub fn psi_inverse(seq: &[Point]) -> Result<Permutation> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut seen = vec![false; n];
    for &p in seq {
        if p == 0 || p > n || seen[p - 1] {
            return Err(Error::NotBijective(format!("{seq:?} is not an arrangement of 1..={n}")));
        }
        seen[p - 1] = true;
    }
    let mut cycles: Vec<Vec<Point>> = Vec::new();
    let mut best = 0;
    for &p in seq {
        if p > best {
            best = p;
            cycles.push(vec![p]);
        } else {
            cycles.last_mut().unwrap().push(p);
        }
    }
    Permutation::from_cycles(n, &cycles)
}

/// Parameters of one run of the single-cycle construction.
///
/// Cycle indices refer to `beta.cycle_decomposition()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algo1Choice {
    pub source_cycle: usize,
    pub target_cycle: usize,
    pub selected_points: Vec<Point>,
    /// A `k`-cycle on `1..=k` without successors `a -> a + 1 (mod k)`.
    pub tau: Permutation,
    pub domain_start: Point,
    /// Index into the commuting bijections of the remaining cycles.
    pub outer_map: usize,
    /// Selected point closing the long block `P`; `None` means the largest.
    pub block_end: Option<Point>,
}

/// Whether `tau` is a single `k`-cycle with `tau(a) != a + 1 (mod k)`.
pub fn is_admissible_tau(tau: &Permutation) -> bool {
    let k = tau.degree();
    let img = tau.as_zero_based();
    tau.cycle_decomposition().len() == 1 && (0..k).all(|a| img[a] != (a + 1) % k)
}

/// All admissible `tau` for a given `k`, by filtering every `k`-cycle.
pub fn admissible_taus(k: usize) -> Vec<Permutation> {
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let rest: Vec<usize> = (1..k).collect();
    for_each_arrangement(&rest, &mut |order| {
        let mut cycle = vec![1];
        cycle.extend(order.iter().map(|&x| x + 1));
        let tau = Permutation::from_cycles(k, &[cycle]).expect("valid cycle");
        if is_admissible_tau(&tau) {
            out.push(tau);
        }
    });
    out.sort();
    out
}

fn for_each_arrangement(items: &[usize], f: &mut impl FnMut(&[usize])) {
    fn go(pool: &mut Vec<usize>, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if pool.is_empty() {
            f(acc);
            return;
        }
        for i in 0..pool.len() {
            let x = pool.remove(i);
            acc.push(x);
            go(pool, acc, f);
            acc.pop();
            pool.insert(i, x);
        }
    }
    go(&mut items.to_vec(), &mut Vec::new(), f);
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// The bijections from a family of `beta`-cycles onto another family with the
/// same length census that commute with `beta`, indexed in mixed radix.
#[derive(Debug, Clone)]
struct CommutingMaps {
    /// Per length: (length, domain cycles, target cycles).
    groups: Vec<(usize, Vec<usize>, Vec<usize>)>,
    count: usize,
}

impl CommutingMaps {
    fn new(cycles: &[Vec<Point>], domain: &[usize], target: &[usize]) -> Result<Self> {
        let mut groups: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
        for &d in domain {
            let len = cycles[d].len();
            match groups.iter_mut().find(|g| g.0 == len) {
                Some(g) => g.1.push(d),
                None => groups.push((len, vec![d], Vec::new())),
            }
        }
        for &t in target {
            let len = cycles[t].len();
            match groups.iter_mut().find(|g| g.0 == len) {
                Some(g) => g.2.push(t),
                None => return Err(Error::Internal(format!("no domain cycle of length {len}"))),
            }
        }
        groups.sort_by_key(|g| g.0);
        let mut count: usize = 1;
        for (len, d, t) in &groups {
            if d.len() != t.len() {
                return Err(Error::Internal(format!("unbalanced cycles of length {len}")));
            }
            let fact: usize = (1..=d.len()).product();
            let rot = len.checked_pow(d.len() as u32);
            count = rot
                .and_then(|r| r.checked_mul(fact))
                .and_then(|x| x.checked_mul(count))
                .ok_or_else(|| Error::OutOfRange("too many commuting maps to index".into()))?;
        }
        Ok(Self { groups, count })
    }

    fn len(&self) -> usize {
        self.count
    }

    /// Writes the `index`-th map into `images` (0-based).
    fn write(&self, mut index: usize, cycles: &[Vec<Point>], images: &mut [usize]) {
        for (len, domain, target) in &self.groups {
            let c = domain.len();
            let fact: usize = (1..=c).product();
            let order = unrank(c, (index % fact) as u64);
            index /= fact;
            for (i, &d) in domain.iter().enumerate() {
                let r = index % len;
                index /= len;
                let src = &cycles[d];
                let dst = &cycles[target[order[i]]];
                for s in 0..*len {
                    images[src[s] - 1] = dst[(s + r) % len] - 1;
                }
            }
        }
    }
}

fn check_choice(beta: &Permutation, choice: &Algo1Choice) -> Result<usize> {
    let k = choice.selected_points.len();
    if k < 3 {
        return Err(Error::InvalidChoice(format!("k = {k} but the construction needs k >= 3")));
    }
    if choice.tau.degree() != k || !is_admissible_tau(&choice.tau) {
        return Err(Error::InvalidChoice(format!(
            "tau = {} is not a {k}-cycle free of successors",
            choice.tau
        )));
    }
    let dec = beta.cycle_decomposition();
    let cycles = dec.cycles();
    let (Some(src), Some(dst)) = (cycles.get(choice.source_cycle), cycles.get(choice.target_cycle)) else {
        return Err(Error::InvalidChoice("cycle index out of range".into()));
    };
    if src.len() != dst.len() {
        return Err(Error::InvalidChoice(format!(
            "source and target cycles have lengths {} and {}",
            src.len(),
            dst.len()
        )));
    }
    if src.len() < k {
        return Err(Error::InvalidChoice(format!("cycle of length {} is shorter than k = {k}", src.len())));
    }
    let sel: BTreeSet<Point> = choice.selected_points.iter().copied().collect();
    if sel.len() != k || !sel.iter().all(|p| dst.contains(p)) {
        return Err(Error::InvalidChoice("selected points must be distinct points of the target cycle".into()));
    }
    if !src.contains(&choice.domain_start) {
        return Err(Error::InvalidChoice(format!("{} is not in the source cycle", choice.domain_start)));
    }
    if let Some(e) = choice.block_end {
        if !sel.contains(&e) {
            return Err(Error::InvalidChoice(format!("block end {e} is not a selected point")));
        }
    }
    Ok(k)
}

/// Builds the permutation described by `choice`.
pub fn algorithm1(beta: &Permutation, choice: &Algo1Choice) -> Result<Permutation> {
    let k = check_choice(beta, choice)?;
    let dec = beta.cycle_decomposition();
    let cycles = dec.cycles();
    let src = &cycles[choice.source_cycle];
    let dst = &cycles[choice.target_cycle];
    let m = dst.len();

    // Rotate the target cycle so that it ends at the chosen selected
    // point, then cut after every selected point.
    let end = choice
        .block_end
        .unwrap_or_else(|| *choice.selected_points.iter().max().unwrap());
    let at = dst.iter().position(|&p| p == end).unwrap();
    let p_seq: Vec<Point> = (0..m).map(|i| dst[(at + 1 + i) % m]).collect();
    let mut blocks: Vec<&[Point]> = Vec::with_capacity(k);
    let mut from = 0;
    for (i, p) in p_seq.iter().enumerate() {
        if choice.selected_points.contains(p) {
            blocks.push(&p_seq[from..=i]);
            from = i + 1;
        }
    }

    // Lay the source cycle, from its start point, over the reordered blocks.
    let order = psi(&choice.tau);
    let s0 = src.iter().position(|&p| p == choice.domain_start).unwrap();
    let mut images = vec![usize::MAX; beta.degree()];
    let mut offset = 0;
    for &label in &order {
        for &q in blocks[label - 1] {
            images[src[(s0 + offset) % m] - 1] = q - 1;
            offset += 1;
        }
    }

    // Every other cycle goes to a cycle of equal length by a commuting map.
    let rest_src: Vec<usize> = (0..cycles.len()).filter(|&i| i != choice.source_cycle).collect();
    let rest_dst: Vec<usize> = (0..cycles.len()).filter(|&i| i != choice.target_cycle).collect();
    let outer = CommutingMaps::new(cycles, &rest_src, &rest_dst)?;
    if choice.outer_map >= outer.len() {
        return Err(Error::InvalidChoice(format!(
            "outer map {} out of range 0..{}",
            choice.outer_map,
            outer.len()
        )));
    }
    outer.write(choice.outer_map, cycles, &mut images);
    Permutation::from_zero_based(images)
}

/// How the end of the long block `P` is chosen when listing choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockEnd {
    /// Always the largest selected point.
    Largest,
    /// Every selected point in turn.
    Any,
}

/// Every valid choice for `beta` and `k`, in a fixed order.
pub fn algorithm1_choices(beta: &Permutation, k: usize, rule: BlockEnd) -> Result<Vec<Algo1Choice>> {
    if k < 3 {
        return Err(Error::InvalidChoice(format!("k = {k} but the construction needs k >= 3")));
    }
    let dec = beta.cycle_decomposition();
    let cycles = dec.cycles();
    let taus = admissible_taus(k);
    let mut out = Vec::new();
    for (j, src) in cycles.iter().enumerate() {
        let m = src.len();
        if m < k {
            continue;
        }
        for (jp, dst) in cycles.iter().enumerate() {
            if dst.len() != m {
                continue;
            }
            let rest_src: Vec<usize> = (0..cycles.len()).filter(|&i| i != j).collect();
            let rest_dst: Vec<usize> = (0..cycles.len()).filter(|&i| i != jp).collect();
            let outer = CommutingMaps::new(cycles, &rest_src, &rest_dst)?.len();
            for subset in combinations(m, k) {
                let mut selected: Vec<Point> = subset.iter().map(|&i| dst[i]).collect();
                selected.sort();
                let ends: Vec<Option<Point>> = match rule {
                    BlockEnd::Largest => vec![None],
                    BlockEnd::Any => selected.iter().map(|&p| Some(p)).collect(),
                };
                for tau in &taus {
                    for &start in src {
                        for outer_map in 0..outer {
                            for &block_end in &ends {
                                out.push(Algo1Choice {
                                    source_cycle: j,
                                    target_cycle: jp,
                                    selected_points: selected.clone(),
                                    tau: tau.clone(),
                                    domain_start: start,
                                    outer_map,
                                    block_end,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Runs the construction over every canonical choice, keeping duplicates.
pub fn generate_single_cycle(beta: &Permutation, k: usize) -> Result<Vec<Permutation>> {
    generate_single_cycle_with(beta, k, BlockEnd::Largest)
}

pub fn generate_single_cycle_with(beta: &Permutation, k: usize, rule: BlockEnd) -> Result<Vec<Permutation>> {
    algorithm1_choices(beta, k, rule)?
        .iter()
        .map(|c| algorithm1(beta, c))
        .collect()
}

/// `{alpha : kdist(alpha, beta) = k, all bad points in one cycle}`.
pub fn enumerate_single_cycle(beta: &Permutation, k: usize) -> Result<BTreeSet<Permutation>> {
    Ok(generate_single_cycle(beta, k)?.into_iter().collect())
}

/// Perfect matchings of `points` (even length) avoiding the pairs
/// `(points[2i], points[2i+1])`.
fn deranged_matchings(points: &[Point]) -> Vec<Vec<(Point, Point)>> {
    fn go(
        left: &mut Vec<usize>,
        couple: &dyn Fn(usize) -> usize,
        points: &[Point],
        acc: &mut Vec<(Point, Point)>,
        out: &mut Vec<Vec<(Point, Point)>>,
    ) {
        let Some(&first) = left.first() else {
            out.push(acc.clone());
            return;
        };
        left.remove(0);
        for i in 0..left.len() {
            let other = left[i];
            if other == couple(first) {
                continue;
            }
            left.remove(i);
            acc.push((points[first], points[other]));
            go(left, couple, points, acc, out);
            acc.pop();
            left.insert(i, other);
        }
        left.insert(0, first);
    }
    let mut out = Vec::new();
    let mut left: Vec<usize> = (0..points.len()).collect();
    go(&mut left, &|i| i ^ 1, points, &mut Vec::new(), &mut out);
    out
}

/// Runs the fixed-point-free involution construction, keeping duplicates.
pub fn generate_fpf(beta: &Permutation, j: usize) -> Result<Vec<Permutation>> {
    let m = beta
        .cycle_type()
        .fpf_involution_half()
        .ok_or_else(|| Error::InvalidChoice(format!("{beta} is not a fixed-point-free involution")))?;
    if j > m {
        return Err(Error::OutOfRange(format!("j = {j} exceeds m = {m}")));
    }
    let dec = beta.cycle_decomposition();
    let pairs = dec.cycles();
    let mut out = Vec::new();
    for src in combinations(m, j) {
        for dst in combinations(m, j) {
            let rest_src: Vec<usize> = (0..m).filter(|i| !src.contains(i)).collect();
            let rest_dst: Vec<usize> = (0..m).filter(|i| !dst.contains(i)).collect();
            let outer = CommutingMaps::new(pairs, &rest_src, &rest_dst)?;
            let targets: Vec<Point> = dst.iter().flat_map(|&d| pairs[d].iter().copied()).collect();
            for matching in deranged_matchings(&targets) {
                let arrangements: Vec<Vec<usize>> = {
                    let mut v = Vec::new();
                    for_each_arrangement(&(0..j).collect::<Vec<_>>(), &mut |o| v.push(o.to_vec()));
                    v
                };
                for order in &arrangements {
                    for flips in 0..(1usize << j) {
                        let mut base = vec![usize::MAX; 2 * m];
                        for (i, &s) in src.iter().enumerate() {
                            let (mut x, mut y) = matching[order[i]];
                            if flips >> i & 1 == 1 {
                                std::mem::swap(&mut x, &mut y);
                            }
                            base[pairs[s][0] - 1] = x - 1;
                            base[pairs[s][1] - 1] = y - 1;
                        }
                        for idx in 0..outer.len() {
                            let mut images = base.clone();
                            outer.write(idx, pairs, &mut images);
                            out.push(Permutation::from_zero_based(images)?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `{alpha : kdist(alpha, beta) = 2j}` for a fixed-point-free involution `beta`.
pub fn enumerate_fpf(beta: &Permutation, j: usize) -> Result<BTreeSet<Permutation>> {
    Ok(generate_fpf(beta, j)?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{bad_points, profile};
    use crate::formulas::{c_fpf_involution, c_lambda_k1};
    use crate::oracle::Oracle;
    use crate::perm::{kdist, parse};
    use num_bigint::BigUint;

    fn p(s: &str, n: usize) -> Permutation {
        parse(s, n).unwrap()
    }

    #[test]
    fn psi_example() {
        assert_eq!(psi(&p("(4 3 1)(6 5)(7 2)", 7)), vec![4, 3, 1, 6, 5, 7, 2]);
        assert_eq!(psi(&Permutation::identity(5)), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn psi_is_a_bijection_on_s4() {
        let all: Vec<_> = crate::oracle::enumerate_sn(4, 10).unwrap().collect();
        let images: BTreeSet<Vec<Point>> = all.iter().map(psi).collect();
        assert_eq!(images.len(), 24);
        for pi in &all {
            assert_eq!(&psi_inverse(&psi(pi)).unwrap(), pi);
        }
    }

    #[test]
    fn psi_inverse_rejects_non_arrangements() {
        assert!(psi_inverse(&[1, 1, 2]).is_err());
        assert!(psi_inverse(&[]).is_err());
    }

    #[test]
    fn unique_tau_for_k3() {
        let taus = admissible_taus(3);
        assert_eq!(taus, vec![p("(1 3 2)", 3)]);
        for k in 3..8 {
            assert_eq!(BigUint::from(admissible_taus(k).len()), crate::formulas::f(k));
        }
        for tau in admissible_taus(6) {
            let seq = psi(&tau);
            assert_eq!(seq[0], 6);
            assert_eq!(psi_inverse(&seq).unwrap(), tau);
        }
    }

    fn check_post(beta: &Permutation, c: &Algo1Choice, alpha: &Permutation) {
        let k = c.selected_points.len();
        assert_eq!(kdist(alpha, beta).unwrap(), k);
        let inv = alpha.inverse();
        let expect: BTreeSet<Point> = c.selected_points.iter().map(|&q| inv.apply(q)).collect();
        assert_eq!(bad_points(alpha, beta).unwrap(), expect);
        let src = beta.cycle_decomposition().cycles()[c.source_cycle].clone();
        assert!(expect.iter().all(|q| src.contains(q)));
    }

    #[test]
    fn every_output_passes_the_post_condition() {
        for (b, n, ks) in [
            ("(1 2 3 4)", 4, vec![3, 4]),
            ("(1 2 3 4 5 6)", 6, vec![3, 4]),
            ("(1 2 3)(4 5 6)", 6, vec![3]),
        ] {
            let beta = p(b, n);
            for k in ks {
                for c in algorithm1_choices(&beta, k, BlockEnd::Largest).unwrap() {
                    let alpha = algorithm1(&beta, &c).unwrap();
                    check_post(&beta, &c, &alpha);
                }
            }
        }
    }

    #[test]
    fn cross_cycle_choice_moves_the_cycle() {
        let beta = p("(1 2 3 4)(5 6 7 8)", 8);
        let choices = algorithm1_choices(&beta, 3, BlockEnd::Largest).unwrap();
        let cross: Vec<_> = choices.iter().filter(|c| c.source_cycle != c.target_cycle).collect();
        assert!(!cross.is_empty());
        for c in cross {
            let alpha = algorithm1(&beta, c).unwrap();
            let cycles = beta.cycle_decomposition();
            let src: BTreeSet<Point> = cycles.cycles()[c.source_cycle].iter().map(|&q| alpha.apply(q)).collect();
            let dst: BTreeSet<Point> = cycles.cycles()[c.target_cycle].iter().copied().collect();
            assert_eq!(src, dst);
            check_post(&beta, c, &alpha);
        }
    }

    #[test]
    fn invalid_choices_are_rejected() {
        let beta = p("(1 2 3 4)", 4);
        let good = algorithm1_choices(&beta, 3, BlockEnd::Largest).unwrap()[0].clone();
        let mut bad = good.clone();
        bad.tau = p("(1 2 3)", 3);
        assert!(matches!(algorithm1(&beta, &bad), Err(Error::InvalidChoice(_))));
        let beta2 = p("(1 2)(3 4 5)", 5);
        let short = Algo1Choice {
            source_cycle: 0,
            target_cycle: 0,
            selected_points: vec![1, 2, 3],
            tau: p("(1 3 2)", 3),
            domain_start: 1,
            outer_map: 0,
            block_end: None,
        };
        assert!(algorithm1(&beta2, &short).is_err());
        assert!(enumerate_single_cycle(&beta, 2).is_err());
    }

    #[test]
    fn single_cycle_sizes() {
        let six = p("(1 2 3 4 5 6)", 6);
        assert_eq!(enumerate_single_cycle(&six, 3).unwrap().len(), 120);
        let two = p("(1 2 3)(4 5 6)", 6);
        assert_eq!(enumerate_single_cycle(&two, 3).unwrap().len(), 36);
        assert!(enumerate_single_cycle(&p("(1 2)", 4), 3).unwrap().is_empty());
    }

    #[test]
    fn single_cycle_matches_oracle_without_duplicates() {
        let oracle = Oracle::new().with_jobs(2);
        for (b, n) in [("(1 2 3 4 5)", 5), ("(1 2 3)(4 5 6)", 6), ("(1 2 3 4)(5 6)", 6), ("(1 2 3 4 5 6)", 6)] {
            let beta = p(b, n);
            for k in 3..=5 {
                let generated = generate_single_cycle(&beta, k).unwrap();
                let set: BTreeSet<_> = generated.iter().cloned().collect();
                assert_eq!(generated.len(), set.len(), "{b} k={k}");
                assert_eq!(set, oracle.single_cycle_set(&beta, k).unwrap(), "{b} k={k}");
                assert_eq!(BigUint::from(set.len()), c_lambda_k1(&beta.cycle_type(), k).unwrap());
            }
        }
    }

    #[test]
    fn free_block_end_repeats_each_alpha_k_times() {
        let beta = p("(1 2 3 4 5)", 5);
        let k = 3;
        let canonical = enumerate_single_cycle(&beta, k).unwrap();
        let free = generate_single_cycle_with(&beta, k, BlockEnd::Any).unwrap();
        let set: BTreeSet<_> = free.iter().cloned().collect();
        assert_eq!(set, canonical);
        assert_eq!(free.len(), k * canonical.len());
        for alpha in &set {
            assert_eq!(free.iter().filter(|a| *a == alpha).count(), k);
        }
    }

    #[test]
    fn fpf_examples() {
        let beta = p("(1 2)(3 4)", 4);
        let two = enumerate_fpf(&beta, 2).unwrap();
        assert_eq!(two.len(), 16);
        assert_eq!(two, Oracle::new().k_commuting(&beta, 4).unwrap());
        assert_eq!(enumerate_fpf(&beta, 0).unwrap().len(), 8);
        assert!(enumerate_fpf(&beta, 1).unwrap().is_empty());
        assert!(enumerate_fpf(&p("(1 2 3)", 4), 1).is_err());
    }

    #[test]
    fn fpf_matches_oracle() {
        let oracle = Oracle::new().with_jobs(2);
        for (b, n, m) in [("(1 2)(3 4)", 4, 2), ("(1 2)(3 4)(5 6)", 6, 3)] {
            let beta = p(b, n);
            for j in 0..=m {
                let generated = generate_fpf(&beta, j).unwrap();
                let set: BTreeSet<_> = generated.iter().cloned().collect();
                assert_eq!(generated.len(), set.len());
                assert_eq!(set, oracle.k_commuting(&beta, 2 * j).unwrap());
                assert_eq!(BigUint::from(set.len()), c_fpf_involution(2 * j, m).unwrap());
                for alpha in &set {
                    if j > 0 {
                        assert_eq!(profile(alpha, &beta).unwrap().total(), 2 * j);
                    }
                }
            }
        }
    }
}
