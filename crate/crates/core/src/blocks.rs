//! Good/bad commuting points, per-cycle profiles and the block decomposition
//! of a conjugated cycle `alpha beta_j alpha^{-1}`.
//!
//! A block of `beta` is a string of points that are consecutive in one cycle
//! of `beta`. For every cycle `beta_j` hosting `k >= 1` bad commuting points,
//! the conjugated cycle splits into `k` blocks cut exactly at the images of
//! those bad points, and no two cyclically adjacent blocks merge into a block
//! of `beta`. [`verify_characterization`] re-checks that statement through
//! [`is_block`], which only looks at `beta`'s cycle structure.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{kdist, Permutation, Point};

/// Points where `alpha beta` and `beta alpha` disagree.
pub fn bad_points(alpha: &Permutation, beta: &Permutation) -> Result<BTreeSet<Point>> {
    kdist(alpha, beta)?;
    let a = alpha.as_zero_based();
    let b = beta.as_zero_based();
    Ok((0..a.len()).filter(|&x| a[b[x]] != b[a[x]]).map(|x| x + 1).collect())
}

/// Multiset of per-cycle bad-point counts, stored in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Profile(Vec<usize>);

impl Profile {
    /// Normalizes the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::OutOfRange("profile parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Profile of the pair: bad-point counts of the cycles of `beta` that host any.
pub fn profile(alpha: &Permutation, beta: &Permutation) -> Result<Profile> {
    kdist(alpha, beta)?;
    Ok(profile_unchecked(alpha.as_zero_based(), beta.as_zero_based(), &cycle_ids(beta)))
}

/// 0-based cycle id for every 0-based point.
pub(crate) fn cycle_ids(beta: &Permutation) -> Vec<usize> {
    beta.cycle_decomposition().cycle_index_of_points()
}

pub(crate) fn profile_unchecked(alpha: &[usize], beta: &[usize], ids: &[usize]) -> Profile {
    let mut per_cycle = vec![0usize; alpha.len()];
    for x in 0..alpha.len() {
        if alpha[beta[x]] != beta[alpha[x]] {
            per_cycle[ids[x]] += 1;
        }
    }
    let mut parts: Vec<usize> = per_cycle.into_iter().filter(|&c| c > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Profile(parts)
}

/// Whether `points` is a block of `beta`: distinct points in one cycle with
/// `beta(p_i) = p_{i+1}`, at most as long as that cycle.
pub fn is_block(points: &[Point], beta: &Permutation) -> bool {
    let n = beta.degree();
    if points.is_empty() || points.iter().any(|&p| p == 0 || p > n) {
        return false;
    }
    let distinct: BTreeSet<_> = points.iter().collect();
    if distinct.len() != points.len() {
        return false;
    }
    if points.len() > host_cycle_len(points[0], beta) {
        return false;
    }
    points.windows(2).all(|w| beta.apply(w[0]) == w[1])
}

/// Length of the cycle of `beta` containing `p`.
pub fn host_cycle_len(p: Point, beta: &Permutation) -> usize {
    let mut len = 1;
    let mut q = beta.apply(p);
    while q != p {
        q = beta.apply(q);
        len += 1;
    }
    len
}

/// Whether `points` is a block shorter than its host cycle.
pub fn is_proper_block(points: &[Point], beta: &Permutation) -> bool {
    is_block(points, beta) && points.len() < host_cycle_len(points[0], beta)
}

/// A block decomposition of `alpha beta_j alpha^{-1}` for one cycle `beta_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Index of `beta_j` in `beta`'s canonical cycle decomposition.
    #[serde(skip)]
    pub cycle_index: usize,
    /// `beta_j` written as `B_1 ... B_k`.
    pub cycle: Vec<Point>,
    /// Domain blocks `B_1, ..., B_k`, each ending at a bad point.
    #[serde(skip)]
    pub domain_blocks: Vec<Vec<Point>>,
    /// Image blocks `P_i = alpha(B_i)`.
    pub blocks: Vec<Vec<Point>>,
    /// The last point of each `B_i`.
    pub bad_points: Vec<Point>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Splits `alpha beta_j alpha^{-1}` at the images of the bad points of `beta_j`,
/// where `beta_j` is cycle `cycle_index` of `beta.cycle_decomposition()`.
///
/// Blocks are listed from the one whose bad point has the smallest label.
pub fn block_decomposition(
    alpha: &Permutation,
    beta: &Permutation,
    cycle_index: usize,
) -> Result<BlockDecomposition> {
    let bad = bad_points(alpha, beta)?;
    let decomposition = beta.cycle_decomposition();
    let cycle = decomposition
        .cycles()
        .get(cycle_index)
        .ok_or_else(|| Error::OutOfRange(format!("cycle index {cycle_index}")))?;
    let m = cycle.len();
    let cut_positions: Vec<usize> = (0..m).filter(|&i| bad.contains(&cycle[i])).collect();
    let Some(&first_cut) = cut_positions
        .iter()
        .min_by_key(|&&i| cycle[i])
    else {
        return Err(Error::CycleCommutes(cycle_index));
    };

    // Rotate so the cycle starts right after the smallest bad point; that point
    // then closes the last block, so shift once more to put its block first.
    let start = (first_cut + 1) % m;
    let rotated: Vec<Point> = (0..m).map(|i| cycle[(start + i) % m]).collect();
    let mut domain_blocks: Vec<Vec<Point>> = Vec::new();
    let mut current = Vec::new();
    for &p in &rotated {
        current.push(p);
        if bad.contains(&p) {
            domain_blocks.push(std::mem::take(&mut current));
        }
    }
    debug_assert!(current.is_empty());
    domain_blocks.rotate_right(1);

    let cycle: Vec<Point> = domain_blocks.iter().flatten().copied().collect();
    let blocks: Vec<Vec<Point>> = domain_blocks
        .iter()
        .map(|b| b.iter().map(|&p| alpha.apply(p)).collect())
        .collect();
    let bad_points = domain_blocks.iter().map(|b| *b.last().unwrap()).collect();
    Ok(BlockDecomposition {
        cycle_index,
        cycle,
        domain_blocks,
        blocks,
        bad_points,
    })
}

/// Checks the block characterization of k-commuting for the pair.
///
/// Every cycle of `beta` must be transformed into a cycle of `beta` (no bad
/// points), or split into blocks satisfying: a single block is proper; two or
/// more blocks are pairwise disjoint and no cyclically adjacent pair forms a
/// block. All blocks across cycles must be pairwise disjoint, and the block
/// counts must add up to `kdist(alpha, beta)`.
pub fn verify_characterization(alpha: &Permutation, beta: &Permutation) -> bool {
    let Ok(k) = kdist(alpha, beta) else {
        return false;
    };
    let Ok(bad) = bad_points(alpha, beta) else {
        return false;
    };
    let alpha_inv = alpha.inverse();
    let decomposition = beta.cycle_decomposition();
    let mut total_blocks = 0;
    let mut used: BTreeSet<Point> = BTreeSet::new();

    for (j, cycle) in decomposition.cycles().iter().enumerate() {
        let hosts_bad = cycle.iter().any(|p| bad.contains(p));
        if !hosts_bad {
            // alpha transforms beta_j into an m-cycle of beta.
            let image: Vec<Point> = cycle.iter().map(|&p| alpha.apply(p)).collect();
            if !is_block(&image, beta) || host_cycle_len(image[0], beta) != cycle.len() {
                return false;
            }
            if !image.iter().all(|&p| used.insert(p)) {
                return false;
            }
            continue;
        }
        let Ok(bd) = block_decomposition(alpha, beta, j) else {
            return false;
        };
        // The concatenation must be a cyclic arrangement of alpha beta_j alpha^{-1}.
        let flat: Vec<Point> = bd.blocks.iter().flatten().copied().collect();
        let conj_ok = flat.len() == cycle.len()
            && (0..flat.len()).all(|i| {
                let next = flat[(i + 1) % flat.len()];
                let pre = alpha_inv.apply(flat[i]);
                alpha.apply(beta.apply(pre)) == next
            });
        if !conj_ok {
            return false;
        }
        if !bd.blocks.iter().all(|b| is_block(b, beta)) {
            return false;
        }
        let kj = bd.len();
        if kj == 1 {
            if !is_proper_block(&bd.blocks[0], beta) {
                return false;
            }
        } else {
            for i in 0..kj {
                let mut joined = bd.blocks[i].clone();
                joined.extend_from_slice(&bd.blocks[(i + 1) % kj]);
                if is_block(&joined, beta) {
                    return false;
                }
            }
        }
        // Pairwise disjointness, within and across cycles.
        for b in &bd.blocks {
            if !b.iter().all(|&p| used.insert(p)) {
                return false;
            }
        }
        // Cuts sit exactly at images of bad points.
        let cut_images: BTreeSet<Point> = bd.blocks.iter().map(|b| *b.last().unwrap()).collect();
        let bad_images: BTreeSet<Point> = cycle
            .iter()
            .filter(|p| bad.contains(p))
            .map(|&p| alpha.apply(p))
            .collect();
        if cut_images != bad_images {
            return false;
        }
        total_blocks += kj;
    }
    total_blocks == k && used.len() == beta.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_sn;
    use crate::perm::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, n: usize) -> Permutation {
        parse(text, n).unwrap()
    }

    #[test]
    fn bad_points_examples() {
        let beta = p("(1 2 4 5 3)(7 6)", 7);
        let alpha = p("(2 7)(3 6 4 5)", 7);
        assert_eq!(bad_points(&alpha, &beta).unwrap(), BTreeSet::from([1, 2, 3, 5, 6]));
        assert!(bad_points(&beta, &beta).unwrap().is_empty());
    }

    #[test]
    fn bad_points_never_one_or_two_in_s4() {
        let perms: Vec<_> = enumerate_sn(4, 10).unwrap().collect();
        for a in &perms {
            for b in &perms {
                let n = bad_points(a, b).unwrap().len();
                assert!(n != 1 && n != 2);
                assert_eq!(n, kdist(a, b).unwrap());
            }
        }
    }

    #[test]
    fn profile_examples() {
        let beta = p("(1 2 4 5 3)(7 6)", 7);
        assert!(profile(&beta, &beta).unwrap().is_empty());
        let alpha = p("(2 7)(3 6 4 5)", 7);
        assert_eq!(profile(&alpha, &beta).unwrap().parts(), &[4, 1]);

        let beta = p("(1 2)(3 4 5)(6 7 8)(9 10 11 12)(13 14)", 14);
        let alpha = p("(1 3 9 6)(2 4 10 7)(5 11 8)", 14);
        let prof = profile(&alpha, &beta).unwrap();
        assert_eq!(prof, Profile::new(vec![1, 1, 2, 2]).unwrap());
        assert_eq!(prof.total(), 6);
        assert_eq!(Profile::new(vec![2, 2, 1]).unwrap(), Profile::new(vec![2, 1, 2]).unwrap());
    }

    #[test]
    fn is_block_examples() {
        assert!(is_block(&[3], &p("(1 2)", 3)));
        let pi = p("(1 2 3 4)(5 6 7 8 9)", 9);
        assert!(is_block(&[2, 3, 4, 1], &pi));
        assert!(!is_proper_block(&[2, 3, 4, 1], &pi));
        assert!(is_proper_block(&[1, 2], &pi));
        assert!(!is_block(&[1, 2, 8], &pi));
        assert!(is_block(&[5, 6, 7, 8], &pi));
        // wrapping past a full cycle is rejected
        assert!(!is_block(&[1, 2, 3, 4, 1], &pi));
        assert!(!is_block(&[], &pi));
    }

    #[test]
    fn block_decomposition_examples() {
        let beta = p("(1 2 4 5 3)(7 6)", 7);
        let alpha = p("(2 7)(3 6 4 5)", 7);
        let bd = block_decomposition(&alpha, &beta, 0).unwrap();
        assert_eq!(bd.cycle, vec![1, 2, 4, 5, 3]);
        assert_eq!(bd.domain_blocks, vec![vec![1], vec![2], vec![4, 5], vec![3]]);
        assert_eq!(bd.blocks, vec![vec![1], vec![7], vec![5, 3], vec![6]]);
        assert_eq!(bd.bad_points, vec![1, 2, 5, 3]);

        let bd = block_decomposition(&alpha, &beta, 1).unwrap();
        assert_eq!(bd.cycle, vec![7, 6]);
        assert_eq!(bd.blocks, vec![vec![2, 4]]);
        assert!(is_proper_block(&bd.blocks[0], &beta));

        let json = serde_json::to_string(&bd).unwrap();
        assert_eq!(json, r#"{"cycle":[7,6],"blocks":[[2,4]],"bad_points":[6]}"#);
    }

    #[test]
    fn block_decomposition_rejects_commuting_cycle() {
        let beta = p("(1 2 3)(4 5)", 5);
        let alpha = p("(4 5)", 5);
        assert_eq!(block_decomposition(&alpha, &beta, 0), Err(Error::CycleCommutes(0)));
    }

    #[test]
    fn block_count_matches_bad_points_random_s6() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let a = Permutation::random(6, &mut rng);
            let b = Permutation::random(6, &mut rng);
            let bad = bad_points(&a, &b).unwrap();
            for (j, c) in b.cycle_decomposition().cycles().iter().enumerate() {
                let expected = c.iter().filter(|p| bad.contains(p)).count();
                match block_decomposition(&a, &b, j) {
                    Ok(bd) => assert_eq!(bd.len(), expected),
                    Err(Error::CycleCommutes(_)) => assert_eq!(expected, 0),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn characterization_identity_pair() {
        let id = Permutation::identity(4);
        assert!(verify_characterization(&id, &id));
        assert!(profile(&id, &id).unwrap().is_empty());
    }

    #[test]
    fn characterization_all_pairs_s5() {
        let perms: Vec<_> = enumerate_sn(5, 10).unwrap().collect();
        for a in &perms {
            for b in &perms {
                assert!(verify_characterization(a, b), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn characterization_against_six_cycle() {
        let beta = p("(1 2 3 4 5 6)", 6);
        for a in enumerate_sn(6, 10).unwrap() {
            assert!(verify_characterization(&a, &beta));
        }
    }
}
