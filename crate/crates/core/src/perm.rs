//! Permutations of `{1, ..., n}` and their cycle structure.
//!
//! Points are 1-based everywhere in the public API; the one-line table is
//! stored 0-based. The product `compose(alpha, beta)` applies `beta` first.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{factorial, pow};
use crate::error::{Error, Result};

/// A point of `[n]`, 1-based.
pub type Point = usize;

/// A bijection of `{1, ..., n}` in one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its one-line notation `p_1 p_2 ... p_n` (1-based).
    pub fn from_one_line(line: &[Point]) -> Result<Self> {
        if line.contains(&0) {
            return Err(Error::NotBijective("point 0 in one-line notation".into()));
        }
        Self::from_zero_based(line.iter().map(|&p| p - 1).collect())
    }

    /// Builds a permutation from a 0-based image table.
    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotBijective(format!("{:?}", images)));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_zero_based_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_zero_based(images.clone()).is_ok());
        Self { images }
    }

    /// Builds a permutation of degree `n` from disjoint cycles (1-based points).
    /// Points not listed are fixed.
    pub fn from_cycles<C: AsRef<[Point]>>(n: usize, cycles: &[C]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 || p > n {
                    return Err(Error::OutOfRange(format!("point {p} not in 1..={n}")));
                }
                if used[p - 1] {
                    return Err(Error::NotBijective(format!("point {p} repeated")));
                }
                used[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self { images })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, p: Point) -> Point {
        self.images[p - 1] + 1
    }

    /// The 0-based image table.
    pub fn as_zero_based(&self) -> &[usize] {
        &self.images
    }

    /// One-line notation, 1-based.
    pub fn one_line(&self) -> Vec<Point> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Self { images: inv }
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            cycles.push(cycle);
        }
        // Scanning starts from the smallest unseen point, so each cycle already
        // begins at its minimum and cycles come out sorted by that minimum.
        CycleDecomposition { n, cycles }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut counts = vec![0; n];
        for c in self.cycle_decomposition().cycles() {
            counts[c.len() - 1] += 1;
        }
        CycleType { counts }
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.cycle_decomposition().len();
        if (self.degree() - cycles) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn support(&self) -> BTreeSet<Point> {
        self.points_where(|i, p| i != p)
    }

    pub fn fixed_points(&self) -> BTreeSet<Point> {
        self.points_where(|i, p| i == p)
    }

    fn points_where(&self, pred: impl Fn(usize, usize) -> bool) -> BTreeSet<Point> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &p)| pred(i, p))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// True when the permutation is a single transposition.
    pub fn is_transposition(&self) -> bool {
        self.support().len() == 2
    }

    pub fn format(&self, style: Style) -> String {
        match style {
            Style::Cycles => {
                let text: String = self
                    .cycle_decomposition()
                    .cycles()
                    .iter()
                    .filter(|c| c.len() > 1)
                    .map(|c| {
                        let inner: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        format!("({})", inner.join(" "))
                    })
                    .collect();
                if text.is_empty() {
                    "()".to_string()
                } else {
                    text
                }
            }
            Style::OneLine => {
                let parts: Vec<String> = self.one_line().iter().map(|p| p.to_string()).collect();
                parts.join(" ")
            }
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Cycles))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in S_{}", self.format(Style::Cycles), self.degree())
    }
}

fn check_degrees(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

/// The product `alpha beta`: first `beta`, then `alpha`.
pub fn compose(alpha: &Permutation, beta: &Permutation) -> Result<Permutation> {
    check_degrees(alpha, beta)?;
    Ok(Permutation {
        images: beta.images.iter().map(|&b| alpha.images[b]).collect(),
    })
}

/// `alpha pi alpha^{-1}`.
pub fn conjugate(alpha: &Permutation, pi: &Permutation) -> Result<Permutation> {
    check_degrees(alpha, pi)?;
    let mut images = vec![0; pi.degree()];
    // alpha(x) -> alpha(pi(x)) for every x.
    for (x, &px) in pi.images.iter().enumerate() {
        images[alpha.images[x]] = alpha.images[px];
    }
    Ok(Permutation { images })
}

/// Number of points on which `pi` and `tau` disagree.
pub fn hamming(pi: &Permutation, tau: &Permutation) -> Result<usize> {
    check_degrees(pi, tau)?;
    Ok(pi
        .images
        .iter()
        .zip(&tau.images)
        .filter(|(a, b)| a != b)
        .count())
}

/// `H(alpha beta, beta alpha)`: the number of bad commuting points.
pub fn kdist(alpha: &Permutation, beta: &Permutation) -> Result<usize> {
    check_degrees(alpha, beta)?;
    Ok(kdist_unchecked(alpha.as_zero_based(), beta.as_zero_based()))
}

#[inline]
pub(crate) fn kdist_unchecked(alpha: &[usize], beta: &[usize]) -> usize {
    alpha
        .iter()
        .zip(beta)
        .filter(|&(&a, &b)| alpha[b] != beta[a])
        .count()
}

/// Parses cycle notation such as `(1 2)(3 4 5)` or `(1,2)`; `()` and the
/// empty string denote the identity of degree `n`.
pub fn parse(text: &str, n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut images: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let err = |position: usize, message: String| Error::Parse { position, message };

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(err(pos, format!("expected '(' but found '{}'", bytes[pos] as char)));
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                return Err(err(pos, "unterminated cycle".into()));
            }
            if bytes[pos] == b')' {
                pos += 1;
                break;
            }
            if !cycle.is_empty() {
                // Separator: whitespace (already skipped) or a single comma.
                if bytes[pos] == b',' {
                    pos += 1;
                    skip_ws(&mut pos);
                } else if !bytes[pos - 1].is_ascii_whitespace() {
                    return Err(err(pos, "expected separator".into()));
                }
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                let found = bytes.get(pos).map(|&b| b as char).unwrap_or(' ');
                return Err(err(pos, format!("expected a point but found '{found}'")));
            }
            let point: usize = text[start..pos]
                .parse()
                .map_err(|_| err(start, "point does not fit".into()))?;
            if point == 0 || point > n {
                return Err(err(start, format!("point {point} not in 1..={n}")));
            }
            if used[point - 1] {
                return Err(err(start, format!("point {point} repeated")));
            }
            used[point - 1] = true;
            cycle.push(point - 1);
        }
        for (i, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(i + 1) % cycle.len()];
        }
    }
    Ok(Permutation { images })
}

/// Parses one-line notation: exactly `n` comma- or space-separated images.
pub fn parse_one_line(text: &str, n: usize) -> Result<Permutation> {
    let mut line = Vec::new();
    let mut offset = 0;
    for token in text.split(|c: char| c == ',' || c.is_ascii_whitespace()) {
        if !token.is_empty() {
            let p: usize = token.parse().map_err(|_| Error::Parse {
                position: offset,
                message: format!("'{token}' is not a point"),
            })?;
            if p == 0 || p > n {
                return Err(Error::Parse {
                    position: offset,
                    message: format!("point {p} not in 1..={n}"),
                });
            }
            line.push(p);
        }
        offset += token.len() + 1;
    }
    if line.len() != n {
        return Err(Error::Parse {
            position: text.len(),
            message: format!("expected {n} images, found {}", line.len()),
        });
    }
    Permutation::from_one_line(&line).map_err(|e| Error::Parse {
        position: 0,
        message: e.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Cycles,
    OneLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Disjoint cycles of a permutation, fixed points included as 1-cycles.
/// Each cycle starts at its smallest point and cycles are sorted by that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<Point>>,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<Point>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// For every point (0-based slot), the index of the cycle containing it.
    pub fn cycle_index_of_points(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (j, c) in self.cycles.iter().enumerate() {
            for &p in c {
                idx[p - 1] = j;
            }
        }
        idx
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.cycles).expect("decomposition is a partition")
    }
}

/// Cycle census `(c_1, ..., c_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    /// `counts[i - 1]` is the number of `i`-cycles; `sum i c_i` must equal `counts.len()`.
    pub fn from_counts(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let total: usize = counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
        if total != n {
            return Err(Error::OutOfRange(format!(
                "sum of i*c_i is {total}, expected {n}"
            )));
        }
        Ok(Self { counts })
    }

    /// Builds the type from cycle lengths, e.g. `[3, 2]` for `(1 2 3)(4 5)`.
    pub fn from_partition(lengths: &[usize]) -> Result<Self> {
        let n: usize = lengths.iter().sum();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if lengths.contains(&0) {
            return Err(Error::OutOfRange("cycle length 0".into()));
        }
        let mut counts = vec![0; n];
        for &l in lengths {
            counts[l - 1] += 1;
        }
        Ok(Self { counts })
    }

    /// All cycle types of `S_n`, in reverse lexicographic order of their partitions.
    pub fn all(n: usize) -> Vec<CycleType> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut parts = Vec::new();
        rec(n, n, &mut Vec::new(), &mut parts);
        parts
            .iter()
            .map(|p| Self::from_partition(p).expect("valid partition"))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `c_len`; zero outside `1..=n`.
    pub fn count(&self, len: usize) -> usize {
        if len == 0 {
            0
        } else {
            self.counts.get(len - 1).copied().unwrap_or(0)
        }
    }

    /// Cycle lengths in decreasing order.
    pub fn partition(&self) -> Vec<usize> {
        let mut parts = Vec::new();
        for len in (1..=self.degree()).rev() {
            parts.extend(std::iter::repeat_n(len, self.count(len)));
        }
        parts
    }

    /// Representative with cycles on consecutive points, longest first.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for len in self.partition() {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        Permutation::from_cycles(self.degree(), &cycles).expect("consecutive layout")
    }

    /// `|C_{S_n}(beta)| = prod i^{c_i} c_i!`.
    pub fn centralizer_order(&self) -> BigUint {
        self.counts
            .iter()
            .enumerate()
            .fold(BigUint::one(), |acc, (i, &c)| acc * pow(i + 1, c) * factorial(c))
    }

    /// Cycle type made of distinct odd lengths.
    pub fn is_cdoi(&self) -> bool {
        self.counts.iter().enumerate().all(|(i, &c)| {
            let len = i + 1;
            if len % 2 == 0 {
                c == 0
            } else {
                c <= 1
            }
        })
    }

    pub fn support_size(&self) -> usize {
        self.degree() - self.count(1)
    }

    pub fn is_identity(&self) -> bool {
        self.count(1) == self.degree()
    }

    pub fn is_transposition(&self) -> bool {
        self.degree() >= 2 && self.count(2) == 1 && self.count(1) == self.degree() - 2
    }

    /// Fixed-point-free involution on `2m` points; returns `m`.
    pub fn fpf_involution_half(&self) -> Option<usize> {
        let n = self.degree();
        (n % 2 == 0 && self.count(2) == n / 2).then_some(n / 2)
    }

    pub fn is_full_cycle(&self) -> bool {
        self.count(self.degree()) == 1
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition().iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Free-function form of [`CycleType::centralizer_order`].
pub fn centralizer_order(t: &CycleType) -> BigUint {
    t.centralizer_order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, n: usize) -> Permutation {
        parse(text, n).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        crate::oracle::enumerate_sn(n, 10).unwrap().collect()
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        assert_eq!(compose(&id, &id).unwrap(), id);
        assert_eq!(compose(&p("(1 2)", 3), &p("(1 2 3)", 3)).unwrap(), p("(2 3)", 3));
        assert_eq!(compose(&p("(1 2 3)", 3), &p("(1 2)", 3)).unwrap(), p("(1 3)", 3));
        assert!(matches!(
            compose(&id, &Permutation::identity(4)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        assert_eq!(p("(1 2)", 3).inverse(), p("(1 2)", 3));
    }

    #[test]
    fn conjugate_examples() {
        let pi = p("(1 2 3)", 3);
        assert_eq!(conjugate(&Permutation::identity(3), &pi).unwrap(), pi);
        assert_eq!(conjugate(&p("(1 2)", 3), &pi).unwrap(), p("(2 1 3)", 3));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = Permutation::random(7, &mut rng);
            let b = Permutation::random(7, &mut rng);
            assert_eq!(conjugate(&a, &b).unwrap().cycle_type(), b.cycle_type());
            let direct = compose(&compose(&a, &b).unwrap(), &a.inverse()).unwrap();
            assert_eq!(conjugate(&a, &b).unwrap(), direct);
        }
    }

    #[test]
    fn hamming_examples() {
        let a = p("(2 3)", 3);
        assert_eq!(hamming(&a, &a).unwrap(), 0);
        assert_eq!(a.one_line(), vec![1, 3, 2]);
        assert_eq!(hamming(&a, &p("(1 3)", 3)).unwrap(), 3);
    }

    #[test]
    fn hamming_two_iff_transposition_quotient_s4() {
        let perms = all_perms(4);
        for a in &perms {
            for b in &perms {
                let q = compose(a, &b.inverse()).unwrap();
                assert_eq!(hamming(a, b).unwrap() == 2, q.is_transposition());
            }
        }
    }

    #[test]
    fn kdist_examples() {
        let beta = p("(1 2 3 4 5)", 5);
        assert_eq!(kdist(&beta, &beta).unwrap(), 0);
        let alpha = p("(1 4)(2 5)", 5);
        assert_eq!(kdist(&alpha, &beta).unwrap(), 3);
        let beta2 = p("(2 3 1 4 5)", 5);
        assert_eq!(kdist(&alpha, &beta2).unwrap(), 5);
        // cross-check against the definition
        let ab = compose(&alpha, &beta2).unwrap();
        let ba = compose(&beta2, &alpha).unwrap();
        assert_eq!(hamming(&ab, &ba).unwrap(), 5);
    }

    #[test]
    fn metric_properties_exhaustive() {
        for n in 1..=5 {
            let perms = all_perms(n);
            for a in &perms {
                for b in &perms {
                    assert_eq!(kdist(a, b).unwrap(), kdist(b, a).unwrap());
                    let h = hamming(a, b).unwrap();
                    assert_ne!(h, 1);
                    assert_eq!(h == 0, a == b);
                    let ab = compose(a, b).unwrap();
                    let parity_ab = ab.parity();
                    let expected = if a.parity() == b.parity() {
                        Parity::Even
                    } else {
                        Parity::Odd
                    };
                    assert_eq!(parity_ab, expected);
                }
                assert!(compose(a, &a.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn cycle_decomposition_examples() {
        let id = Permutation::identity(3).cycle_decomposition();
        assert_eq!(id.cycles(), &[vec![1], vec![2], vec![3]]);
        let pi = Permutation::from_one_line(&[2, 1, 4, 5, 3]).unwrap();
        assert_eq!(pi.cycle_decomposition().cycles(), &[vec![1, 2], vec![3, 4, 5]]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let pi = Permutation::random(9, &mut rng);
            assert_eq!(pi.cycle_decomposition().to_permutation(), pi);
        }
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(4).cycle_type().counts(), &[4, 0, 0, 0]);
        assert_eq!(p("(1 2)(3 4 5)", 5).cycle_type().counts(), &[0, 1, 1, 0, 0]);
        assert_eq!(p("(1 2)(3 4)", 4).cycle_type().counts(), &[0, 2, 0, 0]);
        assert!(CycleType::from_counts(vec![1, 1, 1]).is_err());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(6).parity(), Parity::Even);
        assert_eq!(p("(2 5)", 6).parity(), Parity::Odd);
        assert_eq!(p("(1 4 6)", 6).parity(), Parity::Even);
    }

    #[test]
    fn support_and_fixed_points() {
        assert!(Permutation::identity(5).support().is_empty());
        let t = p("(1 2)", 4);
        assert_eq!(t.support(), BTreeSet::from([1, 2]));
        assert_eq!(t.fixed_points(), BTreeSet::from([3, 4]));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let b = Permutation::random(8, &mut rng);
            assert_eq!(b.support().len() + b.fixed_points().len(), 8);
            assert!(b.support().is_disjoint(&b.fixed_points()));
        }
    }

    #[test]
    fn centralizer_examples() {
        for n in 2..9 {
            let id = CycleType::from_partition(&vec![1; n]).unwrap();
            assert_eq!(id.centralizer_order(), factorial(n));
            let t = Permutation::from_cycles(n, &[[1, 2]]).unwrap().cycle_type();
            assert_eq!(t.centralizer_order(), BigUint::from(2u32) * factorial(n - 2));
            let c = CycleType::from_partition(&[n]).unwrap();
            assert_eq!(c.centralizer_order(), BigUint::from(n));
        }
    }

    #[test]
    fn cdoi_examples() {
        assert!(CycleType::from_counts(vec![1, 0, 1, 0]).unwrap().is_cdoi());
        assert!(!CycleType::from_partition(&[2, 1, 1]).unwrap().is_cdoi());
        assert!(!CycleType::from_counts(vec![2, 0]).unwrap().is_cdoi());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("(1 2)(3 4 5)", 5).one_line(), vec![2, 1, 4, 5, 3]);
        assert_eq!(p("()", 3), Permutation::identity(3));
        assert_eq!(p("", 3), Permutation::identity(3));
        assert_eq!(p("(1,2) (3, 4  5)", 5), p("(1 2)(3 4 5)", 5));
        assert_eq!(parse_one_line("2,1,4,5,3", 5).unwrap(), p("(1 2)(3 4 5)", 5));
        assert_eq!(parse_one_line("2 1 4 5 3", 5).unwrap().format(Style::OneLine), "2 1 4 5 3");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse("(1 2)(3 9)", 5).unwrap_err();
        assert_eq!(e, Error::Parse { position: 8, message: "point 9 not in 1..=5".into() });
        assert!(matches!(parse("(1 2)(2 3)", 5), Err(Error::Parse { position: 6, .. })));
        assert!(matches!(parse("(1 2", 5), Err(Error::Parse { .. })));
        assert!(matches!(parse("1 2", 5), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse("(1 x)", 5), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_one_line("1 2", 3), Err(Error::Parse { .. })));
        assert!(matches!(parse_one_line("1 1 2", 3), Err(Error::Parse { .. })));
    }

    #[test]
    fn all_cycle_types_counts() {
        let expected = [1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &e) in (1..=8).zip(&expected) {
            let types = CycleType::all(n);
            assert_eq!(types.len(), e);
            for t in types {
                assert_eq!(t.representative().cycle_type(), t);
            }
        }
    }
}
