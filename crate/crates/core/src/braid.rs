//! Braid words and their closures.
//!
//! A letter `i > 0` is the positive Artin generator `σ_i`, `-i` its inverse.
//! Strand positions are numbered `1..=strands`; `σ_i` crosses positions `i`
//! and `i + 1`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("letter 0 is not a generator")]
    ZeroLetter,
    #[error("letter {letter} needs more than {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("cannot parse {0:?} as a braid letter")]
    BadToken(String),
    #[error("empty word needs an explicit strand count")]
    EmptyWithoutStrands,
    #[error("strand count must be positive")]
    ZeroStrands,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("component id {0} out of range")]
    ComponentOutOfRange(usize),
    #[error("linking number needs two distinct components")]
    SameComponent,
    #[error("word contains the negative letter {0}")]
    NegativeLetter(i32),
    #[error("family {family:?} is undefined for n = {n}")]
    FamilyRange { family: Family, n: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::ZeroStrands);
        }
        for &l in &letters {
            if l == 0 {
                return Err(BraidError::ZeroLetter);
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub(crate) fn new_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters
            .iter()
            .all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        BraidWord { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord::new_unchecked(self.strands, letters))
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord::new_unchecked(self.strands, self.letters.iter().rev().map(|l| -l).collect())
    }

    /// `by · self · by⁻¹`.
    pub fn conjugate(&self, by: &BraidWord) -> Result<BraidWord, BraidError> {
        by.compose(self)?.compose(&by.inverse())
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord::new_unchecked(self.strands, letters)
    }

    /// Cancel adjacent `σ_i σ_i⁻¹` pairs. Never applied implicitly.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord::new_unchecked(self.strands, out)
    }

    /// Same letters on more strands.
    pub fn with_strands(&self, strands: usize) -> Result<BraidWord, BraidError> {
        BraidWord::new(strands, self.letters.clone())
    }

    /// `perm[i]` is the final position (0-based) of the strand starting at
    /// position `i` (0-based).
    pub(crate) fn permutation0(&self) -> Vec<usize> {
        // where[p] = starting position of the strand currently at p
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// 1-based permutation: entry `i - 1` is the end position of the strand
    /// that starts at position `i`.
    pub fn permutation(&self) -> Vec<usize> {
        self.permutation0().into_iter().map(|p| p + 1).collect()
    }

    /// Components of the closure as sorted lists of 0-based starting
    /// positions, ordered by their smallest position.
    pub(crate) fn components0(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation0();
        let mut seen = vec![false; self.strands];
        let mut comps = Vec::new();
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                comp.push(p);
                p = perm[p];
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Components as 1-based strand positions; component `k` is the `k`-th
    /// entry, ordered by smallest position.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components0()
            .into_iter()
            .map(|c| c.into_iter().map(|p| p + 1).collect())
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.components0().len()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Component id (into [`BraidWord::components`]) of every starting position.
    pub(crate) fn component_labels(&self) -> (Vec<usize>, usize) {
        let comps = self.components0();
        let mut label = vec![0; self.strands];
        for (k, c) in comps.iter().enumerate() {
            for &p in c {
                label[p] = k;
            }
        }
        (label, comps.len())
    }

    /// For each letter, the component ids of the strands it crosses.
    pub(crate) fn crossing_components(&self) -> Vec<(usize, usize)> {
        let (label, _) = self.component_labels();
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut out = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            out.push((label[at[i]], label[at[i + 1]]));
            at.swap(i, i + 1);
        }
        out
    }

    pub fn closure_stats(&self) -> ClosureStats {
        ClosureStats {
            strands: self.strands,
            components: self.component_count(),
            writhe: self.writhe(),
            exponent_sum: self.writhe(),
            crossings: self.letters.len(),
            permutation: self.permutation(),
        }
    }

    /// Linking number between components `c1` and `c2` of the closure.
    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64, BraidError> {
        let n = self.component_count();
        for c in [c1, c2] {
            if c >= n {
                return Err(BraidError::ComponentOutOfRange(c));
            }
        }
        if c1 == c2 {
            return Err(BraidError::SameComponent);
        }
        let twice: i64 = self
            .crossing_components()
            .into_iter()
            .zip(&self.letters)
            .filter(|((a, b), _)| (*a == c1 && *b == c2) || (*a == c2 && *b == c1))
            .map(|(_, l)| l.signum() as i64)
            .sum();
        Ok(twice / 2)
    }

    /// Sum of all pairwise linking numbers.
    pub fn total_linking(&self) -> i64 {
        let twice: i64 = self
            .crossing_components()
            .into_iter()
            .zip(&self.letters)
            .filter(|((a, b), _)| a != b)
            .map(|(_, l)| l.signum() as i64)
            .sum();
        twice / 2
    }

    /// Sub-braid on the given 0-based starting positions: crossings with
    /// other strands are dropped and the survivors renumbered.
    pub(crate) fn restrict0(&self, keep: &[usize]) -> BraidWord {
        let mut kept = vec![false; self.strands];
        for &p in keep {
            kept[p] = true;
        }
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut letters = Vec::new();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            if kept[at[i]] && kept[at[i + 1]] {
                let rank = (0..i).filter(|&q| kept[at[q]]).count() as i32;
                letters.push(l.signum() * (rank + 1));
            }
            at.swap(i, i + 1);
        }
        BraidWord::new_unchecked(keep.len().max(1), letters)
    }

    /// Sub-braid carrying the closure component with the given id.
    pub fn component_braid(&self, component: usize) -> Result<BraidWord, BraidError> {
        let comps = self.components0();
        let c = comps
            .get(component)
            .ok_or(BraidError::ComponentOutOfRange(component))?;
        Ok(self.restrict0(c))
    }

    /// Euler characteristic `strands - crossings` of the canonical Seifert
    /// surface of a positive braid closure.
    pub fn positive_braid_euler(&self) -> Result<i64, BraidError> {
        if let Some(&l) = self.letters.iter().find(|&&l| l < 0) {
            return Err(BraidError::NegativeLetter(l));
        }
        Ok(self.strands as i64 - self.letters.len() as i64)
    }

    /// Letters separated by single spaces, without the strand prefix.
    pub fn letters_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{l}");
        }
        s
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={}", self.strands)?;
        if !self.letters.is_empty() {
            write!(f, " {}", self.letters_text())?;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse signed integers separated by whitespace or commas, with an optional
/// leading `strands=N` token.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord, BraidError> {
    let mut declared = None;
    let mut letters = Vec::new();
    for tok in text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        if let Some(rest) = tok.strip_prefix("strands=") {
            let n: usize = rest
                .parse()
                .map_err(|_| BraidError::BadToken(tok.into()))?;
            declared = Some(n);
            continue;
        }
        let l: i32 = tok.parse().map_err(|_| BraidError::BadToken(tok.into()))?;
        if l == 0 {
            return Err(BraidError::ZeroLetter);
        }
        letters.push(l);
    }
    let strands = match (strands, declared) {
        (Some(a), Some(b)) if a != b => return Err(BraidError::StrandMismatch(a, b)),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => match letters.iter().map(|l| l.unsigned_abs() as usize).max() {
            Some(m) => m + 1,
            None => return Err(BraidError::EmptyWithoutStrands),
        },
    };
    BraidWord::new(strands, letters)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureStats {
    pub strands: usize,
    pub components: usize,
    pub writhe: i64,
    pub exponent_sum: i64,
    pub crossings: usize,
    /// 1-based image of each starting position.
    pub permutation: Vec<usize>,
}

/// Positive word for the Garside half twist `Δ` on `strands` strands.
pub fn half_twist(strands: usize) -> BraidWord {
    let mut letters = Vec::with_capacity(strands * strands.saturating_sub(1) / 2);
    for k in 1..strands as i32 {
        letters.extend((1..=k).rev());
    }
    BraidWord::new_unchecked(strands.max(1), letters)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `X_n`: the positive crossing of two parallel bundles of `n` strands.
    X,
    /// `β_n = X_n³ · [-1..-(n-1), n..1, 1..n]`, closing to `K_n`.
    Beta,
    /// `β'_n = [n..1, 1..n] · X_n³ · [-1..-(n-1)]`, conjugate to `β_n`.
    BetaConjugated,
    /// `X_n³ · [1..n-1, n..1, 1..n]`, the positive braid `K_n⁺`.
    KnPlus,
    /// `X_k³ · [1..k-1]`, a positive braid for a cable of the trefoil.
    Cable,
    /// `K_n`: `σ_1⁵` for `n = 1`, otherwise `β_n`.
    Kn,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Beta => "beta",
            Family::BetaConjugated => "beta-conjugated",
            Family::KnPlus => "kn-plus",
            Family::Cable => "cable",
            Family::Kn => "kn",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Some(match s {
            "x" | "X" => Family::X,
            "beta" => Family::Beta,
            "beta-conjugated" | "beta_conjugated" => Family::BetaConjugated,
            "kn-plus" | "kn_plus" => Family::KnPlus,
            "cable" => Family::Cable,
            "kn" => Family::Kn,
            _ => return None,
        })
    }
}

fn x_letters(n: usize) -> Vec<i32> {
    let n = n as i32;
    let mut letters = Vec::with_capacity((n * n) as usize);
    for i in 1..=n {
        letters.extend((i..=n + i - 1).rev());
    }
    letters
}

fn descending(from: i32) -> impl Iterator<Item = i32> {
    (1..=from).rev()
}

pub fn family(kind: Family, n: usize) -> Result<BraidWord, BraidError> {
    let min = match kind {
        Family::X | Family::Cable | Family::Kn => 1,
        Family::Beta | Family::BetaConjugated | Family::KnPlus => 2,
    };
    if n < min {
        return Err(BraidError::FamilyRange { family: kind, n });
    }
    let strands = 2 * n;
    let x = x_letters(n);
    let x3: Vec<i32> = x.iter().chain(&x).chain(&x).copied().collect();
    let m = n as i32;
    let letters: Vec<i32> = match kind {
        Family::X => x,
        Family::Beta => x3
            .into_iter()
            .chain((1..m).map(|i| -i))
            .chain(descending(m))
            .chain(1..=m)
            .collect(),
        Family::BetaConjugated => descending(m)
            .chain(1..=m)
            .chain(x3)
            .chain((1..m).map(|i| -i))
            .collect(),
        Family::KnPlus => x3
            .into_iter()
            .chain(1..m)
            .chain(descending(m))
            .chain(1..=m)
            .collect(),
        Family::Cable => x3.into_iter().chain(1..m).collect(),
        Family::Kn => {
            if n == 1 {
                return Ok(BraidWord::new_unchecked(2, vec![1; 5]));
            }
            return family(Family::Beta, n);
        }
    };
    Ok(BraidWord::new_unchecked(strands, letters))
}

/// `X_n` read along anti-diagonals of its crossing grid. Equal to
/// [`family`]`(Family::X, n)` as a braid; letters within a diagonal commute.
pub fn x_antidiagonal(n: usize) -> BraidWord {
    let n = n.max(1) as i32;
    let mut letters = Vec::new();
    for d in 1..2 * n {
        let (lo, hi) = if d <= n {
            (n - d + 1, n + d - 1)
        } else {
            (d - n + 1, 3 * n - d - 1)
        };
        let mut run: Vec<i32> = (lo..=hi).step_by(2).collect();
        if d > n {
            run.reverse();
        }
        letters.extend(run);
    }
    BraidWord::new_unchecked(2 * n as usize, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> BraidWord {
        parse_braid(s, None).unwrap()
    }

    #[test]
    fn parse_examples() {
        let x2 = parse_braid("2 1 3 2", Some(4)).unwrap();
        assert_eq!(x2.letters(), &[2, 1, 3, 2]);
        assert_eq!(x2.strands(), 4);
        let id = parse_braid("", Some(1)).unwrap();
        assert!(id.is_empty());
        assert_eq!(id.component_count(), 1);
        assert_eq!(parse_braid("1 -1", Some(2)).unwrap().len(), 2);
        assert_eq!(parse_braid("1,-2, 3", None).unwrap().strands(), 4);
        assert_eq!(parse_braid("strands=5 1 2", None).unwrap().strands(), 5);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_braid("1 0 2", None), Err(BraidError::ZeroLetter));
        assert!(matches!(
            parse_braid("3", Some(3)),
            Err(BraidError::LetterOutOfRange { letter: 3, strands: 3 })
        ));
        assert_eq!(parse_braid("  ", None), Err(BraidError::EmptyWithoutStrands));
        assert!(matches!(parse_braid("1 x", None), Err(BraidError::BadToken(_))));
        assert_eq!(
            parse_braid("strands=3 1", Some(4)),
            Err(BraidError::StrandMismatch(4, 3))
        );
    }

    #[test]
    fn display_round_trips() {
        let b = family(Family::Beta, 2).unwrap();
        assert_eq!(parse_braid(&b.to_string(), None).unwrap(), b);
        let id = BraidWord::identity(3);
        assert_eq!(parse_braid(&id.to_string(), None).unwrap(), id);
    }

    #[test]
    fn group_ops() {
        assert_eq!(w("1 2").inverse().letters(), &[-2, -1]);
        let x2 = family(Family::X, 2).unwrap();
        assert!(x2.compose(&x2.inverse()).unwrap().free_reduce().is_empty());
        let b2 = family(Family::Beta, 2).unwrap();
        assert_eq!(b2.conjugate(&x2).unwrap().len(), 25);
        assert_eq!(
            w("1").compose(&BraidWord::identity(3)),
            Err(BraidError::StrandMismatch(2, 3))
        );
    }

    #[test]
    fn closure_examples() {
        let b2 = family(Family::Beta, 2).unwrap();
        let s = b2.closure_stats();
        assert_eq!((s.components, s.writhe, s.crossings), (1, 15, 17));
        let hopf = w("1 1").closure_stats();
        assert_eq!((hopf.components, hopf.writhe), (2, 2));
        let id = BraidWord::identity(3).closure_stats();
        assert_eq!((id.components, id.writhe), (3, 0));
        assert_eq!(id.permutation, vec![1, 2, 3]);
    }

    #[test]
    fn linking_numbers() {
        assert_eq!(w("1 1").linking_number(0, 1), Ok(1));
        assert_eq!(w("-1 -1").linking_number(0, 1), Ok(-1));
        assert_eq!(w("1 1 1 1").linking_number(1, 0), Ok(2));
        assert_eq!(w("1 1").linking_number(0, 0), Err(BraidError::SameComponent));
        assert_eq!(w("1 1").linking_number(0, 2), Err(BraidError::ComponentOutOfRange(2)));
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(w("1 1 1").positive_braid_euler(), Ok(-1));
        assert_eq!(BraidWord::identity(1).positive_braid_euler(), Ok(1));
        let c2 = family(Family::Cable, 2).unwrap();
        assert_eq!(c2.len(), 13);
        assert_eq!(c2.positive_braid_euler(), Ok(-9));
        assert_eq!(w("1 -2").positive_braid_euler(), Err(BraidError::NegativeLetter(-2)));
    }

    #[test]
    fn half_twists() {
        assert_eq!(half_twist(2).letters(), &[1]);
        assert!(half_twist(1).is_empty());
        let d4 = half_twist(4);
        assert_eq!(d4.len(), 6);
        assert!(d4.is_positive());
        assert_eq!(d4.permutation(), vec![4, 3, 2, 1]);
    }

    #[test]
    fn family_examples() {
        assert_eq!(family(Family::X, 2).unwrap().letters(), &[2, 1, 3, 2]);
        let b2 = family(Family::Beta, 2).unwrap();
        let mut want: Vec<i32> = [2, 1, 3, 2].repeat(3);
        want.extend([-1, 2, 1, 1, 2]);
        assert_eq!(b2.letters(), want.as_slice());
        let k1 = family(Family::Kn, 1).unwrap();
        assert_eq!((k1.strands(), k1.letters()), (2, &[1, 1, 1, 1, 1][..]));
        assert!(family(Family::Beta, 1).is_err());
        assert!(family(Family::X, 0).is_err());
    }

    #[test]
    fn family_sizes() {
        for n in 1..=30 {
            assert_eq!(family(Family::X, n).unwrap().len(), n * n);
        }
        for n in 2..=20 {
            let b = family(Family::Beta, n).unwrap();
            assert_eq!(b.len(), 3 * n * n + 3 * n - 1);
            let s = b.closure_stats();
            assert_eq!(s.components, 1, "n = {n}");
            assert_eq!(s.writhe, (3 * n * n + n + 1) as i64);
            let p = family(Family::KnPlus, n).unwrap();
            assert!(p.is_positive());
            assert_eq!(p.len(), 3 * n * n + 3 * n - 1);
            assert_eq!(p.component_count(), 1);
            assert_eq!(family(Family::BetaConjugated, n).unwrap().component_count(), 1);
        }
    }

    #[test]
    fn antidiagonal_reading_matches_permutation() {
        assert_eq!(x_antidiagonal(2).letters(), &[2, 1, 3, 2]);
        for n in 1..=8 {
            let a = x_antidiagonal(n);
            let b = family(Family::X, n).unwrap();
            assert_eq!(a.len(), b.len());
            assert_eq!(a.permutation(), b.permutation());
        }
    }

    #[test]
    fn restriction_and_components() {
        // Hopf link with a third, unlinked strand
        let b = w("1 1 2 -2");
        let comps = b.components();
        assert_eq!(comps, vec![vec![1], vec![2], vec![3]]);
        let b = parse_braid("1 1 2 2 2", Some(3)).unwrap();
        assert_eq!(b.components(), vec![vec![1], vec![2, 3]]);
        let k = b.component_braid(1).unwrap();
        assert_eq!((k.strands(), k.letters()), (2, &[1, 1, 1][..]));
        assert_eq!(b.linking_number(0, 1), Ok(1));
    }
}
