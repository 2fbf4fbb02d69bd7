//! Permutations of `{1, …, k}` in one-line form.
//!
//! A permutation `τ ∈ S_k` doubles as the multilinear monomial
//! `x_τ = x_{τ(1)} ⋯ x_{τ(k)}`. Composition is `(a ∘ b)(t) = a(b(t))`, so that
//! substituting `x_t ↦ x_{a(t)}` into `x_b` gives `x_{a∘b}` and permuting the
//! factors of `x_b` by `c` gives `x_{b∘c}`.
//!
//! All public indices are 1-based; images are stored 0-based internally.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest supported permutation size.
pub const MAX_SIZE: usize = u8::MAX as usize;

type Images = SmallVec<[u8; 16]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Images,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        assert!(k <= MAX_SIZE, "permutation size {k} exceeds {MAX_SIZE}");
        Permutation {
            images: (0..k).map(|t| t as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let k = images.len();
        if k == 0 {
            return Err(Error::InvalidInput(
                "permutation must have size at least 1".into(),
            ));
        }
        if k > MAX_SIZE {
            return Err(Error::OutOfRange {
                what: "permutation size",
                value: k,
                range: format!("1..={MAX_SIZE}"),
            });
        }
        let mut seen = vec![false; k];
        let mut out = Images::with_capacity(k);
        for (pos, &img) in images.iter().enumerate() {
            if img == 0 || img > k {
                return Err(Error::parse(
                    format!("image {img} out of range 1..={k}"),
                    pos + 1,
                ));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::parse(format!("repeated image {img}"), pos + 1));
            }
            out.push((img - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// 0-based images; the caller guarantees a bijection on `0..len`.
    pub(crate) fn from_zero_based_unchecked(images: impl IntoIterator<Item = u8>) -> Self {
        let p = Permutation {
            images: images.into_iter().collect(),
        };
        debug_assert!(p.is_valid());
        p
    }

    fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images
            .iter()
            .all(|&i| (i as usize) < seen.len() && !std::mem::replace(&mut seen[i as usize], true))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `τ(t)` for 1-based `t`.
    pub fn apply(&self, t: usize) -> usize {
        self.images[t - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn image0(&self, t: usize) -> usize {
        self.images[t] as usize
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// 1-based one-line images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(t, &i)| t == i as usize)
    }

    /// `self ∘ other`, i.e. `t ↦ self(other(t))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.size(), other.size());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&t| self.images[t as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv: Images = smallvec::smallvec![0; self.size()];
        for (t, &i) in self.images.iter().enumerate() {
            inv[i as usize] = t as u8;
        }
        Permutation { images: inv }
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        let k = self.size();
        let mut seen = vec![false; k];
        let mut transpositions = 0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                t = self.images[t] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1u64, |acc, c| {
            acc / gcd(acc, c.len() as u64) * c.len() as u64
        })
    }

    /// Non-trivial cycles, each starting at its smallest letter, ordered by
    /// that letter. 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.size();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                cycle.push(t + 1);
                t = self.images[t] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Extends to size `k ≥ self.size()` by fixing the new letters.
    pub fn extended(&self, k: usize) -> Permutation {
        assert!(k >= self.size() && k <= MAX_SIZE);
        let mut images = self.images.clone();
        images.extend((self.size()..k).map(|t| t as u8));
        Permutation { images }
    }

    /// Fixes a new first letter and shifts the rest: `1 ↦ 1`, `t+1 ↦ τ(t)+1`.
    pub fn shifted(&self) -> Permutation {
        assert!(self.size() < MAX_SIZE);
        let mut images = Images::with_capacity(self.size() + 1);
        images.push(0);
        images.extend(self.images.iter().map(|&i| i + 1));
        Permutation { images }
    }

    /// The transposition `(a b)` in `S_k`, 1-based.
    pub fn transposition(k: usize, a: usize, b: usize) -> Result<Permutation> {
        Permutation::from_cycles(k, &[vec![a, b]])
    }

    /// Builds a permutation of size `k` from disjoint 1-based cycles.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        if k == 0 || k > MAX_SIZE {
            return Err(Error::OutOfRange {
                what: "permutation size",
                value: k,
                range: format!("1..={MAX_SIZE}"),
            });
        }
        let mut images: Images = (0..k).map(|t| t as u8).collect();
        let mut used = vec![false; k];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a == 0 || a > k {
                    return Err(Error::OutOfRange {
                        what: "cycle letter",
                        value: a,
                        range: format!("1..={k}"),
                    });
                }
                if std::mem::replace(&mut used[a - 1], true) {
                    return Err(Error::InvalidInput(format!("repeated letter {a}")));
                }
                let next = cycle[(pos + 1) % cycle.len()];
                images[a - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// The long element `π_k`, reversing `1 2 ⋯ k`.
    pub fn reversal(k: usize) -> Permutation {
        Permutation::from_zero_based_unchecked((0..k as u8).rev())
    }

    /// The cycle `(1 2 ⋯ k)`.
    pub fn rotation(k: usize) -> Permutation {
        Permutation::from_zero_based_unchecked((0..k).map(|t| ((t + 1) % k) as u8))
    }

    /// The cycle `(i, i+1, …, k)` in `S_k`; `i = k` gives the identity.
    pub fn hat_cycle(i: usize, k: usize) -> Result<Permutation> {
        if i == 0 || i > k {
            return Err(Error::OutOfRange {
                what: "hat_cycle start",
                value: i,
                range: format!("1..={k}"),
            });
        }
        let cycle: Vec<usize> = (i..=k).collect();
        Permutation::from_cycles(k, &[cycle])
    }

    /// Membership in `S(k; a, b)`: the subgroup generated by the permutations
    /// of the first `a` letters and of the last `b` letters.
    pub fn in_s_nab(&self, a: usize, b: usize) -> bool {
        let k = self.size();
        if a + b > k {
            return true;
        }
        self.images.iter().enumerate().all(|(t, &img)| {
            let img = img as usize;
            if t < a {
                img < a
            } else if t >= k - b {
                img >= k - b
            } else {
                img == t
            }
        })
    }

    /// Number of leading fixed letters and position after which every letter is fixed.
    pub fn block_decompose(&self) -> BlockDecomposition {
        let k = self.size();
        let prefix = (0..k).take_while(|&t| self.images[t] as usize == t).count();
        if prefix == k {
            return BlockDecomposition {
                prefix: 0,
                end: 0,
                core: None,
            };
        }
        let suffix = (0..k)
            .rev()
            .take_while(|&t| self.images[t] as usize == t)
            .count();
        let end = k - suffix;
        let core = Permutation::from_zero_based_unchecked(
            self.images[prefix..end].iter().map(|&i| i - prefix as u8),
        );
        BlockDecomposition {
            prefix,
            end,
            core: Some(core),
        }
    }

    /// Lexicographic rank among all permutations of the same size.
    pub fn rank(&self) -> usize {
        let k = self.size();
        let mut used: u64 = 0;
        let mut rank = 0usize;
        for (t, &img) in self.images.iter().enumerate() {
            let smaller_unused = (img as u32) - (used & ((1u64 << img) - 1)).count_ones();
            rank += smaller_unused as usize * factorial(k - 1 - t) as usize;
            used |= 1 << img;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`]. Requires `k ≤ 20`.
    pub fn unrank(k: usize, mut rank: usize) -> Permutation {
        let mut pool: Vec<u8> = (0..k as u8).collect();
        let mut images = Images::with_capacity(k);
        for t in 0..k {
            let f = factorial(k - 1 - t) as usize;
            images.push(pool.remove(rank / f));
            rank %= f;
        }
        Permutation { images }
    }

    /// All permutations of size `k` in lexicographic order.
    pub fn all(k: usize) -> AllPermutations {
        AllPermutations {
            next: Some(Permutation::identity(k)),
        }
    }
}

/// `k!` as a `u128`. Panics past `34!`.
pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Lexicographic successor iteration over `S_k`.
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let a = &current.images;
        let k = a.len();
        if let Some(pivot) = (0..k.saturating_sub(1)).rev().find(|&t| a[t] < a[t + 1]) {
            let mut succ = a.clone();
            let swap = (pivot + 1..k)
                .rev()
                .find(|&t| succ[t] > succ[pivot])
                .unwrap();
            succ.swap(pivot, swap);
            succ[pivot + 1..].reverse();
            self.next = Some(Permutation { images: succ });
        }
        Some(current)
    }
}

impl<'a> Mul<&'a Permutation> for &'a Permutation {
    type Output = Permutation;

    /// Composition `self ∘ rhs`. Panics on a size mismatch.
    fn mul(self, rhs: &'a Permutation) -> Permutation {
        assert_eq!(
            self.size(),
            rhs.size(),
            "composing permutations of different sizes"
        );
        self.compose_unchecked(rhs)
    }
}

/// The fixed-border decomposition `σ = id_i ⊕ core ⊕ id_{n-j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Longest fixed prefix `i`.
    pub prefix: usize,
    /// Position `j` after which every letter is fixed.
    pub end: usize,
    /// `σ` restricted to `{i+1..j}`, relabelled to `{1..j-i}`; `None` when `σ = id`.
    pub core: Option<Permutation>,
}

/// Text notation for permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Notation {
    /// `[3,2,1]`
    OneLine,
    /// `(1 3)(2 5)`; the identity is `()`.
    Cycles,
}

pub fn format_perm(p: &Permutation, notation: Notation) -> String {
    match notation {
        Notation::OneLine => {
            let parts: Vec<String> = p.images().iter().map(|i| i.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
        Notation::Cycles => {
            let cycles = p.cycles();
            if cycles.is_empty() {
                return "()".into();
            }
            cycles
                .iter()
                .map(|c| {
                    let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                    format!("({})", parts.join(" "))
                })
                .collect()
        }
    }
}

/// Parses one-line (`[2,3,1]`) or cycle (`(1 2 3)`) notation. Cycle notation
/// needs the ambient size `k`; for one-line input `k`, when given, must match.
pub fn parse_perm(text: &str, k: Option<usize>) -> Result<Permutation> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    match body.chars().next() {
        Some('[') => {
            let p = parse_one_line(body, lead)?;
            if let Some(k) = k {
                if k != p.size() {
                    return Err(Error::SizeMismatch {
                        expected: k,
                        found: p.size(),
                    });
                }
            }
            Ok(p)
        }
        Some('(') => {
            let k = k.ok_or_else(|| {
                Error::parse("cycle notation requires an explicit size", lead + 1)
            })?;
            parse_cycles(body, k, lead)
        }
        _ => Err(Error::parse(
            "expected '[' (one-line) or '(' (cycle notation)",
            lead + 1,
        )),
    }
}

/// Splits `s` into `(column, token)` pairs of digit runs; `offset` is the
/// 0-based byte offset of `s` in the original text.
fn number_tokens(s: &str, offset: usize) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut t = 0;
    while t < bytes.len() {
        let c = bytes[t];
        if c.is_ascii_digit() {
            let start = t;
            while t < bytes.len() && bytes[t].is_ascii_digit() {
                t += 1;
            }
            let value = s[start..t].parse::<usize>().map_err(|_| {
                Error::parse(
                    format!("number '{}' too large", &s[start..t]),
                    offset + start + 1,
                )
            })?;
            out.push((offset + start + 1, value));
        } else {
            t += 1;
        }
    }
    Ok(out)
}

fn parse_one_line(body: &str, lead: usize) -> Result<Permutation> {
    let Some(inner) = body.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
        return Err(Error::parse(
            "unterminated one-line form, expected ']'",
            lead + body.len(),
        ));
    };
    let mut entries = Vec::new();
    let mut col = lead + 2;
    for piece in inner.split(',') {
        let trimmed = piece.trim();
        let at = col + (piece.len() - piece.trim_start().len());
        if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("invalid entry '{trimmed}'"), at));
        }
        let value: usize = trimmed
            .parse()
            .map_err(|_| Error::parse(format!("entry '{trimmed}' too large"), at))?;
        entries.push((at, value));
        col += piece.len() + 1;
    }
    let k = entries.len();
    if k > MAX_SIZE {
        return Err(Error::parse(
            format!("more than {MAX_SIZE} entries"),
            lead + 1,
        ));
    }
    let mut seen = vec![false; k];
    for &(at, value) in &entries {
        if value == 0 || value > k {
            return Err(Error::parse(
                format!("image {value} out of range 1..={k}"),
                at,
            ));
        }
        if std::mem::replace(&mut seen[value - 1], true) {
            return Err(Error::parse(format!("repeated image {value}"), at));
        }
    }
    Ok(Permutation {
        images: entries.iter().map(|&(_, v)| (v - 1) as u8).collect(),
    })
}

fn parse_cycles(body: &str, k: usize, lead: usize) -> Result<Permutation> {
    if k == 0 || k > MAX_SIZE {
        return Err(Error::OutOfRange {
            what: "permutation size",
            value: k,
            range: format!("1..={MAX_SIZE}"),
        });
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; k];
    let mut rest = body;
    let mut offset = lead;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(Error::parse("expected '('", offset + 1));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::parse("unbalanced '('", offset + 1))?;
        let inner = &rest[1..close];
        if let Some(bad) = inner
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_digit() || c.is_whitespace() || c == ','))
        {
            return Err(Error::parse(
                format!("unexpected character '{}'", bad.1),
                offset + 2 + bad.0,
            ));
        }
        let mut cycle = Vec::new();
        for (col, letter) in number_tokens(inner, offset + 1)? {
            if letter == 0 || letter > k {
                return Err(Error::parse(
                    format!("letter {letter} exceeds size {k}"),
                    col,
                ));
            }
            if std::mem::replace(&mut used[letter - 1], true) {
                return Err(Error::parse(format!("repeated letter {letter}"), col));
            }
            cycle.push(letter);
        }
        cycles.push(cycle);
        offset += close + 1;
        rest = &rest[close + 1..];
    }
    Permutation::from_cycles(k, &cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_perm(self, Notation::OneLine))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation only; cycle notation needs a size, see [`parse_perm`].
    fn from_str(s: &str) -> Result<Self> {
        parse_perm(s, None)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_perm(self, Notation::OneLine))
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_perm(&s, None).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("[2,3,1]").compose(&p("[2,1,3]")).unwrap(), p("[3,2,1]"));
        let tau = p("[4,1,3,2]");
        assert_eq!(&Permutation::identity(4) * &tau, tau);
        assert!((&tau * &tau.inverse()).is_identity());
        assert!(matches!(
            p("[1,2]").compose(&p("[1,2,3]")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn substitution_and_place_actions() {
        // (12)·x1x3x2 = x2x3x1 and x1x3x2·(12) = x3x1x2
        let swap = p("[2,1,3]");
        let mono = p("[1,3,2]");
        assert_eq!(&swap * &mono, p("[2,3,1]"));
        assert_eq!(&mono * &swap, p("[3,1,2]"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("[3,1,2]").inverse(), p("[2,3,1]"));
        assert_eq!(p("[2,1]").inverse(), p("[2,1]"));
        assert!(Permutation::identity(5).inverse().is_identity());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(p("[4,3,2,1]").sign(), 1);
        assert_eq!(p("[3,2,1]").sign(), -1);
        assert_eq!(Permutation::identity(6).sign(), 1);
        for k in 1..=9 {
            let expected = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(Permutation::reversal(k).sign(), expected, "k = {k}");
        }
    }

    #[test]
    fn hat_cycle_examples() {
        assert_eq!(Permutation::hat_cycle(2, 4).unwrap(), p("[1,3,4,2]"));
        assert!(Permutation::hat_cycle(4, 4).unwrap().is_identity());
        assert_eq!(Permutation::hat_cycle(1, 3).unwrap(), p("[2,3,1]"));
        assert!(Permutation::hat_cycle(0, 3).is_err());
        assert!(Permutation::hat_cycle(4, 3).is_err());
        for k in 1..=7 {
            for i in 1..=k {
                let h = Permutation::hat_cycle(i, k).unwrap();
                assert!((&h * &h.inverse()).is_identity());
                assert_eq!(h.order(), (k - i + 1) as u64);
            }
        }
    }

    #[test]
    fn s_nab_examples() {
        assert!(p("[2,3,1,4,5,6,8,7]").in_s_nab(3, 3));
        assert!(!p("[2,3,4,1,5,6,7,8]").in_s_nab(3, 3));
        for t in Permutation::all(5) {
            assert!(t.in_s_nab(3, 3));
        }
    }

    #[test]
    fn s_nab_is_a_subgroup() {
        for k in 1..=6 {
            for a in 0..=k {
                for b in 0..=k {
                    let members: Vec<_> =
                        Permutation::all(k).filter(|t| t.in_s_nab(a, b)).collect();
                    for x in &members {
                        assert!(x.inverse().in_s_nab(a, b));
                        for y in &members {
                            assert!((x * y).in_s_nab(a, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn block_decompose_examples() {
        let d = p("[1,2,5,4,3,6]").block_decompose();
        assert_eq!((d.prefix, d.end), (2, 5));
        assert_eq!(d.core, Some(p("[3,2,1]")));
        let d = p("[2,1]").block_decompose();
        assert_eq!((d.prefix, d.end, d.core), (0, 2, Some(p("[2,1]"))));
        let d = Permutation::identity(4).block_decompose();
        assert_eq!((d.prefix, d.end, d.core), (0, 0, None));
    }

    #[test]
    fn block_core_moves_both_ends() {
        for k in 1..=6 {
            for sigma in Permutation::all(k) {
                let d = sigma.block_decompose();
                if let Some(core) = d.core {
                    let m = core.size();
                    assert_eq!(m, d.end - d.prefix);
                    assert_ne!(core.apply(1), 1);
                    assert_ne!(core.apply(m), m);
                    for t in (1..=d.prefix).chain(d.end + 1..=k) {
                        assert_eq!(sigma.apply(t), t);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_perm("(1 5)", Some(5)).unwrap(), p("[5,2,3,4,1]"));
        assert_eq!(p("[2,3,4,5,1]"), Permutation::rotation(5));
        assert_eq!(
            format_perm(&p("[2,3,4,5,1]"), Notation::Cycles),
            "(1 2 3 4 5)"
        );
        let err = parse_perm("[2,2,1]", None).unwrap_err();
        assert!(err.to_string().contains("repeated image 2"), "{err}");
        assert!(matches!(err, Error::Parse { column: 4, .. }), "{err:?}");
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("(1 2)", None, "requires an explicit size"),
            ("(1 6)", Some(5), "letter 6 exceeds size 5"),
            ("(1 2)(2 3)", Some(3), "repeated letter 2"),
            ("(1 2", Some(3), "unbalanced"),
            ("[1,4,2]", None, "image 4 out of range"),
            ("[1,,2]", None, "invalid entry"),
            ("[1,2", None, "unterminated"),
            ("1 2 3", None, "expected '['"),
            ("(1 x)", Some(3), "unexpected character 'x'"),
        ];
        for (text, k, needle) in cases {
            let err = parse_perm(text, k).unwrap_err();
            assert!(err.to_string().contains(needle), "{text}: {err}");
        }
        assert!(matches!(
            parse_perm("[1,2,3]", Some(4)),
            Err(Error::SizeMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn parse_tolerates_whitespace() {
        assert_eq!(parse_perm("  [ 3, 2 ,1 ] ", None).unwrap(), p("[3,2,1]"));
        assert_eq!(
            parse_perm(" (1 3) (2  4)", Some(4)).unwrap(),
            p("[3,4,1,2]")
        );
        assert!(parse_perm("()", Some(3)).unwrap().is_identity());
        assert_eq!(parse_perm("(2)(1 3)", Some(3)).unwrap(), p("[3,2,1]"));
    }

    #[test]
    fn round_trip_both_notations() {
        for k in 1..=6 {
            for t in Permutation::all(k) {
                let one = format_perm(&t, Notation::OneLine);
                let cyc = format_perm(&t, Notation::Cycles);
                assert_eq!(parse_perm(&one, None).unwrap(), t);
                assert_eq!(parse_perm(&cyc, Some(k)).unwrap(), t);
            }
        }
    }

    #[test]
    fn rank_and_lex_order() {
        for k in 1..=6 {
            let all: Vec<_> = Permutation::all(k).collect();
            assert_eq!(all.len() as u128, factorial(k));
            for (r, t) in all.iter().enumerate() {
                assert_eq!(t.rank(), r);
                assert_eq!(&Permutation::unrank(k, r), t);
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn lifting_helpers() {
        assert_eq!(p("[3,2,1]").extended(4), p("[3,2,1,4]"));
        assert_eq!(p("[3,2,1]").shifted(), p("[1,4,3,2]"));
        assert_eq!(Permutation::reversal(4), p("[4,3,2,1]"));
        assert_eq!(p("[2,3,1,5,4]").order(), 6);
    }
}
