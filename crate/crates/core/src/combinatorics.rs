//! Partitions, monodromy vectors and the arithmetic conditions on `(γ, μ, a)`.
//!
//! Text syntax:
//! - partitions are comma separated parts, `"3,1,1"`; the empty partition is
//!   `""` or `"-"`;
//! - monodromy vectors are `"a=5;1,2,2"`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::rational::{binomial, factorial, rat, ExactRational};

/// An integer partition: a non-increasing sequence of positive parts.
///
/// The empty partition (degree 0) is a valid value; it shows up as the
/// complement when covers are split into components and as the empty `μ`
/// in rank computations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The single-part partition `(d)`.
    pub fn single(d: usize) -> Self {
        assert!(d > 0, "parts must be positive");
        Partition { parts: vec![d] }
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `ℓ`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `k ↦ m_k`, the number of parts equal to `k`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Order of the group of permutations preserving equal parts, `Π m_k!`.
    pub fn aut_order(&self) -> BigInt {
        self.multiplicities()
            .values()
            .map(|&m| factorial(m as u64))
            .product()
    }

    /// Centraliser order `Π k^{m_k} m_k!` of a permutation with this cycle type.
    pub fn z_order(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|(&k, &m)| BigInt::from(k).pow(m as u32) * factorial(m as u64))
            .product()
    }

    /// Size `d!/z` of the conjugacy class of this cycle type in `Σ_d`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.degree() as u64) / self.z_order()
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            aut_order: self.aut_order(),
            z_order: self.z_order(),
            multiplicities: self.multiplicities(),
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// The partition `(1, …, 1)` of `d`.
    pub fn ones(d: usize) -> Partition {
        Partition { parts: vec![1; d] }
    }

    /// Cycle type `(2, 1, …, 1)` of a transposition; `None` for `d < 2`.
    pub fn transposition(d: usize) -> Option<Partition> {
        if d < 2 {
            return None;
        }
        let mut parts = vec![2];
        parts.extend(std::iter::repeat_n(1, d - 2));
        Some(Partition { parts })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub aut_order: BigInt,
    pub z_order: BigInt,
    pub multiplicities: BTreeMap<usize, usize>,
}

pub fn partition_stats(p: &Partition) -> PartitionStats {
    p.stats()
}

/// All partitions of `d` in reverse-lexicographic order:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
///
/// Character tables index rows and columns by this order.
pub fn partitions_of(d: usize) -> Result<Vec<Partition>> {
    if d < 1 {
        return invalid("partitions_of requires d >= 1");
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    push_partitions(d, d, &mut current, &mut out);
    Ok(out)
}

fn push_partitions(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    for part in (1..=remaining.min(max)).rev() {
        current.push(part);
        push_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// An ordered tuple of residues modulo `a`.
///
/// Entries equal to 0 are allowed here (the tuple `γ − μ` may contain them);
/// theorem inputs go through [`MonodromyVector::require_nontrivial`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonodromyVector {
    modulus: usize,
    entries: Vec<usize>,
}

impl MonodromyVector {
    /// Reduces every entry modulo `a`.
    pub fn new(modulus: usize, entries: &[i64]) -> Result<Self> {
        if modulus < 1 {
            return invalid("monodromy modulus must be >= 1");
        }
        let entries = entries
            .iter()
            .map(|&e| e.rem_euclid(modulus as i64) as usize)
            .collect();
        Ok(MonodromyVector { modulus, entries })
    }

    pub fn empty(modulus: usize) -> Result<Self> {
        Self::new(modulus, &[])
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ γᵢ` taken over the representatives in `{0, …, a−1}`.
    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn is_nontrivial(&self, i: usize) -> bool {
        self.entries[i] != 0
    }

    /// Theorem inputs need every entry nonzero. For `a = 1` this forces `γ = ∅`.
    pub fn require_nontrivial(&self) -> Result<()> {
        if self.entries.contains(&0) {
            return invalid(format!(
                "monodromy entries must be nontrivial in Z_{} (got {self})",
                self.modulus
            ));
        }
        Ok(())
    }

    /// The entries forgetting their order, as a partition.
    pub fn as_partition(&self) -> Partition {
        let parts: Vec<usize> = self.entries.iter().copied().filter(|&e| e > 0).collect();
        Partition::new(parts).expect("positive parts")
    }

    /// `|Aut(γ)|`, computed after forgetting the order of the entries.
    pub fn aut_order(&self) -> BigInt {
        let mut counts = BTreeMap::new();
        for &e in &self.entries {
            *counts.entry(e).or_insert(0u64) += 1;
        }
        counts.values().map(|&m| factorial(m)).product()
    }

    /// `Σ γᵢ / a`.
    pub fn sum_over_modulus(&self) -> ExactRational {
        rat(self.sum() as i64, self.modulus as i64)
    }
}

impl fmt::Display for MonodromyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        write!(f, "a={};{}", self.modulus, text.join(","))
    }
}

impl FromStr for MonodromyVector {
    type Err = Error;

    /// Parses `"a=5;1,2,2"`; `"a=2;"` is the empty vector.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = s
            .split_once(';')
            .map(|(h, t)| (h, Some(t)))
            .unwrap_or((s, None));
        let modulus = head
            .trim()
            .strip_prefix("a=")
            .and_then(|m| m.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("expected \"a=<modulus>;...\", got {s:?}")))?;
        let entries = match tail.map(str::trim) {
            None | Some("") | Some("-") => Vec::new(),
            Some(t) => t
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad monodromy entry {e:?}")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        MonodromyVector::new(modulus, &entries)
    }
}

/// Which hypotheses of the vanishing and evaluation theorems hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionFlags {
    pub parity: bool,
    pub non_negative: bool,
    pub bounded: bool,
    pub negative: bool,
    pub strongly_negative: bool,
}

/// Evaluates the parity, non-negativity, boundedness, negativity and strong
/// negativity conditions of `γ` with respect to `μ ⊢ d`.
pub fn condition_flags(gamma: &MonodromyVector, mu: &Partition) -> ConditionFlags {
    let a = gamma.modulus() as i64;
    let d = mu.degree() as i64;
    let n = gamma.len() as i64;
    let excess = d - gamma.sum() as i64;
    let e = gamma.entries();
    let bounded = (0..e.len()).all(|i| (0..e.len()).all(|j| i == j || e[i] + e[j] <= gamma.modulus()));
    ConditionFlags {
        parity: excess.rem_euclid(a) == 0,
        non_negative: excess >= 0,
        bounded,
        negative: excess < 0,
        // d − n − excess/a < 0, scaled by a > 0
        strongly_negative: a * (d - n) - excess < 0,
    }
}

/// `γ₊`: the entries of `γ` together with `(d − Σγᵢ)/a` parts equal to `a`.
pub fn gamma_plus(gamma: &MonodromyVector, d: usize) -> Result<Partition> {
    let a = gamma.modulus();
    let sum = gamma.sum();
    if sum > d {
        return Err(Error::ConditionViolation(format!(
            "non-negativity fails: d = {d} < Σγ = {sum}"
        )));
    }
    if (d - sum) % a != 0 {
        return Err(Error::ConditionViolation(format!(
            "parity fails: d − Σγ = {} is not divisible by {a}",
            d - sum
        )));
    }
    let mut parts: Vec<usize> = gamma.entries().iter().copied().filter(|&e| e > 0).collect();
    if parts.len() != gamma.len() {
        return invalid("γ₊ needs nontrivial entries");
    }
    parts.extend(std::iter::repeat_n(a, (d - sum) / a));
    Partition::new(parts)
}

/// Number of simple branch points `2g − 2 + ℓ(ν) + ℓ(μ)`; negative values are
/// returned as is.
pub fn ramification_count(genus: i64, nu: &Partition, mu: &Partition) -> Result<i64> {
    if nu.degree() != mu.degree() {
        return Err(Error::DegreeMismatch {
            left: nu.degree(),
            right: mu.degree(),
        });
    }
    Ok(2 * genus - 2 + nu.len() as i64 + mu.len() as i64)
}

/// Genus determined by a branch point count; `None` when `r` has the wrong parity.
pub(crate) fn genus_from_branch_points(r: i64, len_nu: usize, len_mu: usize) -> Option<i64> {
    let twice = r + 2 - len_nu as i64 - len_mu as i64;
    (twice % 2 == 0).then_some(twice / 2)
}

/// One way of splitting a sorted multiset into a taken part and the rest.
#[derive(Debug, Clone)]
pub(crate) struct Split<T> {
    pub taken: Vec<T>,
    pub rest: Vec<T>,
    /// Number of label-sets realising this split.
    pub ways: BigInt,
}

/// Enumerates sub-multisets of `items` (sorted, equal items adjacent).
///
/// With `anchored`, only sub-multisets containing one fixed copy of the first
/// item are produced, and `ways` counts the choices for the remaining copies.
pub(crate) fn split_multiset<T: Clone + PartialEq>(items: &[T], anchored: bool) -> Vec<Split<T>> {
    let mut groups: Vec<(T, usize)> = Vec::new();
    for item in items {
        match groups.last_mut() {
            Some((value, count)) if value == item => *count += 1,
            _ => groups.push((item.clone(), 1)),
        }
    }
    let mut out = vec![Split {
        taken: Vec::new(),
        rest: Vec::new(),
        ways: BigInt::one(),
    }];
    for (gi, (value, count)) in groups.iter().enumerate() {
        let lowest = if anchored && gi == 0 { 1 } else { 0 };
        let mut next = Vec::with_capacity(out.len() * (count + 1));
        for split in &out {
            for take in lowest..=*count {
                let ways = if anchored && gi == 0 {
                    binomial(*count as u64 - 1, take as u64 - 1)
                } else {
                    binomial(*count as u64, take as u64)
                };
                let mut taken = split.taken.clone();
                taken.extend(std::iter::repeat_n(value.clone(), take));
                let mut rest = split.rest.clone();
                rest.extend(std::iter::repeat_n(value.clone(), count - take));
                next.push(Split {
                    taken,
                    rest,
                    ways: &split.ways * ways,
                });
            }
        }
        out = next;
    }
    if anchored && groups.is_empty() {
        return Vec::new();
    }
    out
}
