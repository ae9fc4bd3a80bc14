//! Finite abelian groups, the wreath products `K_d = K^d ⋊ Σ_d` and their
//! Hurwitz numbers.
//!
//! Group elements are residue tuples. A subgroup (the kernel of a character)
//! keeps the coordinates of its ambient group, so every function that takes a
//! `K` is generic over [`AbelianGroup`].
//!
//! Text syntax: groups are `"2x2"` for `Z₂ × Z₂`; group elements are residues
//! joined by dots, `"1.0"`; weighted partitions are `"part:weight"` pairs
//! separated by commas, `"2:1,2:0"`. A bare part means weight zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinatorics::{genus_from_branch_points, ramification_count, split_multiset, Partition};
use crate::error::{invalid, Error, Result};
use crate::hurwitz::{connected_by_branch_points, connected_labeled};
use crate::rational::{binomial, factorial, int, pow_signed, ExactRational};

/// Default bound on `|K|^d · d!` for [`wreath_hurwitz_bruteforce`].
pub const WREATH_BRUTE_FORCE_CEILING: u64 = 100_000;

/// A residue tuple; coordinates refer to the cyclic factors of a group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    /// Parses dot-separated residues, `"1.0"` or `"-1"`, reducing them into `group`.
    pub fn parse(s: &str, group: &FiniteAbelianGroup) -> Result<Self> {
        let residues = s
            .trim()
            .split('.')
            .map(|r| {
                r.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad group element {s:?}")))
            })
            .collect::<Result<Vec<i64>>>()?;
        group.element_of(&residues)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", text.join("."))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub trait AbelianGroup: fmt::Debug + Sync {
    /// The group of residue tuples the elements live in.
    fn ambient(&self) -> &FiniteAbelianGroup;

    fn order(&self) -> usize;

    fn contains(&self, x: &GroupElement) -> bool;

    fn elements(&self) -> Vec<GroupElement>;

    fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.ambient().cyclic_orders.len()])
    }

    fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let orders = &self.ambient().cyclic_orders;
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(orders)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        )
    }

    fn neg(&self, x: &GroupElement) -> GroupElement {
        let orders = &self.ambient().cyclic_orders;
        GroupElement(x.0.iter().zip(orders).map(|(a, n)| (n - a) % n).collect())
    }

    fn scale(&self, x: &GroupElement, k: i64) -> GroupElement {
        let orders = &self.ambient().cyclic_orders;
        GroupElement(
            x.0.iter()
                .zip(orders)
                .map(|(a, &n)| ((*a as i128 * k as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        )
    }

    fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement
    where
        Self: Sized,
    {
        items.into_iter().fold(self.identity(), |acc, x| self.add(&acc, x))
    }

    /// Returns `x` if it belongs to the group.
    fn element(&self, x: &GroupElement) -> Result<GroupElement> {
        if self.contains(x) {
            Ok(x.clone())
        } else {
            invalid(format!("{x} is not in {self:?}"))
        }
    }
}

/// `Z_{n₁} × … × Z_{n_k}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        if cyclic_orders.is_empty() || cyclic_orders.contains(&0) {
            return invalid("cyclic orders must be a nonempty list of positive integers");
        }
        Ok(FiniteAbelianGroup { cyclic_orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { cyclic_orders: vec![1] }
    }

    /// Parses `"4"` or `"2x2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let orders = s
            .trim()
            .split(['x', 'X'])
            .map(|n| {
                n.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad group {s:?}, expected e.g. \"2x2\"")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn element_of(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.cyclic_orders.len() {
            return invalid(format!("expected {} coordinates", self.cyclic_orders.len()));
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.cyclic_orders)
                .map(|(a, &n)| a.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.cyclic_orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", text.join(" x "))
    }
}

impl AbelianGroup for FiniteAbelianGroup {
    fn ambient(&self) -> &FiniteAbelianGroup {
        self
    }

    fn order(&self) -> usize {
        self.cyclic_orders.iter().product::<u64>() as usize
    }

    fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.cyclic_orders.len() && x.0.iter().zip(&self.cyclic_orders).all(|(a, n)| a < n)
    }

    fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for &n in &self.cyclic_orders {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..n).map(move |r| {
                        let mut v = prefix.clone();
                        v.push(r);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement).collect()
    }
}

/// A subgroup given by its element list, inside an ambient product of cyclic groups.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FiniteAbelianGroup,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    /// Elements of `ambient` passing `member`; the predicate must cut out a subgroup.
    pub fn from_predicate(ambient: &FiniteAbelianGroup, member: impl Fn(&GroupElement) -> bool) -> Self {
        let elements = ambient.elements().into_iter().filter(|x| member(x)).collect();
        Subgroup {
            ambient: ambient.clone(),
            elements,
        }
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subgroup of order {} in {:?}", self.elements.len(), self.ambient)
    }
}

impl AbelianGroup for Subgroup {
    fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn contains(&self, x: &GroupElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    fn elements(&self) -> Vec<GroupElement> {
        self.elements.clone()
    }
}

/// The character `x ↦ exp(2πi Σ eᵢ xᵢ / nᵢ)` of a product of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCharacter {
    group: FiniteAbelianGroup,
    exponents: Vec<u64>,
}

impl AbelianCharacter {
    pub fn new(group: &FiniteAbelianGroup, exponents: &[i64]) -> Result<Self> {
        let reduced = group.element_of(exponents)?;
        Ok(AbelianCharacter {
            group: group.clone(),
            exponents: reduced.0,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `a = |Im φ|`.
    pub fn image_order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.cyclic_orders)
            .map(|(&e, &n)| n / n.gcd(&e))
            .fold(1, |acc, k| acc.lcm(&k))
    }

    /// `φ(x)` as a residue mod `a`, identifying the image with `Z_a`.
    pub fn evaluate(&self, x: &GroupElement) -> u64 {
        let a = self.image_order();
        let total: u64 = x
            .0
            .iter()
            .zip(&self.exponents)
            .zip(&self.group.cyclic_orders)
            .map(|((&xi, &e), &n)| (a * e / n % a) * xi % a)
            .sum();
        total % a
    }
}

/// The data of the exact sequence `0 → K → G → Z_a → 0` attached to a character.
#[derive(Debug, Clone)]
pub struct CharacterAnalysis {
    pub image_order: u64,
    pub kernel: Subgroup,
    /// An element with `φ(x) = 1`.
    pub lift: GroupElement,
    /// `k = a·x`, an element of the kernel.
    pub k: GroupElement,
}

pub fn analyze_character(group: &FiniteAbelianGroup, character: &AbelianCharacter) -> Result<CharacterAnalysis> {
    if character.group() != group {
        return invalid(format!("character is defined on {:?}, not {group:?}", character.group()));
    }
    let a = character.image_order();
    let kernel = Subgroup::from_predicate(group, |x| character.evaluate(x) == 0);
    let lift = group
        .elements()
        .into_iter()
        .find(|x| character.evaluate(x) == 1 % a)
        .expect("φ hits a generator of its image");
    let k = group.scale(&lift, a as i64);
    Ok(CharacterAnalysis {
        image_order: a,
        kernel,
        lift,
        k,
    })
}

/// A multiset of `(part, weight)` pairs, kept sorted by part (descending)
/// and then weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedPartition {
    pairs: Vec<(usize, GroupElement)>,
}

impl WeightedPartition {
    pub fn new(mut pairs: Vec<(usize, GroupElement)>) -> Result<Self> {
        if pairs.iter().any(|(p, _)| *p == 0) {
            return invalid("parts must be positive");
        }
        pairs.sort_by(|(p, w), (q, v)| q.cmp(p).then_with(|| w.cmp(v)));
        Ok(WeightedPartition { pairs })
    }

    /// Builds and checks every weight against `k`.
    pub fn in_group(pairs: Vec<(usize, GroupElement)>, k: &impl AbelianGroup) -> Result<Self> {
        let pairs = pairs
            .into_iter()
            .map(|(p, w)| Ok((p, k.element(&w)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    /// Parses `"2:1,2:0"`; weights are reduced modulo the cyclic orders and must lie in `k`.
    pub fn parse(s: &str, k: &impl AbelianGroup) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(WeightedPartition { pairs: Vec::new() });
        }
        let pairs = s
            .split(',')
            .map(|item| {
                let (part, weight) = match item.split_once(':') {
                    Some((p, w)) => (p, Some(w)),
                    None => (item, None),
                };
                let part = part
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad weighted part {item:?}")))?;
                let weight = match weight {
                    Some(w) => GroupElement::parse(w, k.ambient())?,
                    None => k.identity(),
                };
                Ok((part, weight))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::in_group(pairs, k)
    }

    pub fn pairs(&self) -> &[(usize, GroupElement)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.iter().map(|(p, _)| p).sum()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The partition forgetting weights.
    pub fn underlying(&self) -> Partition {
        Partition::new(self.pairs.iter().map(|(p, _)| *p).collect()).expect("parts are positive")
    }

    /// Permutations of the parts preserving `(part, weight)`.
    pub fn aut_order(&self) -> BigInt {
        let mut counts: BTreeMap<&(usize, GroupElement), u64> = BTreeMap::new();
        for pair in &self.pairs {
            *counts.entry(pair).or_insert(0) += 1;
        }
        counts.values().map(|&m| factorial(m)).product()
    }

    pub fn weight_sum(&self, k: &impl AbelianGroup) -> GroupElement {
        k.sum(self.pairs.iter().map(|(_, w)| w))
    }

    /// The same parts with every weight negated (the class of the inverse).
    pub fn negated(&self, k: &impl AbelianGroup) -> WeightedPartition {
        WeightedPartition::new(self.pairs.iter().map(|(p, w)| (*p, k.neg(w))).collect()).expect("parts are positive")
    }

    /// Size of the conjugacy class in `K_d`:
    /// `|K|^d d! / Π_{(m, w)} (m |K|)^{n} n!` over distinct pairs with multiplicity `n`.
    pub fn class_size(&self, k: &impl AbelianGroup) -> BigInt {
        let order = k.order() as u64;
        let d = self.degree() as u32;
        let mut counts: BTreeMap<&(usize, GroupElement), u32> = BTreeMap::new();
        for pair in &self.pairs {
            *counts.entry(pair).or_insert(0) += 1;
        }
        let centralizer: BigInt = counts
            .iter()
            .map(|((m, _), &n)| BigInt::from(*m as u64 * order).pow(n) * factorial(n as u64))
            .product();
        BigInt::from(order).pow(d) * factorial(d as u64) / centralizer
    }
}

impl fmt::Display for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.pairs.iter().map(|(p, w)| format!("{p}:{w}")).collect();
        write!(f, "{}", text.join(","))
    }
}

impl fmt::Debug for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.pairs.iter().map(|(p, w)| format!("({p},{w})")).collect();
        write!(f, "{{{}}}", text.join(","))
    }
}

/// All weighted partitions of `d` with weights in `k`.
pub fn weighted_partitions_of(d: usize, k: &impl AbelianGroup) -> Result<Vec<WeightedPartition>> {
    let elements = k.elements();
    let mut out = Vec::new();
    for partition in crate::combinatorics::partitions_of(d)? {
        // for each part size, a multiset of weights of that many entries
        let mut choices: Vec<Vec<(usize, GroupElement)>> = vec![Vec::new()];
        for (&part, &m) in partition.multiplicities().iter().rev() {
            let mut next = Vec::new();
            for multiset in multisets(&elements, m) {
                for prefix in &choices {
                    let mut v = prefix.clone();
                    v.extend(multiset.iter().map(|w| (part, w.clone())));
                    next.push(v);
                }
            }
            choices = next;
        }
        for pairs in choices {
            out.push(WeightedPartition::new(pairs)?);
        }
    }
    out.sort();
    Ok(out)
}

fn multisets(items: &[GroupElement], size: usize) -> Vec<Vec<GroupElement>> {
    fn go(items: &[GroupElement], start: usize, size: usize, cur: &mut Vec<GroupElement>, out: &mut Vec<Vec<GroupElement>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, i, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, size, &mut Vec::new(), &mut out);
    out
}

/// `(k, σ) ∈ K_d`; `permutation[i] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    weights: Vec<GroupElement>,
    permutation: Vec<usize>,
}

impl WreathElement {
    pub fn new(weights: Vec<GroupElement>, permutation: Vec<usize>) -> Result<Self> {
        let d = permutation.len();
        if weights.len() != d {
            return invalid("need one weight per point");
        }
        let mut seen = vec![false; d];
        for &i in &permutation {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return invalid(format!("{permutation:?} is not a permutation"));
            }
        }
        Ok(WreathElement { weights, permutation })
    }

    pub fn identity(k: &impl AbelianGroup, d: usize) -> Self {
        WreathElement {
            weights: vec![k.identity(); d],
            permutation: (0..d).collect(),
        }
    }

    pub fn weights(&self) -> &[GroupElement] {
        &self.weights
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn degree(&self) -> usize {
        self.permutation.len()
    }

    /// `(k, σ)(k′, σ′) = (k + σ(k′), σσ′)` with `σ(k′)_i = k′_{σ⁻¹(i)}`.
    pub fn compose(&self, other: &Self, k: &impl AbelianGroup) -> Self {
        let d = self.degree();
        let mut moved = vec![k.identity(); d];
        for (j, w) in other.weights.iter().enumerate() {
            moved[self.permutation[j]] = w.clone();
        }
        WreathElement {
            weights: self.weights.iter().zip(&moved).map(|(a, b)| k.add(a, b)).collect(),
            permutation: other.permutation.iter().map(|&j| self.permutation[j]).collect(),
        }
    }

    pub fn inverse(&self, k: &impl AbelianGroup) -> Self {
        let d = self.degree();
        let mut inv = vec![0; d];
        for (i, &j) in self.permutation.iter().enumerate() {
            inv[j] = i;
        }
        // −σ⁻¹(k): position i receives −k_{σ(i)}
        let weights = (0..d).map(|i| k.neg(&self.weights[self.permutation[i]])).collect();
        WreathElement {
            weights,
            permutation: inv,
        }
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.weights, self.permutation)
    }
}

/// Cycle lengths of `σ` paired with the sum of the weights along each cycle.
pub fn cycle_type(w: &WreathElement, k: &impl AbelianGroup) -> WeightedPartition {
    let d = w.degree();
    let mut seen = vec![false; d];
    let mut pairs = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut total = k.identity();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            total = k.add(&total, &w.weights[i]);
            i = w.permutation[i];
            len += 1;
        }
        pairs.push((len, total));
    }
    WeightedPartition::new(pairs).expect("cycle lengths are positive")
}

/// `∅₊(k)`: `d/a` copies of `(a, −k)`.
pub fn empty_plus(k: &GroupElement, d: usize, a: usize, group: &impl AbelianGroup) -> Result<WeightedPartition> {
    if a == 0 || d % a != 0 {
        return invalid(format!("a = {a} does not divide d = {d}"));
    }
    let weight = group.neg(&group.element(k)?);
    WeightedPartition::new(vec![(a, weight); d / a])
}

/// Degree of the map of moduli spaces induced by quotienting by `K`:
/// `|K|^{2g−2+h}` for covers with `h` components, and 0 when the monodromy
/// does not sum to zero.
pub fn degree_rho(k_order: usize, genus: i64, monodromy_sum_zero: bool, components: usize) -> ExactRational {
    if !monodromy_sum_zero {
        return ExactRational::zero();
    }
    pow_signed(&int(k_order as i64), 2 * genus - 2 + components as i64)
}

fn check_inputs(
    genus: i64,
    k: &impl AbelianGroup,
    nu: &WeightedPartition,
    mu: &WeightedPartition,
    connected: bool,
) -> Result<()> {
    if nu.degree() != mu.degree() {
        return Err(Error::DegreeMismatch {
            left: nu.degree(),
            right: mu.degree(),
        });
    }
    if nu.is_empty() {
        return invalid("Hurwitz numbers need degree d >= 1");
    }
    if connected && genus < 0 {
        return invalid(format!("connected covers have genus >= 0, got {genus}"));
    }
    for (_, w) in nu.pairs().iter().chain(mu.pairs()) {
        if !k.contains(w) {
            return invalid(format!("weight {w} is not in {k:?}"));
        }
    }
    Ok(())
}

/// `H_{g,K}(ν̄, μ̄)`: `K_d` covers counted through ordinary Hurwitz numbers.
///
/// Connected: `degree_rho · (|Aut ν| / |Aut ν̄|) · (|Aut μ| / |Aut μ̄|) · H_g(ν, μ)`.
/// Disconnected: a labeled cover splits into the component through the
/// first part of `ν̄` and the rest, each component carrying its own degree
/// factor and monodromy gate.
pub fn wreath_double_hurwitz(
    genus: i64,
    k: &impl AbelianGroup,
    nu: &WeightedPartition,
    mu: &WeightedPartition,
    connected: bool,
) -> Result<ExactRational> {
    check_inputs(genus, k, nu, mu, connected)?;
    let (nu_plain, mu_plain) = (nu.underlying(), mu.underlying());
    let r = ramification_count(genus, &nu_plain, &mu_plain)?;
    if r < 0 {
        return Ok(ExactRational::zero());
    }
    if connected {
        let sum_zero = k.add(&nu.weight_sum(k), &mu.weight_sum(k)) == k.identity();
        let deg = degree_rho(k.order(), genus, sum_zero, 1);
        if deg.is_zero() {
            return Ok(deg);
        }
        let ratio = ExactRational::new(
            nu_plain.aut_order() * mu_plain.aut_order(),
            nu.aut_order() * mu.aut_order(),
        );
        return Ok(deg * ratio * connected_by_branch_points(&nu_plain, &mu_plain, r)?);
    }
    let mut memo = HashMap::new();
    let labeled = disconnected_wreath_labeled(k, nu.pairs(), mu.pairs(), r, &mut memo)?;
    Ok(labeled / int(nu.aut_order() * mu.aut_order()))
}

type WreathKey = (Vec<(usize, GroupElement)>, Vec<(usize, GroupElement)>, i64);

fn disconnected_wreath_labeled(
    k: &impl AbelianGroup,
    nu: &[(usize, GroupElement)],
    mu: &[(usize, GroupElement)],
    r: i64,
    memo: &mut HashMap<WreathKey, ExactRational>,
) -> Result<ExactRational> {
    if nu.is_empty() {
        let empty = mu.is_empty() && r == 0;
        return Ok(if empty { ExactRational::one() } else { ExactRational::zero() });
    }
    let key = (nu.to_vec(), mu.to_vec(), r);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let mut total = ExactRational::zero();
    for nu_split in split_multiset(nu, true) {
        let alpha_degree: usize = nu_split.taken.iter().map(|(p, _)| p).sum();
        let alpha = plain(&nu_split.taken);
        let alpha_sum = k.sum(nu_split.taken.iter().map(|(_, w)| w));
        for mu_split in split_multiset(mu, false) {
            if mu_split.taken.iter().map(|(p, _)| p).sum::<usize>() != alpha_degree {
                continue;
            }
            let beta = plain(&mu_split.taken);
            let sum_zero = k.add(&alpha_sum, &k.sum(mu_split.taken.iter().map(|(_, w)| w))) == k.identity();
            if !sum_zero {
                continue;
            }
            let ways = &nu_split.ways * &mu_split.ways;
            for r1 in 0..=r {
                let Some(g1) = genus_from_branch_points(r1, alpha.len(), beta.len()) else {
                    continue;
                };
                if g1 < 0 {
                    continue;
                }
                let conn = connected_labeled(&alpha, &beta, r1)?;
                if conn.is_zero() {
                    continue;
                }
                let rest = disconnected_wreath_labeled(k, &nu_split.rest, &mu_split.rest, r - r1, memo)?;
                if rest.is_zero() {
                    continue;
                }
                let deg = degree_rho(k.order(), g1, true, 1);
                total += int(&ways * binomial(r as u64, r1 as u64)) * deg * conn * rest;
            }
        }
    }
    memo.insert(key, total.clone());
    Ok(total)
}

fn plain(pairs: &[(usize, GroupElement)]) -> Partition {
    Partition::new(pairs.iter().map(|(p, _)| *p).collect()).expect("parts are positive")
}

/// `(1/|K_d|) · #{(σ̄, τ̄₁ … τ̄_r, ρ̄) : σ̄ ∈ C_ν̄, τ̄ᵢ ∈ T, ρ̄ ∈ C_μ̄, σ̄ τ̄₁ ⋯ τ̄_r ρ̄ = 1}`
/// by direct multiplication in `K_d`. `T` is the class of transpositions
/// with weight zero. Connected counts require the image in `Σ_d` to be transitive.
pub fn wreath_hurwitz_bruteforce(
    genus: i64,
    k: &impl AbelianGroup,
    nu: &WeightedPartition,
    mu: &WeightedPartition,
    connected: bool,
) -> Result<ExactRational> {
    wreath_hurwitz_bruteforce_with_ceiling(genus, k, nu, mu, connected, WREATH_BRUTE_FORCE_CEILING)
}

pub fn wreath_hurwitz_bruteforce_with_ceiling(
    genus: i64,
    k: &impl AbelianGroup,
    nu: &WeightedPartition,
    mu: &WeightedPartition,
    connected: bool,
    ceiling: u64,
) -> Result<ExactRational> {
    check_inputs(genus, k, nu, mu, connected)?;
    let d = nu.degree();
    let group_order = (k.order() as u64)
        .checked_pow(d as u32)
        .and_then(|p| p.checked_mul(factorial(d as u64).try_into().ok()?));
    let group_order = match group_order {
        Some(n) if n <= ceiling => n,
        _ => {
            return Err(Error::ResourceLimit(format!(
                "|K|^d d! exceeds the brute force ceiling {ceiling}"
            )))
        }
    };
    let r = ramification_count(genus, &nu.underlying(), &mu.underlying())?;
    if r < 0 {
        return Ok(ExactRational::zero());
    }
    let elements = wreath_elements(k, d);
    let transpositions: Vec<&WreathElement> = elements
        .iter()
        .filter(|e| cycle_type(e, k) == transposition_class(k, d))
        .collect();
    let target = mu.negated(k);

    let mut states: HashMap<(WreathElement, Vec<u8>), u128> = HashMap::new();
    for e in elements.iter().filter(|e| &cycle_type(e, k) == nu) {
        let labels = if connected { orbit_labels(e.permutation()) } else { Vec::new() };
        *states.entry((e.clone(), labels)).or_insert(0) += 1;
    }
    for _ in 0..r {
        let mut next: HashMap<(WreathElement, Vec<u8>), u128> = HashMap::new();
        for ((e, labels), count) in &states {
            for t in &transpositions {
                let product = e.compose(t, k);
                let l = if connected {
                    let moved: Vec<usize> = (0..d).filter(|&i| t.permutation()[i] != i).collect();
                    merge_labels(labels, moved[0], moved[1])
                } else {
                    Vec::new()
                };
                *next.entry((product, l)).or_insert(0) += count;
            }
        }
        states = next;
    }
    let count: u128 = states
        .iter()
        .filter(|((e, labels), _)| cycle_type(e, k) == target && (!connected || labels.iter().all(|&l| l == 0)))
        .map(|(_, c)| *c)
        .sum();
    Ok(ExactRational::new(BigInt::from(count), BigInt::from(group_order)))
}

/// Every element of `K_d`.
pub fn wreath_elements(k: &impl AbelianGroup, d: usize) -> Vec<WreathElement> {
    let elements = k.elements();
    let mut weight_vectors: Vec<Vec<GroupElement>> = vec![Vec::new()];
    for _ in 0..d {
        weight_vectors = weight_vectors
            .into_iter()
            .flat_map(|prefix| {
                elements.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for perm in permutations(d) {
        for weights in &weight_vectors {
            out.push(WreathElement {
                weights: weights.clone(),
                permutation: perm.clone(),
            });
        }
    }
    out
}

fn transposition_class(k: &impl AbelianGroup, d: usize) -> WeightedPartition {
    let mut pairs = vec![(2, k.identity())];
    pairs.extend(std::iter::repeat_n((1, k.identity()), d.saturating_sub(2)));
    WeightedPartition::new(pairs).expect("parts are positive")
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..d {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

fn orbit_labels(perm: &[usize]) -> Vec<u8> {
    let mut labels = vec![u8::MAX; perm.len()];
    let mut next = 0;
    for start in 0..perm.len() {
        if labels[start] != u8::MAX {
            continue;
        }
        let mut i = start;
        while labels[i] == u8::MAX {
            labels[i] = next;
            i = perm[i];
        }
        next += 1;
    }
    labels
}

fn merge_labels(labels: &[u8], i: usize, j: usize) -> Vec<u8> {
    let (keep, drop) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
    let mut map = HashMap::new();
    labels
        .iter()
        .map(|&l| if l == drop { keep } else { l })
        .map(|l| {
            let n = map.len() as u8;
            *map.entry(l).or_insert(n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::double_hurwitz;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn wp(s: &str, k: &impl AbelianGroup) -> WeightedPartition {
        WeightedPartition::parse(s, k).unwrap()
    }

    fn el(k: &FiniteAbelianGroup, r: &[i64]) -> GroupElement {
        k.element_of(r).unwrap()
    }

    #[test]
    fn character_analysis_examples() {
        let z4 = z(4);
        let faithful = analyze_character(&z4, &AbelianCharacter::new(&z4, &[1]).unwrap()).unwrap();
        assert_eq!(faithful.image_order, 4);
        assert_eq!(faithful.kernel.order(), 1);

        let v = FiniteAbelianGroup::parse("2x2").unwrap();
        let proj = analyze_character(&v, &AbelianCharacter::new(&v, &[1, 0]).unwrap()).unwrap();
        assert_eq!(proj.image_order, 2);
        assert_eq!(proj.kernel.elements(), vec![el(&v, &[0, 0]), el(&v, &[0, 1])]);
        assert!(proj.kernel.contains(&proj.k));

        let z1 = FiniteAbelianGroup::trivial();
        let triv = analyze_character(&z1, &AbelianCharacter::new(&z1, &[0]).unwrap()).unwrap();
        assert_eq!((triv.image_order, triv.kernel.order()), (1, 1));

        // Z₄ with φ(x) = 2x: image Z₂, kernel {0, 2}, k = 2·1 = 2
        let sq = analyze_character(&z4, &AbelianCharacter::new(&z4, &[2]).unwrap()).unwrap();
        assert_eq!(sq.image_order, 2);
        assert_eq!(sq.kernel.order(), 2);
        assert_eq!(sq.k, el(&z4, &[2]));
    }

    #[test]
    fn cycle_type_examples() {
        let z2 = z(2);
        let id = WreathElement::identity(&z2, 2);
        assert_eq!(cycle_type(&id, &z2), wp("1:0,1:0", &z2));
        let w = WreathElement::new(vec![el(&z2, &[1]), el(&z2, &[0])], vec![1, 0]).unwrap();
        assert_eq!(cycle_type(&w, &z2), wp("2:1", &z2));
        let w = WreathElement::new(vec![el(&z2, &[1]), el(&z2, &[1])], vec![1, 0]).unwrap();
        assert_eq!(cycle_type(&w, &z2), wp("2:0", &z2));
    }

    #[test]
    fn empty_plus_examples() {
        let z2 = z(2);
        let z3 = z(3);
        assert_eq!(empty_plus(&el(&z2, &[0]), 4, 2, &z2).unwrap(), wp("2:0,2:0", &z2));
        assert_eq!(empty_plus(&el(&z2, &[1]), 4, 2, &z2).unwrap(), wp("2:1,2:1", &z2));
        assert_eq!(empty_plus(&el(&z3, &[1]), 3, 3, &z3).unwrap(), wp("3:2", &z3));
        assert!(empty_plus(&el(&z2, &[1]), 3, 2, &z2).is_err());
    }

    #[test]
    fn degree_rho_examples() {
        assert_eq!(degree_rho(2, 1, true, 1), rat(2, 1));
        assert_eq!(degree_rho(2, 0, true, 1), rat(1, 2));
        assert_eq!(degree_rho(5, 3, false, 1), rat(0, 1));
        assert_eq!(degree_rho(3, 0, true, 2), rat(1, 1));
    }

    #[test]
    fn group_law() {
        let k = z(3);
        let elements = wreath_elements(&k, 3);
        assert_eq!(elements.len(), 27 * 6);
        let a = &elements[17];
        let b = &elements[101];
        let c = &elements[55];
        assert_eq!(a.compose(b, &k).compose(c, &k), a.compose(&b.compose(c, &k), &k));
        for e in &elements {
            assert_eq!(e.compose(&e.inverse(&k), &k), WreathElement::identity(&k, 3));
            assert_eq!(cycle_type(&e.inverse(&k), &k), cycle_type(e, &k).negated(&k));
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for k in [z(1), z(2), z(3)] {
            for d in 1..=3 {
                let elements = wreath_elements(&k, d);
                let mut counts: HashMap<WeightedPartition, u64> = HashMap::new();
                for e in &elements {
                    *counts.entry(cycle_type(e, &k)).or_insert(0) += 1;
                }
                let classes = weighted_partitions_of(d, &k).unwrap();
                assert_eq!(classes.len(), counts.len());
                let mut total = BigInt::zero();
                for c in &classes {
                    assert_eq!(c.class_size(&k), BigInt::from(counts[c]), "{c:?}");
                    total += c.class_size(&k);
                }
                assert_eq!(total, BigInt::from(elements.len()));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let v = FiniteAbelianGroup::parse("2x2").unwrap();
        let p = wp("2:1.0,1:0.1,1", &v);
        assert_eq!(p.to_string(), "2:1.0,1:0.0,1:0.1");
        assert_eq!(p.degree(), 4);
        assert!(WeightedPartition::parse("2:1", &v).is_err());
        assert!(FiniteAbelianGroup::parse("2x0").is_err());
        let z2 = z(2);
        // weights are reduced into the group
        assert_eq!(wp("2:3", &z2), wp("2:1", &z2));
        assert_eq!(wp("3:-1", &z(3)), wp("3:2", &z(3)));
    }

    #[test]
    fn wreath_examples() {
        let z2 = z(2);
        let a = wp("2:0", &z2);
        let b = wp("2:1", &z2);
        assert_eq!(wreath_double_hurwitz(0, &z2, &a, &a, true).unwrap(), rat(1, 4));
        assert_eq!(wreath_double_hurwitz(0, &z2, &b, &a, true).unwrap(), rat(0, 1));
        assert_eq!(wreath_double_hurwitz(0, &z2, &b, &b, true).unwrap(), rat(1, 4));
        assert_eq!(wreath_hurwitz_bruteforce(0, &z2, &a, &a, false).unwrap(), rat(1, 4));
        assert_eq!(wreath_hurwitz_bruteforce(0, &z2, &b, &a, false).unwrap(), rat(0, 1));
        assert!(matches!(
            wreath_hurwitz_bruteforce(0, &z(10), &wp("5", &z(10)), &wp("5", &z(10)), true),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn trivial_group_matches_ordinary_brute_force() {
        let z1 = FiniteAbelianGroup::trivial();
        for d in 1..=4 {
            for nu in crate::combinatorics::partitions_of(d).unwrap() {
                for mu in crate::combinatorics::partitions_of(d).unwrap() {
                    let nb = wp(&nu.to_string(), &z1);
                    let mb = wp(&mu.to_string(), &z1);
                    for connected in [false, true] {
                        let q = crate::hurwitz::HurwitzQuery::new(0, nu.clone(), mu.clone(), connected).unwrap();
                        assert_eq!(
                            wreath_hurwitz_bruteforce(0, &z1, &nb, &mb, connected).unwrap(),
                            crate::hurwitz::brute_force_hurwitz(&q).unwrap()
                        );
                    }
                }
            }
        }
    }

    fn reduction_matches_brute(k: &FiniteAbelianGroup, max_d: usize, max_g: i64) {
        for d in 1..=max_d {
            let classes = weighted_partitions_of(d, k).unwrap();
            for nu in &classes {
                for mu in &classes {
                    for g in 0..=max_g {
                        for connected in [false, true] {
                            let fast = wreath_double_hurwitz(g, k, nu, mu, connected).unwrap();
                            let slow = wreath_hurwitz_bruteforce(g, k, nu, mu, connected).unwrap();
                            assert_eq!(fast, slow, "g={g} {nu:?} {mu:?} connected={connected}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_matches_brute_force_z2() {
        reduction_matches_brute(&z(2), 3, 1);
    }

    #[test]
    fn reduction_matches_brute_force_z3() {
        // Z₃ distinguishes k from −k, pinning down the sign conventions
        reduction_matches_brute(&z(3), 2, 1);
    }

    #[test]
    fn zero_weights_recover_ordinary_numbers() {
        let z2 = z(2);
        for d in 1..=4 {
            for nu in crate::combinatorics::partitions_of(d).unwrap() {
                for mu in crate::combinatorics::partitions_of(d).unwrap() {
                    for g in 0..=2 {
                        let value = wreath_double_hurwitz(g, &z2, &wp(&nu.to_string(), &z2), &wp(&mu.to_string(), &z2), true)
                            .unwrap();
                        let plain = double_hurwitz(g, &nu, &mu, true).unwrap();
                        assert_eq!(value, plain * degree_rho(2, g, true, 1));
                    }
                }
            }
        }
    }

    fn element_strategy(order: u64, d: usize) -> impl Strategy<Value = WreathElement> {
        (
            proptest::collection::vec(0..order, d),
            Just((0..d).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(|(w, p)| WreathElement::new(w.into_iter().map(|x| GroupElement(vec![x])).collect(), p).unwrap())
    }

    proptest! {
        #[test]
        fn cycle_type_is_a_class_function(
            (order, u, w) in (1u64..=3, 1usize..=4).prop_flat_map(|(n, d)| (Just(n), element_strategy(n, d), element_strategy(n, d)))
        ) {
            let k = z(order);
            let conj = u.compose(&w, &k).compose(&u.inverse(&k), &k);
            prop_assert_eq!(cycle_type(&conj, &k), cycle_type(&w, &k));
        }
    }
}
