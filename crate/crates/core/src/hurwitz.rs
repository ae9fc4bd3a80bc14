//! Double Hurwitz numbers.
//!
//! The disconnected count `H•_g(ν, μ)` is the identity coefficient of
//! `C_ν T^r C_μ / d!` in the centre of the group algebra of `Σ_d`, evaluated
//! through the character sum
//!
//! ```text
//! H•_g(ν, μ) = |C_ν| |C_μ| / (d!)² · Σ_λ χ_λ(ν) χ_λ(μ) ω_λ^r
//! ```
//!
//! where `ω_λ = |T| χ_λ(τ) / f_λ` is the content sum of `λ`. Connected numbers
//! are peeled off by inclusion-exclusion over the component that carries the
//! first (largest) part of `ν`. A direct enumeration of monodromy
//! factorizations serves as an independent oracle for small `d`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::{character_table, content_sum};
use crate::combinatorics::{genus_from_branch_points, ramification_count, split_multiset, Partition};
use crate::error::{invalid, Error, Result};
use crate::rational::{binomial, factorial, int, pow_signed, ExactRational};
use crate::series::BivariateSeries;

/// Default largest degree accepted by [`brute_force_hurwitz`].
pub const BRUTE_FORCE_CEILING: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub genus: i64,
    pub nu: Partition,
    pub mu: Partition,
    pub connected: bool,
}

impl HurwitzQuery {
    /// Checks `|ν| = |μ| ≥ 1`, and `g ≥ 0` for connected queries.
    pub fn new(genus: i64, nu: Partition, mu: Partition, connected: bool) -> Result<Self> {
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
        Ok(HurwitzQuery {
            genus,
            nu,
            mu,
            connected,
        })
    }

    pub fn degree(&self) -> usize {
        self.nu.degree()
    }

    /// The number of simple branch points `r = 2g − 2 + ℓ(ν) + ℓ(μ)`.
    pub fn branch_points(&self) -> i64 {
        2 * self.genus - 2 + self.nu.len() as i64 + self.mu.len() as i64
    }
}

/// `H_g(ν, μ)` or `H•_g(ν, μ)` according to `connected`.
pub fn double_hurwitz(genus: i64, nu: &Partition, mu: &Partition, connected: bool) -> Result<ExactRational> {
    let q = HurwitzQuery::new(genus, nu.clone(), mu.clone(), connected)?;
    if connected {
        connected_double_hurwitz(&q)
    } else {
        disconnected_double_hurwitz(&q)
    }
}

/// `H•_g(ν, μ)` through the character sum; the `connected` flag is ignored.
pub fn disconnected_double_hurwitz(q: &HurwitzQuery) -> Result<ExactRational> {
    ramification_count(q.genus, &q.nu, &q.mu)?;
    disconnected_by_branch_points(&q.nu, &q.mu, q.branch_points())
}

/// `H_g(ν, μ)` for connected covers; the `connected` flag is ignored.
pub fn connected_double_hurwitz(q: &HurwitzQuery) -> Result<ExactRational> {
    ramification_count(q.genus, &q.nu, &q.mu)?;
    if q.genus < 0 {
        return Ok(ExactRational::zero());
    }
    connected_by_branch_points(&q.nu, &q.mu, q.branch_points())
}

/// `H•` indexed by the number of branch points rather than the genus.
/// The empty cover counts once when `r = 0`.
pub(crate) fn disconnected_by_branch_points(nu: &Partition, mu: &Partition, r: i64) -> Result<ExactRational> {
    if nu.degree() != mu.degree() {
        return Err(Error::DegreeMismatch {
            left: nu.degree(),
            right: mu.degree(),
        });
    }
    if r < 0 {
        return Ok(ExactRational::zero());
    }
    let d = nu.degree();
    if d == 0 {
        return Ok(if r == 0 { ExactRational::one() } else { ExactRational::zero() });
    }
    let table = character_table(d)?;
    let (iv, im) = match (table.index_of(nu), table.index_of(mu)) {
        (Some(i), Some(j)) => (i, j),
        _ => return invalid("partition not in character table"),
    };
    let r = r as u32;
    let mut sum = BigInt::zero();
    for (row, lambda) in table.values().iter().zip(table.partitions()) {
        let (a, b) = (row[iv], row[im]);
        if a == 0 || b == 0 {
            continue;
        }
        let omega = BigInt::from(content_sum(lambda)).pow(r);
        sum += BigInt::from(a) * BigInt::from(b) * omega;
    }
    let d_fact = factorial(d as u64);
    Ok(ExactRational::new(
        sum * nu.class_size() * mu.class_size(),
        &d_fact * &d_fact,
    ))
}

/// Connected `H` indexed by branch points. Zero when `r` gives a fractional
/// or negative genus.
pub(crate) fn connected_by_branch_points(nu: &Partition, mu: &Partition, r: i64) -> Result<ExactRational> {
    if nu.degree() != mu.degree() {
        return Err(Error::DegreeMismatch {
            left: nu.degree(),
            right: mu.degree(),
        });
    }
    if nu.is_empty() || r < 0 {
        return Ok(ExactRational::zero());
    }
    let labeled = connected_labeled(nu, mu, r)?;
    Ok(labeled / int(nu.aut_order() * mu.aut_order()))
}

type LabeledKey = (Vec<usize>, Vec<usize>, i64);

fn connected_memo() -> &'static Mutex<HashMap<LabeledKey, ExactRational>> {
    static MEMO: OnceLock<Mutex<HashMap<LabeledKey, ExactRational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `|Aut ν||Aut μ| · H•`: covers with labeled cycles over 0 and ∞.
pub(crate) fn disconnected_labeled(nu: &Partition, mu: &Partition, r: i64) -> Result<ExactRational> {
    Ok(disconnected_by_branch_points(nu, mu, r)? * int(nu.aut_order() * mu.aut_order()))
}

/// `|Aut ν||Aut μ| · H` for connected covers.
///
/// A labeled disconnected cover splits uniquely into the component carrying
/// the first label of `ν` and the rest, so
/// `Ĥ•(ν, μ, r) = Σ ways · C(r, r₁) · Ĥ°(α, β, r₁) · Ĥ•(ν∖α, μ∖β, r − r₁)`.
pub(crate) fn connected_labeled(nu: &Partition, mu: &Partition, r: i64) -> Result<ExactRational> {
    if nu.is_empty() || r < 0 {
        return Ok(ExactRational::zero());
    }
    match genus_from_branch_points(r, nu.len(), mu.len()) {
        Some(g) if g >= 0 => {}
        _ => return Ok(ExactRational::zero()),
    }
    let key = (nu.parts().to_vec(), mu.parts().to_vec(), r);
    if let Some(v) = connected_memo().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let mut value = disconnected_labeled(nu, mu, r)?;
    for nu_split in split_multiset(nu.parts(), true) {
        let alpha = Partition::from_sorted(nu_split.taken);
        let nu_rest = Partition::from_sorted(nu_split.rest);
        for mu_split in split_multiset(mu.parts(), false) {
            if mu_split.taken.iter().sum::<usize>() != alpha.degree() {
                continue;
            }
            if nu_rest.is_empty() {
                // the whole cover is the anchored component
                continue;
            }
            let beta = Partition::from_sorted(mu_split.taken);
            let mu_rest = Partition::from_sorted(mu_split.rest);
            let ways = &nu_split.ways * &mu_split.ways;
            for r1 in 0..=r {
                let conn = connected_labeled(&alpha, &beta, r1)?;
                if conn.is_zero() {
                    continue;
                }
                let rest = disconnected_labeled(&nu_rest, &mu_rest, r - r1)?;
                if rest.is_zero() {
                    continue;
                }
                value -= int(&ways * binomial(r as u64, r1 as u64)) * conn * rest;
            }
        }
    }
    connected_memo().lock().unwrap().insert(key, value.clone());
    Ok(value)
}

/// Counts monodromy factorizations directly:
/// `(1/d!) · #{(σ, τ₁ … τ_r, ρ) : σ ∈ C_ν, τᵢ transpositions, ρ ∈ C_μ, σ τ₁ ⋯ τ_r ρ = 1}`,
/// restricted to transitive tuples when `q.connected`.
pub fn brute_force_hurwitz(q: &HurwitzQuery) -> Result<ExactRational> {
    brute_force_hurwitz_with_ceiling(q, BRUTE_FORCE_CEILING)
}

pub fn brute_force_hurwitz_with_ceiling(q: &HurwitzQuery, ceiling: usize) -> Result<ExactRational> {
    let d = q.degree();
    if d > ceiling {
        return Err(Error::ResourceLimit(format!(
            "brute force enumeration limited to d <= {ceiling}, got {d}"
        )));
    }
    let r = ramification_count(q.genus, &q.nu, &q.mu)?;
    if r < 0 {
        return Ok(ExactRational::zero());
    }
    let count = count_factorizations(&q.nu, &q.mu, r as usize, q.connected);
    Ok(ExactRational::new(BigInt::from(count), factorial(d as u64)))
}

fn cycle_type_of(perm: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn all_permutations(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..d as u8).collect();
    heap_permutations(d, &mut current, &mut out);
    out
}

fn heap_permutations(k: usize, a: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, a, out);
}

/// Orbit labels of a permutation, normalized so labels appear in first-seen order.
fn orbit_labels(perm: &[u8]) -> Vec<u8> {
    let mut labels = vec![u8::MAX; perm.len()];
    let mut next = 0;
    for start in 0..perm.len() {
        if labels[start] != u8::MAX {
            continue;
        }
        let mut i = start;
        while labels[i] == u8::MAX {
            labels[i] = next;
            i = perm[i] as usize;
        }
        next += 1;
    }
    labels
}

fn merge_labels(labels: &[u8], i: usize, j: usize) -> Vec<u8> {
    let (keep, drop) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
    let merged: Vec<u8> = labels.iter().map(|&l| if l == drop { keep } else { l }).collect();
    // renormalize to first-seen order
    let mut map = [u8::MAX; 256];
    let mut next = 0;
    merged
        .iter()
        .map(|&l| {
            if map[l as usize] == u8::MAX {
                map[l as usize] = next;
                next += 1;
            }
            map[l as usize]
        })
        .collect()
}

/// Dynamic programme over `(σ τ₁ ⋯ τ_k, orbits of ⟨σ, τ₁ … τ_k⟩)`.
fn count_factorizations(nu: &Partition, mu: &Partition, r: usize, connected: bool) -> u128 {
    let d = nu.degree();
    let mut states: HashMap<(Vec<u8>, Vec<u8>), u128> = HashMap::new();
    for perm in all_permutations(d) {
        if cycle_type_of(&perm) == nu.parts() {
            let labels = if connected { orbit_labels(&perm) } else { Vec::new() };
            *states.entry((perm, labels)).or_insert(0) += 1;
        }
    }
    for _ in 0..r {
        let mut next: HashMap<(Vec<u8>, Vec<u8>), u128> = HashMap::new();
        for ((perm, labels), count) in &states {
            for i in 0..d {
                for j in i + 1..d {
                    // right multiplication by the transposition (i j)
                    let mut p = perm.clone();
                    p.swap(i, j);
                    let l = if connected { merge_labels(labels, i, j) } else { Vec::new() };
                    *next.entry((p, l)).or_insert(0) += count;
                }
            }
        }
        states = next;
    }
    states
        .iter()
        .filter(|((perm, labels), _)| {
            cycle_type_of(perm) == mu.parts() && (!connected || labels.iter().all(|&l| l == 0))
        })
        .map(|(_, c)| *c)
        .sum()
}

/// `H_g(ν, (d))` for `g = 0 … g_max` read off the one-part generating series
///
/// ```text
/// H_g(ν, (d)) = (−1)^g r! d^{r−1} / |Aut ν| · [t^{2g}] Π_k S_k^{m_k(ν) − δ_{k,1}},
/// ```
///
/// with `S_k = sin(kt/2)/(kt/2)` and `r = 2g − 1 + ℓ(ν)`.
pub fn gjv_one_part_check(nu: &Partition, d: usize, g_max: usize) -> Result<Vec<ExactRational>> {
    if nu.degree() != d || d == 0 {
        return Err(Error::DegreeMismatch {
            left: nu.degree(),
            right: d,
        });
    }
    let t_order = 2 * g_max;
    let mut product = BivariateSeries::one(t_order);
    let mut exponents = nu.multiplicities();
    // S_1 appears with exponent −1 even when ν has no parts equal to 1
    exponents.entry(1).or_insert(0);
    for (&k, &m) in &exponents {
        let e = m as i64 - i64::from(k == 1);
        if e != 0 {
            let s = BivariateSeries::sin_ratio(t_order, &int(k as i64));
            product = product.mul(&s.powi(e)?);
        }
    }
    let aut = int(nu.aut_order());
    let dd = int(d as i64);
    Ok((0..=g_max)
        .map(|g| {
            let r = 2 * g as i64 - 1 + nu.len() as i64;
            let sign = if g % 2 == 0 { int(1) } else { int(-1) };
            let coeff = product.coeff(2 * g).as_constant().unwrap_or_default();
            sign * int(factorial(r as u64)) * pow_signed(&dd, r - 1) / &aut * coeff
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;
    use crate::rational::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(g: i64, nu: &str, mu: &str, connected: bool) -> HurwitzQuery {
        HurwitzQuery::new(g, p(nu), p(mu), connected).unwrap()
    }

    #[test]
    fn disconnected_examples() {
        assert_eq!(disconnected_double_hurwitz(&q(0, "1,1", "1,1", false)).unwrap(), rat(1, 2));
        assert_eq!(disconnected_double_hurwitz(&q(-1, "1,1", "1,1", false)).unwrap(), rat(1, 2));
        assert_eq!(disconnected_double_hurwitz(&q(0, "3", "3", false)).unwrap(), rat(1, 3));
        // r < 0
        assert_eq!(disconnected_double_hurwitz(&q(-1, "2", "2", false)).unwrap(), rat(0, 1));
        // r = 0 with different classes
        assert_eq!(disconnected_double_hurwitz(&q(-1, "2,2", "3,1", false)).unwrap(), rat(0, 1));
        assert_eq!(disconnected_double_hurwitz(&q(-1, "2,1", "1,1,1", false)).unwrap(), rat(1, 2));
    }

    #[test]
    fn degree_one() {
        assert_eq!(double_hurwitz(0, &p("1"), &p("1"), true).unwrap(), rat(1, 1));
        assert_eq!(double_hurwitz(1, &p("1"), &p("1"), false).unwrap(), rat(0, 1));
        assert_eq!(double_hurwitz(1, &p("1"), &p("1"), true).unwrap(), rat(0, 1));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_hurwitz(&q(0, "1,1", "1,1", false)).unwrap(), rat(1, 2));
        assert_eq!(brute_force_hurwitz(&q(1, "2", "2", true)).unwrap(), rat(1, 2));
        assert_eq!(brute_force_hurwitz(&q(0, "2", "1,1", true)).unwrap(), rat(1, 2));
        assert!(matches!(
            brute_force_hurwitz(&q(0, "7", "7", true)),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn connected_examples() {
        assert_eq!(connected_double_hurwitz(&q(0, "1,1", "1,1", true)).unwrap(), rat(1, 2));
        assert_eq!(connected_double_hurwitz(&q(0, "3", "3", true)).unwrap(), rat(1, 3));
        assert_eq!(connected_double_hurwitz(&q(1, "2", "2", true)).unwrap(), rat(1, 2));
        // two disjoint sheets with r = 0 are disconnected
        assert_eq!(disconnected_double_hurwitz(&q(-1, "1,1", "1,1", false)).unwrap(), rat(1, 2));
        assert_eq!(
            connected_by_branch_points(&p("1,1"), &p("1,1"), 0).unwrap(),
            rat(0, 1)
        );
    }

    #[test]
    fn input_errors() {
        assert!(matches!(
            HurwitzQuery::new(0, p("2"), p("1"), false),
            Err(Error::DegreeMismatch { left: 2, right: 1 })
        ));
        assert!(HurwitzQuery::new(-1, p("2"), p("2"), true).is_err());
        assert!(HurwitzQuery::new(0, Partition::empty(), Partition::empty(), false).is_err());
    }

    #[test]
    fn oracle_equivalence_small() {
        for d in 1..=4 {
            let parts = partitions_of(d).unwrap();
            for nu in &parts {
                for mu in &parts {
                    for g in 0..=1 {
                        for connected in [false, true] {
                            let query = HurwitzQuery::new(g, nu.clone(), mu.clone(), connected).unwrap();
                            let fast = if connected {
                                connected_double_hurwitz(&query)
                            } else {
                                disconnected_double_hurwitz(&query)
                            }
                            .unwrap();
                            assert_eq!(fast, brute_force_hurwitz(&query).unwrap(), "{query:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_and_bounds() {
        for d in 1..=6 {
            let parts = partitions_of(d).unwrap();
            for nu in &parts {
                for mu in &parts {
                    for g in 0..=2 {
                        let conn = double_hurwitz(g, nu, mu, true).unwrap();
                        let disc = double_hurwitz(g, nu, mu, false).unwrap();
                        assert_eq!(conn, double_hurwitz(g, mu, nu, true).unwrap());
                        assert_eq!(disc, double_hurwitz(g, mu, nu, false).unwrap());
                        assert!(conn >= rat(0, 1) && conn <= disc, "g={g} {nu:?} {mu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn gjv_examples() {
        assert_eq!(gjv_one_part_check(&p("1,1"), 2, 0).unwrap(), vec![rat(1, 2)]);
        assert_eq!(gjv_one_part_check(&p("2"), 2, 1).unwrap()[1], rat(1, 2));
        for d in 1..=7 {
            assert_eq!(gjv_one_part_check(&Partition::single(d), d, 0).unwrap(), vec![rat(1, d as i64)]);
        }
        assert!(gjv_one_part_check(&p("2"), 3, 1).is_err());
    }

    #[test]
    fn gjv_matches_connected() {
        for d in 1..=5 {
            for nu in partitions_of(d).unwrap() {
                let series = gjv_one_part_check(&nu, d, 2).unwrap();
                for (g, value) in series.iter().enumerate() {
                    let direct = double_hurwitz(g as i64, &nu, &Partition::single(d), true).unwrap();
                    assert_eq!(value, &direct, "g={g} nu={nu:?}");
                }
            }
        }
    }
}
