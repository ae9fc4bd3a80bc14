//! Irreducible characters of the symmetric group.
//!
//! Values come from the Murnaghan–Nakayama rule: `χ_λ(μ)` is the signed count
//! of ways to peel border strips of lengths `μ₁, μ₂, …` off the Young diagram
//! of `λ` (English convention), each strip of height `h` contributing
//! `(−1)^{h−1}`. Strips are found on the beta-set (abacus) encoding of `λ`:
//! removing a strip of length `k` moves one bead from position `b` to an empty
//! position `b − k`, and the number of beads jumped over is `h − 1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinatorics::{partitions_of, Partition};
use crate::error::{invalid, Error, Result};
use crate::rational::factorial;

/// Largest degree for which [`character_table`] builds a table.
pub const DEFAULT_TABLE_CEILING: usize = 30;

type Memo = HashMap<(Vec<usize>, Vec<usize>), i128>;

/// `χ_λ(μ)` for partitions of the same degree.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<i128> {
    if lambda.degree() != mu.degree() {
        return invalid(format!(
            "character degree mismatch: |λ| = {}, |μ| = {}",
            lambda.degree(),
            mu.degree()
        ));
    }
    Ok(mn_value(lambda.parts(), mu.parts(), &mut Memo::new()))
}

fn mn_value(lambda: &[usize], cycles: &[usize], memo: &mut Memo) -> i128 {
    let Some((&k, rest)) = cycles.split_first() else {
        return i128::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), cycles.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0i128;
    for (shape, sign) in remove_border_strips(lambda, k) {
        total += sign * mn_value(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// All shapes obtained by removing a border strip of length `k`, with signs.
fn remove_border_strips(lambda: &[usize], k: usize) -> Vec<(Vec<usize>, i128)> {
    let len = lambda.len();
    // beta numbers, strictly decreasing
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(j, &c)| c - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        out.push((shape, sign));
    }
    out
}

/// `f^λ`, the dimension of the irreducible representation.
pub fn dimension(lambda: &Partition) -> BigInt {
    let ones = Partition::ones(lambda.degree());
    BigInt::from(mn_value(lambda.parts(), ones.parts(), &mut Memo::new()))
}

/// `d! / Π hook lengths`.
pub fn hook_length_dimension(lambda: &Partition) -> BigInt {
    let conj = lambda.conjugate();
    let mut hooks = BigInt::from(1);
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    factorial(lambda.degree() as u64) / hooks
}

/// Sum of the contents `j − i` of the boxes of `λ`; this is the eigenvalue of
/// the class sum of transpositions on the `λ` isotypic component.
pub fn content_sum(lambda: &Partition) -> i64 {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &row)| (0..row).map(|j| j as i64 - i as i64).sum::<i64>())
        .sum()
}

/// Full character table of `Σ_d`, rows and columns in [`partitions_of`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    d: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<i128>>,
}

impl CharacterTable {
    /// Builds the table, one Murnaghan–Nakayama memo per row.
    pub fn compute(d: usize) -> Result<Self> {
        let partitions = partitions_of(d)?;
        let values: Vec<Vec<i128>> = partitions
            .par_iter()
            .map(|lambda| {
                let mut memo = Memo::new();
                partitions
                    .iter()
                    .map(|mu| mn_value(lambda.parts(), mu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        Self::from_values(d, values)
    }

    /// Wraps precomputed values; `values[i][j] = χ_{λ_i}(μ_j)` in canonical order.
    pub fn from_values(d: usize, values: Vec<Vec<i128>>) -> Result<Self> {
        let partitions = partitions_of(d)?;
        let n = partitions.len();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return invalid(format!("character table for d = {d} must be {n}x{n}"));
        }
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(CharacterTable {
            d,
            partitions,
            index,
            values,
        })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn values(&self) -> &[Vec<i128>] {
        &self.values
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Result<i128> {
        match (self.index_of(lambda), self.index_of(mu)) {
            (Some(i), Some(j)) => Ok(self.values[i][j]),
            _ => invalid(format!("({lambda}) or ({mu}) is not a partition of {}", self.d)),
        }
    }

    /// `f^λ`, read off the identity column.
    pub fn dimension(&self, lambda: &Partition) -> Result<i128> {
        self.value(lambda, &Partition::ones(self.d))
    }
}

fn tables() -> &'static Mutex<HashMap<usize, Arc<CharacterTable>>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The memoised character table of `Σ_d` with the default ceiling.
pub fn character_table(d: usize) -> Result<Arc<CharacterTable>> {
    character_table_with_ceiling(d, DEFAULT_TABLE_CEILING)
}

pub fn character_table_with_ceiling(d: usize, ceiling: usize) -> Result<Arc<CharacterTable>> {
    if d > ceiling {
        return Err(Error::ResourceLimit(format!(
            "character table for d = {d} exceeds the ceiling {ceiling}"
        )));
    }
    if let Some(t) = tables().lock().expect("table memo poisoned").get(&d) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(CharacterTable::compute(d)?);
    let mut memo = tables().lock().expect("table memo poisoned");
    Ok(Arc::clone(memo.entry(d).or_insert(table)))
}

/// Seeds the in-process memo, e.g. with a table read from a disk cache.
pub fn install_table(table: CharacterTable) -> Arc<CharacterTable> {
    let table = Arc::new(table);
    tables()
        .lock()
        .expect("table memo poisoned")
        .insert(table.degree(), Arc::clone(&table));
    table
}

/// Whether a table for `d` is already memoised.
pub fn is_memoised(d: usize) -> bool {
    tables().lock().expect("table memo poisoned").contains_key(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Trace of the permutation `perm` acting on the standard representation of
    /// `Σ_3`: the permutation character minus the trivial one.
    fn standard_rep_trace(perm: [usize; 3]) -> i128 {
        let fixed = (0..3).filter(|&i| perm[i] == i).count() as i128;
        fixed - 1
    }

    #[test]
    fn value_examples() {
        for mu in partitions_of(5).unwrap() {
            assert_eq!(character_value(&p("5"), &mu).unwrap(), 1);
        }
        assert_eq!(character_value(&p("1,1,1"), &p("2,1")).unwrap(), -1);
        // brute force over Σ_3: every 3-cycle has trace −1 on the standard rep
        let three_cycles = [[1, 2, 0], [2, 0, 1]];
        for c in three_cycles {
            assert_eq!(standard_rep_trace(c), -1);
        }
        assert_eq!(character_value(&p("2,1"), &p("3")).unwrap(), -1);
        assert!(character_value(&p("2,1"), &p("2")).is_err());
    }

    #[test]
    fn table_examples() {
        let t1 = CharacterTable::compute(1).unwrap();
        assert_eq!(t1.values(), &[vec![1]]);
        let t2 = CharacterTable::compute(2).unwrap();
        // rows and columns both in order (2), (1,1)
        assert_eq!(t2.values(), &[vec![1, 1], vec![-1, 1]]);
        // identity class first, the usual textbook layout
        let id = p("1,1");
        let swap = p("2");
        let textbook: Vec<Vec<i128>> = t2
            .partitions()
            .iter()
            .map(|l| vec![t2.value(l, &id).unwrap(), t2.value(l, &swap).unwrap()])
            .collect();
        assert_eq!(textbook, vec![vec![1, 1], vec![1, -1]]);
        assert!(matches!(
            character_table_with_ceiling(9, 8),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&p("4")), BigInt::from(1));
        assert_eq!(dimension(&p("2,1")), BigInt::from(2));
        assert_eq!(dimension(&p("2,2")), BigInt::from(2));
    }

    #[test]
    fn orthogonality_up_to_seven() {
        for d in 1..=7 {
            let t = CharacterTable::compute(d).unwrap();
            let parts = t.partitions();
            let z: Vec<BigInt> = parts.iter().map(Partition::z_order).collect();
            let class: Vec<BigInt> = parts.iter().map(Partition::class_size).collect();
            let dfact = factorial(d as u64);
            for i in 0..parts.len() {
                for k in 0..parts.len() {
                    // Σ_μ |C_μ| χ_λ(μ) χ_λ'(μ) = d! δ
                    let row: BigInt = (0..parts.len())
                        .map(|j| &class[j] * t.values()[i][j] * t.values()[k][j])
                        .sum();
                    let expect = if i == k { dfact.clone() } else { BigInt::from(0) };
                    assert_eq!(row, expect, "rows {i},{k} at d={d}");
                    let col: i128 = (0..parts.len()).map(|l| t.values()[l][i] * t.values()[l][k]).sum();
                    let expect = if i == k { z[i].clone() } else { BigInt::from(0) };
                    assert_eq!(BigInt::from(col), expect, "cols {i},{k} at d={d}");
                }
            }
            let squares: BigInt = parts.iter().map(|l| dimension(l).pow(2)).sum();
            assert_eq!(squares, dfact);
        }
    }

    #[test]
    fn murnaghan_nakayama_matches_hook_lengths() {
        for d in 1..=7 {
            for lambda in partitions_of(d).unwrap() {
                assert_eq!(dimension(&lambda), hook_length_dimension(&lambda), "{lambda:?}");
            }
        }
    }

    #[test]
    fn transposition_eigenvalue_is_content_sum() {
        for d in 2..=7 {
            let t = CharacterTable::compute(d).unwrap();
            let tau = Partition::transposition(d).unwrap();
            let size = tau.class_size();
            for lambda in t.partitions() {
                let chi = BigInt::from(t.value(lambda, &tau).unwrap());
                let f = BigInt::from(t.dimension(lambda).unwrap());
                assert_eq!(&size * chi, f * content_sum(lambda));
            }
        }
    }

    #[test]
    fn values_do_not_depend_on_memo_order() {
        let t = CharacterTable::compute(6).unwrap();
        for lambda in t.partitions().iter().rev() {
            for mu in t.partitions().iter().rev() {
                assert_eq!(character_value(lambda, mu).unwrap(), t.value(lambda, mu).unwrap());
            }
        }
        let shared = character_table(6).unwrap();
        assert_eq!(shared.values(), t.values());
    }
}
