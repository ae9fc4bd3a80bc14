//! End-to-end verification suite.
//!
//! `quick` holds the closed-form values and the CLI examples; `full` adds the
//! oracle sweeps. Every check compares exact rationals.

use std::fmt;
use std::path::Path;

use crate::characters::character_table;
use crate::combinatorics::{partitions_of, MonodromyVector, Partition};
use crate::error::Result;
use crate::hodge::{
    combined_integral_za, genus0_lambda1_integral, hodge_integral_one_part, one_part_f_series, integral_from_hurwitz,
    bg_integral_roundtrip, unstable_integral, IntegralBranch, IntegralQuery, UnstableCase,
};
use crate::hurwitz::{brute_force_hurwitz, double_hurwitz, gjv_one_part_check, HurwitzQuery};
use crate::rational::{int, pow_signed, rat, render_rational, ExactRational, RenderFormat};
use crate::wreath::{
    analyze_character, degree_rho, weighted_partitions_of, wreath_double_hurwitz, wreath_hurwitz_bruteforce,
    AbelianCharacter, AbelianGroup, FiniteAbelianGroup, WeightedPartition,
};

use super::cache::{warm_cache, CacheStatus};

/// Largest degree whose character table the suite touches.
pub const SUITE_MAX_DEGREE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl VerifyLevel {
    pub fn name(self) -> &'static str {
        match self {
            VerifyLevel::Quick => "quick",
            VerifyLevel::Full => "full",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{mark} {:<12} {}: expected {}, got {}", self.id, self.name, self.expected, self.got)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    /// Status of each cached table, by degree; empty without a cache directory.
    pub cache: Vec<(usize, CacheStatus)>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Outcome {
    expected: String,
    got: String,
}

impl Outcome {
    fn values(expected: &[ExactRational], got: &[ExactRational]) -> Self {
        let show = |v: &[ExactRational]| {
            v.iter().map(|q| render_rational(q, RenderFormat::Plain)).collect::<Vec<_>>().join(", ")
        };
        Outcome {
            expected: show(expected),
            got: show(got),
        }
    }
}

/// Counts agreeing pairs and keeps the first disagreement.
#[derive(Default)]
struct Sweep {
    total: usize,
    first_failure: Option<String>,
    failures: usize,
}

impl Sweep {
    fn compare(&mut self, label: impl FnOnce() -> String, lhs: &ExactRational, rhs: &ExactRational) {
        self.total += 1;
        if lhs != rhs {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(format!(
                    "{}: {} vs {}",
                    label(),
                    render_rational(lhs, RenderFormat::Plain),
                    render_rational(rhs, RenderFormat::Plain)
                ));
            }
        }
    }

    fn outcome(self) -> Outcome {
        let expected = format!("{} of {} agree", self.total, self.total);
        let mut got = format!("{} of {} agree", self.total - self.failures, self.total);
        if let Some(f) = self.first_failure {
            got.push_str(&format!(" (first: {f})"));
        }
        Outcome { expected, got }
    }
}

pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub level: VerifyLevel,
    run: fn() -> Result<Outcome>,
}

impl Check {
    pub fn run(&self) -> CheckResult {
        let (expected, got) = match (self.run)() {
            Ok(o) => (o.expected, o.got),
            Err(e) => ("a value".to_string(), format!("error: {e}")),
        };
        CheckResult {
            id: self.id,
            name: self.name,
            pass: expected == got,
            expected,
            got,
        }
    }
}

fn p(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

fn mv(a: usize, entries: &[i64]) -> Result<MonodromyVector> {
    MonodromyVector::new(a, entries)
}

fn za(g: i64, a: usize, gamma: &[i64], mu: &str) -> Result<ExactRational> {
    Ok(combined_integral_za(&IntegralQuery::connected(g, mv(a, gamma)?, p(mu))?)?.value)
}

fn check_hurwitz_half() -> Result<Outcome> {
    let got = double_hurwitz(0, &p("1,1"), &p("1,1"), true)?;
    Ok(Outcome::values(&[rat(1, 2)], &[got]))
}

fn check_integral_half() -> Result<Outcome> {
    Ok(Outcome::values(&[rat(1, 2)], &[za(0, 2, &[1, 1], "1,1")?]))
}

fn check_lambda1() -> Result<Outcome> {
    let extracted = genus0_lambda1_integral(&mv(2, &[1, 1])?, &p("1,1"))?;
    // the same class pulled back from M̄_{1,1} under a degree 6 map
    let pulled = int(6) * hodge_integral_one_part(1, 0, &mv(1, &[])?)?;
    let chain = int(1) - int(2) * &pulled;
    Ok(Outcome::values(&[rat(1, 4), rat(1, 4), rat(1, 2)], &[extracted, pulled, chain]))
}

fn check_vanishing() -> Result<Outcome> {
    let mut got = Vec::new();
    for n in [3usize, 5, 7] {
        let v = combined_integral_za(&IntegralQuery::connected(0, mv(2, &vec![1; n])?, p("1"))?)?;
        got.push(if v.branch == IntegralBranch::Vanishing { v.value } else { int(-1) });
    }
    Ok(Outcome::values(&[rat(0, 1), rat(0, 1), rat(0, 1)], &got))
}

fn check_series() -> Result<Outcome> {
    let f1 = one_part_f_series(&mv(1, &[])?, 2)?;
    let f2 = one_part_f_series(&mv(2, &[])?, 2)?;
    Ok(Outcome::values(
        &[rat(1, 24), rat(1, 24), rat(1, 2), rat(1, 48)],
        &[f1.coefficient(2, 0), f1.coefficient(2, 1), f2.coefficient(0, 0), f2.coefficient(2, 0)],
    ))
}

fn check_degree_rho() -> Result<Outcome> {
    let got = [
        degree_rho(2, 0, true, 1),
        degree_rho(2, 1, true, 1),
        degree_rho(4, 2, true, 1),
        degree_rho(2, 1, false, 1),
        degree_rho(3, 0, false, 1),
    ];
    Ok(Outcome::values(&[rat(1, 2), rat(2, 1), rat(64, 1), rat(0, 1), rat(0, 1)], &got))
}

fn check_unstable() -> Result<Outcome> {
    let one_point = unstable_integral(UnstableCase::OnePoint, 2, &int(2), &int(0))?;
    let two_point = unstable_integral(UnstableCase::TwoPoint, 3, &int(2), &int(1))?;
    let inverted = integral_from_hurwitz(&IntegralQuery::connected(0, mv(2, &[])?, p("2"))?)?;
    let dispatched = za(0, 2, &[], "2")?;
    let d1 = za(0, 2, &[1], "1")?;
    Ok(Outcome::values(
        &[rat(1, 8), rat(1, 9), rat(1, 8), rat(1, 8), rat(1, 2)],
        &[one_point, two_point, inverted, dispatched, d1],
    ))
}

fn check_wreath_value() -> Result<Outcome> {
    let z2 = FiniteAbelianGroup::cyclic(2)?;
    let x = WeightedPartition::parse("2:0", &z2)?;
    let y = WeightedPartition::parse("2:1", &z2)?;
    Ok(Outcome::values(
        &[rat(1, 4), rat(1, 4)],
        &[
            wreath_double_hurwitz(0, &z2, &x, &x, true)?,
            wreath_double_hurwitz(0, &z2, &y, &y, true)?,
        ],
    ))
}

fn cli_value(args: &[&str]) -> Result<ExactRational> {
    let (code, out) = super::run(args.iter().map(|s| s.to_string()));
    if code != 0 {
        return crate::error::invalid(format!("exit code {code}: {}", out.trim()));
    }
    crate::rational::parse_rational(&out)
}

fn check_cli() -> Result<Outcome> {
    let got = [
        cli_value(&["hurwitz", "--genus", "0", "--nu", "3", "--mu", "3"])?,
        cli_value(&["integral", "--a", "2", "--genus", "0", "--gamma", "1,1", "--mu", "1,1"])?,
        cli_value(&["wreath", "--genus", "0", "--group", "2", "--nu", "2:1", "--mu", "2:1"])?,
    ];
    Ok(Outcome::values(&[rat(1, 3), rat(1, 2), rat(1, 4)], &got))
}

fn check_one_part_law() -> Result<Outcome> {
    let mut sweep = Sweep::default();
    for d in 1..=5usize {
        let target = Partition::single(d);
        for gamma in partitions_of(d)? {
            let n = gamma.len() as i64;
            let law = int(crate::rational::factorial(n as u64 - 1)) / int(gamma.aut_order())
                * pow_signed(&int(d as i64), n - 2);
            let got = double_hurwitz(0, &gamma, &target, true)?;
            sweep.compare(|| format!("H_0({gamma}, ({d}))"), &got, &law);
            let entries: Vec<i64> = gamma.parts().iter().map(|&x| x as i64).collect();
            for a in d + 1..=d + 3 {
                let integral = za(0, a, &entries, &d.to_string())?;
                let expected = pow_signed(&int(d as i64), n - 2) / int(a as i64);
                sweep.compare(|| format!("a={a} γ={gamma}"), &integral, &expected);
            }
        }
    }
    Ok(sweep.outcome())
}

fn check_gjv() -> Result<Outcome> {
    let mut sweep = Sweep::default();
    for d in 1..=6usize {
        let target = Partition::single(d);
        for nu in partitions_of(d)? {
            let series = gjv_one_part_check(&nu, d, 3)?;
            for (g, value) in series.iter().enumerate() {
                let direct = double_hurwitz(g as i64, &nu, &target, true)?;
                sweep.compare(|| format!("g={g} ν={nu}"), value, &direct);
            }
        }
    }
    Ok(sweep.outcome())
}

fn check_oracle() -> Result<Outcome> {
    let mut sweep = Sweep::default();
    for d in 1..=5usize {
        let parts = partitions_of(d)?;
        for nu in &parts {
            for mu in &parts {
                for connected in [true, false] {
                    let lowest = if connected { 0 } else { 1 - d as i64 };
                    for g in lowest..=2 {
                        let q = HurwitzQuery::new(g, nu.clone(), mu.clone(), connected)?;
                        let frobenius = double_hurwitz(g, nu, mu, connected)?;
                        let counted = brute_force_hurwitz(&q)?;
                        sweep.compare(|| format!("{q:?}"), &frobenius, &counted);
                    }
                }
            }
        }
    }
    Ok(sweep.outcome())
}

fn check_wreath_oracle() -> Result<Outcome> {
    let z2 = FiniteAbelianGroup::cyclic(2)?;
    let mut sweep = Sweep::default();
    for d in 1..=3usize {
        let all = weighted_partitions_of(d, &z2)?;
        for nu in &all {
            for mu in &all {
                for connected in [true, false] {
                    let lowest = if connected { 0 } else { 1 - d as i64 };
                    for g in lowest..=2 {
                        let reduced = wreath_double_hurwitz(g, &z2, nu, mu, connected)?;
                        let counted = wreath_hurwitz_bruteforce(g, &z2, nu, mu, connected)?;
                        sweep.compare(|| format!("g={g} ν̄={nu:?} μ̄={mu:?} connected={connected}"), &reduced, &counted);
                    }
                }
            }
        }
    }
    Ok(sweep.outcome())
}

fn check_roundtrip() -> Result<Outcome> {
    let mut sweep = Sweep::default();
    for group in [FiniteAbelianGroup::parse("2x2")?, FiniteAbelianGroup::cyclic(4)?] {
        for exps in group.elements() {
            let exps: Vec<i64> = exps.residues().iter().map(|&e| e as i64).collect();
            let character = AbelianCharacter::new(&group, &exps)?;
            let kernel = analyze_character(&group, &character)?.kernel;
            for d in 1..=4usize {
                for mu_bar in weighted_partitions_of(d, &kernel)? {
                    for g in 0..=1 {
                        let (lhs, rhs) = bg_integral_roundtrip(g, &group, &character, &mu_bar)?;
                        sweep.compare(|| format!("{group:?} R={exps:?} g={g} μ̄={mu_bar:?}"), &lhs, &rhs);
                    }
                }
            }
        }
    }
    Ok(sweep.outcome())
}

fn check_character_tables() -> Result<Outcome> {
    // column orthogonality: Σ_λ χ^λ(μ)² = |Z(μ)|
    let mut sweep = Sweep::default();
    for d in 1..=SUITE_MAX_DEGREE {
        let table = character_table(d)?;
        for (j, mu) in table.partitions().iter().enumerate() {
            let sum: i128 = table.values().iter().map(|row| row[j] * row[j]).sum();
            sweep.compare(|| format!("d={d} μ={mu}"), &int(sum), &int(mu.z_order()));
        }
    }
    Ok(sweep.outcome())
}

/// Every check in suite order. Quick checks come first.
pub fn checks() -> Vec<Check> {
    use VerifyLevel::{Full, Quick};
    let c = |id, name, level, run| Check { id, name, level, run };
    vec![
        c("1a", "connected H_0((1,1),(1,1))", Quick, check_hurwitz_half as fn() -> Result<Outcome>),
        c("1b", "Z_2 integral, γ=(1,1), μ=(1,1)", Quick, check_integral_half),
        c("2", "λ₁ over the four-point Z_2 space", Quick, check_lambda1),
        c("3", "vanishing family, n = 3, 5, 7", Quick, check_vanishing),
        c("6", "one-part series coefficients", Quick, check_series),
        c("9a", "quotient degree branches", Quick, check_degree_rho),
        c("10", "unstable integrals", Quick, check_unstable),
        c("wreath", "Z_2 wreath value", Quick, check_wreath_value),
        c("cli", "command-line examples", Quick, check_cli),
        c("tables", "character table orthogonality", Full, check_character_tables),
        c("4", "genus 0 one-part law, d ≤ 5", Full, check_one_part_law),
        c("5", "one-part series vs Frobenius, d ≤ 6, g ≤ 3", Full, check_gjv),
        c("7", "Frobenius vs factorization count, d ≤ 5, g ≤ 2", Full, check_oracle),
        c("8", "wreath reduction vs count, Z_2, d ≤ 3, g ≤ 2", Full, check_wreath_oracle),
        c("9b", "BG integral roundtrip, Z_2×Z_2 and Z_4, d ≤ 4", Full, check_roundtrip),
    ]
}

/// Checks that belong to `level`; quick is a strict subset of full.
pub fn checks_for(level: VerifyLevel) -> Vec<Check> {
    checks()
        .into_iter()
        .filter(|c| level == VerifyLevel::Full || c.level == VerifyLevel::Quick)
        .collect()
}

pub fn run_check(id: &str) -> Option<CheckResult> {
    checks().into_iter().find(|c| c.id == id).map(|c| c.run())
}

pub fn verify_suite(level: VerifyLevel, cache_dir: Option<&Path>) -> Result<VerifyReport> {
    let cache = match cache_dir {
        Some(dir) => (1..).zip(warm_cache(dir, SUITE_MAX_DEGREE)?).collect(),
        None => Vec::new(),
    };
    Ok(VerifyReport {
        level,
        cache,
        checks: checks_for(level).iter().map(Check::run).collect(),
    })
}
