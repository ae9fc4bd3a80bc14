//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and returns the exit
//! code with the text to print. Exit codes: 0 success, 1 not computable or a
//! failed verification, 2 invalid input, 3 resource limit.

pub mod cache;
pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combinatorics::{MonodromyVector, Partition};
use crate::error::{invalid, Error, Result};
use crate::hodge::{
    combined_integral_abelian, combined_integral_za, one_part_f_series, IntegralQuery, IntegralValue, MarkedPoint,
};
use crate::hurwitz::{brute_force_hurwitz, double_hurwitz, HurwitzQuery};
use crate::rational::{json_value, ExactRational};
use crate::wreath::{
    wreath_double_hurwitz, wreath_hurwitz_bruteforce, AbelianCharacter, FiniteAbelianGroup, GroupElement,
    WeightedPartition,
};

use self::verify::{verify_suite, VerifyLevel, VerifyReport};

pub use crate::rational::{render_rational, RenderFormat};

#[derive(Debug, Parser)]
#[command(name = "hurwitz-hodge", version, about = "Exact Hurwitz numbers and Hodge integrals")]
struct Cli {
    /// Print a JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for cached character tables.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Double Hurwitz number H_g(ν, μ).
    Hurwitz {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        mu: String,
        /// Allow disconnected covers.
        #[arg(long)]
        disconnected: bool,
        /// Count factorizations directly (d ≤ 6).
        #[arg(long)]
        brute_force: bool,
    },
    /// Wreath Hurwitz number H_{g,K}(ν̄, μ̄) with weighted partitions "part:w,…".
    Wreath {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
        /// "2" or "2x2".
        #[arg(long)]
        group: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        disconnected: bool,
        #[arg(long)]
        brute_force: bool,
    },
    /// Linear Hodge integral over M̄_g(BZ_a), or over M̄_g(BG) with --group.
    Integral {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
        #[arg(long, required_unless_present = "group")]
        a: Option<usize>,
        /// Monodromies of the points without ψ̄ factor.
        #[arg(long, default_value = "", conflicts_with = "group")]
        gamma: String,
        #[arg(long, required_unless_present = "group", conflicts_with = "group")]
        mu: Option<String>,
        #[arg(long)]
        disconnected: bool,
        /// Abelian group G, e.g. "2x2".
        #[arg(long, requires_all = ["character", "points"])]
        group: Option<String>,
        /// Character exponents, one per cyclic factor, e.g. "1.0".
        #[arg(long, requires = "group")]
        character: Option<String>,
        /// Marked points "monodromy[:weight],…", e.g. "1.0:1,1.0:1".
        #[arg(long, requires = "group")]
        points: Option<String>,
    },
    /// One-part series F_γ(t, z) truncated at t^order.
    Series {
        #[arg(long)]
        a: usize,
        #[arg(long, default_value = "")]
        gamma: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotComputable(_) => 1,
        Error::ResourceLimit(_) => 3,
        Error::InvalidInput(_)
        | Error::DegreeMismatch { .. }
        | Error::ConditionViolation(_)
        | Error::ParityViolation(_) => 2,
    }
}

/// Runs one command; `args` excludes the program name.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("hurwitz-hodge".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli) {
        Ok((code, out)) => (code, out),
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}

fn dispatch(cli: &Cli) -> Result<(i32, String)> {
    let cache = cli.cache_dir.as_deref();
    let value = match &cli.command {
        Command::Hurwitz {
            genus,
            nu,
            mu,
            disconnected,
            brute_force,
        } => {
            let (nu, mu) = (parse_partition(nu)?, parse_partition(mu)?);
            let q = HurwitzQuery::new(*genus, nu.clone(), mu.clone(), !disconnected)?;
            warm(cache, q.degree())?;
            let value = if *brute_force {
                brute_force_hurwitz(&q)?
            } else {
                double_hurwitz(*genus, &nu, &mu, !disconnected)?
            };
            let fields = json!({
                "command": "hurwitz",
                "genus": genus,
                "nu": nu.parts(),
                "mu": mu.parts(),
                "connected": !disconnected,
                "method": method(*brute_force),
            });
            (value, fields)
        }
        Command::Wreath {
            genus,
            group,
            nu,
            mu,
            disconnected,
            brute_force,
        } => {
            let k = FiniteAbelianGroup::parse(group)?;
            let (nu, mu) = (WeightedPartition::parse(nu, &k)?, WeightedPartition::parse(mu, &k)?);
            warm(cache, nu.degree())?;
            let value = if *brute_force {
                wreath_hurwitz_bruteforce(*genus, &k, &nu, &mu, !disconnected)?
            } else {
                wreath_double_hurwitz(*genus, &k, &nu, &mu, !disconnected)?
            };
            let fields = json!({
                "command": "wreath",
                "genus": genus,
                "group": k.cyclic_orders(),
                "nu": weighted_json(&nu),
                "mu": weighted_json(&mu),
                "connected": !disconnected,
                "method": method(*brute_force),
            });
            (value, fields)
        }
        Command::Integral {
            genus,
            a,
            gamma,
            mu,
            disconnected,
            group: Some(group),
            character,
            points,
        } => {
            if a.is_some() {
                return invalid("--a does not apply with --group");
            }
            let g = FiniteAbelianGroup::parse(group)?;
            let exponents = parse_residues(character.as_deref().unwrap_or_default())?;
            let character = AbelianCharacter::new(&g, &exponents)?;
            let points = parse_points(points.as_deref().unwrap_or_default(), &g)?;
            debug_assert!(gamma.is_empty() && mu.is_none());
            warm(cache, points.iter().map(|p| p.weight).sum())?;
            let v = combined_integral_abelian(*genus, &g, &character, &points, *disconnected)?;
            let fields = json!({
                "command": "integral",
                "genus": genus,
                "group": g.cyclic_orders(),
                "character": character.exponents(),
                "points": points
                    .iter()
                    .map(|p| json!({ "monodromy": p.monodromy.residues(), "weight": p.weight }))
                    .collect::<Vec<_>>(),
                "connected": !disconnected,
                "branch": v.branch.name(),
            });
            (v.value, fields)
        }
        Command::Integral {
            genus,
            a,
            gamma,
            mu,
            disconnected,
            ..
        } => {
            let a = a.expect("clap requires --a without --group");
            let gamma: MonodromyVector = format!("a={a};{gamma}").parse()?;
            let mu = parse_partition(mu.as_deref().unwrap_or_default())?;
            warm(cache, mu.degree())?;
            let q = IntegralQuery::new(*genus, gamma, mu, *disconnected)?;
            let IntegralValue { value, branch } = combined_integral_za(&q)?;
            let fields = json!({
                "command": "integral",
                "genus": genus,
                "a": a,
                "gamma": q.gamma.entries(),
                "mu": q.mu.parts(),
                "connected": !disconnected,
                "branch": branch.name(),
            });
            (value, fields)
        }
        Command::Series { a, gamma, order } => return series(*a, gamma, *order, cli.json),
        Command::Verify { level } => {
            let level = match level {
                Level::Quick => VerifyLevel::Quick,
                Level::Full => VerifyLevel::Full,
            };
            return Ok(verify_output(&verify_suite(level, cache)?, cli.json));
        }
    };
    let (value, mut fields) = value;
    Ok((0, render_value(&value, &mut fields, cli.json)))
}

fn render_value(value: &ExactRational, fields: &mut Value, as_json: bool) -> String {
    if as_json {
        fields["value"] = json_value(value);
        format!("{fields}\n")
    } else {
        format!("{}\n", render_rational(value, RenderFormat::Plain))
    }
}

fn method(brute_force: bool) -> &'static str {
    if brute_force {
        "brute-force"
    } else {
        "character"
    }
}

fn warm(cache: Option<&Path>, max_d: usize) -> Result<()> {
    if let Some(dir) = cache {
        cache::warm_cache(dir, max_d)?;
    }
    Ok(())
}

fn parse_partition(s: &str) -> Result<Partition> {
    let p: Partition = s.parse()?;
    if p.is_empty() {
        return invalid(format!("expected a nonempty partition, got {s:?}"));
    }
    Ok(p)
}

fn parse_residues(s: &str) -> Result<Vec<i64>> {
    s.split('.')
        .map(|r| {
            r.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad residue list {s:?}")))
        })
        .collect()
}

/// Parses `"1.0:1,0.1"`: monodromy residues, then an optional ψ̄ weight (default 0).
fn parse_points(s: &str, group: &FiniteAbelianGroup) -> Result<Vec<MarkedPoint>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let (monodromy, weight) = match item.split_once(':') {
                Some((m, w)) => (
                    m,
                    w.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad point weight in {item:?}")))?,
                ),
                None => (item, 0),
            };
            Ok(MarkedPoint {
                monodromy: GroupElement::parse(monodromy, group)?,
                weight,
            })
        })
        .collect()
}

fn weighted_json(w: &WeightedPartition) -> Value {
    w.pairs()
        .iter()
        .map(|(part, weight)| json!({ "part": part, "weight": weight.residues() }))
        .collect()
}

fn series(a: usize, gamma: &str, order: usize, as_json: bool) -> Result<(i32, String)> {
    let gamma: MonodromyVector = format!("a={a};{gamma}").parse()?;
    let f = one_part_f_series(&gamma, order)?;
    if !as_json {
        let mut text = f.render();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        return Ok((0, text));
    }
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|(j, l, c)| json!({ "t": j, "z": l, "coefficient": json_value(c) }))
        .collect();
    let out = json!({
        "command": "series",
        "a": a,
        "gamma": gamma.entries(),
        "order": order,
        "terms": terms,
    });
    Ok((0, format!("{out}\n")))
}

fn verify_output(report: &VerifyReport, as_json: bool) -> (i32, String) {
    let code = if report.all_pass() { 0 } else { 1 };
    if as_json {
        let out = json!({
            "command": "verify",
            "level": report.level.name(),
            "pass": report.all_pass(),
            "cache": report
                .cache
                .iter()
                .map(|(d, s)| json!({ "degree": d, "status": cache_status_name(s) }))
                .collect::<Vec<_>>(),
            "checks": report
                .checks
                .iter()
                .map(|c| json!({ "id": c.id, "name": c.name, "expected": c.expected, "got": c.got, "pass": c.pass }))
                .collect::<Vec<_>>(),
        });
        return (code, format!("{out}\n"));
    }
    let mut out = String::new();
    for (d, s) in &report.cache {
        match s {
            cache::CacheStatus::Rejected(why) => out.push_str(&format!("cache d={d}: rejected ({why}), rewritten\n")),
            s => out.push_str(&format!("cache d={d}: {}\n", cache_status_name(s))),
        }
    }
    for c in &report.checks {
        out.push_str(&format!("{c}\n"));
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{} checks passed\n", report.checks.len()));
    (code, out)
}

fn cache_status_name(s: &cache::CacheStatus) -> &'static str {
    match s {
        cache::CacheStatus::Loaded => "loaded",
        cache::CacheStatus::Written => "written",
        cache::CacheStatus::Rejected(_) => "rejected",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(s: &str) -> (i32, String) {
        run(s.split_whitespace())
    }

    #[test]
    fn examples() {
        assert_eq!(run_str("hurwitz --genus 0 --nu 3 --mu 3"), (0, "1/3\n".into()));
        assert_eq!(run_str("integral --a 2 --genus 0 --gamma 1,1 --mu 1,1"), (0, "1/2\n".into()));
        assert_eq!(run_str("wreath --genus 0 --group 2 --nu 2:1 --mu 2:1"), (0, "1/4\n".into()));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str("hurwitz --genus 0 --nu 3 --mu 2").0, 2);
        assert_eq!(run_str("hurwitz --genus 0 --nu 3 --mu 3 --bogus").0, 2);
        assert_eq!(run_str("hurwitz --genus 0 --nu 7 --mu 7 --brute-force").0, 3);
        assert_eq!(run_str("integral --a 5 --genus 0 --gamma 4,4 --mu 3").0, 1);
        assert_eq!(run_str("--help").0, 0);
        assert_eq!(run_str("integral --a 2 --genus 0 --gamma 1 --mu 2"), (0, "0\n".into()));
    }

    #[test]
    fn json_fields_are_sorted() {
        let (code, out) = run_str("--json hurwitz --genus 0 --nu 1,1 --mu 1,1");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"command\":\"hurwitz\",\"connected\":true,\"genus\":0,\"method\":\"character\",\
             \"mu\":[1,1],\"nu\":[1,1],\"value\":{\"den\":\"2\",\"num\":\"1\"}}\n"
        );
    }

    #[test]
    fn abelian_points() {
        let (code, out) = run_str("integral --genus 1 --group 2x2 --character 1.0 --points 1.0:1,1.0:1");
        assert_eq!((code, out.as_str()), (0, "1/6\n"));
        let (code, _) = run_str("integral --genus 1 --a 2 --group 2x2 --character 1.0 --points 1.0:1");
        assert_eq!(code, 2);
    }
}
