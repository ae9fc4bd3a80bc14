//! Linear Hurwitz-Hodge integrals over moduli of stable maps to `BZ_a` and,
//! through pull-back along the quotient by the kernel of a character, to `BG`
//! for abelian `G`.
//!
//! The combined integral
//!
//! ```text
//! I_g(γ, μ) = ∫ Σ_i (−a)^i λ_i^U / Π_j (1 − μ_j ψ̄_j)
//! ```
//!
//! is obtained from a double Hurwitz number by dividing out
//!
//! ```text
//! C = r! / (|Aut γ| |Aut μ|) · a^{1 − g − Σγᵢ/a + Σ⟨μ_j/a⟩} · Π_j μ_j^{⌊μ_j/a⌋} / ⌊μ_j/a⌋!
//! ```
//!
//! with `r = r_g(γ₊, μ)`. Inputs satisfying the vanishing hypotheses return 0,
//! and the two genus 0 moduli with fewer than three points use the
//! conventional values `1/(a x²)` and `1/(a (x + y))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{condition_flags, gamma_plus, MonodromyVector, Partition};
use crate::error::{invalid, Error, Result};
use crate::hurwitz::{double_hurwitz, disconnected_double_hurwitz, HurwitzQuery};
use crate::rational::{factorial, floor_div, int, pow_signed, rat, ExactRational};
use crate::series::{BivariateSeries, LaurentPoly};
use crate::wreath::{
    analyze_character, degree_rho, empty_plus, wreath_double_hurwitz, AbelianCharacter, AbelianGroup,
    FiniteAbelianGroup, GroupElement, WeightedPartition,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralQuery {
    pub genus: i64,
    pub gamma: MonodromyVector,
    pub mu: Partition,
    pub disconnected: bool,
}

impl IntegralQuery {
    /// Checks that the entries of `γ` are nontrivial, that `μ` is nonempty,
    /// that disconnected queries have `γ = ∅`, and that connected ones have `g ≥ 0`.
    pub fn new(genus: i64, gamma: MonodromyVector, mu: Partition, disconnected: bool) -> Result<Self> {
        gamma.require_nontrivial()?;
        if mu.is_empty() {
            return invalid("μ must be a nonempty partition");
        }
        if disconnected && !gamma.is_empty() {
            return invalid("the disconnected integral is only defined for γ = ∅");
        }
        if !disconnected && genus < 0 {
            return invalid(format!("connected integrals need g >= 0, got {genus}"));
        }
        Ok(IntegralQuery {
            genus,
            gamma,
            mu,
            disconnected,
        })
    }

    pub fn connected(genus: i64, gamma: MonodromyVector, mu: Partition) -> Result<Self> {
        Self::new(genus, gamma, mu, false)
    }

    pub fn modulus(&self) -> usize {
        self.gamma.modulus()
    }
}

/// Which result produced an integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralBranch {
    /// Inverted from a Hurwitz number.
    Formula,
    /// Zero by the negativity vanishing theorem.
    Vanishing,
    /// A genus 0 moduli space with fewer than three points.
    Unstable,
    /// Parity fails, so the moduli space is empty.
    EmptyModuli,
}

impl IntegralBranch {
    pub fn name(self) -> &'static str {
        match self {
            IntegralBranch::Formula => "formula",
            IntegralBranch::Vanishing => "vanishing",
            IntegralBranch::Unstable => "unstable",
            IntegralBranch::EmptyModuli => "empty-moduli",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralValue {
    pub value: ExactRational,
    pub branch: IntegralBranch,
}

impl IntegralValue {
    fn new(value: ExactRational, branch: IntegralBranch) -> Self {
        IntegralValue { value, branch }
    }
}

/// Rank of `E^U` over `M̄_{g, γ−μ}(BZ_a)`:
/// `g − 1 + Σγᵢ/a + Σ_{a ∤ μ_j} (1 − ⟨μ_j/a⟩)`, or `g` on the component with
/// trivial monodromy.
pub fn rank_eu(genus: i64, gamma: &MonodromyVector, mu: &Partition, trivial_monodromy_component: bool) -> Result<i64> {
    if trivial_monodromy_component {
        return Ok(genus);
    }
    let a = gamma.modulus() as i64;
    let mut rank = int(genus - 1) + gamma.sum_over_modulus();
    for &m in mu.parts() {
        let (_, rem) = floor_div(m as i64, a);
        if rem != 0 {
            rank += int(1) - rat(rem, a);
        }
    }
    if !rank.is_integer() {
        return Err(Error::ParityViolation(format!("rank {rank} is not an integer")));
    }
    Ok(rank.to_integer().try_into().expect("rank fits in i64"))
}

/// The constant `C` relating `H_g(γ₊, μ)` (or `H•`) to the combined integral.
pub fn hurwitz_prefactor(genus: i64, gamma: &MonodromyVector, mu: &Partition) -> Result<ExactRational> {
    let a = gamma.modulus() as i64;
    let d = mu.degree() as i64;
    let excess = d - gamma.sum() as i64;
    if excess.rem_euclid(a) != 0 {
        return Err(Error::ParityViolation(format!("d − Σγ = {excess} is not divisible by {a}")));
    }
    let n = gamma.len() as i64;
    let l = mu.len() as i64;
    let r = 2 * genus - 2 + n + l + excess / a;
    if r < 0 {
        return Err(Error::ConditionViolation(format!("negative branch point count {r}")));
    }
    // 1 − g − Σγ/a + Σ⟨μ_j/a⟩ = 1 − g + (d − Σγ)/a − Σ⌊μ_j/a⌋
    let mut exponent = 1 - genus + excess / a;
    let mut product = ExactRational::one();
    for &m in mu.parts() {
        let (q, _) = floor_div(m as i64, a);
        exponent -= q;
        product *= pow_signed(&int(m as i64), q) / int(factorial(q as u64));
    }
    Ok(int(factorial(r as u64)) / int(gamma.aut_order() * mu.aut_order()) * pow_signed(&int(a), exponent) * product)
}

/// `H / C` with `H = H_g(γ₊, μ)` or, for disconnected queries, `H•_g(∅₊, μ)`.
/// Requires parity, non-negativity and boundedness; ignores stability.
pub fn integral_from_hurwitz(q: &IntegralQuery) -> Result<ExactRational> {
    let flags = condition_flags(&q.gamma, &q.mu);
    if !flags.parity {
        return Err(Error::ParityViolation("d − Σγ is not divisible by a".into()));
    }
    if !flags.non_negative || !flags.bounded {
        return Err(Error::ConditionViolation("non-negativity or boundedness fails".into()));
    }
    let plus = gamma_plus(&q.gamma, q.mu.degree())?;
    let hurwitz = if q.disconnected {
        disconnected_double_hurwitz(&HurwitzQuery::new(q.genus, plus, q.mu.clone(), false)?)?
    } else {
        double_hurwitz(q.genus, &plus, &q.mu, true)?
    };
    if hurwitz.is_zero() {
        return Ok(hurwitz);
    }
    Ok(hurwitz / hurwitz_prefactor(q.genus, &q.gamma, &q.mu)?)
}

/// The combined integral, by whichever result applies.
///
/// Returns [`Error::NotComputable`] when negativity holds without
/// boundedness and without strong negativity.
pub fn combined_integral_za(q: &IntegralQuery) -> Result<IntegralValue> {
    let flags = condition_flags(&q.gamma, &q.mu);
    if !flags.parity {
        return Ok(IntegralValue::new(ExactRational::zero(), IntegralBranch::EmptyModuli));
    }
    if flags.non_negative && flags.bounded {
        let points = q.gamma.len() + q.mu.len();
        if !q.disconnected && q.genus == 0 && points < 3 {
            let a = q.modulus();
            let value = match (q.gamma.len(), q.mu.parts()) {
                (0, [x]) => unstable_integral(UnstableCase::OnePoint, a, &int(*x as i64), &ExactRational::zero())?,
                (0, [x, y]) => unstable_integral(UnstableCase::TwoPoint, a, &int(*x as i64), &int(*y as i64))?,
                // the γ-point carries no ψ̄ factor
                (1, [x]) => unstable_integral(UnstableCase::TwoPoint, a, &int(*x as i64), &ExactRational::zero())?,
                _ => unreachable!("fewer than three points with μ nonempty"),
            };
            return Ok(IntegralValue::new(value, IntegralBranch::Unstable));
        }
        return Ok(IntegralValue::new(integral_from_hurwitz(q)?, IntegralBranch::Formula));
    }
    if (flags.negative && flags.bounded) || flags.strongly_negative {
        return Ok(IntegralValue::new(ExactRational::zero(), IntegralBranch::Vanishing));
    }
    Err(Error::NotComputable(format!(
        "γ = {} and μ = {} satisfy negativity without boundedness or strong negativity",
        q.gamma, q.mu
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnstableCase {
    /// `M̄_{0,(0)}`: value `1/(a x²)`.
    OnePoint,
    /// `M̄_{0,(m,−m)}`: value `1/(a (x + y))`.
    TwoPoint,
}

pub fn unstable_integral(case: UnstableCase, a: usize, x: &ExactRational, y: &ExactRational) -> Result<ExactRational> {
    if a == 0 {
        return invalid("a must be positive");
    }
    let denominator = match case {
        UnstableCase::OnePoint => x * x,
        UnstableCase::TwoPoint => x + y,
    };
    if denominator.is_zero() {
        return invalid("unstable integral has a zero denominator");
    }
    Ok((int(a as i64) * denominator).recip())
}

/// The one-part series
///
/// ```text
/// F_γ(t, z) = Σ_{g, l} t^{2g} z^l ∫ ψ̄₀^{2g−2+ℓ(γ)+l} λ^U_{g−l}
///           = (1/a) · Π_{j=1}^{q} (−z − s + j) · (−z)^{−q} · S_a^{−z−s} · Π_k S_k^{m_k(γ) − δ_{k,1}}
/// ```
///
/// with `s = Σγᵢ/a`, `q = ⌊s⌋` and `S_k = sin(kt/2)/(kt/2)`, truncated at `t^{t_order}`.
pub fn one_part_f_series(gamma: &MonodromyVector, t_order: usize) -> Result<BivariateSeries> {
    gamma.require_nontrivial()?;
    let probe = Partition::empty();
    if !condition_flags(gamma, &probe).bounded {
        return Err(Error::ConditionViolation(format!("γ = {gamma} is not bounded")));
    }
    let a = gamma.modulus() as i64;
    let s = gamma.sum_over_modulus();
    let q = floor_div(gamma.sum() as i64, a).0;

    let mut prefactor = LaurentPoly::constant(rat(1, a));
    for j in 1..=q {
        prefactor = &prefactor * &LaurentPoly::linear(int(j) - &s, int(-1));
    }
    let sign = if q % 2 == 0 { int(1) } else { int(-1) };
    prefactor = &prefactor * &LaurentPoly::monomial(sign, -q);

    let alpha = LaurentPoly::linear(-s, int(-1));
    let mut series = BivariateSeries::sin_ratio(t_order, &int(a)).pow_laurent(&alpha)?;
    let mut exponents = gamma.as_partition().multiplicities();
    exponents.entry(1).or_insert(0);
    for (&k, &m) in &exponents {
        let e = m as i64 - i64::from(k == 1);
        if e != 0 {
            series = series.mul(&BivariateSeries::sin_ratio(t_order, &int(k as i64)).powi(e)?);
        }
    }
    Ok(series.scale(&prefactor))
}

/// `∫ ψ̄₀^{2g−2+ℓ(γ)+l} λ^U_{g−l}` over `M̄_{g, γ−(d)}(BZ_a)`, read off the one-part series.
pub fn hodge_integral_one_part(genus: usize, l: i64, gamma: &MonodromyVector) -> Result<ExactRational> {
    let psi = 2 * genus as i64 - 2 + gamma.len() as i64 + l;
    if psi < 0 {
        return invalid(format!("ψ̄ exponent {psi} is negative"));
    }
    if l > genus as i64 {
        return invalid(format!("l = {l} exceeds g = {genus}"));
    }
    Ok(one_part_f_series(gamma, 2 * genus)?.coefficient(2 * genus, l))
}

/// The combined integral for `μ = (d)` assembled from one-part coefficients:
/// `Σ_l (−a)^{g−l} d^{2g−2+n+l} F_γ[t^{2g} z^l]`. Terms with negative ψ̄
/// exponents reproduce the unstable values.
pub fn one_part_combined_integral(genus: usize, gamma: &MonodromyVector, d: usize) -> Result<ExactRational> {
    if d == 0 {
        return invalid("d must be positive");
    }
    let series = one_part_f_series(gamma, 2 * genus)?;
    let a = int(gamma.modulus() as i64);
    let dd = int(d as i64);
    let n = gamma.len() as i64;
    let g = genus as i64;
    Ok(series
        .coeff(2 * genus)
        .terms()
        .filter(|(l, _)| *l <= g)
        .map(|(l, c)| pow_signed(&-a.clone(), g - l) * pow_signed(&dd, 2 * g - 2 + n + l) * c)
        .sum())
}

/// `∫_{M̄_{0,n}} Π ψ_i^{e_i} = (n − 3)! / Π e_i!` when `Σ e_i = n − 3`, else 0.
pub fn genus0_psi_integral(exponents: &[u64]) -> Result<ExactRational> {
    let n = exponents.len() as u64;
    if n < 3 {
        return invalid("M̄_{0,n} needs n >= 3");
    }
    if exponents.iter().sum::<u64>() != n - 3 {
        return Ok(ExactRational::zero());
    }
    let denominator: BigInt = exponents.iter().map(|&e| factorial(e)).product();
    Ok(ExactRational::new(factorial(n - 3), denominator))
}

/// `∫ λ₁^U` over a genus 0 space `M̄_{0, γ−μ}(BZ_a)` with four points,
/// solved from the combined integral: `I = (1/a) Σ μ_j − a ∫ λ₁^U`.
pub fn genus0_lambda1_integral(gamma: &MonodromyVector, mu: &Partition) -> Result<ExactRational> {
    if gamma.len() + mu.len() != 4 {
        return invalid("the genus 0 λ₁ extraction needs exactly four marked points");
    }
    let a = int(gamma.modulus() as i64);
    let combined = combined_integral_za(&IntegralQuery::connected(0, gamma.clone(), mu.clone())?)?.value;
    // ψ̄_j integrates to 1/a on the one-dimensional space
    let psi_total = int(mu.degree() as i64) / &a;
    Ok((psi_total - combined) / a)
}

/// A marked point of `M̄_{g}(BG)`: its monodromy and the coefficient `μ_j`
/// of its `1/(1 − μ_j ψ̄_j)` factor (0 for a point without one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoint {
    pub monodromy: GroupElement,
    pub weight: usize,
}

/// The combined integral over `M̄_g(BG)` for abelian `G`, with `λ^R` the
/// Chern classes of the `R`-summand of the Hodge bundle.
///
/// Connected: `|K|^{2g−1}` times the `BZ_a` integral of the images under `φ^R`.
/// Disconnected (weighted points only): inverted from the wreath Hurwitz
/// number `H•_{g,K}(∅₊(k), μ̄)`.
pub fn combined_integral_abelian(
    genus: i64,
    group: &FiniteAbelianGroup,
    character: &AbelianCharacter,
    points: &[MarkedPoint],
    disconnected: bool,
) -> Result<IntegralValue> {
    let info = analyze_character(group, character)?;
    let a = info.image_order as usize;
    for p in points {
        group.element(&p.monodromy)?;
    }
    let total = group.sum(points.iter().map(|p| &p.monodromy));
    if total != group.identity() {
        return Ok(IntegralValue::new(ExactRational::zero(), IntegralBranch::EmptyModuli));
    }
    let mut gamma = Vec::new();
    let mut mu = Vec::new();
    for p in points {
        let image = character.evaluate(&p.monodromy) as usize;
        if p.weight == 0 {
            if image == 0 {
                return invalid(format!("point {} without ψ̄ factor has trivial image", p.monodromy));
            }
            gamma.push(image as i64);
        } else {
            if (image + p.weight) % a != 0 {
                return invalid(format!(
                    "point {} with weight {} needs image −{} mod {a}, got {image}",
                    p.monodromy, p.weight, p.weight
                ));
            }
            mu.push(p.weight);
        }
    }
    let gamma = MonodromyVector::new(a, &gamma)?;
    let mu = Partition::new(mu)?;
    if !disconnected {
        let value = combined_integral_za(&IntegralQuery::connected(genus, gamma, mu)?)?;
        let deg = degree_rho(info.kernel.order(), genus, true, 1);
        return Ok(IntegralValue::new(deg * value.value, value.branch));
    }
    if !gamma.is_empty() {
        return invalid("the disconnected integral takes only points with ψ̄ factors");
    }
    let d = mu.degree();
    if d % a != 0 {
        return Ok(IntegralValue::new(ExactRational::zero(), IntegralBranch::EmptyModuli));
    }
    // κ_j = g_j + μ_j x lies in the kernel
    let weighted = points
        .iter()
        .map(|p| (p.weight, group.add(&p.monodromy, &group.scale(&info.lift, p.weight as i64))))
        .collect();
    let mu_bar = WeightedPartition::in_group(weighted, &info.kernel)?;
    let empty = empty_plus(&info.k, d, a, &info.kernel)?;
    let hurwitz = wreath_double_hurwitz(genus, &info.kernel, &empty, &mu_bar, false)?;
    if hurwitz.is_zero() {
        return Ok(IntegralValue::new(hurwitz, IntegralBranch::Formula));
    }
    let query = IntegralQuery::new(genus, MonodromyVector::empty(a)?, mu, true)?;
    let c = hurwitz_prefactor(genus, &query.gamma, &query.mu)? * int(query.mu.aut_order()) / int(mu_bar.aut_order());
    Ok(IntegralValue::new(hurwitz / c, IntegralBranch::Formula))
}

/// Both sides of the wreath Hurwitz / `BG` integral identity for connected covers:
///
/// ```text
/// H_{g,K}(∅₊(k), μ̄) = r! a^{1−g+Σ⟨μ_j/a⟩} / |Aut μ̄| · Π μ_j^{⌊μ_j/a⌋}/⌊μ_j/a⌋! · ∫_{M̄_{g,−μ̄}(BG)} (…)
/// ```
///
/// with the integral taken at the points `(κ_j − μ_j x, μ_j)`. Returns `(0, 0)`
/// when the monodromies do not sum to zero.
pub fn bg_integral_roundtrip(
    genus: i64,
    group: &FiniteAbelianGroup,
    character: &AbelianCharacter,
    mu_bar: &WeightedPartition,
) -> Result<(ExactRational, ExactRational)> {
    let info = analyze_character(group, character)?;
    let a = info.image_order as usize;
    for (_, w) in mu_bar.pairs() {
        if !info.kernel.contains(w) {
            return invalid(format!("weight {w} is not in the kernel of the character"));
        }
    }
    let points: Vec<MarkedPoint> = mu_bar
        .pairs()
        .iter()
        .map(|(m, kappa)| MarkedPoint {
            monodromy: group.add(kappa, &group.scale(&info.lift, -(*m as i64))),
            weight: *m,
        })
        .collect();
    let total = group.sum(points.iter().map(|p| &p.monodromy));
    if total != group.identity() {
        return Ok((ExactRational::zero(), ExactRational::zero()));
    }
    let d = mu_bar.degree();
    let empty = empty_plus(&info.k, d, a, &info.kernel)?;
    let lhs = wreath_double_hurwitz(genus, &info.kernel, &empty, mu_bar, true)?;
    let integral = combined_integral_abelian(genus, group, character, &points, false)?.value;
    let mu = mu_bar.underlying();
    let prefactor = hurwitz_prefactor(genus, &MonodromyVector::empty(a)?, &mu)? * int(mu.aut_order()) / int(mu_bar.aut_order());
    Ok((lhs, prefactor * integral))
}
