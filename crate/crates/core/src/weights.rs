//! Type-D root systems, their Weyl groups, and highest-weight arithmetic.
//!
//! Coordinates are the standard `e_i` coordinates throughout: a weight is a
//! vector of rationals, roots are `e_i ± e_j`, and the inner product is the
//! plain dot product.

use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational_list, int, is_half_odd, is_integer, Rational};

/// Hard ceiling on the rank of an enumerated Weyl group.
pub const MAX_WEYL_RANK: usize = 8;

/// Environment variable that lowers (or restores) the enumeration cap.
pub const MAX_RANK_ENV: &str = "CUSPTORSION_MAX_RANK";

/// Active enumeration cap: [`MAX_WEYL_RANK`] unless overridden through
/// [`MAX_RANK_ENV`]; the override is clamped to `1..=MAX_WEYL_RANK`.
pub fn weyl_rank_cap() -> usize {
    std::env::var(MAX_RANK_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|r| r.clamp(1, MAX_WEYL_RANK))
        .unwrap_or(MAX_WEYL_RANK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    SO0,
    Spin,
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "SO0" | "so0" | "SO" => Ok(Flavor::SO0),
            "Spin" | "spin" => Ok(Flavor::Spin),
            other => Err(Error::Parse(format!(
                "unknown group flavor {other:?} (expected SO0 or Spin)"
            ))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::SO0 => "SO0",
            Flavor::Spin => "Spin",
        })
    }
}

/// Odd manifold dimension `d = 2n + 1` together with the group flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupDatum {
    d: usize,
    n: usize,
    flavor: Flavor,
}

impl GroupDatum {
    pub fn new(d: i64, flavor: Flavor) -> Result<Self> {
        if d < 3 || d % 2 == 0 {
            return Err(Error::InvalidDimension(d));
        }
        let d = d as usize;
        Ok(GroupDatum {
            d,
            n: (d - 1) / 2,
            flavor,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
}

/// Which group a highest weight belongs to: `G` has rank `n + 1`, `K` and
/// `M` have rank `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightContext {
    G,
    K,
    M,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawWeight")]
pub struct HighestWeight {
    #[serde(with = "crate::rational::serde_rational_vec")]
    components: Vec<Rational>,
    context: WeightContext,
}

#[derive(Deserialize)]
struct RawWeight {
    #[serde(with = "crate::rational::serde_rational_vec")]
    components: Vec<Rational>,
    context: WeightContext,
}

impl TryFrom<RawWeight> for HighestWeight {
    type Error = Error;

    fn try_from(raw: RawWeight) -> Result<Self> {
        // Half-integral input is only possible for Spin, so validating with
        // Spin accepts exactly the admissible lattices.
        HighestWeight::new(raw.components, raw.context, Flavor::Spin)
    }
}

impl HighestWeight {
    /// Validates integrality (half-integers only under [`Flavor::Spin`]) and
    /// dominance for the given context.
    pub fn new(components: Vec<Rational>, context: WeightContext, flavor: Flavor) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeight("weight has no components".into()));
        }
        let all_int = components.iter().all(is_integer);
        let all_half = components.iter().all(is_half_odd);
        match (all_int, all_half, flavor) {
            (true, _, _) => {}
            (false, true, Flavor::Spin) => {}
            (false, true, Flavor::SO0) => {
                return Err(Error::InvalidWeight(format!(
                    "{} is half-integral, which requires the Spin flavor",
                    format_rational_list(&components)
                )))
            }
            _ => {
                return Err(Error::InvalidWeight(format!(
                    "{} mixes integers and half-integers (or has other denominators)",
                    format_rational_list(&components)
                )))
            }
        }
        let w = HighestWeight {
            components,
            context,
        };
        if !w.is_dominant() {
            return Err(Error::InvalidWeight(format!(
                "{} is not dominant for context {:?}",
                format_rational_list(&w.components),
                context
            )));
        }
        Ok(w)
    }

    pub fn from_i64(components: &[i64], context: WeightContext) -> Result<Self> {
        Self::new(components.iter().map(|&k| int(k)).collect(), context, Flavor::SO0)
    }

    /// Skips validation; used for weights produced by trusted formulas that
    /// are re-validated by their callers.
    pub(crate) fn unchecked(components: Vec<Rational>, context: WeightContext) -> Self {
        HighestWeight {
            components,
            context,
        }
    }

    pub fn zero(rank: usize, context: WeightContext) -> Self {
        HighestWeight::unchecked(vec![Rational::zero(); rank], context)
    }

    pub fn components(&self) -> &[Rational] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn context(&self) -> WeightContext {
        self.context
    }

    pub fn is_integral(&self) -> bool {
        self.components.iter().all(is_integer)
    }

    pub fn last(&self) -> &Rational {
        self.components.last().expect("weights are nonempty")
    }

    pub fn is_dominant(&self) -> bool {
        let k = &self.components;
        let m = k.len();
        let chain_ok = (0..m.saturating_sub(2)).all(|i| k[i] >= k[i + 1]);
        match self.context {
            WeightContext::G | WeightContext::M => {
                chain_ok && (m < 2 || k[m - 2] >= k[m - 1].abs())
            }
            WeightContext::K => {
                chain_ok && (m < 2 || k[m - 2] >= k[m - 1]) && !k[m - 1].is_negative()
            }
        }
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational_list(&self.components))
    }
}

/// Signed permutation with an even number of sign changes.
///
/// Acts on coordinate vectors by `(w v)[perm[i]] = signs[i] * v[i]`. Stored
/// inline so that enumerating the rank-8 group stays compact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    rank: u8,
    perm: [u8; MAX_WEYL_RANK],
    signs: [i8; MAX_WEYL_RANK],
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}{:?}", self.permutation(), self.signs())
    }
}

impl WeylElement {
    pub fn new(permutation: &[usize], signs: &[i8]) -> Result<Self> {
        let r = permutation.len();
        if r == 0 || r > MAX_WEYL_RANK {
            return Err(Error::InvalidRank(r as i64));
        }
        if signs.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: signs.len(),
            });
        }
        let mut seen = [false; MAX_WEYL_RANK];
        for &p in permutation {
            if p >= r || seen[p] {
                return Err(Error::Domain(format!("{permutation:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain("signs must be +1 or -1".into()));
        }
        if signs.iter().filter(|&&s| s < 0).count() % 2 != 0 {
            return Err(Error::Domain(
                "type D Weyl elements need an even number of sign changes".into(),
            ));
        }
        let mut perm = [0u8; MAX_WEYL_RANK];
        let mut sg = [1i8; MAX_WEYL_RANK];
        for i in 0..r {
            perm[i] = permutation[i] as u8;
            sg[i] = signs[i];
        }
        Ok(WeylElement {
            rank: r as u8,
            perm,
            signs: sg,
        })
    }

    pub fn identity(rank: usize) -> Self {
        let perm: Vec<usize> = (0..rank).collect();
        WeylElement::new(&perm, &vec![1; rank]).expect("identity is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn permutation(&self) -> Vec<usize> {
        self.perm[..self.rank()].iter().map(|&p| p as usize).collect()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs[..self.rank()]
    }

    pub fn act(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(v.len())?;
        let mut out = vec![Rational::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            let y = if self.signs[i] < 0 { -x.clone() } else { x.clone() };
            out[self.perm[i] as usize] = y;
        }
        Ok(out)
    }

    pub fn act_int(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.check_len(v.len())?;
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i] as usize] = self.signs[i] as i64 * x;
        }
        Ok(out)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: len,
            });
        }
        Ok(())
    }

    pub fn inverse(&self) -> WeylElement {
        let mut out = *self;
        for i in 0..self.rank() {
            let p = self.perm[i] as usize;
            out.perm[p] = i as u8;
            out.signs[p] = self.signs[i];
        }
        out
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_len(other.rank())?;
        let mut out = *self;
        for i in 0..self.rank() {
            let p2 = other.perm[i] as usize;
            out.perm[i] = self.perm[p2];
            out.signs[i] = other.signs[i] * self.signs[p2];
        }
        Ok(out)
    }
}

/// Positive roots `e_i ± e_j` (`i < j`) of `D_rank` and their half sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    rank: usize,
    positive_roots: Vec<Vec<i64>>,
    half_sum: Vec<Rational>,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn half_sum(&self) -> &[Rational] {
        &self.half_sum
    }
}

/// Positive for type D means the first nonzero coordinate is positive.
pub fn is_positive_root(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

pub fn build_root_system(rank: i64) -> Result<RootSystem> {
    if rank <= 0 {
        return Err(Error::InvalidRank(rank));
    }
    let r = rank as usize;
    let mut roots = Vec::with_capacity(r * (r - 1));
    for i in 0..r {
        for j in i + 1..r {
            let mut minus = vec![0; r];
            minus[i] = 1;
            minus[j] = -1;
            let mut plus = vec![0; r];
            plus[i] = 1;
            plus[j] = 1;
            roots.push(minus);
            roots.push(plus);
        }
    }
    let mut sum = vec![0i64; r];
    for a in &roots {
        for (s, x) in sum.iter_mut().zip(a) {
            *s += x;
        }
    }
    let half_sum = sum
        .iter()
        .map(|&s| Rational::new(BigInt::from(s), BigInt::from(2)))
        .collect();
    Ok(RootSystem {
        rank: r,
        positive_roots: roots,
        half_sum,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All `2^(rank-1) * rank!` elements of `W(D_rank)`, sorted
/// lexicographically by (permutation, signs).
pub fn enumerate_weyl_group(rank: usize) -> Result<Vec<WeylElement>> {
    if rank == 0 {
        return Err(Error::InvalidRank(0));
    }
    let cap = weyl_rank_cap();
    if rank > cap {
        return Err(Error::ResourceLimit {
            what: "Weyl group rank",
            requested: rank,
            limit: cap,
        });
    }
    let mut sign_vectors: Vec<Vec<i8>> = (0u32..(1 << rank))
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| {
            (0..rank)
                .map(|i| if m & (1 << i) != 0 { -1 } else { 1 })
                .collect()
        })
        .collect();
    sign_vectors.sort();

    let factorial: usize = (1..=rank).product();
    let mut out = Vec::with_capacity(factorial * sign_vectors.len());
    let mut perm: Vec<usize> = (0..rank).collect();
    loop {
        for s in &sign_vectors {
            out.push(WeylElement::new(&perm, s)?);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

/// Number of positive roots sent to negative roots.
pub fn weyl_length(w: &WeylElement, rs: &RootSystem) -> Result<usize> {
    if w.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: w.rank(),
        });
    }
    let mut count = 0;
    for a in rs.positive_roots() {
        if !is_positive_root(&w.act_int(a)?) {
            count += 1;
        }
    }
    Ok(count)
}

fn dot_int(a: &[Rational], root: &[i64]) -> Rational {
    a.iter()
        .zip(root)
        .filter(|(_, &r)| r != 0)
        .fold(Rational::zero(), |acc, (x, &r)| acc + x * int(r))
}

/// Weyl dimension formula `∏ ⟨Λ+ρ,α⟩ / ⟨ρ,α⟩` over positive roots.
pub fn weyl_dimension(rs: &RootSystem, weight: &HighestWeight) -> Result<u64> {
    if weight.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: weight.rank(),
        });
    }
    if weight.context() == WeightContext::K {
        return Err(Error::Domain(
            "the type-D dimension formula applies to G and M weights".into(),
        ));
    }
    if !weight.is_dominant() {
        return Err(Error::Domain(format!("{weight} is not dominant")));
    }
    let shifted: Vec<Rational> = weight
        .components()
        .iter()
        .zip(rs.half_sum())
        .map(|(k, r)| k + r)
        .collect();
    let mut num = Rational::one();
    let mut den = Rational::one();
    for a in rs.positive_roots() {
        num *= dot_int(&shifted, a);
        den *= dot_int(rs.half_sum(), a);
    }
    let q = num / den;
    if !is_integer(&q) || !q.is_positive() {
        return Err(Error::InternalConsistency(format!(
            "Weyl dimension of {weight} evaluated to non-integer {q}"
        )));
    }
    q.to_integer().to_u64().ok_or(Error::ResourceLimit {
        what: "representation dimension (u64 overflow)",
        requested: usize::MAX,
        limit: u64::MAX as usize,
    })
}

/// Highest weight of `ρ∘θ`: the last coordinate changes sign.
pub fn theta_twist(weight: &HighestWeight) -> Result<HighestWeight> {
    if weight.context() != WeightContext::G {
        return Err(Error::Domain(format!(
            "theta twist acts on G weights, got {:?}",
            weight.context()
        )));
    }
    Ok(flip_last(weight))
}

/// `ρ ≠ ρ_θ`, equivalently a nonzero last coordinate.
pub fn is_strongly_acyclic(weight: &HighestWeight) -> bool {
    !weight.last().is_zero()
}

/// Highest weight of `w₀σ` for an M weight: the last coordinate changes sign.
pub fn w0_twist(sigma: &HighestWeight) -> Result<HighestWeight> {
    if sigma.context() != WeightContext::M {
        return Err(Error::Domain(format!(
            "w0 twist acts on M weights, got {:?}",
            sigma.context()
        )));
    }
    Ok(flip_last(sigma))
}

fn flip_last(w: &HighestWeight) -> HighestWeight {
    let mut c = w.components().to_vec();
    let last = c.last_mut().expect("nonempty");
    *last = -last.clone();
    HighestWeight::unchecked(c, w.context())
}

/// `c(σ) = Σ_{j=2}^{n+1} (k_j(σ) + ρ_j)² − Σ_{j=1}^{n+1} ρ_j²` with `ρ_j = n + 1 − j`.
pub fn casimir_constant(sigma: &HighestWeight) -> Result<Rational> {
    if sigma.context() != WeightContext::M {
        return Err(Error::Domain("c(σ) is defined for M weights".into()));
    }
    let n = sigma.rank() as i64;
    let rho = |j: i64| int(n + 1 - j);
    let shifted = sigma
        .components()
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let s = k + rho(i as i64 + 2);
            &s * &s
        })
        .fold(Rational::zero(), |a, b| a + b);
    let total = (1..=n + 1).map(|j| rho(j) * rho(j)).fold(Rational::zero(), |a, b| a + b);
    Ok(shifted - total)
}
