//! Kostant data for the abelian nilradical of the minimal parabolic.
//!
//! For a dominant `G` weight `Λ` each element `w` of the Kostant set `W¹`
//! contributes a triple `(l(w), λ_w, σ_w)`: the cohomological degree, the
//! `a`-weight (as a multiple of `e₁`), and an `M` highest weight. The triples
//! are produced twice, once by filtering the Weyl group and once from the
//! closed formulas, and the boundary cohomology profile is built on top.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::weights::{
    build_root_system, enumerate_weyl_group, is_positive_root, is_strongly_acyclic, w0_twist,
    weyl_dimension, weyl_length, HighestWeight, WeightContext, WeylElement,
};

/// Largest `n` accepted by [`compute_w1`].
pub const MAX_KOSTANT_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KostantDatum {
    pub length: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda: Rational,
    pub sigma: HighestWeight,
}

fn check_g_weight(weight: &HighestWeight, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    if weight.context() != WeightContext::G {
        return Err(Error::Domain(format!(
            "Kostant data needs a G weight, got {:?}",
            weight.context()
        )));
    }
    if weight.rank() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: weight.rank(),
        });
    }
    if !weight.is_dominant() {
        return Err(Error::Domain(format!("{weight} is not dominant")));
    }
    Ok(())
}

/// Canonical order: ascending length, then descending λ, then σ.
fn sort_canonical(data: &mut [KostantDatum]) {
    data.sort_by(|a, b| {
        a.length
            .cmp(&b.length)
            .then_with(|| b.lambda.cmp(&a.lambda))
            .then_with(|| a.sigma.cmp(&b.sigma))
    });
}

/// Positive roots `e_i ± e_j`, `2 ≤ i < j`, of `m` inside `g` (rank `n + 1`).
fn m_positive_roots(n: usize) -> Vec<Vec<i64>> {
    let r = n + 1;
    let mut roots = Vec::new();
    for i in 1..r {
        for j in i + 1..r {
            for s in [-1, 1] {
                let mut a = vec![0; r];
                a[i] = 1;
                a[j] = s;
                roots.push(a);
            }
        }
    }
    roots
}

/// `W¹ = {w : w⁻¹α > 0 for every positive root α of m}`.
pub fn compute_w1(n: usize) -> Result<Vec<WeylElement>> {
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    if n > MAX_KOSTANT_N {
        return Err(Error::ResourceLimit {
            what: "Kostant set n",
            requested: n,
            limit: MAX_KOSTANT_N,
        });
    }
    let m_roots = m_positive_roots(n);
    let mut out = Vec::with_capacity(2 * (n + 1));
    for w in enumerate_weyl_group(n + 1)? {
        let inv = w.inverse();
        let mut keep = true;
        for a in &m_roots {
            if !is_positive_root(&inv.act_int(a)?) {
                keep = false;
                break;
            }
        }
        if keep {
            out.push(w);
        }
    }
    if out.len() != 2 * (n + 1) {
        return Err(Error::InternalConsistency(format!(
            "|W¹| = {} for n = {n}, expected {}",
            out.len(),
            2 * (n + 1)
        )));
    }
    Ok(out)
}

/// `(Λ₁ + n, Λ₂ + n − 1, …, Λ_{n+1})`.
fn shifted_weight(weight: &HighestWeight, n: usize) -> Vec<Rational> {
    weight
        .components()
        .iter()
        .enumerate()
        .map(|(j, k)| k + int((n - j) as i64))
        .collect()
}

/// Kostant triples obtained by acting with every `w ∈ W¹` on `Λ + ρ_G`.
pub fn kostant_data_enumerated(weight: &HighestWeight, n: usize) -> Result<Vec<KostantDatum>> {
    check_g_weight(weight, n)?;
    let w1 = compute_w1(n)?;
    kostant_data_from_set(weight, n, &w1)
}

/// Same as [`kostant_data_enumerated`] with a precomputed `W¹`.
pub fn kostant_data_from_set(
    weight: &HighestWeight,
    n: usize,
    w1: &[WeylElement],
) -> Result<Vec<KostantDatum>> {
    check_g_weight(weight, n)?;
    let rs = build_root_system((n + 1) as i64)?;
    let shifted = shifted_weight(weight, n);
    let mut out = Vec::with_capacity(w1.len());
    for w in w1 {
        let v = w.act(&shifted)?;
        let lambda = v[0].clone();
        let sigma_c: Vec<Rational> = v[1..]
            .iter()
            .enumerate()
            .map(|(i, x)| x - int((n - 1 - i) as i64))
            .collect();
        let sigma = HighestWeight::unchecked(sigma_c, WeightContext::M);
        if !sigma.is_dominant() {
            return Err(Error::InternalConsistency(format!(
                "σ = {sigma} from {w:?} is not M-dominant"
            )));
        }
        out.push(KostantDatum {
            length: weyl_length(w, &rs)?,
            lambda,
            sigma,
        });
    }
    sort_canonical(&mut out);
    Ok(out)
}

/// The `λ±`/`σ±` data in the middle degree `k = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleSplit {
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda_plus: Rational,
    pub sigma_plus: HighestWeight,
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda_minus: Rational,
    pub sigma_minus: HighestWeight,
}

/// `λ_{ρ,k}` and `σ_{ρ,k}` for `k = 0..=2n`; at `k = n` the unsplit values.
fn closed_form_degrees(weight: &HighestWeight, n: usize) -> Result<(Vec<(Rational, HighestWeight)>, MiddleSplit)> {
    check_g_weight(weight, n)?;
    let k = weight.components();
    let mut low = Vec::with_capacity(n + 1);
    for deg in 0..=n {
        let lambda = &k[deg] + int((n - deg) as i64);
        let mut sigma = Vec::with_capacity(n);
        for c in &k[..deg] {
            sigma.push(c + int(1));
        }
        for c in &k[deg + 1..] {
            sigma.push(c.clone());
        }
        low.push((lambda, HighestWeight::unchecked(sigma, WeightContext::M)));
    }
    let (lambda_n, sigma_n) = low[n].clone();
    let twisted_n = w0_twist(&sigma_n)?;
    let split = if !k[n].is_negative() {
        MiddleSplit {
            lambda_plus: lambda_n.clone(),
            sigma_plus: sigma_n.clone(),
            lambda_minus: -lambda_n.clone(),
            sigma_minus: twisted_n,
        }
    } else {
        MiddleSplit {
            lambda_plus: -lambda_n.clone(),
            sigma_plus: twisted_n,
            lambda_minus: lambda_n.clone(),
            sigma_minus: sigma_n.clone(),
        }
    };
    let mut all = low;
    for deg in n + 1..=2 * n {
        let (l, s) = all[2 * n - deg].clone();
        all.push((-l, w0_twist(&s)?));
    }
    Ok((all, split))
}

/// Kostant triples from the closed formulas.
pub fn kostant_data_closed_form(weight: &HighestWeight, n: usize) -> Result<Vec<KostantDatum>> {
    let (degrees, split) = closed_form_degrees(weight, n)?;
    let mut out = Vec::with_capacity(2 * n + 2);
    for (deg, (lambda, sigma)) in degrees.into_iter().enumerate() {
        if deg == n {
            continue;
        }
        out.push(KostantDatum {
            length: deg,
            lambda,
            sigma,
        });
    }
    out.push(KostantDatum {
        length: n,
        lambda: split.lambda_plus,
        sigma: split.sigma_plus,
    });
    out.push(KostantDatum {
        length: n,
        lambda: split.lambda_minus,
        sigma: split.sigma_minus,
    });
    sort_canonical(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDegree {
    pub k: usize,
    /// `dim H^k(∂X̄; E_ρ)`.
    pub dim: u64,
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda: Rational,
    pub sigma: HighestWeight,
    pub sigma_dim: u64,
}

/// Boundary cohomology of the Borel–Serre boundary, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryProfile {
    pub n: usize,
    pub kappa: u64,
    pub degrees: Vec<ProfileDegree>,
    pub middle: MiddleSplit,
}

impl BoundaryProfile {
    pub fn dim(&self, k: usize) -> u64 {
        self.degrees[k].dim
    }

    pub fn lambda(&self, k: usize) -> &Rational {
        &self.degrees[k].lambda
    }

    /// `|λ_{ρ,k}|`; in the middle degree the common value `|λ_n^±|`.
    pub fn abs_lambda(&self, k: usize) -> Rational {
        if k == self.n {
            self.middle.lambda_plus.abs()
        } else {
            self.degrees[k].lambda.abs()
        }
    }

    pub fn is_strongly_acyclic(&self) -> bool {
        !self.middle.lambda_plus.is_zero()
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.degrees
            .iter()
            .map(|d| if d.k % 2 == 0 { d.dim as i128 } else { -(d.dim as i128) })
            .sum()
    }

    /// Duality of dimensions, antisymmetry of λ, vanishing Euler
    /// characteristic, and the sign pattern forced by strong acyclicity.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n;
        let top = 2 * n;
        if self.degrees.len() != top + 1 {
            return Err(Error::InternalConsistency(format!(
                "profile has {} degrees, expected {}",
                self.degrees.len(),
                top + 1
            )));
        }
        for k in 0..=top {
            if self.dim(k) != self.dim(top - k) {
                return Err(Error::InternalConsistency(format!(
                    "dim H^{k} = {} but dim H^{} = {}",
                    self.dim(k),
                    top - k,
                    self.dim(top - k)
                )));
            }
            if k != n && *self.lambda(k) != -self.lambda(top - k).clone() {
                return Err(Error::InternalConsistency(format!(
                    "λ_{k} is not the negative of λ_{}",
                    top - k
                )));
            }
        }
        if self.euler_characteristic() != 0 {
            return Err(Error::InternalConsistency(format!(
                "Euler characteristic {} ≠ 0",
                self.euler_characteristic()
            )));
        }
        let m = &self.middle;
        if m.lambda_plus != -m.lambda_minus.clone() || m.lambda_plus.is_negative() {
            return Err(Error::InternalConsistency(
                "middle split violates λ⁺ = −λ⁻ ≥ 0".into(),
            ));
        }
        if self.is_strongly_acyclic() {
            if !m.lambda_minus.is_negative() {
                return Err(Error::InternalConsistency("λ_n^− must be negative".into()));
            }
            for k in n + 1..=top {
                if !self.lambda(k).is_negative() {
                    return Err(Error::InternalConsistency(format!(
                        "λ_{k} must be negative for a strongly acyclic weight"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Dimensions and weights of `H^k(∂X̄; E_ρ)` for `κ` cusps.
pub fn boundary_profile(weight: &HighestWeight, n: usize, kappa: u64) -> Result<BoundaryProfile> {
    if kappa == 0 {
        return Err(Error::Domain("the number of cusps must be positive".into()));
    }
    let (degrees, middle) = closed_form_degrees(weight, n)?;
    let m_roots = build_root_system(n as i64)?;
    let dim_plus = weyl_dimension(&m_roots, &middle.sigma_plus)?;
    let dim_minus = weyl_dimension(&m_roots, &middle.sigma_minus)?;
    if dim_plus != dim_minus {
        return Err(Error::InternalConsistency(format!(
            "dim σ_n^+ = {dim_plus} differs from dim σ_n^− = {dim_minus}"
        )));
    }
    let mut rows = Vec::with_capacity(2 * n + 1);
    for (k, (lambda, sigma)) in degrees.into_iter().enumerate() {
        let sigma_dim = weyl_dimension(&m_roots, &sigma)?;
        let mult = if k == n { 2 * kappa } else { kappa };
        rows.push(ProfileDegree {
            k,
            dim: mult * sigma_dim,
            lambda,
            sigma,
            sigma_dim,
        });
    }
    let profile = BoundaryProfile {
        n,
        kappa,
        degrees: rows,
        middle,
    };
    profile.check_invariants()?;
    if profile.is_strongly_acyclic() != is_strongly_acyclic(weight) {
        return Err(Error::InternalConsistency(
            "middle λ vanishes exactly when the last coordinate of Λ does".into(),
        ));
    }
    Ok(profile)
}
