//! Model operators on a single cusp `[u, ∞) × T^{d−1}`.
//!
//! On the `N`-invariant part the Laplacian reduces to
//! `T⁰ = −y²∂_y² + (d−2)y∂_y`. With Dirichlet conditions at `y = u` its heat
//! kernel, against the measure `y^{−d} dy`, is
//!
//! ```text
//! H^u(t,y,y′) = e^{−t(d−1)²/4} (yy′)^{(d−1)/2} / √(4πt)
//!               · (e^{−log²(y′/y)/4t} − e^{−(log(yy′) − 2 log u)²/4t}).
//! ```
//!
//! In `r = log y` this is the Dirichlet heat kernel of `∂_r²` on a half
//! line, conjugated by `e^{(d−1)r/2}` and damped. The truncated trace
//! `∫_u^Y H^u(t,y,y) y^{−d} dy` therefore equals
//! `e^{−t(d−1)²/4}(log(Y/u)/√(4πt) − ¼)` up to the positive tail
//! `e^{−t(d−1)²/4} erfc(log(Y/u)/√t)/4`.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::rational::{int, to_f64, Rational};
use crate::weights::{build_root_system, casimir_constant, weyl_dimension, HighestWeight, WeightContext};

/// Largest admissible `(d−1)·log Y`, keeping `Y^{d−1}` inside `f64` range.
pub const MAX_LOG_GROWTH: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CuspModelParams {
    d: usize,
    u: f64,
    t: f64,
    y_trunc: f64,
}

impl CuspModelParams {
    /// `Y = u` is accepted as the degenerate empty truncation.
    pub fn new(d: usize, u: f64, t: f64, y_trunc: f64) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::InvalidDimension(d as i64));
        }
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::Domain(format!("cut height u must be positive, got {u}")));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Domain(format!("heat time t must be positive, got {t}")));
        }
        if !(y_trunc.is_finite() && y_trunc >= u) {
            return Err(Error::Domain(format!(
                "truncation height Y = {y_trunc} must be at least u = {u}"
            )));
        }
        if (d - 1) as f64 * y_trunc.ln() > MAX_LOG_GROWTH {
            return Err(Error::Domain(format!(
                "Y^(d-1) overflows for Y = {y_trunc}, d = {d}"
            )));
        }
        Ok(CuspModelParams { d, u, t, y_trunc })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y_trunc(&self) -> f64 {
        self.y_trunc
    }

    pub fn with_t(&self, t: f64) -> Result<Self> {
        Self::new(self.d, self.u, t, self.y_trunc)
    }

    /// `(d−1)²/4`.
    fn shift(&self) -> f64 {
        let h = (self.d - 1) as f64 / 2.0;
        h * h
    }

    /// `log(Y/u)`.
    pub fn log_height(&self) -> f64 {
        self.y_trunc.ln() - self.u.ln()
    }
}

/// Dirichlet heat kernel `H^u(t, y, y′)` of `T⁰`.
pub fn model_heat_kernel(p: &CuspModelParams, y: f64, y2: f64) -> Result<f64> {
    if !(y >= p.u && y2 >= p.u) || !y.is_finite() || !y2.is_finite() {
        return Err(Error::Domain(format!(
            "heat kernel evaluated at ({y}, {y2}) below the cut u = {}",
            p.u
        )));
    }
    let t = p.t;
    let (ly, ly2, lu) = (y.ln(), y2.ln(), p.u.ln());
    let a = (ly2 - ly).powi(2) / (4.0 * t);
    let b = (ly + ly2 - 2.0 * lu).powi(2) / (4.0 * t);
    let log_prefactor =
        -t * p.shift() + (p.d - 1) as f64 / 2.0 * (ly + ly2) - 0.5 * (4.0 * std::f64::consts::PI * t).ln();
    // e^{−a} − e^{−b} = e^{−a}(1 − e^{a−b}) with b ≥ a.
    let diff = -(a - b).min(0.0).exp_m1();
    Ok((log_prefactor - a).exp() * diff)
}

/// `∫_u^Y H^u(t,y,y) y^{−d} dy` by adaptive quadrature in `r = log y`.
pub fn truncated_trace(p: &CuspModelParams) -> Result<f64> {
    let (lu, ly) = (p.u.ln(), p.y_trunc.ln());
    let integrand = |r: f64| -> f64 {
        let y = r.exp();
        let h = model_heat_kernel(p, y, y).unwrap_or(f64::NAN);
        // y^{−d} dy = y^{1−d} dr
        h * (-((p.d - 1) as f64) * r).exp()
    };
    let tol = Tolerance {
        abs: 1e-13,
        rel: 1e-11,
        max_panels: 50_000,
    };
    Ok(integrate(integrand, lu, ly, tol)?.value)
}

/// `e^{−t(d−1)²/4}(log Y/√(4πt) − log u/√(4πt) − ¼)`.
pub fn trace_asymptotic(p: &CuspModelParams) -> f64 {
    let t = p.t;
    (-t * p.shift()).exp() * (p.log_height() / (4.0 * std::f64::consts::PI * t).sqrt() - 0.25)
}

/// `truncated_trace − trace_asymptotic`, in closed form.
pub fn trace_tail(p: &CuspModelParams) -> f64 {
    (-p.t * p.shift()).exp() * erfc(p.log_height() / p.t.sqrt()) / 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceComparison {
    pub quadrature: f64,
    pub asymptotic: f64,
    pub deviation: f64,
    pub tail_bound: f64,
    /// `|quadrature − (asymptotic + tail)| / max(1, |asymptotic|)`.
    pub residual: f64,
}

impl TraceComparison {
    pub fn within(&self, tolerance: f64) -> bool {
        self.residual <= tolerance && self.deviation.abs() <= self.tail_bound + tolerance
    }
}

pub fn compare_trace(p: &CuspModelParams) -> Result<TraceComparison> {
    let quadrature = truncated_trace(p)?;
    let asymptotic = trace_asymptotic(p);
    let tail_bound = trace_tail(p);
    let residual = (quadrature - asymptotic - tail_bound).abs() / asymptotic.abs().max(1.0);
    Ok(TraceComparison {
        quadrature,
        asymptotic,
        deviation: quadrature - asymptotic,
        tail_bound,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub composed: f64,
    pub direct: f64,
    pub relative_error: f64,
}

/// `∫_u^∞ H(t₁,y,z) H(t₂,z,y′) z^{−d} dz` against `H(t₁+t₂,y,y′)`.
pub fn semigroup_check(p: &CuspModelParams, t1: f64, t2: f64, y: f64, y2: f64) -> Result<SemigroupReport> {
    let p1 = p.with_t(t1)?;
    let p2 = p.with_t(t2)?;
    let p12 = p.with_t(t1 + t2)?;
    let lu = p.u.ln();
    let reach = 40.0 * t1.max(t2).sqrt();
    let upper = y.ln().max(y2.ln()) + reach;
    if (p.d - 1) as f64 * upper > MAX_LOG_GROWTH {
        return Err(Error::Domain("semigroup sample points too high for f64".into()));
    }
    let integrand = |r: f64| -> f64 {
        let z = r.exp();
        let a = model_heat_kernel(&p1, y, z).unwrap_or(f64::NAN);
        let b = model_heat_kernel(&p2, z, y2).unwrap_or(f64::NAN);
        a * b * (-((p.d - 1) as f64) * r).exp()
    };
    let direct = model_heat_kernel(&p12, y, y2)?;
    let tol = Tolerance {
        abs: 1e-14 * direct.abs().max(1e-300),
        rel: 1e-10,
        max_panels: 50_000,
    };
    let composed = integrate(integrand, lu, upper, tol)?.value;
    let relative_error = (composed - direct).abs() / direct.abs().max(f64::MIN_POSITIVE);
    Ok(SemigroupReport {
        composed,
        direct,
        relative_error,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaEntry {
    pub sigma: HighestWeight,
    pub dim: u64,
    #[serde(with = "crate::rational::serde_rational")]
    pub casimir: Rational,
}

/// The `σ ∈ M̂` occurring in a boundary cohomology space, with `dim σ` and `c(σ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaSpectrum {
    entries: Vec<SigmaEntry>,
}

impl SigmaSpectrum {
    pub fn new(entries: Vec<SigmaEntry>) -> Result<Self> {
        for e in &entries {
            if e.sigma.context() != WeightContext::M {
                return Err(Error::Domain(format!("{} is not an M weight", e.sigma)));
            }
            if e.dim == 0 {
                return Err(Error::Domain(format!("dim of {} must be positive", e.sigma)));
            }
            let c = casimir_constant(&e.sigma)?;
            if c != e.casimir {
                return Err(Error::InternalConsistency(format!(
                    "c({}) is {c}, not {}",
                    e.sigma, e.casimir
                )));
            }
        }
        Ok(SigmaSpectrum { entries })
    }

    /// Computes `dim σ` and `c(σ)` for each weight.
    pub fn from_weights(sigmas: &[HighestWeight]) -> Result<Self> {
        let entries = sigmas
            .iter()
            .map(|s| {
                let rs = build_root_system(s.rank() as i64)?;
                Ok(SigmaEntry {
                    sigma: s.clone(),
                    dim: weyl_dimension(&rs, s)?,
                    casimir: casimir_constant(s)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[SigmaEntry] {
        &self.entries
    }
}

/// `Tr_rel;u − Tr_reg = κ Σ_σ e^{t c(σ)} dim σ (log u/√(4πt) + ¼)`.
pub fn reg_rel_difference(t: f64, u: f64, kappa: u64, spec: &SigmaSpectrum) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) || !(u.is_finite() && u > 0.0) {
        return Err(Error::Domain(format!("need t > 0 and u > 0, got t = {t}, u = {u}")));
    }
    let factor = u.ln() / (4.0 * std::f64::consts::PI * t).sqrt() + 0.25;
    let sum: f64 = spec
        .entries
        .iter()
        .map(|e| (t * to_f64(&e.casimir)).exp() * e.dim as f64)
        .sum();
    Ok(kappa as f64 * sum * factor)
}

/// `vol · Y^{2λ} / (2|λ|)`, the squared norm of a unit harmonic form of
/// weight `λ < 0` on the truncated cusp.
pub fn harmonic_norm_sq(lambda: &Rational, y: f64, vol: f64) -> Result<f64> {
    if *lambda >= int(0) {
        return Err(Error::Domain(format!(
            "λ = {lambda} ≥ 0: the form is not square-integrable on the cusp"
        )));
    }
    if !(y.is_finite() && y > 0.0) || !(vol.is_finite() && vol > 0.0) {
        return Err(Error::Domain(format!("need Y > 0 and vol > 0, got Y = {y}, vol = {vol}")));
    }
    let l = to_f64(lambda);
    Ok(vol * (2.0 * l * y.ln()).exp() / (2.0 * l.abs()))
}

/// Eigenvalues `−(c(σ) + (d−1)²/4)` of `L(ν)` on the `σ`-isotypic parts.
pub fn l_nu_eigenvalues(spec: &SigmaSpectrum, d: usize) -> Vec<Rational> {
    let shift = Rational::new(((d as i64 - 1) * (d as i64 - 1)).into(), 4.into());
    spec.entries
        .iter()
        .map(|e| -(&e.casimir + &shift))
        .collect()
}
