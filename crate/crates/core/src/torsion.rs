//! Reidemeister torsion of finite based cochain complexes over ℚ.
//!
//! For a complex `C^{q0} → … → C^{q1}` with differentials `d_q` and a basis
//! `μ_q` of each `H^q` given by cocycle representatives `ν_q`, pick `θ_q`
//! whose images `d_q θ_q` span `im d_q`. Then
//! `ω_q = [d_{q−1}θ_{q−1} | θ_q | ν_q]` is a basis of `C^q` and
//!
//! ```text
//! τ(C) = Π_q |det ω_q|^{(−1)^{q+1}}
//! ```
//!
//! so `0 → ℚ →(a) ℚ → 0` in degrees 0, 1 has torsion `|a|`. No
//! orthonormalisation happens anywhere, so the result is always rational.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{invert, QMatrix};
use crate::rational::{format_rational, serde_rational, Rational};

/// Bases of the cohomology, keyed by degree, as cocycle coordinate vectors.
pub type CohomologyBases = BTreeMap<i64, Vec<Vec<Rational>>>;

#[derive(Debug, Clone, PartialEq)]
pub struct BasedCochainComplex {
    q0: i64,
    dims: Vec<usize>,
    /// `differentials[i]: C^{q0+i} → C^{q0+i+1}`.
    differentials: Vec<QMatrix>,
    cohomology_bases: Option<CohomologyBases>,
}

impl BasedCochainComplex {
    /// Checks shapes and `d∘d = 0`. Cohomology bases are validated when the
    /// torsion is computed.
    pub fn new(
        q0: i64,
        dims: Vec<usize>,
        differentials: Vec<QMatrix>,
        cohomology_bases: Option<CohomologyBases>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least one degree".into()));
        }
        if differentials.len() + 1 != dims.len() {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::InvalidComplex(format!(
                    "d_{} is {}×{}, expected {}×{}",
                    q0 + i as i64,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for (i, pair) in differentials.windows(2).enumerate() {
            if !pair[1].mul(&pair[0])?.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d_{} ∘ d_{} ≠ 0",
                    q0 + i as i64 + 1,
                    q0 + i as i64
                )));
            }
        }
        if let Some(bases) = &cohomology_bases {
            for (&q, vecs) in bases {
                let Some(dim) = Self::index_in(q0, dims.len(), q).map(|i| dims[i]) else {
                    return Err(Error::InvalidBasis {
                        degree: q,
                        reason: "degree outside the complex".into(),
                    });
                };
                if let Some(v) = vecs.iter().find(|v| v.len() != dim) {
                    return Err(Error::InvalidBasis {
                        degree: q,
                        reason: format!("vector of length {} in a space of dimension {dim}", v.len()),
                    });
                }
            }
        }
        Ok(BasedCochainComplex {
            q0,
            dims,
            differentials,
            cohomology_bases,
        })
    }

    /// Complex with no cohomology data, for acyclic inputs.
    pub fn acyclic(q0: i64, dims: Vec<usize>, differentials: Vec<QMatrix>) -> Result<Self> {
        Self::new(q0, dims, differentials, None)
    }

    fn index_in(q0: i64, len: usize, q: i64) -> Option<usize> {
        let i = q.checked_sub(q0)?;
        (0..len as i64).contains(&i).then_some(i as usize)
    }

    fn index(&self, q: i64) -> Option<usize> {
        Self::index_in(self.q0, self.dims.len(), q)
    }

    pub fn first_degree(&self) -> i64 {
        self.q0
    }

    pub fn last_degree(&self) -> i64 {
        self.q0 + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.q0..=self.last_degree()
    }

    pub fn dim(&self, q: i64) -> usize {
        self.index(q).map_or(0, |i| self.dims[i])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_q : C^q → C^{q+1}`; a zero map outside the stored range.
    pub fn differential(&self, q: i64) -> QMatrix {
        match self.index(q) {
            Some(i) if i < self.differentials.len() => self.differentials[i].clone(),
            _ => QMatrix::zeros(self.dim(q + 1), self.dim(q)),
        }
    }

    pub fn differentials(&self) -> &[QMatrix] {
        &self.differentials
    }

    pub fn cohomology_bases(&self) -> Option<&CohomologyBases> {
        self.cohomology_bases.as_ref()
    }

    /// Cocycle representatives for `H^q` (empty if none were given).
    pub fn cohomology_basis(&self, q: i64) -> &[Vec<Rational>] {
        self.cohomology_bases
            .as_ref()
            .and_then(|b| b.get(&q))
            .map_or(&[], Vec::as_slice)
    }

    /// Same complex with the representatives of `H^q` replaced.
    pub fn with_cohomology_basis(&self, q: i64, basis: Vec<Vec<Rational>>) -> Result<Self> {
        let mut bases = self.cohomology_bases.clone().unwrap_or_default();
        bases.insert(q, basis);
        Self::new(
            self.q0,
            self.dims.clone(),
            self.differentials.clone(),
            Some(bases),
        )
    }

    /// Replaces the basis of `H^q` by the family `μ′` determined by
    /// `μ_j = Σ_i a_ij μ′_i`, i.e. `a` holds the old classes in new
    /// coordinates. With this reading the torsion changes by
    /// `|det a|^{(−1)^q}`.
    pub fn rebase_cohomology(&self, q: i64, a: &QMatrix) -> Result<Self> {
        let old = self.cohomology_basis(q);
        if !a.is_square() || a.rows() != old.len() {
            return Err(Error::DimensionMismatch {
                expected: old.len(),
                found: a.rows(),
            });
        }
        let dim = self.dim(q);
        let old_m = QMatrix::from_columns(old, dim)?;
        let new_m = old_m.mul(&invert(a)?)?;
        let new: Vec<Vec<Rational>> = (0..new_m.cols()).map(|j| new_m.column(j)).collect();
        self.with_cohomology_basis(q, new)
    }

    /// Degrees shifted by `s`; differentials and bases unchanged.
    pub fn shifted(&self, s: i64) -> Self {
        BasedCochainComplex {
            q0: self.q0 + s,
            dims: self.dims.clone(),
            differentials: self.differentials.clone(),
            cohomology_bases: self
                .cohomology_bases
                .as_ref()
                .map(|b| b.iter().map(|(q, v)| (q + s, v.clone())).collect()),
        }
    }
}

/// `dim H^q` for every degree, in order.
pub fn cohomology_dims(c: &BasedCochainComplex) -> Vec<usize> {
    c.degrees()
        .map(|q| {
            let kernel = c.dim(q) - c.differential(q).rank();
            kernel - c.differential(q - 1).rank()
        })
        .collect()
}

pub fn is_acyclic(c: &BasedCochainComplex) -> bool {
    cohomology_dims(c).iter().all(|&h| h == 0)
}

/// Standard basis vectors at the pivot columns of `d_q`.
fn pivot_theta(c: &BasedCochainComplex, q: i64) -> QMatrix {
    let d = c.differential(q);
    let pivots = d.pivot_columns();
    QMatrix::identity(c.dim(q)).select_columns(&pivots)
}

/// Torsion for the given `θ_q` (columns of `theta[q]`). Each `d_q θ_q` must
/// be a basis of `im d_q`.
pub fn reidemeister_torsion_with(
    c: &BasedCochainComplex,
    theta: &BTreeMap<i64, QMatrix>,
) -> Result<Rational> {
    let dims = cohomology_dims(c);
    let theta_of = |q: i64| -> QMatrix {
        theta
            .get(&q)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(c.dim(q), 0))
    };
    let mut tau = Rational::one();
    for (i, q) in c.degrees().enumerate() {
        let dim = c.dim(q);
        let h = dims[i];
        let nu = c.cohomology_basis(q);
        if nu.len() != h {
            return if nu.is_empty() {
                Err(Error::Precondition(format!(
                    "H^{q} has dimension {h} but no basis was given"
                )))
            } else {
                Err(Error::InvalidBasis {
                    degree: q,
                    reason: format!("{} vectors given for a space of dimension {h}", nu.len()),
                })
            };
        }
        let d = c.differential(q);
        for v in nu {
            if d.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidBasis {
                    degree: q,
                    reason: "representative is not a cocycle".into(),
                });
            }
        }
        let th = theta_of(q);
        let rank = d.rank();
        if th.rows() != dim || th.cols() != rank || d.mul(&th)?.rank() != rank {
            return Err(Error::Precondition(format!(
                "θ_{q} must map onto a basis of im d_{q}"
            )));
        }
        let boundary = c.differential(q - 1).mul(&theta_of(q - 1))?;
        let omega = boundary.hstack(&th)?.hstack(&QMatrix::from_columns(nu, dim)?)?;
        if omega.cols() != dim {
            return Err(Error::InternalConsistency(format!(
                "ω_{q} has {} columns in dimension {dim}",
                omega.cols()
            )));
        }
        let det = omega.determinant()?.abs();
        if det.is_zero() {
            return Err(Error::InvalidBasis {
                degree: q,
                reason: "classes are linearly dependent modulo coboundaries".into(),
            });
        }
        if q.rem_euclid(2) == 1 {
            tau *= det;
        } else {
            tau /= det;
        }
    }
    Ok(tau)
}

pub fn reidemeister_torsion(c: &BasedCochainComplex) -> Result<Rational> {
    let theta = c.degrees().map(|q| (q, pivot_theta(c, q))).collect();
    reidemeister_torsion_with(c, &theta)
}

/// Torsion of an acyclic complex, typically the long exact sequence of a
/// short exact sequence of based complexes.
pub fn les_torsion(h: &BasedCochainComplex) -> Result<Rational> {
    if !is_acyclic(h) {
        return Err(Error::Domain(format!(
            "long exact sequence is not exact: cohomology dims {:?}",
            cohomology_dims(h)
        )));
    }
    let stripped = BasedCochainComplex::acyclic(h.q0, h.dims.clone(), h.differentials.clone())?;
    reidemeister_torsion(&stripped)
}

/// `0 → C′ →(i) C →(p) C″ → 0`, degreewise.
#[derive(Debug, Clone)]
pub struct ShortExactSequence {
    pub sub: BasedCochainComplex,
    pub total: BasedCochainComplex,
    pub quotient: BasedCochainComplex,
    /// Per degree from the first degree of `total`.
    pub inclusion: Vec<QMatrix>,
    pub projection: Vec<QMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativityReport {
    #[serde(with = "serde_rational")]
    pub tau_total: Rational,
    #[serde(with = "serde_rational")]
    pub tau_sub: Rational,
    #[serde(with = "serde_rational")]
    pub tau_quotient: Rational,
    #[serde(with = "serde_rational")]
    pub tau_les: Rational,
    #[serde(with = "serde_rational")]
    pub product: Rational,
    pub holds: bool,
}

/// Coordinates of cocycle `z` in the classes `basis`, modulo `image`.
fn class_coordinates(
    basis: &[Vec<Rational>],
    image: &QMatrix,
    z: &[Rational],
    dim: usize,
    degree: i64,
) -> Result<Vec<Rational>> {
    let m = QMatrix::from_columns(basis, dim)?.hstack(image)?;
    let x = m.solve(z)?.ok_or_else(|| Error::InvalidBasis {
        degree,
        reason: "cohomology basis does not span H^q".into(),
    })?;
    Ok(x[..basis.len()].to_vec())
}

impl ShortExactSequence {
    fn check(&self) -> Result<()> {
        let (s, t, u) = (&self.sub, &self.total, &self.quotient);
        if s.q0 != t.q0 || u.q0 != t.q0 || s.dims.len() != t.dims.len() || u.dims.len() != t.dims.len()
        {
            return Err(Error::Domain("complexes must share their degree range".into()));
        }
        let len = t.dims.len();
        if self.inclusion.len() != len || self.projection.len() != len {
            return Err(Error::Domain(format!("expected {len} inclusion and projection maps")));
        }
        for (i, q) in t.degrees().enumerate() {
            let inc = &self.inclusion[i];
            let proj = &self.projection[i];
            if inc.rows() != t.dim(q) || inc.cols() != s.dim(q) {
                return Err(Error::Domain(format!("inclusion in degree {q} has the wrong shape")));
            }
            if proj.rows() != u.dim(q) || proj.cols() != t.dim(q) {
                return Err(Error::Domain(format!("projection in degree {q} has the wrong shape")));
            }
            if inc.rank() != s.dim(q)
                || proj.rank() != u.dim(q)
                || s.dim(q) + u.dim(q) != t.dim(q)
                || !proj.mul(inc)?.is_zero()
            {
                return Err(Error::Domain(format!("sequence is not exact in degree {q}")));
            }
            if i + 1 < len {
                let ok_inc = t.differential(q).mul(inc)? == self.inclusion[i + 1].mul(&s.differential(q))?;
                let ok_proj =
                    u.differential(q).mul(proj)? == self.projection[i + 1].mul(&t.differential(q))?;
                if !ok_inc || !ok_proj {
                    return Err(Error::Domain(format!(
                        "maps do not commute with the differential in degree {q}"
                    )));
                }
            }
            let frame = inc.hstack(&self.lift_matrix(i, &QMatrix::identity(u.dim(q)))?)?;
            if !frame.determinant()?.abs().is_one() {
                return Err(Error::Precondition(format!(
                    "basis of C^{q} is not volume-compatible with the bases of C′ and C″"
                )));
            }
        }
        Ok(())
    }

    /// Preimages under the projection of the columns of `m`.
    fn lift_matrix(&self, i: usize, m: &QMatrix) -> Result<QMatrix> {
        let proj = &self.projection[i];
        let cols = (0..m.cols())
            .map(|j| {
                proj.solve(&m.column(j))?
                    .ok_or_else(|| Error::Domain("projection is not surjective".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        QMatrix::from_columns(&cols, proj.cols())
    }

    /// The long exact cohomology sequence as an acyclic complex, with
    /// `H^q(C′)`, `H^q(C)`, `H^q(C″)` in degrees `3q`, `3q+1`, `3q+2`,
    /// based by the given cohomology bases. Grading by the absolute degree
    /// keeps the parity of each term equal to the parity of `q`.
    pub fn long_exact_sequence(&self) -> Result<BasedCochainComplex> {
        self.check()?;
        let (s, t, u) = (&self.sub, &self.total, &self.quotient);
        let coords = |c: &BasedCochainComplex, q: i64, z: &[Rational]| {
            class_coordinates(c.cohomology_basis(q), &c.differential(q - 1), z, c.dim(q), q)
        };
        for c in [s, t, u] {
            for (i, q) in c.degrees().enumerate() {
                let h = cohomology_dims(c)[i];
                if c.cohomology_basis(q).len() != h {
                    return Err(Error::Precondition(format!(
                        "H^{q} needs a basis of {h} classes"
                    )));
                }
            }
        }
        let mut dims = Vec::new();
        let mut maps = Vec::new();
        let degrees: Vec<i64> = t.degrees().collect();
        for (i, &q) in degrees.iter().enumerate() {
            let hs = s.cohomology_basis(q);
            let ht = t.cohomology_basis(q);
            let hu = u.cohomology_basis(q);
            dims.extend([hs.len(), ht.len(), hu.len()]);

            let cols = hs
                .iter()
                .map(|z| coords(t, q, &self.inclusion[i].mul_vec(z)?))
                .collect::<Result<Vec<_>>>()?;
            maps.push(QMatrix::from_columns(&cols, ht.len())?);

            let cols = ht
                .iter()
                .map(|z| coords(u, q, &self.projection[i].mul_vec(z)?))
                .collect::<Result<Vec<_>>>()?;
            maps.push(QMatrix::from_columns(&cols, hu.len())?);

            if i + 1 < degrees.len() {
                let next = s.cohomology_basis(q + 1);
                let mut cols = Vec::with_capacity(hu.len());
                for z in hu {
                    let lift = self.lift_matrix(i, &QMatrix::from_columns(std::slice::from_ref(z), u.dim(q))?)?;
                    let dz = t.differential(q).mul_vec(&lift.column(0))?;
                    let pre = self.inclusion[i + 1]
                        .solve(&dz)?
                        .ok_or_else(|| Error::InternalConsistency("coboundary not in C′".into()))?;
                    cols.push(coords(s, q + 1, &pre)?);
                }
                maps.push(QMatrix::from_columns(&cols, next.len())?);
            }
        }
        BasedCochainComplex::acyclic(3 * t.first_degree(), dims, maps)
    }
}

/// Compares `τ(C)` with `τ(C′)·τ(C″)·τ(H)`, `H` the long exact sequence.
pub fn multiplicativity_check(ses: &ShortExactSequence) -> Result<MultiplicativityReport> {
    let les = ses.long_exact_sequence()?;
    let tau_total = reidemeister_torsion(&ses.total)?;
    let tau_sub = reidemeister_torsion(&ses.sub)?;
    let tau_quotient = reidemeister_torsion(&ses.quotient)?;
    let tau_les = les_torsion(&les)?;
    let product = &tau_sub * &tau_quotient * &tau_les;
    Ok(MultiplicativityReport {
        holds: product == tau_total,
        tau_total,
        tau_sub,
        tau_quotient,
        tau_les,
        product,
    })
}

// JSON form: {"degrees":[q0,q1], "d":[matrix,...], "H_bases":{"q":[[..],..]},
// "dims":[..] (optional)}. Matrices are lists of rows of "p/q" strings.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    degrees: [i64; 2],
    #[serde(default)]
    d: Vec<Vec<RawRow>>,
    #[serde(rename = "H_bases", default, skip_serializing_if = "Option::is_none")]
    h_bases: Option<BTreeMap<String, Vec<RawRow>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawRow(#[serde(with = "crate::rational::serde_rational_vec")] Vec<Rational>);

/// Cap on the total number of entries accepted from JSON.
const MAX_JSON_ENTRIES: usize = 1 << 20;

impl BasedCochainComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawComplex =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let [q0, q1] = raw.degrees;
        if q1 < q0 {
            return Err(Error::InvalidComplex(format!("degree range [{q0},{q1}] is empty")));
        }
        let len = (q1 - q0)
            .checked_add(1)
            .filter(|&l| l <= 4096)
            .ok_or_else(|| Error::InvalidComplex("degree range too long".into()))? as usize;
        if raw.d.len() + 1 != len {
            return Err(Error::InvalidComplex(format!(
                "degrees [{q0},{q1}] need {} differentials, got {}",
                len - 1,
                raw.d.len()
            )));
        }
        let entries: usize = raw.d.iter().flatten().map(|r| r.0.len()).sum();
        if entries > MAX_JSON_ENTRIES {
            return Err(Error::ResourceLimit {
                what: "matrix entries",
                requested: entries,
                limit: MAX_JSON_ENTRIES,
            });
        }

        // A matrix with no rows does not reveal its column count, so each
        // dimension is read from whichever neighbour determines it.
        let mut dims: Vec<Option<usize>> = vec![None; len];
        if let Some(given) = &raw.dims {
            if given.len() != len {
                return Err(Error::InvalidComplex(format!(
                    "\"dims\" has {} entries for {len} degrees",
                    given.len()
                )));
            }
            dims = given.iter().map(|&x| Some(x)).collect();
        }
        let fix = |slot: &mut Option<usize>, value: usize, q: i64| -> Result<()> {
            match *slot {
                Some(v) if v != value => Err(Error::InvalidComplex(format!(
                    "inconsistent dimension for C^{q}: {v} vs {value}"
                ))),
                _ => {
                    *slot = Some(value);
                    Ok(())
                }
            }
        };
        for (i, m) in raw.d.iter().enumerate() {
            fix(&mut dims[i + 1], m.len(), q0 + i as i64 + 1)?;
            if let Some(first) = m.first() {
                if m.iter().any(|r| r.0.len() != first.0.len()) {
                    return Err(Error::InvalidComplex(format!(
                        "ragged matrix for d_{}",
                        q0 + i as i64
                    )));
                }
                fix(&mut dims[i], first.0.len(), q0 + i as i64)?;
            }
        }
        let mut bases = None;
        if let Some(hb) = raw.h_bases {
            let mut out = BTreeMap::new();
            for (key, vecs) in hb {
                let q: i64 = key
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("H_bases key {key:?} is not a degree")))?;
                if let Some(i) = Self::index_in(q0, len, q) {
                    if let Some(v) = vecs.first() {
                        fix(&mut dims[i], v.0.len(), q)?;
                    }
                }
                out.insert(q, vecs.into_iter().map(|r| r.0).collect());
            }
            bases = Some(out);
        }
        let dims: Vec<usize> = dims
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                d.ok_or_else(|| {
                    Error::InvalidComplex(format!(
                        "dimension of C^{} is undetermined; add a \"dims\" list",
                        q0 + i as i64
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let differentials = raw
            .d
            .into_iter()
            .enumerate()
            .map(|(i, m)| QMatrix::from_rows(m.into_iter().map(|r| r.0).collect(), dims[i]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(q0, dims, differentials, bases)
    }

    pub fn to_json(&self) -> String {
        let raw = RawComplex {
            degrees: [self.q0, self.last_degree()],
            d: self
                .differentials
                .iter()
                .map(|m| m.to_rows().into_iter().map(RawRow).collect())
                .collect(),
            h_bases: self.cohomology_bases.as_ref().map(|b| {
                b.iter()
                    .map(|(q, v)| (q.to_string(), v.iter().cloned().map(RawRow).collect()))
                    .collect()
            }),
            dims: Some(self.dims.clone()),
        };
        serde_json::to_string(&raw).expect("complex serialises")
    }
}

/// Human-readable summary of a torsion computation.
pub fn describe(c: &BasedCochainComplex, tau: &Rational) -> String {
    format!(
        "degrees [{},{}], dims {:?}, H dims {:?}, tau = {}",
        c.first_degree(),
        c.last_degree(),
        c.dims,
        cohomology_dims(c),
        format_rational(tau)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: usize, cols: usize, e: &[i64]) -> QMatrix {
        QMatrix::from_i64(rows, cols, e)
    }

    fn two_term(a: i64) -> BasedCochainComplex {
        BasedCochainComplex::acyclic(0, vec![1, 1], vec![m(1, 1, &[a])]).unwrap()
    }

    #[test]
    fn two_term_torsion_is_determinant() {
        assert_eq!(reidemeister_torsion(&two_term(5)).unwrap(), int(5));
        assert_eq!(reidemeister_torsion(&two_term(-3)).unwrap(), int(3));
        let c = BasedCochainComplex::acyclic(0, vec![2, 2], vec![m(2, 2, &[2, 1, 0, 3])]).unwrap();
        assert_eq!(reidemeister_torsion(&c).unwrap(), int(6));
    }

    #[test]
    fn identity_has_trivial_torsion() {
        for k in 1..4 {
            let c = BasedCochainComplex::acyclic(0, vec![k, k], vec![QMatrix::identity(k)]).unwrap();
            assert_eq!(reidemeister_torsion(&c).unwrap(), int(1));
            assert_eq!(les_torsion(&c).unwrap(), int(1));
        }
    }

    #[test]
    fn dims_of_small_complexes() {
        assert_eq!(cohomology_dims(&two_term(1)), vec![0, 0]);
        let zero = BasedCochainComplex::acyclic(0, vec![2, 2], vec![QMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(cohomology_dims(&zero), vec![2, 2]);
    }

    #[test]
    fn zero_differential_with_standard_classes() {
        let mut bases = CohomologyBases::new();
        bases.insert(0, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        bases.insert(1, vec![vec![int(1)]]);
        let c = BasedCochainComplex::new(0, vec![2, 1], vec![QMatrix::zeros(1, 2)], Some(bases)).unwrap();
        assert_eq!(reidemeister_torsion(&c).unwrap(), int(1));
    }

    #[test]
    fn missing_and_bad_bases() {
        let zero = BasedCochainComplex::acyclic(0, vec![1, 1], vec![QMatrix::zeros(1, 1)]).unwrap();
        assert!(matches!(reidemeister_torsion(&zero), Err(Error::Precondition(_))));
        let mut bases = CohomologyBases::new();
        bases.insert(0, vec![vec![int(1), int(1)]]);
        bases.insert(1, vec![vec![int(0), int(1)]]);
        // Wrong vector length in degree 1.
        let c = BasedCochainComplex::new(0, vec![2, 1], vec![m(1, 2, &[1, -1])], Some(bases)).unwrap_err();
        assert!(matches!(c, Error::InvalidBasis { .. }));
        let mut bases = CohomologyBases::new();
        // d = [1 -1]: (1,0) is not a cocycle.
        bases.insert(0, vec![vec![int(1), int(0)]]);
        let c = BasedCochainComplex::new(0, vec![2, 1], vec![m(1, 2, &[1, -1])], Some(bases)).unwrap();
        assert!(matches!(reidemeister_torsion(&c), Err(Error::InvalidBasis { .. })));
    }

    #[test]
    fn rejects_non_complex() {
        let err = BasedCochainComplex::acyclic(
            0,
            vec![1, 1, 1],
            vec![m(1, 1, &[1]), m(1, 1, &[1])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidComplex(_)));
    }

    #[test]
    fn shift_inverts_torsion() {
        let c = BasedCochainComplex::acyclic(0, vec![1, 2, 1], vec![m(2, 1, &[1, 2]), m(1, 2, &[6, -3])]).unwrap();
        let t = reidemeister_torsion(&c).unwrap();
        assert_eq!(reidemeister_torsion(&c.shifted(1)).unwrap(), t.recip());
        assert_eq!(reidemeister_torsion(&c.shifted(2)).unwrap(), t);
    }

    #[test]
    fn theta_choice_does_not_matter() {
        let c = BasedCochainComplex::acyclic(0, vec![1, 2, 1], vec![m(2, 1, &[1, 2]), m(1, 2, &[6, -3])]).unwrap();
        let base = reidemeister_torsion(&c).unwrap();
        let mut theta = BTreeMap::new();
        theta.insert(0, m(1, 1, &[7]));
        theta.insert(1, QMatrix::from_rows(vec![vec![rat(1, 3)], vec![int(4)]], 1).unwrap());
        assert_eq!(reidemeister_torsion_with(&c, &theta).unwrap(), base);
    }

    #[test]
    fn rebasing_follows_exponent_rule() {
        let mut bases = CohomologyBases::new();
        bases.insert(0, vec![vec![int(1)]]);
        bases.insert(1, vec![vec![int(1)]]);
        let c = BasedCochainComplex::new(0, vec![1, 1], vec![QMatrix::zeros(1, 1)], Some(bases)).unwrap();
        let t = reidemeister_torsion(&c).unwrap();
        let a = m(1, 1, &[3]);
        assert_eq!(reidemeister_torsion(&c.rebase_cohomology(0, &a).unwrap()).unwrap(), &t * int(3));
        assert_eq!(reidemeister_torsion(&c.rebase_cohomology(1, &a).unwrap()).unwrap(), &t / int(3));
    }

    #[test]
    fn split_sequence_is_multiplicative() {
        let sub = two_term(5);
        let quotient = two_term(2);
        let total = BasedCochainComplex::acyclic(0, vec![2, 2], vec![m(2, 2, &[5, 0, 0, 2])]).unwrap();
        let ses = ShortExactSequence {
            sub,
            total,
            quotient,
            inclusion: vec![m(2, 1, &[1, 0]), m(2, 1, &[1, 0])],
            projection: vec![m(1, 2, &[0, 1]), m(1, 2, &[0, 1])],
        };
        let r = multiplicativity_check(&ses).unwrap();
        assert!(r.holds);
        assert_eq!(r.tau_total, int(10));
        assert_eq!(r.tau_les, int(1));
    }

    #[test]
    fn acyclic_sub_with_zero_quotient() {
        let zero = BasedCochainComplex::acyclic(0, vec![0, 0], vec![QMatrix::zeros(0, 0)]).unwrap();
        let ses = ShortExactSequence {
            sub: two_term(5),
            total: two_term(5),
            quotient: zero,
            inclusion: vec![QMatrix::identity(1), QMatrix::identity(1)],
            projection: vec![QMatrix::zeros(0, 1), QMatrix::zeros(0, 1)],
        };
        let r = multiplicativity_check(&ses).unwrap();
        assert!(r.holds);
        assert_eq!(r.tau_total, int(5));
    }

    #[test]
    fn non_exact_sequence_is_rejected() {
        let ses = ShortExactSequence {
            sub: two_term(1),
            total: two_term(1),
            quotient: two_term(1),
            inclusion: vec![QMatrix::identity(1), QMatrix::identity(1)],
            projection: vec![QMatrix::identity(1), QMatrix::identity(1)],
        };
        assert!(matches!(multiplicativity_check(&ses), Err(Error::Domain(_))));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"degrees":[0,1],"d":[[["5"]]]}"#;
        let c = BasedCochainComplex::from_json(text).unwrap();
        assert_eq!(reidemeister_torsion(&c).unwrap(), int(5));
        assert_eq!(BasedCochainComplex::from_json(&c.to_json()).unwrap(), c);

        let text = r#"{"degrees":[0,1],"d":[[["0"]]],"H_bases":{"0":[["1/2"]],"1":[["3"]]}}"#;
        let c = BasedCochainComplex::from_json(text).unwrap();
        assert_eq!(reidemeister_torsion(&c).unwrap(), int(6));

        let text = r#"{"degrees":[0,1],"d":[[]],"dims":[2,0]}"#;
        let c = BasedCochainComplex::from_json(text).unwrap();
        assert_eq!(cohomology_dims(&c), vec![2, 0]);
    }

    #[test]
    fn json_rejections() {
        for bad in [
            r#"{"degrees":[0,1],"d":[[[1.5]]]}"#,
            r#"{"degrees":[0,1],"d":[]}"#,
            r#"{"degrees":[1,0],"d":[]}"#,
            r#"{"degrees":[0,1],"d":[[]]}"#,
            r#"{"degrees":[0,1],"d":[[["1","2"],["3"]]]}"#,
            r#"{"degrees":[0,1],"d":[[["1/0"]]]}"#,
            r#"{"degrees":[0,1],"d":[[["1"]]],"H_bases":{"x":[]}}"#,
            r#"{"degrees":[0,1],"d":[[["1"]]],"extra":1}"#,
        ] {
            assert!(BasedCochainComplex::from_json(bad).is_err(), "{bad}");
        }
    }
}
