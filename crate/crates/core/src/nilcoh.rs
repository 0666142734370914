//! Brute-force cohomology of the nilradical `n` with coefficients in a
//! finite-dimensional representation of `so(d+1, ℂ)`.
//!
//! Representations are realised inside tensor powers of the standard
//! representation. The standard representation uses the basis
//! `v_0, …, v_{N-1}` (`N = d + 1 = 2m`) of weights `e_1, …, e_m, −e_m, …, −e_1`,
//! orthogonal for the antidiagonal form, so the Cartan subalgebra is diagonal
//! and `H₁ = diag(1, 0, …, 0, −1)`. The nilradical is spanned by the root
//! vectors of `e₁ ± e_j`, `j ≥ 2`; it is abelian and `ad(H₁)` acts on it by one.

use std::collections::{BTreeMap, HashMap};

use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kostant::kostant_data_closed_form;
use crate::linalg::{CoordinateSolver, EchelonSpan, QMatrix};
use crate::rational::{int, Rational};
use crate::weights::{build_root_system, weyl_dimension, HighestWeight, WeightContext};

/// Largest total tensor degree used to realise a representation.
pub const MAX_TENSOR_DEGREE: usize = 4;

/// Sparse operator on the standard representation: `(row, col, value)`.
#[derive(Debug, Clone)]
struct StdOp {
    entries: Vec<(usize, usize, i64)>,
}

impl StdOp {
    fn to_matrix(&self, n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += int(v);
        }
        m
    }
}

/// `so(2m, ℂ)` in the antidiagonal realisation.
#[derive(Debug, Clone)]
struct SoAlgebra {
    m: usize,
}

impl SoAlgebra {
    fn size(&self) -> usize {
        2 * self.m
    }

    fn bar(&self, a: usize) -> usize {
        self.size() - 1 - a
    }

    /// Weight of basis vector `v_a` in `e` coordinates.
    fn basis_weight(&self, a: usize) -> Vec<i64> {
        let mut w = vec![0; self.m];
        if a < self.m {
            w[a] = 1;
        } else {
            w[self.bar(a)] = -1;
        }
        w
    }

    /// `E_ab − E_{b̄ā}`.
    fn x(&self, a: usize, b: usize) -> StdOp {
        StdOp {
            entries: vec![(a, b, 1), (self.bar(b), self.bar(a), -1)],
        }
    }

    fn cartan(&self, i: usize) -> StdOp {
        StdOp {
            entries: vec![(i, i, 1), (self.bar(i), self.bar(i), -1)],
        }
    }

    /// `(X_α, X_{−α})` for `α = e_i + s·e_j`, normalised so `[X_α, X_{−α}] = H_α`.
    fn root_pair(&self, i: usize, j: usize, s: i64) -> (StdOp, StdOp) {
        let a = i;
        let b = if s < 0 { j } else { self.bar(j) };
        (self.x(a, b), self.x(b, a))
    }

    /// Positive roots `e_i ± e_j`, `i < j`.
    fn positive_roots(&self) -> Vec<(StdOp, StdOp)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in i + 1..self.m {
                for s in [-1, 1] {
                    out.push(self.root_pair(i, j, s));
                }
            }
        }
        out
    }

    /// Simple roots `e_i − e_{i+1}` and `e_{m−1} + e_m`.
    fn simple_roots(&self) -> Vec<(StdOp, StdOp)> {
        let m = self.m;
        let mut out: Vec<_> = (0..m.saturating_sub(1))
            .map(|i| self.root_pair(i, i + 1, -1))
            .collect();
        if m >= 2 {
            out.push(self.root_pair(m - 2, m - 1, 1));
        }
        out
    }

    /// Basis `Y_1..Y_{2n}` of the nilradical: `e₁ − e_j` then `e₁ + e_j`.
    fn nilradical(&self) -> Vec<StdOp> {
        let mut out = Vec::new();
        for j in 1..self.m {
            out.push(self.root_pair(0, j, -1).0);
        }
        for j in (1..self.m).rev() {
            out.push(self.root_pair(0, j, 1).0);
        }
        out
    }
}

/// Dense vector in `V^{⊗k}`.
type TensorVec = Vec<Rational>;

struct TensorSpace {
    base: usize,
    degree: usize,
}

impl TensorSpace {
    fn dim(&self) -> usize {
        self.base.pow(self.degree as u32)
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for s in (0..self.degree).rev() {
            out[s] = idx % self.base;
            idx /= self.base;
        }
        out
    }

    fn apply(&self, op: &StdOp, v: &[Rational]) -> TensorVec {
        let mut out = vec![Rational::zero(); v.len()];
        let mut by_col: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &(r, c, x) in &op.entries {
            by_col.entry(c).or_default().push((r, x));
        }
        for (idx, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let digits = self.digits(idx);
            for (s, &digit) in digits.iter().enumerate() {
                let stride = self.base.pow((self.degree - 1 - s) as u32);
                if let Some(targets) = by_col.get(&digit) {
                    for &(r, x) in targets {
                        let new_idx = idx - digit * stride + r * stride;
                        out[new_idx] += coeff * int(x);
                    }
                }
            }
        }
        out
    }
}

/// Matrix model of a representation restricted to the data the cohomology
/// computation needs.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    d: usize,
    dim_v: usize,
    n_action: Vec<QMatrix>,
    a_action: QMatrix,
    casimir: QMatrix,
    highest_weight: HighestWeight,
}

impl MatrixRep {
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_action(&self) -> &[QMatrix] {
        &self.n_action
    }

    pub fn a_action(&self) -> &QMatrix {
        &self.a_action
    }

    pub fn casimir(&self) -> &QMatrix {
        &self.casimir
    }

    pub fn highest_weight(&self) -> &HighestWeight {
        &self.highest_weight
    }

    /// Diagonal entries of the `H₁` action, if it is diagonal.
    pub fn a_eigenvalues(&self) -> Option<Vec<Rational>> {
        let a = &self.a_action;
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j && !a[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        Some((0..a.rows()).map(|i| a[(i, i)].clone()).collect())
    }

    /// Commuting nilpotent `n` action with `[H₁, Y] = Y`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.dim_v;
        for (i, y) in self.n_action.iter().enumerate() {
            if y.rows() != n || y.cols() != n {
                return Err(Error::Construction(format!("Y_{i} has the wrong shape")));
            }
            let mut power = y.clone();
            for _ in 1..n.max(1) {
                power = power.mul(y)?;
            }
            if !power.is_zero() && n > 0 {
                return Err(Error::Construction(format!("Y_{i} is not nilpotent")));
            }
            let bracket = self.a_action.mul(y)?.add(&y.mul(&self.a_action)?.scale(&int(-1)))?;
            if bracket != *y {
                return Err(Error::Construction(format!("[H₁, Y_{i}] ≠ Y_{i}")));
            }
            for (j, z) in self.n_action.iter().enumerate().skip(i + 1) {
                if y.mul(z)? != z.mul(y)? {
                    return Err(Error::Construction(format!("Y_{i} and Y_{j} do not commute")));
                }
            }
        }
        Ok(())
    }
}

fn check_d(d: usize) -> Result<()> {
    if !(3..=7).contains(&d) || d.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "matrix models are built for odd d in 3..=7, got {d}"
        )));
    }
    Ok(())
}

/// `⟨Λ + 2ρ, Λ⟩` with `ρ = (m−1, …, 0)`.
fn casimir_eigenvalue(weight: &[Rational]) -> Rational {
    let m = weight.len();
    weight
        .iter()
        .enumerate()
        .map(|(i, k)| (k + int(2 * (m - 1 - i) as i64)) * k)
        .fold(Rational::zero(), |a, b| a + b)
}

/// Restricts the algebra to the invariant subspace spanned by `basis` and
/// assembles the representation matrices.
fn restrict(
    alg: &SoAlgebra,
    d: usize,
    apply: &dyn Fn(&StdOp, &[Rational]) -> TensorVec,
    basis: &[TensorVec],
    ambient: usize,
    highest_weight: HighestWeight,
) -> Result<MatrixRep> {
    let dim = basis.len();
    let solver = CoordinateSolver::new(basis, ambient)?;
    let restricted = |op: &StdOp| -> Result<QMatrix> {
        let mut cols = Vec::with_capacity(dim);
        for b in basis {
            let image = apply(op, b);
            let c = solver.coordinates(&image)?.ok_or_else(|| {
                Error::Construction("subspace is not invariant under the algebra".into())
            })?;
            cols.push(c);
        }
        QMatrix::from_columns(&cols, dim)
    };

    let n_action = alg
        .nilradical()
        .iter()
        .map(&restricted)
        .collect::<Result<Vec<_>>>()?;
    let a_action = restricted(&alg.cartan(0))?;

    let mut casimir = QMatrix::zeros(dim, dim);
    for i in 0..alg.m {
        let h = restricted(&alg.cartan(i))?;
        casimir = casimir.add(&h.mul(&h)?)?;
    }
    for (up, down) in alg.positive_roots() {
        let x = restricted(&up)?;
        let y = restricted(&down)?;
        casimir = casimir.add(&x.mul(&y)?)?.add(&y.mul(&x)?)?;
    }
    let expected = casimir_eigenvalue(highest_weight.components());
    if casimir != QMatrix::identity(dim).scale(&expected) {
        return Err(Error::Construction(format!(
            "Casimir does not act by ⟨Λ+2ρ,Λ⟩ = {expected} on {highest_weight}"
        )));
    }
    let rep = MatrixRep {
        d,
        dim_v: dim,
        n_action,
        a_action,
        casimir,
        highest_weight,
    };
    rep.check_invariants()?;
    Ok(rep)
}

/// The `(d+1)`-dimensional standard representation.
pub fn standard_rep(d: usize) -> Result<MatrixRep> {
    check_d(d)?;
    let m = d.div_ceil(2);
    let alg = SoAlgebra { m };
    let big_n = alg.size();
    let space = TensorSpace {
        base: big_n,
        degree: 1,
    };
    let basis: Vec<TensorVec> = (0..big_n)
        .map(|i| {
            let mut v = vec![Rational::zero(); big_n];
            v[i] = Rational::one();
            v
        })
        .collect();
    let mut hw = vec![0i64; m];
    hw[0] = 1;
    let weight = HighestWeight::from_i64(&hw, WeightContext::G)?;
    let rep = restrict(&alg, d, &|op, v| space.apply(op, v), &basis, big_n, weight)?;
    // Calibration: with this normalisation the Casimir of the standard
    // representation is 2n + 1 = d.
    debug_assert_eq!(rep.casimir[(0, 0)], int(d as i64));
    debug_assert_eq!(alg.nilradical()[0].to_matrix(big_n), rep.n_action[0]);
    Ok(rep)
}

/// The irreducible representation of highest weight `weight`, realised as
/// the cyclic submodule generated by a highest-weight vector in
/// `V^{⊗k}`, `k = Σ|Λ_i|`.
pub fn build_rep(d: usize, weight: &HighestWeight) -> Result<MatrixRep> {
    check_d(d)?;
    let m = d.div_ceil(2);
    if weight.context() != WeightContext::G || weight.rank() != m {
        return Err(Error::Domain(format!(
            "expected a G weight with {m} components, got {weight}"
        )));
    }
    if !weight.is_integral() {
        return Err(Error::Domain(
            "half-integral weights have no tensor model".into(),
        ));
    }
    if !weight.is_dominant() {
        return Err(Error::Domain(format!("{weight} is not dominant")));
    }
    let target: Vec<i64> = weight
        .components()
        .iter()
        .map(|k| k.to_integer().to_i64().expect("small integer"))
        .collect();
    let degree: usize = target.iter().map(|k| k.unsigned_abs() as usize).sum();
    if degree > MAX_TENSOR_DEGREE {
        return Err(Error::ResourceLimit {
            what: "tensor degree",
            requested: degree,
            limit: MAX_TENSOR_DEGREE,
        });
    }
    let alg = SoAlgebra { m };
    if degree == 0 {
        return Ok(MatrixRep {
            d,
            dim_v: 1,
            n_action: vec![QMatrix::zeros(1, 1); 2 * (m - 1)],
            a_action: QMatrix::zeros(1, 1),
            casimir: QMatrix::zeros(1, 1),
            highest_weight: weight.clone(),
        });
    }
    let space = TensorSpace {
        base: alg.size(),
        degree,
    };
    let ambient = space.dim();

    // Weight-Λ subspace of V^{⊗k} is spanned by basis tensors.
    let candidates: Vec<usize> = (0..ambient)
        .filter(|&idx| {
            let mut w = vec![0i64; m];
            for c in space.digits(idx) {
                for (x, y) in w.iter_mut().zip(alg.basis_weight(c)) {
                    *x += y;
                }
            }
            w == target
        })
        .collect();
    let raising: Vec<StdOp> = alg.simple_roots().into_iter().map(|(up, _)| up).collect();
    let lowering: Vec<StdOp> = alg.simple_roots().into_iter().map(|(_, down)| down).collect();

    let unit = |idx: usize| {
        let mut v = vec![Rational::zero(); ambient];
        v[idx] = Rational::one();
        v
    };
    // Rows: (raising op, output coordinate) pairs that occur.
    let mut row_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut images = Vec::with_capacity(candidates.len());
    for &c in &candidates {
        let mut col = BTreeMap::new();
        for (o, op) in raising.iter().enumerate() {
            for (i, x) in space.apply(op, &unit(c)).into_iter().enumerate() {
                if !x.is_zero() {
                    let next = row_index.len();
                    let r = *row_index.entry((o, i)).or_insert(next);
                    col.insert(r, x);
                }
            }
        }
        images.push(col);
    }
    let mut constraint = QMatrix::zeros(row_index.len(), candidates.len());
    for (j, col) in images.iter().enumerate() {
        for (&r, x) in col {
            constraint[(r, j)] = x.clone();
        }
    }
    let kernel = constraint.kernel();
    let Some(coeffs) = kernel.first() else {
        return Err(Error::AmbiguousProjection(format!(
            "no highest-weight vector of weight {weight} in V^⊗{degree}; choose a different tensor construction"
        )));
    };
    let mut hw = vec![Rational::zero(); ambient];
    for (c, x) in candidates.iter().zip(coeffs) {
        hw[*c] = x.clone();
    }

    // Cyclic submodule: close under the simple lowering operators. Every
    // vector produced is a weight vector, so H₁ stays diagonal.
    let mut span = EchelonSpan::new(ambient);
    let mut basis = Vec::new();
    let mut frontier = vec![hw];
    let limit = weyl_dimension(&build_root_system(m as i64)?, weight)? as usize;
    while let Some(v) = frontier.pop() {
        if !span.insert(&v) {
            continue;
        }
        for op in &lowering {
            let w = space.apply(op, &v);
            if w.iter().any(|x| !x.is_zero()) {
                frontier.push(w);
            }
        }
        basis.push(v);
        if basis.len() > limit {
            break;
        }
    }
    if basis.len() != limit {
        return Err(Error::AmbiguousProjection(format!(
            "generated submodule has dimension {} but the Weyl dimension of {weight} is {limit}",
            basis.len()
        )));
    }
    restrict(&alg, d, &|op, v| space.apply(op, v), &basis, ambient, weight.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AWeight {
    #[serde(with = "crate::rational::serde_rational")]
    pub weight: Rational,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub dim: u64,
    /// Sorted by descending weight.
    pub a_weights: Vec<AWeight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<u64> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    fn from_maps(maps: Vec<BTreeMap<Rational, u64>>) -> Self {
        let degrees = maps
            .into_iter()
            .enumerate()
            .map(|(degree, m)| DegreeCohomology {
                degree,
                dim: m.values().sum(),
                a_weights: m
                    .into_iter()
                    .rev()
                    .filter(|(_, k)| *k > 0)
                    .map(|(weight, multiplicity)| AWeight {
                        weight,
                        multiplicity,
                    })
                    .collect(),
            })
            .collect();
        CohomologyReport { degrees }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `H^*(n; V)` with the induced `H₁` weights, by exact rank computations on
/// the Chevalley–Eilenberg complex `Λ^k n* ⊗ V`.
pub fn nil_cohomology(rep: &MatrixRep) -> Result<CohomologyReport> {
    let r = rep.n_action.len();
    let dim_v = rep.dim_v;
    let a = rep.a_eigenvalues().ok_or_else(|| {
        Error::Precondition("the H₁ action must be diagonal in the chosen basis".into())
    })?;
    let subsets: Vec<Vec<Vec<usize>>> = (0..=r).map(|k| combinations(r, k)).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = subsets
        .iter()
        .map(|ss| ss.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();

    // Weight of e^S ⊗ v_i is a_i − |S|; group cochains by weight.
    let weight_of = |k: usize, i: usize| &a[i] - int(k as i64);
    let group = |k: usize| -> BTreeMap<Rational, Vec<(usize, usize)>> {
        let mut g: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
        for s in 0..subsets[k].len() {
            for i in 0..dim_v {
                g.entry(weight_of(k, i)).or_default().push((s, i));
            }
        }
        g
    };
    let groups: Vec<_> = (0..=r).map(group).collect();

    // d(e^S ⊗ v) = Σ_{t∉S} (−1)^{pos(t)} e^{S∪t} ⊗ Y_t v, restricted to one weight.
    let differential = |k: usize, mu: &Rational| -> Result<QMatrix> {
        let empty = Vec::new();
        let cols = groups[k].get(mu).unwrap_or(&empty);
        let rows = groups[k + 1].get(mu).unwrap_or(&empty);
        let row_pos: HashMap<(usize, usize), usize> =
            rows.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut mat = QMatrix::zeros(rows.len(), cols.len());
        for (j, &(s, v)) in cols.iter().enumerate() {
            let set = &subsets[k][s];
            for t in (0..r).filter(|t| !set.contains(t)) {
                let pos = set.iter().filter(|&&x| x < t).count();
                let mut bigger = set.clone();
                bigger.insert(pos, t);
                let target = index[k + 1][&bigger];
                let y = &rep.n_action[t];
                for w in 0..dim_v {
                    let c = &y[(w, v)];
                    if c.is_zero() {
                        continue;
                    }
                    let Some(&row) = row_pos.get(&(target, w)) else {
                        return Err(Error::Construction(
                            "differential does not preserve the H₁ weight".into(),
                        ));
                    };
                    if pos % 2 == 0 {
                        mat[(row, j)] += c;
                    } else {
                        mat[(row, j)] -= c;
                    }
                }
            }
        }
        Ok(mat)
    };

    let mut all_weights: Vec<Rational> = groups.iter().flat_map(|g| g.keys().cloned()).collect();
    all_weights.sort();
    all_weights.dedup();

    let mut maps = vec![BTreeMap::new(); r + 1];
    for mu in &all_weights {
        let mut ranks = vec![0usize; r + 1];
        let mut prev: Option<QMatrix> = None;
        for (k, rank) in ranks.iter_mut().enumerate().take(r) {
            let dk = differential(k, mu)?;
            if let Some(p) = &prev {
                if p.cols() > 0 && dk.rows() > 0 && !dk.mul(p)?.is_zero() {
                    return Err(Error::Construction(format!("d∘d ≠ 0 in degree {k}")));
                }
            }
            *rank = dk.rank();
            prev = Some(dk);
        }
        for k in 0..=r {
            let dim_ck = groups[k].get(mu).map_or(0, Vec::len);
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            let h = dim_ck - ranks[k] - below;
            if h > 0 {
                maps[k].insert(mu.clone(), h as u64);
            }
        }
    }
    Ok(CohomologyReport::from_maps(maps))
}

/// Cohomology predicted by Kostant's theorem: `σ_w` of dimension `dim σ_w`
/// in degree `l(w)` with `H₁` weight `λ_w − n`.
pub fn kostant_prediction(weight: &HighestWeight, n: usize) -> Result<CohomologyReport> {
    let data = kostant_data_closed_form(weight, n)?;
    let rs = build_root_system(n as i64)?;
    let mut maps = vec![BTreeMap::new(); 2 * n + 1];
    for datum in data {
        let dim = weyl_dimension(&rs, &datum.sigma)?;
        *maps[datum.length]
            .entry(&datum.lambda - int(n as i64))
            .or_insert(0) += dim;
    }
    Ok(CohomologyReport::from_maps(maps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: &[i64]) -> HighestWeight {
        HighestWeight::from_i64(c, WeightContext::G).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn standard_rep_shapes() {
        let r3 = standard_rep(3).unwrap();
        assert_eq!(r3.dim_v(), 4);
        assert_eq!(r3.n_action().len(), 2);
        assert_eq!(
            r3.a_eigenvalues().unwrap(),
            vec![int(1), int(0), int(0), int(-1)]
        );
        assert_eq!(*r3.casimir(), QMatrix::identity(4).scale(&int(3)));
        let r5 = standard_rep(5).unwrap();
        assert_eq!(r5.dim_v(), 6);
        assert_eq!(r5.n_action().len(), 4);
        assert!(standard_rep(4).is_err());
        assert!(standard_rep(9).is_err());
    }

    #[test]
    fn build_rep_dimensions() {
        assert_eq!(build_rep(3, &g(&[1, 0])).unwrap().dim_v(), 4);
        assert_eq!(build_rep(3, &g(&[2, 0])).unwrap().dim_v(), 9);
        assert_eq!(build_rep(3, &g(&[1, 1])).unwrap().dim_v(), 3);
        assert_eq!(build_rep(3, &g(&[1, -1])).unwrap().dim_v(), 3);
        assert_eq!(build_rep(3, &g(&[2, 1])).unwrap().dim_v(), 8);
        assert_eq!(build_rep(5, &g(&[1, 1, 0])).unwrap().dim_v(), 15);
        assert_eq!(build_rep(3, &g(&[0, 0])).unwrap().dim_v(), 1);
    }

    #[test]
    fn build_rep_bounds() {
        assert!(matches!(
            build_rep(3, &g(&[5, 0])),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(build_rep(3, &g(&[1, 0, 0])).is_err());
    }

    #[test]
    fn standard_rep_cohomology() {
        let report = nil_cohomology(&standard_rep(3).unwrap()).unwrap();
        assert_eq!(report.dims(), vec![1, 2, 1]);
        assert_eq!(
            report.degrees[0].a_weights,
            vec![AWeight {
                weight: int(1),
                multiplicity: 1
            }]
        );
        assert_eq!(report, kostant_prediction(&g(&[1, 0]), 1).unwrap());
    }

    #[test]
    fn trivial_rep_gives_binomials() {
        for d in [3usize, 5, 7] {
            let n = (d - 1) / 2;
            let zero = HighestWeight::zero(n + 1, WeightContext::G);
            let report = nil_cohomology(&build_rep(d, &zero).unwrap()).unwrap();
            let expect: Vec<u64> = (0..=2 * n as u64).map(|k| binom(2 * n as u64, k)).collect();
            assert_eq!(report.dims(), expect);
        }
    }

    #[test]
    fn self_dual_and_twisted_reps_match_prediction() {
        for w in [[1, 1], [1, -1], [2, 1], [2, -1]] {
            let weight = g(&w);
            let report = nil_cohomology(&build_rep(3, &weight).unwrap()).unwrap();
            assert_eq!(report, kostant_prediction(&weight, 1).unwrap(), "{weight}");
            let dims = report.dims();
            let mut rev = dims.clone();
            rev.reverse();
            assert_eq!(dims, rev);
        }
    }

    #[test]
    fn euler_characteristic_vanishes() {
        let report = nil_cohomology(&build_rep(5, &g(&[1, 1, 0])).unwrap()).unwrap();
        let chi: i64 = report
            .dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(chi, 0);
        assert_eq!(report, kostant_prediction(&g(&[1, 1, 0]), 2).unwrap());
    }
}
