//! Random inputs shared by integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::Rng;

use cusptorsion::linalg::{invert, QMatrix};
use cusptorsion::rational::{int, rat, Rational};
use cusptorsion::torsion::{BasedCochainComplex, CohomologyBases, ShortExactSequence};
use cusptorsion::weights::{Flavor, HighestWeight, WeightContext};

pub fn random_rational<R: Rng>(rng: &mut R, range: i64) -> Rational {
    rat(rng.gen_range(-range..=range), rng.gen_range(1..=3))
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        let m = QMatrix::from_fn(n, n, |_, _| int(rng.gen_range(-3..=3)));
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

/// Random dominant `G` weight of rank `rank`; half-integral if `half`.
pub fn random_weight<R: Rng>(rng: &mut R, rank: usize, half: bool, spread: i64) -> HighestWeight {
    let mut c = vec![0i64; rank];
    // Work with doubled coordinates so half-integers stay integral.
    let step = |rng: &mut R| 2 * rng.gen_range(0..=spread);
    let offset = if half { 1 } else { 0 };
    let last = 2 * rng.gen_range(0..=spread) + offset;
    c[rank - 1] = if rng.gen_bool(0.5) { last } else { -last };
    let mut prev = last;
    for i in (0..rank - 1).rev() {
        prev += step(rng);
        c[i] = prev;
    }
    let comps: Vec<Rational> = c.iter().map(|&x| rat(x, 2)).collect();
    let flavor = if half { Flavor::Spin } else { Flavor::SO0 };
    HighestWeight::new(comps, WeightContext::G, flavor).unwrap()
}

/// As [`random_weight`] with a nonzero last coordinate.
pub fn random_acyclic_weight<R: Rng>(rng: &mut R, rank: usize, half: bool, spread: i64) -> HighestWeight {
    loop {
        let w = random_weight(rng, rank, half, spread);
        if !w.last().is_zero() {
            return w;
        }
    }
}

#[derive(Clone, Copy)]
enum Piece {
    /// A lone `ℚ` in degree `q`, a cohomology class.
    Class { q: usize },
    /// `ℚ →(c) ℚ` from degree `q` to `q+1`.
    Arrow { q: usize, c: i64 },
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Sub,
    Quotient,
    /// Target in the subcomplex, source in the quotient.
    Split,
}

/// Coordinates: per degree, the list of (piece index, slot) for sub and quotient.
struct Layout {
    sub: Vec<Vec<(usize, u8)>>,
    quot: Vec<Vec<(usize, u8)>>,
}

/// A degreewise exact `0 → C′ → C → C″ → 0` with random bases, compatible
/// in the volume sense, at most `len ≤ 4` degrees and `dim ≤ 6`.
pub fn random_exact_triple<R: Rng>(rng: &mut R) -> ShortExactSequence {
    let len = rng.gen_range(1..=4usize);
    let q0 = rng.gen_range(-1..=1i64);
    let mut pieces: Vec<(Piece, Side)> = Vec::new();
    let mut dims = vec![0usize; len];
    for _ in 0..rng.gen_range(1..=8) {
        let piece = if len > 1 && rng.gen_bool(0.6) {
            let q = rng.gen_range(0..len - 1);
            let mut c = rng.gen_range(-4..=4);
            if c == 0 {
                c = 1;
            }
            Piece::Arrow { q, c }
        } else {
            Piece::Class {
                q: rng.gen_range(0..len),
            }
        };
        let fits = match piece {
            Piece::Class { q } => dims[q] < 6,
            Piece::Arrow { q, .. } => dims[q] < 6 && dims[q + 1] < 6,
        };
        if !fits {
            continue;
        }
        let side = match (piece, rng.gen_range(0..3)) {
            (_, 0) => Side::Sub,
            (Piece::Arrow { .. }, 2) => Side::Split,
            _ => Side::Quotient,
        };
        match piece {
            Piece::Class { q } => dims[q] += 1,
            Piece::Arrow { q, .. } => {
                dims[q] += 1;
                dims[q + 1] += 1;
            }
        }
        pieces.push((piece, side));
    }

    let mut layout = Layout {
        sub: vec![Vec::new(); len],
        quot: vec![Vec::new(); len],
    };
    for (idx, (piece, side)) in pieces.iter().enumerate() {
        match (*piece, *side) {
            (Piece::Class { q }, Side::Sub) => layout.sub[q].push((idx, 0)),
            (Piece::Class { q }, _) => layout.quot[q].push((idx, 0)),
            (Piece::Arrow { q, .. }, Side::Sub) => {
                layout.sub[q].push((idx, 0));
                layout.sub[q + 1].push((idx, 1));
            }
            (Piece::Arrow { q, .. }, Side::Quotient) => {
                layout.quot[q].push((idx, 0));
                layout.quot[q + 1].push((idx, 1));
            }
            (Piece::Arrow { q, .. }, Side::Split) => {
                layout.quot[q].push((idx, 0));
                layout.sub[q + 1].push((idx, 1));
            }
        }
    }
    // Coordinates of C^q: sub slots first, then quotient slots.
    let total: Vec<Vec<(usize, u8)>> = (0..len)
        .map(|q| layout.sub[q].iter().chain(&layout.quot[q]).copied().collect())
        .collect();

    let differential = |coords: &[Vec<(usize, u8)>], q: usize| -> QMatrix {
        let src = &coords[q];
        let dst = &coords[q + 1];
        QMatrix::from_fn(dst.len(), src.len(), |r, c| {
            let (pi, ps) = src[c];
            let (ti, ts) = dst[r];
            match pieces[pi].0 {
                Piece::Arrow { c: k, .. } if pi == ti && ps == 0 && ts == 1 => int(k),
                _ => Rational::zero(),
            }
        })
    };
    let diffs = |coords: &[Vec<(usize, u8)>]| -> Vec<QMatrix> {
        (0..len - 1).map(|q| differential(coords, q)).collect()
    };
    // An arrow survives in C′ or C″ only when both of its slots lie there.
    let sub_diffs = diffs(&layout.sub);
    let quot_diffs = diffs(&layout.quot);
    let total_diffs = diffs(&total);

    // Cocycle representatives of classes: lone classes and, for C′ and C″,
    // the two halves of split arrows.
    let classes = |coords: &[Vec<(usize, u8)>], keep: &dyn Fn(usize, u8) -> bool| -> Vec<Vec<Vec<Rational>>> {
        (0..len)
            .map(|q| {
                coords[q]
                    .iter()
                    .enumerate()
                    .filter(|(_, &(pi, slot))| keep(pi, slot))
                    .map(|(i, _)| {
                        let mut v = vec![Rational::zero(); coords[q].len()];
                        v[i] = Rational::one();
                        v
                    })
                    .collect()
            })
            .collect()
    };
    let is_class = |pi: usize, _: u8| matches!(pieces[pi].0, Piece::Class { .. });
    let is_split = |pi: usize, _: u8| pieces[pi].1 == Side::Split;
    let sub_classes = classes(&layout.sub, &|pi, s| is_class(pi, s) || is_split(pi, s));
    let quot_classes = classes(&layout.quot, &|pi, s| is_class(pi, s) || is_split(pi, s));
    let total_classes = classes(&total, &is_class);

    // Random coordinate changes with det P = det P′ · det P″ in every degree.
    let dim_sub: Vec<usize> = layout.sub.iter().map(Vec::len).collect();
    let dim_quot: Vec<usize> = layout.quot.iter().map(Vec::len).collect();
    let dim_total: Vec<usize> = total.iter().map(Vec::len).collect();
    let p_sub: Vec<QMatrix> = dim_sub.iter().map(|&n| random_invertible(rng, n)).collect();
    let p_quot: Vec<QMatrix> = dim_quot.iter().map(|&n| random_invertible(rng, n)).collect();
    let p_total: Vec<QMatrix> = (0..len)
        .map(|q| {
            let n = dim_total[q];
            if n == 0 {
                return QMatrix::identity(0);
            }
            let mut m = random_invertible(rng, n);
            let target = p_sub[q].determinant().unwrap() * p_quot[q].determinant().unwrap();
            let scale = target / m.determinant().unwrap();
            for r in 0..n {
                m[(r, 0)] = &m[(r, 0)] * &scale;
            }
            m
        })
        .collect();

    // Old coordinates x = P·x_new, so d_new = P_{q+1}^{-1} d P_q.
    let conj = |ds: &[QMatrix], ps: &[QMatrix]| -> Vec<QMatrix> {
        ds.iter()
            .enumerate()
            .map(|(q, d)| invert(&ps[q + 1]).unwrap().mul(d).unwrap().mul(&ps[q]).unwrap())
            .collect()
    };
    let mut rebase_classes = |cl: &[Vec<Vec<Rational>>], ps: &[QMatrix], ds: &[QMatrix]| -> CohomologyBases {
        let mut out = BTreeMap::new();
        for (q, vs) in cl.iter().enumerate() {
            if vs.is_empty() {
                continue;
            }
            let inv = invert(&ps[q]).unwrap();
            let mut new = Vec::new();
            for v in vs {
                let mut w = inv.mul_vec(v).unwrap();
                // Rescale and add a random coboundary.
                let s = loop {
                    let s = random_rational(rng, 3);
                    if !s.is_zero() {
                        break s;
                    }
                };
                for x in w.iter_mut() {
                    *x = &*x * &s;
                }
                if q > 0 && ps[q - 1].rows() > 0 {
                    let pre: Vec<Rational> = (0..ps[q - 1].rows()).map(|_| random_rational(rng, 2)).collect();
                    let b = ds[q - 1].mul_vec(&pre).unwrap();
                    for (x, y) in w.iter_mut().zip(b) {
                        *x += y;
                    }
                }
                new.push(w);
            }
            out.insert(q0 + q as i64, new);
        }
        out
    };

    let sub_d = conj(&sub_diffs, &p_sub);
    let quot_d = conj(&quot_diffs, &p_quot);
    let total_d = conj(&total_diffs, &p_total);
    let sub_b = rebase_classes(&sub_classes, &p_sub, &sub_d);
    let quot_b = rebase_classes(&quot_classes, &p_quot, &quot_d);
    let total_b = rebase_classes(&total_classes, &p_total, &total_d);

    // Block inclusion/projection, then conjugated: i_new = P^{-1} i P′, p_new = P″^{-1} p P.
    let inclusion: Vec<QMatrix> = (0..len)
        .map(|q| {
            let i = QMatrix::from_fn(dim_total[q], dim_sub[q], |r, c| {
                if r == c { Rational::one() } else { Rational::zero() }
            });
            invert(&p_total[q]).unwrap().mul(&i).unwrap().mul(&p_sub[q]).unwrap()
        })
        .collect();
    let projection: Vec<QMatrix> = (0..len)
        .map(|q| {
            let p = QMatrix::from_fn(dim_quot[q], dim_total[q], |r, c| {
                if c == r + dim_sub[q] { Rational::one() } else { Rational::zero() }
            });
            invert(&p_quot[q]).unwrap().mul(&p).unwrap().mul(&p_total[q]).unwrap()
        })
        .collect();

    let make = |dims: Vec<usize>, d: Vec<QMatrix>, b: CohomologyBases| {
        BasedCochainComplex::new(q0, dims, d, Some(b)).unwrap()
    };
    ShortExactSequence {
        sub: make(dim_sub, sub_d, sub_b),
        total: make(dim_total, total_d, total_b),
        quotient: make(dim_quot, quot_d, quot_b),
        inclusion,
        projection,
    }
}
