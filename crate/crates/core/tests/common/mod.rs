//! Reference computations written straight from the definitions. They share
//! no code with the library beyond the number type.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use orchard::Configuration;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn coords(cfg: &Configuration) -> Vec<Vec<Q>> {
    cfg.points().iter().map(|p| p.coords().to_vec()).collect()
}

/// Determinant by Gaussian elimination with row swaps.
pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut acc = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let pivot = m[c][c].clone();
        acc *= &pivot;
        for r in c + 1..n {
            let f = &m[r][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    acc
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for k in 0..b {
        r = r * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    r
}

pub fn binom_odd(a: i64, b: i64) -> bool {
    binom(a, b).bit(0)
}

/// Orientation of the simplex `(s_1, ..., s_d, x)` as the sign of the
/// determinant of the rows `(1, p)`.
pub fn orient(pts: &[Vec<Q>], s: &[usize], x: usize) -> i8 {
    let rows = s
        .iter()
        .chain([&x])
        .map(|&k| {
            std::iter::once(q(1))
                .chain(pts[k].iter().cloned())
                .collect()
        })
        .collect();
    sign(&det(rows))
}

pub fn is_generic(pts: &[Vec<Q>]) -> bool {
    let d = pts[0].len();
    (1..=(d + 1).min(pts.len())).all(|k| {
        (0..pts.len()).combinations(k).all(|s| {
            // affine independence: rank of differences equals k - 1
            let rows: Vec<Vec<Q>> = s[1..]
                .iter()
                .map(|&i| pts[i].iter().zip(&pts[s[0]]).map(|(a, b)| a - b).collect())
                .collect();
            rank(rows) == k - 1
        })
    })
}

pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Number of hyperplanes spanned by `d` points other than `i`, `j` (0-based)
/// with `i` and `j` strictly on opposite sides.
pub fn sep_count(pts: &[Vec<Q>], i: usize, j: usize) -> u64 {
    let d = pts[0].len();
    (0..pts.len())
        .filter(|&k| k != i && k != j)
        .combinations(d)
        .filter(|s| orient(pts, s, i) * orient(pts, s, j) < 0)
        .count() as u64
}

/// Checks that `related` is an equivalence relation on `0..n` with at most
/// two classes and returns them as 1-based labels, the class of 1 first.
pub fn classes(
    n: usize,
    related: impl Fn(usize, usize) -> bool,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let m: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || related(i, j)).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != m[j][i] {
                return None;
            }
            for k in 0..n {
                if m[i][j] && m[j][k] && !m[i][k] {
                    return None;
                }
            }
        }
    }
    if n == 0 {
        return Some((vec![], vec![]));
    }
    let a: Vec<usize> = (0..n).filter(|&k| m[0][k]).map(|k| k + 1).collect();
    let b: Vec<usize> = (0..n).filter(|&k| !m[0][k]).map(|k| k + 1).collect();
    let b_ok = b.iter().all(|&x| b.iter().all(|&y| m[x - 1][y - 1]));
    b_ok.then_some((a, b))
}

/// The affine relation on a point list.
pub fn affine_classes(pts: &[Vec<Q>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = pts.len();
    let d = pts[0].len();
    let odd = n >= 3 && binom_odd(n as i64 - 3, d as i64 - 1);
    classes(n, |i, j| (sep_count(pts, i, j) % 2 == 1) == odd)
}

pub fn lib_classes(p: &orchard::OrchardPartition) -> (Vec<usize>, Vec<usize>) {
    (p.class_a.clone(), p.class_b.clone())
}

/// Points of `R^d` in an affine chart of projective space: complete the
/// covector `l` to an invertible matrix `M` with `l` as last row and divide
/// by the last coordinate of `M v`.
pub fn chart_points(vectors: &[Vec<Q>], l: &[Q]) -> Vec<Vec<Q>> {
    let dim = l.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for e in 0..dim {
        let mut cand = rows.clone();
        cand.push((0..dim).map(|k| if k == e { q(1) } else { q(0) }).collect());
        cand.push(l.to_vec());
        if rows.len() < dim - 1 && rank(cand) == rows.len() + 2 {
            rows.push((0..dim).map(|k| if k == e { q(1) } else { q(0) }).collect());
        }
    }
    rows.push(l.to_vec());
    vectors
        .iter()
        .map(|v| {
            let w: Vec<Q> = rows
                .iter()
                .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect();
            let last = w[dim - 1].clone();
            w[..dim - 1].iter().map(|x| x / &last).collect()
        })
        .collect()
}

/// Normal vector of the linear hyperplane through `d` vectors of `R^{d+1}`
/// by cofactor expansion.
pub fn linear_normal(vs: &[&Vec<Q>]) -> Vec<Q> {
    let dim = vs.len() + 1;
    (0..dim)
        .map(|c| {
            let minor: Vec<Vec<Q>> = vs
                .iter()
                .map(|v| (0..dim).filter(|&k| k != c).map(|k| v[k].clone()).collect())
                .collect();
            let m = det(minor);
            if c % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

pub fn dotq(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Simulated wiring diagram: for each letter, the wires at every level
/// just before it (0-based wires, level 0 at the bottom).
pub fn wire_orders(n: usize, word: &[usize]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(word.len());
    for &l in word {
        out.push(order.clone());
        order.swap(l - 1, l);
    }
    out
}

/// `(wedge, band)` crossing counts for wires `i`, `j` (0-based): a crossing
/// of two other wires is in the wedge when it lies between `i` and `j`.
pub fn wire_digons(n: usize, word: &[usize], i: usize, j: usize) -> (u64, u64) {
    let mut wedge = 0;
    let mut band = 0;
    for (t, order) in wire_orders(n, word).iter().enumerate() {
        let l = word[t] - 1;
        let (a, b) = (order[l], order[l + 1]);
        if [a, b].contains(&i) || [a, b].contains(&j) {
            continue;
        }
        let pi = order.iter().position(|&w| w == i).unwrap();
        let pj = order.iter().position(|&w| w == j).unwrap();
        let (lo, hi) = (pi.min(pj), pi.max(pj));
        // crossing sits between levels l and l + 1
        if lo <= l && l + 1 <= hi {
            wedge += 1;
        } else {
            band += 1;
        }
    }
    (wedge, band)
}
