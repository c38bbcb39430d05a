//! Exact integer linear algebra and lattice vocabulary: Gram forms of cyclic
//! plumbings, Smith normal form, characteristic covectors, vector subsets of
//! the standard negative-definite lattice, and lens space d-invariants.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;
pub type Rational = Ratio<i128>;

pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}/1", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ser_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

pub fn ser_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational_string))
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j]).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn check_square(m: &Matrix) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramForm {
    pub q: Matrix,
}

impl GramForm {
    pub fn new(q: Matrix) -> Result<Self> {
        let n = check_square(&q)?;
        if (0..n).any(|i| (0..i).any(|j| q[i][j] != q[j][i])) {
            return Err(Error::Invalid("Gram matrix is not symmetric".into()));
        }
        Ok(GramForm { q })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn det(&self) -> i128 {
        det_exact(&self.q).expect("square")
    }

    /// Leading principal minors alternate in sign, starting negative.
    pub fn is_negative_definite(&self) -> bool {
        let n = self.n();
        (1..=n).all(|k| {
            let sub: Matrix = self.q[..k].iter().map(|r| r[..k].to_vec()).collect();
            let d = det_exact(&sub).unwrap();
            if k % 2 == 1 {
                d < 0
            } else {
                d > 0
            }
        })
    }
}

/// Framing of the single handle when the string has one entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RankOneFraming {
    MinusAMinus2,
    MinusAMinus1,
    /// The closing corner counted twice: `-a - 2` for odd `t`, `-a + 2` for
    /// even `t`. This is the one that matches the closure determinant.
    Cyclic,
}

/// Intersection form of the cyclic plumbing for `(t, a)`: diagonal `-a_i`,
/// neighbours `+1`, closing corner `-1` for odd `t` and `+1` for even `t`.
/// For two entries the off-diagonal is 0 (odd) or 2 (even).
pub fn gram_form(t: i64, a: &[i64]) -> Result<GramForm> {
    gram_form_with(t, a, None)
}

pub fn gram_form_with(t: i64, a: &[i64], rank_one: Option<RankOneFraming>) -> Result<GramForm> {
    if let Some(&x) = a.iter().find(|&&x| x < 2) {
        return Err(Error::EntryTooSmall(x));
    }
    let n = a.len();
    let odd = t.rem_euclid(2) == 1;
    let mut q = vec![vec![0i64; n]; n];
    match n {
        0 => return Err(Error::BadRank(0)),
        1 => {
            q[0][0] = match rank_one {
                Some(RankOneFraming::MinusAMinus2) => -a[0] - 2,
                Some(RankOneFraming::MinusAMinus1) => -a[0] - 1,
                Some(RankOneFraming::Cyclic) => {
                    if odd {
                        -a[0] - 2
                    } else {
                        -a[0] + 2
                    }
                }
                None => return Err(Error::RankOneConvention),
            };
        }
        2 => {
            let off = if odd { 0 } else { 2 };
            q[0][0] = -a[0];
            q[1][1] = -a[1];
            q[0][1] = off;
            q[1][0] = off;
        }
        _ => {
            for i in 0..n {
                q[i][i] = -a[i];
                if i + 1 < n {
                    q[i][i + 1] = 1;
                    q[i + 1][i] = 1;
                }
            }
            let corner = if odd { -1 } else { 1 };
            q[0][n - 1] = corner;
            q[n - 1][0] = corner;
        }
    }
    Ok(GramForm { q })
}

/// Fraction-free Gaussian elimination.
pub fn det_exact(m: &Matrix) -> Result<i128> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

pub fn inverse_rational(m: &Matrix) -> Result<Vec<Vec<Rational>>> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x as i128))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c];
        for j in 0..n {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for j in 0..n {
                    let (x, y) = (a[c][j], inv[c][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Ok(inv)
}

/// `adj(M)` as an integer matrix, so that `M^{-1} = adj / det`.
pub fn adjugate(m: &Matrix) -> Result<(Vec<Vec<i128>>, i128)> {
    let det = det_exact(m)?;
    if det == 0 {
        return Err(Error::Singular);
    }
    let inv = inverse_rational(m)?;
    let adj = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let y = x * Rational::from_integer(det);
                    debug_assert!(y.is_integer());
                    y.to_integer()
                })
                .collect()
        })
        .collect();
    Ok((adj, det))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Snf {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.len()).map(|i| self.d[i][i]).collect()
    }
}

/// `D = U B V` with `U`, `V` unimodular and `D` diagonal, nonnegative, each
/// entry dividing the next. Pivots on the smallest nonzero absolute entry,
/// ties broken by row-major position.
pub fn smith_normal_form(b: &Matrix) -> Result<Snf> {
    let n = check_square(b)?;
    let mut a: Vec<Vec<i128>> = b
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let id = identity(n);
    let mut u: Vec<Vec<i128>> = id
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut v = u.clone();
    for k in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(k, pi);
            u.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            for row in v.iter_mut() {
                row.swap(k, pj);
            }
            let p = a[k][k];
            let mut dirty = false;
            for i in k + 1..n {
                let f = a[i][k] / p;
                if f != 0 {
                    for j in 0..n {
                        a[i][j] -= f * a[k][j];
                        u[i][j] -= f * u[k][j];
                    }
                }
                dirty |= a[i][k] != 0;
            }
            for j in k + 1..n {
                let f = a[k][j] / p;
                if f != 0 {
                    for i in 0..n {
                        a[i][j] -= f * a[i][k];
                        v[i][j] -= f * v[i][k];
                    }
                }
                dirty |= a[k][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in 0..n {
                        a[k][j] += a[i][j];
                        u[k][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[k][k] < 0 {
            for j in 0..n {
                a[k][j] = -a[k][j];
                u[k][j] = -u[k][j];
            }
        }
    }
    let back = |m: Vec<Vec<i128>>| -> Matrix {
        m.into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect()
    };
    Ok(Snf {
        u: back(u),
        d: back(a),
        v: back(v),
    })
}

/// `K_i = Q_ii (mod 2)` for every handle.
pub fn is_characteristic(k: &[i64], q: &GramForm) -> bool {
    k.len() == q.n() && (0..q.n()).all(|i| (k[i] - q.q[i][i]).rem_euclid(2) == 0)
}

fn solve(q: &GramForm, k: &[i64]) -> Result<Vec<Rational>> {
    if k.len() != q.n() {
        return Err(Error::Dimension(format!(
            "vector of length {} for rank {}",
            k.len(),
            q.n()
        )));
    }
    let inv = inverse_rational(&q.q)?;
    Ok(inv
        .iter()
        .map(|r| {
            r.iter()
                .zip(k)
                .map(|(x, &y)| x * Rational::from_integer(y as i128))
                .sum()
        })
        .collect())
}

/// `K^T Q^{-1} K`.
pub fn char_square(k: &[i64], q: &GramForm) -> Result<Rational> {
    let w = solve(q, k)?;
    Ok(w.iter()
        .zip(k)
        .map(|(x, &y)| x * Rational::from_integer(y as i128))
        .sum())
}

/// Whether `K_i` and `K_j` restrict to different spin^c structures on the
/// boundary, i.e. `Q^{-1}(K_i - K_j) / 2` is not integral.
pub fn spinc_distinct(ki: &[i64], kj: &[i64], q: &GramForm) -> Result<bool> {
    let diff: Vec<i64> = ki.iter().zip(kj).map(|(a, b)| a - b).collect();
    let w = solve(q, &diff)?;
    Ok(w.iter()
        .any(|x| !(x / Rational::from_integer(2)).is_integer()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetMax {
    /// Residues of `U K` modulo `2 d_i`, with `U Q V = diag(d)`.
    pub label: Vec<i64>,
    pub char_vector: Vec<i64>,
    #[serde(serialize_with = "ser_rational")]
    pub square: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub d: Rational,
}

pub fn coset_label(snf: &Snf, k: &[i64]) -> Vec<i64> {
    let uk = mat_vec(&snf.u, k);
    let diag = snf.diagonal();
    uk.iter()
        .zip(&diag)
        .map(|(&x, &d)| x.rem_euclid(2 * d))
        .collect()
}

/// Cholesky-style decomposition `M = sum_i q_ii (y_i + sum_{j>i} q_ij y_j)^2`
/// used to bound the enumeration.
fn fp_coefficients(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let mut q = m.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    q
}

/// Calls `visit` on every characteristic covector `K` with
/// `-K^T Q^{-1} K <= radius`.
fn short_characteristic(
    q: &GramForm,
    adj: &[Vec<i128>],
    det: i128,
    radius: f64,
    visit: &mut dyn FnMut(&[i64]),
) {
    let n = q.n();
    let m: Vec<Vec<f64>> = adj
        .iter()
        .map(|r| r.iter().map(|&x| -(x as f64) / det as f64).collect())
        .collect();
    let fq = fp_coefficients(&m);
    let parity: Vec<i64> = (0..n).map(|i| q.q[i][i].rem_euclid(2)).collect();
    let mut y = vec![0i64; n];
    fn rec(
        i: usize,
        y: &mut Vec<i64>,
        rem: f64,
        fq: &[Vec<f64>],
        parity: &[i64],
        visit: &mut dyn FnMut(&[i64]),
    ) {
        let n = y.len();
        let center: f64 = -(i + 1..n).map(|j| fq[i][j] * y[j] as f64).sum::<f64>();
        let half = (rem.max(0.0) / fq[i][i]).sqrt() + 1e-7;
        let lo = (center - half).ceil() as i64;
        let hi = (center + half).floor() as i64;
        let mut v = lo + (parity[i] - lo).rem_euclid(2);
        while v <= hi {
            y[i] = v;
            let t = v as f64 - center;
            let r = rem - fq[i][i] * t * t;
            if i == 0 {
                visit(y);
            } else {
                rec(i - 1, y, r, fq, parity, visit);
            }
            v += 2;
        }
    }
    if n > 0 {
        rec(n - 1, &mut y, radius + 1e-7, &fq, &parity, visit);
    }
}

fn exact_square(adj: &[Vec<i128>], det: i128, k: &[i64]) -> Rational {
    let num: i128 = (0..k.len())
        .map(|i| {
            (0..k.len())
                .map(|j| k[i] as i128 * adj[i][j] * k[j] as i128)
                .sum::<i128>()
        })
        .sum();
    Rational::new(num, det)
}

/// For each class of characteristic covectors modulo `2 Q Z^n`, the largest
/// value of `K^2 = K^T Q^{-1} K` in the class, reported with `(K^2 + n) / 4`.
/// Sorted by label.
pub fn max_square_char(q: &GramForm) -> Result<Vec<CosetMax>> {
    if !q.is_negative_definite() {
        return Err(Error::Invalid("form is not negative definite".into()));
    }
    let n = q.n();
    let (adj, det) = adjugate(&q.q)?;
    let classes = det.unsigned_abs() as usize;
    let snf = smith_normal_form(&q.q)?;
    let mut radius = 1.0f64;
    loop {
        let mut best: BTreeMap<Vec<i64>, (Rational, Vec<i64>)> = BTreeMap::new();
        short_characteristic(q, &adj, det, radius, &mut |k| {
            let sq = exact_square(&adj, det, k);
            let label = coset_label(&snf, k);
            match best.get(&label) {
                Some((s, kk)) if *s > sq || (*s == sq && kk.as_slice() <= k) => {}
                _ => {
                    best.insert(label, (sq, k.to_vec()));
                }
            }
        });
        if best.len() == classes {
            let nn = Rational::from_integer(n as i128);
            return Ok(best
                .into_iter()
                .map(|(label, (square, k))| CosetMax {
                    label,
                    char_vector: k,
                    square,
                    d: (square + nn) / Rational::from_integer(4),
                })
                .collect());
        }
        radius *= 1.25;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let ok = (p == 1 && (q == 0 || q == 1)) || (p > 1 && 0 < q && q < p && p.gcd(&q) == 1);
        if !ok {
            return Err(Error::Invalid(format!("L({p},{q}) is not a lens space")));
        }
        Ok(LensSpace { p, q })
    }
}

/// d-invariants indexed `0..p`, by the recursion
/// `d(p,q,i) = ((2i+1-p-q)^2 - pq) / 4pq - d(q, p mod q, i mod q)`.
/// With this orientation `L(n,1)` gives `((2i-n)^2 - n) / 4n`.
pub fn lens_d_invariants(l: LensSpace) -> Vec<Rational> {
    fn d(p: i128, q: i128, i: i128) -> Rational {
        if p == 1 {
            return Rational::zero();
        }
        let s = 2 * i + 1 - p - q;
        Rational::new(s * s - p * q, 4 * p * q) - d(q, p % q, i % q)
    }
    (0..l.p as i128)
        .map(|i| d(l.p as i128, l.q as i128, i))
        .collect()
}

/// The same table for the oppositely oriented manifold.
pub fn reverse_orientation(table: &[Rational]) -> Vec<Rational> {
    table.iter().map(|x| -x).collect()
}

/// All sums taking one value from each table, sorted.
pub fn connected_sum_d(tables: &[Vec<Rational>]) -> Vec<Rational> {
    let mut acc = vec![Rational::zero()];
    for t in tables {
        acc = acc
            .iter()
            .flat_map(|a| t.iter().map(move |b| a + b))
            .collect();
    }
    acc.sort();
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubsetKind {
    Good,
    Standard,
    NegativeCyclic,
    PositiveCyclic,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetInfo {
    pub kind: SubsetKind,
    /// Indices of the input vectors in the order realising the pattern.
    pub order: Vec<usize>,
    pub string: Vec<i64>,
    pub irreducible: bool,
}

/// Product of the standard negative-definite lattice.
pub fn dot(v: &[i64], w: &[i64]) -> i64 {
    -v.iter().zip(w).map(|(a, b)| a * b).sum::<i64>()
}

fn irreducible(vs: &[Vec<i64>]) -> bool {
    let n = vs.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            let linked = vs[i].iter().zip(&vs[j]).any(|(a, b)| *a != 0 && *b != 0);
            if !seen[j] && linked {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Walk the graph of nonzero products as a single cycle through every vertex.
fn cycle_order(g: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = g.len();
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && g[i][j] != 0).collect())
        .collect();
    if nbrs.iter().any(|v| v.len() != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = 0usize;
    let mut cur = nbrs[0][0];
    while cur != 0 {
        order.push(cur);
        let next = if nbrs[cur][0] != prev {
            nbrs[cur][0]
        } else {
            nbrs[cur][1]
        };
        prev = cur;
        cur = next;
        if order.len() > n {
            return None;
        }
    }
    (order.len() == n).then_some(order)
}

pub fn subset_classify(vs: &[Vec<i64>]) -> SubsetInfo {
    let n = vs.len();
    let g: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&vs[i], &vs[j])).collect())
        .collect();
    let string: Vec<i64> = (0..n).map(|i| -g[i][i]).collect();
    let irr = irreducible(vs);
    let none = SubsetInfo {
        kind: SubsetKind::None,
        order: (0..n).collect(),
        string: string.clone(),
        irreducible: irr,
    };
    if n == 0 || string.iter().any(|&a| a < 2) {
        return none;
    }
    let some_big = string.iter().any(|&a| a >= 3);
    let info = |kind, order: Vec<usize>| SubsetInfo {
        kind,
        string: order.iter().map(|&i| string[i]).collect(),
        order,
        irreducible: irr,
    };
    if n == 2 {
        match g[0][1] {
            0 => return info(SubsetKind::NegativeCyclic, vec![0, 1]),
            2 if some_big => return info(SubsetKind::PositiveCyclic, vec![0, 1]),
            _ => {}
        }
    }
    if n >= 3 {
        if let Some(order) = cycle_order(&g) {
            let edges: Vec<i64> = (0..n).map(|i| g[order[i]][order[(i + 1) % n]]).collect();
            let minus: Vec<usize> = (0..n).filter(|&i| edges[i] == -1).collect();
            if edges.iter().all(|&e| e == 1 || e == -1) {
                if minus.len() == 1 {
                    let start = (minus[0] + 1) % n;
                    let ord = (0..n).map(|i| order[(start + i) % n]).collect();
                    return info(SubsetKind::NegativeCyclic, ord);
                }
                if minus.is_empty() && some_big {
                    return info(SubsetKind::PositiveCyclic, order);
                }
            }
        }
    }
    // Linear patterns in the given order.
    let linear_ok = |allowed: &[i64]| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let d = i.abs_diff(j);
                d == 0 || (d == 1 && allowed.contains(&g[i][j])) || (d > 1 && g[i][j] == 0)
            })
        })
    };
    if linear_ok(&[1]) {
        return info(SubsetKind::Standard, (0..n).collect());
    }
    if irr && linear_ok(&[0, 1]) {
        return info(SubsetKind::Good, (0..n).collect());
    }
    none
}

/// Sum of the subset's vectors.
pub fn wu_element(vs: &[Vec<i64>]) -> Vec<i64> {
    let m = vs.first().map_or(0, Vec::len);
    (0..m).map(|j| vs.iter().map(|v| v[j]).sum()).collect()
}

/// `sum (a_i - 3)` over the associated string.
pub fn i_of(string: &[i64]) -> i64 {
    string.iter().map(|a| a - 3).sum()
}

/// Distinct values of a table, as a sorted multiset of strings for display.
pub fn sorted_multiset(values: &[Rational]) -> Vec<Rational> {
    let mut v = values.to_vec();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn gram_examples() {
        assert_eq!(
            gram_form(-1, &[2, 2]).unwrap().q,
            vec![vec![-2, 0], vec![0, -2]]
        );
        assert_eq!(gram_form(-1, &[2, 2, 2]).unwrap().det().abs(), 4);
        assert_eq!(gram_form(0, &[3, 2, 2, 2]).unwrap().det().abs(), 4);
        assert_eq!(gram_form(1, &[5]), Err(Error::RankOneConvention));
        assert_eq!(
            gram_form_with(1, &[5], Some(RankOneFraming::MinusAMinus1))
                .unwrap()
                .q,
            vec![vec![-6]]
        );
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(s.diagonal(), vec![1, 6]);
        let b = vec![vec![2, 1], vec![0, 3]];
        let s = smith_normal_form(&b).unwrap();
        assert_eq!(s.diagonal(), vec![1, 6]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &b), &s.v), s.d);
        assert_eq!(smith_normal_form(&identity(3)).unwrap().d, identity(3));
    }

    #[test]
    fn det_and_inverse() {
        assert_eq!(det_exact(&identity(3)).unwrap(), 1);
        let inv = inverse_rational(&vec![vec![-2, 0], vec![0, -2]]).unwrap();
        assert_eq!(inv[0][0], r(-1, 2));
        assert_eq!(inv[0][1], r(0, 1));
        assert_eq!(
            inverse_rational(&vec![vec![1, 2], vec![2, 4]]),
            Err(Error::Singular)
        );
    }

    #[test]
    fn characteristic_examples() {
        let q = gram_form(-1, &[2; 5]).unwrap();
        assert!(is_characteristic(&[0; 5], &q));
        assert!(is_characteristic(&[2, 0, 0, 0, 2], &q));
        assert!(!is_characteristic(&[1, 0, 0, 0, 0], &q));
        assert_eq!(char_square(&[2, 0, 0, 0, 2], &q).unwrap(), r(-4, 1));
        assert_eq!(char_square(&[2, 0, 0, 0, 0], &q).unwrap(), r(-5, 1));
        assert!(spinc_distinct(&[0; 5], &[2, 0, 0, 0, 2], &q).unwrap());
        assert!(!spinc_distinct(&[2, 0, 0, 0, 0], &[2, 0, 0, 0, 0], &q).unwrap());
    }

    #[test]
    fn lens_examples() {
        assert_eq!(
            lens_d_invariants(LensSpace::new(1, 1).unwrap()),
            vec![r(0, 1)]
        );
        assert_eq!(
            lens_d_invariants(LensSpace::new(2, 1).unwrap()),
            vec![r(1, 4), r(-1, 4)]
        );
        let t = lens_d_invariants(LensSpace::new(2, 1).unwrap());
        assert_eq!(
            connected_sum_d(&[t.clone(), t]),
            vec![r(-1, 2), r(0, 1), r(0, 1), r(1, 2)]
        );
    }

    #[test]
    fn max_square_small() {
        let q = GramForm::new(vec![vec![-2, 0], vec![0, -2]]).unwrap();
        let mut d: Vec<_> = max_square_char(&q)
            .unwrap()
            .into_iter()
            .map(|c| c.d)
            .collect();
        d.sort();
        assert_eq!(d, vec![r(-1, 2), r(0, 1), r(0, 1), r(1, 2)]);
        let q = GramForm::new(vec![vec![-4]]).unwrap();
        let mut d: Vec<_> = max_square_char(&q)
            .unwrap()
            .into_iter()
            .map(|c| c.d)
            .collect();
        d.sort();
        let mut lens = reverse_orientation(&lens_d_invariants(LensSpace::new(4, 1).unwrap()));
        lens.sort();
        assert_eq!(d, lens);
    }

    #[test]
    fn subset_examples() {
        let vs = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, 1]];
        let info = subset_classify(&vs);
        assert_eq!(info.kind, SubsetKind::NegativeCyclic);
        assert_eq!(info.string, vec![2, 2, 2]);
        let pair = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(subset_classify(&pair).kind, SubsetKind::NegativeCyclic);
        let split = vec![vec![2, 0], vec![0, 2]];
        assert!(!subset_classify(&split).irreducible);
        assert_eq!(i_of(&[3; 6]), 0);
    }
}
