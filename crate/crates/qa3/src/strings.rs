//! Integer strings: Hirzebruch–Jung continued fractions, linear and cyclic
//! duals, the named string families, and the `L` family of rationally
//! blow-down-able linear strings.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite sequence of integers, each at least 2 unless noted.
pub type IntString = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    pub p: i64,
    pub q: i64,
}

impl Fraction {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q < 1 || p <= q || p.gcd(&q) != 1 {
            return Err(Error::BadFraction(p, q));
        }
        Ok(Fraction { p, q })
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl std::str::FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected p/q, got {s:?}")))?;
        let p = p.trim().parse().map_err(|_| Error::Parse(s.into()))?;
        let q = q.trim().parse().map_err(|_| Error::Parse(s.into()))?;
        Fraction::new(p, q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyTag {
    S1a,
    S1b,
    S1c,
    S1d,
    S1e,
    S2a,
    S2b,
    S2c,
    S2d,
    S2e,
    O,
    S1aStar,
    LFamily,
    None,
}

impl FamilyTag {
    pub fn is_s1(self) -> bool {
        matches!(
            self,
            Self::S1a | Self::S1b | Self::S1c | Self::S1d | Self::S1e
        )
    }

    pub fn is_s2(self) -> bool {
        matches!(
            self,
            Self::S2a | Self::S2b | Self::S2c | Self::S2d | Self::S2e
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Front,
    Back,
}

pub fn format_string(a: &[i64]) -> String {
    a.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_string(s: &str) -> Result<IntString> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad entry {x:?}")))
        })
        .collect()
}

fn check_entries(a: &[i64]) -> Result<()> {
    match a.iter().find(|&&x| x < 2) {
        Some(&x) => Err(Error::EntryTooSmall(x)),
        None => Ok(()),
    }
}

pub fn cfe_eval(a: &[i64]) -> Result<Fraction> {
    if a.is_empty() {
        return Err(Error::EmptyString);
    }
    check_entries(a)?;
    let (mut p, mut q) = (a[a.len() - 1], 1i64);
    for &x in a[..a.len() - 1].iter().rev() {
        (p, q) = (x * p - q, p);
    }
    Fraction::new(p, q)
}

pub fn cfe_of_fraction(f: Fraction) -> IntString {
    let (mut p, mut q) = (f.p, f.q);
    let mut out = Vec::new();
    while q != 0 {
        let a = Integer::div_ceil(&p, &q);
        out.push(a);
        (p, q) = (q, a * q - p);
    }
    out
}

/// Linear dual by the run-length substitution. `(1)` and the empty string are
/// dual to each other.
pub fn linear_dual(a: &[i64]) -> Result<IntString> {
    if a.is_empty() {
        return Ok(vec![1]);
    }
    if a == [1] {
        return Ok(Vec::new());
    }
    check_entries(a)?;
    // a = 2^[x1], 3+y1, ..., 2^[xm], 2+ym
    let n = a.len();
    let mut xs = vec![0i64];
    let mut ys = Vec::new();
    for &v in &a[..n - 1] {
        if v == 2 {
            *xs.last_mut().unwrap() += 1;
        } else {
            ys.push(v - 3);
            xs.push(0);
        }
    }
    ys.push(a[n - 1] - 2);
    let mut out = Vec::with_capacity(n);
    for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
        out.push(if i == 0 { 2 + x } else { 3 + x });
        out.extend(std::iter::repeat_n(2, y as usize));
    }
    Ok(out)
}

/// Cyclic dual, defined up to rotation. The output starts at the entry dual
/// to the first run of 2s after the last entry >= 3 of the input.
pub fn cyclic_dual(a: &[i64]) -> Result<IntString> {
    check_entries(a)?;
    let last_big = a.iter().rposition(|&x| x >= 3).ok_or(Error::AllTwos)?;
    let n = a.len();
    let rot: Vec<i64> = (0..n).map(|i| a[(last_big + 1 + i) % n]).collect();
    // rot = 2^[x1], 3+y1, ..., 2^[xm], 3+ym
    let mut out = Vec::new();
    let mut run = 0i64;
    for &v in &rot {
        if v == 2 {
            run += 1;
        } else {
            out.push(3 + run);
            out.extend(std::iter::repeat_n(2, (v - 3) as usize));
            run = 0;
        }
    }
    Ok(out)
}

pub fn dihedral_variants(a: &[i64]) -> Vec<IntString> {
    let n = a.len();
    let mut out = Vec::with_capacity(2 * n);
    for r in 0..n {
        let rot: Vec<i64> = (0..n).map(|i| a[(r + i) % n]).collect();
        let mut rev = rot.clone();
        rev.reverse();
        out.push(rot);
        out.push(rev);
    }
    out
}

/// Lexicographically smallest rotation or reversal.
pub fn canonical(a: &[i64]) -> IntString {
    dihedral_variants(a).into_iter().min().unwrap_or_default()
}

pub fn same_cyclic(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && canonical(a) == canonical(b)
}

fn valid_linear(b: &[i64]) -> bool {
    b == [1] || b.iter().all(|&x| x >= 2)
}

fn is_dual_pair(b: &[i64], c: &[i64]) -> bool {
    valid_linear(b) && valid_linear(c) && linear_dual(b).is_ok_and(|d| d == c)
}

/// `(b1+1, b2, ..., b_{k-1}, bk+1)`; a single entry is raised by 2.
pub fn bump_ends(b: &[i64]) -> Option<IntString> {
    let mut out = b.to_vec();
    let k = out.len();
    if k == 0 {
        return None;
    }
    out[0] += 1;
    out[k - 1] += 1;
    Some(out)
}

fn unbump_ends(big: &[i64]) -> Option<IntString> {
    let mut out = big.to_vec();
    let k = out.len();
    if k == 0 {
        return None;
    }
    out[0] -= 1;
    out[k - 1] -= 1;
    valid_linear(&out).then_some(out)
}

fn rev(v: &[i64]) -> IntString {
    v.iter().rev().copied().collect()
}

fn match_s1_tail(s: &[i64], middle: i64, last: i64, min_kl: usize) -> bool {
    let n = s.len();
    if n < 2 || s[n - 1] != last {
        return false;
    }
    let m = &s[..n - 1];
    (0..m.len()).any(|p| {
        m[p] == middle
            && p + (m.len() - p - 1) >= min_kl
            && is_dual_pair(&m[..p], &rev(&m[p + 1..]))
    })
}

fn match_s1d(s: &[i64]) -> bool {
    let n = s.len();
    if n < 4 || s[0] != 2 || s[n - 1] != 2 {
        return false;
    }
    let inner = &s[1..n - 1];
    (0..inner.len().saturating_sub(1)).any(|p| {
        if inner[p] != 2 || inner[p + 1] != 2 {
            return false;
        }
        let (Some(b), Some(c_rev)) = (unbump_ends(&inner[..p]), unbump_ends(&inner[p + 2..]))
        else {
            return false;
        };
        b.len() + c_rev.len() >= 3 && is_dual_pair(&b, &rev(&c_rev))
    })
}

/// `(2, 3+x, 2, 3, 3, 2^[x-1], 3, 3)`. For `x = 0` the block `(3, 2^[-1], 3)`
/// collapses to `(4)`, giving `(2, 3, 2, 3, 4, 3)`.
pub fn s1e_member(x: i64) -> IntString {
    let mut v = vec![2, 3 + x, 2, 3];
    if x == 0 {
        v.extend([4, 3]);
    } else {
        v.push(3);
        v.extend(std::iter::repeat_n(2, (x - 1) as usize));
        v.extend([3, 3]);
    }
    v
}

/// `(2, 2+x, 2, 3, 2^[x-1], 3, 4)` for `x >= 1`.
pub fn s2d_member(x: i64) -> IntString {
    let mut v = vec![2, 2 + x, 2, 3];
    v.extend(std::iter::repeat_n(2, (x - 1) as usize));
    v.extend([3, 4]);
    v
}

fn match_s2a(s: &[i64]) -> bool {
    let n = s.len();
    (1..n).any(|p| {
        if s[p] != 2 {
            return false;
        }
        let mut b = s[..p].to_vec();
        b[0] -= 3;
        is_dual_pair(&b, &rev(&s[p + 1..]))
    })
}

fn match_s2b(s: &[i64]) -> bool {
    let n = s.len();
    if n < 3 || s[0] < 3 {
        return false;
    }
    let x = (s[0] - 3) as usize;
    let rest = &s[1..];
    (1..rest.len()).any(|p| {
        if p + x >= rest.len() || rest[p..p + x].iter().any(|&v| v != 2) {
            return false;
        }
        let mut b = rest[..p].to_vec();
        *b.last_mut().unwrap() -= 1;
        let mut c_rev = rest[p + x..].to_vec();
        c_rev[0] -= 1;
        b.iter().all(|&v| v >= 2) && c_rev.iter().all(|&v| v >= 2) && is_dual_pair(&b, &rev(&c_rev))
    })
}

fn match_s2c(s: &[i64]) -> bool {
    (1..=s.len()).any(|p| {
        let Some(b) = unbump_ends(&s[..p]) else {
            return false;
        };
        let c = &s[p..];
        b.len() + c.len() >= 2 && is_dual_pair(&b, c)
    })
}

fn match_s2e(s: &[i64]) -> bool {
    let n = s.len();
    if n < 4 || s[0] != 2 || s[n - 1] != 2 {
        return false;
    }
    let inner = &s[1..n - 1];
    (1..inner.len().saturating_sub(1)).any(|p| {
        if inner[p] != 2 {
            return false;
        }
        let mut b = inner[..p].to_vec();
        b[0] -= 1;
        let mut c = rev(&inner[p + 1..]);
        c[0] -= 1;
        b.iter().all(|&v| v >= 2)
            && c.iter().all(|&v| v >= 2)
            && b.len() + c.len() >= 3
            && is_dual_pair(&b, &c)
    })
}

pub const O_STRINGS: [&[i64]; 3] = [
    &[6, 2, 2, 2, 6, 2, 2, 2],
    &[4, 2, 4, 2, 4, 2, 4, 2],
    &[3, 3, 3, 3, 3, 3],
];

fn cyclic_tags(a: &[i64]) -> BTreeSet<FamilyTag> {
    let mut tags = BTreeSet::new();
    let n = a.len() as i64;
    for s in dihedral_variants(a) {
        let s = &s[..];
        if match_s1_tail(s, 2, 2, 3) {
            tags.insert(FamilyTag::S1a);
        }
        if match_s1_tail(s, 2, 5, 2) {
            tags.insert(FamilyTag::S1b);
        }
        if match_s1_tail(s, 3, 3, 2) {
            tags.insert(FamilyTag::S1c);
        }
        if match_s1d(s) {
            tags.insert(FamilyTag::S1d);
        }
        if match_s2a(s) {
            tags.insert(FamilyTag::S2a);
        }
        if match_s2b(s) {
            tags.insert(FamilyTag::S2b);
        }
        if match_s2c(s) {
            tags.insert(FamilyTag::S2c);
        }
        if match_s2e(s) || s == [2, 2, 2, 3] {
            tags.insert(FamilyTag::S2e);
        }
    }
    if (0..=n).any(|x| same_cyclic(a, &s1e_member(x))) {
        tags.insert(FamilyTag::S1e);
    }
    if (1..=n).any(|x| same_cyclic(a, &s2d_member(x))) || same_cyclic(a, &[2, 2, 2, 4, 4]) {
        tags.insert(FamilyTag::S2d);
    }
    if O_STRINGS.iter().any(|o| same_cyclic(a, o)) {
        tags.insert(FamilyTag::O);
    }
    tags
}

/// Every family tag that matches `a`. Cyclic families are matched up to
/// rotation and reversal; `LFamily` is tested on the string as given.
pub fn classify_family(a: &[i64]) -> BTreeSet<FamilyTag> {
    let mut tags = BTreeSet::new();
    if a.is_empty() || a.iter().any(|&x| x < 2) {
        tags.insert(FamilyTag::None);
        return tags;
    }
    tags.extend(cyclic_tags(a));
    if let Ok(d) = cyclic_dual(a) {
        if cyclic_tags(&d).contains(&FamilyTag::S1a) {
            tags.insert(FamilyTag::S1aStar);
        }
    }
    if in_l(a) {
        tags.insert(FamilyTag::LFamily);
    }
    if tags.is_empty() {
        tags.insert(FamilyTag::None);
    }
    tags
}

/// The expansion moves that build `d` from `(4)`, in order, or `None` when
/// `d` is not in `L`. Reduction strips a leading 2 (undoing a front move) or
/// a trailing 2 (undoing a back move); at most one applies at each step.
pub fn l_history(d: &[i64]) -> Option<Vec<Side>> {
    if d.iter().any(|&x| x < 2) {
        return None;
    }
    let mut cur = d.to_vec();
    let mut moves = Vec::new();
    loop {
        if cur == [4] {
            moves.reverse();
            return Some(moves);
        }
        let n = cur.len();
        if n < 2 {
            return None;
        }
        if cur[0] == 2 && cur[n - 1] >= 3 {
            cur.remove(0);
            *cur.last_mut().unwrap() -= 1;
            moves.push(Side::Front);
        } else if cur[n - 1] == 2 && cur[0] >= 3 {
            cur.pop();
            cur[0] -= 1;
            moves.push(Side::Back);
        } else {
            return None;
        }
    }
}

pub fn in_l(d: &[i64]) -> bool {
    l_history(d).is_some()
}

pub fn expand_l(d: &[i64], side: Side) -> Result<IntString> {
    if !in_l(d) {
        return Err(Error::NotInL(format_string(d)));
    }
    Ok(apply_move(d, side))
}

pub(crate) fn apply_move(d: &[i64], side: Side) -> IntString {
    let mut out = Vec::with_capacity(d.len() + 1);
    match side {
        Side::Front => {
            out.push(2);
            out.extend_from_slice(d);
            *out.last_mut().unwrap() += 1;
        }
        Side::Back => {
            out.extend_from_slice(d);
            out[0] += 1;
            out.push(2);
        }
    }
    out
}

/// Canonical representatives of all strings with length in `1..=max_len`,
/// entries in `2..=cap` and some entry >= 3, in length-then-lex order.
pub fn canonical_strings(max_len: usize, cap: i64) -> Vec<IntString> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        let mut cur = vec![2i64; n];
        loop {
            if cur.iter().any(|&x| x >= 3) && canonical(&cur) == cur {
                out.push(cur.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if cur[i] < cap {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 2;
            }
            if cur.iter().all(|&x| x == 2) {
                break;
            }
        }
    }
    out
}
