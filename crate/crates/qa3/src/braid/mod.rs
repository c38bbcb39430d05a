//! Braid words and their closures: component structure, Seifert-matrix
//! invariants for the natural orientation, Fox-calculus Alexander
//! polynomials for any orientation, the determinant and the Fox-Milnor test.

pub mod poly;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::Matrix;
use crate::strings::IntString;

use poly::{div_exact, laurent_gcd, poly_mul, poly_sub, Poly};
pub use poly::{fox_milnor_test, integer_poly_factor, Factorization, LaurentPoly};

/// A word in the standard Artin generators; letter `k` is `sigma_k`, `-k`
/// its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Invalid(format!(
                "need at least 2 strands, got {strands}"
            )));
        }
        if let Some(bad) = letters
            .iter()
            .find(|l| **l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(Error::Invalid(format!(
                "generator {bad} out of range for {strands} strands"
            )));
        }
        Ok(Self { strands, letters })
    }

    /// Three strands unless a letter needs more.
    pub fn three_strand(letters: Vec<i32>) -> Result<Self> {
        let need = letters
            .iter()
            .map(|l| l.unsigned_abs() as usize + 1)
            .max()
            .unwrap_or(2);
        Self::new(need.max(3), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse braid; its closure is the mirror image.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            strands: self.strands.max(other.strands),
            letters,
        }
    }

    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self {
            strands: self.strands,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `1 2 -2 -2 1` or `(s1 s2)^-3 (s1 s2^-1)^6`; always at least 3 strands.
    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_letters(s)?;
        Self::three_strand(letters)
    }
}

fn parse_letters(src: &str) -> Result<Vec<i32>> {
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    let out = parse_seq(&chars, &mut pos, src)?;
    skip_separators(&chars, &mut pos);
    if pos != chars.len() {
        return Err(Error::Parse(format!(
            "unexpected `{}` in `{src}`",
            chars[pos]
        )));
    }
    Ok(out)
}

fn skip_separators(chars: &[char], pos: &mut usize) {
    while *pos < chars.len()
        && (chars[*pos].is_whitespace() || matches!(chars[*pos], ',' | '*' | '.'))
    {
        *pos += 1;
    }
}

fn parse_int(chars: &[char], pos: &mut usize, src: &str) -> Result<i64> {
    let start = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let text: String = chars[start..*pos].iter().collect();
    text.parse()
        .map_err(|_| Error::Parse(format!("expected an integer at {start} in `{src}`")))
}

fn parse_seq(chars: &[char], pos: &mut usize, src: &str) -> Result<Vec<i32>> {
    let mut out = Vec::new();
    loop {
        skip_separators(chars, pos);
        if *pos >= chars.len() || chars[*pos] == ')' {
            return Ok(out);
        }
        let atom: Vec<i32> = match chars[*pos] {
            '(' => {
                *pos += 1;
                let inner = parse_seq(chars, pos, src)?;
                if *pos >= chars.len() || chars[*pos] != ')' {
                    return Err(Error::Parse(format!("unbalanced parenthesis in `{src}`")));
                }
                *pos += 1;
                inner
            }
            's' | 'S' | 'σ' => {
                *pos += 1;
                let k = parse_int(chars, pos, src)?;
                vec![k as i32]
            }
            _ => {
                let k = parse_int(chars, pos, src)?;
                vec![k as i32]
            }
        };
        let mut power = 1i64;
        if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            power = parse_int(chars, pos, src)?;
        }
        let unit: Vec<i32> = if power < 0 {
            atom.iter().rev().map(|l| -l).collect()
        } else {
            atom
        };
        for _ in 0..power.unsigned_abs() {
            out.extend_from_slice(&unit);
        }
    }
}

/// A family-(1) closure given by its twist and associated string, or a raw
/// three-braid word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BraidDescriptor {
    Family { t: i64, a: IntString },
    Raw { word: BraidWord },
}

impl BraidDescriptor {
    pub fn family(t: i64, a: &[i64]) -> Self {
        Self::Family { t, a: a.to_vec() }
    }
}

/// `(s1 s2)^(3t) s1 s2^-(a1-2) ... s1 s2^-(an-2)` with no validation of `a`.
pub fn family_word(t: i64, a: &[i64]) -> BraidWord {
    let mut letters = Vec::new();
    for _ in 0..(3 * t).unsigned_abs() {
        if t > 0 {
            letters.extend_from_slice(&[1, 2]);
        } else {
            letters.extend_from_slice(&[-2, -1]);
        }
    }
    for &x in a {
        letters.push(1);
        for _ in 0..(x - 2).max(0) {
            letters.push(-2);
        }
    }
    BraidWord {
        strands: 3,
        letters,
    }
}

pub fn descriptor_to_word(d: &BraidDescriptor) -> Result<BraidWord> {
    match d {
        BraidDescriptor::Family { t, a } => {
            if a.is_empty() {
                return Err(Error::EmptyString);
            }
            if let Some(&x) = a.iter().find(|x| **x < 2) {
                return Err(Error::EntryTooSmall(x));
            }
            if a.iter().all(|x| *x == 2) {
                return Err(Error::AllTwos);
            }
            Ok(family_word(*t, a))
        }
        BraidDescriptor::Raw { word } => Ok(word.clone()),
    }
}

/// `end[s]` is the bottom position reached by the strand starting at top
/// position `s`.
pub fn permutation(w: &BraidWord) -> Vec<usize> {
    let mut at: Vec<usize> = (0..w.strands).collect();
    for l in &w.letters {
        let k = l.unsigned_abs() as usize;
        at.swap(k - 1, k);
    }
    let mut end = vec![0; w.strands];
    for (p, s) in at.iter().enumerate() {
        end[*s] = p;
    }
    end
}

/// Component label of each top position; components are numbered by their
/// smallest strand.
pub fn strand_components(w: &BraidWord) -> Vec<usize> {
    let end = permutation(w);
    let mut label = vec![usize::MAX; w.strands];
    let mut next = 0;
    for start in 0..w.strands {
        if label[start] != usize::MAX {
            continue;
        }
        let mut s = start;
        while label[s] == usize::MAX {
            label[s] = next;
            s = end[s];
        }
        next += 1;
    }
    label
}

pub fn closure_components(w: &BraidWord) -> usize {
    strand_components(w).into_iter().max().map_or(0, |m| m + 1)
}

/// The braid on the strands of the chosen components, other strands deleted.
pub fn sub_braid(w: &BraidWord, keep: &[usize]) -> Result<BraidWord> {
    let comp = strand_components(w);
    let kept: Vec<bool> = comp.iter().map(|c| keep.contains(c)).collect();
    let count = kept.iter().filter(|k| **k).count();
    if count < 2 {
        return Err(Error::Invalid(
            "sub-braid needs at least two strands".into(),
        ));
    }
    // strand id at each position, tracked through the word
    let mut at: Vec<usize> = (0..w.strands).collect();
    let mut letters = Vec::new();
    for l in &w.letters {
        let k = l.unsigned_abs() as usize;
        let (left, right) = (at[k - 1], at[k]);
        if kept[left] && kept[right] {
            let below = at[..k - 1].iter().filter(|s| kept[**s]).count();
            letters.push(l.signum() * (below as i32 + 1));
        }
        at.swap(k - 1, k);
    }
    BraidWord::new(count, letters)
}

/// Every generator appears, so the braided Seifert surface is connected.
pub fn is_connected(w: &BraidWord) -> bool {
    (1..w.strands as i32).all(|k| w.letters.iter().any(|l| l.abs() == k))
}

/// Seifert matrix of the surface with one disk per strand and one band per
/// letter. Basis: one loop for each pair of consecutive letters on the same
/// generator, ordered by generator then position.
pub fn seifert_matrix(w: &BraidWord) -> Matrix {
    // (generator, first position, second position)
    let mut loops: Vec<(i32, usize, usize)> = Vec::new();
    for g in 1..w.strands as i32 {
        let at: Vec<usize> = (0..w.letters.len())
            .filter(|&i| w.letters[i].abs() == g)
            .collect();
        for pair in at.windows(2) {
            loops.push((g, pair[0], pair[1]));
        }
    }
    let sign = |i: usize| w.letters[i].signum() as i64;
    let n = loops.len();
    let mut v = vec![vec![0i64; n]; n];
    for (i, &(g, p1, p2)) in loops.iter().enumerate() {
        v[i][i] = match (sign(p1), sign(p2)) {
            (1, 1) => -1,
            (-1, -1) => 1,
            _ => 0,
        };
        for (j, &(h, q1, q2)) in loops.iter().enumerate() {
            if h == g && q1 == p2 {
                // consecutive loops sharing the band at p2
                if sign(p2) > 0 {
                    v[i][j] = 1;
                } else {
                    v[j][i] = -1;
                }
            } else if h == g + 1 && p1 < q1 && q1 < p2 && p2 < q2 {
                // interleaved loops on adjacent generators meet once
                v[i][j] = -1;
            } else if h == g + 1 && q1 < p1 && p1 < q2 && q2 < p2 {
                v[i][j] = 1;
            }
        }
    }
    v
}

/// Sign count of a symmetric integer matrix by exact congruence
/// diagonalisation.
pub fn symmetric_signature(m: &Matrix) -> i64 {
    type Q = Ratio<i128>;
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(*x as i128)).collect())
        .collect();
    let mut sig = 0i64;
    loop {
        let n = a.len();
        if n == 0 {
            return sig;
        }
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let piv = a[p][p];
            sig += if piv.is_positive() { 1 } else { -1 };
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| a[i][j] - a[i][p] * a[p][j] / piv)
                        .collect()
                })
                .collect();
            continue;
        }
        let Some((p, q)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            return sig;
        };
        // hyperbolic 2x2 block [[0,b],[b,0]] has signature 0
        let b = a[p][q];
        let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        // inverse of [[0,b],[b,0]] is [[0,1/b],[1/b,0]]
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| a[i][j] - (a[i][p] * a[q][j] + a[i][q] * a[p][j]) / b)
                    .collect()
            })
            .collect();
    }
}

fn sym_part(v: &Matrix) -> Matrix {
    let n = v.len();
    (0..n)
        .map(|i| (0..n).map(|j| v[i][j] + v[j][i]).collect())
        .collect()
}

/// Signature of `V + V^T` for the natural orientation.
pub fn signature(w: &BraidWord) -> i64 {
    symmetric_signature(&sym_part(&seifert_matrix(w)))
}

/// Determinant of a matrix over `Z[t]` by fraction-free elimination.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev: Poly = vec![1];
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_empty() {
            match (k + 1..n).find(|&r| !a[r][k].is_empty()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Vec::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = poly_sub(&poly_mul(&a[i][j], &a[k][k]), &poly_mul(&a[i][k], &a[k][j]));
                a[i][j] = div_exact(&num, &prev).expect("fraction-free step is exact");
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.iter().map(|c| -c).collect()
    } else {
        det
    }
}

/// `det(V - t V^T)`, normalised; zero for split closures.
pub fn alexander_natural(w: &BraidWord) -> LaurentPoly {
    if !is_connected(w) {
        return LaurentPoly::zero();
    }
    let v = seifert_matrix(w);
    let n = v.len();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = vec![v[i][j] as i128, -(v[j][i] as i128)];
                    poly::trim(&mut p);
                    p
                })
                .collect()
        })
        .collect();
    LaurentPoly::from_poly(&poly_det(&m)).normalized()
}

/// `|Delta(-1)|`, computed as `|det(V + V^T)|`; 0 for split closures.
pub fn determinant(w: &BraidWord) -> u128 {
    if !is_connected(w) {
        return 0;
    }
    let s = sym_part(&seifert_matrix(w));
    crate::lattice::det_exact(&s)
        .expect("square")
        .unsigned_abs()
}

/// One sign per closure component, in component order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orientation(pub Vec<i32>);

impl Orientation {
    pub fn natural(components: usize) -> Self {
        Self(vec![1; components])
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<&str> = self
            .0
            .iter()
            .map(|s| if *s < 0 { "-" } else { "+" })
            .collect();
        f.write_str(&signs.join(","))
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| match p.trim() {
                "+" | "+1" | "1" => Ok(1),
                "-" | "-1" => Ok(-1),
                other => Err(Error::Parse(format!("bad orientation sign `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Orientation)
    }
}

type LMatrix = Vec<Vec<LaurentPoly>>;

fn l_identity(n: usize) -> LMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn l_mul(a: &LMatrix, b: &LMatrix) -> LMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(LaurentPoly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn l_det(m: &LMatrix) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = LaurentPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: LMatrix = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &l_det(&minor);
        total = if j % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

/// Abelianised Fox Jacobian of one letter acting on the free group by the
/// Artin action, with `colors[i]` the image of generator `i`.
fn letter_jacobian(letter: i32, colors: &[LaurentPoly]) -> LMatrix {
    let n = colors.len();
    let mut j = l_identity(n);
    let k = letter.unsigned_abs() as usize - 1;
    let one = LaurentPoly::one();
    if letter > 0 {
        // x_k -> x_k x_{k+1} x_k^-1, x_{k+1} -> x_k
        j[k][k] = &one - &colors[k + 1];
        j[k][k + 1] = colors[k].clone();
        j[k + 1][k] = one;
        j[k + 1][k + 1] = LaurentPoly::zero();
    } else {
        // x_k -> x_{k+1}, x_{k+1} -> x_{k+1}^-1 x_k x_{k+1}
        let inv = colors[k + 1].invert_variable();
        j[k][k] = LaurentPoly::zero();
        j[k][k + 1] = one;
        j[k + 1][k] = inv.clone();
        j[k + 1][k + 1] = &(&inv * &colors[k]) - &inv;
    }
    j
}

/// Alexander matrix `J - I` of the closure for the given orientation.
pub fn fox_matrix(w: &BraidWord, o: &Orientation) -> Result<Vec<Vec<LaurentPoly>>> {
    let comp = strand_components(w);
    let want = closure_components(w);
    if o.0.len() != want {
        return Err(Error::Orientation {
            got: o.0.len(),
            want,
        });
    }
    let mut colors: Vec<LaurentPoly> = comp
        .iter()
        .map(|c| LaurentPoly::monomial(1, o.0[*c] as i64))
        .collect();
    let n = w.strands;
    let mut jac = l_identity(n);
    for &l in &w.letters {
        jac = l_mul(&letter_jacobian(l, &colors), &jac);
        let k = l.unsigned_abs() as usize;
        colors.swap(k - 1, k);
    }
    for (i, row) in jac.iter_mut().enumerate() {
        row[i] = &row[i] - &LaurentPoly::one();
    }
    Ok(jac)
}

/// Gcd of the codimension-one minors of the Fox matrix, normalised.
pub fn alexander_fox(w: &BraidWord, o: &Orientation) -> Result<LaurentPoly> {
    let a = fox_matrix(w, o)?;
    let n = a.len();
    let mut minors = Vec::with_capacity(n * n);
    for drop_row in 0..n {
        for drop_col in 0..n {
            let sub: LMatrix = (0..n)
                .filter(|r| *r != drop_row)
                .map(|r| {
                    (0..n)
                        .filter(|c| *c != drop_col)
                        .map(|c| a[r][c].clone())
                        .collect()
                })
                .collect();
            minors.push(l_det(&sub));
        }
    }
    Ok(laurent_gcd(&minors))
}
