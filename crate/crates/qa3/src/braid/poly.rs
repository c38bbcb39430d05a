//! Integer polynomials in one variable: dense `Z[t]` helpers, Laurent
//! polynomials up to units, gcds and factorisation into irreducibles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense coefficients, index = exponent, no trailing zeros. Empty = zero.
pub type Poly = Vec<i128>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &[i128]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn poly_mul(a: &[i128], b: &[i128]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn poly_sub(a: &[i128], b: &[i128]) -> Poly {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

pub fn content(p: &[i128]) -> i128 {
    p.iter().fold(0i128, |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(p: &[i128]) -> Poly {
    let c = content(p);
    if c == 0 {
        return Vec::new();
    }
    let sign = if *p.last().unwrap() < 0 { -1 } else { 1 };
    p.iter().map(|x| sign * x / c).collect()
}

/// Exact division in `Z[t]`; `None` when `b` does not divide `a`.
pub fn div_exact(a: &[i128], b: &[i128]) -> Option<Poly> {
    let db = degree(b)?;
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    let da = rem.len() - 1;
    if da < db {
        return None;
    }
    let lead = b[db];
    let mut quot = vec![0i128; da - db + 1];
    for k in (0..=da - db).rev() {
        let top = rem[k + db];
        if top == 0 {
            continue;
        }
        if top % lead != 0 {
            return None;
        }
        let c = top / lead;
        quot[k] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    trim(&mut rem);
    if rem.is_empty() {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^k a mod b` over `Z[t]`.
fn pseudo_rem(a: &[i128], b: &[i128]) -> Poly {
    let db = b.len() - 1;
    let lead = b[db];
    let mut rem: Poly = a.to_vec();
    while rem.len() > db {
        let top = *rem.last().unwrap();
        let shift = rem.len() - 1 - db;
        for x in rem.iter_mut() {
            *x *= lead;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= top * bj;
        }
        trim(&mut rem);
        // keep coefficients small between steps
        let c = content(&rem);
        if c > 1 {
            for x in rem.iter_mut() {
                *x /= c;
            }
        }
    }
    rem
}

/// Gcd over `Z[t]` by the primitive remainder sequence, content tracked
/// separately. Result has positive leading coefficient.
pub fn poly_gcd(a: &[i128], b: &[i128]) -> Poly {
    let mut a: Poly = a.to_vec();
    let mut b: Poly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return primitive_with_content(&b);
    }
    if b.is_empty() {
        return primitive_with_content(&a);
    }
    let cont = content(&a).gcd(&content(&b));
    let mut x = primitive(&a);
    let mut y = primitive(&b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    x.iter().map(|c| c * cont).collect()
}

fn primitive_with_content(p: &[i128]) -> Poly {
    if p.is_empty() {
        return Vec::new();
    }
    if *p.last().unwrap() < 0 {
        p.iter().map(|x| -x).collect()
    } else {
        p.to_vec()
    }
}

pub fn poly_eval(p: &[i128], x: i128) -> i128 {
    p.iter().rev().fold(0i128, |acc, c| acc * x + c)
}

/// `t^deg p(1/t)`.
pub fn reciprocal(p: &[i128]) -> Poly {
    let mut r: Poly = p.iter().rev().copied().collect();
    // drop the factor t^k coming from zero constant terms
    let lead_zeros = r.iter().take_while(|c| **c == 0).count();
    r.drain(..lead_zeros);
    r
}

/// Integer Laurent polynomial `sum coeffs[i] t^(low + i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<i128>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<i128>) -> Self {
        let mut coeffs = coeffs;
        trim(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| **c == 0).count();
        coeffs.drain(..lead);
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        Self {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(0, vec![c])
    }

    /// `c t^k`
    pub fn monomial(c: i128, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    pub fn from_poly(p: &[i128]) -> Self {
        Self::new(0, p.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Highest minus lowest exponent.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Value at `t = -1`.
    pub fn eval_minus_one(&self) -> i128 {
        let body = poly_eval(&self.coeffs, -1);
        if self.low.rem_euclid(2) == 1 {
            -body
        } else {
            body
        }
    }

    /// Representative of the class under `+-t^k`: lowest exponent 0, lowest
    /// coefficient positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let sign = if self.coeffs[0] < 0 { -1 } else { 1 };
        Self {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| sign * c).collect(),
        }
    }

    pub fn equiv(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// `p(1/t)`
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.low + self.span() as i64;
        Self::new(-high, self.coeffs.iter().rev().copied().collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.span() as i64).max(rhs.low + rhs.span() as i64);
        let mut out = vec![0i128; (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[(rhs.low - low) as usize + i] += c;
        }
        LaurentPoly::new(low, out)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

// exponents add under multiplication
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(self.low + rhs.low, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let e = self.low + i as i64;
            let mag = c.abs();
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}*t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, m) => write!(f, "{m}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts sums of terms like `3`, `-t`, `19*t^2`, `t^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split on + / - that are not exponent signs
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev = ' ';
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && prev != '^' {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = ch;
        }
        terms.push(cur);
        let mut total = LaurentPoly::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1i128, rest),
                None => (1i128, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, var) = match body.find('t') {
                None => (body, None),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    (c, Some(&body[pos + 1..]))
                }
            };
            let c: i128 = if coef.is_empty() {
                1
            } else {
                coef.parse().map_err(|_| bad())?
            };
            let e: i64 = match var {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?,
            };
            total = &total + &LaurentPoly::monomial(sign * c, e);
        }
        Ok(total)
    }
}

/// Gcd of Laurent polynomials, normalised.
pub fn laurent_gcd(items: &[LaurentPoly]) -> LaurentPoly {
    let mut acc: Poly = Vec::new();
    for p in items {
        if p.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, p.coeffs());
        if acc.len() == 1 && acc[0] == 1 {
            break;
        }
    }
    LaurentPoly::from_poly(&acc).normalized()
}

/// Content times irreducible factors, units `+-t^k` dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub content: i128,
    /// Primitive, positive leading coefficient; sorted by degree then
    /// coefficients, repeated according to multiplicity.
    pub factors: Vec<LaurentPoly>,
}

impl Factorization {
    /// Distinct factors with multiplicity.
    pub fn grouped(&self) -> Vec<(LaurentPoly, usize)> {
        let mut out: Vec<(LaurentPoly, usize)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((g, m)) if g == f => *m += 1,
                _ => out.push((f.clone(), 1)),
            }
        }
        out
    }

    pub fn product(&self) -> LaurentPoly {
        self.factors
            .iter()
            .fold(LaurentPoly::constant(self.content), |acc, f| &acc * f)
    }
}

pub fn integer_poly_factor(p: &LaurentPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let norm = p.normalized();
    let body = norm.coeffs().to_vec();
    let c = content(&body);
    let prim: Poly = body.iter().map(|x| x / c).collect();
    let mut factors = Vec::new();
    split_irreducible(&primitive(&prim), &mut factors);
    let mut factors: Vec<LaurentPoly> = factors.iter().map(|f| LaurentPoly::from_poly(f)).collect();
    factors.sort_by(|a, b| {
        a.span()
            .cmp(&b.span())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(Factorization {
        content: c,
        factors,
    })
}

fn split_irreducible(f: &[i128], out: &mut Vec<Poly>) {
    let deg = degree(f).unwrap_or(0);
    if deg <= 1 {
        if deg == 1 {
            out.push(f.to_vec());
        }
        return;
    }
    for d in 1..=deg / 2 {
        if let Some(g) = factor_of_degree(f, d) {
            let h = div_exact(f, &g).expect("factor divides");
            split_irreducible(&primitive(&g), out);
            split_irreducible(&primitive(&h), out);
            return;
        }
    }
    out.push(f.to_vec());
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Find a factor of exact degree `d` by evaluation at `d + 1` integer points
/// and interpolation through divisor tuples, filtered by the Mignotte bound.
fn factor_of_degree(f: &[i128], d: usize) -> Option<Poly> {
    const VALUE_CAP: i128 = 1_000_000_000_000;
    let mut samples: Vec<(i128, i128)> = Vec::new();
    for k in 0..40i128 {
        let x = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let v = poly_eval(f, x);
        if v == 0 {
            // integer root
            if d == 1 {
                return Some(vec![-x, 1]);
            }
            continue;
        }
        if v.abs() <= VALUE_CAP {
            samples.push((x, v));
        }
    }
    if samples.len() < d + 1 {
        return None;
    }
    let mut ranked: Vec<(usize, i128, Vec<i128>)> = samples
        .iter()
        .map(|(x, v)| {
            let ds = divisors(*v);
            (ds.len(), *x, ds)
        })
        .collect();
    ranked.sort_by_key(|(n, x, _)| (*n, x.abs()));
    ranked.truncate(d + 1);
    let xs: Vec<i128> = ranked.iter().map(|r| r.1).collect();
    let choices: Vec<Vec<i128>> = ranked
        .iter()
        .enumerate()
        .map(|(i, (_, _, ds))| {
            if i == 0 {
                ds.clone()
            } else {
                ds.iter().flat_map(|&v| [v, -v]).collect()
            }
        })
        .collect();
    let norm2 = f.iter().map(|c| (*c as f64).powi(2)).sum::<f64>().sqrt();
    let bounds: Vec<f64> = (0..=d).map(|i| binomial(d, i) * norm2 + 0.5).collect();

    let mut idx = vec![0usize; d + 1];
    loop {
        let ys: Vec<i128> = idx.iter().zip(&choices).map(|(i, c)| c[*i]).collect();
        if let Some(g) = interpolate(&xs, &ys) {
            if g.len() == d + 1
                && g.iter().zip(&bounds).all(|(c, b)| (*c as f64).abs() <= *b)
                && div_exact(f, &g).is_some()
            {
                return Some(g);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Newton interpolation; `None` unless every coefficient is an integer.
fn interpolate(xs: &[i128], ys: &[i128]) -> Option<Poly> {
    type Q = Ratio<i128>;
    let n = xs.len();
    let mut table: Vec<Q> = ys.iter().map(|y| Q::from_integer(*y)).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (table[i] - table[i - 1]) / Q::from_integer(xs[i] - xs[i - level]);
        }
    }
    // expand the Newton form
    let mut coeffs: Vec<Q> = vec![Q::zero(); n];
    let mut basis: Vec<Q> = vec![Q::one()];
    for i in 0..n {
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += table[i] * b;
        }
        // basis *= (t - x_i)
        let mut next = vec![Q::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += *b;
            next[k] -= *b * Q::from_integer(xs[i]);
        }
        basis = next;
    }
    let mut out: Poly = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    trim(&mut out);
    Some(out)
}

fn is_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).any(|k| k >= 0 && k * k == n)
}

/// True when `p` is `f(t) f(1/t)` up to units for some integer `f`.
pub fn fox_milnor_test(p: &LaurentPoly) -> Result<bool> {
    let fact = integer_poly_factor(p)?;
    if !is_square(fact.content) {
        return Ok(false);
    }
    let grouped = fact.grouped();
    for (g, m) in &grouped {
        let rec = LaurentPoly::from_poly(&primitive(&reciprocal(g.coeffs())));
        if &rec == g {
            if m % 2 != 0 {
                return Ok(false);
            }
        } else {
            let partner = grouped
                .iter()
                .find(|(h, _)| *h == rec)
                .map_or(0, |(_, k)| *k);
            if partner != *m {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse() {
        let p = lp("1 - 6*t + 19*t^2 - 29*t^3 + 19*t^4 - 6*t^5 + t^6");
        assert_eq!(
            p.to_string(),
            "1 - 6*t + 19*t^2 - 29*t^3 + 19*t^4 - 6*t^5 + t^6"
        );
        assert_eq!(lp("t^-1 - 2 + t").to_string(), "t^-1 - 2 + t");
        assert_eq!(lp("-t^2 + t").normalized(), lp("1 - t"));
        assert!(lp("t^3 - t^4").equiv(&lp("t - 1")));
    }

    #[test]
    fn gcd_examples() {
        let a = lp("t^2 - 1");
        let b = lp("t^2 - 2*t + 1");
        assert_eq!(laurent_gcd(&[a, b]), lp("1 - t"));
        assert_eq!(laurent_gcd(&[lp("2*t"), lp("4")]), lp("2"));
    }

    #[test]
    fn factor_examples() {
        let sextic = lp("1 - 6*t + 19*t^2 - 29*t^3 + 19*t^4 - 6*t^5 + t^6");
        let f = integer_poly_factor(&sextic).unwrap();
        assert_eq!(f.factors.len(), 1);
        let f = integer_poly_factor(&lp("t^2 - 1")).unwrap();
        assert_eq!(f.factors, vec![lp("t - 1"), lp("t + 1")]);
        let full = &lp("t - 1").pow(2) * &sextic;
        let f = integer_poly_factor(&full).unwrap();
        assert_eq!(f.factors, vec![lp("t - 1"), lp("t - 1"), sextic.clone()]);
        assert!(f.product().equiv(&full));
        let f = integer_poly_factor(&lp("6*t^2 + 5*t + 1")).unwrap();
        assert_eq!(f.factors, vec![lp("1 + 2*t"), lp("1 + 3*t")]);
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        let f = integer_poly_factor(&lp("t^4 + 4")).unwrap();
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn fox_milnor_examples() {
        assert!(fox_milnor_test(&lp("1")).unwrap());
        assert!(fox_milnor_test(&lp("2*t^2 - 5*t + 2")).unwrap());
        assert!(!fox_milnor_test(&lp("t^2 - t + 1")).unwrap());
        let sextic = lp("1 - 6*t + 19*t^2 - 29*t^3 + 19*t^4 - 6*t^5 + t^6");
        assert!(!fox_milnor_test(&(&lp("t - 1").pow(2) * &sextic)).unwrap());
        assert!(fox_milnor_test(&sextic.pow(2)).unwrap());
    }
}
