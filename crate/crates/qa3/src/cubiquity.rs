//! Cubiquity of full-rank sublattices, the odd Wu element criterion, and the
//! rational-ball verdict for family-(1) closures.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::braid::{descriptor_to_word, determinant, BraidDescriptor};
use crate::embeddings::{
    align_cyclic, build_l_chain, chain_to_cyclic, enumerate_embeddings_bounded, l_partner,
    Embedding,
};
use crate::error::{Error, Result};
use crate::lattice::{
    dot, gram_form, gram_form_with, i_of, inverse_rational, smith_normal_form, subset_classify,
    wu_element, GramForm, Matrix, RankOneFraming, Rational, SubsetKind,
};
use crate::par;
use crate::strings::{classify_family, cyclic_dual, same_cyclic, FamilyTag, IntString};

/// Largest rank for which the unit cube is scanned point by point.
pub const MAX_CUBE_RANK: usize = 30;

/// Rank bound for the lattice searches behind a verdict. Duals of short
/// strings get long: `(2,6,6,2,6,6,6)` has a dual of length 20.
pub const VERDICT_MAX_RANK: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubiquityReport {
    pub cubiquitous: bool,
    /// A vector whose coset avoids the unit cube.
    pub witness: Option<Vec<i64>>,
    pub cosets_checked: u64,
}

/// Mixed-radix coset index with the first coordinate most significant.
struct Classes {
    moduli: Vec<i64>,
    total: u64,
}

impl Classes {
    fn index(&self, y: &[i64]) -> u64 {
        y.iter().zip(&self.moduli).fold(0u64, |acc, (v, m)| {
            acc * *m as u64 + v.rem_euclid(*m) as u64
        })
    }

    fn vector(&self, mut idx: u64) -> Vec<i64> {
        let mut y = vec![0i64; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            let m = self.moduli[i] as u64;
            y[i] = (idx % m) as i64;
            idx /= m;
        }
        y
    }
}

/// Classes of `Z^n / B Z^n` hit by `{0,1}^n`, as a bitmap; cube points are
/// visited in Gray-code order and the scan stops once every class is hit.
fn cube_hits(cols: &[Vec<i64>], classes: &Classes, low_bits: usize, high: u64) -> Vec<bool> {
    let mut hit = vec![false; classes.total as usize];
    let mut count = 0u64;
    // class vector of the starting point: the high bits fixed by `high`
    let mut cur = vec![0i64; classes.moduli.len()];
    for (j, col) in cols.iter().enumerate().skip(low_bits) {
        if (high >> (j - low_bits)) & 1 == 1 {
            for (c, x) in cur.iter_mut().zip(col) {
                *c += x;
            }
        }
    }
    for c in cur.iter_mut().zip(&classes.moduli) {
        *c.0 = c.0.rem_euclid(*c.1);
    }
    let mut gray = 0u64;
    for step in 0..(1u64 << low_bits) {
        if step > 0 {
            let j = step.trailing_zeros() as usize;
            let on = (gray >> j) & 1 == 0;
            gray ^= 1 << j;
            for ((c, x), m) in cur.iter_mut().zip(&cols[j]).zip(&classes.moduli) {
                *c = if on {
                    (*c + x).rem_euclid(*m)
                } else {
                    (*c - x).rem_euclid(*m)
                };
            }
        }
        let idx = classes.index(&cur) as usize;
        if !hit[idx] {
            hit[idx] = true;
            count += 1;
            if count == classes.total {
                break;
            }
        }
    }
    hit
}

/// Whether every coset of the lattice spanned by the columns of `B` meets
/// the unit cube. Uses `D = U B V`: the class of `x` is `U x mod d`.
pub fn is_cubiquitous(b: &Matrix) -> Result<CubiquityReport> {
    let n = b.len();
    let snf = smith_normal_form(b)?;
    let diag = snf.diagonal();
    if diag.contains(&0) {
        return Err(Error::Singular);
    }
    if n > MAX_CUBE_RANK {
        return Err(Error::TooLarge {
            got: n,
            max: MAX_CUBE_RANK,
        });
    }
    // trivial factors carry no information
    let keep: Vec<usize> = (0..n).filter(|&i| diag[i] > 1).collect();
    let moduli: Vec<i64> = keep.iter().map(|&i| diag[i]).collect();
    let total: u64 = moduli.iter().map(|m| *m as u64).product();
    let classes = Classes { moduli, total };
    // image of e_j in the class group
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            keep.iter()
                .map(|&i| snf.u[i][j].rem_euclid(diag[i]))
                .collect()
        })
        .collect();

    // split the cube on its top coordinates for the parallel scan
    let split = if par::is_parallel() && n >= 16 {
        6.min(n)
    } else {
        0
    };
    let low = n - split;
    let chunks: Vec<u64> = (0..(1u64 << split)).collect();
    let parts = par::map_collect(&chunks, |&high| cube_hits(&cols, &classes, low, high));
    let mut hit = vec![false; total as usize];
    for part in parts {
        for (h, p) in hit.iter_mut().zip(part) {
            *h |= p;
        }
    }
    match hit.iter().position(|h| !h) {
        None => Ok(CubiquityReport {
            cubiquitous: true,
            witness: None,
            cosets_checked: total,
        }),
        Some(idx) => {
            let small = classes.vector(idx as u64);
            let mut y = vec![0i64; n];
            for (k, &i) in keep.iter().enumerate() {
                y[i] = small[k];
            }
            let u_inv = inverse_rational(&snf.u)?;
            let witness: Vec<i64> = u_inv
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(&y)
                        .map(|(a, v)| a * Rational::from_integer(*v as i128))
                        .sum::<Rational>()
                })
                .map(|x: Rational| x.to_integer() as i64)
                .collect();
            Ok(CubiquityReport {
                cubiquitous: false,
                witness: Some(witness),
                cosets_checked: idx as u64 + 1,
            })
        }
    }
}

/// Direct check that the coset `w + B Z^n` contains no point of `{0,1}^n`.
pub fn witness_avoids_cube(b: &Matrix, w: &[i64]) -> Result<bool> {
    let n = b.len();
    let inv = inverse_rational(b)?;
    for mask in 0u64..(1u64 << n) {
        let diff: Vec<i128> = (0..n)
            .map(|i| w[i] as i128 - ((mask >> i) & 1) as i128)
            .collect();
        let integral = inv.iter().all(|r| {
            r.iter()
                .zip(&diff)
                .map(|(a, d)| a * Rational::from_integer(*d))
                .sum::<Rational>()
                .is_integer()
        });
        if integral {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WoddOutcome {
    NotCubiquitous,
    Inapplicable,
}

/// Fires when the subset is good or cyclic, `I(S) > 0` and every Wu
/// coordinate is odd. Never asserts cubiquity.
pub fn wodd_criterion(vectors: &[Vec<i64>]) -> WoddOutcome {
    let info = subset_classify(vectors);
    let shaped = matches!(
        info.kind,
        SubsetKind::Good
            | SubsetKind::Standard
            | SubsetKind::NegativeCyclic
            | SubsetKind::PositiveCyclic
    );
    let odd = wu_element(vectors).iter().all(|k| k.rem_euclid(2) == 1);
    if shaped && i_of(&info.string) > 0 && odd {
        WoddOutcome::NotCubiquitous
    } else {
        WoddOutcome::Inapplicable
    }
}

/// Exact `|| sum (x_i - 1/2) v_i ||^2` in the positive norm: the squared
/// distance from the lattice point `sum x_i v_i` to half the Wu element.
pub fn distance_bound_check(vectors: &[Vec<i64>], x: &[i64]) -> Rational {
    let n = vectors.len();
    let mut total = Rational::from_integer(0);
    for i in 0..n {
        for j in 0..n {
            let ui = Rational::new(2 * x[i] as i128 - 1, 2);
            let uj = Rational::new(2 * x[j] as i128 - 1, 2);
            total += ui * uj * Rational::from_integer(-dot(&vectors[i], &vectors[j]) as i128);
        }
    }
    total
}

/// The closed-form expansion for a negative cyclic subset in its cyclic
/// order, as used to bound the distance from below:
/// `sum (2x_i-1)^2 (a_i-2)/4 + sum (x_i-x_{i+1})^2 + (x_1+x_n-1)^2`.
pub fn cyclic_distance_expansion(string: &[i64], x: &[i64]) -> Rational {
    let n = string.len();
    let mut total = Rational::from_integer(0);
    for i in 0..n {
        let u = (2 * x[i] - 1) as i128;
        total += Ratio::new(u * u * (string[i] as i128 - 2), 4);
    }
    for i in 0..n.saturating_sub(1) {
        total += Rational::from_integer(((x[i] - x[i + 1]) as i128).pow(2));
    }
    total += Rational::from_integer(((x[0] + x[n - 1] - 1) as i128).pow(2));
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QbStatus {
    BoundsQb4,
    ObstructedDonaldson,
    ObstructedCubiquity,
    ObstructedNonsquareDet,
    ExceptionalLe,
    Unknown,
}

impl QbStatus {
    pub fn is_obstructed(self) -> bool {
        matches!(
            self,
            Self::ObstructedDonaldson | Self::ObstructedCubiquity | Self::ObstructedNonsquareDet
        )
    }
}

/// What was learned about one negative-definite filling: the plumbing for
/// `(t, string)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideEvidence {
    pub t: i64,
    pub string: IntString,
    pub rank: usize,
    pub sharp: bool,
    /// `None` when the rank exceeds the search bound.
    pub embeddings: Option<usize>,
    /// Number of cubiquitous embeddings; only checked on sharp sides.
    pub cubiquitous: Option<usize>,
}

/// The explicit all-odd embedding on the dual side of an `S1a` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedEmbedding {
    pub dual: IntString,
    pub wu: Vec<i64>,
    pub i_value: i64,
    pub wodd: WoddOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub t: i64,
    pub string: IntString,
    pub determinant: u128,
    pub determinant_square: bool,
    pub families: Vec<FamilyTag>,
    /// Tags of the cyclic dual, which describes the mirror at `-t`.
    pub mirror_families: Vec<FamilyTag>,
    pub member: bool,
    pub exceptional: bool,
    pub sides: Vec<SideEvidence>,
    pub forced: Option<ForcedEmbedding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: QbStatus,
    pub evidence: Evidence,
}

/// `S1` at `t = -1`, `S1 \ S1a` at `t = 1`, `S2` at `t = 0`, read off the
/// tags of the string as given.
pub fn listed_member(t: i64, tags: &BTreeSet<FamilyTag>) -> bool {
    let s1 = tags.iter().any(|f| f.is_s1());
    let s2 = tags.iter().any(|f| f.is_s2());
    match t {
        -1 => s1,
        1 => s1 && !tags.contains(&FamilyTag::S1a),
        0 => s2,
        _ => false,
    }
}

/// Membership of the closure or its mirror. The mirror of `(t, a)` is
/// `(-t, cyclic_dual(a))`, and the listed families are not closed under
/// that move, so both have to be consulted.
pub fn ball_family_member(t: i64, a: &[i64]) -> bool {
    if listed_member(t, &classify_family(a)) {
        return true;
    }
    match cyclic_dual(a) {
        Ok(d) => listed_member(-t, &classify_family(&d)),
        Err(_) => false,
    }
}

pub fn is_exceptional(t: i64, a: &[i64]) -> bool {
    t.abs() == 1 && same_cyclic(a, &[3, 3, 3, 3, 3, 3])
}

fn is_square(n: u128) -> bool {
    let r = (n as f64).sqrt() as u128;
    (r.saturating_sub(2)..=r + 2).any(|k| k * k == n)
}

/// The status implied by a body of evidence.
pub fn status_from_evidence(e: &Evidence) -> QbStatus {
    if !e.determinant_square {
        return QbStatus::ObstructedNonsquareDet;
    }
    if e.sides.iter().any(|s| s.embeddings == Some(0)) {
        return QbStatus::ObstructedDonaldson;
    }
    if e.sides.iter().any(|s| s.sharp && s.cubiquitous == Some(0)) {
        return QbStatus::ObstructedCubiquity;
    }
    if e.forced
        .as_ref()
        .is_some_and(|f| f.wodd == WoddOutcome::NotCubiquitous)
    {
        return QbStatus::ObstructedCubiquity;
    }
    if e.member {
        return QbStatus::BoundsQb4;
    }
    if e.exceptional {
        return QbStatus::ExceptionalLe;
    }
    QbStatus::Unknown
}

/// Intersection form of the plumbing for `(t, a)`; rank one uses the
/// parity-matched self-loop framing.
pub fn plumbing_form(t: i64, a: &[i64]) -> Result<GramForm> {
    if a.len() == 1 {
        gram_form_with(t, a, Some(RankOneFraming::Cyclic))
    } else {
        gram_form(t, a)
    }
}

fn side_evidence(t: i64, a: &[i64], max_rank: usize) -> Result<SideEvidence> {
    let q = plumbing_form(t, a)?;
    let rank = a.len();
    let sharp = t <= 0;
    let mut side = SideEvidence {
        t,
        string: a.to_vec(),
        rank,
        sharp,
        embeddings: None,
        cubiquitous: None,
    };
    if rank > max_rank {
        return Ok(side);
    }
    let embs = enumerate_embeddings_bounded(&q, max_rank)?;
    side.embeddings = Some(embs.len());
    if sharp && !embs.is_empty() {
        let mut count = 0;
        for e in &embs {
            if is_cubiquitous(&e.b)?.cubiquitous {
                count += 1;
            }
        }
        side.cubiquitous = Some(count);
    }
    Ok(side)
}

/// The all-odd negative cyclic embedding for a string of `S1a*`, laid out in
/// the order of `d`.
pub fn forced_dual_embedding(d: &[i64]) -> Result<Embedding> {
    let (variant, chain_string) =
        l_partner(d).ok_or_else(|| Error::Invalid("no L-string behind this dual".into()))?;
    let chain = build_l_chain(&chain_string)?;
    let emb = chain_to_cyclic(&chain)?;
    let cols = align_cyclic(&emb.columns(), &variant, d)
        .ok_or_else(|| Error::Invalid("variant does not match the dual".into()))?;
    Ok(Embedding::from_columns(&cols))
}

pub fn obstruct_qb4(d: &BraidDescriptor) -> Result<Verdict> {
    obstruct_qb4_bounded(d, VERDICT_MAX_RANK)
}

pub fn obstruct_qb4_bounded(d: &BraidDescriptor, max_rank: usize) -> Result<Verdict> {
    let BraidDescriptor::Family { t, a } = d else {
        return Err(Error::Invalid(
            "verdicts need a family-(1) descriptor".into(),
        ));
    };
    let (t, a) = (*t, a.clone());
    if a.len() < 2 {
        return Err(Error::BadRank(a.len()));
    }
    let word = descriptor_to_word(d)?;
    let det = determinant(&word);
    let tags = classify_family(&a);
    let mut evidence = Evidence {
        t,
        string: a.clone(),
        determinant: det,
        determinant_square: is_square(det),
        families: tags.iter().copied().collect(),
        mirror_families: cyclic_dual(&a)
            .map(|d| classify_family(&d).into_iter().collect())
            .unwrap_or_default(),
        member: ball_family_member(t, &a),
        exceptional: is_exceptional(t, &a),
        sides: Vec::new(),
        forced: None,
    };
    if evidence.determinant_square {
        // the plumbing itself and the one bounded by the reversed manifold
        let dual = cyclic_dual(&a)?;
        evidence.sides.push(side_evidence(t, &a, max_rank)?);
        evidence.sides.push(side_evidence(-t, &dual, max_rank)?);
        if t > 0 && t % 2 == 1 && tags.contains(&FamilyTag::S1a) && dual.len() >= 2 {
            let emb = forced_dual_embedding(&dual)?;
            let cols = emb.columns();
            evidence.forced = Some(ForcedEmbedding {
                dual: dual.clone(),
                wu: emb.wu(),
                i_value: emb.i_value(),
                wodd: wodd_criterion(&cols),
            });
        }
    }
    Ok(Verdict {
        status: status_from_evidence(&evidence),
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cubiquity() {
        assert!(
            is_cubiquitous(&vec![vec![1, 0], vec![0, 1]])
                .unwrap()
                .cubiquitous
        );
        assert!(is_cubiquitous(&vec![vec![2]]).unwrap().cubiquitous);
        let r = is_cubiquitous(&vec![vec![3]]).unwrap();
        assert!(!r.cubiquitous);
        assert_eq!(r.witness.as_ref().unwrap()[0].rem_euclid(3), 2);
        assert!(witness_avoids_cube(&vec![vec![3]], r.witness.as_ref().unwrap()).unwrap());
        assert_eq!(is_cubiquitous(&vec![vec![0]]), Err(Error::Singular));
    }

    #[test]
    fn distance_expansion_matches() {
        let d = vec![2, 3, 4, 5, 2, 3, 4, 5];
        let emb = forced_dual_embedding(&d).unwrap();
        let cols = emb.columns();
        assert_eq!(emb.gram(), gram_form(1, &d).unwrap().q);
        assert_eq!(wodd_criterion(&cols), WoddOutcome::NotCubiquitous);
        for x in [
            vec![0; 8],
            vec![1; 8],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![2, -1, 0, 3, 1, 1, 0, -2],
        ] {
            assert_eq!(
                distance_bound_check(&cols, &x),
                cyclic_distance_expansion(&d, &x)
            );
        }
    }
}
