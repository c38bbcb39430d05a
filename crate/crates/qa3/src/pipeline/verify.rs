//! Acceptance checks runnable from the command line. Each check returns a
//! `CriterionResult`; a failure that matches a known, analysed gap carries
//! `known_failure` so callers can tell it from a regression.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::braid::{
    alexander_fox, alexander_natural, closure_components, determinant, family_word,
    fox_milnor_test, integer_poly_factor, signature, sub_braid, BraidDescriptor, BraidWord,
    LaurentPoly, Orientation,
};
use crate::cubiquity::{
    ball_family_member, forced_dual_embedding, is_cubiquitous, is_exceptional, obstruct_qb4,
    plumbing_form, witness_avoids_cube, wodd_criterion, QbStatus, WoddOutcome,
};
use crate::embeddings::{enumerate_embeddings, enumerate_embeddings_bounded, Embedding};
use crate::error::Result;
use crate::lattice::{
    adjugate, char_square, connected_sum_d, gram_form, gram_form_with, lens_d_invariants,
    max_square_char, smith_normal_form, sorted_multiset, spinc_distinct, GramForm, LensSpace,
    Matrix, RankOneFraming, Rational,
};
use crate::par;
use crate::strings::{
    canonical, canonical_strings, cfe_eval, cfe_of_fraction, cyclic_dual, format_string, in_l,
    linear_dual, same_cyclic, Fraction, IntString, O_STRINGS,
};

use super::{batch_descriptors, BatchSpec};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Why the check fails, when the failure is the analysed one and
    /// nothing else.
    pub known_failure: Option<&'static str>,
    pub seconds: f64,
}

impl CriterionResult {
    /// Failed for a reason nobody has accounted for.
    pub fn regression(&self) -> bool {
        !self.passed && self.known_failure.is_none()
    }

    pub fn line(&self) -> String {
        let mark = match (self.passed, self.known_failure) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        let mut s = format!(
            "criterion {:>2} {mark}: {} [{:.1}s] {}",
            self.id, self.title, self.seconds, self.detail
        );
        if let (false, Some(why)) = (self.passed, self.known_failure) {
            s.push_str(" | ");
            s.push_str(why);
        }
        s
    }
}

/// Deliberate convention errors, for checking that the checks can fail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Use the even-twist corner for odd twists and vice versa.
    pub flipped_corner: bool,
    /// Count coset representatives with `0 <= y_i <= d_i`.
    pub closed_coset_range: bool,
}

const SEED: u64 = 0x5eed_0003;

fn timed(
    id: u8,
    title: &'static str,
    f: impl FnOnce() -> Result<(bool, String, Option<&'static str>)>,
) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail, known_failure) = match f() {
        Ok((passed, detail, known)) => (passed, detail, if passed { None } else { known }),
        Err(e) => (false, format!("error: {e}"), None),
    };
    CriterionResult {
        id,
        title,
        passed,
        detail,
        known_failure,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn cubiquitous_count(embs: &[Embedding]) -> Result<usize> {
    let mut n = 0;
    for e in embs {
        if is_cubiquitous(&e.b)?.cubiquitous {
            n += 1;
        }
    }
    Ok(n)
}

pub fn criterion_1() -> CriterionResult {
    const WHY: &str = "(3,3,3,3,3,3) has only cubiquitous embeddings; only the other two strings are obstructed this way";
    timed(1, "no cubiquitous embeddings for the O strings", || {
        let mut parts = Vec::new();
        let mut ok = Vec::new();
        for o in O_STRINGS {
            let embs = enumerate_embeddings(&gram_form(1, o)?)?;
            let cub = cubiquitous_count(&embs)?;
            parts.push(format!(
                "{}: {} embeddings, {} cubiquitous",
                format_string(o),
                embs.len(),
                cub
            ));
            ok.push((embs.len(), cub));
        }
        let passed = ok.iter().all(|&(_, c)| c == 0);
        let known = ok[0].1 == 0 && ok[1].1 == 0 && ok[2].0 > 0 && ok[2].1 == ok[2].0;
        Ok((passed, parts.join("; "), known.then_some(WHY)))
    })
}

/// Strings `(b, 2, reverse(c), 2)` for linear dual pairs `b`, `c` with
/// `len(b) + len(c)` in `kl`, canonicalized and deduplicated.
pub fn s1a_strings(kl: std::ops::RangeInclusive<usize>) -> Vec<IntString> {
    let max_kl = *kl.end();
    let mut out = BTreeSet::new();
    let mut stack: Vec<IntString> = (2..=max_kl as i64 + 1).map(|x| vec![x]).collect();
    while let Some(b) = stack.pop() {
        let c = linear_dual(&b).expect("entries >= 2");
        let total = b.len() + c.len();
        if kl.contains(&total) {
            let mut a = b.clone();
            a.push(2);
            a.extend(c.iter().rev());
            a.push(2);
            out.insert(canonical(&a));
        }
        if b.len() < max_kl {
            for x in 2..=max_kl as i64 + 1 {
                let mut nb = b.clone();
                nb.push(x);
                let lc = linear_dual(&nb).expect("entries >= 2").len();
                if nb.len() + lc <= max_kl {
                    stack.push(nb);
                }
            }
        }
    }
    out.into_iter().collect()
}

pub fn criterion_2() -> CriterionResult {
    timed(
        2,
        "S1a strings of length 6 to 8 do not bound at t = 1",
        || {
            let strings = s1a_strings(4..=6);
            let results = par::map_collect(&strings, |a| -> Result<Option<String>> {
                let v = obstruct_qb4(&BraidDescriptor::family(1, a))?;
                if !v.status.is_obstructed() {
                    return Ok(Some(format!("{} gave {:?}", format_string(a), v.status)));
                }
                let d = cyclic_dual(a)?;
                let e = forced_dual_embedding(&d)?;
                let all_odd = e.wu().iter().all(|x| x % 2 != 0);
                if !all_odd
                    || e.i_value() <= 0
                    || wodd_criterion(&e.columns()) != WoddOutcome::NotCubiquitous
                {
                    return Ok(Some(format!(
                        "{}: forced embedding wu {:?} I {}",
                        format_string(a),
                        e.wu(),
                        e.i_value()
                    )));
                }
                Ok(None)
            });
            let mut bad = Vec::new();
            for r in results {
                if let Some(msg) = r? {
                    bad.push(msg);
                }
            }
            let detail = if bad.is_empty() {
                format!(
                    "{} strings obstructed, forced dual embeddings all odd with I > 0",
                    strings.len()
                )
            } else {
                format!("{} of {} bad: {}", bad.len(), strings.len(), bad.join("; "))
            };
            Ok((bad.is_empty() && !strings.is_empty(), detail, None))
        },
    )
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "Wu profiles for (2,3,4,5,2,3,4,5)", || {
        let d = [2, 3, 4, 5, 2, 3, 4, 5];
        let embs = enumerate_embeddings(&gram_form(1, &d)?)?;
        let profiles: BTreeSet<Vec<i64>> = embs.iter().map(Embedding::wu_profile).collect();
        let want = [vec![3, 1, 1, 1, 1, 1, 1, 1], vec![2, 2, 2, 1, 1, 1, 1, 0]];
        let passed = want.iter().all(|w| profiles.contains(w));
        Ok((
            passed,
            format!("{} embeddings, profiles {:?}", embs.len(), profiles),
            None,
        ))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "d-invariants of L(n,1) and L(2,1)#L(2,1)", || {
        let mut bad = Vec::new();
        for n in 2..=50i128 {
            let got = sorted_multiset(&lens_d_invariants(LensSpace::new(n as i64, 1)?));
            let want: Vec<Rational> = (0..n)
                .map(|i| Rational::new((2 * i - n).pow(2) - n, 4 * n))
                .collect();
            if got != sorted_multiset(&want) {
                bad.push(n);
            }
        }
        let l21 = lens_d_invariants(LensSpace::new(2, 1)?);
        let sum = connected_sum_d(&[l21.clone(), l21]);
        let want = sorted_multiset(&[
            Rational::new(-1, 2),
            Rational::new(1, 2),
            Rational::from(0),
            Rational::from(0),
        ]);
        let sum_ok = sorted_multiset(&sum) == want;
        let detail = format!(
            "lens mismatches {bad:?}, connected sum {}",
            if sum_ok { "ok" } else { "wrong" }
        );
        Ok((bad.is_empty() && sum_ok, detail, None))
    })
}

pub fn criterion_5() -> CriterionResult {
    timed(5, "characteristic vectors for (2^n) at t = -1", || {
        let mut bad = Vec::new();
        for n in 2..=20usize {
            let q = gram_form(-1, &vec![2; n])?;
            let unit = |pos: &[usize]| -> Vec<i64> {
                let mut k = vec![0; n];
                for &p in pos {
                    k[p] = 2;
                }
                k
            };
            let ks = [unit(&[]), unit(&[0, n - 1]), unit(&[0]), unit(&[1])];
            let squares: Vec<Rational> = ks
                .iter()
                .map(|k| char_square(k, &q))
                .collect::<Result<_>>()?;
            let nn = n as i128;
            let want_sq = [
                Rational::from(0),
                Rational::from(-4),
                Rational::from(-nn),
                Rational::from(-nn),
            ];
            let mut distinct = true;
            for i in 0..4 {
                for j in i + 1..4 {
                    distinct &= spinc_distinct(&ks[i], &ks[j], &q)?;
                }
            }
            let ds: Vec<Rational> = max_square_char(&q)?.into_iter().map(|c| c.d).collect();
            let want_d = [
                Rational::new(nn, 4) - 1,
                Rational::new(nn, 4),
                Rational::from(0),
                Rational::from(0),
            ];
            if squares != want_sq || !distinct || sorted_multiset(&ds) != sorted_multiset(&want_d) {
                bad.push(n);
            }
        }
        Ok((bad.is_empty(), format!("failing n: {bad:?}"), None))
    })
}

/// `-1 + (3n - sum a) / 4`.
pub fn baldwin_value(a: &[i64]) -> Rational {
    Rational::new(3 * a.len() as i128 - a.iter().sum::<i64>() as i128, 4) - 1
}

pub fn criterion_6() -> CriterionResult {
    const WHY: &str = "the formula gives the d-invariant of one spin^c structure (attained every time), not the maximum";
    timed(
        6,
        "maximum d over cosets equals -1 + (3n - sum a)/4",
        || {
            let mut rng = StdRng::seed_from_u64(SEED ^ 6);
            let samples: Vec<IntString> = (0..300)
                .map(|_| {
                    let n = rng.random_range(2..=6);
                    (0..n).map(|_| rng.random_range(2..=6)).collect()
                })
                .collect();
            let rows = par::map_collect(&samples, |a| -> Result<(bool, bool)> {
                let ds: Vec<Rational> = max_square_char(&gram_form(-1, a)?)?
                    .into_iter()
                    .map(|c| c.d)
                    .collect();
                let target = baldwin_value(a);
                Ok((ds.iter().max() == Some(&target), ds.contains(&target)))
            });
            let rows: Vec<(bool, bool)> = rows.into_iter().collect::<Result<_>>()?;
            let literal = rows.iter().filter(|r| r.0).count();
            let attained = rows.iter().filter(|r| r.1).count();
            let passed = literal == rows.len();
            let detail = format!(
                "maximum matches {literal}/{}, value attained {attained}/{}",
                rows.len(),
                rows.len()
            );
            Ok((passed, detail, (attained == rows.len()).then_some(WHY)))
        },
    )
}

/// The degree-six factor of the reversed-orientation Alexander polynomial
/// of the exceptional link.
pub fn exceptional_sextic() -> LaurentPoly {
    LaurentPoly::from_poly(&[1, -6, 19, -29, 19, -6, 1])
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "Alexander endgame for the exceptional link", || {
        let w = family_word(1, &[3; 6]);
        let sextic = exceptional_sextic();
        let t_minus_1 = LaurentPoly::from_poly(&[-1, 1]);
        let want = &(&t_minus_1 * &t_minus_1) * &sextic;
        let comps = closure_components(&w);
        let mut polys_ok = comps == 3;
        let mut fm_fails = true;
        for c in 0..comps {
            let mut o = vec![1; comps];
            o[c] = -1;
            let p = alexander_fox(&w, &Orientation(o))?;
            polys_ok &= p.equiv(&want);
            fm_fails &= !fox_milnor_test(&p)?;
        }
        let irreducible = integer_poly_factor(&sextic)?.factors.len() == 1;
        let sig = signature(&w);
        let pairs_ok = [[0, 1], [0, 2], [1, 2]]
            .iter()
            .all(|p| sub_braid(&w, p).is_ok_and(|s| determinant(&s) == 2));
        let passed = polys_ok && irreducible && fm_fails && sig != 0 && pairs_ok;
        let detail = format!(
            "components {comps}, reversed polys match {polys_ok}, sextic irreducible {irreducible}, \
             Fox-Milnor fails {fm_fails}, signature {sig}, pair determinants 2 {pairs_ok}"
        );
        Ok((passed, detail, None))
    })
}

/// The closing corner of the other parity.
fn faulty_form(t: i64, a: &[i64]) -> Result<GramForm> {
    gram_form_with(t + 1, a, (a.len() == 1).then_some(RankOneFraming::Cyclic))
}

pub fn criterion_8_with(faults: Faults) -> CriterionResult {
    timed(8, "determinant facts and |Alexander(-1)| = |det Q|", || {
        let trefoil = determinant(&BraidWord::new(2, vec![1, 1, 1])?);
        let hopf = determinant(&BraidWord::new(2, vec![1, 1])?);
        let facts = trefoil == 3 && hopf == 2;
        let base = (2..=8).all(|n| gram_form(-1, &vec![2; n]).is_ok_and(|q| q.det().abs() == 4));
        let mut rng = StdRng::seed_from_u64(SEED ^ 8);
        let mut mismatches = 0;
        for _ in 0..200 {
            let t = rng.random_range(-1..=1);
            let n = rng.random_range(1..=6);
            let a: IntString = (0..n).map(|_| rng.random_range(2..=6)).collect();
            let q = if faults.flipped_corner {
                faulty_form(t, &a)?
            } else {
                plumbing_form(t, &a)?
            };
            let delta = alexander_natural(&family_word(t, &a)).eval_minus_one();
            if delta.abs() != q.det().abs() {
                mismatches += 1;
            }
        }
        let passed = facts && base && mismatches == 0;
        let detail = format!(
            "trefoil {trefoil}, Hopf {hopf}, |det (2^n)| = 4 {base}, cross-check mismatches {mismatches}/200"
        );
        Ok((passed, detail, None))
    })
}

pub fn criterion_8() -> CriterionResult {
    criterion_8_with(Faults::default())
}

/// Distinct classes of the unit-cube points modulo the column lattice of
/// `b`, counted through the adjugate: `z ~ z'` iff `adj (z - z') = 0 mod det`.
pub fn cube_class_count(b: &Matrix) -> Result<usize> {
    let (adj, det) = adjugate(b)?;
    let n = b.len();
    let m = det.abs();
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let key: Vec<i128> = adj
            .iter()
            .map(|row| {
                (0..n)
                    .filter(|&j| mask >> j & 1 == 1)
                    .map(|j| row[j])
                    .sum::<i128>()
                    .rem_euclid(m)
            })
            .collect();
        seen.insert(key);
    }
    Ok(seen.len())
}

/// Coset representatives for the nontrivial invariant factors: `d_i` per
/// coordinate with the half-open range, `d_i + 1` with the closed one.
pub fn coset_representative_count(b: &Matrix, closed: bool) -> Result<u128> {
    let diag = smith_normal_form(b)?.diagonal();
    Ok(diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u128 + u128::from(closed))
        .product())
}

fn random_lattices(count: usize) -> Vec<Matrix> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.random_range(1..=4);
        let b: Matrix = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-3..=3)).collect())
            .collect();
        let det = crate::lattice::det_exact(&b).unwrap_or(0);
        if det != 0 && det.abs() <= 60 {
            out.push(b);
        }
    }
    out
}

fn check_9a(faults: Faults) -> Result<(bool, String)> {
    let mut disagree = 0;
    let mut bad_witness = 0;
    let mut bad_count = 0;
    let mut cubiquitous = 0;
    for b in random_lattices(500) {
        let det = crate::lattice::det_exact(&b)?.unsigned_abs();
        let report = is_cubiquitous(&b)?;
        let oracle = cube_class_count(&b)? as u128 == det;
        if report.cubiquitous != oracle {
            disagree += 1;
        }
        if report.cubiquitous {
            cubiquitous += 1;
        } else if !report
            .witness
            .as_ref()
            .is_some_and(|w| witness_avoids_cube(&b, w).unwrap_or(false))
        {
            bad_witness += 1;
        }
        if coset_representative_count(&b, faults.closed_coset_range)? != det {
            bad_count += 1;
        }
    }
    let ok = disagree == 0 && bad_witness == 0 && bad_count == 0;
    Ok((
        ok,
        format!(
            "(a) 500 lattices, {cubiquitous} cubiquitous, {disagree} oracle disagreements, \
             {bad_witness} bad witnesses, {bad_count} coset count errors"
        ),
    ))
}

fn check_9b() -> Result<(bool, String)> {
    let strings: Vec<(i64, IntString)> = canonical_strings(8, 5)
        .into_iter()
        .filter(|a| a.len() >= 2)
        .flat_map(|a| [(0, a.clone()), (1, a)])
        .collect();
    let rows = par::map_collect(&strings, |(t, a)| -> Result<(usize, usize, usize)> {
        let embs = enumerate_embeddings_bounded(&gram_form(*t, a)?, 8)?;
        let mut fired = 0;
        let mut wrong = 0;
        for e in &embs {
            if wodd_criterion(&e.columns()) == WoddOutcome::NotCubiquitous {
                fired += 1;
                if is_cubiquitous(&e.b)?.cubiquitous {
                    wrong += 1;
                }
            }
        }
        Ok((embs.len(), fired, wrong))
    });
    let (mut total, mut fired, mut wrong) = (0, 0, 0);
    for r in rows {
        let (a, b, c) = r?;
        total += a;
        fired += b;
        wrong += c;
    }
    Ok((
        wrong == 0 && fired > 0,
        format!(
            "(b) {} forms, {total} embeddings, Wodd fired on {fired}, {wrong} cubiquitous",
            strings.len()
        ),
    ))
}

fn check_9c() -> Result<(bool, String)> {
    let mut bad = 0;
    let mut pairs = 0;
    for p in 2..=200i64 {
        for q in 1..p {
            if num_integer::Integer::gcd(&p, &q) != 1 {
                continue;
            }
            pairs += 1;
            let a = cfe_of_fraction(Fraction::new(p, q)?);
            let dual = linear_dual(&a)?;
            let ok = cfe_eval(&a)? == Fraction::new(p, q)?
                && cfe_eval(&dual)? == Fraction::new(p, p - q)?
                && linear_dual(&dual)? == a
                && (a.len() < 2 || a.iter().all(|&x| x == 2) || {
                    let c = cyclic_dual(&a)?;
                    same_cyclic(&cyclic_dual(&c)?, &a)
                });
            if !ok {
                bad += 1;
            }
        }
    }
    Ok((
        bad == 0,
        format!("(c) {pairs} fractions, {bad} duality failures"),
    ))
}

fn generated_l(max_len: usize) -> BTreeSet<IntString> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![vec![4i64]];
    while let Some(d) = frontier.pop() {
        if d.len() > max_len || !seen.insert(d.clone()) {
            continue;
        }
        let mut front = vec![2];
        front.extend_from_slice(&d);
        *front.last_mut().unwrap() += 1;
        let mut back = d.clone();
        back[0] += 1;
        back.push(2);
        frontier.push(front);
        frontier.push(back);
    }
    seen
}

fn check_9d() -> Result<(bool, String)> {
    let generated = generated_l(8);
    let missed = generated.iter().filter(|d| !in_l(d)).count();
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xd);
    let mut false_pos = 0;
    let mut probes = 0;
    for n in 1..=5usize {
        let mut cur = vec![2i64; n];
        loop {
            probes += 1;
            if in_l(&cur) != generated.contains(&cur) {
                false_pos += 1;
            }
            let Some(i) = (0..n).rev().find(|&i| cur[i] < 8) else {
                break;
            };
            cur[i] += 1;
            cur[i + 1..].iter_mut().for_each(|x| *x = 2);
        }
    }
    let members: Vec<&IntString> = generated.iter().filter(|d| d.len() >= 6).collect();
    for _ in 0..5000 {
        let mut d = members[rng.random_range(0..members.len())].clone();
        let i = rng.random_range(0..d.len());
        d[i] = (d[i] + if rng.random_bool(0.5) { 1 } else { -1 }).max(2);
        probes += 1;
        if in_l(&d) != generated.contains(&d) {
            false_pos += 1;
        }
    }
    Ok((
        missed == 0 && false_pos == 0,
        format!(
            "(d) {} generated strings, {missed} rejected, {false_pos}/{probes} probe disagreements",
            generated.len()
        ),
    ))
}

pub fn criterion_9_with(faults: Faults) -> CriterionResult {
    timed(9, "property suites", || {
        let parts = [check_9a(faults)?, check_9b()?, check_9c()?, check_9d()?];
        let passed = parts.iter().all(|p| p.0);
        Ok((
            passed,
            parts
                .iter()
                .map(|p| p.1.as_str())
                .collect::<Vec<_>>()
                .join("; "),
            None,
        ))
    })
}

pub fn criterion_9() -> CriterionResult {
    criterion_9_with(Faults::default())
}

/// The descriptors of the length 7, entry 6 sweep that no implemented
/// obstruction handles and no family contains. Three mirror pairs.
pub const UNRESOLVED: [(i64, &[i64]); 6] = [
    (0, &[4, 5]),
    (0, &[2, 2, 3, 2, 3]),
    (-1, &[2, 5, 2, 5]),
    (1, &[2, 2, 4, 2, 2, 4]),
    (1, &[2, 5, 2, 5]),
    (-1, &[2, 2, 4, 2, 2, 4]),
];

pub fn criterion_10() -> CriterionResult {
    const WHY: &str = "six descriptors (three mirror pairs) with square determinant escape every lattice obstruction";
    timed(10, "rational ball verdicts match family membership", || {
        let items = batch_descriptors(&BatchSpec {
            max_len: 7,
            t_set: vec![-1, 0, 1],
            cap: 6,
            threads: 0,
        })?;
        let statuses = par::map_collect(&items, |(t, a)| {
            obstruct_qb4(&BraidDescriptor::family(*t, a)).map(|v| v.status)
        });
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut mismatches = Vec::new();
        let mut exceptional = Vec::new();
        for ((t, a), s) in items.iter().zip(statuses) {
            let s = s?;
            *counts.entry(format!("{s:?}")).or_default() += 1;
            let expected_ok = if is_exceptional(*t, a) {
                exceptional.push((*t, a.clone()));
                s == QbStatus::ExceptionalLe
            } else if ball_family_member(*t, a) {
                s == QbStatus::BoundsQb4
            } else {
                s.is_obstructed()
            };
            if !expected_ok {
                mismatches.push((*t, a.clone()));
            }
        }
        let exceptional_ok =
            exceptional.len() == 2 && exceptional.iter().all(|(_, a)| a.len() == 6);
        let passed = mismatches.is_empty() && exceptional_ok;
        let known: BTreeSet<(i64, IntString)> =
            UNRESOLVED.iter().map(|(t, a)| (*t, canonical(a))).collect();
        let found: BTreeSet<(i64, IntString)> = mismatches.iter().cloned().collect();
        let shown: Vec<String> = mismatches
            .iter()
            .map(|(t, a)| format!("({t},{})", format_string(a)))
            .collect();
        let detail = format!(
            "{} descriptors {counts:?}; {} exceptional; mismatches {}",
            items.len(),
            exceptional.len(),
            if shown.is_empty() {
                "none".into()
            } else {
                shown.join(" ")
            }
        );
        Ok((
            passed,
            detail,
            (exceptional_ok && found == known).then_some(WHY),
        ))
    })
}

pub fn verify_paper_with(faults: Faults) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8_with(faults),
        criterion_9_with(faults),
        criterion_10(),
    ]
}

/// Every acceptance criterion, in order.
pub fn verify_paper() -> Vec<CriterionResult> {
    verify_paper_with(Faults::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1a_generator_lengths() {
        let s = s1a_strings(3..=3);
        assert!(s.contains(&canonical(&[3, 2, 2, 2, 2])));
        assert!(s.iter().all(|a| a.len() == 5));
        assert!(s1a_strings(4..=6)
            .iter()
            .all(|a| (6..=8).contains(&a.len())));
    }

    #[test]
    fn cube_classes_small() {
        assert_eq!(cube_class_count(&vec![vec![2, 0], vec![0, 2]]).unwrap(), 4);
        assert_eq!(cube_class_count(&vec![vec![3]]).unwrap(), 2);
        assert_eq!(
            coset_representative_count(&vec![vec![3]], false).unwrap(),
            3
        );
        assert_eq!(coset_representative_count(&vec![vec![3]], true).unwrap(), 4);
    }

    #[test]
    fn generated_l_small() {
        let g = generated_l(3);
        for d in [
            vec![4],
            vec![2, 5],
            vec![5, 2],
            vec![6, 2, 2],
            vec![2, 5, 3],
        ] {
            assert!(g.contains(&d), "{d:?}");
        }
        assert!(!g.contains(&vec![3, 3]));
    }
}
