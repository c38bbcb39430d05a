//! Classification reports for three-braid closures: rational-ball verdict,
//! chi-sliceness, knot invariants, and batch enumeration of family (1).

pub mod verify;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::braid::fox_milnor_test;
use crate::braid::{
    alexander_fox, alexander_natural, closure_components, descriptor_to_word, determinant,
    signature, sub_braid, BraidDescriptor, BraidWord, Orientation,
};
use crate::cubiquity::{is_exceptional, obstruct_qb4, QbStatus, Verdict};
use crate::error::{Error, Result};
use crate::par;
use crate::strings::{canonical_strings, classify_family, cyclic_dual, FamilyTag, IntString};

pub const SCHEMA_VERSION: u32 = 1;

/// Longest strings a batch will enumerate.
pub const MAX_BATCH_LEN: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChiSlice {
    RibbonKnown,
    NotChiSlice,
    OpenS2c0,
    ExceptionalNotChiSlice,
    Undetermined,
}

/// Which of the three quasi-alternating three-braid families a word is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BaldwinFamily {
    Twisted,
    Power,
    Short,
    Unrecognized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub components: usize,
    pub determinant: u128,
    pub signature: i64,
    /// Conway-normalized polynomial of the natural orientation.
    pub alexander: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientationCheck {
    pub orientation: String,
    pub alexander: String,
    pub fox_milnor: bool,
}

/// Why the exceptional links bound no Euler characteristic one surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalEvidence {
    pub signature: i64,
    /// One entry per orientation with a single reversed component.
    pub reversed: Vec<OrientationCheck>,
    pub hopf_pairs: bool,
}

impl ExceptionalEvidence {
    pub fn conclusive(&self) -> bool {
        self.signature != 0 && self.reversed.iter().all(|c| !c.fox_milnor) && self.hopf_pairs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub descriptor: BraidDescriptor,
    pub word: String,
    pub baldwin_family: BaldwinFamily,
    pub families: Vec<FamilyTag>,
    pub qb4: Option<Verdict>,
    pub chi_slice: ChiSlice,
    pub invariants: Invariants,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ExceptionalEvidence>,
}

/// Words of the two finite families: `(s1 s2)^(3t) s2^m` and
/// `(s1 s2)^(3t) s1^m s2^-1`.
pub fn finite_family_word(family: BaldwinFamily, t: i64, m: i64) -> BraidWord {
    let mut letters = Vec::new();
    for _ in 0..(3 * t).unsigned_abs() {
        if t > 0 {
            letters.extend_from_slice(&[1, 2]);
        } else {
            letters.extend_from_slice(&[-2, -1]);
        }
    }
    let push = |letters: &mut Vec<i32>, g: i32, e: i64| {
        for _ in 0..e.unsigned_abs() {
            letters.push(if e > 0 { g } else { -g });
        }
    };
    match family {
        BaldwinFamily::Power => push(&mut letters, 2, m),
        _ => {
            push(&mut letters, 1, m);
            letters.push(-2);
        }
    }
    BraidWord::new(3, letters).expect("three strands")
}

/// `(family, t, m)` for every member of the two finite families.
pub fn finite_family_members() -> Vec<(BaldwinFamily, i64, i64)> {
    let mut out = Vec::new();
    for m in 1..=3 {
        out.push((BaldwinFamily::Power, 1, -m));
        out.push((BaldwinFamily::Power, -1, m));
    }
    for t in [0, 1] {
        for m in 1..=3 {
            out.push((BaldwinFamily::Short, t, -m));
        }
    }
    out
}

/// Matches a raw three-braid word against the finite families up to
/// cyclic rotation.
pub fn identify_raw(w: &BraidWord) -> Option<(BaldwinFamily, i64, i64)> {
    if w.strands() != 3 {
        return None;
    }
    finite_family_members().into_iter().find(|&(f, t, m)| {
        let cand = finite_family_word(f, t, m);
        cand.len() == w.len()
            && (0..w.len().max(1)).any(|k| cand.rotate(k).letters() == w.letters())
    })
}

/// Three components, and deleting any one of them leaves a link of
/// determinant 2. Such a link bounds no disk together with two Mobius bands.
pub fn hopf_pair_predicate(w: &BraidWord) -> bool {
    if closure_components(w) != 3 {
        return false;
    }
    [[0, 1], [0, 2], [1, 2]].iter().all(|pair| {
        sub_braid(w, pair)
            .map(|s| determinant(&s) == 2)
            .unwrap_or(false)
    })
}

pub fn invariants(w: &BraidWord) -> Invariants {
    Invariants {
        components: closure_components(w),
        determinant: determinant(w),
        signature: signature(w),
        alexander: alexander_natural(w).to_string(),
    }
}

pub fn exceptional_evidence(w: &BraidWord) -> Result<ExceptionalEvidence> {
    let comps = closure_components(w);
    let mut reversed = Vec::new();
    for c in 0..comps {
        let mut o = vec![1; comps];
        o[c] = -1;
        let o = Orientation(o);
        let poly = alexander_fox(w, &o)?;
        let fm = if poly.is_zero() {
            true
        } else {
            fox_milnor_test(&poly)?
        };
        reversed.push(OrientationCheck {
            orientation: o.to_string(),
            alexander: poly.to_string(),
            fox_milnor: fm,
        });
    }
    Ok(ExceptionalEvidence {
        signature: signature(w),
        reversed,
        hopf_pairs: hopf_pair_predicate(w),
    })
}

fn ribbon_listed(t: i64, tags: &BTreeSet<FamilyTag>) -> bool {
    match t {
        -1 => tags.iter().any(|f| f.is_s1()),
        1 => tags.iter().any(|f| f.is_s1()) && !tags.contains(&FamilyTag::S1a),
        0 => tags.iter().any(|f| f.is_s2() && *f != FamilyTag::S2c),
        _ => false,
    }
}

/// A ribbon surface is known for the closure or for its mirror.
pub fn ribbon_known(t: i64, a: &[i64]) -> bool {
    ribbon_listed(t, &classify_family(a))
        || cyclic_dual(a).is_ok_and(|d| ribbon_listed(-t, &classify_family(&d)))
}

fn chi_from_verdict(
    t: i64,
    a: &[i64],
    v: &Verdict,
    exceptional: Option<&ExceptionalEvidence>,
) -> ChiSlice {
    if let Some(e) = exceptional {
        return if e.conclusive() {
            ChiSlice::ExceptionalNotChiSlice
        } else {
            ChiSlice::Undetermined
        };
    }
    match v.status {
        QbStatus::BoundsQb4 if ribbon_known(t, a) => ChiSlice::RibbonKnown,
        QbStatus::BoundsQb4 => ChiSlice::OpenS2c0,
        s if s.is_obstructed() => ChiSlice::NotChiSlice,
        _ => ChiSlice::Undetermined,
    }
}

fn is_square(n: u128) -> bool {
    let r = (n as f64).sqrt() as u128;
    (r.saturating_sub(2)..=r + 2).any(|k| k * k == n)
}

pub fn classify(d: &BraidDescriptor) -> Result<ClassificationReport> {
    let w = descriptor_to_word(d)?;
    let inv = invariants(&w);
    match d {
        BraidDescriptor::Family { t, a } => {
            if !(-1..=1).contains(t) {
                return Err(Error::Invalid(format!("twist {t} is outside -1..=1")));
            }
            let verdict = obstruct_qb4(d)?;
            let exceptional = if is_exceptional(*t, a) {
                Some(exceptional_evidence(&w)?)
            } else {
                None
            };
            let chi_slice = chi_from_verdict(*t, a, &verdict, exceptional.as_ref());
            Ok(ClassificationReport {
                schema: SCHEMA_VERSION,
                descriptor: d.clone(),
                word: w.to_string(),
                baldwin_family: BaldwinFamily::Twisted,
                families: classify_family(a).into_iter().collect(),
                qb4: Some(verdict),
                chi_slice,
                invariants: inv,
                exceptional,
            })
        }
        BraidDescriptor::Raw { word } => {
            let (family, chi_slice) = match identify_raw(word) {
                Some((BaldwinFamily::Power, _, _)) => (BaldwinFamily::Power, ChiSlice::RibbonKnown),
                Some((f, _, _)) if inv.determinant == 1 && inv.components == 1 => {
                    (f, ChiSlice::RibbonKnown)
                }
                Some((f, _, _)) if !is_square(inv.determinant) => (f, ChiSlice::NotChiSlice),
                Some((f, _, _)) => (f, ChiSlice::Undetermined),
                None if inv.determinant != 0 && !is_square(inv.determinant) => {
                    (BaldwinFamily::Unrecognized, ChiSlice::NotChiSlice)
                }
                None => (BaldwinFamily::Unrecognized, ChiSlice::Undetermined),
            };
            Ok(ClassificationReport {
                schema: SCHEMA_VERSION,
                descriptor: d.clone(),
                word: w.to_string(),
                baldwin_family: family,
                families: Vec::new(),
                qb4: None,
                chi_slice,
                invariants: inv,
                exceptional: None,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchSpec {
    pub max_len: usize,
    pub t_set: Vec<i64>,
    pub cap: i64,
    /// 0 uses the ambient pool.
    pub threads: usize,
}

impl Default for BatchSpec {
    fn default() -> Self {
        Self {
            max_len: 5,
            t_set: vec![-1, 0, 1],
            cap: 6,
            threads: 0,
        }
    }
}

/// The `(t, string)` pairs a batch visits, in output order: strings by
/// length then lexicographically, and for each string the twists in the
/// order given.
pub fn batch_descriptors(spec: &BatchSpec) -> Result<Vec<(i64, IntString)>> {
    if spec.max_len > MAX_BATCH_LEN {
        return Err(Error::TooLarge {
            got: spec.max_len,
            max: MAX_BATCH_LEN,
        });
    }
    if spec.cap < 3 {
        return Err(Error::Invalid("entry cap must be at least 3".into()));
    }
    if let Some(t) = spec.t_set.iter().find(|t| !(-1..=1).contains(*t)) {
        return Err(Error::Invalid(format!("twist {t} is outside -1..=1")));
    }
    let mut out = Vec::new();
    for a in canonical_strings(spec.max_len, spec.cap) {
        if a.len() < 2 {
            continue;
        }
        for &t in &spec.t_set {
            out.push((t, a.clone()));
        }
    }
    Ok(out)
}

/// Reports for every descriptor of the batch, in canonical order whatever
/// the thread count.
pub fn batch_enumerate(spec: &BatchSpec) -> Result<Vec<ClassificationReport>> {
    let items = batch_descriptors(spec)?;
    par::with_threads(spec.threads, || {
        par::map_collect(&items, |(t, a)| classify(&BraidDescriptor::family(*t, a)))
            .into_iter()
            .collect()
    })
}

/// Canonical single-line JSON for a report.
pub fn to_json(report: &ClassificationReport) -> String {
    serde_json::to_string(report).expect("reports serialize")
}

fn tag_name<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// One CSV row per report. Lossy: verdict evidence and the exceptional
/// block are dropped.
pub const CSV_HEADER: &str =
    "t,string,word,qb4,chi_slice,components,determinant,signature,alexander";

pub fn to_csv_row(r: &ClassificationReport) -> String {
    let (t, string) = match &r.descriptor {
        BraidDescriptor::Family { t, a } => (
            t.to_string(),
            a.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        BraidDescriptor::Raw { .. } => (String::new(), String::new()),
    };
    let qb4 = r
        .qb4
        .as_ref()
        .map(|v| tag_name(&v.status))
        .unwrap_or_default();
    format!(
        "{},{},\"{}\",{},{},{},{},{},\"{}\"",
        t,
        string,
        r.word,
        qb4,
        tag_name(&r.chi_slice),
        r.invariants.components,
        r.invariants.determinant,
        r.invariants.signature,
        r.invariants.alexander
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_families() {
        for (f, t, m) in finite_family_members() {
            let w = finite_family_word(f, t, m);
            assert_eq!(identify_raw(&w), Some((f, t, m)));
            assert_eq!(identify_raw(&w.rotate(2)), Some((f, t, m)));
            let r = classify(&BraidDescriptor::Raw { word: w }).unwrap();
            if f == BaldwinFamily::Power {
                assert_eq!(r.chi_slice, ChiSlice::RibbonKnown);
            }
        }
        // family (3): one unknot, the trefoil and the Hopf link
        let dets: Vec<u128> = [-1, -2, -3]
            .iter()
            .map(|&m| determinant(&finite_family_word(BaldwinFamily::Short, 0, m)))
            .collect();
        assert!(dets.contains(&1));
    }

    #[test]
    fn exceptional_reports() {
        for t in [-1, 1] {
            let r = classify(&BraidDescriptor::family(t, &[3; 6])).unwrap();
            assert_eq!(r.qb4.as_ref().unwrap().status, QbStatus::ExceptionalLe);
            assert_eq!(r.chi_slice, ChiSlice::ExceptionalNotChiSlice);
            assert!(r.exceptional.unwrap().hopf_pairs);
        }
    }

    #[test]
    fn small_batch_order() {
        let spec = BatchSpec {
            max_len: 3,
            t_set: vec![1, -1],
            cap: 4,
            threads: 1,
        };
        let items = batch_descriptors(&spec).unwrap();
        assert_eq!(items[0], (1, vec![2, 3]));
        assert_eq!(items[1], (-1, vec![2, 3]));
        assert!(batch_descriptors(&BatchSpec {
            max_len: 12,
            ..spec.clone()
        })
        .is_err());
    }
}
