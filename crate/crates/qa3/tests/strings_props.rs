use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use qa3::pipeline::{batch_descriptors, BatchSpec};
use qa3::strings::{
    canonical, canonical_strings, cfe_eval, cfe_of_fraction, classify_family, cyclic_dual,
    dihedral_variants, expand_l, in_l, linear_dual, same_cyclic, FamilyTag, Fraction, IntString,
    Side,
};

fn string_strategy(max_len: usize, cap: i64) -> impl Strategy<Value = IntString> {
    prop::collection::vec(2..=cap, 1..=max_len)
}

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (2i64..2000)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter("coprime", |(p, q)| p.gcd(q) == 1)
}

proptest! {
    #[test]
    fn cfe_round_trip((p, q) in coprime_pair()) {
        let f = Fraction::new(p, q).unwrap();
        let a = cfe_of_fraction(f);
        prop_assert!(a.iter().all(|&x| x >= 2));
        prop_assert_eq!(cfe_eval(&a).unwrap(), f);
    }

    #[test]
    fn linear_dual_is_complementary_fraction((p, q) in coprime_pair()) {
        let a = cfe_of_fraction(Fraction::new(p, q).unwrap());
        let d = linear_dual(&a).unwrap();
        prop_assert_eq!(cfe_eval(&d).unwrap(), Fraction::new(p, p - q).unwrap());
        prop_assert_eq!(linear_dual(&d).unwrap(), a);
    }

    #[test]
    fn cyclic_dual_is_an_involution(a in string_strategy(8, 7)) {
        prop_assume!(a.len() >= 2 && a.iter().any(|&x| x >= 3));
        let d = cyclic_dual(&a).unwrap();
        prop_assert!(same_cyclic(&cyclic_dual(&d).unwrap(), &a));
        // sum of (a_i - 2) equals the length of the dual and vice versa
        prop_assert_eq!(a.iter().map(|x| x - 2).sum::<i64>(), d.len() as i64);
    }

    #[test]
    fn canonical_is_dihedral_invariant(a in string_strategy(8, 6), k in 0usize..8, flip in any::<bool>()) {
        let c = canonical(&a);
        prop_assert_eq!(canonical(&c), c.clone());
        let mut b = a.clone();
        b.rotate_left(k % a.len());
        if flip {
            b.reverse();
        }
        prop_assert_eq!(canonical(&b), c.clone());
        prop_assert!(dihedral_variants(&a).iter().all(|v| *v >= c));
    }

    #[test]
    fn family_tags_are_dihedral_invariant(a in string_strategy(7, 6), k in 0usize..7) {
        let mut b = a.clone();
        b.rotate_left(k % a.len());
        b.reverse();
        let strip = |s: BTreeSet<FamilyTag>| -> BTreeSet<FamilyTag> {
            s.into_iter().filter(|t| *t != FamilyTag::LFamily && *t != FamilyTag::None).collect()
        };
        prop_assert_eq!(strip(classify_family(&a)), strip(classify_family(&b)));
    }

    #[test]
    fn expansions_stay_in_l(moves in prop::collection::vec(any::<bool>(), 0..10)) {
        let mut d = vec![4];
        for front in moves {
            d = expand_l(&d, if front { Side::Front } else { Side::Back }).unwrap();
            prop_assert!(in_l(&d));
        }
    }

    #[test]
    fn l_matches_dual_pair_definition(b in string_strategy(5, 6)) {
        // (b_1, ..., b_{k-1}, b_k + c_l, c_{l-1}, ..., c_1)
        let c = linear_dual(&b).unwrap();
        let mut d = b[..b.len() - 1].to_vec();
        d.push(b[b.len() - 1] + c[c.len() - 1]);
        d.extend(c[..c.len() - 1].iter().rev());
        prop_assert!(in_l(&d), "{:?}", d);
    }
}

#[test]
fn l_rejects_near_misses() {
    assert!(!in_l(&[3, 3]));
    assert!(!in_l(&[2, 2]));
    assert!(expand_l(&[3, 3], Side::Front).is_err());
}

/// Linear strings `b` (entries >= 2) whose dual has length `total - len(b)`
/// for some total in `1..=max_total`.
fn dual_pairs(max_total: usize) -> Vec<(IntString, IntString)> {
    let mut out = Vec::new();
    let mut stack: Vec<IntString> = (2..=max_total as i64 + 1).map(|x| vec![x]).collect();
    while let Some(b) = stack.pop() {
        let c = linear_dual(&b).unwrap();
        if b.len() + c.len() > max_total {
            continue;
        }
        out.push((b.clone(), c));
        for x in 2..=max_total as i64 + 1 {
            let mut nb = b.clone();
            nb.push(x);
            stack.push(nb);
        }
    }
    out
}

fn pattern(b: &[i64], middle: i64, c: &[i64], last: i64) -> IntString {
    let mut a = b.to_vec();
    a.push(middle);
    a.extend(c.iter().rev());
    a.push(last);
    a
}

/// Independent generator for the three dual-pair patterns of the first
/// list, against the tags assigned by `classify_family`.
#[test]
fn s1_patterns_match_generation_oracle() {
    let max_len = 7;
    let cap = 6;
    let mut generated: [BTreeSet<IntString>; 3] = Default::default();
    for (b, c) in dual_pairs(max_len - 2) {
        let kl = b.len() + c.len();
        let shapes = [(2, 2, 3), (2, 5, 2), (3, 3, 2)];
        for (i, &(middle, last, min_kl)) in shapes.iter().enumerate() {
            let a = pattern(&b, middle, &c, last);
            if kl >= min_kl && a.iter().all(|&x| x <= cap) {
                generated[i].insert(canonical(&a));
            }
        }
    }
    let tags = [FamilyTag::S1a, FamilyTag::S1b, FamilyTag::S1c];
    for a in canonical_strings(max_len, cap) {
        let have = classify_family(&a);
        for (i, tag) in tags.iter().enumerate() {
            assert_eq!(
                have.contains(tag),
                generated[i].contains(&a),
                "{tag} on {a:?}"
            );
        }
    }
    assert!(generated[0].contains(&canonical(&[3, 2, 2, 2, 2])));
}

fn bracelets(n: u64, k: u64) -> u64 {
    let phi = |m: u64| (1..=m).filter(|x| x.gcd(&m) == 1).count() as u64;
    let necklaces: u64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| phi(d) * k.pow((n / d) as u32))
        .sum::<u64>()
        / n;
    let reflect = if n % 2 == 1 {
        k.pow(n.div_ceil(2) as u32)
    } else {
        (k.pow(n as u32 / 2 + 1) + k.pow(n as u32 / 2)) / 2
    };
    (necklaces + reflect) / 2
}

#[test]
fn canonical_counts_match_bracelet_formula() {
    for cap in 3..=6i64 {
        let strings = canonical_strings(7, cap);
        for n in 1..=7usize {
            let got = strings.iter().filter(|a| a.len() == n).count() as u64;
            // bracelets over cap - 1 symbols, minus the all-2 string
            assert_eq!(
                got,
                bracelets(n as u64, cap as u64 - 1) - 1,
                "n {n} cap {cap}"
            );
        }
    }
}

#[test]
fn batch_visits_each_class_once_per_twist() {
    let spec = BatchSpec {
        max_len: 6,
        t_set: vec![-1, 0, 1],
        cap: 5,
        threads: 0,
    };
    let items = batch_descriptors(&spec).unwrap();
    let expected: u64 = (2..=6).map(|n| bracelets(n, 4) - 1).sum::<u64>() * 3;
    assert_eq!(items.len() as u64, expected);
    let distinct: BTreeSet<_> = items.iter().collect();
    assert_eq!(distinct.len(), items.len());
    assert!(items.iter().all(|(_, a)| canonical(a) == *a));

    let ones = BatchSpec {
        max_len: 5,
        t_set: vec![1],
        cap: 6,
        threads: 0,
    };
    let hits = batch_descriptors(&ones)
        .unwrap()
        .into_iter()
        .filter(|(_, a)| same_cyclic(a, &[3, 2, 2, 2, 2]))
        .count();
    assert_eq!(hits, 1);

    let long = BatchSpec {
        max_len: 8,
        t_set: vec![-1],
        cap: 6,
        threads: 0,
    };
    let items = batch_descriptors(&long).unwrap();
    for o in qa3::strings::O_STRINGS {
        assert!(
            items.iter().any(|(t, a)| *t == -1 && same_cyclic(a, o)),
            "{o:?}"
        );
    }
}
