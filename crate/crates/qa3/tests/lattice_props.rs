use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use qa3::cubiquity::{is_cubiquitous, witness_avoids_cube};
use qa3::embeddings::{canonical_form, enumerate_embeddings, Embedding};
use qa3::lattice::{
    det_exact, gram_form, inverse_rational, is_characteristic, lens_d_invariants, mat_mul,
    max_square_char, smith_normal_form, sorted_multiset, GramForm, LensSpace, Matrix, Rational,
};

fn square_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = Matrix> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-bound..=bound, n), n))
}

/// Cube points `z`, `z'` agree modulo the lattice iff `B^{-1}(z - z')` is
/// integral. Counts the classes the cube reaches.
fn cube_classes_by_inverse(b: &Matrix) -> usize {
    let inv = inverse_rational(b).unwrap();
    let n = b.len();
    let images: Vec<Vec<Rational>> = (0u32..1 << n)
        .map(|mask| {
            inv.iter()
                .map(|row| {
                    (0..n)
                        .filter(|&j| mask >> j & 1 == 1)
                        .map(|j| row[j])
                        .sum::<Rational>()
                })
                .collect()
        })
        .collect();
    let mut reps: Vec<&Vec<Rational>> = Vec::new();
    for x in &images {
        let same = |r: &&Vec<Rational>| r.iter().zip(x).all(|(a, b)| (a - b).is_integer());
        if !reps.iter().any(same) {
            reps.push(x);
        }
    }
    reps.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_factors_the_matrix(b in square_matrix(4, 5)) {
        let det = det_exact(&b).unwrap();
        let s = smith_normal_form(&b).unwrap();
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &b), &s.v), s.d.clone());
        prop_assert_eq!(det_exact(&s.u).unwrap().abs(), 1);
        prop_assert_eq!(det_exact(&s.v).unwrap().abs(), 1);
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|&x| x >= 0));
        prop_assert!(diag.windows(2).all(|w| w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0));
        prop_assert_eq!(diag.iter().map(|&x| x as i128).product::<i128>(), det.abs());
    }

    #[test]
    fn cubiquity_agrees_with_brute_force(b in square_matrix(4, 3)) {
        let det = det_exact(&b).unwrap();
        prop_assume!(det != 0 && det.abs() <= 60);
        let report = is_cubiquitous(&b).unwrap();
        let brute = cube_classes_by_inverse(&b) as i128 == det.abs();
        prop_assert_eq!(report.cubiquitous, brute);
        if let Some(w) = &report.witness {
            prop_assert!(witness_avoids_cube(&b, w).unwrap());
        }
        prop_assert_eq!(report.witness.is_none(), report.cubiquitous);
    }

    #[test]
    fn lens_tables_respect_inverse_parameter(p in 2i64..80, q in 1i64..80) {
        prop_assume!(q < p && p.gcd(&q) == 1);
        let qi = (1..p).find(|x| (x * q) % p == 1).unwrap();
        let a = sorted_multiset(&lens_d_invariants(LensSpace::new(p, q).unwrap()));
        let b = sorted_multiset(&lens_d_invariants(LensSpace::new(p, qi).unwrap()));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn coset_maxima_cover_every_class(t in -1i64..=1, a in prop::collection::vec(2i64..=6, 2..=6)) {
        let q = gram_form(t, &a).unwrap();
        prop_assume!(q.is_negative_definite());
        let cosets = max_square_char(&q).unwrap();
        prop_assert_eq!(cosets.len() as i128, q.det().abs());
        let labels: BTreeSet<_> = cosets.iter().map(|c| c.label.clone()).collect();
        prop_assert_eq!(labels.len(), cosets.len());
        let n = Rational::from_integer(a.len() as i128);
        for c in &cosets {
            prop_assert!(is_characteristic(&c.char_vector, &q));
            prop_assert_eq!(c.d, (c.square + n) / Rational::from_integer(4));
        }
    }
}

/// All column tuples with the right Gram matrix, entries in `-2..=2`.
fn brute_embeddings(q: &GramForm) -> BTreeSet<Embedding> {
    let n = q.n();
    let box_vectors: Vec<Vec<i64>> = (0..5i64.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let x = code % 5 - 2;
                    code /= 5;
                    x
                })
                .collect()
        })
        .collect();
    let dot = |v: &[i64], w: &[i64]| -> i64 { -v.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() };
    let mut out = BTreeSet::new();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    fn rec(
        j: usize,
        q: &GramForm,
        vs: &[Vec<i64>],
        cols: &mut Vec<Vec<i64>>,
        out: &mut BTreeSet<Embedding>,
        dot: &dyn Fn(&[i64], &[i64]) -> i64,
    ) {
        if j == q.n() {
            out.insert(canonical_form(&Embedding::from_columns(cols)));
            return;
        }
        for v in vs {
            if dot(v, v) == q.q[j][j] && (0..j).all(|i| dot(&cols[i], v) == q.q[i][j]) {
                cols.push(v.clone());
                rec(j + 1, q, vs, cols, out, dot);
                cols.pop();
            }
        }
    }
    rec(0, q, &box_vectors, &mut cols, &mut out, &dot);
    out
}

#[test]
fn embeddings_match_brute_force() {
    let mut checked = 0;
    for n in 2..=3usize {
        let mut a = vec![2i64; n];
        loop {
            for t in -1..=1 {
                let q = gram_form(t, &a).unwrap();
                if !q.is_negative_definite() {
                    continue;
                }
                let fast: BTreeSet<Embedding> =
                    enumerate_embeddings(&q).unwrap().into_iter().collect();
                assert_eq!(fast, brute_embeddings(&q), "t {t} a {a:?}");
                for e in &fast {
                    assert_eq!(e.gram(), q.q);
                }
                checked += 1;
            }
            let Some(i) = (0..n).rev().find(|&i| a[i] < 6) else {
                break;
            };
            a[i] += 1;
            a[i + 1..].iter_mut().for_each(|x| *x = 2);
        }
    }
    assert!(checked > 100);
}

#[test]
fn rank_four_embeddings_match_brute_force() {
    for a in [[2, 3, 2, 3], [3, 3, 3, 3], [2, 2, 2, 4], [2, 5, 2, 3]] {
        for t in [-1, 0, 1] {
            let q = gram_form(t, &a).unwrap();
            if !q.is_negative_definite() {
                continue;
            }
            let fast: BTreeSet<Embedding> = enumerate_embeddings(&q).unwrap().into_iter().collect();
            assert_eq!(fast, brute_embeddings(&q), "t {t} a {a:?}");
        }
    }
}
