use proptest::prelude::*;
use qa3::braid::{
    alexander_fox, alexander_natural, closure_components, determinant, family_word,
    fox_milnor_test, is_connected, poly_det, seifert_matrix, signature, BraidWord, LaurentPoly,
    Orientation,
};
use qa3::cubiquity::plumbing_form;
use qa3::lattice::transpose;

type M2 = [[LaurentPoly; 2]; 2];

fn lp(low: i64, c: &[i128]) -> LaurentPoly {
    LaurentPoly::new(low, c.to_vec())
}

/// Reduced Burau matrix of one three-strand letter.
fn burau(letter: i32) -> M2 {
    let (o, z) = (LaurentPoly::one(), LaurentPoly::zero());
    match letter {
        1 => [[lp(1, &[-1]), o.clone()], [z.clone(), o]],
        -1 => [[lp(-1, &[-1]), lp(-1, &[1])], [z, o]],
        2 => [[o.clone(), z], [lp(1, &[1]), lp(1, &[-1])]],
        -2 => [[o.clone(), z], [o, lp(-1, &[-1])]],
        _ => unreachable!(),
    }
}

fn mul(a: &M2, b: &M2) -> M2 {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `det(I - burau(w))`, which is `(1 + t + t^2)` times the Alexander
/// polynomial of the closure up to units.
fn burau_alexander_times_cyclotomic(w: &BraidWord) -> LaurentPoly {
    let (o, z) = (LaurentPoly::one(), LaurentPoly::zero());
    let mut m: M2 = [[o.clone(), z.clone()], [z, o.clone()]];
    for &l in w.letters() {
        m = mul(&m, &burau(l));
    }
    let a = &o - &m[0][0];
    let d = &o - &m[1][1];
    &(&a * &d) - &(&m[0][1] * &m[1][0])
}

fn word_strategy() -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 1..14)
        .prop_map(|l| BraidWord::three_strand(l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fox_agrees_with_burau_oracle(w in word_strategy()) {
        let fox = alexander_fox(&w, &Orientation::natural(closure_components(&w))).unwrap();
        let cyclotomic = LaurentPoly::from_poly(&[1, 1, 1]);
        prop_assert!((&cyclotomic * &fox).equiv(&burau_alexander_times_cyclotomic(&w)), "{}", w);
    }

    #[test]
    fn seifert_agrees_with_fox(w in word_strategy()) {
        prop_assume!(is_connected(&w));
        let fox = alexander_fox(&w, &Orientation::natural(closure_components(&w))).unwrap();
        prop_assert!(alexander_natural(&w).equiv(&fox), "{}", w);
    }

    #[test]
    fn knot_seifert_forms_are_unimodular(w in word_strategy()) {
        prop_assume!(is_connected(&w) && closure_components(&w) == 1);
        let v = seifert_matrix(&w);
        let vt = transpose(&v);
        let skew: Vec<Vec<i64>> = v.iter().zip(&vt).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect()).collect();
        let d = qa3::lattice::det_exact(&skew).unwrap();
        prop_assert_eq!(d.abs(), 1);
        prop_assert_eq!(alexander_natural(&w).coeffs().iter().sum::<i128>().abs(), 1);
    }

    #[test]
    fn mirror_negates_signature(w in word_strategy()) {
        prop_assert_eq!(signature(&w.inverse()), -signature(&w));
        prop_assert_eq!(determinant(&w.inverse()), determinant(&w));
    }

    #[test]
    fn invariants_survive_conjugation(w in word_strategy(), k in 0usize..14, g in prop::sample::select(vec![1, -1, 2, -2])) {
        let rotated = w.rotate(k % w.len());
        let conj = BraidWord::three_strand(vec![g]).unwrap().concat(&w).concat(&BraidWord::three_strand(vec![-g]).unwrap());
        for v in [&rotated, &conj] {
            prop_assert_eq!(closure_components(v), closure_components(&w));
            prop_assert_eq!(determinant(v), determinant(&w));
            prop_assert_eq!(signature(v), signature(&w));
            prop_assert!(alexander_natural(v).equiv(&alexander_natural(&w)));
        }
    }

    #[test]
    fn closure_determinant_matches_plumbing(t in -1i64..=1, a in prop::collection::vec(2i64..=6, 1..=6)) {
        let w = family_word(t, &a);
        let q = plumbing_form(t, &a).unwrap();
        prop_assert_eq!(alexander_natural(&w).eval_minus_one().abs(), q.det().abs());
        prop_assert_eq!(determinant(&w) as i128, q.det().abs());
    }

    #[test]
    fn fox_milnor_accepts_norms(c in prop::collection::vec(-4i128..=4, 1..=4)) {
        let f = LaurentPoly::from_poly(&c);
        prop_assume!(!f.is_zero());
        let norm = &f * &f.invert_variable();
        prop_assert!(fox_milnor_test(&norm).unwrap());
        let odd = &norm * &LaurentPoly::from_poly(&[1, -3, 1]);
        prop_assert!(!fox_milnor_test(&odd).unwrap());
    }
}

#[test]
fn burau_matrices_satisfy_braid_relation() {
    let lhs = mul(&mul(&burau(1), &burau(2)), &burau(1));
    let rhs = mul(&mul(&burau(2), &burau(1)), &burau(2));
    assert_eq!(lhs, rhs);
    for l in [1, 2] {
        let id = mul(&burau(l), &burau(-l));
        assert_eq!(id[0][0], LaurentPoly::one());
        assert!(id[0][1].is_zero() && id[1][0].is_zero());
    }
}

#[test]
fn seifert_determinant_via_poly_det() {
    // det(V - V^T) through the polynomial determinant at t = 1
    let w: BraidWord = "1 -2 1 -2".parse().unwrap();
    let v = seifert_matrix(&w);
    let vt = transpose(&v);
    let m: Vec<Vec<Vec<i128>>> = v
        .iter()
        .zip(&vt)
        .map(|(r, s)| {
            r.iter()
                .zip(s)
                .map(|(a, b)| vec![(*a - *b) as i128])
                .collect()
        })
        .collect();
    assert_eq!(poly_det(&m).first().copied().unwrap_or(0).abs(), 1);
}
