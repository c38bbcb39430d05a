use proptest::prelude::*;
use qa3::braid::BraidDescriptor;
use qa3::cubiquity::{obstruct_qb4, QbStatus};
use qa3::pipeline::{batch_enumerate, classify, to_json, BatchSpec, ChiSlice};
use qa3::strings::{canonical_strings, classify_family, cyclic_dual, FamilyTag};

#[test]
fn verdict_is_mirror_symmetric() {
    for a in canonical_strings(5, 5).into_iter().filter(|a| a.len() >= 2) {
        let d = cyclic_dual(&a).unwrap();
        if d.len() < 2 {
            continue;
        }
        for t in -1..=1 {
            let here = obstruct_qb4(&BraidDescriptor::family(t, &a))
                .unwrap()
                .status;
            let there = obstruct_qb4(&BraidDescriptor::family(-t, &d))
                .unwrap()
                .status;
            assert_eq!(
                here == QbStatus::BoundsQb4,
                there == QbStatus::BoundsQb4,
                "({t},{a:?}) vs ({},{d:?})",
                -t
            );
            assert_eq!(here.is_obstructed(), there.is_obstructed(), "({t},{a:?})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn classify_is_pure(t in -1i64..=1, a in prop::collection::vec(2i64..=6, 2..=6)) {
        prop_assume!(a.iter().any(|&x| x >= 3));
        let d = BraidDescriptor::family(t, &a);
        let first = to_json(&classify(&d).unwrap());
        let second = to_json(&classify(&d).unwrap());
        prop_assert_eq!(first, second);
    }
}

#[test]
fn batch_is_independent_of_thread_count() {
    let spec = BatchSpec {
        max_len: 5,
        t_set: vec![-1, 0, 1],
        cap: 5,
        threads: 1,
    };
    let serial: Vec<String> = batch_enumerate(&spec)
        .unwrap()
        .iter()
        .map(to_json)
        .collect();
    let wide: Vec<String> = batch_enumerate(&BatchSpec {
        threads: 4,
        ..spec.clone()
    })
    .unwrap()
    .iter()
    .map(to_json)
    .collect();
    assert_eq!(serial, wide);
    // batch rows are byte-identical to one-off classification
    for line in serial.iter().step_by(37) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let t = v["descriptor"]["t"].as_i64().unwrap();
        let a: Vec<i64> = v["descriptor"]["a"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect();
        assert_eq!(
            &to_json(&classify(&BraidDescriptor::family(t, &a)).unwrap()),
            line
        );
    }
}

#[test]
fn chi_slice_follows_families() {
    let reports = batch_enumerate(&BatchSpec {
        max_len: 6,
        t_set: vec![0],
        cap: 5,
        threads: 0,
    })
    .unwrap();
    let mut open = 0;
    for r in &reports {
        let BraidDescriptor::Family { a, .. } = &r.descriptor else {
            unreachable!()
        };
        let status = r.qb4.as_ref().unwrap().status;
        match r.chi_slice {
            ChiSlice::OpenS2c0 => {
                open += 1;
                let mirror = classify_family(&cyclic_dual(a).unwrap());
                assert!(
                    r.families.contains(&FamilyTag::S2c) || mirror.contains(&FamilyTag::S2c),
                    "{a:?}"
                );
                assert_eq!(status, QbStatus::BoundsQb4);
            }
            ChiSlice::RibbonKnown => assert_eq!(status, QbStatus::BoundsQb4),
            ChiSlice::NotChiSlice => assert!(status.is_obstructed()),
            ChiSlice::Undetermined => assert_eq!(status, QbStatus::Unknown),
            ChiSlice::ExceptionalNotChiSlice => panic!("no exceptional link at t = 0"),
        }
    }
    assert!(open > 0);
}

#[test]
fn documented_examples() {
    let r = classify(&BraidDescriptor::family(1, &[3, 2, 2, 2, 2])).unwrap();
    assert!(r.qb4.unwrap().status.is_obstructed());
    for t in [-1, 1] {
        let r = classify(&BraidDescriptor::family(t, &[3; 6])).unwrap();
        assert_eq!(r.qb4.as_ref().unwrap().status, QbStatus::ExceptionalLe);
        assert_eq!(r.chi_slice, ChiSlice::ExceptionalNotChiSlice);
    }
    assert!(classify(&BraidDescriptor::family(2, &[3, 3])).is_err());
}
