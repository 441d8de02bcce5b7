use std::collections::BTreeMap;

use llskit::descent::fixtures::{
    automorphism_site, broken_cocycle, fixture_suite, galois_cases, isolated_pair, missing_gluing,
};
use llskit::descent::*;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[test]
fn suite_is_small_and_well_formed() {
    let suite = fixture_suite();
    assert!(suite.len() >= 10);
    for fx in &suite {
        assert!(fx.site.object_count() <= 4, "{}", fx.name);
        let back = FiniteSite::new(fx.site.to_raw()).unwrap();
        assert_eq!(back.to_raw(), fx.site.to_raw(), "{}", fx.name);
    }
}

#[test]
fn fixture_sheaves_are_sheaves() {
    for fx in fixture_suite() {
        for (i, f) in fx.sheaves.iter().enumerate() {
            let report = check_sheaf(&fx.site, f).unwrap();
            assert!(report.is_sheaf, "{} #{i}: {:?}", fx.name, report.failure);
        }
    }
}

#[test]
fn missing_gluing_has_witness() {
    let (site, f) = missing_gluing();
    let report = check_sheaf(&site, &f).unwrap();
    assert!(!report.is_sheaf);
    let failure = report.failure.unwrap();
    assert_eq!(failure.target, "X");
    match failure.kind {
        FailureKind::NoGluing { family } => {
            assert_eq!(family.len(), 2);
            assert_ne!(family[0].split('=').nth(1), family[1].split('=').nth(1));
        }
        other => panic!("expected a missing gluing, got {other:?}"),
    }
}

#[test]
fn constant_presheaf_on_empty_cover_is_not_separated() {
    let fx = fixture_suite()
        .into_iter()
        .find(|f| f.name == "discrete two points")
        .unwrap();
    let site = &fx.site;
    let sets = vec![names(&["u", "v"]); site.object_count()];
    let f = SetSheaf::from_fn(site, sets, |_, x| x).unwrap();
    let report = check_sheaf(site, &f).unwrap();
    let failure = report.failure.unwrap();
    assert_eq!(failure.target, "0");
    assert!(matches!(failure.kind, FailureKind::NotSeparated { .. }));
}

#[test]
fn representable_on_trivial_topology() {
    let site = automorphism_site();
    let f = SetSheaf::from_fn(&site, vec![names(&["id_x", "g"])], |f, x| {
        let target = site.arrow_id(["id_x", "g"][x]).unwrap();
        let c = site.compose(target, f);
        usize::from(site.arrow_name(c) == "g")
    })
    .unwrap();
    assert!(check_sheaf(&site, &f).unwrap().is_sheaf);
}

#[test]
fn fixture_subsites_satisfy_hypotheses() {
    for fx in fixture_suite() {
        check_subsite_hypotheses(&fx.site, &fx.sub).unwrap_or_else(|e| panic!("{}: {e}", fx.name));
        let report = check_factorable(&fx.site, &fx.pi).unwrap();
        assert!(report.factorable, "{}: {:?}", fx.name, report.witness);
    }
}

#[test]
fn factorable_examples() {
    for fx in fixture_suite() {
        let all: Vec<String> = fx.site.objects().to_vec();
        assert!(
            check_factorable(&fx.site, &all).unwrap().factorable,
            "{}",
            fx.name
        );
    }
    let pair = isolated_pair();
    let report = check_factorable(&pair, &names(&["x"])).unwrap();
    assert!(!report.factorable);
    assert_eq!(report.witness.as_deref(), Some("y"));
    assert_eq!(
        factorable_subcategory(&pair, &names(&["x"])).unwrap(),
        names(&["x"])
    );
}

#[test]
fn restrict_then_extend_round_trips() {
    for fx in fixture_suite() {
        let sub = full_subsite(&fx.site, &fx.sub).unwrap();
        for (i, f) in fx.sheaves.iter().enumerate() {
            let g = restrict_sheaf(&fx.site, &sub, f).unwrap();
            assert!(check_sheaf(&sub, &g).unwrap().is_sheaf, "{} #{i}", fx.name);
            let back = extend_sheaf(&fx.site, &sub, &g).unwrap();
            assert!(
                check_sheaf(&fx.site, &back).unwrap().is_sheaf,
                "{} #{i}",
                fx.name
            );
            let iso = natural_isomorphism(&fx.site, f, &back).unwrap();
            assert!(iso.is_some(), "{} #{i}", fx.name);
            let again = restrict_sheaf(&fx.site, &sub, &back).unwrap();
            assert!(
                natural_isomorphism(&sub, &g, &again).unwrap().is_some(),
                "{} #{i}",
                fx.name
            );
        }
    }
}

#[test]
fn restriction_to_whole_site_is_identity() {
    for fx in fixture_suite() {
        let all: Vec<String> = fx.site.objects().to_vec();
        let sub = full_subsite(&fx.site, &all).unwrap();
        for f in &fx.sheaves {
            let g = restrict_sheaf(&fx.site, &sub, f).unwrap();
            assert_eq!(g.to_raw(&sub), f.to_raw(&fx.site), "{}", fx.name);
        }
    }
}

#[test]
fn restriction_is_faithful_on_isomorphism_classes() {
    for fx in fixture_suite() {
        let sub = full_subsite(&fx.site, &fx.sub).unwrap();
        for (i, f) in fx.sheaves.iter().enumerate() {
            for (j, g) in fx.sheaves.iter().enumerate() {
                let up = natural_isomorphism(&fx.site, f, g).unwrap().is_some();
                let down = natural_isomorphism(
                    &sub,
                    &restrict_sheaf(&fx.site, &sub, f).unwrap(),
                    &restrict_sheaf(&fx.site, &sub, g).unwrap(),
                )
                .unwrap()
                .is_some();
                assert_eq!(up, down, "{} #{i} vs #{j}", fx.name);
            }
        }
    }
}

#[test]
fn extension_is_an_equalizer_over_two_intervals() {
    let fx = fixture_suite()
        .into_iter()
        .find(|f| f.name == "two intervals")
        .unwrap();
    let sub = full_subsite(&fx.site, &fx.sub).unwrap();
    let f = &fx.sheaves[1];
    let g = restrict_sheaf(&fx.site, &sub, f).unwrap();
    let ext = extend_sheaf(&fx.site, &sub, &g).unwrap();
    let x = fx.site.object_id("X").unwrap();
    // Pairs over a and b agreeing on c: 2^2 * 2^2 / 2.
    assert_eq!(ext.len(x), 8);
}

#[test]
fn glue_recovers_fixture_sheaves() {
    for fx in fixture_suite() {
        for (i, f) in fx.sheaves.iter().enumerate() {
            let datum = pi_datum_from_sheaf(&fx.site, &fx.pi, f).unwrap();
            let glued =
                glue_pi_sheaf(&fx.site, &datum).unwrap_or_else(|e| panic!("{} #{i}: {e}", fx.name));
            assert!(
                check_sheaf(&fx.site, &glued).unwrap().is_sheaf,
                "{} #{i}",
                fx.name
            );
            assert!(
                natural_isomorphism(&fx.site, f, &glued).unwrap().is_some(),
                "{} #{i}",
                fx.name
            );
        }
    }
}

#[test]
fn datum_round_trips_through_json() {
    for fx in fixture_suite() {
        for f in &fx.sheaves {
            let datum = pi_datum_from_sheaf(&fx.site, &fx.pi, f).unwrap();
            let raw = datum.to_raw(&fx.site);
            let text = serde_json::to_string(&raw).unwrap();
            let parsed: RawPiDatum = serde_json::from_str(&text).unwrap();
            let again = PiSheafDatum::new(&fx.site, &parsed).unwrap();
            assert_eq!(again.to_raw(&fx.site), raw, "{}", fx.name);
        }
    }
}

#[test]
fn broken_cocycle_is_reported() {
    let (site, raw) = broken_cocycle();
    match PiSheafDatum::new(&site, &raw) {
        Err(DescentError::CocycleViolation { f, g, .. }) => {
            assert_eq!((f.as_str(), g.as_str()), ("g", "g"));
        }
        other => panic!("expected a cocycle violation, got {other:?}"),
    }
}

#[test]
fn galois_glue_matches_fixed_points() {
    for (group, set, action) in galois_cases() {
        let site = galois_site(&group);
        let fixed = galois_fixed_points(&group, &set, &action).unwrap();
        let datum = galois_datum(&site, &group, &set, &action).unwrap();
        let glued = glue_pi_sheaf(&site, &datum).unwrap();
        let k = site.object_id("k").unwrap();
        assert_eq!(glued.len(k), fixed.len(), "{set:?} {action:?}");
        assert!(check_sheaf(&site, &glued).unwrap().is_sheaf);
        let expected = galois_sheaf(&site, &group, &set, &action).unwrap();
        if set.len() <= 2 {
            assert!(natural_isomorphism(&site, &expected, &glued)
                .unwrap()
                .is_some());
        }
    }
}

#[test]
fn galois_sheaf_is_a_sheaf() {
    for (group, set, action) in galois_cases() {
        let site = galois_site(&group);
        let f = galois_sheaf(&site, &group, &set, &action).unwrap();
        assert!(
            check_sheaf(&site, &f).unwrap().is_sheaf,
            "{set:?} {action:?}"
        );
    }
}

#[test]
fn galois_site_sizes() {
    let z2 = galois_site(&FiniteGroup::cyclic(2));
    assert_eq!(z2.object_count(), 4);
    assert_eq!(z2.arrow_count(), 33);
    let trivial = galois_site(&FiniteGroup::cyclic(1));
    assert_eq!(trivial.object_count(), 4);
}

#[test]
fn fixed_points_examples() {
    let z2 = FiniteGroup::cyclic(2);
    let swap = galois_fixed_points(
        &z2,
        &names(&["p", "q", "r"]),
        &[vec![0, 1, 2], vec![1, 0, 2]],
    )
    .unwrap();
    assert_eq!(swap, names(&["r"]));
    let trivial = galois_fixed_points(&z2, &names(&["p", "q"]), &[vec![0, 1], vec![0, 1]]).unwrap();
    assert_eq!(trivial, names(&["p", "q"]));
    assert!(galois_fixed_points(&z2, &names(&["p", "q"]), &[vec![1, 0], vec![1, 0]]).is_err());
}

#[test]
fn non_action_is_rejected() {
    let z2 = FiniteGroup::cyclic(2);
    let site = galois_site(&z2);
    let err = galois_datum(
        &site,
        &z2,
        &names(&["p", "q", "r"]),
        &[vec![0, 1, 2], vec![1, 2, 0]],
    )
    .unwrap_err();
    assert!(matches!(err, DescentError::NotAnAction(_)), "{err}");
}

#[test]
fn sheaf_json_round_trip() {
    for fx in fixture_suite() {
        for f in &fx.sheaves {
            let raw = f.to_raw(&fx.site);
            let back = SetSheaf::from_raw(&fx.site, &raw).unwrap();
            assert_eq!(back.to_raw(&fx.site), raw);
        }
    }
    let site = automorphism_site();
    let mut raw = RawSheaf {
        sets: BTreeMap::new(),
        maps: BTreeMap::new(),
    };
    raw.sets.insert("x".into(), names(&["p", "q"]));
    raw.maps.insert(
        "g".into(),
        [("p".into(), "p".into()), ("q".into(), "p".into())].into(),
    );
    assert!(matches!(
        SetSheaf::from_raw(&site, &raw),
        Err(DescentError::NotFunctorial(_))
    ));
}

#[test]
fn finer_covering_does_not_change_extension() {
    let opens: &[(&str, &[u32])] = &[
        ("c", &[2]),
        ("a", &[1, 2]),
        ("b", &[2, 3]),
        ("X", &[1, 2, 3]),
    ];
    let both = llskit::descent::fixtures::space_site(
        opens,
        &[("X", &["a", "b"]), ("X", &["a", "b", "c"])],
    );
    let finer = llskit::descent::fixtures::space_site(opens, &[("X", &["a", "b", "c"])]);
    let coarse = llskit::descent::fixtures::space_site(opens, &[("X", &["a", "b"])]);
    let sub_names = names(&["a", "b", "c"]);
    let fx = fixture_suite()
        .into_iter()
        .find(|f| f.name == "two intervals")
        .unwrap();
    let fx_sub = full_subsite(&fx.site, &sub_names).unwrap();
    let raw = restrict_sheaf(&fx.site, &fx_sub, &fx.sheaves[1])
        .unwrap()
        .to_raw(&fx_sub);
    let mut sizes = Vec::new();
    for site in [&both, &finer, &coarse] {
        let sub = full_subsite(site, &sub_names).unwrap();
        let g = SetSheaf::from_raw(&sub, &raw).unwrap();
        let ext = extend_sheaf(site, &sub, &g).unwrap();
        assert!(check_sheaf(site, &ext).unwrap().is_sheaf);
        sizes.push(ext.len(site.object_id("X").unwrap()));
    }
    assert_eq!(sizes, vec![8, 8, 8]);
}
