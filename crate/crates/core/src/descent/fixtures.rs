//! Small sites with sheaves on them, used by the tests and the CLI examples.

use std::collections::BTreeMap;

use super::site::{Arrow, Composite, Covering, FiberProductDecl, RawSite};
use super::{galois_sheaf, galois_site, FiniteGroup, FiniteSite, RawPiDatum, RawSheaf, SetSheaf};

/// A site with sheaves, a subcategory satisfying the equivalence
/// hypotheses, and a factorable set of objects for gluing.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub site: FiniteSite,
    pub sub: Vec<String>,
    pub pi: Vec<String>,
    pub sheaves: Vec<SetSheaf>,
}

/// Opens of a finite space, given by their points; arrows are inclusions
/// named `U<V`. Each covering lists its members; fiber products are the
/// pairwise intersections, which must be among the opens.
pub fn space_site(opens: &[(&str, &[u32])], covers: &[(&str, &[&str])]) -> FiniteSite {
    let subset = |a: &[u32], b: &[u32]| a.iter().all(|x| b.contains(x));
    let incl = |u: &str, v: &str| {
        if u == v {
            format!("id_{u}")
        } else {
            format!("{u}<{v}")
        }
    };
    let points = |name: &str| {
        opens
            .iter()
            .find(|(n, _)| *n == name)
            .expect("declared open")
            .1
    };
    let mut arrows = Vec::new();
    for (u, pu) in opens {
        for (v, pv) in opens {
            if u != v && subset(pu, pv) {
                arrows.push(Arrow {
                    id: incl(u, v),
                    src: u.to_string(),
                    dst: v.to_string(),
                });
            }
        }
    }
    let mut compose = Vec::new();
    for (u, pu) in opens {
        for (v, pv) in opens {
            for (w, pw) in opens {
                if u != v && v != w && subset(pu, pv) && subset(pv, pw) {
                    compose.push(Composite {
                        first: incl(u, v),
                        then: incl(v, w),
                        result: incl(u, w),
                    });
                }
            }
        }
    }
    let mut coverings = Vec::new();
    let mut fiber_products = Vec::new();
    for (target, members) in covers {
        coverings.push(Covering {
            target: target.to_string(),
            by: members.iter().map(|m| incl(m, target)).collect(),
        });
        for (i, a) in members.iter().enumerate() {
            for b in &members[i..] {
                let meet: Vec<u32> = points(a)
                    .iter()
                    .copied()
                    .filter(|x| points(b).contains(x))
                    .collect();
                let apex = opens
                    .iter()
                    .find(|(_, p)| subset(p, &meet) && subset(&meet, p))
                    .expect("intersection is open")
                    .0;
                let decl = FiberProductDecl {
                    left: incl(a, target),
                    right: incl(b, target),
                    apex: apex.to_string(),
                    proj_left: incl(apex, a),
                    proj_right: incl(apex, b),
                };
                if !fiber_products.contains(&decl) {
                    fiber_products.push(decl);
                }
            }
        }
    }
    let raw = RawSite {
        objects: opens.iter().map(|(n, _)| n.to_string()).collect(),
        arrows,
        identities: BTreeMap::new(),
        compose,
        coverings,
        fiber_products,
    };
    FiniteSite::new(raw).expect("space site is well formed")
}

/// Functions from the points of each open to `values`.
fn functions_sheaf(site: &FiniteSite, opens: &[(&str, &[u32])], values: &[&str]) -> SetSheaf {
    let assignments = |pts: &[u32]| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in pts {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..values.len()).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    };
    let label = |pts: &[u32], a: &[usize]| -> String {
        if pts.is_empty() {
            return "{}".to_string();
        }
        pts.iter()
            .zip(a)
            .map(|(p, &v)| format!("{p}={}", values[v]))
            .collect::<Vec<_>>()
            .join(",")
    };
    let pts_of = |o: usize| {
        opens
            .iter()
            .find(|(n, _)| *n == site.object_name(o))
            .expect("open")
            .1
    };
    let tables: Vec<Vec<Vec<usize>>> = (0..site.object_count())
        .map(|o| assignments(pts_of(o)))
        .collect();
    let sets = (0..site.object_count())
        .map(|o| tables[o].iter().map(|a| label(pts_of(o), a)).collect())
        .collect();
    SetSheaf::from_fn(site, sets, |f, x| {
        let (a, b) = (site.src(f), site.dst(f));
        let full = &tables[b][x];
        let restricted: Vec<usize> = pts_of(a)
            .iter()
            .map(|p| full[pts_of(b).iter().position(|q| q == p).expect("subset")])
            .collect();
        tables[a]
            .iter()
            .position(|t| *t == restricted)
            .expect("assignment exists")
    })
    .expect("functions form a presheaf")
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn space_fixture(
    name: &'static str,
    opens: &[(&str, &[u32])],
    covers: &[(&str, &[&str])],
    sub: &[&str],
    pi: &[&str],
) -> Fixture {
    let site = space_site(opens, covers);
    let sheaves = [&["0"][..], &["0", "1"][..]]
        .iter()
        .map(|values| functions_sheaf(&site, opens, values))
        .collect();
    Fixture {
        name,
        site,
        sub: names(sub),
        pi: names(pi),
        sheaves,
    }
}

/// `F(∅) = {*}` and `F = values` with identity restrictions elsewhere.
fn constant_on_nonempty(site: &FiniteSite, empty: &str, values: &[&str]) -> SetSheaf {
    let e = site.object_id(empty);
    let sets = (0..site.object_count())
        .map(|o| {
            if Some(o) == e {
                vec!["*".to_string()]
            } else {
                names(values)
            }
        })
        .collect();
    SetSheaf::from_fn(
        site,
        sets,
        |f, x| if Some(site.src(f)) == e { 0 } else { x },
    )
    .expect("presheaf")
}

/// One object with automorphism group Z/2 (`g ∘ g = id`) and only identity
/// coverings.
pub fn automorphism_site() -> FiniteSite {
    FiniteSite::new(RawSite {
        objects: names(&["x"]),
        arrows: vec![Arrow {
            id: "g".into(),
            src: "x".into(),
            dst: "x".into(),
        }],
        identities: BTreeMap::new(),
        compose: vec![Composite {
            first: "g".into(),
            then: "g".into(),
            result: "id_x".into(),
        }],
        coverings: Vec::new(),
        fiber_products: Vec::new(),
    })
    .expect("well formed")
}

/// Right Z/2-set on `labels` with `g` acting by `swap`.
fn z2_set(site: &FiniteSite, labels: &[&str], swap: &[usize]) -> SetSheaf {
    let g = site.arrow_id("g").expect("g");
    SetSheaf::from_fn(
        site,
        vec![names(labels)],
        |f, x| if f == g { swap[x] } else { x },
    )
    .expect("action")
}

/// `G`-sets for the Galois fixtures, as `(labels, action)`. Their sheaves
/// have at most 8 sections over each object.
pub fn z2_sets() -> Vec<(Vec<String>, Vec<Vec<usize>>)> {
    vec![
        (Vec::new(), vec![vec![], vec![]]),
        (names(&["p"]), vec![vec![0], vec![0]]),
        (names(&["p", "q"]), vec![vec![0, 1], vec![1, 0]]),
        (names(&["p", "q"]), vec![vec![0, 1], vec![0, 1]]),
    ]
}

/// Larger `G`-sets for cardinality checks only.
pub fn galois_cases() -> Vec<(FiniteGroup, Vec<String>, Vec<Vec<usize>>)> {
    let z2 = FiniteGroup::cyclic(2);
    let mut out: Vec<_> = z2_sets()
        .into_iter()
        .map(|(x, a)| (z2.clone(), x, a))
        .collect();
    out.push((
        z2.clone(),
        names(&["p", "q", "r"]),
        vec![vec![0, 1, 2], vec![1, 0, 2]],
    ));
    out.push((
        z2.clone(),
        names(&["p", "q", "r", "s"]),
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
    ));
    out.push((
        z2.clone(),
        names(&["p", "q", "r", "s"]),
        vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2]],
    ));
    out.push((FiniteGroup::cyclic(1), names(&["p", "q"]), vec![vec![0, 1]]));
    out.push((FiniteGroup::cyclic(1), Vec::new(), vec![vec![]]));
    out
}

fn galois_fixture(
    name: &'static str,
    g: FiniteGroup,
    sets: Vec<(Vec<String>, Vec<Vec<usize>>)>,
) -> Fixture {
    let site = galois_site(&g);
    let sheaves = sets
        .iter()
        .map(|(x, a)| galois_sheaf(&site, &g, x, a).expect("valid G-set"))
        .collect();
    Fixture {
        name,
        site,
        sub: names(&["E", "k'", "D"]),
        pi: names(&["k'"]),
        sheaves,
    }
}

/// The fixture suite: eleven sites with at most four objects and three
/// coverings each.
pub fn fixture_suite() -> Vec<Fixture> {
    let mut out = vec![
        space_fixture("point", &[("pt", &[1])], &[], &["pt"], &["pt"]),
        space_fixture(
            "empty in point",
            &[("0", &[]), ("X", &[1])],
            &[("0", &[])],
            &["0", "X"],
            &["X"],
        ),
        space_fixture(
            "discrete two points",
            &[("0", &[]), ("a", &[1]), ("b", &[2]), ("X", &[1, 2])],
            &[("0", &[]), ("X", &["a", "b"])],
            &["0", "a", "b"],
            &["a", "b"],
        ),
        space_fixture(
            "point and pair",
            &[("0", &[]), ("A", &[1]), ("B", &[2, 3]), ("X", &[1, 2, 3])],
            &[("0", &[]), ("X", &["A", "B"])],
            &["0", "A", "B"],
            &["A", "B"],
        ),
        space_fixture(
            "two intervals",
            &[
                ("c", &[2]),
                ("a", &[1, 2]),
                ("b", &[2, 3]),
                ("X", &[1, 2, 3]),
            ],
            &[("X", &["a", "b"]), ("X", &["a", "b", "c"])],
            &["a", "b", "c"],
            &["a", "b", "c"],
        ),
        space_fixture(
            "sierpinski",
            &[("0", &[]), ("p", &[1]), ("X", &[1, 2])],
            &[("0", &[]), ("X", &["p", "X"])],
            &["0", "p", "X"],
            &["X"],
        ),
    ];

    let mono = space_site(&[("u", &[1]), ("t", &[1, 2])], &[("t", &["u"])]);
    let mono_sheaves = vec![
        constant_on_nonempty(&mono, "", &["x"]),
        constant_on_nonempty(&mono, "", &["x", "y"]),
    ];
    out.push(Fixture {
        name: "single covering arrow",
        site: mono,
        sub: names(&["u"]),
        pi: names(&["u"]),
        sheaves: mono_sheaves,
    });

    let chain = space_site(
        &[("0", &[]), ("U", &[1]), ("V", &[1, 2]), ("X", &[1, 2, 3])],
        &[("0", &[]), ("V", &["U"]), ("X", &["U"])],
    );
    let chain_sheaves = vec![
        constant_on_nonempty(&chain, "0", &["x"]),
        constant_on_nonempty(&chain, "0", &["x", "y"]),
        constant_on_nonempty(&chain, "0", &["x", "y", "z"]),
    ];
    out.push(Fixture {
        name: "chain",
        site: chain,
        sub: names(&["0", "U"]),
        pi: names(&["U"]),
        sheaves: chain_sheaves,
    });

    let aut = automorphism_site();
    let aut_sheaves = vec![
        z2_set(&aut, &["id_x", "g"], &[1, 0]),
        z2_set(&aut, &["p", "q"], &[0, 1]),
        z2_set(&aut, &["p"], &[0]),
        z2_set(&aut, &["p", "q", "r"], &[1, 0, 2]),
    ];
    out.push(Fixture {
        name: "automorphisms, trivial topology",
        site: aut,
        sub: names(&["x"]),
        pi: names(&["x"]),
        sheaves: aut_sheaves,
    });

    out.push(galois_fixture(
        "Galois Z/2",
        FiniteGroup::cyclic(2),
        z2_sets(),
    ));
    out.push(galois_fixture(
        "Galois, trivial group",
        FiniteGroup::cyclic(1),
        vec![
            (names(&["p", "q"]), vec![vec![0, 1]]),
            (names(&["p"]), vec![vec![0]]),
        ],
    ));
    out
}

/// Constant functions only over the whole two-point space: the two points
/// can carry different values but nothing glues them.
pub fn missing_gluing() -> (FiniteSite, SetSheaf) {
    let opens: &[(&str, &[u32])] = &[("0", &[]), ("a", &[1]), ("b", &[2]), ("X", &[1, 2])];
    let site = space_site(opens, &[("0", &[]), ("X", &["a", "b"])]);
    let full = functions_sheaf(&site, opens, &["0", "1"]);
    let x = site.object_id("X").expect("X");
    let keep: Vec<usize> = (0..full.len(x))
        .filter(|&i| matches!(full.value(x)[i].as_str(), "1=0,2=0" | "1=1,2=1"))
        .collect();
    let sets = (0..site.object_count())
        .map(|o| {
            if o == x {
                keep.iter().map(|&i| full.value(x)[i].clone()).collect()
            } else {
                full.value(o).to_vec()
            }
        })
        .collect();
    let sheaf = SetSheaf::from_fn(&site, sets, |f, i| {
        let i = if site.dst(f) == x { keep[i] } else { i };
        let j = full.restrict(f, i);
        if site.src(f) == x {
            keep.iter()
                .position(|&k| k == j)
                .expect("constant stays constant")
        } else {
            j
        }
    })
    .expect("presheaf");
    (site, sheaf)
}

/// A three-element set on the automorphism site with `g` acting by a
/// 3-cycle in the comparison maps, so `β_g ∘ β_g ≠ β_{g∘g}`.
pub fn broken_cocycle() -> (FiniteSite, RawPiDatum) {
    let site = automorphism_site();
    let labels = names(&["p", "q", "r"]);
    let mut sets = BTreeMap::new();
    let mut maps = BTreeMap::new();
    for a in ["id_x", "g"] {
        sets.insert(a.to_string(), labels.clone());
        for c in ["id_x", "g"] {
            if c == "id_x" {
                continue;
            }
            maps.insert(
                format!("{c}/{a}"),
                labels.iter().map(|l| (l.clone(), l.clone())).collect(),
            );
        }
    }
    let cycle: BTreeMap<String, String> = [("p", "q"), ("q", "r"), ("r", "p")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let mut per = BTreeMap::new();
    per.insert("id_x".to_string(), cycle.clone());
    per.insert("g".to_string(), cycle);
    let mut beta = BTreeMap::new();
    beta.insert("g".to_string(), per);
    let mut local = BTreeMap::new();
    local.insert("x".to_string(), RawSheaf { sets, maps });
    (
        site,
        RawPiDatum {
            pi: names(&["x"]),
            local,
            beta,
        },
    )
}

/// Two objects with only identity arrows and identity coverings.
pub fn isolated_pair() -> FiniteSite {
    FiniteSite::new(RawSite {
        objects: names(&["x", "y"]),
        arrows: Vec::new(),
        identities: BTreeMap::new(),
        compose: Vec::new(),
        coverings: Vec::new(),
        fiber_products: Vec::new(),
    })
    .expect("well formed")
}
