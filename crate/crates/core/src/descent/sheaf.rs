use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{DescentError, FiniteSite};

/// Wire format: element labels per object and, for every non-identity
/// arrow `f: a -> b`, a map from labels of `F(b)` to labels of `F(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSheaf {
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

/// A functorial finite-set-valued presheaf on a [`FiniteSite`], indexed the
/// same way as the site. Whether it is a sheaf is decided by
/// [`check_sheaf`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSheaf {
    sets: Vec<Vec<String>>,
    /// `maps[f][x]` is the restriction of `x ∈ F(dst f)` to `F(src f)`.
    maps: Vec<Vec<usize>>,
}

impl SetSheaf {
    /// Validates sizes, labels and functoriality.
    pub fn new(
        site: &FiniteSite,
        sets: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, DescentError> {
        if sets.len() != site.object_count() || maps.len() != site.arrow_count() {
            return Err(DescentError::SiteMismatch(format!(
                "{} sets and {} maps for {} objects and {} arrows",
                sets.len(),
                maps.len(),
                site.object_count(),
                site.arrow_count()
            )));
        }
        for (o, labels) in sets.iter().enumerate() {
            let mut seen = HashSet::new();
            for l in labels {
                if !seen.insert(l) {
                    return Err(DescentError::DuplicateElement {
                        object: site.object_name(o).to_string(),
                        element: l.clone(),
                    });
                }
            }
        }
        for (f, m) in maps.iter().enumerate() {
            let (a, b) = (site.src(f), site.dst(f));
            if m.len() != sets[b].len() || m.iter().any(|&x| x >= sets[a].len()) {
                return Err(DescentError::BadMap {
                    arrow: site.arrow_name(f).to_string(),
                    reason: format!(
                        "does not map {} elements into {}",
                        sets[b].len(),
                        sets[a].len()
                    ),
                });
            }
        }
        let sheaf = SetSheaf { sets, maps };
        sheaf.check_functorial(site)?;
        Ok(sheaf)
    }

    /// Builds the sheaf from `restrict(f, x)`, the image of `x ∈ F(dst f)`.
    pub fn from_fn(
        site: &FiniteSite,
        sets: Vec<Vec<String>>,
        mut restrict: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, DescentError> {
        let maps = (0..site.arrow_count())
            .map(|f| {
                let n = sets.get(site.dst(f)).map_or(0, Vec::len);
                (0..n).map(|x| restrict(f, x)).collect()
            })
            .collect();
        SetSheaf::new(site, sets, maps)
    }

    fn check_functorial(&self, site: &FiniteSite) -> Result<(), DescentError> {
        for o in 0..site.object_count() {
            let id = site.identity(o);
            if self.maps[id].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(DescentError::NotFunctorial(format!(
                    "identity `{}` does not act trivially",
                    site.arrow_name(id)
                )));
            }
        }
        for f in 0..site.arrow_count() {
            for g in site.arrows_from(site.dst(f)) {
                let gf = site.compose(g, f);
                for x in 0..self.sets[site.dst(g)].len() {
                    if self.maps[gf][x] != self.maps[f][self.maps[g][x]] {
                        return Err(DescentError::NotFunctorial(format!(
                            "restricting `{}` along `{}` then `{}` differs from `{}`",
                            self.sets[site.dst(g)][x],
                            site.arrow_name(g),
                            site.arrow_name(f),
                            site.arrow_name(gf)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_raw(site: &FiniteSite, raw: &RawSheaf) -> Result<Self, DescentError> {
        for name in raw.sets.keys() {
            if site.object_id(name).is_none() {
                return Err(DescentError::UnknownObject {
                    name: name.clone(),
                    context: "sheaf sets".to_string(),
                });
            }
        }
        for name in raw.maps.keys() {
            if site.arrow_id(name).is_none() {
                return Err(DescentError::UnknownArrow {
                    name: name.clone(),
                    context: "sheaf maps".to_string(),
                });
            }
        }
        let sets: Vec<Vec<String>> = site
            .objects()
            .iter()
            .map(|o| {
                raw.sets
                    .get(o)
                    .cloned()
                    .ok_or_else(|| DescentError::MissingSet(o.clone()))
            })
            .collect::<Result<_, _>>()?;
        let index: Vec<HashMap<&str, usize>> = sets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect())
            .collect();
        let mut maps = Vec::with_capacity(site.arrow_count());
        for f in 0..site.arrow_count() {
            let (a, b) = (site.src(f), site.dst(f));
            let name = site.arrow_name(f);
            let given = match raw.maps.get(name) {
                Some(m) => m,
                None if site.is_identity(f) => {
                    maps.push((0..sets[b].len()).collect());
                    continue;
                }
                None => {
                    return Err(DescentError::BadMap {
                        arrow: name.to_string(),
                        reason: "missing".to_string(),
                    })
                }
            };
            let bad = |reason: String| DescentError::BadMap {
                arrow: name.to_string(),
                reason,
            };
            if let Some(k) = given.keys().find(|k| !index[b].contains_key(k.as_str())) {
                return Err(bad(format!(
                    "`{k}` is not in the set over `{}`",
                    site.object_name(b)
                )));
            }
            let mut m = Vec::with_capacity(sets[b].len());
            for x in &sets[b] {
                let y = given
                    .get(x)
                    .ok_or_else(|| bad(format!("no image for `{x}`")))?;
                let j = index[a].get(y.as_str()).ok_or_else(|| {
                    bad(format!(
                        "`{y}` is not in the set over `{}`",
                        site.object_name(a)
                    ))
                })?;
                m.push(*j);
            }
            maps.push(m);
        }
        SetSheaf::new(site, sets, maps)
    }

    pub fn to_raw(&self, site: &FiniteSite) -> RawSheaf {
        let sets = (0..site.object_count())
            .map(|o| (site.object_name(o).to_string(), self.sets[o].clone()))
            .collect();
        let maps = (0..site.arrow_count())
            .filter(|&f| !site.is_identity(f))
            .map(|f| {
                let (a, b) = (site.src(f), site.dst(f));
                let m = self.maps[f]
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| (self.sets[b][x].clone(), self.sets[a][y].clone()))
                    .collect();
                (site.arrow_name(f).to_string(), m)
            })
            .collect();
        RawSheaf { sets, maps }
    }

    pub fn value(&self, o: usize) -> &[String] {
        &self.sets[o]
    }

    pub fn len(&self, o: usize) -> usize {
        self.sets[o].len()
    }

    pub fn map(&self, f: usize) -> &[usize] {
        &self.maps[f]
    }

    pub fn restrict(&self, f: usize, x: usize) -> usize {
        self.maps[f][x]
    }

    pub(crate) fn fits(&self, site: &FiniteSite) -> Result<(), DescentError> {
        if self.sets.len() != site.object_count() || self.maps.len() != site.arrow_count() {
            return Err(DescentError::SiteMismatch(format!(
                "sheaf has {} objects and {} arrows, site has {} and {}",
                self.sets.len(),
                self.maps.len(),
                site.object_count(),
                site.arrow_count()
            )));
        }
        Ok(())
    }
}

/// Access to sections and restrictions, so limits can be taken over
/// presheaves that are only partially materialized.
pub(crate) trait Sections {
    fn card(&self, o: usize) -> usize;
    fn res(&self, f: usize, x: usize) -> usize;
}

impl Sections for SetSheaf {
    fn card(&self, o: usize) -> usize {
        self.len(o)
    }

    fn res(&self, f: usize, x: usize) -> usize {
        self.restrict(f, x)
    }
}

/// Tuples `(x_i ∈ F(src f_i))` agreeing on every pairwise fiber product,
/// in lexicographic order.
pub(crate) fn matching_families(
    site: &FiniteSite,
    f: &impl Sections,
    members: &[usize],
) -> Result<Vec<Vec<usize>>, DescentError> {
    let n = members.len();
    let mut fps = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let fp = site.fiber_product(members[j], members[i]).ok_or_else(|| {
                DescentError::MissingFiberProduct {
                    left: site.arrow_name(members[j]).to_string(),
                    right: site.arrow_name(members[i]).to_string(),
                }
            })?;
            fps[i][j] = Some(fp);
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    extend_family(site, f, members, &fps, &mut current, &mut out);
    Ok(out)
}

fn extend_family(
    site: &FiniteSite,
    f: &impl Sections,
    members: &[usize],
    fps: &[Vec<Option<super::FiberProduct>>],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = current.len();
    if i == members.len() {
        out.push(current.clone());
        return;
    }
    for x in 0..f.card(site.src(members[i])) {
        current.push(x);
        let ok = (0..=i).all(|j| {
            let fp = fps[i][j].expect("computed above");
            f.res(fp.proj_left, current[j]) == f.res(fp.proj_right, current[i])
        });
        if ok {
            extend_family(site, f, members, fps, current, out);
        }
        current.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafReport {
    pub is_sheaf: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<SheafFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafFailure {
    /// Index into the declared coverings.
    pub covering: usize,
    pub target: String,
    pub members: Vec<String>,
    #[serde(flatten)]
    pub kind: FailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureKind {
    /// Two sections with the same restrictions to every member.
    NotSeparated {
        sections: [String; 2],
        restrictions: Vec<String>,
    },
    /// A matching family that no section restricts to.
    NoGluing { family: Vec<String> },
}

/// Checks the equalizer condition on every declared covering. Identity
/// coverings hold trivially.
pub fn check_sheaf(site: &FiniteSite, f: &SetSheaf) -> Result<SheafReport, DescentError> {
    f.fits(site)?;
    for (index, (t, by)) in site.coverings().iter().enumerate() {
        let families = matching_families(site, f, by)?;
        let fail = |kind| {
            Ok(SheafReport {
                is_sheaf: false,
                failure: Some(SheafFailure {
                    covering: index,
                    target: site.object_name(*t).to_string(),
                    members: by.iter().map(|&m| site.arrow_name(m).to_string()).collect(),
                    kind,
                }),
            })
        };
        let labels = |tuple: &[usize]| -> Vec<String> {
            tuple
                .iter()
                .zip(by)
                .map(|(&x, &m)| f.value(site.src(m))[x].clone())
                .collect()
        };
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for x in 0..f.len(*t) {
            let tuple: Vec<usize> = by.iter().map(|&m| f.restrict(m, x)).collect();
            if let Some(&y) = seen.get(&tuple) {
                return fail(FailureKind::NotSeparated {
                    sections: [f.value(*t)[y].clone(), f.value(*t)[x].clone()],
                    restrictions: labels(&tuple),
                });
            }
            seen.insert(tuple, x);
        }
        if let Some(missing) = families.iter().find(|fam| !seen.contains_key(*fam)) {
            return fail(FailureKind::NoGluing {
                family: labels(missing),
            });
        }
    }
    Ok(SheafReport {
        is_sheaf: true,
        failure: None,
    })
}
