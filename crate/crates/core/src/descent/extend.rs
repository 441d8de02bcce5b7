use std::collections::HashMap;

use serde::Serialize;

use super::sheaf::{matching_families, Sections};
use super::site::{Arrow, Composite, Covering, FiberProductDecl, RawSite};
use super::{DescentError, FiniteSite, SetSheaf};

fn object_ids(s: &FiniteSite, names: &[String], context: &str) -> Result<Vec<usize>, DescentError> {
    names
        .iter()
        .map(|n| {
            s.object_id(n).ok_or_else(|| DescentError::UnknownObject {
                name: n.clone(),
                context: context.to_string(),
            })
        })
        .collect()
}

/// An isomorphism from `x` onto some object of `sub`, as `(target, iso)`.
fn iso_into(s: &FiniteSite, x: usize, sub: &[bool]) -> Option<(usize, usize)> {
    (0..s.object_count()).filter(|&y| sub[y]).find_map(|y| {
        s.hom(x, y)
            .iter()
            .copied()
            .find(|&u| s.inverse(u).is_some())
            .map(|u| (y, u))
    })
}

/// The two conditions under which restriction to the full subcategory on
/// `objects` is an equivalence: every object has a covering by objects of
/// the subcategory, and an object maps into the subcategory exactly when it
/// is isomorphic to one of its objects.
pub fn check_subsite_hypotheses(s: &FiniteSite, objects: &[String]) -> Result<(), DescentError> {
    let ids = object_ids(s, objects, "subcategory")?;
    let mut sub = vec![false; s.object_count()];
    for &o in &ids {
        sub[o] = true;
    }
    for t in 0..s.object_count() {
        let covered = sub[t]
            || s.coverings_of(t)
                .any(|by| by.iter().all(|&f| sub[s.src(f)]));
        if !covered {
            return Err(DescentError::Hypothesis {
                clause: 1,
                object: s.object_name(t).to_string(),
                detail: "no covering by objects of the subcategory".to_string(),
            });
        }
        let maps_in = (0..s.object_count()).any(|y| sub[y] && !s.hom(t, y).is_empty());
        let iso = iso_into(s, t, &sub).is_some();
        if maps_in != iso {
            return Err(DescentError::Hypothesis {
                clause: 2,
                object: s.object_name(t).to_string(),
                detail: "maps into the subcategory but is not isomorphic to any of its objects"
                    .to_string(),
            });
        }
    }
    Ok(())
}

/// The full subcategory on `objects` with the induced topology: the
/// declared coverings lying inside it, and fiber products moved onto
/// isomorphic objects of the subcategory when their apex lies outside.
pub fn full_subsite(s: &FiniteSite, objects: &[String]) -> Result<FiniteSite, DescentError> {
    check_subsite_hypotheses(s, objects)?;
    let mut sub = vec![false; s.object_count()];
    for o in object_ids(s, objects, "subcategory")? {
        sub[o] = true;
    }
    let inside = |f: usize| sub[s.src(f)] && sub[s.dst(f)];
    let name = |f: usize| s.arrow_name(f).to_string();
    let kept: Vec<usize> = (0..s.arrow_count()).filter(|&f| inside(f)).collect();
    let arrows = kept
        .iter()
        .map(|&f| Arrow {
            id: name(f),
            src: s.object_name(s.src(f)).to_string(),
            dst: s.object_name(s.dst(f)).to_string(),
        })
        .collect();
    let identities = (0..s.object_count())
        .filter(|&o| sub[o])
        .map(|o| (s.object_name(o).to_string(), name(s.identity(o))))
        .collect();
    let mut compose = Vec::new();
    for &f in &kept {
        for &g in &kept {
            if s.dst(f) == s.src(g) && !s.is_identity(f) && !s.is_identity(g) {
                compose.push(Composite {
                    first: name(f),
                    then: name(g),
                    result: name(s.compose(g, f)),
                });
            }
        }
    }
    let coverings = s
        .coverings()
        .iter()
        .filter(|(t, by)| sub[*t] && by.iter().all(|&f| sub[s.src(f)]))
        .map(|(t, by)| Covering {
            target: s.object_name(*t).to_string(),
            by: by.iter().map(|&f| name(f)).collect(),
        })
        .collect();
    let mut fiber_products = Vec::new();
    for (left, right, fp) in s.declared_fiber_products() {
        if !(inside(left) && inside(right)) {
            continue;
        }
        let (apex, pl, pr) = if sub[fp.apex] {
            (fp.apex, fp.proj_left, fp.proj_right)
        } else if let Some((y, u)) = iso_into(s, fp.apex, &sub) {
            let back = s.inverse(u).expect("iso");
            (
                y,
                s.compose(fp.proj_left, back),
                s.compose(fp.proj_right, back),
            )
        } else {
            continue;
        };
        fiber_products.push(FiberProductDecl {
            left: name(left),
            right: name(right),
            apex: s.object_name(apex).to_string(),
            proj_left: name(pl),
            proj_right: name(pr),
        });
    }
    FiniteSite::new(RawSite {
        objects: (0..s.object_count())
            .filter(|&o| sub[o])
            .map(|o| s.object_name(o).to_string())
            .collect(),
        arrows,
        identities,
        compose,
        coverings,
        fiber_products,
    })
}

/// Index translation between a site and a full subsite, matched by name.
struct Embedding {
    /// subsite object -> site object
    obj: Vec<usize>,
    /// site object -> subsite object
    obj_back: Vec<Option<usize>>,
    /// site arrow -> subsite arrow
    arrow_back: Vec<Option<usize>>,
}

impl Embedding {
    fn new(s: &FiniteSite, sub: &FiniteSite) -> Result<Self, DescentError> {
        let obj = (0..sub.object_count())
            .map(|o| {
                s.object_id(sub.object_name(o)).ok_or_else(|| {
                    DescentError::NotFullSubcategory(format!(
                        "`{}` is not an object",
                        sub.object_name(o)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut obj_back = vec![None; s.object_count()];
        for (i, &o) in obj.iter().enumerate() {
            obj_back[o] = Some(i);
        }
        let mut arrow_back = vec![None; s.arrow_count()];
        for f in 0..s.arrow_count() {
            let (Some(a), Some(b)) = (obj_back[s.src(f)], obj_back[s.dst(f)]) else {
                continue;
            };
            let g = sub.arrow_id(s.arrow_name(f)).ok_or_else(|| {
                DescentError::NotFullSubcategory(format!("arrow `{}` is missing", s.arrow_name(f)))
            })?;
            if sub.src(g) != a || sub.dst(g) != b {
                return Err(DescentError::NotFullSubcategory(format!(
                    "arrow `{}` has different ends",
                    s.arrow_name(f)
                )));
            }
            arrow_back[f] = Some(g);
        }
        if arrow_back.iter().flatten().count() != sub.arrow_count() {
            return Err(DescentError::NotFullSubcategory("extra arrows".to_string()));
        }
        for f in 0..s.arrow_count() {
            for g in 0..s.arrow_count() {
                if let (Some(f2), Some(g2)) = (arrow_back[f], arrow_back[g]) {
                    if s.dst(f) == s.src(g)
                        && arrow_back[s.compose(g, f)] != Some(sub.compose(g2, f2))
                    {
                        return Err(DescentError::NotFullSubcategory(format!(
                            "composite of `{}` then `{}` differs",
                            s.arrow_name(f),
                            s.arrow_name(g)
                        )));
                    }
                }
            }
        }
        Ok(Embedding {
            obj,
            obj_back,
            arrow_back,
        })
    }

    fn object_names(&self, s: &FiniteSite) -> Vec<String> {
        self.obj
            .iter()
            .map(|&o| s.object_name(o).to_string())
            .collect()
    }
}

/// Restriction of `f` to the full subsite `sub`.
pub fn restrict_sheaf(
    s: &FiniteSite,
    sub: &FiniteSite,
    f: &SetSheaf,
) -> Result<SetSheaf, DescentError> {
    f.fits(s)?;
    let emb = Embedding::new(s, sub)?;
    check_subsite_hypotheses(s, &emb.object_names(s))?;
    let sets = emb.obj.iter().map(|&o| f.value(o).to_vec()).collect();
    let mut maps = vec![Vec::new(); sub.arrow_count()];
    for (g, m) in emb.arrow_back.iter().enumerate() {
        if let Some(m) = m {
            maps[*m] = f.map(g).to_vec();
        }
    }
    SetSheaf::new(sub, sets, maps)
}

/// A sheaf on the subsite read on objects of the ambient site that are
/// isomorphic to subsite objects.
struct Transported<'a> {
    s: &'a FiniteSite,
    emb: &'a Embedding,
    g: &'a SetSheaf,
    /// object -> (subsite object, iso into it, inverse)
    rep: Vec<Option<(usize, usize, usize)>>,
}

impl<'a> Transported<'a> {
    fn new(s: &'a FiniteSite, emb: &'a Embedding, g: &'a SetSheaf) -> Self {
        let sub: Vec<bool> = emb.obj_back.iter().map(Option::is_some).collect();
        let rep = (0..s.object_count())
            .map(|x| {
                if let Some(i) = emb.obj_back[x] {
                    let id = s.identity(x);
                    Some((i, id, id))
                } else {
                    iso_into(s, x, &sub).map(|(y, u)| {
                        (
                            emb.obj_back[y].expect("in sub"),
                            u,
                            s.inverse(u).expect("iso"),
                        )
                    })
                }
            })
            .collect();
        Transported { s, emb, g, rep }
    }

    fn essential(&self, x: usize) -> bool {
        self.rep[x].is_some()
    }
}

impl Sections for Transported<'_> {
    fn card(&self, x: usize) -> usize {
        self.g.len(self.rep[x].expect("essential object").0)
    }

    fn res(&self, f: usize, e: usize) -> usize {
        let (_, _, back) = self.rep[self.s.src(f)].expect("essential source");
        let (_, to, _) = self.rep[self.s.dst(f)].expect("essential target");
        let h = self.s.compose(to, self.s.compose(f, back));
        self.g
            .restrict(self.emb.arrow_back[h].expect("arrow inside the subsite"), e)
    }
}

/// A covering of `t` by subsite objects, and its matching families.
struct Chart {
    members: Vec<usize>,
    families: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Node id of the first family.
    offset: usize,
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// For each member of `finer` (mapping to `t'`), a member `i` of `coarser`
/// (mapping to `t`) and `φ` with `coarser_i ∘ φ = u ∘ finer_j`.
fn factor_through(
    s: &FiniteSite,
    u: usize,
    finer: &[usize],
    coarser: &[usize],
) -> Option<Vec<(usize, usize)>> {
    finer
        .iter()
        .map(|&fj| {
            let target = s.compose(u, fj);
            coarser.iter().enumerate().find_map(|(i, &ci)| {
                s.hom(s.src(fj), s.src(ci))
                    .iter()
                    .copied()
                    .find(|&phi| s.compose(ci, phi) == target)
                    .map(|phi| (i, phi))
            })
        })
        .collect()
}

/// Extends a sheaf on a subsite to the whole site: at `t`, the colimit over
/// coverings of `t` by subsite objects of the set of matching families.
/// Restriction along `u: t' -> t` moves a family on a covering of `t` to one
/// on a covering of `t'` whose members factor through it, and is checked to
/// be independent of every choice.
pub fn extend_sheaf(
    s: &FiniteSite,
    sub: &FiniteSite,
    g: &SetSheaf,
) -> Result<SetSheaf, DescentError> {
    g.fits(sub)?;
    let emb = Embedding::new(s, sub)?;
    check_subsite_hypotheses(s, &emb.object_names(s))?;
    let tg = Transported::new(s, &emb, g);

    let mut charts: Vec<Vec<Chart>> = Vec::with_capacity(s.object_count());
    let mut nodes = 0;
    for t in 0..s.object_count() {
        let mut covers: Vec<Vec<usize>> = Vec::new();
        if emb.obj_back[t].is_some() {
            covers.push(vec![s.identity(t)]);
        }
        for by in s.coverings_of(t) {
            if by.iter().all(|&f| emb.obj_back[s.src(f)].is_some()) {
                covers.push(by.to_vec());
            }
        }
        let mut list = Vec::with_capacity(covers.len());
        for members in covers {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i..] {
                    if !s
                        .fiber_product(a, b)
                        .is_some_and(|fp| tg.essential(fp.apex))
                    {
                        return Err(DescentError::MissingFiberProduct {
                            left: s.arrow_name(a).to_string(),
                            right: s.arrow_name(b).to_string(),
                        });
                    }
                }
            }
            let families = matching_families(s, &tg, &members)?;
            let index = families
                .iter()
                .enumerate()
                .map(|(i, f)| (f.clone(), i))
                .collect();
            let offset = nodes;
            nodes += families.len();
            list.push(Chart {
                members,
                families,
                index,
                offset,
            });
        }
        charts.push(list);
    }

    let mut uf = UnionFind::new(nodes);
    for (t, list) in charts.iter().enumerate() {
        let id = s.identity(t);
        for fine in list {
            for coarse in list {
                let Some(phis) = factor_through(s, id, &fine.members, &coarse.members) else {
                    continue;
                };
                for (k, fam) in coarse.families.iter().enumerate() {
                    let image: Vec<usize> =
                        phis.iter().map(|&(i, phi)| tg.res(phi, fam[i])).collect();
                    let j = fine.index.get(&image).ok_or_else(|| {
                        DescentError::NotWellDefined(format!(
                            "refinement at `{}`",
                            s.object_name(t)
                        ))
                    })?;
                    uf.union(coarse.offset + k, fine.offset + j);
                }
            }
        }
    }

    // classes per object, in order of first appearance
    let mut class_of: Vec<HashMap<usize, usize>> = Vec::with_capacity(s.object_count());
    let mut sets: Vec<Vec<String>> = Vec::with_capacity(s.object_count());
    for (t, list) in charts.iter().enumerate() {
        let mut classes = HashMap::new();
        let mut labels = Vec::new();
        for (ci, chart) in list.iter().enumerate() {
            for (k, fam) in chart.families.iter().enumerate() {
                let root = uf.find(chart.offset + k);
                if classes.contains_key(&root) {
                    continue;
                }
                classes.insert(root, labels.len());
                let is_identity_chart = chart.members.len() == 1 && s.is_identity(chart.members[0]);
                let label = if is_identity_chart {
                    g.value(emb.obj_back[t].expect("in sub"))[fam[0]].clone()
                } else {
                    let parts: Vec<String> = fam
                        .iter()
                        .zip(&chart.members)
                        .map(|(&x, &m)| {
                            let (o, _, _) = tg.rep[s.src(m)].expect("essential");
                            g.value(o)[x].clone()
                        })
                        .collect();
                    format!("c{ci}({})", parts.join(","))
                };
                labels.push(label);
            }
        }
        class_of.push(classes);
        sets.push(labels);
    }

    let mut maps = Vec::with_capacity(s.arrow_count());
    for u in 0..s.arrow_count() {
        let (t2, t) = (s.src(u), s.dst(u));
        let mut m: Vec<Option<usize>> = vec![None; sets[t].len()];
        for chart in &charts[t] {
            for fine in &charts[t2] {
                let Some(phis) = factor_through(s, u, &fine.members, &chart.members) else {
                    continue;
                };
                for (k, fam) in chart.families.iter().enumerate() {
                    let image: Vec<usize> =
                        phis.iter().map(|&(i, phi)| tg.res(phi, fam[i])).collect();
                    let j = fine
                        .index
                        .get(&image)
                        .ok_or_else(|| DescentError::NotWellDefined(s.arrow_name(u).to_string()))?;
                    let src_class = class_of[t][&uf.find(chart.offset + k)];
                    let dst_class = class_of[t2][&uf.find(fine.offset + j)];
                    match m[src_class] {
                        Some(prev) if prev != dst_class => {
                            return Err(DescentError::NotWellDefined(s.arrow_name(u).to_string()))
                        }
                        _ => m[src_class] = Some(dst_class),
                    }
                }
            }
        }
        let m = m
            .into_iter()
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| DescentError::NoFactoringCovering {
                arrow: s.arrow_name(u).to_string(),
                domain: s.object_name(t2).to_string(),
                target: s.object_name(t).to_string(),
            })?;
        maps.push(m);
    }
    SetSheaf::new(s, sets, maps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorableReport {
    pub factorable: bool,
    /// First object with no covering whose members all map into the set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn maps_into(s: &FiniteSite, pi: &[usize]) -> Vec<bool> {
    (0..s.object_count())
        .map(|x| pi.iter().any(|&p| !s.hom(x, p).is_empty()))
        .collect()
}

/// Whether every object has a covering (possibly its identity covering)
/// whose members all map to some object of `pi`.
pub fn check_factorable(s: &FiniteSite, pi: &[String]) -> Result<FactorableReport, DescentError> {
    let ids = object_ids(s, pi, "factorable set")?;
    let into = maps_into(s, &ids);
    for t in 0..s.object_count() {
        let ok = into[t]
            || s.coverings_of(t)
                .any(|by| by.iter().all(|&f| into[s.src(f)]));
        if !ok {
            return Ok(FactorableReport {
                factorable: false,
                witness: Some(s.object_name(t).to_string()),
            });
        }
    }
    Ok(FactorableReport {
        factorable: true,
        witness: None,
    })
}

/// Objects admitting an arrow to some object of `pi`.
pub fn factorable_subcategory(s: &FiniteSite, pi: &[String]) -> Result<Vec<String>, DescentError> {
    let ids = object_ids(s, pi, "factorable set")?;
    let into = maps_into(s, &ids);
    Ok((0..s.object_count())
        .filter(|&x| into[x])
        .map(|x| s.object_name(x).to_string())
        .collect())
}
