use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::DescentError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// `then ∘ first = result`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Composite {
    pub first: String,
    pub then: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Covering {
    pub target: String,
    pub by: Vec<String>,
}

/// `apex` with projections to the sources of `left` and `right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberProductDecl {
    pub left: String,
    pub right: String,
    pub apex: String,
    pub proj_left: String,
    pub proj_right: String,
}

/// Wire format. Identities missing from `identities` are generated as
/// `id_<object>`; composites with identities are filled in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSite {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<Composite>,
    #[serde(default)]
    pub coverings: Vec<Covering>,
    #[serde(default)]
    pub fiber_products: Vec<FiberProductDecl>,
}

/// A fiber product of two arrows, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberProduct {
    pub apex: usize,
    pub proj_left: usize,
    pub proj_right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct FpDecl {
    left: usize,
    right: usize,
    fp: FiberProduct,
}

/// A finite category with declared coverings and fiber products. Objects
/// and arrows are addressed by index; names are kept for I/O.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSite", into = "RawSite")]
pub struct FiniteSite {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    arrows: Vec<String>,
    arrow_index: HashMap<String, usize>,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<usize>,
    /// `comp[g][f] = g ∘ f`.
    comp: Vec<Vec<Option<usize>>>,
    hom: Vec<Vec<Vec<usize>>>,
    into: Vec<Vec<usize>>,
    coverings: Vec<(usize, Vec<usize>)>,
    fiber_products: Vec<FpDecl>,
}

impl TryFrom<RawSite> for FiniteSite {
    type Error = DescentError;

    fn try_from(raw: RawSite) -> Result<Self, DescentError> {
        FiniteSite::new(raw)
    }
}

impl From<FiniteSite> for RawSite {
    fn from(s: FiniteSite) -> RawSite {
        s.to_raw()
    }
}

impl FiniteSite {
    pub fn new(raw: RawSite) -> Result<Self, DescentError> {
        let mut object_index = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(DescentError::DuplicateObject(o.clone()));
            }
        }
        let obj = |name: &str, context: &str| {
            object_index
                .get(name)
                .copied()
                .ok_or_else(|| DescentError::UnknownObject {
                    name: name.to_string(),
                    context: context.to_string(),
                })
        };

        let mut arrows = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let mut arrow_index = HashMap::new();
        for a in &raw.arrows {
            if arrow_index.insert(a.id.clone(), arrows.len()).is_some() {
                return Err(DescentError::DuplicateArrow(a.id.clone()));
            }
            let context = format!("arrow `{}`", a.id);
            src.push(obj(&a.src, &context)?);
            dst.push(obj(&a.dst, &context)?);
            arrows.push(a.id.clone());
        }
        for o in raw.identities.keys() {
            obj(o, "identities")?;
        }
        let mut identity = Vec::with_capacity(raw.objects.len());
        for (i, o) in raw.objects.iter().enumerate() {
            let id = match raw.identities.get(o) {
                Some(name) => {
                    let f = *arrow_index
                        .get(name)
                        .ok_or_else(|| DescentError::UnknownArrow {
                            name: name.clone(),
                            context: "identities".to_string(),
                        })?;
                    if src[f] != i || dst[f] != i {
                        return Err(DescentError::BadIdentity {
                            object: o.clone(),
                            arrow: name.clone(),
                        });
                    }
                    f
                }
                None => {
                    let name = format!("id_{o}");
                    if arrow_index.contains_key(&name) {
                        return Err(DescentError::DuplicateArrow(name));
                    }
                    arrow_index.insert(name.clone(), arrows.len());
                    arrows.push(name);
                    src.push(i);
                    dst.push(i);
                    arrows.len() - 1
                }
            };
            identity.push(id);
        }

        let n = arrows.len();
        let mut comp = vec![vec![None; n]; n];
        for f in 0..n {
            comp[identity[dst[f]]][f] = Some(f);
            comp[f][identity[src[f]]] = Some(f);
        }
        let arr = |name: &str| {
            arrow_index
                .get(name)
                .copied()
                .ok_or_else(|| DescentError::UnknownArrow {
                    name: name.to_string(),
                    context: "composition table".to_string(),
                })
        };
        for c in &raw.compose {
            let (f, g, h) = (arr(&c.first)?, arr(&c.then)?, arr(&c.result)?);
            if dst[f] != src[g] {
                return Err(DescentError::NotComposable {
                    first: c.first.clone(),
                    then: c.then.clone(),
                });
            }
            if src[h] != src[f] || dst[h] != dst[g] {
                return Err(DescentError::BadComposite {
                    first: c.first.clone(),
                    then: c.then.clone(),
                    result: c.result.clone(),
                });
            }
            match comp[g][f] {
                Some(x) if x != h => {
                    return Err(DescentError::ConflictingComposite {
                        first: c.first.clone(),
                        then: c.then.clone(),
                    })
                }
                _ => comp[g][f] = Some(h),
            }
        }
        for f in 0..n {
            for g in 0..n {
                if dst[f] == src[g] && comp[g][f].is_none() {
                    return Err(DescentError::MissingComposite {
                        first: arrows[f].clone(),
                        then: arrows[g].clone(),
                    });
                }
            }
        }

        let mut hom = vec![vec![Vec::new(); raw.objects.len()]; raw.objects.len()];
        let mut into = vec![Vec::new(); raw.objects.len()];
        for f in 0..n {
            hom[src[f]][dst[f]].push(f);
            into[dst[f]].push(f);
        }
        let mut site = FiniteSite {
            objects: raw.objects.clone(),
            object_index,
            arrows,
            arrow_index,
            src,
            dst,
            identity,
            comp,
            hom,
            into,
            coverings: Vec::new(),
            fiber_products: Vec::new(),
        };
        site.check_associative()?;

        for (index, d) in raw.fiber_products.iter().enumerate() {
            let decl = site.fiber_product_decl(index, d)?;
            site.fiber_products.push(decl);
        }
        for (index, c) in raw.coverings.iter().enumerate() {
            let target = site
                .object_id(&c.target)
                .ok_or_else(|| DescentError::UnknownObject {
                    name: c.target.clone(),
                    context: format!("covering #{index}"),
                })?;
            let mut by = Vec::with_capacity(c.by.len());
            for m in &c.by {
                let f = site.arrow_id(m).ok_or_else(|| DescentError::UnknownArrow {
                    name: m.clone(),
                    context: format!("covering #{index}"),
                })?;
                if site.dst[f] != target {
                    return Err(DescentError::BadCovering {
                        index,
                        target: c.target.clone(),
                        reason: format!("member `{m}` does not map to the target"),
                    });
                }
                by.push(f);
            }
            for (i, &f) in by.iter().enumerate() {
                for &g in &by[i..] {
                    if site.fiber_product(f, g).is_none() {
                        return Err(DescentError::MissingFiberProduct {
                            left: site.arrows[f].clone(),
                            right: site.arrows[g].clone(),
                        });
                    }
                }
            }
            site.coverings.push((target, by));
        }
        site.check_pullback_stable()?;
        Ok(site)
    }

    fn check_associative(&self) -> Result<(), DescentError> {
        let n = self.arrows.len();
        for f in 0..n {
            for g in self.arrows_from(self.dst[f]) {
                let gf = self.compose(g, f);
                for h in self.arrows_from(self.dst[g]) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(DescentError::NotAssociative {
                            f: self.arrows[f].clone(),
                            g: self.arrows[g].clone(),
                            h: self.arrows[h].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn fiber_product_decl(
        &self,
        index: usize,
        d: &FiberProductDecl,
    ) -> Result<FpDecl, DescentError> {
        let arr = |name: &str| {
            self.arrow_id(name)
                .ok_or_else(|| DescentError::UnknownArrow {
                    name: name.to_string(),
                    context: format!("fiber product #{index}"),
                })
        };
        let (f, g, pl, pr) = (
            arr(&d.left)?,
            arr(&d.right)?,
            arr(&d.proj_left)?,
            arr(&d.proj_right)?,
        );
        let apex = self
            .object_id(&d.apex)
            .ok_or_else(|| DescentError::UnknownObject {
                name: d.apex.clone(),
                context: format!("fiber product #{index}"),
            })?;
        let bad = |reason: String| DescentError::BadFiberProduct { index, reason };
        if self.dst[f] != self.dst[g] {
            return Err(bad("left and right have different targets".into()));
        }
        if self.src[pl] != apex
            || self.dst[pl] != self.src[f]
            || self.src[pr] != apex
            || self.dst[pr] != self.src[g]
        {
            return Err(bad("projections have the wrong source or target".into()));
        }
        if self.compose(f, pl) != self.compose(g, pr) {
            return Err(bad("square does not commute".into()));
        }
        for x in 0..self.objects.len() {
            for &u in self.hom(x, self.src[f]) {
                for &v in self.hom(x, self.src[g]) {
                    if self.compose(f, u) != self.compose(g, v) {
                        continue;
                    }
                    let through = self
                        .hom(x, apex)
                        .iter()
                        .filter(|&&w| self.compose(pl, w) == u && self.compose(pr, w) == v)
                        .count();
                    if through != 1 {
                        return Err(bad(format!(
                            "not universal: ({}, {}) from `{}` factors {} times",
                            self.arrows[u], self.arrows[v], self.objects[x], through
                        )));
                    }
                }
            }
        }
        Ok(FpDecl {
            left: f,
            right: g,
            fp: FiberProduct {
                apex,
                proj_left: pl,
                proj_right: pr,
            },
        })
    }

    fn declared_fiber_product(&self, f: usize, g: usize) -> Option<FiberProduct> {
        for d in &self.fiber_products {
            if d.left == f && d.right == g {
                return Some(d.fp);
            }
            if d.left == g && d.right == f {
                return Some(FiberProduct {
                    apex: d.fp.apex,
                    proj_left: d.fp.proj_right,
                    proj_right: d.fp.proj_left,
                });
            }
        }
        None
    }

    /// Declared fiber product of `f` and `g`, or the evident one when either
    /// is an identity.
    pub fn fiber_product(&self, f: usize, g: usize) -> Option<FiberProduct> {
        if let Some(fp) = self.declared_fiber_product(f, g) {
            return Some(fp);
        }
        if self.is_identity(f) && self.dst[g] == self.src[f] {
            return Some(FiberProduct {
                apex: self.src[g],
                proj_left: g,
                proj_right: self.identity[self.src[g]],
            });
        }
        if self.is_identity(g) && self.dst[f] == self.src[g] {
            return Some(FiberProduct {
                apex: self.src[f],
                proj_left: self.identity[self.src[f]],
                proj_right: f,
            });
        }
        None
    }

    /// Pulling a covering back along any arrow for which all fiber products
    /// are declared must give a declared covering or a family containing a
    /// split epimorphism.
    fn check_pullback_stable(&self) -> Result<(), DescentError> {
        for (index, (t, by)) in self.coverings.iter().enumerate() {
            for &u in self.arrows_into(*t) {
                if self.is_identity(u) {
                    continue;
                }
                let pulled: Option<Vec<usize>> = by
                    .iter()
                    .map(|&f| self.fiber_product(f, u).map(|fp| fp.proj_right))
                    .collect();
                let Some(pulled) = pulled else { continue };
                let t2 = self.src[u];
                let members: BTreeSet<usize> = pulled.iter().copied().collect();
                let declared = self.coverings.iter().any(|(t3, by3)| {
                    *t3 == t2 && by3.iter().copied().collect::<BTreeSet<_>>() == members
                });
                let split = pulled.iter().any(|&p| self.has_section(p));
                if !declared && !split {
                    return Err(DescentError::NotPullbackStable {
                        index,
                        target: self.objects[*t].clone(),
                        along: self.arrows[u].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawSite {
        let arrows = (0..self.arrows.len())
            .map(|f| Arrow {
                id: self.arrows[f].clone(),
                src: self.objects[self.src[f]].clone(),
                dst: self.objects[self.dst[f]].clone(),
            })
            .collect();
        let identities = (0..self.objects.len())
            .map(|o| {
                (
                    self.objects[o].clone(),
                    self.arrows[self.identity[o]].clone(),
                )
            })
            .collect();
        let mut compose = Vec::new();
        for f in 0..self.arrows.len() {
            if self.is_identity(f) {
                continue;
            }
            for g in self.arrows_from(self.dst[f]) {
                if !self.is_identity(g) {
                    compose.push(Composite {
                        first: self.arrows[f].clone(),
                        then: self.arrows[g].clone(),
                        result: self.arrows[self.compose(g, f)].clone(),
                    });
                }
            }
        }
        let coverings = self
            .coverings
            .iter()
            .map(|(t, by)| Covering {
                target: self.objects[*t].clone(),
                by: by.iter().map(|&f| self.arrows[f].clone()).collect(),
            })
            .collect();
        let fiber_products = self
            .fiber_products
            .iter()
            .map(|d| FiberProductDecl {
                left: self.arrows[d.left].clone(),
                right: self.arrows[d.right].clone(),
                apex: self.objects[d.fp.apex].clone(),
                proj_left: self.arrows[d.fp.proj_left].clone(),
                proj_right: self.arrows[d.fp.proj_right].clone(),
            })
            .collect();
        RawSite {
            objects: self.objects.clone(),
            arrows,
            identities,
            compose,
            coverings,
            fiber_products,
        }
    }

    /// Declared fiber products as `(left, right, product)`.
    pub fn declared_fiber_products(
        &self,
    ) -> impl Iterator<Item = (usize, usize, FiberProduct)> + '_ {
        self.fiber_products.iter().map(|d| (d.left, d.right, d.fp))
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn arrow_name(&self, f: usize) -> &str {
        &self.arrows[f]
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g ∘ f`; panics unless `dst(f) == src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp[g][f]
            .unwrap_or_else(|| panic!("`{}` does not follow `{}`", self.arrows[g], self.arrows[f]))
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    pub fn arrows_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&f| self.src[f] == a)
    }

    pub fn arrows_into(&self, b: usize) -> &[usize] {
        &self.into[b]
    }

    pub fn coverings(&self) -> &[(usize, Vec<usize>)] {
        &self.coverings
    }

    pub fn coverings_of(&self, t: usize) -> impl Iterator<Item = &[usize]> + '_ {
        self.coverings
            .iter()
            .filter(move |(t2, _)| *t2 == t)
            .map(|(_, by)| by.as_slice())
    }

    /// Some `s` with `f ∘ s = id`.
    pub fn has_section(&self, f: usize) -> bool {
        self.hom(self.dst[f], self.src[f])
            .iter()
            .any(|&s| self.compose(f, s) == self.identity[self.dst[f]])
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.hom(self.dst[f], self.src[f])
            .iter()
            .copied()
            .find(|&s| {
                self.compose(f, s) == self.identity[self.dst[f]]
                    && self.compose(s, f) == self.identity[self.src[f]]
            })
    }
}
