use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::extend::UnionFind;
use super::site::{Arrow, Composite, Covering, FiberProductDecl, RawSite};
use super::{
    check_factorable, check_sheaf, extend_sheaf, factorable_subcategory, full_subsite,
    DescentError, FiniteSite, RawSheaf, SetSheaf,
};

fn slice_arrow_name(s: &FiniteSite, c: usize, b: usize) -> String {
    format!("{}/{}", s.arrow_name(c), s.arrow_name(b))
}

/// The slice site over `p`: objects are arrows `a: t -> p` (named as in
/// the site), and an arrow from `a` to `b` is `c` with `b ∘ c = a`, named
/// `c/b`. Coverings and fiber products are inherited.
pub fn slice_site(s: &FiniteSite, p: usize) -> Result<FiniteSite, DescentError> {
    let over: Vec<usize> = s.arrows_into(p).to_vec();
    let mut arrows = Vec::new();
    let mut identities = BTreeMap::new();
    let mut pairs = Vec::new();
    for &b in &over {
        for &c in s.arrows_into(s.src(b)) {
            let a = s.compose(b, c);
            arrows.push(Arrow {
                id: slice_arrow_name(s, c, b),
                src: s.arrow_name(a).to_string(),
                dst: s.arrow_name(b).to_string(),
            });
            pairs.push((c, b));
            if s.is_identity(c) {
                identities.insert(s.arrow_name(b).to_string(), slice_arrow_name(s, c, b));
            }
        }
    }
    let mut compose = Vec::new();
    for &(c1, b1) in &pairs {
        for &(c2, b2) in &pairs {
            if s.compose(b2, c2) == b1 && !s.is_identity(c1) && !s.is_identity(c2) {
                compose.push(Composite {
                    first: slice_arrow_name(s, c1, b1),
                    then: slice_arrow_name(s, c2, b2),
                    result: slice_arrow_name(s, s.compose(c2, c1), b2),
                });
            }
        }
    }
    let mut coverings = Vec::new();
    for (t, by) in s.coverings() {
        for &b in over.iter().filter(|&&b| s.src(b) == *t) {
            coverings.push(Covering {
                target: s.arrow_name(b).to_string(),
                by: by.iter().map(|&f| slice_arrow_name(s, f, b)).collect(),
            });
        }
    }
    let mut fiber_products = Vec::new();
    for (f, g, fp) in s.declared_fiber_products() {
        for &b in over.iter().filter(|&&b| s.src(b) == s.dst(f)) {
            let bf = s.compose(b, f);
            let bg = s.compose(b, g);
            fiber_products.push(FiberProductDecl {
                left: slice_arrow_name(s, f, b),
                right: slice_arrow_name(s, g, b),
                apex: s.arrow_name(s.compose(bf, fp.proj_left)).to_string(),
                proj_left: slice_arrow_name(s, fp.proj_left, bf),
                proj_right: slice_arrow_name(s, fp.proj_right, bg),
            });
        }
    }
    FiniteSite::new(RawSite {
        objects: over.iter().map(|&a| s.arrow_name(a).to_string()).collect(),
        arrows,
        identities,
        compose,
        coverings,
        fiber_products,
    })
}

/// Wire format for a [`PiSheafDatum`]. `local[p]` is a sheaf on the slice
/// over `p`; `beta[f][a]` maps labels of `F_p(a)` to labels of
/// `F_q(f ∘ a)` for each non-identity `f: p -> q` inside `pi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPiDatum {
    pub pi: Vec<String>,
    pub local: BTreeMap<String, RawSheaf>,
    #[serde(default)]
    pub beta: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

/// Sheaves on the slices over a set of objects, with comparison
/// isomorphisms `β_f(a): F_p(a) -> F_q(f ∘ a)` satisfying the cocycle
/// condition `β_{g∘f}(a) = β_g(f∘a) ∘ β_f(a)`.
#[derive(Debug, Clone)]
pub struct PiSheafDatum {
    pi: Vec<usize>,
    slices: Vec<FiniteSite>,
    local: Vec<SetSheaf>,
    /// `(f, a) -> β_f(a)`, for every arrow `f` between objects of `pi`.
    beta: HashMap<(usize, usize), Vec<usize>>,
}

impl PiSheafDatum {
    pub fn new(s: &FiniteSite, raw: &RawPiDatum) -> Result<Self, DescentError> {
        let mut pi = Vec::with_capacity(raw.pi.len());
        for name in &raw.pi {
            let p = s
                .object_id(name)
                .ok_or_else(|| DescentError::UnknownObject {
                    name: name.clone(),
                    context: "pi".to_string(),
                })?;
            if pi.contains(&p) {
                return Err(DescentError::DuplicateObject(name.clone()));
            }
            pi.push(p);
        }
        for name in raw.local.keys() {
            if !raw.pi.contains(name) {
                return Err(DescentError::UnknownObject {
                    name: name.clone(),
                    context: "local sheaves".to_string(),
                });
            }
        }
        let mut slices = Vec::with_capacity(pi.len());
        let mut local = Vec::with_capacity(pi.len());
        for (i, &p) in pi.iter().enumerate() {
            let slice = slice_site(s, p)?;
            let sheaf = raw
                .local
                .get(&raw.pi[i])
                .ok_or_else(|| DescentError::MissingLocal(raw.pi[i].clone()))?;
            local.push(SetSheaf::from_raw(&slice, sheaf)?);
            slices.push(slice);
        }
        let pos = |o: usize| pi.iter().position(|&p| p == o);

        for name in raw.beta.keys() {
            let f = s.arrow_id(name).ok_or_else(|| DescentError::UnknownArrow {
                name: name.clone(),
                context: "beta".to_string(),
            })?;
            if pos(s.src(f)).is_none() || pos(s.dst(f)).is_none() || s.is_identity(f) {
                return Err(DescentError::BadComparison {
                    arrow: name.clone(),
                    at: String::new(),
                    reason: "not a non-identity arrow between objects of pi".to_string(),
                });
            }
        }
        let mut beta = HashMap::new();
        for &p in &pi {
            let i = pos(p).expect("in pi");
            for &q in &pi {
                let j = pos(q).expect("in pi");
                for &f in s.hom(p, q) {
                    for &a in s.arrows_into(p) {
                        let fa = s.compose(f, a);
                        let src_set = local[i].value(slice_object(&slices[i], s, a));
                        let dst_set = local[j].value(slice_object(&slices[j], s, fa));
                        let m = if s.is_identity(f) {
                            (0..src_set.len()).collect()
                        } else {
                            read_bijection(s, raw, f, a, src_set, dst_set)?
                        };
                        beta.insert((f, a), m);
                    }
                }
            }
        }
        let datum = PiSheafDatum {
            pi,
            slices,
            local,
            beta,
        };
        datum.check_natural(s)?;
        datum.check_cocycle(s)?;
        Ok(datum)
    }

    fn pos(&self, o: usize) -> Option<usize> {
        self.pi.iter().position(|&p| p == o)
    }

    /// `F_p(a)` for `a` into `p ∈ pi`, as (local index, slice object).
    fn at(&self, s: &FiniteSite, a: usize) -> (usize, usize) {
        let i = self.pos(s.dst(a)).expect("arrow into pi");
        (i, slice_object(&self.slices[i], s, a))
    }

    /// Restriction of `F_p` along the slice arrow `c: a∘c -> a`.
    fn local_restrict(&self, s: &FiniteSite, c: usize, a: usize, x: usize) -> usize {
        let i = self.pos(s.dst(a)).expect("arrow into pi");
        let arrow = self.slices[i]
            .arrow_id(&slice_arrow_name(s, c, a))
            .expect("slice arrow exists");
        self.local[i].restrict(arrow, x)
    }

    fn check_natural(&self, s: &FiniteSite) -> Result<(), DescentError> {
        for (&(f, b), m) in &self.beta {
            if s.is_identity(f) {
                continue;
            }
            let fb = s.compose(f, b);
            for &c in s.arrows_into(s.src(b)) {
                let a = s.compose(b, c);
                let ma = &self.beta[&(f, a)];
                let (i, ob) = self.at(s, b);
                for x in 0..self.local[i].len(ob) {
                    let lhs = self.local_restrict(s, c, fb, m[x]);
                    let rhs = ma[self.local_restrict(s, c, b, x)];
                    if lhs != rhs {
                        return Err(DescentError::NotNatural {
                            arrow: s.arrow_name(f).to_string(),
                            along: slice_arrow_name(s, c, b),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_cocycle(&self, s: &FiniteSite) -> Result<(), DescentError> {
        let mut keys: Vec<&(usize, usize)> = self.beta.keys().collect();
        keys.sort();
        for &&(f, a) in &keys {
            let q = s.dst(f);
            for g in s.arrows_from(q) {
                if self.pos(s.dst(g)).is_none() {
                    continue;
                }
                let gf = s.compose(g, f);
                let fa = s.compose(f, a);
                let lhs = &self.beta[&(gf, a)];
                let bf = &self.beta[&(f, a)];
                let bg = &self.beta[&(g, fa)];
                if (0..lhs.len()).any(|x| lhs[x] != bg[bf[x]]) {
                    return Err(DescentError::CocycleViolation {
                        f: s.arrow_name(f).to_string(),
                        g: s.arrow_name(g).to_string(),
                        at: s.arrow_name(a).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn slice(&self, i: usize) -> &FiniteSite {
        &self.slices[i]
    }

    pub fn local(&self, i: usize) -> &SetSheaf {
        &self.local[i]
    }

    pub fn to_raw(&self, s: &FiniteSite) -> RawPiDatum {
        let pi: Vec<String> = self
            .pi
            .iter()
            .map(|&p| s.object_name(p).to_string())
            .collect();
        let local = pi
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), self.local[i].to_raw(&self.slices[i])))
            .collect();
        let mut beta: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>> =
            BTreeMap::new();
        for (&(f, a), m) in &self.beta {
            if s.is_identity(f) {
                continue;
            }
            let (i, oa) = self.at(s, a);
            let (j, ofa) = self.at(s, s.compose(f, a));
            let labels = m
                .iter()
                .enumerate()
                .map(|(x, &y)| {
                    (
                        self.local[i].value(oa)[x].clone(),
                        self.local[j].value(ofa)[y].clone(),
                    )
                })
                .collect();
            beta.entry(s.arrow_name(f).to_string())
                .or_default()
                .insert(s.arrow_name(a).to_string(), labels);
        }
        RawPiDatum { pi, local, beta }
    }
}

fn slice_object(slice: &FiniteSite, s: &FiniteSite, a: usize) -> usize {
    slice
        .object_id(s.arrow_name(a))
        .expect("arrow into the base is a slice object")
}

fn read_bijection(
    s: &FiniteSite,
    raw: &RawPiDatum,
    f: usize,
    a: usize,
    src_set: &[String],
    dst_set: &[String],
) -> Result<Vec<usize>, DescentError> {
    let bad = |reason: String| DescentError::BadComparison {
        arrow: s.arrow_name(f).to_string(),
        at: s.arrow_name(a).to_string(),
        reason,
    };
    let given = raw
        .beta
        .get(s.arrow_name(f))
        .and_then(|m| m.get(s.arrow_name(a)))
        .ok_or_else(|| bad("missing".to_string()))?;
    if src_set.len() != dst_set.len() {
        return Err(bad(format!(
            "{} elements cannot match {}",
            src_set.len(),
            dst_set.len()
        )));
    }
    if let Some(k) = given.keys().find(|k| !src_set.contains(k)) {
        return Err(bad(format!("`{k}` is not in the source set")));
    }
    let mut out = Vec::with_capacity(src_set.len());
    let mut hit = vec![false; dst_set.len()];
    for x in src_set {
        let y = given
            .get(x)
            .ok_or_else(|| bad(format!("no image for `{x}`")))?;
        let j = dst_set
            .iter()
            .position(|d| d == y)
            .ok_or_else(|| bad(format!("`{y}` is not in the target set")))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(bad(format!("`{y}` is hit twice")));
        }
        out.push(j);
    }
    Ok(out)
}

/// The datum a sheaf induces on slices over `pi`: `F_p(a) = F(source of a)`
/// and every comparison map the identity.
pub fn pi_datum_from_sheaf(
    s: &FiniteSite,
    pi: &[String],
    f: &SetSheaf,
) -> Result<PiSheafDatum, DescentError> {
    f.fits(s)?;
    let mut local = BTreeMap::new();
    let mut beta: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>> = BTreeMap::new();
    let ids: Vec<usize> = pi
        .iter()
        .map(|n| {
            s.object_id(n).ok_or_else(|| DescentError::UnknownObject {
                name: n.clone(),
                context: "pi".to_string(),
            })
        })
        .collect::<Result<_, _>>()?;
    for (name, &p) in pi.iter().zip(&ids) {
        let mut sets = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for &b in s.arrows_into(p) {
            let t = s.src(b);
            sets.insert(s.arrow_name(b).to_string(), f.value(t).to_vec());
            for &c in s.arrows_into(t) {
                if s.is_identity(c) {
                    continue;
                }
                let m = (0..f.len(t))
                    .map(|x| {
                        (
                            f.value(t)[x].clone(),
                            f.value(s.src(c))[f.restrict(c, x)].clone(),
                        )
                    })
                    .collect();
                maps.insert(slice_arrow_name(s, c, b), m);
            }
        }
        local.insert(name.clone(), RawSheaf { sets, maps });
        for &q in &ids {
            for &g in s.hom(p, q) {
                if s.is_identity(g) {
                    continue;
                }
                let per_a = s
                    .arrows_into(p)
                    .iter()
                    .map(|&a| {
                        let vals = f.value(s.src(a));
                        (
                            s.arrow_name(a).to_string(),
                            vals.iter().map(|v| (v.clone(), v.clone())).collect(),
                        )
                    })
                    .collect();
                beta.insert(s.arrow_name(g).to_string(), per_a);
            }
        }
    }
    PiSheafDatum::new(
        s,
        &RawPiDatum {
            pi: pi.to_vec(),
            local,
            beta,
        },
    )
}

/// Glues a datum on slices to a sheaf on the whole site.
///
/// On objects `t` mapping into `pi`, sections are pairs `(a: t -> p, x ∈
/// F_p(a))` identified along the comparison maps, and further identified
/// when they restrict to the same sections on every member of a covering of
/// `t`. Each `F_p(a)` must then map bijectively onto the result. The sheaf
/// is extended to the remaining objects through their coverings.
pub fn glue_pi_sheaf(s: &FiniteSite, datum: &PiSheafDatum) -> Result<SetSheaf, DescentError> {
    let pi_names: Vec<String> = datum
        .pi
        .iter()
        .map(|&p| s.object_name(p).to_string())
        .collect();
    let report = check_factorable(s, &pi_names)?;
    if let Some(object) = report.witness {
        return Err(DescentError::NotFactorable { object });
    }
    for (i, name) in pi_names.iter().enumerate() {
        let r = check_sheaf(&datum.slices[i], &datum.local[i])?;
        if let Some(fail) = r.failure {
            return Err(DescentError::LocalNotSheaf {
                object: name.clone(),
                detail: serde_json::to_string(&fail).unwrap_or_default(),
            });
        }
    }
    let sub_names = factorable_subcategory(s, &pi_names)?;
    let sub = full_subsite(s, &sub_names)?;
    let in_sub: Vec<bool> = (0..s.object_count())
        .map(|o| sub.object_id(s.object_name(o)).is_some())
        .collect();

    // nodes (a, x) for every arrow a: t -> p into pi
    let mut node_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    let mut by_object: Vec<Vec<usize>> = vec![Vec::new(); s.object_count()];
    let mut charts: Vec<Vec<usize>> = vec![Vec::new(); s.object_count()];
    for t in (0..s.object_count()).filter(|&t| in_sub[t]) {
        for a in s.arrows_from(t) {
            if datum.pos(s.dst(a)).is_none() {
                continue;
            }
            charts[t].push(a);
            let (i, oa) = datum.at(s, a);
            for x in 0..datum.local[i].len(oa) {
                node_of.insert((a, x), nodes.len());
                by_object[t].push(nodes.len());
                nodes.push((a, x));
            }
        }
    }
    let mut uf = UnionFind::new(nodes.len());
    for (n, &(a, x)) in nodes.iter().enumerate() {
        for f in s.arrows_from(s.dst(a)) {
            if datum.pos(s.dst(f)).is_some() && !s.is_identity(f) {
                let y = datum.beta[&(f, a)][x];
                uf.union(n, node_of[&(s.compose(f, a), y)]);
            }
        }
    }
    let restrict_node = |u: usize, n: usize| -> usize {
        let (a, x) = nodes[n];
        node_of[&(s.compose(a, u), datum.local_restrict(s, u, a, x))]
    };

    loop {
        let mut changed = false;
        for t in (0..s.object_count()).filter(|&t| in_sub[t]) {
            for by in s.coverings_of(t) {
                let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
                for &n in &by_object[t] {
                    let sig: Vec<usize> =
                        by.iter().map(|&f| uf.find(restrict_node(f, n))).collect();
                    match first.get(&sig) {
                        Some(&m) => changed |= uf.union(m, n),
                        None => {
                            first.insert(sig, n);
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut class_of: Vec<HashMap<usize, usize>> = vec![HashMap::new(); s.object_count()];
    let mut sets: Vec<Vec<String>> = Vec::with_capacity(sub.object_count());
    for o in 0..sub.object_count() {
        let t = s.object_id(sub.object_name(o)).expect("same names");
        let not_bijective = |a: usize| DescentError::GlueNotBijective {
            object: s.object_name(t).to_string(),
            arrow: s.arrow_name(a).to_string(),
        };
        let a0 = charts[t][0];
        let (i0, o0) = datum.at(s, a0);
        let labels = datum.local[i0].value(o0).to_vec();
        for x in 0..labels.len() {
            if class_of[t].insert(uf.find(node_of[&(a0, x)]), x).is_some() {
                return Err(not_bijective(a0));
            }
        }
        for &a in &charts[t] {
            let (i, oa) = datum.at(s, a);
            let mut hit = vec![false; labels.len()];
            for x in 0..datum.local[i].len(oa) {
                let c = *class_of[t]
                    .get(&uf.find(node_of[&(a, x)]))
                    .ok_or_else(|| not_bijective(a))?;
                if std::mem::replace(&mut hit[c], true) {
                    return Err(not_bijective(a));
                }
            }
            if hit.contains(&false) {
                return Err(not_bijective(a));
            }
        }
        sets.push(labels);
    }

    let mut maps = Vec::with_capacity(sub.arrow_count());
    for g in 0..sub.arrow_count() {
        let u = s.arrow_id(sub.arrow_name(g)).expect("same names");
        let (t2, t) = (s.src(u), s.dst(u));
        let mut m: Vec<Option<usize>> = vec![None; class_of[t].len()];
        for &n in &by_object[t] {
            let c = class_of[t][&uf.find(n)];
            let c2 = class_of[t2][&uf.find(restrict_node(u, n))];
            match m[c] {
                Some(prev) if prev != c2 => {
                    return Err(DescentError::NotWellDefined(s.arrow_name(u).to_string()))
                }
                _ => m[c] = Some(c2),
            }
        }
        maps.push(
            m.into_iter()
                .map(|x| x.expect("every class has a node"))
                .collect(),
        );
    }
    let on_sub = SetSheaf::new(&sub, sets, maps)?;
    extend_sheaf(s, &sub, &on_sub)
}
