use std::collections::{BTreeMap, HashMap};

use super::site::{Arrow, Composite, Covering, FiberProductDecl, RawSite};
use super::{DescentError, FiniteSite, PiSheafDatum, RawPiDatum, RawSheaf, SetSheaf};

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// `mul[a][b]` is the product `ab`.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, DescentError> {
        let n = names.len();
        let bad = |m: &str| Err(DescentError::BadGroup(m.to_string()));
        if n == 0 {
            return bad("no elements");
        }
        if mul.len() != n
            || mul
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return bad("table is not square over the elements");
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(DescentError::BadGroup(format!(
                            "not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
        else {
            return bad("no identity");
        };
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == identity && mul[b][a] == identity) {
                Some(b) => inverse.push(b),
                None => {
                    return Err(DescentError::BadGroup(format!(
                        "`{}` has no inverse",
                        names[a]
                    )))
                }
            }
        }
        Ok(FiniteGroup {
            names,
            mul,
            identity,
            inverse,
        })
    }

    /// Z/n with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::new(names, mul).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

fn check_action(
    group: &FiniteGroup,
    len: usize,
    action: &[Vec<usize>],
) -> Result<(), DescentError> {
    let bad = |m: String| Err(DescentError::NotAnAction(m));
    if action.len() != group.order() {
        return bad(format!(
            "{} permutations for a group of order {}",
            action.len(),
            group.order()
        ));
    }
    for (g, perm) in action.iter().enumerate() {
        let mut seen = vec![false; len];
        if perm.len() != len
            || perm
                .iter()
                .any(|&x| x >= len || std::mem::replace(&mut seen[x], true))
        {
            return bad(format!("`{}` does not act by a permutation", group.name(g)));
        }
    }
    if action[group.identity()]
        .iter()
        .enumerate()
        .any(|(x, &y)| x != y)
    {
        return bad("the identity acts nontrivially".to_string());
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            let gh = group.mul(g, h);
            if (0..len).any(|x| action[gh][x] != action[g][action[h][x]]) {
                return bad(format!(
                    "({}{}) differs from {} after {}",
                    group.name(g),
                    group.name(h),
                    group.name(h),
                    group.name(g)
                ));
            }
        }
    }
    Ok(())
}

/// Elements of `set` fixed by every group element; `action[g]` is the
/// permutation by which `g` acts (a left action).
pub fn galois_fixed_points(
    group: &FiniteGroup,
    set: &[String],
    action: &[Vec<usize>],
) -> Result<Vec<String>, DescentError> {
    check_action(group, set.len(), action)?;
    Ok((0..set.len())
        .filter(|&x| action.iter().all(|p| p[x] == x))
        .map(|x| set[x].clone())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Obj {
    Empty,
    Base,
    Ext,
    Double,
}

/// Arrows of the Galois site. `Ext` is the extension field, `Double` its
/// tensor square, one copy of `Ext` per group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Sem {
    Zero(Obj),
    IdBase,
    Pi,
    PiDouble,
    /// Automorphism of `Ext`.
    Sigma(usize),
    /// Copy `h` of `Double`, composed with `σ_a`.
    Incl(usize, usize),
    /// Copy `h` of `Double` maps to `Ext` by `σ_{φ(h)}`.
    Fold(Vec<usize>),
    /// Copy `h` maps to copy `ψ(h).0` by `σ_{ψ(h).1}`.
    Endo(Vec<(usize, usize)>),
}

const NAMES: [(Obj, &str); 4] = [
    (Obj::Empty, "E"),
    (Obj::Base, "k"),
    (Obj::Ext, "k'"),
    (Obj::Double, "D"),
];

fn obj_name(o: Obj) -> &'static str {
    NAMES.iter().find(|(x, _)| *x == o).expect("named").1
}

impl Sem {
    fn src(&self) -> Obj {
        match self {
            Sem::Zero(_) => Obj::Empty,
            Sem::IdBase => Obj::Base,
            Sem::Pi | Sem::Sigma(_) | Sem::Incl(..) => Obj::Ext,
            Sem::PiDouble | Sem::Fold(_) | Sem::Endo(_) => Obj::Double,
        }
    }

    fn dst(&self) -> Obj {
        match self {
            Sem::Zero(o) => *o,
            Sem::IdBase | Sem::Pi | Sem::PiDouble => Obj::Base,
            Sem::Sigma(_) | Sem::Fold(_) => Obj::Ext,
            Sem::Incl(..) | Sem::Endo(_) => Obj::Double,
        }
    }

    fn name(&self, g: &FiniteGroup) -> String {
        let n = |a: usize| g.name(a).to_string();
        match self {
            Sem::Zero(o) => format!("0_{}", obj_name(*o)),
            Sem::IdBase => "id_k".to_string(),
            Sem::Pi => "pi".to_string(),
            Sem::PiDouble => "pi_D".to_string(),
            Sem::Sigma(a) => format!("s{}", n(*a)),
            Sem::Incl(h, a) => format!("i{}_{}", n(*h), n(*a)),
            Sem::Fold(phi) => format!(
                "f[{}]",
                phi.iter().map(|&x| n(x)).collect::<Vec<_>>().join(",")
            ),
            Sem::Endo(psi) => format!(
                "m[{}]",
                psi.iter()
                    .map(|&(h, a)| format!("{}:{}", n(h), n(a)))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// `g ∘ f`.
fn compose(gr: &FiniteGroup, g: &Sem, f: &Sem) -> Sem {
    let m = |a, b| gr.mul(a, b);
    match (g, f) {
        (_, Sem::Zero(_)) => Sem::Zero(g.dst()),
        (Sem::IdBase, _) => f.clone(),
        (Sem::Pi, Sem::Sigma(_)) | (Sem::PiDouble, Sem::Incl(..)) => Sem::Pi,
        (Sem::Pi, Sem::Fold(_)) | (Sem::PiDouble, Sem::Endo(_)) => Sem::PiDouble,
        (Sem::Sigma(b), Sem::Sigma(a)) => Sem::Sigma(m(*b, *a)),
        (Sem::Sigma(b), Sem::Fold(phi)) => Sem::Fold(phi.iter().map(|&x| m(*b, x)).collect()),
        (Sem::Incl(h, b), Sem::Sigma(a)) => Sem::Incl(*h, m(*b, *a)),
        (Sem::Incl(h, b), Sem::Fold(phi)) => {
            Sem::Endo(phi.iter().map(|&x| (*h, m(*b, x))).collect())
        }
        (Sem::Fold(phi), Sem::Incl(h, a)) => Sem::Sigma(m(phi[*h], *a)),
        (Sem::Fold(phi), Sem::Endo(psi)) => {
            Sem::Fold(psi.iter().map(|&(h, a)| m(phi[h], a)).collect())
        }
        (Sem::Endo(chi), Sem::Incl(h, a)) => Sem::Incl(chi[*h].0, m(chi[*h].1, *a)),
        (Sem::Endo(chi), Sem::Endo(psi)) => Sem::Endo(
            psi.iter()
                .map(|&(h, a)| (chi[h].0, m(chi[h].1, a)))
                .collect(),
        ),
        _ => unreachable!("not composable"),
    }
}

fn all_functions<T: Clone>(domain: usize, values: &[T]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..domain {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn sems(g: &FiniteGroup) -> Vec<Sem> {
    let n = g.order();
    let elems: Vec<usize> = (0..n).collect();
    let pairs: Vec<(usize, usize)> = elems
        .iter()
        .flat_map(|&h| elems.iter().map(move |&a| (h, a)))
        .collect();
    let mut out: Vec<Sem> = NAMES.iter().map(|(o, _)| Sem::Zero(*o)).collect();
    out.extend([Sem::IdBase, Sem::Pi, Sem::PiDouble]);
    out.extend(elems.iter().map(|&a| Sem::Sigma(a)));
    out.extend(pairs.iter().map(|&(h, a)| Sem::Incl(h, a)));
    out.extend(all_functions(n, &elems).into_iter().map(Sem::Fold));
    out.extend(all_functions(n, &pairs).into_iter().map(Sem::Endo));
    out
}

/// The site of a Galois extension with group `g`: the base `k`, the
/// extension `k'`, its tensor square `D = k' ⊗ k'` (one copy of `k'` per
/// group element) and the empty scheme `E`. Coverings: `k' -> k`, the
/// copies of `k'` in `D`, and the empty covering of `E`.
pub fn galois_site(g: &FiniteGroup) -> FiniteSite {
    let arrows = sems(g);
    let name: HashMap<&Sem, String> = arrows.iter().map(|a| (a, a.name(g))).collect();
    let e = g.identity();
    let mut compose = Vec::new();
    for f in &arrows {
        for h in arrows.iter().filter(|h| h.src() == f.dst()) {
            compose.push(Composite {
                first: name[f].clone(),
                then: name[h].clone(),
                result: compose_name(g, &name, h, f),
            });
        }
    }
    let mut identities = BTreeMap::new();
    identities.insert("E".to_string(), name[&Sem::Zero(Obj::Empty)].clone());
    identities.insert("k".to_string(), name[&Sem::IdBase].clone());
    identities.insert("k'".to_string(), name[&Sem::Sigma(e)].clone());
    identities.insert(
        "D".to_string(),
        name[&Sem::Endo((0..g.order()).map(|h| (h, e)).collect())].clone(),
    );
    let incl = |h: usize| name[&Sem::Incl(h, e)].clone();
    let mut fiber_products = vec![FiberProductDecl {
        left: "pi".to_string(),
        right: "pi".to_string(),
        apex: "D".to_string(),
        proj_left: name[&Sem::Fold(vec![e; g.order()])].clone(),
        proj_right: name[&Sem::Fold((0..g.order()).collect())].clone(),
    }];
    for h in 0..g.order() {
        for h2 in h..g.order() {
            let (apex, proj) = if h == h2 {
                ("k'", name[&Sem::Sigma(e)].clone())
            } else {
                ("E", name[&Sem::Zero(Obj::Ext)].clone())
            };
            fiber_products.push(FiberProductDecl {
                left: incl(h),
                right: incl(h2),
                apex: apex.to_string(),
                proj_left: proj.clone(),
                proj_right: proj,
            });
        }
    }
    let raw = RawSite {
        objects: NAMES.iter().map(|(_, n)| n.to_string()).collect(),
        arrows: arrows
            .iter()
            .map(|a| Arrow {
                id: name[a].clone(),
                src: obj_name(a.src()).to_string(),
                dst: obj_name(a.dst()).to_string(),
            })
            .collect(),
        identities,
        compose,
        coverings: vec![
            Covering {
                target: "E".to_string(),
                by: Vec::new(),
            },
            Covering {
                target: "k".to_string(),
                by: vec!["pi".to_string()],
            },
            Covering {
                target: "D".to_string(),
                by: (0..g.order()).map(incl).collect(),
            },
        ],
        fiber_products,
    };
    FiniteSite::new(raw).expect("the Galois site is well formed")
}

fn compose_name(g: &FiniteGroup, name: &HashMap<&Sem, String>, h: &Sem, f: &Sem) -> String {
    let c = compose(g, h, f);
    name.get(&c).cloned().unwrap_or_else(|| c.name(g))
}

fn sem_of(s: &FiniteSite, g: &FiniteGroup) -> Vec<Sem> {
    let by_name: HashMap<String, Sem> = sems(g).into_iter().map(|a| (a.name(g), a)).collect();
    (0..s.arrow_count())
        .map(|f| {
            by_name
                .get(s.arrow_name(f))
                .cloned()
                .expect("site built by galois_site")
        })
        .collect()
}

/// Labels and index arithmetic for `X^G`, the value on `D`.
struct Tuples<'a> {
    labels: &'a [String],
    order: usize,
}

impl Tuples<'_> {
    fn count(&self) -> usize {
        self.labels.len().pow(self.order as u32)
    }

    fn decode(&self, mut i: usize) -> Vec<usize> {
        let n = self.labels.len();
        let mut out = vec![0; self.order];
        for slot in out.iter_mut() {
            *slot = i % n;
            i /= n;
        }
        out
    }

    fn encode(&self, t: &[usize]) -> usize {
        t.iter()
            .rev()
            .fold(0, |acc, &x| acc * self.labels.len() + x)
    }

    fn label(&self, i: usize) -> String {
        let parts: Vec<&str> = self
            .decode(i)
            .iter()
            .map(|&x| self.labels[x].as_str())
            .collect();
        format!("({})", parts.join(","))
    }

    fn all_labels(&self) -> Vec<String> {
        (0..self.count()).map(|i| self.label(i)).collect()
    }
}

/// The sheaf of points of the étale algebra attached to a `G`-set: `X` over
/// `k'` with `σ_a` acting by `a⁻¹`, `X^G` over `D`, the fixed points over
/// `k`, and a point over `E`.
pub fn galois_sheaf(
    s: &FiniteSite,
    g: &FiniteGroup,
    set: &[String],
    action: &[Vec<usize>],
) -> Result<SetSheaf, DescentError> {
    check_action(g, set.len(), action)?;
    let fixed: Vec<usize> = (0..set.len())
        .filter(|&x| action.iter().all(|p| p[x] == x))
        .collect();
    let tuples = Tuples {
        labels: set,
        order: g.order(),
    };
    let value = |o: Obj| -> Vec<String> {
        match o {
            Obj::Empty => vec!["*".to_string()],
            Obj::Base => fixed.iter().map(|&x| set[x].clone()).collect(),
            Obj::Ext => set.to_vec(),
            Obj::Double => tuples.all_labels(),
        }
    };
    let sets: Vec<Vec<String>> = NAMES.iter().map(|(o, _)| value(*o)).collect();
    let sem = sem_of(s, g);
    let act_inv = |a: usize, x: usize| action[g.inv(a)][x];
    SetSheaf::from_fn(s, sets, |f, x| match &sem[f] {
        Sem::Zero(_) => 0,
        Sem::IdBase => x,
        Sem::Pi => fixed[x],
        Sem::PiDouble => tuples.encode(&vec![fixed[x]; g.order()]),
        Sem::Sigma(a) => act_inv(*a, x),
        Sem::Incl(h, a) => act_inv(*a, tuples.decode(x)[*h]),
        Sem::Fold(phi) => tuples.encode(&phi.iter().map(|&b| act_inv(b, x)).collect::<Vec<_>>()),
        Sem::Endo(psi) => {
            let t = tuples.decode(x);
            tuples.encode(
                &psi.iter()
                    .map(|&(h, a)| act_inv(a, t[h]))
                    .collect::<Vec<_>>(),
            )
        }
    })
}

/// A `G`-set as descent data over `k'`: the constant sheaf `X` on the slice
/// over `k'`, with `σ_g` acting through the comparison maps.
pub fn galois_datum(
    s: &FiniteSite,
    g: &FiniteGroup,
    set: &[String],
    action: &[Vec<usize>],
) -> Result<PiSheafDatum, DescentError> {
    check_action(g, set.len(), action)?;
    raw_galois_datum(s, g, set, action).and_then(|raw| PiSheafDatum::new(s, &raw))
}

/// As [`galois_datum`] but without validating the action, so broken data
/// can reach the cocycle check.
pub(crate) fn raw_galois_datum(
    s: &FiniteSite,
    g: &FiniteGroup,
    set: &[String],
    action: &[Vec<usize>],
) -> Result<RawPiDatum, DescentError> {
    let sem = sem_of(s, g);
    let tuples = Tuples {
        labels: set,
        order: g.order(),
    };
    let ext = s.object_id("k'").expect("galois site");
    let value = |o: Obj| -> Vec<String> {
        match o {
            Obj::Empty => vec!["*".to_string()],
            Obj::Ext => set.to_vec(),
            Obj::Double => tuples.all_labels(),
            Obj::Base => unreachable!("nothing over k maps to k'"),
        }
    };
    // the constant sheaf ignores the twists
    let split = |c: &Sem, x: usize| -> usize {
        match c {
            Sem::Zero(_) => 0,
            Sem::Sigma(_) => x,
            Sem::Incl(h, _) => tuples.decode(x)[*h],
            Sem::Fold(_) => tuples.encode(&vec![x; g.order()]),
            Sem::Endo(psi) => {
                let t = tuples.decode(x);
                tuples.encode(&psi.iter().map(|&(h, _)| t[h]).collect::<Vec<_>>())
            }
            _ => unreachable!("not over k'"),
        }
    };
    let mut sets = BTreeMap::new();
    let mut maps = BTreeMap::new();
    for &b in s.arrows_into(ext) {
        let vb = value(sem[b].src());
        for &c in s.arrows_into(s.src(b)) {
            if s.is_identity(c) {
                continue;
            }
            let vc = value(sem[c].src());
            let m = (0..vb.len())
                .map(|x| (vb[x].clone(), vc[split(&sem[c], x)].clone()))
                .collect();
            maps.insert(format!("{}/{}", s.arrow_name(c), s.arrow_name(b)), m);
        }
        sets.insert(s.arrow_name(b).to_string(), vb);
    }
    let mut beta = BTreeMap::new();
    for (a, moves) in action.iter().enumerate() {
        if a == g.identity() {
            continue;
        }
        let sigma = Sem::Sigma(a).name(g);
        let mut per = BTreeMap::new();
        for &b in s.arrows_into(ext) {
            let vb = value(sem[b].src());
            let act = |x: usize| -> usize {
                match sem[b].src() {
                    Obj::Ext => moves[x],
                    Obj::Double => tuples.encode(
                        &tuples
                            .decode(x)
                            .iter()
                            .map(|&y| moves[y])
                            .collect::<Vec<_>>(),
                    ),
                    _ => x,
                }
            };
            per.insert(
                s.arrow_name(b).to_string(),
                (0..vb.len())
                    .map(|x| (vb[x].clone(), vb[act(x)].clone()))
                    .collect(),
            );
        }
        beta.insert(sigma, per);
    }
    let mut local = BTreeMap::new();
    local.insert("k'".to_string(), RawSheaf { sets, maps });
    Ok(RawPiDatum {
        pi: vec!["k'".to_string()],
        local,
        beta,
    })
}
