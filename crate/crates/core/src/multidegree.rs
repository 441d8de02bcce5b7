//! Multidegrees on the sides of nodes and their fiberwise shadows.
//!
//! A multidegree of total degree `d` assigns an integer to each side of each
//! node such that the two sides of a node sum to `d`. It is stored on one
//! canonical side per edge (the first half returned by
//! [`DualGraph::split_at_edge`]), so that constraint holds by construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dual_graph::{DualGraph, GraphError, GraphFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultidegreeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("total degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("no value given for either side of edge `{0}`")]
    MissingSide(String),
    #[error("{{{}}} is not a side of edge `{edge}` (entry {index})", .half.iter().cloned().collect::<Vec<_>>().join(","))]
    NotASide {
        index: usize,
        edge: String,
        half: BTreeSet<String>,
    },
    #[error("sides of edge `{edge}` sum to {sum}, but md(Y) + md(Y^c) must equal d = {d} (entry {index})")]
    SidesDoNotSum {
        index: usize,
        edge: String,
        sum: i64,
        d: i64,
    },
    #[error("side of edge `{0}` given twice")]
    DuplicateSide(String),
    #[error("no uniformly concentrated multidegree is concentrated on `{vertex}` over base point `{base}`")]
    Insufficient { base: String, vertex: String },
}

/// One of the two closed pieces a node separates the curve into.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Side {
    pub edge: String,
    pub half: BTreeSet<String>,
    #[serde(skip)]
    pub rest: BTreeSet<String>,
}

impl Side {
    /// The side of `edge` listed first by `split_at_edge`.
    pub fn canonical(g: &DualGraph, edge: &str) -> Result<Side, GraphError> {
        let (half, rest) = g.split_at_edge(edge)?;
        Ok(Side {
            edge: edge.to_string(),
            half,
            rest,
        })
    }

    /// The side of `edge` containing `vertex`.
    pub fn containing(g: &DualGraph, edge: &str, vertex: &str) -> Result<Side, GraphError> {
        if !g.has_vertex(vertex) {
            return Err(GraphError::UnknownVertex(vertex.to_string()));
        }
        let side = Self::canonical(g, edge)?;
        Ok(if side.half.contains(vertex) {
            side
        } else {
            side.complement()
        })
    }

    /// The side of `edge` not containing `vertex`.
    pub fn avoiding(g: &DualGraph, edge: &str, vertex: &str) -> Result<Side, GraphError> {
        Ok(Self::containing(g, edge, vertex)?.complement())
    }

    pub fn complement(&self) -> Side {
        Side {
            edge: self.edge.clone(),
            half: self.rest.clone(),
            rest: self.half.clone(),
        }
    }

    pub fn contains(&self, vertex: &str) -> bool {
        self.half.contains(vertex)
    }
}

/// Degree distribution across the sides of every node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree {
    degree: i64,
    sides: BTreeMap<String, (Side, i64)>,
}

/// Wire form: `{"d":4,"sides":[{"edge":"e1","half":["v1"],"value":1}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMultidegree {
    pub d: i64,
    pub sides: Vec<RawSideValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSideValue {
    pub edge: String,
    pub half: BTreeSet<String>,
    pub value: i64,
}

impl Multidegree {
    /// Builds a multidegree from values on canonical sides, keyed by edge.
    pub fn from_canonical(
        g: &DualGraph,
        d: i64,
        values: &BTreeMap<String, i64>,
    ) -> Result<Self, MultidegreeError> {
        if d <= 0 {
            return Err(MultidegreeError::NonPositiveDegree(d));
        }
        let mut sides = BTreeMap::new();
        for e in g.edges() {
            let v = *values
                .get(&e.id)
                .ok_or_else(|| MultidegreeError::MissingSide(e.id.clone()))?;
            sides.insert(e.id.clone(), (Side::canonical(g, &e.id)?, v));
        }
        for key in values.keys() {
            if g.edge(key).is_none() {
                return Err(GraphError::UnknownEdge(key.clone()).into());
            }
        }
        Ok(Multidegree { degree: d, sides })
    }

    /// Builds a multidegree from explicit side values. Either side of an
    /// edge may be given; giving both requires them to sum to `d`.
    pub fn from_sides(
        g: &DualGraph,
        d: i64,
        entries: &[RawSideValue],
    ) -> Result<Self, MultidegreeError> {
        if d <= 0 {
            return Err(MultidegreeError::NonPositiveDegree(d));
        }
        g.ensure_tree()?;
        // edge -> (raw value, whether it was given on the canonical side)
        let mut given: BTreeMap<String, (i64, bool)> = BTreeMap::new();
        for (index, entry) in entries.iter().enumerate() {
            let side = Side::canonical(g, &entry.edge)?;
            let is_canonical = if entry.half == side.half {
                true
            } else if entry.half == side.rest {
                false
            } else {
                return Err(MultidegreeError::NotASide {
                    index,
                    edge: entry.edge.clone(),
                    half: entry.half.clone(),
                });
            };
            match given.get(&entry.edge) {
                None => {
                    given.insert(entry.edge.clone(), (entry.value, is_canonical));
                }
                Some(&(_, prev_canonical)) if prev_canonical == is_canonical => {
                    return Err(MultidegreeError::DuplicateSide(entry.edge.clone()));
                }
                Some(&(previous, _)) => {
                    if previous + entry.value != d {
                        return Err(MultidegreeError::SidesDoNotSum {
                            index,
                            edge: entry.edge.clone(),
                            sum: previous + entry.value,
                            d,
                        });
                    }
                }
            }
        }
        let canonical_values: BTreeMap<String, i64> = given
            .into_iter()
            .map(|(e, (v, canonical))| (e, if canonical { v } else { d - v }))
            .collect();
        Self::from_canonical(g, d, &canonical_values)
    }

    pub fn from_raw(g: &DualGraph, raw: &RawMultidegree) -> Result<Self, MultidegreeError> {
        Self::from_sides(g, raw.d, &raw.sides)
    }

    /// Canonical-side wire form.
    pub fn to_raw(&self) -> RawMultidegree {
        RawMultidegree {
            d: self.degree,
            sides: self
                .sides
                .iter()
                .map(|(e, (side, v))| RawSideValue {
                    edge: e.clone(),
                    half: side.half.clone(),
                    value: *v,
                })
                .collect(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn edges(&self) -> impl Iterator<Item = &str> {
        self.sides.keys().map(String::as_str)
    }

    pub fn canonical_value(&self, edge: &str) -> Option<i64> {
        self.sides.get(edge).map(|(_, v)| *v)
    }

    pub fn canonical_side(&self, edge: &str) -> Option<&Side> {
        self.sides.get(edge).map(|(s, _)| s)
    }

    /// md(Y) for a side Y of one of this multidegree's edges.
    pub fn value(&self, side: &Side) -> Option<i64> {
        let (canonical, v) = self.sides.get(&side.edge)?;
        if side.half == canonical.half {
            Some(*v)
        } else if side.half == canonical.rest {
            Some(self.degree - v)
        } else {
            None
        }
    }

    /// Subtracts one from `side` and adds one to its complement.
    pub fn twist(&self, side: &Side) -> Result<Multidegree, MultidegreeError> {
        let mut out = self.clone();
        let (canonical, v) = out
            .sides
            .get_mut(&side.edge)
            .ok_or_else(|| GraphError::UnknownEdge(side.edge.clone()))?;
        if side.half == canonical.half {
            *v -= 1;
        } else if side.half == canonical.rest {
            *v += 1;
        } else {
            return Err(MultidegreeError::NotASide {
                index: 0,
                edge: side.edge.clone(),
                half: side.half.clone(),
            });
        }
        Ok(out)
    }
}

/// Integer degrees on the components of a single fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FiberDegrees(pub BTreeMap<String, i64>);

impl FiberDegrees {
    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn get(&self, v: &str) -> Option<i64> {
        self.0.get(v).copied()
    }

    /// The vertex carrying everything, if all other degrees vanish.
    pub fn concentrated_on(&self) -> Option<&str> {
        let nonzero: Vec<&String> = self
            .0
            .iter()
            .filter(|(_, &x)| x != 0)
            .map(|(v, _)| v)
            .collect();
        match nonzero.as_slice() {
            [v] => Some(v.as_str()),
            [] if self.0.len() == 1 => self.0.keys().next().map(String::as_str),
            _ => None,
        }
    }
}

/// Degrees on the components of `g`: each vertex receives `d` minus the
/// values of the far sides of the nodes it meets.
pub fn fiber_multidegree(
    g: &DualGraph,
    md: &Multidegree,
) -> Result<FiberDegrees, MultidegreeError> {
    g.ensure_tree()?;
    let mut out = BTreeMap::new();
    for v in g.vertices() {
        let mut deg = md.degree();
        for e in g.incident_edges(&v.id) {
            let (canonical, value) = md
                .sides
                .get(&e.id)
                .ok_or_else(|| MultidegreeError::MissingSide(e.id.clone()))?;
            deg -= if canonical.half.contains(&v.id) {
                md.degree() - value
            } else {
                *value
            };
        }
        out.insert(v.id.clone(), deg);
    }
    Ok(FiberDegrees(out))
}

pub fn twist(md: &Multidegree, side: &Side) -> Result<Multidegree, MultidegreeError> {
    md.twist(side)
}

pub fn is_concentrated(
    g: &DualGraph,
    md: &Multidegree,
    vertex: &str,
) -> Result<bool, MultidegreeError> {
    if !g.has_vertex(vertex) {
        return Err(GraphError::UnknownVertex(vertex.to_string()).into());
    }
    let degrees = fiber_multidegree(g, md)?;
    Ok(degrees.0.iter().all(|(v, &x)| v == vertex || x == 0))
}

/// Restricts `md` to the nodes persisting over `base`, read on the fiber's
/// dual graph. Returns that graph alongside.
pub fn pullback_multidegree(
    fam: &GraphFamily,
    md: &Multidegree,
    base: &str,
) -> Result<(DualGraph, Multidegree), MultidegreeError> {
    let fiber = fam.fiber(base)?;
    let h = fam.fiber_graph(base)?;
    let mut values = BTreeMap::new();
    for e in &fiber.nodal_edges {
        let (original, v) = md
            .sides
            .get(e)
            .ok_or_else(|| MultidegreeError::MissingSide(e.clone()))?;
        let side = Side::canonical(&h, e)?;
        let witness = original.half.iter().next().expect("sides are nonempty");
        let merged = h
            .vertex_containing(witness)
            .expect("contraction keeps every original vertex");
        let value = if side.half.contains(merged) {
            *v
        } else {
            md.degree() - v
        };
        values.insert(e.clone(), value);
    }
    let pulled = Multidegree::from_canonical(&h, md.degree(), &values)?;
    Ok((h, pulled))
}

/// Whether the fiber multidegree over every base point is concentrated on
/// some component.
pub fn is_uniformly_concentrated(
    fam: &GraphFamily,
    md: &Multidegree,
) -> Result<bool, MultidegreeError> {
    for fiber in fam.fibers() {
        let (h, pulled) = pullback_multidegree(fam, md, &fiber.base)?;
        if fiber_multidegree(&h, &pulled)?.concentrated_on().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every uniformly concentrated multidegree, up to the values on nodes that
/// persist in no fiber (those are fixed to 0 on the canonical side since no
/// fiber can see them).
///
/// Concentration over a fiber forces each persisting node to carry `0` or
/// `d` on each side, so the search space is finite.
pub fn enumerate_uniformly_concentrated(
    fam: &GraphFamily,
    d: i64,
) -> Result<Vec<Multidegree>, MultidegreeError> {
    let g = fam.total();
    let seen: BTreeSet<&str> = fam
        .fibers()
        .iter()
        .flat_map(|f| f.nodal_edges.iter().map(String::as_str))
        .collect();
    let free: Vec<&str> = g
        .edges()
        .iter()
        .map(|e| e.id.as_str())
        .filter(|e| seen.contains(e))
        .collect();
    if free.len() > 20 {
        return Err(GraphError::NotCompactType(format!(
            "{} persisting nodes is too many to enumerate",
            free.len()
        ))
        .into());
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut values: BTreeMap<String, i64> =
            g.edges().iter().map(|e| (e.id.clone(), 0)).collect();
        // Bit i set means the canonical side of the i-th edge carries d.
        // Iterating masks in this order lists candidates lexicographically
        // by edge order with 0 before d.
        for (i, e) in free.iter().enumerate() {
            let bit = (mask >> (free.len() - 1 - i)) & 1;
            values.insert(e.to_string(), if bit == 1 { d } else { 0 });
        }
        let md = Multidegree::from_canonical(g, d, &values)?;
        if is_uniformly_concentrated(fam, &md)? {
            out.push(md);
        }
    }
    Ok(out)
}

/// `(base, vertex)` pairs on which `md` is concentrated.
fn coverage(
    fam: &GraphFamily,
    md: &Multidegree,
) -> Result<BTreeSet<(String, String)>, MultidegreeError> {
    let mut out = BTreeSet::new();
    for fiber in fam.fibers() {
        let (h, pulled) = pullback_multidegree(fam, md, &fiber.base)?;
        if let Some(v) = fiber_multidegree(&h, &pulled)?.concentrated_on() {
            out.insert((fiber.base.clone(), v.to_string()));
        }
    }
    Ok(out)
}

fn all_targets(fam: &GraphFamily) -> Result<BTreeSet<(String, String)>, MultidegreeError> {
    let mut out = BTreeSet::new();
    for fiber in fam.fibers() {
        for v in fam.fiber_graph(&fiber.base)?.vertices() {
            out.insert((fiber.base.clone(), v.id.clone()));
        }
    }
    Ok(out)
}

/// Whether `collection` hits every component of every fiber and consists of
/// uniformly concentrated members.
pub fn is_sufficient(
    fam: &GraphFamily,
    collection: &[Multidegree],
) -> Result<bool, MultidegreeError> {
    let mut covered = BTreeSet::new();
    for md in collection {
        if !is_uniformly_concentrated(fam, md)? {
            return Ok(false);
        }
        covered.extend(coverage(fam, md)?);
    }
    Ok(covered == all_targets(fam)?)
}

/// A sufficient collection chosen by greedy set cover over the uniformly
/// concentrated candidates; ties go to the lexicographically first
/// candidate. The result is small but not canonical.
pub fn find_sufficient_collection(
    fam: &GraphFamily,
    d: i64,
) -> Result<Vec<Multidegree>, MultidegreeError> {
    let candidates = enumerate_uniformly_concentrated(fam, d)?;
    let covers: Vec<BTreeSet<(String, String)>> = candidates
        .iter()
        .map(|md| coverage(fam, md))
        .collect::<Result<_, _>>()?;
    let mut uncovered = all_targets(fam)?;
    let reachable: BTreeSet<(String, String)> = covers.iter().flatten().cloned().collect();
    if let Some((base, vertex)) = uncovered.iter().find(|t| !reachable.contains(*t)) {
        return Err(MultidegreeError::Insufficient {
            base: base.clone(),
            vertex: vertex.clone(),
        });
    }
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (best, _) = covers
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.intersection(&uncovered).count()))
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        for t in &covers[best] {
            uncovered.remove(t);
        }
        chosen.push(candidates[best].clone());
    }
    Ok(chosen)
}

/// All sufficient collections of the smallest possible size, drawn from the
/// distinct uniformly concentrated candidates.
pub fn minimum_sufficient_collections(
    fam: &GraphFamily,
    d: i64,
) -> Result<Vec<Vec<Multidegree>>, MultidegreeError> {
    let candidates = enumerate_uniformly_concentrated(fam, d)?;
    let covers: Vec<BTreeSet<(String, String)>> = candidates
        .iter()
        .map(|md| coverage(fam, md))
        .collect::<Result<_, _>>()?;
    let targets = all_targets(fam)?;
    for size in 1..=candidates.len() {
        let mut found = Vec::new();
        for combo in combinations(candidates.len(), size) {
            let hit: BTreeSet<&(String, String)> =
                combo.iter().flat_map(|&i| covers[i].iter()).collect();
            if hit.len() == targets.len() {
                found.push(combo.iter().map(|&i| candidates[i].clone()).collect());
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
    }
    let (base, vertex) = targets.into_iter().next().unwrap_or_default();
    Err(MultidegreeError::Insufficient { base, vertex })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual_graph::Fiber;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn values(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(e, v)| (e.to_string(), *v)).collect()
    }

    fn two() -> DualGraph {
        DualGraph::from_parts(&[("v1", 0), ("v2", 0)], &[("e1", "v1", "v2")]).unwrap()
    }

    fn path3() -> DualGraph {
        DualGraph::from_parts(
            &[("v1", 0), ("v2", 0), ("v3", 0)],
            &[("e1", "v1", "v2"), ("e2", "v2", "v3")],
        )
        .unwrap()
    }

    fn path3_md() -> Multidegree {
        let g = path3();
        Multidegree::from_sides(
            &g,
            4,
            &[
                RawSideValue {
                    edge: "e1".into(),
                    half: set(&["v1"]),
                    value: 1,
                },
                RawSideValue {
                    edge: "e2".into(),
                    half: set(&["v3"]),
                    value: 1,
                },
            ],
        )
        .unwrap()
    }

    fn degrees(pairs: &[(&str, i64)]) -> FiberDegrees {
        FiberDegrees(values(pairs))
    }

    #[test]
    fn fiber_examples() {
        let g = two();
        let md = Multidegree::from_canonical(&g, 3, &values(&[("e1", 0)])).unwrap();
        assert_eq!(
            fiber_multidegree(&g, &md).unwrap(),
            degrees(&[("v1", 0), ("v2", 3)])
        );

        let g = path3();
        assert_eq!(
            fiber_multidegree(&g, &path3_md()).unwrap(),
            degrees(&[("v1", 1), ("v2", 2), ("v3", 1)])
        );

        let star = DualGraph::from_parts(
            &[("c", 0), ("a", 0), ("b", 0)],
            &[("ea", "c", "a"), ("eb", "c", "b")],
        )
        .unwrap();
        let md = Multidegree::from_canonical(&star, 2, &values(&[("ea", 1), ("eb", 1)])).unwrap();
        assert_eq!(
            fiber_multidegree(&star, &md).unwrap(),
            degrees(&[("a", 1), ("b", 1), ("c", 0)])
        );
    }

    #[test]
    fn side_pair_must_sum_to_d() {
        let g = two();
        let err = Multidegree::from_sides(
            &g,
            3,
            &[
                RawSideValue {
                    edge: "e1".into(),
                    half: set(&["v1"]),
                    value: 1,
                },
                RawSideValue {
                    edge: "e1".into(),
                    half: set(&["v2"]),
                    value: 1,
                },
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            MultidegreeError::SidesDoNotSum {
                index: 1,
                edge: "e1".into(),
                sum: 2,
                d: 3
            }
        );
        assert_eq!(
            Multidegree::from_sides(&g, 3, &[]).unwrap_err(),
            MultidegreeError::MissingSide("e1".into())
        );
        assert!(matches!(
            Multidegree::from_sides(
                &path3(),
                3,
                &[RawSideValue {
                    edge: "e1".into(),
                    half: set(&["v2"]),
                    value: 1
                }]
            ),
            Err(MultidegreeError::NotASide { .. })
        ));
        assert_eq!(
            Multidegree::from_canonical(&g, 0, &values(&[("e1", 0)])).unwrap_err(),
            MultidegreeError::NonPositiveDegree(0)
        );
    }

    #[test]
    fn twist_examples() {
        let g = two();
        let md = Multidegree::from_canonical(&g, 3, &values(&[("e1", 2)])).unwrap();
        let y = Side::containing(&g, "e1", "v1").unwrap();
        let twisted = md.twist(&y).unwrap();
        assert_eq!(twisted.value(&y), Some(1));
        assert_eq!(twisted.value(&y.complement()), Some(2));
        assert_eq!(twisted.twist(&y.complement()).unwrap(), md);
    }

    #[test]
    fn concentration_examples() {
        let g = two();
        let md = Multidegree::from_canonical(&g, 3, &values(&[("e1", 0)])).unwrap();
        assert!(is_concentrated(&g, &md, "v2").unwrap());
        assert!(!is_concentrated(&g, &md, "v1").unwrap());
        let g = path3();
        for v in ["v1", "v2", "v3"] {
            assert!(!is_concentrated(&g, &path3_md(), v).unwrap());
        }
        assert!(is_concentrated(&g, &path3_md(), "zz").is_err());
    }

    fn family(g: DualGraph, fibers: &[(&str, &[&str])]) -> GraphFamily {
        GraphFamily::new(
            g,
            fibers
                .iter()
                .map(|(b, es)| Fiber {
                    base: b.to_string(),
                    nodal_edges: set(es),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn pullback_examples() {
        let fam = family(
            path3(),
            &[("all", &["e1", "e2"]), ("none", &[]), ("b", &["e1"])],
        );
        let md = path3_md();
        let (h, pulled) = pullback_multidegree(&fam, &md, "all").unwrap();
        assert_eq!(h, path3());
        assert_eq!(pulled, md);

        let (h, pulled) = pullback_multidegree(&fam, &md, "none").unwrap();
        assert_eq!(h.vertices().len(), 1);
        assert_eq!(pulled.edges().count(), 0);
        assert_eq!(
            fiber_multidegree(&h, &pulled).unwrap(),
            degrees(&[("v1+v2+v3", 4)])
        );

        let (h, pulled) = pullback_multidegree(&fam, &md, "b").unwrap();
        assert_eq!(pulled.canonical_value("e1"), Some(1));
        assert_eq!(
            fiber_multidegree(&h, &pulled).unwrap(),
            degrees(&[("v1", 1), ("v2+v3", 3)])
        );
        assert!(pullback_multidegree(&fam, &md, "x").is_err());
    }

    #[test]
    fn uniform_concentration_examples() {
        let g = two();
        let fam = GraphFamily::central(g.clone()).unwrap();
        let md = Multidegree::from_canonical(&g, 3, &values(&[("e1", 3)])).unwrap();
        assert!(is_uniformly_concentrated(&fam, &md).unwrap());

        let fam = GraphFamily::central(path3()).unwrap();
        assert!(!is_uniformly_concentrated(&fam, &path3_md()).unwrap());
    }

    /// Two nodes over distinct base points, smooth elsewhere.
    fn independent_nodes() -> GraphFamily {
        family(
            path3(),
            &[("generic", &[]), ("b1", &["e1"]), ("b2", &["e2"])],
        )
    }

    #[test]
    fn independent_nodes_have_four_candidates() {
        let all = enumerate_uniformly_concentrated(&independent_nodes(), 2).unwrap();
        assert_eq!(all.len(), 4);
        let minimum = minimum_sufficient_collections(&independent_nodes(), 2).unwrap();
        assert_eq!(minimum.len(), 2);
        assert!(minimum.iter().all(|c| c.len() == 2));
        let greedy = find_sufficient_collection(&independent_nodes(), 2).unwrap();
        assert_eq!(greedy.len(), 2);
        assert!(is_sufficient(&independent_nodes(), &greedy).unwrap());
    }

    #[test]
    fn central_fiber_cuts_candidates() {
        let fam = family(
            path3(),
            &[("b0", &["e1", "e2"]), ("b1", &["e1"]), ("b2", &["e2"])],
        );
        assert_eq!(enumerate_uniformly_concentrated(&fam, 2).unwrap().len(), 3);
        let greedy = find_sufficient_collection(&fam, 2).unwrap();
        assert_eq!(greedy.len(), 3);
        assert!(is_sufficient(&fam, &greedy).unwrap());
    }

    #[test]
    fn single_two_vertex_fiber() {
        let fam = GraphFamily::central(two()).unwrap();
        let c = find_sufficient_collection(&fam, 3).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn repeated_entries_are_still_sufficient() {
        let fam = independent_nodes();
        let mut c = find_sufficient_collection(&fam, 2).unwrap();
        c.push(c[0].clone());
        assert!(is_sufficient(&fam, &c).unwrap());
    }
}
