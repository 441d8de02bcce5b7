//! Eisenbud-Harris limit linear series on compact-type curves.
//!
//! Supported configurations are trees of rational components with elliptic
//! tails attached as leaves, in the ρ = 0 regime. Each elliptic tail carries
//! the unique sequence `d-r-1, ..., d-2, d` at its node; every rational
//! component carries Schubert conditions at its nodes, and its local
//! multiplicity is the corresponding Schubert intersection number.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dual_graph::{DualGraph, GraphAutomorphism, GraphError};
use crate::exact::{binomial, serialize_big};
use crate::schubert::{
    brill_noether_rho, intersection_number, vanishing_to_partition, BoxShape, ClassCombination,
    Partition, SchubertError,
};

pub use crate::schubert::VanishingSequence;

/// Default cap on the box area (r+1)(d-r).
pub const DEFAULT_MAX_BOX: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LlsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error("sequences disagree on (r, d): ({0}, {1}) vs ({2}, {3})")]
    Mismatch(u32, u32, u32, u32),
    #[error(
        "unsupported configuration: {0}; only rational components with elliptic tails as leaves are covered \
         (the elliptic-tail degeneration of the ρ = 0 Schubert reduction)"
    )]
    Unsupported(String),
    #[error("ρ(g={g}, r={r}, d={d}) = {rho}, but enumeration needs ρ = 0")]
    NonzeroRho { g: u32, r: u32, d: u32, rho: i64 },
    #[error("box area (r+1)(d-r) = {area} exceeds the cap {max}")]
    BoxTooLarge { area: usize, max: usize },
    #[error("edge `{edge}` at `{vertex}` has no vanishing sequence")]
    MissingSequence { edge: String, vertex: String },
    #[error("sequences at edge `{0}` violate a_j + a'_(r-j) >= d")]
    Incompatible(String),
    #[error("count must be nonnegative, got {0}")]
    NegativeCount(i64),
    #[error("real counts need d >= 2, got {0}")]
    DegreeTooSmall(u32),
}

/// Whether `a_j + a'_{r-j} >= d` for every j.
pub fn check_compatibility(
    a: &VanishingSequence,
    a_prime: &VanishingSequence,
) -> Result<bool, LlsError> {
    if a.r() != a_prime.r() || a.d() != a_prime.d() {
        return Err(LlsError::Mismatch(a.r(), a.d(), a_prime.r(), a_prime.d()));
    }
    let r = a.r() as usize;
    let (x, y) = (a.as_slice(), a_prime.as_slice());
    Ok((0..=r).all(|j| x[j] + y[r - j] >= a.d()))
}

/// Total amount by which the inequalities at a node exceed equality.
fn slack(a: &VanishingSequence, a_prime: &VanishingSequence) -> i64 {
    let r = a.r() as usize;
    let (x, y) = (a.as_slice(), a_prime.as_slice());
    (0..=r)
        .map(|j| (x[j] + y[r - j]) as i64 - a.d() as i64)
        .sum()
}

/// A combinatorial stratum of limit series: a vanishing sequence at each
/// (edge, endpoint) pair and a local multiplicity per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSeriesType {
    graph: Arc<DualGraph>,
    r: u32,
    d: u32,
    sequences: BTreeMap<(String, String), VanishingSequence>,
    multiplicities: BTreeMap<String, BigUint>,
}

impl LimitSeriesType {
    /// Checks that every node has sequences on both sides satisfying the
    /// compatibility inequalities.
    pub fn new(
        graph: Arc<DualGraph>,
        r: u32,
        d: u32,
        sequences: BTreeMap<(String, String), VanishingSequence>,
        multiplicities: BTreeMap<String, BigUint>,
    ) -> Result<Self, LlsError> {
        for e in graph.edges() {
            let mut pair = Vec::with_capacity(2);
            for v in &e.ends {
                let seq = sequences.get(&(e.id.clone(), v.clone())).ok_or_else(|| {
                    LlsError::MissingSequence {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    }
                })?;
                if seq.r() != r || seq.d() != d {
                    return Err(LlsError::Mismatch(r, d, seq.r(), seq.d()));
                }
                pair.push(seq);
            }
            if !check_compatibility(pair[0], pair[1])? {
                return Err(LlsError::Incompatible(e.id.clone()));
            }
        }
        Ok(LimitSeriesType {
            graph,
            r,
            d,
            sequences,
            multiplicities,
        })
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn sequence(&self, edge: &str, vertex: &str) -> Option<&VanishingSequence> {
        self.sequences.get(&(edge.to_string(), vertex.to_string()))
    }

    pub fn sequences(&self) -> &BTreeMap<(String, String), VanishingSequence> {
        &self.sequences
    }

    pub fn multiplicities(&self) -> &BTreeMap<String, BigUint> {
        &self.multiplicities
    }

    /// Product of the local multiplicities.
    pub fn multiplicity(&self) -> BigUint {
        self.multiplicities
            .values()
            .fold(BigUint::one(), |acc, m| acc * m)
    }

    /// Sum over nodes and indices of `a_j + a'_{r-j} - d`.
    pub fn total_slack(&self) -> i64 {
        self.graph
            .edges()
            .iter()
            .map(|e| {
                let a = &self.sequences[&(e.id.clone(), e.ends[0].clone())];
                let b = &self.sequences[&(e.id.clone(), e.ends[1].clone())];
                slack(a, b)
            })
            .sum()
    }

    /// Every inequality is an equality.
    pub fn is_refined(&self) -> bool {
        self.total_slack() == 0
    }

    /// ρ(g, r, d) minus the total slack.
    pub fn expected_dimension(&self, g: u32) -> i64 {
        brill_noether_rho(g, self.r, self.d) - self.total_slack()
    }

    /// Transports the type along a graph automorphism.
    pub fn transport(&self, aut: &GraphAutomorphism) -> LimitSeriesType {
        let sequences = self
            .sequences
            .iter()
            .map(|((e, v), s)| ((aut.edge(e), aut.vertex(v)), s.clone()))
            .collect();
        let multiplicities = self
            .multiplicities
            .iter()
            .map(|(v, m)| (aut.vertex(v), m.clone()))
            .collect();
        LimitSeriesType {
            graph: self.graph.clone(),
            r: self.r,
            d: self.d,
            sequences,
            multiplicities,
        }
    }
}

#[derive(Serialize)]
struct SequenceRecord<'a> {
    edge: &'a str,
    at: &'a str,
    seq: &'a VanishingSequence,
}

#[derive(Serialize)]
struct VertexRecord<'a> {
    vertex: &'a str,
    #[serde(serialize_with = "serialize_big")]
    multiplicity: &'a BigUint,
}

impl Serialize for LimitSeriesType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let sequences: Vec<SequenceRecord> = self
            .sequences
            .iter()
            .map(|((e, v), seq)| SequenceRecord {
                edge: e,
                at: v,
                seq,
            })
            .collect();
        let vertices: Vec<VertexRecord> = self
            .multiplicities
            .iter()
            .map(|(v, m)| VertexRecord {
                vertex: v,
                multiplicity: m,
            })
            .collect();
        let mut st = s.serialize_struct("LimitSeriesType", 3)?;
        st.serialize_field("sequences", &sequences)?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field(
            "multiplicity",
            &crate::exact::json_number(&self.multiplicity()),
        )?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Caller asserts node and marked points are in general position.
    pub general_position: bool,
    /// Cap on (r+1)(d-r).
    pub max_box: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            general_position: true,
            max_box: DEFAULT_MAX_BOX,
        }
    }
}

/// Refined limit series types with nonzero multiplicity, canonically sorted.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub genus: u32,
    pub r: u32,
    pub d: u32,
    pub types: Vec<LimitSeriesType>,
    pub assumptions: Vec<String>,
}

impl Enumeration {
    pub fn total(&self) -> BigUint {
        self.types.iter().map(LimitSeriesType::multiplicity).sum()
    }
}

fn assumptions(opts: &EnumerationOptions) -> Vec<String> {
    let mut out = vec![
        "multiplicities are Schubert intersection numbers; they count limit series only when the scheme of limit \
         series has dimension rho and is reduced"
            .to_string(),
    ];
    if opts.general_position {
        out.push(
            "node and marked points are declared to be in general position (not verified)"
                .to_string(),
        );
    } else {
        out.push(
            "general position NOT declared: the counts may differ for special points".to_string(),
        );
    }
    out
}

/// Validated view of a supported graph.
struct Setup {
    shape: BoxShape,
    genus: u32,
    /// Partition carried by an elliptic tail at its node.
    tail: Partition,
    tails: BTreeSet<String>,
}

fn setup(g: &DualGraph, r: u32, d: u32, opts: &EnumerationOptions) -> Result<Setup, LlsError> {
    g.ensure_tree()?;
    let shape = BoxShape::for_grassmannian(r, d)?;
    if shape.area() > opts.max_box {
        return Err(LlsError::BoxTooLarge {
            area: shape.area(),
            max: opts.max_box,
        });
    }
    let mut tails = BTreeSet::new();
    for v in g.vertices() {
        match v.genus {
            0 => {}
            1 if g.degree(&v.id) == 1 => {
                tails.insert(v.id.clone());
            }
            1 => {
                return Err(LlsError::Unsupported(format!(
                    "genus-1 component `{}` is not a leaf",
                    v.id
                )))
            }
            k => {
                return Err(LlsError::Unsupported(format!(
                    "component `{}` has genus {k} >= 2",
                    v.id
                )))
            }
        }
    }
    let genus = g.total_genus()?;
    let rho = brill_noether_rho(genus, r, d);
    if rho != 0 {
        return Err(LlsError::NonzeroRho {
            g: genus,
            r,
            d,
            rho,
        });
    }
    let tail = if tails.is_empty() {
        Partition::empty()
    } else {
        vanishing_to_partition(&VanishingSequence::elliptic_tail(r, d)?)
    };
    Ok(Setup {
        shape,
        genus,
        tail,
        tails,
    })
}

/// Lists every refined limit series type with nonzero multiplicity.
///
/// Nodes meeting an elliptic tail are forced; every other node ranges over
/// all partitions in the box (lexicographically, read from the endpoint with
/// the smaller id), with the complementary partition on the other side.
pub fn enumerate_refined(
    g: &DualGraph,
    r: u32,
    d: u32,
    opts: &EnumerationOptions,
) -> Result<Enumeration, LlsError> {
    let s = setup(g, r, d, opts)?;
    let graph = Arc::new(g.clone());

    // side partition for each (edge, endpoint)
    let mut fixed: BTreeMap<(String, String), Partition> = BTreeMap::new();
    let mut free: Vec<(String, String, String)> = Vec::new();
    for e in ordered_edges(g) {
        let (a, b) = (&e.ends[0], &e.ends[1]);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match (s.tails.contains(lo), s.tails.contains(hi)) {
            (true, true) => {
                if s.tail.complement(s.shape) != s.tail {
                    return Ok(Enumeration {
                        genus: s.genus,
                        r,
                        d,
                        types: Vec::new(),
                        assumptions: assumptions(opts),
                    });
                }
                fixed.insert((e.id.clone(), lo.clone()), s.tail.clone());
                fixed.insert((e.id.clone(), hi.clone()), s.tail.clone());
            }
            (true, false) | (false, true) => {
                let (t, other) = if s.tails.contains(lo) {
                    (lo, hi)
                } else {
                    (hi, lo)
                };
                fixed.insert((e.id.clone(), t.clone()), s.tail.clone());
                fixed.insert((e.id.clone(), other.clone()), s.tail.complement(s.shape));
            }
            (false, false) => free.push((e.id.clone(), lo.clone(), hi.clone())),
        }
    }

    let mut search = Search {
        graph: g,
        shape: s.shape,
        tails: &s.tails,
        free: &free,
        choices: s.shape.partitions(),
        cache: HashMap::new(),
        found: Vec::new(),
    };
    let mut assignment = fixed;
    search.run(0, &mut assignment);

    let mut types = Vec::with_capacity(search.found.len());
    for (assignment, multiplicities) in std::mem::take(&mut search.found) {
        let sequences = assignment
            .into_iter()
            .map(|(k, p)| Ok((k, VanishingSequence::from_partition(&p, r, d)?)))
            .collect::<Result<BTreeMap<_, _>, SchubertError>>()?;
        types.push(LimitSeriesType::new(
            graph.clone(),
            r,
            d,
            sequences,
            multiplicities,
        )?);
    }
    types.sort_by(|x, y| x.sequences.cmp(&y.sequences));
    Ok(Enumeration {
        genus: s.genus,
        r,
        d,
        types,
        assumptions: assumptions(opts),
    })
}

/// Edges in breadth-first order from the smallest vertex id, so that
/// components are completed early during the search.
fn ordered_edges(g: &DualGraph) -> Vec<&crate::dual_graph::Edge> {
    let Some(root) = g.vertices().iter().map(|v| v.id.as_str()).min() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut seen_v = BTreeSet::from([root.to_string()]);
    let mut seen_e = BTreeSet::new();
    let mut queue = std::collections::VecDeque::from([root.to_string()]);
    while let Some(v) = queue.pop_front() {
        let mut incident: Vec<_> = g.edges().iter().filter(|e| e.touches(&v)).collect();
        incident.sort_by(|a, b| a.id.cmp(&b.id));
        for e in incident {
            if seen_e.insert(e.id.clone()) {
                out.push(e);
                let w = e.other_end(&v).unwrap().to_string();
                if seen_v.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

type Assignment = BTreeMap<(String, String), Partition>;

struct Search<'a> {
    graph: &'a DualGraph,
    shape: BoxShape,
    tails: &'a BTreeSet<String>,
    free: &'a [(String, String, String)],
    choices: Vec<Partition>,
    cache: HashMap<Vec<Partition>, BigUint>,
    found: Vec<(Assignment, BTreeMap<String, BigUint>)>,
}

impl Search<'_> {
    /// Conditions at `v` if all its nodes are assigned.
    fn conditions(&self, v: &str, assignment: &Assignment) -> Option<Vec<Partition>> {
        let mut out = Vec::new();
        for e in self.graph.incident_edges(v) {
            out.push(assignment.get(&(e.id.clone(), v.to_string()))?.clone());
        }
        out.sort();
        Some(out)
    }

    fn local_number(&mut self, conditions: Vec<Partition>) -> BigUint {
        if let Some(x) = self.cache.get(&conditions) {
            return x.clone();
        }
        let x = intersection_number(&conditions, self.shape);
        self.cache.insert(conditions, x.clone());
        x
    }

    /// Rejects a partial assignment once some rational component is
    /// over-constrained or complete with multiplicity zero.
    fn viable(&mut self, vertices: &[&str], assignment: &Assignment) -> bool {
        for v in vertices {
            if self.tails.contains(*v) {
                continue;
            }
            let used: usize = self
                .graph
                .incident_edges(v)
                .filter_map(|e| assignment.get(&(e.id.clone(), v.to_string())))
                .map(Partition::size)
                .sum();
            if used > self.shape.area() {
                return false;
            }
            if let Some(c) = self.conditions(v, assignment) {
                if self.local_number(c).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, idx: usize, assignment: &mut Assignment) {
        if idx == 0 {
            let all: Vec<String> = self.graph.vertices().iter().map(|v| v.id.clone()).collect();
            let refs: Vec<&str> = all.iter().map(String::as_str).collect();
            if !self.viable(&refs, assignment) {
                return;
            }
        }
        if idx == self.free.len() {
            let mut multiplicities = BTreeMap::new();
            for v in self.graph.vertices() {
                let m = if self.tails.contains(&v.id) {
                    BigUint::one()
                } else {
                    let c = self.conditions(&v.id, assignment).expect("complete");
                    self.local_number(c)
                };
                if m.is_zero() {
                    return;
                }
                multiplicities.insert(v.id.clone(), m);
            }
            self.found.push((assignment.clone(), multiplicities));
            return;
        }
        let (edge, lo, hi) = self.free[idx].clone();
        for k in 0..self.choices.len() {
            let lam = self.choices[k].clone();
            let comp = lam.complement(self.shape);
            assignment.insert((edge.clone(), lo.clone()), lam);
            assignment.insert((edge.clone(), hi.clone()), comp);
            if self.viable(&[&lo, &hi], assignment) {
                self.run(idx + 1, assignment);
            }
        }
        assignment.remove(&(edge.clone(), lo));
        assignment.remove(&(edge, hi));
    }
}

/// Total number of refined limit series, counted with multiplicity, by a
/// transfer recursion over the tree.
///
/// Rooting at a rational component, the subtree hanging off a node
/// contributes the class Σ_λ W(λ) σ_{λ^c} to its parent; by Poincaré
/// duality that class is simply the product of the children's classes, so
/// the count is the degree of the product of all leaf classes taken in
/// tree order.
pub fn count_refined(
    g: &DualGraph,
    r: u32,
    d: u32,
    opts: &EnumerationOptions,
) -> Result<BigUint, LlsError> {
    let s = setup(g, r, d, opts)?;
    let root = g
        .vertices()
        .iter()
        .filter(|v| !s.tails.contains(&v.id))
        .map(|v| v.id.as_str())
        .min();
    let Some(root) = root else {
        // Only elliptic tails: either one (impossible at ρ = 0) or two joined.
        return Ok(
            if g.edges().len() == 1 && s.tail.complement(s.shape) == s.tail {
                BigUint::one()
            } else {
                BigUint::zero()
            },
        );
    };
    let class = subtree_class(g, &s, root, None);
    Ok(class.degree())
}

fn subtree_class(g: &DualGraph, s: &Setup, v: &str, parent_edge: Option<&str>) -> ClassCombination {
    if s.tails.contains(v) {
        return ClassCombination::class(s.shape, s.tail.complement(s.shape));
    }
    let mut acc = ClassCombination::one(s.shape);
    for e in g.incident_edges(v) {
        if Some(e.id.as_str()) == parent_edge {
            continue;
        }
        let child = e.other_end(v).expect("incident");
        let k = subtree_class(g, s, child, Some(&e.id));
        acc = acc.product(&k).expect("same box");
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Result of restricting an enumeration to types fixed by a group action.
#[derive(Debug, Clone, Serialize)]
pub struct GaloisCount {
    /// Number of invariant combinatorial strata.
    pub strata: usize,
    /// Sum of multiplicities over invariant strata.
    #[serde(serialize_with = "serialize_big")]
    pub invariant_multiplicity: BigUint,
    /// Indices into the enumeration of the invariant types.
    pub invariant: Vec<usize>,
    /// True when every invariant stratum has multiplicity one, so strata
    /// correspond to rational points.
    pub counts_points: bool,
    pub note: String,
}

/// Index permutation of an enumeration induced by transporting along `aut`.
pub fn transport_permutation(
    en: &Enumeration,
    aut: &GraphAutomorphism,
) -> Result<Vec<usize>, LlsError> {
    let Some(first) = en.types.first() else {
        return Ok(Vec::new());
    };
    aut.validate(first.graph())?;
    let index: BTreeMap<&BTreeMap<(String, String), VanishingSequence>, usize> = en
        .types
        .iter()
        .enumerate()
        .map(|(i, t)| (&t.sequences, i))
        .collect();
    en.types
        .iter()
        .map(|t| {
            let moved = t.transport(aut);
            index.get(&moved.sequences).copied().ok_or_else(|| {
                GraphError::InvalidAutomorphism(
                    "transported type is not in the enumeration".to_string(),
                )
                .into()
            })
        })
        .collect()
}

/// Counts strata fixed by every automorphism in `group`.
pub fn galois_invariant_count(
    en: &Enumeration,
    group: &[GraphAutomorphism],
) -> Result<GaloisCount, LlsError> {
    let mut fixed = vec![true; en.types.len()];
    for aut in group {
        let perm = transport_permutation(en, aut)?;
        for (i, &j) in perm.iter().enumerate() {
            if i != j {
                fixed[i] = false;
            }
        }
    }
    let invariant: Vec<usize> = (0..en.types.len()).filter(|&i| fixed[i]).collect();
    let invariant_multiplicity = invariant.iter().map(|&i| en.types[i].multiplicity()).sum();
    let counts_points = invariant
        .iter()
        .all(|&i| en.types[i].multiplicity().is_one());
    let note = if counts_points {
        "every invariant stratum is a single reduced point; the stratum count is the count of rational points".into()
    } else {
        "some invariant stratum has multiplicity > 1; this counts invariant combinatorial strata, and how many of \
         their points are rational depends on real or arithmetic Schubert geometry not modeled here"
            .into()
    };
    Ok(GaloisCount {
        strata: invariant.len(),
        invariant_multiplicity,
        invariant,
        counts_points,
        note,
    })
}

/// The three closed-form g^1_d counts on a general genus 2d-2 curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealCountReport {
    pub d: u32,
    /// All complex g^1_d's: (1/d) C(2d-2, d-1).
    #[serde(serialize_with = "serialize_big")]
    pub total: BigUint,
    /// C(d-1, ⌈(d-1)/2⌉).
    #[serde(serialize_with = "serialize_big")]
    pub cools_coppens: BigUint,
    /// (1/(d-1)) C(d-1, d/2) for even d; zero for odd d, where curves with no
    /// real g^1_d exist.
    #[serde(serialize_with = "serialize_big")]
    pub eremenko_gabrielov: BigUint,
}

pub fn real_count_formulas(d: u32) -> Result<RealCountReport, LlsError> {
    if d < 2 {
        return Err(LlsError::DegreeTooSmall(d));
    }
    let d64 = d as u64;
    let total = binomial(2 * d64 - 2, d64 - 1) / BigUint::from(d64);
    let cools_coppens = binomial(d64 - 1, d64 / 2);
    let eremenko_gabrielov = if d.is_multiple_of(2) {
        binomial(d64 - 1, d64 / 2) / BigUint::from(d64 - 1)
    } else {
        BigUint::zero()
    };
    Ok(RealCountReport {
        d,
        total,
        cools_coppens,
        eremenko_gabrielov,
    })
}

/// Hypotheses under which a limit count transfers to nearby smooth fibers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FiberHypotheses {
    /// The limit series scheme of the special fiber is finite.
    pub finite: bool,
    /// Its invariant rational points are all reduced.
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberPrediction {
    pub n: u64,
    pub prediction: String,
    pub hypotheses: FiberHypotheses,
    pub hypotheses_verified: bool,
    pub warnings: Vec<String>,
}

/// Restates the transfer of `n` invariant reduced points to nearby smooth
/// fibers. Performs no analysis of its own.
pub fn predict_smooth_fiber_count(
    n: i64,
    hypotheses: FiberHypotheses,
) -> Result<FiberPrediction, LlsError> {
    if n < 0 {
        return Err(LlsError::NegativeCount(n));
    }
    let prediction = if n == 0 {
        "no rational series on nearby fibers".to_string()
    } else {
        format!("exactly {n} rational series on every nearby smooth fiber")
    };
    let verified = hypotheses.finite && hypotheses.reduced;
    let mut warnings = Vec::new();
    if !verified {
        warnings.push(
            "hypotheses unverified: prediction holds only if finiteness and reducedness hold"
                .to_string(),
        );
    }
    Ok(FiberPrediction {
        n: n as u64,
        prediction,
        hypotheses,
        hypotheses_verified: verified,
        warnings,
    })
}

/// Rational spine `c` with `tails` elliptic tails `t1..` attached by `e1..`,
/// each tail marked with its attachment point `P1..`.
pub fn spine_with_tails(tails: usize) -> DualGraph {
    use crate::dual_graph::{Edge, Mark, Vertex};
    let mut vertices = vec![Vertex {
        id: "c".into(),
        genus: 0,
    }];
    let mut edges = Vec::new();
    let mut marks = Vec::new();
    for i in 1..=tails {
        vertices.push(Vertex {
            id: format!("t{i}"),
            genus: 1,
        });
        edges.push(Edge {
            id: format!("e{i}"),
            ends: ["c".into(), format!("t{i}")],
        });
        marks.push(Mark {
            vertex: format!("t{i}"),
            label: format!("P{i}"),
        });
    }
    DualGraph::new(vertices, edges, marks).expect("well-formed star")
}
