//! Schubert calculus on the Grassmannian G(r+1, d+1).
//!
//! Classes are indexed by partitions fitting in an (r+1) x (d-r) box.
//! Products are computed two ways: the Pieri rule for special classes and
//! direct enumeration of Littlewood-Richardson tableaux for general ones.
//! All coefficients are exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("need 0 <= r <= d, got r = {r}, d = {d}")]
    BadRank { r: u32, d: u32 },
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("partition {parts:?} does not fit in the {rows}x{cols} box")]
    OutOfBox {
        parts: Vec<u32>,
        rows: usize,
        cols: usize,
    },
    #[error("special class index {k} must lie in 1..={cols}")]
    SpecialOutOfRange { k: u32, cols: usize },
    #[error("vanishing sequence {seq:?} is not strictly increasing in [0, {d}] with {len} terms")]
    BadVanishing { seq: Vec<u32>, d: u32, len: usize },
    #[error("cannot parse partition `{0}`")]
    Parse(String),
    #[error("classes live in different boxes")]
    BoxMismatch,
}

/// The (r+1) x (d-r) box of G(r+1, d+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoxShape {
    pub rows: usize,
    pub cols: usize,
}

impl BoxShape {
    pub fn new(rows: usize, cols: usize) -> Self {
        BoxShape { rows, cols }
    }

    pub fn for_grassmannian(r: u32, d: u32) -> Result<Self, SchubertError> {
        if r > d {
            return Err(SchubertError::BadRank { r, d });
        }
        Ok(BoxShape {
            rows: r as usize + 1,
            cols: (d - r) as usize,
        })
    }

    /// Number of cells; also the dimension of the Grassmannian.
    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn full(&self) -> Partition {
        Partition::from_vec(vec![self.cols as u32; self.rows])
    }

    pub fn contains(&self, p: &Partition) -> bool {
        p.len() <= self.rows && p.parts.first().is_none_or(|&x| x as usize <= self.cols)
    }

    /// Every partition in the box, in lexicographic order of parts.
    pub fn partitions(&self) -> Vec<Partition> {
        fn go(rows_left: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::from_vec(cur.clone()));
            if rows_left == 0 {
                return;
            }
            for x in 1..=max {
                cur.push(x);
                go(rows_left - 1, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self.rows, self.cols as u32, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Partitions in the box of a given size.
    pub fn partitions_of(&self, size: usize) -> Vec<Partition> {
        self.partitions()
            .into_iter()
            .filter(|p| p.size() == size)
            .collect()
    }
}

/// A weakly decreasing sequence of positive parts (zeros are dropped).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, SchubertError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchubertError::NotDecreasing(parts));
        }
        Ok(Self::from_vec(parts))
    }

    /// Validates against `shape` as well.
    pub fn in_box(parts: Vec<u32>, shape: BoxShape) -> Result<Self, SchubertError> {
        let p = Self::new(parts)?;
        if !shape.contains(&p) {
            return Err(SchubertError::OutOfBox {
                parts: p.parts,
                rows: shape.rows,
                cols: shape.cols,
            });
        }
        Ok(p)
    }

    fn from_vec(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The single-row partition (k).
    pub fn row(k: u32) -> Self {
        Self::from_vec(vec![k])
    }

    /// The single-column partition 1^k.
    pub fn column(k: usize) -> Self {
        Self::from_vec(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&x| x as usize).sum()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// The complementary partition in `shape`, rotated by 180 degrees.
    pub fn complement(&self, shape: BoxShape) -> Partition {
        let cols = shape.cols as u32;
        Self::from_vec(
            (0..shape.rows)
                .map(|j| cols - self.part(shape.rows - 1 - j))
                .collect(),
        )
    }

    /// Parses the comma-separated text form; empty text or `0` is the empty
    /// partition.
    pub fn parse(text: &str) -> Result<Self, SchubertError> {
        let t = text
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let parts = t
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SchubertError::Parse(text.to_string()))?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(de)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Orders of vanishing `a_0 < ... < a_r` of a g^r_d at a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VanishingSequence {
    r: u32,
    d: u32,
    seq: Vec<u32>,
}

impl VanishingSequence {
    pub fn new(r: u32, d: u32, seq: Vec<u32>) -> Result<Self, SchubertError> {
        let ok = seq.len() == r as usize + 1
            && seq.windows(2).all(|w| w[0] < w[1])
            && seq.last().is_some_and(|&x| x <= d);
        if !ok {
            return Err(SchubertError::BadVanishing {
                seq,
                d,
                len: r as usize + 1,
            });
        }
        Ok(VanishingSequence { r, d, seq })
    }

    /// No ramification: `0, 1, ..., r`.
    pub fn unramified(r: u32, d: u32) -> Result<Self, SchubertError> {
        Self::new(r, d, (0..=r).collect())
    }

    /// The sequence forced at the node of an elliptic tail:
    /// `d-r-1, d-r, ..., d-2, d`.
    pub fn elliptic_tail(r: u32, d: u32) -> Result<Self, SchubertError> {
        if d < r + 1 {
            return Err(SchubertError::BadRank { r, d });
        }
        let mut seq: Vec<u32> = (0..r).map(|i| d - r - 1 + i).collect();
        seq.push(d);
        Self::new(r, d, seq)
    }

    /// Sequence whose Schubert partition is `p`: `a_i = p_{r-i} + i`.
    pub fn from_partition(p: &Partition, r: u32, d: u32) -> Result<Self, SchubertError> {
        let shape = BoxShape::for_grassmannian(r, d)?;
        if !shape.contains(p) {
            return Err(SchubertError::OutOfBox {
                parts: p.parts.clone(),
                rows: shape.rows,
                cols: shape.cols,
            });
        }
        Self::new(
            r,
            d,
            (0..=r).map(|i| p.part((r - i) as usize) + i).collect(),
        )
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.seq
    }

    /// The sequence making every compatibility inequality an equality:
    /// `a'_j = d - a_{r-j}`.
    pub fn complementary(&self) -> VanishingSequence {
        let r = self.r as usize;
        VanishingSequence {
            r: self.r,
            d: self.d,
            seq: (0..=r).map(|j| self.d - self.seq[r - j]).collect(),
        }
    }

    pub fn shape(&self) -> BoxShape {
        BoxShape::for_grassmannian(self.r, self.d).expect("validated on construction")
    }
}

impl Serialize for VanishingSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.seq.serialize(s)
    }
}

/// Schubert index of a vanishing sequence: `λ_j = a_{r-j} - (r-j)`.
pub fn vanishing_to_partition(a: &VanishingSequence) -> Partition {
    let r = a.r as usize;
    Partition::from_vec((0..=r).map(|j| a.seq[r - j] - (r - j) as u32).collect())
}

pub fn complement_partition(p: &Partition, shape: BoxShape) -> Partition {
    p.complement(shape)
}

/// A formal nonnegative integer combination of Schubert classes in one box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCombination {
    shape: BoxShape,
    terms: BTreeMap<Partition, BigUint>,
}

impl ClassCombination {
    pub fn zero(shape: BoxShape) -> Self {
        ClassCombination {
            shape,
            terms: BTreeMap::new(),
        }
    }

    /// The unit class σ_∅.
    pub fn one(shape: BoxShape) -> Self {
        Self::class(shape, Partition::empty())
    }

    /// A single class with coefficient 1 (zero if outside the box).
    pub fn class(shape: BoxShape, p: Partition) -> Self {
        let mut c = Self::zero(shape);
        c.add_term(p, BigUint::one());
        c
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigUint> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> BigUint {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// Adds `coef * σ_p`, dropping classes outside the box.
    pub fn add_term(&mut self, p: Partition, coef: BigUint) {
        if coef.is_zero() || !self.shape.contains(&p) {
            return;
        }
        *self.terms.entry(p).or_default() += coef;
    }

    pub fn add(&mut self, other: &ClassCombination) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn scaled(&self, k: &BigUint) -> ClassCombination {
        let mut out = Self::zero(self.shape);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * k);
        }
        out
    }

    /// Multiplies by σ_p using Littlewood-Richardson coefficients, or the
    /// Pieri rule when `p` is a single row.
    pub fn times_class(&self, p: &Partition) -> ClassCombination {
        if p.len() == 1 {
            return pieri_product(self, p.part(0)).expect("row fits");
        }
        let mut out = Self::zero(self.shape);
        for (q, c) in &self.terms {
            out.add(&lr_product(q, p, self.shape).scaled(c));
        }
        out
    }

    pub fn product(&self, other: &ClassCombination) -> Result<ClassCombination, SchubertError> {
        if self.shape != other.shape {
            return Err(SchubertError::BoxMismatch);
        }
        let mut out = Self::zero(self.shape);
        for (p, c) in &other.terms {
            out.add(&self.times_class(p).scaled(c));
        }
        Ok(out)
    }

    /// Coefficient of the class of a point.
    pub fn degree(&self) -> BigUint {
        self.coefficient(&self.shape.full())
    }
}

impl fmt::Display for ClassCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c}*σ[{p}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiplies by the special class σ_k: add k boxes, no two in one column.
pub fn pieri_product(c: &ClassCombination, k: u32) -> Result<ClassCombination, SchubertError> {
    let shape = c.shape;
    if k == 0 || k as usize > shape.cols {
        return Err(SchubertError::SpecialOutOfRange {
            k,
            cols: shape.cols,
        });
    }
    let mut out = ClassCombination::zero(shape);
    for (lambda, coef) in &c.terms {
        for nu in horizontal_strips(lambda, k, shape) {
            out.add_term(nu, coef.clone());
        }
    }
    Ok(out)
}

/// Partitions ν in `shape` with ν/λ a horizontal strip of size k.
fn horizontal_strips(lambda: &Partition, k: u32, shape: BoxShape) -> Vec<Partition> {
    fn go(
        row: usize,
        remaining: u32,
        lambda: &Partition,
        shape: BoxShape,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if row == shape.rows {
            if remaining == 0 {
                out.push(Partition::from_vec(cur.clone()));
            }
            return;
        }
        let low = lambda.part(row);
        // ν_row may not pass the row above in λ (strip condition) nor the box.
        let high = if row == 0 {
            shape.cols as u32
        } else {
            lambda.part(row - 1)
        };
        for x in low..=high.min(low + remaining) {
            cur.push(x);
            go(row + 1, remaining - (x - low), lambda, shape, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lambda.len() > shape.rows {
        return out;
    }
    go(0, k, lambda, shape, &mut Vec::new(), &mut out);
    out
}

/// σ_λ · σ_μ truncated to `shape`, coefficients counted as LR tableaux.
pub fn lr_product(lambda: &Partition, mu: &Partition, shape: BoxShape) -> ClassCombination {
    let mut out = ClassCombination::zero(shape);
    if !shape.contains(lambda) || !shape.contains(mu) {
        return out;
    }
    let target = lambda.size() + mu.size();
    if target > shape.area() {
        return out;
    }
    for nu in shape.partitions_of(target) {
        if nu.contains(lambda) && nu.contains(mu) {
            let c = lr_coefficient(lambda, mu, &nu);
            if c > 0 {
                out.add_term(nu, BigUint::from(c));
            }
        }
    }
    out
}

/// Number of semistandard fillings of ν/λ with content μ whose reverse
/// reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    // Cells in reading order: rows top to bottom, each right to left.
    let mut cells = Vec::new();
    for i in 0..nu.len() {
        for j in (lambda.part(i)..nu.part(i)).rev() {
            cells.push((i, j as usize));
        }
    }
    let width = nu.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; nu.len()];
    let mut counts = vec![0u32; mu.len() + 1];
    let mut total = 0;
    lr_fill(0, &cells, lambda, mu, &mut grid, &mut counts, &mut total);
    total
}

fn lr_fill(
    idx: usize,
    cells: &[(usize, usize)],
    lambda: &Partition,
    mu: &Partition,
    grid: &mut [Vec<u32>],
    counts: &mut [u32],
    total: &mut u64,
) {
    if idx == cells.len() {
        *total += 1;
        return;
    }
    let (i, j) = cells[idx];
    // Row weakly increases: bounded by the already-placed cell to the right.
    let mut hi = mu.len() as u32;
    if j + 1 < grid[i].len() && grid[i][j + 1] != 0 {
        hi = hi.min(grid[i][j + 1]);
    }
    // Column strictly increases below a skew cell of the row above.
    let lo = if i > 0 && j as u32 >= lambda.part(i - 1) {
        grid[i - 1][j] + 1
    } else {
        1
    };
    for v in lo..=hi {
        let vi = v as usize;
        if counts[vi] >= mu.part(vi - 1) {
            continue;
        }
        if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        grid[i][j] = v;
        lr_fill(idx + 1, cells, lambda, mu, grid, counts, total);
        grid[i][j] = 0;
        counts[vi] -= 1;
    }
}

/// Degree of the product of the given classes: the coefficient of the point
/// class, zero unless the codimensions add up to the dimension.
pub fn intersection_number(conditions: &[Partition], shape: BoxShape) -> BigUint {
    if conditions.iter().any(|p| !shape.contains(p)) {
        return BigUint::zero();
    }
    if conditions.iter().map(Partition::size).sum::<usize>() != shape.area() {
        return BigUint::zero();
    }
    let mut sorted: Vec<&Partition> = conditions.iter().collect();
    // Large conditions first keeps intermediate products small.
    sorted.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
    let mut acc = ClassCombination::one(shape);
    for p in sorted {
        if p.is_empty() {
            continue;
        }
        acc = acc.times_class(p);
        if acc.is_zero() {
            return BigUint::zero();
        }
    }
    acc.degree()
}

/// `intersection_number` for G(r+1, d+1).
pub fn intersection_number_rd(
    conditions: &[Partition],
    r: u32,
    d: u32,
) -> Result<BigUint, SchubertError> {
    let shape = BoxShape::for_grassmannian(r, d)?;
    for p in conditions {
        if !shape.contains(p) {
            return Err(SchubertError::OutOfBox {
                parts: p.parts.clone(),
                rows: shape.rows,
                cols: shape.cols,
            });
        }
    }
    Ok(intersection_number(conditions, shape))
}

/// Brill-Noether number ρ = g - (r+1)(g - d + r).
pub fn brill_noether_rho(g: u32, r: u32, d: u32) -> i64 {
    let (g, r, d) = (g as i64, r as i64, d as i64);
    g - (r + 1) * (g - d + r)
}

/// Standard Young tableaux of a rows x cols rectangle, by the hook length
/// formula.
pub fn syt_rectangle_count(rows: usize, cols: usize) -> BigUint {
    let n = rows * cols;
    let mut numerator = BigUint::one();
    for k in 2..=n {
        numerator *= BigUint::from(k);
    }
    let mut hooks = BigUint::one();
    for i in 0..rows {
        for j in 0..cols {
            hooks *= BigUint::from((rows - i) + (cols - j) - 1);
        }
    }
    numerator / hooks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    const G24: BoxShape = BoxShape { rows: 2, cols: 2 };

    #[test]
    fn vanishing_dictionary() {
        let a = VanishingSequence::unramified(2, 5).unwrap();
        assert!(vanishing_to_partition(&a).is_empty());
        let tail = VanishingSequence::new(1, 3, vec![1, 3]).unwrap();
        assert_eq!(vanishing_to_partition(&tail), p(&[2, 1]));
        assert_eq!(VanishingSequence::elliptic_tail(1, 3).unwrap(), tail);
        let main = VanishingSequence::new(1, 3, vec![0, 2]).unwrap();
        assert_eq!(vanishing_to_partition(&main), p(&[1]));
        assert_eq!(tail.complementary(), main);
        assert_eq!(
            VanishingSequence::from_partition(&p(&[2, 1]), 1, 3).unwrap(),
            tail
        );
    }

    #[test]
    fn tail_partition_is_box_minus_corner() {
        for r in 1..4 {
            for d in r + 1..r + 5 {
                let shape = BoxShape::for_grassmannian(r, d).unwrap();
                let tail = vanishing_to_partition(&VanishingSequence::elliptic_tail(r, d).unwrap());
                assert_eq!(tail.size(), shape.area() - r as usize);
                assert_eq!(tail.complement(shape), Partition::column(r as usize));
            }
        }
    }

    #[test]
    fn malformed_vanishing_rejected() {
        assert!(VanishingSequence::new(1, 3, vec![2, 1]).is_err());
        assert!(VanishingSequence::new(1, 3, vec![1, 4]).is_err());
        assert!(VanishingSequence::new(1, 3, vec![1]).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Partition::empty().complement(G24), p(&[2, 2]));
        assert_eq!(p(&[2, 1]).complement(G24), p(&[1]));
        assert_eq!(p(&[2, 2]).complement(G24), Partition::empty());
    }

    #[test]
    fn pieri_examples() {
        let s1 = ClassCombination::class(G24, p(&[1]));
        let sq = pieri_product(&s1, 1).unwrap();
        assert_eq!(sq.terms().len(), 2);
        assert_eq!(sq.coefficient(&p(&[2])), big(1));
        assert_eq!(sq.coefficient(&p(&[1, 1])), big(1));
        assert_eq!(sq.to_string(), "1*σ[1,1] + 1*σ[2]");

        let s21 = ClassCombination::class(G24, p(&[2, 1]));
        assert_eq!(
            pieri_product(&s21, 1).unwrap(),
            ClassCombination::class(G24, p(&[2, 2]))
        );

        let shape = BoxShape::new(3, 4);
        let almost = ClassCombination::class(shape, p(&[4, 4]));
        assert_eq!(
            pieri_product(&almost, 4).unwrap(),
            ClassCombination::class(shape, p(&[4, 4, 4]))
        );
        let gap = ClassCombination::class(shape, p(&[4, 4, 1]));
        assert!(pieri_product(&gap, 4).unwrap().is_zero());
        assert!(pieri_product(&gap, 5).is_err());
        assert!(pieri_product(&gap, 0).is_err());
    }

    #[test]
    fn lr_examples() {
        let mu = p(&[2, 1]);
        assert_eq!(
            lr_product(&Partition::empty(), &mu, G24),
            ClassCombination::class(G24, mu)
        );
        let via_pieri = pieri_product(&ClassCombination::class(G24, p(&[1])), 1).unwrap();
        assert_eq!(lr_product(&p(&[1]), &p(&[1]), G24), via_pieri);
        assert_eq!(
            lr_product(&p(&[1, 1]), &p(&[1, 1]), G24),
            ClassCombination::class(G24, p(&[2, 2]))
        );
    }

    #[test]
    fn classic_lr_coefficient() {
        // c^{321}_{21,21} = 2 is the smallest coefficient above 1.
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[4, 2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[2, 2, 2])), 1);
    }

    #[test]
    fn intersection_examples() {
        let ones = vec![p(&[1]); 4];
        assert_eq!(intersection_number(&ones, G24), big(2));
        assert_eq!(intersection_number(&[p(&[2, 1]), p(&[1])], G24), big(1));
        assert_eq!(intersection_number(&[p(&[2, 1])], G24), big(0));
        // Lines meeting four general lines in P^3, counted in G(2,4).
        assert_eq!(intersection_number_rd(&ones, 1, 3).unwrap(), big(2));
        assert!(intersection_number_rd(&[p(&[3])], 1, 3).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(brill_noether_rho(4, 1, 3), 0);
        assert_eq!(brill_noether_rho(6, 1, 4), 0);
        for d in 0..6 {
            for r in 0..=d {
                assert_eq!(brill_noether_rho(0, r, d), ((r + 1) * (d - r)) as i64);
            }
        }
        assert_eq!(brill_noether_rho(5, 1, 3), -1);
    }

    #[test]
    fn syt_examples() {
        for n in 1..8 {
            assert_eq!(syt_rectangle_count(1, n), big(1));
        }
        assert_eq!(syt_rectangle_count(2, 2), big(2));
        assert_eq!(syt_rectangle_count(2, 3), big(5));
        assert_eq!(syt_rectangle_count(3, 3), big(42));
    }

    #[test]
    fn partition_text_form() {
        assert_eq!(Partition::parse("2,1").unwrap(), p(&[2, 1]));
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("0").unwrap(), Partition::empty());
        assert!(Partition::parse("1,2").is_err());
        assert!(Partition::parse("x").is_err());
        assert!(Partition::in_box(vec![3], G24).is_err());
    }

    #[test]
    fn box_enumeration_counts() {
        // Binomial(rows + cols, rows) partitions fit in the box.
        assert_eq!(BoxShape::new(2, 2).partitions().len(), 6);
        assert_eq!(BoxShape::new(3, 4).partitions().len(), 35);
        assert_eq!(BoxShape::new(2, 0).partitions().len(), 1);
    }
}
