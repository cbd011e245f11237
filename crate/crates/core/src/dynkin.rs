//! Simply-laced Dynkin diagrams, their orientations and root systems.
//!
//! Vertices are 0-based internally. Everything user-facing (labels, JSON
//! arrow lists) is 1-based, following the canonical numbering:
//!
//! * `A_n`: the path `1 - 2 - ... - n`
//! * `D_n`: the path `1 - ... - (n-2)` with `n-1` and `n` attached to `n-2`
//! * `E_n`: Bourbaki, i.e. the path `1 - 3 - 4 - ... - n` with `2` attached to `4`

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DynkinType {
    series: Series,
    rank: usize,
}

impl DynkinType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidType(format!("{series:?}{rank}")));
        }
        Ok(DynkinType { series, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Series::A, rank).expect("A_n needs n >= 1")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Series::D, rank).expect("D_n needs n >= 4")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Series::E, rank).expect("E_n needs n in 6..=8")
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Undirected edges of the diagram as 0-based pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.series {
            Series::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Series::D => {
                let mut e: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            Series::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.rank];
        for (i, j) in self.edges() {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn coxeter_number(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n + 1,
            Series::D => 2 * n - 2,
            Series::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    /// Number of positive roots, `n * h / 2`.
    pub fn positive_root_count(&self) -> usize {
        self.rank * self.coxeter_number() / 2
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('D') => Series::D,
            Some('E') => Series::E,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest
            .parse::<usize>()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        DynkinType::new(series, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(h, m)`: the Coxeter number and `m = h - 1`, the bound on nonzero path
/// lengths in the mesh category of `Z Delta`.
pub fn coxeter_data(ty: DynkinType) -> (usize, usize) {
    let h = ty.coxeter_number();
    (h, h - 1)
}

/// An orientation of a Dynkin diagram. Arrows are 0-based `(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    ty: DynkinType,
    arrows: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn new(ty: DynkinType, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = ty.rank();
        let mut seen = HashSet::new();
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(Error::InvalidOrientation(format!(
                    "arrow {}->{} leaves the diagram",
                    s + 1,
                    t + 1
                )));
            }
            if s == t {
                return Err(Error::InvalidOrientation(format!("loop at {}", s + 1)));
            }
            if !seen.insert((s.min(t), s.max(t))) {
                return Err(Error::InvalidOrientation(format!(
                    "edge {}-{} oriented twice",
                    s + 1,
                    t + 1
                )));
            }
        }
        let expected: HashSet<_> = ty.edges().into_iter().collect();
        if seen != expected {
            return Err(Error::InvalidOrientation(format!(
                "arrows do not orient exactly the edges of {ty}"
            )));
        }
        let mut arrows = arrows;
        arrows.sort_unstable();
        Ok(Orientation { ty, arrows })
    }

    /// Build from 1-based arrow pairs, as used in JSON and on the command line.
    pub fn from_one_based(ty: DynkinType, arrows: &[(usize, usize)]) -> Result<Self> {
        let shifted = arrows
            .iter()
            .map(|&(s, t)| {
                if s == 0 || t == 0 {
                    Err(Error::InvalidOrientation("vertices are numbered from 1".into()))
                } else {
                    Ok((s - 1, t - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Orientation::new(ty, shifted)
    }

    /// Every edge `(i, i+1)`-style pair oriented from the smaller to the larger index.
    pub fn linear(ty: DynkinType) -> Self {
        Orientation::new(ty, ty.edges()).expect("diagram edges form a valid orientation")
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn opposite(&self) -> Self {
        let arrows = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        Orientation::new(self.ty, arrows).expect("reversal keeps the diagram")
    }

    /// `paths[i][j]` = number of paths from `i` to `j` (0 or 1 on a tree).
    pub fn path_counts(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut out = vec![Vec::new(); n];
        for &(s, t) in &self.arrows {
            out[s].push(t);
        }
        let mut paths = vec![vec![0i64; n]; n];
        for (start, row) in paths.iter_mut().enumerate() {
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                row[v] += 1;
                queue.extend(out[v].iter().copied());
            }
        }
        paths
    }
}

#[derive(Serialize, Deserialize)]
struct OrientationJson {
    #[serde(rename = "type")]
    ty: DynkinType,
    arrows: Vec<[usize; 2]>,
}

impl Serialize for Orientation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrientationJson {
            ty: self.ty,
            arrows: self.arrows.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = OrientationJson::deserialize(d)?;
        let pairs: Vec<_> = raw.arrows.iter().map(|a| (a[0], a[1])).collect();
        Orientation::from_one_based(raw.ty, &pairs).map_err(serde::de::Error::custom)
    }
}

/// A partition of the vertices into two totally disconnected parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    plus: BTreeSet<usize>,
    minus: BTreeSet<usize>,
}

impl Bipartition {
    pub fn new(ty: DynkinType, plus: BTreeSet<usize>) -> Result<Self> {
        let minus: BTreeSet<usize> = (0..ty.rank()).filter(|v| !plus.contains(v)).collect();
        if plus.iter().any(|&v| v >= ty.rank()) {
            return Err(Error::InvalidType("bipartition vertex out of range".into()));
        }
        for (i, j) in ty.edges() {
            if plus.contains(&i) == plus.contains(&j) {
                return Err(Error::InvalidType(format!(
                    "edge {}-{} lies inside one part",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(Bipartition { plus, minus })
    }

    pub fn plus(&self) -> &BTreeSet<usize> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<usize> {
        &self.minus
    }

    pub fn swapped(&self) -> Self {
        Bipartition {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    pub fn part(&self, sign: Sign) -> &BTreeSet<usize> {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Two-colour the tree by parity of the distance from vertex 1. The even class
/// is `I-`, the odd class `I+`, and every arrow points from `I-` to `I+`.
pub fn alternating_orientation(ty: DynkinType) -> (Orientation, Bipartition) {
    let adj = ty.neighbours();
    let mut parity = vec![usize::MAX; ty.rank()];
    parity[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if parity[w] == usize::MAX {
                parity[w] = 1 - parity[v];
                queue.push_back(w);
            }
        }
    }
    let arrows = ty
        .edges()
        .into_iter()
        .map(|(i, j)| if parity[i] == 0 { (i, j) } else { (j, i) })
        .collect();
    let plus = (0..ty.rank()).filter(|&v| parity[v] == 1).collect();
    (
        Orientation::new(ty, arrows).expect("parity colouring orients every edge once"),
        Bipartition::new(ty, plus).expect("parity classes are totally disconnected"),
    )
}

/// An element of the almost positive roots: a positive root, or `-alpha_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlmostPositiveRoot {
    pub coeffs: Vec<i32>,
}

impl AlmostPositiveRoot {
    pub fn new(coeffs: Vec<i32>) -> Self {
        AlmostPositiveRoot { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        AlmostPositiveRoot { coeffs }
    }

    pub fn negative_simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = -1;
        AlmostPositiveRoot { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    /// `Some(i)` when this is `-alpha_i`.
    pub fn negative_simple_index(&self) -> Option<usize> {
        let mut idx = None;
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                -1 if idx.is_none() => idx = Some(i),
                _ => return None,
            }
        }
        idx
    }

    /// Compact label: `-i` for negative simples, otherwise each index repeated by
    /// its coefficient (`1+2+3` is `"123"`, `a1+2a2+a3` is `"1223"`).
    pub fn label(&self) -> String {
        if let Some(i) = self.negative_simple_index() {
            return format!("-{}", i + 1);
        }
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            for _ in 0..c.max(0) {
                s.push_str(&(i + 1).to_string());
            }
        }
        s
    }

    /// Parse a compact label (`"123"`, `"-2"`) or a bracketed coefficient list
    /// (`"[1,1,0]"`).
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidRoot(s.to_string());
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<i32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != rank {
                return Err(bad());
            }
            return Ok(AlmostPositiveRoot { coeffs });
        }
        if let Some(rest) = s.strip_prefix('-') {
            let i: usize = rest.parse().map_err(|_| bad())?;
            if i == 0 || i > rank {
                return Err(bad());
            }
            return Ok(Self::negative_simple(rank, i - 1));
        }
        if s.is_empty() {
            return Err(bad());
        }
        let mut coeffs = vec![0; rank];
        for ch in s.chars() {
            let d = ch.to_digit(10).ok_or_else(bad)? as usize;
            if d == 0 || d > rank {
                return Err(bad());
            }
            coeffs[d - 1] += 1;
        }
        Ok(AlmostPositiveRoot { coeffs })
    }
}

impl fmt::Display for AlmostPositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Graded order: negative simples first (by index), then positive roots by
/// height, ties broken by descending lexicographic order of the coefficients
/// (so `alpha_1` precedes `alpha_2`).
impl Ord for AlmostPositiveRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative_simple_index(), other.negative_simple_index()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self
                .height()
                .cmp(&other.height())
                .then_with(|| other.coeffs.cmp(&self.coeffs)),
        }
    }
}

impl PartialOrd for AlmostPositiveRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(beta, alpha_i)` for the symmetric form of the simply-laced root system.
fn pairing(adj: &[Vec<usize>], beta: &[i32], i: usize) -> i32 {
    2 * beta[i] - adj[i].iter().map(|&j| beta[j]).sum::<i32>()
}

fn reflect(adj: &[Vec<usize>], beta: &[i32], i: usize) -> Vec<i32> {
    let p = pairing(adj, beta, i);
    let mut out = beta.to_vec();
    out[i] -= p;
    out
}

/// All positive roots in graded order.
pub fn positive_roots(ty: DynkinType) -> Vec<AlmostPositiveRoot> {
    let n = ty.rank();
    let adj = ty.neighbours();
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
    for i in 0..n {
        let s = AlmostPositiveRoot::simple(n, i).coeffs;
        seen.insert(s.clone());
        queue.push_back(s);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let r = reflect(&adj, &beta, i);
            if r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<_> = seen.into_iter().map(AlmostPositiveRoot::new).collect();
    roots.sort();
    roots
}

/// Positive roots together with the negative simples, in graded order.
pub fn almost_positive_roots(ty: DynkinType) -> Vec<AlmostPositiveRoot> {
    let n = ty.rank();
    let mut out: Vec<_> = (0..n).map(|i| AlmostPositiveRoot::negative_simple(n, i)).collect();
    out.extend(positive_roots(ty));
    out
}

/// The piecewise reflection `sigma_i` on almost positive roots: fixes `-alpha_j`
/// for `j != i`, acts as the simple reflection `s_i` otherwise.
pub fn sigma(ty: DynkinType, i: usize, a: &AlmostPositiveRoot) -> AlmostPositiveRoot {
    if let Some(j) = a.negative_simple_index() {
        if j != i {
            return a.clone();
        }
    }
    AlmostPositiveRoot::new(reflect(&ty.neighbours(), &a.coeffs, i))
}

/// Product of `sigma_i` over one part of the bipartition. The factors commute.
pub fn tau_pm(ty: DynkinType, sign: Sign, a: &AlmostPositiveRoot, bip: &Bipartition) -> AlmostPositiveRoot {
    bip.part(sign)
        .iter()
        .fold(a.clone(), |acc, &i| sigma(ty, i, &acc))
}

/// Compatibility degree `(a || b)`.
///
/// Applies `tau_+`, `tau_-`, `tau_+`, ... to both arguments until the first one
/// becomes a negative simple `-alpha_i`, then reads off the `alpha_i`
/// coefficient of the second. Equal arguments have degree 0 by convention.
pub fn compatibility_degree(
    ty: DynkinType,
    a: &AlmostPositiveRoot,
    b: &AlmostPositiveRoot,
    bip: &Bipartition,
) -> Result<u32> {
    if a == b {
        return Ok(0);
    }
    let cap = 2 * (ty.coxeter_number() + 2);
    let (mut x, mut y) = (a.clone(), b.clone());
    let mut sign = Sign::Plus;
    for _ in 0..=cap {
        if let Some(i) = x.negative_simple_index() {
            return Ok(y.coeffs[i].max(0) as u32);
        }
        x = tau_pm(ty, sign, &x, bip);
        y = tau_pm(ty, sign, &y, bip);
        sign = match sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
    }
    Err(Error::NoReduction(cap))
}

/// Euler form `<d, e> = sum_i d_i e_i - sum_{i -> j} d_i e_j`.
pub fn euler_form(d: &[i32], e: &[i32], q: &Orientation) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(&a, &b)| a as i64 * b as i64).sum();
    let off: i64 = q
        .arrows()
        .iter()
        .map(|&(i, j)| d[i] as i64 * e[j] as i64)
        .sum();
    diag - off
}
