//! Translation quivers: the AR-quiver of `mod kQ` obtained by knitting, labelled
//! windows of `Z Q` modelling the derived category, and the finite quotient
//! modelling the cluster category.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::dynkin::{positive_roots, AlmostPositiveRoot, Orientation};
use crate::error::{Error, Result};

/// A finite quiver with a partial translation.
///
/// The constructor enforces: no loops, no multiple arrows, `tau` injective, and
/// `x^- = tau(x)^+` wherever `tau(x)` is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationQuiver {
    arrows: Vec<(usize, usize)>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
    arrow_index: HashMap<(usize, usize), usize>,
}

impl TranslationQuiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>, tau: Vec<Option<usize>>) -> Result<Self> {
        if tau.len() != n {
            return Err(Error::InvalidQuiver("tau must have one entry per vertex".into()));
        }
        let mut arrow_index = HashMap::new();
        let mut out_arrows = vec![Vec::new(); n];
        let mut in_arrows = vec![Vec::new(); n];
        for (k, &(s, t)) in arrows.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::InvalidQuiver(format!("arrow {s}->{t} out of range")));
            }
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at {s}")));
            }
            if arrow_index.insert((s, t), k).is_some() {
                return Err(Error::InvalidQuiver(format!("multiple arrows {s}->{t}")));
            }
            out_arrows[s].push(k);
            in_arrows[t].push(k);
        }
        let mut tau_inv = vec![None; n];
        for (x, t) in tau.iter().enumerate() {
            if let Some(t) = *t {
                if t >= n {
                    return Err(Error::InvalidQuiver(format!("tau({x}) out of range")));
                }
                if tau_inv[t].replace(x).is_some() {
                    return Err(Error::InvalidQuiver(format!("tau is not injective at {t}")));
                }
            }
        }
        let q = TranslationQuiver {
            arrows,
            tau,
            tau_inv,
            out_arrows,
            in_arrows,
            arrow_index,
        };
        for x in 0..n {
            if let Some(tx) = q.tau[x] {
                let pred: BTreeSet<_> = q.predecessors(x).collect();
                let succ: BTreeSet<_> = q.successors(tx).collect();
                if pred != succ {
                    return Err(Error::InvalidQuiver(format!(
                        "mesh condition fails at {x}: predecessors {pred:?}, successors of tau {succ:?}"
                    )));
                }
            }
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.tau.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn tau(&self, x: usize) -> Option<usize> {
        self.tau[x]
    }

    pub fn tau_inv(&self, x: usize) -> Option<usize> {
        self.tau_inv[x]
    }

    pub fn is_stable(&self) -> bool {
        self.tau.iter().all(Option::is_some)
    }

    pub fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arrows[x].iter().map(move |&a| self.arrows[a].1)
    }

    pub fn predecessors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_arrows[x].iter().map(move |&a| self.arrows[a].0)
    }

    pub fn out_arrows(&self, x: usize) -> &[usize] {
        &self.out_arrows[x]
    }

    pub fn in_arrows(&self, x: usize) -> &[usize] {
        &self.in_arrows[x]
    }

    pub fn arrow(&self, a: usize) -> (usize, usize) {
        self.arrows[a]
    }

    pub fn find_arrow(&self, s: usize, t: usize) -> Option<usize> {
        self.arrow_index.get(&(s, t)).copied()
    }

    /// Polarization: for `a: x -> y` with `tau(y)` defined, the arrow `tau(y) -> x`.
    pub fn polarization(&self, a: usize) -> Option<usize> {
        let (x, y) = self.arrows[a];
        self.tau[y].and_then(|ty| self.find_arrow(ty, x))
    }

    /// Sizes of the tau-orbits (or maximal tau-chains when tau is partial).
    pub fn tau_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            // walk back to the start of a chain, or around a cycle
            let mut first = start;
            while let Some(t) = self.tau[first] {
                if t == start {
                    break;
                }
                first = t;
            }
            let mut orbit = Vec::new();
            let mut v = Some(first);
            while let Some(x) = v {
                if seen[x] {
                    break;
                }
                seen[x] = true;
                orbit.push(x);
                v = self.tau_inv[x];
            }
            orbits.push(orbit);
        }
        orbits
    }
}

/// A vertex of the AR-quiver of `mod kQ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleVertex {
    pub root: AlmostPositiveRoot,
    /// `Some(i)` when this module is the projective `P_i`.
    pub projective: Option<usize>,
    /// `Some(i)` when this module is the injective `I_i`.
    pub injective: Option<usize>,
}

/// The AR-quiver of `mod kQ` with its dimension-vector labelling.
#[derive(Debug, Clone)]
pub struct ModuleQuiver {
    orientation: Orientation,
    quiver: TranslationQuiver,
    vertices: Vec<ModuleVertex>,
    by_root: HashMap<Vec<i32>, usize>,
    projectives: Vec<usize>,
    injectives: Vec<usize>,
}

fn add_into(acc: &mut [i32], v: &[i32]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// Knit the AR-quiver of `mod kQ` from the projectives using mesh additivity of
/// dimension vectors.
///
/// Vertex ids are assigned at creation: `P_1, ..., P_n` first, then every
/// `tau^-1 V` in the order the frontier (smallest ready id first) produces it.
pub fn knit_module_ar_quiver(q: &Orientation) -> Result<ModuleQuiver> {
    let n = q.rank();
    let t = q.dynkin_type().positive_root_count();
    let paths = q.path_counts();

    let mut dims: Vec<Vec<i32>> = (0..n)
        .map(|i| paths[i].iter().map(|&c| c as i32).collect())
        .collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut proj_succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut arrows = Vec::new();
    for &(i, j) in q.arrows() {
        // rad P_i contains P_j for every arrow i -> j
        preds[i].push(j);
        proj_succ[j].push(i);
        arrows.push((j, i));
    }
    let mut projective: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut injective: Vec<Option<usize>> = vec![None; n];
    let mut tau: Vec<Option<usize>> = vec![None; n];
    let mut tau_inv: Vec<Option<usize>> = vec![None; n];
    let mut processed: Vec<bool> = vec![false; n];

    loop {
        let ready = (0..dims.len()).find(|&v| !processed[v] && preds[v].iter().all(|&u| processed[u]));
        let Some(v) = ready else { break };
        processed[v] = true;

        let mut succ: Vec<usize> = preds[v].iter().filter_map(|&u| tau_inv[u]).collect();
        succ.extend(proj_succ.get(v).into_iter().flatten().copied());
        succ.sort_unstable();

        let mut next = vec![0i32; n];
        for &s in &succ {
            add_into(&mut next, &dims[s]);
        }
        for (a, b) in next.iter_mut().zip(&dims[v]) {
            *a -= b;
        }
        if next.iter().any(|&c| c < 0) {
            let neg = AlmostPositiveRoot::new(next.clone());
            match neg.negative_simple_index() {
                Some(i) => injective[v] = Some(i),
                None => {
                    return Err(Error::InvalidQuiver(format!(
                        "mesh at vertex {v} yields {next:?}, neither a root nor -e_i"
                    )))
                }
            }
            continue;
        }
        if next.iter().all(|&c| c == 0) {
            return Err(Error::InvalidQuiver(format!("zero dimension vector after vertex {v}")));
        }
        let w = dims.len();
        if w >= t {
            return Err(Error::KnittingDiverged(t));
        }
        dims.push(next);
        for &s in &succ {
            arrows.push((s, w));
        }
        preds.push(succ);
        projective.push(None);
        injective.push(None);
        tau.push(Some(v));
        tau_inv.push(None);
        tau_inv[v] = Some(w);
        processed.push(false);
    }

    if dims.len() != t {
        return Err(Error::InvalidQuiver(format!(
            "knitting stopped at {} vertices, expected {t}",
            dims.len()
        )));
    }
    let quiver = TranslationQuiver::new(dims.len(), arrows, tau)?;
    let vertices: Vec<ModuleVertex> = dims
        .into_iter()
        .enumerate()
        .map(|(v, d)| ModuleVertex {
            root: AlmostPositiveRoot::new(d),
            projective: projective[v],
            injective: injective[v],
        })
        .collect();
    let by_root: HashMap<_, _> = vertices
        .iter()
        .enumerate()
        .map(|(v, m)| (m.root.coeffs.clone(), v))
        .collect();
    if by_root.len() != vertices.len() {
        return Err(Error::InvalidQuiver("a dimension vector occurs twice".into()));
    }
    let mut injectives = vec![usize::MAX; n];
    for (v, m) in vertices.iter().enumerate() {
        if let Some(i) = m.injective {
            injectives[i] = v;
        }
    }
    if injectives.contains(&usize::MAX) {
        return Err(Error::InvalidQuiver("some injective was not found".into()));
    }
    Ok(ModuleQuiver {
        orientation: q.clone(),
        quiver,
        vertices,
        by_root,
        projectives: (0..n).collect(),
        injectives,
    })
}

/// An indecomposable object `M[shift]` of the bounded derived category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DerivedObject {
    pub root: AlmostPositiveRoot,
    pub shift: i32,
}

impl DerivedObject {
    pub fn new(root: AlmostPositiveRoot, shift: i32) -> Self {
        DerivedObject { root, shift }
    }
}

/// An indecomposable object of the cluster category, named by its
/// representative in the fundamental domain: a module, or `P_i[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClusterObject {
    Module(AlmostPositiveRoot),
    /// `P_i[1]`, with `i` a 0-based vertex.
    ShiftedProjective(usize),
}

impl ClusterObject {
    /// The almost positive root attached to the object: modules go to their
    /// dimension vector, `P_i[1]` to `-alpha_i`.
    pub fn gamma(&self, rank: usize) -> AlmostPositiveRoot {
        match self {
            ClusterObject::Module(r) => r.clone(),
            ClusterObject::ShiftedProjective(i) => AlmostPositiveRoot::negative_simple(rank, *i),
        }
    }

    pub fn from_gamma(root: &AlmostPositiveRoot) -> Result<Self> {
        if let Some(i) = root.negative_simple_index() {
            Ok(ClusterObject::ShiftedProjective(i))
        } else if root.is_positive() {
            Ok(ClusterObject::Module(root.clone()))
        } else {
            Err(Error::InvalidRoot(format!("{:?} is not almost positive", root.coeffs)))
        }
    }

    pub fn is_module(&self) -> bool {
        matches!(self, ClusterObject::Module(_))
    }

    pub fn label(&self, rank: usize) -> String {
        self.gamma(rank).label()
    }
}

impl Ord for ClusterObject {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = match (self, other) {
            (ClusterObject::Module(r), _) | (_, ClusterObject::Module(r)) => r.rank(),
            _ => usize::MAX,
        };
        match (self, other) {
            (ClusterObject::ShiftedProjective(a), ClusterObject::ShiftedProjective(b)) => a.cmp(b),
            _ => self.gamma(rank).cmp(&other.gamma(rank)),
        }
    }
}

impl PartialOrd for ClusterObject {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ModuleQuiver {
    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn rank(&self) -> usize {
        self.orientation.rank()
    }

    pub fn quiver(&self) -> &TranslationQuiver {
        &self.quiver
    }

    pub fn vertices(&self) -> &[ModuleVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn root(&self, v: usize) -> &AlmostPositiveRoot {
        &self.vertices[v].root
    }

    pub fn vertex_of(&self, root: &AlmostPositiveRoot) -> Option<usize> {
        self.by_root.get(&root.coeffs).copied()
    }

    pub fn projective(&self, i: usize) -> usize {
        self.projectives[i]
    }

    pub fn injective(&self, i: usize) -> usize {
        self.injectives[i]
    }

    fn vertex_or_panic(&self, root: &AlmostPositiveRoot) -> usize {
        self.vertex_of(root)
            .unwrap_or_else(|| panic!("{:?} is not a positive root of this quiver", root.coeffs))
    }

    /// AR-translation of the derived category: module `tau` off projectives,
    /// `tau(P_i) = I_i[-1]`.
    pub fn tau_derived(&self, x: &DerivedObject) -> DerivedObject {
        let v = self.vertex_or_panic(&x.root);
        match self.vertices[v].projective {
            Some(i) => DerivedObject::new(self.root(self.injectives[i]).clone(), x.shift - 1),
            None => DerivedObject::new(self.root(self.quiver.tau(v).unwrap()).clone(), x.shift),
        }
    }

    pub fn tau_inv_derived(&self, x: &DerivedObject) -> DerivedObject {
        let v = self.vertex_or_panic(&x.root);
        match self.vertices[v].injective {
            Some(i) => DerivedObject::new(self.root(self.projectives[i]).clone(), x.shift + 1),
            None => DerivedObject::new(self.root(self.quiver.tau_inv(v).unwrap()).clone(), x.shift),
        }
    }

    /// `F = tau^-1 [1]`.
    pub fn functor_f(&self, x: &DerivedObject) -> DerivedObject {
        let y = self.tau_inv_derived(x);
        DerivedObject::new(y.root, y.shift + 1)
    }

    /// `F^-1 = tau [-1]`.
    pub fn functor_f_inv(&self, x: &DerivedObject) -> DerivedObject {
        let y = self.tau_derived(x);
        DerivedObject::new(y.root, y.shift - 1)
    }

    /// `F^k` for any integer `k`.
    pub fn functor_f_pow(&self, x: &DerivedObject, k: i32) -> DerivedObject {
        let mut y = x.clone();
        for _ in 0..k.unsigned_abs() {
            y = if k > 0 { self.functor_f(&y) } else { self.functor_f_inv(&y) };
        }
        y
    }

    /// Move `x` along its `F`-orbit into the fundamental domain
    /// `ind(mod kQ) v {P_i[1]}`.
    pub fn f_normalize(&self, x: &DerivedObject) -> ClusterObject {
        let mut y = x.clone();
        loop {
            let v = self.vertex_or_panic(&y.root);
            match y.shift {
                0 => return ClusterObject::Module(y.root),
                1 => match self.vertices[v].projective {
                    Some(i) => return ClusterObject::ShiftedProjective(i),
                    None => y = self.functor_f_inv(&y),
                },
                s if s > 1 => y = self.functor_f_inv(&y),
                _ => y = self.functor_f(&y),
            }
        }
    }

    /// Representative of a cluster object in the fundamental domain.
    pub fn representative(&self, x: &ClusterObject) -> DerivedObject {
        match x {
            ClusterObject::Module(r) => DerivedObject::new(r.clone(), 0),
            ClusterObject::ShiftedProjective(i) => {
                DerivedObject::new(self.root(self.projectives[*i]).clone(), 1)
            }
        }
    }

    /// The arrows of the projective slice, `P_j -> P_i` for `i -> j` in `Q`.
    fn slice_arrows(&self) -> Vec<(usize, usize)> {
        self.orientation.arrows().iter().map(|&(i, j)| (j, i)).collect()
    }
}

/// A window `[lo, hi] x Q_0` of the stable translation quiver `Z Q`, each vertex
/// labelled by the indecomposable of the derived category it stands for.
///
/// Column 0 is the slice of projectives at shift 0. Arrows are `(c, j) -> (c, i)`
/// and `(c, i) -> (c + 1, j)` for each arrow `P_j -> P_i` of the slice, and
/// `tau (c, i) = (c - 1, i)`.
#[derive(Debug, Clone)]
pub struct ZqWindow {
    lo: i32,
    hi: i32,
    rank: usize,
    quiver: TranslationQuiver,
    labels: Vec<DerivedObject>,
    by_label: HashMap<DerivedObject, usize>,
}

impl ZqWindow {
    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn quiver(&self) -> &TranslationQuiver {
        &self.quiver
    }

    pub fn labels(&self) -> &[DerivedObject] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &DerivedObject {
        &self.labels[v]
    }

    pub fn vertex(&self, column: i32, i: usize) -> usize {
        (column - self.lo) as usize * self.rank + i
    }

    /// `(column, slice vertex)` of a window vertex.
    pub fn coords(&self, v: usize) -> (i32, usize) {
        (self.lo + (v / self.rank) as i32, v % self.rank)
    }

    pub fn vertex_of(&self, x: &DerivedObject) -> Option<usize> {
        self.by_label.get(x).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

fn zq_arrows(slice: &[(usize, usize)], rank: usize, columns: usize, wrap: bool) -> Vec<(usize, usize)> {
    let id = |c: usize, i: usize| c * rank + i;
    let mut arrows = Vec::new();
    for c in 0..columns {
        for &(j, i) in slice {
            arrows.push((id(c, j), id(c, i)));
            if c + 1 < columns {
                arrows.push((id(c, i), id(c + 1, j)));
            } else if wrap {
                arrows.push((id(c, i), id(0, j)));
            }
        }
    }
    arrows
}

pub fn zq_window(mq: &ModuleQuiver, lo: i32, hi: i32) -> Result<ZqWindow> {
    if lo > 0 || hi < 0 {
        return Err(Error::PreconditionViolated(format!(
            "window [{lo}, {hi}] must contain column 0"
        )));
    }
    let rank = mq.rank();
    let columns = (hi - lo + 1) as usize;
    let arrows = zq_arrows(&mq.slice_arrows(), rank, columns, false);
    let tau = (0..columns * rank)
        .map(|v| (v >= rank).then(|| v - rank))
        .collect();
    let quiver = TranslationQuiver::new(columns * rank, arrows, tau)?;

    let mut labels = vec![DerivedObject::new(AlmostPositiveRoot::new(vec![]), 0); columns * rank];
    let zero = (-lo) as usize;
    for i in 0..rank {
        let p = DerivedObject::new(mq.root(mq.projective(i)).clone(), 0);
        let mut x = p.clone();
        for c in zero..columns {
            labels[c * rank + i] = x.clone();
            x = mq.tau_inv_derived(&x);
        }
        let mut x = p;
        for c in (0..zero).rev() {
            x = mq.tau_derived(&x);
            labels[c * rank + i] = x.clone();
        }
    }
    let by_label = labels.iter().cloned().enumerate().map(|(v, l)| (l, v)).collect();
    Ok(ZqWindow {
        lo,
        hi,
        rank,
        quiver,
        labels,
        by_label,
    })
}

/// `Z Q / tau^period`: a stable translation quiver on `period * n` vertices,
/// vertex `(c, i)` having id `c * n + i`.
pub fn zq_cylinder(q: &Orientation, period: usize) -> Result<TranslationQuiver> {
    let rank = q.rank();
    let slice: Vec<_> = q.arrows().iter().map(|&(i, j)| (j, i)).collect();
    let arrows = zq_arrows(&slice, rank, period, true);
    let tau = (0..period * rank)
        .map(|v| Some((v + (period - 1) * rank) % (period * rank)))
        .collect();
    TranslationQuiver::new(period * rank, arrows, tau)
}

/// The AR-quiver of the cluster category with its labelling by cluster objects.
#[derive(Debug, Clone)]
pub struct ClusterQuiver {
    objects: Vec<ClusterObject>,
    index: HashMap<ClusterObject, usize>,
    quiver: TranslationQuiver,
}

impl ClusterQuiver {
    /// Objects in graded order of their labels.
    pub fn objects(&self) -> &[ClusterObject] {
        &self.objects
    }

    pub fn object(&self, v: usize) -> &ClusterObject {
        &self.objects[v]
    }

    pub fn index_of(&self, x: &ClusterObject) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn quiver(&self) -> &TranslationQuiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// `tau_C` on vertex indices. Total.
    pub fn tau(&self, v: usize) -> usize {
        self.quiver.tau(v).expect("cluster quiver is stable")
    }

    pub fn tau_inv(&self, v: usize) -> usize {
        self.quiver.tau_inv(v).expect("cluster quiver is stable")
    }

    /// `tau_C^k` for any integer `k`.
    pub fn tau_pow(&self, v: usize, k: i64) -> usize {
        let mut x = v;
        for _ in 0..k.unsigned_abs() {
            x = if k > 0 { self.tau(x) } else { self.tau_inv(x) };
        }
        x
    }

    /// Least common multiple of the tau-orbit lengths.
    pub fn tau_period(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.quiver
            .tau_orbits()
            .iter()
            .map(Vec::len)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }
}

/// `tau_C` in closed form: `M -> tau M` on non-projective modules,
/// `P_i -> P_i[1]`, `P_i[1] -> I_i`.
pub fn tau_cluster(mq: &ModuleQuiver, x: &ClusterObject) -> ClusterObject {
    match x {
        ClusterObject::Module(r) => {
            let v = mq.vertex_or_panic(r);
            match mq.vertices[v].projective {
                Some(i) => ClusterObject::ShiftedProjective(i),
                None => ClusterObject::Module(mq.root(mq.quiver.tau(v).unwrap()).clone()),
            }
        }
        ClusterObject::ShiftedProjective(i) => ClusterObject::Module(mq.root(mq.injective(*i)).clone()),
    }
}

/// Build the AR-quiver of `C` as the image of a `Z Q` window under
/// `F`-normalization, with `tau_C` from the closed form.
pub fn cluster_ar_quiver(mq: &ModuleQuiver) -> Result<ClusterQuiver> {
    let rank = mq.rank();
    let mut objects: Vec<ClusterObject> = (0..rank).map(ClusterObject::ShiftedProjective).collect();
    objects.extend(
        positive_roots(mq.orientation().dynkin_type())
            .into_iter()
            .map(ClusterObject::Module),
    );
    let index: HashMap<_, _> = objects.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();

    let h = mq.orientation().dynkin_type().coxeter_number() as i32;
    let window = zq_window(mq, -(h + 2), h + 2)?;
    let image: Vec<usize> = window
        .labels()
        .iter()
        .map(|l| index[&mq.f_normalize(l)])
        .collect();
    let arrows: BTreeSet<(usize, usize)> = window
        .quiver()
        .arrows()
        .iter()
        .map(|&(s, t)| (image[s], image[t]))
        .collect();
    let tau = objects
        .iter()
        .map(|x| Some(index[&tau_cluster(mq, x)]))
        .collect();
    let quiver = TranslationQuiver::new(objects.len(), arrows.into_iter().collect(), tau)?;
    Ok(ClusterQuiver {
        objects,
        index,
        quiver,
    })
}
