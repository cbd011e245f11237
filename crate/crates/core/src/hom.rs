//! Hom and Ext dimensions in `mod kQ`, in the derived category and in the
//! cluster category, computed from hammocks on the AR-quiver.

use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;

use crate::dynkin::{euler_form, AlmostPositiveRoot, Orientation};
use crate::error::{Error, Result};
use crate::knit::{
    cluster_ar_quiver, knit_module_ar_quiver, ClusterObject, ClusterQuiver, DerivedObject, ModuleQuiver,
    TranslationQuiver,
};

/// A starting or ending function on the module AR-quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hammock {
    pub source: usize,
    pub values: Vec<u32>,
}

impl Hammock {
    pub fn value(&self, v: usize) -> u32 {
        self.values[v]
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, &x)| x > 0).map(|(v, _)| v)
    }
}

/// Vertices in a topological order of the arrows, smallest id first among ready vertices.
pub fn topological_order(q: &TranslationQuiver) -> Vec<usize> {
    let n = q.vertex_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| q.in_arrows(v).len()).collect();
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for w in q.successors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    assert_eq!(order.len(), n, "module AR-quiver has a cycle");
    order
}

/// Vertices reached from `u` by sectional paths: paths `x_0 -> ... -> x_k` with
/// `x_{i-1} != tau(x_{i+1})`. Includes `u`.
pub fn sectional_closure(q: &TranslationQuiver, u: usize) -> BTreeSet<usize> {
    let mut reached = BTreeSet::from([u]);
    let mut seen = BTreeSet::new();
    let mut stack: Vec<(Option<usize>, usize)> = vec![(None, u)];
    while let Some((prev, cur)) = stack.pop() {
        if !seen.insert((prev, cur)) {
            continue;
        }
        for next in q.successors(cur) {
            if prev.is_some() && prev == q.tau(next) {
                continue;
            }
            reached.insert(next);
            stack.push((Some(cur), next));
        }
    }
    reached
}

/// The same as [`sectional_closure`] on the opposite quiver.
pub fn sectional_coclosure(q: &TranslationQuiver, u: usize) -> BTreeSet<usize> {
    let mut reached = BTreeSet::from([u]);
    let mut seen = BTreeSet::new();
    let mut stack: Vec<(Option<usize>, usize)> = vec![(None, u)];
    while let Some((prev, cur)) = stack.pop() {
        if !seen.insert((prev, cur)) {
            continue;
        }
        for next in q.predecessors(cur) {
            if prev.is_some() && prev == q.tau_inv(next) {
                continue;
            }
            reached.insert(next);
            stack.push((Some(cur), next));
        }
    }
    reached
}

/// `s_U(V) = dim Hom(U, V)`: 1 on the sectional slice from `U`, then
/// `s_U(V) = sum over W -> V of s_U(W) - s_U(tau V)` in topological order.
pub fn starting_function(mq: &ModuleQuiver, u: usize) -> Result<Hammock> {
    starting_function_ordered(mq.quiver(), &topological_order(mq.quiver()), u)
}

fn starting_function_ordered(q: &TranslationQuiver, order: &[usize], u: usize) -> Result<Hammock> {
    let slice = sectional_closure(q, u);
    let mut values = vec![0i64; q.vertex_count()];
    for &v in order {
        values[v] = if slice.contains(&v) {
            1
        } else {
            let sum: i64 = q.predecessors(v).map(|w| values[w]).sum();
            let val = sum - q.tau(v).map_or(0, |t| values[t]);
            if val < 0 {
                return Err(Error::NegativeHammock(v));
            }
            val
        };
    }
    Ok(Hammock {
        source: u,
        values: values.into_iter().map(|x| x as u32).collect(),
    })
}

/// `e_U(V) = dim Hom(V, U)`, the dual recursion in reverse topological order.
pub fn ending_function(mq: &ModuleQuiver, u: usize) -> Result<Hammock> {
    let mut order = topological_order(mq.quiver());
    order.reverse();
    ending_function_ordered(mq.quiver(), &order, u)
}

fn ending_function_ordered(q: &TranslationQuiver, rev_order: &[usize], u: usize) -> Result<Hammock> {
    let slice = sectional_coclosure(q, u);
    let mut values = vec![0i64; q.vertex_count()];
    for &v in rev_order {
        values[v] = if slice.contains(&v) {
            1
        } else {
            let sum: i64 = q.successors(v).map(|w| values[w]).sum();
            let val = sum - q.tau_inv(v).map_or(0, |t| values[t]);
            if val < 0 {
                return Err(Error::NegativeHammock(v));
            }
            val
        };
    }
    Ok(Hammock {
        source: u,
        values: values.into_iter().map(|x| x as u32).collect(),
    })
}

/// Hom/Ext tables for `mod kQ` and for the cluster category of `Q`.
///
/// All tables are filled at construction; afterwards the value is read-only and
/// can be shared across threads.
#[derive(Debug, Clone)]
pub struct ClusterCategory {
    mq: ModuleQuiver,
    cq: ClusterQuiver,
    hom_mod: Vec<Vec<u32>>,
    ext_mod: Vec<Vec<u32>>,
    /// cluster-quiver index -> module vertex, for module objects
    module_vertex: Vec<Option<usize>>,
    hom_c: Vec<Vec<u32>>,
    ext_c: Vec<Vec<u32>>,
}

impl ClusterCategory {
    pub fn new(q: &Orientation) -> Result<Self> {
        let mq = knit_module_ar_quiver(q)?;
        let cq = cluster_ar_quiver(&mq)?;
        let t = mq.len();
        let order = topological_order(mq.quiver());
        let hom_mod = (0..t)
            .map(|u| starting_function_ordered(mq.quiver(), &order, u).map(|h| h.values))
            .collect::<Result<Vec<_>>>()?;
        let mut ext_mod = vec![vec![0; t]; t];
        for a in 0..t {
            for b in 0..t {
                let e = hom_mod[a][b] as i64 - euler_form(&mq.root(a).coeffs, &mq.root(b).coeffs, q);
                if e < 0 {
                    return Err(Error::NegativeExt(a, b));
                }
                ext_mod[a][b] = e as u32;
            }
        }
        let module_vertex: Vec<Option<usize>> = cq
            .objects()
            .iter()
            .map(|x| match x {
                ClusterObject::Module(r) => mq.vertex_of(r),
                ClusterObject::ShiftedProjective(_) => None,
            })
            .collect();
        let mut cat = ClusterCategory {
            mq,
            cq,
            hom_mod,
            ext_mod,
            module_vertex,
            hom_c: Vec::new(),
            ext_c: Vec::new(),
        };
        let m = cat.cq.len();
        let reps: Vec<DerivedObject> = cat.cq.objects().iter().map(|x| cat.mq.representative(x)).collect();
        cat.hom_c = (0..m)
            .map(|x| {
                let shifted = cat.mq.functor_f_inv(&reps[x]);
                (0..m)
                    .map(|y| cat.hom_derived(&reps[x], &reps[y]) + cat.hom_derived(&shifted, &reps[y]))
                    .collect()
            })
            .collect();
        cat.ext_c = (0..m).map(|x| (0..m).map(|y| cat.ext1_c_formula(x, y)).collect()).collect();
        Ok(cat)
    }

    pub fn orientation(&self) -> &Orientation {
        self.mq.orientation()
    }

    pub fn rank(&self) -> usize {
        self.mq.rank()
    }

    pub fn module_quiver(&self) -> &ModuleQuiver {
        &self.mq
    }

    pub fn cluster_quiver(&self) -> &ClusterQuiver {
        &self.cq
    }

    /// Number of indecomposables of `C`.
    pub fn len(&self) -> usize {
        self.cq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cq.is_empty()
    }

    pub fn object(&self, x: usize) -> &ClusterObject {
        self.cq.object(x)
    }

    pub fn objects(&self) -> &[ClusterObject] {
        self.cq.objects()
    }

    pub fn index_of(&self, x: &ClusterObject) -> Option<usize> {
        self.cq.index_of(x)
    }

    /// Index of the object labelled by an almost positive root.
    pub fn index_of_root(&self, r: &AlmostPositiveRoot) -> Result<usize> {
        let x = ClusterObject::from_gamma(r)?;
        self.index_of(&x)
            .ok_or_else(|| Error::InvalidRoot(format!("{} is not a root of this type", r.label())))
    }

    pub fn label(&self, x: usize) -> String {
        self.cq.object(x).label(self.rank())
    }

    pub fn gamma(&self, x: usize) -> AlmostPositiveRoot {
        self.cq.object(x).gamma(self.rank())
    }

    /// Module vertex of a module object of `C`.
    pub fn module_vertex(&self, x: usize) -> Option<usize> {
        self.module_vertex[x]
    }

    /// Cluster index of a module vertex.
    pub fn cluster_index_of_module(&self, v: usize) -> usize {
        self.cq
            .index_of(&ClusterObject::Module(self.mq.root(v).clone()))
            .expect("every module is an object of C")
    }

    pub fn tau_c(&self, x: usize) -> usize {
        self.cq.tau(x)
    }

    pub fn tau_c_inv(&self, x: usize) -> usize {
        self.cq.tau_inv(x)
    }

    pub fn hom_mod(&self, m: usize, n: usize) -> u32 {
        self.hom_mod[m][n]
    }

    pub fn ext_mod(&self, m: usize, n: usize) -> u32 {
        self.ext_mod[m][n]
    }

    pub fn euler(&self, m: usize, n: usize) -> i64 {
        euler_form(&self.mq.root(m).coeffs, &self.mq.root(n).coeffs, self.orientation())
    }

    fn module_index(&self, r: &AlmostPositiveRoot) -> usize {
        self.mq
            .vertex_of(r)
            .unwrap_or_else(|| panic!("{:?} is not a module of this quiver", r.coeffs))
    }

    /// `Hom_D(M[a], N[b])`: `Hom(M, N)` if `b = a`, `Ext^1(M, N)` if `b = a + 1`, else 0.
    pub fn hom_derived(&self, x: &DerivedObject, y: &DerivedObject) -> u32 {
        let (m, n) = (self.module_index(&x.root), self.module_index(&y.root));
        match y.shift - x.shift {
            0 => self.hom_mod[m][n],
            1 => self.ext_mod[m][n],
            _ => 0,
        }
    }

    /// `dim Hom_C(x, y) = sum over i in {-1, 0} of dim Hom_D(F^i x, y)`.
    pub fn hom_c(&self, x: usize, y: usize) -> u32 {
        self.hom_c[x][y]
    }

    pub fn ext1_c(&self, x: usize, y: usize) -> u32 {
        self.ext_c[x][y]
    }

    fn ext1_c_formula(&self, x: usize, y: usize) -> u32 {
        match (self.cq.object(x), self.cq.object(y)) {
            (ClusterObject::Module(_), ClusterObject::Module(_)) => {
                let (m, n) = (self.module_vertex[x].unwrap(), self.module_vertex[y].unwrap());
                self.ext_mod[m][n] + self.ext_mod[n][m]
            }
            (ClusterObject::ShiftedProjective(i), ClusterObject::Module(_)) => {
                self.hom_mod[self.mq.projective(*i)][self.module_vertex[y].unwrap()]
            }
            (ClusterObject::Module(_), ClusterObject::ShiftedProjective(i)) => {
                self.hom_mod[self.mq.projective(*i)][self.module_vertex[x].unwrap()]
            }
            (ClusterObject::ShiftedProjective(_), ClusterObject::ShiftedProjective(_)) => 0,
        }
    }

    /// The `Ext^1_C` table in cluster-quiver order.
    pub fn ext_table(&self) -> &[Vec<u32>] {
        &self.ext_c
    }

    pub fn hom_table(&self) -> &[Vec<u32>] {
        &self.hom_c
    }

    /// For every pair of fundamental-domain representatives, the list of `i` in
    /// `[-range, range]` with `Hom_D(F^i x, y) != 0`.
    pub fn derived_hom_support(&self, range: i32) -> HashMap<(usize, usize), Vec<i32>> {
        let reps: Vec<DerivedObject> = self.objects().iter().map(|x| self.mq.representative(x)).collect();
        let mut out = HashMap::new();
        for (a, x) in reps.iter().enumerate() {
            let powers: Vec<(i32, DerivedObject)> =
                (-range..=range).map(|i| (i, self.mq.functor_f_pow(x, i))).collect();
            for (b, y) in reps.iter().enumerate() {
                let support: Vec<i32> = powers
                    .iter()
                    .filter(|(_, fx)| self.hom_derived(fx, y) != 0)
                    .map(|(i, _)| *i)
                    .collect();
                out.insert((a, b), support);
            }
        }
        out
    }
}
