//! Tilting sets of the cluster category and related structures: the
//! compatibility graph, Ext- and Hom-configurations, complements of almost
//! complete tilting sets, and the exchange graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

use crate::clique::Graph;
use crate::dynkin::{DynkinType, Orientation};
use crate::error::{Error, Result};
use crate::hom::ClusterCategory;
use crate::knit::{zq_cylinder, zq_window, ClusterObject, DerivedObject, ZqWindow};
use crate::mesh::linearize;

/// A set of cluster-quiver indices, sorted ascending.
pub type ObjectSet = Vec<usize>;

/// Edge `{x, y}` iff `Ext^1_C(x, y) = 0`.
pub fn compatibility_graph(cat: &ClusterCategory) -> Result<Graph> {
    Graph::from_fn(cat.len(), |x, y| cat.ext1_c(x, y) == 0)
}

/// All tilting sets (maximal Ext-orthogonal sets), sorted.
pub fn enumerate_tilting_sets(cat: &ClusterCategory) -> Result<Vec<ObjectSet>> {
    let g = compatibility_graph(cat)?;
    let sets = g.maximal_cliques();
    let n = cat.rank();
    if let Some(bad) = sets.iter().find(|s| s.len() != n) {
        return Err(Error::SizeViolation {
            found: bad.len(),
            expected: n,
        });
    }
    Ok(sets)
}

/// (E1) and (E2) in the cluster category.
pub fn is_ext_configuration_c(cat: &ClusterCategory, set: &[usize]) -> bool {
    let e1 = set.iter().all(|&x| set.iter().all(|&y| cat.ext1_c(x, y) == 0));
    let e2 = (0..cat.len())
        .filter(|z| !set.contains(z))
        .all(|z| set.iter().any(|&x| cat.ext1_c(x, z) != 0));
    e1 && e2
}

/// Every `(n - 1)`-subset of a tilting set, deduplicated and sorted.
pub fn almost_complete_tilting_sets(tilting: &[ObjectSet]) -> Vec<ObjectSet> {
    let mut out = BTreeSet::new();
    for t in tilting {
        for k in 0..t.len() {
            let mut s = t.clone();
            s.remove(k);
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

/// The objects `x` for which `tbar ∪ {x}` is a tilting set. Exactly two are
/// expected.
pub fn complements(cat: &ClusterCategory, tbar: &[usize]) -> Result<[usize; 2]> {
    let compatible = |x: usize, set: &[usize]| set.iter().all(|&y| cat.ext1_c(x, y) == 0);
    if !tbar.iter().all(|&x| compatible(x, tbar)) {
        return Err(Error::PreconditionViolated("the set is not Ext-orthogonal".into()));
    }
    let found: Vec<usize> = (0..cat.len())
        .filter(|x| !tbar.contains(x) && compatible(*x, tbar))
        .filter(|&x| {
            let mut t = tbar.to_vec();
            t.push(x);
            (0..cat.len()).all(|z| t.contains(&z) || !compatible(z, &t))
        })
        .collect();
    match found[..] {
        [a, b] => Ok([a, b]),
        _ => Err(Error::CountViolation(found.len())),
    }
}

/// Tilting sets joined when they share all but one member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub vertices: Vec<ObjectSet>,
    /// `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl ExchangeGraph {
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.neighbours().iter().all(|a| a.len() == degree)
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.neighbours();
        if adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; adj.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// For edge `(i, j)`: the shared members and the two exchanged objects
    /// `(member of vertex i, member of vertex j)`.
    pub fn edge_data(&self, i: usize, j: usize) -> (ObjectSet, usize, usize) {
        let (a, b) = (&self.vertices[i], &self.vertices[j]);
        let shared: ObjectSet = a.iter().copied().filter(|x| b.contains(x)).collect();
        let x = *a.iter().find(|x| !b.contains(x)).expect("sets differ");
        let y = *b.iter().find(|y| !a.contains(y)).expect("sets differ");
        (shared, x, y)
    }
}

pub fn exchange_graph(tilting: &[ObjectSet]) -> ExchangeGraph {
    let mut by_face: BTreeMap<ObjectSet, Vec<usize>> = BTreeMap::new();
    for (k, t) in tilting.iter().enumerate() {
        for drop in 0..t.len() {
            let mut s = t.clone();
            s.remove(drop);
            by_face.entry(s).or_default().push(k);
        }
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for owners in by_face.values() {
        for (p, &a) in owners.iter().enumerate() {
            for &b in &owners[p + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    ExchangeGraph {
        vertices: tilting.to_vec(),
        edges: edges.into_iter().collect(),
    }
}

/// Face numbers of the complex of Ext-orthogonal sets, by size (empty set first).
pub fn exceptional_complex_fvector(cat: &ClusterCategory) -> Result<Vec<u64>> {
    Ok(compatibility_graph(cat)?.clique_counts())
}

/// Basic tilting `kQ`-modules and their images in the cluster category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// Tilting modules, each as sorted cluster indices.
    pub modules: Vec<ObjectSet>,
    pub all_tilting_in_c: bool,
    pub all_ext_configurations: bool,
    pub injective: bool,
}

pub fn tilting_module_embedding(cat: &ClusterCategory) -> Result<EmbeddingReport> {
    let n = cat.rank();
    let mods: Vec<usize> = (0..cat.len()).filter(|&x| cat.object(x).is_module()).collect();
    let mv = |x: usize| cat.module_vertex(x).unwrap();
    let orth = |a: usize, b: usize| cat.ext_mod(mv(a), mv(b)) == 0 && cat.ext_mod(mv(b), mv(a)) == 0;

    let mut modules = Vec::new();
    fn extend(
        cur: &mut Vec<usize>,
        cands: &[usize],
        n: usize,
        orth: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for (k, &c) in cands.iter().enumerate() {
            let rest: Vec<usize> = cands[k + 1..].iter().copied().filter(|&d| orth(c, d)).collect();
            cur.push(c);
            extend(cur, &rest, n, orth, out);
            cur.pop();
        }
    }
    extend(&mut Vec::new(), &mods, n, &orth, &mut modules);

    let tilting: BTreeSet<ObjectSet> = enumerate_tilting_sets(cat)?.into_iter().collect();
    let distinct: BTreeSet<&ObjectSet> = modules.iter().collect();
    Ok(EmbeddingReport {
        all_tilting_in_c: modules.iter().all(|m| tilting.contains(m)),
        all_ext_configurations: modules.iter().all(|m| is_ext_configuration_c(cat, m)),
        injective: distinct.len() == modules.len(),
        modules,
    })
}

/// A window of the derived category, for Ext-configurations in `D`.
///
/// `Ext_D(X, Y) = Hom_D(X, Y[1])`. Maximality is judged among window members;
/// (E2) is tested only on the core columns `[lo + h, hi - h]`, whose
/// Ext-partners all lie inside the window.
#[derive(Debug, Clone)]
pub struct DWindow {
    window: ZqWindow,
    h: i32,
    ext: Vec<Vec<u32>>,
}

impl DWindow {
    pub fn new(cat: &ClusterCategory, lo: i32, hi: i32) -> Result<Self> {
        let h = cat.orientation().dynkin_type().coxeter_number() as i32;
        let window = zq_window(cat.module_quiver(), lo, hi)?;
        let labels = window.labels();
        let ext = labels
            .iter()
            .map(|x| {
                labels
                    .iter()
                    .map(|y| cat.hom_derived(x, &DerivedObject::new(y.root.clone(), y.shift + 1)))
                    .collect()
            })
            .collect();
        Ok(DWindow { window, h, ext })
    }

    /// A window of `4h + 1` columns centred on the projective slice.
    pub fn standard(cat: &ClusterCategory) -> Result<Self> {
        let h = cat.orientation().dynkin_type().coxeter_number() as i32;
        DWindow::new(cat, -2 * h, 2 * h)
    }

    pub fn window(&self) -> &ZqWindow {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn ext(&self, x: usize, y: usize) -> u32 {
        self.ext[x][y]
    }

    pub fn is_core(&self, v: usize) -> bool {
        let (c, _) = self.window.coords(v);
        c >= self.window.lo() + self.h && c <= self.window.hi() - self.h
    }

    /// Core vertices `Z` outside `set` with `Ext(X, Z) = 0` for every `X` in `set`.
    pub fn e2_witnesses(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| self.is_core(z) && !set.contains(&z))
            .filter(|&z| set.iter().all(|&x| self.ext[x][z] == 0))
            .collect()
    }

    pub fn is_ext_configuration(&self, set: &[usize]) -> bool {
        let e1 = set.iter().all(|&x| set.iter().all(|&y| self.ext[x][y] == 0));
        e1 && self.e2_witnesses(set).is_empty()
    }

    fn orthogonality_graph(&self) -> Result<Graph> {
        Graph::from_fn(self.len(), |x, y| self.ext[x][y] == 0 && self.ext[y][x] == 0)
    }

    /// Window vertices whose `F`-orbit meets `set` (a set of cluster indices).
    pub fn preimage(&self, cat: &ClusterCategory, set: &[usize]) -> Vec<usize> {
        let mq = cat.module_quiver();
        (0..self.len())
            .filter(|&v| {
                let x = mq.f_normalize(self.window.label(v));
                set.contains(&cat.index_of(&x).expect("normalized object"))
            })
            .collect()
    }

    /// Whether `set` is closed under `F` and `F^-1` as far as the window reaches.
    pub fn is_f_stable(&self, cat: &ClusterCategory, set: &[usize]) -> bool {
        let mq = cat.module_quiver();
        set.iter().all(|&v| {
            let x = self.window.label(v);
            [mq.functor_f(x), mq.functor_f_inv(x)].iter().all(|y| match self.window.vertex_of(y) {
                Some(w) => set.contains(&w),
                None => true,
            })
        })
    }
}

/// A window-maximal Ext-orthogonal set in `D` that is not an Ext-configuration,
/// found with a core witness `Z` violating (E2). Returns `(set, witness)`.
pub fn find_d_tilting_not_config(dw: &DWindow) -> Result<Option<(ObjectSet, usize)>> {
    let g = dw.orthogonality_graph()?;
    let found = g.try_for_each_maximal_clique(|c| match dw.e2_witnesses(c).first() {
        Some(&z) => ControlFlow::Break((c.to_vec(), z)),
        None => ControlFlow::Continue(()),
    });
    Ok(match found {
        ControlFlow::Break(hit) => Some(hit),
        ControlFlow::Continue(()) => None,
    })
}

/// Hom-configurations of the mesh category of `Z Δ / τ^period`, as sets of
/// cylinder vertices `c * n + i`.
pub fn hom_configurations_on_cylinder(q: &Orientation, period: usize) -> Result<Vec<ObjectSet>> {
    let cyl = zq_cylinder(q, period)?;
    let lc = linearize(&cyl)?;
    let n = cyl.vertex_count();
    let g = Graph::from_fn(n, |x, y| lc.hom_dim(x, y) == 0 && lc.hom_dim(y, x) == 0)?;
    Ok(g
        .maximal_cliques()
        .into_iter()
        .filter(|t| (0..n).all(|z| t.iter().any(|&x| lc.hom_dim(z, x) != 0)))
        .collect())
}

/// The results of the Hom-configuration enumeration for one type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomConfigurationReport {
    pub m: usize,
    /// Number of Hom-configurations of `Z Δ / τ^m`.
    pub count: usize,
    /// Hom-configurations of `Z Δ / τ^{2m}`.
    pub double_period_count: usize,
    /// Every configuration on `Z Δ / τ^{2m}` is `τ^m`-stable.
    pub tau_m_stable: bool,
    /// Every configuration has exactly `n` members in each `τ^m` fundamental domain.
    pub n_per_domain: bool,
}

pub const HOM_CONFIGURATION_MAX_RANK: usize = 4;

pub fn hom_configurations(ty: DynkinType) -> Result<HomConfigurationReport> {
    if ty.rank() > HOM_CONFIGURATION_MAX_RANK {
        return Err(Error::PreconditionViolated(format!(
            "Hom-configurations are enumerated up to rank {HOM_CONFIGURATION_MAX_RANK}"
        )));
    }
    let q = Orientation::linear(ty);
    let n = ty.rank();
    let m = ty.coxeter_number() - 1;
    let count = hom_configurations_on_cylinder(&q, m)?.len();
    let double = hom_configurations_on_cylinder(&q, 2 * m)?;
    let size = 2 * m * n;
    let shift = |v: usize| (v + m * n) % size;
    let tau_m_stable = double.iter().all(|t| t.iter().all(|&v| t.contains(&shift(v))));
    let n_per_domain = double.iter().all(|t| {
        (0..2 * m).all(|start| {
            t.iter()
                .filter(|&&v| {
                    let c = v / n;
                    (c + 2 * m - start) % (2 * m) < m
                })
                .count()
                == n
        })
    });
    Ok(HomConfigurationReport {
        m,
        count,
        double_period_count: double.len(),
        tau_m_stable,
        n_per_domain,
    })
}

/// Labels of a set of cluster objects.
pub fn labels(cat: &ClusterCategory, set: &[usize]) -> Vec<String> {
    set.iter().map(|&x| cat.label(x)).collect()
}

/// Look up cluster indices from objects.
pub fn indices(cat: &ClusterCategory, objects: &[ClusterObject]) -> Option<ObjectSet> {
    let mut v = objects.iter().map(|x| cat.index_of(x)).collect::<Option<Vec<_>>>()?;
    v.sort_unstable();
    Some(v)
}
