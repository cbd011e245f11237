//! Coefficient-free cluster algebras: exchange matrices, seed mutation, the
//! mutation closure, and the comparison with tilting data of the cluster
//! category.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynkin::{AlmostPositiveRoot, Orientation};
use crate::error::{Error, Result};
use crate::hom::ClusterCategory;
use crate::laurent::LaurentPoly;
use crate::tilting::{enumerate_tilting_sets, exchange_graph, ObjectSet};
use crate::triangle::exchange_triangles;

/// Seed budget when `CLUSTERCAT_SEED_CAP` is unset.
pub const DEFAULT_SEED_CAP: usize = 100_000;

/// The seed budget from `CLUSTERCAT_SEED_CAP`, falling back to [`DEFAULT_SEED_CAP`].
pub fn seed_cap() -> usize {
    std::env::var("CLUSTERCAT_SEED_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED_CAP)
}

/// A sign-skew-symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExchangeMatrix {
    entries: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::PreconditionViolated("exchange matrix is not square".into()));
        }
        for i in 0..n {
            if entries[i][i] != 0 {
                return Err(Error::PreconditionViolated(format!("nonzero diagonal entry at {}", i + 1)));
            }
            for j in 0..n {
                let (a, b) = (entries[i][j], entries[j][i]);
                if a.signum() != -b.signum() {
                    return Err(Error::PreconditionViolated(format!(
                        "entries ({}, {}) and ({}, {}) are not sign-skew-symmetric",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(ExchangeMatrix { entries })
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix {
            entries: vec![vec![0; n]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        ExchangeMatrix {
            entries: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect())
                .collect(),
        }
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `b_ij` = arrows `i -> j` minus arrows `j -> i`.
pub fn matrix_from_quiver(q: &Orientation) -> ExchangeMatrix {
    let n = q.rank();
    let mut entries = vec![vec![0i64; n]; n];
    for &(s, t) in q.arrows() {
        entries[s][t] += 1;
        entries[t][s] -= 1;
    }
    ExchangeMatrix { entries }
}

pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    let n = b.len();
    if k >= n {
        return Err(Error::IndexOutOfRange(k + 1));
    }
    let e = &b.entries;
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == k || j == k {
                        -e[i][j]
                    } else {
                        e[i][j] + (e[i][k].abs() * e[k][j] + e[i][k] * e[k][j].abs()) / 2
                    }
                })
                .collect()
        })
        .collect();
    ExchangeMatrix::new(entries)
}

/// A cluster with its exchange matrix; row `i` belongs to `variables[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    pub variables: Vec<LaurentPoly>,
    pub matrix: ExchangeMatrix,
}

impl Seed {
    pub fn new(variables: Vec<LaurentPoly>, matrix: ExchangeMatrix) -> Result<Self> {
        if variables.len() != matrix.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} variables for a {}x{} matrix",
                variables.len(),
                matrix.len(),
                matrix.len()
            )));
        }
        Ok(Seed { variables, matrix })
    }

    /// Initial variables `u_1, ..., u_n` with matrix `b`.
    pub fn initial(b: ExchangeMatrix) -> Self {
        let n = b.len();
        Seed {
            variables: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
            matrix: b,
        }
    }

    pub fn rank(&self) -> usize {
        self.variables.len()
    }

    /// Variables sorted, matrix permuted along.
    pub fn canonical(&self) -> Self {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.sort_by(|&a, &b| self.variables[a].cmp(&self.variables[b]));
        Seed {
            variables: perm.iter().map(|&i| self.variables[i].clone()).collect(),
            matrix: self.matrix.permuted(&perm),
        }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.variables.iter().enumerate() {
            writeln!(f, "x{} = {}", i + 1, v)?;
        }
        write!(f, "{}", self.matrix)
    }
}

/// Replace variable `k` by `(prod_{b_ik > 0} x_i^b_ik + prod_{b_ik < 0} x_i^-b_ik) / x_k`
/// and mutate the matrix.
pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed> {
    let n = s.rank();
    if k >= n {
        return Err(Error::IndexOutOfRange(k + 1));
    }
    let nvars = s.variables[k].nvars();
    let mut pos = LaurentPoly::one(nvars);
    let mut neg = LaurentPoly::one(nvars);
    for i in 0..n {
        let b = s.matrix.get(i, k);
        if b > 0 {
            pos = pos.mul(&s.variables[i].pow(b as u32));
        } else if b < 0 {
            neg = neg.mul(&s.variables[i].pow((-b) as u32));
        }
    }
    let numerator = pos.add(&neg);
    let z = numerator
        .div_exact(&s.variables[k])
        .ok_or_else(|| Error::LaurentViolation(format!("({numerator}) / ({})", s.variables[k])))?;
    let mut variables = s.variables.clone();
    variables[k] = z;
    Ok(Seed {
        variables,
        matrix: mutate_matrix(&s.matrix, k)?,
    })
}

/// The mutation closure of a seed.
#[derive(Debug, Clone)]
pub struct SeedClosure {
    /// Canonical seeds in discovery order; `seeds[0]` is the start.
    pub seeds: Vec<Seed>,
    /// Mutation edges between seeds, `(i, j)` with `i < j`, sorted.
    pub seed_edges: Vec<(usize, usize)>,
    /// Distinct clusters as sorted variable lists, sorted.
    pub clusters: Vec<Vec<LaurentPoly>>,
    /// Edges between clusters sharing all but one variable, sorted.
    pub cluster_edges: Vec<(usize, usize)>,
    /// All cluster variables, sorted.
    pub variables: Vec<LaurentPoly>,
}

/// Breadth-first mutation closure of `s0`, at most `cap` seeds.
///
/// Each frontier is mutated in parallel; new seeds are registered serially in
/// frontier order, so the result does not depend on the thread count.
pub fn enumerate_seeds(s0: &Seed, cap: usize) -> Result<SeedClosure> {
    let n = s0.rank();
    let start = s0.canonical();
    let mut index: HashMap<Seed, usize> = HashMap::from([(start.clone(), 0)]);
    let mut seeds = vec![start];
    let mut edges = BTreeSet::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let expanded: Vec<Vec<Seed>> = frontier
            .par_iter()
            .map(|&i| {
                (0..n)
                    .map(|k| mutate_seed(&seeds[i], k).map(|s| s.canonical()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (&i, children) in frontier.iter().zip(expanded) {
            for child in children {
                let j = match index.get(&child) {
                    Some(&j) => j,
                    None => {
                        if seeds.len() >= cap {
                            return Err(Error::BudgetExceeded(cap));
                        }
                        let j = seeds.len();
                        index.insert(child.clone(), j);
                        seeds.push(child);
                        next.push(j);
                        j
                    }
                };
                if i != j {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
        frontier = next;
    }

    let cluster_of_seed: Vec<Vec<LaurentPoly>> = seeds.iter().map(|s| s.variables.clone()).collect();
    let clusters: Vec<Vec<LaurentPoly>> = cluster_of_seed
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pos: HashMap<&Vec<LaurentPoly>, usize> = clusters.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let cluster_edges: BTreeSet<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (pos[&cluster_of_seed[a]], pos[&cluster_of_seed[b]]);
            (x.min(y), x.max(y))
        })
        .filter(|(x, y)| x != y)
        .collect();
    let variables: Vec<LaurentPoly> = clusters.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    Ok(SeedClosure {
        seeds,
        seed_edges: edges.into_iter().collect(),
        clusters,
        cluster_edges: cluster_edges.into_iter().collect(),
        variables,
    })
}

/// Negated componentwise minimum exponent.
pub fn denominator_vector(v: &LaurentPoly) -> AlmostPositiveRoot {
    AlmostPositiveRoot::new(v.min_exponents().iter().map(|&m| -m).collect())
}

/// The closure of the initial seed of the category's orientation.
pub fn closure_for(cat: &ClusterCategory, cap: usize) -> Result<SeedClosure> {
    enumerate_seeds(&Seed::initial(matrix_from_quiver(cat.orientation())), cap)
}

/// Cluster variables keyed by the object whose `gamma` is their denominator.
pub fn variable_objects(cat: &ClusterCategory, closure: &SeedClosure) -> Result<BTreeMap<usize, LaurentPoly>> {
    let mut out = BTreeMap::new();
    for v in &closure.variables {
        let x = cat.index_of_root(&denominator_vector(v))?;
        if out.insert(x, v.clone()).is_some() {
            return Err(Error::PreconditionViolated(format!(
                "two cluster variables share the denominator {}",
                cat.label(x)
            )));
        }
    }
    Ok(out)
}

fn objects_of_cluster(cat: &ClusterCategory, cluster: &[LaurentPoly]) -> Result<ObjectSet> {
    let mut set = cluster
        .iter()
        .map(|v| cat.index_of_root(&denominator_vector(v)))
        .collect::<Result<ObjectSet>>()?;
    set.sort_unstable();
    Ok(set)
}

/// Outcome of comparing the cluster algebra with the tilting theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub clusters: usize,
    pub variables: usize,
    pub tilting_sets: usize,
    /// Denominators of the variables are distinct and cover the almost positive roots.
    pub denominators_bijective: bool,
    /// Clusters, read through denominators, are exactly the tilting sets.
    pub sets_equal: bool,
    /// Mutation edges correspond exactly to exchange-graph edges.
    pub edges_equal: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.denominators_bijective && self.sets_equal && self.edges_equal
    }
}

/// Read each cluster through denominator vectors as a set of objects and
/// compare the family and its mutation graph with the tilting sets and the
/// exchange graph.
pub fn verify_cluster_tilting_bijection(cat: &ClusterCategory, cap: usize) -> Result<BijectionReport> {
    let closure = closure_for(cat, cap)?;
    let tilting = enumerate_tilting_sets(cat)?;
    let denoms: BTreeSet<AlmostPositiveRoot> = closure.variables.iter().map(denominator_vector).collect();
    let denominators_bijective =
        denoms.len() == closure.variables.len() && denoms.iter().all(|d| cat.index_of_root(d).is_ok()) && denoms.len() == cat.len();

    let mapped: Option<Vec<ObjectSet>> = closure.clusters.iter().map(|c| objects_of_cluster(cat, c).ok()).collect();
    let (sets_equal, edges_equal) = match mapped {
        None => (false, false),
        Some(mapped) => {
            let a: BTreeSet<&ObjectSet> = mapped.iter().collect();
            let b: BTreeSet<&ObjectSet> = tilting.iter().collect();
            let sets_equal = a == b && a.len() == mapped.len();
            let eg = exchange_graph(&tilting);
            let pair = |x: &ObjectSet, y: &ObjectSet| if x < y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
            let ce: BTreeSet<(ObjectSet, ObjectSet)> =
                closure.cluster_edges.iter().map(|&(i, j)| pair(&mapped[i], &mapped[j])).collect();
            let te: BTreeSet<(ObjectSet, ObjectSet)> =
                eg.edges.iter().map(|&(i, j)| pair(&tilting[i], &tilting[j])).collect();
            (sets_equal, ce == te)
        }
    };
    Ok(BijectionReport {
        clusters: closure.clusters.len(),
        variables: closure.variables.len(),
        tilting_sets: tilting.len(),
        denominators_bijective,
        sets_equal,
        edges_equal,
    })
}

/// One exchange edge tested against the monomial prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureEdge {
    pub tbar: Vec<String>,
    pub m: String,
    pub m_star: String,
    pub b: Vec<String>,
    pub b_prime: Vec<String>,
    /// `x x'` expanded.
    pub product: String,
    /// Monomial of `B` plus monomial of `B'`.
    pub predicted: String,
    pub relation_holds: bool,
    pub disjoint: bool,
}

impl ConjectureEdge {
    pub fn passes(&self) -> bool {
        self.relation_holds && self.disjoint
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub edges: Vec<ConjectureEdge>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.edges.iter().all(ConjectureEdge::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConjectureEdge> {
        self.edges.iter().filter(|e| !e.passes())
    }
}

/// For every exchange edge `(T̄ + M, T̄ + M*)`, compare `x_M x_M*` with the sum
/// of the monomials of the middle terms `B` and `B'` of the exchange
/// triangles, and check that `B` and `B'` share no summand. Failures are
/// recorded, not raised.
pub fn check_exchange_conjecture(cat: &ClusterCategory, cap: usize) -> Result<ConjectureReport> {
    let closure = closure_for(cat, cap)?;
    let vars = variable_objects(cat, &closure)?;
    let nvars = cat.rank();
    let var = |x: usize| -> Result<&LaurentPoly> {
        vars.get(&x)
            .ok_or_else(|| Error::PreconditionViolated(format!("no cluster variable for {}", cat.label(x))))
    };
    let monomial = |set: &[usize]| -> Result<LaurentPoly> {
        set.iter()
            .try_fold(LaurentPoly::one(nvars), |acc, &x| Ok(acc.mul(var(x)?)))
    };
    let labels = |set: &[usize]| set.iter().map(|&x| cat.label(x)).collect::<Vec<_>>();

    let tilting = enumerate_tilting_sets(cat)?;
    let eg = exchange_graph(&tilting);
    let edges = eg
        .edges
        .par_iter()
        .map(|&(i, j)| {
            let (tbar, m, m_star) = eg.edge_data(i, j);
            let tri = exchange_triangles(cat, m, m_star)?;
            let product = var(m)?.mul(var(m_star)?);
            let predicted = monomial(&tri.b)?.add(&monomial(&tri.b_prime)?);
            let disjoint = tri.b.iter().all(|x| !tri.b_prime.contains(x));
            Ok(ConjectureEdge {
                tbar: labels(&tbar),
                m: cat.label(m),
                m_star: cat.label(m_star),
                b: labels(&tri.b),
                b_prime: labels(&tri.b_prime),
                relation_holds: product == predicted,
                product: product.to_string(),
                predicted: predicted.to_string(),
                disjoint,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport { edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{alternating_orientation, compatibility_degree, positive_roots, DynkinType};

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn linear_a3_matrix_and_mutation() {
        let x = matrix_from_quiver(&Orientation::linear(DynkinType::a(3)));
        assert_eq!(x, m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]));
        assert_eq!(mutate_matrix(&x, 1).unwrap(), m(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]));
        let q = Orientation::linear(DynkinType::a(3));
        let neg: Vec<Vec<i64>> = x.entries().iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        assert_eq!(matrix_from_quiver(&q.opposite()).entries(), neg.as_slice());
        assert_eq!(matrix_from_quiver(&Orientation::linear(DynkinType::a(1))), ExchangeMatrix::zero(1));
    }

    #[test]
    fn rejects_non_sign_skew() {
        assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![1]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![0, 2], vec![-1, 0]]).is_ok());
    }

    #[test]
    fn matrix_mutation_is_involutive_and_fixes_zero() {
        for ty in [DynkinType::a(2), DynkinType::a(3), DynkinType::a(4), DynkinType::d(4)] {
            let closure = enumerate_seeds(&Seed::initial(matrix_from_quiver(&Orientation::linear(ty))), 1000).unwrap();
            for s in &closure.seeds {
                for k in 0..ty.rank() {
                    let once = mutate_matrix(&s.matrix, k).unwrap();
                    assert_eq!(mutate_matrix(&once, k).unwrap(), s.matrix);
                }
            }
        }
        let z = ExchangeMatrix::zero(3);
        assert_eq!(mutate_matrix(&z, 0).unwrap(), z);
    }

    #[test]
    fn small_mutations() {
        let s = Seed::initial(ExchangeMatrix::zero(1));
        let t = mutate_seed(&s, 0).unwrap();
        assert_eq!(t.variables[0].to_string(), "2/u1");
        let two = LaurentPoly::monomial(2.into(), vec![0]);
        assert_eq!(t.variables[0], two.div_exact(&LaurentPoly::var(1, 0)).unwrap());

        let s = Seed::initial(m(&[&[0, 1], &[-1, 0]]));
        let t = mutate_seed(&s, 0).unwrap();
        assert_eq!(t.variables[0].to_string(), "(u2 + 1)/u1");
        assert_eq!(denominator_vector(&t.variables[0]), AlmostPositiveRoot::new(vec![1, 0]));
        assert_eq!(denominator_vector(&s.variables[1]), AlmostPositiveRoot::negative_simple(2, 1));
        assert!(mutate_seed(&s, 2).is_err());
    }

    #[test]
    fn seed_mutation_is_involutive() {
        for ty in [DynkinType::a(2), DynkinType::a(3)] {
            let closure = enumerate_seeds(&Seed::initial(matrix_from_quiver(&Orientation::linear(ty))), 1000).unwrap();
            for s in &closure.seeds {
                for k in 0..ty.rank() {
                    let back = mutate_seed(&mutate_seed(s, k).unwrap(), k).unwrap();
                    assert_eq!(back.canonical(), *s);
                }
            }
        }
    }

    #[test]
    fn closure_counts() {
        for (ty, clusters, vars) in [
            (DynkinType::a(1), 2, 2),
            (DynkinType::a(2), 5, 5),
            (DynkinType::a(3), 14, 9),
            (DynkinType::a(4), 42, 14),
            (DynkinType::d(4), 50, 16),
        ] {
            let c = enumerate_seeds(&Seed::initial(matrix_from_quiver(&Orientation::linear(ty))), 1000).unwrap();
            assert_eq!((c.clusters.len(), c.variables.len()), (clusters, vars), "{ty}");
            assert!(c.clusters.iter().all(|cl| cl.len() == ty.rank()));
        }
    }

    #[test]
    fn budget_guard() {
        let s = Seed::initial(matrix_from_quiver(&Orientation::linear(DynkinType::a(3))));
        assert_eq!(enumerate_seeds(&s, 5).unwrap_err(), Error::BudgetExceeded(5));
        let kronecker = Seed::initial(m(&[&[0, 2], &[-2, 0]]));
        assert_eq!(enumerate_seeds(&kronecker, 50).unwrap_err(), Error::BudgetExceeded(50));
    }

    #[test]
    fn denominators_of_a3_are_roots() {
        let ty = DynkinType::a(3);
        let c = enumerate_seeds(&Seed::initial(matrix_from_quiver(&Orientation::linear(ty))), 1000).unwrap();
        let got: BTreeSet<AlmostPositiveRoot> = c
            .variables
            .iter()
            .map(denominator_vector)
            .filter(AlmostPositiveRoot::is_positive)
            .collect();
        let want: BTreeSet<AlmostPositiveRoot> = positive_roots(ty).into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn cluster_denominators_are_compatible() {
        for ty in [DynkinType::a(3), DynkinType::d(4)] {
            let (q, bip) = alternating_orientation(ty);
            let c = enumerate_seeds(&Seed::initial(matrix_from_quiver(&q)), 1000).unwrap();
            for cl in &c.clusters {
                let d: Vec<_> = cl.iter().map(denominator_vector).collect();
                for a in &d {
                    for b in &d {
                        assert_eq!(compatibility_degree(ty, a, b, &bip).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn bijection_and_conjecture_small() {
        for ty in [DynkinType::a(1), DynkinType::a(2), DynkinType::a(3)] {
            let (q, _) = alternating_orientation(ty);
            let cat = ClusterCategory::new(&q).unwrap();
            let r = verify_cluster_tilting_bijection(&cat, 1000).unwrap();
            assert!(r.holds(), "{ty}: {r:?}");
            assert_eq!(r.clusters, r.tilting_sets);
            let c = check_exchange_conjecture(&cat, 1000).unwrap();
            assert!(c.all_pass(), "{ty}: {:?}", c.failures().collect::<Vec<_>>());
        }
        let cat = ClusterCategory::new(&alternating_orientation(DynkinType::a(1)).0).unwrap();
        let c = check_exchange_conjecture(&cat, 10).unwrap();
        assert_eq!(c.edges.len(), 1);
        assert_eq!(c.edges[0].product, "2");
        assert!(c.edges[0].b.is_empty() && c.edges[0].b_prime.is_empty());
    }
}
