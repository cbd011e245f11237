//! Exchange pairs and the middle terms of their two exchange triangles, computed
//! from hammock frames after rotating the pair into the module category.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::ClusterCategory;
use crate::knit::DerivedObject;
use crate::tilting::{exchange_graph, ObjectSet};

pub fn is_exchange_pair(cat: &ClusterCategory, x: usize, y: usize) -> bool {
    x != y && cat.ext1_c(x, y) == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameKind {
    Starting,
    Ending,
}

/// `F_s(U) = {V : s_U(V) != 0 = s_U(tau V)}` or `F_e(U) = {V : e_U(V) != 0 = e_U(tau^-1 V)}`,
/// over module vertices; a missing translate counts as 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub base: usize,
    pub kind: FrameKind,
    pub members: BTreeSet<usize>,
}

pub fn frame(cat: &ClusterCategory, u: usize, kind: FrameKind) -> Frame {
    let q = cat.module_quiver().quiver();
    let members = (0..q.vertex_count())
        .filter(|&v| match kind {
            FrameKind::Starting => {
                cat.hom_mod(u, v) != 0 && q.tau(v).is_none_or(|t| cat.hom_mod(u, t) == 0)
            }
            FrameKind::Ending => {
                cat.hom_mod(v, u) != 0 && q.tau_inv(v).is_none_or(|t| cat.hom_mod(t, u) == 0)
            }
        })
        .collect();
    Frame { base: u, kind, members }
}

/// Middle term of the non-split sequence `0 -> M* -> B -> M -> 0` when
/// `Ext^1(M, M*)` is one-dimensional: the module vertices `V` with
/// `Hom(M*, V) != 0 != Hom(V, M)` and `Ext^1(V, M*) = 0 = Ext^1(M, V)`.
pub fn unique_extension_middle(cat: &ClusterCategory, m: usize, m_star: usize) -> Result<Vec<usize>> {
    let e = cat.ext_mod(m, m_star);
    if e != 1 {
        return Err(Error::PreconditionViolated(format!(
            "Ext^1 between the end terms has dimension {e}, not 1"
        )));
    }
    Ok((0..cat.module_quiver().len())
        .filter(|&v| {
            cat.hom_mod(m_star, v) != 0
                && cat.hom_mod(v, m) != 0
                && cat.ext_mod(v, m_star) == 0
                && cat.ext_mod(m, v) == 0
        })
        .collect())
}

/// The same middle term read off the frames: `F_s(M*) ∩ F_e(M)`.
pub fn frame_middle(cat: &ClusterCategory, m: usize, m_star: usize) -> Vec<usize> {
    let fs = frame(cat, m_star, FrameKind::Starting);
    let fe = frame(cat, m, FrameKind::Ending);
    fs.members.intersection(&fe.members).copied().collect()
}

/// How a middle term was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MiddleMethod {
    /// The pair is `(tau_C z, z)`: the middle term of the AR-triangle.
    AlmostSplit,
    /// Rotated by `tau_C^t` into a module sequence.
    Rotation(usize),
    /// Lifted to the derived category with both end terms in one heart.
    DerivedLift,
}

/// The two exchange triangles `M* -> B -> M -> M*[1]` and `M -> B' -> M* -> M[1]`
/// of an exchange pair, by their middle terms (sorted cluster indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeTriangleResult {
    pub m: usize,
    pub m_star: usize,
    pub b: ObjectSet,
    pub b_prime: ObjectSet,
    /// How `b` and `b_prime` were computed.
    pub methods: (MiddleMethod, MiddleMethod),
}

/// Middle term of the triangle `from -> E -> to` with one-dimensional
/// `Ext^1_C(to, from)`, found at the first `t` with both `tau_C^t` images
/// modules and `Ext^1_kQ(tau^t to, tau^t from) = 1`.
pub fn rotated_middle(cat: &ClusterCategory, from: usize, to: usize) -> Result<(ObjectSet, usize)> {
    let cq = cat.cluster_quiver();
    for t in 0..cq.tau_period() {
        let (a, b) = (cq.tau_pow(from, t as i64), cq.tau_pow(to, t as i64));
        let (Some(ma), Some(mb)) = (cat.module_vertex(a), cat.module_vertex(b)) else {
            continue;
        };
        if cat.ext_mod(mb, ma) != 1 {
            continue;
        }
        let mut mid: ObjectSet = unique_extension_middle(cat, mb, ma)?
            .into_iter()
            .map(|v| cq.tau_pow(cat.cluster_index_of_module(v), -(t as i64)))
            .collect();
        mid.sort_unstable();
        return Ok((mid, t));
    }
    Err(Error::RotationNotFound(format!("{} -> ? -> {}", cat.label(from), cat.label(to))))
}

fn shifted(x: &DerivedObject, by: i32) -> DerivedObject {
    DerivedObject::new(x.root.clone(), x.shift + by)
}

/// Lifts `(x, y)` of `(from, to)` to the derived category with
/// `Hom_D(y, x[1])` one-dimensional.
pub fn derived_lift(cat: &ClusterCategory, from: usize, to: usize) -> Result<(DerivedObject, DerivedObject)> {
    let mq = cat.module_quiver();
    let x = mq.representative(cat.object(from));
    let y0 = mq.representative(cat.object(to));
    (-2..=2)
        .map(|i| mq.functor_f_pow(&y0, i))
        .find(|y| cat.hom_derived(y, &shifted(&x, 1)) == 1)
        .map(|y| (x, y))
        .ok_or_else(|| {
            Error::PreconditionViolated(format!(
                "no lift of {} with one-dimensional Ext^1 into {}",
                cat.label(to),
                cat.label(from)
            ))
        })
}

/// Middle term of the non-split triangle `x -> E -> y -> x[1]` in the derived
/// category: the `V` with `Hom(x, V) != 0 != Hom(V, y)` and
/// `Hom(V, x[1]) = 0 = Hom(y, V[1])`.
pub fn derived_extension_middle(cat: &ClusterCategory, x: &DerivedObject, y: &DerivedObject) -> Vec<DerivedObject> {
    let mq = cat.module_quiver();
    let mut out = Vec::new();
    for s in x.shift - 1..=y.shift + 1 {
        for v in 0..mq.len() {
            let cand = DerivedObject::new(mq.root(v).clone(), s);
            if cat.hom_derived(x, &cand) != 0
                && cat.hom_derived(&cand, y) != 0
                && cat.hom_derived(&cand, &shifted(x, 1)) == 0
                && cat.hom_derived(y, &shifted(&cand, 1)) == 0
            {
                out.push(cand);
            }
        }
    }
    out
}

/// `F_s(x) ∩ F_e(y)` with frames taken in the derived category.
pub fn derived_frame_middle(cat: &ClusterCategory, x: &DerivedObject, y: &DerivedObject) -> Vec<DerivedObject> {
    let mq = cat.module_quiver();
    let mut out = Vec::new();
    for s in x.shift - 1..=y.shift + 1 {
        for v in 0..mq.len() {
            let cand = DerivedObject::new(mq.root(v).clone(), s);
            let start = cat.hom_derived(x, &cand) != 0 && cat.hom_derived(x, &mq.tau_derived(&cand)) == 0;
            let end = cat.hom_derived(&cand, y) != 0 && cat.hom_derived(&mq.tau_inv_derived(&cand), y) == 0;
            if start && end {
                out.push(cand);
            }
        }
    }
    out
}

/// Class in the Grothendieck group: `(-1)^s dim M` for `M[s]`.
pub fn k0_class(x: &DerivedObject) -> Vec<i32> {
    let sign = if x.shift.rem_euclid(2) == 0 { 1 } else { -1 };
    x.root.coeffs.iter().map(|c| sign * c).collect()
}

fn lifted_middle(cat: &ClusterCategory, from: usize, to: usize) -> Result<ObjectSet> {
    Ok(lift_check(cat, from, to)?.middle)
}

fn middle(cat: &ClusterCategory, from: usize, to: usize) -> Result<(ObjectSet, MiddleMethod)> {
    if from == cat.tau_c(to) {
        let mut p: Vec<usize> = cat.cluster_quiver().quiver().predecessors(to).collect();
        p.sort_unstable();
        return Ok((p, MiddleMethod::AlmostSplit));
    }
    match rotated_middle(cat, from, to) {
        Ok((mid, t)) => Ok((mid, MiddleMethod::Rotation(t))),
        Err(Error::RotationNotFound(_)) => Ok((lifted_middle(cat, from, to)?, MiddleMethod::DerivedLift)),
        Err(e) => Err(e),
    }
}

/// Both exchange triangles of the exchange pair `(x, y) = (M, M*)`.
///
/// When one object is the translate of the other, one triangle is almost split
/// and the other has zero middle term. Otherwise each middle term comes from a
/// `tau_C`-rotation into a module sequence or, when no rotation exposes the
/// needed Ext direction, from a lift to the derived category.
pub fn exchange_triangles(cat: &ClusterCategory, x: usize, y: usize) -> Result<ExchangeTriangleResult> {
    if !is_exchange_pair(cat, x, y) {
        return Err(Error::PreconditionViolated(format!(
            "{} and {} do not form an exchange pair",
            cat.label(x),
            cat.label(y)
        )));
    }
    let (b, mb) = if x == cat.tau_c(y) {
        (Vec::new(), MiddleMethod::AlmostSplit)
    } else {
        middle(cat, y, x)?
    };
    let (b_prime, mbp) = if y == cat.tau_c(x) {
        (Vec::new(), MiddleMethod::AlmostSplit)
    } else {
        middle(cat, x, y)?
    };
    Ok(ExchangeTriangleResult {
        m: x,
        m_star: y,
        b,
        b_prime,
        methods: (mb, mbp),
    })
}

/// The middle term of `from -> E -> to` computed by the lift to the derived
/// category alone, with frame and Grothendieck-group checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCheck {
    pub middle: ObjectSet,
    pub matches_frames: bool,
    pub k0_additive: bool,
}

pub fn lift_check(cat: &ClusterCategory, from: usize, to: usize) -> Result<LiftCheck> {
    let (x, y) = derived_lift(cat, from, to)?;
    let mid = derived_extension_middle(cat, &x, &y);
    let mut sum = vec![0i32; cat.rank()];
    for v in &mid {
        for (s, c) in sum.iter_mut().zip(k0_class(v)) {
            *s += c;
        }
    }
    let ends: Vec<i32> = k0_class(&x).iter().zip(k0_class(&y)).map(|(a, b)| a + b).collect();
    let mq = cat.module_quiver();
    let mut middle: ObjectSet = mid
        .iter()
        .map(|v| cat.index_of(&mq.f_normalize(v)).expect("normalized object"))
        .collect();
    middle.sort_unstable();
    Ok(LiftCheck {
        matches_frames: derived_frame_middle(cat, &x, &y) == mid,
        k0_additive: sum == ends,
        middle,
    })
}

/// Checks on one exchange-graph edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeReport {
    pub tbar: ObjectSet,
    pub triangles: ExchangeTriangleResult,
    pub exchange_pair: bool,
    pub middle_in_tbar: bool,
    pub disjoint: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeEdgesReport {
    pub edges: Vec<EdgeReport>,
}

impl ExchangeEdgesReport {
    pub fn all_membership(&self) -> bool {
        self.edges.iter().all(|e| e.exchange_pair && e.middle_in_tbar)
    }

    pub fn all_disjoint(&self) -> bool {
        self.edges.iter().all(|e| e.disjoint)
    }
}

pub fn verify_exchange_edges(cat: &ClusterCategory, tilting: &[ObjectSet]) -> Result<ExchangeEdgesReport> {
    let eg = exchange_graph(tilting);
    let edges = eg
        .edges
        .iter()
        .map(|&(i, j)| {
            let (tbar, m, m_star) = eg.edge_data(i, j);
            let triangles = exchange_triangles(cat, m, m_star)?;
            let middle_in_tbar = triangles.b.iter().chain(&triangles.b_prime).all(|s| tbar.contains(s));
            let disjoint = triangles.b.iter().all(|s| !triangles.b_prime.contains(s));
            Ok(EdgeReport {
                exchange_pair: is_exchange_pair(cat, m, m_star),
                tbar,
                triangles,
                middle_in_tbar,
                disjoint,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExchangeEdgesReport { edges })
}

/// Per-sequence checks for a module pair with one-dimensional `Ext^1(M, M*)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleTermCheck {
    pub middle: Vec<usize>,
    pub matches_frames: bool,
    pub dimension_additive: bool,
    pub hom_one: bool,
    pub summands_orthogonal: bool,
}

pub fn check_middle_term(cat: &ClusterCategory, m: usize, m_star: usize) -> Result<MiddleTermCheck> {
    let middle = unique_extension_middle(cat, m, m_star)?;
    let mq = cat.module_quiver();
    let rank = cat.rank();
    let mut sum = vec![0i32; rank];
    for &v in &middle {
        for (s, c) in sum.iter_mut().zip(&mq.root(v).coeffs) {
            *s += c;
        }
    }
    let ends: Vec<i32> = (0..rank)
        .map(|i| mq.root(m).coeffs[i] + mq.root(m_star).coeffs[i])
        .collect();
    Ok(MiddleTermCheck {
        matches_frames: frame_middle(cat, m, m_star) == middle,
        dimension_additive: sum == ends,
        hom_one: middle.iter().all(|&v| cat.hom_mod(m_star, v) == 1 && cat.hom_mod(v, m) == 1),
        summands_orthogonal: middle
            .iter()
            .all(|&a| middle.iter().all(|&b| a == b || cat.hom_mod(a, b) == 0)),
        middle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{alternating_orientation, AlmostPositiveRoot, DynkinType, Orientation};
    use crate::hom::sectional_closure;
    use crate::tilting::enumerate_tilting_sets;

    fn idx(cat: &ClusterCategory, c: &[i32]) -> usize {
        cat.index_of_root(&AlmostPositiveRoot::new(c.to_vec())).unwrap()
    }

    #[test]
    fn a1_degenerate_pair() {
        let cat = ClusterCategory::new(&Orientation::linear(DynkinType::a(1))).unwrap();
        let (m, p) = (idx(&cat, &[1]), idx(&cat, &[-1]));
        assert!(is_exchange_pair(&cat, m, p));
        assert!(!is_exchange_pair(&cat, m, m));
        let r = exchange_triangles(&cat, m, p).unwrap();
        assert!(r.b.is_empty() && r.b_prime.is_empty());
    }

    #[test]
    fn a2_by_hand() {
        let q = Orientation::from_one_based(DynkinType::a(2), &[(1, 2)]).unwrap();
        let cat = ClusterCategory::new(&q).unwrap();
        let mq = cat.module_quiver();
        let s1 = mq.vertex_of(&AlmostPositiveRoot::new(vec![1, 0])).unwrap();
        let s2 = mq.vertex_of(&AlmostPositiveRoot::new(vec![0, 1])).unwrap();
        let p1 = mq.vertex_of(&AlmostPositiveRoot::new(vec![1, 1])).unwrap();
        assert_eq!(unique_extension_middle(&cat, s1, s2).unwrap(), vec![p1]);
        assert!(unique_extension_middle(&cat, s2, s1).is_err());

        // M = P2, M* = P2[1] = tau_C M: the triangle M* -> B -> M is P2[1] -> P1[1] -> P2
        let m = idx(&cat, &[0, 1]);
        let m_star = idx(&cat, &[0, -1]);
        assert_eq!(cat.tau_c(m), m_star);
        let r = exchange_triangles(&cat, m, m_star).unwrap();
        assert_eq!(r.b, vec![idx(&cat, &[-1, 0])]);
        assert!(r.b_prime.is_empty());
    }

    #[test]
    fn type_a_frames_are_slices() {
        let cat = ClusterCategory::new(&alternating_orientation(DynkinType::a(4)).0).unwrap();
        let q = cat.module_quiver().quiver();
        for u in 0..q.vertex_count() {
            assert_eq!(frame(&cat, u, FrameKind::Starting).members, sectional_closure(q, u));
        }
    }

    #[test]
    fn middle_terms_agree_with_frames() {
        for ty in [DynkinType::a(4), DynkinType::d(4), DynkinType::d(5)] {
            let cat = ClusterCategory::new(&alternating_orientation(ty).0).unwrap();
            let t = cat.module_quiver().len();
            for m in 0..t {
                for ms in 0..t {
                    if cat.ext_mod(m, ms) == 1 {
                        let c = check_middle_term(&cat, m, ms).unwrap();
                        assert!(c.matches_frames && c.dimension_additive && c.hom_one && c.summands_orthogonal);
                    }
                }
            }
        }
    }

    #[test]
    fn d4_has_ext_two_pairs() {
        let cat = ClusterCategory::new(&alternating_orientation(DynkinType::d(4)).0).unwrap();
        let pair = (0..cat.len())
            .flat_map(|x| (0..cat.len()).map(move |y| (x, y)))
            .find(|&(x, y)| cat.ext1_c(x, y) == 2)
            .expect("Ext^1 of dimension 2");
        assert!(!is_exchange_pair(&cat, pair.0, pair.1));
        assert!(exchange_triangles(&cat, pair.0, pair.1).is_err());
    }

    #[test]
    fn exchange_edges_and_equivariance() {
        for ty in [DynkinType::a(3), DynkinType::d(4)] {
            let cat = ClusterCategory::new(&alternating_orientation(ty).0).unwrap();
            let sets = enumerate_tilting_sets(&cat).unwrap();
            let rep = verify_exchange_edges(&cat, &sets).unwrap();
            assert!(rep.all_membership());
            for e in &rep.edges {
                let (x, y) = (e.triangles.m, e.triangles.m_star);
                let r = exchange_triangles(&cat, cat.tau_c(x), cat.tau_c(y)).unwrap();
                let rot = |s: &[usize]| {
                    let mut v: Vec<usize> = s.iter().map(|&z| cat.tau_c(z)).collect();
                    v.sort_unstable();
                    v
                };
                assert_eq!(r.b, rot(&e.triangles.b));
                assert_eq!(r.b_prime, rot(&e.triangles.b_prime));
                assert_eq!(e.triangles.b.is_empty(), x == cat.tau_c(y));
                assert_eq!(e.triangles.b_prime.is_empty(), y == cat.tau_c(x));
            }
        }
    }

    #[test]
    fn lift_agrees_with_rotation() {
        for ty in [DynkinType::a(3), DynkinType::a(4), DynkinType::d(4)] {
            let cat = ClusterCategory::new(&alternating_orientation(ty).0).unwrap();
            let mut lifted = 0;
            for x in 0..cat.len() {
                for y in 0..cat.len() {
                    if !is_exchange_pair(&cat, x, y) || x == cat.tau_c(y) {
                        continue;
                    }
                    let lc = lift_check(&cat, x, y).unwrap();
                    assert!(lc.matches_frames && lc.k0_additive);
                    match rotated_middle(&cat, x, y) {
                        Ok((mid, _)) => assert_eq!(mid, lc.middle),
                        Err(Error::RotationNotFound(_)) => lifted += 1,
                        Err(e) => panic!("{e}"),
                    }
                }
            }
            assert!(lifted > 0, "{ty}: rotation alone suffices");
        }
    }
}
