//! The mesh category of a finite translation quiver over `Q`: path spaces modulo
//! the ideal generated by the mesh relations, built one path length at a time.
//!
//! For a fixed source `x`, write `V_L(x, y)` for the length-`L` part of
//! `Hom(x, y)`. Then `V_0(x, x) = Q`, and for `L >= 0`
//!
//! ```text
//! V_{L+1}(x, z) = coker( V_{L-1}(x, tau z) -> ⊕_{a: y -> z} V_L(x, y) ),
//!                 q  ↦  (σ(a) q)_a
//! ```
//!
//! where `σ(a): tau z -> y` is the polarization of `a`. Each graded piece keeps a
//! basis of representative paths and, for every arrow leaving its target, the
//! matrix of post-composition with that arrow. All arithmetic is exact.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::knit::TranslationQuiver;
use crate::linalg::{apply_columns, rank, unit, zeros, Rref, Vector};

#[derive(Debug, Clone, Default)]
struct Piece {
    /// Representative path (arrow ids, in order of traversal) of each basis element.
    reps: Vec<Vec<usize>>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.reps.len()
    }
}

#[derive(Debug, Clone)]
struct SourceData {
    /// `levels[L][y]` is `V_L(x, y)`.
    levels: Vec<Vec<Piece>>,
    /// `post[L][a]`: columns of post-composition with arrow `a`,
    /// `V_L(x, s(a)) -> V_{L+1}(x, t(a))`.
    post: Vec<Vec<Vec<Vector>>>,
    /// `offsets[y][L]`: position of `V_L(x, y)` inside the basis of `Hom(x, y)`.
    offsets: Vec<Vec<usize>>,
}

/// The mesh category of a translation quiver, with Hom bases and composition.
#[derive(Debug, Clone)]
pub struct LinearizedCategory {
    quiver: TranslationQuiver,
    sources: Vec<SourceData>,
}

/// A morphism `source -> target`, in the graded basis of `Hom(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub coords: Vector,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// The default path-length cap: `4 (h + 2) r`, with `r` the number of
/// tau-orbits and `h` bounded above by twice the longest orbit.
pub fn default_length_cap(tq: &TranslationQuiver) -> usize {
    let orbits = tq.tau_orbits();
    let longest = orbits.iter().map(Vec::len).max().unwrap_or(0);
    4 * (2 * longest + 2) * orbits.len().max(1)
}

pub fn linearize(tq: &TranslationQuiver) -> Result<LinearizedCategory> {
    linearize_with_cap(tq, default_length_cap(tq))
}

pub fn linearize_with_cap(tq: &TranslationQuiver, cap: usize) -> Result<LinearizedCategory> {
    let sources = (0..tq.vertex_count())
        .map(|x| build_source(tq, x, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearizedCategory {
        quiver: tq.clone(),
        sources,
    })
}

fn build_source(tq: &TranslationQuiver, x: usize, cap: usize) -> Result<SourceData> {
    let n = tq.vertex_count();
    let mut level0 = vec![Piece::default(); n];
    level0[x].reps.push(Vec::new());
    let mut levels = vec![level0];
    let mut post: Vec<Vec<Vec<Vector>>> = Vec::new();

    loop {
        let l = levels.len() - 1;
        if l > cap {
            return Err(Error::NoStabilization(cap));
        }
        let cur = &levels[l];
        let mut next = vec![Piece::default(); n];
        let mut post_l: Vec<Vec<Vector>> = vec![Vec::new(); tq.arrows().len()];
        for z in 0..n {
            let incoming = tq.in_arrows(z);
            let mut block_start = Vec::with_capacity(incoming.len());
            let mut total = 0;
            for &a in incoming {
                block_start.push(total);
                total += cur[tq.arrow(a).0].dim();
            }
            let mut relations = Vec::new();
            if let (Some(tz), true) = (tq.tau(z), l >= 1) {
                for q in 0..levels[l - 1][tz].dim() {
                    let mut rel = zeros(total);
                    for (k, &a) in incoming.iter().enumerate() {
                        let sigma = tq.polarization(a).expect("mesh arrow into a translated vertex");
                        for (j, c) in post[l - 1][sigma][q].iter().enumerate() {
                            rel[block_start[k] + j] = c.clone();
                        }
                    }
                    relations.push(rel);
                }
            }
            let rref = Rref::new(total, relations);
            for c in rref.free_columns() {
                let k = block_start.partition_point(|&s| s <= c) - 1;
                let a = incoming[k];
                let mut path = cur[tq.arrow(a).0].reps[c - block_start[k]].clone();
                path.push(a);
                next[z].reps.push(path);
            }
            for (k, &a) in incoming.iter().enumerate() {
                post_l[a] = (0..cur[tq.arrow(a).0].dim())
                    .map(|j| rref.quotient_coords(&unit(total, block_start[k] + j)))
                    .collect();
            }
        }
        post.push(post_l);
        let done = next.iter().all(|p| p.dim() == 0);
        levels.push(next);
        if done {
            break;
        }
    }

    let offsets = (0..n)
        .map(|y| {
            let mut acc = 0;
            levels
                .iter()
                .map(|lv| {
                    let o = acc;
                    acc += lv[y].dim();
                    o
                })
                .collect()
        })
        .collect();
    Ok(SourceData { levels, post, offsets })
}

impl LinearizedCategory {
    pub fn quiver(&self) -> &TranslationQuiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    /// Length `L` of the longest nonzero path class over all sources.
    pub fn nilpotency_length(&self) -> usize {
        self.sources.iter().map(|s| s.levels.len() - 1).max().unwrap_or(0)
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.sources[x].levels.iter().map(|lv| lv[y].dim()).sum()
    }

    /// Dimensions of the graded pieces of `Hom(x, y)`, by path length.
    pub fn graded_dims(&self, x: usize, y: usize) -> Vec<usize> {
        self.sources[x].levels.iter().map(|lv| lv[y].dim()).collect()
    }

    pub fn hom_table(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|x| (0..self.len()).map(|y| self.hom_dim(x, y)).collect()).collect()
    }

    pub fn zero(&self, x: usize, y: usize) -> Morphism {
        Morphism {
            source: x,
            target: y,
            coords: zeros(self.hom_dim(x, y)),
        }
    }

    pub fn basis(&self, x: usize, y: usize) -> Vec<Morphism> {
        let d = self.hom_dim(x, y);
        (0..d)
            .map(|k| Morphism {
                source: x,
                target: y,
                coords: unit(d, k),
            })
            .collect()
    }

    pub fn identity(&self, x: usize) -> Morphism {
        let mut m = self.zero(x, x);
        m.coords[0] = BigRational::from_integer(1.into());
        m
    }

    pub fn arrow(&self, a: usize) -> Morphism {
        let (x, y) = self.quiver.arrow(a);
        let src = &self.sources[x];
        let mut m = self.zero(x, y);
        if let Some(post0) = src.post.first() {
            let off = src.offsets[y][1];
            for (k, c) in post0[a][0].iter().enumerate() {
                m.coords[off + k] = c.clone();
            }
        }
        m
    }

    /// Push `v` in `V_l(x, start)` along `path`.
    fn transport(&self, x: usize, mut l: usize, v: &[BigRational], path: &[usize]) -> Option<Vector> {
        let src = &self.sources[x];
        let mut cur = v.to_vec();
        for &a in path {
            let cols = src.post.get(l)?;
            let (_, t) = self.quiver.arrow(a);
            let out_dim = src.levels.get(l + 1).map_or(0, |lv| lv[t].dim());
            cur = apply_columns(&cols[a], &cur, out_dim);
            l += 1;
        }
        Some(cur)
    }

    /// `g ∘ f` for `f: x -> y` and `g: y -> z`.
    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Morphism {
        assert_eq!(f.target, g.source, "composition of non-composable morphisms");
        let (x, y, z) = (f.source, f.target, g.target);
        let mut out = self.zero(x, z);
        let sx = &self.sources[x];
        let sy = &self.sources[y];
        for (lf, lvl) in sx.levels.iter().enumerate() {
            let df = lvl[y].dim();
            if df == 0 {
                continue;
            }
            let fo = sx.offsets[y][lf];
            let fpart = &f.coords[fo..fo + df];
            if fpart.iter().all(Zero::is_zero) {
                continue;
            }
            for (lg, glvl) in sy.levels.iter().enumerate() {
                let go = sy.offsets[z][lg];
                for (j, path) in glvl[z].reps.iter().enumerate() {
                    let coeff = &g.coords[go + j];
                    if coeff.is_zero() {
                        continue;
                    }
                    let Some(img) = self.transport(x, lf, fpart, path) else {
                        continue;
                    };
                    let lt = lf + lg;
                    if lt >= sx.levels.len() {
                        continue;
                    }
                    let to = sx.offsets[z][lt];
                    for (k, c) in img.iter().enumerate() {
                        out.coords[to + k] += coeff * c;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Morphism, g: &Morphism) -> Morphism {
        assert_eq!((f.source, f.target), (g.source, g.target));
        Morphism {
            source: f.source,
            target: f.target,
            coords: f.coords.iter().zip(&g.coords).map(|(a, b)| a + b).collect(),
        }
    }

    /// The mesh sum `Σ_a a ∘ σ(a)` at every translated vertex, each evaluated
    /// through [`LinearizedCategory::compose`]. Returns the vertices where it
    /// fails to vanish.
    pub fn mesh_violations(&self) -> Vec<usize> {
        let q = &self.quiver;
        (0..q.vertex_count())
            .filter(|&z| {
                let Some(tz) = q.tau(z) else { return false };
                let mut sum = self.zero(tz, z);
                for &a in q.in_arrows(z) {
                    let s = q.polarization(a).expect("mesh arrow");
                    sum = self.add(&sum, &self.compose(&self.arrow(s), &self.arrow(a)));
                }
                !sum.is_zero()
            })
            .collect()
    }
}

/// The quiver of the endomorphism algebra of `⊕ T`: one vertex per member, and
/// `dim rad(T_i, T_j) - dim rad²(T_i, T_j)` arrows `i -> j`. Arrows follow
/// morphisms in the category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndQuiver {
    pub objects: Vec<usize>,
    /// `(i, j, multiplicity)` over positions in `objects`, multiplicity > 0.
    pub arrows: Vec<(usize, usize, usize)>,
}

impl EndQuiver {
    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|&(i, j, _)| i == j)
    }

    /// Arrows repeated by multiplicity, sorted.
    pub fn arrow_multiset(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .arrows
            .iter()
            .flat_map(|&(i, j, m)| std::iter::repeat_n((i, j), m))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_oriented_cycle(&self) -> bool {
        let k = self.objects.len();
        if self.arrows.len() != k || self.arrows.iter().any(|a| a.2 != 1) {
            return false;
        }
        let next: BTreeMap<usize, usize> = self.arrows.iter().map(|&(i, j, _)| (i, j)).collect();
        if next.len() != k {
            return false;
        }
        let mut v = 0;
        for step in 1..=k {
            v = next[&v];
            if v == 0 {
                return step == k;
            }
        }
        false
    }

    /// A linearly oriented path through all vertices.
    pub fn is_linear(&self) -> bool {
        let k = self.objects.len();
        if self.arrows.len() + 1 != k || self.arrows.iter().any(|a| a.2 != 1) {
            return false;
        }
        let mut indeg = vec![0; k];
        let mut outdeg = vec![0; k];
        for &(i, j, _) in &self.arrows {
            outdeg[i] += 1;
            indeg[j] += 1;
        }
        let sources = (0..k).filter(|&v| indeg[v] == 0).count();
        sources == 1 && indeg.iter().all(|&d| d <= 1) && outdeg.iter().all(|&d| d <= 1)
    }
}

pub fn end_quiver(lc: &LinearizedCategory, t: &[usize]) -> EndQuiver {
    let k = t.len();
    let mut arrows = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let rad = lc.hom_dim(t[i], t[j]);
            if rad == 0 {
                continue;
            }
            let mut composites = Vec::new();
            for (m, &mid) in t.iter().enumerate() {
                if m == i || m == j {
                    continue;
                }
                for f in lc.basis(t[i], mid) {
                    for g in lc.basis(mid, t[j]) {
                        composites.push(lc.compose(&f, &g).coords);
                    }
                }
            }
            let mult = rad - rank(&composites);
            if mult > 0 {
                arrows.push((i, j, mult));
            }
        }
    }
    EndQuiver {
        objects: t.to_vec(),
        arrows,
    }
}
