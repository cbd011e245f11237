//! Clique enumeration on small graphs (at most [`MAX_VERTICES`] vertices).

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 256;

/// A fixed-width vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits([u64; 4]);

impl Bits {
    pub fn empty() -> Self {
        Bits([0; 4])
    }

    pub fn full(n: usize) -> Self {
        let mut b = Bits::empty();
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    pub fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1 << (v & 63);
    }

    pub fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1 << (v & 63));
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0[v >> 6] >> (v & 63) & 1 == 1
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] & o.0[k]))
    }

    pub fn and_not(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] & !o.0[k]))
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] | o.0[k]))
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// Undirected simple graph stored as adjacency bitsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Bits>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::PreconditionViolated(format!(
                "graph on {n} vertices exceeds the {MAX_VERTICES}-vertex limit"
            )));
        }
        Ok(Graph { adj: vec![Bits::empty(); n] })
    }

    /// Graph with an edge `{u, v}` (u != v) wherever `edge(u, v)` holds; `edge`
    /// is only queried for `u < v`.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbours(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = Bits::empty();
        seen.insert(0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.adj[v].and_not(&seen).iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen.len() == n
    }

    /// Bron–Kerbosch with pivoting, restricted to cliques inside `p`, extending
    /// `r`. Reports each maximal clique (maximal within `p ∪ x`) to `f` in
    /// ascending vertex order. Stops early when `f` breaks.
    fn bron_kerbosch<B>(
        &self,
        r: &mut Vec<usize>,
        mut p: Bits,
        mut x: Bits,
        f: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                return f(&c);
            }
            return ControlFlow::Continue(());
        }
        let pivot = p
            .or(&x)
            .iter()
            .max_by_key(|&u| (p.and(&self.adj[u]).len(), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        for v in p.and_not(&self.adj[pivot]).iter().collect::<Vec<_>>() {
            r.push(v);
            self.bron_kerbosch(r, p.and(&self.adj[v]), x.and(&self.adj[v]), f)?;
            r.pop();
            p.remove(v);
            x.insert(v);
        }
        ControlFlow::Continue(())
    }

    /// Visit maximal cliques in a deterministic order until `f` breaks.
    pub fn try_for_each_maximal_clique<B>(
        &self,
        mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        self.bron_kerbosch(&mut Vec::new(), Bits::full(self.len()), Bits::empty(), &mut f)
    }

    /// All maximal cliques, each sorted, the list sorted lexicographically.
    ///
    /// The top level of the search is split across threads; the sorted output
    /// is independent of scheduling.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        if n == 0 {
            return vec![vec![]];
        }
        // Branch on vertex v with candidates restricted to later neighbours and
        // earlier neighbours excluded: the standard ordering split.
        let mut all: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut later = Bits::empty();
                let mut earlier = Bits::empty();
                for w in self.adj[v].iter() {
                    if w > v {
                        later.insert(w);
                    } else {
                        earlier.insert(w);
                    }
                }
                let mut out = Vec::new();
                let _ = self.bron_kerbosch::<()>(&mut vec![v], later, earlier, &mut |c| {
                    out.push(c.to_vec());
                    ControlFlow::Continue(())
                });
                out
            })
            .collect();
        all.sort();
        all
    }

    /// Number of cliques of each size `0, 1, 2, ...` (the empty clique included).
    pub fn clique_counts(&self) -> Vec<u64> {
        fn walk(g: &Graph, size: usize, p: Bits, counts: &mut Vec<u64>) {
            if counts.len() <= size {
                counts.resize(size + 1, 0);
            }
            counts[size] += 1;
            let mut rest = p;
            for v in p.iter() {
                rest.remove(v);
                walk(g, size + 1, rest.and(&g.adj[v]), counts);
            }
        }
        let mut counts = Vec::new();
        walk(self, 0, Bits::full(self.len()), &mut counts);
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_maximal(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.len();
        let is_clique = |m: u32| {
            (0..n).all(|u| m >> u & 1 == 0 || (u + 1..n).all(|v| m >> v & 1 == 0 || g.has_edge(u, v)))
        };
        let mut out: Vec<Vec<usize>> = (0..1u32 << n)
            .filter(|&m| is_clique(m) && (0..n).all(|v| m >> v & 1 == 1 || !is_clique(m | 1 << v)))
            .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn bits_roundtrip() {
        let mut b = Bits::empty();
        for v in [0, 63, 64, 200, 255] {
            b.insert(v);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 200, 255]);
        b.remove(64);
        assert_eq!(b.len(), 4);
        assert!(!b.contains(64));
    }

    #[test]
    fn pentagon() {
        let mut g = Graph::new(5).unwrap();
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5);
        }
        assert_eq!(g.maximal_cliques().len(), 5);
        assert_eq!(g.clique_counts(), vec![1, 5, 5]);
        assert!(g.is_connected());
    }

    #[test]
    fn empty_graphs() {
        assert_eq!(Graph::new(0).unwrap().maximal_cliques(), vec![Vec::<usize>::new()]);
        let g = Graph::new(2).unwrap();
        assert_eq!(g.maximal_cliques(), vec![vec![0], vec![1]]);
        assert_eq!(g.clique_counts(), vec![1, 2]);
        assert!(!g.is_connected());
        assert!(Graph::new(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn early_exit() {
        let g = Graph::from_fn(6, |_, _| false).unwrap();
        let mut seen = 0;
        let r = g.try_for_each_maximal_clique(|c| {
            seen += 1;
            if c == [2] {
                ControlFlow::Break(c[0])
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(r, ControlFlow::Break(2));
        assert!(seen <= 6);
    }

    proptest! {
        #[test]
        fn maximal_cliques_match_brute_force(n in 1usize..11, seed in any::<u64>()) {
            let mut s = seed;
            let g = Graph::from_fn(n, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                s >> 62 != 0
            }).unwrap();
            prop_assert_eq!(g.maximal_cliques(), brute_maximal(&g));
            let mut serial = Vec::new();
            let _ = g.try_for_each_maximal_clique::<()>(|c| { serial.push(c.to_vec()); ControlFlow::Continue(()) });
            serial.sort();
            prop_assert_eq!(serial, brute_maximal(&g));
        }
    }
}
