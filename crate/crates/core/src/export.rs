//! JSON and Graphviz DOT encodings. Every function orders its output
//! deterministically, so repeated and parallel runs are byte-identical.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::cluster::{denominator_vector, SeedClosure};
use crate::hom::ClusterCategory;
use crate::knit::{ClusterObject, ModuleQuiver, TranslationQuiver};
use crate::mesh::EndQuiver;
use crate::tilting::{ExchangeGraph, ObjectSet};
use crate::triangle::ExchangeTriangleResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    /// `"module"` or `"shifted_projective"`.
    pub kind: String,
    /// Dimension vector, or `-alpha_i` for `P_i[1]`.
    pub root: Vec<i32>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<[usize; 2]>,
    /// `[x, tau x]` for every non-projective vertex.
    pub tau: Vec<[usize; 2]>,
}

fn quiver_json(tq: &TranslationQuiver, vertices: Vec<VertexJson>) -> QuiverJson {
    let mut arrows: Vec<[usize; 2]> = tq.arrows().iter().map(|&(s, t)| [s, t]).collect();
    arrows.sort_unstable();
    let tau = (0..tq.vertex_count())
        .filter_map(|x| tq.tau(x).map(|y| [x, y]))
        .collect();
    QuiverJson { vertices, arrows, tau }
}

pub fn cluster_quiver_json(cat: &ClusterCategory) -> QuiverJson {
    let n = cat.rank();
    let vertices = cat
        .objects()
        .iter()
        .enumerate()
        .map(|(id, x)| VertexJson {
            id,
            kind: match x {
                ClusterObject::Module(_) => "module",
                ClusterObject::ShiftedProjective(_) => "shifted_projective",
            }
            .into(),
            root: x.gamma(n).coeffs,
            label: x.label(n),
        })
        .collect();
    quiver_json(cat.cluster_quiver().quiver(), vertices)
}

pub fn module_quiver_json(mq: &ModuleQuiver) -> QuiverJson {
    let vertices = mq
        .vertices()
        .iter()
        .enumerate()
        .map(|(id, v)| VertexJson {
            id,
            kind: "module".into(),
            root: v.root.coeffs.clone(),
            label: v.root.label(),
        })
        .collect();
    quiver_json(mq.quiver(), vertices)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of a translation quiver; `tau` adds dashed `x -> tau x` edges.
pub fn quiver_dot(name: &str, tq: &TranslationQuiver, labels: &[String], tau: bool) -> String {
    let mut out = format!("digraph \"{}\" {{\n", escape(name));
    for (v, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", escape(l));
    }
    let mut arrows = tq.arrows().to_vec();
    arrows.sort_unstable();
    for (s, t) in arrows {
        let _ = writeln!(out, "  {s} -> {t};");
    }
    if tau {
        for x in 0..tq.vertex_count() {
            if let Some(y) = tq.tau(x) {
                let _ = writeln!(out, "  {x} -> {y} [style=dashed, constraint=false];");
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn cluster_quiver_dot(cat: &ClusterCategory, tau: bool) -> String {
    let labels: Vec<String> = (0..cat.len()).map(|x| cat.label(x)).collect();
    quiver_dot("cluster", cat.cluster_quiver().quiver(), &labels, tau)
}

pub fn module_quiver_dot(mq: &ModuleQuiver, tau: bool) -> String {
    let labels: Vec<String> = mq.vertices().iter().map(|v| v.root.label()).collect();
    quiver_dot("module", mq.quiver(), &labels, tau)
}

/// Member labels of a set of cluster objects, in object order.
pub fn set_labels(cat: &ClusterCategory, set: &[usize]) -> Vec<String> {
    set.iter().map(|&x| cat.label(x)).collect()
}

/// Tilting sets as arrays of labels.
pub fn tilting_json(cat: &ClusterCategory, sets: &[ObjectSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| set_labels(cat, s)).collect()
}

/// Undirected DOT graph; vertices labelled `{a, b, c}` by their members.
pub fn exchange_graph_dot(cat: &ClusterCategory, g: &ExchangeGraph) -> String {
    let mut out = String::from("graph \"exchange\" {\n");
    for (v, set) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "  {v} [label=\"{{{}}}\"];", set_labels(cat, set).join(", "));
    }
    for &(a, b) in &g.edges {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

/// DOT digraph of an endomorphism quiver, multiple arrows drawn separately.
pub fn end_quiver_dot(cat: &ClusterCategory, eq: &EndQuiver) -> String {
    let mut out = String::from("digraph \"end\" {\n");
    for (p, &x) in eq.objects.iter().enumerate() {
        let _ = writeln!(out, "  {p} [label=\"{}\"];", cat.label(x));
    }
    for (s, t) in eq.arrow_multiset() {
        let _ = writeln!(out, "  {s} -> {t};");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub labels: Vec<String>,
    /// Row-major, `matrix[x][y]` for the pair `(x, y)`.
    pub matrix: Vec<Vec<u32>>,
}

pub fn ext_table_json(cat: &ClusterCategory) -> TableJson {
    TableJson {
        labels: (0..cat.len()).map(|x| cat.label(x)).collect(),
        matrix: cat.ext_table().to_vec(),
    }
}

pub fn hom_table_json(cat: &ClusterCategory) -> TableJson {
    TableJson {
        labels: (0..cat.len()).map(|x| cat.label(x)).collect(),
        matrix: cat.hom_table().to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "Mstar")]
    pub m_star: String,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "Bprime")]
    pub b_prime: Vec<String>,
}

pub fn triangle_json(cat: &ClusterCategory, t: &ExchangeTriangleResult) -> TriangleJson {
    TriangleJson {
        m: cat.label(t.m),
        m_star: cat.label(t.m_star),
        b: set_labels(cat, &t.b),
        b_prime: set_labels(cat, &t.b_prime),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterJson {
    pub variables: Vec<String>,
    pub denominators: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureJson {
    pub clusters: Vec<ClusterJson>,
    pub variables: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

pub fn closure_json(c: &SeedClosure) -> ClosureJson {
    ClosureJson {
        clusters: c
            .clusters
            .iter()
            .map(|cl| ClusterJson {
                variables: cl.iter().map(ToString::to_string).collect(),
                denominators: cl.iter().map(|v| denominator_vector(v).coeffs).collect(),
            })
            .collect(),
        variables: c.variables.iter().map(ToString::to_string).collect(),
        edges: c.cluster_edges.iter().map(|&(a, b)| [a, b]).collect(),
    }
}
