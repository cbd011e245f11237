//! The invariant battery behind `verify`: each suite recomputes a family of
//! structural identities for one Dynkin type and reports pass or fail.

use serde::Serialize;

use crate::cluster::{check_exchange_conjecture, verify_cluster_tilting_bijection};
use crate::dynkin::{alternating_orientation, compatibility_degree, DynkinType, Orientation};
use crate::error::{Error, Result};
use crate::hom::ClusterCategory;
use crate::mesh::linearize;
use crate::tilting::{
    almost_complete_tilting_sets, complements, enumerate_tilting_sets, exceptional_complex_fvector,
    exchange_graph, is_ext_configuration_c, tilting_module_embedding, DWindow,
};
use crate::triangle::{check_middle_term, verify_exchange_edges};

pub const SUITES: [&str; 7] = ["census", "ext", "oracle", "tilting", "d-window", "triangles", "cluster"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checks: usize,
    pub detail: String,
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, suite: &str, summary: String) -> SuiteResult {
        let passed = self.failures.is_empty();
        SuiteResult {
            suite: suite.into(),
            passed,
            checks: self.checks,
            detail: if passed {
                summary
            } else {
                self.failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
            },
        }
    }
}

/// Run one suite. `cat` may use any orientation; suites that need the
/// alternating orientation build it themselves.
pub fn run_suite(cat: &ClusterCategory, suite: &str, seed_cap: usize) -> Result<SuiteResult> {
    let ty = cat.orientation().dynkin_type();
    let n = ty.rank();
    let mut t = Tally::new();
    let summary = match suite {
        "census" => {
            t.check(cat.len() == ty.positive_root_count() + n, || {
                format!("{} objects, expected {}", cat.len(), ty.positive_root_count() + n)
            });
            let sets = enumerate_tilting_sets(cat)?;
            let g = exchange_graph(&sets);
            t.check(g.is_regular(n), || "exchange graph not regular".into());
            t.check(g.is_connected(), || "exchange graph not connected".into());
            let f = exceptional_complex_fvector(cat)?;
            t.check(f.last() == Some(&(sets.len() as u64)) && f.len() == n + 1, || {
                format!("f-vector {f:?} does not end in {} facets", sets.len())
            });
            format!(
                "{} objects, {} tilting sets, {} exchange edges, f-vector {:?}",
                cat.len(),
                sets.len(),
                g.edges.len(),
                f
            )
        }
        "ext" => {
            for x in 0..cat.len() {
                for y in 0..cat.len() {
                    t.check(cat.ext1_c(x, y) == cat.ext1_c(y, x), || {
                        format!("Ext asymmetric on ({}, {})", cat.label(x), cat.label(y))
                    });
                    t.check(cat.ext1_c(x, y) == cat.hom_c(y, cat.tau_c(x)), || {
                        format!("Serre duality fails on ({}, {})", cat.label(x), cat.label(y))
                    });
                    t.check(cat.hom_c(cat.tau_c(x), cat.tau_c(y)) == cat.hom_c(x, y), || {
                        format!("tau not an autoequivalence on ({}, {})", cat.label(x), cat.label(y))
                    });
                }
            }
            let (q, bip) = alternating_orientation(ty);
            let alt = ClusterCategory::new(&q)?;
            for x in 0..alt.len() {
                for y in 0..alt.len() {
                    if x != y {
                        let d = compatibility_degree(ty, &alt.gamma(x), &alt.gamma(y), &bip)?;
                        t.check(d == alt.ext1_c(x, y), || {
                            format!("compatibility degree {d} != Ext {} on ({}, {})", alt.ext1_c(x, y), alt.label(x), alt.label(y))
                        });
                    }
                }
            }
            "symmetry, Serre duality, tau-invariance, compatibility degree".into()
        }
        "oracle" => {
            let lc = linearize(cat.cluster_quiver().quiver())?;
            for x in 0..cat.len() {
                for y in 0..cat.len() {
                    t.check(lc.hom_dim(x, y) == cat.hom_c(x, y) as usize, || {
                        format!("mesh Hom differs on ({}, {})", cat.label(x), cat.label(y))
                    });
                }
            }
            let mq = cat.module_quiver();
            let lm = linearize(mq.quiver())?;
            for u in 0..mq.len() {
                for v in 0..mq.len() {
                    t.check(lm.hom_dim(u, v) == cat.hom_mod(u, v) as usize, || {
                        format!("mesh Hom differs on modules ({}, {})", mq.root(u).label(), mq.root(v).label())
                    });
                }
            }
            t.check(lc.mesh_violations().is_empty(), || "mesh relations fail".into());
            "mesh category Hom equals hammock Hom".into()
        }
        "tilting" => {
            let sets = enumerate_tilting_sets(cat)?;
            for s in &sets {
                t.check(is_ext_configuration_c(cat, s), || format!("{:?} is not an Ext-configuration", s));
            }
            for tbar in almost_complete_tilting_sets(&sets) {
                let ok = complements(cat, &tbar).is_ok();
                t.check(ok, || format!("{tbar:?} lacks exactly two complements"));
            }
            let emb = tilting_module_embedding(cat)?;
            t.check(emb.all_tilting_in_c && emb.all_ext_configurations && emb.injective, || {
                "tilting modules do not embed".into()
            });
            format!("{} tilting sets, {} tilting modules", sets.len(), emb.modules.len())
        }
        "d-window" => {
            let dw = DWindow::standard(cat)?;
            let sets = enumerate_tilting_sets(cat)?;
            for s in &sets {
                let pre = dw.preimage(cat, s);
                t.check(dw.is_f_stable(cat, &pre), || format!("preimage of {s:?} not F-stable"));
            }
            format!("{} preimages F-stable in a window of {} objects", sets.len(), dw.len())
        }
        "triangles" => {
            let sets = enumerate_tilting_sets(cat)?;
            let rep = verify_exchange_edges(cat, &sets)?;
            for e in &rep.edges {
                t.check(e.exchange_pair && e.middle_in_tbar, || {
                    format!("edge {:?}: middle term leaves the shared set", e.tbar)
                });
                t.check(e.disjoint, || format!("edge {:?}: middle terms overlap", e.tbar));
            }
            let mq = cat.module_quiver();
            for m in 0..mq.len() {
                for ms in 0..mq.len() {
                    if cat.ext_mod(m, ms) == 1 {
                        let c = check_middle_term(cat, m, ms)?;
                        t.check(c.matches_frames && c.dimension_additive && c.hom_one && c.summands_orthogonal, || {
                            format!("middle term of ({}, {}) fails", mq.root(m).label(), mq.root(ms).label())
                        });
                    }
                }
            }
            format!("{} exchange edges", rep.edges.len())
        }
        "cluster" => {
            let (q, _) = alternating_orientation(ty);
            let alt = ClusterCategory::new(&q)?;
            let b = verify_cluster_tilting_bijection(&alt, seed_cap)?;
            t.check(b.holds(), || format!("cluster/tilting comparison fails: {b:?}"));
            let c = check_exchange_conjecture(&alt, seed_cap)?;
            for e in &c.edges {
                t.check(e.passes(), || {
                    format!("edge {} / {}: {} vs {}", e.m, e.m_star, e.product, e.predicted)
                });
            }
            format!("{} clusters, {} variables, {} exchange relations", b.clusters, b.variables, c.edges.len())
        }
        other => {
            return Err(Error::PreconditionViolated(format!(
                "unknown suite {other}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    Ok(t.finish(suite, summary))
}

/// Run `suite`, or every suite for `"all"`.
pub fn run(cat: &ClusterCategory, suite: &str, seed_cap: usize) -> Result<Vec<SuiteResult>> {
    if suite == "all" {
        SUITES.iter().map(|s| run_suite(cat, s, seed_cap)).collect()
    } else {
        Ok(vec![run_suite(cat, suite, seed_cap)?])
    }
}

/// Fixed-width pass table.
pub fn format_table(results: &[SuiteResult]) -> String {
    let mut out = format!("{:<10} {:<6} {:>7}  {}\n", "suite", "result", "checks", "detail");
    for r in results {
        out.push_str(&format!(
            "{:<10} {:<6} {:>7}  {}\n",
            r.suite,
            if r.passed { "pass" } else { "FAIL" },
            r.checks,
            r.detail
        ));
    }
    out
}

/// Convenience for the linear orientation.
pub fn run_linear(ty: DynkinType, suite: &str, seed_cap: usize) -> Result<Vec<SuiteResult>> {
    run(&ClusterCategory::new(&Orientation::linear(ty))?, suite, seed_cap)
}
