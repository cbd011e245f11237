//! Exact combinatorics of cluster categories of simply-laced Dynkin quivers.
//!
//! The crate realizes the cluster category `C = D^b(kQ) / F`, `F = tau^-1 [1]`,
//! as a finite translation quiver, computes Hom and Ext dimensions by
//! hammocks, enumerates tilting sets and exchange triangles, and checks the
//! whole structure against two independent models: a mesh-category linear
//! algebra oracle and a coefficient-free cluster algebra.
//!
//! Module map:
//!
//! * [`dynkin`]: diagrams, orientations, root systems, compatibility degree
//! * [`knit`]: AR-quiver knitting, `Z Q` windows, the cluster AR-quiver
//! * [`hom`]: hammocks and Hom/Ext in `mod kQ`, `D` and `C`
//! * [`mesh`]: the mesh category over exact rationals (the oracle)
//! * [`tilting`]: tilting sets, configurations, complements, exchange graph
//! * [`triangle`]: exchange pairs, frames and exchange-triangle middle terms
//! * [`cluster`]: seeds, mutation, the bijection with tilting sets
//! * [`laurent`]: exact Laurent polynomials over `Z`
//! * [`clique`], [`linalg`]: maximal cliques and exact rational linear algebra
//! * [`export`], [`verify`]: JSON/DOT encodings and the invariant battery

#![allow(clippy::needless_range_loop)]

pub mod clique;
pub mod cluster;
pub mod dynkin;
pub mod error;
pub mod export;
pub mod hom;
pub mod knit;
pub mod laurent;
pub mod linalg;
pub mod mesh;
pub mod tilting;
pub mod triangle;
pub mod verify;

pub use dynkin::{
    almost_positive_roots, alternating_orientation, compatibility_degree, coxeter_data, euler_form,
    positive_roots, sigma, tau_pm, AlmostPositiveRoot, Bipartition, DynkinType, Orientation, Series,
    Sign,
};
pub use error::{Error, Result};
pub use hom::ClusterCategory;
pub use knit::{ClusterObject, ClusterQuiver, DerivedObject, ModuleQuiver, TranslationQuiver};
