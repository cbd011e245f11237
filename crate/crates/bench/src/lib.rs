pub use clustercat;
