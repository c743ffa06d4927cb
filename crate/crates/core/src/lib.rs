//! Persistent directed flag Laplacians.
//!
//! A filtered digraph is turned into its filtered directed flag complex (ordered
//! cliques), from which boundary matrices, combinatorial Laplacians and their
//! persistent counterparts are assembled. The harmonic part of each spectrum
//! gives (persistent) Betti numbers; the smallest nonzero eigenvalue is reported
//! alongside.
//!
//! ```
//! use pdfl::{build_complex, laplacian, spectra, FilteredDigraph, SpectralOptions};
//!
//! let g = FilteredDigraph::new(
//!     vec![(0, 0.0), (1, 0.0), (2, 0.0)],
//!     vec![(0, 1, 0.0), (1, 2, 0.0), (0, 2, 0.0)],
//! )
//! .unwrap();
//! let complex = build_complex(&g, 2);
//! let l1 = laplacian(&complex, 1, f64::INFINITY).unwrap();
//! let rec = spectra(&l1, &SpectralOptions::default()).unwrap();
//! assert_eq!(rec.betti, 0);
//! ```

pub mod boundary;
pub mod complex;
mod error;
pub mod ingest;
pub mod laplacian;
pub mod model;
pub mod oracle;
pub mod persistent;
pub mod report;

pub use boundary::{boundary_matrix, verify_chain_complex, BoundaryMatrix};
pub use complex::{build_complex, FilteredFlagComplex};
pub use error::{Error, Result};
pub use laplacian::{eigenvector_check, laplacian, spectra, LaplacianMatrix, SpectraRecord, SpectralOptions};
pub use model::{Edge, FilteredDigraph, FiltrationGrid, Simplex, Vertex, VertexId};
pub use oracle::{exact_rank, oracle_betti, oracle_persistent_betti, RationalMatrix};
pub use persistent::{
    orthonormalize_columns, persistent_boundary, persistent_chain_basis, persistent_laplacian,
    persistent_laplacian_with_basis, persistent_spectra, PersistentChainBasis, PersistentLaplacian, PersistentOptions,
    ReductionMode,
};
pub use report::{
    emit_csv, emit_json, emit_plot, load_digraph, parse_json, run, run_digraph, InputFormat, PairSchedule, Report,
    RunConfig,
};
