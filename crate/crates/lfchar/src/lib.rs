//! Exact cluster characters for symmetrizable Cartan matrices of finite type.
//!
//! The library builds locally free modules over the quiver-with-relations
//! algebra attached to a symmetrizable Cartan datum (C, D, Ω), counts
//! F_q-points of their locally free submodule Grassmannians and filtration
//! varieties, interpolates the counting polynomials and evaluates them at
//! q = 1 to obtain Euler characteristics, assembles the resulting Laurent
//! polynomial characters, and independently computes cluster variables by
//! exact seed mutation so the two routes can be compared machine-side.
//!
//! Everything is exact integer arithmetic; all randomized searches are
//! deterministic in an explicit seed.

pub mod cartan;
pub mod character;
pub mod cluster;
pub mod fq;
pub mod grassmann;
pub mod laurent;
pub mod module;
pub mod presets;

pub use cartan::{CartanDatum, CartanError, CoxeterData, RankVector};
pub use character::{
    check_g_injective_decomposition, cluster_character, g_vector_of_rank, CharError,
    CharacterResult, Report, ReportItem,
};
pub use cluster::{
    cluster_variable_for_root, exchange_graph, mutate_seed, ClusterError, ClusterVariableRecord,
    ExchangeGraph, Seed,
};
pub use grassmann::{
    count_lf_submodules, euler_char_gr, f_polynomial, CountError, CountKey, CountPoly, CountStore,
    FPolynomialValue, IntegerLift, ModuleSpec,
};
pub use laurent::LaurentPoly;
pub use module::{
    arrow_solution_space, direct_sum, ext1_dim_lf, find_rigid, free_module, hom_dim, is_rigid,
    sample_locally_free, HModule, ModuleError,
};
