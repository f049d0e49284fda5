//! Genus part of the p-class group of K_1 = K.Q(p) for K = Q(l^n) and p
//! totally split in K, through the normic symbols of cyclotomic units at
//! the p-places; plus the p-adic regulator test and the combined pipeline.
//!
//! Everything is computed exactly in (Z/p^2)[x]/(Phi_f): the symbols only
//! need precision p^2. The class group of K is assumed trivial and the
//! cyclotomic units of K are assumed to have index prime to p in E_K.

mod chevalley;
mod regulator;
mod symbols;
mod units;
mod weber;

pub use chevalley::{chevalley_order, genus_order};
pub use regulator::{regulator_rank, unit_log};
pub use symbols::{
    circulant_rank, genus_matrix, symbol_matrix, symbol_matrix_with, symbol_row, symbol_row_with, MatrixMode,
    SymbolMatrix, SymbolRow, FULL_MATRIX_MAX_N,
};
pub use units::{
    fermat_quotient, find_uniformizer, find_uniformizer_from, root_multiplicity, unit_min_poly, unit_system,
    UnitSystem,
};
pub use weber::{genus_cost, weber_pipeline, ComponentReport, GenusOutcome, Verdict, WeberOptions, WeberReport};

/// Caveat attached to every genus and regulator result.
pub const CAVEAT_CLASS_NUMBER: &str = "assumes C_K = 1";
pub const CAVEAT_UNIT_INDEX: &str = "assumes cyclotomic units of index prime to p";
