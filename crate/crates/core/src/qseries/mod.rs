//! Exact truncated q-series and the SZ, SZ⋆, BZ and OOZ evaluators, with a
//! Rota–Baxter cross-check for OOZ and a floating-point classical oracle.

mod eval;
mod float;
mod qpoly;
mod rota_baxter;

pub use eval::{
    eval_compositions, eval_word, word_composition, zeta, zeta_bz, zeta_ooz, zeta_sz, zeta_sz_star,
    Evaluator, ModelTag,
};
pub use float::{
    limit_scaling_check, zeta_classical_float, FloatEstimate, LimitReport, LimitSample,
};
pub use qpoly::{QPoly, QPolyJson};
pub use rota_baxter::rota_baxter_eval_ooz;
