//! `q`-Whittaker polynomials (Macdonald polynomials at `t = 0`): the scalar
//! product, the Gram–Schmidt tables, Schur expansions, the `Q`-kernel
//! coefficients and the verifiers for the identities built on them.

mod eta;
mod gram;
mod ipoly;
mod qkernel;
mod scalar;
mod table;
mod verify;

pub use eta::{eta_coeffs, eta_series, EtaTable};
pub use gram::Specialization;
pub use qkernel::{c_coefficients, lhs_kernel, phi, psi, q_kernel, KernelSeries};
pub use scalar::{induced_gram, scalar_qw, scalar_qw_at};
pub use table::{
    cached_series_table, cached_table, install_series_table, install_table, norm_closed_form, qwhittaker,
    QWhittakerSeriesTable, QWhittakerTable,
};
pub use verify::{
    crucial_contributions, verify_cauchy_kernels, verify_cauchy_t0, verify_crucial, verify_lhs, verify_lim,
    verify_mult, verify_norm_recursion, verify_orthonormality, verify_schur_degeneration,
};
