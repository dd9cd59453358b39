//! Finite fields, norm-one tori and character sums for the elliptic SL_l
//! multiplicity computation, plus the Levi-centre filter for split tori.

pub mod filter;
pub mod finite_field;
pub mod lie;
pub mod torus;

pub use filter::{cuspidal_filter_check, sl2_condition};
pub use finite_field::{Fe, FiniteField};
pub use lie::LieTorusModel;
pub use torus::{
    assemble_j, build_torus, central_character_direct, central_character_ok, char_sum_regular, char_sum_regular_direct,
    closed_form_char_sum, contragredient_test, dl_torus_value, general_position, j_nilp_closed_form, sl_trace_row,
    NormOneTorus, SlTraceRow, TorusCharacter,
};
