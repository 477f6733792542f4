//! Decide which two-variable words `w(x, y)` in `▷` and `▷⁻¹` induce
//! endofunctors of the theory of quandles (the power operations `x ▷^k y`) or
//! of racks (`x ▷^k F^j(y)` with `F(y) = y ▷ y`), and check the answer
//! against finite quandles and racks.
//!
//! ```
//! use qk_core::{classify_quandle, parse, Classification};
//!
//! let w = parse("x |>- (x |>- y)").unwrap();
//! assert_eq!(classify_quandle(&w).unwrap(), Classification::QuandlePower { k: -2 });
//! ```

pub mod classify;
pub mod cli;
pub mod finite;
pub mod freealg;
pub mod group;
pub mod rewrite;
pub mod term;

pub use classify::{
    classify, classify_quandle, classify_rack, one_relator_test, Classification, ClassifyError, Reason,
    RefutationTrace, RelatorReport, Theory,
};
pub use finite::{AxiomReport, FiniteError, FiniteQuandle, FiniteRack, OpTable, Witness};
pub use freealg::{quandle_image, quandle_nf, rack_nf, to_left_mults, ConjugateForm, LeftMultSequence, RackNormalForm};
pub use group::{GroupWord, Letter, Sign};
pub use term::{parse, power_word, Generator, Op, ParseError, Word};
