//! Computer-search content: the Diophantine tables, the (−2)-configuration
//! preimage analyses and the decomposition enumerations.

pub mod decompose;
pub mod diff;
pub mod preimage;
pub mod subcase;
pub mod tables;

pub use decompose::{decompose_class, PartsSelector};
pub use diff::{diff_table, TableDiff};
pub use preimage::{preimage_configuration_search, preimage_search, GramConfiguration, PreimageQuery};
pub use tables::{
    enumerate_table, enumerate_table_p4, enumerate_table_p5, enumerate_table_p6, printed_table, Constraint,
    ConstraintSystem, SolutionRow, TableCase, TableRow,
};
