//! Matrix realizations of gl_N-modules and gl_N[t]-modules.

pub mod center;
pub mod character;
pub mod coinvariant;
pub mod module;
pub mod partition;
pub mod singular;
pub mod spec;

pub use center::{central_z, z_eigenvalue};
pub use character::{dim_multiplicity, graded_character_cell, graded_character_weyl, QSeries};
pub use coinvariant::{build_weyl_tensor, CoinvariantAlgebra};
pub use module::{build_irrep, build_tensor_evaluation, standard_rep, tensor_power, ModuleRep};
pub use partition::{partitions_of, Partition};
pub use singular::{singular_space, SingularWeightSpace};
pub use spec::ProblemSpec;
