//! Constructions around ideals with a square among the variable powers:
//! lifted forms and their zero set, regularity of the last variable,
//! syzygy weights, generators of annihilators of elementary symmetric
//! forms, and random checks that generic ideals of this shape are level.

mod esym;
mod lift;
mod spot;

pub use esym::{check_esym_generators, esym_annihilator_generators, half_gap, lattice_path_count, sqfree_leading_set};
pub use lift::{
    build_lifted_family, check_colon_equals_plus, check_lift_of_colon, check_syzygies_up_to, check_syzygy_property,
    check_xn_regular, enumerate_point_set, syzygy_combination, LiftedFamily, ProjectivePointSet, SquareSetup,
};
pub use spot::{random_generic_level_spotcheck, SpotCheck, DEFAULT_RETRIES};
