//! Builders for every group family the toolkit names: metacyclic families,
//! symmetric and alternating groups, direct and semidirect products,
//! Frobenius/Schmidt groups and polycyclic presentations.

mod families;
mod pc;
mod perm;
mod products;

pub use families::{cyclic, elementary_abelian, family_group, heisenberg, metacyclic, Family};
pub use pc::{pc_group, presentation_from_group, word_string, PcPresentation, Word};
pub use perm::{alternating, symmetric};
pub use products::{
    direct_power, direct_product, frobenius_schmidt, matrix_automorphism, power_action,
    product_id, product_parts, semidirect_product,
};
