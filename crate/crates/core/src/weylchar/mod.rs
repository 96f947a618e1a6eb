//! Graded characters and Hilbert series of local Weyl, global Weyl and
//! projective modules for the current algebra `sl_r[t]`, and the
//! multiplicities of global Weyl modules in projectives.

mod character;
mod hilbert;
mod reciprocity;

pub use character::{local_weyl_character, CharacterRow, GradedCharacter};
pub use hilbert::{hilbert_global, hilbert_local, hilbert_projective, HilbertSeries};
pub use reciprocity::{
    dominant_weights, reciprocity_multiplicities, reciprocity_terms, verify_reciprocity, verify_reciprocity_with,
    Grouping, ReciprocityRow, ReciprocityTable,
};
