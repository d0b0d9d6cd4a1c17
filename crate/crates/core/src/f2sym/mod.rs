//! Linear algebra over F₂ and the symplectic groups `Sp(2g, 2)` for `g ≤ 3`.

pub mod bitmatrix;
pub mod classes;
pub mod embedding;
pub mod group;
pub mod perm;

pub use bitmatrix::{BitMatrix, SymplecticForm};
pub use classes::{conjugacy_classes, ConjugacyClassification};
pub use embedding::{
    class_fusion, embed_product, embed_wreath, perm_to_symplectic, wreath_matrix, Decoration,
    SubgroupEmbedding, SymmetricModel,
};
pub use group::{enumerate_group, symplectic_order, transvections, FiniteMatrixGroup};
pub use perm::Permutation;
