//! Set algebra over coset atoms: expressions, normal forms and exact
//! emptiness and equality decisions.

mod expr;
mod omega;
mod relring;

pub use expr::{eval_membership, right_translate, Bindings, SetExpr};
pub use omega::{
    affine_hull, intersection_closure, is_empty, refine_family, sets_equal, to_omega_normal_form,
    Coverings, OmegaNormalForm, OmegaPiece,
};
pub use relring::{to_relring_normal_form, RelTerm};
