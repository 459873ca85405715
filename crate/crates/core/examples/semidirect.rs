//! Cosets in the infinite dihedral group: reflections, left versus right
//! translation, and index computations.

use cosetkit::group::{Carrier, Coset, GroupElement, Sign, Subgroup};
use cosetkit::setalg::{sets_equal, to_omega_normal_form, SetExpr};

fn main() -> cosetkit::Result<()> {
    let d = Carrier::zn_semidirect_c2(1);
    let r = GroupElement::from_i64(d, &[1], Sign::Minus)?;
    let t = GroupElement::translation_of(d, &[1]);
    println!("r = {r}, t = {t}, r t r^-1 = {}", r.mul(&t).mul(&r.inverse()));

    let evens = Subgroup::span(d, &[&[2]])?;
    let with_refl = Subgroup::generated(d, &[GroupElement::translation_of(d, &[2]), r.clone()])?;
    println!("[{with_refl} : {evens}] = {}", with_refl.index_of(&evens)?);

    let h = SetExpr::atom(Coset::of_subgroup(with_refl));
    let left = SetExpr::ltranslate(t.clone(), h.clone());
    let right = SetExpr::rtranslate(h.clone(), t.clone());
    println!("tH == Ht: {}", sets_equal(&left, &right)?);

    let nf = to_omega_normal_form(&SetExpr::diff(SetExpr::Full(d), h))?;
    for p in &nf.pieces {
        println!("complement piece: {}", p.e0);
    }
    Ok(())
}
