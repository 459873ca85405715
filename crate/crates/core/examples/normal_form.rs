//! Reduce a set expression over Z^2 to its disjoint normal form and
//! spot-check it against pointwise evaluation.

use cosetkit::group::{Carrier, Coset, GroupElement, Subgroup};
use cosetkit::oracle::{compare_on_window, Window};
use cosetkit::setalg::{sets_equal, to_omega_normal_form, SetExpr};

fn main() -> cosetkit::Result<()> {
    let c = Carrier::zn(2);
    let x_axis = Subgroup::span(c, &[&[1, 0]])?;
    let diagonal = Subgroup::span(c, &[&[1, 1]])?;
    let even = Subgroup::span(c, &[&[2, 0], &[0, 1]])?;

    // (even columns | the x-axis) minus the diagonal through (0,1)
    let y = SetExpr::diff(
        SetExpr::union(vec![SetExpr::atom(Coset::of_subgroup(even)), SetExpr::atom(Coset::of_subgroup(x_axis))]),
        SetExpr::atom(Coset::new(diagonal, GroupElement::translation_of(c, &[0, 1]))?),
    );

    let nf = to_omega_normal_form(&y)?;
    println!("{} piece(s):", nf.pieces.len());
    for p in &nf.pieces {
        let removed: Vec<String> = p.removals.iter().map(ToString::to_string).collect();
        println!("  {} minus [{}]", p.e0, removed.join(", "));
    }

    println!("equal to input: {}", sets_equal(&y, &nf.to_expr())?);
    let hit = compare_on_window(&y, &nf.to_expr(), &Window::new(c, 15))?;
    println!("disagreements within radius 15: {}", if hit.is_none() { "none" } else { "found" });
    Ok(())
}
