//! Covering tools: a point no listed coset reaches, and finite families of
//! translates whose intersection with the union is empty.

use cosetkit::covering::{separate_left, separate_right, witness_outside, CosetList};
use cosetkit::group::{Carrier, Coset, GroupElement, Subgroup};
use cosetkit::setalg::{is_empty, SetExpr};

fn main() -> cosetkit::Result<()> {
    let c = Carrier::zn(2);
    let line = |rows: &[&[i64]], at: &[i64]| -> cosetkit::Result<Coset> {
        Coset::new(Subgroup::span(c, rows)?, GroupElement::translation_of(c, at))
    };
    let list = CosetList::new(
        vec![line(&[&[1, 0]], &[0, 0])?, line(&[&[0, 1]], &[3, 0])?, line(&[&[1, -1]], &[0, 2])?],
        Subgroup::full(c),
    )?;
    let u = list.to_expr();

    println!("outside every coset: {}", witness_outside(&list));

    let left = separate_left(&list)?;
    let names: Vec<String> = left.iter().map(ToString::to_string).collect();
    println!("left translates: {}", names.join(", "));
    let meet = SetExpr::intersect(left.iter().map(|s| SetExpr::ltranslate(s.clone(), u.clone())).collect());
    println!("  intersection empty: {}", is_empty(&meet)?);

    let right = separate_right(&list)?;
    let names: Vec<String> = right.iter().map(ToString::to_string).collect();
    println!("right translates: {}", names.join(", "));
    let meet = SetExpr::intersect(right.iter().map(|t| SetExpr::rtranslate(u.clone(), t.clone())).collect());
    println!("  intersection empty: {}", is_empty(&meet)?);
    Ok(())
}
