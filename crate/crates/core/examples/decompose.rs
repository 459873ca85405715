//! Build a decomposition certificate, check it, and write it as JSON.

use cosetkit::decompose::{check_certificate, decompose};
use cosetkit::group::{Carrier, Coset, GroupElement, Subgroup};
use cosetkit::json;
use cosetkit::setalg::SetExpr;

fn main() -> cosetkit::Result<()> {
    let c = Carrier::zn(2);
    let rows = Subgroup::span(c, &[&[1, 0]])?;
    let cols = Subgroup::span(c, &[&[0, 1]])?;
    let y = SetExpr::union(vec![
        SetExpr::atom(Coset::of_subgroup(rows)),
        SetExpr::atom(Coset::new(cols, GroupElement::translation_of(c, &[1, 0]))?),
    ]);

    let cert = decompose(&y)?;
    println!("subgroups: {}", cert.subgroups.len());
    for h in &cert.subgroups {
        println!("  {h}");
    }
    println!("witnesses: {}", cert.witnesses.len());

    let verdict = check_certificate(&cert);
    println!("accepted: {}", verdict.accepted);

    let text = json::to_string(&cert);
    let back = json::from_str(&text)?;
    println!("json: {} bytes, re-checks: {}", text.len(), check_certificate(&back).accepted);
    Ok(())
}
