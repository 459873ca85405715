//! A two-piece affine map Z^2 -> Z, its graph as a set expression, and the
//! map recovered from that graph.

use cosetkit::group::{Carrier, Coset, GroupElement, Subgroup};
use cosetkit::pwaffine::{eval_pw_affine, graph_of, pw_affine_from_graph, AffinePiece, PiecewiseAffineMap};
use cosetkit::setalg::OmegaPiece;
use num_bigint::BigInt;

fn main() -> cosetkit::Result<()> {
    let (src, dst) = (Carrier::zn(2), Carrier::zn(1));
    let even = Subgroup::span(src, &[&[2, 0], &[0, 1]])?;
    let piece = |rep: &[i64], col: [i64; 2], off: i64| -> cosetkit::Result<(OmegaPiece, AffinePiece)> {
        let dom = Coset::new(even.clone(), GroupElement::translation_of(src, rep))?;
        let matrix: Vec<Vec<BigInt>> = col.iter().map(|&a| vec![BigInt::from(a)]).collect();
        let f = AffinePiece::from_linear(dom.clone(), dst, &matrix, GroupElement::translation_of(dst, &[off]))?;
        Ok((OmegaPiece { e0: dom, removals: vec![] }, f))
    };
    // x + 2y on even x, 3y - 1 on odd x
    let m = PiecewiseAffineMap::new(src, dst, vec![piece(&[0, 0], [1, 2], 0)?, piece(&[1, 0], [0, 3], -1)?])?;

    let graph = graph_of(&m)?;
    let back = pw_affine_from_graph(&graph, src, dst)?;
    for v in [[0, 0], [1, 1], [2, -3], [5, 4]] {
        let h = GroupElement::translation_of(src, &v);
        let show = |x: Option<GroupElement>| x.map_or("-".to_string(), |g| g.to_string());
        println!("{h} -> {} / recovered {}", show(eval_pw_affine(&m, &h)), show(eval_pw_affine(&back, &h)));
    }
    Ok(())
}
