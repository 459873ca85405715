mod common;

use common::*;
use cosetkit::json::{self, Json};
use cosetkit::oracle::{compare_on_window, eval, Window};
use cosetkit::script::{parse, Expr, Op, StmtKind, Vector};
use cosetkit::setalg::{
    is_empty, right_translate, sets_equal, to_omega_normal_form, to_relring_normal_form, OmegaNormalForm, SetExpr,
};
use proptest::prelude::*;

fn carrier_for(flag: bool) -> cosetkit::group::Carrier {
    if flag {
        dinf()
    } else {
        z2()
    }
}

fn relring_expr(e: &SetExpr) -> SetExpr {
    let c = e.carrier().unwrap();
    let terms = to_relring_normal_form(e).unwrap();
    if terms.is_empty() {
        SetExpr::Empty(c)
    } else {
        SetExpr::Union(terms.iter().map(|t| t.to_expr()).collect())
    }
}

fn check_pieces(nf: &OmegaNormalForm) {
    for (i, p) in nf.pieces.iter().enumerate() {
        for r in &p.removals {
            assert!(r.is_subset_of(&p.e0), "removal {r} outside {}", p.e0);
            assert!(!r.index_in(&p.e0).unwrap().is_finite(), "removal {r} has finite index in {}", p.e0);
        }
        for q in &nf.pieces[..i] {
            assert!(is_empty(&SetExpr::Intersect(vec![p.to_expr(), q.to_expr()])).unwrap());
        }
        assert!(nf.family.contains(p.e0.subgroup()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn normal_forms_agree_with_direct_evaluation(seed in any::<u64>(), semi in any::<bool>()) {
        let c = carrier_for(semi);
        let e = random_case(seed, c, 3, 4, 5);
        let nf = to_omega_normal_form(&e).unwrap();
        let w = Window::new(c, 10);
        prop_assert_eq!(compare_on_window(&e, &nf.to_expr(), &w).unwrap(), None);
        prop_assert_eq!(compare_on_window(&e, &relring_expr(&e), &w).unwrap(), None);
        check_pieces(&nf);
    }

    #[test]
    fn right_translate_matches_pointwise(seed in any::<u64>(), semi in any::<bool>()) {
        let c = carrier_for(semi);
        let e = random_case(seed, c, 3, 3, 4);
        let mut r = rng(seed ^ 0x5eed);
        let g = random_element(&mut r, c, 3);
        let moved = right_translate(&e, &g).unwrap();
        prop_assert_eq!(moved.symbols().len(), 0);
        let direct = SetExpr::RTranslate(Box::new(e), g);
        prop_assert_eq!(compare_on_window(&moved, &direct, &Window::new(c, 8)).unwrap(), None);
    }

    #[test]
    fn sets_equal_is_consistent_with_the_oracle(seed in any::<u64>(), semi in any::<bool>()) {
        let c = carrier_for(semi);
        let a = random_case(seed, c, 3, 3, 4);
        let b = random_case(seed.wrapping_add(1), c, 3, 3, 4);
        let same = sets_equal(&a, &b).unwrap();
        let hit = compare_on_window(&a, &b, &Window::new(c, 10)).unwrap();
        if same {
            prop_assert_eq!(hit, None);
        }
        prop_assert!(sets_equal(&a, &to_omega_normal_form(&a).unwrap().to_expr()).unwrap());
        // removing a point the set contains changes it
        if let Some(g) = Window::new(c, 6).points().into_iter().find(|g| eval(&a, g).unwrap()) {
            let holed = SetExpr::diff(a.clone(), point(g));
            prop_assert!(!sets_equal(&a, &holed).unwrap());
        }
    }

    #[test]
    fn json_round_trips_are_bit_exact(seed in any::<u64>(), semi in any::<bool>()) {
        let c = carrier_for(semi);
        let e = random_case(seed, c, 3, 4, 5);
        let s = json::to_string(&e);
        let back: SetExpr = json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(json::to_string(&back), s);
        let nf = to_omega_normal_form(&e).unwrap();
        let v = nf.to_json();
        prop_assert_eq!(OmegaNormalForm::from_json(&v).unwrap().to_json(), v);
    }
}

fn vector() -> impl Strategy<Value = Vector> {
    (prop::collection::vec(-50i64..50, 1..4), prop::option::of(any::<bool>())).prop_map(|(v, s)| Vector {
        coords: v.into_iter().map(Into::into).collect(),
        sign: s.map(|m| if m { cosetkit::group::Sign::Minus } else { cosetkit::group::Sign::Plus }),
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        "[A-Z][a-z0-9]{0,3}".prop_map(Expr::Name),
        "[A-Z]".prop_map(Expr::Empty),
        "[A-Z]".prop_map(Expr::Full),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), 0..3u8).prop_map(|(a, b, k)| {
                let op = [Op::Union, Op::Intersect, Op::Diff][k as usize];
                Expr::Bin(op, Box::new(a), Box::new(b))
            }),
            (vector(), inner.clone()).prop_map(|(v, x)| Expr::LTranslate(v, Box::new(x))),
            (inner, vector()).prop_map(|(x, v)| Expr::RTranslate(Box::new(x), v)),
        ]
    })
}

proptest! {
    #[test]
    fn script_pretty_print_round_trips(e in expr()) {
        let stmt = StmtKind::Set { name: "Y".into(), expr: e };
        let text = stmt.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(&back[0].kind, &stmt);
    }
}
