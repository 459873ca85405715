//! Seeded generators and the fixed regression corpus shared by the
//! integration and acceptance tests.
#![allow(dead_code)]

use cosetkit::covering::CosetList;
use cosetkit::group::{Carrier, Coset, GroupElement, Sign, Subgroup};
use cosetkit::setalg::SetExpr;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn z2() -> Carrier {
    Carrier::zn(2)
}

pub fn dinf() -> Carrier {
    Carrier::zn_semidirect_c2(1)
}

pub fn t(c: Carrier, v: &[i64]) -> GroupElement {
    GroupElement::translation_of(c, v)
}

pub fn el(c: Carrier, v: &[i64], sign: Sign) -> GroupElement {
    GroupElement::from_i64(c, v, sign).unwrap()
}

pub fn sg(c: Carrier, rows: &[&[i64]]) -> Subgroup {
    Subgroup::span(c, rows).unwrap()
}

pub fn atom(h: &Subgroup, rep: GroupElement) -> SetExpr {
    SetExpr::Atom(Coset::new(h.clone(), rep).unwrap())
}

pub fn point(g: GroupElement) -> SetExpr {
    SetExpr::Atom(Coset::point(g))
}

pub fn random_element(r: &mut ChaCha8Rng, c: Carrier, bound: i64) -> GroupElement {
    let v: Vec<i64> = (0..c.dim()).map(|_| r.gen_range(-bound..=bound)).collect();
    let sign = if c.has_sign() && r.gen_bool(0.5) { Sign::Minus } else { Sign::Plus };
    el(c, &v, sign)
}

/// A subgroup spanned by up to `dim` small random vectors, plus a random
/// reflection on semidirect carriers.
pub fn random_subgroup(r: &mut ChaCha8Rng, c: Carrier) -> Subgroup {
    let k = r.gen_range(0..=c.dim());
    let mut gens: Vec<GroupElement> = (0..k)
        .map(|_| {
            let v: Vec<i64> = (0..c.dim()).map(|_| r.gen_range(-2..=2)).collect();
            t(c, &v)
        })
        .collect();
    if c.has_sign() && r.gen_bool(0.4) {
        let v: Vec<i64> = (0..c.dim()).map(|_| r.gen_range(-2..=2)).collect();
        gens.push(el(c, &v, Sign::Minus));
    }
    Subgroup::generated(c, &gens).unwrap()
}

pub fn subgroup_pool(r: &mut ChaCha8Rng, c: Carrier, max: usize) -> Vec<Subgroup> {
    let n = r.gen_range(1..=max);
    (0..n).map(|_| random_subgroup(r, c)).collect()
}

/// Random tree of depth at most `depth` with at most `atoms` leaves.
pub fn random_expr(r: &mut ChaCha8Rng, c: Carrier, pool: &[Subgroup], depth: usize, atoms: usize) -> SetExpr {
    if depth == 0 || atoms <= 1 {
        let h = &pool[r.gen_range(0..pool.len())];
        return atom(h, random_element(r, c, 3));
    }
    match r.gen_range(0..6) {
        0 => SetExpr::LTranslate(random_element(r, c, 3), Box::new(random_expr(r, c, pool, depth - 1, atoms))),
        1 => SetExpr::RTranslate(Box::new(random_expr(r, c, pool, depth - 1, atoms)), random_element(r, c, 3)),
        k => {
            let left = r.gen_range(1..atoms);
            let a = random_expr(r, c, pool, depth - 1, left);
            let b = random_expr(r, c, pool, depth - 1, atoms - left);
            match k {
                2 | 3 => SetExpr::Union(vec![a, b]),
                4 => SetExpr::Intersect(vec![a, b]),
                _ => SetExpr::Diff(Box::new(a), Box::new(b)),
            }
        }
    }
}

/// Random closed expression in the shape used by the acceptance suite.
pub fn random_case(seed: u64, c: Carrier, max_subgroups: usize, depth: usize, atoms: usize) -> SetExpr {
    let mut r = rng(seed);
    let pool = subgroup_pool(&mut r, c, max_subgroups);
    random_expr(&mut r, c, &pool, depth, atoms)
}

pub struct Case {
    pub name: &'static str,
    pub expr: SetExpr,
}

/// Fixed regression corpus.
pub fn corpus() -> Vec<Case> {
    let z = z2();
    let a = sg(z, &[&[1, 0]]);
    let b = sg(z, &[&[0, 1]]);
    let d = sg(z, &[&[1, 1]]);
    let l2 = sg(z, &[&[2, 0], &[0, 1]]);
    let full = SetExpr::Full(z);
    let di = dinf();
    let even = sg(di, &[&[2]]);
    let z3 = Carrier::zn(3);
    vec![
        Case { name: "line_union_shifted_line", expr: SetExpr::Union(vec![atom(&a, t(z, &[0, 0])), atom(&b, t(z, &[1, 0]))]) },
        Case { name: "plane_minus_diagonal", expr: SetExpr::diff(full.clone(), atom(&d, t(z, &[0, 0]))) },
        Case { name: "translated_coset", expr: atom(&l2, t(z, &[1, 0])) },
        Case {
            name: "line_and_punctured_line",
            expr: SetExpr::Union(vec![
                atom(&a, t(z, &[0, 0])),
                SetExpr::diff(atom(&b, t(z, &[1, 0])), point(t(z, &[1, 0]))),
            ]),
        },
        Case {
            name: "plane_minus_line_and_point",
            expr: SetExpr::diff(full.clone(), SetExpr::Union(vec![atom(&b, t(z, &[0, 0])), point(t(z, &[5, 5]))])),
        },
        Case {
            name: "two_cosets_minus_diagonal",
            expr: SetExpr::diff(
                SetExpr::Union(vec![atom(&l2, t(z, &[0, 0])), atom(&l2, t(z, &[1, 0]))]),
                atom(&d, t(z, &[0, 0])),
            ),
        },
        Case {
            name: "translated_union",
            expr: SetExpr::ltranslate(t(z, &[1, 1]), SetExpr::Union(vec![atom(&a, t(z, &[0, 0])), atom(&d, t(z, &[0, 0]))])),
        },
        Case { name: "isolated_points", expr: SetExpr::Union(vec![point(t(z, &[0, 0])), point(t(z, &[3, -1]))]) },
        Case {
            name: "dinf_even_and_reflections",
            expr: SetExpr::Union(vec![
                SetExpr::Atom(Coset::of_subgroup(even.clone())),
                atom(&even, el(di, &[1], Sign::Minus)),
            ]),
        },
        Case { name: "dinf_minus_identity", expr: SetExpr::diff(SetExpr::Full(di), point(di.identity())) },
        Case {
            name: "dinf_right_translate",
            expr: SetExpr::Union(vec![
                SetExpr::rtranslate(SetExpr::Atom(Coset::of_subgroup(sg(di, &[&[3]]))), el(di, &[1], Sign::Minus)),
                point(el(di, &[4], Sign::Plus)),
            ]),
        },
        Case {
            name: "z3_plane_and_line",
            expr: SetExpr::Union(vec![
                atom(&sg(z3, &[&[1, 0, 0], &[0, 1, 0]]), t(z3, &[0, 0, 0])),
                atom(&sg(z3, &[&[0, 0, 1]]), t(z3, &[1, 0, 0])),
            ]),
        },
    ]
}

pub struct Pair {
    pub name: &'static str,
    pub left: SetExpr,
    pub right: SetExpr,
    pub equal: bool,
}

/// Stored equalities and inequalities for the oracle comparison.
pub fn corpus_pairs() -> Vec<Pair> {
    let z = z2();
    let a = sg(z, &[&[1, 0]]);
    let b = sg(z, &[&[0, 1]]);
    let d = sg(z, &[&[1, 1]]);
    let l2 = sg(z, &[&[2, 0], &[0, 1]]);
    let full = SetExpr::Full(z);
    let di = dinf();
    let even = sg(di, &[&[2]]);
    let a0 = atom(&a, t(z, &[0, 0]));
    let b0 = atom(&b, t(z, &[0, 0]));
    let mut pairs = vec![
        Pair { name: "union_commutes", left: SetExpr::Union(vec![a0.clone(), b0.clone()]), right: SetExpr::Union(vec![b0.clone(), a0.clone()]), equal: true },
        Pair { name: "cosets_cover_plane", left: SetExpr::Union(vec![atom(&l2, t(z, &[0, 0])), atom(&l2, t(z, &[1, 0]))]), right: full.clone(), equal: true },
        Pair { name: "left_translate_is_coset", left: SetExpr::ltranslate(t(z, &[1, 0]), atom(&l2, t(z, &[0, 0]))), right: atom(&l2, t(z, &[1, 0])), equal: true },
        Pair { name: "axes_meet_at_origin", left: SetExpr::Intersect(vec![a0.clone(), b0.clone()]), right: point(t(z, &[0, 0])), equal: true },
        Pair {
            name: "dinf_right_translate_of_even",
            left: SetExpr::rtranslate(SetExpr::Atom(Coset::of_subgroup(even.clone())), el(di, &[1], Sign::Minus)),
            right: atom(&even, el(di, &[1], Sign::Minus)),
            equal: true,
        },
        Pair { name: "punctured_line", left: a0.clone(), right: SetExpr::diff(a0.clone(), point(t(z, &[0, 0]))), equal: false },
        Pair { name: "plane_vs_no_diagonal", left: full.clone(), right: SetExpr::diff(full.clone(), atom(&d, t(z, &[0, 0]))), equal: false },
        Pair { name: "distinct_cosets", left: atom(&l2, t(z, &[0, 0])), right: atom(&l2, t(z, &[1, 0])), equal: false },
        Pair { name: "far_point", left: full.clone(), right: SetExpr::diff(full.clone(), point(t(z, &[25, -25]))), equal: false },
        Pair {
            name: "dinf_left_vs_right",
            left: SetExpr::ltranslate(el(di, &[1], Sign::Plus), SetExpr::Atom(Coset::of_subgroup(sg(di, &[&[3]]).clone()))),
            right: atom(&even, di.identity()),
            equal: false,
        },
    ];
    for c in corpus() {
        pairs.push(Pair { name: c.name, left: c.expr.clone(), right: c.expr, equal: true });
    }
    pairs
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Random piecewise-affine map with at most three pieces and matrix and
/// offset entries in `-3..=3`. Pieces live on the cosets of `mZ × Z`
/// (or `mZ`), optionally with a line or a point removed.
pub fn random_pw_map(seed: u64) -> cosetkit::pwaffine::PiecewiseAffineMap {
    use cosetkit::pwaffine::{AffinePiece, PiecewiseAffineMap};
    use cosetkit::setalg::OmegaPiece;
    let mut r = rng(seed);
    let (source, target) = match r.gen_range(0..4) {
        0 => (z2(), Carrier::zn(1)),
        1 => (z2(), z2()),
        2 => (Carrier::zn(1), dinf()),
        _ => (dinf(), Carrier::zn(1)),
    };
    let pieces = r.gen_range(1..=3);
    let m = pieces as i64 + r.gen_range(0..=1);
    let mut lattice_rows = vec![vec![0i64; source.dim()]; source.dim()];
    for (i, row) in lattice_rows.iter_mut().enumerate() {
        row[i] = if i == 0 { m } else { 1 };
    }
    let rows: Vec<&[i64]> = lattice_rows.iter().map(|r| r.as_slice()).collect();
    let lattice = sg(source, &rows);
    let mut out = Vec::new();
    for i in 0..pieces {
        let mut rep = vec![0i64; source.dim()];
        rep[0] = i as i64;
        let e0 = Coset::new(lattice.clone(), t(source, &rep)).unwrap();
        let mut removals = Vec::new();
        if source.dim() == 2 && r.gen_bool(0.5) {
            let y = r.gen_range(-2..=2);
            let line = sg(source, &[&[m, 0]]);
            removals.push(Coset::new(line, t(source, &[i as i64, y])).unwrap());
        } else if r.gen_bool(0.3) {
            let mut p = rep.clone();
            p[0] += m * r.gen_range(-2..=2);
            removals.push(Coset::point(t(source, &p)));
        }
        let matrix: Vec<Vec<BigInt>> = (0..source.dim())
            .map(|_| (0..target.dim()).map(|_| big(r.gen_range(-3..=3))).collect())
            .collect();
        let offset = random_element(&mut r, target, 3);
        let a = AffinePiece::from_linear(e0.clone(), target, &matrix, offset).unwrap();
        out.push((OmegaPiece { e0, removals }, a));
    }
    PiecewiseAffineMap::new(source, target, out).unwrap()
}

/// Up to four cosets of infinite index in `ambient`; `None` when no such
/// coset turned up (e.g. a finite ambient).
pub fn coset_list(seed: u64, c: Carrier, ambient: &Subgroup) -> Option<CosetList> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=4);
    let mut cosets = Vec::new();
    for _ in 0..n {
        for _ in 0..30 {
            let h = random_subgroup(&mut r, c);
            let g = random_element(&mut r, c, 3);
            let meet = ambient.intersect(&h).unwrap();
            if !ambient.index_of(&meet).unwrap().is_finite() {
                cosets.push(Coset::new(h, g).unwrap());
                break;
            }
        }
    }
    CosetList::new(cosets, ambient.clone()).ok()
}
