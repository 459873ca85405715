//! Acceptance suite: one PASS/FAIL line per criterion, exact tolerances,
//! wall-clock budgets enforced. Exits non-zero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use cosetkit::covering::{piece_witness, separate_left, separate_right, separated_points, witness_outside};
use cosetkit::decompose::{big_cosets, check_certificate, decompose, is_witness_syntax, minimal_subgroup, ContainmentDag};
use cosetkit::group::{Coset, GroupElement, Subgroup, SubgroupWalk};
use cosetkit::oracle::{compare_on_window, eval, Window};
use cosetkit::pwaffine::{eval_pw_affine, graph_of, pw_affine_from_graph};
use cosetkit::setalg::{is_empty, sets_equal, to_omega_normal_form, to_relring_normal_form, OmegaNormalForm, SetExpr};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn normal_form_soundness() -> Outcome {
    let w = Window::new(z2(), 20);
    let points = w.points();
    for seed in 0..200u64 {
        let e = random_case(seed, z2(), 3, 4, 5);
        let nf = to_omega_normal_form(&e).map_err(err("omega"))?;
        let terms = to_relring_normal_form(&e).map_err(err("relring"))?;
        for g in &points {
            let direct = eval(&e, g).map_err(err("eval"))?;
            let rel = terms.iter().any(|t| eval(&t.to_expr(), g).unwrap());
            ensure(direct == nf.contains(g), || format!("seed {seed}: omega form differs at {g}"))?;
            ensure(direct == rel, || format!("seed {seed}: relative-ring form differs at {g}"))?;
        }
    }
    Ok(format!("200 expressions x {} points, 0 disagreements", points.len()))
}

fn validate_form(name: &str, nf: &OmegaNormalForm) -> Result<(), String> {
    for (i, p) in nf.pieces.iter().enumerate() {
        for q in &nf.pieces[..i] {
            let meet = SetExpr::Intersect(vec![p.to_expr(), q.to_expr()]);
            ensure(is_empty(&meet).map_err(err(name))?, || format!("{name}: pieces {i} overlap"))?;
        }
        for r in &p.removals {
            let idx = r.index_in(&p.e0).map_err(err(name))?;
            ensure(!idx.is_finite(), || format!("{name}: removal {r} has finite index"))?;
        }
        let w = piece_witness(p).map_err(err(name))?;
        ensure(p.contains(&w), || format!("{name}: witness {w} not in piece {i}"))?;
    }
    Ok(())
}

fn normal_form_validity() -> Outcome {
    let mut pieces = 0;
    for case in corpus() {
        let nf = to_omega_normal_form(&case.expr).map_err(err(case.name))?;
        validate_form(case.name, &nf)?;
        pieces += nf.pieces.len();
    }
    for pair in corpus_pairs() {
        for e in [&pair.left, &pair.right] {
            validate_form(pair.name, &to_omega_normal_form(e).map_err(err(pair.name))?)?;
        }
    }
    Ok(format!("{pieces} corpus pieces disjoint, removals of infinite index, witnesses inside"))
}

fn covering_witnesses() -> Outcome {
    let mut lists = 0;
    for c in [z2(), dinf()] {
        for seed in 0..50u64 {
            let full = Subgroup::full(c);
            let list = coset_list(seed, c, &full).ok_or_else(|| format!("seed {seed}: no list"))?;
            let n = list.cosets().len();
            let u = SetExpr::Union(list.cosets().iter().cloned().map(SetExpr::Atom).collect());

            let w = witness_outside(&list);
            ensure(list.cosets().iter().all(|k| !k.contains(&w)), || format!("seed {seed}: witness {w} covered"))?;

            let ts = separate_left(&list).map_err(err("left"))?;
            let meet = SetExpr::Intersect(ts.iter().map(|t| SetExpr::ltranslate(t.clone(), u.clone())).collect());
            ensure(ts.len() <= n + 1, || format!("seed {seed}: {} left translates for {n} cosets", ts.len()))?;
            ensure(is_empty(&meet).map_err(err("left"))?, || format!("seed {seed}: left intersection nonempty"))?;

            let mut r = rng(seed ^ 0xa11);
            let ambient = std::iter::repeat_with(|| random_subgroup(&mut r, c))
                .take(20)
                .find(|h| coset_list(seed, c, h).is_some())
                .unwrap_or(full);
            let list = coset_list(seed, c, &ambient).ok_or("no list for the ambient")?;
            let n = list.cosets().len();
            let u = SetExpr::Union(list.cosets().iter().cloned().map(SetExpr::Atom).collect());
            let ts = separate_right(&list).map_err(err("right"))?;
            ensure(ts.iter().all(|t| ambient.contains(t)), || format!("seed {seed}: translate outside H"))?;
            ensure(ts.len() <= n + 1, || format!("seed {seed}: {} right translates for {n} cosets", ts.len()))?;
            let mut parts: Vec<SetExpr> = ts.iter().map(|t| SetExpr::rtranslate(u.clone(), t.clone())).collect();
            parts.push(SetExpr::Atom(Coset::of_subgroup(ambient.clone())));
            ensure(is_empty(&SetExpr::Intersect(parts)).map_err(err("right"))?, || {
                format!("seed {seed}: right intersection nonempty")
            })?;
            lists += 1;
        }
    }
    Ok(format!("{lists} lists on Z^2 and Dinf"))
}

fn separated_point_sets() -> Outcome {
    let mut done = 0;
    let mut seed = 0u64;
    while done < 20 {
        let e = random_case(seed, if seed % 2 == 0 { z2() } else { dinf() }, 3, 3, 4);
        seed += 1;
        let nf = to_omega_normal_form(&e).map_err(err("nf"))?;
        let Some(piece) = nf.pieces.iter().find(|p| p.e0.subgroup().lattice().rank() > 0) else { continue };
        let n = 1 + done % 5;
        let pts = separated_points(piece, n).map_err(err("points"))?;
        ensure(pts.len() == n, || format!("seed {seed}: {} points", pts.len()))?;
        for (i, a) in pts.iter().enumerate() {
            ensure(piece.contains(a), || format!("seed {seed}: {a} outside the piece"))?;
            for b in &pts[..i] {
                let d = b.inverse().mul(a);
                let bad = d.is_identity() || piece.removals.iter().any(|r| r.subgroup().contains(&d));
                ensure(!bad, || format!("seed {seed}: {b} and {a} violate a difference constraint"))?;
            }
        }
        done += 1;
    }
    Ok("20 pieces, N in 1..=5".into())
}

fn decomposition_certificates() -> Outcome {
    let mut inputs: Vec<(String, SetExpr)> = corpus().into_iter().map(|c| (c.name.to_string(), c.expr)).collect();
    let mut seed = 0u64;
    let mut random = 0;
    while random < 100 {
        let c = if seed % 3 == 2 { dinf() } else { z2() };
        let e = random_case(seed, c, 4, 3, 4);
        seed += 1;
        if to_omega_normal_form(&e).map_err(err("nf"))?.is_empty() {
            continue;
        }
        inputs.push((format!("random seed {}", seed - 1), e));
        random += 1;
    }
    let mut subgroups = 0;
    for (name, y) in &inputs {
        let cert = decompose(y).map_err(err(name))?;
        let v = check_certificate(&cert);
        ensure(v.accepted, || format!("{name}: {:?}", v.reason))?;
        ensure(cert.witnesses.iter().all(is_witness_syntax), || format!("{name}: witness built from atoms"))?;
        subgroups += cert.subgroups.len();
    }
    Ok(format!("{} certificates accepted ({} corpus + 100 random), {subgroups} subgroups", inputs.len(), inputs.len() - 100))
}

/// Fewest `H1`-cosets in a coset of a subgroup `K ⊇ H1` that is a union of
/// atoms of the translates `tC`, `t` ranging over rep differences.
fn exhaustive_minimum(cs: &[Coset]) -> Result<Option<usize>, String> {
    let h1 = cs[0].subgroup().clone();
    let small: Vec<GroupElement> = SubgroupWalk::new(h1.clone()).take(6).collect();
    let mut ts: Vec<GroupElement> = Vec::new();
    for a in cs {
        for b in cs {
            for h in &small {
                let t = b.rep().mul(h).mul(&a.rep().inverse());
                if !ts.contains(&t) {
                    ts.push(t);
                }
            }
        }
    }
    let mut qs: Vec<Coset> = Vec::new();
    for t in &ts {
        for c in cs {
            let q = Coset::new(h1.clone(), t.mul(c.rep())).map_err(|e| e.to_string())?;
            if !qs.contains(&q) {
                qs.push(q);
            }
        }
    }
    let pattern = |q: &Coset| -> Vec<bool> {
        ts.iter().map(|t| cs.iter().any(|c| c.contains(&t.inverse().mul(q.rep())))).collect()
    };
    let mut atoms: Vec<(Vec<bool>, Vec<Coset>)> = Vec::new();
    for q in qs {
        let p = pattern(&q);
        match atoms.iter_mut().find(|(k, _)| *k == p) {
            Some((_, v)) => v.push(q),
            None => atoms.push((p, vec![q])),
        }
    }
    if atoms.len() > 16 {
        return Err(format!("{} atoms exceed the desk-scale bound", atoms.len()));
    }
    let mut best: Option<usize> = None;
    for mask in 1u32..(1 << atoms.len()) {
        let union: Vec<&Coset> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, (_, v))| v.iter())
            .collect();
        if best.is_some_and(|b| union.len() >= b) {
            continue;
        }
        let s = union[0].rep().inverse();
        let mut gens: Vec<GroupElement> = union.iter().map(|q| s.mul(q.rep())).collect();
        gens.extend(h1.generators());
        let k = Subgroup::generated(h1.carrier(), &gens).map_err(|e| e.to_string())?;
        let idx = k.index_of(&h1).map_err(|e| e.to_string())?;
        if idx.finite().is_some_and(|i| *i == union.len().into()) {
            best = Some(union.len());
        }
    }
    Ok(best)
}

fn minimal_subgroup_search() -> Outcome {
    let (mut checked, mut searched) = (0, 0);
    for case in corpus() {
        let nf = to_omega_normal_form(&case.expr).map_err(err(case.name))?;
        let dag = ContainmentDag::new(&nf.used_subgroups());
        for i in dag.top_level() {
            let h1 = &dag.nodes()[i];
            let cs = big_cosets(&nf, h1).map_err(err(case.name))?;
            let (h, _) = minimal_subgroup(&cs).map_err(err(case.name))?;
            let idx = h.index_of(h1).map_err(err(case.name))?;
            let returned: usize = idx
                .finite()
                .and_then(|i| i.try_into().ok())
                .ok_or_else(|| format!("{}: [H:H1] is not finite", case.name))?;
            if let Some(found) = exhaustive_minimum(&cs)? {
                ensure(found >= returned, || {
                    format!("{}: search found a subgroup of {found} cosets, engine returned {returned}", case.name)
                })?;
                searched += 1;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} top-level subgroups, {searched} with a candidate found by search, none beaten"))
}

fn graph_round_trip() -> Outcome {
    for seed in 0..50u64 {
        let m = random_pw_map(seed);
        let g = graph_of(&m).map_err(err("graph"))?;
        let back = pw_affine_from_graph(&g, m.source(), m.target()).map_err(err("ungraph"))?;
        for h in Window::new(m.source(), 15).points() {
            let (a, b) = (eval_pw_affine(&m, &h), eval_pw_affine(&back, &h));
            ensure(a == b, || format!("seed {seed}: maps differ at {h}"))?;
        }
    }
    Ok("50 maps agree on radius 15".into())
}

fn oracle_independence() -> Outcome {
    let mut report = Vec::new();
    for p in corpus_pairs() {
        let same = sets_equal(&p.left, &p.right).map_err(err(p.name))?;
        ensure(same == p.equal, || format!("{}: decision {same}, expected {}", p.name, p.equal))?;
        let c = p.left.carrier().ok_or("carrier")?;
        let hit = compare_on_window(&p.left, &p.right, &Window::new(c, 30)).map_err(err(p.name))?;
        match (same, hit) {
            (true, None) => {}
            (false, Some(g)) => report.push(format!("{}: R*={}", p.name, g.norm())),
            (true, Some(g)) => return Err(format!("{}: equal but differ at {g}", p.name)),
            (false, None) => return Err(format!("{}: unequal but no counterexample at radius 30", p.name)),
        }
    }
    Ok(report.join(", "))
}

fn cli_determinism() -> Outcome {
    let script = "group G = Z^2\nsubgroup A < G = span [[1,0]]\nsubgroup B < G = span [[0,1]]\ncoset C1 = B + (1,0)\nset Y = A | C1\ndecompose Y\n";
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("y.ck"), script).map_err(|e| e.to_string())?;
    let mut certs = Vec::new();
    for sub in ["a", "b"] {
        std::fs::create_dir(dir.path().join(sub)).map_err(|e| e.to_string())?;
        let o = Command::new(env!("CARGO_BIN_EXE_cosetkit"))
            .current_dir(dir.path())
            .args(["y.ck", "--format", "json", "--out-dir", sub])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())?;
        let path = dir.path().join(sub).join("Y.cert.json");
        certs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        let v = cosetkit::script::check_certificate_file(&path).map_err(|e| e.to_string())?;
        ensure(v.accepted, || format!("reloaded certificate rejected: {:?}", v.reason))?;
    }
    ensure(certs[0] == certs[1], || "certificates differ between runs".into())?;
    Ok(format!("{} bytes, identical, re-verified", certs[0].len()))
}

fn main() {
    let criteria: Vec<(&str, u64, fn() -> Outcome)> = vec![
        ("normal-form soundness", 60, normal_form_soundness),
        ("normal-form validity", 10, normal_form_validity),
        ("covering witnesses and separations", 30, covering_witnesses),
        ("separated points", 10, separated_point_sets),
        ("decomposition certificates", 300, decomposition_certificates),
        ("minimal subgroup", 60, minimal_subgroup_search),
        ("graph round-trip", 60, graph_round_trip),
        ("oracle independence", 60, oracle_independence),
        ("cli determinism", 5, cli_determinism),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(budget) => Err(format!("{d}; over the {budget}s budget")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {name} [{:.2}s] {detail}", took.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} [{:.2}s] {detail}", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
