//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monsky_core::complex::{diagonal_labels, make_diagonal, make_exploded, Triangulation};
use monsky_core::degree::{degree_lower_bound, is_linear, Strategy};
use monsky_core::draw::{area, areas, sample_drawing, sample_seed, total_area, verify_vanishing};
use monsky_core::fixtures;
use monsky_core::moves::{self, KillOutcome};
use monsky_core::poly::{
    l_form, monsky_diagonal, monsky_diagonal_raw, unfactored_relation, universe, MultiPoly, Rational,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exhaustive_trick(t: &Triangulation) -> (u64, Duration) {
    let start = Instant::now();
    let r = degree_lower_bound(t, &Strategy::exhaustive().with_trick(true)).expect("valid input");
    assert!(r.complete);
    (r.value, start.elapsed())
}

fn identity(t: &Triangulation) -> Vec<usize> {
    (0..t.complex().triangles().len()).collect()
}

fn criterion_1() -> Verdict {
    let mut cases: Vec<(String, Triangulation, u64)> = vec![
        ("two-triangle square".into(), fixtures::two_triangle_square(), 1),
        ("T_{1,1}".into(), make_exploded(1, 1).unwrap(), 2),
        ("T_{2,1}".into(), make_exploded(2, 1).unwrap(), 3),
    ];
    for n in 1..=7 {
        cases.push((format!("T_{n}"), make_diagonal(n), n as u64));
    }
    let mut slowest = Duration::ZERO;
    for (name, t, want) in &cases {
        let (got, took) = exhaustive_trick(t);
        ensure(got == *want, || format!("{name}: got {got}, want {want}"))?;
        ensure(took <= Duration::from_secs(10), || format!("{name}: {took:?} exceeds 10 s"))?;
        slowest = slowest.max(took);
    }
    Ok(format!("{} instances exact, slowest {slowest:.2?}", cases.len()))
}

/// Published lower bounds keyed by `(n, k)`, and whether the cell is sharp.
fn published(n: usize, k: usize) -> Option<(u64, bool)> {
    let rows: [&[u64]; 3] = [&[1, 1, 2, 3, 4, 5], &[2, 3, 5, 7, 9], &[8, 12, 16]];
    let first = if k == 0 { 0 } else { 2 * k - 1 };
    let v = *rows.get(k)?.get(n.checked_sub(first)?)?;
    Some((v, k == 0 || (k == 1 && n <= 2)))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut cells = 0;
    for k in 0..=2 {
        for n in 0..=5 {
            let Some((want, sharp)) = published(n, k) else { continue };
            let (got, _) = exhaustive_trick(&make_exploded(n, k).unwrap());
            ensure(got >= want, || format!("T_{{{n},{k}}}: {got} below {want}"))?;
            ensure(!sharp || got == want, || format!("T_{{{n},{k}}}: {got} differs from sharp {want}"))?;
            cells += 1;
        }
    }
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(60), || format!("grid took {took:?}"))?;
    Ok(format!("{cells} cells, {took:.2?}"))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    for n in 1..=6 {
        let t = make_diagonal(n);
        let r = verify_vanishing(&monsky_diagonal(n).unwrap(), &t, &identity(&t), 50, 1000 * n as u64).unwrap();
        ensure(r.samples.len() == 50 && r.pass, || {
            let bad = r.samples.iter().find(|s| !s.zero).map(|s| s.seed);
            format!("n={n}: nonzero at seed {bad:?}")
        })?;
    }
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("300 exact zeros, {took:.2?}"))
}

fn diag(n: usize, text: &str) -> MultiPoly {
    MultiPoly::parse(universe(&diagonal_labels(n)), text).unwrap()
}

/// `(A+C+E)^2 - 4AC - (B+D+F)^2 + 4DF` with A=B1, B=B2, C=B3, D=A1, E=A2, F=A3.
fn two_vertex_quadratic() -> MultiPoly {
    let ace = diag(2, "B1 + B3 + A2");
    let bdf = diag(2, "B2 + A1 + A3");
    ace.pow(2).sub(&diag(2, "4*B1*B3")).unwrap().sub(&bdf.pow(2)).unwrap().add(&diag(2, "4*A1*A3")).unwrap()
}

fn criterion_4() -> Verdict {
    // A-B+C-D with A=B1, B=A1, C=A2, D=B2.
    let relations = [(1, diag(1, "B1 - A1 + A2 - B2")), (2, two_vertex_quadratic())];
    for (n, e) in &relations {
        let t = make_diagonal(*n);
        let r = verify_vanishing(e, &t, &identity(&t), 50, 7).unwrap();
        ensure(r.pass, || format!("n={n} does not vanish"))?;

        let m = monsky_diagonal(*n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(*n as u64);
        let mut sign: Option<bool> = None;
        for i in 0..20 {
            // On a shared drawing both vanish.
            let d = sample_drawing(&t, sample_seed(99, i)).unwrap();
            let x = areas(&t, &d).assignment(&identity(&t));
            let (mv, ev) = (m.eval(&x).unwrap(), e.eval(&x).unwrap());
            ensure(mv == ev, || format!("n={n}: drawing {i} gives {mv} vs {ev}"))?;
            // Off the variety the two agree up to one global sign.
            let y: Vec<Rational> = (0..x.len())
                .map(|_| Rational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=50).into()))
                .collect();
            let (mv, ev) = (m.eval(&y).unwrap(), e.eval(&y).unwrap());
            let same = mv == ev;
            ensure(same || mv == -ev.clone(), || format!("n={n}: point {i} gives {mv} vs {ev}"))?;
            if ev != Rational::from_integer(0.into()) {
                ensure(*sign.get_or_insert(same) == same, || format!("n={n}: sign changes at point {i}"))?;
            }
        }
    }
    Ok("both relations vanish on 50 drawings and match the closed forms on 20 shared samples".into())
}

fn pool() -> Vec<Triangulation> {
    let mut out: Vec<Triangulation> =
        fixtures::all().into_iter().map(|(_, t)| t).filter(|t| t.is_non_separating()).collect();
    out.extend((0..=5).map(make_diagonal));
    for (n, k) in [(1, 1), (2, 1), (3, 1), (3, 2), (4, 2), (5, 2), (5, 3)] {
        out.push(make_exploded(n, k).unwrap());
    }
    out
}

fn normalize(mut t: Triangulation) -> Triangulation {
    loop {
        if let Some(&v) = t.mosquitos().first() {
            t = moves::eliminate_mosquito(&t, v).unwrap().0;
        } else if let Some(s) = moves::innermost_subdivision(&t) {
            t = moves::delete_subdivision(&t, s).unwrap().0;
        } else {
            return t;
        }
    }
}

fn random_walk(base: &Triangulation, rng: &mut ChaCha8Rng) -> Triangulation {
    let mut t = base.clone();
    for _ in 0..rng.gen_range(0..6) {
        let killable = t.killable_triangles().unwrap();
        if killable.is_empty() {
            break;
        }
        let tri = killable[rng.gen_range(0..killable.len())];
        t = match moves::kill(&t, tri).unwrap() {
            KillOutcome::Single(next) => next,
            KillOutcome::Pair { contracted, extended, discarded, .. } => {
                if discarded || rng.gen_bool(0.5) {
                    contracted
                } else {
                    extended
                }
            }
        };
        t = normalize(t);
    }
    t
}

fn structural(t: &Triangulation, seed: u64, stats: &mut [usize; 3]) -> Result<(), String> {
    let cx = t.complex();
    let (k, n) = (cx.interior_vertex_count(), cx.corner_count());
    ensure(cx.triangles().len() + 2 == 2 * k + n, || format!("{} triangles, k={k}, n={n}", cx.triangles().len()))?;
    let cond = t.condition();
    let clean = !cond.is_empty() && t.mosquitos().is_empty();
    if clean {
        ensure(t.triangles_of_condition().len() + 2 == cond.len(), || "|Triangles(C)| != |C|-2".into())?;
    }
    for (e, _) in t.good_edges().unwrap() {
        let (c, _) = moves::contract(t, e).unwrap();
        ensure(c.is_non_separating(), || format!("contracting {e} separates"))?;
        ensure(Triangulation::from_json(&c.to_json()).is_ok(), || format!("contracting {e} is invalid"))?;
        stats[0] += 1;
    }
    if clean {
        for tri in t.killable_triangles().unwrap() {
            if let KillOutcome::Pair { edge, extended, discarded: true, .. } = moves::kill(t, tri).unwrap() {
                let m = extended.mosquitos();
                ensure(m.iter().any(|&v| edge.contains(v)), || format!("killing {tri}: mosquitos {m:?} avoid {edge}"))?;
                stats[1] += 1;
            }
        }
    }
    let d = sample_drawing(t, seed).unwrap();
    let one = Rational::from_integer(1.into());
    ensure(total_area(t, &d) == one, || "total area differs from 1".into())?;
    if let Some((a, b)) = &d.line {
        for &v in cond.members() {
            ensure(area(a, b, d.point(v)) == Rational::from_integer(0.into()), || format!("vertex {v} off the line"))?;
        }
        stats[2] += 1;
    }
    Ok(())
}

fn criterion_5() -> Verdict {
    let pool = pool();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut stats = [0; 3];
    let cases = 1000;
    for i in 0..cases {
        let base = &pool[rng.gen_range(0..pool.len())];
        let t = random_walk(base, &mut rng);
        let seed = rng.gen();
        structural(&t, seed, &mut stats).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok(format!(
        "{cases} cases, {} contractions, {} discarded kills, {} conditioned drawings",
        stats[0], stats[1], stats[2]
    ))
}

fn criterion_6() -> Verdict {
    let mut plain: Vec<Triangulation> = (0..=7).map(make_diagonal).collect();
    for k in 1..=3 {
        for n in 2 * k - 1..=5 {
            plain.push(make_exploded(n, k).unwrap());
        }
    }
    plain.push(fixtures::square_with_center());
    plain.push(normalize(fixtures::center_with_subdivided_face()));
    for t in &plain {
        ensure(t.condition().is_empty() && t.subdivisions().is_empty(), || "not a plain instance".into())?;
        let k = t.complex().interior_vertex_count() as u64;
        let (d, _) = exhaustive_trick(t);
        ensure(d >= k, || format!("bound {d} below k={k}"))?;
    }
    let mut all: Vec<Triangulation> =
        fixtures::all().into_iter().map(|(_, t)| t).filter(|t| t.is_non_separating()).collect();
    all.extend(plain.iter().cloned());
    let mut linear = 0;
    for t in &all {
        let (d, _) = exhaustive_trick(t);
        let cert = is_linear(t).unwrap();
        ensure((d == 1) == cert.is_some(), || format!("bound {d} but certificate {cert:?}"))?;
        linear += cert.is_some() as usize;
    }
    Ok(format!("{} plain instances, {} linear of {}", plain.len(), linear, all.len()))
}

fn criterion_7() -> Verdict {
    for n in 1..=6 {
        let cofactor =
            unfactored_relation(n).unwrap().div_exact(&l_form(n + 1, n).unwrap()).map_err(|e| format!("n={n}: {e}"))?;
        ensure(cofactor.primitive_part().unwrap() == monsky_diagonal(n).unwrap(), || {
            format!("n={n}: cofactor differs")
        })?;
    }
    let contents: Vec<_> = (1..=5).map(|n| (n, monsky_diagonal_raw(n).unwrap().content().unwrap())).collect();
    let listed: Vec<String> = contents.iter().map(|(n, c)| format!("n={n}: {c}")).collect();
    ensure(contents.iter().all(|(n, c)| *c == (1u64 << (n - 1)).into()), || {
        format!("division exact for n <= 6, but raw closed-form contents are {}, want 2^(n-1)", listed.join(", "))
    })?;
    Ok("division exact for n <= 6; contents 2^(n-1) for n <= 5".into())
}

fn monsky(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monsky")).args(args).current_dir(dir).output().expect("binary runs")
}

fn criterion_8() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("shaded.json"), fixtures::shaded_pair().to_json()).unwrap();
    monsky(&["family", "exploded", "3", "1", "-o", "e31.json"], d);
    monsky(&["family", "diagonal", "3", "-o", "d3.json"], d);
    let runs: [&[&str]; 7] = [
        &["family", "exploded", "5", "2"],
        &["validate", "shaded.json"],
        &["sample", "shaded.json", "--seed", "17"],
        &["render", "shaded.json", "--seed", "17"],
        &["verify", "d3.json", "--poly", "diagonal", "--samples", "2"],
        &["degree", "e31.json", "--use-trick", "--trace", "trace.json"],
        &["degree", "e31.json", "--strategy", "random", "--restarts", "4", "--seed", "3", "--trace", "trace.json"],
    ];
    for args in runs {
        let a = monsky(args, d);
        let trace_a = std::fs::read(d.join("trace.json")).ok();
        let b = monsky(args, d);
        let trace_b = std::fs::read(d.join("trace.json")).ok();
        ensure(!a.stdout.is_empty(), || format!("{args:?}: empty output"))?;
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || format!("{args:?}: outputs differ"))?;
        ensure(trace_a == trace_b, || format!("{args:?}: traces differ"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("degree bounds, exact values", criterion_1),
        ("table reproduction n<=5, k<=2", criterion_2),
        ("closed-form vanishing n<=6", criterion_3),
        ("known low-degree relations", criterion_4),
        ("structural invariants", criterion_5),
        ("interior-vertex bound and degree one", criterion_6),
        ("factorization identity", criterion_7),
        ("determinism", criterion_8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match verdict {
            Ok(detail) => println!("criterion {} ({name}): PASS ({detail}) [{:.2?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL ({why}) [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
