//! Acceptance criteria. Each check pairs the library (or binary) with an
//! oracle written here from the defining inequalities, and prints one
//! PASS/FAIL line. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use ordsub::class::{check_condition, classify, is_ordinary_submodular, ConditionId, Outcome};
use ordsub::fixtures;
use ordsub::gen::{cut_function, enumerate_linear_orders, enumerate_weak_orders, modular_plus_concave, random_function, search_witness_par, Edge};
use ordsub::hierarchy::{family_chain, parse_chain, qh_from_chain, LevelChain};
use ordsub::minimize::{argmin_lattice_closure, constrained_minimize, interval_descent, lift_to_global};
use ordsub::value::Rational;
use ordsub::verify::{run_suite, Suite};
use ordsub::{Codomain, GroundSet, OrdinalValue, Predicate, SetFunction, Subset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------- oracles on raw integer tables indexed by mask ----------

struct Quad {
    x: i64,
    y: i64,
    u: i64,
    i: i64,
}

fn quad(v: &[i64], x: usize, y: usize) -> Quad {
    Quad { x: v[x], y: v[y], u: v[x | y], i: v[x & y] }
}

fn q1(q: &Quad) -> bool {
    !(q.x <= q.i) || q.u <= q.y
}

fn q2(q: &Quad) -> bool {
    !(q.x < q.i) || q.u < q.y
}

fn q3(q: &Quad) -> bool {
    !(q.x < q.i) || q.u <= q.y
}

fn q4(q: &Quad) -> bool {
    q.x.max(q.y) >= q.u.min(q.i)
}

fn qh(q: &Quad) -> bool {
    q.x != q.y || (q.u == q.x && q.i == q.x) || q.u < q.x || q.i < q.x
}

fn every_pair(v: &[i64], cond: fn(&Quad) -> bool) -> bool {
    (0..v.len()).all(|x| (0..v.len()).all(|y| cond(&quad(v, x, y))))
}

fn injective(v: &[i64]) -> bool {
    v.iter().collect::<BTreeSet<_>>().len() == v.len()
}

fn global_min(v: &[i64]) -> i64 {
    *v.iter().min().unwrap()
}

fn submasks(x: usize) -> impl Iterator<Item = usize> {
    (0..=x).filter(move |z| z & x == *z)
}

fn supermasks(x: usize, m: usize) -> impl Iterator<Item = usize> {
    (x..m).filter(move |z| z & x == x)
}

fn lower_min(v: &[i64], x: usize) -> bool {
    submasks(x).all(|z| v[x] <= v[z])
}

fn interval_local(v: &[i64], x: usize) -> bool {
    lower_min(v, x) && supermasks(x, v.len()).all(|z| v[x] <= v[z])
}

fn complement(v: &[i64]) -> Vec<i64> {
    let full = v.len() - 1;
    (0..v.len()).map(|s| v[full ^ s]).collect()
}

/// Surjective maps `{0..m} -> {0..k}` in lexicographic order.
fn weak_orders(m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![0i64; m];
    loop {
        let max = *v.iter().max().unwrap();
        if (0..=max).all(|x| v.contains(&x)) {
            out.push(v.clone());
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] + 1 < m as i64 {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
    }
}

/// Permutations of `0..m` by Heap's algorithm.
fn permutations(m: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<i64> = (0..m as i64).collect();
    let mut c = vec![0usize; m];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn ranks(f: &SetFunction) -> Vec<i64> {
    f.ranks().iter().map(|&r| r as i64).collect()
}

fn letters(n: usize) -> GroundSet {
    GroundSet::letters(n).unwrap()
}

fn ints(v: &[i64]) -> SetFunction {
    SetFunction::from_ints(letters(v.len().trailing_zeros() as usize), v).unwrap()
}

fn as_rational(v: &OrdinalValue) -> Rational {
    match v {
        OrdinalValue::Int(i) => Rational::from_integer(*i),
        OrdinalValue::Rat(r) => *r,
        OrdinalValue::Label(_) => panic!("numeric value expected"),
    }
}

/// Library enumeration must match the oracle enumeration as a sequence.
fn library_weak_orders(n: usize) -> Result<Vec<Vec<i64>>, String> {
    let lib: Vec<Vec<i64>> = enumerate_weak_orders(n).map_err(|e| e.to_string())?.map(|f| ranks(&f)).collect();
    let oracle = weak_orders(1 << n);
    ensure!(lib == oracle, "weak-order enumeration differs from oracle at n={n}");
    Ok(lib)
}

fn suite(s: Suite, n: usize) -> Result<ordsub::verify::SuiteReport, String> {
    let r = run_suite(s, n, 1).map_err(|e| e.to_string())?;
    ensure!(r.passed(), "{s} n={n}: {} violations, first {:?}", r.violations, r.first_violation);
    Ok(r)
}

// ---------- criteria ----------

fn c1_q3_implies_q4() -> Check {
    let mut notes = Vec::new();
    for (n, expected) in [(2, 75usize), (3, 545_835)] {
        let t = Instant::now();
        let r = suite(Suite::Lemma1, n)?;
        let elapsed = t.elapsed();
        ensure!(r.scanned == expected, "n={n}: scanned {} expected {expected}", r.scanned);
        if n == 3 {
            ensure!(elapsed < Duration::from_secs(30), "n=3 took {elapsed:?}");
        }
        let fs = library_weak_orders(n)?;
        let q3_count = fs.iter().filter(|v| every_pair(v, q3)).count();
        ensure!(r.hypothesis == q3_count, "n={n}: {} Q3 functions, oracle {q3_count}", r.hypothesis);
        let bad = fs.iter().filter(|v| every_pair(v, q3) && !every_pair(v, q4)).count();
        ensure!(bad == 0, "oracle finds {bad} Q3-not-Q4 functions at n={n}");
        notes.push(format!("n={n}: {} scanned, {} Q3, 0 violations, {:.2}s", r.scanned, r.hypothesis, elapsed.as_secs_f64()));
    }
    Ok(notes.join("; "))
}

fn c2_strictness() -> Check {
    // (predicate, n, pinned fixture)
    let cases: [(&str, usize, &[i64]); 6] = [
        ("Q4 & !Q3 & Injective", 2, &[1, 0, 2, 3]),
        ("Q1 & !Q2", 2, &[1, 0, 0, 0]),
        ("Q2 & !Q1", 2, &[0, 0, 0, 1]),
        ("Q3 & !(Q1 & Q2)", 2, &[0, 0, 0, 1]),
        ("Qh & !(Q1 & Q2)", 2, &[0, 0, 1, 2]),
        ("Qh & !(Q1 & Q2)", 3, &[0, 0, 0, 0, 1, 0, 2, 0]),
    ];
    for (text, n, pinned) in cases {
        let pred: Predicate = text.parse().map_err(|e| format!("{e}"))?;
        let found = search_witness_par(n, &pred, 4)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("search `{text}` at n={n} found nothing"))?;
        ensure!(ranks(&found) == pinned, "`{text}` n={n}: found {:?}, pinned {pinned:?}", ranks(&found));
        ensure!(pred.eval(&classify(&ints(pinned))), "pinned {pinned:?} no longer satisfies `{text}`");
        let o = |c| every_pair(pinned, c);
        let oracle_ok = match text {
            "Q4 & !Q3 & Injective" => o(q4) && !o(q3) && injective(pinned),
            "Q1 & !Q2" => o(q1) && !o(q2),
            "Q2 & !Q1" => o(q2) && !o(q1),
            "Q3 & !(Q1 & Q2)" => o(q3) && !(o(q1) && o(q2)),
            _ => o(qh) && !(o(q1) && o(q2)),
        };
        ensure!(oracle_ok, "oracle rejects {pinned:?} for `{text}`");
    }
    // The Q4-not-Q3 fixture carries the strict chain f(X) < f(X∩Y) < f(Y) < f(X∪Y).
    let v: &[i64] = &[1, 0, 2, 3];
    let pattern = (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).find(|&(x, y)| {
        let q = quad(v, x, y);
        q.x < q.i && q.i < q.y && q.y < q.u
    });
    ensure!(pattern == Some((1, 2)), "strict chain pattern not at ({{a}},{{b}}): {pattern:?}");
    // No function on one element separates Q4 from anything.
    let none = search_witness_par(1, &"!Q4".parse().unwrap(), 1).map_err(|e| e.to_string())?;
    ensure!(none.is_none(), "n=1 has a non-Q4 function");
    Ok("6 witnesses re-found, pinned and re-classified; strict chain at ({a},{b})".into())
}

fn c3_lift() -> Check {
    let mut checked = 0usize;
    for n in 1..=3 {
        suite(Suite::Lemma1a, n)?;
        let m = 1usize << n;
        for v in library_weak_orders(n)? {
            if !every_pair(&v, q1) {
                continue;
            }
            let f = ints(&v);
            for x in (0..m).filter(|&x| lower_min(&v, x)) {
                let best = supermasks(x, m).map(|z| v[z]).min().unwrap();
                ensure!(best == global_min(&v), "{v:?}: min over [{x},E] is {best}");
                let z = lift_to_global(&f, Subset(x as u32), true).map_err(|e| e.to_string())?;
                ensure!(z.index() & x == x && v[z.index()] == global_min(&v), "{v:?}: lift from {x} gave {z}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (function, lower-minimal X) cases, 0 violations"))
}

fn c4_local_is_global() -> Check {
    let (mut q1_cases, mut q2_cases) = (0usize, 0usize);
    for n in 1..=3 {
        suite(Suite::Theorem1, n)?;
        let m = 1usize << n;
        for v in library_weak_orders(n)? {
            let (is_q1, is_q2) = (every_pair(&v, q1), every_pair(&v, q2));
            if is_q2 {
                let d = ints(&v).complement_dual();
                ensure!(check_condition(&d, ConditionId::Q1).holds(), "{v:?}: Q2 but complement dual not Q1");
                ensure!(every_pair(&complement(&v), q1), "{v:?}: oracle complement not Q1");
            }
            if !(is_q1 || is_q2) {
                continue;
            }
            for x in (0..m).filter(|&x| interval_local(&v, x)) {
                ensure!(v[x] == global_min(&v), "{v:?}: interval-local {x} is not global");
                if is_q1 {
                    q1_cases += 1;
                } else {
                    q2_cases += 1;
                }
            }
        }
    }
    Ok(format!("{q1_cases} Q1 and {q2_cases} Q2-only interval-local minima, all global"))
}

fn c5_injective_q4() -> Check {
    let mut notes = Vec::new();
    for (n, expected) in [(2, 24usize), (3, 40_320)] {
        let t = Instant::now();
        let r = suite(Suite::Theorem2, n)?;
        let elapsed = t.elapsed();
        ensure!(r.scanned == expected, "n={n}: scanned {}", r.scanned);
        ensure!(elapsed < Duration::from_secs(10), "n={n} took {elapsed:?}");
        let m = 1usize << n;
        let mut lib: Vec<Vec<i64>> = enumerate_linear_orders(n).map_err(|e| e.to_string())?.map(|f| ranks(&f)).collect();
        let mut oracle = permutations(m);
        ensure!(oracle.len() == expected, "oracle produced {} permutations", oracle.len());
        lib.sort();
        oracle.sort();
        ensure!(lib == oracle, "linear-order enumeration differs from oracle at n={n}");
        let mut q4_count = 0;
        for v in &oracle {
            if !every_pair(v, q4) {
                continue;
            }
            q4_count += 1;
            let unique = (0..m).filter(|&x| v[x] == global_min(v)).collect::<Vec<_>>();
            ensure!(unique.len() == 1, "{v:?} not injective");
            for x in (0..m).filter(|&x| interval_local(v, x)) {
                ensure!(x == unique[0], "{v:?}: interval-local {x} is not the minimizer");
            }
        }
        ensure!(q4_count == r.hypothesis, "n={n}: {} Q4 orders, oracle {q4_count}", r.hypothesis);
        notes.push(format!("n={n}: {} scanned, {q4_count} Q4, {:.2}s", r.scanned, elapsed.as_secs_f64()));
    }
    Ok(notes.join("; "))
}

fn c6_pointwise_q3() -> Check {
    let mut total = 0;
    for n in 1..=3 {
        total += suite(Suite::Remark2, n)?.scanned;
        for v in library_weak_orders(n)? {
            let m = v.len();
            for x in 0..m {
                for y in 0..m {
                    let q = quad(&v, x, y);
                    ensure!((q1(&q) || q2(&q)) == q3(&q), "{v:?} at ({x},{y})");
                }
            }
        }
    }
    Ok(format!("{total} functions, pairwise Q1|Q2 == Q3 everywhere"))
}

fn oracle_submodular(f: &SetFunction) -> bool {
    let vals: Vec<Rational> = f.values().iter().map(as_rational).collect();
    (0..vals.len()).all(|x| (0..vals.len()).all(|y| vals[x] + vals[y] >= vals[x | y] + vals[x & y]))
}

fn random_cut(rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.6) {
                let weight = if rng.gen_bool(0.3) {
                    Rational::new(rng.gen_range(1..=9), rng.gen_range(1..=4))
                } else {
                    Rational::from_integer(rng.gen_range(1..=9))
                };
                edges.push(Edge { u, v, weight });
            }
        }
    }
    cut_function(n, &edges).unwrap()
}

fn random_concave(rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
    let mut slopes: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    slopes.sort_unstable_by(|a, b| b.cmp(a));
    let mut g = vec![rng.gen_range(-5..=5)];
    for s in slopes {
        g.push(g.last().unwrap() + s);
    }
    modular_plus_concave(n, &weights, &g).unwrap()
}

fn c7_generators() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rational = 0;
    for k in 0..1000 {
        let n = rng.gen_range(1..=4);
        let f = if k % 2 == 0 { random_cut(&mut rng, n) } else { random_concave(&mut rng, n) };
        if matches!(f.codomain(), Codomain::Rational) {
            rational += 1;
        }
        ensure!(oracle_submodular(&f), "instance {k} is not submodular by the oracle");
        ensure!(
            matches!(is_ordinary_submodular(&f), Ok(Outcome::Holds)),
            "instance {k}: library rejects ordinary submodularity"
        );
        ensure!(check_condition(&f, ConditionId::QuasiSubmodular).holds(), "instance {k} not quasisubmodular");
        ensure!(argmin_lattice_closure(&f), "instance {k}: minimizers not a lattice");
        let v = ranks(&f);
        ensure!(every_pair(&v, q1) && every_pair(&v, q2), "instance {k}: oracle not quasisubmodular");
        let mins: Vec<usize> = (0..v.len()).filter(|&s| v[s] == global_min(&v)).collect();
        for &a in &mins {
            for &b in &mins {
                ensure!(mins.contains(&(a | b)) && mins.contains(&(a & b)), "instance {k}: oracle lattice check");
            }
        }
    }
    Ok(format!("1000 instances (500 cut, {rational} rational-weighted; 500 modular+concave) pass"))
}

fn random_increasing(rng: &mut ChaCha8Rng, f: &SetFunction) -> Vec<(OrdinalValue, OrdinalValue)> {
    let rational_target = rng.gen_bool(0.5);
    let mut int_next: i64 = rng.gen_range(-1000..=1000);
    let mut rat_next = Rational::new(rng.gen_range(-50..=50), rng.gen_range(1..=3));
    f.levels()
        .iter()
        .map(|v| {
            let target = if rational_target {
                rat_next += Rational::new(rng.gen_range(1..=20), rng.gen_range(1..=5));
                OrdinalValue::Rat(rat_next)
            } else {
                int_next += rng.gen_range(1..=20);
                OrdinalValue::Int(int_next)
            };
            (v.clone(), target)
        })
        .collect()
}

fn c9_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failing_some = 0;
    for k in 0..1000 {
        let n = rng.gen_range(1..=4);
        let codomain = if rng.gen_bool(0.5) { Codomain::Integer } else { Codomain::Rational };
        let distinct = rng.gen_range(1..=(1usize << n).min(6));
        let f = random_function(n, &codomain, distinct, rng.gen()).map_err(|e| e.to_string())?;
        let sigma = random_increasing(&mut rng, &f);
        let g = f.monotone_transform(&sigma).map_err(|e| format!("pair {k}: {e}"))?;
        let (a, b) = (classify(&f), classify(&g));
        for c in ConditionId::ALL.into_iter().filter(|c| c.is_ordinal()) {
            ensure!(a.holds(c) == b.holds(c), "pair {k}: {c} changed under a monotone transform");
        }
        let va = ranks(&f);
        for (c, oracle) in [(ConditionId::Q1, q1 as fn(&Quad) -> bool), (ConditionId::Q2, q2), (ConditionId::Q3, q3), (ConditionId::Q4, q4), (ConditionId::Qh, qh)] {
            ensure!(a.holds(c) == every_pair(&va, oracle), "pair {k}: {c} disagrees with oracle");
        }
        if !a.holds(ConditionId::Q4) {
            failing_some += 1;
        }
    }
    Ok(format!("1000 pairs with identical ordinal class vectors ({failing_some} non-Q4)"))
}

fn c8_duality() -> Check {
    let mut total = 0;
    for n in 1..=3 {
        total += suite(Suite::Duality, n)?.scanned;
        for v in library_weak_orders(n)? {
            let c = complement(&v);
            ensure!(every_pair(&v, q1) == every_pair(&c, q2), "{v:?}: Q1 vs dual Q2");
            ensure!(every_pair(&v, q3) == every_pair(&c, q3), "{v:?}: Q3 not self-dual");
            ensure!(every_pair(&v, q4) == every_pair(&c, q4), "{v:?}: Q4 not self-dual");
            ensure!(ranks(&ints(&v).complement_dual()) == c, "{v:?}: complement dual table");
        }
    }
    let labels = SetFunction::new(
        letters(2),
        Codomain::labels(["low", "mid", "high"]).unwrap(),
        vec![OrdinalValue::Label(2), OrdinalValue::Label(0), OrdinalValue::Label(1), OrdinalValue::Label(2)],
    )
    .unwrap();
    let rational = SetFunction::new(
        letters(1),
        Codomain::Rational,
        vec![OrdinalValue::Rat(Rational::new(1, 2)), OrdinalValue::Rat(Rational::new(-7, 3))],
    )
    .unwrap();
    let all = [fixtures::f_const(), fixtures::f_r3(), fixtures::f_cut(), fixtures::f_q1nq2(), fixtures::f_card(), labels, rational];
    for f in &all {
        let back = f.order_dual().and_then(|d| d.order_dual()).map_err(|e| e.to_string())?;
        ensure!(&back == f, "order dual twice changed {:?}", f.values());
    }
    Ok(format!("{total} functions dual-checked; order dual involutive on {} fixtures", all.len()))
}

fn c10_descent() -> Check {
    let mut runs = 0;
    for n in 1..=2 {
        let m = 1usize << n;
        for v in library_weak_orders(n)? {
            let f = ints(&v);
            let hyp = every_pair(&v, q1) || every_pair(&v, q2) || (every_pair(&v, q4) && injective(&v));
            for start in 0..m {
                let t = interval_descent(&f, Subset(start as u32)).map_err(|e| e.to_string())?;
                ensure!(t.moves() <= m - 1, "{v:?} from {start}: {} moves", t.moves());
                ensure!(t.steps[0].0.index() == start, "{v:?}: trace does not start at {start}");
                for w in t.steps.windows(2) {
                    ensure!(v[w[1].0.index()] < v[w[0].0.index()], "{v:?}: non-decreasing step");
                }
                let end = t.terminal().index();
                ensure!(interval_local(&v, end), "{v:?} from {start}: end {end} not interval-local");
                if hyp {
                    ensure!(v[end] == global_min(&v), "{v:?} from {start}: end value not global");
                    ensure!(t.certificate.global(), "{v:?}: certificate not global under a hypothesis");
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} descents (n<=2, every start) agree with the oracle"))
}

fn c11_constrained() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut solves = 0;
    for k in 0..200 {
        let n = rng.gen_range(1..=4);
        let phi = if k % 2 == 0 { random_cut(&mut rng, n) } else { random_concave(&mut rng, n) };
        let distinct = rng.gen_range(2..=(1usize << n).min(7));
        let codomain = match rng.gen_range(0..3) {
            0 => Codomain::Integer,
            1 => Codomain::Rational,
            _ => Codomain::labels(["d", "c", "b", "a", "aa", "aaa", "top"]).unwrap(),
        };
        let f = random_function(n, &codomain, distinct, rng.gen()).map_err(|e| e.to_string())?;
        let fr = ranks(&f);
        let p = *fr.iter().max().unwrap() as usize + 1;
        let phis: Vec<Rational> = phi.values().iter().map(as_rational).collect();
        for kk in 1..p {
            let feasible: Vec<usize> = (0..fr.len()).filter(|&s| fr[s] >= kk as i64).collect();
            let best = feasible.iter().map(|&s| phis[s]).min().unwrap();
            let minimizers: Vec<Subset> = feasible.iter().filter(|&&s| phis[s] == best).map(|&s| Subset(s as u32)).collect();
            let mu_k = f.values()[fr.iter().position(|&r| r == kk as i64 - 1).unwrap()].clone();
            let got = constrained_minimize(&phi, &f, kk).map_err(|e| format!("instance {k}, k={kk}: {e}"))?;
            ensure!(got.feasible == feasible.len(), "instance {k}, k={kk}: feasible {} vs {}", got.feasible, feasible.len());
            ensure!(got.argmin.minimizers == minimizers, "instance {k}, k={kk}: minimizers differ");
            ensure!(as_rational(&got.argmin.min_value) == best, "instance {k}, k={kk}: min value differs");
            ensure!(got.threshold == mu_k, "instance {k}, k={kk}: threshold differs");
            solves += 1;
        }
        ensure!(constrained_minimize(&phi, &f, p).is_err() && constrained_minimize(&phi, &f, 0).is_err(), "instance {k}: k out of range accepted");
    }
    Ok(format!("200 instances, {solves} (instance, k) solves match filtered enumeration"))
}

fn strictly_nested(chain: &LevelChain, m: usize) -> bool {
    let fams = chain.families();
    fams[0].is_empty()
        && fams.last().unwrap().len() == m
        && fams.windows(2).all(|w| w[0].len() < w[1].len() && w[0].iter().all(|s| w[1].contains(s)))
}

fn c12_chains() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut accepted, mut rejected, mut attempts) = (0, 0, 0);
    while accepted < 100 {
        attempts += 1;
        ensure!(attempts < 100_000, "only {accepted} accepted chains after {attempts} attempts");
        let n = rng.gen_range(1..=4);
        let m = 1usize << n;
        // a random ordered partition of 2^E, or the level chain of a quasisubmodular generator
        let levels: Vec<i64> = if attempts % 2 == 0 {
            let p = rng.gen_range(1..=m.min(5));
            let mut masks: Vec<usize> = (0..m).collect();
            masks.shuffle(&mut rng);
            let mut lv = vec![0i64; m];
            for (i, &s) in masks.iter().enumerate() {
                lv[s] = if i < p { i as i64 } else { rng.gen_range(0..p as i64) };
            }
            lv
        } else {
            let f = if rng.gen_bool(0.5) { random_cut(&mut rng, n) } else { random_concave(&mut rng, n) };
            ranks(&f)
        };
        let f = ints(&levels);
        let chain = family_chain(&f);
        ensure!(strictly_nested(&chain, m), "family_chain of {levels:?} is not strictly nested");
        let ground = letters(n);
        match qh_from_chain(&ground, &chain) {
            Ok(g) => {
                ensure!(every_pair(&ranks(&g), qh), "accepted chain builds a non-Qh function");
                ensure!(family_chain(&g) == chain, "round trip changed the chain of {levels:?}");
                let text = chain.to_json(&ground).to_string();
                let (g2, c2) = parse_chain(&text).map_err(|e| e.to_string())?;
                ensure!(g2 == ground && c2 == chain, "chain file round trip failed for {levels:?}");
                accepted += 1;
            }
            Err(ordsub::Error::ChainNotQh(_)) => {
                ensure!(!every_pair(&levels, qh), "a Qh chain was rejected: {levels:?}");
                rejected += 1;
            }
            Err(e) => return Err(format!("chain of {levels:?}: {e}")),
        }
    }
    Ok(format!("100 accepted chains round-trip ({rejected} non-Qh chains rejected)"))
}

fn run_bin(args: &[String]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ordsub")).args(args).output().expect("binary runs");
    (out.stdout, out.status.code())
}

fn c13_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut files = Vec::new();
    for (i, f) in [fixtures::f_r3(), fixtures::f_cut(), fixtures::f_q1nq2()].into_iter().enumerate() {
        let path = dir.path().join(format!("fixture{i}.json"));
        let body = ordsub::format::set_function_to_json(&f, ordsub::format::TableForm::Dense).to_string();
        std::fs::write(&path, body).map_err(|e| e.to_string())?;
        files.push((path.display().to_string(), f.ground().clone()));
    }
    for i in 0..4 {
        let n = 3 + i % 3;
        let distinct = rng.gen_range(2..=6);
        let f = random_function(n, &Codomain::Integer, distinct, rng.gen()).map_err(|e| e.to_string())?;
        let path = dir.path().join(format!("random{i}.json"));
        let body = ordsub::format::set_function_to_json(&f, ordsub::format::TableForm::Sparse).to_string();
        std::fs::write(&path, body).map_err(|e| e.to_string())?;
        files.push((path.display().to_string(), f.ground().clone()));
    }
    let mut commands: Vec<Vec<String>> = Vec::new();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    for (path, ground) in &files {
        commands.push(s(&["--witness", "classify", path]));
        commands.push(s(&["classify", path, "--all-witnesses"]));
        commands.push(s(&["hierarchy", path]));
        commands.push(s(&["minimize", path]));
        for x in ground.subsets() {
            let name = ground.format_subset(x);
            commands.push(s(&["minimize", path, "--mode", "descent", "--start", &name]));
            commands.push(s(&["certify", path, "--point", &name]));
        }
    }
    for (n, pred) in [(2, "Q4 & !Q3"), (2, "Qh & !(Q1 & Q2)"), (3, "Q1 & !Q2 & !Qh"), (3, "Qh & !Q1 & !Q2 & Injective"), (3, "!Q4 & Q2")] {
        commands.push(s(&["search", "--n", &n.to_string(), "--predicate", pred]));
    }
    for suite in Suite::ALL {
        commands.push(s(&["verify", "--suite", suite.name(), "--n", "2"]));
    }
    commands.push(s(&["verify", "--suite", "theorem2", "--n", "3"]));
    let mut runs = 0;
    for cmd in &commands {
        for json in [false, true] {
            let with = |threads: &str| {
                let mut a = Vec::new();
                if json {
                    a.push("--json".to_string());
                }
                a.extend(["--threads".to_string(), threads.to_string()]);
                a.extend(cmd.iter().cloned());
                a
            };
            let one = run_bin(&with("1"));
            let eight = run_bin(&with("8"));
            ensure!(one.1.is_some_and(|c| c <= 1), "{cmd:?} failed with {:?}", one.1);
            ensure!(one == eight, "{cmd:?} (json={json}) differs between 1 and 8 threads");
            runs += 1;
        }
    }
    Ok(format!("{runs} command/format combinations byte-identical at 1 and 8 threads"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("1. Q3 implies Q4, exhaustive", c1_q3_implies_q4),
        ("2. Class strictness witnesses", c2_strictness),
        ("3. Lower-minimal points lift to global minima", c3_lift),
        ("4. Interval-local minima of Q1/Q2 functions are global", c4_local_is_global),
        ("5. Interval-local minima of injective Q4 functions are global", c5_injective_q4),
        ("6. Pointwise Q1-or-Q2 equals Q3", c6_pointwise_q3),
        ("7. Submodular generators are quasisubmodular with lattice minimizers", c7_generators),
        ("8. Duality properties", c8_duality),
        ("9. Ordinal invariance", c9_invariance),
        ("10. interval_descent vs oracle", c10_descent),
        ("11. Constrained solver vs enumeration", c11_constrained),
        ("12. Hierarchy round trip", c12_chains),
        ("13. Thread-count determinism", c13_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
