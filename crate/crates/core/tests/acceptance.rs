//! Acceptance suite: each criterion runs against its time limit and prints one line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qlab_core::catalog::{self, q2::*, NAMES};
use qlab_core::construct::endomorphism_quantale;
use qlab_core::homs::{find_homs, find_isomorphism, is_isomorphic, strong_homs_to_q2, HomFilter};
use qlab_core::nucleus::{coequalizer, hom_pairs, universal_property_check};
use qlab_core::quantic::{quantic_frame_check, quantic_frame_facts};
use qlab_core::search::random_left_sided;
use qlab_core::spectral::{quantic_frame_topologize, reduced_subspace, strong_spatiality, QuanticTopologization};
use qlab_core::sq2::enumerate_strictly_quantized;
use qlab_core::tensor::{involutive_tensor, tensor_primes, tensor_quantale, Twist, DEFAULT_MAX_TENSOR};
use qlab_core::topology::*;
use qlab_core::{FiniteLattice, Quantale};

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn seed() -> u64 {
    std::env::var("QLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn catalog_all() -> Vec<Quantale> {
    NAMES.iter().map(|n| catalog::catalog(n).unwrap()).collect()
}

fn topologize(q: &Quantale) -> Result<QuanticTopologization, String> {
    quantic_frame_topologize(q, &default_ambient(), DEFAULT_MAX_TENSOR, DEFAULT_MAX_OPENS).map_err(|e| e.to_string())
}

fn golden_table() -> Outcome {
    let q = catalog::q2();
    let n = |s: &str| q.el(s);
    let cols = ["b", "al", "ar", "c", "top"];
    let rows = [
        ("b", ["b", "b", "ar", "ar", "ar"]),
        ("al", ["al", "al", "top", "top", "top"]),
        ("ar", ["b", "b", "ar", "ar", "ar"]),
        ("c", ["al", "al", "top", "top", "top"]),
        ("top", ["al", "al", "top", "top", "top"]),
    ];
    let mut checked = 0;
    for (r, vals) in rows {
        for (c, v) in cols.iter().zip(vals) {
            ensure(q.mul(n(r), n(c)) == n(v), || format!("{r}*{c} = {}, expected {v}", q.elem_name(q.mul(n(r), n(c)))))?;
            checked += 1;
        }
    }
    let inv = [("bot", "bot"), ("b", "b"), ("al", "ar"), ("ar", "al"), ("c", "c"), ("top", "top")];
    for (a, b) in inv {
        ensure(q.star(n(a)).unwrap() == n(b), || format!("{a}' is not {b}"))?;
    }
    Ok(format!("{checked} products, 6 involution values"))
}

fn q2_identities() -> Outcome {
    let q = catalog::q2();
    for x in q.elements() {
        ensure(q.mul(x, B) == q.mul(x, AL), || format!("x*b != x*al at {}", q.elem_name(x)))?;
        ensure(q.mul(x, AR) == q.mul(x, C) && q.mul(x, C) == q.mul(x, TOP), || format!("x*ar, x*c, x*top differ at {}", q.elem_name(x)))?;
    }
    for a in q.elements() {
        for g in q.elements().filter(|&g| g != BOT) {
            for b in q.elements() {
                ensure(q.mul3(a, g, b) == q.mul(a, b), || format!("a*g*b != a*b at {} {} {}", q.elem_name(a), q.elem_name(g), q.elem_name(b)))?;
            }
        }
    }
    let spec = q.spectrum();
    ensure(spec == [BOT, AL, AR, C], || format!("spectrum {spec:?}"))?;
    ensure(spec.iter().all(|&p| q.leq(p, C)), || "c is not the largest prime".into())?;
    ensure(q.is_hermitian(C).unwrap(), || "c is not hermitian".into())?;
    Ok("absorption identities and largest prime".into())
}

fn tensor_reconstruction() -> Outcome {
    let twist = Twist { to_right: vec![0, 1, 2], to_left: vec![0, 1, 2] };
    let (t, inv) = involutive_tensor(&catalog::c3l(), &catalog::c3r(), &twist, DEFAULT_MAX_TENSOR).map_err(|e| e.to_string())?;
    ensure(t.quantale.len() == 6, || format!("carrier has {} elements", t.quantale.len()))?;
    ensure(inv.diagram_commutes && inv.competitors == Some(1), || format!("{inv:?}"))?;
    ensure(find_isomorphism(&t.quantale, &catalog::q2(), true).is_some(), || "not isomorphic to Q2".into())?;
    Ok("C3l (x) C3r is Q2 with its involution".into())
}

fn strictly_quantized() -> Outcome {
    let all = enumerate_strictly_quantized();
    ensure(all.len() == 6, || format!("{} classes", all.len()))?;
    for q in &all {
        ensure(q.len() <= 11 && q.is_pre_idempotent() && q.is_unital(), || format!("{} fails size/pre-idempotence/unit", q.name()))?;
    }
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            ensure(!is_isomorphic(a, b, false), || format!("{} and {} are isomorphic", a.name(), b.name()))?;
        }
    }
    let sizes: Vec<usize> = all.iter().map(|q| q.len()).collect();
    Ok(format!("6 classes, sizes {sizes:?}"))
}

fn submodules() -> Outcome {
    let expected: [Vec<usize>; 3] = [vec![BOT, AL, TOP], vec![BOT, AL, C, TOP], vec![BOT, B, AL, AR, C, TOP]];
    for amb in enumerate_strictly_quantized() {
        let subs = submodules_of_q2(&amb);
        let sets: Vec<Vec<usize>> = subs.iter().map(|s| s.elements.clone()).collect();
        ensure(sets == expected, || format!("{}: {sets:?}", amb.name()))?;
        let inv: Vec<bool> = subs.iter().map(|s| s.involutive).collect();
        ensure(inv == [false, false, true], || format!("{}: involutive flags {inv:?}", amb.name()))?;
    }
    Ok("three submodules over each of 6 ambients".into())
}

fn quantic_frames() -> Outcome {
    let q = catalog::q2();
    let mut certified = vec![];
    for f in catalog_all().into_iter().filter(|f| f.is_unital() && f.is_commutative() && f.is_idempotent() && f.unit() == Some(f.top())) {
        let f = if f.involution().is_some() { f } else { f.clone().with_involution(Some(f.elements().collect())).unwrap() };
        let r = quantic_frame_check(&f, DEFAULT_MAX_TENSOR).map_err(|e| format!("{}: {e}", f.name()))?;
        ensure(r.is_quantic_frame(), || format!("{} not certified: {r:?}", f.name()))?;
        certified.push(f.name().to_string());
    }
    let r = quantic_frame_check(&q, DEFAULT_MAX_TENSOR).map_err(|e| e.to_string())?;
    ensure(r.is_quantic_frame(), || "Q2 not certified".into())?;
    let facts = quantic_frame_facts(&q, &r).map_err(|e| e.to_string())?;
    ensure(facts.all_hold(), || format!("{facts:?}"))?;
    ensure(facts.phi == [(BOT, BOT), (AL, C)] && facts.phi_bijective, || format!("phi {:?}", facts.phi))?;
    ensure(q.hermitian_spectrum().unwrap() == [BOT, C], || "hermitian spectrum".into())?;
    Ok(format!("Q2 and frames {certified:?}"))
}

fn two_point_space() -> Outcome {
    let q = catalog::q2();
    let qt = topologize(&q)?;
    let t = &qt.topology;
    ensure(qt.points == [BOT, AL], || format!("points {:?}", qt.points))?;
    let listed: Vec<Presheaf> = vec![
        vec![TOP, AL],
        vec![TOP, AR],
        vec![TOP, B],
        vec![AR, B],
        vec![AL, B],
        t.constant(B),
        t.constant(AL),
        t.constant(AR),
        t.constant(TOP),
    ];
    ensure(join_closure(t.ambient(), 2, listed.clone()) == t.opens(), || "listed base does not generate the topology".into())?;
    let mut sorted = listed;
    sorted.sort();
    ensure(sorted == qt.elementary_base, || "elementary base differs from the listed one".into())?;
    ensure(qt.formulas_agree && qt.base_generates, || "B formulas disagree".into())?;
    let sep = separation_report(t);
    ensure(sep.t0 && !sep.frechet, || format!("{sep:?}"))?;
    ensure(t.opens().iter().all(|f| t.ambient().leq(f[1], f[0])), || "f(al) <= f(bot) fails".into())?;
    let sober = sober_check(t, &[BOT, B, AL, AR, C, TOP]).map_err(|e| e.to_string())?;
    ensure(sober.sober, || format!("{sober:?}"))?;
    let tq = t.to_quantale().map_err(|e| e.to_string())?;
    let r = quantic_frame_check(&tq, DEFAULT_MAX_TENSOR).map_err(|e| e.to_string())?;
    ensure(!r.cond_c && r.cond_a && r.cond_b, || "expected only the pushout condition to fail".into())?;
    ensure(r.coequalizer.fixed_points().len() == r.tensor.tensor.quantale.len(), || "coequalizer nucleus is not the identity".into())?;
    let ix = |f: &[usize]| t.index_of(f).unwrap();
    let l = |f: &[usize]| r.tensor.left_elements.iter().position(|&x| x == ix(f)).unwrap();
    let rr = |f: &[usize]| r.tensor.right_elements.iter().position(|&x| x == ix(f)).unwrap();
    let (c, tens) = (&r.tensor.tensor.carrier, &r.tensor.tensor.quantale);
    let x1 = tens.join(c.elem(l(&[AL, AL]), rr(&[TOP, TOP])), c.elem(l(&[TOP, AL]), rr(&[TOP, AR])));
    let x2 = c.elem(l(&[TOP, AL]), rr(&[TOP, TOP]));
    let u = r.pi_map.as_ref().ok_or("comparison map undefined")?;
    ensure(x1 != x2 && u.apply(x1) == u.apply(x2) && u.apply(x1) == ix(&[TOP, AL]), || "non-injectivity witness not reproduced".into())?;
    Ok(format!("{} opens, 9-element base, T0, not Frechet, sober; {}", t.opens().len(), r.cond_c_witness.unwrap_or_default()))
}

fn tensor_factorization() -> Outcome {
    let small: Vec<Quantale> = catalog_all().into_iter().filter(|q| q.len() <= 5 && q.is_semi_unital()).collect();
    let lefts: Vec<&Quantale> = small.iter().filter(|q| q.is_left_sided()).collect();
    let rights: Vec<&Quantale> = small.iter().filter(|q| q.is_right_sided()).collect();
    let mut pairs = 0;
    let mut check = |l: &Quantale, r: &Quantale| -> Result<(), String> {
        let t = tensor_quantale(l, r, DEFAULT_MAX_TENSOR).map_err(|e| e.to_string())?;
        let p = tensor_primes(&t).map_err(|e| e.to_string())?;
        ensure(p.agree, || format!("{} (x) {}: {p:?}", l.name(), r.name()))?;
        pairs += 1;
        Ok(())
    };
    for l in &lefts {
        for r in &rights {
            check(l, r)?;
        }
    }
    let rand = random_left_sided(seed(), 21, 5, 50_000);
    ensure(rand.len() == 21, || format!("only {} random instances", rand.len()))?;
    for w in rand.windows(2) {
        check(&w[0], &w[1].opposite())?;
    }
    Ok(format!("{pairs} pairs ({} random)", 20))
}

fn strong_homs() -> Outcome {
    let mut n = 0;
    for q in catalog_all() {
        let r = strong_homs_to_q2(&q);
        ensure(r.bijective && r.homs.len() == q.strong_spectrum().len(), || format!("{}: {} homs, spectrum {:?}", q.name(), r.homs.len(), r.strong_spectrum))?;
        if let Ok(h) = q.hermitian_spectrum() {
            let mut ip = r.involutive_primes.clone().unwrap_or_default();
            ip.sort_unstable();
            ensure(ip == h, || format!("{}: involutive homs {ip:?} vs hermitian {h:?}", q.name()))?;
        }
        n += 1;
    }
    Ok(format!("{n} catalog quantales"))
}

fn endomorphisms() -> Outcome {
    let c3 = FiniteLattice::chain(&["bot", "a", "top"]).unwrap();
    let q = endomorphism_quantale(&c3, 1000).map_err(|e| e.to_string())?;
    ensure(q.is_semi_unital() && q.is_factor() && !q.is_semi_integral(), || "property flags".into())?;
    ensure(q.spectrum().is_empty(), || "spectrum not empty".into())?;
    Ok(format!("{} maps, empty spectrum", q.len()))
}

fn universal_property() -> Outcome {
    let all = catalog_all();
    let cods: Vec<&Quantale> = all.iter().filter(|q| q.len() <= 8).collect();
    let two = catalog::two();
    let mut equalizing = 0;
    let mut instances = 0;
    for q in all.iter().filter(|q| q.len() <= 12) {
        let homs = find_homs(&two, q, HomFilter::default());
        for (i, f) in homs.iter().enumerate() {
            for g in &homs[i + 1..] {
                let pairs = hom_pairs(&two, q, f, g).map_err(|e| e.to_string())?;
                let qq = coequalizer(q, &pairs).map_err(|e| e.to_string())?;
                for cod in &cods {
                    let u = universal_property_check(&qq, &pairs, cod);
                    ensure(u.holds(), || format!("{} into {}: {u:?}", q.name(), cod.name()))?;
                    equalizing += u.equalizing;
                }
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} coequalizers, {equalizing} equalizing homs factor uniquely"))
}

fn convergence() -> Outcome {
    let q = catalog::q2();
    let qt = topologize(&q)?;
    let t = &qt.topology;
    let fs = FilterSpace::new(t).map_err(|e| e.to_string())?;
    let sep = separation_report(t);
    ensure(!sep.strong_hausdorff, || "two-point space is strongly separated".into())?;
    let (x, y) = sep.strong_hausdorff_failures[0];
    let w = fs.separating_filter(x, y);
    fs.validate(&w).map_err(|e| e.to_string())?;
    let (l, r) = fs.limits(&w);
    ensure(x != y && l.contains(&x) && r.contains(&y), || format!("limits {l:?} {r:?}"))?;
    let conv = convergence_check(t, seed(), 500).map_err(|e| e.to_string())?;
    ensure(conv.holds(), || format!("{conv:?}"))?;

    let dq = catalog::diamond_pushout();
    let dqt = topologize(&dq)?;
    let ml = dq.maximal_left_sided();
    let sub = reduced_subspace(&dqt, &dq, &ml).map_err(|e| e.to_string())?;
    ensure(sub.topology.len_points() == 2 && sub.strong_hausdorff && sub.witnesses_ok, || "reduced pair not strongly separated".into())?;
    let conv = convergence_check(&sub.topology, seed(), 2000).map_err(|e| e.to_string())?;
    ensure(conv.holds() && conv.limit_pairs.is_empty(), || format!("{conv:?}"))?;
    Ok(format!(
        "separating filter with limits ({x},{y}); reduced pair: no filter with distinct limits, {} of {} sampled filters valid",
        conv.sampled_valid, conv.sampled
    ))
}

fn strong_spatiality_two_ways() -> Outcome {
    let mut n = 0;
    for q in catalog_all() {
        let r = strong_spatiality(&q, &default_ambient(), DEFAULT_MAX_TENSOR, DEFAULT_MAX_OPENS).map_err(|e| format!("{}: {e}", q.name()))?;
        ensure(r.agree() && r.u_subquantale && r.product_rule, || format!("{}: {r:?}", q.name()))?;
        n += 1;
    }
    let triv = strong_spatiality(&catalog::c3trivial(), &default_ambient(), DEFAULT_MAX_TENSOR, DEFAULT_MAX_OPENS).map_err(|e| e.to_string())?;
    ensure(!triv.strongly_spatial && !triv.criterion, || "trivial C3 passes".into())?;
    Ok(format!("{n} catalog quantales agree"))
}

fn interior_involution() -> Outcome {
    let mut topologies: Vec<QTopology> = Vec::new();
    for name in ["q2", "diamond-q"] {
        let qt = topologize(&catalog::catalog(name).unwrap())?;
        topologies.push(qt.hermitian.topology.clone());
        topologies.push(qt.topology.clone());
    }
    for amb in enumerate_strictly_quantized() {
        let al = amb.el("al");
        for inv in [false, true] {
            if inv && amb.involution().is_none() {
                continue;
            }
            let t = generate_topology(vec!["x".into()], &[vec![al]], &amb, inv, DEFAULT_MAX_OPENS).map_err(|e| e.to_string())?;
            topologies.push(t);
        }
    }
    let mut witnessed = 0;
    for (i, t) in topologies.iter().enumerate() {
        let r = involution_by_interior(t, seed() + i as u64, 2000).map_err(|e| e.to_string())?;
        ensure(r.agree(), || format!("topology {i}: {r:?}"))?;
        if !r.closed_under_involution {
            ensure(r.witness.is_some(), || format!("topology {i}: no witness"))?;
            witnessed += 1;
        }
    }
    ensure(witnessed > 0, || "no non-involutive topology exercised".into())?;
    Ok(format!("{} topologies, {witnessed} non-involutive with witnesses", topologies.len()))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("Q2 golden multiplication and involution table", 1, golden_table),
        ("Q2 absorption identities and largest hermitian prime", 1, q2_identities),
        ("Q2 rebuilt as the involutive tensor C3l (x) C3r", 5, tensor_reconstruction),
        ("strictly quantized unital quantales: 6 classes", 60, strictly_quantized),
        ("Q2 submodules over every strictly quantized ambient", 10, submodules),
        ("quantic frame certification", 10, quantic_frames),
        ("two-point quantized space of Q2", 30, two_point_space),
        ("prime factorization in sided tensor products", 120, tensor_factorization),
        ("strong homs into Q2 versus the strong spectrum", 30, strong_homs),
        ("endomorphism quantale of the 3-chain", 5, endomorphisms),
        ("coequalizer universal property", 120, universal_property),
        ("limits of filters and strong separation", 300, convergence),
        ("strong spatiality by definition and through U_Q", 60, strong_spatiality_two_ways),
        ("involutive topologies characterized by the interior", 30, interior_involution),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took < Duration::from_secs(*limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time limit: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} [{:.2}s / {limit}s] {name}: {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
