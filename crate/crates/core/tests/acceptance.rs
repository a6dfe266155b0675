//! End-to-end acceptance checks, one line per criterion.
//!
//! Built with `harness = false` so the report is always printed.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use q2::canonical::{apply_basis, window_matrix, WindowOperator};
use q2::cli;
use q2::diagonal::{build_uz, check_uz_relations, membership_uz, two_adic_continuity, RootOfUnity};
use q2::expectations::{e_cu, e_d2, e_gauge};
use q2::morphisms::{
    bogoljubov_classify, check_extension, shift_extension_data, BogoljubovClass, BogoljubovMatrix,
    Endomorphism, ExtensionData,
};
use q2::parse::parse_element;
use q2::torus::{
    approach_sequence, cascade_solve, flipflop_commute_obstruction, gauge_equiv_obstruction,
    solve_square_equation, LaurentCircleFunction, Preset,
};
use q2::{membership, Element, Generator, Monomial, Scalar, Subalgebra};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn g(x: Generator) -> Element {
    Element::generator(x)
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let dt = start.elapsed();
    ensure(dt < limit, || format!("{what} took {dt:.2?}, limit {limit:?}"))
}

fn relation_suite() -> Outcome {
    use Generator::*;
    let start = Instant::now();
    let pairs: Vec<(&str, Element, Element)> = vec![
        ("S2 U = U^2 S2", g(S2) * g(U), g(U) * g(U) * g(S2)),
        ("S2 S2* + U S2 S2* U* = 1", g(S2) * g(S2Star) + g(U) * g(S2) * g(S2Star) * g(UStar), Element::one()),
        ("U S1 = S2 U", g(U) * g(S1), g(S2) * g(U)),
        ("U S2 = S1", g(U) * g(S2), g(S1)),
        ("U S1* = S2* U", g(U) * g(S1Star), g(S2Star) * g(U)),
        ("U S2* = S2* U^2", g(U) * g(S2Star), g(S2Star) * g(U) * g(U)),
        ("U* S1 = S2", g(UStar) * g(S1), g(S2)),
        ("U* S2 = S1 U*", g(UStar) * g(S2), g(S1) * g(UStar)),
        ("U* S1* = S1* U*^2", g(UStar) * g(S1Star), g(S1Star) * g(UStar) * g(UStar)),
        ("U* S2* = S1* U*", g(UStar) * g(S2Star), g(S1Star) * g(UStar)),
    ];
    for (name, lhs, rhs) in &pairs {
        ensure((lhs - rhs).is_zero_operator(), || format!("{name} fails"))?;
    }
    within(Duration::from_secs(1), start, "relation suite")?;
    Ok(format!("{} relations", pairs.len()))
}

fn oracle_agreement() -> Outcome {
    use Generator::*;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let one = g(S1) * g(S1Star) + g(S2) * g(S2Star);
    let (lo, hi) = (-1024, 1024);
    let (mut equal, mut different) = (0, 0);
    for k in 0..200 {
        let x = random_element(&mut rng);
        let y = match k % 5 {
            0 => x.normalize_depth(3).unwrap(),
            1 => &x * &one,
            2 => &(&(&x * &g(U)) * &g(UStar)) + &Element::zero(),
            3 => &x + &Element::term(random_scalar(&mut rng), random_monomial(&mut rng, 3, 4)),
            _ => random_element(&mut rng),
        };
        let engine = x.equals(&y);
        let wx = window_matrix(&WindowOperator::Element(x.clone()), lo, hi).unwrap();
        let wy = window_matrix(&WindowOperator::Element(y.clone()), lo, hi).unwrap();
        let window = wx.max_diff(&wy) <= 1e-9;
        let words = oracle_equal(&x, &y, lo, hi, 1e-9);
        ensure(engine == window && engine == words, || {
            format!("disagreement on x = {x}, y = {y}: engine {engine}, window {window}, words {words}")
        })?;
        if engine {
            equal += 1;
        } else {
            different += 1;
        }
    }
    within(Duration::from_secs(10), start, "oracle agreement")?;
    Ok(format!("200/200 agree ({equal} equal, {different} different)"))
}

fn expectation_values() -> Outcome {
    use Generator::*;
    for k in 1..=8u64 {
        let x = g(S2).pow(k) * g(S2Star).pow(k);
        let expected = Element::scalar(Scalar::dyadic(k as u32));
        ensure(e_cu(&x).equals(&expected), || format!("E_CU(S2^{k} S2*^{k}) = {}", e_cu(&x)))?;
    }
    for k in 0..=5u64 {
        for m in 0..=5u64 {
            if k != m {
                let x = g(S2).pow(k) * g(S2Star).pow(m);
                ensure(e_cu(&x).is_zero_operator(), || format!("E_CU(S2^{k} S2*^{m}) != 0"))?;
            }
        }
    }
    for k in -5..=5i64 {
        let expected = if k == 0 { Element::one() } else { Element::zero() };
        ensure(e_d2(&Element::u_power(k)).equals(&expected), || format!("E_D2(U^{k}) wrong"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let z = Scalar::cyclo(4, 1);
    let gauge = Endomorphism::gauge(z.clone()).unwrap();
    for _ in 0..100 {
        let m = random_monomial(&mut rng, 4, 6);
        let x = Element::monomial(m);
        let e = e_gauge(&x);
        let ok = if m.a == m.b { e == x } else { e.is_empty() };
        ensure(ok, || format!("E_gauge on {m:?}"))?;
        let twisted = gauge.apply(&x);
        let phase = z.pow(m.a as i64 - m.b as i64).unwrap();
        ensure(twisted.equals(&x.scale(&phase)), || format!("gauge action on {m:?}"))?;
    }
    Ok("E_CU, E_D2 and E_gauge values".into())
}

fn idempotence_and_module() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    type Exp = fn(&Element) -> Element;
    type Gen = fn(&mut ChaCha8Rng) -> Element;
    let cases: [(&str, Exp, Gen); 3] = [
        ("E_gauge", e_gauge, random_gauge_invariant),
        ("E_CU", e_cu, random_cu),
        ("E_D2", e_d2, random_d2),
    ];
    for (name, e, sub) in cases {
        for _ in 0..50 {
            let x = random_element(&mut rng);
            let ex = e(&x);
            ensure(e(&ex).equals(&ex), || format!("{name} not idempotent on {x}"))?;
            let a = sub(&mut rng);
            let b = sub(&mut rng);
            let lhs = e(&(&(&a * &x) * &b));
            let rhs = &(&a * &ex) * &b;
            ensure(lhs.equals(&rhs), || format!("{name} module property fails: a = {a}, x = {x}, b = {b}"))?;
        }
    }
    Ok("3 x 50 triples".into())
}

fn morphism_suite() -> Outcome {
    use Generator::*;
    let id = Endomorphism::identity();
    let ff = Endomorphism::flipflop();
    ensure(ff.compose(&ff).equals_on_generators(&id), || "flipflop^2 != id".into())?;
    for z in [Scalar::cyclo(2, 1), Scalar::cyclo(3, 3)] {
        let gz = Endomorphism::gauge(z.clone()).unwrap();
        ensure(gz.compose(&ff).equals_on_generators(&ff.compose(&gz)), || format!("gauge({z}) and flipflop"))?;
    }
    let chi15 = Endomorphism::chi(3).unwrap().compose(&Endomorphism::chi(5).unwrap());
    ensure(chi15.equals_on_generators(&Endomorphism::chi(15).unwrap()), || "chi3 chi5 != chi15".into())?;
    let shift = Endomorphism::shift();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let x = random_element(&mut rng);
        let px = shift.apply(&x);
        for s in [g(S1), g(S2)] {
            ensure((&s * &x).equals(&(&px * &s)), || format!("intertwining fails on {x}"))?;
        }
    }
    ensure(shift.apply(&g(U)).equals(&(g(U) * g(U))), || "shift(U) != U^2".into())?;
    let ext = check_extension(&shift_extension_data()).map_err(|e| e.to_string())?;
    ensure(ext.equals_on_generators(&shift), || "theta extension differs from the shift".into())?;
    Ok("flipflop, gauge, chi, shift, theta extension".into())
}

fn rigidity_echo() -> Outcome {
    use Generator::*;
    let s1 = g(S1);
    let s2 = g(S2);
    let mut matrix: Vec<Endomorphism> = vec![
        Endomorphism::identity(),
        Endomorphism::flipflop(),
        Endomorphism::flipflop().compose(&Endomorphism::flipflop()),
        Endomorphism::shift(),
        Endomorphism::chi(1).unwrap(),
        Endomorphism::chi(3).unwrap(),
        Endomorphism::chi(-1).unwrap(),
        Endomorphism::gauge(Scalar::one()).unwrap(),
        Endomorphism::gauge(Scalar::cyclo(3, 1)).unwrap(),
        Endomorphism::beta_monomial(Scalar::one(), 0).unwrap(),
        Endomorphism::beta_monomial(Scalar::cyclo(2, 1), 2).unwrap(),
        Endomorphism::ad_unitary(&g(U)).unwrap(),
        Endomorphism::ad_unitary(&Element::scalar(Scalar::cyclo(3, 5))).unwrap(),
        Endomorphism::ad_unitary(&build_uz(2).unwrap()).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let z = random_unit_root(&mut rng);
        let w = random_unit_root(&mut rng);
        let a = ExtensionData::new(Element::scalar(z), Element::one());
        let b = ExtensionData::new(Element::scalar(w), Element::one());
        let d = q2::morphisms::compose_extension_data(&a, &b).map_err(|e| e.to_string())?;
        matrix.push(check_extension(&d).map_err(|e| e.to_string())?);
    }
    let mut fixing = 0;
    for e in &matrix {
        if e.apply(&s1).equals(&s1) && e.apply(&s2).equals(&s2) {
            fixing += 1;
            ensure(e.apply(&g(U)).equals(&g(U)), || format!("{e} fixes O2 but moves U"))?;
        }
    }
    Ok(format!("{} endomorphisms, {fixing} fix O2 and all fix U", matrix.len()))
}

fn bogoljubov_table() -> Outcome {
    let zero = Scalar::zero();
    let z = Scalar::cyclo(3, 3);
    let w = Scalar::cyclo(2, 1);
    let classify = |m| bogoljubov_classify(&m).map_err(|e| e.to_string());
    let c = classify(BogoljubovMatrix::exact(z.clone(), zero.clone(), zero.clone(), z.clone()))?;
    ensure(matches!(c, BogoljubovClass::Gauge(_)), || format!("diag(z, z) gave {c}"))?;
    let c = classify(BogoljubovMatrix::exact(Scalar::one(), zero.clone(), zero.clone(), w.clone()))?;
    ensure(c == BogoljubovClass::NotExtensible, || format!("diag(1, i) gave {c}"))?;
    let c = classify(BogoljubovMatrix::exact(zero.clone(), w.clone(), w.clone(), zero.clone()))?;
    ensure(matches!(c, BogoljubovClass::FlipFlopGauge(_)), || format!("antidiag(w, w) gave {c}"))?;
    let c = classify(BogoljubovMatrix::exact(zero.clone(), w.clone(), -w.clone(), zero.clone()))?;
    ensure(c == BogoljubovClass::NotExtensible, || format!("antidiag(w, -w) gave {c}"))?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = classify(BogoljubovMatrix::float(r.into(), r.into(), r.into(), (-r).into()))?;
    ensure(c == BogoljubovClass::NotExtensible, || format!("Hadamard gave {c}"))?;
    let p = Complex64::from_polar(1.0, 0.7);
    let c = classify(BogoljubovMatrix::float(p, 0.0.into(), 0.0.into(), p))?;
    ensure(matches!(c, BogoljubovClass::Gauge(_)), || format!("float diag gave {c}"))?;
    let bad = bogoljubov_classify(&BogoljubovMatrix::float(1.0.into(), 1.0.into(), 0.0.into(), 1.0.into()));
    ensure(bad.is_err(), || "non-unitary matrix accepted".into())?;
    Ok("gauge, flip-flop gauge, diagonal, anti-diagonal, Hadamard, non-unitary".into())
}

fn uz_suite() -> Outcome {
    for n in 0..=4u32 {
        let uz = build_uz(n).map_err(|e| e.to_string())?;
        let w = window_matrix(&WindowOperator::Element(uz.clone()), -64, 64).unwrap();
        for k in -64..=64i64 {
            let exact = apply_basis(&uz, k);
            let expected = BTreeMap::from([(k, Scalar::cyclo(n, k))]);
            ensure(exact == expected, || format!("U_z e_{k} at n = {n}"))?;
            ensure((w.get(k, k) - Scalar::cyclo(n, k).to_complex()).norm() < 1e-12, || format!("window n = {n}"))?;
        }
        ensure(check_uz_relations(n).unwrap_or(false), || format!("relations at n = {n}"))?;
    }
    for order in [1u64, 2, 3, 4, 6, 8, 12, 16] {
        let z = RootOfUnity::new(order, 1).unwrap();
        ensure(membership_uz(&z) == order.is_power_of_two(), || format!("order {order}"))?;
        let zc = z.to_complex();
        let cont = two_adic_continuity(|k| zc.powf(k as f64), 8, 1e-9).unwrap();
        ensure(cont.is_continuous() == order.is_power_of_two(), || format!("continuity at order {order}"))?;
    }
    Ok("n <= 4, orders 1 2 3 4 6 8 12 16".into())
}

fn cascade_obstruction() -> Outcome {
    let start = Instant::now();
    let level = 12;
    let step = "step:pi/4".parse::<Preset>().unwrap().sample(level).unwrap();
    let h = cascade_solve(&step).map_err(|e| e.to_string())?;
    for n in 0..=9u32 {
        let a = h.at(1i64 << (11 - n));
        ensure((a - 1.0).norm() < 1e-9, || format!("h(e^(i pi/2^{n})) = {a}"))?;
        let b = h.at(5i64 << (9 - n));
        ensure((b + 1.0).norm() < 1e-9, || format!("h(e^(5 i pi/2^({n}+2))) = {b}"))?;
    }
    let report = gauge_equiv_obstruction(&step).map_err(|e| e.to_string())?;
    ensure((report.oscillation_at_one - 2.0).abs() < 1e-6, || format!("step oscillation {}", report.oscillation_at_one))?;
    let bump = "bump:i@9pi/8".parse::<Preset>().unwrap().sample(level).unwrap();
    let ff = flipflop_commute_obstruction(&bump).map_err(|e| e.to_string())?;
    ensure((ff.oscillation_at_one - 2.0).abs() < 1e-6, || format!("bump oscillation {}", ff.oscillation_at_one))?;
    within(Duration::from_secs(1), start, "cascade obstruction")?;
    let nine = approach_sequence(&ff.solution, 0, 9).last().map(|p| p.1).unwrap_or_default();
    Ok(format!(
        "step 2 at 1, bump 2 at 1 (h along e^(9 pi i/2^(n+3)) is {:+.3}{:+.3}i)",
        nine.re, nine.im
    ))
}

fn appendix_solver() -> Outcome {
    for n in -8..=8 {
        let got = solve_square_equation(&LaurentCircleFunction::character(n)).map_err(|e| e.to_string())?;
        ensure(got == n, || format!("z^{n} solved as {got}"))?;
    }
    let minus_z = LaurentCircleFunction::monomial(Scalar::from_integer(-1), 1);
    ensure(solve_square_equation(&minus_z).is_err(), || "-z accepted".into())?;
    for w in [Scalar::cyclo(2, 1), Scalar::cyclo(3, 1), Scalar::cyclo(4, 7)] {
        let f = LaurentCircleFunction::monomial(w.clone(), 1);
        ensure(solve_square_equation(&f).is_err(), || format!("{w} z accepted"))?;
    }
    for n in -6..=6i64 {
        let f = LaurentCircleFunction::character(n).sample(8).map_err(|e| e.to_string())?;
        let k = f.winding_number().map_err(|e| e.to_string())?;
        ensure(k == n, || format!("winding of z^{n} is {k}"))?;
    }
    Ok("n in [-8, 8], rejections, windings |n| <= 6".into())
}

fn projection_family() -> Outcome {
    for n in 0..=5u32 {
        let pn = Element::proj_p(n);
        ensure(pn.is_projection(), || format!("P_{n} not a projection"))?;
        for m in 0..=5u32 {
            if m != n {
                let pm = Element::proj_p(m);
                ensure((&pn * &pm).is_zero_operator(), || format!("P_{n} P_{m} != 0"))?;
            }
        }
        let qn = Element::proj_q(n);
        let total = 1i64 << (n + 3);
        let covered = (0..total).filter(|&i| apply_basis(&qn, i) == BTreeMap::from([(i, Scalar::one())])).count() as i64;
        let denom = 1i64 << (n + 1);
        ensure(covered * denom == total * (denom - 1), || format!("Q_{n} covers {covered}/{total}"))?;
    }
    Ok("P_0..P_5 orthogonal, Q_n coverage 1 - 2^-(n+1)".into())
}

fn membership_suite() -> Outcome {
    use Generator::*;
    let ad = Endomorphism::ad_unitary(&g(U)).unwrap();
    let ad_s2 = ad.apply(&g(S2));
    ensure(ad_s2.equals(&(g(S1) * g(UStar))), || "ad(U)(S2) != S1 U*".into())?;
    ensure(!membership(&ad_s2, Subalgebra::O2), || "S1 U* in O2".into())?;
    ensure(!membership(&ad.apply(&(g(S1) * g(S2Star))), Subalgebra::O2), || "ad(U)(S1 S2*) in O2".into())?;
    ensure(!membership(&g(U), Subalgebra::O2), || "U in O2".into())?;
    ensure(membership(&(g(S1) * g(S2Star)), Subalgebra::F2), || "S1 S2* not in F2".into())?;
    let mut count = 0;
    for a in 0..=3u32 {
        // every subset of the residue classes mod 2^a gives a diagonal projection
        for mask in 1u32..(1 << (1 << a)) {
            let p = Element::from_terms(
                (0..1i64 << a).filter(|r| mask >> r & 1 == 1).map(|r| (Monomial::new(r, a, a, -r), Scalar::one())),
            );
            ensure(membership(&ad.apply(&p), Subalgebra::D2), || format!("ad(U)({p}) leaves D2"))?;
            count += 1;
        }
    }
    Ok(format!("{count} diagonal projections stay in D2"))
}

fn cli_round_trip_and_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let x = random_element(&mut rng);
        let printed = x.to_string();
        let back = parse_element(&printed).map_err(|e| format!("{printed}: {e}"))?;
        ensure(back == x, || format!("{printed} parsed back as {back}"))?;
        let json = serde_json::to_string(&x).unwrap();
        let from_json: Element = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        ensure(from_json == x, || format!("JSON round trip of {printed}"))?;
    }
    let alphabet = [
        "U", "S1", "S2", "*", "^", "-", "+", "(", ")", "/", "i", "zeta(8)", "zeta(", "3", "-1", "17", " ", "2",
        "z", "^-", "S2*", "0", "1/0", "99999999999999999999", "\u{e9}", "#",
    ];
    let verbs = ["normalize", "eq", "member", "expect", "apply"];
    for k in 0..10_000 {
        let len = rng.gen_range(0..12);
        let s: String = (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
        let args: Vec<String> = match verbs[k % verbs.len()] {
            "eq" => vec!["q2".into(), "eq".into(), s.clone(), "S2".into()],
            "member" => vec!["q2".into(), "member".into(), "O2".into(), s.clone()],
            "expect" => vec!["q2".into(), "expect".into(), "CU".into(), s.clone()],
            "apply" => vec!["q2".into(), "apply".into(), "shift".into(), s.clone()],
            _ => vec!["q2".into(), "normalize".into(), s.clone()],
        };
        let out = panic::catch_unwind(|| cli::run(args)).map_err(|_| format!("panic on {s:?}"))?;
        ensure((0..=3).contains(&out.code), || format!("exit {} on {s:?}", out.code))?;
        if out.code >= 2 {
            ensure(!out.stderr.is_empty(), || format!("silent failure on {s:?}"))?;
        }
    }
    let bin = env!("CARGO_BIN_EXE_q2");
    let cases: [(&[&str], &str); 3] = [
        (&["eq", "S1", "U S2"], "EQUAL\n"),
        (&["expect", "CU", "S2^3 S2*^3"], "1/8\n"),
        (&["apply", "flipflop", "S1"], "S2\n"),
    ];
    for (args, expected) in cases {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure(out.status.code() == Some(0) && stdout == expected, || {
            format!("q2 {args:?} printed {stdout:?} with {:?}", out.status.code())
        })?;
    }
    Ok("200 round trips, 10000 fuzz inputs, 3 binary examples".into())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("relation suite", relation_suite),
        ("oracle agreement", oracle_agreement),
        ("expectation values", expectation_values),
        ("idempotence and module property", idempotence_and_module),
        ("morphism suite", morphism_suite),
        ("rigidity echo", rigidity_echo),
        ("Bogoljubov classifier", bogoljubov_table),
        ("U_z suite", uz_suite),
        ("cascade obstruction", cascade_obstruction),
        ("functional equation solver", appendix_solver),
        ("projection family", projection_family),
        ("membership suite", membership_suite),
        ("CLI round trip and fuzz", cli_round_trip_and_fuzz),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let dt = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{dt:.2?}]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{dt:.2?}]: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
