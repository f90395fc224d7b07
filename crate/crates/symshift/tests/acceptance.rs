//! Acceptance gate: one test per criterion, each ending in a single
//! PASS line (a failed assertion is the FAIL line).

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symshift::classify::{
    classify_strong_weak, constants, dimension_uq, in_dim_lower_bound, is_irreducible,
    kl_digits, natural_approx_below, plateau_from_left, spec_certificate, SpecVerdict,
    StrongType, StrongWeak, TriState,
};
use symshift::construct::{construct_dense, construct_weak};
use symshift::expansion::{base_from_alpha, in_vhat};
use symshift::poly::q_ratio;
use symshift::shiftlang::{
    enumerate_admissible, is_admissible, ShiftAutomaton, ShiftKind, SpecNumber, SyncMethod,
};
use symshift::words::{cylinder_distance, parse_seq, Digit, EpSeq, Word};

fn seq(s: &str, m: Digit) -> EpSeq {
    parse_seq(s, m).unwrap()
}

/// All canonical periodic alpha in V-hat with the given alphabet and block
/// length at most `max_len`.
fn periodic_vhat_corpus(m: Digit, max_len: usize, limit: usize) -> Vec<EpSeq> {
    let mut out: Vec<EpSeq> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for len in 1..=max_len {
        let count = (m as u64 + 1).pow(len as u32);
        for code in 0..count {
            let mut digits = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                digits.push((c % (m as u64 + 1)) as Digit);
                c /= m as u64 + 1;
            }
            let Ok(a) = EpSeq::periodic(m, digits) else { continue };
            if !in_vhat(&a) || !seen.insert(a.to_string()) {
                continue;
            }
            out.push(a);
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5953_5348_4946_5431)
}

fn random_vhat(r: &mut ChaCha8Rng, m: Digit, max_len: usize) -> EpSeq {
    loop {
        let len = r.gen_range(1..=max_len);
        let digits: Vec<Digit> = (0..len).map(|_| r.gen_range(0..=m)).collect();
        if let Ok(a) = EpSeq::periodic(m, digits) {
            if in_vhat(&a) {
                return a;
            }
        }
    }
}

#[test]
fn criterion_01_constants() {
    // runtime budget: < 1 s
    let c1 = constants(1).unwrap();
    let phi = 1.618_033_988_7_f64;
    let q = c1.q_g.approx_f64();
    assert!((q - phi).abs() < 1e-9, "q_G(1) = {q}");
    assert_eq!(c1.alpha_qt.to_string(), "1(10)");
    let kl1: String = kl_digits(1, 16).iter().map(|d| d.to_string()).collect();
    assert_eq!(kl1, "1101001100101101");
    let c2 = constants(2).unwrap();
    assert!(c2.q_g.is_rational());
    assert_eq!(c2.q_g.as_rational().unwrap(), q_ratio(2, 1));
    let kl2: String = kl_digits(2, 8).iter().map(|d| d.to_string()).collect();
    assert_eq!(kl2, "21020121");
    println!("ACCEPTANCE 01 constants: PASS");
}

#[test]
fn criterion_02_parry_roundtrip() {
    // runtime budget: < 30 s
    let mut corpus = Vec::new();
    for m in 1..=3 {
        corpus.extend(periodic_vhat_corpus(m, 6, 20));
    }
    assert!(corpus.len() >= 50, "corpus too small: {}", corpus.len());
    for a in &corpus {
        let q = base_from_alpha(a).unwrap();
        let n = 3 * a.period_len();
        let digits = q.quasi_greedy_digits(n).unwrap();
        assert_eq!(
            digits.digits(),
            a.prefix(n).digits(),
            "roundtrip failed for {a}"
        );
    }
    println!("ACCEPTANCE 02 parry_roundtrip ({} bases): PASS", corpus.len());
}

#[test]
fn criterion_03_greedy_entropy_is_ln_q() {
    // runtime budget: < 30 s
    let bases: Vec<(Digit, &str)> = vec![
        (1, "(1)"),
        (1, "(10)"),
        (1, "(110)"),
        (1, "(1110)"),
        (1, "(11010)"),
        (1, "(11110)"),
        (2, "(2)"),
        (2, "(21)"),
        (2, "(221)"),
        (2, "(211)"),
    ];
    assert_eq!(bases.len(), 10);
    for (m, s) in bases {
        let a = seq(s, m);
        let q = base_from_alpha(&a).unwrap();
        let (llo, lhi) = q.ln_interval();
        let aut = ShiftAutomaton::build(&a, ShiftKind::Greedy).unwrap();
        let e = aut.entropy();
        let mid = 0.5 * (e.h_ln.0 + e.h_ln.1);
        let lmid = 0.5 * (llo + lhi);
        assert!(
            (mid - lmid).abs() < 1e-6 + (lhi - llo) + (e.h_ln.1 - e.h_ln.0),
            "entropy {mid} vs ln q {lmid} for {s} (M={m})"
        );
    }
    println!("ACCEPTANCE 03 greedy_entropy_ln_q (10 bases): PASS");
}

#[test]
fn criterion_04_worked_examples() {
    // runtime budget: < 10 s
    let check = |m: Digit, s: &str, want: StrongType, last_fail: Option<usize>| {
        let a = seq(s, m);
        let sw = classify_strong_weak(&a, 64, None).unwrap();
        match sw {
            StrongWeak::Strong { ty, non_irreducible, .. } => {
                assert_eq!(ty, want, "{s} (M={m}) classed {ty:?}");
                assert_eq!(
                    non_irreducible.last().copied(),
                    last_fail,
                    "{s} (M={m}) non-irreducible {non_irreducible:?}"
                );
            }
            other => panic!("{s} (M={m}) not Strong: {other:?}"),
        }
    };
    // M = 1
    check(1, "(1110)", StrongType::Type1, None);
    check(1, "(11010)", StrongType::Type2, Some(6));
    // the n=6 approximant is (110100)^inf and the 4th approximant has n=7
    let ap = natural_approx_below(&seq("(11010)", 1), 4).unwrap();
    assert_eq!(ap.items[2].seq.to_string(), "(110100)");
    assert_eq!(ap.items[3].n, 7);
    // (1110010010): the witness approximant is (111001000)^inf, i.e. n = 9
    check(1, "(1110010010)", StrongType::Type3, Some(9));
    let bad = seq("(111001000)", 1);
    assert!(in_vhat(&bad));
    assert_eq!(is_irreducible(&bad, None).unwrap().state, TriState::No);
    // M = 2
    check(2, "(221)", StrongType::Type1, None);
    check(2, "(211211121111)", StrongType::Type2, Some(3));
    let ap2 = natural_approx_below(&seq("(211211121111)", 2), 4).unwrap();
    let witness = ap2.items.iter().find(|a| a.n == 3).unwrap();
    assert_eq!(witness.seq.to_string(), "(210)");
    check(2, "(22010101)", StrongType::Type3, Some(8));
    assert_eq!(
        is_irreducible(&seq("(22010100)", 2), None).unwrap().state,
        TriState::No
    );
    println!("ACCEPTANCE 04 worked_examples: PASS");
}

#[test]
fn criterion_05_specification_coupling() {
    // runtime budget: < 2 min
    let mut corpus: Vec<EpSeq> = Vec::new();
    for m in 1..=2 {
        let qg_alpha = constants(m).unwrap().alpha_qg;
        for a in periodic_vhat_corpus(m, 5, 40) {
            // coupling concerns bases strictly above q_G, where the shift is
            // nondegenerate; filter to the theorem's range
            if corpus.len() < 20
                && a.lex_cmp(&qg_alpha).unwrap() == Ordering::Greater
                && is_irreducible(&a, None).unwrap().state == TriState::Yes
            {
                corpus.push(a);
            }
        }
    }
    assert_eq!(corpus.len(), 20);
    for a in &corpus {
        let cert = matches!(
            spec_certificate(&a, 64, 64).unwrap(),
            SpecVerdict::Certificate { .. }
        );
        let aut = ShiftAutomaton::build(a, ShiftKind::Symmetric).unwrap();
        let values: Vec<SpecNumber> = (4..=10)
            .map(|n| aut.spec_number(n, 64, false).verdict)
            .collect();
        let stabilizes = matches!(values[0], SpecNumber::Value(_))
            && values.iter().all(|v| *v == values[0]);
        assert_eq!(
            cert, stabilizes,
            "{a}: certificate={cert} but spec numbers {values:?}"
        );
    }
    // the golden-ratio base has no specification at any connector length
    let aut = ShiftAutomaton::build(&seq("(10)", 1), ShiftKind::Symmetric).unwrap();
    for n in [2, 3, 5] {
        assert_eq!(
            aut.spec_number(n, 64, false).verdict,
            SpecNumber::NoneUpTo(64)
        );
    }
    println!("ACCEPTANCE 05 specification_coupling (20 bases): PASS");
}

#[test]
fn criterion_06_weak_spec_lower_bound() {
    // runtime budget: < 2 min
    let trace = construct_weak(&seq("(1110)", 1), &[2, 2], 2).unwrap();
    assert!(trace.all_verified());
    let step1_period = trace.steps[0].alpha.period_len();
    let alpha2 = &trace.steps[1].alpha;
    let aut = ShiftAutomaton::build(alpha2, ShiftKind::Symmetric).unwrap();
    let r = aut.spec_number(step1_period, 64, true);
    let ok = match r.verdict {
        SpecNumber::Value(k) => k > step1_period - 1,
        SpecNumber::NoneUpTo(c) => c > step1_period - 1,
    };
    assert!(
        ok,
        "s_n on {alpha2} is {:?}, not > {}",
        r.verdict,
        step1_period - 1
    );
    println!("ACCEPTANCE 06 weak_spec_lower_bound: PASS");
}

#[test]
fn criterion_07_plateau_endpoints() {
    // runtime budget: < 10 s
    // entropy-plateau equality holds on the theorem's range q_L > q_KL
    let iv = plateau_from_left(&seq("(1110)", 1)).unwrap();
    let hl = ShiftAutomaton::build(&iv.left, ShiftKind::Symmetric)
        .unwrap()
        .entropy()
        .h_ln;
    let hr = ShiftAutomaton::build(&iv.right, ShiftKind::Symmetric)
        .unwrap()
        .entropy()
        .h_ln;
    let (ml, mr) = (0.5 * (hl.0 + hl.1), 0.5 * (hr.0 + hr.1));
    assert!(
        (ml - mr).abs() < 1e-6,
        "(1110): entropy {ml} at left vs {mr} at right"
    );
    // for the golden-ratio base (below q_KL, outside the plateau theorem)
    // the endpoint formula still lands exactly on alpha(q_T)
    let iv = plateau_from_left(&seq("(10)", 1)).unwrap();
    let qt = constants(1).unwrap().alpha_qt;
    assert_eq!(iv.right.lex_cmp(&qt).unwrap(), Ordering::Equal);
    let hl = ShiftAutomaton::build(&iv.left, ShiftKind::Symmetric)
        .unwrap()
        .entropy()
        .h_ln;
    assert!(hl.1.abs() < 1e-9, "entropy at q_G must vanish");
    println!("ACCEPTANCE 07 plateau_endpoints: PASS");
}

#[test]
fn criterion_08_synchronization() {
    // runtime budget: < 1 min
    let alpha = seq("(1110)", 1);
    let aut = ShiftAutomaton::build(&alpha, ShiftKind::Symmetric).unwrap();
    let r = aut.find_sync_word(12);
    assert_eq!(r.method, SyncMethod::NonFactor);
    let w = r.word.unwrap();
    // (a) not a factor of alpha or its reflection
    let window: Vec<Digit> = (0..4 * alpha.period_len() + w.len())
        .map(|i| alpha.digit(i))
        .collect();
    let bar: Vec<Digit> = window.iter().map(|d| 1 - d).collect();
    let aw = Word::new(1, window).unwrap();
    let bw = Word::new(1, bar).unwrap();
    assert!(!aw.contains_factor(w.digits()) && !bw.contains_factor(w.digits()));
    // (b) collapses the presentation
    assert!(aut.collapses(&w));
    // independent brute-force intrinsic synchronization over |u|,|v| <= 6
    let mut checked = 0usize;
    for lu in 0..=6usize {
        for lv in 0..=6usize {
            for cu in 0..(1u32 << lu) {
                for cv in 0..(1u32 << lv) {
                    let u: Vec<Digit> = (0..lu).map(|i| (cu >> i) & 1).collect();
                    let v: Vec<Digit> = (0..lv).map(|i| (cv >> i) & 1).collect();
                    let mut uw = u.clone();
                    uw.extend(w.digits());
                    let mut wv = w.digits().to_vec();
                    wv.extend(&v);
                    let uw = Word::new(1, uw).unwrap();
                    let wv = Word::new(1, wv).unwrap();
                    if is_admissible(&uw, &alpha, ShiftKind::Symmetric).unwrap()
                        && is_admissible(&wv, &alpha, ShiftKind::Symmetric).unwrap()
                    {
                        let mut uwv = u.clone();
                        uwv.extend(w.digits());
                        uwv.extend(&v);
                        let uwv = Word::new(1, uwv).unwrap();
                        assert!(
                            is_admissible(&uwv, &alpha, ShiftKind::Symmetric).unwrap(),
                            "u={u:?} v={v:?}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
    println!("ACCEPTANCE 08 synchronization ({checked} joins): PASS");
}

#[test]
fn criterion_09_dense_orbit_construction() {
    // runtime budget: < 2 min
    let trace = construct_dense(&seq("(1110)", 1), &[2, 2], 2).unwrap();
    assert_eq!(trace.steps.len(), 2);
    for step in &trace.steps {
        for (name, ok) in &step.verified {
            assert!(ok, "step {} check {name} failed", step.index);
        }
    }
    // independent coverage check at step 2: every admissible word of
    // length <= 4 of the step-1 shift is a factor of the step-2 period
    let a1 = &trace.steps[0].alpha;
    let a2 = &trace.steps[1].alpha;
    let period2 = a2.prefix(a2.period_len() + 4);
    let aut1 = ShiftAutomaton::build(a1, ShiftKind::Symmetric).unwrap();
    for k in 1..=4 {
        for w in aut1.enumerate_bn(k) {
            assert!(period2.contains_factor(w.digits()), "missing factor {w}");
        }
    }
    println!("ACCEPTANCE 09 dense_orbit_construction: PASS");
}

#[test]
fn criterion_10_dimension() {
    // runtime budget: < 10 s
    // q = M + 1: the full shift has dimension 1
    let (lo, hi) = dimension_uq(&seq("(1)", 1)).unwrap();
    assert!(lo <= 1.0 + 1e-9 && hi >= 1.0 - 1e-9, "full shift: [{lo}, {hi}]");
    // q = q_G(1): dimension 0
    let (lo, hi) = dimension_uq(&seq("(10)", 1)).unwrap();
    assert!(lo.abs() < 1e-9 && hi.abs() < 1e-6, "golden: [{lo}, {hi}]");
    // strictly inside (0, 1)
    let (lo, hi) = dimension_uq(&seq("(1110)", 1)).unwrap();
    assert!(lo > 1e-3 && hi < 1.0 - 1e-3, "(1110): [{lo}, {hi}]");
    // exact value 1/2 at (M, N) = (1, 2)
    let b = in_dim_lower_bound(1, 2);
    assert_eq!(b.exact, Some(q_ratio(1, 2)));
    // nondecreasing in N
    let mut prev = f64::NEG_INFINITY;
    for n in 1..=20 {
        let b = in_dim_lower_bound(1, n);
        assert!(b.hi >= prev - 1e-12, "bound decreased at N={n}");
        prev = b.lo;
    }
    println!("ACCEPTANCE 10 dimension: PASS");
}

#[test]
fn criterion_11_invariant_suites() {
    // runtime budget: < 5 min
    let mut r = rng();

    // (a) reflection symmetry of B_n: 1000 word checks
    let mut cases = 0usize;
    while cases < 1000 {
        let m = r.gen_range(1..=2);
        let a = random_vhat(&mut r, m, 5);
        let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric).unwrap();
        let n = r.gen_range(1..=5);
        let bn: std::collections::HashSet<Vec<Digit>> = aut
            .enumerate_bn(n)
            .into_iter()
            .map(|w| w.into_digits())
            .collect();
        for w in &bn {
            let refl: Vec<Digit> = w.iter().map(|d| m - d).collect();
            assert!(bn.contains(&refl), "B_{n} of {a} not reflection-closed");
            cases += 1;
        }
    }

    // (b) automaton vs direct enumeration: 1000 (alpha, n) pairs
    for _ in 0..1000 {
        let m = r.gen_range(1..=2);
        let a = random_vhat(&mut r, m, 4);
        let bound = a.preperiod_len() + a.period_len() + 5;
        let n = r.gen_range(1..=bound.min(8));
        let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric).unwrap();
        let mut left: Vec<Vec<Digit>> = aut
            .enumerate_bn(n)
            .into_iter()
            .map(|w| w.into_digits())
            .collect();
        let mut right: Vec<Vec<Digit>> =
            enumerate_admissible(&a, ShiftKind::Symmetric, n, None)
                .unwrap()
                .into_iter()
                .map(|w| w.into_digits())
                .collect();
        left.sort();
        right.sort();
        assert_eq!(left, right, "B_{n} mismatch for {a}");
    }

    // (c) lex order and ultrametric: 1000 random triples
    for _ in 0..1000 {
        let m = r.gen_range(1..=2);
        let x = random_vhat(&mut r, m, 6);
        let y = random_vhat(&mut r, m, 6);
        let z = random_vhat(&mut r, m, 6);
        // antisymmetry / consistency
        let xy = x.lex_cmp(&y).unwrap();
        assert_eq!(xy.reverse(), y.lex_cmp(&x).unwrap());
        assert_eq!(xy == Ordering::Equal, x.to_string() == y.to_string());
        // reflection reverses the order
        assert_eq!(x.reflect().lex_cmp(&y.reflect()).unwrap(), xy.reverse());
        // ultrametric inequality d(x,z) <= max(d(x,y), d(y,z))
        let d = |a: &EpSeq, b: &EpSeq| -> f64 {
            cylinder_distance(a, b)
                .unwrap()
                .map_or(0.0, |j| 0.5f64.powi(j.min(1000) as i32))
        };
        assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)) + f64::EPSILON);
    }

    // (d) monotonicity of the base map: alpha < alpha' implies q < q'
    for _ in 0..1000 {
        let m = r.gen_range(1..=2);
        let x = random_vhat(&mut r, m, 5);
        let y = random_vhat(&mut r, m, 5);
        let cmp = x.lex_cmp(&y).unwrap();
        if cmp == Ordering::Equal {
            continue;
        }
        let qx = base_from_alpha(&x).unwrap();
        let qy = base_from_alpha(&y).unwrap();
        assert_eq!(qx.cmp_base(&qy), cmp, "base map not monotone: {x} vs {y}");
    }

    println!("ACCEPTANCE 11 invariant_suites: PASS");
}
