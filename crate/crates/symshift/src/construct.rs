//! Generative procedures: primitive words, reflection recurrence, extended
//! words, the delta/theta dense-orbit words, and the four iterative base
//! constructions (strong, weak, dense-orbit, strong-without-specification).

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{
    constants, is_fundamental, is_irreducible, ClassifyError, TriState,
};
use crate::expansion::in_vhat;
use crate::shiftlang::{is_admissible, ShiftAutomaton, ShiftError, ShiftKind};
use crate::words::{Digit, EpSeq, Word, WordError};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("word is not primitive")]
    NotPrimitive,
    #[error("word is not admissible")]
    NotAdmissible,
    #[error("alpha is below the transitive base")]
    BelowTransitiveBase,
    #[error("alpha is not periodic")]
    NotPeriodic,
    #[error("alpha is not irreducible")]
    NotIrreducible,
    #[error("connector search exhausted (budget {0})")]
    ConnectorSearchExhausted(usize),
    #[error("no fundamental prefix in {{{lo}, .., {hi}}}")]
    NoFundamentalPrefixInRange { lo: usize, hi: usize },
    #[error("internal scan failed: {0}")]
    Internal(String),
}

/// Primitive words: reflect(w_1..w_{n-i}) < w_{i+1}..w_n <= w_1..w_{n-i}
/// for every 0 <= i <= n-1.
pub fn is_primitive(w: &Word) -> bool {
    let n = w.len();
    let d = w.digits();
    let m = w.alphabet();
    for i in 0..n {
        let suf = &d[i..];
        let pre = &d[..n - i];
        if suf > pre {
            return false;
        }
        let refl: Vec<Digit> = pre.iter().map(|&x| m - x).collect();
        if suf <= &refl[..] {
            return false;
        }
    }
    true
}

/// Reflection recurrence word R(w) = w_1..w_s with
/// s = min{s : (w_{s+1}..w_n)^- = reflect(w_1..w_{n-s})}.
pub fn reflection_recurrence(w: &Word) -> Result<Word, ConstructError> {
    if !is_primitive(w) {
        return Err(ConstructError::NotPrimitive);
    }
    let n = w.len();
    for s in 0..n {
        let suf = w.suffix_from(s).minus()?;
        let refl = w.prefix(n - s).reflect();
        if suf.digits() == refl.digits() {
            return Ok(w.prefix(s));
        }
    }
    Err(ConstructError::Internal(
        "no reflection recurrence index (word not primitive?)".into(),
    ))
}

/// Iterated reflection recurrence R^n.
pub fn reflection_recurrence_iter(w: &Word, n: usize) -> Result<Word, ConstructError> {
    let mut cur = reflection_recurrence(w)?;
    for _ in 1..n {
        if cur.is_empty() {
            break;
        }
        cur = reflection_recurrence(&cur)?;
    }
    Ok(cur)
}

/// Does the weak self-sandwich hold: every proper suffix lies between the
/// reflection of the equal-length prefix and the prefix itself? This is the
/// invariant preserved while assembling delta; it is implied by both the
/// primitive and the fundamental property.
fn self_sandwiched(d: &[Digit], m: Digit) -> bool {
    let n = d.len();
    for i in 1..n {
        let suf = &d[i..];
        let pre = &d[..n - i];
        if suf > pre {
            return false;
        }
        let refl: Vec<Digit> = pre.iter().map(|&x| m - x).collect();
        if suf < &refl[..] {
            return false;
        }
    }
    true
}

/// Suffix extension (case analysis on the minimal full-match indices):
/// returns eta such that upsilon.eta is admissible and alpha_1..alpha_m or
/// its reflection is a suffix of upsilon.eta.
pub fn suffix_extend(upsilon: &Word, alpha: &EpSeq, m: usize) -> Result<Word, ConstructError> {
    if !is_admissible(upsilon, alpha, ShiftKind::Symmetric)? {
        return Err(ConstructError::NotAdmissible);
    }
    let n = upsilon.len();
    if m <= n {
        return Err(ConstructError::Internal("suffix_extend requires m > |upsilon|".into()));
    }
    let u = upsilon.digits();
    let bar = alpha.reflect();
    let mut s_plus = None;
    let mut s_minus = None;
    for s in 0..n {
        let suf = &u[s..];
        if s_plus.is_none() && (0..suf.len()).all(|i| suf[i] == alpha.digit(i)) {
            s_plus = Some(s);
        }
        if s_minus.is_none() && (0..suf.len()).all(|i| suf[i] == bar.digit(i)) {
            s_minus = Some(s);
        }
    }
    let ab = alpha.alphabet();
    let eta = match (s_plus, s_minus) {
        (None, None) => alpha.prefix(m),
        (Some(sp), sm) if sm.is_none() || sp <= sm.unwrap() => {
            // continue along alpha: the suffix becomes alpha_1..alpha_m
            let from = n - sp;
            Word::new(ab, (from..m).map(|i| alpha.digit(i)).collect())?
        }
        (_, Some(sm)) => {
            let from = n - sm;
            Word::new(ab, (from..m).map(|i| bar.digit(i)).collect())?
        }
        _ => unreachable!(),
    };
    let joined = upsilon.concat(&eta)?;
    debug_assert!(is_admissible(&joined, alpha, ShiftKind::Symmetric)?);
    Ok(eta)
}

/// The q_G periodicity block for the alphabet: k (M = 2k) or (k+1)k (M = 2k+1).
pub fn golden_block(m: Digit) -> Vec<Digit> {
    let k = m / 2;
    if m % 2 == 0 {
        vec![k]
    } else {
        vec![k + 1, k]
    }
}

/// Prefix extension: eta with eta.nu admissible and `reps` copies of the
/// q_G block as a prefix of eta.nu. Requires alpha >= alpha(q_T).
pub fn prefix_extend(
    nu: &Word,
    alpha: &EpSeq,
    reps: usize,
) -> Result<Word, ConstructError> {
    let m = alpha.alphabet();
    let qt = constants(m)?.alpha_qt;
    if alpha.lex_cmp(&qt)? == Ordering::Less {
        return Err(ConstructError::BelowTransitiveBase);
    }
    if !is_admissible(nu, alpha, ShiftKind::Symmetric)? {
        return Err(ConstructError::NotAdmissible);
    }
    let mut target = Vec::new();
    for _ in 0..reps {
        target.extend(golden_block(m));
    }
    let aut = ShiftAutomaton::build(alpha, ShiftKind::Symmetric)?;
    // case 1: eta is a prefix of the target block and nu completes it
    for l in 0..=target.len() {
        let head = &target[..l];
        let rest = &target[l..];
        if nu.len() < rest.len() || nu.digits()[..rest.len()] != *rest {
            continue;
        }
        let mut cand = head.to_vec();
        cand.extend(nu.digits());
        let w = Word::new(m, cand)?;
        if aut.in_language(&w) {
            return Ok(Word::new(m, head.to_vec())?);
        }
    }
    // case 2: eta = target ++ zeta; shortest zeta by BFS to a state from
    // which nu stays readable with a live end
    let good: Vec<bool> = (0..aut.state_count() as u32)
        .map(|s| {
            aut.read(s, nu.digits())
                .map_or(false, |e| aut.is_live(e))
        })
        .collect();
    let start = aut
        .read(aut.start(), &target)
        .ok_or(ConstructError::NotAdmissible)?;
    let mut prev: Vec<Option<(u32, Digit)>> = vec![None; aut.state_count()];
    let mut seen = vec![false; aut.state_count()];
    let mut queue = std::collections::VecDeque::new();
    seen[start as usize] = true;
    queue.push_back(start);
    let mut hit = if good[start as usize] { Some(start) } else { None };
    while hit.is_none() {
        let Some(s) = queue.pop_front() else { break };
        for d in 0..=m {
            if let Some(t) = aut.step(s, d) {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    prev[t as usize] = Some((s, d));
                    if good[t as usize] {
                        hit = Some(t);
                        break;
                    }
                    queue.push_back(t);
                }
            }
        }
    }
    let Some(mut at) = hit else {
        return Err(ConstructError::NotAdmissible);
    };
    let mut zeta = Vec::new();
    while at != start {
        let (p, d) = prev[at as usize].unwrap();
        zeta.push(d);
        at = p;
    }
    zeta.reverse();
    let mut eta = target;
    eta.extend(zeta);
    Ok(Word::new(m, eta)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaThetaChecks {
    /// every word of B_1 .. B_block is a factor of theta
    pub factor_coverage: bool,
    pub fundamental: bool,
    /// (theta)^inf < alpha
    pub below_alpha: bool,
    pub theta_irreducible: bool,
}

#[derive(Debug, Clone)]
pub struct DeltaTheta {
    pub delta: Word,
    pub theta: Word,
    pub block_len: usize,
    pub checks: DeltaThetaChecks,
}

/// Assemble delta = w'_1 v_1 w'_2 v_2 ... w'_last over B_block in decreasing
/// order and theta = delta . reflect(alpha_1). The connectors v_i are found
/// by bounded search keeping the running word admissible and self-sandwiched.
/// The four dense-generator properties are verified and reported, not
/// assumed: degenerate bases (such as alpha(q_G)) legitimately fail some.
pub fn build_delta_theta(alpha: &EpSeq, t: usize) -> Result<DeltaTheta, ConstructError> {
    let block = alpha.period_len();
    build_delta_theta_capped(alpha, t, block)
}

/// As `build_delta_theta` but covering words only up to length `cap`
/// (needed when chaining: periods grow too fast for full-period coverage).
pub fn build_delta_theta_capped(
    alpha: &EpSeq,
    t: usize,
    cap: usize,
) -> Result<DeltaTheta, ConstructError> {
    if !alpha.is_periodic() {
        return Err(ConstructError::NotPeriodic);
    }
    if t < 2 {
        return Err(ConstructError::Internal("exponent t must be at least 2".into()));
    }
    let irr = is_irreducible(alpha, None)?;
    if irr.state == TriState::No {
        return Err(ConstructError::NotIrreducible);
    }
    let m = alpha.alphabet();
    let blen = cap.min(alpha.period_len());
    let aut = ShiftAutomaton::build(alpha, ShiftKind::Symmetric)?;
    let mut bm = aut.enumerate_bn(blen);
    bm.sort_by(|a, b| b.digits().cmp(a.digits())); // decreasing
    let budget = 4 * blen * bm.len();
    // w'_1 = block^t: always the full period, so that (theta)^inf drops
    // strictly below alpha after the repeated blocks
    let mut delta: Vec<Digit> = alpha.prefix(t * alpha.period_len()).into_digits();
    let last = bm.len() - 1;
    for (i, w) in bm.iter().enumerate().skip(1) {
        let target = if i == last {
            // the minimal word is appended bare
            w.clone()
        } else {
            extended_word(w, alpha, &aut, blen)?
        };
        let v = find_connector(&delta, &target, &aut, m, budget)?;
        delta.extend(v.digits());
        delta.extend(target.digits());
    }
    let theta_digits = {
        let mut d = delta.clone();
        d.push(m - alpha.digit(0));
        d
    };
    let delta = Word::new(m, delta)?;
    let theta = Word::new(m, theta_digits)?;
    // verification
    let mut coverage = true;
    'outer: for k in 1..=blen {
        for w in aut.enumerate_bn(k) {
            if !theta.contains_factor(w.digits()) {
                coverage = false;
                break 'outer;
            }
        }
    }
    let fundamental = theta.len() > 2 && is_fundamental(&theta).unwrap_or(false);
    let theta_inf = EpSeq::periodic(m, theta.digits().to_vec())?;
    let below_alpha = theta_inf.lex_cmp(alpha)? == Ordering::Less;
    let theta_irreducible = in_vhat(&theta_inf)
        && matches!(is_irreducible(&theta_inf, None)?.state, TriState::Yes);
    Ok(DeltaTheta {
        delta,
        theta,
        block_len: blen,
        checks: DeltaThetaChecks { factor_coverage: coverage, fundamental, below_alpha, theta_irreducible },
    })
}

/// Extended word of w: eta w gamma with the q_G block as prefix and the
/// alpha block as suffix, admissible throughout.
fn extended_word(
    w: &Word,
    alpha: &EpSeq,
    aut: &ShiftAutomaton,
    blen: usize,
) -> Result<Word, ConstructError> {
    let m = alpha.alphabet();
    let eta = prefix_extend(w, alpha, 1)?;
    let head = eta.concat(w)?;
    // gamma = zeta ++ alpha-block, with zeta the shortest bridge found on
    // the automaton
    let block: Vec<Digit> = (0..blen).map(|i| alpha.digit(i)).collect();
    let s = aut
        .read(aut.start(), head.digits())
        .ok_or(ConstructError::NotAdmissible)?;
    // BFS over states for shortest zeta with zeta ++ block readable and live
    let good: Vec<bool> = (0..aut.state_count() as u32)
        .map(|st| aut.read(st, &block).map_or(false, |e| aut.is_live(e)))
        .collect();
    let mut prev: Vec<Option<(u32, Digit)>> = vec![None; aut.state_count()];
    let mut seen = vec![false; aut.state_count()];
    let mut queue = std::collections::VecDeque::new();
    seen[s as usize] = true;
    queue.push_back(s);
    let mut hit = if good[s as usize] { Some(s) } else { None };
    while hit.is_none() {
        let Some(cur) = queue.pop_front() else { break };
        for d in 0..=m {
            if let Some(nxt) = aut.step(cur, d) {
                if !seen[nxt as usize] {
                    seen[nxt as usize] = true;
                    prev[nxt as usize] = Some((cur, d));
                    if good[nxt as usize] {
                        hit = Some(nxt);
                        break;
                    }
                    queue.push_back(nxt);
                }
            }
        }
    }
    let Some(mut at) = hit else {
        return Err(ConstructError::NotAdmissible);
    };
    let mut zeta = Vec::new();
    while at != s {
        let (p, d) = prev[at as usize].unwrap();
        zeta.push(d);
        at = p;
    }
    zeta.reverse();
    let mut out = head.into_digits();
    out.extend(zeta);
    out.extend(block);
    Ok(Word::new(m, out)?)
}

/// Shortest connector v (by length, then lexicographic) keeping
/// `running ++ v ++ target` admissible and self-sandwiched.
fn find_connector(
    running: &[Digit],
    target: &Word,
    aut: &ShiftAutomaton,
    m: Digit,
    budget: usize,
) -> Result<Word, ConstructError> {
    let mut tried = 0usize;
    let max_len = 3 * target.len() + 8;
    let mut stack: Vec<Vec<Digit>> = vec![Vec::new()];
    // iterative deepening keeps the order shortest-first
    for len in 0..=max_len {
        stack.clear();
        stack.push(Vec::new());
        let found = try_connectors(running, target, aut, m, len, &mut Vec::new(), &mut tried, budget)?;
        if let Some(v) = found {
            return Ok(Word::new(m, v)?);
        }
        if tried > budget {
            return Err(ConstructError::ConnectorSearchExhausted(budget));
        }
    }
    Err(ConstructError::ConnectorSearchExhausted(budget))
}

fn try_connectors(
    running: &[Digit],
    target: &Word,
    aut: &ShiftAutomaton,
    m: Digit,
    len: usize,
    cur: &mut Vec<Digit>,
    tried: &mut usize,
    budget: usize,
) -> Result<Option<Vec<Digit>>, ConstructError> {
    if cur.len() == len {
        *tried += 1;
        if *tried > budget {
            return Ok(None);
        }
        let mut full = running.to_vec();
        full.extend(cur.iter());
        full.extend(target.digits());
        let w = Word::new(m, full.clone())?;
        if aut.in_language(&w) && self_sandwiched(&full, m) {
            return Ok(Some(cur.clone()));
        }
        return Ok(None);
    }
    for d in 0..=m {
        cur.push(d);
        let r = try_connectors(running, target, aut, m, len, cur, tried, budget)?;
        cur.pop();
        if r.is_some() || *tried > budget {
            return Ok(r);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TargetClass {
    StrongIrreducible,
    WeakIrreducible,
    DenseOrbit,
    StrongNoSpec,
}

#[derive(Debug, Clone)]
pub struct TraceStep {
    pub index: usize,
    /// the chosen parameter (m_n, N_n, or t_n)
    pub parameter: usize,
    pub alpha: EpSeq,
    /// named predicate checks performed at this step
    pub verified: Vec<(String, bool)>,
}

#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub target: TargetClass,
    pub seed: EpSeq,
    pub steps: Vec<TraceStep>,
    /// longest common prefix of the last two intermediates
    pub limit_prefix: Word,
}

impl ConstructionTrace {
    pub fn all_verified(&self) -> bool {
        self.steps.iter().all(|s| s.verified.iter().all(|(_, ok)| *ok))
    }

    fn finish(target: TargetClass, seed: EpSeq, steps: Vec<TraceStep>) -> ConstructionTrace {
        let limit_prefix = match steps.len() {
            0 => seed.prefix(seed.period_len()),
            1 => common_prefix(&seed, &steps[0].alpha),
            n => common_prefix(&steps[n - 2].alpha, &steps[n - 1].alpha),
        };
        ConstructionTrace { target, seed, steps, limit_prefix }
    }
}

fn common_prefix(a: &EpSeq, b: &EpSeq) -> Word {
    let bound = a.preperiod_len() + a.period_len() + b.preperiod_len() + b.period_len();
    let mut n = 0;
    while n < 4 * bound && a.digit(n) == b.digit(n) {
        n += 1;
    }
    a.prefix(n)
}

fn require_periodic_irreducible(seed: &EpSeq) -> Result<(), ConstructError> {
    if !seed.is_periodic() {
        return Err(ConstructError::NotPeriodic);
    }
    if is_irreducible(seed, None)?.state != TriState::Yes {
        return Err(ConstructError::NotIrreducible);
    }
    Ok(())
}

/// Right endpoint of the plateau generated by a periodic alpha:
/// alpha_1..alpha_m^+ (reflect(alpha_1..alpha_m))^inf. (Local version
/// without base enclosures.)
fn plateau_right(alpha: &EpSeq) -> Result<EpSeq, ConstructError> {
    let block = alpha.prefix(alpha.period_len());
    Ok(EpSeq::new(
        alpha.alphabet(),
        block.plus()?.into_digits(),
        block.reflect().into_digits(),
    )?)
}

fn fundamental_prefix_in(
    p: &EpSeq,
    lo: usize,
    hi: usize,
    take_largest: bool,
) -> Result<usize, ConstructError> {
    let mut found = None;
    for l in lo..=hi {
        if is_fundamental(&p.prefix(l)).unwrap_or(false) {
            found = Some(l);
            if !take_largest {
                break;
            }
        }
    }
    found.ok_or(ConstructError::NoFundamentalPrefixInRange { lo, hi })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chooser {
    SmallestValid,
    LargestValid,
}

/// Iterate plateau right endpoints with fundamental prefixes of length
/// m_{n+1} in {m_n + 1, .., 2 m_n}: lex-increasing chain of irreducible
/// periodic sequences.
pub fn construct_strong(
    seed: &EpSeq,
    steps: usize,
    chooser: Chooser,
) -> Result<ConstructionTrace, ConstructError> {
    require_periodic_irreducible(seed)?;
    let mut cur = seed.clone();
    let mut out = Vec::new();
    for n in 1..=steps {
        let p = plateau_right(&cur)?;
        let m_n = cur.period_len();
        let l = fundamental_prefix_in(&p, m_n + 1, 2 * m_n, chooser == Chooser::LargestValid)?;
        let next = EpSeq::periodic(seed.alphabet(), p.prefix(l).into_digits())?;
        let mut verified = Vec::new();
        verified.push(("in_vhat".into(), in_vhat(&next)));
        verified.push((
            "irreducible".into(),
            is_irreducible(&next, None)?.state == TriState::Yes,
        ));
        verified.push((
            "lex_increases".into(),
            next.lex_cmp(&cur)? == Ordering::Greater,
        ));
        verified.push(("fundamental_prefix".into(), is_fundamental(&next.prefix(l))?));
        out.push(TraceStep { index: n, parameter: l, alpha: next.clone(), verified });
        cur = next;
    }
    Ok(ConstructionTrace::finish(TargetClass::StrongIrreducible, seed.clone(), out))
}

/// Weak construction: fundamental prefixes of length m_{n+1} in
/// {(N_n+1) m_n, .., (N_n+2) m_n}, accumulating non-irreducible
/// approximant witnesses step by step.
pub fn construct_weak(
    seed: &EpSeq,
    n_schedule: &[usize],
    steps: usize,
) -> Result<ConstructionTrace, ConstructError> {
    require_periodic_irreducible(seed)?;
    if n_schedule.len() < steps || n_schedule.iter().any(|&n| n == 0) {
        return Err(ConstructError::Internal("N schedule too short or has zeros".into()));
    }
    let mut cur = seed.clone();
    let mut out = Vec::new();
    let mut required = 0usize;
    for n in 1..=steps {
        let big_n = n_schedule[n - 1];
        let p = plateau_right(&cur)?;
        let m_n = cur.period_len();
        let l = fundamental_prefix_in(&p, (big_n + 1) * m_n, (big_n + 2) * m_n, false)?;
        let next = EpSeq::periodic(seed.alphabet(), p.prefix(l).into_digits())?;
        required += big_n;
        let witnesses = weak_witness_indices(&next)?;
        let mut verified = Vec::new();
        verified.push(("in_vhat".into(), in_vhat(&next)));
        verified.push((
            "irreducible".into(),
            is_irreducible(&next, None)?.state == TriState::Yes,
        ));
        verified.push((
            "lex_increases".into(),
            next.lex_cmp(&cur)? == Ordering::Greater,
        ));
        verified.push((
            format!("weak_witnesses>={}", required),
            witnesses.len() >= required,
        ));
        out.push(TraceStep { index: n, parameter: l, alpha: next.clone(), verified });
        cur = next;
    }
    Ok(ConstructionTrace::finish(TargetClass::WeakIrreducible, seed.clone(), out))
}

/// Indices i within one period whose decremented periodization is in V-hat
/// but fails irreducibility: the weak-approximant witnesses.
pub fn weak_witness_indices(alpha: &EpSeq) -> Result<Vec<usize>, ConstructError> {
    let mut out = Vec::new();
    let bound = alpha.preperiod_len() + alpha.period_len();
    for i in 1..=bound {
        if alpha.digit(i - 1) == 0 {
            continue;
        }
        let dec = alpha.prefix(i).minus()?;
        let cand = EpSeq::periodic(alpha.alphabet(), dec.into_digits())?;
        if in_vhat(&cand) && is_irreducible(&cand, None)?.state == TriState::No {
            out.push(i);
        }
    }
    Ok(out)
}

/// Dense-orbit construction: alpha(q_{n+1}) = (theta(q_n, t_n))^inf, a
/// strictly decreasing chain bounded below by alpha(q_T). Factor coverage is
/// verified at the seed's scale: periods grow multiplicatively, so the
/// covered word length is capped at the seed period throughout the chain.
pub fn construct_dense(
    seed: &EpSeq,
    t_schedule: &[usize],
    steps: usize,
) -> Result<ConstructionTrace, ConstructError> {
    require_periodic_irreducible(seed)?;
    if t_schedule.len() < steps || t_schedule.iter().any(|&t| t < 2) {
        return Err(ConstructError::Internal("t schedule too short or below 2".into()));
    }
    let cap = seed.period_len();
    let qt_alpha = constants(seed.alphabet())?.alpha_qt;
    let mut cur = seed.clone();
    let mut out = Vec::new();
    for n in 1..=steps {
        let t = t_schedule[n - 1];
        let dt = build_delta_theta_capped(&cur, t, cap)?;
        let next = EpSeq::periodic(seed.alphabet(), dt.theta.digits().to_vec())?;
        let mut verified = Vec::new();
        verified.push(("factor_coverage".into(), dt.checks.factor_coverage));
        verified.push(("theta_fundamental".into(), dt.checks.fundamental));
        verified.push(("below_alpha".into(), dt.checks.below_alpha));
        verified.push(("theta_irreducible".into(), dt.checks.theta_irreducible));
        verified.push((
            "lex_decreases".into(),
            next.lex_cmp(&cur)? == Ordering::Less,
        ));
        verified.push((
            "above_qT".into(),
            next.lex_cmp(&qt_alpha)? != Ordering::Less,
        ));
        out.push(TraceStep { index: n, parameter: t, alpha: next.clone(), verified });
        cur = next;
    }
    Ok(ConstructionTrace::finish(TargetClass::DenseOrbit, seed.clone(), out))
}

/// Strong-without-specification: maximal fundamental prefixes, so the shift
/// of the new alpha by the old period hugs the reflection:
/// d(sigma^{m_n}(alpha_{n+1}), reflect(alpha_{n+1})) <= 2^{-m_n}.
pub fn construct_strong_nospec(
    seed: &EpSeq,
    steps: usize,
) -> Result<ConstructionTrace, ConstructError> {
    require_periodic_irreducible(seed)?;
    let mut cur = seed.clone();
    let mut out = Vec::new();
    for n in 1..=steps {
        let p = plateau_right(&cur)?;
        let m_n = cur.period_len();
        let l = fundamental_prefix_in(&p, m_n + 1, 2 * m_n, true)?;
        let next = EpSeq::periodic(seed.alphabet(), p.prefix(l).into_digits())?;
        let close = match crate::words::cylinder_distance(&next.shift(m_n), &next.reflect())? {
            None => true,
            Some(j) => j as usize >= m_n,
        };
        let mut verified = Vec::new();
        verified.push(("in_vhat".into(), in_vhat(&next)));
        verified.push((
            "irreducible".into(),
            is_irreducible(&next, None)?.state == TriState::Yes,
        ));
        verified.push((
            "lex_increases".into(),
            next.lex_cmp(&cur)? == Ordering::Greater,
        ));
        verified.push((format!("d(sigma^{}, reflect)<=2^-{}", m_n, m_n), close));
        out.push(TraceStep { index: n, parameter: l, alpha: next.clone(), verified });
        cur = next;
    }
    Ok(ConstructionTrace::finish(TargetClass::StrongNoSpec, seed.clone(), out))
}
