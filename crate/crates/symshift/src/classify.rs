//! Predicates and constants on quasi-greedy sequences: membership in the
//! symmetric classes, the distinguished bases q_G / q_KL / q_T,
//! irreducibility, natural approximations, strong/weak types, specification
//! certificates, plateaus and dimension.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::expansion::{base_from_alpha, in_vhat, AlgebraicBase, ExpansionError};
use crate::poly::{q_ratio, q_to_f64, Q};
use crate::shiftlang::{ShiftAutomaton, ShiftError, ShiftKind};
use crate::words::{thue_morse, Digit, EpSeq, Word, WordError};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("sequence is not in V-hat")]
    NotInVhat,
    #[error("sequence is not irreducible (witness j = {0:?})")]
    NotIrreducible(Option<usize>),
    #[error("sequence is not periodic")]
    NotPeriodic,
    #[error("word too short (need length > 2)")]
    TooShort,
    #[error("prefix too short (need at least {0} digits)")]
    PrefixTooShort(usize),
    #[error("sequence is outside the *-irreducibility range")]
    OutOfStarRange,
    #[error("base is below the generalized golden ratio")]
    BelowGoldenRatio,
    #[error("scan bound exhausted while {0}")]
    ScanExhausted(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriState {
    Yes,
    No,
    UnknownUpTo(usize),
}

impl TriState {
    pub fn is_yes(&self) -> bool {
        matches!(self, TriState::Yes)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Witnessed {
    pub state: TriState,
    /// index j that violates the defining comparison, when state = No
    pub witness: Option<usize>,
}

fn ordering_tri(cond: bool) -> TriState {
    if cond {
        TriState::Yes
    } else {
        TriState::No
    }
}

/// Exact membership in V-hat for eventually periodic sequences.
pub fn is_in_vhat(alpha: &EpSeq) -> TriState {
    ordering_tri(in_vhat(alpha))
}

/// Exact membership in U: strict inequalities for every shift n >= 1, with
/// the convention that M^inf (q = M+1) belongs to U.
pub fn is_in_u(alpha: &EpSeq) -> TriState {
    let m = alpha.alphabet();
    let top = EpSeq::periodic(m, vec![m]).unwrap();
    if alpha.lex_cmp(&top).unwrap() == Ordering::Equal {
        return TriState::Yes;
    }
    let bar = alpha.reflect();
    let bound = alpha.preperiod_len() + alpha.period_len();
    for n in 1..=bound {
        let s = alpha.shift(n);
        if s.lex_cmp(alpha).unwrap() != Ordering::Less
            || s.lex_cmp(&bar).unwrap() != Ordering::Greater
        {
            return TriState::No;
        }
    }
    TriState::Yes
}

/// Exact membership in closure(U): `reflect(alpha) < sigma^n(alpha) <= alpha`
/// for every n >= 0.
pub fn is_in_closure_u(alpha: &EpSeq) -> TriState {
    let bar = alpha.reflect();
    let bound = alpha.preperiod_len() + alpha.period_len();
    for n in 0..=bound {
        let s = alpha.shift(n);
        if s.lex_cmp(alpha).unwrap() == Ordering::Greater
            || s.lex_cmp(&bar).unwrap() != Ordering::Greater
        {
            return TriState::No;
        }
    }
    TriState::Yes
}

/// The distinguished bases of alphabet {0..M}.
pub struct Constants {
    pub m: Digit,
    pub q_g: AlgebraicBase,
    pub alpha_qg: EpSeq,
    pub q_t: AlgebraicBase,
    pub alpha_qt: EpSeq,
}

pub fn constants(m: Digit) -> Result<Constants, ClassifyError> {
    let k = m / 2;
    let (alpha_qg, alpha_qt) = if m % 2 == 0 {
        // M = 2k: alpha(q_G) = k^inf, alpha(q_T) = (k+1) k^inf
        (
            EpSeq::periodic(m, vec![k])?,
            EpSeq::new(m, vec![k + 1], vec![k])?,
        )
    } else {
        // M = 2k+1: alpha(q_G) = ((k+1)k)^inf, alpha(q_T) = (k+1)((k+1)k)^inf
        (
            EpSeq::periodic(m, vec![k + 1, k])?,
            EpSeq::new(m, vec![k + 1], vec![k + 1, k])?,
        )
    };
    let q_g = if m % 2 == 0 {
        AlgebraicBase::from_rational(m, q_ratio((k + 1) as i64, 1))?
    } else {
        base_from_alpha(&alpha_qg)?
    };
    let q_t = base_from_alpha(&alpha_qt)?;
    Ok(Constants { m, q_g, alpha_qg, q_t, alpha_qt })
}

/// Digits of alpha(q_KL), the Komornik–Loreti base, from the Thue–Morse
/// parity sequence.
pub fn kl_digits(m: Digit, n: usize) -> Vec<Digit> {
    let tau = thue_morse(n); // tau_1 .. tau_n
    let k = m / 2;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let t = tau[i - 1];
        if m % 2 == 0 {
            let prev = if i == 1 { 0 } else { tau[i - 2] };
            out.push(k + t - prev); // k-1, k, or k+1; k >= 1 when M even
        } else {
            out.push(k + t);
        }
    }
    out
}

/// Simplest rational strictly inside the open interval (Stern–Brocot walk).
/// Keeps bisection pivots at the smallest possible denominators, which is
/// what makes exact digit comparison against them cheap.
fn simplest_between(lo: &Q, hi: &Q) -> Q {
    assert!(lo < hi);
    let a = lo.floor();
    let next = a.clone() + Q::one();
    if &next < hi {
        return next;
    }
    if lo == &a {
        // interval (a, hi) with hi <= a+1: a + 1/ceil-step
        let inv = (hi - &a).recip();
        let y = inv.floor() + Q::one();
        return a + y.recip();
    }
    let y = simplest_between(&(hi - &a).recip(), &(lo - &a).recip());
    a + y.recip()
}

/// Rational enclosure of q_KL(M) by bisection: the quasi-greedy expansion is
/// strictly increasing in the base, so lexicographic comparison of digit
/// prefixes against the Thue–Morse digits decides each side exactly.
pub fn q_kl_enclosure(m: Digit, rounds: usize) -> Result<(Q, Q), ClassifyError> {
    let mut lo = q_ratio(1, 1) + q_ratio(1, 1000);
    let mut hi = q_ratio(m as i64 + 1, 1);
    for _ in 0..rounds {
        let mid = simplest_between(&lo, &hi);
        let base = AlgebraicBase::from_rational(m, mid.clone())?;
        // compare incrementally: most pivots diverge within a few digits
        let mut verdict = Ordering::Equal;
        for depth in [16usize, 48, 96, 160] {
            let target = kl_digits(m, depth);
            let got = base.quasi_greedy_digits(depth)?;
            verdict = got.digits().cmp(&target[..]);
            if verdict != Ordering::Equal {
                break;
            }
        }
        match verdict {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => break, // undecidable at this depth; keep bracket
        }
    }
    Ok((lo, hi))
}

fn default_horizon(alpha: &EpSeq) -> usize {
    (6 * (alpha.preperiod_len() + alpha.period_len())).max(64)
}

/// Tags per index j for the irreducibility scan: whether j is a candidate
/// (alpha_j > 0 and the decremented periodization is in V-hat), and whether
/// the candidate passed the strict comparison. `None` in the result means a
/// failed candidate (witness).
fn irreducibility_tags(
    alpha: &EpSeq,
    from: usize,
    to: usize,
) -> Result<Result<Vec<bool>, usize>, ClassifyError> {
    let mut tags = Vec::with_capacity(to + 1 - from);
    for j in from..=to {
        if alpha.digit(j - 1) == 0 {
            tags.push(false);
            continue;
        }
        let w = alpha.prefix(j);
        let dec = w.minus()?;
        let cand = EpSeq::periodic(alpha.alphabet(), dec.into_digits())?;
        if !in_vhat(&cand) {
            tags.push(false);
            continue;
        }
        // candidate: alpha_1..alpha_j (reflect(alpha_1..alpha_j)^+)^inf < alpha
        let tail = w.reflect().plus()?;
        let test = EpSeq::new(alpha.alphabet(), w.into_digits(), tail.into_digits())?;
        match test.lex_cmp(alpha)? {
            Ordering::Less => tags.push(true),
            _ => return Ok(Err(j)),
        }
    }
    Ok(Ok(tags))
}

/// Definition-2.7 irreducibility with an explicit horizon. `Yes` is reported
/// for exact input only when the candidate/pass pattern stabilizes into a
/// periodic pattern over the scanned tail (see the module notes); otherwise
/// the verdict stays UnknownUpTo.
pub fn is_irreducible(alpha: &EpSeq, horizon: Option<usize>) -> Result<Witnessed, ClassifyError> {
    if !in_vhat(alpha) {
        return Err(ClassifyError::NotInVhat);
    }
    let r = alpha.preperiod_len();
    let per = alpha.period_len();
    let h = horizon.unwrap_or_else(|| default_horizon(alpha)).max(r + 4 * per + 4);
    let tags = match irreducibility_tags(alpha, 1, h)? {
        Err(j) => {
            return Ok(Witnessed { state: TriState::No, witness: Some(j) });
        }
        Ok(t) => t,
    };
    // stabilization: beyond the preperiod plus two periods, the tag at j must
    // equal the tag one period earlier, across the whole scanned range
    let start = r + 2 * per + 1;
    let stable = (start..=h).all(|j| j <= per || tags[j - 1] == tags[j - 1 - per]);
    if stable {
        Ok(Witnessed { state: TriState::Yes, witness: None })
    } else {
        Ok(Witnessed { state: TriState::UnknownUpTo(h), witness: None })
    }
}

/// The xi(n) ladder bracketing for Definition 2.7(ii): xi(n) is the
/// truncation of the Komornik–Loreti digits at B(n) = 2^(n-1) (M even) or
/// 2^n (M odd), continued with the incremented reflection; xi(1) = alpha(q_T)
/// and xi(n) decreases to alpha(q_KL).
pub fn xi(m: Digit, n: usize) -> Result<EpSeq, ClassifyError> {
    let b = if m % 2 == 0 { 1usize << (n - 1) } else { 1usize << n };
    let head = Word::new(m, kl_digits(m, b))?;
    let tail = head.reflect().plus()?;
    Ok(EpSeq::new(m, head.into_digits(), tail.into_digits())?)
}

/// *-irreducibility: bracket alpha between consecutive xi's, then run the
/// irreducibility comparisons only for indices beyond the bracket cutoff.
pub fn is_star_irreducible(
    alpha: &EpSeq,
    horizon: Option<usize>,
) -> Result<Witnessed, ClassifyError> {
    if !in_vhat(alpha) {
        return Err(ClassifyError::NotInVhat);
    }
    let m = alpha.alphabet();
    if alpha.lex_cmp(&xi(m, 1)?)? != Ordering::Less {
        return Err(ClassifyError::OutOfStarRange);
    }
    // locate n with xi(n+1) <= alpha < xi(n); prefix lengths grow as 2^n so
    // cap the ladder depth
    let max_n = if m % 2 == 0 { 13 } else { 12 };
    let mut bracket = None;
    for n in 1..max_n {
        if alpha.lex_cmp(&xi(m, n + 1)?)? != Ordering::Less {
            bracket = Some(n);
            break;
        }
    }
    let Some(n) = bracket else {
        // below every xi scanned: at or below the Komornik–Loreti base
        return Err(ClassifyError::OutOfStarRange);
    };
    let cutoff = if m % 2 == 0 { 1usize << n } else { 1usize << (n + 1) };
    let r = alpha.preperiod_len();
    let per = alpha.period_len();
    let h = horizon
        .unwrap_or_else(|| default_horizon(alpha))
        .max(cutoff + 4 * per + 4);
    let tags = match irreducibility_tags(alpha, cutoff + 1, h)? {
        Err(j) => return Ok(Witnessed { state: TriState::No, witness: Some(j) }),
        Ok(t) => t,
    };
    let start = (cutoff + 1).max(r + 2 * per + 1);
    let stable = (start..=h).all(|j| {
        j <= cutoff + per || tags[j - cutoff - 1] == tags[j - cutoff - 1 - per]
    });
    if stable {
        Ok(Witnessed { state: TriState::Yes, witness: None })
    } else {
        Ok(Witnessed { state: TriState::UnknownUpTo(h), witness: None })
    }
}

#[derive(Debug, Clone)]
pub struct Approximant {
    /// the defining index n_m (prefix length whose decrement is periodized)
    pub n: usize,
    pub seq: EpSeq,
}

#[derive(Debug, Clone)]
pub struct ApproxBelow {
    pub items: Vec<Approximant>,
    /// true when the scan proved the list finite (alpha outside closure(U))
    /// and appended alpha itself per the convention
    pub terminated: bool,
}

/// Natural approximation from below: successive minimal n with alpha_n > 0
/// and (alpha_1..alpha_n^-)^inf in V-hat.
pub fn natural_approx_below(alpha: &EpSeq, count: usize) -> Result<ApproxBelow, ClassifyError> {
    if !in_vhat(alpha) {
        return Err(ClassifyError::NotInVhat);
    }
    let r = alpha.preperiod_len();
    let per = alpha.period_len();
    let bound = r + per * (2 * count + 8) + 64;
    let mut items = Vec::new();
    for n in 1..=bound {
        if items.len() >= count {
            break;
        }
        if alpha.digit(n - 1) == 0 {
            continue;
        }
        let dec = alpha.prefix(n).minus()?;
        let cand = EpSeq::periodic(alpha.alphabet(), dec.into_digits())?;
        if in_vhat(&cand) {
            items.push(Approximant { n, seq: cand });
        }
    }
    if is_in_closure_u(alpha) == TriState::No && items.len() < count {
        // finite list: the approximation terminates with alpha itself
        items.push(Approximant { n: 0, seq: alpha.clone() });
        return Ok(ApproxBelow { items, terminated: true });
    }
    Ok(ApproxBelow { items, terminated: false })
}

/// Fundamental words: reflect(w_1..w_{n-i}) <= w_{i+1}..w_n < w_1..w_{n-i}
/// for all 1 <= i <= n-1. Words of length <= 2 are rejected.
pub fn is_fundamental(w: &Word) -> Result<bool, ClassifyError> {
    let n = w.len();
    if n <= 2 {
        return Err(ClassifyError::TooShort);
    }
    for i in 1..n {
        let head = w.prefix(n - i);
        let tail = w.suffix_from(i);
        if tail.lex_cmp(&head.reflect())? == Ordering::Less
            || tail.lex_cmp(&head)? != Ordering::Less
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Natural approximation from above: strictly increasing fundamental-prefix
/// lengths per the constructive recursion; for periodic alpha outside U the
/// periodic convention m_j = m * j applies.
pub fn natural_approx_above(
    alpha: &EpSeq,
    count: usize,
) -> Result<Vec<(usize, EpSeq)>, ClassifyError> {
    if !in_vhat(alpha) {
        return Err(ClassifyError::NotInVhat);
    }
    if is_in_u(alpha) != TriState::Yes {
        if !alpha.is_periodic() {
            return Err(ClassifyError::NotInVhat);
        }
        let per = alpha.period_len();
        let step = if per == 1 { 1 } else { per };
        return Ok((1..=count).map(|j| (step * j, alpha.clone())).collect());
    }
    let m = alpha.alphabet();
    let bound = alpha.preperiod_len() + alpha.period_len() * (8 * count + 8) + 128;
    let a1 = alpha.digit(0);
    let mut out: Vec<(usize, EpSeq)> = Vec::new();
    // m_1: first index with a digit below alpha_1
    let mut prev = (1..=bound)
        .find(|&i| alpha.digit(i - 1) < a1)
        .ok_or_else(|| ClassifyError::ScanExhausted("approx-above first index".into()))?;
    let mut cur = EpSeq::periodic(m, alpha.prefix(prev).into_digits())?;
    out.push((prev, cur.clone()));
    while out.len() < count {
        let mut found = None;
        for l in prev + 1..=bound {
            // the alpha-prefix must still match the periodized previous word
            // up to l-1; past the first divergence no larger l qualifies
            if alpha.digit(l - 2) != cur.digit(l - 2) {
                break;
            }
            if alpha.digit(l - 1) >= a1 {
                continue;
            }
            let head = alpha.prefix(l - 1);
            if head.lex_cmp(&head.reflect())? != Ordering::Greater {
                continue;
            }
            let cd = cur.digit(l - 1);
            if alpha.digit(l - 1) < cd && alpha.digit(l - 1) >= m - cd {
                found = Some(l);
                break;
            }
        }
        let l = found
            .ok_or_else(|| ClassifyError::ScanExhausted("approx-above recursion".into()))?;
        prev = l;
        cur = EpSeq::periodic(m, alpha.prefix(l).into_digits())?;
        out.push((l, cur.clone()));
    }
    for (mj, _) in &out {
        if *mj > 2 && !is_fundamental(&alpha.prefix(*mj))? {
            return Err(ClassifyError::ScanExhausted(format!(
                "approx-above produced non-fundamental prefix of length {}",
                mj
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StrongType {
    Type1,
    Type2,
    Type3,
}

#[derive(Debug, Clone, Serialize)]
pub enum StrongWeak {
    Strong {
        ty: StrongType,
        /// index n_m from which every approximant is irreducible
        tail_start: usize,
        /// n-indices of non-irreducible approximants
        non_irreducible: Vec<usize>,
    },
    Weak {
        witnesses: Vec<usize>,
    },
    Unknown(usize),
}

/// Strong/weak irreducibility with Types 1-3. `weak_witnesses` is an
/// explicit recurrence schedule (indices n of non-irreducible approximants):
/// weakness is a tail property, so it is only asserted when such a schedule
/// is supplied and verified; scan-based evidence alone yields Unknown.
pub fn classify_strong_weak(
    alpha: &EpSeq,
    depth: usize,
    weak_witnesses: Option<&[usize]>,
) -> Result<StrongWeak, ClassifyError> {
    let irr = is_irreducible(alpha, None)?;
    if irr.state == TriState::No {
        return Err(ClassifyError::NotIrreducible(irr.witness));
    }
    let approx = natural_approx_below(alpha, depth)?;
    if let Some(ws) = weak_witnesses {
        let mut verified = Vec::new();
        for &n in ws {
            let item = approx.items.iter().find(|a| a.n == n);
            if let Some(item) = item {
                let v = is_irreducible(&item.seq, None)?;
                if v.state == TriState::No {
                    verified.push(n);
                }
            }
        }
        if verified.len() == ws.len() && !verified.is_empty() {
            return Ok(StrongWeak::Weak { witnesses: verified });
        }
        return Ok(StrongWeak::Unknown(depth));
    }
    let mut non_irr = Vec::new();
    for item in &approx.items {
        if item.n == 0 {
            continue; // the appended alpha itself
        }
        match is_irreducible(&item.seq, None)?.state {
            TriState::Yes => {}
            TriState::No => non_irr.push(item.n),
            TriState::UnknownUpTo(h) => return Ok(StrongWeak::Unknown(h)),
        }
    }
    let r = alpha.preperiod_len();
    let per = alpha.period_len();
    // tail start: first irreducible approximant past the last failure whose
    // index reaches beyond one full period of alpha
    let last_fail = non_irr.last().copied().unwrap_or(0);
    let tail_start = approx
        .items
        .iter()
        .find(|a| a.n > last_fail && (a.n > r + per || approx.terminated))
        .map(|a| a.n);
    let Some(tail_start) = tail_start else {
        if approx.terminated {
            // finite approximation: the tail is empty, alpha is strong
            let ty = strong_type(alpha, &approx, &non_irr)?;
            return Ok(StrongWeak::Strong { ty, tail_start: last_fail + 1, non_irreducible: non_irr });
        }
        return Ok(StrongWeak::Unknown(depth));
    };
    let ty = strong_type(alpha, &approx, &non_irr)?;
    Ok(StrongWeak::Strong { ty, tail_start, non_irreducible: non_irr })
}

fn strong_type(
    alpha: &EpSeq,
    approx: &ApproxBelow,
    non_irr: &[usize],
) -> Result<StrongType, ClassifyError> {
    if non_irr.is_empty() {
        return Ok(StrongType::Type1);
    }
    let alpha_qt = constants(alpha.alphabet())?.alpha_qt;
    let mut any_above = false;
    for item in &approx.items {
        if non_irr.contains(&item.n) && item.seq.lex_cmp(&alpha_qt)? == Ordering::Greater {
            any_above = true;
        }
    }
    Ok(if any_above { StrongType::Type3 } else { StrongType::Type2 })
}

#[derive(Debug, Clone, Serialize)]
pub enum SpecVerdict {
    Certificate {
        /// d(sigma^k alpha, reflect(alpha)) >= 2^-K for every k
        k: usize,
        /// tail start of the strong classification
        tail_start: usize,
    },
    Refuted(String),
    Unknown,
}

/// Specification certificate: requires a Strong classification and a uniform
/// positive distance between every shift of alpha and its reflection. K is
/// one past the largest first-difference index, so the bound d >= 2^-K is
/// strict.
pub fn spec_certificate(
    alpha: &EpSeq,
    k_max: usize,
    depth: usize,
) -> Result<SpecVerdict, ClassifyError> {
    if !in_vhat(alpha) {
        return Err(ClassifyError::NotInVhat);
    }
    let bar = alpha.reflect();
    let bound = alpha.preperiod_len() + alpha.period_len();
    let mut worst = 0u64;
    for k in 0..=bound {
        match crate::words::cylinder_distance(&alpha.shift(k), &bar)? {
            None => {
                return Ok(SpecVerdict::Refuted(format!(
                    "sigma^{} alpha equals reflect(alpha): matching runs are unbounded",
                    k
                )))
            }
            Some(j) => worst = worst.max(j),
        }
    }
    let k = worst as usize + 1;
    let sw = match classify_strong_weak(alpha, depth, None) {
        Ok(sw) => sw,
        Err(ClassifyError::NotIrreducible(w)) => {
            return Ok(SpecVerdict::Refuted(format!(
                "not irreducible (witness j = {:?})",
                w
            )))
        }
        Err(e) => return Err(e),
    };
    match sw {
        StrongWeak::Strong { tail_start, .. } if k <= k_max => {
            Ok(SpecVerdict::Certificate { k, tail_start })
        }
        StrongWeak::Weak { witnesses } => Ok(SpecVerdict::Refuted(format!(
            "weakly irreducible (witnesses {:?})",
            witnesses
        ))),
        _ => Ok(SpecVerdict::Unknown),
    }
}

/// Membership in I_N: prefix M^(2N-1) 0 and every window
/// alpha_{rN+1}..alpha_{(r+1)N}, r >= 2, strictly between 0^N and M^N.
pub fn in_i_n(alpha: &EpSeq, n: usize, horizon: usize) -> Result<TriState, ClassifyError> {
    if n < 2 {
        return Err(ClassifyError::PrefixTooShort(4));
    }
    if horizon < 2 * n {
        return Err(ClassifyError::PrefixTooShort(2 * n));
    }
    let m = alpha.alphabet();
    for i in 0..2 * n - 1 {
        if alpha.digit(i) != m {
            return Ok(TriState::No);
        }
    }
    if alpha.digit(2 * n - 1) != 0 {
        return Ok(TriState::No);
    }
    // windows repeat once r*N falls in the periodic part with period
    // lcm(N, period); beyond that the scan is exhaustive
    let per = alpha.period_len();
    let lcm = num_integer::lcm(n, per);
    let needed = alpha.preperiod_len() + 2 * lcm + 2 * n;
    let mut r = 2;
    while (r + 1) * n <= horizon.max(needed) {
        let w: Vec<Digit> = (r * n..(r + 1) * n).map(|i| alpha.digit(i)).collect();
        if w.iter().all(|&d| d == 0) || w.iter().all(|&d| d == m) {
            return Ok(TriState::No);
        }
        r += 1;
    }
    if (r + 1) * n > needed {
        Ok(TriState::Yes)
    } else {
        Ok(TriState::UnknownUpTo(horizon))
    }
}

#[derive(Debug, Clone)]
pub struct IrreducibleInterval {
    pub left: EpSeq,
    pub right: EpSeq,
    pub q_left: AlgebraicBase,
    pub q_right: AlgebraicBase,
}

/// Entropy plateau generated by a periodic irreducible left endpoint:
/// alpha(q_R) = alpha_1..alpha_m^+ (reflect(alpha_1..alpha_m))^inf.
pub fn plateau_from_left(alpha_l: &EpSeq) -> Result<IrreducibleInterval, ClassifyError> {
    if !alpha_l.is_periodic() {
        return Err(ClassifyError::NotPeriodic);
    }
    let irr = is_irreducible(alpha_l, None)?;
    let star = is_star_irreducible(alpha_l, None);
    let star_yes = matches!(&star, Ok(w) if w.state == TriState::Yes);
    if irr.state != TriState::Yes && !star_yes {
        return Err(ClassifyError::NotIrreducible(irr.witness));
    }
    let block = alpha_l.prefix(alpha_l.period_len());
    let right = EpSeq::new(
        alpha_l.alphabet(),
        block.plus()?.into_digits(),
        block.reflect().into_digits(),
    )?;
    let q_left = base_from_alpha(alpha_l)?;
    let q_right = base_from_alpha(&right)?;
    Ok(IrreducibleInterval { left: alpha_l.clone(), right, q_left, q_right })
}

/// dim_H(U_q) = h_top(V-hat_q) / ln q, as an interval.
pub fn dimension_uq(alpha: &EpSeq) -> Result<(f64, f64), ClassifyError> {
    let qg_alpha = constants(alpha.alphabet())?.alpha_qg;
    if alpha.lex_cmp(&qg_alpha)? == Ordering::Less {
        return Err(ClassifyError::BelowGoldenRatio);
    }
    let q = base_from_alpha(alpha)?;
    let aut = ShiftAutomaton::build(alpha, ShiftKind::Symmetric)?;
    let h = aut.entropy().h_ln;
    let (ln_lo, ln_hi) = q.ln_interval();
    Ok(((h.0 / ln_hi).max(0.0), (h.1 / ln_lo).min(1.0 + 1e-9)))
}

#[derive(Debug, Clone)]
pub struct DimLowerBound {
    pub lo: f64,
    pub hi: f64,
    /// present when (M+1)^N - 2 is an exact power of M+1
    pub exact: Option<Q>,
}

/// ln((M+1)^N - 2) / (N ln(M+1)), the dimension lower bound for I_N.
pub fn in_dim_lower_bound(m: Digit, n: usize) -> DimLowerBound {
    let base = BigInt::from(m + 1);
    let v = num_traits::pow::pow(base.clone(), n) - BigInt::from(2);
    // exact power detection
    let mut exact = None;
    let mut p = BigInt::one();
    for j in 0..=n {
        if p == v {
            exact = Some(q_ratio(j as i64, n as i64));
            break;
        }
        p *= &base;
    }
    if let Some(q) = &exact {
        let f = q_to_f64(q);
        return DimLowerBound { lo: f, hi: f, exact };
    }
    if v < BigInt::one() {
        // fewer than one admissible window: only the vacuous bound remains
        return DimLowerBound { lo: 0.0, hi: 0.0, exact: None };
    }
    let lnv = v.to_f64().unwrap().ln();
    let denom = n as f64 * ((m + 1) as f64).ln();
    let x = lnv / denom;
    let pad = x.abs() * 1e-12 + 1e-15;
    DimLowerBound { lo: x - pad, hi: x + pad, exact }
}

#[derive(Debug, Clone, Serialize)]
pub enum StarResult {
    Verdict(Witnessed),
    OutOfStarRange,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproximantReport {
    pub n: usize,
    pub alpha: String,
    pub q_lo: f64,
    pub q_hi: f64,
}

/// Everything the library can say about one exact base, in one record.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub schema: &'static str,
    pub alpha: String,
    pub alphabet: Digit,
    pub in_vhat: TriState,
    pub in_u: TriState,
    pub in_closure_u: TriState,
    pub irreducible: Option<Witnessed>,
    pub star_irreducible: Option<StarResult>,
    pub strong_weak: Option<StrongWeak>,
    pub spec: Option<SpecVerdict>,
    pub transitive: Option<bool>,
    pub mixing: Option<bool>,
    pub sft: TriState,
    pub sofic: bool,
    pub entropy_ln: Option<(f64, f64)>,
    pub entropy_normalized: Option<(f64, f64)>,
    pub dimension: Option<(f64, f64)>,
    pub approx_below: Vec<ApproximantReport>,
    pub notes: Vec<String>,
}

pub fn classify_report(alpha: &EpSeq, depth: usize) -> Result<ClassificationReport, ClassifyError> {
    let mut notes = Vec::new();
    let in_vh = is_in_vhat(alpha);
    let mut report = ClassificationReport {
        schema: "symshift.classification/1",
        alpha: alpha.to_string(),
        alphabet: alpha.alphabet(),
        in_vhat: in_vh,
        in_u: is_in_u(alpha),
        in_closure_u: is_in_closure_u(alpha),
        irreducible: None,
        star_irreducible: None,
        strong_weak: None,
        spec: None,
        transitive: None,
        mixing: None,
        sft: TriState::UnknownUpTo(0),
        sofic: true, // exact inputs are eventually periodic
        entropy_ln: None,
        entropy_normalized: None,
        dimension: None,
        approx_below: Vec::new(),
        notes: Vec::new(),
    };
    if in_vh != TriState::Yes {
        notes.push("alpha is not in V-hat; only membership flags are meaningful".into());
        report.notes = notes;
        return Ok(report);
    }
    let irr = is_irreducible(alpha, None)?;
    report.irreducible = Some(irr);
    report.star_irreducible = Some(match is_star_irreducible(alpha, None) {
        Ok(w) => StarResult::Verdict(w),
        Err(ClassifyError::OutOfStarRange) => StarResult::OutOfStarRange,
        Err(e) => return Err(e),
    });
    if irr.state == TriState::Yes {
        report.strong_weak = Some(classify_strong_weak(alpha, depth, None)?);
    }
    report.spec = Some(spec_certificate(alpha, 64, depth)?);
    let aut = ShiftAutomaton::build(alpha, ShiftKind::Symmetric)?;
    report.transitive = Some(aut.transitive()?);
    report.mixing = Some(aut.mixing()?);
    let e = aut.entropy();
    report.entropy_ln = Some(e.h_ln);
    report.entropy_normalized = Some(e.h_normalized);
    match dimension_uq(alpha) {
        Ok(d) => report.dimension = Some(d),
        Err(ClassifyError::BelowGoldenRatio) => {
            notes.push("base below the generalized golden ratio: dimension formula not applied".into())
        }
        Err(e) => return Err(e),
    }
    // SFT detection: every sufficiently long word synchronizing is exact and
    // sufficient; periodic irreducible alpha is a theorem-backed Yes
    let cap = alpha.preperiod_len() + 2 * alpha.period_len() + 2;
    let mut sft = TriState::UnknownUpTo(cap);
    if alpha.is_periodic() && irr.state == TriState::Yes {
        sft = TriState::Yes;
    } else {
        for len in 1..=cap {
            let bn = aut.enumerate_bn(len);
            if bn.len() > 4000 {
                break;
            }
            if !bn.is_empty() && bn.iter().all(|w| aut.collapses(w)) {
                sft = TriState::Yes;
                break;
            }
        }
    }
    report.sft = sft;
    for item in natural_approx_below(alpha, depth)?.items {
        let q = base_from_alpha(&item.seq)?;
        let (lo, hi) = q.enclosure_width(&q_ratio(1, 1_000_000_000));
        report.approx_below.push(ApproximantReport {
            n: item.n,
            alpha: item.seq.to_string(),
            q_lo: q_to_f64(&lo),
            q_hi: q_to_f64(&hi),
        });
    }
    notes.push(
        "Yes verdicts for irreducibility on exact input rely on tag-pattern stabilization over the scanned horizon".into(),
    );
    report.notes = notes;
    Ok(report)
}
