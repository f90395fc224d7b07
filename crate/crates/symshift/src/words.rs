//! Finite words and eventually periodic sequences over the alphabet
//! {0, ..., M}, together with the lexicographic machinery everything else
//! is built on: reflection, last-digit increment/decrement, shifts,
//! cylinder distance and the text grammar `WORD | WORD "(" WORD ")"`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

/// A single digit. Alphabets are `{0, ..., M}` for some `M >= 1`.
pub type Digit = u32;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordError {
    #[error("digit {digit} exceeds alphabet bound M={m}")]
    DigitOutOfRange { digit: Digit, m: Digit },
    #[error("alphabet mismatch: M={0} vs M={1}")]
    AlphabetMismatch(Digit, Digit),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("cannot increment last digit: word is empty or last digit is M")]
    DigitOverflow,
    #[error("cannot decrement last digit: word is empty or last digit is 0")]
    DigitUnderflow,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("alphabet bound must satisfy M >= 1, got {0}")]
    BadAlphabet(Digit),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

fn check_digits(digits: &[Digit], m: Digit) -> Result<(), WordError> {
    if m < 1 {
        return Err(WordError::BadAlphabet(m));
    }
    for &d in digits {
        if d > m {
            return Err(WordError::DigitOutOfRange { digit: d, m });
        }
    }
    Ok(())
}

/// A finite word over `{0, ..., M}`. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    m: Digit,
    digits: Vec<Digit>,
}

impl Word {
    pub fn new(m: Digit, digits: Vec<Digit>) -> Result<Self, WordError> {
        check_digits(&digits, m)?;
        Ok(Word { m, digits })
    }

    pub fn empty(m: Digit) -> Self {
        Word { m, digits: Vec::new() }
    }

    pub fn alphabet(&self) -> Digit {
        self.m
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.digits
    }

    /// Digit-wise reflection `d -> M - d`.
    pub fn reflect(&self) -> Word {
        Word {
            m: self.m,
            digits: self.digits.iter().map(|&d| self.m - d).collect(),
        }
    }

    /// `w^+`: increment the last digit.
    pub fn plus(&self) -> Result<Word, WordError> {
        let mut digits = self.digits.clone();
        match digits.last_mut() {
            Some(last) if *last < self.m => {
                *last += 1;
                Ok(Word { m: self.m, digits })
            }
            _ => Err(WordError::DigitOverflow),
        }
    }

    /// `w^-`: decrement the last digit.
    pub fn minus(&self) -> Result<Word, WordError> {
        let mut digits = self.digits.clone();
        match digits.last_mut() {
            Some(last) if *last > 0 => {
                *last -= 1;
                Ok(Word { m: self.m, digits })
            }
            _ => Err(WordError::DigitUnderflow),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.m != other.m {
            return Err(WordError::AlphabetMismatch(self.m, other.m));
        }
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Ok(Word { m: self.m, digits })
    }

    pub fn repeat(&self, k: usize) -> Word {
        let mut digits = Vec::with_capacity(self.digits.len() * k);
        for _ in 0..k {
            digits.extend_from_slice(&self.digits);
        }
        Word { m: self.m, digits }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word { m: self.m, digits: self.digits[..n.min(self.digits.len())].to_vec() }
    }

    pub fn suffix_from(&self, i: usize) -> Word {
        Word { m: self.m, digits: self.digits[i.min(self.digits.len())..].to_vec() }
    }

    /// Lexicographic comparison; only defined for equal lengths.
    pub fn lex_cmp(&self, other: &Word) -> Result<Ordering, WordError> {
        if self.m != other.m {
            return Err(WordError::AlphabetMismatch(self.m, other.m));
        }
        if self.len() != other.len() {
            return Err(WordError::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.digits.cmp(&other.digits))
    }

    /// Does `needle` occur as a factor of `self`?
    pub fn contains_factor(&self, needle: &[Digit]) -> bool {
        if needle.is_empty() {
            return true;
        }
        self.digits.windows(needle.len()).any(|w| w == needle)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_digits(f, self.m, &self.digits)
    }
}

fn fmt_digits(f: &mut fmt::Formatter<'_>, m: Digit, digits: &[Digit]) -> fmt::Result {
    if m <= 9 {
        for &d in digits {
            write!(f, "{}", d)?;
        }
        Ok(())
    } else {
        write!(f, "[")?;
        for (i, &d) in digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, "]")
    }
}

/// An eventually periodic one-sided sequence `pre (per)^inf`, stored in a
/// canonical form: the period is primitive and the preperiod is as short as
/// possible. Purely periodic sequences have an empty preperiod, so derived
/// equality coincides with equality of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpSeq {
    m: Digit,
    pre: Vec<Digit>,
    per: Vec<Digit>,
}

/// Length of the shortest word whose power equals `w`.
fn primitive_root_len(w: &[Digit]) -> usize {
    // classic failure-function trick
    let n = w.len();
    let mut fail = vec![0usize; n];
    for i in 1..n {
        let mut j = fail[i - 1];
        while j > 0 && w[i] != w[j] {
            j = fail[j - 1];
        }
        if w[i] == w[j] {
            j += 1;
        }
        fail[i] = j;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

impl EpSeq {
    pub fn new(m: Digit, pre: Vec<Digit>, per: Vec<Digit>) -> Result<Self, WordError> {
        check_digits(&pre, m)?;
        check_digits(&per, m)?;
        if per.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        let mut s = EpSeq { m, pre, per };
        s.canonicalize();
        Ok(s)
    }

    pub fn periodic(m: Digit, per: Vec<Digit>) -> Result<Self, WordError> {
        EpSeq::new(m, Vec::new(), per)
    }

    /// `w (p)^inf` from words.
    pub fn from_words(pre: &Word, per: &Word) -> Result<Self, WordError> {
        if pre.alphabet() != per.alphabet() {
            return Err(WordError::AlphabetMismatch(pre.alphabet(), per.alphabet()));
        }
        EpSeq::new(per.alphabet(), pre.digits().to_vec(), per.digits().to_vec())
    }

    fn canonicalize(&mut self) {
        let p = primitive_root_len(&self.per);
        self.per.truncate(p);
        while let Some(&last) = self.pre.last() {
            if last == *self.per.last().unwrap() {
                // absorb the last preperiod digit into the cycle
                self.per.rotate_right(1);
                self.pre.pop();
            } else {
                break;
            }
        }
    }

    pub fn alphabet(&self) -> Digit {
        self.m
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.pre
    }

    pub fn period(&self) -> &[Digit] {
        &self.per
    }

    pub fn preperiod_len(&self) -> usize {
        self.pre.len()
    }

    pub fn period_len(&self) -> usize {
        self.per.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// 0-based digit access.
    pub fn digit(&self, i: usize) -> Digit {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    /// First `n` digits as a word.
    pub fn prefix(&self, n: usize) -> Word {
        Word { m: self.m, digits: (0..n).map(|i| self.digit(i)).collect() }
    }

    pub fn reflect(&self) -> EpSeq {
        // reflection preserves canonicity
        EpSeq {
            m: self.m,
            pre: self.pre.iter().map(|&d| self.m - d).collect(),
            per: self.per.iter().map(|&d| self.m - d).collect(),
        }
    }

    /// `sigma^n` of the sequence, in canonical form.
    pub fn shift(&self, n: usize) -> EpSeq {
        let (pre, per);
        if n <= self.pre.len() {
            pre = self.pre[n..].to_vec();
            per = self.per.clone();
        } else {
            let k = (n - self.pre.len()) % self.per.len();
            pre = Vec::new();
            let mut p = self.per.clone();
            p.rotate_left(k);
            per = p;
        }
        let mut s = EpSeq { m: self.m, pre, per };
        s.canonicalize();
        s
    }

    /// Position (0-based) of the first difference, if any.
    pub fn first_diff(&self, other: &EpSeq) -> Result<Option<usize>, WordError> {
        if self.m != other.m {
            return Err(WordError::AlphabetMismatch(self.m, other.m));
        }
        let bound = self.pre.len()
            + other.pre.len()
            + self.per.len().lcm(&other.per.len());
        for i in 0..bound {
            if self.digit(i) != other.digit(i) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Lexicographic comparison of infinite sequences (total on a fixed
    /// alphabet; decided exactly from the eventually periodic structure).
    pub fn lex_cmp(&self, other: &EpSeq) -> Result<Ordering, WordError> {
        match self.first_diff(other)? {
            None => Ok(Ordering::Equal),
            Some(i) => Ok(self.digit(i).cmp(&other.digit(i))),
        }
    }

    /// Compare a finite word `w` against the prefix of this sequence of the
    /// same length; the result orders `w` relative to that prefix.
    pub fn cmp_prefix(&self, w: &Word) -> Result<Ordering, WordError> {
        if self.m != w.alphabet() {
            return Err(WordError::AlphabetMismatch(self.m, w.alphabet()));
        }
        for (i, &d) in w.digits().iter().enumerate() {
            match d.cmp(&self.digit(i)) {
                Ordering::Equal => continue,
                ord => return Ok(ord),
            }
        }
        Ok(Ordering::Equal)
    }

    /// Does `needle` occur as a factor anywhere in the sequence?
    pub fn contains_factor(&self, needle: &[Digit]) -> bool {
        if needle.is_empty() {
            return true;
        }
        // every factor occurs starting before preperiod + period
        let horizon = self.pre.len() + self.per.len() + needle.len();
        let unrolled: Vec<Digit> = (0..horizon).map(|i| self.digit(i)).collect();
        unrolled.windows(needle.len()).any(|w| w == needle)
    }
}

impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_digits(f, self.m, &self.pre)?;
        write!(f, "(")?;
        fmt_digits(f, self.m, &self.per)?;
        write!(f, ")")
    }
}

/// Metric `d(x, y) = 2^{-j}` where `j` is the 1-based position of the first
/// difference; `None` exponent means the sequences are equal (distance 0).
pub fn cylinder_distance(x: &EpSeq, y: &EpSeq) -> Result<Option<u64>, WordError> {
    Ok(x.first_diff(y)?.map(|i| i as u64 + 1))
}

/// Same metric on finite words of equal length; `None` means equal.
pub fn cylinder_distance_words(x: &Word, y: &Word) -> Result<Option<u64>, WordError> {
    if x.alphabet() != y.alphabet() {
        return Err(WordError::AlphabetMismatch(x.alphabet(), y.alphabet()));
    }
    if x.len() != y.len() {
        return Err(WordError::LengthMismatch(x.len(), y.len()));
    }
    for (i, (a, b)) in x.digits().iter().zip(y.digits()).enumerate() {
        if a != b {
            return Ok(Some(i as u64 + 1));
        }
    }
    Ok(None)
}

/// First `n` digits of the Thue–Morse sequence `tau_1, tau_2, ...`
/// (`tau_i` = parity of ones in the binary expansion of `i`).
pub fn thue_morse(n: usize) -> Vec<Digit> {
    (1..=n).map(|i| (i as u64).count_ones() % 2).collect()
}

// --- text grammar -----------------------------------------------------------
//
// SEQ  := WORD | WORD "(" WORD ")"
// WORD := contiguous digits for M <= 9, e.g. 1101
//         bracketed comma-separated for M > 9, e.g. [2,10,0]

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    m: Digit,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, WordError> {
        Err(WordError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Vec<Digit>, WordError> {
        let mut digits = Vec::new();
        if self.m <= 9 {
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    digits.push((c - b'0') as Digit);
                    self.pos += 1;
                } else {
                    break;
                }
            }
        } else {
            if self.peek() != Some(b'[') {
                return self.err("expected '[' for M > 9 word");
            }
            self.pos += 1;
            loop {
                match self.peek() {
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let start = self.pos;
                        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
                            self.pos += 1;
                        }
                        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                        match text.parse::<Digit>() {
                            Ok(d) => digits.push(d),
                            Err(_) => return self.err("digit out of range"),
                        }
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        }
                    }
                    _ => return self.err("expected digit or ']'"),
                }
            }
        }
        for &d in &digits {
            if d > self.m {
                return self.err(format!("digit {} exceeds M={}", d, self.m));
            }
        }
        Ok(digits)
    }
}

/// Parse a finite word in the text grammar.
pub fn parse_word(s: &str, m: Digit) -> Result<Word, WordError> {
    if m < 1 {
        return Err(WordError::BadAlphabet(m));
    }
    let mut p = Parser { src: s.trim().as_bytes(), pos: 0, m };
    let digits = p.word()?;
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Word::new(m, digits)
}

/// Parse a sequence in the text grammar. A bare `WORD` denotes the purely
/// periodic sequence with that period (i.e. `w` is read as `(w)^inf`).
pub fn parse_seq(s: &str, m: Digit) -> Result<EpSeq, WordError> {
    if m < 1 {
        return Err(WordError::BadAlphabet(m));
    }
    let mut p = Parser { src: s.trim().as_bytes(), pos: 0, m };
    let first = p.word()?;
    match p.peek() {
        None => {
            if first.is_empty() {
                return p.err("empty sequence");
            }
            EpSeq::new(m, Vec::new(), first)
        }
        Some(b'(') => {
            p.pos += 1;
            let per = p.word()?;
            if p.peek() != Some(b')') {
                return p.err("expected ')'");
            }
            p.pos += 1;
            if p.pos != p.src.len() {
                return p.err("trailing input");
            }
            if per.is_empty() {
                return p.err("empty period");
            }
            EpSeq::new(m, first, per)
        }
        _ => p.err("expected '(' or end of input"),
    }
}
