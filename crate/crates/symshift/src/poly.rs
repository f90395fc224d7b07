//! Polynomials with rational coefficients: just enough exact machinery for
//! sign determination of algebraic numbers — arithmetic, Euclidean division,
//! gcd, Sturm chains and interval evaluation.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub type Q = Ratio<BigInt>;

pub fn q_from(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(Vec<Q>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly::new(vec![Q::zero(), Q::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| q_from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Q) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Q::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> QPoly {
        QPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); k];
        out.extend(self.0.iter().cloned());
        QPoly(out)
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dn = divisor.0.len();
        if rem.len() < dn {
            return (QPoly::zero(), QPoly::new(rem));
        }
        let mut quo = vec![Q::zero(); rem.len() - dn + 1];
        let lead = divisor.0.last().unwrap().clone();
        for i in (dn - 1..rem.len()).rev() {
            let c = &rem[i] / &lead;
            if c.is_zero() {
                continue;
            }
            let qi = i - (dn - 1);
            for (j, d) in divisor.0.iter().enumerate() {
                let t = &c * d;
                rem[qi + j] -= t;
            }
            quo[qi] = c;
        }
        (QPoly::new(quo), QPoly::new(rem))
    }

    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.0.last().unwrap().clone();
            a.scale(&(Q::one() / lead))
        }
    }

    pub fn derivative(&self) -> QPoly {
        if self.0.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    /// Sturm chain of `self`.
    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            chain.push(r);
        }
        chain.pop();
        chain
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`,
    /// by Sturm's theorem.
    pub fn count_roots_half_open(&self, lo: &Q, hi: &Q) -> usize {
        assert!(lo < hi);
        let chain = self.sturm_chain();
        let var = |x: &Q| -> usize {
            let mut count = 0;
            let mut last = 0;
            for p in &chain {
                let s = p.sign_at(x);
                if s != 0 {
                    if last != 0 && s != last {
                        count += 1;
                    }
                    last = s;
                }
            }
            count
        };
        var(lo).saturating_sub(var(hi))
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_roots_open(&self, lo: &Q, hi: &Q) -> usize {
        let n = self.count_roots_half_open(lo, hi);
        if self.sign_at(hi) == 0 {
            n - 1
        } else {
            n
        }
    }

    /// Interval evaluation by Horner's scheme with exact endpoint bookkeeping:
    /// returns `(lo, hi)` containing `{p(x) : x in [a, b]}`.
    pub fn eval_interval(&self, a: &Q, b: &Q) -> (Q, Q) {
        let mut lo = Q::zero();
        let mut hi = Q::zero();
        for c in self.0.iter().rev() {
            // [lo,hi] * [a,b] + c
            let candidates = [&lo * a, &lo * b, &hi * a, &hi * b];
            let mut nlo = candidates[0].clone();
            let mut nhi = candidates[0].clone();
            for cand in &candidates[1..] {
                if *cand < nlo {
                    nlo = cand.clone();
                }
                if *cand > nhi {
                    nhi = cand.clone();
                }
            }
            lo = nlo + c;
            hi = nhi + c;
        }
        (lo, hi)
    }
}

/// Sign of a rational.
pub fn sign_q(x: &Q) -> i32 {
    match x.cmp(&Q::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Best-effort f64 value of a rational (adequate for reporting: the values
/// involved are moderate).
pub fn q_to_f64(x: &Q) -> f64 {
    // scale down big numerator/denominator pairs to stay in range
    let mut n = x.numer().clone();
    let mut d = x.denom().clone();
    let bits = n.bits().max(d.bits());
    if bits > 900 {
        let shift = bits - 900;
        n >>= shift;
        d >>= shift;
        if d.is_zero() {
            d = BigInt::one();
        }
    }
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_roundtrip() {
        let a = QPoly::from_ints(&[2, -3, 0, 1, 5]);
        let b = QPoly::from_ints(&[1, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_shared_factor() {
        // (x-1)(x-2) and (x-1)(x-3) share x-1
        let a = QPoly::from_ints(&[2, -3, 1]);
        let b = QPoly::from_ints(&[3, -4, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, QPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        // x^2 - x - 1: roots phi and -1/phi
        let p = QPoly::from_ints(&[-1, -1, 1]);
        assert_eq!(p.count_roots_open(&q_from(1), &q_from(2)), 1);
        assert_eq!(p.count_roots_open(&q_from(-1), &q_from(0)), 1);
        assert_eq!(p.count_roots_open(&q_from(2), &q_from(3)), 0);
        // root exactly at right endpoint is excluded from the open count
        let q = QPoly::from_ints(&[-4, 0, 1]);
        assert_eq!(q.count_roots_open(&q_from(0), &q_from(2)), 0);
        assert_eq!(q.count_roots_half_open(&q_from(0), &q_from(2)), 1);
    }

    #[test]
    fn interval_eval_contains_values() {
        let p = QPoly::from_ints(&[-1, -1, 1]);
        let (lo, hi) = p.eval_interval(&q_ratio(3, 2), &q_ratio(17, 10));
        let v = p.eval(&q_ratio(8, 5));
        assert!(lo <= v && v <= hi);
    }
}
