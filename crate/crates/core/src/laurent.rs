//! Sparse Laurent polynomials in `u_1, ..., u_n` with arbitrary-precision
//! integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An exponent vector, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<i32>);

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = |e: &Exponent| e.0.iter().map(|&x| x as i64).sum::<i64>();
        d(self).cmp(&d(other)).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Laurent polynomial; zero coefficients are never stored, terms iterate in
/// graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(coeff: BigInt, exps: Vec<i32>) -> Self {
        let nvars = exps.len();
        let mut p = LaurentPoly::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(Exponent(exps), coeff);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::monomial(BigInt::one(), vec![0; nvars])
    }

    /// The variable `u_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        LaurentPoly::monomial(BigInt::one(), e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn leading(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = Exponent(e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect());
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(LaurentPoly::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Componentwise minimum exponent over the terms (zero vector for 0).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.0.clone(),
                Some(cur) => cur.iter().zip(&e.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    fn shift(&self, by: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent(e.0.iter().zip(by).map(|(a, b)| a + b).collect()), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d` in the Laurent ring over `Z`, or `None`.
    ///
    /// Both sides are shifted to polynomials with no monomial factor; their
    /// quotient is then a polynomial, found by division with remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let ma = self.min_exponents();
        let mb = d.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&ma));
        let den = d.shift(&neg(&mb));
        let (le, lc) = den.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quot = LaurentPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = re.0.iter().zip(&le.0).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let t = LaurentPoly::monomial(qc, qe);
            rem = rem.sub(&t.mul(&den));
            quot = quot.add(&t);
        }
        let back: Vec<i32> = ma.iter().zip(&mb).map(|(a, b)| a - b).collect();
        Some(quot.shift(&back))
    }

    /// Leading coefficient in graded-lex order.
    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.leading().map(|(_, c)| c)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

fn fmt_monomial(e: &[i32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { format!("u{}", i + 1) } else { format!("u{}^{}", i + 1, x) })
        .collect::<Vec<_>>()
        .join("*")
}

/// `numerator/denominator` with a monomial denominator, terms of the numerator
/// in descending graded-lex order: `(u2 + 1)/u1`, `u1`, `2/u1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let den: Vec<i32> = self.min_exponents().iter().map(|&m| (-m).max(0)).collect();
        let num = self.shift(&den);
        let mut parts = Vec::new();
        for (k, (e, c)) in num.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(&e.0);
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            let sign = if c.is_negative() { "-" } else if k == 0 { "" } else { "+" };
            parts.push(if k == 0 { format!("{sign}{body}") } else { format!("{sign} {body}") });
        }
        let num_s = parts.join(" ");
        let den_s = fmt_monomial(&den);
        match (den_s.is_empty(), num.terms.len() > 1) {
            (true, _) => write!(f, "{num_s}"),
            (false, true) => write!(f, "({num_s})/{}", wrap(&den_s)),
            (false, false) => write!(f, "{num_s}/{}", wrap(&den_s)),
        }
    }
}

fn wrap(s: &str) -> String {
    if s.contains('*') {
        format!("({s})")
    } else {
        s.to_string()
    }
}
