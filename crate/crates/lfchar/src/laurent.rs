//! Multivariate Laurent polynomials with exact integer coefficients.
//!
//! Terms live in a BTreeMap keyed by exponent vectors, so equality, hashing
//! via canonical bytes, and printing are all deterministic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("inexact division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<i32>, coeff: BigInt) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(vec![0; self.nvars].as_slice())
                .map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert_add(&mut self, exps: Vec<i32>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.insert_add(e, c1 * c2);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact division; errors if the quotient is not a Laurent polynomial.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Shift both operands into N^n so that lex-leading-term division
        // terminates, then divide as ordinary polynomials.
        let shift_of = |p: &Self| -> Vec<i32> {
            let mut m = vec![i32::MAX; p.nvars];
            for e in p.terms.keys() {
                for (mi, &x) in m.iter_mut().zip(e.iter()) {
                    *mi = (*mi).min(x);
                }
            }
            m
        };
        let sn = shift_of(self);
        let sd = shift_of(divisor);
        let mut rem: BTreeMap<Vec<i32>, BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(sn.iter()).map(|(a, b)| a - b).collect(),
                    c.clone(),
                )
            })
            .collect();
        let div: BTreeMap<Vec<i32>, BigInt> = divisor
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(sd.iter()).map(|(a, b)| a - b).collect(),
                    c.clone(),
                )
            })
            .collect();
        // BTreeMap iterates keys in ascending lex order; the leading term is
        // the last one.
        let (dle, dlc) = div.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quot: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        while let Some((rle, rlc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = rle.iter().zip(dle.iter()).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(LaurentError::InexactDivision);
            }
            let (qc, r) = num_integer::div_rem(rlc.clone(), dlc.clone());
            if !r.is_zero() {
                return Err(LaurentError::InexactDivision);
            }
            // rem -= qc * x^qe * div
            for (e, c) in &div {
                let te: Vec<i32> = e.iter().zip(qe.iter()).map(|(a, b)| a + b).collect();
                let delta = &qc * c;
                match rem.entry(te) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        if !delta.is_zero() {
                            v.insert(-delta);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.insert(qe, qc);
        }
        // Undo the shift: quotient exponents shift by sn - sd.
        let mut out = Self::zero(self.nvars);
        for (e, c) in quot {
            let shifted: Vec<i32> = e
                .iter()
                .zip(sn.iter().zip(sd.iter()))
                .map(|(x, (a, b))| x + a - b)
                .collect();
            out.insert_add(shifted, c);
        }
        Ok(out)
    }

    /// Substitutes variable i by the monomial with the given exponents (over
    /// a possibly different variable set).
    pub fn eval_monomials(&self, images: &[Vec<i32>], out_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut out = Self::zero(out_nvars);
        for (e, c) in &self.terms {
            let mut exps = vec![0i32; out_nvars];
            for (i, &p) in e.iter().enumerate() {
                for (x, &im) in exps.iter_mut().zip(images[i].iter()) {
                    *x += p * im;
                }
            }
            out.insert_add(exps, c.clone());
        }
        out
    }

    /// Sets the variables in `which` to 1 and drops them from the exponent
    /// vectors (keeping the others in order).
    pub fn specialize_ones(&self, which: &[bool]) -> Self {
        assert_eq!(which.len(), self.nvars);
        let keep: Vec<usize> = (0..self.nvars).filter(|&i| !which[i]).collect();
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            let ne: Vec<i32> = keep.iter().map(|&i| e[i]).collect();
            out.insert_add(ne, c.clone());
        }
        out
    }

    /// Componentwise minimum of exponents over all terms (0 if empty).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![0i32; self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                m.copy_from_slice(e);
                first = false;
            } else {
                for (mi, &x) in m.iter_mut().zip(e.iter()) {
                    *mi = (*mi).min(x);
                }
            }
        }
        m
    }

    /// Negated minimal exponents: the denominator vector of a cluster variable.
    pub fn denominator_vector(&self) -> Vec<i64> {
        self.min_exponents().iter().map(|&x| -(x as i64)).collect()
    }

    pub fn max_exponents(&self) -> Vec<i32> {
        let mut m = vec![0i32; self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                m.copy_from_slice(e);
                first = false;
            } else {
                for (mi, &x) in m.iter_mut().zip(e.iter()) {
                    *mi = (*mi).max(x);
                }
            }
        }
        m
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Divides every exponent by `l`; errors if any is not divisible.
    pub fn unscale_exponents(&self, l: i32) -> Result<Self, LaurentError> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().any(|&x| x % l != 0) {
                return Err(LaurentError::InexactDivision);
            }
            out.insert_add(e.iter().map(|&x| x / l).collect(), c.clone());
        }
        Ok(out)
    }

    /// Stable byte encoding for hashing and visited-set keys.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            for &x in e {
                out.extend_from_slice(&x.to_le_bytes());
            }
            out.extend_from_slice(c.to_signed_bytes_le().as_slice());
            out.push(0xff);
        }
        out
    }

    /// Renders with the given variable names, terms sorted by total degree
    /// then lexicographically.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Vec<i32>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (e.iter().map(|&x| x as i64).sum::<i64>(), (*e).clone()));
        let mut out = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono = render_monomial(e, names);
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", abs, mono));
            }
        }
        out
    }

    /// Renders as numerator/denominator with a single monomial denominator.
    pub fn render_factored(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let m = self.min_exponents();
        if m.iter().all(|&x| x >= 0) {
            return self.render(names);
        }
        let shift: Vec<i32> = m.iter().map(|&x| if x < 0 { -x } else { 0 }).collect();
        let numerator = self.mul(&LaurentPoly::monomial(shift.clone(), BigInt::one()));
        let den = render_monomial(&shift, names);
        let num = numerator.render(names);
        if numerator.num_terms() > 1 {
            format!("({})/({})", num, den)
        } else {
            format!("{}/({})", num, den)
        }
    }
}

fn render_monomial(e: &[i32], names: &[&str]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| {
            if x == 1 {
                names[i].to_string()
            } else {
                format!("{}^{}", names[i], x)
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.render(&refs))
    }
}
