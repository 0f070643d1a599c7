//! Graded polynomial rings over a prime field and sparse polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of variables a ring may carry.
pub const MAX_VARS: usize = 8;

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// Exponent vector, padded with zeros past the ring's variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = e;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    #[inline]
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn with_exp(mut self, i: usize, e: u16) -> Monomial {
        self.exps[i] = e;
        self
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps)
    }
}

/// Arithmetic in `Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Monomial orders. All of them refine the weighted degree where noted so
/// that homogeneous computations stay degree-compatible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Weighted degree, then total degree, then reverse lexicographic.
    Grevlex,
    Lex,
    /// Product order: grevlex on the variables of `block` (a bit mask)
    /// first, then grevlex on the remaining ones.
    Elimination { block: u8 },
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::Invalid(format!("unknown monomial order `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: PrimeField,
    weights: Vec<u32>,
    parameter: Option<usize>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    /// A ring whose variables all carry weight one.
    pub fn new(names: &[&str], characteristic: u32, order: MonomialOrder) -> Result<RingRef> {
        let weights = vec![1; names.len()];
        Self::build(names.iter().map(|s| s.to_string()).collect(), characteristic, weights, None, order)
    }

    fn build(
        names: Vec<String>,
        characteristic: u32,
        weights: Vec<u32>,
        parameter: Option<usize>,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::Invalid(format!("rings need 1..={MAX_VARS} variables")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(Ring { names, field: PrimeField::new(characteristic)?, weights, parameter, order }))
    }

    /// `k[x,y,z,w]` with grevlex.
    pub fn projective(characteristic: u32) -> RingRef {
        Self::new(&["x", "y", "z", "w"], characteristic, MonomialOrder::Grevlex).expect("valid ring")
    }

    /// `k[x,y,z,w,t]` where `t` is a weight-zero deformation parameter.
    pub fn family(characteristic: u32) -> RingRef {
        Self::build(
            ["x", "y", "z", "w", "t"].iter().map(|s| s.to_string()).collect(),
            characteristic,
            vec![1, 1, 1, 1, 0],
            Some(4),
            MonomialOrder::Grevlex,
        )
        .expect("valid ring")
    }

    /// The coordinate ring `k[z,w]` of the line `x = y = 0`.
    pub fn line(characteristic: u32) -> RingRef {
        Self::new(&["z", "w"], characteristic, MonomialOrder::Grevlex).expect("valid ring")
    }

    /// General constructor used by the parser: a variable named `t` becomes
    /// the weight-zero parameter.
    pub fn with_names(names: &[String], characteristic: u32, order: MonomialOrder) -> Result<RingRef> {
        let parameter = names.iter().position(|n| n == "t");
        let weights = names.iter().map(|n| if n == "t" { 0 } else { 1 }).collect();
        Self::build(names.to_vec(), characteristic, weights, parameter, order)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.p
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn parameter(&self) -> Option<usize> {
        self.parameter
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        let mut r = self.clone();
        r.order = order;
        Arc::new(r)
    }

    /// Appends a weight-zero auxiliary variable, placed first in an
    /// elimination block. Returns the ring and the new variable's index.
    pub fn with_eliminated_aux(&self, name: &str) -> Result<(RingRef, usize)> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut weights = self.weights.clone();
        weights.push(0);
        let idx = names.len() - 1;
        let ring = Self::build(names, self.field.p, weights, self.parameter, MonomialOrder::Elimination { block: 1 << idx })?;
        Ok((ring, idx))
    }

    /// Same ring with the variables in `order` listed first in an
    /// elimination block.
    pub fn eliminating(&self, vars: &[usize]) -> RingRef {
        let block = vars.iter().fold(0u8, |m, &v| m | (1 << v));
        self.with_order(MonomialOrder::Elimination { block })
    }

    /// Ring with the variable order permuted: new variable `i` is old
    /// variable `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> RingRef {
        let names = perm.iter().map(|&i| self.names[i].clone()).collect();
        let weights = perm.iter().map(|&i| self.weights[i]).collect();
        let parameter = self.parameter.map(|p| perm.iter().position(|&i| i == p).unwrap());
        Arc::new(Ring { names, field: self.field, weights, parameter, order: self.order })
    }

    /// Ring without the variable `v`.
    pub fn dropping(&self, v: usize) -> Result<RingRef> {
        let names: Vec<String> = self.names.iter().enumerate().filter(|(i, _)| *i != v).map(|(_, n)| n.clone()).collect();
        let weights = self.weights.iter().enumerate().filter(|(i, _)| *i != v).map(|(_, w)| *w).collect();
        let parameter = match self.parameter {
            Some(p) if p == v => None,
            Some(p) if p > v => Some(p - 1),
            other => other,
        };
        let order = match self.order {
            MonomialOrder::Elimination { block } => {
                let low = block & ((1u16 << v) as u8).wrapping_sub(1);
                let high = (block >> (v + 1)) << v;
                let nb = low | high;
                if nb == 0 {
                    MonomialOrder::Grevlex
                } else {
                    MonomialOrder::Elimination { block: nb }
                }
            }
            o => o,
        };
        Self::build(names, self.field.p, weights, parameter, order)
    }

    #[inline]
    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        let mut d = 0;
        for i in 0..self.names.len() {
            d += self.weights[i] * m.exps[i] as u32;
        }
        d
    }

    fn grevlex_masked(&self, a: &Monomial, b: &Monomial, mask: u8) -> Ordering {
        let n = self.names.len();
        let (mut wa, mut wb, mut ta, mut tb) = (0u32, 0u32, 0u32, 0u32);
        for i in 0..n {
            if mask & (1 << i) != 0 {
                wa += self.weights[i] * a.exps[i] as u32;
                wb += self.weights[i] * b.exps[i] as u32;
                ta += a.exps[i] as u32;
                tb += b.exps[i] as u32;
            }
        }
        match wa.cmp(&wb).then(ta.cmp(&tb)) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..n).rev() {
            if mask & (1 << i) != 0 && a.exps[i] != b.exps[i] {
                return b.exps[i].cmp(&a.exps[i]);
            }
        }
        Ordering::Equal
    }

    /// Compares monomials in this ring's order (`Greater` = larger).
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let all = ((1u16 << self.names.len()) - 1) as u8;
        match self.order {
            MonomialOrder::Grevlex => self.grevlex_masked(a, b, all),
            MonomialOrder::Lex => a.exps[..self.names.len()].cmp(&b.exps[..self.names.len()]),
            MonomialOrder::Elimination { block } => self
                .grevlex_masked(a, b, block)
                .then_with(|| self.grevlex_masked(a, b, all & !block)),
        }
    }

    /// All monomials of weighted degree `d` in the weight-one variables
    /// (variables of weight zero are held at exponent zero).
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let graded: Vec<usize> = (0..self.nvars()).filter(|&i| self.weights[i] > 0).collect();
        let mut out = Vec::new();
        let mut cur = Monomial::ONE;
        fn rec(vars: &[usize], left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if vars.len() == 1 {
                cur.exps[vars[0]] = left as u16;
                out.push(*cur);
                cur.exps[vars[0]] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur.exps[vars[0]] = e as u16;
                rec(&vars[1..], left - e, cur, out);
            }
            cur.exps[vars[0]] = 0;
        }
        if graded.is_empty() {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(&graded, d, &mut cur, &mut out);
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for i in 0..self.nvars() {
            match m.exps[i] {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// A sparse polynomial in canonical form: terms strictly decreasing in the
/// ring's order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        let terms = if c == 0 { vec![] } else { vec![(Monomial::ONE, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(ring, Monomial::var(i, 1), 1))
    }

    /// Variable by index, panicking if out of range.
    pub fn var_at(ring: &RingRef, i: usize) -> Self {
        assert!(i < ring.nvars());
        Self::monomial(ring, Monomial::var(i, 1), 1)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u32) -> Self {
        let c = c % ring.characteristic();
        let terms = if c == 0 { vec![] } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates are
    /// combined, zeros dropped).
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field;
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.p;
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusts the caller that `terms` are already canonical.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Weighted degree of the highest-degree term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Largest exponent of variable `v` appearing.
    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, self.ring.field.neg(1)))
    }

    /// `self + c * other`.
    pub(crate) fn combine(&self, other: &Polynomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                ring.cmp(&self.terms[i].0, &other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(c, other.terms[j].1);
                    if v != 0 {
                        out.push((other.terms[j].0, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(self.terms[i].1, f.mul(c, other.terms[j].1));
                    if v != 0 {
                        out.push((self.terms[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    /// Multiplication by a term; monomial orders are multiplicative so the
    /// result stays sorted.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        if c % f.p == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|&(n, a)| (n.mul(m), f.mul(a, c))).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.combine(&big.mul_term(m, *c), 1);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(&self.ring);
        for _ in 0..e {
            r = r.mul_unchecked(self);
        }
        r
    }

    /// Leading coefficient made one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field.inv(c)),
        }
    }

    /// Substitutes a scalar for a variable; the result lives in the ring
    /// without that variable.
    pub fn substitute_scalar(&self, var: &str, value: i64) -> Result<Polynomial> {
        let v = self.ring.var_index(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let target = self.ring.dropping(v)?;
        let f = self.ring.field;
        let val = f.from_i64(value);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let coef = f.mul(*c, f.pow(val, e as u64));
            let mut exps = Vec::with_capacity(target.nvars());
            for i in 0..self.ring.nvars() {
                if i != v {
                    exps.push(m.exp(i));
                }
            }
            terms.push((Monomial::from_exponents(&exps), coef));
        }
        Ok(Polynomial::from_terms(&target, terms))
    }

    /// Substitutes a polynomial (of the same ring) for a variable. Only the
    /// weight-zero parameter may receive a non-constant value, and that value
    /// must itself have degree zero, so homogeneity is preserved.
    pub fn substitute_poly(&self, var: &str, value: &Polynomial) -> Result<Polynomial> {
        self.check_ring(value)?;
        let v = self.ring.var_index(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        if !value.is_constant() {
            if self.ring.parameter() != Some(v) {
                return Err(Error::Invalid(format!("polynomial substitution is only allowed for the parameter, not `{var}`")));
            }
            if value.degree().unwrap_or(0) != 0 {
                return Err(Error::NotHomogeneous(format!("substituting a form of positive degree for `{var}`")));
            }
        }
        let mut acc = Polynomial::zero(&self.ring);
        let maxe = self.degree_in(v);
        let mut powers = vec![Polynomial::one(&self.ring)];
        for i in 1..=maxe as usize {
            let next = powers[i - 1].mul_unchecked(value);
            powers.push(next);
        }
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let rest = m.with_exp(v, 0);
            acc = acc.combine(&powers[e as usize].mul_term(&rest, *c), 1);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in another ring with the same variables
    /// (typically a different order), or maps variables by name.
    pub fn map_to(&self, target: &RingRef) -> Result<Polynomial> {
        if target.characteristic() != self.ring.characteristic() {
            return Err(Error::RingMismatch);
        }
        let mut map: Vec<Option<usize>> = Vec::with_capacity(self.ring.nvars());
        for i in 0..self.ring.nvars() {
            let j = target.var_index(&self.ring.names[i]);
            if j.is_none() && self.degree_in(i) > 0 {
                return Err(Error::UnknownVariable(self.ring.names[i].clone()));
            }
            map.push(j);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut n = Monomial::ONE;
                for (i, j) in map.iter().enumerate() {
                    if let Some(j) = j {
                        n.exps[*j] = m.exps[i];
                    }
                }
                (n, *c)
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Replaces each variable `i` by the polynomial `images[i]` (all in
    /// `target`).
    pub fn compose(&self, target: &RingRef, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, *c as i64);
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul_unchecked(img);
                }
            }
            acc = acc.combine(&t, 1);
        }
        acc
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        if !self.terms.iter().all(|(n, _)| m.divides(n)) {
            return None;
        }
        Some(Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(n, c)| (m.quotient_of(n), *c)).collect() })
    }

    /// Homogeneous component of weighted degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| self.ring.weighted_degree(m) == d).copied().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|(n, _)| n == m).map(|t| t.1).unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let (neg, abs) = (s < 0, s.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", abs, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Brute-force dimension of the degree-`n` piece of the ideal generated by
/// homogeneous `gens`: the rank of the coefficient matrix of all products
/// `m * g` with `deg(m * g) = n`.
pub fn graded_slice_dim(gens: &[Polynomial], n: u32) -> Result<usize> {
    let Some(first) = gens.first() else { return Ok(0) };
    let ring = first.ring().clone();
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    let basis = ring.monomials_of_degree(n);
    let index: std::collections::HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    for g in gens {
        if *g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            continue;
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        if ring.parameter().is_some_and(|p| g.degree_in(p) > 0) {
            return Err(Error::NotHomogeneous(format!("{g} involves the parameter")));
        }
        let d = g.degree().unwrap();
        if d > n {
            continue;
        }
        for m in ring.monomials_of_degree(n - d) {
            let row = g.terms().iter().map(|(t, c)| (index[&t.mul(&m)], *c)).collect();
            rows.push(row);
        }
    }
    Ok(crate::linalg::sparse_rank(rows, basis.len(), ring.field()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &RingRef, s: &str) -> Polynomial {
        crate::parse::parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::projective(DEFAULT_CHARACTERISTIC);
        let f = p(&r, "x+y").mul(&p(&r, "x-y")).unwrap();
        assert_eq!(f, p(&r, "x^2-y^2"));
        let g = p(&r, "x*z+w");
        assert_eq!(g.mul(&Polynomial::one(&r)).unwrap(), g);
    }

    #[test]
    fn square_of_quadric_coefficients() {
        let r = Ring::projective(32003);
        let q = p(&r, "x*w-y*z");
        let sq = q.mul(&q).unwrap();
        // term-by-term expansion
        let xywz = Monomial::from_exponents(&[1, 1, 1, 1]);
        assert_eq!(sq.coefficient(&xywz), 32001);
        assert_eq!(sq.coefficient(&Monomial::from_exponents(&[2, 0, 0, 2])), 1);
        assert_eq!(sq.coefficient(&Monomial::from_exponents(&[0, 2, 2, 0])), 1);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.degree(), Some(4));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Ring::projective(32003);
        let b = Ring::projective(101);
        assert!(matches!(p(&a, "x").mul(&p(&b, "x")), Err(Error::RingMismatch)));
    }

    #[test]
    fn parameter_substitution() {
        let r = Ring::family(32003);
        let f = p(&r, "t*w^2+z");
        assert_eq!(f.substitute_scalar("t", 0).unwrap().to_string(), "z");
        let g = p(&r, "t^2*x");
        assert_eq!(g.substitute_scalar("t", 2).unwrap().to_string(), "4*x");
        // thin-to-thick generator with a = b = 0
        let h = p(&r, "x^2 + t*(x*w - y*z)");
        let s = h.substitute_scalar("t", 1).unwrap();
        let pr = Ring::projective(32003);
        assert_eq!(s.map_to(&pr).unwrap(), p(&pr, "x^2 + x*w - y*z"));
    }

    #[test]
    fn polynomial_substitution_only_for_parameter() {
        let r = Ring::family(32003);
        let f = p(&r, "t*x + y");
        let val = p(&r, "t + 1");
        assert_eq!(f.substitute_poly("t", &val).unwrap(), p(&r, "t*x + x + y"));
        assert!(f.substitute_poly("y", &p(&r, "z")).is_err());
        assert!(f.substitute_poly("t", &p(&r, "z")).is_err());
    }

    #[test]
    fn slice_dims() {
        let r = Ring::projective(32003);
        let g = |s: &[&str]| s.iter().map(|t| p(&r, t)).collect::<Vec<_>>();
        assert_eq!(graded_slice_dim(&g(&["x", "y"]), 1).unwrap(), 2);
        assert_eq!(graded_slice_dim(&g(&["x^2", "x*y", "y^2", "x*w-y*z"]), 2).unwrap(), 4);
        // cubics of (x^2,xy,y^3,...): x^3 x^2y x^2z x^2w xy^2 xyz xyw y^3
        assert_eq!(graded_slice_dim(&g(&["x^2", "x*y", "y^3", "x*z^3-y^2*w^2"]), 3).unwrap(), 8);
        assert!(graded_slice_dim(&g(&["x^2+y"]), 2).is_err());
    }

    #[test]
    fn order_refines_degree_with_parameter() {
        let r = Ring::family(32003);
        let t = Monomial::var(4, 5);
        assert_eq!(r.cmp(&t, &Monomial::ONE), Ordering::Greater);
        let x = Monomial::var(0, 1);
        assert_eq!(r.cmp(&x, &t), Ordering::Greater);
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(Ring::new(&["x"], 4, MonomialOrder::Grevlex).is_err());
    }
}
