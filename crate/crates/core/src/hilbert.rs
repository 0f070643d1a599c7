//! Hilbert series and polynomials from leading monomials.
//!
//! The numerator of the series of `S/J` for a monomial ideal `J` is computed
//! by pivoting: `N(J) = N(J + (p)) + t^deg(p) N(J : p)` for a pure power `p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::ModuleGb;
use crate::ideal::Ideal;
use crate::ring::{binomial, Monomial, Ring};

/// Keeps the minimal elements of a list of monomials.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, &c) in p.iter().enumerate() {
        acc[k + shift] += sign * c;
    }
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let mut counts = vec![0usize; nvars];
    for m in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let (var, &best) = counts.iter().enumerate().max_by_key(|(i, c)| (**c, std::cmp::Reverse(*i))).unwrap();
    if best <= 1 {
        // pairwise coprime generators
        let mut acc = vec![1i64];
        for m in &gens {
            let d = m.total_degree() as usize;
            let mut next = acc.clone();
            add_shifted(&mut next, &acc, d, -1);
            acc = next;
        }
        return acc;
    }
    let mut exps: Vec<u16> = gens.iter().map(|m| m.exp(var)).filter(|&e| e > 0).collect();
    exps.sort();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var(var, e);
    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let k = m.exp(var).saturating_sub(e);
            m.with_exp(var, k)
        })
        .collect();
    let mut out = numerator_rec(plus, nvars);
    let rest = numerator_rec(colon, nvars);
    add_shifted(&mut out, &rest, e as usize, 1);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Numerator of the Hilbert series of `S/(gens)` in `nvars` standard graded
/// variables.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    numerator_rec(gens.to_vec(), nvars)
}

/// Evaluates `C(x, k)` for any integer `x`, as a polynomial in `x`.
pub fn binomial_poly(x: i64, k: usize) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (x - i as i64) as i128;
        den *= (i + 1) as i128;
    }
    num / den
}

/// A Hilbert series `t^low * N(t) / (1 - t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub low: i64,
    pub numerator: Vec<i64>,
}

fn require_standard(ring: &Ring) -> Result<()> {
    if ring.weights().iter().any(|&w| w != 1) {
        return Err(Error::Invalid("Hilbert series need a standard graded ring".into()));
    }
    Ok(())
}

impl HilbertSeries {
    /// Series of `S/I`.
    pub fn of_ideal(ideal: &Ideal) -> Result<Self> {
        require_standard(ideal.ring())?;
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous(ideal.to_string()));
        }
        let leads = ideal.groebner().leading_monomials();
        Ok(HilbertSeries { nvars: ideal.ring().nvars(), low: 0, numerator: monomial_numerator(&leads, ideal.ring().nvars()) })
    }

    /// Series of `F / M` for a graded submodule `M` of `F = ⊕ S(-d_k)`.
    pub fn of_module_quotient(gb: &ModuleGb) -> Result<Self> {
        require_standard(gb.ring())?;
        let n = gb.ring().nvars();
        let degrees = gb.degrees();
        if degrees.is_empty() {
            return Ok(HilbertSeries { nvars: n, low: 0, numerator: vec![0] });
        }
        let low = *degrees.iter().min().unwrap();
        let mut acc: Vec<i64> = vec![0];
        for (k, &d) in degrees.iter().enumerate() {
            let num = monomial_numerator(&gb.leads_in(k), n);
            add_shifted(&mut acc, &num, (d - low) as usize, 1);
        }
        Ok(HilbertSeries { nvars: n, low, numerator: acc }.trimmed())
    }

    /// Series of a free module `⊕ S(-d_k)`.
    pub fn of_free(nvars: usize, degrees: &[i64]) -> Self {
        let Some(&low) = degrees.iter().min() else { return HilbertSeries { nvars, low: 0, numerator: vec![0] } };
        let mut acc = vec![0i64];
        for &d in degrees {
            add_shifted(&mut acc, &[1], (d - low) as usize, 1);
        }
        HilbertSeries { nvars, low, numerator: acc }
    }

    fn trimmed(mut self) -> Self {
        while self.numerator.len() > 1 && *self.numerator.last().unwrap() == 0 {
            self.numerator.pop();
        }
        let lead_zeros = self.numerator.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.numerator.len() {
            return HilbertSeries { nvars: self.nvars, low: 0, numerator: vec![0] };
        }
        self.numerator.drain(..lead_zeros);
        self.low += lead_zeros as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    /// Dimension of the degree-`n` part.
    pub fn value(&self, n: i64) -> i64 {
        let mut s: i128 = 0;
        for (j, &c) in self.numerator.iter().enumerate() {
            let shift = n - self.low - j as i64;
            if c != 0 && shift >= 0 {
                s += c as i128 * binomial(shift as u64 + self.nvars as u64 - 1, self.nvars as u64 - 1) as i128;
            }
        }
        s as i64
    }

    /// Krull dimension and the reduced numerator `Q` with
    /// `N = Q (1 - t)^(nvars - dim)`.
    pub fn reduced(&self) -> (usize, Vec<i64>) {
        if self.is_zero() {
            return (0, vec![0]);
        }
        let mut q = self.numerator.clone();
        let mut dim = self.nvars;
        while dim > 0 && q.iter().sum::<i64>() == 0 {
            // divide by (1 - t)
            let mut out = Vec::with_capacity(q.len() - 1);
            let mut acc = 0;
            for &c in &q[..q.len() - 1] {
                acc += c;
                out.push(acc);
            }
            q = out;
            dim -= 1;
        }
        (dim, q)
    }

    /// Krull dimension of the module.
    pub fn dimension(&self) -> usize {
        self.reduced().0
    }

    pub fn polynomial(&self) -> HilbertPolynomial {
        let (dim, q) = self.reduced();
        HilbertPolynomial { dim, low: self.low, q }
    }

    /// Coefficients of the series when the module has finite length.
    pub fn finite_values(&self) -> Option<Vec<(i64, i64)>> {
        let (dim, q) = self.reduced();
        if dim != 0 {
            return None;
        }
        Some(q.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (self.low + j as i64, c)).collect())
    }
}

/// `P(n) = Σ q_k C(n - low - k + dim - 1, dim - 1)`; agrees with the Hilbert
/// function for `n ≥ low + deg Q - dim + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPolynomial {
    pub dim: usize,
    pub low: i64,
    pub q: Vec<i64>,
}

impl HilbertPolynomial {
    pub fn eval(&self, n: i64) -> i64 {
        if self.dim == 0 {
            return 0;
        }
        let mut s: i128 = 0;
        for (k, &c) in self.q.iter().enumerate() {
            s += c as i128 * binomial_poly(n - self.low - k as i64 + self.dim as i64 - 1, self.dim - 1);
        }
        s as i64
    }

    /// Multiplicity `Q(1)`.
    pub fn degree(&self) -> i64 {
        self.q.iter().sum()
    }

    /// First degree from which the polynomial equals the Hilbert function.
    pub fn valid_from(&self) -> i64 {
        self.low + self.q.len() as i64 - 1 - self.dim as i64 + 1
    }

    /// Arithmetic genus `1 - P(0)` of a curve (`dim == 2`).
    pub fn genus(&self) -> Option<i64> {
        (self.dim == 2).then(|| 1 - self.eval(0))
    }

    /// Coefficients of `P` in the monomial basis, lowest first, each as a
    /// reduced fraction `(numerator, denominator)`.
    pub fn coefficients(&self) -> Vec<(i64, i64)> {
        let k = self.dim.saturating_sub(1);
        // interpolate from k + 1 values
        let xs: Vec<i64> = (0..=k as i64).collect();
        let ys: Vec<i128> = xs.iter().map(|&x| self.eval(x) as i128).collect();
        let mut coeffs = vec![(0i128, 1i128); k + 1];
        for (i, &xi) in xs.iter().enumerate() {
            // Lagrange basis polynomial for node i
            let mut basis = vec![1i128];
            let mut den: i128 = 1;
            for (j, &xj) in xs.iter().enumerate() {
                if i != j {
                    let mut next = vec![0i128; basis.len() + 1];
                    for (d, &b) in basis.iter().enumerate() {
                        next[d + 1] += b;
                        next[d] -= b * xj as i128;
                    }
                    basis = next;
                    den *= (xi - xj) as i128;
                }
            }
            for (d, &b) in basis.iter().enumerate() {
                let (n0, d0) = coeffs[d];
                let (n1, d1) = (ys[i] * b, den);
                coeffs[d] = reduce_fraction(n0 * d1 + n1 * d0, d0 * d1);
            }
        }
        coeffs.into_iter().map(|(n, d)| (n as i64, d as i64)).collect()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn reduce_fraction(n: i128, d: i128) -> (i128, i128) {
    let g = gcd(n, d).max(1);
    let (n, d) = (n / g, d / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

/// Number of degree-`n` monomials outside the leading ideal, by enumeration.
pub fn standard_monomial_count(ideal: &Ideal, n: u32) -> usize {
    let gb = ideal.groebner();
    let leads = gb.leading_monomials();
    ideal.ring().monomials_of_degree(n).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::{graded_slice_dim, monomial_count, Ring, RingRef};

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect())
    }

    #[test]
    fn line_and_double_line() {
        let r = Ring::projective(32003);
        let p = HilbertSeries::of_ideal(&ideal(&r, &["x", "y"])).unwrap().polynomial();
        assert_eq!((p.dim, p.degree(), p.genus()), (2, 1, Some(0)));
        let dl = HilbertSeries::of_ideal(&ideal(&r, &["x^2", "x*y", "y^2", "x*w-y*z"])).unwrap().polynomial();
        assert_eq!((dl.degree(), dl.genus()), (2, Some(-1)));
        assert_eq!(dl.coefficients(), vec![(2, 1), (2, 1)]);
    }

    #[test]
    fn series_matches_enumeration_and_oracle() {
        let r = Ring::projective(32003);
        for gens in [
            vec!["x^2", "x*y", "y^3", "x*z^3-y^2*w^2"],
            vec!["x*z-y^2", "y*w-z^2", "x*w-y*z"],
            vec!["x^3", "y^2*z", "x*y*w^2", "z^4"],
        ] {
            let i = ideal(&r, &gens);
            let s = HilbertSeries::of_ideal(&i).unwrap();
            for n in 0..=9 {
                let std = standard_monomial_count(&i, n) as i64;
                assert_eq!(s.value(n as i64), std);
                let slice = graded_slice_dim(i.groebner().polynomials(), n).unwrap() as i64;
                assert_eq!(monomial_count(4, n as i64) as i64 - slice, std);
            }
            let p = s.polynomial();
            for n in p.valid_from()..p.valid_from() + 5 {
                assert_eq!(p.eval(n), s.value(n), "{gens:?} at {n}");
            }
        }
    }

    #[test]
    fn module_quotient_and_finite_length() {
        let r = Ring::new(&["z", "w"], 32003, crate::ring::MonomialOrder::Grevlex).unwrap();
        let i = ideal(&r, &["z^2", "z*w", "w^2"]);
        let s = HilbertSeries::of_ideal(&i).unwrap();
        assert_eq!(s.finite_values().unwrap(), vec![(0, 1), (1, 2)]);
        let free = HilbertSeries::of_free(2, &[-1, 3]);
        assert_eq!(free.value(-1), 1);
        assert_eq!(free.value(3), 5 + 1);
    }
}
