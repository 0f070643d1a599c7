//! Ideals with cached reduced Gröbner bases, and the ideal operations built
//! on them: elimination, intersection, colon and saturation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::groebner::{minimal_generator_indices, poly_to_vec, vec_component, ModuleGb};
use crate::ring::{Monomial, MonomialOrder, Polynomial, RingRef};

#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Arc<GroebnerBasis>>>,
}

/// A reduced Gröbner basis of an ideal.
pub struct GroebnerBasis {
    ring: RingRef,
    polys: Vec<Polynomial>,
    module: ModuleGb,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.leading_monomial().unwrap()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let nf = self.module.normal_form(&poly_to_vec(f, 0));
        vec_component(&self.ring, &nf, 0)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.module.contains(&poly_to_vec(f, 0))
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn as_module(&self) -> &ModuleGb {
        &self.module
    }
}

type CacheKey = String;

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<GroebnerBasis>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<GroebnerBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

const CACHE_LIMIT: usize = 8192;

fn cache_key(ring: &RingRef, gens: &[Polynomial]) -> CacheKey {
    let mut s = format!("{:?}|{}|{:?}|{:?}", ring.names(), ring.characteristic(), ring.weights(), ring.order());
    for g in gens {
        s.push('|');
        for (m, c) in g.terms() {
            s.push_str(&format!("{:?}{};", &m.exponents()[..ring.nvars()], c));
        }
    }
    s
}

fn compute_gb(ring: &RingRef, gens: &[Polynomial]) -> Arc<GroebnerBasis> {
    let key = cache_key(ring, gens);
    if let Some(hit) = cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let module = ModuleGb::compute(ring, vec![0], gens.iter().map(|g| poly_to_vec(g, 0)).collect());
    let polys = module.elements().iter().map(|v| vec_component(ring, v, 0)).collect();
    let gb = Arc::new(GroebnerBasis { ring: ring.clone(), polys, module });
    let mut w = cache().write().unwrap();
    if w.len() >= CACHE_LIMIT {
        w.clear();
    }
    w.entry(key).or_insert(gb).clone()
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: Arc::new(OnceLock::new()) }
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    /// Ideal generated by the listed variables.
    pub fn of_variables(ring: &RingRef, names: &[&str]) -> Result<Self> {
        let gens = names.iter().map(|n| Polynomial::var(ring, n)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ring, gens))
    }

    /// Ideal generated by all weight-one variables.
    pub fn irrelevant(ring: &RingRef) -> Self {
        let gens = (0..ring.nvars()).filter(|&i| ring.weights()[i] > 0).map(|i| Polynomial::var_at(ring, i)).collect();
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Reduced Gröbner basis, computed once and cached.
    pub fn groebner(&self) -> Arc<GroebnerBasis> {
        self.gb.get_or_init(|| compute_gb(&self.ring, &self.gens)).clone()
    }

    /// The same ideal presented by its reduced Gröbner basis.
    pub fn gb_ideal(&self) -> Ideal {
        let gb = self.groebner();
        let out = Ideal::new(&self.ring, gb.polys.clone());
        let _ = out.gb.set(gb);
        out
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.groebner().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        let gb = self.groebner();
        other.gens.iter().all(|g| gb.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Equality as ideals (comparison of reduced bases).
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        *self.ring == *other.ring && self.groebner().polys == other.groebner().polys
    }

    pub fn add(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, g))
    }

    pub fn with(&self, extra: &[Polynomial]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul_unchecked(b));
            }
        }
        Ok(Ideal::new(&self.ring, g))
    }

    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.product(self).unwrap();
        }
        acc.minimalized()
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Minimal homogeneous generators taken from the reduced basis.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        if !self.is_homogeneous() {
            return self.groebner().polys.clone();
        }
        let polys = self.groebner().polys.clone();
        let vecs: Vec<_> = polys.iter().map(|p| poly_to_vec(p, 0)).collect();
        minimal_generator_indices(&self.ring, &[0], &vecs).into_iter().map(|k| polys[k].clone()).collect()
    }

    /// Same ideal with a minimal generating set when homogeneous.
    pub fn minimalized(&self) -> Ideal {
        Ideal::new(&self.ring, self.minimal_generators())
    }

    /// Re-expresses the ideal in another ring sharing variable names.
    pub fn map_to(&self, target: &RingRef) -> Result<Ideal> {
        Ok(Ideal::new(target, self.gens.iter().map(|g| g.map_to(target)).collect::<Result<_>>()?))
    }

    pub fn substitute_scalar(&self, var: &str, value: i64) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.substitute_scalar(var, value)).collect::<Result<Vec<_>>>()?;
        let ring = match gens.first() {
            Some(g) => g.ring().clone(),
            None => {
                let v = self.ring.var_index(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
                self.ring.dropping(v)?
            }
        };
        Ok(Ideal::new(&ring, gens))
    }

    /// Generators of `I ∩ k[remaining variables]`, in the same ring.
    pub fn eliminate(&self, vars: &[&str]) -> Result<Ideal> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let idx = vars
            .iter()
            .map(|v| self.ring.var_index(v).ok_or_else(|| Error::UnknownVariable(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let er = self.ring.eliminating(&idx);
        let mapped = self.map_to(&er)?;
        let gb = mapped.groebner();
        let kept: Vec<Polynomial> = gb
            .polys
            .iter()
            .filter(|p| idx.iter().all(|&v| p.degree_in(v) == 0))
            .map(|p| p.map_to(&self.ring))
            .collect::<Result<_>>()?;
        Ok(Ideal::new(&self.ring, kept))
    }

    /// `I ∩ J` via `u I + (1 - u) J` and elimination of `u`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let (aux, u) = self.ring.with_eliminated_aux("u_")?;
        let uu = Polynomial::var_at(&aux, u);
        let one_minus_u = Polynomial::one(&aux).sub(&uu)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.map_to(&aux)?.mul_unchecked(&uu));
        }
        for g in &other.gens {
            gens.push(g.map_to(&aux)?.mul_unchecked(&one_minus_u));
        }
        let gb = Ideal::new(&aux, gens).groebner();
        let kept: Vec<Polynomial> =
            gb.polys.iter().filter(|p| p.degree_in(u) == 0).map(|p| p.map_to(&self.ring)).collect::<Result<_>>()?;
        Ok(Ideal::new(&self.ring, kept).reduced_presentation())
    }

    /// Presentation by the reduced basis (minimal generators when homogeneous).
    pub fn reduced_presentation(&self) -> Ideal {
        if self.is_homogeneous() {
            self.minimalized()
        } else {
            self.gb_ideal()
        }
    }

    /// `I : f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if **f.ring() != *self.ring {
            return Err(Error::RingMismatch);
        }
        if self.contains(f) {
            return Ok(Ideal::unit(&self.ring));
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![f.clone()]))?;
        let gens = inter
            .gens
            .iter()
            .map(|g| exact_division(g, f).ok_or_else(|| Error::Invalid("intersection element not divisible".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I : J = ∩_j (I : f_j)`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            let q = self.quotient_by(f)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `I : J^∞` by iterated colon until the reduced basis stabilizes.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if other.gens.len() == 1 {
            return self.saturate_by(&other.gens[0]);
        }
        if self.is_homogeneous() && other.is_homogeneous() && is_irrelevant(other) && self.ring.parameter().is_none() {
            return self.saturate_irrelevant();
        }
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if next.same_ideal(&cur) {
                return Ok(cur.reduced_presentation());
            }
            cur = next;
        }
    }

    /// `I : f^∞` via `I + (1 - u f)` and elimination of `u`.
    pub fn saturate_by(&self, f: &Polynomial) -> Result<Ideal> {
        if **f.ring() != *self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        if f.len() == 1 && self.is_homogeneous() && self.ring.parameter().is_none() {
            let m = f.leading_monomial().unwrap();
            if (0..self.ring.nvars()).filter(|&i| m.exp(i) > 0).count() == 1 {
                let v = (0..self.ring.nvars()).find(|&i| m.exp(i) > 0).unwrap();
                return self.saturate_variable(v);
            }
        }
        let (aux, u) = self.ring.with_eliminated_aux("u_")?;
        let uu = Polynomial::var_at(&aux, u);
        let rel = Polynomial::one(&aux).sub(&uu.mul_unchecked(&f.map_to(&aux)?))?;
        let mut gens = vec![rel];
        for g in &self.gens {
            gens.push(g.map_to(&aux)?);
        }
        let gb = Ideal::new(&aux, gens).groebner();
        let kept: Vec<Polynomial> =
            gb.polys.iter().filter(|p| p.degree_in(u) == 0).map(|p| p.map_to(&self.ring)).collect::<Result<_>>()?;
        Ok(Ideal::new(&self.ring, kept).reduced_presentation())
    }

    /// `I : v^∞` for a homogeneous ideal and a variable `v`, by putting `v`
    /// last in grevlex and dividing the basis by powers of `v`.
    pub fn saturate_variable(&self, v: usize) -> Result<Ideal> {
        if self.ring.weights().iter().any(|&w| w != 1) || !self.is_homogeneous() {
            return self.saturate_by(&Polynomial::var_at(&self.ring, v));
        }
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        perm.push(v);
        let pr = self.ring.permuted(&perm).with_order(MonomialOrder::Grevlex);
        let gb = self.map_to(&pr)?.groebner();
        let vi = n - 1;
        let mut gens = Vec::new();
        for p in &gb.polys {
            let e = p.terms().iter().map(|(m, _)| m.exp(vi)).min().unwrap_or(0);
            let q = p.div_monomial(&Monomial::var(vi, e)).unwrap();
            gens.push(q.map_to(&self.ring)?);
        }
        Ok(Ideal::new(&self.ring, gens).reduced_presentation())
    }

    /// Saturation by the irrelevant ideal: `∩_v (I : v^∞)`, short-cut as
    /// soon as one variable is a non-zero-divisor.
    pub fn saturate_irrelevant(&self) -> Result<Ideal> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_unit() {
            return Ok(self.clone());
        }
        let vars: Vec<usize> = (0..self.ring.nvars()).filter(|&i| self.ring.weights()[i] > 0).collect();
        let mut parts = Vec::new();
        // last variables first: for curves these are usually regular
        for &v in vars.iter().rev() {
            let s = self.saturate_variable(v)?;
            if s.same_ideal(self) {
                return Ok(self.reduced_presentation());
            }
            parts.push(s);
        }
        let mut acc = parts.pop().unwrap();
        while let Some(p) = parts.pop() {
            if acc.contains_ideal(&p) {
                acc = p;
            } else if !p.contains_ideal(&acc) {
                acc = acc.intersect(&p)?;
            }
        }
        Ok(acc.reduced_presentation())
    }

    /// `I` is saturated with respect to the irrelevant ideal.
    pub fn is_saturated(&self) -> Result<bool> {
        Ok(self.saturate_irrelevant()?.same_ideal(self))
    }

    /// Is `I ⊆ J^k` (e.g. thickness tests)?
    pub fn is_contained_in(&self, other: &Ideal) -> bool {
        other.contains_ideal(self)
    }
}

fn is_irrelevant(i: &Ideal) -> bool {
    let ring = i.ring();
    let gb = i.groebner();
    let leads = gb.leading_monomials();
    (0..ring.nvars()).filter(|&v| ring.weights()[v] > 0).all(|v| leads.iter().any(|m| *m == Monomial::var(v, 1)))
        && gb.polys.len() == ring.weights().iter().filter(|&&w| w > 0).count()
        && gb.polys.iter().all(|p| p.len() == 1)
}

/// Exact division `g / f`, if it exists.
pub fn exact_division(g: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    let ring = g.ring();
    let (lf, cf) = *f.leading()?;
    let inv = ring.field().inv(cf);
    let mut rest = g.clone();
    let mut q = Polynomial::zero(ring);
    while let Some(&(m, c)) = rest.leading() {
        if !lf.divides(&m) {
            return None;
        }
        let t = lf.quotient_of(&m);
        let coef = ring.field().mul(c, inv);
        q = q.combine(&Polynomial::monomial(ring, t, coef), 1);
        rest = rest.combine(&f.mul_term(&t, coef), ring.field().neg(1));
    }
    Some(q)
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect())
    }

    #[test]
    fn double_line_basis_is_itself() {
        let r = Ring::projective(32003);
        let i = ideal(&r, &["x^2", "x*y", "y^2", "x*w-y*z"]);
        assert_eq!(i.groebner().polynomials().len(), 4);
        assert!(i.gb_ideal().same_ideal(&i));
    }

    #[test]
    fn normal_forms() {
        let r = Ring::projective(32003);
        let xy = ideal(&r, &["x", "y"]);
        assert!(xy.normal_form(&parse_polynomial(&r, "x^2").unwrap()).is_zero());
        let dl = ideal(&r, &["x^2", "x*y", "y^2", "x*z-y*w"]);
        assert!(dl.contains(&parse_polynomial(&r, "x*z*y - y^2*w").unwrap()));
        let z5 = parse_polynomial(&r, "z^5").unwrap();
        assert_eq!(dl.normal_form(&z5), z5);
    }

    #[test]
    fn elimination_examples() {
        let r = Ring::new(&["x", "y", "z"], 32003, MonomialOrder::Grevlex).unwrap();
        let i = ideal(&r, &["x-z^2", "y-z^3"]);
        let e = i.eliminate(&["z"]).unwrap();
        assert!(e.contains(&parse_polynomial(&r, "x^3-y^2").unwrap()));
        assert!(e.generators().iter().all(|g| g.degree_in(2) == 0));
        let f = Ring::family(32003);
        let j = ideal(&f, &["t*x", "t-1"]);
        let e = j.eliminate(&["t"]).unwrap();
        assert!(e.same_ideal(&ideal(&f, &["x"])));
        assert!(i.eliminate(&[]).unwrap().same_ideal(&i));
    }

    #[test]
    fn intersections() {
        let r = Ring::projective(32003);
        let a = ideal(&r, &["x", "y"]);
        let b = ideal(&r, &["z", "w"]);
        assert!(a.intersect(&b).unwrap().same_ideal(&ideal(&r, &["x*z", "x*w", "y*z", "y*w"])));
        let c = ideal(&r, &["x", "z"]);
        assert!(a.intersect(&c).unwrap().same_ideal(&ideal(&r, &["x", "y*z"])));
    }

    #[test]
    fn colon_and_saturation() {
        let r = Ring::projective(32003);
        let x2 = ideal(&r, &["x^2"]);
        assert!(x2.quotient(&ideal(&r, &["x"])).unwrap().same_ideal(&ideal(&r, &["x"])));
        let two = ideal(&r, &["x*z", "x*w", "y*z", "y*w"]);
        assert!(two.quotient(&ideal(&r, &["z", "w"])).unwrap().same_ideal(&ideal(&r, &["x", "y"])));
        // in k[x,y] the embedded point sits at the irrelevant ideal
        let plane = Ring::new(&["x", "y"], 32003, MonomialOrder::Grevlex).unwrap();
        let emb = ideal(&plane, &["x^2", "x*y"]);
        let sat = emb.saturate(&Ideal::irrelevant(&plane)).unwrap();
        assert!(sat.same_ideal(&ideal(&plane, &["x"])), "{sat}");
        let iterated = emb.quotient(&Ideal::irrelevant(&plane)).unwrap();
        assert!(iterated.same_ideal(&ideal(&plane, &["x"])));
        // in P3 the same ideal has an embedded line, which saturation keeps
        let emb3 = ideal(&r, &["x^2", "x*y"]);
        assert!(emb3.saturate(&Ideal::irrelevant(&r)).unwrap().same_ideal(&emb3));
        let point = ideal(&r, &["x^2", "x*y", "x*z", "x*w"]);
        assert!(point.saturate(&Ideal::irrelevant(&r)).unwrap().same_ideal(&ideal(&r, &["x"])));
        let i = ideal(&r, &["x^2", "y"]);
        assert!(i.saturate(&i).unwrap().is_unit());
    }

    #[test]
    fn saturation_by_parameter() {
        let f = Ring::family(32003);
        let j = ideal(&f, &["t*x", "t^2*y"]);
        assert!(j.saturate_by(&parse_polynomial(&f, "t").unwrap()).unwrap().same_ideal(&ideal(&f, &["x", "y"])));
    }
}
