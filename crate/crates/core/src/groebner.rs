//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Vectors are sparse lists of `(component, monomial, coefficient)` terms
//! sorted decreasingly in a position-over-term order: a lower component
//! index beats any monomial of a higher one. Ideals are the rank-one case.

use std::cmp::Ordering;

use crate::ring::{Monomial, Polynomial, Ring, RingRef, MAX_VARS};

pub type Term = (u32, Monomial, u32);

/// A sparse vector of a free module; terms sorted decreasingly.
pub type ModVec = Vec<Term>;

#[inline]
pub fn term_cmp(ring: &Ring, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => ring.cmp(a.1, b.1),
        o => o,
    }
}

pub fn poly_to_vec(f: &Polynomial, comp: u32) -> ModVec {
    f.terms().iter().map(|&(m, c)| (comp, m, c)).collect()
}

/// Polynomial from the component-`comp` part of a vector.
pub fn vec_component(ring: &RingRef, v: &[Term], comp: u32) -> Polynomial {
    Polynomial::from_sorted(ring, v.iter().filter(|t| t.0 == comp).map(|t| (t.1, t.2)).collect())
}

/// Canonicalizes an arbitrary term list.
pub fn vec_from_terms(ring: &Ring, mut terms: Vec<Term>) -> ModVec {
    let p = ring.characteristic();
    terms.sort_by(|a, b| term_cmp(ring, (b.0, &b.1), (a.0, &a.1)));
    let mut out: ModVec = Vec::with_capacity(terms.len());
    for (k, m, c) in terms {
        let c = c % p;
        match out.last_mut() {
            Some(last) if last.0 == k && last.1 == m => last.2 = ring.field().add(last.2, c),
            _ => out.push((k, m, c)),
        }
    }
    out.retain(|t| t.2 != 0);
    out
}

/// Builds a vector from one polynomial per component.
pub fn vec_from_polys(entries: &[Polynomial]) -> ModVec {
    let mut out = Vec::new();
    for (k, f) in entries.iter().enumerate() {
        out.extend(f.terms().iter().map(|&(m, c)| (k as u32, m, c)));
    }
    out
}

/// `a + c * m * b`.
pub fn vec_add_scaled(ring: &Ring, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> ModVec {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Less
        } else if j == b.len() {
            Ordering::Greater
        } else {
            let bm = b[j].1.mul(m);
            term_cmp(ring, (a[i].0, &a[i].1), (b[j].0, &bm))
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                let v = f.mul(c, b[j].2);
                if v != 0 {
                    out.push((b[j].0, b[j].1.mul(m), v));
                }
                j += 1;
            }
            Ordering::Equal => {
                let v = f.add(a[i].2, f.mul(c, b[j].2));
                if v != 0 {
                    out.push((a[i].0, a[i].1, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn vec_scale(ring: &Ring, v: &[Term], c: u32) -> ModVec {
    let f = ring.field();
    if c == 0 {
        return Vec::new();
    }
    v.iter().map(|&(k, m, a)| (k, m, f.mul(a, c))).collect()
}

pub fn vec_mul_term(ring: &Ring, v: &[Term], m: &Monomial, c: u32) -> ModVec {
    let f = ring.field();
    if c == 0 {
        return Vec::new();
    }
    v.iter().map(|&(k, n, a)| (k, n.mul(m), f.mul(a, c))).collect()
}

/// Multiplies a vector by a polynomial.
pub fn vec_mul_poly(ring: &Ring, v: &[Term], p: &Polynomial) -> ModVec {
    let mut acc: ModVec = Vec::new();
    for (m, c) in p.terms() {
        acc = vec_add_scaled(ring, &acc, *c, m, v);
    }
    acc
}

pub fn vec_monic(ring: &Ring, v: &[Term]) -> ModVec {
    match v.first() {
        None => Vec::new(),
        Some(t) => vec_scale(ring, v, ring.field().inv(t.2)),
    }
}

/// Degree of a term with respect to component degrees.
#[inline]
pub fn term_degree(ring: &Ring, degrees: &[i64], t: &Term) -> i64 {
    ring.weighted_degree(&t.1) as i64 + degrees[t.0 as usize]
}

/// Largest term degree; `None` for the zero vector.
pub fn vec_degree(ring: &Ring, degrees: &[i64], v: &[Term]) -> Option<i64> {
    v.iter().map(|t| term_degree(ring, degrees, t)).max()
}

pub fn vec_is_homogeneous(ring: &Ring, degrees: &[i64], v: &[Term]) -> bool {
    let mut it = v.iter().map(|t| term_degree(ring, degrees, t));
    match it.next() {
        None => true,
        Some(d) => it.all(|e| e == d),
    }
}

/// Bit signature with `sev(a) & !sev(b) != 0` whenever `a` does not divide `b`.
#[inline]
fn sev(m: &Monomial, nvars: usize) -> u64 {
    let bits = (64 / nvars).min(16);
    let mut s = 0u64;
    for i in 0..nvars.min(MAX_VARS) {
        let e = m.exp(i) as usize;
        let k = e.min(bits);
        if k > 0 {
            s |= ((1u64 << k) - 1) << (i * bits);
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Gen(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct Queued {
    sugar: i64,
    degree: i64,
    item: Item,
    lcm: Monomial,
}

impl Queued {
    fn key(&self) -> (i64, i64, u8, usize, usize) {
        match self.item {
            Item::Gen(i) => (self.sugar, self.degree, 0, i, 0),
            Item::Pair(i, j) => (self.sugar, self.degree, 1, j, i),
        }
    }
}

/// Incremental Buchberger engine with sugar selection, the Gebauer–Möller
/// criteria and optional degree truncation.
pub struct GbEngine {
    ring: RingRef,
    degrees: Vec<i64>,
    rank_one: bool,
    basis: Vec<ModVec>,
    sugar: Vec<i64>,
    sevs: Vec<u64>,
    active: Vec<bool>,
    by_comp: Vec<Vec<usize>>,
    inputs: Vec<ModVec>,
    queue: Vec<Queued>,
    nvars: usize,
}

impl GbEngine {
    pub fn new(ring: &RingRef, degrees: Vec<i64>) -> Self {
        let rank = degrees.len();
        GbEngine {
            ring: ring.clone(),
            rank_one: rank == 1,
            degrees,
            basis: Vec::new(),
            sugar: Vec::new(),
            sevs: Vec::new(),
            active: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            inputs: Vec::new(),
            queue: Vec::new(),
            nvars: ring.nvars(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Queues a generator; it enters the basis when its degree is processed.
    pub fn add_generator(&mut self, v: ModVec) {
        if v.is_empty() {
            return;
        }
        let s = vec_degree(&self.ring, &self.degrees, &v).unwrap();
        let idx = self.inputs.len();
        self.inputs.push(v);
        self.queue.push(Queued { sugar: s, degree: s, item: Item::Gen(idx), lcm: Monomial::ONE });
    }

    /// Processes every queued item with sugar at most `max_degree`
    /// (everything when `None`).
    pub fn run(&mut self, max_degree: Option<i64>) {
        loop {
            let Some(pos) = self.next_index(max_degree) else { break };
            let q = self.queue.swap_remove(pos);
            let v = match q.item {
                Item::Gen(i) => std::mem::take(&mut self.inputs[i]),
                Item::Pair(i, j) => self.spoly(i, j, &q.lcm),
            };
            let r = self.reduce(v, true);
            if !r.is_empty() {
                let monic = vec_monic(&self.ring, &r);
                self.insert(monic, q.sugar);
            }
        }
    }

    fn next_index(&self, max_degree: Option<i64>) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, q) in self.queue.iter().enumerate() {
            if max_degree.is_some_and(|d| q.sugar > d) {
                continue;
            }
            match best {
                None => best = Some(k),
                Some(b) if q.key() < self.queue[b].key() => best = Some(k),
                _ => {}
            }
        }
        best
    }

    pub fn is_complete(&self) -> bool {
        self.queue.is_empty()
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> ModVec {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let mi = gi[0].1.quotient_of(lcm);
        let mj = gj[0].1.quotient_of(lcm);
        let a = vec_mul_term(&self.ring, &gi[1..], &mi, 1);
        let neg = self.ring.field().neg(1);
        vec_add_scaled(&self.ring, &a, neg, &mj, &gj[1..])
    }

    fn find_reducer(&self, comp: u32, m: &Monomial) -> Option<usize> {
        let s = sev(m, self.nvars);
        let mut fallback = None;
        for &k in &self.by_comp[comp as usize] {
            if self.sevs[k] & !s != 0 {
                continue;
            }
            if self.basis[k][0].1.divides(m) {
                if self.active[k] {
                    return Some(k);
                }
                if fallback.is_none() {
                    fallback = Some(k);
                }
            }
        }
        fallback
    }

    /// Reduces `v` by the current basis; `full` also reduces tail terms.
    pub fn reduce(&self, v: ModVec, full: bool) -> ModVec {
        let ring = &self.ring;
        let neg = |c: u32| ring.field().neg(c);
        let mut done: ModVec = Vec::new();
        let mut rest = v;
        let mut off = 0;
        while off < rest.len() {
            let (comp, m, c) = rest[off];
            match self.find_reducer(comp, &m) {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = g[0].1.quotient_of(&m);
                    // basis elements are monic
                    rest = vec_add_scaled(ring, &rest[off + 1..], neg(c), &q, &g[1..]);
                    off = 0;
                }
                None => {
                    if !full {
                        let mut out = done;
                        out.extend_from_slice(&rest[off..]);
                        return out;
                    }
                    done.push(rest[off]);
                    off += 1;
                }
            }
        }
        done
    }

    fn insert(&mut self, h: ModVec, sugar: i64) {
        let ring = self.ring.clone();
        let (comp, lead) = (h[0].0, h[0].1);
        let hidx = self.basis.len();
        let hdeg = ring.weighted_degree(&lead) as i64;

        // Gebauer–Möller: prune old pairs whose lcm is divisible by lead(h)
        self.queue.retain(|q| match q.item {
            Item::Gen(_) => true,
            Item::Pair(i, j) => {
                if self.basis[i][0].0 != comp || !lead.divides(&q.lcm) {
                    return true;
                }
                let li = self.basis[i][0].1.lcm(&lead);
                let lj = self.basis[j][0].1.lcm(&lead);
                li == q.lcm || lj == q.lcm
            }
        });

        // candidate new pairs
        let mut cands: Vec<(usize, Monomial, bool)> = self.by_comp[comp as usize]
            .iter()
            .filter(|&&i| self.active[i])
            .map(|&i| {
                let li = &self.basis[i][0].1;
                (i, li.lcm(&lead), self.rank_one && li.coprime(&lead))
            })
            .collect();
        // chain criterion among the new pairs
        let snapshot = cands.clone();
        cands.retain(|(_, l, _)| !snapshot.iter().any(|(_, l2, _)| l2 != l && l2.divides(l)));
        // equal lcms: keep one, unless one of them is coprime
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for (i, l, _) in &cands {
            if seen.contains(l) {
                continue;
            }
            seen.push(*l);
            let group_coprime = cands.iter().any(|(_, l2, cp)| l2 == l && *cp);
            if !group_coprime {
                kept.push((*i, *l));
            }
        }
        for (i, l) in kept {
            let ldeg = ring.weighted_degree(&l) as i64;
            let si = self.sugar[i] + ldeg - ring.weighted_degree(&self.basis[i][0].1) as i64;
            let sh = sugar + ldeg - hdeg;
            self.queue.push(Queued {
                sugar: si.max(sh),
                degree: ldeg + self.degrees[comp as usize],
                item: Item::Pair(i, hidx),
                lcm: l,
            });
        }

        for &k in &self.by_comp[comp as usize] {
            if self.active[k] && lead.divides(&self.basis[k][0].1) {
                self.active[k] = false;
            }
        }
        self.sevs.push(sev(&lead, self.nvars));
        self.basis.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        self.by_comp[comp as usize].push(hidx);
    }

    /// Current basis elements with minimal leads (not yet inter-reduced).
    pub fn minimal_elements(&self) -> Vec<&ModVec> {
        (0..self.basis.len()).filter(|&k| self.active[k]).map(|k| &self.basis[k]).collect()
    }

    /// Finishes the computation and returns the reduced basis.
    pub fn into_reduced(mut self) -> ModuleGb {
        self.run(None);
        self.reduced_snapshot()
    }

    /// Reduced basis of what has been computed so far.
    pub fn reduced_snapshot(&self) -> ModuleGb {
        let ring = self.ring.clone();
        let idx: Vec<usize> = (0..self.basis.len()).filter(|&k| self.active[k]).collect();
        let mut elems: Vec<ModVec> = Vec::with_capacity(idx.len());
        for &k in &idx {
            let g = &self.basis[k];
            let tail = self.reduce(g[1..].to_vec(), true);
            let mut v = vec![g[0]];
            v.extend(tail);
            elems.push(vec_monic(&ring, &v));
        }
        elems.sort_by(|a, b| term_cmp(&ring, (a[0].0, &a[0].1), (b[0].0, &b[0].1)));
        ModuleGb::from_reduced(&ring, self.degrees.clone(), elems)
    }
}

/// A reduced Gröbner basis of a submodule of `⊕ S(-degrees[k])`.
#[derive(Clone)]
pub struct ModuleGb {
    ring: RingRef,
    degrees: Vec<i64>,
    elems: Vec<ModVec>,
    sevs: Vec<u64>,
    by_comp: Vec<Vec<usize>>,
}

impl ModuleGb {
    fn from_reduced(ring: &RingRef, degrees: Vec<i64>, elems: Vec<ModVec>) -> Self {
        let mut by_comp = vec![Vec::new(); degrees.len()];
        let sevs = elems.iter().map(|e| sev(&e[0].1, ring.nvars())).collect();
        for (k, e) in elems.iter().enumerate() {
            by_comp[e[0].0 as usize].push(k);
        }
        ModuleGb { ring: ring.clone(), degrees, elems, sevs, by_comp }
    }

    /// Computes the reduced Gröbner basis of the submodule generated by `gens`.
    pub fn compute(ring: &RingRef, degrees: Vec<i64>, gens: Vec<ModVec>) -> Self {
        let mut e = GbEngine::new(ring, degrees);
        for g in gens {
            e.add_generator(g);
        }
        e.into_reduced()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn elements(&self) -> &[ModVec] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading monomials of component `comp`.
    pub fn leads_in(&self, comp: usize) -> Vec<Monomial> {
        self.by_comp[comp].iter().map(|&k| self.elems[k][0].1).collect()
    }

    fn find_reducer(&self, comp: u32, m: &Monomial) -> Option<usize> {
        let s = sev(m, self.ring.nvars());
        self.by_comp[comp as usize].iter().copied().find(|&k| self.sevs[k] & !s == 0 && self.elems[k][0].1.divides(m))
    }

    pub fn normal_form(&self, v: &[Term]) -> ModVec {
        let ring = &self.ring;
        let mut done: ModVec = Vec::new();
        let mut rest: ModVec = v.to_vec();
        let mut off = 0;
        while off < rest.len() {
            let (comp, m, c) = rest[off];
            match self.find_reducer(comp, &m) {
                Some(k) => {
                    let g = &self.elems[k];
                    let q = g[0].1.quotient_of(&m);
                    rest = vec_add_scaled(ring, &rest[off + 1..], ring.field().neg(c), &q, &g[1..]);
                    off = 0;
                }
                None => {
                    done.push(rest[off]);
                    off += 1;
                }
            }
        }
        done
    }

    pub fn contains(&self, v: &[Term]) -> bool {
        self.normal_form(v).is_empty()
    }

    /// Is `m * e_comp` a standard term?
    pub fn is_standard(&self, comp: usize, m: &Monomial) -> bool {
        self.find_reducer(comp as u32, m).is_none()
    }
}

/// Selects a minimal generating subset (homogeneous input) by processing
/// degrees in increasing order. Returns indices into `gens`.
pub fn minimal_generator_indices(ring: &RingRef, degrees: &[i64], gens: &[ModVec]) -> Vec<usize> {
    let mut order: Vec<(i64, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_empty())
        .map(|(k, g)| (vec_degree(ring, degrees, g).unwrap(), k))
        .collect();
    order.sort();
    let mut engine = GbEngine::new(ring, degrees.to_vec());
    let mut chosen = Vec::new();
    for (d, k) in order {
        engine.run(Some(d));
        let r = engine.reduce(gens[k].clone(), false);
        if !r.is_empty() {
            chosen.push(k);
            engine.add_generator(gens[k].clone());
        }
    }
    chosen.sort();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn gb(ring: &RingRef, gens: &[&str]) -> Vec<String> {
        let vs = gens.iter().map(|s| poly_to_vec(&parse_polynomial(ring, s).unwrap(), 0)).collect();
        let b = ModuleGb::compute(ring, vec![0], vs);
        b.elements().iter().map(|v| vec_component(ring, v, 0).to_string()).collect()
    }

    #[test]
    fn linear_basis() {
        let r = Ring::projective(32003);
        let mut g = gb(&r, &["x", "x+y"]);
        g.sort();
        assert_eq!(g, vec!["x", "y"]);
    }

    #[test]
    fn twisted_cubic() {
        let r = Ring::projective(32003);
        let g = gb(&r, &["x*z-y^2", "y*w-z^2", "x*w-y*z"]);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn module_syzygy_by_elimination() {
        // syzygies of [x, y]: GB of (x, e1), (y, e2) with F first
        let r = Ring::projective(32003);
        let x = parse_polynomial(&r, "x").unwrap();
        let y = parse_polynomial(&r, "y").unwrap();
        let one = Polynomial::one(&r);
        let zero = Polynomial::zero(&r);
        let g1 = vec_from_polys(&[x.clone(), one.clone(), zero.clone()]);
        let g2 = vec_from_polys(&[y.clone(), zero, one]);
        let b = ModuleGb::compute(&r, vec![0, 1, 1], vec![g1, g2]);
        let syz: Vec<&ModVec> = b.elements().iter().filter(|v| v[0].0 > 0).collect();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].len(), 2);
    }
}
