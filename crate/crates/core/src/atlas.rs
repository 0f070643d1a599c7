//! Explicit degree-four curves: multiple structures on the line `x = y = 0`,
//! Ferrand doublings, extremal curves, unions with lines and the families
//! connecting them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{cm_part_on_line, degree_genus};
use crate::error::{Error, Result};
use crate::hilbert::{HilbertPolynomial, HilbertSeries};
use crate::ideal::Ideal;
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::parse::parse_polynomial;
use crate::ring::{Monomial, Polynomial, Ring, RingRef};

/// Parses a polynomial built from a format string.
pub(crate) fn poly(ring: &RingRef, s: &str) -> Polynomial {
    parse_polynomial(ring, s).unwrap_or_else(|e| panic!("internal literal `{s}`: {e}"))
}

pub(crate) fn polys(ring: &RingRef, items: &[String]) -> Vec<Polynomial> {
    items.iter().map(|s| poly(ring, s)).collect()
}

pub(crate) fn ideal_of(ring: &RingRef, items: &[String]) -> Ideal {
    Ideal::new(ring, polys(ring, items))
}

/// The support line `x = y = 0`.
pub fn support_line(ring: &RingRef) -> Ideal {
    ideal_of(ring, &["x".into(), "y".into()])
}

/// `q = x z^(a+1) - y w^(a+1)`, the last generator of the standard double
/// line of type `a`.
pub fn standard_q(ring: &RingRef, a: i64) -> Polynomial {
    poly(ring, &format!("x*z^{e}-y*w^{e}", e = a + 1))
}

/// Whether two polynomials define the same Hilbert polynomial.
pub fn same_hilbert_polynomial(p: &HilbertPolynomial, q: &HilbertPolynomial) -> bool {
    p.dim == q.dim && (0..=p.dim as i64 + 1).all(|n| p.eval(n) == q.eval(n))
}

/// Type `(a, b, c)` of a quasiprimitive multiple line; `b` and `c` are
/// absent for lower multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiLineType {
    pub a: i64,
    pub b: Option<i64>,
    pub c: Option<i64>,
}

impl MultiLineType {
    pub fn double(a: i64) -> Self {
        MultiLineType { a, b: None, c: None }
    }

    pub fn triple(a: i64, b: i64) -> Self {
        MultiLineType { a, b: Some(b), c: None }
    }

    pub fn four(a: i64, b: i64, c: i64) -> Self {
        MultiLineType { a, b: Some(b), c: Some(c) }
    }

    pub fn multiplicity(&self) -> i64 {
        2 + self.b.is_some() as i64 + self.c.is_some() as i64
    }

    /// Arithmetic genus from the filtration quotients `O(a)`, `O(2a+b)`,
    /// `O(3a+c)`.
    pub fn genus(&self) -> i64 {
        match (self.b, self.c) {
            (None, _) => -self.a - 1,
            (Some(b), None) => -3 * self.a - b - 2,
            (Some(b), Some(c)) => -6 * self.a - b - c - 3,
        }
    }

    /// Checks `a >= 0` and `0 <= b <= c` for four-lines.
    pub fn validate_quasiprimitive(&self) -> Result<()> {
        if self.a < 0 {
            return Err(Error::OutOfRange(format!("a = {} must be nonnegative", self.a)));
        }
        if let Some(b) = self.b {
            if b < 0 {
                return Err(Error::OutOfRange(format!("b = {b} must be nonnegative")));
            }
            if let Some(c) = self.c {
                if c < b {
                    return Err(Error::OutOfRange(format!("c = {c} must be at least b = {b}")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiLineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.b, self.c) {
            (None, _) => write!(f, "({})", self.a),
            (Some(b), None) => write!(f, "({}, {b})", self.a),
            (Some(b), Some(c)) => write!(f, "({}, {b}, {c})", self.a),
        }
    }
}

/// A family of curves over the parameter line, given by an ideal in a ring
/// with a weight-zero parameter `t`.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub name: String,
    pub ideal: Ideal,
    pub generic_fiber: String,
    pub special_fiber: String,
}

impl CurveFamily {
    pub fn new(name: &str, ideal: Ideal, generic_fiber: &str, special_fiber: &str) -> Result<Self> {
        if ideal.ring().parameter().is_none() {
            return Err(Error::Invalid("family ring needs a parameter `t`".into()));
        }
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("family {name}")));
        }
        Ok(CurveFamily { name: name.into(), ideal, generic_fiber: generic_fiber.into(), special_fiber: special_fiber.into() })
    }

    pub fn parameter_name(&self) -> String {
        let r = self.ideal.ring();
        r.names()[r.parameter().unwrap()].clone()
    }
}

fn binary_form_degree(p: &Polynomial) -> Result<i64> {
    let ring = p.ring();
    if p.is_zero() {
        return Ok(-1);
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous(p.to_string()));
    }
    let ok = p.terms().iter().all(|(m, _)| {
        (0..ring.nvars()).all(|i| m.exp(i) == 0 || matches!(ring.names()[i].as_str(), "z" | "w"))
    });
    if !ok {
        return Err(Error::Invalid(format!("`{p}` is not a form in z, w")));
    }
    Ok(p.degree().unwrap() as i64)
}

/// Whether binary forms in `z, w` have no common zero on the line: with
/// `D` the largest degree, their multiples span every form of degree
/// `2D - 1`.
pub fn forms_without_common_zero(forms: &[Polynomial]) -> Result<bool> {
    let Some(first) = forms.iter().find(|p| !p.is_zero()) else { return Ok(false) };
    let degrees = forms.iter().map(binary_form_degree).collect::<Result<Vec<i64>>>()?;
    let top = *degrees.iter().max().unwrap();
    if degrees.contains(&0) {
        return Ok(true);
    }
    let line = Ring::line(first.ring().characteristic());
    let n = (2 * top - 1) as u32;
    let target = line.monomials_of_degree(n);
    let mut rows = Vec::new();
    for (p, &d) in forms.iter().zip(&degrees) {
        if d < 0 {
            continue;
        }
        let p = p.map_to(&line)?;
        for m in line.monomials_of_degree(n - d as u32) {
            let prod = p.mul_term(&m, 1);
            rows.push(target.iter().map(|t| prod.coefficient(t)).collect::<Vec<u32>>());
        }
    }
    Ok(linalg::rank(&rows, line.field()) == target.len())
}

/// The ideal `(x, y) (m_1, ..., m_k) + {sum s_i m_i : sum s_i p_i = 0}`,
/// the kernel of the map onto a line bundle on `x = y = 0` sending `m_i` to
/// `p_i`. The `p_i` may involve every variable except `x, y`.
pub fn kernel_onto_line(ring: &RingRef, gens: &[Polynomial], images: &[Polynomial]) -> Result<Ideal> {
    if gens.len() != images.len() {
        return Err(Error::Invalid("one image per generator".into()));
    }
    let (xi, yi) = match (ring.var_index("x"), ring.var_index("y")) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Invalid("ring needs x and y".into())),
    };
    let line = ring.dropping(yi)?.dropping(xi)?;
    let imgs: Vec<Polynomial> = images.iter().map(|p| p.map_to(&line)).collect::<Result<_>>()?;
    let shift = images
        .iter()
        .zip(gens)
        .find(|(p, _)| !p.is_zero())
        .map(|(p, m)| ring.weighted_degree(&p.leading_monomial().unwrap()) as i64 - m.degree().unwrap() as i64)
        .ok_or_else(|| Error::Degenerate("all images vanish".into()))?;
    let col_degrees: Vec<i64> = gens.iter().map(|m| m.degree().unwrap_or(0) as i64).collect();
    let row = PolyMatrix::new(&line, vec![imgs])?.with_degrees(vec![-shift], col_degrees)?;
    let syz = row.syzygies();
    let mut out: Vec<Polynomial> = Vec::new();
    for l in [xi, yi] {
        let v = Polynomial::var_at(ring, l);
        out.extend(gens.iter().map(|m| m.mul_unchecked(&v)));
    }
    for k in 0..syz.ncols() {
        let mut acc = Polynomial::zero(ring);
        for (i, m) in gens.iter().enumerate() {
            let s = syz.get(i, k);
            if !s.is_zero() {
                acc = acc.combine(&s.map_to(ring)?.mul_unchecked(m), 1);
            }
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
    Ok(Ideal::new(ring, out).reduced_presentation())
}

/// `(x^2, xy, y^2, x g - y f)`: the double structure of genus `-a-1` on
/// `x = y = 0` given by coprime forms `f, g` of degree `a + 1` in `z, w`.
pub fn double_line(ring: &RingRef, a: i64, f: &Polynomial, g: &Polynomial) -> Result<Ideal> {
    if a < -1 {
        return Err(Error::OutOfRange(format!("a = {a} must be at least -1")));
    }
    for p in [f, g] {
        let d = binary_form_degree(p)?;
        if d != a + 1 && !p.is_zero() {
            return Err(Error::Invalid(format!("`{p}` must have degree {}", a + 1)));
        }
    }
    if !forms_without_common_zero(&[f.clone(), g.clone()])? {
        return Err(Error::Degenerate("f and g have a common zero".into()));
    }
    let x = poly(ring, "x");
    let y = poly(ring, "y");
    let last = x.mul_unchecked(g).sub(&y.mul_unchecked(f))?;
    let mut gens = polys(ring, &["x^2".into(), "x*y".into(), "y^2".into()]);
    gens.push(last);
    Ok(Ideal::new(ring, gens))
}

/// The double line with `f = z^(a+1)`, `g = w^(a+1)`, i.e. last generator
/// `x w^(a+1) - y z^(a+1)`.
pub fn standard_double_line(ring: &RingRef, a: i64) -> Result<Ideal> {
    let e = a + 1;
    double_line(ring, a, &poly(ring, &format!("z^{e}")), &poly(ring, &format!("w^{e}")))
}

/// The double line `(x, y)^2 + (x z^(a+1) - y w^(a+1))`, to which the line
/// `x = w = 0` is tangent.
pub fn tangent_double_line(ring: &RingRef, a: i64) -> Result<Ideal> {
    let e = a + 1;
    double_line(ring, a, &poly(ring, &format!("w^{e}")), &poly(ring, &format!("z^{e}")))
}

/// Reduced curves that can be doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FerrandSupport {
    /// `x = y = 0`, parametrized by `(0, 0, z, w)`.
    Line,
    /// `w = xz - y^2 = 0`, parametrized by `(z^2, zw, w^2, 0)`.
    Conic,
}

impl FerrandSupport {
    pub fn ideal(&self, ring: &RingRef) -> Ideal {
        ideal_of(ring, &self.equations())
    }

    fn equations(&self) -> Vec<String> {
        match self {
            FerrandSupport::Line => vec!["x".into(), "y".into()],
            FerrandSupport::Conic => vec!["w".into(), "x*z-y^2".into()],
        }
    }

    /// Pullback degree of a hyperplane.
    fn scale(&self) -> i64 {
        match self {
            FerrandSupport::Line => 1,
            FerrandSupport::Conic => 2,
        }
    }

    fn parametrization(&self, line: &RingRef) -> Vec<Polynomial> {
        let items: [&str; 4] = match self {
            FerrandSupport::Line => ["0", "0", "z", "w"],
            FerrandSupport::Conic => ["z^2", "z*w", "w^2", "0"],
        };
        items.iter().map(|s| poly(line, s)).collect()
    }
}

/// Ferrand doubling of a line or conic `C` along the surjection of the
/// conormal sheaf onto a line bundle `L` of degree `l` on `C ≅ P1` sending
/// the two equations of `C` to `u, v` (binary forms in `z, w` in the
/// parameter of `C`). The result has degree `2 deg C` and genus `-1 - l`.
/// Its ideal is computed degree by degree as the kernel of `I_C -> L`.
pub fn ferrand_double(ring: &RingRef, support: FerrandSupport, u: &Polynomial, v: &Polynomial) -> Result<Ideal> {
    let line = Ring::line(ring.characteristic());
    let u = u.map_to(&line)?;
    let v = v.map_to(&line)?;
    let eqs = polys(ring, &support.equations());
    let e = support.scale();
    let du = binary_form_degree(&u)?;
    let dv = binary_form_degree(&v)?;
    let l = du - e * eqs[0].degree().unwrap() as i64;
    if du < 0 || dv < 0 || dv - e * eqs[1].degree().unwrap() as i64 != l {
        return Err(Error::Invalid(format!("u, v must have degrees {} and {}", l + e, l + 2 * e)));
    }
    if !forms_without_common_zero(&[u.clone(), v.clone()])? {
        return Err(Error::Degenerate("u, v have a common zero: the map is not surjective".into()));
    }
    let genus = -1 - l;
    let degree = 2 * e;
    let param = support.parametrization(&line);
    let targets = [u, v];
    let mut gens: Vec<Polynomial> = Vec::new();
    let cap = 2 * (l + 2 * e).max(0) + 8;
    for n in 1..=cap {
        let target_basis = line.monomials_of_degree((e * n + l).max(0) as u32);
        if e * n + l < 0 {
            continue;
        }
        let mut sources = Vec::new();
        let mut rows = Vec::new();
        for (k, q) in eqs.iter().enumerate() {
            let dq = q.degree().unwrap() as i64;
            if n < dq {
                continue;
            }
            for m in ring.monomials_of_degree((n - dq) as u32) {
                let img = Polynomial::monomial(ring, m, 1).compose(&line, &param).mul_unchecked(&targets[k]);
                rows.push(target_basis.iter().map(|t| img.coefficient(t)).collect::<Vec<u32>>());
                sources.push(q.mul_term(&m, 1));
            }
        }
        for combo in linalg::left_kernel(&rows, target_basis.len(), line.field()) {
            let mut acc = Polynomial::zero(ring);
            for (c, s) in combo.iter().zip(&sources) {
                if *c != 0 {
                    acc = acc.combine(s, *c);
                }
            }
            if !acc.is_zero() {
                gens.push(acc);
            }
        }
        if gens.is_empty() {
            continue;
        }
        let j = Ideal::new(ring, gens.clone()).minimalized();
        gens = j.generators().to_vec();
        let hp = HilbertSeries::of_ideal(&j)?.polynomial();
        if hp.dim == 2 && hp.degree() == degree && hp.genus() == Some(genus) {
            return j.saturate_irrelevant();
        }
    }
    Err(Error::Invalid("kernel did not stabilize".into()))
}

/// Quasiprimitive triple line obtained from a surface `h` through the
/// double line `Z`: the locally Cohen-Macaulay part of `(I_Y I_Z, h)`.
pub fn phi_triple(iz: &Ideal, h: &Polynomial) -> Result<Ideal> {
    let ring = iz.ring();
    let iy = support_line(ring);
    if !h.is_homogeneous() || h.is_zero() {
        return Err(Error::NotHomogeneous(h.to_string()));
    }
    if !iz.contains(h) {
        return Err(Error::Invalid("h does not vanish on Z".into()));
    }
    if iy.power(2).contains(h) {
        return Err(Error::Invalid("h contains the first infinitesimal neighbourhood of the line".into()));
    }
    let (dz, gz) = degree_genus(iz)?;
    if dz != 2 || !iz.contains_ideal(&iy.power(2)) || !iy.contains_ideal(iz) {
        return Err(Error::Invalid("Z must be a double structure on x = y = 0".into()));
    }
    let a = -1 - gz;
    let deg = h.degree().unwrap() as i64;
    if deg < a + 2 {
        return Err(Error::OutOfRange(format!("h has degree {deg} below a + 2 = {}", a + 2)));
    }
    let mut gens = iy.product(iz)?.generators().to_vec();
    gens.push(h.clone());
    let i = Ideal::new(ring, gens).saturate_irrelevant()?;
    cm_part_on_line(&i)
}

/// Thick four-line of genus `g`: `I_Y^3` plus the pullback of the kernel of
/// `(p_1, p_2, p_3) : O(-2)^3 -> O(-g-1)` on the line, the `p_i` being forms
/// of degree `1 - g` in `z, w` without common zero.
pub fn thick_4line(ring: &RingRef, g: i64, p: &[Polynomial; 3]) -> Result<Ideal> {
    if g > 1 {
        return Err(Error::OutOfRange(format!("thick four-lines need g <= 1, got {g}")));
    }
    for q in p {
        if binary_form_degree(q)? != 1 - g {
            return Err(Error::Invalid(format!("`{q}` must be a form of degree {} in z, w", 1 - g)));
        }
    }
    if !forms_without_common_zero(p)? {
        return Err(Error::Degenerate("the forms have a common zero: the map is not surjective".into()));
    }
    let gens = polys(ring, &["x^2".into(), "x*y".into(), "y^2".into()]);
    kernel_onto_line(ring, &gens, p)
}

/// `(x^2, xy, y^4, x z^(3-g) - y^3 w^(1-g))`, an extremal four-line of
/// genus `g` containing the plane cubic `x = y^3 = 0`.
pub fn extremal_quartic(ring: &RingRef, g: i64) -> Result<Ideal> {
    if g > 0 {
        return Err(Error::OutOfRange(format!("extremal quartics here need g <= 0, got {g}")));
    }
    Ok(ideal_of(
        ring,
        &["x^2".into(), "x*y".into(), "y^4".into(), format!("x*z^{}-y^3*w^{}", 3 - g, 1 - g)],
    ))
}

/// `(x^2, xy, y^3, x z^(3a+b+3) - y^2 w^(3a+b+2))`, the extremal triple line
/// of genus `-3a-b-2` arising as the limit of triple lines of type `(a, b)`.
pub fn extremal_triple(ring: &RingRef, a: i64, b: i64) -> Result<Ideal> {
    if a < 0 || b < 0 {
        return Err(Error::OutOfRange(format!("type ({a}, {b}) needs a, b >= 0")));
    }
    let k = 3 * a + b;
    Ok(ideal_of(ring, &["x^2".into(), "x*y".into(), "y^3".into(), format!("x*z^{}-y^2*w^{}", k + 3, k + 2)]))
}

/// Length of the zero-dimensional scheme `V(I + J)`.
pub fn intersection_length(i: &Ideal, j: &Ideal) -> Result<i64> {
    let s = HilbertSeries::of_ideal(&i.add(j)?)?;
    let hp = s.polynomial();
    match hp.dim {
        0 => Ok(0),
        1 => Ok(hp.eval(hp.valid_from().max(0))),
        _ => Err(Error::Invalid("the schemes share a curve".into())),
    }
}

#[derive(Clone, Debug)]
pub struct UnionReport {
    pub ideal: Ideal,
    pub degree: i64,
    pub genus: i64,
    /// `g(C) - g(C1) - g(C2) + 1`.
    pub length: i64,
}

/// Schematic union of two curves with the length of their intersection
/// read off the genus defect.
pub fn union_curves(i: &Ideal, j: &Ideal) -> Result<UnionReport> {
    let (d1, g1) = degree_genus(i)?;
    let (d2, g2) = degree_genus(j)?;
    let ideal = i.intersect(j)?;
    let (degree, genus) = degree_genus(&ideal)?;
    if degree != d1 + d2 {
        return Err(Error::Invalid("the curves share a component".into()));
    }
    Ok(UnionReport { ideal, degree, genus, length: genus - g1 - g2 + 1 })
}

/// The families of triple lines union a line meeting it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WlKind {
    /// `length(W ∩ L) = 3`, `b = -3a - g`.
    F1,
    /// `length(W ∩ L) = 2 = length(Z ∩ L)`, `b = -3a - g - 1`.
    F2,
    /// `length(W ∩ L) = 2`, `length(Z ∩ L) = 1`, `b = -3a - g - 1`.
    F3,
    /// `length(W ∩ L) = 1`, `b = -3a - g - 2`.
    F4,
}

impl WlKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(WlKind::F1),
            "F2" => Ok(WlKind::F2),
            "F3" => Ok(WlKind::F3),
            "F4" => Ok(WlKind::F4),
            _ => Err(Error::Invalid(format!("unknown family `{s}`"))),
        }
    }

    /// `b(W)` for given `a` and total genus `g`.
    pub fn b(&self, a: i64, g: i64) -> i64 {
        match self {
            WlKind::F1 => -3 * a - g,
            WlKind::F2 | WlKind::F3 => -3 * a - g - 1,
            WlKind::F4 => -3 * a - g - 2,
        }
    }

    pub fn lengths(&self) -> (i64, i64) {
        match self {
            WlKind::F1 => (3, 2),
            WlKind::F2 => (2, 2),
            WlKind::F3 => (2, 1),
            WlKind::F4 => (1, 1),
        }
    }

    /// Nonempty range of `a`: `0 <= a <= -g/3` for `F1`, and
    /// `0 <= a < (-g-1)/3` otherwise.
    pub fn in_range(&self, a: i64, g: i64) -> bool {
        match self {
            WlKind::F1 => a >= 0 && 3 * a <= -g,
            _ => a >= 0 && 3 * a < -g - 1,
        }
    }

    /// Equations of the line `L`.
    pub fn line(&self) -> [&'static str; 2] {
        match self {
            WlKind::F1 | WlKind::F2 => ["x", "w"],
            WlKind::F3 | WlKind::F4 => ["x", "z"],
        }
    }
}

impl fmt::Display for WlKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct WlMember {
    pub kind: WlKind,
    pub a: i64,
    pub b: i64,
    pub triple: Ideal,
    pub line: Ideal,
    pub curve: Ideal,
    pub length_w: i64,
    pub length_z: i64,
}

/// The surface `h` cutting the triple line of an explicit member of `kind`.
pub fn wl_surface(ring: &RingRef, kind: WlKind, a: i64, b: i64) -> Polynomial {
    let q = format!("(x*z^{e}-y*w^{e})", e = a + 1);
    let s = match kind {
        WlKind::F1 | WlKind::F3 => format!("z^{b}*{q}-x^2*w^{}", a + b),
        WlKind::F2 => format!("z^{b}*{q}-x^2*w^{ab}+y^2*z^{ab}", ab = a + b),
        WlKind::F4 => format!("(z^{b}+w^{b})*{q}-x^2*w^{}", a + b),
    };
    poly(ring, &s)
}

/// Explicit member `W ∪ L` of the family `kind` with genus `g`.
pub fn wl_family_member(ring: &RingRef, kind: WlKind, a: i64, g: i64) -> Result<WlMember> {
    if !kind.in_range(a, g) {
        return Err(Error::OutOfRange(format!("{kind} is empty for a = {a}, g = {g}")));
    }
    let b = kind.b(a, g);
    let iz = tangent_double_line(ring, a)?;
    let iy = support_line(ring);
    let h = wl_surface(ring, kind, a, b);
    let mut gens = iy.product(&iz)?.generators().to_vec();
    gens.push(h);
    let w = Ideal::new(ring, gens).reduced_presentation();
    let [l1, l2] = kind.line();
    let line = ideal_of(ring, &[l1.into(), l2.into()]);
    let union = union_curves(&w, &line)?;
    let length_z = intersection_length(&iz, &line)?;
    let (lw, lz) = kind.lengths();
    if union.genus != g || union.length != lw || length_z != lz {
        return Err(Error::Invalid(format!(
            "{kind} witness has genus {}, lengths ({}, {length_z})",
            union.genus, union.length
        )));
    }
    Ok(WlMember { kind, a, b, triple: w, line, curve: union.ideal, length_w: lw, length_z })
}

/// The matrices of the resolution of the triple-line family degenerating
/// to a thickened line, and the map onto the line defining the four-lines.
#[derive(Clone, Debug)]
pub struct ThinToThick {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub m1: PolyMatrix,
    pub m2: PolyMatrix,
    pub m3: PolyMatrix,
    pub p: PolyMatrix,
}

/// Which binary forms play `f` and `g` in the row `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PConvention {
    /// `f = z^(a+1)`, `g = w^(a+1)` as in the double line.
    Standard,
    /// `f = w^(a+1)`, `g = z^(a+1)`.
    Swapped,
}

impl ThinToThick {
    /// Builds the matrices over `k[x,y,z,w,t]`.
    pub fn new(characteristic: u32, a: i64, b: i64, c: i64, convention: PConvention) -> Result<Self> {
        MultiLineType::four(a, b, c).validate_quasiprimitive()?;
        let ring = Ring::family(characteristic);
        let e = a + 1;
        let f = format!("z^{e}");
        let g = format!("w^{e}");
        let q = format!("(x*{g}-y*{f})");
        let zab = format!("z^{}", a + b);
        let twb = format!("t*w^{b}");
        let m1 = PolyMatrix::new(
            &ring,
            vec![polys(
                &ring,
                &[
                    "x^3".into(),
                    "x^2*y".into(),
                    "x*y^2".into(),
                    "y^3".into(),
                    format!("x*{q}"),
                    format!("y*{q}"),
                    format!("x^2*{zab}+{twb}*{q}"),
                ],
            )],
        )?;
        let rows2: Vec<Vec<String>> = [
            vec!["y", "0", "0", &format!("-{g}"), "0", "0", "0", &zab, "0"],
            vec!["-x", "y", "0", &f, &format!("-{g}"), "0", "0", "0", &zab],
            vec!["0", "-x", "y", "0", &f, &format!("-{g}"), "0", "0", "0"],
            vec!["0", "0", "-x", "0", "0", &f, "0", "0", "0"],
            vec!["0", "0", "0", "x", "y", "0", "-y", &twb, "0"],
            vec!["0", "0", "0", "0", "0", "y", "x", "0", &twb],
            vec!["0", "0", "0", "0", "0", "0", "0", "-x", "-y"],
        ]
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
        let rows3: Vec<Vec<String>> = [
            vec![g.as_str(), "0", zab.as_str()],
            vec![&format!("-{f}"), &g, "0"],
            vec!["0", &format!("-{f}"), "0"],
            vec!["y", "0", "0"],
            vec!["-x", "y", "0"],
            vec!["0", "-x", "0"],
            vec!["0", "y", &format!("-{twb}")],
            vec!["0", "0", "-y"],
            vec!["0", "0", "x"],
        ]
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
        let f1 = vec![3, 3, 3, 3, a + 3, a + 3, a + b + 2];
        let f2 = vec![4, 4, 4, a + 4, a + 4, a + 4, a + 4, a + b + 3, a + b + 3];
        let f3 = vec![a + 5, a + 5, a + b + 2 + 2];
        let m1 = m1.with_degrees(vec![0], f1.clone())?;
        let m2 = PolyMatrix::new(&ring, rows2.iter().map(|r| polys(&ring, r)).collect())?.with_degrees(f1.clone(), f2.clone())?;
        let m3 = PolyMatrix::new(&ring, rows3.iter().map(|r| polys(&ring, r)).collect())?.with_degrees(f2, f3)?;
        let (pf, pg) = match convention {
            PConvention::Standard => (format!("({f})"), format!("({g})")),
            PConvention::Swapped => (format!("({g})"), format!("({f})")),
        };
        let tail = format!("t*z^{}*w^{b}", c - b);
        let p = PolyMatrix::new(
            &ring,
            vec![polys(
                &ring,
                &[
                    format!("-{pf}^3*{tail}"),
                    format!("-{pf}^2*{pg}*{tail}"),
                    format!("-{pf}*{pg}^2*{tail}"),
                    format!("-{pg}^3*{tail}"),
                    format!("z^{}", 4 * a + c + 3),
                    format!("z^{}*w^{e}", 3 * a + c + 2),
                    format!("w^{}", 4 * a + b + c + 2),
                ],
            )],
        )?
        .with_degrees(vec![-(3 * a + c)], f1)?;
        Ok(ThinToThick { a, b, c, m1, m2, m3, p })
    }

    pub fn ring(&self) -> &RingRef {
        self.m1.ring()
    }

    /// Ideal of the triple-line family `W`.
    pub fn triple_family(&self) -> Ideal {
        Ideal::new(self.ring(), self.m1.entries_flat().to_vec())
    }

    /// Ideal of the four-line family `C`, the kernel of `I_W -> O_L(3a+c)`.
    pub fn four_line_family(&self) -> Result<Ideal> {
        kernel_onto_line(self.ring(), self.m1.entries_flat(), self.p.entries_flat())
    }

    /// The fibre of `C` at `t = t0` computed directly over `k[x,y,z,w]`.
    pub fn four_line_fiber(&self, t0: i64) -> Result<Ideal> {
        let m1 = self.m1.substitute_scalar("t", t0)?;
        let p = self.p.substitute_scalar("t", t0)?;
        kernel_onto_line(m1.ring(), m1.entries_flat(), p.entries_flat())
    }

    pub fn triple_fiber(&self, t0: i64) -> Result<Ideal> {
        let m1 = self.m1.substitute_scalar("t", t0)?;
        Ok(Ideal::new(m1.ring(), m1.entries_flat().to_vec()))
    }
}

/// The convention for `f, g` in `P` under which `P M_2` vanishes modulo
/// `(x, y)`.
pub fn p_convention(characteristic: u32, a: i64, b: i64, c: i64) -> Result<PConvention> {
    for conv in [PConvention::Standard, PConvention::Swapped] {
        let t = ThinToThick::new(characteristic, a, b, c, conv)?;
        let prod = t.p.mul(&t.m2)?;
        if prod.reduce_mod(&support_line(t.ring())).is_zero() {
            return Ok(conv);
        }
    }
    Err(Error::Invalid("P M2 vanishes modulo (x, y) under neither convention".into()))
}

/// Quasiprimitive four-line of type `(a, b, c)`: the fibre at `t0 != 0` of
/// the thin-to-thick family.
pub fn quasiprimitive_4line(ring: &RingRef, a: i64, b: i64, c: i64, t0: i64) -> Result<Ideal> {
    MultiLineType::four(a, b, c).validate_quasiprimitive()?;
    if t0 % ring.characteristic() as i64 == 0 {
        return Err(Error::OutOfRange("t0 must be nonzero".into()));
    }
    let conv = p_convention(ring.characteristic(), a, b, c)?;
    let fam = ThinToThick::new(ring.characteristic(), a, b, c, conv)?;
    fam.four_line_fiber(t0)?.map_to(ring)
}

/// Reads the type of a quasiprimitive multiple line supported on `x = y = 0`
/// from the Cohen-Macaulay filtration `D ⊂ W ⊂ C`.
pub fn read_type(ideal: &Ideal) -> Result<MultiLineType> {
    let ring = ideal.ring();
    let iy = support_line(ring);
    let (d, g) = degree_genus(ideal)?;
    let part = |k: u32| -> Result<Ideal> { cm_part_on_line(&ideal.add(&iy.power(k))?.saturate_irrelevant()?) };
    let dl = part(2)?;
    let (d2, g2) = degree_genus(&dl)?;
    if d2 != 2 {
        return Err(Error::Invalid("not quasiprimitive: the second neighbourhood part has degree 3".into()));
    }
    let a = -1 - g2;
    if d == 2 {
        return Ok(MultiLineType::double(a));
    }
    let (d3, g3) = if d == 3 { (d, g) } else { degree_genus(&part(3)?)? };
    if d3 != 3 {
        return Err(Error::Invalid(format!("third neighbourhood part has degree {d3}")));
    }
    let b = -3 * a - g3 - 2;
    match d {
        3 => Ok(MultiLineType::triple(a, b)),
        4 => Ok(MultiLineType::four(a, b, -6 * a - b - g - 3)),
        _ => Err(Error::Invalid(format!("multiplicity {d} is not supported"))),
    }
}

/// `I ⊆ (x, y)^2`: the curve contains the first infinitesimal
/// neighbourhood of its support line.
pub fn is_thick(ideal: &Ideal) -> bool {
    support_line(ideal.ring()).power(2).contains_ideal(ideal)
}

/// Binary form `z^i w^j` in the given ring.
pub fn zw(ring: &RingRef, i: i64, j: i64) -> Polynomial {
    let (zi, wi) = (ring.var_index("z").unwrap(), ring.var_index("w").unwrap());
    Polynomial::monomial(ring, Monomial::var(zi, i as u16).mul(&Monomial::var(wi, j as u16)), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{is_curve, spectrum, Spectrum};

    fn p3() -> RingRef {
        Ring::projective(32003)
    }

    #[test]
    fn double_lines() {
        let r = p3();
        let d = double_line(&r, 0, &poly(&r, "z"), &poly(&r, "w")).unwrap();
        assert!(d.same_ideal(&ideal_of(&r, &["x^2".into(), "x*y".into(), "y^2".into(), "x*w-y*z".into()])));
        assert_eq!(degree_genus(&d).unwrap(), (2, -1));
        assert_eq!(degree_genus(&standard_double_line(&r, 1).unwrap()).unwrap(), (2, -2));
        assert!(matches!(double_line(&r, 0, &poly(&r, "z"), &poly(&r, "z")), Err(Error::Degenerate(_))));
    }

    #[test]
    fn ferrand_line_matches_double_line() {
        let r = p3();
        let line = Ring::line(32003);
        let f = ferrand_double(&r, FerrandSupport::Line, &poly(&line, "z^2"), &poly(&line, "w^2")).unwrap();
        assert!(f.same_ideal(&standard_double_line(&r, 1).unwrap()));
    }

    #[test]
    fn ferrand_conics() {
        let r = p3();
        let line = Ring::line(32003);
        for g in [-2i64, -5] {
            let l = -1 - g;
            let u = poly(&line, &format!("z^{}", l + 2));
            let v = poly(&line, &format!("w^{}", l + 4));
            let d = ferrand_double(&r, FerrandSupport::Conic, &u, &v).unwrap();
            assert_eq!(degree_genus(&d).unwrap(), (4, g));
            assert!(d.contains_ideal(&FerrandSupport::Conic.ideal(&r).power(2)));
            assert!(FerrandSupport::Conic.ideal(&r).contains_ideal(&d));
            assert!(is_curve(&d).unwrap().is_curve());
        }
    }

    #[test]
    fn thick_four_lines() {
        let r = p3();
        let p = [zw(&r, 4, 0), zw(&r, 0, 4), zw(&r, 2, 2)];
        let c = thick_4line(&r, -3, &p).unwrap();
        assert_eq!(degree_genus(&c).unwrap(), (4, -3));
        assert!(is_thick(&c));
        let p0 = [poly(&r, "z"), poly(&r, "w"), poly(&r, "z+w")];
        assert_eq!(degree_genus(&thick_4line(&r, 0, &p0).unwrap()).unwrap(), (4, 0));
        let bad = [zw(&r, 4, 0), zw(&r, 3, 1), zw(&r, 2, 2)];
        assert!(thick_4line(&r, -3, &bad).is_err());
    }

    #[test]
    fn extremal_spectra() {
        let r = p3();
        for g in [0i64, -5] {
            let e = extremal_quartic(&r, g).unwrap();
            assert_eq!(degree_genus(&e).unwrap(), (4, g));
            assert_eq!(spectrum(&e).unwrap(), Spectrum::from_values(&[g, 0, 1, 2]));
        }
        assert!(extremal_quartic(&r, 1).is_err());
        assert_eq!(degree_genus(&extremal_triple(&r, 1, 1).unwrap()).unwrap(), (3, -6));
    }

    #[test]
    fn convention_and_quasiprimitive_genus() {
        let r = p3();
        assert_eq!(p_convention(32003, 0, 0, 0).unwrap(), p_convention(32003, 1, 0, 1).unwrap());
        for (a, b, c) in [(0, 0, 0), (1, 0, 1)] {
            let i = quasiprimitive_4line(&r, a, b, c, 1).unwrap();
            assert_eq!(degree_genus(&i).unwrap(), (4, -6 * a - b - c - 3));
            assert!(!is_thick(&i));
            assert_eq!(read_type(&i).unwrap(), MultiLineType::four(a, b, c));
        }
        assert!(quasiprimitive_4line(&r, 1, 1, 0, 1).is_err());
    }

    #[test]
    fn triple_lines_from_surfaces() {
        let r = p3();
        let iz = tangent_double_line(&r, 1).unwrap();
        let h = wl_surface(&r, WlKind::F1, 1, 1);
        let w = phi_triple(&iz, &h).unwrap();
        assert_eq!(degree_genus(&w).unwrap(), (3, -6));
        assert_eq!(read_type(&w).unwrap(), MultiLineType::triple(1, 1));
        // a reducible surface drops b by the degree of the extra factor
        let h0 = wl_surface(&r, WlKind::F1, 1, 0).mul(&poly(&r, "z")).unwrap();
        let w0 = phi_triple(&iz, &h0).unwrap();
        assert_eq!(read_type(&w0).unwrap(), MultiLineType::triple(1, 0));
        assert!(phi_triple(&iz, &poly(&r, "x^2")).is_err());
    }

    #[test]
    fn unions_and_families() {
        let r = p3();
        let two = union_curves(&ideal_of(&r, &["x".into(), "y".into()]), &ideal_of(&r, &["z".into(), "w".into()])).unwrap();
        assert_eq!((two.degree, two.genus, two.length), (2, -1, 0));
        let m = wl_family_member(&r, WlKind::F1, 1, -6).unwrap();
        assert_eq!(m.b, 3);
        let m = wl_family_member(&r, WlKind::F3, 1, -7).unwrap();
        assert_eq!((m.b, m.length_w, m.length_z), (3, 2, 1));
        for kind in [WlKind::F2, WlKind::F4] {
            let m = wl_family_member(&r, kind, 1, -7).unwrap();
            assert_eq!(degree_genus(&m.curve).unwrap(), (4, -7));
        }
        assert!(matches!(wl_family_member(&r, WlKind::F1, 5, -6), Err(Error::OutOfRange(_))));
    }
}
