//! Cohomology of curves in P3 by graded local duality.
//!
//! For a saturated ideal `I` with minimal resolution `F`, the twisted
//! cohomology of the ideal sheaf is read off `Ext^i(S/I, S)` computed from
//! the dual complex: `h1(I(n)) = dim Ext^3_{-n-4}` and
//! `h2(I(n)) = dim Ext^2_{-n-4}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{vec_from_terms, ModVec, ModuleGb};
use crate::hilbert::{binomial_poly, HilbertPolynomial, HilbertSeries};
use crate::ideal::Ideal;
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::resolution::{free_resolution, image_basis, GradedComplex};
use crate::ring::{monomial_count, Monomial, Polynomial, Ring};

/// Hilbert function and polynomial of `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub window: (i64, i64),
    pub table: Vec<(i64, i64)>,
    pub series: HilbertSeries,
    pub polynomial: HilbertPolynomial,
    /// Projective dimension of the scheme; `None` for the empty scheme.
    pub projective_dim: Option<usize>,
    pub degree: i64,
    pub genus: Option<i64>,
}

impl HilbertData {
    pub fn is_empty_scheme(&self) -> bool {
        self.projective_dim.is_none()
    }
}

fn require_p3(ring: &Ring) -> Result<()> {
    if ring.nvars() != 4 || ring.weights().iter().any(|&w| w != 1) {
        return Err(Error::Invalid("expected the coordinate ring of P3".into()));
    }
    Ok(())
}

/// Hilbert data of `S/I` over `[0, max(12, regularity + 2)]`.
pub fn hilbert(ideal: &Ideal) -> Result<HilbertData> {
    let series = HilbertSeries::of_ideal(ideal)?;
    let polynomial = series.polynomial();
    let hi = 12.max(polynomial.valid_from() + 2);
    let table = (0..=hi).map(|n| (n, series.value(n))).collect();
    let projective_dim = (!series.is_zero() && polynomial.dim > 0).then(|| polynomial.dim - 1);
    let degree = if series.is_zero() { 0 } else { polynomial.degree() };
    let genus = polynomial.genus();
    Ok(HilbertData { window: (0, hi), table, series, polynomial, projective_dim, degree, genus })
}

/// Degree and arithmetic genus of a one-dimensional scheme.
pub fn degree_genus(ideal: &Ideal) -> Result<(i64, i64)> {
    let h = hilbert(ideal)?;
    match (h.projective_dim, h.genus) {
        (Some(1), Some(g)) => Ok((h.degree, g)),
        _ => Err(Error::NotACurve(format!("projective dimension {:?}", h.projective_dim))),
    }
}

/// Everything needed to evaluate the cohomology of a curve at any twist.
pub struct CurveCohomology {
    ideal: Ideal,
    resolution: GradedComplex,
    quotient: HilbertSeries,
    ext3: HilbertSeries,
    coker2: HilbertSeries,
    free3: HilbertSeries,
    ext3_basis: Option<ModuleGb>,
    degree: i64,
    genus: i64,
}

impl CurveCohomology {
    /// Fails unless `I` is a saturated ideal of a one-dimensional scheme.
    pub fn new(ideal: &Ideal) -> Result<Self> {
        require_p3(ideal.ring())?;
        let (degree, genus) = degree_genus(ideal)?;
        let resolution = free_resolution(ideal)?;
        if resolution.length() > 3 {
            return Err(Error::NotACurve("ideal is not saturated".into()));
        }
        let maps = resolution.maps();
        let coker2 = match maps.get(1) {
            Some(d2) => HilbertSeries::of_module_quotient(&image_basis(&d2.transpose()))?,
            None => HilbertSeries::of_free(4, &[]),
        };
        let (ext3, free3, ext3_basis) = match maps.get(2) {
            Some(d3) => {
                let gb = image_basis(&d3.transpose());
                let dual: Vec<i64> = d3.col_degrees().iter().map(|d| -d).collect();
                (HilbertSeries::of_module_quotient(&gb)?, HilbertSeries::of_free(4, &dual), Some(gb))
            }
            None => (HilbertSeries::of_free(4, &[]), HilbertSeries::of_free(4, &[]), None),
        };
        let quotient = HilbertSeries::of_ideal(ideal)?;
        Ok(CurveCohomology { ideal: ideal.clone(), resolution, quotient, ext3, coker2, free3, ext3_basis, degree, genus })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn resolution(&self) -> &GradedComplex {
        &self.resolution
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// Whether the Rao module has finite length.
    pub fn is_locally_cm(&self) -> bool {
        self.ext3.dimension() == 0
    }

    pub fn h0_ideal(&self, n: i64) -> i64 {
        monomial_count(4, n) as i64 - self.quotient.value(n)
    }

    pub fn h1_ideal(&self, n: i64) -> i64 {
        self.ext3.value(-n - 4)
    }

    pub fn h2_ideal(&self, n: i64) -> i64 {
        let e = -n - 4;
        self.coker2.value(e) - self.free3.value(e) + self.ext3.value(e)
    }

    pub fn h3_ideal(&self, n: i64) -> i64 {
        monomial_count(4, -n - 4) as i64
    }

    pub fn h0_structure(&self, n: i64) -> i64 {
        self.quotient.value(n) + self.h1_ideal(n)
    }

    pub fn h1_structure(&self, n: i64) -> i64 {
        self.h2_ideal(n)
    }

    /// `χ(I(n)) = C(n+3, 3) - (d n + 1 - g)`.
    pub fn euler_characteristic(&self, n: i64) -> i64 {
        binomial_poly(n + 3, 3) as i64 - (self.degree * n + 1 - self.genus)
    }

    pub fn row(&self, n: i64) -> CohomologyRow {
        CohomologyRow {
            n,
            h0_ideal: self.h0_ideal(n),
            h1_ideal: self.h1_ideal(n),
            h2_ideal: self.h2_ideal(n),
            h3_ideal: self.h3_ideal(n),
            h0_structure: self.h0_structure(n),
            h1_structure: self.h1_structure(n),
        }
    }

    pub fn table(&self, window: (i64, i64)) -> CohomologyTable {
        CohomologyTable {
            degree: self.degree,
            genus: self.genus,
            window,
            rows: (window.0..=window.1).map(|n| self.row(n)).collect(),
        }
    }

    /// Default window `[g - 2, max(8, regularity + 2)]`.
    pub fn default_window(&self) -> (i64, i64) {
        let reg = self.regularity_bound();
        (self.genus.min(0) - 2, 8.max(reg + 2))
    }

    /// A degree past which every cohomology row is that of a linear
    /// Hilbert function.
    pub fn regularity_bound(&self) -> i64 {
        let b = self.resolution.betti();
        b.entries.iter().enumerate().flat_map(|(i, m)| m.keys().map(move |&d| d - i as i64)).max().unwrap_or(0)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        let lo = self.genus.min(0) - 2;
        let hi = self.default_window().1;
        let mut mult = BTreeMap::new();
        let mut total = 0;
        for n in lo..=hi {
            let h = self.h0_structure(n) - 2 * self.h0_structure(n - 1) + self.h0_structure(n - 2);
            if h != 0 {
                mult.insert(n, h);
                total += h;
            }
        }
        if self.h0_structure(lo - 1) != 0 || total != self.degree {
            return Err(Error::Degenerate(format!("spectrum mass {total} differs from degree {}", self.degree)));
        }
        Ok(Spectrum { multiplicities: mult })
    }

    /// Nonzero graded pieces of the Rao module.
    pub fn rao_dims(&self) -> Option<Vec<(i64, i64)>> {
        let vals = self.ext3.finite_values()?;
        let mut out: Vec<(i64, i64)> = vals.into_iter().map(|(e, c)| (-e - 4, c)).collect();
        out.sort();
        Some(out)
    }

    pub fn rao_presentation(&self) -> Result<RaoPresentation> {
        let dims = self.rao_dims().ok_or_else(|| Error::NotACurve("Rao module has infinite length".into()))?;
        let n_g = (5 - self.genus).div_euclid(2);
        let mut pres = RaoPresentation {
            dims,
            annihilating_linear_forms: 0,
            line_module: false,
            second_syzygy_twists: None,
            j: None,
            n_g,
        };
        let Some(gb) = &self.ext3_basis else { return Ok(pres) };
        pres.annihilating_linear_forms = annihilating_linear_forms(gb);
        let gens = gb.degrees().to_vec();
        pres.line_module = pres.annihilating_linear_forms >= 2;
        if pres.line_module && gens.len() == 2 {
            let mut twists: Vec<i64> = gens.iter().map(|c| c + 2).collect();
            twists.sort();
            let j = -twists[1];
            if twists[0] == j - 5 + self.genus && (2..=n_g).contains(&j) {
                pres.j = Some(j);
            }
            pres.second_syzygy_twists = Some(twists);
        } else if pres.line_module && gens.len() == 1 {
            // the summand S_L(-2) of the kernel cancels for j = 2
            let twist = gens[0] + 2;
            if twist == self.genus - 3 {
                pres.j = Some(2);
            }
            pres.second_syzygy_twists = Some(vec![twist]);
        }
        Ok(pres)
    }

    pub fn classify(&self) -> CurveClass {
        let locally_cm = self.is_locally_cm();
        let spectrum = if locally_cm { self.spectrum().ok() } else { None };
        let spectrum_class = spectrum.as_ref().map(|s| s.class(self.degree, self.genus));
        CurveClass {
            saturated: true,
            pure_one_dimensional: locally_cm,
            locally_cm,
            degree: Some(self.degree),
            genus: Some(self.genus),
            spectrum,
            spectrum_class,
        }
    }
}

/// Number of independent linear forms killing `F / M`, where `M` has the
/// given basis.
fn annihilating_linear_forms(gb: &ModuleGb) -> usize {
    let ring = gb.ring();
    let nv = ring.nvars();
    let mut coords: Vec<(u32, Monomial)> = Vec::new();
    let mut rows: Vec<Vec<(u32, Monomial, u32)>> = Vec::new();
    for i in 0..nv {
        let mut row = Vec::new();
        for k in 0..gb.rank() {
            let v: ModVec = vec![(k as u32, Monomial::var(i, 1), 1)];
            row.extend(gb.normal_form(&v));
        }
        for t in &row {
            if !coords.contains(&(t.0, t.1)) {
                coords.push((t.0, t.1));
            }
        }
        rows.push(row);
    }
    let dense: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![0u32; coords.len()];
            for t in r {
                let c = coords.iter().position(|x| *x == (t.0, t.1)).unwrap();
                d[c] = ring.field().add(d[c], t.2);
            }
            d
        })
        .collect();
    if coords.is_empty() {
        return nv;
    }
    nv - linalg::rank(&dense, ring.field())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub n: i64,
    pub h0_ideal: i64,
    pub h1_ideal: i64,
    pub h2_ideal: i64,
    pub h3_ideal: i64,
    pub h0_structure: i64,
    pub h1_structure: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub degree: i64,
    pub genus: i64,
    pub window: (i64, i64),
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyTable {
    /// Checks `h0 - h1 + h2 - h3 = χ(I(n))` on every row.
    pub fn euler_holds(&self) -> bool {
        self.rows.iter().all(|r| {
            let chi = binomial_poly(r.n + 3, 3) as i64 - (self.degree * r.n + 1 - self.genus);
            r.h0_ideal - r.h1_ideal + r.h2_ideal - r.h3_ideal == chi
        })
    }

    pub fn row(&self, n: i64) -> Option<&CohomologyRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Cohomology table of a curve over a window.
pub fn cohomology_table(ideal: &Ideal, window: Option<(i64, i64)>) -> Result<CohomologyTable> {
    let c = CurveCohomology::new(ideal)?;
    if !c.is_locally_cm() {
        return Err(Error::NotACurve("not locally Cohen-Macaulay".into()));
    }
    let w = window.unwrap_or_else(|| c.default_window());
    Ok(c.table(w))
}

/// Multiset of integers, written `{0, 1^2, 3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub multiplicities: BTreeMap<i64, i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumClass {
    Extremal,
    SubextremalSpectrum,
    Other,
}

impl Spectrum {
    pub fn from_values(values: &[i64]) -> Self {
        let mut multiplicities = BTreeMap::new();
        for &v in values {
            *multiplicities.entry(v).or_insert(0) += 1;
        }
        Spectrum { multiplicities }
    }

    pub fn total(&self) -> i64 {
        self.multiplicities.values().sum()
    }

    pub fn union(&self, other: &Spectrum) -> Spectrum {
        let mut multiplicities = self.multiplicities.clone();
        for (&v, &m) in &other.multiplicities {
            *multiplicities.entry(v).or_insert(0) += m;
        }
        Spectrum { multiplicities }
    }

    pub fn values(&self) -> Vec<i64> {
        self.multiplicities.iter().flat_map(|(&v, &m)| std::iter::repeat(v).take(m.max(0) as usize)).collect()
    }

    /// Labels by the degree-four spectral characterizations.
    pub fn class(&self, degree: i64, genus: i64) -> SpectrumClass {
        if degree != 4 {
            return SpectrumClass::Other;
        }
        if *self == Spectrum::from_values(&[genus, 0, 1, 2]) {
            SpectrumClass::Extremal
        } else if *self == Spectrum::from_values(&[genus + 1, 0, 1, 1]) {
            SpectrumClass::SubextremalSpectrum
        } else {
            SpectrumClass::Other
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .map(|(v, m)| if *m == 1 { v.to_string() } else { format!("{v}^{m}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn spectrum(ideal: &Ideal) -> Result<Spectrum> {
    let c = CurveCohomology::new(ideal)?;
    if !c.is_locally_cm() {
        return Err(Error::NotACurve("not locally Cohen-Macaulay".into()));
    }
    c.spectrum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaoPresentation {
    /// `(n, h1(I(n)))` for the nonzero pieces.
    pub dims: Vec<(i64, i64)>,
    pub annihilating_linear_forms: usize,
    /// Whether the module lives over the coordinate ring of a line.
    pub line_module: bool,
    pub second_syzygy_twists: Option<Vec<i64>>,
    pub j: Option<i64>,
    pub n_g: i64,
}

pub fn rao_presentation(ideal: &Ideal) -> Result<RaoPresentation> {
    CurveCohomology::new(ideal)?.rao_presentation()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    pub saturated: bool,
    pub pure_one_dimensional: bool,
    pub locally_cm: bool,
    pub degree: Option<i64>,
    pub genus: Option<i64>,
    pub spectrum: Option<Spectrum>,
    pub spectrum_class: Option<SpectrumClass>,
}

impl CurveClass {
    pub fn is_curve(&self) -> bool {
        self.saturated && self.pure_one_dimensional && self.locally_cm
    }

    fn failed(saturated: bool, degree: Option<i64>, genus: Option<i64>) -> Self {
        CurveClass {
            saturated,
            pure_one_dimensional: false,
            locally_cm: false,
            degree,
            genus,
            spectrum: None,
            spectrum_class: None,
        }
    }
}

/// Classification flags; never fails on homogeneous input in P3.
pub fn is_curve(ideal: &Ideal) -> Result<CurveClass> {
    require_p3(ideal.ring())?;
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(ideal.to_string()));
    }
    let h = hilbert(ideal)?;
    if h.projective_dim != Some(1) {
        let saturated = ideal.is_saturated()?;
        return Ok(CurveClass::failed(saturated, None, None));
    }
    match CurveCohomology::new(ideal) {
        Ok(c) => Ok(c.classify()),
        Err(Error::NotACurve(_)) => Ok(CurveClass::failed(false, Some(h.degree), h.genus)),
        Err(e) => Err(e),
    }
}

/// `dim span {v l : v in V, l in L_1}` for a codimension-two linear ideal L.
pub fn mult_image_dim(forms: &[Polynomial], line: &Ideal) -> Result<usize> {
    let lin: Vec<&Polynomial> = line.generators().iter().collect();
    if lin.len() != 2 || lin.iter().any(|l| l.degree() != Some(1) || !l.is_homogeneous()) {
        return Err(Error::Invalid("L must be generated by two linear forms".into()));
    }
    let Some(first) = forms.first() else { return Ok(0) };
    let ring = first.ring().clone();
    let d = first.degree().unwrap_or(0);
    if forms.iter().any(|f| f.degree() != Some(d) || !f.is_homogeneous()) {
        return Err(Error::NotHomogeneous("forms must share one degree".into()));
    }
    let coords = |p: &Polynomial, basis: &[Monomial]| basis.iter().map(|m| p.coefficient(m)).collect::<Vec<u32>>();
    let lin_basis = ring.monomials_of_degree(1);
    let lin_rows: Vec<Vec<u32>> = lin.iter().map(|l| coords(l, &lin_basis)).collect();
    if linalg::rank(&lin_rows, ring.field()) != 2 {
        return Err(Error::Invalid("linear forms are dependent".into()));
    }
    let basis_d = ring.monomials_of_degree(d);
    let rows_d: Vec<Vec<u32>> = forms.iter().map(|f| coords(f, &basis_d)).collect();
    if linalg::rank(&rows_d, ring.field()) != forms.len() {
        return Err(Error::Degenerate("forms are linearly dependent".into()));
    }
    let basis = ring.monomials_of_degree(d + 1);
    let rows: Vec<Vec<u32>> =
        forms.iter().flat_map(|f| lin.iter().map(|l| coords(&f.mul_unchecked(l), &basis)).collect::<Vec<_>>()).collect();
    Ok(linalg::rank(&rows, ring.field()))
}

/// The largest locally Cohen-Macaulay curve contained in a scheme supported
/// on the line `x = y = 0`: the preimage of the `k[z,w]`-torsion-free
/// quotient of `S/I`.
pub fn cm_part_on_line(ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring();
    require_p3(ring)?;
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let (x, y) = (0usize, 1usize);
    let power = (1..=64u16)
        .find(|&n| (0..=n).all(|i| ideal.contains(&Polynomial::monomial(ring, Monomial::var(x, i).mul(&Monomial::var(y, n - i)), 1))))
        .ok_or_else(|| Error::Invalid("scheme is not supported on x = y = 0".into()))?;
    let basis: Vec<(u16, u16)> = (0..power).flat_map(|s| (0..=s).map(move |i| (i, s - i))).collect();
    let index = |i: u16, j: u16| basis.iter().position(|&b| b == (i, j));
    let line = Ring::line(ring.characteristic());
    let to_coords = |p: &Polynomial| -> ModVec {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            if let Some(k) = index(m.exp(x), m.exp(y)) {
                terms.push((k as u32, Monomial::from_exponents(&[m.exp(2), m.exp(3)]), *c));
            }
        }
        vec_from_terms(&line, terms)
    };
    let row_degrees: Vec<i64> = basis.iter().map(|&(i, j)| (i + j) as i64).collect();
    let mut relations = Vec::new();
    let mut rel_degrees = Vec::new();
    for g in ideal.minimal_generators() {
        for &(i, j) in &basis {
            let b = Polynomial::monomial(ring, Monomial::var(x, i).mul(&Monomial::var(y, j)), 1);
            let v = to_coords(&g.mul_unchecked(&b));
            if !v.is_empty() {
                rel_degrees.push(g.degree().unwrap() as i64 + (i + j) as i64);
                relations.push(v);
            }
        }
    }
    let r = PolyMatrix::from_columns(&line, row_degrees, &relations, rel_degrees);
    let phi = r.transpose().syzygies();
    let torsion = phi.transpose().syzygies();
    let mut extra = Vec::new();
    for k in 0..torsion.ncols() {
        let mut acc = Polynomial::zero(ring);
        for (b, &(i, j)) in basis.iter().enumerate() {
            let e = torsion.get(b, k);
            for (m, c) in e.terms() {
                let mon = Monomial::from_exponents(&[i, j, m.exp(0), m.exp(1)]);
                acc = acc.combine(&Polynomial::monomial(ring, mon, *c), 1);
            }
        }
        extra.push(acc);
    }
    Ok(ideal.with(&extra).reduced_presentation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::RingRef;

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect())
    }

    #[test]
    fn line_is_acm() {
        let r = Ring::projective(32003);
        let c = CurveCohomology::new(&ideal(&r, &["x", "y"])).unwrap();
        let t = c.table((-4, 6));
        assert!(t.euler_holds());
        assert!(t.rows.iter().all(|row| row.h1_ideal == 0));
        assert_eq!(c.spectrum().unwrap(), Spectrum::from_values(&[0]));
    }

    #[test]
    fn line_union_twisted_cubic() {
        let r = Ring::projective(32003);
        let tc = ideal(&r, &["x*z-y^2", "y*w-z^2", "x*w-y*z"]);
        // y = 0 meets the cubic only at (1:0:0:0) and (0:0:0:1)
        let l = ideal(&r, &["y", "z-x-w"]);
        let c_ideal = l.intersect(&tc).unwrap();
        assert_eq!(degree_genus(&c_ideal).unwrap(), (4, -1));
        let c = CurveCohomology::new(&c_ideal).unwrap();
        assert_eq!((c.h1_ideal(0), c.h1_ideal(1), c.h1_ideal(2)), (1, 2, 0));
        assert!(c.table(c.default_window()).euler_holds());
        let rao = c.rao_presentation().unwrap();
        assert_eq!(rao.dims, vec![(0, 1), (1, 2)]);
        assert_eq!(rao.j, Some(3));
        let parts = spectrum(&l).unwrap().union(&spectrum(&tc).unwrap());
        assert_eq!(c.spectrum().unwrap(), parts);
        assert_eq!(parts.class(4, -1), SpectrumClass::SubextremalSpectrum);
    }

    #[test]
    fn multiplication_map() {
        let r = Ring::projective(32003);
        let l = ideal(&r, &["x", "y"]);
        let v = |gs: &[&str]| gs.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect::<Vec<_>>();
        assert_eq!(mult_image_dim(&v(&["x^2", "x*y", "y^2"]), &l).unwrap(), 4);
        assert_eq!(mult_image_dim(&v(&["x^2", "z*w", "w^2"]), &l).unwrap(), 6);
        assert_eq!(mult_image_dim(&v(&["x*z+w^2"]), &l).unwrap(), 2);
        assert!(mult_image_dim(&v(&["x^2", "x^2"]), &l).is_err());
    }

    #[test]
    fn cm_part_removes_embedded_points() {
        let r = Ring::projective(32003);
        let dl = ideal(&r, &["x^2", "x*y", "y^2", "x*w-y*z"]);
        // add an embedded point at (0:0:0:1) on the double line
        let emb = dl.intersect(&ideal(&r, &["x^2", "y", "z^2"]).add(&ideal(&r, &["x*z"])).unwrap()).unwrap();
        assert!(!emb.same_ideal(&dl));
        assert!(cm_part_on_line(&emb).unwrap().same_ideal(&dl));
        assert!(cm_part_on_line(&dl).unwrap().same_ideal(&dl));
    }
}
