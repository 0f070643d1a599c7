//! The component table of the Hilbert schemes `H(4, g)`: enumeration and
//! counts for any genus, the small-genus special cases, explicit
//! representatives and the connectedness graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::atlas::{
    extremal_quartic, ferrand_double, ideal_of, is_thick, phi_triple, quasiprimitive_4line, standard_double_line,
    tangent_double_line, thick_4line, union_curves, wl_family_member, wl_surface, zw, FerrandSupport, WlKind,
};
use crate::cohomology::{degree_genus, CurveCohomology};
use crate::config::RunConfig;
use crate::deform::{
    verify_disjoint_doubles, verify_extend, verify_thintothick, verify_wl_closure, Check, Provenance,
    SpecializationCertificate, Status, WlClosure,
};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::parse::parse_polynomial;
use crate::ring::{Ring, RingRef};

/// Reading of the bound `a < (-g-1)/3` on `G8,a`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum G8Convention {
    /// `0 < a < (-g-1)/3`, as tabulated.
    Strict,
    /// `0 < a <= (-g-1)/3`; reproduces the totals 530 and 42755.
    #[default]
    Inclusive,
}

impl G8Convention {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(G8Convention::Strict),
            "inclusive" => Ok(G8Convention::Inclusive),
            _ => Err(Error::Invalid(format!("unknown G8 convention `{s}`: expected strict or inclusive"))),
        }
    }

    fn admits(&self, a: i64, g: i64) -> bool {
        match self {
            G8Convention::Strict => 3 * a < -g - 1,
            G8Convention::Inclusive => 3 * a <= -g - 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentLabel {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7 { a: i64 },
    G8 { a: i64 },
    G9 { a: i64 },
    G10 { m: i64 },
    G11 { a: i64, b: i64 },
}

impl ComponentLabel {
    pub fn params(&self) -> BTreeMap<String, i64> {
        let pairs: Vec<(&str, i64)> = match *self {
            ComponentLabel::G7 { a } | ComponentLabel::G8 { a } | ComponentLabel::G9 { a } => vec![("a", a)],
            ComponentLabel::G10 { m } => vec![("m", m)],
            ComponentLabel::G11 { a, b } => vec![("a", a), ("b", b)],
            _ => vec![],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// Parses `G1`, `G7,2`, `G11,1,0` and so on.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown component label `{s}`"));
        let upper = s.trim().to_ascii_uppercase();
        let mut parts = upper.strip_prefix('G').ok_or_else(bad)?.split(',');
        let n: u32 = parts.next().and_then(|p| p.trim().parse().ok()).ok_or_else(bad)?;
        let params: Vec<i64> = parts.map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
        let label = match (n, params.as_slice()) {
            (1, []) => ComponentLabel::G1,
            (2, []) => ComponentLabel::G2,
            (3, []) => ComponentLabel::G3,
            (4, []) => ComponentLabel::G4,
            (5, []) => ComponentLabel::G5,
            (6, []) => ComponentLabel::G6,
            (7, [a]) => ComponentLabel::G7 { a: *a },
            (8, [a]) => ComponentLabel::G8 { a: *a },
            (9, [a]) => ComponentLabel::G9 { a: *a },
            (10, [m]) => ComponentLabel::G10 { m: *m },
            (11, [a, b]) => ComponentLabel::G11 { a: *a, b: *b },
            _ => return Err(bad()),
        };
        Ok(label)
    }

    pub fn is_four_line(&self) -> bool {
        matches!(self, ComponentLabel::G4 | ComponentLabel::G11 { .. })
    }

    /// Tabulated dimension of the component in `H(4, g)`.
    pub fn dimension(&self, g: i64) -> i64 {
        match *self {
            ComponentLabel::G1 => 15 - 2 * g,
            ComponentLabel::G2 | ComponentLabel::G3 | ComponentLabel::G5 => 13 - 2 * g,
            ComponentLabel::G4 => 9 - 3 * g,
            ComponentLabel::G6 => 11 - 2 * g,
            ComponentLabel::G7 { a } => 11 - 2 * g - a,
            ComponentLabel::G8 { a } => 10 - 2 * g - a,
            ComponentLabel::G9 { a } => 8 - 2 * g - a,
            ComponentLabel::G10 { m } => double_line_family_dim(m) + double_line_family_dim(-g - m - 1),
            ComponentLabel::G11 { a, .. } => 7 - 2 * g - 3 * a,
        }
    }

    /// Description of the general curve.
    pub fn description(&self, g: i64) -> String {
        match *self {
            ComponentLabel::G1 => format!("smooth conic union a double line of genus {} meeting in length 4", g - 3),
            ComponentLabel::G2 => format!("double line of genus {} union two disjoint lines, each meeting it in length 2", g - 2),
            ComponentLabel::G3 => format!("smooth conic union a double line of genus {} meeting in length 2", g - 1),
            ComponentLabel::G4 => "general thick 4-line".into(),
            ComponentLabel::G5 => "double conic".into(),
            ComponentLabel::G6 => format!("double line of genus {g} union a line meeting it in length 2, plus a disjoint line"),
            ComponentLabel::G7 { a } => format!("quasiprimitive triple line of type ({a}, {}) union a line meeting it in length 3", -3 * a - g),
            ComponentLabel::G8 { a } => format!("quasiprimitive triple line of type ({a}, {}) union a line meeting it in length 2", -1 - 3 * a - g),
            ComponentLabel::G9 { a } => format!("quasiprimitive triple line of type ({a}, {}) union a disjoint line", -3 - 3 * a - g),
            ComponentLabel::G10 { m } => format!("disjoint double structures of degree 2 and genera {} and {}", -m, g + m + 1),
            ComponentLabel::G11 { a, b } => format!("quasiprimitive 4-line of type ({a}, {b}, {})", -6 * a - b - g - 3),
        }
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ComponentLabel::G7 { a } => write!(f, "G7,{a}"),
            ComponentLabel::G8 { a } => write!(f, "G8,{a}"),
            ComponentLabel::G9 { a } => write!(f, "G9,{a}"),
            ComponentLabel::G10 { m } => write!(f, "G10,{m}"),
            ComponentLabel::G11 { a, b } => write!(f, "G11,{a},{b}"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// `dim H(2, -m)`: `5 + 2m` for `m > 1` and `8` for `m = 0, 1`.
pub fn double_line_family_dim(m: i64) -> i64 {
    if m > 1 {
        5 + 2 * m
    } else {
        8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDescriptor {
    pub label: ComponentLabel,
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub dimension: i64,
    pub four_line: bool,
    pub description: String,
}

impl ComponentDescriptor {
    fn new(label: ComponentLabel, g: i64) -> Self {
        ComponentDescriptor {
            label,
            name: label.to_string(),
            params: label.params(),
            dimension: label.dimension(g),
            four_line: label.is_four_line(),
            description: label.description(g),
        }
    }
}

fn labels(g: i64, conv: G8Convention) -> Vec<ComponentLabel> {
    let mut out = vec![ComponentLabel::G1, ComponentLabel::G2, ComponentLabel::G3];
    if g <= -3 {
        out.push(ComponentLabel::G4);
    }
    out.push(ComponentLabel::G5);
    if g <= -3 {
        out.push(ComponentLabel::G6);
        out.extend((1..).take_while(|a| 3 * a <= -g).map(|a| ComponentLabel::G7 { a }));
    }
    if g <= -6 {
        out.extend((1..).take_while(|&a| conv.admits(a, g)).map(|a| ComponentLabel::G8 { a }));
        out.extend((1..).take_while(|a| 3 * a <= -g - 3).map(|a| ComponentLabel::G9 { a }));
    }
    out.extend((0..).take_while(|m| 2 * m <= -g - 1).map(|m| ComponentLabel::G10 { m }));
    if g <= -9 {
        for a in (1..).take_while(|a| 6 * a <= -g - 3) {
            out.extend((0..).take_while(|b| 2 * b <= -6 * a - g - 3).map(|b| ComponentLabel::G11 { a, b }));
        }
    }
    out
}

/// Components of `H(4, g)` for `g <= -2` whose restrictions hold.
pub fn enumerate_components(g: i64, conv: G8Convention) -> Result<Vec<ComponentDescriptor>> {
    if g > -2 {
        return Err(Error::OutOfRange(format!("the table covers g <= -2; see the special facts for g = {g}")));
    }
    Ok(labels(g, conv).into_iter().map(|l| ComponentDescriptor::new(l, g)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCount {
    pub genus: i64,
    pub convention: G8Convention,
    pub total: u64,
    pub four_line: u64,
}

impl ComponentCount {
    pub fn non_four_line(&self) -> u64 {
        self.total - self.four_line
    }
}

/// Counts by walking the restriction predicates.
pub fn count_components(g: i64, conv: G8Convention) -> Result<ComponentCount> {
    if g > -2 {
        return Err(Error::OutOfRange(format!("the table covers g <= -2, got {g}")));
    }
    let mut total = 0u64;
    let mut four_line = 0u64;
    for l in labels(g, conv) {
        total += 1;
        four_line += l.is_four_line() as u64;
    }
    Ok(ComponentCount { genus: g, convention: conv, total, four_line })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub genus: i64,
    pub total: u64,
    pub non_four_line: u64,
    /// `total / (g^2 / 24)`.
    pub total_ratio: f64,
    /// `non_four_line / (-3g / 2)`.
    pub non_four_line_ratio: f64,
}

/// Compares the counts with `g^2/24` components in total and `-3g/2`
/// components not made of 4-lines.
pub fn asymptotic_check(genera: &[i64], conv: G8Convention) -> Result<Vec<AsymptoticRow>> {
    genera
        .iter()
        .map(|&g| {
            let c = count_components(g, conv)?;
            let gf = g as f64;
            Ok(AsymptoticRow {
                genus: g,
                total: c.total,
                non_four_line: c.non_four_line(),
                total_ratio: c.total as f64 / (gf * gf / 24.0),
                non_four_line_ratio: c.non_four_line() as f64 / (-1.5 * gf),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialFacts {
    pub genus: i64,
    pub nonempty: bool,
    pub connected: bool,
    pub component_count: u64,
    /// `None` where the dimensions are not recorded.
    pub dimensions: Option<Vec<i64>>,
    pub descriptions: Vec<String>,
}

/// Facts about `H(4, g)`: nonempty iff `g = 3` or `g <= 1`; the table
/// for `g <= -2`.
pub fn special_hilbert_facts(g: i64) -> SpecialFacts {
    let (dims, desc): (Option<Vec<i64>>, Vec<&str>) = match g {
        3 => (Some(vec![17]), vec!["plane quartics"]),
        2 => (Some(vec![]), vec![]),
        1 => (Some(vec![16]), vec!["complete intersections of two quadrics"]),
        0 => (None, vec!["rational quartics", "plane cubic union a disjoint line"]),
        -1 => (
            Some(vec![17, 16, 16]),
            vec!["extremal curves", "disjoint union of two conics", "twisted cubic union a disjoint line"],
        ),
        g if g > 3 => (Some(vec![]), vec![]),
        _ => {
            let comps = enumerate_components(g, G8Convention::default()).expect("g <= -2");
            return SpecialFacts {
                genus: g,
                nonempty: true,
                connected: true,
                component_count: comps.len() as u64,
                dimensions: Some(comps.iter().map(|c| c.dimension).collect()),
                descriptions: comps.iter().map(|c| c.description.clone()).collect(),
            };
        }
    };
    let count = desc.len() as u64;
    SpecialFacts {
        genus: g,
        nonempty: count > 0,
        connected: count > 0,
        component_count: count,
        dimensions: dims,
        descriptions: desc.into_iter().map(String::from).collect(),
    }
}

fn lit(ring: &RingRef, s: &str) -> Result<crate::ring::Polynomial> {
    parse_polynomial(ring, s)
}

/// Double structure of genus `-1-c` on `z = w = 0`.
fn double_line_zw(ring: &RingRef, c: i64) -> Ideal {
    ideal_of(ring, &["z^2".into(), "z*w".into(), "w^2".into(), format!("z*y^{e}-w*x^{e}", e = c + 1)])
}

/// A line disjoint from `x = y = 0`, `x = w = 0` and `x = z = 0`.
fn far_line(ring: &RingRef) -> Ideal {
    ideal_of(ring, &["z-x".into(), "w+y".into()])
}

/// Surjection `(w^(1-g), w^(3-g-j) z^(j-2), z^(1-g))` defining a thick
/// four-line with Rao module of invariant `j`.
pub fn thick_witness(ring: &RingRef, g: i64, j: i64) -> Result<Ideal> {
    if !(2..=(5 - g).div_euclid(2)).contains(&j) {
        return Err(Error::OutOfRange(format!("j = {j} outside [2, n(g)]")));
    }
    thick_4line(ring, g, &[zw(ring, 0, 1 - g), zw(ring, j - 2, 3 - g - j), zw(ring, 1 - g, 0)])
}

/// An explicit curve of degree 4 and genus `g` in the family `label`.
/// `None` when no construction is available.
pub fn representative(ring: &RingRef, label: ComponentLabel, g: i64) -> Result<Option<Ideal>> {
    let rep = match label {
        ComponentLabel::G1 => extremal_quartic(ring, g)?,
        ComponentLabel::G2 => {
            let z = standard_double_line(ring, 1 - g)?;
            let l1 = ideal_of(ring, &["x".into(), "z".into()]);
            let l2 = ideal_of(ring, &["y".into(), "w".into()]);
            z.intersect(&l1)?.intersect(&l2)?
        }
        ComponentLabel::G3 => {
            let z = standard_double_line(ring, -g)?;
            let conic = ideal_of(ring, &["x-z".into(), "z*w+y^2".into()]);
            z.intersect(&conic)?
        }
        ComponentLabel::G4 => thick_witness(ring, g, (5 - g).div_euclid(2))?,
        ComponentLabel::G5 => {
            let line = Ring::line(ring.characteristic());
            let l = -1 - g;
            ferrand_double(ring, FerrandSupport::Conic, &lit(&line, &format!("z^{}", l + 2))?, &lit(&line, &format!("w^{}", l + 4))?)?
        }
        ComponentLabel::G6 => {
            let z = standard_double_line(ring, -1 - g)?;
            let l1 = ideal_of(ring, &["x".into(), "y-z".into()]);
            z.intersect(&l1)?.intersect(&far_line(ring))?
        }
        ComponentLabel::G7 { a } => wl_family_member(ring, WlKind::F1, a, g)?.curve,
        ComponentLabel::G8 { a } => {
            if !WlKind::F3.in_range(a, g) {
                return Ok(None);
            }
            wl_family_member(ring, WlKind::F3, a, g)?.curve
        }
        ComponentLabel::G9 { a } => {
            let b = -3 - 3 * a - g;
            let iz = tangent_double_line(ring, a)?;
            let w = phi_triple(&iz, &wl_surface(ring, WlKind::F1, a, b))?;
            w.intersect(&far_line(ring))?
        }
        ComponentLabel::G10 { m } => {
            let d1 = standard_double_line(ring, m - 1)?;
            d1.intersect(&double_line_zw(ring, -g - m - 2))?
        }
        ComponentLabel::G11 { a, b } => quasiprimitive_4line(ring, a, b, -6 * a - b - g - 3, 1)?,
    };
    Ok(Some(rep))
}

/// `h^0(I_C(2))` of a representative.
pub fn quadrics_through(ideal: &Ideal) -> Result<i64> {
    Ok(CurveCohomology::new(ideal)?.h0_ideal(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricSpotCheck {
    pub label: String,
    pub dimension: i64,
    pub h0_ideal_2: i64,
    /// `Some(true)` when quadrics are expected, `Some(false)` when none are.
    pub expect_quadric: Option<bool>,
    pub status: Status,
}

/// `h^0(I_C(2))` of the representatives of `G1, ..., G5`: the general thick
/// four-line lies on no quadric, the other witnesses are expected to.
pub fn quadric_spot_checks(ring: &RingRef, g: i64) -> Result<Vec<QuadricSpotCheck>> {
    let mut out = Vec::new();
    for c in enumerate_components(g, G8Convention::default())? {
        let expect = match c.label {
            ComponentLabel::G4 => Some(false),
            ComponentLabel::G1 | ComponentLabel::G2 | ComponentLabel::G3 | ComponentLabel::G5 => Some(true),
            _ => None,
        };
        let Some(expect_quadric) = expect else { continue };
        let Some(rep) = representative(ring, c.label, g)? else { continue };
        let h0 = quadrics_through(&rep)?;
        let ok = (h0 > 0) == expect_quadric;
        out.push(QuadricSpotCheck {
            label: c.name,
            dimension: c.dimension,
            h0_ideal_2: h0,
            expect_quadric: Some(expect_quadric),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeProvenance {
    VerifiedInternal { certificates: Vec<String>, supplement: Option<String> },
    CitedExternal { reference: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub provenance: EdgeProvenance,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectednessCertificate {
    pub genus: i64,
    pub convention: G8Convention,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub connected: bool,
    pub certificates: BTreeMap<String, SpecializationCertificate>,
}

impl ConnectednessCertificate {
    /// Graph exchange form `{nodes, edges: {from, to, provenance}}`.
    pub fn graph_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "connected": self.connected,
            "nodes": self.nodes,
            "edges": self.edges,
        })
    }

    pub fn passed(&self) -> bool {
        self.connected && self.edges.iter().all(|e| e.status == Status::Pass)
    }
}

/// Parameters at which an internal certificate is computed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum CertKey {
    Thick(i64, i64),
    Extend(i64, i64),
    WlClosure(i64, i64),
    ThinToThick(i64, i64, i64),
    Disjoint(i64, i64),
}

impl CertKey {
    fn id(&self) -> String {
        match self {
            CertKey::Thick(g, j) => format!("thick-witness(g={g},j={j})"),
            CertKey::Extend(a, b) => format!("extend(a={a},b={b})"),
            CertKey::WlClosure(a, g) => format!("wlclosure-f2-f1(a={a},g={g})"),
            CertKey::ThinToThick(a, b, c) => format!("thintothick(a={a},b={b},c={c})"),
            CertKey::Disjoint(b, c) => format!("disjointdoublelines(b={b},c={c})"),
        }
    }

    fn compute(&self, cfg: &RunConfig) -> Result<SpecializationCertificate> {
        match *self {
            CertKey::Thick(g, j) => thick_witness_certificate(g, j, cfg),
            CertKey::Extend(a, b) => verify_extend(a, b, cfg),
            CertKey::WlClosure(a, g) => verify_wl_closure(WlClosure::F2InF1, a, g, cfg),
            CertKey::ThinToThick(a, b, c) => verify_thintothick(a, b, c, cfg),
            CertKey::Disjoint(b, c) => verify_disjoint_doubles(b, c, cfg),
        }
    }
}

/// A thick four-line whose Rao module has invariant `j`, so that the
/// family `H_j` meets the thick locus.
pub fn thick_witness_certificate(g: i64, j: i64, cfg: &RunConfig) -> Result<SpecializationCertificate> {
    let ring = Ring::projective(cfg.characteristic);
    let c = thick_witness(&ring, g, j)?;
    let coh = CurveCohomology::new(&c)?;
    let rao = coh.rao_presentation()?;
    let spectrum = coh.spectrum()?;
    let mut checks = Vec::new();
    let mut push = |id: &str, ok: bool, detail: String| {
        checks.push(Check { id: id.into(), status: if ok { Status::Pass } else { Status::Fail }, detail })
    };
    push("thick", is_thick(&c), "contained in (x,y)^2".into());
    push("degree-genus", (coh.degree(), coh.genus()) == (4, g), format!("({}, {})", coh.degree(), coh.genus()));
    push(
        "spectrum",
        spectrum == crate::cohomology::Spectrum::from_values(&[g + 1, 0, 1, 1]),
        format!("spectrum {spectrum}"),
    );
    push("rao-j", rao.j == Some(j), format!("j = {:?}", rao.j));
    Ok(SpecializationCertificate {
        name: "thick-witness".into(),
        parameters: [("g".to_string(), g), ("j".to_string(), j)].into_iter().collect(),
        seed: None,
        sampled_t: vec![],
        fiber_invariants: vec![],
        limit_ideal: Some(c.to_string()),
        checks,
        provenance: Provenance::VerifiedInternal,
        citation: None,
    })
}

/// Genera at or above this bound get certificates at the actual
/// parameters; below it edges are certified at small sample parameters.
const EXACT_GENUS_BOUND: i64 = -12;

enum Planned {
    Internal(Vec<CertKey>, Option<&'static str>),
    Cited(&'static str),
}

fn plan_edge(label: ComponentLabel, g: i64) -> Option<(ComponentLabel, Planned)> {
    let exact = g >= EXACT_GENUS_BOUND;
    let plan = match label {
        ComponentLabel::G1 | ComponentLabel::G4 => return None,
        ComponentLabel::G2 => (ComponentLabel::G1, Planned::Cited("subextremal curves specialize to extremal curves")),
        ComponentLabel::G3 if g <= -3 => {
            let j = if exact { (g, 3) } else { (-3, 3) };
            (ComponentLabel::G4, Planned::Internal(vec![CertKey::Thick(j.0, j.1)], None))
        }
        // for g = -2 the thick locus lies in the closure of H_3
        ComponentLabel::G3 => (
            ComponentLabel::G2,
            Planned::Internal(vec![CertKey::Thick(g, 2), CertKey::Thick(g, 3)], Some("thick 4-lines lie in the closure of H_3 for g = -2")),
        ),
        ComponentLabel::G5 => (ComponentLabel::G1, Planned::Cited("double conics specialize to extremal curves")),
        ComponentLabel::G6 => (ComponentLabel::G1, Planned::Cited("a line union a curve specializes as in the connectedness of H(3,g)")),
        ComponentLabel::G7 { a } => {
            let key = if exact { CertKey::Extend(a, -3 * a - g) } else { CertKey::Extend(1, 1) };
            (ComponentLabel::G1, Planned::Internal(vec![key], None))
        }
        ComponentLabel::G8 { a } => {
            let key = if exact && WlKind::F2.in_range(a, g) { CertKey::WlClosure(a, g) } else { CertKey::WlClosure(1, -7) };
            (ComponentLabel::G1, Planned::Internal(vec![key], Some("G8,a meets the closure of G7,a, which meets G1")))
        }
        ComponentLabel::G9 { .. } => (ComponentLabel::G1, Planned::Cited("a triple line union a disjoint line specializes to an extremal curve")),
        ComponentLabel::G10 { m: 0 } => (ComponentLabel::G1, Planned::Cited("a degree-2 curve union two meeting lines specializes to an extremal curve")),
        ComponentLabel::G10 { m } => {
            let (b, c) = if exact { (m - 1, -g - m - 2) } else { (0, 1) };
            (
                ComponentLabel::G4,
                Planned::Internal(
                    vec![CertKey::Disjoint(b, c), CertKey::ThinToThick(0, b, c)],
                    Some("disjoint double lines specialize to quasiprimitive 4-lines of type (0, m-1, c)"),
                ),
            )
        }
        ComponentLabel::G11 { a, b } => {
            let key = if exact { CertKey::ThinToThick(a, b, -6 * a - b - g - 3) } else { CertKey::ThinToThick(1, 0, 1) };
            (ComponentLabel::G4, Planned::Internal(vec![key], None))
        }
    };
    Some(plan)
}

fn g2_g4_plan(g: i64) -> Option<Planned> {
    if g > -3 {
        return None;
    }
    let key = if g >= EXACT_GENUS_BOUND { CertKey::Thick(g, 2) } else { CertKey::Thick(-3, 2) };
    Some(Planned::Internal(vec![key], None))
}

/// The graph of components of `H(4, g)` with one edge per meeting used to
/// connect every component to `G1` or `G4`.
pub fn connectedness_certificate(g: i64, conv: G8Convention, cfg: &RunConfig) -> Result<ConnectednessCertificate> {
    cfg.validate()?;
    let comps = labels(g, conv);
    if g > -2 {
        return Err(Error::OutOfRange(format!("the table covers g <= -2, got {g}")));
    }
    let mut planned: Vec<(ComponentLabel, ComponentLabel, Planned)> = Vec::new();
    for &l in &comps {
        if let Some((to, p)) = plan_edge(l, g) {
            planned.push((l, to, p));
        }
    }
    if let Some(p) = g2_g4_plan(g) {
        planned.push((ComponentLabel::G2, ComponentLabel::G4, p));
    }
    let keys: BTreeSet<CertKey> = planned
        .iter()
        .flat_map(|(_, _, p)| match p {
            Planned::Internal(k, _) => k.clone(),
            Planned::Cited(_) => vec![],
        })
        .collect();
    let computed: Vec<(CertKey, Result<SpecializationCertificate>)> =
        keys.into_par_iter().map(|k| {
            let r = k.compute(cfg);
            (k, r)
        }).collect();
    let mut status_of: HashMap<CertKey, bool> = HashMap::new();
    let mut certificates = BTreeMap::new();
    for (k, r) in computed {
        match r {
            Ok(c) => {
                status_of.insert(k.clone(), c.passed());
                certificates.insert(k.id(), c);
            }
            Err(e) => {
                status_of.insert(k.clone(), false);
                let mut c = SpecializationCertificate {
                    name: k.id(),
                    parameters: BTreeMap::new(),
                    seed: None,
                    sampled_t: cfg.t_samples.clone(),
                    fiber_invariants: vec![],
                    limit_ideal: None,
                    checks: vec![],
                    provenance: Provenance::VerifiedInternal,
                    citation: None,
                };
                c.checks.push(Check { id: "computation".into(), status: Status::Fail, detail: e.to_string() });
                certificates.insert(k.id(), c);
            }
        }
    }
    let edges: Vec<Edge> = planned
        .into_iter()
        .map(|(from, to, p)| {
            let (provenance, ok) = match p {
                Planned::Internal(keys, supplement) => (
                    EdgeProvenance::VerifiedInternal {
                        certificates: keys.iter().map(CertKey::id).collect(),
                        supplement: supplement.map(String::from),
                    },
                    keys.iter().all(|k| status_of.get(k).copied().unwrap_or(false)),
                ),
                Planned::Cited(r) => (EdgeProvenance::CitedExternal { reference: r.into() }, true),
            };
            Edge { from: from.to_string(), to: to.to_string(), provenance, status: if ok { Status::Pass } else { Status::Fail } }
        })
        .collect();
    let nodes: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
    let connected = is_connected(&nodes, &edges);
    Ok(ConnectednessCertificate { genus: g, convention: conv, nodes, edges, connected, certificates })
}

fn is_connected(nodes: &[String], edges: &[Edge]) -> bool {
    let Some(start) = nodes.first() else { return false };
    let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
    for e in edges.iter().filter(|e| e.status == Status::Pass) {
        adj.entry(&e.from).or_default().push(&e.to);
        adj.entry(&e.to).or_default().push(&e.from);
    }
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut queue = VecDeque::from([start.as_str()]);
    while let Some(n) = queue.pop_front() {
        if seen.insert(n) {
            queue.extend(adj.get(n).into_iter().flatten().copied());
        }
    }
    nodes.iter().all(|n| seen.contains(n.as_str()))
}

/// Rows `{label, params, dimension, four_line, description}`.
pub fn components_json(g: i64, conv: G8Convention) -> Result<Value> {
    let comps = enumerate_components(g, conv)?;
    let strict = count_components(g, G8Convention::Strict)?;
    let inclusive = count_components(g, G8Convention::Inclusive)?;
    Ok(json!({
        "genus": g,
        "convention": conv,
        "counts": {
            "strict": { "total": strict.total, "four_line": strict.four_line },
            "inclusive": { "total": inclusive.total, "four_line": inclusive.four_line },
        },
        "components": comps.iter().map(|c| json!({
            "label": c.name,
            "params": c.params,
            "dimension": c.dimension,
            "four_line": c.four_line,
            "description": c.description,
        })).collect::<Vec<_>>(),
    }))
}

pub fn components_csv(g: i64, conv: G8Convention) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["label", "params", "dimension", "four_line", "description"]).map_err(io)?;
    for c in enumerate_components(g, conv)? {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        w.write_record([c.name, params.join(";"), c.dimension.to_string(), c.four_line.to_string(), c.description])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Degree and genus of a representative, or `None` if there is none.
pub fn representative_invariants(ring: &RingRef, label: ComponentLabel, g: i64) -> Result<Option<(i64, i64)>> {
    representative(ring, label, g)?.map(|i| degree_genus(&i)).transpose()
}

/// Meeting length of the two parts of a union representative, for checks.
pub fn union_length(i: &Ideal, j: &Ideal) -> Result<i64> {
    Ok(union_curves(i, j)?.length)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_large_negative_genus() {
        let inc = count_components(-100, G8Convention::Inclusive).unwrap();
        let strict = count_components(-100, G8Convention::Strict).unwrap();
        assert_eq!((inc.total, inc.four_line), (530, 377));
        assert_eq!((strict.total, strict.four_line), (529, 377));
        let inc = count_components(-1000, G8Convention::Inclusive).unwrap();
        let strict = count_components(-1000, G8Convention::Strict).unwrap();
        assert_eq!((inc.total, inc.four_line), (42755, 41252));
        assert_eq!(strict.total, 42754);
    }

    #[test]
    fn small_genus_tables() {
        let c = enumerate_components(-2, G8Convention::default()).unwrap();
        let mut dims: Vec<i64> = c.iter().map(|d| d.dimension).collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(dims, vec![19, 17, 17, 17, 16]);
        let c = enumerate_components(-3, G8Convention::default()).unwrap();
        assert!(c.iter().any(|d| d.label == ComponentLabel::G4 && d.dimension == 18));
        assert!(c.iter().any(|d| d.label == ComponentLabel::G6 && d.dimension == 17));
        assert!(!c.iter().any(|d| matches!(d.label, ComponentLabel::G8 { .. } | ComponentLabel::G9 { .. } | ComponentLabel::G11 { .. })));
        let c = enumerate_components(-9, G8Convention::default()).unwrap();
        assert!(c.iter().any(|d| d.label == ComponentLabel::G11 { a: 1, b: 0 }));
        assert!(enumerate_components(-1, G8Convention::default()).is_err());
    }

    #[test]
    fn labels_round_trip() {
        for g in [-3, -12] {
            for c in enumerate_components(g, G8Convention::Inclusive).unwrap() {
                assert_eq!(ComponentLabel::parse(&c.name).unwrap(), c.label);
            }
        }
        assert!(ComponentLabel::parse("G7").is_err());
        assert!(ComponentLabel::parse("H1").is_err());
    }

    #[test]
    fn special_facts() {
        assert!(!special_hilbert_facts(2).nonempty);
        assert_eq!(special_hilbert_facts(-1).dimensions, Some(vec![17, 16, 16]));
        assert_eq!(special_hilbert_facts(3).dimensions, Some(vec![17]));
        assert_eq!(special_hilbert_facts(0).component_count, 2);
        assert_eq!(special_hilbert_facts(-2).component_count, 5);
    }

    #[test]
    fn dimensions_are_positive() {
        for g in -40..=-2 {
            for c in enumerate_components(g, G8Convention::Inclusive).unwrap() {
                assert!(c.dimension > 0, "{} at g = {g}", c.name);
            }
        }
    }

    #[test]
    fn asymptotics() {
        let rows = asymptotic_check(&[-100, -1000], G8Convention::default()).unwrap();
        assert!((0.97..=1.03).contains(&rows[1].total_ratio));
        assert!((150..=155).contains(&rows[0].non_four_line));
    }

    #[test]
    fn representatives_have_the_right_genus() {
        let r = Ring::projective(32003);
        for g in [-2i64, -3, -6, -9] {
            for c in enumerate_components(g, G8Convention::Strict).unwrap() {
                let inv = representative_invariants(&r, c.label, g).unwrap();
                assert_eq!(inv, Some((4, g)), "{} at g = {g}", c.name);
            }
        }
    }

    #[test]
    fn quadrics_on_witnesses() {
        let r = Ring::projective(32003);
        for g in [-3, -5] {
            let rows = quadric_spot_checks(&r, g).unwrap();
            let h0 = |l: &str| rows.iter().find(|x| x.label == l).unwrap().h0_ideal_2;
            assert_eq!(h0("G4"), 0);
            assert!(h0("G1") >= 1 && h0("G2") >= 1 && h0("G5") >= 1);
            // a conic meets no quadric containing a double line of genus <= -4
            assert_eq!(h0("G3"), 0);
        }
    }

    #[test]
    fn connected_small() {
        let cfg = RunConfig::default();
        for g in [-2, -3] {
            let c = connectedness_certificate(g, G8Convention::default(), &cfg).unwrap();
            assert!(c.passed(), "{:?}", c.edges);
        }
    }
}
