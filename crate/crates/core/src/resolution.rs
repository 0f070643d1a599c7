//! Minimal graded free resolutions and Betti tables.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::{minimal_generator_indices, vec_degree, ModuleGb};
use crate::hilbert::HilbertSeries;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::ring::{monomial_count, RingRef};

/// A complex of graded free modules `F_0 <- F_1 <- ... <- F_n`, each `F_i`
/// given by its generator degrees; `maps[i]` is `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    ring: RingRef,
    modules: Vec<Vec<i64>>,
    maps: Vec<PolyMatrix>,
}

/// `β_{i,d}`: number of degree-`d` generators of `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: Vec<BTreeMap<i64, usize>>,
}

impl BettiTable {
    pub fn total(&self, i: usize) -> usize {
        self.entries.get(i).map_or(0, |m| m.values().sum())
    }

    pub fn get(&self, i: usize, d: i64) -> usize {
        self.entries.get(i).and_then(|m| m.get(&d)).copied().unwrap_or(0)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // rows indexed by d - i
        let mut rows: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let n = self.entries.len();
        for (i, m) in self.entries.iter().enumerate() {
            for (&d, &c) in m {
                rows.entry(d - i as i64).or_insert_with(|| vec![0; n])[i] = c;
            }
        }
        write!(f, "{:>6}", "")?;
        for i in 0..n {
            write!(f, "{i:>6}")?;
        }
        writeln!(f)?;
        for (r, cs) in rows {
            write!(f, "{r:>5}:")?;
            for c in cs {
                if c == 0 {
                    write!(f, "{:>6}", "-")?;
                } else {
                    write!(f, "{c:>6}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl GradedComplex {
    /// Assembles a complex; checks that the maps compose to zero and match
    /// the declared degrees.
    pub fn new(ring: &RingRef, modules: Vec<Vec<i64>>, maps: Vec<PolyMatrix>) -> Result<Self> {
        if maps.len() + 1 != modules.len() {
            return Err(Error::Invalid("need one map between consecutive modules".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.row_degrees() != modules[i].as_slice() || m.col_degrees() != modules[i + 1].as_slice() {
                return Err(Error::Invalid(format!("map {} does not match the module shifts", i + 1)));
            }
            if !m.is_graded() {
                return Err(Error::NotHomogeneous(format!("map {} is not degree preserving", i + 1)));
            }
        }
        let c = GradedComplex { ring: ring.clone(), modules, maps };
        if !c.composes_to_zero() {
            return Err(Error::Invalid("consecutive maps do not compose to zero".into()));
        }
        Ok(c)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Generator degrees of each `F_i`.
    pub fn modules(&self) -> &[Vec<i64>] {
        &self.modules
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.modules.iter().rposition(|m| !m.is_empty()).unwrap_or(0)
    }

    pub fn composes_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false))
    }

    pub fn betti(&self) -> BettiTable {
        let entries = self
            .modules
            .iter()
            .map(|m| {
                let mut b = BTreeMap::new();
                for &d in m {
                    *b.entry(d).or_insert(0) += 1;
                }
                b
            })
            .collect();
        BettiTable { entries }
    }

    /// `Σ (-1)^i dim (F_i)_n`.
    pub fn euler_dim(&self, n: i64) -> i64 {
        let nv = self.ring.nvars();
        let mut s = 0i64;
        for (i, m) in self.modules.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in m {
                s += sign * monomial_count(nv, n - d) as i64;
            }
        }
        s
    }

    /// The alternating sum of the shifts as a series numerator.
    pub fn euler_series(&self) -> HilbertSeries {
        let nv = self.ring.nvars();
        let low = self.modules.iter().flatten().copied().min().unwrap_or(0);
        let high = self.modules.iter().flatten().copied().max().unwrap_or(0);
        let mut num = vec![0i64; (high - low + 1) as usize];
        for (i, m) in self.modules.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in m {
                num[(d - low) as usize] += sign;
            }
        }
        HilbertSeries { nvars: nv, low, numerator: num }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "modules": self.modules,
            "maps": self.maps.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Minimal free resolution of the cokernel of a graded presentation matrix.
/// The columns are first pruned to a minimal generating set.
pub fn resolve(presentation: &PolyMatrix) -> Result<GradedComplex> {
    if !presentation.is_graded() {
        return Err(Error::NotHomogeneous("presentation matrix".into()));
    }
    let ring = presentation.ring().clone();
    if ring.weights().iter().any(|&w| w != 1) {
        return Err(Error::Invalid("resolutions need a standard graded ring".into()));
    }
    let first = minimize_columns(presentation);
    let mut modules = vec![first.row_degrees().to_vec()];
    let mut maps = Vec::new();
    let mut cur = first;
    // Hilbert's syzygy theorem bounds the length
    for _ in 0..=ring.nvars() {
        if cur.ncols() == 0 {
            break;
        }
        modules.push(cur.col_degrees().to_vec());
        let next = cur.syzygies();
        maps.push(cur);
        cur = next;
    }
    GradedComplex::new(&ring, modules, maps)
}

fn minimize_columns(m: &PolyMatrix) -> PolyMatrix {
    let cols: Vec<_> = m.columns();
    let keep = minimal_generator_indices(m.ring(), m.row_degrees(), &cols);
    let kept: Vec<_> = keep.iter().map(|&k| cols[k].clone()).collect();
    let degs = kept.iter().map(|v| vec_degree(m.ring(), m.row_degrees(), v).unwrap()).collect();
    PolyMatrix::from_columns(m.ring(), m.row_degrees().to_vec(), &kept, degs)
}

/// Minimal free resolution of `S/I`.
pub fn free_resolution(ideal: &Ideal) -> Result<GradedComplex> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(ideal.to_string()));
    }
    let gens = ideal.minimal_generators();
    let ring = ideal.ring();
    if gens.is_empty() {
        return GradedComplex::new(ring, vec![vec![0]], vec![]);
    }
    let row = PolyMatrix::row(ring, &gens)?;
    resolve(&row)
}

/// Reduced Gröbner basis of the image of a matrix inside its target.
pub fn image_basis(m: &PolyMatrix) -> ModuleGb {
    ModuleGb::compute(m.ring(), m.row_degrees().to_vec(), m.columns())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertSeries;
    use crate::parse::parse_polynomial;
    use crate::ring::{MonomialOrder, Ring};

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect())
    }

    #[test]
    fn koszul_of_a_line() {
        let r = Ring::projective(32003);
        let c = free_resolution(&ideal(&r, &["x", "y"])).unwrap();
        assert_eq!(c.modules(), &[vec![0], vec![1, 1], vec![2]]);
        assert!(c.composes_to_zero());
    }

    #[test]
    fn twisted_cubic_betti() {
        let r = Ring::projective(32003);
        let c = free_resolution(&ideal(&r, &["x*z-y^2", "y*w-z^2", "x*w-y*z"])).unwrap();
        let b = c.betti();
        assert_eq!((b.total(0), b.total(1), b.total(2)), (1, 3, 2));
        assert_eq!(b.get(2, 3), 2);
    }

    #[test]
    fn euler_sums_match_hilbert_function() {
        let r = Ring::projective(32003);
        for gens in [vec!["x^2", "x*y", "y^3", "x*z^3-y^2*w^2"], vec!["x^2", "x*y", "y^2", "x*w-y*z"]] {
            let i = ideal(&r, &gens);
            let c = free_resolution(&i).unwrap();
            let s = HilbertSeries::of_ideal(&i).unwrap();
            for n in 0..=12 {
                assert_eq!(c.euler_dim(n), s.value(n), "{gens:?} {n}");
            }
            assert!(c.length() <= 3);
        }
    }

    #[test]
    fn module_over_line_ring() {
        let r = Ring::new(&["z", "w"], 32003, MonomialOrder::Grevlex).unwrap();
        let m = PolyMatrix::parse(&r, &[&["z^4", "w^4", "z^2*w^2"]]).unwrap();
        let c = resolve(&m).unwrap();
        assert_eq!(c.modules()[2], vec![6, 6]);
        assert!(c.betti().to_string().contains("    4:"));
    }
}
