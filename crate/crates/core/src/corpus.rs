//! The verification corpus: constructor outputs with their declared degree,
//! genus and spectrum class, exported as ideal files plus a JSON manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atlas::{extremal_quartic, ferrand_double, quasiprimitive_4line, standard_double_line, wl_family_member, FerrandSupport, WlKind};
use crate::cohomology::SpectrumClass;
use crate::components::{enumerate_components, representative, thick_witness, G8Convention};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::parse::{format_ideal, parse_polynomial};
use crate::ring::{Ring, RingRef};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub constructor: String,
    pub parameters: BTreeMap<String, i64>,
    pub ideal: Ideal,
    pub degree: i64,
    pub genus: i64,
    pub spectrum_class: Option<SpectrumClass>,
}

impl CorpusEntry {
    /// File stem built from the constructor and its parameters.
    pub fn stem(&self) -> String {
        let mut s = self.constructor.replace(',', "_");
        for (k, v) in &self.parameters {
            s.push_str(&format!("_{k}{v}"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRow {
    pub constructor: String,
    pub parameters: BTreeMap<String, i64>,
    pub path: String,
    pub expected: ExpectedInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedInvariants {
    pub degree: i64,
    pub genus: i64,
    pub spectrum_class: Option<SpectrumClass>,
}

type Builder = Box<dyn Fn(&RingRef) -> Result<Ideal> + Send + Sync>;

struct Spec {
    constructor: String,
    parameters: Vec<(String, i64)>,
    degree: i64,
    genus: i64,
    class: Option<SpectrumClass>,
    build: Builder,
}

fn specs() -> Vec<Spec> {
    let mut out: Vec<Spec> = Vec::new();
    for a in [-1i64, 0, 1, 2] {
        out.push(Spec {
            constructor: "double-line".into(),
            parameters: vec![("a".into(), a)],
            degree: 2,
            genus: -1 - a,
            class: None,
            build: Box::new(move |r| standard_double_line(r, a)),
        });
    }
    for g in [0i64, -1, -3, -5] {
        out.push(Spec {
            constructor: "extremal".into(),
            parameters: vec![("g".into(), g)],
            degree: 4,
            genus: g,
            class: Some(SpectrumClass::Extremal),
            build: Box::new(move |r| extremal_quartic(r, g)),
        });
    }
    for (g, j) in [(-3i64, 2i64), (-3, 3), (-3, 4), (-5, 2), (-5, 5)] {
        out.push(Spec {
            constructor: "thick".into(),
            parameters: vec![("g".into(), g), ("j".into(), j)],
            degree: 4,
            genus: g,
            class: Some(SpectrumClass::SubextremalSpectrum),
            build: Box::new(move |r| thick_witness(r, g, j)),
        });
    }
    for (a, b, c) in [(0i64, 0i64, 0i64), (0, 1, 1), (1, 0, 1), (1, 1, 2)] {
        out.push(Spec {
            constructor: "quasiprimitive".into(),
            parameters: vec![("a".into(), a), ("b".into(), b), ("c".into(), c)],
            degree: 4,
            genus: -6 * a - b - c - 3,
            class: None,
            build: Box::new(move |r| quasiprimitive_4line(r, a, b, c, 1)),
        });
    }
    for (kind, a, g) in [(WlKind::F1, 1i64, -6i64), (WlKind::F3, 1, -7)] {
        out.push(Spec {
            constructor: format!("wl-{kind}").to_lowercase(),
            parameters: vec![("a".into(), a), ("g".into(), g)],
            degree: 4,
            genus: g,
            class: None,
            build: Box::new(move |r| Ok(wl_family_member(r, kind, a, g)?.curve)),
        });
    }
    out.push(Spec {
        constructor: "double-conic".into(),
        parameters: vec![("l".into(), 1)],
        degree: 4,
        genus: -2,
        class: None,
        build: Box::new(|r| {
            let line = Ring::line(r.characteristic());
            ferrand_double(r, FerrandSupport::Conic, &parse_polynomial(&line, "z^3")?, &parse_polynomial(&line, "w^5")?)
        }),
    });
    for g in [-3i64, -6] {
        for c in enumerate_components(g, G8Convention::Strict).expect("g <= -2") {
            let label = c.label;
            let mut parameters = vec![("g".to_string(), g)];
            parameters.extend(c.params.clone());
            out.push(Spec {
                constructor: c.name.clone(),
                parameters,
                degree: 4,
                genus: g,
                class: None,
                build: Box::new(move |r| {
                    representative(r, label, g)?.ok_or_else(|| Error::Degenerate(format!("no representative for {label}")))
                }),
            });
        }
    }
    out
}

/// Builds every corpus curve in parallel.
pub fn build_corpus(characteristic: u32) -> Result<Vec<CorpusEntry>> {
    let ring = Ring::projective(characteristic);
    specs()
        .into_par_iter()
        .map(|s| {
            let ideal = (s.build)(&ring)?;
            Ok(CorpusEntry {
                constructor: s.constructor,
                parameters: s.parameters.into_iter().collect(),
                ideal,
                degree: s.degree,
                genus: s.genus,
                spectrum_class: s.class,
            })
        })
        .collect()
}

/// Writes `<stem>.ideal` files and `manifest.json` under `dir`.
pub fn write_corpus(entries: &[CorpusEntry], dir: &Path) -> Result<Vec<ManifestRow>> {
    fs::create_dir_all(dir)?;
    let mut rows = Vec::new();
    for e in entries {
        let name = format!("{}.ideal", e.stem());
        fs::write(dir.join(&name), format_ideal(&e.ideal))?;
        rows.push(ManifestRow {
            constructor: e.constructor.clone(),
            parameters: e.parameters.clone(),
            path: name,
            expected: ExpectedInvariants { degree: e.degree, genus: e.genus, spectrum_class: e.spectrum_class },
        });
    }
    let json = serde_json::to_string_pretty(&rows).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::is_curve;

    #[test]
    fn corpus_matches_declared_invariants() {
        let corpus = build_corpus(32003).unwrap();
        assert!(corpus.len() > 30);
        for e in &corpus {
            let c = is_curve(&e.ideal).unwrap();
            assert!(c.locally_cm, "{}", e.stem());
            assert_eq!((c.degree, c.genus), (Some(e.degree), Some(e.genus)), "{}", e.stem());
            if let Some(class) = e.spectrum_class {
                assert_eq!(c.spectrum_class, Some(class), "{}", e.stem());
            }
        }
    }
}
