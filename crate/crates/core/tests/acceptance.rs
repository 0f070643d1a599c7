//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quartic_core::atlas::{extremal_quartic, quasiprimitive_4line, thick_4line};
use quartic_core::cohomology::{mult_image_dim, CurveCohomology, Spectrum};
use quartic_core::components::{
    connectedness_certificate, count_components, special_hilbert_facts, thick_witness, G8Convention,
};
use quartic_core::config::RunConfig;
use quartic_core::corpus::build_corpus;
use quartic_core::deform::{random_form, verify_extend, verify_perrin, verify_thintothick};
use quartic_core::hilbert::{standard_monomial_count, HilbertSeries};
use quartic_core::parse::parse_polynomial;
use quartic_core::resolution::free_resolution;
use quartic_core::ring::{graded_slice_dim, monomial_count};
use quartic_core::{Ideal, Polynomial, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn component_counts() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (g, four, strict, inclusive) in [(-100, 377, 529, 530), (-1000, 41252, 42754, 42755)] {
        let s = count_components(g, G8Convention::Strict).map_err(err)?;
        let i = count_components(g, G8Convention::Inclusive).map_err(err)?;
        ensure(s.four_line == four && i.four_line == four, || format!("g={g}: four-line {} / {}", s.four_line, i.four_line))?;
        ensure(s.total == strict && i.total == inclusive, || format!("g={g}: totals {} / {}", s.total, i.total))?;
        parts.push(format!("g={g}: four-line {four}, strict {strict}, inclusive {inclusive}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(parts.join("; "))
}

fn special_cases() -> Outcome {
    let mut dims = special_hilbert_facts(-2).dimensions.unwrap_or_default();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    ensure(dims == [19, 17, 17, 17, 16], || format!("g=-2 dims {dims:?}"))?;
    let f = special_hilbert_facts(-1);
    ensure(f.component_count == 3 && f.dimensions == Some(vec![17, 16, 16]), || format!("g=-1 {:?}", f.dimensions))?;
    ensure(!special_hilbert_facts(2).nonempty, || "g=2 nonempty".into())?;
    let f = special_hilbert_facts(3);
    ensure(f.component_count == 1 && f.dimensions == Some(vec![17]), || format!("g=3 {:?}", f.dimensions))?;
    Ok("g=-2 {19,17,17,17,16}; g=-1 {17,16,16}; g=2 empty; g=3 {17}".into())
}

fn genus_formula() -> Outcome {
    let ring = Ring::projective(32003);
    let mut n = 0;
    for a in 0..=2i64 {
        for b in 0..=2i64 {
            for c in b..=2i64 {
                let i = quasiprimitive_4line(&ring, a, b, c, 1).map_err(err)?;
                let hp = HilbertSeries::of_ideal(&i).map_err(err)?.polynomial();
                let expected = -6 * a - b - c - 3;
                ensure(hp.degree() == 4 && hp.genus() == Some(expected), || {
                    format!("({a},{b},{c}): degree {} genus {:?}, expected {expected}", hp.degree(), hp.genus())
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} types, degree 4 and genus -6a-b-c-3"))
}

fn thin_to_thick() -> Outcome {
    let cfg = RunConfig::default();
    for (a, b, c) in [(0, 0, 0), (1, 0, 1), (1, 1, 2)] {
        let cert = verify_thintothick(a, b, c, &cfg).map_err(err)?;
        let failed: Vec<String> = cert.failures().iter().map(|c| c.id.clone()).collect();
        ensure(cert.passed(), || format!("({a},{b},{c}) failed {failed:?}"))?;
    }
    Ok("(0,0,0), (1,0,1), (1,1,2) certified".into())
}

fn extremal_degeneration() -> Outcome {
    let cfg = RunConfig::default();
    for (a, b) in [(0, 0), (1, 1)] {
        let cert = verify_extend(a, b, &cfg).map_err(err)?;
        let failed: Vec<String> = cert.failures().iter().map(|c| c.id.clone()).collect();
        ensure(cert.passed(), || format!("({a},{b}) failed {failed:?}"))?;
        ensure(cert.checks.iter().any(|c| c.id == "limit-extremal-union-line"), || "limit check missing".into())?;
    }
    Ok("limits equal the extremal triple union the line for (0,0), (1,1)".into())
}

fn spectra() -> Outcome {
    let ring = Ring::projective(32003);
    let line = Ring::line(32003);
    for g in [0, -3, -5] {
        let s = CurveCohomology::new(&extremal_quartic(&ring, g).map_err(err)?).map_err(err)?.spectrum().map_err(err)?;
        ensure(s == Spectrum::from_values(&[g, 0, 1, 2]), || format!("extremal g={g}: {s}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in [-3, -5] {
        let forms: [Polynomial; 3] = std::array::from_fn(|_| random_form(&line, 1 - g, &mut rng));
        let images: Vec<Polynomial> = forms.iter().map(|f| f.map_to(&ring)).collect::<Result<_, _>>().map_err(err)?;
        let general = thick_4line(&ring, g, &[images[0].clone(), images[1].clone(), images[2].clone()]).map_err(err)?;
        let coh = CurveCohomology::new(&general).map_err(err)?;
        let s = coh.spectrum().map_err(err)?;
        ensure(s == Spectrum::from_values(&[g + 1, 0, 1, 1]), || format!("thick g={g}: {s}"))?;
        let rao = coh.rao_presentation().map_err(err)?;
        ensure(rao.j == Some(rao.n_g), || format!("thick g={g}: j {:?}, n(g) {}", rao.j, rao.n_g))?;
        for j in [2, 3] {
            let w = CurveCohomology::new(&thick_witness(&ring, g, j).map_err(err)?).map_err(err)?;
            let rao = w.rao_presentation().map_err(err)?;
            ensure(rao.j == Some(j), || format!("witness g={g}, j={j}: read {:?}", rao.j))?;
            ensure(w.spectrum().map_err(err)? == s, || format!("witness g={g}, j={j}: spectrum"))?;
        }
    }
    Ok("extremal {g,0,1,2}; thick {g+1,0,1^2} with j = n(g); witnesses j = 2, 3".into())
}

/// Span of `{v l}` by rank of the degree-`d+1` slice they generate.
fn span_oracle(v: &[Polynomial], l: &[Polynomial]) -> usize {
    let products: Vec<Polynomial> = v.iter().flat_map(|f| l.iter().map(|g| f.mul(g).unwrap())).collect();
    let d = products[0].degree().unwrap();
    graded_slice_dim(&products, d).unwrap()
}

fn powers() -> Outcome {
    let ring = Ring::projective(32003);
    let l = Ideal::of_variables(&ring, &["x", "y"]).map_err(err)?;
    let lin = l.generators().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = parse_polynomial(&ring, "z^2+x*w-3*y*z").map_err(err)?;
    let mut rows = Vec::new();
    for r in 2..=4i64 {
        let v: Vec<Polynomial> = (0..r)
            .map(|i| parse_polynomial(&ring, &format!("x^{}*y^{i}", r - 1 - i)).and_then(|m| m.mul(&f)))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let dim = mult_image_dim(&v, &l).map_err(err)?;
        ensure(dim as i64 == r + 1 && span_oracle(&v, &lin) == dim, || format!("r={r}: equality case gave {dim}"))?;
        let mut perturbed = v.clone();
        let d = v[0].degree().unwrap() as i64;
        perturbed[0] = perturbed[0].add(&random_form(&ring, d, &mut rng)).map_err(err)?;
        let pdim = mult_image_dim(&perturbed, &l).map_err(err)?;
        ensure(pdim as i64 > r + 1 && span_oracle(&perturbed, &lin) == pdim, || format!("r={r}: perturbed gave {pdim}"))?;
        rows.push(format!("r={r}: {dim} vs {pdim}"));
    }
    Ok(rows.join("; "))
}

fn perrin() -> Outcome {
    let cfg = RunConfig::default();
    for g in [-3, -4] {
        let rep = verify_perrin(g, &cfg).map_err(err)?;
        let failed: Vec<&str> = rep.checks.iter().filter(|c| c.status != quartic_core::deform::Status::Pass).map(|c| c.id.as_str()).collect();
        ensure(rep.passed(), || format!("g={g} failed {failed:?}"))?;
        ensure(rep.window == (g - 2, 8), || format!("g={g}: window {:?}", rep.window))?;
    }
    Ok("g = -3, -4: all subquotient identities hold on [g-2, 8]".into())
}

fn connectedness() -> Outcome {
    let cfg = RunConfig::default();
    let mut edges = 0;
    for g in (-12..=-2).chain([-100]) {
        let cert = connectedness_certificate(g, G8Convention::default(), &cfg).map_err(err)?;
        let failed: Vec<String> = cert.edges.iter().filter(|e| e.status != quartic_core::deform::Status::Pass).map(|e| format!("{}-{}", e.from, e.to)).collect();
        ensure(cert.passed(), || format!("g={g}: connected {}, failed edges {failed:?}", cert.connected))?;
        edges += cert.edges.len();
    }
    Ok(format!("g = -2..-12 and -100 connected, {edges} edges"))
}

fn engine_oracle() -> Outcome {
    let corpus = build_corpus(32003).map_err(err)?;
    for e in &corpus {
        let gb = e.ideal.gb_ideal();
        let gens = gb.generators();
        let series = HilbertSeries::of_ideal(&e.ideal).map_err(err)?;
        let res = free_resolution(&e.ideal).map_err(err)?;
        for n in 0..=12u32 {
            let slice = graded_slice_dim(gens, n).map_err(err)? as u64;
            let standard = standard_monomial_count(&e.ideal, n) as u64;
            ensure(slice + standard == monomial_count(4, n as i64), || format!("{} n={n}: {slice} + {standard}", e.stem()))?;
            ensure(res.euler_dim(n as i64) == series.value(n as i64), || format!("{} n={n}: resolution Euler sum", e.stem()))?;
            ensure(series.value(n as i64) == standard as i64, || format!("{} n={n}: Hilbert series", e.stem()))?;
        }
    }
    Ok(format!("{} corpus ideals agree for n <= 12", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("component counts", component_counts),
        ("special cases", special_cases),
        ("genus formula", genus_formula),
        ("thin-to-thick certificates", thin_to_thick),
        ("extremal degeneration", extremal_degeneration),
        ("spectra", spectra),
        ("multiplication-map powers", powers),
        ("subquotient identities", perrin),
        ("connectedness certificates", connectedness),
        ("engine/oracle agreement", engine_oracle),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
