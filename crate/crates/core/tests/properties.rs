use proptest::prelude::*;

use quartic_core::atlas::standard_double_line;
use quartic_core::cohomology::{cohomology_table, degree_genus};
use quartic_core::components::{count_components, enumerate_components, G8Convention};
use quartic_core::hilbert::standard_monomial_count;
use quartic_core::parse::{format_ideal, parse_ideal, parse_polynomial};
use quartic_core::ring::{graded_slice_dim, monomial_count};
use quartic_core::{Ideal, Polynomial, Ring, RingRef};

fn ring() -> RingRef {
    Ring::projective(32003)
}

/// Homogeneous polynomial of degree `d` from `(coefficient, exponents)` terms.
fn form(r: &RingRef, d: u32, terms: &[(i64, [u32; 3])]) -> Polynomial {
    let mut s = String::from("0");
    for (c, e) in terms {
        let ex = e[0] % (d + 1);
        let ey = e[1] % (d + 1 - ex);
        let ez = e[2] % (d + 1 - ex - ey);
        let ew = d - ex - ey - ez;
        s.push_str(&format!("+({c})*x^{ex}*y^{ey}*z^{ez}*w^{ew}"));
    }
    parse_polynomial(r, &s).unwrap()
}

fn term() -> impl Strategy<Value = (i64, [u32; 3])> {
    (-50i64..50, [0u32..4, 0u32..4, 0u32..4])
}

fn small_ideal() -> impl Strategy<Value = Vec<(u32, Vec<(i64, [u32; 3])>)>> {
    prop::collection::vec((1u32..4, prop::collection::vec(term(), 1..4)), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_distributes(a in prop::collection::vec(term(), 1..4), b in prop::collection::vec(term(), 1..4), c in prop::collection::vec(term(), 1..4)) {
        let r = ring();
        let (f, g, h) = (form(&r, 2, &a), form(&r, 2, &b), form(&r, 1, &c));
        let lhs = f.add(&g).unwrap().mul(&h).unwrap();
        let rhs = f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn slices_and_standard_monomials_agree(spec in small_ideal(), n in 0u32..7) {
        let r = ring();
        let gens: Vec<Polynomial> = spec.iter().map(|(d, t)| form(&r, *d, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(&r, gens);
        let gb = ideal.gb_ideal();
        let slice = graded_slice_dim(gb.generators(), n).unwrap() as u64;
        let original = graded_slice_dim(ideal.generators(), n).unwrap() as u64;
        prop_assert_eq!(slice, original);
        prop_assert_eq!(slice + standard_monomial_count(&ideal, n) as u64, monomial_count(4, n as i64));
    }

    #[test]
    fn intersection_sits_between_product_and_factors(a in small_ideal(), b in small_ideal()) {
        let r = ring();
        let build = |s: &[(u32, Vec<(i64, [u32; 3])>)]| {
            Ideal::new(&r, s.iter().map(|(d, t)| form(&r, *d, t)).filter(|p| !p.is_zero()).collect())
        };
        let (i, j) = (build(&a), build(&b));
        prop_assume!(!i.is_zero() && !j.is_zero());
        let meet = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&meet) && j.contains_ideal(&meet));
        prop_assert!(meet.contains_ideal(&i.product(&j).unwrap()));
    }

    #[test]
    fn ideal_files_round_trip(spec in small_ideal()) {
        let r = ring();
        let ideal = Ideal::new(&r, spec.iter().map(|(d, t)| form(&r, *d, t)).collect());
        let text = format_ideal(&ideal);
        let back = parse_ideal(&text).unwrap();
        prop_assert_eq!(format_ideal(&back), text);
    }

    #[test]
    fn component_counts_are_consistent(g in -400i64..=-2) {
        let strict = count_components(g, G8Convention::Strict).unwrap();
        let inclusive = count_components(g, G8Convention::Inclusive).unwrap();
        prop_assert_eq!(strict.four_line, inclusive.four_line);
        prop_assert!(inclusive.total == strict.total || inclusive.total == strict.total + 1);
        prop_assert_eq!(enumerate_components(g, G8Convention::Strict).unwrap().len() as u64, strict.total);
        let next = count_components(g - 1, G8Convention::Inclusive).unwrap();
        prop_assert!(next.four_line >= inclusive.four_line);
        for c in enumerate_components(g, G8Convention::Inclusive).unwrap() {
            prop_assert!(c.dimension > 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn double_lines_have_genus_minus_one_minus_a(a in -1i64..6) {
        let r = ring();
        let d = standard_double_line(&r, a).unwrap();
        prop_assert_eq!(degree_genus(&d).unwrap(), (2, -1 - a));
        prop_assert!(cohomology_table(&d, None).unwrap().euler_holds());
    }
}
