mod common;

use common::*;
use toric_koszul::groebner::{
    initial_ideal, monomials_of_degree, toric_ideal, toric_ideal_by_lattice_basis, vanishes_on_configuration,
};
use toric_koszul::semigroup::PointConfiguration;
use toric_koszul::Fp32003;

#[test]
fn both_routes_give_the_same_ideal() {
    for (name, p) in corpus() {
        let pts = height_one(&vertices(&p), 1);
        if pts.len() > 12 {
            continue;
        }
        let cfg = PointConfiguration::from_i64(&pts).unwrap();
        let a = toric_ideal(&cfg).unwrap();
        let b = toric_ideal_by_lattice_basis(&cfg).unwrap();
        assert!(vanishes_on_configuration(a.generators(), &pts), "{name}");
        let (ga, gb) = (a.basis.to_groebner_basis::<Fp32003>(), b.basis.to_groebner_basis::<Fp32003>());
        assert!(ga.same_ideal(&b.polynomials::<Fp32003>()), "{name}");
        assert!(gb.same_ideal(&a.polynomials::<Fp32003>()), "{name}");
    }
}

#[test]
fn hilbert_function_counts_dilates() {
    for (name, p) in corpus() {
        let v = vertices(&p);
        let pts = height_one(&v, 1);
        if pts.len() > 12 {
            continue;
        }
        let ideal = toric_ideal(&PointConfiguration::from_i64(&pts).unwrap()).unwrap();
        let lead = initial_ideal(&ideal.basis.to_groebner_basis::<Fp32003>());
        // Reeve is not normal: k[A] sees the generated semigroup only
        let levels = semigroup_levels(&pts, 4);
        for m in 0..=4u32 {
            let standard = monomials_of_degree(pts.len(), m)
                .into_iter()
                .filter(|x| !lead.iter().any(|l| l.divides(x)))
                .count();
            assert_eq!(standard, levels[m as usize].len(), "{name} at {m}");
            if name != "10_reeve" {
                assert_eq!(standard, brute_points(&v, m as i64, false).len(), "{name} at {m}");
            }
        }
    }
}
