use proptest::prelude::*;
use toric_koszul::groebner::{buchberger, Monomial, MonomialOrder, Polynomial};
use toric_koszul::lattice::Polytope;
use toric_koszul::pipeline::semigroup_ring;
use toric_koszul::resolution::{
    koszul_certificate, poincare_hilbert_check, quotient_numerator, QuotientAlgebra, ResolutionOptions,
};
use toric_koszul::{Field, Fp32003, QQ};

fn monomial_quotient<F: Field>(gens: &[Vec<u32>]) -> QuotientAlgebra<F> {
    let o = MonomialOrder::degrevlex(3);
    let ps: Vec<Polynomial<F>> =
        gens.iter().map(|g| Polynomial::from_terms(&o, 3, vec![(Monomial(g.clone()), F::one())])).collect();
    QuotientAlgebra::standard(buchberger(&ps, &o), 3, 4).unwrap()
}

/// Minimal generators of the monomial ideal spanned by `gens`.
fn minimal(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let divides = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        if !gens.iter().any(|h| h != g && divides(h, g)) && !out.contains(g) {
            out.push(g.clone());
        }
    }
    out
}

fn exponent() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..3, 3).prop_filter("degree 2 or 3", |e| (2..=3).contains(&e.iter().sum::<u32>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // quadratic monomial ideals are Koszul; a minimal cubic generator
    // shows up as a nonlinear second syzygy of the residue field
    #[test]
    fn monomial_quotients(gens in prop::collection::vec(exponent(), 1..5)) {
        let alg = monomial_quotient::<Fp32003>(&gens);
        let opts = ResolutionOptions::new(4);
        let (cert, res) = koszul_certificate(&alg, &opts, &[], None).unwrap();
        prop_assert!(res.verify(&alg).is_ok());
        let quadratic = minimal(&gens).iter().all(|g| g.iter().sum::<u32>() == 2);
        prop_assert_eq!(cert.pass, quadratic);
        if !quadratic {
            prop_assert_eq!(cert.failure, Some((2, 3)));
        } else {
            let numer = quotient_numerator(alg.groebner_basis(), 3);
            prop_assert!(poincare_hilbert_check(&cert.table.totals(), &numer, 3, 4));
        }
        let (over_q, _) = koszul_certificate(&monomial_quotient::<QQ>(&gens), &opts, &[], None).unwrap();
        prop_assert_eq!(over_q.table, cert.table);
    }
}

#[test]
fn orbits_do_not_change_the_table() {
    let cube = Polytope::from_vertices(&[
        vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1],
        vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1],
    ])
    .unwrap();
    let sg = semigroup_ring(&cube, 1, 4).unwrap();
    let opts = ResolutionOptions::new(3);
    let autos = sg.automorphisms();
    assert_eq!(autos.len(), 48);
    let (with, _) = koszul_certificate::<Fp32003, _>(&sg, &opts, autos, None).unwrap();
    let (without, _) = koszul_certificate::<Fp32003, _>(&sg, &opts, &[], None).unwrap();
    assert!(with.orbit_reduced_degrees > 0);
    assert_eq!(with.table, without.table);
    assert!(with.pass);
}
