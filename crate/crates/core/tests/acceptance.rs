//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 7 asks for `m = 1 + reg R(A)`. On every listed polytope the
//! computed values satisfy `reg R(A) = m` instead (a quadric hypersurface
//! has regularity 1 and `m = 1`), so that line is expected to FAIL; the run
//! checks the corrected relation separately and fails only if that breaks.
//!
//! Criterion 9 asks for surjectivity of `(P, (m-1)P)` for `m = 2..4` on
//! every member. The Reeve simplex is not normally generated, so `(P, P)`
//! cannot be onto there; regularity only implies the maps with
//! `m - 1 >= m0`, and those are what the run insists on.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_traits::One;
use toric_koszul::cohomology::{
    check_mumford_propagation, check_multiplication_surjectivity, cohomology_dims, divisor_of_polytope, is_nef, is_regular, self_regularity_power,
    TorusDivisor,
};
use toric_koszul::ehrhart::{ehrhart_polynomial, integer_root_count, interior_gap};
use toric_koszul::groebner::{
    buchberger, default_strategies, minimal_generator_degrees, search_quadratic_gb, Monomial, MonomialOrder,
    Polynomial,
};
use toric_koszul::lattice::{dilate, normal_fan, Fan, LatticeVector, Polytope};
use toric_koszul::pipeline::{ert_pipeline, semigroup_ring, toric_ideal_of};
use toric_koszul::resolution::{
    algebraic_regularity, koszul_betti, koszul_certificate, poincare_hilbert_check, resolve_over_s, QuotientAlgebra,
    ResolutionOptions,
};
use toric_koszul::semigroup::{is_normally_generated, NormalGeneration};
use toric_koszul::{Fp32003, QQ};

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(t: Instant, limit: Duration, detail: &mut String) -> bool {
    let e = t.elapsed();
    detail.push_str(&format!("; {:.2}s of {}s", e.as_secs_f64(), limit.as_secs()));
    e <= limit
}

fn c1() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut vals = Vec::new();
    for (name, p) in corpus() {
        let roots = integer_root_count(&ehrhart_polynomial(&p).unwrap()).unwrap();
        let gap = interior_gap(&p).unwrap();
        // oracle: first dilate with an interior point, by brute enumeration
        let verts = vertices(&p);
        let oracle = (1..).find(|&s| !brute_points(&verts, s, true).is_empty()).unwrap() - 1;
        pass &= roots == gap && gap == oracle as usize;
        vals.push(format!("{name}:{roots}/{gap}"));
    }
    let mut detail = vals.join(" ");
    pass &= within(t, Duration::from_secs(5), &mut detail);
    Outcome { pass, detail }
}

fn c2() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut vals = Vec::new();
    for (name, p) in corpus() {
        let n = p.rank();
        let r = interior_gap(&p).unwrap();
        if r >= n {
            continue;
        }
        let fan = normal_fan(&p).unwrap();
        let a = divisor_of_polytope(&p, &fan).unwrap();
        let zero = TorusDivisor::zero(fan.rays().len());
        let b = std::slice::from_ref(&a);
        let ok = is_regular(&fan, &zero, &a.scale((n - r) as i64), b).unwrap().regular;
        let below = is_regular(&fan, &zero, &a.scale((n - r - 1) as i64), b).unwrap();
        let interior = brute_points(&vertices(&p), r as i64 + 1, true).len() as u64;
        let w = below.witness.clone();
        let good = ok && !below.regular && w.as_ref().is_some_and(|w| w.i == n && w.dim == interior);
        pass &= good;
        vals.push(format!("{name}:h^{n}={}/{interior}", w.map_or(0, |w| w.dim)));
    }
    let mut detail = vals.join(" ");
    pass &= within(t, Duration::from_secs(30), &mut detail);
    Outcome { pass, detail }
}

fn c3() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut runs = 0;
    let mut fails = Vec::new();
    for (name, p) in corpus() {
        let n = p.rank();
        let r = interior_gap(&p).unwrap();
        for m in (n - r) as u64..=n as u64 {
            let ro = ResolutionOptions::new(4);
            let sg = semigroup_ring(&p, m, ro.max_j).unwrap();
            let (a, _) = koszul_certificate::<Fp32003, _>(&sg, &ro, sg.automorphisms(), None).unwrap();
            let (b, _) = koszul_certificate::<QQ, _>(&sg, &ro, sg.automorphisms(), None).unwrap();
            runs += 2;
            if !(a.pass && b.pass && a.table == b.table) {
                pass = false;
                fails.push(format!("{name}@m={m}"));
            }
        }
    }
    let mut detail = format!("{runs} certificates at D=4 over F_32003 and Q, failures: {fails:?}");
    pass &= within(t, Duration::from_secs(600), &mut detail);
    Outcome { pass, detail }
}

fn c4() -> Outcome {
    let t = Instant::now();
    let rays = [[1, 0], [0, 1], [-1, 0], [0, -1]].iter().map(|r| LatticeVector::from_i64(r)).collect();
    let fan = Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
    let b1 = TorusDivisor::new(vec![1, 0, 0, 0]);
    let b2 = TorusDivisor::new(vec![0, 1, 0, 0]);
    let a = b1.add(&b2);
    let zero = TorusDivisor::zero(4);
    let bs = [b1.clone(), b2.clone()];
    let mut pass = is_nef(&fan, &b1).unwrap() && is_nef(&fan, &b2).unwrap();
    let out = is_regular(&fan, &zero, &a, &bs).unwrap();
    pass &= out.regular;
    // the five twists A - B^u, |u| = 1, 2, against Künneth
    let mut checked = 0;
    for (i, us) in [(1usize, vec![[1, 0], [0, 1]]), (2, vec![[2, 0], [1, 1], [0, 2]])] {
        for u in us {
            let d = a.sub(&b1.scale(u[0])).sub(&b2.scale(u[1]));
            let (x, y) = (d.coeffs[0] + d.coeffs[2], d.coeffs[1] + d.coeffs[3]);
            let h = cohomology_dims(&fan, &d).unwrap();
            let k = kunneth(x, y);
            pass &= (0..3).all(|q| h.h(q) == k[q]) && h.h(i) == 0;
            checked += 1;
        }
    }
    let square = Polytope::from_vertices(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let sg = semigroup_ring(&square, 1, 4).unwrap();
    let (cert, _) = koszul_certificate::<Fp32003, _>(&sg, &ResolutionOptions::new(4), &[], None).unwrap();
    pass &= cert.pass;
    let mut detail = format!("{checked} twists vanish and match Künneth, Segre pass={}", cert.pass);
    pass &= within(t, Duration::from_secs(5), &mut detail);
    Outcome { pass, detail }
}

fn c5() -> Outcome {
    let t = Instant::now();
    let o = MonomialOrder::degrevlex(1);
    let g = Polynomial::from_terms(&o, 1, vec![(Monomial(vec![3]), Fp32003::one())]);
    let alg = QuotientAlgebra::standard(buchberger(&[g], &o), 1, 4).unwrap();
    let (cert, _) = koszul_certificate(&alg, &ResolutionOptions::new(2), &[], None).unwrap();
    let w = cert.witness.as_ref().map(|w| (w.i, w.j));
    let reeve = Polytope::from_vertices(&[vec![0, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
    let ng = is_normally_generated(&reeve, 6).unwrap();
    // oracle: (1,1,1) lies in 2P and is not a sum of two lattice points of P
    let verts = vertices(&reeve);
    let in2p = brute_points(&verts, 2, false).contains(&vec![1, 1, 1]);
    let p1 = brute_points(&verts, 1, false);
    let is_sum = p1.iter().any(|x| p1.iter().any(|y| x.iter().zip(y).all(|(a, b)| a + b == 1)));
    let mut pass = !cert.pass
        && cert.failure == Some((2, 3))
        && w == Some((2, 3))
        && matches!(&ng, NormalGeneration::False { witness, .. } if witness == &vec![1, 1, 1])
        && in2p
        && !is_sum;
    let mut detail = format!("k[x]/(x^3) witness {w:?}, Reeve {ng:?}");
    pass &= within(t, Duration::from_secs(1), &mut detail);
    Outcome { pass, detail }
}

fn c6() -> Outcome {
    let mut pass = true;
    let mut vals = Vec::new();
    for (name, p) in corpus() {
        let n = p.rank();
        let m = (n - interior_gap(&p).unwrap()) as u64;
        let ng = matches!(
            is_normally_generated(&dilate(&p, m), 6).unwrap(),
            NormalGeneration::True { .. }
        ) || m == 0;
        let ideal = toric_ideal_of(&p, m, ng).unwrap();
        let gb = ideal.basis.to_groebner_basis::<Fp32003>();
        let gdeg = ideal.basis.max_degree().max(2) as usize;
        let pts = height_one(&vertices(&p), m as i64);
        // engine on the quotient presentation with the fine grading
        let q = QuotientAlgebra::graded(gb.clone(), pts.clone(), gdeg).unwrap();
        let mut engine = std::collections::BTreeMap::new();
        for ((i, a), v) in koszul_betti::<Fp32003, _>(&q, 1, gdeg).unwrap() {
            if i == 1 {
                *engine.entry(*a.last().unwrap() as usize).or_insert(0u64) += v;
            }
        }
        let oracle = beta1_by_components(&pts, gdeg);
        let mingens: std::collections::BTreeMap<usize, u64> =
            minimal_generator_degrees(&gb).into_iter().map(|(d, c)| (d as usize, c as u64)).collect();
        let agree = engine == oracle && oracle == mingens;
        let sg = semigroup_ring(&p, m, 4).unwrap();
        let mut passes = true;
        for d in [2, 4] {
            let (c, _) = koszul_certificate::<Fp32003, _>(&sg, &ResolutionOptions::new(d), sg.automorphisms(), None).unwrap();
            passes &= c.pass;
        }
        let quadrics = oracle.keys().all(|&j| j == 2);
        pass &= agree && (!passes || quadrics);
        vals.push(format!("{name}:{oracle:?}"));
    }
    Outcome {
        pass,
        detail: format!("β^S_1 by three routes, pass implies quadrics: {}", vals.join(" ")),
    }
}

/// A criterion whose literal form cannot hold, with the relation checked instead.
struct Corrected {
    outcome: Outcome,
    corrected: bool,
}

fn c7() -> Corrected {
    let t = Instant::now();
    let cases = [
        ("unit square", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]),
        ("segment [0,2]", vec![vec![0], vec![2]]),
        ("2 simplex", vec![vec![0, 0], vec![2, 0], vec![0, 2]]),
    ];
    let mut stated = true;
    let mut corrected = true;
    let mut quad = true;
    let mut vals = Vec::new();
    for (name, verts) in cases {
        let p = Polytope::from_vertices(&verts).unwrap();
        let m = self_regularity_power(&p).unwrap() as i64;
        let ideal = toric_ideal_of(&p, 1, true).unwrap();
        let gb = ideal.basis.to_groebner_basis::<Fp32003>();
        let reg = algebraic_regularity(&resolve_over_s(&gb, ideal.nvars, ideal.nvars).unwrap()).unwrap();
        // oracle: a normal semigroup ring is Cohen-Macaulay, so reg = deg h*
        let hdeg = h_star_by_counting(&verts).len() as i64 - 1;
        stated &= m == 1 + reg;
        corrected &= reg == m && reg == hdeg;
        let d = ((m + 1) / 2).max(1) as u64;
        let vid = toric_ideal_of(&p, d, true).unwrap();
        let gens = vid.polynomials::<Fp32003>();
        let found = search_quadratic_gb(&gens, &default_strategies(vid.nvars, 0, 8));
        let ert = ert_pipeline(&p, 4).unwrap();
        quad &= found.is_some() && ert.quadratic_gb.as_ref().is_some_and(|q| q.found) && ert.koszul_pass == Some(true);
        vals.push(format!("{name}: m={m} reg={reg} d={d} quadratic={}", found.is_some()));
    }
    let mut detail = format!("m = 1 + reg holds: {stated}; reg = m holds: {corrected}; {}", vals.join(", "));
    let fast = within(t, Duration::from_secs(120), &mut detail);
    Corrected {
        outcome: Outcome {
            pass: stated && quad && fast,
            detail,
        },
        corrected: corrected && quad && fast,
    }
}

fn c8() -> Outcome {
    let t = Instant::now();
    let o = MonomialOrder::degrevlex(2);
    let xy = Polynomial::from_terms(&o, 2, vec![(Monomial(vec![1, 1]), Fp32003::one())]);
    let alg = QuotientAlgebra::standard(buchberger(&[xy], &o), 2, 4).unwrap();
    let (cert, _) = koszul_certificate(&alg, &ResolutionOptions::new(4), &[], None).unwrap();
    let tor = cert.table.totals();
    // oracle: 1 / H(-t) with H(t) = (1 + t) / (1 - t)
    let expect = inverse_at_minus_t(&series(&[1, 0, -1], 2, 8), 5);
    let tor_ok = tor.iter().map(|&x| x as i128).collect::<Vec<_>>() == expect;
    let ph = poincare_hilbert_check(&tor, &[1, 0, -1], 2, 4);
    // twisted cubic: Hilbert numerator (1 + 2t)(1 - t)^2 = 1 - 3t^2 + 2t^3
    let o4 = MonomialOrder::degrevlex(4);
    let mk = |a: [u32; 4], b: [u32; 4]| {
        Polynomial::from_terms(
            &o4,
            4,
            vec![(Monomial(a.to_vec()), Fp32003::one()), (Monomial(b.to_vec()), -Fp32003::one())],
        )
    };
    let gb = buchberger(
        &[mk([1, 0, 1, 0], [0, 2, 0, 0]), mk([1, 0, 0, 1], [0, 1, 1, 0]), mk([0, 1, 0, 1], [0, 0, 2, 0])],
        &o4,
    );
    let t3 = resolve_over_s(&gb, 4, 4).unwrap();
    let numer = toric_koszul::resolution::quotient_numerator(&gb, 4);
    let shape = t3.get(0, 0) == 1 && t3.get(1, 2) == 3 && t3.get(2, 3) == 2 && t3.entries().count() == 3;
    let alt: Vec<i128> = {
        let mut v = vec![0i128; 4];
        for ((i, j), b) in t3.entries() {
            v[j] += if i % 2 == 0 { b as i128 } else { -(b as i128) };
        }
        v
    };
    let reg = algebraic_regularity(&t3).unwrap();
    let mut pass = tor_ok && ph && shape && alt == numer && numer == vec![1, 0, -3, 2] && reg == 1;
    let mut detail = format!("Tor {tor:?}, Poincaré-Hilbert {ph}, twisted cubic {}reg {reg}", t3.render().replace('\n', "; "));
    pass &= within(t, Duration::from_secs(10), &mut detail);
    Outcome { pass, detail }
}

fn c9() -> Corrected {
    let mut literal = true;
    let mut implied_ok = true;
    let mut vals = Vec::new();
    for (name, p) in corpus() {
        let fan = normal_fan(&p).unwrap();
        let a = divisor_of_polytope(&p, &fan).unwrap();
        let zero = TorusDivisor::zero(fan.rays().len());
        let m0 = self_regularity_power(&p).unwrap() as i64;
        let prop = check_mumford_propagation(&fan, &zero, &a.scale(m0), std::slice::from_ref(&a), &[vec![1], vec![2], vec![3]])
            .unwrap();
        // (P, (m-1)P) for m = 2..4; implied once O_X is A^{m-1}-regular
        let verts = vertices(&p);
        let mut surj = String::new();
        for m in 2..=4i64 {
            let engine = check_multiplication_surjectivity(&p, &dilate(&p, (m - 1) as u64)).unwrap();
            let oracle = minkowski_surjective(&verts, 1, m - 1);
            let implied = m - 1 >= m0;
            literal &= engine;
            implied_ok &= engine == oracle && (!implied || engine) && prop;
            surj.push(if engine { 'y' } else if implied { 'X' } else { 'n' });
        }
        vals.push(format!("{name}:{surj}"));
    }
    Corrected {
        outcome: Outcome {
            pass: literal && implied_ok,
            detail: format!(
                "propagation on 3 twists; surjectivity for m = 2..4 (y/n, X if implied but missing): {}; \
                 all hold: {literal}; all implied hold: {implied_ok}",
                vals.join(" ")
            ),
        },
        corrected: implied_ok,
    }
}

fn main() {
    let mut all = true;
    let report = |k: usize, o: &Outcome| {
        println!("criterion {k}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    };
    for (k, f) in [(1, c1 as fn() -> Outcome), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6)] {
        let o = f();
        report(k, &o);
        all &= o.pass;
    }
    let seven = c7();
    report(7, &seven.outcome);
    if !seven.corrected {
        println!("criterion 7: corrected relation reg R(A) = m also fails");
        all = false;
    }
    let o = c8();
    report(8, &o);
    all &= o.pass;
    let nine = c9();
    report(9, &nine.outcome);
    if !nine.corrected {
        println!("criterion 9: a surjectivity implied by regularity fails");
        all = false;
    }
    if !all {
        std::process::exit(1);
    }
}
