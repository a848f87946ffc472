//! End-to-end analysis of a lattice polytope and report verification.
//!
//! `analyze` runs Ehrhart data, cohomological regularity, the semigroup
//! ring, the toric ideal and the Koszul certificate in that order, and
//! cross-checks every stage against another. Reports are deterministic: the
//! same input and options give byte-identical JSON, except for the optional
//! timings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cohomology::{
    check_multiplication_surjectivity, check_mumford_propagation, cohomology_dims, divisor_of_polytope, is_regular,
    self_regularity_power, RegularityWitness, TorusDivisor,
};
use crate::ehrhart::{ehrhart_polynomial, h_star, integer_root_count, interior_gap, reciprocity_check};
use crate::error::{Error, Result};
use crate::groebner::{
    default_strategies, hilbert_numerator, minimal_generator_degrees, search_quadratic_gb_binomial, toric_ideal_with,
    GbStatus, ToricIdeal,
};
use crate::io::{polytope_to_json, read_polytope, PolytopeInput};
use crate::lattice::{dilate, interior_lattice_points, normal_fan, Polytope};
use crate::resolution::{
    algebraic_regularity, betti_over_s, internal_degree_bound, koszul_betti, koszul_certificate,
    poincare_hilbert_check, GradedAlgebra, QuotientAlgebra, ResolutionOptions, SemigroupAlgebra, SyzygyWitness,
};
use crate::scalar::{Field, Fp, Rational};
use crate::semigroup::{automorphisms, is_normally_generated, stabilization_degree, veronese, NormalGeneration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    Fp,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    /// Homological cutoff of the Koszul certificate.
    pub cutoff_d: usize,
    pub field: FieldChoice,
    /// Seed for the random orders after the two fixed ones.
    pub gb_seed: u64,
    /// Number of seeded random orders tried by the quadratic search.
    pub gb_random_orders: usize,
    /// Normal generation is checked for `2 <= m <= ng_bound`; default `2n`.
    pub ng_bound: Option<u64>,
    pub emit_differentials: bool,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cutoff_d: 4,
            field: FieldChoice::Fp,
            gb_seed: 0,
            gb_random_orders: 8,
            ng_bound: None,
            emit_differentials: false,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub beta: u64,
}

/// Betti table as serialized in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub over: String,
    pub cutoff: usize,
    pub max_j: usize,
    pub complete: bool,
    pub entries: Vec<BettiEntry>,
}

impl BettiJson {
    fn from_table(t: &crate::resolution::GradedBettiTable) -> Self {
        serde_json::from_value(serde_json::to_value(t).expect("table serializes")).expect("table shape")
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.beta)
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.cutoff)
            .map(|i| self.entries.iter().filter(|e| e.i == i).map(|e| e.beta).sum())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartSection {
    pub polynomial: Vec<String>,
    pub h_star: Vec<i128>,
    pub r_integer_roots: usize,
    pub r_interior_gap: usize,
    pub reciprocity_verified_to: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityStep {
    pub m: u64,
    pub regular: bool,
    pub witness: Option<RegularityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityCheck {
    /// The pair `(kP, P)`.
    pub k: u64,
    /// `k >= self_regularity_power`, so surjectivity is implied.
    pub implied: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularitySection {
    pub self_regularity_power: u64,
    /// `A^m` regular with respect to `A`, for `m` from `0` up to the answer.
    pub history: Vec<RegularityStep>,
    /// `h^n(-(r+1)A)`, which must equal `|int((r+1)P)|`.
    pub top_cohomology_below: Option<u64>,
    pub interior_points_r_plus_one: u64,
    pub propagation_samples: Vec<Vec<u64>>,
    pub propagation_holds: bool,
    pub surjectivity: Vec<SurjectivityCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupSection {
    pub m_star: u64,
    pub generators: usize,
    /// Normal generation of `P` itself.
    pub normal_generation: NormalGeneration,
    /// Normal generation of `m* P`.
    pub normal_generation_m_star: NormalGeneration,
    pub automorphisms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSearchReport {
    pub found: bool,
    pub order: Option<String>,
    pub strategy_index: Option<usize>,
    pub strategies_tried: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: u32,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSection {
    pub nvars: usize,
    pub route: String,
    pub groebner_size: usize,
    pub groebner_degree: u32,
    /// Degrees of minimal generators, read off the Gröbner basis.
    pub minimal_generator_degrees: Vec<DegreeCount>,
    /// `β^S_{1,j}` from Koszul homology of `k[S]`.
    pub beta_s_1: Vec<DegreeCount>,
    pub hilbert_numerator: Vec<i128>,
    pub quadratic_gb: QuadraticSearchReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredGenerator {
    pub degree: Vec<i64>,
    /// `(generator of F_{i-1}, coefficient basis index, coefficient)`.
    pub image: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulSection {
    /// `"semigroup"`: the ring is `k[S]`, every coefficient is a monomial.
    pub ring: String,
    pub field: String,
    pub d: usize,
    pub max_j: usize,
    pub pass: bool,
    pub verdict: String,
    pub failure: Option<(usize, usize)>,
    pub witness: Option<SyzygyWitness>,
    pub table: BettiJson,
    pub complete_by_rate_bound: Option<bool>,
    pub orbit_reduced_degrees: usize,
    pub poincare_hilbert: Option<bool>,
    pub differentials: Option<Vec<Vec<StoredGenerator>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErtReport {
    pub normal_generation: NormalGeneration,
    /// Set when the pipeline stopped after the normal generation check.
    pub stopped: Option<String>,
    pub m: u64,
    pub betti_over_s: Option<BettiJson>,
    pub algebraic_regularity: Option<i64>,
    /// `reg R(A) = m`.
    pub reg_equals_m: Option<bool>,
    /// `1 + reg R(A) = m`, the relation stated in the form `(m-1)`-regular.
    pub one_plus_reg_equals_m: Option<bool>,
    pub d: Option<u64>,
    pub quadratic_gb: Option<QuadraticSearchReport>,
    pub koszul_pass: Option<bool>,
    pub koszul_d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: Option<String>,
    pub input_digest: String,
    pub polytope: serde_json::Value,
    pub n: usize,
    pub options: Options,
    pub consistent: bool,
    pub inconsistencies: Vec<String>,
    pub ehrhart: EhrhartSection,
    pub regularity: RegularitySection,
    pub semigroup: SemigroupSection,
    pub ideal: IdealSection,
    pub koszul: KoszulSection,
    pub ert: ErtReport,
    /// Stage durations in microseconds, only with `Options::timings`.
    pub timings: Option<BTreeMap<String, u64>>,
}

/// SHA-256 of the canonical vertex JSON.
pub fn digest(p: &Polytope) -> String {
    hex::encode(Sha256::digest(polytope_to_json(p).to_string().as_bytes()))
}

struct Clock {
    on: bool,
    last: Instant,
    out: BTreeMap<String, u64>,
}

impl Clock {
    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            self.out.insert(stage.to_string(), (now - self.last).as_micros() as u64);
            self.last = now;
        }
    }
}

fn degree_counts(m: &BTreeMap<u32, usize>) -> Vec<DegreeCount> {
    m.iter()
        .filter(|(_, &c)| c > 0)
        .map(|(&degree, &count)| DegreeCount { degree, count })
        .collect()
}

/// Semigroup algebra of `mP` with its lattice automorphisms.
pub fn semigroup_ring(p: &Polytope, m: u64, max_level: usize) -> Result<SemigroupAlgebra> {
    let config = veronese(p, m);
    let pts = config.points_i64()?;
    let autos = automorphisms(&dilate(p, m), &pts)?;
    Ok(SemigroupAlgebra::new(&pts, max_level)?.with_automorphisms(autos))
}

/// Toric ideal of `mP`, using the Ehrhart series as a certificate when
/// `mP` is normally generated.
pub fn toric_ideal_of(p: &Polytope, m: u64, normal: bool) -> Result<ToricIdeal> {
    let config = veronese(p, m);
    let hs = if normal && m > 0 {
        Some(h_star(&ehrhart_polynomial(&dilate(p, m))?)?)
    } else {
        None
    };
    toric_ideal_with(&config, hs.as_deref())
}

fn normal_generation(p: &Polytope, bound: Option<u64>) -> Result<NormalGeneration> {
    if p.is_point() {
        return Ok(NormalGeneration::True { checked_to: 0 });
    }
    is_normally_generated(p, bound.unwrap_or_else(|| stabilization_degree(p)))
}

fn quad_search(t: &ToricIdeal, seed: u64, extra: usize) -> (QuadraticSearchReport, Option<crate::groebner::BinomialBasis>) {
    let strategies = default_strategies(t.nvars, seed, extra);
    let res = search_quadratic_gb_binomial(t.generators(), &strategies);
    let report = QuadraticSearchReport {
        found: res.found.is_some(),
        order: res.found.as_ref().map(|(_, b)| b.order.descriptor()),
        strategy_index: res.found.as_ref().map(|(k, _)| *k),
        strategies_tried: res.strategies_tried,
        seed,
    };
    (report, res.found.map(|(_, b)| b))
}

/// Multigraded Betti table of `k[S_P]` over `S`, complete by the Taylor
/// bound of the toric Gröbner basis.
pub fn toric_betti_over_s<F: Field>(p: &Polytope, m: u64, ideal: &ToricIdeal) -> Result<crate::resolution::GradedBettiTable> {
    let gb = ideal.basis.to_groebner_basis::<F>();
    let bound = internal_degree_bound(&gb, ideal.nvars);
    let alg = semigroup_ring(p, m, bound.max(1))?;
    betti_over_s::<F, _>(&alg, ideal.nvars, bound, Some(bound))
}

/// Report on the chain normal generation, `m`, regularity over `S`, and a
/// quadratic Gröbner basis for the smallest `d >= m/2`.
pub fn ert_pipeline(p: &Polytope, d_koszul: usize) -> Result<ErtReport> {
    ert_with::<Fp<32003>>(p, d_koszul, &Options::default())
}

fn ert_with<F: Field>(p: &Polytope, d_koszul: usize, opts: &Options) -> Result<ErtReport> {
    let ng = normal_generation(p, opts.ng_bound)?;
    let m = self_regularity_power(p)?;
    let mut rep = ErtReport {
        normal_generation: ng.clone(),
        stopped: None,
        m,
        betti_over_s: None,
        algebraic_regularity: None,
        reg_equals_m: None,
        one_plus_reg_equals_m: None,
        d: None,
        quadratic_gb: None,
        koszul_pass: None,
        koszul_d: d_koszul,
    };
    if !matches!(ng, NormalGeneration::True { .. }) {
        rep.stopped = Some("not normally generated".into());
        return Ok(rep);
    }
    let ideal = toric_ideal_of(p, 1, true)?;
    let table = toric_betti_over_s::<F>(p, 1, &ideal)?;
    let reg = algebraic_regularity(&table)?;
    rep.betti_over_s = Some(BettiJson::from_table(&table));
    rep.algebraic_regularity = Some(reg);
    rep.reg_equals_m = Some(reg == m as i64);
    rep.one_plus_reg_equals_m = Some(reg + 1 == m as i64);
    let d = m.div_ceil(2).max(1);
    rep.d = Some(d);
    let vid = toric_ideal_of(p, d, true)?;
    let (q, found) = quad_search(&vid, opts.gb_seed, opts.gb_random_orders);
    rep.quadratic_gb = Some(q);
    if let Some(basis) = found {
        let gb = basis.to_groebner_basis::<F>();
        let config = veronese(p, d);
        let degs = config.points_i64()?;
        let ro = ResolutionOptions::new(d_koszul);
        let alg = QuotientAlgebra::graded(gb, degs, ro.max_j)?;
        let (cert, _) = koszul_certificate(&alg, &ro, &[], Some(2))?;
        rep.koszul_pass = Some(cert.pass);
    }
    Ok(rep)
}

pub fn analyze_file(path: &Path, opts: &Options) -> Result<AnalysisReport> {
    let input = read_polytope(path)?;
    analyze(&input, opts)
}

pub fn analyze(input: &PolytopeInput, opts: &Options) -> Result<AnalysisReport> {
    match opts.field {
        FieldChoice::Fp => analyze_with::<Fp<32003>>(input, opts),
        FieldChoice::Q => analyze_with::<Rational>(input, opts),
    }
}

fn analyze_with<F: Field>(input: &PolytopeInput, opts: &Options) -> Result<AnalysisReport> {
    let p = &input.polytope;
    if p.is_point() {
        return Err(Error::DimensionDeficient {
            expected: p.rank(),
            found: 0,
        });
    }
    let n = p.rank();
    let mut bad = Vec::new();
    let mut clock = Clock {
        on: opts.timings,
        last: Instant::now(),
        out: BTreeMap::new(),
    };

    // Ehrhart data
    let e = ehrhart_polynomial(p)?;
    let r_roots = integer_root_count(&e)?;
    let r_gap = interior_gap(p)?;
    if r_roots != r_gap {
        bad.push(format!("r from integer roots is {r_roots}, from the interior gap {r_gap}"));
    }
    let recip_to = n as u64 + 2;
    if !reciprocity_check(p, recip_to)? {
        bad.push("Ehrhart reciprocity fails".into());
    }
    let hs = h_star(&e)?;
    let r = r_gap;
    let ehrhart = EhrhartSection {
        polynomial: e.to_strings(),
        h_star: hs.clone(),
        r_integer_roots: r_roots,
        r_interior_gap: r_gap,
        reciprocity_verified_to: recip_to,
    };
    clock.lap("ehrhart");

    // cohomological regularity
    let fan = normal_fan(p)?;
    let a = divisor_of_polytope(p, &fan)?;
    let zero = TorusDivisor::zero(fan.rays().len());
    let m0 = self_regularity_power(p)?;
    let mut history = Vec::new();
    for m in 0..=m0 {
        let o = is_regular(&fan, &zero, &a.scale(m as i64), std::slice::from_ref(&a))?;
        history.push(RegularityStep {
            m,
            regular: o.regular,
            witness: o.witness,
        });
    }
    let expected_m0 = (n - r).max(1) as u64;
    if m0 != expected_m0 {
        bad.push(format!("self-regularity power {m0}, expected {expected_m0} from r = {r}"));
    }
    let interior = interior_lattice_points(&dilate(p, r as u64 + 1)).len() as u64;
    let top_below = if r < n {
        let h = cohomology_dims(&fan, &a.scale(-(r as i64 + 1)))?.h(n);
        if h != interior {
            bad.push(format!("h^n(-(r+1)A) = {h} but (r+1)P has {interior} interior points"));
        }
        match history.get(n - r - 1).and_then(|s| s.witness.as_ref()) {
            Some(w) if w.i == n && w.dim == interior => {}
            _ => bad.push(format!("A^{} is not rejected by an h^{n} witness of dimension {interior}", n - r - 1)),
        }
        Some(h)
    } else {
        None
    };
    let samples = vec![vec![1], vec![2], vec![3]];
    let propagation = check_mumford_propagation(&fan, &zero, &a.scale(m0 as i64), std::slice::from_ref(&a), &samples)?;
    if !propagation {
        bad.push("regularity does not propagate to sampled twists".into());
    }
    let mut surjectivity = Vec::new();
    for k in 1..=3u64 {
        let holds = check_multiplication_surjectivity(&dilate(p, k), p)?;
        let implied = k >= m0;
        if implied && !holds {
            bad.push(format!("multiplication (P) x ({k}P) -> ({}P) is not surjective", k + 1));
        }
        surjectivity.push(SurjectivityCheck { k, implied, holds });
    }
    let regularity = RegularitySection {
        self_regularity_power: m0,
        history,
        top_cohomology_below: top_below,
        interior_points_r_plus_one: interior,
        propagation_samples: samples,
        propagation_holds: propagation,
        surjectivity,
    };
    clock.lap("cohomology");

    // semigroup ring of m* P
    let m_star = (n - r) as u64;
    let ng = normal_generation(p, opts.ng_bound)?;
    let ng_star = normal_generation(&dilate(p, m_star), opts.ng_bound)?;
    let star_normal = matches!(ng_star, NormalGeneration::True { .. });
    let ro = ResolutionOptions::new(opts.cutoff_d);
    let sg = semigroup_ring(p, m_star, ro.max_j.max(2))?;
    let nvars = <SemigroupAlgebra as GradedAlgebra<F>>::nvars(&sg);
    let semigroup = SemigroupSection {
        m_star,
        generators: nvars,
        normal_generation: ng,
        normal_generation_m_star: ng_star,
        automorphisms: sg.automorphisms().len(),
    };
    clock.lap("semigroup");

    // toric ideal of m* P
    let ideal = toric_ideal_of(p, m_star, star_normal)?;
    if ideal.basis.status != GbStatus::Complete {
        return Err(Error::ResourceCap("toric Gröbner basis aborted".into()));
    }
    let gb = ideal.basis.to_groebner_basis::<F>();
    let hn = hilbert_numerator(&ideal.basis.initial_ideal(), ideal.nvars);
    if star_normal {
        let hs_star = h_star(&ehrhart_polynomial(&dilate(p, m_star.max(1)))?)?;
        if m_star > 0 && !hilbert_agrees(&hn, ideal.nvars, &hs_star, n + 1) {
            bad.push("Hilbert series of the toric ideal differs from the Ehrhart series".into());
        }
    }
    let mingens = minimal_generator_degrees(&gb);
    let gdeg = ideal.basis.max_degree().max(1) as usize;
    let sg1 = semigroup_ring(p, m_star, gdeg)?;
    let mut beta1 = BTreeMap::new();
    for ((i, a), v) in koszul_betti::<F, _>(&sg1, 1, gdeg)? {
        if i == 1 {
            *beta1.entry(*a.last().unwrap() as u32).or_insert(0usize) += v as usize;
        }
    }
    if degree_counts(&beta1) != degree_counts(&mingens) {
        bad.push("minimal generator degrees disagree between the Gröbner basis and Koszul homology".into());
    }
    let (qreport, _) = quad_search(&ideal, opts.gb_seed, opts.gb_random_orders);
    let ideal_section = IdealSection {
        nvars: ideal.nvars,
        route: serde_json::to_value(ideal.route).unwrap().as_str().unwrap().to_string(),
        groebner_size: ideal.basis.generators.len(),
        groebner_degree: ideal.basis.max_degree(),
        minimal_generator_degrees: degree_counts(&mingens),
        beta_s_1: degree_counts(&beta1),
        hilbert_numerator: hn.clone(),
        quadratic_gb: qreport.clone(),
    };
    clock.lap("ideal");

    // Koszul certificate
    let (cert, res) = koszul_certificate::<F, _>(&sg, &ro, sg.automorphisms(), Some(ideal.basis.max_degree()))?;
    if let Err(e) = res.verify(&sg) {
        bad.push(format!("resolution check failed: {e}"));
    }
    let poincare = cert.pass.then(|| poincare_hilbert_check(&cert.table.totals(), &hn, ideal.nvars, ro.max_i));
    if poincare == Some(false) {
        bad.push("Poincaré-Hilbert identity fails".into());
    }
    if cert.pass && beta1.iter().any(|(&j, &c)| j != 2 && c > 0) {
        bad.push("certificate passes but the ideal has a minimal generator of degree other than 2".into());
    }
    if qreport.found && !cert.pass {
        bad.push("a quadratic Gröbner basis exists but the certificate fails".into());
    }
    let differentials = opts.emit_differentials.then(|| {
        res.generators
            .iter()
            .map(|lv| {
                lv.iter()
                    .map(|g| StoredGenerator {
                        degree: g.degree.clone(),
                        image: g.image.iter().map(|(h, w, c)| (*h, *w, c.to_string())).collect(),
                    })
                    .collect()
            })
            .collect()
    });
    let koszul = KoszulSection {
        ring: "semigroup".into(),
        field: cert.field.clone(),
        d: cert.d,
        max_j: cert.max_j,
        pass: cert.pass,
        verdict: if cert.pass {
            format!("Koszul to homological degree {} (internal degree {})", cert.d, cert.max_j)
        } else {
            "not Koszul".into()
        },
        failure: cert.failure,
        witness: cert.witness.clone(),
        table: BettiJson::from_table(&cert.table),
        complete_by_rate_bound: cert.complete_by_rate_bound,
        orbit_reduced_degrees: cert.orbit_reduced_degrees,
        poincare_hilbert: poincare,
        differentials,
    };
    clock.lap("koszul");

    let ert = ert_with::<F>(p, opts.cutoff_d, opts)?;
    if let (Some(reg), true) = (ert.algebraic_regularity, ert.stopped.is_none()) {
        // a normal semigroup ring is Cohen-Macaulay, so reg = deg h*
        if reg != hs.len() as i64 - 1 {
            bad.push(format!("reg R(A) = {reg} but deg h* = {}", hs.len() - 1));
        }
    }
    if let (Some(q), Some(pass)) = (&ert.quadratic_gb, ert.koszul_pass) {
        if q.found && !pass {
            bad.push("Veronese ideal has a quadratic Gröbner basis but its quotient fails the certificate".into());
        }
    }
    clock.lap("ert");

    Ok(AnalysisReport {
        name: input.name.clone(),
        input_digest: digest(p),
        polytope: polytope_to_json(p),
        n,
        options: opts.clone(),
        consistent: bad.is_empty(),
        inconsistencies: bad,
        ehrhart,
        regularity,
        semigroup,
        ideal: ideal_section,
        koszul,
        ert,
        timings: opts.timings.then_some(clock.out),
    })
}

/// `N(t) = h*(t) (1-t)^{N-d}` for `d = dim + 1`.
fn hilbert_agrees(numerator: &[i128], nvars: usize, hs: &[i128], d: usize) -> bool {
    let mut expect = hs.to_vec();
    for _ in d..nvars {
        let mut next = vec![0i128; expect.len() + 1];
        for (k, c) in expect.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        expect = next;
    }
    while expect.len() > 1 && *expect.last().unwrap() == 0 {
        expect.pop();
    }
    nvars >= d && expect == numerator
}

/// One corpus item: the file and its report or error.
#[derive(Debug)]
pub struct CorpusItem {
    pub file: PathBuf,
    pub outcome: Result<AnalysisReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub file: String,
    pub status: String,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub m_star: Option<u64>,
    pub normally_generated: Option<bool>,
    pub quadratic_gb: Option<bool>,
    pub koszul: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub items: Vec<SummaryRow>,
    pub inconsistent: usize,
    pub errors: usize,
}

/// Analyze every `*.json` file of `dir` concurrently; results are in file
/// name order.
pub fn corpus_run(dir: &Path, opts: &Options) -> Result<Vec<CorpusItem>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files
        .into_par_iter()
        .map(|file| {
            let outcome = analyze_file(&file, opts);
            CorpusItem { file, outcome }
        })
        .collect())
}

pub fn summarize(items: &[CorpusItem]) -> CorpusSummary {
    let mut rows = Vec::new();
    let (mut inconsistent, mut errors) = (0, 0);
    for it in items {
        let file = it.file.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned());
        let row = match &it.outcome {
            Ok(r) => {
                if !r.consistent {
                    inconsistent += 1;
                }
                SummaryRow {
                    file,
                    status: if r.consistent { "consistent" } else { "INCONSISTENT" }.into(),
                    n: Some(r.n),
                    r: Some(r.ehrhart.r_interior_gap),
                    m_star: Some(r.semigroup.m_star),
                    normally_generated: Some(r.semigroup.normal_generation.holds()),
                    quadratic_gb: Some(r.ideal.quadratic_gb.found),
                    koszul: Some(if r.koszul.pass { format!("pass@D={}", r.koszul.d) } else { "fail".into() }),
                    error: None,
                }
            }
            Err(e) => {
                errors += 1;
                SummaryRow {
                    file,
                    status: "error".into(),
                    n: None,
                    r: None,
                    m_star: None,
                    normally_generated: None,
                    quadratic_gb: None,
                    koszul: None,
                    error: Some(e.to_string()),
                }
            }
        };
        rows.push(row);
    }
    CorpusSummary {
        items: rows,
        inconsistent,
        errors,
    }
}

/// Aligned text table of a summary.
pub fn render_summary(s: &CorpusSummary) -> String {
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let rows: Vec<Vec<String>> = std::iter::once(
        ["file", "status", "n", "r", "m*", "normal", "quad-GB", "koszul"].map(String::from).to_vec(),
    )
    .chain(s.items.iter().map(|r| {
        vec![
            r.file.clone(),
            r.status.clone(),
            opt(r.n.map(|x| x.to_string())),
            opt(r.r.map(|x| x.to_string())),
            opt(r.m_star.map(|x| x.to_string())),
            opt(r.normally_generated.map(|x| x.to_string())),
            opt(r.quadratic_gb.map(|x| x.to_string())),
            opt(r.koszul.clone()),
        ]
    }))
    .collect();
    let widths: Vec<usize> = (0..8).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Result of re-checking a stored report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verification {
    /// Every stored identity holds.
    Verified { differentials_checked: bool },
    /// An identity fails.
    Failed { location: String },
    /// Differentials were requested but are missing.
    Unverifiable { reason: String },
}

impl Verification {
    pub fn ok(&self) -> bool {
        matches!(self, Verification::Verified { .. })
    }
}

fn parse_coefficient<F: Field>(s: &str) -> Option<F> {
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: BigInt = a.trim().parse().ok()?;
    let b: BigInt = b.trim().parse().ok()?;
    let b = F::from_bigint(&b);
    (!b.is_zero()).then(|| F::from_bigint(&a) / b)
}

/// Re-check a report without running any engine: table shape, the pass
/// flag, the Poincaré-Hilbert identity, and for stored differentials
/// `d ∘ d = 0`, minimality, generator counts and the witness syzygy.
pub fn verify_report(report: &AnalysisReport) -> Verification {
    match report.koszul.field.as_str() {
        "q" => verify_with::<Rational>(report),
        "fp32003" => verify_with::<Fp<32003>>(report),
        f => Verification::Failed {
            location: format!("koszul.field: unknown field {f}"),
        },
    }
}

fn verify_with<F: Field>(report: &AnalysisReport) -> Verification {
    let k = &report.koszul;
    let fail = |location: String| Verification::Failed { location };
    let t = &k.table;
    if t.over != "R" || t.cutoff != k.d || t.max_j != k.max_j {
        return fail("koszul.table: header disagrees with the certificate".into());
    }
    if t.get(0, 0) != 1 {
        return fail("koszul.table: β_{0,0} must be 1".into());
    }
    for e in &t.entries {
        if e.beta == 0 || e.i > k.d || e.j > k.max_j || e.j < e.i {
            return fail(format!("koszul.table: entry ({}, {}) outside the resolved region", e.i, e.j));
        }
    }
    let first_bad = t.entries.iter().filter(|e| e.i != e.j).map(|e| (e.j, e.i)).min().map(|(j, i)| (i, j));
    if first_bad != k.failure || k.pass != first_bad.is_none() {
        return fail("koszul.pass: flag disagrees with the table".into());
    }
    if k.pass {
        let ok = poincare_hilbert_check(&t.totals(), &report.ideal.hilbert_numerator, report.ideal.nvars, k.d);
        if !ok || k.poincare_hilbert != Some(true) {
            return fail("koszul.table: Poincaré-Hilbert identity fails".into());
        }
    }
    if let Some(w) = &k.witness {
        if w.i == w.j || w.degree.last().copied() != Some(w.j as i64) {
            return fail("koszul.witness: not a nonlinear syzygy".into());
        }
    }
    let Some(levels) = &k.differentials else {
        if report.options.emit_differentials {
            return Verification::Unverifiable {
                reason: "differentials were requested but are missing".into(),
            };
        }
        return Verification::Verified {
            differentials_checked: false,
        };
    };
    if k.ring != "semigroup" {
        return Verification::Unverifiable {
            reason: format!("no stored multiplication for ring {}", k.ring),
        };
    }
    let total = |d: &[i64]| *d.last().unwrap_or(&0);
    // parsed images, keyed by generator of the level below
    let mut parsed: Vec<Vec<Vec<(usize, F)>>> = Vec::new();
    for (i, lv) in levels.iter().enumerate() {
        let mut pl = Vec::new();
        for (c, g) in lv.iter().enumerate() {
            let mut img = Vec::new();
            for (h, w, x) in &g.image {
                let Some(v) = parse_coefficient::<F>(x) else {
                    return fail(format!("d_{i} column {c}: bad coefficient {x}"));
                };
                if i == 0 || *h >= levels[i - 1].len() || *w != 0 {
                    return fail(format!("d_{i} column {c}: entry refers to a missing generator"));
                }
                let hd = &levels[i - 1][*h].degree;
                if total(hd) >= total(&g.degree) || g.degree.len() != hd.len() {
                    return fail(format!("d_{i} column {c}: entry of nonpositive degree (not minimal)"));
                }
                img.push((*h, v));
            }
            pl.push(img);
        }
        parsed.push(pl);
    }
    // semigroup coefficients are monomials, so d(d(g)) only tracks indices
    for i in 2..parsed.len() {
        for (c, img) in parsed[i].iter().enumerate() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (h, x) in img {
                for (h2, y) in &parsed[i - 1][*h] {
                    let e = acc.entry(*h2).or_insert_with(F::zero);
                    *e = e.clone() + x.clone() * y.clone();
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return fail(format!("d_{} d_{i} column {c} is nonzero", i - 1));
            }
        }
    }
    // counts below the last internal degree
    for (i, lv) in levels.iter().enumerate() {
        if i >= k.d {
            break;
        }
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for g in lv {
            *counts.entry(total(&g.degree) as usize).or_insert(0) += 1;
        }
        for j in 0..k.max_j {
            if counts.get(&j).copied().unwrap_or(0) != t.get(i, j) {
                return fail(format!("koszul.table: β_{{{i},{j}}} disagrees with the stored generators"));
            }
        }
    }
    if let Some(w) = &k.witness {
        if w.i >= 2 && w.i - 1 < parsed.len() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (h, _, x) in &w.vector {
                let Some(x) = parse_coefficient::<F>(x) else {
                    return fail("koszul.witness: bad coefficient".into());
                };
                let Some(img) = parsed[w.i - 1].get(*h) else {
                    return fail("koszul.witness: refers to a missing generator".into());
                };
                for (h2, y) in img {
                    let e = acc.entry(*h2).or_insert_with(F::zero);
                    *e = e.clone() + x.clone() * y.clone();
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return fail("koszul.witness: vector is not a syzygy".into());
            }
        }
    }
    Verification::Verified {
        differentials_checked: true,
    }
}
