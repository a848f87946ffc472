//! Graded Betti tables over `S` and truncated resolutions of the residue
//! field over `R`.
//!
//! Everything is multigraded: a degree is a vector whose last coordinate is
//! the total degree. Pieces of the free modules in a fixed degree are finite
//! and all work is linear algebra on those pieces.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{
    hilbert_numerator, monomials_of_degree, GroebnerBasis, Monomial, Polynomial,
};
use crate::scalar::{Field, Fp, CERT_PRIME};
use crate::semigroup::{graded_elements, Automorphism};

pub type Deg = Vec<i64>;

fn sub(a: &[i64], b: &[i64]) -> Deg {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Deg {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn total(a: &[i64]) -> usize {
    *a.last().expect("degree vector") as usize
}

/// Graded algebra generated in total degree one, with finite pieces.
pub trait GradedAlgebra<F: Field>: Sync {
    fn nvars(&self) -> usize;
    fn var_degree(&self, i: usize) -> &[i64];
    /// Largest total degree whose pieces are available.
    fn max_level(&self) -> usize;
    /// Degrees of total degree `j` in the monoid generated by the variable
    /// degrees, sorted.
    fn level(&self, j: usize) -> &[Deg];
    /// `a` lies in the monoid generated by the variable degrees.
    fn in_monoid(&self, a: &[i64]) -> bool;
    fn piece_dim(&self, a: &[i64]) -> usize;
    /// Product of basis element `u` of `R_b` and basis element `v` of `R_c`.
    fn mul(&self, b: &[i64], u: usize, c: &[i64], v: usize) -> Vec<(usize, F)>;
    fn basis_label(&self, a: &[i64], u: usize) -> String;
    /// Index of `x_i` in the basis of its piece.
    fn var_index(&self, _i: usize) -> usize {
        0
    }
    /// Every nonzero piece is one-dimensional and basis elements multiply to
    /// basis elements (semigroup rings).
    fn is_fine(&self) -> bool {
        false
    }
    fn zero_degree(&self) -> Deg {
        vec![0; self.var_degree(0).len()]
    }
    /// Hilbert function `dim R_j` for `j <= max_level`.
    fn hilbert_function(&self) -> Vec<u64> {
        (0..=self.max_level())
            .map(|j| self.level(j).iter().map(|a| self.piece_dim(a) as u64).sum())
            .collect()
    }
}

/// `k[S]` for the semigroup generated by a point configuration.
#[derive(Clone, Debug)]
pub struct SemigroupAlgebra {
    points: Vec<Deg>,
    levels: Vec<Vec<Deg>>,
    members: Vec<HashSet<Deg>>,
    automorphisms: Vec<Automorphism>,
}

impl SemigroupAlgebra {
    /// `points` must have last coordinate one.
    pub fn new(points: &[Vec<i64>], max_level: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("semigroup ring without generators".into()));
        }
        if points.iter().any(|p| p.last() != Some(&1)) {
            return Err(Error::Precondition("configuration is not at height one".into()));
        }
        let levels = graded_elements(points, max_level);
        let members = levels.iter().map(|l| l.iter().cloned().collect()).collect();
        Ok(SemigroupAlgebra {
            points: points.to_vec(),
            levels,
            members,
            automorphisms: Vec::new(),
        })
    }

    /// Graded automorphisms used to skip degrees in the same orbit.
    pub fn with_automorphisms(mut self, autos: Vec<Automorphism>) -> Self {
        self.automorphisms = autos;
        self
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.automorphisms
    }

    pub fn points(&self) -> &[Deg] {
        &self.points
    }
}

impl<F: Field> GradedAlgebra<F> for SemigroupAlgebra {
    fn nvars(&self) -> usize {
        self.points.len()
    }

    fn var_degree(&self, i: usize) -> &[i64] {
        &self.points[i]
    }

    fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, j: usize) -> &[Deg] {
        &self.levels[j]
    }

    fn in_monoid(&self, a: &[i64]) -> bool {
        let t = *a.last().unwrap_or(&-1);
        t >= 0 && (t as usize) < self.members.len() && self.members[t as usize].contains(a)
    }

    fn piece_dim(&self, a: &[i64]) -> usize {
        usize::from(<Self as GradedAlgebra<F>>::in_monoid(self, a))
    }

    fn mul(&self, _b: &[i64], _u: usize, _c: &[i64], _v: usize) -> Vec<(usize, F)> {
        vec![(0, F::one())]
    }

    fn basis_label(&self, a: &[i64], _u: usize) -> String {
        let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("t^({})", s.join(","))
    }

    fn is_fine(&self) -> bool {
        true
    }
}

/// `S / I` with standard monomials of a reduced Gröbner basis as the basis
/// of each piece.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F> {
    gb: GroebnerBasis<F>,
    var_degrees: Vec<Deg>,
    levels: Vec<Vec<Deg>>,
    members: HashSet<Deg>,
    pieces: HashMap<Deg, Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
}

impl<F: Field> QuotientAlgebra<F> {
    /// Standard grading: every variable has degree `[1]`.
    pub fn standard(gb: GroebnerBasis<F>, nvars: usize, max_level: usize) -> Result<Self> {
        QuotientAlgebra::graded(gb, vec![vec![1]; nvars], max_level)
    }

    /// `var_degrees[i]` is the degree of `x_i`; its last entry must be one.
    pub fn graded(gb: GroebnerBasis<F>, var_degrees: Vec<Deg>, max_level: usize) -> Result<Self> {
        let n = var_degrees.len();
        if var_degrees.iter().any(|d| d.last() != Some(&1)) {
            return Err(Error::Precondition("variables must have total degree one".into()));
        }
        if gb.order.nvars() != n && !gb.generators.is_empty() {
            return Err(Error::Incompatible("Gröbner basis and grading disagree on variables".into()));
        }
        let deg_of = |m: &Monomial| -> Deg {
            let mut d = vec![0i64; var_degrees[0].len()];
            for (i, &e) in m.0.iter().enumerate() {
                for (x, y) in d.iter_mut().zip(&var_degrees[i]) {
                    *x += e as i64 * y;
                }
            }
            d
        };
        for g in &gb.generators {
            let d0 = deg_of(g.leading_monomial());
            if g.terms().iter().any(|(m, _)| deg_of(m) != d0) {
                return Err(Error::Precondition(format!("generator {g} is not homogeneous")));
            }
        }
        let lead: Vec<Monomial> = gb.generators.iter().map(|g| g.leading_monomial().clone()).collect();
        let mut pieces: HashMap<Deg, Vec<Monomial>> = HashMap::new();
        let mut index = HashMap::new();
        let mut levels = Vec::new();
        let mut members = HashSet::new();
        for j in 0..=max_level {
            let mut lv = BTreeSet::new();
            for m in monomials_of_degree(n, j as u32) {
                let d = deg_of(&m);
                lv.insert(d.clone());
                if lead.iter().any(|l| l.divides(&m)) {
                    continue;
                }
                let p = pieces.entry(d).or_default();
                index.insert(m.clone(), p.len());
                p.push(m);
            }
            members.extend(lv.iter().cloned());
            levels.push(lv.into_iter().collect());
        }
        Ok(QuotientAlgebra {
            gb,
            var_degrees,
            levels,
            members,
            pieces,
            index,
        })
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }
}

impl<F: Field> GradedAlgebra<F> for QuotientAlgebra<F> {
    fn nvars(&self) -> usize {
        self.var_degrees.len()
    }

    fn var_degree(&self, i: usize) -> &[i64] {
        &self.var_degrees[i]
    }

    fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, j: usize) -> &[Deg] {
        &self.levels[j]
    }

    fn in_monoid(&self, a: &[i64]) -> bool {
        self.members.contains(a)
    }

    fn piece_dim(&self, a: &[i64]) -> usize {
        self.pieces.get(a).map_or(0, |p| p.len())
    }

    fn mul(&self, b: &[i64], u: usize, c: &[i64], v: usize) -> Vec<(usize, F)> {
        let m = self.pieces[b][u].mul(&self.pieces[c][v]);
        let n = self.var_degrees.len();
        let p = Polynomial::from_terms(&self.gb.order, n, vec![(m, F::one())]);
        let r = self.gb.normal_form(&p);
        let mut out: Vec<(usize, F)> = r.terms().iter().map(|(m, c)| (self.index[m], c.clone())).collect();
        out.sort_by_key(|x| x.0);
        out
    }

    fn basis_label(&self, a: &[i64], u: usize) -> String {
        self.pieces[a][u].to_string()
    }

    fn var_index(&self, i: usize) -> usize {
        self.index[&Monomial::var(self.nvars(), i)]
    }
}

// ---------------------------------------------------------------------------
// Sparse column reduction
// ---------------------------------------------------------------------------

type Key = usize;
type Sparse<F> = Vec<(Key, F)>;

fn key(h: usize, w: usize) -> Key {
    (h << 24) | w
}

fn unkey(k: Key) -> (usize, usize) {
    (k >> 24, k & 0xFF_FFFF)
}

/// `v - c * p` for sorted sparse vectors.
fn axpy<F: Field>(v: &[(Key, F)], c: &F, p: &[(Key, F)]) -> Sparse<F> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j == p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, -(c.clone() * p[j].1.clone())));
            j += 1;
        } else {
            let mut x = v[i].1.clone();
            x.sub_mul(c, &p[j].1);
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Column reduction on the largest key, optionally tracking combinations.
struct Reducer<F> {
    pivot_of: HashMap<Key, usize>,
    rows: Vec<Sparse<F>>,
    tracks: Vec<Sparse<F>>,
    track: bool,
}

impl<F: Field> Reducer<F> {
    fn new(track: bool) -> Self {
        Reducer {
            pivot_of: HashMap::new(),
            rows: Vec::new(),
            tracks: Vec::new(),
            track,
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Sparse<F>, mut t: Sparse<F>) -> (Sparse<F>, Sparse<F>) {
        while let Some((k, c)) = v.last().cloned() {
            let Some(&p) = self.pivot_of.get(&k) else {
                break;
            };
            v = axpy(&v, &c, &self.rows[p]);
            debug_assert!(v.last().map_or(true, |x| x.0 != k));
            if self.track {
                t = axpy(&t, &c, &self.tracks[p]);
            }
        }
        (v, t)
    }

    /// Insert; on dependence returns the tracked combination.
    fn insert(&mut self, v: Sparse<F>, t: Sparse<F>) -> Option<Sparse<F>> {
        let (v, t) = self.reduce(v, t);
        let Some((k, c)) = v.last().cloned() else {
            return Some(t);
        };
        let inv = c.inv();
        let v: Sparse<F> = v.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        let t: Sparse<F> = if self.track {
            t.into_iter().map(|(i, x)| (i, x * inv.clone())).collect()
        } else {
            Vec::new()
        };
        self.pivot_of.insert(k, self.rows.len());
        self.rows.push(v);
        self.tracks.push(t);
        None
    }

}

type CertField = Fp<{ CERT_PRIME as u32 }>;

/// Rank of `cols`, stopping once `target` is reached. Over the rationals a
/// modular rank is tried first: it bounds the rational rank from below, so
/// reaching `target` settles it.
fn rank_to<F: Field>(cols: impl Iterator<Item = Sparse<F>> + Clone, target: usize) -> usize {
    if target == 0 {
        return 0;
    }
    if F::CHARACTERISTIC == 0 {
        // a modular rank never exceeds the true one, so reaching the target settles it
        let mut r: Reducer<CertField> = Reducer::new(false);
        for c in cols.clone() {
            let Some(img) = F::modular_image(&c) else {
                break;
            };
            let img: Sparse<CertField> = img.into_iter().map(|(k, x)| (k, CertField::new(x as i64))).collect();
            r.insert(img, Vec::new());
            if r.rank() >= target {
                return r.rank();
            }
        }
    }
    let mut r: Reducer<F> = Reducer::new(false);
    for c in cols {
        r.insert(c, Vec::new());
        if r.rank() >= target {
            break;
        }
    }
    r.rank()
}

// ---------------------------------------------------------------------------
// Betti tables
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Over {
    S,
    R,
}

/// `β_{i,j}`, computed for `i <= max_i`, `j <= max_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBettiTable {
    pub over: Over,
    pub max_i: usize,
    pub max_j: usize,
    entries: BTreeMap<(usize, usize), u64>,
    /// Every nonzero entry lies in the computed region.
    pub complete: bool,
}

impl GradedBettiTable {
    pub fn new(over: Over, max_i: usize, max_j: usize) -> Self {
        GradedBettiTable {
            over,
            max_i,
            max_j,
            entries: BTreeMap::new(),
            complete: false,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// `sum_j β_{i,j}` over the computed region.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|((a, _), _)| *a == i).map(|(_, v)| v).sum()
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.max_i).map(|i| self.total(i)).collect()
    }

    /// First off-diagonal nonzero entry, ordered by `j` then `i`.
    pub fn first_nonlinear(&self) -> Option<(usize, usize)> {
        self.entries
            .keys()
            .filter(|(i, j)| i != j)
            .min_by_key(|(i, j)| (*j, *i))
            .copied()
    }

    /// Rows as `i: β_{i,0} β_{i,1} ...` strings.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 0..=self.max_i {
            let row: Vec<String> = (0..=self.max_j).map(|j| self.get(i, j).to_string()).collect();
            s.push_str(&format!("{i}: {}\n", row.join(" ")));
        }
        s
    }
}

impl Serialize for GradedBettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: usize,
            beta: u64,
        }
        let entries: Vec<Entry> = self.entries.iter().map(|(&(i, j), &beta)| Entry { i, j, beta }).collect();
        let mut st = s.serialize_struct("GradedBettiTable", 5)?;
        st.serialize_field("over", &self.over)?;
        st.serialize_field("cutoff", &self.max_i)?;
        st.serialize_field("max_j", &self.max_j)?;
        st.serialize_field("complete", &self.complete)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// `max { j - i : β_{i,j} != 0 }` of a complete table over `S`.
pub fn algebraic_regularity(t: &GradedBettiTable) -> Result<i64> {
    if t.over != Over::S {
        return Err(Error::Precondition("regularity is read from a table over S".into()));
    }
    if !t.complete {
        return Err(Error::Precondition(format!(
            "table computed to i <= {}, j <= {} is not known to be complete; enlarge the bounds",
            t.max_i, t.max_j
        )));
    }
    Ok(t.entries().map(|((i, j), _)| j as i64 - i as i64).max().unwrap_or(0))
}

// ---------------------------------------------------------------------------
// Betti numbers over S by Koszul homology
// ---------------------------------------------------------------------------

/// Subsets `σ` of the variables of size `i` with `a - deg σ` in the monoid,
/// together with `a - deg σ`.
fn koszul_cells<F: Field, A: GradedAlgebra<F>>(alg: &A, a: &[i64], i: usize) -> Vec<(Vec<usize>, Deg)> {
    let n = alg.nvars();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec<F: Field, A: GradedAlgebra<F>>(
        alg: &A,
        start: usize,
        left: usize,
        rest: Deg,
        cur: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Deg)>,
        n: usize,
    ) {
        if left == 0 {
            if alg.piece_dim(&rest) > 0 {
                out.push((cur.clone(), rest));
            }
            return;
        }
        for k in start..n {
            if n - k < left {
                break;
            }
            let r = sub(&rest, alg.var_degree(k));
            if !alg.in_monoid(&r) {
                continue;
            }
            cur.push(k);
            rec(alg, k + 1, left - 1, r, cur, out, n);
            cur.pop();
        }
    }
    if total(a) < i {
        return out;
    }
    rec(alg, 0, i, a.to_vec(), &mut cur, &mut out, n);
    out
}

/// Columns of the Koszul differential `K_i(a) -> K_{i-1}(a)`.
fn koszul_columns<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    cells: &[(Vec<usize>, Deg)],
    lower: &HashMap<Vec<usize>, usize>,
) -> Vec<Sparse<F>> {
    let mut cols = Vec::new();
    for (sigma, rest) in cells {
        for u in 0..alg.piece_dim(rest) {
            let mut col: Vec<(Key, F)> = Vec::new();
            for (pos, &k) in sigma.iter().enumerate() {
                let mut tau = sigma.clone();
                tau.remove(pos);
                let Some(&row) = lower.get(&tau) else {
                    continue;
                };
                let xdeg = alg.var_degree(k);
                let target = add(rest, xdeg);
                if alg.piece_dim(&target) == 0 {
                    continue;
                }
                let prod = alg.mul(rest, u, xdeg, alg.var_index(k));
                let sign = if pos % 2 == 0 { F::one() } else { -F::one() };
                for (w, c) in prod {
                    col.push((key(row, w), sign.clone() * c));
                }
            }
            col.sort_by_key(|x| x.0);
            let mut merged: Sparse<F> = Vec::with_capacity(col.len());
            for (k, c) in col {
                match merged.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc = lc.clone() + c,
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|x| !x.1.is_zero());
            cols.push(merged);
        }
    }
    cols
}

/// Multigraded `β^S_{i,a}(R) = dim H_i(K(x; R))_a` for `i <= max_i` and
/// total degree `j <= max_j`. Every variable must survive in `R_1`.
pub fn koszul_betti<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    max_i: usize,
    max_j: usize,
) -> Result<BTreeMap<(usize, Deg), u64>> {
    if max_j > alg.max_level() {
        return Err(Error::Precondition(format!(
            "algebra pieces built to degree {}, {max_j} requested",
            alg.max_level()
        )));
    }
    let n = alg.nvars();
    for k in 0..n {
        if alg.piece_dim(alg.var_degree(k)) == 0 {
            return Err(Error::Precondition(format!("variable x{k} vanishes in the quotient")));
        }
    }
    let mut out = BTreeMap::new();
    for j in 0..=max_j {
        for a in alg.level(j) {
            // dims and ranks of K_0..K_{max_i+1} at a
            let top = (max_i + 1).min(n).min(j);
            let cells: Vec<Vec<(Vec<usize>, Deg)>> = (0..=top).map(|i| koszul_cells(alg, a, i)).collect();
            let dims: Vec<usize> = cells
                .iter()
                .map(|c| c.iter().map(|(_, r)| alg.piece_dim(r)).sum())
                .collect();
            let mut ranks = vec![0usize; top + 2];
            for i in 1..=top {
                let lower: HashMap<Vec<usize>, usize> =
                    cells[i - 1].iter().enumerate().map(|(p, (s, _))| (s.clone(), p)).collect();
                let cols = koszul_columns(alg, &cells[i], &lower);
                let bound = dims[i].min(dims[i - 1]);
                ranks[i] = rank_to(cols.into_iter(), bound);
            }
            for i in 0..=max_i.min(top) {
                let h = dims[i] - ranks[i] - ranks[i + 1];
                if h > 0 {
                    out.insert((i, a.clone()), h as u64);
                }
            }
        }
    }
    Ok(out)
}

/// Graded Betti table over `S` up to `max_i` and internal degree `max_j`.
/// The table is marked complete when `max_i >= nvars` and `max_j >=
/// degree_bound`, where `degree_bound` bounds every nonzero `j`.
pub fn betti_over_s<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    max_i: usize,
    max_j: usize,
    degree_bound: Option<usize>,
) -> Result<GradedBettiTable> {
    let fine = koszul_betti(alg, max_i, max_j)?;
    let mut t = GradedBettiTable::new(Over::S, max_i, max_j);
    for ((i, a), v) in fine {
        t.add(i, total(&a), v);
    }
    if t.entries().any(|((i, _), _)| i > alg.nvars()) {
        return Err(Error::internal("resolution", "nonzero Betti number past the number of variables"));
    }
    t.complete = max_i >= alg.nvars() && degree_bound.is_some_and(|b| max_j >= b);
    Ok(t)
}

/// Bound on the internal degrees of `β^S(S/I)`: the degree of the least
/// common multiple of the initial ideal generators, which bounds the Taylor
/// resolution of `S / in(I)` and hence, by semicontinuity, that of `S / I`.
pub fn internal_degree_bound<F: Field>(gb: &GroebnerBasis<F>, nvars: usize) -> usize {
    let mut l = Monomial::one(nvars);
    for g in &gb.generators {
        l = l.lcm(g.leading_monomial());
    }
    l.degree() as usize
}

/// `resolve_over_S`: complete Betti table of `S / I` from a reduced basis.
pub fn resolve_over_s<F: Field>(gb: &GroebnerBasis<F>, nvars: usize, max_i: usize) -> Result<GradedBettiTable> {
    if gb.status != crate::groebner::GbStatus::Complete {
        return Err(Error::ResourceCap("Gröbner basis computation was aborted".into()));
    }
    let bound = internal_degree_bound(gb, nvars);
    let alg = QuotientAlgebra::standard(gb.clone(), nvars, bound.max(1))?;
    if nvars == 0 {
        let mut t = GradedBettiTable::new(Over::S, max_i, 0);
        t.add(0, 0, 1);
        t.complete = true;
        return Ok(t);
    }
    betti_over_s(&alg, max_i, bound, Some(bound))
}

// ---------------------------------------------------------------------------
// Resolution of the residue field over R
// ---------------------------------------------------------------------------

/// Basis element of `F_i`: its degree and its image in `F_{i-1}`, written
/// over pairs (generator of `F_{i-1}`, basis element of the coefficient piece).
#[derive(Clone, Debug)]
pub struct ResolutionGenerator<F> {
    pub degree: Deg,
    pub image: Vec<(usize, usize, F)>,
}

/// Offending syzygy in a failed certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyWitness {
    pub i: usize,
    pub j: usize,
    pub degree: Deg,
    /// Entries `(generator of F_{i-1}, coefficient monomial, coefficient)`.
    pub vector: Vec<(usize, String, String)>,
}

#[derive(Clone, Debug)]
pub struct ResolutionOptions {
    /// Homological cutoff `D`.
    pub max_i: usize,
    /// Internal degree cutoff.
    pub max_j: usize,
    /// Skip degrees in the same orbit at the last internal degree.
    pub use_orbits: bool,
}

impl ResolutionOptions {
    /// `J = max(D, 3)`.
    pub fn new(d: usize) -> Self {
        ResolutionOptions {
            max_i: d,
            max_j: d.max(3),
            use_orbits: true,
        }
    }
}

/// Truncated minimal graded resolution of `k` over `R`.
#[derive(Clone, Debug)]
pub struct ResidueResolution<F> {
    pub opts_max_i: usize,
    pub opts_max_j: usize,
    /// `generators[i]` for `i < max_i`, at internal degrees below `max_j`;
    /// generators needed by no later computation are counted, not stored.
    pub generators: Vec<Vec<ResolutionGenerator<F>>>,
    pub betti: BTreeMap<(usize, Deg), u64>,
    pub table: GradedBettiTable,
    pub witness: Option<SyzygyWitness>,
    pub orbit_reduced_degrees: usize,
}

struct Level<F> {
    gens: Vec<ResolutionGenerator<F>>,
    by_degree: HashMap<Deg, Vec<usize>>,
    /// Generator total degrees present.
    totals: BTreeSet<usize>,
}

impl<F: Field> Level<F> {
    fn new() -> Self {
        Level {
            gens: Vec::new(),
            by_degree: HashMap::new(),
            totals: BTreeSet::new(),
        }
    }

    fn push(&mut self, g: ResolutionGenerator<F>) {
        let idx = self.gens.len();
        self.totals.insert(total(&g.degree));
        self.by_degree.entry(g.degree.clone()).or_default().push(idx);
        self.gens.push(g);
    }
}

/// Generators `g` of a level with `a - deg g` nonzero in `R`, paired with that
/// difference. `strict` excludes `deg g = a`.
fn below<'a, F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    level: &'a Level<F>,
    a: &[i64],
    strict: bool,
) -> Vec<(usize, Deg)> {
    let j = total(a);
    let mut out = Vec::new();
    for &t in &level.totals {
        if t > j || (strict && t == j) {
            continue;
        }
        for s in alg.level(j - t) {
            if alg.piece_dim(s) == 0 {
                continue;
            }
            if let Some(ids) = level.by_degree.get(&sub(a, s)) {
                for &g in ids {
                    out.push((g, s.clone()));
                }
            }
        }
    }
    out.sort_by_key(|x| x.0);
    out
}

/// Column of `u * d(g)` in `F_{i-1}` at degree `a`, where `u` is basis
/// element of `R_s`, `s = a - deg g`.
fn column<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    prev: &Level<F>,
    g: &ResolutionGenerator<F>,
    s: &[i64],
    u: usize,
) -> Sparse<F> {
    if alg.is_fine() {
        let mut v: Sparse<F> = g.image.iter().map(|(h, w, c)| (key(*h, *w), c.clone())).collect();
        v.sort_by_key(|x| x.0);
        return v;
    }
    let mut acc: BTreeMap<Key, F> = BTreeMap::new();
    for (h, w, c) in &g.image {
        let hdeg = &prev.gens[*h].degree;
        let coef_deg = sub(&g.degree, hdeg);
        for (w2, c2) in alg.mul(s, u, &coef_deg, *w) {
            let e = acc.entry(key(*h, w2)).or_insert_with(F::zero);
            *e = e.clone() + c.clone() * c2;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `dim (F_i)_a` from the generators below `a` plus `extra` new ones at `a`.
fn module_dim<F: Field, A: GradedAlgebra<F>>(alg: &A, items: &[(usize, Deg)]) -> usize {
    items.iter().map(|(_, s)| alg.piece_dim(s)).sum()
}

/// Orbit representatives of `degs` under the automorphisms, with sizes.
fn orbits(degs: &[Deg], autos: &[Automorphism]) -> Vec<(Deg, u64)> {
    if autos.is_empty() {
        return degs.iter().map(|a| (a.clone(), 1)).collect();
    }
    let mut rep_count: BTreeMap<Deg, u64> = BTreeMap::new();
    for a in degs {
        let rep = autos.iter().map(|g| g.apply(a)).min().unwrap_or_else(|| a.clone());
        *rep_count.entry(rep).or_insert(0) += 1;
    }
    rep_count.into_iter().collect()
}

/// Truncated minimal resolution of `k` over `R`.
///
/// Internal degrees are processed in increasing order. In each degree `a`,
/// `dim Z_{i-1}(a)` follows from exactness of the part already built, and
/// `β_{i,a}` is that dimension minus the rank of the images of older
/// generators. New generators are materialized only where a later step uses
/// them.
pub fn resolve_residue_field<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    opts: &ResolutionOptions,
    autos: &[Automorphism],
) -> Result<ResidueResolution<F>> {
    let (dmax, jmax) = (opts.max_i, opts.max_j);
    if jmax > alg.max_level() {
        return Err(Error::Precondition(format!(
            "algebra pieces built to degree {}, resolution needs {jmax}",
            alg.max_level()
        )));
    }
    let zero = alg.zero_degree();
    let mut levels: Vec<Level<F>> = (0..=dmax).map(|_| Level::new()).collect();
    levels[0].push(ResolutionGenerator {
        degree: zero.clone(),
        image: Vec::new(),
    });
    let mut betti: BTreeMap<(usize, Deg), u64> = BTreeMap::new();
    betti.insert((0, zero), 1);
    let mut witness: Option<SyzygyWitness> = None;
    let mut orbit_reduced = 0usize;

    for j in 1..=jmax {
        let degs = alg.level(j);
        let last = j == jmax;
        let reps: Vec<(Deg, u64)> = if last && opts.use_orbits && !autos.is_empty() {
            let o = orbits(degs, autos);
            orbit_reduced += degs.len() - o.len();
            o
        } else {
            degs.iter().map(|a| (a.clone(), 1)).collect()
        };
        for (a, mult) in reps {
            // dim Z_{i-2}(a) and the number of new generators of F_{i-1} at a
            let mut z_prev = 0usize;
            let mut beta_prev = 0usize;
            for i in 1..=dmax.min(j) {
                let prev_items = below(alg, &levels[i - 1], &a, true);
                let f_prev = module_dim(alg, &prev_items) + beta_prev;
                let (f_prev, z) = if i == 1 {
                    // F_0 = R maps onto k, so Z_0(a) = R_a
                    let d = alg.piece_dim(&a);
                    (d, d)
                } else {
                    (f_prev, f_prev - z_prev)
                };
                let _ = f_prev;
                let need_gens = !last && i < dmax;
                let old = below(alg, &levels[i], &a, true);
                let (lower, upper) = (&levels[i - 1], &levels[i]);
                let cols = || {
                    old.iter().flat_map(move |(g, s)| {
                        let gen = &upper.gens[*g];
                        (0..alg.piece_dim(s)).map(move |u| column(alg, lower, gen, s, u))
                    })
                };
                let beta;
                if z == 0 {
                    beta = 0;
                } else if !need_gens && (witness.is_some() || i == j) {
                    beta = z - rank_to(cols(), z);
                } else {
                    let mut image: Reducer<F> = Reducer::new(false);
                    for c in cols() {
                        image.insert(c, Vec::new());
                        if image.rank() >= z {
                            break;
                        }
                    }
                    beta = z - image.rank();
                    if beta > 0 {
                        let kernel = kernel_at(alg, &levels, i, &a)?;
                        if kernel.len() != z {
                            return Err(Error::internal(
                                "resolution",
                                format!("kernel at i={i}, degree {a:?} has dimension {} but exactness predicts {z}", kernel.len()),
                            ));
                        }
                        let mut fresh = Vec::new();
                        for v in kernel {
                            if image.insert(v.clone(), Vec::new()).is_none() {
                                fresh.push(v);
                            }
                        }
                        if fresh.len() != beta {
                            return Err(Error::internal("resolution", "complement size mismatch"));
                        }
                        if witness.is_none() && i != j {
                            witness = Some(make_witness(alg, &levels[i - 1], i, &a, &fresh[0]));
                        }
                        if need_gens {
                            for v in fresh {
                                let image = v
                                    .into_iter()
                                    .map(|(k, c)| {
                                        let (h, w) = unkey(k);
                                        (h, w, c)
                                    })
                                    .collect();
                                levels[i].push(ResolutionGenerator {
                                    degree: a.clone(),
                                    image,
                                });
                            }
                        }
                    }
                }
                if beta > 0 {
                    betti.insert((i, a.clone()), beta as u64 * mult);
                }
                z_prev = z;
                beta_prev = beta;
            }
        }
    }
    // aggregate; at the last degree the orbit representative carries the
    // orbit size
    let mut table = GradedBettiTable::new(Over::R, dmax, jmax);
    for ((i, a), v) in &betti {
        table.add(*i, total(a), *v);
    }
    table.complete = false;
    Ok(ResidueResolution {
        opts_max_i: dmax,
        opts_max_j: jmax,
        generators: levels.into_iter().map(|l| l.gens).collect(),
        betti,
        table,
        witness,
        orbit_reduced_degrees: orbit_reduced,
    })
}

/// Basis of `Z_{i-1}(a) = ker(d_{i-1})` at degree `a`, over the generators
/// of `F_{i-1}` strictly below `a` (new generators at `a` cannot occur in a
/// kernel element).
fn kernel_at<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    levels: &[Level<F>],
    i: usize,
    a: &[i64],
) -> Result<Vec<Sparse<F>>> {
    let items = below(alg, &levels[i - 1], a, true);
    let items: Vec<(usize, Deg)> = if i == 1 {
        // F_0 at a: the single generator 1 times R_a; the augmentation is zero
        vec![(0, a.to_vec())]
    } else {
        items
    };
    let mut red: Reducer<F> = Reducer::new(true);
    let mut kernel = Vec::new();
    for (g, s) in &items {
        for u in 0..alg.piece_dim(s) {
            let col = if i == 1 {
                Vec::new()
            } else {
                column(alg, &levels[i - 2], &levels[i - 1].gens[*g], s, u)
            };
            let t = vec![(key(*g, u), F::one())];
            if let Some(mut k) = red.insert(col, t) {
                k.sort_by_key(|x| x.0);
                kernel.push(k);
            }
        }
    }
    Ok(kernel)
}

fn make_witness<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    prev: &Level<F>,
    i: usize,
    a: &[i64],
    v: &Sparse<F>,
) -> SyzygyWitness {
    let vector = v
        .iter()
        .map(|(k, c)| {
            let (h, w) = unkey(*k);
            let s = if i == 1 { a.to_vec() } else { sub(a, &prev.gens[h].degree) };
            (h, alg.basis_label(&s, w), c.to_string())
        })
        .collect();
    SyzygyWitness {
        i,
        j: total(a),
        degree: a.to_vec(),
        vector,
    }
}

impl<F: Field> ResidueResolution<F> {
    /// Check `d ∘ d = 0` on every stored generator, that every differential
    /// entry has positive degree (minimality), and that the stored
    /// generator counts match the Betti numbers.
    pub fn verify<A: GradedAlgebra<F>>(&self, alg: &A) -> Result<()> {
        for i in 1..self.generators.len() {
            for g in &self.generators[i] {
                for (h, _, c) in &g.image {
                    let hd = &self.generators[i - 1][*h].degree;
                    if hd == &g.degree && !c.is_zero() {
                        return Err(Error::internal("resolution", format!("unit entry in d_{i}")));
                    }
                }
                if i >= 2 {
                    let mut acc: BTreeMap<Key, F> = BTreeMap::new();
                    for (h, w, c) in &g.image {
                        let hg = &self.generators[i - 1][*h];
                        let s = sub(&g.degree, &hg.degree);
                        for (h2, w2, c2) in &hg.image {
                            let s2 = sub(&hg.degree, &self.generators[i - 2][*h2].degree);
                            for (w3, c3) in alg.mul(&s, *w, &s2, *w2) {
                                let e = acc.entry(key(*h2, w3)).or_insert_with(F::zero);
                                *e = e.clone() + c.clone() * c2.clone() * c3;
                            }
                        }
                    }
                    if acc.values().any(|x| !x.is_zero()) {
                        return Err(Error::internal("resolution", format!("d_{} d_{i} != 0", i - 1)));
                    }
                }
            }
            let mut counts: BTreeMap<&Deg, u64> = BTreeMap::new();
            for g in &self.generators[i] {
                *counts.entry(&g.degree).or_insert(0) += 1;
            }
            for (d, c) in counts {
                if self.betti.get(&(i, d.clone())).copied() != Some(c) {
                    return Err(Error::internal("resolution", format!("generator count mismatch at i={i}")));
                }
            }
        }
        Ok(())
    }

    /// Sparse triplets `row col value` of each stored differential.
    pub fn differential_triplets(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 1..self.generators.len() {
            let mut s = format!("# d_{i}\n");
            for (col, g) in self.generators[i].iter().enumerate() {
                for (h, w, c) in &g.image {
                    s.push_str(&format!("{h}:{w} {col} {c}\n"));
                }
            }
            out.push(s);
        }
        out
    }
}

/// Re-check a witness: `d_{i-1}(v) = 0`.
pub fn witness_is_syzygy<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    res: &ResidueResolution<F>,
    w: &SyzygyWitness,
    coeffs: &[(usize, usize, F)],
) -> bool {
    if w.i == 1 {
        return true;
    }
    let mut acc: BTreeMap<Key, F> = BTreeMap::new();
    for (h, u, c) in coeffs {
        let hg = &res.generators[w.i - 1][*h];
        let s = sub(&w.degree, &hg.degree);
        for (h2, w2, c2) in &hg.image {
            let s2 = sub(&hg.degree, &res.generators[w.i - 2][*h2].degree);
            for (w3, c3) in alg.mul(&s, *u, &s2, *w2) {
                let e = acc.entry(key(*h2, w3)).or_insert_with(F::zero);
                *e = e.clone() + c.clone() * c2.clone() * c3;
            }
        }
    }
    acc.values().all(|x| x.is_zero())
}

/// Outcome of the truncated Koszul certificate.
#[derive(Clone, Debug, Serialize)]
pub struct KoszulCertificate {
    pub field: String,
    pub d: usize,
    pub max_j: usize,
    pub pass: bool,
    /// First `(i, j)` with `i != j` and `β_{i,j} != 0`.
    pub failure: Option<(usize, usize)>,
    pub witness: Option<SyzygyWitness>,
    pub table: GradedBettiTable,
    /// `1 + (D - 1)(g - 1) <= J` for the Gröbner degree `g`, so that no
    /// `β_{i,j}` with `i <= D` can lie beyond the computed region.
    pub complete_by_rate_bound: Option<bool>,
    pub orbit_reduced_degrees: usize,
}

/// Resolve `k` over `R` to homological degree `D` and internal degree `J`;
/// pass iff `β_{i,j} = 0` for `i != j` in that region.
pub fn koszul_certificate<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    opts: &ResolutionOptions,
    autos: &[Automorphism],
    gb_degree: Option<u32>,
) -> Result<(KoszulCertificate, ResidueResolution<F>)> {
    if opts.max_i < 2 {
        return Err(Error::Precondition("certificate cutoff D must be at least 2".into()));
    }
    let res = resolve_residue_field(alg, opts, autos)?;
    let failure = res.table.first_nonlinear();
    let cert = KoszulCertificate {
        field: F::tag(),
        d: opts.max_i,
        max_j: opts.max_j,
        pass: failure.is_none(),
        failure,
        witness: res.witness.clone(),
        table: res.table.clone(),
        complete_by_rate_bound: gb_degree.map(|g| 1 + (opts.max_i as i64 - 1) * (g as i64 - 1) <= opts.max_j as i64),
        orbit_reduced_degrees: res.orbit_reduced_degrees,
    };
    Ok((cert, res))
}

/// `sum_i β_i t^i * H_R(-t) ≡ 1 (mod t^{D+1})`, with `H_R = N(t) / (1-t)^n`,
/// checked as `P(t) N(-t) ≡ (1+t)^n`.
pub fn poincare_hilbert_check(totals: &[u64], numerator: &[i128], nvars: usize, d: usize) -> bool {
    let trunc = d + 1;
    let mut lhs = vec![0i128; trunc];
    for (i, &b) in totals.iter().enumerate().take(trunc) {
        for (k, &c) in numerator.iter().enumerate() {
            if i + k < trunc {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                lhs[i + k] += b as i128 * c * sign;
            }
        }
    }
    let mut rhs = vec![0i128; trunc];
    // binomial coefficients of (1+t)^n
    let mut c: i128 = 1;
    for (k, r) in rhs.iter_mut().enumerate() {
        if k > nvars {
            break;
        }
        *r = c;
        c = c * (nvars as i128 - k as i128) / (k as i128 + 1);
    }
    lhs == rhs
}

/// Hilbert numerator of an algebra with a Gröbner basis presentation.
pub fn quotient_numerator<F: Field>(gb: &GroebnerBasis<F>, nvars: usize) -> Vec<i128> {
    hilbert_numerator(&gb.generators.iter().map(|g| g.leading_monomial().clone()).collect::<Vec<_>>(), nvars)
}
