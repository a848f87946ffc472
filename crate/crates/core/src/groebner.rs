//! Gröbner bases: a generic field engine, a binomial engine for toric
//! ideals, and the search for quadratic Gröbner bases.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, Matrix};
use crate::scalar::Field;
use crate::semigroup::PointConfiguration;

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o`; caller guarantees divisibility.
    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Degrevlex,
    Deglex,
    WeightedDegrevlex,
}

/// Graded monomial order. `perm[0]` is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
    pub weights: Option<Vec<i64>>,
}

impl MonomialOrder {
    pub fn degrevlex(n: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Degrevlex,
            perm: (0..n).collect(),
            weights: None,
        }
    }

    pub fn deglex(n: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Deglex,
            perm: (0..n).collect(),
            weights: None,
        }
    }

    pub fn weighted_degrevlex(weights: Vec<i64>) -> Self {
        MonomialOrder {
            kind: OrderKind::WeightedDegrevlex,
            perm: (0..weights.len()).collect(),
            weights: Some(weights),
        }
    }

    pub fn with_perm(mut self, perm: Vec<usize>) -> Self {
        let mut check = perm.clone();
        check.sort_unstable();
        assert!(check.iter().copied().eq(0..self.perm.len()), "not a permutation");
        self.perm = perm;
        self
    }

    /// Degrevlex with variable `v` moved to the smallest position.
    pub fn degrevlex_last(n: usize, v: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        perm.push(v);
        MonomialOrder::degrevlex(n).with_perm(perm)
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    /// Linear sort key: `a > b` iff `key(a) > key(b)` lexicographically.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let e = &m.0;
        let mut k = Vec::with_capacity(e.len() + 2);
        k.push(m.degree() as i64);
        match self.kind {
            OrderKind::Deglex => k.extend(self.perm.iter().map(|&i| e[i] as i64)),
            OrderKind::Degrevlex => k.extend(self.perm.iter().rev().map(|&i| -(e[i] as i64))),
            OrderKind::WeightedDegrevlex => {
                let w = self.weights.as_ref().expect("weights");
                k.push(w.iter().zip(e).map(|(a, b)| a * *b as i64).sum());
                k.extend(self.perm.iter().rev().map(|&i| -(e[i] as i64)));
            }
        }
        k
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        if da != db {
            return da.cmp(&db);
        }
        match self.kind {
            OrderKind::Deglex => {
                for &i in &self.perm {
                    if a.0[i] != b.0[i] {
                        return a.0[i].cmp(&b.0[i]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Degrevlex | OrderKind::WeightedDegrevlex => {
                if let Some(w) = &self.weights {
                    let wa: i64 = w.iter().zip(&a.0).map(|(x, y)| x * *y as i64).sum();
                    let wb: i64 = w.iter().zip(&b.0).map(|(x, y)| x * *y as i64).sum();
                    if wa != wb {
                        return wa.cmp(&wb);
                    }
                }
                for &i in self.perm.iter().rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Text descriptor, e.g. `degrevlex 0,1,2` or `weighted-degrevlex 0,1 w 3,1`.
    pub fn descriptor(&self) -> String {
        let kind = match self.kind {
            OrderKind::Degrevlex => "degrevlex",
            OrderKind::Deglex => "deglex",
            OrderKind::WeightedDegrevlex => "weighted-degrevlex",
        };
        let perm: Vec<String> = self.perm.iter().map(|i| i.to_string()).collect();
        let mut s = format!("{kind} {}", perm.join(","));
        if let Some(w) = &self.weights {
            let w: Vec<String> = w.iter().map(|i| i.to_string()).collect();
            s.push_str(&format!(" w {}", w.join(",")));
        }
        s
    }

    pub fn parse_descriptor(s: &str) -> Result<MonomialOrder> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad order descriptor '{s}'"));
        let kind = match parts.first().copied() {
            Some("degrevlex") => OrderKind::Degrevlex,
            Some("deglex") => OrderKind::Deglex,
            Some("weighted-degrevlex") => OrderKind::WeightedDegrevlex,
            _ => return Err(bad()),
        };
        let list = |t: &str| -> Result<Vec<i64>> {
            if t.is_empty() {
                return Ok(vec![]);
            }
            t.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect()
        };
        let perm: Vec<usize> = list(parts.get(1).copied().unwrap_or(""))?
            .into_iter()
            .map(|x| usize::try_from(x).map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if !sorted.iter().copied().eq(0..perm.len()) {
            return Err(bad());
        }
        let weights = match (kind, parts.get(2).copied()) {
            (OrderKind::WeightedDegrevlex, Some("w")) => {
                let w = list(parts.get(3).copied().ok_or_else(bad)?)?;
                if w.len() != perm.len() {
                    return Err(bad());
                }
                Some(w)
            }
            (OrderKind::WeightedDegrevlex, _) => return Err(bad()),
            (_, None) => None,
            _ => return Err(bad()),
        };
        Ok(MonomialOrder {
            kind,
            perm,
            weights,
        })
    }
}

/// Polynomial with terms sorted by decreasing order key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    /// Combine like terms, drop zeros, sort under `order`.
    pub fn from_terms(order: &MonomialOrder, nvars: usize, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length");
            let e = acc.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.terms.first().expect("nonzero polynomial").0
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d)
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv();
                Polynomial {
                    nvars: self.nvars,
                    terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * inv.clone())).collect(),
                }
            }
        }
    }

    pub fn resort(&self, order: &MonomialOrder) -> Self {
        Polynomial::from_terms(order, self.nvars, self.terms.clone())
    }

    /// `self - c * m * g`, merging sorted term lists.
    pub fn sub_scaled(&self, order: &MonomialOrder, c: &F, m: &Monomial, g: &Polynomial<F>) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc.clone() * c.clone())).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, -bc));
                }
                (Some((am, _)), Some((bm, _))) => match order.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (bm, bc) = b.next().unwrap();
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap().clone();
                        let (_, bc) = b.next().unwrap();
                        let v = ac - bc;
                        if !v.is_zero() {
                            out.push((am, v));
                        }
                    }
                },
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Substitute `x_i -> t^{points[i]}` and collect; zero iff the
    /// polynomial lies in the kernel of the monomial map.
    pub fn monomial_image(&self, points: &[Vec<i64>]) -> BTreeMap<Vec<i64>, F> {
        let mut out: BTreeMap<Vec<i64>, F> = BTreeMap::new();
        let dim = points.first().map_or(0, |p| p.len());
        for (m, c) in &self.terms {
            let mut e = vec![0i64; dim];
            for (i, &k) in m.0.iter().enumerate() {
                for (d, x) in e.iter_mut().zip(&points[i]) {
                    *d += k as i64 * x;
                }
            }
            let v = out.entry(e).or_insert_with(F::zero);
            *v = v.clone() + c.clone();
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GbStatus {
    Complete,
    /// Pairs of degree above the cap were left unprocessed.
    Aborted { degree: u32 },
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F> {
    pub generators: Vec<Polynomial<F>>,
    pub order: MonomialOrder,
    pub reduced: bool,
    pub status: GbStatus,
}

/// Normal form of `p` modulo `basis` (full reduction).
pub fn normal_form<F: Field>(order: &MonomialOrder, p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let mut work = p.clone();
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    while let Some((m, c)) = work.leading().cloned() {
        let red = basis
            .iter()
            .find(|g| !g.is_zero() && g.leading_monomial().divides(&m));
        match red {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let q = m.div(gm);
                let f = c / gc.clone();
                work = work.sub_scaled(order, &f, &q, g);
            }
            None => {
                rem.push((m, c));
                work.terms.remove(0);
            }
        }
    }
    Polynomial {
        nvars: p.nvars,
        terms: rem,
    }
}

fn s_polynomial<F: Field>(order: &MonomialOrder, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = Polynomial::zero(f.nvars).sub_scaled(order, &-(fc.inv()), &l.div(fm), f);
    a.sub_scaled(order, &gc.inv(), &l.div(gm), g)
}

/// Pair queue with Gebauer-Möller pruning, shared by both engines.
/// Inputs enter as pseudo-pairs so that everything is processed by degree.
struct PairQueue {
    pairs: BTreeMap<(u32, usize, usize), Monomial>,
    inputs: BTreeMap<(u32, usize), ()>,
}

enum Next {
    Input(usize),
    Pair(usize, usize),
}

impl PairQueue {
    fn new() -> Self {
        PairQueue {
            pairs: BTreeMap::new(),
            inputs: BTreeMap::new(),
        }
    }

    fn min_degree(&self) -> Option<u32> {
        let a = self.pairs.keys().next().map(|k| k.0);
        let b = self.inputs.keys().next().map(|k| k.0);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    fn pop(&mut self) -> Option<Next> {
        let a = self.pairs.keys().next().copied();
        let b = self.inputs.keys().next().copied();
        match (a, b) {
            (None, None) => None,
            (Some(p), Some(i)) if i.0 <= p.0 => {
                self.inputs.remove(&i);
                Some(Next::Input(i.1))
            }
            (None, Some(i)) => {
                self.inputs.remove(&i);
                Some(Next::Input(i.1))
            }
            (Some(p), _) => {
                self.pairs.remove(&p);
                Some(Next::Pair(p.1, p.2))
            }
        }
    }

    /// Add element `h` with leading monomial `heads[h]`; `active` lists the
    /// current basis. Returns the new active list.
    fn update(&mut self, heads: &[Monomial], active: &[usize], h: usize) -> Vec<usize> {
        let lh = &heads[h];
        let cands: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, lh.lcm(&heads[g]))).collect();
        let mut keep = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            let coprime = lh.coprime(&heads[*g]);
            let dominated = cands[k + 1..].iter().any(|(_, l2)| l2.divides(l))
                || keep.iter().any(|(_, l2): &(usize, Monomial)| l2.divides(l));
            if coprime || !dominated {
                keep.push((*g, l.clone()));
            }
        }
        let new_pairs: Vec<(usize, Monomial)> = keep
            .into_iter()
            .filter(|(g, _)| !lh.coprime(&heads[*g]))
            .collect();
        self.pairs.retain(|&(_, a, b), l| {
            !lh.divides(l) || lh.lcm(&heads[a]) == *l || lh.lcm(&heads[b]) == *l
        });
        for (g, l) in new_pairs {
            let (a, b) = if g < h { (g, h) } else { (h, g) };
            self.pairs.insert((l.degree(), a, b), l);
        }
        let mut next: Vec<usize> = active.iter().copied().filter(|&g| !lh.divides(&heads[g])).collect();
        next.push(h);
        next
    }
}

/// Options shared by the Buchberger engines.
#[derive(Clone, Debug, Default)]
pub struct BuchbergerOptions {
    /// Stop with [`GbStatus::Aborted`] before processing pairs above this degree.
    pub max_degree: Option<u32>,
    /// Stop at the first nonzero remainder of at least this degree.
    pub abort_on_remainder_degree: Option<u32>,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], order: &MonomialOrder) -> GroebnerBasis<F> {
    buchberger_with(gens, order, &BuchbergerOptions::default())
}

pub fn buchberger_with<F: Field>(
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
    opts: &BuchbergerOptions,
) -> GroebnerBasis<F> {
    let inputs: Vec<Polynomial<F>> = gens.iter().map(|g| g.resort(order)).filter(|g| !g.is_zero()).collect();
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut heads: Vec<Monomial> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut q = PairQueue::new();
    for (i, g) in inputs.iter().enumerate() {
        q.inputs.insert((g.degree(), i), ());
    }
    let mut status = GbStatus::Complete;
    while let Some(d) = q.min_degree() {
        if opts.max_degree.is_some_and(|cap| d > cap) {
            status = GbStatus::Aborted { degree: d };
            break;
        }
        let next = q.pop().unwrap();
        let cand = match next {
            Next::Input(i) => inputs[i].clone(),
            Next::Pair(a, b) => s_polynomial(order, &basis[a], &basis[b]),
        };
        let reducers: Vec<Polynomial<F>> = active.iter().map(|&i| basis[i].clone()).collect();
        let r = normal_form(order, &cand, &reducers);
        if r.is_zero() {
            continue;
        }
        if opts.abort_on_remainder_degree.is_some_and(|k| r.degree() >= k) {
            status = GbStatus::Aborted { degree: r.degree() };
            break;
        }
        let r = r.monic();
        basis.push(r.clone());
        heads.push(r.leading_monomial().clone());
        let h = basis.len() - 1;
        active = q.update(&heads, &active, h);
    }
    let gens = reduce_basis(order, active.iter().map(|&i| basis[i].clone()).collect());
    GroebnerBasis {
        generators: gens,
        order: order.clone(),
        reduced: status == GbStatus::Complete,
        status,
    }
}

/// Minimalize, tail-reduce and sort by decreasing leading monomial.
fn reduce_basis<F: Field>(order: &MonomialOrder, mut g: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    g.sort_by(|a, b| order.cmp(b.leading_monomial(), a.leading_monomial()));
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lm = p.leading_monomial();
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.leading_monomial();
            j != i && lq.divides(lm) && (lq != lm || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (lm, lc) = minimal[i].leading().unwrap().clone();
        let tail = Polynomial {
            nvars: minimal[i].nvars,
            terms: minimal[i].terms[1..].to_vec(),
        };
        let others: Vec<Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let t = normal_form(order, &tail, &others);
        let mut terms = vec![(lm, lc)];
        terms.extend(t.terms);
        out.push(Polynomial { nvars: minimal[i].nvars, terms }.monic());
    }
    out
}

impl<F: Field> GroebnerBasis<F> {
    pub fn max_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        normal_form(&self.order, &p.resort(&self.order), &self.generators)
    }

    /// Both ideals contain each other's generators.
    pub fn same_ideal(&self, other: &[Polynomial<F>]) -> bool {
        other.iter().all(|p| self.normal_form(p).is_zero())
    }
}

/// Every generator has total degree at most two.
pub fn is_quadratic_gb<F: Field>(b: &GroebnerBasis<F>) -> bool {
    b.status == GbStatus::Complete && b.generators.iter().all(|g| g.degree() <= 2)
}

/// Leading monomials of a reduced basis.
pub fn initial_ideal<F: Field>(b: &GroebnerBasis<F>) -> Vec<Monomial> {
    b.generators.iter().map(|g| g.leading_monomial().clone()).collect()
}

/// First strategy whose reduced basis is quadratic.
pub fn search_quadratic_gb<F: Field>(
    gens: &[Polynomial<F>],
    strategies: &[MonomialOrder],
) -> Option<(MonomialOrder, GroebnerBasis<F>)> {
    let opts = BuchbergerOptions {
        max_degree: None,
        abort_on_remainder_degree: Some(3),
    };
    for o in strategies {
        let gb = buchberger_with(gens, o, &opts);
        if is_quadratic_gb(&gb) {
            return Some((o.clone(), gb));
        }
    }
    None
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of
/// `k[x_1..x_n] / (monomials)`.
pub fn hilbert_numerator(monomials: &[Monomial], nvars: usize) -> Vec<i128> {
    let gens = minimalize_monomials(monomials.to_vec());
    let _ = nvars;
    let mut out = hn_rec(gens);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn minimalize_monomials(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by_key(|m| (m.degree(), m.0.clone()));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// Pivot recursion `N(J) = N(J + x) + t N(J : x)` with coprime splitting.
fn hn_rec(gens: Vec<Monomial>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    // variable-disjoint blocks multiply
    let n = gens[0].nvars();
    let mut occ: Vec<usize> = vec![0; n];
    for g in &gens {
        for i in g.support() {
            occ[i] += 1;
        }
    }
    if occ.iter().all(|&c| c <= 1) {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0i128; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            poly_mul(&acc, &f)
        });
    }
    if let Some(blocks) = split_blocks(&gens) {
        return blocks.into_iter().fold(vec![1], |acc, b| poly_mul(&acc, &hn_rec(b)));
    }
    let x = (0..n).max_by_key(|&i| (occ[i], std::cmp::Reverse(i))).unwrap();
    // J + x: drop generators divisible by x, then the free factor (1 - t)
    let plus: Vec<Monomial> = gens.iter().filter(|g| g.0[x] == 0).cloned().collect();
    let a = poly_mul(&[1, -1], &hn_rec(plus));
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut m = g.clone();
            if m.0[x] > 0 {
                m.0[x] -= 1;
            }
            m
        })
        .collect();
    let colon = minimalize_monomials(colon);
    let b = if colon.iter().any(|m| m.is_one()) {
        vec![0]
    } else {
        poly_mul(&[0, 1], &hn_rec(colon))
    };
    poly_add(&a, &b)
}

fn split_blocks(gens: &[Monomial]) -> Option<Vec<Vec<Monomial>>> {
    let k = gens.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    let n = gens[0].nvars();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (gi, g) in gens.iter().enumerate() {
        for v in g.support() {
            match owner[v] {
                None => owner[v] = Some(gi),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, gi));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    for (gi, g) in gens.iter().enumerate() {
        let r = find(&mut parent, gi);
        groups.entry(r).or_default().push(g.clone());
    }
    if groups.len() <= 1 {
        return None;
    }
    Some(groups.into_values().collect())
}

/// Hilbert numerator of `S / in(I)` for a reduced basis.
pub fn hilbert_series_numerator<F: Field>(b: &GroebnerBasis<F>, nvars: usize) -> Vec<i128> {
    hilbert_numerator(&initial_ideal(b), nvars)
}

// ---------------------------------------------------------------------------
// Binomial engine
// ---------------------------------------------------------------------------

/// Pure difference binomial `head - tail` with `head > tail` in the active
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub head: Monomial,
    pub tail: Monomial,
}

impl Binomial {
    /// Orient `a - b`; `None` if `a == b`.
    pub fn oriented(order: &MonomialOrder, a: Monomial, b: Monomial) -> Option<Binomial> {
        match order.cmp(&a, &b) {
            Ordering::Greater => Some(Binomial { head: a, tail: b }),
            Ordering::Less => Some(Binomial { head: b, tail: a }),
            Ordering::Equal => None,
        }
    }

    /// Binomial of a lattice vector: `x^{v+} - x^{v-}`.
    pub fn from_lattice_vector(order: &MonomialOrder, v: &[i64]) -> Option<Binomial> {
        let pos = Monomial(v.iter().map(|&x| x.max(0) as u32).collect());
        let neg = Monomial(v.iter().map(|&x| (-x).max(0) as u32).collect());
        Binomial::oriented(order, pos, neg)
    }

    pub fn degree(&self) -> u32 {
        self.head.degree().max(self.tail.degree())
    }

    pub fn exponent_difference(&self) -> Vec<i64> {
        self.head.0.iter().zip(&self.tail.0).map(|(a, b)| *a as i64 - *b as i64).collect()
    }

    pub fn to_polynomial<F: Field>(&self, order: &MonomialOrder) -> Polynomial<F> {
        let n = self.head.nvars();
        Polynomial::from_terms(order, n, vec![(self.head.clone(), F::one()), (self.tail.clone(), -F::one())])
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.head, self.tail)
    }
}

/// Reduced binomial Gröbner basis.
#[derive(Clone, Debug)]
pub struct BinomialBasis {
    pub generators: Vec<Binomial>,
    pub order: MonomialOrder,
    pub status: GbStatus,
}

impl BinomialBasis {
    pub fn max_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn is_quadratic(&self) -> bool {
        self.status == GbStatus::Complete && self.max_degree() <= 2
    }

    pub fn initial_ideal(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.head.clone()).collect()
    }

    pub fn to_groebner_basis<F: Field>(&self) -> GroebnerBasis<F> {
        GroebnerBasis {
            generators: self.generators.iter().map(|b| b.to_polynomial(&self.order)).collect(),
            order: self.order.clone(),
            reduced: self.status == GbStatus::Complete,
            status: self.status.clone(),
        }
    }

    /// Normal form of a monomial (a monomial, since the basis is binomial).
    pub fn normal_form(&self, m: &Monomial) -> Monomial {
        let mut m = m.clone();
        'outer: loop {
            for g in &self.generators {
                if g.head.divides(&m) {
                    m = m.div(&g.head).mul(&g.tail);
                    continue 'outer;
                }
            }
            return m;
        }
    }
}

struct BinomialReducer {
    elems: Vec<Binomial>,
    /// elements indexed by the first variable of their head
    by_var: Vec<Vec<usize>>,
}

impl BinomialReducer {
    fn new(n: usize) -> Self {
        BinomialReducer {
            elems: Vec::new(),
            by_var: vec![Vec::new(); n],
        }
    }

    fn push(&mut self, b: Binomial) -> usize {
        let idx = self.elems.len();
        let v = b.head.0.iter().position(|&e| e > 0).expect("nonconstant head");
        self.by_var[v].push(idx);
        self.elems.push(b);
        idx
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            for &i in &self.by_var[v] {
                if self.elems[i].head.divides(m) {
                    return Some(i);
                }
            }
        }
        None
    }

    fn normal_form(&self, m: &Monomial) -> Monomial {
        let mut m = m.clone();
        while let Some(i) = self.find(&m) {
            let g = &self.elems[i];
            m = m.div(&g.head).mul(&g.tail);
        }
        m
    }
}

/// Buchberger for pure difference binomials: normal forms of binomials are
/// differences of monomial normal forms, so no coefficients are needed.
pub fn binomial_buchberger(gens: &[Binomial], order: &MonomialOrder, opts: &BuchbergerOptions) -> BinomialBasis {
    let n = order.nvars();
    let inputs: Vec<Binomial> = gens
        .iter()
        .filter_map(|g| Binomial::oriented(order, g.head.clone(), g.tail.clone()))
        .collect();
    let mut red = BinomialReducer::new(n);
    let mut heads: Vec<Monomial> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut q = PairQueue::new();
    for (i, g) in inputs.iter().enumerate() {
        q.inputs.insert((g.degree(), i), ());
    }
    let mut status = GbStatus::Complete;
    while let Some(d) = q.min_degree() {
        if opts.max_degree.is_some_and(|cap| d > cap) {
            status = GbStatus::Aborted { degree: d };
            break;
        }
        let (a, b) = match q.pop().unwrap() {
            Next::Input(i) => (inputs[i].head.clone(), inputs[i].tail.clone()),
            Next::Pair(i, j) => {
                let (f, g) = (&red.elems[i], &red.elems[j]);
                let l = f.head.lcm(&g.head);
                (l.div(&f.head).mul(&f.tail), l.div(&g.head).mul(&g.tail))
            }
        };
        let (a, b) = (red.normal_form(&a), red.normal_form(&b));
        let Some(r) = Binomial::oriented(order, a, b) else {
            continue;
        };
        if opts.abort_on_remainder_degree.is_some_and(|k| r.degree() >= k) {
            status = GbStatus::Aborted { degree: r.degree() };
            break;
        }
        heads.push(r.head.clone());
        let h = red.push(r);
        active = q.update(&heads, &active, h);
    }
    let generators = reduce_binomials(order, active.iter().map(|&i| red.elems[i].clone()).collect());
    BinomialBasis {
        generators,
        order: order.clone(),
        status,
    }
}

fn reduce_binomials(order: &MonomialOrder, mut g: Vec<Binomial>) -> Vec<Binomial> {
    g.sort_by(|a, b| order.cmp(&b.head, &a.head).then_with(|| a.tail.cmp(&b.tail)));
    g.dedup_by(|a, b| a.head == b.head);
    let heads: Vec<Monomial> = g.iter().map(|b| b.head.clone()).collect();
    let minimal: Vec<Binomial> = g
        .iter()
        .enumerate()
        .filter(|(i, b)| !heads.iter().enumerate().any(|(j, h)| j != *i && h.divides(&b.head)))
        .map(|(_, b)| b.clone())
        .collect();
    let mut red = BinomialReducer::new(order.nvars());
    for b in &minimal {
        red.push(b.clone());
    }
    // the heads are minimal, so only tails change
    let mut out = Vec::with_capacity(minimal.len());
    for b in &minimal {
        let t = red.normal_form(&b.tail);
        out.push(Binomial {
            head: b.head.clone(),
            tail: t,
        });
    }
    out.sort_by(|a, b| order.cmp(&b.head, &a.head));
    out
}

/// `J : x_v^infinity` for a binomial ideal, via degrevlex with `x_v` least.
pub fn saturate_variable(gens: &[Binomial], n: usize, v: usize) -> Vec<Binomial> {
    let order = MonomialOrder::degrevlex_last(n, v);
    let gb = binomial_buchberger(gens, &order, &BuchbergerOptions::default());
    gb.generators
        .into_iter()
        .filter_map(|b| {
            let k = b.head.0[v].min(b.tail.0[v]);
            let mut h = b.head.clone();
            let mut t = b.tail.clone();
            h.0[v] -= k;
            t.0[v] -= k;
            Binomial::oriented(&order, h, t)
        })
        .collect()
}

/// Kernel of the configuration matrix (columns are points).
pub fn kernel_lattice_basis(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = points.len();
    if n == 0 {
        return vec![];
    }
    let d = points[0].len();
    let a = Matrix::from_rows(
        (0..d).map(|r| points.iter().map(|p| BigInt::from(p[r])).collect()).collect(),
        n,
    );
    let s = smith_normal_form(&a);
    let rank = s.rank();
    (rank..n)
        .map(|c| (0..n).map(|r| s.v.get(r, c).to_i64().expect("small kernel entry")).collect())
        .collect()
}

/// The sublattice spanned by `vs` equals the lattice spanned by `basis`,
/// given `vs` is contained in it.
fn spans_lattice(vs: &[Vec<i64>], basis: &[Vec<i64>], n: usize) -> bool {
    if basis.is_empty() {
        return true;
    }
    if vs.is_empty() {
        return false;
    }
    let gcd_of_max_minors = |rows: &[Vec<i64>]| {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), n);
        let s = smith_normal_form(&m);
        let f = s.invariant_factors();
        (f.len(), f.iter().fold(BigInt::one(), |a, b| a * b))
    };
    let (r1, d1) = gcd_of_max_minors(vs);
    let (r2, d2) = gcd_of_max_minors(basis);
    r1 == r2 && d1.abs() == d2.abs()
}

/// How the returned toric ideal was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ToricRoute {
    /// Variable-by-variable saturation.
    Saturation,
    /// The Hilbert series of the candidate ideal matches the Ehrhart series
    /// of a normal configuration, so saturation cannot add anything.
    HilbertCertificate,
}

/// Toric ideal as a reduced degrevlex binomial Gröbner basis.
#[derive(Clone, Debug)]
pub struct ToricIdeal {
    pub basis: BinomialBasis,
    pub route: ToricRoute,
    pub nvars: usize,
}

impl ToricIdeal {
    pub fn generators(&self) -> &[Binomial] {
        &self.basis.generators
    }

    pub fn polynomials<F: Field>(&self) -> Vec<Polynomial<F>> {
        self.basis.generators.iter().map(|b| b.to_polynomial(&self.basis.order)).collect()
    }
}

/// Degree-two binomials connecting every fiber of the degree-two map.
pub fn quadratic_fiber_binomials(points: &[Vec<i64>], order: &MonomialOrder) -> Vec<Binomial> {
    let n = points.len();
    let mut fibers: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let s: Vec<i64> = points[i].iter().zip(&points[j]).map(|(a, b)| a + b).collect();
            let mut m = Monomial::one(n);
            m.0[i] += 1;
            m.0[j] += 1;
            fibers.entry(s).or_default().push(m);
        }
    }
    let mut out = Vec::new();
    for (_, mut ms) in fibers {
        ms.sort_by(|a, b| order.cmp(b, a));
        let least = ms.last().unwrap().clone();
        for m in &ms[..ms.len() - 1] {
            out.push(Binomial {
                head: m.clone(),
                tail: least.clone(),
            });
        }
    }
    out
}

/// Full saturation of the ideal of a lattice basis (the oracle route).
pub fn toric_ideal_by_lattice_basis(config: &PointConfiguration) -> Result<ToricIdeal> {
    let pts = config.points_i64()?;
    let n = pts.len();
    let order = MonomialOrder::degrevlex(n);
    let mut gens: Vec<Binomial> = kernel_lattice_basis(&pts)
        .iter()
        .filter_map(|v| Binomial::from_lattice_vector(&order, v))
        .collect();
    for v in 0..n {
        gens = saturate_variable(&gens, n, v);
    }
    let basis = binomial_buchberger(&gens, &order, &BuchbergerOptions::default());
    Ok(ToricIdeal {
        basis,
        route: ToricRoute::Saturation,
        nvars: n,
    })
}

/// Toric ideal of a height-one configuration.
///
/// Starts from the quadratic fiber binomials (plus a lattice basis when
/// they do not span the kernel lattice). If the configuration is normal and
/// the Hilbert series of the candidate matches the Ehrhart series, the
/// candidate is the toric ideal; otherwise every variable is saturated.
pub fn toric_ideal(config: &PointConfiguration) -> Result<ToricIdeal> {
    toric_ideal_with(config, None)
}

/// `ehrhart_h_star`: numerator of the Ehrhart series when the configuration
/// is known to be normal.
pub fn toric_ideal_with(config: &PointConfiguration, ehrhart_h_star: Option<&[i128]>) -> Result<ToricIdeal> {
    let pts = config.points_i64()?;
    let n = pts.len();
    let order = MonomialOrder::degrevlex(n);
    let kernel = kernel_lattice_basis(&pts);
    if kernel.is_empty() {
        return Ok(ToricIdeal {
            basis: BinomialBasis {
                generators: vec![],
                order,
                status: GbStatus::Complete,
            },
            route: ToricRoute::HilbertCertificate,
            nvars: n,
        });
    }
    let mut gens = quadratic_fiber_binomials(&pts, &order);
    let diffs: Vec<Vec<i64>> = gens.iter().map(|b| b.exponent_difference()).collect();
    if !spans_lattice(&diffs, &kernel, n) {
        gens.extend(kernel.iter().filter_map(|v| Binomial::from_lattice_vector(&order, v)));
    }
    let gb = binomial_buchberger(&gens, &order, &BuchbergerOptions::default());
    if let Some(hstar) = ehrhart_h_star {
        let d = pts[0].len();
        let mut expect = hstar.to_vec();
        for _ in 0..n - d {
            expect = poly_mul(&expect, &[1, -1]);
        }
        while expect.len() > 1 && *expect.last().unwrap() == 0 {
            expect.pop();
        }
        if hilbert_numerator(&gb.initial_ideal(), n) == expect {
            return Ok(ToricIdeal {
                basis: gb,
                route: ToricRoute::HilbertCertificate,
                nvars: n,
            });
        }
    }
    let mut cur = gb.generators;
    for v in 0..n {
        cur = saturate_variable(&cur, n, v);
    }
    let basis = binomial_buchberger(&cur, &order, &BuchbergerOptions::default());
    Ok(ToricIdeal {
        basis,
        route: ToricRoute::Saturation,
        nvars: n,
    })
}

/// Default strategy list: canonical order, reversed order, then `extra`
/// seeded random permutations, all degrevlex.
pub fn default_strategies(n: usize, seed: u64, extra: usize) -> Vec<MonomialOrder> {
    let mut out = vec![MonomialOrder::degrevlex(n)];
    let rev: Vec<usize> = (0..n).rev().collect();
    out.push(MonomialOrder::degrevlex(n).with_perm(rev));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        out.push(MonomialOrder::degrevlex(n).with_perm(p));
    }
    let mut seen = BTreeSet::new();
    out.retain(|o| seen.insert(o.perm.clone()));
    out
}

/// Outcome of the quadratic Gröbner basis search.
#[derive(Clone, Debug)]
pub struct QuadraticSearch {
    pub found: Option<(usize, BinomialBasis)>,
    pub strategies_tried: usize,
}

/// Binomial version of [`search_quadratic_gb`].
pub fn search_quadratic_gb_binomial(gens: &[Binomial], strategies: &[MonomialOrder]) -> QuadraticSearch {
    let opts = BuchbergerOptions {
        max_degree: None,
        abort_on_remainder_degree: Some(3),
    };
    for (k, o) in strategies.iter().enumerate() {
        let gb = binomial_buchberger(gens, o, &opts);
        if gb.is_quadratic() {
            return QuadraticSearch {
                found: Some((k, gb)),
                strategies_tried: k + 1,
            };
        }
    }
    QuadraticSearch {
        found: None,
        strategies_tried: strategies.len(),
    }
}

/// Minimal generator degrees of an ideal given by a homogeneous Gröbner
/// basis: the count of degree-`j` minimal generators for each `j`,
/// assuming the basis polynomials generate the ideal.
pub fn minimal_generator_degrees<F: Field>(b: &GroebnerBasis<F>) -> BTreeMap<u32, usize> {
    // a basis element is a minimal generator iff it is not in the ideal of
    // the lower-degree part plus its same-degree predecessors
    let mut out = BTreeMap::new();
    let mut by_deg: BTreeMap<u32, Vec<Polynomial<F>>> = BTreeMap::new();
    for g in &b.generators {
        by_deg.entry(g.degree()).or_default().push(g.clone());
    }
    let mut lower: Vec<Polynomial<F>> = Vec::new();
    for (d, gs) in by_deg {
        let gb = buchberger_with(
            &lower,
            &b.order,
            &BuchbergerOptions {
                max_degree: Some(d),
                abort_on_remainder_degree: None,
            },
        );
        // degree-d span of the lower part versus the degree-d generators
        let nvars = b.order.nvars();
        let span = degree_part(&gb.generators, &b.order, nvars, d);
        let mut echelon: Vec<Polynomial<F>> = Vec::new();
        for p in span {
            insert_echelon(&b.order, &mut echelon, p);
        }
        let mut count = 0;
        for g in &gs {
            if insert_echelon(&b.order, &mut echelon, g.clone()) {
                count += 1;
            }
        }
        if count > 0 {
            out.insert(d, count);
        }
        lower.extend(gs);
    }
    out
}

fn degree_part<F: Field>(gens: &[Polynomial<F>], order: &MonomialOrder, n: usize, d: u32) -> Vec<Polynomial<F>> {
    let mut out = Vec::new();
    for g in gens {
        let gd = g.degree();
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            out.push(Polynomial::zero(n).sub_scaled(order, &-F::one(), &m, g));
        }
    }
    out
}

fn insert_echelon<F: Field>(order: &MonomialOrder, e: &mut Vec<Polynomial<F>>, p: Polynomial<F>) -> bool {
    let r = normal_form(order, &p, e);
    if r.is_zero() {
        return false;
    }
    e.push(r.monic());
    true
}

/// All monomials of total degree `d` in `n` variables, lexicographic.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Check that every generator maps to zero under `x_i -> t^{points[i]}`.
pub fn vanishes_on_configuration(gens: &[Binomial], points: &[Vec<i64>]) -> bool {
    let image = |m: &Monomial| -> Vec<i64> {
        let d = points[0].len();
        let mut e = vec![0i64; d];
        for (i, &k) in m.0.iter().enumerate() {
            for (x, p) in e.iter_mut().zip(&points[i]) {
                *x += k as i64 * p;
            }
        }
        e
    };
    gens.iter().all(|b| image(&b.head) == image(&b.tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type F = Fp<32003>;

    fn poly(order: &MonomialOrder, n: usize, terms: &[(i64, &[u32])]) -> Polynomial<F> {
        Polynomial::from_terms(
            order,
            n,
            terms.iter().map(|(c, e)| (Monomial(e.to_vec()), F::from_i64(*c))).collect(),
        )
    }

    #[test]
    fn order_keys_agree_with_comparison() {
        let o = MonomialOrder::degrevlex(3).with_perm(vec![2, 0, 1]);
        let ms = monomials_of_degree(3, 3);
        for a in &ms {
            for b in &ms {
                assert_eq!(o.cmp(a, b), o.key(a).cmp(&o.key(b)));
            }
        }
    }

    #[test]
    fn degrevlex_compares_last_variable() {
        let o = MonomialOrder::degrevlex(3);
        // x0 x2 < x1^2 in degrevlex x0 > x1 > x2
        assert_eq!(o.cmp(&Monomial(vec![1, 0, 1]), &Monomial(vec![0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn square_pair_reduces_to_zero() {
        let o = MonomialOrder::degrevlex(2);
        let f = poly(&o, 2, &[(1, &[2, 0]), (-1, &[0, 2])]);
        let g = poly(&o, 2, &[(1, &[1, 1]), (-1, &[0, 2])]);
        let gb = buchberger(&[f.clone(), g.clone()], &o);
        assert_eq!(gb.generators.len(), 2);
        assert!(gb.same_ideal(&[f, g]));
    }

    #[test]
    fn rational_field_engine() {
        let o = MonomialOrder::deglex(2);
        let f = Polynomial::<Rational>::from_terms(
            &o,
            2,
            vec![(Monomial(vec![1, 0]), Rational::from(2)), (Monomial(vec![0, 1]), Rational::from(-3))],
        );
        let gb = buchberger(&[f], &o);
        assert_eq!(gb.generators[0].to_string(), "x0 - 3/2*x1");
    }

    #[test]
    fn hilbert_numerators() {
        assert_eq!(hilbert_numerator(&[], 3), vec![1]);
        assert_eq!(hilbert_numerator(&[Monomial(vec![1, 0, 0, 1])], 4), vec![1, 0, -1]);
        // x0x2, x0x3, x1x3: twisted cubic initial ideal
        let ms = vec![
            Monomial(vec![1, 0, 1, 0]),
            Monomial(vec![1, 0, 0, 1]),
            Monomial(vec![0, 1, 0, 1]),
        ];
        assert_eq!(hilbert_numerator(&ms, 4), vec![1, 0, -3, 2]);
    }

    #[test]
    fn descriptor_roundtrip() {
        let o = MonomialOrder::weighted_degrevlex(vec![3, 1, 2]).with_perm(vec![1, 0, 2]);
        assert_eq!(MonomialOrder::parse_descriptor(&o.descriptor()).unwrap(), o);
        let d = MonomialOrder::degrevlex(4);
        assert_eq!(MonomialOrder::parse_descriptor(&d.descriptor()).unwrap(), d);
        assert!(MonomialOrder::parse_descriptor("lex 0,1").is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
    }

    fn config(points: &[Vec<i64>]) -> PointConfiguration {
        PointConfiguration::from_i64(points).unwrap()
    }

    #[test]
    fn twisted_cubic_toric_ideal() {
        let c = config(&[vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1]]);
        let t = toric_ideal(&c).unwrap();
        assert_eq!(t.generators().len(), 3);
        assert!(t.basis.is_quadratic());
        let oracle = toric_ideal_by_lattice_basis(&c).unwrap();
        assert_eq!(oracle.generators(), t.generators());
    }

    #[test]
    fn non_quadratic_lattice_ideal() {
        // x0^2 x2 - x1^3 style: points 0, 3, ... on the line with a gap
        let c = config(&[vec![0, 1], vec![1, 1], vec![3, 1]]);
        let t = toric_ideal(&c).unwrap();
        let oracle = toric_ideal_by_lattice_basis(&c).unwrap();
        assert_eq!(oracle.generators(), t.generators());
        assert!(vanishes_on_configuration(t.generators(), &c.points_i64().unwrap()));
        assert_eq!(t.route, ToricRoute::Saturation);
        assert_eq!(t.basis.max_degree(), 3);
    }

    #[test]
    fn hilbert_certificate_route() {
        let c = config(&[vec![0, 0, 1], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]]);
        let t = toric_ideal_with(&c, Some(&[1, 1])).unwrap();
        assert_eq!(t.route, ToricRoute::HilbertCertificate);
        assert_eq!(t.generators().len(), 1);
        assert_eq!(t.generators()[0].to_string(), "x1*x2 - x0*x3");
    }

    #[test]
    fn binomial_and_field_engines_agree() {
        let c = config(&[vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![4, 1]]);
        let t = toric_ideal(&c).unwrap();
        for o in default_strategies(5, 7, 3) {
            let b = binomial_buchberger(t.generators(), &o, &BuchbergerOptions::default());
            let f = buchberger(&t.polynomials::<F>(), &o);
            let lead_b: BTreeSet<Monomial> = b.initial_ideal().into_iter().collect();
            let lead_f: BTreeSet<Monomial> = initial_ideal(&f).into_iter().collect();
            assert_eq!(lead_b, lead_f);
        }
    }
}
