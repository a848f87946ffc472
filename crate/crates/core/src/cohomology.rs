//! Cohomology of torus-invariant divisors and multigraded regularity.
//!
//! For a simplicial complete fan, `H^p(X, O(D))_m` is the reduced
//! cohomology `H~^{p-1}` of the subcomplex induced on the rays `rho` with
//! `<m, u_rho> < -a_rho`. Weights are grouped by that ray set: each set
//! with nonzero cohomology cuts out a bounded chamber whose lattice points
//! are counted exactly.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{lattice_points, minkowski_sum, Fan, LatticeVector, Polytope};
use crate::matrix::{rank, smith_normal_form, Matrix};
use crate::scalar::{Field, Rational};

/// Largest fan handled by the subset enumeration.
pub const MAX_RAYS: usize = 16;

/// `D = sum a_rho D_rho`, one coefficient per ray of the fan it lives on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorusDivisor {
    pub coeffs: Vec<i64>,
}

impl TorusDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        TorusDivisor { coeffs }
    }

    pub fn zero(rays: usize) -> Self {
        TorusDivisor {
            coeffs: vec![0; rays],
        }
    }

    pub fn add(&self, o: &TorusDivisor) -> TorusDivisor {
        TorusDivisor::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &TorusDivisor) -> TorusDivisor {
        TorusDivisor::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> TorusDivisor {
        TorusDivisor::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// The polyhedron `{m : <m, u_rho> >= -a_rho}` as half-spaces.
    fn constraints(&self, fan: &Fan) -> Vec<(Vec<i64>, i64)> {
        fan.rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(u, a)| (u.to_i64().expect("small ray"), -a))
            .collect()
    }
}

/// `h^0 .. h^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub dims: Vec<u64>,
}

impl CohomologyTable {
    pub fn h(&self, i: usize) -> u64 {
        self.dims.get(i).copied().unwrap_or(0)
    }

    /// `sum (-1)^i h^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }
}

fn check_divisor(fan: &Fan, d: &TorusDivisor) -> Result<()> {
    if d.coeffs.len() != fan.rays().len() {
        return Err(Error::Precondition(format!(
            "divisor has {} coefficients, fan has {} rays",
            d.coeffs.len(),
            fan.rays().len()
        )));
    }
    Ok(())
}

/// `a_rho = -min_v <v, u_rho>`. Every maximal cone of `fan` must have a
/// vertex minimizing all of its rays at once.
pub fn divisor_of_polytope(p: &Polytope, fan: &Fan) -> Result<TorusDivisor> {
    if p.rank() != fan.rank() {
        return Err(Error::Incompatible("rank mismatch".into()));
    }
    let coeffs: Vec<BigInt> = fan
        .rays()
        .iter()
        .map(|u| -p.vertices().iter().map(|v| v.dot(u)).min().expect("vertices"))
        .collect();
    for c in fan.max_cones() {
        let ok = p.vertices().iter().any(|v| {
            c.rays
                .iter()
                .all(|&i| v.dot(&fan.rays()[i]) == -&coeffs[i])
        });
        if !ok {
            return Err(Error::Incompatible(format!(
                "no vertex is minimal on all rays of cone {:?}",
                c.rays
            )));
        }
    }
    let coeffs = coeffs
        .iter()
        .map(|a| a.to_i64().ok_or(Error::Overflow("divisor coefficient")))
        .collect::<Result<_>>()?;
    Ok(TorusDivisor::new(coeffs))
}

/// Reduced Betti numbers `h~^{-1} .. h~^{n-1}` of every induced subcomplex,
/// indexed by ray bitmask.
struct InducedComplexes {
    rank: usize,
    faces_by_dim: Vec<Vec<Vec<usize>>>,
    betti: Vec<Vec<u64>>,
}

impl InducedComplexes {
    fn new(fan: &Fan) -> Result<Self> {
        if fan.rays().len() > MAX_RAYS {
            return Err(Error::ResourceCap(format!(
                "fan has {} rays, at most {MAX_RAYS} supported",
                fan.rays().len()
            )));
        }
        let mut faces_by_dim = vec![Vec::new(); fan.rank() + 1];
        for f in fan.faces()? {
            faces_by_dim[f.len()].push(f);
        }
        let mut cx = InducedComplexes {
            rank: fan.rank(),
            faces_by_dim,
            betti: Vec::new(),
        };
        cx.betti = (0u64..(1u64 << fan.rays().len()))
            .map(|mask| cx.reduced_betti(mask))
            .collect();
        Ok(cx)
    }

    /// Entry `k` is `dim H~^{k-1}`.
    fn reduced_betti(&self, mask: u64) -> Vec<u64> {
        let inside = |f: &Vec<usize>| f.iter().all(|&i| mask >> i & 1 == 1);
        let faces: Vec<Vec<&Vec<usize>>> = self
            .faces_by_dim
            .iter()
            .map(|fs| fs.iter().filter(|f| inside(f)).collect())
            .collect();
        // boundary from faces with s+1 vertices to faces with s vertices
        let mut ranks = vec![0usize; self.rank + 2];
        for s in 0..self.rank {
            let lower = &faces[s];
            let upper = &faces[s + 1];
            if lower.is_empty() || upper.is_empty() {
                continue;
            }
            let index: HashMap<&Vec<usize>, usize> =
                lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            let mut m = Matrix::<Rational>::zeros(lower.len(), upper.len());
            for (c, f) in upper.iter().enumerate() {
                for k in 0..f.len() {
                    let mut g = (*f).clone();
                    g.remove(k);
                    let r = index[&g];
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    m.set(r, c, Rational::from(sign));
                }
            }
            ranks[s + 1] = rank(&m);
        }
        (0..=self.rank)
            .map(|s| {
                let dim = faces[s].len();
                (dim - ranks[s] - ranks[s + 1]) as u64
            })
            .collect()
    }
}

type Constraint = (Vec<Rational>, Rational);

fn normalize(c: &Constraint) -> Constraint {
    let lead = c
        .0
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -x.clone() } else { x.clone() });
    match lead {
        Some(l) => {
            let inv = l.inv();
            (
                c.0.iter().map(|x| x.clone() * inv.clone()).collect(),
                c.1.clone() * inv,
            )
        }
        None => c.clone(),
    }
}

/// Bounds of coordinate `k` over `{x : c.x >= b}` by Fourier-Motzkin.
/// `Ok(None)` means infeasible.
fn coordinate_bounds(cons: &[Constraint], k: usize) -> Result<Option<(Rational, Rational)>> {
    let n = cons.first().map_or(0, |c| c.0.len());
    let mut cur: BTreeSet<(Vec<Rational>, Rational)> = cons.iter().map(normalize).collect();
    for j in (0..n).filter(|&j| j != k) {
        let mut next = BTreeSet::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for c in &cur {
            if c.0[j].is_zero() {
                next.insert(c.clone());
            } else if c.0[j].is_positive() {
                pos.push(c);
            } else {
                neg.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let fp = p.0[j].inv();
                let fq = (-q.0[j].clone()).inv();
                let coeffs: Vec<Rational> = p
                    .0
                    .iter()
                    .zip(&q.0)
                    .map(|(a, b)| a.clone() * fp.clone() + b.clone() * fq.clone())
                    .collect();
                let rhs = p.1.clone() * fp.clone() + q.1.clone() * fq.clone();
                next.insert(normalize(&(coeffs, rhs)));
            }
        }
        cur = next;
    }
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (c, b) in &cur {
        let a = &c[k];
        if a.is_zero() {
            if b.is_positive() {
                return Ok(None);
            }
        } else if a.is_positive() {
            let v = b.clone() / a.clone();
            lo = Some(match lo {
                Some(l) if l >= v => l,
                _ => v,
            });
        } else {
            let v = b.clone() / a.clone();
            hi = Some(match hi {
                Some(h) if h <= v => h,
                _ => v,
            });
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Ok(if l > h { None } else { Some((l, h)) }),
        // the projection is exact, so a missing bound means a nonempty
        // unbounded region
        _ => Err(Error::UnboundedRegion(format!("coordinate {k} is unbounded"))),
    }
}

/// Integer points of `{x : c.x >= b}`; the region must be bounded.
fn chamber_points(cons: &[(Vec<i64>, i64)], n: usize) -> Result<u64> {
    let q: Vec<Constraint> = cons
        .iter()
        .map(|(c, b)| (c.iter().map(|&x| Rational::from(x)).collect(), Rational::from(*b)))
        .collect();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for k in 0..n {
        match coordinate_bounds(&q, k)? {
            None => return Ok(0),
            Some((l, h)) => {
                let l = l.ceil().to_i64().ok_or(Error::Overflow("chamber bound"))?;
                let h = h.floor().to_i64().ok_or(Error::Overflow("chamber bound"))?;
                if l > h {
                    return Ok(0);
                }
                lo.push(l);
                hi.push(h);
            }
        }
    }
    let mut count = 0u64;
    let mut cur = lo.clone();
    loop {
        if cons
            .iter()
            .all(|(c, b)| c.iter().zip(&cur).map(|(a, x)| a * x).sum::<i64>() >= *b)
        {
            count += 1;
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(count);
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                for j in k + 1..n {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
}

/// Cohomology dimensions `h^0(D) .. h^n(D)` for a simplicial complete fan.
pub fn cohomology_dims(fan: &Fan, d: &TorusDivisor) -> Result<CohomologyTable> {
    check_divisor(fan, d)?;
    let cx = InducedComplexes::new(fan)?;
    cohomology_with(&cx, fan, d)
}

fn cohomology_with(cx: &InducedComplexes, fan: &Fan, d: &TorusDivisor) -> Result<CohomologyTable> {
    let n = fan.rank();
    let k = fan.rays().len();
    let base = d.constraints(fan);
    let mut dims = vec![0u64; n + 1];
    for mask in 0u64..(1u64 << k) {
        let betti = &cx.betti[mask as usize];
        if betti.iter().all(|&b| b == 0) {
            continue;
        }
        // inside the mask: <m,u> <= -a-1; outside: <m,u> >= -a
        let cons: Vec<(Vec<i64>, i64)> = base
            .iter()
            .enumerate()
            .map(|(i, (u, b))| {
                if mask >> i & 1 == 1 {
                    (u.iter().map(|x| -x).collect(), -b + 1)
                } else {
                    (u.clone(), *b)
                }
            })
            .collect();
        let pts = chamber_points(&cons, n)?;
        if pts == 0 {
            continue;
        }
        for (s, &b) in betti.iter().enumerate() {
            // betti[s] is h~^{s-1}, contributing to h^s
            dims[s] += pts * b;
        }
    }
    Ok(CohomologyTable { dims })
}

/// Local linear functional `m_sigma` of a Cartier (or Q-Cartier) divisor on
/// a simplicial cone, then convexity of the support function.
pub fn is_nef(fan: &Fan, d: &TorusDivisor) -> Result<bool> {
    check_divisor(fan, d)?;
    if !fan.is_simplicial() {
        return Err(Error::Unsupported("nef test requires a simplicial fan".into()));
    }
    let n = fan.rank();
    for c in fan.max_cones() {
        let a = Matrix::from_rows(
            c.rays
                .iter()
                .map(|&i| {
                    let mut row: Vec<Rational> =
                        fan.rays()[i].0.iter().map(|x| Rational::from(x.clone())).collect();
                    row.push(Rational::from(-d.coeffs[i]));
                    row
                })
                .collect(),
            n + 1,
        );
        let mut w = a.clone();
        let piv = crate::matrix::rref(&mut w);
        if piv.len() != n || piv.contains(&n) {
            return Err(Error::internal("cohomology", "singular simplicial cone"));
        }
        let m: Vec<Rational> = (0..n).map(|r| w.get(r, n).clone()).collect();
        for (i, u) in fan.rays().iter().enumerate() {
            let val: Rational = u
                .0
                .iter()
                .zip(&m)
                .fold(Rational::zero(), |acc, (x, y)| acc + Rational::from(x.clone()) * y.clone());
            if val < Rational::from(-d.coeffs[i]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A failing cohomology group `H^i(twist + L - B^u) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub i: usize,
    pub u: Vec<u64>,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityOutcome {
    pub regular: bool,
    pub witness: Option<RegularityWitness>,
}

/// Compositions of `total` into `parts` nonnegative parts, descending
/// lexicographic.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `twist` is `L`-regular with respect to `B`: `H^i(twist + L - B^u) = 0`
/// for `1 <= i <= n` and `|u| = i`. Every `B_j` must be nef.
pub fn is_regular(
    fan: &Fan,
    twist: &TorusDivisor,
    l: &TorusDivisor,
    b: &[TorusDivisor],
) -> Result<RegularityOutcome> {
    check_divisor(fan, twist)?;
    check_divisor(fan, l)?;
    for (j, bj) in b.iter().enumerate() {
        check_divisor(fan, bj)?;
        if !is_nef(fan, bj)? {
            return Err(Error::Precondition(format!("B_{} is not nef", j + 1)));
        }
    }
    let cx = InducedComplexes::new(fan)?;
    let base = twist.add(l);
    for i in 1..=fan.rank() {
        for u in compositions(i as u64, b.len()) {
            let mut dv = base.clone();
            for (uj, bj) in u.iter().zip(b) {
                dv = dv.sub(&bj.scale(*uj as i64));
            }
            let h = cohomology_with(&cx, fan, &dv)?.h(i);
            if h != 0 {
                return Ok(RegularityOutcome {
                    regular: false,
                    witness: Some(RegularityWitness { i, u, dim: h }),
                });
            }
        }
    }
    Ok(RegularityOutcome {
        regular: true,
        witness: None,
    })
}

/// Outcome of a search for `u` with `class(target) = class(B^u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Found(Vec<u64>),
    Absent,
    /// Not found with every `u_j <= bound`, and no proof of absence.
    Inconclusive { bound: u64 },
}

impl Membership {
    pub fn found(&self) -> Option<&[u64]> {
        match self {
            Membership::Found(u) => Some(u),
            _ => None,
        }
    }
}

/// Default coordinate cap for the bounded membership search.
pub const MEMBERSHIP_CAP: u64 = 32;

/// Class map `Z^rays -> Cl(X)`: torsion residues followed by free coordinates.
struct ClassMap {
    u: Matrix<BigInt>,
    torsion: Vec<(usize, BigInt)>,
    free: Vec<usize>,
}

impl ClassMap {
    fn new(fan: &Fan) -> ClassMap {
        let k = fan.rays().len();
        let n = fan.rank();
        let r = Matrix::from_rows(fan.rays().iter().map(|u| u.0.clone()).collect(), n);
        let s = smith_normal_form(&r);
        let mut torsion = Vec::new();
        for i in 0..n.min(k) {
            let d = s.d.get(i, i).clone();
            if d > BigInt::from(1) {
                torsion.push((i, d));
            }
        }
        let rank = s.rank();
        ClassMap {
            u: s.u,
            torsion,
            free: (rank..k).collect(),
        }
    }

    fn image(&self, d: &TorusDivisor) -> (Vec<BigInt>, Vec<BigInt>) {
        let x: Vec<BigInt> = (0..self.u.rows())
            .map(|r| {
                self.u
                    .row(r)
                    .iter()
                    .zip(&d.coeffs)
                    .map(|(a, &c)| a * BigInt::from(c))
                    .sum()
            })
            .collect();
        let tors = self.torsion.iter().map(|(i, m)| x[*i].mod_floor(m)).collect();
        let free = self.free.iter().map(|&i| x[i].clone()).collect();
        (tors, free)
    }
}

/// Search for `u in N^r` with `class(target) = sum u_j class(B_j)`.
pub fn semigroup_membership(fan: &Fan, target: &TorusDivisor, b: &[TorusDivisor]) -> Result<Membership> {
    semigroup_membership_capped(fan, target, b, MEMBERSHIP_CAP)
}

pub fn semigroup_membership_capped(
    fan: &Fan,
    target: &TorusDivisor,
    b: &[TorusDivisor],
    cap: u64,
) -> Result<Membership> {
    check_divisor(fan, target)?;
    for bj in b {
        check_divisor(fan, bj)?;
    }
    let cm = ClassMap::new(fan);
    let (tt, tf) = cm.image(target);
    let imgs: Vec<(Vec<BigInt>, Vec<BigInt>)> = b.iter().map(|d| cm.image(d)).collect();
    let matches = |u: &[u64]| -> bool {
        let mut ft = vec![BigInt::zero(); tf.len()];
        let mut tt2 = vec![BigInt::zero(); tt.len()];
        for (uj, (t, f)) in u.iter().zip(&imgs) {
            let uj = BigInt::from(*uj);
            for (a, x) in ft.iter_mut().zip(f) {
                *a += &uj * x;
            }
            for (a, x) in tt2.iter_mut().zip(t) {
                *a += &uj * x;
            }
        }
        let tors_ok = tt2
            .iter()
            .zip(&cm.torsion)
            .zip(&tt)
            .all(|((a, (_, m)), t)| a.mod_floor(m) == *t);
        ft == tf && tors_ok
    };
    let f = tf.len();
    let r = b.len();
    if r == 0 {
        return Ok(if matches(&[]) { Membership::Found(vec![]) } else { Membership::Absent });
    }
    // full column rank on the free part: the solution is unique if it exists
    let g = Matrix::from_rows(
        (0..f)
            .map(|i| {
                let mut row: Vec<Rational> =
                    imgs.iter().map(|(_, fr)| Rational::from(fr[i].clone())).collect();
                row.push(Rational::from(tf[i].clone()));
                row
            })
            .collect(),
        r + 1,
    );
    let gl = Matrix::from_rows(
        (0..f).map(|i| g.row(i)[..r].to_vec()).collect(),
        r,
    );
    if f > 0 && rank(&gl) == r {
        let mut w = g.clone();
        let piv = crate::matrix::rref(&mut w);
        if piv.contains(&r) {
            return Ok(Membership::Absent);
        }
        let mut u = Vec::with_capacity(r);
        for row in 0..r {
            let x = w.get(row, r).clone();
            if !x.is_integer() || x.is_negative() {
                return Ok(Membership::Absent);
            }
            u.push(x.numer().to_u64().ok_or(Error::Overflow("membership"))?);
        }
        return Ok(if matches(&u) { Membership::Found(u) } else { Membership::Absent });
    }
    // bounded search, smallest total degree first
    for total in 0..=cap * r as u64 {
        for u in compositions(total, r) {
            if u.iter().any(|&x| x > cap) {
                continue;
            }
            if matches(&u) {
                return Ok(Membership::Found(u));
            }
        }
    }
    Ok(Membership::Inconclusive { bound: cap })
}

/// Smallest `m >= 1` such that `mA` is regular with respect to `A` itself.
pub fn self_regularity_power(p: &Polytope) -> Result<u64> {
    let fan = crate::lattice::normal_fan(p)?;
    let a = divisor_of_polytope(p, &fan)?;
    let zero = TorusDivisor::zero(fan.rays().len());
    for m in 1..=p.rank() as u64 + 1 {
        if is_regular(&fan, &zero, &a.scale(m as i64), std::slice::from_ref(&a))?.regular {
            return Ok(m);
        }
    }
    Err(Error::internal(
        "cohomology",
        format!("A^{} is not regular with respect to A", p.rank() + 1),
    ))
}

/// Regularity of `twist` with respect to `L + B^u` for each sample `u`.
/// The unshifted instance must itself be regular.
pub fn check_mumford_propagation(
    fan: &Fan,
    twist: &TorusDivisor,
    l: &TorusDivisor,
    b: &[TorusDivisor],
    samples: &[Vec<u64>],
) -> Result<bool> {
    if !is_regular(fan, twist, l, b)?.regular {
        return Err(Error::Precondition(
            "propagation requires a regular starting instance".into(),
        ));
    }
    for u in samples {
        if u.len() != b.len() {
            return Err(Error::Precondition("sample length differs from r".into()));
        }
        let mut shifted = l.clone();
        for (uj, bj) in u.iter().zip(b) {
            shifted = shifted.add(&bj.scale(*uj as i64));
        }
        if !is_regular(fan, twist, &shifted, b)?.regular {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A lattice point of `P + Q` that is not a sum of lattice points of `P`
/// and `Q`, if any.
pub fn multiplication_surjectivity_witness(p: &Polytope, q: &Polytope) -> Result<Option<LatticeVector>> {
    let sum = minkowski_sum(p, q)?;
    let lp = lattice_points(p);
    let lq = lattice_points(q);
    let sums: BTreeSet<LatticeVector> = lp
        .iter()
        .flat_map(|a| lq.iter().map(move |b| a.add(b)))
        .collect();
    Ok(lattice_points(&sum).into_iter().find(|x| !sums.contains(x)))
}

/// `(P cap M) + (Q cap M) = (P + Q) cap M`.
pub fn check_multiplication_surjectivity(p: &Polytope, q: &Polytope) -> Result<bool> {
    Ok(multiplication_surjectivity_witness(p, q)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::normal_fan;

    #[test]
    fn compositions_order() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 1), vec![vec![3]]);
    }

    #[test]
    fn projective_line() {
        let seg = Polytope::from_vertices(&[vec![0], vec![1]]).unwrap();
        let fan = normal_fan(&seg).unwrap();
        // rays (-1), (1)
        for a in -4i64..=4 {
            let d = TorusDivisor::new(vec![a, 0]);
            let t = cohomology_dims(&fan, &d).unwrap();
            assert_eq!(t.dims, vec![(a + 1).max(0) as u64, (-a - 1).max(0) as u64]);
        }
    }

    #[test]
    fn fourier_motzkin_bounds() {
        let q = |v: i64| Rational::from(v);
        // x >= 0, y >= 0, x + y <= 3
        let cons = vec![
            (vec![q(1), q(0)], q(0)),
            (vec![q(0), q(1)], q(0)),
            (vec![q(-1), q(-1)], q(-3)),
        ];
        assert_eq!(coordinate_bounds(&cons, 0).unwrap(), Some((q(0), q(3))));
        assert!(coordinate_bounds(&cons[..2], 1).is_err());
    }
}
