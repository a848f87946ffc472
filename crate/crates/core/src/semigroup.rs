//! Height-one point configurations and normal generation.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dilate, lattice_points, LatticeVector, Polytope};
use crate::matrix::{determinant, rref, Matrix};
use crate::scalar::Rational;

/// Points of `Z^{n+1}`; column `i` of the configuration matrix is
/// `points[i]`, which the ring `k[S]` names `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<LatticeVector>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<LatticeVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPolytope("empty configuration".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionDeficient {
                expected: dim,
                found: p.len(),
            });
        }
        Ok(PointConfiguration { dim, points })
    }

    pub fn from_i64(points: &[Vec<i64>]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        PointConfiguration::new(dim, points.iter().map(|p| LatticeVector::from_i64(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn points_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.points.iter().map(|p| p.to_i64()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.points.len()).map(|i| format!("x{i}")).collect()
    }

    /// Every point has last coordinate one.
    pub fn is_height_one(&self) -> bool {
        self.points.iter().all(|p| p.0.last().is_some_and(|x| x.is_one()))
    }

    /// `rows cols` followed by the matrix with points as columns.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.dim, self.points.len());
        for r in 0..self.dim {
            let row: Vec<String> = self.points.iter().map(|p| p.0[r].to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty configuration".into()))?;
        let hv: Vec<usize> = header
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad header '{header}'"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = hv[..] else {
            return Err(Error::Parse(format!("bad header '{header}'")));
        };
        let mut m = Vec::new();
        for _ in 0..rows {
            let l = lines.next().ok_or_else(|| Error::Parse("missing row".into()))?;
            let row: Vec<BigInt> = l
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad entry '{x}'"))))
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse(format!("row has {} entries, expected {cols}", row.len())));
            }
            m.push(row);
        }
        let points = (0..cols).map(|c| LatticeVector(m.iter().map(|r| r[c].clone()).collect())).collect();
        PointConfiguration::new(rows, points)
    }
}

impl fmt::Display for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", pts.join(", "))
    }
}

/// Lattice points of `P` lifted to height one, in lexicographic order.
pub fn generators(p: &Polytope) -> PointConfiguration {
    let points = lattice_points(p)
        .into_iter()
        .map(|mut v| {
            v.0.push(BigInt::one());
            v
        })
        .collect();
    PointConfiguration::new(p.rank() + 1, points).expect("a polytope has a lattice point")
}

/// Configuration of `d P`.
pub fn veronese(p: &Polytope, d: u64) -> PointConfiguration {
    generators(&dilate(p, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum NormalGeneration {
    /// Checked through a degree at which generation is known to stabilize.
    True { checked_to: u64 },
    /// Every degree up to `bound` is generated; stabilization not reached.
    VerifiedToBound { bound: u64 },
    /// A lattice point of `m P` that is not a sum of `m` points of `P`.
    False { m: u64, witness: Vec<i64> },
}

impl NormalGeneration {
    pub fn holds(&self) -> bool {
        matches!(self, NormalGeneration::True { .. })
    }
}

/// Degree past which `(P ∩ M) + ((m-1)P ∩ M) = mP ∩ M` holds automatically.
pub fn stabilization_degree(p: &Polytope) -> u64 {
    2 * p.rank() as u64
}

/// Check `(P ∩ M) + ((m-1)P ∩ M) = mP ∩ M` for `2 <= m <= bound`.
pub fn is_normally_generated(p: &Polytope, bound: u64) -> Result<NormalGeneration> {
    let base: Vec<Vec<i64>> = lattice_points(p).iter().map(|v| v.to_i64()).collect::<Result<_>>()?;
    let mut prev: HashSet<Vec<i64>> = base.iter().cloned().collect();
    for m in 2..=bound {
        let target = lattice_points(&dilate(p, m));
        let mut sums: HashSet<Vec<i64>> = HashSet::with_capacity(target.len());
        for a in &base {
            for b in &prev {
                sums.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        for t in &target {
            let t = t.to_i64()?;
            if !sums.contains(&t) {
                return Ok(NormalGeneration::False { m, witness: t });
            }
        }
        prev = target.iter().map(|v| v.to_i64()).collect::<Result<_>>()?;
    }
    if bound >= stabilization_degree(p) {
        Ok(NormalGeneration::True { checked_to: bound })
    } else {
        Ok(NormalGeneration::VerifiedToBound { bound })
    }
}

/// Graded pieces `S_0, ..., S_jmax` of the semigroup generated by the points,
/// each sorted lexicographically.
pub fn graded_elements(points: &[Vec<i64>], jmax: usize) -> Vec<Vec<Vec<i64>>> {
    let d = points.first().map_or(0, |p| p.len());
    let mut out: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; d]]];
    for _ in 1..=jmax {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for s in out.last().unwrap() {
            for p in points {
                next.insert(s.iter().zip(p).map(|(a, b)| a + b).collect());
            }
        }
        out.push(next.into_iter().collect());
    }
    out
}

/// Affine lattice automorphism `x -> A x + t` of a polytope, recorded by its
/// action on `Z^{n+1}` (height coordinate last) and on a point list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    /// `(n+1) x (n+1)` matrix acting on height-one vectors.
    pub linear: Vec<Vec<i64>>,
    /// `perm[i] = j` when point `i` maps to point `j`.
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.linear.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Lattice automorphisms of `P` acting on the height-one configuration
/// `points` (lattice points of `P` with a trailing one).
pub fn automorphisms(p: &Polytope, points: &[Vec<i64>]) -> Result<Vec<Automorphism>> {
    let n = p.rank();
    let verts: Vec<Vec<i64>> = p.vertices().iter().map(|v| v.to_i64()).collect::<Result<_>>()?;
    if verts.len() <= 1 {
        let id = (0..=n).map(|i| (0..=n).map(|j| i64::from(i == j)).collect()).collect();
        return Ok(vec![Automorphism {
            linear: id,
            perm: (0..points.len()).collect(),
        }]);
    }
    let basis = affine_basis(&verts, n).ok_or_else(|| Error::DimensionDeficient {
        expected: n,
        found: 0,
    })?;
    let vset: HashSet<Vec<i64>> = verts.iter().cloned().collect();
    let index: HashMap<Vec<i64>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let lift = |v: &[i64]| {
        let mut x = v.to_vec();
        x.push(1);
        x
    };
    // V has columns lift(v_b) for the basis; solve A V = W for each image tuple
    let vmat: Vec<Vec<i64>> = basis.iter().map(|&b| lift(&verts[b])).collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut tuple = Vec::with_capacity(n + 1);
    fn rec(
        k: usize,
        n: usize,
        tuple: &mut Vec<usize>,
        verts: &[Vec<i64>],
        f: &mut dyn FnMut(&[usize]),
    ) {
        if k == n + 1 {
            f(tuple);
            return;
        }
        for i in 0..verts.len() {
            if !tuple.contains(&i) {
                tuple.push(i);
                rec(k + 1, n, tuple, verts, f);
                tuple.pop();
            }
        }
    }
    let mut visit = |t: &[usize]| {
        let wmat: Vec<Vec<i64>> = t.iter().map(|&b| lift(&verts[b])).collect();
        let Some(a) = solve_integral(&vmat, &wmat) else {
            return;
        };
        let apply = |v: &[i64]| -> Vec<i64> { a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect() };
        // unimodular and maps vertices to vertices
        if !verts.iter().all(|v| {
            let mut w = apply(&lift(v));
            w.pop();
            vset.contains(&w)
        }) {
            return;
        }
        let perm: Option<Vec<usize>> = points.iter().map(|p| index.get(&apply(p)).copied()).collect();
        if let Some(perm) = perm {
            if seen.insert(perm.clone()) {
                out.push(Automorphism { linear: a, perm });
            }
        }
    };
    rec(0, n, &mut tuple, &verts, &mut visit);
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    Ok(out)
}

fn affine_basis(verts: &[Vec<i64>], n: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![0usize];
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 1..verts.len() {
        let d: Vec<Rational> = verts[i].iter().zip(&verts[0]).map(|(a, b)| Rational::from(a - b)).collect();
        let mut trial = rows.clone();
        trial.push(d.clone());
        let mut m = Matrix::from_rows(trial, n);
        if rref(&mut m).len() == rows.len() + 1 {
            rows.push(d);
            chosen.push(i);
            if rows.len() == n {
                return Some(chosen);
            }
        }
    }
    None
}

/// Integral `A` with `A v_k = w_k` for the given column lists, if `A` is
/// integral with determinant `±1`.
fn solve_integral(v: &[Vec<i64>], w: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let d = v.len();
    // A V = W  <=>  V^T A^T = W^T; augment [V^T | W^T]
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|k| {
            v[k].iter()
                .chain(w[k].iter())
                .map(|&x| Rational::from(x))
                .collect()
        })
        .collect();
    let mut m = Matrix::from_rows(rows, 2 * d);
    let piv = rref(&mut m);
    if piv.len() != d || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    let mut a = vec![vec![0i64; d]; d];
    for r in 0..d {
        for c in 0..d {
            let x = m.get(r, d + c);
            if !x.is_integer() {
                return None;
            }
            a[c][r] = x.numer().try_into().ok()?;
        }
    }
    let det = determinant(&Matrix::from_rows(
        a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        d,
    ));
    if det != BigInt::one() && det != -BigInt::one() {
        return None;
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polytope {
        Polytope::from_vertices(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn square_generators() {
        let c = generators(&square());
        assert_eq!(c.to_text(), "3 4\n0 0 1 1\n0 1 0 1\n1 1 1 1\n");
        assert_eq!(PointConfiguration::from_text(&c.to_text()).unwrap(), c);
        assert!(c.is_height_one());
    }

    #[test]
    fn square_is_normal() {
        assert_eq!(
            is_normally_generated(&square(), 4).unwrap(),
            NormalGeneration::True { checked_to: 4 }
        );
        assert_eq!(
            is_normally_generated(&square(), 3).unwrap(),
            NormalGeneration::VerifiedToBound { bound: 3 }
        );
    }

    #[test]
    fn semigroup_degrees() {
        let pts = generators(&square()).points_i64().unwrap();
        let g = graded_elements(&pts, 3);
        assert_eq!(g.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![1, 4, 9, 16]);
    }

    #[test]
    fn square_has_eight_automorphisms() {
        let pts = generators(&square()).points_i64().unwrap();
        let a = automorphisms(&square(), &pts).unwrap();
        assert_eq!(a.len(), 8);
        for g in &a {
            for (i, p) in pts.iter().enumerate() {
                assert_eq!(g.apply(p), pts[g.perm[i]]);
            }
        }
    }

    #[test]
    fn point_configuration_is_a_single_variable() {
        let p = dilate(&square(), 0);
        let c = generators(&p);
        assert_eq!(c.points_i64().unwrap(), vec![vec![0, 0, 1]]);
    }
}
