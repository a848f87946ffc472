//! Lattice polytopes, normal fans and lattice point enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{determinant, integer_rank, Matrix};

/// Point of the lattice `Z^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, o: &LatticeVector) -> BigInt {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn primitive(&self) -> LatticeVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn to_i64(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow("lattice coordinate")))
            .collect()
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `<normal, x> >= -offset`, with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: LatticeVector,
    pub offset: BigInt,
}

impl Halfspace {
    pub fn new(normal: LatticeVector, offset: BigInt) -> Self {
        Halfspace { normal, offset }
    }

    /// Value `<normal, x> + offset`; nonnegative on the polytope.
    pub fn slack(&self, x: &LatticeVector) -> BigInt {
        self.normal.dot(x) + &self.offset
    }

    /// Divide through by the content of the normal, tightening the offset
    /// to the lattice.
    fn normalized(&self) -> Result<Halfspace> {
        let g = self.normal.content();
        if g.is_zero() {
            return Err(Error::InvalidPolytope("zero half-space normal".into()));
        }
        Ok(Halfspace {
            normal: self.normal.primitive(),
            offset: self.offset.div_floor(&g),
        })
    }
}

/// Full-dimensional lattice polytope, or a single point produced by
/// dilating by zero.
#[derive(Clone, Debug)]
pub struct Polytope {
    rank: usize,
    vertices: Vec<LatticeVector>,
    halfspaces: Vec<Halfspace>,
}

impl PartialEq for Polytope {
    fn eq(&self, o: &Self) -> bool {
        self.rank == o.rank && self.vertices == o.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// True for the degenerate point produced by `dilate(P, 0)`.
    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.halfspaces.iter().all(|h| !h.slack(x).is_negative())
    }

    pub fn contains_strictly(&self, x: &LatticeVector) -> bool {
        self.halfspaces.iter().all(|h| h.slack(x).is_positive())
    }

    pub fn from_vertices(points: &[Vec<i64>]) -> Result<Polytope> {
        let pts: Vec<LatticeVector> = points.iter().map(|p| LatticeVector::from_i64(p)).collect();
        hull(&pts)
    }

    /// Build from an H-representation. Every vertex must be a lattice point
    /// and the half-spaces must cut out a bounded set.
    pub fn from_halfspaces(rank: usize, hs: &[Halfspace]) -> Result<Polytope> {
        if rank == 0 {
            return Err(Error::InvalidPolytope("rank must be positive".into()));
        }
        let hs: Vec<Halfspace> = hs
            .iter()
            .map(|h| {
                if h.normal.len() != rank {
                    return Err(Error::InvalidPolytope(format!(
                        "normal {} has length {}, expected {rank}",
                        h.normal,
                        h.normal.len()
                    )));
                }
                h.normalized()
            })
            .collect::<Result<_>>()?;
        let mut verts = BTreeSet::new();
        for idx in combinations(hs.len(), rank) {
            let a = Matrix::from_rows(idx.iter().map(|&i| hs[i].normal.0.clone()).collect(), rank);
            let det = determinant(&a);
            if det.is_zero() {
                continue;
            }
            // Cramer's rule for <n_i, x> = -offset_i
            let rhs: Vec<BigInt> = idx.iter().map(|&i| -&hs[i].offset).collect();
            let mut x = Vec::with_capacity(rank);
            for c in 0..rank {
                let mut ac = a.clone();
                for (r, v) in rhs.iter().enumerate() {
                    ac.set(r, c, v.clone());
                }
                x.push(BigRational::new(determinant(&ac), det.clone()));
            }
            let feasible = hs.iter().all(|h| {
                let s: BigRational = h
                    .normal
                    .0
                    .iter()
                    .zip(&x)
                    .map(|(n, xi)| xi * BigRational::from_integer(n.clone()))
                    .sum::<BigRational>()
                    + BigRational::from_integer(h.offset.clone());
                !s.is_negative()
            });
            if !feasible {
                continue;
            }
            if x.iter().any(|xi| !xi.is_integer()) {
                return Err(Error::InvalidPolytope(
                    "half-spaces define a polytope with a non-lattice vertex".into(),
                ));
            }
            verts.insert(LatticeVector(x.into_iter().map(|xi| xi.to_integer()).collect()));
        }
        if verts.is_empty() {
            return Err(Error::InvalidPolytope("half-spaces have no vertex".into()));
        }
        let verts: Vec<LatticeVector> = verts.into_iter().collect();
        let p = hull(&verts)?;
        let given: BTreeSet<&Halfspace> = hs.iter().collect();
        for f in &p.halfspaces {
            if !given.contains(f) {
                return Err(Error::InvalidPolytope(format!(
                    "half-spaces are unbounded or inconsistent (hull facet {} >= {} missing)",
                    f.normal, -&f.offset
                )));
            }
        }
        Ok(p)
    }

    /// Integer points of the bounding box, filtered by a predicate.
    fn box_points(&self, keep: impl Fn(&LatticeVector) -> bool) -> Vec<LatticeVector> {
        let n = self.rank;
        let lo: Vec<BigInt> = (0..n)
            .map(|i| self.vertices.iter().map(|v| v.0[i].clone()).min().unwrap())
            .collect();
        let hi: Vec<BigInt> = (0..n)
            .map(|i| self.vertices.iter().map(|v| v.0[i].clone()).max().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticeVector(cur.clone());
            if keep(&p) {
                out.push(p);
            }
            // odometer, last coordinate fastest keeps output lex sorted
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    for j in k + 1..n {
                        cur[j] = lo[j].clone();
                    }
                    break;
                }
            }
        }
    }

    /// Translate by a lattice vector.
    pub fn translate(&self, t: &LatticeVector) -> Polytope {
        Polytope {
            rank: self.rank,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), &h.offset - h.normal.dot(t)))
                .collect(),
        }
    }
}

/// Lattice points of `P`, in lexicographic order.
pub fn lattice_points(p: &Polytope) -> Vec<LatticeVector> {
    p.box_points(|x| p.contains(x))
}

/// Lattice points strictly inside `P`, in lexicographic order.
pub fn interior_lattice_points(p: &Polytope) -> Vec<LatticeVector> {
    if p.is_point() {
        return Vec::new();
    }
    p.box_points(|x| p.contains_strictly(x))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Normal of the hyperplane spanned by the `n - 1` given directions in
/// `Z^n` (generalized cross product). Zero iff they are dependent.
pub fn hyperplane_normal(dirs: &[LatticeVector], n: usize) -> LatticeVector {
    debug_assert_eq!(dirs.len() + 1, n);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let rows: Vec<Vec<BigInt>> = dirs
            .iter()
            .map(|d| (0..n).filter(|&c| c != j).map(|c| d.0[c].clone()).collect())
            .collect();
        let m = Matrix::from_rows(rows, n - 1);
        let det = determinant(&m);
        out.push(if j % 2 == 0 { det } else { -det });
    }
    LatticeVector(out)
}

fn affine_dimension(points: &[LatticeVector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let n = points[0].len();
    let rows: Vec<Vec<BigInt>> = points[1..].iter().map(|p| p.sub(&points[0]).0).collect();
    integer_rank(&Matrix::from_rows(rows, n))
}

/// Convex hull of a full-dimensional point set in both representations.
pub fn hull(points: &[LatticeVector]) -> Result<Polytope> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidPolytope("empty point set".into()));
    };
    let n = first.len();
    if n == 0 {
        return Err(Error::InvalidPolytope("rank must be positive".into()));
    }
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(Error::InvalidPolytope(format!(
            "point {bad} has length {}, expected {n}",
            bad.len()
        )));
    }
    let pts: Vec<LatticeVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let dim = affine_dimension(&pts);
    if dim < n {
        return Err(Error::DimensionDeficient {
            expected: n,
            found: dim,
        });
    }
    let mut facets = BTreeSet::new();
    for idx in combinations(pts.len(), n) {
        let base = &pts[idx[0]];
        let dirs: Vec<LatticeVector> = idx[1..].iter().map(|&i| pts[i].sub(base)).collect();
        let normal = hyperplane_normal(&dirs, n);
        if normal.is_zero() {
            continue;
        }
        let normal = normal.primitive();
        let mut pos = false;
        let mut neg = false;
        for q in &pts {
            let s = normal.dot(&q.sub(base));
            pos |= s.is_positive();
            neg |= s.is_negative();
            if pos && neg {
                break;
            }
        }
        if pos && neg {
            continue;
        }
        let normal = if neg { normal.neg() } else { normal };
        let offset = -normal.dot(base);
        facets.insert(Halfspace::new(normal, offset));
    }
    let halfspaces: Vec<Halfspace> = facets.into_iter().collect();
    let vertices: Vec<LatticeVector> = pts
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vec<BigInt>> = halfspaces
                .iter()
                .filter(|h| h.slack(p).is_zero())
                .map(|h| h.normal.0.clone())
                .collect();
            tight.len() >= n && integer_rank(&Matrix::from_rows(tight, n)) == n
        })
        .collect();
    Ok(Polytope {
        rank: n,
        vertices,
        halfspaces,
    })
}

/// `k * P`. For `k = 0` the result is the origin, flagged as a point.
pub fn dilate(p: &Polytope, k: u64) -> Polytope {
    let kb = BigInt::from(k);
    let mut vertices: Vec<LatticeVector> = p.vertices.iter().map(|v| v.scale(&kb)).collect();
    vertices.sort();
    vertices.dedup();
    Polytope {
        rank: p.rank,
        vertices,
        halfspaces: p
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), &h.offset * &kb))
            .collect(),
    }
}

/// Minkowski sum as the hull of pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.rank != q.rank {
        return Err(Error::InvalidPolytope(format!(
            "rank mismatch {} vs {}",
            p.rank, q.rank
        )));
    }
    if q.is_point() {
        return Ok(p.translate(&q.vertices[0]));
    }
    if p.is_point() {
        return Ok(q.translate(&p.vertices[0]));
    }
    let sums: Vec<LatticeVector> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a.add(b)))
        .collect();
    hull(&sums)
}

/// Complete fan given by primitive rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
}

/// A cone of a fan, as sorted indices into the fan's rays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    pub rays: Vec<usize>,
}

impl Fan {
    /// Validate and build a fan: primitive rays, strongly convex full
    /// cones, and the completeness certificate.
    pub fn new(rank: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for r in &rays {
            if r.len() != rank {
                return Err(Error::InvalidFan(format!("ray {r} has wrong length")));
            }
            if !r.is_primitive() {
                return Err(Error::InvalidFan(format!("ray {r} is not primitive")));
            }
        }
        let mut cones = Vec::new();
        for c in max_cones {
            let mut c = c;
            c.sort_unstable();
            c.dedup();
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidFan("cone refers to a missing ray".into()));
            }
            cones.push(Cone { rays: c });
        }
        cones.sort();
        let fan = Fan {
            rank,
            rays,
            max_cones: cones,
        };
        for c in &fan.max_cones {
            let normals: Vec<Vec<BigInt>> =
                fan.cone_facets(c)?.into_iter().map(|(w, _)| w.0).collect();
            if normals.is_empty() || integer_rank(&Matrix::from_rows(normals, rank)) < rank {
                return Err(Error::InvalidFan(format!(
                    "cone {:?} is not strongly convex",
                    c.rays
                )));
            }
        }
        fan.completeness_certificate()?;
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| c.rays.len() == self.rank)
    }

    /// Facets of a full-dimensional cone: inner normal and the rays on it.
    fn cone_facets(&self, c: &Cone) -> Result<Vec<(LatticeVector, Vec<usize>)>> {
        let n = self.rank;
        let gens: Vec<Vec<BigInt>> = c.rays.iter().map(|&i| self.rays[i].0.clone()).collect();
        if gens.len() < n || integer_rank(&Matrix::from_rows(gens, n)) < n {
            return Err(Error::InvalidFan(format!(
                "cone {:?} is not full-dimensional",
                c.rays
            )));
        }
        let mut out = BTreeMap::new();
        if n == 1 {
            // the only proper face of a ray in dimension one is the origin
            let w = self.rays[c.rays[0]].clone();
            out.insert(Vec::new(), w);
        } else {
            for sub in combinations(c.rays.len(), n - 1) {
                let dirs: Vec<LatticeVector> =
                    sub.iter().map(|&k| self.rays[c.rays[k]].clone()).collect();
                let w = hyperplane_normal(&dirs, n);
                if w.is_zero() {
                    continue;
                }
                let w = w.primitive();
                let vals: Vec<BigInt> = c.rays.iter().map(|&i| w.dot(&self.rays[i])).collect();
                let pos = vals.iter().any(|v| v.is_positive());
                let neg = vals.iter().any(|v| v.is_negative());
                if pos && neg {
                    continue;
                }
                let w = if neg { w.neg() } else { w };
                let face: Vec<usize> = c
                    .rays
                    .iter()
                    .zip(&vals)
                    .filter(|(_, v)| v.is_zero())
                    .map(|(&i, _)| i)
                    .collect();
                out.insert(face, w);
            }
        }
        Ok(out.into_iter().map(|(f, w)| (w, f)).collect())
    }

    /// Every facet of every maximal cone lies in exactly two maximal cones.
    pub fn completeness_certificate(&self) -> Result<()> {
        let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &self.max_cones {
            for (_, f) in self.cone_facets(c)? {
                *count.entry(f).or_default() += 1;
            }
        }
        if self.max_cones.is_empty() {
            return Err(Error::InvalidFan("no maximal cones".into()));
        }
        for (f, k) in count {
            if k != 2 {
                return Err(Error::InvalidFan(format!(
                    "face {f:?} lies in {k} maximal cones; the fan is not complete"
                )));
            }
        }
        Ok(())
    }

    /// All cones (faces of maximal cones), including the zero cone, as
    /// sorted ray sets. Requires a simplicial fan.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_simplicial() {
            return Err(Error::Unsupported(
                "cohomology requires a simplicial fan".into(),
            ));
        }
        let mut all = BTreeSet::new();
        for c in &self.max_cones {
            let k = c.rays.len();
            for mask in 0u32..(1 << k) {
                let f: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| c.rays[b]).collect();
                all.insert(f);
            }
        }
        Ok(all.into_iter().collect())
    }
}

/// Normal fan: rays are inner facet normals, one maximal cone per vertex.
pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    if p.is_point() {
        return Err(Error::Precondition(
            "normal fan of a point is not complete".into(),
        ));
    }
    let rays: Vec<LatticeVector> = p.halfspaces.iter().map(|h| h.normal.clone()).collect();
    let cones: Vec<Vec<usize>> = p
        .vertices
        .iter()
        .map(|v| {
            p.halfspaces
                .iter()
                .enumerate()
                .filter(|(_, h)| h.slack(v).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Fan::new(p.rank, rays, cones)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(v)
    }

    #[test]
    fn hull_of_square_and_triangle() {
        let sq = Polytope::from_vertices(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.halfspaces().len(), 4);
        let tri = Polytope::from_vertices(&[vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
        assert_eq!(tri.vertices(), &[lv(&[0, 0]), lv(&[0, 2]), lv(&[2, 0])]);
        let err = Polytope::from_vertices(&[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::DimensionDeficient { expected: 2, found: 1 });
    }

    #[test]
    fn halfspace_input_rejects_unbounded() {
        // x >= 0, y >= 0, y <= 2, x + y >= 1 has three vertices but is open in +x
        let open = vec![
            Halfspace::new(lv(&[1, 0]), BigInt::zero()),
            Halfspace::new(lv(&[0, 1]), BigInt::zero()),
            Halfspace::new(lv(&[0, -1]), BigInt::from(2)),
            Halfspace::new(lv(&[1, 1]), BigInt::from(-1)),
        ];
        assert!(matches!(
            Polytope::from_halfspaces(2, &open),
            Err(Error::InvalidPolytope(_))
        ));
        let sq = Polytope::from_halfspaces(
            2,
            &[
                Halfspace::new(lv(&[1, 0]), BigInt::zero()),
                Halfspace::new(lv(&[0, 1]), BigInt::zero()),
                Halfspace::new(lv(&[-2, 0]), BigInt::from(2)),
                Halfspace::new(lv(&[0, -1]), BigInt::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(lattice_points(&sq).len(), 4);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
