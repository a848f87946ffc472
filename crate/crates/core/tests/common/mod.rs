//! Test-side oracles. Nothing here calls the library beyond reading input,
//! so agreement with the engines is an independent check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::PathBuf;

use toric_koszul::io::read_polytope;
use toric_koszul::lattice::Polytope;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// `(file stem, polytope)` in file name order.
pub fn corpus() -> Vec<(String, Polytope)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|f| {
            let stem = f.file_stem().unwrap().to_string_lossy().into_owned();
            (stem, read_polytope(&f).unwrap().polytope)
        })
        .collect()
}

pub fn vertices(p: &Polytope) -> Vec<Vec<i64>> {
    p.vertices().iter().map(|v| v.to_i64().unwrap()).collect()
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| *x).collect())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Inequalities `<w, x> >= c` of the hull of full-dimensional `verts`, by
/// trying every hyperplane through `n` of them.
pub fn facets(verts: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let n = verts[0].len();
    let mut out = BTreeSet::new();
    for s in subsets(verts.len(), n) {
        let base = &verts[s[0]];
        let rows: Vec<Vec<i64>> = s[1..]
            .iter()
            .map(|&k| verts[k].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        // generalized cross product of the n-1 difference vectors
        let w: Vec<i64> = (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| *x).collect())
                    .collect();
                if c % 2 == 0 {
                    det(&minor)
                } else {
                    -det(&minor)
                }
            })
            .collect();
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let dot = |v: &[i64]| v.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>();
        let c = dot(base);
        let vals: Vec<i64> = verts.iter().map(|v| dot(v)).collect();
        if vals.iter().all(|&x| x >= c) {
            out.insert((w, c));
        } else if vals.iter().all(|&x| x <= c) {
            out.insert((w.iter().map(|x| -x).collect(), -c));
        }
    }
    out.into_iter().collect()
}

/// Lattice points of `k * hull(verts)`, optionally only interior ones.
pub fn brute_points(verts: &[Vec<i64>], k: i64, interior: bool) -> Vec<Vec<i64>> {
    let scaled: Vec<Vec<i64>> = verts.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
    let n = verts[0].len();
    let lo: Vec<i64> = (0..n).map(|c| scaled.iter().map(|v| v[c]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|c| scaled.iter().map(|v| v[c]).max().unwrap()).collect();
    if k == 0 {
        return if interior { vec![] } else { vec![vec![0; n]] };
    }
    let fs = facets(&scaled);
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let ok = fs.iter().all(|(w, c)| {
            let v: i64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
            if interior {
                v > *c
            } else {
                v >= *c
            }
        });
        if ok {
            out.push(x.clone());
        }
        let mut c = 0;
        loop {
            if c == n {
                out.sort();
                return out;
            }
            x[c] += 1;
            if x[c] <= hi[c] {
                break;
            }
            x[c] = lo[c];
            c += 1;
        }
    }
}

/// Height-one lattice points of `k P`, last coordinate 1, sorted.
pub fn height_one(verts: &[Vec<i64>], k: i64) -> Vec<Vec<i64>> {
    brute_points(verts, k, false)
        .into_iter()
        .map(|mut p| {
            p.push(1);
            p
        })
        .collect()
}

/// `S_0, ..., S_jmax` of the semigroup generated by `points`.
pub fn semigroup_levels(points: &[Vec<i64>], jmax: usize) -> Vec<HashSet<Vec<i64>>> {
    let d = points[0].len();
    let mut levels = vec![HashSet::from([vec![0; d]])];
    for _ in 0..jmax {
        let mut next = HashSet::new();
        for s in levels.last().unwrap() {
            for p in points {
                next.insert(s.iter().zip(p).map(|(a, b)| a + b).collect::<Vec<i64>>());
            }
        }
        levels.push(next);
    }
    levels
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// `β^S_{1,j}` of `k[S]` from the reduced homology of the complexes
/// `Δ_a = { σ : a - deg σ ∈ S }`: `β_{1,a}` is the number of connected
/// components of `Δ_a` minus one.
pub fn beta1_by_components(points: &[Vec<i64>], jmax: usize) -> BTreeMap<usize, u64> {
    let lv = semigroup_levels(points, jmax);
    let sub = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>();
    let mut out = BTreeMap::new();
    for j in 2..=jmax {
        for a in &lv[j] {
            let verts: Vec<usize> = (0..points.len()).filter(|&k| lv[j - 1].contains(&sub(a, &points[k]))).collect();
            let mut parent: Vec<usize> = (0..verts.len()).collect();
            for x in 0..verts.len() {
                for y in x + 1..verts.len() {
                    let rest = sub(&sub(a, &points[verts[x]]), &points[verts[y]]);
                    if lv[j - 2].contains(&rest) {
                        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                        parent[rx] = ry;
                    }
                }
            }
            let comps = (0..verts.len()).filter(|&x| find(&mut parent, x) == x).count();
            if comps > 1 {
                *out.entry(j).or_insert(0) += comps as u64 - 1;
            }
        }
    }
    out
}

/// `h^i(P^1, O(a))`.
pub fn p1_cohomology(a: i64) -> [u64; 2] {
    [(a + 1).max(0) as u64, (-a - 1).max(0) as u64]
}

/// `h^i(P^1 x P^1, O(a, b))` by Künneth.
pub fn kunneth(a: i64, b: i64) -> [u64; 3] {
    let (x, y) = (p1_cohomology(a), p1_cohomology(b));
    [x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1]]
}

/// `(A ∩ M) + (B ∩ M) = (A + B) ∩ M` for `A = ka P`, `B = kb P`.
pub fn minkowski_surjective(verts: &[Vec<i64>], ka: i64, kb: i64) -> bool {
    let a = brute_points(verts, ka, false);
    let b = brute_points(verts, kb, false);
    let sums: HashSet<Vec<i64>> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect()))
        .collect();
    brute_points(verts, ka + kb, false).iter().all(|x| sums.contains(x))
}

/// `h*` from the counts `|tP ∩ M|`, `t = 0..=n`.
pub fn h_star_by_counting(verts: &[Vec<i64>]) -> Vec<i128> {
    let n = verts[0].len();
    let mut h: Vec<i128> = (0..=n as i64).map(|t| brute_points(verts, t, false).len() as i128).collect();
    for _ in 0..=n {
        for k in (1..h.len()).rev() {
            h[k] -= h[k - 1];
        }
    }
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    h
}

/// `1 / f(-t)` truncated to `len` terms, for `f` with `f(0) = 1`.
pub fn inverse_at_minus_t(f: &[i128], len: usize) -> Vec<i128> {
    let g: Vec<i128> = f.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).collect();
    let mut inv = vec![0i128; len];
    inv[0] = 1;
    for k in 1..len {
        let s: i128 = (1..=k.min(g.len() - 1)).map(|i| g[i] * inv[k - i]).sum();
        inv[k] = -s;
    }
    inv
}

/// Power series of `num(t) / (1 - t)^n`, `len` terms.
pub fn series(num: &[i128], n: usize, len: usize) -> Vec<i128> {
    let mut s = vec![0i128; len];
    for (k, c) in num.iter().enumerate().filter(|(k, _)| *k < len) {
        s[k] = *c;
    }
    for _ in 0..n {
        for k in 1..len {
            s[k] += s[k - 1];
        }
    }
    s
}
