//! Ehrhart polynomials and the invariant `r`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dilate, interior_lattice_points, lattice_points, Polytope};
use crate::scalar::{Field, Rational};

/// Polynomial with rational coefficients, `coeffs[k]` multiplying `t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coeffs: Vec<Rational>,
}

impl EhrhartPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EhrhartPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().expect("nonempty coefficient list")
    }

    pub fn eval(&self, t: i64) -> Rational {
        let t = Rational::from(t);
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// The polynomial `t -> E(k t)`.
    pub fn scale_argument(&self, k: i64) -> EhrhartPolynomial {
        let mut pow = Rational::one();
        let kq = Rational::from(k);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c.clone() * pow.clone();
                pow = pow.clone() * kq.clone();
                v
            })
            .collect();
        EhrhartPolynomial::from_coeffs(coeffs)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Interpolate through `(k, values[k])` for `k = 0..values.len()` using the
/// binomial basis `C(t, k)`, then expand in powers of `t`.
pub fn interpolate_binomial(values: &[Rational]) -> EhrhartPolynomial {
    let n = values.len();
    // forward differences give the binomial coordinates
    let mut diffs = values.to_vec();
    let mut binom = Vec::with_capacity(n);
    for _ in 0..n {
        binom.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    let mut coeffs = vec![Rational::zero(); n.max(1)];
    // falling factorial t(t-1)...(t-k+1)/k! in the power basis
    let mut falling = vec![Rational::one()];
    for (k, b) in binom.iter().enumerate() {
        if k > 0 {
            let mut next = vec![Rational::zero(); falling.len() + 1];
            let shift = Rational::from(-(k as i64 - 1));
            let kinv = Rational::from(k as i64).inv();
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone() * kinv.clone();
                next[i] = next[i].clone() + c.clone() * shift.clone() * kinv.clone();
            }
            falling = next;
        }
        for (i, c) in falling.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() + b.clone() * c.clone();
        }
    }
    EhrhartPolynomial::from_coeffs(coeffs)
}

/// `L_P`, interpolated from the counts at `k = 0..n` and verified at `n + 1`.
pub fn ehrhart_polynomial(p: &Polytope) -> Result<EhrhartPolynomial> {
    if p.is_point() {
        return Err(Error::Precondition(
            "Ehrhart polynomial requires a full-dimensional polytope".into(),
        ));
    }
    let n = p.rank();
    let counts: Vec<Rational> = (0..=n as u64)
        .map(|k| Rational::from(lattice_points(&dilate(p, k)).len() as i64))
        .collect();
    let e = interpolate_binomial(&counts);
    let check = lattice_points(&dilate(p, n as u64 + 1)).len() as i64;
    if e.eval(n as i64 + 1) != Rational::from(check) {
        return Err(Error::internal(
            "ehrhart",
            format!(
                "interpolation predicts {} points in {}P, enumeration found {check}",
                e.eval(n as i64 + 1),
                n + 1
            ),
        ));
    }
    if e.degree() != n || !e.leading().is_positive() {
        return Err(Error::internal(
            "ehrhart",
            format!("polynomial {e} does not have degree {n} with positive leading term"),
        ));
    }
    Ok(e)
}

/// `h*` numerator of the Ehrhart series: `sum_t L(t) s^t = h*(s) / (1-s)^{n+1}`.
pub fn h_star(e: &EhrhartPolynomial) -> Result<Vec<i128>> {
    let n = e.degree();
    let vals: Vec<i128> = (0..=n as i64)
        .map(|t| {
            let v = e.eval(t);
            if !v.is_integer() {
                return Err(Error::internal("ehrhart", format!("L({t}) = {v} is not an integer")));
            }
            v.numer().to_string().parse::<i128>().map_err(|_| Error::Overflow("h_star"))
        })
        .collect::<Result<_>>()?;
    // multiply by (1-s)^{n+1} and keep degrees 0..=n
    let mut h = vals;
    for _ in 0..=n {
        for k in (1..h.len()).rev() {
            h[k] -= h[k - 1];
        }
    }
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    Ok(h)
}

/// Number of distinct negative integer roots, found by walking down from
/// `-1`. Roots of Ehrhart polynomials are consecutive; a later root is
/// reported as an internal error.
pub fn integer_root_count(e: &EhrhartPolynomial) -> Result<usize> {
    let n = e.degree() as i64;
    let mut r = 0i64;
    while r < n && e.eval(-(r + 1)).is_zero() {
        r += 1;
    }
    for t in r + 2..=n + 1 {
        if e.eval(-t).is_zero() {
            return Err(Error::internal(
                "ehrhart",
                format!("integer roots are not consecutive: -{t} is a root but -{} is not", r + 1),
            ));
        }
    }
    Ok(r as usize)
}

/// Largest `r` such that `sP` has no interior lattice point for `1 <= s <= r`.
pub fn interior_gap(p: &Polytope) -> Result<usize> {
    let n = p.rank();
    for s in 1..=n + 1 {
        if !interior_lattice_points(&dilate(p, s as u64)).is_empty() {
            return Ok(s - 1);
        }
    }
    Err(Error::internal(
        "ehrhart",
        format!("{}P has no interior lattice point", n + 1),
    ))
}

/// Check `L_P(-t) = (-1)^n |int(tP)|` for `1 <= t <= tmax`.
pub fn reciprocity_check(p: &Polytope, tmax: u64) -> Result<bool> {
    let e = ehrhart_polynomial(p)?;
    let sign = if p.rank() % 2 == 0 { 1 } else { -1 };
    for t in 1..=tmax {
        let interior = interior_lattice_points(&dilate(p, t)).len() as i64;
        if e.eval(-(t as i64)) != Rational::from(sign * interior) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn h_star_of_reeve_and_cube() {
        let reeve = Polytope::from_vertices(&[vec![0, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(h_star(&ehrhart_polynomial(&reeve).unwrap()).unwrap(), vec![1, 0, 1]);
        // (t+1)^3 has h* = 1 + 4s + s^2
        let cube = EhrhartPolynomial::from_coeffs(vec![q(1), q(3), q(3), q(1)]);
        assert_eq!(h_star(&cube).unwrap(), vec![1, 4, 1]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        // (t+1)(t+2)/2 at 0..2
        let e = interpolate_binomial(&[q(1), q(3), q(6)]);
        assert_eq!(e.to_strings(), vec!["1", "3/2", "1/2"]);
        assert_eq!(e.eval(10), q(66));
    }

    #[test]
    fn root_counts() {
        let sq = interpolate_binomial(&[q(1), q(4), q(9)]);
        assert_eq!(integer_root_count(&sq).unwrap(), 1);
        let seg = interpolate_binomial(&[q(1), q(3)]);
        assert_eq!(integer_root_count(&seg).unwrap(), 0);
    }

    #[test]
    fn scaled_argument() {
        let e = interpolate_binomial(&[q(1), q(4), q(9)]);
        assert_eq!(e.scale_argument(2).to_strings(), vec!["1", "4", "4"]);
    }
}
