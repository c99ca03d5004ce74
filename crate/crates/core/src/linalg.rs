//! Exact signature certification for symmetric rational matrices.
//!
//! The default route is a symmetric LDLᵀ factorisation with 1×1 and 2×2
//! pivots (a rational Bunch–Kaufman variant): every step is a congruence, so
//! Sylvester's law of inertia turns the pivot signs into eigen-sign counts.
//! The characteristic polynomial route counts signs via Descartes' rule,
//! which is exact because all roots of a symmetric matrix are real.

use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<Q>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactLdl,
    ExactCharpoly,
    FloatEigen,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactLdl => "exact_ldl",
            Method::ExactCharpoly => "exact_charpoly",
            Method::FloatEigen => "float_eigen",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pivot {
    One { index: usize, value: Q },
    Two { i: usize, j: usize, offdiag: Q },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Pivots(Vec<Pivot>),
    /// Coefficients of `det(xI - A)`, constant term first.
    Charpoly(Vec<Q>),
    Float(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureReport {
    pub n_positive: usize,
    pub n_zero: usize,
    pub n_negative: usize,
    pub psd: bool,
    pub method: Method,
    pub certificate: Certificate,
    /// A rational vector `v` with `vᵀAv < 0`, produced by the LDL route when
    /// the matrix is indefinite.
    pub witness: Option<Vec<Q>>,
}

impl SignatureReport {
    pub fn dim(&self) -> usize {
        self.n_positive + self.n_zero + self.n_negative
    }
}

pub fn is_symmetric(a: &Mat) -> bool {
    let n = a.len();
    a.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

pub fn quad_form(a: &Mat, v: &[Q]) -> Q {
    let mut s = Q::zero();
    for (i, row) in a.iter().enumerate() {
        if v[i].is_zero() {
            continue;
        }
        let mut t = Q::zero();
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() && !v[j].is_zero() {
                t += x * &v[j];
            }
        }
        s += &v[i] * t;
    }
    s
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut c = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for (k, x) in a[i].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    c[i][j] += x * &b[k][j];
                }
            }
        }
    }
    c
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn trace(a: &Mat) -> Q {
    (0..a.len()).fold(Q::zero(), |s, i| s + &a[i][i])
}

/// Exact rank by Gaussian elimination.
pub fn rank(a: &Mat) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for i in (r + 1)..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for k in c..cols {
                if !m[r][k].is_zero() {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Exact determinant.
pub fn det(a: &Mat) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for k in c..n {
                if !m[c][k].is_zero() {
                    let t = &f * &m[c][k];
                    m[i][k] -= t;
                }
            }
        }
    }
    d
}

/// Solves `A X = B` for invertible square `A`.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(r, s)| r.iter().chain(s.iter()).cloned().collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(p, c);
        let inv = aug[c][c].recip();
        for k in c..(n + m) {
            let t = &aug[c][k] * &inv;
            aug[c][k] = t;
        }
        for i in 0..n {
            if i == c || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            for k in c..(n + m) {
                if !aug[c][k].is_zero() {
                    let t = &f * &aug[c][k];
                    aug[i][k] -= t;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn psd_certify(a: &Mat, method: Method) -> Result<SignatureReport> {
    if !is_symmetric(a) {
        return Err(Error::NonSymmetric);
    }
    Ok(match method {
        Method::ExactLdl => ldl_signature(a),
        Method::ExactCharpoly => charpoly_signature(a),
        Method::FloatEigen => float_signature(a),
    })
}

fn report(p: usize, z: usize, n: usize, method: Method, certificate: Certificate) -> SignatureReport {
    SignatureReport {
        n_positive: p,
        n_zero: z,
        n_negative: n,
        psd: n == 0,
        method,
        certificate,
        witness: None,
    }
}

/// Symmetric LDLᵀ with 1×1 pivots on nonzero diagonal entries and 2×2 pivots
/// on a nonzero off-diagonal entry when the remaining diagonal vanishes.
/// Tracks the congruence `T` with `Tᵀ A T` block diagonal so that an
/// indefinite matrix comes with a negative witness.
pub fn ldl_signature(a: &Mat) -> SignatureReport {
    let n = a.len();
    let mut s = a.clone();
    let mut t = identity(n);
    let mut alive: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let (mut pos, mut neg) = (0usize, 0usize);
    let mut witness: Option<Vec<Q>> = None;

    loop {
        if alive.is_empty() {
            break;
        }
        if let Some(&k) = alive.iter().find(|&&k| !s[k][k].is_zero()) {
            let d = s[k][k].clone();
            alive.retain(|&x| x != k);
            let inv = d.recip();
            for &j in &alive {
                if s[k][j].is_zero() {
                    continue;
                }
                let f = &s[k][j] * &inv;
                for &m in &alive {
                    if !s[k][m].is_zero() {
                        let u = &f * &s[k][m];
                        s[j][m] -= u;
                    }
                }
                for r in 0..n {
                    if !t[r][k].is_zero() {
                        let u = &f * &t[r][k];
                        t[r][j] -= u;
                    }
                }
            }
            for &j in &alive {
                s[k][j] = Q::zero();
                s[j][k] = Q::zero();
            }
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
                if witness.is_none() {
                    witness = Some((0..n).map(|r| t[r][k].clone()).collect());
                }
            }
            pivots.push(Pivot::One { index: k, value: d });
            continue;
        }
        let pair = alive.iter().enumerate().find_map(|(ai, &i)| {
            alive[ai + 1..]
                .iter()
                .find(|&&j| !s[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else { break };
        let b = s[i][j].clone();
        let binv = b.recip();
        alive.retain(|&x| x != i && x != j);
        let others = alive.clone();
        let si: Vec<Q> = others.iter().map(|&m| s[i][m].clone()).collect();
        let sj: Vec<Q> = others.iter().map(|&m| s[j][m].clone()).collect();
        for (a1, &m1) in others.iter().enumerate() {
            for (a2, &m2) in others.iter().enumerate() {
                let u = &si[a1] * &sj[a2] + &sj[a1] * &si[a2];
                if !u.is_zero() {
                    s[m1][m2] -= u * &binv;
                }
            }
            let ci = &sj[a1] * &binv;
            let cj = &si[a1] * &binv;
            for r in 0..n {
                let u = &ci * &t[r][i] + &cj * &t[r][j];
                if !u.is_zero() {
                    t[r][m1] -= u;
                }
            }
        }
        for &m in &others {
            s[i][m] = Q::zero();
            s[m][i] = Q::zero();
            s[j][m] = Q::zero();
            s[m][j] = Q::zero();
        }
        pos += 1;
        neg += 1;
        if witness.is_none() {
            let sg = if b.is_positive() { -Q::one() } else { Q::one() };
            witness = Some((0..n).map(|r| &t[r][i] + &sg * &t[r][j]).collect());
        }
        pivots.push(Pivot::Two { i, j, offdiag: b });
    }
    let zero = n - pos - neg;
    let mut rep = report(pos, zero, neg, Method::ExactLdl, Certificate::Pivots(pivots));
    rep.witness = witness;
    rep
}

/// Coefficients of `det(xI − A)`, constant term first (Faddeev–LeVerrier).
pub fn charpoly(a: &Mat) -> Vec<Q> {
    let n = a.len();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut m: Mat = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        let mut am = mat_mul(a, &m);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = am;
        let tr = trace(&mat_mul(a, &m));
        c[n - k] = -tr / Q::from_integer((k as i64).into());
    }
    c
}

fn sign_changes(coeffs: &[Q]) -> usize {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

pub fn charpoly_signature(a: &Mat) -> SignatureReport {
    let n = a.len();
    let c = charpoly(a);
    let zero = c.iter().position(|x| !x.is_zero()).unwrap_or(n);
    let pos = sign_changes(&c);
    let mirrored: Vec<Q> = c
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() })
        .collect();
    let neg = sign_changes(&mirrored);
    report(pos, zero, neg, Method::ExactCharpoly, Certificate::Charpoly(c))
}

pub const FLOAT_TOL: f64 = 1e-9;

pub fn float_signature(a: &Mat) -> SignatureReport {
    let f: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(to_f64).collect()).collect();
    float_signature_f64(&f)
}

pub fn float_signature_f64(a: &[Vec<f64>]) -> SignatureReport {
    let n = a.len();
    if n == 0 {
        return report(0, 0, 0, Method::FloatEigen, Certificate::Float(vec![]));
    }
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let scale = m.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    let eig = nalgebra::SymmetricEigen::new(m);
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let tol = FLOAT_TOL * scale;
    let pos = ev.iter().filter(|&&x| x > tol).count();
    let neg = ev.iter().filter(|&&x| x < -tol).count();
    report(pos, n - pos - neg, neg, Method::FloatEigen, Certificate::Float(ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn identity_and_diag() {
        let r = psd_certify(&identity(3), Method::ExactLdl).unwrap();
        assert_eq!((r.n_positive, r.n_zero, r.n_negative, r.psd), (3, 0, 0, true));
        let d = m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -1]]);
        for method in [Method::ExactLdl, Method::ExactCharpoly, Method::FloatEigen] {
            let r = psd_certify(&d, method).unwrap();
            assert_eq!((r.n_positive, r.n_zero, r.n_negative, r.psd), (1, 1, 1, false));
        }
    }

    #[test]
    fn two_by_two_pivot_and_witness() {
        let a = m(&[&[0, 2, 0], &[2, 0, 1], &[0, 1, 0]]);
        let r = ldl_signature(&a);
        assert_eq!((r.n_positive, r.n_zero, r.n_negative), (1, 1, 1));
        let w = r.witness.unwrap();
        assert!(quad_form(&a, &w) < Q::zero());
        assert_eq!(charpoly_signature(&a).n_negative, 1);
    }

    #[test]
    fn small_offdiagonal_is_psd() {
        let c = q(1, 3);
        let a = vec![vec![qi(1), c.clone()], vec![c, qi(1)]];
        assert!(psd_certify(&a, Method::ExactLdl).unwrap().psd);
    }

    #[test]
    fn nonsymmetric_rejected() {
        let a = m(&[&[1, 2], &[0, 1]]);
        assert_eq!(psd_certify(&a, Method::ExactLdl), Err(Error::NonSymmetric));
    }

    #[test]
    fn charpoly_of_companion() {
        let a = m(&[&[2, 1], &[1, 2]]);
        assert_eq!(charpoly(&a), vec![qi(3), qi(-4), qi(1)]);
        assert_eq!(det(&a), qi(3));
    }
}
