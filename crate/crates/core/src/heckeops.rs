//! The long intertwining operator on the spherical principal series.
//!
//! `X(χ)` is identified with `C[W]`; the operator is right multiplication by
//! `r_{w0}(χ) = r′_1 ⋯ r′_ℓ` over a reduced word `s_{i_1} ⋯ s_{i_ℓ}` of `w0`,
//! where `r′_j = −⟨α̌_{i_j}, (s_{i_{j+1}} ⋯ s_{i_ℓ})χ⟩ t_{s_{i_j}} − 1`.
//! Everything is evaluated at a rational `χ`, so each factor is a sparse
//! element with two terms.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Method, SignatureReport};
use crate::rational::{dot, Q};
use crate::rootsys::{RootDatum, WeylGroup};
use num_traits::{One, Zero};

/// A group-algebra element `Σ a_w t_w`, stored densely over the enumeration
/// order of the Weyl group (a zero entry is an absent term).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebraElement {
    pub coeffs: Vec<Q>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { coeffs: vec![Q::zero(); n] }
    }

    pub fn basis(n: usize, w: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[w] = Q::one();
        e
    }

    pub fn one(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn coeff(&self, w: usize) -> &Q {
        &self.coeffs[w]
    }

    /// Nonzero terms `(w, a_w)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero())
    }

    pub fn scale(&self, c: &Q) -> Self {
        GroupAlgebraElement { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        GroupAlgebraElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    /// `x ↦ x · (−c t_s − 1)`: the coefficient of `t_y` in `x t_s` is `x_{ys}`.
    pub fn right_factor(&self, w: &WeylGroup, s: usize, c: &Q) -> Self {
        let coeffs = (0..self.coeffs.len())
            .map(|y| {
                let ys = w.right_simple(y, s);
                let mut v = -&self.coeffs[y];
                if !c.is_zero() && !self.coeffs[ys].is_zero() {
                    v -= c * &self.coeffs[ys];
                }
                v
            })
            .collect();
        GroupAlgebraElement { coeffs }
    }

    /// Right translation `x ↦ x t_u`.
    pub fn right_translate(&self, w: &WeylGroup, u: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n];
        for (x, a) in self.terms() {
            out[w.mul(x, u)] = a.clone();
        }
        GroupAlgebraElement { coeffs: out }
    }

    /// Left translation `x ↦ t_u x`.
    pub fn left_translate(&self, w: &WeylGroup, u: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n];
        for (x, a) in self.terms() {
            out[w.mul(u, x)] = a.clone();
        }
        GroupAlgebraElement { coeffs: out }
    }

    pub fn mul(&self, other: &Self, w: &WeylGroup) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n];
        for (x, a) in self.terms() {
            for (y, b) in other.terms() {
                out[w.mul(x, y)] += a * b;
            }
        }
        GroupAlgebraElement { coeffs: out }
    }

    /// The adjoint `Σ a_w t_{w⁻¹}`.
    pub fn star(&self, w: &WeylGroup) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n];
        for (x, a) in self.terms() {
            out[w.inverse(x)] = a.clone();
        }
        GroupAlgebraElement { coeffs: out }
    }

    /// `Σ a_w`: the scalar by which the element acts on `Σ_w t_w`.
    pub fn augmentation(&self) -> Q {
        self.coeffs.iter().fold(Q::zero(), |s, a| s + a)
    }

    /// `Σ det(w) a_w`: the scalar on `Σ_w det(w) t_w`.
    pub fn sign_augmentation(&self, w: &WeylGroup) -> Q {
        self.terms().fold(Q::zero(), |s, (x, a)| if w.sign(x) == 1 { s + a } else { s - a })
    }
}

/// One factor `r′ = −c t_s − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub simple: usize,
    pub c: Q,
}

pub fn r_factor(w: &WeylGroup, j: usize, chi_local: &[Q]) -> GroupAlgebraElement {
    let c = dot(&w.datum.simple_coroots[j], chi_local);
    let mut e = GroupAlgebraElement::zero(w.order());
    e.coeffs[0] = -Q::one();
    e.coeffs[w.simple_reflection(j)] = -c;
    e
}

/// Constants of the factors along `word`: the `j`-th uses
/// `(s_{i_{j+1}} ⋯ s_{i_ℓ}) χ`.
pub fn factor_constants(datum: &RootDatum, word: &[usize], chi: &[Q]) -> Vec<Factor> {
    let mut out = Vec::with_capacity(word.len());
    let mut local = chi.to_vec();
    for &i in word.iter().rev() {
        out.push(Factor { simple: i, c: dot(&datum.simple_coroots[i], &local) });
        local = datum.reflect(i, &local);
    }
    out.reverse();
    out
}

pub fn apply_factors(w: &WeylGroup, factors: &[Factor], v: &GroupAlgebraElement) -> GroupAlgebraElement {
    let mut x = v.clone();
    for f in factors {
        x = x.right_factor(w, f.simple, &f.c);
    }
    x
}

pub fn long_element_with_word(w: &WeylGroup, word: &[usize], chi: &[Q]) -> GroupAlgebraElement {
    let factors = factor_constants(&w.datum, word, chi);
    apply_factors(w, &factors, &GroupAlgebraElement::one(w.order()))
}

pub fn long_element_factorized(w: &WeylGroup, chi: &[Q]) -> GroupAlgebraElement {
    let word = w.elements[w.longest].word.clone();
    long_element_with_word(w, &word, chi)
}

/// `N(χ) = ∏_{α>0} (⟨α̌, χ⟩ + 1)`.
pub fn normalization_closed_form(datum: &RootDatum, chi: &[Q]) -> Q {
    datum
        .positive_coroots
        .iter()
        .fold(Q::one(), |p, c| p * (dot(c, chi) + Q::one()))
}

/// `∏_{α>0} (1 − ⟨α̌, χ⟩)/(1 + ⟨α̌, χ⟩)`.
pub fn sign_scalar_closed_form(datum: &RootDatum, chi: &[Q]) -> Result<Q> {
    let mut p = Q::one();
    for c in &datum.positive_coroots {
        let x = dot(c, chi);
        let den = Q::one() + &x;
        if den.is_zero() {
            return Err(Error::ZeroNormalization);
        }
        p *= (Q::one() - x) / den;
    }
    Ok(p)
}

#[derive(Debug, Clone)]
pub struct IntertwinerMatrix {
    pub chi: Vec<Q>,
    pub word: Vec<usize>,
    pub factors: Vec<Factor>,
    /// `r_{w0}(χ)` as an element of `C[W]`.
    pub element: GroupAlgebraElement,
    pub trivial_scalar: Q,
}

impl IntertwinerMatrix {
    /// `raw[x][y]` is the coefficient of `t_x` in `t_y r`, i.e. `r_{y⁻¹x}`.
    pub fn raw_matrix(&self, w: &WeylGroup) -> Mat {
        let n = w.order();
        (0..n)
            .map(|x| (0..n).map(|y| self.element.coeffs[w.mul(w.inverse(y), x)].clone()).collect())
            .collect()
    }

    pub fn normalized_element(&self) -> GroupAlgebraElement {
        self.element.scale(&self.trivial_scalar.recip())
    }

    pub fn normalized_matrix(&self, w: &WeylGroup) -> Mat {
        let inv = self.trivial_scalar.recip();
        self.raw_matrix(w)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * &inv).collect())
            .collect()
    }

    /// `v ↦ v · r / trivial_scalar`.
    pub fn apply_normalized(&self, w: &WeylGroup, v: &GroupAlgebraElement) -> GroupAlgebraElement {
        apply_factors(w, &self.factors, v).scale(&self.trivial_scalar.recip())
    }

    pub fn sign_scalar(&self, w: &WeylGroup) -> Q {
        self.element.sign_augmentation(w) / &self.trivial_scalar
    }
}

pub fn intertwiner(w: &WeylGroup, chi: &[Q]) -> Result<IntertwinerMatrix> {
    if chi.len() != w.datum.ambient_dim {
        return Err(Error::DimensionMismatch { expected: w.datum.ambient_dim, got: chi.len() });
    }
    let word = w.elements[w.longest].word.clone();
    let factors = factor_constants(&w.datum, &word, chi);
    let element = apply_factors(w, &factors, &GroupAlgebraElement::one(w.order()));
    let trivial_scalar = element.augmentation();
    if trivial_scalar.is_zero() {
        return Err(Error::ZeroNormalization);
    }
    Ok(IntertwinerMatrix { chi: chi.to_vec(), word, factors, element, trivial_scalar })
}

/// `(sign scalar, trivial scalar)` of the normalised operator, checked
/// against the closed forms.
pub fn isotypic_scalar_sign_and_triv(w: &WeylGroup, chi: &[Q]) -> Result<(Q, Q)> {
    let op = intertwiner(w, chi)?;
    let sign = op.sign_scalar(w);
    let closed = sign_scalar_closed_form(&w.datum, chi)?;
    assert_eq!(sign, closed, "sign scalar disagrees with the product formula");
    let n = normalization_closed_form(&w.datum, chi);
    assert_eq!(
        num_traits::Signed::abs(&op.trivial_scalar),
        num_traits::Signed::abs(&n),
        "trivial scalar disagrees with N(chi) in absolute value"
    );
    Ok((sign, op.normalized_element().augmentation()))
}

/// Dominant representative, hermitian check, and the normalised operator.
pub fn prepare(w: &WeylGroup, chi: &[Q]) -> Result<(Vec<Q>, IntertwinerMatrix)> {
    if chi.len() != w.datum.ambient_dim {
        return Err(Error::DimensionMismatch { expected: w.datum.ambient_dim, got: chi.len() });
    }
    let (dom, _) = w.datum.make_dominant(chi);
    let w0 = &w.elements[w.longest];
    let image = w0.apply(&dom);
    if !image.iter().zip(&dom).all(|(a, b)| *a == -b) {
        return Err(Error::NotHermitian);
    }
    let op = intertwiner(w, &dom)?;
    Ok((dom, op))
}

/// Signature of the full `|W| × |W|` form matrix; only sensible for small
/// groups, used as an independent route to the isotypic computation.
pub fn full_signature(w: &WeylGroup, chi: &[Q], method: Method) -> Result<SignatureReport> {
    let (_, op) = prepare(w, chi)?;
    linalg::psd_certify(&op.normalized_matrix(w), method)
}
