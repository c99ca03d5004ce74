//! Characters `δ` of `M` for split groups, their good roots and R-groups,
//! and the extended operators `x ↦ x u r_{w⁰}(ν)` on the quasi-spherical
//! principal series of `C[R] ⋉ H(Δ_δ)`.
//!
//! `M ≅ X^*/2X^*` is modelled by sign vectors on the ambient coordinates:
//! `δ(m_α) = ∏_j s_j^{c_j}` where `α̌ = Σ c_j e_j`. Whether two sign vectors
//! name the same character depends on the group; see [`Congruence`].

use crate::error::{Error, Result};
use crate::heckeops::GroupAlgebraElement;
use crate::linalg::{self, Mat, SignatureReport};
use crate::rational::{dot, Q};
use crate::rootsys::{CartanType, RootDatum, WeylGroup};
use crate::wrep::{self, FiniteGroup};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaCharacter {
    pub signs: Vec<i8>,
}

impl DeltaCharacter {
    pub fn trivial(n: usize) -> Self {
        DeltaCharacter { signs: vec![1; n] }
    }

    /// `δ_p`: the product of the last `p` diagonal entries.
    pub fn delta_p(n: usize, p: usize) -> Self {
        DeltaCharacter { signs: (0..n).map(|i| if i + p >= n { -1 } else { 1 }).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    fn y(&self) -> Vec<Q> {
        self.signs.iter().map(|&s| if s == 1 { Q::zero() } else { Q::one() }).collect()
    }
}

impl std::str::FromStr for DeltaCharacter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::Parse(format!("δ must be a string of + and -, got {s:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        if signs.is_empty() {
            return Err(Error::Parse("empty δ".into()));
        }
        Ok(DeltaCharacter { signs })
    }
}

impl fmt::Display for DeltaCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// When two sign vectors define the same character of `M`.
///
/// `Exact`: `M` is all of `{±1}^n` (`Sp(2n,R)`, `SO(n+1,n)`).
/// `ModuloFlip`: `M` lies in the determinant-one part, so a sign vector and
/// its negative agree (`SL(n,R)`, the identity components `SO(p,q)_0`, and
/// `F4` in Bourbaki coordinates, whose `2X^*` contains `(1,1,1,1)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Congruence {
    Exact,
    ModuloFlip,
}

impl Congruence {
    pub fn default_for(t: CartanType) -> Congruence {
        match t {
            CartanType::B | CartanType::C => Congruence::Exact,
            _ => Congruence::ModuloFlip,
        }
    }

    fn same(self, a: &[Q], b: &[Q]) -> bool {
        let d: Vec<Q> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        let even = |x: &Q| x.is_integer() && x.to_integer().is_even();
        let odd = |x: &Q| x.is_integer() && x.to_integer().is_odd();
        d.iter().all(even) || (self == Congruence::ModuloFlip && d.iter().all(odd))
    }
}

pub fn delta_on_m_alpha(delta: &DeltaCharacter, coroot: &[Q]) -> Result<i8> {
    if coroot.len() != delta.signs.len() {
        return Err(Error::DimensionMismatch { expected: delta.signs.len(), got: coroot.len() });
    }
    let mut s = 1i8;
    for (c, &sj) in coroot.iter().zip(&delta.signs) {
        if !c.is_integer() {
            return Err(Error::NonIntegralCoroot);
        }
        if c.to_integer().is_odd() {
            s *= sj;
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub cartan_type: CartanType,
    pub rank: usize,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.cartan_type, self.rank)
    }
}

/// Components of `X_n` with the small-rank conventions `C1 = B1 = A1`,
/// `D1 = ∅`, `D2 = A1+A1`, `D3 = A3`, `X0 = ∅`.
pub fn canonical_components(t: CartanType, n: usize) -> Vec<Component> {
    let c = |t, rank| Component { cartan_type: t, rank };
    let mut v = match (t, n) {
        (_, 0) => vec![],
        (CartanType::B | CartanType::C, 1) => vec![c(CartanType::A, 1)],
        (CartanType::D, 1) => vec![],
        (CartanType::D, 2) => vec![c(CartanType::A, 1), c(CartanType::A, 1)],
        (CartanType::D, 3) => vec![c(CartanType::A, 3)],
        _ => vec![c(t, n)],
    };
    v.sort();
    v
}

pub fn fmt_components(v: &[Component]) -> String {
    if v.is_empty() {
        return "∅".into();
    }
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("+")
}

#[derive(Debug, Clone)]
pub struct GoodRootData {
    pub delta: DeltaCharacter,
    pub congruence: Congruence,
    /// Positive good roots, in the datum's order.
    pub good_roots: Vec<Vec<Q>>,
    pub good_coroots: Vec<Vec<Q>>,
    /// Indices into `good_roots` of the simple system of `Δ_δ⁺`.
    pub simple: Vec<usize>,
    pub subsystem_type: Vec<Component>,
    pub w_delta0_order: usize,
    pub w_delta_order: usize,
    pub r_group_order: usize,
    /// Elements of `W` (indices) in `W_δ⁰`, `W_δ` and `R_δ^c`.
    pub w_delta0: Vec<usize>,
    pub w_delta: Vec<usize>,
    pub r_c: Vec<usize>,
    /// `W` index of the reflection in each simple good root.
    simple_reflections: Vec<usize>,
    /// Reduced word of the long element of `W_δ⁰` in `simple` positions.
    w0_word: Vec<usize>,
    w0: usize,
}

fn reflection_matrix(root: &[Q], coroot: &[Q]) -> Vec<Vec<Q>> {
    let n = root.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() } - &root[i] * &coroot[j]).collect())
        .collect()
}

pub fn good_root_data_for(t: CartanType, rank: usize, delta: &DeltaCharacter) -> Result<(WeylGroup, GoodRootData)> {
    let d = RootDatum::build(t, rank)?;
    let cap = usize::try_from(crate::rootsys::weyl_order(t, rank)).unwrap_or(usize::MAX);
    let w = WeylGroup::with_cap(&d, cap.max(crate::rootsys::DEFAULT_CAP))?;
    let g = good_root_data(&w, delta, Congruence::default_for(t))?;
    Ok((w, g))
}

pub fn good_root_data(w: &WeylGroup, delta: &DeltaCharacter, congruence: Congruence) -> Result<GoodRootData> {
    let d = &w.datum;
    if delta.signs.len() != d.ambient_dim {
        return Err(Error::DimensionMismatch { expected: d.ambient_dim, got: delta.signs.len() });
    }
    let mut good_roots = Vec::new();
    let mut good_coroots = Vec::new();
    for (r, c) in d.positive_roots.iter().zip(&d.positive_coroots) {
        if delta_on_m_alpha(delta, c)? == 1 {
            good_roots.push(r.clone());
            good_coroots.push(c.clone());
        }
    }
    // simple good roots: not a sum of two positive good roots
    let simple: Vec<usize> = (0..good_roots.len())
        .filter(|&k| {
            !good_roots.iter().enumerate().any(|(i, a)| {
                i != k && {
                    let rest: Vec<Q> = good_roots[k].iter().zip(a).map(|(x, y)| x - y).collect();
                    good_roots.contains(&rest)
                }
            })
        })
        .collect();
    let subsystem_type = classify(d.cartan_type, &good_roots, &good_coroots, &simple);

    let simple_reflections = simple
        .iter()
        .map(|&k| {
            w.element_of_matrix(&reflection_matrix(&good_roots[k], &good_coroots[k]))
                .ok_or_else(|| Error::Data("good reflection not found in W".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    // W_δ⁰ by breadth-first search over the good simple reflections
    let mut dist: HashMap<usize, (usize, usize, usize)> = HashMap::new(); // elt -> (len, parent, gen)
    dist.insert(0, (0, usize::MAX, usize::MAX));
    let mut queue = VecDeque::from([0usize]);
    let mut order = vec![0usize];
    while let Some(x) = queue.pop_front() {
        let lx = dist[&x].0;
        for (gi, &s) in simple_reflections.iter().enumerate() {
            let y = w.mul(x, s);
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert((lx + 1, x, gi));
                queue.push_back(y);
                order.push(y);
            }
        }
    }
    let w0 = *order.last().unwrap();
    if dist[&w0].0 != good_roots.len() {
        return Err(Error::Data("long element of the good-root Weyl group has the wrong length".into()));
    }
    let mut w0_word = Vec::new();
    let mut x = w0;
    while x != 0 {
        let (_, parent, gi) = dist[&x];
        w0_word.push(gi);
        x = parent;
    }
    w0_word.reverse();
    let mut w_delta0 = order;
    w_delta0.sort_unstable();

    let y = delta.y();
    let w_delta: Vec<usize> = (0..w.order()).filter(|&e| congruence.same(&w.elements[e].apply(&y), &y)).collect();
    let good_set: Vec<&Vec<Q>> = good_roots.iter().collect();
    let r_c: Vec<usize> = w_delta
        .iter()
        .copied()
        .filter(|&e| good_roots.iter().all(|a| good_set.contains(&&w.elements[e].apply(a))))
        .collect();
    let w_delta0_order = w_delta0.len();
    let w_delta_order = w_delta.len();
    if !w_delta_order.is_multiple_of(w_delta0_order) {
        return Err(Error::Data("W_δ⁰ is not a subgroup of W_δ".into()));
    }
    Ok(GoodRootData {
        delta: delta.clone(),
        congruence,
        good_roots,
        good_coroots,
        simple,
        subsystem_type,
        w_delta0_order,
        w_delta_order,
        r_group_order: w_delta_order / w_delta0_order,
        w_delta0,
        w_delta,
        r_c,
        simple_reflections,
        w0_word,
        w0,
    })
}

fn classify(ambient: CartanType, roots: &[Vec<Q>], coroots: &[Vec<Q>], simple: &[usize]) -> Vec<Component> {
    // connected components of the simple good roots
    let n = simple.len();
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(a) = stack.pop() {
            for b in 0..n {
                if comp[b] == usize::MAX && !dot(&coroots[simple[a]], &roots[simple[b]]).is_zero() {
                    comp[b] = ncomp;
                    stack.push(b);
                }
            }
        }
        ncomp += 1;
    }
    let mut out = Vec::new();
    for c in 0..ncomp {
        let members: Vec<usize> = (0..n).filter(|&i| comp[i] == c).map(|i| simple[i]).collect();
        let r = members.len();
        // positive roots of the component: good roots in the span of its simple roots
        // (a root lies in the component iff it pairs nontrivially with, or equals,
        // something reachable; count by orthogonality to the other components)
        let others: Vec<usize> = (0..n).filter(|&i| comp[i] != c).map(|i| simple[i]).collect();
        let roots_c: Vec<&Vec<Q>> = roots
            .iter()
            .enumerate()
            .filter(|(k, a)| {
                let in_other = others.iter().any(|&o| !dot(&coroots[o], a).is_zero() || *k == o);
                let in_this = members.iter().any(|&m| !dot(&coroots[m], a).is_zero() || *k == m);
                in_this && !in_other
            })
            .map(|(_, a)| a)
            .collect();
        let np = roots_c.len();
        let len2: Vec<Q> = roots_c.iter().map(|a| dot(a, a)).collect();
        let maxl = len2.iter().max().cloned().unwrap_or_else(Q::zero);
        let n_long = len2.iter().filter(|l| **l == maxl).count();
        let t = if r == 1 || np == r * (r + 1) / 2 {
            CartanType::A
        } else if r == 2 && np == 6 {
            CartanType::G2
        } else if r == 4 && np == 24 {
            CartanType::F4
        } else if np == 36 && r == 6 {
            CartanType::E6
        } else if np == 63 && r == 7 {
            CartanType::E7
        } else if np == 120 && r == 8 {
            CartanType::E8
        } else if np == r * r {
            if r == 2 {
                if ambient == CartanType::C || ambient == CartanType::F4 {
                    CartanType::C
                } else {
                    CartanType::B
                }
            } else if n_long == r {
                CartanType::C
            } else {
                CartanType::B
            }
        } else {
            CartanType::D
        };
        out.push(Component { cartan_type: t, rank: r });
    }
    out.sort();
    out
}

impl GoodRootData {
    /// `|R_δ(ν)| = |Stab_{W_δ}(ν)| / |Stab_{W_δ⁰}(ν)|`.
    pub fn r_group_at_nu(&self, w: &WeylGroup, nu: &[Q]) -> usize {
        let fixes = |e: &usize| w.elements[*e].apply(nu).as_slice() == nu;
        let a = self.w_delta.iter().filter(|e| fixes(e)).count();
        let b = self.w_delta0.iter().filter(|e| fixes(e)).count();
        a / b
    }

    pub fn w0(&self) -> usize {
        self.w0
    }

    /// `r_{w⁰}(ν) = ∏ (−c_j t_{s_j} − 1)` along the reduced word of `w⁰` in the
    /// good simple reflections, with `c_j = ⟨α̌_{i_j}, s_{i_{j+1}} ⋯ ν⟩`.
    pub fn long_element(&self, w: &WeylGroup, nu: &[Q]) -> GroupAlgebraElement {
        let mut consts = Vec::with_capacity(self.w0_word.len());
        let mut local = nu.to_vec();
        for &gi in self.w0_word.iter().rev() {
            let k = self.simple[gi];
            let c = dot(&self.good_coroots[k], &local);
            local = local.iter().zip(&self.good_roots[k]).map(|(x, a)| x - &c * a).collect();
            consts.push((gi, c));
        }
        consts.reverse();
        let mut x = GroupAlgebraElement::one(w.order());
        for (gi, c) in consts {
            let s = self.simple_reflections[gi];
            let xs = x.right_translate(w, s);
            x = GroupAlgebraElement {
                coeffs: x.coeffs.iter().zip(&xs.coeffs).map(|(a, b)| -a - &c * b).collect(),
            };
        }
        x
    }
}

pub fn r_group_at_nu(w: &WeylGroup, g: &GoodRootData, nu: &[Q]) -> usize {
    g.r_group_at_nu(w, nu)
}

// ---------------------------------------------------------------------------
// extended operators

/// A subgroup of `W` given by its element list, re-indexed from 0.
pub struct Subgroup<'a> {
    pub w: &'a WeylGroup,
    pub elements: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl<'a> Subgroup<'a> {
    pub fn new(w: &'a WeylGroup, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let pos = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Subgroup { w, elements, pos }
    }

    pub fn index_of(&self, e: usize) -> Option<usize> {
        self.pos.get(&e).copied()
    }
}

impl FiniteGroup for Subgroup<'_> {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn mul(&self, x: usize, y: usize) -> usize {
        self.pos[&self.w.mul(self.elements[x], self.elements[y])]
    }
    fn inverse(&self, x: usize) -> usize {
        self.pos[&self.w.inverse(self.elements[x])]
    }
    fn generators(&self) -> Vec<usize> {
        (0..self.elements.len()).collect()
    }
}

/// One `W′`-type block of the extended operator.
#[derive(Debug, Clone)]
pub struct ExtendedBlock {
    pub label: String,
    pub dim: usize,
    /// Copies of the type carried by the block basis.
    pub copies: usize,
    /// Contains the trivial `W_δ⁰`-type.
    pub fine: bool,
    /// Character value at `u`.
    pub u_trace: i64,
    /// Matrix of `b ↦ b a` in the block basis.
    pub operator: Mat,
    /// `⟨b_i, b_j a⟩`.
    pub form: Mat,
    pub signature: SignatureReport,
    /// The `R(ν)`-isotypic pieces of `form` (only when `u = 1`).
    pub lambda_blocks: BTreeMap<String, Mat>,
}

impl ExtendedBlock {
    /// The scalar of a one-dimensional type.
    pub fn scalar(&self) -> Option<Q> {
        (self.operator.len() == 1).then(|| self.operator[0][0].clone())
    }
}

#[derive(Debug, Clone)]
pub struct ExtendedOperator {
    pub nu: Vec<Q>,
    pub u: usize,
    pub w0: usize,
    pub r_nu_order: usize,
    /// `u r_{w⁰}(ν)` normalised to 1 on the trivial `W′`-type.
    pub element: GroupAlgebraElement,
    pub blocks: Vec<ExtendedBlock>,
}

impl ExtendedOperator {
    pub fn block(&self, label: &str) -> Result<&ExtendedBlock> {
        let l = wrep::normalize_label(label);
        self.blocks.iter().find(|b| b.label == l).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn psd(&self) -> bool {
        self.blocks.iter().all(|b| b.signature.psd)
    }
}

pub fn extended_intertwiner(w: &WeylGroup, g: &GoodRootData, nu: &[Q]) -> Result<ExtendedOperator> {
    let n = w.order();
    if nu.len() != w.datum.ambient_dim {
        return Err(Error::DimensionMismatch { expected: w.datum.ambient_dim, got: nu.len() });
    }
    let target: Vec<Q> = nu.iter().map(|x| -x).collect();
    let w0nu = w.elements[g.w0].apply(nu);
    let mut rc = g.r_c.clone();
    rc.sort_by_key(|&e| (w.length(e), e));
    let u = rc
        .into_iter()
        .find(|&e| w.elements[e].apply(&w0nu) == target)
        .ok_or(Error::NotHermitian)?;

    let r = g.long_element(w, nu);
    let aug = r.augmentation();
    if aug.is_zero() {
        return Err(Error::ZeroNormalization);
    }
    let a = r.left_translate(w, u).scale(&aug.recip());

    let sub = Subgroup::new(w, g.w_delta.clone());
    let (classes, rows) = wrep::character_rows(&sub)?;
    let chi = |row: &Vec<i64>, e: usize| row[classes.class_of[sub.index_of(e).unwrap()]];
    let labels = type_labels(w, &sub, &rows, &classes)?;

    let r_nu: Vec<usize> = g.r_c.iter().copied().filter(|&e| w.elements[e].apply(nu).as_slice() == nu).collect();
    let order_q = Q::from_integer((sub.elements.len() as i64).into());
    let mut blocks = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        let dim = row[0] as usize;
        let fine = g.w_delta0.iter().map(|&e| chi(row, e)).sum::<i64>() > 0;
        // central idempotent, then a cyclic-subgroup idempotent cutting the copies down
        let mut p = GroupAlgebraElement::zero(n);
        for &e in &sub.elements {
            p.coeffs[e] = Q::from_integer((chi(row, w.inverse(e)) * dim as i64).into()) / &order_q;
        }
        let (h, sign, copies) = best_involution(w, &sub, row, &classes, dim);
        let x = match h {
            Some(h) => {
                let t = p.left_translate(w, h).scale(&Q::from_integer(sign.into()));
                p.add(&t).scale(&Q::new(1.into(), 2.into()))
            }
            None => p,
        };
        let basis = span_basis(w, &sub, &x, copies * dim);
        let images: Vec<GroupAlgebraElement> = basis.iter().map(|b| b.mul(&a, w)).collect();
        let gram: Mat = basis.iter().map(|bi| basis.iter().map(|bj| dot(&bi.coeffs, &bj.coeffs)).collect()).collect();
        let form: Mat = basis.iter().map(|bi| images.iter().map(|aj| dot(&bi.coeffs, &aj.coeffs)).collect()).collect();
        if !linalg::is_symmetric(&form) {
            return Err(Error::NonSymmetric);
        }
        let operator = linalg::solve(&gram, &form).ok_or_else(|| Error::Data("singular block Gram matrix".into()))?;
        let signature = linalg::ldl_signature(&form);
        let mut lambda_blocks = BTreeMap::new();
        if u == 0 && r_nu.len() > 1 {
            for (lname, proj) in r_nu_projectors(w, &r_nu) {
                let imgs: Vec<GroupAlgebraElement> = basis.iter().map(|b| b.mul(&proj, w)).collect();
                let sub_basis = independent(&imgs);
                let ai: Vec<GroupAlgebraElement> = sub_basis.iter().map(|b| b.mul(&a, w)).collect();
                let f: Mat =
                    sub_basis.iter().map(|bi| ai.iter().map(|aj| dot(&bi.coeffs, &aj.coeffs)).collect()).collect();
                lambda_blocks.insert(lname, f);
            }
        }
        blocks.push(ExtendedBlock {
            label: labels[ri].clone(),
            dim,
            copies,
            fine,
            u_trace: chi(row, u),
            operator,
            form,
            signature,
            lambda_blocks,
        });
    }
    Ok(ExtendedOperator { nu: nu.to_vec(), u, w0: g.w0, r_nu_order: g.r_group_at_nu(w, nu), element: a, blocks })
}

/// Labels: the `W` labels when `W_δ = W`, otherwise `d{dim}.{k}` with the
/// fine types marked `f`.
fn type_labels(w: &WeylGroup, sub: &Subgroup, rows: &[Vec<i64>], classes: &wrep::ClassData) -> Result<Vec<String>> {
    if sub.elements.len() == w.order() {
        if let Ok(t) = wrep::character_table(w) {
            return rows
                .iter()
                .map(|row| {
                    t.rows
                        .iter()
                        .find(|tr| (0..w.order()).all(|e| tr.values[t.classes.class_of[e]] == row[classes.class_of[e]]))
                        .map(|tr| tr.label.clone())
                        .ok_or_else(|| Error::Data("character of W not found".into()))
                })
                .collect();
        }
    }
    let mut count: BTreeMap<i64, usize> = BTreeMap::new();
    Ok(rows
        .iter()
        .map(|row| {
            let k = count.entry(row[0]).or_insert(0);
            *k += 1;
            format!("d{}.{}", row[0], k)
        })
        .collect())
}

/// An involution `h` and sign `±` with `(dim ± χ(h))/2` minimal and positive.
fn best_involution(
    w: &WeylGroup,
    sub: &Subgroup,
    row: &[i64],
    classes: &wrep::ClassData,
    dim: usize,
) -> (Option<usize>, i64, usize) {
    let mut best = (None, 1, dim);
    for (ci, &rep) in classes.reps.iter().enumerate() {
        let e = sub.elements[rep];
        if e == 0 || w.mul(e, e) != 0 {
            continue;
        }
        for sign in [1i64, -1] {
            let m = (dim as i64 + sign * row[ci]) / 2;
            if m >= 1 && (m as usize) < best.2 {
                best = (Some(e), sign, m as usize);
            }
        }
    }
    best
}

fn independent(vs: &[GroupAlgebraElement]) -> Vec<GroupAlgebraElement> {
    let mut out: Vec<GroupAlgebraElement> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
    for v in vs {
        let mut r = v.coeffs.clone();
        for (p, e) in &echelon {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[p].recip();
            let e: Vec<Q> = r.iter().map(|x| x * &inv).collect();
            for (_, other) in echelon.iter_mut() {
                if !other[p].is_zero() {
                    let f = other[p].clone();
                    for (x, y) in other.iter_mut().zip(&e) {
                        *x -= &f * y;
                    }
                }
            }
            echelon.push((p, e));
            out.push(v.clone());
        }
    }
    out
}

fn span_basis(w: &WeylGroup, sub: &Subgroup, x: &GroupAlgebraElement, want: usize) -> Vec<GroupAlgebraElement> {
    let mut out = Vec::new();
    let mut pool = Vec::new();
    for &h in &sub.elements {
        pool.push(x.right_translate(w, h));
        if pool.len() >= 4 * want.max(1) {
            let mut cand = out.clone();
            cand.append(&mut pool);
            out = independent(&cand);
            if out.len() == want {
                return out;
            }
        }
    }
    let mut cand = out;
    cand.append(&mut pool);
    independent(&cand)
}

/// Projectors `(1/|R|) Σ λ(r) t_r` for the characters of the elementary
/// abelian group `R(ν)`.
fn r_nu_projectors(w: &WeylGroup, r_nu: &[usize]) -> Vec<(String, GroupAlgebraElement)> {
    let n = w.order();
    // a basis of generators of the 2-group
    let mut gens: Vec<usize> = Vec::new();
    let mut span: Vec<usize> = vec![0];
    for &e in r_nu {
        if !span.contains(&e) {
            gens.push(e);
            let extra: Vec<usize> = span.iter().map(|&s| w.mul(s, e)).collect();
            span.extend(extra);
        }
    }
    let k = gens.len();
    let inv = Q::new(1.into(), (1i64 << k).into());
    (0..(1usize << k))
        .map(|mask| {
            let mut p = GroupAlgebraElement::zero(n);
            for sub in 0..(1usize << k) {
                let e = (0..k).filter(|i| sub >> i & 1 == 1).fold(0, |acc, i| w.mul(acc, gens[i]));
                let sign = (0..k).filter(|i| sub >> i & 1 == 1 && mask >> i & 1 == 1).count() % 2;
                p.coeffs[e] = if sign == 0 { inv.clone() } else { -inv.clone() };
            }
            let name: String = (0..k).map(|i| if mask >> i & 1 == 1 { '-' } else { '+' }).collect();
            (name, p)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// rank one

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankOneKind {
    /// `SL(2,R)`, `δ` trivial, on `μ_{2k}`.
    RTriv,
    /// `SL(2,R)`, `δ = sgn`, on `μ_{2k+1}`.
    RSgn,
    /// `SL(2,C)`, on the `(k+1)`-dimensional type.
    CTriv,
}

fn frac_factor(a: Q, c: &Q) -> Result<Q> {
    let den = &a + c;
    if den.is_zero() {
        return Err(Error::Pole);
    }
    Ok((a - c) / den)
}

pub fn rank_one_scalar(kind: RankOneKind, k: i64, c: &Q) -> Result<Q> {
    let mut p = Q::one();
    match kind {
        RankOneKind::RTriv => {
            for j in 1..=k.abs() {
                p *= frac_factor(Q::from_integer((2 * j - 1).into()), c)?;
            }
        }
        RankOneKind::RSgn => {
            // |k + 1/2| − 1/2
            let top = if k >= 0 { k } else { -k - 1 };
            for j in 1..=top {
                p *= frac_factor(Q::from_integer((2 * j).into()), c)?;
            }
            if k < 0 {
                p = -p;
            }
        }
        RankOneKind::CTriv => {
            if k < 0 {
                return Err(Error::Parse("SL(2,C) types need k >= 0".into()));
            }
            for j in 1..=k {
                p *= frac_factor(Q::from_integer(j.into()), c)?;
            }
        }
    }
    Ok(p)
}

/// `c_l(λ)`: 1 for `l ≤ 1`, otherwise the signed product over the integers
/// of the parity opposite to `l` below `l`.
pub fn c_constants(l: u64, lambda: &Q) -> Result<Q> {
    if l <= 1 {
        return Ok(Q::one());
    }
    let m = l / 2;
    let mut p = Q::one();
    for j in 1..=m {
        let a = if l % 2 == 1 { 2 * j } else { 2 * j - 1 };
        p *= frac_factor(Q::from_integer((a as i64).into()), lambda)?;
    }
    Ok(if m % 2 == 1 { -p } else { p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_vec, q};

    fn v(s: &str) -> Vec<Q> {
        parse_vec(s).unwrap()
    }

    #[test]
    fn sp_m_alpha_table() {
        let d = DeltaCharacter::delta_p(4, 2);
        assert_eq!(delta_on_m_alpha(&d, &v("0,0,0,1")).unwrap(), -1);
        assert_eq!(delta_on_m_alpha(&d, &v("1,0,0,0")).unwrap(), 1);
        assert_eq!(delta_on_m_alpha(&d, &v("1,-1,0,0")).unwrap(), 1);
        assert_eq!(delta_on_m_alpha(&d, &v("0,1,1,0")).unwrap(), -1);
        assert_eq!(delta_on_m_alpha(&d, &v("0,0,1,1")).unwrap(), 1);
        assert_eq!(delta_on_m_alpha(&d, &v("1/2,0,0,0")), Err(Error::NonIntegralCoroot));
        assert_eq!(delta_on_m_alpha(&DeltaCharacter::trivial(3), &v("1,1,0")).unwrap(), 1);
    }

    #[test]
    fn sp8_delta2() {
        let (w, g) = good_root_data_for(CartanType::C, 4, &DeltaCharacter::delta_p(4, 2)).unwrap();
        let mut expect = canonical_components(CartanType::C, 2);
        expect.extend(canonical_components(CartanType::D, 2));
        expect.sort();
        assert_eq!(g.subsystem_type, expect);
        assert_eq!((g.w_delta0_order, g.w_delta_order, g.r_group_order), (32, 64, 2));
        assert_eq!(g.r_group_at_nu(&w, &v("2,1,1,1/2")), 1);
        assert_eq!(g.r_group_at_nu(&w, &v("2,1,1,0")), 2);
    }

    #[test]
    fn f4_fine_rows() {
        let (_, g) = good_root_data_for(CartanType::F4, 4, &"++--".parse().unwrap()).unwrap();
        assert_eq!(fmt_components(&g.subsystem_type), "C4");
        assert_eq!(g.r_group_order, 1);
        assert_eq!(1152 / g.w_delta_order, 3);
        let (_, g) = good_root_data_for(CartanType::F4, 4, &"+++-".parse().unwrap()).unwrap();
        assert_eq!(fmt_components(&g.subsystem_type), "A1+B3");
        assert_eq!(g.r_group_order, 1);
        assert_eq!(1152 / g.w_delta_order, 12);
    }

    #[test]
    fn rank_one() {
        let c = q(1, 3);
        assert_eq!(rank_one_scalar(RankOneKind::RTriv, -1, &c).unwrap(), (q(1, 1) - &c) / (q(1, 1) + &c));
        assert_eq!(rank_one_scalar(RankOneKind::RSgn, -1, &c).unwrap(), q(-1, 1));
        assert_eq!(rank_one_scalar(RankOneKind::CTriv, 0, &c).unwrap(), q(1, 1));
        assert_eq!(rank_one_scalar(RankOneKind::RTriv, 1, &q(-1, 1)), Err(Error::Pole));
        let l = q(1, 5);
        assert_eq!(c_constants(0, &l).unwrap(), q(1, 1));
        assert_eq!(c_constants(1, &l).unwrap(), q(1, 1));
        assert_eq!(c_constants(2, &l).unwrap(), -(q(1, 1) - &l) / (q(1, 1) + &l));
        assert_eq!(c_constants(3, &l).unwrap(), -(q(2, 1) - &l) / (q(2, 1) + &l));
    }

    #[test]
    fn sp4_delta1() {
        let (w, g) = good_root_data_for(CartanType::C, 2, &"+-".parse().unwrap()).unwrap();
        let nu = v("3/5,1/7");
        let op = extended_intertwiner(&w, &g, &nu).unwrap();
        let s = (q(1, 1) - &nu[0]) / (q(1, 1) + &nu[0]);
        let mut got: Vec<Q> = op.blocks.iter().map(|b| b.scalar().unwrap()).collect();
        got.sort();
        let mut want = vec![q(1, 1), q(-1, 1), s.clone(), -s];
        want.sort();
        assert_eq!(got, want);
        for b in &op.blocks {
            if b.fine {
                assert_eq!(b.scalar().unwrap(), Q::from_integer(b.u_trace.into()));
            }
        }
    }
}
