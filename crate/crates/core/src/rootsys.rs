//! Root data in explicit ambient coordinates and their Weyl groups.
//!
//! Coroots are stored explicitly and transported by the Weyl group action,
//! never recomputed from the roots, so the length conventions are exactly
//! the ones fixed by the simple coroots below.

use crate::error::{Error, Result};
use crate::rational::{dot, q, qi, Q};
use num_traits::{One, Signed, Zero};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl CartanType {
    pub fn is_classical(self) -> bool {
        matches!(self, CartanType::A | CartanType::B | CartanType::C | CartanType::D)
    }

    pub fn is_e(self) -> bool {
        matches!(self, CartanType::E6 | CartanType::E7 | CartanType::E8)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::G2 => "G2",
            CartanType::F4 => "F4",
            CartanType::E6 => "E6",
            CartanType::E7 => "E7",
            CartanType::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "G2" | "G" => CartanType::G2,
            "F4" | "F" => CartanType::F4,
            "E6" => CartanType::E6,
            "E7" => CartanType::E7,
            "E8" => CartanType::E8,
            other => return Err(Error::Parse(format!("unknown Cartan type {other:?}"))),
        })
    }
}

/// Splits a group name such as `B4` or `G2` into type and rank.
pub fn parse_group(s: &str) -> Result<(CartanType, usize)> {
    let s = s.trim();
    let up = s.to_ascii_uppercase();
    if matches!(up.as_str(), "G2" | "F4" | "E6" | "E7" | "E8") {
        let t: CartanType = up.parse()?;
        let r = up[1..].parse().unwrap();
        return Ok((t, r));
    }
    if up.len() < 2 {
        return Err(Error::Parse(format!("bad group name {s:?}")));
    }
    let t: CartanType = up[..1].parse()?;
    let r: usize = up[1..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
    Ok((t, r))
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<Q>>,
    pub simple_coroots: Vec<Vec<Q>>,
    /// Sorted by height, then lexicographically by coordinates.
    pub positive_roots: Vec<Vec<Q>>,
    /// `positive_coroots[k]` is the coroot of `positive_roots[k]`.
    pub positive_coroots: Vec<Vec<Q>>,
}

pub type Parameter = Vec<Q>;

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

fn half_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x, 2)).collect()
}

/// Bourbaki simple roots of E8 in the standard 8 coordinates; E7 and E6 use
/// the first 7 and 6 of them.
fn e8_simple() -> Vec<Vec<Q>> {
    let e = |i: usize| unit(8, i);
    vec![
        half_vec(&[1, -1, -1, -1, -1, -1, -1, 1]),
        add(&e(0), &e(1)),
        sub(&e(1), &e(0)),
        sub(&e(2), &e(1)),
        sub(&e(3), &e(2)),
        sub(&e(4), &e(3)),
        sub(&e(5), &e(4)),
        sub(&e(6), &e(5)),
    ]
}

/// Order of the Weyl group, computed without enumeration.
pub fn weyl_order(t: CartanType, n: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match t {
        CartanType::A => fact(n + 1),
        CartanType::B | CartanType::C => (1u128 << n) * fact(n),
        CartanType::D => (1u128 << (n - 1)) * fact(n),
        CartanType::G2 => 12,
        CartanType::F4 => 1152,
        CartanType::E6 => 51840,
        CartanType::E7 => 2903040,
        CartanType::E8 => 696729600,
    }
}

impl RootDatum {
    pub fn build(t: CartanType, rank: usize) -> Result<RootDatum> {
        let bad = || Error::Unsupported(format!("{t}{rank}"));
        let (dim, roots, coroots): (usize, Vec<Vec<Q>>, Vec<Vec<Q>>) = match t {
            CartanType::A => {
                if rank < 1 {
                    return Err(bad());
                }
                let d = rank + 1;
                let r: Vec<_> = (0..rank).map(|i| sub(&unit(d, i), &unit(d, i + 1))).collect();
                (d, r.clone(), r)
            }
            CartanType::B | CartanType::C => {
                if rank < 1 {
                    return Err(bad());
                }
                let d = rank;
                let mut r: Vec<_> = (0..rank - 1).map(|i| sub(&unit(d, i), &unit(d, i + 1))).collect();
                let mut c = r.clone();
                let e = unit(d, rank - 1);
                let two_e = scale(&e, &qi(2));
                if t == CartanType::B {
                    r.push(e);
                    c.push(two_e);
                } else {
                    r.push(two_e);
                    c.push(e);
                }
                (d, r, c)
            }
            CartanType::D => {
                if rank < 2 {
                    return Err(bad());
                }
                let d = rank;
                let mut r: Vec<_> = (0..rank - 1).map(|i| sub(&unit(d, i), &unit(d, i + 1))).collect();
                r.push(add(&unit(d, rank - 2), &unit(d, rank - 1)));
                (d, r.clone(), r)
            }
            CartanType::G2 => {
                if rank != 2 {
                    return Err(bad());
                }
                let r = vec![vec![qi(2), qi(-1), qi(-1)], vec![qi(-1), qi(1), qi(0)]];
                let c = vec![vec![q(2, 3), q(-1, 3), q(-1, 3)], vec![qi(-1), qi(1), qi(0)]];
                (3, r, c)
            }
            CartanType::F4 => {
                if rank != 4 {
                    return Err(bad());
                }
                let r = vec![
                    half_vec(&[1, -1, -1, -1]),
                    unit(4, 3),
                    sub(&unit(4, 2), &unit(4, 3)),
                    sub(&unit(4, 1), &unit(4, 2)),
                ];
                let c = vec![
                    vec![qi(1), qi(-1), qi(-1), qi(-1)],
                    scale(&unit(4, 3), &qi(2)),
                    sub(&unit(4, 2), &unit(4, 3)),
                    sub(&unit(4, 1), &unit(4, 2)),
                ];
                (4, r, c)
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                let k = match t {
                    CartanType::E6 => 6,
                    CartanType::E7 => 7,
                    _ => 8,
                };
                if rank != k {
                    return Err(bad());
                }
                let r: Vec<_> = e8_simple().into_iter().take(k).collect();
                (8, r.clone(), r)
            }
        };
        let mut datum = RootDatum {
            cartan_type: t,
            rank,
            ambient_dim: dim,
            simple_roots: roots,
            simple_coroots: coroots,
            positive_roots: vec![],
            positive_coroots: vec![],
        };
        datum.generate_positive();
        Ok(datum)
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<Q>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| dot(&self.simple_coroots[i], &self.simple_roots[j])).collect())
            .collect()
    }

    pub fn pairing(&self, coroot: &[Q], v: &[Q]) -> Q {
        dot(coroot, v)
    }

    /// `s_i(v) = v − ⟨α̌_i, v⟩ α_i`.
    pub fn reflect(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let c = dot(&self.simple_coroots[i], v);
        if c.is_zero() {
            return v.to_vec();
        }
        v.iter().zip(&self.simple_roots[i]).map(|(x, a)| x - &c * a).collect()
    }

    /// `s_i` on coroots: `v − ⟨v, α_i⟩ α̌_i`.
    pub fn reflect_coroot(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let c = dot(&self.simple_roots[i], v);
        if c.is_zero() {
            return v.to_vec();
        }
        v.iter().zip(&self.simple_coroots[i]).map(|(x, a)| x - &c * a).collect()
    }

    /// Coefficients of a vector in the span of the simple roots.
    pub fn simple_coefficients(&self, v: &[Q]) -> Vec<Q> {
        let a = self.cartan_matrix();
        let rhs: Vec<Vec<Q>> = (0..self.rank).map(|j| vec![dot(&self.simple_coroots[j], v)]).collect();
        // Σ_i c_i ⟨α̌_j, α_i⟩ = ⟨α̌_j, v⟩
        let at: Vec<Vec<Q>> = (0..self.rank).map(|j| (0..self.rank).map(|i| a[j][i].clone()).collect()).collect();
        crate::linalg::solve(&at, &rhs)
            .expect("Cartan matrix is invertible")
            .into_iter()
            .map(|r| r[0].clone())
            .collect()
    }

    fn generate_positive(&mut self) {
        let mut seen: HashMap<Vec<Q>, Vec<Q>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..self.rank {
            seen.insert(self.simple_roots[i].clone(), self.simple_coroots[i].clone());
            queue.push_back((self.simple_roots[i].clone(), self.simple_coroots[i].clone()));
        }
        while let Some((r, c)) = queue.pop_front() {
            for i in 0..self.rank {
                let r2 = self.reflect(i, &r);
                if seen.contains_key(&r2) {
                    continue;
                }
                let c2 = self.reflect_coroot(i, &c);
                seen.insert(r2.clone(), c2.clone());
                queue.push_back((r2, c2));
            }
        }
        let mut pos: Vec<(Q, Vec<Q>, Vec<Q>)> = seen
            .into_iter()
            .filter_map(|(r, c)| {
                let co = self.simple_coefficients(&r);
                let h: Q = co.iter().fold(Q::zero(), |s, x| s + x);
                if h.is_positive() {
                    Some((h, r, c))
                } else {
                    None
                }
            })
            .collect();
        pos.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        self.positive_roots = pos.iter().map(|p| p.1.clone()).collect();
        self.positive_coroots = pos.into_iter().map(|p| p.2).collect();
    }

    pub fn n_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Half the sum of the positive roots; strictly dominant.
    pub fn rho(&self) -> Vec<Q> {
        let mut s = vec![Q::zero(); self.ambient_dim];
        for r in &self.positive_roots {
            s = add(&s, r);
        }
        scale(&s, &q(1, 2))
    }

    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<Q>> {
        let n = self.ambient_dim;
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let d = if r == c { Q::one() } else { Q::zero() };
                        d - &self.simple_roots[i][r] * &self.simple_coroots[i][c]
                    })
                    .collect()
            })
            .collect()
    }

    pub fn element_from_word(&self, word: &[usize]) -> WeylElement {
        let mut m = crate::linalg::identity(self.ambient_dim);
        for &i in word {
            m = crate::linalg::mat_mul(&m, &self.reflection_matrix(i));
        }
        WeylElement { matrix: m, word: word.to_vec() }
    }

    pub fn is_dominant(&self, chi: &[Q]) -> bool {
        self.simple_coroots.iter().all(|c| !dot(c, chi).is_negative())
    }

    /// Returns `(w·χ, w)` with `w·χ` weakly dominant.
    pub fn make_dominant(&self, chi: &[Q]) -> (Parameter, WeylElement) {
        let mut x = chi.to_vec();
        let mut applied = Vec::new();
        loop {
            let i = (0..self.rank).find(|&i| dot(&self.simple_coroots[i], &x).is_negative());
            match i {
                Some(i) => {
                    x = self.reflect(i, &x);
                    applied.push(i);
                }
                None => break,
            }
        }
        applied.reverse();
        let w = self.element_from_word(&applied);
        (x, w)
    }

    /// The longest element, found by moving `−ρ` to the dominant chamber.
    pub fn longest_element(&self) -> WeylElement {
        let neg: Vec<Q> = self.rho().iter().map(|x| -x).collect();
        self.make_dominant(&neg).1
    }

    pub fn is_hermitian_point(&self, chi: &[Q]) -> bool {
        let w0 = self.longest_element();
        let image = w0.apply(chi);
        image.iter().zip(chi).all(|(a, b)| *a == -b)
    }

    /// True when `w0` acts as `−1` on the span of the roots.
    pub fn w0_is_minus_one(&self) -> bool {
        let w0 = self.longest_element();
        let n = self.ambient_dim;
        self.simple_roots.iter().all(|a| {
            let im = w0.apply(a);
            (0..n).all(|k| im[k] == -&a[k])
        })
    }

    /// Index of a positive coroot equal to `v`, if any.
    pub fn positive_coroot_index(&self, v: &[Q]) -> Option<usize> {
        self.positive_coroots.iter().position(|c| c.as_slice() == v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<Q>>,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.matrix.iter().map(|row| dot(row, v)).collect()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_orthogonal(&self) -> bool {
        let m = &self.matrix;
        let n = m.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s = (0..n).fold(Q::zero(), |s, k| s + &m[k][i] * &m[k][j]);
                s == if i == j { Q::one() } else { Q::zero() }
            })
        })
    }
}

pub const DEFAULT_CAP: usize = 2000;

/// A fully enumerated Weyl group with multiplication by simple reflections
/// tabulated on both sides.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub datum: RootDatum,
    /// All roots, positive ones first (same order as in the datum), then
    /// their negatives.
    pub roots: Vec<Vec<Q>>,
    pub elements: Vec<WeylElement>,
    perms: Vec<Vec<u16>>,
    right: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    pub longest: usize,
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Result<WeylGroup> {
        Self::with_cap(datum, DEFAULT_CAP)
    }

    pub fn with_cap(datum: &RootDatum, cap: usize) -> Result<WeylGroup> {
        let order = weyl_order(datum.cartan_type, datum.rank);
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        let npos = datum.n_positive();
        let mut roots = datum.positive_roots.clone();
        roots.extend(datum.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<Q>>()));
        let index: HashMap<Vec<Q>, u16> = roots.iter().enumerate().map(|(i, r)| (r.clone(), i as u16)).collect();
        let simple_idx: Vec<usize> = datum
            .simple_roots
            .iter()
            .map(|a| index[a] as usize)
            .collect();
        let sperm: Vec<Vec<u16>> = (0..datum.rank)
            .map(|i| roots.iter().map(|r| index[&datum.reflect(i, r)]).collect())
            .collect();
        let refl: Vec<Vec<Vec<Q>>> = (0..datum.rank).map(|i| datum.reflection_matrix(i)).collect();

        let key = |p: &[u16]| -> Vec<u16> { simple_idx.iter().map(|&k| p[k]).collect() };
        let id_perm: Vec<u16> = (0..roots.len() as u16).collect();
        let mut perms = vec![id_perm.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut mats = vec![crate::linalg::identity(datum.ambient_dim)];
        let mut lookup: HashMap<Vec<u16>, u32> = HashMap::new();
        lookup.insert(key(&id_perm), 0);
        let mut right: Vec<Vec<u32>> = vec![];
        let mut head = 0;
        while head < perms.len() {
            let mut row = Vec::with_capacity(datum.rank);
            for i in 0..datum.rank {
                // (w s_i)(β) = w(s_i β)
                let p: Vec<u16> = sperm[i].iter().map(|&b| perms[head][b as usize]).collect();
                let k = key(&p);
                let idx = match lookup.get(&k) {
                    Some(&x) => x,
                    None => {
                        let x = perms.len() as u32;
                        lookup.insert(k, x);
                        perms.push(p);
                        let mut w = words[head].clone();
                        w.push(i);
                        words.push(w);
                        mats.push(crate::linalg::mat_mul(&mats[head], &refl[i]));
                        x
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }
        let n = perms.len();
        debug_assert_eq!(n as u128, order);
        let left: Vec<Vec<u32>> = (0..n)
            .map(|w| {
                (0..datum.rank)
                    .map(|i| {
                        let p: Vec<u16> = perms[w].iter().map(|&b| sperm[i][b as usize]).collect();
                        lookup[&key(&p)]
                    })
                    .collect()
            })
            .collect();
        let inverse: Vec<u32> = (0..n)
            .map(|w| {
                let mut inv = vec![0u16; roots.len()];
                for (b, &img) in perms[w].iter().enumerate() {
                    inv[img as usize] = b as u16;
                }
                lookup[&key(&inv)]
            })
            .collect();
        let longest = (0..n).max_by_key(|&w| words[w].len()).unwrap();
        debug_assert_eq!(words[longest].len(), npos);
        let elements = mats
            .into_iter()
            .zip(words)
            .map(|(matrix, word)| WeylElement { matrix, word })
            .collect();
        Ok(WeylGroup {
            datum: datum.clone(),
            roots,
            elements,
            perms,
            right,
            left,
            inverse,
            longest,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn right_simple(&self, w: usize, i: usize) -> usize {
        self.right[w][i] as usize
    }

    pub fn left_simple(&self, w: usize, i: usize) -> usize {
        self.left[w][i] as usize
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w] as usize
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].word.len()
    }

    pub fn sign(&self, w: usize) -> i64 {
        if self.length(w).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn simple_reflection(&self, i: usize) -> usize {
        self.right[0][i] as usize
    }

    /// `x·y`, walking the reduced word of `y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let mut z = x;
        for &i in &self.elements[y].word {
            z = self.right[z][i] as usize;
        }
        z
    }

    /// Image of root number `b` (index into `roots`) under `w`.
    pub fn act_on_root(&self, w: usize, b: usize) -> usize {
        self.perms[w][b] as usize
    }

    pub fn is_positive_root_index(&self, b: usize) -> bool {
        b < self.datum.n_positive()
    }

    /// Right descent set: `ℓ(w s_i) < ℓ(w)` iff `w(α_i) < 0`.
    pub fn has_right_descent(&self, w: usize, i: usize) -> bool {
        self.length(self.right_simple(w, i)) < self.length(w)
    }

    /// Up to `k` distinct reduced words of `w`, in lexicographic order of
    /// the reversed word.
    pub fn reduced_words(&self, w: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        self.words_rec(w, k, &mut suffix, &mut out);
        out
    }

    fn words_rec(&self, w: usize, k: usize, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= k {
            return;
        }
        if w == 0 {
            let mut word = suffix.clone();
            word.reverse();
            out.push(word);
            return;
        }
        for i in 0..self.rank() {
            if self.has_right_descent(w, i) {
                suffix.push(i);
                self.words_rec(self.right_simple(w, i), k, suffix, out);
                suffix.pop();
                if out.len() >= k {
                    return;
                }
            }
        }
    }

    /// Index of the element with the given word.
    pub fn element_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |z, &i| self.right_simple(z, i))
    }

    /// Elements of the parabolic subgroup generated by the simple
    /// reflections in `subset`.
    pub fn parabolic(&self, subset: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let w = out[head];
            for &i in subset {
                let v = self.right_simple(w, i);
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                }
            }
            head += 1;
        }
        out
    }

    /// Index of the element whose matrix equals `m`, if any.
    pub fn find_matrix(&self, m: &[Vec<Q>]) -> Option<usize> {
        self.elements.iter().position(|e| e.matrix.as_slice() == m)
    }

    /// Index of the element with matrix `m`, located by moving `m·ρ` back to
    /// the dominant chamber.
    pub fn element_of_matrix(&self, m: &[Vec<Q>]) -> Option<usize> {
        let d = &self.datum;
        let rho = d.rho();
        let im: Vec<Q> = m.iter().map(|row| dot(row, &rho)).collect();
        let (dom, u) = d.make_dominant(&im);
        if dom != rho {
            return None;
        }
        // u·m fixes ρ, so m = u⁻¹.
        let w = u.word.iter().rev().fold(0, |z, &i| self.right_simple(z, i));
        if self.elements[w].matrix.as_slice() == m {
            Some(w)
        } else {
            None
        }
    }
}
