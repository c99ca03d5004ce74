//! Conjugacy classes, character tables and per-W-type operator signatures.
//!
//! Character tables are computed with Dixon's method modulo a large prime
//! and then labelled: symmetric-group and hyperoctahedral characters are
//! evaluated by Murnaghan–Nakayama and matched by full character vector;
//! `G2`/`F4` rows are labelled by dimension and fake-degree `b`-value.
//!
//! Signatures are read off isotypic blocks of the regular representation.
//! For a W-type `ψ` pick a parabolic subgroup `H` and a character `λ` of `H`
//! (trivial or sign) with `m = ⟨Res ψ, λ⟩_H ≥ 1`, set `x = e_{H,λ} P_ψ`,
//! and restrict the hermitian form to `span{x t_w}`. That span is `m` copies
//! of `V_ψ ⊗ V_ψ*` on the left factor, so the inertia of the restricted
//! form is `m` times the inertia of `A_ψ`.

use crate::error::{Error, Result};
use crate::heckeops::{self, IntertwinerMatrix};
use crate::linalg::{self, Certificate, Mat, Method, Pivot, SignatureReport};
use crate::rational::{to_f64, Q};
use crate::rootsys::{CartanType, RootDatum, WeylGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct ClassData {
    /// Representative element index of each class.
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<usize>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// A finite group given by its multiplication on element indices; index 0
/// is the identity.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, x: usize, y: usize) -> usize;
    fn inverse(&self, x: usize) -> usize;
    fn generators(&self) -> Vec<usize>;
}

impl FiniteGroup for WeylGroup {
    fn order(&self) -> usize {
        WeylGroup::order(self)
    }
    fn mul(&self, x: usize, y: usize) -> usize {
        WeylGroup::mul(self, x, y)
    }
    fn inverse(&self, x: usize) -> usize {
        WeylGroup::inverse(self, x)
    }
    fn generators(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.simple_reflection(i)).collect()
    }
}

/// Conjugacy classes of an arbitrary finite group, closing each class under
/// conjugation by the generators.
pub fn conjugacy_classes_of<G: FiniteGroup>(g: &G) -> ClassData {
    let n = g.order();
    let gens: Vec<(usize, usize)> = g.generators().into_iter().map(|x| (x, g.inverse(x))).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        class_of[x] = c;
        let mut stack = vec![x];
        let mut size = 1;
        while let Some(y) = stack.pop() {
            for &(s, si) in &gens {
                let z = g.mul(g.mul(si, y), s);
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        sizes.push(size);
    }
    ClassData { reps, sizes, class_of }
}

/// Unlabelled irreducible characters (one value per class, sorted by degree
/// then values) of a finite group whose characters are rational.
pub fn character_rows<G: FiniteGroup>(g: &G) -> Result<(ClassData, Vec<Vec<i64>>)> {
    let cd = conjugacy_classes_of(g);
    for &p in &PRIMES {
        if let Ok(mut rows) = dixon(g, &cd, p) {
            rows.sort();
            return Ok((cd, rows));
        }
    }
    Err(Error::Data("character table computation failed".into()))
}

/// Classes in order of first appearance in the enumeration (identity first).
pub fn conjugacy_classes(w: &WeylGroup) -> ClassData {
    let n = w.order();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        class_of[x] = c;
        let mut stack = vec![x];
        let mut size = 1;
        while let Some(y) = stack.pop() {
            for i in 0..w.rank() {
                let z = w.left_simple(w.right_simple(y, i), i);
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        sizes.push(size);
    }
    ClassData { reps, sizes, class_of }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRow {
    pub label: String,
    pub dim: i64,
    /// One value per class.
    pub values: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub classes: ClassData,
    pub rows: Vec<CharRow>,
}

impl CharacterTable {
    pub fn value(&self, row: usize, w: usize) -> i64 {
        self.rows[row].values[self.classes.class_of[w]]
    }

    pub fn row_of(&self, label: &str) -> Option<usize> {
        let l = normalize_label(label);
        self.rows.iter().position(|r| r.label == l)
    }

    /// `label TAB dim TAB v1,v2,...`, one line per row.
    pub fn export(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let vals: Vec<String> = r.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}\t{}\t{}", r.label, r.dim, vals.join(","));
        }
        s
    }

    /// Exact row orthogonality and `Σ dim² = |W|`.
    pub fn check_orthogonality(&self, order: usize) -> bool {
        let sizes = &self.classes.sizes;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let s: i128 = (0..sizes.len())
                    .map(|k| sizes[k] as i128 * a.values[k] as i128 * b.values[k] as i128)
                    .sum();
                let expect = if i == j { order as i128 } else { 0 };
                if s != expect {
                    return false;
                }
            }
        }
        self.rows.iter().map(|r| (r.dim * r.dim) as usize).sum::<usize>() == order
    }
}

pub fn normalize_label(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == 'x' || c == 'X' || c == '*' { '×' } else { c })
        .collect()
}

// ---------------------------------------------------------------------------
// arithmetic modulo a prime

const PRIMES: [u64; 2] = [2_147_483_647, 1_000_000_007];

fn pmod(a: i128, p: u64) -> u64 {
    a.rem_euclid(p as i128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn lift(a: u64, p: u64) -> i64 {
    if a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// Nullspace basis of an `r × c` matrix over `F_p`.
fn nullspace(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let iv = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulm(*x, iv, p);
        }
        for k in 0..rows {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                for cc in 0..cols {
                    let sub = mulm(f, m[r][cc], p);
                    m[k][cc] = (m[k][cc] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(tI − A)` over `F_p`, constant term first.
fn charpoly_mod(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut c = vec![0u64; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s: u128 = 0;
                for l in 0..n {
                    s += a[i][l] as u128 * m[l][j] as u128;
                }
                next[i][j] = (s % p as u128) as u64;
            }
            next[i][i] = (next[i][i] + c[n - k + 1]) % p;
        }
        m = next;
        let mut tr: u128 = 0;
        for i in 0..n {
            for l in 0..n {
                tr += a[i][l] as u128 * m[l][i] as u128;
            }
        }
        let tr = (tr % p as u128) as u64;
        c[n - k] = mulm((p - tr) % p, inv(k as u64, p), p);
    }
    c
}

fn eval_mod(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0u64, |acc, &c| (mulm(acc, x, p) + c) % p)
}

/// Dixon's algorithm: simultaneous eigenvectors of the class-multiplication
/// matrices over `F_p`. Returns integer character rows (unlabelled).
fn dixon<G: FiniteGroup>(w: &G, cd: &ClassData, p: u64) -> Result<Vec<Vec<i64>>> {
    let r = cd.len();
    let n = w.order();
    // m[j][l][k] = #{x ∈ C_j : class(x⁻¹ z_k) = l}
    let mut m = vec![vec![vec![0u64; r]; r]; r];
    for x in 0..n {
        let j = cd.class_of[x];
        let xi = w.inverse(x);
        for k in 0..r {
            let l = cd.class_of[w.mul(xi, cd.reps[k])];
            m[j][l][k] += 1;
        }
    }
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            let s = basis.len();
            if s == 1 {
                next.push(basis);
                continue;
            }
            // images M_j b
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|l| {
                            let mut acc: u128 = 0;
                            for k in 0..r {
                                acc += m[j][l][k] as u128 * b[k] as u128;
                            }
                            (acc % p as u128) as u64
                        })
                        .collect()
                })
                .collect();
            // coordinates: rows are ambient coordinates, [B | MB]
            let mut aug: Vec<Vec<u64>> = (0..r)
                .map(|l| basis.iter().map(|b| b[l]).chain(images.iter().map(|b| b[l])).collect())
                .collect();
            let mut row = 0;
            for c in 0..s {
                let k = (row..r).find(|&k| aug[k][c] != 0).ok_or_else(|| Error::Data("degenerate eigenspace basis".into()))?;
                aug.swap(row, k);
                let iv = inv(aug[row][c], p);
                for x in aug[row].iter_mut() {
                    *x = mulm(*x, iv, p);
                }
                for k in 0..r {
                    if k != row && aug[k][c] != 0 {
                        let f = aug[k][c];
                        for cc in 0..2 * s {
                            let sub = mulm(f, aug[row][cc], p);
                            aug[k][cc] = (aug[k][cc] + p - sub) % p;
                        }
                    }
                }
                row += 1;
            }
            // A[i][c] = coordinate i of the image of basis vector c
            let a: Vec<Vec<u64>> = (0..s).map(|i| aug[i][s..].to_vec()).collect();
            let poly = charpoly_mod(&a, p);
            let bound = cd.sizes[j] as i64;
            let mut found = 0;
            for lam in -bound..=bound {
                let lm = pmod(lam as i128, p);
                if eval_mod(&poly, lm, p) != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..s)
                    .map(|i| (0..s).map(|c| if i == c { (a[i][c] + p - lm) % p } else { a[i][c] }).collect())
                    .collect();
                let null = nullspace(shifted, s, p);
                if null.is_empty() {
                    continue;
                }
                found += null.len();
                let sub: Vec<Vec<u64>> = null
                    .iter()
                    .map(|u| {
                        (0..r)
                            .map(|l| {
                                let mut acc: u128 = 0;
                                for (i, b) in basis.iter().enumerate() {
                                    acc += u[i] as u128 * b[l] as u128;
                                }
                                (acc % p as u128) as u64
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == s {
                    break;
                }
            }
            if found != s {
                return Err(Error::Data("class matrix has non-integral eigenvalues".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Data("class matrices do not separate characters".into()));
    }
    let order = n as u64;
    let mut rows = Vec::new();
    for sp in spaces {
        let v = &sp[0];
        if v[0] == 0 {
            return Err(Error::Data("central character vanishes at the identity".into()));
        }
        let v0 = inv(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mulm(x, v0, p)).collect();
        let mut s = 0u64;
        for l in 0..r {
            s = (s + mulm(mulm(omega[l], omega[l], p), inv(cd.sizes[l] as u64 % p, p), p)) % p;
        }
        let d2 = mulm(order % p, inv(s, p), p);
        let d = (1..=((n as f64).sqrt() as u64 + 1))
            .find(|&d| (d * d) % p == d2)
            .ok_or_else(|| Error::Data("no integral degree".into()))?;
        let values: Vec<i64> = (0..r)
            .map(|l| lift(mulm(mulm(omega[l], d, p), inv(cd.sizes[l] as u64 % p, p), p), p))
            .collect();
        rows.push(values);
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Murnaghan–Nakayama

pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All ways to remove an `r`-rim hook from `lambda`, with sign `(−1)^height`.
fn remove_rim_hooks(lambda: &[usize], r: usize) -> Vec<(Vec<usize>, i64)> {
    let k = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let mu: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (k - 1 - i)).filter(|&x| x > 0).collect();
        out.push((mu, if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// `χ^λ` of the symmetric group at cycle type `cycles`.
pub fn sn_character(lambda: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_last() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    remove_rim_hooks(lambda, r).iter().map(|(mu, s)| s * sn_character(mu, rest)).sum()
}

/// `χ^{(α,β)}` of the hyperoctahedral group at signed cycle type; each cycle
/// is `(length, sign)`. `(n)×(0)` is trivial, `(0)×(n)` is the product of
/// the cycle signs.
pub fn bn_character(alpha: &[usize], beta: &[usize], cycles: &[(usize, i64)]) -> i64 {
    let Some((&(r, eps), rest)) = cycles.split_last() else {
        return if alpha.is_empty() && beta.is_empty() { 1 } else { 0 };
    };
    let a: i64 = remove_rim_hooks(alpha, r).iter().map(|(mu, s)| s * bn_character(mu, beta, rest)).sum();
    let b: i64 = remove_rim_hooks(beta, r).iter().map(|(mu, s)| s * bn_character(alpha, mu, rest)).sum();
    a + eps * b
}

/// Signed cycle type of a signed permutation matrix (column `j` has its
/// nonzero entry in row `σ(j)`).
pub fn signed_cycle_type(m: &[Vec<Q>]) -> Option<Vec<(usize, i64)>> {
    let n = m.len();
    let mut sigma = vec![0usize; n];
    let mut sign = vec![1i64; n];
    for j in 0..n {
        let mut hit = None;
        for (i, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                if hit.is_some() {
                    return None;
                }
                if row[j] == Q::one() {
                    hit = Some((i, 1));
                } else if row[j] == -Q::one() {
                    hit = Some((i, -1));
                } else {
                    return None;
                }
            }
        }
        let (i, s) = hit?;
        sigma[j] = i;
        sign[j] = s;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j] {
            continue;
        }
        let mut len = 0;
        let mut s = 1;
        let mut x = j;
        while !seen[x] {
            seen[x] = true;
            s *= sign[x];
            len += 1;
            x = sigma[x];
        }
        out.push((len, s));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Some(out)
}

pub fn fmt_partition(p: &[usize]) -> String {
    if p.is_empty() {
        return "(0)".into();
    }
    let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

pub fn fmt_bipartition(a: &[usize], b: &[usize]) -> String {
    format!("{}×{}", fmt_partition(a), fmt_partition(b))
}

/// Canonical representative of `{(α,β),(β,α)}` for type D.
fn d_canonical(a: &[usize], b: &[usize]) -> bool {
    let sa: usize = a.iter().sum();
    let sb: usize = b.iter().sum();
    sa > sb || (sa == sb && a >= b)
}

// ---------------------------------------------------------------------------
// fake degrees

/// Coefficients `s_0..s_max` of `1/det(1 − q w)` for each class.
fn molien_series(w: &WeylGroup, cd: &ClassData, max: usize) -> Vec<Vec<i64>> {
    let n = w.datum.ambient_dim;
    cd.reps
        .iter()
        .map(|&x| {
            let c = linalg::charpoly(&w.elements[x].matrix);
            let d: Vec<i64> = (0..=n).map(|j| c[n - j].to_integer().to_i64().unwrap()).collect();
            let mut s = vec![0i64; max + 1];
            s[0] = 1;
            for k in 1..=max {
                s[k] = -(1..=k.min(n)).map(|j| d[j] * s[k - j]).sum::<i64>();
            }
            s
        })
        .collect()
}

/// Smallest `k` with `ψ` occurring in `S^k(ambient)`.
fn b_value(row: &[i64], series: &[Vec<i64>], cd: &ClassData, order: usize) -> Option<usize> {
    let max = series[0].len();
    (0..max).find(|&k| {
        let s: i128 = (0..cd.len()).map(|l| cd.sizes[l] as i128 * row[l] as i128 * series[l][k] as i128).sum();
        s != 0 && s % order as i128 == 0
    })
}

const G2_LABELS: &[((i64, usize), &[&str])] = &[
    ((1, 0), &["1_1"]),
    ((1, 6), &["1_4"]),
    ((1, 3), &["1_2", "1_3"]),
    ((2, 1), &["2_1"]),
    ((2, 2), &["2_2"]),
];

const F4_LABELS: &[((i64, usize), &[&str])] = &[
    ((1, 0), &["1_1"]),
    ((1, 12), &["1_2", "1_3"]),
    ((1, 24), &["1_4"]),
    ((2, 4), &["2_1", "2_3"]),
    ((2, 16), &["2_2", "2_4"]),
    ((4, 8), &["4_1"]),
    ((4, 1), &["4_2"]),
    ((4, 7), &["4_3", "4_4"]),
    ((4, 13), &["4_5"]),
    ((9, 2), &["9_1"]),
    ((9, 6), &["9_2", "9_3"]),
    ((9, 10), &["9_4"]),
    ((6, 6), &["6_1", "6_2"]),
    ((12, 4), &["12"]),
    ((16, 5), &["16"]),
    ((8, 3), &["8_1", "8_3"]),
    ((8, 9), &["8_2", "8_4"]),
];

/// Simple reflection indices of a long and a short simple root.
fn long_short(t: CartanType) -> (usize, usize) {
    match t {
        CartanType::G2 => (0, 1),
        _ => (3, 0),
    }
}

// ---------------------------------------------------------------------------

pub fn character_table(w: &WeylGroup) -> Result<CharacterTable> {
    let cd = conjugacy_classes(w);
    let mut raw = None;
    for &p in &PRIMES {
        if let Ok(rows) = dixon(w, &cd, p) {
            raw = Some(rows);
            break;
        }
    }
    let raw = raw.ok_or_else(|| Error::Data("character table computation failed".into()))?;
    let order = w.order();
    let d = &w.datum;
    let mut labelled: Vec<Option<String>> = vec![None; raw.len()];
    let find = |target: &[i64]| raw.iter().position(|r| r.as_slice() == target);
    match d.cartan_type {
        CartanType::A => {
            let types: Vec<Vec<usize>> = cd
                .reps
                .iter()
                .map(|&x| signed_cycle_type(&w.elements[x].matrix).unwrap().iter().map(|c| c.0).collect())
                .collect();
            for lam in partitions(d.rank + 1) {
                let v: Vec<i64> = types.iter().map(|t| sn_character(&lam, t)).collect();
                let i = find(&v).ok_or_else(|| Error::Data(format!("no row for {}", fmt_partition(&lam))))?;
                labelled[i] = Some(fmt_partition(&lam));
            }
        }
        CartanType::B | CartanType::C | CartanType::D => {
            let n = d.rank;
            let types: Vec<Vec<(usize, i64)>> =
                cd.reps.iter().map(|&x| signed_cycle_type(&w.elements[x].matrix).unwrap()).collect();
            for k in 0..=n {
                for a in partitions(k) {
                    for b in partitions(n - k) {
                        let v: Vec<i64> = types.iter().map(|t| bn_character(&a, &b, t)).collect();
                        let name = fmt_bipartition(&a, &b);
                        if d.cartan_type != CartanType::D {
                            let i = find(&v).ok_or_else(|| Error::Data(format!("no row for {name}")))?;
                            labelled[i] = Some(name);
                        } else if a != b {
                            if !d_canonical(&a, &b) {
                                continue;
                            }
                            let i = find(&v).ok_or_else(|| Error::Data(format!("no row for {name}")))?;
                            labelled[i] = Some(name);
                        } else {
                            // restriction splits into two rows; order by character vector
                            let mut pair = None;
                            'outer: for i in 0..raw.len() {
                                for j in 0..raw.len() {
                                    if i != j && (0..v.len()).all(|l| raw[i][l] + raw[j][l] == v[l]) && raw[i][0] == raw[j][0] {
                                        pair = Some(if raw[i] > raw[j] { (i, j) } else { (j, i) });
                                        break 'outer;
                                    }
                                }
                            }
                            let (i, j) = pair.ok_or_else(|| Error::Data(format!("no split rows for {name}")))?;
                            labelled[i] = Some(format!("{name}+"));
                            labelled[j] = Some(format!("{name}-"));
                        }
                    }
                }
            }
        }
        CartanType::G2 | CartanType::F4 => {
            let names = if d.cartan_type == CartanType::G2 { G2_LABELS } else { F4_LABELS };
            let series = molien_series(w, &cd, d.n_positive());
            let (long, short) = long_short(d.cartan_type);
            let cl = cd.class_of[w.simple_reflection(long)];
            let cs = cd.class_of[w.simple_reflection(short)];
            let mut groups: BTreeMap<(i64, usize), Vec<usize>> = BTreeMap::new();
            for (i, r) in raw.iter().enumerate() {
                let b = b_value(r, &series, &cd, order).ok_or_else(|| Error::Data("no b-value".into()))?;
                groups.entry((r[0], b)).or_default().push(i);
            }
            for (key, mut idx) in groups {
                let names = names
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, n)| *n)
                    .ok_or_else(|| Error::Data(format!("unexpected (dim, b) = {key:?}")))?;
                if names.len() != idx.len() {
                    return Err(Error::Data(format!("label count mismatch at {key:?}")));
                }
                // the first name goes to the row larger on the long reflection
                idx.sort_by_key(|&i| (std::cmp::Reverse(raw[i][cl] - raw[i][cs]), std::cmp::Reverse(raw[i].clone())));
                for (i, name) in idx.into_iter().zip(names) {
                    labelled[i] = Some(name.to_string());
                }
            }
        }
        _ => return Err(Error::Unsupported(d.cartan_type.to_string())),
    }
    let mut rows = Vec::new();
    for (i, r) in raw.into_iter().enumerate() {
        let label = labelled[i].clone().ok_or_else(|| Error::Data("unlabelled character".into()))?;
        rows.push(CharRow { label, dim: r[0], values: r });
    }
    rows.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
    let table = CharacterTable { classes: cd, rows };
    if !table.check_orthogonality(order) {
        return Err(Error::Data("character table fails orthogonality".into()));
    }
    Ok(table)
}

/// The relevant W-types, deduplicated, in listing order. For `D_n` with
/// `n` even the label `(n/2)×(n/2)` names the sum of the two split rows.
pub fn relevant_types(t: CartanType, rank: usize) -> Result<Vec<String>> {
    let n = rank;
    let mut out: Vec<String> = Vec::new();
    let mut push = |s: String| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    let two_rows = |m: usize, tot: usize| -> Vec<usize> { [tot - m, m].into_iter().filter(|&x| x > 0).collect() };
    match t {
        CartanType::A => {
            for m in 0..=n.div_ceil(2) {
                push(fmt_partition(&two_rows(m, n + 1)));
            }
        }
        CartanType::B | CartanType::C | CartanType::D => {
            for m in 0..=n / 2 {
                push(fmt_bipartition(&two_rows(m, n), &[]));
            }
            let top = if t == CartanType::D { n / 2 } else { n };
            for m in 0..=top {
                let a: Vec<usize> = if n - m > 0 { vec![n - m] } else { vec![] };
                let b: Vec<usize> = if m > 0 { vec![m] } else { vec![] };
                push(fmt_bipartition(&a, &b));
            }
        }
        CartanType::G2 => ["1_1", "2_1", "2_2"].iter().for_each(|s| push(s.to_string())),
        CartanType::F4 => ["1_1", "4_2", "2_3", "8_1", "9_1"].iter().for_each(|s| push(s.to_string())),
        _ => return Err(Error::Unsupported(t.to_string())),
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// isotypic blocks

/// A parabolic-idempotent model of an isotypic block.
#[derive(Debug, Clone)]
pub struct Block {
    pub rows: Vec<usize>,
    /// `m = ⟨Res ψ, λ⟩_H`.
    pub mult: usize,
    pub subset: Vec<usize>,
    /// `λ` is the sign character of `H` rather than the trivial one.
    pub twisted: bool,
    /// `b_i = x t_{w_i}`.
    pub words: Vec<usize>,
    pub x: Vec<i64>,
    /// `c(g) = ⟨x, x t_g⟩`.
    pub corr: Vec<i64>,
    pub gram0: Mat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WTypeSignature {
    pub label: String,
    pub dim: usize,
    pub n_positive: usize,
    pub n_zero: usize,
    pub n_negative: usize,
}

impl WTypeSignature {
    pub fn psd(&self) -> bool {
        self.n_negative == 0
    }
}

/// Detailed outcome of a unitarity test.
#[derive(Debug, Clone)]
pub struct UnitarityReport {
    pub chi_dominant: Vec<Q>,
    pub signature: SignatureReport,
    pub per_type: Vec<WTypeSignature>,
    /// Float-route verdict, when a prefilter was requested.
    pub float_psd: Option<bool>,
}

/// Weyl group, character table and cached blocks of one root system.
pub struct Hecke {
    pub group: WeylGroup,
    pub table: CharacterTable,
    mult: Vec<u32>,
    blocks: Vec<OnceLock<Block>>,
    split_blocks: BTreeMap<String, OnceLock<Block>>,
}

impl Hecke {
    pub fn new(t: CartanType, rank: usize) -> Result<Hecke> {
        let d = RootDatum::build(t, rank)?;
        Self::from_group(WeylGroup::new(&d)?)
    }

    pub fn from_group(group: WeylGroup) -> Result<Hecke> {
        let table = character_table(&group)?;
        let n = group.order();
        let mut mult = vec![0u32; n * n];
        // elements are enumerated by length, so y' = y s_last precedes y
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&y| group.length(y));
        for x in 0..n {
            mult[x * n] = x as u32;
        }
        for &y in order.iter().skip(1) {
            let last = *group.elements[y].word.last().unwrap();
            let prev = group.right_simple(y, last);
            for x in 0..n {
                mult[x * n + y] = group.right_simple(mult[x * n + prev] as usize, last) as u32;
            }
        }
        let blocks = (0..table.rows.len()).map(|_| OnceLock::new()).collect();
        let mut split_blocks = BTreeMap::new();
        for r in &table.rows {
            if let Some(base) = r.label.strip_suffix('+') {
                split_blocks.insert(base.to_string(), OnceLock::new());
            }
        }
        Ok(Hecke { group, table, mult, blocks, split_blocks })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.group.datum
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.group.order() + y] as usize
    }

    /// Rows named by `label`; the base label of a split pair names both.
    pub fn rows_for_label(&self, label: &str) -> Result<Vec<usize>> {
        let l = normalize_label(label);
        if let Some(i) = self.table.row_of(&l) {
            return Ok(vec![i]);
        }
        let plus = self.table.row_of(&format!("{l}+"));
        let minus = self.table.row_of(&format!("{l}-"));
        match (plus, minus) {
            (Some(a), Some(b)) => Ok(vec![a, b]),
            _ => Err(Error::UnknownLabel(label.to_string())),
        }
    }

    pub fn block_for_label(&self, label: &str) -> Result<&Block> {
        let rows = self.rows_for_label(label)?;
        if rows.len() == 1 {
            Ok(self.block(rows[0]))
        } else {
            let l = normalize_label(label);
            let cell = &self.split_blocks[&l];
            Ok(cell.get_or_init(|| self.build_block(&rows)))
        }
    }

    pub fn block(&self, row: usize) -> &Block {
        self.blocks[row].get_or_init(|| self.build_block(&[row]))
    }

    fn build_block(&self, rows: &[usize]) -> Block {
        let w = &self.group;
        let n = w.order();
        let rank = w.rank();
        // smallest multiplicity over parabolic subgroups and λ ∈ {triv, sgn}
        let mut best: Option<(usize, Vec<usize>, bool, Vec<usize>)> = None;
        for mask in 0u32..(1 << rank) {
            let subset: Vec<usize> = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
            let h = w.parabolic(&subset);
            for twisted in [false, true] {
                let ms: Vec<i64> = rows
                    .iter()
                    .map(|&r| {
                        let s: i64 = h.iter().map(|&x| self.table.value(r, x) * if twisted { w.sign(x) } else { 1 }).sum();
                        s / h.len() as i64
                    })
                    .collect();
                if ms[0] < 1 || ms.iter().any(|&m| m != ms[0]) {
                    continue;
                }
                let m = ms[0] as usize;
                if best.as_ref().is_none_or(|b| m < b.0 || (m == b.0 && h.len() > b.3.len())) {
                    best = Some((m, subset.clone(), twisted, h.clone()));
                }
            }
        }
        let (mult, subset, twisted, h) = best.expect("trivial subgroup always qualifies");
        // |W| P = Σ_w (Σ_i d_i χ_i(w)) t_w
        let p: Vec<i64> = (0..n)
            .map(|x| rows.iter().map(|&r| self.table.rows[r].dim * self.table.value(r, x)).sum())
            .collect();
        let mut x = vec![0i64; n];
        for &hh in &h {
            let lam = if twisted { w.sign(hh) } else { 1 };
            for (y, &py) in p.iter().enumerate() {
                if py != 0 {
                    x[self.mul(hh, y)] += lam * py;
                }
            }
        }
        let target = mult * rows.iter().map(|&r| self.table.rows[r].dim as usize).sum::<usize>();
        let words = self.independent_translates(&x, target);
        let support: Vec<usize> = (0..n).filter(|&z| x[z] != 0).collect();
        let mut corr = vec![0i64; n];
        for g in 0..n {
            let gi = w.inverse(g);
            corr[g] = support.iter().map(|&z| x[z] * x[self.mul(z, gi)]).sum();
        }
        let gram0: Mat = words
            .iter()
            .map(|&wi| {
                let wii = w.inverse(wi);
                words.iter().map(|&wj| Q::from_integer(BigInt::from(corr[self.mul(wj, wii)]))).collect()
            })
            .collect();
        Block { rows: rows.to_vec(), mult, subset, twisted, words, x, corr, gram0 }
    }

    /// Elements `u` such that the translates `x t_u` are linearly
    /// independent, found greedily; independence is tested modulo a prime,
    /// which implies independence over the rationals.
    fn independent_translates(&self, x: &[i64], target: usize) -> Vec<usize> {
        let n = self.group.order();
        for &p in &PRIMES {
            let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
            let mut chosen = Vec::new();
            for u in 0..n {
                let mut v = vec![0u64; n];
                for z in 0..n {
                    if x[z] != 0 {
                        v[self.mul(z, u)] = pmod(x[z] as i128, p);
                    }
                }
                for (pc, row) in &echelon {
                    if v[*pc] != 0 {
                        let f = v[*pc];
                        for (a, b) in v.iter_mut().zip(row) {
                            *a = (*a + p - mulm(f, *b, p)) % p;
                        }
                    }
                }
                if let Some(pc) = v.iter().position(|&a| a != 0) {
                    let iv = inv(v[pc], p);
                    for a in v.iter_mut() {
                        *a = mulm(*a, iv, p);
                    }
                    echelon.push((pc, v));
                    chosen.push(u);
                    if chosen.len() == target {
                        return chosen;
                    }
                }
            }
        }
        panic!("isotypic block has fewer independent translates than its dimension");
    }

    /// `G_ij = ⟨b_i, b_j r⟩` for the normalised operator `r`.
    pub fn block_form(&self, block: &Block, op: &IntertwinerMatrix) -> Mat {
        let w = &self.group;
        let r = op.normalized_element();
        let (num, den) = integerize(&r.coeffs);
        let support: Vec<usize> = (0..num.len()).filter(|&h| !num[h].is_zero()).collect();
        let k = block.words.len();
        let mut g = vec![vec![Q::zero(); k]; k];
        for i in 0..k {
            let wii = w.inverse(block.words[i]);
            for j in 0..k {
                let wj = block.words[j];
                let mut acc = BigInt::zero();
                for &h in &support {
                    let c = block.corr[self.mul(self.mul(wj, h), wii)];
                    if c != 0 {
                        acc += &num[h] * c;
                    }
                }
                g[i][j] = Q::new(acc, den.clone());
            }
        }
        g
    }

    pub fn block_form_f64(&self, block: &Block, op: &IntertwinerMatrix) -> Vec<Vec<f64>> {
        let w = &self.group;
        let r: Vec<f64> = op.normalized_element().coeffs.iter().map(to_f64).collect();
        let k = block.words.len();
        let mut g = vec![vec![0.0; k]; k];
        for i in 0..k {
            let wii = w.inverse(block.words[i]);
            for j in 0..k {
                let wj = block.words[j];
                g[i][j] = (0..r.len())
                    .filter(|&h| r[h] != 0.0)
                    .map(|h| r[h] * block.corr[self.mul(self.mul(wj, h), wii)] as f64)
                    .sum();
            }
        }
        g
    }

    /// Matrix of the operator on the block basis, `G0⁻¹ G`; its eigenvalues
    /// are those of `A_ψ`, each repeated `m` times.
    pub fn block_operator(&self, block: &Block, op: &IntertwinerMatrix) -> Mat {
        let g = self.block_form(block, op);
        linalg::solve(&block.gram0, &g).expect("block Gram matrix is nonsingular")
    }

    fn signature_of_block(&self, block: &Block, op: &IntertwinerMatrix, method: Method) -> Result<(WTypeSignature, SignatureReport)> {
        let g = self.block_form(block, op);
        let rep = linalg::psd_certify(&g, method)?;
        let m = block.mult;
        if rep.n_positive % m != 0 || rep.n_zero % m != 0 || rep.n_negative % m != 0 {
            return Err(Error::Data("block inertia not divisible by multiplicity".into()));
        }
        let label = if block.rows.len() == 1 {
            self.table.rows[block.rows[0]].label.clone()
        } else {
            self.table.rows[block.rows[0]].label.trim_end_matches(['+', '-']).to_string()
        };
        let sig = WTypeSignature {
            label,
            dim: rep.dim() / m,
            n_positive: rep.n_positive / m,
            n_zero: rep.n_zero / m,
            n_negative: rep.n_negative / m,
        };
        Ok((sig, rep))
    }

    /// Signature of `A_ψ(w0, χ)` for the W-type `label`.
    pub fn isotypic_signature(&self, chi: &[Q], label: &str) -> Result<WTypeSignature> {
        let (_, op) = heckeops::prepare(&self.group, chi)?;
        let block = self.block_for_label(label)?;
        Ok(self.signature_of_block(block, &op, Method::ExactLdl)?.0)
    }

    pub fn operator(&self, chi: &[Q]) -> Result<(Vec<Q>, IntertwinerMatrix)> {
        heckeops::prepare(&self.group, chi)
    }

    /// Signatures of all irreducible W-types.
    pub fn unitarity(&self, chi: &[Q], method: Method, prefilter: bool) -> Result<UnitarityReport> {
        let (dom, op) = self.operator(chi)?;
        let float_psd = if prefilter {
            let mut ok = true;
            for row in 0..self.table.rows.len() {
                let g = self.block_form_f64(self.block(row), &op);
                if !linalg::float_signature_f64(&g).psd {
                    ok = false;
                    break;
                }
            }
            Some(ok)
        } else {
            None
        };
        let mut per_type = Vec::new();
        let (mut pos, mut zer, mut neg) = (0, 0, 0);
        let mut pivots = Vec::new();
        let mut offset = 0;
        let mut witness = None;
        for row in 0..self.table.rows.len() {
            let block = self.block(row);
            let (sig, rep) = self.signature_of_block(block, &op, method)?;
            let d = self.table.rows[row].dim as usize;
            pos += d * sig.n_positive;
            zer += d * sig.n_zero;
            neg += d * sig.n_negative;
            if let Certificate::Pivots(ps) = &rep.certificate {
                for pv in ps {
                    pivots.push(match pv {
                        Pivot::One { index, value } => Pivot::One { index: index + offset, value: value.clone() },
                        Pivot::Two { i, j, offdiag } => Pivot::Two { i: i + offset, j: j + offset, offdiag: offdiag.clone() },
                    });
                }
            }
            offset += rep.dim();
            if witness.is_none() {
                if let Some(v) = &rep.witness {
                    witness = Some(self.lift_witness(block, v));
                }
            }
            per_type.push(sig);
        }
        let certificate = match method {
            Method::ExactLdl => Certificate::Pivots(pivots),
            Method::ExactCharpoly => Certificate::Charpoly(vec![]),
            Method::FloatEigen => Certificate::Float(vec![]),
        };
        let signature = SignatureReport {
            n_positive: pos,
            n_zero: zer,
            n_negative: neg,
            psd: neg == 0,
            method,
            certificate,
            witness,
        };
        Ok(UnitarityReport { chi_dominant: dom, signature, per_type, float_psd })
    }

    /// `Σ v_i b_i` as a vector in `C[W]`.
    fn lift_witness(&self, block: &Block, v: &[Q]) -> Vec<Q> {
        let n = self.group.order();
        let mut out = vec![Q::zero(); n];
        for (vi, &u) in v.iter().zip(&block.words) {
            if vi.is_zero() {
                continue;
            }
            for z in 0..n {
                if block.x[z] != 0 {
                    out[self.mul(z, u)] += vi * Q::from_integer(BigInt::from(block.x[z]));
                }
            }
        }
        out
    }

    /// PSD on the relevant W-types agrees with PSD on all W-types.
    pub fn relevant_suffice_check(&self, chi: &[Q]) -> Result<bool> {
        let (_, op) = self.operator(chi)?;
        let d = self.datum();
        let mut relevant_psd = true;
        for label in relevant_types(d.cartan_type, d.rank)? {
            let block = self.block_for_label(&label)?;
            if !self.signature_of_block(block, &op, Method::ExactLdl)?.0.psd() {
                relevant_psd = false;
                break;
            }
        }
        let mut all_psd = true;
        for row in 0..self.table.rows.len() {
            if !self.signature_of_block(self.block(row), &op, Method::ExactLdl)?.0.psd() {
                all_psd = false;
                break;
            }
        }
        Ok(relevant_psd == all_psd)
    }

    /// PSD on the listed W-types only.
    pub fn psd_on(&self, chi: &[Q], labels: &[String]) -> Result<bool> {
        let (_, op) = self.operator(chi)?;
        for label in labels {
            let block = self.block_for_label(label)?;
            if !self.signature_of_block(block, &op, Method::ExactLdl)?.0.psd() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Unitarity of the spherical module `L(χ)`: exact signature of the
/// normalised long intertwining operator, assembled over all W-types.
/// Builds the character table of the group, so callers testing many points
/// should keep a [`Hecke`] and call [`Hecke::unitarity`].
pub fn is_unitary_spherical(datum: &RootDatum, chi: &[Q]) -> Result<SignatureReport> {
    let h = Hecke::from_group(WeylGroup::new(datum)?)?;
    Ok(h.unitarity(chi, Method::ExactLdl, false)?.signature)
}

/// Common-denominator form of a rational vector.
fn integerize(v: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (num, den)
}

/// Fake-degree `b`-value of a row.
pub fn fake_b_value(h: &Hecke, row: usize) -> Option<usize> {
    let series = molien_series(&h.group, &h.table.classes, h.datum().n_positive());
    b_value(&h.table.rows[row].values, &series, &h.table.classes, h.group.order())
}
