//! String (multisegment) decomposition of spherical parameters for the
//! classical types, the attached nilpotent orbit, and the centralizer test.
//!
//! Entries of `χ` are sorted into blocks `A_τ` with `±ν ≡ τ (mod ℤ)`,
//! `0 ≤ τ ≤ 1/2`. Generic blocks produce mirrored pairs of strings; the
//! special block (`τ = 1/2` for `B`, `τ = 0` for `C` and `D`) produces
//! increasing strings that pair with their negatives, the unpaired ones
//! forming the distinguished tail.

use crate::error::{Error, Result};
use crate::rational::{abs, fmt_q, frac, parse_q, q, Q};
use crate::rootsys::CartanType;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorType {
    /// `GL(ℓ)`, from type `A`.
    A,
    /// `O(2ℓ+1)`.
    B,
    /// `Sp(2ℓ)`.
    C,
    /// `O(2ℓ)`; `D1` is a one-dimensional torus.
    D,
    /// A torus whose parameters must vanish.
    T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralizerFactor {
    pub factor_type: FactorType,
    pub rank: usize,
    /// Absolute values sorted ascending; signed centers for `A`.
    pub nu: Vec<Q>,
}

impl fmt::Display for CentralizerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factor_type {
            FactorType::A => write!(f, "GL{}", self.rank),
            t => write!(f, "{:?}{}", t, self.rank),
        }
    }
}

/// One string of the pair part: `M⁺ = center + ½[len]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairString {
    pub tau: Q,
    pub string: Vec<Q>,
    pub part: usize,
    /// `|center|` (signed center in type `A`).
    pub nu: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StringDecomposition {
    pub cartan_type: CartanType,
    /// Strings produced in each block (increasing `M⁺` strings).
    pub tau_blocks: BTreeMap<Q, Vec<Vec<Q>>>,
    pub pairs: Vec<PairString>,
    /// Unpaired symmetric strings of the special block.
    pub distinguished: Vec<Vec<Q>>,
    /// All parts, ascending.
    pub orbit_partition: Vec<usize>,
    /// Distinguished parts, ascending.
    pub tail: Vec<usize>,
    pub h_half: Vec<Q>,
    pub nu_full: Vec<Q>,
    pub nu_factors: Vec<CentralizerFactor>,
}

fn half_string(l: usize) -> Vec<Q> {
    (0..l).map(|j| q(2 * j as i64 - (l as i64 - 1), 2)).collect()
}

fn tau_of(x: &Q) -> Q {
    let f = frac(&abs(x));
    let g = Q::one() - &f;
    if g < f {
        g
    } else {
        f
    }
}

fn take(ms: &mut BTreeMap<Q, usize>, x: &Q) -> bool {
    match ms.get_mut(x) {
        Some(c) if *c > 0 => {
            *c -= 1;
            if *c == 0 {
                ms.remove(x);
            }
            true
        }
        _ => false,
    }
}

fn count(ms: &BTreeMap<Q, usize>, x: &Q) -> usize {
    ms.get(x).copied().unwrap_or(0)
}

/// Mirrored pairs `(M⁺, M⁻ = −M⁺)`; returns the `M⁺` strings.
fn generic_strings(mut ms: BTreeMap<Q, usize>) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    while let Some(a) = ms.keys().next_back().cloned() {
        let neg = -&a;
        if a.is_zero()
            && count(&ms, &a) < 2 {
                break;
            }
        take(&mut ms, &a);
        take(&mut ms, &neg);
        let mut plus = vec![neg.clone()];
        let mut k = Q::one();
        loop {
            let down = &a - &k;
            let up = -&down;
            let ok = if down.is_zero() { count(&ms, &down) >= 2 } else { count(&ms, &down) >= 1 && count(&ms, &up) >= 1 };
            if !ok {
                break;
            }
            take(&mut ms, &down);
            take(&mut ms, &up);
            plus.push(up);
            k += Q::one();
        }
        out.push(plus);
    }
    out
}

/// Maximal increasing strings, each seeded by the smallest remaining entry.
fn increasing_strings(mut ms: BTreeMap<Q, usize>) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    while let Some(b) = ms.keys().next().cloned() {
        take(&mut ms, &b);
        let mut s = vec![b.clone()];
        let mut next = b + Q::one();
        while take(&mut ms, &next) {
            s.push(next.clone());
            next += Q::one();
        }
        out.push(s);
    }
    out
}

fn negated(s: &[Q]) -> Vec<Q> {
    s.iter().rev().map(|x| -x).collect()
}

fn center(s: &[Q]) -> Q {
    s.iter().fold(Q::zero(), |a, x| a + x) / Q::from_integer((s.len() as i64).into())
}

/// `(T, special τ, extra zero)` conventions per type.
fn special_tau(t: CartanType) -> Result<(Q, bool)> {
    match t {
        CartanType::B => Ok((q(1, 2), false)),
        CartanType::C => Ok((Q::zero(), true)),
        CartanType::D => Ok((Q::zero(), false)),
        _ => Err(Error::Unsupported(format!("string decomposition for type {t}"))),
    }
}

pub fn decompose(t: CartanType, chi: &[Q]) -> Result<StringDecomposition> {
    if t == CartanType::A {
        return decompose_a(chi);
    }
    let (special, extra_zero) = special_tau(t)?;
    let mut blocks: BTreeMap<Q, BTreeMap<Q, usize>> = BTreeMap::new();
    for x in chi {
        let b = blocks.entry(tau_of(x)).or_default();
        *b.entry(x.clone()).or_default() += 1;
        *b.entry(-x).or_default() += 1;
    }
    if extra_zero {
        *blocks.entry(Q::zero()).or_default().entry(Q::zero()).or_default() += 1;
    }
    let mut tau_blocks = BTreeMap::new();
    let mut pairs = Vec::new();
    let mut distinguished: Vec<Vec<Q>> = Vec::new();
    for (tau, ms) in blocks {
        if tau == special {
            let strings = increasing_strings(ms);
            let mut used = vec![false; strings.len()];
            for i in 0..strings.len() {
                if used[i] {
                    continue;
                }
                let neg = negated(&strings[i]);
                if let Some(j) = (i + 1..strings.len()).find(|&j| !used[j] && strings[j] == neg) {
                    used[i] = true;
                    used[j] = true;
                    pairs.push(PairString {
                        tau: tau.clone(),
                        string: strings[i].clone(),
                        part: strings[i].len(),
                        nu: abs(&center(&strings[i])),
                    });
                }
            }
            for (i, s) in strings.iter().enumerate() {
                if !used[i] {
                    distinguished.push(s.clone());
                }
            }
            tau_blocks.insert(tau, strings);
        } else {
            let strings = generic_strings(ms);
            for s in &strings {
                pairs.push(PairString { tau: tau.clone(), string: s.clone(), part: s.len(), nu: abs(&center(s)) });
            }
            tau_blocks.insert(tau, strings);
        }
    }
    // validate the distinguished tail
    let odd_tail = t != CartanType::B;
    let mut tail: Vec<usize> = Vec::new();
    for s in &distinguished {
        if negated(s) != *s {
            return Err(Error::InvalidDistinguished(format!("string {} is not symmetric", fmt_list(s))));
        }
        if (s.len() % 2 == 1) != odd_tail {
            return Err(Error::InvalidDistinguished(format!("string {} has the wrong parity", fmt_list(s))));
        }
        if tail.contains(&s.len()) {
            return Err(Error::InvalidDistinguished("repeated distinguished part".into()));
        }
        tail.push(s.len());
    }
    tail.sort_unstable();
    if t == CartanType::D && tail.len() % 2 == 1 {
        return Err(Error::InvalidDistinguished("odd number of distinguished parts".into()));
    }
    pairs.sort_by(|a, b| (a.part, &a.nu).cmp(&(b.part, &b.nu)));
    let mut orbit_partition: Vec<usize> = pairs.iter().flat_map(|p| [p.part, p.part]).chain(tail.iter().copied()).collect();
    orbit_partition.sort_unstable();
    if t == CartanType::D && orbit_partition.iter().all(|p| p % 2 == 0) {
        return Err(Error::VeryEvenOrbit);
    }
    // h/2 and ν in n coordinates
    let mut h_half = Vec::new();
    let mut nu_full = Vec::new();
    for p in &pairs {
        for x in half_string(p.part) {
            h_half.push(x);
            nu_full.push(p.nu.clone());
        }
    }
    let mut zeros = 0usize;
    for s in &distinguished {
        for x in s {
            if x.is_positive() {
                h_half.push(x.clone());
                nu_full.push(Q::zero());
            } else if x.is_zero() {
                zeros += 1;
            }
        }
    }
    let zeros = (zeros - usize::from(extra_zero)) / 2;
    for _ in 0..zeros {
        h_half.push(Q::zero());
        nu_full.push(Q::zero());
    }
    let nu_factors = factors_from_pairs(t, &pairs, &tail)?;
    let d = StringDecomposition {
        cartan_type: t,
        tau_blocks,
        pairs,
        distinguished,
        orbit_partition,
        tail,
        h_half,
        nu_full,
        nu_factors,
    };
    validate_partition(t, chi.len(), &d.orbit_partition)?;
    if !reconstructs(&d, chi) {
        return Err(Error::Data("string decomposition does not reconstruct the parameter".into()));
    }
    Ok(d)
}

/// `|ȟ/2 + ν|` reproduces `|χ|` as multisets.
pub fn reconstructs(d: &StringDecomposition, chi: &[Q]) -> bool {
    if d.cartan_type == CartanType::A {
        let mut a: Vec<Q> = d.pairs.iter().flat_map(|p| p.string.clone()).collect();
        let mut b = chi.to_vec();
        a.sort();
        b.sort();
        return a == b;
    }
    let mut a: Vec<Q> = d.h_half.iter().zip(&d.nu_full).map(|(h, n)| abs(&(h + n))).collect();
    let mut b: Vec<Q> = chi.iter().map(abs).collect();
    a.sort();
    b.sort();
    a == b
}

fn validate_partition(t: CartanType, n: usize, parts: &[usize]) -> Result<()> {
    let total: usize = parts.iter().sum();
    let (size, even_mult_parity) = match t {
        CartanType::A => (n, None),
        CartanType::B => (2 * n, Some(1)),
        CartanType::C => (2 * n + 1, Some(0)),
        CartanType::D => (2 * n, Some(0)),
        _ => return Err(Error::Unsupported(t.to_string())),
    };
    if total != size {
        return Err(Error::InvalidPartition(format!("parts sum to {total}, expected {size}")));
    }
    if let Some(par) = even_mult_parity {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in parts {
            *mult.entry(p).or_default() += 1;
        }
        for (p, m) in mult {
            if p % 2 == par && m % 2 == 1 {
                return Err(Error::InvalidPartition(format!("part {p} has odd multiplicity")));
            }
        }
    }
    Ok(())
}

/// Factor type for a part `p` occurring in `ℓ` pairs, plus once more when
/// it also sits in the distinguished tail.
fn factor_type(t: CartanType, p: usize, in_tail: bool) -> FactorType {
    let symplectic_dual = t == CartanType::B;
    let odd = p % 2 == 1;
    // sp: odd parts carry Sp, even parts O; so: the reverse
    if odd == symplectic_dual {
        FactorType::C
    } else if in_tail {
        FactorType::B
    } else {
        FactorType::D
    }
}

fn factors_from_pairs(t: CartanType, pairs: &[PairString], tail: &[usize]) -> Result<Vec<CentralizerFactor>> {
    let mut groups: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for p in pairs {
        groups.entry(p.part).or_default().push(p.nu.clone());
    }
    Ok(groups
        .into_iter()
        .map(|(p, mut nu)| {
            nu.sort();
            CentralizerFactor { factor_type: factor_type(t, p, tail.contains(&p)), rank: nu.len(), nu }
        })
        .collect())
}

/// Centralizer factor types of a partition for the dual algebra of `t`
/// (`sp` for `B`, `so` for `C` and `D`, `gl` for `A`), in ascending part
/// order; parts of odd multiplicity count one copy towards the tail.
pub fn centralizer_factors(t: CartanType, partition: &[usize]) -> Result<Vec<(FactorType, usize)>> {
    let n = match t {
        CartanType::A => partition.iter().sum(),
        CartanType::C => (partition.iter().sum::<usize>().saturating_sub(1)) / 2,
        _ => partition.iter().sum::<usize>() / 2,
    };
    validate_partition(t, n, partition)?;
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in partition {
        *mult.entry(p).or_default() += 1;
    }
    let mut out = Vec::new();
    for (p, m) in mult {
        if t == CartanType::A {
            out.push((FactorType::A, m));
        } else if m >= 2 {
            out.push((factor_type(t, p, m % 2 == 1), m / 2));
        }
    }
    Ok(out)
}

/// Type `A`: maximal increasing strings per class modulo `ℤ`; strings of
/// equal length give a `GL` factor whose parameter is their centers.
pub fn decompose_a(chi: &[Q]) -> Result<StringDecomposition> {
    let mut blocks: BTreeMap<Q, BTreeMap<Q, usize>> = BTreeMap::new();
    for x in chi {
        *blocks.entry(frac(x)).or_default().entry(x.clone()).or_default() += 1;
    }
    let mut tau_blocks = BTreeMap::new();
    let mut pairs = Vec::new();
    for (tau, ms) in blocks {
        let strings = increasing_strings(ms);
        for s in &strings {
            pairs.push(PairString { tau: tau.clone(), string: s.clone(), part: s.len(), nu: center(s) });
        }
        tau_blocks.insert(tau, strings);
    }
    pairs.sort_by(|a, b| (a.part, &a.nu).cmp(&(b.part, &b.nu)));
    let mut orbit_partition: Vec<usize> = pairs.iter().map(|p| p.part).collect();
    orbit_partition.sort_unstable();
    let mut h_half = Vec::new();
    let mut nu_full = Vec::new();
    for p in &pairs {
        for x in half_string(p.part) {
            h_half.push(x);
            nu_full.push(p.nu.clone());
        }
    }
    let mut groups: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for p in &pairs {
        groups.entry(p.part).or_default().push(p.nu.clone());
    }
    let nu_factors = groups.into_values().map(|mut nu| {
            nu.sort();
            CentralizerFactor { factor_type: FactorType::A, rank: nu.len(), nu }
        })
        .collect();
    let d = StringDecomposition {
        cartan_type: CartanType::A,
        tau_blocks,
        pairs,
        distinguished: vec![],
        orbit_partition,
        tail: vec![],
        h_half,
        nu_full,
        nu_factors,
    };
    if !reconstructs(&d, chi) {
        return Err(Error::Data("string decomposition does not reconstruct the parameter".into()));
    }
    Ok(d)
}

// ---------------------------------------------------------------------------
// 0-complementary series predicates

/// The explicit `C_n`/`D_n` description: some index `i` with
/// `ν_1 ≤ … ≤ ν_i < 1−ν_{i−1} < ν_{i+1} < … < ν_n < 1` and an odd number
/// of the values `1−ν_l` (`l < i`) between consecutive `ν_j < ν_{j+1}`,
/// `j ≥ i`. Input sorted ascending, nonnegative.
pub fn alternating_alcoves(nu: &[Q]) -> bool {
    let n = nu.len();
    if n == 0 {
        return true;
    }
    let one = Q::one();
    // 1-based index i in 1..=n
    'outer: for i in 1..=n {
        let prev = if i >= 2 { nu[i - 2].clone() } else { Q::zero() };
        let bound = &one - &prev;
        if nu[i - 1] >= bound {
            continue;
        }
        if i < n {
            if bound >= nu[i] {
                continue;
            }
            for j in i..n - 1 {
                if nu[j] >= nu[j + 1] {
                    continue 'outer;
                }
            }
            if nu[n - 1] >= one {
                continue;
            }
            for j in i..n {
                // between ν_j and ν_{j+1} (1-based), i.e. nu[j-1], nu[j]
                let lo = &nu[j - 1];
                let hi = &nu[j];
                let c = (0..i - 1).filter(|&l| {
                    let v = &one - &nu[l];
                    &v > lo && &v < hi
                }).count();
                if c % 2 == 0 {
                    continue 'outer;
                }
            }
        }
        return true;
    }
    false
}

pub fn zero_cs_predicate(f: &CentralizerFactor) -> bool {
    let mut nu: Vec<Q> = f.nu.iter().map(abs).collect();
    nu.sort();
    let half = q(1, 2);
    match f.factor_type {
        FactorType::T => f.nu.iter().all(|x| x.is_zero()),
        FactorType::A => {
            let mut c = f.nu.clone();
            c.sort();
            let mut neg: Vec<Q> = c.iter().map(|x| -x).collect();
            neg.sort();
            c == neg && c.last().zip(c.first()).is_none_or(|(hi, lo)| hi - lo < Q::one())
        }
        FactorType::C => nu.iter().all(|x| x < &half),
        FactorType::B => alternating_alcoves(&nu),
        FactorType::D => alternating_alcoves(&nu) && (f.rank.is_multiple_of(2) || nu.first().is_none_or(|x| x.is_zero())),
    }
}

#[derive(Debug, Clone)]
pub struct StringsVerdict {
    pub unitary: bool,
    pub decomposition: StringDecomposition,
    pub per_factor: Vec<(CentralizerFactor, bool)>,
}

pub fn unitary_via_strings(t: CartanType, chi: &[Q]) -> Result<StringsVerdict> {
    let d = decompose(t, chi)?;
    let per_factor: Vec<(CentralizerFactor, bool)> = d.nu_factors.iter().map(|f| (f.clone(), zero_cs_predicate(f))).collect();
    Ok(StringsVerdict { unitary: per_factor.iter().all(|(_, ok)| *ok), decomposition: d, per_factor })
}

// ---------------------------------------------------------------------------
// rendering

fn fmt_list(v: &[Q]) -> String {
    let s: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", s.join(","))
}

/// Groups of equal paired parts separated by `;`, the tail after `;;`.
pub fn render_orbit(d: &StringDecomposition) -> String {
    let mut groups: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &d.pairs {
        *groups.entry(p.part).or_default() += if d.cartan_type == CartanType::A { 1 } else { 2 };
    }
    let body: Vec<String> = groups
        .iter()
        .map(|(p, m)| vec![p.to_string(); *m].join(","))
        .collect();
    let mut s = format!("({}", body.join(";"));
    if !d.tail.is_empty() {
        let t: Vec<String> = d.tail.iter().map(|p| p.to_string()).collect();
        s.push_str(";;");
        s.push_str(&t.join(","));
    }
    s.push(')');
    s
}

/// `ν` grouped like the orbit; ascending within a group.
pub fn render_nu(d: &StringDecomposition) -> String {
    let mut groups: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for p in &d.pairs {
        groups.entry(p.part).or_default().push(p.nu.clone());
    }
    let body: Vec<String> = groups
        .values()
        .map(|v| {
            let mut v = v.clone();
            v.sort();
            v.iter().map(fmt_q).collect::<Vec<_>>().join(",")
        })
        .collect();
    let mut s = format!("({}", body.join(";"));
    if !d.tail.is_empty() {
        s.push_str(";; ");
    }
    s.push(')');
    s
}

/// Parsed form of a rendered orbit/ν pair: groups of `(part, ν values)` and
/// the tail.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedOrbit {
    pub groups: Vec<(usize, Vec<Q>)>,
    pub tail: Vec<usize>,
}

pub fn parse_rendered(orbit: &str, nu: &str, cartan_type: CartanType) -> Result<RenderedOrbit> {
    let strip = |s: &str| -> Result<String> {
        let s = s.trim();
        s.strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .map(|x| x.to_string())
            .ok_or_else(|| Error::Parse(format!("expected parentheses in {s}")))
    };
    let o = strip(orbit)?;
    let v = strip(nu)?;
    let (o_body, o_tail) = match o.split_once(";;") {
        Some((a, b)) => (a.to_string(), Some(b.to_string())),
        None => (o.clone(), None),
    };
    let v_body = v.split_once(";;").map(|(a, _)| a.to_string()).unwrap_or(v.clone());
    let tail: Vec<usize> = match o_tail {
        Some(t) if !t.trim().is_empty() => t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?,
        _ => vec![],
    };
    let og: Vec<&str> = if o_body.trim().is_empty() { vec![] } else { o_body.split(';').collect() };
    let vg: Vec<&str> = if v_body.trim().is_empty() { vec![] } else { v_body.split(';').collect() };
    if og.len() != vg.len() {
        return Err(Error::Parse("orbit and ν have different group counts".into()));
    }
    let per = if cartan_type == CartanType::A { 1 } else { 2 };
    let mut groups = Vec::new();
    for (a, b) in og.iter().zip(&vg) {
        let parts: Vec<usize> = a
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        let nus: Vec<Q> = b.split(',').map(|x| parse_q(x.trim())).collect::<Result<_>>()?;
        if parts.is_empty() || parts.iter().any(|&p| p != parts[0]) || parts.len() != per * nus.len() {
            return Err(Error::Parse(format!("malformed group {a} / {b}")));
        }
        groups.push((parts[0], nus));
    }
    Ok(RenderedOrbit { groups, tail })
}

impl RenderedOrbit {
    pub fn of(d: &StringDecomposition) -> RenderedOrbit {
        let mut groups: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
        for p in &d.pairs {
            groups.entry(p.part).or_default().push(p.nu.clone());
        }
        RenderedOrbit {
            groups: groups
                .into_iter()
                .map(|(p, mut v)| {
                    v.sort();
                    (p, v)
                })
                .collect(),
            tail: d.tail.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_vec;

    fn v(s: &str) -> Vec<Q> {
        parse_vec(s).unwrap()
    }

    #[test]
    fn generic_block_examples() {
        let d = decompose(CartanType::B, &v("0,0,1,1,1,1,2,3,3,4,4,5")).unwrap();
        assert_eq!(d.tau_blocks[&Q::zero()], vec![v("-5,-4,-3,-2,-1,0,1"), v("-4,-3"), v("-1,0,1")]);
        let d = decompose(CartanType::B, &v("1/4,1/4,3/4,5/4,5/4")).unwrap();
        assert_eq!(d.tau_blocks[&q(1, 4)], vec![v("-5/4,-1/4,3/4"), v("-5/4,-1/4")]);
        assert_eq!(render_orbit(&d), "(2,2;3,3)");
        assert_eq!(render_nu(&d), "(3/4;1/4)");
    }

    #[test]
    fn special_block_example() {
        let d = decompose(CartanType::B, &v("1/2,1/2,1/2,3/2,3/2,3/2,5/2,5/2,5/2,5/2,7/2")).unwrap();
        assert_eq!(d.distinguished, vec![v("-7/2,-5/2,-3/2,-1/2,1/2,3/2,5/2,7/2")]);
        assert_eq!(render_orbit(&d), "(1,1;6,6;;8)");
        assert_eq!(render_nu(&d), "(5/2;0;; )");
    }

    #[test]
    fn small_cases() {
        let d = decompose(CartanType::B, &v("0,0")).unwrap();
        assert_eq!(d.orbit_partition, vec![1, 1, 1, 1]);
        let d = decompose(CartanType::B, &v("3/2,1/2")).unwrap();
        assert_eq!(render_orbit(&d), "(;;4)");
        let d = decompose(CartanType::C, &v("0")).unwrap();
        assert_eq!(render_orbit(&d), "(1,1;;1)");
        assert_eq!(decompose(CartanType::D, &v("1/2,1/2")).err(), Some(Error::VeryEvenOrbit));
    }

    #[test]
    fn predicates() {
        let c = |t, nu: &str| zero_cs_predicate(&CentralizerFactor { factor_type: t, rank: v(nu).len(), nu: v(nu) });
        assert!(c(FactorType::C, "0,1/4"));
        assert!(!c(FactorType::D, "3/4,7/2"));
        assert!(!c(FactorType::C, "5/2"));
        assert!(c(FactorType::C, "1/4"));
        assert!(!c(FactorType::C, "1/2"));
        assert!(c(FactorType::D, "0"));
        assert!(!c(FactorType::D, "1/8"));
        assert!(c(FactorType::B, "3/4"));
        assert!(!c(FactorType::B, "1"));
        assert!(c(FactorType::B, "1/4,5/8"));
        assert!(!c(FactorType::B, "1/2,5/8"));
        assert!(c(FactorType::B, "1/8,1/4,5/8"));
    }

    #[test]
    fn centralizer_of_partitions() {
        let f = centralizer_factors(CartanType::B, &[1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 6, 6, 7, 7, 8]).unwrap();
        let names: Vec<String> = f.iter().map(|(t, r)| format!("{t:?}{r}")).collect();
        assert_eq!(names, ["C1", "D2", "C2", "D1", "C1"]);
        let f = centralizer_factors(CartanType::C, &[1, 1, 2, 2, 3]).unwrap();
        assert_eq!(f, vec![(FactorType::D, 1), (FactorType::C, 1)]);
        assert!(centralizer_factors(CartanType::C, &[1, 1, 3, 4]).is_err());
    }
}
