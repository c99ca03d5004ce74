//! Complementary-series region data: the zero-orbit alcove lists for the
//! exceptional types, the unitary tables for `A4, B4, C4, D4, G2, F4`, and
//! the maximal-parabolic scalars used as a closed-form oracle.
//!
//! Data ships as two tab separated files compiled into the binary; setting
//! `HECKE_DATA_DIR` makes the loaders read `zero_regions.tsv` and
//! `tables.tsv` from that directory instead.

use crate::error::{Error, Result};
use crate::rational::{abs, dot, fmt_q, parse_q, parse_vec, q, Q};
use crate::rootsys::{parse_group, CartanType, RootDatum, WeylGroup};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::path::PathBuf;

const ZERO_REGIONS: &str = include_str!("../data/zero_regions.tsv");
const TABLES: &str = include_str!("../data/tables.tsv");

fn data_text(name: &str, builtin: &'static str) -> Result<String> {
    match std::env::var_os("HECKE_DATA_DIR") {
        Some(dir) => {
            let path = PathBuf::from(dir).join(name);
            std::fs::read_to_string(&path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))
        }
        None => Ok(builtin.to_string()),
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').collect()))
}

// ---------------------------------------------------------------------------
// linear constraints

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl Rel {
    fn parse(s: &str) -> Option<Rel> {
        Some(match s {
            "<" => Rel::Lt,
            "<=" => Rel::Le,
            ">" => Rel::Gt,
            ">=" => Rel::Ge,
            "=" => Rel::Eq,
            _ => return None,
        })
    }

    pub fn holds(self, a: &Q, b: &Q) -> bool {
        match self {
            Rel::Lt => a < b,
            Rel::Le => a <= b,
            Rel::Gt => a > b,
            Rel::Ge => a >= b,
            Rel::Eq => a == b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coroot: Vec<Q>,
    pub rel: Rel,
    pub bound: Q,
}

impl Constraint {
    pub fn holds(&self, chi: &[Q]) -> bool {
        self.rel.holds(&dot(&self.coroot, chi), &self.bound)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearRegion {
    pub label: String,
    pub constraints: Vec<Constraint>,
    pub source: String,
}

impl LinearRegion {
    pub fn contains(&self, chi: &[Q]) -> bool {
        self.constraints.iter().all(|c| c.holds(chi))
    }
}

fn parse_constraint(s: &str, dim: usize) -> Result<Constraint> {
    let mut parts = s.split_whitespace();
    let (v, op, b) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some(v), Some(op), Some(b), None) => (v, op, b),
        _ => return Err(Error::Data(format!("bad constraint {s:?}"))),
    };
    let coroot = parse_vec(v)?;
    if coroot.len() != dim {
        return Err(Error::Data(format!("constraint {s:?} has dimension {}", coroot.len())));
    }
    let rel = Rel::parse(op).ok_or_else(|| Error::Data(format!("bad relation {op:?}")))?;
    Ok(Constraint { coroot, rel, bound: parse_q(b)? })
}

fn zero_group(t: CartanType) -> Result<(usize, usize)> {
    // (rank, ambient dimension)
    Ok(match t {
        CartanType::G2 => (2, 3),
        CartanType::F4 => (4, 4),
        CartanType::E6 => (6, 8),
        CartanType::E7 => (7, 8),
        CartanType::E8 => (8, 8),
        _ => return Err(Error::Unsupported(format!("zero-orbit regions for {t}"))),
    })
}

#[derive(Debug, Clone, Default)]
pub struct ZeroRegions {
    pub coroots: BTreeMap<CartanType, BTreeMap<String, Vec<Q>>>,
    pub regions: BTreeMap<CartanType, Vec<LinearRegion>>,
}

pub fn load_zero_regions() -> Result<ZeroRegions> {
    parse_zero_regions(&data_text("zero_regions.tsv", ZERO_REGIONS)?)
}

pub fn parse_zero_regions(text: &str) -> Result<ZeroRegions> {
    let mut out = ZeroRegions::default();
    for (line, f) in data_lines(text) {
        if f.len() < 4 {
            return Err(Error::Data(format!("zero_regions line {line}: expected 4 or 5 fields")));
        }
        let t: CartanType = f[0].parse()?;
        let (_, dim) = zero_group(t)?;
        let source = f.get(4).map(|s| s.to_string()).unwrap_or_default();
        match f[1] {
            "coroot" => {
                let v = parse_vec(f[3])?;
                if v.len() != dim {
                    return Err(Error::Data(format!("zero_regions line {line}: wrong dimension")));
                }
                out.coroots.entry(t).or_default().insert(f[2].to_string(), v);
            }
            "zero" => {
                let constraints = f[3].split(';').map(|c| parse_constraint(c, dim)).collect::<Result<Vec<_>>>()?;
                out.regions.entry(t).or_default().push(LinearRegion { label: f[2].to_string(), constraints, source });
            }
            k => return Err(Error::Data(format!("zero_regions line {line}: unknown kind {k:?}"))),
        }
    }
    // every coroot must be a positive coroot of the datum
    for (t, cs) in &out.coroots {
        let d = RootDatum::build(*t, zero_group(*t)?.0)?;
        for (name, v) in cs {
            if d.positive_coroot_index(v).is_none() {
                return Err(Error::Data(format!("{t} {name} is not a positive coroot")));
            }
        }
    }
    Ok(out)
}

pub fn g2_chi(nu: &[Q]) -> Vec<Q> {
    vec![nu[0].clone(), &nu[0] + &nu[1], -(&nu[0] * q(2, 1)) - &nu[1]]
}

/// The `w0χ = −χ` slice of `E6` in `ν1..ν4`.
pub fn e6_chi(nu: &[Q]) -> Vec<Q> {
    let a = (&nu[0] - &nu[1]) / q(2, 1);
    let b = (&nu[0] + &nu[1]) / q(2, 1);
    vec![&a - &nu[2], &a - &nu[3], &a + &nu[3], &a + &nu[2], b.clone(), -&b, -&b, b]
}

pub fn e7_chi(nu: &[Q]) -> Vec<Q> {
    let mut v = nu[..6].to_vec();
    v.push(-&nu[6]);
    v.push(nu[6].clone());
    v
}

/// Maps the accepted input shapes (`ν` coordinates or ambient `χ`) to an
/// ambient vector.
pub fn ambient_chi(t: CartanType, v: &[Q]) -> Result<Vec<Q>> {
    let (rank, dim) = zero_group(t)?;
    let expected = if t == CartanType::E6 { 4 } else { rank };
    if v.len() == dim {
        Ok(v.to_vec())
    } else if v.len() == expected {
        Ok(match t {
            CartanType::G2 => g2_chi(v),
            CartanType::E6 => e6_chi(v),
            CartanType::E7 => e7_chi(v),
            _ => v.to_vec(),
        })
    } else {
        Err(Error::DimensionMismatch { expected: dim, got: v.len() })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub unitary: bool,
    pub matched: Option<String>,
    /// Every region containing the point; more than one entry would be an
    /// overlap in the data.
    pub all_matches: Vec<String>,
    pub chi_dominant: Vec<Q>,
}

pub fn zero_cs_membership(t: CartanType, v: &[Q]) -> Result<Membership> {
    let data = load_zero_regions()?;
    zero_cs_membership_with(&data, t, v)
}

pub fn zero_cs_membership_with(data: &ZeroRegions, t: CartanType, v: &[Q]) -> Result<Membership> {
    let d = RootDatum::build(t, zero_group(t)?.0)?;
    zero_cs_membership_in(data, &d, v)
}

/// As [`zero_cs_membership_with`], reusing a root datum of the group.
pub fn zero_cs_membership_in(data: &ZeroRegions, d: &RootDatum, v: &[Q]) -> Result<Membership> {
    let t = d.cartan_type;
    let chi = ambient_chi(t, v)?;
    let (dom, _) = d.make_dominant(&chi);
    let regions = data.regions.get(&t).map(Vec::as_slice).unwrap_or(&[]);
    let all: Vec<String> = regions.iter().filter(|r| r.contains(&dom)).map(|r| r.label.clone()).collect();
    Ok(Membership { unitary: !all.is_empty(), matched: all.first().cloned(), all_matches: all, chi_dominant: dom })
}

// ---------------------------------------------------------------------------
// predicates over ν

#[derive(Debug, Clone, PartialEq)]
enum Atom {
    Var(usize),
    AbsVar(usize),
}

#[derive(Debug, Clone, PartialEq, Default)]
struct Linear {
    constant: Q,
    terms: Vec<(Q, Atom)>,
}

impl Linear {
    fn eval(&self, nu: &[Q]) -> Result<Q> {
        let mut s = self.constant.clone();
        for (c, a) in &self.terms {
            let (i, v) = match a {
                Atom::Var(i) => (*i, nu.get(*i).cloned()),
                Atom::AbsVar(i) => (*i, nu.get(*i).map(abs)),
            };
            let v = v.ok_or(Error::DimensionMismatch { expected: i + 1, got: nu.len() })?;
            s += c * v;
        }
        Ok(s)
    }
}

fn parse_linear(s: &str) -> Result<Linear> {
    let err = || Error::Parse(format!("bad linear expression {s:?}"));
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err());
    }
    let mut out = Linear::default();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = Q::one();
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
            i += 1;
        }
        let coeff = if i > start { parse_q(&bytes[start..i].iter().collect::<String>())? } else { Q::one() };
        let atom = if i < bytes.len() && bytes[i] == 'n' {
            let s0 = i + 1;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: usize = bytes[s0..i].iter().collect::<String>().parse().map_err(|_| err())?;
            Some(Atom::Var(k.checked_sub(1).ok_or_else(err)?))
        } else if i + 1 < bytes.len() && bytes[i] == '|' && bytes[i + 1] == 'n' {
            let s0 = i + 2;
            i += 2;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: usize = bytes[s0..i].iter().collect::<String>().parse().map_err(|_| err())?;
            if i >= bytes.len() || bytes[i] != '|' {
                return Err(err());
            }
            i += 1;
            Some(Atom::AbsVar(k.checked_sub(1).ok_or_else(err)?))
        } else {
            None
        };
        match atom {
            Some(a) => out.terms.push((sign * coeff, a)),
            None if i > start => out.constant += sign * coeff,
            None => return Err(err()),
        }
        if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            return Err(err());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
struct Chain {
    exprs: Vec<Linear>,
    rels: Vec<Rel>,
}

fn parse_chain(s: &str) -> Result<Chain> {
    let mut exprs = Vec::new();
    let mut rels = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut cur = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '<' || c == '>' || c == '=' {
            let two = i + 1 < chars.len() && chars[i + 1] == '=' && c != '=';
            let op: String = if two { format!("{c}=") } else { c.to_string() };
            rels.push(Rel::parse(&op).ok_or_else(|| Error::Parse(format!("bad relation in {s:?}")))?);
            exprs.push(parse_linear(&cur)?);
            cur.clear();
            i += if two { 2 } else { 1 };
        } else {
            cur.push(c);
            i += 1;
        }
    }
    exprs.push(parse_linear(&cur)?);
    if rels.is_empty() {
        return Err(Error::Parse(format!("no relation in {s:?}")));
    }
    Ok(Chain { exprs, rels })
}

/// A union of conjunctions of inequality chains in `n1, n2, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    text: String,
    alternatives: Vec<Vec<Chain>>,
}

impl Predicate {
    pub fn always() -> Predicate {
        Predicate { text: "-".into(), alternatives: vec![] }
    }

    pub fn parse(s: &str) -> Result<Predicate> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Predicate::always());
        }
        // ` | ` separates alternatives; a bare `|` delimits an absolute value
        let alts: Vec<&str> = s.split(" | ").collect();
        let alternatives = alts
            .iter()
            .map(|a| a.split(',').map(|c| parse_chain(c.trim())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Predicate { text: s.to_string(), alternatives })
    }

    pub fn is_trivial(&self) -> bool {
        self.alternatives.is_empty()
    }

    pub fn eval(&self, nu: &[Q]) -> Result<bool> {
        if self.alternatives.is_empty() {
            return Ok(true);
        }
        for alt in &self.alternatives {
            let mut ok = true;
            'chains: for ch in alt {
                let vals = ch.exprs.iter().map(|e| e.eval(nu)).collect::<Result<Vec<_>>>()?;
                for (k, r) in ch.rels.iter().enumerate() {
                    if !r.holds(&vals[k], &vals[k + 1]) {
                        ok = false;
                        break 'chains;
                    }
                }
            }
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

// ---------------------------------------------------------------------------
// tables

#[derive(Debug, Clone)]
pub struct TableRow {
    pub group: String,
    pub cartan_type: CartanType,
    pub rank: usize,
    pub orbit_label: String,
    pub base: Vec<Q>,
    pub directions: Vec<Vec<Q>>,
    pub chamber: Predicate,
    pub region: Predicate,
    pub centralizer: String,
    pub source: String,
    pub note: String,
}

impl TableRow {
    pub fn n_params(&self) -> usize {
        self.directions.len()
    }

    pub fn chi(&self, nu: &[Q]) -> Result<Vec<Q>> {
        if nu.len() != self.directions.len() {
            return Err(Error::DimensionMismatch { expected: self.directions.len(), got: nu.len() });
        }
        let mut v = self.base.clone();
        for (d, x) in self.directions.iter().zip(nu) {
            for (a, b) in v.iter_mut().zip(d) {
                *a += b * x;
            }
        }
        Ok(v)
    }

    pub fn is_exception(&self) -> bool {
        self.orbit_label.starts_with('*')
    }

    /// Orbit label without the exception mark.
    pub fn name(&self) -> &str {
        self.orbit_label.trim_start_matches('*')
    }

    /// Parts of a classical orbit label such as `(2^311)` or `(44)+`.
    pub fn partition(&self) -> Option<Vec<usize>> {
        parse_partition_label(self.name())
    }

    pub fn is_very_even(&self) -> bool {
        self.cartan_type == CartanType::D && (self.name().ends_with('+') || self.name().ends_with('-'))
    }

    /// The printed region, chamber included; exceptional rows without an
    /// explicit region use the centralizer annotation.
    pub fn verdict(&self, nu: &[Q]) -> Result<bool> {
        if nu.len() != self.n_params() {
            return Err(Error::DimensionMismatch { expected: self.n_params(), got: nu.len() });
        }
        if !self.chamber.eval(nu)? {
            return Ok(false);
        }
        if !self.region.is_trivial() || self.cartan_type.is_classical() {
            return self.region.eval(nu);
        }
        annotation_verdict(&self.centralizer, nu)
    }
}

pub fn parse_partition_label(label: &str) -> Option<Vec<usize>> {
    let inner = label.trim().trim_end_matches(['+', '-']);
    let inner = inner.strip_prefix('(')?.strip_suffix(')')?;
    let chars: Vec<char> = inner.chars().collect();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let p = chars[i].to_digit(10)? as usize;
        i += 1;
        let mut mult = 1;
        if i < chars.len() && chars[i] == '^' {
            mult = chars.get(i + 1)?.to_digit(10)? as usize;
            i += 2;
        }
        parts.extend(std::iter::repeat_n(p, mult));
    }
    parts.sort_unstable();
    Some(parts)
}

#[derive(Debug, Clone, Default)]
pub struct Tables {
    pub rows: BTreeMap<String, Vec<TableRow>>,
}

impl Tables {
    pub fn table(&self, group: &str) -> Result<&[TableRow]> {
        self.rows
            .get(&group.to_ascii_uppercase())
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Unsupported(format!("no table for {group}")))
    }

    pub fn row(&self, group: &str, orbit: &str) -> Result<&TableRow> {
        let want = normalize_orbit(orbit);
        self.table(group)?
            .iter()
            .find(|r| normalize_orbit(&r.orbit_label) == want)
            .ok_or_else(|| Error::UnknownOrbit(orbit.to_string()))
    }
}

fn normalize_orbit(s: &str) -> String {
    s.trim().trim_start_matches('*').replace([' ', '\u{0303}'], "").to_ascii_lowercase()
}

pub fn load_tables() -> Result<Tables> {
    parse_tables(&data_text("tables.tsv", TABLES)?)
}

pub fn parse_tables(text: &str) -> Result<Tables> {
    let mut out = Tables::default();
    for (line, f) in data_lines(text) {
        if f.len() < 9 || f[1] != "row" {
            return Err(Error::Data(format!("tables line {line}: malformed")));
        }
        let (t, rank) = parse_group(f[0])?;
        let base = parse_vec(f[3])?;
        let directions = if f[4].trim() == "-" {
            vec![]
        } else {
            f[4].split(';').map(parse_vec).collect::<Result<Vec<_>>>()?
        };
        let dim = RootDatum::build(t, rank)?.ambient_dim;
        if base.len() != dim || directions.iter().any(|d| d.len() != dim) {
            return Err(Error::Data(format!("tables line {line}: dimension mismatch")));
        }
        let row = TableRow {
            group: f[0].to_string(),
            cartan_type: t,
            rank,
            orbit_label: f[2].to_string(),
            base,
            directions,
            chamber: Predicate::parse(f[5])?,
            region: Predicate::parse(f[6])?,
            centralizer: f[7].to_string(),
            source: f[8].to_string(),
            note: f.get(9).map(|s| s.to_string()).unwrap_or_default(),
        };
        validate_row(&row).map_err(|e| Error::Data(format!("tables line {line}: {e}")))?;
        out.rows.entry(row.group.clone()).or_default().push(row);
    }
    Ok(out)
}

/// At `ν = 0` the template must be a Weyl conjugate of the row's `ȟ/2`:
/// for classical rows the string decomposition at `ν = 0` gives back the
/// row's partition (very even rows are checked by the multiset of
/// entries), and every template must be orthogonal-length consistent.
fn validate_row(row: &TableRow) -> Result<()> {
    let zero = vec![Q::zero(); row.n_params()];
    let chi = row.chi(&zero)?;
    match row.cartan_type {
        CartanType::A | CartanType::B | CartanType::C | CartanType::D => {
            let parts = row.partition().ok_or_else(|| Error::Data(format!("bad label {}", row.orbit_label)))?;
            if row.is_very_even() {
                let mut a: Vec<Q> = chi.iter().map(abs).collect();
                a.sort();
                let mut b: Vec<Q> = parts.iter().flat_map(|&p| (0..p / 2).map(move |j| q(2 * j as i64 + 1, 2))).collect();
                b.sort();
                if a != b {
                    return Err(Error::Data("very even template does not match the partition".into()));
                }
                return Ok(());
            }
            let d = crate::strings::decompose(row.cartan_type, &chi)?;
            if d.orbit_partition != parts {
                return Err(Error::Data(format!(
                    "template at ν=0 attaches to {:?}, not {}",
                    d.orbit_partition, row.orbit_label
                )));
            }
        }
        _ => {
            let d = RootDatum::build(row.cartan_type, row.rank)?;
            let (dom, _) = d.make_dominant(&chi);
            // ȟ/2 pairs with every simple coroot in {0, 1/2, 1}
            for c in &d.simple_coroots {
                let p = dot(c, &dom);
                if p != Q::zero() && p != q(1, 2) && p != Q::one() {
                    return Err(Error::Data(format!("{} is not a middle element", row.orbit_label)));
                }
            }
        }
    }
    Ok(())
}

/// The centralizer conventions of the exceptional tables: `A1` means
/// `0 ≤ ν < 1/2`, `A1^l` means `0 ≤ ν < 1`, torus parts vanish, an `A_k`
/// string has its last `k − [k/2]` entries zero. `C3` is the alcove of a
/// group with dual `sp(6)`; `B2` and `G2` use their zero-orbit regions in
/// the table's coordinates.
pub fn annotation_verdict(annotation: &str, nu: &[Q]) -> Result<bool> {
    let half = q(1, 2);
    let mut k = 0usize;
    let mut take = |n: usize| -> Result<Vec<Q>> {
        let v = nu.get(k..k + n).ok_or(Error::DimensionMismatch { expected: k + n, got: nu.len() })?.to_vec();
        k += n;
        Ok(v)
    };
    let mut ok = true;
    for part in annotation.split('+') {
        let part = part.trim();
        if part == "1" {
            continue;
        }
        let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
        let mult: usize = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
        let name = &part[digits.len()..];
        for _ in 0..mult {
            match name {
                "A1" => ok &= abs(&take(1)?[0]) < half,
                "A1^l" => ok &= abs(&take(1)?[0]) < Q::one(),
                "T1" => ok &= take(1)?[0].is_zero(),
                "T2" => ok &= take(2)?.iter().all(Zero::is_zero),
                "C3" => ok &= take(3)?.iter().all(|x| abs(x) < half),
                "B2" => {
                    let v = take(2)?;
                    ok &= abs(&v[0]) + abs(&v[1]) < half;
                }
                "G2" => {
                    let v = take(2)?;
                    let zr = load_zero_regions()?;
                    ok &= !v[0].is_negative()
                        && !v[1].is_negative()
                        && zr.regions[&CartanType::G2].iter().any(|r| r.contains(&g2_chi(&v)));
                }
                n if n.starts_with('A') => {
                    let r: usize = n[1..].parse().map_err(|_| Error::Parse(format!("bad factor {n}")))?;
                    let v = take(r)?;
                    let keep = r / 2;
                    ok &= v[keep..].iter().all(Zero::is_zero) && v[..keep].iter().all(|x| !x.is_negative() && x < &half);
                }
                other => return Err(Error::Parse(format!("unknown centralizer factor {other}"))),
            }
        }
    }
    if k != nu.len() {
        return Err(Error::DimensionMismatch { expected: k, got: nu.len() });
    }
    Ok(ok)
}

pub fn table_verdict(group: &str, orbit: &str, nu: &[Q]) -> Result<bool> {
    load_tables()?.row(group, orbit)?.verdict(nu)
}

/// Solves `A x = b` for a possibly non-square `A` (columns independent);
/// `None` when inconsistent.
fn solve_columns(cols: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = b.len();
    let k = cols.len();
    let mut m: Vec<Vec<Q>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).chain([b[i].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !m[i][k].is_zero()) || pivots.len() != k {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][k].clone();
    }
    Some(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attachment {
    pub orbit: String,
    /// Parameter solutions `ν` over the Weyl conjugates of `χ`.
    pub nu_solutions: Vec<Vec<Q>>,
    pub unitary: bool,
    pub matched: Option<String>,
}

/// Attaches an exceptional parameter to the first listed row whose template
/// family contains a Weyl conjugate of `χ`; the zero orbit is the fallback.
/// Unitary iff some solution `ν` satisfies the row's region.
pub fn attach_exceptional(w: &WeylGroup, tables: &Tables, zero: &ZeroRegions, chi: &[Q]) -> Result<Attachment> {
    let t = w.datum.cartan_type;
    let group = format!("{t}");
    let images: Vec<Vec<Q>> = {
        let mut v: Vec<Vec<Q>> = w.elements.iter().map(|e| e.apply(chi)).collect();
        v.sort();
        v.dedup();
        v
    };
    for row in tables.table(&group)? {
        let mut sols: Vec<Vec<Q>> = Vec::new();
        for y in &images {
            let rhs: Vec<Q> = y.iter().zip(&row.base).map(|(a, b)| a - b).collect();
            if row.directions.is_empty() {
                if rhs.iter().all(Zero::is_zero) {
                    sols.push(vec![]);
                }
            } else if let Some(x) = solve_columns(&row.directions, &rhs) {
                sols.push(x);
            }
        }
        if sols.is_empty() {
            continue;
        }
        sols.sort();
        sols.dedup();
        let mut unitary = false;
        for s in &sols {
            if row.verdict(s)? {
                unitary = true;
                break;
            }
        }
        return Ok(Attachment { orbit: row.name().to_string(), nu_solutions: sols, unitary, matched: None });
    }
    let m = zero_cs_membership_with(zero, t, chi)?;
    Ok(Attachment { orbit: "0".into(), nu_solutions: vec![], unitary: m.unitary, matched: m.matched })
}

// ---------------------------------------------------------------------------
// maximal parabolic scalars

/// The two scalars for the relevant types `(n+k−m)×(m)` and
/// `(m,n+k−m)×(0)` of the induced module from `sp(2n)×gl(k)` in type
/// `B_{n+k}`.
pub fn maximal_parabolic_scalars(n: i64, k: i64, m: i64, nu: &Q) -> Result<(Q, Q)> {
    if m < 0 || m > k {
        return Err(Error::Parse(format!("need 0 <= m <= k, got m={m}, k={k}")));
    }
    let mut a = Q::one();
    let mut b = Q::one();
    for j in 0..m {
        let x = q(2 * n + k - 2 * j, 2);
        let y = q(k - 2 * j, 2);
        let f1 = ratio(&(&x - nu), &(&x + nu))?;
        let f2 = ratio(&(&y - nu), &(&y + nu))?;
        a *= &f1;
        b *= f1 * f2;
    }
    Ok((a, b))
}

fn ratio(num: &Q, den: &Q) -> Result<Q> {
    if den.is_zero() {
        return Err(Error::Pole);
    }
    Ok(num / den)
}

pub fn fmt_region(r: &LinearRegion) -> String {
    r.constraints
        .iter()
        .map(|c| format!("({}) {} {}", c.coroot.iter().map(fmt_q).collect::<Vec<_>>().join(","), c.rel.symbol(), fmt_q(&c.bound)))
        .collect::<Vec<_>>()
        .join("; ")
}

// ---------------------------------------------------------------------------
// row verification

/// One grid point of a row where the strings method and the printed region
/// disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct RowMismatch {
    pub nu: Vec<Q>,
    pub strings: bool,
    pub table: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowCheck {
    pub group: String,
    pub orbit: String,
    /// Grid points inside the chamber.
    pub scanned: usize,
    /// Points whose strings decomposition lands on this row's orbit.
    pub attached: usize,
    pub mismatches: Vec<RowMismatch>,
    pub inside: Option<Vec<Q>>,
    pub outside: Option<Vec<Q>>,
    /// `(ν, table verdict, operator verdict)` at the representative points.
    pub operator: Vec<(Vec<Q>, bool, bool)>,
    pub operator_skipped: bool,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.inside.is_some() && self.mismatches.is_empty() && self.operator.iter().all(|(_, t, o)| t == o)
    }
}

/// Grid of `ν` with step `1/den` and `|ν_i| ≤ max` satisfying the chamber.
/// Negative coordinates are only generated when the chamber uses `|n_i|`.
pub fn row_grid(row: &TableRow, den: i64, max: i64) -> Result<Vec<Vec<Q>>> {
    let k = row.n_params();
    let lo = if row.chamber.text().contains("|n") { -max * den } else { 0 };
    let values: Vec<Q> = (lo..=max * den).map(|x| q(x, den)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let nu: Vec<Q> = idx.iter().map(|&i| values[i].clone()).collect();
        if row.chamber.eval(&nu)? {
            out.push(nu);
        }
        let mut j = 0;
        loop {
            if j == k {
                return Ok(out);
            }
            idx[j] += 1;
            if idx[j] < values.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// The verdict does not change under a small move along any coordinate that
/// stays in the chamber.
fn is_interior(row: &TableRow, nu: &[Q], eps: &Q) -> Result<bool> {
    let here = row.verdict(nu)?;
    for i in 0..nu.len() {
        for sgn in [1, -1] {
            let mut m = nu.to_vec();
            m[i] += eps * Q::from_integer(sgn.into());
            if row.chamber.eval(&m)? && row.verdict(&m)? != here {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// In/out point test of a classical table row: on a rational grid, every
/// point whose strings decomposition attaches to the row's orbit must get
/// the same verdict from the strings method and the printed region. With a
/// `Hecke` of the row's type, one inside and one outside point are also
/// decided by the intertwining operator (very even rows are skipped there).
pub fn check_classical_row(row: &TableRow, den: i64, max: i64, hecke: Option<&crate::wrep::Hecke>) -> Result<RowCheck> {
    use crate::strings::unitary_via_strings;
    let want = row.partition().ok_or_else(|| Error::UnknownOrbit(row.orbit_label.clone()))?;
    let grid = row_grid(row, den, max)?;
    let eps = q(1, 4 * den);
    let mut check = RowCheck {
        group: row.group.clone(),
        orbit: row.orbit_label.clone(),
        scanned: grid.len(),
        attached: 0,
        mismatches: Vec::new(),
        inside: None,
        outside: None,
        operator: Vec::new(),
        operator_skipped: hecke.is_none() || row.is_very_even(),
    };
    // (any point, interior point) for each verdict
    let mut reps: [(Option<Vec<Q>>, Option<Vec<Q>>); 2] = [(None, None), (None, None)];
    for nu in grid {
        let t = row.verdict(&nu)?;
        // the strings method does not separate the two very even orbits, so
        // those rows are only checked for consistent ingestion
        if !row.is_very_even() {
            let chi = row.chi(&nu)?;
            let s = match unitary_via_strings(row.cartan_type, &chi) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if s.decomposition.orbit_partition != want {
                continue;
            }
            if s.unitary != t {
                check.mismatches.push(RowMismatch { nu: nu.clone(), strings: s.unitary, table: t });
            }
        }
        check.attached += 1;
        let slot = &mut reps[usize::from(t)];
        if slot.1.is_none() && is_interior(row, &nu, &eps)? {
            slot.1 = Some(nu.clone());
        }
        if slot.0.is_none() {
            slot.0 = Some(nu);
        }
    }
    let [out, inn] = reps;
    check.inside = inn.1.or(inn.0);
    check.outside = out.1.or(out.0);
    if let (Some(h), false) = (hecke, check.operator_skipped) {
        for nu in [&check.inside, &check.outside].into_iter().flatten() {
            let chi = row.chi(nu)?;
            let r = h.unitarity(&chi, crate::linalg::Method::ExactLdl, false)?;
            check.operator.push((nu.clone(), row.verdict(nu)?, r.signature.psd));
        }
    }
    Ok(check)
}

/// In/out point test of an exceptional table row. Grid points are attached
/// through [`attach_exceptional`]; those landing on another row are skipped.
/// With a `Hecke`, the representative inside and outside points (and any
/// `extra` points of the row) are decided by the intertwining operator,
/// float prefilter first, exact LDLᵀ always.
pub fn check_exceptional_row(
    row: &TableRow,
    w: &WeylGroup,
    tables: &Tables,
    zero: &ZeroRegions,
    den: i64,
    max: i64,
    extra: &[Vec<Q>],
    hecke: Option<&crate::wrep::Hecke>,
) -> Result<RowCheck> {
    let grid = row_grid(row, den, max)?;
    let eps = q(1, 4 * den);
    let mut check = RowCheck {
        group: row.group.clone(),
        orbit: row.orbit_label.clone(),
        scanned: grid.len(),
        attached: 0,
        mismatches: Vec::new(),
        inside: None,
        outside: None,
        operator: Vec::new(),
        operator_skipped: hecke.is_none(),
    };
    let mut reps: [(Option<Vec<Q>>, Option<Vec<Q>>); 2] = [(None, None), (None, None)];
    for nu in grid {
        let a = attach_exceptional(w, tables, zero, &row.chi(&nu)?)?;
        if a.orbit != row.name() {
            continue;
        }
        check.attached += 1;
        let slot = &mut reps[usize::from(a.unitary)];
        if slot.1.is_none() && is_interior(row, &nu, &eps)? {
            slot.1 = Some(nu.clone());
        }
        if slot.0.is_none() {
            slot.0 = Some(nu);
        }
    }
    let [out, inn] = reps;
    check.inside = inn.1.or(inn.0);
    check.outside = out.1.or(out.0);
    if let Some(h) = hecke {
        let points: Vec<Vec<Q>> = [&check.inside, &check.outside].into_iter().flatten().cloned().chain(extra.iter().cloned()).collect();
        for nu in points {
            let chi = row.chi(&nu)?;
            let a = attach_exceptional(w, tables, zero, &chi)?;
            let r = h.unitarity(&chi, crate::linalg::Method::ExactLdl, true)?;
            check.operator.push((nu, a.unitary, r.signature.psd));
        }
    }
    Ok(check)
}
