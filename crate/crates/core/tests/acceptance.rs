//! Acceptance criteria 1 to 16. Each test prints one line
//! `criterion N: PASS|FAIL ...` with its pinned tolerance and wall time.
//! Every comparison is exact over the rationals unless a line says
//! otherwise; the float prefilter of criterion 10 is always confirmed by the
//! exact LDLᵀ signature.

use hecke_core::heckeops::{full_signature, isotypic_scalar_sign_and_triv, long_element_with_word, sign_scalar_closed_form};
use hecke_core::linalg::{self, Method};
use hecke_core::ramified::{
    extended_intertwiner, fmt_components, good_root_data, good_root_data_for, rank_one_scalar, Congruence,
    DeltaCharacter, RankOneKind,
};
use hecke_core::rational::{dot, fmt_vec, parse_vec, q, qi};
use hecke_core::regions::{
    attach_exceptional, check_classical_row, maximal_parabolic_scalars, g2_chi, load_tables, load_zero_regions,
    zero_cs_membership_in,
};
use hecke_core::rootsys::{weyl_order, CartanType, RootDatum, WeylGroup};
use hecke_core::strings::{decompose, render_nu, render_orbit, unitary_via_strings};
use hecke_core::wrep::{is_unitary_spherical, Hecke};
use hecke_core::Q;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::error::Error;
use std::time::{Duration, Instant};

type Res<T> = Result<T, Box<dyn Error>>;

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Res<Check> {
    Ok(Check { pass, detail: detail.into() })
}

/// Runs one criterion, prints its line, and fails the test on FAIL, on an
/// error, or when the wall time exceeds the budget.
fn criterion(n: u32, title: &str, tolerance: &str, budget: Duration, f: impl FnOnce() -> Res<Check>) {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(c) => (c.pass, c.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = elapsed <= budget;
    let ok = pass && in_time;
    println!(
        "criterion {n}: {} {title}; {detail}; tolerance {tolerance}; {:.2}s of {}s{}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { " (over budget)" },
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn v(s: &str) -> Vec<Q> {
    parse_vec(s).unwrap()
}

fn group(t: CartanType, n: usize) -> WeylGroup {
    WeylGroup::new(&RootDatum::build(t, n).unwrap()).unwrap()
}

/// The dominant `χ = Σ b_j α̌_j` with `⟨α_i, χ⟩ = a_i`.
fn from_simple_values(d: &RootDatum, a: &[Q]) -> Vec<Q> {
    let n = d.rank;
    let m: linalg::Mat = (0..n).map(|i| (0..n).map(|j| dot(&d.simple_roots[i], &d.simple_coroots[j])).collect()).collect();
    let rhs: linalg::Mat = a.iter().map(|x| vec![x.clone()]).collect();
    let b = linalg::solve(&m, &rhs).expect("Cartan matrix is invertible");
    let mut chi = vec![Q::zero(); d.ambient_dim];
    for (j, row) in b.iter().enumerate() {
        for (c, x) in chi.iter_mut().zip(&d.simple_coroots[j]) {
            *c += &row[0] * x;
        }
    }
    chi
}

/// Random rational dominant hermitian parameter; in type A the simple
/// values are mirrored so that `−w0 χ = χ`.
fn random_hermitian(d: &RootDatum, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let n = d.rank;
    let mut a: Vec<Q> = (0..n)
        .map(|_| {
            let den = rng.gen_range(1..=8);
            q(rng.gen_range(0..=3 * den), den)
        })
        .collect();
    if d.cartan_type == CartanType::A {
        for i in 0..n / 2 {
            a[n - 1 - i] = a[i].clone();
        }
    }
    from_simple_values(d, &a)
}

/// Sorted tuples `x_1 ≥ … ≥ x_k ≥ 0` with entries `j/den ≤ max`.
fn decreasing(k: usize, den: i64, max: i64) -> Vec<Vec<Q>> {
    fn rec(k: usize, top: i64, den: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<Q>>) {
        if cur.len() == k {
            out.push(cur.iter().map(|&x| q(x, den)).collect());
            return;
        }
        for x in 0..=top {
            cur.push(x);
            rec(k, x, den, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, max * den, den, &mut Vec::new(), &mut out);
    out
}

fn c2_grid() -> Vec<Vec<Q>> {
    decreasing(2, 8, 3)
}

/// Full grid of criterion 8: B2, B3, C2, C3 at denominator 4, entries ≤ 3.
fn classical_grid() -> Vec<(CartanType, usize, Vec<Vec<Q>>)> {
    let mut out = Vec::new();
    for (t, n) in [(CartanType::B, 2), (CartanType::B, 3), (CartanType::C, 2), (CartanType::C, 3)] {
        out.push((t, n, decreasing(n, 4, 3)));
    }
    out
}

/// Simple-coroot values on the step-1/4 grid of `[0, 3]²`.
fn g2_grid() -> Vec<Vec<Q>> {
    (0..=12).flat_map(|a| (0..=12).map(move |b| g2_chi(&[q(a, 4), q(b, 4)]))).collect()
}

#[test]
fn criterion_01_a1_complementary_series() {
    criterion(1, "A1 complementary series", "exact", Duration::from_secs(1), || {
        let d = RootDatum::build(CartanType::A, 1)?;
        let w = WeylGroup::new(&d)?;
        let mut bad = Vec::new();
        for k in 0..=8 {
            let c = q(k, 4);
            let chi = vec![&c / qi(2), -&c / qi(2)];
            let iso = is_unitary_spherical(&d, &chi)?.psd;
            let full = full_signature(&w, &chi, Method::ExactCharpoly)?.psd;
            if iso != (k <= 4) || full != iso {
                bad.push(format!("c={c}: isotypic {iso} full {full}"));
            }
        }
        check(bad.is_empty(), format!("9 values of c, both routes unitary iff c <= 1 {bad:?}"))
    });
}

#[test]
fn criterion_02_closed_form_scalars() {
    criterion(2, "closed-form trivial and sign scalars", "exact", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let types = [
            (CartanType::A, 2),
            (CartanType::A, 3),
            (CartanType::A, 4),
            (CartanType::B, 2),
            (CartanType::B, 3),
            (CartanType::B, 4),
            (CartanType::C, 2),
            (CartanType::C, 3),
            (CartanType::C, 4),
            (CartanType::D, 4),
            (CartanType::G2, 2),
        ];
        let mut bad = Vec::new();
        let mut total = 0;
        for (t, n) in types {
            let w = group(t, n);
            for _ in 0..50 {
                let chi = random_hermitian(&w.datum, &mut rng);
                if !w.datum.is_dominant(&chi) || !w.datum.is_hermitian_point(&chi) {
                    bad.push(format!("{t}{n} sampler gave {}", fmt_vec(&chi)));
                    continue;
                }
                let (sign, triv) = isotypic_scalar_sign_and_triv(&w, &chi)?;
                let closed = sign_scalar_closed_form(&w.datum, &chi)?;
                if sign != closed || triv != qi(1) {
                    bad.push(format!("{t}{n} {}: sign {sign} closed {closed} triv {triv}", fmt_vec(&chi)));
                }
                total += 1;
            }
        }
        check(bad.is_empty(), format!("{total} parameters over 11 types, mismatches {bad:?}"))
    });
}

#[test]
fn criterion_03_reduced_word_independence() {
    criterion(3, "reduced-word independence of r_w0", "exact", Duration::from_secs(5), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut detail = Vec::new();
        let mut pass = true;
        for (t, n) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::B, 3)] {
            let w = group(t, n);
            let words = w.reduced_words(w.longest, 6);
            pass &= words.len() >= 2;
            for _ in 0..5 {
                let chi: Vec<Q> = (0..w.datum.ambient_dim).map(|_| q(rng.gen_range(-12..=12), rng.gen_range(1..=6))).collect();
                let first = long_element_with_word(&w, &words[0], &chi);
                pass &= words[1..].iter().all(|wd| long_element_with_word(&w, wd, &chi) == first);
            }
            detail.push(format!("{t}{n}: {} words", words.len()));
        }
        check(pass, format!("5 random parameters each, {}", detail.join(", ")))
    });
}

#[test]
fn criterion_04_sp4_spherical_region() {
    criterion(4, "Sp(4) spherical unitary region", "exact", Duration::from_secs(60), || {
        let h = Hecke::new(CartanType::C, 2)?;
        let grid = c2_grid();
        let mut bad = Vec::new();
        for chi in &grid {
            let expect = &chi[0] + &chi[1] <= qi(1) || *chi == v("2,1");
            let got = h.unitarity(chi, Method::ExactLdl, false)?.signature.psd;
            if got != expect {
                bad.push(fmt_vec(chi));
            }
        }
        check(bad.is_empty(), format!("{} grid points, unitary iff n1+n2 <= 1 or (2,1), mismatches {bad:?}", grid.len()))
    });
}

#[test]
fn criterion_05_string_worked_examples() {
    criterion(5, "string decomposition worked examples", "byte-identical text", Duration::from_secs(1), || {
        let mut bad = Vec::new();
        let d = decompose(CartanType::B, &v("0,0,1,1,1,1,2,3,3,4,4,5"))?;
        if d.tau_blocks[&Q::zero()] != vec![v("-5,-4,-3,-2,-1,0,1"), v("-4,-3"), v("-1,0,1")] {
            bad.push("A_0 strings".to_string());
        }
        if (render_orbit(&d).as_str(), render_nu(&d).as_str()) != ("(2,2;3,3;7,7)", "(7/2;0;2)") {
            bad.push(format!("A_0 render {} {}", render_orbit(&d), render_nu(&d)));
        }
        let d = decompose(CartanType::B, &v("1/4,1/4,3/4,5/4,5/4"))?;
        if d.tau_blocks[&q(1, 4)] != vec![v("-5/4,-1/4,3/4"), v("-5/4,-1/4")] {
            bad.push("A_1/4 strings".to_string());
        }
        if (render_orbit(&d).as_str(), render_nu(&d).as_str()) != ("(2,2;3,3)", "(3/4;1/4)") {
            bad.push(format!("A_1/4 render {} {}", render_orbit(&d), render_nu(&d)));
        }
        let d = decompose(CartanType::B, &v("1/2,1/2,1/2,3/2,3/2,3/2,5/2,5/2,5/2,5/2,7/2"))?;
        if d.distinguished != vec![v("-7/2,-5/2,-3/2,-1/2,1/2,3/2,5/2,7/2")] {
            bad.push("A_1/2 distinguished string".to_string());
        }
        if (render_orbit(&d).as_str(), render_nu(&d).as_str()) != ("(1,1;6,6;;8)", "(5/2;0;; )") {
            bad.push(format!("A_1/2 render {} {}", render_orbit(&d), render_nu(&d)));
        }
        let d = decompose(CartanType::B, &combined_example())?;
        let (orbit, nu) = (render_orbit(&d), render_nu(&d));
        if orbit != "(1,1;2,2,2,2;3,3,3,3;6,6;7,7;;8)" || nu != "(5/2;3/4,7/2;0,1/4;0;2;; )" {
            bad.push(format!("combined {orbit} {nu}"));
        }
        check(bad.is_empty(), format!("combined orbit {orbit} nu {nu}, mismatches {bad:?}"))
    });
}

/// The union of the three blocks of the worked examples, type B rank 28.
fn combined_example() -> Vec<Q> {
    v("0,0,1,1,1,1,2,3,3,4,4,5,1/4,1/4,3/4,5/4,5/4,1/2,1/2,1/2,3/2,3/2,3/2,5/2,5/2,5/2,5/2,7/2")
}

#[test]
fn criterion_06_strings_verdict_table() {
    criterion(6, "strings verdict table", "exact", Duration::from_secs(1), || {
        let s = unitary_via_strings(CartanType::B, &combined_example())?;
        let got: Vec<(String, Vec<Q>, bool)> =
            s.per_factor.iter().map(|(f, ok)| (format!("{:?}{}", f.factor_type, f.rank), f.nu.clone(), *ok)).collect();
        let want = vec![
            ("C1".to_string(), v("5/2"), false),
            ("D2".to_string(), v("3/4,7/2"), false),
            ("C2".to_string(), v("0,1/4"), true),
            ("D1".to_string(), v("0"), true),
            ("C1".to_string(), v("2"), false),
        ];
        let column: Vec<&str> = got.iter().map(|g| if g.2 { "yes" } else { "no" }).collect();
        check(got == want && !s.unitary, format!("per factor {column:?}, overall unitary {}", s.unitary))
    });
}

#[test]
fn criterion_07_classical_tables() {
    criterion(7, "classical tables A4 B4 C4 D4", "exact", Duration::from_secs(600), || {
        let tables = load_tables()?;
        let mut rows = 0;
        let mut failed = Vec::new();
        for g in ["A4", "B4", "C4", "D4"] {
            let (t, n) = hecke_core::rootsys::parse_group(g)?;
            let h = Hecke::new(t, n)?;
            for row in tables.table(g)? {
                let den = if row.n_params() >= 3 { 4 } else { 8 };
                let c = check_classical_row(row, den, 2, Some(&h))?;
                rows += 1;
                if !c.passed() {
                    let first = c.mismatches.first().map(|m| fmt_vec(&m.nu)).unwrap_or_default();
                    let op: Vec<String> =
                        c.operator.iter().filter(|(_, t, o)| t != o).map(|(nu, t, o)| format!("{} table {t} operator {o}", fmt_vec(nu))).collect();
                    failed.push(format!("{g} {}: {} strings mismatches (first {first}) {op:?}", c.orbit, c.mismatches.len()));
                }
            }
        }
        check(failed.is_empty(), format!("{rows} rows, failing {failed:?}"))
    });
}

#[test]
fn criterion_08_operator_vs_strings() {
    criterion(8, "operator vs strings on B2 B3 C2 C3", "exact", Duration::from_secs(900), || {
        let mut bad = Vec::new();
        let mut total = 0;
        for (t, n, grid) in classical_grid() {
            let h = Hecke::new(t, n)?;
            for chi in &grid {
                let op = h.unitarity(chi, Method::ExactLdl, false)?.signature.psd;
                let st = unitary_via_strings(t, chi)?.unitary;
                if op != st {
                    bad.push(format!("{t}{n} {}", fmt_vec(chi)));
                }
                total += 1;
            }
        }
        check(bad.is_empty(), format!("{total} dominant points, disagreements {bad:?}"))
    });
}

#[test]
fn criterion_09_g2() {
    criterion(9, "G2 table and zero-orbit regions", "exact", Duration::from_secs(120), || {
        let h = Hecke::new(CartanType::G2, 2)?;
        let tables = load_tables()?;
        let zero = load_zero_regions()?;
        let mut bad = Vec::new();
        let grid = g2_grid();
        for chi in &grid {
            let op = h.unitarity(chi, Method::ExactLdl, false)?.signature.psd;
            let a = attach_exceptional(&h.group, &tables, &zero, chi)?;
            if op != a.unitary {
                bad.push(format!("{} orbit {}", fmt_vec(chi), a.orbit));
            }
        }
        check(bad.is_empty(), format!("{} grid points, mismatches {bad:?}", grid.len()))
    });
}

#[test]
fn criterion_10_f4_designated_points() {
    criterion(10, "F4 designated points", "float prefilter, exact LDL confirmation", Duration::from_secs(3600), || {
        let h = Hecke::new(CartanType::F4, 4)?;
        let tables = load_tables()?;
        let zero = load_zero_regions()?;
        // (row, ν, printed verdict)
        let points: &[(&str, &str, bool)] = &[
            ("F4(a1)", "", true),
            ("F4(a3)", "", true),
            ("C3", "0", true),
            ("C3", "3/4", false),
            ("B3", "0", true),
            ("B3", "5/4", false),
            ("A1+~A2", "0", true),
            ("A1+~A2", "3/4", false),
            ("B2", "0,0", true),
            ("B2", "3/4,0", false),
            ("A2", "0,1/4", true),
            ("A2", "3/4,0", false),
            ("A1+~A1", "0,0", true),
            ("A1+~A1", "1/4,1/4", true),
            ("A1+~A1", "0,7/8", true),
            ("A1+~A1", "3/4,0", false),
            ("C3(a1)", "0", true),
            ("C3(a1)", "3/4", false),
            ("~A1+A2", "0", true),
            ("~A1+A2", "3/4", false),
            ("~A2", "0,0", true),
            ("~A2", "3/4,0", false),
            ("~A1", "0,0,1/4", true),
            ("~A1", "3/4,0,0", false),
            ("A1", "0,0,0", true),
            ("A1", "3/4,0,0", false),
        ];
        let mut bad = Vec::new();
        for (orbit, nu, want) in points {
            let row = tables.row("F4", orbit)?;
            let nu = if nu.is_empty() { vec![] } else { v(nu) };
            let chi = row.chi(&nu)?;
            let a = attach_exceptional(&h.group, &tables, &zero, &chi)?;
            let r = h.unitarity(&chi, Method::ExactLdl, true)?;
            let ok = a.orbit == row.name() && a.unitary == *want && r.signature.psd == *want;
            if !ok {
                bad.push(format!(
                    "{orbit} {}: attached {} table {} operator {} float {:?}",
                    fmt_vec(&nu),
                    a.orbit,
                    a.unitary,
                    r.signature.psd,
                    r.float_psd
                ));
            }
        }
        check(bad.is_empty(), format!("{} points on 13 rows, exception set in and out, mismatches {bad:?}", points.len()))
    });
}

#[test]
fn criterion_11_relevant_types_suffice() {
    criterion(11, "relevant W-types suffice", "exact", Duration::from_secs(900), || {
        let mut bad = Vec::new();
        let mut total = 0;
        let mut sets: Vec<(CartanType, usize, Vec<Vec<Q>>)> = vec![(CartanType::C, 2, c2_grid())];
        sets.extend(classical_grid());
        sets.push((CartanType::G2, 2, g2_grid()));
        for (t, n, grid) in sets {
            let h = Hecke::new(t, n)?;
            for chi in &grid {
                if !h.relevant_suffice_check(chi)? {
                    bad.push(format!("{t}{n} {}", fmt_vec(chi)));
                }
                total += 1;
            }
        }
        check(bad.is_empty(), format!("{total} points of criteria 4, 8, 9, failures {bad:?}"))
    });
}

#[test]
fn criterion_12_maximal_parabolic_scalars() {
    criterion(12, "maximal parabolic scalar sign vs operator", "exact", Duration::from_secs(10), || {
        let c2 = Hecke::new(CartanType::C, 2)?;
        let b2 = Hecke::new(CartanType::B, 2)?;
        let mut bad = Vec::new();
        for k in 0..24 {
            let nu = q(k, 16);
            let (_, b) = maximal_parabolic_scalars(1, 1, 1, &nu)?;
            let sign_ok = match k.cmp(&8) {
                std::cmp::Ordering::Less => b.is_positive(),
                std::cmp::Ordering::Equal => b.is_zero(),
                std::cmp::Ordering::Greater => b.is_negative(),
            };
            let chi = vec![nu.clone(), q(1, 2)];
            let in_c2 = c2.unitarity(&chi, Method::ExactLdl, false)?.signature.psd;
            let in_b2 = b2.unitarity(&chi, Method::ExactLdl, false)?.signature.psd;
            let predicted = !b.is_negative();
            if !sign_ok || in_c2 != predicted || in_b2 != predicted {
                bad.push(format!("nu={nu}: scalar {b} C2 {in_c2} B2 {in_b2}"));
            }
        }
        check(bad.is_empty(), format!("24 points on (nu,1/2), sign change at nu=1/2, mismatches {bad:?}"))
    });
}

fn weyl(t: CartanType, n: usize) -> usize {
    if n == 0 {
        1
    } else {
        weyl_order(t, n) as usize
    }
}

#[test]
fn criterion_13_good_root_data() {
    criterion(13, "good roots, W_delta, R-groups", "exact", Duration::from_secs(5), || {
        let mut bad = Vec::new();
        let mut cases = 0;
        for n in 1..=5 {
            for p in 1..=n {
                let (_, g) = good_root_data_for(CartanType::C, n, &DeltaCharacter::delta_p(n, p))?;
                let mut want = hecke_core::ramified::canonical_components(CartanType::C, n - p);
                want.extend(hecke_core::ramified::canonical_components(CartanType::D, p));
                want.sort();
                let w0 = weyl(CartanType::C, n - p) * if p >= 2 { weyl(CartanType::D, p) } else { 1 };
                let wd = weyl(CartanType::C, n - p) * weyl(CartanType::C, p);
                if g.subsystem_type != want || g.w_delta0_order != w0 || g.w_delta_order != wd || g.r_group_order != 2 {
                    bad.push(format!("Sp{} delta_{p}: {}", 2 * n, fmt_components(&g.subsystem_type)));
                }
                cases += 1;
            }
        }
        let (w, g) = good_root_data_for(CartanType::C, 4, &DeltaCharacter::delta_p(4, 2))?;
        if g.r_group_at_nu(&w, &v("2,1,1,1/2")) != 1 || g.r_group_at_nu(&w, &v("2,1,1,0")) != 2 {
            bad.push("Sp8 delta_2 R(nu)".into());
        }
        // fine-types table: group, type, rank, congruence, p, Δ_δ, |R_δ|
        use CartanType::{A, B, D};
        let rows: &[(&str, CartanType, usize, Congruence, usize, &str, usize)] = &[
            ("SL(5)", A, 4, Congruence::ModuloFlip, 1, "A3", 1),
            ("SL(5)", A, 4, Congruence::ModuloFlip, 2, "A1+A2", 1),
            ("SL(6)", A, 5, Congruence::ModuloFlip, 1, "A4", 1),
            ("SL(6)", A, 5, Congruence::ModuloFlip, 2, "A1+A3", 1),
            ("SL(6)", A, 5, Congruence::ModuloFlip, 3, "A2+A2", 2),
            ("SO(5,4)", B, 4, Congruence::Exact, 1, "A1+B3", 1),
            ("SO(5,4)", B, 4, Congruence::Exact, 2, "B2+B2", 1),
            ("SO(5,4)", B, 4, Congruence::Exact, 4, "B4", 1),
            ("SO(4,3)_0", B, 3, Congruence::ModuloFlip, 1, "A1+B2", 1),
            ("SO(4,3)_0", B, 3, Congruence::ModuloFlip, 3, "B3", 1),
            ("SO(5,4)_0", B, 4, Congruence::ModuloFlip, 1, "A1+B3", 1),
            ("SO(5,4)_0", B, 4, Congruence::ModuloFlip, 2, "B2+B2", 2),
            ("SO(5,5)_0", D, 5, Congruence::ModuloFlip, 1, "D4", 2),
            ("SO(5,5)_0", D, 5, Congruence::ModuloFlip, 2, "A1+A1+A3", 2),
            ("SO(4,4)_0", D, 4, Congruence::ModuloFlip, 1, "A3", 2),
            ("SO(4,4)_0", D, 4, Congruence::ModuloFlip, 2, "A1+A1+A1+A1", 4),
        ];
        for (label, t, n, cong, p, want, r) in rows {
            let d = RootDatum::build(*t, *n)?;
            let w = WeylGroup::new(&d)?;
            let g = good_root_data(&w, &DeltaCharacter::delta_p(d.ambient_dim, *p), *cong)?;
            let got = fmt_components(&g.subsystem_type);
            if got != *want || g.r_group_order != *r || g.w_delta_order != g.w_delta0_order * g.r_group_order {
                bad.push(format!("{label} delta_{p}: {got} R {}", g.r_group_order));
            }
            cases += 1;
        }
        for (delta, want, orbit) in [("++--", "C4", 3), ("+++-", "A1+B3", 12)] {
            let (w, g) = good_root_data_for(CartanType::F4, 4, &delta.parse()?)?;
            let got = fmt_components(&g.subsystem_type);
            if got != want || g.r_group_order != 1 || w.order() / g.w_delta_order != orbit {
                bad.push(format!("F4 {delta}: {got}"));
            }
            cases += 1;
        }
        // fine W′-types: one per character of R_δ at a regular ν
        for (t, n, delta) in [(CartanType::C, 2, "+-"), (CartanType::C, 2, "--"), (CartanType::A, 3, "++--")] {
            let (w, g) = good_root_data_for(t, n, &delta.parse()?)?;
            let nu = if t == CartanType::A { v("5/7,2/7,-2/7,-5/7") } else { v("11/7,3/7") };
            let op = extended_intertwiner(&w, &g, &nu)?;
            let fine = op.blocks.iter().filter(|b| b.fine).count();
            if fine != g.r_group_order {
                bad.push(format!("{t}{n} {delta}: {fine} fine types, R {}", g.r_group_order));
            }
        }
        check(bad.is_empty(), format!("{cases} (group, delta) cases, mismatches {bad:?}"))
    });
}

fn ratio(a: &Q) -> Q {
    (qi(1) - a) / (qi(1) + a)
}

fn sorted(mut x: Vec<Q>) -> Vec<Q> {
    x.sort();
    x
}

#[test]
fn criterion_14_sp4_operator_tables() {
    criterion(14, "Sp(4,R) operator tables", "exact", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let h = Hecke::new(CartanType::C, 2)?;
        let mut pts = Vec::new();
        while pts.len() < 10 {
            let den = rng.gen_range(2..=12);
            let (a, b) = (rng.gen_range(1..=3 * den), rng.gen_range(1..=3 * den));
            if a > b {
                pts.push(vec![q(a, den), q(b, den)]);
            }
        }
        let mut bad = Vec::new();
        let data = |s: &str| good_root_data_for(CartanType::C, 2, &s.parse().unwrap());
        let (w, plus) = data("+-")?;
        let (_, minus) = data("-+")?;
        let (_, both) = data("--")?;
        let (_, triv) = data("++")?;
        for nu in &pts {
            let (n1, n2) = (&nu[0], &nu[1]);
            for (g, x, name) in [(&plus, n1, "delta1+"), (&minus, n2, "delta1-")] {
                let op = extended_intertwiner(&w, g, nu)?;
                let got: Vec<Q> = op.blocks.iter().filter_map(|b| b.scalar()).collect();
                let s = ratio(x);
                if got.len() != 4 || sorted(got) != sorted(vec![qi(1), qi(-1), s.clone(), -s]) {
                    bad.push(format!("{name} {}", fmt_vec(nu)));
                }
            }
            let (sum, diff) = (ratio(&(n1 + n2)), ratio(&(n1 - n2)));
            let op = extended_intertwiner(&w, &both, nu)?;
            let one = |l: &str| op.block(l).map(|b| b.scalar());
            let m = &op.block("(1)×(1)")?.operator;
            let diagonal = m.len() == 2 && m[0][1].is_zero() && m[1][0].is_zero();
            if one("(2)×(0)")? != Some(qi(1))
                || one("(0)×(2)")? != Some(qi(1))
                || one("(1,1)×(0)")? != Some(&sum * &diff)
                || one("(0)×(1,1)")? != Some(&sum * &diff)
                || !diagonal
                || sorted(vec![m[0][0].clone(), m[1][1].clone()]) != sorted(vec![sum.clone(), diff.clone()])
            {
                bad.push(format!("delta2 {}", fmt_vec(nu)));
            }
            // δ0: printed m against the (1)×(1) block, on both the extended and the Hecke side
            let c = (qi(1) + n1) * (qi(1) + n2) * (qi(1) + (n1 - n2)) * (qi(1) + (n1 + n2));
            let sq = n1 * n1 - n2 * n2;
            let m11 = (qi(1) + n2) * ((qi(1) + n1) + (qi(1) - n1) * &sq) / &c;
            let m22 = (qi(1) - n2) * ((qi(1) - n1) + (qi(1) + n1) * &sq) / &c;
            let m12 = qi(2) * n1 * (qi(1) - n2 * n2) / &c;
            let (tr, det) = (&m11 + &m22, &m11 * &m22 - &m12 * &m12);
            let op = extended_intertwiner(&w, &triv, nu)?;
            let e = &op.block("(1)×(1)")?.operator;
            let (_, hop) = h.operator(nu)?;
            let k = h.block_operator(h.block_for_label("(1)×(1)")?, &hop);
            for (name, a) in [("extended", e), ("hecke", &k)] {
                if a.len() != 2 || linalg::trace(a) != tr || linalg::det(a) != det {
                    bad.push(format!("delta0 {name} {}", fmt_vec(nu)));
                }
            }
            let one = |l: &str| op.block(l).map(|b| b.scalar());
            if one("(2)×(0)")? != Some(qi(1))
                || one("(1,1)×(0)")? != Some(&sum * &diff)
                || one("(0)×(2)")? != Some(ratio(n1) * ratio(n2))
            {
                bad.push(format!("delta0 scalars {}", fmt_vec(nu)));
            }
        }
        check(bad.is_empty(), format!("10 random points per delta, mismatches {bad:?}"))
    });
}

#[test]
fn criterion_15_rank_one() {
    criterion(15, "rank one scalars", "exact", Duration::from_secs(1), || {
        let mut bad = Vec::new();
        let top = 12;
        for j in 0..=40 {
            let c = q(j, 8);
            let mut real = true;
            let mut petite = true;
            for k in -top..=top {
                let s = rank_one_scalar(RankOneKind::RTriv, k, &c)?;
                real &= !s.is_negative();
                if k.abs() <= 1 {
                    petite &= !s.is_negative();
                }
            }
            let mut complex = true;
            for k in 0..=top {
                complex &= !rank_one_scalar(RankOneKind::CTriv, k, &c)?.is_negative();
            }
            let mut sgn_negative = false;
            for k in -top..=top {
                sgn_negative |= rank_one_scalar(RankOneKind::RSgn, k, &c)?.is_negative();
            }
            let inside = j <= 8;
            if real != inside || petite != inside || complex != inside || (j > 0 && !sgn_negative) {
                bad.push(format!("c={c}: R {real} petite {petite} C {complex} sgn negative {sgn_negative}"));
            }
        }
        check(bad.is_empty(), format!("41 values of c in [0,5], mismatches {bad:?}"))
    });
}

#[test]
fn criterion_16_e7_e8_disjointness() {
    criterion(16, "E7 E8 zero-orbit regions disjoint", "exact", Duration::from_secs(30), || {
        let zero = load_zero_regions()?;
        let mut detail = Vec::new();
        let mut pass = true;
        for (t, n) in [(CartanType::E7, 7), (CartanType::E8, 8)] {
            let d = RootDatum::build(t, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(16);
            let points: Vec<Vec<Q>> = (0..10_000)
                .map(|_| {
                    // simple values k/120 with k ≤ 8s; small s fills the alcove
                    let top = 8 * rng.gen_range(1..=3);
                    let a: Vec<Q> = (0..n).map(|_| q(rng.gen_range(0..=top), 120)).collect();
                    from_simple_values(&d, &a)
                })
                .collect();
            let threads = std::thread::available_parallelism().map_or(1, |x| x.get());
            let chunk = points.len().div_ceil(threads);
            let counts: Vec<(usize, usize)> = std::thread::scope(|s| {
                let handles: Vec<_> = points
                    .chunks(chunk)
                    .map(|part| {
                        let (zero, d) = (&zero, &d);
                        s.spawn(move || {
                            let (mut covered, mut overlaps) = (0, 0);
                            for chi in part {
                                let m = zero_cs_membership_in(zero, d, chi).expect("membership");
                                covered += usize::from(!m.all_matches.is_empty());
                                overlaps += usize::from(m.all_matches.len() > 1);
                            }
                            (covered, overlaps)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            let covered: usize = counts.iter().map(|c| c.0).sum();
            let overlaps: usize = counts.iter().map(|c| c.1).sum();
            pass &= overlaps == 0 && covered > 0;
            detail.push(format!("{t}: 10000 points, {covered} in some region, {overlaps} overlaps"));
        }
        check(pass, detail.join("; "))
    });
}
