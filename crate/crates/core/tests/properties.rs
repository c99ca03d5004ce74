use hecke_core::heckeops::{intertwiner, prepare};
use hecke_core::linalg::{self, Method};
use hecke_core::ramified::{extended_intertwiner, good_root_data_for, DeltaCharacter};
use hecke_core::rational::{fmt_q, parse_q, q, Q};
use hecke_core::regions::{load_zero_regions, zero_cs_membership_with};
use hecke_core::rootsys::{CartanType, RootDatum, WeylGroup};
use hecke_core::strings::{decompose, parse_rendered, reconstructs, render_nu, render_orbit, unitary_via_strings, RenderedOrbit};
use hecke_core::wrep::Hecke;
use hecke_core::Error;
use proptest::prelude::*;
use std::sync::OnceLock;

fn rational(max_num: i64) -> impl Strategy<Value = Q> {
    (-max_num..=max_num, 1i64..=8).prop_map(|(n, d)| q(n, d))
}

fn nonneg(max_num: i64) -> impl Strategy<Value = Q> {
    (0..=max_num, 1i64..=8).prop_map(|(n, d)| q(n, d))
}

fn c3() -> &'static Hecke {
    static H: OnceLock<Hecke> = OnceLock::new();
    H.get_or_init(|| Hecke::new(CartanType::C, 3).unwrap())
}

fn b3() -> &'static Hecke {
    static H: OnceLock<Hecke> = OnceLock::new();
    H.get_or_init(|| Hecke::new(CartanType::B, 3).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_round_trip(x in rational(1000)) {
        prop_assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
    }

    #[test]
    fn verdict_is_weyl_invariant(chi in prop::collection::vec(rational(24), 3), s in 0usize..48) {
        let h = c3();
        let moved = h.group.elements[s].apply(&chi);
        let a = h.unitarity(&chi, Method::ExactLdl, false).unwrap();
        let b = h.unitarity(&moved, Method::ExactLdl, false).unwrap();
        prop_assert_eq!(a.chi_dominant, b.chi_dominant);
        prop_assert_eq!(a.signature.psd, b.signature.psd);
    }

    #[test]
    fn block_forms_are_symmetric(chi in prop::collection::vec(nonneg(24), 3)) {
        let h = b3();
        let (_, op) = h.operator(&chi).unwrap();
        for row in 0..h.table.rows.len() {
            prop_assert!(linalg::is_symmetric(&h.block_form(h.block(row), &op)));
        }
    }

    #[test]
    fn isotypic_total_matches_full_form(chi in prop::collection::vec(nonneg(16), 2)) {
        let h = Hecke::new(CartanType::B, 2).unwrap();
        let iso = h.unitarity(&chi, Method::ExactLdl, false).unwrap().signature;
        let (_, op) = prepare(&h.group, &chi).unwrap();
        let full = linalg::ldl_signature(&op.normalized_matrix(&h.group));
        prop_assert_eq!((iso.n_positive, iso.n_zero, iso.n_negative), (full.n_positive, full.n_zero, full.n_negative));
    }

    #[test]
    fn strings_agree_with_operator(chi in prop::collection::vec(nonneg(24), 3), c in any::<bool>()) {
        let (t, h) = if c { (CartanType::C, c3()) } else { (CartanType::B, b3()) };
        let s = unitary_via_strings(t, &chi).unwrap();
        let r = h.unitarity(&chi, Method::ExactLdl, false).unwrap();
        prop_assert_eq!(s.unitary, r.signature.psd);
    }

    #[test]
    fn strings_reconstruct_and_round_trip(
        chi in prop::collection::vec(rational(32), 1..8),
        t in prop::sample::select(vec![CartanType::B, CartanType::C, CartanType::D]),
    ) {
        let d = match decompose(t, &chi) {
            Ok(d) => d,
            Err(Error::VeryEvenOrbit) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(reconstructs(&d, &chi));
        let back = parse_rendered(&render_orbit(&d), &render_nu(&d), t).unwrap();
        prop_assert_eq!(back, RenderedOrbit::of(&d));
        let total: usize = d.orbit_partition.iter().sum();
        let expect = match t {
            CartanType::C => 2 * chi.len() + 1,
            _ => 2 * chi.len(),
        };
        prop_assert_eq!(total, expect);
    }

    #[test]
    fn good_root_orders(signs in prop::collection::vec(any::<bool>(), 3), c in any::<bool>()) {
        let delta = DeltaCharacter { signs: signs.iter().map(|&b| if b { 1 } else { -1 }).collect() };
        let t = if c { CartanType::C } else { CartanType::B };
        let (_, g) = good_root_data_for(t, 3, &delta).unwrap();
        prop_assert_eq!(g.w_delta_order, g.w_delta0_order * g.r_group_order);
        prop_assert_eq!(g.w_delta.len(), g.w_delta_order);
        prop_assert_eq!(g.r_c.len(), g.r_group_order);
        prop_assert_eq!(48 % g.w_delta_order, 0);
    }

    #[test]
    fn trivial_delta_is_the_spherical_operator(a in nonneg(16), b in nonneg(16)) {
        let nu = if a >= b { vec![a, b] } else { vec![b, a] };
        let (w, g) = good_root_data_for(CartanType::C, 2, &DeltaCharacter::trivial(2)).unwrap();
        let ext = extended_intertwiner(&w, &g, &nu).unwrap();
        let op = intertwiner(&w, &nu).unwrap();
        prop_assert_eq!(ext.element, op.normalized_element());
    }

    #[test]
    fn fine_types_carry_signs(a in 1i64..40, b in 1i64..40, d in 3i64..12) {
        prop_assume!(a != b);
        let nu = vec![q(a.max(b), d), q(a.min(b), d)];
        for delta in ["+-", "-+", "--"] {
            let (w, g) = good_root_data_for(CartanType::C, 2, &delta.parse().unwrap()).unwrap();
            let op = extended_intertwiner(&w, &g, &nu).unwrap();
            for blk in op.blocks.iter().filter(|b| b.fine) {
                prop_assert_eq!(blk.scalar(), Some(Q::from_integer(blk.u_trace.into())));
            }
        }
    }

    #[test]
    fn zero_regions_are_disjoint(v in prop::collection::vec(nonneg(12), 4), t in prop::sample::select(vec![CartanType::F4, CartanType::E6])) {
        let data = zero_data();
        // F4: dominant ambient point from simple-coroot weights; E6: the
        // four hermitian slice coordinates
        let coords = if t == CartanType::F4 {
            let d = RootDatum::build(t, 4).unwrap();
            let mut chi = vec![Q::from_integer(0.into()); d.ambient_dim];
            for (x, c) in v.iter().zip(&d.simple_coroots) {
                for (y, z) in chi.iter_mut().zip(c) {
                    *y += x * z;
                }
            }
            chi
        } else {
            v.clone()
        };
        let m = zero_cs_membership_with(data, t, &coords).unwrap();
        prop_assert!(m.all_matches.len() <= 1, "{:?}", m.all_matches);
    }
}

fn zero_data() -> &'static hecke_core::regions::ZeroRegions {
    static Z: OnceLock<hecke_core::regions::ZeroRegions> = OnceLock::new();
    Z.get_or_init(|| load_zero_regions().unwrap())
}

#[test]
fn weyl_orders() {
    for (t, n, order) in [(CartanType::A, 3, 24), (CartanType::B, 3, 48), (CartanType::D, 4, 192), (CartanType::G2, 2, 12), (CartanType::F4, 4, 1152)] {
        let w = WeylGroup::new(&RootDatum::build(t, n).unwrap()).unwrap();
        assert_eq!(w.order(), order);
    }
}
