use proptest::prelude::*;

use loopsmith::group::{cyclic, dihedral, direct_product, symmetric, FiniteGroup};
use loopsmith::loops::{is_associative, is_isomorphic, is_moufang, make_loop, FiniteLoop, DEFAULT_ISO_CAP};
use loopsmith::octonion::{associator_norm, moufang_residual, OctonionF, OctonionH};
use loopsmith::perm::{perm_closure, Permutation, DEFAULT_CLOSURE_CAP};
use loopsmith::sections::{loop_from_section, section_from_loop};
use loopsmith::tbl::{parse_table, write_table};

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..9).prop_map(|n| cyclic(n).unwrap()),
        (2usize..6).prop_map(|n| dihedral(n).unwrap()),
        (1usize..4).prop_map(|n| symmetric(n).unwrap()),
        ((1usize..4), (1usize..4)).prop_map(|(a, b)| direct_product(&[&cyclic(a).unwrap(), &cyclic(b).unwrap()]).unwrap()),
    ]
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// A relabeling of `l` that keeps 0 fixed.
fn relabeled(l: &FiniteLoop, tail: &[usize]) -> FiniteLoop {
    let mut image = vec![0];
    image.extend(tail.iter().map(|x| x + 1));
    l.relabel(&image)
}

fn group_and_shuffle() -> impl Strategy<Value = (FiniteGroup, Vec<usize>)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n - 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn builders_are_groups(g in small_group()) {
        let l = g.to_loop();
        prop_assert!(is_associative(&l));
        prop_assert!(make_loop(&g.rows()).is_ok());
        for x in g.elements() {
            prop_assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn relabeling_preserves_isomorphism_type((g, tail) in group_and_shuffle()) {
        let l = g.to_loop();
        let r = relabeled(&l, &tail);
        let h = is_isomorphic(&l, &r, DEFAULT_ISO_CAP).unwrap();
        prop_assert!(h.is_some_and(|h| h.is_valid(&l, &r)));
    }

    #[test]
    fn section_round_trip_on_relabeled_groups((g, tail) in group_and_shuffle()) {
        let l = relabeled(&g.to_loop(), &tail);
        let ls = section_from_loop(&l, DEFAULT_CLOSURE_CAP).unwrap();
        // a group acts regularly on itself: the stabilizer is trivial
        prop_assert!(ls.stabilizer.is_trivial());
        let back = loop_from_section(&ls.group, &ls.section).unwrap();
        prop_assert!(is_isomorphic(&back, &l, DEFAULT_ISO_CAP).unwrap().is_some());
    }

    #[test]
    fn table_text_round_trip((g, tail) in group_and_shuffle()) {
        let rows = relabeled(&g.to_loop(), &tail).rows();
        prop_assert_eq!(parse_table(&write_table(&rows)).unwrap(), rows);
    }

    #[test]
    fn compose_and_inverse(p in permutation(7), q in permutation(7)) {
        let (p, q) = (Permutation::from_images(&p).unwrap(), Permutation::from_images(&q).unwrap());
        prop_assert!(p.compose(&p.inverse()).is_identity());
        for x in 0..7 {
            prop_assert_eq!(p.compose(&q).apply(x), p.apply(q.apply(x)));
        }
        let c = perm_closure(&[p.clone(), q.clone()], DEFAULT_CLOSURE_CAP).unwrap();
        prop_assert_eq!(5040 % c.order(), 0);
        prop_assert!(c.contains(&p.compose(&q)));
    }

    #[test]
    fn float_moufang_and_norm(x in prop::array::uniform8(-2.0f64..2.0), y in prop::array::uniform8(-2.0f64..2.0), z in prop::array::uniform8(-2.0f64..2.0)) {
        let (x, y, z) = (OctonionF(x), OctonionF(y), OctonionF(z));
        let scale = (x.norm() * y.norm() * z.norm()).max(1.0);
        prop_assert!(moufang_residual(x, y, z) <= 1e-12 * scale * x.norm().max(1.0));
        prop_assert!(((x * y).norm2() - x.norm2() * y.norm2()).abs() <= 1e-12 * (x.norm2() * y.norm2()).max(1.0));
        // alternativity: the associator vanishes when two arguments agree
        prop_assert!(associator_norm(x, x, y) <= 1e-12 * scale.max(x.norm2() * y.norm()));
    }

    #[test]
    fn exact_norm_is_multiplicative(x in prop::array::uniform8(-20i32..20), y in prop::array::uniform8(-20i32..20)) {
        // doubled coordinates all even: ordinary integral octonions
        let (x, y) = (OctonionH(x.map(|v| 2 * v)), OctonionH(y.map(|v| 2 * v)));
        let p = x.mul(&y).unwrap();
        prop_assert_eq!(p.norm2_scaled() * 4, x.norm2_scaled() * y.norm2_scaled());
        prop_assert_eq!(p.conj(), y.conj().mul(&x.conj()).unwrap());
    }
}

#[test]
fn groups_are_moufang() {
    for g in [cyclic(6).unwrap(), symmetric(4).unwrap(), dihedral(5).unwrap()] {
        assert!(is_moufang(&g.to_loop()));
    }
}
