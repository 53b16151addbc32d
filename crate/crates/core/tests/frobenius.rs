use clt_core::builtins::{alternating4, klein_four};
use clt_core::constructions::{agl1, frobenius_subgroup, g_pqn, translation_subgroup};
use clt_core::permgroup::{
    classify_in_frobenius, cyclic_group, frobenius_complement, is_normal, quotient_group, verify_frobenius,
    FrobeniusCase, PermGroup, Subgroup,
};
use clt_core::spectrum::enumerate_subgroups;
use clt_core::Error;

fn v4_in_a4(a4: &PermGroup) -> Subgroup {
    a4.subgroup_generated_by(klein_four().generators()).unwrap()
}

/// Frobenius groups built here, with their kernels.
fn frobenius_family() -> Vec<(String, PermGroup, Subgroup)> {
    let mut out = Vec::new();
    for (p, m, h) in [(2, 2, 3), (3, 1, 2), (5, 1, 4), (3, 2, 4), (3, 2, 8), (3, 2, 2), (2, 3, 7), (7, 1, 3), (5, 2, 3)] {
        let g = frobenius_subgroup(p, m, h).unwrap();
        let n = translation_subgroup(&g, p, m).unwrap();
        out.push((format!("C_{p}^{m} ⋊ C_{h}"), g, n));
    }
    out
}

#[test]
fn spec_frobenius_examples() {
    let a4 = alternating4();
    assert!(verify_frobenius(&a4, &v4_in_a4(&a4)).unwrap());

    let c6 = cyclic_group(6).unwrap();
    let c3 = c6.subgroup_generated_by(&[c6.generators()[0].compose(&c6.generators()[0])]).unwrap();
    assert_eq!(c3.order(), 3);
    assert!(!verify_frobenius(&c6, &c3).unwrap());

    let agl = agl1(3, 2).unwrap();
    let t = translation_subgroup(&agl, 3, 2).unwrap();
    assert_eq!(t.order(), 9);
    assert!(verify_frobenius(&agl, &t).unwrap());
}

#[test]
fn verify_frobenius_rejects_bad_kernels() {
    let a4 = alternating4();
    assert!(!verify_frobenius(&a4, &Subgroup::trivial()).unwrap());
    assert!(!verify_frobenius(&a4, &a4.full_subgroup()).unwrap());
    let subs = enumerate_subgroups(&a4).unwrap();
    let order2 = subs.iter().find(|s| s.order() == 2).unwrap();
    assert!(!verify_frobenius(&a4, order2).unwrap());
}

#[test]
fn family_members_are_frobenius() {
    for (name, g, n) in frobenius_family() {
        assert!(verify_frobenius(&g, &n).unwrap(), "{name}");
    }
    for (p, q) in [(2, 3), (5, 3), (11, 3), (13, 7)] {
        let g = g_pqn(p, q, 0).unwrap();
        let n = translation_subgroup(&g, p, 2).unwrap();
        assert_eq!(n.order(), p * p);
        assert!(verify_frobenius(&g, &n).unwrap(), "G_{p},{q}^0");
    }
}

#[test]
fn complement_order_divides_kernel_order_minus_one() {
    for (name, g, n) in frobenius_family() {
        let subs = enumerate_subgroups(&g).unwrap();
        let h = frobenius_complement(&g, &subs, &g.full_subgroup(), &n).unwrap();
        assert_eq!(h.order() * n.order(), g.order(), "{name}");
        assert_eq!((n.order() - 1) % h.order(), 0, "{name}");
    }
}

#[test]
fn trichotomy_is_exhaustive() {
    for (name, g, n) in frobenius_family() {
        let subs = enumerate_subgroups(&g).unwrap();
        for k in &subs {
            let meet = k.intersection(&n);
            let in_kernel = k.is_subset(&n);
            let trivial_meet = meet.order() == 1;
            let frobenius_sub = frobenius_complement(&g, &subs, k, &meet).is_some();
            let holding = [in_kernel, trivial_meet && !in_kernel, frobenius_sub];
            assert_eq!(holding.iter().filter(|&&b| b).count(), 1, "{name}: {k:?}");
            let expected = if in_kernel {
                FrobeniusCase::InKernel
            } else if trivial_meet {
                FrobeniusCase::TrivialMeet
            } else {
                FrobeniusCase::FrobeniusSub
            };
            assert_eq!(classify_in_frobenius(&n, k), expected, "{name}");
        }
    }
}

#[test]
fn classification_examples() {
    let agl = agl1(3, 2).unwrap();
    let n = translation_subgroup(&agl, 3, 2).unwrap();
    assert_eq!(classify_in_frobenius(&n, &n), FrobeniusCase::InKernel);
    let stabilizer = Subgroup::from_indices(
        (0..agl.order() as u32).filter(|&i| agl.element(i).apply(0) == 0).collect(),
    );
    assert_eq!(stabilizer.order(), 8);
    assert!(agl.is_subgroup(&stabilizer));
    assert_eq!(classify_in_frobenius(&n, &stabilizer), FrobeniusCase::TrivialMeet);

    let g = frobenius_subgroup(3, 2, 4).unwrap();
    let n = translation_subgroup(&g, 3, 2).unwrap();
    let subs = enumerate_subgroups(&g).unwrap();
    let t = g.table();
    let s3_like: Vec<&Subgroup> = subs
        .iter()
        .filter(|k| k.order() == 6)
        .filter(|k| k.elements().iter().any(|&a| k.elements().iter().any(|&b| t.mul(a, b) != t.mul(b, a))))
        .collect();
    assert!(!s3_like.is_empty());
    for k in s3_like {
        assert_eq!(classify_in_frobenius(&n, k), FrobeniusCase::FrobeniusSub);
        let meet = k.intersection(&n);
        assert_eq!(meet.order(), 3);
        assert!(frobenius_complement(&g, &subs, k, &meet).is_some());
    }
}

#[test]
fn normality_and_quotients() {
    let a4 = alternating4();
    let v4 = v4_in_a4(&a4);
    assert!(is_normal(&a4, &Subgroup::trivial()).unwrap());
    assert!(is_normal(&a4, &v4).unwrap());
    let subs = enumerate_subgroups(&a4).unwrap();
    let order2 = subs.iter().find(|s| s.order() == 2).unwrap();
    assert!(!is_normal(&a4, order2).unwrap());
    let not_closed = Subgroup::from_indices(vec![0, 1]);
    if !a4.is_subgroup(&not_closed) {
        assert!(matches!(is_normal(&a4, &not_closed), Err(Error::Domain(_))));
    }

    assert_eq!(quotient_group(&a4, &v4).unwrap().order(), 3);
    assert_eq!(quotient_group(&a4, &a4.full_subgroup()).unwrap().order(), 1);
    assert!(matches!(quotient_group(&a4, order2), Err(Error::Domain(_))));
    let c6 = cyclic_group(6).unwrap();
    let c2 = c6.subgroup_generated_by(&[{
        let g = &c6.generators()[0];
        g.compose(g).compose(g)
    }])
    .unwrap();
    assert_eq!(quotient_group(&c6, &c2).unwrap().order(), 3);
}
