//! Small hand-checkable cases for every public operation.

use std::sync::Arc;

use sact_core::act::{
    all_subacts, coproduct, decompose_indecomposable, rees_quotient, CoproductMode, RightAct,
    Subact,
};
use sact_core::analyze::chain::{chain_report, min_family_act, truncation_family_report};
use sact_core::congruence::{
    all_congruences, direct_sum_check, extend_congruence, lattice_extrema, meet_reduction,
    minimal_generating_pairs, Congruence, Method,
};
use sact_core::exact::{
    cohopfian_check, determination_check, fitting_analysis, rees_ses_from_subact, series_report,
    verify_rees_ses, SesFailure,
};
use sact_core::monoid::{Monoid, MonoidHom};
use sact_core::morphism::{
    enumerate_homs, find_isomorphism, image_congruence, kernel, principal_right_ideal_poset,
    projective_lifting_check, restrict_scalars, ActHom,
};
use sact_core::Error;

fn trivial_set(n: usize) -> Arc<RightAct> {
    Arc::new(RightAct::trivial(&Arc::new(Monoid::trivial()), n))
}

fn z(n: usize) -> Monoid {
    Monoid::cyclic_group(n)
}

#[test]
fn monoid_tables() {
    let t = Monoid::from_table(vec![vec![0]], 0).unwrap();
    assert_eq!(t.zero(), Some(0));

    let z3 = Monoid::from_table(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], 0).unwrap();
    assert!(z3.classify().is_group);

    // 1*1 = 2 but every other product of non-identities is 1
    let broken = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
    assert!(matches!(
        Monoid::from_table(broken, 0),
        Err(Error::NotAssociative(..))
    ));
}

#[test]
fn transformation_closure() {
    let (m, _) = Monoid::from_transformations(2, &[], 10).unwrap();
    assert_eq!(m.size(), 1);

    let (m, maps) = Monoid::from_transformations(2, &[vec![0, 0]], 10).unwrap();
    assert_eq!(m.size(), 2);
    let c = maps.iter().position(|f| f == &vec![0, 0]).unwrap();
    assert_eq!(m.mul(c, c), c);

    let (m, _) = Monoid::from_transformations(3, &[vec![1, 2, 0]], 10).unwrap();
    assert_eq!(m.size(), 3);
    assert!(m.classify().is_group);
}

#[test]
fn min_monoids() {
    let m1 = Monoid::min_with_identity(1);
    assert_eq!(m1.size(), 2);
    assert_eq!(m1.zero(), Some(1));

    let c = Monoid::min_with_identity(3).classify();
    assert!(c.commutative && !c.is_group);

    let m4 = Monoid::min_with_identity(4);
    let c = m4.classify();
    assert!(c.is_local);
    assert_eq!(c.maximal_right_ideals, vec![vec![1, 2, 3, 4]]);
    let brute: Vec<Vec<usize>> = m4
        .right_ideals()
        .unwrap()
        .into_iter()
        .filter(|i| i.len() == 4)
        .collect();
    assert_eq!(brute, c.maximal_right_ideals);
}

#[test]
fn classification() {
    let c = z(3).classify();
    assert!(c.is_group && !c.is_local && c.left_cancellative);

    let c = z(2).with_adjoined_zero().classify();
    assert!(c.is_0group && c.has_zero);

    // (1,1)=0, (1,0)=1, (0,1)=2, (0,0)=3 under componentwise multiplication
    let pairs = [(1, 1), (1, 0), (0, 1), (0, 0)];
    let idx = |p: (u8, u8)| pairs.iter().position(|&q| q == p).unwrap();
    let table: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(a, b)| pairs.iter().map(|&(c, d)| idx((a * c, b * d))).collect())
        .collect();
    let m = Monoid::from_table(table, 0).unwrap();
    let c = m.classify();
    assert!(c.commutative && c.is_local);
    assert_eq!(c.maximal_right_ideals, vec![vec![1, 2, 3]]);

    assert_eq!(Monoid::trivial().right_ideals().unwrap(), vec![vec![0]]);
}

#[test]
fn monoid_quotients() {
    let z4 = Arc::new(z(4));
    let reg = Arc::new(RightAct::regular(&z4));

    let (q, _) = z4.quotient(&Congruence::delta(&reg)).unwrap();
    assert!(q.find_isomorphism(&z4).is_some());

    let (q, _) = z4.quotient(&Congruence::nabla(&reg)).unwrap();
    assert_eq!(q.size(), 1);

    let rho = Congruence::from_blocks(&reg, &[vec![0, 2], vec![1, 3]]).unwrap();
    let (q, h) = z4.quotient(&rho).unwrap();
    assert!(q.find_isomorphism(&z(2)).is_some());
    assert!(h.is_surjective());
}

#[test]
fn act_tables() {
    let s = Arc::new(Monoid::min_with_identity(2));
    let reg = RightAct::from_table(Arc::clone(&s), s.rows()).unwrap();
    assert_eq!(reg, RightAct::regular(&s));

    let t = Arc::new(Monoid::trivial());
    assert_eq!(
        RightAct::from_table(Arc::clone(&t), vec![vec![0], vec![1]])
            .unwrap()
            .size(),
        2
    );

    let bad = RightAct::from_table(Arc::clone(&s), vec![vec![1, 1, 1], vec![1, 1, 1]]);
    assert!(matches!(bad, Err(Error::UnitLawViolated { .. })));
}

#[test]
fn rees_quotients() {
    let s = Arc::new(Monoid::min_with_identity(3));
    let a = Arc::new(RightAct::regular(&s));

    let (q, _) = rees_quotient(&a, &Subact::whole(&a)).unwrap();
    assert_eq!(q.size(), 1);

    // {1} is the zero of S, a one-element subact
    let theta = Subact::new(&a, vec![1]).unwrap();
    let (q, _) = rees_quotient(&a, &theta).unwrap();
    assert!(find_isomorphism(&q, &a).unwrap().is_some());
}

#[test]
fn indecomposable_components() {
    assert_eq!(decompose_indecomposable(&trivial_set(1)).len(), 1);
    assert_eq!(decompose_indecomposable(&trivial_set(3)).len(), 3);

    let s = Arc::new(Monoid::min_with_identity(2));
    let parts = [
        RightAct::regular(&s),
        RightAct::principal(&s, 2),
        RightAct::trivial(&s, 1),
    ];
    let refs: Vec<&RightAct> = parts.iter().collect();
    let sum = Arc::new(coproduct(&refs, CoproductMode::Plain).unwrap());
    let comps = decompose_indecomposable(&sum);
    assert_eq!(comps.len(), 3);
    for (c, p) in comps.iter().zip(&parts) {
        assert!(find_isomorphism(&c.to_act().0, p).unwrap().is_some());
    }
}

#[test]
fn congruence_enumeration() {
    let a = trivial_set(3);
    let rho = Congruence::principal(&a, 0, 1).unwrap();
    assert_eq!(rho.to_string(), "{0,1|2}");

    assert_eq!(
        all_congruences(&trivial_set(2), Method::Saturate)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(all_congruences(&a, Method::Saturate).unwrap().len(), 5);
    assert_eq!(all_congruences(&a, Method::Oracle).unwrap().len(), 5);
}

#[test]
fn generating_pairs() {
    let a = trivial_set(3);
    assert!(minimal_generating_pairs(&Congruence::delta(&a))
        .unwrap()
        .is_empty());
    assert_eq!(
        minimal_generating_pairs(&Congruence::principal(&a, 0, 2).unwrap())
            .unwrap()
            .len(),
        1
    );
    let pairs = minimal_generating_pairs(&Congruence::nabla(&a)).unwrap();
    assert_eq!(pairs.len(), 2);
    assert_eq!(
        Congruence::generated(&a, &pairs).unwrap(),
        Congruence::nabla(&a)
    );
}

#[test]
fn meet_reductions() {
    let a = trivial_set(3);
    let nabla = Congruence::nabla(&a);
    let rho = Congruence::principal(&a, 0, 1).unwrap();
    assert_eq!(
        meet_reduction(&rho, std::slice::from_ref(&rho)).unwrap(),
        vec![rho.clone()]
    );
    assert_eq!(
        meet_reduction(&rho, &[rho.clone(), nabla]).unwrap(),
        vec![rho.clone()]
    );

    let atoms = vec![
        Congruence::principal(&a, 0, 1).unwrap(),
        Congruence::principal(&a, 1, 2).unwrap(),
        Congruence::principal(&a, 0, 2).unwrap(),
    ];
    let r = meet_reduction(&Congruence::delta(&a), &atoms).unwrap();
    assert_eq!(r.len(), 2);
}

#[test]
fn direct_sums_and_extension() {
    let a = trivial_set(3);
    let rho = Congruence::principal(&a, 0, 1).unwrap();
    assert_eq!(
        direct_sum_check(&Congruence::delta(&a), &rho).unwrap(),
        Some(rho.clone())
    );
    assert_eq!(direct_sum_check(&rho, &rho).unwrap(), None);

    let s = Arc::new(Monoid::min_with_identity(3));
    let whole = Arc::new(RightAct::regular(&s));
    let b = Subact::new(&whole, vec![1, 2]).unwrap();
    let (b_act, _) = b.to_act();
    let b_act = Arc::new(b_act);
    assert_eq!(
        extend_congruence(&whole, &b, &Congruence::delta(&b_act)).unwrap(),
        Congruence::delta(&whole)
    );
    assert_eq!(
        extend_congruence(&whole, &b, &Congruence::nabla(&b_act)).unwrap(),
        Congruence::rees(&whole, &b).unwrap()
    );
}

#[test]
fn extrema() {
    let a = trivial_set(3);
    let (d, n) = (Congruence::delta(&a), Congruence::nabla(&a));
    let (lo, hi) = lattice_extrema(&[d.clone(), n.clone()]).unwrap();
    assert_eq!((lo, hi), (vec![d], vec![n]));

    let atoms = vec![
        Congruence::principal(&a, 0, 1).unwrap(),
        Congruence::principal(&a, 1, 2).unwrap(),
        Congruence::principal(&a, 0, 2).unwrap(),
    ];
    let (lo, hi) = lattice_extrema(&atoms).unwrap();
    assert_eq!(lo.len(), 3);
    assert_eq!(hi.len(), 3);
}

#[test]
fn homomorphisms() {
    let a = trivial_set(3);
    let id = ActHom::identity(&a);
    assert!(id.is_mono() && id.is_epi());
    assert!(kernel(&id).is_delta());

    let constant = ActHom::new(Arc::clone(&a), Arc::clone(&a), vec![2, 2, 2]).unwrap();
    assert!(kernel(&constant).is_nabla());
    assert!(image_congruence(&constant).is_delta());

    let s = Arc::new(Monoid::min_with_identity(2));
    let reg = Arc::new(RightAct::regular(&s));
    let k = Arc::new(RightAct::principal(&s, 2));
    assert_eq!(enumerate_homs(&reg, &k).unwrap().len(), k.size());
}

#[test]
fn scalar_restriction() {
    let s = Arc::new(Monoid::min_with_identity(2));
    let a = Arc::new(RightAct::regular(&s));
    let (same, report) = restrict_scalars(&MonoidHom::identity(&s), &a).unwrap();
    assert_eq!(same, *a);
    assert!(report.equal);

    let to_identity = MonoidHom::new(Arc::clone(&s), Arc::clone(&s), vec![0; 3]).unwrap();
    let (flat, report) = restrict_scalars(&to_identity, &a).unwrap();
    assert_eq!(report.restricted_congruences, 5);
    assert!(report.embeds);
    let flat = Arc::new(flat);
    assert_eq!(all_congruences(&flat, Method::Oracle).unwrap().len(), 5);

    let z4 = Arc::new(z(4));
    let reg4 = Arc::new(RightAct::regular(&z4));
    let rho = Congruence::from_blocks(&reg4, &[vec![0, 2], vec![1, 3]]).unwrap();
    let (z2, onto) = z4.quotient(&rho).unwrap();
    let z2 = Arc::new(z2);
    let onto = MonoidHom::new(Arc::clone(&z4), Arc::clone(&z2), onto.map().to_vec()).unwrap();
    let (_, report) = restrict_scalars(&onto, &Arc::new(RightAct::regular(&z2))).unwrap();
    assert!(report.equal);
}

#[test]
fn endomorphism_ideals_and_lifting() {
    let poset = principal_right_ideal_poset(&z(3));
    assert_eq!(poset.classes.len(), 1);

    let s = Arc::new(Monoid::min_with_identity(2));
    let reg = Arc::new(RightAct::regular(&s));
    let ends = enumerate_homs(&reg, &reg).unwrap();
    for f in &ends {
        assert!(projective_lifting_check(&reg, f.map(), f.map(), true).unwrap());
        for g in &ends {
            let contained = f.image().iter().all(|x| g.image().contains(x));
            if contained {
                assert!(projective_lifting_check(&reg, f.map(), g.map(), true).unwrap());
            }
        }
    }
}

#[test]
fn rees_sequences() {
    let (_, k) = min_family_act(3);
    let whole = Subact::whole(&k);
    let ses = rees_ses_from_subact(&k, &whole).unwrap();
    assert_eq!(ses.g().target().size(), 1);

    let single = Subact::new(&k, vec![0]).unwrap();
    let ses = rees_ses_from_subact(&k, &single).unwrap();
    assert!(find_isomorphism(ses.g().target(), &k).unwrap().is_some());

    let two = Subact::new(&k, vec![0, 1]).unwrap();
    let ses = rees_ses_from_subact(&k, &two).unwrap();
    assert_eq!(ses.g().target().size(), 2);
    assert!(verify_rees_ses(ses.f(), ses.g()).holds);

    // g the identity: its kernel is Δ, not the Rees congruence of {0,1}
    let (_, incl) = ActHom::inclusion(&two);
    let check = verify_rees_ses(&incl, &ActHom::identity(&k));
    assert!(!check.holds);

    // f folds the two elements of K over min_monoid(1) ⊔ itself together
    let t = trivial_set(2);
    let fold = ActHom::new(Arc::clone(&t), trivial_set(1), vec![0, 0]).unwrap();
    let id = ActHom::identity(fold.target());
    let check = verify_rees_ses(&fold, &id);
    assert!(matches!(
        check.failure,
        Some(SesFailure::NotInjective { .. })
    ));
}

#[test]
fn determination() {
    let (_, k) = min_family_act(3);
    let ses = rees_ses_from_subact(&k, &Subact::new(&k, vec![0, 1]).unwrap()).unwrap();
    let d = Congruence::delta(&k);
    let n = Congruence::nabla(&k);
    assert!(determination_check(&ses, &n, &n).unwrap());
    assert!(determination_check(&ses, &n, &d).unwrap());
    assert_eq!(determination_check(&ses, &d, &n), Err(Error::NotNested));
}

#[test]
fn series() {
    let (_, k) = min_family_act(3);
    assert!(series_report(&k, &[vec![0, 1, 2]]).unwrap().is_empty());
    let steps = series_report(&k, &[vec![0], vec![0, 1], vec![0, 1, 2]]).unwrap();
    assert_eq!(steps.len(), 2);
    assert!(steps.iter().all(|s| s.factor.size() == 2));
    assert!(matches!(
        series_report(&k, &[vec![1], vec![0, 1, 2]]),
        Err(Error::NotAChain(_))
    ));
}

#[test]
fn fitting() {
    let (_, k) = min_family_act(3);
    let r = fitting_analysis(&k, &ActHom::identity(&k)).unwrap();
    assert_eq!((r.n_image_stable, r.k_meet_trivial), (1, Some(1)));
    assert!(r.direct_sum_holds);
    assert_eq!(r.kernel.0.len(), 3);

    // 0 is the zero of K, a fixed point
    let to_zero = ActHom::new(Arc::clone(&k), Arc::clone(&k), vec![0, 0, 0]).unwrap();
    let r = fitting_analysis(&k, &to_zero).unwrap();
    assert_eq!(r.n_image_stable, 1);
    assert_eq!(r.kernel.0, vec![vec![0, 1, 2]]);
    assert_eq!(r.image_congruence.0.len(), 3);
    assert!(r.direct_sum_holds);
}

#[test]
fn cohopfian() {
    assert!(cohopfian_check(&trivial_set(1)).unwrap().holds);
    let (_, k) = min_family_act(4);
    assert!(cohopfian_check(&k).unwrap().holds);
}

#[test]
fn chains() {
    let con = all_congruences(&trivial_set(2), Method::Saturate).unwrap();
    let r = chain_report(&con).unwrap();
    assert_eq!(r.height, 2);

    let con = all_congruences(&trivial_set(3), Method::Saturate).unwrap();
    let r = chain_report(&con).unwrap();
    assert_eq!((r.element_count, r.height), (5, 3));

    for n in 1..=8 {
        let (_, k) = min_family_act(n);
        let subs = all_subacts(&k).unwrap();
        let r = chain_report(&subs).unwrap();
        assert_eq!((r.element_count, r.height), (n, n));
    }
    let report = truncation_family_report(5).unwrap();
    assert_eq!(report.rows.len(), 5);
    assert!(report
        .rows
        .iter()
        .all(|r| r.subacts_form_chain && r.subacts.height == r.n));
}
