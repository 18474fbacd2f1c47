use super::*;
use crate::algebra::IntPoly;
use crate::groups::construct::{
    abelian, cyclic, dihedral, direct_product, elementary_abelian, from_permutation_strings, heisenberg,
    modular_p_cubed, quaternion16, semidihedral16, symmetric,
};

fn k(c: &[i64]) -> NumberField {
    NumberField::from_coeffs(c).unwrap()
}

fn q() -> NumberField {
    NumberField::rationals()
}

/// Decides and replays; every certificate must reproduce.
fn run(g: &FiniteGroup, k: &NumberField, mode: Mode) -> Verdict {
    let budgets = Budgets::default();
    let v = decide_with(g, k, mode, &budgets);
    let report = replay(&v, g, k, &budgets).unwrap();
    assert!(report.ok(), "replay mismatch {:?} in {:#?}", report.mismatches, v);
    v
}

fn expect(g: &FiniteGroup, k: &NumberField, mode: Mode, status: Status, theorem: Theorem) {
    let v = run(g, k, mode);
    assert_eq!((v.status, v.theorem()), (status, theorem), "{:#?}", v.certificate);
}

#[test]
fn theorem_tags() {
    assert_eq!(Theorem::OddMetacyclicCriterion.tag(), "LIEDAHL_T30");
    assert_eq!(Theorem::WildRankBoundUnramified.tag(), "LOCAL_NO_UNITY_I");
    assert_eq!(Theorem::ModularGroupObstruction.tag(), "DIHEDRAL_GENERAL_OBSTRUCTION");
    assert_eq!(Theorem::None.tag(), "NONE");
}

#[test]
fn tame_metacyclic_examples() {
    let d8 = dihedral(4);
    expect(
        &d8,
        &q(),
        Mode::Tame,
        Status::TamelyAdmissible,
        Theorem::AllMetacyclicTwoGroups,
    );
    expect(
        &d8,
        &k(&[1, 0, 1]),
        Mode::Tame,
        Status::NotTamelyAdmissible,
        Theorem::TameSylowCriterion,
    );
    let m27 = modular_p_cubed(3);
    expect(
        &m27,
        &k(&[1, -3, 0, 1]),
        Mode::Tame,
        Status::NotTamelyAdmissible,
        Theorem::TameSylowCriterion,
    );
    let v = run(&d8, &k(&[1, 0, 1]), Mode::Tame);
    assert!(v.certificate.witnesses.contains_key("exhausted"));
}

#[test]
fn odd_metacyclic_examples() {
    let m27 = modular_p_cubed(3);
    let v = run(&m27, &k(&[-7, 0, 1]), Mode::Admissible);
    assert_eq!(v.status, Status::Admissible);
    expect(
        &m27,
        &k(&[1, -3, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::OddMetacyclicCriterion,
    );
    let z9 = NumberField::new(IntPoly::cyclotomic(9)).unwrap();
    expect(
        &m27,
        &z9,
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::OddMetacyclicCriterion,
    );
    expect(
        &cyclic(3),
        &q(),
        Mode::Admissible,
        Status::Admissible,
        Theorem::OddMetacyclicCriterion,
    );
}

#[test]
fn tame_predicate_examples() {
    assert!(all_metacyclic_tame_predicate(&q(), 2).holds);
    let p = all_metacyclic_tame_predicate(&k(&[-2, 0, 1]), 2);
    assert_eq!(p.witness, Some(IntPoly::from_i64(&[-2, 0, 1])));
    assert!(!all_metacyclic_tame_predicate(&k(&[1, 0, 0, 1, 0, 0, 1]), 3).holds);
    assert!(all_metacyclic_tame_predicate(&k(&[1, 0, 1]), 3).holds);
}

#[test]
fn wild_examples() {
    let e27 = elementary_abelian(3, 3);
    expect(
        &e27,
        &k(&[-5, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::UniquePlaceMetacyclic,
    );
    let e121 = elementary_abelian(11, 2);
    // (Z/11)^2 is metacyclic; 11 is inert in Q(i) and q = 1 satisfies the fixed-field condition
    expect(
        &e121,
        &k(&[1, 0, 1]),
        Mode::Admissible,
        Status::Admissible,
        Theorem::OddMetacyclicCriterion,
    );
    expect(
        &e121,
        &k(&[-5, 0, 1]),
        Mode::Admissible,
        Status::Admissible,
        Theorem::WildRankBoundUnramified,
    );
    expect(
        &cyclic(3),
        &k(&[-7, 0, 1]),
        Mode::Admissible,
        Status::Admissible,
        Theorem::WildRankBoundUnramified,
    );
    // 3 splits in Q(√-2) and is unramified; d = 3 exceeds 1 + 1
    expect(
        &e27,
        &k(&[2, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::WildRankBoundUnramified,
    );
}

#[test]
fn demuskin_branch() {
    // Q(√6, √7): 3 splits in Q(√7) and ramifies in Q(√6) = Q_3(√-3) locally
    let kk = k(&[1, 0, -26, 0, 1]);
    let e81 = elementary_abelian(3, 4);
    expect(&e81, &kk, Mode::Admissible, Status::Admissible, Theorem::WildDemuskin);
    expect(
        &elementary_abelian(3, 5),
        &kk,
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::WildDemuskin,
    );
    let v = run(&abelian(&[9, 3, 3, 3]), &kk, Mode::Admissible);
    assert_eq!((v.status, v.theorem()), (Status::Admissible, Theorem::WildDemuskin));
    assert_eq!(v.certificate.witnesses["demuskin_route"], "abelian");
    let g = direct_product(&[heisenberg(3), cyclic(3), cyclic(3)], 4096).unwrap();
    let v = run(&g, &kk, Mode::Admissible);
    assert_eq!((v.status, v.theorem()), (Status::Admissible, Theorem::WildDemuskin));
    assert_eq!(v.certificate.witnesses["demuskin_route"], "search");
}

#[test]
fn order_sixteen_obstructions() {
    let q16 = quaternion16();
    let sd16 = semidihedral16();
    expect(
        &q16,
        &k(&[1, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::Q16Obstruction,
    );
    expect(
        &q16,
        &k(&[2, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::Q16Obstruction,
    );
    expect(
        &sd16,
        &k(&[-2, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::Sd16Obstruction,
    );
    for g in [&q16, &sd16, &dihedral(8)] {
        expect(
            g,
            &q(),
            Mode::Tame,
            Status::TamelyAdmissible,
            Theorem::AllMetacyclicTwoGroups,
        );
        expect(
            g,
            &q(),
            Mode::Admissible,
            Status::Admissible,
            Theorem::TameSylowCriterion,
        );
    }
}

#[test]
fn roots_of_unity_obstruction() {
    let d8 = dihedral(4);
    let v = run(&d8, &k(&[1, 0, 1]), Mode::Admissible);
    assert_eq!(v.status, Status::NotAdmissible);
    // D8 x C3 over Q(i): the Sylow 2-subgroup is obstructed
    let g = direct_product(&[d8, cyclic(3)], 4096).unwrap();
    expect(
        &g,
        &k(&[1, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::NilpotentReduction,
    );
}

#[test]
fn mixed_groups() {
    let g = direct_product(&[dihedral(4), cyclic(3)], 4096).unwrap();
    expect(
        &g,
        &q(),
        Mode::Tame,
        Status::TamelyAdmissible,
        Theorem::TameSylowCriterion,
    );
    expect(
        &g,
        &q(),
        Mode::Admissible,
        Status::Admissible,
        Theorem::NilpotentReduction,
    );
    let s3 = symmetric(3);
    expect(
        &s3,
        &q(),
        Mode::Admissible,
        Status::Admissible,
        Theorem::TameSylowCriterion,
    );
    let s4 = symmetric(4);
    expect(
        &s4,
        &q(),
        Mode::Tame,
        Status::TamelyAdmissible,
        Theorem::TameSylowCriterion,
    );
    // Sylow 2 of S4 is D8 = Z/4 ⋊ Z/2, obstructed over Q(i) where 2 ramifies
    expect(
        &s4,
        &k(&[1, 0, 1]),
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::ModularGroupObstruction,
    );
    // Q(ζ8): ζ8 ∈ K, 2 totally ramified, D8 of order 8 <= 2^4
    let z8 = NumberField::new(IntPoly::cyclotomic(8)).unwrap();
    expect(
        &s4,
        &z8,
        Mode::Admissible,
        Status::NotAdmissible,
        Theorem::RootsOfUnityObstruction,
    );
}

#[test]
fn non_solvable_scope() {
    let a5 = from_permutation_strings(&["(1 2 3 4 5)", "(1 2 3)"], 5).unwrap();
    let v = run(&a5, &q(), Mode::Admissible);
    assert_eq!(v.status, Status::Undetermined);
    assert_eq!(
        v.blocker,
        Some(Blocker::Hypothesis {
            name: "solvable".into()
        })
    );
    // Sylow 2 of A5 is V4, metacyclic; the tame gate passes and solvability blocks
    let v = run(&a5, &q(), Mode::Tame);
    assert_eq!(v.status, Status::Undetermined);
    let s5 = symmetric(5);
    // Sylow 2 of S5 is D8: metacyclic, so still undetermined
    assert_eq!(run(&s5, &q(), Mode::Tame).status, Status::Undetermined);
}

#[test]
fn trivial_and_budget() {
    expect(
        &FiniteGroup::trivial(),
        &q(),
        Mode::Admissible,
        Status::Admissible,
        Theorem::TrivialGroup,
    );
    expect(
        &FiniteGroup::trivial(),
        &q(),
        Mode::Tame,
        Status::TamelyAdmissible,
        Theorem::TrivialGroup,
    );
    let budgets = Budgets {
        order: 8,
        ..Budgets::default()
    };
    let v = decide_with(&cyclic(9), &q(), Mode::Admissible, &budgets);
    assert!(matches!(v.blocker, Some(Blocker::Budget { .. })));
}

#[test]
fn undetermined_when_zeta_p_in_k() {
    // Q(√-3, √7): 3 splits in Q(√7) and ζ3 lies in K
    let kk = k(&[100, 0, -8, 0, 1]);
    assert!(kk.is_galois() && kk.p_decomposes(3).unwrap());
    let v = run(&elementary_abelian(3, 3), &kk, Mode::Admissible);
    assert_eq!(v.status, Status::Undetermined);
    assert_eq!(
        v.blocker,
        Some(Blocker::Hypothesis {
            name: "zeta_p in K".into()
        })
    );
    // metacyclic groups stay decidable
    assert_eq!(
        run(&modular_p_cubed(3), &kk, Mode::Admissible).status,
        Status::Admissible
    );
}

#[test]
fn tamely_admissible_implies_admissible() {
    let fields = [q(), k(&[1, 0, 1]), k(&[-2, 0, 1]), k(&[-7, 0, 1]), k(&[1, -3, 0, 1])];
    let groups = [
        dihedral(4),
        quaternion16(),
        cyclic(9),
        modular_p_cubed(3),
        elementary_abelian(3, 2),
        direct_product(&[dihedral(4), cyclic(3)], 4096).unwrap(),
        symmetric(3),
    ];
    for kk in &fields {
        for g in &groups {
            let tame = decide(g, kk, Mode::Tame).status;
            let adm = decide(g, kk, Mode::Admissible).status;
            if tame == Status::TamelyAdmissible {
                assert_eq!(adm, Status::Admissible, "order {} over {}", g.order(), kk.label());
            }
            if adm == Status::NotAdmissible {
                assert_eq!(
                    tame,
                    Status::NotTamelyAdmissible,
                    "order {} over {}",
                    g.order(),
                    kk.label()
                );
            }
        }
    }
}
