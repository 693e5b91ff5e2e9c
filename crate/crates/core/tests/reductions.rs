use mbgame::graph::Graph;
use mbgame::planarity::{planarity_check, Planarity};
use mbgame::reductions::*;
use mbgame::solver::cg;
use mbgame::verify::{random_playouts, verify_strategy_exhaustive, VerifyOptions};
use mbgame::{GameVariant, Player};

/// Every instance on `n` variables with at most two clauses, up to clause order.
fn all_instances(n: usize) -> Vec<CnfInstance> {
    let supports: Vec<Vec<usize>> = (1u32..1 << n).map(|m| (0..n).filter(|x| m >> x & 1 == 1).collect()).collect();
    let mut out = vec![CnfInstance::new(n, vec![]).unwrap()];
    for (i, a) in supports.iter().enumerate() {
        out.push(CnfInstance::new(n, vec![a.clone()]).unwrap());
        for b in &supports[i..] {
            out.push(CnfInstance::new(n, vec![a.clone(), b.clone()]).unwrap());
        }
    }
    out
}

#[test]
fn cnf_reductions_are_sound() {
    for n in 1..=4 {
        for cnf in all_instances(n) {
            let alice = solve_poscnf(&cnf).unwrap() == Player::Alice;
            for out in [build_bipartite(&cnf).unwrap(), build_split(&cnf).unwrap()] {
                check_structure(&out).unwrap();
                let v = cg(&out.g, &GameVariant::Plain).unwrap().value;
                assert_eq!(alice, v >= out.k, "{} on {cnf}", out.kind);
            }
        }
    }
}

#[test]
fn lifted_cnf_strategies_keep_their_guarantee() {
    let bob_wins = CnfInstance::new(2, vec![vec![0], vec![1]]).unwrap();
    let alice_wins = CnfInstance::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
    for build in [build_bipartite, build_split] {
        let out = build(&bob_wins).unwrap();
        let bob = lift_strategy(&out, Player::Bob).unwrap();
        let r = verify_strategy_exhaustive(&out.g, &GameVariant::Plain, &bob, Player::Bob, VerifyOptions::default())
            .unwrap();
        assert!(r.value < out.k);
        assert!(lift_strategy(&out, Player::Alice).is_err());

        let out = build(&alice_wins).unwrap();
        let alice = lift_strategy(&out, Player::Alice).unwrap();
        let r =
            verify_strategy_exhaustive(&out.g, &GameVariant::Plain, &alice, Player::Alice, VerifyOptions::default())
                .unwrap();
        assert!(r.value >= out.k);
    }
}

#[test]
fn lifted_cnf_strategies_on_every_small_instance() {
    for n in 1..=3 {
        for cnf in all_instances(n) {
            let side = solve_poscnf(&cnf).unwrap();
            let out = build_bipartite(&cnf).unwrap();
            let s = lift_strategy(&out, side).unwrap();
            let r =
                verify_strategy_exhaustive(&out.g, &GameVariant::Plain, &s, side, VerifyOptions::default()).unwrap();
            match side {
                Player::Alice => assert!(r.value >= out.k, "{cnf}"),
                Player::Bob => assert!(r.value < out.k, "{cnf}"),
            }
        }
    }
}

#[test]
fn planar_build_on_the_smallest_instances() {
    let long = HexInstance::new(Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(), 0, 3).unwrap();
    assert_eq!(solve_hex(&long).unwrap(), Player::Bob);
    let out = build_planar(&long).unwrap();
    assert_ne!(planarity_check(&out.g), Planarity::NonPlanar);
    let bob = lift_strategy(&out, Player::Bob).unwrap();
    let r = random_playouts(&out.g, &GameVariant::Plain, &bob, Player::Bob, 5_000, 1).unwrap();
    assert!(r.max <= 4 + 3, "Alice reached {}", r.max);

    let short = HexInstance::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), 0, 2).unwrap();
    let out = build_planar(&short).unwrap();
    let alice = lift_strategy(&out, Player::Alice).unwrap();
    let r = random_playouts(&out.g, &GameVariant::Plain, &alice, Player::Alice, 5_000, 2).unwrap();
    assert!(r.min >= out.k, "Alice held to {}", r.min);
}
