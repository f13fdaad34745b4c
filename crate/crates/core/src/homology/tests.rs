use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::graph::{enumerate_graphs, induced_matching_number, EnumerateOptions, Graph};
use crate::ideal::{cover_ideal, edge_ideal, power, Monomial, MonomialIdeal, VariableSpace};

const Q: Field = Field::Rationals;

fn ideal(text: &str) -> MonomialIdeal {
    text.parse().unwrap()
}

fn entries(t: &BettiTable) -> Vec<(usize, usize, u64)> {
    t.entries().collect()
}

#[test]
fn koszul_of_two_variables() {
    let i = ideal("ring x1 x2\nx1\nx2\n");
    let h = betti_table_squarefree(&i, Q, 18).unwrap();
    assert_eq!(entries(&h), vec![(0, 0, 1), (1, 1, 2), (2, 2, 1)]);
    assert_eq!(h.pd(), 2);
    assert_eq!(h, taylor_betti_oracle(&i, Q, 12).unwrap());
}

#[test]
fn triangle_edge_ideal() {
    let i = edge_ideal(&Graph::complete(3).unwrap());
    let h = betti_table_squarefree(&i, Q, 18).unwrap();
    // The full vertex set restricts to three points, so β_{2,3} = 2.
    assert_eq!(entries(&h), vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
    assert_eq!((h.pd(), h.reg()), (2, 1));
    assert_eq!(h, taylor_betti_oracle(&i, Q, 12).unwrap());
}

#[test]
fn cover_ideal_of_p4() {
    let j = cover_ideal(&Graph::path(4).unwrap()).unwrap();
    assert_eq!(j.to_string(), "(x1 x3, x2 x3, x2 x4)");
    let h = betti_table_squarefree(&j, Q, 18).unwrap();
    assert_eq!(h.pd(), 2);
    assert_eq!(pd_reg_depth(&j, Q, 18).unwrap().depth, 2);
}

#[test]
fn complexes_from_ideals_and_graphs() {
    let c = stanley_reisner_complex(&ideal("ring x1 x2\nx1 x2\n")).unwrap();
    assert_eq!(c.faces(), vec![0, 0b01, 0b10]);
    let k3 = independence_complex(&Graph::complete(3).unwrap());
    assert_eq!(k3.faces(), vec![0, 1, 2, 4]);
    assert_eq!(stanley_reisner_complex(&edge_ideal(&Graph::complete(3).unwrap())).unwrap(), k3);
    let zero = MonomialIdeal::zero(Arc::new(VariableSpace::simple(3)));
    assert_eq!(stanley_reisner_complex(&zero).unwrap().dimension(), 2);
    assert!(stanley_reisner_complex(&ideal("ring x1\nx1^2\n")).is_err());
    assert!(stanley_reisner_complex(&ideal("ring x1\n1\n")).is_err());

    let p3 = independence_complex(&Graph::path(3).unwrap());
    assert_eq!(p3.faces(), vec![0, 0b001, 0b101, 0b010, 0b100]);
    assert_eq!(independence_complex(&Graph::complete(2).unwrap()).faces(), vec![0, 1, 2]);
    assert_eq!(independence_complex(&Graph::new(3).unwrap()).dimension(), 2);
}

#[test]
fn taylor_examples() {
    let principal = ideal("ring x1 x2\nx1^2 x2\n");
    let t = taylor_betti_oracle(&principal, Q, 12).unwrap();
    assert_eq!(entries(&t), vec![(0, 0, 1), (1, 3, 1)]);
    let m2 = power(&ideal("ring x1 x2\nx1\nx2\n"), 2).unwrap();
    let t = taylor_betti_oracle(&m2, Q, 12).unwrap();
    assert_eq!(entries(&t), vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
    assert!(taylor_betti_oracle(&m2, Q, 2).is_err());
}

#[test]
fn quotient_invariants() {
    for n in 1..=4 {
        let gens: Vec<Monomial> = (0..n).map(|v| Monomial::from_support(n, 1 << v)).collect();
        let m = MonomialIdeal::new(Arc::new(VariableSpace::simple(n)), gens).unwrap();
        assert_eq!(pd_reg_depth(&m, Q, 18).unwrap(), QuotientInvariants { num_vars: n, pd: n, reg: 0, depth: 0 });
    }
    let m = ideal("ring x1 x2\nx1\nx2\n");
    for k in 1..=4 {
        let inv = pd_reg_depth(&power(&m, k).unwrap(), Q, 18).unwrap();
        assert_eq!((inv.depth, inv.reg), (0, k - 1));
    }
    assert!(pd_reg_depth(&ideal("ring x1\n1\n"), Q, 18).is_err());
}

#[test]
fn symbolic_cover_depths() {
    let k2 = Graph::complete(2).unwrap();
    for k in 1..=5 {
        assert_eq!(depth_symbolic_cover(&k2, k, Q, 18).unwrap().depth, 0);
    }
    let p4 = Graph::path(4).unwrap();
    let depths: Vec<usize> = (1..=3).map(|k| depth_symbolic_cover(&p4, k, Q, 18).unwrap().depth).collect();
    assert_eq!(depths, vec![2, 1, 1]);
    let k3 = Graph::complete(3).unwrap();
    for k in 1..=3 {
        assert_eq!(depth_symbolic_cover(&k3, k, Q, 18).unwrap().depth, 1);
    }
    assert!(matches!(depth_symbolic_cover(&p4, 5, Q, 18), Err(crate::Error::Resource(_))));
    assert!(depth_symbolic_cover(&Graph::new(3).unwrap(), 1, Q, 18).is_err());
}

#[test]
fn edge_ideal_regularity() {
    assert_eq!(reg_edge_ideal(&Graph::complete(2).unwrap(), Q, 18).unwrap(), 2);
    assert_eq!(reg_edge_ideal(&Graph::path(4).unwrap(), Q, 18).unwrap(), 2);
    // reg S/I(C5) = 2, while the induced matching number of C5 is 1
    let c5 = Graph::cycle(5).unwrap();
    assert_eq!(reg_edge_ideal(&c5, Q, 18).unwrap(), 3);
    assert_eq!(taylor_betti_oracle(&edge_ideal(&c5), Q, 12).unwrap().reg(), 2);
    assert_eq!(induced_matching_number(&c5), 1);
    assert!(reg_edge_ideal(&Graph::new(2).unwrap(), Q, 18).is_err());
    assert!(matches!(reg_edge_ideal(&Graph::path(20).unwrap(), Q, 18), Err(crate::Error::Resource(_))));
}

#[test]
fn independence_route_matches_hochster_on_small_graphs() {
    for n in 1..=5 {
        for g in enumerate_graphs(n, EnumerateOptions::default(), 7).unwrap() {
            for field in [Q, Field::F2] {
                let fast = edge_ideal_betti_table(&g, field, 18).unwrap();
                let generic = betti_table_squarefree(&edge_ideal(&g), field, 18).unwrap();
                assert_eq!(fast, generic, "{g:?}");
            }
        }
    }
}

#[test]
fn betti_json_round_trip() {
    let t = betti_table_squarefree(&edge_ideal(&Graph::cycle(5).unwrap()), Q, 18).unwrap();
    let v = t.to_json();
    assert_eq!(v["num_vars"], 5);
    assert_eq!(v["entries"][0], serde_json::json!([0, 0, 1]));
    assert_eq!(BettiTable::from_json(&v).unwrap(), t);
    assert!(BettiTable::from_json(&serde_json::json!({"num_vars": 2})).is_err());
    assert_eq!(t.to_string().lines().next(), Some("0 0 1"));
}

fn random_graph(n: usize, bits: u64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    let mut idx = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if bits >> (idx % 64) & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            idx += 1;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hochster_matches_taylor(n in 1usize..=6, raw in prop::collection::vec(1u64..64, 1..=7)) {
        let full = (1u64 << n) - 1;
        let masks: Vec<u64> = raw.iter().map(|m| m & full).filter(|&m| m != 0).collect();
        prop_assume!(!masks.is_empty());
        let i = MonomialIdeal::from_supports(Arc::new(VariableSpace::simple(n)), &masks).unwrap();
        for field in [Q, Field::F2] {
            prop_assert_eq!(betti_table_squarefree(&i, field, 18).unwrap(), taylor_betti_oracle(&i, field, 12).unwrap());
        }
    }

    #[test]
    fn homology_ignores_vertex_order(n in 2usize..=8, bits in any::<u64>(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let g = random_graph(n, bits);
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(
            independence_homology(&g, g.vertex_mask(), Q),
            independence_homology(&h, h.vertex_mask(), Q)
        );
        prop_assert_eq!(
            independence_complex(&g).reduced_homology_dims(Q, 18).unwrap(),
            independence_homology(&g, g.vertex_mask(), Q)
        );
        prop_assert_eq!(edge_ideal_betti_table(&g, Q, 18).unwrap(), edge_ideal_betti_table(&h, Q, 18).unwrap());
    }

    #[test]
    fn auslander_buchsbaum_bounds(n in 2usize..=6, bits in any::<u64>()) {
        let g = random_graph(n, bits);
        prop_assume!(g.num_edges() > 0);
        let inv = pd_reg_depth(&cover_ideal(&g).unwrap(), Q, 18).unwrap();
        prop_assert_eq!(inv.depth + inv.pd, n);
        let inv = pd_reg_depth(&edge_ideal(&g), Q, 18).unwrap();
        prop_assert_eq!(inv.depth + inv.pd, n);
    }
}
