use std::sync::Arc;

use proptest::prelude::*;

use super::*;

fn space(n: usize) -> Arc<VariableSpace> {
    Arc::new(VariableSpace::simple(n))
}

fn mono(exps: &[u32]) -> Monomial {
    Monomial::new(exps.to_vec())
}

fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(space(n), gens.iter().map(|g| mono(g)).collect()).unwrap()
}

fn gens(i: &MonomialIdeal) -> Vec<Vec<u32>> {
    i.generators().iter().map(|m| m.exponents().to_vec()).collect()
}

/// Every monomial with each exponent in `0..=bound`.
fn box_monomials(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=bound).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Minimal generators of a monomial ideal known only through a membership
/// predicate, assuming all minimal generators lie in the box.
fn minimal_members(n: usize, bound: u32, member: impl Fn(&Monomial) -> bool) -> Vec<Vec<u32>> {
    let members: Vec<Monomial> = box_monomials(n, bound).into_iter().filter(|m| member(m)).collect();
    let mut minimal: Vec<Vec<u32>> = members
        .iter()
        .filter(|m| !members.iter().any(|o| o != *m && o.divides(m)))
        .map(|m| m.exponents().to_vec())
        .collect();
    minimal.sort_by(|a, b| b.cmp(a));
    minimal
}

#[test]
fn minimalize_examples() {
    assert_eq!(gens(&ideal(2, &[&[1, 0], &[1, 1]])), vec![vec![1, 0]]);
    assert_eq!(gens(&ideal(3, &[&[1, 1, 0], &[0, 1, 1]])), vec![vec![1, 1, 0], vec![0, 1, 1]]);
    assert_eq!(gens(&ideal(1, &[&[2], &[2]])), vec![vec![2]]);
    assert!(MonomialIdeal::new(space(2), vec![mono(&[1, 0, 0])]).is_err());
}

#[test]
fn intersect_examples() {
    let x1 = ideal(2, &[&[1, 0]]);
    let x2 = ideal(2, &[&[0, 1]]);
    assert_eq!(gens(&intersect(&x1, &x2).unwrap()), vec![vec![1, 1]]);
    let m = ideal(2, &[&[1, 0], &[0, 1]]);
    assert_eq!(intersect(&m, &m).unwrap(), m);
    let a = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
    let b = ideal(3, &[&[1, 0, 0], &[0, 0, 1]]);
    assert_eq!(gens(&intersect(&a, &b).unwrap()), vec![vec![1, 0, 0], vec![0, 1, 1]]);
    assert!(intersect(&x1, &a).is_err());
}

#[test]
fn power_examples() {
    let m = ideal(2, &[&[1, 0], &[0, 1]]);
    assert_eq!(power(&m, 2).unwrap().to_string(), "(x1^2, x1 x2, x2^2)");
    assert_eq!(power(&m, 1).unwrap(), m);
    let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
    assert_eq!(gens(&power(&i, 2).unwrap()), vec![vec![2, 2, 0], vec![1, 2, 1], vec![0, 2, 2]]);
    assert!(power(&m, 0).is_err());
}

#[test]
fn edge_and_cover_ideals() {
    let k2 = Graph::complete(2).unwrap();
    let k3 = Graph::complete(3).unwrap();
    let p3 = Graph::path(3).unwrap();
    assert_eq!(edge_ideal(&k2).to_string(), "(x1 x2)");
    assert_eq!(edge_ideal(&p3).to_string(), "(x1 x2, x2 x3)");
    assert_eq!(edge_ideal(&k3).to_string(), "(x1 x2, x1 x3, x2 x3)");
    assert!(edge_ideal(&Graph::new(2).unwrap()).is_zero());
    assert_eq!(cover_ideal(&k2).unwrap().to_string(), "(x1, x2)");
    assert_eq!(cover_ideal(&k3).unwrap().to_string(), "(x1 x2, x1 x3, x2 x3)");
    assert_eq!(cover_ideal(&p3).unwrap().to_string(), "(x1 x3, x2)");
    assert!(cover_ideal(&Graph::new(2).unwrap()).is_err());
}

#[test]
fn minimal_prime_examples() {
    let v = |i| Var::Simple(i);
    assert_eq!(minimal_primes(&ideal(2, &[&[1, 1]])).unwrap(), vec![vec![v(1)], vec![v(2)]]);
    let ik3 = edge_ideal(&Graph::complete(3).unwrap());
    assert_eq!(minimal_primes(&ik3).unwrap(), vec![vec![v(1), v(2)], vec![v(1), v(3)], vec![v(2), v(3)]]);
    assert_eq!(minimal_primes(&ideal(1, &[&[1]])).unwrap(), vec![vec![v(1)]]);
    assert!(minimal_primes(&ideal(1, &[&[2]])).is_err());
}

#[test]
fn symbolic_power_examples() {
    let m = ideal(2, &[&[1, 0], &[0, 1]]);
    for k in 1..=3 {
        assert_eq!(symbolic_power(&m, k).unwrap(), power(&m, k).unwrap());
    }
    let jk3 = cover_ideal(&Graph::complete(3).unwrap()).unwrap();
    let sym2 = symbolic_power(&jk3, 2).unwrap();
    let x1x2x3 = mono(&[1, 1, 1]);
    assert!(sym2.contains(&x1x2x3));
    assert!(!power(&jk3, 2).unwrap().contains(&x1x2x3));
    assert_eq!(symbolic_power(&jk3, 1).unwrap(), jk3);
    assert!(symbolic_power(&ideal(1, &[&[2]]), 2).is_err());
    assert!(symbolic_power(&jk3, 0).is_err());
}

#[test]
fn symbolic_power_cover_examples() {
    let k2 = Graph::complete(2).unwrap();
    assert_eq!(symbolic_power_cover(&k2, 2).unwrap().to_string(), "(x1^2, x1 x2, x2^2)");
    // Frozen from the box-membership oracle below.
    let k3 = Graph::complete(3).unwrap();
    assert_eq!(
        gens(&symbolic_power_cover(&k3, 2).unwrap()),
        vec![vec![2, 2, 0], vec![2, 0, 2], vec![1, 1, 1], vec![0, 2, 2]]
    );
    let p3 = Graph::path(3).unwrap();
    assert_eq!(symbolic_power_cover(&p3, 2).unwrap().to_string(), "(x1^2 x3^2, x1 x2 x3, x2^2)");
    assert!(symbolic_power_cover(&Graph::new(3).unwrap(), 2).is_err());
}

#[test]
fn symbolic_power_cover_matches_membership_oracle() {
    let graphs = [
        Graph::complete(3).unwrap(),
        Graph::path(3).unwrap(),
        Graph::path(4).unwrap(),
        Graph::cycle(4).unwrap(),
        Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3)]).unwrap(),
    ];
    for g in &graphs {
        for k in 1..=3usize {
            let edges = g.edges();
            let member =
                |m: &Monomial| edges.iter().all(|&(u, v)| (m.exponents()[u - 1] + m.exponents()[v - 1]) as usize >= k);
            let expected = minimal_members(g.num_vertices(), k as u32, member);
            let direct = symbolic_power_cover(g, k).unwrap();
            assert_eq!(gens(&direct), expected, "{g:?} k={k}");
            let via_primes = symbolic_power(&cover_ideal(g).unwrap(), k).unwrap();
            assert_eq!(via_primes, direct);
        }
    }
}

#[test]
fn polarize_examples() {
    let m2 = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    let pol = polarize(&m2).unwrap();
    assert_eq!(pol.to_string(), "(x_1_1 x_1_2, x_1_1 x_2_1, x_2_1 x_2_2)");
    let sq = edge_ideal(&Graph::path(3).unwrap());
    assert_eq!(polarize(&sq).unwrap().to_string(), "(x_1_1 x_2_1, x_2_1 x_3_1)");
    assert_eq!(polarize(&ideal(1, &[&[3]])).unwrap().to_string(), "(x_1_1 x_1_2 x_1_3)");
    assert!(polarize(&pol).is_err());
}

#[test]
fn polarize_rejects_layered_variables() {
    let space = Arc::new(VariableSpace::layered(1, 1));
    let i = MonomialIdeal::new(space, vec![mono(&[2])]).unwrap();
    assert!(polarize(&i).is_err());
}

#[test]
fn alexander_dual_examples() {
    let ik2 = edge_ideal(&Graph::complete(2).unwrap());
    assert_eq!(alexander_dual(&ik2).unwrap().to_string(), "(x1, x2)");
    let ik3 = edge_ideal(&Graph::complete(3).unwrap());
    assert_eq!(alexander_dual(&ik3).unwrap(), cover_ideal(&Graph::complete(3).unwrap()).unwrap());
    let ip3 = edge_ideal(&Graph::path(3).unwrap());
    assert_eq!(alexander_dual(&alexander_dual(&ip3).unwrap()).unwrap(), ip3);
    assert!(alexander_dual(&ideal(2, &[&[2, 0]])).is_err());
    assert!(alexander_dual(&MonomialIdeal::zero(space(2))).is_err());
}

#[test]
fn equality_examples() {
    let i = ideal(2, &[&[1, 0], &[1, 1]]);
    assert!(equal(&i, &i).unwrap());
    assert!(equal(&i, &ideal(2, &[&[1, 0]])).unwrap());
    assert!(equal(&i, &ideal(3, &[&[1, 0, 0]])).is_err());
    let p4 = Graph::path(4).unwrap();
    let j = cover_ideal(&p4).unwrap();
    assert!(equal(&symbolic_power_cover(&p4, 2).unwrap(), &power(&j, 2).unwrap()).unwrap());
}

#[test]
fn equal_under_bijection() {
    let pol = polarize(&edge_ideal(&Graph::path(3).unwrap())).unwrap();
    let target_space = Arc::new(VariableSpace::layered(3, 2));
    let target = MonomialIdeal::new(target_space, vec![]).unwrap();
    assert!(!equal_under(&pol, &target, |v| Some(*v)).unwrap());
    let layered = polarize(&edge_ideal(&Graph::path(3).unwrap())).unwrap();
    assert!(equal_under(&pol, &layered, |v| Some(*v)).unwrap());
    assert!(equal_under(&pol, &layered, |_| Some(Var::Layered(1, 1))).is_err());
    assert!(equal_under(&pol, &layered, |_| None).is_err());
}

#[test]
fn text_round_trip_examples() {
    let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    assert_eq!(i.to_text(), "ring x1 x2\nx1^2\nx1 x2\nx2^2\n");
    assert_eq!(i.to_text().parse::<MonomialIdeal>().unwrap(), i);
    let pol = polarize(&i).unwrap();
    assert_eq!(pol.to_text().parse::<MonomialIdeal>().unwrap(), pol);
    let zero = MonomialIdeal::zero(space(2));
    assert_eq!(zero.to_string(), "(0)");
    assert_eq!(zero.to_text().parse::<MonomialIdeal>().unwrap(), zero);
    let unit: MonomialIdeal = "ring x1\n1\nx1\n".parse().unwrap();
    assert!(unit.is_unit());
    assert_eq!(unit.num_generators(), 1);
    assert!(matches!("ring x1\nx2\n".parse::<MonomialIdeal>(), Err(Error::Parse(_))));
    assert!(matches!("x1\n".parse::<MonomialIdeal>(), Err(Error::Parse(_))));
    assert!(matches!("ring x1 x1\n".parse::<MonomialIdeal>(), Err(Error::Parse(_))));
    assert!(matches!("ring y1\n".parse::<MonomialIdeal>(), Err(Error::Parse(_))));
    let json = i.to_json();
    assert_eq!(json["generators"][1], "x1 x2");
}

fn arb_ideal(n: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..6)
        .prop_map(move |gs| MonomialIdeal::new(space(n), gs.into_iter().map(Monomial::new).collect()).unwrap())
}

fn arb_squarefree(n: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(1u64..(1 << n), 1..6).prop_map(move |ms| MonomialIdeal::from_supports(space(n), &ms).unwrap())
}

proptest! {
    #[test]
    fn minimalize_idempotent_and_order_free(gs in prop::collection::vec(prop::collection::vec(0u32..3, 3), 0..8)) {
        let monos: Vec<Monomial> = gs.into_iter().map(Monomial::new).collect();
        let a = minimalize(space(3), monos.clone()).unwrap();
        let mut rev = monos;
        rev.reverse();
        let b = minimalize(space(3), rev).unwrap();
        prop_assert_eq!(&a, &b);
        let again = minimalize(space(3), a.generators().to_vec()).unwrap();
        prop_assert_eq!(a, again);
    }

    #[test]
    fn intersect_agrees_with_membership(a in arb_ideal(3, 2), b in arb_ideal(3, 2)) {
        let c = intersect(&a, &b).unwrap();
        for m in box_monomials(3, 4) {
            prop_assert_eq!(c.contains(&m), a.contains(&m) && b.contains(&m));
        }
        prop_assert_eq!(intersect(&b, &a).unwrap(), c);
    }

    #[test]
    fn power_products_lie_in_higher_power(a in arb_ideal(3, 2), p in 1usize..3, q in 1usize..3) {
        let lhs = product(&power(&a, p).unwrap(), &power(&a, q).unwrap()).unwrap();
        let rhs = power(&a, p + q).unwrap();
        for m in lhs.generators() {
            prop_assert!(rhs.contains(m));
        }
    }

    #[test]
    fn symbolic_contains_ordinary(i in arb_squarefree(4), k in 1usize..4) {
        let sym = symbolic_power(&i, k).unwrap();
        for m in power(&i, k).unwrap().generators() {
            prop_assert!(sym.contains(m));
        }
    }

    #[test]
    fn dual_is_involution(i in arb_squarefree(5)) {
        let d = alexander_dual(&i).unwrap();
        prop_assert_eq!(alexander_dual(&d).unwrap(), i);
    }

    #[test]
    fn polarize_squarefree_is_renaming(i in arb_squarefree(4)) {
        let pol = polarize(&i).unwrap();
        let renamed = equal_under(&pol, &i, |v| match v {
            Var::Layered(x, 1) => Some(Var::Simple(*x)),
            _ => None,
        });
        prop_assert!(renamed.unwrap());
    }

    #[test]
    fn text_round_trip(i in arb_ideal(3, 3)) {
        prop_assert_eq!(i.to_text().parse::<MonomialIdeal>().unwrap(), i);
    }
}

#[test]
fn cover_is_dual_of_edge_ideal_on_small_graphs() {
    use crate::graph::{enumerate_graphs, EnumerateOptions};
    for n in 2..=5 {
        for g in enumerate_graphs(n, EnumerateOptions::default(), 7).unwrap() {
            if g.num_edges() == 0 {
                continue;
            }
            let cover = cover_ideal(&g).unwrap();
            assert_eq!(cover, alexander_dual(&edge_ideal(&g)).unwrap());
            // Brute force: minimal subsets meeting every edge.
            let edges = g.edges();
            let is_cover = |mask: u64| edges.iter().all(|&(u, v)| mask >> (u - 1) & 1 == 1 || mask >> (v - 1) & 1 == 1);
            let covers: Vec<u64> = (0..1u64 << n).filter(|&m| is_cover(m)).collect();
            let minimal: Vec<u64> =
                covers.iter().copied().filter(|&m| !covers.iter().any(|&o| o != m && o & m == o)).collect();
            let brute = MonomialIdeal::from_supports(space(n), &minimal).unwrap();
            assert_eq!(cover, brute);
        }
    }
}
