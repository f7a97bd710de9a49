//! Worked examples for each public operation.

use weylspec::oracle::lower_interval;
use weylspec::parabolic::ConvertKind;
use weylspec::symplectic::{self, EpsTuple, SignedPermView};
use weylspec::twisted::{OrbitPair, SpecAlgorithm};
use weylspec::{CoxeterSystem, Element, Error, Family, Side, SimpleSubset, TwistedOrder};

fn sys(f: Family, n: usize) -> CoxeterSystem {
    CoxeterSystem::new(f, n, None).unwrap()
}

/// One-based word.
fn w(s: &CoxeterSystem, word: &[usize]) -> Element {
    s.element_from_word(&word.iter().map(|i| i - 1).collect::<Vec<_>>())
        .unwrap()
}

fn set(ix: &[usize]) -> SimpleSubset {
    ix.iter().map(|i| i - 1).collect()
}

fn words(s: &CoxeterSystem, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|x| s.word_string(x)).collect()
}

#[test]
fn construction() {
    assert_eq!(sys(Family::A, 2).positive_roots().len(), 3);
    assert_eq!(sys(Family::C, 2).positive_roots().len(), 4);
    assert!(CoxeterSystem::new(Family::A, 3, Some(vec![2, 1, 0])).is_ok());
    assert!(matches!(
        CoxeterSystem::new(Family::A, 3, Some(vec![1, 1, 2])),
        Err(Error::NotDiagramAutomorphism(_))
    ));
    assert!(matches!(
        CoxeterSystem::new(Family::A, 3, Some(vec![1, 0, 2])),
        Err(Error::NotDiagramAutomorphism(_))
    ));
    assert!(matches!(
        CoxeterSystem::new(Family::D, 3, None),
        Err(Error::UnsupportedType(_))
    ));
    assert!(CoxeterSystem::new(Family::A, 0, None).is_err());
}

#[test]
fn arithmetic_and_length() {
    let a2 = sys(Family::A, 2);
    let e = a2.identity();
    assert_eq!(a2.mul(&w(&a2, &[1]), &w(&a2, &[1])), e);
    assert_eq!(a2.inverse(&e), e);
    assert_eq!(e.length(), 0);
    assert_eq!(a2.w0().length(), 3);
    for g in 2..=5 {
        let c = sys(Family::C, g);
        assert_eq!(c.w0().length(), g * g);
    }
    assert!(a2.canonical_word(&e).is_empty());
    assert_eq!(a2.word_string(&a2.w0()), "s1s2s1");
    assert_eq!(a2.word_string(&e), "e");
}

#[test]
fn descents() {
    let a2 = sys(Family::A, 2);
    assert!(a2.descents(&a2.identity(), Side::Left).is_empty());
    assert_eq!(a2.descents(&a2.w0(), Side::Right), set(&[1, 2]));
    assert_eq!(a2.descents(&w(&a2, &[1, 2]), Side::Right), set(&[2]));
    assert_eq!(a2.descents(&w(&a2, &[1, 2]), Side::Left), set(&[1]));
}

#[test]
fn longest_elements() {
    let a2 = sys(Family::A, 2);
    assert_eq!(a2.longest_element(SimpleSubset::EMPTY), a2.identity());
    assert_eq!(a2.longest_element(set(&[1])), w(&a2, &[1]));
    for g in 2..=5 {
        let (c, j) = symplectic::build_symplectic(g).unwrap();
        let view = symplectic::perm_view(&c, &c.longest_element(j)).unwrap();
        for i in 1..=g {
            assert_eq!(view.image(i), g + 1 - i);
        }
    }
}

#[test]
fn bruhat_examples() {
    let a2 = sys(Family::A, 2);
    let all = a2.enumerate().unwrap();
    for x in &all {
        assert!(a2.bruhat_leq(&a2.identity(), x));
        assert!(a2.bruhat_leq(x, x));
    }
    assert!(!a2.bruhat_leq(&w(&a2, &[1]), &w(&a2, &[2])));
    assert!(a2.bruhat_leq(&w(&a2, &[2]), &w(&a2, &[1, 2])));
    assert_eq!(lower_interval(&a2, &w(&a2, &[1, 2])).len(), 4);

    let a3 = sys(Family::A, 3);
    assert!(matches!(
        a3.try_bruhat_leq(&a2.identity(), &a3.identity()),
        Err(Error::MixedSystems)
    ));
}

#[test]
fn frobenius_examples() {
    let c3 = sys(Family::C, 3);
    for x in c3.enumerate().unwrap().iter() {
        assert_eq!(c3.apply_frobenius(x), *x);
    }
    let a3 = CoxeterSystem::new(Family::A, 3, Some(vec![2, 1, 0])).unwrap();
    assert_eq!(a3.apply_frobenius(&w(&a3, &[1, 2])), w(&a3, &[3, 2]));
    assert_eq!(a3.frobenius_subset(set(&[1])), set(&[3]));
}

#[test]
fn subgroup_enumeration() {
    let a2 = sys(Family::A, 2);
    assert_eq!(a2.enumerate_subgroup(SimpleSubset::EMPTY).unwrap(), vec![a2.identity()]);
    assert_eq!(a2.enumerate_subgroup(set(&[1, 2])).unwrap().len(), 6);
    for (g, fact) in [(2, 2), (3, 6), (4, 24)] {
        let (c, j) = symplectic::build_symplectic(g).unwrap();
        assert_eq!(c.enumerate_subgroup(j).unwrap().len(), fact);
    }
    let a3 = sys(Family::A, 3).with_max_order(10);
    assert!(matches!(a3.enumerate(), Err(Error::BoundExceeded { .. })));
}

#[test]
fn coset_representatives() {
    let a2 = sys(Family::A, 2);
    assert_eq!(a2.min_coset_reps(SimpleSubset::EMPTY, Side::Left).unwrap().len(), 6);
    let left = a2.min_coset_reps(set(&[1]), Side::Left).unwrap();
    assert_eq!(words(&a2, &left), ["e", "s2", "s2s1"]);
    let right = a2.min_coset_reps(set(&[1]), Side::Right).unwrap();
    assert_eq!(words(&a2, &right), ["e", "s2", "s1s2"]);
    for g in 1..=5 {
        let (c, j) = symplectic::build_symplectic(g).unwrap();
        assert_eq!(c.min_coset_reps(j, Side::Left).unwrap().len(), 1 << g);
    }

    assert_eq!(a2.double_reps(SimpleSubset::EMPTY, SimpleSubset::EMPTY).unwrap().len(), 6);
    let full = a2.all_generators();
    assert_eq!(a2.double_reps(full, full).unwrap(), vec![a2.identity()]);
    let d = a2.double_reps(set(&[1]), set(&[2])).unwrap();
    assert_eq!(words(&a2, &d), ["e", "s2s1"]);
}

#[test]
fn decompositions() {
    let a2 = sys(Family::A, 2);
    let j = set(&[1]);
    let x = w(&a2, &[2, 1]);
    let d = a2.decompose(&x, j);
    assert_eq!((d.u, d.w), (a2.identity(), x));
    let d = a2.decompose(&w(&a2, &[1]), j);
    assert_eq!((d.u, d.w), (w(&a2, &[1]), a2.identity()));
    let d = a2.decompose(&w(&a2, &[1, 2]), j);
    assert_eq!((d.u, d.w), (w(&a2, &[1]), w(&a2, &[2])));

    let k = set(&[2]);
    let h = a2.howlett_decompose(&w(&a2, &[2, 1]), j, k);
    assert_eq!((h.u, h.wbar, h.v), (a2.identity(), w(&a2, &[2, 1]), a2.identity()));
    let h = a2.howlett_decompose(&w(&a2, &[1]), j, k);
    assert_eq!((h.u, h.wbar, h.v), (w(&a2, &[1]), a2.identity(), a2.identity()));
    let h = a2.howlett_decompose(&a2.w0(), j, k);
    assert_eq!((h.u, h.wbar, h.v), (w(&a2, &[1]), w(&a2, &[2, 1]), a2.identity()));
    assert_eq!(h.k_prime, set(&[2]));
}

#[test]
fn howlett_variant() {
    let a3 = sys(Family::A, 3);
    let (j, k) = (set(&[1, 2]), set(&[2, 3]));
    for wbar in a3.double_reps(j, k).unwrap() {
        assert!(a3.howlett_variant_check(&wbar, &wbar, j, k).unwrap());
        for v in a3.enumerate_subgroup(k).unwrap() {
            let x = a3.mul(&wbar, &v);
            assert!(a3.howlett_variant_check(&x, &wbar, j, k).unwrap());
        }
    }
    let bad = a3.howlett_variant_check(&w(&a3, &[1]), &a3.identity(), j, k);
    assert!(matches!(bad, Err(Error::Precondition(_))));
}

#[test]
fn conversions() {
    let c3 = sys(Family::C, 3);
    let j = set(&[1, 2]);
    let e = c3.identity();
    assert_eq!(c3.convert(&e, j, ConvertKind::Inverse).unwrap(), e);
    let k = c3.opposite(j);
    let y = c3.convert(&e, j, ConvertKind::ReverseToWK).unwrap();
    assert_eq!(y, c3.w0_upper(k));
    assert_eq!(y.length(), c3.w0().length() - c3.longest_element(k).length());
    let not_min = w(&c3, &[1]);
    assert!(matches!(
        c3.convert(&not_min, j, ConvertKind::Inverse),
        Err(Error::NotInQuotient { .. })
    ));
}

#[test]
fn refinement() {
    let a2 = sys(Family::A, 2);
    let (j, k) = (set(&[1]), set(&[2]));
    let e = a2.identity();
    assert_eq!(a2.refinement_type(j, k, &e).unwrap(), j.intersection(k));
    let full = a2.all_generators();
    assert_eq!(a2.refinement_type(full, full, &e).unwrap(), full);
    assert_eq!(a2.refinement_type(j, k, &w(&a2, &[2, 1])).unwrap(), set(&[1]));
    assert!(a2.refinement_type(j, k, &w(&a2, &[1])).is_err());

    assert!(a2.refinement_contains_borel(j, k, &e));
    for x in a2.min_coset_reps(j, Side::Left).unwrap() {
        assert!(a2.refinement_contains_borel(j, SimpleSubset::EMPTY, &x));
    }
    assert!(!a2.refinement_contains_borel(j, SimpleSubset::EMPTY, &w(&a2, &[1])));
}

#[test]
fn orbit_types() {
    let c2 = sys(Family::C, 2);
    let j = set(&[1]);
    for x in c2.min_coset_reps(j, Side::Left).unwrap() {
        let (ji, ki) = c2.j_infinity(&x, j).unwrap();
        let seq = c2.orbit_type_sequence(&x, j).unwrap();
        assert_eq!((seq.j_infinity(), seq.k_infinity()), (ji, ki));
        assert_eq!(seq.y_infinity(), x);
    }
    let x = w(&c2, &[2, 1]);
    assert_eq!(
        c2.j_infinity(&x, SimpleSubset::EMPTY).unwrap(),
        (SimpleSubset::EMPTY, SimpleSubset::EMPTY)
    );
    let seq = c2.orbit_type_sequence(&x, SimpleSubset::EMPTY).unwrap();
    assert_eq!(seq.stable_index, 0);
    assert_eq!(seq.y_infinity(), x);
    assert_eq!(c2.orbit_type_sequence(&c2.identity(), j).unwrap().y_infinity(), c2.identity());
    assert!(c2.orbit_type_sequence(&w(&c2, &[1]), j).is_err());
}

#[test]
fn delta() {
    let c3 = sys(Family::C, 3);
    let t = TwistedOrder::new(&c3, SimpleSubset::EMPTY).unwrap();
    assert_eq!(t.subgroup(), [c3.identity()]);

    for g in 2..=5 {
        let (c, j) = symplectic::build_symplectic(g).unwrap();
        let t = TwistedOrder::new(&c, j).unwrap();
        assert_eq!(t.k(), j);
        let w0j = c.longest_element(j);
        for s in j.iter() {
            assert_eq!(t.delta(&c.generator(s)), c.mul3(&w0j, &c.generator(s), &w0j));
        }
    }

    let a3 = CoxeterSystem::new(Family::A, 3, Some(vec![2, 1, 0])).unwrap();
    assert!(matches!(
        TwistedOrder::new(&a3, set(&[1])),
        Err(Error::FrobeniusDoesNotFixJ { .. })
    ));
    assert!(TwistedOrder::new(&a3, set(&[1, 3])).is_ok());
}

#[test]
fn spec_order_examples() {
    let c2 = sys(Family::C, 2);
    let t = TwistedOrder::new(&c2, set(&[1])).unwrap();
    let q = t.quotient().unwrap();
    assert_eq!(q.len(), 4);
    for a in &q {
        assert_eq!(t.spec_leq_naive_witness(a, a), Some(c2.identity()));
        for b in &q {
            let bfs = t.spec_leq_bfs(a, b);
            assert_eq!(t.spec_leq_naive(a, b), bfs);
            assert_eq!(t.spec_leq_pair(a, b), bfs);
            if c2.bruhat_leq(a, b) {
                assert!(bfs);
            }
            if a.length() > b.length() {
                assert!(!bfs);
            }
        }
    }
    let lengths: Vec<usize> = q.iter().map(|x| x.length()).collect();
    assert_eq!(lengths, [0, 1, 2, 3]);

    let p = t.spec_poset().unwrap();
    assert_eq!(p.len(), 4);
    assert_eq!(p.covers().len(), 3);

    let empty = TwistedOrder::new(&c2, SimpleSubset::EMPTY).unwrap();
    let all = c2.enumerate().unwrap();
    for a in &all {
        for b in &all {
            assert_eq!(empty.spec_leq(a, b, SpecAlgorithm::Naive), c2.bruhat_leq(a, b));
        }
    }
    let full = TwistedOrder::new(&c2, c2.all_generators()).unwrap();
    assert_eq!(full.spec_poset().unwrap().len(), 1);
}

#[test]
fn closure_sets() {
    let (c3, j) = symplectic::build_symplectic(3).unwrap();
    let t = TwistedOrder::new(&c3, j).unwrap();
    let p = t.spec_poset().unwrap();
    assert_eq!(t.closure_set(&c3.identity()).unwrap(), vec![c3.identity()]);
    for (i, x) in p.labels().iter().enumerate() {
        let closure = t.closure_set(x).unwrap();
        assert_eq!(closure.len(), p.down_set(i).len());
    }
    let top = p.maximal();
    assert_eq!(top.len(), 1);
    assert_eq!(t.closure_set(&p.labels()[top[0]]).unwrap().len(), 8);
}

#[test]
fn coroll_check() {
    let c2 = sys(Family::C, 2);
    let t = TwistedOrder::new(&c2, set(&[1])).unwrap();
    let e = c2.identity();
    for a in t.quotient().unwrap() {
        for b in t.quotient().unwrap() {
            assert_eq!(t.spec_coroll_check(&a, &b, &e, &e).unwrap(), c2.bruhat_leq(&b, &a));
        }
    }
    let s1 = w(&c2, &[1]);
    assert!(t.spec_coroll_check(&e, &e, &e, &s1).is_err());
}

#[test]
fn springer() {
    let c2 = sys(Family::C, 2);
    let j = set(&[1]);
    let t = TwistedOrder::new(&c2, j).unwrap();
    let reps = c2.min_coset_reps(j, Side::Right).unwrap();
    for x in &reps {
        for v in c2.enumerate().unwrap().iter() {
            let p = OrbitPair { x: *x, w: *v };
            assert!(t.springer_orbit_equal(&p, &p));
            assert!(t.springer_orbit_in_closure(&p, &p).unwrap());
        }
    }
    let bad = OrbitPair { x: w(&c2, &[1]), w: c2.identity() };
    assert!(t.springer_orbit_in_closure(&bad, &bad).is_err());

    assert_eq!(t.sigma_closure(&c2.identity()).unwrap(), vec![c2.identity()]);
    assert_eq!(c2.lower_cone(&c2.w0()).unwrap().len(), 8);
}

#[test]
fn ymin_ymax() {
    let c2 = sys(Family::C, 2);
    let e = c2.identity();
    for x in c2.enumerate().unwrap().iter() {
        assert_eq!(c2.ymin_ymax(&e, x).unwrap(), (e, *x));
    }
    let w0 = c2.w0();
    for v in c2.enumerate().unwrap().iter() {
        let (lo, hi) = c2.ymin_ymax(v, &w0).unwrap();
        assert_eq!((lo, hi), (e, w0));
    }
}

#[test]
fn witness_lemmas() {
    let c2 = sys(Family::C, 2);
    let all = c2.enumerate().unwrap();
    let e = c2.identity();
    for a in &all {
        for v in [1, 2] {
            assert!(c2.bruhat_witness_lemmas(a, a, a, v).is_ok());
            assert_eq!(c2.bruhat_witness_lemmas(&e, a, &c2.w0(), v).unwrap(), e);
        }
    }
    assert!(c2.bruhat_witness_lemmas(&e, &c2.w0(), &e, 1).is_err());

    let j = set(&[1]);
    for x in c2.min_coset_reps(j, Side::Left).unwrap() {
        for u in c2.enumerate().unwrap().iter() {
            if c2.mul(&x, u).length() != x.length() + u.length() {
                continue;
            }
            let d = c2.decompose(&c2.mul(&x, u), j);
            assert_eq!(c2.bruhat_lifting_witness(&x, u, &d.u, j).unwrap(), *u);
            let u1 = c2.bruhat_lifting_witness(&x, u, &e, j).unwrap();
            assert_eq!(c2.mul(&x, &u1), d.w);
        }
    }

    let t = TwistedOrder::new(&c2, j).unwrap();
    for x in t.quotient().unwrap() {
        for u in t.subgroup() {
            let (found, word) = t.bruhatfour_witness(&x, u, &e).unwrap();
            assert_eq!(word.len(), found.length());
            let (_, word) = t.bruhatfour_witness(&x, u, u).unwrap();
            assert!(word.len() <= u.length());
        }
        for y in t.quotient().unwrap() {
            assert!(!t.lengthequal_check(&x, &y));
            if t.spec_leq_bfs(&x, &y) {
                t.lemma_spec1_witness(&x, &y).unwrap();
            } else {
                assert!(t.lemma_spec1_witness(&x, &y).is_err());
            }
        }
    }
}

#[test]
fn symplectic_model() {
    let (c1, j1) = symplectic::build_symplectic(1).unwrap();
    assert_eq!(c1.order(), 2);
    assert!(j1.is_empty());
    let (c2, j2) = symplectic::build_symplectic(2).unwrap();
    assert_eq!(c2.order(), 8);
    assert_eq!(c2.enumerate_subgroup(j2).unwrap().len(), 2);

    assert!(SignedPermView::new(vec![2, 1, 4, 3]).is_ok());
    assert!(matches!(
        SignedPermView::new(vec![2, 1, 3, 4]),
        Err(Error::InvalidSymplectic(_))
    ));
    assert!(SignedPermView::new(vec![1, 1, 4, 4]).is_err());
    assert!(SignedPermView::new(vec![1, 2, 3]).is_err());

    let e = c2.identity();
    assert_eq!(symplectic::perm_view(&c2, &e).unwrap().images(), [1, 2, 3, 4]);
    let ones: EpsTuple = "11".parse().unwrap();
    assert_eq!(ones.dimension(), 3);
    let g5: EpsTuple = "10000".parse().unwrap();
    assert_eq!(g5.dimension(), 5);
    assert_eq!("11111".parse::<EpsTuple>().unwrap().dimension(), 15);
    assert!("102".parse::<EpsTuple>().is_err());
    assert!(EpsTuple::new(vec![]).is_err());

    let q = c2.min_coset_reps(j2, Side::Left).unwrap();
    for x in &q {
        assert!(symplectic::jw_bruhat(&c2, x, x).unwrap());
        assert!(symplectic::jw_bruhat(&c2, &e, x).unwrap());
    }
    assert!(symplectic::jw_bruhat(&c2, &w(&c2, &[1]), &e).is_err());
}

#[test]
fn eo_posets() {
    for (g, dims) in [(1, vec![0, 1]), (2, vec![0, 1, 2, 3])] {
        let p = symplectic::eo_poset(g).unwrap();
        let got: Vec<usize> = p.labels().iter().map(|s| s.dimension).collect();
        assert_eq!(got, dims);
    }
    let p = symplectic::eo_poset(3).unwrap();
    assert_eq!(p.len(), 8);
    assert_eq!(p.labels().iter().map(|s| s.dimension).max(), Some(6));
    assert!(matches!(
        symplectic::eo_poset_bounded(4, 3),
        Err(Error::BoundExceeded { .. })
    ));
    assert!(symplectic::eo_poset(0).is_err());
}
