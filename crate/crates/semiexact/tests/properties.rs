//! Property sweeps: composition behaviour of k-/i-uniformity, the four-term
//! kernel–cokernel sequence, and randomized structural invariants.

use proptest::prelude::*;

use semiexact::morphism::{hom_backtrack, hom_brute_force};
use semiexact::*;

/// Composition of uniformity along injective g / surjective f, swept over
/// every composable pair in the order ≤ 3 corpus.
#[test]
fn uniformity_composition_sweep() {
    let corpus = monoid_corpus(3).unwrap();
    let objs = &corpus.objects;
    let mut pairs = 0usize;
    for x in objs {
        for y in objs {
            let homs_xy = hom_enumerate(x, y).unwrap();
            let cls_xy: Vec<Classification> =
                homs_xy.iter().map(|f| classify(f).unwrap()).collect();
            for z in objs {
                let homs_yz = hom_enumerate(y, z).unwrap();
                let cls_yz: Vec<Classification> =
                    homs_yz.iter().map(|g| classify(g).unwrap()).collect();
                for (f, cf) in homs_xy.iter().zip(&cls_xy) {
                    for (g, cg) in homs_yz.iter().zip(&cls_yz) {
                        let gf = compose(g, f).unwrap();
                        let cgf = classify(&gf).unwrap();
                        if cg.injective {
                            assert_eq!(cf.k_uniform, cgf.k_uniform);
                            if cgf.i_uniform {
                                assert!(cf.i_uniform);
                            }
                            if cgf.uniform {
                                assert!(cf.uniform);
                            }
                            if cg.i_uniform {
                                assert_eq!(cf.i_uniform, cgf.i_uniform);
                                assert_eq!(cf.uniform, cgf.uniform);
                            }
                        }
                        if cf.surjective {
                            assert_eq!(cg.i_uniform, cgf.i_uniform);
                            if cgf.k_uniform {
                                assert!(cg.k_uniform);
                            }
                            if cgf.uniform {
                                assert!(cg.uniform);
                            }
                            if cf.k_uniform {
                                assert_eq!(cg.k_uniform, cgf.k_uniform);
                                assert_eq!(cg.uniform, cgf.uniform);
                            }
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    assert!(pairs > 1000, "sweep too small: {pairs} pairs");
}

/// `0 → Ker γ → X → Y → Coker γ → 0` is exact at every junction precisely
/// when γ is uniform.
#[test]
fn four_term_sequence_exact_iff_uniform() {
    let corpus = monoid_corpus(4).unwrap();
    for x in &corpus.objects {
        for y in &corpus.objects {
            for gamma in hom_enumerate(x, y).unwrap() {
                let (_, report) = ker_coker_sequence(&gamma).unwrap();
                let all_exact = report.iter().all(|v| v.exact);
                let uniform = classify(&gamma).unwrap().uniform;
                assert_eq!(all_exact, uniform, "{} -> {} via {:?}", x.name, y.name, gamma.map);
            }
        }
    }
}

fn fuzz_ring(idx: u8) -> std::sync::Arc<Semiring> {
    match idx % 4 {
        0 => builtin_semiring(SemiringFamily::Zmod, 4).unwrap(),
        1 => builtin_semiring(SemiringFamily::Boolean, 0).unwrap(),
        2 => builtin_semiring(SemiringFamily::TruncNat, 3).unwrap(),
        _ => builtin_semiring(SemiringFamily::Zmod, 6).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// factorize splits f into projection ∘ iso ∘ inclusion that recomposes
    /// to f exactly
    #[test]
    fn factorization_recomposes(ring_idx in 0u8..4, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let ring = fuzz_ring(ring_idx);
        let dom = random_semimodule(&ring, 6, s1).unwrap();
        let cod = random_semimodule(&ring, 6, s2).unwrap();
        if let Some(f) = random_morphism(&dom, &cod, s3, false).unwrap() {
            let fac = factorize(&f).unwrap();
            let recomposed =
                compose(&fac.im_inclusion, &compose(&fac.iso, &fac.coim_projection).unwrap())
                    .unwrap();
            prop_assert_eq!(recomposed.map, f.map);
            prop_assert!(fac.iso.is_bijective());
        }
    }

    /// subtractive closure is idempotent and monotone over the seed
    #[test]
    fn closure_idempotent(ring_idx in 0u8..4, s1 in any::<u64>(), seed in proptest::collection::vec(0usize..6, 1..4)) {
        let ring = fuzz_ring(ring_idx);
        let m = random_semimodule(&ring, 6, s1).unwrap();
        let seed: Vec<Elem> = seed.into_iter().map(|e| e % m.order).collect();
        let sub = subsemimodule_generated(&m, &seed).unwrap();
        let once = subtractive_closure(&m, &sub.members).unwrap();
        let again = subtractive_closure(&m, &once.members).unwrap();
        prop_assert_eq!(&again.members, &once.members);
        prop_assert!(sub.members.iter().all(|e| once.members.contains(e)));
    }

    /// the two hom-set enumerators agree element-for-element
    #[test]
    fn hom_enumerators_agree(ring_idx in 0u8..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let ring = fuzz_ring(ring_idx);
        let dom = random_semimodule(&ring, 5, s1).unwrap();
        let cod = random_semimodule(&ring, 5, s2).unwrap();
        let brute: Vec<Vec<Elem>> =
            hom_brute_force(&dom, &cod).unwrap().into_iter().map(|h| h.map).collect();
        let back: Vec<Vec<Elem>> =
            hom_backtrack(&dom, &cod).unwrap().into_iter().map(|h| h.map).collect();
        prop_assert_eq!(brute, back);
    }

    /// quotient by the Bourne congruence of a sub has kernel equal to the
    /// subtractive closure of the sub
    #[test]
    fn bourne_kernel_is_closure(ring_idx in 0u8..4, s1 in any::<u64>(), seed in proptest::collection::vec(0usize..6, 1..4)) {
        let ring = fuzz_ring(ring_idx);
        let m = random_semimodule(&ring, 6, s1).unwrap();
        let seed: Vec<Elem> = seed.into_iter().map(|e| e % m.order).collect();
        let sub = subsemimodule_generated(&m, &seed).unwrap();
        let q = quotient_by_sub(&sub).unwrap();
        prop_assert!(q.projection.is_surjective());
        let ker = kernel(&q.projection).unwrap();
        let closure = subtractive_closure(&m, &sub.members).unwrap();
        prop_assert_eq!(ker.members, closure.members);
    }
}
