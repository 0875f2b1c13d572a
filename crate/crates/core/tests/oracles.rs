//! Library results against the independent oracles in `common`.

mod common;

use common::*;
use groupdet_core::groupring::{det_characters, det_matrix_oracle, GroupId, GroupRingElement};
use groupdet_core::membership::decide;
use groupdet_core::primeclass::{classify_prime, type_list, PrimeTag};
use groupdet_core::{norm9, EisensteinInt};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn character_product_matches_modular_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in GroupId::ALL {
        for round in 0..300 {
            let c = random_coeffs(&mut rng, -9, 9);
            let e = GroupRingElement::from_i64(g, &c).unwrap();
            let want = modular_det(g, &c);
            assert_eq!(det_characters(&e).d, want, "{g} {c:?}");
            if round < 60 {
                assert_eq!(det_matrix_oracle(&e), want, "{g} {c:?}");
            }
        }
    }
}

#[test]
fn known_small_determinants() {
    let mut c = [0i64; 18];
    c[0] = 1;
    c[1] = 1;
    assert_eq!(modular_det(GroupId::Z18, &c), BigInt::from(4));
    let mut x = [0i64; 18];
    x[9] = 1;
    for g in GroupId::ALL {
        assert_eq!(modular_det(g, &x), BigInt::from(-1));
    }
}

#[test]
fn multiplication_matches_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for g in GroupId::ALL {
        for _ in 0..200 {
            let (a, b) = (random_coeffs(&mut rng, -5, 5), random_coeffs(&mut rng, -5, 5));
            let prod = GroupRingElement::from_i64(g, &a)
                .unwrap()
                .multiply(&GroupRingElement::from_i64(g, &b).unwrap())
                .unwrap();
            let want = GroupRingElement::from_i64(g, &convolve(g, &a, &b)).unwrap();
            assert_eq!(prod, want);
        }
    }
}

#[test]
fn norm9_matches_root_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..2000 {
        let len = rng.gen_range(1..=12);
        let f: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let fb: Vec<BigInt> = f.iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(norm9(&fb).unwrap(), BigInt::from(norm9_complex(&f)), "{f:?}");
    }
}

#[test]
fn prime_classes_match_quadratic_forms() {
    let t1 = type1_primes(20000);
    let t2 = type2_primes(20000);
    let lib1: Vec<i64> = type_list(PrimeTag::Type1, t1.len()).iter().map(|p| p.try_into().unwrap()).collect();
    let lib2: Vec<i64> = type_list(PrimeTag::Type2, t2.len()).iter().map(|p| p.try_into().unwrap()).collect();
    assert_eq!(lib1, t1);
    assert_eq!(lib2, t2);
}

#[test]
fn classification_evidence_evaluates() {
    for p in (7..5000i64).filter(|&p| p % 3 == 1 && is_prime_naive(p)) {
        let c = classify_prime(&BigInt::from(p)).unwrap();
        let (x, y) = c.evidence.unwrap();
        let v = match c.tag {
            PrimeTag::Type1 => BigInt::from(4) * &x * &x + BigInt::from(2) * &x * &y + BigInt::from(7) * &y * &y,
            _ => &x * &x + BigInt::from(27) * &y * &y,
        };
        assert_eq!(v, BigInt::from(p));
    }
}

fn agree(g: GroupId, d: i64, t1: &[i64]) {
    let v = decide(&BigInt::from(d), g).unwrap();
    assert_eq!(v.in_set, in_forms(g, d, t1), "{g} {d}: {v:?}");
    if v.in_set {
        assert_eq!(v.reconstruct(), Some(BigInt::from(d)));
    }
}

#[test]
fn decisions_match_form_enumeration_small() {
    let t1 = type1_primes(200_000);
    for g in GroupId::ALL {
        for d in -6000..=6000 {
            agree(g, d, &t1);
        }
    }
}

#[test]
fn decisions_match_form_enumeration_critical_valuations() {
    let t1 = type1_primes(200_000);
    for k in -300..=300i64 {
        for base in [2187, 4 * 2187, 8 * 2187, 16 * 2187, 32 * 2187] {
            agree(GroupId::Z3xZ6, base * k, &t1);
        }
        for base in [729, 4 * 729, 6561, 4 * 6561, 4 * 19683] {
            agree(GroupId::Z3xZ6, base * k, &t1);
        }
    }
    for k in -2000..=2000i64 {
        for base in [27, 4 * 27, 8 * 27, 16 * 27, 32 * 27, 64 * 27] {
            agree(GroupId::Z18, base * k, &t1);
        }
    }
}

#[test]
fn eisenstein_norm_is_product_with_conjugate() {
    for a in -20..=20i64 {
        for b in -20..=20i64 {
            let x = EisensteinInt::from((a, b));
            let p = x.clone() * x.conj();
            assert_eq!(p.b, BigInt::from(0));
            assert_eq!(p.a, x.norm());
        }
    }
}
