//! Heavier randomized sweeps, ignored by default. Run with
//! `cargo test -p companion-core --test stress -- --ignored`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use companion_core::companion::CompanionPair;
use companion_core::presentation::{verify_presentation, Variant};
use companion_core::{Monic, Ring};

#[test]
#[ignore]
fn det_identity_wide_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE7);
    let rings = [
        Ring::Integers,
        Ring::integers_mod(7).unwrap(),
        Ring::GaussianIntegers,
    ];
    for ring in &rings {
        for n in 2..=6 {
            for _ in 0..60 {
                let f = Monic::random(ring, n, &mut rng);
                let g = Monic::random(ring, n, &mut rng);
                let pair = CompanionPair::new(f, g).unwrap();
                assert!(pair.det_identity_check().unwrap().equal);
            }
        }
    }
}

#[test]
#[ignore]
fn index_at_degree_four() {
    let ring = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1D4);
    let mut done = 0;
    while done < 40 {
        let f = Monic::random(&ring, 4, &mut rng);
        let g = Monic::random(&ring, 4, &mut rng);
        let pair = CompanionPair::new(f, g).unwrap();
        if pair.resultant().unwrap().is_zero() {
            continue;
        }
        assert!(pair.lattice_index().unwrap().agree);
        done += 1;
    }
}

#[test]
#[ignore]
fn presentations_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9E5);
    // subalgebra presentations verify for arbitrary pairs over Q
    for _ in 0..30 {
        let n = rng.gen_range(2..=4);
        let f = Monic::random(&Ring::Rationals, n, &mut rng);
        let g = Monic::random(&Ring::Rationals, n, &mut rng);
        let pair = CompanionPair::new(f, g).unwrap();
        let rep = verify_presentation(&pair, Variant::Subalgebra, 120, 10, 7).unwrap();
        assert_eq!(rep.basis_rank, rep.basis_size);
    }
    // full presentations verify whenever the resultant is a unit
    let mut done = 0;
    while done < 30 {
        let n = rng.gen_range(2..=4);
        let f = Monic::random(&Ring::Integers, n, &mut rng);
        let g = Monic::random(&Ring::Integers, n, &mut rng);
        let pair = CompanionPair::new(f, g).unwrap();
        if !pair.resultant().unwrap().is_unit() {
            continue;
        }
        let rep = verify_presentation(&pair, Variant::Full, 120, 10, 7).unwrap();
        assert_eq!(rep.basis_rank, pair.n() * pair.n());
        done += 1;
    }
}

#[test]
#[ignore]
fn relation_suite_at_degree_eight() {
    let ring = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(0x8E8);
    for n in [7usize, 8] {
        for _ in 0..10 {
            let f = Monic::random(&ring, n, &mut rng);
            let g = Monic::random(&ring, n, &mut rng);
            let pair = CompanionPair::new(f, g).unwrap();
            pair.a_sequence().unwrap();
            pair.p_sequence().unwrap();
        }
    }
}
