use mincodes::codes::{
    ashikhmin_barg_check, is_strong_blocking_set, minimal_iff_strong_blocking_audit, LinearCode, ProjectivePointSet,
};
use mincodes::FieldOrder;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Normalized representatives of the points of PG(k−1, q).
fn projective_points(q: u8, k: usize) -> Vec<Vec<u8>> {
    let total = (q as usize).pow(k as u32);
    (1..total)
        .map(|mut x| {
            let mut v = vec![0u8; k];
            for c in v.iter_mut().rev() {
                *c = (x % q as usize) as u8;
                x /= q as usize;
            }
            v
        })
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

/// Random projective code: `n` distinct points of PG(k−1, q) spanning the space.
fn random_projective_code(rng: &mut ChaCha8Rng, q: u8, max_k: usize, max_n: usize) -> LinearCode {
    loop {
        let k = rng.gen_range(2..=max_k);
        let points = projective_points(q, k);
        let n = rng.gen_range(k..=max_n.min(points.len()));
        let cols: Vec<&Vec<u8>> = points.choose_multiple(rng, n).collect();
        let gen: Vec<Vec<u8>> = (0..k).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        if let Ok(code) = LinearCode::new(FieldOrder::new(q as u64).unwrap(), gen) {
            return code;
        }
    }
}

#[test]
fn binary_oracles_agree_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut minimal = 0;
    for _ in 0..200 {
        let code = random_projective_code(&mut rng, 2, 5, 12);
        let pts = ProjectivePointSet::from_code(&code).unwrap();
        assert!(pts.is_projective());
        let verdict = minimal_iff_strong_blocking_audit(&code).unwrap();
        if ashikhmin_barg_check(&code).unwrap() {
            assert!(verdict, "AB code not minimal: {:?}", code.generator());
        }
        if verdict {
            minimal += 1;
            let p = code.weight_profile().unwrap();
            assert!(p.d_min >= code.k());
            assert!(p.w_max <= code.n() - code.k() + 1);
        }
    }
    assert!(minimal > 0 && minimal < 200, "sample has {minimal} minimal codes");
}

#[test]
fn ternary_oracles_agree_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..60 {
        let code = random_projective_code(&mut rng, 3, 3, 12);
        let minimal = code.is_minimal().unwrap().minimal;
        let pts = ProjectivePointSet::from_code(&code).unwrap();
        let blocking = is_strong_blocking_set(&pts, code.k(), code.q()).unwrap();
        assert_eq!(minimal, blocking.strong, "{:?}", code.generator());
        assert_eq!(blocking.strong, blocking.witness.is_none());
        if minimal {
            assert!(code.weight_profile().unwrap().d_min > 2 * (code.k() - 1));
        }
    }
}

#[test]
fn whole_projective_space_is_minimal() {
    for (q, k) in [(2u8, 3usize), (2, 4), (3, 3)] {
        let points = projective_points(q, k);
        let gen: Vec<Vec<u8>> = (0..k).map(|i| points.iter().map(|c| c[i]).collect()).collect();
        let code = LinearCode::new(FieldOrder::new(q as u64).unwrap(), gen).unwrap();
        assert!(minimal_iff_strong_blocking_audit(&code).unwrap(), "PG({}, {q})", k - 1);
    }
}
