#![allow(dead_code)]

use bigres::{bd, BiDegree, BiPoly, Field, Gf, SystemF};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mono<F: Field>(c: i64, e: [u32; 4]) -> BiPoly<F> {
    BiPoly::monomial(F::from_i64(c), e)
}

/// f = {su^n, tv^n, (s+t)(u^n+v^n)}
pub fn maps_system<F: Field>(n: u32) -> SystemF<F> {
    let f2 = &(&(&mono::<F>(1, [1, 0, n, 0]) + &mono(1, [1, 0, 0, n])) + &mono(1, [0, 1, n, 0]))
        + &mono(1, [0, 1, 0, n]);
    SystemF::new([mono(1, [1, 0, n, 0]), mono(1, [0, 1, 0, n]), f2]).unwrap()
}

pub fn random_gf(d: BiDegree, seed: u64) -> SystemF<Gf> {
    SystemF::random(d, &mut rng(seed), 0).unwrap()
}

pub fn d11() -> BiDegree {
    bd(1, 1)
}
