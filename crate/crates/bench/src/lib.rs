//! Seeded inputs shared by the benchmarks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use girthwords::{FieldElement, FiniteField, GeneratorTuple, Group, GroupSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn group_with_tuple(spec: &str, k: usize, seed: u64) -> (Group, GeneratorTuple) {
    let group = Group::new(spec.parse::<GroupSpec>().unwrap()).unwrap();
    let gens = group.sample_tuple(k, &mut rng(seed)).unwrap();
    (group, gens)
}

pub fn field_pairs(q: u32, count: usize, seed: u64) -> (FiniteField, Vec<(FieldElement, FieldElement)>) {
    let f = FiniteField::new(q).unwrap();
    let mut r = rng(seed);
    let pairs = (0..count).map(|_| (FieldElement(r.gen_range(0..q)), FieldElement(r.gen_range(0..q)))).collect();
    (f, pairs)
}
