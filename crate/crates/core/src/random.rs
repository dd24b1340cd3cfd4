//! Seeded random presentations for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fi::{enumerate_injections, FIPresentation, FreeElement, Injection, Term};
use crate::linalg::RingSpec;

/// Bounds on random presentations.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_generators: usize,
    pub max_generator_degree: usize,
    pub max_relations: usize,
    pub max_relation_degree: usize,
    pub max_terms: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_generators: 2,
            max_generator_degree: 2,
            max_relations: 2,
            max_relation_degree: 3,
            max_terms: 3,
        }
    }
}

const COEFFICIENTS: [i64; 4] = [-2, -1, 1, 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One presentation with integer coefficients in `{±1, ±2}`, read in `ring`.
pub fn random_presentation(rng: &mut ChaCha8Rng, ring: RingSpec, shape: RandomShape) -> FIPresentation {
    let gens = rng.gen_range(1..=shape.max_generators);
    let degrees: Vec<usize> = (0..gens).map(|_| rng.gen_range(0..=shape.max_generator_degree)).collect();
    let min_degree = *degrees.iter().min().expect("at least one generator");
    let rels = rng.gen_range(0..=shape.max_relations);
    let mut relations = Vec::with_capacity(rels);
    for _ in 0..rels {
        let e = rng.gen_range(min_degree..=shape.max_relation_degree.max(min_degree));
        let eligible: Vec<usize> = (0..gens).filter(|&i| degrees[i] <= e).collect();
        let count = rng.gen_range(1..=shape.max_terms);
        let terms = (0..count)
            .map(|_| {
                let i = *eligible.choose(rng).expect("some generator fits");
                let injections = enumerate_injections(degrees[i], e);
                let f: Injection = injections.choose(rng).expect("nonempty").clone();
                Term {
                    generator: i,
                    injection: f,
                    coeff: ring.from_i64(*COEFFICIENTS.choose(rng).expect("nonempty")),
                }
            })
            .collect();
        relations.push(FreeElement::new(ring, e, terms).expect("well-formed"));
    }
    FIPresentation::new(ring, degrees, relations).expect("well-formed")
}

/// `count` presentations from one seed; the same seed gives the same
/// integer data in every ring.
pub fn random_presentations(seed: u64, count: usize, ring: RingSpec) -> Vec<FIPresentation> {
    let mut r = rng(seed);
    (0..count).map(|_| random_presentation(&mut r, ring, RandomShape::default())).collect()
}

/// A random injection `[m] ↪ [n]`.
pub fn random_injection(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Injection {
    let mut points: Vec<usize> = (1..=n).collect();
    points.shuffle(rng);
    points.truncate(m);
    Injection::new(points, n).expect("distinct points")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let a = random_presentations(7, 5, RingSpec::Rational);
        let b = random_presentations(7, 5, RingSpec::Rational);
        assert_eq!(a, b);
        for p in &a {
            assert!(p.degrees().len() <= 2 && p.degrees().iter().all(|&d| d <= 2));
            assert!(p.relations().len() <= 2);
        }
        let z = random_presentations(7, 5, RingSpec::Integer);
        for (p, q) in a.iter().zip(&z) {
            assert_eq!(p.degrees(), q.degrees());
        }
    }
}
