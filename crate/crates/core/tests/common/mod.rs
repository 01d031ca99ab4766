#![allow(dead_code)]

use arithpoints_core::{Origami, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// A uniformly random connected origami with `n` squares (rejection sampling).
pub fn random_origami<R: Rng>(rng: &mut R, n: usize) -> Origami {
    loop {
        let h = random_permutation(rng, n);
        let v = random_permutation(rng, n);
        if let Ok(o) = Origami::connected(h, v) {
            return o;
        }
    }
}
