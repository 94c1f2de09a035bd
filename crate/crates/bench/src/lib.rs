//! Fixed inputs shared by the benchmarks.

use paramod_core::gspaces::{random_lattice, IsotropicLattice};
use paramod_core::oracle::random_primitive;
use paramod_core::{Polarization, SympVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn pol(e: &[u64]) -> Polarization {
    Polarization::from_u64(e).expect("valid type")
}

pub fn vectors(p: &Polarization, n: usize, bound: i64, seed: u64) -> Vec<SympVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_primitive(p.genus(), bound, &mut rng)).collect()
}

pub fn lattices(p: &Polarization, n: usize, length: usize) -> Vec<IsotropicLattice> {
    (0..n as u64).map(|s| random_lattice(p, s, length)).collect()
}
