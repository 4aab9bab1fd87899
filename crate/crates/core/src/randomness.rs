//! Sources of protocol randomness.
//!
//! Every uniform field symbol the protocol draws is named by a [`CoinId`].
//! A [`CoinSource`] maps names to values, so a run can be replayed from a
//! seed, forced to zero, or driven by an enumerator that walks every
//! assignment of the coins.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::field::{FieldElement, PrimeField};

/// Name of one uniform scalar drawn by the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoinId {
    /// Coefficient `r^{(t),tau}_{i,p}` of a sharing polynomial, `tau` 0-based.
    Share {
        client: usize,
        objective: usize,
        partition: usize,
        tau: usize,
        lane: usize,
    },
    /// Coefficient `k^{(t),tau}_p` of a query polynomial.
    Query {
        objective: usize,
        partition: usize,
        tau: usize,
        lane: usize,
    },
    /// Coefficient of the clients' shared mask polynomial.
    Mask {
        partition: usize,
        tau: usize,
        lane: usize,
    },
}

impl CoinId {
    fn key(&self, seed: u64) -> [u8; 32] {
        let (tag, a, b, c, d, e) = match *self {
            CoinId::Share {
                client,
                objective,
                partition,
                tau,
                lane,
            } => (1u64, client, objective, partition, tau, lane),
            CoinId::Query {
                objective,
                partition,
                tau,
                lane,
            } => (2, 0, objective, partition, tau, lane),
            CoinId::Mask {
                partition,
                tau,
                lane,
            } => (3, 0, 0, partition, tau, lane),
        };
        let words = [
            seed,
            (tag << 56) ^ a as u64,
            ((b as u64) << 32) ^ c as u64,
            ((d as u64) << 32) ^ e as u64,
        ];
        let mut key = [0u8; 32];
        for (chunk, w) in key.chunks_exact_mut(8).zip(words) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        key
    }
}

pub trait CoinSource {
    /// Returns the value of coin `id` in `field`. Asking twice for the same
    /// id must give the same answer.
    fn draw(&mut self, id: CoinId, field: PrimeField) -> FieldElement;
}

impl<C: CoinSource + ?Sized> CoinSource for &mut C {
    fn draw(&mut self, id: CoinId, field: PrimeField) -> FieldElement {
        (**self).draw(id, field)
    }
}

/// Uniform coins from ChaCha12, one independent stream per coin id.
///
/// Values depend only on the master seed and the id, never on the order in
/// which coins are requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeededCoins {
    seed: u64,
}

impl SeededCoins {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl CoinSource for SeededCoins {
    fn draw(&mut self, id: CoinId, field: PrimeField) -> FieldElement {
        let mut rng = ChaCha12Rng::from_seed(id.key(self.seed));
        field.element(rng.random_range(0..field.modulus()))
    }
}

/// Every coin is zero. Strips all masking; only for tests and audits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ZeroCoins;

impl CoinSource for ZeroCoins {
    fn draw(&mut self, _id: CoinId, field: PrimeField) -> FieldElement {
        field.zero()
    }
}

/// Coins given by a closure over the id, reduced into the field.
pub struct FnCoins<F>(pub F);

impl<F: FnMut(CoinId) -> u64> CoinSource for FnCoins<F> {
    fn draw(&mut self, id: CoinId, field: PrimeField) -> FieldElement {
        field.element((self.0)(id))
    }
}
