//! Quantized label vectors and their packing into protocol symbols.
//!
//! The labels of one client for one objective are `s` vectors of `c`
//! integers in `[0, gamma)`. For sharing they are flattened sample-major
//! into a stream of `s * c` scalars, grouped into symbols of `lanes`
//! scalars each, and the symbols are cut into partitions of `width`
//! symbols. The tail of the last partition is zero-padded.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::assignment::TaskAssignment;
use crate::field::{FieldElement, PrimeField};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabelsError {
    #[error("gamma must be at least 2, got {0}")]
    GammaTooSmall(u64),
    #[error("label set needs at least one sample and one class")]
    EmptyShape,
    #[error("label value {value} is outside [0, {gamma})")]
    ValueOutOfRange { value: u64, gamma: u64 },
    #[error("labels for client {client}, objective {objective} have the wrong shape")]
    Shape { client: usize, objective: usize },
    #[error("client {client} has no labels for objective {objective}")]
    MissingEntry { client: usize, objective: usize },
    #[error("client {client} is not assigned objective {objective} but has labels for it")]
    UnexpectedEntry { client: usize, objective: usize },
    #[error("partition width must be positive (k_C must exceed z_s)")]
    ZeroWidth,
    #[error("symbols need at least one lane")]
    ZeroLanes,
    #[error("field of size {modulus} cannot hold an aggregate of {clients} labels below {gamma}")]
    FieldTooSmall {
        modulus: u64,
        clients: usize,
        gamma: u64,
    },
    #[error("soft label {0} is not a probability")]
    NotAProbability(f64),
    #[error("packed labels do not match the layout")]
    LayoutMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    samples: usize,
    classes: usize,
    gamma: u64,
    entries: BTreeMap<(usize, usize), Vec<Vec<u64>>>,
}

impl LabelSet {
    pub fn new(samples: usize, classes: usize, gamma: u64) -> Result<Self, LabelsError> {
        if gamma < 2 {
            return Err(LabelsError::GammaTooSmall(gamma));
        }
        if samples == 0 || classes == 0 {
            return Err(LabelsError::EmptyShape);
        }
        Ok(Self {
            samples,
            classes,
            gamma,
            entries: BTreeMap::new(),
        })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// Sets the `s x c` labels of `client` for `objective`.
    pub fn insert(
        &mut self,
        client: usize,
        objective: usize,
        labels: Vec<Vec<u64>>,
    ) -> Result<(), LabelsError> {
        if labels.len() != self.samples || labels.iter().any(|y| y.len() != self.classes) {
            return Err(LabelsError::Shape { client, objective });
        }
        if let Some(&value) = labels.iter().flatten().find(|&&v| v >= self.gamma) {
            return Err(LabelsError::ValueOutOfRange {
                value,
                gamma: self.gamma,
            });
        }
        self.entries.insert((client, objective), labels);
        Ok(())
    }

    pub fn get(&self, client: usize, objective: usize) -> Option<&[Vec<u64>]> {
        self.entries.get(&(client, objective)).map(Vec::as_slice)
    }

    /// Entries in ascending `(client, objective)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Vec<u64>>)> {
        self.entries.iter()
    }

    /// Checks that entries exist exactly for the pairs `t in G(i)`.
    pub fn check_against(&self, assignment: &TaskAssignment) -> Result<(), LabelsError> {
        for &(client, objective) in self.entries.keys() {
            if !assignment.contains(client, objective) {
                return Err(LabelsError::UnexpectedEntry { client, objective });
            }
        }
        for client in 0..assignment.clients() {
            for &objective in assignment.incident_objectives(client).unwrap_or(&[]) {
                if !self.entries.contains_key(&(client, objective)) {
                    return Err(LabelsError::MissingEntry { client, objective });
                }
            }
        }
        Ok(())
    }

    /// Whether `(gamma - 1) * clients < modulus`, so that sums of labels
    /// over any set of clients never wrap around.
    pub fn fits_field(&self, modulus: u64, clients: usize) -> bool {
        (self.gamma - 1)
            .checked_mul(clients as u64)
            .is_some_and(|bound| bound < modulus)
    }

    /// Integer sum of the labels of `objective` over its assigned clients.
    pub fn direct_sum(
        &self,
        assignment: &TaskAssignment,
        objective: usize,
    ) -> Result<Vec<Vec<u64>>, LabelsError> {
        let mut total = alloc::vec![alloc::vec![0u64; self.classes]; self.samples];
        let clients = assignment
            .incident_clients(objective)
            .map_err(|_| LabelsError::MissingEntry {
                client: 0,
                objective,
            })?;
        for &client in clients {
            let y = self
                .get(client, objective)
                .ok_or(LabelsError::MissingEntry { client, objective })?;
            for (row, add) in total.iter_mut().zip(y) {
                for (a, b) in row.iter_mut().zip(add) {
                    *a += b;
                }
            }
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SynthMode {
    /// Every scalar uniform on `[0, gamma)`.
    #[default]
    Uniform,
    /// Each sample is the one-hot vector of a uniform class.
    OneHot,
    /// Every scalar zero.
    Zero,
}

/// Deterministic synthetic labels for every `t in G(i)`.
pub fn synth_labels(
    seed: u64,
    assignment: &TaskAssignment,
    samples: usize,
    classes: usize,
    gamma: u64,
    mode: SynthMode,
) -> Result<LabelSet, LabelsError> {
    let mut set = LabelSet::new(samples, classes, gamma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for client in 0..assignment.clients() {
        for &objective in assignment.incident_objectives(client).unwrap_or(&[]) {
            let labels = (0..samples)
                .map(|_| match mode {
                    SynthMode::Uniform => {
                        (0..classes).map(|_| rng.random_range(0..gamma)).collect()
                    }
                    SynthMode::OneHot => one_hot(rng.random_range(0..classes), classes),
                    SynthMode::Zero => alloc::vec![0; classes],
                })
                .collect();
            set.insert(client, objective, labels)?;
        }
    }
    Ok(set)
}

/// One-hot vector with a single 1 at `class` (0-based).
pub fn one_hot(class: usize, classes: usize) -> Vec<u64> {
    let mut y = alloc::vec![0; classes];
    if let Some(slot) = y.get_mut(class) {
        *slot = 1;
    }
    y
}

/// Uniform binning of probabilities in `[0, 1]` to `gamma` levels.
pub fn quantize_soft(probs: &[f64], gamma: u64) -> Result<Vec<u64>, LabelsError> {
    if gamma < 2 {
        return Err(LabelsError::GammaTooSmall(gamma));
    }
    probs
        .iter()
        .map(|&p| {
            if !(0.0..=1.0).contains(&p) {
                return Err(LabelsError::NotAProbability(p));
            }
            Ok(((p * gamma as f64) as u64).min(gamma - 1))
        })
        .collect()
}

/// Mapping from the flat scalar stream to `[partition][symbol][lane]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    scalars: usize,
    width: usize,
    lanes: usize,
    partitions: usize,
}

impl Layout {
    pub fn new(scalars: usize, width: usize, lanes: usize) -> Result<Self, LabelsError> {
        if width == 0 {
            return Err(LabelsError::ZeroWidth);
        }
        if lanes == 0 {
            return Err(LabelsError::ZeroLanes);
        }
        let partitions = scalars.div_ceil(width * lanes);
        Ok(Self {
            scalars,
            width,
            lanes,
            partitions,
        })
    }

    /// Number of real (unpadded) scalars, `s * c`.
    pub fn scalars(&self) -> usize {
        self.scalars
    }

    /// Symbols per partition, `k_C - z_s`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn lanes(&self) -> usize {
        self.lanes
    }

    pub fn partition_count(&self) -> usize {
        self.partitions
    }

    pub fn pad_count(&self) -> usize {
        self.partitions * self.width * self.lanes - self.scalars
    }

    pub fn pack(&self, field: PrimeField, flat: &[u64]) -> Result<Vec<Vec<Vec<FieldElement>>>, LabelsError> {
        if flat.len() != self.scalars {
            return Err(LabelsError::LayoutMismatch);
        }
        let mut it = flat.iter().copied().chain(core::iter::repeat(0));
        Ok((0..self.partitions)
            .map(|_| {
                (0..self.width)
                    .map(|_| {
                        (0..self.lanes)
                            .map(|_| field.element(it.next().unwrap_or(0)))
                            .collect()
                    })
                    .collect()
            })
            .collect())
    }

    /// Inverse of [`Layout::pack`]; padding is dropped.
    pub fn unpack(&self, blocks: &[Vec<Vec<FieldElement>>]) -> Result<Vec<u64>, LabelsError> {
        let shaped = blocks.len() == self.partitions
            && blocks.iter().all(|b| {
                b.len() == self.width && b.iter().all(|sym| sym.len() == self.lanes)
            });
        if !shaped {
            return Err(LabelsError::LayoutMismatch);
        }
        Ok(blocks
            .iter()
            .flatten()
            .flatten()
            .take(self.scalars)
            .map(FieldElement::value)
            .collect())
    }
}

/// Labels of every `(client, objective)` pair packed by one [`Layout`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedLabels {
    layout: Layout,
    samples: usize,
    classes: usize,
    blocks: BTreeMap<(usize, usize), Vec<Vec<Vec<FieldElement>>>>,
}

impl PartitionedLabels {
    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn partition_count(&self) -> usize {
        self.layout.partitions
    }

    pub fn pad_count(&self) -> usize {
        self.layout.pad_count()
    }

    /// `[partition][symbol][lane]` for one pair.
    pub fn get(&self, client: usize, objective: usize) -> Option<&[Vec<Vec<FieldElement>>]> {
        self.blocks.get(&(client, objective)).map(Vec::as_slice)
    }

    /// Symbol `y_{p,u}` of one pair.
    pub fn symbol(
        &self,
        client: usize,
        objective: usize,
        partition: usize,
        symbol: usize,
    ) -> Option<&[FieldElement]> {
        self.blocks
            .get(&(client, objective))?
            .get(partition)?
            .get(symbol)
            .map(Vec::as_slice)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
}

/// Packs with one scalar per symbol, so `P = ceil(s c / (k_C - z_s))`.
pub fn partition(
    labels: &LabelSet,
    field: PrimeField,
    k_c: usize,
    z_s: usize,
) -> Result<PartitionedLabels, LabelsError> {
    partition_with_lanes(labels, field, k_c, z_s, 1)
}

pub fn partition_with_lanes(
    labels: &LabelSet,
    field: PrimeField,
    k_c: usize,
    z_s: usize,
    lanes: usize,
) -> Result<PartitionedLabels, LabelsError> {
    let width = k_c.checked_sub(z_s).ok_or(LabelsError::ZeroWidth)?;
    let layout = Layout::new(labels.samples * labels.classes, width, lanes)?;
    let mut blocks = BTreeMap::new();
    for (&key, y) in labels.entries() {
        let flat: Vec<u64> = y.iter().flatten().copied().collect();
        blocks.insert(key, layout.pack(field, &flat)?);
    }
    Ok(PartitionedLabels {
        layout,
        samples: labels.samples,
        classes: labels.classes,
        blocks,
    })
}

/// Restores the `s x c` label matrix of one pair.
pub fn departition(
    parts: &PartitionedLabels,
    client: usize,
    objective: usize,
) -> Result<Vec<Vec<u64>>, LabelsError> {
    let blocks = parts
        .get(client, objective)
        .ok_or(LabelsError::MissingEntry { client, objective })?;
    let flat = parts.layout.unpack(blocks)?;
    Ok(flat.chunks(parts.classes).map(<[u64]>::to_vec).collect())
}
