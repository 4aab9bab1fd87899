//! Ramp sharing of partitioned labels and aggregation into coded storage.
//!
//! Client `i` shares partition `p` of its labels for objective `t` with
//!
//! ```text
//! f(x) = sum_{u<w} y_u x^u + sum_{tau<z_s} r_tau x^{w+tau},   w = k_C - z_s,
//! ```
//!
//! sending `f(alpha_{i1})` to every other `i1` in `G(e_t)`. The sum of the
//! polynomials of one edge is a codeword of a `(rho, k_C)` GRS code whose
//! low coefficients are the summed labels.

use alloc::vec::Vec;

use thiserror::Error;

use crate::assignment::{AssignmentError, TaskAssignment};
use crate::field::{FieldElement, FieldError, PrimeField};
use crate::labels::PartitionedLabels;
use crate::poly::{interpolate, PolyError, VecPolynomial};
use crate::protocol::ProtocolConfig;
use crate::randomness::{CoinId, CoinSource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SharingError {
    #[error("no labels for client {client}, objective {objective}")]
    MissingLabels { client: usize, objective: usize },
    #[error("labels are packed for {found} partitions, the configuration expects {expected}")]
    PartitionMismatch { found: usize, expected: usize },
    #[error("missing share from client {src} to client {dst} (objective {objective}, partition {partition})")]
    MissingShare {
        objective: usize,
        partition: usize,
        src: usize,
        dst: usize,
    },
    #[error("need {needed} shares to reconstruct, got {got}")]
    TooFewShares { needed: usize, got: usize },
    #[error("replacement storage for objective {0} has the wrong shape")]
    StorageShape(usize),
    #[error("assignment has {found} clients, configuration has {expected}")]
    ClientCountMismatch { found: usize, expected: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

/// The sharing polynomial for one secret block and its random coefficients.
pub fn sharing_polynomial(
    field: PrimeField,
    secret: &[Vec<FieldElement>],
    randomness: &[Vec<FieldElement>],
) -> Result<VecPolynomial, SharingError> {
    let coeffs = secret.iter().chain(randomness).cloned().collect();
    Ok(VecPolynomial::new(field, coeffs)?)
}

/// All shares of one sharing stage, indexed `[t][p][src][dst]` with `src`
/// and `dst` positions inside `G(e_t)`. A client's share to itself is kept
/// so that aggregation is uniform; it is never transmitted.
/// Indexed by objective, partition, source and destination position.
type ShareSlots = Vec<Vec<Vec<Vec<Option<Vec<FieldElement>>>>>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareBatch {
    edges: Vec<Vec<usize>>,
    partitions: usize,
    shares: ShareSlots,
}

impl ShareBatch {
    pub fn partition_count(&self) -> usize {
        self.partitions
    }

    pub fn objectives(&self) -> usize {
        self.edges.len()
    }

    fn slot(&self, objective: usize, partition: usize, src: usize, dst: usize) -> Option<(usize, usize)> {
        let edge = self.edges.get(objective)?;
        if partition >= self.partitions {
            return None;
        }
        Some((edge.binary_search(&src).ok()?, edge.binary_search(&dst).ok()?))
    }

    /// `f^{(t)}_{src,p}(alpha_dst)`.
    pub fn get(&self, objective: usize, partition: usize, src: usize, dst: usize) -> Option<&[FieldElement]> {
        let (a, b) = self.slot(objective, partition, src, dst)?;
        self.shares[objective][partition][a][b].as_deref()
    }

    pub fn remove(&mut self, objective: usize, partition: usize, src: usize, dst: usize) -> Option<Vec<FieldElement>> {
        let (a, b) = self.slot(objective, partition, src, dst)?;
        self.shares[objective][partition][a][b].take()
    }

    /// Transmitted shares as `(objective, partition, src, dst, share)`.
    pub fn messages(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &[FieldElement])> {
        self.edges.iter().enumerate().flat_map(move |(t, edge)| {
            self.shares[t].iter().enumerate().flat_map(move |(p, rows)| {
                rows.iter().enumerate().flat_map(move |(a, row)| {
                    row.iter().enumerate().filter_map(move |(b, share)| {
                        let share = share.as_deref()?;
                        (a != b).then(|| (t, p, edge[a], edge[b], share))
                    })
                })
            })
        })
    }

    /// Everything client `dst` receives from others.
    pub fn received_by(&self, dst: usize) -> impl Iterator<Item = (usize, usize, usize, &[FieldElement])> {
        self.messages()
            .filter(move |m| m.3 == dst)
            .map(|(t, p, src, _, share)| (t, p, src, share))
    }
}

/// Evaluates every sharing polynomial at every point of its edge.
pub fn encode_shares<C: CoinSource>(
    parts: &PartitionedLabels,
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
    coins: &mut C,
) -> Result<ShareBatch, SharingError> {
    if assignment.clients() != cfg.clients() {
        return Err(SharingError::ClientCountMismatch {
            found: assignment.clients(),
            expected: cfg.clients(),
        });
    }
    let field = cfg.field();
    let partitions = cfg.partition_count();
    if parts.partition_count() != partitions {
        return Err(SharingError::PartitionMismatch {
            found: parts.partition_count(),
            expected: partitions,
        });
    }
    let pts = cfg.eval_points()?;
    let lanes = cfg.lanes();
    let mut edges = Vec::with_capacity(assignment.objectives());
    let mut shares = Vec::with_capacity(assignment.objectives());
    for t in 0..assignment.objectives() {
        let edge = assignment.incident_clients(t)?.to_vec();
        let mut per_partition = Vec::with_capacity(partitions);
        for p in 0..partitions {
            let mut rows = Vec::with_capacity(edge.len());
            for &src in &edge {
                let secret = parts
                    .get(src, t)
                    .and_then(|blocks| blocks.get(p))
                    .ok_or(SharingError::MissingLabels {
                        client: src,
                        objective: t,
                    })?;
                let randomness: Vec<Vec<FieldElement>> = (0..cfg.z_s())
                    .map(|tau| {
                        (0..lanes)
                            .map(|lane| {
                                coins.draw(
                                    CoinId::Share {
                                        client: src,
                                        objective: t,
                                        partition: p,
                                        tau,
                                        lane,
                                    },
                                    field,
                                )
                            })
                            .collect()
                    })
                    .collect();
                let f = sharing_polynomial(field, secret, &randomness)?;
                let row = edge
                    .iter()
                    .map(|&dst| f.evaluate(pts[dst]).map(Some))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(row);
            }
            per_partition.push(rows);
        }
        edges.push(edge);
        shares.push(per_partition);
    }
    Ok(ShareBatch {
        edges,
        partitions,
        shares,
    })
}

/// Aggregated shares `F^{(t)}_p(alpha_i)`, indexed `[t][position of i][p]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StorageState {
    edges: Vec<Vec<usize>>,
    stored: Vec<Vec<Vec<Vec<FieldElement>>>>,
}

impl StorageState {
    pub fn get(&self, objective: usize, client: usize, partition: usize) -> Option<&[FieldElement]> {
        let pos = self.edges.get(objective)?.binary_search(&client).ok()?;
        self.stored[objective][pos].get(partition).map(Vec::as_slice)
    }

    /// Stored shares of one objective, indexed `[position in G(e_t)][p]`.
    pub fn objective_rows(&self, objective: usize) -> Option<&[Vec<Vec<FieldElement>>]> {
        self.stored.get(objective).map(Vec::as_slice)
    }

    /// Replaces the stored shares of one objective with rows of the same shape.
    pub fn set_objective_rows(
        &mut self,
        objective: usize,
        rows: Vec<Vec<Vec<FieldElement>>>,
    ) -> Result<(), SharingError> {
        let slot = self.stored.get_mut(objective).ok_or(SharingError::StorageShape(objective))?;
        let same_shape = slot.len() == rows.len()
            && slot.iter().zip(&rows).all(|(a, b)| {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len())
            });
        if !same_shape {
            return Err(SharingError::StorageShape(objective));
        }
        *slot = rows;
        Ok(())
    }

    /// Everything `client` stores, as `(objective, partition, share)`.
    pub fn held_by(&self, client: usize) -> impl Iterator<Item = (usize, usize, &[FieldElement])> {
        self.edges.iter().enumerate().flat_map(move |(t, edge)| {
            let held = edge
                .binary_search(&client)
                .ok()
                .map(|pos| self.stored[t][pos].iter().enumerate());
            held.into_iter()
                .flatten()
                .map(move |(p, share)| (t, p, share.as_slice()))
        })
    }
}

pub fn aggregate_shares(batch: &ShareBatch, assignment: &TaskAssignment) -> Result<StorageState, SharingError> {
    let mut stored = Vec::with_capacity(batch.edges.len());
    for (t, edge) in batch.edges.iter().enumerate() {
        let expected = assignment.incident_clients(t)?;
        if expected != edge.as_slice() {
            return Err(AssignmentError::ColumnWeight {
                objective: t,
                weight: edge.len(),
                expected: expected.len(),
            }
            .into());
        }
        let mut per_client = Vec::with_capacity(edge.len());
        for (b, &dst) in edge.iter().enumerate() {
            let mut per_partition = Vec::with_capacity(batch.partitions);
            for p in 0..batch.partitions {
                let mut acc: Option<Vec<FieldElement>> = None;
                for (a, &src) in edge.iter().enumerate() {
                    let share = batch.shares[t][p][a][b].as_ref().ok_or(SharingError::MissingShare {
                        objective: t,
                        partition: p,
                        src,
                        dst,
                    })?;
                    match acc.as_mut() {
                        None => acc = Some(share.clone()),
                        Some(sum) => sum.iter_mut().zip(share).for_each(|(x, &y)| *x += y),
                    }
                }
                per_partition.push(acc.unwrap_or_default());
            }
            per_client.push(per_partition);
        }
        stored.push(per_client);
    }
    Ok(StorageState {
        edges: batch.edges.clone(),
        stored,
    })
}

/// Recovers the `k_C - z_s` secret symbols from `k_C` point-value pairs.
/// Extra pairs beyond the first `k_C` are ignored.
pub fn reconstruct_secret(
    field: PrimeField,
    shares: &[(FieldElement, Vec<FieldElement>)],
    k_c: usize,
    z_s: usize,
) -> Result<Vec<Vec<FieldElement>>, SharingError> {
    if shares.len() < k_c || k_c == 0 {
        return Err(SharingError::TooFewShares {
            needed: k_c.max(1),
            got: shares.len(),
        });
    }
    let poly = interpolate(field, &shares[..k_c])?;
    Ok(poly.into_coeffs().into_iter().take(k_c.saturating_sub(z_s)).collect())
}
