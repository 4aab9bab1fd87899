//! Task assignment: which clients compute which objectives.
//!
//! The assignment is a hypergraph on the clients with one hyperedge per
//! objective, stored as the `n x T` binary incidence matrix. Every column
//! has weight exactly `rho`. Row weights are unconstrained.
//!
//! Clients and objectives are indexed from zero throughout the crate.

use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentError {
    #[error("replication {rho} exceeds the number of clients {clients}")]
    ReplicationExceedsClients { rho: usize, clients: usize },
    #[error("replication must be at least 1")]
    ZeroReplication,
    #[error("an assignment needs at least one client and one objective")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("objective {objective} is assigned to {weight} clients, expected {expected}")]
    ColumnWeight {
        objective: usize,
        weight: usize,
        expected: usize,
    },
    #[error("objective {objective} out of range (T = {objectives})")]
    ObjectiveOutOfRange { objective: usize, objectives: usize },
    #[error("client {client} out of range (n = {clients})")]
    ClientOutOfRange { client: usize, clients: usize },
}

/// How [`build_symmetric_assignment`] places each column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OffsetRule {
    /// Objective `t` goes to clients `t, t+1, ..., t+rho-1` (mod n).
    #[default]
    Cyclic,
    /// Objective `t` goes to clients `t*rho, ..., t*rho+rho-1` (mod n), which
    /// balances row weights whenever `n` divides `rho * T`.
    Block,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskAssignment {
    clients: usize,
    objectives: usize,
    replication: usize,
    /// `incidence[i][t]` is true iff client `i` computes objective `t`.
    incidence: Vec<Vec<bool>>,
    edges: Vec<Vec<usize>>,
    vertices: Vec<Vec<usize>>,
}

impl TaskAssignment {
    /// Builds an assignment from an explicit `n x T` incidence matrix,
    /// checking that every column weighs `rho`.
    pub fn from_incidence(
        rho: usize,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self, AssignmentError> {
        let clients = incidence.len();
        let objectives = incidence.first().map_or(0, Vec::len);
        if clients == 0 || objectives == 0 {
            return Err(AssignmentError::Empty);
        }
        if rho == 0 {
            return Err(AssignmentError::ZeroReplication);
        }
        if rho > clients {
            return Err(AssignmentError::ReplicationExceedsClients { rho, clients });
        }
        for (row, entries) in incidence.iter().enumerate() {
            if entries.len() != objectives {
                return Err(AssignmentError::RaggedRow {
                    row,
                    found: entries.len(),
                    expected: objectives,
                });
            }
        }
        let edges: Vec<Vec<usize>> = (0..objectives)
            .map(|t| (0..clients).filter(|&i| incidence[i][t]).collect())
            .collect();
        for (objective, edge) in edges.iter().enumerate() {
            if edge.len() != rho {
                return Err(AssignmentError::ColumnWeight {
                    objective,
                    weight: edge.len(),
                    expected: rho,
                });
            }
        }
        let vertices = incidence
            .iter()
            .map(|row| (0..objectives).filter(|&t| row[t]).collect())
            .collect();
        Ok(Self {
            clients,
            objectives,
            replication: rho,
            incidence,
            edges,
            vertices,
        })
    }

    pub fn clients(&self) -> usize {
        self.clients
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn replication(&self) -> usize {
        self.replication
    }

    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    pub fn contains(&self, client: usize, objective: usize) -> bool {
        client < self.clients && objective < self.objectives && self.incidence[client][objective]
    }

    /// Clients incident with the hyperedge of `objective`, ascending.
    pub fn incident_clients(&self, objective: usize) -> Result<&[usize], AssignmentError> {
        self.edges
            .get(objective)
            .map(Vec::as_slice)
            .ok_or(AssignmentError::ObjectiveOutOfRange {
                objective,
                objectives: self.objectives,
            })
    }

    /// Objectives assigned to `client`, ascending.
    pub fn incident_objectives(&self, client: usize) -> Result<&[usize], AssignmentError> {
        self.vertices
            .get(client)
            .map(Vec::as_slice)
            .ok_or(AssignmentError::ClientOutOfRange {
                client,
                clients: self.clients,
            })
    }

    /// Position of `client` within the hyperedge of `objective`.
    pub fn position(&self, objective: usize, client: usize) -> Option<usize> {
        self.edges.get(objective)?.binary_search(&client).ok()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.vertices.iter().map(Vec::len).collect()
    }

    /// True when every client computes the same number of objectives.
    pub fn is_row_balanced(&self) -> bool {
        let weights = self.row_weights();
        weights.windows(2).all(|w| w[0] == w[1])
    }

    /// Clients that compute no objective at all.
    pub fn idle_clients(&self) -> Vec<usize> {
        (0..self.clients)
            .filter(|&i| self.vertices[i].is_empty())
            .collect()
    }
}

pub fn build_symmetric_assignment(
    n: usize,
    objectives: usize,
    rho: usize,
    rule: OffsetRule,
) -> Result<TaskAssignment, AssignmentError> {
    if n == 0 || objectives == 0 {
        return Err(AssignmentError::Empty);
    }
    if rho == 0 {
        return Err(AssignmentError::ZeroReplication);
    }
    if rho > n {
        return Err(AssignmentError::ReplicationExceedsClients { rho, clients: n });
    }
    let mut incidence = alloc::vec![alloc::vec![false; objectives]; n];
    #[allow(clippy::needless_range_loop)]
    for t in 0..objectives {
        let start = match rule {
            OffsetRule::Cyclic => t,
            OffsetRule::Block => t * rho,
        };
        for m in 0..rho {
            incidence[(start + m) % n][t] = true;
        }
    }
    TaskAssignment::from_incidence(rho, incidence)
}
