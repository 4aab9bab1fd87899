//! The three-stage protocol: parameters, sharing, queries, answers and
//! reconstruction, with a ledger of every transmitted symbol.
//!
//! The federator's objective `j` is never part of [`ProtocolConfig`]; it is
//! an input only to the federator-side functions [`build_queries`],
//! [`reconstruct`] and [`run_end_to_end`].

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::assignment::{AssignmentError, TaskAssignment};
use crate::field::{is_prime, next_prime, FieldElement, FieldError, PrimeField, MAX_MODULUS};
use crate::labels::{partition_with_lanes, LabelSet, LabelsError, Layout};
use crate::poly::{dual_coefficients, DualCoefficients, PolyError, VecPolynomial};
use crate::randomness::{CoinId, CoinSource};
use crate::sharing::{aggregate_shares, encode_shares, ShareBatch, SharingError, StorageState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error("invalid (rho,z_s,z_q) = ({rho},{z_s},{z_q}): rho - z_q + z_s + 1 must be even and positive")]
    InvalidParity { rho: usize, z_s: usize, z_q: usize },
    #[error("invalid (rho,z_s,z_q): k_C = {k_c} must exceed z_s = {z_s}")]
    DimensionTooSmall { k_c: usize, z_s: usize },
    #[error("collusion thresholds z_s and z_q must be at least 1")]
    ZeroThreshold,
    #[error("replication {rho} must be between 1 and n = {clients}")]
    BadReplication { rho: usize, clients: usize },
    #[error("need at least one client, objective, sample, class and lane")]
    EmptyShape,
    #[error("gamma must be at least 2, got {0}")]
    GammaTooSmall(u64),
    #[error("field size {modulus} is below the required bound {bound}")]
    ModulusTooSmall { modulus: u64, bound: u64 },
    #[error("required field size {0} exceeds the supported range")]
    ModulusTooLarge(u64),
    #[error("objective {objective} out of range (T = {objectives})")]
    ObjectiveOutOfRange { objective: usize, objectives: usize },
    #[error("assignment does not match the configuration ({0})")]
    AssignmentMismatch(&'static str),
    #[error("labels do not match the configuration ({0})")]
    LabelMismatch(&'static str),
    #[error("client {0} is assigned no objective")]
    IdleClient(usize),
    #[error("client {client} has no query for objective {objective}, partition {partition}")]
    MissingQuery {
        client: usize,
        objective: usize,
        partition: usize,
    },
    #[error("client {client} stores nothing for objective {objective}, partition {partition}")]
    MissingStorage {
        client: usize,
        objective: usize,
        partition: usize,
    },
    #[error("no answer from client {client} for partition {partition}")]
    MissingAnswer { client: usize, partition: usize },
    #[error("protocol violation: reconstruction matrix is singular")]
    SingularReconstruction,
    #[error(transparent)]
    Labels(#[from] LabelsError),
    #[error(transparent)]
    Sharing(#[from] SharingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

/// Public scheme inputs before the field is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeParams {
    pub clients: usize,
    pub objectives: usize,
    pub replication: usize,
    pub z_s: usize,
    pub z_q: usize,
    pub samples: usize,
    pub classes: usize,
    pub gamma: u64,
    /// Scalars per protocol symbol; 1 packs the scalar stream one by one.
    pub lanes: usize,
}

/// Public parameters shared by every party.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolConfig {
    params: SchemeParams,
    k_c: usize,
    field: PrimeField,
}

impl ProtocolConfig {
    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn clients(&self) -> usize {
        self.params.clients
    }

    pub fn objectives(&self) -> usize {
        self.params.objectives
    }

    pub fn replication(&self) -> usize {
        self.params.replication
    }

    pub fn z_s(&self) -> usize {
        self.params.z_s
    }

    pub fn z_q(&self) -> usize {
        self.params.z_q
    }

    pub fn samples(&self) -> usize {
        self.params.samples
    }

    pub fn classes(&self) -> usize {
        self.params.classes
    }

    pub fn gamma(&self) -> u64 {
        self.params.gamma
    }

    pub fn lanes(&self) -> usize {
        self.params.lanes
    }

    /// Storage code dimension `k_C = (rho - z_q + z_s + 1) / 2`.
    pub fn k_c(&self) -> usize {
        self.k_c
    }

    /// Label symbols per partition, `k_C - z_s`.
    pub fn width(&self) -> usize {
        self.k_c - self.params.z_s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn layout(&self) -> Layout {
        Layout::new(
            self.params.samples * self.params.classes,
            self.width(),
            self.params.lanes,
        )
        .expect("width and lanes are positive")
    }

    pub fn partition_count(&self) -> usize {
        self.layout().partition_count()
    }

    /// Number of mask coefficients, `k_C + z_q - 1`.
    pub fn mask_terms(&self) -> usize {
        self.k_c + self.params.z_q - 1
    }

    /// `(alpha^1, ..., alpha^n)`.
    pub fn eval_points(&self) -> Result<Vec<FieldElement>, FieldError> {
        self.field.eval_points(self.params.clients)
    }
}

/// Smallest admissible field size for `params` with dimension `k_c`:
/// `max(rho + k_C - z_s, (gamma - 1) n + 1, n + 1, 2)`.
pub fn modulus_bound(params: &SchemeParams, k_c: usize) -> u64 {
    let code = (params.replication + k_c - params.z_s) as u64;
    let labels = (params.gamma - 1)
        .saturating_mul(params.clients as u64)
        .saturating_add(1);
    code.max(labels).max(params.clients as u64 + 1).max(2)
}

pub fn derive_params(params: &SchemeParams) -> Result<ProtocolConfig, ProtocolError> {
    derive_params_with_modulus(params, None)
}

/// As [`derive_params`], optionally forcing the field size.
pub fn derive_params_with_modulus(
    params: &SchemeParams,
    modulus: Option<u64>,
) -> Result<ProtocolConfig, ProtocolError> {
    let p = *params;
    if p.clients == 0 || p.objectives == 0 || p.samples == 0 || p.classes == 0 || p.lanes == 0 {
        return Err(ProtocolError::EmptyShape);
    }
    if p.replication == 0 || p.replication > p.clients {
        return Err(ProtocolError::BadReplication {
            rho: p.replication,
            clients: p.clients,
        });
    }
    if p.z_s == 0 || p.z_q == 0 {
        return Err(ProtocolError::ZeroThreshold);
    }
    if p.gamma < 2 {
        return Err(ProtocolError::GammaTooSmall(p.gamma));
    }
    let numerator = (p.replication + p.z_s + 1).checked_sub(p.z_q).filter(|&v| v > 0);
    let k_c = match numerator {
        Some(v) if v % 2 == 0 => v / 2,
        _ => {
            return Err(ProtocolError::InvalidParity {
                rho: p.replication,
                z_s: p.z_s,
                z_q: p.z_q,
            })
        }
    };
    if k_c <= p.z_s {
        return Err(ProtocolError::DimensionTooSmall { k_c, z_s: p.z_s });
    }
    let bound = modulus_bound(&p, k_c);
    let q = match modulus {
        Some(q) if q < bound => return Err(ProtocolError::ModulusTooSmall { modulus: q, bound }),
        Some(q) if !is_prime(q) => return Err(FieldError::NotPrime(q).into()),
        Some(q) => q,
        None if bound > MAX_MODULUS => return Err(ProtocolError::ModulusTooLarge(bound)),
        None => next_prime(bound),
    };
    Ok(ProtocolConfig {
        params: p,
        k_c,
        field: PrimeField::new(q)?,
    })
}

/// Checks that the assignment fits the configuration and leaves no client idle.
pub fn validate_assignment(cfg: &ProtocolConfig, assignment: &TaskAssignment) -> Result<(), ProtocolError> {
    if assignment.clients() != cfg.clients() {
        return Err(ProtocolError::AssignmentMismatch("client count"));
    }
    if assignment.objectives() != cfg.objectives() {
        return Err(ProtocolError::AssignmentMismatch("objective count"));
    }
    if assignment.replication() != cfg.replication() {
        return Err(ProtocolError::AssignmentMismatch("replication"));
    }
    if let Some(&idle) = assignment.idle_clients().first() {
        return Err(ProtocolError::IdleClient(idle));
    }
    Ok(())
}

pub fn validate_labels(
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
    labels: &LabelSet,
) -> Result<(), ProtocolError> {
    if labels.samples() != cfg.samples() || labels.classes() != cfg.classes() {
        return Err(ProtocolError::LabelMismatch("shape"));
    }
    if labels.gamma() > cfg.gamma() {
        return Err(ProtocolError::LabelMismatch("gamma"));
    }
    labels.check_against(assignment)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Sharing,
    Query,
    Answer,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Sharing => "sharing",
            Stage::Query => "query",
            Stage::Answer => "answer",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    Client(usize),
    Federator,
}

impl fmt::Display for Party {
    /// Clients print 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Party::Client(i) => write!(f, "client{}", i + 1),
            Party::Federator => f.write_str("federator"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Message {
    pub stage: Stage,
    pub src: Party,
    pub dst: Party,
    pub objective: Option<usize>,
    pub partition: usize,
    pub symbols: u64,
}

/// Exact count of transmitted field scalars per stage, plus the transcript.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CostLedger {
    pub sharing_symbols: u64,
    pub query_symbols: u64,
    pub answer_symbols: u64,
    messages: Vec<Message>,
}

impl CostLedger {
    pub fn record(&mut self, message: Message) {
        match message.stage {
            Stage::Sharing => self.sharing_symbols += message.symbols,
            Stage::Query => self.query_symbols += message.symbols,
            Stage::Answer => self.answer_symbols += message.symbols,
        }
        self.messages.push(message);
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    /// Sharing plus answer symbols; query uploads are not part of the rates.
    pub fn rate_total(&self) -> u64 {
        self.sharing_symbols + self.answer_symbols
    }

    pub fn merge(&mut self, other: CostLedger) {
        for m in other.messages {
            self.record(m);
        }
    }

    pub fn record_sharing(&mut self, batch: &ShareBatch) {
        for (t, p, src, dst, share) in batch.messages() {
            self.record(Message {
                stage: Stage::Sharing,
                src: Party::Client(src),
                dst: Party::Client(dst),
                objective: Some(t),
                partition: p,
                symbols: share.len() as u64,
            });
        }
    }

    pub fn record_queries(&mut self, queries: &QueryBatch) {
        for (t, edge) in queries.edges.iter().enumerate() {
            for (p, row) in queries.queries[t].iter().enumerate() {
                for (pos, q) in row.iter().enumerate() {
                    self.record(Message {
                        stage: Stage::Query,
                        src: Party::Federator,
                        dst: Party::Client(edge[pos]),
                        objective: Some(t),
                        partition: p,
                        symbols: q.len() as u64,
                    });
                }
            }
        }
    }

    pub fn record_answers(&mut self, answers: &AnswerBatch) {
        for (i, row) in answers.answers.iter().enumerate() {
            for (p, a) in row.iter().enumerate() {
                self.record(Message {
                    stage: Stage::Answer,
                    src: Party::Client(i),
                    dst: Party::Federator,
                    objective: None,
                    partition: p,
                    symbols: a.len() as u64,
                });
            }
        }
    }
}

/// Partitions the labels, shares them and aggregates the storage.
pub fn share_and_store<C: CoinSource>(
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
    labels: &LabelSet,
    coins: &mut C,
) -> Result<(ShareBatch, StorageState), ProtocolError> {
    validate_assignment(cfg, assignment)?;
    validate_labels(cfg, assignment, labels)?;
    let parts = partition_with_lanes(labels, cfg.field(), cfg.k_c(), cfg.z_s(), cfg.lanes())?;
    let batch = encode_shares(&parts, cfg, assignment, coins)?;
    let storage = aggregate_shares(&batch, assignment)?;
    Ok((batch, storage))
}

pub fn run_sharing_stage<C: CoinSource>(
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
    labels: &LabelSet,
    coins: &mut C,
) -> Result<(StorageState, CostLedger), ProtocolError> {
    let (batch, storage) = share_and_store(cfg, assignment, labels, coins)?;
    let mut ledger = CostLedger::default();
    ledger.record_sharing(&batch);
    Ok((storage, ledger))
}

/// Query evaluations indexed `[t][p][position in G(e_t)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryBatch {
    edges: Vec<Vec<usize>>,
    queries: Vec<Vec<Vec<Vec<FieldElement>>>>,
}

impl QueryBatch {
    pub fn get(&self, objective: usize, partition: usize, client: usize) -> Option<&[FieldElement]> {
        let pos = self.edges.get(objective)?.binary_search(&client).ok()?;
        self.queries[objective].get(partition).map(|row| row[pos].as_slice())
    }

    /// Every query `client` receives, as `(objective, partition, query)`.
    pub fn received_by(&self, client: usize) -> impl Iterator<Item = (usize, usize, &[FieldElement])> {
        self.edges.iter().enumerate().flat_map(move |(t, edge)| {
            let pos = edge.binary_search(&client).ok();
            pos.into_iter().flat_map(move |pos| {
                self.queries[t]
                    .iter()
                    .enumerate()
                    .map(move |(p, row)| (t, p, row[pos].as_slice()))
            })
        })
    }

    /// All queries in `(objective, partition, client)` order.
    pub fn all(&self) -> impl Iterator<Item = (usize, usize, usize, &[FieldElement])> {
        self.edges.iter().enumerate().flat_map(move |(t, edge)| {
            self.queries[t].iter().enumerate().flat_map(move |(p, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(pos, q)| (t, p, edge[pos], q.as_slice()))
            })
        })
    }
}

/// The query polynomial of objective `t`, partition `p`: `lambda` in degree
/// 0 and `z_q` random coefficients from degree `k_C - z_s` on.
pub fn query_polynomial<C: CoinSource>(
    cfg: &ProtocolConfig,
    objective: usize,
    partition: usize,
    wanted: bool,
    coins: &mut C,
) -> Result<VecPolynomial, ProtocolError> {
    let field = cfg.field();
    let lanes = cfg.lanes();
    let w = cfg.width();
    let mut coeffs = alloc::vec![field.zeros(lanes); w + cfg.z_q()];
    if wanted {
        coeffs[0] = alloc::vec![field.one(); lanes];
    }
    for tau in 0..cfg.z_q() {
        for (lane, slot) in coeffs[w + tau].iter_mut().enumerate() {
            *slot = coins.draw(
                CoinId::Query {
                    objective,
                    partition,
                    tau,
                    lane,
                },
                field,
            );
        }
    }
    Ok(VecPolynomial::new(field, coeffs)?)
}

pub fn build_queries<C: CoinSource>(
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
    j: usize,
    coins: &mut C,
) -> Result<QueryBatch, ProtocolError> {
    if j >= cfg.objectives() {
        return Err(ProtocolError::ObjectiveOutOfRange {
            objective: j,
            objectives: cfg.objectives(),
        });
    }
    let pts = cfg.eval_points()?;
    let mut edges = Vec::with_capacity(cfg.objectives());
    let mut queries = Vec::with_capacity(cfg.objectives());
    for t in 0..cfg.objectives() {
        let edge = assignment.incident_clients(t)?.to_vec();
        let mut per_partition = Vec::with_capacity(cfg.partition_count());
        for p in 0..cfg.partition_count() {
            let poly = query_polynomial(cfg, t, p, t == j, coins)?;
            let row = edge
                .iter()
                .map(|&i| poly.evaluate(pts[i]))
                .collect::<Result<Vec<_>, _>>()?;
            per_partition.push(row);
        }
        edges.push(edge);
        queries.push(per_partition);
    }
    Ok(QueryBatch { edges, queries })
}

/// `nu_{t,i}` for every objective.
pub fn dual_table(cfg: &ProtocolConfig, assignment: &TaskAssignment) -> Result<Vec<DualCoefficients>, ProtocolError> {
    let pts = cfg.eval_points()?;
    (0..cfg.objectives())
        .map(|t| Ok(dual_coefficients(t, assignment, &pts)?))
        .collect()
}

/// `A_{p,i} = sum_{t in G(i)} nu_{t,i} F^{(t)}_p(alpha_i) * Q^{(t)}_p(alpha_i)`.
pub fn client_answer(
    client: usize,
    storage: &StorageState,
    queries: &QueryBatch,
    duals: &[DualCoefficients],
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
) -> Result<Vec<Vec<FieldElement>>, ProtocolError> {
    let field = cfg.field();
    let mut answers = alloc::vec![field.zeros(cfg.lanes()); cfg.partition_count()];
    for &t in assignment.incident_objectives(client)? {
        let nu = duals
            .get(t)
            .and_then(|d| d.get(client))
            .ok_or(ProtocolError::AssignmentMismatch("dual table"))?;
        for (p, answer) in answers.iter_mut().enumerate() {
            let f = storage.get(t, client, p).ok_or(ProtocolError::MissingStorage {
                client,
                objective: t,
                partition: p,
            })?;
            let q = queries.get(t, p, client).ok_or(ProtocolError::MissingQuery {
                client,
                objective: t,
                partition: p,
            })?;
            for ((a, &fv), &qv) in answer.iter_mut().zip(f).zip(q) {
                *a += nu * fv * qv;
            }
        }
    }
    Ok(answers)
}

/// Dual multipliers over all `n` evaluation points,
/// `mu_i = (prod_{i1 != i} (alpha_i - alpha_i1))^{-1}`.
///
/// Client `i` scales its mask evaluation by `mu_i`. The federator's sums
/// `sum_i alpha_i^{-theta} A_{p,i}` then see the mask only through
/// `sum_i mu_i alpha_i^zeta` with `0 <= zeta <= rho - 2 <= n - 2`, which
/// vanishes.
pub fn mask_weights(cfg: &ProtocolConfig) -> Result<Vec<FieldElement>, ProtocolError> {
    let pts = cfg.eval_points()?;
    let all: Vec<usize> = (0..cfg.clients()).collect();
    let dc = DualCoefficients::for_clients(usize::MAX, &all, &pts)?;
    Ok(dc.values().iter().map(|&(_, v)| v).collect())
}

/// The clients' common mask `R(x) = sum_{tau} x^{k_C - z_s + tau - 1} R_tau`,
/// one per partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedMask {
    offset: usize,
    coeffs: Vec<Vec<Vec<FieldElement>>>,
}

impl SharedMask {
    pub fn draw<C: CoinSource>(cfg: &ProtocolConfig, coins: &mut C) -> Self {
        let field = cfg.field();
        let coeffs = (0..cfg.partition_count())
            .map(|partition| {
                (0..cfg.mask_terms())
                    .map(|tau| {
                        (0..cfg.lanes())
                            .map(|lane| coins.draw(CoinId::Mask { partition, tau, lane }, field))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            offset: cfg.width(),
            coeffs,
        }
    }

    pub fn zero(cfg: &ProtocolConfig) -> Self {
        Self {
            offset: cfg.width(),
            coeffs: alloc::vec![
                alloc::vec![cfg.field().zeros(cfg.lanes()); cfg.mask_terms()];
                cfg.partition_count()
            ],
        }
    }

    /// Lowest occupied degree, `k_C - z_s`.
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn coeffs(&self, partition: usize) -> Option<&[Vec<FieldElement>]> {
        self.coeffs.get(partition).map(Vec::as_slice)
    }

    pub fn evaluate(&self, partition: usize, x: FieldElement) -> Option<Vec<FieldElement>> {
        let coeffs = self.coeffs.get(partition)?;
        let lanes = coeffs.first().map_or(0, Vec::len);
        let mut acc: Vec<FieldElement> = (0..lanes).map(|_| x.zero_like()).collect();
        for c in coeffs.iter().rev() {
            for (a, &ci) in acc.iter_mut().zip(c) {
                *a = *a * x + ci;
            }
        }
        let shift = x.pow(self.offset as u64);
        Some(acc.into_iter().map(|a| a * shift).collect())
    }
}

/// [`client_answer`] plus `mu_i R_p(alpha_i)`.
#[allow(clippy::too_many_arguments)]
pub fn client_answer_symmetric(
    client: usize,
    storage: &StorageState,
    queries: &QueryBatch,
    duals: &[DualCoefficients],
    mask: &SharedMask,
    weights: &[FieldElement],
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
) -> Result<Vec<Vec<FieldElement>>, ProtocolError> {
    let mut answers = client_answer(client, storage, queries, duals, cfg, assignment)?;
    let pts = cfg.eval_points()?;
    let mu = *weights
        .get(client)
        .ok_or(ProtocolError::AssignmentMismatch("mask weights"))?;
    for (p, answer) in answers.iter_mut().enumerate() {
        let r = mask
            .evaluate(p, pts[client])
            .ok_or(ProtocolError::AssignmentMismatch("mask partitions"))?;
        for (a, rv) in answer.iter_mut().zip(r) {
            *a += mu * rv;
        }
    }
    Ok(answers)
}

/// Answers of all clients, indexed `[i][p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnswerBatch {
    symmetric: bool,
    answers: Vec<Vec<Vec<FieldElement>>>,
}

impl AnswerBatch {
    pub fn new(symmetric: bool, answers: Vec<Vec<Vec<FieldElement>>>) -> Self {
        Self { symmetric, answers }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, client: usize, partition: usize) -> Option<&[FieldElement]> {
        self.answers.get(client)?.get(partition).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<Vec<FieldElement>>] {
        &self.answers
    }
}

/// Every client's answer; `mask` switches on symmetric mode.
pub fn collect_answers(
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
    storage: &StorageState,
    queries: &QueryBatch,
    duals: &[DualCoefficients],
    mask: Option<&SharedMask>,
) -> Result<AnswerBatch, ProtocolError> {
    let weights = match mask {
        Some(_) => mask_weights(cfg)?,
        None => Vec::new(),
    };
    let answers = (0..cfg.clients())
        .map(|i| match mask {
            Some(m) => client_answer_symmetric(i, storage, queries, duals, m, &weights, cfg, assignment),
            None => client_answer(i, storage, queries, duals, cfg, assignment),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AnswerBatch::new(mask.is_some(), answers))
}

/// `Sigma_theta = sum_{i=1}^n alpha_i^{-theta} A_{p,i}` for `theta in [k_C - z_s]`,
/// indexed `[p][theta - 1][lane]`.
pub fn theta_sums(answers: &AnswerBatch, cfg: &ProtocolConfig) -> Result<Vec<Vec<Vec<FieldElement>>>, ProtocolError> {
    let field = cfg.field();
    let pts = cfg.eval_points()?;
    let inverses = pts.iter().map(|x| x.inv()).collect::<Result<Vec<_>, _>>()?;
    let mut sums = alloc::vec![alloc::vec![field.zeros(cfg.lanes()); cfg.width()]; cfg.partition_count()];
    for (i, inv) in inverses.iter().enumerate() {
        for (p, per_theta) in sums.iter_mut().enumerate() {
            let a = answers
                .get(i, p)
                .ok_or(ProtocolError::MissingAnswer { client: i, partition: p })?;
            let mut weight = field.one();
            for sum in per_theta.iter_mut() {
                weight *= *inv;
                for (s, &av) in sum.iter_mut().zip(a) {
                    *s += weight * av;
                }
            }
        }
    }
    Ok(sums)
}

/// Lower-triangular `P` with `P[theta][u] = sum_{i in G(e_j)} nu_{j,i} alpha_i^{-(theta-u+1)}`.
pub fn recon_matrix(cfg: &ProtocolConfig, duals: &DualCoefficients) -> Result<Vec<Vec<FieldElement>>, ProtocolError> {
    let field = cfg.field();
    let pts = cfg.eval_points()?;
    let w = cfg.width();
    let mut diagonals = field.zeros(w);
    for &(i, nu) in duals.values() {
        let x = pts.get(i).ok_or(ProtocolError::AssignmentMismatch("dual table"))?;
        let inv = x.inv()?;
        let mut power = field.one();
        for d in diagonals.iter_mut() {
            power *= inv;
            *d += nu * power;
        }
    }
    Ok((0..w)
        .map(|theta| {
            (0..w)
                .map(|u| if u <= theta { diagonals[theta - u] } else { field.zero() })
                .collect()
        })
        .collect())
}

/// Solves `P y = sigma` for lower-triangular `P`, lane by lane.
pub fn forward_substitute(
    matrix: &[Vec<FieldElement>],
    sigma: &[Vec<FieldElement>],
) -> Result<Vec<Vec<FieldElement>>, ProtocolError> {
    let mut out: Vec<Vec<FieldElement>> = Vec::with_capacity(sigma.len());
    for (theta, rhs) in sigma.iter().enumerate() {
        let pivot = matrix[theta][theta]
            .inv()
            .map_err(|_| ProtocolError::SingularReconstruction)?;
        let mut value = rhs.clone();
        for (u, known) in out.iter().enumerate() {
            let m = matrix[theta][u];
            for (v, &k) in value.iter_mut().zip(known) {
                *v -= m * k;
            }
        }
        value.iter_mut().for_each(|v| *v *= pivot);
        out.push(value);
    }
    Ok(out)
}

/// Summed label symbols of objective `j`, indexed `[p][u][lane]`.
pub fn reconstruct(
    answers: &AnswerBatch,
    assignment: &TaskAssignment,
    cfg: &ProtocolConfig,
    j: usize,
) -> Result<Vec<Vec<Vec<FieldElement>>>, ProtocolError> {
    if j >= cfg.objectives() {
        return Err(ProtocolError::ObjectiveOutOfRange {
            objective: j,
            objectives: cfg.objectives(),
        });
    }
    let pts = cfg.eval_points()?;
    let duals = dual_coefficients(j, assignment, &pts)?;
    let matrix = recon_matrix(cfg, &duals)?;
    theta_sums(answers, cfg)?
        .iter()
        .map(|sigma| forward_substitute(&matrix, sigma))
        .collect()
}

/// Unpacks reconstructed symbols into the `s x c` sums.
pub fn decode_sums(cfg: &ProtocolConfig, blocks: &[Vec<Vec<FieldElement>>]) -> Result<Vec<Vec<u64>>, ProtocolError> {
    let flat = cfg.layout().unpack(blocks)?;
    Ok(flat.chunks(cfg.classes()).map(<[u64]>::to_vec).collect())
}

/// Runs all stages and returns `sum_{i in G(e_j)} y^{(j)}_{i,l}` for every sample.
pub fn run_end_to_end<C: CoinSource>(
    cfg: &ProtocolConfig,
    assignment: &TaskAssignment,
    labels: &LabelSet,
    j: usize,
    symmetric: bool,
    coins: &mut C,
) -> Result<(Vec<Vec<u64>>, CostLedger), ProtocolError> {
    let (batch, storage) = share_and_store(cfg, assignment, labels, coins)?;
    let mut ledger = CostLedger::default();
    ledger.record_sharing(&batch);
    let queries = build_queries(cfg, assignment, j, coins)?;
    ledger.record_queries(&queries);
    let duals = dual_table(cfg, assignment)?;
    let mask = symmetric.then(|| SharedMask::draw(cfg, coins));
    let answers = collect_answers(cfg, assignment, &storage, &queries, &duals, mask.as_ref())?;
    ledger.record_answers(&answers);
    let blocks = reconstruct(&answers, assignment, cfg, j)?;
    Ok((decode_sums(cfg, &blocks)?, ledger))
}
