//! Exhaustive privacy and correctness audits on micro instances.
//!
//! Every label scalar and every coin the protocol draws is enumerated over
//! its full alphabet, the real protocol functions are run on each point, and
//! the resulting views are tallied into exact joint counts. Leakage is zero
//! exactly when the counts factor, which is checked in integer arithmetic.
//!
//! Inputs that are independent by construction are enumerated as separate
//! blocks: the storage of different objectives, and the query side against
//! the sharing side. Mutual information then adds over blocks, and a block
//! that is a function of the previous stage's outcome is enumerated once per
//! distinct outcome with its multiplicity carried along.

use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::HashMap;
use thiserror::Error;

use crate::assignment::{build_symmetric_assignment, OffsetRule, TaskAssignment};
use crate::field::{FieldElement, PrimeField};
use crate::labels::{LabelSet, LabelsError};
use crate::poly::{dual_coefficients, DualCoefficients, PolyError};
use crate::protocol::{
    build_queries, collect_answers, decode_sums, derive_params_with_modulus, dual_table, reconstruct,
    share_and_store, validate_assignment, ProtocolConfig, ProtocolError, SchemeParams, SharedMask,
};
use crate::randomness::{CoinId, CoinSource, ZeroCoins};
use crate::sharing::{SharingError, StorageState};

/// Largest number of protocol evaluations an audit may perform.
pub const MAX_EVALUATIONS: u128 = 100_000_000;

/// Largest number of distinct outcomes one count table may need to hold.
pub const MAX_TABLE_ENTRIES: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditError {
    #[error("micro config out of bounds: {0}")]
    OutOfBounds(&'static str),
    #[error("audit needs up to {required} {what}, the limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },
    #[error("{got} colluders exceed the threshold {allowed}")]
    TooManyColluders { got: usize, allowed: usize },
    #[error("colluder {0} is out of range or repeated")]
    BadColluder(usize),
    #[error("target client {0} is out of range or among the colluders")]
    BadTarget(usize),
    #[error("the protocol drew coin {0:?}, which is not in the enumerated space")]
    UnenumeratedCoin(CoinId),
    #[error("view of {0} symbols is too long to pack")]
    ViewTooLong(usize),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Sharing(#[from] SharingError),
    #[error(transparent)]
    Labels(#[from] LabelsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Exact distribution as outcome counts over a uniform enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution<T: Eq + Hash> {
    counts: HashMap<T, u128>,
    total: u128,
}

impl<T: Eq + Hash> Default for Distribution<T> {
    fn default() -> Self {
        Self {
            counts: HashMap::new(),
            total: 0,
        }
    }
}

impl<T: Eq + Hash + Clone> Distribution<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point(outcome: T) -> Self {
        let mut d = Self::new();
        d.add(outcome, 1);
        d
    }

    pub fn add(&mut self, outcome: T, count: u128) {
        if count == 0 {
            return;
        }
        *self.counts.entry(outcome).or_insert(0) += count;
        self.total += count;
    }

    /// Number of enumerated points.
    pub fn total(&self) -> u128 {
        self.total
    }

    /// Number of distinct outcomes.
    pub fn support(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, outcome: &T) -> u128 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u128)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    pub fn map<U: Eq + Hash + Clone>(&self, mut f: impl FnMut(&T) -> U) -> Distribution<U> {
        let mut out = Distribution::new();
        for (k, c) in self.iter() {
            out.add(f(k), c);
        }
        out
    }

    /// Joint distribution of two independent enumerations.
    pub fn product<U: Eq + Hash + Clone>(&self, other: &Distribution<U>) -> Distribution<(T, U)> {
        let mut out = Distribution::new();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                out.add((a.clone(), b.clone()), ca * cb);
            }
        }
        out
    }
}

/// Mutual information with an exact zero certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leakage {
    /// Value in bits, for reporting.
    pub bits: f64,
    /// True when every conditional joint count factors exactly.
    pub exact_zero: bool,
}

impl Leakage {
    pub const ZERO: Leakage = Leakage {
        bits: 0.0,
        exact_zero: true,
    };

    /// Leakage of two independent blocks.
    pub fn plus(self, other: Leakage) -> Leakage {
        Leakage {
            bits: self.bits + other.bits,
            exact_zero: self.exact_zero && other.exact_zero,
        }
    }

    fn weighted(self, weight: f64) -> Leakage {
        Leakage {
            bits: self.bits * weight,
            exact_zero: self.exact_zero,
        }
    }
}

fn log2(v: u128) -> f64 {
    libm::log2(v as f64)
}

/// `I(X; Y | Z)` of a joint count table.
pub fn conditional_mutual_information<X, Y, Z>(d: &Distribution<(X, Y, Z)>) -> Leakage
where
    X: Eq + Hash + Clone,
    Y: Eq + Hash + Clone,
    Z: Eq + Hash + Clone,
{
    let mut cz: HashMap<&Z, u128> = HashMap::new();
    let mut cxz: HashMap<(&X, &Z), u128> = HashMap::new();
    let mut cyz: HashMap<(&Y, &Z), u128> = HashMap::new();
    let mut pairs: HashMap<&Z, usize> = HashMap::new();
    for ((x, y, z), c) in d.iter() {
        *cz.entry(z).or_insert(0) += c;
        *cxz.entry((x, z)).or_insert(0) += c;
        *cyz.entry((y, z)).or_insert(0) += c;
        *pairs.entry(z).or_insert(0) += 1;
    }
    let mut xs: HashMap<&Z, usize> = HashMap::new();
    for (_, z) in cxz.keys() {
        *xs.entry(*z).or_insert(0) += 1;
    }
    let mut ys: HashMap<&Z, usize> = HashMap::new();
    for (_, z) in cyz.keys() {
        *ys.entry(*z).or_insert(0) += 1;
    }
    let mut exact_zero = pairs.iter().all(|(z, &n)| n == xs[z] * ys[z]);
    let mut bits = 0.0;
    let total = d.total() as f64;
    for ((x, y, z), c) in d.iter() {
        let (a, b, g) = (cz[z], cxz[&(x, z)], cyz[&(y, z)]);
        if c * a != b * g {
            exact_zero = false;
        }
        bits += c as f64 / total * (log2(c) + log2(a) - log2(b) - log2(g));
    }
    if exact_zero {
        return Leakage::ZERO;
    }
    Leakage {
        bits,
        exact_zero: false,
    }
}

/// `I(X; Y)` of a joint count table.
pub fn mutual_information<X, Y>(d: &Distribution<(X, Y)>) -> Leakage
where
    X: Eq + Hash + Clone,
    Y: Eq + Hash + Clone,
{
    conditional_mutual_information(&d.map(|(x, y)| (x.clone(), y.clone(), ())))
}

/// Symbols packed four bits each below a leading marker nibble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Packed(u128);

impl Default for Packed {
    fn default() -> Self {
        Packed(1)
    }
}

impl Packed {
    const CAPACITY: usize = 31;

    fn len(&self) -> usize {
        (127 - self.0.leading_zeros() as usize) / 4
    }

    fn push(&mut self, v: u64) -> Result<(), AuditError> {
        if self.len() >= Self::CAPACITY || v >= 16 {
            return Err(AuditError::ViewTooLong(self.len() + 1));
        }
        self.0 = (self.0 << 4) | v as u128;
        Ok(())
    }

    fn extend_field(&mut self, values: &[FieldElement]) -> Result<(), AuditError> {
        values.iter().try_for_each(|v| self.push(v.value()))
    }
}

/// Report of one audit run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditOutcome {
    pub leakage: Leakage,
    /// Size of the full joint enumeration space.
    pub state_space: u128,
    /// Protocol evaluations actually performed.
    pub evaluations: u128,
}

fn pow(base: u64, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Up-front bounds on protocol evaluations and on the largest count table.
fn guard(evaluations: u128, table: u128) -> Result<(), AuditError> {
    if evaluations > MAX_EVALUATIONS {
        return Err(AuditError::GuardExceeded {
            what: "protocol evaluations",
            required: evaluations,
            limit: MAX_EVALUATIONS,
        });
    }
    if table > MAX_TABLE_ENTRIES {
        return Err(AuditError::GuardExceeded {
            what: "table entries",
            required: table,
            limit: MAX_TABLE_ENTRIES,
        });
    }
    Ok(())
}

/// A protocol instance small enough to enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MicroConfig {
    cfg: ProtocolConfig,
    assignment: TaskAssignment,
}

impl MicroConfig {
    pub const MAX_MODULUS: u64 = 13;
    pub const MAX_SAMPLES: usize = 2;
    pub const MAX_OBJECTIVES: usize = 2;
    pub const MAX_CLIENTS: usize = 4;

    pub fn new(cfg: ProtocolConfig, assignment: TaskAssignment) -> Result<Self, AuditError> {
        if cfg.modulus() > Self::MAX_MODULUS {
            return Err(AuditError::OutOfBounds("q must be at most 13"));
        }
        if cfg.classes() != 1 || cfg.lanes() != 1 {
            return Err(AuditError::OutOfBounds("c and lanes must be 1"));
        }
        if cfg.samples() > Self::MAX_SAMPLES {
            return Err(AuditError::OutOfBounds("s must be at most 2"));
        }
        if cfg.objectives() > Self::MAX_OBJECTIVES {
            return Err(AuditError::OutOfBounds("T must be at most 2"));
        }
        if cfg.clients() > Self::MAX_CLIENTS {
            return Err(AuditError::OutOfBounds("n must be at most 4"));
        }
        validate_assignment(&cfg, &assignment)?;
        Ok(Self { cfg, assignment })
    }

    /// Cyclic assignment with `c = 1`.
    #[allow(clippy::too_many_arguments)]
    pub fn cyclic(
        n: usize,
        objectives: usize,
        rho: usize,
        z_s: usize,
        z_q: usize,
        samples: usize,
        gamma: u64,
        modulus: Option<u64>,
    ) -> Result<Self, AuditError> {
        let params = SchemeParams {
            clients: n,
            objectives,
            replication: rho,
            z_s,
            z_q,
            samples,
            classes: 1,
            gamma,
            lanes: 1,
        };
        let cfg = derive_params_with_modulus(&params, modulus)?;
        let assignment = build_symmetric_assignment(n, objectives, rho, OffsetRule::Cyclic)
            .map_err(ProtocolError::from)?;
        Self::new(cfg, assignment)
    }

    pub fn config(&self) -> &ProtocolConfig {
        &self.cfg
    }

    pub fn assignment(&self) -> &TaskAssignment {
        &self.assignment
    }

    fn edge(&self, t: usize) -> &[usize] {
        self.assignment.incident_clients(t).expect("validated assignment")
    }

    fn scalars(&self) -> usize {
        self.cfg.samples() * self.cfg.classes()
    }

    fn label_digits(&self, t: usize) -> usize {
        self.edge(t).len() * self.scalars()
    }

    fn share_coins(&self, t: usize) -> Vec<CoinId> {
        let mut ids = Vec::new();
        for &client in self.edge(t) {
            for partition in 0..self.cfg.partition_count() {
                for tau in 0..self.cfg.z_s() {
                    for lane in 0..self.cfg.lanes() {
                        ids.push(CoinId::Share {
                            client,
                            objective: t,
                            partition,
                            tau,
                            lane,
                        });
                    }
                }
            }
        }
        ids
    }

    fn query_coins(&self) -> Vec<CoinId> {
        let mut ids = Vec::new();
        for objective in 0..self.cfg.objectives() {
            for partition in 0..self.cfg.partition_count() {
                for tau in 0..self.cfg.z_q() {
                    for lane in 0..self.cfg.lanes() {
                        ids.push(CoinId::Query {
                            objective,
                            partition,
                            tau,
                            lane,
                        });
                    }
                }
            }
        }
        ids
    }

    fn mask_coins(&self) -> Vec<CoinId> {
        let mut ids = Vec::new();
        for partition in 0..self.cfg.partition_count() {
            for tau in 0..self.cfg.mask_terms() {
                for lane in 0..self.cfg.lanes() {
                    ids.push(CoinId::Mask { partition, tau, lane });
                }
            }
        }
        ids
    }

    /// Evaluations of one objective's sharing block.
    fn sharing_block_size(&self, t: usize, label_radix: u64) -> u128 {
        pow(label_radix, self.label_digits(t)).saturating_mul(pow(self.cfg.modulus(), self.share_coins(t).len()))
    }

    /// Bound on the distinct `(labels, storage)` outcomes of one objective:
    /// storage is fixed by the labels and the summed random coefficients.
    fn storage_outcome_bound(&self, t: usize) -> u128 {
        let summed = self.cfg.partition_count() * self.cfg.z_s() * self.cfg.lanes();
        pow(self.cfg.gamma(), self.label_digits(t)).saturating_mul(pow(self.cfg.modulus(), summed))
    }

    /// Labels with objective `t` set from `digits` and every other entry zero.
    fn labels_from(&self, per_objective: &[(usize, &[u64])]) -> Result<LabelSet, AuditError> {
        let (s, c) = (self.cfg.samples(), self.cfg.classes());
        let mut labels = LabelSet::new(s, c, self.cfg.gamma())?;
        for i in 0..self.cfg.clients() {
            for &t in self.assignment.incident_objectives(i).map_err(ProtocolError::from)? {
                labels.insert(i, t, alloc::vec![alloc::vec![0; c]; s])?;
            }
        }
        for &(t, digits) in per_objective {
            for (pos, &client) in self.edge(t).iter().enumerate() {
                let flat = &digits[pos * s * c..(pos + 1) * s * c];
                labels.insert(client, t, flat.chunks(c).map(<[u64]>::to_vec).collect())?;
            }
        }
        Ok(labels)
    }
}

struct CoinSpace {
    ids: Vec<CoinId>,
    index: HashMap<CoinId, usize>,
}

impl CoinSpace {
    fn new(ids: Vec<CoinId>) -> Self {
        let index = ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
        Self { ids, index }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Coins read from an enumeration point. Ids inside `scope` that are not in
/// the space are recorded as a fault, other ids read as zero.
struct EnumeratedCoins<'a, S: Fn(&CoinId) -> bool> {
    space: &'a CoinSpace,
    digits: &'a [u64],
    scope: S,
    missed: Option<CoinId>,
}

impl<S: Fn(&CoinId) -> bool> EnumeratedCoins<'_, S> {
    fn finish(self) -> Result<(), AuditError> {
        match self.missed {
            Some(id) => Err(AuditError::UnenumeratedCoin(id)),
            None => Ok(()),
        }
    }
}

impl<S: Fn(&CoinId) -> bool> CoinSource for EnumeratedCoins<'_, S> {
    fn draw(&mut self, id: CoinId, field: PrimeField) -> FieldElement {
        match self.space.index.get(&id) {
            Some(&k) => field.element(self.digits[k]),
            None => {
                if (self.scope)(&id) && self.missed.is_none() {
                    self.missed = Some(id);
                }
                field.zero()
            }
        }
    }
}

/// Calls `f` on every point of `prod_k [0, radices[k])`.
fn for_each_point(radices: &[u64], mut f: impl FnMut(&[u64]) -> Result<(), AuditError>) -> Result<(), AuditError> {
    if radices.contains(&0) {
        return Ok(());
    }
    let mut digits = alloc::vec![0u64; radices.len()];
    loop {
        f(&digits)?;
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(());
            }
            digits[k] += 1;
            if digits[k] < radices[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn check_colluders(mc: &MicroConfig, colluders: &[usize], allowed: usize) -> Result<Vec<usize>, AuditError> {
    if colluders.len() > allowed {
        return Err(AuditError::TooManyColluders {
            got: colluders.len(),
            allowed,
        });
    }
    let mut sorted = colluders.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(AuditError::BadColluder(w[0]));
        }
    }
    if let Some(&c) = sorted.iter().find(|&&c| c >= mc.cfg.clients()) {
        return Err(AuditError::BadColluder(c));
    }
    Ok(sorted)
}

fn share_scope(t: usize) -> impl Fn(&CoinId) -> bool {
    move |id| matches!(id, CoinId::Share { objective, .. } if *objective == t)
}

/// Data-privacy audit variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataVariant {
    Honest,
    /// Colluders also see the target's own share, one point beyond `z_s`.
    ExtraShare,
    /// Labels fixed at zero.
    ConstantLabels,
}

/// `I(target's labels ; colluders' received shares | colluders' labels)`.
pub fn audit_data_privacy(mc: &MicroConfig, colluders: &[usize], target: usize) -> Result<AuditOutcome, AuditError> {
    audit_data_privacy_with(mc, colluders, target, DataVariant::Honest)
}

fn data_radix(mc: &MicroConfig, variant: DataVariant) -> u64 {
    match variant {
        DataVariant::ConstantLabels => 1,
        _ => mc.cfg.gamma(),
    }
}

fn data_guard(mc: &MicroConfig, variant: DataVariant) -> Result<(), AuditError> {
    let radix = data_radix(mc, variant);
    let blocks: Vec<u128> = (0..mc.cfg.objectives()).map(|t| mc.sharing_block_size(t, radix)).collect();
    guard(blocks.iter().sum(), blocks.iter().copied().max().unwrap_or(0))
}

pub fn audit_data_privacy_with(
    mc: &MicroConfig,
    colluders: &[usize],
    target: usize,
    variant: DataVariant,
) -> Result<AuditOutcome, AuditError> {
    let cfg = &mc.cfg;
    let colluders = check_colluders(mc, colluders, cfg.z_s())?;
    if target >= cfg.clients() || colluders.contains(&target) {
        return Err(AuditError::BadTarget(target));
    }
    let radix = data_radix(mc, variant);
    let objectives = 0..cfg.objectives();
    data_guard(mc, variant)?;

    let mut outcome = AuditOutcome {
        leakage: Leakage::ZERO,
        state_space: 1,
        evaluations: 0,
    };
    for t in objectives {
        let edge = mc.edge(t).to_vec();
        let space = CoinSpace::new(mc.share_coins(t));
        let label_len = mc.label_digits(t);
        let mut radices = alloc::vec![radix; label_len];
        radices.extend(core::iter::repeat_n(cfg.modulus(), space.len()));
        let scalars = mc.scalars();
        let mut dist: Distribution<(Packed, Packed, Packed)> = Distribution::new();
        for_each_point(&radices, |digits| {
            let (label_digits, coin_digits) = digits.split_at(label_len);
            let labels = mc.labels_from(&[(t, label_digits)])?;
            let mut coins = EnumeratedCoins {
                space: &space,
                digits: coin_digits,
                scope: share_scope(t),
                missed: None,
            };
            let (batch, _) = share_and_store(cfg, &mc.assignment, &labels, &mut coins)?;
            coins.finish()?;
            let (mut secret, mut view, mut cond) = (Packed::default(), Packed::default(), Packed::default());
            for (pos, &client) in edge.iter().enumerate() {
                let own = &label_digits[pos * scalars..(pos + 1) * scalars];
                if client == target {
                    own.iter().try_for_each(|&v| secret.push(v))?;
                } else if colluders.contains(&client) {
                    own.iter().try_for_each(|&v| cond.push(v))?;
                }
            }
            for &c in colluders.iter().filter(|c| edge.contains(c)) {
                for (_, _, _, share) in batch.received_by(c).filter(|m| m.0 == t) {
                    view.extend_field(share)?;
                }
            }
            if variant == DataVariant::ExtraShare && edge.contains(&target) {
                for p in 0..cfg.partition_count() {
                    if let Some(share) = batch.get(t, p, target, target) {
                        view.extend_field(share)?;
                    }
                }
            }
            dist.add((secret, view, cond), 1);
            Ok(())
        })?;
        outcome.leakage = outcome.leakage.plus(conditional_mutual_information(&dist));
        outcome.state_space = outcome.state_space.saturating_mul(dist.total());
        outcome.evaluations += dist.total();
    }
    Ok(outcome)
}

/// Objective-hiding audit variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveVariant {
    Honest,
    /// Query polynomials carry no random coefficients.
    ZeroQueryCoins,
}

/// `I(colluders' queries, stored shares and received shares ; J)` with `J`
/// uniform over the objectives.
pub fn audit_objective_hiding(mc: &MicroConfig, colluders: &[usize]) -> Result<AuditOutcome, AuditError> {
    audit_objective_hiding_with(mc, colluders, ObjectiveVariant::Honest)
}

fn objective_query_space(mc: &MicroConfig, variant: ObjectiveVariant) -> CoinSpace {
    CoinSpace::new(match variant {
        ObjectiveVariant::Honest => mc.query_coins(),
        ObjectiveVariant::ZeroQueryCoins => Vec::new(),
    })
}

fn objective_guard(mc: &MicroConfig, variant: ObjectiveVariant) -> Result<(), AuditError> {
    let cfg = &mc.cfg;
    let query_space = objective_query_space(mc, variant);
    let query_block = (cfg.objectives() as u128).saturating_mul(pow(cfg.modulus(), query_space.len()));
    let blocks: Vec<u128> = (0..cfg.objectives()).map(|t| mc.sharing_block_size(t, cfg.gamma())).collect();
    let largest = blocks.iter().copied().max().unwrap_or(0).max(query_block);
    guard(query_block.saturating_add(blocks.iter().sum()), largest)
}

pub fn audit_objective_hiding_with(
    mc: &MicroConfig,
    colluders: &[usize],
    variant: ObjectiveVariant,
) -> Result<AuditOutcome, AuditError> {
    let cfg = &mc.cfg;
    let colluders = check_colluders(mc, colluders, cfg.z_q())?;
    let query_space = objective_query_space(mc, variant);
    objective_guard(mc, variant)?;

    let mut radices = alloc::vec![cfg.objectives() as u64];
    radices.extend(core::iter::repeat_n(cfg.modulus(), query_space.len()));
    let mut dist: Distribution<(u64, Packed, ())> = Distribution::new();
    for_each_point(&radices, |digits| {
        let j = digits[0] as usize;
        let mut coins = EnumeratedCoins {
            space: &query_space,
            digits: &digits[1..],
            scope: |id: &CoinId| variant == ObjectiveVariant::Honest && matches!(id, CoinId::Query { .. }),
            missed: None,
        };
        let queries = build_queries(cfg, &mc.assignment, j, &mut coins)?;
        coins.finish()?;
        let mut view = Packed::default();
        for &c in &colluders {
            for (_, _, q) in queries.received_by(c) {
                view.extend_field(q)?;
            }
        }
        dist.add((j as u64, view, ()), 1);
        Ok(())
    })?;
    let mut outcome = AuditOutcome {
        leakage: mutual_information(&dist.map(|(j, v, _)| (*j, *v))),
        state_space: dist.total(),
        evaluations: dist.total(),
    };

    for t in 0..cfg.objectives() {
        let space = CoinSpace::new(mc.share_coins(t));
        let label_len = mc.label_digits(t);
        let mut radices = alloc::vec![cfg.gamma(); label_len];
        radices.extend(core::iter::repeat_n(cfg.modulus(), space.len()));
        let mut side: Distribution<((), Packed, ())> = Distribution::new();
        for_each_point(&radices, |digits| {
            let (label_digits, coin_digits) = digits.split_at(label_len);
            let labels = mc.labels_from(&[(t, label_digits)])?;
            let mut coins = EnumeratedCoins {
                space: &space,
                digits: coin_digits,
                scope: share_scope(t),
                missed: None,
            };
            let (batch, storage) = share_and_store(cfg, &mc.assignment, &labels, &mut coins)?;
            coins.finish()?;
            let mut view = Packed::default();
            for &c in &colluders {
                for (_, _, share) in storage.held_by(c).filter(|h| h.0 == t) {
                    view.extend_field(share)?;
                }
                for (_, _, _, share) in batch.received_by(c).filter(|m| m.0 == t) {
                    view.extend_field(share)?;
                }
            }
            side.add(((), view, ()), 1);
            Ok(())
        })?;
        outcome.leakage = outcome.leakage.plus(conditional_mutual_information(&side));
        outcome.state_space = outcome.state_space.saturating_mul(side.total());
        outcome.evaluations += side.total();
    }
    Ok(outcome)
}

type StorageOutcome = (Vec<Vec<u64>>, StorageState);

type ObjectiveRows = Vec<Vec<Vec<FieldElement>>>;

/// Distribution of `(labels per objective, aggregated storage)` over all
/// labels and share coins, built objective by objective.
fn storage_distribution(mc: &MicroConfig) -> Result<(Distribution<StorageOutcome>, u128), AuditError> {
    let cfg = &mc.cfg;
    let template = {
        let labels = mc.labels_from(&[])?;
        share_and_store(cfg, &mc.assignment, &labels, &mut ZeroCoins)?.1
    };
    let mut joint: Distribution<(Vec<Vec<u64>>, Vec<ObjectiveRows>)> =
        Distribution::point((Vec::new(), Vec::new()));
    let mut evaluations = 0u128;
    for t in 0..cfg.objectives() {
        let space = CoinSpace::new(mc.share_coins(t));
        let label_len = mc.label_digits(t);
        let mut radices = alloc::vec![cfg.gamma(); label_len];
        radices.extend(core::iter::repeat_n(cfg.modulus(), space.len()));
        let mut block: Distribution<(Vec<u64>, ObjectiveRows)> = Distribution::new();
        for_each_point(&radices, |digits| {
            let (label_digits, coin_digits) = digits.split_at(label_len);
            let labels = mc.labels_from(&[(t, label_digits)])?;
            let mut coins = EnumeratedCoins {
                space: &space,
                digits: coin_digits,
                scope: share_scope(t),
                missed: None,
            };
            let (_, storage) = share_and_store(cfg, &mc.assignment, &labels, &mut coins)?;
            coins.finish()?;
            let rows = storage.objective_rows(t).map(<[_]>::to_vec).unwrap_or_default();
            block.add((label_digits.to_vec(), rows), 1);
            Ok(())
        })?;
        evaluations += block.total();
        joint = joint.product(&block).map(|((ls, rs), (l, r))| {
            let mut ls = ls.clone();
            ls.push(l.clone());
            let mut rs = rs.clone();
            rs.push(r.clone());
            (ls, rs)
        });
    }
    let mut out = Distribution::new();
    for ((labels, rows), c) in joint.iter() {
        let mut storage = template.clone();
        for (t, r) in rows.iter().enumerate() {
            storage.set_objective_rows(t, r.clone())?;
        }
        out.add((labels.clone(), storage), c);
    }
    Ok((out, evaluations))
}

/// Federator-privacy audit variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FederatorVariant {
    Symmetric,
    /// Answers without the shared mask.
    Plain,
}

fn answer_space(mc: &MicroConfig, symmetric: bool) -> CoinSpace {
    let mut ids = mc.query_coins();
    if symmetric {
        ids.extend(mc.mask_coins());
    }
    CoinSpace::new(ids)
}

/// Evaluations of the staged enumeration and the size of its largest
/// table, one objective `j` at a time.
fn answer_stage_bound(mc: &MicroConfig, symmetric: bool) -> (u128, u128) {
    let outcomes = (0..mc.cfg.objectives()).fold(1u128, |acc, t| acc.saturating_mul(mc.storage_outcome_bound(t)));
    let sharing: u128 = (0..mc.cfg.objectives()).map(|t| mc.sharing_block_size(t, mc.cfg.gamma())).sum();
    let per_j = outcomes.saturating_mul(pow(mc.cfg.modulus(), answer_space(mc, symmetric).len()));
    let evaluations = per_j
        .saturating_mul(mc.cfg.objectives() as u128)
        .saturating_add(sharing);
    (evaluations, per_j.max(outcomes))
}

/// `I(all labels ; all answers and queries | J, aggregate of J)` in
/// symmetric mode.
pub fn audit_federator_privacy(mc: &MicroConfig) -> Result<AuditOutcome, AuditError> {
    audit_federator_privacy_with(mc, FederatorVariant::Symmetric)
}

fn federator_guard(mc: &MicroConfig, variant: FederatorVariant) -> Result<(), AuditError> {
    let (evaluations, table) = answer_stage_bound(mc, variant == FederatorVariant::Symmetric);
    guard(evaluations, table)
}

pub fn audit_federator_privacy_with(mc: &MicroConfig, variant: FederatorVariant) -> Result<AuditOutcome, AuditError> {
    let cfg = &mc.cfg;
    let symmetric = variant == FederatorVariant::Symmetric;
    federator_guard(mc, variant)?;
    let (storage, mut evaluations) = storage_distribution(mc)?;
    let space = answer_space(mc, symmetric);
    let radices = alloc::vec![cfg.modulus(); space.len()];
    let duals = dual_table(cfg, &mc.assignment)?;
    let scope = |id: &CoinId| matches!(id, CoinId::Query { .. }) || (symmetric && matches!(id, CoinId::Mask { .. }));
    let objectives = cfg.objectives();
    let mut leakage = Leakage::ZERO;
    let mut state_space = 0;
    for j in 0..objectives {
        let mut dist: Distribution<(Packed, Packed, Packed)> = Distribution::new();
        for ((label_digits, stored), count) in storage.iter() {
            let mut secret = Packed::default();
            label_digits.iter().flatten().try_for_each(|&v| secret.push(v))?;
            let per_objective: Vec<(usize, &[u64])> =
                label_digits.iter().enumerate().map(|(t, d)| (t, d.as_slice())).collect();
            let labels = mc.labels_from(&per_objective)?;
            let mut cond = Packed::default();
            cond.push(j as u64)?;
            labels.direct_sum(&mc.assignment, j)?.iter().flatten().try_for_each(|&v| cond.push(v))?;
            for_each_point(&radices, |digits| {
                let mut coins = EnumeratedCoins {
                    space: &space,
                    digits,
                    scope,
                    missed: None,
                };
                let queries = build_queries(cfg, &mc.assignment, j, &mut coins)?;
                let mask = symmetric.then(|| SharedMask::draw(cfg, &mut coins));
                coins.finish()?;
                let answers = collect_answers(cfg, &mc.assignment, stored, &queries, &duals, mask.as_ref())?;
                let mut view = Packed::default();
                for row in answers.rows() {
                    row.iter().try_for_each(|a| view.extend_field(a))?;
                }
                for (_, _, _, q) in queries.all() {
                    view.extend_field(q)?;
                }
                dist.add((secret, view, cond), count);
                Ok(())
            })?;
        }
        evaluations += (storage.support() as u128) * pow(cfg.modulus(), space.len());
        state_space += dist.total();
        leakage = leakage.plus(conditional_mutual_information(&dist).weighted(1.0 / objectives as f64));
    }
    Ok(AuditOutcome {
        leakage,
        state_space,
        evaluations,
    })
}

/// Correctness-oracle variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectnessVariant {
    Honest,
    /// Clients weight answers with multipliers of the wrong client set:
    /// every member of `G(e_t)` shifted by one.
    ShiftedDuals,
}

fn shifted_duals(mc: &MicroConfig) -> Result<Vec<DualCoefficients>, AuditError> {
    let cfg = &mc.cfg;
    let pts = cfg.eval_points().map_err(ProtocolError::from)?;
    let n = cfg.clients();
    (0..cfg.objectives())
        .map(|t| {
            let mut duals = dual_coefficients(t, &mc.assignment, &pts)?;
            let edge = mc.edge(t);
            let shifted: Vec<usize> = edge.iter().map(|&i| (i + 1) % n).collect();
            let wrong = DualCoefficients::for_clients(t, &shifted, &pts)?;
            for (pos, &i) in edge.iter().enumerate() {
                let right = duals.get(i).expect("member of the edge");
                let value = wrong.get(shifted[pos]).expect("member of the shifted set");
                duals.perturb(i, value - right);
            }
            Ok(duals)
        })
        .collect()
}

/// True when, at every enumerated point and for every `j`, both modes
/// return the direct sum of objective `j`'s labels.
pub fn correctness_oracle(mc: &MicroConfig) -> Result<bool, AuditError> {
    correctness_oracle_with(mc, CorrectnessVariant::Honest)
}

fn correctness_guard(mc: &MicroConfig) -> Result<(), AuditError> {
    let (symmetric, table) = answer_stage_bound(mc, true);
    let (plain, _) = answer_stage_bound(mc, false);
    guard(symmetric.saturating_add(plain), table)
}

pub fn correctness_oracle_with(mc: &MicroConfig, variant: CorrectnessVariant) -> Result<bool, AuditError> {
    let cfg = &mc.cfg;
    correctness_guard(mc)?;
    let (storage, _) = storage_distribution(mc)?;
    let duals = match variant {
        CorrectnessVariant::Honest => dual_table(cfg, &mc.assignment)?,
        CorrectnessVariant::ShiftedDuals => shifted_duals(mc)?,
    };
    for symmetric in [false, true] {
        let space = answer_space(mc, symmetric);
        let radices = alloc::vec![cfg.modulus(); space.len()];
        let scope = |id: &CoinId| matches!(id, CoinId::Query { .. }) || (symmetric && matches!(id, CoinId::Mask { .. }));
        for ((label_digits, stored), _) in storage.iter() {
            let per_objective: Vec<(usize, &[u64])> =
                label_digits.iter().enumerate().map(|(t, d)| (t, d.as_slice())).collect();
            let labels = mc.labels_from(&per_objective)?;
            for j in 0..cfg.objectives() {
                let want = labels.direct_sum(&mc.assignment, j)?;
                let mut all_match = true;
                for_each_point(&radices, |digits| {
                    let mut coins = EnumeratedCoins {
                        space: &space,
                        digits,
                        scope,
                        missed: None,
                    };
                    let queries = build_queries(cfg, &mc.assignment, j, &mut coins)?;
                    let mask = symmetric.then(|| SharedMask::draw(cfg, &mut coins));
                    coins.finish()?;
                    let answers = collect_answers(cfg, &mc.assignment, stored, &queries, &duals, mask.as_ref())?;
                    let got = match reconstruct(&answers, &mc.assignment, cfg, j) {
                        Ok(blocks) => decode_sums(cfg, &blocks)?,
                        Err(ProtocolError::SingularReconstruction) => {
                            all_match = false;
                            return Ok(());
                        }
                        Err(e) => return Err(e.into()),
                    };
                    all_match &= got == want;
                    Ok(())
                })?;
                if !all_match {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl core::fmt::Display for MicroConfig {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let c = &self.cfg;
        write!(
            f,
            "n={} T={} rho={} z_s={} z_q={} s={} gamma={} q={}",
            c.clients(),
            c.objectives(),
            c.replication(),
            c.z_s(),
            c.z_q(),
            c.samples(),
            c.gamma(),
            c.modulus()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Definition {
    DataPrivacy,
    ObjectiveHiding,
    FederatorPrivacy,
    Correctness,
}

impl core::fmt::Display for Definition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Definition::DataPrivacy => "data-privacy",
            Definition::ObjectiveHiding => "objective-hiding",
            Definition::FederatorPrivacy => "federator-privacy",
            Definition::Correctness => "correctness",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Data {
        colluders: Vec<usize>,
        target: usize,
        variant: DataVariant,
    },
    Objective {
        colluders: Vec<usize>,
        variant: ObjectiveVariant,
    },
    Federator(FederatorVariant),
    Correctness(CorrectnessVariant),
}

impl Check {
    pub fn definition(&self) -> Definition {
        match self {
            Check::Data { .. } => Definition::DataPrivacy,
            Check::Objective { .. } => Definition::ObjectiveHiding,
            Check::Federator(_) => Definition::FederatorPrivacy,
            Check::Correctness(_) => Definition::Correctness,
        }
    }

    /// Whether this is a deliberately broken variant.
    pub fn is_control(&self) -> bool {
        !matches!(
            self,
            Check::Data {
                variant: DataVariant::Honest | DataVariant::ConstantLabels,
                ..
            } | Check::Objective {
                variant: ObjectiveVariant::Honest,
                ..
            } | Check::Federator(FederatorVariant::Symmetric)
                | Check::Correctness(CorrectnessVariant::Honest)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseResult {
    Leakage(AuditOutcome),
    Correct(bool),
}

impl CaseResult {
    /// Property holds: zero leakage, or decoding always correct.
    pub fn holds(&self) -> bool {
        match self {
            CaseResult::Leakage(o) => o.leakage.exact_zero,
            CaseResult::Correct(ok) => *ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCase {
    pub config: MicroConfig,
    pub check: Check,
}

impl AuditCase {
    pub fn run(&self) -> Result<CaseResult, AuditError> {
        let mc = &self.config;
        Ok(match &self.check {
            Check::Data {
                colluders,
                target,
                variant,
            } => CaseResult::Leakage(audit_data_privacy_with(mc, colluders, *target, *variant)?),
            Check::Objective { colluders, variant } => {
                CaseResult::Leakage(audit_objective_hiding_with(mc, colluders, *variant)?)
            }
            Check::Federator(variant) => CaseResult::Leakage(audit_federator_privacy_with(mc, *variant)?),
            Check::Correctness(variant) => CaseResult::Correct(correctness_oracle_with(mc, *variant)?),
        })
    }

    /// Evaluates the enumeration guard without running the audit.
    pub fn check_guard(&self) -> Result<(), AuditError> {
        let mc = &self.config;
        match &self.check {
            Check::Data { variant, .. } => data_guard(mc, *variant),
            Check::Objective { variant, .. } => objective_guard(mc, *variant),
            Check::Federator(variant) => federator_guard(mc, *variant),
            Check::Correctness(_) => correctness_guard(mc),
        }
    }

    /// An honest case passes when the property holds, a control when it fails.
    pub fn passes(&self, result: &CaseResult) -> bool {
        result.holds() != self.check.is_control()
    }
}

fn micro(n: usize, objectives: usize, rho: usize, z_s: usize, z_q: usize, modulus: Option<u64>) -> Result<MicroConfig, AuditError> {
    MicroConfig::cyclic(n, objectives, rho, z_s, z_q, 1, 2, modulus)
}

/// Honest audits: at least three configurations per definition.
pub fn default_suite() -> Result<Vec<AuditCase>, AuditError> {
    let data = |mc: MicroConfig, colluders: &[usize], target| AuditCase {
        config: mc,
        check: Check::Data {
            colluders: colluders.to_vec(),
            target,
            variant: DataVariant::Honest,
        },
    };
    let objective = |mc: MicroConfig, colluders: &[usize]| AuditCase {
        config: mc,
        check: Check::Objective {
            colluders: colluders.to_vec(),
            variant: ObjectiveVariant::Honest,
        },
    };
    let federator = |mc: MicroConfig| AuditCase {
        config: mc,
        check: Check::Federator(FederatorVariant::Symmetric),
    };
    let correct = |mc: MicroConfig| AuditCase {
        config: mc,
        check: Check::Correctness(CorrectnessVariant::Honest),
    };
    Ok(alloc::vec![
        data(micro(3, 1, 3, 1, 1, None)?, &[1], 0),
        data(micro(3, 1, 3, 1, 1, Some(7))?, &[2], 0),
        data(micro(4, 2, 3, 1, 1, None)?, &[1], 0),
        data(micro(4, 1, 4, 1, 2, None)?, &[3], 0),
        data(micro(4, 1, 4, 2, 1, None)?, &[1, 2], 0),
        objective(micro(3, 2, 3, 1, 1, None)?, &[0]),
        objective(micro(3, 2, 3, 1, 1, Some(7))?, &[1]),
        objective(micro(4, 2, 3, 1, 1, None)?, &[3]),
        objective(micro(4, 2, 4, 1, 2, None)?, &[0, 1]),
        federator(micro(3, 1, 3, 1, 1, None)?),
        federator(micro(3, 2, 3, 1, 1, None)?),
        federator(micro(4, 2, 3, 1, 1, None)?),
        federator(micro(4, 1, 4, 1, 2, None)?),
        correct(micro(3, 1, 3, 1, 1, None)?),
        correct(micro(4, 2, 3, 1, 1, None)?),
        correct(micro(4, 1, 4, 1, 2, None)?),
    ])
}

/// Deliberately broken variants, each expected to fail its property.
pub fn negative_controls() -> Result<Vec<AuditCase>, AuditError> {
    let extra = |mc: MicroConfig, colluders: &[usize], target| AuditCase {
        config: mc,
        check: Check::Data {
            colluders: colluders.to_vec(),
            target,
            variant: DataVariant::ExtraShare,
        },
    };
    let zero_queries = |mc: MicroConfig, colluders: &[usize]| AuditCase {
        config: mc,
        check: Check::Objective {
            colluders: colluders.to_vec(),
            variant: ObjectiveVariant::ZeroQueryCoins,
        },
    };
    Ok(alloc::vec![
        extra(micro(3, 1, 3, 1, 1, None)?, &[1], 0),
        extra(micro(4, 2, 3, 1, 1, None)?, &[1], 0),
        extra(micro(4, 1, 4, 1, 2, None)?, &[3], 0),
        zero_queries(micro(3, 2, 3, 1, 1, None)?, &[0]),
        zero_queries(micro(4, 2, 4, 1, 2, None)?, &[0, 1]),
        AuditCase {
            config: micro(4, 2, 3, 1, 1, None)?,
            check: Check::Federator(FederatorVariant::Plain),
        },
        AuditCase {
            config: micro(4, 2, 3, 1, 1, None)?,
            check: Check::Correctness(CorrectnessVariant::ShiftedDuals),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn joint(rows: &[(u8, u8, u8, u128)]) -> Distribution<(u8, u8, u8)> {
        let mut d = Distribution::new();
        for &(x, y, z, c) in rows {
            d.add((x, y, z), c);
        }
        d
    }

    #[test]
    fn independent_pair_has_zero_information() {
        let d = joint(&[(0, 0, 0, 1), (0, 1, 0, 1), (1, 0, 0, 1), (1, 1, 0, 1)]);
        assert_eq!(conditional_mutual_information(&d), Leakage::ZERO);
    }

    #[test]
    fn copied_bit_leaks_one_bit() {
        let d = joint(&[(0, 0, 0, 3), (1, 1, 0, 3)]);
        let l = conditional_mutual_information(&d);
        assert!(!l.exact_zero);
        assert!((l.bits - 1.0).abs() < 1e-12);
    }

    #[test]
    fn missing_cell_is_dependence() {
        // marginals are uniform but (1, 1) never occurs
        let d = joint(&[(0, 0, 0, 1), (0, 1, 0, 1), (1, 0, 0, 1)]);
        let l = conditional_mutual_information(&d);
        assert!(!l.exact_zero);
        assert!(l.bits > 0.0);
    }

    #[test]
    fn conditioning_removes_shared_cause() {
        // x = y = z: dependent, but independent given z
        let d = joint(&[(0, 0, 0, 1), (1, 1, 1, 1)]);
        assert!(conditional_mutual_information(&d).exact_zero);
        assert!(!mutual_information(&d.map(|(x, y, _)| (*x, *y))).exact_zero);
    }

    #[test]
    fn xor_is_independent_of_each_input() {
        let mut d = Distribution::new();
        for a in 0..2u8 {
            for b in 0..2u8 {
                d.add((a, a ^ b), 1);
            }
        }
        assert_eq!(mutual_information(&d), Leakage::ZERO);
    }

    #[test]
    fn distribution_algebra() {
        let a = joint(&[(0, 0, 0, 2), (1, 0, 0, 1)]);
        let b = Distribution::point(7u8);
        let p = a.product(&b);
        assert_eq!(p.total(), 3);
        assert_eq!(p.count(&((0, 0, 0), 7)), 2);
        let m = a.map(|_| ());
        assert_eq!((m.total(), m.support()), (3, 1));
    }

    #[test]
    fn odometer_visits_every_point_once() {
        let mut seen = Vec::new();
        for_each_point(&[2, 3], |d| {
            seen.push((d[0], d[1]));
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 6);
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 6);
        let mut calls = 0;
        for_each_point(&[], |_| {
            calls += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(calls, 1);
    }

    #[test]
    fn micro_bounds() {
        assert!(matches!(
            MicroConfig::cyclic(5, 1, 3, 1, 1, 1, 2, None),
            Err(AuditError::OutOfBounds(_))
        ));
        assert!(matches!(
            MicroConfig::cyclic(3, 1, 3, 1, 1, 1, 2, Some(17)),
            Err(AuditError::OutOfBounds(_))
        ));
        assert!(matches!(
            MicroConfig::cyclic(3, 3, 3, 1, 1, 1, 2, None),
            Err(AuditError::OutOfBounds(_))
        ));
        assert!(MicroConfig::cyclic(3, 1, 3, 1, 1, 1, 2, None).is_ok());
    }

    #[test]
    fn data_privacy_base_case() {
        let mc = MicroConfig::cyclic(3, 1, 3, 1, 1, 1, 2, None).unwrap();
        assert_eq!(mc.config().modulus(), 5);
        let out = audit_data_privacy(&mc, &[1], 0).unwrap();
        assert_eq!(out.leakage, Leakage::ZERO);
        assert_eq!(out.state_space, 8 * 125);
        let leak = audit_data_privacy_with(&mc, &[1], 0, DataVariant::ExtraShare).unwrap();
        assert!(!leak.leakage.exact_zero && leak.leakage.bits > 0.0);
        let flat = audit_data_privacy_with(&mc, &[1], 0, DataVariant::ConstantLabels).unwrap();
        assert_eq!(flat.leakage, Leakage::ZERO);
        assert_eq!(flat.state_space, 125);
    }

    #[test]
    fn data_privacy_preconditions() {
        let mc = MicroConfig::cyclic(3, 1, 3, 1, 1, 1, 2, None).unwrap();
        assert!(matches!(
            audit_data_privacy(&mc, &[1, 2], 0),
            Err(AuditError::TooManyColluders { .. })
        ));
        assert!(matches!(audit_data_privacy(&mc, &[0], 0), Err(AuditError::BadTarget(0))));
        assert!(matches!(audit_data_privacy(&mc, &[7], 0), Err(AuditError::BadColluder(7))));
    }

    #[test]
    fn objective_hiding_base_case() {
        let mc = MicroConfig::cyclic(3, 2, 3, 1, 1, 1, 2, None).unwrap();
        let out = audit_objective_hiding(&mc, &[0]).unwrap();
        assert_eq!(out.leakage, Leakage::ZERO);
        let leak = audit_objective_hiding_with(&mc, &[0], ObjectiveVariant::ZeroQueryCoins).unwrap();
        assert!(!leak.leakage.exact_zero);
        assert!((leak.leakage.bits - 1.0).abs() < 1e-12);
    }

    #[test]
    fn federator_single_objective() {
        let mc = MicroConfig::cyclic(3, 1, 3, 1, 1, 1, 2, None).unwrap();
        assert_eq!(audit_federator_privacy(&mc).unwrap().leakage, Leakage::ZERO);
    }

    #[test]
    fn correctness_and_shifted_duals() {
        let mc = MicroConfig::cyclic(3, 1, 3, 1, 1, 1, 2, None).unwrap();
        assert!(correctness_oracle(&mc).unwrap());
        let mc = MicroConfig::cyclic(4, 2, 3, 1, 1, 1, 2, None).unwrap();
        assert!(correctness_oracle(&mc).unwrap());
        assert!(!correctness_oracle_with(&mc, CorrectnessVariant::ShiftedDuals).unwrap());
    }

    #[test]
    fn guard_rejects_large_spaces() {
        let mc = MicroConfig::cyclic(4, 2, 4, 1, 2, 2, 2, Some(13)).unwrap();
        assert!(matches!(
            audit_federator_privacy(&mc),
            Err(AuditError::GuardExceeded { .. })
        ));
    }
}
