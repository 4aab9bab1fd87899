//! Closed-form rates and communication costs.
//!
//! Costs are in units of `s c` field symbols. Everything is an exact
//! rational; no parity condition is imposed here, so the formulas can be
//! swept over every `rho`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("rho must be at least 2, got {0}")]
    ReplicationTooSmall(usize),
    #[error("non-positive denominator: {0}")]
    Pole(&'static str),
    #[error("k = {k} outside the feasible range [{low}, {high}]")]
    KOutOfRange { k: usize, low: usize, high: usize },
    #[error("no feasible storage dimension for n = {n}, z_s = {z_s}, z_q = {z_q}")]
    EmptyRange { n: usize, z_s: usize, z_q: usize },
    #[error("closed form needs T n (n - 1) > n")]
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Ours,
    Gxstpir,
    StarProduct,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Ours => "ours",
            Scheme::Gxstpir => "gxstpir",
            Scheme::StarProduct => "star_product",
        })
    }
}

fn int(v: usize) -> i128 {
    v as i128
}

fn ratio(num: i128, den: i128, what: &'static str) -> Result<Rational, AnalysisError> {
    if den <= 0 || num <= 0 {
        return Err(AnalysisError::Pole(what));
    }
    Ok(Rational::new(num, den))
}

fn check_rho(rho: usize) -> Result<(), AnalysisError> {
    if rho < 2 {
        return Err(AnalysisError::ReplicationTooSmall(rho));
    }
    Ok(())
}

/// `(rho - z_s - z_q + 1) / (2 T rho (rho - 1))`.
pub fn sharing_rate_ours(rho: usize, z_s: usize, z_q: usize, objectives: usize) -> Result<Rational, AnalysisError> {
    check_rho(rho)?;
    let d = int(rho) - int(z_s) - int(z_q) + 1;
    ratio(d, 2 * int(objectives) * int(rho) * (int(rho) - 1), "rho - z_s - z_q + 1")
}

/// `(rho - z_q - z_s + 1) / (2 n)`.
pub fn pir_rate_ours(rho: usize, z_s: usize, z_q: usize, n: usize) -> Result<Rational, AnalysisError> {
    check_rho(rho)?;
    ratio(int(rho) - int(z_s) - int(z_q) + 1, 2 * int(n), "rho - z_s - z_q + 1")
}

pub fn total_cost_ours(n: usize, objectives: usize, rho: usize, z_s: usize, z_q: usize) -> Result<Rational, AnalysisError> {
    Ok(sharing_rate_ours(rho, z_s, z_q, objectives)?.recip() + pir_rate_ours(rho, z_s, z_q, n)?.recip())
}

/// `1 / (T rho (rho - 1))`.
pub fn sharing_rate_gxstpir(rho: usize, objectives: usize) -> Result<Rational, AnalysisError> {
    check_rho(rho)?;
    ratio(1, int(objectives) * int(rho) * (int(rho) - 1), "T rho (rho - 1)")
}

/// `(rho - z_s - z_q) / n`.
pub fn pir_rate_gxstpir(rho: usize, z_s: usize, z_q: usize, n: usize) -> Result<Rational, AnalysisError> {
    check_rho(rho)?;
    ratio(int(rho) - int(z_s) - int(z_q), int(n), "rho - z_s - z_q")
}

pub fn total_cost_gxstpir(n: usize, objectives: usize, rho: usize, z_s: usize, z_q: usize) -> Result<Rational, AnalysisError> {
    Ok(sharing_rate_gxstpir(rho, objectives)?.recip() + pir_rate_gxstpir(rho, z_s, z_q, n)?.recip())
}

fn check_k(n: usize, z_s: usize, z_q: usize, k: usize) -> Result<(), AnalysisError> {
    let (low, high) = (z_s + 1, n.saturating_sub(z_q));
    if k < low || k > high {
        return Err(AnalysisError::KOutOfRange { k, low, high });
    }
    Ok(())
}

/// `(k - z_s) / (T n (n - 1))`.
pub fn sharing_rate_star(n: usize, objectives: usize, z_s: usize, z_q: usize, k: usize) -> Result<Rational, AnalysisError> {
    check_k(n, z_s, z_q, k)?;
    ratio(int(k) - int(z_s), int(objectives) * int(n) * (int(n) - 1), "T n (n - 1)")
}

/// `(k - z_s)(n - k - z_q + 1) / (n k)`.
pub fn pir_rate_star(n: usize, z_s: usize, z_q: usize, k: usize) -> Result<Rational, AnalysisError> {
    check_k(n, z_s, z_q, k)?;
    ratio(
        (int(k) - int(z_s)) * (int(n) - int(k) - int(z_q) + 1),
        int(n) * int(k),
        "n k",
    )
}

/// `T n (n-1) / (k - z_s) + k n / ((k - z_s)(n - k - z_q + 1))`.
pub fn total_cost_star(n: usize, objectives: usize, z_s: usize, z_q: usize, k: usize) -> Result<Rational, AnalysisError> {
    Ok(sharing_rate_star(n, objectives, z_s, z_q, k)?.recip() + pir_rate_star(n, z_s, z_q, k)?.recip())
}

/// Stationary point of the star-product cost, as
/// `(c_1 c_2 - sqrt(D)) / (c_2 - n)` with `c_1 = n - z_q + 1`,
/// `c_2 = T n (n - 1)` and `D = c_1^2 c_2^2 - (c_2 - n)(c_1^2 c_2 + n c_1 z_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StationaryPoint {
    numerator_base: i128,
    discriminant: i128,
    denominator: i128,
}

impl StationaryPoint {
    pub fn new(n: usize, objectives: usize, z_s: usize, z_q: usize) -> Result<Self, AnalysisError> {
        if n < 2 || z_q > n {
            return Err(AnalysisError::Degenerate);
        }
        let n_ = int(n);
        let c1 = n_ - int(z_q) + 1;
        let c2 = int(objectives) * n_ * (n_ - 1);
        let denominator = c2 - n_;
        if denominator <= 0 {
            return Err(AnalysisError::Degenerate);
        }
        let discriminant = c1 * c1 * c2 * c2 - denominator * (c1 * c1 * c2 + n_ * c1 * int(z_s));
        if discriminant < 0 {
            return Err(AnalysisError::Degenerate);
        }
        Ok(Self {
            numerator_base: c1 * c2,
            discriminant,
            denominator,
        })
    }

    /// `k' >= m`, decided exactly.
    fn at_least(&self, m: i128) -> bool {
        let lhs = self.numerator_base - m * self.denominator;
        lhs >= 0 && lhs * lhs >= self.discriminant
    }

    pub fn floor(&self) -> i128 {
        let root = self.discriminant.sqrt();
        let mut m = (self.numerator_base - root - 1).div_euclid(self.denominator) - 1;
        while self.at_least(m + 1) {
            m += 1;
        }
        while !self.at_least(m) {
            m -= 1;
        }
        m
    }

    pub fn ceil(&self) -> i128 {
        let m = self.floor();
        let lhs = self.numerator_base - m * self.denominator;
        if lhs * lhs == self.discriminant {
            m
        } else {
            m + 1
        }
    }

    pub fn to_f64(&self) -> f64 {
        let root = {
            let r = self.discriminant.sqrt() as f64;
            let d = self.discriminant as f64;
            // one Newton step after the integer root
            if r > 0.0 { (r + d / r) / 2.0 } else { 0.0 }
        };
        (self.numerator_base as f64 - root) / self.denominator as f64
    }
}

/// `k*` from `{floor(k'), ceil(k')}` clamped into `[z_s + 1, n - z_q]`,
/// with the smaller `k` on ties.
pub fn optimal_kc(n: usize, objectives: usize, z_s: usize, z_q: usize) -> Result<(usize, Rational), AnalysisError> {
    let (low, high) = (z_s + 1, n.saturating_sub(z_q));
    if low > high {
        return Err(AnalysisError::EmptyRange { n, z_s, z_q });
    }
    let point = StationaryPoint::new(n, objectives, z_s, z_q)?;
    let clamp = |k: i128| k.clamp(int(low), int(high)) as usize;
    let mut candidates = [clamp(point.floor()), clamp(point.ceil())];
    candidates.sort_unstable();
    let mut best: Option<(usize, Rational)> = None;
    for k in candidates {
        let cost = total_cost_star(n, objectives, z_s, z_q, k)?;
        if best.as_ref().is_none_or(|(_, c)| cost < *c) {
            best = Some((k, cost));
        }
    }
    Ok(best.expect("two candidates"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateReport {
    pub scheme: Scheme,
    pub n: usize,
    pub objectives: usize,
    pub rho: usize,
    pub z_s: usize,
    pub z_q: usize,
    /// Storage dimension: `k_C` for ours (possibly fractional), `k*` or the
    /// swept `k` for the star product, absent for GXSTPIR.
    pub k: Option<Rational>,
    pub sharing_rate: Rational,
    pub pir_rate: Rational,
    pub total_cost: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableEntry {
    Report(RateReport),
    Infeasible {
        scheme: Scheme,
        n: usize,
        objectives: usize,
        rho: usize,
        z_s: usize,
        z_q: usize,
        reason: String,
    },
}

impl TableEntry {
    pub fn report(&self) -> Option<&RateReport> {
        match self {
            TableEntry::Report(r) => Some(r),
            TableEntry::Infeasible { .. } => None,
        }
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            TableEntry::Report(r) => r.scheme,
            TableEntry::Infeasible { scheme, .. } => *scheme,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RateConfig {
    pub n: usize,
    pub objectives: usize,
    pub rho: usize,
    pub z_s: usize,
    pub z_q: usize,
}

fn entry(
    scheme: Scheme,
    cfg: RateConfig,
    k: Option<Rational>,
    rates: Result<(Rational, Rational), AnalysisError>,
) -> TableEntry {
    match rates {
        Ok((sharing_rate, pir_rate)) => TableEntry::Report(RateReport {
            scheme,
            n: cfg.n,
            objectives: cfg.objectives,
            rho: cfg.rho,
            z_s: cfg.z_s,
            z_q: cfg.z_q,
            k,
            sharing_rate,
            pir_rate,
            total_cost: sharing_rate.recip() + pir_rate.recip(),
        }),
        Err(e) => TableEntry::Infeasible {
            scheme,
            n: cfg.n,
            objectives: cfg.objectives,
            rho: cfg.rho,
            z_s: cfg.z_s,
            z_q: cfg.z_q,
            reason: alloc::format!("{e}"),
        },
    }
}

pub fn report_ours(cfg: RateConfig) -> TableEntry {
    let k = Rational::new(int(cfg.rho) - int(cfg.z_q) + int(cfg.z_s) + 1, 2);
    let rates = sharing_rate_ours(cfg.rho, cfg.z_s, cfg.z_q, cfg.objectives)
        .and_then(|s| Ok((s, pir_rate_ours(cfg.rho, cfg.z_s, cfg.z_q, cfg.n)?)));
    entry(Scheme::Ours, cfg, Some(k), rates)
}

pub fn report_gxstpir(cfg: RateConfig) -> TableEntry {
    let rates = sharing_rate_gxstpir(cfg.rho, cfg.objectives)
        .and_then(|s| Ok((s, pir_rate_gxstpir(cfg.rho, cfg.z_s, cfg.z_q, cfg.n)?)));
    entry(Scheme::Gxstpir, cfg, None, rates)
}

/// Star product at a given `k`, or at `k*` when `k` is `None`.
pub fn report_star(cfg: RateConfig, k: Option<usize>) -> TableEntry {
    let k = match k {
        Some(k) => Ok(k),
        None => optimal_kc(cfg.n, cfg.objectives, cfg.z_s, cfg.z_q).map(|(k, _)| k),
    };
    let chosen = k.as_ref().ok().map(|&k| Rational::from_integer(int(k)));
    let rates = k.and_then(|k| {
        Ok((
            sharing_rate_star(cfg.n, cfg.objectives, cfg.z_s, cfg.z_q, k)?,
            pir_rate_star(cfg.n, cfg.z_s, cfg.z_q, k)?,
        ))
    });
    entry(Scheme::StarProduct, cfg, chosen, rates)
}

/// All three schemes per configuration; the star product only where `rho = n`.
pub fn rate_table(configs: &[RateConfig]) -> Vec<TableEntry> {
    let mut out = Vec::new();
    for &cfg in configs {
        out.push(report_ours(cfg));
        out.push(report_gxstpir(cfg));
        if cfg.rho == cfg.n {
            out.push(report_star(cfg, None));
        }
    }
    out
}

/// `rho` sweep at fixed `(n, T, z_s, z_q)`, ours and GXSTPIR at every point
/// and the star product at `rho = n` when it is in range.
pub fn rho_sweep(n: usize, objectives: usize, z_s: usize, z_q: usize, rhos: core::ops::RangeInclusive<usize>) -> Vec<TableEntry> {
    let configs: Vec<RateConfig> = rhos
        .map(|rho| RateConfig {
            n,
            objectives,
            rho,
            z_s,
            z_q,
        })
        .collect();
    let mut out: Vec<TableEntry> = configs.iter().map(|&c| report_ours(c)).collect();
    out.extend(configs.iter().map(|&c| report_gxstpir(c)));
    out.extend(configs.iter().filter(|c| c.rho == c.n).map(|&c| report_star(c, None)));
    out
}

/// Star-product cost over every feasible `k` at `rho = n`.
pub fn star_k_sweep(n: usize, objectives: usize, z_s: usize, z_q: usize) -> Vec<TableEntry> {
    let cfg = RateConfig {
        n,
        objectives,
        rho: n,
        z_s,
        z_q,
    };
    (z_s + 1..=n.saturating_sub(z_q)).map(|k| report_star(cfg, Some(k))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Cost against `rho` at `n = T = 10`, `z = 1`.
    CostSmall,
    /// Sharing rates at `n = T = 10`, `z = 1`.
    SharingRates,
    /// Cost against `rho` at `n = 100`, `T = 20`, `z = 5`.
    CostLarge,
    /// PIR rates at `n = T = 10`, `z = 1`.
    PirRates,
    /// Star-product cost against `k` at `n = T = 10`, `z = 1`.
    StarDimension,
}

impl Figure {
    pub fn from_number(number: u32) -> Option<Self> {
        Some(match number {
            3 => Figure::CostSmall,
            4 => Figure::SharingRates,
            5 => Figure::CostLarge,
            6 => Figure::PirRates,
            7 => Figure::StarDimension,
            _ => return None,
        })
    }

    pub fn number(self) -> u32 {
        match self {
            Figure::CostSmall => 3,
            Figure::SharingRates => 4,
            Figure::CostLarge => 5,
            Figure::PirRates => 6,
            Figure::StarDimension => 7,
        }
    }

    /// `(n, T, z_s, z_q)` of the plotted setting.
    pub fn setting(self) -> (usize, usize, usize, usize) {
        match self {
            Figure::CostLarge => (100, 20, 5, 5),
            _ => (10, 10, 1, 1),
        }
    }

    /// The plotted `rho` range; `None` for the star-product `k` sweep.
    pub fn default_rhos(self) -> Option<core::ops::RangeInclusive<usize>> {
        match self {
            Figure::CostSmall | Figure::SharingRates | Figure::PirRates => Some(3..=10),
            Figure::CostLarge => Some(11..=100),
            Figure::StarDimension => None,
        }
    }

    pub fn entries(self) -> Vec<TableEntry> {
        self.entries_with(self.default_rhos())
    }

    /// Like [`Figure::entries`] with a custom `rho` range. The range is
    /// ignored by the `k` sweep.
    pub fn entries_with(self, rhos: Option<core::ops::RangeInclusive<usize>>) -> Vec<TableEntry> {
        let (n, t, z_s, z_q) = self.setting();
        match (self, rhos) {
            (Figure::StarDimension, _) => star_k_sweep(n, t, z_s, z_q),
            (_, Some(rhos)) => rho_sweep(n, t, z_s, z_q, rhos),
            (_, None) => self.entries(),
        }
    }
}

/// Nearest `f64` to a rational, for display only.
pub fn to_f64(r: &Rational) -> f64 {
    let (n, d) = (*r.numer(), *r.denom());
    let whole = n.div_euclid(d);
    let rest = n.rem_euclid(d);
    whole as f64 + rest as f64 / d as f64
}

/// `1 / R_share + 1 / R_PIR`, the cost identity every scheme satisfies.
pub fn cost_from_rates(sharing_rate: &Rational, pir_rate: &Rational) -> Option<Rational> {
    if sharing_rate.is_zero() || pir_rate.is_zero() {
        return None;
    }
    Some(Rational::one() / sharing_rate + Rational::one() / pir_rate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn ours_examples() {
        assert_eq!(sharing_rate_ours(3, 1, 1, 10).unwrap(), q(1, 60));
        assert_eq!(sharing_rate_ours(10, 1, 1, 10).unwrap(), q(1, 200));
        for rho in 3..12 {
            assert_eq!(sharing_rate_ours(rho, 1, rho - 2, 1).unwrap(), q(1, (rho * (rho - 1)) as i128));
        }
        assert_eq!(pir_rate_ours(10, 1, 1, 10).unwrap(), q(9, 20));
        assert_eq!(pir_rate_ours(3, 1, 1, 10).unwrap(), q(1, 10));
        assert_eq!(total_cost_ours(10, 10, 10, 1, 1).unwrap(), q(1820, 9));
        assert_eq!(total_cost_ours(10, 10, 3, 1, 1).unwrap(), q(70, 1));
        assert_eq!(total_cost_ours(100, 20, 18, 5, 5).unwrap(), q(12440, 9));
    }

    #[test]
    fn ours_rate_approaches_half() {
        let n = 1_000_000usize;
        let r = pir_rate_ours(n, 1, 1, n).unwrap() / q(n as i128, 2 * n as i128);
        assert!((to_f64(&r) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn gxstpir_examples() {
        assert_eq!(total_cost_gxstpir(10, 10, 5, 1, 1).unwrap(), q(610, 3));
        assert_eq!(total_cost_gxstpir(10, 10, 10, 1, 1).unwrap(), q(3605, 4));
        assert!(matches!(total_cost_gxstpir(10, 10, 2, 1, 1), Err(AnalysisError::Pole(_))));
        assert_eq!(pir_rate_gxstpir(10, 1, 1, 10).unwrap(), q(4, 5));
    }

    #[test]
    fn star_examples() {
        assert_eq!(total_cost_star(10, 10, 1, 1, 9).unwrap(), q(495, 4));
        // k = z_s + 1 = 2 at n = 4, T = 1, z = 1: 12/1 + 8/(1 * 2)
        assert_eq!(total_cost_star(4, 1, 1, 1, 2).unwrap(), q(16, 1));
        assert_eq!(sharing_rate_star(10, 10, 1, 1, 9).unwrap(), q(8, 900));
        assert_eq!(pir_rate_star(10, 1, 1, 9).unwrap(), q(8, 90));
        assert!(matches!(total_cost_star(10, 10, 1, 1, 10), Err(AnalysisError::KOutOfRange { .. })));
        assert!(matches!(total_cost_star(10, 10, 1, 1, 1), Err(AnalysisError::KOutOfRange { .. })));
    }

    #[test]
    fn stationary_point_small() {
        let p = StationaryPoint::new(10, 10, 1, 1).unwrap();
        // (9000 - sqrt(811000)) / 890
        assert_eq!((p.floor(), p.ceil()), (9, 10));
        assert!((p.to_f64() - 9.100_5).abs() < 1e-4, "{}", p.to_f64());
        assert_eq!(optimal_kc(10, 10, 1, 1).unwrap(), (9, q(495, 4)));
    }

    #[test]
    fn stationary_point_large() {
        let p = StationaryPoint::new(100, 20, 5, 5).unwrap();
        assert_eq!((p.floor(), p.ceil()), (93, 94));
        let (k, cost) = optimal_kc(100, 20, 5, 5).unwrap();
        assert_eq!(k, 94);
        assert!(cost < total_cost_star(100, 20, 5, 5, 95).unwrap());
    }

    #[test]
    fn optimum_matches_exhaustive_scan() {
        for n in 2usize..60 {
            for t in 1..6 {
                for z_s in 1..4 {
                    for z_q in 1..4 {
                        if z_s + 1 > n.saturating_sub(z_q) || t * (n - 1) <= 1 {
                            continue;
                        }
                        let (k, cost) = optimal_kc(n, t, z_s, z_q).unwrap();
                        let best = (z_s + 1..=n - z_q)
                            .map(|k| total_cost_star(n, t, z_s, z_q, k).unwrap())
                            .min()
                            .unwrap();
                        assert_eq!(cost, best, "n={n} T={t} z_s={z_s} z_q={z_q} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn exact_floor_on_perfect_squares() {
        // n = 2, T = 2: c1 = 2, c2 = 4, D = 64 - 2 (16 + 4) = 24; with z_q = 1, z_s = 0
        // handled generally; probe the adjustment loop on random inputs instead
        for n in 3..40 {
            for t in 1..8 {
                if let Ok(p) = StationaryPoint::new(n, t, 1, 1) {
                    let f = p.floor();
                    assert!(p.at_least(f) && !p.at_least(f + 1));
                    assert!((f as f64) <= p.to_f64() + 1e-9 && p.to_f64() < (f + 1) as f64 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn costs_equal_inverse_rate_sums() {
        let cfg = RateConfig {
            n: 10,
            objectives: 10,
            rho: 10,
            z_s: 1,
            z_q: 1,
        };
        let table = rate_table(&[cfg]);
        assert_eq!(table.len(), 3);
        for e in &table {
            let r = e.report().unwrap();
            assert_eq!(cost_from_rates(&r.sharing_rate, &r.pir_rate).unwrap(), r.total_cost);
        }
        let single = rate_table(&[RateConfig { objectives: 1, rho: 3, ..cfg }]);
        assert_eq!(single.len(), 2);
        assert_eq!(single[0].report().unwrap().sharing_rate, q(1, 6));
    }

    #[test]
    fn sweep_sizes() {
        let fig3 = Figure::CostSmall.entries();
        assert_eq!(fig3.iter().filter(|e| e.scheme() == Scheme::Ours).count(), 8);
        assert_eq!(fig3.iter().filter(|e| e.scheme() == Scheme::Gxstpir).count(), 8);
        assert_eq!(fig3.iter().filter(|e| e.scheme() == Scheme::StarProduct).count(), 1);
        assert!(fig3.iter().all(|e| e.report().is_some()));
        assert!(matches!(
            rho_sweep(10, 10, 1, 1, 2..=3)[2],
            TableEntry::Infeasible { rho: 2, .. }
        ));
        assert_eq!(Figure::CostLarge.entries().len(), 181);
        assert_eq!(Figure::StarDimension.entries().len(), 8);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = rho_sweep(10, 10, 1, 1, 5..=4);
        assert!(empty.is_empty());
    }
}
