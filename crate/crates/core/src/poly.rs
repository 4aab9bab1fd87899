//! Polynomials with vector coefficients over `F_q^c`, and the dual GRS
//! multipliers that cancel interference between objectives.
//!
//! Products of vectors are componentwise throughout.

use alloc::vec::Vec;

use thiserror::Error;

use crate::assignment::{AssignmentError, TaskAssignment};
use crate::field::{FieldElement, FieldError, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("a polynomial needs at least one coefficient")]
    NoCoefficients,
    #[error("coefficient {index} has width {found}, expected {expected}")]
    WidthMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("duplicate interpolation point {0}")]
    DuplicatePoint(u64),
    #[error("client {client} has no evaluation point ({available} available)")]
    MissingPoint { client: usize, available: usize },
    #[error("clients {first} and {second} share an evaluation point")]
    RepeatedEvaluationPoint { first: usize, second: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

/// `sum_u coeffs[u] * x^u` with every coefficient a vector of the same width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecPolynomial {
    field: PrimeField,
    width: usize,
    coeffs: Vec<Vec<FieldElement>>,
}

impl VecPolynomial {
    pub fn new(field: PrimeField, coeffs: Vec<Vec<FieldElement>>) -> Result<Self, PolyError> {
        let width = coeffs.first().ok_or(PolyError::NoCoefficients)?.len();
        for (index, c) in coeffs.iter().enumerate() {
            if c.len() != width {
                return Err(PolyError::WidthMismatch {
                    index,
                    found: c.len(),
                    expected: width,
                });
            }
            if let Some(bad) = c.iter().find(|x| !field.contains(**x)) {
                return Err(FieldError::FieldMismatch {
                    left: field.modulus(),
                    right: bad.modulus(),
                }
                .into());
            }
        }
        Ok(Self {
            field,
            width,
            coeffs,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Formal degree, `len(coeffs) - 1`; trailing zero coefficients count.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Vec<FieldElement>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Vec<FieldElement>> {
        self.coeffs
    }

    /// Horner evaluation, componentwise.
    pub fn evaluate(&self, x: FieldElement) -> Result<Vec<FieldElement>, PolyError> {
        if !self.field.contains(x) {
            return Err(FieldError::FieldMismatch {
                left: self.field.modulus(),
                right: x.modulus(),
            }
            .into());
        }
        let mut acc = self.field.zeros(self.width);
        for c in self.coeffs.iter().rev() {
            for (a, &ci) in acc.iter_mut().zip(c) {
                *a = *a * x + ci;
            }
        }
        Ok(acc)
    }
}

/// Lagrange interpolation through `points`; the result has formal degree
/// `points.len() - 1`.
pub fn interpolate(
    field: PrimeField,
    points: &[(FieldElement, Vec<FieldElement>)],
) -> Result<VecPolynomial, PolyError> {
    let width = points.first().ok_or(PolyError::NoCoefficients)?.1.len();
    let k = points.len();
    for (a, (xa, ya)) in points.iter().enumerate() {
        if ya.len() != width {
            return Err(PolyError::WidthMismatch {
                index: a,
                found: ya.len(),
                expected: width,
            });
        }
        if points[..a].iter().any(|(xb, _)| xb == xa) {
            return Err(PolyError::DuplicatePoint(xa.value()));
        }
    }
    let mut coeffs = alloc::vec![field.zeros(width); k];
    for (a, (xa, ya)) in points.iter().enumerate() {
        // numerator prod_{b != a} (x - x_b), built one linear factor at a time
        let mut basis = alloc::vec![field.one()];
        let mut denom = field.one();
        for (b, (xb, _)) in points.iter().enumerate() {
            if a == b {
                continue;
            }
            let mut next = field.zeros(basis.len() + 1);
            for (d, &c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * *xb;
            }
            basis = next;
            denom *= *xa - *xb;
        }
        let scale = denom.inv()?;
        for (d, &c) in basis.iter().enumerate() {
            let w = c * scale;
            for (out, &y) in coeffs[d].iter_mut().zip(ya) {
                *out += w * y;
            }
        }
    }
    VecPolynomial::new(field, coeffs)
}

/// Dual GRS multipliers `nu_{t,i}` for the clients of one objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCoefficients {
    objective: usize,
    values: Vec<(usize, FieldElement)>,
}

impl DualCoefficients {
    /// Builds multipliers for an arbitrary client set. The protocol always
    /// uses [`dual_coefficients`]; this exists for deliberately broken
    /// variants in audits and tests.
    pub fn for_clients(
        objective: usize,
        clients: &[usize],
        pts: &[FieldElement],
    ) -> Result<Self, PolyError> {
        let point = |i: usize| {
            pts.get(i).copied().ok_or(PolyError::MissingPoint {
                client: i,
                available: pts.len(),
            })
        };
        let mut values = Vec::with_capacity(clients.len());
        for &i in clients {
            let xi = point(i)?;
            let mut prod = xi.pow(0);
            for &other in clients {
                if other == i {
                    continue;
                }
                let diff = xi - point(other)?;
                if diff.is_zero() {
                    return Err(PolyError::RepeatedEvaluationPoint {
                        first: i,
                        second: other,
                    });
                }
                prod *= diff;
            }
            values.push((i, prod.inv()?));
        }
        values.sort_by_key(|(i, _)| *i);
        Ok(Self { objective, values })
    }

    pub fn objective(&self) -> usize {
        self.objective
    }

    pub fn values(&self) -> &[(usize, FieldElement)] {
        &self.values
    }

    pub fn get(&self, client: usize) -> Option<FieldElement> {
        self.values
            .binary_search_by_key(&client, |(i, _)| *i)
            .ok()
            .map(|k| self.values[k].1)
    }

    /// Overwrites one multiplier; used to build negative controls.
    pub fn perturb(&mut self, client: usize, delta: FieldElement) -> bool {
        match self.values.iter_mut().find(|(i, _)| *i == client) {
            Some((_, v)) => {
                *v += delta;
                true
            }
            None => false,
        }
    }
}

/// `nu_{t,i} = (prod_{i1 in G(e_t), i1 != i} (alpha_i - alpha_i1))^{-1}` for every `i in G(e_t)`.
pub fn dual_coefficients(
    objective: usize,
    assignment: &TaskAssignment,
    pts: &[FieldElement],
) -> Result<DualCoefficients, PolyError> {
    let clients = assignment.incident_clients(objective)?;
    DualCoefficients::for_clients(objective, clients, pts)
}

/// Checks `sum_{i in G(e_t)} nu_{t,i} alpha_i^zeta = 0` for `0 <= zeta <= rho - 2`.
pub fn dual_annihilation_check(dc: &DualCoefficients, pts: &[FieldElement], rho: usize) -> bool {
    let Some(&(_, first)) = dc.values.first() else {
        return true;
    };
    let zero = first.zero_like();
    for zeta in 0..rho.saturating_sub(1) {
        let mut sum = zero;
        for &(i, nu) in &dc.values {
            let Some(&x) = pts.get(i) else {
                return false;
            };
            sum += nu * x.pow(zeta as u64);
        }
        if !sum.is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::{build_symmetric_assignment, OffsetRule};
    use alloc::vec;
    use proptest::prelude::*;

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn vecs(f: PrimeField, raw: &[&[u64]]) -> Vec<Vec<FieldElement>> {
        raw.iter()
            .map(|c| c.iter().map(|&v| f.element(v)).collect())
            .collect()
    }

    #[test]
    fn evaluate_examples() {
        let f5 = gf(5);
        let p = VecPolynomial::new(f5, vecs(f5, &[&[3], &[0]])).unwrap();
        assert_eq!(p.evaluate(f5.element(4)).unwrap(), [f5.element(3)]);
        let p = VecPolynomial::new(f5, vecs(f5, &[&[1], &[1]])).unwrap();
        assert_eq!(p.evaluate(f5.element(2)).unwrap(), [f5.element(3)]);
        let f7 = gf(7);
        let p = VecPolynomial::new(f7, vecs(f7, &[&[2], &[3], &[1]])).unwrap();
        // direct sum 2 + 3*3 + 1*9 = 20 = 6 mod 7
        assert_eq!(p.evaluate(f7.element(3)).unwrap(), [f7.element(6)]);
        assert!(p.evaluate(gf(5).element(1)).is_err());
    }

    #[test]
    fn constructor_rejects_ragged_coefficients() {
        let f = gf(7);
        assert!(matches!(
            VecPolynomial::new(f, vecs(f, &[&[1, 2], &[3]])),
            Err(PolyError::WidthMismatch { index: 1, .. })
        ));
        assert_eq!(VecPolynomial::new(f, vec![]), Err(PolyError::NoCoefficients));
    }

    #[test]
    fn interpolate_examples() {
        let f7 = gf(7);
        let constant = [
            (f7.element(1), vec![f7.element(4)]),
            (f7.element(5), vec![f7.element(4)]),
        ];
        let p = interpolate(f7, &constant).unwrap();
        assert_eq!(p.coeffs(), vecs(f7, &[&[4], &[0]]).as_slice());

        let line = [
            (f7.element(1), vec![f7.element(2)]),
            (f7.element(2), vec![f7.element(4)]),
            (f7.element(3), vec![f7.element(6)]),
        ];
        let p = interpolate(f7, &line).unwrap();
        assert_eq!(p.coeffs(), vecs(f7, &[&[0], &[2], &[0]]).as_slice());

        let dup = [
            (f7.element(1), vec![f7.element(2)]),
            (f7.element(1), vec![f7.element(3)]),
        ];
        assert_eq!(interpolate(f7, &dup), Err(PolyError::DuplicatePoint(1)));
    }

    #[test]
    fn dual_coefficient_examples() {
        let f7 = gf(7);
        let pts = f7.eval_points(2).unwrap(); // (3, 2)
        let a = build_symmetric_assignment(2, 1, 2, OffsetRule::Cyclic).unwrap();
        let dc = dual_coefficients(0, &a, &pts).unwrap();
        assert_eq!(dc.get(0).unwrap().value(), 1);
        assert_eq!(dc.get(1).unwrap().value(), 6);
        assert_eq!((dc.get(0).unwrap() + dc.get(1).unwrap()).value(), 0);
        assert!(dual_annihilation_check(&dc, &pts, 2));
    }

    #[test]
    fn rho_three_annihilates_two_powers() {
        let f11 = gf(11);
        let pts = f11.eval_points(3).unwrap();
        let a = build_symmetric_assignment(3, 1, 3, OffsetRule::Cyclic).unwrap();
        let dc = dual_coefficients(0, &a, &pts).unwrap();
        // brute-force three-term sums
        for zeta in 0..2u64 {
            let sum: u64 = (0..3)
                .map(|i| dc.get(i).unwrap().value() * pts[i].pow(zeta).value())
                .sum();
            assert_eq!(sum % 11, 0);
        }
        let top: u64 = (0..3)
            .map(|i| dc.get(i).unwrap().value() * pts[i].pow(2).value())
            .sum();
        assert_ne!(top % 11, 0);
    }

    #[test]
    fn perturbed_multiplier_breaks_annihilation() {
        let f = gf(13);
        let pts = f.eval_points(4).unwrap();
        let a = build_symmetric_assignment(4, 1, 4, OffsetRule::Cyclic).unwrap();
        let mut dc = dual_coefficients(0, &a, &pts).unwrap();
        assert!(dual_annihilation_check(&dc, &pts, 4));
        assert!(dc.perturb(2, f.one()));
        assert!(!dual_annihilation_check(&dc, &pts, 4));
    }

    #[test]
    fn repeated_points_are_rejected() {
        let f = gf(7);
        let pts = vec![f.element(3), f.element(3)];
        let a = build_symmetric_assignment(2, 1, 2, OffsetRule::Cyclic).unwrap();
        assert_eq!(
            dual_coefficients(0, &a, &pts),
            Err(PolyError::RepeatedEvaluationPoint { first: 0, second: 1 })
        );
    }

    #[test]
    fn annihilation_holds_exhaustively() {
        for q in (3..=101).filter(|&q| crate::field::is_prime(q)) {
            let f = gf(q);
            let n = ((q - 1) as usize).min(10);
            let pts = f.eval_points(n).unwrap();
            for rho in 1..=n.min(8) {
                for t_count in 1..=3 {
                    for rule in [OffsetRule::Cyclic, OffsetRule::Block] {
                        let a = build_symmetric_assignment(n, t_count, rho, rule).unwrap();
                        for t in 0..t_count {
                            let dc = dual_coefficients(t, &a, &pts).unwrap();
                            assert!(dc.values().iter().all(|(_, v)| !v.is_zero()));
                            assert!(dual_annihilation_check(&dc, &pts, rho), "q={q} rho={rho}");
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn interpolation_round_trip(
            raw in proptest::collection::vec(proptest::collection::vec(0u64..97, 3), 1..8),
            offset in 1u64..40,
        ) {
            let f = gf(97);
            let p = VecPolynomial::new(f, vecs(f, &raw.iter().map(Vec::as_slice).collect::<Vec<_>>())).unwrap();
            let points: Vec<_> = (0..raw.len() as u64)
                .map(|k| {
                    let x = f.element(offset + k);
                    (x, p.evaluate(x).unwrap())
                })
                .collect();
            prop_assert_eq!(interpolate(f, &points).unwrap(), p);
        }
    }
}
