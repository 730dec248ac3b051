//! System availability for the six case-study topologies.
//!
//! Each case study fixes a system structure over m subsystems: CS1 and CS4
//! are pure series systems (5 and 10 units), CS2 is a series-parallel
//! arrangement, CS3 is the classic five-unit bridge, and CS5/CS6 are larger
//! complex networks (10 and 15 units). `system_availability` evaluates the
//! closed-form multilinear polynomial of a topology; `enumeration_availability`
//! recomputes the same value by summing over all 2^m up/down combinations of
//! the subsystems, which certifies the polynomial transcription.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(
        "transcription error: structure polynomial evaluated to {value} at vertex {vertex:?}"
    )]
    Transcription { value: f64, vertex: Vec<bool> },
}

/// Identifier of one of the six benchmark topologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseStudyId {
    #[serde(rename = "CS1")]
    Cs1,
    #[serde(rename = "CS2")]
    Cs2,
    #[serde(rename = "CS3")]
    Cs3,
    #[serde(rename = "CS4")]
    Cs4,
    #[serde(rename = "CS5")]
    Cs5,
    #[serde(rename = "CS6")]
    Cs6,
}

impl CaseStudyId {
    pub const ALL: [CaseStudyId; 6] = [
        CaseStudyId::Cs1,
        CaseStudyId::Cs2,
        CaseStudyId::Cs3,
        CaseStudyId::Cs4,
        CaseStudyId::Cs5,
        CaseStudyId::Cs6,
    ];

    /// Number of subsystems m in this topology.
    pub fn subsystem_count(self) -> usize {
        match self {
            CaseStudyId::Cs1 | CaseStudyId::Cs2 | CaseStudyId::Cs3 => 5,
            CaseStudyId::Cs4 | CaseStudyId::Cs5 => 10,
            CaseStudyId::Cs6 => 15,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseStudyId::Cs1 => "CS1",
            CaseStudyId::Cs2 => "CS2",
            CaseStudyId::Cs3 => "CS3",
            CaseStudyId::Cs4 => "CS4",
            CaseStudyId::Cs5 => "CS5",
            CaseStudyId::Cs6 => "CS6",
        }
    }
}

impl fmt::Display for CaseStudyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseStudyId {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "CS1" => Ok(CaseStudyId::Cs1),
            "CS2" => Ok(CaseStudyId::Cs2),
            "CS3" => Ok(CaseStudyId::Cs3),
            "CS4" => Ok(CaseStudyId::Cs4),
            "CS5" => Ok(CaseStudyId::Cs5),
            "CS6" => Ok(CaseStudyId::Cs6),
            other => Err(StructureError::InvalidInput(format!(
                "unknown case study {other:?}"
            ))),
        }
    }
}

/// Per-subsystem availabilities, each in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct AvailabilityVector {
    values: Vec<f64>,
}

impl AvailabilityVector {
    pub fn new(values: Vec<f64>) -> Result<Self, StructureError> {
        for (i, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                return Err(StructureError::InvalidInput(format!(
                    "availability {v} of subsystem {i} outside [0, 1]"
                )));
            }
        }
        Ok(AvailabilityVector { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn availability(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn unavailability(&self, i: usize) -> f64 {
        1.0 - self.values[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// System availability from the closed-form polynomial of the topology.
pub fn system_availability(
    case: CaseStudyId,
    av: &AvailabilityVector,
) -> Result<f64, StructureError> {
    if av.len() != case.subsystem_count() {
        return Err(StructureError::InvalidInput(format!(
            "{case} expects {} availabilities, got {}",
            case.subsystem_count(),
            av.len()
        )));
    }
    Ok(polynomial(case, av.as_slice()))
}

/// Whether the system functions when exactly the subsystems flagged `true`
/// function. Evaluates the topology polynomial at the 0/1 vertex; any value
/// that is not 0 or 1 within 1e-9 signals a mistyped polynomial.
pub fn structure_predicate(case: CaseStudyId, x: &[bool]) -> Result<bool, StructureError> {
    if x.len() != case.subsystem_count() {
        return Err(StructureError::InvalidInput(format!(
            "{case} expects {} subsystem flags, got {}",
            case.subsystem_count(),
            x.len()
        )));
    }
    let point: Vec<f64> = x.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    let value = polynomial(case, &point);
    if value.abs() <= 1e-9 {
        Ok(false)
    } else if (value - 1.0).abs() <= 1e-9 {
        Ok(true)
    } else {
        Err(StructureError::Transcription {
            value,
            vertex: x.to_vec(),
        })
    }
}

/// System availability by exhaustive enumeration over all 2^m subsystem
/// up/down combinations. Exact for independent subsystems; used as the
/// transcription oracle for `system_availability`.
pub fn enumeration_availability(
    case: CaseStudyId,
    av: &AvailabilityVector,
) -> Result<f64, StructureError> {
    let m = case.subsystem_count();
    if av.len() != m {
        return Err(StructureError::InvalidInput(format!(
            "{case} expects {m} availabilities, got {}",
            av.len()
        )));
    }
    let mut total = 0.0;
    let mut flags = vec![false; m];
    for mask in 0u32..(1u32 << m) {
        for (i, flag) in flags.iter_mut().enumerate() {
            *flag = mask & (1 << i) != 0;
        }
        if structure_predicate(case, &flags)? {
            let mut prob = 1.0;
            for i in 0..m {
                prob *= if flags[i] {
                    av.availability(i)
                } else {
                    av.unavailability(i)
                };
            }
            total += prob;
        }
    }
    Ok(total)
}

fn polynomial(case: CaseStudyId, a: &[f64]) -> f64 {
    match case {
        CaseStudyId::Cs1 => a.iter().product(),
        CaseStudyId::Cs2 => cs2(a),
        CaseStudyId::Cs3 => cs3(a),
        CaseStudyId::Cs4 => a.iter().product(),
        CaseStudyId::Cs5 => cs5(a),
        CaseStudyId::Cs6 => cs6(a),
    }
}

/// Five-unit series-parallel system: (1 and 2) in parallel with
/// ((3 or 4) and 5).
fn cs2(v: &[f64]) -> f64 {
    let (a1, a2, a3, a4, a5) = (v[0], v[1], v[2], v[3], v[4]);
    1.0 - (1.0 - a1 * a2) * (1.0 - (a3 + a4 - a3 * a4) * a5)
}

/// Five-unit bridge: paths {1,2}, {3,4}, {1,4,5}, {2,3,5} expanded by
/// inclusion-exclusion.
fn cs3(v: &[f64]) -> f64 {
    let (a1, a2, a3, a4, a5) = (v[0], v[1], v[2], v[3], v[4]);
    a1 * a2 + a3 * a4 + a1 * a4 * a5 + a2 * a3 * a5
        - a1 * a2 * a3 * a4
        - a1 * a2 * a3 * a5
        - a1 * a2 * a4 * a5
        - a1 * a3 * a4 * a5
        - a2 * a3 * a4 * a5
        + 2.0 * a1 * a2 * a3 * a4 * a5
}

/// Ten-unit complex network, written as a sum of disjoint path events.
fn cs5(v: &[f64]) -> f64 {
    let (a1, a2, a3, a4, a5) = (v[0], v[1], v[2], v[3], v[4]);
    let (a6, a7, a8, a9, a10) = (v[5], v[6], v[7], v[8], v[9]);
    let (u1, u2, u3, u4, u5) = (1.0 - a1, 1.0 - a2, 1.0 - a3, 1.0 - a4, 1.0 - a5);
    let (u6, u7, u8, u9, u10) = (1.0 - a6, 1.0 - a7, 1.0 - a8, 1.0 - a9, 1.0 - a10);

    a1 * a2 * a3 * a4
        + a1 * a2 * a6 * a10 * (u3 + a3 * u4)
        + a1 * a5 * a9 * a10 * (u2 + a2 * u3 * u6 + a2 * a3 * u4 * u6)
        + a7 * a8 * a9 * a10 * (u1 + a1 * u2 * u5 + a1 * a2 * u3 * u5 * u6 + a1 * a2 * a3 * u5 * u6 * u4)
        + a2 * a3 * a4 * a5 * a7 * a8 * u1 * (u9 + a9 * u10)
        + u1 * a3 * a4 * a6 * a7 * a8 * a9 * u10 * (u2 + a2 * u5)
        + a1 * u2 * a3 * a4 * a6 * a7 * a8 * a9 * u10
        + a1 * u2 * a3 * a4 * a5 * a6 * a9 * u10 * (u7 + a7 * u8)
        + u1 * a2 * a5 * a6 * a7 * a8 * u9 * a10 * (u3 + a3 * u4)
}

/// Fifteen-unit complex network, written as a sum of disjoint path events.
fn cs6(v: &[f64]) -> f64 {
    let (a1, a2, a3, a4, a5) = (v[0], v[1], v[2], v[3], v[4]);
    let (a6, a7, a8, a9, a10) = (v[5], v[6], v[7], v[8], v[9]);
    let (a11, a12, a13, a14, a15) = (v[10], v[11], v[12], v[13], v[14]);
    let (u1, u2, u3, u4, u5) = (1.0 - a1, 1.0 - a2, 1.0 - a3, 1.0 - a4, 1.0 - a5);
    let (u6, u7, u9, u10) = (1.0 - a6, 1.0 - a7, 1.0 - a9, 1.0 - a10);
    let (u11, u12, u13, u14, u15) = (1.0 - a11, 1.0 - a12, 1.0 - a13, 1.0 - a14, 1.0 - a15);

    a1 * a2 * a3 * a4 * a5 * a6
        + a9 * a10 * a11 * a12 * a13 * a14 * a15
            * (u1 + a1 * u2 + a1 * a2 * u3 + a1 * a2 * a3 * u4 + a1 * a2 * a3 * a4 * u5
                + a1 * a2 * a3 * a4 * a5 * u6)
        + a3 * a4 * a5 * a6 * a7 * a9 * a10
            * (u11 + a11 * u12 + a11 * a12 * u13 + a11 * a12 * a13 * u14
                + a11 * a12 * a13 * a14 * u15)
            * (u1 + a1 * u2)
        + ((u1 + a1 * u2) * (u3 + a3 * u4 + a3 * a4 * u7) + a1 * a2 * u7 * (u3 + a3 * u4))
            * (u13 + a13 * u14 + a13 * a14 * u15)
            * a5 * a6 * a8 * a9 * a10 * a11 * a12
        + a1 * a2 * a5 * a6 * a7 * a8 * a11 * a12
            * (a9 * a10 + u9 + a9 * u10)
            * (u3 + a3 * u4)
            * (u13 + a13 * u14 + a13 * a14 * u15)
        + (u5 + a5 * u6)
            * ((u7 + a7 * u11 + a7 * a11 * u12) * (u9 + a9 * u10) + a9 * a10 * (u11 + a11 * u12))
            * a1 * a2 * a3 * a4 * a8 * a13 * a14 * a15
        + a1 * a2 * a7 * a11 * a12 * a13 * a14 * a15
            * (u9 + a9 * u10)
            * (u3 + a3 * u4 + a3 * a4 * u5 + a3 * a4 * a5 * u6)
        + a3 * a4 * a7 * a8 * a9 * a10 * a13 * a14 * a15
            * (u1 + a1 * u2)
            * (u11 + a11 * u12)
            * (u5 + a5 * u6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_av(rng: &mut ChaCha8Rng, m: usize) -> AvailabilityVector {
        AvailabilityVector::new((0..m).map(|_| rng.gen::<f64>()).collect()).unwrap()
    }

    #[test]
    fn series_examples() {
        let av = AvailabilityVector::new(vec![0.9; 5]).unwrap();
        let a = system_availability(CaseStudyId::Cs1, &av).unwrap();
        assert!((a - 0.59049).abs() < 1e-15);

        let perfect = AvailabilityVector::new(vec![1.0; 5]).unwrap();
        assert_eq!(system_availability(CaseStudyId::Cs1, &perfect).unwrap(), 1.0);
    }

    #[test]
    fn length_mismatch_rejected() {
        let av = AvailabilityVector::new(vec![0.9; 4]).unwrap();
        assert!(system_availability(CaseStudyId::Cs1, &av).is_err());
        assert!(structure_predicate(CaseStudyId::Cs6, &[true; 5]).is_err());
    }

    #[test]
    fn predicate_examples() {
        // Path 1-2 alone carries CS2.
        let x = [true, true, false, false, false];
        assert!(structure_predicate(CaseStudyId::Cs2, &x).unwrap());
        for case in CaseStudyId::ALL {
            let m = case.subsystem_count();
            assert!(!structure_predicate(case, &vec![false; m]).unwrap());
            assert!(structure_predicate(case, &vec![true; m]).unwrap());
        }
    }

    #[test]
    fn vertices_evaluate_to_zero_or_one() {
        for case in CaseStudyId::ALL {
            let m = case.subsystem_count();
            let mut flags = vec![false; m];
            for mask in 0u32..(1u32 << m) {
                for (i, flag) in flags.iter_mut().enumerate() {
                    *flag = mask & (1 << i) != 0;
                }
                structure_predicate(case, &flags).unwrap();
            }
        }
    }

    #[test]
    fn predicate_is_monotone() {
        for case in CaseStudyId::ALL {
            let m = case.subsystem_count();
            let mut flags = vec![false; m];
            for mask in 0u32..(1u32 << m) {
                for (i, flag) in flags.iter_mut().enumerate() {
                    *flag = mask & (1 << i) != 0;
                }
                if !structure_predicate(case, &flags).unwrap() {
                    continue;
                }
                // Flipping any down subsystem up must keep the system up.
                for i in 0..m {
                    if !flags[i] {
                        let mut up = flags.clone();
                        up[i] = true;
                        assert!(
                            structure_predicate(case, &up).unwrap(),
                            "{case}: up-flip of {i} broke a working system"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn polynomial_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for case in CaseStudyId::ALL {
            for _ in 0..200 {
                let av = random_av(&mut rng, case.subsystem_count());
                let poly = system_availability(case, &av).unwrap();
                let enumerated = enumeration_availability(case, &av).unwrap();
                assert!(
                    (poly - enumerated).abs() <= 1e-12,
                    "{case}: {poly} vs {enumerated}"
                );
                assert!((0.0..=1.0).contains(&poly));
            }
        }
    }

    #[test]
    fn enumeration_series_value() {
        let av = AvailabilityVector::new(vec![0.9; 5]).unwrap();
        let a = enumeration_availability(CaseStudyId::Cs1, &av).unwrap();
        assert!((a - 0.59049).abs() < 1e-12);

        let perfect = AvailabilityVector::new(vec![1.0; 15]).unwrap();
        let a6 = enumeration_availability(CaseStudyId::Cs6, &perfect).unwrap();
        assert!((a6 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn availability_nondecreasing_per_subsystem() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for case in CaseStudyId::ALL {
            let m = case.subsystem_count();
            for _ in 0..20 {
                let base = random_av(&mut rng, m);
                let a0 = system_availability(case, &base).unwrap();
                for i in 0..m {
                    let mut bumped = base.as_slice().to_vec();
                    bumped[i] = (bumped[i] + 0.1).min(1.0);
                    let av = AvailabilityVector::new(bumped).unwrap();
                    let a1 = system_availability(case, &av).unwrap();
                    assert!(a1 >= a0 - 1e-12, "{case}: raising A_{i} lowered the system");
                }
            }
        }
    }

    #[test]
    fn out_of_range_availability_rejected() {
        assert!(AvailabilityVector::new(vec![0.5, 1.2]).is_err());
        assert!(AvailabilityVector::new(vec![-0.1]).is_err());
    }
}
