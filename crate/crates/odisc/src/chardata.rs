//! Character-theoretic data model: ordinary and Brauer character records,
//! decomposition tables, orthogonal stability, and the modular discriminant
//! combiner.
//!
//! Brauer characters are opaque records (degree, indicator, field degree,
//! duality); character values are never evaluated. The combination formula
//! reduces to a parity rule in the residual extension degree k/gcd(k, f'),
//! which the tests validate wholesale against the brute-force form oracle in
//! `quadform`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadform::OType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChError {
    #[error("character {0} has no row in the decomposition table for ideal {1}")]
    MissingRow(String, String),
    #[error("row for {0} references unknown Brauer character {1}")]
    UnknownBrauer(String, String),
    #[error("degree mismatch for {0}: constituents sum to {1}, character degree is {2}")]
    DegreeMismatch(String, u64, u64),
    #[error("constituent multiset is not self-dual at {0}")]
    NotSelfDual(String),
    #[error("indicator-o constituent {0} has no declared dual partner")]
    UnpairedO(String),
    #[error("dual pairing of {0} and {1} has mismatched multiplicities")]
    PairMultiplicity(String, String),
    #[error("indicator-minus constituent {0} occurs with odd multiplicity")]
    OddMinusMultiplicity(String),
    #[error("constituents are not orthogonally stable (witness {0})")]
    NotStable(String),
    #[error("no known orthogonal discriminant for constituent {0}")]
    MissingOType(String),
    #[error("dual field ratio of {0} must be 1 or 2 and divide its field degree")]
    BadFieldRatio(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Indicator {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "o")]
    O,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefectInfo {
    pub defect: u32,
    #[serde(default)]
    pub exceptional: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrdinaryCharacter {
    pub id: String,
    pub degree: u64,
    pub indicator: Indicator,
    /// Label of the character field among the bundle's number fields.
    pub field: String,
    #[serde(default)]
    pub galois_orbit: Vec<String>,
    /// Block data per rational prime, where known.
    #[serde(default)]
    pub defect: BTreeMap<u64, DefectInfo>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BrauerCharacter {
    pub id: String,
    pub degree: u64,
    pub indicator: Indicator,
    /// k with character field GF(p^k); required input (reduction can shrink
    /// the field, so it is not derivable here).
    pub field_degree: usize,
    #[serde(default)]
    pub dual: Option<String>,
    #[serde(default)]
    pub trivial: bool,
    /// For indicator-o characters: [GF(p^f_psi) : GF(p^f')] with f' the field
    /// degree of psi + psi-dual; 1 or 2.
    #[serde(default = "default_ratio")]
    pub dual_field_ratio: u8,
}

fn default_ratio() -> u8 {
    1
}

/// Decomposition matrix at one prime ideal: rows are ordinary characters,
/// columns Brauer characters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub ideal: String,
    pub brauer: Vec<BrauerCharacter>,
    pub matrix: BTreeMap<String, BTreeMap<String, u32>>,
}

impl DecompositionTable {
    pub fn brauer_by_id(&self, id: &str) -> Option<&BrauerCharacter> {
        self.brauer.iter().find(|b| b.id == id)
    }
}

/// The reduction of an ordinary character mod the table's ideal, as a
/// Brauer-constituent multiset. Validates degree bookkeeping.
pub fn reduce<'a>(
    ord: &OrdinaryCharacter,
    table: &'a DecompositionTable,
) -> Result<Vec<(&'a BrauerCharacter, u32)>, ChError> {
    let row = table
        .matrix
        .get(&ord.id)
        .ok_or_else(|| ChError::MissingRow(ord.id.clone(), table.ideal.clone()))?;
    let mut out = Vec::new();
    let mut total = 0u64;
    for (bid, &mult) in row {
        if mult == 0 {
            continue;
        }
        let b = table
            .brauer_by_id(bid)
            .ok_or_else(|| ChError::UnknownBrauer(ord.id.clone(), bid.clone()))?;
        total += b.degree * mult as u64;
        out.push((b, mult));
    }
    if total != ord.degree {
        return Err(ChError::DegreeMismatch(ord.id.clone(), total, ord.degree));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    Stable,
    /// Offending indicator-+ constituent of odd degree.
    Unstable { witness: String },
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

fn check_self_dual(constituents: &[(&BrauerCharacter, u32)]) -> Result<(), ChError> {
    let mult = |id: &str| -> u32 {
        constituents
            .iter()
            .find(|(b, _)| b.id == id)
            .map(|&(_, m)| m)
            .unwrap_or(0)
    };
    for (b, m) in constituents {
        if let Some(dual) = &b.dual {
            if mult(dual) != *m {
                return Err(ChError::NotSelfDual(b.id.clone()));
            }
        }
    }
    Ok(())
}

/// A character is orthogonally stable iff no indicator-+ constituent has odd
/// degree. Requires the multiset to be self-dual (the character must be
/// orthogonal at all).
pub fn is_orthogonally_stable(
    constituents: &[(&BrauerCharacter, u32)],
) -> Result<Stability, ChError> {
    check_self_dual(constituents)?;
    for (b, _) in constituents {
        if b.indicator == Indicator::Plus && b.degree % 2 == 1 {
            return Ok(Stability::Unstable {
                witness: b.id.clone(),
            });
        }
    }
    Ok(Stability::Stable)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SummandKind {
    /// An absolutely irreducible indicator-+ constituent of even degree.
    PlusIrreducible { otype: Option<OType> },
    /// psi + psi-dual for an indicator-o constituent of degree psi_degree.
    DualPair { pair_field_ratio: u8, psi_degree: u64 },
    /// 2 psi for an indicator-minus constituent of degree psi_degree.
    MinusDoubled { psi_degree: u64 },
}

/// An orthogonally simple summand of a stable reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthSummand {
    pub kind: SummandKind,
    /// Total degree of the summand character.
    pub degree: u64,
    /// f': degree of the summand's character field GF(p^f').
    pub field_degree: usize,
    pub brauer_id: String,
}

/// Split a stable constituent multiset into orthogonally simple summands:
/// + constituents individually, o constituents with their declared dual
/// partners, - constituents doubled. Known discriminants of the + summands
/// are filled in from `discs`.
pub fn split_orthogonally_simple(
    constituents: &[(&BrauerCharacter, u32)],
    discs: &BTreeMap<String, OType>,
) -> Result<Vec<OrthSummand>, ChError> {
    match is_orthogonally_stable(constituents)? {
        Stability::Stable => {}
        Stability::Unstable { witness } => return Err(ChError::NotStable(witness)),
    }
    let mut out = Vec::new();
    let mut paired: Vec<&str> = Vec::new();
    for (b, m) in constituents {
        match b.indicator {
            Indicator::Plus => {
                for _ in 0..*m {
                    out.push(OrthSummand {
                        kind: SummandKind::PlusIrreducible {
                            otype: discs.get(&b.id).copied(),
                        },
                        degree: b.degree,
                        field_degree: b.field_degree,
                        brauer_id: b.id.clone(),
                    });
                }
            }
            Indicator::Minus => {
                if m % 2 != 0 {
                    return Err(ChError::OddMinusMultiplicity(b.id.clone()));
                }
                for _ in 0..m / 2 {
                    out.push(OrthSummand {
                        kind: SummandKind::MinusDoubled {
                            psi_degree: b.degree,
                        },
                        degree: 2 * b.degree,
                        field_degree: b.field_degree,
                        brauer_id: b.id.clone(),
                    });
                }
            }
            Indicator::O => {
                if paired.contains(&b.id.as_str()) {
                    continue;
                }
                let dual_id = b.dual.as_ref().ok_or_else(|| ChError::UnpairedO(b.id.clone()))?;
                if dual_id == &b.id {
                    return Err(ChError::UnpairedO(b.id.clone()));
                }
                let (dualb, dual_m) = constituents
                    .iter()
                    .find(|(x, _)| &x.id == dual_id)
                    .ok_or_else(|| ChError::UnpairedO(b.id.clone()))?;
                if dual_m != m {
                    return Err(ChError::PairMultiplicity(b.id.clone(), dual_id.clone()));
                }
                let ratio = b.dual_field_ratio;
                if !(ratio == 1 || ratio == 2) || b.field_degree % ratio as usize != 0 {
                    return Err(ChError::BadFieldRatio(b.id.clone()));
                }
                if dualb.degree != b.degree {
                    return Err(ChError::PairMultiplicity(b.id.clone(), dual_id.clone()));
                }
                paired.push(b.id.as_str());
                paired.push(dual_id.as_str());
                for _ in 0..*m {
                    out.push(OrthSummand {
                        kind: SummandKind::DualPair {
                            pair_field_ratio: ratio,
                            psi_degree: b.degree,
                        },
                        degree: 2 * b.degree,
                        field_degree: b.field_degree / ratio as usize,
                        brauer_id: b.id.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Does a summand contribute a nontrivial (O-) factor to the discriminant
/// of the combined form, viewed over GF(p^k)?
fn contributes_ominus(s: &OrthSummand, k: usize) -> Result<bool, ChError> {
    let g = gcd(k, s.field_degree);
    let residual_odd = (k / g) % 2 == 1;
    Ok(match &s.kind {
        SummandKind::PlusIrreducible { otype } => {
            let t = otype.ok_or_else(|| ChError::MissingOType(s.brauer_id.clone()))?;
            t == OType::OMinus && residual_odd
        }
        SummandKind::DualPair {
            pair_field_ratio,
            psi_degree,
        } => *pair_field_ratio == 2 && psi_degree % 2 == 1 && residual_odd,
        SummandKind::MinusDoubled { .. } => false,
    })
}

/// The orthogonal discriminant of a stable reduction over its character field
/// GF(p^k): O- iff an odd number of summands contribute O-.
pub fn modular_discriminant(summands: &[OrthSummand], k: usize) -> Result<OType, ChError> {
    let mut minus = false;
    for s in summands {
        if contributes_ominus(s, k)? {
            minus = !minus;
        }
    }
    Ok(if minus { OType::OMinus } else { OType::OPlus })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
