//! Group data bundles: one self-describing JSON file per group carrying the
//! number fields, ordinary characters, prime ideals, decomposition tables,
//! known modular discriminants, and candidate generator lists. Loading
//! resolves every label and re-checks the degree bookkeeping of every
//! decomposition row; any dangling reference is a hard error, never a
//! partial result.
//!
//! Rational coefficients appear in JSON as [numerator, denominator] pairs
//! over the power basis of the field's generator.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use thiserror::Error;

use crate::chardata::{
    self, BrauerCharacter, ChError, DecompositionTable, OrdinaryCharacter, Stability,
};
use crate::numfield::{NFElem, NfError, NumberField, PrimeIdeal};
use crate::quadform::OType;
use crate::solver::{self, CharacterInput, ConstraintFact, FactKind, SolveReport, SolverError};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{kind} {label} is referenced but not defined")]
    Dangling { kind: &'static str, label: String },
    #[error("duplicate {kind} label {label}")]
    Duplicate { kind: &'static str, label: String },
    #[error("bad type string {0}, expected \"O+\" or \"O-\"")]
    BadType(String),
    #[error("character {0} has odd degree {1}, no epsilon")]
    OddDegree(String, u64),
    #[error(transparent)]
    Field(#[from] NfError),
    #[error(transparent)]
    Char(#[from] ChError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Deserialize)]
pub struct FieldSpec {
    pub label: String,
    /// Defining polynomial, integer coefficients, constant term first.
    pub poly: Vec<i64>,
    pub integral_basis: Vec<Vec<[i64; 2]>>,
    /// Image of the generator under a generating Galois automorphism.
    pub galois: Vec<[i64; 2]>,
    pub totally_real: bool,
}

#[derive(Debug, Deserialize)]
pub struct IdealSpec {
    pub label: String,
    pub field: String,
    pub p: u64,
    pub factor_poly: Vec<u64>,
    #[serde(default)]
    pub generator: Option<Vec<[i64; 2]>>,
}

#[derive(Debug, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub element: Vec<[i64; 2]>,
}

/// Known modular discriminants at one ideal, per Brauer character id.
#[derive(Debug, Deserialize)]
pub struct ModDiscSpec {
    pub ideal: String,
    pub discs: BTreeMap<String, String>,
}

/// A solver fact that is not derivable from the bundled decomposition data
/// (e.g. an observed type from a source outside the tables).
#[derive(Debug, Deserialize)]
pub struct ExtraFactSpec {
    pub character: String,
    pub ideal: String,
    pub kind: String,
    #[serde(default)]
    pub otype: Option<String>,
    #[serde(default)]
    pub residue_degree_odd: Option<bool>,
    #[serde(default)]
    pub source: String,
}

#[derive(Debug, Deserialize)]
pub struct BundleSpec {
    pub name: String,
    /// Prime factorization of the group order, prime -> exponent.
    pub order: BTreeMap<String, u32>,
    #[serde(default)]
    pub fields: Vec<FieldSpec>,
    pub characters: Vec<OrdinaryCharacter>,
    #[serde(default)]
    pub ideals: Vec<IdealSpec>,
    #[serde(default)]
    pub decomposition: Vec<DecompositionTable>,
    #[serde(default)]
    pub mod_discs: Vec<ModDiscSpec>,
    /// Candidate discriminant generators per character id.
    #[serde(default)]
    pub generators: BTreeMap<String, Vec<GeneratorSpec>>,
    #[serde(default)]
    pub extra_facts: Vec<ExtraFactSpec>,
}

pub struct GroupBundle {
    pub name: String,
    pub order: BTreeMap<u64, u32>,
    pub fields: BTreeMap<String, NumberField>,
    pub characters: Vec<OrdinaryCharacter>,
    pub ideals: BTreeMap<String, PrimeIdeal>,
    /// Decomposition tables keyed by ideal label.
    pub tables: BTreeMap<String, DecompositionTable>,
    /// Known modular discriminants keyed by ideal label, then Brauer id.
    pub discs: BTreeMap<String, BTreeMap<String, OType>>,
    pub generators: BTreeMap<String, Vec<(String, NFElem)>>,
    extra_facts: Vec<ExtraFactSpec>,
}

fn parse_otype(s: &str) -> Result<OType, BundleError> {
    match s {
        "O+" => Ok(OType::OPlus),
        "O-" => Ok(OType::OMinus),
        other => Err(BundleError::BadType(other.to_string())),
    }
}

fn rational(pair: [i64; 2]) -> BigRational {
    BigRational::new(BigInt::from(pair[0]), BigInt::from(pair[1]))
}

fn element(field: &NumberField, pairs: &[[i64; 2]]) -> NFElem {
    field.from_coeffs(pairs.iter().map(|&p| rational(p)).collect())
}

impl GroupBundle {
    pub fn load(path: &Path) -> Result<GroupBundle, BundleError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BundleError::Io(path.display().to_string(), e))?;
        let spec: BundleSpec = serde_json::from_str(&text)?;
        GroupBundle::resolve(spec)
    }

    pub fn resolve(spec: BundleSpec) -> Result<GroupBundle, BundleError> {
        let mut fields = BTreeMap::new();
        fields.insert("Q".to_string(), NumberField::rationals());
        for fs in &spec.fields {
            let nf = NumberField::new(
                &fs.label,
                fs.poly.iter().map(|&c| BigInt::from(c)).collect(),
                fs.integral_basis
                    .iter()
                    .map(|row| row.iter().map(|&p| rational(p)).collect())
                    .collect(),
                fs.galois.iter().map(|&p| rational(p)).collect(),
                fs.totally_real,
            )?;
            if fields.insert(fs.label.clone(), nf).is_some() {
                return Err(BundleError::Duplicate {
                    kind: "field",
                    label: fs.label.clone(),
                });
            }
        }
        let mut ideals = BTreeMap::new();
        for is in &spec.ideals {
            let field = fields.get(&is.field).ok_or_else(|| BundleError::Dangling {
                kind: "field",
                label: is.field.clone(),
            })?;
            let gen = is.generator.as_ref().map(|g| element(field, g));
            let ideal = field.ideal(is.p, is.factor_poly.clone(), &is.label, gen)?;
            if ideals.insert(is.label.clone(), ideal).is_some() {
                return Err(BundleError::Duplicate {
                    kind: "ideal",
                    label: is.label.clone(),
                });
            }
        }
        for ch in &spec.characters {
            if !fields.contains_key(&ch.field) {
                return Err(BundleError::Dangling {
                    kind: "field",
                    label: ch.field.clone(),
                });
            }
        }
        let by_id = |id: &str| spec.characters.iter().find(|c| c.id == id);
        let mut tables = BTreeMap::new();
        for t in spec.decomposition {
            if !ideals.contains_key(&t.ideal) {
                return Err(BundleError::Dangling {
                    kind: "ideal",
                    label: t.ideal.clone(),
                });
            }
            // every row resolves and its degree sum checks out
            for id in t.matrix.keys() {
                let ch = by_id(id).ok_or_else(|| BundleError::Dangling {
                    kind: "character",
                    label: id.clone(),
                })?;
                chardata::reduce(ch, &t)?;
            }
            let label = t.ideal.clone();
            if tables.insert(label.clone(), t).is_some() {
                return Err(BundleError::Duplicate {
                    kind: "decomposition table",
                    label,
                });
            }
        }
        let mut discs: BTreeMap<String, BTreeMap<String, OType>> = BTreeMap::new();
        for md in &spec.mod_discs {
            let table = tables.get(&md.ideal).ok_or_else(|| BundleError::Dangling {
                kind: "decomposition table",
                label: md.ideal.clone(),
            })?;
            let mut m = BTreeMap::new();
            for (bid, ty) in &md.discs {
                if table.brauer_by_id(bid).is_none() {
                    return Err(BundleError::Dangling {
                        kind: "Brauer character",
                        label: bid.clone(),
                    });
                }
                m.insert(bid.clone(), parse_otype(ty)?);
            }
            discs.insert(md.ideal.clone(), m);
        }
        let mut generators = BTreeMap::new();
        for (chid, gens) in &spec.generators {
            let ch = by_id(chid).ok_or_else(|| BundleError::Dangling {
                kind: "character",
                label: chid.clone(),
            })?;
            let field = &fields[&ch.field];
            generators.insert(
                chid.clone(),
                gens.iter()
                    .map(|g| (g.name.clone(), element(field, &g.element)))
                    .collect(),
            );
        }
        for ef in &spec.extra_facts {
            if by_id(&ef.character).is_none() {
                return Err(BundleError::Dangling {
                    kind: "character",
                    label: ef.character.clone(),
                });
            }
            if !ideals.contains_key(&ef.ideal) {
                return Err(BundleError::Dangling {
                    kind: "ideal",
                    label: ef.ideal.clone(),
                });
            }
        }
        Ok(GroupBundle {
            name: spec.name,
            order: spec
                .order
                .iter()
                .map(|(p, e)| (p.parse().unwrap_or(0), *e))
                .collect(),
            fields: fields,
            characters: spec.characters,
            ideals,
            tables,
            discs,
            generators,
            extra_facts: spec.extra_facts,
        })
    }

    pub fn character(&self, id: &str) -> Result<&OrdinaryCharacter, BundleError> {
        self.characters
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| BundleError::Dangling {
                kind: "character",
                label: id.to_string(),
            })
    }

    /// The reduction of a character at an ideal, with its stability verdict.
    pub fn stability(
        &self,
        char_id: &str,
        ideal_label: &str,
    ) -> Result<(Vec<(&BrauerCharacter, u32)>, Stability), BundleError> {
        let ch = self.character(char_id)?;
        let table = self
            .tables
            .get(ideal_label)
            .ok_or_else(|| BundleError::Dangling {
                kind: "decomposition table",
                label: ideal_label.to_string(),
            })?;
        let constituents = chardata::reduce(ch, table)?;
        let stab = chardata::is_orthogonally_stable(&constituents)?;
        Ok((constituents, stab))
    }

    /// Modular discriminant of a stable reduction, from the bundled
    /// irreducible discriminants, together with the character field degree
    /// it is computed over and the summand split.
    pub fn modular_discriminant(
        &self,
        char_id: &str,
        ideal_label: &str,
    ) -> Result<(OType, usize, Vec<chardata::OrthSummand>), BundleError> {
        let (constituents, _) = self.stability(char_id, ideal_label)?;
        let empty = BTreeMap::new();
        let discs = self.discs.get(ideal_label).unwrap_or(&empty);
        let summands = chardata::split_orthogonally_simple(&constituents, discs)?;
        let k = char_field_degree(&constituents);
        let t = chardata::modular_discriminant(&summands, k)?;
        Ok((t, k, summands))
    }

    fn epsilon(&self, ch: &OrdinaryCharacter) -> Result<i8, BundleError> {
        if ch.degree % 2 != 0 {
            return Err(BundleError::OddDegree(ch.id.clone(), ch.degree));
        }
        Ok(if (ch.degree / 2) % 2 == 0 { 1 } else { -1 })
    }

    /// All solver facts for one character: stability and modular types from
    /// the decomposition tables, defect rules from the block data, plus any
    /// bundled extra facts.
    pub fn derive_facts(&self, char_id: &str) -> Result<Vec<ConstraintFact>, BundleError> {
        let ch = self.character(char_id)?;
        let mut facts = Vec::new();
        for (label, table) in &self.tables {
            if !table.matrix.contains_key(char_id) {
                continue;
            }
            let ideal = &self.ideals[label];
            let constituents = chardata::reduce(ch, table)?;
            let stab = chardata::is_orthogonally_stable(&constituents)?;
            let defect = ch.defect.get(&ideal.p());
            let source = format!("decomposition table at {label}");
            match stab {
                Stability::Stable => {
                    // defect rules first, then the sharpest stability fact
                    match defect {
                        Some(d) if d.defect == 1 => facts.push(ConstraintFact {
                            ideal: label.clone(),
                            kind: FactKind::Defect1Stable,
                            source: source.clone(),
                        }),
                        Some(d) if d.exceptional => facts.push(ConstraintFact {
                            ideal: label.clone(),
                            kind: FactKind::ExceptionalVertexRule { stable: true },
                            source: source.clone(),
                        }),
                        Some(d) if d.defect % 2 == 0 => facts.push(ConstraintFact {
                            ideal: label.clone(),
                            kind: FactKind::NonExceptionalRule { defect_even: true },
                            source: source.clone(),
                        }),
                        _ => {}
                    }
                    let kind = match self.modular_discriminant(char_id, label) {
                        Ok((otype, k, _)) => {
                            let f = ideal.residue_degree();
                            FactKind::StableWithType {
                                otype,
                                residue_degree_odd: f % k == 0 && (f / k) % 2 == 1,
                            }
                        }
                        Err(BundleError::Char(ChError::MissingOType(_))) => {
                            FactKind::StableTypeUnknown
                        }
                        Err(e) => return Err(e),
                    };
                    facts.push(ConstraintFact {
                        ideal: label.clone(),
                        kind,
                        source,
                    });
                }
                Stability::Unstable { .. } => match defect {
                    Some(d) if d.defect == 1 => facts.push(ConstraintFact {
                        ideal: label.clone(),
                        kind: FactKind::Defect1NotStable,
                        source,
                    }),
                    Some(d) if d.exceptional => facts.push(ConstraintFact {
                        ideal: label.clone(),
                        kind: FactKind::ExceptionalVertexRule { stable: false },
                        source,
                    }),
                    Some(d) if d.defect % 2 == 0 => facts.push(ConstraintFact {
                        ideal: label.clone(),
                        kind: FactKind::NonExceptionalRule { defect_even: true },
                        source,
                    }),
                    _ => {}
                },
            }
        }
        for ef in &self.extra_facts {
            if ef.character != char_id {
                continue;
            }
            let kind = match ef.kind.as_str() {
                "stable_with_type" => FactKind::StableWithType {
                    otype: parse_otype(ef.otype.as_deref().unwrap_or(""))?,
                    residue_degree_odd: ef.residue_degree_odd.unwrap_or(false),
                },
                "stable" => FactKind::StableTypeUnknown,
                "defect1_stable" => FactKind::Defect1Stable,
                "defect1_not_stable" => FactKind::Defect1NotStable,
                other => {
                    return Err(BundleError::BadType(other.to_string()));
                }
            };
            facts.push(ConstraintFact {
                ideal: ef.ideal.clone(),
                kind,
                source: if ef.source.is_empty() {
                    "bundled fact".to_string()
                } else {
                    ef.source.clone()
                },
            });
        }
        Ok(facts)
    }

    pub fn solve_character(&self, char_id: &str) -> Result<SolveReport, BundleError> {
        let ch = self.character(char_id)?;
        let field = &self.fields[&ch.field];
        let input = CharacterInput {
            id: char_id.to_string(),
            epsilon: self.epsilon(ch)?,
            generators: self.generators.get(char_id).cloned().unwrap_or_default(),
            facts: self.derive_facts(char_id)?,
        };
        Ok(solver::solve(field, &input, &self.ideals)?)
    }

    /// Solve every character that has a generator list, in id order.
    pub fn solve_all(&self) -> Result<Vec<SolveReport>, BundleError> {
        let mut ids: Vec<&String> = self.generators.keys().collect();
        ids.sort();
        ids.iter().map(|id| self.solve_character(id)).collect()
    }
}

/// Field degree of a sum of Brauer characters: the compositum of the
/// constituent fields.
fn char_field_degree(constituents: &[(&BrauerCharacter, u32)]) -> usize {
    constituents
        .iter()
        .fold(1, |acc, (b, _)| num_integer::lcm(acc, b.field_degree))
}
