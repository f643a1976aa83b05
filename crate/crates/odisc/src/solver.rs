//! Ordinary orthogonal-discriminant solver.
//!
//! Candidates are square classes eps * prod delta_i^x_i over a declared list
//! of totally positive, square-class-independent generators delta_1..delta_t,
//! with eps = (-1)^(chi(1)/2). Modular facts eliminate candidates through
//! ramification behavior at the corresponding prime ideals; when enough typed
//! facts are available the same data is solved as a GF(2) linear system. The
//! elimination log is a first-class output: every removed candidate records
//! which fact removed it and why.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::numfield::{
    is_totally_positive, validate_generator_independence, NFElem, NfError, NumberField,
    PrimeIdeal, SplittingType,
};
use crate::quadform::OType;

const MAX_GENERATORS: usize = 20;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("fact references unknown ideal {0}")]
    MissingIdeal(String),
    #[error("cyclic-defect rules require an odd prime, got p = 2 at ideal {0}")]
    DyadicDefectRule(String),
    #[error("inconsistent constraints: fact at {0} admits no solution")]
    Inconsistent(String),
    #[error("all candidates eliminated ({0} eliminations; input is inconsistent)")]
    Empty(usize),
    #[error("discriminant is not a unit at ideal {0}")]
    NotUnit(String),
    #[error("too many generators: {0}")]
    TooManyGenerators(usize),
    #[error("generator {0} is not totally positive")]
    NotTotallyPositive(String),
    #[error(transparent)]
    Field(#[from] NfError),
    #[error(transparent)]
    Gf(#[from] crate::gf::GfError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactKind {
    /// Stable reduction with an observed modular discriminant type.
    /// `residue_degree_odd`: the residue field has odd degree over the Brauer
    /// character field, the hypothesis under which the observed type pins the
    /// splitting behavior (split <-> O+, inert <-> O-).
    StableWithType {
        otype: OType,
        residue_degree_odd: bool,
    },
    /// Stable reduction, type unknown: forbids ramification only.
    StableTypeUnknown,
    /// Unstable reduction, no block data: no constraint by itself.
    NotStable,
    /// Unstable reduction in a defect-1 block: forces ramification.
    Defect1NotStable,
    /// Stable reduction in a defect-1 block: forbids ramification.
    Defect1Stable,
    /// Character belongs to the exceptional vertex of a cyclic-defect block;
    /// the stability of its reduction decides the direction.
    ExceptionalVertexRule { stable: bool },
    /// Character does not belong to the exceptional vertex; for even defect
    /// ramification is impossible regardless of stability.
    NonExceptionalRule { defect_even: bool },
}

#[derive(Debug, Clone)]
pub struct ConstraintFact {
    pub ideal: String,
    pub kind: FactKind,
    /// Free-text provenance (which table or computation produced the fact).
    pub source: String,
}

#[derive(Debug, Clone)]
pub struct Elimination {
    /// Exponent vector of the removed candidate, as a bitmask over the
    /// generator list.
    pub candidate: u64,
    pub ideal: String,
    pub rule: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct CandidateSet {
    field: NumberField,
    pub epsilon: i8,
    pub generator_names: Vec<String>,
    pub generators: Vec<NFElem>,
    /// Surviving exponent vectors as bitmasks over `generators`.
    pub survivors: Vec<u64>,
    pub log: Vec<Elimination>,
}

impl CandidateSet {
    /// Initial candidate set: all 2^t exponent vectors. Generators must be
    /// totally positive and independent in the square class group.
    pub fn new(
        field: &NumberField,
        epsilon: i8,
        generators: Vec<(String, NFElem)>,
    ) -> Result<CandidateSet, SolverError> {
        let t = generators.len();
        if t > MAX_GENERATORS {
            return Err(SolverError::TooManyGenerators(t));
        }
        for (name, g) in &generators {
            if !is_totally_positive(g)? {
                return Err(SolverError::NotTotallyPositive(name.clone()));
            }
        }
        let elems: Vec<NFElem> = generators.iter().map(|(_, g)| g.clone()).collect();
        if !elems.is_empty() {
            validate_generator_independence(field, &elems)?;
        }
        Ok(CandidateSet {
            field: field.clone(),
            epsilon,
            generator_names: generators.into_iter().map(|(n, _)| n).collect(),
            generators: elems,
            survivors: (0..1u64 << t).collect(),
            log: Vec::new(),
        })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// eps * prod of the generators selected by `mask`.
    pub fn candidate_element(&self, mask: u64) -> NFElem {
        let mut d = self.field.from_int(self.epsilon as i64);
        for (i, g) in self.generators.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d = d.mul(g);
            }
        }
        d
    }

    pub fn describe(&self, mask: u64) -> String {
        let mut parts: Vec<&str> = Vec::new();
        for (i, name) in self.generator_names.iter().enumerate() {
            if mask >> i & 1 == 1 {
                parts.push(name);
            }
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        if self.epsilon < 0 {
            format!("-{body}")
        } else {
            body
        }
    }

    pub fn contains_trivial(&self) -> bool {
        self.survivors.contains(&0)
    }

    fn retain<F>(&mut self, ideal: &str, rule: &str, mut keep: F) -> Result<(), SolverError>
    where
        F: FnMut(u64) -> Result<(bool, String), SolverError>,
    {
        let mut kept = Vec::with_capacity(self.survivors.len());
        for &m in &self.survivors {
            let (ok, reason) = keep(m)?;
            if ok {
                kept.push(m);
            } else {
                self.log.push(Elimination {
                    candidate: m,
                    ideal: ideal.to_string(),
                    rule: rule.to_string(),
                    reason,
                });
            }
        }
        self.survivors = kept;
        if self.survivors.is_empty() {
            return Err(SolverError::Empty(self.log.len()));
        }
        Ok(())
    }

    /// Human-readable derivation mirroring a prose proof.
    pub fn derivation(&self) -> String {
        let mut out = String::new();
        for e in &self.log {
            out.push_str(&format!(
                "eliminated {}: {} [{} at {}]\n",
                self.describe(e.candidate),
                e.reason,
                e.rule,
                e.ideal
            ));
        }
        let names: Vec<String> = self.survivors.iter().map(|&m| self.describe(m)).collect();
        out.push_str(&format!("survivors: {{{}}}\n", names.join(", ")));
        out
    }
}

fn lookup<'a>(
    ideals: &'a BTreeMap<String, PrimeIdeal>,
    label: &str,
) -> Result<&'a PrimeIdeal, SolverError> {
    ideals
        .get(label)
        .ok_or_else(|| SolverError::MissingIdeal(label.to_string()))
}

/// Stable reductions forbid ramification; observed types additionally decide
/// split vs. inert when the residue-degree hypothesis holds. Dyadic ideals
/// participate fully.
pub fn apply_stability_constraints(
    mut cands: CandidateSet,
    facts: &[ConstraintFact],
    ideals: &BTreeMap<String, PrimeIdeal>,
) -> Result<CandidateSet, SolverError> {
    for fact in facts {
        let (otype, typed) = match &fact.kind {
            FactKind::StableWithType {
                otype,
                residue_degree_odd,
            } => (Some(*otype), *residue_degree_odd),
            FactKind::StableTypeUnknown => (None, false),
            _ => continue,
        };
        let ideal = lookup(ideals, &fact.ideal)?.clone();
        let mut types = BTreeMap::new();
        for &m in &cands.survivors {
            types.insert(m, ideal.splitting_type(&cands.candidate_element(m))?);
        }
        cands.retain(&fact.ideal, "stability", |m| {
            let st = types[&m];
            if st == SplittingType::Ramified {
                return Ok((
                    false,
                    "stable reduction forbids ramification, candidate is ramified".to_string(),
                ));
            }
            if typed {
                match (otype, st) {
                    (Some(OType::OMinus), SplittingType::Split) => {
                        return Ok((
                            false,
                            "observed O- requires inert behavior, candidate is split".to_string(),
                        ))
                    }
                    (Some(OType::OPlus), SplittingType::Inert) => {
                        return Ok((
                            false,
                            "observed O+ requires split behavior, candidate is inert".to_string(),
                        ))
                    }
                    _ => {}
                }
            }
            Ok((true, String::new()))
        })?;
    }
    Ok(cands)
}

/// Defect-1 and exceptional-vertex rules: an unstable reduction in such a
/// block forces ramification, a stable one forbids it; a non-exceptional
/// character in an even-defect block can never ramify. Odd primes only.
pub fn apply_cyclic_defect(
    mut cands: CandidateSet,
    facts: &[ConstraintFact],
    ideals: &BTreeMap<String, PrimeIdeal>,
) -> Result<CandidateSet, SolverError> {
    for fact in facts {
        let force_ramified = match &fact.kind {
            FactKind::Defect1NotStable => true,
            FactKind::Defect1Stable => false,
            FactKind::ExceptionalVertexRule { stable } => !stable,
            FactKind::NonExceptionalRule { defect_even } => {
                if !defect_even {
                    continue;
                }
                false
            }
            _ => continue,
        };
        let ideal = lookup(ideals, &fact.ideal)?.clone();
        if ideal.p() == 2 {
            return Err(SolverError::DyadicDefectRule(fact.ideal.clone()));
        }
        let elems: Vec<(u64, NFElem)> = cands
            .survivors
            .iter()
            .map(|&m| (m, cands.candidate_element(m)))
            .collect();
        let mut types = BTreeMap::new();
        for (m, d) in &elems {
            types.insert(*m, ideal.splitting_type(d)?);
        }
        cands.retain(&fact.ideal, "cyclic-defect", |m| {
            let st = types[&m];
            let ramified = st == SplittingType::Ramified;
            if force_ramified {
                Ok((
                    ramified,
                    format!("unstable defect-1 reduction forces ramification, candidate is {st}"),
                ))
            } else {
                Ok((
                    !ramified,
                    "block structure forbids ramification, candidate is ramified".to_string(),
                ))
            }
        })?;
    }
    Ok(cands)
}

/// The linear-algebra path: one GF(2) equation per typed stable fact at a
/// non-dyadic ideal, sum over i of a(i) x_i = b, where a(i) is the
/// nonsquareness of delta_i in the residue field and b the observed type
/// corrected for the sign of eps. Facts where some generator is not a unit
/// are skipped (they stay covered by the enumeration path). The solution set
/// is intersected with the current survivors, so a rank-deficient system
/// degrades to the enumeration result.
pub fn gf2_solve(
    mut cands: CandidateSet,
    facts: &[ConstraintFact],
    ideals: &BTreeMap<String, PrimeIdeal>,
) -> Result<CandidateSet, SolverError> {
    for fact in facts {
        let otype = match &fact.kind {
            FactKind::StableWithType {
                otype,
                residue_degree_odd: true,
            } => *otype,
            _ => continue,
        };
        let ideal = lookup(ideals, &fact.ideal)?.clone();
        if ideal.p() == 2 {
            continue;
        }
        let mut row = 0u64;
        let mut usable = true;
        for (i, g) in cands.generators.iter().enumerate() {
            let r = match ideal.residue_map(g) {
                Ok(r) => r,
                Err(_) => {
                    usable = false;
                    break;
                }
            };
            if r.is_zero() {
                usable = false;
                break;
            }
            if !crate::gf::is_square(&r)? {
                row |= 1 << i;
            }
        }
        if !usable {
            continue;
        }
        let q_mod_4 = if ideal.residue_degree() % 2 == 0 {
            1
        } else {
            ideal.p() % 4
        };
        let eps_nonsquare = cands.epsilon < 0 && q_mod_4 == 3;
        let b = (otype == OType::OMinus) ^ eps_nonsquare;
        cands.retain(&fact.ideal, "gf2", |m| {
            let lhs = (row & m).count_ones() % 2 == 1;
            Ok((
                lhs == b,
                format!(
                    "observed type {otype} at a residue field with q = {}^{} forces the \
                     opposite residue character",
                    ideal.p(),
                    ideal.residue_degree()
                ),
            ))
        })?;
    }
    Ok(cands)
}

/// Type of the known discriminant at a prime not dividing the group order:
/// O+ iff its residue is a square. The discriminant is a unit at every such
/// ideal, so the residue is always defined.
pub fn primes_not_dividing_order(
    ideal: &PrimeIdeal,
    disc: &NFElem,
) -> Result<OType, SolverError> {
    if ideal.p() == 2 {
        return Err(SolverError::DyadicDefectRule(ideal.label().to_string()));
    }
    let r = ideal.residue_map(disc)?;
    if r.is_zero() {
        return Err(SolverError::NotUnit(ideal.label().to_string()));
    }
    Ok(if crate::gf::is_square(&r)? {
        OType::OPlus
    } else {
        OType::OMinus
    })
}

#[derive(Debug, Clone)]
pub struct CharacterInput {
    pub id: String,
    pub epsilon: i8,
    pub generators: Vec<(String, NFElem)>,
    pub facts: Vec<ConstraintFact>,
}

#[derive(Debug)]
pub struct SolveReport {
    pub character: String,
    pub set: CandidateSet,
    pub notes: Vec<String>,
}

impl SolveReport {
    pub fn determined(&self) -> Option<u64> {
        if self.set.survivors.len() == 1 {
            Some(self.set.survivors[0])
        } else {
            None
        }
    }
}

/// Full pipeline: enumerate candidates, apply stability and cyclic-defect
/// constraints, then the GF(2) linear path on whatever typed facts exist.
pub fn solve(
    field: &NumberField,
    input: &CharacterInput,
    ideals: &BTreeMap<String, PrimeIdeal>,
) -> Result<SolveReport, SolverError> {
    let cands = CandidateSet::new(field, input.epsilon, input.generators.clone())?;
    let mut notes = Vec::new();
    if input.facts.is_empty() {
        notes.push("no modular facts: full candidate list".to_string());
        return Ok(SolveReport {
            character: input.id.clone(),
            set: cands,
            notes,
        });
    }
    let cands = apply_stability_constraints(cands, &input.facts, ideals)?;
    let cands = apply_cyclic_defect(cands, &input.facts, ideals)?;
    let cands = gf2_solve(cands, &input.facts, ideals)?;
    if cands.survivors.len() > 1 {
        notes.push("not determined by decomposition data".to_string());
    }
    Ok(SolveReport {
        character: input.id.clone(),
        set: cands,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q_sqrt5() -> NumberField {
        let r = |n: i64| BigRational::from(BigInt::from(n));
        NumberField::new(
            "Q[sqrt5]",
            vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)],
            vec![vec![r(1), r(0)], vec![r(0), r(1)]],
            vec![r(1), r(-1)],
            true,
        )
        .unwrap()
    }

    fn ideal_map(ideals: Vec<PrimeIdeal>) -> BTreeMap<String, PrimeIdeal> {
        ideals
            .into_iter()
            .map(|i| (i.label().to_string(), i))
            .collect()
    }

    fn rationals_setup() -> (NumberField, BTreeMap<String, PrimeIdeal>) {
        let qq = NumberField::rationals();
        let mut ideals = Vec::new();
        for p in [3u64, 5, 7, 11, 13, 17, 19] {
            ideals.extend(qq.factor_prime(p).unwrap());
        }
        (qq, ideal_map(ideals))
    }

    fn fact(ideal: &str, kind: FactKind) -> ConstraintFact {
        ConstraintFact {
            ideal: ideal.into(),
            kind,
            source: "test".into(),
        }
    }

    #[test]
    fn enumeration_path_on_a_defect_one_character() {
        // degree-56 character over Q[sqrt5]: five generators, five defect-1
        // facts, a unique survivor 17 - 4 sqrt5
        let f = q_sqrt5();
        let sqrt5 = f.from_int_pairs(&[(-1, 1), (2, 1)]);
        let four = f.from_int(4);
        let nine = f.from_int(9);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let d1 = four.sub(&sqrt5);
        let d2 = four.add(&sqrt5);
        let d3 = nine.sub(&sqrt5).scale(&half);
        let d4 = nine.add(&sqrt5).scale(&half);
        let d5 = f.from_int(7);
        let ideals = ideal_map(vec![
            f.ideal(11, vec![3, 1], "11_1", Some(d1.clone())).unwrap(),
            f.ideal(11, vec![7, 1], "11_2", Some(d2.clone())).unwrap(),
            f.ideal(19, vec![14, 1], "19_1", Some(d3.clone())).unwrap(),
            f.ideal(19, vec![4, 1], "19_2", Some(d4.clone())).unwrap(),
            f.ideal(7, vec![6, 6, 1], "7", None).unwrap(),
        ]);
        let input = CharacterInput {
            id: "56a".into(),
            epsilon: 1,
            generators: vec![
                ("d1".into(), d1),
                ("d2".into(), d2),
                ("d3".into(), d3),
                ("d4".into(), d4),
                ("7".into(), d5),
            ],
            facts: vec![
                fact("11_1", FactKind::Defect1Stable),
                fact("11_2", FactKind::Defect1NotStable),
                fact("19_1", FactKind::Defect1NotStable),
                fact("19_2", FactKind::Defect1Stable),
                fact("7", FactKind::Defect1Stable),
            ],
        };
        let report = solve(&f, &input, &ideals).unwrap();
        let m = report.determined().expect("unique survivor");
        assert_eq!(report.set.describe(m), "d2*d3");
        let expected = f.from_int_pairs(&[(21, 1), (-8, 1)]); // 17 - 4 sqrt5
        assert!(crate::numfield::same_square_class(
            &report.set.candidate_element(m),
            &expected
        )
        .unwrap());
        assert!(!report.set.log.is_empty());
    }

    #[test]
    fn typed_stability_squeezes_to_one() {
        // degree-224 character over Q[sqrt5]: stable O+ at 2 and 7 leaves
        // only the trivial class
        let f = q_sqrt5();
        let sqrt5 = f.from_int_pairs(&[(-1, 1), (2, 1)]);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let u = f.from_int(5).add(&sqrt5).scale(&half);
        let ideals = ideal_map(vec![
            f.ideal(2, vec![1, 1, 1], "2", None).unwrap(),
            f.ideal(7, vec![6, 6, 1], "7", None).unwrap(),
        ]);
        let facts = vec![
            fact(
                "2",
                FactKind::StableWithType {
                    otype: OType::OPlus,
                    residue_degree_odd: true,
                },
            ),
            fact(
                "7",
                FactKind::StableWithType {
                    otype: OType::OPlus,
                    residue_degree_odd: true,
                },
            ),
        ];
        let gens = vec![("3".to_string(), f.from_int(3)), ("u".to_string(), u)];
        let cands = CandidateSet::new(&f, 1, gens.clone()).unwrap();
        assert_eq!(cands.survivors.len(), 4);
        let out = apply_stability_constraints(cands, &facts, &ideals).unwrap();
        assert_eq!(out.survivors, vec![0]);

        // idempotent and order-independent
        let again = apply_stability_constraints(out.clone(), &facts, &ideals).unwrap();
        assert_eq!(again.survivors, vec![0]);
        let mut rev = facts.clone();
        rev.reverse();
        let cands2 = CandidateSet::new(&f, 1, gens).unwrap();
        let out2 = apply_stability_constraints(cands2, &rev, &ideals).unwrap();
        assert_eq!(out2.survivors, vec![0]);
    }

    #[test]
    fn even_defect_does_not_force_ramification() {
        // degree-8 character with an unstable mod-3 reduction of defect 2:
        // no constraint at 3 beyond the even-defect rule, survivor is 1
        let (qq, ideals) = rationals_setup();
        let input = CharacterInput {
            id: "8".into(),
            epsilon: 1,
            generators: vec![
                ("3".into(), qq.from_int(3)),
                ("7".into(), qq.from_int(7)),
            ],
            facts: vec![
                fact("3", FactKind::NonExceptionalRule { defect_even: true }),
                fact("7", FactKind::Defect1Stable),
            ],
        };
        let report = solve(&qq, &input, &ideals).unwrap();
        assert!(report.set.contains_trivial());
        assert_eq!(report.determined(), Some(0));
        // with the defect-2 fact dropped, 3 also survives: nothing forces
        // 3 to divide the discriminant
        let weaker = CharacterInput {
            facts: vec![fact("7", FactKind::Defect1Stable)],
            ..input
        };
        let report2 = solve(&qq, &weaker, &ideals).unwrap();
        assert_eq!(report2.set.survivors, vec![0b00, 0b01]);
    }

    #[test]
    fn gf2_full_rank_and_sign_bookkeeping() {
        let (qq, ideals) = rationals_setup();
        let gens = vec![
            ("3".to_string(), qq.from_int(3)),
            ("7".to_string(), qq.from_int(7)),
            ("11".to_string(), qq.from_int(11)),
        ];
        // observed residue characters of d = 21 at 5, 13, 17, 19
        let facts = |types: [(u64, OType); 4]| {
            types
                .iter()
                .map(|(p, t)| {
                    fact(
                        &p.to_string(),
                        FactKind::StableWithType {
                            otype: *t,
                            residue_degree_odd: true,
                        },
                    )
                })
                .collect::<Vec<_>>()
        };
        let obs = facts([
            (5, OType::OPlus),
            (13, OType::OMinus),
            (17, OType::OPlus),
            (19, OType::OMinus),
        ]);
        let cands = CandidateSet::new(&qq, 1, gens.clone()).unwrap();
        let out = gf2_solve(cands, &obs, &ideals).unwrap();
        assert_eq!(out.survivors, vec![0b011]);
        assert_eq!(
            out.candidate_element(0b011).as_rational().unwrap(),
            BigRational::from(BigInt::from(21))
        );
        // epsilon = -1: observed types are those of -21; at 19 = 3 mod 4 the
        // sign flips the residue character, at the 1 mod 4 primes it does not
        let obs_neg = facts([
            (5, OType::OPlus),
            (13, OType::OMinus),
            (17, OType::OPlus),
            (19, OType::OPlus),
        ]);
        let cands_neg = CandidateSet::new(&qq, -1, gens).unwrap();
        let out_neg = gf2_solve(cands_neg, &obs_neg, &ideals).unwrap();
        assert_eq!(out_neg.survivors, vec![0b011]);
        assert_eq!(
            out_neg.candidate_element(0b011).as_rational().unwrap(),
            BigRational::from(BigInt::from(-21))
        );
    }

    #[test]
    fn gf2_inconsistent_system_errors() {
        let (qq, ideals) = rationals_setup();
        let gens = vec![("3".to_string(), qq.from_int(3))];
        // 3 is a nonsquare mod 5 and mod 17; demanding a square residue at
        // both 5 and 17 while 13 observes O- for every candidate is
        // unsatisfiable
        let facts = vec![
            fact(
                "13",
                FactKind::StableWithType {
                    otype: OType::OMinus,
                    residue_degree_odd: true,
                },
            ),
        ];
        // neither 1 nor 3 has a nonsquare residue mod 13 (3 = 4^2)
        let cands = CandidateSet::new(&qq, 1, gens).unwrap();
        match gf2_solve(cands, &facts, &ideals) {
            Err(SolverError::Empty(_)) => {}
            other => panic!("expected empty survivor error, got {other:?}"),
        }
    }

    #[test]
    fn residue_type_at_primes_outside_the_order() {
        let (qq, ideals) = rationals_setup();
        // oracle: exhaustive square lists
        let squares = |p: u64| -> Vec<u64> {
            let mut s: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            s.sort();
            s.dedup();
            s
        };
        let d77 = qq.from_int(77);
        let expect13 = if squares(13).contains(&(77 % 13)) {
            OType::OPlus
        } else {
            OType::OMinus
        };
        assert_eq!(
            primes_not_dividing_order(&ideals["13"], &d77).unwrap(),
            expect13
        );
        let d17 = qq.from_int(17);
        let expect19 = if squares(19).contains(&17) {
            OType::OPlus
        } else {
            OType::OMinus
        };
        assert_eq!(
            primes_not_dividing_order(&ideals["19"], &d17).unwrap(),
            expect19
        );
        assert_eq!(
            primes_not_dividing_order(&ideals["13"], &qq.from_int(1)).unwrap(),
            OType::OPlus
        );
        assert!(matches!(
            primes_not_dividing_order(&ideals["13"], &qq.from_int(13)),
            Err(SolverError::NotUnit(_))
        ));
    }

    #[test]
    fn empty_fact_list_returns_full_candidates() {
        let (qq, ideals) = rationals_setup();
        let input = CharacterInput {
            id: "x".into(),
            epsilon: 1,
            generators: vec![("3".into(), qq.from_int(3))],
            facts: vec![],
        };
        let report = solve(&qq, &input, &ideals).unwrap();
        assert_eq!(report.set.survivors.len(), 2);
        assert!(report.notes[0].contains("full candidate list"));
    }

    #[test]
    fn cyclic_defect_rejects_dyadic_ideals() {
        let f = q_sqrt5();
        let ideals = ideal_map(vec![f.ideal(2, vec![1, 1, 1], "2", None).unwrap()]);
        let cands = CandidateSet::new(&f, 1, vec![("3".into(), f.from_int(3))]).unwrap();
        let facts = vec![fact("2", FactKind::Defect1Stable)];
        assert!(matches!(
            apply_cyclic_defect(cands, &facts, &ideals),
            Err(SolverError::DyadicDefectRule(_))
        ));
    }

    #[test]
    fn negative_generator_is_rejected() {
        let qq = NumberField::rationals();
        assert!(matches!(
            CandidateSet::new(&qq, 1, vec![("-3".into(), qq.from_int(-3))]),
            Err(SolverError::NotTotallyPositive(_))
        ));
    }
}
