//! Exact arithmetic in small abelian number fields.
//!
//! A field is given by a monic integer defining polynomial (degree <= 6), an
//! integral basis, and a generator of its (cyclic) Galois group as a
//! polynomial in the field generator. Prime ideals are factor polynomials of
//! the defining polynomial mod p; the residue field is realized via the `gf`
//! module. Splitting of odd primes in K[sqrt(d)]/K goes through Hensel-lifted
//! valuations; dyadic primes use a local square test at precision 2^3
//! (i.e. mod P^(2e+1) with e = 1).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gf::{is_square as gf_is_square, FieldElement, FiniteField, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NfError {
    #[error("defining polynomial must be monic of degree >= 1 with integer coefficients")]
    BadPoly,
    #[error("defining polynomial is reducible over the rationals")]
    Reducible,
    #[error("degree exceeds the supported cap of 6")]
    DegreeCap,
    #[error("galois action does not permute the generator with full orbit")]
    BadGalois,
    #[error("integral basis invalid: {0}")]
    BadIntegralBasis(String),
    #[error("field flagged totally_real but the defining polynomial has complex roots (or vice versa)")]
    RealityMismatch,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero element")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} divides the index of the power-basis order")]
    IndexDivisor(u64),
    #[error("factor polynomial does not match the factorization of the defining polynomial mod p")]
    BadFactorPoly,
    #[error("element is not integral at the ideal (denominator divisible by p)")]
    NonIntegral,
    #[error("ideal generator validation failed: {0}")]
    BadGenerator(String),
    #[error("operation requires a totally real field")]
    NotTotallyReal,
    #[error("valuation unsupported here: {0}")]
    UnsupportedValuation(String),
    #[error("generator classes could not be verified GF(2)-independent (rank {0} of {1})")]
    IndependenceUnverified(usize, usize),
    #[error(transparent)]
    Gf(#[from] GfError),
}

// ---------------------------------------------------------------------------
// rational polynomial helpers, lsc-first
// ---------------------------------------------------------------------------

type QPoly = Vec<BigRational>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qp_trim(v: &mut QPoly) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

fn qp_deg(v: &[BigRational]) -> usize {
    let mut d = v.len();
    while d > 1 && v[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn qp_is_zero(v: &[BigRational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn qp_add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    qp_trim(&mut out);
    out
}

fn qp_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qp_trim(&mut out);
    out
}

fn qp_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if qp_is_zero(a) || qp_is_zero(b) {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    qp_trim(&mut out);
    out
}

fn qp_scale(a: &[BigRational], c: &BigRational) -> QPoly {
    let mut out: QPoly = a.iter().map(|x| x * c).collect();
    qp_trim(&mut out);
    out
}

/// (quotient, remainder) of a by b, b nonzero.
fn qp_divmod(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = qp_deg(b);
    let lead = b[db].clone();
    let mut r: QPoly = a.to_vec();
    qp_trim(&mut r);
    if qp_deg(&r) < db && !(db == 0) {
        return (vec![BigRational::zero()], r);
    }
    let mut qout = vec![BigRational::zero(); qp_deg(&r).saturating_sub(db) + 1];
    while !qp_is_zero(&r) && qp_deg(&r) >= db {
        let dr = qp_deg(&r);
        let c = &r[dr] / &lead;
        let shift = dr - db;
        qout[shift] = c.clone();
        for i in 0..=db {
            let t = &c * &b[i];
            r[shift + i] -= t;
        }
        qp_trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    qp_trim(&mut qout);
    (qout, r)
}

fn qp_derivative(a: &[BigRational]) -> QPoly {
    if a.len() <= 1 {
        return vec![BigRational::zero()];
    }
    let mut out: QPoly = (1..a.len()).map(|i| &a[i] * q(i as i64)).collect();
    qp_trim(&mut out);
    out
}

fn qp_eval(a: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// a(g) mod f: substitute a polynomial into another, reduced mod monic f.
fn qp_compose_mod(a: &[BigRational], g: &[BigRational], f: &[BigRational]) -> QPoly {
    let mut acc: QPoly = vec![BigRational::zero()];
    for c in a.iter().rev() {
        acc = qp_mul(&acc, g);
        if acc.is_empty() {
            acc = vec![BigRational::zero()];
        }
        if acc.len() < 1 {
            acc.push(BigRational::zero());
        }
        acc[0] += c;
        let (_, r) = qp_divmod(&acc, f);
        acc = r;
    }
    acc
}

// ---------------------------------------------------------------------------
// number field
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct NfInner {
    label: String,
    /// Monic integer defining polynomial, lsc-first, length m + 1.
    poly: Vec<BigInt>,
    poly_q: QPoly,
    degree: usize,
    integral_basis: Vec<QPoly>,
    galois: QPoly,
    totally_real: bool,
    /// |index of Z[theta] in the maximal order|.
    index: BigInt,
    /// Isolating intervals of the real roots, ascending (totally real only).
    root_intervals: Vec<(BigRational, BigRational)>,
}

/// A small abelian number field Q(theta); cheaply cloneable handle.
#[derive(Clone)]
pub struct NumberField(Arc<NfInner>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}
impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.0.label)
    }
}

/// Element in power-basis coordinates over theta, exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct NFElem {
    field: NumberField,
    coeffs: QPoly, // length = degree
}

impl fmt::Debug for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElem{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            if first {
                first = false;
                match i {
                    0 => write!(f, "{s}")?,
                    1 => write!(f, "{s}*th")?,
                    _ => write!(f, "{s}*th^{i}")?,
                }
            } else {
                let (sign, mag) = if c.is_negative() {
                    ("-", (-c).to_string())
                } else {
                    ("+", s)
                };
                match i {
                    0 => write!(f, " {sign} {mag}")?,
                    1 => write!(f, " {sign} {mag}*th")?,
                    _ => write!(f, " {sign} {mag}*th^{i}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl NumberField {
    /// The rationals, as the degree-1 field with defining polynomial x.
    pub fn rationals() -> NumberField {
        NumberField::new(
            "Q",
            vec![BigInt::zero(), BigInt::one()],
            vec![vec![BigRational::one()]],
            vec![BigRational::zero(), BigRational::one()],
            true,
        )
        .expect("Q is always valid")
    }

    pub fn new(
        label: &str,
        poly: Vec<BigInt>,
        integral_basis: Vec<QPoly>,
        galois: QPoly,
        totally_real: bool,
    ) -> Result<NumberField, NfError> {
        let m = poly.len().checked_sub(1).ok_or(NfError::BadPoly)?;
        if m < 1 || !poly[m].is_one() {
            return Err(NfError::BadPoly);
        }
        if m > 6 {
            return Err(NfError::DegreeCap);
        }
        let poly_q: QPoly = poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        if !poly_irreducible_over_q(&poly) {
            return Err(NfError::Reducible);
        }

        // Galois action: the orbit of theta must have size m and close up.
        let theta: QPoly = if m == 1 {
            // theta = root of x, i.e. 0
            vec![BigRational::zero()]
        } else {
            vec![BigRational::zero(), BigRational::one()]
        };
        let mut orbit = vec![reduce_mod(&theta, &poly_q, m)];
        let mut cur = orbit[0].clone();
        for _ in 0..m {
            cur = reduce_mod(&qp_compose_mod(&cur, &galois, &poly_q), &poly_q, m);
            if cur == orbit[0] {
                break;
            }
            orbit.push(cur.clone());
        }
        if orbit.len() != m || cur != orbit[0] {
            return Err(NfError::BadGalois);
        }

        // Provisional inner for arithmetic during validation.
        let provisional = NumberField(Arc::new(NfInner {
            label: label.to_string(),
            poly: poly.clone(),
            poly_q: poly_q.clone(),
            degree: m,
            integral_basis: integral_basis.clone(),
            galois: galois.clone(),
            totally_real,
            index: BigInt::one(),
            root_intervals: Vec::new(),
        }));

        // Integral basis: right count, spanning, algebraic integers.
        if integral_basis.len() != m {
            return Err(NfError::BadIntegralBasis("wrong cardinality".into()));
        }
        let basis_elems: Vec<NFElem> = integral_basis
            .iter()
            .map(|b| provisional.from_coeffs(b.clone()))
            .collect();
        let mut mat: Vec<QPoly> = basis_elems.iter().map(|b| b.coeffs.clone()).collect();
        if rational_rank(&mut mat, m) != m {
            return Err(NfError::BadIntegralBasis("does not span the field".into()));
        }
        for b in &basis_elems {
            if !b.is_integral() {
                return Err(NfError::BadIntegralBasis(format!(
                    "{b} is not an algebraic integer"
                )));
            }
        }

        // index^2 = disc(power basis) / disc(integral basis)
        let theta_elem = provisional.generator_elem();
        let power_basis: Vec<NFElem> = (0..m)
            .map(|i| theta_elem.pow(i as i64).expect("nonzero"))
            .collect();
        let d_power = disc_of_basis(&power_basis);
        let d_field = disc_of_basis(&basis_elems);
        if d_field.is_zero() {
            return Err(NfError::BadIntegralBasis("degenerate trace form".into()));
        }
        let ratio = &d_power / &d_field;
        if !ratio.is_integer() || ratio.is_negative() {
            return Err(NfError::BadIntegralBasis(
                "power-basis discriminant is not an integer-square multiple of the field discriminant".into(),
            ));
        }
        let index = integer_sqrt_exact(&ratio.to_integer())
            .ok_or_else(|| NfError::BadIntegralBasis("discriminant ratio is not a square".into()))?;

        // Reality check + real root isolation.
        let real_count = sturm_real_root_count(&poly_q);
        if totally_real != (real_count == m) {
            return Err(NfError::RealityMismatch);
        }
        let root_intervals = if totally_real {
            isolate_real_roots(&poly_q, m)
        } else {
            Vec::new()
        };

        Ok(NumberField(Arc::new(NfInner {
            label: label.to_string(),
            poly,
            poly_q,
            degree: m,
            integral_basis,
            galois,
            totally_real,
            index,
            root_intervals,
        })))
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn integral_basis(&self) -> &[QPoly] {
        &self.0.integral_basis
    }

    pub fn defining_poly(&self) -> &[BigInt] {
        &self.0.poly
    }

    pub fn is_totally_real(&self) -> bool {
        self.0.totally_real
    }

    pub fn is_rationals(&self) -> bool {
        self.0.degree == 1
    }

    pub fn zero(&self) -> NFElem {
        NFElem {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.0.degree],
        }
    }

    pub fn one(&self) -> NFElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> NFElem {
        let mut coeffs = vec![BigRational::zero(); self.0.degree];
        coeffs[0] = r;
        NFElem {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_int(&self, n: i64) -> NFElem {
        self.from_rational(q(n))
    }

    /// Element from power-basis coordinates (any length; reduced mod poly).
    pub fn from_coeffs(&self, coeffs: QPoly) -> NFElem {
        let r = reduce_mod(&coeffs, &self.0.poly_q, self.0.degree);
        NFElem {
            field: self.clone(),
            coeffs: r,
        }
    }

    /// Element from (numerator, denominator) integer pairs.
    pub fn from_int_pairs(&self, pairs: &[(i64, i64)]) -> NFElem {
        let coeffs = pairs
            .iter()
            .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// theta itself.
    pub fn generator_elem(&self) -> NFElem {
        if self.0.degree == 1 {
            // theta is the root of the degree-1 polynomial
            return self.from_rational(-BigRational::from_integer(self.0.poly[0].clone()));
        }
        let mut coeffs = vec![BigRational::zero(); self.0.degree];
        coeffs[1] = BigRational::one();
        NFElem {
            field: self.clone(),
            coeffs,
        }
    }

    /// sigma(a): substitute the Galois polynomial into a.
    pub fn apply_galois(&self, a: &NFElem) -> NFElem {
        assert_eq!(&a.field, self, "field mismatch");
        let c = qp_compose_mod(&a.coeffs, &self.0.galois, &self.0.poly_q);
        self.from_coeffs(c)
    }

    /// The full conjugate orbit a, sigma a, ..., sigma^(m-1) a.
    pub fn conjugates(&self, a: &NFElem) -> Vec<NFElem> {
        let mut out = Vec::with_capacity(self.0.degree);
        let mut cur = a.clone();
        for _ in 0..self.0.degree {
            out.push(cur.clone());
            cur = self.apply_galois(&cur);
        }
        out
    }

    /// Product of all conjugates; rational for a cyclic Galois extension.
    pub fn norm(&self, a: &NFElem) -> BigRational {
        let mut prod = self.one();
        for c in self.conjugates(a) {
            prod = prod.mul(&c);
        }
        debug_assert!(prod.coeffs[1..].iter().all(|c| c.is_zero()), "norm not rational");
        prod.coeffs[0].clone()
    }

    pub fn factor_prime(&self, p: u64) -> Result<Vec<PrimeIdeal>, NfError> {
        if !is_prime_u64(p) {
            return Err(NfError::NotPrime(p));
        }
        if (&self.0.index % BigInt::from(p)).is_zero() {
            return Err(NfError::IndexDivisor(p));
        }
        let fp: Vec<u64> = self
            .0
            .poly
            .iter()
            .map(|c| bigint_mod_u64(c, p))
            .collect();
        let factors = factor_mod_p(&fp, p);
        let multiple = factors.len() > 1 || factors[0].1 > 1;
        let mut out = Vec::new();
        for (i, (g, e)) in factors.into_iter().enumerate() {
            let f = g.len() - 1;
            let label = if multiple {
                format!("{p}_{i}")
            } else {
                format!("{p}")
            };
            out.push(PrimeIdeal {
                field: self.clone(),
                p,
                factor_poly: g,
                e,
                f,
                label,
                generator: None,
            });
        }
        Ok(out)
    }

    /// Build a specific ideal from its factor polynomial, with validation.
    pub fn ideal(
        &self,
        p: u64,
        factor_poly: Vec<u64>,
        label: &str,
        generator: Option<NFElem>,
    ) -> Result<PrimeIdeal, NfError> {
        let all = self.factor_prime(p)?;
        let reduced: Vec<u64> = factor_poly.iter().map(|&c| c % p).collect();
        let found = all
            .into_iter()
            .find(|id| id.factor_poly == reduced)
            .ok_or(NfError::BadFactorPoly)?;
        let mut ideal = PrimeIdeal {
            label: label.to_string(),
            ..found
        };
        if let Some(g) = generator {
            if g.field != *self {
                return Err(NfError::FieldMismatch);
            }
            // |N(g)| must be exactly p^f and g must lie in the ideal.
            let n = self.norm(&g);
            let expect = BigInt::from(p).pow(ideal.f as u32);
            if n.denom() != &BigInt::one() || n.numer().abs() != expect {
                return Err(NfError::BadGenerator(format!(
                    "norm {n} of {g}, expected +-{p}^{}",
                    ideal.f
                )));
            }
            let r = ideal.residue_map(&g)?;
            if !r.is_zero() {
                return Err(NfError::BadGenerator(format!("{g} does not lie in the ideal")));
            }
            ideal.generator = Some(g);
        }
        Ok(ideal)
    }
}

fn reduce_mod(coeffs: &[BigRational], poly: &[BigRational], m: usize) -> QPoly {
    let (_, r) = qp_divmod(coeffs, poly);
    let mut out = vec![BigRational::zero(); m];
    for (i, c) in r.into_iter().enumerate() {
        if i < m {
            out[i] = c;
        }
    }
    out
}

impl NFElem {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &NFElem) -> NFElem {
        assert_eq!(self.field, other.field, "field mismatch");
        NFElem {
            field: self.field.clone(),
            coeffs: {
                let mut c = qp_add(&self.coeffs, &other.coeffs);
                c.resize(self.field.degree(), BigRational::zero());
                c
            },
        }
    }

    pub fn sub(&self, other: &NFElem) -> NFElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NFElem {
        NFElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &NFElem) -> NFElem {
        assert_eq!(self.field, other.field, "field mismatch");
        self.field.from_coeffs(qp_mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &BigRational) -> NFElem {
        NFElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm against the defining poly.
    pub fn inverse(&self) -> Result<NFElem, NfError> {
        if self.is_zero() {
            return Err(NfError::DivisionByZero);
        }
        let f = &self.field.0.poly_q;
        // extended gcd(a, f) = 1 since f is irreducible and deg a < deg f
        let (mut r0, mut r1) = (f.clone(), {
            let mut a = self.coeffs.clone();
            qp_trim(&mut a);
            a
        });
        let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while !qp_is_zero(&r1) {
            let (qq, r) = qp_divmod(&r0, &r1);
            let s = qp_sub(&s0, &qp_mul(&qq, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (a nonzero constant), s0 the cofactor of a
        debug_assert_eq!(qp_deg(&r0), 0);
        let inv_const = BigRational::one() / r0[0].clone();
        Ok(self.field.from_coeffs(qp_scale(&s0, &inv_const)))
    }

    pub fn div(&self, other: &NFElem) -> Result<NFElem, NfError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<NFElem, NfError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Matrix of multiplication by self over the power basis (column j = self * theta^j).
    fn mult_matrix(&self) -> Vec<Vec<BigRational>> {
        let m = self.field.degree();
        let theta = self.field.generator_elem();
        let mut cols = Vec::with_capacity(m);
        let mut cur = self.clone();
        for _ in 0..m {
            cols.push(cur.coeffs.clone());
            cur = cur.mul(&theta);
        }
        // transpose to rows
        (0..m)
            .map(|i| (0..m).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// Trace of the multiplication matrix: the field trace to Q.
    pub fn trace(&self) -> BigRational {
        let mm = self.mult_matrix();
        let mut t = BigRational::zero();
        for (i, row) in mm.iter().enumerate() {
            t += &row[i];
        }
        t
    }

    /// Characteristic polynomial of the multiplication matrix
    /// (Faddeev-LeVerrier), monic, lsc-first.
    pub fn char_poly(&self) -> QPoly {
        let m = self.field.degree();
        let mm = self.mult_matrix();
        let mut coeffs = vec![BigRational::zero(); m + 1];
        coeffs[m] = BigRational::one();
        let mut nmat: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for k in 1..=m {
            // M * N
            let mn: Vec<Vec<BigRational>> = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            let mut s = BigRational::zero();
                            for l in 0..m {
                                s += &mm[i][l] * &nmat[l][j];
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            let mut tr = BigRational::zero();
            for (i, row) in mn.iter().enumerate() {
                tr += &row[i];
            }
            let c = -tr / q(k as i64);
            coeffs[m - k] = c.clone();
            nmat = mn;
            for i in 0..m {
                nmat[i][i] += &c;
            }
        }
        coeffs
    }

    /// Algebraic integer test via integrality of the characteristic polynomial.
    pub fn is_integral(&self) -> bool {
        self.char_poly().iter().all(|c| c.is_integer())
    }
}

fn rational_rank(rows: &mut [QPoly], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = BigRational::one() / rows[rank][col].clone();
        for c in 0..cols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..cols {
                    let t = &f * &rows[rank][c];
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// det(Tr(b_i b_j)).
fn disc_of_basis(basis: &[NFElem]) -> BigRational {
    let m = basis.len();
    let mat: Vec<Vec<BigRational>> = (0..m)
        .map(|i| (0..m).map(|j| basis[i].mul(&basis[j]).trace()).collect())
        .collect();
    rational_det(mat)
}

fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pr != col {
            a.swap(col, pr);
            det = -det;
        }
        det *= &a[col][col];
        let inv = BigRational::one() / a[col][col].clone();
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn bigint_mod_u64(c: &BigInt, p: u64) -> u64 {
    let m = c % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("reduced")
}

// ---------------------------------------------------------------------------
// irreducibility over Q (desk scale, degree <= 6)
// ---------------------------------------------------------------------------

/// Irreducibility of a monic integer polynomial over Q: complex roots via
/// Durand-Kerner, candidate factors from root subsets with rounded integer
/// coefficients, verified by exact division. Degrees 2-3 shortcut to the
/// rational root test.
fn poly_irreducible_over_q(poly: &[BigInt]) -> bool {
    let m = poly.len() - 1;
    if m == 1 {
        return true;
    }
    if m <= 3 {
        return !has_rational_root(poly);
    }
    if has_rational_root(poly) {
        return false;
    }
    let roots = durand_kerner(poly);
    let n = roots.len();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 || size > m / 2 {
            continue;
        }
        // candidate factor = prod (x - r_i) over the subset
        let mut fac = vec![(1.0f64, 0.0f64)];
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                fac = cmul_poly(&fac, *r);
            }
        }
        if fac.iter().any(|&(_, im)| im.abs() > 1e-4) {
            continue;
        }
        let cand: Vec<BigInt> = fac
            .iter()
            .map(|&(re, _)| BigInt::from(re.round() as i64))
            .collect();
        if fac
            .iter()
            .zip(&cand)
            .any(|(&(re, _), c)| (re - c.to_f64().unwrap()).abs() > 1e-4)
        {
            continue;
        }
        if exact_divides(poly, &cand) {
            return false;
        }
    }
    true
}

fn has_rational_root(poly: &[BigInt]) -> bool {
    // monic: rational roots are integer divisors of the constant term
    let c0 = poly[0].clone();
    if c0.is_zero() {
        return true;
    }
    let c0a = c0.abs();
    let mut d = BigInt::one();
    while &d * &d <= c0a {
        if (&c0a % &d).is_zero() {
            for cand in [d.clone(), -d.clone(), &c0a / &d, -(&c0a / &d)] {
                let mut acc = BigInt::zero();
                for c in poly.iter().rev() {
                    acc = acc * &cand + c;
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

fn exact_divides(poly: &[BigInt], cand: &[BigInt]) -> bool {
    if cand.last().map(|c| !c.is_one()).unwrap_or(true) {
        return false;
    }
    let a: QPoly = poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let b: QPoly = cand.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let (_, r) = qp_divmod(&a, &b);
    qp_is_zero(&r)
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cmul_poly(p: &[(f64, f64)], root: (f64, f64)) -> Vec<(f64, f64)> {
    // multiply by (x - root)
    let mut out = vec![(0.0, 0.0); p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1].0 += c.0;
        out[i + 1].1 += c.1;
        let t = cmul(c, root);
        out[i].0 -= t.0;
        out[i].1 -= t.1;
    }
    out
}

fn durand_kerner(poly: &[BigInt]) -> Vec<(f64, f64)> {
    let m = poly.len() - 1;
    let coeffs: Vec<f64> = poly.iter().map(|c| c.to_f64().unwrap()).collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for &c in coeffs.iter().rev() {
            acc = cmul(acc, z);
            acc.0 += c;
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let ang = 0.4 + 2.0 * std::f64::consts::PI * (i as f64) / (m as f64);
            (1.3 * ang.cos(), 1.3 * ang.sin())
        })
        .collect();
    for _ in 0..300 {
        let mut next = roots.clone();
        for i in 0..m {
            let mut denom = (1.0, 0.0);
            for j in 0..m {
                if j != i {
                    denom = cmul(denom, (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1));
                }
            }
            let num = eval(roots[i]);
            let d2 = denom.0 * denom.0 + denom.1 * denom.1;
            if d2 == 0.0 {
                continue;
            }
            let frac = (
                (num.0 * denom.0 + num.1 * denom.1) / d2,
                (num.1 * denom.0 - num.0 * denom.1) / d2,
            );
            next[i] = (roots[i].0 - frac.0, roots[i].1 - frac.1);
        }
        roots = next;
    }
    roots
}

// ---------------------------------------------------------------------------
// Sturm sequences, real root isolation, total positivity
// ---------------------------------------------------------------------------

fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![f.clone(), qp_derivative(f)];
    loop {
        let n = seq.len();
        if qp_is_zero(&seq[n - 1]) {
            seq.pop();
            break;
        }
        let (_, r) = qp_divmod(&seq[n - 2], &seq[n - 1]);
        if qp_is_zero(&r) {
            break;
        }
        seq.push(qp_scale(&r, &q(-1)));
    }
    seq
}

fn sign_changes_at(seq: &[QPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = qp_eval(p, x);
        let s = if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

fn cauchy_bound(f: &QPoly) -> BigRational {
    let d = qp_deg(f);
    let lead = f[d].clone();
    let mut max = BigRational::zero();
    for c in &f[..d] {
        let a = (c / &lead).abs();
        if a > max {
            max = a;
        }
    }
    max + BigRational::one()
}

fn sturm_real_root_count(f: &QPoly) -> usize {
    let seq = sturm_sequence(f);
    let b = cauchy_bound(f);
    sign_changes_at(&seq, &(-b.clone())) - sign_changes_at(&seq, &b)
}

/// Isolating intervals (lo, hi] for each real root, ascending.
fn isolate_real_roots(f: &QPoly, expected: usize) -> Vec<(BigRational, BigRational)> {
    let seq = sturm_sequence(f);
    let b = cauchy_bound(f);
    let count = |lo: &BigRational, hi: &BigRational| -> usize {
        sign_changes_at(&seq, lo) - sign_changes_at(&seq, hi)
    };
    let mut stack = vec![(-b.clone(), b.clone())];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        match count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / q(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    assert_eq!(out.len(), expected, "root isolation lost a root");
    out
}

/// Interval Horner evaluation: the image of [lo, hi] under g, conservatively.
fn interval_eval(g: &QPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut acc = (BigRational::zero(), BigRational::zero());
    for c in g.iter().rev() {
        // acc * [lo, hi]
        let cands = [
            &acc.0 * lo,
            &acc.0 * hi,
            &acc.1 * lo,
            &acc.1 * hi,
        ];
        let mut mn = cands[0].clone();
        let mut mx = cands[0].clone();
        for v in &cands[1..] {
            if *v < mn {
                mn = v.clone();
            }
            if *v > mx {
                mx = v.clone();
            }
        }
        acc = (mn + c, mx + c);
    }
    acc
}

/// Sign of a at each real root of the defining polynomial, by interval
/// refinement; entries are +1 or -1 (a != 0 means a never vanishes at a root).
pub fn real_embedding_signs(a: &NFElem) -> Result<Vec<i8>, NfError> {
    let field = a.field();
    if !field.is_totally_real() {
        return Err(NfError::NotTotallyReal);
    }
    if a.is_zero() {
        return Err(NfError::ZeroArgument);
    }
    let f = &field.0.poly_q;
    let mut apoly = a.coeffs.clone();
    qp_trim(&mut apoly);
    let mut signs = Vec::new();
    for (lo0, hi0) in &field.0.root_intervals {
        let mut lo = lo0.clone();
        let mut hi = hi0.clone();
        loop {
            let (mn, mx) = interval_eval(&apoly, &lo, &hi);
            if mn.is_positive() {
                signs.push(1);
                break;
            }
            if mx.is_negative() {
                signs.push(-1);
                break;
            }
            // bisect on the sign of f
            let mid = (&lo + &hi) / q(2);
            let fm = qp_eval(f, &mid);
            let flo = qp_eval(f, &lo);
            if fm.is_zero() {
                // mid is the root itself: evaluate a there exactly
                let v = qp_eval(&apoly, &mid);
                signs.push(if v.is_negative() { -1 } else { 1 });
                break;
            }
            if (fm.is_negative()) == (flo.is_negative()) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    Ok(signs)
}

pub fn is_totally_positive(a: &NFElem) -> Result<bool, NfError> {
    Ok(real_embedding_signs(a)?.iter().all(|&s| s > 0))
}

// ---------------------------------------------------------------------------
// mod-p polynomial helpers (u64 coefficients)
// ---------------------------------------------------------------------------

fn pm_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn pm_deg(v: &[u64]) -> usize {
    let mut d = v.len();
    while d > 1 && v[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

fn pm_is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn pm_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    pm_trim(&mut out);
    out
}

fn pm_inv_scalar(a: u64, p: u64) -> u64 {
    let mut r: u64 = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn pm_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = pm_deg(b);
    let lead_inv = pm_inv_scalar(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    pm_trim(&mut r);
    let mut qv = vec![0u64; pm_deg(&r).saturating_sub(db) + 1];
    while !pm_is_zero(&r) && pm_deg(&r) >= db {
        let dr = pm_deg(&r);
        let c = r[dr] * lead_inv % p;
        if c != 0 {
            let shift = dr - db;
            qv[shift] = c;
            for i in 0..=db {
                let sub = c * b[i] % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        pm_trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    pm_trim(&mut qv);
    (qv, r)
}

fn pm_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    // returns (g, s, t) with s a + t b = g
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![0u64]);
    let (mut t0, mut t1) = (vec![0u64], vec![1u64]);
    pm_trim(&mut r0);
    pm_trim(&mut r1);
    while !pm_is_zero(&r1) {
        let (qq, r) = pm_divmod(&r0, &r1, p);
        let new_s = pm_sub(&s0, &pm_mul(&qq, &s1, p), p);
        let new_t = pm_sub(&t0, &pm_mul(&qq, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    (r0, s0, t0)
}

fn pm_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c % p;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c % p) % p;
    }
    pm_trim(&mut out);
    out
}

/// Full factorization of a monic polynomial over GF(p) by trial division,
/// smallest factors (in base-p coefficient order) first.
fn factor_mod_p(f: &[u64], p: u64) -> Vec<(Vec<u64>, u32)> {
    let mut rem: Vec<u64> = f.iter().map(|&c| c % p).collect();
    pm_trim(&mut rem);
    // normalize monic
    let d = pm_deg(&rem);
    if rem[d] != 1 {
        let inv = pm_inv_scalar(rem[d], p);
        for c in rem.iter_mut() {
            *c = *c * inv % p;
        }
    }
    let mut out: Vec<(Vec<u64>, u32)> = Vec::new();
    let mut deg = 1usize;
    while pm_deg(&rem) > 0 {
        if deg > pm_deg(&rem) / 2 {
            // remainder is irreducible
            out.push((rem.clone(), 1));
            break;
        }
        let count = p.pow(deg as u32);
        let mut found = false;
        'cand: for v in 0..count {
            let mut g = vec![0u64; deg + 1];
            let mut x = v;
            for gi in g.iter_mut().take(deg) {
                *gi = x % p;
                x /= p;
            }
            g[deg] = 1;
            let (_, r) = pm_divmod(&rem, &g, p);
            if pm_is_zero(&r) {
                // must itself be irreducible: no factor of smaller degree was
                // found earlier, so g is irreducible; divide out with multiplicity
                let mut e = 0u32;
                loop {
                    let (qq, rr) = pm_divmod(&rem, &g, p);
                    if pm_is_zero(&rr) {
                        rem = qq;
                        e += 1;
                    } else {
                        break;
                    }
                }
                out.push((g, e));
                found = true;
                break 'cand;
            }
        }
        if !found {
            deg += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// prime ideals and residue maps
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct PrimeIdeal {
    field: NumberField,
    p: u64,
    /// Monic irreducible factor of the defining polynomial mod p, lsc-first.
    factor_poly: Vec<u64>,
    e: u32,
    f: usize,
    label: String,
    generator: Option<NFElem>,
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PrimeIdeal({} above {} in {}, e={}, f={})",
            self.label, self.p, self.field.0.label, self.e, self.f
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplittingType::Split => write!(f, "split"),
            SplittingType::Inert => write!(f, "inert"),
            SplittingType::Ramified => write!(f, "ramified"),
        }
    }
}

impl PrimeIdeal {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_degree(&self) -> usize {
        self.f
    }

    pub fn ramification_index(&self) -> u32 {
        self.e
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn factor_poly(&self) -> &[u64] {
        &self.factor_poly
    }

    pub fn generator(&self) -> Option<&NFElem> {
        self.generator.as_ref()
    }

    /// GF(p^f) with the factor polynomial as modulus; theta maps to the class of x.
    pub fn residue_field(&self) -> FiniteField {
        FiniteField::with_modulus(self.p, self.f, self.factor_poly.clone())
            .expect("factor polynomial is irreducible mod p")
    }

    pub fn residue_map(&self, a: &NFElem) -> Result<FieldElement, NfError> {
        if a.field() != &self.field {
            return Err(NfError::FieldMismatch);
        }
        let rf = self.residue_field();
        let theta_bar = rf.generator();
        let p = self.p;
        let mut out = rf.zero();
        let mut pw = rf.one();
        for c in &a.coeffs {
            let den = bigint_mod_u64(c.denom(), p);
            if den == 0 {
                return Err(NfError::NonIntegral);
            }
            let num = bigint_mod_u64(c.numer(), p);
            let scalar = num * pm_inv_scalar(den, p) % p;
            out = out.add(&pw.mul(&rf.from_int(scalar)));
            pw = pw.mul(&theta_bar);
        }
        Ok(out)
    }

    /// v_P(a), supporting negative valuations for denominators.
    pub fn valuation(&self, a: &NFElem) -> Result<i64, NfError> {
        if a.is_zero() {
            return Err(NfError::ZeroArgument);
        }
        if self.e == 1 {
            Ok(self.local_expansion(a, 1)?.0)
        } else {
            self.valuation_ramified(a)
        }
    }

    /// Valuation at a ramified ideal: requires the ideal to be the unique one
    /// above p (e*f = field degree), and uses v_p of the rational norm.
    fn valuation_ramified(&self, a: &NFElem) -> Result<i64, NfError> {
        let m = self.field.degree();
        if (self.e as usize) * self.f != m {
            return Err(NfError::UnsupportedValuation(
                "ramified ideal is not the unique prime above p".into(),
            ));
        }
        let n = self.field.norm(a);
        let p = BigInt::from(self.p);
        let vnum = bigint_valuation(n.numer(), &p);
        let vden = bigint_valuation(n.denom(), &p);
        let vn = vnum - vden;
        if vn % (self.f as i64) != 0 {
            return Err(NfError::UnsupportedValuation(
                "norm valuation not divisible by the residue degree".into(),
            ));
        }
        Ok(vn / self.f as i64)
    }

    /// For unramified ideals: (valuation v, unit-part coefficients mod
    /// p^prec over the local basis 1, x, ..., x^(f-1)), via Hensel lifting of
    /// the factor polynomial. `prec` is the number of p-adic digits wanted on
    /// the unit part.
    fn local_expansion(&self, a: &NFElem, prec: u32) -> Result<(i64, Vec<u64>), NfError> {
        debug_assert_eq!(self.e, 1);
        let p = BigInt::from(self.p);
        // a = eta / den with eta an integer polynomial
        let mut den = BigInt::one();
        for c in &a.coeffs {
            den = lcm_big(&den, c.denom());
        }
        let eta: Vec<BigInt> = a
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let vden = bigint_valuation(&den, &p);
        let den_unit = &den / p.pow(vden as u32);

        let mut digits = 8u32;
        loop {
            let modulus = p.pow(digits);
            let ghat = self.hensel_lift_factor(digits);
            // eta mod (ghat, p^digits)
            let r = bp_rem(&eta, &ghat, &modulus);
            let mut minv: Option<i64> = None;
            for c in &r {
                if !c.is_zero() {
                    let v = bigint_valuation(c, &p);
                    minv = Some(minv.map_or(v, |m| m.min(v)));
                }
            }
            let Some(v_eta) = minv else {
                // eta = 0 mod p^digits everywhere: valuation at least digits;
                // the element is nonzero so some conjugate coordinate is
                // nonzero -- raise precision
                if digits > 256 {
                    return Err(NfError::UnsupportedValuation(
                        "valuation exceeds the precision cap".into(),
                    ));
                }
                digits *= 2;
                continue;
            };
            if v_eta as u32 + prec + 1 > digits {
                digits *= 2;
                if digits > 512 {
                    return Err(NfError::UnsupportedValuation(
                        "valuation exceeds the precision cap".into(),
                    ));
                }
                continue;
            }
            // unit part of eta: coefficients / p^v_eta, then divide by the
            // unit part of the denominator, all mod p^prec
            let small = p.pow(prec);
            let pv = p.pow(v_eta as u32);
            let den_inv = mod_inverse_big(&den_unit, &small);
            let mut unit = vec![0u64; self.f];
            for (i, c) in r.iter().enumerate() {
                if i >= self.f {
                    break;
                }
                let digit = ((c / &pv) * &den_inv) % &small;
                unit[i] = bigint_mod_u64(&digit, self.p.pow(prec));
            }
            return Ok((v_eta - vden, unit));
        }
    }

    /// Hensel-lift the factor polynomial g of f mod p to a factor mod
    /// p^digits; requires gcd(g, f/g) = 1 mod p (true when e = 1).
    fn hensel_lift_factor(&self, digits: u32) -> Vec<BigInt> {
        let p = self.p;
        let fp: Vec<u64> = self.field.0.poly.iter().map(|c| bigint_mod_u64(c, p)).collect();
        let g0 = self.factor_poly.clone();
        let (h0, r) = pm_divmod(&fp, &g0, p);
        debug_assert!(pm_is_zero(&r));
        let (gcd, s, t) = pm_ext_gcd(&g0, &h0, p);
        debug_assert_eq!(pm_deg(&gcd), 0);
        let ginv = pm_inv_scalar(gcd[0], p);
        let _ = s;
        // only the h-side Bezout cofactor is needed for the update step
        let bez_h: Vec<u64> = t.iter().map(|&c| c * ginv % p).collect();

        let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
        let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
        let pbig = BigInt::from(p);
        let mut pk = pbig.clone();
        for _ in 1..digits {
            // d = (f - g h) / p^k mod p
            let prod = bp_mul_plain(&g, &h);
            let mut d = vec![0u64; self.field.0.poly.len()];
            for (i, c) in self.field.0.poly.iter().enumerate() {
                let diff = c - prod.get(i).cloned().unwrap_or_else(BigInt::zero);
                d[i] = bigint_mod_u64(&(&diff / &pk), p);
            }
            let mut dv = d;
            pm_trim(&mut dv);
            // u = (bez_h * d) mod g0; w = (d - u h0) / g0, all mod p
            let (_, u) = pm_divmod(&pm_mul(&bez_h, &dv, p), &g0, p);
            let uh = pm_mul(&u, &h0, p);
            let diff = pm_sub(&dv, &uh, p);
            let (w, wr) = pm_divmod(&diff, &g0, p);
            debug_assert!(pm_is_zero(&wr));
            for (i, &c) in u.iter().enumerate() {
                if i < g.len() {
                    g[i] += &pk * BigInt::from(c);
                }
            }
            for (i, &c) in w.iter().enumerate() {
                if i >= h.len() {
                    h.resize(i + 1, BigInt::zero());
                }
                h[i] += &pk * BigInt::from(c);
            }
            pk *= &pbig;
        }
        g
    }

    /// Behavior of this ideal in K[sqrt(delta)] / K.
    pub fn splitting_type(&self, delta: &NFElem) -> Result<SplittingType, NfError> {
        if delta.is_zero() {
            return Err(NfError::ZeroArgument);
        }
        if is_square_in_field(delta)? {
            // K[sqrt(square)] = K + K: every prime splits
            return Ok(SplittingType::Split);
        }
        if self.p == 2 {
            return self.splitting_type_dyadic(delta);
        }
        let v = self.valuation(delta)?;
        if v.rem_euclid(2) == 1 {
            return Ok(SplittingType::Ramified);
        }
        // residue of the unit part
        let unit_res = self.unit_residue(delta, v)?;
        if gf_is_square(&unit_res)? {
            Ok(SplittingType::Split)
        } else {
            Ok(SplittingType::Inert)
        }
    }

    /// Residue in GF(p^f) of delta divided by a valuation-v uniformizer power.
    fn unit_residue(&self, delta: &NFElem, v: i64) -> Result<FieldElement, NfError> {
        if self.e == 1 {
            let (_, unit) = self.local_expansion(delta, 1)?;
            let rf = self.residue_field();
            let el = rf.element(&unit);
            if el.is_zero() {
                return Err(NfError::UnsupportedValuation("unit part vanished".into()));
            }
            Ok(el)
        } else {
            let gamma = self.generator.as_ref().ok_or_else(|| {
                NfError::UnsupportedValuation(
                    "ramified ideal needs an explicit generator for unit residues".into(),
                )
            })?;
            let unit = delta.mul(&gamma.pow(-v)?);
            let r = self.residue_map(&unit)?;
            if r.is_zero() {
                return Err(NfError::UnsupportedValuation("unit part vanished".into()));
            }
            Ok(r)
        }
    }

    /// Dyadic splitting: square test at precision P^(2e+1) with e = 1, i.e.
    /// in the Galois ring (Z/8)[x]/(ghat). Ramified dyadic ideals (e > 1)
    /// are not supported; the bundled fields all have 2 unramified.
    fn splitting_type_dyadic(&self, delta: &NFElem) -> Result<SplittingType, NfError> {
        if self.e != 1 {
            return Err(NfError::UnsupportedValuation(
                "dyadic splitting implemented for unramified 2 only".into(),
            ));
        }
        let (v, unit) = self.local_expansion(delta, 3)?;
        if v.rem_euclid(2) == 1 {
            return Ok(SplittingType::Ramified);
        }
        let ghat = self.hensel_lift_factor(3);
        let ring = GaloisRing::new(ghat.iter().map(|c| bigint_mod_u64(c, 8) as i64).collect());
        let u: Vec<i64> = unit.iter().map(|&c| (c % 8) as i64).collect();
        if ring.unit_is_square(&u) {
            return Ok(SplittingType::Split);
        }
        // try the unramified quadratic extension
        let big = FiniteField::new(2, 2 * self.f)?;
        let hhat: Vec<i64> = big.modulus().iter().map(|&c| c as i64).collect();
        let ring2 = GaloisRing::new(hhat);
        let u2 = ring2.embed_from(&ring, &u);
        if ring2.unit_is_square(&u2) {
            Ok(SplittingType::Inert)
        } else {
            Ok(SplittingType::Ramified)
        }
    }

    /// Independent valuation oracle for testing: repeated exact division by
    /// the ideal generator, with integrality decided by the characteristic
    /// polynomial. Requires an integral element and a generator.
    pub fn valuation_by_division(&self, a: &NFElem) -> Result<i64, NfError> {
        let gamma = self
            .generator
            .as_ref()
            .ok_or_else(|| NfError::UnsupportedValuation("no generator".into()))?;
        if !a.is_integral() {
            return Err(NfError::NonIntegral);
        }
        let mut v = 0i64;
        let mut cur = a.clone();
        loop {
            let next = cur.div(gamma)?;
            if next.is_integral() {
                v += 1;
                cur = next;
            } else {
                return Ok(v);
            }
        }
    }
}

fn bigint_valuation(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> BigInt {
    // extended Euclid; a coprime to m
    let (mut r0, mut r1) = (m.clone(), a.mod_floor_big(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let qq = &r0 / &r1;
        let r = &r0 - &qq * &r1;
        let s = &s0 - &qq * &s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    assert!(r0.is_one(), "not invertible");
    s0.mod_floor_big(m)
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}
impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

fn bp_mul_plain(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Remainder of a by monic m, coefficients reduced mod `modulus`.
fn bp_rem(a: &[BigInt], m: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let dm = m.len() - 1;
    let mut r: Vec<BigInt> = a.iter().map(|c| c.mod_floor_big(modulus)).collect();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        for i in 0..dm {
            let t = (&lead * &m[i]).mod_floor_big(modulus);
            r[shift + i] = (&r[shift + i] - t).mod_floor_big(modulus);
        }
    }
    while r.len() < dm.max(1) {
        r.push(BigInt::zero());
    }
    r
}

// ---------------------------------------------------------------------------
// Galois rings (Z/8)[x]/(ghat) for the dyadic square test
// ---------------------------------------------------------------------------

struct GaloisRing {
    /// Monic modulus over Z/8, lsc-first.
    modulus: Vec<i64>,
    f: usize,
    /// Residue field GF(2^f) with modulus = ghat mod 2.
    gf: FiniteField,
}

impl GaloisRing {
    fn new(modulus: Vec<i64>) -> GaloisRing {
        let f = modulus.len() - 1;
        let m2: Vec<u64> = modulus.iter().map(|&c| (c.rem_euclid(2)) as u64).collect();
        let gf = FiniteField::with_modulus(2, f, m2).expect("modulus irreducible mod 2");
        GaloisRing { modulus, f, gf }
    }

    fn reduce(&self, a: &[i64]) -> Vec<i64> {
        let dm = self.f;
        let mut r: Vec<i64> = a.iter().map(|&c| c.rem_euclid(8)).collect();
        while r.len() > dm {
            let lead = r.pop().unwrap();
            if lead == 0 {
                continue;
            }
            let shift = r.len() - dm;
            for i in 0..dm {
                r[shift + i] = (r[shift + i] - lead * self.modulus[i]).rem_euclid(8);
            }
        }
        r.resize(dm.max(1), 0);
        r
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj).rem_euclid(8);
            }
        }
        self.reduce(&out)
    }

    fn to_gf(&self, a: &[i64]) -> FieldElement {
        let coeffs: Vec<u64> = a.iter().map(|&c| (c.rem_euclid(2)) as u64).collect();
        self.gf.element(&coeffs)
    }

    fn lift(&self, a: &FieldElement) -> Vec<i64> {
        let mut out: Vec<i64> = a.coeffs().iter().map(|&c| c as i64).collect();
        out.resize(self.f.max(1), 0);
        out
    }

    /// Inverse of a unit by Newton lifting from the residue field.
    fn inverse(&self, a: &[i64]) -> Vec<i64> {
        let a2 = self.to_gf(a);
        let inv2 = a2.inverse().expect("unit");
        let mut v = self.lift(&inv2);
        for _ in 0..2 {
            // v <- v (2 - a v)
            let av = self.mul(a, &v);
            let mut two_minus: Vec<i64> = av.iter().map(|&c| (-c).rem_euclid(8)).collect();
            two_minus[0] = (two_minus[0] + 2).rem_euclid(8);
            v = self.mul(&v, &two_minus);
        }
        v
    }

    /// Is the unit u a square in this Galois ring GR(8, f)?
    fn unit_is_square(&self, u: &[i64]) -> bool {
        let ubar = self.to_gf(u);
        debug_assert!(!ubar.is_zero());
        // square root mod 2 by the inverse Frobenius: c = ubar^(2^(f-1))
        let mut c = ubar.clone();
        for _ in 1..self.f {
            c = c.square();
        }
        let clift = self.lift(&c);
        let c2 = self.mul(&clift, &clift);
        let t = self.mul(u, &self.inverse(&c2));
        // t = 1 mod 2; square iff t = 1 mod 4 and Tr((t-1)/4) = 0
        let mut t1 = t.clone();
        t1[0] = (t1[0] - 1).rem_euclid(8);
        if t1.iter().any(|&c| c % 4 != 0) {
            return false;
        }
        let vprime: Vec<u64> = t1.iter().map(|&c| ((c / 4) % 2) as u64).collect();
        let v = self.gf.element(&vprime);
        crate::gf::artin_schreier_class(&v).expect("char 2")
    }

    /// Embed an element of the smaller ring via a lifted root of its modulus.
    fn embed_from(&self, small: &GaloisRing, a: &[i64]) -> Vec<i64> {
        // root of small.modulus mod 2 inside self.gf
        let ghat_mod2: Vec<u64> = small.modulus.iter().map(|&c| (c.rem_euclid(2)) as u64).collect();
        let root0 = self
            .gf
            .elements()
            .find(|x| {
                let mut acc = self.gf.zero();
                for &c in ghat_mod2.iter().rev() {
                    acc = acc.mul(x).add(&self.gf.from_int(c));
                }
                acc.is_zero()
            })
            .expect("subring modulus has a root in the quadratic extension");
        let mut r = self.lift(&root0);
        // Newton: r <- r - ghat(r)/ghat'(r), two steps (2 -> 4 -> 8)
        let eval = |x: &[i64], poly: &[i64]| -> Vec<i64> {
            let mut acc = vec![0i64];
            for &c in poly.iter().rev() {
                acc = self.mul(&acc, x);
                acc[0] = (acc[0] + c).rem_euclid(8);
            }
            acc
        };
        let gprime: Vec<i64> = (1..small.modulus.len())
            .map(|i| (small.modulus[i] * i as i64).rem_euclid(8))
            .collect();
        for _ in 0..2 {
            let num = eval(&r, &small.modulus);
            let den = eval(&r, &gprime);
            let step = self.mul(&num, &self.inverse(&den));
            for i in 0..r.len() {
                r[i] = (r[i] - step[i]).rem_euclid(8);
            }
        }
        // a(r)
        eval(&r, a)
    }
}

// ---------------------------------------------------------------------------
// square classes in K
// ---------------------------------------------------------------------------

/// Exact square test in K. Rational elements are decided exactly; otherwise
/// a candidate square root is reconstructed from the real embeddings and
/// verified exactly, so a `true` answer is always sound. Requires a totally
/// real field for irrational elements.
pub fn is_square_in_field(a: &NFElem) -> Result<bool, NfError> {
    if a.is_zero() {
        return Ok(true);
    }
    if let Some(r) = a.as_rational() {
        if r.is_negative() {
            // totally real fields and Q have no square roots of negatives
            return Ok(false);
        }
        if integer_sqrt_exact(r.numer()).is_some() && integer_sqrt_exact(r.denom()).is_some() {
            return Ok(true);
        }
        if a.field().is_rationals() {
            return Ok(false);
        }
        // a non-square rational may still be a square in K: fall through
    }
    let field = a.field();
    if !field.is_totally_real() {
        return Err(NfError::NotTotallyReal);
    }
    if real_embedding_signs(a)?.iter().any(|&s| s < 0) {
        return Ok(false);
    }
    let m = field.degree();
    // real roots as f64
    let roots: Vec<f64> = field
        .0
        .root_intervals
        .iter()
        .map(|(lo, hi)| {
            let mut lo = lo.clone();
            let mut hi = hi.clone();
            for _ in 0..60 {
                let mid = (&lo + &hi) / q(2);
                let fm = qp_eval(&field.0.poly_q, &mid);
                if fm.is_zero() {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                let flo = qp_eval(&field.0.poly_q, &lo);
                if (fm.is_negative()) == (flo.is_negative()) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            ((&lo + &hi) / q(2)).to_f64().unwrap()
        })
        .collect();
    let mut apoly = a.coeffs().to_vec();
    qp_trim(&mut apoly);
    let avals: Vec<f64> = roots
        .iter()
        .map(|&r| {
            let mut acc = 0.0f64;
            for c in apoly.iter().rev() {
                acc = acc * r + c.to_f64().unwrap();
            }
            acc
        })
        .collect();
    if avals.iter().any(|&v| v <= 0.0) {
        return Ok(false);
    }
    let sqrts: Vec<f64> = avals.iter().map(|&v| v.sqrt()).collect();
    for pattern in 0u32..(1 << m) {
        let y: Vec<f64> = (0..m)
            .map(|i| {
                if pattern & (1 << i) != 0 {
                    -sqrts[i]
                } else {
                    sqrts[i]
                }
            })
            .collect();
        // solve Vandermonde: sum_j c_j roots[i]^j = y[i]
        let mut mat: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                let mut row: Vec<f64> = (0..m).map(|j| roots[i].powi(j as i32)).collect();
                row.push(y[i]);
                row
            })
            .collect();
        if !f64_solve(&mut mat, m) {
            continue;
        }
        let coeffs: Option<QPoly> = (0..m).map(|i| rationalize(mat[i][m])).collect();
        let Some(coeffs) = coeffs else { continue };
        let cand = field.from_coeffs(coeffs);
        if cand.mul(&cand) == *a {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn same_square_class(a: &NFElem, b: &NFElem) -> Result<bool, NfError> {
    if a.is_zero() || b.is_zero() {
        return Err(NfError::ZeroArgument);
    }
    is_square_in_field(&a.mul(b))
}

fn f64_solve(mat: &mut [Vec<f64>], n: usize) -> bool {
    for col in 0..n {
        let Some(pr) = (col..n).max_by(|&a, &b| {
            mat[a][col].abs().partial_cmp(&mat[b][col].abs()).unwrap()
        }) else {
            return false;
        };
        if mat[pr][col].abs() < 1e-12 {
            return false;
        }
        mat.swap(col, pr);
        let pv = mat[col][col];
        for c in col..=n {
            mat[col][c] /= pv;
        }
        for r in 0..n {
            if r != col && mat[r][col].abs() > 0.0 {
                let f = mat[r][col];
                for c in col..=n {
                    mat[r][c] -= f * mat[col][c];
                }
            }
        }
    }
    true
}

/// Continued-fraction rational reconstruction of an f64 with a denominator
/// bound; None when no convergent is close enough.
fn rationalize(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..40 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() < 1e-9 * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < 1e-12 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if a > 1e12 {
            break;
        }
        frac = inv - a;
        let (np, nq) = (
            p1.checked_mul(a as i64)?.checked_add(p0)?,
            q1.checked_mul(a as i64)?.checked_add(q0)?,
        );
        p0 = p1;
        q0 = q1;
        p1 = np;
        q1 = nq;
        if q1 > 100_000_000 {
            break;
        }
    }
    let approx = p1 as f64 / q1 as f64;
    ((approx - x).abs() < 1e-9 * (1.0 + x.abs()))
        .then(|| BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}

// ---------------------------------------------------------------------------
// declared square-class generator lists
// ---------------------------------------------------------------------------

/// A square class eps * prod delta_i^(bits_i) over a declared generator list.
#[derive(Clone, Debug)]
pub struct NFSquareClass {
    pub generators: Vec<NFElem>,
    pub bits: Vec<bool>,
    /// Explicit sign unit eps = +-1.
    pub sign: i8,
}

impl NFSquareClass {
    pub fn representative(&self, field: &NumberField) -> NFElem {
        let mut out = field.from_int(self.sign as i64);
        for (g, &b) in self.generators.iter().zip(&self.bits) {
            if b {
                out = out.mul(g);
            }
        }
        out
    }
}

/// Verify that the classes of the generators are GF(2)-linearly independent
/// in K^x / (K^x)^2, using quadratic-residue characters at auxiliary primes
/// coprime to everything in sight. Sound: rank t proves independence.
pub fn validate_generator_independence(
    field: &NumberField,
    gens: &[NFElem],
) -> Result<(), NfError> {
    let t = gens.len();
    if t == 0 {
        return Ok(());
    }
    // primes to avoid: 2, index divisors, primes in generator norms and
    // coefficient denominators
    let mut avoid: Vec<BigInt> = vec![BigInt::from(2), field.0.index.clone()];
    for g in gens {
        let n = field.norm(g);
        avoid.push(n.numer().abs());
        avoid.push(n.denom().clone());
        for c in g.coeffs() {
            avoid.push(c.denom().clone());
        }
    }
    // also avoid primes dividing the power-basis discriminant (keeps e = 1)
    let theta = field.generator_elem();
    let pb: Vec<NFElem> = (0..field.degree())
        .map(|i| theta.pow(i as i64).unwrap())
        .collect();
    let dp = disc_of_basis(&pb);
    avoid.push(dp.numer().abs());

    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut rank = 0usize;
    for p in 3u64..2000 {
        if !is_prime_u64(p) {
            continue;
        }
        let pb = BigInt::from(p);
        if avoid.iter().any(|a| !a.is_zero() && (a % &pb).is_zero()) {
            continue;
        }
        for ideal in field.factor_prime(p)? {
            if p.pow(ideal.f as u32) > crate::gf::MAX_FIELD_ORDER {
                continue;
            }
            let row: Result<Vec<bool>, NfError> = gens
                .iter()
                .map(|g| {
                    let r = ideal.residue_map(g)?;
                    Ok(!gf_is_square(&r)?)
                })
                .collect();
            let row = row?;
            // Gaussian rank accumulation over GF(2)
            let mut v = row.clone();
            for existing in &rows {
                if let Some(lead) = existing.iter().position(|&b| b) {
                    if v[lead] {
                        for i in 0..t {
                            v[i] ^= existing[i];
                        }
                    }
                }
            }
            if v.iter().any(|&b| b) {
                rows.push(v);
                rank += 1;
                if rank == t {
                    return Ok(());
                }
            }
        }
    }
    Err(NfError::IndependenceUnverified(rank, t))
}
