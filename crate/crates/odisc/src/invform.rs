//! Invariant quadratic forms of an explicit matrix representation.
//!
//! Vectors are rows and generators act on the right, x -> x*g, so a form
//! with Gram matrix U (upper triangular, Q(x) = x U x^T) is invariant under
//! g exactly when sym-reduce(g U g^T) = U, where sym-reduce folds a square
//! matrix back to upper-triangular shape: diagonal entries stay, M[i][j] and
//! M[j][i] are added into the (i, j) slot for i < j. Transposition bugs here
//! are silent, so the tests check the fixed-point equation against direct
//! evaluation Q(x*g) = Q(x) on vectors.

use thiserror::Error;

use crate::gf::{FieldElement, FiniteField, GfError};
use crate::quadform::{OType, QfError, QuadraticForm};

const LINEAR_SYSTEM_CAP: usize = 5000;
const CENSUS_CAP: u64 = 1_000_000;
const SAMPLE_SIZE: u64 = 10_000;

#[derive(Debug, Error)]
pub enum InvError {
    #[error("generator {0} is not an invertible {1}x{1} matrix")]
    BadGenerator(usize, usize),
    #[error("linear system too large: {0} unknowns (cap {1})")]
    SystemCap(usize, usize),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Qf(#[from] QfError),
}

pub type Matrix = Vec<Vec<FieldElement>>;

#[derive(Debug, Clone)]
pub struct MatrixRep {
    field: FiniteField,
    dim: usize,
    generators: Vec<Matrix>,
}

impl MatrixRep {
    pub fn new(
        field: &FiniteField,
        dim: usize,
        generators: Vec<Matrix>,
    ) -> Result<MatrixRep, InvError> {
        for (idx, g) in generators.iter().enumerate() {
            let square = g.len() == dim && g.iter().all(|row| row.len() == dim);
            if !square || mat_inverse(field, g).is_none() {
                return Err(InvError::BadGenerator(idx, dim));
            }
        }
        Ok(MatrixRep {
            field: field.clone(),
            dim,
            generators,
        })
    }

    pub fn from_ints(
        field: &FiniteField,
        dim: usize,
        generators: &[Vec<Vec<i64>>],
    ) -> Result<MatrixRep, InvError> {
        let p = field.p() as i64;
        let mats = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|row| {
                        row.iter()
                            .map(|&c| field.from_int(c.rem_euclid(p) as u64))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MatrixRep::new(field, dim, mats)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }
}

pub fn mat_transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// Gauss-Jordan inverse; None for singular input.
pub fn mat_inverse(field: &FiniteField, a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut work: Vec<Vec<FieldElement>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = work[col][col].inverse().ok()?;
        for j in 0..2 * n {
            work[col][j] = work[col][j].mul(&inv);
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let f = work[r][col].clone();
                for j in 0..2 * n {
                    work[r][j] = work[r][j].sub(&f.mul(&work[col][j]));
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the space of G-invariant quadratic forms: the nullspace of
/// sym-reduce(g U g^T) - U = 0 over all generators, with the upper entries
/// of U as unknowns.
pub fn invariant_quadratic_space(rep: &MatrixRep) -> Result<Vec<QuadraticForm>, InvError> {
    let n = rep.dim;
    let field = &rep.field;
    let nvars = n * (n + 1) / 2;
    if nvars > LINEAR_SYSTEM_CAP {
        return Err(InvError::SystemCap(nvars, LINEAR_SYSTEM_CAP));
    }
    // index of upper entry (i, j), i <= j, in row-major order
    let mut index = vec![vec![0usize; n]; n];
    {
        let mut c = 0;
        for i in 0..n {
            for j in i..n {
                index[i][j] = c;
                c += 1;
            }
        }
    }
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for g in &rep.generators {
        for a in 0..n {
            for b in a..n {
                let mut row = vec![field.zero(); nvars];
                for i in 0..n {
                    for j in i..n {
                        // coefficient of u_ij in sym-reduce(gUg^T)[a][b]
                        let mut c = g[a][i].mul(&g[b][j]);
                        if a < b {
                            c = c.add(&g[b][i].mul(&g[a][j]));
                        }
                        row[index[i][j]] = row[index[i][j]].add(&c);
                    }
                }
                row[index[a][b]] = row[index[a][b]].sub(&field.one());
                rows.push(row);
            }
        }
    }
    let null = nullspace(field, &mut rows, nvars);
    let mut out = Vec::new();
    for v in null {
        let mut upper = vec![vec![field.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                upper[i][j] = v[index[i][j]].clone();
            }
        }
        out.push(QuadraticForm::new(field.clone(), upper)?);
    }
    Ok(out)
}

/// Nullspace basis of the row system (rows may be empty: full space).
fn nullspace(field: &FiniteField, rows: &mut Vec<Vec<FieldElement>>, nvars: usize) -> Vec<Vec<FieldElement>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        for j in 0..nvars {
            rows[rank][j] = rows[rank][j].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for j in 0..nvars {
                    rows[r][j] = rows[r][j].sub(&f.mul(&rows[rank][j]));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..nvars {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); nvars];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub oplus: u64,
    pub ominus: u64,
    pub degenerate: u64,
    /// True when the space was too large to enumerate and the census is a
    /// lower bound from random sampling.
    pub sampled: bool,
}

/// Classify every member of the invariant form space (the zero form counts
/// as degenerate). Spaces larger than 10^6 members are sampled instead.
pub fn classify_invariant_forms(rep: &MatrixRep) -> Result<Census, InvError> {
    let basis = invariant_quadratic_space(rep)?;
    let field = &rep.field;
    let q = field.order();
    let r = basis.len() as u32;
    let mut census = Census::default();
    if basis.is_empty() {
        census.degenerate = 1; // the zero form
        return Ok(census);
    }
    let exhaustive = (q as f64).powi(r as i32) <= CENSUS_CAP as f64;
    let n = rep.dim;
    let mut tally = |coeffs: &[FieldElement]| -> Result<(), InvError> {
        let mut upper = vec![vec![field.zero(); n]; n];
        for (b, c) in basis.iter().zip(coeffs) {
            for i in 0..n {
                for j in i..n {
                    upper[i][j] = upper[i][j].add(&b.upper()[i][j].mul(c));
                }
            }
        }
        let form = QuadraticForm::new(field.clone(), upper)?;
        if !form.is_nondegenerate() {
            census.degenerate += 1;
        } else {
            match form.classify() {
                Ok(OType::OPlus) => census.oplus += 1,
                Ok(OType::OMinus) => census.ominus += 1,
                Err(_) => census.degenerate += 1,
            }
        }
        Ok(())
    };
    if exhaustive {
        let total = q.pow(r);
        for mut idx in 0..total {
            let mut coeffs = Vec::with_capacity(r as usize);
            for _ in 0..r {
                coeffs.push(field.element_by_index(idx % q));
                idx /= q;
            }
            tally(&coeffs)?;
        }
    } else {
        census.sampled = true;
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = || {
            // xorshift64*, deterministic so reports are reproducible
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            state.wrapping_mul(0x2545f4914f6cdd1d)
        };
        for _ in 0..SAMPLE_SIZE {
            let coeffs: Vec<FieldElement> =
                (0..r).map(|_| field.element_by_index(next() % q)).collect();
            tally(&coeffs)?;
        }
    }
    Ok(census)
}
