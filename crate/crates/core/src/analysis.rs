//! Structural analysis of verified check matrices: syndrome decoding,
//! a census of weight-3 codewords supported on the last part, and the
//! column permutation induced by multiplying a quasi-cyclic matrix by xi.

use std::collections::HashMap;

use thiserror::Error;

use crate::galois::{RingContext, RingElement};
use crate::matrix::{pack_column, packed_add, packed_scale, CheckMatrix};
use crate::space::{ErrorPattern, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("matrix does not define a 1-perfect code")]
    NotPerfect,
    #[error("the column permutation is defined for matrices with nprime = 0, got nprime = {0}")]
    NPrimeNonzero(usize),
    #[error("ring has delta = {ring_delta} but the matrix has {rows} rows")]
    RingMismatch { ring_delta: usize, rows: usize },
    #[error("columns are not permuted by multiplication by xi: {0}")]
    NotQuasiCyclic(String),
}

/// Syndrome-indexed table mapping every nonzero coset to the weight-1 error
/// it corrects. Built only from matrices that pass full verification, so
/// every vertex is within distance 1 of exactly one codeword.
#[derive(Clone, Debug)]
pub struct DecoderTable {
    matrix: CheckMatrix,
    table: HashMap<u64, ErrorPattern>,
}

impl DecoderTable {
    /// Verifies the matrix and indexes the weight-1 syndromes.
    pub fn new(matrix: &CheckMatrix) -> Result<DecoderTable, AnalysisError> {
        if !matrix.verify_perfect().is_perfect {
            return Err(AnalysisError::NotPerfect);
        }
        let table = matrix
            .coverage_table()
            .into_iter()
            .map(|(s, mut patterns)| {
                (s.packed(), patterns.pop().expect("coverage groups are nonempty"))
            })
            .collect();
        Ok(DecoderTable { matrix: matrix.clone(), table })
    }

    pub fn matrix(&self) -> &CheckMatrix {
        &self.matrix
    }

    /// Nearest codeword to `word`: the word itself when its syndrome is zero,
    /// otherwise the word minus the unique weight-1 error with that syndrome.
    pub fn decode(&self, word: &Vertex) -> Vertex {
        let s = self.matrix.syndrome(word);
        if s.is_zero() {
            return word.clone();
        }
        let e = self.table[&s.packed()].to_vertex(self.matrix.shape());
        word.sub(&e)
    }
}

/// Counts of weight-3 codewords supported entirely on the last part,
/// split by the order of the codeword in the additive group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weight3Counts {
    /// Codewords of order 2: all three nonzero entries equal 2.
    pub order2: u64,
    /// Codewords of order 4: at least one entry is odd.
    pub order4: u64,
}

/// Census of weight-3 codewords whose support lies in the last part of the
/// matrix. A triple of columns i < j < k contributes one codeword for every
/// coefficient choice a, b, c in {1, 2, 3} with a*ci + b*cj + c*ck = 0.
pub fn weight3_last_part(matrix: &CheckMatrix) -> Weight3Counts {
    let cols: Vec<u64> = matrix.right().iter().map(|c| pack_column(c)).collect();
    let multiples: Vec<[u64; 4]> = cols
        .iter()
        .map(|&c| [0, c, packed_scale(c, 2), packed_scale(c, 3)])
        .collect();
    let n = cols.len();
    let mut counts = Weight3Counts { order2: 0, order4: 0 };
    for i in 0..n {
        for j in i + 1..n {
            for a in 1..4u8 {
                for b in 1..4u8 {
                    let ab = packed_add(multiples[i][a as usize], multiples[j][b as usize]);
                    for k in j + 1..n {
                        for c in 1..4u8 {
                            if packed_add(ab, multiples[k][c as usize]) == 0 {
                                if (a, b, c) == (2, 2, 2) {
                                    counts.order2 += 1;
                                } else {
                                    counts.order4 += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    counts
}

/// Column permutation induced by multiplying every column by xi, reported as
/// disjoint cycles over global column indices (first-part columns first,
/// then last-part columns), each cycle starting from its smallest index.
///
/// Requires nprime = 0 and as many rows as the ring degree. The permutation
/// must map first-part column pairs onto column pairs and last-part columns
/// onto last-part columns; otherwise the matrix is reported as not
/// quasi-cyclic.
pub fn quasi_cyclic_permutation(
    matrix: &CheckMatrix,
    ring: &RingContext,
) -> Result<Vec<Vec<usize>>, AnalysisError> {
    let shape = matrix.shape();
    if shape.nprime != 0 {
        return Err(AnalysisError::NPrimeNonzero(shape.nprime));
    }
    if ring.delta() != matrix.rows() {
        return Err(AnalysisError::RingMismatch { ring_delta: ring.delta(), rows: matrix.rows() });
    }

    let columns: Vec<&Vec<u8>> = matrix.left().iter().chain(matrix.right()).collect();
    let mut index: HashMap<&[u8], usize> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        if index.insert(col.as_slice(), j).is_some() {
            return Err(AnalysisError::NotQuasiCyclic(format!(
                "column {j} repeats an earlier column"
            )));
        }
    }

    let xi = ring.xi();
    let nleft = matrix.left().len();
    let mut perm = Vec::with_capacity(columns.len());
    for (j, col) in columns.iter().enumerate() {
        let elem = RingElement::from_coeffs(col.to_vec()).expect("matrix entries fit in Z4");
        let image = ring.mul(&elem, &xi);
        let Some(&target) = index.get(image.coeffs()) else {
            return Err(AnalysisError::NotQuasiCyclic(format!(
                "xi times column {j} is not a column of the matrix"
            )));
        };
        if (j < nleft) != (target < nleft) {
            return Err(AnalysisError::NotQuasiCyclic(format!(
                "xi times column {j} crosses between the first and last parts"
            )));
        }
        perm.push(target);
    }
    // Pairs of the first part must map onto pairs, or the permutation would
    // not act on the Doob graph coordinates.
    for p in 0..nleft / 2 {
        if perm[2 * p] / 2 != perm[2 * p + 1] / 2 {
            return Err(AnalysisError::NotQuasiCyclic(format!(
                "xi splits the column pair {p} across two different pairs"
            )));
        }
    }

    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = perm[j];
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}
