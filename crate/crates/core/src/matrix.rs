//! Check matrices over Z4 and the 1-perfect verification procedure.
//!
//! A matrix (A | A′ | A″) with r rows has 2m columns over Z4 in the left
//! block, 2n′ columns over Z2 in the middle block, and n″ columns over Z4 on
//! the right.  The syndrome of a vertex (z1, z2, z3) is
//! A·z1ᵀ + 2A′·z2ᵀ + A″·z3ᵀ over Z4, and the code is the syndrome kernel.
//!
//! The code is 1-perfect in D(m, n′+n″) precisely when no column is zero, no
//! weight-1 vertex has syndrome zero, no two weight-1 vertices share a
//! syndrome, and the syndromes of the weight-1 vertices together with zero
//! exhaust the subgroup of Z4^r generated by the columns.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::space::{enumerate_weight1, ErrorPattern, Shape, Vertex};

/// Row cap keeping a syndrome packed in a u64 at two bits per row.
pub const MAX_ROWS: usize = 31;

/// Cap on total stored coordinates (2m + 2n′ + n″) of a single matrix.
pub const MAX_COORDS: usize = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("a matrix needs between 1 and {MAX_ROWS} rows, got {0}")]
    BadRowCount(usize),
    #[error("the {0} block must have an even number of columns")]
    OddBlockWidth(&'static str),
    #[error("column {index} of the {block} block has {got} entries, expected {expected}")]
    ColumnLength { block: &'static str, index: usize, got: usize, expected: usize },
    #[error("column {index} of the {block} block holds an entry above {max}")]
    EntryRange { block: &'static str, index: usize, max: u8 },
}

/// Syndrome vector in Z4^r, stored top row first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SyndromeVector(Vec<u8>);

impl SyndromeVector {
    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn from_packed(packed: u64, rows: usize) -> SyndromeVector {
        SyndromeVector((0..rows).map(|j| ((packed >> (2 * j)) & 3) as u8).collect())
    }

    pub(crate) fn packed(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &e)| acc | ((e as u64) << (2 * j)))
    }
}

impl fmt::Display for SyndromeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Columnwise sum of two packed Z4 vectors: xor plus a carry into the high
/// bit of every lane whose low bits overlap.
#[inline]
pub(crate) fn packed_add(a: u64, b: u64) -> u64 {
    const LOW: u64 = 0x5555_5555_5555_5555;
    (a ^ b) ^ ((a & b & LOW) << 1)
}

#[inline]
pub(crate) fn packed_scale(col: u64, k: u8) -> u64 {
    match k & 3 {
        0 => 0,
        1 => col,
        2 => packed_add(col, col),
        _ => packed_add(packed_add(col, col), col),
    }
}

pub(crate) fn pack_column(col: &[u8]) -> u64 {
    col.iter()
        .enumerate()
        .fold(0u64, |acc, (j, &e)| acc | ((e as u64) << (2 * j)))
}

/// A check matrix (A | A′ | A″).  Columns are stored column-major; middle
/// entries live in {0, 1} and act through doubling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckMatrix {
    rows: usize,
    left: Vec<Vec<u8>>,
    middle: Vec<Vec<u8>>,
    right: Vec<Vec<u8>>,
    packed_left: Vec<u64>,
    packed_middle2: Vec<u64>,
    packed_right: Vec<u64>,
}

impl CheckMatrix {
    pub fn new(
        rows: usize,
        left: Vec<Vec<u8>>,
        middle: Vec<Vec<u8>>,
        right: Vec<Vec<u8>>,
    ) -> Result<CheckMatrix, MatrixError> {
        if rows == 0 || rows > MAX_ROWS {
            return Err(MatrixError::BadRowCount(rows));
        }
        for (name, block, max) in [("left", &left, 3u8), ("middle", &middle, 1), ("right", &right, 3)] {
            if name != "right" && block.len() % 2 != 0 {
                return Err(MatrixError::OddBlockWidth(name));
            }
            for (index, col) in block.iter().enumerate() {
                if col.len() != rows {
                    return Err(MatrixError::ColumnLength {
                        block: name,
                        index,
                        got: col.len(),
                        expected: rows,
                    });
                }
                if col.iter().any(|&e| e > max) {
                    return Err(MatrixError::EntryRange { block: name, index, max });
                }
            }
        }
        let packed_left = left.iter().map(|c| pack_column(c)).collect();
        let packed_middle2 = middle
            .iter()
            .map(|c| {
                let doubled: Vec<u8> = c.iter().map(|&e| e * 2).collect();
                pack_column(&doubled)
            })
            .collect();
        let packed_right = right.iter().map(|c| pack_column(c)).collect();
        Ok(CheckMatrix { rows, left, middle, right, packed_left, packed_middle2, packed_right })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.left.len() / 2, self.middle.len() / 2, self.right.len())
    }

    pub fn left(&self) -> &[Vec<u8>] {
        &self.left
    }

    pub fn middle(&self) -> &[Vec<u8>] {
        &self.middle
    }

    pub fn right(&self) -> &[Vec<u8>] {
        &self.right
    }

    /// Syndrome of a vertex whose shape matches the matrix.
    pub fn syndrome(&self, v: &Vertex) -> SyndromeVector {
        assert_eq!(v.shape(), self.shape(), "vertex shape mismatch");
        let mut acc = 0u64;
        for (p, &(x, y)) in v.z4pairs.iter().enumerate() {
            acc = packed_add(acc, packed_scale(self.packed_left[2 * p], x));
            acc = packed_add(acc, packed_scale(self.packed_left[2 * p + 1], y));
        }
        for (p, &(a, b)) in v.z2pairs.iter().enumerate() {
            acc = packed_add(acc, packed_scale(self.packed_middle2[2 * p], a));
            acc = packed_add(acc, packed_scale(self.packed_middle2[2 * p + 1], b));
        }
        for (c, &z) in v.z4coords.iter().enumerate() {
            acc = packed_add(acc, packed_scale(self.packed_right[c], z));
        }
        SyndromeVector::from_packed(acc, self.rows)
    }

    fn packed_pattern_syndrome(&self, e: &ErrorPattern) -> u64 {
        match *e {
            ErrorPattern::Z4Pair { pair, x, y } => packed_add(
                packed_scale(self.packed_left[2 * pair], x),
                packed_scale(self.packed_left[2 * pair + 1], y),
            ),
            ErrorPattern::Z2Pair { pair, v, w } => packed_add(
                packed_scale(self.packed_middle2[2 * pair], v),
                packed_scale(self.packed_middle2[2 * pair + 1], w),
            ),
            ErrorPattern::Z4Single { coord, z } => packed_scale(self.packed_right[coord], z),
        }
    }

    /// Syndromes of all weight-1 vertices, grouped by syndrome value.
    pub fn coverage_table(&self) -> BTreeMap<SyndromeVector, Vec<ErrorPattern>> {
        let mut table: BTreeMap<SyndromeVector, Vec<ErrorPattern>> = BTreeMap::new();
        for e in enumerate_weight1(self.shape()) {
            let s = SyndromeVector::from_packed(self.packed_pattern_syndrome(&e), self.rows);
            table.entry(s).or_default().push(e);
        }
        table
    }

    fn packed_columns(&self) -> impl Iterator<Item = u64> + '_ {
        self.packed_left
            .iter()
            .chain(&self.packed_middle2)
            .chain(&self.packed_right)
            .copied()
    }

    fn packed_subgroup(&self) -> HashSet<u64> {
        let mut sub = HashSet::from([0u64]);
        for g in self.packed_columns() {
            if sub.contains(&g) {
                continue;
            }
            // Close sub under adding multiples of g; each generator at most
            // quadruples the set, so the loop stays linear in the output.
            let snapshot: Vec<u64> = sub.iter().copied().collect();
            for base in snapshot {
                let mut cur = base;
                for _ in 0..3 {
                    cur = packed_add(cur, g);
                    sub.insert(cur);
                }
            }
        }
        sub
    }

    /// The subgroup of Z4^r generated by the columns (middle columns doubled).
    pub fn syndrome_subgroup(&self) -> BTreeSet<SyndromeVector> {
        self.packed_subgroup()
            .into_iter()
            .map(|p| SyndromeVector::from_packed(p, self.rows))
            .collect()
    }

    /// Full 1-perfect check; see the module doc for the four conditions.
    pub fn verify_perfect(&self) -> VerificationReport {
        let shape = self.shape();
        let zero_columns: Vec<usize> = self
            .packed_columns()
            .enumerate()
            .filter(|&(_, c)| c == 0)
            .map(|(i, _)| i)
            .collect();

        let mut cover: HashMap<u64, Vec<ErrorPattern>> = HashMap::new();
        let patterns = enumerate_weight1(shape);
        let weight1_count = patterns.len() as u64;
        for e in patterns {
            cover.entry(self.packed_pattern_syndrome(&e)).or_default().push(e);
        }
        let zero_syndrome_patterns = cover.remove(&0).unwrap_or_default();
        let mut duplicate_syndromes: Vec<(SyndromeVector, Vec<ErrorPattern>)> = cover
            .into_iter()
            .filter(|(_, v)| v.len() > 1)
            .map(|(p, v)| (SyndromeVector::from_packed(p, self.rows), v))
            .collect();
        duplicate_syndromes.sort_by(|a, b| a.0.cmp(&b.0));

        let subgroup_size = self.packed_subgroup().len() as u64;
        let is_perfect = zero_columns.is_empty()
            && zero_syndrome_patterns.is_empty()
            && duplicate_syndromes.is_empty()
            && weight1_count + 1 == subgroup_size;
        VerificationReport {
            is_perfect,
            rows: self.rows,
            shape,
            weight1_count,
            subgroup_size,
            zero_columns,
            duplicate_syndromes,
            zero_syndrome_patterns,
        }
    }

    /// Number of codewords: |space| / |syndrome subgroup|.
    pub fn code_cardinality(&self) -> BigUint {
        let size = BigUint::from(1u8) << self.shape().log2_size();
        size / BigUint::from(self.packed_subgroup().len() as u64)
    }
}

/// Outcome of `verify_perfect`, with enough detail to locate any defect.
/// Column indices count globally: left block, then middle, then right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub is_perfect: bool,
    pub rows: usize,
    pub shape: Shape,
    pub weight1_count: u64,
    pub subgroup_size: u64,
    pub zero_columns: Vec<usize>,
    /// Nonzero syndromes reached by more than one weight-1 vertex.
    pub duplicate_syndromes: Vec<(SyndromeVector, Vec<ErrorPattern>)>,
    /// Weight-1 vertices lying in the code itself.
    pub zero_syndrome_patterns: Vec<ErrorPattern>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "perfect: {}", self.is_perfect)?;
        writeln!(f, "rows={} {}", self.rows, self.shape)?;
        writeln!(f, "weight1={}", self.weight1_count)?;
        writeln!(f, "subgroup={}", self.subgroup_size)?;
        if self.zero_columns.is_empty() {
            writeln!(f, "zero_columns=none")?;
        } else {
            let list: Vec<String> = self.zero_columns.iter().map(|c| c.to_string()).collect();
            writeln!(f, "zero_columns={}", list.join(","))?;
        }
        if self.duplicate_syndromes.is_empty() {
            writeln!(f, "duplicate_syndromes=none")?;
        } else {
            let (syn, pats) = &self.duplicate_syndromes[0];
            let pats: Vec<String> = pats.iter().map(|p| p.to_string()).collect();
            writeln!(
                f,
                "duplicate_syndromes={} (e.g. {}: {})",
                self.duplicate_syndromes.len(),
                syn,
                pats.join(", ")
            )?;
        }
        if self.zero_syndrome_patterns.is_empty() {
            write!(f, "zero_syndrome_errors=none")?;
        } else {
            let pats: Vec<String> =
                self.zero_syndrome_patterns.iter().map(|p| p.to_string()).collect();
            write!(f, "zero_syndrome_errors={}", pats.join(", "))?;
        }
        Ok(())
    }
}
