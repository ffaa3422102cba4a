//! Constructions of additive 1-perfect codes in Doob graphs.
//!
//! Shapes come from the admissibility conditions: for even Γ ≥ 0 and Δ ≥ 2,
//!
//! ```text
//! 2m + n′ + n″ = (2^(Γ+2Δ) − 1)/3,    3n′ + n″ = 2^(Γ+Δ) − 1,
//! n″ ≤ 2^Δ − 1,  n″ ≠ 1.
//! ```
//!
//! For odd Δ every admissible shape is reached by a chain: the literal
//! (8,1,4) base, a Δ→Δ+2 recursion (`delta_step`), a replacement trading one
//! middle pair for three right columns (`increase_npp`), and a Γ-extension
//! appending order-2 rows (`gamma_step`).  Independently, `quasi_cyclic`
//! builds the three Frobenius-orbit matrices for Δ ∈ {3, 5, 7} whose column
//! sets are closed under multiplication by ξ.

use std::fmt;

use thiserror::Error;

use crate::galois::{halve_order2, RingContext, RingElement, RingError};
use crate::matrix::{CheckMatrix, MatrixError, MAX_COORDS, MAX_ROWS};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("ring has delta {ring_delta} but the matrix has {rows} rows")]
    RingMismatch { ring_delta: usize, rows: usize },
    #[error("{role} must be a unit (some odd coefficient)")]
    NonUnit { role: &'static str },
    #[error("row {0} has order 2 (every Z4 entry even); the construction needs order-4 rows")]
    Order2Row(usize),
    #[error("gamma must be even and at least 2, got {0}")]
    BadGamma(u32),
    #[error("modulus must be odd, got {0}")]
    EvenModulus(u64),
    #[error("cannot consume {requested} middle pairs; only {available} available")]
    NotEnoughMiddlePairs { requested: usize, available: usize },
    #[error("no left pair matches the doubled coverage of middle pair ({0}, {1})")]
    NoMatchingPair(String, String),
    #[error("unsupported delta {0}; the chain covers odd delta 3..=9 (3..=7 when gamma > 0)")]
    UnsupportedDelta(u32),
    #[error("no admissible shape with gamma={gamma} delta={delta} npp={npp}")]
    Inadmissible { gamma: u32, delta: u32, npp: u64 },
    #[error("result would have {0} rows; the limit is {MAX_ROWS}")]
    TooManyRows(usize),
    #[error("result would have {0} coordinates; the limit is {MAX_COORDS}")]
    TooManyColumns(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// One admissible parameter set (m, n′, n″) for a given (Γ, Δ).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConstructionParams {
    pub gamma: u32,
    pub delta: u32,
    pub m: u64,
    pub nprime: u64,
    pub npp: u64,
}

impl fmt::Display for ConstructionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} nprime={} npp={}", self.m, self.nprime, self.npp)
    }
}

/// All shapes solving the admissibility equations, ordered by ascending m.
/// Empty when gamma is odd, delta < 2, or the shapes would not fit in u64
/// (gamma + 2·delta ≥ 64).
pub fn admissible_params(gamma: u32, delta: u32) -> Vec<ConstructionParams> {
    let mut out = Vec::new();
    if gamma % 2 != 0 || delta < 2 {
        return out;
    }
    let exp = gamma as u64 + 2 * delta as u64;
    if exp >= 64 {
        return out;
    }
    let p = ((1u128 << exp) - 1) / 3;
    let q = (1u128 << (gamma + delta)) - 1;
    let max_npp = ((1u128 << delta) - 1).min(q);
    // n″ ≡ q (mod 3) makes n′ integral; descending n″ gives ascending m.
    let mut npp = max_npp - (max_npp + 3 - q % 3) % 3;
    loop {
        if npp != 1 {
            let nprime = (q - npp) / 3;
            let used = nprime + npp;
            if p >= used && (p - used) % 2 == 0 {
                out.push(ConstructionParams {
                    gamma,
                    delta,
                    m: ((p - used) / 2) as u64,
                    nprime: nprime as u64,
                    npp: npp as u64,
                });
            }
        }
        if npp < 3 {
            break;
        }
        npp -= 3;
    }
    out
}

fn from_rows(left: &[&[u8]], middle: &[&[u8]], right: &[&[u8]]) -> CheckMatrix {
    let rows = left.len();
    let transpose = |block: &[&[u8]]| -> Vec<Vec<u8>> {
        if block.is_empty() || block[0].is_empty() {
            return Vec::new();
        }
        (0..block[0].len()).map(|c| block.iter().map(|row| row[c]).collect()).collect()
    };
    CheckMatrix::new(rows, transpose(left), transpose(middle), transpose(right))
        .expect("literal matrix is well-formed")
}

/// The literal check matrix of shape (8, 1, 4) for Γ=0, Δ=3.
pub fn base_d814() -> CheckMatrix {
    from_rows(
        &[
            &[1, 0, 2, 2, 0, 1, 1, 2, 2, 1, 2, 3, 1, 1, 1, 0],
            &[0, 1, 1, 0, 2, 2, 2, 3, 1, 2, 2, 1, 2, 1, 3, 1],
            &[2, 2, 0, 1, 1, 0, 2, 1, 2, 3, 1, 2, 1, 2, 0, 3],
        ],
        &[&[1, 0], &[1, 1], &[0, 1]],
        &[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]],
    )
}

/// The literal (7, 0, 7) check matrix not equivalent to the quasi-cyclic one.
pub fn alt_d707() -> CheckMatrix {
    from_rows(
        &[
            &[1, 0, 2, 2, 0, 1, 1, 1, 3, 2, 1, 2, 1, 1],
            &[0, 1, 1, 0, 2, 2, 1, 2, 1, 1, 3, 2, 1, 0],
            &[2, 2, 0, 1, 1, 0, 3, 2, 1, 2, 1, 1, 2, 3],
        ],
        &[],
        &[
            &[1, 0, 0, 3, 0, 1, 1],
            &[0, 1, 0, 1, 3, 2, 1],
            &[0, 0, 1, 0, 1, 1, 1],
        ],
    )
}

/// Quasi-cyclic matrix of shape ((2^Δ−1)(2^Δ−2)/6, 0, 2^Δ−1) for Δ ∈ {3,5,7}.
/// Left pairs are Frobenius images of a handful of seed pairs ξ^a + 2ξ^b;
/// the right part holds ξ^0 … ξ^(2^Δ−2).  Multiplying columns by ξ permutes
/// the column set, which makes the code quasi-cyclic.
pub fn quasi_cyclic(delta: u32) -> Result<CheckMatrix, ConstructError> {
    // Seed pairs as exponent offsets ((a1, b1), (a2, b2)): the pair for scale
    // 2^l and shift i is (ξ^(2^l(i+a1)) + 2ξ^(2^l(i+b1)), ...).
    let seeds: &[[u64; 4]] = match delta {
        3 => &[[0, 2, 1, 5]],
        5 => &[[1, 2, 2, 5]],
        7 => &[[1, 2, 2, 7], [1, 4, 2, 17], [1, 10, 2, 57]],
        _ => return Err(ConstructError::UnsupportedDelta(delta)),
    };
    let ctx = RingContext::preset(delta as usize)?;
    let n = (1u64 << delta) - 1;
    let levels: u64 = if delta == 3 { 1 } else { delta as u64 };
    let mut left = Vec::new();
    for seed in seeds {
        for l in 0..levels {
            let scale = 1u64 << l;
            for i in 0..n {
                let col = |a: u64, b: u64| {
                    let e = ctx.xi_pow(scale * (i + a)).add(&ctx.xi_pow(scale * (i + b)).double());
                    e.coeffs().to_vec()
                };
                left.push(col(seed[0], seed[1]));
                left.push(col(seed[2], seed[3]));
            }
        }
    }
    let right = (0..n).map(|i| ctx.xi_pow(i).coeffs().to_vec()).collect();
    Ok(CheckMatrix::new(delta as usize, left, Vec::new(), right)?)
}

/// Index of the first row whose left and right entries are all even, if any.
/// Such a row is killed by doubling, which breaks the recursion steps.
fn order2_row(m: &CheckMatrix) -> Option<usize> {
    (0..m.rows()).find(|&r| {
        m.left().iter().chain(m.right().iter()).all(|col| col[r] % 2 == 0)
    })
}

fn check_units(
    a: &RingElement,
    b: &RingElement,
    names: [&'static str; 3],
) -> Result<(), ConstructError> {
    if !a.is_unit() {
        return Err(ConstructError::NonUnit { role: names[0] });
    }
    if !b.is_unit() {
        return Err(ConstructError::NonUnit { role: names[1] });
    }
    if !a.add(b).is_unit() {
        return Err(ConstructError::NonUnit { role: names[2] });
    }
    Ok(())
}

fn with_tail(elem: &RingElement, tail: &[u8]) -> Vec<u8> {
    let mut col = elem.coeffs().to_vec();
    col.extend_from_slice(tail);
    col
}

fn extend_by_zeros(cols: &[Vec<u8>], extra: usize) -> Vec<Vec<u8>> {
    cols.iter()
        .map(|c| {
            let mut v = c.clone();
            v.resize(c.len() + extra, 0);
            v
        })
        .collect()
}

/// One step of the Δ → Δ+2 recursion.  `prev` must be a perfect matrix with
/// Δ−2 rows, none of order 2; `ring` is GR(4^(Δ−2)); alpha, beta and
/// alpha+beta must be units.  The result (B W V E | E′ D′ | E″) has Δ rows
/// and shape (m̃ + t/2 + 2s, ñ′ + 2^(Δ−2), ñ″) with t units and s elements.
pub fn delta_step(
    prev: &CheckMatrix,
    ring: &RingContext,
    alpha: &RingElement,
    beta: &RingElement,
) -> Result<CheckMatrix, ConstructError> {
    if ring.delta() != prev.rows() {
        return Err(ConstructError::RingMismatch {
            ring_delta: ring.delta(),
            rows: prev.rows(),
        });
    }
    check_units(alpha, beta, ["alpha", "beta", "alpha+beta"])?;
    if let Some(r) = order2_row(prev) {
        return Err(ConstructError::Order2Row(r));
    }
    let rows = prev.rows() + 2;
    if rows > MAX_ROWS {
        return Err(ConstructError::TooManyRows(rows));
    }

    let elements = ring.element_list();
    let t = ring.unit_count();
    let halve = |e: &RingElement| -> Vec<u8> {
        halve_order2(e)
            .expect("a non-unit times a unit has even coefficients")
            .coeffs()
            .to_vec()
    };

    let mut left = Vec::new();
    // B: one pair per {u, −u} class of units, order-2 tails.
    for c in &elements[..t / 2] {
        left.push(with_tail(&ring.mul(c, alpha), &[2, 0]));
        left.push(with_tail(&ring.mul(c, beta), &[0, 2]));
    }
    // W and V: one pair per ring element; together their tails cover all
    // twelve order-4 patterns of Z4² exactly once.
    for c in elements {
        left.push(with_tail(&ring.mul(c, alpha), &[1, 0]));
        left.push(with_tail(&ring.mul(c, beta), &[0, 1]));
    }
    for c in elements {
        left.push(with_tail(&ring.mul(c, alpha), &[1, 2]));
        left.push(with_tail(&ring.mul(c, beta), &[1, 3]));
    }
    left.extend(extend_by_zeros(prev.left(), 2));

    // E′ first, then D′: one halved pair per non-unit (including zero).
    let mut middle = extend_by_zeros(prev.middle(), 2);
    for c in &elements[t..] {
        let mut col_a = halve(&ring.mul(c, alpha));
        col_a.extend_from_slice(&[1, 0]);
        let mut col_b = halve(&ring.mul(c, beta));
        col_b.extend_from_slice(&[0, 1]);
        middle.push(col_a);
        middle.push(col_b);
    }

    let right = extend_by_zeros(prev.right(), 2);
    Ok(CheckMatrix::new(rows, left, middle, right)?)
}

/// Replaces middle pairs by right-part column triples, `count` times.  Each
/// step consumes the first middle pair (D1, D2), finds a left pair (B1, B2)
/// whose doubles match (2B1, 2B2) = (2D1, 2D2) — columnwise, allowing a swap,
/// with an unordered fallback — deletes both pairs and appends B1, B2, B1+B2
/// to the right part.  Shape change: (m, n′, n″) → (m−1, n′−1, n″+3) per step.
pub fn increase_npp(matrix: &CheckMatrix, count: usize) -> Result<CheckMatrix, ConstructError> {
    let available = matrix.shape().nprime;
    if count > available {
        return Err(ConstructError::NotEnoughMiddlePairs { requested: count, available });
    }
    let rows = matrix.rows();
    let mut left = matrix.left().to_vec();
    let mut middle = matrix.middle().to_vec();
    let mut right = matrix.right().to_vec();

    let dbl = |col: &[u8]| -> Vec<u8> { col.iter().map(|&e| (e * 2) & 3).collect() };
    let sum4 = |a: &[u8], b: &[u8]| -> Vec<u8> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) & 3).collect()
    };

    for _ in 0..count {
        let d1 = dbl(&middle[0]);
        let d2 = dbl(&middle[1]);
        let d12 = sum4(&d1, &d2);

        let mut found = None;
        for p in 0..left.len() / 2 {
            let b1 = dbl(&left[2 * p]);
            let b2 = dbl(&left[2 * p + 1]);
            if (b1 == d1 && b2 == d2) || (b1 == d2 && b2 == d1) {
                found = Some(p);
                break;
            }
        }
        if found.is_none() {
            // No columnwise match; accept a pair covering the same set.
            let mut want = [d1.clone(), d2.clone(), d12.clone()];
            want.sort();
            for p in 0..left.len() / 2 {
                let b1 = dbl(&left[2 * p]);
                let b2 = dbl(&left[2 * p + 1]);
                let mut have = [sum4(&b1, &b2), b1, b2];
                have.sort();
                if have == want {
                    found = Some(p);
                    break;
                }
            }
        }
        let Some(p) = found else {
            let digits = |c: &[u8]| c.iter().map(|&e| char::from(b'0' + e)).collect::<String>();
            return Err(ConstructError::NoMatchingPair(digits(&middle[0]), digits(&middle[1])));
        };

        let b1 = left.remove(2 * p);
        let b2 = left.remove(2 * p);
        middle.drain(0..2);
        right.push(b1.clone());
        right.push(b2.clone());
        right.push(sum4(&b1, &b2));
    }
    Ok(CheckMatrix::new(rows, left, middle, right)?)
}

/// Partition of the nonzero doubled binary vectors of length gamma into
/// (2^Γ−1)/3 triples {a, b, c} with a + b + c = 0: the GF(4)-scalar orbits
/// {v, ωv, ω²v} of GF(4)^(Γ/2), each vector written over Z4 as {0,2} entries
/// via 0 ↦ 00, 1 ↦ 10, ω ↦ 01, ω² ↦ 11 per symbol.
pub fn gf4_triple_partition(gamma: u32) -> Result<Vec<[Vec<u8>; 3]>, ConstructError> {
    if gamma % 2 != 0 || gamma == 0 {
        return Err(ConstructError::BadGamma(gamma));
    }
    let half = (gamma / 2) as usize;
    if gamma as usize > 2 * (MAX_ROWS - 2) {
        return Err(ConstructError::TooManyRows(gamma as usize));
    }
    // Multiplication by ω on a GF(4) symbol encoded as a + bω ↦ index a + 2b.
    const OMEGA: [usize; 4] = [0, 2, 3, 1];
    let to_bits = |v: usize| -> Vec<u8> {
        let mut bits = Vec::with_capacity(2 * half);
        for j in 0..half {
            let sym = (v >> (2 * j)) & 3;
            bits.push(2 * (sym as u8 & 1));
            bits.push(2 * (sym as u8 >> 1));
        }
        bits
    };
    let scale = |v: usize| -> usize {
        let mut out = 0;
        for j in 0..half {
            out |= OMEGA[(v >> (2 * j)) & 3] << (2 * j);
        }
        out
    };

    let total = 1usize << gamma;
    let mut seen = vec![false; total];
    let mut triples = Vec::with_capacity((total - 1) / 3);
    for v in 1..total {
        if seen[v] {
            continue;
        }
        let w = scale(v);
        let u = scale(w);
        seen[v] = true;
        seen[w] = true;
        seen[u] = true;
        triples.push([to_bits(v), to_bits(w), to_bits(u)]);
    }
    Ok(triples)
}

/// The Γ-extension: appends gamma order-2 rows to a perfect matrix with
/// Δ = rows(prev) and no order-2 rows.  For each triple (a, b, c) of the
/// doubled-vector partition, a block of unit half-list pairs (u·g | a,
/// u·d | b) joins the left part and a block of halved non-unit pairs joins
/// the middle part.  Result layout (F J | J′ G′ | J″).
pub fn gamma_step(
    prev: &CheckMatrix,
    gamma: u32,
    ring: &RingContext,
    g: &RingElement,
    d: &RingElement,
) -> Result<CheckMatrix, ConstructError> {
    if gamma % 2 != 0 || gamma == 0 {
        return Err(ConstructError::BadGamma(gamma));
    }
    if ring.delta() != prev.rows() {
        return Err(ConstructError::RingMismatch {
            ring_delta: ring.delta(),
            rows: prev.rows(),
        });
    }
    check_units(g, d, ["g", "d", "g+d"])?;
    if let Some(r) = order2_row(prev) {
        return Err(ConstructError::Order2Row(r));
    }
    let rows = prev.rows() + gamma as usize;
    if rows > MAX_ROWS {
        return Err(ConstructError::TooManyRows(rows));
    }

    let triples = gf4_triple_partition(gamma)?;
    let t = ring.unit_count();
    let elements = ring.element_list();
    let shape = prev.shape();
    // Predict the final width before allocating block by block.
    let new_pairs = triples.len() * (t / 2 + (elements.len() - t));
    let coords = 2 * (shape.m + shape.nprime + new_pairs) + shape.npp;
    if coords > MAX_COORDS {
        return Err(ConstructError::TooManyColumns(coords));
    }

    let halve = |e: &RingElement| -> Vec<u8> {
        halve_order2(e)
            .expect("a non-unit times a unit has even coefficients")
            .coeffs()
            .to_vec()
    };
    let halve_tail = |tail: &[u8]| -> Vec<u8> { tail.iter().map(|&e| e / 2).collect() };

    let mut left = Vec::new();
    for [a, b, _] in &triples {
        for u in &elements[..t / 2] {
            left.push(with_tail(&ring.mul(u, g), a));
            left.push(with_tail(&ring.mul(u, d), b));
        }
    }
    left.extend(extend_by_zeros(prev.left(), gamma as usize));

    let mut middle = extend_by_zeros(prev.middle(), gamma as usize);
    for [a, b, _] in &triples {
        for u in &elements[t..] {
            let mut col_a = halve(&ring.mul(u, g));
            col_a.extend_from_slice(&halve_tail(a));
            let mut col_b = halve(&ring.mul(u, d));
            col_b.extend_from_slice(&halve_tail(b));
            middle.push(col_a);
            middle.push(col_b);
        }
    }

    let right = extend_by_zeros(prev.right(), gamma as usize);
    Ok(CheckMatrix::new(rows, left, middle, right)?)
}

/// Doubling orbits x ↦ 2x mod n on {1, …, n−1}: each orbit sorted, orbits
/// ordered by minimum.  n must be odd (doubling is invertible mod odd n).
pub fn cyclotomic_cosets(n: u64) -> Result<Vec<Vec<u64>>, ConstructError> {
    if n % 2 == 0 {
        return Err(ConstructError::EvenModulus(n));
    }
    let mut seen = vec![false; n.max(1) as usize];
    let mut cosets = Vec::new();
    for x in 1..n {
        if seen[x as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut y = x;
        while !seen[y as usize] {
            seen[y as usize] = true;
            orbit.push(y);
            y = (2 * y) % n;
        }
        orbit.sort_unstable();
        cosets.push(orbit);
    }
    Ok(cosets)
}

/// Runs the full chain for an admissible (gamma, odd delta, npp): base
/// matrix, Δ-recursion up to delta, middle-pair replacement up to npp, and
/// the Γ-extension when gamma > 0.
pub fn build_admissible(gamma: u32, delta: u32, npp: u64) -> Result<CheckMatrix, ConstructError> {
    if delta % 2 == 0 || delta < 3 {
        return Err(ConstructError::UnsupportedDelta(delta));
    }
    let params = admissible_params(gamma, delta);
    if !params.iter().any(|p| p.npp == npp) {
        return Err(ConstructError::Inadmissible { gamma, delta, npp });
    }

    let mut matrix = base_d814();
    let mut have = 3u32;
    while have < delta {
        let ring = RingContext::preset(have as usize)
            .map_err(|_| ConstructError::UnsupportedDelta(delta))?;
        matrix = delta_step(&matrix, &ring, &ring.one(), &ring.xi())?;
        have += 2;
    }
    // Admissible npp for odd delta is 4, 7, …, 2^Δ−1.
    matrix = increase_npp(&matrix, ((npp - 4) / 3) as usize)?;
    if gamma > 0 {
        let ring = RingContext::preset(delta as usize)
            .map_err(|_| ConstructError::UnsupportedDelta(delta))?;
        matrix = gamma_step(&matrix, gamma, &ring, &ring.one(), &ring.xi())?;
    }
    Ok(matrix)
}
