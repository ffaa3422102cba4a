//! Arithmetic in the Galois ring GR(4^Δ) = Z4[x]/(h(x)).
//!
//! The modulus `h` must be a monic basic irreducible of degree Δ (its mod-2
//! reduction is irreducible over GF(2)) whose root ξ = x + (h) has
//! multiplicative order 2^Δ − 1.  Elements are residue-class polynomials of
//! degree < Δ with coefficients in Z4, written lowest degree first: the digit
//! string `132` denotes 1 + 3ξ + 2ξ².
//!
//! Structure used throughout the crate: the Teichmüller set
//! T = { c : c^(2^Δ) = c } has 2^Δ elements, every element decomposes
//! uniquely as a + 2b with a, b ∈ T, the units are exactly the elements with
//! a ≠ 0 (equivalently: some odd coefficient), and the Frobenius
//! f(a + 2b) = a² + 2b² generates the automorphisms fixing Z4.

use std::fmt;
use thiserror::Error;

/// Largest supported Δ; `RingContext` materialises all 4^Δ elements.
pub const MAX_DELTA: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus must have delta + 1 = {expected} coefficients, got {got}")]
    BadModulusLength { expected: usize, got: usize },
    #[error("coefficients must lie in 0..=3")]
    CoefficientRange,
    #[error("delta must be at least 2, got {0}")]
    DeltaTooSmall(usize),
    #[error("delta must be at most {MAX_DELTA}, got {0}")]
    DeltaTooLarge(usize),
    #[error("modulus must be monic")]
    NotMonic,
    #[error("modulus is reducible modulo 2")]
    ReducibleModulus,
    #[error("xi = x + (h) does not have order 2^delta - 1")]
    NotPrimitive,
    #[error("element has an odd coefficient; only multiples of 2 can be halved")]
    OddCoefficient,
    #[error("element has {got} coefficients, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid element digit {0:?}; digits must be 0-3")]
    BadDigit(char),
    #[error("no built-in modulus for delta = {0}; presets cover 3, 5, 7")]
    NoPresetModulus(usize),
}

/// An element of GR(4^Δ): Δ coefficients in Z4, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coeffs: Vec<u8>,
}

impl RingElement {
    /// Wraps a coefficient vector; every entry must lie in 0..=3.
    pub fn from_coeffs(coeffs: Vec<u8>) -> Result<Self, RingError> {
        if coeffs.iter().any(|&c| c > 3) {
            return Err(RingError::CoefficientRange);
        }
        Ok(RingElement { coeffs })
    }

    /// Parses a digit string such as `132` (= 1 + 3ξ + 2ξ²).
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let mut coeffs = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch.to_digit(10) {
                Some(d) if d < 4 => coeffs.push(d as u8),
                _ => return Err(RingError::BadDigit(ch)),
            }
        }
        Ok(RingElement { coeffs })
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Number of coefficients (the Δ of the ring this element lives in).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// A unit of GR(4^Δ) is exactly an element with some odd coefficient
    /// (anything else lies in the maximal ideal 2·GR(4^Δ)).
    pub fn is_unit(&self) -> bool {
        self.coeffs.iter().any(|&c| c & 1 == 1)
    }

    /// Componentwise sum; panics if the lengths differ.
    pub fn add(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.len(), other.len(), "ring element length mismatch");
        RingElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| (a + b) & 3)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().map(|&c| c.wrapping_neg() & 3).collect(),
        }
    }

    /// 2·self (an order-2 element, or zero).
    pub fn double(&self) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().map(|&c| (c << 1) & 3).collect(),
        }
    }

    /// Digit string, lowest coefficient first.
    pub fn to_digits(&self) -> String {
        self.coeffs.iter().map(|&c| (b'0' + c) as char).collect()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({})", self.to_digits())
    }
}

/// Componentwise map 2 → 1, 0 → 0, yielding the Z2 image a/2 of an element
/// all of whose coefficients are even.
pub fn halve_order2(a: &RingElement) -> Result<RingElement, RingError> {
    let mut coeffs = Vec::with_capacity(a.len());
    for &c in a.coeffs() {
        if c & 1 == 1 {
            return Err(RingError::OddCoefficient);
        }
        coeffs.push(c >> 1);
    }
    Ok(RingElement { coeffs })
}

/// Built-in primitive basic irreducible moduli (coefficients lowest first).
pub fn preset_modulus(delta: usize) -> Option<&'static [u8]> {
    match delta {
        3 => Some(&[3, 1, 2, 1]),             // x³ + 2x² + x + 3
        5 => Some(&[3, 2, 3, 0, 0, 1]),       // x⁵ + 3x² + 2x + 3
        7 => Some(&[3, 1, 0, 0, 2, 0, 0, 1]), // x⁷ + 2x⁴ + x + 3
        _ => None,
    }
}

/// A concrete GR(4^Δ): validated modulus plus the derived element tables.
#[derive(Clone, Debug)]
pub struct RingContext {
    delta: usize,
    modulus: Vec<u8>,
    /// −h_j mod 4 for j < Δ, so x^Δ = Σ neg_mod[j] x^j.
    neg_mod: Vec<u8>,
    xi: RingElement,
    /// All 4^Δ elements: first the units, negation-paired so that
    /// `element_list[i] + element_list[t−1−i] = 0` for i < t = unit_count
    /// (in particular the first t/2 hold one unit from each {u, −u} pair),
    /// then the non-units in enumeration order.
    element_list: Vec<RingElement>,
    unit_count: usize,
}

impl RingContext {
    /// Validates the modulus and builds the ring.
    pub fn new(delta: usize, modulus: &[u8]) -> Result<Self, RingError> {
        if delta < 2 {
            return Err(RingError::DeltaTooSmall(delta));
        }
        if delta > MAX_DELTA {
            return Err(RingError::DeltaTooLarge(delta));
        }
        if modulus.len() != delta + 1 {
            return Err(RingError::BadModulusLength {
                expected: delta + 1,
                got: modulus.len(),
            });
        }
        if modulus.iter().any(|&c| c > 3) {
            return Err(RingError::CoefficientRange);
        }
        if modulus[delta] != 1 {
            return Err(RingError::NotMonic);
        }
        if !mod2_irreducible(modulus) {
            return Err(RingError::ReducibleModulus);
        }

        let neg_mod: Vec<u8> = modulus[..delta].iter().map(|&c| c.wrapping_neg() & 3).collect();
        let mut xi_coeffs = vec![0u8; delta];
        xi_coeffs[1] = 1;
        let mut ctx = RingContext {
            delta,
            modulus: modulus.to_vec(),
            neg_mod,
            xi: RingElement { coeffs: xi_coeffs },
            element_list: Vec::new(),
            unit_count: 0,
        };

        // ξ must generate the full Teichmüller group: order exactly 2^Δ − 1.
        let n: u64 = (1u64 << delta) - 1;
        if ctx.power(&ctx.xi.clone(), n) != ctx.one() {
            return Err(RingError::NotPrimitive);
        }
        for p in prime_divisors(n) {
            if ctx.power(&ctx.xi.clone(), n / p) == ctx.one() {
                return Err(RingError::NotPrimitive);
            }
        }

        ctx.build_element_list();
        Ok(ctx)
    }

    /// Ring over one of the built-in moduli (Δ ∈ {3, 5, 7}).
    pub fn preset(delta: usize) -> Result<Self, RingError> {
        match preset_modulus(delta) {
            Some(m) => RingContext::new(delta, m),
            None => Err(RingError::NoPresetModulus(delta)),
        }
    }

    fn build_element_list(&mut self) {
        let s = 1usize << (2 * self.delta);
        let mut units = Vec::new();
        let mut non_units = Vec::new();
        for idx in 0..s {
            let e = self.element_from_index(idx);
            if e.is_unit() {
                units.push(e);
            } else {
                non_units.push(e);
            }
        }
        let t = units.len();
        let mut list = vec![RingElement { coeffs: vec![] }; t];
        let mut placed = vec![false; s];
        let mut pair = 0usize;
        for u in &units {
            let idx = element_index(u);
            if placed[idx] {
                continue;
            }
            let n = u.neg();
            placed[idx] = true;
            placed[element_index(&n)] = true;
            list[pair] = u.clone();
            list[t - 1 - pair] = n;
            pair += 1;
        }
        debug_assert_eq!(pair, t / 2);
        list.extend(non_units);
        self.element_list = list;
        self.unit_count = t;
    }

    fn element_from_index(&self, idx: usize) -> RingElement {
        let coeffs = (0..self.delta).map(|j| ((idx >> (2 * j)) & 3) as u8).collect();
        RingElement { coeffs }
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: vec![0; self.delta] }
    }

    pub fn one(&self) -> RingElement {
        let mut coeffs = vec![0; self.delta];
        coeffs[0] = 1;
        RingElement { coeffs }
    }

    /// ξ, the residue class of x.
    pub fn xi(&self) -> RingElement {
        self.xi.clone()
    }

    /// Number of units: (2^Δ − 1)·2^Δ.
    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    /// All 4^Δ elements, units first (see the field invariant).
    pub fn element_list(&self) -> &[RingElement] {
        &self.element_list
    }

    fn check(&self, a: &RingElement) {
        assert_eq!(
            a.len(),
            self.delta,
            "ring element has {} coefficients, expected {}",
            a.len(),
            self.delta
        );
    }

    /// Product in Z4[x]/(h).
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.check(a);
        self.check(b);
        let d = self.delta;
        let mut buf = vec![0u8; 2 * d - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + ai * bj) & 3;
            }
        }
        // Monic modulus: replace x^(d+k) by Σ neg_mod[j] x^(j+k), top down.
        for i in (d..2 * d - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..d {
                buf[i - d + j] = (buf[i - d + j] + c * self.neg_mod[j]) & 3;
            }
        }
        buf.truncate(d);
        RingElement { coeffs: buf }
    }

    /// a^e by square-and-multiply (a^0 = 1).
    pub fn power(&self, a: &RingElement, e: u64) -> RingElement {
        self.check(a);
        let mut base = a.clone();
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// ξ^e with the exponent reduced modulo ord(ξ) = 2^Δ − 1.
    pub fn xi_pow(&self, e: u64) -> RingElement {
        let n = (1u64 << self.delta) - 1;
        self.power(&self.xi.clone(), e % n)
    }

    /// The Teichmüller component a of c = a + 2b, computed as c^(2^Δ)
    /// (squaring kills the 2b part, and a^(2^Δ) = a on T).
    pub fn teichmuller_component(&self, c: &RingElement) -> RingElement {
        let mut a = c.clone();
        for _ in 0..self.delta {
            a = self.mul(&a, &a);
        }
        a
    }

    /// The unique (a, b) with c = a + 2b and a, b ∈ T.
    pub fn two_adic_decompose(&self, c: &RingElement) -> (RingElement, RingElement) {
        let a = self.teichmuller_component(c);
        let diff = c.sub(&a);
        let half = halve_order2(&diff).expect("c - teichmuller(c) is a multiple of 2");
        // `half` is only determined mod 2; its Teichmüller component is the
        // unique representative in T with 2b = diff.
        let b = self.teichmuller_component(&half);
        (a, b)
    }

    /// Frobenius automorphism f(a + 2b) = a² + 2b².
    pub fn frobenius(&self, c: &RingElement) -> RingElement {
        let (a, b) = self.two_adic_decompose(c);
        self.mul(&a, &a).add(&self.mul(&b, &b).double())
    }
}

/// Lexicographic enumeration index (digit j = coefficient j, base 4).
fn element_index(e: &RingElement) -> usize {
    e.coeffs
        .iter()
        .enumerate()
        .fold(0usize, |acc, (j, &c)| acc | ((c as usize) << (2 * j)))
}

/// Irreducibility of the mod-2 reduction over GF(2), by trial division.
fn mod2_irreducible(modulus: &[u8]) -> bool {
    let delta = modulus.len() - 1;
    let mut h2: u64 = 0;
    for (j, &c) in modulus.iter().enumerate() {
        h2 |= ((c & 1) as u64) << j;
    }
    if h2 & 1 == 0 {
        return false; // divisible by x
    }
    for d in 1..=delta / 2 {
        for q in (1u64 << d)..(1u64 << (d + 1)) {
            if poly2_rem(h2, q) == 0 {
                return false;
            }
        }
    }
    true
}

/// Remainder of a by b in GF(2)[x], both as bitmasks.
fn poly2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros() as i32;
    loop {
        if a == 0 {
            return 0;
        }
        let da = 63 - a.leading_zeros() as i32;
        if da < db {
            return a;
        }
        a ^= b << (da - db);
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
