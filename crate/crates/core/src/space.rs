//! The vertex space Z4^2m × Z2^2n′ × Z4^n″ carrying the Doob graph metric.
//!
//! D(m, n′+n″) is the Cartesian product of m copies of the Shrikhande graph
//! (a Cayley graph on Z4²) and n′+n″ copies of K4 (on Z2² for the first n′
//! factors, on Z4 for the rest).  Graph distance is the sum of the factor
//! distances, so it is induced by a translation-invariant weight.

use std::fmt;
use thiserror::Error;

/// Connection set of the Shrikhande graph as a Cayley graph on Z4².
pub const SHRIKHANDE_SET: [(u8, u8); 6] = [(0, 1), (3, 0), (3, 3), (0, 3), (1, 0), (1, 1)];

/// Nonzero values of a weight-1 Z4 pair, in enumeration order.
pub const Z4_PAIR_VALUES: [(u8, u8); 6] = [(0, 1), (1, 1), (1, 0), (0, 3), (3, 3), (3, 0)];

/// Nonzero values of a weight-1 Z2 pair, in enumeration order.
pub const Z2_PAIR_VALUES: [(u8, u8); 3] = [(0, 1), (1, 1), (1, 0)];

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Shape {
    /// Shrikhande factors (Z4 coordinate pairs).
    pub m: usize,
    /// K4 factors on Z2 pairs.
    pub nprime: usize,
    /// K4 factors on single Z4 coordinates.
    pub npp: usize,
}

impl Shape {
    pub fn new(m: usize, nprime: usize, npp: usize) -> Shape {
        Shape { m, nprime, npp }
    }

    /// Number of stored coordinates 2m + 2n′ + n″.
    pub fn coord_count(&self) -> usize {
        2 * self.m + 2 * self.nprime + self.npp
    }

    /// Number of weight-1 vertices, 6m + 3n′ + 3n″.
    pub fn weight1_count(&self) -> usize {
        6 * self.m + 3 * self.nprime + 3 * self.npp
    }

    /// log₂ of the space size: |space| = 2^(4m + 2n′ + 2n″).
    pub fn log2_size(&self) -> usize {
        4 * self.m + 2 * self.nprime + 2 * self.npp
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} nprime={} npp={}", self.m, self.nprime, self.npp)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VertexError {
    #[error("expected three '|'-separated sections")]
    BadSectionCount,
    #[error("section {0} must have an even number of digits")]
    OddSectionLength(usize),
    #[error("invalid symbol {symbol:?} at position {position}")]
    BadSymbol { symbol: char, position: usize },
    #[error("word has shape {got}, expected {expected}")]
    ShapeMismatch { expected: Shape, got: Shape },
}

/// A vertex of the space: m Z4 pairs, n′ Z2 pairs, n″ single Z4 coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vertex {
    pub z4pairs: Vec<(u8, u8)>,
    pub z2pairs: Vec<(u8, u8)>,
    pub z4coords: Vec<u8>,
}

impl Vertex {
    pub fn zero(shape: Shape) -> Vertex {
        Vertex {
            z4pairs: vec![(0, 0); shape.m],
            z2pairs: vec![(0, 0); shape.nprime],
            z4coords: vec![0; shape.npp],
        }
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.z4pairs.len(), self.z2pairs.len(), self.z4coords.len())
    }

    pub fn add(&self, other: &Vertex) -> Vertex {
        assert_eq!(self.shape(), other.shape(), "vertex shape mismatch");
        Vertex {
            z4pairs: zip_pairs(&self.z4pairs, &other.z4pairs, |a, b| (a + b) & 3),
            z2pairs: zip_pairs(&self.z2pairs, &other.z2pairs, |a, b| (a + b) & 1),
            z4coords: self
                .z4coords
                .iter()
                .zip(&other.z4coords)
                .map(|(&a, &b)| (a + b) & 3)
                .collect(),
        }
    }

    pub fn neg(&self) -> Vertex {
        Vertex {
            z4pairs: self.z4pairs.iter().map(|&(x, y)| (x.wrapping_neg() & 3, y.wrapping_neg() & 3)).collect(),
            z2pairs: self.z2pairs.clone(),
            z4coords: self.z4coords.iter().map(|&z| z.wrapping_neg() & 3).collect(),
        }
    }

    pub fn sub(&self, other: &Vertex) -> Vertex {
        self.add(&other.neg())
    }

    /// Doob weight: distance to the all-zero vertex.
    pub fn weight(&self) -> u64 {
        let sh: u64 = self.z4pairs.iter().map(|&p| shrikhande_weight(p) as u64).sum();
        let k2 = self.z2pairs.iter().filter(|&&p| p != (0, 0)).count() as u64;
        let k4 = self.z4coords.iter().filter(|&&z| z != 0).count() as u64;
        sh + k2 + k4
    }

    /// Text form `0123|10|32`: Z4 pairs, Z2 pairs, single coordinates.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(self.shape().coord_count() + 2);
        for &(x, y) in &self.z4pairs {
            s.push((b'0' + x) as char);
            s.push((b'0' + y) as char);
        }
        s.push('|');
        for &(v, w) in &self.z2pairs {
            s.push((b'0' + v) as char);
            s.push((b'0' + w) as char);
        }
        s.push('|');
        for &z in &self.z4coords {
            s.push((b'0' + z) as char);
        }
        s
    }

    /// Parses the text form, inferring the shape from the section lengths.
    pub fn parse(text: &str) -> Result<Vertex, VertexError> {
        let sections: Vec<&str> = text.split('|').collect();
        if sections.len() != 3 {
            return Err(VertexError::BadSectionCount);
        }
        let offsets = [0, sections[0].len() + 1, sections[0].len() + sections[1].len() + 2];
        for (i, sec) in sections.iter().take(2).enumerate() {
            if sec.len() % 2 != 0 {
                return Err(VertexError::OddSectionLength(i + 1));
            }
        }
        let z4 = parse_digits(sections[0], 3, offsets[0])?;
        let z2 = parse_digits(sections[1], 1, offsets[1])?;
        let z4c = parse_digits(sections[2], 3, offsets[2])?;
        Ok(Vertex {
            z4pairs: z4.chunks(2).map(|c| (c[0], c[1])).collect(),
            z2pairs: z2.chunks(2).map(|c| (c[0], c[1])).collect(),
            z4coords: z4c,
        })
    }

    /// Parses and checks the result against an expected shape.
    pub fn parse_for_shape(text: &str, shape: Shape) -> Result<Vertex, VertexError> {
        let v = Vertex::parse(text)?;
        if v.shape() != shape {
            return Err(VertexError::ShapeMismatch { expected: shape, got: v.shape() });
        }
        Ok(v)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn zip_pairs(a: &[(u8, u8)], b: &[(u8, u8)], op: impl Fn(u8, u8) -> u8) -> Vec<(u8, u8)> {
    a.iter().zip(b).map(|(&(x1, y1), &(x2, y2))| (op(x1, x2), op(y1, y2))).collect()
}

fn parse_digits(sec: &str, max: u8, offset: usize) -> Result<Vec<u8>, VertexError> {
    sec.chars()
        .enumerate()
        .map(|(i, ch)| match ch.to_digit(10) {
            Some(d) if d <= max as u32 => Ok(d as u8),
            _ => Err(VertexError::BadSymbol { symbol: ch, position: offset + i }),
        })
        .collect()
}

/// Distance in the Shrikhande graph from (0,0) to the given Z4 pair:
/// 0 at the origin, 1 on the connection set, 2 elsewhere.
pub fn shrikhande_weight(pair: (u8, u8)) -> u32 {
    if pair == (0, 0) {
        0
    } else if SHRIKHANDE_SET.contains(&pair) {
        1
    } else {
        2
    }
}

/// Doob graph distance between two vertices of the same shape.
pub fn distance(u: &Vertex, v: &Vertex) -> u64 {
    u.sub(v).weight()
}

/// A weight-1 vertex, identified by its single nonzero locus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ErrorPattern {
    /// Nonzero Z4 pair number `pair` (0-based) with value (x, y).
    Z4Pair { pair: usize, x: u8, y: u8 },
    /// Nonzero Z2 pair number `pair` (0-based) with value (v, w).
    Z2Pair { pair: usize, v: u8, w: u8 },
    /// Nonzero single Z4 coordinate number `coord` (0-based) with value z.
    Z4Single { coord: usize, z: u8 },
}

impl ErrorPattern {
    pub fn to_vertex(&self, shape: Shape) -> Vertex {
        let mut v = Vertex::zero(shape);
        match *self {
            ErrorPattern::Z4Pair { pair, x, y } => v.z4pairs[pair] = (x, y),
            ErrorPattern::Z2Pair { pair, v: a, w } => v.z2pairs[pair] = (a, w),
            ErrorPattern::Z4Single { coord, z } => v.z4coords[coord] = z,
        }
        v
    }
}

impl fmt::Display for ErrorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ErrorPattern::Z4Pair { pair, x, y } => write!(f, "sh[{pair}]={x}{y}"),
            ErrorPattern::Z2Pair { pair, v, w } => write!(f, "k2[{pair}]={v}{w}"),
            ErrorPattern::Z4Single { coord, z } => write!(f, "k4[{coord}]={z}"),
        }
    }
}

/// All 6m + 3n′ + 3n″ weight-1 patterns: pairs left to right, then Z2 pairs,
/// then single coordinates, with the documented value order inside a locus.
pub fn enumerate_weight1(shape: Shape) -> Vec<ErrorPattern> {
    let mut out = Vec::with_capacity(shape.weight1_count());
    for pair in 0..shape.m {
        for &(x, y) in &Z4_PAIR_VALUES {
            out.push(ErrorPattern::Z4Pair { pair, x, y });
        }
    }
    for pair in 0..shape.nprime {
        for &(v, w) in &Z2_PAIR_VALUES {
            out.push(ErrorPattern::Z2Pair { pair, v, w });
        }
    }
    for coord in 0..shape.npp {
        for z in 1..=3u8 {
            out.push(ErrorPattern::Z4Single { coord, z });
        }
    }
    out
}

/// Iterates every vertex of a small shape (used by exhaustive tests and
/// oracles; the caller must keep 2^log2_size within reach).
pub fn enumerate_space(shape: Shape) -> impl Iterator<Item = Vertex> {
    let total: u64 = 1u64 << shape.log2_size();
    (0..total).map(move |mut idx| {
        let mut v = Vertex::zero(shape);
        for p in 0..shape.m {
            v.z4pairs[p] = ((idx & 3) as u8, ((idx >> 2) & 3) as u8);
            idx >>= 4;
        }
        for p in 0..shape.nprime {
            v.z2pairs[p] = ((idx & 1) as u8, ((idx >> 1) & 1) as u8);
            idx >>= 2;
        }
        for c in 0..shape.npp {
            v.z4coords[c] = (idx & 3) as u8;
            idx >>= 2;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet, VecDeque};

    /// Breadth-first search over the Shrikhande Cayley graph on Z4².
    fn shrikhande_bfs_distances() -> HashMap<(u8, u8), u32> {
        let mut dist = HashMap::new();
        dist.insert((0u8, 0u8), 0u32);
        let mut queue = VecDeque::from([(0u8, 0u8)]);
        while let Some((x, y)) = queue.pop_front() {
            let d = dist[&(x, y)];
            for &(sx, sy) in &SHRIKHANDE_SET {
                let n = ((x + sx) & 3, (y + sy) & 3);
                if !dist.contains_key(&n) {
                    dist.insert(n, d + 1);
                    queue.push_back(n);
                }
            }
        }
        dist
    }

    #[test]
    fn shrikhande_weight_matches_bfs_oracle() {
        let dist = shrikhande_bfs_distances();
        assert_eq!(dist.len(), 16, "Cayley graph reaches all of Z4xZ4");
        for x in 0..4u8 {
            for y in 0..4u8 {
                assert_eq!(shrikhande_weight((x, y)), dist[&(x, y)], "pair ({x},{y})");
            }
        }
    }

    #[test]
    fn shrikhande_examples() {
        assert_eq!(shrikhande_weight((0, 0)), 0);
        assert_eq!(shrikhande_weight((3, 3)), 1);
        assert_eq!(shrikhande_weight((2, 0)), 2);
    }

    #[test]
    fn weight_example() {
        let v = Vertex {
            z4pairs: vec![(2, 2)],
            z2pairs: vec![(0, 1)],
            z4coords: vec![3],
        };
        assert_eq!(v.weight(), 4);
    }

    #[test]
    fn distance_is_a_translation_invariant_metric() {
        let shape = Shape::new(1, 0, 0);
        let all: Vec<Vertex> = enumerate_space(shape).collect();
        assert_eq!(all.len(), 16);
        for u in &all {
            for v in &all {
                assert_eq!(distance(u, v), distance(v, u), "symmetry");
                assert_eq!(distance(u, v) == 0, u == v, "identity");
                for w in &all {
                    assert!(distance(u, w) <= distance(u, v) + distance(v, w), "triangle");
                    assert_eq!(distance(&u.add(w), &v.add(w)), distance(u, v), "translation");
                }
            }
        }
    }

    #[test]
    fn weight1_enumeration_counts_and_order() {
        let shape = Shape::new(8, 1, 4);
        let pats = enumerate_weight1(shape);
        assert_eq!(pats.len(), 63);
        assert_eq!(pats[0], ErrorPattern::Z4Pair { pair: 0, x: 0, y: 1 });
        assert_eq!(pats[1], ErrorPattern::Z4Pair { pair: 0, x: 1, y: 1 });
        assert_eq!(pats[48], ErrorPattern::Z2Pair { pair: 0, v: 0, w: 1 });
        assert_eq!(pats[51], ErrorPattern::Z4Single { coord: 0, z: 1 });
        assert_eq!(pats[62], ErrorPattern::Z4Single { coord: 3, z: 3 });
    }

    #[test]
    fn weight1_enumeration_is_exactly_the_weight1_sphere() {
        let shape = Shape::new(1, 1, 1);
        let pats = enumerate_weight1(shape);
        assert_eq!(pats.len(), 12);
        let from_patterns: HashSet<Vertex> = pats.iter().map(|p| p.to_vertex(shape)).collect();
        assert_eq!(from_patterns.len(), 12, "patterns are distinct");
        let sphere: HashSet<Vertex> = enumerate_space(shape).filter(|v| v.weight() == 1).collect();
        assert_eq!(from_patterns, sphere);
        // Ball of radius 1 = 1 + weight1_count vertices.
        assert_eq!(
            enumerate_space(shape).filter(|v| v.weight() <= 1).count(),
            1 + shape.weight1_count()
        );
    }

    #[test]
    fn render_parse_roundtrip() {
        let v = Vertex {
            z4pairs: vec![(0, 1), (2, 3)],
            z2pairs: vec![(1, 0)],
            z4coords: vec![3, 2],
        };
        assert_eq!(v.render(), "0123|10|32");
        assert_eq!(Vertex::parse("0123|10|32").unwrap(), v);
        // Empty sections survive the roundtrip.
        let w = Vertex { z4pairs: vec![(1, 0)], z2pairs: vec![], z4coords: vec![2] };
        assert_eq!(w.render(), "10||2");
        assert_eq!(Vertex::parse("10||2").unwrap(), w);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Vertex::parse("01|1"), Err(VertexError::BadSectionCount));
        assert_eq!(Vertex::parse("011||"), Err(VertexError::OddSectionLength(1)));
        assert_eq!(
            Vertex::parse("04||"),
            Err(VertexError::BadSymbol { symbol: '4', position: 1 })
        );
        assert_eq!(
            Vertex::parse("||4"),
            Err(VertexError::BadSymbol { symbol: '4', position: 2 })
        );
        assert_eq!(Vertex::parse("01|2|"), Err(VertexError::OddSectionLength(2)));
        assert_eq!(
            Vertex::parse("01|21|"),
            Err(VertexError::BadSymbol { symbol: '2', position: 3 })
        );
        let shape = Shape::new(1, 0, 1);
        assert!(Vertex::parse_for_shape("01||2", shape).is_ok());
        assert_eq!(
            Vertex::parse_for_shape("01|10|2", shape),
            Err(VertexError::ShapeMismatch {
                expected: shape,
                got: Shape::new(1, 1, 1)
            })
        );
    }
}
