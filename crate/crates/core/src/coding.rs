//! Binary codes and the bounds on them used by the rank arguments: the
//! Singleton bound with its equality cases, the Plotkin-type bound on
//! neighborhood symmetric differences, and the bound on distance-2 codes
//! whose code matrix has the all-ones vector in its row space.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::independence::independence_number;
use crate::linalg::{rank_exact, IntMatrix};
use crate::vertex_set::VertexSet;

/// A set of distinct words of a common length `n <= 64`. Bit `i` of a word
/// is its `i`-th character.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: usize,
    words: Vec<u64>,
}

impl BinaryCode {
    /// Words are stored sorted; duplicates are rejected.
    pub fn new(n: usize, mut words: Vec<u64>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::OutOfRange {
                what: "code length",
                value: n as i64,
                allowed: "1..=64",
            });
        }
        if let Some(&w) = words.iter().find(|&&w| n < 64 && w >> n != 0) {
            return Err(Error::InvalidCode(format!(
                "word {w:#x} has bits beyond length {n}"
            )));
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidCode(format!(
                "duplicate word {}",
                word_string(pair[0], n)
            )));
        }
        Ok(BinaryCode { n, words })
    }

    /// Every word of length `n`.
    pub fn full_space(n: usize) -> Result<Self> {
        check_enumerable(n)?;
        BinaryCode::new(n, (0..1u64 << n).collect())
    }

    /// Every word of length `n` with weight of the given parity.
    pub fn parity_class(n: usize, odd: bool) -> Result<Self> {
        check_enumerable(n)?;
        let words = (0..1u64 << n)
            .filter(|w| (w.count_ones() % 2 == 1) == odd)
            .collect();
        BinaryCode::new(n, words)
    }

    /// One word per non-blank line, each a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut words = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let len = line.len();
            if *n.get_or_insert(len) != len {
                return Err(Error::InvalidCode(format!(
                    "line {} has length {len}, expected {}",
                    lineno + 1,
                    n.unwrap()
                )));
            }
            let mut w = 0u64;
            for (i, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' if i < 64 => w |= 1 << i,
                    _ => {
                        return Err(Error::InvalidCode(format!(
                            "line {}: unexpected character {ch:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            words.push(w);
        }
        let n = n.ok_or_else(|| Error::InvalidCode("no words".into()))?;
        BinaryCode::new(n, words)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn word_string(&self, w: u64) -> String {
        word_string(w, self.n)
    }

    /// The `n x |C|` matrix whose columns are the words.
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.words.len());
        for (j, &w) in self.words.iter().enumerate() {
            for i in 0..self.n {
                m[(i, j)] = ((w >> i) & 1) as i128;
            }
        }
        m
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &w in &self.words {
            writeln!(f, "{}", self.word_string(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<_> = self.words.iter().map(|&w| self.word_string(w)).collect();
        write!(f, "BinaryCode(n={}, {:?})", self.n, words)
    }
}

fn word_string(w: u64, n: usize) -> String {
    (0..n).map(|i| if (w >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

fn check_enumerable(n: usize) -> Result<()> {
    if n == 0 || n > 20 {
        return Err(Error::OutOfRange {
            what: "code length",
            value: n as i64,
            allowed: "1..=20",
        });
    }
    Ok(())
}

/// The closest pair of distinct words and their distance.
fn closest_pair(c: &BinaryCode) -> Option<(u64, u64, usize)> {
    let mut best: Option<(u64, u64, usize)> = None;
    for (i, &a) in c.words.iter().enumerate() {
        for &b in &c.words[i + 1..] {
            let d = (a ^ b).count_ones() as usize;
            if best.map_or(true, |(_, _, bd)| d < bd) {
                best = Some((a, b, d));
            }
        }
    }
    best
}

pub fn min_distance(c: &BinaryCode) -> Result<usize> {
    closest_pair(c)
        .map(|(_, _, d)| d)
        .ok_or_else(|| Error::InvalidCode("minimum distance needs at least two words".into()))
}

fn require_distance(c: &BinaryCode, d: usize) -> Result<()> {
    match closest_pair(c) {
        Some((a, b, dist)) if dist < d => Err(Error::DistanceViolation {
            first: c.word_string(a),
            second: c.word_string(b),
            distance: dist,
            required: d,
        }),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingletonEquality {
    None,
    FullSpace,
    EvenWeight,
    OddWeight,
    AntipodalPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingletonVerdict {
    pub bound: u128,
    pub holds: bool,
    pub equality: SingletonEquality,
}

/// Checks `|C| <= 2^(n-d+1)` for a code of minimum distance at least `d`
/// and names the extremal family when the bound is attained.
///
/// For `n <= 2` the families overlap (`{00, 11}` is both the even-weight
/// code and an antipodal pair); the first match in the order full space,
/// even, odd, antipodal is reported.
pub fn singleton_verify(c: &BinaryCode, d: usize) -> Result<SingletonVerdict> {
    if d == 0 || d > c.n {
        return Err(Error::OutOfRange {
            what: "d",
            value: d as i64,
            allowed: "1..=n",
        });
    }
    require_distance(c, d)?;
    let bound = 1u128 << (c.n - d + 1);
    let size = c.words.len() as u128;
    let equality = if size != bound {
        SingletonEquality::None
    } else {
        classify_extremal(c)
    };
    Ok(SingletonVerdict {
        bound,
        holds: size <= bound,
        equality,
    })
}

fn classify_extremal(c: &BinaryCode) -> SingletonEquality {
    let n = c.n;
    let size = c.words.len();
    let all_parity = |odd: bool| c.words.iter().all(|w| (w.count_ones() % 2 == 1) == odd);
    if n < 64 && size == 1 << n {
        SingletonEquality::FullSpace
    } else if n < 64 && size == 1 << (n - 1) && all_parity(false) {
        SingletonEquality::EvenWeight
    } else if n < 64 && size == 1 << (n - 1) && all_parity(true) {
        SingletonEquality::OddWeight
    } else if size == 2 && (c.words[0] ^ c.words[1]).count_ones() as usize == n {
        SingletonEquality::AntipodalPair
    } else {
        SingletonEquality::None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlotkinCheck {
    /// `|S| (n - |S|) / (2 (|S| - 1))`, exact.
    #[serde(serialize_with = "serialize_ratio")]
    pub bound: Ratio<u64>,
    pub min_symdiff: usize,
    pub holds: bool,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Compares the smallest `|N(u) △ N(v)|` over pairs of an independent set
/// `S` with `|S| (n - |S|) / (2 (|S| - 1))`.
pub fn plotkin_bound_check(g: &Graph, s: VertexSet) -> Result<PlotkinCheck> {
    g.check_set(s)?;
    if s.len() < 2 {
        return Err(Error::SetTooSmall {
            size: s.len(),
            min: 2,
        });
    }
    for u in s {
        if let Some(v) = (g.neighbors(u) & s).first() {
            return Err(Error::NotIndependent { u, v });
        }
    }
    let verts = s.to_vec();
    let mut min_symdiff = usize::MAX;
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            min_symdiff = min_symdiff.min((g.neighbors(u) ^ g.neighbors(v)).len());
        }
    }
    let (k, n) = (s.len() as u64, g.order() as u64);
    let bound = Ratio::new(k * (n - k), 2 * (k - 1));
    Ok(PlotkinCheck {
        bound,
        min_symdiff,
        holds: Ratio::from_integer(min_symdiff as u64) <= bound,
    })
}

/// Whether the all-ones vector lies in the rational row space of the code
/// matrix, i.e. whether some real `w` has `w . c = 1` for every word `c`.
pub fn j_in_rowspace(c: &BinaryCode) -> bool {
    let m = c.matrix();
    let mut with_ones = m.clone();
    with_ones
        .push_row(&vec![1; c.words.len()])
        .expect("row length matches");
    let rank = |m: &IntMatrix| rank_exact(m).expect("0/1 elimination cannot overflow");
    rank(&with_ones) == rank(&m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2nCheck {
    pub bound: u128,
    pub holds: bool,
}

/// `5 * 2^(n-4)`.
pub fn f2n_bound(n: usize) -> u128 {
    assert!((4..=100).contains(&n));
    5u128 << (n - 4)
}

/// Checks `|C| <= 5 * 2^(n-4)` for a code of length `n >= 5` with minimum
/// distance at least 2 whose matrix has the all-ones vector in its row space.
pub fn f2n_check(c: &BinaryCode) -> Result<F2nCheck> {
    if c.n < 5 {
        return Err(Error::OutOfRange {
            what: "code length",
            value: c.n as i64,
            allowed: ">= 5",
        });
    }
    require_distance(c, 2)?;
    if !j_in_rowspace(c) {
        return Err(Error::OnesNotInRowSpace);
    }
    let bound = f2n_bound(c.n);
    Ok(F2nCheck {
        bound,
        holds: c.words.len() as u128 <= bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2nOptimum {
    pub n: usize,
    pub max_size: usize,
    pub witness: BinaryCode,
    /// Number of distinct hyperplanes examined.
    pub hyperplanes: usize,
}

/// The largest code of length `n` (5 or 6) with minimum distance 2 and the
/// all-ones vector in the row space of its matrix.
///
/// Such a code lies on an affine hyperplane `w . x = 1`, and so does every
/// subset of it. Extending a spanning set of the code by unit vectors shows
/// the hyperplane can be taken to be spanned by `n` linearly independent
/// cube points. The search enumerates every such hyperplane as a set of
/// cube points and takes the largest independent set of the hypercube
/// graph induced on it.
pub fn f2n_brute_max(n: usize) -> Result<F2nOptimum> {
    if !(5..=6).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            allowed: "5..=6",
        });
    }
    Ok(hyperplane_optimum(n))
}

/// Normal vectors of the linear span of the lifted points `(p, 1)`.
#[derive(Clone)]
struct Flat {
    points: u64,
    normals: Vec<[i64; 7]>,
}

fn lift(p: usize, n: usize) -> [i64; 7] {
    let mut v = [0i64; 7];
    for (i, x) in v.iter_mut().enumerate().take(n) {
        *x = ((p >> i) & 1) as i64;
    }
    v[n] = 1;
    v
}

fn dot(a: &[i64; 7], b: &[i64; 7]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Flat {
    fn empty(n: usize) -> Self {
        let normals = (0..=n)
            .map(|i| {
                let mut v = [0i64; 7];
                v[i] = 1;
                v
            })
            .collect();
        Flat { points: 0, normals }
    }

    /// The flat spanned by `self` and the cube point `q`, provided the
    /// origin stays off its affine hull.
    fn extend(&self, q: usize, n: usize) -> Option<Flat> {
        let lq = lift(q, n);
        let s: Vec<i64> = self.normals.iter().map(|v| dot(v, &lq)).collect();
        let j0 = s.iter().position(|&x| x != 0)?;
        let mut normals = Vec::with_capacity(self.normals.len() - 1);
        for (j, v) in self.normals.iter().enumerate() {
            if j == j0 {
                continue;
            }
            let mut w = [0i64; 7];
            for k in 0..=n {
                w[k] = v[k] * s[j0] - self.normals[j0][k] * s[j];
            }
            let g = w.iter().fold(0, |acc, &x| gcd(acc, x));
            if g > 1 {
                w.iter_mut().for_each(|x| *x /= g);
            }
            normals.push(w);
        }
        // The origin lifts to (0, .., 0, 1); it lies in the span exactly
        // when every normal has a zero last coordinate.
        if normals.iter().all(|v| v[n] == 0) {
            return None;
        }
        let mut points = 0u64;
        for p in 1..1usize << n {
            let lp = lift(p, n);
            if normals.iter().all(|v| dot(v, &lp) == 0) {
                points |= 1 << p;
            }
        }
        Some(Flat { points, normals })
    }
}

/// Hypercube graph on the listed points (adjacent when at distance 1).
fn hypercube_on(points: &[usize]) -> Graph {
    let mut g = Graph::new(points.len()).expect("at most 64 points");
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate().skip(i + 1) {
            if (a ^ b).count_ones() == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

fn hyperplane_optimum(n: usize) -> F2nOptimum {
    assert!((1..=6).contains(&n));
    let mut level: Vec<Flat> = vec![Flat::empty(n)];
    for _ in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for flat in &level {
            let mut covered = flat.points;
            for q in 1..1usize << n {
                if covered >> q & 1 == 1 {
                    continue;
                }
                if let Some(ext) = flat.extend(q, n) {
                    covered |= ext.points;
                    if seen.insert(ext.points) {
                        next.push(ext);
                    }
                }
            }
        }
        level = next;
    }
    let mut planes: Vec<u64> = level.iter().map(|f| f.points).collect();
    planes.sort_unstable();
    let mut best: Option<(usize, Vec<u64>)> = None;
    for &plane in &planes {
        let points: Vec<usize> = VertexSet::from_bits(plane).iter().collect();
        let (alpha, set) = independence_number(&hypercube_on(&points));
        let mut words: Vec<u64> = set.iter().map(|i| points[i] as u64).collect();
        words.sort_unstable();
        let better = match &best {
            None => true,
            Some((b, w)) => alpha > *b || (alpha == *b && words < *w),
        };
        if better {
            best = Some((alpha, words));
        }
    }
    let (max_size, words) = best.expect("the coordinate hyperplanes exist");
    F2nOptimum {
        n,
        max_size,
        witness: BinaryCode::new(n, words).expect("distinct words"),
        hyperplanes: planes.len(),
    }
}
