//! Reference computations shared by the integration tests. Everything here is
//! deliberately naive and independent of the library: words are plain
//! strings, factors come from scanning long supertiles, vertex classes from a
//! separate union-find, cohomology of graphs from spanning-tree cycle bases,
//! and Smith invariants from determinantal divisors.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tiling_cohomology::algebra::IntMatrix;
use tiling_cohomology::{parse_definition, TilingDefinition};

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

pub fn load(name: &str) -> TilingDefinition {
    let text = std::fs::read_to_string(corpus(name)).unwrap();
    parse_definition(&text).unwrap()
}

pub const FIBONACCI: &[(char, &str)] = &[('a', "ab"), ('b', "a")];
pub const THUE_MORSE: &[(char, &str)] = &[('a', "ab"), ('b', "ba")];

/// All factors of length `len` of the substitution's supertiles, found by
/// iterating every letter to a word far longer than any return time.
pub fn substitution_factors(rules: &[(char, &str)], len: usize) -> BTreeSet<String> {
    let map: BTreeMap<char, &str> = rules.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &(letter, _) in rules {
        let mut word = letter.to_string();
        while word.len() < 20_000 {
            word = word.chars().map(|c| map[&c]).collect();
        }
        let bytes = word.as_bytes();
        for w in bytes.windows(len) {
            out.insert(String::from_utf8(w.to_vec()).unwrap());
        }
    }
    out
}

/// Factors of the bi-infinite repetition of `period`.
pub fn periodic_factors(period: &str, len: usize) -> BTreeSet<String> {
    let word = period.repeat(len / period.len() + 2);
    let bytes = word.as_bytes();
    bytes
        .windows(len)
        .take(period.len())
        .map(|w| String::from_utf8(w.to_vec()).unwrap())
        .collect()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn root(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.root(a), self.root(b));
        self.0[a.max(b)] = a.min(b);
    }
}

/// The depth-n graph of a 1D tiling: edges are the (2n+1)-factors, and the
/// head of edge u meets the tail of edge v whenever u, v overlap in a
/// (2n+2)-factor.
#[derive(Clone, Debug)]
pub struct Graph {
    pub edges: Vec<String>,
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub vertices: usize,
}

impl Graph {
    pub fn from_factors(edges: &BTreeSet<String>, overlaps: &BTreeSet<String>) -> Graph {
        let edges: Vec<String> = edges.iter().cloned().collect();
        let index: BTreeMap<&str, usize> = edges.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let mut dsu = Dsu::new(2 * edges.len());
        for w in overlaps {
            let u = index[&w[..w.len() - 1]];
            let v = index[&w[1..]];
            dsu.join(2 * u + 1, 2 * v);
        }
        let mut label = BTreeMap::new();
        let mut class = |dsu: &mut Dsu, slot: usize| {
            let r = dsu.root(slot);
            let next = label.len();
            *label.entry(r).or_insert(next)
        };
        let mut tail = Vec::new();
        let mut head = Vec::new();
        for i in 0..edges.len() {
            tail.push(class(&mut dsu, 2 * i));
            head.push(class(&mut dsu, 2 * i + 1));
        }
        let vertices = label.len();
        Graph {
            edges,
            tail,
            head,
            vertices,
        }
    }

    pub fn substitution(rules: &[(char, &str)], depth: usize) -> Graph {
        let side = 2 * depth + 1;
        Graph::from_factors(&substitution_factors(rules, side), &substitution_factors(rules, side + 1))
    }

    pub fn periodic(period: &str, depth: usize) -> Graph {
        let side = 2 * depth + 1;
        Graph::from_factors(&periodic_factors(period, side), &periodic_factors(period, side + 1))
    }

    pub fn components(&self) -> usize {
        let mut dsu = Dsu::new(self.vertices);
        for e in 0..self.edges.len() {
            dsu.join(self.tail[e], self.head[e]);
        }
        (0..self.vertices).filter(|&v| dsu.root(v) == v).count()
    }

    /// Rank of H^1, which is free for a graph.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + self.components() - self.vertices
    }

    /// Edges outside a BFS spanning forest, and for each one its fundamental
    /// cycle as a signed edge vector.
    pub fn cycle_basis(&self) -> (Vec<usize>, Vec<Vec<i64>>) {
        let mut incident = vec![Vec::new(); self.vertices];
        for e in 0..self.edges.len() {
            incident[self.tail[e]].push(e);
            incident[self.head[e]].push(e);
        }
        let mut parent_edge: Vec<Option<usize>> = vec![None; self.vertices];
        let mut seen = vec![false; self.vertices];
        let mut in_tree = vec![false; self.edges.len()];
        for root in 0..self.vertices {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    let w = if self.tail[e] == v { self.head[e] } else { self.tail[e] };
                    if !seen[w] {
                        seen[w] = true;
                        in_tree[e] = true;
                        parent_edge[w] = Some(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        // Signed path from v up to its root.
        let to_root = |mut v: usize| {
            let mut z = vec![0i64; self.edges.len()];
            while let Some(e) = parent_edge[v] {
                if self.head[e] == v {
                    z[e] -= 1;
                    v = self.tail[e];
                } else {
                    z[e] += 1;
                    v = self.head[e];
                }
            }
            z
        };
        let mut non_tree = Vec::new();
        let mut cycles = Vec::new();
        for f in (0..self.edges.len()).filter(|&e| !in_tree[e]) {
            let up_head = to_root(self.head[f]);
            let up_tail = to_root(self.tail[f]);
            let mut z: Vec<i64> = up_head.iter().zip(&up_tail).map(|(a, b)| a - b).collect();
            z[f] += 1;
            non_tree.push(f);
            cycles.push(z);
        }
        (non_tree, cycles)
    }

    /// Incidence matrix, rows vertices and columns edges (head minus tail).
    pub fn incidence(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.edges.len()]; self.vertices];
        for e in 0..self.edges.len() {
            m[self.head[e]][e] += 1;
            m[self.tail[e]][e] -= 1;
        }
        m
    }
}

/// The pullback H^1(lower) -> H^1(upper) of the map forgetting the outer
/// corona, in the bases dual to the fundamental cycles. Rows index the
/// upper basis, columns the lower one.
pub fn forgetful_pullback(upper: &Graph, lower: &Graph) -> Vec<Vec<i64>> {
    let lower_index: BTreeMap<&str, usize> =
        lower.edges.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let image: Vec<usize> = upper
        .edges
        .iter()
        .map(|w| lower_index[&w[1..w.len() - 1]])
        .collect();
    let (_, upper_cycles) = upper.cycle_basis();
    let (lower_free, _) = lower.cycle_basis();
    upper_cycles
        .iter()
        .map(|z| {
            let mut pushed = vec![0i64; lower.edges.len()];
            for (e, &c) in z.iter().enumerate() {
                pushed[image[e]] += c;
            }
            lower_free.iter().map(|&f| pushed[f]).collect()
        })
        .collect()
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Nonzero Smith invariants from determinantal divisors:
/// e_k = d_k / d_{k-1} with d_k the gcd of all k x k minors.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                d = d.gcd(&det(&sub));
            }
        }
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

pub fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn int_matrix(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rational_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let delta = &f * &a[rank][j];
                    a[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn abs_det(m: &[Vec<i64>]) -> BigInt {
    det(&big(m)).abs()
}

fn letters(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn definition_text(dimension: u8, labels: &[String], generator: String, symmetry: &str) -> String {
    format!(
        r#"{{"name": "generated", "dimension": {dimension}, "alphabet": {}, "generator": {generator}, "symmetry": "{symmetry}"}}"#,
        serde_json::to_string(labels).unwrap()
    )
}

/// Primitive 1D substitutions on 2 or 3 letters: every image contains every
/// letter (in a rotated order) followed by up to two extra letters.
pub fn substitution_1d() -> impl Strategy<Value = TilingDefinition> {
    (2usize..=3)
        .prop_flat_map(|k| (Just(k), prop::collection::vec((0..k, prop::collection::vec(0..k, 0..=2)), k)))
        .prop_map(|(k, images)| {
            let labels = letters(k);
            let rules: BTreeMap<&str, Vec<&str>> = images
                .iter()
                .enumerate()
                .map(|(i, (rot, extra))| {
                    let mut image: Vec<&str> = (0..k).map(|j| labels[(j + rot) % k].as_str()).collect();
                    image.extend(extra.iter().map(|&j| labels[j].as_str()));
                    (labels[i].as_str(), image)
                })
                .collect();
            let generator = format!(
                r#"{{"type": "substitution_1d", "rules": {}}}"#,
                serde_json::to_string(&rules).unwrap()
            );
            parse_definition(&definition_text(1, &labels, generator, "continuous")).unwrap()
        })
}

/// 2x2 block substitutions on two letters whose images use both letters.
pub fn substitution_2d() -> impl Strategy<Value = TilingDefinition> {
    let image = prop::array::uniform4(0usize..2).prop_filter("both letters", |c| c.contains(&0) && c.contains(&1));
    (image.clone(), image).prop_map(|(a, b)| {
        let labels = letters(2);
        let block = |c: [usize; 4]| {
            let l = |i: usize| labels[c[i]].clone();
            vec![vec![l(0), l(1)], vec![l(2), l(3)]]
        };
        let rules: BTreeMap<&str, Vec<Vec<String>>> = [("a", block(a)), ("b", block(b))].into_iter().collect();
        let generator = format!(
            r#"{{"type": "block_substitution_2d", "rules": {}}}"#,
            serde_json::to_string(&rules).unwrap()
        );
        parse_definition(&definition_text(2, &labels, generator, "continuous")).unwrap()
    })
}

/// Periodic words of length 1..=4 over two letters.
pub fn periodic_1d() -> impl Strategy<Value = (String, TilingDefinition)> {
    prop::collection::vec(0usize..2, 1..=4).prop_map(|word| {
        let labels = letters(2);
        let period: String = word.iter().map(|&i| labels[i].clone()).collect();
        let pattern: Vec<&str> = word.iter().map(|&i| labels[i].as_str()).collect();
        let generator = format!(r#"{{"type": "periodic", "pattern": {}}}"#, serde_json::to_string(&pattern).unwrap());
        (period, parse_definition(&definition_text(1, &labels, generator, "continuous")).unwrap())
    })
}

/// Periodic 2D arrays up to 2x2 over two letters.
pub fn periodic_2d() -> impl Strategy<Value = TilingDefinition> {
    (1usize..=2, 1usize..=2)
        .prop_flat_map(|(w, h)| prop::collection::vec(prop::collection::vec(0usize..2, w), h))
        .prop_map(|rows| {
            let labels = letters(2);
            let pattern: Vec<Vec<&str>> = rows
                .iter()
                .map(|r| r.iter().map(|&i| labels[i].as_str()).collect())
                .collect();
            let generator = format!(r#"{{"type": "periodic", "pattern": {}}}"#, serde_json::to_string(&pattern).unwrap());
            parse_definition(&definition_text(2, &labels, generator, "continuous")).unwrap()
        })
}

/// Any of the generated definition families, with a collar depth small
/// enough to keep debug builds quick.
pub fn definition_and_depth() -> impl Strategy<Value = (TilingDefinition, usize)> {
    prop_oneof![
        (substitution_1d(), 1usize..=3),
        (periodic_1d().prop_map(|(_, d)| d), 1usize..=3),
        (substitution_2d(), Just(1usize)),
        (periodic_2d(), 1usize..=2),
    ]
}

/// Integer matrices up to 5x5 with entries in [-9, 9].
pub fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(move |rows| {
            if rows.is_empty() {
                IntMatrix::zeros(0, c)
            } else {
                IntMatrix::from_rows(&rows)
            }
        })
    })
}
