//! Uniform clutters on a small vertex set: complements, induced subclutters,
//! clique complexes, isomorphism via canonical relabeling, and induced
//! embedding search.

mod catalog;
mod simplicial;

pub use catalog::{by_name, catalog_names, conca_ideal, family_c, CatalogEntry};
pub use catalog::{b, b1, b2, b_prime, d1_6, d1_8, d48_7, d6_7};
pub use simplicial::SimplicialComplex;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::{compress, k_subsets, mask_to_vec};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// A d-uniform clutter: a set of d-element subsets (circuits) of `{1..n}`.
///
/// Circuits are stored as bitmasks with bit `i` standing for vertex `i+1`,
/// kept sorted in increasing mask order. Uniformity makes the circuit set an
/// antichain automatically. The vertex set is NOT required to be covered;
/// [`Clutter::is_spanning`] reports whether it is.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clutter {
    n: usize,
    d: usize,
    circuits: Vec<u64>,
}

impl Clutter {
    /// Builds a clutter from circuit masks, validating arity and range.
    /// Duplicate masks are merged.
    pub fn new(n: usize, d: usize, mut circuits: Vec<u64>) -> Result<Clutter> {
        if n > 64 {
            return Err(Error::InvalidClutter(format!(
                "vertex count {n} exceeds the supported 64"
            )));
        }
        if d == 0 {
            return Err(Error::InvalidClutter("uniformity must be at least 1".into()));
        }
        let range: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for &c in &circuits {
            if c & !range != 0 {
                return Err(Error::InvalidClutter(format!(
                    "circuit {:?} uses vertices outside 1..{n}",
                    mask_to_vec(c).iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
            if c.count_ones() as usize != d {
                return Err(Error::InvalidClutter(format!(
                    "circuit {:?} has {} vertices, expected {d}",
                    mask_to_vec(c).iter().map(|v| v + 1).collect::<Vec<_>>(),
                    c.count_ones()
                )));
            }
        }
        circuits.sort_unstable();
        circuits.dedup();
        Ok(Clutter { n, d, circuits })
    }

    /// Builds a clutter from 1-based vertex lists.
    pub fn from_vertex_lists(n: usize, d: usize, lists: &[Vec<usize>]) -> Result<Clutter> {
        let mut circuits = Vec::with_capacity(lists.len());
        for list in lists {
            let mut mask = 0u64;
            for &v in list {
                if v == 0 || v > n {
                    return Err(Error::InvalidClutter(format!(
                        "vertex {v} outside 1..{n}"
                    )));
                }
                mask |= 1 << (v - 1);
            }
            if (mask.count_ones() as usize) != list.len() {
                return Err(Error::InvalidClutter(format!(
                    "circuit {list:?} repeats a vertex"
                )));
            }
            circuits.push(mask);
        }
        Clutter::new(n, d, circuits)
    }

    /// The clutter with no circuits.
    pub fn empty(n: usize, d: usize) -> Clutter {
        Clutter::new(n, d, Vec::new()).expect("empty clutter is always valid")
    }

    /// All d-subsets of `{1..n}`.
    pub fn complete(n: usize, d: usize) -> Clutter {
        Clutter::new(n, d, k_subsets(n, d)).expect("complete clutter is always valid")
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniformity.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Circuit masks, sorted ascending.
    pub fn circuits(&self) -> &[u64] {
        &self.circuits
    }

    /// Number of circuits.
    pub fn num_circuits(&self) -> usize {
        self.circuits.len()
    }

    /// True when there are no circuits.
    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// Membership test for a circuit mask.
    pub fn contains_circuit(&self, mask: u64) -> bool {
        self.circuits.binary_search(&mask).is_ok()
    }

    /// Circuits as sorted 1-based vertex lists, in lexicographic order.
    pub fn vertex_lists(&self) -> Vec<Vec<usize>> {
        let mut lists: Vec<Vec<usize>> = self
            .circuits
            .iter()
            .map(|&c| mask_to_vec(c).iter().map(|v| v + 1).collect())
            .collect();
        lists.sort();
        lists
    }

    /// Union of all circuits as a mask.
    pub fn support_mask(&self) -> u64 {
        self.circuits.iter().fold(0, |acc, &c| acc | c)
    }

    /// True when every vertex lies in some circuit.
    pub fn is_spanning(&self) -> bool {
        let range: u64 = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        self.support_mask() == range
    }

    /// The d-subsets of `{1..n}` that are not circuits of `self`.
    pub fn complement(&self) -> Clutter {
        let circuits = k_subsets(self.n, self.d)
            .into_iter()
            .filter(|c| !self.contains_circuit(*c))
            .collect();
        Clutter {
            n: self.n,
            d: self.d,
            circuits,
        }
    }

    /// Circuits contained in the vertex subset `w` (a mask), with vertices
    /// renumbered 1..|w| in increasing original order.
    pub fn induced(&self, w: u64) -> Clutter {
        let circuits = self
            .circuits
            .iter()
            .filter(|&&c| c & !w == 0)
            .map(|&c| compress(c, w))
            .collect::<Vec<_>>();
        let mut clutter = Clutter {
            n: w.count_ones() as usize,
            d: self.d,
            circuits,
        };
        clutter.circuits.sort_unstable();
        clutter
    }

    /// The square-free monomial ideal with one generator per circuit.
    /// The empty clutter maps to the zero ideal.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let gens: Vec<Monomial> = self
            .circuits
            .iter()
            .map(|&c| Monomial::from_support(self.n, mask_to_vec(c)))
            .collect();
        MonomialIdeal::new(self.n, gens).expect("circuit monomials are valid generators")
    }

    /// The complex of cliques: faces are the subsets `F` with `|F| < d` or
    /// with every d-subset of `F` a circuit.
    pub fn clique_complex(&self) -> SimplicialComplex {
        let mut layers: Vec<Vec<u64>> = vec![vec![0]];
        for size in 1..=self.n {
            let mut layer = Vec::new();
            if size < self.d {
                layer = k_subsets(self.n, size);
            } else {
                // A set is a clique iff all its d-subsets are circuits, which
                // holds iff all its (size-1)-subsets are cliques and, at
                // size = d, the set itself is a circuit.
                let prev: &Vec<u64> = &layers[size - 1];
                let candidates: Vec<u64> = if size == self.d {
                    self.circuits.clone()
                } else {
                    // Grow each previous clique by one vertex above its top bit.
                    let mut grown = Vec::new();
                    for &f in prev {
                        let top = 63 - f.leading_zeros() as usize;
                        for v in top + 1..self.n {
                            grown.push(f | (1 << v));
                        }
                    }
                    grown
                };
                for cand in candidates {
                    let ok = mask_to_vec(cand)
                        .iter()
                        .all(|&v| prev.binary_search(&(cand & !(1 << v))).is_ok());
                    if ok {
                        layer.push(cand);
                    }
                }
                layer.sort_unstable();
            }
            if layer.is_empty() {
                break;
            }
            layers.push(layer);
        }
        let faces: Vec<Vec<u32>> = layers
            .into_iter()
            .flatten()
            .map(|m| mask_to_vec(m).into_iter().map(|v| v as u32).collect())
            .collect();
        SimplicialComplex::from_faces(self.n, faces).expect("clique sets are downward closed")
    }

    /// Applies a vertex relabeling: `perm[old] = new` over 0-based indices.
    pub fn relabel(&self, perm: &[usize]) -> Clutter {
        debug_assert_eq!(perm.len(), self.n);
        let mut circuits: Vec<u64> = self
            .circuits
            .iter()
            .map(|&c| {
                let mut out = 0u64;
                let mut m = c;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    out |= 1 << perm[v];
                    m &= m - 1;
                }
                out
            })
            .collect();
        circuits.sort_unstable();
        Clutter {
            n: self.n,
            d: self.d,
            circuits,
        }
    }

    /// Sorted multiset of vertex degrees (an isomorphism invariant).
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &c in &self.circuits {
            for v in mask_to_vec(c) {
                deg[v] += 1;
            }
        }
        deg.sort_unstable();
        deg
    }

    /// The lexicographically least relabeling of the circuit-mask sequence
    /// over all vertex permutations. Two clutters are isomorphic iff their
    /// canonical forms agree. Memoized; intended for n at most 9.
    pub fn canonical_form(&self) -> Clutter {
        assert!(self.n <= 12, "canonical forms are desk-scale only");
        let memo = canon_memo();
        if let Some(hit) = memo
            .lock()
            .expect("canonical-form memo poisoned")
            .get(self)
        {
            return hit.clone();
        }
        let mut best: Option<Vec<u64>> = None;
        let mut buf: Vec<u64> = Vec::with_capacity(self.circuits.len());
        for perm in perms_of(self.n).iter() {
            self.permuted_circuits(perm, &mut buf);
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        let canon = Clutter {
            n: self.n,
            d: self.d,
            circuits: best.unwrap_or_default(),
        };
        memo.lock()
            .expect("canonical-form memo poisoned")
            .insert(self.clone(), canon.clone());
        canon
    }

    /// True iff no relabeling produces a strictly smaller circuit sequence.
    /// Equivalent to `self == self.canonical_form()` but aborts early and
    /// skips the memo, for use inside enumeration loops.
    pub fn is_canonical(&self) -> bool {
        assert!(self.n <= 12, "canonical forms are desk-scale only");
        let mut buf: Vec<u64> = Vec::with_capacity(self.circuits.len());
        for perm in perms_of(self.n).iter() {
            self.permuted_circuits(perm, &mut buf);
            if buf < self.circuits {
                return false;
            }
        }
        true
    }

    /// Necessary condition for canonicity checked against vertex
    /// transpositions only; a cheap prefilter for `is_canonical`.
    pub fn is_transposition_minimal(&self) -> bool {
        let mut buf: Vec<u64> = Vec::with_capacity(self.circuits.len());
        let mut perm: Vec<usize> = (0..self.n).collect();
        for i in 0..self.n {
            for j in i + 1..self.n {
                perm.swap(i, j);
                self.permuted_circuits_usize(&perm, &mut buf);
                let smaller = buf < self.circuits;
                perm.swap(i, j);
                if smaller {
                    return false;
                }
            }
        }
        true
    }

    fn permuted_circuits(&self, perm: &[u8], buf: &mut Vec<u64>) {
        buf.clear();
        for &c in &self.circuits {
            let mut out = 0u64;
            let mut m = c;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                out |= 1 << perm[v];
                m &= m - 1;
            }
            buf.push(out);
        }
        buf.sort_unstable();
    }

    fn permuted_circuits_usize(&self, perm: &[usize], buf: &mut Vec<u64>) {
        buf.clear();
        for &c in &self.circuits {
            let mut out = 0u64;
            let mut m = c;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                out |= 1 << perm[v];
                m &= m - 1;
            }
            buf.push(out);
        }
        buf.sort_unstable();
    }

    /// Isomorphism test via canonical forms.
    pub fn is_isomorphic_to(&self, other: &Clutter) -> bool {
        self.n == other.n
            && self.d == other.d
            && self.circuits.len() == other.circuits.len()
            && self.degree_sequence() == other.degree_sequence()
            && self.canonical_form().circuits == other.canonical_form().circuits
    }

    /// Searches for an injection of the pattern's vertices into this
    /// clutter's vertices under which the pattern equals the induced
    /// subclutter on the image. Returns the image of each pattern vertex
    /// (0-based) if one exists.
    pub fn find_induced_embedding(&self, pattern: &Clutter) -> Option<Vec<usize>> {
        assert_eq!(self.d, pattern.d, "uniformities must match");
        if pattern.n > self.n || pattern.circuits.len() > self.circuits.len() {
            return None;
        }
        let mut image = vec![usize::MAX; pattern.n];
        let mut used = vec![false; self.n];
        if self.embed_from(pattern, 0, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    fn embed_from(
        &self,
        pattern: &Clutter,
        next: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if next == pattern.n {
            return true;
        }
        'candidates: for w in 0..self.n {
            if used[w] {
                continue;
            }
            image[next] = w;
            // Induced equality on every d-subset of the assigned vertices
            // that involves the newest one.
            for sub in k_subsets(next, self.d - 1) {
                let pat_mask = sub | (1 << next);
                let host_mask = {
                    let mut m = 1u64 << w;
                    for v in mask_to_vec(sub) {
                        m |= 1 << image[v];
                    }
                    m
                };
                if pattern.contains_circuit(pat_mask) != self.contains_circuit(host_mask) {
                    continue 'candidates;
                }
            }
            used[w] = true;
            if self.embed_from(pattern, next + 1, image, used) {
                return true;
            }
            used[w] = false;
        }
        image[next] = usize::MAX;
        false
    }

    /// First pattern of the family that embeds induced, with its embedding.
    pub fn family_witness(&self, family: &[Clutter]) -> Option<(usize, Vec<usize>)> {
        family
            .iter()
            .enumerate()
            .find_map(|(i, p)| self.find_induced_embedding(p).map(|phi| (i, phi)))
    }

    /// True iff no member of the family is an induced subclutter.
    pub fn is_family_free(&self, family: &[Clutter]) -> bool {
        self.family_witness(family).is_none()
    }
}

fn canon_memo() -> &'static Mutex<HashMap<Clutter, Clutter>> {
    static MEMO: OnceLock<Mutex<HashMap<Clutter, Clutter>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All permutations of `0..n` in lexicographic order, cached per `n`.
pub(crate) fn perms_of(n: usize) -> std::sync::Arc<Vec<Vec<u8>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, std::sync::Arc<Vec<Vec<u8>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("permutation cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            use itertools::Itertools;
            std::sync::Arc::new(
                (0..n as u8)
                    .permutations(n)
                    .collect::<Vec<_>>(),
            )
        })
        .clone()
}

/// Wire format for clutters: `{"n": 6, "d": 3, "circuits": [[1,2,3], …]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct ClutterJson {
    pub n: usize,
    pub d: usize,
    pub circuits: Vec<Vec<usize>>,
}

impl Clutter {
    /// Parses the JSON wire format with 1-based vertex lists.
    pub fn from_json_str(s: &str) -> Result<Clutter> {
        let wire: ClutterJson =
            serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Clutter::from_vertex_lists(wire.n, wire.d, &wire.circuits)
    }

    /// Serializes to the JSON wire format with sorted circuit lists.
    pub fn to_json_string(&self) -> String {
        let wire = ClutterJson {
            n: self.n,
            d: self.d,
            circuits: self.vertex_lists(),
        };
        serde_json::to_string(&wire).expect("clutter serialization cannot fail")
    }
}
