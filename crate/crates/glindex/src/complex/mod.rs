//! Exact reduced simplicial homology over the rationals or a prime field,
//! order complexes of divisibility posets, and connectivity.

mod linalg;

pub use linalg::SparseMat;

use std::fmt;
use std::str::FromStr;

use crate::clutter::SimplicialComplex;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// The coefficient field for homology: the rationals or GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl FieldChoice {
    /// Validates a prime field request. Primes up to 2^31 are supported.
    pub fn prime(p: u64) -> Result<FieldChoice> {
        if p < 2 {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > 1 << 31 {
            return Err(Error::InvalidField(format!(
                "prime {p} exceeds the supported 2^31"
            )));
        }
        let mut q = 2u64;
        while q * q <= p {
            if p % q == 0 {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
            q += 1;
        }
        Ok(FieldChoice::Prime(p))
    }
}

impl FromStr for FieldChoice {
    type Err = Error;

    /// Accepts `q`/`Q` for the rationals or a prime number.
    fn from_str(s: &str) -> Result<FieldChoice> {
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rationals);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::InvalidField(format!("expected q or a prime, got {s:?}")))?;
        FieldChoice::prime(p)
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "q"),
            FieldChoice::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// The order complex of a set of monomials under divisibility: vertices are
/// the given elements, faces are the chains (pairwise comparable subsets).
///
/// The caller passes the contents of an open interval, bottom and top
/// already excluded. An empty input yields the complex whose only face is
/// the empty chain, whose reduced homology is one dimension in degree -1.
pub fn order_complex(elements: &[Monomial]) -> SimplicialComplex {
    let mut elems: Vec<Monomial> = elements.to_vec();
    elems.sort();
    elems.dedup();
    let m = elems.len();
    if m == 0 {
        return SimplicialComplex::empty_face_only(0);
    }
    debug_assert!(elems.windows(2).all(|w| w[0].nvars() == w[1].nvars()));
    // Comparability bitsets: chains are exactly the subsets that are
    // pairwise comparable under divisibility.
    let words = m.div_ceil(64);
    let mut comp: Vec<Vec<u64>> = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in i + 1..m {
            if elems[i].divides_unchecked(&elems[j]) || elems[j].divides_unchecked(&elems[i]) {
                comp[i][j / 64] |= 1 << (j % 64);
                comp[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut layers: Vec<Vec<Box<[u32]>>> = vec![vec![Vec::new().into_boxed_slice()]];
    let mut prefix: Vec<u32> = Vec::new();
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let hi = (m - w * 64).min(64);
            if hi == 64 {
                u64::MAX
            } else {
                (1u64 << hi) - 1
            }
        })
        .collect();
    extend_chains(&comp, &full, 0, &mut prefix, &mut layers);
    for layer in &mut layers {
        layer.sort_unstable();
    }
    SimplicialComplex::from_layers_unchecked(m, layers)
}

/// Depth-first chain enumeration: extends the current chain by every
/// candidate vertex at least `from`, narrowing candidates to the new
/// vertex's comparables.
fn extend_chains(
    comp: &[Vec<u64>],
    cand: &[u64],
    from: usize,
    prefix: &mut Vec<u32>,
    layers: &mut Vec<Vec<Box<[u32]>>>,
) {
    let words = cand.len();
    for w in from / 64..words {
        let mut bits = cand[w];
        if w == from / 64 {
            bits &= !0u64 << (from % 64);
        }
        while bits != 0 {
            let v = w * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            prefix.push(v as u32);
            if layers.len() <= prefix.len() {
                layers.push(Vec::new());
            }
            layers[prefix.len()].push(prefix.clone().into_boxed_slice());
            let narrowed: Vec<u64> = (0..words).map(|k| cand[k] & comp[v][k]).collect();
            if narrowed.iter().any(|&b| b != 0) {
                extend_chains(comp, &narrowed, v + 1, prefix, layers);
            }
            prefix.pop();
        }
    }
}

/// The augmented boundary maps of a simplicial complex, one sparse matrix
/// per face size: matrix `k` maps faces with `k+1` vertices to faces with
/// `k` vertices (matrix 0 is the augmentation onto the empty face).
///
/// Entries are the usual alternating signs; the composite of consecutive
/// maps is checked to vanish at construction time.
pub struct ChainBoundary {
    mats: Vec<SparseMat>,
}

impl ChainBoundary {
    /// Builds all boundary matrices of the complex. Void complexes have no
    /// matrices at all.
    pub fn of(x: &SimplicialComplex) -> ChainBoundary {
        let mut mats = Vec::new();
        if x.is_void() {
            return ChainBoundary { mats };
        }
        let mut size = 1;
        loop {
            let faces = x.faces_of_size(size);
            if faces.is_empty() {
                break;
            }
            let below = x.faces_of_size(size - 1);
            let mut cols: Vec<Vec<(u32, i8)>> = Vec::with_capacity(faces.len());
            for face in faces {
                let mut col = Vec::with_capacity(size);
                let mut sub: Vec<u32> = Vec::with_capacity(size - 1);
                for drop in 0..size {
                    sub.clear();
                    sub.extend(face.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v));
                    let row = x
                        .face_index(&sub)
                        .expect("complexes are downward closed");
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    col.push((row as u32, sign));
                }
                col.sort_unstable_by_key(|&(r, _)| r);
                cols.push(col);
            }
            mats.push(SparseMat::new(below.len(), faces.len(), cols));
            size += 1;
        }
        let boundary = ChainBoundary { mats };
        boundary.assert_composites_vanish();
        boundary
    }

    /// Number of boundary matrices (the largest face size).
    pub fn num_maps(&self) -> usize {
        self.mats.len()
    }

    /// The map from faces of size `k+1` to faces of size `k`.
    pub fn map(&self, k: usize) -> &SparseMat {
        &self.mats[k]
    }

    fn assert_composites_vanish(&self) {
        for k in 0..self.mats.len().saturating_sub(1) {
            let low = &self.mats[k];
            let high = &self.mats[k + 1];
            for j in 0..high.ncols() {
                let mut acc: Vec<i32> = vec![0; low.nrows()];
                for &(mid, v) in high.column(j) {
                    for &(row, w) in low.column(mid as usize) {
                        acc[row as usize] += (v as i32) * (w as i32);
                    }
                }
                assert!(
                    acc.iter().all(|&a| a == 0),
                    "boundary of boundary is non-zero"
                );
            }
        }
    }

    /// Reduced homology dimensions over the chosen field: entry `k` is
    /// dim of reduced homology in degree `k-1`, for `k` from 0 to the
    /// largest face size. Empty for the void complex.
    pub fn homology_dims(&self, field: FieldChoice, f_vector: &[usize]) -> Vec<usize> {
        if f_vector.is_empty() {
            return Vec::new();
        }
        debug_assert_eq!(f_vector.len(), self.mats.len() + 1);
        let ranks: Vec<usize> = self.mats.iter().map(|m| m.rank(field)).collect();
        let mut dims = Vec::with_capacity(f_vector.len());
        for k in 0..f_vector.len() {
            // Map k-1 leaves layer k downward, map k enters it from above.
            let rank_out = if k == 0 { 0 } else { ranks[k - 1] };
            let rank_in = ranks.get(k).copied().unwrap_or(0);
            dims.push(f_vector[k] - rank_out - rank_in);
        }
        dims
    }
}

/// Reduced homology dimensions of a complex: entry `k` is the dimension of
/// reduced homology in degree `k-1`. The void complex yields an empty
/// sequence (its reduced homology vanishes by convention); the empty-face
/// complex yields `[1]`.
pub fn reduced_homology_dims(x: &SimplicialComplex, field: FieldChoice) -> Vec<usize> {
    ChainBoundary::of(x).homology_dims(field, &x.f_vector())
}

/// Connectivity through the 1-skeleton: true iff reduced homology vanishes
/// in degree 0, decided by union-find, independent of the field.
/// The void complex is rejected; complexes without vertices are connected.
pub fn is_connected(x: &SimplicialComplex) -> Result<bool> {
    if x.is_void() {
        return Err(Error::VoidComplex);
    }
    let vertices = x.faces_of_size(1);
    if vertices.len() <= 1 {
        return Ok(true);
    }
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for edge in x.faces_of_size(2) {
        let a = x.face_index(&edge[..1]).expect("closed");
        let b = x.face_index(&edge[1..]).expect("closed");
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    Ok((1..vertices.len()).all(|i| find(&mut parent, i) == root))
}
