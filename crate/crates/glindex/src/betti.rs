//! Multigraded and graded Betti numbers of monomial ideals.
//!
//! The primary route computes `β_{i,u}(I)` as the reduced homology of the
//! order complex of the open interval `(1, u)` in the lcm lattice. A second,
//! independent route for square-free ideals sums reduced homology of induced
//! subcomplexes of the Stanley-Reisner complex over vertex subsets. On top of
//! the Betti numbers sit the linear-resolution test, the linear-presentation
//! test, and the resolution index (number of leading linear steps plus one).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use crate::bits::{k_subsets, mask_to_vec};
use crate::clutter::SimplicialComplex;
use crate::complex::{order_complex, reduced_homology_dims, FieldChoice};
use crate::error::{Error, Result};
use crate::lattice::LcmLattice;
use crate::monomial::{Monomial, MonomialIdeal};

/// Either a finite homological index or the marker for a linear resolution.
///
/// The derived order places every finite value below `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexValue {
    Finite(usize),
    Infinity,
}

impl IndexValue {
    pub fn is_infinite(self) -> bool {
        self == IndexValue::Infinity
    }

    pub fn as_finite(self) -> Option<usize> {
        match self {
            IndexValue::Finite(i) => Some(i),
            IndexValue::Infinity => None,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Finite(i) => write!(f, "{i}"),
            IndexValue::Infinity => write!(f, "infinity"),
        }
    }
}

/// Sparse table of multigraded Betti numbers; zero entries are absent.
///
/// The multigraded entries are the single source of truth; every graded view
/// is a sum over multidegrees of the same total degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    fn from_entries(entries: impl IntoIterator<Item = (usize, Monomial, usize)>) -> BettiTable {
        let mut map = BTreeMap::new();
        for (i, u, rank) in entries {
            if rank > 0 {
                *map.entry((i, u)).or_insert(0) += rank;
            }
        }
        BettiTable { entries: map }
    }

    /// Multigraded entries `(i, u, rank)` sorted by homological degree then
    /// lexicographically by exponent vector; every rank is positive.
    pub fn multigraded(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> {
        self.entries.iter().map(|((i, u), r)| (*i, u, *r))
    }

    /// Graded view: `(i, j)` mapped to the sum of ranks in total degree `j`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, u), r) in &self.entries {
            *out.entry((*i, u.degree())).or_insert(0) += r;
        }
        out
    }

    pub fn get_multi(&self, i: usize, u: &Monomial) -> usize {
        self.entries.get(&(i, u.clone())).copied().unwrap_or(0)
    }

    pub fn get_graded(&self, i: usize, j: u32) -> usize {
        self.entries
            .iter()
            .filter(|((ei, u), _)| *ei == i && u.degree() == j)
            .map(|(_, r)| r)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological degree with a nonzero entry, if any.
    pub fn max_homological_degree(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// JSON with both views, each sorted: `{"graded": [[i, j, rank], ...],
    /// "multigraded": [[i, [exponents], rank], ...]}`.
    pub fn to_json_string(&self) -> String {
        let graded: Vec<_> = self
            .graded()
            .into_iter()
            .map(|((i, j), r)| json!([i, j, r]))
            .collect();
        let multigraded: Vec<_> = self
            .multigraded()
            .map(|(i, u, r)| json!([i, u.exponents(), r]))
            .collect();
        serde_json::to_string_pretty(&json!({
            "graded": graded,
            "multigraded": multigraded,
        }))
        .expect("betti table serialization cannot fail")
    }
}

/// Generators of `ideal` dividing `u`.
fn atoms_below<'a>(ideal: &'a MonomialIdeal, u: &Monomial) -> Vec<&'a Monomial> {
    ideal
        .generators()
        .iter()
        .filter(|g| g.divides_unchecked(u))
        .collect()
}

/// Connected components of the graph on `atoms` with edges where the pairwise
/// lcm differs from `u`. Two atoms with a proper join lie under a common
/// interval element, and conversely chains of such joins exhaust the
/// connectivity of the order complex of `(1, u)`.
fn join_components(atoms: &[&Monomial], u: &Monomial) -> usize {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let m = atoms.len();
    let mut parent: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj && atoms[i].lcm_unchecked(atoms[j]) != *u {
                parent[ri] = rj;
            }
        }
    }
    (0..m).filter(|&x| find(&mut parent, x) == x).count()
}

/// The open interval `(1, u)` generated by the given atoms: all lcms of
/// nonempty atom subsets except `u` itself. Every listed atom must divide `u`.
fn interval_below(atoms: &[&Monomial], u: &Monomial) -> Vec<Monomial> {
    let mut set: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue: Vec<Monomial> = Vec::new();
    for a in atoms {
        if **a != *u && set.insert((*a).clone()) {
            queue.push((*a).clone());
        }
    }
    while let Some(v) = queue.pop() {
        for a in atoms {
            let l = v.lcm_unchecked(a);
            if l != *u && l != v && set.insert(l.clone()) {
                queue.push(l);
            }
        }
    }
    set.into_iter().collect()
}

/// The multigraded Betti number `β_{i,u}(I)` over the chosen field.
///
/// Equals the dimension of the `(i-1)`-st reduced homology of the order
/// complex of the open interval below `u` in the lcm lattice. A monomial
/// outside the lattice (the bottom element included) yields 0 rather than an
/// error. Homological degrees 0 and 1 shortcut to atom membership and join
/// connectivity; both shortcuts are field-independent.
pub fn beta_multi(ideal: &MonomialIdeal, i: usize, u: &Monomial, field: FieldChoice) -> Result<usize> {
    if u.nvars() != ideal.nvars() {
        return Err(Error::DimensionMismatch {
            left: ideal.nvars(),
            right: u.nvars(),
        });
    }
    if ideal.is_zero() || u.is_one() {
        return Ok(0);
    }
    let below = atoms_below(ideal, u);
    let Some(first) = below.first() else {
        return Ok(0);
    };
    let join = below
        .iter()
        .skip(1)
        .fold((*first).clone(), |t, g| t.lcm_unchecked(g));
    if join != *u {
        return Ok(0);
    }
    match i {
        0 => Ok(usize::from(below.iter().any(|g| *g == u))),
        1 => Ok(join_components(&below, u) - 1),
        _ => {
            let oc = order_complex(&interval_below(&below, u));
            Ok(reduced_homology_dims(&oc, field).get(i).copied().unwrap_or(0))
        }
    }
}

/// The graded Betti number `β_{i,j}(I)`: the sum of `β_{i,u}(I)` over lattice
/// elements `u` of total degree `j`.
///
/// For `i = 1` only joins of two generators can carry homology (an element
/// that is no pairwise join has a complete join graph), so the sum runs over
/// deduplicated pairwise lcms of degree `j` and no lattice is materialized.
pub fn beta_graded(ideal: &MonomialIdeal, i: usize, j: u32, field: FieldChoice) -> usize {
    if ideal.is_zero() {
        return 0;
    }
    let gens = ideal.generators();
    match i {
        0 => gens.iter().filter(|g| g.degree() == j).count(),
        1 => {
            let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
            for (a, b) in gens
                .iter()
                .enumerate()
                .flat_map(|(x, a)| gens[x + 1..].iter().map(move |b| (a, b)))
            {
                let l = a.lcm_unchecked(b);
                if l.degree() == j {
                    candidates.insert(l);
                }
            }
            candidates
                .iter()
                .map(|u| join_components(&atoms_below(ideal, u), u) - 1)
                .sum()
        }
        _ => {
            let lattice = LcmLattice::build_capped(ideal, j)
                .expect("nonzero ideal always has a lattice");
            lattice
                .elements_of_degree(j)
                .into_par_iter()
                .map(|u| {
                    let oc = order_complex(&lattice.open_interval(u).expect("element of lattice"));
                    reduced_homology_dims(&oc, field).get(i).copied().unwrap_or(0)
                })
                .sum()
        }
    }
}

/// Full multigraded Betti table of `ideal` via interval homology of the
/// (cached) lcm lattice.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldChoice) -> Result<BettiTable> {
    let lattice = LcmLattice::of(ideal)?;
    let per_element: Vec<(Monomial, Vec<usize>)> = lattice
        .elements()
        .par_iter()
        .filter(|u| !u.is_one())
        .map(|u| {
            let oc = lattice
                .interval_order_complex(u)
                .expect("element of lattice");
            (u.clone(), reduced_homology_dims(&oc, field))
        })
        .collect();
    Ok(BettiTable::from_entries(per_element.into_iter().flat_map(
        |(u, dims)| {
            dims.into_iter()
                .enumerate()
                .filter(|&(_, r)| r > 0)
                .map(move |(i, r)| (i, u.clone(), r))
        },
    )))
}

/// The Stanley-Reisner complex of a square-free monomial ideal: faces are the
/// vertex sets supporting no generator.
pub fn stanley_reisner_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    let n = ideal.nvars();
    if n > 20 {
        return Err(Error::Unsupported(format!(
            "Stanley-Reisner enumeration over {n} > 20 vertices"
        )));
    }
    let gen_masks: Vec<u64> = ideal.generators().iter().map(|g| g.support_mask()).collect();
    let faces: Vec<Vec<u32>> = (0u64..1 << n)
        .filter(|w| gen_masks.iter().all(|gm| gm & w != *gm))
        .map(|w| mask_to_vec(w).into_iter().map(|v| v as u32).collect())
        .collect();
    SimplicialComplex::from_faces(n, faces)
}

/// The graded Betti number `β_{i,j}` of a square-free ideal by summation of
/// reduced homology `H_{j-i-2}` of induced Stanley-Reisner subcomplexes over
/// all vertex subsets of size `j`. Independent of the lattice route.
pub fn hochster_beta(
    ideal: &MonomialIdeal,
    i: usize,
    j: u32,
    field: FieldChoice,
) -> Result<usize> {
    let delta = stanley_reisner_complex(ideal)?;
    let j = j as usize;
    if j > ideal.nvars() || j < i + 1 {
        return Ok(0);
    }
    let k = j - i - 1;
    Ok(k_subsets(ideal.nvars(), j)
        .into_par_iter()
        .map(|w| {
            let dims = reduced_homology_dims(&delta.induced_mask(w), field);
            dims.get(k).copied().unwrap_or(0)
        })
        .sum())
}

/// Full Betti table of a square-free ideal by the subset-homology route: one
/// induced-subcomplex homology computation per vertex subset.
pub fn hochster_table(ideal: &MonomialIdeal, field: FieldChoice) -> Result<BettiTable> {
    let delta = stanley_reisner_complex(ideal)?;
    let n = ideal.nvars();
    let per_subset: Vec<(u64, Vec<usize>)> = (1u64..1 << n)
        .into_par_iter()
        .map(|w| (w, reduced_homology_dims(&delta.induced_mask(w), field)))
        .collect();
    Ok(BettiTable::from_entries(per_subset.into_iter().flat_map(
        |(w, dims)| {
            let n = n;
            let j = w.count_ones() as usize;
            dims.into_iter()
                .enumerate()
                .filter(move |&(k, r)| r > 0 && j >= k + 1)
                .map(move |(k, r)| (j - k - 1, Monomial::from_support(n, mask_to_vec(w)), r))
        },
    )))
}

/// The resolution index of an equigenerated ideal: the least `i ≥ 1` with a
/// nonzero `β_{i,j}` in some degree `j > d + i`, or `Infinity` when the
/// resolution is linear.
///
/// Interval order complexes have dimension bounded by the longest chain of
/// the lattice minus three, so homological degrees beyond that bound vanish
/// identically and the scan is finite and exact.
pub fn gl_index(ideal: &MonomialIdeal, field: FieldChoice) -> Result<IndexValue> {
    let d = ideal.equigenerated_degree()?;
    if (d + 2..=2 * d).any(|j| beta_graded(ideal, 1, j, field) != 0) {
        return Ok(IndexValue::Finite(1));
    }
    let lattice = LcmLattice::of(ideal)?;
    let bound = lattice.longest_chain().saturating_sub(2);
    let elements = lattice.elements();
    let mut dims: Vec<Option<Vec<usize>>> = vec![None; elements.len()];
    for i in 2..=bound {
        for (idx, u) in elements.iter().enumerate() {
            if u.is_one() || u.degree() as usize <= d as usize + i {
                continue;
            }
            let dv = dims[idx].get_or_insert_with(|| {
                let oc = lattice
                    .interval_order_complex(u)
                    .expect("element of lattice");
                reduced_homology_dims(&oc, field)
            });
            if dv.get(i).copied().unwrap_or(0) != 0 {
                return Ok(IndexValue::Finite(i));
            }
        }
    }
    Ok(IndexValue::Infinity)
}

/// True when the first syzygies are linear: `β_{1,j}(I) = 0` for
/// `d + 2 ≤ j ≤ 2d`. Joins of two degree-`d` generators never exceed degree
/// `2d`, so the scan range is exhaustive. Equivalent to a resolution index
/// above 1.
pub fn is_linearly_presented(ideal: &MonomialIdeal, field: FieldChoice) -> Result<bool> {
    let d = ideal.equigenerated_degree()?;
    Ok((d + 2..=2 * d).all(|j| beta_graded(ideal, 1, j, field) == 0))
}

/// True when the whole resolution is linear, i.e. the resolution index is
/// `Infinity`.
pub fn has_linear_resolution(ideal: &MonomialIdeal, field: FieldChoice) -> Result<bool> {
    Ok(gl_index(ideal, field)? == IndexValue::Infinity)
}
