//! Lcm lattices of monomial ideals.
//!
//! The lcm lattice `L(I)` has one element per distinct least common multiple
//! of a subset of the minimal generators, ordered by divisibility. The empty
//! subset contributes the bottom element 1, the generators are the atoms, and
//! the lcm of all generators is the top. Multigraded Betti numbers are read
//! off the reduced homology of order complexes of open intervals of `L(I)`,
//! so the lattice is materialized eagerly and cached per ideal.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::clutter::SimplicialComplex;
use crate::complex::order_complex;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Materialized lcm lattice, optionally truncated at a degree cap.
///
/// Invariant: `elements` is sorted, starts with 1, is closed under pairwise
/// lcm (below the cap when one is set), and every element is the lcm of the
/// atoms dividing it. A capped lattice contains exactly the elements of the
/// full lattice whose degree is at most the cap, so interval queries at
/// degrees within the cap agree with the full lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    n: usize,
    atoms: Vec<Monomial>,
    elements: Vec<Monomial>,
    top: Monomial,
    cap: Option<u32>,
}

impl LcmLattice {
    /// Builds the full lcm lattice of `ideal`.
    pub fn build(ideal: &MonomialIdeal) -> Result<LcmLattice> {
        LcmLattice::build_inner(ideal, None)
    }

    /// Builds the sublattice of elements of degree at most `cap`.
    ///
    /// Every partial lcm of a subset divides the subset's full lcm, so
    /// saturating only below the cap still finds every lattice element of
    /// degree at most `cap`.
    pub fn build_capped(ideal: &MonomialIdeal, cap: u32) -> Result<LcmLattice> {
        LcmLattice::build_inner(ideal, Some(cap))
    }

    fn build_inner(ideal: &MonomialIdeal, cap: Option<u32>) -> Result<LcmLattice> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let atoms = ideal.generators().to_vec();
        let top = atoms
            .iter()
            .skip(1)
            .fold(atoms[0].clone(), |t, g| t.lcm_unchecked(g));
        let cap = cap.filter(|&c| c < top.degree());

        let mut set: BTreeSet<Monomial> = BTreeSet::new();
        let mut queue: Vec<Monomial> = Vec::new();
        set.insert(Monomial::one(ideal.nvars()));
        for g in &atoms {
            if cap.is_none_or(|c| g.degree() <= c) && set.insert(g.clone()) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in &atoms {
                let l = v.lcm_unchecked(g);
                if l != v && cap.is_none_or(|c| l.degree() <= c) && set.insert(l.clone()) {
                    queue.push(l);
                }
            }
        }

        Ok(LcmLattice {
            n: ideal.nvars(),
            atoms,
            elements: set.into_iter().collect(),
            top,
            cap,
        })
    }

    /// Returns the cached full lattice of `ideal`, building it on first use.
    pub fn of(ideal: &MonomialIdeal) -> Result<Arc<LcmLattice>> {
        static CACHE: OnceLock<Mutex<HashMap<MonomialIdeal, Arc<LcmLattice>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(l) = cache.lock().unwrap().get(ideal) {
            return Ok(Arc::clone(l));
        }
        let built = Arc::new(LcmLattice::build(ideal)?);
        let mut map = cache.lock().unwrap();
        if map.len() >= 128 {
            map.clear();
        }
        Ok(Arc::clone(map.entry(ideal.clone()).or_insert(built)))
    }

    /// Number of variables of the ambient ring.
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// The minimal generators of the ideal, in the order the ideal stores them.
    pub fn atoms(&self) -> &[Monomial] {
        &self.atoms
    }

    /// All lattice elements in increasing lexicographic order, starting with 1.
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    /// Number of lattice elements, bottom included.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The lcm of all atoms. For a capped lattice this may exceed the cap
    /// and then is not listed in `elements`.
    pub fn top(&self) -> &Monomial {
        &self.top
    }

    /// The degree cap, if this lattice was truncated.
    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// Membership test. For a capped lattice the answer is only meaningful
    /// for degrees within the cap; anything above it reports false.
    pub fn contains(&self, u: &Monomial) -> bool {
        self.elements.binary_search(u).is_ok()
    }

    /// Elements of the given total degree.
    pub fn elements_of_degree(&self, j: u32) -> Vec<&Monomial> {
        self.elements.iter().filter(|v| v.degree() == j).collect()
    }

    /// The open interval (1, u): all elements strictly between the bottom
    /// and `u` in divisibility order. Errors when `u` is not a lattice
    /// element or lies above the degree cap.
    pub fn open_interval(&self, u: &Monomial) -> Result<Vec<Monomial>> {
        if u.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: u.nvars(),
            });
        }
        if let Some(c) = self.cap {
            if u.degree() > c {
                return Err(Error::Unsupported(format!(
                    "interval at degree {} requested from a lattice capped at degree {c}",
                    u.degree()
                )));
            }
        }
        if !self.contains(u) {
            return Err(Error::NotInLattice(u.to_string()));
        }
        Ok(self
            .elements
            .iter()
            .filter(|v| !v.is_one() && *v != u && v.divides_unchecked(u))
            .cloned()
            .collect())
    }

    /// Order complex of the open interval (1, u): faces are chains.
    pub fn interval_order_complex(&self, u: &Monomial) -> Result<SimplicialComplex> {
        Ok(order_complex(&self.open_interval(u)?))
    }

    /// Number of elements in a longest divisibility chain of the lattice,
    /// bottom and top included. Quadratic in the number of elements.
    pub fn longest_chain(&self) -> usize {
        let m = self.elements.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| self.elements[i].degree());
        let mut best = vec![1usize; m];
        let mut longest = 0;
        for (pos, &i) in order.iter().enumerate() {
            for &j in order[..pos].iter() {
                if best[j] + 1 > best[i]
                    && self.elements[j].degree() < self.elements[i].degree()
                    && self.elements[j].divides_unchecked(&self.elements[i])
                {
                    best[i] = best[j] + 1;
                }
            }
            longest = longest.max(best[i]);
        }
        longest
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter as catalog;
    use crate::complex::{is_connected, reduced_homology_dims, FieldChoice};

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        let gens = gens.iter().map(|e| Monomial::new(e.to_vec())).collect();
        MonomialIdeal::new(n, gens).unwrap()
    }

    /// Oracle: lcms of all nonempty generator subsets, plus 1.
    fn subset_lcm_oracle(ideal: &MonomialIdeal) -> Vec<Monomial> {
        let gens = ideal.generators();
        let mut set = BTreeSet::new();
        set.insert(Monomial::one(ideal.nvars()));
        for mask in 1u32..(1 << gens.len()) {
            let mut l = Monomial::one(ideal.nvars());
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    l = l.lcm_unchecked(g);
                }
            }
            set.insert(l);
        }
        set.into_iter().collect()
    }

    #[test]
    fn two_generator_chain() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let l = LcmLattice::build(&i).unwrap();
        let expect = vec![
            Monomial::one(3),
            Monomial::new(vec![0, 1, 1]),
            Monomial::new(vec![1, 1, 0]),
            Monomial::new(vec![1, 1, 1]),
        ];
        assert_eq!(l.elements(), &expect[..]);
        assert_eq!(l.atoms().len(), 2);
        assert_eq!(*l.top(), Monomial::new(vec![1, 1, 1]));
        assert_eq!(l.longest_chain(), 3);
    }

    #[test]
    fn principal_ideal_has_two_elements() {
        let i = ideal(3, &[&[1, 1, 1]]);
        let l = LcmLattice::build(&i).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.longest_chain(), 2);
        assert_eq!(l.open_interval(l.top()).unwrap(), vec![]);
    }

    #[test]
    fn zero_ideal_rejected() {
        assert_eq!(
            LcmLattice::build(&MonomialIdeal::zero(4)).unwrap_err(),
            Error::ZeroIdeal
        );
    }

    #[test]
    fn matches_subset_lcm_oracle() {
        let bipyramid = catalog::b().complement().edge_ideal();
        let conca = catalog::conca_ideal();
        let mixed = ideal(4, &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 2], &[0, 1, 1, 0]]);
        for i in [&bipyramid, &conca, &mixed] {
            let l = LcmLattice::build(i).unwrap();
            assert_eq!(l.elements(), &subset_lcm_oracle(i)[..]);
        }
    }

    #[test]
    fn every_element_is_lcm_of_atoms_below() {
        let i = catalog::b().complement().edge_ideal();
        let l = LcmLattice::build(&i).unwrap();
        for v in l.elements().iter().skip(1) {
            let joined = l
                .atoms()
                .iter()
                .filter(|a| a.divides_unchecked(v))
                .fold(Monomial::one(l.nvars()), |t, a| t.lcm_unchecked(a));
            assert_eq!(&joined, v);
        }
    }

    #[test]
    fn capped_equals_filtered_full() {
        let i = catalog::b().complement().edge_ideal();
        let full = LcmLattice::build(&i).unwrap();
        for cap in [0, 3, 4, 5, 9] {
            let capped = LcmLattice::build_capped(&i, cap).unwrap();
            let filtered: Vec<Monomial> = full
                .elements()
                .iter()
                .filter(|v| v.degree() <= cap)
                .cloned()
                .collect();
            assert_eq!(capped.elements(), &filtered[..]);
            assert_eq!(capped.top(), full.top());
        }
        // A cap at or above the top degree is dropped entirely.
        assert_eq!(LcmLattice::build_capped(&i, 5).unwrap().cap(), None);
        assert_eq!(LcmLattice::build_capped(&i, 4).unwrap().cap(), Some(4));
    }

    #[test]
    fn capped_interval_above_cap_is_unsupported() {
        let i = catalog::b().complement().edge_ideal();
        let capped = LcmLattice::build_capped(&i, 4).unwrap();
        assert!(matches!(
            capped.open_interval(&Monomial::new(vec![1, 1, 1, 1, 1])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn bipyramid_complement_top_interval() {
        let i = catalog::b().complement().edge_ideal();
        let l = LcmLattice::build(&i).unwrap();
        let top = Monomial::new(vec![1, 1, 1, 1, 1]);
        assert_eq!(*l.top(), top);
        let interval = l.open_interval(&top).unwrap();
        assert!(interval.iter().all(|v| !v.is_one() && *v != top));
        assert!(interval.len() >= l.atoms().len());
    }

    #[test]
    fn two_disjoint_triangles_top_interval_is_the_two_atoms() {
        let i = catalog::b_prime().complement().edge_ideal();
        assert_eq!(i.generators().len(), 2);
        let l = LcmLattice::build(&i).unwrap();
        let interval = l.open_interval(l.top()).unwrap();
        assert_eq!(
            interval,
            vec![
                Monomial::new(vec![0, 0, 0, 1, 1, 1]),
                Monomial::new(vec![1, 1, 1, 0, 0, 0]),
            ]
        );
        assert!(!is_connected(&l.interval_order_complex(l.top()).unwrap()).unwrap());
    }

    #[test]
    fn squared_bipyramid_complement_interval_is_disconnected() {
        // The square of the edge ideal of the bi-pyramid complement has a
        // degree 8 multidegree whose open interval splits off an isolated
        // atom, which forces a nonlinear first syzygy.
        let i = catalog::b().complement().edge_ideal().power(2);
        let l = LcmLattice::build(&i).unwrap();
        let alpha = Monomial::new(vec![1, 2, 2, 2, 1]);
        let interval = l.open_interval(&alpha).unwrap();
        let expect: Vec<Monomial> = [
            [0, 2, 2, 2, 0],
            [1, 1, 1, 2, 1],
            [1, 1, 2, 1, 1],
            [1, 1, 2, 2, 1],
            [1, 2, 1, 1, 1],
            [1, 2, 1, 2, 1],
            [1, 2, 2, 1, 1],
        ]
        .iter()
        .map(|e| Monomial::new(e.to_vec()))
        .collect();
        assert_eq!(interval, expect);
        let oc = l.interval_order_complex(&alpha).unwrap();
        assert!(!is_connected(&oc).unwrap());
        assert!(reduced_homology_dims(&oc, FieldChoice::Rationals)[1] >= 1);
    }

    #[test]
    fn interval_at_atom_is_empty_with_unit_homology() {
        let i = catalog::b().complement().edge_ideal();
        let l = LcmLattice::build(&i).unwrap();
        let atom = &l.atoms()[0];
        assert_eq!(l.open_interval(atom).unwrap(), vec![]);
        let oc = l.interval_order_complex(atom).unwrap();
        assert_eq!(reduced_homology_dims(&oc, FieldChoice::Rationals), vec![1]);
    }

    #[test]
    fn interval_errors() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let l = LcmLattice::build(&i).unwrap();
        assert_eq!(
            l.open_interval(&Monomial::new(vec![1, 0, 1])).unwrap_err(),
            Error::NotInLattice("x1x3".into())
        );
        assert!(matches!(
            l.open_interval(&Monomial::new(vec![1, 1])).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn cache_returns_shared_lattice() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let a = LcmLattice::of(&i).unwrap();
        let b = LcmLattice::of(&i).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn longest_chain_bounded_by_atom_count() {
        for i in [
            catalog::b().complement().edge_ideal(),
            catalog::conca_ideal(),
        ] {
            let l = LcmLattice::build(&i).unwrap();
            assert!(l.longest_chain() <= l.atoms().len() + 1);
            assert!(l.longest_chain() >= 2);
        }
    }
}
