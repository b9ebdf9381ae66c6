//! Monomials over a fixed variable count and minimal generating sets of
//! monomial ideals, including powers.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial in a fixed polynomial ring, stored as one exponent per variable.
///
/// Equality and hashing are on the exponent vector. The derived total order
/// is lexicographic on exponents and is used for canonical output only;
/// divisibility is the partial order queried via [`Monomial::divides`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial from its exponent vector. The vector length fixes
    /// the ambient variable count and must be at least 1.
    pub fn new(exps: Vec<u32>) -> Monomial {
        assert!(!exps.is_empty(), "monomial needs at least one variable");
        Monomial { exps }
    }

    /// The unit monomial 1 in `n` variables (all exponents zero).
    pub fn one(n: usize) -> Monomial {
        Monomial::new(vec![0; n])
    }

    /// Square-free monomial with exponent 1 exactly at the given 0-based
    /// variable indices.
    pub fn from_support(n: usize, vars: impl IntoIterator<Item = usize>) -> Monomial {
        let mut exps = vec![0u32; n];
        for v in vars {
            assert!(v < n, "variable index {v} out of range for {n} variables");
            exps[v] = 1;
        }
        Monomial::new(exps)
    }

    /// Number of ambient variables.
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// The exponent vector.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree: the sum of all exponents.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// True for the unit monomial 1.
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// True when every exponent is 0 or 1.
    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Sorted 0-based indices of the variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Support as a bitmask (bit `i` set iff variable `i` occurs).
    /// Only valid for up to 64 variables.
    pub fn support_mask(&self) -> u64 {
        assert!(self.exps.len() <= 64);
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    fn check_same_nvars(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() == other.exps.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.exps.len(),
                right: other.exps.len(),
            })
        }
    }

    /// Least common multiple: component-wise maximum of exponents.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_nvars(other)?;
        Ok(self.lcm_unchecked(other))
    }

    /// `lcm` for callers that already guarantee matching variable counts.
    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial { exps }
    }

    /// Greatest common divisor: component-wise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_nvars(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok(Monomial { exps })
    }

    /// True iff `self` divides `other` (every exponent is bounded by the
    /// matching one).
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_same_nvars(other)?;
        Ok(self.divides_unchecked(other))
    }

    /// `divides` for callers that already guarantee matching variable counts.
    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// Product of two monomials: component-wise exponent sum.
    pub fn times(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_nvars(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Monomial { exps })
    }

    /// Exact quotient `other / self` when `self` divides it, else `None`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.exps.len() != other.exps.len() || !self.divides_unchecked(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(&b, &a)| b - a)
            .collect();
        Some(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

/// Keeps exactly the divisibility-minimal elements of the input, deduplicated
/// and sorted. The returned antichain generates the same ideal.
pub fn minimalize(ms: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<&Monomial> = ms.iter().collect();
    // Ascending degree: a proper divisor always has strictly smaller degree,
    // so each element only needs checking against already-kept ones.
    sorted.sort_by_key(|m| (m.degree(), m.exponents().to_vec()));
    sorted.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !kept.iter().any(|g| g.divides_unchecked(m)) {
            kept.push(m.clone());
        }
    }
    kept.sort();
    kept
}

/// A monomial ideal held by its unique minimal set of monomial generators,
/// sorted lexicographically. The empty generator set is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens` in `n` variables, minimalizing
    /// the generating set. Rejects the unit monomial as a generator and any
    /// exponent vector of the wrong length.
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        for g in &gens {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: g.nvars(),
                });
            }
            if g.is_one() {
                return Err(Error::UnitGenerator);
            }
        }
        let gens = minimalize(&gens);
        Ok(MonomialIdeal { n, gens })
    }

    /// The zero ideal in `n` variables.
    pub fn zero(n: usize) -> MonomialIdeal {
        MonomialIdeal { n, gens: Vec::new() }
    }

    /// Ambient variable count.
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// The minimal generators, sorted lexicographically.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// True for the zero ideal (no generators).
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when every generator is square-free.
    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// Ideal membership: some minimal generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// The common degree of all generators, or an error if the ideal is zero
    /// or generated in mixed degrees.
    pub fn equigenerated_degree(&self) -> Result<u32> {
        let first = self.gens.first().ok_or(Error::ZeroIdeal)?.degree();
        if self.gens.iter().any(|g| g.degree() != first) {
            return Err(Error::MixedDegrees);
        }
        Ok(first)
    }

    /// Minimal generating set of the `k`-th power, from all `k`-fold
    /// products of generators with repetition. The zero ideal stays zero;
    /// `k = 1` returns the ideal unchanged.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        assert!(k >= 1, "power exponent must be at least 1");
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let products = self.power_products(k);
        // Equigenerated input gives equal-degree products, where divisibility
        // implies equality, so deduplication alone is already an antichain.
        let gens = if self.equigenerated_degree().is_ok() {
            let set: BTreeSet<Monomial> = products.into_iter().collect();
            set.into_iter().collect()
        } else {
            minimalize(&products)
        };
        MonomialIdeal { n: self.n, gens }
    }

    /// All `k`-fold products of generators with repetition, deduplicated.
    pub(crate) fn power_products(&self, k: u32) -> Vec<Monomial> {
        let mut products: BTreeSet<Monomial> = BTreeSet::new();
        let mut stack: Vec<(usize, Monomial, u32)> = vec![(0, Monomial::one(self.n), k)];
        while let Some((start, acc, left)) = stack.pop() {
            if left == 0 {
                products.insert(acc);
                continue;
            }
            for i in start..self.gens.len() {
                let next = acc.times(&self.gens[i]).expect("same ambient ring");
                stack.push((i, next, left - 1));
            }
        }
        products.into_iter().collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Wire format for ideals: `{"vars": n, "generators": [[e1,…,en], …]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct IdealJson {
    pub vars: usize,
    pub generators: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Parses the JSON wire format, minimalizing the generator list. The
    /// second return value is false when minimalization dropped or merged
    /// generators, so callers can warn about non-minimal input.
    pub fn from_json_str(s: &str) -> Result<(MonomialIdeal, bool)> {
        let wire: IdealJson =
            serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        if wire.vars == 0 {
            return Err(Error::Malformed("vars must be at least 1".into()));
        }
        let mut gens = Vec::with_capacity(wire.generators.len());
        for exps in wire.generators {
            if exps.len() != wire.vars {
                return Err(Error::DimensionMismatch {
                    left: wire.vars,
                    right: exps.len(),
                });
            }
            gens.push(Monomial::new(exps));
        }
        let given = gens.len();
        let ideal = MonomialIdeal::new(wire.vars, gens)?;
        let minimal = ideal.generators().len() == given;
        Ok((ideal, minimal))
    }

    /// Serializes to the JSON wire format with generators in sorted order.
    pub fn to_json_string(&self) -> String {
        let wire = IdealJson {
            vars: self.n,
            generators: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        };
        serde_json::to_string(&wire).expect("ideal serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    /// Independent lcm oracle: plain exponent-wise max, no shared code path.
    fn lcm_oracle(a: &Monomial, b: &Monomial) -> Monomial {
        let exps: Vec<u32> = (0..a.nvars())
            .map(|i| a.exponents()[i].max(b.exponents()[i]))
            .collect();
        Monomial::new(exps)
    }

    /// Independent minimalization oracle: keep m iff no distinct element of
    /// the input divides it.
    fn minimalize_oracle(ms: &[Monomial]) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = ms
            .iter()
            .filter(|m| {
                !ms.iter()
                    .any(|g| g != *m && g.divides(m).unwrap())
            })
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Square-free generators x1x2x5, x1x3x5, x1x4x5, x2x3x4 in 5 variables.
    fn demo_ideal() -> MonomialIdeal {
        let gens = vec![
            Monomial::from_support(5, [0, 1, 4]),
            Monomial::from_support(5, [0, 2, 4]),
            Monomial::from_support(5, [0, 3, 4]),
            Monomial::from_support(5, [1, 2, 3]),
        ];
        MonomialIdeal::new(5, gens).unwrap()
    }

    #[test]
    fn lcm_of_disjoint_supports() {
        let a = m(&[1, 1, 1, 0, 0]);
        let b = m(&[1, 0, 0, 1, 1]);
        assert_eq!(a.lcm(&b).unwrap(), m(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn lcm_is_idempotent_commutative_and_matches_oracle() {
        let cases = [
            m(&[0, 1, 1, 1, 0]),
            m(&[1, 1, 0, 0, 1]),
            m(&[2, 0, 3, 0, 0]),
            m(&[0, 0, 0, 0, 0]),
        ];
        for a in &cases {
            assert_eq!(a.lcm(a).unwrap(), *a);
            for b in &cases {
                let ab = a.lcm(b).unwrap();
                assert_eq!(ab, b.lcm(a).unwrap());
                assert_eq!(ab, lcm_oracle(a, b));
                assert!(a.divides(&ab).unwrap());
                for c in &cases {
                    let abc = ab.lcm(c).unwrap();
                    assert_eq!(abc, a.lcm(&b.lcm(c).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn lcm_of_overlapping_triples_has_degree_five() {
        let a = m(&[0, 1, 1, 1, 0]);
        let b = m(&[1, 1, 0, 0, 1]);
        let l = a.lcm(&b).unwrap();
        assert_eq!(l, m(&[1, 1, 1, 1, 1]));
        assert_eq!(l.degree(), 5);
    }

    #[test]
    fn lcm_rejects_mismatched_variable_counts() {
        let a = m(&[1, 0]);
        let b = m(&[1, 0, 0]);
        assert!(a.lcm(&b).is_err());
        assert!(a.divides(&b).is_err());
    }

    #[test]
    fn divides_examples() {
        assert!(m(&[1, 1, 0]).divides(&m(&[1, 1, 1])).unwrap());
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])).unwrap());
        let a = m(&[0, 1, 1, 1, 0]);
        let b = m(&[1, 1, 0, 0, 1]);
        assert!(a.divides(&a.lcm(&b).unwrap()).unwrap());
    }

    #[test]
    fn degree_and_support() {
        assert_eq!(m(&[1, 1, 1]).degree(), 3);
        assert_eq!(m(&[2, 1, 0]).support(), vec![0, 1]);
        assert_eq!(m(&[0, 0, 0]).support(), Vec::<usize>::new());
        assert!(m(&[0, 0]).is_one());
        assert_eq!(m(&[1, 0, 1]).support_mask(), 0b101);
    }

    #[test]
    fn quotient_inverts_times() {
        let a = m(&[1, 2, 0]);
        let b = m(&[0, 1, 3]);
        let ab = a.times(&b).unwrap();
        assert_eq!(a.quotient_of(&ab), Some(b.clone()));
        assert_eq!(b.quotient_of(&ab), Some(a.clone()));
        assert_eq!(ab.quotient_of(&a), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(m(&[0, 0]).to_string(), "1");
        assert_eq!(m(&[2, 1, 0, 1]).to_string(), "x1^2x2x4");
    }

    #[test]
    fn minimalize_drops_multiples() {
        let ms = vec![m(&[1, 1, 0]), m(&[1, 1, 1])];
        assert_eq!(minimalize(&ms), vec![m(&[1, 1, 0])]);
    }

    #[test]
    fn minimalize_fixes_antichains_and_matches_oracle() {
        let antichain = vec![m(&[1, 1, 0]), m(&[0, 1, 1]), m(&[1, 0, 1])];
        let mut expected = antichain.clone();
        expected.sort();
        assert_eq!(minimalize(&antichain), expected);

        let mixed = vec![
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[2, 1, 0]),
            m(&[1, 1, 1]),
            m(&[0, 0, 3]),
            m(&[2, 0, 0]),
        ];
        assert_eq!(minimalize(&mixed), minimalize_oracle(&mixed));
        assert_eq!(
            minimalize(&mixed),
            vec![m(&[0, 0, 3]), m(&[1, 1, 0]), m(&[2, 0, 0])]
        );
        // Idempotent and order-independent.
        let mut rev = mixed.clone();
        rev.reverse();
        assert_eq!(minimalize(&mixed), minimalize(&rev));
        assert_eq!(minimalize(&minimalize(&mixed)), minimalize(&mixed));
    }

    #[test]
    fn ideal_constructor_minimalizes_and_validates() {
        let ideal = MonomialIdeal::new(3, vec![m(&[1, 1, 0]), m(&[1, 1, 1])]).unwrap();
        assert_eq!(ideal.generators(), &[m(&[1, 1, 0])]);
        assert!(MonomialIdeal::new(3, vec![m(&[0, 0, 0])]).is_err());
        assert!(MonomialIdeal::new(3, vec![m(&[1, 0])]).is_err());
        assert!(MonomialIdeal::zero(3).is_zero());
    }

    #[test]
    fn equigenerated_degree_checks() {
        assert_eq!(demo_ideal().equigenerated_degree().unwrap(), 3);
        let mixed = MonomialIdeal::new(3, vec![m(&[1, 1, 0]), m(&[0, 0, 3])]).unwrap();
        assert!(matches!(
            mixed.equigenerated_degree(),
            Err(Error::MixedDegrees)
        ));
        assert!(matches!(
            MonomialIdeal::zero(2).equigenerated_degree(),
            Err(Error::ZeroIdeal)
        ));
    }

    #[test]
    fn power_of_principal_ideal() {
        let ideal = MonomialIdeal::new(3, vec![m(&[1, 1, 1])]).unwrap();
        assert_eq!(ideal.power(2).generators(), &[m(&[2, 2, 2])]);
    }

    #[test]
    fn power_keeps_listed_products_as_distinct_generators() {
        let ideal = demo_ideal();
        let square = ideal.power(2);
        let f234 = Monomial::from_support(5, [1, 2, 3]);
        let expected = [
            f234.times(&f234).unwrap(),
            Monomial::from_support(5, [0, 1, 4]).times(&f234).unwrap(),
            Monomial::from_support(5, [0, 2, 4]).times(&f234).unwrap(),
            Monomial::from_support(5, [0, 3, 4]).times(&f234).unwrap(),
        ];
        for e in &expected {
            assert!(square.generators().contains(e), "missing generator {e}");
        }
        assert_eq!(square.power(1), square);
    }

    #[test]
    fn power_matches_multiset_oracle() {
        let ideal = demo_ideal();
        for k in 2u32..=3 {
            // Oracle: every ordered k-tuple of generators, encoded as a
            // base-|G| counter, multiplied out and independently minimalized.
            let gens = ideal.generators();
            let mut products = Vec::new();
            for code in 0..gens.len().pow(k) {
                let mut c = code;
                let mut p = Monomial::one(5);
                for _ in 0..k {
                    p = p.times(&gens[c % gens.len()]).unwrap();
                    c /= gens.len();
                }
                products.push(p);
            }
            products.sort();
            products.dedup();
            let expected = minimalize_oracle(&products);
            let got = ideal.power(k);
            assert_eq!(got.generators(), expected.as_slice(), "k = {k}");
        }
    }

    #[test]
    fn squarefree_power_degree_and_support_bounds() {
        let ideal = demo_ideal();
        let k = 3u32;
        let d = ideal.equigenerated_degree().unwrap();
        for g in ideal.power(k).generators() {
            assert!(g.degree() <= k * d);
            let support = g.support_mask();
            // Support must be a union of k generator supports.
            let mut covered = false;
            let gens = ideal.generators();
            for a in gens {
                for b in gens {
                    for c in gens {
                        if a.support_mask() | b.support_mask() | c.support_mask() == support {
                            covered = true;
                        }
                    }
                }
            }
            assert!(covered, "support of {g} is not a union of generator supports");
        }
    }

    #[test]
    fn power_additivity_containment() {
        let ideal = demo_ideal();
        let j = 1u32;
        let k = 2u32;
        let big = ideal.power(j + k);
        let left = ideal.power(j);
        let right = ideal.power(k);
        let mut products = Vec::new();
        for a in left.generators() {
            for b in right.generators() {
                products.push(a.times(b).unwrap());
            }
        }
        let closure = minimalize(&products);
        for g in big.generators() {
            assert!(closure.contains(g));
        }
    }

    #[test]
    fn json_round_trip_and_minimality_flag() {
        let (ideal, minimal) =
            MonomialIdeal::from_json_str(r#"{"vars": 3, "generators": [[1,1,0],[0,1,1]]}"#)
                .unwrap();
        assert!(minimal);
        assert_eq!(ideal.generators().len(), 2);
        let round = MonomialIdeal::from_json_str(&ideal.to_json_string()).unwrap().0;
        assert_eq!(round, ideal);

        let (reduced, was_minimal) =
            MonomialIdeal::from_json_str(r#"{"vars": 3, "generators": [[1,1,0],[1,1,1]]}"#)
                .unwrap();
        assert!(!was_minimal);
        assert_eq!(reduced.generators().len(), 1);

        assert!(MonomialIdeal::from_json_str(r#"{"vars": 0, "generators": []}"#).is_err());
        assert!(MonomialIdeal::from_json_str(r#"{"vars": 2, "generators": [[1]]}"#).is_err());
        assert!(MonomialIdeal::from_json_str("not json").is_err());
    }
}
