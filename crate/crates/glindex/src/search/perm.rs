//! Small permutation groups, materialized by closure from their generators,
//! with orbit partitioning for masks and other orderable items.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A permutation of `{0..n-1}` in image form: `p[i]` is the image of `i`.
pub type Perm = Vec<u8>;

/// A permutation group of small degree with every element materialized.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Perm>,
}

impl PermGroup {
    /// Generates the closure of `gens` under composition. Elements are kept
    /// sorted, so the identity always comes first.
    pub fn from_generators(n: usize, gens: &[Perm]) -> Result<PermGroup> {
        if n > 16 {
            return Err(Error::Unsupported(format!(
                "permutation degree {n} exceeds the supported 16"
            )));
        }
        for g in gens {
            if g.len() != n {
                return Err(Error::Malformed(format!(
                    "permutation {:?} does not have degree {n}",
                    g
                )));
            }
            let mut seen = vec![false; n];
            for &img in g {
                if (img as usize) >= n || seen[img as usize] {
                    return Err(Error::Malformed(format!(
                        "permutation {:?} is not a bijection on 0..{n}",
                        g
                    )));
                }
                seen[img as usize] = true;
            }
        }
        let identity: Perm = (0..n as u8).collect();
        let mut elements: BTreeSet<Perm> = BTreeSet::new();
        elements.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Perm = (0..n).map(|i| g[p[i] as usize]).collect();
                if elements.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        Ok(PermGroup {
            n,
            elements: elements.into_iter().collect(),
        })
    }

    /// The group containing only the identity.
    pub fn trivial(n: usize) -> PermGroup {
        PermGroup::from_generators(n, &[]).expect("identity group is valid")
    }

    /// The full symmetric group on `{1..n}`.
    pub fn symmetric(n: usize) -> Result<PermGroup> {
        if n == 0 {
            return Err(Error::Malformed("degree must be at least 1".into()));
        }
        let gens: Vec<Perm> = (0..n.saturating_sub(1))
            .map(|i| transposition(n, i, i + 1))
            .collect();
        PermGroup::from_generators(n, &gens)
    }

    /// Degree of the permutations.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Group order.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// A group always contains the identity.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// All elements in sorted order, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
}

/// The transposition of `a` and `b` as a permutation of `{0..n-1}`.
pub(crate) fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    p.swap(a, b);
    p
}

/// Applies a permutation to a vertex mask.
pub fn apply_to_mask(p: &[u8], mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1u64 << p[i];
        m &= m - 1;
    }
    out
}

/// The stabilizer groups used to deduplicate the quadruple search, as printed:
/// `⟨(1 2), S_{{4..n}}⟩` for `F = {1,2,4}` and `⟨(2 3), (4 5), S_{{6..n}}⟩`
/// for `F = {1,4,5}`. Only these two `F` and `n ∈ {6,7,8}` are defined.
///
/// The second family fixes both {1,2,3} and F setwise; the first fixes only
/// {1,2,3} (its `S_{{4..n}}` part moves F). Deduplication below never needs
/// the setwise property, only a well-defined group action on labelings.
pub fn stabilizer(n: usize, f: &[usize]) -> Result<PermGroup> {
    if !(6..=8).contains(&n) {
        return Err(Error::Unsupported(format!(
            "stabilizer is defined for n in 6..8, got {n}"
        )));
    }
    let mut f_sorted = f.to_vec();
    f_sorted.sort_unstable();
    let mut gens: Vec<Perm> = Vec::new();
    if f_sorted == [1, 2, 4] {
        gens.push(transposition(n, 0, 1));
        for i in 3..n - 1 {
            gens.push(transposition(n, i, i + 1));
        }
    } else if f_sorted == [1, 4, 5] {
        gens.push(transposition(n, 1, 2));
        gens.push(transposition(n, 3, 4));
        for i in 5..n - 1 {
            gens.push(transposition(n, i, i + 1));
        }
    } else {
        return Err(Error::Unsupported(format!(
            "stabilizer is defined for F = {{1,2,4}} or {{1,4,5}}, got {f_sorted:?}"
        )));
    }
    PermGroup::from_generators(n, &gens)
}

/// The group `⟨(1 2 3), (1 2), (4 5 6), (4 5)⟩` acting on six vertices in the
/// degree-6 case census.
pub fn census_group() -> PermGroup {
    let gens: Vec<Perm> = vec![
        vec![1, 2, 0, 3, 4, 5],
        vec![1, 0, 2, 3, 4, 5],
        vec![0, 1, 2, 4, 5, 3],
        vec![0, 1, 2, 4, 3, 5],
    ];
    PermGroup::from_generators(6, &gens).expect("census generators are valid")
}

/// Partitions `domain` into classes sharing a canonical image under the
/// group: two items land together exactly when some group element maps one
/// to the other, provided the domain is closed under the action. For domains
/// that are not closed, items are still grouped by least image, which is the
/// behavior the quadruple search relies on.
pub fn orbit_classes<T, F>(group: &PermGroup, domain: &[T], action: F) -> Vec<Vec<usize>>
where
    T: Ord + Clone,
    F: Fn(&[u8], &T) -> T,
{
    let mut classes: std::collections::BTreeMap<T, Vec<usize>> = std::collections::BTreeMap::new();
    for (idx, item) in domain.iter().enumerate() {
        let key = group
            .elements()
            .iter()
            .map(|g| action(g, item))
            .min()
            .expect("groups are nonempty");
        classes.entry(key).or_default().push(idx);
    }
    classes.into_values().collect()
}

/// One representative index per class of [`orbit_classes`]: the index of the
/// lexicographically least member. Representatives come out sorted by that
/// member, so the result is deterministic.
pub fn orbit_reps<T, F>(group: &PermGroup, domain: &[T], action: F) -> Vec<usize>
where
    T: Ord + Clone,
    F: Fn(&[u8], &T) -> T,
{
    orbit_classes(group, domain, &action)
        .into_iter()
        .map(|class| {
            class
                .into_iter()
                .min_by(|&a, &b| domain[a].cmp(&domain[b]))
                .expect("classes are nonempty")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::k_subsets;

    #[test]
    fn stabilizer_orders_match_the_printed_generators() {
        for (n, f, order) in [
            (6, [1, 2, 4], 12),
            (7, [1, 2, 4], 48),
            (8, [1, 2, 4], 240),
            (6, [1, 4, 5], 4),
            (7, [1, 4, 5], 8),
            (8, [1, 4, 5], 24),
        ] {
            assert_eq!(stabilizer(n, &f).unwrap().len(), order, "n={n} f={f:?}");
        }
    }

    #[test]
    fn stabilizer_elements_fix_the_first_triple_setwise() {
        for f in [[1, 2, 4], [1, 4, 5]] {
            for n in 6..=8 {
                let g = stabilizer(n, &f).unwrap();
                for p in g.elements() {
                    assert_eq!(apply_to_mask(p, 0b111), 0b111);
                }
            }
        }
    }

    #[test]
    fn second_family_fixes_f_setwise_but_first_does_not() {
        let f_mask = 0b11001u64;
        for n in 6..=8 {
            let g = stabilizer(n, &[1, 4, 5]).unwrap();
            for p in g.elements() {
                assert_eq!(apply_to_mask(p, f_mask), f_mask);
            }
        }
        let g = stabilizer(6, &[1, 2, 4]).unwrap();
        let moved = g
            .elements()
            .iter()
            .any(|p| apply_to_mask(p, 0b1011) != 0b1011);
        assert!(moved);
    }

    #[test]
    fn stabilizer_rejects_unsupported_inputs() {
        assert!(matches!(
            stabilizer(9, &[1, 2, 4]),
            Err(crate::error::Error::Unsupported(_))
        ));
        assert!(matches!(
            stabilizer(6, &[1, 2, 5]),
            Err(crate::error::Error::Unsupported(_))
        ));
    }

    #[test]
    fn from_generators_validates_shape() {
        assert!(PermGroup::from_generators(3, &[vec![0, 1]]).is_err());
        assert!(PermGroup::from_generators(3, &[vec![0, 0, 1]]).is_err());
        assert!(PermGroup::from_generators(3, &[vec![0, 1, 3]]).is_err());
    }

    #[test]
    fn census_group_has_order_36() {
        assert_eq!(census_group().len(), 36);
    }

    /// The nine triples with two vertices from {1,2,3} and one from {4,5,6}.
    fn omega_items() -> Vec<u64> {
        let mut items = Vec::new();
        for lows in k_subsets(3, 2) {
            for high in 3..6 {
                items.push(lows | (1u64 << high));
            }
        }
        items.sort_unstable();
        items
    }

    #[test]
    fn census_orbit_counts_on_k_subsets() {
        let h = census_group();
        let items = omega_items();
        let expected = [1usize, 1, 3, 6, 7, 7, 6, 3, 1, 1];
        let mut total = 0;
        for k in 0..=9usize {
            let domain = k_subsets(9, k);
            let classes = orbit_classes(&h, &domain, |p, &sub| {
                let mut image = 0u64;
                for i in 0..9 {
                    if sub & (1 << i) != 0 {
                        let moved = apply_to_mask(p, items[i]);
                        let j = items.binary_search(&moved).expect("omega is h-closed");
                        image |= 1 << j;
                    }
                }
                image
            });
            assert_eq!(classes.len(), expected[k], "k={k}");
            total += classes.len();
        }
        assert_eq!(total, 36);
    }

    #[test]
    fn census_orbit_total_matches_burnside_count() {
        let h = census_group();
        let items = omega_items();
        let mut fixed_sum = 0usize;
        for p in h.elements() {
            let image: Vec<usize> = (0..9)
                .map(|i| {
                    items
                        .binary_search(&apply_to_mask(p, items[i]))
                        .expect("omega is h-closed")
                })
                .collect();
            let mut seen = [false; 9];
            let mut cycles = 0usize;
            for start in 0..9 {
                if !seen[start] {
                    cycles += 1;
                    let mut at = start;
                    while !seen[at] {
                        seen[at] = true;
                        at = image[at];
                    }
                }
            }
            fixed_sum += 1usize << cycles;
        }
        assert_eq!(fixed_sum / h.len(), 36);
    }

    #[test]
    fn trivial_group_gives_singleton_orbits() {
        let g = PermGroup::trivial(4);
        let domain = k_subsets(4, 2);
        let classes = orbit_classes(&g, &domain, |p, &m| apply_to_mask(p, m));
        assert_eq!(classes.len(), domain.len());
    }

    #[test]
    fn symmetric_group_acts_transitively_on_d_subsets() {
        let g = PermGroup::symmetric(5).unwrap();
        assert_eq!(g.len(), 120);
        let domain = k_subsets(5, 3);
        let reps = orbit_reps(&g, &domain, |p, &m| apply_to_mask(p, m));
        assert_eq!(reps.len(), 1);
        assert_eq!(domain[reps[0]], 0b111);
    }

    #[test]
    fn apply_to_mask_follows_images() {
        let p = vec![2u8, 0, 1];
        assert_eq!(apply_to_mask(&p, 0b011), 0b101);
    }
}
