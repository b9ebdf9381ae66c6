//! The threshold size below which every uniform clutter has a complement
//! with a linearly resolved edge ideal, and the witness attaining it.

use crate::bits::k_subsets;
use crate::clutter::{perms_of, Clutter};
use crate::complex::{reduced_homology_dims, FieldChoice};
use crate::error::{Error, Result};
use crate::search::perm::apply_to_mask;

/// Two simplex boundaries glued along a shared block: all d-subsets of
/// `{1..d+1}` and of `{2..d+2}` except the shared `{2..d+1}`. The result has
/// 2d circuits on d+2 vertices and its clique complex triangulates the
/// (d-1)-sphere, so the complement's edge ideal is not linearly resolved.
pub fn construct_cd(d: usize) -> Result<Clutter> {
    if d < 2 || d + 2 > 64 {
        return Err(Error::Unsupported(format!(
            "glued simplex pair wants 2 <= d <= 62; got d={d}"
        )));
    }
    let n = d + 2;
    let left: u64 = (1 << (d + 1)) - 1;
    let right: u64 = left << 1;
    let shared: u64 = left & right;
    let circuits: Vec<u64> = k_subsets(n, d)
        .into_iter()
        .filter(|&m| (m & !left == 0 || m & !right == 0) && m != shared)
        .collect();
    Clutter::new(n, d, circuits)
}

/// Outcome of the threshold search: the smallest failing size, a witness
/// attaining it, and how many isomorphism classes each size examined.
#[derive(Clone, Debug)]
pub struct KappaReport {
    pub d: usize,
    pub kappa: usize,
    pub witness: Clutter,
    /// One entry per size 1..=kappa; the last scan stops at the witness.
    pub classes_checked: Vec<usize>,
}

/// The smallest number of circuits a d-uniform clutter needs before the
/// complement's edge ideal can miss a linear resolution. Exhaustive over
/// isomorphism classes of spanning clutters on up to 2d+2 vertices, sizes
/// increasing, so every size below the returned one is verified linear.
pub fn kappa(d: usize) -> Result<KappaReport> {
    if !(2..=3).contains(&d) {
        return Err(Error::Unsupported(format!(
            "threshold search runs at d=2 or d=3; got d={d}"
        )));
    }
    let mut classes_checked = Vec::new();
    for m in 1..=2 * d {
        let mut checked = 0usize;
        let mut witness = None;
        's: for n in d..=(2 * d + 2).min(d * m) {
            for c in canonical_members(n, d, m)? {
                checked += 1;
                if !complement_resolution_is_linear(&c, FieldChoice::Rationals) {
                    witness = Some(c);
                    break 's;
                }
            }
        }
        classes_checked.push(checked);
        if let Some(w) = witness {
            return Ok(KappaReport {
                d,
                kappa: m,
                witness: w,
                classes_checked,
            });
        }
    }
    Err(Error::Unsupported(format!(
        "no {d}-uniform clutter of size at most {} on up to {} vertices has a \
         nonlinear complement resolution; the witness construction should have \
         been found",
        2 * d,
        2 * d + 2
    )))
}

/// Spanning d-uniform clutters with exactly m circuits on `[n]`, one per
/// isomorphism class via the least member set under S_n, in mask order.
fn canonical_members(n: usize, d: usize, m: usize) -> Result<Vec<Clutter>> {
    let members = k_subsets(n, d);
    let t = members.len();
    if t < m {
        return Ok(Vec::new());
    }
    let full: u64 = (1 << n) - 1;
    let perms = perms_of(n);
    let index_of = |mm: u64| members.binary_search(&mm).expect("closed under relabeling");
    // image_bit[p][i]: the member bit the i-th member lands on under perm p.
    let image_bit: Vec<Vec<u64>> = perms
        .iter()
        .map(|p| {
            members
                .iter()
                .map(|&mm| 1u64 << index_of(apply_to_mask(p, mm)))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    'masks: for mask in fixed_popcount_masks(t, m) {
        let mut support = 0u64;
        let mut mm = mask;
        while mm != 0 {
            support |= members[mm.trailing_zeros() as usize];
            mm &= mm - 1;
        }
        if support != full {
            continue;
        }
        for image in image_bit.iter().skip(1) {
            let mut img = 0u64;
            let mut mm = mask;
            while mm != 0 {
                img |= image[mm.trailing_zeros() as usize];
                mm &= mm - 1;
            }
            if img < mask {
                continue 'masks;
            }
        }
        let circuits: Vec<u64> = (0..t)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| members[i])
            .collect();
        out.push(Clutter::new(n, d, circuits)?);
    }
    Ok(out)
}

/// All t-bit masks with exactly m bits set, ascending.
fn fixed_popcount_masks(t: usize, m: usize) -> impl Iterator<Item = u64> {
    let top: u64 = if t >= 64 { u64::MAX } else { (1u64 << t) - 1 };
    let mut next: Option<u64> = if m == 0 || m > t {
        None
    } else {
        Some((1u64 << m) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur > top {
            next = None;
            return None;
        }
        let u = cur & cur.wrapping_neg();
        let v = cur.wrapping_add(u);
        next = if v == 0 {
            None
        } else {
            Some(v | (((cur ^ v) / u) >> 2))
        };
        Some(cur)
    })
}

/// Linear resolution of the complement's edge ideal, read off the clique
/// complex: the clique complex is the Stanley-Reisner complex of that ideal,
/// so by Hochster the resolution is linear exactly when every induced
/// subcomplex carries reduced homology only in degree d-2.
fn complement_resolution_is_linear(c: &Clutter, field: FieldChoice) -> bool {
    let delta = c.clique_complex();
    // Homology dims are indexed from degree -1, so degree d-2 sits at d-1.
    let keep = c.d() - 1;
    (1u64..1 << c.n()).all(|w| {
        reduced_homology_dims(&delta.induced_mask(w), field)
            .into_iter()
            .enumerate()
            .all(|(l, r)| l == keep || r == 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{has_linear_resolution, hochster_beta};
    use crate::clutter::b;

    const BOTH_FIELDS: [FieldChoice; 2] = [FieldChoice::Rationals, FieldChoice::Prime(2)];

    #[test]
    fn glued_simplex_pair_shapes() {
        for d in 2..=5 {
            let c = construct_cd(d).unwrap();
            assert_eq!(c.n(), d + 2);
            assert_eq!(c.circuits().len(), 2 * d);
            assert!(c.is_spanning());
        }
        let square =
            Clutter::from_vertex_lists(4, 2, &[vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 4]])
                .unwrap();
        assert!(construct_cd(2).unwrap().is_isomorphic_to(&square));
        assert!(construct_cd(3).unwrap().is_isomorphic_to(&b()));
    }

    #[test]
    fn witness_complements_have_nonlinear_first_syzygies() {
        for d in [2usize, 3] {
            let i = construct_cd(d).unwrap().complement().edge_ideal();
            for field in BOTH_FIELDS {
                assert_ne!(hochster_beta(&i, 1, (d + 2) as u32, field).unwrap(), 0);
                assert!(!has_linear_resolution(&i, field).unwrap());
            }
        }
    }

    #[test]
    fn homology_criterion_agrees_with_the_lattice_route() {
        let cases = [
            construct_cd(2).unwrap(),
            construct_cd(3).unwrap(),
            Clutter::from_vertex_lists(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap(),
            Clutter::from_vertex_lists(5, 3, &[vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 5]])
                .unwrap(),
            Clutter::from_vertex_lists(6, 3, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap(),
        ];
        for c in cases {
            for field in BOTH_FIELDS {
                let direct = has_linear_resolution(&c.complement().edge_ideal(), field).unwrap();
                assert_eq!(complement_resolution_is_linear(&c, field), direct);
            }
        }
    }

    #[test]
    fn graph_threshold_is_four() {
        let r = kappa(2).unwrap();
        assert_eq!(r.kappa, 4);
        assert_eq!(r.classes_checked.len(), 4);
        assert!(r.witness.is_isomorphic_to(&construct_cd(2).unwrap()));
    }

    #[test]
    fn triple_threshold_is_six() {
        let r = kappa(3).unwrap();
        assert_eq!(r.kappa, 6);
        assert_eq!(r.classes_checked[..2], [1, 3]);
        assert!(r.witness.is_isomorphic_to(&b()));
    }

    #[test]
    fn out_of_range_uniformity_is_rejected() {
        assert!(matches!(kappa(1), Err(Error::Unsupported(_))));
        assert!(matches!(kappa(4), Err(Error::Unsupported(_))));
        assert!(matches!(construct_cd(1), Err(Error::Unsupported(_))));
    }
}
