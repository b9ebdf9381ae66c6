//! Isomorphism-class counts of minimal uniform clutters whose edge ideal
//! first fails linear presentation at a prescribed power.

use std::path::Path;

use crate::bits::k_subsets;
use crate::clutter::{perms_of, Clutter};
use crate::error::{Error, Result};
use crate::linpres;
use crate::search::algo::family_d;
use crate::search::perm::apply_to_mask;

/// One cell of the count table: d-uniform spanning clutters on `[n]` whose
/// edge ideal keeps linear presentation through power k-1, loses it at
/// power k, and contains no proper induced subclutter doing the same.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OmegaQuery {
    pub d: usize,
    pub k: u32,
    pub n: usize,
}

/// The classes a query counts, one canonical representative each.
#[derive(Clone, Debug)]
pub struct OmegaReport {
    pub query: OmegaQuery,
    pub count: usize,
    pub representatives: Vec<Clutter>,
}

/// True when the first k-1 powers are linearly presented and the k-th is not.
fn first_failure_at(c: &Clutter, k: u32) -> Result<bool> {
    let ideal = c.edge_ideal();
    for j in 1..k {
        if !linpres::power_check(&ideal, j)?.linearly_presented {
            return Ok(false);
        }
    }
    Ok(!linpres::power_check(&ideal, k)?.linearly_presented)
}

/// The minimality condition: no induced subclutter on a proper vertex subset
/// keeps a circuit and first fails at the same power. Subsets smaller than
/// six are skipped for k >= 2 and d = 3: triple ideals on five or fewer
/// vertices stay linearly presented at every power.
fn minimal_at(c: &Clutter, k: u32) -> Result<bool> {
    let floor = if k >= 2 && c.d() == 3 { 6 } else { c.d() };
    for size in floor..c.n() {
        for w in k_subsets(c.n(), size) {
            let sub = c.induced(w);
            if sub.circuits().is_empty() {
                continue;
            }
            if first_failure_at(&sub, k)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive cell: scans every spanning d-uniform clutter on `[n]`, keeping
/// each isomorphism class once via its least labeling under S_n.
fn brute_force_cell(q: OmegaQuery) -> Result<OmegaReport> {
    let members = k_subsets(q.n, q.d);
    let t = members.len();
    let full: u64 = (1 << q.n) - 1;
    let perms = perms_of(q.n);
    let index_of = |m: u64| members.binary_search(&m).expect("closed under relabeling");
    // image_bit[p][i]: the member bit the i-th member lands on under perm p.
    let image_bit: Vec<Vec<u32>> = perms
        .iter()
        .map(|p| {
            members
                .iter()
                .map(|&m| 1u32 << index_of(apply_to_mask(p, m)))
                .collect()
        })
        .collect();
    let supports: Vec<u64> = members.clone();

    let mut representatives = Vec::new();
    'subsets: for mask in 1u32..(1u32 << t) {
        let mut support = 0u64;
        let mut m = mask;
        while m != 0 {
            support |= supports[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        if support != full {
            continue;
        }
        for image in image_bit.iter().skip(1) {
            let mut img = 0u32;
            let mut m = mask;
            while m != 0 {
                img |= image[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            if img < mask {
                continue 'subsets;
            }
        }
        let circuits: Vec<u64> = (0..t)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| members[i])
            .collect();
        let c = Clutter::new(q.n, q.d, circuits)?;
        if first_failure_at(&c, q.k)? && minimal_at(&c, q.k)? {
            representatives.push(c.canonical_form());
        }
    }
    representatives.sort_unstable();
    Ok(OmegaReport {
        query: q,
        count: representatives.len(),
        representatives,
    })
}

/// The (3,2) cell: members of the computed family on `[n]`, which satisfy
/// the first-failure condition by construction, filtered by minimality.
fn family_cell(q: OmegaQuery, cache_dir: Option<&Path>) -> Result<OmegaReport> {
    let family = family_d(cache_dir)?;
    let mut representatives = Vec::new();
    for c in family.members_on(q.n) {
        if minimal_at(c, 2)? {
            representatives.push(c.clone());
        }
    }
    representatives.sort_unstable();
    Ok(OmegaReport {
        query: q,
        count: representatives.len(),
        representatives,
    })
}

/// Counts the isomorphism classes a cell asks for. Supported cells: k = 1
/// exhaustively for pairs and triples up to six vertices, and the (3,2) cell
/// through the two-stage search for n in 6..8.
pub fn enumerate_omega(q: OmegaQuery, cache_dir: Option<&Path>) -> Result<OmegaReport> {
    match (q.d, q.k) {
        (2, 1) | (3, 1) if (1..=6).contains(&q.n) => brute_force_cell(q),
        (3, 2) if (6..=8).contains(&q.n) => family_cell(q, cache_dir),
        _ => Err(Error::Unsupported(format!(
            "supported cells are d=2,k=1,n<=6; d=3,k=1,n<=6; d=3,k=2,n in 6..8; got d={} k={} n={}",
            q.d, q.k, q.n
        ))),
    }
}
