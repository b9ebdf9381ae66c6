//! Exact rank computation for sparse integer matrices, over the rationals
//! via fraction-free row elimination and over prime fields via modular
//! elimination.

use num_integer::Integer;

use crate::complex::FieldChoice;

/// A sparse matrix with unit-sized integer entries, stored column-major.
/// Each column lists its (row, value) pairs sorted by row.
#[derive(Clone, Debug)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(u32, i8)>>,
}

impl SparseMat {
    pub(crate) fn new(nrows: usize, ncols: usize, cols: Vec<Vec<(u32, i8)>>) -> SparseMat {
        debug_assert_eq!(cols.len(), ncols);
        debug_assert!(cols
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(cols
            .iter()
            .all(|c| c.iter().all(|&(r, v)| (r as usize) < nrows && v != 0)));
        SparseMat { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &[(u32, i8)] {
        &self.cols[j]
    }

    /// Dense copy, rows by columns. For oracles and debugging.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v as i64;
            }
        }
        out
    }

    /// Exact rank over the chosen field.
    pub fn rank(&self, field: FieldChoice) -> usize {
        // Row-major copy: each row sorted by column index.
        let mut rows: Vec<Vec<(u32, i128)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                rows[i as usize].push((j as u32, v as i128));
            }
        }
        match field {
            FieldChoice::Rationals => rank_fraction_free(rows),
            FieldChoice::Prime(p) => {
                let rows = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .filter_map(|(j, v)| {
                                let v = v.rem_euclid(p as i128) as u64;
                                (v != 0).then_some((j, v))
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                rank_mod_p(rows, p)
            }
        }
    }
}

/// Rank over the rationals by integer-preserving elimination: rows are
/// combined as `r*pivot_lead - pivot*r_lead` and renormalized by their
/// content, so every intermediate entry stays an exact integer.
fn rank_fraction_free(rows: Vec<Vec<(u32, i128)>>) -> usize {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<u32, Vec<Vec<(u32, i128)>>> = BTreeMap::new();
    for row in rows {
        if let Some(&(lead, _)) = row.first() {
            buckets.entry(lead).or_default().push(row);
        }
    }
    let mut rank = 0;
    while let Some((&lead, _)) = buckets.iter().next() {
        let mut bucket = buckets.remove(&lead).unwrap();
        // Sparsest row pivots to limit fill-in.
        let pivot_at = bucket
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
            .unwrap();
        let pivot = bucket.swap_remove(pivot_at);
        rank += 1;
        let pl = pivot[0].1;
        for row in bucket {
            let rl = row[0].1;
            let combined = combine_rows(&row, pl, &pivot, rl);
            if let Some(&(newlead, _)) = combined.first() {
                buckets.entry(newlead).or_default().push(combined);
            }
        }
    }
    rank
}

/// `a*ca + b*(-cb)` over sorted sparse rows, skipping the shared lead
/// column, with the result divided by its content.
fn combine_rows(
    a: &[(u32, i128)],
    ca: i128,
    b: &[(u32, i128)],
    cb: i128,
) -> Vec<(u32, i128)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut content: i128 = 0;
    while i < a.len() || j < b.len() {
        let v;
        let col;
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            col = a[i].0;
            v = mul(a[i].1, ca);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            col = b[j].0;
            v = mul(b[j].1, -cb);
            j += 1;
        } else {
            col = a[i].0;
            v = sub(mul(a[i].1, ca), mul(b[j].1, cb));
            i += 1;
            j += 1;
        }
        if v != 0 {
            content = content.gcd(&v);
            out.push((col, v));
        }
    }
    if content > 1 {
        for e in &mut out {
            e.1 /= content;
        }
    }
    out
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in exact elimination")
}

fn sub(a: i128, b: i128) -> i128 {
    a.checked_sub(b).expect("integer overflow in exact elimination")
}

/// Rank over GF(p) by the same bucketed elimination with modular values.
fn rank_mod_p(rows: Vec<Vec<(u32, u64)>>, p: u64) -> usize {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<u32, Vec<Vec<(u32, u64)>>> = BTreeMap::new();
    for row in rows {
        if let Some(&(lead, _)) = row.first() {
            buckets.entry(lead).or_default().push(row);
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut rank = 0;
    while let Some((&lead, _)) = buckets.iter().next() {
        let mut bucket = buckets.remove(&lead).unwrap();
        let pivot_at = bucket
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
            .unwrap();
        let pivot = bucket.swap_remove(pivot_at);
        rank += 1;
        let pl = pivot[0].1;
        for row in bucket {
            let rl = row[0].1;
            // row*pl - pivot*rl, term by term mod p.
            let mut out: Vec<(u32, u64)> = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < pivot.len() {
                let (col, v) = if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
                    let e = (row[i].0, mulmod(row[i].1, pl));
                    i += 1;
                    e
                } else if i >= row.len() || pivot[j].0 < row[i].0 {
                    let e = (pivot[j].0, (p - mulmod(pivot[j].1, rl)) % p);
                    j += 1;
                    e
                } else {
                    let e = (
                        row[i].0,
                        (mulmod(row[i].1, pl) + p - mulmod(pivot[j].1, rl)) % p,
                    );
                    i += 1;
                    j += 1;
                    e
                };
                if v != 0 {
                    out.push((col, v));
                }
            }
            if let Some(&(newlead, _)) = out.first() {
                buckets.entry(newlead).or_default().push(out);
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i8]]) -> SparseMat {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols: Vec<Vec<(u32, i8)>> = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    cols[j].push((i as u32, v));
                }
            }
        }
        SparseMat::new(nrows, ncols, cols)
    }

    /// Dense rational elimination oracle with f64-free exact arithmetic on
    /// i128 cross-multiplication.
    fn dense_rank_oracle(mat: &SparseMat) -> usize {
        let mut a: Vec<Vec<i128>> = mat
            .to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as i128).collect())
            .collect();
        let (m, n) = (mat.nrows(), mat.ncols());
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..m).find(|&i| a[i][col] != 0) else {
                continue;
            };
            a.swap(row, p);
            for i in 0..m {
                if i != row && a[i][col] != 0 {
                    let (pc, rc) = (a[row][col], a[i][col]);
                    for j in 0..n {
                        a[i][j] = a[i][j] * pc - a[row][j] * rc;
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == m {
                break;
            }
        }
        rank
    }

    #[test]
    fn small_ranks_match_oracle() {
        let cases: Vec<Vec<Vec<i8>>> = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![1, -1, 0], vec![0, 1, -1], vec![-1, 0, 1]],
            vec![vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]],
            vec![
                vec![1, 1, 0, 0],
                vec![-1, 0, 1, 0],
                vec![0, -1, -1, 0],
                vec![0, 0, 0, 1],
            ],
        ];
        for rows in cases {
            let slices: Vec<&[i8]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = from_dense(&slices);
            let expected = dense_rank_oracle(&m);
            assert_eq!(m.rank(FieldChoice::Rationals), expected, "{rows:?}");
            // Generic primes agree on these torsion-free cases.
            assert_eq!(m.rank(FieldChoice::Prime(32003)), expected, "{rows:?}");
        }
    }

    #[test]
    fn characteristic_can_lower_rank() {
        // [[2]] has rank 1 over Q, rank 0 over GF(2).
        let m = from_dense(&[&[2i8]]);
        assert_eq!(m.rank(FieldChoice::Rationals), 1);
        assert_eq!(m.rank(FieldChoice::Prime(2)), 0);
    }

    #[test]
    fn wide_and_tall_shapes() {
        let wide = from_dense(&[&[1, 0, 1, 0, 1]]);
        assert_eq!(wide.rank(FieldChoice::Rationals), 1);
        let tall = from_dense(&[&[1], &[1], &[1]]);
        assert_eq!(tall.rank(FieldChoice::Rationals), 1);
        let zero = SparseMat::new(3, 0, vec![]);
        assert_eq!(zero.rank(FieldChoice::Rationals), 0);
    }
}
