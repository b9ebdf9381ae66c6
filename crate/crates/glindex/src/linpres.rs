//! Linear presentation via generator-graph connectivity.
//!
//! For an ideal generated in degree `d`, the generator graph joins two
//! generators when their lcm has degree `d + 1`. The ideal is linearly
//! presented exactly when every generator pair `u, v` is connected inside
//! the subgraph induced on the generators dividing `lcm(u, v)`. This module
//! implements that criterion with breadth-first path witnesses, the power
//! variant, and the mixed-product divisibility predicate used by the
//! enumeration pruning rules.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Graph on the minimal generators; vertices are sorted lexicographically
/// by exponent vector and neighbor lists are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorGraph {
    vertices: Vec<Monomial>,
    adj: Vec<Vec<usize>>,
}

impl GeneratorGraph {
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.vertices.binary_search(m).ok()
    }

    /// Subgraph induced on the vertices dividing `l`, keeping vertex order.
    pub fn restrict_to_divisors(&self, l: &Monomial) -> GeneratorGraph {
        let keep: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| self.vertices[i].divides_unchecked(l))
            .collect();
        let mut new_index = vec![usize::MAX; self.vertices.len()];
        for (ni, &oi) in keep.iter().enumerate() {
            new_index[oi] = ni;
        }
        GeneratorGraph {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            adj: keep
                .iter()
                .map(|&i| {
                    self.adj[i]
                        .iter()
                        .filter(|&&w| new_index[w] != usize::MAX)
                        .map(|&w| new_index[w])
                        .collect()
                })
                .collect(),
        }
    }
}

/// A generator pair with the breadth-first path between them, when one
/// exists inside the pair's restricted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub u: Monomial,
    pub v: Monomial,
    pub path: Option<Vec<Monomial>>,
}

/// Outcome of the all-pairs path criterion. When the ideal fails, the
/// witness is the first disconnected pair in sorted-generator order; when it
/// holds and the ideal has at least two generators, the witness shows the
/// first pair with its connecting path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationCheck {
    pub linearly_presented: bool,
    pub witness: Option<PairWitness>,
}

/// Builds the generator graph of an equigenerated ideal.
pub fn generator_graph(ideal: &MonomialIdeal) -> Result<GeneratorGraph> {
    let d = ideal.equigenerated_degree()?;
    let vertices = ideal.generators().to_vec();
    let g = vertices.len();
    let mut adj = vec![Vec::new(); g];
    for i in 0..g {
        for j in i + 1..g {
            if vertices[i].lcm_unchecked(&vertices[j]).degree() == d + 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    Ok(GeneratorGraph { vertices, adj })
}

/// The generator graph induced on the divisors of `lcm(u, v)`.
pub fn restricted_graph(
    ideal: &MonomialIdeal,
    u: &Monomial,
    v: &Monomial,
) -> Result<GeneratorGraph> {
    let graph = generator_graph(ideal)?;
    for m in [u, v] {
        if graph.index_of(m).is_none() {
            return Err(Error::NotAGenerator(m.to_string()));
        }
    }
    Ok(graph.restrict_to_divisors(&u.lcm_unchecked(v)))
}

/// Breadth-first shortest path from `from` to `to` through vertices accepted
/// by `allowed`; neighbor exploration order is ascending, so ties break
/// toward lexicographically smaller monomials.
fn bfs_path(
    graph: &GeneratorGraph,
    allowed: impl Fn(usize) -> bool,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    if from == to {
        return Some(vec![from]);
    }
    let g = graph.vertices().len();
    let mut prev: Vec<usize> = vec![usize::MAX; g];
    let mut seen = vec![false; g];
    let mut queue = VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(cur) = queue.pop_front() {
        for &w in graph.neighbors(cur) {
            if seen[w] || !allowed(w) {
                continue;
            }
            seen[w] = true;
            prev[w] = cur;
            if w == to {
                let mut path = vec![to];
                let mut x = to;
                while prev[x] != usize::MAX {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Shortest path between two generators inside their restricted graph, or
/// `None` when the pair is disconnected there.
pub fn pair_connected(
    ideal: &MonomialIdeal,
    u: &Monomial,
    v: &Monomial,
) -> Result<Option<Vec<Monomial>>> {
    let graph = generator_graph(ideal)?;
    let ui = graph
        .index_of(u)
        .ok_or_else(|| Error::NotAGenerator(u.to_string()))?;
    let vi = graph
        .index_of(v)
        .ok_or_else(|| Error::NotAGenerator(v.to_string()))?;
    let l = u.lcm_unchecked(v);
    let path = bfs_path(
        &graph,
        |w| graph.vertices()[w].divides_unchecked(&l),
        ui,
        vi,
    );
    Ok(path.map(|p| p.into_iter().map(|i| graph.vertices()[i].clone()).collect()))
}

/// All-pairs path criterion: linearly presented iff every generator pair is
/// connected in its restricted graph.
pub fn linearly_presented_graph(ideal: &MonomialIdeal) -> Result<PresentationCheck> {
    let graph = generator_graph(ideal)?;
    let verts = graph.vertices();
    let g = verts.len();
    for i in 0..g {
        for j in i + 1..g {
            let l = verts[i].lcm_unchecked(&verts[j]);
            if bfs_path(&graph, |w| verts[w].divides_unchecked(&l), i, j).is_none() {
                return Ok(PresentationCheck {
                    linearly_presented: false,
                    witness: Some(PairWitness {
                        u: verts[i].clone(),
                        v: verts[j].clone(),
                        path: None,
                    }),
                });
            }
        }
    }
    let witness = (g >= 2).then(|| {
        let l = verts[0].lcm_unchecked(&verts[1]);
        let path = bfs_path(&graph, |w| verts[w].divides_unchecked(&l), 0, 1)
            .expect("pair verified connected");
        PairWitness {
            u: verts[0].clone(),
            v: verts[1].clone(),
            path: Some(path.into_iter().map(|i| verts[i].clone()).collect()),
        }
    });
    Ok(PresentationCheck {
        linearly_presented: true,
        witness,
    })
}

/// The path criterion applied to the `k`-th power of the ideal.
pub fn power_check(ideal: &MonomialIdeal, k: u32) -> Result<PresentationCheck> {
    if k == 0 {
        return Err(Error::Unsupported("power 0 of an ideal".into()));
    }
    linearly_presented_graph(&ideal.power(k))
}

/// Whether the mixed product over `a`-indexed factors of `u` and `b`-indexed
/// factors of `v` divides `lcm(u, v)`, for `u`, `v` given by their degree-`d`
/// factor lists. Index sets are 0-based, disjoint by position role, and must
/// partition the factor count between them.
pub fn split_divides(
    u_factors: &[Monomial],
    v_factors: &[Monomial],
    a: &[usize],
    b: &[usize],
) -> Result<bool> {
    let k = u_factors.len();
    if k == 0 || v_factors.len() != k {
        return Err(Error::Malformed(
            "factor lists must be non-empty and of equal length".into(),
        ));
    }
    let n = u_factors[0].nvars();
    for m in u_factors.iter().chain(v_factors) {
        if m.nvars() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: m.nvars(),
            });
        }
    }
    for set in [a, b] {
        if set.is_empty() {
            return Err(Error::Malformed("index sets must be non-empty".into()));
        }
        if set.iter().any(|&i| i >= k) {
            return Err(Error::Malformed("factor index out of range".into()));
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() {
            return Err(Error::Malformed("repeated factor index".into()));
        }
    }
    if a.len() + b.len() != k {
        return Err(Error::Malformed(
            "index sets must jointly select as many factors as one product".into(),
        ));
    }
    let product = |factors: &[Monomial], idx: &[usize]| {
        idx.iter().fold(Monomial::one(n), |acc, &i| {
            acc.times(&factors[i]).expect("same ring")
        })
    };
    let u = u_factors
        .iter()
        .fold(Monomial::one(n), |acc, m| acc.times(m).expect("same ring"));
    let v = v_factors
        .iter()
        .fold(Monomial::one(n), |acc, m| acc.times(m).expect("same ring"));
    let mixed = product(u_factors, a)
        .times(&product(v_factors, b))
        .expect("same ring");
    Ok(mixed.divides_unchecked(&u.lcm_unchecked(&v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter as catalog;
    use crate::clutter::Clutter;

    fn tri(vars: [usize; 3]) -> Monomial {
        Monomial::from_support(5, vars.iter().map(|v| v - 1))
    }

    fn bipyramid_complement_ideal() -> MonomialIdeal {
        catalog::b().complement().edge_ideal()
    }

    #[test]
    fn bipyramid_complement_graph_shape() {
        let graph = generator_graph(&bipyramid_complement_ideal()).unwrap();
        assert_eq!(graph.vertices().len(), 4);
        assert_eq!(graph.edge_count(), 3);
        let m234 = graph.index_of(&tri([2, 3, 4])).unwrap();
        assert!(graph.neighbors(m234).is_empty());
        for pair in [([1, 2, 5], [1, 3, 5]), ([1, 2, 5], [1, 4, 5]), ([1, 3, 5], [1, 4, 5])] {
            let i = graph.index_of(&tri(pair.0)).unwrap();
            let j = graph.index_of(&tri(pair.1)).unwrap();
            assert!(graph.has_edge(i, j));
        }
    }

    #[test]
    fn small_graphs() {
        let principal = MonomialIdeal::new(3, vec![Monomial::new(vec![1, 1, 1])]).unwrap();
        let graph = generator_graph(&principal).unwrap();
        assert_eq!((graph.vertices().len(), graph.edge_count()), (1, 0));

        let triangle = MonomialIdeal::new(
            3,
            vec![
                Monomial::new(vec![1, 1, 0]),
                Monomial::new(vec![0, 1, 1]),
                Monomial::new(vec![1, 0, 1]),
            ],
        )
        .unwrap();
        let graph = generator_graph(&triangle).unwrap();
        assert_eq!((graph.vertices().len(), graph.edge_count()), (3, 3));
    }

    #[test]
    fn restricted_graph_splits_the_bad_pair() {
        let i = bipyramid_complement_ideal();
        let (u, v) = (tri([2, 3, 4]), tri([1, 2, 5]));
        let restricted = restricted_graph(&i, &u, &v).unwrap();
        assert_eq!(restricted.vertices().len(), 4);
        assert_eq!(restricted.edge_count(), 3);
        assert_eq!(pair_connected(&i, &u, &v).unwrap(), None);
        assert!(matches!(
            restricted_graph(&i, &u, &Monomial::new(vec![1, 1, 1, 0, 0])),
            Err(Error::NotAGenerator(_))
        ));
    }

    #[test]
    fn adding_any_clutter_circuit_reconnects_the_bad_pair() {
        let base = bipyramid_complement_ideal();
        let (u, v) = (tri([2, 3, 4]), tri([1, 2, 5]));
        for circuit in catalog::b().vertex_lists() {
            let mut gens = base.generators().to_vec();
            gens.push(Monomial::from_support(5, circuit.iter().map(|c| c - 1)));
            let extended = MonomialIdeal::new(5, gens).unwrap();
            let path = pair_connected(&extended, &u, &v).unwrap();
            assert!(path.is_some(), "circuit {circuit:?}");
            let path = path.unwrap();
            assert_eq!(path.first(), Some(&u));
            assert_eq!(path.last(), Some(&v));
        }
    }

    #[test]
    fn adjacent_pair_has_length_one_path() {
        let i = bipyramid_complement_ideal();
        let (u, v) = (tri([1, 2, 5]), tri([1, 3, 5]));
        assert_eq!(pair_connected(&i, &u, &v).unwrap(), Some(vec![u, v]));
        let w = tri([2, 3, 4]);
        assert_eq!(
            pair_connected(&i, &w, &w).unwrap(),
            Some(vec![w.clone()])
        );
    }

    #[test]
    fn criterion_fails_on_obstruction_complement_with_deterministic_witness() {
        let check = linearly_presented_graph(&bipyramid_complement_ideal()).unwrap();
        assert!(!check.linearly_presented);
        let w = check.witness.unwrap();
        assert_eq!((w.u, w.v), (tri([2, 3, 4]), tri([1, 4, 5])));
        assert_eq!(w.path, None);
    }

    #[test]
    fn criterion_holds_on_sturmfels_clutter_but_not_its_square() {
        let i = catalog::d1_6().edge_ideal();
        let check = linearly_presented_graph(&i).unwrap();
        assert!(check.linearly_presented);
        let w = check.witness.unwrap();
        assert!(w.path.is_some());
        assert!(!power_check(&i, 2).unwrap().linearly_presented);
    }

    #[test]
    fn sturmfels_disconnected_pair_in_the_square() {
        let i = catalog::d1_6().edge_ideal();
        let sq = i.power(2);
        let six = |a: [usize; 3]| Monomial::from_support(6, a.iter().map(|v| v - 1));
        let u = six([1, 2, 3]).times(&six([2, 4, 6])).unwrap();
        let v = six([1, 4, 5]).times(&six([3, 5, 6])).unwrap();
        assert_eq!(pair_connected(&sq, &u, &v).unwrap(), None);
    }

    #[test]
    fn power_check_mirrors_presentation_of_powers() {
        let i = bipyramid_complement_ideal();
        assert!(!power_check(&i, 2).unwrap().linearly_presented);
        assert!(matches!(power_check(&i, 0), Err(Error::Unsupported(_))));

        let complete = Clutter::complete(5, 3).edge_ideal();
        assert!(power_check(&complete, 1).unwrap().linearly_presented);
        assert!(power_check(&complete, 2).unwrap().linearly_presented);
    }

    #[test]
    fn split_divides_examples() {
        let six = |a: [usize; 3]| Monomial::from_support(6, a.iter().map(|v| v - 1));
        let uf = [six([1, 2, 3]), six([2, 4, 6])];
        let vf = [six([1, 4, 5]), six([3, 5, 6])];
        for (a, b) in [([0], [0]), ([0], [1]), ([1], [0]), ([1], [1])] {
            assert!(!split_divides(&uf, &vf, &a, &b).unwrap());
        }

        // Equal factor lists: complementary splits rebuild u itself, while a
        // repeated factor index can overshoot the lcm.
        let same = [six([1, 2, 3]), six([2, 3, 4])];
        assert!(split_divides(&same, &same, &[0], &[1]).unwrap());
        assert!(split_divides(&same, &same, &[1], &[0]).unwrap());
        assert!(!split_divides(&same, &same, &[0], &[0]).unwrap());
    }

    #[test]
    fn split_divides_validates_shapes() {
        let six = |a: [usize; 3]| Monomial::from_support(6, a.iter().map(|v| v - 1));
        let uf = [six([1, 2, 3]), six([2, 4, 6])];
        let vf = [six([1, 4, 5]), six([3, 5, 6])];
        assert!(matches!(
            split_divides(&uf, &vf[..1], &[0], &[0]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            split_divides(&uf, &vf, &[], &[0, 1]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            split_divides(&uf, &vf, &[0, 1], &[1]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            split_divides(&uf, &vf, &[2], &[0]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            split_divides(&uf, &vf, &[0, 0], &[1]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn graph_matches_betti_criterion_on_small_corpus() {
        use crate::betti::is_linearly_presented;
        use crate::complex::FieldChoice;
        let ideals = [
            bipyramid_complement_ideal(),
            catalog::b1().complement().edge_ideal(),
            catalog::b2().complement().edge_ideal(),
            catalog::b_prime().complement().edge_ideal(),
            catalog::d1_6().edge_ideal(),
            catalog::conca_ideal(),
            Clutter::complete(5, 3).edge_ideal(),
        ];
        for ideal in &ideals {
            assert_eq!(
                linearly_presented_graph(ideal).unwrap().linearly_presented,
                is_linearly_presented(ideal, FieldChoice::Rationals).unwrap(),
                "{ideal}"
            );
        }
    }
}
