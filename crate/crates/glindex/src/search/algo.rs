//! Two-stage search for the minimal 3-uniform clutters whose edge ideal is
//! linearly presented while its square is not: a filtered quadruple scan
//! deduplicated by stabilizer orbits, then a pruned candidate enumeration
//! gated by forbidden-family freeness of the complement and disconnection
//! of the quadruple's products in the square's restricted generator graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::k_subsets;
use crate::clutter::{family_c, Clutter};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::search::perm::{apply_to_mask, orbit_classes, stabilizer, Perm, PermGroup};

/// Exponent vector of a monomial on at most eight variables.
type Exps = [u8; 8];

fn exps_of(mask: u64) -> Exps {
    let mut e = [0u8; 8];
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        e[i] = 1;
        m &= m - 1;
    }
    e
}

fn add(a: &Exps, b: &Exps) -> Exps {
    std::array::from_fn(|i| a[i] + b[i])
}

fn lcm(a: &Exps, b: &Exps) -> Exps {
    std::array::from_fn(|i| a[i].max(b[i]))
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_deg(a: &Exps, b: &Exps) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| x.max(y) as u32).sum()
}

fn monomial_of(n: usize, e: &Exps) -> Monomial {
    Monomial::new(e[..n].iter().map(|&x| x as u32).collect())
}

/// A quadruple of generator triples (u1, u2, v1, v2) on `[n]` whose four
/// mixed products u_i v_j all fail to divide lcm(u1·u2, v1·v2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Quadruple {
    pub n: usize,
    pub u1: u64,
    pub u2: u64,
    pub v1: u64,
    pub v2: u64,
}

impl Quadruple {
    /// The four factor masks in order.
    pub fn factor_masks(&self) -> [u64; 4] {
        [self.u1, self.u2, self.v1, self.v2]
    }

    /// The product u1·u2.
    pub fn u_monomial(&self) -> Monomial {
        monomial_of(self.n, &add(&exps_of(self.u1), &exps_of(self.u2)))
    }

    /// The product v1·v2.
    pub fn v_monomial(&self) -> Monomial {
        monomial_of(self.n, &add(&exps_of(self.v1), &exps_of(self.v2)))
    }

    fn u_exps(&self) -> Exps {
        add(&exps_of(self.u1), &exps_of(self.u2))
    }

    fn v_exps(&self) -> Exps {
        add(&exps_of(self.v1), &exps_of(self.v2))
    }
}

type SidePair = (u64, u64);

fn sorted_pair(a: u64, b: u64) -> SidePair {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Stage one: scans partner triples U2, V2 for the anchored sides
/// U1 = {1,2,3} and V1 ∈ {{1,2,4}, {1,4,5}}, keeps the pairs whose four
/// mixed products fail to divide lcm(u, v), deduplicates under the printed
/// stabilizer groups, and discards pairs whose supports overlap in exactly
/// five vertices or fail to cover all of `[n]`.
pub fn algorithm1(n: usize) -> Result<Vec<Quadruple>> {
    if !(6..=8).contains(&n) {
        return Err(Error::Unsupported(format!(
            "the quadruple search is defined for n in 6..8, got {n}"
        )));
    }
    let full: u64 = (1 << n) - 1;
    let s = k_subsets(n, 3);
    let u1: u64 = 0b111;
    let mut out: Vec<Quadruple> = Vec::new();
    for (v1, v1_verts) in [(0b1011u64, [1usize, 2, 4]), (0b11001u64, [1usize, 4, 5])] {
        let group = stabilizer(n, &v1_verts)?;
        let mut found: BTreeSet<(SidePair, SidePair)> = BTreeSet::new();
        for &u2 in &s {
            let ue = add(&exps_of(u1), &exps_of(u2));
            for &v2 in &s {
                let ve = add(&exps_of(v1), &exps_of(v2));
                let l = lcm(&ue, &ve);
                let blocked = [u1, u2].iter().all(|&a| {
                    [v1, v2]
                        .iter()
                        .all(|&b| !divides(&add(&exps_of(a), &exps_of(b)), &l))
                });
                if blocked {
                    found.insert((sorted_pair(u1, u2), sorted_pair(v1, v2)));
                }
            }
        }
        let items: Vec<(SidePair, SidePair)> = found.into_iter().collect();
        let classes = orbit_classes(&group, &items, |p, &(us, vs)| {
            (
                sorted_pair(apply_to_mask(p, us.0), apply_to_mask(p, us.1)),
                sorted_pair(apply_to_mask(p, vs.0), apply_to_mask(p, vs.1)),
            )
        });
        for class in classes {
            let &idx = class.iter().min_by_key(|&&i| items[i]).expect("nonempty");
            let (us, vs) = items[idx];
            let u_support = us.0 | us.1;
            let v_support = vs.0 | vs.1;
            if (u_support & v_support).count_ones() == 5 {
                continue;
            }
            if u_support | v_support != full {
                continue;
            }
            let u2 = if us.0 == u1 { us.1 } else { us.0 };
            let v2 = if vs.0 == v1 { vs.1 } else { vs.0 };
            debug_assert!(us.0 == u1 || us.1 == u1);
            debug_assert!(vs.0 == v1 || vs.1 == v1);
            out.push(Quadruple { n, u1, u2, v1, v2 });
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The restricted generator graph of the square, precomputed over every
/// possible pair of triples so candidate sets can activate vertices
/// incrementally. Vertices are deduplicated by product: distinct factor
/// pairs with equal product are one generator.
struct SquareGraph {
    words: usize,
    adj: Vec<Vec<u64>>,
    u_id: usize,
    v_id: usize,
    /// For each triple index, the (partner index, vertex id) pairs it forms.
    pairs_by_triple: Vec<Vec<(usize, usize)>>,
}

impl SquareGraph {
    fn build(s: &[u64], ue: &Exps, ve: &Exps) -> SquareGraph {
        let l = lcm(ue, ve);
        let mut ids: HashMap<Exps, usize> = HashMap::new();
        let mut vert_exps: Vec<Exps> = Vec::new();
        let mut pairs_by_triple: Vec<Vec<(usize, usize)>> = vec![Vec::new(); s.len()];
        for i in 0..s.len() {
            let ei = exps_of(s[i]);
            for j in i..s.len() {
                let prod = add(&ei, &exps_of(s[j]));
                if !divides(&prod, &l) {
                    continue;
                }
                let id = *ids.entry(prod).or_insert_with(|| {
                    vert_exps.push(prod);
                    vert_exps.len() - 1
                });
                pairs_by_triple[i].push((j, id));
                if i != j {
                    pairs_by_triple[j].push((i, id));
                }
            }
        }
        let words = vert_exps.len().div_ceil(64);
        let mut adj = vec![vec![0u64; words]; vert_exps.len()];
        for a in 0..vert_exps.len() {
            for b in a + 1..vert_exps.len() {
                if lcm_deg(&vert_exps[a], &vert_exps[b]) == 7 {
                    adj[a][b / 64] |= 1 << (b % 64);
                    adj[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        let u_id = ids[ue];
        let v_id = ids[ve];
        SquareGraph {
            words,
            adj,
            u_id,
            v_id,
            pairs_by_triple,
        }
    }

    /// Whether u reaches v through the active vertices.
    fn connected(&self, active: &[u64]) -> bool {
        let mut reach = vec![0u64; self.words];
        let mut frontier = vec![0u64; self.words];
        reach[self.u_id / 64] |= 1 << (self.u_id % 64);
        frontier.clone_from_slice(&reach);
        loop {
            let mut next = vec![0u64; self.words];
            for w in 0..self.words {
                let mut bits = frontier[w];
                while bits != 0 {
                    let v = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for ww in 0..self.words {
                        next[ww] |= self.adj[v][ww];
                    }
                }
            }
            let mut progressed = false;
            for w in 0..self.words {
                next[w] &= active[w] & !reach[w];
                if next[w] != 0 {
                    progressed = true;
                }
                reach[w] |= next[w];
            }
            if reach[self.v_id / 64] & (1 << (self.v_id % 64)) != 0 {
                return true;
            }
            if !progressed {
                return false;
            }
            frontier.clone_from_slice(&next);
        }
    }
}

/// Candidate enumeration state shared by the recursive search.
struct CandidateSearch<'a> {
    n: usize,
    s: &'a [u64],
    graph: &'a SquareGraph,
    optional: Vec<usize>,
    /// Graph neighbors among optional triples, by triple index.
    indep_adj: Vec<Vec<usize>>,
    in_set: Vec<bool>,
    ban_count: Vec<u32>,
    active_count: Vec<u32>,
    active_bits: Vec<u64>,
    members: Vec<usize>,
    family: Vec<Clutter>,
    outputs: Vec<Clutter>,
}

impl CandidateSearch<'_> {
    fn add_triple(&mut self, t: usize) -> usize {
        self.in_set[t] = true;
        self.members.push(t);
        let mut activated = 0usize;
        for &(partner, vid) in &self.graph.pairs_by_triple[t] {
            if self.in_set[partner] {
                self.active_count[vid] += 1;
                if self.active_count[vid] == 1 {
                    self.active_bits[vid / 64] |= 1 << (vid % 64);
                }
                activated += 1;
            }
        }
        activated
    }

    fn remove_triple(&mut self, t: usize) {
        for &(partner, vid) in &self.graph.pairs_by_triple[t] {
            if self.in_set[partner] {
                self.active_count[vid] -= 1;
                if self.active_count[vid] == 0 {
                    self.active_bits[vid / 64] &= !(1 << (vid % 64));
                }
            }
        }
        self.in_set[t] = false;
        self.members.pop();
    }

    fn dfs(&mut self, idx: usize) {
        if idx == self.optional.len() {
            self.emit_leaf();
            return;
        }
        let t = self.optional[idx];
        self.dfs(idx + 1);
        if self.ban_count[t] > 0 {
            return;
        }
        self.add_triple(t);
        if !self.graph.connected(&self.active_bits) {
            for k in 0..self.indep_adj[t].len() {
                let nb = self.indep_adj[t][k];
                self.ban_count[nb] += 1;
            }
            self.dfs(idx + 1);
            for k in 0..self.indep_adj[t].len() {
                let nb = self.indep_adj[t][k];
                self.ban_count[nb] -= 1;
            }
        }
        self.remove_triple(t);
    }

    fn emit_leaf(&mut self) {
        let mut circuits: Vec<u64> = self.members.iter().map(|&t| self.s[t]).collect();
        circuits.sort_unstable();
        if !linearly_presented_triples(&circuits) {
            return;
        }
        let clutter =
            Clutter::new(self.n, 3, circuits).expect("candidate circuits are valid triples");
        if !clutter.complement().is_family_free(&self.family) {
            return;
        }
        self.outputs.push(clutter);
    }
}

/// Degree-5 and degree-6 first syzygies of the edge ideal of `circuits`
/// vanish exactly when every pairwise lcm of those degrees has a connected
/// join graph on the triples below it.
fn linearly_presented_triples(circuits: &[u64]) -> bool {
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    for i in 0..circuits.len() {
        for j in i + 1..circuits.len() {
            let join = circuits[i] | circuits[j];
            let d = join.count_ones();
            if d == 5 || d == 6 {
                candidates.insert(join);
            }
        }
    }
    for u in candidates {
        let atoms: Vec<u64> = circuits.iter().copied().filter(|&c| c & !u == 0).collect();
        let mut parent: Vec<usize> = (0..atoms.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                if atoms[i] | atoms[j] != u {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let roots: BTreeSet<usize> = (0..atoms.len()).map(|i| find(&mut parent, i)).collect();
        if roots.len() > 1 {
            return false;
        }
    }
    true
}

/// Stage two: for a quadruple from [`algorithm1`], enumerates the candidate
/// clutters containing the four factor triples and keeps those whose
/// complement avoids the four forbidden patterns while u and v stay in
/// distinct components of the square's restricted generator graph.
///
/// Returned clutters are one representative per orbit of the quadruple's
/// stabilizer, so two outputs never differ by a relabeling that fixes the
/// anchored factor pairs.
pub fn algorithm2(n: usize, quad: &Quadruple) -> Result<Vec<Clutter>> {
    let labeled = algorithm2_labeled(n, quad)?;
    quotient_by_stabilizer(quad, labeled)
}

/// The labeled search behind [`algorithm2`]: every candidate set passing
/// both gates, before the stabilizer quotient.
///
/// Candidates have the form C1 ∪ X ∪ Y from the three precomputed exclusion
/// layers: single triples that would bridge u to v through one new product
/// (excluded outright), triple pairs that would bridge through two products
/// (at most one endpoint per candidate, an independence constraint), and the
/// unconstrained rest. Disconnection is monotone under removal, so the
/// enumeration prunes any branch whose partial candidate already connects
/// u to v; the forbidden-family gate is not monotone and runs per leaf.
pub(crate) fn algorithm2_labeled(n: usize, quad: &Quadruple) -> Result<Vec<Clutter>> {
    if quad.n != n || !(6..=8).contains(&n) {
        return Err(Error::Unsupported(format!(
            "candidate enumeration needs a quadruple for n in 6..8, got n={n}"
        )));
    }
    let s = k_subsets(n, 3);
    let ue = quad.u_exps();
    let ve = quad.v_exps();
    if ue == ve {
        return Ok(Vec::new());
    }
    let l = lcm(&ue, &ve);
    let factor_masks = quad.factor_masks();
    let factors: Vec<Exps> = factor_masks.iter().map(|&m| exps_of(m)).collect();
    let u_factors = [exps_of(quad.u1), exps_of(quad.u2)];
    let v_factors = [exps_of(quad.v1), exps_of(quad.v2)];
    let c1: BTreeSet<u64> = factor_masks.iter().copied().collect();

    // Single-triple exclusions: F with a product w1·w2 that lands in the
    // graph adjacent to u (resp. v) and admits a mixed divisor of
    // lcm(v, w1w2) (resp. lcm(u, w1w2)), which forces a connecting path in
    // any linearly presented candidate.
    let bridges = |f: &Exps, own: &[Exps; 2], own_prod: &Exps, far: &[Exps; 2], far_prod: &Exps| {
        own.iter().any(|w2| {
            let m = add(f, w2);
            divides(&m, &l)
                && lcm_deg(own_prod, &m) == 7
                && far.iter().any(|vi| {
                    [f, w2]
                        .iter()
                        .any(|wj| divides(&add(vi, wj), &lcm(far_prod, &m)))
                })
        })
    };
    let mut c2: BTreeSet<u64> = BTreeSet::new();
    for &f in &s {
        let fe = exps_of(f);
        if bridges(&fe, &u_factors, &ue, &v_factors, &ve)
            || bridges(&fe, &v_factors, &ve, &u_factors, &ue)
        {
            c2.insert(f);
        }
    }
    if c1.iter().any(|f| c2.contains(f)) {
        return Ok(Vec::new());
    }

    // Pair exclusions: two triples that would together bridge u to v, via a
    // common product, via two products chained between the sides, or via an
    // alternative factorization of u or v with a mixed divisor.
    let mut edges: BTreeSet<(u64, u64)> = BTreeSet::new();
    for i in 0..s.len() {
        let e1 = exps_of(s[i]);
        for j in i + 1..s.len() {
            let e2 = exps_of(s[j]);
            let prod = add(&e1, &e2);
            let common = divides(&prod, &l) && lcm_deg(&ue, &prod) == 7 && lcm_deg(&ve, &prod) == 7;
            let chained = || {
                [(&e1, &e2), (&e2, &e1)].iter().any(|(a, b)| {
                    factors.iter().any(|w1| {
                        let m1 = add(a, w1);
                        divides(&m1, &l)
                            && lcm_deg(&ue, &m1) == 7
                            && factors.iter().any(|w2| {
                                let m2 = add(b, w2);
                                divides(&m2, &l)
                                    && lcm_deg(&m1, &m2) == 7
                                    && lcm_deg(&m2, &ve) == 7
                            })
                    })
                })
            };
            let refactored = || {
                (prod == ue
                    && [&e1, &e2]
                        .iter()
                        .any(|f| v_factors.iter().any(|vj| divides(&add(f, vj), &l))))
                    || (prod == ve
                        && [&e1, &e2]
                            .iter()
                            .any(|f| u_factors.iter().any(|uj| divides(&add(f, uj), &l))))
            };
            if common || chained() || refactored() {
                edges.insert((s[i], s[j]));
            }
        }
    }
    if edges
        .iter()
        .any(|&(a, b)| c1.contains(&a) && c1.contains(&b))
    {
        return Ok(Vec::new());
    }

    let incident: BTreeSet<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let forced_out: BTreeSet<u64> = edges
        .iter()
        .filter_map(|&(a, b)| {
            if c1.contains(&a) {
                Some(b)
            } else if c1.contains(&b) {
                Some(a)
            } else {
                None
            }
        })
        .collect();

    let index_of: HashMap<u64, usize> = s.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let excluded =
        |f: &u64| c1.contains(f) || c2.contains(f) || forced_out.contains(f);
    let optional_x: Vec<u64> = incident.iter().copied().filter(|f| !excluded(f)).collect();
    let optional_y: Vec<u64> = s
        .iter()
        .copied()
        .filter(|f| !incident.contains(f) && !c1.contains(f) && !c2.contains(f))
        .collect();

    let mut indep_adj: Vec<Vec<usize>> = vec![Vec::new(); s.len()];
    for &(a, b) in &edges {
        if !excluded(&a) && !excluded(&b) {
            indep_adj[index_of[&a]].push(index_of[&b]);
            indep_adj[index_of[&b]].push(index_of[&a]);
        }
    }

    // Higher-degree vertices first collapses the independence branching
    // early; ties break on the mask for determinism.
    let mut optional: Vec<usize> = optional_x.iter().map(|m| index_of[m]).collect();
    optional.sort_unstable_by_key(|&t| (std::cmp::Reverse(indep_adj[t].len()), s[t]));
    optional.extend(optional_y.iter().map(|m| index_of[m]));

    let graph = SquareGraph::build(&s, &ue, &ve);
    if graph.u_id == graph.v_id {
        return Ok(Vec::new());
    }
    let mut search = CandidateSearch {
        n,
        s: &s,
        graph: &graph,
        optional,
        indep_adj,
        in_set: vec![false; s.len()],
        ban_count: vec![0; s.len()],
        active_count: vec![0; graph.adj.len()],
        active_bits: vec![0u64; graph.words],
        members: Vec::new(),
        family: family_c(),
        outputs: Vec::new(),
    };
    for f in &c1 {
        search.add_triple(index_of[f]);
    }
    if search.graph.connected(&search.active_bits) {
        return Ok(Vec::new());
    }
    search.dfs(0);
    let mut outputs = search.outputs;
    outputs.sort_unstable_by(|a, b| a.circuits().cmp(b.circuits()));
    Ok(outputs)
}

/// Relabelings of `[n]` fixing the quadruple as a pair of unordered factor
/// pairs: `{u1,u2}` and `{v1,v2}` each land on themselves or on each other.
fn quadruple_stabilizer(quad: &Quadruple) -> Result<PermGroup> {
    let sym = PermGroup::symmetric(quad.n)?;
    let u_pair = sorted_pair(quad.u1, quad.u2);
    let v_pair = sorted_pair(quad.v1, quad.v2);
    let kept: Vec<Perm> = sym
        .elements()
        .iter()
        .filter(|p| {
            let up = sorted_pair(apply_to_mask(p, quad.u1), apply_to_mask(p, quad.u2));
            let vp = sorted_pair(apply_to_mask(p, quad.v1), apply_to_mask(p, quad.v2));
            (up == u_pair && vp == v_pair) || (up == v_pair && vp == u_pair)
        })
        .cloned()
        .collect();
    PermGroup::from_generators(quad.n, &kept)
}

/// Quotients the labeled search output by the quadruple's stabilizer and
/// keeps the lexicographically least member of each orbit.
fn quotient_by_stabilizer(quad: &Quadruple, labeled: Vec<Clutter>) -> Result<Vec<Clutter>> {
    let stab = quadruple_stabilizer(quad)?;
    let items: Vec<Vec<u64>> = labeled.iter().map(|c| c.circuits().to_vec()).collect();
    let classes = orbit_classes(&stab, &items, |p, circuits| {
        let mut img: Vec<u64> = circuits.iter().map(|&m| apply_to_mask(p, m)).collect();
        img.sort_unstable();
        img
    });
    let mut out: Vec<Clutter> = classes
        .iter()
        .map(|class| {
            let &idx = class
                .iter()
                .min_by(|&&a, &&b| items[a].cmp(&items[b]))
                .expect("nonempty");
            labeled[idx].clone()
        })
        .collect();
    out.sort_unstable_by(|a, b| a.circuits().cmp(b.circuits()));
    Ok(out)
}

/// The classification run: every quadruple from every anchor, canonicalized
/// and deduplicated into one family.
#[derive(Clone, Debug)]
pub struct FamilyD {
    members: Vec<Clutter>,
}

impl FamilyD {
    /// Canonical members, sorted by vertex count then circuit list.
    pub fn members(&self) -> &[Clutter] {
        &self.members
    }

    /// Members on exactly `n` vertices.
    pub fn members_on(&self, n: usize) -> Vec<&Clutter> {
        self.members.iter().filter(|c| c.n() == n).collect()
    }

    /// Member counts keyed by vertex count.
    pub fn counts_by_n(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.members {
            *counts.entry(c.n()).or_insert(0) += 1;
        }
        counts
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyCacheFile {
    fingerprint: String,
    members: Vec<FamilyCacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct FamilyCacheEntry {
    n: usize,
    circuits: Vec<Vec<usize>>,
}

/// Bump when the search code changes in a way that alters its output.
const FAMILY_D_FINGERPRINT: &str = "family-d/quadruple-search/2";

fn family_cache_path(dir: &Path) -> std::path::PathBuf {
    dir.join("family_d.json")
}

fn load_family_cache(dir: &Path) -> Option<FamilyD> {
    let text = std::fs::read_to_string(family_cache_path(dir)).ok()?;
    let file: FamilyCacheFile = serde_json::from_str(&text).ok()?;
    if file.fingerprint != FAMILY_D_FINGERPRINT {
        return None;
    }
    let mut members = Vec::with_capacity(file.members.len());
    for entry in file.members {
        let lists: Vec<Vec<usize>> = entry.circuits;
        let clutter = Clutter::from_vertex_lists(entry.n, 3, &lists).ok()?;
        if clutter.canonical_form() != clutter {
            return None;
        }
        members.push(clutter);
    }
    let distinct: BTreeSet<(usize, Vec<u64>)> = members
        .iter()
        .map(|c| (c.n(), c.circuits().to_vec()))
        .collect();
    if distinct.len() != members.len() {
        return None;
    }
    Some(FamilyD { members })
}

fn store_family_cache(dir: &Path, family: &FamilyD) {
    let file = FamilyCacheFile {
        fingerprint: FAMILY_D_FINGERPRINT.to_string(),
        members: family
            .members
            .iter()
            .map(|c| FamilyCacheEntry {
                n: c.n(),
                circuits: c.vertex_lists(),
            })
            .collect(),
    };
    let text = serde_json::to_string_pretty(&file).expect("cache serializes");
    if std::fs::create_dir_all(dir).is_ok() {
        let _ = std::fs::write(family_cache_path(dir), text);
    }
}

fn compute_family_d() -> Result<FamilyD> {
    let mut seen: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    let mut members: Vec<Clutter> = Vec::new();
    for n in 6..=8 {
        for quad in algorithm1(n)? {
            for clutter in algorithm2(n, &quad)? {
                let canonical = clutter.canonical_form();
                if seen.insert((canonical.n(), canonical.circuits().to_vec())) {
                    members.push(canonical);
                }
            }
        }
    }
    members.sort_unstable_by(|a, b| (a.n(), a.circuits()).cmp(&(b.n(), b.circuits())));
    Ok(FamilyD { members })
}

/// The deduplicated classification family, memoized in-process and cached
/// on disk under `cache_dir` when given.
pub fn family_d(cache_dir: Option<&Path>) -> Result<Arc<FamilyD>> {
    static MEMO: OnceLock<Arc<FamilyD>> = OnceLock::new();
    if let Some(done) = MEMO.get() {
        return Ok(done.clone());
    }
    if let Some(dir) = cache_dir {
        if let Some(loaded) = load_family_cache(dir) {
            return Ok(MEMO.get_or_init(|| Arc::new(loaded)).clone());
        }
    }
    let computed = compute_family_d()?;
    if let Some(dir) = cache_dir {
        store_family_cache(dir, &computed);
    }
    Ok(MEMO.get_or_init(|| Arc::new(computed)).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti;
    use crate::clutter::{d1_6, d1_8, d48_7, d6_7, perms_of};
    use crate::complex::FieldChoice;
    use crate::linpres;

    fn quad(n: usize, u1: [usize; 3], u2: [usize; 3], v1: [usize; 3], v2: [usize; 3]) -> Quadruple {
        let mask = |t: [usize; 3]| t.iter().map(|&v| 1u64 << (v - 1)).sum();
        Quadruple {
            n,
            u1: mask(u1),
            u2: mask(u2),
            v1: mask(v1),
            v2: mask(v2),
        }
    }

    /// The three anchored quadruples the classification is reported from.
    fn printed_quadruples() -> [Quadruple; 3] {
        [
            quad(6, [1, 2, 3], [2, 4, 6], [1, 4, 5], [3, 5, 6]),
            quad(7, [1, 2, 3], [3, 4, 7], [1, 4, 5], [2, 6, 7]),
            quad(8, [1, 2, 3], [4, 5, 6], [1, 4, 7], [2, 5, 8]),
        ]
    }

    fn quadruples_isomorphic(a: &Quadruple, b: &Quadruple) -> bool {
        if a.n != b.n {
            return false;
        }
        let a_sides = (sorted_pair(a.u1, a.u2), sorted_pair(a.v1, a.v2));
        for p in perms_of(a.n).iter() {
            let us = sorted_pair(apply_to_mask(p, b.u1), apply_to_mask(p, b.u2));
            let vs = sorted_pair(apply_to_mask(p, b.v1), apply_to_mask(p, b.v2));
            if (us, vs) == a_sides || (vs, us) == a_sides {
                return true;
            }
        }
        false
    }

    #[test]
    fn algorithm1_finds_the_printed_quadruples() {
        for printed in printed_quadruples() {
            let found = algorithm1(printed.n).unwrap();
            assert!(!found.is_empty());
            assert!(
                found.iter().any(|q| quadruples_isomorphic(q, &printed)),
                "missing printed quadruple for n={}",
                printed.n
            );
        }
    }

    #[test]
    fn algorithm1_outputs_fail_every_mixed_split() {
        for n in 6..=8 {
            for q in algorithm1(n).unwrap() {
                let u_factors = [
                    monomial_of(n, &exps_of(q.u1)),
                    monomial_of(n, &exps_of(q.u2)),
                ];
                let v_factors = [
                    monomial_of(n, &exps_of(q.v1)),
                    monomial_of(n, &exps_of(q.v2)),
                ];
                for i in 0..2 {
                    for j in 0..2 {
                        let divides =
                            linpres::split_divides(&u_factors, &v_factors, &[i], &[j]).unwrap();
                        assert!(!divides, "n={n} split ({i},{j})");
                    }
                }
                let us = q.u1 | q.u2;
                let vs = q.v1 | q.v2;
                assert_ne!((us & vs).count_ones(), 5);
                assert_eq!(us | vs, (1 << n) - 1);
            }
        }
    }

    #[test]
    fn algorithm1_rejects_out_of_range_n() {
        assert!(matches!(algorithm1(5), Err(Error::Unsupported(_))));
        assert!(matches!(algorithm1(9), Err(Error::Unsupported(_))));
    }

    #[test]
    fn algorithm1_is_deterministic() {
        assert_eq!(algorithm1(6).unwrap(), algorithm1(6).unwrap());
    }

    #[test]
    fn fast_presentation_check_agrees_with_the_graded_route() {
        let fixtures: Vec<Clutter> = vec![
            crate::clutter::b(),
            crate::clutter::b_prime(),
            d1_6(),
            d6_7(),
            Clutter::complete(6, 3),
        ];
        for c in fixtures {
            let fast = linearly_presented_triples(c.circuits());
            let reference = betti::is_linearly_presented(&c.edge_ideal(), FieldChoice::Rationals)
                .unwrap();
            assert_eq!(fast, reference);
        }
    }

    #[test]
    fn candidate_enumeration_on_six_vertices_matches_the_classification() {
        let outputs = algorithm2(6, &printed_quadruples()[0]).unwrap();
        assert_eq!(outputs.len(), 6);
        let seed = d1_6();
        assert!(outputs.iter().any(|c| c.is_isomorphic_to(&seed)));
        for c in &outputs {
            let ideal = c.edge_ideal();
            assert!(betti::is_linearly_presented(&ideal, FieldChoice::Rationals).unwrap());
            assert!(
                !betti::is_linearly_presented(&ideal.power(2), FieldChoice::Rationals).unwrap()
            );
            let connected = linpres::pair_connected(
                &ideal.power(2),
                &printed_quadruples()[0].u_monomial(),
                &printed_quadruples()[0].v_monomial(),
            )
            .unwrap();
            assert!(connected.is_none());
        }
    }

    #[test]
    fn candidate_enumeration_on_seven_vertices_matches_the_classification() {
        let outputs = algorithm2(7, &printed_quadruples()[1]).unwrap();
        assert_eq!(outputs.len(), 48);
        assert!(outputs.iter().any(|c| c.is_isomorphic_to(&d6_7())));
        assert!(outputs.iter().any(|c| c.is_isomorphic_to(&d48_7())));
        let classes: BTreeSet<Clutter> = outputs.iter().map(|c| c.canonical_form()).collect();
        assert_eq!(classes.len(), 44);
    }

    #[test]
    fn candidate_enumeration_on_eight_vertices_matches_the_classification() {
        let outputs = algorithm2(8, &printed_quadruples()[2]).unwrap();
        assert_eq!(outputs.len(), 170);
        assert!(outputs.iter().any(|c| c.is_isomorphic_to(&d1_8())));
        let classes: BTreeSet<Clutter> = outputs.iter().map(|c| c.canonical_form()).collect();
        assert_eq!(classes.len(), 142);
    }

    #[test]
    fn stabilizer_quotient_partitions_the_labeled_outputs() {
        let quad = &printed_quadruples()[0];
        let labeled = algorithm2_labeled(6, quad).unwrap();
        assert_eq!(labeled.len(), 15);
        let reps = algorithm2(6, quad).unwrap();
        assert_eq!(reps.len(), 6);
        let stab = quadruple_stabilizer(quad).unwrap();
        assert_eq!(stab.len(), 8);
        let mut covered: BTreeSet<Vec<u64>> = BTreeSet::new();
        for rep in &reps {
            for p in stab.elements() {
                let mut img: Vec<u64> =
                    rep.circuits().iter().map(|&m| apply_to_mask(p, m)).collect();
                img.sort_unstable();
                covered.insert(img);
            }
        }
        for c in &labeled {
            assert!(covered.contains(c.circuits()));
        }
    }

    #[test]
    fn family_counts_and_seeds() {
        let family = family_d(None).unwrap();
        let counts = family.counts_by_n();
        assert_eq!(counts.get(&6), Some(&6));
        assert_eq!(counts.get(&7), Some(&44));
        assert_eq!(counts.get(&8), Some(&142));
        assert_eq!(family.members().len(), 192);
        for seed in [d1_6(), d6_7(), d48_7(), d1_8()] {
            assert!(family
                .members()
                .iter()
                .any(|c| c.is_isomorphic_to(&seed)));
        }
        let forms: BTreeSet<(usize, Vec<u64>)> = family
            .members()
            .iter()
            .map(|c| (c.n(), c.circuits().to_vec()))
            .collect();
        assert_eq!(forms.len(), 192);
        for c in family.members() {
            assert_eq!(&c.canonical_form(), c);
            assert!(c.is_spanning());
        }
    }

    #[test]
    fn family_cache_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let family = family_d(None).unwrap();
        store_family_cache(dir.path(), &family);
        let loaded = load_family_cache(dir.path()).unwrap();
        assert_eq!(loaded.members().len(), family.members().len());
        for (a, b) in loaded.members().iter().zip(family.members()) {
            assert_eq!(a, b);
        }
        std::fs::write(
            family_cache_path(dir.path()),
            "{\"fingerprint\":\"other\",\"members\":[]}",
        )
        .unwrap();
        assert!(load_family_cache(dir.path()).is_none());
    }
}
