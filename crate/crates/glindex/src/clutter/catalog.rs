//! Named clutters and ideals used as fixtures throughout: the bi-pyramid
//! family behind the degree-5/6 obstructions to linear presentation, the
//! four seed clutters whose squares lose linear presentation, and the
//! non-square-free example separating the two properties.

use crate::clutter::Clutter;
use crate::monomial::{Monomial, MonomialIdeal};

fn triples(n: usize, lists: &[[usize; 3]]) -> Clutter {
    let lists: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
    Clutter::from_vertex_lists(n, 3, &lists).expect("catalog entries are valid")
}

/// Bi-pyramid over a triangle: the 6-circuit triangulation of the 2-sphere
/// on 5 vertices. Its complement's edge ideal has a degree-5 first syzygy.
pub fn b() -> Clutter {
    triples(5, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [3, 4, 5], [2, 4, 5]])
}

/// The bi-pyramid with circuit 125 added.
pub fn b1() -> Clutter {
    triples(
        5,
        &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [3, 4, 5], [2, 4, 5], [1, 2, 5]],
    )
}

/// The bi-pyramid with circuits 125 and 135 added.
pub fn b2() -> Clutter {
    triples(
        5,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [1, 3, 4],
            [2, 3, 5],
            [3, 4, 5],
            [2, 4, 5],
            [1, 2, 5],
            [1, 3, 5],
        ],
    )
}

/// All triples on 6 vertices except 123 and 456. Its complement's edge
/// ideal is the two-generator ideal with a degree-6 first syzygy.
pub fn b_prime() -> Clutter {
    let skip = [0b000111u64, 0b111000u64];
    let circuits = Clutter::complete(6, 3)
        .circuits()
        .iter()
        .copied()
        .filter(|c| !skip.contains(c))
        .collect();
    Clutter::new(6, 3, circuits).expect("catalog entries are valid")
}

/// The forbidden family for linear presentation of 3-uniform edge ideals:
/// a complement is free of these four patterns exactly when the edge ideal
/// is linearly presented.
pub fn family_c() -> Vec<Clutter> {
    vec![b(), b1(), b2(), b_prime()]
}

/// The 8-circuit seed on 6 vertices whose edge ideal is linearly presented
/// while its square is not (Sturmfels' example).
pub fn d1_6() -> Clutter {
    triples(
        6,
        &[
            [1, 2, 3],
            [2, 4, 6],
            [1, 4, 5],
            [3, 5, 6],
            [1, 3, 4],
            [1, 3, 6],
            [1, 4, 6],
            [3, 4, 6],
        ],
    )
}

/// Seed number 6 of the 48-member run on 7 vertices.
pub fn d6_7() -> Clutter {
    triples(
        7,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [1, 2, 7],
            [1, 4, 5],
            [1, 4, 7],
            [2, 4, 7],
            [2, 6, 7],
            [3, 4, 7],
        ],
    )
}

/// Seed number 48 of the 48-member run on 7 vertices.
pub fn d48_7() -> Clutter {
    triples(
        7,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [1, 3, 6],
            [1, 4, 5],
            [1, 4, 6],
            [1, 4, 7],
            [1, 6, 7],
            [2, 4, 6],
            [2, 6, 7],
            [3, 4, 6],
            [3, 4, 7],
        ],
    )
}

/// The unique (up to isomorphism) seed on 8 vertices.
pub fn d1_8() -> Clutter {
    triples(
        8,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [1, 2, 5],
            [1, 4, 5],
            [1, 4, 7],
            [2, 4, 6],
            [2, 4, 8],
            [2, 5, 8],
            [4, 5, 6],
        ],
    )
}

/// A non-square-free equigenerated ideal that is linearly presented while
/// its square is not: (x1^2 x2, x1^2 x3, x1 x3^2, x2 x3^2, x1 x3 x4).
pub fn conca_ideal() -> MonomialIdeal {
    MonomialIdeal::new(
        4,
        vec![
            Monomial::new(vec![2, 1, 0, 0]),
            Monomial::new(vec![2, 0, 1, 0]),
            Monomial::new(vec![1, 0, 2, 0]),
            Monomial::new(vec![0, 1, 2, 0]),
            Monomial::new(vec![1, 0, 1, 1]),
        ],
    )
    .expect("catalog entries are valid")
}

/// A catalog entry: either a clutter or a monomial ideal.
#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Clutter(Clutter),
    Ideal(MonomialIdeal),
}

/// The stable lookup names accepted by [`by_name`].
pub fn catalog_names() -> &'static [&'static str] {
    &["B", "B1", "B2", "Bprime", "D1_6", "D6_7", "D48_7", "D1_8", "conca"]
}

/// Looks up a catalog entry by its stable name.
pub fn by_name(name: &str) -> Option<CatalogEntry> {
    Some(match name {
        "B" => CatalogEntry::Clutter(b()),
        "B1" => CatalogEntry::Clutter(b1()),
        "B2" => CatalogEntry::Clutter(b2()),
        "Bprime" => CatalogEntry::Clutter(b_prime()),
        "D1_6" => CatalogEntry::Clutter(d1_6()),
        "D6_7" => CatalogEntry::Clutter(d6_7()),
        "D48_7" => CatalogEntry::Clutter(d48_7()),
        "D1_8" => CatalogEntry::Clutter(d1_8()),
        "conca" => CatalogEntry::Ideal(conca_ideal()),
        _ => return None,
    })
}
