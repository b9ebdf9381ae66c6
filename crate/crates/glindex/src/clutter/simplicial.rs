//! Simplicial complexes as explicit face sets, grouped by face size.

use serde::Serialize;

use crate::error::{Error, Result};

/// A simplicial complex on vertices `0..n`, stored as the full face list
/// grouped by number of vertices. Layer `k` holds the faces with `k`
/// vertices, each a sorted slice, the layer itself sorted lexicographically.
///
/// The complex with no faces at all is the void complex. Every non-void
/// complex contains the empty face (layer 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    layers: Vec<Vec<Box<[u32]>>>,
}

impl SimplicialComplex {
    /// The void complex: no faces, not even the empty one.
    pub fn void(n: usize) -> SimplicialComplex {
        SimplicialComplex { n, layers: Vec::new() }
    }

    /// The complex whose only face is the empty face.
    pub fn empty_face_only(n: usize) -> SimplicialComplex {
        SimplicialComplex {
            n,
            layers: vec![vec![Vec::new().into_boxed_slice()]],
        }
    }

    /// Builds a complex from an explicit face list, which must be downward
    /// closed and contain the empty face (use an empty list for the void
    /// complex). Faces may be unsorted; duplicates are rejected.
    pub fn from_faces(n: usize, faces: Vec<Vec<u32>>) -> Result<SimplicialComplex> {
        let mut layers: Vec<Vec<Box<[u32]>>> = Vec::new();
        for mut face in faces {
            face.sort_unstable();
            for window in face.windows(2) {
                if window[0] == window[1] {
                    return Err(Error::Malformed(format!(
                        "face {face:?} repeats a vertex"
                    )));
                }
            }
            if let Some(&top) = face.last() {
                if top as usize >= n {
                    return Err(Error::Malformed(format!(
                        "face {face:?} uses a vertex outside 0..{n}"
                    )));
                }
            }
            let k = face.len();
            while layers.len() <= k {
                layers.push(Vec::new());
            }
            layers[k].push(face.into_boxed_slice());
        }
        for layer in &mut layers {
            layer.sort_unstable();
            let before = layer.len();
            layer.dedup();
            if layer.len() != before {
                return Err(Error::Malformed("duplicate face".into()));
            }
        }
        let complex = SimplicialComplex { n, layers };
        complex.check_closed()?;
        Ok(complex)
    }

    /// Builds the downward closure of the given facets.
    pub fn from_facets(n: usize, facets: Vec<Vec<u32>>) -> Result<SimplicialComplex> {
        let mut layers: Vec<Vec<Box<[u32]>>> = Vec::new();
        for mut facet in facets {
            facet.sort_unstable();
            facet.dedup();
            if let Some(&top) = facet.last() {
                if top as usize >= n {
                    return Err(Error::Malformed(format!(
                        "facet {facet:?} uses a vertex outside 0..{n}"
                    )));
                }
            }
            assert!(facet.len() <= 25, "facet too large to expand");
            for sub in 0u32..(1 << facet.len()) {
                let face: Vec<u32> = facet
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| sub & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                let k = face.len();
                while layers.len() <= k {
                    layers.push(Vec::new());
                }
                layers[k].push(face.into_boxed_slice());
            }
        }
        for layer in &mut layers {
            layer.sort_unstable();
            layer.dedup();
        }
        Ok(SimplicialComplex { n, layers })
    }

    /// Builds from pre-grouped, pre-sorted layers that are already known to
    /// be downward closed (chain enumerations produce exactly this shape).
    pub(crate) fn from_layers_unchecked(
        n: usize,
        layers: Vec<Vec<Box<[u32]>>>,
    ) -> SimplicialComplex {
        let complex = SimplicialComplex { n, layers };
        debug_assert!(complex.check_closed().is_ok());
        complex
    }

    fn check_closed(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Ok(());
        }
        if self.layers[0].is_empty() {
            return Err(Error::Malformed(
                "non-void complex is missing the empty face".into(),
            ));
        }
        for k in 1..self.layers.len() {
            for face in &self.layers[k] {
                for drop in 0..face.len() {
                    let sub: Vec<u32> = face
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    if self.layers[k - 1]
                        .binary_search_by(|f| f.as_ref().cmp(sub.as_slice()))
                        .is_err()
                    {
                        return Err(Error::Malformed(format!(
                            "face {face:?} is present but its subset {sub:?} is not"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Ambient vertex count (an upper bound; not every vertex need be a face).
    pub fn n(&self) -> usize {
        self.n
    }

    /// True for the complex with no faces at all.
    pub fn is_void(&self) -> bool {
        self.layers.is_empty()
    }

    /// Dimension: largest face size minus one. `None` when void; the
    /// empty-face-only complex has dimension -1.
    pub fn dim(&self) -> Option<isize> {
        if self.is_void() {
            None
        } else {
            Some(self.layers.len() as isize - 2)
        }
    }

    /// Face counts by size: entry `k` counts faces with `k` vertices
    /// (entry 0 is always 1 for non-void complexes).
    pub fn f_vector(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }

    /// Total face count, the empty face included.
    pub fn num_faces(&self) -> usize {
        self.layers.iter().map(|l| l.len()).sum()
    }

    /// The faces with exactly `k` vertices, sorted lexicographically.
    pub fn faces_of_size(&self, k: usize) -> &[Box<[u32]>] {
        self.layers.get(k).map(|l| l.as_slice()).unwrap_or(&[])
    }

    /// Membership test; the slice must be sorted.
    pub fn has_face(&self, face: &[u32]) -> bool {
        debug_assert!(face.windows(2).all(|w| w[0] < w[1]));
        self.layers
            .get(face.len())
            .is_some_and(|layer| layer.binary_search_by(|f| f.as_ref().cmp(face)).is_ok())
    }

    /// Position of a face within its size layer, for indexing chain bases.
    pub fn face_index(&self, face: &[u32]) -> Option<usize> {
        self.layers
            .get(face.len())?
            .binary_search_by(|f| f.as_ref().cmp(face))
            .ok()
    }

    /// The subcomplex of faces whose vertices all lie in the mask `w`.
    /// Vertex labels are kept. Requires at most 64 ambient vertices.
    pub fn induced_mask(&self, w: u64) -> SimplicialComplex {
        assert!(self.n <= 64);
        let layers: Vec<Vec<Box<[u32]>>> = self
            .layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .filter(|f| f.iter().all(|&v| w & (1 << v) != 0))
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .take_while(|layer: &Vec<Box<[u32]>>| !layer.is_empty())
            .collect();
        SimplicialComplex { n: self.n, layers }
    }

    /// Debug serialization: `{"n": …, "faces": [[…], …]}` sorted by size
    /// then lexicographically.
    pub fn to_json_string(&self) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            n: usize,
            faces: Vec<&'a [u32]>,
        }
        let faces: Vec<&[u32]> = self
            .layers
            .iter()
            .flat_map(|l| l.iter().map(|f| f.as_ref()))
            .collect();
        serde_json::to_string(&Wire { n: self.n, faces })
            .expect("complex serialization cannot fail")
    }
}
