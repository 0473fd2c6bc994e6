//! Rooted maps as rotation systems: a vertex permutation `sigma` (counterclockwise
//! successor of each dart around its vertex) and a fixed-point-free involution `alpha`
//! pairing the two darts of each edge. Faces are the cycles of `phi = sigma . alpha`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    root: usize,
}

/// Cycle index of every element of a permutation, and the number of cycles.
fn cycles(n: usize, perm: impl Fn(usize) -> usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while id[d] == usize::MAX {
            id[d] = count;
            d = perm(d);
        }
        count += 1;
    }
    (id, count)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Inconsistent(msg.into())
}

impl RootedMap {
    /// Validate and build a map. The darts must form one orbit under `sigma` and `alpha`.
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>, root: usize) -> Result<RootedMap> {
        let n = sigma.len();
        if alpha.len() != n || n == 0 || !n.is_multiple_of(2) || root >= n {
            return Err(invalid("dart arrays must have equal, even, nonzero length"));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(invalid("sigma is not a permutation"));
            }
        }
        for d in 0..n {
            let a = alpha[d];
            if a >= n || a == d || alpha[a] != d {
                return Err(invalid("alpha is not a fixed-point-free involution"));
            }
        }
        let mut reached = vec![false; n];
        let mut stack = vec![root];
        reached[root] = true;
        while let Some(d) = stack.pop() {
            for e in [sigma[d], alpha[d]] {
                if !reached[e] {
                    reached[e] = true;
                    stack.push(e);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(invalid("map is not connected"));
        }
        Ok(RootedMap { sigma, alpha, root })
    }

    /// Build a map on a simple graph from counterclockwise neighbour lists, rooted at
    /// the dart from `root.0` to `root.1`.
    pub fn from_rotations(rotations: &[Vec<usize>], root: (usize, usize)) -> Result<RootedMap> {
        let mut dart_of = std::collections::HashMap::new();
        for (v, nbrs) in rotations.iter().enumerate() {
            for &u in nbrs {
                let id = dart_of.len();
                if dart_of.insert((v, u), id).is_some() {
                    return Err(invalid(format!("repeated neighbour {u} of {v}")));
                }
            }
        }
        let n = dart_of.len();
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for (v, nbrs) in rotations.iter().enumerate() {
            for (i, &u) in nbrs.iter().enumerate() {
                let d = dart_of[&(v, u)];
                sigma[d] = dart_of[&(v, nbrs[(i + 1) % nbrs.len()])];
                alpha[d] = *dart_of
                    .get(&(u, v))
                    .ok_or_else(|| invalid(format!("edge {v}-{u} listed on one side only")))?;
            }
        }
        let root = *dart_of
            .get(&root)
            .ok_or_else(|| invalid("root dart is not an edge"))?;
        RootedMap::new(sigma, alpha, root)
    }

    pub fn darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn edges(&self) -> usize {
        self.darts() / 2
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    /// Vertex index of each dart (its tail) and the number of vertices.
    pub fn vertices(&self) -> (Vec<usize>, usize) {
        cycles(self.darts(), |d| self.sigma[d])
    }

    /// Face index of each dart and the number of faces.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        cycles(self.darts(), |d| self.phi(d))
    }

    pub fn genus(&self) -> usize {
        let v = self.vertices().1;
        let f = self.faces().1;
        (2 + self.edges() - v - f) / 2
    }

    pub fn is_planar(&self) -> bool {
        self.vertices().1 + self.faces().1 == self.edges() + 2
    }

    /// The dual map: faces become vertices, with the same root dart.
    pub fn dual(&self) -> RootedMap {
        let sigma = (0..self.darts()).map(|d| self.phi(d)).collect();
        RootedMap {
            sigma,
            alpha: self.alpha.clone(),
            root: self.root,
        }
    }

    /// Tutte's quadrangulation: one vertex per vertex and per face of the map, one
    /// edge per corner, one face per edge. Dart `2d` runs from the tail of `d` into
    /// the face holding the corner after `d`; dart `2d + 1` is its reverse.
    pub fn quadrangulation(&self) -> RootedMap {
        let n = self.darts();
        let mut sigma = vec![0; 2 * n];
        let mut alpha = vec![0; 2 * n];
        for d in 0..n {
            alpha[2 * d] = 2 * d + 1;
            alpha[2 * d + 1] = 2 * d;
            sigma[2 * d] = 2 * self.sigma[d];
            // The corner after `d` belongs to the face traversed by `alpha(d)`; the
            // next corner of that face follows `alpha . sigma`.
            let prev = self.alpha[self.sigma[d]];
            sigma[2 * prev + 1] = 2 * d + 1;
        }
        RootedMap {
            sigma,
            alpha,
            root: 2 * self.root,
        }
    }

    /// The medial 4-regular map, as the dual of the quadrangulation.
    pub fn medial(&self) -> RootedMap {
        self.quadrangulation().dual()
    }

    /// Whether the underlying graph is simple and stays connected after deleting any
    /// two vertices, with at least four vertices.
    pub fn is_three_connected(&self) -> bool {
        let (vid, nv) = self.vertices();
        if nv < 4 || !self.stats().is_simple() {
            return false;
        }
        let edges: Vec<(usize, usize)> = (0..self.darts())
            .filter(|&d| d < self.alpha[d])
            .map(|d| (vid[d], vid[self.alpha[d]]))
            .collect();
        let connected_without = |x: usize, y: usize| {
            let mut parent: Vec<usize> = (0..nv).collect();
            fn find(p: &mut [usize], mut a: usize) -> usize {
                while p[a] != a {
                    p[a] = p[p[a]];
                    a = p[a];
                }
                a
            }
            let mut components = nv - 2;
            for &(a, b) in &edges {
                if [a, b].iter().any(|&v| v == x || v == y) {
                    continue;
                }
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    components -= 1;
                }
            }
            components == 1
        };
        (0..nv).all(|x| (x + 1..nv).all(|y| connected_without(x, y)))
    }

    pub fn stats(&self) -> MapStats {
        let (vid, nv) = self.vertices();
        let (fid, nf) = self.faces();
        let mut vertex_degrees = vec![0; nv];
        let mut face_degrees = vec![0; nf];
        for d in 0..self.darts() {
            vertex_degrees[vid[d]] += 1;
            face_degrees[fid[d]] += 1;
        }
        let mut loops = 0;
        let mut pairs = BTreeSet::new();
        let mut multi_edges = 0;
        for d in 0..self.darts() {
            let e = self.alpha[d];
            if d > e {
                continue;
            }
            let (a, b) = (vid[d].min(vid[e]), vid[d].max(vid[e]));
            if a == b {
                loops += 1;
            } else if !pairs.insert((a, b)) {
                multi_edges += 1;
            }
        }
        MapStats {
            vertices: nv,
            edges: self.edges(),
            faces: nf,
            is_quadrangulation: face_degrees.iter().all(|&k| k == 4),
            is_four_regular: vertex_degrees.iter().all(|&k| k == 4),
            vertex_degrees,
            face_degrees,
            loops,
            multi_edges,
        }
    }
}

/// Counting statistics of a map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub vertex_degrees: Vec<usize>,
    pub face_degrees: Vec<usize>,
    pub loops: usize,
    /// Edges parallel to an earlier edge.
    pub multi_edges: usize,
    pub is_quadrangulation: bool,
    pub is_four_regular: bool,
}

impl MapStats {
    pub fn is_simple(&self) -> bool {
        self.loops == 0 && self.multi_edges == 0
    }
}

/// Root-edge class of a quadrangulation (by 2-vertices) or of a 4-regular map
/// (by 2-faces).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootClass {
    /// Root edge meets no isolated degree-2 cell and is not the end of a chain.
    Zero,
    /// Root edge meets a degree-2 cell whose other neighbour also has degree 2: the
    /// quadrangle with a 2-cycle substituted next to the root, dually the outer edge
    /// of a triple edge.
    ZeroStar,
    /// Root edge meets exactly one isolated degree-2 cell.
    One,
}

/// Classification of a rooted map with respect to one kind of cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Classified {
    /// Faces of a quadrangulation, vertices of a 4-regular map.
    pub size: usize,
    /// Isolated 2-vertices, respectively 2-faces.
    pub two_cells: usize,
    pub class: RootClass,
}

/// Shared classification. `cell[d]` is the cell on the side of dart `d`; the edge
/// `{d, alpha(d)}` joins `cell[d]` and `cell[alpha(d)]`.
fn classify_cells(
    m: &RootedMap,
    cell: &[usize],
    cells: usize,
    size: usize,
) -> (Classified, Vec<bool>) {
    let mut degree = vec![0; cells];
    for &c in cell {
        degree[c] += 1;
    }
    let mut isolated = vec![false; cells];
    for c in 0..cells {
        isolated[c] = degree[c] == 2;
    }
    for d in 0..m.darts() {
        let (a, b) = (cell[d], cell[m.alpha(d)]);
        if a != b && degree[a] == 2 && degree[b] == 2 {
            isolated[a] = false;
            isolated[b] = false;
        }
    }
    if size == 1 {
        // The path of length two (dually the double loop): its middle degree-2 cell is
        // not counted.
        let none = vec![false; cells];
        return (
            Classified {
                size,
                two_cells: 0,
                class: RootClass::Zero,
            },
            none,
        );
    }
    let two_cells = isolated.iter().filter(|x| **x).count();
    let (a, b) = (cell[m.root()], cell[m.alpha(m.root())]);
    let touching = if a == b {
        usize::from(isolated[a])
    } else {
        usize::from(isolated[a]) + usize::from(isolated[b])
    };
    let class = if touching == 1 {
        RootClass::One
    } else if touching == 0 && a != b && ((degree[a] == 2) != (degree[b] == 2)) {
        let (low, high) = if degree[a] == 2 { (a, b) } else { (b, a) };
        let chained = (0..m.darts()).any(|d| {
            let next = cell[m.alpha(d)];
            cell[d] == low && next != low && next != high && degree[next] == 2
        });
        if chained {
            RootClass::ZeroStar
        } else {
            RootClass::Zero
        }
    } else {
        RootClass::Zero
    };
    (
        Classified {
            size,
            two_cells,
            class,
        },
        isolated,
    )
}

/// Classify a quadrangulation by faces, isolated 2-vertices and root class.
pub fn classify_quadrangulation(q: &RootedMap) -> Option<Classified> {
    let stats = q.stats();
    if !stats.is_quadrangulation {
        return None;
    }
    let (vid, nv) = q.vertices();
    Some(classify_cells(q, &vid, nv, stats.faces).0)
}

/// Classification of a 4-regular map together with its ordinary-edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourRegularClass {
    pub classified: Classified,
    /// Edges not on the boundary of a 2-face.
    pub ordinary_edges: usize,
}

/// Classify a 4-regular map by vertices, 2-faces, ordinary edges and root class.
pub fn classify_four_regular(m: &RootedMap) -> Option<FourRegularClass> {
    let stats = m.stats();
    if !stats.is_four_regular {
        return None;
    }
    let (fid, nf) = m.faces();
    let (classified, two_face) = classify_cells(m, &fid, nf, stats.vertices);
    let ordinary_edges = (0..m.darts())
        .filter(|&d| d < m.alpha(d) && !two_face[fid[d]] && !two_face[fid[m.alpha(d)]])
        .count();
    Some(FourRegularClass {
        classified,
        ordinary_edges,
    })
}
