//! Brute-force count of labelled 4-regular planar simple graphs.

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;

struct Search {
    n: usize,
    degree: Vec<usize>,
    adjacent: Vec<Vec<bool>>,
    edges: Vec<(u32, u32)>,
    regular: u64,
    planar: u64,
}

impl Search {
    fn vertex(&mut self, v: usize) {
        if v == self.n {
            self.regular += 1;
            let graph = UnGraph::<(), ()>::from_edges(&self.edges);
            if is_planar(&graph) {
                self.planar += 1;
            }
            return;
        }
        let need = 4 - self.degree[v];
        let candidates: Vec<usize> = (v + 1..self.n)
            .filter(|&u| self.degree[u] < 4 && !self.adjacent[v][u])
            .collect();
        self.choose(v, &candidates, 0, need);
    }

    fn choose(&mut self, v: usize, candidates: &[usize], from: usize, need: usize) {
        if need == 0 {
            self.vertex(v + 1);
            return;
        }
        for i in from..candidates.len() {
            if candidates.len() - i < need {
                break;
            }
            let u = candidates[i];
            self.link(v, u, true);
            self.choose(v, candidates, i + 1, need - 1);
            self.link(v, u, false);
        }
    }

    fn link(&mut self, v: usize, u: usize, on: bool) {
        self.adjacent[v][u] = on;
        self.adjacent[u][v] = on;
        if on {
            self.degree[v] += 1;
            self.degree[u] += 1;
            self.edges.push((v as u32, u as u32));
        } else {
            self.degree[v] -= 1;
            self.degree[u] -= 1;
            self.edges.pop();
        }
    }
}

/// Labelled 4-regular simple graphs on `n` vertices: `(all, planar)`.
pub fn count_labelled_four_regular(n: usize) -> (u64, u64) {
    let mut search = Search {
        n,
        degree: vec![0; n],
        adjacent: vec![vec![false; n]; n],
        edges: Vec::new(),
        regular: 0,
        planar: 0,
    };
    if n > 0 {
        search.vertex(0);
    }
    (search.regular, search.planar)
}
