//! Exhaustive generation of rooted maps, each isomorphism class exactly once.
//!
//! Darts are labelled in the order a breadth-first walk from the root discovers them:
//! dart `d` is processed by fixing `alpha(d)` and then `sigma(d)`, each either an
//! already-labelled dart or the next fresh label. Every rooted map has exactly one such
//! canonical labelling, so no isomorphism test is needed.

use super::map::RootedMap;

const NONE: usize = usize::MAX;

struct Generator<'a> {
    darts: usize,
    count: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    image_used: Vec<bool>,
    planar_only: bool,
    visit: &'a mut dyn FnMut(&RootedMap),
}

impl Generator<'_> {
    fn leaf(&mut self) {
        let map = RootedMap::new(self.sigma.clone(), self.alpha.clone(), 0)
            .expect("generator produces valid maps");
        if !self.planar_only || map.is_planar() {
            (self.visit)(&map);
        }
    }

    fn fresh(&mut self) -> Option<usize> {
        (self.count < self.darts).then(|| {
            self.count += 1;
            self.count - 1
        })
    }

    fn assign_alpha(&mut self, d: usize) {
        if d == self.darts {
            self.leaf();
            return;
        }
        if d == self.count {
            return;
        }
        if self.alpha[d] != NONE {
            self.assign_sigma(d);
            return;
        }
        for e in d + 1..self.count {
            if self.alpha[e] == NONE {
                self.alpha[d] = e;
                self.alpha[e] = d;
                self.assign_sigma(d);
                self.alpha[e] = NONE;
            }
        }
        if let Some(e) = self.fresh() {
            self.alpha[d] = e;
            self.alpha[e] = d;
            self.assign_sigma(d);
            self.alpha[e] = NONE;
            self.count -= 1;
        }
        self.alpha[d] = NONE;
    }

    fn assign_sigma(&mut self, d: usize) {
        for e in 0..self.count {
            if !self.image_used[e] {
                self.set_sigma(d, e);
            }
        }
        if let Some(e) = self.fresh() {
            self.set_sigma(d, e);
            self.count -= 1;
        }
    }

    fn set_sigma(&mut self, d: usize, e: usize) {
        self.sigma[d] = e;
        self.image_used[e] = true;
        self.assign_alpha(d + 1);
        self.image_used[e] = false;
        self.sigma[d] = NONE;
    }
}

/// Call `visit` once for every rooted map with `edges` edges, of any genus unless
/// `planar_only` is set.
pub fn visit_rooted_maps(edges: usize, planar_only: bool, visit: &mut dyn FnMut(&RootedMap)) {
    if edges == 0 {
        return;
    }
    let darts = 2 * edges;
    let mut generator = Generator {
        darts,
        count: 1,
        sigma: vec![NONE; darts],
        alpha: vec![NONE; darts],
        image_used: vec![false; darts],
        planar_only,
        visit,
    };
    generator.assign_alpha(0);
}

/// Number of rooted maps with `edges` edges.
pub fn count_rooted_maps(edges: usize, planar_only: bool) -> u64 {
    let mut count = 0;
    visit_rooted_maps(edges, planar_only, &mut |_| count += 1);
    count
}
