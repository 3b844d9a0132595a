//! Dynamic programs over representative families.
//!
//! Every DP cell holds a family of multisets trimmed to a representative
//! subfamily after each step. Entries keep a link to the entry they were
//! extended from, so witnesses are read back without re-deriving them.

mod monomial;
mod packing;
mod path;

pub use monomial::{solve_monomial_detection, MonomialResult};
pub use packing::{
    reduce_set_weighted_packing, solve_rpq_packing, validate_packing, PackingResult,
    SetFamilyInstance,
};
pub use path::{
    reduce_edge_weighted_path, solve_edge_weighted_path, solve_r_simple_k_path,
    solve_r_simple_k_path_from, validate_walk, EdgeReduction, RSimplePathResult,
};

use std::collections::HashMap;

use crate::error::Result;
use crate::multiset::{MultisetVector, WeightedUniverse};
use crate::repset::{representative_selection, WeightedMultisetFamily};

/// Candidates for one DP cell: one entry per distinct multiset, lightest
/// weight kept, earliest candidate winning ties.
struct Candidates<L> {
    sets: Vec<MultisetVector>,
    weights: Vec<i64>,
    links: Vec<L>,
    index: HashMap<MultisetVector, usize>,
}

impl<L> Candidates<L> {
    fn new() -> Self {
        Candidates {
            sets: Vec::new(),
            weights: Vec::new(),
            links: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn offer(&mut self, set: MultisetVector, weight: i64, link: L) {
        match self.index.get(&set) {
            Some(&i) => {
                if weight < self.weights[i] {
                    self.weights[i] = weight;
                    self.links[i] = link;
                }
            }
            None => {
                self.index.insert(set.clone(), self.sets.len());
                self.sets.push(set);
                self.weights.push(weight);
                self.links.push(link);
            }
        }
    }

    /// Trims to a representative subfamily, keeping links aligned with entries.
    fn into_representative(self, universe: &WeightedUniverse, r: u32, k: u32) -> Result<Cell<L>> {
        let mut fam = WeightedMultisetFamily::new(universe.clone(), r, k)?;
        for (s, &w) in self.sets.into_iter().zip(&self.weights) {
            fam.push_weighted(s, w)?;
        }
        let keep = representative_selection(&fam)?;
        let mut links: Vec<Option<L>> = self.links.into_iter().map(Some).collect();
        let kept_links = keep
            .iter()
            .map(|&i| links[i].take().expect("each index kept once"))
            .collect();
        Ok(Cell {
            family: fam.select(&keep),
            links: kept_links,
        })
    }
}

struct Cell<L> {
    family: WeightedMultisetFamily,
    links: Vec<L>,
}
