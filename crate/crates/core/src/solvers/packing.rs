//! (r,p,q)-packing: choose `p` sets from a family of `q`-sets so that no
//! element lies in more than `r` of them, minimizing total weight.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Candidates, Cell};
use crate::error::{param, Error, ParseError, Result};
use crate::multiset::{MultisetVector, WeightedUniverse};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamilyInstance {
    universe: WeightedUniverse,
    sets: Vec<Vec<usize>>,
    set_weights: Option<Vec<i64>>,
    q: usize,
    pub r: u32,
    pub p: usize,
}

impl SetFamilyInstance {
    /// Sets are 0-based element lists, each with exactly `q` distinct elements.
    pub fn new(
        universe: WeightedUniverse,
        sets: Vec<Vec<usize>>,
        set_weights: Option<Vec<i64>>,
        q: usize,
        r: u32,
        p: usize,
    ) -> Result<Self> {
        let n = universe.n();
        let mut clean = Vec::with_capacity(sets.len());
        for (idx, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.len() != q {
                return Err(param(format!(
                    "set {} has {} distinct elements, q={q}",
                    idx + 1,
                    s.len()
                )));
            }
            if s.last().is_some_and(|&x| x >= n) {
                return Err(param(format!(
                    "set {} leaves the universe 1..={n}",
                    idx + 1
                )));
            }
            clean.push(s);
        }
        if let Some(w) = &set_weights {
            if w.len() != clean.len() {
                return Err(param(format!(
                    "{} set weights for {} sets",
                    w.len(),
                    clean.len()
                )));
            }
        }
        Ok(SetFamilyInstance {
            universe,
            sets: clean,
            set_weights,
            q,
            r,
            p,
        })
    }

    pub fn universe(&self) -> &WeightedUniverse {
        &self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set_weights(&self) -> Option<&[i64]> {
        self.set_weights.as_deref()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Weight of set `j`: its own weight when set weights are present,
    /// otherwise the sum of its element weights.
    pub fn weight_of_set(&self, j: usize) -> i64 {
        match &self.set_weights {
            Some(w) => w[j],
            None => self.sets[j]
                .iter()
                .map(|&x| self.universe.weight_of(x))
                .sum(),
        }
    }

    pub fn with_params(mut self, r: u32, p: usize) -> Self {
        self.r = r;
        self.p = p;
        self
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// `setfam <n> <count> <q>`, optional `weights` and `setweights` lines, then
/// one set per line as 1-based elements. Element weights default to 1.
impl fmt::Display for SetFamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(
            f,
            "setfam {} {} {}",
            self.universe.n(),
            self.sets.len(),
            self.q
        )?;
        if self.universe.weights().iter().any(|&w| w != 1) {
            writeln!(f, "weights {}", join(self.universe.weights()))?;
        }
        if let Some(w) = &self.set_weights {
            writeln!(f, "setweights {}", join(w))?;
        }
        for s in &self.sets {
            let items: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
    .into()
}

fn ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in line.split(' ') {
        if !tok.is_empty() {
            out.push(tok.parse().map_err(|_| {
                syntax(lineno, pos + 1, format!("expected integer, found `{tok}`"))
            })?);
        }
        pos += tok.len() + 1;
    }
    Ok(out)
}

impl FromStr for SetFamilyInstance {
    type Err = Error;

    /// Parses with `r = 1` and `p = 1`; callers set the packing parameters.
    fn from_str(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        let &(hl, header) = lines.first().ok_or_else(|| syntax(1, 1, "empty input"))?;
        let rest = header
            .strip_prefix("setfam ")
            .ok_or_else(|| syntax(hl, 1, "expected `setfam <n> <count> <q>`"))?;
        let h = ints(rest, hl)?;
        if h.len() != 3 || h.iter().any(|&x| x < 0) {
            return Err(syntax(hl, 8, "expected `setfam <n> <count> <q>`"));
        }
        let (n, count, q) = (h[0] as usize, h[1] as usize, h[2] as usize);
        let mut weights = vec![1; n];
        let mut set_weights = None;
        let mut sets = Vec::with_capacity(count);
        for &(ln, line) in &lines[1..] {
            let keyword = |kw: &str| {
                line.strip_prefix(kw)
                    .filter(|rest| rest.is_empty() || rest.starts_with(' '))
            };
            if let Some(rest) = keyword("weights") {
                weights = ints(rest, ln)?;
                if weights.len() != n {
                    return Err(syntax(ln, 1, format!("expected {n} element weights")));
                }
            } else if let Some(rest) = keyword("setweights") {
                let w = ints(rest, ln)?;
                if w.len() != count {
                    return Err(syntax(ln, 1, format!("expected {count} set weights")));
                }
                set_weights = Some(w);
            } else {
                let row = ints(line, ln)?;
                if let Some(pos) = row.iter().position(|&x| x < 1 || x as usize > n) {
                    return Err(syntax(ln, pos + 1, format!("element outside 1..={n}")));
                }
                sets.push(row.iter().map(|&x| x as usize - 1).collect());
            }
        }
        if sets.len() != count {
            return Err(syntax(
                text.lines().count() + 1,
                1,
                format!("header announces {count} sets, found {}", sets.len()),
            ));
        }
        SetFamilyInstance::new(WeightedUniverse::new(weights), sets, set_weights, q, 1, 1).map_err(
            |e| match e {
                Error::Parameter(message) => ParseError::Invalid { line: hl, message }.into(),
                other => other,
            },
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingResult {
    pub found: bool,
    pub weight: Option<i64>,
    /// 0-based indices of the chosen sets, increasing.
    pub witness: Vec<usize>,
    pub layer_sizes: Vec<usize>,
}

/// Checks that `chosen` names `p` distinct sets covering no element more than `r` times.
pub fn validate_packing(inst: &SetFamilyInstance, chosen: &[usize]) -> bool {
    let mut sorted = chosen.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != inst.p || sorted.iter().any(|&j| j >= inst.sets.len()) {
        return false;
    }
    let mut count = vec![0u32; inst.universe.n()];
    for &j in &sorted {
        for &x in &inst.sets[j] {
            count[x] += 1;
        }
    }
    count.iter().all(|&c| c <= inst.r)
}

/// Gives every set a private element carrying the set's weight; the original
/// elements get weight 0 and `q` grows by one.
pub fn reduce_set_weighted_packing(inst: &SetFamilyInstance) -> Result<SetFamilyInstance> {
    let sw = inst
        .set_weights
        .as_ref()
        .ok_or_else(|| param("the set-weighted reduction needs set weights"))?;
    let n = inst.universe.n();
    let mut weights = vec![0; n];
    weights.extend_from_slice(sw);
    let sets = inst
        .sets
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let mut s = s.clone();
            s.push(n + j);
            s
        })
        .collect();
    SetFamilyInstance::new(
        WeightedUniverse::new(weights),
        sets,
        None,
        inst.q + 1,
        inst.r,
        inst.p,
    )
}

/// Solves the packing problem; set-weighted instances go through the reduction first.
pub fn solve_rpq_packing(inst: &SetFamilyInstance) -> Result<PackingResult> {
    if inst.p == 0 || inst.q == 0 || inst.r == 0 {
        return Err(param("p, q and r must be at least 1"));
    }
    if inst.set_weights.is_some() {
        return solve_rpq_packing(&reduce_set_weighted_packing(inst)?);
    }
    let (n, p, r) = (inst.universe.n(), inst.p, inst.r);
    let k = u32::try_from(p * inst.q).map_err(|_| param("p*q too large"))?;
    let sets: Vec<MultisetVector> = inst
        .sets
        .iter()
        .map(|s| MultisetVector::indicator(n, r, s))
        .collect::<Result<_>>()?;
    let weights: Vec<i64> = (0..sets.len()).map(|j| inst.weight_of_set(j)).collect();
    let universe = &inst.universe;

    // cells[i][j]: packings of i+1 sets whose largest index is j.
    // Links are (previous last index, entry index); usize::MAX marks the first set.
    let mut cells: Vec<Vec<Cell<(usize, usize)>>> = Vec::with_capacity(p);
    let mut first = Vec::with_capacity(sets.len());
    for (j, s) in sets.iter().enumerate() {
        let mut c = Candidates::new();
        if s.size() <= k {
            c.offer(s.clone(), weights[j], (usize::MAX, 0));
        }
        first.push(c.into_representative(universe, r, k)?);
    }
    cells.push(first);
    for _ in 1..p {
        let prev = cells.last().expect("nonempty");
        let mut next = Vec::with_capacity(sets.len());
        for (j2, s) in sets.iter().enumerate() {
            let mut c = Candidates::new();
            for (j, cell) in prev.iter().enumerate().take(j2) {
                for (idx, e) in cell.family.entries().iter().enumerate() {
                    if let Some(sum) = e.set.add_consistent(s, k) {
                        c.offer(sum, e.weight + weights[j2], (j, idx));
                    }
                }
            }
            next.push(c.into_representative(universe, r, k)?);
        }
        cells.push(next);
    }
    let layer_sizes = cells
        .iter()
        .map(|row| row.iter().map(|c| c.family.len()).sum())
        .collect();
    let mut best: Option<(i64, usize, usize)> = None;
    for (j, cell) in cells[p - 1].iter().enumerate() {
        for (idx, e) in cell.family.entries().iter().enumerate() {
            if best.is_none_or(|(w, _, _)| e.weight < w) {
                best = Some((e.weight, j, idx));
            }
        }
    }
    let Some((weight, mut j, mut idx)) = best else {
        return Ok(PackingResult {
            found: false,
            weight: None,
            witness: Vec::new(),
            layer_sizes,
        });
    };
    let mut witness = Vec::with_capacity(p);
    for layer in cells.iter().rev() {
        witness.push(j);
        let (pj, pidx) = layer[j].links[idx];
        j = pj;
        idx = pidx;
    }
    witness.reverse();
    Ok(PackingResult {
        found: true,
        weight: Some(weight),
        witness,
        layer_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(r: u32, p: usize) -> SetFamilyInstance {
        SetFamilyInstance::new(
            WeightedUniverse::uniform(3, 1),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]],
            None,
            2,
            r,
            p,
        )
        .unwrap()
    }

    #[test]
    fn triangle_examples() {
        let res = solve_rpq_packing(&triangle(2, 3)).unwrap();
        assert!(res.found);
        assert_eq!(res.witness, vec![0, 1, 2]);
        assert_eq!(res.weight, Some(6));
        assert!(!solve_rpq_packing(&triangle(1, 2)).unwrap().found);
        // Reusing one set is not a packing.
        assert!(!solve_rpq_packing(&triangle(2, 4)).unwrap().found);
    }

    #[test]
    fn set_weighted_reduction() {
        let one = SetFamilyInstance::new(
            WeightedUniverse::uniform(2, 1),
            vec![vec![0, 1]],
            Some(vec![7]),
            2,
            1,
            1,
        )
        .unwrap();
        let red = reduce_set_weighted_packing(&one).unwrap();
        assert_eq!(red.sets(), &[vec![0, 1, 2]]);
        assert_eq!(red.universe().weights(), &[0, 0, 7]);
        assert_eq!(red.q(), 3);

        let two = SetFamilyInstance::new(
            WeightedUniverse::uniform(4, 1),
            vec![vec![0, 1], vec![2, 3]],
            Some(vec![2, 3]),
            2,
            1,
            2,
        )
        .unwrap();
        let res = solve_rpq_packing(&two).unwrap();
        assert_eq!((res.found, res.weight), (true, Some(5)));
        assert!(validate_packing(&two, &res.witness));
    }

    #[test]
    fn text_round_trip() {
        let text = "setfam 3 3 2\n1 2\n1 3\n2 3\n";
        let inst: SetFamilyInstance = text.parse().unwrap();
        assert_eq!(inst, triangle(1, 1));
        assert_eq!(inst.to_text(), text);
        let text = "setfam 3 2 1\nweights 0 2 -1\nsetweights 4 5\n1\n3\n";
        let inst: SetFamilyInstance = text.parse().unwrap();
        assert_eq!(inst.to_text(), text);
        assert!("setfam 3 1 2\n1 1\n".parse::<SetFamilyInstance>().is_err());
        assert!("setfam 3 2 2\n1 2\n".parse::<SetFamilyInstance>().is_err());
        assert!("setfam 3 1 2\n1 4\n".parse::<SetFamilyInstance>().is_err());
    }
}
