//! Colourings of `[N]`, monochromatic solutions, and Rado/Brauer numbers.
//!
//! The search assigns colours to `1, 2, ..., N` in order, smallest colour
//! first, and only ever opens one new colour at a time (so `χ(1) = 1`).
//! The first avoiding colouring reached is therefore the lexicographically
//! least one. Each assignment is checked against the solutions whose
//! largest entry is the value just coloured, so a conflict is detected the
//! moment it becomes unavoidable.

mod dimacs;

use std::cell::Cell;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

pub use dimacs::{decode_model, export_dimacs, solve_dimacs, DEFAULT_CLAUSE_CAP};

use crate::error::{Error, Result};
use crate::syndetic::{is_f_syndetic_window, FiniteSet, SyndeticityReport, Window};
use crate::systems::{self, require_homogeneous, Assignment, Compiled, PolySystem};

/// Default node budget for one exhaustive search.
pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000_000;

/// Cap on the number of solutions enumerated per component when building a
/// search instance.
pub const DEFAULT_SOLUTION_CAP: usize = 20_000_000;

/// `χ: [N] -> [r]`, stored as `colours[i] = χ(i + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring {
    r: u32,
    colours: Vec<u32>,
}

impl Coloring {
    pub fn new(r: u32, colours: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("a colouring needs at least one colour".into()));
        }
        if colours.is_empty() {
            return Err(Error::Domain("a colouring needs N >= 1".into()));
        }
        if let Some(bad) = colours.iter().find(|&&c| c == 0 || c > r) {
            return Err(Error::Domain(format!("colour {bad} outside 1..={r}")));
        }
        Ok(Coloring { r, colours })
    }

    /// Colour class `i` (0-based) is `classes[i]`; every element of `[N]`
    /// must appear in exactly one class.
    pub fn from_classes(n: u64, classes: &[&[u64]]) -> Result<Self> {
        let mut colours = vec![0u32; n as usize];
        for (i, class) in classes.iter().enumerate() {
            for &x in *class {
                if x == 0 || x > n {
                    return Err(Error::Domain(format!("{x} outside [1, {n}]")));
                }
                if colours[(x - 1) as usize] != 0 {
                    return Err(Error::Domain(format!("{x} appears in two classes")));
                }
                colours[(x - 1) as usize] = i as u32 + 1;
            }
        }
        if let Some(i) = colours.iter().position(|&c| c == 0) {
            return Err(Error::Domain(format!("{} is uncoloured", i + 1)));
        }
        Coloring::new(classes.len() as u32, colours)
    }

    pub fn n(&self) -> u64 {
        self.colours.len() as u64
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn colour(&self, x: u64) -> u32 {
        self.colours[(x - 1) as usize]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn class(&self, c: u32) -> Vec<u64> {
        (1..=self.n()).filter(|&x| self.colour(x) == c).collect()
    }

    pub fn restricted(&self, m: u64) -> Coloring {
        Coloring {
            r: self.r,
            colours: self.colours[..m as usize].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RadoResult {
    /// Every colouring of `[n]` has a monochromatic non-trivial solution;
    /// `witness` avoids them on `[n - 1]`.
    Found {
        n: u64,
        exhaustion_proof: bool,
        witness: Coloring,
        nodes: u64,
    },
    /// An avoiding colouring of `[n_max]` exists.
    NotFoundUpTo { n_max: u64, witness: Coloring, nodes: u64 },
}

impl RadoResult {
    pub fn found(&self) -> Option<u64> {
        match self {
            RadoResult::Found { n, .. } => Some(*n),
            RadoResult::NotFoundUpTo { .. } => None,
        }
    }

    pub fn witness(&self) -> &Coloring {
        match self {
            RadoResult::Found { witness, .. } | RadoResult::NotFoundUpTo { witness, .. } => witness,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            RadoResult::Found { nodes, .. } | RadoResult::NotFoundUpTo { nodes, .. } => *nodes,
        }
    }
}

/// Lexicographically least non-trivial solution in `[N]^s` whose entries
/// all share one colour.
pub fn find_monochromatic_solution(sys: &PolySystem, chi: &Coloring) -> Option<Assignment> {
    let solver = Compiled::new(sys);
    let first = Cell::new(0u32);
    let allowed = |d: usize, v: u64| {
        let c = chi.colour(v);
        if d == 0 {
            first.set(c);
            true
        } else {
            c == first.get()
        }
    };
    let mut found = None;
    solver.for_each(chi.n(), &allowed, &mut |x| {
        let a = Assignment::new(x.to_vec()).expect("solver yields positive entries");
        if systems::is_nontrivial(&a) {
            found = Some(a);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Incremental conflict detection used by the colouring search.
trait Propagator {
    /// Called after `colours[n]` has been set to `c`; returns false if a
    /// monochromatic solution in colour `c` now exists.
    fn push(&mut self, n: usize, c: u32, colours: &[u32]) -> bool;
    /// Undoes the matching `push`.
    fn pop(&mut self, n: usize, c: u32, colours: &[u32]);
}

/// Solutions of one connected block of variables, reduced to the sets of
/// distinct values they use.
struct Block {
    /// `by_max[m]`: supports of non-trivial solutions whose largest value is `m`.
    by_max: Vec<Vec<Box<[u32]>>>,
    /// `trivial[v]`: `(v, ..., v)` solves the block.
    trivial: Vec<bool>,
}

/// Generic propagator over the blocks of an arbitrary homogeneous system.
///
/// A monochromatic non-trivial solution of the whole system in colour `c`
/// exists iff every block has a solution in colour `c` and the chosen
/// block solutions are not all one constant: either some block has a
/// non-trivial solution in `c`, or there are at least two blocks and at
/// least two distinct values of colour `c` that are constant solutions of
/// some block.
struct SystemPropagator {
    blocks: Vec<Block>,
    /// `[colour][block]` number of monochromatic non-trivial supports.
    nontrivial: Vec<Vec<u32>>,
    /// `[colour][block]` number of constant solutions of that colour.
    constant: Vec<Vec<u32>>,
    /// `[colour]` number of values that are a constant solution of some block.
    constant_values: Vec<u32>,
}

impl SystemPropagator {
    fn new(sys: &PolySystem, n: u64, r: u32, cap: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for (_, sub) in sys.components() {
            let mut by_max: Vec<Vec<Box<[u32]>>> = vec![Vec::new(); n as usize + 1];
            let mut trivial = vec![false; n as usize + 1];
            match sub {
                None => trivial[1..].iter_mut().for_each(|t| *t = true),
                Some(sub) => {
                    let solver = Compiled::new(&sub);
                    let mut count = 0usize;
                    let mut seen = std::collections::HashSet::new();
                    solver.for_each(n, &|_, _| true, &mut |x| {
                        count += 1;
                        if count > cap {
                            return ControlFlow::Break(());
                        }
                        let mut vals: Vec<u32> = x.iter().map(|&v| v as u32).collect();
                        vals.sort_unstable();
                        vals.dedup();
                        if vals.len() == 1 {
                            trivial[vals[0] as usize] = true;
                        } else if seen.insert(vals.clone()) {
                            let m = *vals.last().unwrap() as usize;
                            by_max[m].push(vals.into_boxed_slice());
                        }
                        ControlFlow::Continue(())
                    });
                    if count > cap {
                        return Err(Error::CapReached { cap });
                    }
                }
            }
            blocks.push(Block { by_max, trivial });
        }
        let k = blocks.len();
        Ok(SystemPropagator {
            blocks,
            nontrivial: vec![vec![0; k]; r as usize + 1],
            constant: vec![vec![0; k]; r as usize + 1],
            constant_values: vec![0; r as usize + 1],
        })
    }

    fn violated(&self, c: u32) -> bool {
        let c = c as usize;
        let k = self.blocks.len();
        let mut any_nontrivial = false;
        for b in 0..k {
            let nt = self.nontrivial[c][b] > 0;
            if !nt && self.constant[c][b] == 0 {
                return false;
            }
            any_nontrivial |= nt;
        }
        any_nontrivial || (k >= 2 && self.constant_values[c] >= 2)
    }

    fn update(&mut self, n: usize, c: u32, colours: &[u32], delta: i32) {
        let ci = c as usize;
        let mut is_constant = false;
        for (b, block) in self.blocks.iter().enumerate() {
            let hits = block.by_max[n]
                .iter()
                .filter(|s| s.iter().all(|&v| colours[v as usize] == c))
                .count() as i32;
            self.nontrivial[ci][b] = (self.nontrivial[ci][b] as i32 + delta * hits) as u32;
            if block.trivial[n] {
                is_constant = true;
                self.constant[ci][b] = (self.constant[ci][b] as i32 + delta) as u32;
            }
        }
        if is_constant {
            self.constant_values[ci] = (self.constant_values[ci] as i32 + delta) as u32;
        }
    }
}

impl Propagator for SystemPropagator {
    fn push(&mut self, n: usize, c: u32, colours: &[u32]) -> bool {
        self.update(n, c, colours, 1);
        !self.violated(c)
    }

    fn pop(&mut self, n: usize, c: u32, colours: &[u32]) {
        self.update(n, c, colours, -1);
    }
}

/// Checks `{x, d, x+d, x+2d}` with `x + 2d = n`, the only configurations
/// completed by colouring `n`.
struct BrauerPropagator;

impl Propagator for BrauerPropagator {
    fn push(&mut self, n: usize, c: u32, colours: &[u32]) -> bool {
        (1..=(n - 1) / 2).all(|d| {
            let x = n - 2 * d;
            !(colours[x] == c && colours[d] == c && colours[x + d] == c)
        })
    }

    fn pop(&mut self, _: usize, _: u32, _: &[u32]) {}
}

struct Dfs<'a, P> {
    prop: &'a mut P,
    colours: Vec<u32>,
    n: usize,
    r: u32,
    nodes: u64,
    limit: u64,
}

impl<P: Propagator> Dfs<'_, P> {
    fn run(&mut self, at: usize, used: u32) -> Result<bool> {
        if at > self.n {
            return Ok(true);
        }
        for c in 1..=self.r.min(used + 1) {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::SearchLimit {
                    nodes: self.nodes,
                    limit: self.limit,
                });
            }
            self.colours[at] = c;
            if self.prop.push(at, c, &self.colours) {
                if self.run(at + 1, used.max(c))? {
                    return Ok(true);
                }
            }
            self.prop.pop(at, c, &self.colours);
            self.colours[at] = 0;
        }
        Ok(false)
    }
}

fn dfs<P: Propagator>(prop: &mut P, n: u64, r: u32, limit: u64) -> Result<(Option<Coloring>, u64)> {
    let mut d = Dfs {
        prop,
        colours: vec![0; n as usize + 1],
        n: n as usize,
        r,
        nodes: 0,
        limit,
    };
    let ok = d.run(1, 0)?;
    let nodes = d.nodes;
    let found = ok.then(|| Coloring::new(r, d.colours[1..].to_vec()).expect("search assigns every value"));
    Ok((found, nodes))
}

/// Search outcome with the number of colour assignments tried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub coloring: Option<Coloring>,
    pub nodes: u64,
}

/// Lexicographically least colouring of `[N]` with `r` colours and no
/// monochromatic non-trivial solution, if one exists.
pub fn search_avoiding_coloring(sys: &PolySystem, n: u64, r: u32, node_limit: u64) -> Result<SearchOutcome> {
    require_homogeneous(sys)?;
    if n == 0 || r == 0 {
        return Err(Error::Domain("N and r must be positive".into()));
    }
    let mut prop = SystemPropagator::new(sys, n, r, DEFAULT_SOLUTION_CAP)?;
    let (coloring, nodes) = dfs(&mut prop, n, r, node_limit)?;
    Ok(SearchOutcome { coloring, nodes })
}

fn brauer_search(n: u64, r: u32, node_limit: u64) -> Result<SearchOutcome> {
    let (coloring, nodes) = dfs(&mut BrauerPropagator, n, r, node_limit)?;
    Ok(SearchOutcome { coloring, nodes })
}

fn least_unavoidable(
    n_max: u64,
    mut search: impl FnMut(u64, u64) -> Result<SearchOutcome>,
    node_limit: u64,
) -> Result<RadoResult> {
    if n_max == 0 {
        return Err(Error::Domain("N_max must be positive".into()));
    }
    let mut nodes = 0u64;
    let mut last: Option<Coloring> = None;
    for n in 1..=n_max {
        let out = search(n, node_limit.saturating_sub(nodes)).map_err(|e| match e {
            Error::SearchLimit { nodes: used, .. } => Error::SearchLimit {
                nodes: nodes + used,
                limit: node_limit,
            },
            e => e,
        })?;
        nodes += out.nodes;
        match out.coloring {
            Some(c) => last = Some(c),
            None => {
                let witness = last.ok_or_else(|| {
                    Error::Precondition("every colouring of [1] already has a monochromatic solution".into())
                })?;
                return Ok(RadoResult::Found {
                    n,
                    exhaustion_proof: true,
                    witness,
                    nodes,
                });
            }
        }
    }
    Ok(RadoResult::NotFoundUpTo {
        n_max,
        witness: last.expect("n_max >= 1"),
        nodes,
    })
}

/// The `r`-colour Rado number of `sys`, searched up to `n_max`.
pub fn rado_number(sys: &PolySystem, r: u32, n_max: u64, node_limit: u64) -> Result<RadoResult> {
    require_homogeneous(sys)?;
    least_unavoidable(n_max, |n, lim| search_avoiding_coloring(sys, n, r, lim), node_limit)
}

/// `B(r)`: the Rado number of `{x, d, x+d, x+2d}`, using a propagator that
/// checks only the configurations closed by the value just coloured.
pub fn brauer_number(r: u32, n_max: u64, node_limit: u64) -> Result<RadoResult> {
    if r == 0 {
        return Err(Error::Domain("r must be positive".into()));
    }
    least_unavoidable(n_max, |n, lim| brauer_search(n, r, lim), node_limit)
}

/// For a colouring with no monochromatic solution, reports whether each
/// colour class is `F`-syndetic on the window. A class with `max(F) > N`
/// has no in-window dilate and is reported vacuously syndetic with
/// `checked_up_to = 0`.
pub fn verify_induction_on_colours(
    sys: &PolySystem,
    chi: &Coloring,
    f: &FiniteSet,
) -> Result<Vec<SyndeticityReport>> {
    if let Some(x) = find_monochromatic_solution(sys, chi) {
        return Err(Error::Precondition(format!(
            "colouring has monochromatic solution {:?} in colour {}",
            x.values(),
            chi.colour(x.values()[0])
        )));
    }
    (1..=chi.r())
        .map(|c| {
            if f.max_element() > chi.n() {
                return Ok(SyndeticityReport {
                    is_window_syndetic: true,
                    first_failure: None,
                    checked_up_to: 0,
                });
            }
            let class = Window::from_fn(chi.n(), |x| chi.colour(x) == c)?;
            is_f_syndetic_window(&class, f)
        })
        .collect()
}
