//! CNF encoding of "an `r`-colouring of `[N]` avoids every monochromatic
//! non-trivial solution", and a thin adapter over an external SAT solver.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::Coloring;
use crate::error::{Error, Result};
use crate::systems::{enumerate_solutions, require_homogeneous, PolySystem};

pub const DEFAULT_CLAUSE_CAP: usize = 5_000_000;

fn var(n: u64, c: u32, r: u32) -> u64 {
    (n - 1) * r as u64 + c as u64
}

/// DIMACS text with `v(n, c) = (n-1)·r + c`. Clauses: one "some colour"
/// clause per `n`, then the pairwise "at most one colour" clauses, then for
/// each distinct support of a non-trivial solution (in order of first
/// appearance) one clause per colour forbidding it.
///
/// Refuses with `CapReached` if there are more than `cap` non-trivial
/// solutions, since a truncated instance could be satisfiable wrongly.
pub fn export_dimacs(sys: &PolySystem, n: u64, r: u32, cap: usize) -> Result<String> {
    require_homogeneous(sys)?;
    if n == 0 || r == 0 {
        return Err(Error::Domain("N and r must be positive".into()));
    }
    let sols = enumerate_solutions(sys, n, true, cap.saturating_add(1));
    if sols.len() > cap {
        return Err(Error::CapReached { cap });
    }
    let mut seen = HashSet::new();
    let supports: Vec<Vec<u64>> = sols
        .iter()
        .filter_map(|s| {
            let mut v = s.values().to_vec();
            v.sort_unstable();
            v.dedup();
            seen.insert(v.clone()).then_some(v)
        })
        .collect();

    let pairs = r as u64 * (r as u64 - 1) / 2;
    let clauses = n + n * pairs + supports.len() as u64 * r as u64;
    let mut out = format!("p cnf {} {}\n", n * r as u64, clauses);
    for x in 1..=n {
        for c in 1..=r {
            write!(out, "{} ", var(x, c, r)).unwrap();
        }
        out.push_str("0\n");
    }
    for x in 1..=n {
        for c in 1..=r {
            for d in c + 1..=r {
                writeln!(out, "-{} -{} 0", var(x, c, r), var(x, d, r)).unwrap();
            }
        }
    }
    for s in &supports {
        for c in 1..=r {
            for &x in s {
                write!(out, "-{} ", var(x, c, r)).unwrap();
            }
            out.push_str("0\n");
        }
    }
    Ok(out)
}

/// Reads a colouring back from a satisfying assignment given as DIMACS
/// literals.
pub fn decode_model(model: &[isize], n: u64, r: u32) -> Result<Coloring> {
    let truth: HashSet<isize> = model.iter().copied().filter(|&l| l > 0).collect();
    let colours = (1..=n)
        .map(|x| {
            (1..=r)
                .find(|&c| truth.contains(&(var(x, c, r) as isize)))
                .ok_or_else(|| Error::Domain(format!("model leaves {x} uncoloured")))
        })
        .collect::<Result<Vec<u32>>>()?;
    Coloring::new(r, colours)
}

/// Solves a DIMACS instance; returns the model as DIMACS literals when
/// satisfiable.
pub fn solve_dimacs(cnf: &str) -> Result<Option<Vec<isize>>> {
    let mut solver = varisat::Solver::new();
    solver
        .add_dimacs_cnf(cnf.as_bytes())
        .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    let sat = solver
        .solve()
        .map_err(|e| Error::Domain(format!("SAT solver failed: {e}")))?;
    Ok(sat.then(|| {
        solver
            .model()
            .unwrap_or_default()
            .iter()
            .map(|l| l.to_dimacs())
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramsey::{find_monochromatic_solution, search_avoiding_coloring, DEFAULT_NODE_LIMIT};

    #[test]
    fn schur_small() {
        let schur = PolySystem::schur();
        let cnf = export_dimacs(&schur, 2, 1, DEFAULT_CLAUSE_CAP).unwrap();
        assert_eq!(cnf, "p cnf 2 3\n1 0\n2 0\n-1 -2 0\n");
        assert_eq!(solve_dimacs(&cnf).unwrap(), None);

        let cnf = export_dimacs(&schur, 1, 3, DEFAULT_CLAUSE_CAP).unwrap();
        assert_eq!(cnf, "p cnf 3 4\n1 2 3 0\n-1 -2 0\n-1 -3 0\n-2 -3 0\n");
        assert!(solve_dimacs(&cnf).unwrap().is_some());
    }

    #[test]
    fn model_decodes_to_avoiding_coloring() {
        let schur = PolySystem::schur();
        let cnf = export_dimacs(&schur, 4, 2, DEFAULT_CLAUSE_CAP).unwrap();
        let model = solve_dimacs(&cnf).unwrap().unwrap();
        let chi = decode_model(&model, 4, 2).unwrap();
        assert_eq!(find_monochromatic_solution(&schur, &chi), None);
    }

    #[test]
    fn agrees_with_search() {
        for (sys, max_n) in [(PolySystem::schur(), 6), (PolySystem::brauer(), 10)] {
            for r in 1..=2 {
                for n in 1..=max_n {
                    let dfs = search_avoiding_coloring(&sys, n, r, DEFAULT_NODE_LIMIT).unwrap().coloring;
                    let sat = solve_dimacs(&export_dimacs(&sys, n, r, DEFAULT_CLAUSE_CAP).unwrap()).unwrap();
                    assert_eq!(dfs.is_some(), sat.is_some(), "r={r} N={n}");
                }
            }
        }
    }

    #[test]
    fn refuses_truncated_instance() {
        let err = export_dimacs(&PolySystem::schur(), 10, 2, 5).unwrap_err();
        assert_eq!(err, Error::CapReached { cap: 5 });
    }
}
