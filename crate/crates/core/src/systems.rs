//! Finite systems of polynomial equations with rational coefficients.
//!
//! A [`PolySystem`] holds `s` variables `t1..ts` and a non-empty list of
//! polynomials, each implicitly set equal to zero. Solutions are vectors of
//! positive integers ([`Assignment`]). Everything here is exact: coefficients
//! are arbitrary-precision rationals and evaluation never rounds.
//!
//! The enumerator used by the Ramsey search lives here as well. It walks the
//! variables in order and, whenever a polynomial becomes linear in the
//! variable being assigned, solves for it instead of scanning `[N]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `coefficient * t1^e1 * ... * ts^es`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coefficient: Rational,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(coefficient: Rational, exponents: Vec<u32>) -> Self {
        Monomial {
            coefficient,
            exponents,
        }
    }

    /// Convenience constructor for integer coefficients.
    pub fn int(coefficient: i64, exponents: &[u32]) -> Self {
        Monomial::new(Rational::from_integer(coefficient.into()), exponents.to_vec())
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// A polynomial with like terms combined, no zero coefficients, and terms
/// sorted by exponent vector in descending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(num_vars: usize, terms: Vec<Monomial>) -> Result<Self> {
        let mut combined: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for m in terms {
            if m.exponents.len() != num_vars {
                return Err(Error::Dimension {
                    expected: num_vars,
                    got: m.exponents.len(),
                });
            }
            let slot = combined.entry(m.exponents).or_insert_with(Rational::zero);
            *slot += m.coefficient;
        }
        let terms: Vec<Monomial> = combined
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| Monomial::new(c, e))
            .collect();
        Ok(Polynomial { num_vars, terms })
    }

    /// Builds `sum_i coeffs[i] * t_{i+1}`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                Monomial::int(*c, &e)
            })
            .collect();
        Polynomial::new(n, terms).expect("exponent vectors have the declared length")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degrees of the terms, deduplicated and ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.iter().map(Monomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Highest variable index (0-based) that occurs with a positive exponent.
    fn max_var(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|m| m.exponents.iter().rposition(|&e| e > 0))
            .max()
    }

    fn shifted(&self, offset: usize, total: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|m| {
                let mut e = vec![0; total];
                e[offset..offset + self.num_vars].copy_from_slice(&m.exponents);
                Monomial::new(m.coefficient.clone(), e)
            })
            .collect();
        Polynomial {
            num_vars: total,
            terms,
        }
    }
}

/// A solution candidate: positive integers, one per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<u64>);

impl Assignment {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.iter().any(|&v| v == 0) {
            return Err(Error::Domain("assignment entries must be >= 1".into()));
        }
        Ok(Assignment(values))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_entry(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn scaled(&self, lambda: u64) -> Assignment {
        Assignment(self.0.iter().map(|v| v * lambda).collect())
    }
}

impl From<Assignment> for Vec<u64> {
    fn from(a: Assignment) -> Self {
        a.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariance {
    /// Common total degree of each polynomial, in order.
    Homogeneous(Vec<u32>),
    /// Index of the first polynomial mixing total degrees.
    NotHomogeneous(usize),
}

impl Invariance {
    pub fn is_homogeneous(&self) -> bool {
        matches!(self, Invariance::Homogeneous(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySystem {
    num_vars: usize,
    polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(num_vars: usize, polys: Vec<Polynomial>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Domain("a system needs at least one variable".into()));
        }
        if polys.is_empty() {
            return Err(Error::Domain("a system needs at least one polynomial".into()));
        }
        for (i, p) in polys.iter().enumerate() {
            if p.num_vars != num_vars {
                return Err(Error::Dimension {
                    expected: num_vars,
                    got: p.num_vars,
                });
            }
            if p.is_zero() {
                return Err(Error::Domain(format!("polynomial {i} is identically zero")));
            }
        }
        Ok(PolySystem { num_vars, polys })
    }

    /// Schur's equation `t1 + t2 - t3 = 0`.
    pub fn schur() -> Self {
        PolySystem::new(3, vec![Polynomial::linear(&[1, 1, -1])]).unwrap()
    }

    /// The Brauer configuration `{x, d, x+d, x+2d}` with variable order
    /// `(x, d, x+d, x+2d)`: `t1 + t2 - t3 = 0`, `t1 + 2 t2 - t4 = 0`.
    pub fn brauer() -> Self {
        PolySystem::new(
            4,
            vec![
                Polynomial::linear(&[1, 1, -1, 0]),
                Polynomial::linear(&[1, 2, 0, -1]),
            ],
        )
        .unwrap()
    }

    /// Three-term progressions `t1 - 2 t2 + t3 = 0`.
    pub fn ap3() -> Self {
        PolySystem::new(3, vec![Polynomial::linear(&[1, -2, 1])]).unwrap()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Splits the variables into classes linked by shared polynomials.
    /// Each returned entry is the sorted list of variable indices together
    /// with the sub-system on those variables (renumbered), or `None` for a
    /// variable that occurs in no polynomial.
    pub(crate) fn components(&self) -> Vec<(Vec<usize>, Option<PolySystem>)> {
        let mut parent: Vec<usize> = (0..self.num_vars).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let mut used = vec![false; self.num_vars];
        for poly in &self.polys {
            let vars: Vec<usize> = (0..self.num_vars)
                .filter(|&v| poly.terms.iter().any(|m| m.exponents[v] > 0))
                .collect();
            for &v in &vars {
                used[v] = true;
            }
            for w in vars.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.num_vars {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups
            .into_values()
            .map(|vars| {
                if vars.len() == 1 && !used[vars[0]] {
                    return (vars, None);
                }
                let polys: Vec<Polynomial> = self
                    .polys
                    .iter()
                    .filter(|p| {
                        p.terms
                            .iter()
                            .any(|m| vars.iter().any(|&v| m.exponents[v] > 0))
                    })
                    .map(|p| {
                        let terms = p
                            .terms
                            .iter()
                            .map(|m| {
                                Monomial::new(
                                    m.coefficient.clone(),
                                    vars.iter().map(|&v| m.exponents[v]).collect(),
                                )
                            })
                            .collect();
                        Polynomial::new(vars.len(), terms).unwrap()
                    })
                    .collect();
                let sub = PolySystem::new(vars.len(), polys).ok();
                (vars, sub)
            })
            .collect()
    }

    /// Serializes to the line format: a `vars: s` header, then one
    /// polynomial per line with every exponent written out.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.num_vars);
        for p in &self.polys {
            let line: Vec<String> = p
                .terms
                .iter()
                .map(|m| {
                    let mut s = m.coefficient.to_string();
                    for (i, e) in m.exponents.iter().enumerate() {
                        let _ = write!(s, "*t{}^{}", i + 1, e);
                    }
                    s
                })
                .collect();
            out.push_str(&line.join(" + "));
            out.push('\n');
        }
        out
    }

    /// Parses the line format. `#` starts a comment; blank lines are
    /// ignored; a factor `t3` without exponent means `t3^1`, omitted
    /// variables have exponent 0, and `-` may separate terms.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut num_vars: Option<usize> = None;
        let mut polys = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            match num_vars {
                None => {
                    let rest = line
                        .strip_prefix("vars:")
                        .ok_or_else(|| perr("expected header `vars: s`".into()))?;
                    let s: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| perr(format!("bad variable count `{}`", rest.trim())))?;
                    num_vars = Some(s);
                }
                Some(s) => {
                    let terms = parse_terms(line, s).map_err(perr)?;
                    let poly = Polynomial::new(s, terms).map_err(|e| perr(e.to_string()))?;
                    polys.push(poly);
                }
            }
        }
        let s = num_vars.ok_or(Error::Parse {
            line: 0,
            msg: "missing `vars:` header".into(),
        })?;
        PolySystem::new(s, polys)
    }

    /// Hex SHA-256 prefix of the canonical text, used to key ledger records.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn split_terms(line: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut prev_sig: Option<char> = None;
    for ch in line.chars() {
        if ch.is_whitespace() {
            continue;
        }
        let starts_term = matches!(ch, '+' | '-')
            && !matches!(prev_sig, None | Some('+') | Some('-') | Some('*') | Some('^') | Some('/'));
        if starts_term {
            terms.push(std::mem::take(&mut cur));
            if ch == '-' {
                cur.push('-');
            }
        } else if ch != '+' {
            cur.push(ch);
        }
        prev_sig = Some(ch);
    }
    terms.push(cur);
    terms
}

fn parse_rational(tok: &str) -> Option<Rational> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn parse_terms(line: &str, num_vars: usize) -> std::result::Result<Vec<Monomial>, String> {
    let mut out = Vec::new();
    for term in split_terms(line) {
        if term.is_empty() {
            return Err("empty term".into());
        }
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; num_vars];
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) if rest.starts_with('t') => (-1, rest),
            _ => (1, term.as_str()),
        };
        for factor in body.split('*') {
            if let Some(var) = factor.strip_prefix('t') {
                let (idx, exp) = match var.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
                    None => (var, 1),
                };
                let idx: usize = idx.parse().map_err(|_| format!("bad variable `{factor}`"))?;
                if idx == 0 || idx > num_vars {
                    return Err(format!("variable t{idx} outside t1..t{num_vars}"));
                }
                exps[idx - 1] += exp;
            } else {
                let c = parse_rational(factor).ok_or_else(|| format!("bad coefficient `{factor}`"))?;
                coeff *= c;
            }
        }
        if sign < 0 {
            coeff = -coeff;
        }
        out.push(Monomial::new(coeff, exps));
    }
    Ok(out)
}

/// Exact value of `poly` at `x`.
pub fn eval_poly(poly: &Polynomial, x: &Assignment) -> Result<Rational> {
    if x.len() != poly.num_vars {
        return Err(Error::Dimension {
            expected: poly.num_vars,
            got: x.len(),
        });
    }
    let mut acc = Rational::zero();
    for m in &poly.terms {
        let mut v = m.coefficient.clone();
        for (xi, &e) in x.values().iter().zip(&m.exponents) {
            if e > 0 {
                v *= Rational::from_integer(num_traits::pow(BigInt::from(*xi), e as usize));
            }
        }
        acc += v;
    }
    Ok(acc)
}

pub fn is_solution(sys: &PolySystem, x: &Assignment) -> Result<bool> {
    for p in &sys.polys {
        if !eval_poly(p, x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff some two entries differ.
pub fn is_nontrivial(x: &Assignment) -> bool {
    x.values().windows(2).any(|w| w[0] != w[1])
}

pub fn check_dilation_invariance(sys: &PolySystem) -> Invariance {
    let mut degs = Vec::with_capacity(sys.polys.len());
    for (i, p) in sys.polys.iter().enumerate() {
        match p.degrees().as_slice() {
            [d] => degs.push(*d),
            _ => return Invariance::NotHomogeneous(i),
        }
    }
    Invariance::Homogeneous(degs)
}

pub(crate) fn require_homogeneous(sys: &PolySystem) -> Result<Vec<u32>> {
    match check_dilation_invariance(sys) {
        Invariance::Homogeneous(d) => Ok(d),
        Invariance::NotHomogeneous(index) => Err(Error::NotHomogeneous { index }),
    }
}

/// Disjoint union of systems: variables of the k-th input are shifted past
/// those of the earlier inputs.
pub fn product_system(systems: &[PolySystem]) -> Result<PolySystem> {
    if systems.is_empty() {
        return Err(Error::Domain("product of zero systems".into()));
    }
    for s in systems {
        require_homogeneous(s)?;
    }
    let total: usize = systems.iter().map(|s| s.num_vars).sum();
    let mut polys = Vec::new();
    let mut offset = 0;
    for s in systems {
        polys.extend(s.polys.iter().map(|p| p.shifted(offset, total)));
        offset += s.num_vars;
    }
    PolySystem::new(total, polys)
}

/// All solutions in `[N]^s`, lexicographic, truncated at `cap`.
pub fn enumerate_solutions(
    sys: &PolySystem,
    n: u64,
    require_nontrivial: bool,
    cap: usize,
) -> Vec<Assignment> {
    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    let solver = Compiled::new(sys);
    solver.for_each(n, &|_, _| true, &mut |vals| {
        let a = Assignment(vals.to_vec());
        if !require_nontrivial || is_nontrivial(&a) {
            out.push(a);
            if out.len() >= cap {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    out
}

/// Integer-scaled polynomial specialised for repeated evaluation.
#[derive(Debug, Clone)]
struct IntPoly {
    terms: Vec<(BigInt, Option<i128>, Vec<u32>)>,
}

impl IntPoly {
    fn from_poly(p: &Polynomial) -> Self {
        let lcm = p
            .terms
            .iter()
            .fold(BigInt::one(), |acc, m| acc.lcm(m.coefficient.denom()));
        let terms = p
            .terms
            .iter()
            .map(|m| {
                let c = (m.coefficient.clone() * Rational::from_integer(lcm.clone())).to_integer();
                let small = c.to_i128();
                (c, small, m.exponents.clone())
            })
            .collect();
        IntPoly { terms }
    }

    fn eval_i128(&self, x: &[u64], pick: impl Fn(&[u32]) -> bool, strip: Option<usize>) -> Option<i128> {
        let mut acc: i128 = 0;
        for (_, small, e) in &self.terms {
            if !pick(e) {
                continue;
            }
            let mut v = (*small)?;
            for (i, &k) in e.iter().enumerate() {
                let k = if Some(i) == strip { k - 1 } else { k };
                for _ in 0..k {
                    v = v.checked_mul(x[i] as i128)?;
                }
            }
            acc = acc.checked_add(v)?;
        }
        Some(acc)
    }

    fn eval_big(&self, x: &[u64], pick: impl Fn(&[u32]) -> bool, strip: Option<usize>) -> BigInt {
        let mut acc = BigInt::zero();
        for (c, _, e) in &self.terms {
            if !pick(e) {
                continue;
            }
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let k = if Some(i) == strip { k - 1 } else { k };
                if k > 0 {
                    v *= num_traits::pow(BigInt::from(x[i]), k as usize);
                }
            }
            acc += v;
        }
        acc
    }

    fn eval(&self, x: &[u64], pick: impl Fn(&[u32]) -> bool + Copy, strip: Option<usize>) -> BigInt {
        match self.eval_i128(x, pick, strip) {
            Some(v) => BigInt::from(v),
            None => self.eval_big(x, pick, strip),
        }
    }

    fn is_zero_at(&self, x: &[u64]) -> bool {
        match self.eval_i128(x, |_| true, None) {
            Some(v) => v == 0,
            None => self.eval_big(x, |_| true, None).is_zero(),
        }
    }
}

/// Depth-first solution enumerator. Polynomials are checked as soon as
/// their highest variable is assigned; a polynomial that is linear in that
/// variable determines it directly.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    num_vars: usize,
    polys: Vec<IntPoly>,
    at_depth: Vec<Vec<usize>>,
    solve_with: Vec<Option<usize>>,
    inconsistent: bool,
}

impl Compiled {
    pub(crate) fn new(sys: &PolySystem) -> Self {
        let polys: Vec<IntPoly> = sys.polys.iter().map(IntPoly::from_poly).collect();
        let mut at_depth = vec![Vec::new(); sys.num_vars];
        let mut inconsistent = false;
        for (i, p) in sys.polys.iter().enumerate() {
            match p.max_var() {
                Some(d) => at_depth[d].push(i),
                None => inconsistent = true,
            }
        }
        let solve_with = (0..sys.num_vars)
            .map(|d| {
                at_depth[d]
                    .iter()
                    .copied()
                    .find(|&i| sys.polys[i].terms.iter().all(|m| m.exponents[d] <= 1))
            })
            .collect();
        Compiled {
            num_vars: sys.num_vars,
            polys,
            at_depth,
            solve_with,
            inconsistent,
        }
    }

    /// Visits every solution in `[n]^s` whose entries pass `allowed`, in
    /// lexicographic order.
    pub(crate) fn for_each(
        &self,
        n: u64,
        allowed: &dyn Fn(usize, u64) -> bool,
        visit: &mut dyn FnMut(&[u64]) -> ControlFlow<()>,
    ) {
        if self.inconsistent || n == 0 {
            return;
        }
        let mut x = vec![0u64; self.num_vars];
        let _ = self.descend(0, n, &mut x, allowed, visit);
    }

    fn depth_ok(&self, d: usize, x: &[u64]) -> bool {
        self.at_depth[d].iter().all(|&i| self.polys[i].is_zero_at(x))
    }

    fn descend(
        &self,
        d: usize,
        n: u64,
        x: &mut [u64],
        allowed: &dyn Fn(usize, u64) -> bool,
        visit: &mut dyn FnMut(&[u64]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if d == self.num_vars {
            return visit(x);
        }
        if let Some(pi) = self.solve_with[d] {
            let p = &self.polys[pi];
            x[d] = 0;
            let coef = p.eval(x, |e| e[d] == 1, Some(d));
            if !coef.is_zero() {
                let rest = p.eval(x, |e| e[d] == 0, None);
                let (q, r) = (-rest).div_rem(&coef);
                if r.is_zero() && q.is_positive() {
                    if let Some(v) = q.to_u64() {
                        if v <= n && allowed(d, v) {
                            x[d] = v;
                            if self.depth_ok(d, x) {
                                self.descend(d + 1, n, x, allowed, visit)?;
                            }
                        }
                    }
                }
                return ControlFlow::Continue(());
            }
        }
        for v in 1..=n {
            if !allowed(d, v) {
                continue;
            }
            x[d] = v;
            if self.depth_ok(d, x) {
                self.descend(d + 1, n, x, allowed, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(v: &[u64]) -> Assignment {
        Assignment::new(v.to_vec()).unwrap()
    }

    fn sys1(p: Polynomial) -> PolySystem {
        PolySystem::new(p.num_vars(), vec![p]).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(eval_poly(&Polynomial::linear(&[1, 1, -1]), &a(&[1, 2, 3])).unwrap().is_zero());
        assert!(eval_poly(&Polynomial::linear(&[1, -2, 1]), &a(&[1, 2, 3])).unwrap().is_zero());
        let sq = Polynomial::new(2, vec![Monomial::int(1, &[2, 0]), Monomial::int(-1, &[0, 1])]).unwrap();
        assert!(eval_poly(&sq, &a(&[3, 9])).unwrap().is_zero());
        assert_eq!(
            eval_poly(&sq, &a(&[3])),
            Err(Error::Dimension { expected: 2, got: 1 })
        );
    }

    #[test]
    fn rational_coefficients_stay_exact() {
        let half = Rational::new(1.into(), 2.into());
        let p = Polynomial::new(
            2,
            vec![Monomial::new(half, vec![1, 0]), Monomial::new(Rational::new((-1).into(), 3.into()), vec![0, 1])],
        )
        .unwrap();
        // x/2 - y/3 at (1,1) = 1/6
        assert_eq!(eval_poly(&p, &a(&[1, 1])).unwrap(), Rational::new(1.into(), 6.into()));
        assert!(eval_poly(&p, &a(&[2, 3])).unwrap().is_zero());
    }

    #[test]
    fn solution_examples() {
        let schur = PolySystem::schur();
        assert!(is_solution(&schur, &a(&[2, 3, 5])).unwrap());
        assert!(!is_solution(&schur, &a(&[2, 3, 6])).unwrap());
        // (x, y, z, d) with y = x+d, z = x+2d
        let xyzd = PolySystem::new(
            4,
            vec![Polynomial::linear(&[1, -2, 1, 0]), Polynomial::linear(&[1, -1, 0, 1])],
        )
        .unwrap();
        assert!(is_solution(&xyzd, &a(&[1, 2, 3, 1])).unwrap());
        assert!(is_solution(&PolySystem::brauer(), &a(&[1, 1, 2, 3])).unwrap());
    }

    #[test]
    fn nontrivial_examples() {
        assert!(!is_nontrivial(&a(&[5, 5, 5])));
        assert!(is_nontrivial(&a(&[5, 5, 6])));
        assert!(!is_nontrivial(&a(&[1])));
        assert!(Assignment::new(vec![0, 1]).is_err());
    }

    #[test]
    fn invariance_examples() {
        assert_eq!(check_dilation_invariance(&PolySystem::schur()), Invariance::Homogeneous(vec![1]));
        let quad = Polynomial::new(
            4,
            vec![Monomial::int(1, &[1, 0, 0, 1]), Monomial::int(-1, &[0, 1, 1, 0])],
        )
        .unwrap();
        let mixed = PolySystem::new(4, vec![Polynomial::linear(&[1, 1, -1, 0]), quad]).unwrap();
        assert_eq!(check_dilation_invariance(&mixed), Invariance::Homogeneous(vec![1, 2]));
        let affine = Polynomial::new(
            2,
            vec![Monomial::int(1, &[1, 0]), Monomial::int(1, &[0, 1]), Monomial::int(-1, &[0, 0])],
        )
        .unwrap();
        assert_eq!(check_dilation_invariance(&sys1(affine)), Invariance::NotHomogeneous(0));
    }

    #[test]
    fn product_examples() {
        let schur = PolySystem::schur();
        assert_eq!(product_system(std::slice::from_ref(&schur)).unwrap(), schur);
        let ss = product_system(&[schur.clone(), schur.clone()]).unwrap();
        assert_eq!(ss.num_vars(), 6);
        assert!(is_solution(&ss, &a(&[2, 3, 5, 1, 1, 2])).unwrap());
        let sb = product_system(&[schur.clone(), PolySystem::brauer()]).unwrap();
        assert_eq!(sb.num_vars(), 7);
        assert!(is_solution(&sb, &a(&[1, 2, 3, 1, 1, 2, 3])).unwrap());
        assert!(!is_solution(&sb, &a(&[1, 2, 3, 1, 1, 2, 4])).unwrap());
        let affine = sys1(
            Polynomial::new(1, vec![Monomial::int(1, &[1]), Monomial::int(-1, &[0])]).unwrap(),
        );
        assert_eq!(
            product_system(&[schur, affine]),
            Err(Error::NotHomogeneous { index: 0 })
        );
    }

    fn brute(sys: &PolySystem, n: u64, nontrivial: bool) -> Vec<Assignment> {
        let s = sys.num_vars();
        let mut out = Vec::new();
        let mut x = vec![1u64; s];
        loop {
            let asg = a(&x);
            if is_solution(sys, &asg).unwrap() && (!nontrivial || is_nontrivial(&asg)) {
                out.push(asg);
            }
            let mut i = s;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if x[i] < n {
                    x[i] += 1;
                    break;
                }
                x[i] = 1;
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let schur = PolySystem::schur();
        assert_eq!(enumerate_solutions(&schur, 2, true, 100), vec![a(&[1, 1, 2])]);
        assert!(enumerate_solutions(&schur, 1, true, 100).is_empty());
        let b = enumerate_solutions(&PolySystem::brauer(), 3, true, 100);
        assert!(b.contains(&a(&[1, 1, 2, 3])));
        assert_eq!(b, brute(&PolySystem::brauer(), 3, true));
        assert_eq!(enumerate_solutions(&schur, 10, true, 3).len(), 3);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        let quad = sys1(
            Polynomial::new(
                3,
                vec![Monomial::int(1, &[2, 0, 0]), Monomial::int(1, &[0, 2, 0]), Monomial::int(-1, &[0, 0, 2])],
            )
            .unwrap(),
        );
        let ap3 = PolySystem::ap3();
        let prod = product_system(&[PolySystem::schur(), ap3.clone()]).unwrap();
        for (sys, n) in [(quad, 13), (ap3, 9), (PolySystem::brauer(), 7), (prod, 4)] {
            for nt in [false, true] {
                assert_eq!(enumerate_solutions(&sys, n, nt, usize::MAX), brute(&sys, n, nt));
            }
        }
    }

    #[test]
    fn product_solutions_are_concatenations() {
        let (s, b) = (PolySystem::schur(), PolySystem::brauer());
        let n = 6;
        let prod = product_system(&[s.clone(), b.clone()]).unwrap();
        let got = enumerate_solutions(&prod, n, false, usize::MAX);
        let mut want = Vec::new();
        for x in enumerate_solutions(&s, n, false, usize::MAX) {
            for y in enumerate_solutions(&b, n, false, usize::MAX) {
                let mut v = x.values().to_vec();
                v.extend_from_slice(y.values());
                want.push(a(&v));
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn dilation_closure() {
        let quad = sys1(
            Polynomial::new(
                3,
                vec![Monomial::int(1, &[2, 0, 0]), Monomial::int(1, &[0, 2, 0]), Monomial::int(-1, &[0, 0, 2])],
            )
            .unwrap(),
        );
        for sys in [PolySystem::schur(), PolySystem::brauer(), PolySystem::ap3(), quad] {
            assert!(check_dilation_invariance(&sys).is_homogeneous());
            let n = 30;
            for x in enumerate_solutions(&sys, n, false, usize::MAX) {
                for lambda in 1..=n / x.max_entry() {
                    assert!(is_solution(&sys, &x.scaled(lambda)).unwrap());
                }
            }
        }
    }

    #[test]
    fn text_format_round_trip() {
        let sys = product_system(&[PolySystem::schur(), PolySystem::brauer()]).unwrap();
        let text = sys.to_text();
        assert_eq!(PolySystem::from_text(&text).unwrap(), sys);
        assert_eq!(PolySystem::from_text(&text).unwrap().to_text(), text);
        assert_eq!(
            PolySystem::schur().to_text(),
            "vars: 3\n1*t1^1*t2^0*t3^0 + 1*t1^0*t2^1*t3^0 + -1*t1^0*t2^0*t3^1\n"
        );
    }

    #[test]
    fn text_format_accepts_shorthand() {
        let src = "# Brauer configuration\nvars: 4\nt1 + t2 - t3   # x + d = y\nt1 + 2*t2 - t4\n";
        assert_eq!(PolySystem::from_text(src).unwrap(), PolySystem::brauer());
        let frac = PolySystem::from_text("vars: 2\n1/2*t1^2 - 3/4*t2^2\n").unwrap();
        assert_eq!(frac.polynomials()[0].terms()[0].coefficient, Rational::new(1.into(), 2.into()));
        assert!(matches!(PolySystem::from_text("t1 + t2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(PolySystem::from_text("vars: 2\nt3 - t1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(PolySystem::from_text("vars: 2\nt1 - t1\n").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-5i64..=5, 1i64..=4, prop::collection::vec(0u32..3, 3)), 1..6).prop_filter_map(
            "non-zero",
            |terms| {
                let terms = terms
                    .into_iter()
                    .map(|(n, d, e)| Monomial::new(Rational::new(n.into(), d.into()), e))
                    .collect();
                Polynomial::new(3, terms).ok().filter(|p| !p.is_zero())
            },
        )
    }

    proptest! {
        #[test]
        fn eval_agrees_with_recombined_form(p in arb_poly(), x in prop::collection::vec(1u64..50, 3)) {
            // Split every term in two halves; the recombined polynomial must evaluate identically.
            let mut split = Vec::new();
            for m in p.terms() {
                let half = m.coefficient.clone() / Rational::from_integer(2.into());
                split.push(Monomial::new(half.clone(), m.exponents.clone()));
                split.push(Monomial::new(half, m.exponents.clone()));
            }
            let q = Polynomial::new(3, split).unwrap();
            prop_assert_eq!(&q, &p);
            let asg = Assignment::new(x).unwrap();
            prop_assert_eq!(eval_poly(&p, &asg).unwrap(), eval_poly(&q, &asg).unwrap());
        }

        #[test]
        fn text_round_trip(polys in prop::collection::vec(arb_poly(), 1..4)) {
            let sys = PolySystem::new(3, polys).unwrap();
            let text = sys.to_text();
            let back = PolySystem::from_text(&text).unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, sys);
        }
    }
}
