//! Integer polynomials in `q`: chromatic polynomials by deletion-contraction,
//! closed forms for `hom(K_{a,b}, K_q)` and `hom(G1, K_q)`, and the
//! polynomial upper bound on `hom(K_{δ,n-δ}, K_q)` used to show that `G1`
//! eventually has more proper colorings.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extremal::canon::{canonical_form, CanonicalForm};
use crate::graph::{Bits, Graph};

/// Dense polynomial with exact integer coefficients; index = power of `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// `q - c`.
    pub fn q_minus(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(-c), BigInt::one()])
    }

    pub fn q() -> Self {
        Self::q_minus(0)
    }

    /// `q(q-1)...(q-k+1)`.
    pub fn falling_factorial(k: usize) -> Self {
        (0..k as i64).fold(Self::constant(1), |acc, i| &acc * &Self::q_minus(i))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut result = Self::constant(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Coefficients as decimal strings, lowest degree first.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let sep = if first { "" } else { " " };
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "q".to_string(),
                (1, false) => format!("{mag}q"),
                (_, true) => format!("q^{i}"),
                (_, false) => format!("{mag}q^{i}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sep}{sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

// ---------------------------------------------------------------------------
// Chromatic polynomial

pub const CHROMATIC_MAX_VERTICES: usize = 20;

/// Deletion-contraction with memoization on canonical forms.
#[derive(Default)]
pub struct ChromaticSolver {
    memo: HashMap<CanonicalForm, IntPolynomial>,
}

/// An edge on a shortest cycle of `g`, if any.
fn shortest_cycle_edge(g: &Graph) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    let mut best: Option<(usize, (usize, usize))> = None;
    for s in 0..n {
        // BFS from s; a non-tree edge x-y closes a cycle through s of length
        // dist[x] + dist[y] + 1 when the two branches differ.
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in Bits(g.neighbors(x)) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    if best.is_none_or(|(b, _)| len < b) {
                        best = Some((len, (x.min(y), x.max(y))));
                    }
                }
            }
        }
    }
    best.map(|(_, e)| e)
}

impl ChromaticSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    pub fn solve(&mut self, g: &Graph) -> Result<IntPolynomial> {
        if g.loop_count() > 0 {
            return Err(Error::Precondition("chromatic polynomial needs a loopless graph".into()));
        }
        if g.vertex_count() > CHROMATIC_MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: format!("chromatic polynomial over {} vertices", g.vertex_count()),
                cap: CHROMATIC_MAX_VERTICES,
            });
        }
        Ok(self.rec(g))
    }

    fn rec(&mut self, g: &Graph) -> IntPolynomial {
        let n = g.vertex_count();
        let m = g.edge_count();
        if m == 0 {
            return IntPolynomial::q().pow(n);
        }
        let comps = g.components();
        if comps.len() > 1 {
            return comps.iter().fold(IntPolynomial::constant(1), |acc, &c| {
                &acc * &self.rec(&g.induced(c).expect("nonempty component"))
            });
        }
        if m == n - 1 {
            return &IntPolynomial::q() * &IntPolynomial::q_minus(1).pow(n - 1);
        }
        if m == n * (n - 1) / 2 {
            return IntPolynomial::falling_factorial(n);
        }
        if let Some(v) = (0..n).find(|&v| g.degree(v) == 1) {
            let rest = g.induced(g.vertex_mask() & !(1 << v)).expect("n >= 2");
            return &IntPolynomial::q_minus(1) * &self.rec(&rest);
        }
        let key = canonical_form(g);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let (u, v) = shortest_cycle_edge(g).expect("connected non-tree graph has a cycle");
        let mut deleted = g.clone();
        deleted.remove_edge(u, v).expect("edge exists");
        let contracted = g.contract(u, v).expect("distinct endpoints");
        let p = &self.rec(&deleted) - &self.rec(&contracted);
        self.memo.insert(key, p.clone());
        p
    }
}

pub fn chromatic_polynomial(g: &Graph) -> Result<IntPolynomial> {
    ChromaticSolver::new().solve(g)
}

// ---------------------------------------------------------------------------
// Closed forms for complete bipartite graphs and G1

/// Set partitions of `a` labeled elements into `j` nonempty blocks,
/// `S(a, 0..=a)`.
pub fn stirling2_row(a: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=a {
        let mut next = vec![BigUint::zero(); i + 1];
        for j in 1..=i {
            let keep = if j < i { &row[j] * BigUint::from(j) } else { BigUint::zero() };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row
}

pub const KAB_KQ_MAX_CLASS: usize = 8;

/// `hom(K_{a,b}, K_q) = Σ_j S(a, j) (q)_j (q - j)^b`: the small class uses
/// exactly `j` distinct colors, and each large-class vertex avoids them.
pub fn kab_kq_exact(a: usize, b: usize) -> Result<IntPolynomial> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition("complete bipartite classes must be nonempty".into()));
    }
    if a > KAB_KQ_MAX_CLASS {
        return Err(Error::CapExceeded { what: format!("K_{{a,b}} class size {a}"), cap: KAB_KQ_MAX_CLASS });
    }
    let s = stirling2_row(a);
    let mut total = IntPolynomial::zero();
    for (j, sj) in s.iter().enumerate().skip(1) {
        let term = &IntPolynomial::falling_factorial(j) * &IntPolynomial::q_minus(j as i64).pow(b);
        let term = &IntPolynomial::from_coeffs(vec![BigInt::from(sj.clone())]) * &term;
        total = &total + &term;
    }
    Ok(total)
}

/// `q(q-1)...(q-δ+1)(q-δ)^(n-δ) + δ² q^(n-1)`.
pub fn kab_kq_upper_bound(delta: usize, n: usize) -> Result<IntPolynomial> {
    if delta == 0 || n < 2 * delta {
        return Err(Error::Precondition(format!("need n >= 2*delta >= 2, got n={n}, delta={delta}")));
    }
    let distinct =
        &IntPolynomial::falling_factorial(delta) * &IntPolynomial::q_minus(delta as i64).pow(n - delta);
    let repeated = &IntPolynomial::constant((delta * delta) as i64) * &IntPolynomial::q().pow(n - 1);
    Ok(&distinct + &repeated)
}

fn check_g1_params(delta: usize, n: usize) -> Result<()> {
    if delta < 2 {
        return Err(Error::Precondition(format!("G1 needs delta >= 2, got {delta}")));
    }
    if n == 0 || !n.is_multiple_of(delta + 1) {
        return Err(Error::Precondition(format!("G1 needs (delta+1) | n, got n={n}, delta={delta}")));
    }
    Ok(())
}

/// `q(q-1)...(q-δ) [(q-1)(q-1)(q-2)...(q-δ)]^(n/(δ+1) - 1)`.
pub fn g1_kq_formula(delta: usize, n: usize) -> Result<IntPolynomial> {
    check_g1_params(delta, n)?;
    let center = IntPolynomial::falling_factorial(delta + 1);
    let tail = (1..=delta as i64).fold(IntPolynomial::q_minus(1), |acc, i| &acc * &IntPolynomial::q_minus(i));
    Ok(&center * &tail.pow(n / (delta + 1) - 1))
}

/// `nδ/2 - n/(δ+1) + (2 - 3δ² - δ)/2`, the `q^(n-1)` coefficient of
/// `g1_kq_formula - kab_kq_upper_bound`.
pub fn thm2_difference_leading(delta: usize, n: usize) -> Result<BigRational> {
    check_g1_params(delta, n)?;
    let r = |num: i64, den: i64| BigRational::new(BigInt::from(num), BigInt::from(den));
    let (d, n) = (delta as i64, n as i64);
    Ok(r(n * d, 2) - r(n, d + 1) + r(2 - 3 * d * d - d, 2))
}

/// Smallest `q <= q_max` with `hom(G1, K_q) > hom(K_{δ,n-δ}, K_q)`, both
/// sides exact.
pub fn find_crossover_q(delta: usize, n: usize, q_max: u64) -> Result<Option<u64>> {
    let table = crossover_table(delta, n, q_max)?;
    Ok(table.into_iter().find(|row| row.g1_wins).map(|row| row.q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossoverRow {
    pub q: u64,
    #[serde(serialize_with = "as_decimal")]
    pub kab_count: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub g1_count: BigInt,
    pub g1_wins: bool,
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn crossover_table(delta: usize, n: usize, q_max: u64) -> Result<Vec<CrossoverRow>> {
    check_g1_params(delta, n)?;
    if n < 2 * delta {
        return Err(Error::Precondition(format!("need n >= 2*delta, got n={n}, delta={delta}")));
    }
    let g1 = g1_kq_formula(delta, n)?;
    let kab = kab_kq_exact(delta, n - delta)?;
    Ok((0..=q_max)
        .map(|q| {
            let qb = BigInt::from(q);
            let (k, g) = (kab.eval(&qb), g1.eval(&qb));
            CrossoverRow { q, g1_wins: g > k, kab_count: k, g1_count: g }
        })
        .collect())
}

/// Sanity data for a chromatic polynomial of a graph with `m` edges.
pub fn has_chromatic_shape(p: &IntPolynomial, n: usize, m: usize) -> bool {
    p.degree() == Some(n)
        && p.coeff(n).is_one()
        && (n == 0 || p.coeff(n - 1) == BigInt::from(-(m as i64)))
        && p.coeffs().iter().enumerate().all(|(i, c)| {
            c.is_zero() || (c.is_positive() == (n - i).is_multiple_of(2))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::homcount::count_hom;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = &IntPolynomial::q_minus(1) * &IntPolynomial::q_minus(2);
        assert_eq!(p, poly(&[2, -3, 1]));
        assert_eq!((&p - &p).degree(), None);
        assert_eq!(p.eval_i64(5), BigInt::from(12));
        assert_eq!(IntPolynomial::falling_factorial(3).eval_i64(4), BigInt::from(24));
        assert_eq!(format!("{p}"), "q^2 - 3q + 2");
        assert_eq!(format!("{}", -&IntPolynomial::q()), "-q");
    }

    #[test]
    fn trees_and_cycles() {
        let p = chromatic_polynomial(&path(5).unwrap()).unwrap();
        assert_eq!(p, &IntPolynomial::q() * &IntPolynomial::q_minus(1).pow(4));
        // C_4 by interpolation at q = 0..4 through count_hom: 0, 0, 2, 18, 84.
        let c4 = cycle(4).unwrap();
        let vals: Vec<u64> = (0..5)
            .map(|q| {
                if q == 0 {
                    0
                } else {
                    count_hom(&c4, &complete(q, false).unwrap()).unwrap().to_u64().unwrap()
                }
            })
            .collect();
        assert_eq!(vals, vec![0, 0, 2, 18, 84]);
        let expect = &IntPolynomial::q_minus(1).pow(4) + &IntPolynomial::q_minus(1);
        let p = chromatic_polynomial(&c4).unwrap();
        assert_eq!(p, expect);
        for q in 0..5 {
            assert_eq!(p.eval_i64(q as i64), BigInt::from(vals[q]));
        }
    }

    #[test]
    fn g1_coefficient() {
        let p = chromatic_polynomial(&g1(6, 2).unwrap()).unwrap();
        assert_eq!(p.coeff(5), BigInt::from(-7));
        assert!(has_chromatic_shape(&p, 6, 7));
    }

    #[test]
    fn stirling_rows() {
        let r: Vec<u64> = stirling2_row(4).iter().map(|x| num_traits::ToPrimitive::to_u64(x).unwrap()).collect();
        assert_eq!(r, vec![0, 1, 7, 6, 1]);
        assert_eq!(stirling2_row(0), vec![BigUint::one()]);
    }

    #[test]
    fn kab_closed_form() {
        let p = kab_kq_exact(2, 4).unwrap();
        let q = IntPolynomial::q();
        let expect = &(&q * &IntPolynomial::q_minus(1).pow(4))
            + &(&IntPolynomial::falling_factorial(2) * &IntPolynomial::q_minus(2).pow(4));
        assert_eq!(p, expect);
        assert_eq!(p.eval_i64(3), BigInt::from(54));
        assert_eq!(kab_kq_exact(1, 5).unwrap(), &q * &IntPolynomial::q_minus(1).pow(5));
        assert_eq!(p, chromatic_polynomial(&complete_bipartite(2, 4).unwrap()).unwrap());
        assert!(kab_kq_exact(9, 2).is_err());
    }

    #[test]
    fn upper_bound_polynomial() {
        let p = kab_kq_upper_bound(2, 6).unwrap();
        let expect = &(&IntPolynomial::falling_factorial(2) * &IntPolynomial::q_minus(2).pow(4))
            + &(&IntPolynomial::constant(4) * &IntPolynomial::q().pow(5));
        assert_eq!(p, expect);
        assert_eq!(p.coeff(5), BigInt::from(-12 + 7));
        assert!(kab_kq_upper_bound(3, 5).is_err());
    }

    #[test]
    fn g1_closed_form() {
        let p = g1_kq_formula(2, 6).unwrap();
        assert_eq!(p.eval_i64(3), BigInt::from(24));
        assert_eq!(p.coeff(5), BigInt::from(-7));
        assert!(g1_kq_formula(2, 7).is_err());
    }

    #[test]
    fn leading_difference() {
        let r = |a: i64| BigRational::from_integer(BigInt::from(a));
        assert_eq!(thm2_difference_leading(2, 6).unwrap(), r(-2));
        assert_eq!(thm2_difference_leading(2, 30).unwrap(), r(14));
        assert_eq!(thm2_difference_leading(3, 8).unwrap(), r(-4));
    }

    #[test]
    fn crossover() {
        assert_eq!(find_crossover_q(2, 6, 50).unwrap(), Some(6));
        let t = crossover_table(2, 6, 10).unwrap();
        assert_eq!(t[5].kab_count, BigInt::from(2900));
        assert_eq!(t[5].g1_count, BigInt::from(2880));
        assert_eq!(t[6].kab_count, BigInt::from(11430));
        assert_eq!(t[6].g1_count, BigInt::from(12000));
        assert_eq!(t[10].kab_count, BigInt::from(434250));
        assert_eq!(t[10].g1_count, BigInt::from(466560));
        assert_eq!(find_crossover_q(2, 6, 5).unwrap(), None);
        assert!(find_crossover_q(2, 3, 10).is_err());
    }

    #[test]
    fn caps() {
        assert!(matches!(
            chromatic_polynomial(&path(21).unwrap()),
            Err(Error::CapExceeded { .. })
        ));
    }
}
