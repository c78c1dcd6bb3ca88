//! Exact homomorphism counts `hom(G, H)`.
//!
//! The general counter is a backtracking search over maps `V(G) -> V(H)`.
//! Each vertex draws its candidate colors from the intersection of the
//! `H`-neighborhoods of the colors already placed on its `G`-neighbors, and
//! whenever the uncolored part of `G` falls apart into several components the
//! component counts are multiplied instead of searched jointly. Paths, cycles
//! and complete bipartite sources also have closed-form routes through the
//! transfer matrix (the adjacency matrix of `H`) and through common
//! neighborhoods; the test suites hold those routes against the general one.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{self, Bits, Graph};

/// Exact, unbounded, non-negative count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HomCount(pub BigUint);

impl HomCount {
    pub fn zero() -> Self {
        HomCount(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for HomCount {
    fn from(v: u64) -> Self {
        HomCount(BigUint::from(v))
    }
}

impl From<BigUint> for HomCount {
    fn from(v: BigUint) -> Self {
        HomCount(v)
    }
}

impl fmt::Display for HomCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for HomCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

// ---------------------------------------------------------------------------
// Backtracking counter

/// Accumulator for the search: `u128` with overflow detection, or `BigUint`.
trait Tally: Sized {
    fn nil() -> Self;
    fn unit() -> Self;
    fn small(v: u32) -> Self;
    fn plus(self, other: Self) -> Option<Self>;
    fn times(self, other: Self) -> Option<Self>;
    fn is_nil(&self) -> bool;
}

impl Tally for u128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn small(v: u32) -> Self {
        v as u128
    }
    fn plus(self, other: Self) -> Option<Self> {
        self.checked_add(other)
    }
    fn times(self, other: Self) -> Option<Self> {
        self.checked_mul(other)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
}

impl Tally for BigUint {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn small(v: u32) -> Self {
        BigUint::from(v)
    }
    fn plus(self, other: Self) -> Option<Self> {
        Some(self + other)
    }
    fn times(self, other: Self) -> Option<Self> {
        Some(self * other)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    colors: Vec<usize>,
    colored: u64,
}

impl Search<'_> {
    fn candidates(&self, v: usize) -> u64 {
        let mut cand = self.h.vertex_mask();
        for u in Bits(self.g.neighbors(v) & self.colored) {
            cand &= self.h.neighbors(self.colors[u]);
        }
        cand
    }

    /// Next vertex of a connected uncolored block: most colored neighbors,
    /// then highest degree, then lowest index.
    fn pick(&self, block: u64) -> usize {
        Bits(block)
            .max_by_key(|&v| {
                let nb = self.g.neighbors(v);
                ((nb & self.colored).count_ones(), nb.count_ones(), std::cmp::Reverse(v))
            })
            .expect("nonempty block")
    }

    fn count<T: Tally>(&mut self, remaining: u64) -> Option<T> {
        if remaining == 0 {
            return Some(T::unit());
        }
        let blocks = self.g.components_within(remaining);
        if blocks.len() > 1 {
            let mut acc = T::unit();
            for b in blocks {
                let c = self.count_block::<T>(b)?;
                if c.is_nil() {
                    return Some(T::nil());
                }
                acc = acc.times(c)?;
            }
            return Some(acc);
        }
        self.count_block(remaining)
    }

    fn count_block<T: Tally>(&mut self, block: u64) -> Option<T> {
        let v = self.pick(block);
        let cand = self.candidates(v);
        let rest = block & !(1u64 << v);
        if rest == 0 {
            return Some(T::small(cand.count_ones()));
        }
        let mut total = T::nil();
        self.colored |= 1 << v;
        for c in Bits(cand) {
            self.colors[v] = c;
            match self.count::<T>(rest) {
                Some(x) => match total.plus(x) {
                    Some(t) => total = t,
                    None => {
                        self.colored &= !(1u64 << v);
                        return None;
                    }
                },
                None => {
                    self.colored &= !(1u64 << v);
                    return None;
                }
            }
        }
        self.colored &= !(1u64 << v);
        Some(total)
    }
}

/// Number of adjacency-preserving maps `V(g) -> V(h)`.
pub fn count_hom(g: &Graph, h: &Graph) -> Result<HomCount> {
    if g.loop_count() > 0 {
        return Err(Error::Precondition("source graph must be loopless".into()));
    }
    let mut search = Search { g, h, colors: vec![0; g.vertex_count()], colored: 0 };
    if let Some(v) = search.count::<u128>(g.vertex_mask()) {
        return Ok(HomCount(BigUint::from(v)));
    }
    let mut search = Search { g, h, colors: vec![0; g.vertex_count()], colored: 0 };
    let v: BigUint = search.count(g.vertex_mask()).expect("bignum tally cannot overflow");
    Ok(HomCount(v))
}

// ---------------------------------------------------------------------------
// Transfer matrix

/// Adjacency matrix of a target graph with exact entries; powers count walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    dim: usize,
    entries: Vec<BigUint>,
}

impl TransferMatrix {
    pub fn of(h: &Graph) -> Self {
        let dim = h.vertex_count();
        let mut entries = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            for j in Bits(h.neighbors(i)) {
                entries[i * dim + j] = BigUint::one();
            }
        }
        TransferMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigUint::one();
        }
        TransferMatrix { dim, entries }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &TransferMatrix) -> TransferMatrix {
        let d = self.dim;
        let mut entries = vec![BigUint::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        entries[i * d + j] += a * b;
                    }
                }
            }
        }
        TransferMatrix { dim: d, entries }
    }

    pub fn pow(&self, mut e: usize) -> TransferMatrix {
        let mut result = TransferMatrix::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn entry_sum(&self) -> BigUint {
        self.entries.iter().sum()
    }

    pub fn trace(&self) -> BigUint {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_entry(&self) -> BigUint {
        self.entries.iter().max().cloned().unwrap_or_default()
    }

    pub fn max_diagonal(&self) -> BigUint {
        (0..self.dim).map(|i| self.get(i, i)).max().cloned().unwrap_or_default()
    }

    /// `A v` for a column vector.
    fn apply(&self, v: &[BigUint]) -> Vec<BigUint> {
        (0..self.dim)
            .map(|i| (0..self.dim).filter(|&j| !self.get(i, j).is_zero()).map(|j| &v[j]).sum())
            .collect()
    }
}

/// `hom(P_k, h)` for the path on `k` vertices: the entry sum of `A^(k-1)`.
pub fn count_hom_path(k: usize, h: &Graph) -> Result<HomCount> {
    if k == 0 {
        return Err(Error::Precondition("path needs at least one vertex".into()));
    }
    Ok(HomCount(path_counts(h, k).pop().expect("k >= 1")))
}

/// `hom(P_j, h)` for `j = 1..=k_max`, at index `j - 1`.
pub fn path_counts(h: &Graph, k_max: usize) -> Vec<BigUint> {
    let a = TransferMatrix::of(h);
    let mut v = vec![BigUint::one(); h.vertex_count()];
    let mut out = Vec::with_capacity(k_max);
    for j in 1..=k_max {
        if j > 1 {
            v = a.apply(&v);
        }
        out.push(v.iter().sum());
    }
    out
}

/// `hom(C_k, h)`: the trace of `A^k`.
pub fn count_hom_cycle(k: usize, h: &Graph) -> Result<HomCount> {
    if k < 3 {
        return Err(Error::Precondition(format!("cycle needs at least 3 vertices, got {k}")));
    }
    Ok(HomCount(TransferMatrix::of(h).pow(k).trace()))
}

// ---------------------------------------------------------------------------
// Complete bipartite sources

/// Default limit on the smaller class of `K_{a,b}` for the tuple-sum route.
pub const KAB_CLASS_CAP: usize = 6;

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// `hom(K_{a,b}, h) = sum over a-tuples t of |N(t)|^b`, where `N(t)` is the
/// common neighborhood of `t`. Tuples are grouped by multiset with
/// multinomial weights; the smaller class is the one enumerated.
pub fn count_hom_complete_bipartite(a: usize, b: usize, h: &Graph) -> Result<HomCount> {
    count_hom_complete_bipartite_capped(a, b, h, KAB_CLASS_CAP)
}

pub fn count_hom_complete_bipartite_capped(
    a: usize,
    b: usize,
    h: &Graph,
    cap: usize,
) -> Result<HomCount> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition("complete bipartite classes must be nonempty".into()));
    }
    let (small, large) = if b < a { (b, a) } else { (a, b) };
    if small > cap {
        return Err(Error::CapExceeded { what: format!("K_{{a,b}} small class size {small}"), cap });
    }
    let m = h.vertex_count();
    let small_fact = factorial(small);
    let mut total = BigUint::zero();
    // Non-decreasing sequences over V(h) of length `small`.
    let mut seq = vec![0usize; small];
    loop {
        let mut common = h.vertex_mask();
        for &v in &seq {
            common &= h.neighbors(v);
        }
        let c = common.count_ones();
        if c > 0 {
            let mut weight = small_fact.clone();
            let mut run = 1;
            for i in 1..=small {
                if i < small && seq[i] == seq[i - 1] {
                    run += 1;
                } else {
                    weight /= factorial(run);
                    run = 1;
                }
            }
            total += weight * BigUint::from(c).pow(large as u32);
        }
        // advance
        let mut i = small;
        loop {
            if i == 0 {
                return Ok(HomCount(total));
            }
            i -= 1;
            if seq[i] + 1 < m {
                let nv = seq[i] + 1;
                for s in &mut seq[i..] {
                    *s = nv;
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// S(δ, H) and the complete-bipartite lower bound

/// Tuples in `V(H)^delta` whose common neighborhood has `Δ(H)` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdeltaResult {
    pub s: HomCount,
    pub delta_max: usize,
    pub witnesses: Option<Vec<Vec<usize>>>,
}

/// Witness lists are only materialized up to this many tuples.
pub const WITNESS_LIMIT: usize = 10_000;

/// Count `S(delta, h)`. The common neighborhood of a tuple is contained in
/// the neighborhood of its first entry, so "exactly Δ" and "at least Δ"
/// coincide; the search extends a tuple only while its common neighborhood
/// still has Δ vertices.
pub fn s_delta(h: &Graph, delta: usize, with_witnesses: bool) -> Result<SdeltaResult> {
    if delta == 0 {
        return Err(Error::Precondition("delta must be positive".into()));
    }
    let d = graph::max_degree(h);
    let mut witnesses = with_witnesses.then(Vec::new);
    let mut tuple = Vec::with_capacity(delta);
    let mut count = BigUint::zero();

    fn walk(
        h: &Graph,
        d: usize,
        delta: usize,
        common: u64,
        tuple: &mut Vec<usize>,
        count: &mut BigUint,
        witnesses: &mut Option<Vec<Vec<usize>>>,
    ) {
        if tuple.len() == delta {
            *count += 1u32;
            if let Some(w) = witnesses.as_mut() {
                if w.len() < WITNESS_LIMIT {
                    w.push(tuple.clone());
                }
            }
            return;
        }
        for v in 0..h.vertex_count() {
            let next = common & h.neighbors(v);
            if next.count_ones() as usize == d {
                tuple.push(v);
                walk(h, d, delta, next, tuple, count, witnesses);
                tuple.pop();
            }
        }
    }

    walk(h, d, delta, h.vertex_mask(), &mut tuple, &mut count, &mut witnesses);
    Ok(SdeltaResult { s: HomCount(count), delta_max: d, witnesses })
}

/// `s(delta, h) * Δ^(n - delta)`, a lower bound on `hom(K_{delta, n-delta}, h)`.
pub fn lower_bound_eq1(delta: usize, n: usize, h: &Graph) -> Result<HomCount> {
    if n < 2 * delta {
        return Err(Error::Precondition(format!("need n >= 2*delta, got n={n}, delta={delta}")));
    }
    let sd = s_delta(h, delta, false)?;
    if sd.delta_max == 0 {
        return Err(Error::Precondition("target graph has no edges (Δ = 0)".into()));
    }
    Ok(HomCount(sd.s.0 * BigUint::from(sd.delta_max).pow((n - delta) as u32)))
}

// ---------------------------------------------------------------------------
// Long and short path estimates

fn require_connected_nonregular(h: &Graph) -> Result<()> {
    if !graph::is_connected(h) {
        return Err(Error::Precondition("target graph must be connected".into()));
    }
    if graph::is_regular(h) {
        return Err(Error::Precondition("target graph must be non-regular".into()));
    }
    Ok(())
}

/// `hom(P_k, h) < Δ^(k - delta)`, compared as `hom * Δ^delta < Δ^k` so that
/// `k < delta` needs no fractions.
pub fn long_path_inequality(hom: &BigUint, d: usize, k: usize, delta: usize) -> bool {
    let d = BigUint::from(d);
    hom * d.pow(delta as u32) < d.pow(k as u32)
}

/// Smallest `ell <= k_max` such that `hom(P_k, h) < Δ^(k - delta)` holds for
/// every `ell <= k <= k_max`, or `None` when it fails at `k_max`.
pub fn find_ell(h: &Graph, delta: usize, k_max: usize) -> Result<Option<usize>> {
    require_connected_nonregular(h)?;
    if k_max == 0 {
        return Ok(None);
    }
    let d = graph::max_degree(h);
    let counts = path_counts(h, k_max);
    let mut ell = None;
    for k in (1..=k_max).rev() {
        if long_path_inequality(&counts[k - 1], d, k, delta) {
            ell = Some(k);
        } else {
            break;
        }
    }
    Ok(ell)
}

/// Floating-point estimate of the adjacency spectral radius. Diagnostic only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralMargin {
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    pub delta_max: usize,
    pub iterations: usize,
}

pub const SPECTRAL_TOLERANCE: f64 = 1e-9;
const SPECTRAL_MAX_ITER: usize = 1_000_000;

/// Power iteration on `A + I`, which is primitive for connected `h`, with
/// Collatz-Wielandt bounds `min (Mx)_i / x_i <= rho(M) <= max (Mx)_i / x_i`
/// bracketing the spectral radius until the bracket is narrower than
/// [`SPECTRAL_TOLERANCE`].
pub fn spectral_margin(h: &Graph) -> Result<SpectralMargin> {
    if !graph::is_connected(h) {
        return Err(Error::Precondition("spectral margin needs a connected target".into()));
    }
    let n = h.vertex_count();
    let delta_max = graph::max_degree(h);
    let mut x = vec![1.0f64; n];
    for it in 1..=SPECTRAL_MAX_ITER {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + Bits(h.neighbors(i)).map(|j| x[j]).sum::<f64>())
            .collect();
        let ratios = (0..n).map(|i| y[i] / x[i]);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        if hi - lo <= SPECTRAL_TOLERANCE {
            let (lower, upper) = (lo - 1.0, hi - 1.0);
            return Ok(SpectralMargin {
                rho: (lower + upper) / 2.0,
                lower,
                upper,
                delta_max,
                iterations: it,
            });
        }
        let norm = y.iter().cloned().fold(0.0f64, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::NoConvergence(format!(
        "power iteration did not reach width {SPECTRAL_TOLERANCE:e} in {SPECTRAL_MAX_ITER} steps"
    )))
}

/// Outcome of checking `(A^(k-1))_{ij} <= (Δ² - 1) Δ^(k-4)` for all `i, j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointCheck {
    pub k: usize,
    pub bound: HomCount,
    pub max_entry: HomCount,
    /// Largest diagonal entry: colorings of `C_{k-1}` with one vertex fixed.
    pub max_rooted_cycle: HomCount,
    pub holds: bool,
}

/// The fully looped complete graph on Δ vertices and `K_{Δ,Δ}` are the two
/// targets for which the endpoint bound is not claimed.
pub fn is_endpoint_excluded(h: &Graph) -> bool {
    let n = h.vertex_count();
    let d = graph::max_degree(h);
    let looped_complete = n == d && (0..n).all(|v| h.neighbors(v) == h.vertex_mask());
    if looped_complete {
        return true;
    }
    if n != 2 * d || h.loop_count() > 0 || !graph::is_regular(h) || !graph::is_connected(h) {
        return false;
    }
    // d-regular, connected, 2d vertices: K_{d,d} iff the neighborhood of 0 and
    // its complement are the two classes.
    let side = h.neighbors(0);
    let other = h.vertex_mask() & !side;
    Bits(other).all(|v| h.neighbors(v) == side) && Bits(side).all(|v| h.neighbors(v) == other)
}

pub fn endpoint_bound_check(h: &Graph, k: usize) -> Result<EndpointCheck> {
    if k < 4 {
        return Err(Error::Precondition(format!("endpoint bound needs k >= 4, got {k}")));
    }
    let d = graph::max_degree(h);
    if d == 0 {
        return Err(Error::Precondition("target graph has no edges (Δ = 0)".into()));
    }
    if is_endpoint_excluded(h) {
        return Err(Error::Precondition(
            "target is the complete looped graph on Δ vertices or K_{Δ,Δ}".into(),
        ));
    }
    let db = BigUint::from(d);
    let bound = (&db * &db - 1u32) * db.pow((k - 4) as u32);
    let power = TransferMatrix::of(h).pow(k - 1);
    let max_entry = power.max_entry();
    let max_rooted_cycle = power.max_diagonal();
    let holds = max_entry <= bound;
    Ok(EndpointCheck {
        k,
        bound: HomCount(bound),
        max_entry: HomCount(max_entry),
        max_rooted_cycle: HomCount(max_rooted_cycle),
        holds,
    })
}
