//! Seifert invariants and the star-shaped negative-definite plumbing of a
//! Brieskorn sphere.
//!
//! A pairwise coprime triple `(a1, a2, a3)` is normalized to `(e0; (a_i, w_i))`
//! with `0 < w_i < a_i` and orbifold Euler number `e0 + sum w_i/a_i = -1/(a1 a2 a3)`.
//! Each leg of the plumbing is the Hirzebruch-Jung expansion of `a_i / w_i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// An oriented Brieskorn sphere `±Σ(a1, a2, a3)`, exponents kept sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct BrieskornTriple {
    exponents: [u64; 3],
    orientation: Orientation,
}

impl BrieskornTriple {
    pub fn new(a1: u64, a2: u64, a3: u64) -> Result<Self> {
        Self::with_orientation([a1, a2, a3], Orientation::Positive)
    }

    pub fn with_orientation(mut exponents: [u64; 3], orientation: Orientation) -> Result<Self> {
        for &a in &exponents {
            if a < 2 {
                return Err(Error::ExponentTooSmall(a));
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                if exponents[i].gcd(&exponents[j]) != 1 {
                    return Err(Error::NotCoprime(exponents[i], exponents[j]));
                }
            }
        }
        exponents.sort_unstable();
        Ok(BrieskornTriple {
            exponents,
            orientation,
        })
    }

    pub fn exponents(&self) -> [u64; 3] {
        self.exponents
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The same sphere with reversed orientation.
    pub fn reversed(&self) -> Self {
        BrieskornTriple {
            exponents: self.exponents,
            orientation: self.orientation.reversed(),
        }
    }

    /// The positively oriented sphere with the same exponents.
    pub fn unoriented(&self) -> Self {
        BrieskornTriple {
            exponents: self.exponents,
            orientation: Orientation::Positive,
        }
    }

    pub fn product(&self) -> Result<u64> {
        self.exponents
            .iter()
            .try_fold(1u64, |acc, &a| acc.checked_mul(a))
            .ok_or(Error::Overflow("a1*a2*a3"))
    }

    /// `"p,q,r"`, prefixed with `-` for negative orientation. Parsed back by `FromStr`.
    pub fn key(&self) -> String {
        let [a, b, c] = self.exponents;
        match self.orientation {
            Orientation::Positive => format!("{a},{b},{c}"),
            Orientation::Negative => format!("-{a},{b},{c}"),
        }
    }
}

impl fmt::Display for BrieskornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.exponents;
        if self.orientation == Orientation::Negative {
            write!(f, "-")?;
        }
        write!(f, "Σ({a},{b},{c})")
    }
}

impl FromStr for BrieskornTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let (orientation, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (Orientation::Negative, rest.trim_start()),
            None => (Orientation::Positive, trimmed),
        };
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::TripleSyntax(s.to_string()));
        }
        let mut exps = [0u64; 3];
        for (slot, part) in exps.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::TripleSyntax(s.to_string()))?;
        }
        BrieskornTriple::with_orientation(exps, orientation)
    }
}

#[derive(Serialize, Deserialize)]
struct TripleRepr(String);

impl TryFrom<TripleRepr> for BrieskornTriple {
    type Error = Error;
    fn try_from(r: TripleRepr) -> Result<Self> {
        r.0.parse()
    }
}

impl From<BrieskornTriple> for TripleRepr {
    fn from(t: BrieskornTriple) -> Self {
        TripleRepr(t.key())
    }
}

/// Normalized Seifert invariants `(e0; (alpha_i, omega_i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub e0: i64,
    pub legs: Vec<(i64, i64)>,
    pub euler: BigRational,
}

impl SeifertData {
    /// `e0 + sum omega_i/alpha_i`, recomputed from the stored invariants.
    pub fn recomputed_euler(&self) -> BigRational {
        self.legs
            .iter()
            .fold(BigRational::from_integer(self.e0.into()), |acc, &(a, w)| {
                acc + BigRational::new(w.into(), a.into())
            })
    }
}

/// Unique normalization with `0 < omega_i < alpha_i`.
///
/// Multiplying `e0 + sum w_i/a_i = -1/A` by `A = a1 a2 a3` gives
/// `w_i (A/a_i) = -1 (mod a_i)`, which fixes each `w_i`; `e0` is then forced.
pub fn normalize_seifert(t: &BrieskornTriple) -> Result<SeifertData> {
    let product = i128::from(t.product()?);
    let mut legs = Vec::with_capacity(3);
    let mut numerator_sum: i128 = 0;
    for &a in &t.exponents() {
        let a = i128::from(a);
        let cofactor = product / a;
        let inv = mod_inverse(cofactor.rem_euclid(a), a)
            .ok_or_else(|| Error::NoNormalization(t.to_string()))?;
        let w = (-inv).rem_euclid(a);
        if w == 0 {
            return Err(Error::NoNormalization(t.to_string()));
        }
        numerator_sum = w
            .checked_mul(cofactor)
            .and_then(|x| x.checked_add(numerator_sum))
            .ok_or(Error::Overflow("Seifert numerators"))?;
        legs.push((a, w));
    }
    let e0_times_a = -1 - numerator_sum;
    if e0_times_a % product != 0 {
        return Err(Error::NoNormalization(t.to_string()));
    }
    let e0 = i64::try_from(e0_times_a / product).map_err(|_| Error::Overflow("e0"))?;
    let legs: Vec<(i64, i64)> = legs
        .into_iter()
        .map(|(a, w)| Ok((i64::try_from(a)?, i64::try_from(w)?)))
        .collect::<std::result::Result<_, std::num::TryFromIntError>>()
        .map_err(|_| Error::Overflow("Seifert legs"))?;
    let data = SeifertData {
        e0,
        legs,
        euler: BigRational::new(BigInt::from(-1), BigInt::from(product)),
    };
    if data.recomputed_euler() != data.euler || data.e0 > -1 {
        return Err(Error::NoNormalization(t.to_string()));
    }
    Ok(data)
}

fn mod_inverse(x: i128, m: i128) -> Option<i128> {
    let egcd = x.extended_gcd(&m);
    (egcd.gcd == 1).then(|| egcd.x.rem_euclid(m))
}

/// Hirzebruch-Jung expansion `alpha/omega = c1 - 1/(c2 - 1/(...))`, every `c_j >= 2`.
pub fn neg_continued_fraction(alpha: i64, omega: i64) -> Result<Vec<i64>> {
    if !(0 < omega && omega < alpha) {
        return Err(Error::ContinuedFractionDomain { alpha, omega });
    }
    let (mut p, mut q) = (alpha, omega);
    let mut out = Vec::new();
    loop {
        let c = (p + q - 1) / q;
        out.push(c);
        let rem = c * q - p;
        if rem == 0 {
            break;
        }
        (p, q) = (q, rem);
    }
    Ok(out)
}

/// Back-substitution of a Hirzebruch-Jung chain into the rational it expands.
pub fn evaluate_continued_fraction(chain: &[i64]) -> Option<BigRational> {
    let mut iter = chain.iter().rev();
    let mut acc = BigRational::from_integer((*iter.next()?).into());
    for &c in iter {
        if acc.is_zero() {
            return None;
        }
        acc = BigRational::from_integer(c.into()) - acc.recip();
    }
    Some(acc)
}

/// Star-shaped plumbing graph. Vertex 0 is the centre; leg vertices follow in
/// order, each leg listed from the centre outward. Weights are the actual
/// (negative) self-intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    pub center: i64,
    pub legs: Vec<Vec<i64>>,
}

impl PlumbingGraph {
    pub fn vertex_count(&self) -> usize {
        1 + self.legs.iter().map(Vec::len).sum::<usize>()
    }

    /// Weights in vertex order.
    pub fn weights(&self) -> Vec<i64> {
        std::iter::once(self.center)
            .chain(self.legs.iter().flatten().copied())
            .collect()
    }

    /// Dense intersection matrix. Quadratic in the vertex count.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.vertex_count();
        let mut q = vec![vec![0i64; s]; s];
        for (i, w) in self.weights().into_iter().enumerate() {
            q[i][i] = w;
        }
        let mut next = 1;
        for leg in &self.legs {
            let mut prev = 0;
            for _ in leg {
                q[prev][next] = 1;
                q[next][prev] = 1;
                prev = next;
                next += 1;
            }
        }
        q
    }

    /// Elimination pivots, legs from the outer end inward and the centre last.
    /// No fill-in occurs on a tree, so these are the `D_k / D_(k-1)` ratios of
    /// leading principal minors in that vertex order.
    pub fn pivots(&self) -> Vec<BigRational> {
        let elim = self.eliminate(None);
        elim.order.iter().map(|&v| elim.diag[v].clone()).collect()
    }

    pub fn is_negative_definite(&self) -> bool {
        self.pivots().iter().all(Signed::is_negative)
    }

    /// Exact solution of `Q x = rhs` (`rhs` in vertex order). `None` when a pivot vanishes.
    pub fn solve(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        let elim = self.eliminate(Some(rhs));
        if elim.diag.iter().any(Zero::is_zero) {
            return None;
        }
        let (diag, reduced) = (elim.diag, elim.rhs?);
        let mut x = vec![BigRational::zero(); self.vertex_count()];
        x[0] = &reduced[0] / &diag[0];
        let mut base = 1;
        for leg in &self.legs {
            let mut parent = 0;
            for v in base..base + leg.len() {
                x[v] = (&reduced[v] - &x[parent]) / &diag[v];
                parent = v;
            }
            base += leg.len();
        }
        Some(x)
    }

    fn eliminate(&self, rhs: Option<&[BigRational]>) -> Elimination {
        let s = self.vertex_count();
        let mut diag = vec![BigRational::zero(); s];
        let mut red = rhs.map(<[BigRational]>::to_vec);
        let mut order = Vec::with_capacity(s);
        diag[0] = BigRational::from_integer(self.center.into());
        let mut base = 1;
        for leg in &self.legs {
            // parent of vertex `base + offset` is `base + offset - 1`, or the centre
            for offset in (0..leg.len()).rev() {
                let v = base + offset;
                let mut d = BigRational::from_integer(leg[offset].into());
                if offset + 1 < leg.len() {
                    let c = v + 1;
                    if !diag[c].is_zero() {
                        d -= diag[c].recip();
                        if let Some(r) = red.as_mut() {
                            let delta = &r[c] / &diag[c];
                            r[v] -= delta;
                        }
                    }
                }
                diag[v] = d;
                order.push(v);
            }
            if !leg.is_empty() && !diag[base].is_zero() {
                let inv = diag[base].recip();
                diag[0] -= inv;
                if let Some(r) = red.as_mut() {
                    let delta = &r[base] / &diag[base];
                    r[0] -= delta;
                }
            }
            base += leg.len();
        }
        order.push(0);
        Elimination {
            diag,
            order,
            rhs: red,
        }
    }
}

struct Elimination {
    diag: Vec<BigRational>,
    order: Vec<usize>,
    rhs: Option<Vec<BigRational>>,
}

pub fn build_plumbing(d: &SeifertData) -> Result<PlumbingGraph> {
    let legs = d
        .legs
        .iter()
        .map(|&(a, w)| Ok(neg_continued_fraction(a, w)?.into_iter().map(|c| -c).collect()))
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let graph = PlumbingGraph {
        center: d.e0,
        legs,
    };
    if let Some((index, pivot)) = graph
        .pivots()
        .into_iter()
        .enumerate()
        .find(|(_, p)| !p.is_negative())
    {
        return Err(Error::NegativeDefinitenessFailure {
            index,
            pivot: pivot.to_string(),
        });
    }
    Ok(graph)
}

/// `K^2`, vertex count and the grading shift `sigma = (K^2 + s)/4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingShift {
    pub k_squared: BigRational,
    pub vertex_count: usize,
    pub sigma: i64,
}

pub fn grading_shift_sigma(g: &PlumbingGraph) -> Result<GradingShift> {
    let b: Vec<BigRational> = g
        .weights()
        .into_iter()
        .map(|w| BigRational::from_integer(BigInt::from(-w - 2)))
        .collect();
    let k = g.solve(&b).ok_or_else(|| Error::NegativeDefinitenessFailure {
        index: 0,
        pivot: "0".into(),
    })?;
    let k_squared = b
        .iter()
        .zip(&k)
        .fold(BigRational::zero(), |acc, (bi, ki)| acc + bi * ki);
    let s = g.vertex_count();
    let numer = &k_squared + BigRational::from_integer(BigInt::from(s));
    let quarter = numer / BigRational::from_integer(BigInt::from(4));
    let two = BigInt::from(2);
    if !quarter.is_integer() || !quarter.to_integer().is_multiple_of(&two) {
        return Err(Error::NonIntegralShift(quarter.to_string()));
    }
    let sigma = quarter
        .to_integer()
        .to_i64()
        .ok_or(Error::Overflow("sigma"))?;
    Ok(GradingShift {
        k_squared,
        vertex_count: s,
        sigma,
    })
}

/// Fintushel-Stern `R = -2e - 3`, `e` the central weight.
pub fn fintushel_stern_r(g: &PlumbingGraph) -> i64 {
    -2 * g.center - 3
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingSummary {
    pub center: i64,
    pub legs: Vec<Vec<i64>>,
    pub s: usize,
    #[serde(rename = "K2")]
    pub k2: String,
    pub sigma: i64,
}

impl PlumbingSummary {
    pub fn new(g: &PlumbingGraph) -> Result<Self> {
        let shift = grading_shift_sigma(g)?;
        Ok(PlumbingSummary {
            center: g.center,
            legs: g.legs.clone(),
            s: shift.vertex_count,
            k2: rational_string(&shift.k_squared),
            sigma: shift.sigma,
        })
    }
}

/// `"p/q"`, with `q = 1` kept explicit.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Everything the downstream modules need from the Seifert side of a triple.
#[derive(Debug, Clone)]
pub struct SeifertSummary {
    pub data: SeifertData,
    pub graph: PlumbingGraph,
    pub shift: GradingShift,
}

impl SeifertSummary {
    pub fn of(t: &BrieskornTriple) -> Result<Self> {
        let data = normalize_seifert(t)?;
        let graph = build_plumbing(&data)?;
        let shift = grading_shift_sigma(&graph)?;
        Ok(SeifertSummary { data, graph, shift })
    }

    pub fn r_invariant(&self) -> i64 {
        fintushel_stern_r(&self.graph)
    }
}
