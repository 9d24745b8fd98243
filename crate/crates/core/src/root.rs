//! Graded roots of Brieskorn spheres from the Δ/τ sequence.
//!
//! A root is kept as its zigzag: leaf gradings `L[0..k]` and the angle gradings
//! `A[0..k-1]` between consecutive leaves, with `L[i] > A[i] < L[i+1]`. The
//! reflection `J` is index reversal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seifert::{BrieskornTriple, Orientation, SeifertData, SeifertSummary};

/// Sample size past the horizon used to confirm that Δ stays positive.
const STABILITY_WINDOW: u64 = 64;

/// `Δ(n) = 1 - n e0 - sum ceil(n w_i / a_i)`.
pub fn delta_value(d: &SeifertData, n: u64) -> i64 {
    let n = i128::from(n);
    let mut value = 1 - n * i128::from(d.e0);
    for &(a, w) in &d.legs {
        let num = n * i128::from(w);
        let a = i128::from(a);
        value -= num.div_euclid(a) + i128::from(num.rem_euclid(a) != 0);
    }
    i64::try_from(value).expect("Δ fits in i64 for every triple with a 64-bit product")
}

/// τ on `[0, horizon + 1]` with `τ(n) = sum_{j<n} Δ(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauProfile {
    pub horizon: u64,
    pub tau: Vec<i64>,
}

impl TauProfile {
    pub fn compute(d: &SeifertData, horizon: u64) -> Self {
        let mut tau = Vec::with_capacity(horizon as usize + 2);
        let mut acc = 0i64;
        tau.push(acc);
        for n in 0..=horizon {
            acc += delta_value(d, n);
            tau.push(acc);
        }
        TauProfile { horizon, tau }
    }

    pub fn min(&self) -> i64 {
        *self.tau.iter().min().expect("τ(0) always present")
    }

    pub fn delta(&self, n: usize) -> i64 {
        self.tau[n + 1] - self.tau[n]
    }
}

/// Truncation horizon `N = 2 a1 a2 a3`.
pub fn horizon_of(t: &BrieskornTriple) -> Result<u64> {
    t.product()?
        .checked_mul(2)
        .ok_or(Error::Overflow("horizon"))
}

/// Extremal values of τ after collapsing plateaus: minima `m_1..m_k` and the
/// maxima `M_1..M_{k-1}` between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauExtrema {
    pub minima: Vec<i64>,
    pub maxima: Vec<i64>,
}

#[derive(Default)]
struct ExtremaScanner {
    last: Option<i64>,
    direction: i8,
    minima: Vec<i64>,
    maxima: Vec<i64>,
}

impl ExtremaScanner {
    fn push(&mut self, value: i64) {
        let Some(last) = self.last else {
            self.last = Some(value);
            return;
        };
        if value == last {
            return;
        }
        let dir: i8 = if value > last { 1 } else { -1 };
        match (self.direction, dir) {
            (0, 1) | (-1, 1) => self.minima.push(last),
            (1, -1) => self.maxima.push(last),
            _ => {}
        }
        self.direction = dir;
        self.last = Some(value);
    }

    fn finish(mut self) -> TauExtrema {
        // a trailing descent ends in a minimum
        if self.direction == -1 {
            if let Some(last) = self.last {
                self.minima.push(last);
            }
        }
        if self.minima.is_empty() {
            if let Some(last) = self.last {
                self.minima.push(last);
            }
        }
        TauExtrema {
            minima: self.minima,
            maxima: self.maxima,
        }
    }
}

impl TauExtrema {
    pub fn of_sequence(tau: &[i64]) -> Self {
        let mut scan = ExtremaScanner::default();
        for &v in tau {
            scan.push(v);
        }
        scan.finish()
    }

    /// Streams τ up to the horizon without storing it, then checks Δ on a window past it.
    pub fn scan(d: &SeifertData, horizon: u64) -> Result<Self> {
        let mut scan = ExtremaScanner::default();
        let mut acc = 0i64;
        scan.push(acc);
        for n in 0..=horizon {
            acc += delta_value(d, n);
            scan.push(acc);
        }
        for n in horizon..horizon + STABILITY_WINDOW {
            if delta_value(d, n) <= 0 {
                return Err(Error::NotStabilized(n));
            }
        }
        Ok(scan.finish())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RootRepr", into = "RootRepr")]
pub struct GradedRoot {
    sigma: Option<i64>,
    leaves: Vec<i64>,
    angles: Vec<i64>,
}

impl GradedRoot {
    /// Validates the zigzag: one more leaf than angles, even gradings, strict valleys.
    pub fn new(sigma: Option<i64>, leaves: Vec<i64>, angles: Vec<i64>) -> Result<Self> {
        if leaves.is_empty() {
            return Err(Error::MalformedRoot("no leaves".into()));
        }
        if angles.len() + 1 != leaves.len() {
            return Err(Error::MalformedRoot(format!(
                "{} leaves but {} angles",
                leaves.len(),
                angles.len()
            )));
        }
        if let Some(g) = leaves.iter().chain(&angles).find(|g| *g % 2 != 0) {
            return Err(Error::MalformedRoot(format!("odd grading {g}")));
        }
        for (i, &a) in angles.iter().enumerate() {
            if !(leaves[i] > a && a < leaves[i + 1]) {
                return Err(Error::MalformedRoot(format!("zigzag broken at angle {i}")));
            }
        }
        Ok(GradedRoot {
            sigma,
            leaves,
            angles,
        })
    }

    pub fn from_extrema(sigma: i64, extrema: &TauExtrema) -> Result<Self> {
        let leaves = extrema.minima.iter().map(|m| sigma - 2 * m).collect();
        let angles = extrema.maxima.iter().map(|m| sigma - 2 * m).collect();
        GradedRoot::new(Some(sigma), leaves, angles)
    }

    /// A single tower topped at `grading`.
    pub fn tower(grading: i64) -> Result<Self> {
        GradedRoot::new(None, vec![grading], vec![])
    }

    pub fn sigma(&self) -> Option<i64> {
        self.sigma
    }

    pub fn leaves(&self) -> &[i64] {
        &self.leaves
    }

    pub fn angles(&self) -> &[i64] {
        &self.angles
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.leaves.iter().eq(self.leaves.iter().rev())
            && self.angles.iter().eq(self.angles.iter().rev())
    }

    /// The root reflected by `J`.
    pub fn reflected(&self) -> Self {
        GradedRoot {
            sigma: self.sigma,
            leaves: self.leaves.iter().rev().copied().collect(),
            angles: self.angles.iter().rev().copied().collect(),
        }
    }

    /// Membership in the grading set: every vertex lies on a path from a leaf
    /// down the infinite stem, so the set is all even integers up to the top leaf.
    pub fn contains_grading(&self, g: i64) -> bool {
        g % 2 == 0 && g <= self.d_invariant()
    }

    pub fn d_invariant(&self) -> i64 {
        *self.leaves.iter().max().expect("roots have a leaf")
    }

    /// Graphviz rendering. Equal-graded angles with no lower angle between them
    /// are the same vertex; the stem continues below the lowest vertex.
    pub fn to_dot(&self) -> String {
        let vertices = self.merge_vertices();
        let mut out = String::from("digraph graded_root {\n  rankdir=BT;\n  node [shape=circle];\n");
        for (i, g) in self.leaves.iter().enumerate() {
            let _ = writeln!(out, "  v{} [label=\"{}\"];", i + 1, g);
        }
        for (id, vertex) in vertices.iter().enumerate() {
            let names: Vec<String> = vertex.angles.iter().map(|a| format!("α{}", a + 1)).collect();
            let _ = writeln!(
                out,
                "  a{} [label=\"{}\", tooltip=\"{}\"];",
                id + 1,
                vertex.grading,
                names.join(",")
            );
        }
        let stem_top = vertices
            .iter()
            .map(|v| v.grading)
            .min()
            .unwrap_or(self.leaves[0]);
        let _ = writeln!(out, "  stem [label=\"{}\", shape=plaintext];", stem_top - 2);
        for (i, &parent) in self.leaf_parents(&vertices).iter().enumerate() {
            match parent {
                Some(p) => {
                    let _ = writeln!(out, "  v{} -> a{};", i + 1, p + 1);
                }
                None => {
                    let _ = writeln!(out, "  v{} -> stem [style=dashed];", i + 1);
                }
            }
        }
        for (id, vertex) in vertices.iter().enumerate() {
            match vertex.parent {
                Some(p) => {
                    let _ = writeln!(out, "  a{} -> a{};", id + 1, p + 1);
                }
                None => {
                    let _ = writeln!(out, "  a{} -> stem [style=dashed];", id + 1);
                }
            }
        }
        out.push_str("}\n");
        out
    }

    fn merge_vertices(&self) -> Vec<MergeVertex> {
        let k = self.angles.len();
        // group equal-graded angles not separated by a lower one
        let mut group_of = vec![usize::MAX; k];
        let mut groups: Vec<MergeVertex> = Vec::new();
        for i in 0..k {
            if group_of[i] != usize::MAX {
                continue;
            }
            let g = self.angles[i];
            let id = groups.len();
            let mut members = vec![i];
            group_of[i] = id;
            let mut j = i + 1;
            while j < k && self.angles[j] >= g {
                if self.angles[j] == g {
                    members.push(j);
                    group_of[j] = id;
                }
                j += 1;
            }
            groups.push(MergeVertex {
                grading: g,
                angles: members,
                parent: None,
            });
        }
        for id in 0..groups.len() {
            let g = groups[id].grading;
            let first = groups[id].angles[0];
            let last = *groups[id].angles.last().expect("nonempty group");
            let left = (0..first).rev().find(|&j| self.angles[j] < g);
            let right = (last + 1..k).find(|&j| self.angles[j] < g);
            let parent = match (left, right) {
                (Some(l), Some(r)) => Some(if self.angles[l] >= self.angles[r] { l } else { r }),
                (l, r) => l.or(r),
            };
            groups[id].parent = parent.map(|j| group_of[j]);
        }
        groups
    }

    fn leaf_parents(&self, vertices: &[MergeVertex]) -> Vec<Option<usize>> {
        let mut group_of: BTreeMap<usize, usize> = BTreeMap::new();
        for (id, v) in vertices.iter().enumerate() {
            for &a in &v.angles {
                group_of.insert(a, id);
            }
        }
        (0..self.leaves.len())
            .map(|i| {
                let left = i.checked_sub(1);
                let right = (i < self.angles.len()).then_some(i);
                let angle = match (left, right) {
                    (Some(l), Some(r)) => Some(if self.angles[l] >= self.angles[r] { l } else { r }),
                    (l, r) => l.or(r),
                };
                angle.map(|a| group_of[&a])
            })
            .collect()
    }
}

struct MergeVertex {
    grading: i64,
    angles: Vec<usize>,
    parent: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RootRepr {
    sigma: Option<i64>,
    leaves: Vec<i64>,
    angles: Vec<i64>,
    symmetric: bool,
}

impl TryFrom<RootRepr> for GradedRoot {
    type Error = Error;
    fn try_from(r: RootRepr) -> Result<Self> {
        let root = GradedRoot::new(r.sigma, r.leaves, r.angles)?;
        if root.is_symmetric() != r.symmetric {
            return Err(Error::MalformedRoot("symmetric flag disagrees with gradings".into()));
        }
        Ok(root)
    }
}

impl From<GradedRoot> for RootRepr {
    fn from(r: GradedRoot) -> Self {
        let symmetric = r.is_symmetric();
        RootRepr {
            sigma: r.sigma,
            leaves: r.leaves,
            angles: r.angles,
            symmetric,
        }
    }
}

/// The graded root of `Σ(a1, a2, a3)` (orientation is ignored).
pub fn graded_root_of(t: &BrieskornTriple) -> Result<GradedRoot> {
    let summary = SeifertSummary::of(t)?;
    let extrema = TauExtrema::scan(&summary.data, horizon_of(t)?)?;
    root_from_parts(summary.shift.sigma, &extrema)
}

/// Assembles and checks the root from σ and cached τ extrema.
pub fn root_from_parts(sigma: i64, extrema: &TauExtrema) -> Result<GradedRoot> {
    let root = GradedRoot::from_extrema(sigma, extrema)?;
    if !root.is_symmetric() {
        return Err(Error::AsymmetricRoot);
    }
    Ok(root)
}

pub fn d_invariant(r: &GradedRoot) -> i64 {
    r.d_invariant()
}

/// `d` of an oriented sphere: reversal negates it.
pub fn oriented_d(t: &BrieskornTriple, r: &GradedRoot) -> i64 {
    match t.orientation() {
        Orientation::Positive => r.d_invariant(),
        Orientation::Negative => -r.d_invariant(),
    }
}
