//! Free graded complexes over `F[U]` (F = Z/2, `U` of grading -2) with an
//! involution: the standard complex of a graded root and tensor products.
//!
//! Every generator is homogeneous, so a differential coefficient from `y` to
//! `x` is either zero or the single monomial `U^p` with
//! `p = (gr(x) - gr(y) + 1) / 2`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root::GradedRoot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Leaf,
    Angle,
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    #[serde(rename = "gr")]
    pub grading: i64,
    pub kind: GeneratorKind,
}

/// One term `U^power · target` of a differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub target: usize,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IotaComplex {
    generators: Vec<Generator>,
    differential: Vec<Vec<Term>>,
    involution: Vec<usize>,
    /// Set for standard complexes, whose homology follows from the zigzag.
    shape: Option<GradedRoot>,
}

/// `F[U]/U^length` generated in grading `top`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TorsionSummand {
    pub top: i64,
    pub length: u32,
}

/// `F[U]_(tower_top) ⊕ torsion`, torsion sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedModule {
    pub tower_top: i64,
    pub torsion: Vec<TorsionSummand>,
}

impl GradedModule {
    /// `F`-dimension in grading `g` of the module itself.
    pub fn dimension(&self, g: i64) -> usize {
        let tower = usize::from(g <= self.tower_top && (self.tower_top - g) % 2 == 0);
        tower + self.torsion.iter().filter(|t| in_summand(t, g)).count()
    }

    /// `F`-dimension in grading `g` of the homology of `C/U^m`, for `m` larger
    /// than every torsion length. From `0 -> C --U^m--> C -> C/U^m -> 0`:
    /// `coker(U^m)` in grading `g` plus `ker(U^m)` from grading `g + 2m - 1`.
    pub fn truncated_dimension(&self, m: u32, g: i64) -> usize {
        let m64 = i64::from(m);
        let tower = usize::from(
            g <= self.tower_top && g > self.tower_top - 2 * m64 && (self.tower_top - g) % 2 == 0,
        );
        let coker = self.torsion.iter().filter(|t| in_summand(t, g)).count();
        let kernel = self
            .torsion
            .iter()
            .filter(|t| in_summand(t, g + 2 * m64 - 1))
            .count();
        tower + coker + kernel
    }
}

fn in_summand(t: &TorsionSummand, g: i64) -> bool {
    g <= t.top && (t.top - g) % 2 == 0 && (t.top - g) / 2 < i64::from(t.length)
}

impl IotaComplex {
    /// Builds a complex from parts; checks indices, U-powers and the axioms.
    pub fn from_parts(
        generators: Vec<Generator>,
        differential: Vec<Vec<Term>>,
        involution: Vec<usize>,
    ) -> Result<Self> {
        let c = IotaComplex {
            generators,
            differential,
            involution,
            shape: None,
        };
        c.check_axioms()?;
        Ok(c)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &[Vec<Term>] {
        &self.differential
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The same complex with every grading moved by `shift` (must be even to keep U-powers).
    pub fn shifted(&self, shift: i64) -> Self {
        let mut c = self.clone();
        for g in &mut c.generators {
            g.grading += shift;
        }
        c.shape = None;
        c
    }

    /// `∂` applied to a formal sum, reduced mod 2.
    fn apply(&self, chain: &BTreeMap<Term, ()>) -> BTreeMap<Term, ()> {
        let mut out = BTreeMap::new();
        for t in chain.keys() {
            for d in &self.differential[t.target] {
                toggle(
                    &mut out,
                    Term {
                        target: d.target,
                        power: d.power + t.power,
                    },
                );
            }
        }
        out
    }

    /// `∂∘∂ = 0`, `J∘∂ = ∂∘J`, `J∘J = id`, `J` and `∂` homogeneous.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.generators.len();
        let fail = |m: String| Err(Error::AxiomViolation(m));
        if self.differential.len() != n || self.involution.len() != n {
            return fail("table sizes disagree with generator count".into());
        }
        for (i, terms) in self.differential.iter().enumerate() {
            for t in terms {
                if t.target >= n {
                    return fail(format!("∂ of {} has a dangling target", self.generators[i].name));
                }
                let gap = self.generators[t.target].grading - self.generators[i].grading + 1;
                if gap != 2 * i64::from(t.power) {
                    return fail(format!(
                        "∂ of {} is not homogeneous",
                        self.generators[i].name
                    ));
                }
            }
        }
        for i in 0..n {
            let j = self.involution[i];
            if j >= n || self.involution[j] != i {
                return fail(format!("J is not an involution at {}", self.generators[i].name));
            }
            if self.generators[j].grading != self.generators[i].grading {
                return fail(format!("J does not preserve the grading of {}", self.generators[i].name));
            }
        }
        for i in 0..n {
            let single: BTreeMap<Term, ()> = [(Term { target: i, power: 0 }, ())].into();
            let once = self.apply(&single);
            if !self.apply(&once).is_empty() {
                return fail(format!("∂∂ ≠ 0 on {}", self.generators[i].name));
            }
            let j_then_d: BTreeMap<Term, ()> = self
                .apply(&[(Term { target: self.involution[i], power: 0 }, ())].into());
            let mut d_then_j = BTreeMap::new();
            for t in once.keys() {
                toggle(
                    &mut d_then_j,
                    Term {
                        target: self.involution[t.target],
                        power: t.power,
                    },
                );
            }
            if j_then_d != d_then_j {
                return fail(format!("J∂ ≠ ∂J on {}", self.generators[i].name));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let diff: BTreeMap<String, Vec<(String, u32)>> = self
            .differential
            .iter()
            .enumerate()
            .filter(|(_, terms)| !terms.is_empty())
            .map(|(i, terms)| {
                (
                    self.generators[i].name.clone(),
                    terms
                        .iter()
                        .map(|t| (self.generators[t.target].name.clone(), t.power))
                        .collect(),
                )
            })
            .collect();
        let j: BTreeMap<String, String> = self
            .involution
            .iter()
            .enumerate()
            .map(|(i, &k)| (self.generators[i].name.clone(), self.generators[k].name.clone()))
            .collect();
        serde_json::json!({ "gens": self.generators, "diff": diff, "J": j })
    }
}

fn toggle(map: &mut BTreeMap<Term, ()>, t: Term) {
    if map.remove(&t).is_none() {
        map.insert(t, ());
    }
}

/// `C_*(R)`: leaves `v_i` at `L[i]`, angles `α_i` at `A[i] + 1`,
/// `∂α_i = U^((L[i]-A[i])/2) v_i + U^((L[i+1]-A[i])/2) v_(i+1)`, `J` reverses indices.
pub fn standard_complex_of(r: &GradedRoot) -> Result<IotaComplex> {
    if !r.is_symmetric() {
        return Err(Error::AsymmetricRoot);
    }
    let leaves = r.leaves();
    let angles = r.angles();
    let k = leaves.len();
    let exponent = |leaf: i64, angle: i64| -> Result<u32> {
        let gap = leaf - angle;
        if gap % 2 != 0 {
            return Err(Error::OddExponent { leaf, angle });
        }
        u32::try_from(gap / 2).map_err(|_| Error::Overflow("U exponent"))
    };
    let mut generators = Vec::with_capacity(2 * k - 1);
    let mut differential = Vec::with_capacity(2 * k - 1);
    let mut involution = Vec::with_capacity(2 * k - 1);
    for (i, &g) in leaves.iter().enumerate() {
        generators.push(Generator {
            name: format!("v_{}", i + 1),
            grading: g,
            kind: GeneratorKind::Leaf,
        });
        differential.push(Vec::new());
        involution.push(k - 1 - i);
    }
    for (i, &a) in angles.iter().enumerate() {
        generators.push(Generator {
            name: format!("alpha_{}", i + 1),
            grading: a + 1,
            kind: GeneratorKind::Angle,
        });
        differential.push(vec![
            Term {
                target: i,
                power: exponent(leaves[i], a)?,
            },
            Term {
                target: i + 1,
                power: exponent(leaves[i + 1], a)?,
            },
        ]);
        involution.push(k + (k - 2 - i));
    }
    let mut c = IotaComplex::from_parts(generators, differential, involution)?;
    c.shape = Some(r.clone());
    Ok(c)
}

/// Elder-rule pairing on the zigzag: sweep angles from the highest grading
/// down; each merge kills the component with the lower top leaf.
pub fn zigzag_homology(r: &GradedRoot) -> GradedModule {
    let leaves = r.leaves();
    let angles = r.angles();
    let mut parent: Vec<usize> = (0..leaves.len()).collect();
    let mut top: Vec<i64> = leaves.to_vec();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut order: Vec<usize> = (0..angles.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(angles[i]), i));
    let mut torsion = Vec::new();
    for i in order {
        let a = find(&mut parent, i);
        let b = find(&mut parent, i + 1);
        let (elder, younger) = if top[a] >= top[b] { (a, b) } else { (b, a) };
        let length = (top[younger] - angles[i]) / 2;
        torsion.push(TorsionSummand {
            top: top[younger],
            length: length as u32,
        });
        parent[younger] = elder;
        top[younger] = top[elder];
    }
    torsion.sort();
    GradedModule {
        tower_top: r.d_invariant(),
        torsion,
    }
}

/// Persistence-style column reduction valid for any complex in this module.
///
/// Generators are ordered by grading, highest first. Adding an earlier column
/// into a later one is the homogeneous basis change `y + U^k y'`, and the pivot
/// of a column is its lowest-graded row.
pub fn reduced_homology(c: &IotaComplex) -> Result<GradedModule> {
    let n = c.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(c.generators[i].grading), i));
    let mut position = vec![0; n];
    for (pos, &g) in order.iter().enumerate() {
        position[g] = pos;
    }
    let mut columns: Vec<Vec<usize>> = order
        .iter()
        .map(|&g| {
            let mut rows: Vec<usize> = Vec::new();
            for t in &c.differential[g] {
                let p = position[t.target];
                match rows.iter().position(|&x| x == p) {
                    Some(k) => {
                        rows.swap_remove(k);
                    }
                    None => rows.push(p),
                }
            }
            rows.sort_unstable();
            rows
        })
        .collect();
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut is_pivot = vec![false; n];
    let mut pairs = Vec::new();
    for col in 0..n {
        while let Some(&low) = columns[col].last() {
            match pivot_owner.get(&low) {
                Some(&other) => {
                    let merged = symmetric_difference(&columns[col], &columns[other]);
                    columns[col] = merged;
                }
                None => {
                    pivot_owner.insert(low, col);
                    is_pivot[low] = true;
                    pairs.push((low, col));
                    break;
                }
            }
        }
    }
    let mut torsion = Vec::new();
    for (row, col) in pairs {
        let top = c.generators[order[row]].grading;
        let death = c.generators[order[col]].grading;
        let length = (top - death + 1) / 2;
        if length > 0 {
            torsion.push(TorsionSummand {
                top,
                length: u32::try_from(length).map_err(|_| Error::Overflow("torsion length"))?,
            });
        }
    }
    let essential: Vec<usize> = (0..n)
        .filter(|&p| columns[p].is_empty() && !is_pivot[p])
        .collect();
    if essential.len() != 1 {
        return Err(Error::AxiomViolation(format!(
            "localized homology has rank {}, expected 1",
            essential.len()
        )));
    }
    torsion.sort();
    Ok(GradedModule {
        tower_top: c.generators[order[essential[0]]].grading,
        torsion,
    })
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Homology as a graded `F[U]`-module. Standard complexes use the zigzag
/// pairing; anything else goes through [`reduced_homology`].
pub fn homology_of(c: &IotaComplex) -> Result<GradedModule> {
    match &c.shape {
        Some(r) => Ok(zigzag_homology(r)),
        None => reduced_homology(c),
    }
}

pub fn tower_top(c: &IotaComplex) -> Result<i64> {
    Ok(homology_of(c)?.tower_top)
}

/// Graded tensor product over `F[U]` with involution `J1 ⊗ J2`.
pub fn tensor_product(c1: &IotaComplex, c2: &IotaComplex) -> IotaComplex {
    let (n1, n2) = (c1.len(), c2.len());
    let index = |i: usize, j: usize| i * n2 + j;
    let mut generators = Vec::with_capacity(n1 * n2);
    let mut differential = Vec::with_capacity(n1 * n2);
    let mut involution = Vec::with_capacity(n1 * n2);
    for (i, x) in c1.generators.iter().enumerate() {
        for (j, y) in c2.generators.iter().enumerate() {
            let kind = match (x.kind, y.kind) {
                (GeneratorKind::Leaf, GeneratorKind::Leaf) => GeneratorKind::Leaf,
                _ => GeneratorKind::Product,
            };
            generators.push(Generator {
                name: format!("{}*{}", x.name, y.name),
                grading: x.grading + y.grading,
                kind,
            });
            let mut terms: Vec<Term> = c1.differential[i]
                .iter()
                .map(|t| Term {
                    target: index(t.target, j),
                    power: t.power,
                })
                .chain(c2.differential[j].iter().map(|t| Term {
                    target: index(i, t.target),
                    power: t.power,
                }))
                .collect();
            terms.sort_unstable();
            differential.push(terms);
            involution.push(index(c1.involution[i], c2.involution[j]));
        }
    }
    IotaComplex {
        generators,
        differential,
        involution,
        shape: None,
    }
}
