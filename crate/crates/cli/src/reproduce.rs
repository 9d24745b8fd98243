//! Table of the published claims checked against fresh computations.

use std::collections::BTreeMap;

use groot::complex::{homology_of, standard_complex_of, tensor_product};
use groot::families::{
    independence_family_a, independence_family_b, kernel_family_y1, kernel_family_y2,
    kernel_family_y3, FamilyTerm,
};
use groot::instanton::{family_scan, independence_certificate, r_zero, ExtendedRational};
use groot::local::{class_of_root, class_of_subroot};
use groot::monotone::extract_monotone;
use groot::seifert::SeifertSummary;
use groot::{BrieskornTriple, Error, Family, GradedRoot, LocalClass};
use serde::Serialize;

use crate::engine::Engine;
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub claim: String,
    pub result: String,
    pub pass: bool,
}

fn row(claim: impl Into<String>, result: impl Into<String>, pass: bool) -> Row {
    Row {
        claim: claim.into(),
        result: result.into(),
        pass,
    }
}

/// Tally over a range: "k/n" plus the first mismatch.
fn tally(claim: String, outcomes: Vec<Result<(), String>>) -> Row {
    let total = outcomes.len();
    let failures: Vec<String> = outcomes.into_iter().filter_map(Result::err).collect();
    let mut result = format!("{}/{total}", total - failures.len());
    if let Some(first) = failures.first() {
        result.push_str(&format!(" (first failure: {first})"));
    }
    row(claim, result, failures.is_empty())
}

fn expected_class(family: Family, n: u64) -> LocalClass {
    let k = n as i64;
    match family {
        Family::B if n == 0 => LocalClass::t(1),
        Family::B => LocalClass::x(n),
        Family::Y1 => LocalClass::x(2 * n) - LocalClass::x(n) + LocalClass::t(k),
        Family::Y2 => LocalClass::x(2 * n - 1) - LocalClass::x(n) + LocalClass::t(k),
        Family::Y3 => LocalClass::x(4 * n),
    }
}

struct Pipeline {
    roots: BTreeMap<(Family, u64), GradedRoot>,
}

impl Pipeline {
    fn root(&self, family: Family, n: u64) -> &GradedRoot {
        &self.roots[&(family, n)]
    }

    fn kernel_total(&self, terms: &[FamilyTerm]) -> Result<LocalClass, Error> {
        let mut total = LocalClass::zero();
        for t in terms {
            total += &class_of_root(self.root(t.family, t.index))?.scaled(t.multiplicity);
        }
        Ok(total)
    }
}

fn closed_total(terms: &[FamilyTerm]) -> Result<LocalClass, Error> {
    let mut total = LocalClass::zero();
    for t in terms {
        total += &class_of_subroot(&t.family.closed_form_subroot(t.index)?)?.scaled(t.multiplicity);
    }
    Ok(total)
}

pub fn run(engine: &Engine, n_pipeline: u64, n_closed: u64) -> Result<Vec<Row>, CliError> {
    if n_pipeline == 0 || n_closed == 0 {
        return Err(CliError::Usage("--n-pipeline and --n-closed-form must be at least 1".into()));
    }
    let mut members = vec![(Family::B, 0)];
    for n in 1..=n_pipeline {
        for family in Family::ALL {
            members.push((family, n));
        }
    }
    let triples: Vec<BrieskornTriple> = members
        .iter()
        .map(|&(f, n)| f.triple(n))
        .collect::<Result<_, _>>()?;
    let roots = engine.roots(&triples)?;
    let pipe = Pipeline {
        roots: members.iter().copied().zip(roots).collect(),
    };
    let np = n_pipeline;
    let mut rows = Vec::new();

    let poincare = engine.root(&BrieskornTriple::new(2, 3, 5)?)?;
    rows.push(row(
        "Σ(2,3,5) has a single leaf at grading 2",
        format!("leaves {:?}", poincare.leaves()),
        poincare.leaves() == [2],
    ));
    let r = engine.root(&BrieskornTriple::new(3, 4, 13)?)?;
    let m = extract_monotone(&r)?;
    rows.push(row(
        "Σ(3,4,13) has six leaves and subroot M(0,-2)",
        format!("{} leaves, {m}", r.leaf_count()),
        r.leaf_count() == 6 && m.to_string() == "M(0,-2)",
    ));

    for family in Family::ALL {
        let range: Vec<u64> = if family == Family::B { (0..=np).collect() } else { (1..=np).collect() };
        let outcomes = range
            .iter()
            .map(|&n| {
                let got = extract_monotone(pipe.root(family, n)).map_err(|e| e.to_string())?;
                let want = family.closed_form_subroot(n).map_err(|e| e.to_string())?;
                if got == want {
                    Ok(())
                } else {
                    Err(format!("{family}({n}) gave {got}, expected {want}"))
                }
            })
            .collect();
        let law = match family {
            Family::B => "B(n) ↦ M(2n,0), B(0) ↦ M(2,2)",
            Family::Y1 => "Y1(n) ↦ M(4n,0;2n,2n)",
            Family::Y2 => "Y2(n) ↦ M(4n-2,0;2n,2n)",
            Family::Y3 => "Y3(n) ↦ M(8n,0)",
        };
        rows.push(tally(format!("{law} through the τ pipeline, n ≤ {np}"), outcomes));
    }

    let mut outcomes = Vec::new();
    for family in Family::ALL {
        for n in 1..=np {
            let g = SeifertSummary::of(&family.triple(n)?)?;
            outcomes.push(if g.graph.center == -2 && g.r_invariant() == 1 {
                Ok(())
            } else {
                Err(format!("{family}({n}) has centre {} and R = {}", g.graph.center, g.r_invariant()))
            });
        }
    }
    rows.push(tally(format!("family plumbings have central weight -2, n ≤ {np}"), outcomes));

    let closed: Vec<Result<(), String>> = (1..=n_closed)
        .flat_map(|n| [Family::Y1, Family::Y2, Family::Y3].map(|f| (f, n)))
        .map(|(f, n)| {
            let c = f
                .closed_form_subroot(n)
                .and_then(|m| class_of_subroot(&m))
                .map_err(|e| e.to_string())?;
            (c == expected_class(f, n) && !c.used_shift_rule())
                .then_some(())
                .ok_or(format!("{f}({n}) has class {c}"))
        })
        .collect();
    rows.push(tally(format!("Y1/Y2/Y3 class identities in closed form, n ≤ {n_closed}"), closed));
    let piped: Vec<Result<(), String>> = pipe
        .roots
        .iter()
        .map(|(&(f, n), r)| {
            let c = class_of_root(r).map_err(|e| e.to_string())?;
            (c == expected_class(f, n))
                .then_some(())
                .ok_or(format!("{f}({n}) has class {c}"))
        })
        .collect();
    rows.push(tally(format!("class identities through the τ pipeline, n ≤ {np}"), piped));

    let kernels = |n: u64| [("Y1", kernel_family_y1(n)), ("Y2", kernel_family_y2(n)), ("Y3", kernel_family_y3(n))];
    let closed: Vec<Result<(), String>> = (1..=n_closed)
        .flat_map(|n| kernels(n).map(|k| (n, k)))
        .map(|(n, (name, terms))| {
            let c = closed_total(&terms).map_err(|e| e.to_string())?;
            c.is_zero().then_some(()).ok_or(format!("{name} family at n = {n} gives {c}"))
        })
        .collect();
    rows.push(tally(format!("kernel families vanish in closed form, n ≤ {n_closed}"), closed));
    // the family members involved must all lie inside the pipeline range
    let piped: Vec<Result<(), String>> = (1..=np)
        .flat_map(|n| kernels(n).map(|k| (n, k)))
        .filter(|(_, (_, terms))| terms.iter().all(|t| t.index <= np))
        .map(|(n, (name, terms))| {
            let c = pipe.kernel_total(&terms).map_err(|e| e.to_string())?;
            c.is_zero().then_some(()).ok_or(format!("{name} family at n = {n} gives {c}"))
        })
        .collect();
    if !piped.is_empty() {
        rows.push(tally(format!("kernel families vanish through the τ pipeline, members ≤ {np}"), piped));
    }
    let controls: Vec<Result<(), String>> = (1..=n_closed)
        .flat_map(|n| kernels(n).map(|k| (n, k)))
        .flat_map(|(n, (name, terms))| {
            (0..terms.len()).flat_map(move |i| [-1, 1].map(|step| (n, name, terms.clone(), i, step)))
        })
        .map(|(n, name, mut terms, i, step)| {
            terms[i].multiplicity += step;
            let c = closed_total(&terms).map_err(|e| e.to_string())?;
            (!c.is_zero())
                .then_some(())
                .ok_or(format!("{name} family at n = {n}: term {i} {step:+} still vanishes"))
        })
        .collect();
    rows.push(tally("perturbed kernel families are nonzero".into(), controls));

    let a = independence_certificate(&independence_family_a(100)?)?;
    rows.push(row(
        "{B(0..100), Y1(1..100), Y2(1..100)} is independent",
        format!("verdict {} over {} members", a.verdict, a.family.len()),
        a.verdict,
    ));
    let b = independence_certificate(&independence_family_b(25)?)?;
    rows.push(row(
        "{B(4n), Y3(n)}, n ≤ 25, is independent",
        format!("verdict {} over {} members", b.verdict, b.family.len()),
        b.verdict,
    ));
    let r0 = r_zero(&"-2,3,5".parse()?)?;
    rows.push(row("r0(-Σ(2,3,5)) = 1/120", r0.to_string(), r0 == ExtendedRational::finite(1, 120)));
    let r0 = r_zero(&"5,8,13".parse()?)?;
    rows.push(row("r0(Σ(5,8,13)) = ∞", r0.to_string(), r0 == ExtendedRational::Infinity));
    let scan = family_scan(100);
    rows.push(row(
        "parity, 30, interleaving and mod-4 arguments hold, n ≤ 100",
        match &scan {
            Ok(s) => format!(
                "{} checks",
                s.parity_checks + s.not_thirty_checks + s.interleaving_checks + s.monotonicity_checks + s.mod4_checks
            ),
            Err(e) => e.to_string(),
        },
        scan.is_ok(),
    ));

    let axioms: Vec<Result<(), String>> = pipe
        .roots
        .iter()
        .map(|(&(f, n), r)| {
            standard_complex_of(r)
                .and_then(|c| c.check_axioms())
                .map_err(|e| format!("{f}({n}): {e}"))
        })
        .collect();
    rows.push(tally(format!("chain axioms on every pipeline complex, n ≤ {np}"), axioms));
    let small: Vec<&GradedRoot> = pipe.roots.iter().filter(|((_, n), _)| *n <= 2).map(|(_, r)| r).collect();
    let mut additive = Vec::new();
    for (i, x) in small.iter().enumerate() {
        for y in &small[i..] {
            let (cx, cy) = (standard_complex_of(x)?, standard_complex_of(y)?);
            let d = homology_of(&tensor_product(&cx, &cy))?.tower_top;
            additive.push(if d == x.d_invariant() + y.d_invariant() {
                Ok(())
            } else {
                Err(format!("d = {d}, summands {} + {}", x.d_invariant(), y.d_invariant()))
            });
        }
    }
    rows.push(tally("d is additive under tensor products of family complexes".into(), additive));
    Ok(rows)
}

pub fn render(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.claim.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let pad = width - r.claim.chars().count();
        out.push_str(&format!(
            "{}  {}{}  {}\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.claim,
            " ".repeat(pad),
            r.result
        ));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} of {} claims reproduced\n", rows.len() - failed, rows.len()));
    out
}
